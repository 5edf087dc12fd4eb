//! Cluster seeds, mutation, exchange-graph exploration, and Laurent checks.

mod explore;
mod upper;

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::laurent::{LaurentError, LaurentPoly, VarTable};
use crate::matrix::{ExchangeMatrix, MatrixError};
use crate::surface::{SurfaceError, Triangulation};

pub use explore::{explore, FlipGraph};
pub(crate) use upper::re_express;
pub use upper::{upper_membership, UpperVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error("index {0} is frozen")]
    Frozen(usize),
    #[error("index {0} is out of range")]
    OutOfRange(usize),
    #[error("seed has {vars} variables but a {size}x{size} matrix")]
    SizeMismatch { vars: usize, size: usize },
    #[error("seed variables live in different rings")]
    MixedTables,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A cluster together with its exchange matrix. Variables are Laurent
/// polynomials in the initial seed's variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    vars: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

impl Seed {
    pub fn new(vars: Vec<LaurentPoly>, matrix: ExchangeMatrix) -> Result<Self, ClusterError> {
        if vars.len() != matrix.size() {
            return Err(ClusterError::SizeMismatch {
                vars: vars.len(),
                size: matrix.size(),
            });
        }
        if let Some(first) = vars.first() {
            if vars.iter().any(|v| v.table() != first.table()) {
                return Err(ClusterError::MixedTables);
            }
        }
        Ok(Seed { vars, matrix })
    }

    /// `vars[i] = x_i` over the first `B.size()` variables of `table`.
    pub fn formal(table: &Arc<VarTable>, matrix: ExchangeMatrix) -> Result<Self, ClusterError> {
        let vars = (0..matrix.size())
            .map(|i| LaurentPoly::variable(table, i))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, matrix)
    }

    /// The seed of a triangulation: one variable per edge, the triangle
    /// adjacency matrix, and boundary edges frozen.
    pub fn initial(t: &Triangulation) -> Seed {
        Self::formal(&t.var_table(), t.exchange_matrix()).expect("edge variables come first in the table")
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &LaurentPoly {
        &self.vars[i]
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.vars.len()
    }

    pub fn table(&self) -> Option<&Arc<VarTable>> {
        self.vars.first().map(LaurentPoly::table)
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.matrix.is_frozen(i)
    }

    pub fn mutable_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.matrix.mutable_indices()
    }

    fn check_index(&self, k: usize) -> Result<(), ClusterError> {
        if k >= self.size() {
            Err(ClusterError::OutOfRange(k))
        } else if self.is_frozen(k) {
            Err(ClusterError::Frozen(k))
        } else {
            Ok(())
        }
    }

    /// `prod_{b_jk > 0} x_j^{b_jk} + prod_{b_jk < 0} x_j^{-b_jk}`.
    pub fn exchange_binomial(&self, k: usize) -> Result<LaurentPoly, ClusterError> {
        self.check_index(k)?;
        let table = self.vars[k].table();
        let mut pos = LaurentPoly::one(table);
        let mut neg = LaurentPoly::one(table);
        for (j, b) in self.matrix.column(k).into_iter().enumerate() {
            let e = u32::try_from(b.unsigned_abs()).map_err(|_| MatrixError::Overflow(k))?;
            if b > 0 {
                pos = &pos * &self.vars[j].pow(e);
            } else if b < 0 {
                neg = &neg * &self.vars[j].pow(e);
            }
        }
        Ok(&pos + &neg)
    }

    /// Mutation in direction `k`: `x_k' = binomial / x_k`, matrix mutated.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        self.check_index(k)?;
        let binomial = self.exchange_binomial(k)?;
        let new_var = binomial.exact_divide(&self.vars[k])?;
        let mut vars = self.vars.clone();
        vars[k] = new_var;
        Ok(Seed {
            vars,
            matrix: self.matrix.mutate(k)?,
        })
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed, ClusterError> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

/// Outcome of one mutation in [`check_laurent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub error: Option<ClusterError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentReport {
    pub steps: Vec<Step>,
    /// Cluster after the last successful step.
    pub final_vars: Vec<LaurentPoly>,
}

impl LaurentReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.error.is_none())
    }
}

/// Runs a mutation sequence, recording whether each exact division succeeds.
pub fn check_laurent(s0: &Seed, ks: &[usize]) -> LaurentReport {
    let mut s = s0.clone();
    let mut steps = Vec::with_capacity(ks.len());
    for &k in ks {
        match s.mutate(k) {
            Ok(next) => {
                s = next;
                steps.push(Step { index: k, error: None });
            }
            Err(e) => {
                steps.push(Step {
                    index: k,
                    error: Some(e),
                });
                break;
            }
        }
    }
    LaurentReport {
        steps,
        final_vars: s.vars,
    }
}

/// Summary of an exhaustive sweep over mutation sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSweep {
    /// Sequences checked, counting the empty one and every prefix.
    pub sequences: usize,
    pub failure: Option<(Vec<usize>, ClusterError)>,
    /// Every variable met had only positive coefficients.
    pub all_positive: bool,
}

/// Every sequence of mutable indices of length at most `max_len`, as a
/// depth-first walk sharing prefixes. Immediate repeats are included when
/// `repeats` is set.
pub fn sweep_sequences(s0: &Seed, max_len: usize, repeats: bool) -> SequenceSweep {
    fn walk(s: &Seed, path: &mut Vec<usize>, max_len: usize, repeats: bool, out: &mut SequenceSweep) {
        out.sequences += 1;
        if path.len() == max_len {
            return;
        }
        let ks: Vec<usize> = s.mutable_indices().collect();
        for k in ks {
            if out.failure.is_some() {
                return;
            }
            if !repeats && path.last() == Some(&k) {
                continue;
            }
            path.push(k);
            match s.mutate(k) {
                Ok(next) => {
                    if !next.vars[k].has_positive_coefficients() {
                        out.all_positive = false;
                    }
                    walk(&next, path, max_len, repeats, out);
                }
                Err(e) => out.failure = Some((path.clone(), e)),
            }
            path.pop();
        }
    }
    let mut out = SequenceSweep {
        sequences: 0,
        failure: None,
        all_positive: true,
    };
    walk(s0, &mut Vec::new(), max_len, repeats, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::builtin;
    use crate::surface::Builtin;
    use alloc::string::ToString;
    use alloc::vec;

    fn torus() -> Seed {
        Seed::initial(&builtin(Builtin::PuncturedTorus).unwrap())
    }

    #[test]
    fn torus_initial_seed() {
        let s = torus();
        assert_eq!(s.size(), 3);
        assert_eq!(s.matrix().to_string(), "[[0,2,-2],[-2,0,2],[2,-2,0]]");
        let names: Vec<_> = s.vars().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["x1", "x2", "x3"]);
    }

    #[test]
    fn disk4_seed_and_ptolemy() {
        let s = Seed::initial(&builtin(Builtin::Disk(4)).unwrap());
        assert_eq!(s.size(), 5);
        assert_eq!(s.mutable_indices().collect::<Vec<_>>(), vec![4]);
        let m = s.mutate(4).unwrap();
        assert_eq!(m.var(4).to_string(), "x1*x3*x5^-1 + x2*x4*x5^-1");
        assert_eq!(s.mutate(0), Err(ClusterError::Frozen(0)));
    }

    #[test]
    fn markov_mutation() {
        let s = torus().mutate(2).unwrap();
        assert_eq!(s.var(2).to_string(), "x1^2*x3^-1 + x2^2*x3^-1");
        assert_eq!(s.matrix().to_string(), "[[0,-2,2],[2,0,-2],[-2,2,0]]");
        assert_eq!(s.mutate(2).unwrap(), torus());
    }

    #[test]
    fn markov_sequence_is_positive_laurent() {
        let s = torus().mutate_sequence(&[2, 0, 1]).unwrap();
        for v in s.vars() {
            assert!(v.has_positive_coefficients(), "{v}");
        }
        assert_eq!(torus().mutate_sequence(&[]).unwrap(), torus());
        assert_eq!(torus().mutate_sequence(&[1, 1]).unwrap(), torus());
    }

    #[test]
    fn check_laurent_reports_steps() {
        let r = check_laurent(&torus(), &[0, 1, 2, 0]);
        assert!(r.passed());
        assert_eq!(r.steps.len(), 4);
        assert!(check_laurent(&torus(), &[]).passed());
        let disk = Seed::initial(&builtin(Builtin::Disk(4)).unwrap());
        let r = check_laurent(&disk, &[4, 1]);
        assert!(!r.passed());
        assert_eq!(r.steps[1].error, Some(ClusterError::Frozen(1)));
    }

    #[test]
    fn sweep_counts_prefixes() {
        let r = sweep_sequences(&torus(), 3, true);
        assert_eq!(r.sequences, 1 + 3 + 9 + 27);
        assert!(r.failure.is_none() && r.all_positive);
        let r = sweep_sequences(&torus(), 3, false);
        assert_eq!(r.sequences, 1 + 3 + 6 + 12);
    }
}
