//! Depth-bounded evidence for membership in the upper cluster algebra.

use alloc::vec;
use alloc::vec::Vec;

use super::{explore, ClusterError, Seed};
use crate::laurent::{LaurentError, LaurentPoly, Substitution};

/// Verdict over the seeds reached within the explored depth. A pass is
/// evidence, not proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpperVerdict {
    LaurentInAllVisited {
        seeds: usize,
        truncated: bool,
    },
    FailsAtSeed {
        node: usize,
        path: Vec<usize>,
        truncated: bool,
    },
}

impl UpperVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, UpperVerdict::LaurentInAllVisited { .. })
    }
}

/// Re-expresses `elem` in the cluster of every seed within `depth`
/// mutations of `s0` and checks that each expression is Laurent.
///
/// The initial variables are written in a visited cluster by mutating a
/// formal seed with that cluster's matrix back along the path. Then `elem`,
/// written as `N(x) / x^a` with `N` a polynomial, becomes
/// `N(X) / X^a`, which must divide exactly.
pub fn upper_membership(
    elem: &LaurentPoly,
    s0: &Seed,
    depth: usize,
    max_nodes: usize,
) -> Result<UpperVerdict, ClusterError> {
    let graph = explore(s0, depth, max_nodes);
    let truncated = graph.is_truncated();
    let table = elem.table();
    let n = s0.size();
    for (node, s) in graph.nodes().iter().enumerate() {
        let path = graph.path_to(node);
        let mut back = Seed::formal(table, s.matrix().clone())?;
        for &k in path.iter().rev() {
            back = back.mutate(k)?;
        }
        match re_express(elem, back.vars(), n) {
            Ok(_) => {}
            Err(LaurentError::InexactDivision { .. }) => {
                return Ok(UpperVerdict::FailsAtSeed { node, path, truncated })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(UpperVerdict::LaurentInAllVisited {
        seeds: graph.len(),
        truncated,
    })
}

/// `elem(X_1, ..., X_n)` where `images[i] = X_i`, as an exact quotient.
pub(crate) fn re_express(elem: &LaurentPoly, images: &[LaurentPoly], n: usize) -> Result<LaurentPoly, LaurentError> {
    let table = elem.table();
    let mins = elem.min_exponents();
    let mut shift = vec![0i32; table.len()];
    for i in 0..n {
        shift[i] = -mins[i].min(0);
    }
    let numerator = elem.shift(&shift)?;
    let mut sigma = Substitution::new();
    for (i, x) in images.iter().enumerate().take(n) {
        sigma = sigma.map(i, x.clone());
    }
    let numerator = numerator.substitute(&sigma)?;
    let mut denominator = LaurentPoly::one(table);
    for (i, &a) in shift.iter().enumerate().take(n) {
        if a > 0 {
            denominator = &denominator * &images[i].pow(a as u32);
        }
    }
    numerator.exact_divide(&denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;
    use crate::surface::{builtin, Builtin};

    fn disk(n: usize) -> Seed {
        Seed::initial(&builtin(Builtin::Disk(n)).unwrap())
    }

    #[test]
    fn cluster_variable_and_one_pass() {
        let s = disk(5);
        let t = s.table().unwrap().clone();
        for e in ["x1", "x6", "1", "x1 + x2^-1"] {
            let v = upper_membership(&parse(&t, e).unwrap(), &s, 10, 100).unwrap();
            assert_eq!(
                v,
                UpperVerdict::LaurentInAllVisited {
                    seeds: 5,
                    truncated: false
                },
                "{e}"
            );
        }
    }

    #[test]
    fn inverse_of_mutable_variable_fails() {
        let s = disk(5);
        let t = s.table().unwrap().clone();
        let v = upper_membership(&parse(&t, "x6^-1").unwrap(), &s, 10, 100).unwrap();
        assert!(matches!(v, UpperVerdict::FailsAtSeed { .. }), "{v:?}");
    }

    #[test]
    fn re_expression_inverts_mutation() {
        // In the cluster after mutating x5, the old x5 is (x1 x3 + x2 x4) / x5'.
        let s = disk(4);
        let t = s.table().unwrap().clone();
        let m = s.mutate(4).unwrap();
        let back = Seed::formal(&t, m.matrix().clone()).unwrap().mutate(4).unwrap();
        let x5 = parse(&t, "x5").unwrap();
        let got = re_express(&x5, back.vars(), 5).unwrap();
        assert_eq!(got, parse(&t, "(x1*x3 + x2*x4) * x5^-1").unwrap());
        // Substituting the forward expression recovers the identity.
        let fwd = re_express(&got, m.vars(), 5).unwrap();
        assert_eq!(fwd, x5);
    }
}
