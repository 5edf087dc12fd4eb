use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("frozen mask has length {mask}, matrix has size {size}")]
    MaskLength { size: usize, mask: usize },
    #[error("index {0} is out of range")]
    OutOfRange(usize),
    #[error("index {0} is frozen")]
    Frozen(usize),
    #[error("mutation at {0} overflowed")]
    Overflow(usize),
}

/// Skew-symmetric integer matrix with a frozen index subset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExchangeMatrix {
    rows: Vec<Vec<i64>>,
    frozen: Vec<bool>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>, frozen: Vec<bool>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        if frozen.len() != n {
            return Err(MatrixError::MaskLength {
                size: n,
                mask: frozen.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate().skip(i) {
                if b.checked_neg() != Some(rows[j][i]) {
                    return Err(MatrixError::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(ExchangeMatrix { rows, frozen })
    }

    pub fn zero(frozen: Vec<bool>) -> Self {
        let n = frozen.len();
        ExchangeMatrix {
            rows: vec![vec![0; n]; n],
            frozen,
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn mutable_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(|&i| !self.frozen[i])
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.rows.iter().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Matrix mutation at `k`: row and column `k` change sign, and every
    /// other entry gains `(|b_ik| b_kj + b_ik |b_kj|) / 2`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, MatrixError> {
        let n = self.size();
        if k >= n {
            return Err(MatrixError::OutOfRange(k));
        }
        if self.frozen[k] {
            return Err(MatrixError::Frozen(k));
        }
        let b = &self.rows;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    let bik = b[i][k];
                    let bkj = b[k][j];
                    let delta = bik
                        .abs()
                        .checked_mul(bkj)
                        .and_then(|x| x.checked_add(bik.checked_mul(bkj.abs())?))
                        .ok_or(MatrixError::Overflow(k))?;
                    b[i][j].checked_add(delta / 2).ok_or(MatrixError::Overflow(k))?
                };
            }
        }
        Ok(ExchangeMatrix {
            rows: out,
            frozen: self.frozen.clone(),
        })
    }

    /// `P B P^T` for the permutation sending old index `perm[i]` to `i`.
    pub fn permuted(&self, perm: &[usize]) -> ExchangeMatrix {
        let rows = perm
            .iter()
            .map(|&pi| perm.iter().map(|&pj| self.rows[pi][pj]).collect())
            .collect();
        let frozen = perm.iter().map(|&p| self.frozen[p]).collect();
        ExchangeMatrix { rows, frozen }
    }

    pub fn negated(&self) -> ExchangeMatrix {
        ExchangeMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|e| -e).collect()).collect(),
            frozen: self.frozen.clone(),
        }
    }
}

/// Prints as a JSON array of rows, e.g. `[[0,2,-2],[-2,0,2],[2,-2,0]]`.
impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
