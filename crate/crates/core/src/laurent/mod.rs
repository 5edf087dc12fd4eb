//! Exact sparse multivariate Laurent polynomials over `Z`.
//!
//! A [`LaurentPoly`] is a finite map from exponent vectors to nonzero
//! arbitrary-precision integers, tied to a shared [`VarTable`]. The map is
//! kept canonical at all times: no stored coefficient is zero, so two
//! polynomials are mathematically equal exactly when their term maps are.
//!
//! Negative exponents are only permitted on variables the table marks as
//! invertible. Every constructor and every arithmetic operation enforces
//! that, so a value can never leave its ring.

mod divide;
mod parse;
mod substitute;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use parse::parse;
pub use substitute::Substitution;

/// Errors raised by Laurent-polynomial construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("unknown variable index {0}")]
    UnknownIndex(usize),
    #[error("unknown variable `{0}`")]
    UnknownName(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invertible mask has length {mask} but the table has {names} names")]
    MaskLength { names: usize, mask: usize },
    #[error("operands belong to different variable tables")]
    MismatchedTables,
    #[error("exponent vector has length {found}, table has {expected} variables")]
    Arity { expected: usize, found: usize },
    #[error("negative exponent on non-invertible variable `{0}`")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division, remainder {remainder}")]
    InexactDivision { remainder: LaurentPoly },
    #[error("cannot invert non-unit image of `{0}`")]
    NonUnitInverse(String),
    #[error("declared inverse of `{0}` does not multiply to 1")]
    BadInverse(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Ordered list of variable names with an invertibility mask.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarTable {
    names: Vec<String>,
    invertible: Vec<bool>,
}

impl VarTable {
    /// A table in which every variable is invertible (the ambient ring).
    pub fn new<I, S>(names: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let invertible = vec![true; names.len()];
        Self::with_invertible(names, invertible)
    }

    pub fn with_invertible(names: Vec<String>, invertible: Vec<bool>) -> Result<Self, LaurentError> {
        if names.len() != invertible.len() {
            return Err(LaurentError::MaskLength {
                names: names.len(),
                mask: invertible.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(LaurentError::DuplicateName(n.clone()));
            }
        }
        Ok(VarTable { names, invertible })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_invertible(&self, index: usize) -> bool {
        self.invertible.get(index).copied().unwrap_or(false)
    }

    fn all_invertible(&self) -> bool {
        self.invertible.iter().all(|&b| b)
    }

    pub fn shared(self) -> Arc<VarTable> {
        Arc::new(self)
    }
}

/// Exponent vector, one signed entry per table variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub(crate) Vec<i32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn scale(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

/// Sparse Laurent polynomial with integer coefficients.
///
/// Field order matters: the derived `Ord` compares term maps first, which is
/// what seed deduplication sorts by.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
    table: Arc<VarTable>,
}

impl LaurentPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
            table: table.clone(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, BigInt::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    /// The monomial `x_index` with coefficient 1.
    pub fn variable(table: &Arc<VarTable>, index: usize) -> Result<Self, LaurentError> {
        if index >= table.len() {
            return Err(LaurentError::UnknownIndex(index));
        }
        let mut e = Monomial::one(table.len());
        e.0[index] = 1;
        Ok(Self::from_term(table, e, BigInt::one()))
    }

    /// Looks a variable up by name.
    pub fn var(table: &Arc<VarTable>, name: &str) -> Result<Self, LaurentError> {
        let i = table
            .index_of(name)
            .ok_or_else(|| LaurentError::UnknownName(name.to_string()))?;
        Self::variable(table, i)
    }

    pub fn monomial(
        table: &Arc<VarTable>,
        exponents: Vec<i32>,
        coeff: impl Into<BigInt>,
    ) -> Result<Self, LaurentError> {
        if exponents.len() != table.len() {
            return Err(LaurentError::Arity {
                expected: table.len(),
                found: exponents.len(),
            });
        }
        let m = Monomial(exponents);
        check_invertible(table, &m)?;
        let c = coeff.into();
        if c.is_zero() {
            return Ok(Self::zero(table));
        }
        Ok(Self::from_term(table, m, c))
    }

    fn from_term(table: &Arc<VarTable>, m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, c);
        LaurentPoly {
            terms,
            table: table.clone(),
        }
    }

    pub(crate) fn from_terms_unchecked(table: &Arc<VarTable>, terms: BTreeMap<Monomial, BigInt>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPoly {
            terms,
            table: table.clone(),
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// `Some((m, c))` if this is a single term.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Units of `Z[x^±1]` are `±x^m`.
    pub fn is_unit(&self) -> bool {
        self.as_term().is_some_and(|(_, c)| c.abs().is_one())
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    /// Multiplicative inverse of a unit; `None` otherwise.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        let (m, c) = self.as_term()?;
        if !c.abs().is_one() {
            return None;
        }
        let inv = m.scale(-1);
        if check_invertible(&self.table, &inv).is_err() {
            return None;
        }
        Some(Self::from_term(&self.table, inv, c.clone()))
    }

    /// Per-variable minimum exponent over all terms (zeros for the zero poly).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out = vec![0; self.table.len()];
        let mut first = true;
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                if first || e < *o {
                    *o = e;
                }
            }
            first = false;
        }
        out
    }

    /// Largest power of variable `index` occurring in any term.
    pub fn degree_in(&self, index: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[index]).max()
    }

    fn same_table(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(LaurentError::MismatchedTables)
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.same_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Self::from_terms_unchecked(&self.table, terms))
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.same_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c);
        }
        Ok(Self::from_terms_unchecked(&self.table, terms))
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.same_table(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        if !self.table.all_invertible() {
            for m in terms.keys() {
                check_invertible(&self.table, m)?;
            }
        }
        Ok(Self::from_terms_unchecked(&self.table, terms))
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        Self::from_terms_unchecked(&self.table, terms)
    }

    /// Multiplies by the Laurent monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Result<LaurentPoly, LaurentError> {
        if shift.len() != self.table.len() {
            return Err(LaurentError::Arity {
                expected: self.table.len(),
                found: shift.len(),
            });
        }
        let s = Monomial(shift.to_vec());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.mul(&s);
            check_invertible(&self.table, &e)?;
            terms.insert(e, c.clone());
        }
        Ok(Self::from_terms_unchecked(&self.table, terms))
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = Self::one(&self.table);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow_signed(&self, n: i32) -> Result<LaurentPoly, LaurentError> {
        if n >= 0 {
            return Ok(self.pow(n.unsigned_abs()));
        }
        let inv = self
            .unit_inverse()
            .ok_or_else(|| LaurentError::NonUnitInverse(self.to_string()))?;
        Ok(inv.pow(n.unsigned_abs()))
    }

    /// Returns `q` with `q * den == self`, or the remainder if none exists.
    pub fn exact_divide(&self, den: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.same_table(den)?;
        divide::exact_divide(self, den)
    }

    pub fn substitute(&self, sigma: &Substitution) -> Result<LaurentPoly, LaurentError> {
        sigma.apply(self)
    }

    /// Same terms, re-homed on an equal table (used when tables are rebuilt).
    pub fn rehome(&self, table: &Arc<VarTable>) -> Result<LaurentPoly, LaurentError> {
        if *self.table != **table {
            return Err(LaurentError::MismatchedTables);
        }
        Ok(Self::from_terms_unchecked(table, self.terms.clone()))
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    use alloc::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn check_invertible(table: &VarTable, m: &Monomial) -> Result<(), LaurentError> {
    for (i, &e) in m.0.iter().enumerate() {
        if e < 0 && !table.is_invertible(i) {
            return Err(LaurentError::NotInvertible(table.names[i].clone()));
        }
    }
    Ok(())
}

// Operator impls panic where the `try_` forms would return an error; inside
// this crate every operand pair shares one ambient table.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        LaurentPoly::from_terms_unchecked(&self.table, terms)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Sorted-term display: terms in descending lexicographic exponent order,
/// e.g. `x1^2*x3^-1 + 2*x2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = m.0.iter().enumerate().filter(|(_, &e)| e != 0).peekable();
            if factors.peek().is_none() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (i, &e) in factors {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&self.table.names[i])?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
