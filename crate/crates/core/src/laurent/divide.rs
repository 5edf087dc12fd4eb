//! Exact division in `Z[x_1^±1, ..., x_n^±1]`.
//!
//! Both operands are shifted by their per-variable minimum exponents so they
//! become ordinary polynomials whose every variable has minimum degree zero.
//! Any exact Laurent quotient of such a pair is itself a polynomial, so one
//! run of single-divisor multivariate division (graded lex) decides
//! exactness: the remainder is zero iff the division is exact.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{accumulate, check_invertible, LaurentError, LaurentPoly, Monomial};

/// Graded lexicographic key; `BTreeMap` keeps the leading term last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GrKey(i64, Monomial);

impl GrKey {
    fn new(m: Monomial) -> Self {
        let deg = m.0.iter().map(|&e| i64::from(e)).sum();
        GrKey(deg, m)
    }
}

pub(super) fn exact_divide(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    let table = &num.table;
    if den.is_zero() {
        return Err(LaurentError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(LaurentPoly::zero(table));
    }

    if let Some((dm, dc)) = den.as_term() {
        return divide_by_term(num, dm, dc);
    }

    let num_min = Monomial(num.min_exponents());
    let den_min = Monomial(den.min_exponents());

    let mut rest: BTreeMap<GrKey, BigInt> = num
        .terms
        .iter()
        .map(|(m, c)| (GrKey::new(m.div(&num_min)), c.clone()))
        .collect();
    let mut divisor: BTreeMap<GrKey, BigInt> = den
        .terms
        .iter()
        .map(|(m, c)| (GrKey::new(m.div(&den_min)), c.clone()))
        .collect();
    let (lead, lead_coeff) = divisor.pop_last().expect("nonzero divisor");
    let tail: alloc::vec::Vec<(Monomial, BigInt)> = divisor.into_iter().map(|(k, c)| (k.1, c)).collect();

    let mut quotient = BTreeMap::new();
    let mut remainder = BTreeMap::new();

    while let Some((key, coeff)) = rest.pop_last() {
        let m = key.1;
        let divisible = m.0.iter().zip(&lead.1 .0).all(|(a, b)| a >= b);
        let (q, r) = coeff.div_rem(&lead_coeff);
        if !divisible || !r.is_zero() {
            remainder.insert(m, coeff);
            continue;
        }
        let qm = m.div(&lead.1);
        for (tm, tc) in &tail {
            let key = GrKey::new(qm.mul(tm));
            let delta = -(&q * tc);
            use alloc::collections::btree_map::Entry;
            match rest.entry(key) {
                Entry::Vacant(v) => {
                    v.insert(delta);
                }
                Entry::Occupied(mut o) => {
                    *o.get_mut() += delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        accumulate(&mut quotient, qm, q);
    }

    if !remainder.is_empty() {
        let terms = remainder.into_iter().map(|(m, c)| (m.mul(&num_min), c)).collect();
        return Err(LaurentError::InexactDivision {
            remainder: LaurentPoly::from_terms_unchecked(table, terms),
        });
    }

    let offset = num_min.div(&den_min);
    let mut terms = BTreeMap::new();
    for (m, c) in quotient {
        let e = m.mul(&offset);
        check_invertible(table, &e)?;
        terms.insert(e, c);
    }
    Ok(LaurentPoly::from_terms_unchecked(table, terms))
}

fn divide_by_term(num: &LaurentPoly, dm: &Monomial, dc: &BigInt) -> Result<LaurentPoly, LaurentError> {
    let table = &num.table;
    let mut terms = BTreeMap::new();
    let mut remainder = BTreeMap::new();
    for (m, c) in &num.terms {
        let (q, r) = c.div_rem(dc);
        if !r.is_zero() {
            remainder.insert(m.clone(), r);
        }
        if !q.is_zero() {
            terms.insert(m.div(dm), q);
        }
    }
    if !remainder.is_empty() {
        return Err(LaurentError::InexactDivision {
            remainder: LaurentPoly::from_terms_unchecked(table, remainder),
        });
    }
    for m in terms.keys() {
        check_invertible(table, m)?;
    }
    Ok(LaurentPoly::from_terms_unchecked(table, terms))
}
