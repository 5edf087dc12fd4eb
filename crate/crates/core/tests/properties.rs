use std::sync::Arc;

use clusterskein_core::cluster::explore;
use clusterskein_core::generators::{enumerate_generators, loop_canonical, HandleDecomposition, Options};
use clusterskein_core::laurent::{parse, LaurentError, Substitution};
use clusterskein_core::surface::{builtin, Builtin};
use clusterskein_core::{ExchangeMatrix, LaurentPoly, Seed, VarTable};
use num_bigint::BigInt;
use proptest::prelude::*;

fn table() -> Arc<VarTable> {
    VarTable::new(["a", "b", "c"]).unwrap().shared()
}

fn poly_with(exps: std::ops::RangeInclusive<i32>, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::array::uniform3(exps), -9i64..=9), 0..=terms).prop_map(|terms| {
        let t = table();
        terms.into_iter().fold(LaurentPoly::zero(&t), |acc, (e, c)| {
            &acc + &LaurentPoly::monomial(&t, e.to_vec(), BigInt::from(c)).unwrap()
        })
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    poly_with(-3..=3, 5)
}

fn polynomial() -> impl Strategy<Value = LaurentPoly> {
    poly_with(0..=3, 5)
}

fn unit() -> impl Strategy<Value = LaurentPoly> {
    (prop::array::uniform3(-2i32..=2), prop::bool::ANY).prop_map(|(e, neg)| {
        LaurentPoly::monomial(&table(), e.to_vec(), BigInt::from(if neg { -1 } else { 1 })).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in laurent(), q in laurent(), r in laurent()) {
        let zero = LaurentPoly::zero(&table());
        let one = LaurentPoly::one(&table());
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &zero, p.clone());
        prop_assert_eq!(&p * &one, p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(-(-p.clone()), p);
    }

    #[test]
    fn division_round_trip(p in laurent(), q in laurent()) {
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_divide(&q).unwrap(), p.clone());
        if !p.is_zero() {
            prop_assert_eq!(prod.exact_divide(&p).unwrap(), q);
        }
    }

    #[test]
    fn division_by_zero_is_an_error(p in laurent()) {
        prop_assert_eq!(p.exact_divide(&LaurentPoly::zero(&table())), Err(LaurentError::DivisionByZero));
    }

    #[test]
    fn inexact_division_keeps_remainder(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assume!(!q.is_zero());
        match (&(&p * &q) + &r).exact_divide(&q) {
            Ok(s) => prop_assert_eq!(&s * &q, &(&p * &q) + &r),
            Err(LaurentError::InexactDivision { remainder }) => prop_assert!(!remainder.is_zero()),
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn substitution_by_units_is_a_homomorphism(p in laurent(), q in laurent(), u in prop::array::uniform3(unit())) {
        let mut s = Substitution::new();
        for (i, x) in u.into_iter().enumerate() {
            s = s.map(i, x);
        }
        let sub = |x: &LaurentPoly| x.substitute(&s).unwrap();
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
    }

    #[test]
    fn polynomial_substitution_is_a_homomorphism(
        p in poly_with(0..=2, 4),
        q in poly_with(0..=2, 4),
        imgs in prop::array::uniform3(poly_with(-1..=1, 3)),
    ) {
        let mut s = Substitution::new();
        for (i, x) in imgs.into_iter().enumerate() {
            s = s.map(i, x);
        }
        let sub = |x: &LaurentPoly| x.substitute(&s).unwrap();
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
    }

    #[test]
    fn display_parses_back(p in laurent()) {
        prop_assert_eq!(parse(&table(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn matrix_mutation_is_an_involution(entries in prop::collection::vec(-3i64..=3, 10), k in 0usize..5) {
        let mut rows = vec![vec![0i64; 5]; 5];
        let pairs = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)));
        for ((i, j), v) in pairs.zip(entries) {
            rows[i][j] = v;
            rows[j][i] = -v;
        }
        let b = ExchangeMatrix::new(rows, vec![false; 5]).unwrap();
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
    }

    #[test]
    fn seed_mutation_is_an_involution(path in prop::collection::vec(0usize..3, 0..6), k in 0usize..3) {
        let s = Seed::initial(&builtin(Builtin::PuncturedTorus).unwrap()).mutate_sequence(&path).unwrap();
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn generators_use_handles_once(h in 0usize..5, m in 0usize..3, n in 0usize..3, bullock in prop::bool::ANY) {
        let hd = HandleDecomposition { handles: h, boundary_points: m, punctures: n, genus: h / 2 };
        let opts = Options { bullock, decorated: true, ..Options::default() };
        for d in enumerate_generators(&hd, &opts).unwrap() {
            prop_assert!(d.traverses_once(), "{}", d);
        }
    }

    #[test]
    fn loop_canonical_is_rotation_and_reversal_invariant(seq in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), len in 1usize..5, r in 0usize..4) {
        let seq = &seq[..len];
        let r = r % len;
        let rotated: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
        let reversed: Vec<usize> = seq.iter().rev().copied().collect();
        prop_assert_eq!(loop_canonical(&rotated), loop_canonical(seq));
        prop_assert_eq!(loop_canonical(&reversed), loop_canonical(seq));
    }
}

#[test]
fn generator_counts_grow_with_punctures() {
    for h in 0..4 {
        let mut last = 0;
        for n in 0..5 {
            let hd = HandleDecomposition {
                handles: h,
                boundary_points: 1,
                punctures: n,
                genus: h / 2,
            };
            let len = enumerate_generators(&hd, &Options::default()).unwrap().len();
            assert!(len >= last);
            last = len;
        }
    }
}

#[test]
fn torus_cluster_variables_are_positive_laurent() {
    let g = explore(&Seed::initial(&builtin(Builtin::PuncturedTorus).unwrap()), 4, 10_000);
    for v in g.cluster_variables() {
        assert!(v.has_positive_coefficients(), "{v}");
    }
}
