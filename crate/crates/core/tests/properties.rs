//! Property tests for field arithmetic, ℚ-closure and the graded bracket.

mod common;

use common::*;
use num_traits::{One, Zero};
use polarium::looplie::{Grading, LoopMatrix};
use polarium::rootdata::RootSet;
use polarium::{CycloNumber, Field, Rational};
use proptest::prelude::*;

fn cyclo() -> impl Strategy<Value = CycloNumber> {
    (prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12]), prop::collection::vec((-5i64..=5, 1i64..=4), 12))
        .prop_map(|(m, raw)| {
            let coeffs = raw.into_iter().take(m as usize).map(|(n, d)| q(n, d)).collect();
            CycloNumber::from_coeffs(m, coeffs).unwrap()
        })
}

proptest! {
    #[test]
    fn field_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycloNumber::zero(), a.clone());
        prop_assert_eq!(&a * &CycloNumber::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycloNumber::one());
        } else {
            prop_assert!(a.inv().is_none());
        }
    }

    #[test]
    fn lifting_preserves_values(a in cyclo(), k in 1u64..=4) {
        let l = a.conductor() * k;
        let lifted = a.lift(l).unwrap();
        prop_assert_eq!(lifted.simplify(), a.simplify());
        prop_assert_eq!(&lifted + &CycloNumber::zero(), a.clone());
    }

    #[test]
    fn q_closure_is_a_closure_operator(
        kind in prop::sample::select(vec!["A2", "B2", "G2"]),
        bits in any::<u16>(),
        more in any::<u16>(),
    ) {
        let rd = rd(kind);
        let n = rd.num_roots();
        let pick = |mask: u16| -> RootSet { (0..n).filter(|&a| mask & (1 << (a % 16)) != 0 && a < 16).collect() };
        let s = pick(bits);
        let t: RootSet = s.union(&pick(more)).copied().collect();
        let cs = rd.q_closure(&s);
        prop_assert!(s.is_subset(&cs));
        prop_assert_eq!(rd.q_closure(&cs), cs.clone());
        prop_assert!(cs.is_subset(&rd.q_closure(&t)));
        prop_assert!(rd.is_q_closed(&cs));
    }

    #[test]
    fn degrees_add_under_brackets(
        m in 1u64..=3,
        a in (0usize..3, 0usize..3, -2i64..=2),
        b in (0usize..3, 0usize..3, -2i64..=2),
    ) {
        use polarium::looplie::{Gen, GenKind};
        let g = Grading::rho_over(3, m).unwrap();
        let gen = |(i, j, k): (usize, usize, i64)| if i == j {
            Gen { kind: GenKind::Torus(i.min(1)), k }
        } else {
            Gen { kind: GenKind::Root(i, j), k }
        };
        let (x, y) = (gen(a), gen(b));
        let one = CycloNumber::from_i64(1);
        let br = LoopMatrix::from_gen(3, &x, &one).bracket(&LoopMatrix::from_gen(3, &y, &one));
        let deg: Rational = g.degree(&x) + g.degree(&y);
        prop_assert!(br.is_zero() || br.coords(&g.piece(&deg)).is_ok());
    }
}
