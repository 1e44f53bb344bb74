#![allow(dead_code)]

use polarium::looplie::{GradedLadder, Grading};
use polarium::polar::classify;
use polarium::rootdata::{RootDatum, RootSet};
use polarium::tails::Tail;
use polarium::tori::TorusClass;
use polarium::yuseq::yu_ladder;
use polarium::{CycloNumber, Rational, RationalField};

pub fn rd(s: &str) -> RootDatum {
    RootDatum::build(&s.parse().unwrap()).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

pub fn cv(xs: &[i64]) -> Vec<CycloNumber> {
    xs.iter().map(|&x| CycloNumber::from_i64(x)).collect()
}

pub fn cq(xs: &[(i64, i64)]) -> Vec<CycloNumber> {
    xs.iter().map(|&(n, d)| CycloNumber::from_rational(q(n, d))).collect()
}

pub fn split_ladder(kind: &str, lam: &Tail, grading: Grading) -> GradedLadder {
    let rd = rd(kind);
    let d = classify(&rd, &TorusClass::split(&rd), lam).unwrap();
    let y = yu_ladder(&rd, &d).unwrap();
    GradedLadder::split(&rd, &d, &y, grading).unwrap()
}

/// `λ = ϖ t^{-1} dt/t` on SL₂ at `x = ρ∨/2`.
pub fn sl2_depth_one() -> GradedLadder {
    let lam = Tail::monomial(1, q(1, 1), cq(&[(1, 2)])).unwrap();
    split_ladder("A1", &lam, Grading::rho_over(2, 2).unwrap())
}

/// `λ = (2,1) t^{-2} dt/t + (0,1) t^{-1} dt/t` on SL₃ at `x = ρ∨/2`.
pub fn sl3_two_break_tail() -> Tail {
    Tail::new(1, [(q(2, 1), cv(&[2, 1])), (q(1, 1), cv(&[0, 1]))]).unwrap()
}

pub fn sl3_two_break() -> GradedLadder {
    split_ladder("A2", &sl3_two_break_tail(), Grading::rho_over(3, 2).unwrap())
}

pub fn golden_set() -> Vec<(&'static str, GradedLadder)> {
    vec![
        ("sl2 depth-1 toral", sl2_depth_one()),
        ("sl2 epipelagic m=2", GradedLadder::epipelagic(2).unwrap()),
        ("sl3 epipelagic m=3", GradedLadder::epipelagic(3).unwrap()),
        ("sl3 two-break", sl3_two_break()),
    ]
}

/// `λ = ϖ₁ t^{-1} dt/t` on SL₃ forced through the ladder `∅ ⊂ Φ` with break 1;
/// `α₂∨` kills it.
pub fn non_regular_ladder() -> GradedLadder {
    let a2 = rd("A2");
    let lam = Tail::monomial(1, q(1, 1), cq(&[(2, 3), (1, 3)])).unwrap();
    GradedLadder::split_forced(
        &a2,
        &lam,
        &[q(1, 1)],
        &[RootSet::new(), a2.all_roots()],
        &[lam.clone(), Tail::zero(1)],
        Grading::hyperspecial(3).unwrap(),
    )
    .unwrap()
}

/// Subgroup of the Weyl group generated by `gens` (indices into
/// `weyl_elements`), by breadth-first closure under right multiplication.
pub fn generated_subgroup(rd: &RootDatum, gens: &[usize]) -> Vec<usize> {
    let group = rd.weyl_elements().unwrap();
    let mut seen = vec![false; group.len()];
    let id = rd.weyl_index(&rd.identity()).unwrap();
    seen[id] = true;
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = rd.weyl_index(&rd.compose(&group[x], &group[g])).unwrap();
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    (0..group.len()).filter(|&i| seen[i]).collect()
}
