//! Library results checked against small brute-force oracles written here
//! from scratch.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use common::*;
use num_traits::Zero;
use polarium::chevmap::charpoly_map;
use polarium::looplie::{
    lagrangian, symplectic_form, vj_split, Gen, GenKind, Grading, LoopMatrix, mp_graded_piece,
};
use polarium::polar::{classify, stabilizer};
use polarium::rootdata::RootSet;
use polarium::tails::{LaurentWindow, Tail};
use polarium::tori::{list_torus_classes, TorusClass};
use polarium::yuseq::yu_ladder;
use polarium::{CycloNumber, Rational, RationalField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bourbaki Cartan matrices, `c[i][j] = ⟨α_i∨, α_j⟩`.
fn cartan_table(kind: &str) -> Vec<Vec<i64>> {
    let (family, n) = kind.split_at(1);
    let n: usize = n.parse().unwrap();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    match family {
        "A" => {}
        "B" => c[n - 1][n - 2] = -2,
        "C" => c[n - 2][n - 1] = -2,
        "D" => {
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        "G" => c[1][0] = -3,
        _ => unreachable!(),
    }
    c
}

fn reflect(c: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    let p: i64 = (0..beta.len()).map(|k| c[i][k] * beta[k]).sum();
    let mut out = beta.to_vec();
    out[i] -= p;
    out
}

fn reflection_closure(c: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = c.len();
    let mut roots: BTreeSet<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    loop {
        let next: BTreeSet<Vec<i64>> = roots
            .iter()
            .flat_map(|b| (0..n).map(move |i| reflect(c, i, b)))
            .collect();
        let before = roots.len();
        roots.extend(next);
        if roots.len() == before {
            return roots;
        }
    }
}

/// Root counts from the ambient descriptions of the classical families.
fn ambient_count(kind: &str) -> usize {
    let (family, n) = kind.split_at(1);
    let n: usize = n.parse().unwrap();
    match family {
        "A" => n * (n + 1),
        "B" | "C" => 2 * n * n,
        "D" => 2 * n * (n - 1),
        "G" => 12,
        _ => unreachable!(),
    }
}

#[test]
fn root_systems_match_reflection_closure() {
    for kind in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"] {
        let rd = rd(kind);
        let table = cartan_table(kind);
        let mut oracle = reflection_closure(&table);
        assert_eq!(oracle.len(), ambient_count(kind), "{kind}");
        if rd.cartan_matrix() != table.as_slice() {
            let t: Vec<Vec<i64>> = (0..table.len()).map(|i| table.iter().map(|r| r[i]).collect()).collect();
            assert_eq!(rd.cartan_matrix(), t.as_slice(), "{kind}");
            oracle = reflection_closure(&t);
        }
        let ours: BTreeSet<Vec<i64>> = rd.roots().iter().cloned().collect();
        assert_eq!(ours, oracle, "{kind}");
    }
}

#[test]
fn weyl_orders_match_generated_matrix_groups() {
    for (kind, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12)] {
        let rd = rd(kind);
        let c = rd.cartan_matrix().to_vec();
        let n = c.len();
        // elements stored as images of the basis vectors
        let id: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|j| i64::from(j == k)).collect()).collect();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(g) = stack.pop() {
            for i in 0..n {
                let h: Vec<Vec<i64>> = g.iter().map(|v| reflect(&c, i, v)).collect();
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        assert_eq!(seen.len(), order, "{kind}");
        assert_eq!(rd.weyl_elements().unwrap().len(), order, "{kind}");
    }
}

#[test]
fn long_roots_of_b2_span_everything() {
    // β is long iff |⟨β∨, γ⟩| ≤ 1 for every γ ≠ ±β
    let b2 = rd("B2");
    let long: RootSet = (0..b2.num_roots())
        .filter(|&a| {
            (0..b2.num_roots())
                .filter(|&g| g != a && g != b2.negate(a))
                .all(|g| b2.pairing(a, g).abs() <= 1)
        })
        .collect();
    assert_eq!(long.len(), 4);
    assert_eq!(b2.q_closure(&long).len(), 8);
}

#[test]
fn cartan_pairing_of_a_fundamental_weight() {
    // ϖ₁ = (2α₁ + α₂)/3 pairs to 1 with α₁∨ and 0 with α₂∨
    let a2 = rd("A2");
    let lam = Tail::monomial(1, q(1, 1), cq(&[(2, 3), (1, 3)])).unwrap();
    assert!(lam.pair_coroot(&a2, 1).is_empty());
    let p = lam.pair_coroot(&a2, 0);
    assert_eq!(p.terms()[&q(1, 1)], CycloNumber::from_i64(1));
}

/// Regular iff one of 20 random integer vectors of the eigenspace avoids
/// every coroot hyperplane.
fn random_vector_regular(rd: &polarium::rootdata::RootDatum, tc: &TorusClass, rng: &mut ChaCha8Rng) -> bool {
    let basis = tc.eigenspace(1);
    if basis.is_empty() {
        return false;
    }
    (0..20).any(|_| {
        let mut v = vec![CycloNumber::zero(); rd.rank()];
        for b in basis {
            let k = CycloNumber::from_i64(rng.gen_range(-50..=50));
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(y * &k);
            }
        }
        (0..rd.num_roots()).all(|a| !rd.pair_covector(a, &v).is_zero())
    })
}

#[test]
fn springer_regularity_matches_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for kind in ["A1", "A2", "A3", "B2", "G2"] {
        let rd = rd(kind);
        for tc in list_torus_classes(&rd).unwrap() {
            assert_eq!(tc.is_springer_regular(&rd), random_vector_regular(&rd, &tc, &mut rng), "{kind}");
        }
    }
}

#[test]
fn eigenspaces_are_eigenvectors() {
    let a2 = rd("A2");
    let tc = TorusClass::new(&a2, a2.simple_reflection(0), 2).unwrap();
    assert_eq!(tc.eigenspace_dims(), vec![1, 1]);
    let minus = CycloNumber::from_i64(-1);
    for v in tc.eigenspace(1) {
        let wv = tc.w().act_covector(v);
        assert!(wv.iter().zip(v).all(|(a, b)| *a == b * &minus));
    }
    for v in tc.eigenspace(0) {
        assert_eq!(tc.w().act_covector(v), *v);
    }
}

/// `s = t^{v/2} Σ b_k t^k` with `b_k = (a_k − Σ_{0<i<k} b_i b_{k−i}) / 2b₀`.
fn newton_oracle(a: &[Rational], b0: Rational, terms: usize) -> Vec<Rational> {
    let mut b = vec![b0.clone()];
    for k in 1..terms {
        let mut acc = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for i in 1..k {
            acc -= &b[i] * &b[k - i];
        }
        b.push(acc / (Rational::from_i64(2) * &b0));
    }
    b
}

#[test]
fn square_roots_match_the_newton_recursion() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..40 {
        let v = -2 * rng.gen_range(0..4i64);
        let b0 = Rational::from_i64(rng.gen_range(1..5));
        let mut a = vec![&b0 * &b0];
        a.extend((1..6).map(|_| Rational::from_frac(rng.gen_range(-6..=6), rng.gen_range(1..4))));
        let hi = v + a.len() as i64;
        let w = LaurentWindow::new(
            Rational::from_i64(v),
            Rational::from_i64(hi),
            a.iter()
                .enumerate()
                .map(|(k, c)| (Rational::from_i64(v + k as i64), CycloNumber::from_rational(c.clone()))),
        )
        .unwrap();
        let s = w.sqrt().unwrap();
        let expected = newton_oracle(&a, b0, a.len());
        for (k, b) in expected.iter().enumerate() {
            let e = Rational::from_i64(v / 2 + k as i64);
            if e < s.hi() {
                assert_eq!(s.coeff(&e), Some(CycloNumber::from_rational(b.clone())), "case {case} k {k}");
            }
        }
        assert!(s.mul(&s).agrees_with(&w), "case {case}");
    }
    // t^{-4}(1 + t) → t^{-2}(1 + t/2 − t²/8 + t³/16)
    let w = LaurentWindow::new(q(-4, 1), q(0, 1), [(q(-4, 1), cv(&[1])[0].clone()), (q(-3, 1), cv(&[1])[0].clone())])
        .unwrap();
    let s = w.sqrt().unwrap();
    let got: Vec<_> = (0..4).map(|k| s.coeff(&q(-2 + k, 1)).unwrap()).collect();
    assert_eq!(got, cq(&[(1, 1), (1, 2), (-1, 8), (1, 16)]));
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

#[test]
fn charpoly_map_matches_polynomial_expansion() {
    let diag_polys: Vec<Vec<i64>> = vec![vec![1], vec![0, 1], vec![-1, -1]];
    let e2 = poly_add(
        &poly_add(&poly_mul(&diag_polys[0], &diag_polys[1]), &poly_mul(&diag_polys[0], &diag_polys[2])),
        &poly_mul(&diag_polys[1], &diag_polys[2]),
    );
    let e3 = poly_mul(&poly_mul(&diag_polys[0], &diag_polys[1]), &diag_polys[2]);
    let window = |p: &[i64]| {
        LaurentWindow::new(
            q(0, 1),
            q(6, 1),
            p.iter()
                .enumerate()
                .map(|(k, &c)| (q(k as i64, 1), CycloNumber::from_i64(c))),
        )
        .unwrap()
    };
    let diag: Vec<LaurentWindow> = diag_polys.iter().map(|p| window(p)).collect();
    let out = charpoly_map(&diag).unwrap();
    assert!(out[0].agrees_with(&window(&e2)));
    assert!(out[1].agrees_with(&window(&e3)));
    assert_eq!(e2, vec![-1, -1, -1]);
}

#[test]
fn stabilizers_are_generated_by_their_reflections() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kind in ["A1", "A2", "B2"] {
        let rd = rd(kind);
        for _ in 0..30 {
            let c: Vec<CycloNumber> = (0..rd.rank()).map(|_| CycloNumber::from_i64(rng.gen_range(-1..=1))).collect();
            let lam = Tail::monomial(1, q(1, 1), c).unwrap();
            let st = stabilizer(&rd, &lam).unwrap();
            let gens: Vec<usize> = st
                .reflections
                .iter()
                .map(|&a| rd.weyl_index(&rd.reflection(a)).unwrap())
                .collect();
            assert_eq!(generated_subgroup(&rd, &gens), st.elements, "{kind}");
        }
    }
}

/// Dense 3×3 commutator over ℤ[t, t⁻¹] with exponents in a map.
fn dense_bracket(x: &BTreeMap<(i64, usize, usize), i64>, y: &BTreeMap<(i64, usize, usize), i64>) -> BTreeMap<(i64, usize, usize), i64> {
    let mut out = BTreeMap::new();
    for (&(k, i, j), a) in x {
        for (&(l, p, r), b) in y {
            for c in 0..3 {
                if j == p && c == r {
                    *out.entry((k + l, i, c)).or_insert(0) += a * b;
                }
                if r == i && c == j {
                    *out.entry((k + l, p, c)).or_insert(0) -= a * b;
                }
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn sl3_brackets_match_a_dense_table() {
    let n = 3;
    let one = CycloNumber::from_i64(1);
    let mut gens = Vec::new();
    for k in -1..=1 {
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    gens.push(Gen { kind: GenKind::Root(a, b), k });
                }
            }
        }
        gens.extend((0..n - 1).map(|l| Gen { kind: GenKind::Torus(l), k }));
    }
    let dense = |g: &Gen| -> BTreeMap<(i64, usize, usize), i64> {
        match g.kind {
            GenKind::Root(a, b) => BTreeMap::from([((g.k, a, b), 1)]),
            GenKind::Torus(l) => BTreeMap::from([((g.k, l, l), 1), ((g.k, l + 1, l + 1), -1)]),
        }
    };
    for x in &gens {
        for y in &gens {
            let ours = LoopMatrix::from_gen(n, x, &one).bracket(&LoopMatrix::from_gen(n, y, &one));
            let want = dense_bracket(&dense(x), &dense(y));
            let got: BTreeMap<(i64, usize, usize), i64> = ours
                .entries()
                .iter()
                .map(|(k, c)| (*k, i64::try_from(c.to_rational().unwrap().to_integer()).unwrap()))
                .collect();
            assert_eq!(got, want, "[{x}, {y}]");
        }
    }
}

#[test]
fn sl2_symplectic_form_is_the_residue_pairing() {
    // c = ⟨ϖ t⁻¹ dt/t, h t⟩ = res(t⁻¹ · t · dt/t) · tr(diag(1/2, −1/2) · h) = 1
    let lad = sl2_depth_one();
    let form = symplectic_form(&lad, 1).unwrap();
    let one = CycloNumber::from_i64(1);
    assert_eq!(form.matrix, vec![vec![CycloNumber::zero(), one.clone()], vec![-one, CycloNumber::zero()]]);
    assert_eq!(lagrangian(&form).unwrap(), vec![cv(&[1, 0])]);
}

#[test]
fn graded_pieces_and_level_split() {
    let x = Grading::rho_over(2, 2).unwrap();
    assert_eq!(mp_graded_piece(2, x.x(), &q(1, 2)).unwrap().len(), 2);
    assert_eq!(mp_graded_piece(2, x.x(), &q(0, 1)).unwrap().len(), 1);
    assert!(mp_graded_piece(2, &[q(0, 1), q(0, 1)], &q(1, 2)).unwrap().is_empty());

    let a2 = rd("A2");
    let d = classify(&a2, &TorusClass::split(&a2), &sl3_two_break_tail()).unwrap();
    let parts = vj_split(&yu_ladder(&a2, &d).unwrap());
    assert_eq!(parts[0], RootSet::new());
    assert_eq!(parts[1], RootSet::from([1, 4]));
    assert_eq!(parts[2].len(), 4);
}
