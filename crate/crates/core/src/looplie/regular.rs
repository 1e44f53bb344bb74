//! Brute-force search for regular semisimple elements in the graded piece
//! `𝔤₀*(−1)` of `sl_n` under the `ℤ/m`-grading attached to `ρ∨/m`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{GenKind, Grading, LoopMatrix, MODULE};
use crate::error::{Error, ErrorKind, Result};
use crate::rootdata::{CartanType, Family, RootDatum};
use crate::tori::regular_numbers;
use crate::Rational;

/// Grid points tried per search.
const MAX_SAMPLES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenRegular {
    pub n: usize,
    pub m: u64,
    pub brute_force: bool,
    pub springer: bool,
    pub agree: bool,
    /// Coefficients of the first regular semisimple sample on the piece.
    pub witness: Option<Vec<String>>,
}

/// `p mod q` over ℚ, coefficients from the constant term up.
fn poly_rem(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut r = p.to_vec();
    let lead = q.last().expect("nonzero divisor").clone();
    while r.len() >= q.len() {
        let c = r.last().expect("nonempty") / &lead;
        let shift = r.len() - q.len();
        for (i, qi) in q.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * qi);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Characteristic polynomial `det(t − A)` by Faddeev-LeVerrier.
fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mul = |x: &[Vec<Rational>], y: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        mk = next;
        let am = mul(a, &mk);
        let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    coeffs
}

/// Distinct eigenvalues: `gcd(p, p′)` is constant.
fn is_squarefree(p: &[Rational]) -> bool {
    let dp: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
        .collect();
    poly_gcd(p, &dp).len() <= 1
}

/// Generators of degree `−1/m` in `L sl_n` at `x = ρ∨/m` with exponents in
/// `{−1, 0}`; evaluating `t = 1` realizes them in `sl_n`.
fn piece_at_minus_one(n: usize, m: u64) -> Result<Vec<LoopMatrix>> {
    let g = Grading::rho_over(n, m)?;
    let deg = -Rational::new(1.into(), m.into());
    let one = crate::CycloNumber::from_i64(1);
    let mut out: Vec<LoopMatrix> = g
        .piece(&deg)
        .into_iter()
        .filter(|gen| matches!(gen.kind, GenKind::Root(..)) && (gen.k == 0 || gen.k == -1))
        .map(|gen| LoopMatrix::from_gen(n, &gen, &one))
        .collect();
    if m == 1 {
        // the grading is trivial and the whole Cartan is available
        out.extend((0..n - 1).map(|l| {
            LoopMatrix::from_gen(n, &super::Gen { kind: GenKind::Torus(l), k: 0 }, &one)
        }));
    }
    Ok(out)
}

fn evaluate_at_one(x: &LoopMatrix) -> Result<Vec<Vec<Rational>>> {
    let n = x.n();
    let mut a = vec![vec![Rational::zero(); n]; n];
    for (&(_, i, j), c) in x.entries() {
        let c = c
            .to_rational()
            .ok_or_else(|| Error::invariant(MODULE, "non-rational entry on a rational grid"))?;
        a[i][j] = &a[i][j] + &c;
    }
    Ok(a)
}

/// Searches the coefficient grid `{0, 1, 2}^g` of the degree `−1/m` piece for
/// a matrix with distinct eigenvalues and compares with the regular numbers
/// of `A_{n−1}`.
pub fn eigen_regular_check(n: usize, m: u64) -> Result<EigenRegular> {
    if !(2..=6).contains(&n) {
        return Err(Error::new(
            ErrorKind::UnsupportedFeature,
            MODULE,
            "eigen_regular_check supports sl_2 through sl_6",
        ));
    }
    if m < 1 || m > 4 * n as u64 {
        return Err(Error::invalid(MODULE, format!("m = {m} is outside 1..={}", 4 * n)));
    }
    let rd = RootDatum::build(&CartanType::simple(Family::A, n - 1))?;
    let springer = regular_numbers(&rd)?.all.contains(&m);
    let gens = piece_at_minus_one(n, m)?;
    let g = gens.len();
    let total = 3usize.checked_pow(g as u32).unwrap_or(usize::MAX).min(MAX_SAMPLES);
    let mut witness = None;
    for idx in 0..total {
        let mut digits = Vec::with_capacity(g);
        let mut rest = idx;
        for _ in 0..g {
            digits.push((rest % 3) as i64);
            rest /= 3;
        }
        let mut x = LoopMatrix::zero(n);
        for (gen, &d) in gens.iter().zip(&digits) {
            if d != 0 {
                x = x.add(&gen.scale(&crate::CycloNumber::from_i64(d)));
            }
        }
        if is_squarefree(&charpoly(&evaluate_at_one(&x)?)) {
            witness = Some(digits.iter().map(|d| d.to_string()).collect());
            break;
        }
    }
    let brute_force = witness.is_some();
    Ok(EigenRegular {
        n,
        m,
        brute_force,
        springer,
        agree: brute_force == springer,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalField;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn charpoly_of_small_matrices() {
        // [[0, 1], [1, 0]] has t² − 1
        let p = charpoly(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert_eq!(p, vec![q(-1), q(0), q(1)]);
        assert!(is_squarefree(&p));
        let nil = charpoly(&[vec![q(0), q(1)], vec![q(0), q(0)]]);
        assert!(!is_squarefree(&nil));
    }

    #[test]
    fn agrees_with_regular_numbers() {
        for (n, m, expected) in [(2, 2, true), (3, 2, true), (3, 3, true), (3, 5, false)] {
            let r = eigen_regular_check(n, m).unwrap();
            assert_eq!(r.brute_force, expected, "n={n} m={m}");
            assert!(r.agree, "n={n} m={m}");
        }
    }
}
