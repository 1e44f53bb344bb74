//! The type A Chevalley map on Laurent windows and the SL₂ stratum table.
//!
//! For SL₂ a point of 𝔠*(F) is `a·(dt)²` and the diagonal functional
//! `diag(b, −b)·dt` maps to `−b²·(dt)²`. The closed-form table reads the
//! stratum off `v(a)`; the cross-check lifts `a` through a square root to a
//! tail on the split or the nonsplit torus and runs [`classify`] on it.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorKind, Result};
use crate::polar::classify;
use crate::rootdata::{CartanType, Family, RootDatum};
use crate::tails::{LaurentWindow, Tail};
use crate::tori::TorusClass;
use crate::{CycloNumber, Rational};

const MODULE: &str = "chevmap";

/// Elementary symmetric functions `e_2, …, e_n` of trace-free diagonal
/// entries, each known on its guaranteed window.
pub fn charpoly_map(diag: &[LaurentWindow]) -> Result<Vec<LaurentWindow>> {
    if diag.len() < 2 {
        return Err(Error::invalid(MODULE, "need at least two diagonal entries"));
    }
    let trace = diag[1..].iter().fold(diag[0].clone(), |acc, x| acc.add(x));
    if !trace.is_zero_in_window() {
        return Err(Error::invalid(MODULE, "diagonal entries must sum to zero"));
    }
    // e[k] is None while it is exactly zero; e_0 = 1 is implicit
    let n = diag.len();
    let mut e: Vec<Option<LaurentWindow>> = vec![None; n + 1];
    for (count, x) in diag.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            let prod = if k == 1 {
                Some(x.clone())
            } else {
                e[k - 1].as_ref().map(|p| p.mul(x))
            };
            e[k] = match (e[k].take(), prod) {
                (Some(a), Some(b)) => Some(a.add(&b)),
                (a, b) => a.or(b),
            };
        }
    }
    e.into_iter()
        .skip(2)
        .map(|w| w.ok_or_else(|| Error::invariant(MODULE, "missing symmetric function")))
        .collect()
}

pub fn sqrt_series(a: &LaurentWindow) -> Result<LaurentWindow> {
    a.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StratumKind {
    #[serde(rename = "split-toral")]
    SplitToral,
    #[serde(rename = "nonsplit-toral")]
    NonsplitToral,
    #[serde(rename = "G-zero")]
    GZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sl2Stratum {
    pub kind: StratumKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
}

impl Sl2Stratum {
    pub fn g_zero() -> Self {
        Sl2Stratum {
            kind: StratumKind::GZero,
            n: None,
        }
    }
}

fn integral_exponents(a: &LaurentWindow) -> Result<()> {
    if a.den() != 1 {
        return Err(Error::invalid(MODULE, "SL2 inputs must have integral exponents"));
    }
    Ok(())
}

fn to_i64(q: &Rational) -> i64 {
    i64::try_from(q.to_integer()).expect("small exponent")
}

/// The closed-form table: `v ≥ −1` is `(G, 0)`, `v = −2n` split toral,
/// `v = −2n − 1` nonsplit toral.
pub fn sl2_stratum(a: &LaurentWindow) -> Result<Sl2Stratum> {
    integral_exponents(a)?;
    let Some(v) = a.valuation() else {
        // everything below hi vanishes, so v ≥ hi
        if a.hi() >= Rational::from_integer((-1).into()) {
            return Ok(Sl2Stratum::g_zero());
        }
        return Err(Error::new(
            ErrorKind::Precision,
            MODULE,
            "valuation not determined inside the window",
        ));
    };
    let v = to_i64(&v);
    Ok(if v >= -1 {
        Sl2Stratum::g_zero()
    } else if v % 2 == 0 {
        Sl2Stratum {
            kind: StratumKind::SplitToral,
            n: Some((-v / 2) as u64),
        }
    } else {
        Sl2Stratum {
            kind: StratumKind::NonsplitToral,
            n: Some(((-v - 1) / 2) as u64),
        }
    })
}

/// Outcome of the two routes for one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub closed_form: Sl2Stratum,
    pub lifted: Sl2Stratum,
    pub lift: Tail,
    pub agree: bool,
}

/// Lifts `a` to a tail and classifies it.
///
/// With `b² = −a`, the functional `diag(b, −b)·dt = Σ b_k t^{k+1} dt/t`
/// contributes the term `q = −(k+1)` for every `k ≤ −1`. When `v(a)` is odd
/// the root is taken after `t = τ²`, i.e. on the grid `(1/2)ℤ`, and the tail
/// lives on the torus `(s_α, 2)`.
pub fn sl2_crosscheck(a: &LaurentWindow) -> Result<Crosscheck> {
    integral_exponents(a)?;
    let closed_form = sl2_stratum(a)?;
    let rd = RootDatum::build(&CartanType::simple(Family::A, 1))?;
    let minus_one = Rational::from_integer((-1).into());

    let (tc, lift) = match a.valuation() {
        // b then has valuation > −1 and contributes no term with q ≥ 0
        None => (TorusClass::split(&rd), Tail::zero(1)),
        Some(v) if v >= minus_one => (TorusClass::split(&rd), Tail::zero(1)),
        Some(v) => {
            let ramified = !v.is_integer() || to_i64(&v) % 2 != 0;
            let (m, tc, series) = if ramified {
                let tc = TorusClass::new(&rd, rd.simple_reflection(0), 2)?;
                (2u64, tc, a.with_denominator(2)?)
            } else {
                (1u64, TorusClass::split(&rd), a.clone())
            };
            let b = sqrt_series(&series.neg())?;
            if b.hi() <= minus_one {
                return Err(Error::new(
                    ErrorKind::Precision,
                    MODULE,
                    "square root is not known up to t^-1",
                ));
            }
            let terms = b
                .terms()
                .into_iter()
                .filter(|(k, _)| *k <= minus_one)
                .map(|(k, c)| (-(k + Rational::one()), vec![c]));
            (tc, Tail::new(m, terms)?)
        }
    };

    let d = classify(&rd, &tc, &lift)?;
    let lifted = if d.levi().len() == rd.num_roots() {
        Sl2Stratum::g_zero()
    } else {
        let depth = lift
            .pair_coroot(&rd, 0)
            .depth()
            .ok_or_else(|| Error::invariant(MODULE, "toral datum without depth"))?;
        let (kind, shift) = if d.torus().w().is_identity() {
            (StratumKind::SplitToral, Rational::one())
        } else {
            (StratumKind::NonsplitToral, Rational::new(1.into(), 2.into()))
        };
        let n = depth + shift;
        if !n.is_integer() {
            return Err(Error::invariant(MODULE, format!("non-integral stratum index {n}")));
        }
        Sl2Stratum {
            kind,
            n: Some(to_i64(&n) as u64),
        }
    };
    Ok(Crosscheck {
        agree: lifted == closed_form,
        closed_form,
        lifted,
        lift,
    })
}

/// Leading coefficients whose negatives have square roots in a cyclotomic
/// field: rational squares times roots of unity.
fn leading_coefficients() -> Vec<CycloNumber> {
    let q = |n: i64, d: i64| CycloNumber::from_rational(Rational::new(n.into(), d.into()));
    let z3 = CycloNumber::root_of_unity(3, 1).expect("conductor 3");
    vec![
        q(1, 1),
        q(-1, 1),
        q(4, 1),
        q(-4, 1),
        q(9, 4),
        z3.clone(),
        -z3,
    ]
}

/// Second terms `c·t^{v+1}` mixed into each grid point.
fn perturbations() -> Vec<CycloNumber> {
    let q = |n: i64, d: i64| CycloNumber::from_rational(Rational::new(n.into(), d.into()));
    vec![q(0, 1), q(1, 1), q(2, 1), q(-1, 3)]
}

/// Valuations `−8, …, 2`, each leading coefficient and perturbation, known
/// on `[v, 4)`, plus windows that are zero on `[−1, 4)` and `[0, 4)`.
pub fn default_grid() -> Vec<LaurentWindow> {
    let int = |n: i64| Rational::from_integer(n.into());
    let mut grid = Vec::new();
    for v in -8..=2 {
        for c in leading_coefficients() {
            for p in perturbations() {
                let terms = [(int(v), c.clone()), (int(v + 1), p.clone())];
                grid.push(LaurentWindow::new(int(v), int(4), terms).expect("grid window"));
            }
        }
    }
    grid.push(LaurentWindow::zero(int(-1), int(4)).expect("grid window"));
    grid.push(LaurentWindow::zero(int(0), int(4)).expect("grid window"));
    grid
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StratumTally {
    #[serde(rename = "split-toral")]
    pub split: usize,
    #[serde(rename = "nonsplit-toral")]
    pub nonsplit: usize,
    #[serde(rename = "G-zero")]
    pub g_zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridViolation {
    pub input: LaurentWindow,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Report {
    pub points: usize,
    pub strata: StratumTally,
    pub agreements: usize,
    pub violations: Vec<GridViolation>,
}

/// Runs the closed-form table and the cross-check over `grid`.
pub fn verify_sl2(grid: &[LaurentWindow]) -> Sl2Report {
    use rayon::prelude::*;
    let outcomes: Vec<Result<Crosscheck>> = grid.par_iter().map(sl2_crosscheck).collect();
    let mut report = Sl2Report {
        points: grid.len(),
        strata: StratumTally::default(),
        agreements: 0,
        violations: Vec::new(),
    };
    for (a, out) in grid.iter().zip(outcomes) {
        match out {
            Ok(c) => {
                match c.closed_form.kind {
                    StratumKind::SplitToral => report.strata.split += 1,
                    StratumKind::NonsplitToral => report.strata.nonsplit += 1,
                    StratumKind::GZero => report.strata.g_zero += 1,
                }
                if c.agree {
                    report.agreements += 1;
                } else {
                    report.violations.push(GridViolation {
                        input: a.clone(),
                        reason: format!("table {:?} vs lift {:?}", c.closed_form, c.lifted),
                    });
                }
            }
            Err(e) => report.violations.push(GridViolation {
                input: a.clone(),
                reason: e.to_string(),
            }),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalField;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn c(n: i64) -> CycloNumber {
        CycloNumber::from_i64(n)
    }

    fn w(lo: i64, hi: i64, terms: &[(i64, i64)]) -> LaurentWindow {
        LaurentWindow::new(q(lo, 1), q(hi, 1), terms.iter().map(|&(e, x)| (q(e, 1), c(x)))).unwrap()
    }

    #[test]
    fn sl2_charpoly_is_minus_a_squared() {
        let a = w(-2, 2, &[(-2, 1), (0, 3)]);
        let e = charpoly_map(&[a.clone(), a.neg()]).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].agrees_with(&a.mul(&a).neg()));
        let z = w(0, 2, &[]);
        assert!(charpoly_map(&[z.clone(), z]).unwrap()[0].is_zero_in_window());
        assert!(charpoly_map(&[a.clone(), a]).is_err());
    }

    #[test]
    fn table_examples() {
        let split = sl2_stratum(&w(-4, 2, &[(-4, 1)])).unwrap();
        assert_eq!(split, Sl2Stratum { kind: StratumKind::SplitToral, n: Some(2) });
        let non = sl2_stratum(&w(-3, 2, &[(-3, 1)])).unwrap();
        assert_eq!(non, Sl2Stratum { kind: StratumKind::NonsplitToral, n: Some(1) });
        assert_eq!(sl2_stratum(&w(-1, 2, &[(-1, 5)])).unwrap(), Sl2Stratum::g_zero());
        assert_eq!(sl2_stratum(&w(-1, 2, &[])).unwrap(), Sl2Stratum::g_zero());
        assert_eq!(sl2_stratum(&w(-5, -2, &[])).unwrap_err().kind, ErrorKind::Precision);
    }

    #[test]
    fn crosscheck_examples() {
        let split = sl2_crosscheck(&w(-4, 2, &[(-4, -1)])).unwrap();
        assert!(split.agree);
        assert_eq!(split.lift.max_exponent(), Some(q(1, 1)));

        let non = sl2_crosscheck(&w(-3, 2, &[(-3, -1)])).unwrap();
        assert!(non.agree);
        assert_eq!(non.lifted.kind, StratumKind::NonsplitToral);
        assert_eq!(non.lift.max_exponent(), Some(q(1, 2)));

        let g = sl2_crosscheck(&w(-1, 2, &[(-1, 1)])).unwrap();
        assert!(g.agree);
        assert!(g.lift.is_zero());
    }

    #[test]
    fn stratum_json() {
        let s = Sl2Stratum { kind: StratumKind::SplitToral, n: Some(2) };
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"split-toral","n":2}"#);
        assert_eq!(serde_json::to_string(&Sl2Stratum::g_zero()).unwrap(), r#"{"kind":"G-zero"}"#);
    }

    #[test]
    fn default_grid_agrees() {
        let r = verify_sl2(&default_grid());
        assert!(r.violations.is_empty(), "{:?}", r.violations.first());
        assert_eq!(r.agreements, r.points);
    }
}
