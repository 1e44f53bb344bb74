use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::parse_rational;
use crate::error::{Error, ErrorKind, Result};
use crate::{CycloNumber, Rational};

const MODULE: &str = "tails";

/// A truncated Laurent series `Σ a_e t^e`.
///
/// Exponents live on the grid `(1/den)ℤ`. Coefficients below `lo` are zero,
/// those in `[lo, hi)` are stored, and nothing is known from `hi` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentWindow {
    den: u64,
    lo: i64,
    hi: i64,
    coeffs: Vec<CycloNumber>,
}

fn to_units(q: &Rational, den: u64) -> i64 {
    let scaled = q * Rational::from_integer(den.into());
    debug_assert!(scaled.is_integer());
    i64::try_from(scaled.to_integer()).expect("exponent fits in i64")
}

fn from_units(e: i64, den: u64) -> Rational {
    Rational::new(e.into(), den.into())
}

impl LaurentWindow {
    pub fn new(
        lo: Rational,
        hi: Rational,
        terms: impl IntoIterator<Item = (Rational, CycloNumber)>,
    ) -> Result<Self> {
        if hi <= lo {
            return Err(Error::invalid(MODULE, "window needs hi > lo"));
        }
        let terms: Vec<(Rational, CycloNumber)> = terms.into_iter().collect();
        let mut den = lo.denom().lcm(hi.denom());
        for (e, _) in &terms {
            den = den.lcm(e.denom());
        }
        let den: u64 = den
            .try_into()
            .map_err(|_| Error::invalid(MODULE, "exponent denominator too large"))?;
        let (l, h) = (to_units(&lo, den), to_units(&hi, den));
        let mut coeffs = vec![CycloNumber::zero(); (h - l) as usize];
        for (e, c) in terms {
            if e < lo || e >= hi {
                return Err(Error::invalid(
                    MODULE,
                    format!("exponent {e} outside the window [{lo}, {hi})"),
                ));
            }
            let k = (to_units(&e, den) - l) as usize;
            coeffs[k] = &coeffs[k] + &c;
        }
        Ok(LaurentWindow {
            den,
            lo: l,
            hi: h,
            coeffs,
        })
    }

    pub fn zero(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, [])
    }

    /// `c · t^e` known on `[e, hi)`.
    pub fn monomial(c: CycloNumber, e: Rational, hi: Rational) -> Result<Self> {
        Self::new(e.clone(), hi, [(e, c)])
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn lo(&self) -> Rational {
        from_units(self.lo, self.den)
    }

    pub fn hi(&self) -> Rational {
        from_units(self.hi, self.den)
    }

    /// Coefficient of `t^e`; `None` when `e ≥ hi`.
    pub fn coeff(&self, e: &Rational) -> Option<CycloNumber> {
        if *e >= self.hi() {
            return None;
        }
        let scaled = e * Rational::from_integer(self.den.into());
        if *e < self.lo() || !scaled.is_integer() {
            return Some(CycloNumber::zero());
        }
        Some(self.coeffs[(to_units(e, self.den) - self.lo) as usize].clone())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> Vec<(Rational, CycloNumber)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (from_units(self.lo + k as i64, self.den), c.clone()))
            .collect()
    }

    /// Smallest exponent with a nonzero coefficient inside the window.
    pub fn valuation(&self) -> Option<Rational> {
        self.valuation_units().map(|v| from_units(v, self.den))
    }

    fn valuation_units(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.lo + k as i64)
    }

    pub fn is_zero_in_window(&self) -> bool {
        self.valuation_units().is_none()
    }

    /// Same series on the finer grid `(1/den2)ℤ`.
    pub fn with_denominator(&self, den2: u64) -> Result<Self> {
        if den2 < 1 || !den2.is_multiple_of(self.den) {
            return Err(Error::invalid(
                MODULE,
                format!("cannot refine denominator {} to {den2}", self.den),
            ));
        }
        let f = (den2 / self.den) as i64;
        let mut coeffs = vec![CycloNumber::zero(); ((self.hi - self.lo) * f) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * f as usize] = c.clone();
        }
        Ok(LaurentWindow {
            den: den2,
            lo: self.lo * f,
            hi: self.hi * f,
            coeffs,
        })
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let d = a.den.lcm(&b.den);
        (
            a.with_denominator(d).expect("lcm is a multiple"),
            b.with_denominator(d).expect("lcm is a multiple"),
        )
    }

    fn unit_coeff(&self, e: i64) -> CycloNumber {
        if e < self.lo || e >= self.hi {
            CycloNumber::zero()
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    /// Drops everything from `hi2` on.
    pub fn truncate(&self, hi2: &Rational) -> Result<Self> {
        let h = hi2.clone().min(self.hi());
        Self::new(self.lo(), h, self.terms().into_iter().filter(|(e, _)| *e < *hi2))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let lo = a.lo.min(b.lo);
        let hi = a.hi.min(b.hi);
        let coeffs = (lo..hi).map(|e| &a.unit_coeff(e) + &b.unit_coeff(e)).collect();
        LaurentWindow {
            den: a.den,
            lo,
            hi,
            coeffs,
        }
    }

    pub fn scale(&self, s: &CycloNumber) -> Self {
        LaurentWindow {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycloNumber::from_i64(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, known up to `min(v(a) + hi(b), v(b) + hi(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let va = a.valuation_units().unwrap_or(a.hi);
        let vb = b.valuation_units().unwrap_or(b.hi);
        let lo = a.lo + b.lo;
        let hi = (va + b.hi).min(vb + a.hi);
        let mut coeffs = vec![CycloNumber::zero(); (hi - lo) as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                if !y.is_zero() {
                    coeffs[k] = &coeffs[k] + &(x * y);
                }
            }
        }
        LaurentWindow {
            den: a.den,
            lo,
            hi,
            coeffs,
        }
    }

    /// Square root with the canonical leading branch of
    /// [`CycloNumber::sqrt_monomial`].
    pub fn sqrt(&self) -> Result<Self> {
        let v = self.valuation_units().ok_or_else(|| {
            Error::new(
                ErrorKind::Precision,
                MODULE,
                "valuation not determined inside the window",
            )
        })?;
        if v % 2 != 0 {
            return Err(Error::new(
                ErrorKind::NoSqrtInF,
                MODULE,
                format!("odd valuation {}", from_units(v, self.den)),
            ));
        }
        let c = self.unit_coeff(v);
        let root = c.sqrt_monomial().ok_or_else(|| {
            Error::new(
                ErrorKind::FieldExtensionRequired,
                MODULE,
                format!("leading coefficient {c} is not a square in a cyclotomic field"),
            )
        })?;
        let cinv = c.try_inverse()?;
        let len = (self.hi - v) as usize;
        let u: Vec<CycloNumber> = (0..len).map(|k| &self.unit_coeff(v + k as i64) * &cinv).collect();
        let half = Rational::new(One::one(), 2.into());
        let half = CycloNumber::from_rational(half);
        let mut sigma = vec![CycloNumber::zero(); len];
        sigma[0] = CycloNumber::one();
        for k in 1..len {
            let mut acc = u[k].clone();
            for i in 1..k {
                if !sigma[i].is_zero() && !sigma[k - i].is_zero() {
                    acc = &acc - &(&sigma[i] * &sigma[k - i]);
                }
            }
            sigma[k] = &acc * &half;
        }
        Ok(LaurentWindow {
            den: self.den,
            lo: v / 2,
            hi: v / 2 + len as i64,
            coeffs: sigma.iter().map(|s| s * &root).collect(),
        })
    }

    /// Whether two windows agree wherever both are known.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        let hi = a.hi.min(b.hi);
        (a.lo.min(b.lo)..hi).all(|e| a.unit_coeff(e) == b.unit_coeff(e))
    }
}

#[derive(Serialize, Deserialize)]
struct WindowTerm {
    q: String,
    coeff: CycloNumber,
}

#[derive(Serialize, Deserialize)]
struct WindowWire {
    lo: String,
    hi: String,
    terms: Vec<WindowTerm>,
}

impl Serialize for LaurentWindow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WindowWire {
            lo: self.lo().to_string(),
            hi: self.hi().to_string(),
            terms: self
                .terms()
                .into_iter()
                .map(|(q, coeff)| WindowTerm {
                    q: q.to_string(),
                    coeff,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentWindow {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = WindowWire::deserialize(d)?;
        let lo = parse_rational(&wire.lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&wire.hi).map_err(D::Error::custom)?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| Ok((parse_rational(&t.q)?, t.coeff)))
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(D::Error::custom)?;
        LaurentWindow::new(lo, hi, terms).map_err(|e| D::Error::custom(e.message))
    }
}
