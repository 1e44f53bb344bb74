//! Exact arithmetic in cyclotomic fields ℚ(ζ_L).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(L)-1}` reduced
//! modulo the L-th cyclotomic polynomial. Binary operations on elements of
//! different conductors first lift both operands to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ErrorKind, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, RationalField};

const MODULE: &str = "exactfield";

/// Integer coefficients (low degree first) of the L-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(conductor: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&conductor) {
        return p.clone();
    }
    // x^L - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; conductor as usize + 1];
    poly[0] = -1;
    poly[conductor as usize] = 1;
    for d in (1..conductor).filter(|d| conductor.is_multiple_of(*d)) {
        poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(conductor, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dn] = c;
        for (k, &dk) in den.iter().enumerate() {
            rem[i - dn + k] -= c * dk;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, i.e. the degree of ℚ(ζ_L).
pub fn totient(conductor: u64) -> usize {
    cyclotomic_polynomial(conductor).len() - 1
}

/// Element of ℚ(ζ_L) with rational coefficients of type `Q`.
#[derive(Clone)]
pub struct Cyclotomic<Q> {
    conductor: u64,
    coeffs: Vec<Q>,
}

impl<Q: RationalField> Cyclotomic<Q> {
    pub fn from_rational(q: Q) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Q::from_i64(n))
    }

    /// ζ_L^exponent.
    pub fn root_of_unity(conductor: u64, exponent: i64) -> Result<Self> {
        if conductor < 1 {
            return Err(Error::invalid(MODULE, "conductor must be at least 1"));
        }
        let e = exponent.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![Q::zero(); e + 1];
        poly[e] = Q::one();
        Ok(Self::reduced(conductor, poly))
    }

    /// Takes coefficients in the power basis of ℚ(ζ_L) (any length) and
    /// reduces them modulo Φ_L.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Q>) -> Result<Self> {
        if conductor < 1 {
            return Err(Error::invalid(MODULE, "conductor must be at least 1"));
        }
        Ok(Self::reduced(conductor, coeffs))
    }

    fn reduced(conductor: u64, mut poly: Vec<Q>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[i], Q::zero());
            for (k, &pk) in phi[..deg].iter().enumerate() {
                if pk != 0 {
                    let cur = std::mem::replace(&mut poly[i - deg + k], Q::zero());
                    poly[i - deg + k] = cur - c.clone() * Q::from_i64(pk);
                }
            }
        }
        poly.resize(deg, Q::zero());
        Cyclotomic {
            conductor,
            coeffs: poly,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// The same element written in ℚ(ζ_{L2}); requires L | L2.
    pub fn lift(&self, conductor: u64) -> Result<Self> {
        if conductor < 1 || !conductor.is_multiple_of(self.conductor) {
            return Err(Error::invalid(
                MODULE,
                format!(
                    "cannot lift conductor {} to {}: not a multiple",
                    self.conductor, conductor
                ),
            ));
        }
        Ok(self.lift_unchecked(conductor))
    }

    fn lift_unchecked(&self, conductor: u64) -> Self {
        if conductor == self.conductor {
            return self.clone();
        }
        let f = (conductor / self.conductor) as usize;
        let mut poly = vec![Q::zero(); (self.coeffs.len().max(1) - 1) * f + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * f] = c.clone();
        }
        Self::reduced(conductor, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = a.conductor.lcm(&b.conductor);
        (a.lift_unchecked(l), b.lift_unchecked(l))
    }

    /// Expresses `self` in ℚ(ζ_d) when it lies in that subfield.
    pub fn retract(&self, conductor: u64) -> Option<Self> {
        if conductor < 1 || !self.conductor.is_multiple_of(conductor) {
            return None;
        }
        if conductor == self.conductor {
            return Some(self.clone());
        }
        let small = totient(conductor);
        let big = self.coeffs.len();
        // columns: images of the small power basis; last column: self
        let mut aug = Matrix::<Q>::zeros(big, small + 1);
        for k in 0..small {
            let mut e = vec![Q::zero(); small];
            e[k] = Q::one();
            let img = Cyclotomic {
                conductor,
                coeffs: e,
            }
            .lift_unchecked(self.conductor);
            for (i, c) in img.coeffs.into_iter().enumerate() {
                aug[(i, k)] = c;
            }
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            aug[(i, small)] = c.clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&small) {
            return None;
        }
        Some(Cyclotomic {
            conductor,
            coeffs: (0..small).map(|i| aug[(i, small)].clone()).collect(),
        })
    }

    /// Rewrites `self` over the smallest conductor dividing the current one.
    pub fn simplify(&self) -> Self {
        if self.is_rational() {
            return Self::from_rational(self.coeffs[0].clone());
        }
        let l = self.conductor;
        (1..l)
            .filter(|d| l.is_multiple_of(*d))
            .find_map(|d| self.retract(d))
            .unwrap_or_else(|| self.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational()
            .then(|| self.coeffs.first().cloned().unwrap_or_else(Q::zero))
    }

    /// Multiplicative inverse, solved from the multiplication-by-self matrix.
    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::new(ErrorKind::Arithmetic, MODULE, "division by zero"));
        }
        let n = self.coeffs.len();
        let mut m = Matrix::<Q>::zeros(n, n);
        let mut col = self.clone();
        let x = Self::root_of_unity(self.conductor, 1)?;
        for k in 0..n {
            for (i, c) in col.coeffs.iter().enumerate() {
                m[(i, k)] = c.clone();
            }
            col = &col * &x;
        }
        let mut e0 = vec![Q::zero(); n];
        e0[0] = Q::one();
        let y = m
            .solve(&e0)
            .ok_or_else(|| Error::invariant(MODULE, "singular multiplication matrix"))?;
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs: y,
        })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.try_inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root of an element of the form r·ζ with r a positive rational
    /// square and ζ a root of unity. The branch is chosen so that the first
    /// nonzero coefficient of the simplified root is positive.
    pub fn sqrt_monomial(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let l = self.conductor.lcm(&2);
        let lifted = self.lift_unchecked(l);
        for k in 0..l as i64 {
            let unit = Self::root_of_unity(l, -k).ok()?;
            let Some(r) = (&lifted * &unit).to_rational() else {
                continue;
            };
            if r <= Q::zero() {
                continue;
            }
            let s = r.rational_sqrt()?;
            let root = (&Self::root_of_unity(2 * l, k).ok()? * &Self::from_rational(s)).simplify();
            let leading_positive = root
                .coeffs
                .iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| *c > Q::zero());
            return Some(if leading_positive { root } else { -root });
        }
        None
    }
}

/// The four basic field operations, dispatched by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith<Q: RationalField>(
    a: &Cyclotomic<Q>,
    b: &Cyclotomic<Q>,
    op: FieldOp,
) -> Result<Cyclotomic<Q>> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.try_div(b)?,
    })
}

impl<Q: RationalField> PartialEq for Cyclotomic<Q> {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl<Q: RationalField> Eq for Cyclotomic<Q> {}

impl<'a, Q: RationalField> Add<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn add(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            let cur = std::mem::replace(x, Q::zero());
            *x = cur + y;
        }
        a
    }
}

impl<'a, Q: RationalField> Sub<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn sub(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
        self + &(-rhs.clone())
    }
}

impl<'a, Q: RationalField> Mul<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn mul(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
        if self.is_rational() || rhs.is_rational() {
            let (r, other) = if self.is_rational() {
                (&self.coeffs[0], rhs)
            } else {
                (&rhs.coeffs[0], self)
            };
            return Cyclotomic {
                conductor: other.conductor,
                coeffs: other.coeffs.iter().map(|c| c.clone() * r.clone()).collect(),
            };
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.coeffs.len();
        let mut prod = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    let cur = std::mem::replace(&mut prod[i + j], Q::zero());
                    prod[i + j] = cur + x.clone() * y.clone();
                }
            }
        }
        Cyclotomic::reduced(a.conductor, prod)
    }
}

impl<Q: RationalField> Add for Cyclotomic<Q> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<Q: RationalField> Sub for Cyclotomic<Q> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<Q: RationalField> Mul for Cyclotomic<Q> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<Q: RationalField> Neg for Cyclotomic<Q> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            let cur = std::mem::replace(c, Q::zero());
            *c = -cur;
        }
        self
    }
}

impl<Q: RationalField> Zero for Cyclotomic<Q> {
    fn zero() -> Self {
        Self::from_rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<Q: RationalField> One for Cyclotomic<Q> {
    fn one() -> Self {
        Self::from_rational(Q::one())
    }
}

impl<Q: RationalField> Field for Cyclotomic<Q> {
    fn inv(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
}

impl<Q: RationalField> fmt::Debug for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<Q: RationalField> fmt::Display for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.simplify();
        let terms: Vec<String> = s
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", s.conductor),
                _ => format!("{c}*z{}^{k}", s.conductor),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    conductor: u64,
    coeffs: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CycloInput {
    Rational(String),
    Full(CycloWire),
}

/// Rational elements travel as a bare string such as `"-3/2"`; everything
/// else as `{"conductor": L, "coeffs": [...]}` over its smallest conductor.
impl<Q: RationalField> Serialize for Cyclotomic<Q> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(q) = self.to_rational() {
            return serializer.serialize_str(&q.to_string());
        }
        let s = self.simplify();
        CycloWire {
            conductor: s.conductor,
            coeffs: s.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, Q: RationalField> Deserialize<'de> for Cyclotomic<Q> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let parse = |s: &str| {
            s.trim()
                .parse::<Q>()
                .map_err(|_| D::Error::custom(format!("bad rational {s:?}")))
        };
        let wire = match CycloInput::deserialize(deserializer)? {
            CycloInput::Rational(s) => return Ok(Self::from_rational(parse(&s)?)),
            CycloInput::Full(w) => w,
        };
        if wire.conductor < 1 {
            return Err(D::Error::custom("conductor must be at least 1"));
        }
        let deg = totient(wire.conductor);
        if wire.coeffs.len() != deg {
            return Err(D::Error::custom(format!(
                "conductor {} needs {} coefficients, got {}",
                wire.conductor,
                deg,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Cyclotomic {
            conductor: wire.conductor,
            coeffs,
        })
    }
}
