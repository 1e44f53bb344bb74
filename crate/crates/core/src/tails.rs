//! Laurent tails on a maximal torus and their pairings with coroots.
//!
//! A term with exponent `q` stands for `c_q · t^{-q} · dt/t`, so a tail is an
//! element of 𝔱*/𝔱*_{tn} exactly when every stored exponent is `q ≥ 0`.

mod window;

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, WeylElement};
use crate::{CycloNumber, Rational};

pub use window::LaurentWindow;

const MODULE: &str = "tails";

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Finite family of covectors `c_q`, keyed by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    m: u64,
    terms: BTreeMap<Rational, Vec<CycloNumber>>,
}

impl Tail {
    pub fn zero(m: u64) -> Self {
        Tail {
            m: m.max(1),
            terms: BTreeMap::new(),
        }
    }

    /// Validates exponents (`q ≥ 0`, denominator dividing `m`) and covector
    /// lengths, and drops zero terms.
    pub fn new(m: u64, terms: impl IntoIterator<Item = (Rational, Vec<CycloNumber>)>) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid(MODULE, "tail conductor must be at least 1"));
        }
        let mut out = Tail::zero(m);
        let mut dim = None;
        for (q, c) in terms {
            if q.is_negative() {
                return Err(Error::invalid(MODULE, format!("negative exponent {q}")));
            }
            if !(q.clone() * Rational::from_integer(m.into())).is_integer() {
                return Err(Error::invalid(
                    MODULE,
                    format!("exponent {q} has denominator not dividing {m}"),
                ));
            }
            if *dim.get_or_insert(c.len()) != c.len() {
                return Err(Error::invalid(MODULE, "covectors of different lengths"));
            }
            let slot = out.terms.entry(q).or_insert_with(|| vec![CycloNumber::zero(); c.len()]);
            for (s, x) in slot.iter_mut().zip(&c) {
                *s = &*s + x;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Single term `c · t^{-q} · dt/t`.
    pub fn monomial(m: u64, q: Rational, c: Vec<CycloNumber>) -> Result<Self> {
        Self::new(m, [(q, c)])
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.iter().any(|x| !x.is_zero()));
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Rational, Vec<CycloNumber>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Covector length, when there is at least one term.
    pub fn dim(&self) -> Option<usize> {
        self.terms.values().next().map(Vec::len)
    }

    pub fn max_exponent(&self) -> Option<Rational> {
        self.terms.keys().next_back().cloned()
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != rank => Err(Error::invalid(
                MODULE,
                format!("tail covectors have length {d}, root datum has rank {rank}"),
            )),
            _ => Ok(()),
        }
    }

    /// Same tail, with exponent denominators allowed up to `m2`.
    pub fn lift_conductor(&self, m2: u64) -> Result<Self> {
        if m2 < 1 || !m2.is_multiple_of(self.m) {
            return Err(Error::invalid(
                MODULE,
                format!("cannot lift tail conductor {} to {m2}", self.m),
            ));
        }
        Ok(Tail {
            m: m2,
            terms: self.terms.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.dim(), other.dim()) {
            if a != b {
                return Err(Error::invalid(MODULE, "adding tails of different ranks"));
            }
        }
        let mut out = Tail {
            m: lcm(self.m, other.m),
            terms: self.terms.clone(),
        };
        for (q, c) in &other.terms {
            match out.terms.get_mut(q) {
                Some(slot) => {
                    for (s, x) in slot.iter_mut().zip(c) {
                        *s = &*s + x;
                    }
                }
                None => {
                    out.terms.insert(q.clone(), c.clone());
                }
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, s: &CycloNumber) -> Self {
        let mut out = Tail {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(q, c)| (q.clone(), c.iter().map(|x| x * s).collect()))
                .collect(),
        };
        out.prune();
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycloNumber::from_i64(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Termwise action of `w` on covectors.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let mut out = Tail {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(q, c)| (q.clone(), w.act_covector(c)))
                .collect(),
        };
        out.prune();
        out
    }

    /// Terms whose exponent satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&Rational) -> bool) -> Self {
        Tail {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(q, _)| keep(q))
                .map(|(q, c)| (q.clone(), c.clone()))
                .collect(),
        }
    }

    /// Scalar tail `q ↦ ⟨α∨, c_q⟩`.
    pub fn pair_coroot(&self, rd: &RootDatum, coroot: usize) -> ScalarTail {
        ScalarTail {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(q, c)| (q.clone(), rd.pair_covector(coroot, c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Whether `w · c_q = ζ_m^{qm} · c_q` for every term, with `qm` integral.
    pub fn is_equivariant(&self, w: &WeylElement, m: u64) -> bool {
        let mr = Rational::from_integer(m.into());
        self.terms.iter().all(|(q, c)| {
            let qm = q.clone() * mr.clone();
            if !qm.is_integer() {
                return false;
            }
            let e = (qm.to_integer() % num_bigint::BigInt::from(m))
                .try_into()
                .unwrap_or(0i64);
            let z = CycloNumber::root_of_unity(m, e).expect("m ≥ 1");
            let lhs = w.act_covector(c);
            lhs.iter().zip(c).all(|(a, b)| *a == b * &z)
        })
    }
}

/// Finite family of scalars `q ↦ a_q` in the same normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTail {
    m: u64,
    #[serde(with = "scalar_terms")]
    terms: BTreeMap<Rational, CycloNumber>,
}

impl ScalarTail {
    pub fn new(m: u64, terms: impl IntoIterator<Item = (Rational, CycloNumber)>) -> Result<Self> {
        let tail = Tail::new(m, terms.into_iter().map(|(q, c)| (q, vec![c])))?;
        Ok(ScalarTail {
            m: tail.m,
            terms: tail.terms.into_iter().map(|(q, mut c)| (q, c.remove(0))).collect(),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Rational, CycloNumber> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent carrying a nonzero coefficient.
    pub fn depth(&self) -> Option<Rational> {
        self.terms.keys().next_back().cloned()
    }
}

mod scalar_terms {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Term {
        q: String,
        coeff: CycloNumber,
    }

    pub fn serialize<S: Serializer>(
        terms: &BTreeMap<Rational, CycloNumber>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        terms
            .iter()
            .map(|(q, c)| Term {
                q: q.to_string(),
                coeff: c.clone(),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<Rational, CycloNumber>, D::Error> {
        use serde::de::Error as _;
        Vec::<Term>::deserialize(d)?
            .into_iter()
            .map(|t| {
                let q = super::parse_rational(&t.q).map_err(D::Error::custom)?;
                Ok((q, t.coeff))
            })
            .collect()
    }
}

pub(crate) fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|_| format!("bad rational {s:?}"))
}

#[derive(Serialize, Deserialize)]
struct TailTerm {
    q: String,
    coeff: Vec<CycloNumber>,
}

#[derive(Serialize, Deserialize)]
struct TailWire {
    m: u64,
    terms: Vec<TailTerm>,
}

impl Serialize for Tail {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TailWire {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(q, c)| TailTerm {
                    q: q.to_string(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tail {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = TailWire::deserialize(d)?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| Ok((parse_rational(&t.q)?, t.coeff)))
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(D::Error::custom)?;
        Tail::new(wire.m, terms).map_err(|e| D::Error::custom(e.message))
    }
}

impl Default for Tail {
    fn default() -> Self {
        Tail::zero(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalField;
    use num_traits::One;

    fn rd(s: &str) -> RootDatum {
        RootDatum::build(&s.parse().unwrap()).unwrap()
    }

    fn cv(xs: &[i64]) -> Vec<CycloNumber> {
        xs.iter().map(|&x| CycloNumber::from_i64(x)).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn pairing_examples() {
        // in A1 the fundamental weight is α/2
        let a1 = rd("A1");
        let varpi = vec![CycloNumber::from_rational(q(1, 2))];
        let lam = Tail::monomial(1, q(1, 1), varpi).unwrap();
        let p = lam.pair_coroot(&a1, 0);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[&q(1, 1)], CycloNumber::one());
        assert_eq!(p.depth(), Some(q(1, 1)));
        assert!(Tail::zero(1).pair_coroot(&a1, 0).is_empty());
        assert_eq!(Tail::zero(1).pair_coroot(&a1, 0).depth(), None);

        // ϖ₁ = (2α₁ + α₂)/3 in A2
        let a2 = rd("A2");
        let w1 = vec![CycloNumber::from_rational(q(2, 3)), CycloNumber::from_rational(q(1, 3))];
        let lam = Tail::monomial(1, q(1, 1), w1).unwrap();
        assert!(lam.pair_coroot(&a2, 1).is_empty());
        assert_eq!(lam.pair_coroot(&a2, 0).depth(), Some(q(1, 1)));
    }

    #[test]
    fn depth_is_max_support() {
        let s = ScalarTail::new(
            2,
            [(q(0, 1), CycloNumber::one()), (q(3, 2), CycloNumber::from_i64(5))],
        )
        .unwrap();
        assert_eq!(s.depth(), Some(q(3, 2)));
    }

    #[test]
    fn arithmetic_examples() {
        let a1 = rd("A1");
        let lam = Tail::monomial(1, q(1, 1), cv(&[1])).unwrap();
        assert!(lam.add(&lam.neg()).unwrap().is_zero());
        assert_eq!(lam.weyl_act(&a1.simple_reflection(0)), lam.neg());
        let a = Tail::monomial(2, q(1, 2), cv(&[1])).unwrap();
        let b = Tail::monomial(3, q(1, 3), cv(&[1])).unwrap();
        assert_eq!(a.add(&b).unwrap().conductor(), 6);
    }

    #[test]
    fn exponent_validation() {
        assert!(Tail::monomial(1, q(-1, 1), cv(&[1])).is_err());
        assert!(Tail::monomial(2, q(1, 3), cv(&[1])).is_err());
        assert!(Tail::new(1, [(q(1, 1), cv(&[1])), (q(2, 1), cv(&[1, 2]))]).is_err());
        assert!(Tail::monomial(1, q(1, 1), cv(&[0])).unwrap().is_zero());
    }

    #[test]
    fn equivariance() {
        let a1 = rd("A1");
        let s = a1.simple_reflection(0);
        let half = Tail::monomial(2, q(1, 2), cv(&[1])).unwrap();
        assert!(half.is_equivariant(&s, 2));
        assert!(!half.is_equivariant(&a1.identity(), 2));
        let one = Tail::monomial(2, q(1, 1), cv(&[1])).unwrap();
        assert!(one.is_equivariant(&a1.identity(), 1));
        assert!(!one.is_equivariant(&s, 2));
    }

    #[test]
    fn json_round_trip() {
        let lam = Tail::new(2, [(q(3, 2), cv(&[1, -2])), (q(0, 1), cv(&[0, 1]))]).unwrap();
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(
            s,
            r#"{"m":2,"terms":[{"q":"0","coeff":["0","1"]},{"q":"3/2","coeff":["1","-2"]}]}"#
        );
        let back: Tail = serde_json::from_str(&s).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Tail>(r#"{"m":1,"terms":[{"q":"1/2","coeff":["1"]}]}"#).is_err());
    }
}
