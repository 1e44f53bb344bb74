//! Tame maximal tori presented by finite-order Weyl elements.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::{RootDatum, WeylElement};
use crate::CycloNumber;

const MODULE: &str = "tori";

/// A torus class `(w, m)` with `w^m = 1` and the eigenspace decomposition
/// `𝔱₀* = ⊕_i 𝔱₀*(i)`, where `w` acts on `𝔱₀*(i)` by `ζ_m^i`.
#[derive(Clone, Debug)]
pub struct TorusClass {
    m: u64,
    w: WeylElement,
    eigenspaces: Vec<Vec<Vec<CycloNumber>>>,
}

impl TorusClass {
    pub fn new(rd: &RootDatum, w: WeylElement, m: u64) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid(MODULE, "period must be at least 1"));
        }
        if !rd.power(&w, m).is_identity() {
            return Err(Error::invalid(MODULE, format!("w^{m} is not the identity")));
        }
        let n = rd.rank();
        let wm: Vec<Vec<CycloNumber>> = w
            .matrix()
            .iter()
            .map(|row| row.iter().map(|&x| CycloNumber::from_i64(x)).collect())
            .collect();
        let eigenspaces: Vec<Vec<Vec<CycloNumber>>> = (0..m)
            .map(|i| {
                let z = CycloNumber::root_of_unity(m, i as i64).expect("m ≥ 1");
                let mut a = Matrix::from_rows(wm.clone(), n);
                for k in 0..n {
                    a[(k, k)] = &a[(k, k)] - &z;
                }
                a.nullspace()
            })
            .collect();
        let total: usize = eigenspaces.iter().map(Vec::len).sum();
        if total != n {
            return Err(Error::invariant(
                MODULE,
                format!("eigenspace dimensions sum to {total}, rank is {n}"),
            ));
        }
        Ok(TorusClass { m, w, eigenspaces })
    }

    /// The split torus `(1, 1)`.
    pub fn split(rd: &RootDatum) -> Self {
        Self::new(rd, rd.identity(), 1).expect("identity has period 1")
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn w(&self) -> &WeylElement {
        &self.w
    }

    /// Basis of `𝔱₀*(i mod m)`.
    pub fn eigenspace(&self, i: i64) -> &[Vec<CycloNumber>] {
        &self.eigenspaces[i.rem_euclid(self.m as i64) as usize]
    }

    pub fn eigenspace_dims(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(Vec::len).collect()
    }

    pub fn is_elliptic(&self) -> bool {
        self.eigenspaces[0].is_empty()
    }

    /// Some vector of `𝔱₀*(i)` on which no coroot vanishes exists.
    pub fn has_regular_vector(&self, rd: &RootDatum, i: i64) -> bool {
        let basis = self.eigenspace(i);
        (0..rd.num_positive())
            .all(|a| basis.iter().any(|b| !rd.pair_covector(a, b).is_zero()))
    }

    pub fn is_springer_regular(&self, rd: &RootDatum) -> bool {
        self.has_regular_vector(rd, 1)
    }

    /// The first of `v(s) = b₀ + s·b₁ + s²·b₂ + ⋯`, `s = 0, 1, 2, …`, that
    /// avoids every coroot hyperplane, where `b_k` is the eigenspace basis.
    pub fn regular_vector(&self, rd: &RootDatum, i: i64) -> Option<Vec<CycloNumber>> {
        if !self.has_regular_vector(rd, i) {
            return None;
        }
        let basis = self.eigenspace(i);
        // each coroot restricts to a nonzero polynomial in s of degree < dim
        let bound = rd.num_positive() * basis.len() + 1;
        (0..=bound as i64).find_map(|s| {
            let mut v = vec![CycloNumber::zero(); rd.rank()];
            let mut power = CycloNumber::from_i64(1);
            for b in basis {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(y * &power);
                }
                power = &power * &CycloNumber::from_i64(s);
            }
            (0..rd.num_positive())
                .all(|a| !rd.pair_covector(a, &v).is_zero())
                .then_some(v)
        })
    }

    pub fn to_spec(&self) -> TorusSpec {
        TorusSpec {
            m: self.m,
            w: self.w.matrix().to_vec(),
        }
    }
}

/// Wire form `{"m": 3, "w": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSpec {
    pub m: u64,
    pub w: Vec<Vec<i64>>,
}

impl TorusSpec {
    pub fn build(&self, rd: &RootDatum) -> Result<TorusClass> {
        let w = rd.weyl_from_matrix(self.w.clone())?;
        TorusClass::new(rd, w, self.m)
    }
}

impl Serialize for TorusClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

/// One torus class per conjugacy class of `W`, with `m` the exact order.
pub fn list_torus_classes(rd: &RootDatum) -> Result<Vec<TorusClass>> {
    let group = rd.weyl_elements()?;
    rd.conjugacy_classes()?
        .into_iter()
        .map(|class| {
            let w = group[class[0]].clone();
            let m = rd.order(&w);
            TorusClass::new(rd, w, m)
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularNumbers {
    pub all: BTreeSet<u64>,
    pub elliptic: BTreeSet<u64>,
}

pub fn regular_numbers(rd: &RootDatum) -> Result<RegularNumbers> {
    let mut out = RegularNumbers::default();
    for tc in list_torus_classes(rd)? {
        if tc.is_springer_regular(rd) {
            out.all.insert(tc.m);
            if tc.is_elliptic() {
                out.elliptic.insert(tc.m);
            }
        }
    }
    Ok(out)
}

/// First Springer-regular class of exact order `m`.
pub fn regular_class_of_order(rd: &RootDatum, m: u64) -> Result<Option<TorusClass>> {
    Ok(list_torus_classes(rd)?
        .into_iter()
        .find(|tc| tc.m == m && tc.is_springer_regular(rd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    fn rd(s: &str) -> RootDatum {
        RootDatum::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn eigenspace_examples() {
        let a1 = rd("A1");
        let tc = TorusClass::new(&a1, a1.simple_reflection(0), 2).unwrap();
        assert_eq!(tc.eigenspace_dims(), vec![0, 1]);
        assert!(tc.is_springer_regular(&a1));
        let split = TorusClass::split(&a1);
        assert_eq!(split.eigenspace_dims(), vec![1]);
        assert!(split.is_springer_regular(&a1));

        let a2 = rd("A2");
        let cox = TorusClass::new(&a2, a2.coxeter_element(), 3).unwrap();
        assert_eq!(cox.eigenspace_dims(), vec![0, 1, 1]);
        let z3 = CycloNumber::root_of_unity(3, 1).unwrap();
        for v in cox.eigenspace(1) {
            let wv = cox.w().act_covector(v);
            assert!(wv.iter().zip(v).all(|(a, b)| *a == b * &z3));
        }
    }

    #[test]
    fn period_must_kill_w() {
        let a2 = rd("A2");
        let err = TorusClass::new(&a2, a2.coxeter_element(), 2).unwrap_err();
        assert_eq!(err.kind, ErrorKind::InvalidArgument);
        // the stored period may be a multiple of the order
        let tc = TorusClass::new(&a2, a2.simple_reflection(0), 4).unwrap();
        assert_eq!(tc.eigenspace_dims(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn class_counts() {
        assert_eq!(list_torus_classes(&rd("A1")).unwrap().len(), 2);
        assert_eq!(list_torus_classes(&rd("A2")).unwrap().len(), 3);
        assert_eq!(list_torus_classes(&rd("B2")).unwrap().len(), 5);
    }

    #[test]
    fn regular_number_examples() {
        let r = regular_numbers(&rd("A1")).unwrap();
        assert_eq!(r.all, [1, 2].into());
        assert_eq!(r.elliptic, [2].into());
        let r = regular_numbers(&rd("A2")).unwrap();
        assert_eq!(r.all, [1, 2, 3].into());
        assert!(!r.all.contains(&5));
        assert!(regular_numbers(&rd("G2")).unwrap().all.contains(&6));
    }

    #[test]
    fn regular_vectors_avoid_hyperplanes() {
        let a2 = rd("A2");
        let cox = TorusClass::new(&a2, a2.coxeter_element(), 3).unwrap();
        let v = cox.regular_vector(&a2, 1).unwrap();
        assert!((0..a2.num_roots()).all(|a| !a2.pair_covector(a, &v).is_zero()));
        assert!(cox.regular_vector(&a2, 0).is_none());
    }

    #[test]
    fn spec_round_trip() {
        let a2 = rd("A2");
        let cox = TorusClass::new(&a2, a2.coxeter_element(), 3).unwrap();
        let json = serde_json::to_string(&cox).unwrap();
        let spec: TorusSpec = serde_json::from_str(&json).unwrap();
        let back = spec.build(&a2).unwrap();
        assert_eq!(back.w(), cox.w());
    }
}
