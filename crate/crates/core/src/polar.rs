//! Polar data `(M, λ)`: classification of tails, stabilizers, conjugacy and
//! the sampled partition check.

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, RootSet, WeylElement};
use crate::tails::Tail;
use crate::tori::{list_torus_classes, TorusClass, TorusSpec};
use crate::{CycloNumber, Rational};

const MODULE: &str = "polar";

/// A torus class, a ℚ-closed `w`-stable root subset `Ψ` presenting the
/// twisted Levi `M`, and a tail central in `M` and regular off `Ψ`.
#[derive(Clone, Debug, Serialize)]
pub struct PolarDatum {
    torus: TorusClass,
    levi: RootSet,
    lambda: Tail,
}

/// Whether every coroot outside `psi` pairs nontrivially with `lambda`.
pub fn is_g_regular(rd: &RootDatum, lambda: &Tail, psi: &RootSet) -> bool {
    (0..rd.num_roots())
        .filter(|a| !psi.contains(a))
        .all(|a| lambda.pair_coroot(rd, a).depth().is_some())
}

fn vanishing_roots(rd: &RootDatum, lambda: &Tail) -> RootSet {
    (0..rd.num_roots())
        .filter(|&a| lambda.pair_coroot(rd, a).is_empty())
        .collect()
}

impl PolarDatum {
    /// Checks every invariant; violations are reported as `invalid-argument`.
    pub fn new(rd: &RootDatum, torus: TorusClass, levi: RootSet, lambda: Tail) -> Result<Self> {
        lambda.check_rank(rd.rank())?;
        if levi.iter().any(|&a| a >= rd.num_roots()) {
            return Err(Error::invalid(MODULE, "root index out of range"));
        }
        if !lambda.is_equivariant(torus.w(), torus.m()) {
            return Err(Error::invalid(
                MODULE,
                "tail is not equivariant for the torus class",
            ));
        }
        if !rd.is_q_closed(&levi) {
            return Err(Error::invalid(MODULE, "levi subset is not Q-closed"));
        }
        if !rd.is_w_stable(&levi, torus.w()) {
            return Err(Error::invalid(MODULE, "levi subset is not w-stable"));
        }
        if vanishing_roots(rd, &lambda) != levi {
            return Err(Error::invalid(
                MODULE,
                "tail must vanish exactly on the levi coroots",
            ));
        }
        Ok(PolarDatum {
            torus,
            levi,
            lambda,
        })
    }

    pub fn torus(&self) -> &TorusClass {
        &self.torus
    }

    pub fn levi(&self) -> &RootSet {
        &self.levi
    }

    pub fn lambda(&self) -> &Tail {
        &self.lambda
    }

    pub fn is_toral(&self) -> bool {
        self.levi.is_empty()
    }

    pub fn to_spec(&self) -> PolarSpec {
        PolarSpec {
            torus: self.torus.to_spec(),
            levi: self.levi.clone(),
            lambda: self.lambda.clone(),
        }
    }
}

/// Wire form of a polar datum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolarSpec {
    pub torus: TorusSpec,
    pub levi: RootSet,
    pub lambda: Tail,
}

impl PolarSpec {
    pub fn build(&self, rd: &RootDatum) -> Result<PolarDatum> {
        let torus = self.torus.build(rd)?;
        PolarDatum::new(rd, torus, self.levi.clone(), self.lambda.clone())
    }
}

/// The stratum containing `lambda`: `Ψ` is the set of roots whose coroot
/// pairs to zero with `lambda`.
pub fn classify(rd: &RootDatum, tc: &TorusClass, lambda: &Tail) -> Result<PolarDatum> {
    lambda.check_rank(rd.rank())?;
    if !lambda.is_equivariant(tc.w(), tc.m()) {
        return Err(Error::invalid(
            MODULE,
            "tail is not equivariant for the torus class",
        ));
    }
    let psi = vanishing_roots(rd, lambda);
    if !rd.is_q_closed(&psi) {
        return Err(Error::invariant(
            MODULE,
            format!("vanishing set {psi:?} is not Q-closed"),
        ));
    }
    if !rd.is_w_stable(&psi, tc.w()) {
        return Err(Error::invariant(
            MODULE,
            format!("vanishing set {psi:?} is not w-stable"),
        ));
    }
    PolarDatum::new(rd, tc.clone(), psi, lambda.clone())
        .map_err(|e| Error::invariant(MODULE, e.message))
}

/// `W_λ` as indices into [`RootDatum::weyl_elements`], with the positive
/// roots whose reflections it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub elements: Vec<usize>,
    pub reflections: Vec<usize>,
}

pub fn stabilizer(rd: &RootDatum, lambda: &Tail) -> Result<Stabilizer> {
    lambda.check_rank(rd.rank())?;
    let group = rd.weyl_elements()?;
    let elements: Vec<usize> = (0..group.len())
        .filter(|&i| lambda.weyl_act(&group[i]).terms() == lambda.terms())
        .collect();
    let reflections = (0..rd.num_positive())
        .filter(|&a| {
            let s = rd.reflection(a);
            lambda.weyl_act(&s).terms() == lambda.terms()
        })
        .collect();
    Ok(Stabilizer {
        elements,
        reflections,
    })
}

/// Whether some `u ∈ W` carries `(w₁, λ₁)` to `(w₂, λ₂)`:
/// `u w₁ u⁻¹ = w₂` and `u·λ₁ = λ₂`.
///
/// The comparison is between presentations; it is exact for toral data and
/// for data sharing a torus class.
pub fn conjugate_oracle(rd: &RootDatum, d1: &PolarDatum, d2: &PolarDatum) -> Result<bool> {
    let group = rd.weyl_elements()?;
    let l = d1.torus.m().lcm(&d2.torus.m());
    let lam1 = d1.lambda.lift_conductor(l)?;
    let lam2 = d2.lambda.lift_conductor(l)?;
    if lam1.terms().keys().ne(lam2.terms().keys()) {
        return Ok(false);
    }
    Ok(group.iter().any(|u| {
        let uinv = rd.inverse(u);
        let conj = rd.compose(&rd.compose(u, d1.torus.w()), &uinv);
        conj.root_permutation() == d2.torus.w().root_permutation()
            && lam1.weyl_act(u).terms() == lam2.terms()
    }))
}

/// A Springer-regular class of order `m` and a regular vector `v` of its
/// `ζ_m`-eigenspace, giving `λ = v · t^{-1/m} · dt/t`.
pub fn epipelagic_datum(rd: &RootDatum, m: u64) -> Result<PolarDatum> {
    homogeneous_datum(rd, m, 1)
}

/// As [`epipelagic_datum`] with `λ = v · t^{-i/m} · dt/t`, `v ∈ 𝔱₀*(i)`.
pub fn homogeneous_datum(rd: &RootDatum, m: u64, i: u64) -> Result<PolarDatum> {
    if m < 1 || i < 1 {
        return Err(Error::invalid(MODULE, "need m ≥ 1 and i ≥ 1"));
    }
    if i.gcd(&m) != 1 {
        return Err(Error::invalid(MODULE, format!("gcd({i}, {m}) ≠ 1")));
    }
    let tc = list_torus_classes(rd)?
        .into_iter()
        .find(|tc| tc.m() == m && tc.is_springer_regular(rd) && tc.has_regular_vector(rd, i as i64))
        .ok_or_else(|| {
            Error::invalid(MODULE, format!("{m} is not a regular number for {}", rd.cartan_type()))
        })?;
    let v = tc
        .regular_vector(rd, i as i64)
        .ok_or_else(|| Error::invariant(MODULE, "regular eigenspace without a regular vector"))?;
    let lambda = Tail::monomial(m, Rational::new(i.into(), m.into()), v)?;
    let d = classify(rd, &tc, &lambda)?;
    if !d.is_toral() {
        return Err(Error::invariant(MODULE, "homogeneous datum is not toral"));
    }
    Ok(d)
}

/// Knobs for the random tail sampler.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    /// Exponents are drawn from `{0, 1/m, …, max_depth}`.
    pub max_depth: u64,
    pub max_terms: usize,
    /// Eigenspace coordinates are drawn from `[-coeff_range, coeff_range]`.
    pub coeff_range: i64,
    pub zero_only: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            samples: 200,
            seed: 0,
            max_depth: 2,
            max_terms: 3,
            coeff_range: 2,
            zero_only: false,
        }
    }
}

/// A random equivariant tail on `tc`: every term sits in the eigenspace
/// dictated by its exponent.
pub fn sample_tail(rd: &RootDatum, tc: &TorusClass, cfg: &SamplerConfig, rng: &mut impl Rng) -> Tail {
    if cfg.zero_only {
        return Tail::zero(tc.m());
    }
    let m = tc.m();
    let nterms = rng.gen_range(0..=cfg.max_terms);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let j = rng.gen_range(0..=cfg.max_depth * m);
        let basis = tc.eigenspace(j as i64);
        if basis.is_empty() {
            continue;
        }
        let mut c = vec![CycloNumber::zero(); rd.rank()];
        for b in basis {
            let k = rng.gen_range(-cfg.coeff_range..=cfg.coeff_range);
            if k == 0 {
                continue;
            }
            let k = CycloNumber::from_i64(k);
            for (x, y) in c.iter_mut().zip(b) {
                *x = &*x + &(y * &k);
            }
        }
        terms.push((Rational::new(j.into(), m.into()), c));
    }
    Tail::new(m, terms).expect("sampled exponents fit the conductor")
}

/// Deterministic draw for sample `index`: a torus class from `tori`, a tail
/// on it, a Weyl element for translation and a second independent tail.
pub struct Sample {
    pub torus: usize,
    pub lambda: Tail,
    pub translate: usize,
    pub other_torus: usize,
    pub other: Tail,
}

pub fn draw_sample(rd: &RootDatum, tori: &[TorusClass], cfg: &SamplerConfig, index: u64) -> Result<Sample> {
    let order = rd.weyl_elements()?.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index));
    let torus = rng.gen_range(0..tori.len());
    let lambda = sample_tail(rd, &tori[torus], cfg, &mut rng);
    let translate = rng.gen_range(0..order);
    let other_torus = rng.gen_range(0..tori.len());
    let other = sample_tail(rd, &tori[other_torus], cfg, &mut rng);
    Ok(Sample {
        torus,
        lambda,
        translate,
        other_torus,
        other,
    })
}

/// Multiset `{depth⟨α∨, λ⟩}` over all roots, as a sorted list.
pub fn depth_multiset(rd: &RootDatum, lambda: &Tail) -> Vec<Option<Rational>> {
    let mut v: Vec<Option<Rational>> = (0..rd.num_roots())
        .map(|a| lambda.pair_coroot(rd, a).depth())
        .collect();
    v.sort();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub sample: u64,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCounts {
    #[serde(rename = "G0")]
    pub g_zero: usize,
    pub toral: usize,
    pub intermediate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub samples: usize,
    pub seed: u64,
    pub tori: Vec<TorusSpec>,
    pub strata: StratumCounts,
    /// How many sampled pairs had distinct depth multisets.
    pub separated_pairs: usize,
    pub violations: Vec<Violation>,
}

fn check_one(rd: &RootDatum, tori: &[TorusClass], cfg: &SamplerConfig, index: u64) -> (Option<usize>, bool, Vec<Violation>) {
    let mut bad = Vec::new();
    let mut flag = |check: &str, detail: String| {
        bad.push(Violation {
            sample: index,
            check: check.to_string(),
            detail,
        })
    };
    let s = match draw_sample(rd, tori, cfg, index) {
        Ok(s) => s,
        Err(e) => {
            flag("sample", e.to_string());
            return (None, false, bad);
        }
    };
    let tc = &tori[s.torus];
    let d = match classify(rd, tc, &s.lambda) {
        Ok(d) => d,
        Err(e) => {
            flag("total", e.to_string());
            return (None, false, bad);
        }
    };
    let stratum = if d.levi().len() == rd.num_roots() {
        0
    } else if d.is_toral() {
        1
    } else {
        2
    };

    match classify(rd, tc, d.lambda()) {
        Ok(again) if again.levi() == d.levi() && again.lambda() == d.lambda() => {}
        Ok(again) => flag("idempotent", format!("{:?} became {:?}", d.levi(), again.levi())),
        Err(e) => flag("idempotent", e.to_string()),
    }

    let group = match rd.weyl_elements() {
        Ok(g) => g,
        Err(e) => {
            flag("weyl", e.to_string());
            return (Some(stratum), false, bad);
        }
    };
    let u: &WeylElement = &group[s.translate];
    let w2 = rd.compose(&rd.compose(u, tc.w()), &rd.inverse(u));
    match TorusClass::new(rd, w2, tc.m()).and_then(|tc2| classify(rd, &tc2, &s.lambda.weyl_act(u))) {
        Ok(d2) => {
            let moved: RootSet = d.levi().iter().map(|&a| u.apply_root(a)).collect();
            if moved != *d2.levi() {
                flag("translate-levi", format!("{:?} vs {:?}", moved, d2.levi()));
            }
            match conjugate_oracle(rd, &d, &d2) {
                Ok(true) => {}
                Ok(false) => flag("translate", "W-translate not recognised as conjugate".into()),
                Err(e) => flag("translate", e.to_string()),
            }
        }
        Err(e) => flag("translate", e.to_string()),
    }

    let mut separated = false;
    if depth_multiset(rd, &s.lambda) != depth_multiset(rd, &s.other) {
        separated = true;
        match classify(rd, &tori[s.other_torus], &s.other) {
            Ok(d3) => match conjugate_oracle(rd, &d, &d3) {
                Ok(false) => {}
                Ok(true) => flag("disjoint", "data with different depths judged conjugate".into()),
                Err(e) => flag("disjoint", e.to_string()),
            },
            Err(e) => flag("total", e.to_string()),
        }
    }
    (Some(stratum), separated, bad)
}

/// Runs the sampled partition checks over `tori` (all classes when `None`).
pub fn partition_check(
    rd: &RootDatum,
    tori: Option<Vec<TorusClass>>,
    cfg: &SamplerConfig,
) -> Result<PartitionReport> {
    let tori = match tori {
        Some(t) if !t.is_empty() => t,
        Some(_) => return Err(Error::invalid(MODULE, "no torus classes to sample from")),
        None => list_torus_classes(rd)?,
    };
    for tc in &tori {
        if tc.w().matrix().len() != rd.rank() {
            return Err(Error::invalid(MODULE, "torus class from another root datum"));
        }
    }
    rd.weyl_elements()?;
    let results: Vec<_> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| check_one(rd, &tori, cfg, i))
        .collect();
    let mut strata = StratumCounts::default();
    let mut violations = Vec::new();
    let mut separated_pairs = 0;
    for (outcome, separated, bad) in results {
        match outcome {
            Some(0) => strata.g_zero += 1,
            Some(1) => strata.toral += 1,
            Some(_) => strata.intermediate += 1,
            None => {}
        }
        separated_pairs += usize::from(separated);
        violations.extend(bad);
    }
    Ok(PartitionReport {
        samples: cfg.samples,
        seed: cfg.seed,
        tori: tori.iter().map(TorusClass::to_spec).collect(),
        strata,
        separated_pairs,
        violations,
    })
}
