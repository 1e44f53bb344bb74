//! The ladder of twisted Levis and depth breaks attached to a polar datum.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polar::PolarDatum;
use crate::rootdata::{RootDatum, RootSet};
use crate::tails::Tail;
use crate::Rational;

const MODULE: &str = "yuseq";

/// Breaks `r_0 < ⋯ < r_{d-1}`, levels `Ψ = Ψ⁽⁰⁾ ⊊ ⋯ ⊊ Ψ⁽ᵈ⁾ = Φ`, and the
/// components `λ⁽⁰⁾, …, λ⁽ᵈ⁾` of `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YuLadder {
    #[serde(serialize_with = "rational_strings")]
    pub breaks: Vec<Rational>,
    #[serde(serialize_with = "rational_strings")]
    pub half_depths: Vec<Rational>,
    pub levels: Vec<RootSet>,
    pub components: Vec<Tail>,
}

fn rational_strings<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

fn depth(rd: &RootDatum, lambda: &Tail, a: usize) -> Option<Rational> {
    lambda.pair_coroot(rd, a).depth()
}

/// Sorted distinct depths of `⟨α∨, λ⟩` over `α ∉ Ψ`.
pub fn breaks(rd: &RootDatum, d: &PolarDatum) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..rd.num_roots())
        .filter(|a| !d.levi().contains(a))
        .filter_map(|a| depth(rd, d.lambda(), a))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `Ψ⁽⁰⁾ = Ψ` and `Ψ⁽ʲ⁾ = Ψ ∪ {α : depth ≤ r_{j-1}}` for `1 ≤ j ≤ d`.
pub fn levi_ladder(rd: &RootDatum, d: &PolarDatum, breaks: &[Rational]) -> Result<Vec<RootSet>> {
    let mut levels = vec![d.levi().clone()];
    for r in breaks {
        let level: RootSet = (0..rd.num_roots())
            .filter(|&a| {
                d.levi().contains(&a) || depth(rd, d.lambda(), a).is_some_and(|x| x <= *r)
            })
            .collect();
        levels.push(level);
    }
    for level in &levels {
        if !rd.is_q_closed(level) {
            return Err(Error::invariant(MODULE, format!("level {level:?} is not Q-closed")));
        }
        if !rd.is_w_stable(level, d.torus().w()) {
            return Err(Error::invariant(MODULE, format!("level {level:?} is not w-stable")));
        }
    }
    if levels.last() != Some(&rd.all_roots()) {
        return Err(Error::invariant(MODULE, "top level is not the whole root system"));
    }
    Ok(levels)
}

/// Splits `λ` into the bands `[0, r_0]`, `(r_{j-1}, r_j]` and `(r_{d-1}, ∞)`.
pub fn decompose_lambda(d: &PolarDatum, breaks: &[Rational]) -> Vec<Tail> {
    let lambda = d.lambda();
    let n = breaks.len();
    if n == 0 {
        return vec![lambda.clone()];
    }
    (0..=n)
        .map(|j| {
            lambda.restrict(|q| {
                let above = j == 0 || *q > breaks[j - 1];
                let below = j == n || *q <= breaks[j];
                above && below
            })
        })
        .collect()
}

/// Builds the ladder and checks reassembly, strictness and the centralizer
/// identity `Ψ⁽ʲ⁾ = {α : ⟨α∨, λ⁽ʲ'⁾⟩ = 0 for all j' ≥ j}`.
pub fn yu_ladder(rd: &RootDatum, d: &PolarDatum) -> Result<YuLadder> {
    let breaks = breaks(rd, d);
    let levels = levi_ladder(rd, d, &breaks)?;
    let components = decompose_lambda(d, &breaks);

    let mut sum = Tail::zero(d.lambda().conductor());
    for c in &components {
        sum = sum.add(c)?;
    }
    if sum.terms() != d.lambda().terms() {
        return Err(Error::invariant(MODULE, "components do not reassemble to λ"));
    }
    if levels.windows(2).any(|w| !(w[0].is_subset(&w[1]) && w[0].len() < w[1].len())) {
        return Err(Error::invariant(MODULE, "levels are not strictly increasing"));
    }
    for (j, level) in levels.iter().enumerate() {
        if centralizer(rd, &components[j..]) != *level {
            return Err(Error::invariant(
                MODULE,
                format!("centralizer identity fails at level {j}"),
            ));
        }
    }
    let half_depths = breaks
        .iter()
        .map(|r| r / Rational::from_integer(2.into()))
        .collect();
    Ok(YuLadder {
        breaks,
        half_depths,
        levels,
        components,
    })
}

/// Roots whose coroots annihilate every tail in `parts`.
pub fn centralizer(rd: &RootDatum, parts: &[Tail]) -> RootSet {
    (0..rd.num_roots())
        .filter(|&a| parts.iter().all(|t| t.pair_coroot(rd, a).is_empty()))
        .collect()
}
