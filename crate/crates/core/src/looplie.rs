//! Loop algebras of `sl_n` in the matrix realization, Moy-Prasad gradings at
//! rational points `x` of the standard apartment, and the level decomposition
//! `𝔤 = ⊕ V⁽ʲ⁾` attached to a ladder.
//!
//! Elements have integral `t`-exponents. A point `x` is an ambient diagonal
//! coweight `(x_1, …, x_n)`; the generator `E_ab t^k` has degree
//! `x_a − x_b + k` and `h_l t^k = (E_ll − E_{l+1,l+1}) t^k` has degree `k`.
//! A functional `λ = Λ dt/t` pairs with `X` by `Σ_{p+q=0} tr(Λ_p X_q)`.

mod lattice;
mod regular;

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, ErrorKind, Result};
use crate::linalg::Matrix;
use crate::polar::PolarDatum;
use crate::rootdata::{RootDatum, RootSet};
use crate::tails::Tail;
use crate::yuseq::YuLadder;
use crate::{CycloNumber, Rational};

pub use lattice::{
    bracket_closure, build_j_lattice, lagrangian, moveability_check, psi_lambda_check, symplectic_form,
    ClosureReport, JLattice, LevelLattice, MoveabilityReport, RankRow, SymplecticForm, Variant,
};
pub use regular::{eigen_regular_check, EigenRegular};

const MODULE: &str = "looplie";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// `E_ab` with `a ≠ b`.
    Root(usize, usize),
    /// `h_l = E_ll − E_{l+1,l+1}`.
    Torus(usize),
}

/// A graded basis element `E · t^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub kind: GenKind,
    pub k: i64,
}

impl Serialize for Gen {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::fmt::Display for Gen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            GenKind::Root(a, b) => write!(f, "E{}{}*t^{}", a + 1, b + 1, self.k),
            GenKind::Torus(l) => write!(f, "h{}*t^{}", l + 1, self.k),
        }
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn rational_strings<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

/// The grading attached to a rational point `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    n: usize,
    #[serde(serialize_with = "rational_strings")]
    x: Vec<Rational>,
    #[serde(skip)]
    den: u64,
}

impl Grading {
    pub fn new(x: Vec<Rational>) -> Result<Self> {
        let n = x.len();
        if n < 2 {
            return Err(Error::invalid(MODULE, "need at least a 2x2 realization"));
        }
        let mut den = num_bigint::BigInt::from(1);
        for a in &x {
            for b in &x {
                den = den.lcm((a - b).denom());
            }
        }
        let den = u64::try_from(den).map_err(|_| Error::invalid(MODULE, "point denominator too large"))?;
        Ok(Grading { n, x, den })
    }

    /// `x = 0`.
    pub fn hyperspecial(n: usize) -> Result<Self> {
        Self::new(vec![Rational::zero(); n])
    }

    /// `x = ρ∨/m`, so each simple root has degree `1/m`.
    pub fn rho_over(n: usize, m: u64) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid(MODULE, "m must be at least 1"));
        }
        let x = (0..n)
            .map(|a| Rational::new((n as i64 - 1 - 2 * a as i64).into(), (2 * m).into()))
            .collect();
        Self::new(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    /// Spacing of the degree grid.
    pub fn step(&self) -> Rational {
        Rational::new(1.into(), self.den.into())
    }

    pub fn degree(&self, g: &Gen) -> Rational {
        match g.kind {
            GenKind::Root(a, b) => &self.x[a] - &self.x[b] + rat(g.k),
            GenKind::Torus(_) => rat(g.k),
        }
    }

    /// Generators of degree exactly `deg`: root vectors by `(a, b)`, then the
    /// torus.
    pub fn piece(&self, deg: &Rational) -> Vec<Gen> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b {
                    continue;
                }
                let k = deg - (&self.x[a] - &self.x[b]);
                if k.is_integer() {
                    out.push(Gen {
                        kind: GenKind::Root(a, b),
                        k: i64::try_from(k.to_integer()).expect("small exponent"),
                    });
                }
            }
        }
        if deg.is_integer() {
            let k = i64::try_from(deg.to_integer()).expect("small exponent");
            out.extend((0..self.n - 1).map(|l| Gen {
                kind: GenKind::Torus(l),
                k,
            }));
        }
        out
    }

    /// Grid points in `[lo, hi]`.
    pub fn degrees(&self, lo: &Rational, hi: &Rational) -> Vec<Rational> {
        let den = rat(self.den as i64);
        let start = (lo * &den).ceil().to_integer();
        let end = (hi * &den).floor().to_integer();
        let (start, end) = (
            i64::try_from(start).expect("small"),
            i64::try_from(end).expect("small"),
        );
        (start..=end)
            .map(|e| Rational::new(e.into(), self.den.into()))
            .collect()
    }
}

/// `mp_graded_piece`: the generators of `𝔤_{x, deg}` for `sl_n`.
pub fn mp_graded_piece(n: usize, x: &[Rational], deg: &Rational) -> Result<Vec<Gen>> {
    if x.len() != n {
        return Err(Error::invalid(MODULE, format!("point needs {n} coordinates")));
    }
    Ok(Grading::new(x.to_vec())?.piece(deg))
}

/// A sparse loop matrix `Σ_k M_k t^k`, keyed by `(k, row, col)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopMatrix {
    n: usize,
    entries: BTreeMap<(i64, usize, usize), CycloNumber>,
}

impl LoopMatrix {
    pub fn zero(n: usize) -> Self {
        LoopMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<(i64, usize, usize), CycloNumber> {
        &self.entries
    }

    fn add_entry(&mut self, key: (i64, usize, usize), c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(key).or_insert_with(CycloNumber::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn entry(n: usize, k: i64, i: usize, j: usize, c: CycloNumber) -> Self {
        let mut m = Self::zero(n);
        m.add_entry((k, i, j), c);
        m
    }

    pub fn from_gen(n: usize, g: &Gen, c: &CycloNumber) -> Self {
        let mut m = Self::zero(n);
        match g.kind {
            GenKind::Root(a, b) => m.add_entry((g.k, a, b), c.clone()),
            GenKind::Torus(l) => {
                m.add_entry((g.k, l, l), c.clone());
                m.add_entry((g.k, l + 1, l + 1), -c.clone());
            }
        }
        m
    }

    /// `Σ_i c_i g_i`.
    pub fn from_coords(n: usize, piece: &[Gen], coords: &[CycloNumber]) -> Self {
        let mut m = Self::zero(n);
        for (g, c) in piece.iter().zip(coords) {
            if !c.is_zero() {
                m = m.add(&Self::from_gen(n, g, c));
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.entries {
            out.add_entry(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &CycloNumber) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.entries {
            out.add_entry(*k, c * s);
        }
        out
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (&(k, i, j), x) in &self.entries {
            for (&(l, p, q), y) in &other.entries {
                if j == p {
                    out.add_entry((k + l, i, q), x * y);
                }
                if q == i {
                    out.add_entry((k + l, p, j), -(x * y));
                }
            }
        }
        out
    }

    /// `⟨self · dt/t, X⟩ = Σ_{p+q=0} tr(self_p X_q)`.
    pub fn pair(&self, x: &Self) -> CycloNumber {
        let mut acc = CycloNumber::zero();
        for (&(p, i, j), a) in &self.entries {
            if let Some(b) = x.entries.get(&(-p, j, i)) {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// Coordinates in the generators of `piece`; fails if `self` has
    /// components outside it.
    pub fn coords(&self, piece: &[Gen]) -> Result<Vec<CycloNumber>> {
        let mut out = vec![CycloNumber::zero(); piece.len()];
        let mut rest = self.clone();
        for (idx, g) in piece.iter().enumerate() {
            match g.kind {
                GenKind::Root(a, b) => {
                    if let Some(c) = self.entries.get(&(g.k, a, b)) {
                        out[idx] = c.clone();
                        rest.entries.remove(&(g.k, a, b));
                    }
                }
                GenKind::Torus(l) => {
                    // coefficient of h_l is d_1 + ⋯ + d_l
                    let mut acc = CycloNumber::zero();
                    for i in 0..=l {
                        if let Some(c) = self.entries.get(&(g.k, i, i)) {
                            acc = &acc + c;
                        }
                    }
                    out[idx] = acc;
                }
            }
        }
        let diag_ks: Vec<i64> = piece
            .iter()
            .filter(|g| matches!(g.kind, GenKind::Torus(_)))
            .map(|g| g.k)
            .collect();
        for k in diag_ks {
            let mut trace = CycloNumber::zero();
            for i in 0..self.n {
                if let Some(c) = rest.entries.remove(&(k, i, i)) {
                    trace = &trace + &c;
                }
            }
            if !trace.is_zero() {
                return Err(Error::invariant(MODULE, "diagonal part is not trace-free"));
            }
        }
        if !rest.entries.is_empty() {
            return Err(Error::invariant(MODULE, "element is not in the requested graded piece"));
        }
        Ok(out)
    }

    /// The split realization of a tail: the term `c · t^{-q} dt/t` becomes
    /// `diag(μ) t^{-q}` with `μ` the trace-free ambient form of `c`.
    pub fn from_tail(rd: &RootDatum, tail: &Tail) -> Result<Self> {
        let n = rd
            .type_a_size()
            .ok_or_else(|| Error::new(ErrorKind::UnsupportedFeature, MODULE, "matrix realization is type A only"))?;
        let mut m = Self::zero(n);
        for (q, c) in tail.terms() {
            if !q.is_integer() {
                return Err(Error::invalid(MODULE, "split realization needs integral exponents"));
            }
            let k = -i64::try_from(q.to_integer()).expect("small exponent");
            for (i, mu) in rd.covector_to_ambient(c)?.into_iter().enumerate() {
                m.add_entry((k, i, i), mu);
            }
        }
        Ok(m)
    }
}

/// How `𝔤_δ` splits into the levels `V⁽ʲ⁾_δ`.
#[derive(Clone, Debug)]
pub enum LevelSpaces {
    /// Root vectors sit in the level of their root, the torus in level 0.
    Split(HashMap<(usize, usize), usize>),
    /// `V⁽⁰⁾ = ker ad Λ` and `V⁽¹⁾ = im ad Λ` for homogeneous `Λ` of degree
    /// `−1/m`.
    Homogeneous { m: u64 },
}

/// Everything the lattice constructions need: the grading, `λ = Λ dt/t`, its
/// band components, the breaks and the level decomposition.
#[derive(Clone, Debug)]
pub struct GradedLadder {
    grading: Grading,
    lambda: LoopMatrix,
    components: Vec<LoopMatrix>,
    breaks: Vec<Rational>,
    spaces: LevelSpaces,
    /// Ambient pair of each root index; empty outside the split realization.
    roots: Vec<(usize, usize)>,
}

/// `vj_split`: root sets of `V⁽⁰⁾, …, V⁽ᵈ⁾`; the torus belongs to `V⁽⁰⁾`.
pub fn vj_split(ladder: &YuLadder) -> Vec<RootSet> {
    let mut out: Vec<RootSet> = vec![ladder.levels[0].clone()];
    for w in ladder.levels.windows(2) {
        out.push(w[1].difference(&w[0]).copied().collect());
    }
    out
}

impl GradedLadder {
    /// The ladder of a split-torus datum in type A at the point `x`.
    pub fn split(rd: &RootDatum, d: &PolarDatum, ladder: &YuLadder, grading: Grading) -> Result<Self> {
        if !d.torus().w().is_identity() {
            return Err(Error::new(
                ErrorKind::UnsupportedFeature,
                MODULE,
                "split realization needs a split-torus datum",
            ));
        }
        Self::split_forced(rd, d.lambda(), &ladder.breaks, &ladder.levels, &ladder.components, grading)
    }

    /// As [`Self::split`] but with caller-chosen breaks and levels, which
    /// need not come from a polar datum.
    pub fn split_forced(
        rd: &RootDatum,
        lambda: &Tail,
        breaks: &[Rational],
        levels: &[RootSet],
        components: &[Tail],
        grading: Grading,
    ) -> Result<Self> {
        let n = rd
            .type_a_size()
            .ok_or_else(|| Error::new(ErrorKind::UnsupportedFeature, MODULE, "matrix realization is type A only"))?;
        if grading.n() != n {
            return Err(Error::invalid(MODULE, format!("point needs {n} coordinates")));
        }
        if levels.len() != breaks.len() + 1 || components.len() != levels.len() {
            return Err(Error::invalid(MODULE, "ladder shape mismatch"));
        }
        let mut level_of = HashMap::new();
        let mut roots = Vec::with_capacity(rd.num_roots());
        for root in 0..rd.num_roots() {
            let j = levels
                .iter()
                .position(|l| l.contains(&root))
                .ok_or_else(|| Error::invalid(MODULE, "levels do not cover the roots"))?;
            let pair = rd.type_a_pair(root).expect("type A");
            level_of.insert(pair, j);
            roots.push(pair);
        }
        Ok(GradedLadder {
            grading,
            lambda: LoopMatrix::from_tail(rd, lambda)?,
            components: components
                .iter()
                .map(|c| LoopMatrix::from_tail(rd, c))
                .collect::<Result<_>>()?,
            breaks: breaks.to_vec(),
            spaces: LevelSpaces::Split(level_of),
            roots,
        })
    }

    /// The epipelagic datum of `sl_n` at `m = n`: `Λ = Σ f_i + E_1n t^{-1}`
    /// at `x = ρ∨/n`, with the single break `1/n`.
    pub fn epipelagic(n: usize) -> Result<Self> {
        let m = n as u64;
        let grading = Grading::rho_over(n, m)?;
        let one = CycloNumber::from_i64(1);
        let mut lambda = LoopMatrix::entry(n, -1, 0, n - 1, one.clone());
        for i in 0..n - 1 {
            lambda = lambda.add(&LoopMatrix::entry(n, 0, i + 1, i, one.clone()));
        }
        let out = GradedLadder {
            grading,
            components: vec![lambda.clone(), LoopMatrix::zero(n)],
            lambda,
            breaks: vec![Rational::new(1.into(), m.into())],
            spaces: LevelSpaces::Homogeneous { m },
            roots: Vec::new(),
        };
        if !out.level_basis(0, &Rational::zero())?.is_empty() {
            return Err(Error::invariant(MODULE, "centralizer meets degree zero"));
        }
        Ok(out)
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn lambda(&self) -> &LoopMatrix {
        &self.lambda
    }

    pub fn component(&self, j: usize) -> &LoopMatrix {
        &self.components[j]
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn num_levels(&self) -> usize {
        self.breaks.len() + 1
    }

    /// `s_{j-1} = r_{j-1}/2` for `j ≥ 1`.
    pub fn half_depth(&self, j: usize) -> Rational {
        &self.breaks[j - 1] / rat(2)
    }

    pub fn max_depth(&self) -> Rational {
        self.breaks.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Default window `[0, max depth + 2]`.
    pub fn default_window(&self) -> (Rational, Rational) {
        (Rational::zero(), self.max_depth() + rat(2))
    }

    /// Matrix of `ad Λ : 𝔤_δ → 𝔤_{δ-1/m}` in generator coordinates.
    fn ad_lambda(&self, from: &Rational, m: u64) -> Result<Matrix<CycloNumber>> {
        let src = self.grading.piece(from);
        let dst_deg = from - Rational::new(1.into(), m.into());
        let dst = self.grading.piece(&dst_deg);
        let one = CycloNumber::from_i64(1);
        let mut cols = Vec::with_capacity(src.len());
        for g in &src {
            let img = self.lambda.bracket(&LoopMatrix::from_gen(self.grading.n, g, &one));
            cols.push(img.coords(&dst)?);
        }
        let mut mat = Matrix::zeros(dst.len(), src.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, c) in col.into_iter().enumerate() {
                mat[(i, j)] = c;
            }
        }
        Ok(mat)
    }

    /// Basis of `V⁽ʲ⁾_δ` in the coordinates of `grading().piece(δ)`.
    pub fn level_basis(&self, j: usize, deg: &Rational) -> Result<Vec<Vec<CycloNumber>>> {
        let piece = self.grading.piece(deg);
        let unit = |i: usize| {
            let mut v = vec![CycloNumber::zero(); piece.len()];
            v[i] = CycloNumber::from_i64(1);
            v
        };
        match &self.spaces {
            LevelSpaces::Split(level_of) => Ok(piece
                .iter()
                .enumerate()
                .filter(|(_, g)| match g.kind {
                    GenKind::Root(a, b) => level_of[&(a, b)] == j,
                    GenKind::Torus(_) => j == 0,
                })
                .map(|(i, _)| unit(i))
                .collect()),
            LevelSpaces::Homogeneous { m } => match j {
                0 => Ok(self.ad_lambda(deg, *m)?.nullspace()),
                1 => {
                    let above = deg + Rational::new(1.into(), (*m).into());
                    let mut t = self.ad_lambda(&above, *m)?.transpose();
                    let rank = t.rref().len();
                    Ok((0..rank).map(|i| t.row(i).to_vec()).collect())
                }
                _ => Ok(Vec::new()),
            },
        }
    }

    /// Level of the root `E_ab` in the split realization.
    pub fn root_level(&self, a: usize, b: usize) -> Option<usize> {
        match &self.spaces {
            LevelSpaces::Split(level_of) => level_of.get(&(a, b)).copied(),
            LevelSpaces::Homogeneous { .. } => None,
        }
    }

    pub fn root_pairs(&self) -> &[(usize, usize)] {
        &self.roots
    }

    pub fn piece_element(&self, deg: &Rational, coords: &[CycloNumber]) -> LoopMatrix {
        LoopMatrix::from_coords(self.grading.n, &self.grading.piece(deg), coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalField;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn sl2_graded_pieces() {
        let g = Grading::rho_over(2, 2).unwrap();
        assert_eq!(g.x(), &[q(1, 4), q(-1, 4)]);
        let half = g.piece(&q(1, 2));
        assert_eq!(
            half,
            vec![
                Gen { kind: GenKind::Root(0, 1), k: 0 },
                Gen { kind: GenKind::Root(1, 0), k: 1 },
            ]
        );
        assert_eq!(g.piece(&q(0, 1)), vec![Gen { kind: GenKind::Torus(0), k: 0 }]);
        let flat = Grading::hyperspecial(2).unwrap();
        assert!(flat.piece(&q(1, 2)).is_empty());
        assert_eq!(g.step(), q(1, 2));
    }

    #[test]
    fn degrees_add_under_brackets() {
        let g = Grading::rho_over(3, 2).unwrap();
        let one = CycloNumber::from_i64(1);
        let degs = g.degrees(&q(-2, 1), &q(2, 1));
        for d1 in &degs {
            for d2 in &degs {
                for a in g.piece(d1) {
                    for b in g.piece(d2) {
                        let br = LoopMatrix::from_gen(3, &a, &one).bracket(&LoopMatrix::from_gen(3, &b, &one));
                        if !br.is_zero() {
                            assert!(br.coords(&g.piece(&(d1 + d2))).is_ok(), "{a} {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn residue_pairing() {
        // λ = h t^{-1} dt/t against h t: tr(h·h) = 2
        let one = CycloNumber::from_i64(1);
        let lam = LoopMatrix::from_gen(2, &Gen { kind: GenKind::Torus(0), k: -1 }, &one);
        let x = LoopMatrix::from_gen(2, &Gen { kind: GenKind::Torus(0), k: 1 }, &one);
        assert_eq!(lam.pair(&x), CycloNumber::from_i64(2));
        let y = LoopMatrix::from_gen(2, &Gen { kind: GenKind::Torus(0), k: 0 }, &one);
        assert!(lam.pair(&y).is_zero());
    }

    #[test]
    fn epipelagic_levels_split_each_piece() {
        for n in [2, 3] {
            let lad = GradedLadder::epipelagic(n).unwrap();
            for deg in lad.grading().degrees(&q(-1, 1), &q(2, 1)) {
                let total = lad.grading().piece(&deg).len();
                let v0 = lad.level_basis(0, &deg).unwrap().len();
                let v1 = lad.level_basis(1, &deg).unwrap().len();
                assert_eq!(v0 + v1, total, "n={n} deg={deg}");
            }
        }
    }
}
