//! Symplectic forms on the half-depth pieces, Lagrangians, the lattice 𝔍,
//! the character `ψ_λ` and the tangent-level moveability ranks.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{GradedLadder, Gen, LoopMatrix, MODULE};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Field;
use crate::{CycloNumber, Rational};

type Vector = Vec<CycloNumber>;

/// Failing pairs are listed up to this many.
const MAX_LISTED: usize = 16;

fn as_string<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// `ω⁽ʲ⁻¹⁾(v, v') = ⟨λ⁽ʲ⁻¹⁾, [v, v']⟩` on a basis of `V⁽ʲ⁾` in degree `s_{j-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticForm {
    pub level: usize,
    #[serde(serialize_with = "as_string")]
    pub degree: Rational,
    pub generators: Vec<Gen>,
    /// Basis vectors in the coordinates of `generators`.
    pub basis: Vec<Vector>,
    pub matrix: Vec<Vector>,
}

impl SymplecticForm {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `ω(u, v)` for `u, v` in basis coordinates.
    pub fn eval(&self, u: &[CycloNumber], v: &[CycloNumber]) -> CycloNumber {
        let mut acc = CycloNumber::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() && !self.matrix[i][j].is_zero() {
                    acc = &acc + &(&(ui * &self.matrix[i][j]) * vj);
                }
            }
        }
        acc
    }

    pub fn is_alternating(&self) -> bool {
        let k = self.dim();
        (0..k).all(|i| {
            self.matrix[i][i].is_zero() && (0..k).all(|j| self.matrix[i][j] == -self.matrix[j][i].clone())
        })
    }

    pub fn determinant(&self) -> CycloNumber {
        Matrix::from_rows(self.matrix.clone(), self.dim()).determinant()
    }

    /// Basis-coordinate vectors written in the generators of the piece.
    fn to_piece(&self, u: &[CycloNumber]) -> Vector {
        let mut out = vec![CycloNumber::zero(); self.generators.len()];
        for (c, b) in u.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                *x = &*x + &(c * y);
            }
        }
        out
    }
}

/// Gram matrix `⟨λ, [u_i, v_k]⟩` for `u_i` in degree `du`, `v_k` in degree `dv`.
fn pairing_matrix(
    lad: &GradedLadder,
    lambda: &LoopMatrix,
    du: &Rational,
    left: &[Vector],
    dv: &Rational,
    right: &[Vector],
) -> Vec<Vector> {
    let rs: Vec<LoopMatrix> = right.iter().map(|v| lad.piece_element(dv, v)).collect();
    left.iter()
        .map(|u| {
            let x = lad.piece_element(du, u);
            rs.iter().map(|y| lambda.pair(&x.bracket(y))).collect()
        })
        .collect()
}

/// The form `ω⁽ʲ⁻¹⁾` on `V⁽ʲ⁾_{=s_{j-1}}`, checked alternating and
/// nondegenerate.
pub fn symplectic_form(lad: &GradedLadder, j: usize) -> Result<SymplecticForm> {
    if j == 0 || j >= lad.num_levels() {
        return Err(Error::invalid(MODULE, format!("no symplectic form at level {j}")));
    }
    let s = lad.half_depth(j);
    let basis = lad.level_basis(j, &s)?;
    if basis.is_empty() {
        return Err(Error::invalid(
            MODULE,
            format!("V^({j}) vanishes in degree {s}; no Lagrangian is needed"),
        ));
    }
    let matrix = pairing_matrix(lad, lad.component(j - 1), &s, &basis, &s, &basis);
    let form = SymplecticForm {
        level: j,
        generators: lad.grading().piece(&s),
        degree: s,
        basis,
        matrix,
    };
    if !form.is_alternating() {
        return Err(Error::invariant(MODULE, format!("form at level {j} is not alternating")));
    }
    if form.determinant().is_zero() {
        return Err(Error::invariant(MODULE, format!("form at level {j} is degenerate")));
    }
    Ok(form)
}

/// Greedy symplectic basis `u_1, v_1, u_2, v_2, …` built from the basis order;
/// returns the span of the `u_i` in piece coordinates.
pub fn lagrangian(form: &SymplecticForm) -> Result<Vec<Vector>> {
    let k = form.dim();
    if k % 2 == 1 {
        return Err(Error::invariant(MODULE, format!("form has odd dimension {k}")));
    }
    let mut pool: Vec<Vector> = (0..k)
        .map(|i| {
            let mut e = vec![CycloNumber::zero(); k];
            e[i] = CycloNumber::from_i64(1);
            e
        })
        .collect();
    let mut half = Vec::with_capacity(k / 2);
    while !pool.is_empty() {
        let u = pool.remove(0);
        let idx = pool
            .iter()
            .position(|w| !form.eval(&u, w).is_zero())
            .ok_or_else(|| Error::invariant(MODULE, "form is degenerate"))?;
        let v = pool.remove(idx);
        let c = form.eval(&u, &v).inv().expect("nonzero");
        for w in pool.iter_mut() {
            let a = &form.eval(w, &v) * &c;
            let b = &form.eval(w, &u) * &c;
            for ((x, y), z) in w.iter_mut().zip(&u).zip(&v) {
                *x = &(&*x - &(&a * y)) + &(&b * z);
            }
        }
        half.push(u);
    }
    let isotropic = half
        .iter()
        .all(|a| half.iter().all(|b| form.eval(a, b).is_zero()));
    if !isotropic || Subspace::span(half.clone(), k).dim() * 2 != k {
        return Err(Error::invariant(MODULE, "greedy output is not Lagrangian"));
    }
    Ok(half.iter().map(|u| form.to_piece(u)).collect())
}

/// Coordinates of a piece vector in the basis of `form`.
fn basis_coords(form: &SymplecticForm, v: &[CycloNumber]) -> Option<Vector> {
    let k = form.dim();
    let rows: Vec<Vector> = (0..form.generators.len())
        .map(|g| {
            let mut r: Vector = form.basis.iter().map(|b| b[g].clone()).collect();
            r.push(v[g].clone());
            r
        })
        .collect();
    let mut m = Matrix::from_rows(rows, k + 1);
    let pivots = m.rref();
    if pivots.len() != k || pivots.contains(&k) {
        return None;
    }
    Some((0..k).map(|i| m[(i, k)].clone()).collect())
}

/// Whether `vectors` (piece coordinates) span a Lagrangian of `form`.
fn is_lagrangian(form: &SymplecticForm, vectors: &[Vector]) -> bool {
    if vectors.iter().any(|v| v.len() != form.generators.len()) {
        return false;
    }
    let Some(coords) = vectors
        .iter()
        .map(|v| basis_coords(form, v))
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    Subspace::span(coords.clone(), form.dim()).dim() * 2 == form.dim()
        && coords.iter().all(|a| coords.iter().all(|b| form.eval(a, b).is_zero()))
}

/// One level of 𝔍: everything in degrees above `from`, the Lagrangian (or
/// everything, when there is none) in degree `from`, nothing below.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelLattice {
    pub from: Rational,
    pub lagrangian: Option<Vec<Vector>>,
}

/// `𝔍 = ⊕_j 𝔍⁽ʲ⁾` together with the ladder it was built from.
#[derive(Clone, Debug)]
pub struct JLattice {
    ladder: GradedLadder,
    levels: Vec<LevelLattice>,
}

impl JLattice {
    /// Assembles a lattice without any checks.
    pub fn from_levels(ladder: GradedLadder, levels: Vec<LevelLattice>) -> Result<Self> {
        if levels.len() != ladder.num_levels() {
            return Err(Error::invalid(MODULE, "one threshold per level is required"));
        }
        Ok(JLattice { ladder, levels })
    }

    pub fn ladder(&self) -> &GradedLadder {
        &self.ladder
    }

    pub fn levels(&self) -> &[LevelLattice] {
        &self.levels
    }

    /// Basis of `𝔍⁽ʲ⁾_δ` in piece coordinates.
    pub fn level_part(&self, j: usize, deg: &Rational) -> Result<Vec<Vector>> {
        let level = &self.levels[j];
        if *deg < level.from {
            return Ok(Vec::new());
        }
        match (&level.lagrangian, *deg == level.from) {
            (Some(l), true) => Ok(l.clone()),
            _ => self.ladder.level_basis(j, deg),
        }
    }

    /// Basis of `𝔍_δ`.
    pub fn part(&self, deg: &Rational) -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        for j in 0..self.levels.len() {
            out.extend(self.level_part(j, deg)?);
        }
        Ok(out)
    }

    /// The lowest degree of the lattice.
    pub fn min_degree(&self) -> Rational {
        self.levels
            .iter()
            .map(|l| l.from.clone())
            .min()
            .unwrap_or_else(Rational::zero)
    }

    /// The corrupted lattice with level `j` starting one grading step lower
    /// and no Lagrangian.
    pub fn lowered(&self, j: usize) -> Self {
        let mut out = self.clone();
        let step = self.ladder.grading().step();
        let level = &mut out.levels[j];
        level.from = &level.from - step;
        level.lagrangian = None;
        out
    }

    /// Whether `𝔍_δ = 𝔤_{x,δ}` for `δ > 0` and `𝔍_δ = 0` for `δ ≤ 0`, on
    /// the window.
    pub fn equals_positive_part(&self, hi: &Rational) -> Result<bool> {
        let g = self.ladder.grading();
        let lo = self.min_degree().min(Rational::zero());
        for deg in g.degrees(&lo, hi) {
            let n = g.piece(&deg).len();
            let dim = Subspace::span(self.part(&deg)?, n).dim();
            let want = if deg > Rational::zero() { n } else { 0 };
            if dim != want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Serialize for JLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Threshold {
            root: usize,
            level: usize,
            q: String,
        }
        #[derive(Serialize)]
        struct Lagrangian<'a> {
            level: usize,
            degree: String,
            generators: Vec<Gen>,
            basis: &'a [Vector],
        }
        #[derive(Serialize)]
        struct Level {
            level: usize,
            from: String,
        }
        let thresholds: Vec<Threshold> = self
            .ladder
            .root_pairs()
            .iter()
            .enumerate()
            .filter_map(|(root, &(a, b))| {
                let level = self.ladder.root_level(a, b)?;
                Some(Threshold {
                    root,
                    level,
                    q: self.levels[level].from.to_string(),
                })
            })
            .collect();
        let levels: Vec<Level> = self
            .levels
            .iter()
            .enumerate()
            .map(|(level, l)| Level {
                level,
                from: l.from.to_string(),
            })
            .collect();
        let lagrangians: Vec<Lagrangian> = self
            .levels
            .iter()
            .enumerate()
            .filter_map(|(level, l)| {
                l.lagrangian.as_ref().map(|basis| Lagrangian {
                    level,
                    degree: l.from.to_string(),
                    generators: self.ladder.grading().piece(&l.from),
                    basis,
                })
            })
            .collect();
        let mut st = s.serialize_struct("JLattice", 4)?;
        st.serialize_field("point", self.ladder.grading())?;
        st.serialize_field("levels", &levels)?;
        st.serialize_field("thresholds", &thresholds)?;
        st.serialize_field("lagrangians", &lagrangians)?;
        st.end()
    }
}

/// Builds 𝔍 with `𝔍⁽⁰⁾ = V⁽⁰⁾_{≥0}` and `𝔍⁽ʲ⁾` from `s_{j-1}`, taking the
/// greedy Lagrangian unless `choices` supplies one for the level, and checks
/// bracket closure on the default window.
pub fn build_j_lattice(lad: &GradedLadder, choices: &BTreeMap<usize, Vec<Vector>>) -> Result<JLattice> {
    if let Some(&j) = choices.keys().find(|&&j| j == 0 || j >= lad.num_levels()) {
        return Err(Error::invalid(MODULE, format!("no Lagrangian is chosen at level {j}")));
    }
    let mut levels = vec![LevelLattice {
        from: Rational::zero(),
        lagrangian: None,
    }];
    for j in 1..lad.num_levels() {
        let s = lad.half_depth(j);
        let lagrangian = if lad.level_basis(j, &s)?.is_empty() {
            if choices.contains_key(&j) {
                return Err(Error::invalid(MODULE, format!("V^({j}) vanishes in degree {s}")));
            }
            None
        } else {
            let form = symplectic_form(lad, j)?;
            match choices.get(&j) {
                Some(l) if is_lagrangian(&form, l) => Some(l.clone()),
                Some(_) => {
                    return Err(Error::invalid(
                        MODULE,
                        format!("the subspace chosen at level {j} is not Lagrangian"),
                    ))
                }
                None => Some(lagrangian(&form)?),
            }
        };
        levels.push(LevelLattice { from: s, lagrangian });
    }
    let lat = JLattice {
        ladder: lad.clone(),
        levels,
    };
    let report = bracket_closure(&lat, None)?;
    if !report.ok {
        return Err(Error::invariant(
            MODULE,
            format!("lattice is not closed under brackets: {}", report.failures.join("; ")),
        ));
    }
    Ok(lat)
}

/// Outcome of a pairwise check over the generators of 𝔍 in a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub window: (String, String),
    pub pairs: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub ok: bool,
}

fn window_of(lat: &JLattice, window: Option<(Rational, Rational)>) -> (Rational, Rational) {
    let (lo, hi) = window.unwrap_or_else(|| lat.ladder.default_window());
    (lo.min(lat.min_degree()), hi)
}

/// Runs `check(δ₁, u, δ₂, v)` over basis pairs of `𝔍_{δ₁} × 𝔍_{δ₂}` with
/// `δ₁ ≤ δ₂` and `δ₁ + δ₂` inside the window.
fn pairwise<F>(lat: &JLattice, window: Option<(Rational, Rational)>, check: F) -> Result<ClosureReport>
where
    F: Fn(&Rational, &LoopMatrix, &Rational, &LoopMatrix) -> Result<Option<String>> + Sync,
{
    let (lo, hi) = window_of(lat, window);
    let g = lat.ladder.grading();
    let degrees = g.degrees(&lo, &hi);
    let parts: Vec<(Rational, Vec<LoopMatrix>)> = degrees
        .iter()
        .map(|d| {
            let elems = lat.part(d)?.iter().map(|v| lat.ladder.piece_element(d, v)).collect();
            Ok((d.clone(), elems))
        })
        .collect::<Result<_>>()?;
    let rows: Vec<(usize, Vec<String>)> = (0..parts.len())
        .into_par_iter()
        .map(|a| {
            let (d1, xs) = &parts[a];
            let mut count = 0;
            let mut bad = Vec::new();
            for (d2, ys) in &parts[a..] {
                if d1 + d2 > hi {
                    break;
                }
                for x in xs {
                    for y in ys {
                        count += 1;
                        if let Some(msg) = check(d1, x, d2, y)? {
                            bad.push(msg);
                        }
                    }
                }
            }
            Ok((count, bad))
        })
        .collect::<Result<_>>()?;
    let pairs = rows.iter().map(|r| r.0).sum();
    let all: Vec<String> = rows.into_iter().flat_map(|r| r.1).collect();
    Ok(ClosureReport {
        window: (lo.to_string(), hi.to_string()),
        pairs,
        failure_count: all.len(),
        ok: all.is_empty(),
        failures: all.into_iter().take(MAX_LISTED).collect(),
    })
}

fn describe(x: &LoopMatrix) -> String {
    let mut parts = Vec::new();
    for (&(k, i, j), c) in x.entries() {
        parts.push(format!("({c})E{}{}*t^{k}", i + 1, j + 1));
    }
    parts.join(" + ")
}

/// `[𝔍_{δ₁}, 𝔍_{δ₂}] ⊆ 𝔍_{δ₁+δ₂}` on the window (default `[0, max depth + 2]`,
/// extended down to the lowest threshold).
pub fn bracket_closure(lat: &JLattice, window: Option<(Rational, Rational)>) -> Result<ClosureReport> {
    let g = lat.ladder.grading();
    let (lo, hi) = window_of(lat, window.clone());
    let mut targets: HashMap<Rational, Subspace<CycloNumber>> = HashMap::new();
    for deg in g.degrees(&(&lo + &lo), &hi) {
        let n = g.piece(&deg).len();
        targets.insert(deg.clone(), Subspace::span(lat.part(&deg)?, n));
    }
    pairwise(lat, window, |d1, x, d2, y| {
        let br = x.bracket(y);
        if br.is_zero() {
            return Ok(None);
        }
        let deg = d1 + d2;
        let inside = match br.coords(&g.piece(&deg)) {
            Ok(c) => targets[&deg].contains(&c),
            Err(_) => false,
        };
        Ok((!inside).then(|| format!("[{}, {}] leaves the lattice in degree {deg}", describe(x), describe(y))))
    })
}

/// `⟨λ, [u, v]⟩ = 0` for generator pairs of 𝔍 on the window.
pub fn psi_lambda_check(lat: &JLattice, window: Option<(Rational, Rational)>) -> Result<ClosureReport> {
    let lambda = lat.ladder.lambda();
    pairwise(lat, window, |_, x, _, y| {
        let v = lambda.pair(&x.bracket(y));
        Ok((!v.is_zero()).then(|| format!("<λ, [{}, {}]> = {v}", describe(x), describe(y))))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum Variant {
    J,
    K,
}

/// Rank of `B_λ(X, Y) = ⟨λ, [X, Y]⟩` between a graded piece of the group
/// lattice complement and its partner degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub level: usize,
    #[serde(serialize_with = "as_string")]
    pub degree: Rational,
    #[serde(serialize_with = "as_string")]
    pub partner: Rational,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
}

impl RankRow {
    pub fn is_perfect(&self) -> bool {
        self.rank == self.left_dim && self.rank == self.right_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveabilityReport {
    pub variant: Variant,
    pub rows: Vec<RankRow>,
    pub full_rank: bool,
}

/// Vectors of `space` completing `sub` to a basis, picked in order.
fn complement(sub: &[Vector], space: &[Vector], n: usize) -> Vec<Vector> {
    let mut acc = Subspace::span(sub.to_vec(), n);
    let mut out = Vec::new();
    for v in space {
        if !acc.contains(v) {
            acc = acc.sum(&Subspace::span(vec![v.clone()], n));
            out.push(v.clone());
        }
    }
    out
}

/// Per level `j ≥ 1` with `r = r_{j-1}` and `s = r/2`, the rank of `B_λ`
/// pairing degree `δ` with degree `r − δ`.
///
/// The 𝔍-variant runs over `δ ≥ s` and pairs `L⁽ʲ⁾` with `V_s/L⁽ʲ⁾` at
/// `δ = s`; the 𝐊-variant runs over `δ > r`.
pub fn moveability_check(lat: &JLattice, variant: Variant) -> Result<MoveabilityReport> {
    let lad = &lat.ladder;
    let (_, hi) = lad.default_window();
    let g = lad.grading();
    let mut tasks = Vec::new();
    for j in 1..lad.num_levels() {
        let r = lad.breaks()[j - 1].clone();
        let s = lad.half_depth(j);
        for deg in g.degrees(&s, &hi) {
            if variant == Variant::K && deg <= r {
                continue;
            }
            tasks.push((j, r.clone(), deg));
        }
    }
    let rows: Vec<RankRow> = tasks
        .into_par_iter()
        .map(|(j, r, deg)| {
            let partner = &r - &deg;
            let (left, right) = if variant == Variant::J && partner == deg {
                let full = lad.level_basis(j, &deg)?;
                let l = lat.level_part(j, &deg)?;
                let c = complement(&l, &full, g.piece(&deg).len());
                (l, c)
            } else {
                (lad.level_basis(j, &deg)?, lad.level_basis(j, &partner)?)
            };
            let m = pairing_matrix(lad, lad.lambda(), &deg, &left, &partner, &right);
            let rank = if left.is_empty() || right.is_empty() {
                0
            } else {
                Matrix::from_rows(m, right.len()).rank()
            };
            Ok(RankRow {
                level: j,
                left_dim: left.len(),
                right_dim: right.len(),
                rank,
                degree: deg,
                partner,
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|row| row.left_dim + row.right_dim > 0)
        .collect();
    Ok(MoveabilityReport {
        variant,
        full_rank: rows.iter().all(RankRow::is_perfect),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::classify;
    use crate::rootdata::{RootDatum, RootSet};
    use crate::scalar::RationalField;
    use crate::tails::Tail;
    use crate::tori::TorusClass;
    use crate::yuseq::yu_ladder;
    use super::super::Grading;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn cv(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| CycloNumber::from_i64(x)).collect()
    }

    fn split_ladder(kind: &str, lam: Tail, grading: Grading) -> GradedLadder {
        let rd = RootDatum::build(&kind.parse().unwrap()).unwrap();
        let d = classify(&rd, &TorusClass::split(&rd), &lam).unwrap();
        let y = yu_ladder(&rd, &d).unwrap();
        GradedLadder::split(&rd, &d, &y, grading).unwrap()
    }

    fn sl2_depth_one() -> GradedLadder {
        let lam = Tail::monomial(1, q(1, 1), vec![CycloNumber::from_rational(q(1, 2))]).unwrap();
        split_ladder("A1", lam, Grading::rho_over(2, 2).unwrap())
    }

    fn sl3_two_break(grading: Grading) -> GradedLadder {
        let lam = Tail::new(1, [(q(2, 1), cv(&[2, 1])), (q(1, 1), cv(&[0, 1]))]).unwrap();
        split_ladder("A2", lam, grading)
    }

    #[test]
    fn sl2_form_and_lagrangian() {
        let lad = sl2_depth_one();
        let form = symplectic_form(&lad, 1).unwrap();
        assert_eq!(form.degree, q(1, 2));
        assert_eq!(form.generators.len(), 2);
        let c = form.matrix[0][1].clone();
        assert!(!c.is_zero());
        assert_eq!(form.matrix[1][0], -c);
        let l = lagrangian(&form).unwrap();
        assert_eq!(l, vec![cv(&[1, 0])]);
        assert!(symplectic_form(&lad, 0).is_err());
    }

    #[test]
    fn four_dimensional_block_form() {
        let z = || CycloNumber::zero();
        let o = |x: i64| CycloNumber::from_i64(x);
        let form = SymplecticForm {
            level: 1,
            degree: q(1, 2),
            generators: Vec::new(),
            basis: (0..4).map(|i| (0..4).map(|k| o((i == k) as i64)).collect()).collect(),
            matrix: vec![
                vec![z(), z(), o(1), o(2)],
                vec![z(), z(), o(3), o(1)],
                vec![o(-1), o(-3), z(), o(1)],
                vec![o(-2), o(-1), o(-1), z()],
            ],
        };
        assert!(form.is_alternating());
        let form = SymplecticForm {
            generators: vec![Gen { kind: super::super::GenKind::Torus(0), k: 0 }; 4],
            ..form
        };
        let l = lagrangian(&form).unwrap();
        assert_eq!(l.len(), 2);
        for a in &l {
            for b in &l {
                assert!(form.eval(a, b).is_zero());
            }
        }
    }

    #[test]
    fn sl2_depth_one_lattice() {
        let lad = sl2_depth_one();
        let lat = build_j_lattice(&lad, &BTreeMap::new()).unwrap();
        // degree 1/2 keeps e only; degree 3/2 has e·t and f·t²
        assert_eq!(lat.part(&q(1, 2)).unwrap().len(), 1);
        assert_eq!(lat.part(&q(3, 2)).unwrap().len(), 2);
        assert_eq!(lat.part(&q(0, 1)).unwrap().len(), 1);
        assert!(psi_lambda_check(&lat, None).unwrap().ok);
        let bad = lat.lowered(1);
        assert!(!psi_lambda_check(&bad, None).unwrap().ok || !bracket_closure(&bad, None).unwrap().ok);
        for v in [Variant::J, Variant::K] {
            assert!(moveability_check(&lat, v).unwrap().full_rank);
        }
    }

    #[test]
    fn sl3_two_break_lattice() {
        for grading in [Grading::rho_over(3, 2).unwrap(), Grading::hyperspecial(3).unwrap()] {
            let lad = sl3_two_break(grading);
            let lat = build_j_lattice(&lad, &BTreeMap::new()).unwrap();
            assert!(psi_lambda_check(&lat, None).unwrap().ok);
            for j in 1..3 {
                let bad = lat.lowered(j);
                let closure = bracket_closure(&bad, None).unwrap().ok;
                let psi = psi_lambda_check(&bad, None).unwrap().ok;
                assert!(!(closure && psi), "level {j}");
            }
            for v in [Variant::J, Variant::K] {
                assert!(moveability_check(&lat, v).unwrap().full_rank);
            }
        }
    }

    #[test]
    fn epipelagic_lattice_is_positive_part() {
        for n in [2, 3] {
            let lad = GradedLadder::epipelagic(n).unwrap();
            let lat = build_j_lattice(&lad, &BTreeMap::new()).unwrap();
            assert!(lat.equals_positive_part(&q(3, 1)).unwrap());
            assert!(psi_lambda_check(&lat, None).unwrap().ok);
            assert!(moveability_check(&lat, Variant::J).unwrap().full_rank);
            assert!(moveability_check(&lat, Variant::K).unwrap().full_rank);
            let bad = lat.lowered(1);
            assert!(!psi_lambda_check(&bad, None).unwrap().ok);
        }
    }

    #[test]
    fn non_regular_tail_has_rank_defect() {
        let rd = RootDatum::build(&"A2".parse().unwrap()).unwrap();
        let lam = Tail::monomial(
            1,
            q(1, 1),
            vec![CycloNumber::from_rational(q(2, 3)), CycloNumber::from_rational(q(1, 3))],
        )
        .unwrap();
        let lad = GradedLadder::split_forced(
            &rd,
            &lam,
            &[q(1, 1)],
            &[RootSet::new(), rd.all_roots()],
            &[lam.clone(), Tail::zero(1)],
            Grading::hyperspecial(3).unwrap(),
        )
        .unwrap();
        let lat = build_j_lattice(&lad, &BTreeMap::new()).unwrap();
        let report = moveability_check(&lat, Variant::K).unwrap();
        assert!(!report.full_rank);
        assert!(report.rows.iter().any(|r| r.rank < r.left_dim));
    }

    #[test]
    fn chosen_lagrangians_are_validated() {
        let lad = sl2_depth_one();
        let other = BTreeMap::from([(1, vec![cv(&[0, 1])])]);
        assert!(build_j_lattice(&lad, &other).is_ok());
        let bad = BTreeMap::from([(1, vec![cv(&[1, 0]), cv(&[0, 1])])]);
        assert!(build_j_lattice(&lad, &bad).is_err());
        let json = serde_json::to_value(build_j_lattice(&lad, &BTreeMap::new()).unwrap()).unwrap();
        assert_eq!(json["thresholds"][0]["q"], "1/2");
    }
}
