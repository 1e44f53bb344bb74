//! Split root data, Weyl groups and ℚ-closed root subsystems.
//!
//! Coordinates: a covector of 𝔱₀* is written in the basis formed by the
//! simple roots followed by one basis vector per central torus factor. Roots
//! are therefore integer vectors, and a coroot is stored as the row of its
//! pairings with that basis, so `⟨α∨, c⟩` is a plain dot product.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorKind, Result};
use crate::linalg::Subspace;
use crate::scalar::RationalField;
use crate::{CycloNumber, Rational};

const MODULE: &str = "rootdata";

/// Upper bound on |W| for anything that enumerates the Weyl group.
pub const WEYL_ORDER_LIMIT: u128 = 100_000;

/// Sorted set of root indices.
pub type RootSet = BTreeSet<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

/// A product of simple types and a central torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub factors: Vec<(Family, usize)>,
    pub torus: usize,
}

impl CartanType {
    pub fn simple(family: Family, rank: usize) -> Self {
        CartanType {
            factors: vec![(family, rank)],
            torus: 0,
        }
    }

    fn parse_factor(label: &str, rank: usize) -> Result<Option<(Family, usize)>> {
        let family = match label.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "G" => Family::G,
            "T" | "TORUS" => return Ok(None),
            other => {
                return Err(Error::new(
                    ErrorKind::UnsupportedFeature,
                    MODULE,
                    format!("unsupported simple type {other:?}"),
                ))
            }
        };
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::new(
                ErrorKind::UnsupportedFeature,
                MODULE,
                format!("unsupported rank {rank} for type {family}"),
            ));
        }
        Ok(Some((family, rank)))
    }

    /// Accepts `"A2"` or the list form `[["A",2],["torus",1]]`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => s.parse(),
            serde_json::Value::Array(items) => {
                let mut ty = CartanType {
                    factors: Vec::new(),
                    torus: 0,
                };
                for item in items {
                    let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                        Error::invalid(MODULE, "type factors must be [label, rank] pairs")
                    })?;
                    let label = pair[0]
                        .as_str()
                        .ok_or_else(|| Error::invalid(MODULE, "type label must be a string"))?;
                    let rank = pair[1]
                        .as_u64()
                        .ok_or_else(|| Error::invalid(MODULE, "type rank must be an integer"))?
                        as usize;
                    match Self::parse_factor(label, rank)? {
                        Some(f) => ty.factors.push(f),
                        None => ty.torus += rank,
                    }
                }
                ty.validate()?;
                Ok(ty)
            }
            _ => Err(Error::invalid(MODULE, "type must be a string or a list")),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        if self.torus == 0 && self.factors.len() == 1 {
            return serde_json::Value::String(self.to_string());
        }
        let mut items: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|(f, r)| serde_json::json!([f.to_string(), r]))
            .collect();
        if self.torus > 0 {
            items.push(serde_json::json!(["torus", self.torus]));
        }
        serde_json::Value::Array(items)
    }

    fn validate(&self) -> Result<()> {
        if self.factors.is_empty() && self.torus == 0 {
            return Err(Error::invalid(MODULE, "empty root datum"));
        }
        Ok(())
    }

    /// |W| from the classical order formulas.
    pub fn weyl_order(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        self.factors
            .iter()
            .map(|&(f, n)| match f {
                Family::A => fact(n + 1),
                Family::B | Family::C => (1u128 << n) * fact(n),
                Family::D => (1u128 << (n - 1)) * fact(n),
                Family::G => 12,
            })
            .product()
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses labels such as `A2`, `G2`, `A1xA1` or `A1xT1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut ty = CartanType {
            factors: Vec::new(),
            torus: 0,
        };
        for part in s.split(['x', '×', '+']).map(str::trim).filter(|p| !p.is_empty()) {
            let split = part
                .find(|c: char| c.is_ascii_digit())
                .ok_or_else(|| Error::invalid(MODULE, format!("missing rank in {part:?}")))?;
            let rank: usize = part[split..]
                .parse()
                .map_err(|_| Error::invalid(MODULE, format!("bad rank in {part:?}")))?;
            match Self::parse_factor(&part[..split], rank)? {
                Some(f) => ty.factors.push(f),
                None => ty.torus += rank,
            }
        }
        ty.validate()?;
        Ok(ty)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|(fam, r)| format!("{fam}{r}")).collect();
        if self.torus > 0 {
            parts.push(format!("T{}", self.torus));
        }
        f.write_str(&parts.join("x"))
    }
}

/// Cartan matrix with entries `⟨α_i∨, α_j⟩`.
fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = match family {
        Family::D => n - 1,
        _ => n,
    };
    for i in 0..chain.saturating_sub(1) {
        c[i][i + 1] = -1;
        c[i + 1][i] = -1;
    }
    match family {
        Family::A => {}
        // α_n = e_n is short
        Family::B => c[n - 1][n - 2] = -2,
        // α_n = 2e_n is long
        Family::C => c[n - 2][n - 1] = -2,
        Family::D => {
            c[n - 1][n - 3] = -1;
            c[n - 3][n - 1] = -1;
        }
        // α_1 short, α_2 long
        Family::G => c[0][1] = -3,
    }
    c
}

/// A Weyl group element: its action on covector coordinates together with
/// the induced permutation of root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn root_permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_root(&self, root: usize) -> usize {
        self.perm[root]
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn act_covector(&self, c: &[CycloNumber]) -> Vec<CycloNumber> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(c)
                    .filter(|(&m, x)| m != 0 && !x.is_zero())
                    .fold(CycloNumber::zero(), |acc, (&m, x)| {
                        &acc + &(x * &CycloNumber::from_i64(m))
                    })
            })
            .collect()
    }

    pub fn act_rational(&self, c: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(c)
                    .fold(Rational::zero(), |acc, (&m, x)| acc + x.clone() * Rational::from_i64(m))
            })
            .collect()
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub struct RootDatum {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    n_pos: usize,
    root_index: HashMap<Vec<i64>, usize>,
    weyl: OnceLock<Result<Vec<WeylElement>>>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("type", &self.cartan_type.to_string())
            .field("rank", &self.rank)
            .field("roots", &self.roots.len())
            .finish()
    }
}

impl RootDatum {
    pub fn build(cartan_type: &CartanType) -> Result<Self> {
        cartan_type.validate()?;
        let ss_rank: usize = cartan_type.factors.iter().map(|f| f.1).sum();
        let rank = ss_rank + cartan_type.torus;
        let mut cartan = vec![vec![0i64; ss_rank]; ss_rank];
        let mut offset = 0;
        for &(family, n) in &cartan_type.factors {
            for (i, row) in cartan_matrix(family, n).into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    cartan[offset + i][offset + j] = x;
                }
            }
            offset += n;
        }

        // orbit of the simple (root, coroot) pairs under simple reflections
        let mut found: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..ss_rank {
            let mut root = vec![0i64; rank];
            root[i] = 1;
            let mut coroot = vec![0i64; rank];
            coroot[..ss_rank].copy_from_slice(&cartan[i]);
            if found.insert(root.clone(), coroot.clone()).is_none() {
                queue.push_back((root, coroot));
            }
        }
        while let Some((root, coroot)) = queue.pop_front() {
            for j in 0..ss_rank {
                let pair: i64 = (0..ss_rank).map(|k| cartan[j][k] * root[k]).sum();
                let mut r2 = root.clone();
                r2[j] -= pair;
                let cpair = coroot[j];
                let c2: Vec<i64> = (0..rank)
                    .map(|k| coroot[k] - cpair * if k < ss_rank { cartan[j][k] } else { 0 })
                    .collect();
                if !found.contains_key(&r2) {
                    found.insert(r2.clone(), c2.clone());
                    queue.push_back((r2, c2));
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = found
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&x| x >= 0))
            .collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = positive.len();
        let mut roots = Vec::with_capacity(2 * n_pos);
        let mut coroots = Vec::with_capacity(2 * n_pos);
        for (r, c) in &positive {
            roots.push(r.clone());
            coroots.push(c.clone());
        }
        for (r, c) in &positive {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let root_index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let rd = RootDatum {
            cartan_type: cartan_type.clone(),
            rank,
            cartan,
            roots,
            coroots,
            n_pos,
            root_index,
            weyl: OnceLock::new(),
        };
        debug_assert!((0..rd.roots.len()).all(|i| rd.pairing(i, i) == 2));
        Ok(rd)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn all_roots(&self) -> RootSet {
        (0..self.roots.len()).collect()
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.n_pos
    }

    pub fn negate(&self, root: usize) -> usize {
        if root < self.n_pos {
            root + self.n_pos
        } else {
            root - self.n_pos
        }
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// `⟨α_i∨, α_j⟩`.
    pub fn pairing(&self, coroot: usize, root: usize) -> i64 {
        self.coroots[coroot]
            .iter()
            .zip(&self.roots[root])
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn pair_covector(&self, coroot: usize, c: &[CycloNumber]) -> CycloNumber {
        self.coroots[coroot]
            .iter()
            .zip(c)
            .filter(|(&a, x)| a != 0 && !x.is_zero())
            .fold(CycloNumber::zero(), |acc, (&a, x)| &acc + &(x * &CycloNumber::from_i64(a)))
    }

    /// Validates a covector action matrix and attaches its root permutation.
    pub fn weyl_from_matrix(&self, matrix: Vec<Vec<i64>>) -> Result<WeylElement> {
        if matrix.len() != self.rank || matrix.iter().any(|r| r.len() != self.rank) {
            return Err(Error::invalid(
                MODULE,
                format!("Weyl matrix must be {0}x{0}", self.rank),
            ));
        }
        let mut perm = Vec::with_capacity(self.roots.len());
        for r in &self.roots {
            let img: Vec<i64> = matrix
                .iter()
                .map(|row| row.iter().zip(r).map(|(a, b)| a * b).sum())
                .collect();
            let idx = self.root_index(&img).ok_or_else(|| {
                Error::invalid(MODULE, "matrix does not permute the roots")
            })?;
            perm.push(idx);
        }
        let w = WeylElement { matrix, perm };
        // a root-permuting matrix lies in W iff it also permutes coroots and
        // fixes the torus directions; membership is checked against W itself
        if let Ok(group) = self.weyl_elements() {
            if !group.contains(&w) {
                return Err(Error::invalid(MODULE, "matrix is not a Weyl group element"));
            }
        }
        Ok(w)
    }

    pub fn identity(&self) -> WeylElement {
        let matrix = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            matrix,
            perm: (0..self.roots.len()).collect(),
        }
    }

    /// The reflection `s_α(c) = c − ⟨α∨, c⟩ α`.
    pub fn reflection(&self, root: usize) -> WeylElement {
        let alpha = &self.roots[root];
        let co = &self.coroots[root];
        let matrix: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| i64::from(i == j) - alpha[i] * co[j])
                    .collect()
            })
            .collect();
        let perm = self
            .roots
            .iter()
            .map(|r| {
                let p: i64 = co.iter().zip(r).map(|(a, b)| a * b).sum();
                let img: Vec<i64> = r.iter().zip(alpha).map(|(x, a)| x - p * a).collect();
                self.root_index[&img]
            })
            .collect();
        WeylElement { matrix, perm }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.reflection(i)
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: mat_mul(&a.matrix, &b.matrix),
            perm: b.perm.iter().map(|&r| a.perm[r]).collect(),
        }
    }

    /// Product `s_{i_1} s_{i_2} ⋯ s_{i_k}` of simple reflections.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.semisimple_rank() {
                return Err(Error::invalid(MODULE, format!("no simple reflection {i}")));
            }
            w = self.compose(&w, &self.simple_reflection(i));
        }
        Ok(w)
    }

    pub fn order(&self, w: &WeylElement) -> u64 {
        let mut k = 1;
        let mut p = w.clone();
        while !p.is_identity() {
            p = self.compose(&p, w);
            k += 1;
        }
        k
    }

    pub fn power(&self, w: &WeylElement, e: u64) -> WeylElement {
        (0..e).fold(self.identity(), |acc, _| self.compose(&acc, w))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let ord = self.order(w);
        self.power(w, ord - 1)
    }

    /// Action on coweight coordinates: the inverse transpose of the covector
    /// matrix.
    pub fn coweight_matrix(&self, w: &WeylElement) -> Vec<Vec<i64>> {
        let inv = self.inverse(w);
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| inv.matrix[j][i]).collect())
            .collect()
    }

    /// The whole group, identity first, in breadth-first order over the
    /// simple reflections.
    pub fn weyl_elements(&self) -> Result<&[WeylElement]> {
        self.weyl
            .get_or_init(|| {
                let order = self.cartan_type.weyl_order();
                if order > WEYL_ORDER_LIMIT {
                    return Err(Error::new(
                        ErrorKind::ResourceLimit,
                        MODULE,
                        format!("|W| = {order} exceeds the limit {WEYL_ORDER_LIMIT}"),
                    ));
                }
                let gens: Vec<WeylElement> =
                    (0..self.semisimple_rank()).map(|i| self.simple_reflection(i)).collect();
                let id = self.identity();
                let mut seen = std::collections::HashSet::new();
                seen.insert(id.perm.clone());
                let mut out = vec![id.clone()];
                let mut queue = VecDeque::from([id]);
                while let Some(w) = queue.pop_front() {
                    for g in &gens {
                        let next = self.compose(&w, g);
                        // roots span the semisimple part and W fixes the torus
                        // part, so the root permutation determines the element
                        if seen.insert(next.perm.clone()) {
                            out.push(next.clone());
                            queue.push_back(next);
                        }
                    }
                }
                Ok(out)
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Position of `w` in [`Self::weyl_elements`].
    pub fn weyl_index(&self, w: &WeylElement) -> Result<usize> {
        let group = self.weyl_elements()?;
        group
            .iter()
            .position(|u| u.perm == w.perm)
            .ok_or_else(|| Error::invalid(MODULE, "not a Weyl group element"))
    }

    /// Conjugacy classes as index lists into [`Self::weyl_elements`], ordered
    /// by first appearance; the first member is the class representative.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<usize>>> {
        let group = self.weyl_elements()?;
        let index: HashMap<&[usize], usize> =
            group.iter().enumerate().map(|(i, w)| (w.perm.as_slice(), i)).collect();
        let inverses: Vec<WeylElement> = group.iter().map(|u| self.inverse(u)).collect();
        let mut class_of = vec![usize::MAX; group.len()];
        let mut classes = Vec::new();
        for i in 0..group.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for (u, uinv) in group.iter().zip(&inverses) {
                let c = self.compose(&self.compose(u, &group[i]), uinv);
                members.insert(index[c.perm.as_slice()]);
            }
            for &m in &members {
                class_of[m] = classes.len();
            }
            let mut members: Vec<usize> = members.into_iter().collect();
            members.retain(|&m| m != i);
            members.insert(0, i);
            classes.push(members);
        }
        Ok(classes)
    }

    /// `s_1 s_2 ⋯ s_r` over the simple reflections.
    pub fn coxeter_element(&self) -> WeylElement {
        let word: Vec<usize> = (0..self.semisimple_rank()).collect();
        self.from_word(&word).expect("simple indices are in range")
    }

    /// `|Φ| / rank` for an irreducible datum.
    pub fn coxeter_number(&self) -> Option<u64> {
        (self.cartan_type.factors.len() == 1)
            .then(|| (self.roots.len() / self.semisimple_rank()) as u64)
    }

    /// `Φ ∩ ℚ-span(subset)`.
    pub fn q_closure(&self, subset: &RootSet) -> RootSet {
        if subset.is_empty() {
            return RootSet::new();
        }
        let span = Subspace::span(
            subset.iter().map(|&i| self.rational_root(i)).collect(),
            self.rank,
        );
        (0..self.roots.len())
            .filter(|&i| subset.contains(&i) || span.contains(&self.rational_root(i)))
            .collect()
    }

    pub fn is_q_closed(&self, subset: &RootSet) -> bool {
        self.q_closure(subset) == *subset
    }

    pub fn is_w_stable(&self, subset: &RootSet, w: &WeylElement) -> bool {
        subset.iter().all(|&r| subset.contains(&w.apply_root(r)))
    }

    pub fn rational_root(&self, i: usize) -> Vec<Rational> {
        self.roots[i].iter().map(|&x| Rational::from_i64(x)).collect()
    }

    /// For a single `A_{n-1}` factor without torus, the matrix size `n`.
    pub fn type_a_size(&self) -> Option<usize> {
        match self.cartan_type.factors.as_slice() {
            [(Family::A, r)] if self.cartan_type.torus == 0 => Some(r + 1),
            _ => None,
        }
    }

    /// In type A, root index ↦ `(a, b)` with the root equal to `e_a − e_b`.
    pub fn type_a_pair(&self, root: usize) -> Option<(usize, usize)> {
        self.type_a_size()?;
        let r = &self.roots[root];
        let first = r.iter().position(|&x| x != 0)?;
        let last = r.iter().rposition(|&x| x != 0)?;
        if r[first] > 0 {
            Some((first, last + 1))
        } else {
            Some((last + 1, first))
        }
    }

    /// In type A, converts a trace-zero diagonal functional `(μ_1, …, μ_n)`
    /// to simple-root coordinates.
    pub fn covector_from_ambient(&self, mu: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
        let n = self
            .type_a_size()
            .ok_or_else(|| Error::invalid(MODULE, "ambient coordinates are only defined in type A"))?;
        if mu.len() != n {
            return Err(Error::invalid(MODULE, format!("expected {n} ambient coordinates")));
        }
        let total = mu.iter().fold(CycloNumber::zero(), |a, x| &a + x);
        if !total.is_zero() {
            return Err(Error::invalid(MODULE, "ambient covector must have trace zero"));
        }
        let mut acc = CycloNumber::zero();
        Ok(mu[..n - 1]
            .iter()
            .map(|x| {
                acc = &acc + x;
                acc.clone()
            })
            .collect())
    }

    /// Inverse of [`Self::covector_from_ambient`].
    pub fn covector_to_ambient(&self, c: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
        let n = self
            .type_a_size()
            .ok_or_else(|| Error::invalid(MODULE, "ambient coordinates are only defined in type A"))?;
        Ok((0..n)
            .map(|i| {
                let up = if i < n - 1 { c[i].clone() } else { CycloNumber::zero() };
                let down = if i > 0 { c[i - 1].clone() } else { CycloNumber::zero() };
                &up - &down
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts_and_weyl_orders() {
        for (ty, roots, order) in [
            ("A1", 2, 2),
            ("A2", 6, 6),
            ("A3", 12, 24),
            ("B2", 8, 8),
            ("C3", 18, 48),
            ("D4", 24, 192),
            ("G2", 12, 12),
            ("A1xA1", 4, 4),
            ("A1xT1", 2, 2),
        ] {
            let r = rd(ty);
            assert_eq!(r.num_roots(), roots, "{ty}");
            assert_eq!(r.weyl_elements().unwrap().len(), order, "{ty}");
            assert!(r.weyl_elements().unwrap()[0].is_identity());
        }
    }

    #[test]
    fn pairing_is_two_on_the_diagonal() {
        for ty in ["A3", "B3", "C2", "D4", "G2"] {
            let r = rd(ty);
            for i in 0..r.num_roots() {
                assert_eq!(r.pairing(i, i), 2);
            }
        }
    }

    #[test]
    fn unsupported_types_are_rejected() {
        assert_eq!(
            "E6".parse::<CartanType>().unwrap_err().kind,
            ErrorKind::UnsupportedFeature
        );
        assert_eq!(
            "G3".parse::<CartanType>().unwrap_err().kind,
            ErrorKind::UnsupportedFeature
        );
        let big = RootDatum::build(&"A8".parse().unwrap()).unwrap();
        assert_eq!(big.weyl_elements().unwrap_err().kind, ErrorKind::ResourceLimit);
    }

    #[test]
    fn json_type_forms() {
        let t = CartanType::from_json(&serde_json::json!([["A", 2], ["torus", 1]])).unwrap();
        assert_eq!(t.torus, 1);
        assert_eq!(t.factors, vec![(Family::A, 2)]);
        assert_eq!(CartanType::from_json(&serde_json::json!("G2")).unwrap().to_string(), "G2");
        assert_eq!(t.to_json(), serde_json::json!([["A", 2], ["torus", 1]]));
    }

    #[test]
    fn q_closure_examples() {
        let a2 = rd("A2");
        let a1: RootSet = [0, 3].into();
        assert_eq!(a2.q_closure(&a1), a1);
        assert!(a2.is_q_closed(&a1));
        assert!(a2.q_closure(&RootSet::new()).is_empty());
        assert!(a2.is_q_closed(&a2.all_roots()));

        let b2 = rd("B2");
        // long roots of B2: ±α1, ±(α1 + 2α2)
        let long: RootSet = (0..8)
            .filter(|&i| {
                let r = &b2.roots()[i];
                r == &vec![1, 0] || r == &vec![-1, 0] || r == &vec![1, 2] || r == &vec![-1, -2]
            })
            .collect();
        assert_eq!(long.len(), 4);
        assert_eq!(b2.q_closure(&long), b2.all_roots());
        assert!(!b2.is_q_closed(&long));
    }

    #[test]
    fn type_a_ambient_coordinates() {
        let a2 = rd("A2");
        assert_eq!(a2.type_a_pair(0), Some((0, 1)));
        assert_eq!(a2.type_a_pair(1), Some((1, 2)));
        assert_eq!(a2.type_a_pair(2), Some((0, 2)));
        assert_eq!(a2.type_a_pair(5), Some((2, 0)));
        let mu: Vec<CycloNumber> = [2, -1, -1].iter().map(|&x| CycloNumber::from_i64(x)).collect();
        let c = a2.covector_from_ambient(&mu).unwrap();
        assert_eq!(c, vec![CycloNumber::from_i64(2), CycloNumber::from_i64(1)]);
        assert_eq!(a2.covector_to_ambient(&c).unwrap(), mu);
        // ⟨α1∨, c⟩ = μ1 − μ2
        assert_eq!(a2.pair_covector(0, &c), CycloNumber::from_i64(3));
        assert!(a2.pair_covector(1, &c).is_zero());
    }

    #[test]
    fn weyl_matrices_are_validated() {
        let a2 = rd("A2");
        let s = a2.simple_reflection(0);
        assert_eq!(a2.weyl_from_matrix(s.matrix().to_vec()).unwrap(), s);
        assert!(a2.weyl_from_matrix(vec![vec![2, 0], vec![0, 1]]).is_err());
        assert_eq!(a2.order(&a2.coxeter_element()), 3);
        let c = a2.coxeter_element();
        assert!(a2.compose(&c, &a2.inverse(&c)).is_identity());
    }

    #[test]
    fn conjugacy_class_counts() {
        for (ty, n) in [("A1", 2), ("A2", 3), ("A3", 5), ("B2", 5), ("G2", 6)] {
            assert_eq!(rd(ty).conjugacy_classes().unwrap().len(), n, "{ty}");
        }
    }
}
