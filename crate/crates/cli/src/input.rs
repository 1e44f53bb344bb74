//! Input documents and option parsing. Everything here runs before any
//! computation starts.

use std::io::Read;

use polarium::polar::PolarSpec;
use polarium::rootdata::{CartanType, RootDatum, RootSet};
use polarium::tails::{LaurentWindow, Tail};
use polarium::tori::TorusSpec;
use polarium::{Error, Rational};
use serde::de::DeserializeOwned;
use serde::Deserialize;

const MODULE: &str = "cli";

/// `classify` input: a tail, optionally on a twisted torus.
#[derive(Deserialize)]
pub struct ClassifyDoc {
    #[serde(rename = "type")]
    pub type_: Option<serde_json::Value>,
    pub torus: Option<TorusSpec>,
    pub lambda: Tail,
}

/// A polar datum, as produced by `classify`, `epipelagic` and `homogeneous`.
#[derive(Deserialize)]
pub struct DatumDoc {
    #[serde(rename = "type")]
    pub type_: Option<serde_json::Value>,
    pub torus: TorusSpec,
    pub levi: RootSet,
    pub lambda: Tail,
    /// Optional grading point, one rational string per coordinate.
    pub point: Option<Vec<String>>,
}

impl DatumDoc {
    pub fn spec(&self) -> PolarSpec {
        PolarSpec {
            torus: self.torus.clone(),
            levi: self.levi.clone(),
            lambda: self.lambda.clone(),
        }
    }
}

/// `partition-check` input: the torus classes to sample from.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    #[serde(rename = "type")]
    pub type_: Option<serde_json::Value>,
    pub tori: Option<Vec<TorusSpec>>,
}

/// `verify-sl2` input: an explicit grid.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    pub grid: Vec<LaurentWindow>,
}

fn read_source(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::invalid(MODULE, format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::invalid(MODULE, format!("cannot read {path}: {e}")))
    }
}

/// Reads and decodes `--input`, or `None` when the flag is absent.
pub fn load<T: DeserializeOwned>(path: Option<&str>) -> Result<Option<T>, Error> {
    let Some(path) = path else { return Ok(None) };
    let text = read_source(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::invalid(MODULE, format!("malformed JSON: {e}")))?;
    serde_json::from_value(value)
        .map(Some)
        .map_err(|e| Error::invalid(MODULE, format!("input does not match the schema: {e}")))
}

pub fn require<T: DeserializeOwned>(path: Option<&str>, command: &str) -> Result<T, Error> {
    load(path)?.ok_or_else(|| Error::invalid(MODULE, format!("{command} needs --input FILE or --input -")))
}

fn flag_type(raw: &str) -> Result<CartanType, Error> {
    let raw = raw.trim();
    if raw.starts_with('[') {
        let v: serde_json::Value =
            serde_json::from_str(raw).map_err(|e| Error::invalid(MODULE, format!("malformed --type: {e}")))?;
        CartanType::from_json(&v)
    } else {
        raw.parse()
    }
}

/// The root datum named by `--type` and/or the document's `type` field,
/// which must agree when both are present.
pub fn resolve_type(flag: Option<&str>, doc: Option<&serde_json::Value>) -> Result<CartanType, Error> {
    let from_flag = flag.map(flag_type).transpose()?;
    let from_doc = doc.map(CartanType::from_json).transpose()?;
    match (from_flag, from_doc) {
        (Some(a), Some(b)) if a != b => Err(Error::invalid(
            MODULE,
            format!("--type {a} disagrees with the input type {b}"),
        )),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::invalid(MODULE, "no root datum: pass --type or a \"type\" field")),
    }
}

pub fn root_datum(ty: &CartanType) -> Result<RootDatum, Error> {
    RootDatum::build(ty)
}

pub fn rational(s: &str) -> Result<Rational, Error> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::invalid(MODULE, format!("bad rational {s:?}")))
}

pub fn window(raw: Option<&str>) -> Result<Option<(Rational, Rational)>, Error> {
    let Some(raw) = raw else { return Ok(None) };
    let (lo, hi) = raw
        .split_once(':')
        .ok_or_else(|| Error::invalid(MODULE, format!("window must be LO:HI, got {raw:?}")))?;
    let (lo, hi) = (rational(lo)?, rational(hi)?);
    if lo > hi {
        return Err(Error::invalid(MODULE, format!("empty window {raw}")));
    }
    Ok(Some((lo, hi)))
}

/// How the grading point was specified.
pub enum Point {
    Zero,
    RhoOver(u64),
    Coords(Vec<Rational>),
}

pub fn point(flag: Option<&str>, doc: Option<&[String]>) -> Result<Option<Point>, Error> {
    if let Some(raw) = flag {
        let raw = raw.trim();
        if raw == "0" {
            return Ok(Some(Point::Zero));
        }
        if let Some(m) = raw.strip_prefix("rho/") {
            let m: u64 = m
                .parse()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::invalid(MODULE, format!("bad point {raw:?}")))?;
            return Ok(Some(Point::RhoOver(m)));
        }
        let coords = raw.split(',').map(rational).collect::<Result<_, _>>()?;
        return Ok(Some(Point::Coords(coords)));
    }
    doc.map(|c| c.iter().map(|s| rational(s)).collect::<Result<_, _>>().map(Point::Coords))
        .transpose()
}
