use std::collections::BTreeMap;

use polarium::chevmap::{default_grid, verify_sl2};
use polarium::looplie::{
    bracket_closure, build_j_lattice, moveability_check, psi_lambda_check, symplectic_form, GradedLadder, Grading,
    JLattice, MoveabilityReport, Variant,
};
use polarium::polar::{classify, epipelagic_datum, homogeneous_datum, partition_check, PolarDatum, SamplerConfig};
use polarium::rootdata::{CartanType, RootDatum};
use polarium::tori::{list_torus_classes, regular_numbers, TorusClass};
use polarium::yuseq::yu_ladder;
use polarium::{Error, ErrorKind, Rational};
use serde_json::{json, Value};

use crate::input::{self, ClassifyDoc, DatumDoc, GridDoc, PartitionDoc, Point};
use crate::table::{compact, grid, pairs};
use crate::{Command, Options, Outcome, VariantArg};

const MODULE: &str = "cli";

pub fn run(command: &Command, opts: &Options) -> Result<Outcome, Error> {
    match command {
        Command::Classify => run_classify(opts),
        Command::YuSequence => run_yu(opts),
        Command::Epipelagic { m } => {
            let (ty, rd) = flag_datum(opts)?;
            let d = epipelagic_datum(&rd, *m)?;
            Ok(datum_outcome(&ty, &d))
        }
        Command::Homogeneous { m, i } => {
            let (ty, rd) = flag_datum(opts)?;
            let d = homogeneous_datum(&rd, *m, *i)?;
            Ok(datum_outcome(&ty, &d))
        }
        Command::Jlattice { point } => run_jlattice(opts, point.as_deref()),
        Command::VerifySl2 { grid } => run_sl2(opts, grid),
        Command::RegularNumbers => run_regular(opts),
        Command::ListTori => run_tori(opts),
        Command::PartitionCheck => run_partition(opts),
        Command::Moveability { point, variant, lower } => run_moveability(opts, point.as_deref(), *variant, *lower),
    }
}

fn flag_datum(opts: &Options) -> Result<(CartanType, RootDatum), Error> {
    let ty = input::resolve_type(opts.type_.as_deref(), None)?;
    let rd = input::root_datum(&ty)?;
    Ok((ty, rd))
}

fn datum_json(ty: &CartanType, d: &PolarDatum) -> Value {
    let mut v = serde_json::to_value(d.to_spec()).expect("datum");
    v["type"] = ty.to_json();
    v["toral"] = json!(d.is_toral());
    v
}

fn datum_table(ty: &CartanType, d: &PolarDatum) -> String {
    let mut rows = vec![
        ("type", ty.to_string()),
        ("torus order", d.torus().m().to_string()),
        ("torus w", compact(d.torus().w().matrix())),
        ("levi", compact(d.levi())),
        ("toral", d.is_toral().to_string()),
    ];
    for (q, c) in d.lambda().terms() {
        rows.push(("term", format!("t^-{q}: {}", compact(c))));
    }
    pairs(&rows)
}

fn datum_outcome(ty: &CartanType, d: &PolarDatum) -> Outcome {
    Outcome {
        json: datum_json(ty, d),
        table: datum_table(ty, d),
        violations: false,
    }
}

fn run_classify(opts: &Options) -> Result<Outcome, Error> {
    let doc: ClassifyDoc = input::require(opts.input.as_deref(), "classify")?;
    let ty = input::resolve_type(opts.type_.as_deref(), doc.type_.as_ref())?;
    let rd = input::root_datum(&ty)?;
    let tc = match &doc.torus {
        Some(spec) => spec.build(&rd)?,
        None => TorusClass::split(&rd),
    };
    let d = classify(&rd, &tc, &doc.lambda)?;
    Ok(datum_outcome(&ty, &d))
}

fn load_datum(opts: &Options, command: &str) -> Result<(CartanType, RootDatum, DatumDoc, PolarDatum), Error> {
    let doc: DatumDoc = input::require(opts.input.as_deref(), command)?;
    let ty = input::resolve_type(opts.type_.as_deref(), doc.type_.as_ref())?;
    let rd = input::root_datum(&ty)?;
    let d = doc.spec().build(&rd)?;
    Ok((ty, rd, doc, d))
}

fn run_yu(opts: &Options) -> Result<Outcome, Error> {
    let (ty, rd, _, d) = load_datum(opts, "yu-sequence")?;
    let y = yu_ladder(&rd, &d)?;
    let mut json = serde_json::to_value(&y).expect("ladder");
    json["type"] = ty.to_json();
    let rows: Vec<Vec<String>> = (0..y.levels.len())
        .map(|j| {
            let r = y.breaks.get(j).map_or("-".to_string(), |r| r.to_string());
            let s = y.half_depths.get(j).map_or("-".to_string(), |s| s.to_string());
            vec![
                j.to_string(),
                r,
                s,
                y.levels[j].len().to_string(),
                compact(&y.components[j]),
            ]
        })
        .collect();
    Ok(Outcome {
        json,
        table: grid(&["level", "break", "half", "roots", "component"], &rows),
        violations: false,
    })
}

/// The graded ladder of a type A datum: the split realization at the
/// requested point, or the homogeneous realization for the epipelagic datum
/// on the Coxeter class.
fn graded_ladder(rd: &RootDatum, doc: &DatumDoc, d: &PolarDatum, point: Option<&str>) -> Result<(GradedLadder, &'static str), Error> {
    let n = rd
        .type_a_size()
        .ok_or_else(|| Error::new(ErrorKind::UnsupportedFeature, MODULE, "lattices are built in type A only"))?;
    let point = input::point(point, doc.point.as_deref())?;
    if d.torus().w().is_identity() {
        let grading = match point {
            None | Some(Point::Zero) => Grading::hyperspecial(n)?,
            Some(Point::RhoOver(m)) => Grading::rho_over(n, m)?,
            Some(Point::Coords(x)) => Grading::new(x)?,
        };
        let y = yu_ladder(rd, d)?;
        return Ok((GradedLadder::split(rd, d, &y, grading)?, "split"));
    }
    let coxeter = d.torus().m() == n as u64
        && d.levi().is_empty()
        && d.lambda().terms().len() == 1
        && d.lambda().terms().keys().next() == Some(&Rational::new(1.into(), (n as i64).into()));
    if !coxeter {
        return Err(Error::new(
            ErrorKind::UnsupportedFeature,
            MODULE,
            "nonsplit lattices are available for the epipelagic datum on the Coxeter class only",
        ));
    }
    if !matches!(point, None | Some(Point::RhoOver(_))) || matches!(point, Some(Point::RhoOver(m)) if m != n as u64) {
        return Err(Error::invalid(MODULE, format!("the epipelagic lattice lives at rho/{n}")));
    }
    Ok((GradedLadder::epipelagic(n)?, "homogeneous"))
}

fn run_jlattice(opts: &Options, point: Option<&str>) -> Result<Outcome, Error> {
    let window = input::window(opts.window.as_deref())?;
    let (ty, rd, doc, d) = load_datum(opts, "jlattice")?;
    let (lad, realization) = graded_ladder(&rd, &doc, &d, point)?;
    let lat = build_j_lattice(&lad, &BTreeMap::new())?;
    let closure = bracket_closure(&lat, window.clone())?;
    let psi = psi_lambda_check(&lat, window)?;
    let mut forms = Vec::new();
    for j in 1..lad.num_levels() {
        match symplectic_form(&lad, j) {
            Ok(f) => forms.push(f),
            Err(e) if e.kind == ErrorKind::InvalidArgument => {}
            Err(e) => return Err(e),
        }
    }
    let level_rows: Vec<Vec<String>> = lat
        .levels()
        .iter()
        .enumerate()
        .map(|(j, l)| {
            vec![
                j.to_string(),
                l.from.to_string(),
                l.lagrangian.as_ref().map_or(0, |b| b.len()).to_string(),
            ]
        })
        .collect();
    let mut table = pairs(&[("type", ty.to_string()), ("realization", realization.to_string())]);
    table.push('\n');
    table.push_str(&grid(&["level", "from", "lagrangian"], &level_rows));
    table.push('\n');
    table.push_str(&pairs(&[
        ("closure", format!("{} pairs, {} failures", closure.pairs, closure.failure_count)),
        ("psi", format!("{} pairs, {} failures", psi.pairs, psi.failure_count)),
    ]));
    let violations = !closure.ok || !psi.ok;
    Ok(Outcome {
        json: json!({
            "type": ty.to_json(),
            "realization": realization,
            "lattice": lat,
            "forms": forms,
            "closure": closure,
            "psi": psi,
        }),
        table,
        violations,
    })
}

fn run_sl2(opts: &Options, name: &str) -> Result<Outcome, Error> {
    let points = match input::load::<GridDoc>(opts.input.as_deref())? {
        Some(doc) => doc.grid,
        None if name == "default" => default_grid(),
        None => return Err(Error::invalid(MODULE, format!("unknown grid {name:?}"))),
    };
    let report = verify_sl2(&points);
    let mut table = pairs(&[
        ("points", report.points.to_string()),
        ("split-toral", report.strata.split.to_string()),
        ("nonsplit-toral", report.strata.nonsplit.to_string()),
        ("G-zero", report.strata.g_zero.to_string()),
        ("agreements", report.agreements.to_string()),
        ("violations", report.violations.len().to_string()),
    ]);
    for v in &report.violations {
        table.push_str(&format!("  {}: {}\n", compact(&v.input), v.reason));
    }
    Ok(Outcome {
        json: serde_json::to_value(&report).expect("report"),
        table,
        violations: !report.violations.is_empty(),
    })
}

fn run_regular(opts: &Options) -> Result<Outcome, Error> {
    let (ty, rd) = flag_datum(opts)?;
    let r = regular_numbers(&rd)?;
    let table = pairs(&[
        ("type", ty.to_string()),
        ("regular", compact(&r.all)),
        ("elliptic", compact(&r.elliptic)),
    ]);
    Ok(Outcome {
        json: json!({ "type": ty.to_json(), "all": r.all, "elliptic": r.elliptic }),
        table,
        violations: false,
    })
}

fn run_tori(opts: &Options) -> Result<Outcome, Error> {
    let (ty, rd) = flag_datum(opts)?;
    let tori = list_torus_classes(&rd)?;
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    for tc in &tori {
        let dims = tc.eigenspace_dims();
        let regular = tc.is_springer_regular(&rd);
        docs.push(json!({
            "m": tc.m(),
            "w": tc.w().matrix(),
            "eigenspace_dims": dims,
            "elliptic": tc.is_elliptic(),
            "springer_regular": regular,
        }));
        rows.push(vec![
            tc.m().to_string(),
            compact(tc.w().matrix()),
            compact(&dims),
            tc.is_elliptic().to_string(),
            regular.to_string(),
        ]);
    }
    Ok(Outcome {
        json: json!({ "type": ty.to_json(), "tori": docs }),
        table: grid(&["m", "w", "eigenspaces", "elliptic", "regular"], &rows),
        violations: false,
    })
}

fn run_partition(opts: &Options) -> Result<Outcome, Error> {
    let doc = input::load::<PartitionDoc>(opts.input.as_deref())?;
    let ty = input::resolve_type(opts.type_.as_deref(), doc.as_ref().and_then(|d| d.type_.as_ref()))?;
    let rd = input::root_datum(&ty)?;
    let mut cfg = SamplerConfig::default();
    if let Some(s) = opts.seed {
        cfg.seed = s;
    }
    if let Some(n) = opts.samples {
        cfg.samples = n;
    }
    let tori = match doc.and_then(|d| d.tori) {
        Some(specs) => Some(specs.iter().map(|s| s.build(&rd)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let report = partition_check(&rd, tori, &cfg)?;
    let mut table = pairs(&[
        ("type", ty.to_string()),
        ("samples", report.samples.to_string()),
        ("seed", report.seed.to_string()),
        ("tori", report.tori.len().to_string()),
        ("G0", report.strata.g_zero.to_string()),
        ("toral", report.strata.toral.to_string()),
        ("intermediate", report.strata.intermediate.to_string()),
        ("separated pairs", report.separated_pairs.to_string()),
        ("violations", report.violations.len().to_string()),
    ]);
    for v in &report.violations {
        table.push_str(&format!("  sample {} {}: {}\n", v.sample, v.check, v.detail));
    }
    let mut json = serde_json::to_value(&report).expect("report");
    json["type"] = ty.to_json();
    Ok(Outcome {
        json,
        table,
        violations: !report.violations.is_empty(),
    })
}

fn run_moveability(
    opts: &Options,
    point: Option<&str>,
    variant: VariantArg,
    lower: Option<usize>,
) -> Result<Outcome, Error> {
    let (ty, rd, doc, d) = load_datum(opts, "moveability")?;
    let (lad, realization) = graded_ladder(&rd, &doc, &d, point)?;
    let mut lat: JLattice = build_j_lattice(&lad, &BTreeMap::new())?;
    if let Some(j) = lower {
        if j == 0 || j >= lad.num_levels() {
            return Err(Error::invalid(
                MODULE,
                format!("--lower takes a level in 1..{}", lad.num_levels()),
            ));
        }
        lat = lat.lowered(j);
    }
    let variants = match variant {
        VariantArg::J => vec![Variant::J],
        VariantArg::K => vec![Variant::K],
        VariantArg::Both => vec![Variant::J, Variant::K],
    };
    let reports: Vec<MoveabilityReport> = variants
        .iter()
        .map(|&v| moveability_check(&lat, v))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .flat_map(|r| {
            r.rows.iter().map(move |row| {
                vec![
                    format!("{:?}", r.variant),
                    row.level.to_string(),
                    row.degree.to_string(),
                    row.partner.to_string(),
                    row.left_dim.to_string(),
                    row.right_dim.to_string(),
                    row.rank.to_string(),
                ]
            })
        })
        .collect();
    let violations = reports.iter().any(|r| !r.full_rank);
    Ok(Outcome {
        json: json!({
            "type": ty.to_json(),
            "realization": realization,
            "lowered": lower,
            "reports": reports,
        }),
        table: grid(&["variant", "level", "degree", "partner", "left", "right", "rank"], &rows),
        violations,
    })
}
