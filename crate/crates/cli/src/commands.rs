//! One function per subcommand. Each returns the complete stdout text, so a
//! failing command never leaves a half-printed record behind.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::seq::IndexedRandom;
use serde::Serialize;

use heisenflag::curvature::CurvatureReport;
use heisenflag::exact::Mat;
use heisenflag::forms::{isometry_witness, matsuki_data, QuadraticSpace, WITNESS_TOLERANCE};
use heisenflag::heis::{
    act_on_metric, admissible_classes, canonical_signature, classify_metric, parabolic_sample_with,
    representative, table_row, HeisenbergAlgebra,
};
use heisenflag::matrix_file::parse_matrix;
use heisenflag::oracle::{class_of_invariants, enumerate_codim2_flags, metric_of_flag};
use heisenflag::sampling::rng_from_seed;
use heisenflag::Error;

use crate::flag_spec::parse_flag;

/// Largest dimension the `{−1,0,1}` grid is run for.
pub const ORACLE_MAX_DIM: usize = 6;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Malformed(_) => 1,
            Error::Precondition(_) | Error::OutOfScope(_) | Error::Singular => 2,
            Error::Inequivalent(_) | Error::WitnessFailure(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn one_line(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn float(x: f64) -> String {
    if x.abs() < 5e-13 {
        "0".into()
    } else {
        format!("{x:.12}")
    }
}

fn float_rows(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|&x| format!("{:>16}", float(x))).collect();
        let _ = writeln!(out, " {}", cells.join(""));
    }
    out
}

fn id_set(ids: &BTreeSet<u8>) -> String {
    let items: Vec<String> = ids.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Serialize)]
struct ClassificationRecord {
    p: usize,
    q: usize,
    swapped: bool,
    class_id: u8,
    center_signature: String,
    derived_refined: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    flat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scalar_curvature: Option<String>,
    notes: Vec<String>,
}

pub fn classify(path: &str, curvature: bool, record: bool) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?;
    let gram = parse_matrix(&text)?;
    let alg = HeisenbergAlgebra::new(gram.rows())?;
    let c = classify_metric(&alg, &gram)?;
    let mut notes = Vec::new();
    if c.swapped {
        notes.push(format!(
            "signature ({},{}) classified after negation as ({},{})",
            c.q, c.p, c.p, c.q
        ));
    }
    let report = if curvature {
        if c.q > 1 {
            notes.push("curvature values other than flatness are exploratory for q > 1".into());
        }
        Some(CurvatureReport::compute(alg.lie(), &gram)?)
    } else {
        None
    };

    let mut out = String::new();
    let _ = writeln!(out, "p: {}\nq: {}\nswapped: {}", c.p, c.q, c.swapped);
    let _ = writeln!(out, "class_id: {}", c.class.id);
    let _ = writeln!(out, "center_signature: {}", c.class.center_signature);
    let _ = writeln!(out, "derived_refined: {}", c.class.derived_refined);
    if let Some(r) = &report {
        write_curvature(&mut out, r, &gram)?;
    }
    let _ = writeln!(
        out,
        "notes: {}",
        if notes.is_empty() {
            "none".into()
        } else {
            notes.join("; ")
        }
    );
    if record {
        let rec = ClassificationRecord {
            p: c.p,
            q: c.q,
            swapped: c.swapped,
            class_id: c.class.id,
            center_signature: c.class.center_signature.to_string(),
            derived_refined: c.class.derived_refined.to_string(),
            flat: report.as_ref().map(|r| r.is_flat),
            scalar_curvature: report.as_ref().map(|r| r.scalar_curv.to_string()),
            notes,
        };
        let _ = writeln!(
            out,
            "record: {}",
            serde_json::to_string(&rec).expect("plain record serializes")
        );
    }
    Ok(Output::ok(out))
}

fn write_curvature(out: &mut String, r: &CurvatureReport, gram: &Mat) -> Result<(), Failure> {
    let _ = writeln!(out, "flat: {}", r.is_flat);
    let _ = writeln!(out, "scalar_curvature: {}", r.scalar_curv);
    let _ = writeln!(out, "ricci: {}", one_line(&r.ricci));
    let _ = writeln!(
        out,
        "ricci_operator: {}",
        one_line(&r.ricci_operator(gram)?)
    );
    match &r.soliton {
        Some(s) => {
            let _ = writeln!(
                out,
                "soliton: c = {}, derivation = {}",
                s.c,
                one_line(&s.derivation)
            );
            let _ = writeln!(out, "einstein: {}", s.is_einstein());
        }
        None => {
            let _ = writeln!(out, "soliton: none");
        }
    }
    Ok(())
}

pub fn table(p: usize, q: usize) -> CmdResult {
    let t = admissible_classes(p, q)?;
    let mut out = String::new();
    let _ = writeln!(out, "signature: ({p},{q})");
    if t.swapped {
        let _ = writeln!(out, "canonical: ({},{}) after negation", t.p, t.q);
    }
    let _ = writeln!(
        out,
        "{:>3}  {:<12} {:<10} derived",
        "id", "pattern", "center"
    );
    for c in &t.classes {
        let row = table_row(c.id).expect("admissible ids come from the table");
        let _ = writeln!(
            out,
            "{:>3}  {:<12} {:<10} {}",
            c.id,
            row.pattern(),
            c.center_signature.to_string(),
            c.derived_refined
        );
    }
    let _ = writeln!(out, "total: {}", t.classes.len());
    Ok(Output::ok(out))
}

struct Check {
    name: &'static str,
    failure: Option<String>,
    detail: String,
}

impl Check {
    fn line(&self) -> String {
        match &self.failure {
            None => format!("{}: PASS {}", self.name, self.detail),
            Some(f) => format!("{}: FAIL {f}", self.name),
        }
    }
}

pub fn verify(p: usize, q: usize, seed: u64, trials: usize) -> CmdResult {
    let table = admissible_classes(p, q)?;
    let (p, q, _) = canonical_signature(p, q);
    let n = p + q;
    let admissible: BTreeSet<u8> = table.ids().into_iter().collect();
    let mut out = String::new();
    let _ = writeln!(out, "signature: ({p},{q})");
    if table.swapped {
        let _ = writeln!(out, "note: checked in canonical form after negation");
    }
    let _ = writeln!(out, "admissible classes: {}", id_set(&admissible));
    let mut checks = Vec::new();

    if n <= ORACLE_MAX_DIM {
        let summary = enumerate_codim2_flags(p, q)?;
        let observed = summary.class_ids(p, q)?;
        let _ = writeln!(out, "observed classes: {}", id_set(&observed));
        let missing: BTreeSet<u8> = admissible.difference(&observed).copied().collect();
        let extra: BTreeSet<u8> = observed.difference(&admissible).copied().collect();
        checks.push(Check {
            name: "oracle completeness",
            failure: (!missing.is_empty() || !extra.is_empty()).then(|| {
                format!(
                    "class set: missing {}, unexpected {}",
                    id_set(&missing),
                    id_set(&extra)
                )
            }),
            detail: format!(
                "{} flags, {} orbits",
                summary.flags,
                summary.invariants.len()
            ),
        });

        let alg = HeisenbergAlgebra::new(n)?;
        let mut mismatch = None;
        for (inv, flags) in &summary.invariants {
            let id = class_of_invariants(p, q, inv)?;
            for f in flags {
                let got = classify_metric(&alg, &metric_of_flag(p, q, f))?.class.id;
                if got != id && mismatch.is_none() {
                    mismatch = Some(format!("class id: flag with invariants {inv} gives metric class {got}, expected {id}"));
                }
            }
        }
        checks.push(Check {
            name: "flag/metric agreement",
            failure: mismatch,
            detail: format!("{} orbits", summary.invariants.len()),
        });

        let tuples = summary.matsuki.len();
        let orbits = summary.invariants.len();
        checks.push(Check {
            name: "matsuki count",
            failure: (tuples != orbits)
                .then(|| format!("matsuki tuple count {tuples} vs invariant tuple count {orbits}")),
            detail: format!("{tuples} tuples = {orbits} orbits"),
        });
    } else {
        let _ = writeln!(
            out,
            "observed classes: skipped (grid only runs for n <= {ORACLE_MAX_DIM})"
        );
    }

    let alg = HeisenbergAlgebra::new(n)?;
    let ids = table.ids();
    let mut rng = rng_from_seed(seed);
    let mut failure = None;
    for trial in 0..trials {
        let id = *ids.choose(&mut rng).expect("tables are nonempty");
        let gram = representative(id, p, q)?;
        let g = parabolic_sample_with(n, &mut rng);
        let got = classify_metric(&alg, &act_on_metric(&g.matrix, &gram)?)?
            .class
            .id;
        if got != id {
            failure = Some(format!("class id: trial {trial} moved class {id} to {got}"));
            break;
        }
    }
    checks.push(Check {
        name: "parabolic invariance",
        failure,
        detail: format!("{trials} trials, seed {seed}"),
    });

    for c in &checks {
        let _ = writeln!(out, "{}", c.line());
    }
    let failed = checks.iter().filter(|c| c.failure.is_some()).count();
    let _ = writeln!(
        out,
        "result: {}",
        if failed == 0 {
            "PASS".to_string()
        } else {
            format!("FAIL ({failed} checks)")
        }
    );
    Ok(Output {
        text: out,
        code: if failed == 0 { 0 } else { 3 },
    })
}

pub fn witness(p: usize, q: usize, spec1: &str, spec2: &str, small: usize) -> CmdResult {
    let n = p + q;
    let f1 = parse_flag(spec1, n, small).map_err(Failure::input)?;
    let f2 = parse_flag(spec2, n, small).map_err(Failure::input)?;
    let space = QuadraticSpace::standard(p, q);
    let mut out = String::new();
    let _ = writeln!(out, "invariants_1: {}", space.flag_invariants(&f1)?);
    let _ = writeln!(out, "invariants_2: {}", space.flag_invariants(&f2)?);
    match isometry_witness(p, q, &f1, &f2) {
        Ok(w) => {
            let _ = writeln!(out, "equivalent: true");
            let _ = write!(out, "witness:\n{}", float_rows(&w.matrix));
            let _ = writeln!(out, "isometry_residual: {:.3e}", w.isometry_residual);
            let _ = writeln!(out, "small_distance: {:.3e}", w.small_distance);
            let _ = writeln!(out, "big_distance: {:.3e}", w.big_distance);
            let _ = writeln!(out, "tolerance: {WITNESS_TOLERANCE:e}");
            Ok(Output::ok(out))
        }
        Err(Error::Inequivalent(diff)) => {
            let _ = writeln!(out, "equivalent: false");
            let _ = writeln!(out, "inequivalent: {diff}");
            Ok(Output::ok(out))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn matsuki(p: usize, q: usize, spec: &str, small: usize) -> CmdResult {
    let f = parse_flag(spec, p + q, small).map_err(Failure::input)?;
    let space = QuadraticSpace::standard(p, q);
    let inv = space.flag_invariants(&f)?;
    let m = matsuki_data(&f, p, q)?;
    let mut out = String::new();
    let _ = writeln!(out, "invariants: {inv}");
    for (name, value) in [
        "c_plus", "c_minus", "c_zero", "d_plus", "d_minus", "d_zero", "d_pm",
    ]
    .iter()
    .zip(m.as_tuple())
    {
        let _ = writeln!(out, "{name}: {value}");
    }
    let _ = writeln!(out, "matsuki: {m}");
    Ok(Output::ok(out))
}

pub fn curvature(p: usize, q: usize, class: Option<u8>) -> CmdResult {
    let table = admissible_classes(p, q)?;
    let ids = match class {
        Some(id) if table.contains(id) => vec![id],
        Some(id) => {
            return Err(Failure {
                code: 2,
                message: format!("class {id} is not admissible for signature ({p},{q})"),
            })
        }
        None => table.ids(),
    };
    let alg = HeisenbergAlgebra::new(p + q)?;
    let mut out = String::new();
    let _ = writeln!(out, "signature: ({p},{q})");
    for id in ids {
        let gram = representative(id, p, q)?;
        let c = classify_metric(&alg, &gram)?;
        let report = CurvatureReport::compute(alg.lie(), &gram)?;
        let _ = writeln!(out, "\nclass: {id}");
        let _ = writeln!(out, "center_signature: {}", c.class.center_signature);
        let _ = writeln!(out, "derived_refined: {}", c.class.derived_refined);
        let _ = writeln!(out, "metric: {}", one_line(&gram));
        write_curvature(&mut out, &report, &gram)?;
    }
    Ok(Output::ok(out))
}
