//! Command dispatch: each command runs a library pipeline and returns the
//! report, the conclusions with their provenance, and an exit status.

use std::path::PathBuf;

use relaus::algebra::Presentation;
use relaus::homology::{global_dim, gorenstein_dimension, is_injective, Dim};
use relaus::krull_schmidt::{
    enumerate_indecomposables, is_indecomposable, EnumerationMode, IndecomposableCatalog,
};
use relaus::module::{hom_dim, Module};
use relaus::par::Execution;
use relaus::recollement::{build_setup, CheckStatus, SetupBudget, SubcategorySetup};
use relaus::tilting::{
    check_tilting, combined_status, default_samples, gprj_pipeline, morita_invariants, theorem41_audit,
    PipelineBudget, Verdict,
};
use relaus::{build_algebra, Algebra, Error, Field, FieldSpec, PrimeField, Rationals, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{
    catalog_from_file, catalog_to_file, module_from_file, module_to_file, presentation_digest, read_catalog_file,
    read_module_file, read_presentation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Indecomposables,
    Auslander,
    Zeta,
    CheckTilting,
    TtfAudit,
    Gorenstein,
    GprjPipeline,
    MoritaCompare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Knitting,
    Bounded,
}

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 2,
    Unverifiable = 3,
    InputError = 4,
    Critical = 5,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Input(_)
            | Error::Dimension(_)
            | Error::FieldMismatch(..)
            | Error::AlgebraMismatch
            | Error::NotIntertwining(_)
            | Error::NotAdmissible(_)
            | Error::Unsupported(_) => Status::InputError,
            Error::Hypothesis(_) => Status::Negative,
            Error::Budget(_) => Status::Unverifiable,
            Error::Internal(_) => Status::Critical,
        }
    }

    fn worst(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub command: Command,
    pub algebra: PathBuf,
    pub algebra2: Option<PathBuf>,
    pub module: Option<PathBuf>,
    /// `None` means enumerate automatically.
    pub catalog: Option<PathBuf>,
    pub mode: Mode,
    pub max_dim: usize,
    pub max_steps: usize,
    pub ext_bound: usize,
    pub samples: usize,
    pub export: Option<PathBuf>,
    pub sequential: bool,
}

impl Options {
    pub fn new(command: Command, algebra: impl Into<PathBuf>) -> Self {
        Options {
            command,
            algebra: algebra.into(),
            algebra2: None,
            module: None,
            catalog: None,
            mode: Mode::Knitting,
            max_dim: 8,
            max_steps: 10_000,
            ext_bound: 6,
            samples: 20,
            export: None,
            sequential: false,
        }
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn flags(&self) -> Value {
        json!({
            "catalog": self.catalog.as_ref().map_or("auto".to_string(), |p| p.display().to_string()),
            "mode": self.mode,
            "max_dim": self.max_dim,
            "max_steps": self.max_steps,
            "ext_bound": self.ext_bound,
            "samples": self.samples,
        })
    }
}

/// A conclusion together with the status of the hypotheses it rests on.
#[derive(Clone, Debug, Serialize)]
pub struct Conclusion {
    pub claim: String,
    pub holds: bool,
    pub hypotheses: Vec<String>,
    pub provenance: CheckStatus,
}

/// Everything a command produces except the timing block.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub input_digest: String,
    pub field: FieldSpec,
    pub report: Value,
    pub conclusions: Vec<Conclusion>,
    pub verdict: String,
    pub status: Status,
}

impl Outcome {
    /// The certificate without its timing block.
    pub fn certificate(&self, opts: &Options) -> Value {
        json!({
            "tool": { "name": "relaus", "version": env!("CARGO_PKG_VERSION") },
            "command": opts.command,
            "flags": opts.flags(),
            "input_digest": self.input_digest,
            "field": self.field.to_string(),
            "report": self.report,
            "conclusions": self.conclusions,
            "verdict": self.verdict,
            "exit_code": self.status.code(),
        })
    }
}

pub fn run(opts: &Options) -> Result<Outcome> {
    let pres = read_presentation(&opts.algebra)?;
    match pres.field {
        FieldSpec::Rational => run_over(&Rationals, &pres, opts),
        FieldSpec::Prime { p } => run_over(&PrimeField::new(p)?, &pres, opts),
    }
}

fn run_over<K: Field>(f: &K, pres: &Presentation, opts: &Options) -> Result<Outcome> {
    let a = build_algebra(f, pres)?;
    let (report, conclusions, verdict, status) = match opts.command {
        Command::Indecomposables => indecomposables(&a, opts)?,
        Command::Auslander => auslander(&a, opts)?,
        Command::Zeta => zeta(&a, opts)?,
        Command::CheckTilting => tilting(&a, opts)?,
        Command::TtfAudit => ttf_audit(&a, opts)?,
        Command::Gorenstein => gorenstein(&a, opts)?,
        Command::GprjPipeline => gprj(&a, opts)?,
        Command::MoritaCompare => morita_compare(&a, opts)?,
    };
    Ok(Outcome { input_digest: presentation_digest(pres), field: pres.field, report, conclusions, verdict, status })
}

type Parts = (Value, Vec<Conclusion>, String, Status);

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn catalog<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<IndecomposableCatalog<K>> {
    match &opts.catalog {
        Some(path) => catalog_from_file(a, &read_catalog_file(path)?),
        None => {
            let mode = match opts.mode {
                Mode::Knitting => EnumerationMode::Knitting,
                Mode::Bounded => EnumerationMode::Bounded,
            };
            enumerate_indecomposables(a, mode, opts.max_dim, opts.max_steps, opts.exec())
        }
    }
}

fn catalog_summary<K: Field>(c: &IndecomposableCatalog<K>) -> Result<Value> {
    let entries = c
        .modules
        .iter()
        .map(|m| {
            Ok(json!({
                "dim": m.dim(),
                "dimension_vector": m.dimension_vector(),
                "end_dim": hom_dim(m, m)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "size": c.len(),
        "complete": c.complete,
        "method": c.method,
        "note": c.note,
        "entries": entries,
    }))
}

fn setup<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<SubcategorySetup<K>> {
    let cat = catalog(a, opts)?;
    build_setup(&cat, SetupBudget { ext_bound: opts.ext_bound, ..SetupBudget::default() })
}

fn flag_names() -> [&'static str; 4] {
    ["contains_projectives", "syzygy_closed", "submodule_closed", "left_perp"]
}

fn flag_status<K: Field>(s: &SubcategorySetup<K>, name: &str) -> CheckStatus {
    let f = &s.flags;
    match name {
        "contains_projectives" => f.contains_projectives.status,
        "syzygy_closed" => f.syzygy_closed.status,
        "submodule_closed" => f.submodule_closed.status,
        "left_perp" => f.left_perp.status,
        _ => unreachable!("unknown flag {name}"),
    }
}

fn conclusion<K: Field>(s: &SubcategorySetup<K>, claim: &str, holds: bool, hyps: &[&str]) -> Conclusion {
    let mut statuses: Vec<CheckStatus> = hyps.iter().map(|h| flag_status(s, h)).collect();
    if !s.catalog.complete && s.catalog.method != relaus::krull_schmidt::CatalogMethod::Supplied {
        statuses.push(CheckStatus::Assumed);
    }
    Conclusion {
        claim: claim.into(),
        holds,
        hypotheses: hyps.iter().map(|h| h.to_string()).collect(),
        provenance: combined_status(&statuses),
    }
}

/// Exit status of a set of conclusions the theory guarantees under their
/// hypotheses: a failure under verified hypotheses is an internal
/// inconsistency.
fn judge(cs: &[Conclusion]) -> Status {
    let mut st = Status::Ok;
    for c in cs {
        if c.holds {
            continue;
        }
        st = st.worst(match c.provenance {
            CheckStatus::Verified => Status::Critical,
            CheckStatus::Assumed => Status::Unverifiable,
            CheckStatus::Failed => Status::Negative,
        });
    }
    st
}

fn gamma_summary<K: Field>(s: &SubcategorySetup<K>, bound: usize) -> Result<Value> {
    let g = s.gamma();
    let ps: Vec<Module<K>> = (0..g.num_simples()).map(|i| Module::projective(g, i)).collect();
    let cartan = ps
        .iter()
        .map(|p| ps.iter().map(|q| hom_dim(p, q)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "dim": g.dim(),
        "simples": g.num_simples(),
        "structure_digest": g.digest(),
        "cartan": cartan,
        "global_dim": global_dim(g, bound)?,
        "invariants": morita_invariants(g)?,
    }))
}

fn indecomposables<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let c = catalog(a, opts)?;
    let file = catalog_to_file(&c)?;
    if let Some(path) = &opts.export {
        let text = serde_json::to_string_pretty(&file).expect("catalogs serialize");
        std::fs::write(path, text + "\n").map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    let mut report = catalog_summary(&c)?;
    report["modules"] = to_value(&file.modules);
    let status = if c.complete || c.method != relaus::krull_schmidt::CatalogMethod::Knitting {
        Status::Ok
    } else {
        Status::Unverifiable
    };
    let verdict = format!("{} indecomposables{}", c.len(), if c.complete { "" } else { " (not proven complete)" });
    Ok((report, vec![], verdict, status))
}

fn auslander<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let s = setup(a, opts)?;
    let report = json!({
        "catalog": catalog_summary(&s.catalog)?,
        "flags": s.flags,
        "projective_classes": s.projective_classes,
        "gamma": gamma_summary(&s, opts.ext_bound)?,
    });
    let verdict = format!("relative Auslander algebra of dimension {}", s.gamma().dim());
    Ok((report, vec![], verdict, Status::Ok))
}

fn zeta<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let path = opts.module.as_ref().ok_or_else(|| Error::Input("zeta needs --module".into()))?;
    let m = module_from_file(a, &read_module_file(path)?)?;
    let s = setup(a, opts)?;
    let z = s.zeta(&m)?;
    let report = json!({
        "module": module_to_file(&m)?,
        "dims": z.certificate.dims,
        "certificate": z.certificate,
        "zeta_dimension_vector": z.zeta.dimension_vector(),
        "zeta_indecomposable": if m.is_zero() { false } else { is_indecomposable(&z.zeta)? },
        "module_indecomposable": if m.is_zero() { false } else { is_indecomposable(&m)? },
        "flags": s.flags,
    });
    let c = Conclusion {
        claim: "four-term sequence exact with end terms in mod0".into(),
        holds: z.certificate.ok(),
        hypotheses: vec![],
        provenance: CheckStatus::Verified,
    };
    let verdict = if c.holds { "exact" } else { "not exact" }.to_string();
    let status = judge(std::slice::from_ref(&c));
    Ok((report, vec![c], verdict, status))
}

fn tilting<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let s = setup(a, opts)?;
    let z = s.zeta_generator()?;
    let r = check_tilting(&z.zeta, opts.ext_bound)?;
    let base = ["contains_projectives", "syzygy_closed", "left_perp"];
    let all = flag_names();
    let cs = vec![
        conclusion(&s, "T is tilting", r.tilting, &base),
        conclusion(&s, "T is cotilting", r.cotilting, &all),
    ];
    let mut status = judge(&cs);
    if status == Status::Ok && r.verdict != Verdict::Both {
        status = Status::Negative;
    }
    let report = json!({
        "catalog": catalog_summary(&s.catalog)?,
        "flags": s.flags,
        "gamma": gamma_summary(&s, opts.ext_bound)?,
        "tilting": r,
    });
    Ok((report, cs, to_value(&r.verdict).as_str().unwrap_or_default().to_string(), status))
}

fn ttf_audit<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let s = setup(a, opts)?;
    let t = s.zeta_generator()?.zeta;
    let samples = default_samples(&s, opts.max_dim, opts.samples)?;
    let r = theorem41_audit(&s, &t, &samples, opts.ext_bound, opts.exec())?;
    let c = conclusion(&s, "no counterexamples among the samples", r.counterexamples.is_empty(), &flag_names());
    let status = judge(std::slice::from_ref(&c));
    let verdict = format!("{} samples, {} counterexamples", r.samples.len(), r.counterexamples.len());
    let report = json!({
        "flags": s.flags,
        "sample_design": "regular, indecomposable projectives, injectives and simples of Gamma, zeta, K and L of each catalog entry, then seeded random extensions",
        "audit": r,
    });
    Ok((report, vec![c], verdict, status))
}

fn gorenstein<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let g = gorenstein_dimension(a, opts.ext_bound)?;
    let gl = global_dim(a, opts.ext_bound)?;
    let report = json!({
        "gorenstein": g,
        "global_dim": gl,
        "self_injective": is_injective(&Module::regular(a)),
        "invariants": morita_invariants(a)?,
    });
    let status = match g.gdim {
        Dim::AtLeast(_) => Status::Unverifiable,
        _ => Status::Ok,
    };
    Ok((report, vec![], format!("Gorenstein dimension {}", g.gdim), status))
}

fn pipeline_budget(opts: &Options) -> PipelineBudget {
    PipelineBudget { max_dim: opts.max_dim, max_steps: opts.max_steps, ext_bound: opts.ext_bound }
}

fn gprj<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let (r, s) = gprj_pipeline(a, pipeline_budget(opts), opts.exec())?;
    let mut cs = Vec::new();
    if let (Some(s), Some(t)) = (&s, &r.tilting) {
        cs.push(conclusion(s, "T is tilting and cotilting", t.verdict == Verdict::Both, &flag_names()));
    }
    if let Some(aus) = &r.cm_auslander_gprj {
        if aus.global_dim.finite().is_some() {
            // finite global dimension forces every Gorenstein projective to be projective
            cs.push(Conclusion {
                claim: "Gorenstein projectives over the CM Auslander algebra are projective".into(),
                holds: aus.gprj_equals_prj,
                hypotheses: vec!["finite global dimension".into()],
                provenance: if aus.catalog_complete { CheckStatus::Verified } else { CheckStatus::Assumed },
            });
        }
    }
    let status = if !r.applicable {
        match r.gorenstein.gdim {
            Dim::AtLeast(_) => Status::Unverifiable,
            _ => Status::Negative,
        }
    } else if !r.catalog_complete {
        Status::Unverifiable.worst(judge(&cs))
    } else {
        judge(&cs)
    };
    let verdict = if r.applicable {
        format!("Gorenstein dimension {}, CM-free: {}", r.gorenstein.gdim, r.cm_free)
    } else {
        format!("Gorenstein dimension {} exceeds 1", r.gorenstein.gdim)
    };
    Ok((to_value(&r), cs, verdict, status))
}

fn morita_compare<K: Field>(a: &Algebra<K>, opts: &Options) -> Result<Parts> {
    let path = opts.algebra2.as_ref().ok_or_else(|| Error::Input("morita-compare needs --algebra2".into()))?;
    let pres2 = read_presentation(path)?;
    if pres2.field != a.field().spec() {
        return Err(Error::FieldMismatch(a.field().spec().to_string(), pres2.field.to_string()));
    }
    let b = build_algebra(a.field(), &pres2)?;
    let budget = pipeline_budget(opts);
    let (r1, _) = gprj_pipeline(a, budget, opts.exec())?;
    let (r2, _) = gprj_pipeline(&b, budget, opts.exec())?;
    let (i1, i2) = match (&r1.cm_auslander_invariants, &r2.cm_auslander_invariants) {
        (Some(x), Some(y)) => (x.clone(), y.clone()),
        _ => {
            let report = json!({ "first": r1, "second": r2 });
            return Ok((report, vec![], "pipeline not applicable".into(), Status::Negative));
        }
    };
    let distinguished = i1 != i2;
    let report = json!({
        "first": { "input_digest": presentation_digest(&read_presentation(&opts.algebra)?), "invariants": i1, "gorenstein": r1.gorenstein },
        "second": { "input_digest": presentation_digest(&pres2), "invariants": i2, "gorenstein": r2.gorenstein },
        "distinguished": distinguished,
    });
    // equal invariants never prove a Morita equivalence
    let verdict = if distinguished { "distinguished" } else { "not distinguished" }.to_string();
    let incomplete = !(r1.complete && r2.complete);
    Ok((report, vec![], verdict, if incomplete { Status::Unverifiable } else { Status::Ok }))
}
