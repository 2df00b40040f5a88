//! Tilting and cotilting checks, torsion-class audits on samples, Morita
//! invariants, and the Gorenstein-projective pipeline.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{
    ext_dim, global_dim, gorenstein_dimension, inj_dim, is_gorenstein_projective, is_projective, proj_dim,
    random_extension, Dim, GorensteinReport,
};
use crate::krull_schmidt::{
    decompose_any, enumerate_indecomposables, CatalogMethod, EnumerationMode, IndecomposableCatalog,
};
use crate::matrix::Matrix;
use crate::module::{hom_basis, hom_dim, Module};
use crate::par::Execution;
use crate::recollement::{build_setup, CheckStatus, SetupBudget, SetupFlags, SubcategorySetup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Both,
    Tilting,
    Cotilting,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingReport {
    pub dim: usize,
    pub proj_dim: Dim,
    pub inj_dim: Dim,
    pub ext1_self: usize,
    /// Isomorphism classes of indecomposable summands.
    pub summands: usize,
    pub simples: usize,
    pub tilting: bool,
    pub cotilting: bool,
    pub verdict: Verdict,
}

/// Tilting: `pd T <= 1`, `Ext^1(T, T) = 0` and as many indecomposable summands
/// as simples; cotilting with `id T <= 1` instead.
pub fn check_tilting<K: Field>(t: &Module<K>, bound: usize) -> Result<TiltingReport> {
    let pd = proj_dim(t, bound)?;
    let id = inj_dim(t, bound)?;
    let ext1 = ext_dim(t, t, 1)?;
    let (d, _) = decompose_any(t)?;
    let summands = d.parts.len();
    let simples = t.algebra().num_simples();
    let base = ext1 == 0 && summands == simples;
    let tilting = base && pd.at_most(1) == Some(true);
    let cotilting = base && id.at_most(1) == Some(true);
    let verdict = match (tilting, cotilting) {
        (true, true) => Verdict::Both,
        (true, false) => Verdict::Tilting,
        (false, true) => Verdict::Cotilting,
        (false, false) => Verdict::Neither,
    };
    Ok(TiltingReport {
        dim: t.dim(),
        proj_dim: pd,
        inj_dim: id,
        ext1_self: ext1,
        summands,
        simples,
        tilting,
        cotilting,
        verdict,
    })
}

/// `M` is a quotient of a finite sum of copies of `T`: the evaluation map
/// `T^h -> M` over a Hom basis is onto.
pub fn gen_membership<K: Field>(t: &Module<K>, m: &Module<K>) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let h = hom_basis(t, m)?;
    if h.dim() == 0 {
        return Ok(false);
    }
    let refs: Vec<&Matrix<K>> = h.matrices().iter().collect();
    Ok(Matrix::vstack(&refs).rank() == m.dim())
}

/// `M` embeds in a finite sum of copies of `T`: the coevaluation
/// `M -> T^h` over a Hom basis is injective.
pub fn cogen_membership<K: Field>(t: &Module<K>, m: &Module<K>) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let h = hom_basis(m, t)?;
    if h.dim() == 0 {
        return Ok(false);
    }
    let refs: Vec<&Matrix<K>> = h.matrices().iter().collect();
    Ok(Matrix::hstack(&refs).rank() == m.dim())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleFacts {
    pub name: String,
    pub dim: usize,
    pub pd_le_1: bool,
    pub id_le_1: bool,
    pub in_gen: bool,
    pub in_cogen: bool,
    pub in_mod0: bool,
    /// `Hom(F, Y) = 0` for every sample `Y` with `pd Y <= 1`.
    pub left_orthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub sample: String,
    pub implication: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TtfReport {
    pub self_injective: bool,
    pub samples: Vec<SampleFacts>,
    /// How many samples were checked against each implication.
    pub tallies: Vec<(String, usize)>,
    /// Violations of implications the theory guarantees.
    pub counterexamples: Vec<Counterexample>,
    /// Samples in the left orthogonal of the sampled `pd <= 1` modules but not
    /// vanishing at the projectives: inconclusive, since only finitely many
    /// modules of projective dimension at most one are sampled.
    pub unwitnessed: Vec<String>,
}

/// The default sample of `Gamma`-modules: indecomposable projectives,
/// injectives and simples of `Gamma`, the regular module, every `zeta_C`, every
/// `K_C` and `L_C`, and seeded random extensions between these of dimension at
/// most `max_dim`, padded up to at least `min_count` samples when possible.
pub fn default_samples<K: Field>(
    setup: &SubcategorySetup<K>,
    max_dim: usize,
    min_count: usize,
) -> Result<Vec<(String, Module<K>)>> {
    let g = setup.gamma();
    let mut out: Vec<(String, Module<K>)> = Vec::new();
    out.push(("regular".into(), Module::regular(g)));
    for i in 0..g.num_simples() {
        out.push((format!("projective {}", g.idempotent_labels()[i]), Module::projective(g, i)));
    }
    for i in 0..g.num_simples() {
        out.push((format!("injective {}", g.idempotent_labels()[i]), Module::injective(g, i)));
    }
    for i in 0..g.num_simples() {
        out.push((format!("simple {}", g.idempotent_labels()[i]), Module::simple(g, i)));
    }
    for (i, c) in setup.catalog.modules.iter().enumerate() {
        let z = setup.zeta(c)?;
        out.push((format!("zeta C{i}"), z.zeta));
        if !z.k.is_zero() {
            out.push((format!("K C{i}"), z.k));
        }
        if !z.l.is_zero() {
            out.push((format!("L C{i}"), z.l));
        }
    }
    let base: Vec<Module<K>> = out.iter().map(|(_, m)| m.clone()).filter(|m| m.dim() <= max_dim).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715);
    let target = min_count.max(out.len() + 8);
    let mut tries = 0;
    while out.len() < target && tries < 64 * target && !base.is_empty() {
        tries += 1;
        let a = &base[rand::Rng::random_range(&mut rng, 0..base.len())];
        let b = &base[rand::Rng::random_range(&mut rng, 0..base.len())];
        if a.dim() + b.dim() > max_dim {
            continue;
        }
        let (e, _, _) = random_extension(b, a, &mut rng)?;
        out.push((format!("extension #{}", out.len()), e));
    }
    Ok(out)
}

/// Check on every sample: `cogen(T) => pd <= 1`, `gen(T) => id <= 1`, over a
/// self-injective base algebra also the converses, and that `mod_0` modules
/// admit no maps to sampled modules of projective dimension at most one.
pub fn theorem41_audit<K: Field>(
    setup: &SubcategorySetup<K>,
    t: &Module<K>,
    samples: &[(String, Module<K>)],
    bound: usize,
    exec: Execution,
) -> Result<TtfReport> {
    let reg = Module::regular(&setup.algebra);
    let self_injective = crate::homology::is_injective(&reg);
    let facts: Vec<Result<(bool, bool, bool, bool, bool)>> = exec.map(samples, |(_, m)| {
        Ok((
            proj_dim(m, bound)?.at_most(1) == Some(true),
            inj_dim(m, bound)?.at_most(1) == Some(true),
            gen_membership(t, m)?,
            cogen_membership(t, m)?,
            setup.is_mod0(m),
        ))
    });
    let facts = facts.into_iter().collect::<Result<Vec<_>>>()?;
    let pd1: Vec<&Module<K>> = samples.iter().zip(&facts).filter(|(_, f)| f.0).map(|((_, m), _)| m).collect();
    let orth: Vec<Result<bool>> = exec.map(samples, |(_, m)| {
        for y in &pd1 {
            if hom_dim(m, y)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let orth = orth.into_iter().collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(samples.len());
    let mut counterexamples = Vec::new();
    let mut unwitnessed = Vec::new();
    let mut tallies = vec![
        ("cogen(T) => pd <= 1".to_string(), 0),
        ("gen(T) => id <= 1".to_string(), 0),
        ("pd <= 1 => cogen(T)".to_string(), 0),
        ("id <= 1 => gen(T)".to_string(), 0),
        ("mod0 => Hom(-, P<=1) = 0".to_string(), 0),
    ];
    for (((name, m), f), o) in samples.iter().zip(&facts).zip(&orth) {
        let (pd, id, gen, cogen, mod0) = *f;
        let mut check = |k: usize, premise: bool, conclusion: bool| {
            if premise {
                tallies[k].1 += 1;
                if !conclusion {
                    counterexamples.push(Counterexample { sample: name.clone(), implication: tallies[k].0.clone() });
                }
            }
        };
        check(0, cogen, pd);
        check(1, gen, id);
        if self_injective {
            check(2, pd, cogen);
            check(3, id, gen);
        }
        check(4, mod0, *o);
        if *o && !mod0 {
            unwitnessed.push(name.clone());
        }
        out.push(SampleFacts {
            name: name.clone(),
            dim: m.dim(),
            pd_le_1: pd,
            id_le_1: id,
            in_gen: gen,
            in_cogen: cogen,
            in_mod0: mod0,
            left_orthogonal: *o,
        });
    }
    Ok(TtfReport { self_injective, samples: out, tallies, counterexamples, unwitnessed })
}

/// Invariants of an algebra up to Morita equivalence (for basic algebras, up
/// to isomorphism).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaInvariants {
    pub simples: usize,
    pub projective_dims: Vec<usize>,
    /// Cartan matrix `dim Hom(P_i, P_j)` with each row sorted, rows sorted.
    pub cartan: Vec<Vec<usize>>,
    pub total_dim: usize,
}

pub fn morita_invariants<K: Field>(a: &Algebra<K>) -> Result<MoritaInvariants> {
    let n = a.num_simples();
    let ps: Vec<Module<K>> = (0..n).map(|i| Module::projective(a, i)).collect();
    let mut projective_dims: Vec<usize> = ps.iter().map(|p| p.dim()).collect();
    projective_dims.sort();
    let mut cartan = Vec::with_capacity(n);
    for p in &ps {
        let mut row = ps.iter().map(|q| hom_dim(p, q)).collect::<Result<Vec<_>>>()?;
        row.sort();
        cartan.push(row);
    }
    cartan.sort();
    Ok(MoritaInvariants { simples: n, projective_dims, cartan, total_dim: a.dim() })
}

/// Budgets for [`gprj_pipeline`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineBudget {
    pub max_dim: usize,
    pub max_steps: usize,
    pub ext_bound: usize,
}

impl Default for PipelineBudget {
    fn default() -> Self {
        PipelineBudget { max_dim: 8, max_steps: 10_000, ext_bound: 6 }
    }
}

/// Gorenstein-projective data of the Auslander algebra itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuslanderGprj {
    pub global_dim: Dim,
    pub gorenstein: GorensteinReport,
    pub indecomposables: usize,
    pub catalog_complete: bool,
    pub gprj: usize,
    pub projectives: usize,
    pub gprj_equals_prj: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GprjReport {
    pub gorenstein: GorensteinReport,
    /// The branch needs Gorenstein dimension at most one.
    pub applicable: bool,
    pub catalog_size: usize,
    pub catalog_complete: bool,
    pub catalog_method: CatalogMethod,
    /// Dimension vectors of the indecomposable Gorenstein projectives.
    pub gprj: Vec<Vec<usize>>,
    pub cm_free: bool,
    pub flags: Option<SetupFlags>,
    pub tilting: Option<TiltingReport>,
    pub invariants: MoritaInvariants,
    pub cm_auslander_invariants: Option<MoritaInvariants>,
    pub cm_auslander_gprj: Option<AuslanderGprj>,
    pub complete: bool,
}

/// Gorenstein dimension, the Gorenstein-projective indecomposables, the CM
/// Auslander algebra `Gamma = End(G)` with `T = zeta(G)` checked, Morita
/// invariants, and the Gorenstein projectives of `Gamma` itself.
pub fn gprj_pipeline<K: Field>(
    a: &Algebra<K>,
    budget: PipelineBudget,
    exec: Execution,
) -> Result<(GprjReport, Option<SubcategorySetup<K>>)> {
    let gorenstein = gorenstein_dimension(a, budget.ext_bound)?;
    let invariants = morita_invariants(a)?;
    let cat = enumerate_indecomposables(a, EnumerationMode::Knitting, budget.max_dim, budget.max_steps, exec)?;
    let applicable = gorenstein.gdim.at_most(1) == Some(true);
    let mut report = GprjReport {
        gorenstein: gorenstein.clone(),
        applicable,
        catalog_size: cat.len(),
        catalog_complete: cat.complete,
        catalog_method: cat.method,
        gprj: vec![],
        cm_free: false,
        flags: None,
        tilting: None,
        invariants,
        cm_auslander_invariants: None,
        cm_auslander_gprj: None,
        complete: cat.complete,
    };
    if !applicable {
        return Ok((report, None));
    }
    let verdicts = exec.map(&cat.modules, |m| is_gorenstein_projective(m, gorenstein.gdim));
    let mut gprj = Vec::new();
    for (m, v) in cat.modules.iter().zip(verdicts) {
        if v? {
            gprj.push(m.clone());
        }
    }
    report.gprj = gprj.iter().map(|m| m.dimension_vector()).collect();
    report.cm_free = gprj.iter().all(is_projective);
    let gcat = IndecomposableCatalog {
        algebra: a.clone(),
        modules: gprj,
        complete: cat.complete,
        method: cat.method,
        note: Some("Gorenstein projectives filtered from the catalog".into()),
    };
    let setup = build_setup(&gcat, SetupBudget { ext_bound: budget.ext_bound, ..SetupBudget::default() })?;
    let t = setup.zeta_generator()?;
    report.tilting = Some(check_tilting(&t.zeta, budget.ext_bound)?);
    report.flags = Some(setup.flags.clone());
    let gamma = setup.gamma().clone();
    report.cm_auslander_invariants = Some(morita_invariants(&gamma)?);
    report.cm_auslander_gprj = Some(auslander_gprj(&gamma, budget, exec)?);
    Ok((report, Some(setup)))
}

/// Indecomposable Gorenstein projectives of an algebra of finite Gorenstein
/// dimension, compared with its projectives.
pub fn auslander_gprj<K: Field>(g: &Algebra<K>, budget: PipelineBudget, exec: Execution) -> Result<AuslanderGprj> {
    let global = global_dim(g, budget.ext_bound)?;
    let gorenstein = gorenstein_dimension(g, budget.ext_bound)?;
    let cat = enumerate_indecomposables(g, EnumerationMode::Knitting, budget.max_dim, budget.max_steps, exec)?;
    if gorenstein.gdim.finite().is_none() {
        return Err(Error::Hypothesis(format!("Gorenstein dimension {} is not finite", gorenstein.gdim)));
    }
    let verdicts = exec.map(&cat.modules, |m| is_gorenstein_projective(m, gorenstein.gdim));
    let mut gprj = 0;
    let mut equal = true;
    for (m, v) in cat.modules.iter().zip(verdicts) {
        let v = v?;
        gprj += v as usize;
        equal &= v == is_projective(m);
    }
    Ok(AuslanderGprj {
        global_dim: global,
        gorenstein,
        indecomposables: cat.len(),
        catalog_complete: cat.complete,
        gprj,
        projectives: g.num_simples(),
        gprj_equals_prj: equal,
    })
}

/// Status used to scope a conclusion: verified only when every hypothesis it
/// rests on was verified.
pub fn combined_status(checks: &[CheckStatus]) -> CheckStatus {
    if checks.contains(&CheckStatus::Failed) {
        CheckStatus::Failed
    } else if checks.contains(&CheckStatus::Assumed) {
        CheckStatus::Assumed
    } else {
        CheckStatus::Verified
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation};
    use crate::field::{FieldSpec, Rationals};

    fn lambda(n: usize) -> Algebra<Rationals> {
        build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, n)).unwrap()
    }

    fn setup(n: usize) -> SubcategorySetup<Rationals> {
        let a = lambda(n);
        let cat = enumerate_indecomposables(&a, EnumerationMode::Knitting, 8, 1000, Execution::Sequential).unwrap();
        build_setup(&cat, SetupBudget::default()).unwrap()
    }

    #[test]
    fn lambda2_is_tilting_and_cotilting() {
        let s = setup(2);
        let t = s.zeta_generator().unwrap().zeta;
        let r = check_tilting(&t, 6).unwrap();
        assert_eq!(r.dim, 4);
        assert_eq!(r.verdict, Verdict::Both);
        assert_eq!((r.summands, r.simples), (2, 2));
        let reg = check_tilting(&Module::regular(s.gamma()), 6).unwrap();
        assert!(reg.tilting);
        let one = check_tilting(&Module::projective(s.gamma(), 0), 6).unwrap();
        assert_eq!(one.verdict, Verdict::Neither);
        assert!(cogen_membership(&t, &Module::regular(s.gamma())).unwrap());
        assert!(gen_membership(&t, &t).unwrap() && cogen_membership(&t, &t).unwrap());
    }

    #[test]
    fn lambda2_audit() {
        let s = setup(2);
        let t = s.zeta_generator().unwrap().zeta;
        let samples = default_samples(&s, 6, 20).unwrap();
        assert!(samples.len() >= 20);
        let r = theorem41_audit(&s, &t, &samples, 6, Execution::Parallel).unwrap();
        assert!(r.self_injective);
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
    }

    #[test]
    fn invariants() {
        let m = morita_invariants(&lambda(2)).unwrap();
        assert_eq!((m.simples, m.projective_dims.clone()), (1, vec![2]));
        let g2 = setup(2);
        let g3 = setup(3);
        let i2 = morita_invariants(g2.gamma()).unwrap();
        let i3 = morita_invariants(g3.gamma()).unwrap();
        assert_eq!((i2.simples, i2.total_dim), (2, 5));
        assert_eq!(i3.simples, 3);
    }

    #[test]
    fn pipelines() {
        let a2 = build_algebra(&Rationals, &Presentation::linear_quiver(FieldSpec::Rational, 2)).unwrap();
        let (r, _) = gprj_pipeline(&a2, PipelineBudget::default(), Execution::Sequential).unwrap();
        assert_eq!(r.gorenstein.gdim, Dim::Finite(1));
        assert!(r.cm_free);
        assert_eq!(r.gprj.len(), 2);
        let (r, _) = gprj_pipeline(&lambda(2), PipelineBudget::default(), Execution::Sequential).unwrap();
        assert_eq!(r.tilting.unwrap().verdict, Verdict::Both);
        let aus = r.cm_auslander_gprj.unwrap();
        assert_eq!(aus.global_dim, Dim::Finite(2));
        assert!(aus.gprj_equals_prj);
    }
}
