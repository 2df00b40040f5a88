//! The relative Auslander algebra `Gamma = End(X)` of a finite-type
//! subcategory `X = add(X)` and the functors between `mod Lambda` and
//! `mod Gamma` obtained by evaluating functors on `X` at the generator.
//!
//! `v_rho(M) = Hom(X, M)`, `v_lambda(M) = coker(Hom(X, P1) -> Hom(X, P0))` for
//! a minimal presentation, `gamma_M: v_lambda(M) -> v_rho(M)` and the
//! intermediate extension `zeta_M = im(gamma_M)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, Algebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::homology::{left_perp_test, minimal_presentation, syzygy};
use crate::krull_schmidt::{
    decompose_any, decompose_brute_force, is_isomorphic, EndRing, IndecomposableCatalog, EXHAUSTIVE_LIMIT,
};
use crate::matrix::Matrix;
use crate::module::{all_submodules, direct_sum, hom_basis, HomBasis, Module, ModuleMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Verified,
    Assumed,
    Failed,
}

/// Outcome of one hypothesis check and how it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub status: CheckStatus,
    pub method: String,
}

impl HypothesisCheck {
    fn new(status: CheckStatus, method: impl Into<String>) -> Self {
        HypothesisCheck { status, method: method.into() }
    }

    pub fn verified(&self) -> bool {
        self.status == CheckStatus::Verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupFlags {
    pub contains_projectives: HypothesisCheck,
    pub syzygy_closed: HypothesisCheck,
    pub submodule_closed: HypothesisCheck,
    pub left_perp: HypothesisCheck,
}

/// Limits for the hypothesis checks of [`build_setup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetupBudget {
    /// Ext degrees tested for the left-perpendicular condition.
    pub ext_bound: usize,
    /// Largest module (as a finite set) whose submodules are enumerated.
    pub submodule_limit: u64,
}

impl Default for SetupBudget {
    fn default() -> Self {
        SetupBudget { ext_bound: 6, submodule_limit: 1 << 12 }
    }
}

/// A finite-type subcategory with its Auslander algebra.
#[derive(Clone, Debug)]
pub struct SubcategorySetup<K: Field> {
    pub algebra: Algebra<K>,
    pub catalog: IndecomposableCatalog<K>,
    pub end: EndRing<K>,
    pub flags: SetupFlags,
    /// Catalog entry isomorphic to each indecomposable projective, in vertex order.
    pub projective_classes: Vec<usize>,
    pub budget: SetupBudget,
}

/// Build `Gamma = End(X)` for `X` the sum of the catalog and check the
/// hypotheses on `add(X)`. Fails if some indecomposable projective is not in
/// the catalog.
pub fn build_setup<K: Field>(catalog: &IndecomposableCatalog<K>, budget: SetupBudget) -> Result<SubcategorySetup<K>> {
    let a = catalog.algebra.clone();
    if catalog.is_empty() {
        return Err(Error::Hypothesis("empty catalog".into()));
    }
    let mut projective_classes = Vec::new();
    for v in 0..a.num_simples() {
        let p = Module::projective(&a, v);
        match catalog.position(&p)? {
            Some(i) => projective_classes.push(i),
            None => {
                return Err(Error::Hypothesis(format!(
                    "the indecomposable projective at vertex {} is not in the catalog",
                    a.idempotent_labels()[v]
                )))
            }
        }
    }
    let contains_projectives = HypothesisCheck::new(CheckStatus::Verified, "isomorphism test against each projective");
    let syzygy_closed = check_syzygy_closed(catalog)?;
    let left_perp = check_left_perp(catalog, budget.ext_bound)?;
    let submodule_closed = check_submodule_closed(catalog, budget.submodule_limit)?;
    let end = EndRing::of_sum(&a, &catalog.modules)?;
    Ok(SubcategorySetup {
        algebra: a,
        catalog: catalog.clone(),
        end,
        flags: SetupFlags { contains_projectives, syzygy_closed, submodule_closed, left_perp },
        projective_classes,
        budget,
    })
}

fn check_syzygy_closed<K: Field>(catalog: &IndecomposableCatalog<K>) -> Result<HypothesisCheck> {
    let mut certain = true;
    for (i, c) in catalog.modules.iter().enumerate() {
        let omega = syzygy(c, 1);
        let (d, sure) = decompose_any(&omega)?;
        certain &= sure;
        for (p, _) in &d.parts {
            if catalog.position(p)?.is_none() {
                return Ok(HypothesisCheck::new(
                    CheckStatus::Failed,
                    format!("a summand of the syzygy of catalog entry {i} is not in the catalog"),
                ));
            }
        }
    }
    let status = if certain { CheckStatus::Verified } else { CheckStatus::Assumed };
    Ok(HypothesisCheck::new(status, "decomposed the syzygy of every catalog entry into catalog entries"))
}

fn check_left_perp<K: Field>(catalog: &IndecomposableCatalog<K>, bound: usize) -> Result<HypothesisCheck> {
    for (i, c) in catalog.modules.iter().enumerate() {
        if !left_perp_test(c, bound)? {
            return Ok(HypothesisCheck::new(
                CheckStatus::Failed,
                format!("Ext^i(C, A) != 0 for catalog entry {i} and some 1 <= i <= {bound}"),
            ));
        }
    }
    Ok(HypothesisCheck::new(
        CheckStatus::Verified,
        format!("Ext^i(C, A) = 0 for every catalog entry and 1 <= i <= {bound}"),
    ))
}

/// Reduce a module's entries into `F_p` (same quiver presentation).
fn reduce_mod_p<K: Field>(m: &Module<K>, target: &Algebra<PrimeField>) -> Option<Module<PrimeField>> {
    let f = m.field();
    let pf = target.field();
    let reduce = |x: &K::Elem| match f.to_rational(x) {
        Some(q) => pf.from_rational(&q),
        None => pf.parse(&f.render(x)).ok(),
    };
    let (dims, mats) = m.to_representation().ok()?;
    let mut reduced = Vec::with_capacity(mats.len());
    for a in &mats {
        let data = a.data().iter().map(reduce).collect::<Option<Vec<_>>>()?;
        reduced.push(Matrix::from_vec(pf, a.rows(), a.cols(), data).ok()?);
    }
    Module::from_representation(target, &dims, &reduced).ok()
}

/// Submodule closure of `add(X)`, decided over a prime field: the catalog is
/// reduced modulo a small prime (checking that it stays a list of pairwise
/// non-isomorphic indecomposables) and every submodule of every entry is
/// decomposed there.
pub fn check_submodule_closed<K: Field>(catalog: &IndecomposableCatalog<K>, limit: u64) -> Result<HypothesisCheck> {
    let a = &catalog.algebra;
    let Some(q) = a.quiver() else {
        return Ok(HypothesisCheck::new(CheckStatus::Assumed, "no quiver presentation to reduce modulo a prime"));
    };
    let primes: Vec<u64> = match a.field().spec() {
        FieldSpec::Prime { p } => vec![p],
        FieldSpec::Rational => vec![2, 3, 5, 7],
    };
    'primes: for p in primes {
        let pf = PrimeField::new(p)?;
        let pres = if a.is_opposite() { q.presentation.opposite() } else { q.presentation.clone() };
        let pres = pres.with_field(FieldSpec::Prime { p });
        let Ok(ap) = build_algebra(&pf, &pres) else { continue };
        if ap.dim() != a.dim() {
            continue;
        }
        let mut members = Vec::new();
        for c in &catalog.modules {
            let Some(cp) = reduce_mod_p(c, &ap) else { continue 'primes };
            let (d, sure) = decompose_brute_force(&cp, EXHAUSTIVE_LIMIT)?;
            if !sure || d.num_summands() != 1 {
                continue 'primes;
            }
            for other in &members {
                if is_isomorphic(other, &cp)?.is_some() {
                    continue 'primes;
                }
            }
            members.push(cp);
        }
        for (i, c) in members.iter().enumerate() {
            let Some(subs) = all_submodules(c, limit) else {
                return Ok(HypothesisCheck::new(
                    CheckStatus::Assumed,
                    format!("catalog entry {i} is too large to enumerate its submodules over F_{p}"),
                ));
            };
            for basis in subs.iter().filter(|b| b.rows() > 0) {
                let (u, _) = c.submodule(basis)?;
                let (d, sure) = decompose_brute_force(&u, EXHAUSTIVE_LIMIT)?;
                if !sure {
                    return Ok(HypothesisCheck::new(CheckStatus::Assumed, "submodule decomposition was sampled"));
                }
                for (part, _) in &d.parts {
                    let mut found = false;
                    for m in &members {
                        if is_isomorphic(m, part)?.is_some() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Ok(HypothesisCheck::new(
                            CheckStatus::Failed,
                            format!("over F_{p} a submodule of catalog entry {i} has a summand outside the catalog"),
                        ));
                    }
                }
            }
        }
        return Ok(HypothesisCheck::new(
            CheckStatus::Verified,
            format!("every submodule of every catalog entry decomposed over F_{p} after reduction"),
        ));
    }
    Ok(HypothesisCheck::new(CheckStatus::Assumed, "the catalog does not reduce to an indecomposable list modulo 2, 3, 5 or 7"))
}

/// `Hom(X, M)` as a right `Gamma`-module, with its blockwise basis.
#[derive(Clone, Debug)]
struct HomFunctor<K: Field> {
    module: Module<K>,
    blocks: Vec<HomBasis<K>>,
    offsets: Vec<usize>,
}

impl<K: Field> SubcategorySetup<K> {
    pub fn gamma(&self) -> &Algebra<K> {
        &self.end.algebra
    }

    /// The generator `X`.
    pub fn generator(&self) -> &Module<K> {
        &self.end.generator
    }

    fn hom_functor(&self, m: &Module<K>) -> Result<HomFunctor<K>> {
        let gamma = self.gamma();
        let f = gamma.field();
        let blocks: Vec<HomBasis<K>> = self.end.parts.iter().map(|c| hom_basis(c, m)).collect::<Result<_>>()?;
        let mut offsets = vec![0];
        for b in &blocks {
            offsets.push(offsets.last().unwrap() + b.dim());
        }
        let total = *offsets.last().unwrap();
        let mut action = Vec::with_capacity(gamma.dim());
        for b in &self.end.blocks {
            let h = &self.end.homs[b.from][b.to].matrices()[b.index];
            let mut mat = Matrix::zeros(f, total, total);
            // phi in block `to` moves to h phi in block `from`
            for (k, phi) in blocks[b.to].matrices().iter().enumerate() {
                let c = blocks[b.from]
                    .coordinates(&h.mul(phi))
                    .ok_or_else(|| Error::Internal("precomposition left the Hom space".into()))?;
                for (l, x) in c.into_iter().enumerate() {
                    mat.set(offsets[b.to] + k, offsets[b.from] + l, x);
                }
            }
            action.push(mat);
        }
        Ok(HomFunctor { module: Module::from_parts(gamma, total, action), blocks, offsets })
    }

    /// Postcomposition `Hom(X, M) -> Hom(X, N)` with `g: M -> N`.
    fn postcompose(&self, src: &HomFunctor<K>, dst: &HomFunctor<K>, g: &Matrix<K>) -> Result<ModuleMap<K>> {
        let f = self.gamma().field();
        let mut mat = Matrix::zeros(f, src.module.dim(), dst.module.dim());
        for i in 0..self.end.parts.len() {
            for (k, phi) in src.blocks[i].matrices().iter().enumerate() {
                let c = dst.blocks[i]
                    .coordinates(&phi.mul(g))
                    .ok_or_else(|| Error::Internal("postcomposition left the Hom space".into()))?;
                for (l, x) in c.into_iter().enumerate() {
                    mat.set(src.offsets[i] + k, dst.offsets[i] + l, x);
                }
            }
        }
        Ok(ModuleMap::from_parts(&src.module, &dst.module, mat))
    }

    /// `v_rho(M) = Hom(X, M)` with `Gamma` acting by precomposition.
    pub fn v_rho(&self, m: &Module<K>) -> Result<Module<K>> {
        m.same_algebra(self.generator())?;
        Ok(self.hom_functor(m)?.module)
    }

    /// `v_rho` on maps.
    pub fn v_rho_map(&self, g: &ModuleMap<K>) -> Result<ModuleMap<K>> {
        let src = self.hom_functor(g.source())?;
        let dst = self.hom_functor(g.target())?;
        self.postcompose(&src, &dst, g.matrix())
    }

    /// `v_lambda(M)` and the natural map `gamma_M: v_lambda(M) -> v_rho(M)`.
    pub fn v_lambda_with_gamma(&self, m: &Module<K>) -> Result<(Module<K>, ModuleMap<K>)> {
        m.same_algebra(self.generator())?;
        let pres = minimal_presentation(m);
        let h1 = self.hom_functor(&pres.p1)?;
        let h0 = self.hom_functor(&pres.p0)?;
        let hm = self.hom_functor(m)?;
        let dmap = self.postcompose(&h1, &h0, pres.d.matrix())?;
        let emap = self.postcompose(&h0, &hm, pres.eps.matrix())?;
        if !dmap.then(&emap).is_zero() {
            return Err(Error::Internal("Hom(X, P1) -> Hom(X, M) is not zero".into()));
        }
        let (lam, _, section) = dmap.cokernel();
        let gamma = ModuleMap::from_parts(&lam, &hm.module, section.mul(emap.matrix()));
        Ok((lam, gamma))
    }

    pub fn v_lambda(&self, m: &Module<K>) -> Result<Module<K>> {
        Ok(self.v_lambda_with_gamma(m)?.0)
    }

    pub fn gamma_map(&self, m: &Module<K>) -> Result<ModuleMap<K>> {
        Ok(self.v_lambda_with_gamma(m)?.1)
    }

    /// The functor back to `mod Lambda`: a minimal `Gamma`-presentation
    /// `Q1 -> Q0 -> F` has projective terms `Hom(X, X_1)`, `Hom(X, X_0)`; the
    /// presenting map comes from a unique map `X_1 -> X_0` whose cokernel is
    /// the result.
    pub fn v_theta(&self, fm: &Module<K>) -> Result<Module<K>> {
        let gamma = self.gamma();
        if fm.algebra() != gamma {
            return Err(Error::AlgebraMismatch);
        }
        let a = &self.algebra;
        let pres = minimal_presentation(fm);
        let parts1: Vec<Module<K>> = pres.summands1.iter().map(|&i| self.end.parts[i].clone()).collect();
        let parts0: Vec<Module<K>> = pres.summands0.iter().map(|&i| self.end.parts[i].clone()).collect();
        let (x1, _, _) = direct_sum(a, &parts1)?;
        let (x0, _, _) = direct_sum(a, &parts0)?;
        let proj = gamma_projective_data(gamma);
        let f = a.field();
        let mut d = Matrix::zeros(f, x1.dim(), x0.dim());
        let (mut p1_off, mut x1_off) = (0, 0);
        for &i in &pres.summands1 {
            let row = pres.d.matrix().row(p1_off);
            let (mut p0_off, mut x0_off) = (0, 0);
            for &j in &pres.summands0 {
                let basis = &proj[j];
                let coords = Matrix::row_vector(f, row[p0_off..p0_off + basis.rows()].to_vec());
                let y = coords.mul(basis).into_data();
                let map = self
                    .end
                    .block_map(i, j, &y)
                    .ok_or_else(|| Error::Internal("presentation component outside Hom(C_i, C_j)".into()))?;
                d.set_block(x1_off, x0_off, &map);
                p0_off += basis.rows();
                x0_off += self.end.parts[j].dim();
            }
            p1_off += proj[i].rows();
            x1_off += self.end.parts[i].dim();
        }
        let dm = ModuleMap::new(&x1, &x0, d).map_err(|e| Error::Internal(format!("Yoneda inversion failed: {e}")))?;
        Ok(dm.cokernel().0)
    }

    /// Whether `F` vanishes at the projectives: `F e = 0` for the idempotents
    /// of the projective catalog entries.
    pub fn is_mod0(&self, fm: &Module<K>) -> bool {
        self.projective_classes
            .iter()
            .all(|&i| fm.action(self.end.block_start(i, i)).is_zero())
    }

    /// The intermediate extension of `M` with the four-term exact sequence
    /// `0 -> K_M -> v_lambda(M) -> v_rho(M) -> L_M -> 0`.
    pub fn zeta(&self, m: &Module<K>) -> Result<ZetaPackage<K>> {
        let (lam, gamma) = self.v_lambda_with_gamma(m)?;
        let rho = gamma.target().clone();
        let (k, k_incl) = gamma.kernel();
        let (z, z_epi, z_mono) = gamma.image();
        let (l, l_proj, _) = gamma.cokernel();
        let rank = gamma.rank();
        let cert = ExactnessCertificate {
            dims: [k.dim(), lam.dim(), z.dim(), rho.dim(), l.dim()],
            composites_zero: k_incl.then(&gamma).is_zero() && gamma.then(&l_proj).is_zero(),
            ranks_match: k.dim() + rank == lam.dim() && rank + l.dim() == rho.dim() && z.dim() == rank,
            alternating_sum: k.dim() as i64 - lam.dim() as i64 + rho.dim() as i64 - l.dim() as i64,
            k_in_mod0: self.is_mod0(&k),
            l_in_mod0: self.is_mod0(&l),
        };
        Ok(ZetaPackage {
            module: m.clone(),
            k,
            theta_lambda: lam,
            zeta: z,
            theta_rho: rho,
            l,
            k_incl,
            gamma,
            l_proj,
            zeta_epi: z_epi,
            zeta_mono: z_mono,
            certificate: cert,
        })
    }

    /// `T = zeta(X)`, the intermediate extension of the generator.
    pub fn zeta_generator(&self) -> Result<ZetaPackage<K>> {
        self.zeta(self.generator())
    }
}

/// Bases (in algebra coordinates) of the indecomposable projectives of `Gamma`.
fn gamma_projective_data<K: Field>(gamma: &Algebra<K>) -> Vec<Matrix<K>> {
    (0..gamma.num_simples()).map(|i| gamma.projective_basis(i).clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCertificate {
    /// `(K, v_lambda, zeta, v_rho, L)`.
    pub dims: [usize; 5],
    pub composites_zero: bool,
    pub ranks_match: bool,
    pub alternating_sum: i64,
    pub k_in_mod0: bool,
    pub l_in_mod0: bool,
}

impl ExactnessCertificate {
    pub fn ok(&self) -> bool {
        self.composites_zero && self.ranks_match && self.alternating_sum == 0 && self.k_in_mod0 && self.l_in_mod0
    }
}

#[derive(Clone, Debug)]
pub struct ZetaPackage<K: Field> {
    pub module: Module<K>,
    pub k: Module<K>,
    pub theta_lambda: Module<K>,
    pub zeta: Module<K>,
    pub theta_rho: Module<K>,
    pub l: Module<K>,
    pub k_incl: ModuleMap<K>,
    pub gamma: ModuleMap<K>,
    pub l_proj: ModuleMap<K>,
    pub zeta_epi: ModuleMap<K>,
    pub zeta_mono: ModuleMap<K>,
    pub certificate: ExactnessCertificate,
}
