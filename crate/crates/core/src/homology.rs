//! Projective covers, syzygies, Ext groups and homological dimensions.
//!
//! Every resolution is minimal, so projective and injective dimensions are
//! exact values rather than upper bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::krull_schmidt::is_isomorphic;
use crate::matrix::{Matrix, RowReducer};
use crate::module::{direct_sum, hom_basis, Module, ModuleMap};

/// Projective cover `P -> M` with `P` a sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<K: Field> {
    pub cover: Module<K>,
    pub epi: ModuleMap<K>,
    /// Idempotent index of each indecomposable summand of `cover`, in order.
    pub summands: Vec<usize>,
}

/// Minimal projective presentation `P1 -d-> P0 -eps-> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation<K: Field> {
    pub p1: Module<K>,
    pub p0: Module<K>,
    pub d: ModuleMap<K>,
    pub eps: ModuleMap<K>,
    pub summands1: Vec<usize>,
    pub summands0: Vec<usize>,
}

/// A homological dimension: exact, infinite, or not settled within a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Dim {
    Finite(usize),
    Infinite,
    AtLeast(usize),
}

impl Dim {
    pub fn at_most(self, n: usize) -> Option<bool> {
        match self {
            Dim::Finite(d) => Some(d <= n),
            Dim::Infinite => Some(false),
            Dim::AtLeast(b) if b > n => Some(false),
            Dim::AtLeast(_) => None,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            _ => None,
        }
    }

    pub fn max(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Infinite, _) | (_, Dim::Infinite) => Dim::Infinite,
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a.max(b)),
            (Dim::AtLeast(a), Dim::AtLeast(b)) => Dim::AtLeast(a.max(b)),
            (Dim::AtLeast(a), Dim::Finite(b)) | (Dim::Finite(b), Dim::AtLeast(a)) => Dim::AtLeast(a.max(b + 1)),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "infinite"),
            Dim::AtLeast(b) => write!(f, ">= {b}"),
        }
    }
}

/// Map `e_i A -> M` sending the generator `e_i` to `m` (which must lie in `M e_i`).
pub fn map_from_projective<K: Field>(p: &Module<K>, i: usize, m: &Module<K>, v: &[K::Elem]) -> ModuleMap<K> {
    let a = m.algebra();
    let f = a.field();
    let basis = &a.projective_data()[i].basis;
    let vm = Matrix::row_vector(f, v.to_vec());
    let rows = (0..basis.rows()).map(|k| vm.mul(&m.element_action(basis.row(k))).into_data()).collect();
    ModuleMap::from_parts(p, m, Matrix::from_rows(f, m.dim(), rows))
}

/// Minimal projective cover.
pub fn projective_cover<K: Field>(m: &Module<K>) -> ProjectiveCover<K> {
    let a = m.algebra();
    let f = a.field();
    let (rad, incl) = m.radical();
    let mut red = RowReducer::new(f, m.dim());
    for r in 0..rad.dim() {
        red.insert(incl.matrix().row_vec(r));
    }
    let mut gens: Vec<(usize, Vec<K::Elem>)> = Vec::new();
    for (i, &e) in a.idempotents().iter().enumerate() {
        let block = m.action(e).row_space();
        for r in 0..block.rows() {
            let v = block.row_vec(r);
            if red.insert(v.clone()) {
                gens.push((i, v));
            }
        }
    }
    let summands: Vec<usize> = gens.iter().map(|(i, _)| *i).collect();
    let parts: Vec<Module<K>> = summands.iter().map(|&i| Module::projective(a, i)).collect();
    let (cover, _, _) = direct_sum(a, &parts).expect("same algebra");
    let rows: Vec<Matrix<K>> = gens
        .iter()
        .zip(&parts)
        .map(|((i, v), p)| map_from_projective(p, *i, m, v).matrix().clone())
        .collect();
    let mat = Matrix::vstack_or_empty(f, m.dim(), &rows);
    let epi = ModuleMap::from_parts(&cover, m, mat);
    ProjectiveCover { cover, epi, summands }
}

/// First syzygy with its inclusion into the projective cover.
pub fn syzygy_with_cover<K: Field>(m: &Module<K>) -> (Module<K>, ModuleMap<K>, ProjectiveCover<K>) {
    let pc = projective_cover(m);
    let (k, incl) = pc.epi.kernel();
    (k, incl, pc)
}

/// `Omega^n(M)`.
pub fn syzygy<K: Field>(m: &Module<K>, n: usize) -> Module<K> {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = syzygy_with_cover(&cur).0;
    }
    cur
}

pub fn is_projective<K: Field>(m: &Module<K>) -> bool {
    projective_cover(m).cover.dim() == m.dim()
}

pub fn is_injective<K: Field>(m: &Module<K>) -> bool {
    is_projective(&m.dual())
}

/// Minimal presentation `P1 -> P0 -> M -> 0`.
pub fn minimal_presentation<K: Field>(m: &Module<K>) -> Presentation<K> {
    let (omega, incl, pc0) = syzygy_with_cover(m);
    let pc1 = projective_cover(&omega);
    let d = pc1.epi.then(&incl);
    Presentation { p1: pc1.cover, p0: pc0.cover, d, eps: pc0.epi, summands1: pc1.summands, summands0: pc0.summands }
}

/// Hom from a sum of indecomposable projectives, via the images of the generators.
pub fn hom_from_projective<K: Field>(p: &Module<K>, summands: &[usize], n: &Module<K>) -> Vec<Matrix<K>> {
    let a = n.algebra();
    let f = a.field();
    let pdims: Vec<usize> = summands.iter().map(|&i| a.projective_data()[i].basis.rows()).collect();
    let mut out = Vec::new();
    let mut off = 0;
    for (s, &i) in summands.iter().enumerate() {
        let pi = Module::projective(a, i);
        let block = n.action(a.idempotents()[i]).row_space();
        for r in 0..block.rows() {
            let g = map_from_projective(&pi, i, n, block.row(r));
            let mut full = Matrix::zeros(f, p.dim(), n.dim());
            full.set_block(off, 0, g.matrix());
            out.push(full);
        }
        off += pdims[s];
    }
    out
}

/// Dimensions of `Ext^i(M, N)` for `i = 1..=n`, from one minimal resolution.
pub fn ext_dims<K: Field>(m: &Module<K>, n: &Module<K>, count: usize) -> Result<Vec<usize>> {
    m.same_algebra(n)?;
    let f = m.field();
    let mut out = Vec::with_capacity(count);
    let mut cur = m.clone();
    for _ in 0..count {
        if cur.is_zero() || n.is_zero() {
            out.push(0);
            continue;
        }
        let (omega, incl, pc) = syzygy_with_cover(&cur);
        if omega.is_zero() {
            out.push(0);
            cur = omega;
            continue;
        }
        let hom_l = hom_basis(&omega, n)?.dim();
        let restricted: Vec<Vec<K::Elem>> = hom_from_projective(&pc.cover, &pc.summands, n)
            .iter()
            .map(|g| incl.matrix().mul(g).into_data())
            .collect();
        let width = omega.dim() * n.dim();
        let rank = Matrix::from_rows(f, width, restricted).rank();
        out.push(hom_l - rank);
        cur = omega;
    }
    Ok(out)
}

/// `dim Ext^i(M, N)`; `i = 0` gives `dim Hom(M, N)`.
pub fn ext_dim<K: Field>(m: &Module<K>, n: &Module<K>, i: usize) -> Result<usize> {
    if i == 0 {
        return Ok(hom_basis(m, n)?.dim());
    }
    let omega = syzygy(m, i - 1);
    Ok(ext_dims(&omega, n, 1)?[0])
}

/// `dim Ext^i(M, N)` computed as `Ext^i(DN, DM)` over the opposite algebra.
pub fn ext_dim_dual<K: Field>(m: &Module<K>, n: &Module<K>, i: usize) -> Result<usize> {
    m.same_algebra(n)?;
    ext_dim(&n.dual(), &m.dual(), i)
}

/// Projective dimension, exact when reached within `bound` syzygies.
pub fn proj_dim<K: Field>(m: &Module<K>, bound: usize) -> Result<Dim> {
    Ok(proj_dim_with_syzygies(m, bound)?.0)
}

/// Projective dimension together with the dimensions of the syzygies computed.
pub fn proj_dim_with_syzygies<K: Field>(m: &Module<K>, bound: usize) -> Result<(Dim, Vec<usize>)> {
    if bound == 0 {
        return Err(Error::Input("bound must be at least 1".into()));
    }
    let mut seen: Vec<Module<K>> = vec![m.clone()];
    let mut dims = vec![m.dim()];
    let mut cur = m.clone();
    for n in 0..bound {
        if cur.is_zero() {
            return Ok((Dim::Finite(0), dims));
        }
        let next = syzygy_with_cover(&cur).0;
        dims.push(next.dim());
        if next.is_zero() {
            return Ok((Dim::Finite(n), dims));
        }
        for prev in &seen {
            if prev.dim() == next.dim() && is_isomorphic(prev, &next)?.is_some() {
                return Ok((Dim::Infinite, dims));
            }
        }
        seen.push(next.clone());
        cur = next;
    }
    Ok((Dim::AtLeast(bound), dims))
}

/// Injective dimension, as the projective dimension of the dual.
pub fn inj_dim<K: Field>(m: &Module<K>, bound: usize) -> Result<Dim> {
    proj_dim(&m.dual(), bound)
}

/// Global dimension as the maximum projective dimension of the simples.
pub fn global_dim<K: Field>(a: &Algebra<K>, bound: usize) -> Result<Dim> {
    let mut d = Dim::Finite(0);
    for i in 0..a.num_simples() {
        d = d.max(proj_dim(&Module::simple(a, i), bound)?);
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    /// Injective dimension of the regular right module.
    pub right: Dim,
    /// Injective dimension of the regular left module.
    pub left: Dim,
    pub gdim: Dim,
}

/// Injective dimensions of the regular module on both sides.
pub fn gorenstein_dimension<K: Field>(a: &Algebra<K>, bound: usize) -> Result<GorensteinReport> {
    let op = a.opposite();
    let mut right = Dim::Finite(0);
    for i in 0..a.num_simples() {
        right = right.max(proj_dim(&Module::projective(a, i).dual(), bound)?);
    }
    let mut left = Dim::Finite(0);
    for i in 0..op.num_simples() {
        left = left.max(proj_dim(&Module::projective(&op, i).dual(), bound)?);
    }
    let gdim = match (right, left) {
        (Dim::Finite(r), Dim::Finite(l)) if r == l => Dim::Finite(r),
        (Dim::Finite(r), Dim::Finite(l)) => {
            return Err(Error::Internal(format!(
                "injective dimensions of the regular module differ on the two sides ({r} vs {l})"
            )))
        }
        (Dim::Infinite, _) | (_, Dim::Infinite) => Dim::Infinite,
        (r, l) => r.max(l),
    };
    Ok(GorensteinReport { right, left, gdim })
}

/// `Ext^i(M, A) = 0` for `1 <= i <= bound`.
pub fn left_perp_test<K: Field>(m: &Module<K>, bound: usize) -> Result<bool> {
    let a = Module::regular(m.algebra());
    Ok(ext_dims(m, &a, bound)?.iter().all(|&d| d == 0))
}

/// Gorenstein projectivity over an algebra of finite Gorenstein dimension:
/// `Ext^i(M, A) = 0` for `1 <= i <= gdim + dim M + 1`.
pub fn is_gorenstein_projective<K: Field>(m: &Module<K>, gdim: Dim) -> Result<bool> {
    let Dim::Finite(g) = gdim else {
        return Err(Error::Hypothesis(format!("Gorenstein dimension is {gdim}, not finite")));
    };
    left_perp_test(m, g + m.dim() + 1)
}

/// The extension `0 -> A -> E -> B -> 0` obtained by pushing
/// `0 -> Omega(B) -iota-> P0 -eps-> B -> 0` out along `phi: Omega(B) -> A`.
/// Returns `E` with the maps `A -> E` and `E -> B`.
pub fn pushout_extension<K: Field>(
    iota: &ModuleMap<K>,
    eps: &ModuleMap<K>,
    phi: &ModuleMap<K>,
) -> Result<(Module<K>, ModuleMap<K>, ModuleMap<K>)> {
    let f = eps.source().field();
    let a = phi.target();
    let b = eps.target();
    let p0 = eps.source();
    let (sum, inj, _) = direct_sum(b.algebra(), &[a.clone(), p0.clone()])?;
    let glue = Matrix::hstack(&[phi.matrix(), &iota.matrix().scale(&f.neg(&f.one()))]);
    let (e, proj, section) = ModuleMap::from_parts(iota.source(), &sum, glue).cokernel();
    let inclusion = inj[0].then(&proj);
    let onto = Matrix::vstack(&[&Matrix::zeros(f, a.dim(), b.dim()), eps.matrix()]);
    let projection = ModuleMap::from_parts(&e, b, section.mul(&onto));
    if e.dim() != a.dim() + b.dim() {
        return Err(Error::Internal("pushout has the wrong dimension".into()));
    }
    Ok((e, inclusion, projection))
}

/// A pseudo-random extension of `B` by `A` (possibly split).
pub fn random_extension<K: Field, R: rand::Rng + ?Sized>(
    b: &Module<K>,
    a: &Module<K>,
    rng: &mut R,
) -> Result<(Module<K>, ModuleMap<K>, ModuleMap<K>)> {
    b.same_algebra(a)?;
    let (omega, iota, pc) = syzygy_with_cover(b);
    let h = hom_basis(&omega, a)?;
    let c: Vec<K::Elem> = (0..h.dim()).map(|_| a.field().random(rng, 2)).collect();
    let phi = if h.dim() == 0 { ModuleMap::zero(&omega, a) } else { h.combine(&c) };
    pushout_extension(&iota, &pc.epi, &phi)
}

/// Exactness of `0 -> Omega(M) -> P0 -> M -> 0`.
pub fn check_syzygy_sequence<K: Field>(m: &Module<K>) -> bool {
    let (omega, incl, pc) = syzygy_with_cover(m);
    incl.then(&pc.epi).is_zero()
        && pc.epi.is_surjective()
        && incl.is_injective()
        && omega.dim() + m.dim() == pc.cover.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation as Pres};
    use crate::field::{FieldSpec, Rationals};

    fn lambda(n: usize) -> Algebra<Rationals> {
        build_algebra(&Rationals, &Pres::truncated_polynomial(FieldSpec::Rational, n)).unwrap()
    }

    fn a2() -> Algebra<Rationals> {
        build_algebra(&Rationals, &Pres::linear_quiver(FieldSpec::Rational, 2)).unwrap()
    }

    #[test]
    fn covers_and_syzygies_over_lambda2() {
        let a = lambda(2);
        let s = Module::simple(&a, 0);
        let pc = projective_cover(&s);
        assert_eq!(pc.cover.dim(), 2);
        assert!(pc.epi.is_surjective());
        let omega = syzygy(&s, 1);
        assert!(is_isomorphic(&omega, &s).unwrap().is_some());
        assert!(is_isomorphic(&syzygy(&s, 2), &s).unwrap().is_some());
        let p = Module::regular(&a);
        assert_eq!(projective_cover(&p).cover.dim(), 2);
        assert!(syzygy(&p, 1).is_zero());
        assert!(projective_cover(&Module::zero(&a)).cover.is_zero());
        assert!(check_syzygy_sequence(&s));
    }

    #[test]
    fn ext_over_lambda2() {
        let a = lambda(2);
        let s = Module::simple(&a, 0);
        let p = Module::regular(&a);
        assert_eq!(ext_dim(&s, &s, 1).unwrap(), 1);
        assert_eq!(ext_dim(&p, &s, 1).unwrap(), 0);
        assert_eq!(ext_dim(&s, &s, 0).unwrap(), 1);
        assert_eq!(ext_dim_dual(&s, &s, 1).unwrap(), 1);
        assert_eq!(proj_dim(&s, 5).unwrap(), Dim::Infinite);
        assert_eq!(proj_dim(&p, 5).unwrap(), Dim::Finite(0));
        assert!(left_perp_test(&s, 4).unwrap());
    }

    #[test]
    fn a2_dimensions() {
        let a = a2();
        // vertex 2 is the sink: its projective is simple
        let s1 = Module::simple(&a, 0);
        let s2 = Module::simple(&a, 1);
        assert_eq!(proj_dim(&s1, 4).unwrap(), Dim::Finite(1));
        assert_eq!(proj_dim(&s2, 4).unwrap(), Dim::Finite(0));
        assert!(!left_perp_test(&s1, 3).unwrap());
        let g = gorenstein_dimension(&a, 4).unwrap();
        assert_eq!(g.gdim, Dim::Finite(1));
        assert_eq!(global_dim(&a, 4).unwrap(), Dim::Finite(1));
        assert!(!is_gorenstein_projective(&s1, g.gdim).unwrap());
        assert!(is_gorenstein_projective(&Module::projective(&a, 0), g.gdim).unwrap());
        assert_eq!(gorenstein_dimension(&lambda(2), 4).unwrap().gdim, Dim::Finite(0));
    }
}
