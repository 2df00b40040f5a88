use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{
    hom_from_projective, is_injective, is_projective, minimal_presentation, pushout_extension, syzygy_with_cover,
};
use crate::matrix::{Coordinates, Matrix, RowReducer};
use crate::module::{hom_basis, Module, ModuleMap};

use super::decompose::{decompose_any, is_isomorphic};
use super::endring::{identity_first, local_eigenvalue};

/// One row per matrix, entries in row-major order.
fn flatten<K: Field>(f: &K, ms: &[Matrix<K>], width: usize) -> Matrix<K> {
    Matrix::from_rows(f, width, ms.iter().map(|m| m.data().to_vec()).collect())
}

/// `Hom_A(P, A)` for `P` a sum of indecomposable projectives, as a right
/// module over the opposite algebra (`(phi . b)(p) = b phi(p)`), with its basis.
fn dual_of_projective<K: Field>(p: &Module<K>, summands: &[usize]) -> Result<(Module<K>, Vec<Matrix<K>>)> {
    let a = p.algebra();
    let f = a.field();
    let op = a.opposite();
    let reg = Module::regular(a);
    let basis = hom_from_projective(p, summands, &reg);
    let width = p.dim() * a.dim();
    if basis.is_empty() {
        return Ok((Module::zero(&op), basis));
    }
    let coords = Coordinates::new(&flatten(f, &basis, width))?;
    let mut action = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        let l = a.left_matrix(&a.basis_vector(j));
        let moved: Vec<Matrix<K>> = basis.iter().map(|phi| phi.mul(&l)).collect();
        action.push(coords.coords_rows(&flatten(f, &moved, width))?);
    }
    Ok((Module::from_parts(&op, basis.len(), action), basis))
}

/// Auslander-Bridger transpose: the cokernel of `Hom(P0, A) -> Hom(P1, A)` for a
/// minimal presentation of `M`. A module over the opposite algebra.
pub fn transpose<K: Field>(m: &Module<K>) -> Result<Module<K>> {
    let a = m.algebra();
    let f = a.field();
    let pres = minimal_presentation(m);
    let (h0, b0) = dual_of_projective(&pres.p0, &pres.summands0)?;
    let (h1, b1) = dual_of_projective(&pres.p1, &pres.summands1)?;
    if h1.is_zero() {
        return Ok(h1);
    }
    let width = pres.p1.dim() * a.dim();
    let coords = Coordinates::new(&flatten(f, &b1, width))?;
    let images: Vec<Matrix<K>> = b0.iter().map(|phi| pres.d.matrix().mul(phi)).collect();
    let mat = coords.coords_rows(&flatten(f, &images, width))?;
    let map = ModuleMap::from_parts(&h0, &h1, mat);
    Ok(map.cokernel().0)
}

/// Whether some indecomposable projective is a direct summand: some composite
/// `P_v -> M -> P_v` is invertible (the span of the composites lies in the
/// radical of the local ring `End(P_v)` otherwise).
pub fn has_projective_summand<K: Field>(m: &Module<K>) -> Result<bool> {
    let a = m.algebra();
    for v in 0..a.num_simples() {
        let p = Module::projective(a, v);
        let into = hom_from_projective(&p, &[v], m);
        if into.is_empty() {
            continue;
        }
        let back = hom_basis(m, &p)?;
        for f in &into {
            for g in back.matrices() {
                if f.mul(g).rank() == p.dim() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Auslander-Reiten translate `tau M = D Tr M`, for `M` without projective summands.
pub fn ar_translate<K: Field>(m: &Module<K>) -> Result<Module<K>> {
    if has_projective_summand(m)? {
        return Err(Error::Input("the module has a projective summand".into()));
    }
    Ok(transpose(m)?.dual_over(m.algebra()))
}

/// Inverse translate `Tr D M`, for `M` without injective summands.
pub fn ar_translate_inverse<K: Field>(m: &Module<K>) -> Result<Module<K>> {
    let d = m.dual();
    if has_projective_summand(&d)? {
        return Err(Error::Input("the module has an injective summand".into()));
    }
    transpose(&d)?.rebind(m.algebra())
}

/// An almost split sequence `0 -> tau Z -> E -> Z -> 0`.
#[derive(Clone, Debug)]
pub struct AlmostSplit<K: Field> {
    pub left: Module<K>,
    pub middle: Module<K>,
    pub right: Module<K>,
    pub inclusion: ModuleMap<K>,
    pub projection: ModuleMap<K>,
}

/// Radical of `End(Z)` for an indecomposable `Z` over a split field: every
/// basis endomorphism minus its eigenvalue.
fn radical_of_local_end<K: Field>(z: &Module<K>) -> Result<Vec<Matrix<K>>> {
    let f = z.field();
    let h = identity_first(z, hom_basis(z, z)?);
    let id = Matrix::identity(f, z.dim());
    h.matrices()[1..]
        .iter()
        .map(|g| {
            let l = local_eigenvalue(g)
                .ok_or_else(|| Error::Hypothesis("module is not indecomposable over the ground field".into()))?;
            Ok(g.sub(&id.scale(&l)))
        })
        .collect()
}

/// The almost split sequence ending at a non-projective indecomposable `Z`.
///
/// The extension class is a nonzero element of `Ext^1(Z, tau Z)` annihilated by
/// the radical of `End(Z)`; `E` is the pushout of `Omega Z -> P0` along it.
pub fn almost_split_sequence<K: Field>(z: &Module<K>) -> Result<AlmostSplit<K>> {
    let f = z.field();
    if z.is_zero() || is_projective(z) {
        return Err(Error::Input("no almost split sequence ends in a projective module".into()));
    }
    let rad = radical_of_local_end(z)?;
    let t = ar_translate(z)?;
    let (omega, iota, pc) = syzygy_with_cover(z);
    let eps = pc.epi.matrix();
    let iota_m = iota.matrix();
    let width = omega.dim() * t.dim();

    let phis = hom_basis(&omega, &t)?;
    let mut trivial = RowReducer::new(f, width);
    let restricted: Vec<Vec<K::Elem>> = hom_from_projective(&pc.cover, &pc.summands, &t)
        .iter()
        .map(|psi| iota_m.mul(psi).into_data())
        .collect();
    for r in &restricted {
        trivial.insert(r.clone());
    }
    let trivial_basis = trivial.basis();
    let h = phis.dim();

    // lift each radical endomorphism of Z to the syzygy
    let ends_p0 = hom_from_projective(&pc.cover, &pc.summands, &pc.cover);
    let p0z = pc.cover.dim() * z.dim();
    let lifts_through_eps = flatten(f, &ends_p0.iter().map(|e| e.mul(eps)).collect::<Vec<_>>(), p0z);
    let mut blocks: Vec<Matrix<K>> = Vec::new();
    for g in &rad {
        let target = Matrix::row_vector(f, eps.mul(g).into_data());
        let c = lifts_through_eps
            .solve_left(&target)?
            .ok_or_else(|| Error::Internal("endomorphism does not lift to the projective cover".into()))?;
        let mut g0 = Matrix::zeros(f, pc.cover.dim(), pc.cover.dim());
        for (k, e) in ends_p0.iter().enumerate() {
            g0.add_scaled(c.get(0, k), e);
        }
        let g1 = iota_m
            .solve_left(&iota_m.mul(&g0))?
            .ok_or_else(|| Error::Internal("lift does not preserve the syzygy".into()))?;
        let moved: Vec<Matrix<K>> = phis.matrices().iter().map(|phi| g1.mul(phi)).collect();
        blocks.push(flatten(f, &moved, width));
    }

    // c with c * (g1 phi) trivial for every radical g
    let candidates = if blocks.is_empty() {
        Matrix::identity(f, h)
    } else {
        let nb = trivial_basis.rows();
        let rows = h + nb * blocks.len();
        let cols = width * blocks.len();
        let mut big = Matrix::zeros(f, rows, cols);
        for (i, b) in blocks.iter().enumerate() {
            big.set_block(0, i * width, b);
            if nb > 0 {
                big.set_block(h + i * nb, i * width, &trivial_basis);
            }
        }
        let k = big.left_kernel();
        k.block(0, 0, k.rows(), h).row_space()
    };
    let mut class = None;
    for r in 0..candidates.rows() {
        let phi = phis.combine(candidates.row(r));
        if !trivial.contains(phi.matrix().data()) {
            class = Some(phi);
            break;
        }
    }
    let phi = class.ok_or_else(|| Error::Internal("no almost split extension class found".into()))?;

    let (e, inclusion, projection) = pushout_extension(&iota, &pc.epi, &phi)?;
    Ok(AlmostSplit { left: t, middle: e, right: z.clone(), inclusion, projection })
}

/// Limits for [`knit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnitBudget {
    pub max_dim: usize,
    pub max_steps: usize,
}

impl Default for KnitBudget {
    fn default() -> Self {
        KnitBudget { max_dim: 8, max_steps: 10_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Knitting<K: Field> {
    /// Pairwise non-isomorphic indecomposables, sorted by dimension vector.
    pub modules: Vec<Module<K>>,
    /// True when the search closed up without hitting the budget and every
    /// decomposition verdict was exhaustive.
    pub complete: bool,
    pub steps: usize,
    /// Why the search stopped early, if it did.
    pub truncated: Option<String>,
}

/// Walk the Auslander-Reiten quiver from the projectives and injectives,
/// closing under `tau`, `tau^-1`, middle terms of almost split sequences,
/// radicals of projectives and injectives modulo their socles.
///
/// For a representation-finite algebra every component reached is finite
/// and contains a projective, so the search closes up on the full list.
pub fn knit<K: Field>(a: &Algebra<K>, budget: KnitBudget) -> Result<Knitting<K>> {
    let mut found: Vec<Module<K>> = Vec::new();
    let mut next = 0;
    let mut steps = 0;
    let mut certain = true;
    let mut truncated: Option<String> = None;

    let add = |m: Module<K>, found: &mut Vec<Module<K>>, truncated: &mut Option<String>| -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        if m.dim() > budget.max_dim {
            truncated.get_or_insert_with(|| format!("a module of dimension {} exceeds max_dim", m.dim()));
            return Ok(());
        }
        for c in found.iter() {
            if is_isomorphic(c, &m)?.is_some() {
                return Ok(());
            }
        }
        found.push(m);
        Ok(())
    };
    let add_summands =
        |m: &Module<K>, found: &mut Vec<Module<K>>, truncated: &mut Option<String>, certain: &mut bool| -> Result<()> {
            if m.is_zero() {
                return Ok(());
            }
            let (d, c) = decompose_any(m)?;
            *certain &= c;
            for (p, _) in d.parts {
                add(p, found, truncated)?;
            }
            Ok(())
        };

    for i in 0..a.num_simples() {
        add_summands(&Module::projective(a, i), &mut found, &mut truncated, &mut certain)?;
    }
    for i in 0..a.num_simples() {
        add_summands(&Module::injective(a, i), &mut found, &mut truncated, &mut certain)?;
    }
    while next < found.len() {
        if steps >= budget.max_steps {
            truncated.get_or_insert_with(|| "max_steps reached".into());
            break;
        }
        steps += 1;
        let z = found[next].clone();
        next += 1;
        if is_projective(&z) {
            let (r, _) = z.radical();
            add_summands(&r, &mut found, &mut truncated, &mut certain)?;
        } else {
            let seq = almost_split_sequence(&z)?;
            add_summands(&seq.left, &mut found, &mut truncated, &mut certain)?;
            add_summands(&seq.middle, &mut found, &mut truncated, &mut certain)?;
        }
        if is_injective(&z) {
            let (_, incl) = z.socle();
            let (q, _, _) = z.quotient(&incl.matrix().row_space())?;
            add_summands(&q, &mut found, &mut truncated, &mut certain)?;
        } else {
            add_summands(&ar_translate_inverse(&z)?, &mut found, &mut truncated, &mut certain)?;
        }
    }
    found.sort_by_key(|m| (m.dim(), m.dimension_vector()));
    Ok(Knitting { complete: truncated.is_none() && certain, modules: found, steps, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation};
    use crate::field::{FieldSpec, PrimeField, Rationals};

    fn lambda(n: usize) -> Algebra<Rationals> {
        build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, n)).unwrap()
    }

    #[test]
    fn translate_of_simple_over_lambda2() {
        let a = lambda(2);
        let s = Module::simple(&a, 0);
        let tr = transpose(&s).unwrap();
        tr.validate().unwrap();
        assert_eq!(tr.dim(), 1);
        let t = ar_translate(&s).unwrap();
        t.validate().unwrap();
        assert!(is_isomorphic(&t, &s).unwrap().is_some());
        assert!(ar_translate(&Module::regular(&a)).is_err());
        assert!(transpose(&Module::regular(&a)).unwrap().is_zero());
        let seq = almost_split_sequence(&s).unwrap();
        assert_eq!(seq.middle.dim(), 2);
        assert!(is_projective(&seq.middle));
        assert!(seq.inclusion.then(&seq.projection).is_zero());
        assert!(seq.inclusion.is_injective() && seq.projection.is_surjective());
    }

    #[test]
    fn a3_translates() {
        let a = build_algebra(&Rationals, &Presentation::linear_quiver(FieldSpec::Rational, 3)).unwrap();
        // tau S_1 = S_2 for 1 -> 2 -> 3 with right modules: projectives e_1 A has dims [1,1,1]
        for i in 0..3 {
            let s = Module::simple(&a, i);
            if is_projective(&s) {
                continue;
            }
            let t = ar_translate(&s).unwrap();
            t.validate().unwrap();
            let back = ar_translate_inverse(&t).unwrap();
            back.validate().unwrap();
            assert!(is_isomorphic(&back, &s).unwrap().is_some());
        }
    }

    #[test]
    fn knitting_counts() {
        for n in 1..=4 {
            let k = knit(&lambda(n), KnitBudget::default()).unwrap();
            assert!(k.complete);
            let dims: Vec<usize> = k.modules.iter().map(|m| m.dim()).collect();
            assert_eq!(dims, (1..=n).collect::<Vec<_>>());
        }
        let a3 = build_algebra(&Rationals, &Presentation::linear_quiver(FieldSpec::Rational, 3)).unwrap();
        let k = knit(&a3, KnitBudget::default()).unwrap();
        assert!(k.complete);
        assert_eq!(k.modules.len(), 6);
        let f2 = PrimeField::new(2).unwrap();
        let l3 = build_algebra(&f2, &Presentation::truncated_polynomial(FieldSpec::Prime { p: 2 }, 3)).unwrap();
        let k = knit(&l3, KnitBudget::default()).unwrap();
        assert_eq!(k.modules.len(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let k = knit(&lambda(4), KnitBudget { max_dim: 2, max_steps: 100 }).unwrap();
        assert!(!k.complete);
        assert!(k.truncated.is_some());
        let k = knit(&lambda(4), KnitBudget { max_dim: 8, max_steps: 1 }).unwrap();
        assert!(!k.complete);
    }
}
