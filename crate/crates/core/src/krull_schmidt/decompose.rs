use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, RowReducer};
use crate::module::{hom_basis, HomBasis, Module, ModuleMap};
use crate::poly;

const SEED: u64 = 0x5eed_0f15;
const RANDOM_TRIALS: usize = 48;
/// Largest Hom space (as a finite set) searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

fn combine<K: Field>(f: &K, maps: &[Matrix<K>], coeffs: &[K::Elem]) -> Matrix<K> {
    let mut acc = Matrix::zeros(f, maps[0].rows(), maps[0].cols());
    for (c, m) in coeffs.iter().zip(maps) {
        acc.add_scaled(c, m);
    }
    acc
}

/// Every coefficient vector over a finite field, if there are at most `limit`.
fn all_coefficients<K: Field>(f: &K, k: usize, limit: u64) -> Option<Vec<Vec<K::Elem>>> {
    let elems = f.elements()?;
    let q = elems.len() as u64;
    let total = q.checked_pow(k as u32)?;
    if total > limit {
        return None;
    }
    let mut out = Vec::with_capacity(total as usize);
    for mut n in 0..total {
        let mut v = Vec::with_capacity(k);
        for _ in 0..k {
            v.push(elems[(n % q) as usize].clone());
            n /= q;
        }
        out.push(v);
    }
    Some(out)
}

/// An isomorphism `M -> N`, if one is found.
///
/// Positive answers are exact (the returned map is checked). Negative answers
/// are exact when the Hom space is small enough to search exhaustively;
/// otherwise they rest on seeded random combinations of a Hom basis, which
/// miss an isomorphism with negligible probability.
pub fn is_isomorphic<K: Field>(m: &Module<K>, n: &Module<K>) -> Result<Option<ModuleMap<K>>> {
    m.same_algebra(n)?;
    if m.dim() != n.dim() || m.dimension_vector() != n.dimension_vector() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let h = hom_basis(m, n)?;
    Ok(find_invertible(&h))
}

pub(crate) fn find_invertible<K: Field>(h: &HomBasis<K>) -> Option<ModuleMap<K>> {
    let f = h.source().field();
    let k = h.dim();
    if k == 0 {
        return None;
    }
    let maps = h.matrices();
    let dim = h.source().dim();
    for (i, m) in maps.iter().enumerate() {
        if m.rank() == dim {
            return Some(h.combine(&coeff_unit(f, k, i)));
        }
    }
    if let Some(all) = all_coefficients(f, k, EXHAUSTIVE_LIMIT) {
        return all.into_iter().map(|c| h.combine(&c)).find(|g| g.matrix().rank() == dim);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<K::Elem> = (0..k).map(|_| f.random(&mut rng, 1000)).collect();
        let g = h.combine(&c);
        if g.matrix().rank() == dim {
            return Some(g);
        }
    }
    None
}

fn coeff_unit<K: Field>(f: &K, k: usize, i: usize) -> Vec<K::Elem> {
    let mut v = vec![f.zero(); k];
    v[i] = f.one();
    v
}

/// Radical of a matrix algebra (given by a basis of matrices closed under
/// products) as the kernel of the trace form. Valid in characteristic zero.
pub fn trace_form_radical<K: Field>(f: &K, maps: &[Matrix<K>]) -> Matrix<K> {
    let k = maps.len();
    let gram = Matrix::from_fn(f, k, k, |s, t| maps[s].trace_of_product(&maps[t]));
    gram.kernel_basis().transpose()
}

/// One indecomposable summand of a module, with witnesses relative to the
/// representative of its isomorphism class.
#[derive(Clone, Debug)]
pub struct Summand<K: Field> {
    pub class: usize,
    /// Representative -> module.
    pub injection: ModuleMap<K>,
    /// Module -> representative.
    pub projection: ModuleMap<K>,
}

#[derive(Clone, Debug)]
pub struct Decomposition<K: Field> {
    pub module: Module<K>,
    /// Representatives of the isomorphism classes with multiplicities.
    pub parts: Vec<(Module<K>, usize)>,
    pub summands: Vec<Summand<K>>,
}

impl<K: Field> Decomposition<K> {
    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// Biproduct identities: `inj_k proj_l = delta_kl` and `sum proj_k inj_k = id`.
    pub fn check_witnesses(&self) -> bool {
        let f = self.module.field();
        let mut total = Matrix::zeros(f, self.module.dim(), self.module.dim());
        for (a, s) in self.summands.iter().enumerate() {
            for (b, t) in self.summands.iter().enumerate() {
                let c = s.injection.then(&t.projection);
                let ok = if a == b { c.matrix() == &Matrix::identity(f, c.source().dim()) } else { c.is_zero() };
                if !ok {
                    return false;
                }
            }
            total = total.add(s.projection.then(&s.injection).matrix());
        }
        total == Matrix::identity(f, self.module.dim())
    }
}

/// A splitting `M = U + V` into nonzero submodules, as row bases.
type Split<K> = (Matrix<K>, Matrix<K>);

/// Minimal polynomial of `x` modulo the span of `rad`, as coefficients in
/// increasing degree (monic).
fn min_poly_mod<K: Field>(f: &K, x: &Matrix<K>, rad: &[Matrix<K>]) -> Vec<K::Elem> {
    let width = x.rows() * x.cols();
    let mut red = RowReducer::new(f, width);
    for r in rad {
        red.insert(r.data().to_vec());
    }
    let r0 = rad.len();
    let mut power = Matrix::identity(f, x.rows());
    let mut inserted_powers = 0;
    loop {
        if let Some(c) = red.coordinates(power.data()) {
            // power = sum c_i * inserted_i; powers start at index r0
            let mut p: Vec<K::Elem> = (0..inserted_powers).map(|i| f.neg(&c[r0 + i])).collect();
            p.push(f.one());
            return p;
        }
        red.insert(power.data().to_vec());
        inserted_powers += 1;
        power = power.mul(x);
    }
}

/// Turn an approximate idempotent (idempotent modulo a nilpotent ideal) into a true one.
fn lift_idempotent<K: Field>(f: &K, e: Matrix<K>) -> Result<Matrix<K>> {
    let mut e = e;
    for _ in 0..64 {
        let e2 = e.mul(&e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = e2.mul(&e);
        e = e2.scale(&f.from_i64(3)).sub(&e3.scale(&f.from_i64(2)));
    }
    Err(Error::Internal("idempotent lifting did not converge".into()))
}

/// Nontrivial idempotent from the minimal polynomial of `x` modulo `rad`.
fn idempotent_from<K: Field>(f: &K, x: &Matrix<K>, rad: &[Matrix<K>]) -> Result<Option<Matrix<K>>> {
    let mu = min_poly_mod(f, x, rad);
    if mu.len() <= 2 {
        return Ok(None);
    }
    for lambda in poly::roots(f, &mu) {
        let g = poly::divide_linear(f, &mu, &lambda);
        let gl = poly::eval(f, &g, &lambda);
        if f.is_zero(&gl) {
            continue;
        }
        let e0 = poly::eval_matrix(f, &g, x).scale(&f.inv(&gl));
        let e = lift_idempotent(f, e0)?;
        let n = e.rows();
        if !e.is_zero() && e != Matrix::identity(f, n) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Fitting: if `x^N` is neither zero nor invertible it splits the module.
fn fitting_split<K: Field>(x: &Matrix<K>) -> Option<Split<K>> {
    let n = x.rows();
    let mut p = x.clone();
    let mut k = 1;
    while k < n {
        p = p.mul(&p);
        k *= 2;
    }
    let r = p.rank();
    if r == 0 || r == n {
        return None;
    }
    Some((p.row_space(), p.left_kernel().row_space()))
}

fn idempotent_split<K: Field>(e: &Matrix<K>) -> Split<K> {
    let f = e.field();
    let comp = Matrix::identity(f, e.rows()).sub(e);
    (e.row_space(), comp.row_space())
}

/// Try to split `M` over a field of characteristic zero.
fn split_char0<K: Field>(m: &Module<K>) -> Result<Option<Split<K>>> {
    let f = m.field();
    let h = hom_basis(m, m)?;
    let maps = h.matrices();
    if maps.len() <= 1 {
        return Ok(None);
    }
    let rad_coords = trace_form_radical(f, maps);
    if maps.len() - rad_coords.rows() == 1 {
        return Ok(None);
    }
    let rad: Vec<Matrix<K>> = (0..rad_coords.rows()).map(|r| combine(f, maps, rad_coords.row(r))).collect();
    let mut candidates: Vec<Matrix<K>> = maps.to_vec();
    for s in 0..maps.len() {
        for t in s + 1..maps.len() {
            candidates.push(maps[s].add(&maps[t]));
            candidates.push(maps[s].sub(&maps[t]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<K::Elem> = (0..maps.len()).map(|_| f.random(&mut rng, 3)).collect();
        candidates.push(combine(f, maps, &c));
    }
    for x in &candidates {
        if let Some(e) = idempotent_from(f, x, &rad)? {
            return Ok(Some(idempotent_split(&e)));
        }
    }
    // endomorphisms killing a vector are never invertible
    if let Some(s) = annihilator_split(m, maps, &mut rng) {
        return Ok(Some(s));
    }
    Err(Error::Unsupported(
        "no idempotent found in the endomorphism ring; it may not be split over the ground field".into(),
    ))
}

fn annihilator_split<K: Field>(m: &Module<K>, maps: &[Matrix<K>], rng: &mut ChaCha8Rng) -> Option<Split<K>> {
    let f = m.field();
    let n = m.dim();
    let mut vectors: Vec<Vec<K::Elem>> = (0..n).map(|i| Matrix::identity(f, n).row_vec(i)).collect();
    for _ in 0..8 {
        vectors.push((0..n).map(|_| f.random(rng, 3)).collect());
    }
    for v in vectors {
        let vm = Matrix::row_vector(f, v);
        let images = Matrix::from_rows(f, n, maps.iter().map(|g| vm.mul(g).into_data()).collect());
        let w = images.left_kernel();
        for r in 0..w.rows() {
            if let Some(s) = fitting_split(&combine(f, maps, w.row(r))) {
                return Some(s);
            }
        }
        for _ in 0..8 {
            if w.rows() == 0 {
                break;
            }
            let c: Vec<K::Elem> = (0..w.rows()).map(|_| f.random(rng, 3)).collect();
            let coeffs = Matrix::row_vector(f, c).mul(&w);
            if let Some(s) = fitting_split(&combine(f, maps, coeffs.data())) {
                return Some(s);
            }
        }
    }
    None
}

/// Exhaustive Fitting search for a splitting; `None` means indecomposable.
/// Falls back to sampling when the endomorphism ring is too large, in which
/// case the second component reports that the answer is not certain.
pub fn split_brute_force<K: Field>(m: &Module<K>, limit: u64) -> Result<(Option<Split<K>>, bool)> {
    let f = m.field();
    let h = hom_basis(m, m)?;
    let maps = h.matrices();
    if maps.len() <= 1 {
        return Ok((None, true));
    }
    for x in maps {
        if let Some(s) = fitting_split(x) {
            return Ok((Some(s), true));
        }
    }
    if let Some(all) = all_coefficients(f, maps.len(), limit) {
        for c in all {
            if let Some(s) = fitting_split(&combine(f, maps, &c)) {
                return Ok((Some(s), true));
            }
        }
        return Ok((None, true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..4 * RANDOM_TRIALS {
        let c: Vec<K::Elem> = (0..maps.len()).map(|_| f.random(&mut rng, 3)).collect();
        if let Some(s) = fitting_split(&combine(f, maps, &c)) {
            return Ok((Some(s), true));
        }
    }
    if let Some(s) = annihilator_split(m, maps, &mut rng) {
        return Ok((Some(s), true));
    }
    Ok((None, false))
}

/// Whether `M` is indecomposable, by exhaustive Fitting search (any field).
pub fn is_indecomposable_brute_force<K: Field>(m: &Module<K>, limit: u64) -> Result<(bool, bool)> {
    if m.is_zero() {
        return Ok((false, true));
    }
    let (s, certain) = split_brute_force(m, limit)?;
    Ok((s.is_none(), certain))
}

/// Recursively split into indecomposable submodules, given by row bases in `M`.
fn leaves<K: Field>(
    m: &Module<K>,
    split: &dyn Fn(&Module<K>) -> Result<Option<Split<K>>>,
) -> Result<Vec<Matrix<K>>> {
    let f = m.field();
    let mut out = Vec::new();
    let mut stack = vec![Matrix::identity(f, m.dim())];
    while let Some(basis) = stack.pop() {
        if basis.rows() == 0 {
            continue;
        }
        let (sub, _) = m.submodule(&basis)?;
        match split(&sub)? {
            None => out.push(basis),
            Some((u, v)) => {
                // push in reverse so the first part is processed first
                stack.push(v.mul(&basis));
                stack.push(u.mul(&basis));
            }
        }
    }
    Ok(out)
}

fn assemble<K: Field>(m: &Module<K>, leaves: Vec<Matrix<K>>) -> Result<Decomposition<K>> {
    if leaves.is_empty() {
        return Ok(Decomposition { module: m.clone(), parts: vec![], summands: vec![] });
    }
    let refs: Vec<&Matrix<K>> = leaves.iter().collect();
    let b = Matrix::vstack(&refs);
    let binv = b.inverse().ok_or_else(|| Error::Internal("summands do not span the module".into()))?;
    let mut parts: Vec<(Module<K>, usize)> = Vec::new();
    let mut summands = Vec::new();
    let mut off = 0;
    for basis in &leaves {
        let d = basis.rows();
        let (sub, incl) = m.submodule(basis)?;
        let proj = ModuleMap::from_parts(m, &sub, binv.block(0, off, m.dim(), d));
        off += d;
        let mut placed = false;
        for (c, (rep, mult)) in parts.iter_mut().enumerate() {
            if let Some(iso) = is_isomorphic(rep, &sub)? {
                let inv = iso.matrix().inverse().expect("isomorphism");
                let injection = iso.then(&incl);
                let projection = ModuleMap::from_parts(m, rep, proj.matrix().mul(&inv));
                summands.push(Summand { class: c, injection, projection });
                *mult += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            let c = parts.len();
            parts.push((sub.clone(), 1));
            summands.push(Summand { class: c, injection: incl, projection: proj });
        }
    }
    Ok(Decomposition { module: m.clone(), parts, summands })
}

/// Krull-Schmidt decomposition over a field of characteristic zero.
///
/// Finds a nontrivial idempotent of `End(M)` modulo its trace-form radical
/// from the minimal polynomial of an endomorphism with a rational eigenvalue,
/// lifts it with `e <- 3e^2 - 2e^3`, splits and recurses.
pub fn decompose<K: Field>(m: &Module<K>) -> Result<Decomposition<K>> {
    if m.field().characteristic() != 0 {
        return Err(Error::Unsupported(format!(
            "decomposition needs characteristic zero; over {} use the bounded brute-force search",
            m.field().spec()
        )));
    }
    let leaves = leaves(m, &|sub| split_char0(sub))?;
    assemble(m, leaves)
}

/// Decomposition by exhaustive Fitting search, valid over any field.
/// The flag reports whether every indecomposability verdict was exhaustive.
pub fn decompose_brute_force<K: Field>(m: &Module<K>, limit: u64) -> Result<(Decomposition<K>, bool)> {
    let certain = std::cell::Cell::new(true);
    let leaves = leaves(m, &|sub| {
        let (s, c) = split_brute_force(sub, limit)?;
        if !c {
            certain.set(false);
        }
        Ok(s)
    })?;
    Ok((assemble(m, leaves)?, certain.get()))
}

/// [`decompose`] in characteristic zero, [`decompose_brute_force`] otherwise.
/// The flag is false when some verdict rests on sampling.
pub fn decompose_any<K: Field>(m: &Module<K>) -> Result<(Decomposition<K>, bool)> {
    if m.field().characteristic() == 0 {
        Ok((decompose(m)?, true))
    } else {
        decompose_brute_force(m, EXHAUSTIVE_LIMIT)
    }
}

/// Local endomorphism ring check in characteristic zero: `End(M)/rad` is one-dimensional.
pub fn is_indecomposable<K: Field>(m: &Module<K>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    if m.field().characteristic() == 0 {
        let h = hom_basis(m, m)?;
        let rad = trace_form_radical(m.field(), h.matrices());
        return Ok(h.dim() - rad.rows() == 1);
    }
    Ok(is_indecomposable_brute_force(m, EXHAUSTIVE_LIMIT)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation};
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::module::direct_sum;

    #[test]
    fn lambda2_sum() {
        let a = build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, 2)).unwrap();
        let s = Module::simple(&a, 0);
        let p = Module::regular(&a);
        let (m, _, _) = direct_sum(&a, &[p.clone(), s.clone(), s.clone()]).unwrap();
        let d = decompose(&m).unwrap();
        assert!(d.check_witnesses());
        let mut mults: Vec<(usize, usize)> = d.parts.iter().map(|(p, k)| (p.dim(), *k)).collect();
        mults.sort();
        assert_eq!(mults, vec![(1, 2), (2, 1)]);
        assert_eq!(decompose(&p).unwrap().parts.len(), 1);
        assert!(decompose(&Module::zero(&a)).unwrap().parts.is_empty());
    }

    #[test]
    fn conjugate_actions_are_isomorphic() {
        let a = build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, 2)).unwrap();
        let mk = |c: i64| {
            Module::new(
                &a,
                vec![Matrix::identity(&Rationals, 2), Matrix::from_i64(&Rationals, &[&[0, c], &[0, 0]])],
            )
            .unwrap()
        };
        let iso = is_isomorphic(&mk(1), &mk(2)).unwrap().unwrap();
        assert!(iso.is_isomorphism());
        assert!(ModuleMap::new(&mk(1), &mk(2), iso.matrix().clone()).is_ok());
        let s = Module::simple(&a, 0);
        assert!(is_isomorphic(&s, &mk(1)).unwrap().is_none());
    }

    #[test]
    fn prime_field_is_rejected_but_brute_force_works() {
        let f = PrimeField::new(2).unwrap();
        let a = build_algebra(&f, &Presentation::truncated_polynomial(FieldSpec::Prime { p: 2 }, 2)).unwrap();
        let s = Module::simple(&a, 0);
        let (m, _, _) = direct_sum(&a, &[s.clone(), Module::regular(&a)]).unwrap();
        assert!(matches!(decompose(&m), Err(Error::Unsupported(_))));
        let (d, certain) = decompose_brute_force(&m, EXHAUSTIVE_LIMIT).unwrap();
        assert!(certain);
        assert_eq!(d.num_summands(), 2);
        assert!(d.check_witnesses());
    }
}
