//! Finite-dimensional right modules and their homomorphisms.
//!
//! A module is a vector space `k^d` with one `d x d` matrix per basis element
//! of its algebra; a vector `v` is moved by `b` to `v * action(b)`. A module
//! map `M -> N` is a `dim M x dim N` matrix `F` with
//! `action_M(b) * F = F * action_N(b)` for every basis element `b`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Coordinates, Matrix, RowReducer};

#[derive(Clone)]
pub struct Module<K: Field> {
    algebra: Algebra<K>,
    dim: usize,
    action: Arc<Vec<Matrix<K>>>,
}

impl<K: Field> fmt::Debug for Module<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {}, dims {:?})", self.dim, self.dimension_vector())
    }
}

impl<K: Field> Module<K> {
    /// Build and validate a module from one action matrix per basis element.
    pub fn new(algebra: &Algebra<K>, action: Vec<Matrix<K>>) -> Result<Self> {
        let dim = action.first().map_or(0, |m| m.rows());
        if action.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (j, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!("action of {} is not {dim}x{dim}", algebra.labels()[j])));
            }
        }
        let m = Module { algebra: algebra.clone(), dim, action: Arc::new(action) };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: &Algebra<K>, dim: usize, action: Vec<Matrix<K>>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        Module { algebra: algebra.clone(), dim, action: Arc::new(action) }
    }

    pub(crate) fn from_shared(algebra: &Algebra<K>, dim: usize, action: Arc<Vec<Matrix<K>>>) -> Self {
        Module { algebra: algebra.clone(), dim, action }
    }

    /// Check that the action respects the multiplication and the unit.
    pub fn validate(&self) -> Result<()> {
        self.validate_against(&(0..self.algebra.dim()).collect::<Vec<_>>())
    }

    /// Check `action(b_i) action(g) = action(b_i g)` for all `i` and every `g` in
    /// `generators`, plus the unit. Enough when the generators generate the algebra
    /// and every other action matrix is the matching product of theirs.
    fn validate_against(&self, generators: &[usize]) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        for i in 0..a.dim() {
            for &j in generators {
                let lhs = self.action[i].mul(&self.action[j]);
                let prod = a.right_matrix(j).row(i).to_vec();
                if lhs != self.element_action(&prod) {
                    return Err(Error::NotIntertwining(format!(
                        "{} * {}",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        if self.element_action(&a.unit()) != Matrix::identity(f, self.dim) {
            return Err(Error::Input("the unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn zero(algebra: &Algebra<K>) -> Self {
        let f = algebra.field();
        Module::from_parts(algebra, 0, vec![Matrix::zeros(f, 0, 0); algebra.dim()])
    }

    /// The algebra as a right module over itself.
    pub fn regular(algebra: &Algebra<K>) -> Self {
        Module::from_parts(algebra, algebra.dim(), algebra.right_matrices().to_vec())
    }

    /// The indecomposable projective `e_i A`.
    pub fn projective(algebra: &Algebra<K>, i: usize) -> Self {
        let p = &algebra.projective_data()[i];
        Module::from_shared(algebra, p.basis.rows(), p.action.clone())
    }

    /// The simple top of the `i`-th indecomposable projective.
    pub fn simple(algebra: &Algebra<K>, i: usize) -> Self {
        Module::projective(algebra, i).top().0
    }

    /// The injective hull of the `i`-th simple: dual of a projective over the opposite algebra.
    pub fn injective(algebra: &Algebra<K>, i: usize) -> Self {
        let op = algebra.opposite();
        Module::projective(&op, i).dual_over(algebra)
    }

    /// Module given by a quiver representation: one space per vertex and one
    /// `dim(from) x dim(to)` matrix per arrow.
    pub fn from_representation(algebra: &Algebra<K>, dims: &[usize], arrows: &[Matrix<K>]) -> Result<Self> {
        let q = algebra
            .quiver()
            .ok_or_else(|| Error::Unsupported("representations need a quiver presentation".into()))?;
        let f = algebra.field();
        if dims.len() != q.vertices.len() || arrows.len() != q.arrows.len() {
            return Err(Error::Dimension("representation does not match the quiver".into()));
        }
        let mut offset = vec![0];
        for d in dims {
            offset.push(offset.last().unwrap() + d);
        }
        let total = *offset.last().unwrap();
        let mut arrow_full = Vec::new();
        for (k, (a, m)) in q.arrows.iter().zip(arrows).enumerate() {
            if m.rows() != dims[a.from] || m.cols() != dims[a.to] {
                return Err(Error::Dimension(format!(
                    "arrow {}: expected {}x{} matrix, got {}x{} (index {k})",
                    a.name,
                    dims[a.from],
                    dims[a.to],
                    m.rows(),
                    m.cols()
                )));
            }
            let mut full = Matrix::zeros(f, total, total);
            full.set_block(offset[a.from], offset[a.to], m);
            arrow_full.push(full);
        }
        let action = q
            .basis_paths
            .iter()
            .map(|p| {
                if p.arrows.is_empty() {
                    let mut e = Matrix::zeros(f, total, total);
                    for i in offset[p.start]..offset[p.start + 1] {
                        e.set(i, i, f.one());
                    }
                    e
                } else {
                    let mut acc = arrow_full[p.arrows[0]].clone();
                    for &k in &p.arrows[1..] {
                        acc = acc.mul(&arrow_full[k]);
                    }
                    acc
                }
            })
            .collect::<Vec<_>>();
        let m = Module { algebra: algebra.clone(), dim: total, action: Arc::new(action) };
        if let Err(e) = m.validate_against(&q.arrow_basis) {
            return Err(match e {
                Error::NotIntertwining(s) => Error::Input(format!("representation violates the relations at {s}")),
                other => other,
            });
        }
        Ok(m)
    }

    /// Inverse of [`Module::from_representation`], in a vertex-adapted basis.
    pub fn to_representation(&self) -> Result<(Vec<usize>, Vec<Matrix<K>>)> {
        let q = self
            .algebra
            .quiver()
            .ok_or_else(|| Error::Unsupported("representations need a quiver presentation".into()))?;
        let blocks = self.vertex_blocks();
        let dims = blocks.iter().map(|b| b.rows()).collect();
        let coords: Vec<Coordinates<K>> = blocks.iter().map(|b| Coordinates::new(b)).collect::<Result<_>>()?;
        let mut mats = Vec::new();
        for (k, a) in q.arrows.iter().enumerate() {
            let img = blocks[a.from].mul(&self.action[q.arrow_basis[k]]);
            mats.push(coords[a.to].coords_rows(&img)?);
        }
        Ok((dims, mats))
    }

    pub fn algebra(&self) -> &Algebra<K> {
        &self.algebra
    }
    pub fn field(&self) -> &K {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn action(&self, j: usize) -> &Matrix<K> {
        &self.action[j]
    }
    pub fn actions(&self) -> &[Matrix<K>] {
        &self.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn element_action(&self, x: &[K::Elem]) -> Matrix<K> {
        let f = self.field();
        let mut acc = Matrix::zeros(f, self.dim, self.dim);
        for (j, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                acc.add_scaled(c, &self.action[j]);
            }
        }
        acc
    }

    /// Bases of `M e_i` for each primitive idempotent, as row matrices.
    pub fn vertex_blocks(&self) -> Vec<Matrix<K>> {
        self.algebra.idempotents().iter().map(|&e| self.action[e].row_space()).collect()
    }

    /// `dim M e_i` for each primitive idempotent.
    pub fn dimension_vector(&self) -> Vec<usize> {
        self.algebra.idempotents().iter().map(|&e| self.action[e].rank()).collect()
    }

    /// Same module, rewritten in the basis given by the rows of `p`.
    pub fn change_basis(&self, p: &Matrix<K>) -> Result<Self> {
        let inv = p.inverse().ok_or_else(|| Error::Input("change of basis is singular".into()))?;
        let action = self.action.iter().map(|a| p.mul(a).mul(&inv)).collect();
        Ok(Module::from_parts(&self.algebra, self.dim, action))
    }

    /// Submodule spanned by the (independent, invariant) rows of `basis`.
    pub fn submodule(&self, basis: &Matrix<K>) -> Result<(Module<K>, ModuleMap<K>)> {
        let coords = Coordinates::new(basis)?;
        let action = self
            .action
            .iter()
            .map(|a| coords.coords_rows(&basis.mul(a)).map_err(|_| Error::Input("subspace is not a submodule".into())))
            .collect::<Result<Vec<_>>>()?;
        let sub = Module::from_parts(&self.algebra, basis.rows(), action);
        let incl = ModuleMap::from_parts(&sub, self, basis.clone());
        Ok((sub, incl))
    }

    /// Submodule generated by the given vectors.
    pub fn generated_submodule(&self, vectors: &Matrix<K>) -> Result<(Module<K>, ModuleMap<K>)> {
        let f = self.field();
        let mut red = RowReducer::new(f, self.dim);
        let mut rows = Vec::new();
        let mut queue: Vec<Vec<K::Elem>> = (0..vectors.rows()).map(|i| vectors.row_vec(i)).collect();
        while let Some(v) = queue.pop() {
            if red.insert(v.clone()) {
                let vm = Matrix::row_vector(f, v.clone());
                for a in self.action.iter() {
                    queue.push(vm.mul(a).into_data());
                }
                rows.push(v);
            }
        }
        self.submodule(&Matrix::from_rows(f, self.dim, rows))
    }

    /// Quotient by the submodule spanned by the rows of `sub`; returns the
    /// quotient, the projection, and a linear section (quotient basis lifted).
    pub fn quotient(&self, sub: &Matrix<K>) -> Result<(Module<K>, ModuleMap<K>, Matrix<K>)> {
        let t = sub.complement_rows();
        let q = t.rows();
        let b = if sub.rows() == 0 { t.clone() } else { Matrix::vstack(&[&t, sub]) };
        let binv = b.inverse().ok_or_else(|| Error::Internal("quotient basis is singular".into()))?;
        let proj_full = binv.block(0, 0, self.dim, q);
        let mut action = Vec::with_capacity(self.action.len());
        for a in self.action.iter() {
            let img = t.mul(a).mul(&binv);
            // the submodule part of a vector must stay inside the submodule
            action.push(img.block(0, 0, q, q));
        }
        let quo = Module::from_parts(&self.algebra, q, action);
        for a in self.action.iter() {
            let leak = sub.mul(a).mul(&proj_full);
            if !leak.is_zero() {
                return Err(Error::Input("subspace is not a submodule".into()));
            }
        }
        let proj = ModuleMap::from_parts(self, &quo, proj_full);
        Ok((quo, proj, t))
    }

    /// `M * rad(A)` and its inclusion.
    pub fn radical(&self) -> (Module<K>, ModuleMap<K>) {
        let f = self.field();
        let rad = self.algebra.radical();
        let mut red = RowReducer::new(f, self.dim);
        for r in 0..rad.rows() {
            let m = self.element_action(rad.row(r));
            for i in 0..self.dim {
                red.insert(m.row_vec(i));
            }
        }
        self.submodule(&red.basis()).expect("the radical is a submodule")
    }

    /// `M / M rad(A)` with the projection and a section.
    pub fn top(&self) -> (Module<K>, ModuleMap<K>, Matrix<K>) {
        let (_, incl) = self.radical();
        self.quotient(incl.matrix()).expect("the radical is a submodule")
    }

    /// Vectors killed by the radical.
    pub fn socle(&self) -> (Module<K>, ModuleMap<K>) {
        let f = self.field();
        let rad = self.algebra.radical();
        let parts: Vec<Matrix<K>> = (0..rad.rows()).map(|r| self.element_action(rad.row(r))).collect();
        let basis = if parts.is_empty() {
            Matrix::identity(f, self.dim)
        } else {
            let refs: Vec<&Matrix<K>> = parts.iter().collect();
            Matrix::hstack(&refs).left_kernel()
        };
        let basis = basis.row_space();
        self.submodule(&basis).expect("the socle is a submodule")
    }

    /// `Hom_k(M, k)` as a right module over the opposite algebra.
    pub fn dual(&self) -> Module<K> {
        self.dual_over(&self.algebra.opposite())
    }

    /// Dual, attached to `target` which must be the opposite of this module's algebra.
    pub(crate) fn dual_over(&self, target: &Algebra<K>) -> Module<K> {
        let action = self.action.iter().map(|a| a.transpose()).collect();
        Module::from_parts(target, self.dim, action)
    }

    /// The same module attached to an equal algebra (same digest), e.g. the
    /// opposite of the opposite.
    pub fn rebind(&self, algebra: &Algebra<K>) -> Result<Module<K>> {
        if *algebra != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module::from_shared(algebra, self.dim, self.action.clone()))
    }

    pub fn identity(&self) -> ModuleMap<K> {
        ModuleMap::from_parts(self, self, Matrix::identity(self.field(), self.dim))
    }

    pub fn same_algebra(&self, other: &Module<K>) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// Every submodule of a module over a finite field, as reduced row bases in
/// lattice order from the zero submodule. `None` when `M` has more than
/// `limit` vectors or the field is infinite.
pub fn all_submodules<K: Field>(m: &Module<K>, limit: u64) -> Option<Vec<Matrix<K>>> {
    let f = m.field();
    let elems = f.elements()?;
    let q = elems.len() as u64;
    let count = q.checked_pow(m.dim() as u32).filter(|&c| c <= limit)?;
    let vectors: Vec<Vec<K::Elem>> = (0..count)
        .map(|mut n| {
            (0..m.dim())
                .map(|_| {
                    let x = elems[(n % q) as usize].clone();
                    n /= q;
                    x
                })
                .collect()
        })
        .collect();
    let zero = Matrix::zeros(f, 0, m.dim());
    let mut seen = std::collections::HashSet::new();
    seen.insert(zero.data().to_vec());
    let mut out = vec![zero];
    let mut next = 0;
    while next < out.len() {
        let u = out[next].clone();
        next += 1;
        let mut red = RowReducer::new(f, m.dim());
        for r in 0..u.rows() {
            red.insert(u.row_vec(r));
        }
        for v in &vectors {
            if red.contains(v) {
                continue;
            }
            let gens = Matrix::vstack(&[&u, &Matrix::row_vector(f, v.clone())]);
            let (_, incl) = m.generated_submodule(&gens).expect("generated subspaces are submodules");
            let basis = incl.matrix().rref().reduced;
            if seen.insert(basis.data().to_vec()) {
                out.push(basis);
            }
        }
    }
    Some(out)
}

/// `M_1 + ... + M_r` with injections and projections.
pub fn direct_sum<K: Field>(algebra: &Algebra<K>, parts: &[Module<K>]) -> Result<(Module<K>, Vec<ModuleMap<K>>, Vec<ModuleMap<K>>)> {
    for p in parts {
        if p.algebra != *algebra {
            return Err(Error::AlgebraMismatch);
        }
    }
    let f = algebra.field();
    let total: usize = parts.iter().map(|p| p.dim).sum();
    let action = (0..algebra.dim())
        .map(|j| {
            let blocks: Vec<&Matrix<K>> = parts.iter().map(|p| &p.action[j]).collect();
            Matrix::block_diagonal(f, &blocks)
        })
        .collect();
    let sum = Module::from_parts(algebra, total, action);
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut off = 0;
    for p in parts {
        let mut i = Matrix::zeros(f, p.dim, total);
        i.set_block(0, off, &Matrix::identity(f, p.dim));
        proj.push(ModuleMap::from_parts(&sum, p, i.transpose()));
        inj.push(ModuleMap::from_parts(p, &sum, i));
        off += p.dim;
    }
    Ok((sum, inj, proj))
}

/// The indecomposable projectives `e_i A`, in idempotent order.
pub fn regular_projectives<K: Field>(algebra: &Algebra<K>) -> Vec<Module<K>> {
    (0..algebra.num_simples()).map(|i| Module::projective(algebra, i)).collect()
}

#[derive(Clone)]
pub struct ModuleMap<K: Field> {
    source: Module<K>,
    target: Module<K>,
    matrix: Matrix<K>,
}

impl<K: Field> fmt::Debug for ModuleMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {}, {:?})", self.source.dim, self.target.dim, self.matrix)
    }
}

impl<K: Field> ModuleMap<K> {
    /// Validated constructor: the matrix must intertwine the two actions.
    pub fn new(source: &Module<K>, target: &Module<K>, matrix: Matrix<K>) -> Result<Self> {
        source.same_algebra(target)?;
        if matrix.rows() != source.dim || matrix.cols() != target.dim {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        let a = source.algebra();
        for j in 0..a.dim() {
            if source.action[j].mul(&matrix) != matrix.mul(&target.action[j]) {
                return Err(Error::NotIntertwining(a.labels()[j].clone()));
            }
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn from_parts(source: &Module<K>, target: &Module<K>, matrix: Matrix<K>) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (source.dim, target.dim));
        ModuleMap { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn zero(source: &Module<K>, target: &Module<K>) -> Self {
        ModuleMap::from_parts(source, target, Matrix::zeros(source.field(), source.dim, target.dim))
    }

    pub fn source(&self) -> &Module<K> {
        &self.source
    }
    pub fn target(&self) -> &Module<K> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap<K>) -> ModuleMap<K> {
        assert_eq!(self.target.dim, next.source.dim, "composing incompatible maps");
        ModuleMap::from_parts(&self.source, &next.target, self.matrix.mul(&next.matrix))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }
    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    pub fn kernel(&self) -> (Module<K>, ModuleMap<K>) {
        let basis = self.matrix.left_kernel().row_space();
        self.source.submodule(&basis).expect("kernels are submodules")
    }

    /// Image, with the corestriction `source -> im` and the inclusion `im -> target`.
    pub fn image(&self) -> (Module<K>, ModuleMap<K>, ModuleMap<K>) {
        let basis = self.matrix.row_space();
        let (im, incl) = self.target.submodule(&basis).expect("images are submodules");
        let coords = Coordinates::new(&basis).expect("independent");
        let epi = coords.coords_rows(&self.matrix).expect("rows lie in the image");
        let epi = ModuleMap::from_parts(&self.source, &im, epi);
        (im, epi, incl)
    }

    /// Cokernel with projection and a linear section.
    pub fn cokernel(&self) -> (Module<K>, ModuleMap<K>, Matrix<K>) {
        let basis = self.matrix.row_space();
        self.target.quotient(&basis).expect("images are submodules")
    }

    pub fn add(&self, other: &ModuleMap<K>) -> ModuleMap<K> {
        ModuleMap::from_parts(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, c: &K::Elem) -> ModuleMap<K> {
        ModuleMap::from_parts(&self.source, &self.target, self.matrix.scale(c))
    }
}

/// A basis of `Hom_A(M, N)`.
#[derive(Clone)]
pub struct HomBasis<K: Field> {
    source: Module<K>,
    target: Module<K>,
    maps: Vec<Matrix<K>>,
    coords: OnceLock<Coordinates<K>>,
}

impl<K: Field> fmt::Debug for HomBasis<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomBasis(dim {})", self.maps.len())
    }
}

impl<K: Field> HomBasis<K> {
    /// Wrap linearly independent intertwiners.
    pub(crate) fn from_maps(source: &Module<K>, target: &Module<K>, maps: Vec<Matrix<K>>) -> Self {
        HomBasis { source: source.clone(), target: target.clone(), maps, coords: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }
    pub fn source(&self) -> &Module<K> {
        &self.source
    }
    pub fn target(&self) -> &Module<K> {
        &self.target
    }
    pub fn matrices(&self) -> &[Matrix<K>] {
        &self.maps
    }
    pub fn map(&self, i: usize) -> ModuleMap<K> {
        ModuleMap::from_parts(&self.source, &self.target, self.maps[i].clone())
    }
    pub fn maps(&self) -> Vec<ModuleMap<K>> {
        (0..self.dim()).map(|i| self.map(i)).collect()
    }

    /// Linear combination of the basis maps.
    pub fn combine(&self, coeffs: &[K::Elem]) -> ModuleMap<K> {
        let f = self.source.field();
        let mut acc = Matrix::zeros(f, self.source.dim, self.target.dim);
        for (c, m) in coeffs.iter().zip(&self.maps) {
            acc.add_scaled(c, m);
        }
        ModuleMap::from_parts(&self.source, &self.target, acc)
    }

    /// Coordinates of a matrix in this basis, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix<K>) -> Option<Vec<K::Elem>> {
        let coords = self.coords.get_or_init(|| {
            let f = self.source.field();
            let width = self.source.dim * self.target.dim;
            let rows = self.maps.iter().map(|m| m.data().to_vec()).collect();
            Coordinates::new(&Matrix::from_rows(f, width, rows)).expect("hom basis is independent")
        });
        coords.coords(m.data())
    }
}

/// Basis of `Hom_A(M, N)`.
///
/// Starts from the maps respecting the idempotent decomposition, then cuts
/// the space down by the intertwining equations of the radical generators
/// followed by every remaining basis element of the algebra.
pub fn hom_basis<K: Field>(m: &Module<K>, n: &Module<K>) -> Result<HomBasis<K>> {
    m.same_algebra(n)?;
    let a = m.algebra();
    let f = a.field();
    let mut maps = Vec::new();
    if m.dim > 0 && n.dim > 0 {
        let bm = m.vertex_blocks();
        let bn = n.vertex_blocks();
        let pm = Matrix::vstack_or_empty(f, m.dim, &bm);
        let pm_inv = pm.inverse().ok_or_else(|| Error::Internal("idempotents do not decompose the module".into()))?;
        let mut off = 0;
        for (b_m, b_n) in bm.iter().zip(&bn) {
            for r in 0..b_m.rows() {
                let col = Matrix::from_rows(f, 1, pm_inv.col_vec(off + r).into_iter().map(|x| vec![x]).collect());
                for c in 0..b_n.rows() {
                    maps.push(col.mul(&b_n.select_rows(&[c])));
                }
            }
            off += b_m.rows();
        }
        let idem: Vec<usize> = a.idempotents().to_vec();
        let mut constraints: Vec<Vec<K::Elem>> = a.radical_generators().to_vec();
        constraints.extend((0..a.dim()).filter(|j| !idem.contains(j)).map(|j| a.basis_vector(j)));
        for x in constraints {
            if maps.is_empty() {
                break;
            }
            let am = m.element_action(&x);
            let an = n.element_action(&x);
            maps = restrict(f, maps, &am, &an);
        }
    }
    Ok(HomBasis { source: m.clone(), target: n.clone(), maps, coords: OnceLock::new() })
}

/// Keep the combinations of `maps` that intertwine `am` and `an`.
fn restrict<K: Field>(f: &K, maps: Vec<Matrix<K>>, am: &Matrix<K>, an: &Matrix<K>) -> Vec<Matrix<K>> {
    let defects: Vec<Matrix<K>> = maps.iter().map(|fm| am.mul(fm).sub(&fm.mul(an))).collect();
    if defects.iter().all(|d| d.is_zero()) {
        return maps;
    }
    let width = defects[0].rows() * defects[0].cols();
    // rows of `sys` are the flattened defects; we need v with v * sys = 0
    let sys = Matrix::from_rows(f, width, defects.into_iter().map(|d| d.into_data()).collect());
    let kernel = sys.left_kernel();
    (0..kernel.rows())
        .map(|s| {
            let mut acc = Matrix::zeros(f, maps[0].rows(), maps[0].cols());
            for (c, fm) in kernel.row(s).iter().zip(&maps) {
                acc.add_scaled(c, fm);
            }
            acc
        })
        .collect()
}

/// `dim Hom_A(M, N)`.
pub fn hom_dim<K: Field>(m: &Module<K>, n: &Module<K>) -> Result<usize> {
    Ok(hom_basis(m, n)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation};
    use crate::field::{FieldSpec, Rationals};

    fn lambda(n: usize) -> Algebra<Rationals> {
        build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, n)).unwrap()
    }

    #[test]
    fn lambda2_hom_table() {
        let a = lambda(2);
        let s = Module::simple(&a, 0);
        let p = Module::regular(&a);
        assert_eq!(s.dim(), 1);
        assert_eq!(hom_dim(&s, &s).unwrap(), 1);
        assert_eq!(hom_dim(&s, &p).unwrap(), 1);
        assert_eq!(hom_dim(&p, &s).unwrap(), 1);
        assert_eq!(hom_dim(&p, &p).unwrap(), 2);
    }

    #[test]
    fn multiplication_by_x() {
        let a = lambda(2);
        let p = Module::regular(&a);
        let x = ModuleMap::new(&p, &p, a.left_matrix(&a.basis_vector(1))).unwrap();
        assert_eq!(x.kernel().0.dim(), 1);
        assert_eq!(x.image().0.dim(), 1);
        assert_eq!(x.cokernel().0.dim(), 1);
        // not an intertwiner of the regular module: right multiplication is
        let bad = ModuleMap::new(&p, &p, Matrix::from_i64(&Rationals, &[&[1, 0], &[0, 2]]));
        assert!(matches!(bad, Err(Error::NotIntertwining(_))));
    }

    #[test]
    fn radical_top_socle() {
        let a = lambda(2);
        let p = Module::regular(&a);
        assert_eq!(p.radical().0.dim(), 1);
        assert_eq!(p.top().0.dim(), 1);
        assert_eq!(p.socle().0.dim(), 1);
        let ss = build_algebra(&Rationals, &Presentation::semisimple(FieldSpec::Rational, 2)).unwrap();
        let r = Module::regular(&ss);
        assert_eq!(r.radical().0.dim(), 0);
        assert_eq!(r.socle().0.dim(), 2);
        let s1 = Module::simple(&ss, 0);
        let s2 = Module::simple(&ss, 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
    }

    #[test]
    fn representation_round_trip() {
        let a = build_algebra(&Rationals, &Presentation::linear_quiver(FieldSpec::Rational, 2)).unwrap();
        let m = Module::from_representation(&a, &[1, 1], &[Matrix::from_i64(&Rationals, &[&[1]])]).unwrap();
        m.validate().unwrap();
        let (dims, mats) = m.to_representation().unwrap();
        assert_eq!(dims, vec![1, 1]);
        assert!(!mats[0].is_zero());
        assert_eq!(hom_dim(&Module::projective(&a, 0), &m).unwrap(), 1);
        assert_eq!(m.dual().dim(), 2);
        m.dual().validate().unwrap();
    }
}
