use crate::algebra::{Algebra, Provenance};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, RowReducer};
use crate::module::{direct_sum, hom_basis, HomBasis, Module, ModuleMap};

use super::decompose::decompose;

/// Location of one basis element of `End(C_1 + ... + C_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockIndex {
    pub from: usize,
    pub to: usize,
    pub index: usize,
}

/// Endomorphism algebra of a sum of pairwise non-isomorphic indecomposables.
///
/// The basis is a union of bases of `Hom(C_i, C_j)`; in the diagonal blocks the
/// identity comes first and is the primitive idempotent of that summand. The
/// product is composition, `g * h = g o h` (apply `h` first), so that
/// `Hom(X, M)` is a right module by precomposition.
#[derive(Clone, Debug)]
pub struct EndRing<K: Field> {
    pub algebra: Algebra<K>,
    pub generator: Module<K>,
    pub parts: Vec<Module<K>>,
    pub injections: Vec<ModuleMap<K>>,
    pub projections: Vec<ModuleMap<K>>,
    pub blocks: Vec<BlockIndex>,
    /// `homs[i][j]` is the chosen basis of `Hom(C_i, C_j)`.
    pub homs: Vec<Vec<HomBasis<K>>>,
    /// Offset of the first basis element of each block `(i, j)`.
    block_start: Vec<Vec<usize>>,
}

impl<K: Field> EndRing<K> {
    /// Build the algebra. Every part must be indecomposable and no two parts
    /// isomorphic; each diagonal block is checked to be local with residue
    /// field the ground field.
    pub fn of_sum(algebra: &Algebra<K>, parts: &[Module<K>]) -> Result<Self> {
        let f = algebra.field();
        let r = parts.len();
        if parts.iter().any(|p| p.is_zero()) {
            return Err(Error::Input("zero summand".into()));
        }
        let (generator, injections, projections) = direct_sum(algebra, parts)?;
        let mut homs: Vec<Vec<HomBasis<K>>> = Vec::with_capacity(r);
        for (i, ci) in parts.iter().enumerate() {
            let mut row = Vec::with_capacity(r);
            for (j, cj) in parts.iter().enumerate() {
                let h = hom_basis(ci, cj)?;
                row.push(if i == j { identity_first(ci, h) } else { h });
            }
            homs.push(row);
        }
        let mut blocks = Vec::new();
        let mut block_start = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                block_start[i][j] = blocks.len();
                for index in 0..homs[i][j].dim() {
                    blocks.push(BlockIndex { from: i, to: j, index });
                }
            }
        }
        let n = blocks.len();
        // right[t] row s = coordinates of b_s o b_t, whose matrix is B_t B_s
        let mut right = vec![Matrix::zeros(f, n, n); n];
        for (t, bt) in blocks.iter().enumerate() {
            let mt = &homs[bt.from][bt.to].matrices()[bt.index];
            for (s, bs) in blocks.iter().enumerate() {
                if bs.from != bt.to {
                    continue;
                }
                let ms = &homs[bs.from][bs.to].matrices()[bs.index];
                let prod = mt.mul(ms);
                let target = &homs[bt.from][bs.to];
                let c = target
                    .coordinates(&prod)
                    .ok_or_else(|| Error::Internal("composition left the Hom space".into()))?;
                let start = block_start[bt.from][bs.to];
                for (k, x) in c.into_iter().enumerate() {
                    right[t].set(s, start + k, x);
                }
            }
        }
        let mut rad_rows = Vec::new();
        for (t, b) in blocks.iter().enumerate() {
            let mut v = vec![f.zero(); n];
            if b.from != b.to {
                v[t] = f.one();
            } else if b.index > 0 {
                let m = &homs[b.from][b.to].matrices()[b.index];
                let lambda = local_eigenvalue(m).ok_or_else(|| {
                    Error::Hypothesis(format!("summand {} is not indecomposable or not split", b.from))
                })?;
                v[t] = f.one();
                v[block_start[b.from][b.from]] = f.neg(&lambda);
            } else {
                continue;
            }
            rad_rows.push(v);
        }
        let radical = Matrix::from_rows(f, n, rad_rows);
        let labels = blocks.iter().map(|b| format!("C{}>C{}#{}", b.from, b.to, b.index)).collect();
        let idempotents = (0..r).map(|i| block_start[i][i]).collect();
        let idempotent_labels = (0..r).map(|i| format!("C{i}")).collect();
        let gamma = Algebra::from_structure(
            f,
            labels,
            right,
            idempotents,
            idempotent_labels,
            radical,
            Provenance::Endomorphism { summands: r },
        )?;
        Ok(EndRing { algebra: gamma, generator, parts: parts.to_vec(), injections, projections, blocks, homs, block_start })
    }

    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_start(&self, i: usize, j: usize) -> usize {
        self.block_start[i][j]
    }

    /// Basis element `t` as an endomorphism of the generator.
    pub fn full_matrix(&self, t: usize) -> Matrix<K> {
        self.element_matrix(&self.algebra.basis_vector(t))
    }

    /// Coordinates of a map `C_i -> C_j` as an element of the algebra.
    pub fn element_of(&self, i: usize, j: usize, m: &Matrix<K>) -> Option<Vec<K::Elem>> {
        let f = self.algebra.field();
        let c = self.homs[i][j].coordinates(m)?;
        let mut v = vec![f.zero(); self.dim()];
        let start = self.block_start[i][j];
        for (k, x) in c.into_iter().enumerate() {
            v[start + k] = x;
        }
        Some(v)
    }

    /// An element supported in block `(i, j)` as a map `C_i -> C_j`; `None` if it
    /// has coordinates outside that block.
    pub fn block_map(&self, i: usize, j: usize, x: &[K::Elem]) -> Option<Matrix<K>> {
        let f = self.algebra.field();
        let h = &self.homs[i][j];
        let mut acc = Matrix::zeros(f, self.parts[i].dim(), self.parts[j].dim());
        for (t, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let b = self.blocks[t];
            if (b.from, b.to) != (i, j) {
                return None;
            }
            acc.add_scaled(c, &h.matrices()[b.index]);
        }
        Some(acc)
    }

    /// An element of the algebra as an endomorphism matrix of the generator.
    pub fn element_matrix(&self, x: &[K::Elem]) -> Matrix<K> {
        let f = self.algebra.field();
        let d = self.generator.dim();
        let mut acc = Matrix::zeros(f, d, d);
        for (t, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let b = self.blocks[t];
            let small = &self.homs[b.from][b.to].matrices()[b.index];
            let full = self.projections[b.from].matrix().mul(small).mul(self.injections[b.to].matrix());
            acc.add_scaled(c, &full);
        }
        acc
    }
}

/// Rebuild a basis of `End(C)` so that it starts with the identity.
pub(crate) fn identity_first<K: Field>(c: &Module<K>, h: HomBasis<K>) -> HomBasis<K> {
    let f = c.field();
    let id = Matrix::identity(f, c.dim());
    let mut red = RowReducer::new(f, c.dim() * c.dim());
    red.insert(id.data().to_vec());
    let mut maps = vec![id];
    for m in h.matrices() {
        if red.insert(m.data().to_vec()) {
            maps.push(m.clone());
        }
    }
    HomBasis::from_maps(c, c, maps)
}

/// The scalar `l` with `m - l` nilpotent, if there is one.
pub fn local_eigenvalue<K: Field>(m: &Matrix<K>) -> Option<K::Elem> {
    let f = m.field();
    let d = m.rows();
    if d == 0 {
        return None;
    }
    let candidate = if f.characteristic() == 0 || !(d as u64).is_multiple_of(f.characteristic()) {
        Some(f.div(&m.trace(), &f.from_i64(d as i64)))
    } else {
        None
    };
    let id = Matrix::identity(f, d);
    let nilpotent = |l: &K::Elem| {
        let n = m.sub(&id.scale(l));
        n.pow(d).is_zero()
    };
    match candidate {
        Some(l) => nilpotent(&l).then_some(l),
        None => f.elements()?.into_iter().find(|l| nilpotent(l)),
    }
}

/// `End(M)` for a module whose indecomposable summands are pairwise
/// non-isomorphic, built on the summands found by [`decompose`].
pub fn end_ring<K: Field>(m: &Module<K>) -> Result<EndRing<K>> {
    let d = decompose(m)?;
    if d.parts.iter().any(|(_, k)| *k > 1) {
        return Err(Error::Unsupported("endomorphism algebra of a module with repeated summands".into()));
    }
    let parts: Vec<Module<K>> = d.parts.into_iter().map(|(p, _)| p).collect();
    EndRing::of_sum(m.algebra(), &parts)
}
