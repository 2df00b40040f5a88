//! Finite-dimensional algebras with a fixed basis.
//!
//! Multiplication is stored as right-multiplication matrices: `right[j]` has
//! as row `i` the coordinates of `b_i * b_j`. This is exactly the action of
//! `b_j` on the regular right module, so the regular module costs nothing.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::{Matrix, RowReducer};

/// Quiver-with-relations input, in the on-disk JSON layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    pub relations: Vec<Vec<RelationTerm>>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTerm {
    pub coeff: String,
    pub path: Vec<String>,
}

impl Presentation {
    /// `k[x]/(x^n)`: one vertex, one loop, the single relation `x^n`.
    /// For `n = 1` this is the field itself, without the loop.
    pub fn truncated_polynomial(field: FieldSpec, n: usize) -> Self {
        if n <= 1 {
            return Self::semisimple(field, 1);
        }
        Presentation {
            field,
            quiver: QuiverSpec {
                vertices: vec!["1".into()],
                arrows: vec![ArrowSpec { name: "x".into(), from: "1".into(), to: "1".into() }],
            },
            relations: vec![vec![RelationTerm { coeff: "1".into(), path: vec!["x".into(); n] }]],
            nilpotency_bound: n,
        }
    }

    /// Path algebra of the linearly oriented quiver `1 -> 2 -> ... -> n`.
    pub fn linear_quiver(field: FieldSpec, n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| ArrowSpec { name: format!("a{i}"), from: i.to_string(), to: (i + 1).to_string() })
            .collect();
        Presentation {
            field,
            quiver: QuiverSpec { vertices, arrows },
            relations: Vec::new(),
            nilpotency_bound: n.max(1),
        }
    }

    /// The same quiver and relations over another field.
    pub fn with_field(&self, field: FieldSpec) -> Self {
        Presentation { field, ..self.clone() }
    }

    /// Presentation of the opposite algebra: arrows and relation paths reversed.
    pub fn opposite(&self) -> Self {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| ArrowSpec { name: a.name.clone(), from: a.to.clone(), to: a.from.clone() })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| RelationTerm { coeff: t.coeff.clone(), path: t.path.iter().rev().cloned().collect() })
                    .collect()
            })
            .collect();
        Presentation {
            field: self.field,
            quiver: QuiverSpec { vertices: self.quiver.vertices.clone(), arrows },
            relations,
            nilpotency_bound: self.nilpotency_bound,
        }
    }

    /// Product of `n` copies of the field.
    pub fn semisimple(field: FieldSpec, n: usize) -> Self {
        Presentation {
            field,
            quiver: QuiverSpec { vertices: (1..=n).map(|i| i.to_string()).collect(), arrows: Vec::new() },
            relations: Vec::new(),
            nilpotency_bound: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

/// Quiver data carried by algebras built from a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverData {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// The path each basis element stands for.
    pub basis_paths: Vec<Path>,
    /// Index of the basis element of each arrow.
    pub arrow_basis: Vec<usize>,
    /// The presentation the algebra was built from.
    pub presentation: Presentation,
}

impl QuiverData {
    fn opposite(&self) -> Self {
        QuiverData {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), from: a.to, to: a.from })
                .collect(),
            basis_paths: self
                .basis_paths
                .iter()
                .map(|p| Path { start: p.end, end: p.start, arrows: p.arrows.iter().rev().copied().collect() })
                .collect(),
            arrow_basis: self.arrow_basis.clone(),
            presentation: self.presentation.opposite(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Quiver(QuiverData),
    /// Endomorphism algebra of a direct sum with the given number of
    /// pairwise non-isomorphic indecomposable summands.
    Endomorphism { summands: usize },
}

struct Data<K: Field> {
    field: K,
    labels: Vec<String>,
    right: Vec<Matrix<K>>,
    idempotents: Vec<usize>,
    idempotent_labels: Vec<String>,
    /// Rows span the Jacobson radical, in basis coordinates.
    radical: Matrix<K>,
    /// Radical elements whose classes span `rad / rad^2`.
    radical_generators: Vec<Vec<K::Elem>>,
    provenance: Provenance,
    opposite_flag: bool,
    digest: String,
    projectives: OnceLock<Vec<ProjectiveData<K>>>,
    opposite: OnceLock<Algebra<K>>,
}

#[derive(Clone)]
pub(crate) struct ProjectiveData<K: Field> {
    pub basis: Matrix<K>,
    pub action: Arc<Vec<Matrix<K>>>,
}

/// A finite-dimensional basic algebra with a complete set of primitive
/// orthogonal idempotents among its basis elements.
#[derive(Clone)]
pub struct Algebra<K: Field> {
    inner: Arc<Data<K>>,
}

impl<K: Field> PartialEq for Algebra<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.digest == other.inner.digest
    }
}

impl<K: Field> Eq for Algebra<K> {}

impl<K: Field> fmt::Debug for Algebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.inner.field.spec())
            .field("dim", &self.dim())
            .field("labels", &self.inner.labels)
            .field("digest", &&self.inner.digest[..12])
            .finish()
    }
}

impl<K: Field> Algebra<K> {
    /// Assemble an algebra from right-multiplication matrices. The caller
    /// guarantees associativity; [`Algebra::check_axioms`] verifies it.
    #[allow(clippy::too_many_arguments)]
    pub fn from_structure(
        field: &K,
        labels: Vec<String>,
        right: Vec<Matrix<K>>,
        idempotents: Vec<usize>,
        idempotent_labels: Vec<String>,
        radical: Matrix<K>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = labels.len();
        if right.len() != n || right.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension("structure matrices do not match the basis size".into()));
        }
        if radical.cols() != n {
            return Err(Error::Dimension("radical basis has the wrong width".into()));
        }
        if idempotent_labels.len() != idempotents.len() || idempotents.iter().any(|&i| i >= n) {
            return Err(Error::Input("idempotent data out of range".into()));
        }
        Ok(Self::assemble(field, labels, right, idempotents, idempotent_labels, radical, provenance, false))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        field: &K,
        labels: Vec<String>,
        right: Vec<Matrix<K>>,
        idempotents: Vec<usize>,
        idempotent_labels: Vec<String>,
        radical: Matrix<K>,
        provenance: Provenance,
        opposite_flag: bool,
    ) -> Self {
        let digest = digest_of(field, &labels, &right, &idempotents);
        let radical_generators = radical_generators(field, &right, &radical);
        Algebra {
            inner: Arc::new(Data {
                field: field.clone(),
                labels,
                right,
                idempotents,
                idempotent_labels,
                radical,
                radical_generators,
                provenance,
                opposite_flag,
                digest,
                projectives: OnceLock::new(),
                opposite: OnceLock::new(),
            }),
        }
    }

    pub fn field(&self) -> &K {
        &self.inner.field
    }
    pub fn dim(&self) -> usize {
        self.inner.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }
    /// Action of basis element `j` on the regular right module.
    pub fn right_matrix(&self, j: usize) -> &Matrix<K> {
        &self.inner.right[j]
    }
    pub fn right_matrices(&self) -> &[Matrix<K>] {
        &self.inner.right
    }
    /// Basis indices of the primitive idempotents, one per simple module.
    pub fn idempotents(&self) -> &[usize] {
        &self.inner.idempotents
    }
    pub fn idempotent_labels(&self) -> &[String] {
        &self.inner.idempotent_labels
    }
    pub fn num_simples(&self) -> usize {
        self.inner.idempotents.len()
    }
    pub fn radical(&self) -> &Matrix<K> {
        &self.inner.radical
    }
    pub fn radical_generators(&self) -> &[Vec<K::Elem>] {
        &self.inner.radical_generators
    }
    pub fn provenance(&self) -> &Provenance {
        &self.inner.provenance
    }
    pub fn quiver(&self) -> Option<&QuiverData> {
        match &self.inner.provenance {
            Provenance::Quiver(q) => Some(q),
            Provenance::Endomorphism { .. } => None,
        }
    }
    pub fn is_opposite(&self) -> bool {
        self.inner.opposite_flag
    }
    pub fn digest(&self) -> &str {
        &self.inner.digest
    }

    pub fn basis_vector(&self, i: usize) -> Vec<K::Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        v[i] = f.one();
        v
    }

    pub fn unit(&self) -> Vec<K::Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        for &i in self.idempotents() {
            v[i] = f.add(&v[i], &f.one());
        }
        v
    }

    /// Product of two elements given in coordinates.
    pub fn mul(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let f = self.field();
        let xm = Matrix::row_vector(f, x.to_vec());
        let mut acc = Matrix::zeros(f, 1, self.dim());
        for (j, c) in y.iter().enumerate() {
            if !f.is_zero(c) {
                acc.add_scaled(c, &xm.mul(&self.inner.right[j]));
            }
        }
        acc.into_data()
    }

    /// Matrix of `a -> x a` on coordinates (row-vector convention).
    pub fn left_matrix(&self, x: &[K::Elem]) -> Matrix<K> {
        let f = self.field();
        let xm = Matrix::row_vector(f, x.to_vec());
        let rows = (0..self.dim()).map(|j| xm.mul(&self.inner.right[j]).into_data()).collect();
        Matrix::from_rows(f, self.dim(), rows)
    }

    /// Matrix of `a -> a y` on coordinates.
    pub fn right_matrix_of(&self, y: &[K::Elem]) -> Matrix<K> {
        let f = self.field();
        let mut acc = Matrix::zeros(f, self.dim(), self.dim());
        for (j, c) in y.iter().enumerate() {
            acc.add_scaled(c, &self.inner.right[j]);
        }
        acc
    }

    /// Exhaustive check of associativity, the unit, and the idempotent data.
    pub fn check_axioms(&self) -> Result<()> {
        let f = self.field();
        let n = self.dim();
        // (b_i b_j) b_l = b_i (b_j b_l) for all i, l  <=>  R_j R_l = sum_m c_{jl}^m R_m
        for j in 0..n {
            for l in 0..n {
                let lhs = self.inner.right[j].mul(&self.inner.right[l]);
                let prod = self.inner.right[l].row(j).to_vec();
                let rhs = self.right_matrix_of(&prod);
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "multiplication is not associative at ({}, {})",
                        self.inner.labels[j], self.inner.labels[l]
                    )));
                }
            }
        }
        let unit = self.unit();
        if self.right_matrix_of(&unit) != Matrix::identity(f, n) || self.left_matrix(&unit) != Matrix::identity(f, n) {
            return Err(Error::Internal("sum of the idempotents is not a unit".into()));
        }
        for (a, &i) in self.idempotents().iter().enumerate() {
            for (b, &j) in self.idempotents().iter().enumerate() {
                let p = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                let expect = if a == b { self.basis_vector(i) } else { vec![f.zero(); n] };
                if p != expect {
                    return Err(Error::Internal("idempotents are not orthogonal".into()));
                }
            }
        }
        Ok(())
    }

    /// The opposite algebra: same basis, `b_i * b_j := b_j b_i`.
    pub fn opposite(&self) -> Algebra<K> {
        self.inner
            .opposite
            .get_or_init(|| {
                let f = self.field();
                let n = self.dim();
                let right = (0..n)
                    .map(|j| {
                        let rows = (0..n).map(|i| self.inner.right[i].row_vec(j)).collect();
                        Matrix::from_rows(f, n, rows)
                    })
                    .collect();
                let (labels, provenance) = match &self.inner.provenance {
                    Provenance::Quiver(q) => {
                        let q = q.opposite();
                        (basis_labels(&q), Provenance::Quiver(q))
                    }
                    p @ Provenance::Endomorphism { .. } => (self.inner.labels.clone(), p.clone()),
                };
                Self::assemble(
                    f,
                    labels,
                    right,
                    self.inner.idempotents.clone(),
                    self.inner.idempotent_labels.clone(),
                    self.inner.radical.clone(),
                    provenance,
                    !self.inner.opposite_flag,
                )
            })
            .clone()
    }

    /// Basis of the `i`-th indecomposable projective `e_i A`, starting with `e_i`,
    /// in algebra coordinates.
    pub fn projective_basis(&self, i: usize) -> &Matrix<K> {
        &self.projective_data()[i].basis
    }

    /// Indecomposable projectives `e A` in idempotent order; basis of each
    /// starts with the generator `e`, coordinates relative to the algebra basis.
    pub(crate) fn projective_data(&self) -> &[ProjectiveData<K>] {
        self.inner.projectives.get_or_init(|| {
            let f = self.field();
            let n = self.dim();
            self.idempotents()
                .iter()
                .map(|&e| {
                    let mut red = RowReducer::new(f, n);
                    let mut rows = Vec::new();
                    let ev = self.basis_vector(e);
                    red.insert(ev.clone());
                    rows.push(ev.clone());
                    let lm = self.left_matrix(&ev);
                    for j in 0..n {
                        let v = lm.row_vec(j);
                        if red.insert(v.clone()) {
                            rows.push(v);
                        }
                    }
                    let basis = Matrix::from_rows(f, n, rows);
                    let coords = crate::matrix::Coordinates::new(&basis).expect("independent rows");
                    let action = self
                        .inner
                        .right
                        .iter()
                        .map(|r| coords.coords_rows(&basis.mul(r)).expect("e A is a right ideal"))
                        .collect();
                    ProjectiveData { basis, action: Arc::new(action) }
                })
                .collect()
        })
    }
}

fn digest_of<K: Field>(field: &K, labels: &[String], right: &[Matrix<K>], idempotents: &[usize]) -> String {
    let mut h = Sha256::new();
    h.update(field.spec().to_string().as_bytes());
    h.update([0]);
    for l in labels {
        h.update(l.as_bytes());
        h.update([0]);
    }
    for m in right {
        for x in m.data() {
            h.update(field.render(x).as_bytes());
            h.update([1]);
        }
        h.update([2]);
    }
    for i in idempotents {
        h.update(i.to_string().as_bytes());
        h.update([3]);
    }
    hex::encode(h.finalize())
}

/// Radical elements spanning a complement of `rad^2` inside `rad`.
fn radical_generators<K: Field>(field: &K, right: &[Matrix<K>], radical: &Matrix<K>) -> Vec<Vec<K::Elem>> {
    let n = radical.cols();
    let mut sq = RowReducer::new(field, n);
    for i in 0..radical.rows() {
        let x = Matrix::row_vector(field, radical.row_vec(i));
        for k in 0..radical.rows() {
            let mut acc = Matrix::zeros(field, 1, n);
            for (j, c) in radical.row(k).iter().enumerate() {
                if !field.is_zero(c) {
                    acc.add_scaled(c, &x.mul(&right[j]));
                }
            }
            sq.insert(acc.into_data());
        }
    }
    let mut gens = Vec::new();
    for i in 0..radical.rows() {
        let v = radical.row_vec(i);
        if sq.insert(v.clone()) {
            gens.push(v);
        }
    }
    gens
}

fn path_label(q: &QuiverData, p: &Path) -> String {
    if p.arrows.is_empty() {
        format!("e{}", q.vertices[p.start])
    } else {
        p.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

fn basis_labels(q: &QuiverData) -> Vec<String> {
    q.basis_paths.iter().map(|p| path_label(q, p)).collect()
}

/// Build `kQ/I` from a presentation.
pub fn build_algebra<K: Field>(field: &K, pres: &Presentation) -> Result<Algebra<K>> {
    if field.spec() != pres.field {
        return Err(Error::FieldMismatch(field.spec().to_string(), pres.field.to_string()));
    }
    pres.field.validate()?;
    let bound = pres.nilpotency_bound;
    if bound == 0 {
        return Err(Error::Input("nilpotency_bound: must be at least 1".into()));
    }
    let vertices = pres.quiver.vertices.clone();
    if vertices.is_empty() {
        return Err(Error::Input("quiver.vertices: empty".into()));
    }
    let mut vindex = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if vindex.insert(v.as_str(), i).is_some() {
            return Err(Error::Input(format!("quiver.vertices: duplicate vertex {v:?}")));
        }
    }
    let mut arrows = Vec::new();
    let mut aindex = HashMap::new();
    for (k, a) in pres.quiver.arrows.iter().enumerate() {
        let from = *vindex
            .get(a.from.as_str())
            .ok_or_else(|| Error::Input(format!("quiver.arrows[{k}].from: unknown vertex {:?}", a.from)))?;
        let to = *vindex
            .get(a.to.as_str())
            .ok_or_else(|| Error::Input(format!("quiver.arrows[{k}].to: unknown vertex {:?}", a.to)))?;
        if aindex.insert(a.name.as_str(), k).is_some() {
            return Err(Error::Input(format!("quiver.arrows[{k}].name: duplicate arrow {:?}", a.name)));
        }
        arrows.push(Arrow { name: a.name.clone(), from, to });
    }

    // all paths of length <= bound, grouped by length
    let mut by_len: Vec<Vec<Path>> = vec![(0..vertices.len()).map(|v| Path { start: v, end: v, arrows: vec![] }).collect()];
    for _ in 0..bound {
        let prev = by_len.last().unwrap();
        let mut next = Vec::new();
        for p in prev {
            for (k, a) in arrows.iter().enumerate() {
                if a.from == p.end {
                    let mut ar = p.arrows.clone();
                    ar.push(k);
                    next.push(Path { start: p.start, end: a.to, arrows: ar });
                }
            }
        }
        by_len.push(next);
    }
    // columns ordered longest first so that short paths survive as the basis
    let columns: Vec<Path> = by_len.iter().rev().flatten().cloned().collect();
    let col_of: HashMap<&Path, usize> = columns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let ncols = columns.len();
    let long_cols = by_len[bound].len();

    // parse relations
    let mut rels: Vec<Vec<(K::Elem, Path)>> = Vec::new();
    for (ri, rel) in pres.relations.iter().enumerate() {
        if rel.is_empty() {
            return Err(Error::Input(format!("relations[{ri}]: empty relation")));
        }
        let mut terms = Vec::new();
        let mut ends: Option<(usize, usize)> = None;
        for (ti, t) in rel.iter().enumerate() {
            let at = format!("relations[{ri}][{ti}]");
            let c = field.parse(&t.coeff).map_err(|e| Error::Input(format!("{at}.coeff: {e}")))?;
            if t.path.len() < 2 {
                return Err(Error::Input(format!("{at}.path: relation terms must have length at least 2")));
            }
            let mut idx: Vec<usize> = Vec::new();
            for name in &t.path {
                let k = *aindex
                    .get(name.as_str())
                    .ok_or_else(|| Error::Input(format!("{at}.path: unknown arrow {name:?}")))?;
                if let Some(&last) = idx.last() {
                    if arrows[last].to != arrows[k].from {
                        return Err(Error::Input(format!("{at}.path: arrows are not composable")));
                    }
                }
                idx.push(k);
            }
            let p = Path { start: arrows[idx[0]].from, end: arrows[*idx.last().unwrap()].to, arrows: idx };
            match ends {
                None => ends = Some((p.start, p.end)),
                Some(e) if e != (p.start, p.end) => {
                    return Err(Error::Input(format!("{at}: terms of a relation must share source and target")));
                }
                _ => {}
            }
            terms.push((c, p));
        }
        rels.push(terms);
    }

    // generators u r v of the ideal, truncated at length `bound`
    let mut gens: Vec<Vec<K::Elem>> = Vec::new();
    let min_len = |r: &Vec<(K::Elem, Path)>| r.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
    for r in &rels {
        let (s, t) = (r[0].1.start, r[0].1.end);
        let m = min_len(r);
        for lu in 0..=bound.saturating_sub(m) {
            for u in by_len[lu].iter().filter(|u| u.end == s) {
                for lv in 0..=bound.saturating_sub(m + lu) {
                    for v in by_len[lv].iter().filter(|v| v.start == t) {
                        let mut vec = vec![field.zero(); ncols];
                        for (c, p) in r {
                            if u.len() + p.len() + v.len() > bound {
                                continue;
                            }
                            let mut ar = u.arrows.clone();
                            ar.extend(&p.arrows);
                            ar.extend(&v.arrows);
                            let q = Path { start: u.start, end: v.end, arrows: ar };
                            let col = col_of[&q];
                            vec[col] = field.add(&vec[col], c);
                        }
                        if vec.iter().any(|x| !field.is_zero(x)) {
                            gens.push(vec);
                        }
                    }
                }
            }
        }
    }

    // admissibility: every path of length `bound` lies in the span modulo longer paths
    let full = Matrix::vstack_or_empty(field, ncols, &gens.iter().map(|g| Matrix::row_vector(field, g.clone())).collect::<Vec<_>>());
    let mut red = RowReducer::new(field, ncols);
    for i in 0..full.rows() {
        red.insert(full.row_vec(i));
    }
    for (c, p) in columns.iter().enumerate().take(long_cols) {
        let mut e = vec![field.zero(); ncols];
        e[c] = field.one();
        if !red.contains(&e) {
            let q = QuiverData { vertices: vertices.clone(), arrows: arrows.clone(), basis_paths: vec![], arrow_basis: vec![], presentation: pres.clone() };
            return Err(Error::NotAdmissible(path_label(&q, p)));
        }
    }

    // ideal modulo paths of length >= bound
    let short: Vec<usize> = (long_cols..ncols).collect();
    let trunc = full.select_cols(&short);
    let rr = trunc.rref();
    let short_paths: Vec<Path> = short.iter().map(|&c| columns[c].clone()).collect();
    let free: Vec<usize> = (0..short.len()).filter(|c| !rr.pivots.contains(c)).collect();
    // basis in the natural order: shortest first
    let mut basis_cols = free.clone();
    basis_cols.sort_by(|&a, &b| {
        let (pa, pb) = (&short_paths[a], &short_paths[b]);
        (pa.len(), pa.start, &pa.arrows).cmp(&(pb.len(), pb.start, &pb.arrows))
    });
    let basis_paths: Vec<Path> = basis_cols.iter().map(|&c| short_paths[c].clone()).collect();
    let dim = basis_paths.len();
    let pos_in_basis: HashMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let pivot_row: HashMap<usize, usize> = rr.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let short_index: HashMap<&Path, usize> = short_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let reduce = |p: &Path| -> Vec<K::Elem> {
        let mut out = vec![field.zero(); dim];
        let Some(&c) = short_index.get(p) else { return out };
        if let Some(&b) = pos_in_basis.get(&c) {
            out[b] = field.one();
            return out;
        }
        let r = pivot_row[&c];
        for (&fc, &b) in &pos_in_basis {
            let x = rr.reduced.get(r, fc);
            if !field.is_zero(x) {
                out[b] = field.neg(x);
            }
        }
        out
    };

    let concat = |a: &Path, b: &Path| -> Option<Path> {
        if a.end != b.start {
            return None;
        }
        let mut ar = a.arrows.clone();
        ar.extend(&b.arrows);
        Some(Path { start: a.start, end: b.end, arrows: ar })
    };

    let right: Vec<Matrix<K>> = (0..dim)
        .map(|j| {
            let rows = (0..dim)
                .map(|i| match concat(&basis_paths[i], &basis_paths[j]) {
                    Some(p) => reduce(&p),
                    None => vec![field.zero(); dim],
                })
                .collect();
            Matrix::from_rows(field, dim, rows)
        })
        .collect();

    let idempotents: Vec<usize> = (0..vertices.len())
        .map(|v| basis_paths.iter().position(|p| p.is_empty() && p.start == v).expect("vertex paths are never reduced"))
        .collect();
    let arrow_basis: Vec<usize> = (0..arrows.len())
        .map(|k| {
            basis_paths
                .iter()
                .position(|p| p.arrows == [k])
                .ok_or_else(|| Error::NotAdmissible(arrows[k].name.clone()))
        })
        .collect::<Result<_>>()?;
    let rad_rows: Vec<Vec<K::Elem>> = (0..dim)
        .filter(|&i| !basis_paths[i].is_empty())
        .map(|i| {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            v
        })
        .collect();
    let radical = Matrix::from_rows(field, dim, rad_rows);
    let q = QuiverData { vertices: vertices.clone(), arrows, basis_paths, arrow_basis, presentation: pres.clone() };
    let labels = basis_labels(&q);
    let idempotent_labels = vertices;
    Ok(Algebra::assemble(field, labels, right, idempotents, idempotent_labels, radical, Provenance::Quiver(q), false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn lambda(n: usize) -> Algebra<Rationals> {
        build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, n)).unwrap()
    }

    #[test]
    fn truncated_polynomial_dims() {
        for n in 1..=6 {
            let a = lambda(n);
            assert_eq!(a.dim(), n);
            a.check_axioms().unwrap();
        }
        let a = lambda(2);
        assert_eq!(a.labels(), ["e1", "x"]);
        let x = a.basis_vector(1);
        assert!(a.mul(&x, &x).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn a2_path_algebra() {
        let a = build_algebra(&Rationals, &Presentation::linear_quiver(FieldSpec::Rational, 2)).unwrap();
        assert_eq!(a.dim(), 3);
        a.check_axioms().unwrap();
        let dims: Vec<usize> = a.projective_data().iter().map(|p| p.basis.rows()).collect();
        assert_eq!(dims, vec![2, 1]);
        let op = a.opposite();
        op.check_axioms().unwrap();
        let dims: Vec<usize> = op.projective_data().iter().map(|p| p.basis.rows()).collect();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(op.opposite(), a);
        assert_ne!(op, a);
    }

    #[test]
    fn relations_with_several_terms() {
        // commutative square 1->2->4, 1->3->4 with ab = cd
        let pres: Presentation = Presentation {
            field: FieldSpec::Prime { p: 3 },
            quiver: QuiverSpec {
                vertices: ["1", "2", "3", "4"].map(String::from).to_vec(),
                arrows: vec![
                    ArrowSpec { name: "a".into(), from: "1".into(), to: "2".into() },
                    ArrowSpec { name: "b".into(), from: "2".into(), to: "4".into() },
                    ArrowSpec { name: "c".into(), from: "1".into(), to: "3".into() },
                    ArrowSpec { name: "d".into(), from: "3".into(), to: "4".into() },
                ],
            },
            relations: vec![vec![
                RelationTerm { coeff: "1".into(), path: vec!["a".into(), "b".into()] },
                RelationTerm { coeff: "-1".into(), path: vec!["c".into(), "d".into()] },
            ]],
            nilpotency_bound: 3,
        };
        let a = build_algebra(&PrimeField::new(3).unwrap(), &pres).unwrap();
        // 4 vertices + 4 arrows + one surviving length-2 path
        assert_eq!(a.dim(), 9);
        a.check_axioms().unwrap();
    }

    #[test]
    fn non_admissible_is_rejected() {
        let mut pres = Presentation::truncated_polynomial(FieldSpec::Rational, 3);
        pres.nilpotency_bound = 2;
        match build_algebra(&Rationals, &pres) {
            Err(Error::NotAdmissible(p)) => assert_eq!(p, "x*x"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn bad_endpoints_rejected() {
        let mut pres = Presentation::linear_quiver(FieldSpec::Rational, 3);
        pres.relations = vec![vec![RelationTerm { coeff: "1".into(), path: vec!["a2".into(), "a1".into()] }]];
        assert!(matches!(build_algebra(&Rationals, &pres), Err(Error::Input(_))));
    }
}
