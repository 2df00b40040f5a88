use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::Module;
use crate::par::Execution;

use super::decompose::{is_indecomposable_brute_force, is_isomorphic, EXHAUSTIVE_LIMIT};

/// Limits for [`enumerate_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    /// Largest total dimension searched.
    pub max_dim: usize,
    /// Largest number of candidate representations tried for one dimension vector.
    pub max_candidates: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget { max_dim: 4, max_candidates: 1 << 20 }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration<K: Field> {
    /// Pairwise non-isomorphic indecomposables, by total dimension then dimension vector.
    pub modules: Vec<Module<K>>,
    /// Every dimension vector up to `max_dim` was searched exhaustively and
    /// every indecomposability verdict was exhaustive.
    pub complete: bool,
    /// Dimension vectors skipped for exceeding the candidate budget.
    pub skipped: Vec<Vec<usize>>,
    pub candidates: u64,
}

/// Dimension vectors with total in `1..=max_dim`, by total then lexicographically.
fn dimension_vectors(vertices: usize, max_dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 1..=max_dim {
        let mut cur = vec![0; vertices];
        fill(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<usize>, i: usize, left: usize, out: &mut Vec<Vec<usize>>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[i] = k;
        fill(cur, i + 1, left - k, out);
    }
}

/// Iso-invariant bucket key: ranks of every basis element's action.
fn signature<K: Field>(m: &Module<K>) -> Vec<usize> {
    m.actions().iter().map(|a| a.rank()).collect()
}

/// Add `m` to its bucket unless an isomorphic module is already there.
fn dedupe<K: Field>(
    buckets: &mut BTreeMap<Vec<usize>, Vec<Module<K>>>,
    sig: Vec<usize>,
    m: Module<K>,
) -> Result<()> {
    let bucket = buckets.entry(sig).or_default();
    for r in bucket.iter() {
        if is_isomorphic(r, &m)?.is_some() {
            return Ok(());
        }
    }
    bucket.push(m);
    Ok(())
}

/// Every indecomposable module of total dimension at most `max_dim` over a
/// finite field, by exhaustive search over quiver representations.
///
/// Candidates are split into shards run through `exec`; each shard keeps one
/// representative per isomorphism class and the shards are merged in order,
/// so the result does not depend on the execution mode.
pub fn enumerate_bounded<K: Field>(a: &Algebra<K>, budget: EnumBudget, exec: Execution) -> Result<Enumeration<K>> {
    let f = a.field();
    let elems = f
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("bounded enumeration needs a finite field, not {}", f.spec())))?;
    let q = a
        .quiver()
        .ok_or_else(|| Error::Unsupported("bounded enumeration needs a quiver presentation".into()))?;
    let qn = elems.len() as u64;
    let mut modules = Vec::new();
    let mut skipped = Vec::new();
    let mut certain = true;
    let mut candidates = 0u64;
    for dims in dimension_vectors(q.vertices.len(), budget.max_dim) {
        let shapes: Vec<(usize, usize)> = q.arrows.iter().map(|ar| (dims[ar.from], dims[ar.to])).collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let total = match qn.checked_pow(entries as u32) {
            Some(t) if t <= budget.max_candidates => t,
            _ => {
                skipped.push(dims);
                continue;
            }
        };
        candidates += total;
        let shard_size = 4096u64;
        let shards = total.div_ceil(shard_size) as usize;
        let build = |n: u64| -> Option<Module<K>> {
            let mut n = n;
            let mut mats = Vec::with_capacity(shapes.len());
            for &(r, c) in &shapes {
                let mut data = Vec::with_capacity(r * c);
                for _ in 0..r * c {
                    data.push(elems[(n % qn) as usize].clone());
                    n /= qn;
                }
                mats.push(Matrix::from_vec(f, r, c, data).expect("sizes match"));
            }
            Module::from_representation(a, &dims, &mats).ok()
        };
        let local: Vec<Result<BTreeMap<Vec<usize>, Vec<Module<K>>>>> = exec.map_range(shards, |s| {
            let mut buckets = BTreeMap::new();
            let lo = s as u64 * shard_size;
            let hi = (lo + shard_size).min(total);
            for n in lo..hi {
                if let Some(m) = build(n) {
                    dedupe(&mut buckets, signature(&m), m)?;
                }
            }
            Ok(buckets)
        });
        let mut merged: BTreeMap<Vec<usize>, Vec<Module<K>>> = BTreeMap::new();
        for shard in local {
            for (sig, ms) in shard? {
                for m in ms {
                    dedupe(&mut merged, sig.clone(), m)?;
                }
            }
        }
        let reps: Vec<Module<K>> = merged.into_values().flatten().collect();
        let verdicts = exec.map(&reps, |m| is_indecomposable_brute_force(m, EXHAUSTIVE_LIMIT));
        for (m, v) in reps.into_iter().zip(verdicts) {
            let (indec, sure) = v?;
            certain &= sure;
            if indec {
                modules.push(m);
            }
        }
    }
    Ok(Enumeration { complete: skipped.is_empty() && certain, modules, skipped, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation};
    use crate::field::{FieldSpec, PrimeField};

    #[test]
    fn dimension_vector_order() {
        assert_eq!(dimension_vectors(2, 2), vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn truncated_polynomials_over_f2() {
        let f = PrimeField::new(2).unwrap();
        for n in 1..=3 {
            let a = build_algebra(&f, &Presentation::truncated_polynomial(FieldSpec::Prime { p: 2 }, n)).unwrap();
            let e = enumerate_bounded(&a, EnumBudget { max_dim: n + 1, max_candidates: 1 << 20 }, Execution::Sequential)
                .unwrap();
            assert!(e.complete);
            let dims: Vec<usize> = e.modules.iter().map(|m| m.dim()).collect();
            assert_eq!(dims, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn execution_modes_agree() {
        let f = PrimeField::new(3).unwrap();
        let a = build_algebra(&f, &Presentation::linear_quiver(FieldSpec::Prime { p: 3 }, 3)).unwrap();
        let budget = EnumBudget { max_dim: 3, max_candidates: 1 << 16 };
        let s = enumerate_bounded(&a, budget, Execution::Sequential).unwrap();
        let p = enumerate_bounded(&a, budget, Execution::Parallel).unwrap();
        assert_eq!(s.modules.len(), 6);
        let key = |e: &Enumeration<PrimeField>| e.modules.iter().map(|m| m.actions().to_vec()).collect::<Vec<_>>();
        assert_eq!(key(&s), key(&p));
    }

    #[test]
    fn infinite_field_rejected() {
        let a = build_algebra(&crate::field::Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, 2)).unwrap();
        assert!(enumerate_bounded(&a, EnumBudget::default(), Execution::Sequential).is_err());
    }
}
