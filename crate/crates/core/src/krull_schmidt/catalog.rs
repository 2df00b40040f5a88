use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rational, Rationals};
use crate::matrix::Matrix;
use crate::module::{direct_sum, hom_dim, Module};
use crate::par::Execution;

use super::ar::{knit, KnitBudget};
use super::decompose::{decompose_any, is_isomorphic};
use super::enumerate::{enumerate_bounded, EnumBudget};

/// How a catalog was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogMethod {
    Knitting,
    Bounded,
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    Knitting,
    Bounded,
}

/// Pairwise non-isomorphic indecomposable modules.
#[derive(Clone, Debug)]
pub struct IndecomposableCatalog<K: Field> {
    pub algebra: Algebra<K>,
    pub modules: Vec<Module<K>>,
    /// Believed to list every indecomposable module of the algebra.
    pub complete: bool,
    pub method: CatalogMethod,
    /// Why completeness is not claimed, if it is not.
    pub note: Option<String>,
}

impl<K: Field> IndecomposableCatalog<K> {
    /// A user-supplied list, checked to be indecomposable and pairwise non-isomorphic.
    pub fn supplied(algebra: &Algebra<K>, modules: Vec<Module<K>>) -> Result<Self> {
        for (i, m) in modules.iter().enumerate() {
            if m.algebra() != algebra {
                return Err(Error::AlgebraMismatch);
            }
            let (d, _) = decompose_any(m)?;
            if d.num_summands() != 1 {
                return Err(Error::Input(format!("catalog entry {i} is not indecomposable")));
            }
            for (j, n) in modules[..i].iter().enumerate() {
                if is_isomorphic(n, m)?.is_some() {
                    return Err(Error::Input(format!("catalog entries {j} and {i} are isomorphic")));
                }
            }
        }
        Ok(IndecomposableCatalog {
            algebra: algebra.clone(),
            modules,
            complete: false,
            method: CatalogMethod::Supplied,
            note: Some("supplied by the user".into()),
        })
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Index of the entry isomorphic to `m`.
    pub fn position(&self, m: &Module<K>) -> Result<Option<usize>> {
        for (i, c) in self.modules.iter().enumerate() {
            if is_isomorphic(c, m)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Sorted `(dimension vector, dim End)` pairs: comparable across fields.
    pub fn signature(&self) -> Result<Vec<(Vec<usize>, usize)>> {
        let mut out = self
            .modules
            .iter()
            .map(|m| Ok((m.dimension_vector(), hom_dim(m, m)?)))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    }

    /// The direct sum of all entries.
    pub fn generator(&self) -> Result<Module<K>> {
        Ok(direct_sum(&self.algebra, &self.modules)?.0)
    }
}

/// List the indecomposable modules, by knitting (any field) or by bounded
/// search over representations (finite fields only).
pub fn enumerate_indecomposables<K: Field>(
    a: &Algebra<K>,
    mode: EnumerationMode,
    max_dim: usize,
    max_steps: usize,
    exec: Execution,
) -> Result<IndecomposableCatalog<K>> {
    match mode {
        EnumerationMode::Knitting => {
            let k = knit(a, KnitBudget { max_dim, max_steps })?;
            Ok(IndecomposableCatalog {
                algebra: a.clone(),
                modules: k.modules,
                complete: k.complete,
                method: CatalogMethod::Knitting,
                note: k.truncated,
            })
        }
        EnumerationMode::Bounded => {
            let e = enumerate_bounded(a, EnumBudget { max_dim, ..EnumBudget::default() }, exec)?;
            let note = if e.complete {
                Some(format!("only modules of dimension at most {max_dim} were searched"))
            } else {
                Some(format!("{} dimension vectors skipped", e.skipped.len()))
            };
            // a bounded search never proves that nothing larger exists
            Ok(IndecomposableCatalog {
                algebra: a.clone(),
                modules: e.modules,
                complete: false,
                method: CatalogMethod::Bounded,
                note,
            })
        }
    }
}

/// Multiplicities of the catalog entries in `m`, from
/// `dim Hom(C_i, M) = sum_j mult_j dim Hom(C_i, C_j)`.
pub fn multiplicity_by_hom<K: Field>(catalog: &IndecomposableCatalog<K>, m: &Module<K>) -> Result<Vec<usize>> {
    let n = catalog.len();
    let q = Rationals;
    let mut gram = Matrix::zeros(&q, n, n);
    let mut rhs = Matrix::zeros(&q, n, 1);
    for (i, ci) in catalog.modules.iter().enumerate() {
        for (j, cj) in catalog.modules.iter().enumerate() {
            gram.set(i, j, Rational::from_integer(hom_dim(ci, cj)? as i64));
        }
        rhs.set(i, 0, Rational::from_integer(hom_dim(ci, m)? as i64));
    }
    if !gram.is_invertible() {
        return Err(Error::Hypothesis("Hom Gram matrix of the catalog is singular; catalog incomplete".into()));
    }
    let x = gram.solve(&rhs)?.expect("invertible system");
    let mult = (0..n)
        .map(|i| {
            let v = x.get(i, 0);
            if v.denom() != 1.into() || v.numer() < 0.into() {
                return Err(Error::Hypothesis(format!(
                    "multiplicity {v} of catalog entry {i} is not a nonnegative integer; catalog incomplete"
                )));
            }
            Ok(v.numer().try_into().expect("small multiplicity"))
        })
        .collect::<Result<Vec<usize>>>()?;
    // the solution must also account for the whole dimension vector
    let mut dims = vec![0; catalog.algebra.num_simples()];
    for (c, k) in catalog.modules.iter().zip(&mult) {
        for (d, e) in dims.iter_mut().zip(c.dimension_vector()) {
            *d += k * e;
        }
    }
    if dims != m.dimension_vector() {
        return Err(Error::Hypothesis("multiplicities do not add up to the dimension vector; catalog incomplete".into()));
    }
    Ok(mult)
}

/// A direct sum of catalog entries of total dimension at most `max_dim`, in a
/// scrambled basis. Returns the module and the multiplicities used.
pub fn random_sum<K: Field, R: Rng + ?Sized>(
    catalog: &IndecomposableCatalog<K>,
    max_dim: usize,
    rng: &mut R,
) -> Result<(Module<K>, Vec<usize>)> {
    let f = catalog.algebra.field();
    let mut mult = vec![0; catalog.len()];
    let mut parts = Vec::new();
    let mut total = 0;
    let target = rng.random_range(0..=max_dim);
    for _ in 0..4 * max_dim {
        let i = rng.random_range(0..catalog.len().max(1));
        let Some(c) = catalog.modules.get(i) else { break };
        if total + c.dim() <= target {
            total += c.dim();
            mult[i] += 1;
            parts.push(c.clone());
        }
    }
    let (sum, _, _) = direct_sum(&catalog.algebra, &parts)?;
    let p = loop {
        let p = Matrix::from_fn(f, total, total, |_, _| f.random(rng, 2));
        if p.is_invertible() {
            break p;
        }
    };
    Ok((sum.change_basis(&p)?, mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation};
    use crate::field::{FieldSpec, PrimeField};
    use rand::SeedableRng;

    #[test]
    fn lambda2_multiplicities() {
        let a = build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, 2)).unwrap();
        let p = Module::regular(&a);
        let s = Module::simple(&a, 0);
        let cat = IndecomposableCatalog::supplied(&a, vec![p.clone(), s.clone()]).unwrap();
        let (m, _, _) = direct_sum(&a, &[p.clone(), s.clone(), s.clone()]).unwrap();
        assert_eq!(multiplicity_by_hom(&cat, &m).unwrap(), vec![1, 2]);
        assert_eq!(multiplicity_by_hom(&cat, &Module::zero(&a)).unwrap(), vec![0, 0]);
        assert_eq!(multiplicity_by_hom(&cat, &s).unwrap(), vec![0, 1]);
        let only_s = IndecomposableCatalog::supplied(&a, vec![s.clone()]).unwrap();
        assert!(multiplicity_by_hom(&only_s, &p).is_err());
        assert!(IndecomposableCatalog::supplied(&a, vec![s.clone(), s.clone()]).is_err());
        assert!(IndecomposableCatalog::supplied(&a, vec![m]).is_err());
    }

    #[test]
    fn random_sums_round_trip() {
        let a = build_algebra(&Rationals, &Presentation::truncated_polynomial(FieldSpec::Rational, 3)).unwrap();
        let cat = enumerate_indecomposables(&a, EnumerationMode::Knitting, 8, 100, Execution::Sequential).unwrap();
        assert!(cat.complete);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let (m, mult) = random_sum(&cat, 6, &mut rng).unwrap();
            m.validate().unwrap();
            assert_eq!(multiplicity_by_hom(&cat, &m).unwrap(), mult);
        }
    }

    #[test]
    fn signatures_agree_across_fields() {
        let q = build_algebra(&Rationals, &Presentation::linear_quiver(FieldSpec::Rational, 2)).unwrap();
        let f = PrimeField::new(2).unwrap();
        let p = build_algebra(&f, &Presentation::linear_quiver(FieldSpec::Prime { p: 2 }, 2)).unwrap();
        let cq = enumerate_indecomposables(&q, EnumerationMode::Knitting, 8, 100, Execution::Sequential).unwrap();
        let cp = enumerate_indecomposables(&p, EnumerationMode::Bounded, 3, 100, Execution::Parallel).unwrap();
        assert_eq!(cq.signature().unwrap(), cp.signature().unwrap());
        assert_eq!(cq.len(), 3);
    }
}
