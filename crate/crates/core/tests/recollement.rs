mod common;

use common::*;
use proptest::prelude::*;
use relaus::homology::{ext_dim, inj_dim, proj_dim};
use relaus::krull_schmidt::is_indecomposable;
use relaus::module::hom_dim;
use relaus::recollement::{build_setup, SetupBudget, SubcategorySetup};
use relaus::Rationals;

fn setup(p: &relaus::Presentation) -> SubcategorySetup<Rationals> {
    build_setup(&knitted(&rational(p)), SetupBudget::default()).unwrap()
}

fn all_verified(s: &SubcategorySetup<Rationals>) -> bool {
    let f = &s.flags;
    [&f.contains_projectives, &f.syzygy_closed, &f.submodule_closed, &f.left_perp].iter().all(|c| c.verified())
}

#[test]
fn end_ring_dimension_is_sum_of_homs() {
    for (name, p) in fleet() {
        let s = setup(&p);
        let cs = &s.catalog.modules;
        let total: usize = cs.iter().flat_map(|x| cs.iter().map(move |y| hom_dim(x, y).unwrap())).sum();
        assert_eq!(s.gamma().dim(), total, "{name}");
        assert_eq!(s.gamma().num_simples(), cs.len(), "{name}");
        s.gamma().check_axioms().unwrap();
    }
}

#[test]
fn zeta_is_fully_faithful_on_the_catalog() {
    for (name, p) in fleet() {
        let s = setup(&p);
        let z: Vec<_> = s.catalog.modules.iter().map(|c| s.zeta(c).unwrap().zeta).collect();
        for (i, ci) in s.catalog.modules.iter().enumerate() {
            assert!(is_indecomposable(&z[i]).unwrap(), "{name} C{i}");
            for (j, cj) in s.catalog.modules.iter().enumerate() {
                assert_eq!(hom_dim(&z[i], &z[j]).unwrap(), hom_dim(ci, cj).unwrap(), "{name} C{i} C{j}");
            }
        }
    }
}

#[test]
fn four_term_sequences_are_exact() {
    for (name, p) in fleet() {
        let s = setup(&p);
        for (i, c) in s.catalog.modules.iter().enumerate() {
            let z = s.zeta(c).unwrap();
            assert!(z.certificate.ok(), "{name} C{i}: {:?}", z.certificate);
            assert!(s.is_mod0(&z.k) && s.is_mod0(&z.l), "{name} C{i}");
            let d = z.certificate.dims;
            assert_eq!(d[0] as i64 - d[1] as i64 + d[3] as i64 - d[4] as i64, 0);
            assert_eq!(d[2], z.zeta.dim());
        }
    }
}

#[test]
fn simple_over_dual_numbers() {
    let s = setup(&lambda(2));
    let simple = s.catalog.modules.iter().find(|m| m.dim() == 1).unwrap();
    assert_eq!(s.zeta(simple).unwrap().certificate.dims, [1, 2, 1, 2, 1]);
}

#[test]
fn homological_bounds_under_verified_hypotheses() {
    let mut checked = 0;
    for (name, p) in fleet() {
        let s = setup(&p);
        if !all_verified(&s) {
            continue;
        }
        checked += 1;
        let z: Vec<_> = s.catalog.modules.iter().map(|c| s.zeta(c).unwrap().zeta).collect();
        for (i, x) in z.iter().enumerate() {
            assert_eq!(proj_dim(x, 6).unwrap().at_most(1), Some(true), "{name} C{i}");
            assert_eq!(inj_dim(x, 6).unwrap().at_most(1), Some(true), "{name} C{i}");
            for y in &z {
                assert_eq!(ext_dim(x, y, 1).unwrap(), 0, "{name}");
            }
        }
    }
    assert!(checked >= 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn zeta_of_random_modules(which in 0usize..8, a in any::<u64>(), b in any::<u64>()) {
        let (_, p) = &fleet()[which];
        let s = setup(p);
        let m = random_module(&s.catalog, a, 5);
        let n = random_module(&s.catalog, b, 5);
        let zm = s.zeta(&m).unwrap();
        let zn = s.zeta(&n).unwrap();
        prop_assert!(zm.certificate.ok());
        prop_assert_eq!(hom_dim(&zm.zeta, &zn.zeta).unwrap(), hom_dim(&m, &n).unwrap());
        let back = s.v_theta(&zm.zeta).unwrap();
        prop_assert!(relaus::krull_schmidt::is_isomorphic(&back, &m).unwrap().is_some());
    }
}
