#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relaus::algebra::{ArrowSpec, QuiverSpec, RelationTerm};
use relaus::homology::random_extension;
use relaus::krull_schmidt::{enumerate_indecomposables, random_sum, EnumerationMode, IndecomposableCatalog};
use relaus::module::Module;
use relaus::par::Execution;
use relaus::{build_algebra, Algebra, Field, FieldSpec, Presentation, Rationals};

pub fn lambda(n: usize) -> Presentation {
    Presentation::truncated_polynomial(FieldSpec::Rational, n)
}

fn arrow(name: &str, from: &str, to: &str) -> ArrowSpec {
    ArrowSpec { name: name.into(), from: from.into(), to: to.into() }
}

fn term(coeff: &str, path: &[&str]) -> RelationTerm {
    RelationTerm { coeff: coeff.into(), path: path.iter().map(|s| s.to_string()).collect() }
}

/// `1 -> 2 -> 3` with the composite zero.
pub fn a3_zero_relation() -> Presentation {
    Presentation {
        field: FieldSpec::Rational,
        quiver: QuiverSpec {
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![arrow("a", "1", "2"), arrow("b", "2", "3")],
        },
        relations: vec![vec![term("1", &["a", "b"])]],
        nilpotency_bound: 2,
    }
}

/// The square `1 -> 2 -> 4`, `1 -> 3 -> 4` with both paths equal.
pub fn commutative_square() -> Presentation {
    Presentation {
        field: FieldSpec::Rational,
        quiver: QuiverSpec {
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![arrow("a", "1", "2"), arrow("b", "2", "4"), arrow("c", "1", "3"), arrow("d", "3", "4")],
        },
        relations: vec![vec![term("1", &["a", "b"]), term("-1", &["c", "d"])]],
        nilpotency_bound: 3,
    }
}

/// Representation-finite algebras exercised throughout.
pub fn fleet() -> Vec<(&'static str, Presentation)> {
    vec![
        ("lambda2", lambda(2)),
        ("lambda3", lambda(3)),
        ("lambda4", lambda(4)),
        ("kA2", Presentation::linear_quiver(FieldSpec::Rational, 2)),
        ("kxk", Presentation::semisimple(FieldSpec::Rational, 2)),
        ("kA3", Presentation::linear_quiver(FieldSpec::Rational, 3)),
        ("kA3/rad2", a3_zero_relation()),
        ("square", commutative_square()),
    ]
}

pub fn rational(p: &Presentation) -> Algebra<Rationals> {
    build_algebra(&Rationals, p).unwrap()
}

pub fn knitted<K: Field>(a: &Algebra<K>) -> IndecomposableCatalog<K> {
    let c = enumerate_indecomposables(a, EnumerationMode::Knitting, 8, 10_000, Execution::Sequential).unwrap();
    assert!(c.complete, "knitting incomplete: {:?}", c.note);
    c
}

/// A module built from catalog entries by direct sums and random
/// extensions, so usually not a direct sum of the pieces.
pub fn random_module<K: Field>(cat: &IndecomposableCatalog<K>, seed: u64, max_dim: usize) -> Module<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, _) = random_sum(cat, max_dim / 2, &mut rng).unwrap();
    let (y, _) = random_sum(cat, max_dim - max_dim / 2, &mut rng).unwrap();
    random_extension(&x, &y, &mut rng).unwrap().0
}
