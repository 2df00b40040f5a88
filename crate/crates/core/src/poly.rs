//! Univariate polynomials over a field, coefficients in increasing degree.

use num_traits::{Signed, ToPrimitive};

use crate::field::{Field, Rational};
use crate::matrix::Matrix;

/// `p(x) / (x - root)`, assuming `root` is a root.
pub fn divide_linear<K: Field>(f: &K, p: &[K::Elem], root: &K::Elem) -> Vec<K::Elem> {
    let n = p.len();
    if n <= 1 {
        return vec![];
    }
    let mut q = vec![f.zero(); n - 1];
    let mut carry = f.zero();
    for i in (1..n).rev() {
        carry = f.add(&p[i], &f.mul(&carry, root));
        q[i - 1] = carry.clone();
    }
    q
}

pub fn eval<K: Field>(f: &K, p: &[K::Elem], x: &K::Elem) -> K::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn eval_matrix<K: Field>(f: &K, p: &[K::Elem], m: &Matrix<K>) -> Matrix<K> {
    let mut acc = Matrix::zeros(f, m.rows(), m.cols());
    let id = Matrix::identity(f, m.rows());
    for c in p.iter().rev() {
        acc = acc.mul(m);
        acc.add_scaled(c, &id);
    }
    acc
}

/// Roots in the ground field: exhaustive over small prime fields, rational
/// root theorem in characteristic zero. Sorted by rendering for determinism.
pub fn roots<K: Field>(f: &K, p: &[K::Elem]) -> Vec<K::Elem> {
    let deg = match p.iter().rposition(|c| !f.is_zero(c)) {
        Some(d) => d,
        None => return vec![],
    };
    if deg == 0 {
        return vec![];
    }
    let p = &p[..=deg];
    if let Some(elems) = f.elements() {
        if elems.len() <= 1 << 16 {
            return elems.into_iter().filter(|x| f.is_zero(&eval(f, p, x))).collect();
        }
        return vec![];
    }
    let Some(q) = p.iter().map(|c| f.to_rational(c)).collect::<Option<Vec<Rational>>>() else {
        return vec![];
    };
    let mut out = Vec::new();
    // strip factors of x
    let low = q.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(f.zero());
    }
    let q = &q[low..];
    if q.len() <= 1 {
        return out;
    }
    // clear denominators
    let lcm = q.iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, &c.denom()));
    let ints: Vec<num_bigint::BigInt> = q.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return out;
    };
    if a0 > 1 << 40 || an > 1 << 40 {
        return out;
    }
    let dn = divisors(a0);
    let dd = divisors(an);
    let mut cands = Vec::new();
    for &n in &dn {
        for &d in &dd {
            for s in [1i64, -1] {
                let r = f.from_rational(&Rational::from_integer(s * n as i64).mul(&Rational::from_integer(d as i64).inv())).unwrap();
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    let pk: Vec<K::Elem> = p.to_vec();
    for r in cands {
        if f.is_zero(&eval(f, &pk, &r)) && !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort_by_key(|x| f.render(x));
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}
