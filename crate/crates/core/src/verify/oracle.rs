//! Naive reference computations on raw residues, sharing no arithmetic with
//! the rest of the crate.

use super::search::grow;
use crate::glcolor::{classify_subalgebra, ColorMatrix, GradedSubalgebra, GradedTuple, Mode};
use crate::grading::BiCharacterTable;
use crate::linalg::Matrix;
use crate::random;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaiveClosure {
    pub closed: bool,
    pub abelian: bool,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn raw(x: &ColorMatrix) -> Vec<u64> {
    x.matrix().as_slice().iter().map(|s| s.value()).collect()
}

fn matmul(x: &[u64], y: &[u64], m: usize, p: u64) -> Vec<u64> {
    let mut z = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = 0;
            for l in 0..m {
                acc = (acc + x[i * m + l] * y[l * m + j]) % p;
            }
            z[i * m + j] = acc;
        }
    }
    z
}

/// Row-reduces `rows` in place and returns the reduced rows with their pivot columns.
fn eliminate(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<(usize, Vec<u64>)> {
    let mut out: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut v in rows.drain(..) {
        for (c, r) in &out {
            let a = v[*c];
            if a != 0 {
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi = (*vi + p - a * ri % p) % p;
                }
            }
        }
        if let Some(c) = v.iter().position(|&a| a != 0) {
            let inv = pow_mod(v[c], p - 2, p);
            for vi in v.iter_mut() {
                *vi = *vi * inv % p;
            }
            out.push((c, v));
        }
    }
    out
}

fn in_span(reduced: &[(usize, Vec<u64>)], v: &[u64], p: u64) -> bool {
    let mut v = v.to_vec();
    for (c, r) in reduced {
        let a = v[*c];
        if a != 0 {
            for (vi, ri) in v.iter_mut().zip(r) {
                *vi = (*vi + p - a * ri % p) % p;
            }
        }
    }
    v.iter().all(|&a| a == 0)
}

/// Closure and commutativity of a homogeneous basis by direct computation.
pub fn naive_closure(a: &GradedSubalgebra, eps: &BiCharacterTable) -> NaiveClosure {
    let p = eps.field().p();
    let m = a.m();
    let basis: Vec<Vec<u64>> = a.basis().iter().map(raw).collect();
    let reduced = eliminate(basis.clone(), p);
    let mut closed = true;
    let mut abelian = true;
    for (s, x) in a.basis().iter().enumerate() {
        for (t, y) in a.basis().iter().enumerate() {
            let e = eps.eps(x.degree().expect("tagged"), y.degree().expect("tagged")).value();
            let xy = matmul(&basis[s], &basis[t], m, p);
            let yx = matmul(&basis[t], &basis[s], m, p);
            let br: Vec<u64> = xy.iter().zip(&yx).map(|(&u, &v)| (u + p - e * v % p) % p).collect();
            if br.iter().any(|&c| c != 0) {
                abelian = false;
                closed &= in_span(&reduced, &br, p);
            }
        }
    }
    NaiveClosure { closed, abelian }
}

/// Whether the naive computation agrees with the crate's classification.
pub fn oracle_bracket_closure(a: &GradedSubalgebra, eps: &BiCharacterTable) -> bool {
    let naive = naive_closure(a, eps);
    let flags = classify_subalgebra(a, eps);
    naive.closed == flags.is_closed && naive.abelian == flags.is_abelian
}

/// Two homogeneous nilpotent matrices with `xy = ε(|x|,|y|) yx`, drawn from a
/// random nil abelian subalgebra. Both are zero when that subalgebra is.
pub fn random_commuting_nilpotent_pair<R: Rng + ?Sized>(
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
    rng: &mut R,
) -> (ColorMatrix, ColorMatrix) {
    let f = eps.field();
    let a = grow(tuple, eps, Mode::Nil, rng);
    let g = random::degree_zero_invertible(tuple, f, rng);
    let gi = g.inverse().expect("invertible");
    let degrees: Vec<_> = tuple.group().elements().filter(|&d| !a.component(d).is_empty()).collect();
    let draw = |rng: &mut R| {
        let Some(&d) = degrees.get(rng.gen_range(0..degrees.len().max(1))) else {
            return ColorMatrix::homogeneous(Matrix::zeros(f, tuple.len(), tuple.len()), tuple.group().zero(), tuple)
                .expect("zero matrix");
        };
        let mut x = Matrix::zeros(f, tuple.len(), tuple.len());
        for b in a.component(d) {
            x = x.add_scaled(random::scalar(&f, rng), b.matrix());
        }
        ColorMatrix::from_parts(gi.mul(&x).mul(&g), Some(d))
    };
    let x = draw(rng);
    let y = draw(rng);
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glcolor::color_bracket;
    use crate::grading::{cyclic_bicharacter, GradingGroup};
    use crate::scalars::FieldSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pairs_commute_and_are_nilpotent() {
        let f = FieldSpec::new(7, 1).unwrap();
        let eps = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        let t = GradedTuple::cyclic(2, &[0, 1, 1, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (x, y) = random_commuting_nilpotent_pair(&t, &eps, &mut rng);
            assert!(x.is_nilpotent() && y.is_nilpotent());
            assert!(color_bracket(&x, &y, &eps).unwrap().matrix().is_zero());
            assert!(x.is_consistent_with(&t) && y.is_consistent_with(&t));
        }
    }

    #[test]
    fn agrees_on_listed_cases() {
        let eps = BiCharacterTable::trivial(GradingGroup::trivial(), FieldSpec::new(5, 1).unwrap());
        let f = eps.field();
        let t4 = GradedTuple::trivial(4);
        let eprime = crate::maximal::construct(crate::maximal::Variant::Eprime, &t4, &eps).algebra;
        assert!(oracle_bracket_closure(&eprime, &eps));
        assert!(naive_closure(&eprime, &eps).abelian);
        let t2 = GradedTuple::trivial(2);
        let a =
            GradedSubalgebra::new(t2.clone(), vec![ColorMatrix::unit(&t2, f, 0, 0), ColorMatrix::unit(&t2, f, 0, 1)])
                .unwrap();
        assert!(oracle_bracket_closure(&a, &eps));
        assert!(!naive_closure(&a, &eps).abelian);
    }

    #[test]
    fn agrees_on_random_spans() {
        let f = FieldSpec::new(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for omega in [f.elem(1), f.minus_one()] {
            let eps = cyclic_bicharacter(2, omega, f).unwrap();
            for _ in 0..50 {
                let t = random::tuple(eps.group(), 3, &mut rng);
                let n = rng.gen_range(1..=4);
                let spanning = (0..n)
                    .map(|_| {
                        let d = random::group_elem(eps.group(), &mut rng);
                        random::homogeneous(&t, f, d, &mut rng)
                    })
                    .filter(|x| !x.matrix().is_zero())
                    .collect();
                let a = GradedSubalgebra::from_spanning(t, spanning).unwrap();
                assert!(oracle_bracket_closure(&a, &eps));
            }
        }
    }

    #[test]
    fn agrees_on_closed_and_open_spans() {
        let eps = BiCharacterTable::trivial(GradingGroup::trivial(), FieldSpec::new(5, 1).unwrap());
        let f = eps.field();
        let t = GradedTuple::trivial(2);
        let e = |i, j| ColorMatrix::unit(&t, f, i, j);
        let open = GradedSubalgebra::new(t.clone(), vec![e(0, 1), e(1, 0)]).unwrap();
        assert_eq!(naive_closure(&open, &eps), NaiveClosure { closed: false, abelian: false });
        assert!(oracle_bracket_closure(&open, &eps));
        let borel = GradedSubalgebra::new(t.clone(), vec![e(0, 0), e(0, 1), e(1, 1)]).unwrap();
        assert_eq!(naive_closure(&borel, &eps), NaiveClosure { closed: true, abelian: false });
        let id = ColorMatrix::homogeneous(Matrix::identity(f, 2), t.group().zero(), &t).unwrap();
        let flat = GradedSubalgebra::new(t.clone(), vec![id, e(0, 1)]).unwrap();
        assert_eq!(naive_closure(&flat, &eps), NaiveClosure { closed: true, abelian: true });
    }
}
