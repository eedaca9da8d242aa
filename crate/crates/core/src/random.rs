//! Seeded samplers for field elements, group elements and homogeneous matrices.
//!
//! All randomized code in the crate draws from a caller-supplied RNG; reports
//! that need replay use `ChaCha8Rng` seeded from a `u64`.

use crate::glcolor::{ColorMatrix, GradedTuple};
use crate::grading::{Elem, GradingGroup};
use crate::linalg::Matrix;
use crate::scalars::{FieldSpec, Scalar};
use rand::Rng;

pub fn scalar<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R) -> Scalar {
    field.elem(rng.gen_range(0..field.p()) as i64)
}

pub fn nonzero_scalar<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R) -> Scalar {
    field.elem(rng.gen_range(1..field.p()) as i64)
}

pub fn group_elem<R: Rng + ?Sized>(group: &GradingGroup, rng: &mut R) -> Elem {
    let residues: Vec<u64> = group.factors().iter().map(|&k| rng.gen_range(0..k)).collect();
    group.from_residues(&residues).expect("residues in range")
}

/// A tuple of length `m` with independently uniform degrees.
pub fn tuple<R: Rng + ?Sized>(group: &GradingGroup, m: usize, rng: &mut R) -> GradedTuple {
    GradedTuple::new(group.clone(), (0..m).map(|_| group_elem(group, rng)).collect())
}

/// A uniform element of `gl^Φ_γ`.
pub fn homogeneous<R: Rng + ?Sized>(tuple: &GradedTuple, field: FieldSpec, gamma: Elem, rng: &mut R) -> ColorMatrix {
    let m = tuple.len();
    let mut x = Matrix::zeros(field, m, m);
    for (i, j) in tuple.homogeneous_component(gamma) {
        x.set(i, j, scalar(&field, rng));
    }
    ColorMatrix::from_parts(x, Some(gamma))
}

/// A random invertible matrix of degree 0, built as a product of degree-0 elementary factors.
pub fn degree_zero_invertible<R: Rng + ?Sized>(tuple: &GradedTuple, field: FieldSpec, rng: &mut R) -> Matrix {
    let m = tuple.len();
    let mut g = Matrix::identity(field, m);
    for _ in 0..(2 * m * m).max(1) {
        let (i, j) = (rng.gen_range(0..m.max(1)), rng.gen_range(0..m.max(1)));
        if m == 0 {
            break;
        }
        let mut e = Matrix::identity(field, m);
        if i == j {
            e.set(i, i, nonzero_scalar(&field, rng));
        } else if tuple.degree(i) == tuple.degree(j) {
            e.set(i, j, scalar(&field, rng));
        } else {
            continue;
        }
        g = g.mul(&e);
    }
    g
}

/// A random unitriangular matrix of degree 0: ones on the diagonal, random
/// entries above it wherever the tuple allows a degree-0 entry.
pub fn degree_zero_unitriangular<R: Rng + ?Sized>(tuple: &GradedTuple, field: FieldSpec, rng: &mut R) -> Matrix {
    let m = tuple.len();
    let mut g = Matrix::identity(field, m);
    for i in 0..m {
        for j in i + 1..m {
            if tuple.degree(i) == tuple.degree(j) {
                g.set(i, j, scalar(&field, rng));
            }
        }
    }
    g
}
