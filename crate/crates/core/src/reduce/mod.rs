//! Similarity reductions: elementary conjugators, the `h_A` normalization,
//! generalized-matrix-unit decomposition and simultaneous triangulation.

mod hgmu;
mod triangulate;

pub use hgmu::{check_hgmu, hgmu_decompose, HgmuCheck, HgmuDecomposition, HgmuRow};
pub use triangulate::{triangulate, Triangulation};

use crate::glcolor::{ColorMatrix, GlError, Height};
use crate::linalg::Matrix;
use crate::scalars::{FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("matrix carries no degree tag")]
    NotHomogeneous,
    #[error("height {0:?} is not strictly above the diagonal")]
    HeightMismatch(Height),
    #[error("subalgebra is not abelian")]
    NotAbelian,
    #[error("basis element {0} is not strictly upper triangular")]
    NotStrictlyTriangular(usize),
    #[error("a homogeneous element of nonzero degree is not nilpotent")]
    NotPreNil,
    #[error("an element is not nilpotent")]
    NotNil,
    #[error("a characteristic polynomial of degree {degree} does not split over F_{p}")]
    FieldNotSplit { p: u64, degree: usize },
    #[error(transparent)]
    Gl(#[from] GlError),
}

/// `T_ij(a) = I + a e_ij` with `i < j`, or `D_i(a) = I + (a - 1) e_ii` with `a ≠ 0`.
///
/// Both act on matrices by `X ↦ T⁻¹ X T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ElementaryConjugator {
    #[serde(rename = "t")]
    T { i: usize, j: usize, a: Scalar },
    #[serde(rename = "d")]
    D { i: usize, a: Scalar },
}

impl ElementaryConjugator {
    pub fn is_valid(&self, m: usize) -> bool {
        match *self {
            ElementaryConjugator::T { i, j, .. } => i < j && j < m,
            ElementaryConjugator::D { i, a } => i < m && !a.is_zero(),
        }
    }

    pub fn matrix(&self, field: FieldSpec, m: usize) -> Matrix {
        let mut t = Matrix::identity(field, m);
        match *self {
            ElementaryConjugator::T { i, j, a } => t.set(i, j, a),
            ElementaryConjugator::D { i, a } => t.set(i, i, a),
        }
        t
    }

    pub fn inverse(&self, field: FieldSpec) -> ElementaryConjugator {
        match *self {
            ElementaryConjugator::T { i, j, a } => ElementaryConjugator::T { i, j, a: field.neg(a) },
            ElementaryConjugator::D { i, a } => ElementaryConjugator::D { i, a: field.inv(a) },
        }
    }

    /// `T⁻¹ X T`, computed with one row and one column operation.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        let mut y = x.clone();
        self.apply_in_place(&mut y);
        y
    }

    pub fn apply_in_place(&self, y: &mut Matrix) {
        let f = y.field();
        match *self {
            ElementaryConjugator::T { i, j, a } => {
                y.add_row_multiple(i, j, f.neg(a));
                y.add_col_multiple(j, i, a);
            }
            ElementaryConjugator::D { i, a } => {
                y.scale_row(i, f.inv(a));
                y.scale_col(i, a);
            }
        }
    }

    /// `acc ↦ acc · T`, accumulating a product of conjugators in application order.
    pub fn right_multiply(&self, acc: &mut Matrix) {
        match *self {
            ElementaryConjugator::T { i, j, a } => acc.add_col_multiple(j, i, a),
            ElementaryConjugator::D { i, a } => acc.scale_col(i, a),
        }
    }
}

/// Applies a trace of conjugators in order.
pub fn replay(trace: &[ElementaryConjugator], x: &Matrix) -> Matrix {
    let mut y = x.clone();
    for op in trace {
        op.apply_in_place(&mut y);
    }
    y
}

/// Product `T_1 T_2 ... T_n` of a trace, so that replaying it equals conjugating by the product.
pub fn trace_product(trace: &[ElementaryConjugator], field: FieldSpec, m: usize) -> Matrix {
    let mut acc = Matrix::identity(field, m);
    for op in trace {
        op.right_multiply(&mut acc);
    }
    acc
}

/// The operators making up `h_A` for a homogeneous `A` of height `(i, j)` with `i < j`:
/// `D_i(a_ij)` first, then `T_jl(-a_il)` for `l = j+1, ..., m-1`, reading `a_il`
/// from the partially reduced matrix before each step. Zero steps are skipped.
pub fn h_operators(a: &ColorMatrix) -> Result<Vec<ElementaryConjugator>, ReduceError> {
    if a.degree().is_none() {
        return Err(ReduceError::NotHomogeneous);
    }
    let (i, j) = match a.height() {
        Height::At(i, j) if i < j => (i, j),
        h => return Err(ReduceError::HeightMismatch(h)),
    };
    let f = a.matrix().field();
    let m = a.m();
    let mut work = a.matrix().clone();
    let mut ops = Vec::new();
    let lead = work.get(i, j);
    if lead != Scalar::ONE {
        let op = ElementaryConjugator::D { i, a: lead };
        op.apply_in_place(&mut work);
        ops.push(op);
    }
    for l in j + 1..m {
        let c = work.get(i, l);
        if c.is_zero() {
            continue;
        }
        let op = ElementaryConjugator::T { i: j, j: l, a: f.neg(c) };
        op.apply_in_place(&mut work);
        ops.push(op);
    }
    Ok(ops)
}

/// Applies `h_A` to `target`. With `target = A` the result is a generalized matrix unit
/// `u_{i,j}` of the same degree.
pub fn apply_ha(a: &ColorMatrix, target: &ColorMatrix) -> Result<ColorMatrix, ReduceError> {
    let ops = h_operators(a)?;
    Ok(target.with_matrix(replay(&ops, target.matrix())))
}

/// Whether `u` has height `(i, j)` and its `i`-th row is the `j`-th standard row.
pub fn is_generalized_unit(u: &Matrix, i: usize, j: usize) -> bool {
    crate::glcolor::height(u) == Height::At(i, j)
        && (0..u.cols()).all(|c| u.get(i, c) == if c == j { Scalar::ONE } else { Scalar::ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glcolor::GradedTuple;
    use proptest::prelude::*;

    fn f5() -> FieldSpec {
        FieldSpec::new(5, 1).unwrap()
    }

    fn tagged(x: Matrix) -> ColorMatrix {
        ColorMatrix::infer(x, &GradedTuple::trivial(3)).unwrap()
    }

    // Conjugation by matrix products, independent of the row/column shortcut.
    fn conjugate_naive(t: &Matrix, x: &Matrix) -> Matrix {
        t.inverse().unwrap().mul(x).mul(t)
    }

    #[test]
    fn ha_clears_the_leading_row() {
        let f = f5();
        let a = tagged(Matrix::unit(f, 3, 0, 1).add(&Matrix::unit(f, 3, 0, 2)));
        let u = apply_ha(&a, &a).unwrap();
        assert_eq!(u.matrix(), &Matrix::unit(f, 3, 0, 1));
        let ops = h_operators(&a).unwrap();
        assert_eq!(ops, vec![ElementaryConjugator::T { i: 1, j: 2, a: f.elem(-1) }]);
        let t = trace_product(&ops, f, 3);
        assert_eq!(conjugate_naive(&t, a.matrix()), Matrix::unit(f, 3, 0, 1));
    }

    #[test]
    fn ha_normalizes_scalar_multiples() {
        let f = f5();
        let t = GradedTuple::trivial(2);
        let a = ColorMatrix::infer(Matrix::unit(f, 2, 0, 1).scale(f.elem(2)), &t).unwrap();
        assert_eq!(apply_ha(&a, &a).unwrap().matrix(), &Matrix::unit(f, 2, 0, 1));
        let e = ColorMatrix::unit(&t, f, 0, 1);
        assert!(h_operators(&e).unwrap().is_empty());
    }

    #[test]
    fn ha_rejects_bad_inputs() {
        let f = f5();
        let diag = tagged(Matrix::unit(f, 3, 1, 1));
        assert_eq!(h_operators(&diag), Err(ReduceError::HeightMismatch(Height::At(1, 1))));
        let untagged = ColorMatrix::untagged(Matrix::unit(f, 3, 0, 1));
        assert_eq!(h_operators(&untagged), Err(ReduceError::NotHomogeneous));
    }

    #[test]
    fn conjugation_shortcut_matches_products() {
        let f = FieldSpec::new(7, 1).unwrap();
        let x = Matrix::from_i64(f, &[&[1, 2, 3], &[4, 5, 6], &[0, 1, 2]]);
        for op in [ElementaryConjugator::T { i: 0, j: 2, a: f.elem(3) }, ElementaryConjugator::D { i: 1, a: f.elem(5) }]
        {
            assert_eq!(op.apply(&x), conjugate_naive(&op.matrix(f, 3), &x));
            assert_eq!(op.inverse(f).apply(&op.apply(&x)), x);
        }
    }

    #[test]
    fn conjugator_json_shape() {
        let op = ElementaryConjugator::T { i: 1, j: 2, a: Scalar::ONE };
        let s = serde_json::to_string(&op).unwrap();
        assert_eq!(s, r#"{"kind":"t","i":1,"j":2,"a":1}"#);
        assert_eq!(serde_json::from_str::<ElementaryConjugator>(&s).unwrap(), op);
    }

    proptest! {
        #[test]
        fn conjugation_is_multiplicative(
            xs in proptest::collection::vec(0i64..7, 9),
            ys in proptest::collection::vec(0i64..7, 9),
            i in 0usize..3, j in 0usize..3, a in 1i64..7,
        ) {
            let f = FieldSpec::new(7, 1).unwrap();
            let x = Matrix::from_flat(f, 3, 3, xs.iter().map(|&v| f.elem(v)).collect());
            let y = Matrix::from_flat(f, 3, 3, ys.iter().map(|&v| f.elem(v)).collect());
            let op = if i < j {
                ElementaryConjugator::T { i, j, a: f.elem(a) }
            } else {
                ElementaryConjugator::D { i, a: f.elem(a) }
            };
            prop_assert_eq!(op.apply(&x.mul(&y)), op.apply(&x).mul(&op.apply(&y)));
        }

        #[test]
        fn ha_produces_units(entries in proptest::collection::vec(0i64..5, 3), lead in 1i64..5) {
            // row 0 = (0, lead, e0, e1, e2), plus noise in later rows
            let f = f5();
            let m = 5;
            let mut x = Matrix::zeros(f, m, m);
            x.set(0, 1, f.elem(lead));
            for (l, &e) in entries.iter().enumerate() {
                x.set(0, l + 2, f.elem(e));
                x.set(1, l + 2, f.elem(e + 1));
            }
            let a = ColorMatrix::infer(x, &GradedTuple::trivial(m)).unwrap();
            let u = apply_ha(&a, &a).unwrap();
            prop_assert!(is_generalized_unit(u.matrix(), 0, 1));
            let t = trace_product(&h_operators(&a).unwrap(), f, m);
            prop_assert_eq!(conjugate_naive(&t, a.matrix()), u.matrix().clone());
        }
    }
}
