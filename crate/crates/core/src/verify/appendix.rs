use crate::glcolor::{bracket_matrices, ColorMatrix, GlError, GradedSubalgebra, GradedTuple};
use crate::grading::BiCharacterTable;
use crate::linalg::{Echelon, Matrix};
use crate::scalars::{FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AppendixError {
    #[error("family element {0} is not upper triangular")]
    NotTriangular(usize),
    #[error("family elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("family is linearly dependent")]
    LinearlyDependent,
    #[error("matrices must be at least 2x2")]
    TooSmall,
    #[error(transparent)]
    Gl(#[from] GlError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixChecks {
    /// Each `B̄_i` lives in the first row and each `B̃_j` in the last column.
    pub border_shape: bool,
    /// `rank M = ν - r`.
    pub rank_identity: bool,
    /// `rank M + dim W = m`.
    pub rank_nullity: bool,
    /// `b̄_i · b̃_j = 0` for all pairs.
    pub orthogonal: bool,
    /// Every `b̃_j` lies in `W`, and they span a subspace of dimension `ν - t`.
    pub tilde_in_w: bool,
    /// The truncated families commute for the truncated tuples.
    pub truncations_commute: bool,
}

impl AppendixChecks {
    pub fn holds(&self) -> bool {
        self.border_shape
            && self.rank_identity
            && self.rank_nullity
            && self.orthogonal
            && self.tilde_in_w
            && self.truncations_commute
    }
}

/// The counting data for a commuting upper triangular family `A_1, ..., A_ν`.
///
/// `Ā` drops the first row and column, `Ã` the last. `r` and `t` are the
/// dimensions of the truncated spans; `bar_rows` are the first rows of
/// `A_i - Σ c_ik A_k` over the indices outside a greedy basis of the `Ā_i`,
/// and `tilde_cols` the last columns of the analogous combinations for `Ã`.
/// `M` stacks `bar_rows` and `W` is its null space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixWitness {
    pub m: usize,
    pub nu: usize,
    pub r: usize,
    pub t: usize,
    pub rank_m: usize,
    pub dim_w: usize,
    pub bar_rows: Vec<Vec<Scalar>>,
    pub tilde_cols: Vec<Vec<Scalar>>,
    pub w_basis: Vec<Vec<Scalar>>,
    pub checks: AppendixChecks,
}

struct Residuals {
    independent: usize,
    /// `A_i - Σ c_ik A_k` for each `i` outside the greedy basis of the truncations.
    borders: Vec<Matrix>,
}

// Greedy basis of the truncated matrices, and the border residual of every other index.
fn residuals(family: &[Matrix], keep: &[usize]) -> Residuals {
    let f = family[0].field();
    let n = keep.len() * keep.len();
    let truncated: Vec<Vec<Scalar>> = family.iter().map(|a| a.select(keep, keep).as_slice().to_vec()).collect();
    let mut ech = Echelon::new(f, n);
    let mut basis: Vec<usize> = Vec::new();
    let mut borders = Vec::new();
    for (i, v) in truncated.iter().enumerate() {
        if ech.insert(v) {
            basis.push(i);
            continue;
        }
        let mut cols: Vec<Vec<Scalar>> = basis.iter().map(|&k| truncated[k].clone()).collect();
        cols.push(v.clone());
        let kernel = Matrix::from_columns(f, n, &cols).nullspace();
        let c = &kernel[0];
        // c · (Ā_basis, Ā_i) = 0, so A_i - Σ (-c_k / c_i) A_k
        let scale = f.inv(c[basis.len()]);
        let mut b = family[i].clone();
        for (s, &k) in basis.iter().enumerate() {
            b = b.add_scaled(f.mul(scale, c[s]), &family[k]);
        }
        borders.push(b);
    }
    Residuals { independent: basis.len(), borders }
}

fn dot(f: &FieldSpec, u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).fold(Scalar::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

fn commute(family: &[ColorMatrix], keep: &[usize], eps: &BiCharacterTable) -> bool {
    let truncated: Vec<Matrix> = family.iter().map(|a| a.matrix().select(keep, keep)).collect();
    for (i, x) in truncated.iter().enumerate() {
        for (j, y) in truncated.iter().enumerate().skip(i) {
            let (dx, dy) = (family[i].degree().expect("tagged"), family[j].degree().expect("tagged"));
            if !bracket_matrices(x, dx, y, dy, eps).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Computes the witness for a commuting, linearly independent family of
/// homogeneous upper triangular matrices.
pub fn appendix_identities(
    family: &[ColorMatrix],
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
) -> Result<AppendixWitness, AppendixError> {
    let m = tuple.len();
    if m < 2 {
        return Err(AppendixError::TooSmall);
    }
    let algebra = GradedSubalgebra::new(tuple.clone(), family.to_vec()).map_err(|e| match e {
        GlError::LinearlyDependent => AppendixError::LinearlyDependent,
        e => AppendixError::Gl(e),
    })?;
    let family = algebra.basis();
    for (i, a) in family.iter().enumerate() {
        if !a.matrix().is_upper_triangular() {
            return Err(AppendixError::NotTriangular(i));
        }
    }
    for (i, x) in family.iter().enumerate() {
        for (j, y) in family.iter().enumerate().skip(i) {
            let dx = x.degree().expect("tagged");
            let dy = y.degree().expect("tagged");
            if !bracket_matrices(x.matrix(), dx, y.matrix(), dy, eps).is_zero() {
                return Err(AppendixError::NotCommuting(i, j));
            }
        }
    }
    let f = eps.field();
    let nu = family.len();
    let matrices: Vec<Matrix> = family.iter().map(|a| a.matrix().clone()).collect();
    let tail: Vec<usize> = (1..m).collect();
    let head: Vec<usize> = (0..m - 1).collect();
    let bar = residuals(&matrices, &tail);
    let tilde = residuals(&matrices, &head);

    let in_first_row = |b: &Matrix| b.support().all(|(i, _)| i == 0);
    let in_last_col = |b: &Matrix| b.support().all(|(_, j)| j == m - 1);
    let border_shape = bar.borders.iter().all(in_first_row) && tilde.borders.iter().all(in_last_col);

    let bar_rows: Vec<Vec<Scalar>> = bar.borders.iter().map(|b| b.row(0).to_vec()).collect();
    let tilde_cols: Vec<Vec<Scalar>> = tilde.borders.iter().map(|b| b.column(m - 1)).collect();
    let (rank_m, w_basis) = if bar_rows.is_empty() {
        let id = (0..m).map(|s| (0..m).map(|t| if s == t { Scalar::ONE } else { Scalar::ZERO }).collect());
        (0, id.collect())
    } else {
        let mm = Matrix::from_rows(f, &bar_rows);
        (mm.rank(), mm.nullspace())
    };
    let dim_w = w_basis.len();
    let orthogonal = bar_rows.iter().all(|u| tilde_cols.iter().all(|v| dot(&f, u, v).is_zero()));
    let mut w = Echelon::new(f, m);
    for v in &w_basis {
        w.insert(v);
    }
    let mut tilde_span = Echelon::new(f, m);
    for v in &tilde_cols {
        tilde_span.insert(v);
    }
    let tilde_in_w = tilde_cols.iter().all(|v| w.contains(v)) && tilde_span.rank() == nu - tilde.independent;
    let truncations_commute = commute(family, &tail, eps) && commute(family, &head, eps);

    let checks = AppendixChecks {
        border_shape,
        rank_identity: rank_m == nu - bar.independent,
        rank_nullity: rank_m + dim_w == m,
        orthogonal,
        tilde_in_w,
        truncations_commute,
    };
    Ok(AppendixWitness {
        m,
        nu,
        r: bar.independent,
        t: tilde.independent,
        rank_m,
        dim_w,
        bar_rows,
        tilde_cols,
        w_basis,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glcolor::Mode;
    use crate::grading::{cyclic_bicharacter, cyclic_bicharacters, GradingGroup};
    use crate::maximal::{construct, Variant};
    use crate::random;
    use crate::verify::random_triangular_abelian;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trivial(p: u64) -> BiCharacterTable {
        BiCharacterTable::trivial(GradingGroup::trivial(), FieldSpec::new(p, 1).unwrap())
    }

    #[test]
    fn block_families_satisfy_the_identities() {
        let eps = trivial(5);
        for m in 2..=5 {
            let t = GradedTuple::trivial(m);
            for v in Variant::ALL {
                let fam = construct(v, &t, &eps);
                let w = appendix_identities(fam.algebra.basis(), &t, &eps).unwrap();
                assert!(w.checks.holds(), "{v} m={m}: {:?}", w.checks);
                assert_eq!(w.nu, fam.algebra.dim());
            }
        }
    }

    #[test]
    fn counts_for_e_block() {
        // E in gl(4): span of e_ij with i < 2 <= j
        let eps = trivial(5);
        let t = GradedTuple::trivial(4);
        let fam = construct(Variant::E, &t, &eps);
        let w = appendix_identities(fam.algebra.basis(), &t, &eps).unwrap();
        assert_eq!((w.nu, w.r, w.t, w.rank_m, w.dim_w), (4, 2, 2, 2, 2));
    }

    #[test]
    fn super_family() {
        let f = FieldSpec::new(7, 1).unwrap();
        let eps = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        let t = GradedTuple::cyclic(2, &[0, 1, 0]);
        let x = ColorMatrix::unit(&t, f, 0, 1);
        let y = ColorMatrix::unit(&t, f, 1, 2);
        // e12 and e23 anticommute only up to e13: the bracket is nonzero
        assert!(matches!(appendix_identities(&[x.clone(), y], &t, &eps), Err(AppendixError::NotCommuting(0, 1))));
        let z = ColorMatrix::unit(&t, f, 0, 2);
        assert!(appendix_identities(&[x, z], &t, &eps).unwrap().checks.holds());
    }

    #[test]
    fn small_examples() {
        let eps = trivial(5);
        let f = eps.field();
        let t2 = GradedTuple::trivial(2);
        let w = appendix_identities(&[ColorMatrix::unit(&t2, f, 0, 1)], &t2, &eps).unwrap();
        assert!(w.checks.holds());
        assert_eq!((w.r, w.t, w.rank_m, w.dim_w), (0, 0, 1, 1));
        let t3 = GradedTuple::trivial(3);
        let fam = [ColorMatrix::unit(&t3, f, 0, 2), ColorMatrix::unit(&t3, f, 1, 2)];
        let w = appendix_identities(&fam, &t3, &eps).unwrap();
        assert!(w.checks.holds());
        // Ā = {0, e12}, Ã = {0, 0}
        assert_eq!((w.r, w.t, w.rank_m, w.dim_w), (1, 0, 1, 2));
    }

    #[test]
    fn dependent_truncations() {
        // diag(3,1) and diag(3,2): the truncations are proportional, leaving a border in each corner
        let eps = trivial(5);
        let f = eps.field();
        let t = GradedTuple::trivial(2);
        let d = |a, b| ColorMatrix::infer(Matrix::from_i64(f, &[&[a, 0], &[0, b]]), &t).unwrap();
        let w = appendix_identities(&[d(3, 1), d(3, 2)], &t, &eps).unwrap();
        assert!(w.checks.holds(), "{:?}", w.checks);
        assert_eq!(w.bar_rows, vec![vec![f.elem(2), Scalar::ZERO]]);
    }

    proptest! {
        #[test]
        fn random_triangular_families(seed in any::<u64>(), m in 2usize..6, k in 1u64..4, nil in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let eps = cyclic_bicharacters(k, FieldSpec::for_group(k, 5)).unwrap().pop().unwrap();
            let t = random::tuple(eps.group(), m, &mut rng);
            let mode = if nil { Mode::Nil } else { Mode::Prenil };
            let a = random_triangular_abelian(&t, &eps, mode, &mut rng);
            prop_assume!(a.dim() > 0);
            let w = appendix_identities(a.basis(), &t, &eps).unwrap();
            prop_assert!(w.checks.holds(), "{:?}", w.checks);
        }
    }

    #[test]
    fn rejects_bad_families() {
        let eps = trivial(5);
        let f = eps.field();
        let t = GradedTuple::trivial(2);
        let low = ColorMatrix::unit(&t, f, 1, 0);
        assert_eq!(appendix_identities(&[low], &t, &eps), Err(AppendixError::NotTriangular(0)));
        let e = ColorMatrix::unit(&t, f, 0, 1);
        assert_eq!(
            appendix_identities(&[e.clone(), e.scale(f.elem(2))], &t, &eps),
            Err(AppendixError::LinearlyDependent)
        );
        let g = ColorMatrix::unit(&t, f, 0, 0);
        assert_eq!(appendix_identities(&[g, e], &t, &eps), Err(AppendixError::NotCommuting(0, 1)));
    }
}
