use super::ReduceError;
use crate::glcolor::{color_bracket, ColorMatrix, GradedSubalgebra, GradedTuple, Mode};
use crate::grading::{BiCharacterTable, Elem};
use crate::linalg::{Echelon, Matrix};
use crate::scalars::{roots_in_field, FieldSpec, Scalar};

/// A homogeneous change of basis `g` with `g⁻¹ a g` upper triangular for the new tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub mode: Mode,
    /// Columns are the flag vectors, each homogeneous for the original tuple.
    pub conjugator: Matrix,
    pub inverse: Matrix,
    /// `Φ'_t` is the degree of the `t`-th flag vector.
    pub tuple: GradedTuple,
    pub image: GradedSubalgebra,
}

/// A candidate flag vector in quotient coordinates, with its ranking key.
struct Candidate {
    key: (usize, usize, Vec<Scalar>),
    coords: Vec<Scalar>,
}

/// Builds a homogeneous flag `V_1 ⊂ V_2 ⊂ ...` stable under `a`.
///
/// Each new vector is a common eigenvector of the induced actions on the
/// quotient: it lies in the joint kernel of the nonzero-degree actions (and of
/// the degree-0 actions in nil mode) and is an eigenvector of every remaining
/// degree-0 action. The quotient is carried as an explicit homogeneous
/// complement basis.
pub fn triangulate(a: &GradedSubalgebra, mode: Mode, eps: &BiCharacterTable) -> Result<Triangulation, ReduceError> {
    let tuple = a.tuple();
    let m = tuple.len();
    let field = eps.field();
    for (s, x) in a.basis().iter().enumerate() {
        for y in &a.basis()[s..] {
            if !color_bracket(x, y, eps)?.matrix().is_zero() {
                return Err(ReduceError::NotAbelian);
            }
        }
    }
    let nil_error = || match mode {
        Mode::Nil => ReduceError::NotNil,
        Mode::Prenil => ReduceError::NotPreNil,
    };
    let degree = |x: &ColorMatrix| x.degree().expect("subalgebra bases are tagged");
    if a.basis().iter().any(|x| mode.requires_nilpotent(degree(x)) && !x.is_nilpotent()) {
        return Err(nil_error());
    }

    let mut flag: Vec<(Vec<Scalar>, Elem)> = Vec::with_capacity(m);
    let mut complement: Vec<(Vec<Scalar>, Elem)> = (0..m)
        .map(|s| {
            let mut v = vec![Scalar::ZERO; m];
            v[s] = Scalar::ONE;
            (v, tuple.degree(s))
        })
        .collect();

    for t in 0..m {
        let b = basis_matrix(field, m, &flag, &complement);
        let b_inv = b.inverse().expect("flag and complement stay independent");
        let rest: Vec<usize> = (t..m).collect();
        let mut kernel_ops = Vec::new();
        let mut eigen_ops = Vec::new();
        for x in a.basis() {
            let y = b_inv.mul(x.matrix()).mul(&b);
            let q = y.select(&rest, &rest);
            if q.is_zero() {
                continue;
            }
            if mode.requires_nilpotent(degree(x)) {
                kernel_ops.push(q);
            } else {
                eigen_ops.push(q);
            }
        }

        let n = m - t;
        let mut chosen = None;
        let mut split_failure = None;
        for d in tuple.group().elements() {
            let idx: Vec<usize> = (0..n).filter(|&s| complement[s].1 == d).collect();
            if idx.is_empty() {
                continue;
            }
            let Some(space) = joint_kernel(field, n, &idx, &kernel_ops) else { continue };
            let mut leaves = Vec::new();
            if let Err(deg) = eigen_leaves(field, &eigen_ops, space, Vec::new(), &mut leaves) {
                split_failure.get_or_insert(deg);
                if leaves.is_empty() {
                    continue;
                }
            }
            chosen = leaves.into_iter().min_by(|x, y| x.key.cmp(&y.key)).map(|c| (c.coords, d));
            if chosen.is_some() {
                break;
            }
        }
        let Some((coords, d)) = chosen else {
            return Err(match split_failure {
                Some(degree) => ReduceError::FieldNotSplit { p: field.p(), degree },
                None => nil_error(),
            });
        };

        let mut v = vec![Scalar::ZERO; m];
        for (c, (w, _)) in coords.iter().zip(&complement) {
            if !c.is_zero() {
                for (acc, &x) in v.iter_mut().zip(w) {
                    *acc = field.add(*acc, field.mul(*c, x));
                }
            }
        }
        let out = coords.iter().position(|c| !c.is_zero()).expect("eigenvectors are nonzero");
        complement.remove(out);
        flag.push((v, d));
    }

    let conjugator = basis_matrix(field, m, &flag, &complement);
    let inverse = conjugator.inverse().expect("flag is a basis");
    let new_tuple = GradedTuple::new(tuple.group().clone(), flag.iter().map(|(_, d)| *d).collect());
    let image_basis = a
        .basis()
        .iter()
        .map(|x| ColorMatrix::homogeneous(inverse.mul(x.matrix()).mul(&conjugator), degree(x), &new_tuple))
        .collect::<Result<Vec<_>, _>>()?;
    let image = GradedSubalgebra::new(new_tuple.clone(), image_basis)?;
    Ok(Triangulation { mode, conjugator, inverse, tuple: new_tuple, image })
}

fn basis_matrix(field: FieldSpec, m: usize, flag: &[(Vec<Scalar>, Elem)], rest: &[(Vec<Scalar>, Elem)]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = flag.iter().chain(rest).map(|(v, _)| v.clone()).collect();
    Matrix::from_columns(field, m, &cols)
}

/// Joint kernel of `ops` among vectors supported on `idx`, as an echelon basis in full coordinates.
fn joint_kernel(field: FieldSpec, n: usize, idx: &[usize], ops: &[Matrix]) -> Option<Echelon> {
    let all: Vec<usize> = (0..n).collect();
    let mut rows = Vec::new();
    for q in ops {
        rows.extend(q.select(&all, idx).to_rows());
    }
    let null = if rows.is_empty() {
        (0..idx.len())
            .map(|s| {
                let mut v = vec![Scalar::ZERO; idx.len()];
                v[s] = Scalar::ONE;
                v
            })
            .collect()
    } else {
        Matrix::from_rows(field, &rows).nullspace()
    };
    if null.is_empty() {
        return None;
    }
    let mut ech = Echelon::new(field, n);
    for v in null {
        let mut full = vec![Scalar::ZERO; n];
        for (&s, c) in idx.iter().zip(v) {
            full[s] = c;
        }
        ech.insert(&full);
    }
    Some(ech)
}

/// Splits `space` into common eigenspaces of `ops`, which must preserve it and commute.
///
/// Returns `Err(dim)` if some restricted action on a space of dimension `dim` has no eigenvalue.
fn eigen_leaves(
    field: FieldSpec,
    ops: &[Matrix],
    space: Echelon,
    lambdas: Vec<Scalar>,
    out: &mut Vec<Candidate>,
) -> Result<(), usize> {
    let Some((op, rest)) = ops.split_first() else {
        let first = space.basis()[0].clone();
        let support = first.iter().filter(|c| !c.is_zero()).count();
        out.push(Candidate { key: (space.pivots()[0], support, lambdas), coords: first });
        return Ok(());
    };
    let r = space.rank();
    // Matrix of the action in the echelon basis of the space.
    let cols: Vec<Vec<Scalar>> =
        space.basis().iter().map(|w| space.coordinates(&op.mul_vec(w)).expect("action preserves the space")).collect();
    let restricted = Matrix::from_columns(field, r, &cols);
    let mut roots = roots_in_field(&field, &restricted.charpoly()).roots;
    roots.dedup();
    if roots.is_empty() {
        return Err(r);
    }
    let mut failure = None;
    for lambda in roots {
        let shifted = restricted.sub(&Matrix::identity(field, r).scale(lambda));
        let mut eigen = Echelon::new(field, space.ambient_dim());
        for coeffs in shifted.nullspace() {
            let mut v = vec![Scalar::ZERO; space.ambient_dim()];
            for (c, w) in coeffs.iter().zip(space.basis()) {
                for (acc, &x) in v.iter_mut().zip(w) {
                    *acc = field.add(*acc, field.mul(*c, x));
                }
            }
            eigen.insert(&v);
        }
        let mut next = lambdas.clone();
        next.push(lambda);
        if let Err(d) = eigen_leaves(field, rest, eigen, next, out) {
            failure.get_or_insert(d);
        }
    }
    match failure {
        Some(d) if out.is_empty() => Err(d),
        _ => Ok(()),
    }
}
