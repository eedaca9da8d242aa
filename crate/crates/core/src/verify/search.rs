use crate::glcolor::{bracket_matrices, classify_subalgebra, ColorMatrix, GradedSubalgebra, GradedTuple, Mode};
use crate::grading::{BiCharacterTable, Elem};
use crate::linalg::{Echelon, Matrix};
use crate::random;
use crate::scalars::Scalar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Failed draws in one degree before that degree is given up for the current step.
const ATTEMPTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub dim: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub mode: Mode,
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
    pub bound: usize,
    pub best_dim_found: usize,
    pub violations: Vec<Violation>,
}

/// `⌊m²/4⌋`, plus one in pre-nil mode.
pub fn dimension_bound(m: usize, mode: Mode) -> usize {
    m * m / 4 + usize::from(mode == Mode::Prenil)
}

/// Grows random abelian subalgebras greedily and reports any that beat the bound.
///
/// Each trial permutes the tuple and stays inside the upper triangular
/// positions (strictly upper in nil mode) of the permuted frame, where
/// nilpotency of the required components is automatic. Every abelian
/// subalgebra of the right kind is conjugate into such a frame, so nothing is
/// lost by the restriction. Growth keeps the graded centralizer as a
/// subspace and draws random elements of it until no degree admits a new
/// one. Trial `t` uses `ChaCha8Rng::seed_from_u64(seed + t)`.
pub fn random_abelian_search(
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
    mode: Mode,
    trials: u64,
    seed: u64,
) -> SearchReport {
    assert_eq!(tuple.group(), eps.group(), "tuple and commutation factor use different groups");
    let m = tuple.len();
    let bound = dimension_bound(m, mode);
    let mut best = 0;
    let mut violations = Vec::new();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
        let a = grow(tuple, eps, mode, &mut rng);
        let dim = a.dim();
        best = best.max(dim);
        let flags = classify_subalgebra(&a, eps);
        let reason = if !flags.is_abelian {
            Some("not abelian".to_string())
        } else if !flags.satisfies(mode) {
            Some(format!("not {}", mode.as_str()))
        } else if dim > bound {
            Some(format!("dimension {dim} exceeds {bound}"))
        } else {
            None
        };
        if let Some(reason) = reason {
            violations.push(Violation { trial: t, dim, reason });
        }
    }
    SearchReport { mode, m, trials, seed, bound, best_dim_found: best, violations }
}

struct Component {
    gamma: Elem,
    positions: Vec<(usize, usize)>,
    /// Basis of the centralizer in coordinates over `positions`.
    centralizer: Vec<Vec<Scalar>>,
    chosen: Echelon,
}

/// One greedy run of the search: an abelian subalgebra satisfying `mode`,
/// triangular in a random reordering of the tuple.
pub(crate) fn grow<R: Rng + ?Sized>(
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
    mode: Mode,
    rng: &mut R,
) -> GradedSubalgebra {
    let mut perm: Vec<usize> = (0..tuple.len()).collect();
    perm.shuffle(rng);
    grow_in_frame(tuple, eps, mode, &perm, rng)
}

/// A greedily grown abelian subalgebra satisfying `mode` inside the upper
/// triangular matrices of `tuple` (strictly upper in nil mode), cut down to
/// a random number of its basis elements.
pub fn random_triangular_abelian<R: Rng + ?Sized>(
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
    mode: Mode,
    rng: &mut R,
) -> GradedSubalgebra {
    let identity: Vec<usize> = (0..tuple.len()).collect();
    let mut basis = grow_in_frame(tuple, eps, mode, &identity, rng).into_basis();
    basis.shuffle(rng);
    let keep = rng.gen_range(0..=basis.len());
    basis.truncate(keep);
    GradedSubalgebra::new(tuple.clone(), basis).expect("subset of a basis")
}

fn grow_in_frame<R: Rng + ?Sized>(
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
    mode: Mode,
    perm: &[usize],
    rng: &mut R,
) -> GradedSubalgebra {
    let f = eps.field();
    let m = tuple.len();
    let frame = GradedTuple::new(tuple.group().clone(), perm.iter().map(|&i| tuple.degree(i)).collect());
    let strict = mode == Mode::Nil;
    let mut comps: Vec<Component> = frame
        .group()
        .elements()
        .map(|gamma| {
            let positions: Vec<_> = frame
                .homogeneous_component(gamma)
                .into_iter()
                .filter(|&(i, j)| if strict { i < j } else { i <= j })
                .collect();
            let n = positions.len();
            let centralizer =
                (0..n).map(|s| (0..n).map(|r| if r == s { Scalar::ONE } else { Scalar::ZERO }).collect()).collect();
            Component { gamma, positions, centralizer, chosen: Echelon::new(f, n) }
        })
        .collect();
    let to_matrix = |c: &Component, v: &[Scalar]| {
        let mut x = Matrix::zeros(f, m, m);
        for (&(i, j), &s) in c.positions.iter().zip(v) {
            x.set(i, j, s);
        }
        x
    };
    let mut basis = Vec::new();
    loop {
        let mut open: Vec<usize> =
            (0..comps.len()).filter(|&g| comps[g].centralizer.len() > comps[g].chosen.rank()).collect();
        let mut added = None;
        while !open.is_empty() && added.is_none() {
            let pick = rng.gen_range(0..open.len());
            let g = open.swap_remove(pick);
            let c = &comps[g];
            let square_zero = eps.eps(c.gamma, c.gamma) != f.elem(1);
            for _ in 0..ATTEMPTS {
                let mut v = vec![Scalar::ZERO; c.positions.len()];
                // sparse combinations reach the rank-one elements of the extremal blocks far more often
                for b in &c.centralizer {
                    if rng.gen_bool(0.5) {
                        continue;
                    }
                    let s = random::nonzero_scalar(&f, rng);
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = f.add(*vi, f.mul(s, bi));
                    }
                }
                if c.chosen.contains(&v) {
                    continue;
                }
                let x = to_matrix(c, &v);
                if square_zero && !x.mul(&x).is_zero() {
                    continue;
                }
                added = Some((g, v, x));
                break;
            }
        }
        let Some((g, v, x)) = added else { break };
        let gamma = comps[g].gamma;
        comps[g].chosen.insert(&v);
        for c in comps.iter_mut() {
            if c.centralizer.is_empty() {
                continue;
            }
            let cols: Vec<Vec<Scalar>> = c
                .centralizer
                .iter()
                .map(|b| bracket_matrices(&to_matrix(c, b), c.gamma, &x, gamma, eps).as_slice().to_vec())
                .collect();
            let kernel = Matrix::from_columns(f, m * m, &cols).nullspace();
            let n = c.positions.len();
            c.centralizer = kernel
                .iter()
                .map(|k| {
                    let mut w = vec![Scalar::ZERO; n];
                    for (b, &s) in c.centralizer.iter().zip(k) {
                        for (wi, &bi) in w.iter_mut().zip(b) {
                            *wi = f.add(*wi, f.mul(s, bi));
                        }
                    }
                    w
                })
                .collect();
        }
        basis.push(ColorMatrix::from_parts(x, Some(gamma)));
    }
    // position `i` of the frame is position `perm[i]` of the tuple
    let basis = basis
        .into_iter()
        .map(|x| {
            let mut y = Matrix::zeros(f, m, m);
            for (i, j) in x.matrix().support() {
                y.set(perm[i], perm[j], x.matrix().get(i, j));
            }
            x.with_matrix(y)
        })
        .collect();
    GradedSubalgebra::new(tuple.clone(), basis).expect("independent homogeneous basis")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{cyclic_bicharacter, GradingGroup};
    use crate::scalars::FieldSpec;

    #[test]
    fn scalar_case_has_nothing_nil() {
        let eps = BiCharacterTable::trivial(GradingGroup::trivial(), FieldSpec::new(5, 1).unwrap());
        let r = random_abelian_search(&GradedTuple::trivial(1), &eps, Mode::Nil, 10, 1);
        assert_eq!((r.best_dim_found, r.bound), (0, 0));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn two_by_two_prenil_reaches_two() {
        let eps = BiCharacterTable::trivial(GradingGroup::trivial(), FieldSpec::new(5, 1).unwrap());
        let r = random_abelian_search(&GradedTuple::trivial(2), &eps, Mode::Prenil, 100, 7);
        assert_eq!(r.best_dim_found, 2);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn super_grading_stays_within_bound() {
        let f = FieldSpec::new(7, 1).unwrap();
        let eps = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        for mode in [Mode::Nil, Mode::Prenil] {
            let r = random_abelian_search(&GradedTuple::cyclic(2, &[0, 1, 0, 1]), &eps, mode, 200, 3);
            assert!(r.violations.is_empty(), "{:?}", r.violations);
            assert_eq!(r.best_dim_found, r.bound);
        }
    }

    #[test]
    fn reports_replay() {
        let f = FieldSpec::new(5, 1).unwrap();
        let eps = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        let t = GradedTuple::cyclic(2, &[0, 1, 1]);
        assert_eq!(
            random_abelian_search(&t, &eps, Mode::Nil, 20, 99),
            random_abelian_search(&t, &eps, Mode::Nil, 20, 99)
        );
    }
}
