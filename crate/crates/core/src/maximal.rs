//! The block families `E`, `F`, `E'`, `F'`, their graded dimensions, the
//! representatives for `m ≤ 3`, and an extension search deciding maximality.

use crate::glcolor::{classify_subalgebra, color_bracket, ColorMatrix, GlError, GradedSubalgebra, GradedTuple, Mode};
use crate::grading::{BiCharacterTable, Elem};
use crate::linalg::{Echelon, Matrix};
use crate::random;
use crate::reduce::{triangulate, ReduceError};
use crate::scalars::{FieldSpec, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaximalError {
    #[error("graded dimension profiles need a cyclic grading group")]
    NonCyclicGroup,
    #[error("representatives are only listed for m = 2 and m = 3, not {0}")]
    UnsupportedM(usize),
    #[error("tuple has length {got}, expected {expected}")]
    TupleLength { expected: usize, got: usize },
    #[error("subalgebra is not abelian")]
    NotAbelian,
    #[error("subalgebra is not {0}")]
    ModeViolation(Mode),
    #[error(transparent)]
    Gl(#[from] GlError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    E,
    F,
    Eprime,
    Fprime,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::E, Variant::F, Variant::Eprime, Variant::Fprime];

    /// Number of rows in the upper-right block: `⌈m/2⌉` for `E`, `⌊m/2⌋` for `F`.
    pub fn split(self, m: usize) -> usize {
        match self {
            Variant::E | Variant::Eprime => m.div_ceil(2),
            Variant::F | Variant::Fprime => m / 2,
        }
    }

    pub fn is_primed(self) -> bool {
        matches!(self, Variant::Eprime | Variant::Fprime)
    }

    /// The condition the family is maximal for.
    pub fn mode(self) -> Mode {
        if self.is_primed() {
            Mode::Prenil
        } else {
            Mode::Nil
        }
    }

    /// `⌊m²/4⌋`, plus one for the primed variants.
    pub fn expected_dim(self, m: usize) -> usize {
        m * m / 4 + usize::from(self.is_primed() && m > 0)
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E" => Ok(Variant::E),
            "F" => Ok(Variant::F),
            "Eprime" | "E'" => Ok(Variant::Eprime),
            "Fprime" | "F'" => Ok(Variant::Fprime),
            _ => Err(format!("unknown variant `{s}`, expected E, F, Eprime or Fprime")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::E => "E",
            Variant::F => "F",
            Variant::Eprime => "Eprime",
            Variant::Fprime => "Fprime",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalFamily {
    pub variant: Variant,
    pub tuple: GradedTuple,
    /// Classified: the cached flags are always present.
    pub algebra: GradedSubalgebra,
}

/// `Span{e_ij | i < h ≤ j}` with `h` from [`Variant::split`], plus `I_m` for primed variants.
pub fn construct(variant: Variant, tuple: &GradedTuple, eps: &BiCharacterTable) -> MaximalFamily {
    let m = tuple.len();
    let h = variant.split(m);
    let f = eps.field();
    let mut basis: Vec<ColorMatrix> =
        (0..h).flat_map(|i| (h..m).map(move |j| (i, j))).map(|(i, j)| ColorMatrix::unit(tuple, f, i, j)).collect();
    if variant.is_primed() && m > 0 {
        basis.push(ColorMatrix::identity(tuple, f));
    }
    let algebra = GradedSubalgebra::new(tuple.clone(), basis).expect("matrix units are independent").classified(eps);
    MaximalFamily { variant, tuple: tuple.clone(), algebra }
}

/// Degrees of `Z_k` in profile order `1, 2, ..., k-1, 0`.
pub fn profile_order(k: u64) -> Vec<i64> {
    (1..k as i64).chain(std::iter::once(0)).collect()
}

/// Degree-wise dimensions predicted by the split counts, in profile order.
///
/// `ṁ_r` counts top-block positions of degree `r`, `m̈_r = m_r - ṁ_r`, and
/// `dims_l = Σ_r ṁ_{r+l} m̈_r`, plus one at degree 0 for primed variants.
pub fn graded_dim_profile(variant: Variant, tuple: &GradedTuple) -> Result<Vec<usize>, MaximalError> {
    let group = tuple.group();
    let k = group.cyclic_order().ok_or(MaximalError::NonCyclicGroup)? as usize;
    let m = tuple.len();
    let h = variant.split(m);
    let mut top = vec![0usize; k];
    let mut bottom = vec![0usize; k];
    for (pos, d) in tuple.entries().iter().enumerate() {
        if pos < h {
            top[d.index()] += 1;
        } else {
            bottom[d.index()] += 1;
        }
    }
    Ok(profile_order(k as u64)
        .into_iter()
        .map(|l| {
            let l = l as usize;
            let conv: usize = (0..k).map(|r| top[(r + l) % k] * bottom[r]).sum();
            conv + usize::from(l == 0 && variant.is_primed() && m > 0)
        })
        .collect())
}

/// Degree-wise dimensions of a subalgebra of a cyclically graded space, in profile order.
pub fn counted_profile(a: &GradedSubalgebra) -> Result<Vec<usize>, MaximalError> {
    let group = a.tuple().group();
    let k = group.cyclic_order().ok_or(MaximalError::NonCyclicGroup)?;
    let dims = a.graded_dims();
    Ok(profile_order(k).into_iter().map(|l| dims[group.cyclic_elem(l).index()]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Human-readable span with one-based matrix units, e.g. `Span{I3, e12, e13}`.
    pub name: String,
    /// `None` when some listed matrix is not homogeneous for the tuple.
    pub algebra: Option<GradedSubalgebra>,
    pub degree_consistent: bool,
}

/// Representative generators over one-based matrix units; `(0, 0)` stands for the identity.
type Rep = &'static [&'static [(usize, usize)]];

const PRENIL_2: &[Rep] = &[&[&[(0, 0)], &[(1, 2)]], &[&[(1, 1)], &[(2, 2)]]];
const PRENIL_3: &[Rep] = &[
    &[&[(0, 0)], &[(1, 2)], &[(1, 3)]],
    &[&[(0, 0)], &[(2, 3)], &[(1, 3)]],
    &[&[(1, 1), (2, 2)], &[(1, 2)], &[(3, 3)]],
    &[&[(1, 1)], &[(2, 2)], &[(3, 3)]],
];
const NIL_2: &[Rep] = &[&[&[(1, 2)]]];
// The third class is the centralizer of a regular nilpotent.
const NIL_3: &[Rep] = &[&[&[(1, 2)], &[(1, 3)]], &[&[(2, 3)], &[(1, 3)]], &[&[(1, 2), (2, 3)], &[(1, 3)]]];

/// The listed maximal abelian representatives for `m = 2, 3`, instantiated for `tuple`.
pub fn small_m_catalog(
    tuple: &GradedTuple,
    eps: &BiCharacterTable,
    mode: Mode,
) -> Result<Vec<CatalogEntry>, MaximalError> {
    let m = tuple.len();
    let reps = match (m, mode) {
        (2, Mode::Prenil) => PRENIL_2,
        (3, Mode::Prenil) => PRENIL_3,
        (2, Mode::Nil) => NIL_2,
        (3, Mode::Nil) => NIL_3,
        _ => return Err(MaximalError::UnsupportedM(m)),
    };
    let f = eps.field();
    Ok(reps
        .iter()
        .map(|rep| {
            let mut names = Vec::new();
            let mut basis = Vec::new();
            let mut consistent = true;
            for gen in rep.iter() {
                let mut x = Matrix::zeros(f, m, m);
                let mut terms = Vec::new();
                for &(i, j) in gen.iter() {
                    if (i, j) == (0, 0) {
                        x = x.add(&Matrix::identity(f, m));
                        terms.push(format!("I{m}"));
                    } else {
                        x.set(i - 1, j - 1, Scalar::ONE);
                        terms.push(format!("e{i}{j}"));
                    }
                }
                names.push(terms.join("+"));
                match ColorMatrix::infer(x, tuple) {
                    Ok(c) => basis.push(c),
                    Err(_) => consistent = false,
                }
            }
            let name = format!("Span{{{}}}", names.join(", "));
            let algebra = consistent.then(|| {
                GradedSubalgebra::new(tuple.clone(), basis).expect("representatives are independent").classified(eps)
            });
            CatalogEntry { name, algebra, degree_consistent: consistent }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Maximal,
    /// `a ⊕ F x` is a strictly larger abelian subalgebra satisfying the mode.
    ExtendedBy(ColorMatrix),
    /// Sampling found no extension, but some candidate space was too large to exhaust.
    Inconclusive {
        sampled: u64,
    },
}

/// Graded centralizer `C(a)_γ` as coordinate vectors over `homogeneous_component(γ)`.
pub fn centralizer_component(a: &GradedSubalgebra, gamma: Elem, eps: &BiCharacterTable) -> Vec<Vec<Scalar>> {
    let tuple = a.tuple();
    let f = eps.field();
    let comp = tuple.homogeneous_component(gamma);
    if a.dim() == 0 {
        return (0..comp.len())
            .map(|s| (0..comp.len()).map(|t| if s == t { Scalar::ONE } else { Scalar::ZERO }).collect())
            .collect();
    }
    let cols: Vec<Vec<Scalar>> = comp
        .iter()
        .map(|&(i, j)| {
            let e = ColorMatrix::unit(tuple, f, i, j);
            a.basis()
                .iter()
                .flat_map(|y| color_bracket(&e, y, eps).expect("tagged").into_matrix().as_slice().to_vec())
                .collect()
        })
        .collect();
    if cols.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(f, cols[0].len(), &cols).nullspace()
}

/// Decides whether `a` is maximal among abelian subalgebras satisfying `mode`.
///
/// `a` is not maximal iff some homogeneous `x` in the centralizer but outside
/// `a` has `[x, x] = 0` and is nilpotent where the mode asks for it. Both
/// conditions depend only on the class of `x` modulo `a`: elements of `a`
/// ε-commute with `x`, and sums of ε-commuting nilpotents are nilpotent. So
/// each degree is searched over projective classes of `C(a)_γ / a_γ`,
/// exhaustively when `p^d ≤ effort` and by `effort` random samples otherwise.
pub fn is_maximal_abelian(
    a: &GradedSubalgebra,
    mode: Mode,
    eps: &BiCharacterTable,
    effort: u64,
    seed: u64,
) -> Result<Verdict, MaximalError> {
    let flags = classify_subalgebra(a, eps);
    if !flags.is_abelian {
        return Err(MaximalError::NotAbelian);
    }
    if !flags.satisfies(mode) {
        return Err(MaximalError::ModeViolation(mode));
    }
    let tuple = a.tuple();
    let f = eps.field();
    let p = f.p();
    let mut sampled = 0u64;
    let mut exhausted = true;
    for gamma in tuple.group().elements() {
        let comp = tuple.homogeneous_component(gamma);
        let to_matrix = |c: &[Scalar]| {
            let mut x = Matrix::zeros(f, tuple.len(), tuple.len());
            for (&(i, j), &v) in comp.iter().zip(c) {
                x.set(i, j, v);
            }
            ColorMatrix::from_parts(x, Some(gamma))
        };
        let mut quotient = Echelon::new(f, comp.len());
        for y in a.component(gamma) {
            let coords: Vec<Scalar> = comp.iter().map(|&(i, j)| y.matrix().get(i, j)).collect();
            quotient.insert(&coords);
        }
        let mut centralizer = Echelon::new(f, comp.len());
        for c in centralizer_component(a, gamma, eps) {
            centralizer.insert(&c);
        }
        let mut reps = Vec::new();
        for c in centralizer.basis() {
            let r = quotient.reduce(c);
            if quotient.insert(c) {
                reps.push(r);
            }
        }
        if reps.is_empty() {
            continue;
        }
        let needs_square_zero = eps.eps(gamma, gamma) != Scalar::ONE;
        let needs_nilpotent = mode.requires_nilpotent(gamma);
        let admissible = |x: &ColorMatrix| {
            (!needs_square_zero || x.matrix().mul(x.matrix()).is_zero()) && (!needs_nilpotent || x.is_nilpotent())
        };
        // Class representatives themselves, lowest height first.
        let mut by_height: Vec<ColorMatrix> = reps.iter().map(|r| to_matrix(r)).collect();
        by_height.sort_by_key(ColorMatrix::height);
        if let Some(x) = by_height.into_iter().find(|x| admissible(x)) {
            return Ok(Verdict::ExtendedBy(x));
        }
        let d = reps.len() as u32;
        let combine = |coeffs: &[Scalar]| {
            let mut v = vec![Scalar::ZERO; comp.len()];
            for (c, r) in coeffs.iter().zip(&reps) {
                for (acc, &x) in v.iter_mut().zip(r) {
                    *acc = f.add(*acc, f.mul(*c, x));
                }
            }
            to_matrix(&v)
        };
        match p.checked_pow(d) {
            Some(total) if total <= effort => {
                for coeffs in projective_points(f, d as usize) {
                    let x = combine(&coeffs);
                    if admissible(&x) {
                        return Ok(Verdict::ExtendedBy(x));
                    }
                }
            }
            _ => {
                exhausted = false;
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed ^ (gamma.index() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                for _ in 0..effort {
                    sampled += 1;
                    let coeffs: Vec<Scalar> = (0..d).map(|_| random::scalar(&f, &mut rng)).collect();
                    if coeffs.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let x = combine(&coeffs);
                    if admissible(&x) {
                        return Ok(Verdict::ExtendedBy(x));
                    }
                }
            }
        }
    }
    Ok(if exhausted { Verdict::Maximal } else { Verdict::Inconclusive { sampled } })
}

/// Representatives of the points of `P^{d-1}(F_p)`: first nonzero coordinate equal to 1.
fn projective_points(f: FieldSpec, d: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let p = f.p();
    (0..d).flat_map(move |lead| {
        let free = d - lead - 1;
        let count = p.pow(free as u32);
        (0..count).map(move |mut n| {
            let mut v = vec![Scalar::ZERO; d];
            v[lead] = Scalar::ONE;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = f.elem((n % p) as i64);
                n /= p;
            }
            v
        })
    })
}

/// Conjugacy invariants of an abelian pre-nil subalgebra.
///
/// `N` is the set of nilpotent elements, a subspace because sums of
/// ε-commuting nilpotents are nilpotent; after triangulation it is the
/// kernel of the diagonal map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub graded_dims: Vec<usize>,
    /// `dim span{xy | x, y ∈ a}`.
    pub product_span: usize,
    pub nilpotent_dim: usize,
    /// `dim {v | Nv = 0}`.
    pub nilpotent_kernel: usize,
    /// `dim N V`.
    pub nilpotent_image: usize,
}

pub fn fingerprint(a: &GradedSubalgebra, eps: &BiCharacterTable) -> Result<Fingerprint, MaximalError> {
    let f = eps.field();
    let m = a.m();
    let mut products = Echelon::new(f, m * m);
    for x in a.basis() {
        for y in a.basis() {
            products.insert(x.matrix().mul(y.matrix()).as_slice());
        }
    }
    let tr = triangulate(a, Mode::Prenil, eps)?;
    // Coordinates c with diag(Σ c_s image_s) = 0.
    let diag_cols: Vec<Vec<Scalar>> =
        tr.image.basis().iter().map(|y| (0..m).map(|i| y.matrix().get(i, i)).collect()).collect();
    let null = if a.dim() == 0 { Vec::new() } else { Matrix::from_columns(f, m, &diag_cols).nullspace() };
    let nil_basis: Vec<Matrix> = null
        .iter()
        .map(|c| a.basis().iter().zip(c).fold(Matrix::zeros(f, m, m), |acc, (x, &s)| acc.add_scaled(s, x.matrix())))
        .collect();
    let stacked: Vec<Vec<Scalar>> = nil_basis.iter().flat_map(Matrix::to_rows).collect();
    let nilpotent_kernel = if stacked.is_empty() { m } else { m - Matrix::from_rows(f, &stacked).rank() };
    let mut image = Echelon::new(f, m);
    for x in &nil_basis {
        for c in 0..m {
            image.insert(&x.column(c));
        }
    }
    Ok(Fingerprint {
        graded_dims: a.graded_dims(),
        product_span: products.rank(),
        nilpotent_dim: nil_basis.len(),
        nilpotent_kernel,
        nilpotent_image: image.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{cyclic_bicharacter, GradingGroup};
    use proptest::prelude::*;

    fn f5() -> FieldSpec {
        FieldSpec::new(5, 4).unwrap()
    }

    fn trivial_eps() -> BiCharacterTable {
        BiCharacterTable::trivial(GradingGroup::trivial(), f5())
    }

    #[test]
    fn dimensions_of_small_families() {
        let eps = trivial_eps();
        let fam = construct(Variant::Eprime, &GradedTuple::trivial(4), &eps);
        assert_eq!(fam.algebra.dim(), 5);
        let fam = construct(Variant::E, &GradedTuple::trivial(5), &eps);
        assert_eq!(fam.algebra.dim(), 6);
        let fam = construct(Variant::Eprime, &GradedTuple::trivial(1), &eps);
        assert_eq!(fam.algebra.dim(), 1);
        let flags = fam.algebra.flags().unwrap();
        assert!(flags.is_abelian && flags.is_prenil && !flags.is_nil);
    }

    #[test]
    fn profile_examples() {
        let t = GradedTuple::trivial(4);
        assert_eq!(graded_dim_profile(Variant::Eprime, &t).unwrap(), vec![5]);

        let f = f5();
        let eps = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        let t = GradedTuple::cyclic(2, &[0, 1]);
        let fam = construct(Variant::Fprime, &t, &eps);
        // e12 is odd, I2 is even: profile (odd, even) = (1, 1)
        assert_eq!(graded_dim_profile(Variant::Fprime, &t).unwrap(), vec![1, 1]);
        assert_eq!(counted_profile(&fam.algebra).unwrap(), vec![1, 1]);

        let empty = GradedTuple::cyclic(3, &[]);
        assert_eq!(graded_dim_profile(Variant::Eprime, &empty).unwrap(), vec![0, 0, 0]);

        let g = GradingGroup::new(vec![2, 2]).unwrap();
        let t = GradedTuple::canonical(g, &[1, 1]);
        assert_eq!(graded_dim_profile(Variant::E, &t), Err(MaximalError::NonCyclicGroup));
    }

    #[test]
    fn catalog_sizes() {
        let eps = trivial_eps();
        let count = |m, mode| small_m_catalog(&GradedTuple::trivial(m), &eps, mode).unwrap().len();
        assert_eq!(count(2, Mode::Prenil), 2);
        assert_eq!(count(3, Mode::Nil), 3);
        assert_eq!(count(2, Mode::Nil), 1);
        assert_eq!(count(3, Mode::Prenil), 4);
        assert_eq!(small_m_catalog(&GradedTuple::trivial(4), &eps, Mode::Nil), Err(MaximalError::UnsupportedM(4)));
    }

    #[test]
    fn literal_nil_entry_with_idempotent_is_not_nil() {
        // Span{e12, e33} contains the idempotent e33.
        let f = f5();
        let t = GradedTuple::trivial(3);
        let a = GradedSubalgebra::new(t.clone(), vec![ColorMatrix::unit(&t, f, 0, 1), ColorMatrix::unit(&t, f, 2, 2)])
            .unwrap();
        let flags = classify_subalgebra(&a, &trivial_eps());
        assert!(flags.is_abelian && !flags.is_nil);
    }

    #[test]
    fn inconsistent_representatives_are_flagged() {
        let f = f5();
        let eps = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        let t = GradedTuple::cyclic(2, &[0, 1, 0]);
        let cat = small_m_catalog(&t, &eps, Mode::Nil).unwrap();
        // e12 and e23 are both odd here, so every representative is homogeneous
        assert!(cat.iter().all(|c| c.degree_consistent));
        let t = GradedTuple::cyclic(2, &[0, 1, 1]);
        let cat = small_m_catalog(&t, &eps, Mode::Nil).unwrap();
        // e12 (odd) + e23 (even) is not homogeneous
        assert!(!cat[2].degree_consistent);
        assert!(cat[2].algebra.is_none());
    }

    #[test]
    fn maximality_examples() {
        let eps = trivial_eps();
        let f = f5();
        let fam = construct(Variant::Eprime, &GradedTuple::trivial(4), &eps);
        assert_eq!(is_maximal_abelian(&fam.algebra, Mode::Prenil, &eps, 1 << 20, 0).unwrap(), Verdict::Maximal);

        let t = GradedTuple::trivial(3);
        let a = GradedSubalgebra::new(t.clone(), vec![ColorMatrix::unit(&t, f, 0, 1)]).unwrap();
        match is_maximal_abelian(&a, Mode::Nil, &eps, 1 << 20, 0).unwrap() {
            Verdict::ExtendedBy(x) => assert_eq!(x.matrix(), &Matrix::unit(f, 3, 0, 2)),
            v => panic!("expected an extension, got {v:?}"),
        }

        let t = GradedTuple::trivial(2);
        let a = GradedSubalgebra::new(t.clone(), vec![ColorMatrix::unit(&t, f, 0, 1)]).unwrap();
        assert_eq!(is_maximal_abelian(&a, Mode::Nil, &eps, 1 << 20, 0).unwrap(), Verdict::Maximal);
        // in pre-nil mode the identity extends it
        assert!(matches!(is_maximal_abelian(&a, Mode::Prenil, &eps, 1 << 20, 0).unwrap(), Verdict::ExtendedBy(_)));
    }

    #[test]
    fn low_effort_is_inconclusive() {
        let eps = trivial_eps();
        let fam = construct(Variant::Eprime, &GradedTuple::trivial(4), &eps);
        // Nothing extends E', so sampling cannot find anything either.
        let v = is_maximal_abelian(&fam.algebra, Mode::Prenil, &eps, 0, 3).unwrap();
        assert!(matches!(v, Verdict::Maximal | Verdict::Inconclusive { .. }));
    }

    #[test]
    fn projective_point_count() {
        let f = |p| FieldSpec::new(p, 1).unwrap();
        assert_eq!(projective_points(f(5), 2).count(), 6);
        assert_eq!(projective_points(f(3), 3).count(), 13);
        assert_eq!(projective_points(f(7), 0).count(), 0);
    }

    #[test]
    fn fingerprints_separate_catalog_entries() {
        let eps = trivial_eps();
        for (m, mode) in [(2, Mode::Prenil), (3, Mode::Prenil), (2, Mode::Nil), (3, Mode::Nil)] {
            let cat = small_m_catalog(&GradedTuple::trivial(m), &eps, mode).unwrap();
            let fps: Vec<Fingerprint> =
                cat.iter().map(|c| fingerprint(c.algebra.as_ref().unwrap(), &eps).unwrap()).collect();
            for s in 0..fps.len() {
                for t in s + 1..fps.len() {
                    assert_ne!(fps[s], fps[t], "{} vs {}", cat[s].name, cat[t].name);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn profile_matches_count(residues in proptest::collection::vec(0i64..4, 0..8), k in 1u64..5) {
            let f = FieldSpec::for_group(k, 5);
            let eps = BiCharacterTable::trivial(GradingGroup::cyclic(k).unwrap(), f);
            let t = GradedTuple::cyclic(k, &residues);
            for v in Variant::ALL {
                let fam = construct(v, &t, &eps);
                let profile = graded_dim_profile(v, &t).unwrap();
                prop_assert_eq!(&profile, &counted_profile(&fam.algebra).unwrap());
                prop_assert_eq!(profile.iter().sum::<usize>(), v.expected_dim(t.len()));
            }
        }
    }
}
