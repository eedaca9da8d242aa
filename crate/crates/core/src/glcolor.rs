//! The matrix model `gl^Φ(m_1, ..., m_k)` of the general linear Lie color algebra.
//!
//! A [`GradedTuple`] `Φ` assigns a group degree to each basis position, which
//! makes the matrix unit `e_ij` homogeneous of degree `Φ_i - Φ_j`. All index
//! pairs are zero-based.

use crate::grading::{BiCharacterTable, Elem, GradingGroup};
use crate::linalg::{Echelon, Matrix};
use crate::random;
use crate::scalars::{FieldSpec, Scalar};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlError {
    #[error("matrix carries no degree tag")]
    InhomogeneousInput,
    #[error("entry ({i}, {j}) is nonzero but has the wrong degree for the tuple")]
    DegreeMismatch { i: usize, j: usize },
    #[error("matrix is not homogeneous for the tuple")]
    NotHomogeneous,
    #[error("expected {expected}x{expected} matrices, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("grading group of the commutation factor does not match the tuple")]
    GroupMismatch,
    #[error("basis elements are linearly dependent")]
    LinearlyDependent,
    #[error("field of the matrix does not match the commutation factor")]
    FieldMismatch,
}

/// Which nilpotency condition a subalgebra is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Homogeneous elements of nonzero degree are nilpotent.
    Prenil,
    /// Every element is nilpotent.
    Nil,
}

impl Mode {
    /// Whether homogeneous elements of degree `d` must be nilpotent.
    pub fn requires_nilpotent(self, d: Elem) -> bool {
        match self {
            Mode::Nil => true,
            Mode::Prenil => d != Elem::ZERO,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Prenil => "prenil",
            Mode::Nil => "nil",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prenil" | "pre-nil" => Ok(Mode::Prenil),
            "nil" => Ok(Mode::Nil),
            _ => Err(format!("unknown mode `{s}`, expected prenil or nil")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An `(m_1, ..., m_k)`-tuple: the degree of each basis position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedTuple {
    group: GradingGroup,
    entries: Vec<Elem>,
}

impl GradedTuple {
    pub fn new(group: GradingGroup, entries: Vec<Elem>) -> Self {
        assert!(entries.iter().all(|e| e.index() < group.order()), "element outside the group");
        GradedTuple { group, entries }
    }

    /// The sorted tuple of `gl(m_1, ..., m_k)`: `counts[l]` copies of the `l`-th element, in order.
    pub fn canonical(group: GradingGroup, counts: &[usize]) -> Self {
        assert!(counts.len() <= group.order());
        let entries = group.elements().zip(counts).flat_map(|(e, &c)| std::iter::repeat_n(e, c)).collect();
        GradedTuple { group, entries }
    }

    /// Trivially graded tuple of length `m`.
    pub fn trivial(m: usize) -> Self {
        GradedTuple::canonical(GradingGroup::trivial(), &[m])
    }

    /// Tuple over `Z_k` from residues.
    pub fn cyclic(k: u64, residues: &[i64]) -> Self {
        let group = GradingGroup::cyclic(k).expect("valid cyclic order");
        let entries = residues.iter().map(|&r| group.cyclic_elem(r)).collect();
        GradedTuple { group, entries }
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn degree(&self, i: usize) -> Elem {
        self.entries[i]
    }

    /// Degree of the matrix unit `e_ij`.
    #[inline]
    pub fn pair_degree(&self, i: usize, j: usize) -> Elem {
        self.group.sub(self.entries[i], self.entries[j])
    }

    /// The Γ-dimension `(m_1, ..., m_k)`, indexed by element.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.group.order()];
        for e in &self.entries {
            c[e.index()] += 1;
        }
        c
    }

    /// Index pairs spanning `gl^Φ_γ`, in height order.
    pub fn homogeneous_component(&self, gamma: Elem) -> Vec<(usize, usize)> {
        let m = self.len();
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| self.pair_degree(i, j) == gamma).collect()
    }

    /// Tuple with one position removed.
    pub fn without(&self, pos: usize) -> GradedTuple {
        let mut entries = self.entries.clone();
        entries.remove(pos);
        GradedTuple { group: self.group.clone(), entries }
    }
}

/// Position of the first nonzero entry in row-major order; `Infinite` for the zero matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    At(usize, usize),
    Infinite,
}

pub fn height(x: &Matrix) -> Height {
    x.support().next().map_or(Height::Infinite, |(i, j)| Height::At(i, j))
}

/// A square matrix, optionally tagged with a homogeneous degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorMatrix {
    matrix: Matrix,
    degree: Option<Elem>,
}

impl ColorMatrix {
    /// Tags `matrix` with `degree` after checking every nonzero entry against the tuple.
    pub fn homogeneous(matrix: Matrix, degree: Elem, tuple: &GradedTuple) -> Result<Self, GlError> {
        check_shape(&matrix, tuple.len())?;
        if let Some((i, j)) = matrix.support().find(|&(i, j)| tuple.pair_degree(i, j) != degree) {
            return Err(GlError::DegreeMismatch { i, j });
        }
        Ok(ColorMatrix { matrix, degree: Some(degree) })
    }

    pub fn untagged(matrix: Matrix) -> Self {
        ColorMatrix { matrix, degree: None }
    }

    /// Tags the matrix with the degree its entries determine. The zero matrix gets degree 0.
    pub fn infer(matrix: Matrix, tuple: &GradedTuple) -> Result<Self, GlError> {
        check_shape(&matrix, tuple.len())?;
        let degree = infer_degree(&matrix, tuple).ok_or(GlError::NotHomogeneous)?;
        Ok(ColorMatrix { matrix, degree: Some(degree) })
    }

    pub fn unit(tuple: &GradedTuple, field: FieldSpec, i: usize, j: usize) -> Self {
        ColorMatrix { matrix: Matrix::unit(field, tuple.len(), i, j), degree: Some(tuple.pair_degree(i, j)) }
    }

    pub fn identity(tuple: &GradedTuple, field: FieldSpec) -> Self {
        ColorMatrix { matrix: Matrix::identity(field, tuple.len()), degree: Some(tuple.group().zero()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn degree(&self) -> Option<Elem> {
        self.degree
    }

    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn height(&self) -> Height {
        height(&self.matrix)
    }

    /// Same degree, new entries. The caller guarantees homogeneity.
    pub(crate) fn with_matrix(&self, matrix: Matrix) -> ColorMatrix {
        ColorMatrix { matrix, degree: self.degree }
    }

    pub(crate) fn from_parts(matrix: Matrix, degree: Option<Elem>) -> ColorMatrix {
        ColorMatrix { matrix, degree }
    }

    pub fn is_consistent_with(&self, tuple: &GradedTuple) -> bool {
        self.m() == tuple.len()
            && self.degree.is_some_and(|d| self.matrix.support().all(|(i, j)| tuple.pair_degree(i, j) == d))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.matrix.is_nilpotent()
    }

    pub fn scale(&self, c: Scalar) -> ColorMatrix {
        self.with_matrix(self.matrix.scale(c))
    }
}

fn check_shape(m: &Matrix, expected: usize) -> Result<(), GlError> {
    if m.rows() != expected || m.cols() != expected {
        return Err(GlError::Shape { expected, rows: m.rows(), cols: m.cols() });
    }
    Ok(())
}

/// Degree of a homogeneous matrix; `None` if the entries disagree. Zero gets degree 0.
pub fn infer_degree(x: &Matrix, tuple: &GradedTuple) -> Option<Elem> {
    let mut support = x.support();
    let Some((i, j)) = support.next() else {
        return Some(tuple.group().zero());
    };
    let d = tuple.pair_degree(i, j);
    support.all(|(a, b)| tuple.pair_degree(a, b) == d).then_some(d)
}

/// Splits a matrix into its nonzero homogeneous components, ordered by degree.
pub fn split_homogeneous(x: &Matrix, tuple: &GradedTuple) -> Vec<ColorMatrix> {
    let mut parts: Vec<Option<Matrix>> = vec![None; tuple.group().order()];
    for (i, j) in x.support() {
        let d = tuple.pair_degree(i, j).index();
        let part = parts[d].get_or_insert_with(|| Matrix::zeros(x.field(), x.rows(), x.cols()));
        part.set(i, j, x.get(i, j));
    }
    tuple
        .group()
        .elements()
        .zip(parts)
        .filter_map(|(d, p)| p.map(|matrix| ColorMatrix { matrix, degree: Some(d) }))
        .collect()
}

/// `xy - ε(|x|,|y|) yx` on raw matrices.
pub(crate) fn bracket_matrices(x: &Matrix, dx: Elem, y: &Matrix, dy: Elem, eps: &BiCharacterTable) -> Matrix {
    let xy = x.mul(y);
    let yx = y.mul(x);
    let f = eps.field();
    xy.add_scaled(f.neg(eps.eps(dx, dy)), &yx)
}

/// The color bracket `[x, y] = xy - ε(|x|, |y|) yx`, homogeneous of degree `|x| + |y|`.
pub fn color_bracket(x: &ColorMatrix, y: &ColorMatrix, eps: &BiCharacterTable) -> Result<ColorMatrix, GlError> {
    let (Some(dx), Some(dy)) = (x.degree, y.degree) else {
        return Err(GlError::InhomogeneousInput);
    };
    if x.matrix.field() != eps.field() || y.matrix.field() != eps.field() {
        return Err(GlError::FieldMismatch);
    }
    check_shape(&y.matrix, x.m())?;
    Ok(ColorMatrix {
        matrix: bracket_matrices(&x.matrix, dx, &y.matrix, dy, eps),
        degree: Some(eps.group().add(dx, dy)),
    })
}

pub fn is_nilpotent(x: &ColorMatrix) -> bool {
    x.is_nilpotent()
}

/// Whether the associative algebra generated by `gens` is nilpotent, decided by
/// building the flag `W_{t+1} = {v : g v ∈ W_t for every generator g}` from `W_0 = 0`.
pub fn generates_nilpotent_algebra(gens: &[&Matrix], m: usize) -> bool {
    if gens.is_empty() || m == 0 {
        return true;
    }
    let field = gens[0].field();
    // Rows of `annihilator` cut out W_t: W_t = {v : annihilator v = 0}.
    let mut annihilator = Matrix::identity(field, m);
    let mut dim = 0;
    loop {
        if annihilator.rows() == 0 {
            return true;
        }
        let mut stacked: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            let prod = annihilator.mul(g);
            stacked.extend(prod.to_rows());
        }
        let system = Matrix::from_rows(field, &stacked);
        let next = system.nullspace();
        if next.len() == dim {
            return dim == m;
        }
        dim = next.len();
        if dim == m {
            return true;
        }
        let basis = Matrix::from_rows(field, &next);
        // Left annihilator of W: the nullspace of basis as a row space.
        let ann = basis.nullspace();
        annihilator = Matrix::from_rows(field, &ann);
        if ann.is_empty() {
            return true;
        }
    }
}

/// How a flag in [`SubalgebraFlags`] was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    /// No counterexample among the basis and sampled combinations.
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraFlags {
    pub is_closed: bool,
    pub is_abelian: bool,
    pub is_nil: bool,
    pub is_prenil: bool,
    pub nil_provenance: Provenance,
    pub prenil_provenance: Provenance,
}

impl SubalgebraFlags {
    /// Abelian and satisfying the nilpotency condition of `mode`.
    pub fn satisfies(&self, mode: Mode) -> bool {
        self.is_abelian
            && match mode {
                Mode::Nil => self.is_nil,
                Mode::Prenil => self.is_prenil,
            }
    }
}

/// A subspace of `gl^Φ` presented by a linearly independent homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubalgebra {
    tuple: GradedTuple,
    basis: Vec<ColorMatrix>,
    flags: Option<SubalgebraFlags>,
}

impl GradedSubalgebra {
    pub fn new(tuple: GradedTuple, basis: Vec<ColorMatrix>) -> Result<Self, GlError> {
        let m = tuple.len();
        let mut field = None;
        for x in &basis {
            check_shape(&x.matrix, m)?;
            let Some(d) = x.degree else {
                return Err(GlError::InhomogeneousInput);
            };
            if let Some((i, j)) = x.matrix.support().find(|&(i, j)| tuple.pair_degree(i, j) != d) {
                return Err(GlError::DegreeMismatch { i, j });
            }
            if *field.get_or_insert(x.matrix.field()) != x.matrix.field() {
                return Err(GlError::FieldMismatch);
            }
        }
        if let Some(f) = field {
            let mut ech = Echelon::new(f, m * m);
            for x in &basis {
                if !ech.insert(x.matrix.as_slice()) {
                    return Err(GlError::LinearlyDependent);
                }
            }
        }
        Ok(GradedSubalgebra { tuple, basis, flags: None })
    }

    pub fn zero(tuple: GradedTuple) -> Self {
        GradedSubalgebra { tuple, basis: Vec::new(), flags: None }
    }

    /// Keeps an independent subset of `spanning`, in order.
    pub fn from_spanning(tuple: GradedTuple, spanning: Vec<ColorMatrix>) -> Result<Self, GlError> {
        let m = tuple.len();
        let mut kept = Vec::new();
        if let Some(f) = spanning.first().map(|x| x.matrix.field()) {
            let mut ech = Echelon::new(f, m * m);
            for x in spanning {
                check_shape(&x.matrix, m)?;
                if ech.insert(x.matrix.as_slice()) {
                    kept.push(x);
                }
            }
        }
        GradedSubalgebra::new(tuple, kept)
    }

    pub fn tuple(&self) -> &GradedTuple {
        &self.tuple
    }

    pub fn basis(&self) -> &[ColorMatrix] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<ColorMatrix> {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        self.tuple.len()
    }

    pub fn flags(&self) -> Option<SubalgebraFlags> {
        self.flags
    }

    /// Classifies and caches the result.
    pub fn classified(mut self, eps: &BiCharacterTable) -> Self {
        self.flags = Some(classify_subalgebra(&self, eps));
        self
    }

    /// `ht(a)`: the minimum height over the basis, which equals the minimum over the span.
    pub fn height(&self) -> Height {
        self.basis.iter().map(ColorMatrix::height).min().unwrap_or(Height::Infinite)
    }

    /// Basis elements of degree `gamma`; these span `a_γ`.
    pub fn component(&self, gamma: Elem) -> Vec<&ColorMatrix> {
        self.basis.iter().filter(|x| x.degree == Some(gamma)).collect()
    }

    /// Dimension of each homogeneous component, indexed by element.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.tuple.group().order()];
        for x in &self.basis {
            d[x.degree.expect("basis is tagged").index()] += 1;
        }
        d
    }

    pub fn span(&self) -> Option<Echelon> {
        let f = self.basis.first()?.matrix.field();
        let m = self.m();
        let mut ech = Echelon::new(f, m * m);
        for x in &self.basis {
            ech.insert(x.matrix.as_slice());
        }
        Some(ech)
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        match self.span() {
            Some(e) => e.contains(x.as_slice()),
            None => x.is_zero(),
        }
    }
}

/// Exact closure and commutativity, and nil/pre-nil status.
///
/// For closed inputs nilness is decided exactly: every element of a closed
/// subalgebra is nilpotent iff the associative algebra generated by its
/// homogeneous elements is nilpotent. For abelian inputs pre-nilness is exact
/// as well, because a sum of ε-commuting nilpotents is nilpotent. Anything
/// else falls back to sampling, recorded in the provenance fields.
pub fn classify_subalgebra(a: &GradedSubalgebra, eps: &BiCharacterTable) -> SubalgebraFlags {
    assert_eq!(a.tuple.group(), eps.group(), "tuple and commutation factor use different groups");
    let span = a.span();
    let mut is_closed = true;
    let mut is_abelian = true;
    for (s, x) in a.basis.iter().enumerate() {
        for y in &a.basis[s..] {
            let br = color_bracket(x, y, eps).expect("basis is homogeneous");
            if br.matrix.is_zero() {
                continue;
            }
            is_abelian = false;
            if !span.as_ref().is_some_and(|e| e.contains(br.matrix.as_slice())) {
                is_closed = false;
            }
            // [y, x] = -ε(|y|,|x|)[x, y], so checking s <= t covers both orders.
        }
    }
    let m = a.m();
    let zero = a.tuple.group().zero();

    let all: Vec<&Matrix> = a.basis.iter().map(|x| &x.matrix).collect();
    let (is_nil, nil_provenance) = if is_abelian {
        (all.iter().all(|x| x.is_nilpotent()), Provenance::Exact)
    } else if generates_nilpotent_algebra(&all, m) {
        (true, Provenance::Exact)
    } else if is_closed {
        (false, Provenance::Exact)
    } else {
        sampled_nilpotency(&all, m)
    };

    let mut is_prenil = true;
    let mut prenil_provenance = Provenance::Exact;
    for gamma in a.tuple.group().elements().filter(|&g| g != zero) {
        let part: Vec<&Matrix> = a.component(gamma).into_iter().map(|x| &x.matrix).collect();
        if part.is_empty() {
            continue;
        }
        if part.iter().any(|x| !x.is_nilpotent()) {
            is_prenil = false;
            prenil_provenance = Provenance::Exact;
            break;
        }
        if is_abelian || generates_nilpotent_algebra(&part, m) {
            continue;
        }
        let (ok, prov) = sampled_nilpotency(&part, m);
        if !ok {
            is_prenil = false;
            prenil_provenance = Provenance::Exact;
            break;
        }
        prenil_provenance = prov;
    }

    SubalgebraFlags { is_closed, is_abelian, is_nil, is_prenil, nil_provenance, prenil_provenance }
}

const NIL_SAMPLES: usize = 64;

fn sampled_nilpotency(gens: &[&Matrix], m: usize) -> (bool, Provenance) {
    if gens.iter().any(|x| !x.is_nilpotent()) {
        return (false, Provenance::Exact);
    }
    let field = gens[0].field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e11);
    for _ in 0..NIL_SAMPLES {
        let mut x = Matrix::zeros(field, m, m);
        for g in gens {
            x = x.add_scaled(random::scalar(&field, &mut rng), g);
        }
        if !x.is_nilpotent() {
            return (false, Provenance::Exact);
        }
    }
    (true, Provenance::Probabilistic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorIdentity {
    Antisymmetry,
    Jacobi,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub identity: ColorIdentity,
    pub trial: usize,
    /// Residues of the degrees of the sampled elements.
    pub degrees: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub trials: usize,
    pub passed: bool,
    pub failure: Option<AxiomFailure>,
}

/// Samples homogeneous triples of `gl^Φ` and checks ε-antisymmetry and the ε-Jacobi identity.
pub fn axioms_check<R: Rng + ?Sized>(
    eps: &BiCharacterTable,
    tuple: &GradedTuple,
    trials: usize,
    rng: &mut R,
) -> AxiomReport {
    let g = tuple.group();
    let f = eps.field();
    let res = |e: Elem| g.residues(e);
    for trial in 0..trials {
        let xs: Vec<ColorMatrix> = (0..3)
            .map(|_| {
                let d = random::group_elem(g, rng);
                random::homogeneous(tuple, f, d, rng)
            })
            .collect();
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        let (dx, dy, dz) = (x.degree.unwrap(), y.degree.unwrap(), z.degree.unwrap());
        let br = |a: &ColorMatrix, b: &ColorMatrix| color_bracket(a, b, eps).expect("tagged inputs");

        let anti = br(x, y).matrix.add_scaled(eps.eps(dx, dy), &br(y, x).matrix);
        if !anti.is_zero() {
            return AxiomReport {
                trials: trial + 1,
                passed: false,
                failure: Some(AxiomFailure {
                    identity: ColorIdentity::Antisymmetry,
                    trial,
                    degrees: vec![res(dx), res(dy)],
                }),
            };
        }
        let jac = br(x, &br(y, z))
            .matrix
            .scale(eps.eps(dz, dx))
            .add_scaled(eps.eps(dx, dy), &br(y, &br(z, x)).matrix)
            .add_scaled(eps.eps(dy, dz), &br(z, &br(x, y)).matrix);
        if !jac.is_zero() {
            return AxiomReport {
                trials: trial + 1,
                passed: false,
                failure: Some(AxiomFailure {
                    identity: ColorIdentity::Jacobi,
                    trial,
                    degrees: vec![res(dx), res(dy), res(dz)],
                }),
            };
        }
        let _ = f;
    }
    AxiomReport { trials, passed: true, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{cyclic_bicharacter, GradingGroup};
    use proptest::prelude::*;

    fn f5() -> FieldSpec {
        FieldSpec::new(5, 4).unwrap()
    }

    fn super_eps() -> BiCharacterTable {
        let f = f5();
        cyclic_bicharacter(2, f.minus_one(), f).unwrap()
    }

    fn trivial_eps() -> BiCharacterTable {
        BiCharacterTable::trivial(GradingGroup::trivial(), f5())
    }

    #[test]
    fn odd_units_anticommute_to_identity() {
        let eps = super_eps();
        let t = GradedTuple::cyclic(2, &[0, 1]);
        let e12 = ColorMatrix::unit(&t, f5(), 0, 1);
        let e21 = ColorMatrix::unit(&t, f5(), 1, 0);
        let br = color_bracket(&e12, &e21, &eps).unwrap();
        assert_eq!(br.matrix(), &Matrix::identity(f5(), 2));
        assert_eq!(br.degree(), Some(t.group().zero()));
    }

    #[test]
    fn trivial_grading_gives_commutator() {
        let eps = trivial_eps();
        let t = GradedTuple::trivial(3);
        let e12 = ColorMatrix::unit(&t, f5(), 0, 1);
        let e23 = ColorMatrix::unit(&t, f5(), 1, 2);
        let br = color_bracket(&e12, &e23, &eps).unwrap();
        assert_eq!(br.matrix(), &Matrix::unit(f5(), 3, 0, 2));
        // [x, x] vanishes whenever ε(|x|,|x|) = 1
        let x = ColorMatrix::homogeneous(
            Matrix::from_i64(f5(), &[&[1, 2, 0], &[0, 3, 4], &[1, 0, 0]]),
            t.group().zero(),
            &t,
        )
        .unwrap();
        assert!(color_bracket(&x, &x, &eps).unwrap().matrix().is_zero());
    }

    #[test]
    fn bracket_needs_degrees() {
        let eps = trivial_eps();
        let x = ColorMatrix::untagged(Matrix::identity(f5(), 2));
        assert_eq!(color_bracket(&x, &x, &eps), Err(GlError::InhomogeneousInput));
    }

    #[test]
    fn homogeneous_components() {
        let t = GradedTuple::cyclic(2, &[0, 1]);
        let g = t.group().clone();
        assert_eq!(t.homogeneous_component(g.cyclic_elem(1)), vec![(0, 1), (1, 0)]);
        assert_eq!(t.homogeneous_component(g.cyclic_elem(0)), vec![(0, 0), (1, 1)]);
        // oracle: enumerate all nine pairs by hand
        let t = GradedTuple::cyclic(2, &[0, 0, 1]);
        assert_eq!(t.homogeneous_component(g.cyclic_elem(1)), vec![(0, 2), (1, 2), (2, 0), (2, 1)]);
    }

    #[test]
    fn nilpotency_examples() {
        let f = f5();
        assert!(Matrix::unit(f, 2, 0, 1).is_nilpotent());
        assert!(!Matrix::identity(f, 4).is_nilpotent());
        let x = Matrix::unit(f, 2, 0, 1).add(&Matrix::unit(f, 2, 1, 0));
        assert_eq!(x.mul(&x), Matrix::identity(f, 2));
        assert!(!x.is_nilpotent());
    }

    #[test]
    fn classification_examples() {
        let f = f5();
        let eps = trivial_eps();
        let t = GradedTuple::trivial(3);
        let a = GradedSubalgebra::new(t.clone(), vec![ColorMatrix::identity(&t, f)]).unwrap();
        let fl = classify_subalgebra(&a, &eps);
        assert!(fl.is_abelian && fl.is_prenil && !fl.is_nil);

        let t2 = GradedTuple::trivial(2);
        let a =
            GradedSubalgebra::new(t2.clone(), vec![ColorMatrix::unit(&t2, f, 0, 0), ColorMatrix::unit(&t2, f, 0, 1)])
                .unwrap();
        let fl = classify_subalgebra(&a, &eps);
        assert!(fl.is_closed && !fl.is_abelian);

        // Span{e12, e21} is not closed and contains the non-nilpotent e12 + e21.
        let a =
            GradedSubalgebra::new(t2.clone(), vec![ColorMatrix::unit(&t2, f, 0, 1), ColorMatrix::unit(&t2, f, 1, 0)])
                .unwrap();
        let fl = classify_subalgebra(&a, &eps);
        assert!(!fl.is_closed && !fl.is_nil);
        assert_eq!(fl.nil_provenance, Provenance::Exact);

        // Strictly upper triangular matrices: closed, nil, not abelian.
        let t3 = GradedTuple::trivial(3);
        let basis =
            vec![ColorMatrix::unit(&t3, f, 0, 1), ColorMatrix::unit(&t3, f, 1, 2), ColorMatrix::unit(&t3, f, 0, 2)];
        let fl = classify_subalgebra(&GradedSubalgebra::new(t3, basis).unwrap(), &eps);
        assert!(fl.is_closed && !fl.is_abelian && fl.is_nil && fl.is_prenil);
    }

    #[test]
    fn upper_triangular_with_nilpotent_odd_part_is_prenil() {
        let f = f5();
        let eps = super_eps();
        let t = GradedTuple::cyclic(2, &[0, 1, 0]);
        // e13 is even, e12 is odd; both strictly upper. Adding the identity keeps it pre-nil.
        let basis = vec![ColorMatrix::identity(&t, f), ColorMatrix::unit(&t, f, 0, 1), ColorMatrix::unit(&t, f, 0, 2)];
        let fl = classify_subalgebra(&GradedSubalgebra::new(t, basis).unwrap(), &eps);
        assert!(fl.is_abelian && fl.is_prenil && !fl.is_nil);
    }

    #[test]
    fn subalgebra_validation() {
        let f = f5();
        let t = GradedTuple::cyclic(2, &[0, 1]);
        let bad = ColorMatrix::untagged(Matrix::identity(f, 2));
        assert_eq!(GradedSubalgebra::new(t.clone(), vec![bad]), Err(GlError::InhomogeneousInput));
        let mixed = Matrix::identity(f, 2).add(&Matrix::unit(f, 2, 0, 1));
        assert!(ColorMatrix::infer(mixed.clone(), &t).is_err());
        assert_eq!(split_homogeneous(&mixed, &t).len(), 2);
        let wrong = ColorMatrix::homogeneous(Matrix::unit(f, 2, 0, 1), t.group().zero(), &t);
        assert_eq!(wrong, Err(GlError::DegreeMismatch { i: 0, j: 1 }));
        let e = ColorMatrix::unit(&t, f, 0, 1);
        assert_eq!(GradedSubalgebra::new(t, vec![e.clone(), e.scale(f.elem(2))]), Err(GlError::LinearlyDependent));
    }

    #[test]
    fn nilpotent_algebra_flag() {
        let f = f5();
        let a = Matrix::unit(f, 3, 0, 1);
        let b = Matrix::unit(f, 3, 1, 2);
        assert!(generates_nilpotent_algebra(&[&a, &b], 3));
        let c = Matrix::unit(f, 3, 2, 0);
        // e12, e23, e31 generate all of M_3
        assert!(!generates_nilpotent_algebra(&[&a, &b, &c], 3));
        // each of e12, e21 is nilpotent, together they are not
        let d = Matrix::unit(f, 3, 1, 0);
        assert!(!generates_nilpotent_algebra(&[&a, &d], 3));
    }

    #[test]
    fn axioms_hold_for_genuine_bicharacters() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rep = axioms_check(&super_eps(), &GradedTuple::cyclic(2, &[0, 1]), 100, &mut rng);
        assert!(rep.passed, "{rep:?}");
        let rep = axioms_check(&trivial_eps(), &GradedTuple::trivial(3), 100, &mut rng);
        assert!(rep.passed);
    }

    #[test]
    fn corrupted_factor_is_caught() {
        let f = FieldSpec::new(7, 1).unwrap();
        let g = GradingGroup::cyclic(2).unwrap();
        let mut table = BiCharacterTable::trivial(g.clone(), f).into_table();
        table[1] = f.elem(3); // ε(0, 1) = 3 breaks skew-symmetry
        let eps = BiCharacterTable::from_table_unchecked(g, f, table);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = axioms_check(&eps, &GradedTuple::cyclic(2, &[0, 1, 1]), 200, &mut rng);
        assert!(!rep.passed);
        assert!(rep.failure.is_some());
    }

    proptest! {
        #[test]
        fn bracket_degree_is_additive(seed in any::<u64>()) {
            let eps = super_eps();
            let t = GradedTuple::cyclic(2, &[0, 1, 1, 0]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = t.group();
            let (a, b) = (random::group_elem(g, &mut rng), random::group_elem(g, &mut rng));
            let x = random::homogeneous(&t, f5(), a, &mut rng);
            let y = random::homogeneous(&t, f5(), b, &mut rng);
            let br = color_bracket(&x, &y, &eps).unwrap();
            prop_assert_eq!(br.degree(), Some(g.add(a, b)));
            prop_assert!(br.is_consistent_with(&t));
        }

        #[test]
        fn height_order_is_total(x in proptest::collection::vec(0i64..3, 9), y in proptest::collection::vec(0i64..3, 9)) {
            let f = f5();
            let mx = Matrix::from_flat(f, 3, 3, x.iter().map(|&v| f.elem(v)).collect());
            let my = Matrix::from_flat(f, 3, 3, y.iter().map(|&v| f.elem(v)).collect());
            let (hx, hy) = (height(&mx), height(&my));
            let hs = height(&mx.add(&my));
            prop_assert!(hs >= hx.min(hy));
            if hx != hy {
                prop_assert_eq!(hs, hx.min(hy));
            }
        }
    }
}
