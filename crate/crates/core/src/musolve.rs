//! Minimal dimension of a faithful pre-nil or nil representation of an
//! abelian color algebra graded by `Z_k`.
//!
//! A representation of dimension `m` exists iff some `2k`-partition
//! `(ṁ_1, m̈_1, ..., ṁ_k, m̈_k)` of `m` has cyclic capacities
//! `Σ_i ṁ_{i+l} m̈_i (+1 at l = 0 in pre-nil mode)` dominating the graded
//! dimensions. Slot `i` of a partition holds residue `i mod k`, so the last
//! pair belongs to degree 0.

use crate::glcolor::{color_bracket, ColorMatrix, GradedSubalgebra, GradedTuple, Mode};
use crate::grading::{BiCharacterTable, GradingGroup};
use crate::linalg::Matrix;
use crate::maximal::profile_order;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported cyclic order.
pub const MAX_K: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MusolveError {
    #[error("the zero algebra has no minimal faithful dimension")]
    DimZero,
    #[error("expected {expected} graded dimensions, got {got}")]
    DimsLength { expected: usize, got: usize },
    #[error("cyclic order must lie in 1..={MAX_K}, got {0}")]
    BadK(u64),
}

/// Which residues the capacity inequality is imposed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexReading {
    /// Every residue, degree 0 included.
    #[default]
    All,
    /// Only `l = 1, ..., k-1`; degree 0 is unconstrained.
    Strict,
}

/// An abelian color algebra over `Z_k`, determined up to isomorphism by its graded dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianColorAlgebra {
    k: u64,
    /// Indexed by residue.
    dims: Vec<usize>,
}

impl AbelianColorAlgebra {
    /// Dimensions indexed by residue `0, 1, ..., k-1`.
    pub fn new(k: u64, dims: Vec<usize>) -> Result<Self, MusolveError> {
        if k == 0 || k > MAX_K {
            return Err(MusolveError::BadK(k));
        }
        if dims.len() != k as usize {
            return Err(MusolveError::DimsLength { expected: k as usize, got: dims.len() });
        }
        Ok(AbelianColorAlgebra { k, dims })
    }

    /// Dimensions listed in profile order `1, ..., k-1, 0`.
    pub fn from_profile(k: u64, profile: &[usize]) -> Result<Self, MusolveError> {
        if k == 0 || k > MAX_K {
            return Err(MusolveError::BadK(k));
        }
        if profile.len() != k as usize {
            return Err(MusolveError::DimsLength { expected: k as usize, got: profile.len() });
        }
        let mut dims = vec![0; k as usize];
        for (l, &d) in profile_order(k).iter().zip(profile) {
            dims[*l as usize] = d;
        }
        Ok(AbelianColorAlgebra { k, dims })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn dim_at(&self, residue: usize) -> usize {
        self.dims[residue]
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn profile(&self) -> Vec<usize> {
        profile_order(self.k).iter().map(|&l| self.dims[l as usize]).collect()
    }
}

/// Smallest `s` with `s² ≥ n`.
fn ceil_sqrt(n: u64) -> u64 {
    let s = n.isqrt();
    if s * s == n {
        s
    } else {
        s + 1
    }
}

/// `⌈2√(dim L - 1)⌉` in pre-nil mode, `⌈2√(dim L)⌉` in nil mode, at least 1 for nonzero `L`.
pub fn lower_bound(l: &AbelianColorAlgebra, mode: Mode) -> usize {
    let d = l.dim() as u64;
    if d == 0 {
        return 0;
    }
    let n = match mode {
        Mode::Prenil => d - 1,
        Mode::Nil => d,
    };
    ceil_sqrt(4 * n).max(1) as usize
}

fn top(p: &[usize], k: usize, residue: usize) -> usize {
    p[2 * ((residue + k - 1) % k)]
}

fn bottom(p: &[usize], k: usize, residue: usize) -> usize {
    p[2 * ((residue + k - 1) % k) + 1]
}

/// `Σ_r ṁ_{r+l} m̈_r`, plus one at `l = 0` in pre-nil mode when the partition is nonzero.
pub fn capacity(partition: &[usize], l: usize, mode: Mode) -> usize {
    let k = partition.len() / 2;
    let conv: usize = (0..k).map(|r| top(partition, k, (r + l) % k) * bottom(partition, k, r)).sum();
    let slack = mode == Mode::Prenil && l == 0 && partition.iter().any(|&x| x > 0);
    conv + usize::from(slack)
}

pub fn feasible(l: &AbelianColorAlgebra, partition: &[usize], mode: Mode, reading: IndexReading) -> bool {
    let k = l.k as usize;
    assert_eq!(partition.len(), 2 * k, "partition must have 2k entries");
    let first = match reading {
        IndexReading::All => 0,
        IndexReading::Strict => 1,
    };
    (first..k).all(|r| capacity(partition, r, mode) >= l.dims[r])
}

/// Number of compositions of `n` into `parts` nonnegative parts.
fn compositions(n: usize, parts: usize) -> u64 {
    if parts == 0 {
        return u64::from(n == 0);
    }
    // C(n + parts - 1, parts - 1)
    let (top, r) = ((n + parts - 1) as u64, (parts - 1).min(n) as u64);
    (0..r).fold(1u64, |acc, i| acc.saturating_mul(top - i) / (i + 1))
}

/// Outcome of scanning every composition of one `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub m: usize,
    pub compositions: u64,
    /// Compositions evaluated one by one.
    pub examined: u64,
    /// Compositions skipped because a capacity bound ruled out their whole subtree.
    pub pruned: u64,
    pub feasible: bool,
}

impl Frontier {
    /// Every composition was accounted for and none was feasible.
    pub fn exhausted_infeasible(&self) -> bool {
        !self.feasible && self.examined + self.pruned == self.compositions
    }
}

struct Search<'a> {
    l: &'a AbelianColorAlgebra,
    mode: Mode,
    reading: IndexReading,
    k: usize,
    examined: u64,
    pruned: u64,
}

impl Search<'_> {
    /// Lexicographically first feasible composition of `m`, if any.
    fn run(&mut self, m: usize) -> Option<Vec<usize>> {
        let mut p = vec![0; 2 * self.k];
        self.descend(&mut p, 0, m).then_some(p)
    }

    fn descend(&mut self, p: &mut [usize], at: usize, left: usize) -> bool {
        if at + 1 == p.len() {
            p[at] = left;
            self.examined += 1;
            return feasible(self.l, p, self.mode, self.reading);
        }
        for v in 0..=left {
            p[at] = v;
            if !self.promising(p, at + 1, left - v) {
                self.pruned += compositions(left - v, p.len() - at - 1);
                continue;
            }
            if self.descend(p, at + 1, left - v) {
                return true;
            }
        }
        p[at] = 0;
        false
    }

    /// Capacity upper bounds with the first `fixed` entries set and `left` still to distribute.
    fn promising(&self, p: &[usize], fixed: usize, left: usize) -> bool {
        let k = self.k;
        let ub = |idx: usize| if idx < fixed { p[idx] } else { left };
        let nonzero = p[..fixed].iter().any(|&x| x > 0) || left > 0;
        let first = match self.reading {
            IndexReading::All => 0,
            IndexReading::Strict => 1,
        };
        (first..k).all(|l| {
            let conv: usize = (0..k).map(|r| ub(2 * ((r + l + k - 1) % k)) * ub(2 * ((r + k - 1) % k) + 1)).sum();
            let slack = usize::from(self.mode == Mode::Prenil && l == 0 && nonzero);
            conv + slack >= self.l.dims[l]
        })
    }

    fn frontier(&mut self, m: usize) -> (Frontier, Option<Vec<usize>>) {
        self.examined = 0;
        self.pruned = 0;
        let found = self.run(m);
        let f = Frontier {
            m,
            compositions: compositions(m, 2 * self.k),
            examined: self.examined,
            pruned: self.pruned,
            feasible: found.is_some(),
        };
        (f, found)
    }
}

/// A minimal feasible partition together with an explicit faithful embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCertificate {
    pub mu: usize,
    pub mode: Mode,
    pub reading: IndexReading,
    pub partition: Vec<usize>,
    /// The complete scan at `mu - 1`, certifying minimality.
    pub frontier: Frontier,
    /// Images of a basis of `L`, ordered by degree in profile order. Absent under the strict reading.
    pub embedding: Option<Embedding>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub tuple: GradedTuple,
    pub images: Vec<ColorMatrix>,
}

/// Smallest `m` admitting a feasible partition; ties go to the lexicographically smallest one.
pub fn compute_mu(l: &AbelianColorAlgebra, mode: Mode, reading: IndexReading) -> Result<MuCertificate, MusolveError> {
    if l.dim() == 0 {
        return Err(MusolveError::DimZero);
    }
    let mut search = Search { l, mode, reading, k: l.k as usize, examined: 0, pruned: 0 };
    let start = match reading {
        IndexReading::All => lower_bound(l, mode),
        // Degree 0 no longer constrains anything, so the bound need not apply.
        IndexReading::Strict => 0,
    };
    let mut below = None;
    let mut m = start;
    let partition = loop {
        let (frontier, found) = search.frontier(m);
        if let Some(p) = found {
            break p;
        }
        below = Some(frontier);
        m += 1;
    };
    let frontier = match below {
        Some(f) => f,
        None if m == 0 => Frontier { m: 0, compositions: 0, examined: 0, pruned: 0, feasible: false },
        None => search.frontier(m - 1).0,
    };
    let embedding = match reading {
        IndexReading::All => Some(embed(l, &partition, mode)),
        IndexReading::Strict => None,
    };
    Ok(MuCertificate { mu: m, mode, reading, partition, frontier, embedding })
}

/// Lays out the top block then the bottom block and assigns matrix units of each degree.
fn embed(l: &AbelianColorAlgebra, partition: &[usize], mode: Mode) -> Embedding {
    let k = l.k as usize;
    let group = GradingGroup::cyclic(l.k).expect("k validated");
    let field = crate::scalars::FieldSpec::for_group(l.k, 5);
    let residues_of = |offset: usize| -> Vec<i64> {
        (1..=k).flat_map(|i| std::iter::repeat_n((i % k) as i64, partition[2 * (i - 1) + offset])).collect()
    };
    let top_res = residues_of(0);
    let bottom_res = residues_of(1);
    let h = top_res.len();
    let all: Vec<i64> = top_res.iter().chain(&bottom_res).copied().collect();
    let m = all.len();
    let tuple = GradedTuple::new(group.clone(), all.iter().map(|&r| group.cyclic_elem(r)).collect());
    let mut images = Vec::with_capacity(l.dim());
    for r in profile_order(l.k) {
        let gamma = group.cyclic_elem(r);
        let mut units =
            (0..h).flat_map(|s| (h..m).map(move |t| (s, t))).filter(|&(s, t)| tuple.pair_degree(s, t) == gamma);
        for _ in 0..l.dims[r as usize] {
            match units.next() {
                Some((s, t)) => images.push(ColorMatrix::unit(&tuple, field, s, t)),
                None => {
                    debug_assert!(r == 0 && mode == Mode::Prenil);
                    images.push(ColorMatrix::identity(&tuple, field));
                }
            }
        }
    }
    Embedding { tuple, images }
}

impl Embedding {
    /// Re-expresses the images over another field with the same grading, e.g. the one `ε` lives on.
    pub fn over(&self, field: crate::scalars::FieldSpec) -> Embedding {
        let images = self
            .images
            .iter()
            .map(|x| {
                let rows: Vec<Vec<i64>> =
                    x.matrix().to_rows().iter().map(|r| r.iter().map(|v| v.value() as i64).collect()).collect();
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                ColorMatrix::from_parts(Matrix::from_i64(field, &refs), x.degree())
            })
            .collect();
        Embedding { tuple: self.tuple.clone(), images }
    }
}

/// Checks that an embedding is a faithful representation of `L` satisfying the mode.
pub fn faithful_check(l: &AbelianColorAlgebra, cert: &MuCertificate, eps: &BiCharacterTable) -> bool {
    let Some(emb) = &cert.embedding else { return false };
    if eps.group() != emb.tuple.group() || emb.tuple.group().cyclic_order() != Some(l.k) {
        return false;
    }
    if emb.images.len() != l.dim() || emb.tuple.len() != cert.mu {
        return false;
    }
    let emb = emb.over(eps.field());
    let mut per_degree = vec![0usize; l.k as usize];
    for x in &emb.images {
        if !x.is_consistent_with(&emb.tuple) {
            return false;
        }
        per_degree[x.degree().expect("consistent implies tagged").index()] += 1;
    }
    if per_degree != l.dims {
        return false;
    }
    for (s, x) in emb.images.iter().enumerate() {
        for y in &emb.images[s..] {
            if !color_bracket(x, y, eps).is_ok_and(|b| b.matrix().is_zero()) {
                return false;
            }
        }
    }
    match GradedSubalgebra::new(emb.tuple.clone(), emb.images.clone()) {
        Ok(a) => crate::glcolor::classify_subalgebra(&a, eps).satisfies(cert.mode),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::cyclic_bicharacter;
    use crate::scalars::FieldSpec;
    use proptest::prelude::*;

    fn alg(k: u64, profile: &[usize]) -> AbelianColorAlgebra {
        AbelianColorAlgebra::from_profile(k, profile).unwrap()
    }

    fn super_eps() -> BiCharacterTable {
        let f = FieldSpec::for_group(2, 5);
        cyclic_bicharacter(2, f.minus_one(), f).unwrap()
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&alg(1, &[5]), Mode::Prenil), 4);
        assert_eq!(lower_bound(&alg(1, &[4]), Mode::Nil), 4);
        assert_eq!(lower_bound(&alg(1, &[1]), Mode::Prenil), 1);
        assert_eq!(lower_bound(&alg(1, &[2]), Mode::Prenil), 2);
        assert_eq!(lower_bound(&alg(1, &[0]), Mode::Nil), 0);
    }

    #[test]
    fn feasibility_examples() {
        let l = alg(1, &[5]);
        assert!(feasible(&l, &[2, 2], Mode::Prenil, IndexReading::All));
        assert!(!feasible(&l, &[2, 2], Mode::Nil, IndexReading::All));
        let l = alg(2, &[1, 1]);
        assert!(feasible(&l, &[1, 0, 0, 1], Mode::Prenil, IndexReading::All));
        // the empty partition has no identity to spend on degree 0
        assert!(!feasible(&alg(1, &[1]), &[0, 0], Mode::Prenil, IndexReading::All));
    }

    #[test]
    fn mu_examples() {
        let c = compute_mu(&alg(1, &[5]), Mode::Prenil, IndexReading::All).unwrap();
        assert_eq!((c.mu, c.partition.clone()), (4, vec![2, 2]));
        let c = compute_mu(&alg(1, &[1]), Mode::Nil, IndexReading::All).unwrap();
        assert_eq!((c.mu, c.partition.clone()), (2, vec![1, 1]));
        let l = alg(2, &[1, 1]);
        let c = compute_mu(&l, Mode::Prenil, IndexReading::All).unwrap();
        assert_eq!(c.mu, 2);
        assert!(c.frontier.exhausted_infeasible());
        assert!(faithful_check(&l, &c, &super_eps()));
        assert_eq!(compute_mu(&alg(1, &[0]), Mode::Nil, IndexReading::All), Err(MusolveError::DimZero));
    }

    #[test]
    fn broken_certificates_fail() {
        let l = alg(2, &[1, 2]);
        let eps = super_eps();
        let c = compute_mu(&l, Mode::Nil, IndexReading::All).unwrap();
        assert!(faithful_check(&l, &c, &eps));

        let mut dup = c.clone();
        let emb = dup.embedding.as_mut().unwrap();
        let last = emb.images.len() - 1;
        emb.images[last] = emb.images[last - 1].clone();
        assert!(!faithful_check(&l, &dup, &eps));

        let mut with_identity = c.clone();
        let emb = with_identity.embedding.as_mut().unwrap();
        let id = ColorMatrix::identity(&emb.tuple, eps.field());
        emb.images[last] = id;
        assert!(!faithful_check(&l, &with_identity, &eps));
    }

    #[test]
    fn strict_reading_ignores_degree_zero() {
        let l = alg(1, &[5]);
        let c = compute_mu(&l, Mode::Prenil, IndexReading::Strict).unwrap();
        assert_eq!(c.mu, 0);
        assert!(c.embedding.is_none());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 2), 5);
        assert_eq!(compositions(0, 4), 1);
        assert_eq!(compositions(3, 4), 20);
        assert_eq!(compositions(5, 1), 1);
    }

    // Oracle: brute-force every composition without pruning.
    fn brute_mu(l: &AbelianColorAlgebra, mode: Mode) -> (usize, Vec<usize>) {
        let k = l.k() as usize;
        for m in 0.. {
            let mut all = Vec::new();
            let mut p = vec![0; 2 * k];
            fn rec(p: &mut Vec<usize>, at: usize, left: usize, out: &mut Vec<Vec<usize>>) {
                if at + 1 == p.len() {
                    p[at] = left;
                    out.push(p.clone());
                    return;
                }
                for v in 0..=left {
                    p[at] = v;
                    rec(p, at + 1, left - v, out);
                }
            }
            rec(&mut p, 0, m, &mut all);
            if let Some(best) = all.into_iter().filter(|p| feasible(l, p, mode, IndexReading::All)).min() {
                return (m, best);
            }
        }
        unreachable!()
    }

    proptest! {
        #[test]
        fn search_matches_brute_force(k in 1u64..4, dims in proptest::collection::vec(0usize..4, 3), nil in any::<bool>()) {
            let profile: Vec<usize> = dims[..k as usize].to_vec();
            prop_assume!(profile.iter().sum::<usize>() > 0);
            let l = alg(k, &profile);
            let mode = if nil { Mode::Nil } else { Mode::Prenil };
            let c = compute_mu(&l, mode, IndexReading::All).unwrap();
            prop_assert_eq!((c.mu, c.partition.clone()), brute_mu(&l, mode));
            prop_assert!(c.frontier.exhausted_infeasible());
            prop_assert!(c.mu >= lower_bound(&l, mode));
        }

        #[test]
        fn incrementing_keeps_feasibility(p in proptest::collection::vec(0usize..4, 4), slot in 0usize..4, d0 in 0usize..4, d1 in 0usize..4) {
            let l = alg(2, &[d1, d0]);
            for mode in [Mode::Prenil, Mode::Nil] {
                if feasible(&l, &p, mode, IndexReading::All) {
                    let mut q = p.clone();
                    q[slot] += 1;
                    prop_assert!(feasible(&l, &q, mode, IndexReading::All));
                }
            }
        }
    }
}
