//! Finite abelian grading groups and bi-characters (commutation factors).

use crate::scalars::{FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Upper bound on `|Γ|`; bi-character tables are stored densely.
pub const MAX_GROUP_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("invalid group presentation: {0}")]
    BadGroup(String),
    #[error("residues {0:?} do not name an element of the group")]
    BadElement(Vec<u64>),
    #[error("table must be {expected}x{expected}, got {rows} rows")]
    TableShape { expected: usize, rows: usize },
    #[error("bi-character axiom violated ({axiom}) at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<Vec<u64>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// Every value is a nonzero scalar.
    #[serde(rename = "nonzero")]
    NonZero,
    /// `ε(α, β) ε(β, α) = 1`
    #[serde(rename = "skew")]
    Skew,
    /// `ε(α + β, γ) = ε(α, γ) ε(β, γ)`
    #[serde(rename = "biadditive")]
    Biadditive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::NonZero => "eps(a,b) != 0",
            Axiom::Skew => "eps(a,b) eps(b,a) = 1",
            Axiom::Biadditive => "eps(a+b,c) = eps(a,c) eps(b,c)",
        })
    }
}

/// An element of a grading group, stored as its index in the lexicographic
/// enumeration of residue tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(usize);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0
    }
}

/// `Z_{k1} x ... x Z_{kr}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingGroup {
    factors: Vec<u64>,
    order: usize,
}

impl GradingGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, GradingError> {
        if factors.is_empty() {
            return Err(GradingError::BadGroup("at least one cyclic factor is required".into()));
        }
        let mut order: usize = 1;
        for &k in &factors {
            if k == 0 {
                return Err(GradingError::BadGroup("cyclic factors must be positive".into()));
            }
            order = usize::try_from(k)
                .ok()
                .and_then(|k| order.checked_mul(k))
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| GradingError::BadGroup(format!("order exceeds {MAX_GROUP_ORDER}")))?;
        }
        Ok(GradingGroup { factors, order })
    }

    pub fn cyclic(k: u64) -> Result<Self, GradingError> {
        GradingGroup::new(vec![k])
    }

    pub fn trivial() -> Self {
        GradingGroup { factors: vec![1], order: 1 }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `Some(k)` when the group is presented as a single cyclic factor `Z_k`.
    pub fn cyclic_order(&self) -> Option<u64> {
        (self.factors.len() == 1).then(|| self.factors[0])
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.factors.iter().fold(1, |acc, &k| acc / gcd(acc, k) * k)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn residues(&self, a: Elem) -> Vec<u64> {
        let mut idx = a.0 as u64;
        let mut out = vec![0; self.factors.len()];
        for (slot, &k) in out.iter_mut().zip(&self.factors).rev() {
            *slot = idx % k;
            idx /= k;
        }
        out
    }

    pub fn from_residues(&self, residues: &[u64]) -> Result<Elem, GradingError> {
        if residues.len() != self.factors.len() || residues.iter().zip(&self.factors).any(|(&r, &k)| r >= k) {
            return Err(GradingError::BadElement(residues.to_vec()));
        }
        let idx = residues.iter().zip(&self.factors).fold(0u64, |acc, (&r, &k)| acc * k + r);
        Ok(Elem(idx as usize))
    }

    /// The element of `Z_k` with residue `r mod k`. Panics on non-cyclic groups.
    pub fn cyclic_elem(&self, r: i64) -> Elem {
        let k = self.cyclic_order().expect("cyclic group required") as i64;
        Elem(r.rem_euclid(k) as usize)
    }

    fn combine(&self, a: Elem, b: Elem, sign: i64) -> Elem {
        let mut idx = 0u64;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut place = 1u64;
        for &k in self.factors.iter().rev() {
            let r = ((x % k) as i64 + sign * (y % k) as i64).rem_euclid(k as i64) as u64;
            idx += r * place;
            place *= k;
            x /= k;
            y /= k;
        }
        Elem(idx as usize)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.combine(a, b, 1)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.combine(a, b, -1)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.combine(Elem(0), a, -1)
    }

    /// Standard generators, one per cyclic factor.
    pub fn generators(&self) -> Vec<Elem> {
        (0..self.factors.len())
            .map(|i| {
                let mut r = vec![0; self.factors.len()];
                r[i] = 1 % self.factors[i];
                self.from_residues(&r).expect("generator residues are in range")
            })
            .collect()
    }
}

/// A validated bi-character `ε : Γ × Γ → F*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiCharacterTable {
    group: GradingGroup,
    field: FieldSpec,
    table: Vec<Scalar>,
}

impl BiCharacterTable {
    /// The constant bi-character `ε ≡ 1`.
    pub fn trivial(group: GradingGroup, field: FieldSpec) -> Self {
        let n = group.order();
        BiCharacterTable { group, field, table: vec![Scalar::ONE; n * n] }
    }

    /// Wraps a table without checking the axioms.
    ///
    /// Meant for falsification tests that need a deliberately broken commutation factor.
    pub fn from_table_unchecked(group: GradingGroup, field: FieldSpec, table: Vec<Scalar>) -> Self {
        assert_eq!(table.len(), group.order() * group.order());
        BiCharacterTable { group, field, table }
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn eps(&self, a: Elem, b: Elem) -> Scalar {
        self.table[a.0 * self.group.order() + b.0]
    }

    /// Rows of the table in element enumeration order.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.table.chunks(self.group.order()).map(<[Scalar]>::to_vec).collect()
    }

    pub fn into_table(self) -> Vec<Scalar> {
        self.table
    }
}

/// Checks both bi-character axioms on a candidate table.
///
/// Additivity in the first argument is verified for each standard generator
/// against every pair, which extends to the whole group by induction on word
/// length.
pub fn validate_bicharacter(
    group: GradingGroup,
    field: FieldSpec,
    rows: Vec<Vec<Scalar>>,
) -> Result<BiCharacterTable, GradingError> {
    let n = group.order();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(GradingError::TableShape { expected: n, rows: rows.len() });
    }
    let table = BiCharacterTable { group, field, table: rows.concat() };
    let group = &table.group;
    let f = &field;
    let res = |e: Elem| group.residues(e);
    for a in group.elements() {
        for b in group.elements() {
            if table.eps(a, b).is_zero() {
                return Err(GradingError::AxiomViolation { axiom: Axiom::NonZero, witness: vec![res(a), res(b)] });
            }
            if f.mul(table.eps(a, b), table.eps(b, a)) != Scalar::ONE {
                return Err(GradingError::AxiomViolation { axiom: Axiom::Skew, witness: vec![res(a), res(b)] });
            }
        }
    }
    for g in group.generators() {
        for b in group.elements() {
            for c in group.elements() {
                let lhs = table.eps(group.add(g, b), c);
                let rhs = f.mul(table.eps(g, c), table.eps(b, c));
                if lhs != rhs {
                    return Err(GradingError::AxiomViolation {
                        axiom: Axiom::Biadditive,
                        witness: vec![res(g), res(b), res(c)],
                    });
                }
            }
        }
    }
    Ok(table)
}

/// The table `ε(a, b) = ω^{ab}` on `Z_k`, validated.
pub fn cyclic_bicharacter(k: u64, omega: Scalar, field: FieldSpec) -> Result<BiCharacterTable, GradingError> {
    let group = GradingGroup::cyclic(k)?;
    let rows = (0..k).map(|a| (0..k).map(|b| field.pow(omega, a * b)).collect()).collect();
    validate_bicharacter(group, field, rows)
}

/// Every bi-character of the form `ω^{ab}` on `Z_k`.
///
/// Skew-symmetry at `(1, 1)` forces `ω² = 1`, and well-definedness on `Z_k`
/// forces `ω^k = 1`, leaving `ω = 1` for odd `k` and `ω = ±1` for even `k`.
pub fn cyclic_bicharacters(k: u64, field: FieldSpec) -> Result<Vec<BiCharacterTable>, GradingError> {
    let mut omegas = vec![Scalar::ONE];
    if k.is_multiple_of(2) {
        omegas.push(field.minus_one());
    }
    omegas.into_iter().map(|w| cyclic_bicharacter(k, w, field)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    #[test]
    fn element_enumeration_is_lexicographic() {
        let g = GradingGroup::new(vec![2, 3]).unwrap();
        let listed: Vec<Vec<u64>> = g.elements().map(|e| g.residues(e)).collect();
        assert_eq!(listed, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        let a = g.from_residues(&[1, 2]).unwrap();
        let b = g.from_residues(&[1, 2]).unwrap();
        assert_eq!(g.residues(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.residues(g.neg(a)), vec![1, 1]);
        assert_eq!(g.sub(a, a), g.zero());
        assert_eq!(g.exponent(), 6);
        assert!(g.from_residues(&[2, 0]).is_err());
    }

    #[test]
    fn superalgebra_sign_is_valid() {
        let f = field(5);
        let t = cyclic_bicharacter(2, f.minus_one(), f).unwrap();
        let g = t.group().clone();
        let one = g.cyclic_elem(1);
        assert_eq!(t.eps(one, one), f.minus_one());
        assert_eq!(t.eps(g.zero(), one), Scalar::ONE);
    }

    #[test]
    fn trivial_on_z3_is_valid() {
        let f = field(7);
        assert!(cyclic_bicharacter(3, Scalar::ONE, f).is_ok());
    }

    #[test]
    fn order_three_root_breaks_skew_symmetry() {
        let f = FieldSpec::new(7, 3).unwrap();
        let w = f.root_of_unity(3).unwrap();
        match cyclic_bicharacter(3, w, f) {
            Err(GradingError::AxiomViolation { axiom: Axiom::Skew, witness }) => {
                assert_eq!(witness, vec![vec![1], vec![1]]);
            }
            other => panic!("expected skew violation, got {other:?}"),
        }
    }

    #[test]
    fn enumerated_cyclic_tables() {
        let f = FieldSpec::for_group(4, 5);
        assert_eq!(cyclic_bicharacters(1, f).unwrap().len(), 1);
        assert_eq!(cyclic_bicharacters(2, f).unwrap().len(), 2);
        assert_eq!(cyclic_bicharacters(3, FieldSpec::for_group(3, 5)).unwrap().len(), 1);
        assert_eq!(cyclic_bicharacters(4, f).unwrap().len(), 2);
    }

    #[test]
    fn forced_identities_hold() {
        for k in 1..=6 {
            let f = FieldSpec::for_group(k, 5);
            for t in cyclic_bicharacters(k, f).unwrap() {
                let g = t.group();
                for a in g.elements() {
                    assert_eq!(t.eps(a, g.zero()), Scalar::ONE);
                    assert_eq!(t.eps(g.zero(), a), Scalar::ONE);
                    let na = g.neg(a);
                    assert_eq!(f.mul(t.eps(a, na), t.eps(na, a)), Scalar::ONE);
                    let s = t.eps(a, a);
                    assert!(s == Scalar::ONE || s == f.minus_one());
                }
            }
        }
    }

    #[test]
    fn non_additive_table_is_rejected() {
        // Z_3 with eps(1,1) = eps(2,2) = -1: skew-symmetric but not bi-additive.
        let f = field(7);
        let m = f.minus_one();
        let one = Scalar::ONE;
        let rows = vec![vec![one, one, one], vec![one, m, one], vec![one, one, m]];
        let err = validate_bicharacter(GradingGroup::cyclic(3).unwrap(), f, rows).unwrap_err();
        assert!(matches!(err, GradingError::AxiomViolation { axiom: Axiom::Biadditive, .. }));
    }

    #[test]
    fn group_order_is_bounded() {
        assert!(GradingGroup::new(vec![2048]).is_err());
        assert!(GradingGroup::new(vec![0]).is_err());
        assert!(GradingGroup::new(vec![]).is_err());
        assert!(GradingGroup::new(vec![u64::MAX, 2]).is_err());
    }
}
