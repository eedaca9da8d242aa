//! JSON wire formats.
//!
//! Scalars are integers in `[0, p)`, group elements are residue lists and
//! matrix indices are zero-based. Every `*Json` type deserializes from what
//! it serializes to.

use crate::glcolor::{ColorMatrix, GradedSubalgebra, GradedTuple, Mode, SubalgebraFlags};
use crate::grading::{cyclic_bicharacter, validate_bicharacter, BiCharacterTable, Elem, GradingGroup};
use crate::linalg::Matrix;
use crate::maximal::{CatalogEntry, Fingerprint, MaximalFamily, Variant, Verdict};
use crate::musolve::{Frontier, IndexReading, MuCertificate};
use crate::reduce::{ElementaryConjugator, HgmuCheck, HgmuDecomposition, Triangulation};
use crate::scalars::FieldSpec;
use crate::Error;
use serde::{Deserialize, Serialize};

/// Smallest prime considered when the field is chosen automatically.
pub const DEFAULT_MIN_PRIME: u64 = 5;

/// Input forms of a commutation factor: a full table, or `ω^{ab}` on `Z_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum BicharacterInput {
    Table {
        factors: Vec<u64>,
        eps: Vec<Vec<i64>>,
        #[serde(default, alias = "p", skip_serializing_if = "Option::is_none")]
        prime: Option<u64>,
    },
    Cyclic {
        cyclic: u64,
        omega: i64,
        #[serde(default, alias = "p", skip_serializing_if = "Option::is_none")]
        prime: Option<u64>,
    },
}

/// The field for `group`: `F_prime` when given, otherwise the smallest admissible prime.
pub fn field_for(group: &GradingGroup, prime: Option<u64>) -> Result<FieldSpec, Error> {
    let e = group.exponent();
    match prime {
        Some(p) => Ok(FieldSpec::new(p, e)?),
        None => Ok(FieldSpec::for_group(e, DEFAULT_MIN_PRIME)),
    }
}

impl BicharacterInput {
    /// Validates the table; `prime` overrides a prime given inside the input.
    pub fn resolve(&self, prime: Option<u64>) -> Result<BiCharacterTable, Error> {
        match self {
            BicharacterInput::Table { factors, eps, prime: p } => {
                let group = GradingGroup::new(factors.clone())?;
                let f = field_for(&group, prime.or(*p))?;
                let rows = eps.iter().map(|r| r.iter().map(|&v| f.elem(v)).collect()).collect();
                Ok(validate_bicharacter(group, f, rows)?)
            }
            BicharacterInput::Cyclic { cyclic, omega, prime: p } => {
                let group = GradingGroup::cyclic(*cyclic)?;
                let f = field_for(&group, prime.or(*p))?;
                Ok(cyclic_bicharacter(*cyclic, f.elem(*omega), f)?)
            }
        }
    }
}

pub fn parse_bicharacter(s: &str, prime: Option<u64>) -> Result<BiCharacterTable, Error> {
    from_str::<BicharacterInput>(s)?.resolve(prime)
}

/// A validated commutation factor together with its field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicharacterJson {
    pub factors: Vec<u64>,
    pub field: FieldSpec,
    pub eps: Vec<Vec<u64>>,
}

impl BicharacterJson {
    pub fn from_table(eps: &BiCharacterTable) -> Self {
        BicharacterJson {
            factors: eps.group().factors().to_vec(),
            field: eps.field(),
            eps: eps.rows().iter().map(|r| r.iter().map(|s| s.value()).collect()).collect(),
        }
    }

    pub fn to_table(&self) -> Result<BiCharacterTable, Error> {
        let group = GradingGroup::new(self.factors.clone())?;
        let f = self.field;
        let rows = self.eps.iter().map(|r| r.iter().map(|&v| f.elem(v as i64)).collect()).collect();
        Ok(validate_bicharacter(group, f, rows)?)
    }
}

pub fn matrix_rows(x: &Matrix) -> Vec<Vec<u64>> {
    (0..x.rows()).map(|r| x.row(r).iter().map(|s| s.value()).collect()).collect()
}

fn matrix_from_rows(f: FieldSpec, m: usize, rows: &[Vec<i64>]) -> Result<Matrix, Error> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse(format!("entries must be {m}x{m}")));
    }
    Ok(Matrix::from_rows(f, &rows.iter().map(|r| r.iter().map(|&v| f.elem(v)).collect::<Vec<_>>()).collect::<Vec<_>>()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorMatrixJson {
    pub m: usize,
    pub entries: Vec<Vec<i64>>,
    /// `null` asks for the degree to be inferred from the support.
    #[serde(default)]
    pub degree: Option<Vec<u64>>,
}

impl ColorMatrixJson {
    pub fn from_matrix(x: &ColorMatrix, group: &GradingGroup) -> Self {
        ColorMatrixJson {
            m: x.m(),
            entries: matrix_rows(x.matrix()).into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect(),
            degree: x.degree().map(|d| group.residues(d)),
        }
    }

    /// Tagged with the given degree after checking it against the support,
    /// or with the inferred degree when none is given.
    pub fn to_matrix(&self, tuple: &GradedTuple, f: FieldSpec) -> Result<ColorMatrix, Error> {
        if self.m != tuple.len() {
            return Err(Error::Parse(format!("matrix size {} does not match tuple length {}", self.m, tuple.len())));
        }
        let x = matrix_from_rows(f, self.m, &self.entries)?;
        match &self.degree {
            Some(r) => {
                let d = tuple.group().from_residues(r)?;
                Ok(ColorMatrix::homogeneous(x, d, tuple)?)
            }
            None => Ok(ColorMatrix::infer(x, tuple)?),
        }
    }
}

pub fn tuple_json(tuple: &GradedTuple) -> Vec<Vec<u64>> {
    tuple.entries().iter().map(|&d| tuple.group().residues(d)).collect()
}

pub fn tuple_from_json(group: &GradingGroup, entries: &[Vec<u64>]) -> Result<GradedTuple, Error> {
    let elems = entries.iter().map(|r| group.from_residues(r)).collect::<Result<Vec<Elem>, _>>()?;
    Ok(GradedTuple::new(group.clone(), elems))
}

/// A tuple given either as JSON residue lists (`[[0,1],[1,0]]`), as a JSON
/// list of integers, or as comma-separated integers. Plain integers need a
/// cyclic or trivial group and are reduced modulo its order.
pub fn parse_tuple(s: &str, group: &GradingGroup) -> Result<GradedTuple, Error> {
    let s = s.trim();
    if s.starts_with("[[") || s == "[]" {
        let entries: Vec<Vec<u64>> = from_str(s)?;
        return tuple_from_json(group, &entries);
    }
    let ints: Vec<i64> = if s.starts_with('[') {
        from_str(s)?
    } else if s.is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("tuple entry `{t}`: {e}"))))
            .collect::<Result<_, _>>()?
    };
    if group.cyclic_order().is_none() {
        return Err(Error::Parse("plain integer tuples need a cyclic group; use residue lists".into()));
    }
    Ok(GradedTuple::new(group.clone(), ints.into_iter().map(|r| group.cyclic_elem(r)).collect()))
}

/// Comma-separated nonnegative integers.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("dimension `{t}`: {e}")))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraJson {
    pub tuple: Vec<Vec<u64>>,
    pub basis: Vec<ColorMatrixJson>,
}

impl SubalgebraJson {
    pub fn from_subalgebra(a: &GradedSubalgebra) -> Self {
        let g = a.tuple().group();
        SubalgebraJson {
            tuple: tuple_json(a.tuple()),
            basis: a.basis().iter().map(|x| ColorMatrixJson::from_matrix(x, g)).collect(),
        }
    }

    pub fn to_subalgebra(&self, group: &GradingGroup, f: FieldSpec) -> Result<GradedSubalgebra, Error> {
        let tuple = tuple_from_json(group, &self.tuple)?;
        let basis = self.basis.iter().map(|x| x.to_matrix(&tuple, f)).collect::<Result<Vec<_>, _>>()?;
        Ok(GradedSubalgebra::new(tuple, basis)?)
    }
}

pub fn parse_subalgebra(s: &str, group: &GradingGroup, f: FieldSpec) -> Result<GradedSubalgebra, Error> {
    from_str::<SubalgebraJson>(s)?.to_subalgebra(group, f)
}

pub fn parse_color_matrix(s: &str, tuple: &GradedTuple, f: FieldSpec) -> Result<ColorMatrix, Error> {
    from_str::<ColorMatrixJson>(s)?.to_matrix(tuple, f)
}

pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgmuRowJson {
    pub row: usize,
    pub columns: Vec<usize>,
    pub units: Vec<ColorMatrixJson>,
    pub trace: Vec<ElementaryConjugator>,
    pub residual: Vec<ColorMatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgmuJson {
    pub tuple: Vec<Vec<u64>>,
    pub conjugator: Vec<Vec<u64>>,
    pub rows: Vec<HgmuRowJson>,
    pub trace: Vec<ElementaryConjugator>,
    pub row_sizes: Vec<usize>,
    pub dim: usize,
    pub check: HgmuCheck,
}

impl HgmuJson {
    pub fn new(dec: &HgmuDecomposition, check: HgmuCheck) -> Self {
        let g = dec.tuple.group();
        let mats = |xs: &[ColorMatrix]| xs.iter().map(|x| ColorMatrixJson::from_matrix(x, g)).collect();
        HgmuJson {
            tuple: tuple_json(&dec.tuple),
            conjugator: matrix_rows(&dec.conjugator),
            rows: dec
                .rows
                .iter()
                .map(|r| HgmuRowJson {
                    row: r.row,
                    columns: r.columns.clone(),
                    units: mats(&r.units),
                    trace: r.trace.clone(),
                    residual: mats(&r.residual),
                })
                .collect(),
            trace: dec.trace.clone(),
            row_sizes: dec.row_sizes(),
            dim: dec.dim,
            check,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub mode: Mode,
    pub conjugator: Vec<Vec<u64>>,
    pub inverse: Vec<Vec<u64>>,
    pub image: SubalgebraJson,
}

impl TriangulationJson {
    pub fn new(t: &Triangulation) -> Self {
        TriangulationJson {
            mode: t.mode,
            conjugator: matrix_rows(&t.conjugator),
            inverse: matrix_rows(&t.inverse),
            image: SubalgebraJson::from_subalgebra(&t.image),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub variant: Variant,
    pub algebra: SubalgebraJson,
    pub dim: usize,
    pub flags: SubalgebraFlags,
    /// Graded dimensions in profile order `1, ..., k-1, 0`; absent for non-cyclic groups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<usize>>,
}

impl FamilyJson {
    pub fn new(fam: &MaximalFamily, profile: Option<Vec<usize>>) -> Self {
        FamilyJson {
            variant: fam.variant,
            algebra: SubalgebraJson::from_subalgebra(&fam.algebra),
            dim: fam.algebra.dim(),
            flags: fam.algebra.flags().expect("constructed families are classified"),
            profile,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum VerdictJson {
    Maximal,
    ExtendedBy { witness: ColorMatrixJson },
    Inconclusive { sampled: u64 },
}

impl VerdictJson {
    pub fn new(v: &Verdict, group: &GradingGroup) -> Self {
        match v {
            Verdict::Maximal => VerdictJson::Maximal,
            Verdict::ExtendedBy(x) => VerdictJson::ExtendedBy { witness: ColorMatrixJson::from_matrix(x, group) },
            Verdict::Inconclusive { sampled } => VerdictJson::Inconclusive { sampled: *sampled },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub name: String,
    pub degree_consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<SubalgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<SubalgebraFlags>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximality: Option<VerdictJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Fingerprint>,
}

impl CatalogEntryJson {
    pub fn new(
        e: &CatalogEntry,
        flags: Option<SubalgebraFlags>,
        maximality: Option<VerdictJson>,
        fingerprint: Option<Fingerprint>,
    ) -> Self {
        CatalogEntryJson {
            name: e.name.clone(),
            degree_consistent: e.degree_consistent,
            algebra: e.algebra.as_ref().map(SubalgebraJson::from_subalgebra),
            flags,
            maximality,
            fingerprint,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuJson {
    pub mu: usize,
    pub mode: Mode,
    pub reading: IndexReading,
    pub partition: Vec<usize>,
    pub frontier: Frontier,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    /// Images of a basis, ordered by degree in profile order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<ColorMatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faithful: Option<bool>,
}

impl MuJson {
    pub fn new(cert: &MuCertificate, faithful: Option<bool>) -> Self {
        let emb = cert.embedding.as_ref();
        MuJson {
            mu: cert.mu,
            mode: cert.mode,
            reading: cert.reading,
            partition: cert.partition.clone(),
            frontier: cert.frontier.clone(),
            tuple: emb.map(|e| tuple_json(&e.tuple)),
            field: emb.and_then(|e| e.images.first()).map(|x| x.matrix().field()),
            embedding: emb.map(|e| e.images.iter().map(|x| ColorMatrixJson::from_matrix(x, e.tuple.group())).collect()),
            faithful,
        }
    }
}
