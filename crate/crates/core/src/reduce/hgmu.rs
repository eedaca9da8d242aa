use super::{h_operators, is_generalized_unit, replay, trace_product, ElementaryConjugator, ReduceError};
use crate::glcolor::{color_bracket, ColorMatrix, GradedSubalgebra, GradedTuple, Height};
use crate::grading::BiCharacterTable;
use crate::linalg::{Echelon, Matrix};
use serde::{Deserialize, Serialize};

/// One stage of the decomposition: the units split off in a single row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgmuRow {
    pub row: usize,
    pub columns: Vec<usize>,
    /// `u_{row, columns[t]}`, expressed in the frame reached after this stage's conjugation.
    pub units: Vec<ColorMatrix>,
    /// Conjugators applied during this stage, in order.
    pub trace: Vec<ElementaryConjugator>,
    /// Basis of the residual subalgebra left for later stages.
    pub residual: Vec<ColorMatrix>,
}

/// Iterated splitting `T_l⁻¹ b_{l-1} T_l = F u_{i_l, j_l1} ⊕ ... ⊕ b_l` down to `b_t = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgmuDecomposition {
    pub tuple: GradedTuple,
    /// `T = T_1 T_2 ... T_t`.
    pub conjugator: Matrix,
    pub rows: Vec<HgmuRow>,
    /// Concatenation of every stage trace.
    pub trace: Vec<ElementaryConjugator>,
    pub dim: usize,
}

impl HgmuDecomposition {
    pub fn row_sizes(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.columns.len()).collect()
    }

    pub fn stage_conjugator(&self, stage: usize) -> Matrix {
        trace_product(&self.rows[stage].trace, self.conjugator.field(), self.tuple.len())
    }
}

/// Decomposes an abelian subalgebra of strictly upper triangular homogeneous matrices.
pub fn hgmu_decompose(a: &GradedSubalgebra, eps: &BiCharacterTable) -> Result<HgmuDecomposition, ReduceError> {
    let m = a.m();
    let field = eps.field();
    for (idx, x) in a.basis().iter().enumerate() {
        if !x.matrix().is_strictly_upper_triangular() {
            return Err(ReduceError::NotStrictlyTriangular(idx));
        }
    }
    for (s, x) in a.basis().iter().enumerate() {
        for y in &a.basis()[s..] {
            if !color_bracket(x, y, eps)?.matrix().is_zero() {
                return Err(ReduceError::NotAbelian);
            }
        }
    }

    let mut conjugator = Matrix::identity(field, m);
    let mut full_trace = Vec::new();
    let mut rows = Vec::new();
    let mut residual = echelonize(a.basis().to_vec(), a.tuple());
    while let Some(first) = residual.first() {
        let Height::At(row, _) = first.height() else { unreachable!("zero elements are dropped") };
        let mut columns = Vec::new();
        let mut units: Vec<ColorMatrix> = Vec::new();
        let mut trace = Vec::new();
        loop {
            residual = echelonize(residual, a.tuple());
            let Some(lead) = residual.first() else { break };
            let Height::At(i, k) = lead.height() else { unreachable!() };
            if i != row {
                break;
            }
            let ops = h_operators(lead)?;
            for op in &ops {
                for x in residual.iter_mut().chain(units.iter_mut()) {
                    let mut y = x.matrix().clone();
                    op.apply_in_place(&mut y);
                    *x = x.with_matrix(y);
                }
                if let ElementaryConjugator::D { .. } = op {
                    // Restore the unit normalization of earlier units in this row.
                    for (u, &c) in units.iter_mut().zip(&columns) {
                        let s = field.inv(u.matrix().get(row, c));
                        *u = u.scale(s);
                    }
                }
                op.right_multiply(&mut conjugator);
            }
            trace.extend_from_slice(&ops);
            let u = residual[0].clone();
            debug_assert!(is_generalized_unit(u.matrix(), row, k));
            for x in residual.iter_mut() {
                let c = x.matrix().get(row, k);
                if !c.is_zero() {
                    *x = x.with_matrix(x.matrix().add_scaled(field.neg(c), u.matrix()));
                }
            }
            units.push(u);
            columns.push(k);
        }
        full_trace.extend_from_slice(&trace);
        rows.push(HgmuRow { row, columns, units, trace, residual: residual.clone() });
    }

    Ok(HgmuDecomposition { tuple: a.tuple().clone(), conjugator, rows, trace: full_trace, dim: a.dim() })
}

/// Per-degree reduced echelon form, sorted by height, zeros dropped.
fn echelonize(xs: Vec<ColorMatrix>, tuple: &GradedTuple) -> Vec<ColorMatrix> {
    let Some(field) = xs.first().map(|x| x.matrix().field()) else {
        return xs;
    };
    let m = tuple.len();
    let mut out = Vec::new();
    for d in tuple.group().elements() {
        let mut ech = Echelon::new(field, m * m);
        for x in xs.iter().filter(|x| x.degree() == Some(d)) {
            ech.insert(x.matrix().as_slice());
        }
        for v in ech.basis() {
            out.push(ColorMatrix::from_parts(Matrix::from_flat(field, m, m, v.clone()), Some(d)));
        }
    }
    out.sort_by_key(ColorMatrix::height);
    out
}

/// Outcome of an independent replay of a decomposition against its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgmuCheck {
    /// Conjugating each stage's input by its trace product lands exactly in units ⊕ residual.
    pub replay: bool,
    /// The reported conjugator equals the product of the stage conjugators and of the full trace.
    pub conjugator: bool,
    pub unit_shape: bool,
    /// Row `k` of every later residual element vanishes for each unit `u_{i,k}`.
    pub row_annihilation: bool,
    /// Every unit commutes with every residual element.
    pub brackets: bool,
    pub dimension: bool,
    /// No row index reappears as a column index.
    pub indices_disjoint: bool,
    pub residual_zero: bool,
    /// Zero rows and columns of each stage image were already zero before it. Informational.
    pub zero_pattern_preserved: bool,
}

impl HgmuCheck {
    pub fn passed(&self) -> bool {
        self.replay
            && self.conjugator
            && self.unit_shape
            && self.row_annihilation
            && self.brackets
            && self.dimension
            && self.indices_disjoint
            && self.residual_zero
    }
}

/// Replays a decomposition with explicit matrix products and re-checks every invariant.
pub fn check_hgmu(input: &GradedSubalgebra, dec: &HgmuDecomposition, eps: &BiCharacterTable) -> HgmuCheck {
    let m = input.m();
    let field = eps.field();
    let mut report = HgmuCheck {
        replay: true,
        conjugator: true,
        unit_shape: true,
        row_annihilation: true,
        brackets: true,
        dimension: true,
        indices_disjoint: true,
        residual_zero: true,
        zero_pattern_preserved: true,
    };

    let mut product = Matrix::identity(field, m);
    let mut current: Vec<Matrix> = input.basis().iter().map(|x| x.matrix().clone()).collect();
    for stage in &dec.rows {
        let t = trace_product(&stage.trace, field, m);
        product = product.mul(&t);
        let Some(t_inv) = t.inverse() else {
            report.replay = false;
            break;
        };
        let images: Vec<Matrix> = current.iter().map(|x| t_inv.mul(x).mul(&t)).collect();
        for (x, y) in current.iter().zip(&images) {
            if replay(&stage.trace, x) != *y {
                report.replay = false;
            }
            if !zero_pattern_kept(x, y) {
                report.zero_pattern_preserved = false;
            }
        }

        let mut residual_span = Echelon::new(field, m * m);
        for r in &stage.residual {
            residual_span.insert(r.matrix().as_slice());
        }
        for y in &images {
            let mut z = y.clone();
            for (u, &k) in stage.units.iter().zip(&stage.columns) {
                z = z.add_scaled(field.neg(y.get(stage.row, k)), u.matrix());
            }
            if !residual_span.contains(z.as_slice()) {
                report.replay = false;
            }
        }
        // units ⊕ residual must not be larger than the image space
        let mut image_span = Echelon::new(field, m * m);
        for y in &images {
            image_span.insert(y.as_slice());
        }
        let parts = stage.units.iter().chain(&stage.residual);
        if parts.clone().any(|p| !image_span.contains(p.matrix().as_slice()))
            || stage.units.len() + residual_span.rank() != image_span.rank()
        {
            report.replay = false;
        }

        for (u, &k) in stage.units.iter().zip(&stage.columns) {
            if !is_generalized_unit(u.matrix(), stage.row, k) || !u.is_consistent_with(&dec.tuple) {
                report.unit_shape = false;
            }
            for r in &stage.residual {
                if r.matrix().row(k).iter().any(|v| !v.is_zero()) {
                    report.row_annihilation = false;
                }
                match color_bracket(u, r, eps) {
                    Ok(b) if b.matrix().is_zero() => {}
                    _ => report.brackets = false,
                }
            }
        }
        current = stage.residual.iter().map(|r| r.matrix().clone()).collect();
    }
    report.residual_zero = current.iter().all(Matrix::is_zero);
    report.conjugator = product == dec.conjugator && trace_product(&dec.trace, field, m) == dec.conjugator;
    report.dimension = dec.rows.iter().map(|r| r.columns.len()).sum::<usize>() == input.dim() && dec.dim == input.dim();
    let firsts: Vec<usize> = dec.rows.iter().map(|r| r.row).collect();
    report.indices_disjoint = dec.rows.iter().flat_map(|r| &r.columns).all(|c| !firsts.contains(c));
    report
}

fn zero_pattern_kept(before: &Matrix, after: &Matrix) -> bool {
    let n = before.rows();
    let zero_row = |x: &Matrix, s: usize| x.row(s).iter().all(|v| v.is_zero());
    let zero_col = |x: &Matrix, s: usize| x.column(s).iter().all(|v| v.is_zero());
    (0..n).all(|s| (!zero_row(after, s) || zero_row(before, s)) && (!zero_col(after, s) || zero_col(before, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingGroup;
    use crate::scalars::FieldSpec;

    fn f5() -> FieldSpec {
        FieldSpec::new(5, 1).unwrap()
    }

    fn eps() -> BiCharacterTable {
        BiCharacterTable::trivial(GradingGroup::trivial(), f5())
    }

    #[test]
    fn block_algebra_is_already_in_unit_form() {
        let f = f5();
        let t = GradedTuple::trivial(4);
        let basis: Vec<ColorMatrix> =
            [(0, 2), (0, 3), (1, 2), (1, 3)].iter().map(|&(i, j)| ColorMatrix::unit(&t, f, i, j)).collect();
        let a = GradedSubalgebra::new(t, basis).unwrap();
        let dec = hgmu_decompose(&a, &eps()).unwrap();
        assert_eq!(dec.conjugator, Matrix::identity(f, 4));
        assert_eq!(dec.row_sizes(), vec![2, 2]);
        assert_eq!(dec.rows[0].columns, vec![2, 3]);
        assert_eq!(dec.rows[1].row, 1);
        assert!(check_hgmu(&a, &dec, &eps()).passed());
    }

    #[test]
    fn single_element_needs_one_transvection() {
        let f = f5();
        let t = GradedTuple::trivial(3);
        let x = ColorMatrix::infer(Matrix::unit(f, 3, 0, 1).add(&Matrix::unit(f, 3, 0, 2)), &t).unwrap();
        let a = GradedSubalgebra::new(t, vec![x]).unwrap();
        let dec = hgmu_decompose(&a, &eps()).unwrap();
        assert_eq!(dec.rows.len(), 1);
        assert_eq!(dec.rows[0].columns, vec![1]);
        assert_eq!(dec.rows[0].units[0].matrix(), &Matrix::unit(f, 3, 0, 1));
        assert_eq!(dec.trace, vec![ElementaryConjugator::T { i: 1, j: 2, a: f.elem(-1) }]);
        assert!(check_hgmu(&a, &dec, &eps()).passed());
    }

    #[test]
    fn zero_algebra() {
        let a = GradedSubalgebra::zero(GradedTuple::trivial(3));
        let dec = hgmu_decompose(&a, &eps()).unwrap();
        assert!(dec.rows.is_empty());
        assert_eq!(dec.conjugator, Matrix::identity(f5(), 3));
        assert!(check_hgmu(&a, &dec, &eps()).passed());
    }

    #[test]
    fn rejects_non_triangular_and_non_abelian() {
        let f = f5();
        let t = GradedTuple::trivial(3);
        let a = GradedSubalgebra::new(t.clone(), vec![ColorMatrix::unit(&t, f, 1, 0)]).unwrap();
        assert_eq!(hgmu_decompose(&a, &eps()), Err(ReduceError::NotStrictlyTriangular(0)));
        let a = GradedSubalgebra::new(t.clone(), vec![ColorMatrix::unit(&t, f, 0, 1), ColorMatrix::unit(&t, f, 1, 2)])
            .unwrap();
        assert_eq!(hgmu_decompose(&a, &eps()), Err(ReduceError::NotAbelian));
    }

    #[test]
    fn scaled_rows_are_renormalized() {
        // 2e12 + 3e13 and e14 share row 0; the d-type step must not break the first unit.
        let f = f5();
        let t = GradedTuple::trivial(4);
        let x = Matrix::unit(f, 4, 0, 1).scale(f.elem(2)).add(&Matrix::unit(f, 4, 0, 2).scale(f.elem(3)));
        let y = Matrix::unit(f, 4, 0, 3).scale(f.elem(4)).add(&Matrix::unit(f, 4, 0, 2));
        let basis = vec![ColorMatrix::infer(x, &t).unwrap(), ColorMatrix::infer(y, &t).unwrap()];
        let a = GradedSubalgebra::new(t, basis).unwrap();
        let dec = hgmu_decompose(&a, &eps()).unwrap();
        assert_eq!(dec.row_sizes(), vec![2]);
        assert!(check_hgmu(&a, &dec, &eps()).passed(), "{:?}", check_hgmu(&a, &dec, &eps()));
    }
}
