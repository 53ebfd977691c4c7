//! Gaussian elimination over GF(q) on row-major `Vec<Vec<FieldElement>>`.

use crate::field::{FieldElement, FieldSpec};

pub(crate) type Matrix = Vec<Vec<FieldElement>>;

/// Reduced row echelon form with zero rows dropped, plus pivot columns.
pub(crate) fn rref(field: &FieldSpec, rows: &[Vec<FieldElement>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][col]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub(crate) fn rank(field: &FieldSpec, rows: &[Vec<FieldElement>], ncols: usize) -> usize {
    rref(field, rows, ncols).1.len()
}

/// A basis of `{x : rows · xᵀ = 0}`, one vector per free column in ascending
/// column order.
pub(crate) fn nullspace(field: &FieldSpec, rows: &[Vec<FieldElement>], ncols: usize) -> Matrix {
    let (red, pivots) = rref(field, rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_orthogonal_and_complementary() {
        let f = FieldSpec::prime(3).unwrap();
        let e = |v: &[u8]| v.iter().map(|&x| FieldElement(x)).collect::<Vec<_>>();
        let rows = vec![e(&[1, 2, 0, 1]), e(&[0, 1, 1, 2]), e(&[1, 0, 1, 0])];
        let r = rank(&f, &rows, 4);
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(r + ns.len(), 4);
        for v in &ns {
            for row in &rows {
                let dot = f.sum(row.iter().zip(v).map(|(&a, &b)| f.mul(a, b)));
                assert!(dot.is_zero());
            }
        }
    }
}
