//! Exact Gaussian elimination over field coefficients.
//!
//! Used by the multigraded membership oracle: given candidate vectors and a
//! target in a finite coordinate space, find an exact linear combination or
//! report that none exists.

use crate::error::{Error, Result};
use crate::ring::{Coeff, CoefficientRing};

/// Solve `sum_i x_i * columns[i] = target` over the (field) ring.
/// Returns `None` when the target is outside the span. All vectors must
/// share the coordinate dimension.
pub fn solve_linear_combination(
    ring: CoefficientRing,
    columns: &[Vec<Coeff>],
    target: &[Coeff],
) -> Result<Option<Vec<Coeff>>> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    let dim = target.len();
    debug_assert!(columns.iter().all(|c| c.len() == dim));
    let width = columns.len();

    // Augmented matrix [columns | target], row-reduced in place.
    let mut matrix: Vec<Vec<Coeff>> = (0..dim)
        .map(|r| {
            columns
                .iter()
                .map(|c| c[r].clone())
                .chain([target[r].clone()])
                .collect()
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(found) = (pivot_row..dim).find(|&r| !ring.is_zero(&matrix[r][col])) else {
            continue;
        };
        matrix.swap(pivot_row, found);
        let inv = ring
            .inv(&matrix[pivot_row][col])?
            .expect("pivot is nonzero");
        for entry in &mut matrix[pivot_row][col..] {
            *entry = ring.mul(entry, &inv);
        }
        for r in 0..dim {
            if r == pivot_row || ring.is_zero(&matrix[r][col]) {
                continue;
            }
            let factor = matrix[r][col].clone();
            for c in col..=width {
                let delta = ring.mul(&factor, &matrix[pivot_row][c]);
                matrix[r][c] = ring.sub(&matrix[r][c], &delta);
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == dim {
            break;
        }
    }

    // Inconsistent when a zero row has a nonzero target entry.
    for r in pivot_row..dim {
        if !ring.is_zero(&matrix[r][width]) {
            return Ok(None);
        }
    }

    let mut solution = vec![ring.zero(); width];
    for (row, &col) in pivot_cols.iter().enumerate() {
        solution[col] = matrix[row][width].clone();
    }
    Ok(Some(solution))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> CoefficientRing {
        CoefficientRing::prime_field(p).unwrap()
    }

    fn vecs(ring: CoefficientRing, rows: &[&[i64]]) -> Vec<Vec<Coeff>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn solves_over_rationals() {
        let qq = CoefficientRing::Rationals;
        let columns = vecs(qq, &[&[1, 0, 1], &[0, 1, 1]]);
        let target: Vec<Coeff> = [3, 5, 8].iter().map(|&v| qq.from_i64(v)).collect();
        let sol = solve_linear_combination(qq, &columns, &target)
            .unwrap()
            .unwrap();
        assert_eq!(sol, vec![qq.from_i64(3), qq.from_i64(5)]);
    }

    #[test]
    fn detects_outside_span() {
        let qq = CoefficientRing::Rationals;
        let columns = vecs(qq, &[&[1, 1, 0]]);
        let target: Vec<Coeff> = [1, 0, 0].iter().map(|&v| qq.from_i64(v)).collect();
        assert!(solve_linear_combination(qq, &columns, &target)
            .unwrap()
            .is_none());
    }

    #[test]
    fn solves_mod_two() {
        let f2 = gf(2);
        // (1,1,0) + (0,1,1) = (1,0,1) over GF(2).
        let columns = vecs(f2, &[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]);
        let target: Vec<Coeff> = [1, 0, 1].iter().map(|&v| f2.from_i64(v)).collect();
        let sol = solve_linear_combination(f2, &columns, &target)
            .unwrap()
            .unwrap();
        // Re-evaluate the combination.
        for r in 0..3 {
            let mut acc = f2.zero();
            for (x, c) in sol.iter().zip(&columns) {
                acc = f2.add(&acc, &f2.mul(x, &c[r]));
            }
            assert_eq!(acc, target[r]);
        }
    }

    #[test]
    fn rejects_integer_ring() {
        let zz = CoefficientRing::Integers;
        assert!(solve_linear_combination(zz, &[], &[]).is_err());
    }

    #[test]
    fn empty_columns_span_only_zero() {
        let qq = CoefficientRing::Rationals;
        let zero_target = vec![qq.zero(); 2];
        assert!(solve_linear_combination(qq, &[], &zero_target)
            .unwrap()
            .is_some());
        let target = vec![qq.one(), qq.zero()];
        assert!(solve_linear_combination(qq, &[], &target)
            .unwrap()
            .is_none());
    }
}
