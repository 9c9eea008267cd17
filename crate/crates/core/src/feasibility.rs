//! Exact rational feasibility for systems `C x >= b, x >= 0`.
//!
//! Phase one of the simplex method over `BigRational`, with Bland's rule so
//! that degenerate pivots cannot cycle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl Constraint {
    pub fn new(coeffs: Vec<i64>, rhs: i64) -> Self {
        Self { coeffs: coeffs.into_iter().map(BigInt::from).collect(), rhs: rhs.into() }
    }
}

/// A point `x >= 0` satisfying every constraint, or `None` if there is none.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<BigRational>> {
    let rows = constraints.len();
    if rows == 0 {
        return Some(vec![BigRational::zero(); num_vars]);
    }
    let needs_artificial: Vec<bool> = constraints.iter().map(|c| !c.rhs.is_negative()).collect();
    let num_art = needs_artificial.iter().filter(|&&b| b).count();
    let ncols = num_vars + rows + num_art;
    let rhs_col = ncols;

    let mut tab = vec![vec![BigRational::zero(); ncols + 1]; rows];
    let mut basis = vec![0usize; rows];
    let mut is_art = vec![false; ncols];
    let mut next_art = num_vars + rows;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), num_vars, "constraint width mismatch");
        let row = &mut tab[i];
        if needs_artificial[i] {
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = BigRational::from_integer(a.clone());
            }
            row[num_vars + i] = -BigRational::one();
            row[next_art] = BigRational::one();
            row[rhs_col] = BigRational::from_integer(c.rhs.clone());
            basis[i] = next_art;
            is_art[next_art] = true;
            next_art += 1;
        } else {
            // -coeffs · x <= -rhs, slack is basic
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = BigRational::from_integer(-a.clone());
            }
            row[num_vars + i] = BigRational::one();
            row[rhs_col] = BigRational::from_integer(-c.rhs.clone());
            basis[i] = num_vars + i;
        }
    }

    // reduced costs of the phase-one objective (sum of artificials)
    let mut obj = vec![BigRational::zero(); ncols + 1];
    for (j, slot) in obj.iter_mut().enumerate().take(ncols) {
        if is_art[j] {
            *slot = BigRational::one();
        }
    }
    for i in 0..rows {
        if is_art[basis[i]] {
            for j in 0..=ncols {
                let v = tab[i][j].clone();
                obj[j] -= v;
            }
        }
    }

    while let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][rhs_col] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut tab, &mut obj, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !obj[rhs_col].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); num_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < num_vars {
            x[b] = tab[i][rhs_col].clone();
        }
    }
    debug_assert!(constraints.iter().all(|c| satisfies(c, &x)));
    Some(x)
}

fn pivot(tab: &mut [Vec<BigRational>], obj: &mut [BigRational], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for v in tab[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !obj[c].is_zero() {
        let f = obj[c].clone();
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

pub fn satisfies(c: &Constraint, x: &[BigRational]) -> bool {
    let lhs =
        c.coeffs.iter().zip(x).fold(BigRational::zero(), |acc, (a, v)| acc + BigRational::from_integer(a.clone()) * v);
    lhs >= BigRational::from_integer(c.rhs.clone()) && x.iter().all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible_system() {
        // x + y >= 2, x - y >= 1
        let cs = [Constraint::new(vec![1, 1], 2), Constraint::new(vec![1, -1], 1)];
        let x = feasible_point(2, &cs).unwrap();
        assert!(cs.iter().all(|c| satisfies(c, &x)));
    }

    #[test]
    fn infeasible_system() {
        // x - y >= 1, y - x >= 1
        let cs = [Constraint::new(vec![1, -1], 1), Constraint::new(vec![-1, 1], 1)];
        assert!(feasible_point(2, &cs).is_none());
    }

    #[test]
    fn upper_bounds_via_negative_rhs() {
        // -x >= -3 (x <= 3), x >= 3
        let cs = [Constraint::new(vec![-1], -3), Constraint::new(vec![1], 3)];
        let x = feasible_point(1, &cs).unwrap();
        assert_eq!(x[0], BigRational::from_integer(3.into()));
        let cs = [Constraint::new(vec![-1], -3), Constraint::new(vec![1], 4)];
        assert!(feasible_point(1, &cs).is_none());
    }

    #[test]
    fn degenerate_homogeneous_rows() {
        // many redundant homogeneous rows through the origin plus x1 >= 1
        let mut cs = vec![Constraint::new(vec![1, 0, 0], 1)];
        cs.push(Constraint::new(vec![-1, 1, 0], 0));
        cs.push(Constraint::new(vec![0, -1, 1], 0));
        cs.push(Constraint::new(vec![-1, 0, 1], 0));
        cs.push(Constraint::new(vec![1, 1, -1], 0));
        let x = feasible_point(3, &cs).unwrap();
        assert!(cs.iter().all(|c| satisfies(c, &x)));
    }
}
