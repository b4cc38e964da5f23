//! Exact phase-one simplex over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Decides whether `{x >= 0 : A x = b}` is nonempty.
///
/// `a` holds the constraint rows. Bland's rule keeps the method finite on
/// degenerate problems, which are the norm here (repeated lattice points).
pub fn is_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let rhs = width - 1;

    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, x) in row.iter().enumerate() {
            t[j] = if flip { -x.clone() } else { x.clone() };
        }
        t[n + i] = BigRational::from_integer(BigInt::from(1));
        t[rhs] = b[i].abs();
        tableau.push(t);
    }
    // Reduced costs of the artificial objective; rhs entry is its value.
    let mut cost = vec![BigRational::zero(); width];
    for row in &tableau {
        for j in 0..n {
            cost[j] += &row[j];
        }
        cost[rhs] += &row[rhs];
    }
    tableau.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..rhs).find(|&j| tableau[m][j].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if tableau[i][enter].is_positive() {
                let ratio = &tableau[i][rhs] / &tableau[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // The artificial objective is bounded below by zero.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, row, enter);
        basis[row] = enter;
    }
    tableau[m][rhs].is_zero()
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (x, y) in r.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &factor * y;
            }
        }
    }
}

/// Whether `point` is a convex combination of `others`.
pub fn in_convex_hull(point: &[BigInt], others: &[Vec<BigInt>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let dim = point.len();
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|k| {
            others
                .iter()
                .map(|q| BigRational::from_integer(q[k].clone()))
                .collect()
        })
        .collect();
    let mut b: Vec<BigRational> = point
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    a.push(vec![
        BigRational::from_integer(BigInt::from(1));
        others.len()
    ]);
    b.push(BigRational::from_integer(BigInt::from(1)));
    is_feasible(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn midpoint_is_in_hull() {
        let others = vec![pt(&[1, 0, 0]), pt(&[1, 2, 0])];
        assert!(in_convex_hull(&pt(&[1, 1, 0]), &others));
        assert!(!in_convex_hull(&pt(&[1, 3, 0]), &others));
    }

    #[test]
    fn square_corner_is_extreme() {
        let corners = [
            pt(&[1, 0, 0]),
            pt(&[1, 2, 0]),
            pt(&[1, 0, 2]),
            pt(&[1, 2, 4]),
        ];
        for (i, p) in corners.iter().enumerate() {
            let rest: Vec<_> = corners
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            assert!(!in_convex_hull(p, &rest));
        }
        // Centre of the quadrilateral.
        assert!(in_convex_hull(&pt(&[1, 1, 1]), &corners));
    }

    #[test]
    fn infeasible_system() {
        let one = BigRational::from_integer(BigInt::from(1));
        let a = vec![vec![one.clone(), one.clone()]];
        let b = vec![-one];
        assert!(!is_feasible(&a, &b));
    }
}
