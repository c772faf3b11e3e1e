//! Householder least squares with detection of dependent columns.

/// A column whose remainder after projecting out the accepted columns is
/// below this fraction of its own norm counts as linearly dependent.
pub(crate) const DEPENDENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Dependent {
    pub column: usize,
    /// Accepted columns that contribute to the dependent one.
    pub on: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Solution {
    /// One entry per input column; dependent columns get 0.
    pub coefficients: Vec<f64>,
    pub dependent: Vec<Dependent>,
}

fn norm(v: &[f64]) -> f64 {
    // scaled to avoid overflow on large magnitudes
    let scale = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * v.iter().map(|x| (x / scale).powi(2)).sum::<f64>().sqrt()
}

/// Solves `min |A x - b|` for `A` given column by column.
///
/// Columns are processed left to right. A column that is numerically a
/// combination of the columns accepted before it (or that arrives after the
/// rank has reached the row count) is reported in `dependent` and gets a
/// zero coefficient; the remaining columns form a full-rank problem solved by
/// back substitution on `R`.
pub(crate) fn least_squares(columns: &[Vec<f64>], target: &[f64]) -> Solution {
    let rows = target.len();
    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut b = target.to_vec();
    let original_norms: Vec<f64> = columns.iter().map(|c| norm(c)).collect();
    // accepted[p] = input column index whose pivot sits on row p
    let mut accepted: Vec<usize> = Vec::new();
    let mut dependent = Vec::new();

    for c in 0..a.len() {
        let rank = accepted.len();
        let tail = if rank < rows { norm(&a[c][rank..]) } else { 0.0 };
        if original_norms[c] == 0.0 || tail <= DEPENDENCE_TOL * original_norms[c] {
            let on = contributors(&a, &accepted, &original_norms, c);
            dependent.push(Dependent { column: c, on });
            continue;
        }

        let alpha = if a[c][rank] > 0.0 { -tail } else { tail };
        let mut v: Vec<f64> = a[c][rank..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let reflect = |col: &mut [f64]| {
            let dot: f64 = v.iter().zip(&col[rank..]).map(|(x, y)| x * y).sum();
            let f = 2.0 * dot / vv;
            for (y, x) in col[rank..].iter_mut().zip(&v) {
                *y -= f * x;
            }
        };
        for later in a.iter_mut().skip(c + 1) {
            reflect(later);
        }
        reflect(&mut b);
        a[c][rank] = alpha;
        for x in a[c][rank + 1..].iter_mut() {
            *x = 0.0;
        }
        accepted.push(c);
    }

    let solved = back_substitute(&a, &accepted, &b);
    let mut coefficients = vec![0.0; columns.len()];
    for (p, &c) in accepted.iter().enumerate() {
        coefficients[c] = solved[p];
    }
    Solution { coefficients, dependent }
}

/// Solves the upper-triangular system over the accepted columns.
fn back_substitute(a: &[Vec<f64>], accepted: &[usize], rhs: &[f64]) -> Vec<f64> {
    let k = accepted.len();
    let mut x = vec![0.0; k];
    for p in (0..k).rev() {
        let mut s = rhs[p];
        for q in p + 1..k {
            s -= a[accepted[q]][p] * x[q];
        }
        x[p] = s / a[accepted[p]][p];
    }
    x
}

/// Accepted columns with a non-negligible share in the projection of column `c`.
fn contributors(a: &[Vec<f64>], accepted: &[usize], norms: &[f64], c: usize) -> Vec<usize> {
    if norms[c] == 0.0 || accepted.is_empty() {
        return Vec::new();
    }
    let x = back_substitute(a, accepted, &a[c]);
    let mut on: Vec<usize> = accepted
        .iter()
        .zip(&x)
        .filter(|(&col, coef)| coef.abs() * norms[col] > 1e-8 * norms[c])
        .map(|(&col, _)| col)
        .collect();
    on.sort_unstable();
    on
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let ones = vec![1.0; 4];
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 + 3.0 * v).collect();
        let s = least_squares(&[ones, x], &y);
        assert!(s.dependent.is_empty());
        assert!((s.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((s.coefficients[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn overdetermined_mean() {
        let s = least_squares(&[vec![1.0; 3]], &[1.0, 2.0, 6.0]);
        assert!((s.coefficients[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn flags_dependent_columns() {
        let ones = vec![1.0; 4];
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let combo: Vec<f64> = x.iter().map(|v| 1.0 - 2.0 * v).collect();
        let zero = vec![0.0; 4];
        let s = least_squares(&[ones, x, combo, zero], &[1.0, 0.0, 2.0, 1.0]);
        assert_eq!(
            s.dependent,
            vec![Dependent { column: 2, on: vec![0, 1] }, Dependent { column: 3, on: vec![] }]
        );
        assert_eq!(s.coefficients[2], 0.0);
    }

    #[test]
    fn more_columns_than_rows() {
        let s = least_squares(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]], &[1.0, 2.0]);
        assert_eq!(s.dependent.len(), 1);
        assert_eq!(s.dependent[0].column, 2);
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((s.coefficients[1] - 2.0).abs() < 1e-12);
    }
}
