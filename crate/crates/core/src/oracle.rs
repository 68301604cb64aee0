//! Brute-force reference computations for cross-checking the production
//! paths in tests. They deliberately avoid sharing code with `forward` and
//! `reconstruction` and are only meant for small instances.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forward::SensingMatrix;
use crate::reconstruction::ReflectivityImage;

fn mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// `A x`, row by row.
pub fn oracle_dense_product(a: &SensingMatrix, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != a.cols() {
        return Err(Error::Shape {
            what: "oracle product operand",
            expected: a.cols(),
            actual: x.len(),
        });
    }
    let mut out = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut acc = (0.0, 0.0);
        for (n, xn) in x.iter().enumerate() {
            let e = a.get(i, n);
            let t = mul((e.re, e.im), (xn.re, xn.im));
            acc = (acc.0 + t.0, acc.1 + t.1);
        }
        out.push(Complex64::new(acc.0, acc.1));
    }
    Ok(out)
}

/// Forms the `N x M` conjugate transpose explicitly, then multiplies.
pub fn oracle_adjoint(a: &SensingMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if b.len() != a.rows() {
        return Err(Error::Shape {
            what: "oracle adjoint operand",
            expected: a.rows(),
            actual: b.len(),
        });
    }
    let adjoint: Vec<Vec<(f64, f64)>> = (0..a.cols())
        .map(|n| {
            (0..a.rows())
                .map(|i| {
                    let e = a.get(i, n);
                    (e.re, -e.im)
                })
                .collect()
        })
        .collect();
    Ok(adjoint
        .iter()
        .map(|row| {
            let mut acc = (0.0, 0.0);
            for (h, bi) in row.iter().zip(b) {
                let t = mul(*h, (bi.re, bi.im));
                acc = (acc.0 + t.0, acc.1 + t.1);
            }
            Complex64::new(acc.0, acc.1)
        })
        .collect())
}

/// Every pixel whose magnitude is within `tol` of the image maximum.
pub fn oracle_grid_argmax(img: &ReflectivityImage, tol: f64) -> Result<Vec<usize>> {
    if img.is_empty() {
        return Err(Error::InvalidArgument("argmax of an empty image".into()));
    }
    let mags: Vec<f64> = img
        .values()
        .iter()
        .map(|v| (v.re * v.re + v.im * v.im).sqrt())
        .collect();
    let mut max = f64::NEG_INFINITY;
    for &m in &mags {
        if m > max {
            max = m;
        }
    }
    Ok(mags
        .iter()
        .enumerate()
        .filter(|(_, m)| **m >= max - tol)
        .map(|(n, _)| n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::PixelGrid;

    fn matrix() -> SensingMatrix {
        // 2 x 3, column-major
        let e: Vec<_> = (0..6)
            .map(|t| Complex64::from_polar(1.0, 0.7 * t as f64))
            .collect();
        SensingMatrix::from_columns(2, 3, e).unwrap()
    }

    #[test]
    fn indicator_selects_column() {
        let a = matrix();
        let x = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert_eq!(oracle_dense_product(&a, &x).unwrap(), a.column(1));
        let zero = [Complex64::new(0.0, 0.0); 3];
        assert!(oracle_dense_product(&a, &zero)
            .unwrap()
            .iter()
            .all(|v| v.norm() == 0.0));
        let two = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let b = oracle_dense_product(&a, &two).unwrap();
        for (i, bi) in b.iter().enumerate() {
            assert!((bi - (a.get(i, 0) + a.get(i, 2))).norm() < 1e-15);
        }
        assert!(oracle_dense_product(&a, &zero[..2]).is_err());
    }

    #[test]
    fn adjoint_cases() {
        let a = matrix();
        let x = oracle_adjoint(&a, a.column(2)).unwrap();
        assert!((x[2] - Complex64::new(2.0, 0.0)).norm() < 1e-15);

        let theta = 0.3;
        let one =
            SensingMatrix::from_columns(1, 1, vec![Complex64::from_polar(1.0, -theta)]).unwrap();
        let x = oracle_adjoint(&one, &[Complex64::new(1.0, 0.0)]).unwrap();
        assert!((x[0] - Complex64::from_polar(1.0, theta)).norm() < 1e-15);
        assert!(oracle_adjoint(&one, &[]).is_err());
    }

    #[test]
    fn argmax_ties() {
        let grid = PixelGrid::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let flat = ReflectivityImage::new(grid, vec![Complex64::new(1.0, 1.0); 4]).unwrap();
        assert_eq!(oracle_grid_argmax(&flat, 0.0).unwrap(), vec![0, 1, 2, 3]);
        let mut v = vec![Complex64::new(0.5, 0.0); 4];
        v[3] = Complex64::new(0.0, -2.0);
        let img = ReflectivityImage::new(grid, v).unwrap();
        assert_eq!(oracle_grid_argmax(&img, 1e-12).unwrap(), vec![3]);
    }
}
