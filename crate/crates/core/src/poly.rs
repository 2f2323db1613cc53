//! Dense real polynomials, coefficients in ascending order of degree.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub(crate) fn scale(a: &[f64], k: f64) -> Vec<f64> {
    a.iter().map(|x| x * k).collect()
}

#[cfg(test)]
pub(crate) fn eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Drops trailing (highest degree) coefficients that are exactly zero.
pub(crate) fn trim(mut a: Vec<f64>) -> Vec<f64> {
    while a.len() > 1 && *a.last().unwrap() == 0.0 {
        a.pop();
    }
    a
}

/// All complex roots via the eigenvalues of the companion matrix.
pub(crate) fn roots(a: &[f64]) -> Vec<Complex64> {
    let a = trim(a.to_vec());
    let n = a.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = a[n];
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -a[i] / lead;
    }
    companion.complex_eigenvalues().iter().copied().collect()
}
