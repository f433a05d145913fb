//! Shared oracles, independent of the library's computation paths.
//!
//! Both oracles work from the closed form of the qwz Bloch vector
//! d(k) = (sin 2πk₁, sin 2πk₂, m − cos 2πk₁ − cos 2πk₂); the library is
//! never called. For H = d·σ the positive-subspace projector is
//! p = (1 + d̂·σ)/2 and its Chern number is the mapping degree of
//! d̂: T² → S², which the two oracles evaluate in unrelated ways.

use std::f64::consts::{PI, TAU};

fn qwz_d(m: f64, k1: f64, k2: f64) -> [f64; 3] {
    let (a, b) = (TAU * k1, TAU * k2);
    [a.sin(), b.sin(), m - a.cos() - b.cos()]
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Berry-curvature Riemann sum for the positive-subspace projector:
/// C = (1/4π) ∫ d̂ · (∂₁d̂ × ∂₂d̂), central finite differences on an n×n
/// grid. Second-order accurate, so n = 512 resolves integers to ~1e-4.
pub fn berry_riemann_qwz(m: f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (k1, k2) = (i as f64 * h, j as f64 * h);
            let d = unit(qwz_d(m, k1, k2));
            let dp1 = unit(qwz_d(m, k1 + h, k2));
            let dm1 = unit(qwz_d(m, k1 - h, k2));
            let dp2 = unit(qwz_d(m, k1, k2 + h));
            let dm2 = unit(qwz_d(m, k1, k2 - h));
            let d1 = [
                (dp1[0] - dm1[0]) / (2.0 * h),
                (dp1[1] - dm1[1]) / (2.0 * h),
                (dp1[2] - dm1[2]) / (2.0 * h),
            ];
            let d2 = [
                (dp2[0] - dm2[0]) / (2.0 * h),
                (dp2[1] - dm2[1]) / (2.0 * h),
                (dp2[2] - dm2[2]) / (2.0 * h),
            ];
            total += dot(d, cross(d1, d2));
        }
    }
    total * h * h / (4.0 * PI)
}

/// Analytic mapping degree of d̂: T² → S² by counting preimages of the
/// north pole. sin vanishes only at the four momenta with coordinates in
/// {0, 1/2}; a preimage needs d₃ > 0 there and contributes the local
/// orientation sign det ∂(d₁,d₂)/∂(k₁,k₂) ∝ cos(2πk₁)·cos(2πk₂).
#[allow(dead_code)] // used by the oracles test binary, not by acceptance
pub fn qwz_degree(m: f64) -> i64 {
    let mut degree = 0i64;
    for k1 in [0.0, 0.5] {
        for k2 in [0.0f64, 0.5] {
            let d3 = m - (TAU * k1).cos() - (TAU * k2).cos();
            if d3 > 0.0 {
                let orientation = (TAU * k1).cos() * (TAU * k2).cos();
                degree += orientation.signum() as i64;
            }
        }
    }
    degree
}
