//! Small helpers over dense complex matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entrywise absolute value.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise |a - a†|.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// (a + a†)/2.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Entrywise complex conjugate (no transpose).
pub fn conj_entrywise(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

/// Largest entrywise |u·u† - 1|.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs(&(u * u.adjoint() - CMatrix::identity(n, n)))
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
/// ascending (stable sort) and eigenvector columns permuted to match.
/// The input is assumed Hermitian; only its Hermitian part is used.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("hermitian eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Operator (spectral) norm via the Hermitian eigenproblem of a†a.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let (vals, _) = eigh(&gram);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Determinant phase z/|z| of the determinant of a small square matrix.
/// Returns the raw determinant as well so callers can test |det|.
pub fn det_with_phase(m: &CMatrix) -> (Complex64, Complex64) {
    let det = if m.nrows() == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        m.clone().determinant()
    };
    let norm = det.norm();
    let phase = if norm == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        det / norm
    };
    (det, phase)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_sorts_ascending() {
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[cplx(1.0, 0.0), cplx(0.0, -2.0), cplx(0.0, 2.0), cplx(-1.0, 0.0)],
        );
        let (vals, vecs) = eigh(&h);
        assert!(vals[0] < vals[1]);
        for (i, &val) in vals.iter().enumerate() {
            let v = vecs.column(i);
            let r = &h * v - v * cplx(val, 0.0);
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn operator_norm_of_pauli_like_matrix() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[cplx(0.0, 0.0), cplx(3.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)],
        );
        assert!((operator_norm(&m) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hermitize_is_exact_for_hermitian_input() {
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[cplx(2.0, 0.0), cplx(1.0, 1.0), cplx(1.0, -1.0), cplx(-0.5, 0.0)],
        );
        assert_eq!(hermiticity_defect(&h), 0.0);
        assert_eq!(hermitize(&h), h);
    }
}
