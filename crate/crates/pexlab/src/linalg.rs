//! Dense complex linear algebra helpers.
//!
//! Thin wrappers around nalgebra: full spectra via complex Schur, largest
//! singular values, and deterministic-start power iterations for the large
//! conjugated products where an O(n³) factorization would dominate the run.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, C64};

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// All eigenvalues of a square complex matrix via the Schur form.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let dim = m.nrows();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let schur = m
        .clone()
        .try_schur(1e-14, 200 * dim.max(10))
        .ok_or(Error::EigenFailure { dim })?;
    let t = schur.unpack().1;
    let mut eigs: Vec<C64> = (0..dim).map(|i| t[(i, i)]).collect();
    eigs.sort_by(|a, b| {
        b.norm()
            .partial_cmp(&a.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal))
            .then_with(|| a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(eigs)
}

/// Spectral radius (largest eigenvalue modulus).
pub fn spectral_radius(m: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.first().map(|z| z.norm()).unwrap_or(0.0))
}

/// Largest singular value by full SVD; intended for moderate dimensions.
pub fn operator_norm_svd(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

fn seeded_unit_vector(dim: usize) -> CVector {
    // fixed quasi-random start, full support, deterministic
    let mut v = CVector::from_fn(dim, |i, _| {
        let t = (i as f64 + 1.0) * 0.754_877_666_246_692_9;
        let u = (i as f64 + 1.0) * 0.569_840_290_998_053_3;
        C64::new((t - t.floor()) - 0.5 + 1e-3, (u - u.floor()) - 0.5)
    });
    let n = v.norm();
    v /= C64::new(n, 0.0);
    v
}

/// Largest singular value via power iteration on `MᴴM`, never forming the
/// product. Deterministic start; relative tolerance on the Rayleigh quotient.
pub fn operator_norm_power(m: &CMatrix, max_iters: usize, rel_tol: f64) -> f64 {
    let dim = m.ncols();
    if dim == 0 {
        return 0.0;
    }
    let mh = m.adjoint();
    let mut v = seeded_unit_vector(dim);
    let mut prev = 0.0_f64;
    for _ in 0..max_iters {
        let w = &mh * (m * &v);
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let cur = norm; // Rayleigh quotient of MᴴM at unit v
        v = w / C64::new(norm, 0.0);
        if (cur - prev).abs() <= rel_tol * cur.max(1e-300) {
            return cur.sqrt();
        }
        prev = cur;
    }
    prev.sqrt()
}

/// Largest eigenvalue of a Hermitian positive semidefinite matrix by power
/// iteration with a deterministic start.
pub fn hermitian_lmax_power(p: &CMatrix, max_iters: usize, rel_tol: f64) -> f64 {
    let dim = p.ncols();
    if dim == 0 {
        return 0.0;
    }
    let mut v = seeded_unit_vector(dim);
    let mut prev = 0.0_f64;
    for _ in 0..max_iters {
        let w = p * &v;
        let cur = w.norm();
        if cur == 0.0 {
            return 0.0;
        }
        v = w / C64::new(cur, 0.0);
        if (cur - prev).abs() <= rel_tol * cur.max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Dominant eigenvector by normalized power iteration; returns the vector
/// scaled so its leading entry is the dominant-eigenvalue estimate times the
/// previous normalization (caller renormalizes to taste).
pub fn dominant_eigenvector(m: &CMatrix, iters: usize) -> CVector {
    let mut v = seeded_unit_vector(m.ncols());
    for _ in 0..iters {
        v = m * v;
        let n = v.norm();
        if n == 0.0 {
            return v;
        }
        v /= C64::new(n, 0.0);
    }
    v
}
