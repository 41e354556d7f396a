//! Dense complex matrices, Hermitian eigenvalues, and validated density
//! matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

/// Square complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        CMatrix { dim, data }
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(CMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `log2(dim)` when the dimension is a power of two.
    pub fn qubit_count(&self) -> Option<usize> {
        if self.dim.is_power_of_two() {
            Some(self.dim.trailing_zeros() as usize)
        } else {
            None
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] += v;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    fn check_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(CMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(CMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest `|m[r][c] - conj(m[c][r])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (a, b) = (self.dim, other.dim);
        CMatrix::from_fn(a * b, |r, c| {
            self.get(r / b, c / b) * other.get(r % b, c % b)
        })
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Householder reduction to a Hermitian tridiagonal form, a diagonal phase
/// change that makes the off-diagonal real, then implicit QL with Wilkinson
/// shifts. Only the Hermitian part of the input is meaningful.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.dim();
    if n == 0 {
        return Vec::new();
    }
    let mut a = m.data.clone();
    let mut off = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let m_len = n - k - 1;
        // column below the diagonal
        let x0 = a[(k + 1) * n + k];
        let tail: f64 = (k + 2..n).map(|r| a[r * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            off[k] = x0.norm();
            continue;
        }
        let alpha = libm::sqrt(x0.norm_sqr() + tail);
        let x0_abs = x0.norm();
        let phase = if x0_abs == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0_abs
        };
        let mut v: Vec<Complex64> = (k + 1..n).map(|r| a[r * n + k]).collect();
        v[0] += phase * alpha;
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm_sq;

        // p = beta * S v over the trailing block S
        let mut p = vec![ZERO; m_len];
        for i in 0..m_len {
            let row = (k + 1 + i) * n + k + 1;
            let mut acc = ZERO;
            for j in 0..m_len {
                acc += a[row + j] * v[j];
            }
            p[i] = acc * beta;
        }
        let vp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let half = beta * 0.5 * vp.re;
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * half).collect();
        for i in 0..m_len {
            let row = (k + 1 + i) * n + k + 1;
            for j in 0..m_len {
                a[row + j] -= v[i] * w[j].conj() + w[i] * v[j].conj();
            }
        }
        off[k] = alpha;
    }
    if n >= 2 {
        off[n - 2] = a[(n - 1) * n + n - 2].norm();
    }
    off[n - 1] = 0.0;

    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    tridiagonal_ql(&mut d, &mut off);
    d.sort_by(f64::total_cmp);
    d
}

/// Implicit QL on a symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `i` and `i + 1`). Eigenvalues are left
/// in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 200 {
                // No convergence; the remaining values are still a close
                // approximation.
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().map(|l| l.abs()).sum()
}

/// A Hermitian, unit-trace, positive semidefinite matrix over `k` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(m: CMatrix) -> Result<Self> {
        let rho = Self::without_positivity_check(m)?;
        let min = hermitian_eigenvalues(&rho.m).first().copied().unwrap_or(0.0);
        if min < -tol::DENSITY {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(rho)
    }

    /// Checks shape, Hermiticity and trace but not the spectrum. Used for
    /// partial traces of pure states, which are `M M†` by construction.
    pub(crate) fn without_positivity_check(m: CMatrix) -> Result<Self> {
        if !m.dim().is_power_of_two() {
            return Err(Error::NotPowerOfTwo { dim: m.dim() });
        }
        let deviation = m.hermitian_deviation();
        if deviation > tol::DENSITY {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol::DENSITY || tr.im.abs() > tol::DENSITY {
            return Err(Error::BadTrace { trace: tr.re });
        }
        Ok(DensityMatrix { m })
    }

    /// `I / 2^k`.
    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        DensityMatrix {
            m: CMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn qubit_count(&self) -> usize {
        self.m.dim().trailing_zeros() as usize
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        self.m.max_abs_diff(&other.m)
    }
}
