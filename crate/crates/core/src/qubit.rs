//! Single-qubit pure states and their Bloch vectors.

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

/// Real Bloch components `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Any point of the closed unit ball (with [`tol::UNIT_NORM`] slack).
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFiniteBloch);
        }
        let b = BlochVector { x, y, z };
        if b.norm_sq() > 1.0 + tol::UNIT_NORM {
            return Err(Error::BlochOutOfBall { norm: b.norm() });
        }
        Ok(b)
    }

    /// A point on the sphere given in spherical coordinates.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let st = libm::sin(theta);
        BlochVector {
            x: st * libm::cos(phi),
            y: st * libm::sin(phi),
            z: libm::cos(theta),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    pub fn is_pure(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol::UNIT_NORM
    }

    /// Component `b_j` for `j ∈ {1, 2, 3}`.
    pub fn component(&self, j: usize) -> Result<f64> {
        match j {
            1 => Ok(self.x),
            2 => Ok(self.y),
            3 => Ok(self.z),
            _ => Err(Error::ComponentOutOfRange { j }),
        }
    }

    pub fn max_abs_diff(&self, other: &BlochVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// Normalized qubit `amp0|0⟩ + amp1|1⟩` with a fixed global phase: `amp0`
/// real and non-negative, or `amp0 = 0` and `amp1` real positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureQubit {
    amp0: Complex64,
    amp1: Complex64,
}

impl PureQubit {
    pub const ZERO: PureQubit = PureQubit {
        amp0: Complex64::new(1.0, 0.0),
        amp1: Complex64::new(0.0, 0.0),
    };

    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm_sq = amp0.norm_sqr() + amp1.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        let r0 = amp0.norm();
        let (a0, a1) = if r0 > 0.0 {
            let undo = amp0.conj() / r0;
            (Complex64::new(r0, 0.0), amp1 * undo)
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(amp1.norm(), 0.0))
        };
        Ok(PureQubit { amp0: a0, amp1: a1 })
    }

    pub fn amp0(&self) -> Complex64 {
        self.amp0
    }

    pub fn amp1(&self) -> Complex64 {
        self.amp1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.amp0, self.amp1]
    }
}

/// `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a pure state.
pub fn bloch_from_state(s: &PureQubit) -> BlochVector {
    let c = s.amp0.conj() * s.amp1;
    BlochVector {
        x: 2.0 * c.re,
        y: 2.0 * c.im,
        z: s.amp0.norm_sqr() - s.amp1.norm_sqr(),
    }
}

/// Inverse of [`bloch_from_state`] on the unit sphere. Vectors within
/// [`tol::PURE_BLOCH`] of unit length are renormalized first.
pub fn state_from_bloch(b: &BlochVector) -> Result<PureQubit> {
    let norm = b.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > tol::PURE_BLOCH {
        return Err(Error::MixedBlochVector { norm });
    }
    let (x, y, z) = (b.x / norm, b.y / norm, b.z / norm);
    let c = libm::sqrt(((1.0 + z) * 0.5).max(0.0));
    let s = libm::sqrt(((1.0 - z) * 0.5).max(0.0));
    let phi = libm::atan2(y, x);
    let amp1 = Complex64::new(libm::cos(phi), libm::sin(phi)) * s;
    PureQubit::new(Complex64::new(c, 0.0), amp1)
}
