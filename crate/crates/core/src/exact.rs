//! Exact arithmetic on powers of `i` and Gaussian integers.
//!
//! Every entry of the branch-pair tables lives in `{0, ±1, ±i}` and every
//! 𝒯-sum is a small Gaussian integer, so none of the calculus needs floats.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg};

use num_complex::Complex64;

/// `i^k`, stored as the exponent `k mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    /// `i^k` for any integer `k`.
    pub const fn i_pow(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub const fn exponent(self) -> u8 {
        self.0
    }

    pub const fn inv(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    /// Complex conjugate; equal to the inverse for a unit.
    pub const fn conj(self) -> Phase {
        self.inv()
    }

    pub const fn pow(self, k: u32) -> Phase {
        Phase(((self.0 as u64 * k as u64) % 4) as u8)
    }

    pub fn to_gauss(self) -> GaussInt {
        match self.0 {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        self.to_gauss().to_complex()
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase((self.0 + 2) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// A Gaussian integer `re + i·im`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub const fn is_real(self) -> bool {
        self.im == 0
    }

    /// The phase if this is one of `±1, ±i`.
    pub fn as_phase(self) -> Option<Phase> {
        match (self.re, self.im) {
            (1, 0) => Some(Phase::ONE),
            (0, 1) => Some(Phase::I),
            (-1, 0) => Some(Phase::MINUS_ONE),
            (0, -1) => Some(Phase::MINUS_I),
            _ => None,
        }
    }

    /// Exact power by repeated squaring. `z^0 = 1` for every `z`, zero
    /// included; callers wanting a support-preserving power use
    /// [`GaussInt::support_pow`].
    pub fn pow(self, mut k: u32) -> GaussInt {
        let mut base = self;
        let mut acc = GaussInt::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Like [`GaussInt::pow`] but zero stays zero at exponent 0.
    pub fn support_pow(self, k: u32) -> GaussInt {
        if self.is_zero() {
            GaussInt::ZERO
        } else {
            self.pow(k)
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl From<Phase> for GaussInt {
    fn from(p: Phase) -> Self {
        p.to_gauss()
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, rhs: GaussInt) {
        *self = *self + rhs;
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => f.write_str("i"),
            (0, -1) => f.write_str("-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}-{}i", -im),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}
