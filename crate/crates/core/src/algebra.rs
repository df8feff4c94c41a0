//! Exact rational scalars, 2x2 matrices, and expanding quadratic polynomials.
//!
//! Everything downstream of this module does arithmetic in `Rational`;
//! no decision anywhere in the engine touches floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d = 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Canonical text form: `"n"` when integral, else `"n/d"`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Monic quadratic `f(x) = x^2 + px + q`, guaranteed expanding on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    p: i64,
    q: i64,
}

impl QuadraticPoly {
    /// Requires `|q| >= 2` and both roots of modulus strictly greater than 1.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q.abs() < 2 {
            return Err(Error::InvalidInput(format!(
                "|q| must be at least 2, got q = {q}"
            )));
        }
        if !is_expanding(p, q) {
            return Err(Error::NotExpanding { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2")?;
        match self.p {
            0 => {}
            1 => write!(f, "+x")?,
            -1 => write!(f, "-x")?,
            p if p > 0 => write!(f, "+{p}x")?,
            p => write!(f, "{p}x")?,
        }
        if self.q >= 0 {
            write!(f, "+{}", self.q)
        } else {
            write!(f, "{}", self.q)
        }
    }
}

/// True iff both roots of `x^2 + px + q` have modulus strictly greater than 1.
///
/// Schur-Cohn on the reciprocal polynomial `qx^2 + px + 1`: both of its roots
/// lie strictly inside the unit disc iff `|1/q| < 1` and `|p/q| < 1 + 1/q`.
/// Evaluated in exact rationals, so boundary pairs are decided correctly.
pub fn is_expanding(p: i64, q: i64) -> bool {
    if q == 0 {
        return false;
    }
    let inv_q = ratio(1, q);
    if inv_q.abs() >= rat(1) {
        return false;
    }
    ratio(p, q).abs() < rat(1) + inv_q
}

/// `p^2 - 4q`.
pub fn discriminant(poly: &QuadraticPoly) -> i64 {
    poly.p * poly.p - 4 * poly.q
}

/// Flip `p` to `|p|`. Connectivity is invariant under this flip, so callers
/// may normalize before estimating bounds.
pub fn normalize_sign(poly: &QuadraticPoly) -> (QuadraticPoly, bool) {
    if poly.p < 0 {
        (
            QuadraticPoly {
                p: -poly.p,
                q: poly.q,
            },
            true,
        )
    } else {
        (*poly, false)
    }
}

/// Companion matrix `[[0, -q], [1, -p]]` of `x^2 + px + q`.
///
/// In the basis `{v, Av}` the action of `A` on coordinate pairs is exactly
/// this matrix, so all coordinate computations use it directly.
pub fn companion(poly: &QuadraticPoly) -> Mat2 {
    Mat2::new(rat(0), rat(-poly.q), rat(1), rat(-poly.p))
}

/// 2x2 rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(rat(1), rat(0), rat(0), rat(1))
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Mat2::new(
            &self.d / &det,
            -&self.b / &det,
            -&self.c / &det,
            &self.a / &det,
        ))
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }

    pub fn mul_vec(&self, v: &(Rational, Rational)) -> (Rational, Rational) {
        (
            &self.a * &v.0 + &self.b * &v.1,
            &self.c * &v.0 + &self.d * &v.1,
        )
    }

    pub fn pow(&self, mut n: u32) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Induced 1-norm: max absolute column sum.
    pub fn norm_1(&self) -> Rational {
        let col0 = self.a.abs() + self.c.abs();
        let col1 = self.b.abs() + self.d.abs();
        col0.max(col1)
    }

    /// Induced infinity-norm: max absolute row sum.
    pub fn norm_inf(&self) -> Rational {
        let row0 = self.a.abs() + self.b.abs();
        let row1 = self.c.abs() + self.d.abs();
        row0.max(row1)
    }
}
