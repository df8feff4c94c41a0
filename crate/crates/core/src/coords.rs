//! Coordinate sequences of `A^{-i}v` in the basis `{v, Av}` and rigorous
//! rational upper bounds for their absolute series sums.
//!
//! Writing `A^{-i}v = alpha_i v + beta_i Av`, both sequences satisfy the
//! three-term recurrence `q x_{i+2} + p x_{i+1} + x_i = 0` with seeds
//! `alpha_1 = -p/q, alpha_2 = (p^2-q)/q^2, beta_1 = -1/q, beta_2 = p/q^2`.
//! The series `sum |alpha_i|` and `sum |beta_i|` converge for expanding
//! polynomials and bound the coordinates of every neighbor of the attractor,
//! which is what makes the membership automaton finite.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{normalize_sign, rat, ratio, Mat2, QuadraticPoly, Rational};
use crate::error::{Error, Result};

/// Default number of explicitly summed terms for the truncated bounds.
pub const DEFAULT_BOUND_TERMS: usize = 13;

/// Largest block power searched for a contractive `‖B^j‖_1 < 1`.
const MAX_BLOCK_POWER: u32 = 64;

/// Exact coordinates `alpha_1..alpha_n`, `beta_1..beta_n`.
#[derive(Clone, Debug)]
pub struct CoordSeq {
    pub poly: QuadraticPoly,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

impl CoordSeq {
    /// The recurrence `q x_{i+2} + p x_{i+1} + x_i = 0` at every stored triple.
    pub fn recurrence_holds(&self) -> bool {
        let p = rat(self.poly.p());
        let q = rat(self.poly.q());
        let check = |s: &[Rational]| {
            s.windows(3)
                .all(|w| (&q * &w[2] + &p * &w[1] + &w[0]).is_zero())
        };
        check(&self.alphas) && check(&self.betas)
    }
}

/// Rigorous upper bounds `alpha_bound >= sum |alpha_i|`, `beta_bound >= sum |beta_i|`.
#[derive(Clone, Debug)]
pub struct TailBounds {
    pub alpha_bound: Rational,
    pub beta_bound: Rational,
    /// Number of explicitly summed leading terms (0 when the sum is closed-form).
    pub terms_used: usize,
    /// True when the bounds equal the series exactly.
    pub exact: bool,
}

/// The matrix `B = [[0, 1], [-1/q, -p/q]]` advancing `(x_{i+1}, x_{i+2})`.
/// Its eigenvalues are the roots of `qx^2 + px + 1`, all inside the unit disc.
pub fn inverse_root_matrix(poly: &QuadraticPoly) -> Mat2 {
    Mat2::new(
        rat(0),
        rat(1),
        ratio(-1, poly.q()),
        ratio(-poly.p(), poly.q()),
    )
}

fn seeds(poly: &QuadraticPoly) -> ((Rational, Rational), (Rational, Rational)) {
    let p = poly.p();
    let q = poly.q();
    let alpha = (ratio(-p, q), ratio(p * p - q, q * q));
    let beta = (ratio(-1, q), ratio(p, q * q));
    (alpha, beta)
}

/// Exact `alpha_1..alpha_n` and `beta_1..beta_n`. Requires `n >= 2`.
pub fn coord_seq(poly: &QuadraticPoly, n: usize) -> CoordSeq {
    assert!(n >= 2, "coord_seq needs n >= 2");
    let p = rat(poly.p());
    let q = rat(poly.q());
    let ((a1, a2), (b1, b2)) = seeds(poly);
    let mut alphas = vec![a1, a2];
    let mut betas = vec![b1, b2];
    while alphas.len() < n {
        let k = alphas.len();
        let next = -(&p * &alphas[k - 1] + &alphas[k - 2]) / &q;
        alphas.push(next);
        let next = -(&p * &betas[k - 1] + &betas[k - 2]) / &q;
        betas.push(next);
    }
    CoordSeq {
        poly: *poly,
        alphas,
        betas,
    }
}

/// Rational `u >= 0` with `u^2 <= x < (u + 10^-6)^2`, for positive `x`.
fn sqrt_lower(x: &Rational) -> Rational {
    debug_assert!(x.is_positive());
    let scale = BigInt::from(1_000_000i64);
    let scaled = (x * Rational::from_integer(&scale * &scale)).floor();
    let root = scaled.numer().sqrt();
    Rational::new(root, scale)
}

fn eps_micro() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1_000_000i64))
}

/// Upper bounds for the two coordinate series, summing `n - 1` leading terms
/// exactly and bounding the tail.
///
/// Three regimes, checked in order:
/// 1. `B` and both seed vectors nonnegative (after flipping `p` to `|p|`):
///    all terms share a sign, so the series telescope to the exact values
///    `(row 0 of (I - B)^{-1}) . seed`.
/// 2. Discriminant `p^2 - 4q < 0` (forces `q >= 2`): complex conjugate roots
///    of common modulus `q^{-1/2}`, per-term bound `2 q^{-(i-1)/2} / sqrt(4q - p^2)`,
///    geometric tail. The two square roots are replaced by rational bounds
///    rounded in the direction that enlarges the result.
/// 3. Otherwise: smallest `j` with `‖B^j‖_1 < 1`, tail grouped in blocks of
///    `j` terms with ratio `‖B^j‖_1`.
pub fn tail_bounds(poly: &QuadraticPoly, n: usize) -> Result<TailBounds> {
    assert!(n >= 2, "tail_bounds needs n >= 2");
    // |alpha_i| and |beta_i| are invariant under p -> -p.
    let (poly, _) = normalize_sign(poly);
    let q = poly.q();
    let b = inverse_root_matrix(&poly);
    let ((a1, a2), (b1, b2)) = seeds(&poly);

    let nonneg = !b.c.is_negative()
        && !b.d.is_negative()
        && !a1.is_negative()
        && !a2.is_negative()
        && !b1.is_negative()
        && !b2.is_negative();
    if nonneg {
        // sum_{i>=0} B^i maps the closed positive quadrant into itself, so
        // sum |x_i| = first component of (I - B)^{-1} seed, exactly.
        let inv = Mat2::identity()
            .sub(&b)
            .inverse()
            .expect("I - B invertible for expanding polynomials");
        let alpha_bound = &inv.a * &a1 + &inv.b * &a2;
        let beta_bound = &inv.a * &b1 + &inv.b * &b2;
        return Ok(TailBounds {
            alpha_bound,
            beta_bound,
            terms_used: 0,
            exact: true,
        });
    }

    let seq = coord_seq(&poly, n.max(2));
    let partial_alpha: Rational = seq.alphas[..n - 1].iter().map(|x| x.abs()).sum();
    let partial_beta: Rational = seq.betas[..n - 1].iter().map(|x| x.abs()).sum();

    let disc = poly.p() * poly.p() - 4 * q;
    if disc < 0 {
        // q >= 2 here. s_hi > q^{-1/2}, w_lo <= sqrt(4q - p^2): every factor
        // rounded to enlarge the tail.
        let s_hi = sqrt_lower(&ratio(1, q)) + eps_micro();
        let w_lo = sqrt_lower(&rat(4 * q - poly.p() * poly.p()));
        debug_assert!(s_hi < rat(1) && w_lo.is_positive());
        let one_minus_s = rat(1) - &s_hi;
        let pow_n1 = pow_rat(&s_hi, (n - 1) as u32);
        let tail_alpha = rat(2) * &pow_n1 / (&one_minus_s * &w_lo);
        let tail_beta = rat(2) * (&pow_n1 * &s_hi) / (&one_minus_s * &w_lo);
        return Ok(TailBounds {
            alpha_bound: partial_alpha + tail_alpha,
            beta_bound: partial_beta + tail_beta,
            terms_used: n - 1,
            exact: false,
        });
    }

    // Block-geometric tail for the remaining nonnegative-discriminant cases.
    let (j, rho) = contractive_power(&b)?;
    // sum_{i>=n} |x_i| <= (sum_{s=0}^{j-1} ‖B^{n-1+s} z‖_1) / (1 - rho),
    // since x_i is the first component of B^{i-1} z.
    let tail = |seed: &(Rational, Rational)| -> Rational {
        let mut v = seed.clone();
        let prefix = b.pow((n - 1) as u32);
        v = prefix.mul_vec(&v);
        let mut acc = Rational::zero();
        for _ in 0..j {
            acc += v.0.abs() + v.1.abs();
            v = b.mul_vec(&v);
        }
        acc / (rat(1) - &rho)
    };
    Ok(TailBounds {
        alpha_bound: partial_alpha + tail(&(a1, a2)),
        beta_bound: partial_beta + tail(&(b1, b2)),
        terms_used: n - 1,
        exact: false,
    })
}

fn pow_rat(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

fn contractive_power(b: &Mat2) -> Result<(u32, Rational)> {
    let mut power = b.clone();
    for j in 1..=MAX_BLOCK_POWER {
        let norm = power.norm_1();
        if norm < rat(1) {
            return Ok((j, norm));
        }
        power = power.mul(b);
    }
    Err(Error::NoContraction {
        searched: MAX_BLOCK_POWER,
    })
}

/// Exact partial sum `sum_{i=1}^{n} |alpha_i|` (and beta), for oracle checks.
pub fn partial_abs_sums(poly: &QuadraticPoly, n: usize) -> (Rational, Rational) {
    let seq = coord_seq(poly, n.max(2));
    (
        seq.alphas[..n].iter().map(|x| x.abs()).sum(),
        seq.betas[..n].iter().map(|x| x.abs()).sum(),
    )
}
