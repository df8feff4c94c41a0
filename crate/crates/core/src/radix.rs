//! Eventually periodic radix expansions in base `A` with digits along `v`.
//!
//! A string `a_{-k}..a_0 . a_1 a_2 .. a_m [p_1 .. p_T]` denotes
//! `sum a_{-j} A^j v + sum a_i A^{-i} v` with the bracketed block repeating
//! forever. All evaluation happens on coordinate pairs in the `{v, Av}`
//! basis, so the base matrix is just the companion matrix and the periodic
//! tail is a finite geometric sum `(I - A^{-T})^{-1}` away.
//!
//! Text form: integer digits before the dot as a comma list, preperiod in
//! parentheses, period in brackets, e.g. `0.(-2,-3)[3,-3,0]`. Elements are
//! rationals (`-3`, `8/5`), which keeps multi-character and negative digits
//! unambiguous.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{companion, fmt_rational, parse_rational, rat, Mat2, QuadraticPoly, Rational};
use crate::error::{Error, Result};
use crate::neighbors::LatticePoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadixExpansion {
    /// Positions `a_{-k}..a_0`, most significant first. Empty means zero.
    pub int_digits: Vec<Rational>,
    pub preperiod: Vec<Rational>,
    /// Empty for terminating expansions.
    pub period: Vec<Rational>,
}

impl RadixExpansion {
    /// Leading zero integer digits are trimmed so that text round-trips.
    pub fn new(int_digits: Vec<Rational>, preperiod: Vec<Rational>, period: Vec<Rational>) -> Self {
        let skip = int_digits.iter().take_while(|d| d.is_zero()).count();
        Self {
            int_digits: int_digits[skip..].to_vec(),
            preperiod,
            period,
        }
    }

    pub fn fractional(preperiod: Vec<Rational>, period: Vec<Rational>) -> Self {
        Self {
            int_digits: Vec::new(),
            preperiod,
            period,
        }
    }

    pub fn fractional_digits(&self) -> impl Iterator<Item = &Rational> {
        self.preperiod.iter().chain(self.period.iter())
    }
}

/// Exact value of the expansion as a coordinate pair `gamma v + delta Av`.
pub fn eval(exp: &RadixExpansion, poly: &QuadraticPoly) -> LatticePoint {
    let a = companion(poly);
    let a_inv = a.inverse().expect("companion of expanding poly invertible");

    // Integer part by Horner: acc -> A acc + a_{-j} v.
    let mut acc = (rat(0), rat(0));
    for d in &exp.int_digits {
        acc = a.mul_vec(&acc);
        acc.0 += d;
    }

    // Preperiod, term by term.
    let mut power = Mat2::identity();
    for d in &exp.preperiod {
        power = power.mul(&a_inv);
        let term = power.mul_vec(&(d.clone(), rat(0)));
        acc.0 += term.0;
        acc.1 += term.1;
    }
    // `power` is now A^{-m} with m the preperiod length.

    if !exp.period.is_empty() {
        let mut block = (rat(0), rat(0));
        let mut step = Mat2::identity();
        for d in &exp.period {
            step = step.mul(&a_inv);
            let term = step.mul_vec(&(d.clone(), rat(0)));
            block.0 += term.0;
            block.1 += term.1;
        }
        // step = A^{-T}; the repeating tail sums to (I - A^{-T})^{-1} block.
        let resolvent = Mat2::identity()
            .sub(&step)
            .inverse()
            .expect("I - A^{-T} invertible for expanding polynomials");
        let tail = power.mul_vec(&resolvent.mul_vec(&block));
        acc.0 += tail.0;
        acc.1 += tail.1;
    }

    LatticePoint {
        gamma: acc.0,
        delta: acc.1,
    }
}

/// True iff the expansion evaluates exactly to `target` and every fractional
/// digit belongs to `alphabet`.
pub fn verify(
    exp: &RadixExpansion,
    target: &LatticePoint,
    poly: &QuadraticPoly,
    alphabet: &[Rational],
) -> bool {
    exp.fractional_digits().all(|d| alphabet.contains(d)) && eval(exp, poly) == *target
}

/// Which of the two certificate families applies: `f = x^2 + px + q` or
/// `f = x^2 + px - q`, with `q >= 2` the absolute constant term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateVariant {
    PlusQ,
    MinusQ,
}

/// A certificate expansion together with the point it must evaluate to.
pub type Certificate = (RadixExpansion, LatticePoint);

/// Instantiate the symbolic certificate expansions for the digit-gap
/// connectedness theorems at `(p, q)`.
///
/// For `x^2 + px + q` (requires `q >= 2`, `2p > q + 2`):
///   `1 = 0.[(1-p)(p-q)(q-1)]`, `1 = 0.(1-p)[-(q-p+1), q-p+1]`,
///   and their digitwise sum `2 = 0.(2-2p)[2p-2q-1, 2q-p, -q, 1, p-2, q-2p+2]`.
/// For `x^2 + px - q` (requires `q >= 2`, `2p > q - 2`):
///   `1 = 0.[(-p)(q-1)]`, `1 = 0.(-(p+1))[q-p-1]`,
///   and the sum `2 = 0.(-2p-1)[2q-p-2, q-2p-1]`.
pub fn thm5_certificates(
    poly: &QuadraticPoly,
    variant: CertificateVariant,
) -> Result<Vec<Certificate>> {
    let p = poly.p();
    let q_pos = poly.q().abs();
    let mut violations = Vec::new();
    match variant {
        CertificateVariant::PlusQ => {
            if poly.q() < 2 {
                violations.push(format!("variant needs q >= 2, got q = {}", poly.q()));
            }
            if 2 * p <= q_pos + 2 {
                violations.push(format!("needs 2p > q+2: 2*{p} <= {}", q_pos + 2));
            }
        }
        CertificateVariant::MinusQ => {
            if poly.q() > -2 {
                violations.push(format!("variant needs q <= -2, got q = {}", poly.q()));
            }
            if 2 * p <= q_pos - 2 {
                violations.push(format!("needs 2p > q-2: 2*{p} <= {}", q_pos - 2));
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::HypothesisViolation(violations));
    }

    let q = q_pos;
    let one_v = LatticePoint::from_ints(1, 0);
    let two_v = LatticePoint::from_ints(2, 0);
    let certs = match variant {
        CertificateVariant::PlusQ => {
            // Magnitudes forced by 2p > q+2 and p <= q; the +/-q digit in the
            // sum expansion is not below q-1 and must be covered by the digit
            // alphabet itself, which `verify` checks.
            assert!((2 * p - 2 * q - 1).abs() <= q - 1);
            assert!(1 <= q - 1);
            assert!((p - 2).abs() <= q - 1);
            assert!((q - 2 * p + 2).abs() <= q - 1);
            vec![
                (
                    RadixExpansion::fractional(vec![], vec![rat(1 - p), rat(p - q), rat(q - 1)]),
                    one_v.clone(),
                ),
                (
                    RadixExpansion::fractional(
                        vec![rat(1 - p)],
                        vec![rat(-(q - p + 1)), rat(q - p + 1)],
                    ),
                    one_v,
                ),
                (
                    RadixExpansion::fractional(
                        vec![rat(2 - 2 * p)],
                        vec![
                            rat(2 * p - 2 * q - 1),
                            rat(2 * q - p),
                            rat(-q),
                            rat(1),
                            rat(p - 2),
                            rat(q - 2 * p + 2),
                        ],
                    ),
                    two_v,
                ),
            ]
        }
        CertificateVariant::MinusQ => {
            assert!((q - 2 * p - 1).abs() <= q - 1);
            vec![
                (
                    RadixExpansion::fractional(vec![], vec![rat(-p), rat(q - 1)]),
                    one_v.clone(),
                ),
                (
                    RadixExpansion::fractional(vec![rat(-(p + 1))], vec![rat(q - p - 1)]),
                    one_v,
                ),
                (
                    RadixExpansion::fractional(
                        vec![rat(-2 * p - 1)],
                        vec![rat(2 * q - p - 2), rat(q - 2 * p - 1)],
                    ),
                    two_v,
                ),
            ]
        }
    };

    // Every instantiated certificate must evaluate to its target.
    for (exp, target) in &certs {
        let got = eval(exp, poly);
        if got != *target {
            return Err(Error::HypothesisViolation(vec![format!(
                "certificate {exp} evaluated to {got}, expected {target}"
            )]));
        }
    }
    Ok(certs)
}

fn write_csv(f: &mut fmt::Formatter<'_>, digits: &[Rational]) -> fmt::Result {
    for (i, d) in digits.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", fmt_rational(d))?;
    }
    Ok(())
}

impl fmt::Display for RadixExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.int_digits.is_empty() {
            write!(f, "0")?;
        } else {
            write_csv(f, &self.int_digits)?;
        }
        write!(f, ".")?;
        if !self.preperiod.is_empty() {
            write!(f, "(")?;
            write_csv(f, &self.preperiod)?;
            write!(f, ")")?;
        }
        if !self.period.is_empty() {
            write!(f, "[")?;
            write_csv(f, &self.period)?;
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn parse_csv(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

impl FromStr for RadixExpansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (int_part, frac) = s
            .split_once('.')
            .ok_or_else(|| Error::Parse(format!("expansion {s:?} is missing the dot")))?;
        let int_digits = if int_part.is_empty() {
            Vec::new()
        } else {
            let parsed = parse_csv(int_part)?;
            let skip = parsed.iter().take_while(|d| d.is_zero()).count();
            parsed[skip..].to_vec()
        };
        let mut rest = frac;
        let mut preperiod = Vec::new();
        if let Some(tail) = rest.strip_prefix('(') {
            let (inner, after) = tail
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unclosed '(' in {s:?}")))?;
            preperiod = parse_csv(inner)?;
            rest = after;
        }
        let mut period = Vec::new();
        if let Some(tail) = rest.strip_prefix('[') {
            let (inner, after) = tail
                .split_once(']')
                .ok_or_else(|| Error::Parse(format!("unclosed '[' in {s:?}")))?;
            period = parse_csv(inner)?;
            rest = after;
        }
        if !rest.is_empty() {
            return Err(Error::Parse(format!(
                "trailing {rest:?} in expansion {s:?}"
            )));
        }
        Ok(Self {
            int_digits,
            preperiod,
            period,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: i64, q: i64) -> QuadraticPoly {
        QuadraticPoly::new(p, q).unwrap()
    }

    fn exp(s: &str) -> RadixExpansion {
        s.parse().unwrap()
    }

    fn point(g: i64, d: i64) -> LatticePoint {
        LatticePoint::from_ints(g, d)
    }

    #[test]
    fn two_equals_three_then_threezero_repeating() {
        // 2 = 0.3[30] in base x^2-x-3
        assert_eq!(eval(&exp("0.(3)[3,0]"), &poly(-1, -3)), point(2, 0));
    }

    #[test]
    fn section_three_expansions_for_two() {
        assert_eq!(eval(&exp("0.(-2,-3)[3,-3,0]"), &poly(2, 3)), point(2, 0));
        assert_eq!(eval(&exp("0.(-3,0)[3,-3]"), &poly(3, 3)), point(2, 0));
    }

    #[test]
    fn all_zero_digits_give_origin() {
        assert_eq!(eval(&exp("0.(0,0)[0]"), &poly(2, 3)), point(0, 0));
        assert_eq!(eval(&exp("0."), &poly(1, -3)), point(0, 0));
    }

    #[test]
    fn integer_digits_match_purely_periodic_value() {
        // 223 = 0.[3,-3,0] in base x^2+2x+3
        let int_val = eval(&exp("2,2,3."), &poly(2, 3));
        let frac_val = eval(&exp("0.[3,-3,0]"), &poly(2, 3));
        assert_eq!(int_val, frac_val);
    }

    #[test]
    fn verify_checks_value_and_alphabet() {
        let pl = poly(-1, -3);
        let alphabet: Vec<Rational> = [-3i64, -2, -1, 0, 1, 2, 3]
            .iter()
            .map(|&n| rat(n))
            .collect();
        assert!(verify(&exp("0.(3)[3,0]"), &point(2, 0), &pl, &alphabet));
        // wrong target
        assert!(!verify(&exp("0.(3)[3,0]"), &point(1, 1), &pl, &alphabet));
        // digit outside the alphabet
        assert!(!verify(
            &exp("0.(4)[3,0]"),
            &eval(&exp("0.(4)[3,0]"), &pl),
            &pl,
            &alphabet
        ));
    }

    #[test]
    fn certificate_family_plus_q() {
        let certs = thm5_certificates(&poly(5, 6), CertificateVariant::PlusQ).unwrap();
        assert_eq!(certs.len(), 3);
        assert_eq!(certs[0].0, exp("0.[-4,-1,5]"));
        assert_eq!(certs[0].1, point(1, 0));
        assert_eq!(certs[1].0, exp("0.(-4)[-2,2]"));
        assert_eq!(certs[2].0, exp("0.(-8)[-3,7,-6,1,3,-2]"));
        assert_eq!(certs[2].1, point(2, 0));
        for (e, t) in &certs {
            assert_eq!(eval(e, &poly(5, 6)), *t);
        }
    }

    #[test]
    fn certificate_family_minus_q() {
        let certs = thm5_certificates(&poly(4, -6), CertificateVariant::MinusQ).unwrap();
        assert_eq!(certs[0].0, exp("0.[-4,5]"));
        assert_eq!(certs[1].0, exp("0.(-5)[1]"));
        assert_eq!(certs[2].0, exp("0.(-9)[6,-3]"));
        for (e, t) in &certs {
            assert_eq!(eval(e, &poly(4, -6)), *t);
        }
    }

    #[test]
    fn certificate_hypotheses_are_enforced() {
        // 2p > q+2 fails for p=2, q=3
        assert!(matches!(
            thm5_certificates(&poly(2, 3), CertificateVariant::PlusQ),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            thm5_certificates(&poly(5, 6), CertificateVariant::MinusQ),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn grammar_roundtrip() {
        for s in [
            "0.(3)[3,0]",
            "0.(-2,-3)[3,-3,0]",
            "2,2,3.",
            "0.[1]",
            "0.(1,3)",
            "0.(8/5,-1)[2/3]",
        ] {
            let e = exp(s);
            assert_eq!(e.to_string(), s);
        }
    }

    #[test]
    fn grammar_rejects_malformed_strings() {
        assert!("0".parse::<RadixExpansion>().is_err());
        assert!("0.(3".parse::<RadixExpansion>().is_err());
        assert!("0.[3,0](1)".parse::<RadixExpansion>().is_err());
        assert!("0.x".parse::<RadixExpansion>().is_err());
    }

    proptest! {
        /// Prepending a zero fractional digit divides the value by A.
        #[test]
        fn shift_identity(
            digits in proptest::collection::vec(-3i64..=3, 1..6),
            period in proptest::collection::vec(-3i64..=3, 1..4),
        ) {
            let pl = poly(2, 3);
            let base = RadixExpansion::fractional(
                digits.iter().map(|&d| rat(d)).collect(),
                period.iter().map(|&d| rat(d)).collect(),
            );
            let mut shifted_digits = vec![rat(0)];
            shifted_digits.extend(digits.iter().map(|&d| rat(d)));
            let shifted = RadixExpansion::fractional(
                shifted_digits,
                period.iter().map(|&d| rat(d)).collect(),
            );
            let v = eval(&base, &pl);
            let vs = eval(&shifted, &pl);
            let a_inv = companion(&pl).inverse().unwrap();
            let expected = a_inv.mul_vec(&(v.gamma.clone(), v.delta.clone()));
            prop_assert_eq!((vs.gamma, vs.delta), expected);
        }

        /// Rotating a purely periodic expansion left multiplies by A and
        /// subtracts the outgoing digit.
        #[test]
        fn period_rotation(period in proptest::collection::vec(-3i64..=3, 1..5)) {
            let pl = poly(1, -3);
            let original = RadixExpansion::fractional(
                vec![],
                period.iter().map(|&d| rat(d)).collect(),
            );
            let mut rotated_digits = period.clone();
            rotated_digits.rotate_left(1);
            let rotated = RadixExpansion::fractional(
                vec![],
                rotated_digits.iter().map(|&d| rat(d)).collect(),
            );
            let v = eval(&original, &pl);
            let vr = eval(&rotated, &pl);
            let a = companion(&pl);
            let mut expected = a.mul_vec(&(v.gamma.clone(), v.delta.clone()));
            expected.0 -= rat(period[0]);
            prop_assert_eq!((vr.gamma, vr.delta), expected);
        }

        /// Text form round-trips through the parser.
        #[test]
        fn display_parse_roundtrip(
            ints in proptest::collection::vec(-5i64..=5, 0..3),
            pre in proptest::collection::vec(-5i64..=5, 0..4),
            per in proptest::collection::vec(-5i64..=5, 0..4),
        ) {
            let e = RadixExpansion::new(
                ints.iter().map(|&d| rat(d)).collect(),
                pre.iter().map(|&d| rat(d)).collect(),
                per.iter().map(|&d| rat(d)).collect(),
            );
            let text = e.to_string();
            let parsed: RadixExpansion = text.parse().unwrap();
            prop_assert_eq!(parsed, e);
        }
    }
}
