//! Top-level connectedness decisions.
//!
//! The attractor is connected iff the graph on its digits with an edge
//! wherever two translated copies intersect is connected, and an edge
//! `(d_i, d_j)` exists iff `d_i - d_j` lies in `T - T`. The membership
//! automaton answers the latter exactly, so the verdict here is exact as
//! well. The closed-form rules in this module (arithmetic-progression rule
//! for `p = 0`, disconnection bounds for the `|q| = 3` three-digit families,
//! gap-digit certificates for larger determinants) serve as cross-checks and
//! fast paths, never as the ground truth.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::algebra::{rat, ratio, QuadraticPoly, Rational};
use crate::coords::{tail_bounds, TailBounds, DEFAULT_BOUND_TERMS};
use crate::error::{Error, Result};
use crate::neighbors::{DigitSystem, LatticePoint, NeighborAutomaton, DEFAULT_STATE_LIMIT};
use crate::radix::{thm5_certificates, Certificate, CertificateVariant, RadixExpansion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Connected,
    Disconnected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Connected => write!(f, "connected"),
            Verdict::Disconnected => write!(f, "disconnected"),
        }
    }
}

/// Intersection graph over the digit list: an edge `(i, j)` means the
/// translates `T + d_i v` and `T + d_j v` meet.
#[derive(Clone, Debug)]
pub struct EGraph {
    pub vertices: Vec<Rational>,
    /// Index pairs `i < j`, lexicographic.
    pub edges: Vec<(usize, usize)>,
}

impl EGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.len() <= 1 {
            return true;
        }
        let mut dsu = UnionFind::new(self.vertices.len());
        for &(i, j) in &self.edges {
            dsu.union(i, j);
        }
        let root = dsu.find(0);
        (1..self.vertices.len()).all(|i| dsu.find(i) == root)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}

/// Digit witness backing one edge of the graph.
#[derive(Clone, Debug)]
pub struct EdgeCertificate {
    pub pair: (usize, usize),
    pub target: LatticePoint,
    pub witness: RadixExpansion,
}

/// Exhausted-search summary refuting one non-edge.
#[derive(Clone, Debug)]
pub struct NonEdgeRefutation {
    pub pair: (usize, usize),
    pub states_explored: usize,
}

#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub system: DigitSystem,
    pub verdict: Verdict,
    pub e_graph: EGraph,
    /// Complete-residue-system tile test; `None` when not applicable.
    pub is_tile: Option<bool>,
    /// Arithmetic-progression rule verdict, present only for `p = 0`.
    pub p_zero_verdict: Option<Verdict>,
    pub bounds: TailBounds,
    pub edge_certificates: Vec<EdgeCertificate>,
    pub non_edge_refutations: Vec<NonEdgeRefutation>,
    pub states: usize,
    pub wall_ms: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub bound_terms: usize,
    pub state_limit: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            bound_terms: DEFAULT_BOUND_TERMS,
            state_limit: DEFAULT_STATE_LIMIT,
        }
    }
}

/// Decide connectedness of `T(A, D)` with default options.
pub fn decide(system: &DigitSystem) -> Result<ConnectivityReport> {
    decide_with(system, &DecideOptions::default())
}

/// Decide connectedness: build the intersection graph by membership queries
/// on all pairwise digit differences, then read connectivity off the graph.
pub fn decide_with(system: &DigitSystem, opts: &DecideOptions) -> Result<ConnectivityReport> {
    let start = Instant::now();
    let poly = system.poly();
    let bounds = tail_bounds(poly, opts.bound_terms)?;
    let mut automaton = NeighborAutomaton::build(system, &bounds, opts.state_limit)?;

    let digits = system.digits().to_vec();
    let mut edges = Vec::new();
    let mut edge_certificates = Vec::new();
    let mut non_edge_refutations = Vec::new();
    for i in 0..digits.len() {
        for j in (i + 1)..digits.len() {
            let target = LatticePoint::new(&digits[j] - &digits[i], rat(0));
            let membership = automaton.is_member(&target)?;
            if membership.is_member {
                edges.push((i, j));
                edge_certificates.push(EdgeCertificate {
                    pair: (i, j),
                    target,
                    witness: membership.witness.expect("member has witness"),
                });
            } else {
                non_edge_refutations.push(NonEdgeRefutation {
                    pair: (i, j),
                    states_explored: membership.states_explored,
                });
            }
        }
    }

    let e_graph = EGraph {
        vertices: digits,
        edges,
    };
    let verdict = if e_graph.is_connected() {
        Verdict::Connected
    } else {
        Verdict::Disconnected
    };

    let p_zero_verdict = if poly.p() == 0 {
        let rule = decide_p_zero(system.digits());
        debug_assert_eq!(rule, verdict, "progression rule disagrees with automaton");
        Some(rule)
    } else {
        None
    };

    Ok(ConnectivityReport {
        system: system.clone(),
        verdict,
        e_graph,
        is_tile: is_tile_candidate(system),
        p_zero_verdict,
        bounds,
        edge_certificates,
        non_edge_refutations,
        states: automaton.state_count(),
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Tile test for prime `|q|` and integer digits: true iff the digits form a
/// complete set of residues mod `|q|`. `None` when the test does not apply.
pub fn is_tile_candidate(system: &DigitSystem) -> Option<bool> {
    let q = system.poly().q().unsigned_abs();
    if !is_prime(q) {
        return None;
    }
    let modulus = rat(q as i64);
    let mut residues = Vec::new();
    for d in system.digits() {
        if !d.denom().is_one() {
            return None;
        }
        let mut r = d.clone() % &modulus;
        if r.is_negative() {
            r += &modulus;
        }
        residues.push(r);
    }
    residues.sort();
    residues.dedup();
    Some(residues.len() as u64 == q && system.digits().len() as u64 == q)
}

/// Connectedness rule for `f(x) = x^n ± q` (companion `p = 0` in the planar
/// case): connected iff the coefficients form an arithmetic progression
/// `0, a, 2a, ..., (k-1)a` with `a > 0`.
pub fn decide_p_zero(digit_coeffs: &[Rational]) -> Verdict {
    if digit_coeffs.len() <= 1 {
        return Verdict::Connected;
    }
    let a = &digit_coeffs[1] - &digit_coeffs[0];
    if !a.is_positive() {
        return Verdict::Disconnected;
    }
    let progression = digit_coeffs.windows(2).all(|w| &w[1] - &w[0] == a);
    if progression {
        Verdict::Connected
    } else {
        Verdict::Disconnected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundVerdict {
    DisconnectedByBound,
    Inconclusive,
}

/// Table of proven disconnection regions for `D = {0, 1, b}` with `|q| = 3`
/// and `p != 0`. A sound over-approximation used to cross-validate the
/// automaton; `Inconclusive` outside the listed regions.
pub fn check_disconnection_bound(poly: &QuadraticPoly, b: &Rational) -> Result<BoundVerdict> {
    if poly.q().abs() != 3 || poly.p() == 0 {
        return Err(Error::InvalidInput(format!(
            "bound table covers x^2+px+-3 with p != 0, got {poly}"
        )));
    }
    if *b <= rat(1) {
        return Err(Error::InvalidInput("bound table needs b > 1".into()));
    }
    let disconnected = match (poly.p().abs(), poly.q()) {
        (1, 3) => *b >= ratio(67, 25) || *b <= ratio(67, 42),
        (2, 3) => *b >= ratio(37, 10) || *b <= ratio(37, 27),
        (3, 3) => *b >= ratio(33, 10) || *b <= ratio(33, 23),
        // strict on both sides for the negative-determinant family
        (1, -3) => *b > ratio(19, 5) || *b < ratio(19, 14),
        _ => return Err(Error::InvalidInput(format!("no bound row for {poly}"))),
    };
    Ok(if disconnected {
        BoundVerdict::DisconnectedByBound
    } else {
        BoundVerdict::Inconclusive
    })
}

#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub verdict: Verdict,
    pub states: usize,
    pub wall_ms: u64,
}

#[derive(Clone, Debug)]
pub struct SweepItem {
    pub b: Rational,
    pub outcome: std::result::Result<SweepSummary, String>,
}

/// Run `decide` on `D = {0, 1, b}` for each sampled `b`, in input order.
/// Per-item failures are recorded and the sweep continues. No interpolation
/// between samples: connectivity as a function of `b` is only reported where
/// it was actually decided.
pub fn sweep(poly: &QuadraticPoly, b_values: &[Rational], opts: &DecideOptions) -> Vec<SweepItem> {
    b_values
        .par_iter()
        .map(|b| {
            let outcome = sweep_one(poly, b, opts);
            SweepItem {
                b: b.clone(),
                outcome,
            }
        })
        .collect()
}

fn sweep_one(
    poly: &QuadraticPoly,
    b: &Rational,
    opts: &DecideOptions,
) -> std::result::Result<SweepSummary, String> {
    if *b <= rat(1) {
        return Err("b must exceed 1".into());
    }
    let system =
        DigitSystem::new(*poly, vec![rat(0), rat(1), b.clone()]).map_err(|e| e.to_string())?;
    let report = decide_with(&system, opts).map_err(|e| e.to_string())?;
    Ok(SweepSummary {
        verdict: report.verdict,
        states: report.states,
        wall_ms: report.wall_ms,
    })
}

/// Result of the gap-digit sufficient conditions for `q`-digit sets with
/// steps of 1 and 2.
#[derive(Clone, Debug)]
pub enum GapCriterion {
    /// `f = x^2 + px + q` family: `2p-2` and `2q-p` are digit differences.
    ConnectedPlusQ(Vec<Certificate>),
    /// `f = x^2 + px - q` family: `2p+1` and `2q-p-2` are digit differences.
    ConnectedMinusQ(Vec<Certificate>),
    Inconclusive(Vec<String>),
}

/// Check the sufficient connectedness conditions for integer digit sets with
/// `d_1 = 0`, consecutive gaps of 1 or 2 (both occurring), against
/// `f = x^2 + px +- q` with `q >= 2` and `p > 0` after sign normalization.
/// On success the certificate expansions are instantiated and verified.
pub fn check_gap_criterion(poly: &QuadraticPoly, digit_coeffs: &[i64]) -> GapCriterion {
    let mut failed = Vec::new();
    let p = poly.p().abs();
    let q = poly.q().abs();

    if poly.p() == 0 {
        failed.push("p must be nonzero".into());
    }
    if digit_coeffs.first() != Some(&0) {
        failed.push("first digit must be 0".into());
    }
    let gaps: Vec<i64> = digit_coeffs.windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.iter().any(|g| *g != 1 && *g != 2) {
        failed.push("all digit gaps must be 1 or 2".into());
    } else {
        if !gaps.contains(&1) {
            failed.push("needs at least one gap of 1".into());
        }
        if !gaps.contains(&2) {
            failed.push("needs at least one gap of 2".into());
        }
    }
    if digit_coeffs.len() as i64 != q {
        failed.push(format!(
            "digit count {} must equal |q| = {q}",
            digit_coeffs.len()
        ));
    }

    let variant = if poly.q() > 0 {
        CertificateVariant::PlusQ
    } else {
        CertificateVariant::MinusQ
    };
    match variant {
        CertificateVariant::PlusQ => {
            if 2 * p <= q + 2 {
                failed.push(format!("needs 2p > q+2, got p = {p}, q = {q}"));
            }
        }
        CertificateVariant::MinusQ => {
            if 2 * p <= q - 2 {
                failed.push(format!("needs 2p > q-2, got p = {p}, q = {q}"));
            }
        }
    }

    let diffs: Vec<i64> = {
        let mut v = Vec::new();
        for a in digit_coeffs {
            for b in digit_coeffs {
                v.push(a - b);
            }
        }
        v.sort();
        v.dedup();
        v
    };
    for k in 0..q.max(1) {
        if !diffs.contains(&k) {
            failed.push(format!(
                "digit differences must cover 0..{}, missing {k}",
                q - 1
            ));
            break;
        }
    }
    let (extra_a, extra_b) = match variant {
        CertificateVariant::PlusQ => (2 * p - 2, 2 * q - p),
        CertificateVariant::MinusQ => (2 * p + 1, 2 * q - p - 2),
    };
    for extra in [extra_a, extra_b] {
        if !diffs.contains(&extra) {
            failed.push(format!("{extra} must be a digit difference"));
        }
    }

    if !failed.is_empty() {
        return GapCriterion::Inconclusive(failed);
    }

    let norm = QuadraticPoly::new(p, poly.q()).expect("sign-normalized poly stays expanding");
    let certs = match thm5_certificates(&norm, variant) {
        Ok(c) => c,
        Err(e) => return GapCriterion::Inconclusive(vec![e.to_string()]),
    };
    // Every certificate digit must come from the digit differences; this is
    // where the +-q digit of the combined expansion gets checked.
    let alphabet: Vec<Rational> = diffs.iter().map(|&d| rat(d)).collect();
    for (exp, target) in &certs {
        if !crate::radix::verify(exp, target, &norm, &alphabet) {
            return GapCriterion::Inconclusive(vec![format!(
                "certificate {exp} for {target} failed verification"
            )]);
        }
    }
    match variant {
        CertificateVariant::PlusQ => GapCriterion::ConnectedPlusQ(certs),
        CertificateVariant::MinusQ => GapCriterion::ConnectedMinusQ(certs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;
    use crate::radix;

    fn poly(p: i64, q: i64) -> QuadraticPoly {
        QuadraticPoly::new(p, q).unwrap()
    }

    fn int_system(p: i64, q: i64, digits: &[i64]) -> DigitSystem {
        DigitSystem::new(poly(p, q), digits.iter().map(|&n| rat(n)).collect()).unwrap()
    }

    fn rational_system(p: i64, q: i64, digits: &[&str]) -> DigitSystem {
        DigitSystem::new(
            poly(p, q),
            digits.iter().map(|s| parse_rational(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn consecutive_digits_are_connected_for_all_ten_polynomials() {
        for (p, q) in [
            (0i64, 3i64),
            (0, -3),
            (1, 3),
            (-1, 3),
            (2, 3),
            (-2, 3),
            (3, 3),
            (-3, 3),
            (1, -3),
            (-1, -3),
        ] {
            let report = decide(&int_system(p, q, &[0, 1, 2])).unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Connected,
                "digits 0,1,2 with p={p}, q={q}"
            );
            assert_eq!(report.is_tile, Some(true));
        }
    }

    #[test]
    fn digits_013_split_by_family() {
        assert_eq!(
            decide(&int_system(1, 3, &[0, 1, 3])).unwrap().verdict,
            Verdict::Disconnected
        );
        assert_eq!(
            decide(&int_system(2, 3, &[0, 1, 3])).unwrap().verdict,
            Verdict::Connected
        );
        assert_eq!(
            decide(&int_system(-1, -3, &[0, 1, 3])).unwrap().verdict,
            Verdict::Connected
        );
    }

    #[test]
    fn digits_01m_disconnected_for_m_at_least_4() {
        for m in [4i64, 5, 6] {
            let report = decide(&int_system(1, 3, &[0, 1, m])).unwrap();
            assert_eq!(report.verdict, Verdict::Disconnected, "m = {m}");
        }
    }

    #[test]
    fn tan_interval_point() {
        let report = decide(&rational_system(-1, -3, &["0", "1", "8/5"])).unwrap();
        assert_eq!(report.verdict, Verdict::Connected);
        assert_eq!(report.is_tile, None);
    }

    #[test]
    fn edge_witnesses_evaluate_to_their_targets() {
        let system = int_system(-1, -3, &[0, 1, 3]);
        let report = decide(&system).unwrap();
        assert!(!report.edge_certificates.is_empty());
        let alphabet = system.delta_digits();
        for cert in &report.edge_certificates {
            assert!(radix::verify(
                &cert.witness,
                &cert.target,
                system.poly(),
                &alphabet
            ));
        }
    }

    #[test]
    fn three_digit_verdict_needs_two_edges() {
        for (p, q, m) in [
            (1i64, 3i64, 2i64),
            (1, 3, 3),
            (1, 3, 4),
            (2, 3, 3),
            (-1, -3, 3),
            (-1, -3, 4),
        ] {
            let report = decide(&int_system(p, q, &[0, 1, m])).unwrap();
            let expected = report.e_graph.edges.len() >= 2;
            assert_eq!(
                report.verdict == Verdict::Connected,
                expected,
                "p={p} q={q} m={m}"
            );
        }
    }

    #[test]
    fn tile_candidate_rules() {
        assert_eq!(is_tile_candidate(&int_system(1, 3, &[0, 1, 2])), Some(true));
        assert_eq!(
            is_tile_candidate(&int_system(0, -3, &[0, 1, 2])),
            Some(true)
        );
        assert_eq!(is_tile_candidate(&int_system(1, 3, &[0, 1, 5])), Some(true));
        assert_eq!(
            is_tile_candidate(&int_system(1, 3, &[0, 1, 3])),
            Some(false)
        );
        // non-integer digit: not applicable
        assert_eq!(
            is_tile_candidate(&rational_system(1, 3, &["0", "1", "8/5"])),
            None
        );
        // composite determinant: not applicable
        assert_eq!(
            is_tile_candidate(&int_system(5, 6, &[0, 1, 2, 4, 6, 8])),
            None
        );
    }

    #[test]
    fn progression_rule() {
        let digits = |v: &[&str]| -> Vec<Rational> {
            v.iter().map(|s| parse_rational(s).unwrap()).collect()
        };
        assert_eq!(decide_p_zero(&digits(&["0", "1", "2"])), Verdict::Connected);
        assert_eq!(
            decide_p_zero(&digits(&["0", "1", "5/2"])),
            Verdict::Disconnected
        );
        assert_eq!(
            decide_p_zero(&digits(&["0", "3/2", "3"])),
            Verdict::Connected
        );
    }

    #[test]
    fn p_zero_routes_through_progression_rule() {
        let report = decide(&int_system(0, 3, &[0, 1, 2])).unwrap();
        assert_eq!(report.p_zero_verdict, Some(Verdict::Connected));
        assert_eq!(report.verdict, Verdict::Connected);
        let report = decide(&int_system(0, 3, &[0, 1, 3])).unwrap();
        assert_eq!(report.p_zero_verdict, Some(Verdict::Disconnected));
        assert_eq!(report.verdict, Verdict::Disconnected);
    }

    #[test]
    fn disconnection_bound_table() {
        use BoundVerdict::*;
        let b = |s: &str| parse_rational(s).unwrap();
        assert_eq!(
            check_disconnection_bound(&poly(1, 3), &b("3")).unwrap(),
            DisconnectedByBound
        );
        assert_eq!(
            check_disconnection_bound(&poly(3, 3), &b("2")).unwrap(),
            Inconclusive
        );
        // boundary of the strict family stays inconclusive
        assert_eq!(
            check_disconnection_bound(&poly(1, -3), &b("19/5")).unwrap(),
            Inconclusive
        );
        assert_eq!(
            check_disconnection_bound(&poly(1, -3), &b("96/25")).unwrap(),
            DisconnectedByBound
        );
        assert_eq!(
            check_disconnection_bound(&poly(-2, 3), &b("37/10")).unwrap(),
            DisconnectedByBound
        );
        assert!(check_disconnection_bound(&poly(0, 3), &b("2")).is_err());
        assert!(check_disconnection_bound(&poly(1, 3), &b("1")).is_err());
    }

    #[test]
    fn sweep_preserves_order_and_records_errors() {
        let values = vec![ratio(8, 5), rat(2), ratio(1, 2), ratio(9, 2)];
        let items = sweep(&poly(-1, -3), &values, &DecideOptions::default());
        assert_eq!(items.len(), 4);
        assert_eq!(items[0].b, ratio(8, 5));
        assert_eq!(
            items[0].outcome.as_ref().unwrap().verdict,
            Verdict::Connected
        );
        assert_eq!(
            items[1].outcome.as_ref().unwrap().verdict,
            Verdict::Connected
        );
        assert!(items[2].outcome.is_err());
        assert_eq!(
            items[3].outcome.as_ref().unwrap().verdict,
            Verdict::Disconnected
        );
    }

    #[test]
    fn gap_criterion_accepts_both_worked_examples() {
        match check_gap_criterion(&poly(5, 6), &[0, 1, 2, 4, 6, 8]) {
            GapCriterion::ConnectedPlusQ(certs) => assert_eq!(certs.len(), 3),
            other => panic!("expected plus-q certificates, got {other:?}"),
        }
        match check_gap_criterion(&poly(4, -6), &[0, 1, 3, 5, 7, 9]) {
            GapCriterion::ConnectedMinusQ(certs) => assert_eq!(certs.len(), 3),
            other => panic!("expected minus-q certificates, got {other:?}"),
        }
    }

    #[test]
    fn gap_criterion_rejects_missing_gap_of_two() {
        match check_gap_criterion(&poly(5, 6), &[0, 1, 2, 3, 4, 5]) {
            GapCriterion::Inconclusive(reasons) => {
                assert!(
                    reasons.iter().any(|r| r.contains("gap of 2")),
                    "{reasons:?}"
                )
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn sign_symmetry_of_decide() {
        for (p, q, digits) in [
            (1i64, 3i64, &[0i64, 1, 3][..]),
            (2, 3, &[0, 1, 3]),
            (3, 3, &[0, 1, 4]),
            (1, -3, &[0, 1, 3]),
        ] {
            let a = decide(&int_system(p, q, digits)).unwrap().verdict;
            let b = decide(&int_system(-p, q, digits)).unwrap().verdict;
            assert_eq!(a, b, "p={p} q={q} digits={digits:?}");
        }
    }

    #[test]
    fn scale_invariance_under_reflect_and_rescale() {
        // D = {0,1,b} and D' = {0, b-1, b} (reflection) decide identically,
        // and so does the rescaled {0, 1, b/(b-1)}.
        for b_str in ["2", "3", "8/5", "5/2"] {
            let b = parse_rational(b_str).unwrap();
            let pl = poly(-1, -3);
            let original = DigitSystem::new(pl, vec![rat(0), rat(1), b.clone()]).unwrap();
            let reflected = DigitSystem::new(pl, vec![rat(0), &b - rat(1), b.clone()]).unwrap();
            let rescaled = DigitSystem::new(pl, vec![rat(0), rat(1), &b / (&b - rat(1))]).unwrap();
            let v0 = decide(&original).unwrap().verdict;
            let v1 = decide(&reflected).unwrap().verdict;
            let v2 = decide(&rescaled).unwrap().verdict;
            assert_eq!(v0, v1, "reflection changed the verdict at b = {b_str}");
            assert_eq!(v0, v2, "rescaling changed the verdict at b = {b_str}");
        }
    }
}
