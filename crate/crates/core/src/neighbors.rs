//! The neighbor-generating step and the finite automaton that decides
//! membership of lattice points in `T - T` for rational digit sets.
//!
//! A point `l = gamma v + delta Av` lies in `T - T` exactly when it has an
//! expansion `l = sum b_i A^{-i} v` with every `b_i` a digit difference.
//! Each prefix digit produces another such point via `l' = A l - b_1 v`,
//! and every point reachable this way obeys the coordinate box
//! `|gamma| <= max|b| * alpha_bound`, `|delta| <= max|b| * beta_bound`.
//! When the digits share a denominator `t`, the reachable points live on the
//! lattice `(1/t)Z^2` inside that box, so the transition graph is finite:
//! `l` is a member iff its state admits an infinite forward path, and any
//! such path is eventually periodic and reconstructs the expansion exactly.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{fmt_rational, rat, QuadraticPoly, Rational};
use crate::coords::{tail_bounds, TailBounds, DEFAULT_BOUND_TERMS};
use crate::error::{Error, Result};
use crate::radix::RadixExpansion;

/// Default cap on discovered automaton states.
pub const DEFAULT_STATE_LIMIT: usize = 10_000_000;

/// `l = gamma v + delta Av`, exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub gamma: Rational,
    pub delta: Rational,
}

impl LatticePoint {
    pub fn new(gamma: Rational, delta: Rational) -> Self {
        Self { gamma, delta }
    }

    pub fn from_ints(gamma: i64, delta: i64) -> Self {
        Self::new(rat(gamma), rat(delta))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            fmt_rational(&self.gamma),
            fmt_rational(&self.delta)
        )
    }
}

/// One neighbor-generating step: `l' = A l - b_1 v`, i.e.
/// `gamma' = -(q delta + b_1)`, `delta' = gamma - p delta`.
pub fn step(l: &LatticePoint, b1: &Rational, poly: &QuadraticPoly) -> LatticePoint {
    LatticePoint {
        gamma: -(rat(poly.q()) * &l.delta + b1),
        delta: &l.gamma - rat(poly.p()) * &l.delta,
    }
}

/// Fold `step` over a digit prefix `b_1, b_2, ..., b_n`.
pub fn iterate(l: &LatticePoint, digit_prefix: &[Rational], poly: &QuadraticPoly) -> LatticePoint {
    digit_prefix
        .iter()
        .fold(l.clone(), |acc, b| step(&acc, b, poly))
}

/// An expanding polynomial together with a collinear digit coefficient set.
///
/// Digits are kept sorted ascending; the smallest digit must be 0
/// (translation normalization).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSystem {
    poly: QuadraticPoly,
    digits: Vec<Rational>,
}

impl DigitSystem {
    pub fn new(poly: QuadraticPoly, mut digits: Vec<Rational>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidInput("digit set is empty".into()));
        }
        digits.sort();
        if digits.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("digits must be distinct".into()));
        }
        if !digits[0].is_zero() {
            return Err(Error::InvalidInput(
                "smallest digit must be 0 (translate the set first)".into(),
            ));
        }
        Ok(Self { poly, digits })
    }

    pub fn poly(&self) -> &QuadraticPoly {
        &self.poly
    }

    pub fn digits(&self) -> &[Rational] {
        &self.digits
    }

    /// The difference set `D - D`, sorted ascending.
    pub fn delta_digits(&self) -> Vec<Rational> {
        let mut diffs: Vec<Rational> = Vec::new();
        for a in &self.digits {
            for b in &self.digits {
                diffs.push(a - b);
            }
        }
        diffs.sort();
        diffs.dedup();
        diffs
    }

    pub fn max_abs_diff(&self) -> Rational {
        // digits are sorted and start at 0
        self.digits.last().expect("nonempty").abs()
    }

    /// Least common multiple of the digit denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.digits
            .iter()
            .fold(BigInt::one(), |acc, d| acc.lcm(d.denom()))
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug)]
pub struct Membership {
    pub is_member: bool,
    /// Eventually periodic digit witness, present iff `is_member`.
    pub witness: Option<RadixExpansion>,
    /// Total states discovered by the automaton when the query was answered.
    pub states_explored: usize,
}

/// Finite transition graph over box-bounded lattice states.
///
/// States are discovered lazily from query targets; the alive set (states
/// with an infinite forward path) is recomputed on demand by pruning dead
/// ends to a fixed point.
#[derive(Debug)]
pub struct NeighborAutomaton {
    p: i128,
    q: i128,
    /// Common denominator of the digit lattice.
    scale: BigInt,
    /// Scaled digit differences, ascending.
    diffs: Vec<i128>,
    diffs_rat: Vec<Rational>,
    box_x: i128,
    box_y: i128,
    states: Vec<(i128, i128)>,
    index: HashMap<(i128, i128), u32>,
    succs: Vec<Vec<(u16, u32)>>,
    alive: Vec<bool>,
    alive_valid: bool,
    state_limit: usize,
}

fn to_i128(v: &BigInt, what: &str) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::InvalidInput(format!("{what} does not fit in 128 bits")))
}

impl NeighborAutomaton {
    /// Build the automaton for `system` under the box given by `bounds`,
    /// pre-seeding the pairwise digit differences (the connectivity targets).
    pub fn build(system: &DigitSystem, bounds: &TailBounds, state_limit: usize) -> Result<Self> {
        let poly = system.poly();
        let scale = system.common_denominator();
        let scale_rat = Rational::from_integer(scale.clone());

        let mut diffs = Vec::new();
        let mut diffs_rat = Vec::new();
        for d in system.delta_digits() {
            let scaled = &d * &scale_rat;
            debug_assert!(scaled.denom().is_one());
            diffs.push(to_i128(scaled.numer(), "scaled digit difference")?);
            diffs_rat.push(d);
        }
        if diffs.len() > u16::MAX as usize {
            return Err(Error::InvalidInput("too many digit differences".into()));
        }

        let m = system.max_abs_diff();
        let box_x = to_i128(
            (&bounds.alpha_bound * &m * &scale_rat).floor().numer(),
            "box width",
        )?;
        let box_y = to_i128(
            (&bounds.beta_bound * &m * &scale_rat).floor().numer(),
            "box height",
        )?;

        let p = poly.p() as i128;
        let q = poly.q() as i128;
        let max_diff = diffs.iter().map(|d| d.abs()).max().unwrap_or(0);
        // Transient step values are bounded by these; reject inputs that
        // could overflow instead of wrapping.
        q.abs()
            .checked_mul(box_y)
            .and_then(|v| v.checked_add(max_diff))
            .ok_or_else(|| Error::InvalidInput("state box too large".into()))?;
        p.abs()
            .checked_mul(box_y)
            .and_then(|v| v.checked_add(box_x))
            .ok_or_else(|| Error::InvalidInput("state box too large".into()))?;

        let mut automaton = Self {
            p,
            q,
            scale,
            diffs,
            diffs_rat,
            box_x,
            box_y,
            states: Vec::new(),
            index: HashMap::new(),
            succs: Vec::new(),
            alive: Vec::new(),
            alive_valid: false,
            state_limit,
        };

        // Seed the standard connectivity targets up front.
        let digits = system.digits().to_vec();
        for i in 0..digits.len() {
            for j in (i + 1)..digits.len() {
                let target = LatticePoint::new(&digits[j] - &digits[i], rat(0));
                automaton.ensure_target(&target)?;
            }
        }
        Ok(automaton)
    }

    /// Automaton with default bounds (13-term) and default state limit.
    pub fn with_defaults(system: &DigitSystem) -> Result<Self> {
        let bounds = tail_bounds(system.poly(), DEFAULT_BOUND_TERMS)?;
        Self::build(system, &bounds, DEFAULT_STATE_LIMIT)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn box_bounds(&self) -> (i128, i128) {
        (self.box_x, self.box_y)
    }

    /// Scaled integer coordinates of `l`, or `None` when `l` is off the
    /// digit lattice (and therefore cannot be a member).
    fn scaled(&self, l: &LatticePoint) -> Option<(i128, i128)> {
        let s = Rational::from_integer(self.scale.clone());
        let x = &l.gamma * &s;
        let y = &l.delta * &s;
        if !x.denom().is_one() || !y.denom().is_one() {
            return None;
        }
        Some((x.numer().to_i128()?, y.numer().to_i128()?))
    }

    fn in_box(&self, (x, y): (i128, i128)) -> bool {
        x.abs() <= self.box_x && y.abs() <= self.box_y
    }

    fn intern(&mut self, key: (i128, i128)) -> Result<(u32, bool)> {
        if let Some(&id) = self.index.get(&key) {
            return Ok((id, false));
        }
        if self.states.len() >= self.state_limit {
            return Err(Error::StateLimit {
                limit: self.state_limit,
            });
        }
        let id = self.states.len() as u32;
        self.states.push(key);
        self.succs.push(Vec::new());
        self.index.insert(key, id);
        Ok((id, true))
    }

    /// Discover all states reachable from `l`, if it lies on the lattice and
    /// inside the box. Returns the state id when the target is representable.
    ///
    /// On a state-limit failure the automaton rolls back to its previous
    /// state set, so existing queries stay answerable.
    pub fn ensure_target(&mut self, l: &LatticePoint) -> Result<Option<u32>> {
        let Some(key) = self.scaled(l) else {
            return Ok(None);
        };
        if !self.in_box(key) {
            return Ok(None);
        }
        if let Some(&id) = self.index.get(&key) {
            return Ok(Some(id));
        }

        let checkpoint = self.states.len();
        match self.explore_from(key) {
            Ok(root) => {
                self.alive_valid = false;
                Ok(Some(root))
            }
            Err(e) => {
                // new states have ids >= checkpoint and no old state's
                // successor list was touched
                for state in self.states.drain(checkpoint..) {
                    self.index.remove(&state);
                }
                self.succs.truncate(checkpoint);
                Err(e)
            }
        }
    }

    fn explore_from(&mut self, key: (i128, i128)) -> Result<u32> {
        let (root, _) = self.intern(key)?;
        let mut queue = VecDeque::new();
        queue.push_back(root);
        while let Some(idx) = queue.pop_front() {
            let (x, y) = self.states[idx as usize];
            let mut edges = Vec::new();
            for di in 0..self.diffs.len() {
                let b = self.diffs[di];
                let nx = -(self.q * y + b);
                let ny = x - self.p * y;
                if nx.abs() <= self.box_x && ny.abs() <= self.box_y {
                    let (id, fresh) = self.intern((nx, ny))?;
                    if fresh {
                        queue.push_back(id);
                    }
                    edges.push((di as u16, id));
                }
            }
            self.succs[idx as usize] = edges;
        }
        Ok(root)
    }

    /// Greatest subset of states closed under "has a successor in the set",
    /// by repeatedly deleting states with no surviving successor.
    fn recompute_alive(&mut self) {
        let n = self.states.len();
        let mut out_count: Vec<u32> = self.succs.iter().map(|s| s.len() as u32).collect();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (src, edges) in self.succs.iter().enumerate() {
            for &(_, dst) in edges {
                preds[dst as usize].push(src as u32);
            }
        }
        let mut alive = vec![true; n];
        let mut queue: VecDeque<u32> = (0..n as u32)
            .filter(|&i| out_count[i as usize] == 0)
            .collect();
        for &i in &queue {
            alive[i as usize] = false;
        }
        while let Some(dead) = queue.pop_front() {
            for &pred in &preds[dead as usize] {
                out_count[pred as usize] -= 1;
                if out_count[pred as usize] == 0 && alive[pred as usize] {
                    alive[pred as usize] = false;
                    queue.push_back(pred);
                }
            }
        }
        self.alive = alive;
        self.alive_valid = true;
    }

    /// Decide `l in T - T`. Members come with an eventually periodic digit
    /// witness; for non-members the exhausted exploration is the refutation.
    pub fn is_member(&mut self, l: &LatticePoint) -> Result<Membership> {
        let id = self.ensure_target(l)?;
        let Some(id) = id else {
            return Ok(Membership {
                is_member: false,
                witness: None,
                states_explored: self.states.len(),
            });
        };
        if !self.alive_valid {
            self.recompute_alive();
        }
        if !self.alive[id as usize] {
            return Ok(Membership {
                is_member: false,
                witness: None,
                states_explored: self.states.len(),
            });
        }
        Ok(Membership {
            is_member: true,
            witness: Some(self.witness_from(id)),
            states_explored: self.states.len(),
        })
    }

    /// Deterministic witness: from each state follow the smallest digit
    /// difference whose successor is alive; the first revisited state closes
    /// the period.
    fn witness_from(&self, start: u32) -> RadixExpansion {
        let mut seen: HashMap<u32, usize> = HashMap::new();
        let mut digits: Vec<Rational> = Vec::new();
        let mut cur = start;
        loop {
            if let Some(&pos) = seen.get(&cur) {
                let period = digits.split_off(pos);
                return RadixExpansion::fractional(digits, period);
            }
            seen.insert(cur, digits.len());
            let &(di, next) = self.succs[cur as usize]
                .iter()
                .find(|(_, n)| self.alive[*n as usize])
                .expect("alive state has an alive successor");
            digits.push(self.diffs_rat[di as usize].clone());
            cur = next;
        }
    }

    /// Fixed-point check: a state is alive iff it has an alive successor.
    pub fn alive_closure_holds(&mut self) -> bool {
        if !self.alive_valid {
            self.recompute_alive();
        }
        self.succs.iter().enumerate().all(|(i, edges)| {
            let has_alive_succ = edges.iter().any(|&(_, n)| self.alive[n as usize]);
            self.alive[i] == has_alive_succ
        })
    }

    /// All discovered states satisfy the box bounds.
    pub fn box_invariant_holds(&self) -> bool {
        self.states.iter().all(|&s| self.in_box(s))
    }
}

/// One-shot membership query with default bounds and state limit.
pub fn is_member(l: &LatticePoint, system: &DigitSystem) -> Result<Membership> {
    let mut automaton = NeighborAutomaton::with_defaults(system)?;
    automaton.is_member(l)
}
