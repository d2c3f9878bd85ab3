//! Warping degrees and up-down labelings of twisted knot diagrams.
//!
//! Base points sit on edges; `EdgeRef(k)` is the gap just before the `k`-th
//! non-virtual token of the code as stored. A crossing is a warping crossing
//! for a base point when it is first met as an under pass after an even
//! number of bars, or as an over pass after an odd number.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::{EdgeRef, Token, TwistedGaussCode};
use crate::labeling::Parity;

fn check_edge(code: &TwistedGaussCode, base: EdgeRef) -> Result<()> {
    if base.0 >= code.edge_count() {
        return Err(Error::InvalidReference(format!(
            "edge {} out of range (code has {} edges)",
            base.0,
            code.edge_count()
        )));
    }
    Ok(())
}

fn scan(skeleton: &[Token], start: usize) -> usize {
    let m = skeleton.len();
    let mut seen = HashSet::new();
    let mut bars = 0usize;
    let mut degree = 0;
    for j in 0..m {
        let t = skeleton[(start + j) % m];
        match t {
            Token::Bar => bars += 1,
            Token::Over(id) | Token::Under(id) => {
                if !seen.insert(id) {
                    continue;
                }
                let even = bars % 2 == 0;
                if matches!(t, Token::Under(_)) == even {
                    degree += 1;
                }
            }
            Token::Virtual(_) => {}
        }
    }
    degree
}

/// d(D_a) for the base point on `base`, by a direct scan.
pub fn warping_degree_at(code: &TwistedGaussCode, base: EdgeRef) -> Result<usize> {
    check_edge(code, base)?;
    let skeleton = code.skeleton();
    if skeleton.is_empty() {
        return Ok(0);
    }
    Ok(scan(&skeleton, base.0))
}

fn all_degrees(code: &TwistedGaussCode) -> Vec<usize> {
    let skeleton = code.skeleton();
    if skeleton.is_empty() {
        return vec![0];
    }
    (0..skeleton.len()).map(|k| scan(&skeleton, k)).collect()
}

/// Bars strictly between the pass at `j` and the other pass of its crossing,
/// going forward.
fn arc_bars(skeleton: &[Token], j: usize) -> usize {
    let m = skeleton.len();
    let id = skeleton[j].crossing_id().expect("arc starts at a classical pass");
    let mut bars = 0;
    for step in 1..m {
        let t = skeleton[(j + step) % m];
        if t == Token::Bar {
            bars += 1;
        } else if t.crossing_id() == Some(id) {
            return bars;
        }
    }
    unreachable!("crossing {id} has a single pass")
}

/// Label change across the pass at `j`: zero when the arc back to the
/// crossing has odd bars, otherwise +1 over / -1 under.
fn pass_delta(skeleton: &[Token], j: usize) -> i64 {
    match (Parity::of(arc_bars(skeleton, j)), skeleton[j]) {
        (Parity::Odd, _) => 0,
        (Parity::Even, Token::Over(_)) => 1,
        (Parity::Even, _) => -1,
    }
}

/// Edge labels across one skeleton token: `(coefficient, constant)` update.
fn step(skeleton: &[Token], j: usize, crossings: i64, (a, b): (i64, i64)) -> (i64, i64) {
    match skeleton[j] {
        Token::Bar => (-a, crossings - b),
        _ => (a, b + pass_delta(skeleton, j)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WarpingReport {
    /// d(D_a) for every edge, in the order of [`TwistedGaussCode::edges`].
    pub degrees: Vec<usize>,
    pub min: usize,
    pub argmin: usize,
    pub crossings: usize,
    pub bars: usize,
    pub has_bars: bool,
    pub is_classical: bool,
    pub is_alternating: bool,
}

/// Cyclic pass word, ignoring bars and virtual passes, strictly alternates O/U.
pub fn is_alternating(code: &TwistedGaussCode) -> bool {
    let passes: Vec<bool> = code
        .tokens()
        .iter()
        .filter_map(|t| match t {
            Token::Over(_) => Some(true),
            Token::Under(_) => Some(false),
            _ => None,
        })
        .collect();
    let m = passes.len();
    (0..m).all(|i| passes[i] != passes[(i + 1) % m])
}

pub fn warping_degree(code: &TwistedGaussCode) -> WarpingReport {
    let degrees = all_degrees(code);
    let (argmin, &min) = degrees
        .iter()
        .enumerate()
        .min_by_key(|&(k, d)| (*d, k))
        .expect("at least one edge");
    let bars = code.bar_count();
    WarpingReport {
        min,
        argmin,
        crossings: code.crossing_count(),
        bars,
        has_bars: bars > 0,
        is_classical: bars == 0 && !code.has_virtual(),
        is_alternating: is_alternating(code),
        degrees,
    }
}

/// Warping labeling, built by scanning edge 0 and then carrying the label
/// around the code with the local bar and crossing rules.
pub fn warping_labeling(code: &TwistedGaussCode) -> Vec<i64> {
    let skeleton = code.skeleton();
    if skeleton.is_empty() {
        return vec![0];
    }
    let crossings = code.crossing_count() as i64;
    let mut labels = vec![scan(&skeleton, 0) as i64];
    for j in 0..skeleton.len() - 1 {
        let (_, next) = step(&skeleton, j, crossings, (1, *labels.last().unwrap()));
        labels.push(next);
    }
    labels
}

/// Checks the local rules of an up-down labeling on every edge boundary.
pub fn is_updown_labeling(code: &TwistedGaussCode, labels: &[i64]) -> bool {
    let skeleton = code.skeleton();
    if labels.len() != code.edge_count() {
        return false;
    }
    let m = skeleton.len();
    let crossings = code.crossing_count() as i64;
    (0..m).all(|j| {
        let (before, after) = (labels[j], labels[(j + 1) % m]);
        match skeleton[j] {
            Token::Bar => before + after == crossings,
            _ => after == before + pass_delta(&skeleton, j),
        }
    })
}

/// Per-crossing label changes `(at the over pass, at the under pass)`.
pub fn crossing_changes(code: &TwistedGaussCode) -> Vec<(u32, i64, i64)> {
    let skeleton = code.skeleton();
    let mut out: Vec<(u32, i64, i64)> = Vec::new();
    for (j, t) in skeleton.iter().enumerate() {
        if let Token::Over(id) = *t {
            let under = skeleton
                .iter()
                .position(|u| *u == Token::Under(id))
                .expect("validated code");
            out.push((id, pass_delta(&skeleton, j), pass_delta(&skeleton, under)));
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UpDownKind {
    Unique,
    OneParameter,
}

/// All up-down labelings of a code. Edge `e` carries
/// `coefficient[e] * x + constant[e]` where `x` is the label of edge 0;
/// going once around gives `closing.0 * x + closing.1`, which must equal `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpDownFamily {
    pub kind: UpDownKind,
    pub coefficient: Vec<i64>,
    pub constant: Vec<i64>,
    pub closing: (i64, i64),
    /// The unique labeling, or the warping labeling for one-parameter families.
    pub base: Vec<i64>,
}

impl UpDownFamily {
    /// The member whose edge-0 label is `x`, if that is a solution.
    pub fn member(&self, x: i64) -> Option<Vec<i64>> {
        if self.closing.0 * x + self.closing.1 != x {
            return None;
        }
        Some(self.coefficient.iter().zip(&self.constant).map(|(a, b)| a * x + b).collect())
    }
}

pub fn updown_solver(code: &TwistedGaussCode) -> Result<UpDownFamily> {
    let skeleton = code.skeleton();
    let crossings = code.crossing_count() as i64;
    let mut coefficient = vec![1];
    let mut constant = vec![0];
    let mut closing = (1, 0);
    for j in 0..skeleton.len() {
        let next = step(&skeleton, j, crossings, closing);
        if j + 1 < skeleton.len() {
            coefficient.push(next.0);
            constant.push(next.1);
        }
        closing = next;
    }
    let (kind, x) = match closing {
        (-1, b) if b % 2 == 0 => (UpDownKind::Unique, b / 2),
        (1, 0) => (UpDownKind::OneParameter, warping_degree_at(code, EdgeRef(0))? as i64),
        other => {
            return Err(Error::Internal(format!(
                "closing equation {}x + {} = x has no integer solution",
                other.0, other.1
            )))
        }
    };
    let base: Vec<i64> = coefficient.iter().zip(&constant).map(|(a, b)| a * x + b).collect();
    Ok(UpDownFamily { kind, coefficient, constant, closing, base })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// Bases on either side of a bar have degrees summing to #C.
    BarAdjacentSum,
    /// Across a pass: equal on an odd arc, else +1 over / -1 under.
    CrossingAdjacentRule,
    /// 2 d(D) <= #C, claimed when the code has a bar.
    HalfCrossingBound,
    /// d(D_a) + d(D*_a) = #C at every base.
    MirrorPerBase,
    /// d(D) + d(D*) <= #C.
    MirrorSumBound,
    /// d(D_a) + d(-D_a) = #C at every base, claimed for bar-free codes.
    ReversalPerBase,
    /// d(D) + d(-D) + 1 <= #C, claimed for bar-free codes with a crossing.
    ReversalSumBound,
    /// Equality in the previous bound exactly when the code alternates.
    AlternatingEquality,
    /// Exactly one up-down labeling iff the bar count is odd.
    LabelingParity,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: Relation,
    /// Whether the relation is claimed for this kind of code.
    pub applicable: bool,
    pub holds: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn get(&self, relation: Relation) -> &RelationCheck {
        self.checks.iter().find(|c| c.relation == relation).expect("every relation is reported")
    }

    /// Every relation that is claimed for this code holds.
    pub fn all_applicable_hold(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds)
    }
}

/// Base `k` of `code` seen on the reversed code.
fn reversed_edge(code: &TwistedGaussCode, k: usize) -> usize {
    let m = code.skeleton().len();
    if m == 0 {
        0
    } else {
        (m - k) % m
    }
}

pub fn check_relations(code: &TwistedGaussCode) -> Result<RelationReport> {
    let skeleton = code.skeleton();
    let m = skeleton.len();
    let crossings = code.crossing_count();
    let c = crossings as i64;
    let bars = code.bar_count();
    let d = all_degrees(code);
    let d_of = |k: usize| d[k] as i64;
    let min_d = *d.iter().min().unwrap() as i64;
    let mut checks = Vec::new();

    let mut failures = Vec::new();
    for j in (0..m).filter(|&j| skeleton[j] == Token::Bar) {
        let (a, b) = (j, (j + 1) % m);
        if d_of(a) + d_of(b) != c {
            failures.push(format!("edges {a},{b}: {}+{} != {c}", d_of(a), d_of(b)));
        }
    }
    checks.push(RelationCheck {
        relation: Relation::BarAdjacentSum,
        applicable: bars > 0,
        holds: failures.is_empty(),
        witness: summary(failures, format!("{bars} bar(s), #C={c}")),
    });

    let mut failures = Vec::new();
    for j in (0..m).filter(|&j| skeleton[j].is_classical()) {
        let (a, b) = (j, (j + 1) % m);
        let expected = d_of(a) + pass_delta(&skeleton, j);
        if d_of(b) != expected {
            failures.push(format!("across {} (edges {a},{b}): {} != {expected}", skeleton[j], d_of(b)));
        }
    }
    checks.push(RelationCheck {
        relation: Relation::CrossingAdjacentRule,
        applicable: crossings > 0,
        holds: failures.is_empty(),
        witness: summary(failures, format!("{} pass(es)", 2 * crossings)),
    });

    checks.push(RelationCheck {
        relation: Relation::HalfCrossingBound,
        applicable: bars > 0,
        holds: 2 * min_d <= c,
        witness: format!("2*{min_d} <= {c}"),
    });

    let mirror = code.mirror();
    let dm = all_degrees(&mirror);
    let failures: Vec<String> = (0..d.len())
        .filter(|&k| d_of(k) + dm[k] as i64 != c)
        .map(|k| format!("edge {k}: {}+{} != {c}", d[k], dm[k]))
        .collect();
    checks.push(RelationCheck {
        relation: Relation::MirrorPerBase,
        applicable: true,
        holds: failures.is_empty(),
        witness: summary(failures, format!("{} base(s)", d.len())),
    });
    let min_mirror = *dm.iter().min().unwrap() as i64;
    checks.push(RelationCheck {
        relation: Relation::MirrorSumBound,
        applicable: true,
        holds: min_d + min_mirror <= c,
        witness: format!("{min_d}+{min_mirror} <= {c}"),
    });

    let reversed = code.reverse_orientation();
    let dr = all_degrees(&reversed);
    let dr_at = |k: usize| dr[reversed_edge(code, k)] as i64;
    let failures: Vec<String> = (0..d.len())
        .filter(|&k| d_of(k) + dr_at(k) != c)
        .map(|k| format!("edge {k}: {}+{} != {c}", d[k], dr_at(k)))
        .collect();
    checks.push(RelationCheck {
        relation: Relation::ReversalPerBase,
        applicable: bars == 0,
        holds: failures.is_empty(),
        witness: summary(failures, format!("{} base(s)", d.len())),
    });
    let min_rev = *dr.iter().min().unwrap() as i64;
    checks.push(RelationCheck {
        relation: Relation::ReversalSumBound,
        applicable: bars == 0 && crossings > 0,
        holds: min_d + min_rev < c,
        witness: format!("{min_d}+{min_rev}+1 <= {c}"),
    });
    let alternating = is_alternating(code);
    let equal = min_d + min_rev + 1 == c;
    checks.push(RelationCheck {
        relation: Relation::AlternatingEquality,
        applicable: bars == 0 && crossings > 0,
        holds: equal == alternating,
        witness: format!("equality={equal}, alternating={alternating}"),
    });

    let family = updown_solver(code)?;
    let unique = family.kind == UpDownKind::Unique;
    checks.push(RelationCheck {
        relation: Relation::LabelingParity,
        applicable: true,
        holds: unique == (bars % 2 == 1),
        witness: format!("{bars} bar(s), {:?}", family.kind),
    });

    Ok(RelationReport { checks })
}

fn summary(failures: Vec<String>, ok: String) -> String {
    if failures.is_empty() {
        ok
    } else {
        failures.join("; ")
    }
}

/// min{d(D), d(-D)}, an upper bound for the warping degree of the knot.
pub fn knot_invariant_upper_bound(code: &TwistedGaussCode) -> usize {
    let forward = warping_degree(code).min;
    let backward = warping_degree(&code.reverse_orientation()).min;
    forward.min(backward)
}

/// Removes cyclically adjacent bar pairs and adjacent kink passes of one
/// crossing until none remain.
pub fn code_t1_r1_simplify(code: &TwistedGaussCode) -> TwistedGaussCode {
    let mut tokens = code.tokens().to_vec();
    loop {
        let len = tokens.len();
        if len < 2 {
            break;
        }
        let hit = (0..len).find(|&i| {
            let (a, b) = (tokens[i], tokens[(i + 1) % len]);
            match (a, b) {
                (Token::Bar, Token::Bar) => true,
                (Token::Over(x), Token::Under(y)) | (Token::Under(x), Token::Over(y)) => x == y,
                _ => false,
            }
        });
        let Some(i) = hit else { break };
        let j = (i + 1) % len;
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        tokens.remove(hi);
        tokens.remove(lo);
    }
    TwistedGaussCode::new(tokens).expect("removing whole crossings keeps a code valid")
}
