//! Up-down labelings of braid diagrams and the label maps they induce.
//!
//! Along a strand the label changes only at bars and classical crossings:
//! a bar sends `l` to `#C - l`, and a crossing adds `+1` (over) or `-1`
//! (under) unless the closure path from that crossing back to itself,
//! leaving along the strand, meets an odd number of bars.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Permutation, Role, StrandEvent, StrandPath};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Parity {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Label change at one pass through a classical crossing.
fn crossing_delta(role: Role, parity: Parity) -> i64 {
    match (parity, role) {
        (Parity::Odd, _) | (_, Role::Virtual) => 0,
        (Parity::Even, Role::Over) => 1,
        (Parity::Even, Role::Under) => -1,
    }
}

/// Walks the closure from just below `events[strand][start]` until the
/// crossing `instance` is met again, returning the number of bars passed.
fn walk_bars(paths: &[StrandPath], strand: usize, start: usize, instance: usize) -> usize {
    let total: usize = paths.iter().map(|p| p.events.len()).sum();
    let mut bars = 0;
    let (mut s, mut j) = (strand, start + 1);
    for _ in 0..=total + paths.len() {
        while j < paths[s].events.len() {
            let e = paths[s].events[j];
            if e.is_bar() {
                bars += 1;
            } else if e.instance() == instance {
                return bars;
            }
            j += 1;
        }
        // bottom position q continues as the strand entering at top position q
        s = paths[s].bottom;
        j = 0;
    }
    unreachable!("closure walk did not return to crossing {instance}")
}

fn locate(paths: &[StrandPath], instance: usize, role: Role) -> Option<(usize, usize)> {
    paths.iter().enumerate().find_map(|(s, p)| {
        p.events.iter().position(|e| {
            matches!(*e, StrandEvent::Crossing { instance: k, role: r, .. } if k == instance && r == role)
        })
        .map(|j| (s, j))
    })
}

/// Parity of the bars on the closure path that leaves crossing `instance`
/// (a generator offset) along the `role` branch and ends at the first
/// return to the same crossing.
pub fn return_path_bar_parity(w: &BraidWord, instance: usize, role: Role) -> Result<Parity> {
    let g = w
        .gens()
        .get(instance)
        .ok_or_else(|| Error::InvalidReference(format!("no generator at offset {instance}")))?;
    if !g.is_classical() {
        return Err(Error::InvalidReference(format!("{g} at offset {instance} is not a classical crossing")));
    }
    if role == Role::Virtual {
        return Err(Error::InvalidReference("branch must be over or under".into()));
    }
    let paths = w.strand_paths();
    let (s, j) = locate(&paths, instance, role)
        .ok_or_else(|| Error::Internal(format!("crossing {instance} missing from strand paths")))?;
    Ok(Parity::of(walk_bars(&paths, s, j, instance)))
}

/// Labels of every edge, `strands[s][k]` being the `k`-th edge of strand `s`
/// counted from the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    pub strands: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub edges: EdgeLabeling,
    /// Labels at bottom positions `0..n`.
    pub bottom: Vec<i64>,
}

/// Concrete up-down labeling for the given top labels. Return paths are
/// found by walking the closure event by event.
pub fn propagate_labels(w: &BraidWord, top: &[i64]) -> Result<Propagation> {
    let n = w.degree();
    if top.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: top.len() });
    }
    let c = w.crossing_count() as i64;
    let paths = w.strand_paths();
    let mut strands = Vec::with_capacity(n);
    let mut bottom = vec![0; n];
    for (s, path) in paths.iter().enumerate() {
        let mut label = top[s];
        let mut edges = vec![label];
        for (j, e) in path.events.iter().enumerate() {
            match *e {
                StrandEvent::Bar { .. } => label = c - label,
                StrandEvent::Crossing { role: Role::Virtual, .. } => continue,
                StrandEvent::Crossing { instance, role, .. } => {
                    let parity = Parity::of(walk_bars(&paths, s, j, instance));
                    label += crossing_delta(role, parity);
                }
            }
            edges.push(label);
        }
        bottom[path.bottom] = label;
        strands.push(edges);
    }
    Ok(Propagation { edges: EdgeLabeling { strands }, bottom })
}

/// Checks every local rule of an up-down labeling on `w`.
pub fn is_updown_labeling(w: &BraidWord, labels: &EdgeLabeling) -> bool {
    let c = w.crossing_count() as i64;
    let paths = w.strand_paths();
    if labels.strands.len() != paths.len() {
        return false;
    }
    paths.iter().zip(&labels.strands).enumerate().all(|(s, (path, edges))| {
        let splits: Vec<(usize, &StrandEvent)> =
            path.events.iter().enumerate().filter(|(_, e)| e.splits_edge()).collect();
        if edges.len() != splits.len() + 1 {
            return false;
        }
        splits.iter().enumerate().all(|(k, &(j, e))| {
            let (above, below) = (edges[k], edges[k + 1]);
            match *e {
                StrandEvent::Bar { .. } => above + below == c,
                StrandEvent::Crossing { instance, role, .. } => {
                    let parity = Parity::of(walk_bars(&paths, s, j, instance));
                    below == above + crossing_delta(role, parity)
                }
            }
        })
    })
}

/// The up-down labeling function as an affine map: the label arriving at
/// bottom position `perm(i)` is `sign[i] * x_i + offset[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "AffineWire", try_from = "AffineWire")]
pub struct AffineLabelMap {
    pub perm: Permutation,
    pub sign: Vec<i64>,
    pub offset: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct AffineWire {
    n: usize,
    perm: Vec<usize>,
    sign: Vec<i64>,
    offset: Vec<i64>,
}

impl From<AffineLabelMap> for AffineWire {
    fn from(m: AffineLabelMap) -> Self {
        AffineWire { n: m.degree(), perm: m.perm.one_based(), sign: m.sign, offset: m.offset }
    }
}

impl TryFrom<AffineWire> for AffineLabelMap {
    type Error = Error;

    fn try_from(w: AffineWire) -> Result<Self> {
        if w.perm.len() != w.n || w.sign.len() != w.n || w.offset.len() != w.n {
            return Err(Error::LengthMismatch { expected: w.n, got: w.perm.len() });
        }
        if w.sign.iter().any(|s| s.abs() != 1) {
            return Err(Error::Range(format!("signs must be ±1: {:?}", w.sign)));
        }
        Ok(AffineLabelMap { perm: Permutation::from_one_based(&w.perm)?, sign: w.sign, offset: w.offset })
    }
}

impl AffineLabelMap {
    pub fn identity(n: usize) -> Self {
        AffineLabelMap { perm: Permutation::identity(n), sign: vec![1; n], offset: vec![0; n] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn evaluate(&self, x: &[i64]) -> Result<Vec<i64>> {
        let n = self.degree();
        if x.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: x.len() });
        }
        let mut y = vec![0; n];
        for i in 0..n {
            y[self.perm.apply(i)] = self.sign[i] * x[i] + self.offset[i];
        }
        Ok(y)
    }

    /// Output components written as affine expressions in `x1..xn`.
    pub fn formula(&self) -> Vec<String> {
        let inv = self.perm.inverse();
        (0..self.degree())
            .map(|j| {
                let i = inv.apply(j);
                let var = format!("x{}", i + 1);
                match (self.offset[i], self.sign[i]) {
                    (0, 1) => var,
                    (0, _) => format!("-{var}"),
                    (o, 1) => format!("{o}+{var}"),
                    (o, _) => format!("{o}-{var}"),
                }
            })
            .collect()
    }
}

/// Evaluates an affine map on `x`; see [`AffineLabelMap::evaluate`].
pub fn evaluate(m: &AffineLabelMap, x: &[i64]) -> Result<Vec<i64>> {
    m.evaluate(x)
}

/// Per-cycle bookkeeping for the closure: each strand's events laid end to
/// end in closure order, with running bar counts.
struct ClosureIndex {
    /// (cycle id, offset of the strand's first event in the cycle)
    strand_start: Vec<(usize, usize)>,
    /// bars_before[cycle][k] = bars among the first k events of the cycle
    bars_before: Vec<Vec<usize>>,
}

impl ClosureIndex {
    fn new(paths: &[StrandPath], perm: &Permutation) -> Self {
        let mut strand_start = vec![(0, 0); paths.len()];
        let mut bars_before = Vec::new();
        for (cid, cycle) in perm.cycles().into_iter().enumerate() {
            let mut prefix = vec![0];
            let mut offset = 0;
            for s in cycle {
                strand_start[s] = (cid, offset);
                for e in &paths[s].events {
                    let last = *prefix.last().unwrap();
                    prefix.push(last + usize::from(e.is_bar()));
                }
                offset += paths[s].events.len();
            }
            bars_before.push(prefix);
        }
        ClosureIndex { strand_start, bars_before }
    }

    fn cycle_bars(&self, cid: usize) -> usize {
        *self.bars_before[cid].last().unwrap()
    }

    /// Bars strictly between cyclic offsets `from` and `to` going forward.
    fn bars_between(&self, cid: usize, from: usize, to: usize) -> usize {
        let pre = &self.bars_before[cid];
        if to > from {
            pre[to] - pre[from + 1]
        } else {
            self.cycle_bars(cid) - pre[from + 1] + pre[to]
        }
    }
}

/// The up-down labeling function of `w`, computed symbolically. Return-path
/// parities come from prefix sums over the closure cycles.
pub fn updown_map(w: &BraidWord) -> AffineLabelMap {
    let n = w.degree();
    let c = w.crossing_count() as i64;
    let paths = w.strand_paths();
    let perm = w.permutation();
    let index = ClosureIndex::new(&paths, &perm);

    // instance -> cyclic location of each classical pass
    let mut passes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); w.len()];
    for (s, path) in paths.iter().enumerate() {
        let (cid, start) = index.strand_start[s];
        for (j, e) in path.events.iter().enumerate() {
            if let StrandEvent::Crossing { instance, role, .. } = *e {
                if role != Role::Virtual {
                    passes[instance].push((cid, start + j));
                }
            }
        }
    }

    let mut sign = vec![1; n];
    let mut offset = vec![0; n];
    for (s, path) in paths.iter().enumerate() {
        let (cid, start) = index.strand_start[s];
        let (mut a, mut b) = (1i64, 0i64);
        for (j, e) in path.events.iter().enumerate() {
            match *e {
                StrandEvent::Bar { .. } => {
                    a = -a;
                    b = c - b;
                }
                StrandEvent::Crossing { role: Role::Virtual, .. } => {}
                StrandEvent::Crossing { instance, role, .. } => {
                    let here = start + j;
                    let &(other_cid, other) = passes[instance]
                        .iter()
                        .find(|&&p| p != (cid, here))
                        .expect("classical crossing has two passes");
                    let bars = if other_cid == cid {
                        index.bars_between(cid, here, other)
                    } else {
                        index.cycle_bars(cid)
                    };
                    b += crossing_delta(role, Parity::of(bars));
                }
            }
        }
        sign[s] = a;
        offset[s] = b;
    }
    AffineLabelMap { perm, sign, offset }
}

/// The Z2-labeling function: output at `perm(i)` is `x_i + c_i` mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Z2Wire", try_from = "Z2Wire")]
pub struct Z2LabelMap {
    pub perm: Permutation,
    pub c: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct Z2Wire {
    n: usize,
    perm: Vec<usize>,
    c: Vec<u8>,
}

impl From<Z2LabelMap> for Z2Wire {
    fn from(m: Z2LabelMap) -> Self {
        Z2Wire { n: m.degree(), perm: m.perm.one_based(), c: m.c }
    }
}

impl TryFrom<Z2Wire> for Z2LabelMap {
    type Error = Error;

    fn try_from(w: Z2Wire) -> Result<Self> {
        if w.perm.len() != w.n || w.c.len() != w.n {
            return Err(Error::LengthMismatch { expected: w.n, got: w.perm.len() });
        }
        if w.c.iter().any(|&c| c > 1) {
            return Err(Error::Range(format!("parities must be 0 or 1: {:?}", w.c)));
        }
        Ok(Z2LabelMap { perm: Permutation::from_one_based(&w.perm)?, c: w.c })
    }
}

impl Z2LabelMap {
    pub fn identity(n: usize) -> Self {
        Z2LabelMap { perm: Permutation::identity(n), c: vec![0; n] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.c.iter().all(|&c| c == 0)
    }

    pub fn evaluate(&self, x: &[u8]) -> Result<Vec<u8>> {
        let n = self.degree();
        if x.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: x.len() });
        }
        let mut y = vec![0; n];
        for i in 0..n {
            y[self.perm.apply(i)] = (x[i] + self.c[i]) & 1;
        }
        Ok(y)
    }

    pub fn polynomial(&self) -> Z2Polynomial {
        let k = self.c.iter().filter(|&&c| c == 0).count();
        Z2Polynomial { k, m: self.degree() - k }
    }
}

pub fn z2_reduce(m: &AffineLabelMap) -> Z2LabelMap {
    Z2LabelMap { perm: m.perm.clone(), c: m.offset.iter().map(|o| o.rem_euclid(2) as u8).collect() }
}

pub fn z2_map(w: &BraidWord) -> Z2LabelMap {
    z2_reduce(&updown_map(w))
}

/// `x^k (x+1)^m` over the two-element field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Z2Polynomial {
    pub k: usize,
    pub m: usize,
}

impl fmt::Display for Z2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 && self.m == 0 {
            return f.write_str("1");
        }
        match self.k {
            0 => {}
            1 => f.write_str("x")?,
            k => write!(f, "x^{k}")?,
        }
        match self.m {
            0 => Ok(()),
            1 => f.write_str("(x+1)"),
            m => write!(f, "(x+1)^{m}"),
        }
    }
}

pub fn z2_polynomial(w: &BraidWord) -> Z2Polynomial {
    z2_map(w).polynomial()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum R2Verdict {
    /// Any move sequence between the two diagrams, if one exists, uses R2.
    RequiresR2,
    /// Equal label maps; says nothing about equivalence.
    Inconclusive,
    DegreeMismatch,
}

impl fmt::Display for R2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            R2Verdict::RequiresR2 => "RequiresR2",
            R2Verdict::Inconclusive => "Inconclusive",
            R2Verdict::DegreeMismatch => "DegreeMismatch",
        })
    }
}

pub fn r2_indicator(a: &BraidWord, b: &BraidWord) -> R2Verdict {
    if a.degree() != b.degree() {
        R2Verdict::DegreeMismatch
    } else if updown_map(a) != updown_map(b) {
        R2Verdict::RequiresR2
    } else {
        R2Verdict::Inconclusive
    }
}

/// The lexicographically least `x` in `{0,1}^n` with `g(x) != x`, if any.
pub fn nontriviality_witness(w: &BraidWord) -> Option<Vec<u8>> {
    let g = z2_map(w);
    let n = g.degree();
    if g.c.iter().any(|&c| c == 1) {
        return Some(vec![0; n]);
    }
    // With all parities zero, x is fixed iff it is constant on cycles, so the
    // first witness is the unit vector at the last moved position.
    let j = (0..n).rev().find(|&i| g.perm.apply(i) != i)?;
    let mut x = vec![0; n];
    x[j] = 1;
    Some(x)
}
