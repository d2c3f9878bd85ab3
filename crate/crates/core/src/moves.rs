//! Local rewrite rules on braid words, move enumeration and random walks.
//!
//! Every rule is expanded into concrete instances `lhs <-> rhs` for a given
//! degree. A [`MoveSite`] names a rule, a direction and a position; the
//! parameters `i` and `eps` pick the instance when the rewritten side is
//! empty and are informative otherwise.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{BraidWord, Generator, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleName {
    R2,
    R3,
    FarCommute,
    V2,
    V3,
    V4,
    T1,
    T2,
    T3,
    BarCommute,
    BarPastCrossing,
    Forbidden1,
    Forbidden2,
}

impl RuleName {
    pub const ALL: [RuleName; 13] = [
        RuleName::R2,
        RuleName::R3,
        RuleName::FarCommute,
        RuleName::V2,
        RuleName::V3,
        RuleName::V4,
        RuleName::T1,
        RuleName::T2,
        RuleName::T3,
        RuleName::BarCommute,
        RuleName::BarPastCrossing,
        RuleName::Forbidden1,
        RuleName::Forbidden2,
    ];

    pub fn is_forbidden(self) -> bool {
        matches!(self, RuleName::Forbidden1 | RuleName::Forbidden2)
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RuleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::Syntax(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// lhs to rhs.
    Forward,
    /// rhs to lhs.
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            _ => Err(Error::Syntax(s.to_string())),
        }
    }
}

/// A rule in symbolic form, for listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveRule {
    pub name: RuleName,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub reversible: bool,
    pub forbidden: bool,
}

/// Symbolic patterns use `s_i^e` for a classical crossing of sign `e`,
/// `v_i` for a virtual crossing and `b_i` for a bar.
pub fn rule_catalog() -> Vec<MoveRule> {
    let rule = |name: RuleName, lhs, rhs| MoveRule {
        name,
        lhs,
        rhs,
        reversible: true,
        forbidden: name.is_forbidden(),
    };
    vec![
        rule(RuleName::R2, "s_i^e s_i^-e", ""),
        rule(RuleName::R3, "s_i^e s_i+1^e s_i^e", "s_i+1^e s_i^e s_i+1^e"),
        rule(RuleName::FarCommute, "g h", "h g   (crossings on disjoint positions)"),
        rule(RuleName::V2, "v_i v_i", ""),
        rule(RuleName::V3, "v_i v_i+1 v_i", "v_i+1 v_i v_i+1"),
        rule(RuleName::V4, "v_i s_i+1^e v_i", "v_i+1 s_i^e v_i+1"),
        rule(RuleName::T1, "b_i b_i", ""),
        rule(RuleName::T2, "v_i b_i+1 | v_i b_i", "b_i v_i | b_i+1 v_i"),
        rule(RuleName::T3, "b_i b_i+1 s_i^e", "s_i^-e b_i b_i+1"),
        rule(RuleName::BarCommute, "b_i b_j", "b_j b_i   (i != j)"),
        rule(RuleName::BarPastCrossing, "b_j x_i", "x_i b_j   (x = s^e or v, j not in {i, i+1})"),
        rule(RuleName::Forbidden1, "v_i s_i+1^e s_i^e", "s_i+1^e s_i^e v_i+1"),
        rule(RuleName::Forbidden2, "b_i s_i^e | b_i+1 s_i^e", "s_i^e b_i+1 | s_i^e b_i"),
    ]
}

/// One concrete rewrite `lhs <-> rhs` for a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleName,
    pub index: Option<usize>,
    pub eps: Option<Sign>,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

impl RuleInstance {
    fn source(&self, dir: Direction) -> &[Generator] {
        match dir {
            Direction::Forward => &self.lhs,
            Direction::Backward => &self.rhs,
        }
    }

    fn target(&self, dir: Direction) -> &[Generator] {
        match dir {
            Direction::Forward => &self.rhs,
            Direction::Backward => &self.lhs,
        }
    }
}

/// Every rule instance for degree `n`.
pub fn instances(n: usize) -> Vec<RuleInstance> {
    use Generator as G;
    let mut out = Vec::new();
    let mut push = |rule, index: Option<usize>, eps: Option<Sign>, lhs: Vec<G>, rhs: Vec<G>| {
        out.push(RuleInstance { rule, index, eps, lhs, rhs })
    };
    let signs = [Sign::Plus, Sign::Minus];
    let s = G::classical;
    let v = G::virtual_crossing;
    let b = G::bar;

    for i in 1..n {
        for e in signs {
            push(RuleName::R2, Some(i), Some(e), vec![s(e, i), s(e.flip(), i)], vec![]);
        }
    }
    for i in 1..n.saturating_sub(1) {
        for e in signs {
            push(
                RuleName::R3,
                Some(i),
                Some(e),
                vec![s(e, i), s(e, i + 1), s(e, i)],
                vec![s(e, i + 1), s(e, i), s(e, i + 1)],
            );
        }
    }
    let mut crossings = Vec::new();
    for i in 1..n {
        crossings.extend([G::positive(i), G::negative(i), v(i)]);
    }
    crossings.sort();
    for &g in &crossings {
        for &h in &crossings {
            if g < h && g.disjoint_from(&h) {
                push(RuleName::FarCommute, Some(g.index), g.sign(), vec![g, h], vec![h, g]);
            }
        }
    }
    for i in 1..n {
        push(RuleName::V2, Some(i), None, vec![v(i), v(i)], vec![]);
    }
    for i in 1..n.saturating_sub(1) {
        push(RuleName::V3, Some(i), None, vec![v(i), v(i + 1), v(i)], vec![v(i + 1), v(i), v(i + 1)]);
        for e in signs {
            push(
                RuleName::V4,
                Some(i),
                Some(e),
                vec![v(i), s(e, i + 1), v(i)],
                vec![v(i + 1), s(e, i), v(i + 1)],
            );
        }
    }
    for i in 1..=n {
        push(RuleName::T1, Some(i), None, vec![b(i), b(i)], vec![]);
    }
    for i in 1..n {
        push(RuleName::T2, Some(i), None, vec![v(i), b(i + 1)], vec![b(i), v(i)]);
        push(RuleName::T2, Some(i), None, vec![v(i), b(i)], vec![b(i + 1), v(i)]);
        for e in signs {
            push(
                RuleName::T3,
                Some(i),
                Some(e),
                vec![b(i), b(i + 1), s(e, i)],
                vec![s(e.flip(), i), b(i), b(i + 1)],
            );
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            push(RuleName::BarCommute, Some(i), None, vec![b(i), b(j)], vec![b(j), b(i)]);
        }
    }
    for j in 1..=n {
        for &x in &crossings {
            if x.index != j && x.index + 1 != j {
                push(RuleName::BarPastCrossing, Some(x.index), x.sign(), vec![b(j), x], vec![x, b(j)]);
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        for e in signs {
            push(
                RuleName::Forbidden1,
                Some(i),
                Some(e),
                vec![v(i), s(e, i + 1), s(e, i)],
                vec![s(e, i + 1), s(e, i), v(i + 1)],
            );
        }
    }
    for i in 1..n {
        for e in signs {
            push(RuleName::Forbidden2, Some(i), Some(e), vec![b(i), s(e, i)], vec![s(e, i), b(i + 1)]);
            push(RuleName::Forbidden2, Some(i), Some(e), vec![b(i + 1), s(e, i)], vec![s(e, i), b(i)]);
        }
    }
    out
}

/// A place where a rule applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MoveSite {
    pub rule: RuleName,
    pub direction: Direction,
    /// Offset of the rewritten window in the generator sequence; for
    /// insertions, the offset the new generators will occupy.
    pub position: usize,
    pub index: Option<usize>,
    pub eps: Option<Sign>,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} @{}", self.rule, self.direction, self.position)?;
        if let Some(i) = self.index {
            write!(f, " i={i}")?;
        }
        if let Some(e) = self.eps {
            write!(f, " eps={e}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Syntax(s.trim().to_string());
        let mut parts = s.split_whitespace();
        let rule = parts.next().ok_or_else(bad)?.parse()?;
        let direction = parts.next().ok_or_else(bad)?.parse()?;
        let position = parts
            .next()
            .and_then(|p| p.strip_prefix('@'))
            .and_then(|p| p.parse().ok())
            .ok_or_else(bad)?;
        let mut site = MoveSite { rule, direction, position, index: None, eps: None };
        for part in parts {
            if let Some(i) = part.strip_prefix("i=") {
                site.index = Some(i.parse().map_err(|_| bad())?);
            } else if let Some(e) = part.strip_prefix("eps=") {
                site.eps = Some(e.parse()?);
            } else {
                return Err(bad());
            }
        }
        Ok(site)
    }
}

/// Parses a trace, one site per line; blank lines and `#` comments are skipped.
pub fn parse_trace(text: &str) -> Result<Vec<MoveSite>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

/// Rule instances of one degree, indexed for matching.
#[derive(Debug, Clone)]
pub struct MoveEngine {
    degree: usize,
    instances: Vec<RuleInstance>,
    by_head: HashMap<Generator, Vec<(usize, Direction)>>,
    insertions: Vec<(usize, Direction)>,
}

impl MoveEngine {
    pub fn new(degree: usize) -> Self {
        let instances = instances(degree);
        let mut by_head: HashMap<Generator, Vec<(usize, Direction)>> = HashMap::new();
        let mut insertions = Vec::new();
        for (k, inst) in instances.iter().enumerate() {
            for dir in [Direction::Forward, Direction::Backward] {
                match inst.source(dir).first() {
                    Some(g) => by_head.entry(*g).or_default().push((k, dir)),
                    None => insertions.push((k, dir)),
                }
            }
        }
        MoveEngine { degree, instances, by_head, insertions }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn site(&self, k: usize, dir: Direction, position: usize) -> MoveSite {
        let inst = &self.instances[k];
        MoveSite { rule: inst.rule, direction: dir, position, index: inst.index, eps: inst.eps }
    }

    /// Sites on a raw generator sequence of this engine's degree.
    pub fn sites(&self, gens: &[Generator], include_forbidden: bool) -> Vec<MoveSite> {
        let keep = |k: usize| include_forbidden || !self.instances[k].rule.is_forbidden();
        let mut out = Vec::new();
        for position in 0..gens.len() {
            let Some(heads) = self.by_head.get(&gens[position]) else { continue };
            for &(k, dir) in heads {
                if keep(k) && gens[position..].starts_with(self.instances[k].source(dir)) {
                    out.push(self.site(k, dir, position));
                }
            }
        }
        for position in 0..=gens.len() {
            for &(k, dir) in &self.insertions {
                if keep(k) {
                    out.push(self.site(k, dir, position));
                }
            }
        }
        out.sort();
        out
    }

    /// Rewrites a raw generator sequence at `site`.
    pub fn rewrite(&self, gens: &[Generator], site: &MoveSite) -> Result<Vec<Generator>> {
        if site.position > gens.len() {
            return Err(Error::NoMatch(format!("{site}: position past the end of the word")));
        }
        let rest = &gens[site.position..];
        let inst = self
            .instances
            .iter()
            .find(|inst| {
                inst.rule == site.rule
                    && inst.index == site.index
                    && inst.eps == site.eps
                    && rest.starts_with(inst.source(site.direction))
            })
            .ok_or_else(|| Error::NoMatch(site.to_string()))?;
        let source = inst.source(site.direction).len();
        let mut out = Vec::with_capacity(gens.len() + 3);
        out.extend_from_slice(&gens[..site.position]);
        out.extend_from_slice(inst.target(site.direction));
        out.extend_from_slice(&rest[source..]);
        Ok(out)
    }

    /// The site that undoes `site` once it has been applied.
    pub fn inverse(&self, site: &MoveSite) -> MoveSite {
        MoveSite { direction: site.direction.reverse(), ..*site }
    }

    pub fn enumerate(&self, w: &BraidWord, include_forbidden: bool) -> Result<Vec<MoveSite>> {
        self.check(w)?;
        Ok(self.sites(w.gens(), include_forbidden))
    }

    pub fn apply(&self, w: &BraidWord, site: &MoveSite) -> Result<BraidWord> {
        self.check(w)?;
        BraidWord::new(self.degree, self.rewrite(w.gens(), site)?)
    }

    fn check(&self, w: &BraidWord) -> Result<()> {
        if w.degree() != self.degree {
            return Err(Error::DegreeMismatch(w.degree(), self.degree));
        }
        Ok(())
    }
}

pub fn enumerate_moves(w: &BraidWord, include_forbidden: bool) -> Vec<MoveSite> {
    MoveEngine::new(w.degree()).sites(w.gens(), include_forbidden)
}

pub fn apply_move(w: &BraidWord, site: &MoveSite) -> Result<BraidWord> {
    MoveEngine::new(w.degree()).apply(w, site)
}

/// Applies each site in turn.
pub fn replay(w: &BraidWord, trace: &[MoveSite]) -> Result<BraidWord> {
    let engine = MoveEngine::new(w.degree());
    let mut current = w.clone();
    for site in trace {
        current = engine.apply(&current, site)?;
    }
    Ok(current)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkResult {
    pub word: BraidWord,
    pub trace: Vec<MoveSite>,
    /// True when some step found no applicable site.
    pub stopped_early: bool,
}

/// A seeded walk: each step picks a rule uniformly among the rules that have
/// a site, then one of that rule's sites uniformly.
pub fn random_walk(
    w: &BraidWord,
    steps: usize,
    allow_r2: bool,
    include_forbidden: bool,
    seed: u64,
) -> WalkResult {
    let engine = MoveEngine::new(w.degree());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = w.gens().to_vec();
    let mut trace = Vec::with_capacity(steps);
    let mut stopped_early = false;
    for _ in 0..steps {
        let mut grouped: Vec<(RuleName, Vec<MoveSite>)> = Vec::new();
        for site in engine.sites(&gens, include_forbidden) {
            if !allow_r2 && site.rule == RuleName::R2 {
                continue;
            }
            match grouped.iter_mut().find(|(r, _)| *r == site.rule) {
                Some((_, sites)) => sites.push(site),
                None => grouped.push((site.rule, vec![site])),
            }
        }
        let Some((_, sites)) = grouped.choose(&mut rng) else {
            stopped_early = true;
            break;
        };
        let site = *sites.choose(&mut rng).expect("groups are non-empty");
        gens = engine.rewrite(&gens, &site).expect("enumerated sites match");
        trace.push(site);
    }
    let word = BraidWord::new(w.degree(), gens).expect("moves keep generators in range");
    WalkResult { word, trace, stopped_early }
}
