//! Twisted virtual braid words.
//!
//! A word of degree `n` is read top to bottom. Generator indices are 1-based,
//! as in the text grammar; strand and position indices in the API are 0-based.
//! A strand is named by the position at which it enters at the top.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl serde::Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(Error::Syntax(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Positive,
    Negative,
    Virtual,
    Bar,
}

/// One elementary piece of a braid diagram.
///
/// Crossings act on positions `index` and `index + 1`; a bar marks the strand
/// currently at position `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub const fn positive(index: usize) -> Self {
        Generator { kind: GenKind::Positive, index }
    }

    pub const fn negative(index: usize) -> Self {
        Generator { kind: GenKind::Negative, index }
    }

    pub const fn virtual_crossing(index: usize) -> Self {
        Generator { kind: GenKind::Virtual, index }
    }

    pub const fn bar(index: usize) -> Self {
        Generator { kind: GenKind::Bar, index }
    }

    pub fn classical(sign: Sign, index: usize) -> Self {
        match sign {
            Sign::Plus => Self::positive(index),
            Sign::Minus => Self::negative(index),
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.kind, GenKind::Positive | GenKind::Negative)
    }

    pub fn is_crossing(&self) -> bool {
        self.kind != GenKind::Bar
    }

    pub fn is_bar(&self) -> bool {
        self.kind == GenKind::Bar
    }

    pub fn sign(&self) -> Option<Sign> {
        match self.kind {
            GenKind::Positive => Some(Sign::Plus),
            GenKind::Negative => Some(Sign::Minus),
            _ => None,
        }
    }

    /// 1-based positions touched by this generator.
    pub fn support(&self) -> (usize, usize) {
        if self.is_bar() {
            (self.index, self.index)
        } else {
            (self.index, self.index + 1)
        }
    }

    pub fn disjoint_from(&self, other: &Generator) -> bool {
        let (a0, a1) = self.support();
        let (b0, b1) = other.support();
        a1 < b0 || b1 < a0
    }

    pub fn is_valid_for(&self, n: usize) -> bool {
        if self.is_bar() {
            (1..=n).contains(&self.index)
        } else {
            self.index >= 1 && self.index < n
        }
    }

    fn letter(&self) -> char {
        match self.kind {
            GenKind::Positive => 's',
            GenKind::Negative => 'S',
            GenKind::Virtual => 'v',
            GenKind::Bar => 'b',
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), self.index)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        let mut chars = tok.chars();
        let kind = match chars.next() {
            Some('s') => GenKind::Positive,
            Some('S') => GenKind::Negative,
            Some('v') => GenKind::Virtual,
            Some('b') => GenKind::Bar,
            _ => return Err(Error::Syntax(tok.to_string())),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Syntax(tok.to_string()));
        }
        let index = digits
            .parse::<usize>()
            .map_err(|_| Error::Syntax(tok.to_string()))?;
        Ok(Generator { kind, index })
    }
}

/// A bijection on `0..n`; `image[i]` is the bottom position of the strand
/// entering at top position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &p in &image {
            if p >= n || seen[p] {
                return Err(Error::Range(format!("{image:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds from 1-based images, as used in text and JSON.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::Range(format!("{image:?} is not 1-based")));
        }
        Self::from_image(image.iter().map(|p| p - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.image.iter().map(|p| p + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.image.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { image: inv }
    }

    /// Disjoint cycles, each starting at its least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.image[i];
            }
            out.push(cycle);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
    Virtual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrandEvent {
    /// `instance` is the generator's offset in the word.
    Crossing {
        instance: usize,
        role: Role,
        before: usize,
        after: usize,
    },
    Bar {
        instance: usize,
        position: usize,
    },
}

impl StrandEvent {
    pub fn instance(&self) -> usize {
        match *self {
            StrandEvent::Crossing { instance, .. } | StrandEvent::Bar { instance, .. } => instance,
        }
    }

    pub fn is_bar(&self) -> bool {
        matches!(self, StrandEvent::Bar { .. })
    }

    /// Classical crossings and bars split a strand into edges; virtual crossings do not.
    pub fn splits_edge(&self) -> bool {
        !matches!(self, StrandEvent::Crossing { role: Role::Virtual, .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandPath {
    pub top: usize,
    pub events: Vec<StrandEvent>,
    pub bottom: usize,
}

impl StrandPath {
    pub fn bar_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_bar()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    degree: usize,
    gens: Vec<Generator>,
}

impl BraidWord {
    pub fn new(degree: usize, gens: Vec<Generator>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Header("degree must be at least 1".into()));
        }
        if let Some(g) = gens.iter().find(|g| !g.is_valid_for(degree)) {
            return Err(Error::Range(format!("{g} is not valid for n={degree}")));
        }
        Ok(BraidWord { degree, gens })
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Number of classical (positive or negative) crossings.
    pub fn crossing_count(&self) -> usize {
        self.gens.iter().filter(|g| g.is_classical()).count()
    }

    pub fn bar_count(&self) -> usize {
        self.gens.iter().filter(|g| g.is_bar()).count()
    }

    pub fn permutation(&self) -> Permutation {
        // at[pos] = strand currently at pos
        let mut at: Vec<usize> = (0..self.degree).collect();
        for g in self.gens.iter().filter(|g| g.is_crossing()) {
            at.swap(g.index - 1, g.index);
        }
        let mut image = vec![0; self.degree];
        for (pos, &strand) in at.iter().enumerate() {
            image[strand] = pos;
        }
        Permutation { image }
    }

    /// Events along every strand, indexed by top position.
    ///
    /// In a positive crossing the strand entering at the left position passes
    /// over; in a negative crossing it passes under.
    pub fn strand_paths(&self) -> Vec<StrandPath> {
        let n = self.degree;
        let mut at: Vec<usize> = (0..n).collect();
        let mut events = vec![Vec::new(); n];
        for (instance, g) in self.gens.iter().enumerate() {
            let left = g.index - 1;
            if g.is_bar() {
                events[at[left]].push(StrandEvent::Bar { instance, position: left });
                continue;
            }
            let (a, b) = (at[left], at[left + 1]);
            let (ra, rb) = match g.kind {
                GenKind::Positive => (Role::Over, Role::Under),
                GenKind::Negative => (Role::Under, Role::Over),
                _ => (Role::Virtual, Role::Virtual),
            };
            events[a].push(StrandEvent::Crossing { instance, role: ra, before: left, after: left + 1 });
            events[b].push(StrandEvent::Crossing { instance, role: rb, before: left + 1, after: left });
            at.swap(left, left + 1);
        }
        let mut bottom = vec![0; n];
        for (pos, &strand) in at.iter().enumerate() {
            bottom[strand] = pos;
        }
        events
            .into_iter()
            .enumerate()
            .map(|(top, events)| StrandPath { top, events, bottom: bottom[top] })
            .collect()
    }

    /// Components of the closure as cycles of top positions.
    pub fn closure_cycles(&self) -> Vec<Vec<usize>> {
        self.permutation().cycles()
    }

    pub fn closure_is_knot(&self) -> bool {
        self.closure_cycles().len() == 1
    }

    pub fn bar_count_per_strand(&self) -> Vec<usize> {
        self.strand_paths().iter().map(StrandPath::bar_count).collect()
    }
}

/// Parses `n=<int>;` followed by generator tokens; `#` starts a comment.
pub fn parse_braid_word(text: &str) -> Result<BraidWord> {
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let body = body.trim_start();
    let rest = body
        .strip_prefix("n=")
        .ok_or_else(|| Error::Header(first_token(body)))?;
    let (deg, tokens) = rest
        .split_once(';')
        .ok_or_else(|| Error::Header(format!("n={}", first_token(rest))))?;
    let degree = deg
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::Header(format!("n={deg}")))?;
    let gens = tokens
        .split_whitespace()
        .map(str::parse::<Generator>)
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(degree, gens)
}

fn first_token(s: &str) -> String {
    s.split_whitespace().next().unwrap_or("").to_string()
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_braid_word(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.degree)?;
        for g in &self.gens {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}
