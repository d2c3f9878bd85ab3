//! Twisted knot diagrams as cyclic Gauss codes.
//!
//! A code is a cyclic word of over passes `O<id>`, under passes `U<id>`,
//! bars `!` and virtual passes `V<id>`. Classical and virtual ids live in
//! separate namespaces. Crossing signs are not recorded.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::braid::{BraidWord, Role, StrandEvent};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Over(u32),
    Under(u32),
    Bar,
    Virtual(u32),
}

impl Token {
    pub fn is_classical(&self) -> bool {
        matches!(self, Token::Over(_) | Token::Under(_))
    }

    pub fn crossing_id(&self) -> Option<u32> {
        match *self {
            Token::Over(id) | Token::Under(id) => Some(id),
            _ => None,
        }
    }

    fn swapped(self) -> Token {
        match self {
            Token::Over(id) => Token::Under(id),
            Token::Under(id) => Token::Over(id),
            t => t,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Over(id) => write!(f, "O{id}"),
            Token::Under(id) => write!(f, "U{id}"),
            Token::Bar => f.write_str("!"),
            Token::Virtual(id) => write!(f, "V{id}"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        if tok == "!" {
            return Ok(Token::Bar);
        }
        let bad = || Error::Syntax(tok.to_string());
        let (head, digits) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let id = digits.parse::<u32>().map_err(|_| bad())?;
        match head {
            "O" => Ok(Token::Over(id)),
            "U" => Ok(Token::Under(id)),
            "V" => Ok(Token::Virtual(id)),
            _ => Err(bad()),
        }
    }
}

/// A base point location: the gap just before the `k`-th non-virtual token.
/// Codes without classical passes or bars have the single edge `EdgeRef(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef(pub usize);

/// Validated cyclic code. Equality and hashing ignore rotation.
#[derive(Debug, Clone)]
pub struct TwistedGaussCode {
    tokens: Vec<Token>,
}

impl TwistedGaussCode {
    pub fn new(tokens: Vec<Token>) -> Result<Self> {
        let mut classical: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut virtuals: BTreeMap<u32, usize> = BTreeMap::new();
        for t in &tokens {
            match *t {
                Token::Over(id) => classical.entry(id).or_default().0 += 1,
                Token::Under(id) => classical.entry(id).or_default().1 += 1,
                Token::Virtual(id) => *virtuals.entry(id).or_default() += 1,
                Token::Bar => {}
            }
        }
        for (id, (o, u)) in classical {
            if (o, u) != (1, 1) {
                return Err(Error::InvalidCode(format!(
                    "crossing {id} needs exactly one O and one U pass (found {o} O, {u} U)"
                )));
            }
        }
        for (id, k) in virtuals {
            if k != 2 {
                return Err(Error::InvalidCode(format!("virtual crossing {id} occurs {k} times")));
            }
        }
        Ok(TwistedGaussCode { tokens })
    }

    pub fn empty() -> Self {
        TwistedGaussCode { tokens: Vec::new() }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Classical passes and bars in cyclic order; virtual passes dropped.
    pub fn skeleton(&self) -> Vec<Token> {
        self.tokens.iter().copied().filter(|t| !matches!(t, Token::Virtual(_))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton().len().max(1)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> {
        (0..self.edge_count()).map(EdgeRef)
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.iter().filter(|t| matches!(t, Token::Over(_))).count()
    }

    pub fn bar_count(&self) -> usize {
        self.tokens.iter().filter(|t| **t == Token::Bar).count()
    }

    pub fn has_virtual(&self) -> bool {
        self.tokens.iter().any(|t| matches!(t, Token::Virtual(_)))
    }

    /// Same cyclic word read backward; roles and bars unchanged.
    pub fn reverse_orientation(&self) -> Self {
        TwistedGaussCode { tokens: self.tokens.iter().rev().copied().collect() }
    }

    /// Every crossing changed: over and under passes swap.
    pub fn mirror(&self) -> Self {
        TwistedGaussCode { tokens: self.tokens.iter().map(|t| t.swapped()).collect() }
    }

    /// Tokens in the order they were given.
    pub fn render_as_given(&self) -> String {
        render(&self.tokens)
    }

    /// The rotation whose rendering is lexicographically least.
    pub fn canonical_tokens(&self) -> Vec<Token> {
        let k = self.canonical_offset();
        rotated(&self.tokens, k)
    }

    /// Rotation offset `k` such that `canonical_tokens()` starts at `tokens()[k]`.
    pub fn canonical_offset(&self) -> usize {
        (0..self.tokens.len()).min_by_key(|&k| render(&rotated(&self.tokens, k))).unwrap_or(0)
    }
}

fn rotated(tokens: &[Token], k: usize) -> Vec<Token> {
    let mut r = tokens[k..].to_vec();
    r.extend_from_slice(&tokens[..k]);
    r
}

fn render(tokens: &[Token]) -> String {
    tokens.iter().map(Token::to_string).collect::<Vec<_>>().join(" ")
}

impl PartialEq for TwistedGaussCode {
    fn eq(&self, other: &Self) -> bool {
        self.tokens.len() == other.tokens.len() && self.canonical_tokens() == other.canonical_tokens()
    }
}

impl Eq for TwistedGaussCode {}

impl Hash for TwistedGaussCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_tokens().hash(state);
    }
}

impl fmt::Display for TwistedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.canonical_tokens()))
    }
}

/// Parses whitespace-separated `O<id>`, `U<id>`, `V<id>` and `!` tokens;
/// `#` starts a comment.
pub fn parse_gauss_code(text: &str) -> Result<TwistedGaussCode> {
    let tokens = text
        .lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
        .map(str::parse::<Token>)
        .collect::<Result<Vec<_>>>()?;
    TwistedGaussCode::new(tokens)
}

impl FromStr for TwistedGaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_code(s)
    }
}

/// Reads the closure of `w` along its single component, starting at the
/// top of strand 0. Classical crossings are numbered `1..=#C` and virtual
/// crossings `1..` separately, both in word order.
pub fn braid_closure_code(w: &BraidWord) -> Result<TwistedGaussCode> {
    let cycles = w.closure_cycles();
    if cycles.len() != 1 {
        let structure = cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")))
            .collect::<String>();
        return Err(Error::ClosureNotKnot { cycles: cycles.len(), structure });
    }
    let mut classical_id = vec![0u32; w.len()];
    let mut virtual_id = vec![0u32; w.len()];
    let (mut nc, mut nv) = (0, 0);
    for (k, g) in w.gens().iter().enumerate() {
        if g.is_classical() {
            nc += 1;
            classical_id[k] = nc;
        } else if g.is_crossing() {
            nv += 1;
            virtual_id[k] = nv;
        }
    }
    let paths = w.strand_paths();
    let mut tokens = Vec::new();
    for &s in &cycles[0] {
        for e in &paths[s].events {
            tokens.push(match *e {
                StrandEvent::Bar { .. } => Token::Bar,
                StrandEvent::Crossing { instance, role: Role::Over, .. } => Token::Over(classical_id[instance]),
                StrandEvent::Crossing { instance, role: Role::Under, .. } => Token::Under(classical_id[instance]),
                StrandEvent::Crossing { instance, role: Role::Virtual, .. } => Token::Virtual(virtual_id[instance]),
            });
        }
    }
    TwistedGaussCode::new(tokens)
}
