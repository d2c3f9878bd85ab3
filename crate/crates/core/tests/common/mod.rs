#![allow(dead_code)]

//! Fuzz generators and reference implementations for the integration tests.
//! The oracles below work from the raw generator and token lists and share
//! no code with the library's labeling routines.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use warpkit_core::{BraidWord, GenKind, Generator, Token, TwistedGaussCode};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn braid_fixture(name: &str) -> BraidWord {
    fixture(name).parse().unwrap()
}

pub fn code_fixture(name: &str) -> TwistedGaussCode {
    warpkit_core::parse_gauss_code(&fixture(name)).unwrap()
}

#[derive(Clone, Copy)]
pub enum Alphabet {
    All,
    ClassicalVirtual,
    Classical,
}

pub fn random_generator<R: Rng>(rng: &mut R, n: usize, alphabet: Alphabet) -> Option<Generator> {
    let kinds: &[GenKind] = match alphabet {
        Alphabet::All => &[GenKind::Positive, GenKind::Negative, GenKind::Virtual, GenKind::Bar],
        Alphabet::ClassicalVirtual => &[GenKind::Positive, GenKind::Negative, GenKind::Virtual],
        Alphabet::Classical => &[GenKind::Positive, GenKind::Negative],
    };
    let kind = *kinds.choose(rng).unwrap();
    let top = if kind == GenKind::Bar { n } else { n - 1 };
    (top >= 1).then(|| Generator { kind, index: rng.gen_range(1..=top) })
}

/// A word of degree `1..=max_degree` and length `0..=max_len`.
pub fn random_braid<R: Rng>(rng: &mut R, max_degree: usize, max_len: usize, alphabet: Alphabet) -> BraidWord {
    loop {
        let n = rng.gen_range(1..=max_degree);
        if n == 1 && !matches!(alphabet, Alphabet::All) {
            continue;
        }
        let len = rng.gen_range(0..=max_len);
        let gens = (0..len).filter_map(|_| random_generator(rng, n, alphabet)).collect();
        return BraidWord::new(n, gens).unwrap();
    }
}

/// A code with `0..=max_crossings` classical crossings, `0..=max_bars` bars
/// and optionally a few virtual crossings, in random order.
pub fn random_code<R: Rng>(rng: &mut R, max_crossings: u32, max_bars: usize, virtuals: bool) -> TwistedGaussCode {
    let crossings = rng.gen_range(0..=max_crossings);
    let mut tokens = Vec::new();
    for id in 1..=crossings {
        tokens.push(Token::Over(id));
        tokens.push(Token::Under(id));
    }
    for _ in 0..rng.gen_range(0..=max_bars) {
        tokens.push(Token::Bar);
    }
    if virtuals {
        for id in 1..=rng.gen_range(0..=2) {
            tokens.push(Token::Virtual(id));
            tokens.push(Token::Virtual(id));
        }
    }
    tokens.shuffle(rng);
    TwistedGaussCode::new(tokens).unwrap()
}

pub fn random_classical_code<R: Rng>(rng: &mut R, max_crossings: u32) -> TwistedGaussCode {
    random_code(rng, max_crossings, 0, false)
}

/// The two-bar family with `2n` crossings whose warping labeling is
/// constant `n`.
pub fn twisted_double(n: u32) -> TwistedGaussCode {
    let mut tokens = vec![Token::Bar];
    for id in 1..=2 * n {
        tokens.push(if id % 2 == 1 { Token::Over(id) } else { Token::Under(id) });
    }
    tokens.push(Token::Bar);
    for id in (1..=2 * n).rev() {
        tokens.push(if id % 2 == 0 { Token::Over(id) } else { Token::Under(id) });
    }
    TwistedGaussCode::new(tokens).unwrap()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mark {
    Over(usize),
    Under(usize),
    Virtual,
    Bar,
}

/// Per-strand event lists and bottom positions, traced from the word.
fn trace(w: &BraidWord) -> (Vec<Vec<Mark>>, Vec<usize>) {
    let n = w.degree();
    let mut at: Vec<usize> = (0..n).collect();
    let mut marks = vec![Vec::new(); n];
    for (k, g) in w.gens().iter().enumerate() {
        let (left, right) = (g.index - 1, g.index);
        match g.kind {
            GenKind::Bar => marks[at[left]].push(Mark::Bar),
            GenKind::Virtual => {
                marks[at[left]].push(Mark::Virtual);
                marks[at[right]].push(Mark::Virtual);
                at.swap(left, right);
            }
            GenKind::Positive | GenKind::Negative => {
                let left_over = g.kind == GenKind::Positive;
                let (l, r) = if left_over { (Mark::Over(k), Mark::Under(k)) } else { (Mark::Under(k), Mark::Over(k)) };
                marks[at[left]].push(l);
                marks[at[right]].push(r);
                at.swap(left, right);
            }
        }
    }
    let mut bottom = vec![0; n];
    for (p, &s) in at.iter().enumerate() {
        bottom[s] = p;
    }
    (marks, bottom)
}

/// Bars met after each crossing visit before the crossing comes back, keyed
/// by `(strand, event index)`.
fn return_bars(marks: &[Vec<Mark>], bottom: &[usize]) -> HashMap<(usize, usize), usize> {
    let n = marks.len();
    let mut done = vec![false; n];
    let mut out = HashMap::new();
    for start in 0..n {
        if done[start] {
            continue;
        }
        // one closed component, flattened into a cycle of visits
        let mut cycle: Vec<(usize, usize, Mark)> = Vec::new();
        let mut s = start;
        while !done[s] {
            done[s] = true;
            cycle.extend(marks[s].iter().enumerate().map(|(j, &m)| (s, j, m)));
            s = bottom[s];
        }
        let len = cycle.len();
        for a in 0..len {
            let k = match cycle[a].2 {
                Mark::Over(k) | Mark::Under(k) => k,
                _ => continue,
            };
            let mut bars = 0;
            for step in 1..=len {
                match cycle[(a + step) % len].2 {
                    Mark::Bar => bars += 1,
                    Mark::Over(x) | Mark::Under(x) if x == k => break,
                    _ => {}
                }
            }
            out.insert((cycle[a].0, cycle[a].1), bars);
        }
    }
    out
}

/// Bottom labels of the up-down labeling with the given top labels.
pub fn oracle_bottom(w: &BraidWord, top: &[i64]) -> Vec<i64> {
    let crossings = w.gens().iter().filter(|g| g.is_classical()).count() as i64;
    let (marks, bottom) = trace(w);
    let bars = return_bars(&marks, &bottom);
    let mut out = vec![0; w.degree()];
    for (s, events) in marks.iter().enumerate() {
        let mut label = top[s];
        for (j, m) in events.iter().enumerate() {
            let even = || bars[&(s, j)] % 2 == 0;
            match m {
                Mark::Bar => label = crossings - label,
                Mark::Over(_) if even() => label += 1,
                Mark::Under(_) if even() => label -= 1,
                _ => {}
            }
        }
        out[bottom[s]] = label;
    }
    out
}

/// Bars on each strand from top to bottom.
pub fn oracle_bars_per_strand(w: &BraidWord) -> Vec<usize> {
    trace(w).0.iter().map(|m| m.iter().filter(|x| **x == Mark::Bar).count()).collect()
}

/// d(D_a) for every base point, straight from the definition: rotate the
/// full token list to the base point and mark first encounters.
pub fn oracle_degrees(code: &TwistedGaussCode) -> Vec<usize> {
    let tokens = code.tokens();
    let starts: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| !matches!(t, Token::Virtual(_)))
        .map(|(i, _)| i)
        .collect();
    if starts.is_empty() {
        return vec![0];
    }
    starts
        .iter()
        .map(|&start| {
            let mut first: HashMap<u32, (bool, usize)> = HashMap::new();
            let mut bars = 0;
            for t in tokens[start..].iter().chain(&tokens[..start]) {
                match *t {
                    Token::Bar => bars += 1,
                    Token::Over(id) => {
                        first.entry(id).or_insert((true, bars));
                    }
                    Token::Under(id) => {
                        first.entry(id).or_insert((false, bars));
                    }
                    Token::Virtual(_) => {}
                }
            }
            first.values().filter(|(over, b)| *over == (b % 2 == 1)).count()
        })
        .collect()
}

/// Whether `labels` (one per base point) obeys the bar and crossing rules.
pub fn oracle_is_updown(code: &TwistedGaussCode, labels: &[i64]) -> bool {
    let skeleton: Vec<Token> = code.tokens().iter().copied().filter(|t| !matches!(t, Token::Virtual(_))).collect();
    let m = skeleton.len();
    if m == 0 {
        return labels.len() == 1;
    }
    if labels.len() != m {
        return false;
    }
    let crossings = skeleton.iter().filter(|t| matches!(t, Token::Over(_))).count() as i64;
    (0..m).all(|j| {
        let (before, after) = (labels[j], labels[(j + 1) % m]);
        let id = match skeleton[j] {
            Token::Bar => return before + after == crossings,
            Token::Over(id) | Token::Under(id) => id,
            Token::Virtual(_) => unreachable!(),
        };
        let mut bars = 0;
        let mut k = (j + 1) % m;
        while !matches!(skeleton[k], Token::Over(x) | Token::Under(x) if x == id) {
            if skeleton[k] == Token::Bar {
                bars += 1;
            }
            k = (k + 1) % m;
        }
        let change = match (bars % 2, skeleton[j]) {
            (1, _) => 0,
            (_, Token::Over(_)) => 1,
            _ => -1,
        };
        after == before + change
    })
}
