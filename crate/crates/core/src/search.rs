//! Breadth-first search for a move sequence between two braid words.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::braid::{BraidWord, Generator};
use crate::error::{Error, Result};
use crate::labeling::{updown_map, z2_map};
use crate::moves::{MoveEngine, MoveSite, RuleName};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Words longer than the longer endpoint by more than this are not explored.
    pub max_length_growth: usize,
    pub max_visited: usize,
    pub allow_r2: bool,
    pub include_forbidden: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_length_growth: 2, max_visited: 200_000, allow_r2: true, include_forbidden: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub found: bool,
    pub path: Vec<MoveSite>,
    pub visited: usize,
    /// The visited budget ran out before the reachable set was exhausted.
    pub limit_hit: bool,
    /// Set when an invariant ruled the target out without searching.
    pub pruned: Option<String>,
}

impl SearchResult {
    fn pruned(reason: &str) -> Self {
        SearchResult { found: false, path: Vec::new(), visited: 0, limit_hit: false, pruned: Some(reason.into()) }
    }
}

fn prefilter(src: &BraidWord, dst: &BraidWord, limits: &SearchLimits) -> Option<&'static str> {
    if src.permutation() != dst.permutation() {
        return Some("permutations differ");
    }
    if !limits.allow_r2 && src.crossing_count() != dst.crossing_count() {
        return Some("crossing counts differ and R2 is disabled");
    }
    if !limits.include_forbidden {
        if !limits.allow_r2 && updown_map(src) != updown_map(dst) {
            return Some("up-down label maps differ and R2 is disabled");
        }
        if z2_map(src) != z2_map(dst) {
            return Some("Z2 label maps differ");
        }
    }
    None
}

/// Searches the move graph for a path from `src` to `dst`. Words are
/// identified by their exact generator sequence.
pub fn bounded_search(src: &BraidWord, dst: &BraidWord, limits: SearchLimits) -> Result<SearchResult> {
    if src.degree() != dst.degree() {
        return Err(Error::DegreeMismatch(src.degree(), dst.degree()));
    }
    if let Some(reason) = prefilter(src, dst, &limits) {
        return Ok(SearchResult::pruned(reason));
    }
    let engine = MoveEngine::new(src.degree());
    let max_len = src.len().max(dst.len()) + limits.max_length_growth;
    let target = dst.gens().to_vec();
    let start = src.gens().to_vec();

    let mut parent: HashMap<Vec<Generator>, Option<(Vec<Generator>, MoveSite)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut limit_hit = false;
    let mut found = None;

    'bfs: while let Some(word) = queue.pop_front() {
        if word == target {
            found = Some(word);
            break;
        }
        for site in engine.sites(&word, limits.include_forbidden) {
            if !limits.allow_r2 && site.rule == RuleName::R2 {
                continue;
            }
            let next = engine.rewrite(&word, &site)?;
            if next.len() > max_len || parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= limits.max_visited {
                limit_hit = true;
                break 'bfs;
            }
            parent.insert(next.clone(), Some((word.clone(), site)));
            if next == target {
                found = Some(next);
                break 'bfs;
            }
            queue.push_back(next);
        }
    }

    let visited = parent.len();
    let Some(mut node) = found else {
        return Ok(SearchResult { found: false, path: Vec::new(), visited, limit_hit, pruned: None });
    };
    let mut path = Vec::new();
    while let Some(Some((prev, site))) = parent.get(&node) {
        path.push(*site);
        node = prev.clone();
    }
    path.reverse();
    Ok(SearchResult { found: true, path, visited, limit_hit: false, pruned: None })
}
