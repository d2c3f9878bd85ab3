//! Warping degrees and up-down labelings of twisted knot diagrams, and the
//! up-down, Z2 and polynomial invariants of twisted virtual braids, with a
//! move engine for braid words.

pub mod braid;
pub mod error;
pub mod gauss;
pub mod labeling;
pub mod moves;
pub mod search;
pub mod warping;

pub use braid::{parse_braid_word, BraidWord, GenKind, Generator, Permutation, Sign};
pub use error::{Error, Result};
pub use gauss::{braid_closure_code, parse_gauss_code, EdgeRef, Token, TwistedGaussCode};
pub use labeling::{
    nontriviality_witness, r2_indicator, updown_map, z2_map, z2_polynomial, AffineLabelMap, R2Verdict,
    Z2LabelMap, Z2Polynomial,
};
pub use moves::{apply_move, enumerate_moves, random_walk, rule_catalog, Direction, MoveSite, RuleName};
pub use search::{bounded_search, SearchLimits, SearchResult};
pub use warping::{warping_degree, warping_degree_at, warping_labeling, WarpingReport};
