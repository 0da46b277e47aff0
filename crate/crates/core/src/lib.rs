//! Competition graphs of point sets under the strict dominance order of `Z^d`.
//!
//! A point `x` preys on `y` when `y` is strictly smaller on every axis, and two
//! points compete when they share prey. The crate computes these graphs,
//! classifies incomparable pairs by order type, finds long chains or antichains
//! as well as monotone triples, builds the four-point certificates that force an
//! edge inside a family of antichains, and searches exhaustively for the
//! smallest dimension realizing a given graph.
//!
//! Start with the examples:
//!
//! | example | shows |
//! |---|---|
//! | `order_types` | splits of incomparable pairs |
//! | `competition_graph` | arcs and edges of a point set |
//! | `erdos_szekeres` | chain or antichain, monotone triples |
//! | `main_lemma_witness` | four-point witness for a family of antichains |
//! | `forbidden_configuration` | the pipeline on a multipartite point set |
//! | `dim_poc_small_graphs` | dimension search with witnesses |
//! | `multipartite_probe` | exhaustion report for `K_{2×n}` |
//!
//! The `pocdim` binary wraps the same functionality; see [`cli`].

pub mod cli;
pub mod competition;
pub mod dimsearch;
pub mod es_extract;
pub mod geometry;
pub mod instances;
pub mod lemmas;
pub mod witness;
