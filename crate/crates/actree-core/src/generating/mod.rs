//! Walk generating functions: closed forms on the infinite tree, the exact
//! core linear solve, grafting transforms, assembled pair functions, and the
//! independent classical oracles used to validate them.

pub mod bundle;
pub mod closed;
pub mod core_solve;
pub mod graft;
pub mod oracle;
pub mod pair;

pub use bundle::GeneratingBundle;
pub use closed::{level_hop, level_hop_resolvent, tree_first_passage, tree_pair, tree_return};
pub use core_solve::standalone_core_matrix;
pub use graft::{
    graft_denominator, grafted_descent, grafted_entry, grafted_exit, grafted_pair,
    grafted_return, grafted_tree_pair,
};
pub use oracle::{walk_probabilities, walk_probabilities_literal};
pub use pair::{PairGf, PairResolvent};
