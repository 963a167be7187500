//! Subgame-perfect outcomes of complete-information sequential elections.
//!
//! Voters cast public ballots one after another under plurality or approval
//! voting, with deterministic or uniform tie-breaking. [`solver`] computes the
//! unique equilibrium winning set by backward induction, [`analysis`] checks
//! it against Condorcet and Pareto criteria, and [`search`] scans whole
//! spaces of preference profiles for paradoxical elections.
//!
//! ```
//! use seqvote::io::parse_profile;
//! use seqvote::solver::spe_outcome;
//!
//! let profile = parse_profile("rule=plurality\ntie=deterministic:C>B>A\nalts=A,B,C\nA>C>B\nB>A>C\n").unwrap();
//! let winners = spe_outcome(&profile);
//! assert_eq!(profile.format_set(winners.members()), "{C}");
//! ```

pub mod analysis;
pub mod error;
pub mod io;
pub mod model;
pub mod search;
pub mod solver;

pub use error::{Error, Result};
