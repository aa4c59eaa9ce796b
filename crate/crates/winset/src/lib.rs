//! Condorcet winning sets and α-undominated committees for ranked
//! elections.
//!
//! In an election where `n` voters rank `m` candidates, a committee `S` is
//! **α-undominated** when every outside candidate is preferred over all of
//! `S` by strictly less than an `α` fraction of the voters; a
//! 1/2-undominated committee is a **Condorcet winning set**, and the size
//! of the smallest one is the election's **Condorcet dimension**. This
//! crate makes those objects computable:
//!
//! * [`election`] — the exact combinatorial engine: strict-preference
//!   queries, domination counts and certificates, committee comparison,
//!   ranks against a reference distribution, Condorcet dimension.
//! * [`profiles`] — a plain-text profile format plus the standard instance
//!   families (cyclic, cycle products, the minimal dimension-3 election,
//!   impartial culture, full factorial).
//! * [`lottery`] — the confined-adversary zero-sum game: activation
//!   catalogue, exact best responses, a mirror-descent solver for stable
//!   candidate lotteries, and committee sampling.
//! * [`bounds`] — the α-vs-k guarantee tables: closed forms, the
//!   shifted-ReLU optimum, the asymptotic constant, and the recursive
//!   refinement with its `k = 300` crossover.
//! * [`search`] — four committee-search strategies returning exact,
//!   independently re-checked certificates.
//! * [`verify`] — oracle suites holding the guarantees against concrete
//!   instances, in exact arithmetic wherever the inputs are rational.
//! * [`cli`] — the batch front end behind the `winset` binary.
//!
//! The `examples/` directory demonstrates each capability end to end; start
//! with `cargo run --example bounds_table`.
//!
//! # Quick start
//!
//! ```
//! use winset::election::RationalThreshold;
//! use winset::profiles::gen_cyclic;
//!
//! let e = gen_cyclic(6);
//! let (dimension, witness) = e.condorcet_dimension(1_000_000).unwrap();
//! assert_eq!(dimension, 2);
//! assert!(e.is_alpha_undominated(&witness, &RationalThreshold::half()).unwrap());
//! ```
//!
//! Determinism is a design rule: ties always break toward smaller candidate
//! ids, randomness flows through a seeded generator documented in
//! [`rng`], and identical inputs give identical outputs everywhere.

pub mod bounds;
pub mod cli;
mod combinatorics;
pub mod election;
pub mod error;
pub mod lottery;
pub mod profiles;
pub mod rng;
pub mod search;
pub mod verify;

pub use election::{
    Committee, CommitteeDistribution, CommitteeOrdering, Election, Fraction, RationalThreshold,
    Weight,
};
pub use error::{Error, Result};
