//! Reasoning toolkit for an action description language with causal
//! laws, ramification statements, and action preconditions.
//!
//! Text in, answers out: [`parser`] reads domain descriptions, [`ground`]
//! instantiates them, [`transition`] computes successor states, [`query`]
//! answers credulous and skeptical entailment queries, and [`sat`] is a
//! propositional backend for deterministic domains with acyclic
//! ramifications. [`corpus`] ships example domains with expected answers;
//! [`bench`] holds the timing harness and the command line front end.

pub mod bench;
pub mod corpus;
pub mod ground;
pub mod parser;
pub mod query;
pub mod sat;
pub mod syntax;
pub mod transition;
