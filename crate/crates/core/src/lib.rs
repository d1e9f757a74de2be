//! Exact counts of rational contact curves in `P^{2n+1}` through general
//! linear subspaces, by torus localization on the space of stable maps.
//!
//! The pipeline is: enumerate fixed-locus graphs ([`census`]), evaluate the
//! obstruction, incidence and normal-bundle classes on each graph at random
//! integer weights ([`classes`]), and sum the contributions ([`bott`]).
//! [`chern`] recomputes incidence classes by an independent route.

pub mod bott;
pub mod cache;
pub mod census;
pub mod chern;
pub mod classes;
pub mod error;
pub mod reference;
pub mod verify;
pub mod weights;

pub use bott::{
    count, count_with_census, expected_dimension, full_table, graph_contribution, specs_for,
    validate_spec, CountConfig, CountResult, IncidenceSpec, WeightDraw,
};
pub use cache::Census;
pub use census::{automorphism_order, enumerate_graphs, ColoredTree, Edge, GraphClass, Label};
pub use error::{Error, Result};
pub use weights::{draw_weights, WeightAssignment};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
