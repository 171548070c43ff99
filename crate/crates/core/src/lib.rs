//! Box and cube representations of divisor graphs, power graphs of cyclic
//! groups and transitive closures of products of complete graphs, with
//! bound formulas and exact oracles for small instances.

pub mod bounds;
pub mod boxes;
pub mod error;
pub mod families;
pub mod graph;
pub mod isomorphism;
pub mod oracle;
pub mod posets;
pub mod recognition;
pub mod representation;

pub use boxes::{BoxRepresentation, Interval, Rational};
pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec};
pub use graph::LabeledGraph;
pub use oracle::{OracleConfig, Parameter};
