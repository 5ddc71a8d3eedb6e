//! Finite props of simplices: graph terms over the generators ε, Δ, μ and the
//! counit homotopy, their normal forms in the quotient prop MS, the induced
//! chain-level operations, evaluation on simplices and arc surfaces.

pub mod chains;
pub mod graph;
pub mod normal;
pub mod oracle;
pub mod perm;
pub mod presentation;
pub mod random;
pub mod simplex;
pub mod surface;
pub mod rational;
pub mod term;
pub mod verify;

pub use graph::{Generator, GraphTerm};
pub use normal::{normalize, MSElement, SurjectionType, WeightedSurjection};
pub use rational::Q;
pub use term::parse_term;
