//! Hopf algebra presentations, constructors, axiom checks and structural
//! analyses.

pub mod analysis;
pub mod double;
pub mod groups;
pub mod morphism;
pub mod presentation;
pub mod qt;
pub mod verify;

pub use analysis::{analyze, AnalysisReport};
pub use double::drinfeld_double;
pub use groups::{group_algebra, Group, BUILTIN_GROUPS};
pub use morphism::HopfMorphism;
pub use presentation::{Direction, HopfPresentation};
pub use qt::{QtReport, RMatrix};
pub use verify::{verify_hopf, Axiom, AxiomReport};
