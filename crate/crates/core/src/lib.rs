//! Link diagrams, Conway and Alexander polynomials, lassoing moves, and
//! certified bounds on the complete splitting number.

pub mod cli;
pub mod diagram;
pub mod laurent;
pub mod moves;
pub mod pdparse;
pub mod skein;
pub mod splitting;
pub mod verify;

pub use diagram::{Arc, Crossing, CrossingId, Diagram, DiagramError, Sign, ValidationReport};
pub use laurent::LaurentPoly;
pub use moves::{MoveError, MoveKind, TransformLog};
pub use pdparse::{catalog, parse_pd, serialize_pd};
pub use skein::{alexander, conway};
pub use splitting::{LinkingMatrix, SplitBounds};
