//! Exact multi-dimensional linear recurrence sequences ("Fibonacci
//! modules") over commutative rings.

pub mod closedform;
pub mod error;
pub mod explore;
pub mod genfun;
pub mod hypercube;
pub mod matrix;
pub mod module;
pub mod multiseq;
pub mod recurrence;
pub mod ring;
pub mod specfile;

pub use closedform::RootPair;
pub use error::{Error, Result};
pub use genfun::{RationalGF, TruncatedSeries};
pub use hypercube::Hypercube;
pub use module::ModuleElem;
pub use multiseq::{FibSpec, InitialBlock, MultiSequence};
pub use recurrence::{CompanionMatrix, RecurrenceType, Sequence1D};
pub use ring::{Elem, Poly, PolyRing, Ring};
pub use specfile::SpecFile;
