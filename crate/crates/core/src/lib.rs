pub mod decompose;
pub mod error;
pub mod functors;
pub mod groups;
pub mod gsets;
pub mod io;
pub mod lewis;
pub mod rings;
pub mod search;

pub use error::{Error, Result};
pub use groups::{FiniteGroup, SubgroupId, UpwardClosedSet};
pub use rings::{FiniteRing, GRing, RingHom};
