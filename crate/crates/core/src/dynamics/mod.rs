//! Moves on configurations: domino flips, gyration and the loops left by a
//! matching on the honeycomb.

pub mod flips;
pub mod gyration;
pub mod hfpl;

pub use flips::{flip_closure, fpl_flip_neighbors};
pub use gyration::wieland_gyration;
pub use hfpl::{hfpl_complement, nested_families, HfplConfig, Stub};
