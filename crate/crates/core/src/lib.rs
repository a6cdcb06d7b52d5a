//! Popular matchings in the roommates setting.
//!
//! - [`roommates`]: instances with strict preferences, matchings, votes.
//! - [`popularity`]: edge labels, the marked graph, the exact structure
//!   detector, and brute-force oracles.
//! - [`pvc`]: Partitioned Vertex Cover and the 3-SAT reduction into it.
//! - [`gadgets`]: the reduction from Partitioned Vertex Cover to popular
//!   matching, the forward matching, cover extraction, and the improvement
//!   engine that turns a bad matching into a more popular one.
//! - [`generate`]: seeded random instances and matchings.

pub mod error;
pub mod roommates;
pub mod popularity;
pub mod pvc;
pub mod gadgets;
pub mod generate;

pub use error::{Error, Result};
