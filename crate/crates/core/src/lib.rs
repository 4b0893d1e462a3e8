//! Two ways to fill in a hierarchical location field.
//!
//! * [`cascade`]: pick the region, then the province, then the district,
//!   one children query per level.
//! * [`reverse`]: type the district name, pick one of the ranked
//!   suggestions from a [`SearchIndex`], and get every enclosing level back
//!   in one resolve call.
//!
//! [`benchmark`] times both on the same targets and reports the savings.

pub mod benchmark;
pub mod cascade;
pub mod error;
pub mod fixtures;
pub mod gazetteer;
pub mod reverse;
pub mod search_index;
pub mod synthetic;

pub use cascade::CascadeSession;
pub use error::{Error, Result};
pub use gazetteer::{Gazetteer, Level, LoadOptions, LocationNode, PathEntry, ResolvedLocation};
pub use search_index::{normalize, Candidate, MatchClass, NormalizedKey, SearchIndex};
