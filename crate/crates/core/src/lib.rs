//! Example-based migration of deprecated Android API usages.
//!
//! The pipeline: parse an after-update example ([`syntax`]), resolve the
//! values its replacement call needs ([`flow`]), turn it into an
//! [`script::UpdateScript`], and apply that script to target files through
//! normalization, template splicing, definition copying and denormalization
//! ([`normalize`]). [`readability`] scores the results.

pub mod flow;
pub mod mapping;
pub mod normalize;
pub mod readability;
pub mod script;
pub mod syntax;

pub use mapping::{ApiMapping, ApiSignature};
pub use syntax::{parse, ParseError, SourceUnit};
