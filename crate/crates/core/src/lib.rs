//! Finite categories, spans and the Isbell construction, and a bounded
//! laboratory for fibrations, internal categories and externalization.

#![allow(clippy::type_complexity)]

pub mod category;
pub mod dsl;
pub mod error;
pub mod fincat;
pub mod externalization;
pub mod fib_isbell;
pub mod fibration;
pub mod finset;
pub mod fixtures;
pub mod internal;
pub mod par;
pub mod report;
pub mod spans;

pub use error::{Error, Result};
