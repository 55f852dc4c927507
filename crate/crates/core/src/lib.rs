//! Surreal numbers as transfinite sign expansions.
//!
//! [`ordinal`] provides ordinals below ε₀ in Cantor normal form, used as
//! positions and lengths. [`surreal`] holds sign expansions with their order,
//! options, simplest-between and finite addition. [`limits`] checks sequences
//! of surreals for convergence. [`notation`] and [`cli`] are the ASCII front end.

pub mod cli;
pub mod error;
pub mod limits;
pub mod notation;
pub mod ordinal;
pub mod surreal;

pub use error::{Error, Result};
pub use notation::{format_surreal, parse_ordinal, parse_surreal, ParseError};
pub use ordinal::Ordinal;
pub use surreal::{Sign, SignExpansion};
