//! Ordinal aggregation of lattice-valued functions.
//!
//! The crate works entirely with finite chains, so every join and meet is a
//! comparison of integer ranks. Layers, bottom up:
//!
//! - [`chain`]: chains, reflection chains and the pseudo-operations ⩖ / △;
//! - [`interval`]: the Topkis-ordered interval lattice and its reflection 𝓡;
//! - [`correspondence`]: monotone interval-valued maps, inner products and
//!   saturation;
//! - [`measure`]: monotone set functions on a finite ground set;
//! - [`aggregation`]: distribution functions, quantiles and the Fan-Sugeno
//!   family (Sugeno integral, quantile functionals, symmetric and asymmetric
//!   variants);
//! - [`metrics`]: ordinal distances and norms;
//! - [`oracle`]: definition-literal brute-force references;
//! - [`spec`] and [`cli`]: the text format and command-line front end.

pub mod aggregation;
pub mod chain;
pub mod cli;
pub mod correspondence;
pub mod error;
pub mod interval;
pub mod measure;
pub mod metrics;
pub mod oracle;
pub mod spec;

pub use aggregation::{CommFn, LatticeFn, RFn, Variant};
pub use chain::{Chain, ChainElem, ReflChain, ReflElem};
pub use correspondence::{Corr, TotalFn};
pub use error::{Error, Result};
pub use interval::{Interval, RInterval, RSpan, Span, TopkisOrd};
pub use measure::{ChainKind, GroundSet, Measure, Subset};
