//! Wigner 3nj symbols: exact values and semiclassical approximations.
//!
//! - [`exact`] evaluates 6j, 9j and the first-kind 12j and 15j symbols exactly.
//! - [`wigner_d`], [`geometry`] and [`asymptotics`] implement the
//!   small/large-spin asymptotic formulas, generic over `f32`/`f64`.
//! - [`harness`] sweeps one entry of a symbol and compares both.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod halfint;
pub mod harness;
pub mod scalar;
pub mod wigner_d;

pub use error::{ArityError, AsymError, GeometryError, HarnessError};
pub use exact::{
    evaluate, fifteen_j_first, nine_j, six_j, twelve_j_first, Engine, ExactValue, SymbolArgs,
    SymbolKind,
};
pub use halfint::{triad_allowed, HalfInt};
pub use scalar::Real;

pub type Vec3f64 = geometry::Vec3<f64>;
pub type EdgeSetF64 = geometry::EdgeSet<f64>;
pub type TetraConfigF64 = geometry::TetraConfig<f64>;
pub type AngleBundleF64 = geometry::AngleBundle<f64>;
pub type AsymResultF64 = asymptotics::AsymResult<f64>;

pub type Vec3f32 = geometry::Vec3<f32>;
pub type EdgeSetF32 = geometry::EdgeSet<f32>;
pub type TetraConfigF32 = geometry::TetraConfig<f32>;
pub type AngleBundleF32 = geometry::AngleBundle<f32>;
pub type AsymResultF32 = asymptotics::AsymResult<f32>;
