//! Exact coefficient arithmetic.

pub mod gaussian;
pub mod qrat;
pub mod series;
pub mod taupoly;
pub mod xpoly;

pub use gaussian::{int, rat, GaussianRational};
pub use qrat::QRat;
pub use series::{qrat_to_series, LambdaSeries};
pub use taupoly::TauPoly;
pub use xpoly::{quantum, XPoly};
