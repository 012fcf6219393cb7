//! Exact, certificate-producing algorithms for unimodular rows over Laurent
//! polynomial and Laurent series rings, and the universal complete
//! intersection rings that parametrize them.
//!
//! The crate is organized bottom-up:
//!
//! * [`base`], [`laurent`], [`mvpoly`], [`matrix`], [`comaximal`]: exact
//!   arithmetic over `Q`, `F_p`, `Z_(p)` and `Z`, and Bezout certificates.
//! * [`series`]: truncated Laurent series with explicit precision.
//! * [`row`]: the reduction of a unimodular row to Weierstrass form, length-2
//!   completion, complement shrinking and rescaling descent.
//! * [`universal`]: presentations of the universal rings and the maps into them.
//! * [`gb`]: a small Groebner-basis engine and the verification drivers built on it.
//! * [`batch`]: data-parallel fan-out of independent instances.

pub mod base;
pub mod batch;
pub mod comaximal;
pub mod error;
pub mod gb;
pub mod json;
pub mod laurent;
pub mod matrix;
pub mod mvpoly;
pub mod ring;
pub mod row;
pub mod series;
pub mod universal;

pub use base::{BaseElem, LocalBase};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use mvpoly::MvPoly;
pub use series::TruncSeries;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
