//! Signed and unsigned Tornheim double series and their q-analogs,
//! evaluated two independent ways: exact closed forms in
//! Q[pi, log 2, zeta(3), zeta(5), ...] and direct high-precision summation.

pub mod bernoulli;
pub mod closed_form;
pub mod error;
pub mod expr;
pub mod index;
pub mod numeric;
pub mod rational;
pub mod reduction;
pub mod reference;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{zeta_const, ZetaExpression, ZetaMonomial};
pub use index::{QIndex, Sign, SignedIndex};
pub use numeric::{PrecisionConfig, QParam, Summation};
