//! Non-central beta family: the doubly non-central beta, its type 1 and
//! type 2 specialisations, the non-central chi-squared they are built from,
//! three competing unit-interval models, samplers and a fitting engine.

pub mod altmodels;
pub mod error;
pub mod fitting;
pub mod ncbeta;
pub mod ncchisq;
pub mod sampling;
pub mod specfun;

pub use altmodels::{CHParams, GHParams};
pub use error::{Error, Result};
pub use fitting::{Dataset, FitResult, Model, MomResult};
pub use ncbeta::{DnCBetaParams, G3BParams, Nc1BetaParams, Nc2BetaParams};
pub use ncchisq::{NcChiSqParams, PatnaikParams};
pub use sampling::RandomStream;
pub use specfun::{PochPoly, SeriesControl};
