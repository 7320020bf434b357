//! Product Bernoulli measures: profiles, sampling, exact local averages,
//! relative entropy, and the truncation-level schedule.

mod average;
mod entropy;
mod profile;
mod scan;
mod schedule;

pub use average::{bernoulli_average, eval_polynomial, mean_polynomial, MAX_WINDOW};
pub use entropy::{relative_entropy_product, RelativeEntropy};
pub use profile::{sample_product, sample_product_seeded, LatticeProfile};
pub use scan::{initial_entropy_scan, EntropyScanRow, ScanError};
pub use schedule::{EpsRule, RegularizationSchedule};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("profile value {value} at site {site} is outside [0, 1]")]
    ProfileOutOfRange { site: usize, value: f64 },
    #[error("observable window of {window} sites exceeds the enumeration cap {max}")]
    WindowTooWide { window: usize, max: usize },
    #[error("constraint range m must be at least 2, got {0}")]
    RangeTooSmall(usize),
    #[error("truncation level must lie strictly between 0 and 1/2, got {0}")]
    TruncationOutOfRange(f64),
    #[error("profiles have mismatched lengths {0} and {1}")]
    LengthMismatch(usize, usize),
}
