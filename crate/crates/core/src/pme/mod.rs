//! Porous medium equation on the unit torus: periodic grid profiles, the
//! degenerate-diffusion solver, self-similar pulse solutions, initial-datum
//! regularisation, and free-boundary bookkeeping.

mod barenblatt;
mod grid;
mod interface;
mod mollifier;
mod regularize;
mod solve;

pub use barenblatt::{barenblatt, barenblatt_point, barenblatt_profile, positivity_radius};
pub use grid::{density_from_pressure, pressure_from_density, FieldKind, GridProfile};
pub use interface::{interface_entry, InterfaceEntry, DEFAULT_POSITIVITY_FLOOR};
pub use mollifier::{build_mollifier, kernel_sup_constant, Mollifier};
pub use regularize::{pressure_clamp_window, regularize_initial};
pub use solve::{solve_pme, SolverConfig, SpaceTimeField};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum PmeError {
    #[error("grid must have at least one cell")]
    EmptyProfile,
    #[error("density {value} at cell {cell} is outside [0, 1]")]
    DensityOutOfRange { cell: usize, value: f64 },
    #[error("pressure {value} at cell {cell} is negative or not finite")]
    BadPressure { cell: usize, value: f64 },
    #[error("expected a {expected:?} profile, got a {got:?} profile")]
    KindMismatch { expected: FieldKind, got: FieldKind },
    #[error("profiles have mismatched lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("exponent m must be at least 2, got {0}")]
    RangeTooSmall(usize),
    #[error("truncation level must lie strictly between 0 and 1/2, got {0}")]
    TruncationOutOfRange(f64),
    #[error("mollifier needs eps * cells > 2, got eps {eps} on {cells} cells")]
    MollifierTooNarrow { eps: f64, cells: usize },
    #[error("pulse of positivity radius {radius} does not fit on the unit torus")]
    PulseWrapsTorus { radius: f64 },
    #[error("pulse requires a positive time, got {0}")]
    BadPulseTime(f64),
    #[error("pulse shape constant must be finite and nonnegative, got {0}")]
    BadPulseConstant(f64),
    #[error("CFL safety factor must lie in (0, 1], got {0}")]
    BadCfl(f64),
    #[error("time horizon must be finite and nonnegative, got {0}")]
    BadHorizon(f64),
    #[error("snapshot times must be strictly increasing within [0, t_end]")]
    BadSnapshotTimes,
    #[error("step cap must be positive, got {0}")]
    BadStepCap(f64),
    #[error("solution left [0, 1] at time {time}, cell {cell}: value {value}")]
    RangeViolation { time: f64, cell: usize, value: f64 },
    #[error("interface threshold must satisfy 0 <= floor < delta, got floor {floor}, delta {delta}")]
    BadInterfaceThresholds { floor: f64, delta: f64 },
}
