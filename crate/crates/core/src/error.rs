use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input to the exponential has a trace that is not numerically zero.
    NotTraceless {
        trace: f64,
    },
    /// `|det − 1|` exceeded the group tolerance.
    NotUnimodular {
        residual: f64,
    },
    /// A sampling bound was zero, negative or not finite.
    InvalidBounds,
    /// `st − |b|² = 1` failed on the slice.
    SliceViolation {
        residual: f64,
    },
    /// Coordinates with `st < 1`.
    InvalidCoordinates {
        st: f64,
    },
    /// Decomposition reconstruction residual too large.
    IllConditioned {
        residual: f64,
    },
    /// Two bundle points carry different weights.
    WeightMismatch {
        left: i32,
        right: i32,
    },
    /// Operation needs a nonzero (or positive) weight.
    InvalidWeight {
        m: i32,
    },
    /// `τ` must be nonnegative.
    NegativeTau {
        tau: f64,
    },
    /// Profile must satisfy `ρ(0) = 1`.
    UnnormalizedProfile {
        rho0: f64,
    },
    InvalidProfile(&'static str),
    /// Grid too short or not strictly increasing.
    InvalidGrid(&'static str),
    InvalidProbe(&'static str),
    UnknownFunction,
    /// The profile failed a necessary Stein condition.
    NotStein,
    /// `δ ≡ 0`: the maximal bundle carries entire curves, no witness exists.
    WitnessImpossible,
    /// The ball must lie compactly inside the punctured unit ball.
    BallOutsidePuncturedBall,
    /// The scan never reached the level `(m/2)·C`.
    ThresholdNotReached {
        tau_max: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotTraceless { trace } => write!(f, "matrix is not traceless (|tr| = {trace:e})"),
            Error::NotUnimodular { residual } => {
                write!(f, "matrix is not unimodular (|det - 1| = {residual:e})")
            }
            Error::InvalidBounds => write!(f, "sampling bounds must be positive and finite"),
            Error::SliceViolation { residual } => {
                write!(f, "slice condition st - |b|^2 = 1 violated by {residual:e}")
            }
            Error::InvalidCoordinates { st } => write!(f, "invalid coordinates: st = {st} < 1"),
            Error::IllConditioned { residual } => {
                write!(f, "decomposition residual {residual:e} exceeds tolerance")
            }
            Error::WeightMismatch { left, right } => {
                write!(f, "bundle weights differ: {left} vs {right}")
            }
            Error::InvalidWeight { m } => write!(f, "weight m = {m} not allowed here"),
            Error::NegativeTau { tau } => write!(f, "tau must be nonnegative, got {tau}"),
            Error::UnnormalizedProfile { rho0 } => {
                write!(f, "profile is not normalized: rho(0) = {rho0}")
            }
            Error::InvalidProfile(msg) => write!(f, "invalid profile: {msg}"),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::InvalidProbe(msg) => write!(f, "invalid probe parameters: {msg}"),
            Error::UnknownFunction => write!(f, "unknown invariant function id"),
            Error::NotStein => write!(f, "profile fails a necessary Stein condition"),
            Error::WitnessImpossible => {
                write!(f, "delta vanishes identically: the maximal bundle admits no witness")
            }
            Error::BallOutsidePuncturedBall => {
                write!(f, "ball must be relatively compact in the punctured unit ball")
            }
            Error::ThresholdNotReached { tau_max } => {
                write!(f, "delta did not reach the witness level before tau = {tau_max}")
            }
        }
    }
}

impl core::error::Error for Error {}
