use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero: ({numerator}) / ({denominator})")]
    DivisionByZero { numerator: String, denominator: String },
    #[error("pole: denominator of {value} vanishes at {point}")]
    Pole { value: String, point: String },
    #[error("cannot parse {input:?} at byte {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("precision must be at least 53 bits, got {0}")]
    Precision(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series constant term {0} is not invertible")]
    NotInvertible(String),
    #[error("inner series must have zero constant term, found {0}")]
    NonzeroConstant(String),
    #[error("series has zero linear coefficient and cannot be reverted")]
    ZeroLinear,
    #[error("square root needs constant term 1, found {0}")]
    SqrtConstant(String),
    #[error("reversion failed verification at order {0}")]
    RevertCheck(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange { what: &'static str, value: i64, min: i64, max: i64 },
    #[error("partitions of different ground sets ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("{0} is not below {1} in the noncrossing lattice")]
    NotLeq(String, String),
    #[error("{0} is not an interval partition")]
    NotInterval(String),
    #[error("{0} is not a noncrossing partition of 1..={1}")]
    InvalidPartition(String, usize),
    #[error("Charlier parameter a must be nonzero")]
    ZeroCharlierParameter,
    #[error("hypergeometric series does not terminate")]
    NonTerminating,
    #[error("lower hypergeometric parameter {0} hits a pole before termination")]
    LowerPole(String),
    #[error("Schur parameter gamma_{index} = {value} is not inside the unit disc at t = {probe}")]
    NotSchur { index: usize, value: String, probe: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(what: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::OutOfRange { what, value: value as i64, min: min as i64, max: max as i64 });
    }
    Ok(())
}
