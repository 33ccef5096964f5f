//! Scalar domains (probabilities and discrete delays) and the small algebraic
//! capabilities the rest of the crate is written against.

use std::fmt;

use crate::error::{Error, Result};

/// Slack for checks on paths whose arithmetic is exact up to rounding.
pub const IDEALIZED_TOLERANCE: f64 = 1e-9;

/// Slack for validating probabilities that came from floating-point input.
pub const APPROXIMATE_TOLERANCE: f64 = 1e-6;

/// Largest representable delay, in ticks.
pub const MAX_HORIZON: u32 = 1 << 16;

/// Multiplicative unit of a domain.
pub trait Unit {
    fn unit() -> Self;
}

/// Multiplicative null (annihilator) of a domain.
pub trait Null {
    fn null() -> Self;
}

pub trait Complement {
    fn complement(&self) -> Self;
}

/// Sum of two mutually exclusive events.
///
/// Differs from `first_to_finish`, which assumes the events are independent.
pub trait ExclusiveSum: Sized {
    fn ex_add(&self, other: &Self) -> Result<Self>;
}

/// Folds a nonempty list with [`ExclusiveSum::ex_add`], associating to the right.
pub fn ex_sum<T: ExclusiveSum + Clone>(items: &[T]) -> Result<T> {
    let (last, init) = items.split_last().ok_or(Error::Empty("exSum"))?;
    init.iter()
        .rev()
        .try_fold(last.clone(), |acc, x| x.ex_add(&acc))
}

/// Approximate equality through a distance function.
pub trait Metric {
    fn distance(&self, other: &Self) -> f64;

    fn similarity_threshold() -> f64;

    fn similar(&self, other: &Self) -> bool {
        self.distance(other) < Self::similarity_threshold()
    }
}

impl Unit for i64 {
    fn unit() -> Self {
        1
    }
}

impl Null for i64 {
    fn null() -> Self {
        0
    }
}

impl Unit for f64 {
    fn unit() -> Self {
        1.0
    }
}

impl Null for f64 {
    fn null() -> Self {
        0.0
    }
}

impl Metric for f64 {
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }

    fn similarity_threshold() -> f64 {
        IDEALIZED_TOLERANCE
    }
}

/// Integers are similar only when equal.
impl Metric for i64 {
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs() as f64
    }

    fn similarity_threshold() -> f64 {
        1.0
    }
}

/// A probability in `[0, 1]`, validated with [`APPROXIMATE_TOLERANCE`] slack
/// above one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        check_probability(value).map(Probability)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl Unit for Probability {
    fn unit() -> Self {
        Probability::ONE
    }
}

impl Null for Probability {
    fn null() -> Self {
        Probability::ZERO
    }
}

impl Complement for Probability {
    fn complement(&self) -> Self {
        Probability((1.0 - self.0).max(0.0))
    }
}

impl ExclusiveSum for Probability {
    fn ex_add(&self, other: &Self) -> Result<Self> {
        ex_add(self.0, other.0).map(Probability)
    }
}

impl Metric for Probability {
    fn distance(&self, other: &Self) -> f64 {
        (self.0 - other.0).abs()
    }

    fn similarity_threshold() -> f64 {
        IDEALIZED_TOLERANCE
    }
}

pub(crate) fn check_probability(value: f64) -> Result<f64> {
    if (0.0..=1.0 + APPROXIMATE_TOLERANCE).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ProbabilityOutOfRange { value })
    }
}

/// `1 - p` for a raw probability.
pub fn complement(p: f64) -> Result<f64> {
    check_probability(p).map(|p| 1.0 - p)
}

/// `p + q` for mutually exclusive events.
pub fn ex_add(p: f64, q: f64) -> Result<f64> {
    check_probability(p)?;
    check_probability(q)?;
    let sum = p + q;
    if sum > 1.0 + APPROXIMATE_TOLERANCE {
        return Err(Error::ExclusivityViolation { sum });
    }
    Ok(sum)
}

/// A non-negative number of discrete time steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Delay(u32);

impl Delay {
    /// No delay.
    pub const START: Delay = Delay(0);

    pub fn new(ticks: u64) -> Result<Self> {
        if ticks > u64::from(MAX_HORIZON) {
            return Err(Error::HorizonExceeded {
                ticks,
                max: MAX_HORIZON,
            });
        }
        Ok(Delay(ticks as u32))
    }

    pub fn ticks(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn checked_add(self, other: Delay) -> Result<Delay> {
        Delay::new(u64::from(self.0) + u64::from(other.0))
    }

    /// Addition for bound arithmetic, unchecked against the horizon.
    pub(crate) fn saturating_add(self, other: Delay) -> Delay {
        Delay(self.0.saturating_add(other.0))
    }

    pub(crate) fn from_index(index: usize) -> Delay {
        Delay(u32::try_from(index).unwrap_or(u32::MAX))
    }
}

impl fmt::Display for Delay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for Delay {
    type Error = Error;

    fn try_from(ticks: u64) -> Result<Self> {
        Delay::new(ticks)
    }
}
