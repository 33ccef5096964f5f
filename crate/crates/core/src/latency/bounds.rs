//! Earliest and latest arrival bounds.
//!
//! Both bounds are closed under the [`TimeToCompletion`] operators, so an
//! expression can be evaluated on bounds alone and yields the bounds of the
//! full evaluation.

use std::fmt;

use super::{LatencyDistribution, TimeToCompletion};
use crate::error::{Error, Result};
use crate::numeric::{Delay, IDEALIZED_TOLERANCE};

/// An optional delay. `Never` compares greater than every `Sometime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SometimeOrNever {
    Sometime(Delay),
    Never,
}

pub use SometimeOrNever::{Never, Sometime};

impl SometimeOrNever {
    pub fn delay(self) -> Option<Delay> {
        match self {
            Sometime(d) => Some(d),
            Never => None,
        }
    }

    fn plus(self, other: SometimeOrNever) -> SometimeOrNever {
        match (self, other) {
            (Sometime(a), Sometime(b)) => Sometime(a.saturating_add(b)),
            _ => Never,
        }
    }

    /// Bound of a failover: the attempt's bound if it lies before the
    /// deadline, otherwise the fallback's bound shifted by the deadline.
    fn failover(deadline: Delay, attempt: SometimeOrNever, fallback: SometimeOrNever) -> Self {
        match attempt {
            Sometime(t) if t < deadline => attempt,
            _ => Sometime(deadline).plus(fallback),
        }
    }
}

impl fmt::Display for SometimeOrNever {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sometime(t) => write!(f, "Sometime {t}"),
            Never => f.write_str("Never"),
        }
    }
}

/// Upper bound: the latest time of arrival, `Never` when some mass is lost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Latest(pub SometimeOrNever);

/// Lower bound: the earliest possible arrival, `Never` when nothing arrives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Earliest(pub SometimeOrNever);

impl LatencyDistribution {
    /// Fails on a non-canonical distribution that ends with a zero bin.
    pub fn latest(&self) -> Result<Latest> {
        if self.ultimate_arrival() < 1.0 - IDEALIZED_TOLERANCE {
            return Ok(Latest(Never));
        }
        match self.pdf().last() {
            Some(&last) if last != 0.0 => Ok(Latest(Sometime(self.deadline()))),
            _ => Err(Error::NonCanonical),
        }
    }

    /// Fails on a non-canonical distribution that ends with a zero bin.
    pub fn earliest(&self) -> Result<Earliest> {
        let pdf = self.pdf().as_slice();
        match pdf {
            [x] if *x == 0.0 => Ok(Earliest(Never)),
            [_] => Ok(Earliest(Sometime(Delay::START))),
            [.., last] if *last == 0.0 => Err(Error::NonCanonical),
            _ => {
                let leading = pdf.iter().take_while(|&&x| x == 0.0).count();
                Ok(Earliest(Sometime(Delay::from_index(leading))))
            }
        }
    }
}

macro_rules! bound_time_to_completion {
    ($bound:ident) => {
        impl TimeToCompletion for $bound {
            fn first_to_finish(&self, other: &Self) -> Self {
                $bound(self.0.min(other.0))
            }

            fn last_to_finish(&self, other: &Self) -> Self {
                $bound(self.0.max(other.0))
            }

            fn after(&self, other: &Self) -> Self {
                $bound(self.0.plus(other.0))
            }

            fn delay(d: Delay) -> Self {
                $bound(Sometime(d))
            }

            fn all_lost() -> Self {
                $bound(Never)
            }

            fn failover(deadline: Delay, attempt: &Self, fallback: &Self) -> Self {
                $bound(SometimeOrNever::failover(deadline, attempt.0, fallback.0))
            }
        }

        impl fmt::Display for $bound {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

bound_time_to_completion!(Latest);
bound_time_to_completion!(Earliest);
