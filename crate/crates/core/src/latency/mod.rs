//! Improper latency distributions (ΔQ) and their composition operators.
//!
//! A [`LatencyDistribution`] holds the probability mass of a message arriving
//! at each discrete delay. The masses may sum to less than one: the deficit is
//! the probability that the message never arrives (or arrives after the last
//! delay we care about).

pub mod bounds;

use crate::error::{Error, Result};
use crate::numeric::{Delay, Metric, Null, Probability, Unit, IDEALIZED_TOLERANCE};
use crate::series::{squared_difference, Series};

pub use bounds::{Earliest, Latest, Never, Sometime, SometimeOrNever};

/// Masses at or below this magnitude are floating-point residue and are
/// flushed to zero during canonicalization.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Operations shared by full distributions and their bounds.
///
/// `after` binds tighter than `first_to_finish` and `last_to_finish` in the
/// expression language; all three associate to the right.
pub trait TimeToCompletion: Sized {
    fn first_to_finish(&self, other: &Self) -> Self;

    fn last_to_finish(&self, other: &Self) -> Self;

    fn after(&self, other: &Self) -> Self;

    fn delay(d: Delay) -> Self;

    fn all_lost() -> Self;

    fn no_delay() -> Self {
        Self::delay(Delay::START)
    }

    /// Run `attempt` until `deadline`, then switch to `fallback`.
    fn failover(deadline: Delay, attempt: &Self, fallback: &Self) -> Self;

    /// Keep `first` running and additionally start `second` at `deadline`.
    fn retransmit(deadline: Delay, first: &Self, second: &Self) -> Self {
        first.first_to_finish(&Self::delay(deadline).after(second))
    }
}

/// Probability mass of arrival per discrete delay.
///
/// Values built through the public constructors and operators are canonical:
/// total mass at most one, no trailing zeros, at least one element.
/// [`LatencyDistribution::from_raw`] exists for intermediate values (such as
/// pdf-wise complements) that are not distributions themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct LatencyDistribution {
    pdf: Series<f64>,
}

impl LatencyDistribution {
    /// Canonical form of a raw pdf series.
    ///
    /// The prefix is cut where the running mass first exceeds one (the last
    /// kept element is clipped to the remaining mass), trailing zeros are
    /// dropped, and an empty result becomes `[0.0]`.
    pub fn canonicalize(raw: &Series<f64>) -> Result<Self> {
        for (index, &value) in raw.iter().enumerate() {
            if value.is_nan() || value < -NOISE_FLOOR {
                return Err(Error::NegativeMass { index, value });
            }
        }
        Ok(Self::canonical_from(raw.as_slice()))
    }

    /// Canonicalization for values produced by this crate's own operators,
    /// where negative entries can only be rounding residue.
    fn canonical_from(raw: &[f64]) -> Self {
        let snap = |x: f64| if x > NOISE_FLOOR { x } else { 0.0 };
        let mut out = Vec::with_capacity(raw.len());
        let mut sum = 0.0;
        for &x in raw {
            let x = snap(x);
            if sum + x > 1.0 {
                out.push(snap(1.0 - sum));
                break;
            }
            sum += x;
            out.push(x);
        }
        let keep = out.iter().rposition(|&x| x != 0.0).map_or(0, |i| i + 1);
        out.truncate(keep.max(1));
        if out.is_empty() {
            out.push(0.0);
        }
        LatencyDistribution {
            pdf: Series::new(out),
        }
    }

    pub fn from_pdf(pdf: &Series<f64>) -> Result<Self> {
        Self::canonicalize(pdf)
    }

    /// Builds a distribution from a non-decreasing CDF with values in `[0, 1]`.
    pub fn from_cdf(cdf: &Series<f64>) -> Result<Self> {
        check_unit_interval(cdf)?;
        if let Some(index) = cdf
            .as_slice()
            .windows(2)
            .position(|w| w[1] < w[0] - IDEALIZED_TOLERANCE)
        {
            return Err(Error::NotMonotone { index: index + 1 });
        }
        Ok(Self::canonical_from(cdf.diff_enc().as_slice()))
    }

    /// Builds a distribution from a non-increasing complementary CDF.
    pub fn from_complement_of_cdf(ccdf: &Series<f64>) -> Result<Self> {
        Self::from_cdf(&ccdf.complement()?)
    }

    /// Wraps a pdf series as is, without canonicalization or validation.
    pub fn from_raw(pdf: Series<f64>) -> Self {
        LatencyDistribution { pdf }
    }

    /// Single-bin distribution: arrives immediately with probability `p`.
    pub fn preserved(p: Probability) -> Self {
        Self::canonical_from(&[p.value()])
    }

    pub fn all_lost() -> Self {
        LatencyDistribution {
            pdf: Series::from([0.0]),
        }
    }

    pub fn no_delay() -> Self {
        LatencyDistribution {
            pdf: Series::from([1.0]),
        }
    }

    /// Point mass at `d`.
    pub fn delay_of(d: Delay) -> Self {
        let mut v = vec![0.0; d.index()];
        v.push(1.0);
        LatencyDistribution {
            pdf: Series::new(v),
        }
    }

    pub fn pdf(&self) -> &Series<f64> {
        &self.pdf
    }

    pub fn cdf(&self) -> Series<f64> {
        self.pdf.cumsum()
    }

    pub fn complement_cdf(&self) -> Series<f64> {
        self.cdf().map(|c| 1.0 - c)
    }

    /// Value of the CDF at `t`, extended past the deadline by its final value.
    pub fn cdf_at(&self, t: usize) -> f64 {
        let end = (t + 1).min(self.pdf.len());
        self.pdf.as_slice()[..end].iter().sum()
    }

    pub fn is_canonical(&self) -> bool {
        let v = self.pdf.as_slice();
        let Some(&last) = v.last() else {
            return false;
        };
        v.iter().all(|x| (0.0..=1.0).contains(x))
            && self.pdf.sum() <= 1.0 + IDEALIZED_TOLERANCE
            && (last != 0.0 || v.len() == 1)
    }

    /// Index of the last bin.
    pub fn deadline(&self) -> Delay {
        Delay::from_index(self.pdf.len().saturating_sub(1))
    }

    /// Total probability of arrival.
    pub fn ultimate_arrival(&self) -> f64 {
        self.pdf.sum()
    }

    /// Sequential composition: the pdfs convolve.
    pub fn after(&self, other: &Self) -> Self {
        Self::canonical_from(self.pdf.convolve(&other.pdf).as_slice())
    }

    /// The earlier of two independent alternatives.
    ///
    /// `P(min <= t) = 1 - (1 - Pa(x <= t)) * (1 - Pb(x <= t))`, evaluated on
    /// complementary CDFs over a common length.
    pub fn first_to_finish(&self, other: &Self) -> Self {
        let (a, b) = self.common_length(other);
        let survival = a.complement_cdf().elementwise_mul(&b.complement_cdf());
        let cdf = survival.map(|s| 1.0 - s);
        Self::canonical_from(cdf.diff_enc().as_slice())
    }

    /// [`first_to_finish`](Self::first_to_finish) computed directly on pdfs:
    /// `a·(1 - cdf b) + b·(1 - cdf a) + a·b`.
    pub fn first_to_finish_expanded(&self, other: &Self) -> Self {
        let (a, b) = self.common_length(other);
        let pdf = &(&a.pdf.elementwise_mul(&b.complement_cdf())
            + &b.pdf.elementwise_mul(&a.complement_cdf()))
            + &a.pdf.elementwise_mul(&b.pdf);
        Self::canonical_from(pdf.as_slice())
    }

    /// Both of two independent actions complete: the CDFs multiply.
    pub fn last_to_finish(&self, other: &Self) -> Self {
        let (a, b) = self.common_length(other);
        let cdf = a.cdf().elementwise_mul(&b.cdf());
        Self::canonical_from(cdf.diff_enc().as_slice())
    }

    /// Attempt `attempt` until `deadline`; if it has not arrived by then,
    /// start `fallback` at `deadline`.
    ///
    /// An arrival exactly at the deadline tick already counts as missed.
    pub fn failover(deadline: Delay, attempt: &Self, fallback: &Self) -> Self {
        let initial = attempt.pdf.cut(deadline).padded(deadline.index(), 0.0);
        let remainder = 1.0 - initial.sum();
        Self::canonical_from(initial.append(&fallback.pdf.scale(remainder)).as_slice())
    }

    /// `first ∨ (delay(deadline) ; second)`: `first` keeps running.
    pub fn retransmit(deadline: Delay, first: &Self, second: &Self) -> Self {
        first.first_to_finish(&Self::delay_of(deadline).after(second))
    }

    /// Attenuation by `p`.
    pub fn scale_probability(p: Probability, ld: &Self) -> Self {
        Self::preserved(p).after(ld)
    }

    /// Shift in time by `d`.
    pub fn scale_delay(d: Delay, ld: &Self) -> Self {
        Self::delay_of(d).after(ld)
    }

    /// `self ≥Q other`: the CDF of `self` is nowhere below that of `other`.
    pub fn no_worse_than(&self, other: &Self) -> bool {
        let len = self.pdf.len().max(other.pdf.len());
        (0..len).all(|t| self.cdf_at(t) >= other.cdf_at(t) - IDEALIZED_TOLERANCE)
    }

    fn common_length(&self, other: &Self) -> (Self, Self) {
        let len = self.pdf.len().max(other.pdf.len());
        (
            LatencyDistribution {
                pdf: self.pdf.padded(len, 0.0),
            },
            LatencyDistribution {
                pdf: other.pdf.padded(len, 0.0),
            },
        )
    }
}

fn check_unit_interval(s: &Series<f64>) -> Result<()> {
    for &value in s {
        crate::numeric::check_probability(value)?;
    }
    Ok(())
}

impl TimeToCompletion for LatencyDistribution {
    fn first_to_finish(&self, other: &Self) -> Self {
        LatencyDistribution::first_to_finish(self, other)
    }

    fn last_to_finish(&self, other: &Self) -> Self {
        LatencyDistribution::last_to_finish(self, other)
    }

    fn after(&self, other: &Self) -> Self {
        LatencyDistribution::after(self, other)
    }

    fn delay(d: Delay) -> Self {
        Self::delay_of(d)
    }

    fn all_lost() -> Self {
        LatencyDistribution::all_lost()
    }

    fn no_delay() -> Self {
        LatencyDistribution::no_delay()
    }

    fn failover(deadline: Delay, attempt: &Self, fallback: &Self) -> Self {
        LatencyDistribution::failover(deadline, attempt, fallback)
    }

    fn retransmit(deadline: Delay, first: &Self, second: &Self) -> Self {
        LatencyDistribution::retransmit(deadline, first, second)
    }
}

/// Sum of squared pdf differences (no square root).
impl Metric for LatencyDistribution {
    fn distance(&self, other: &Self) -> f64 {
        squared_difference(self.pdf.as_slice(), other.pdf.as_slice())
    }

    fn similarity_threshold() -> f64 {
        1.0 / 1000.0
    }
}

impl Unit for LatencyDistribution {
    fn unit() -> Self {
        Self::no_delay()
    }
}

impl Null for LatencyDistribution {
    fn null() -> Self {
        Self::all_lost()
    }
}
