//! K-out-of-N synchronization and broadcast reach histograms.
//!
//! For a series of independent events `a0..an`, the histogram is a series
//! indexed by `k` whose entry is the latency profile of "exactly `k` events
//! completed". It is built recursively as `[!a0, a0] ⊛ hist(a1..an)`, where the
//! convolution uses the exclusive sum as addition and `last_to_finish` as
//! multiplication.

use crate::error::{Error, Result};
use crate::latency::{LatencyDistribution, TimeToCompletion};
use crate::matrix::NetworkMatrix;
use crate::numeric::{Complement, Delay, ExclusiveSum, Probability};
use crate::series::{try_general_convolve, try_zip_with_expanding, Series};

/// Pdf-wise complement, left uncanonicalized.
impl Complement for LatencyDistribution {
    fn complement(&self) -> Self {
        LatencyDistribution::from_raw(self.pdf().map(|x| 1.0 - x))
    }
}

/// Pointwise pdf sum of mutually exclusive outcomes.
impl ExclusiveSum for LatencyDistribution {
    fn ex_add(&self, other: &Self) -> Result<Self> {
        let sum = try_zip_with_expanding(
            |&a, &b| crate::numeric::ex_add(a, b),
            self.pdf().as_slice(),
            other.pdf().as_slice(),
        )?;
        Ok(LatencyDistribution::from_raw(Series::new(sum)))
    }
}

impl<T: ExclusiveSum + Clone> ExclusiveSum for Series<T> {
    fn ex_add(&self, other: &Self) -> Result<Self> {
        try_zip_with_expanding(
            |a: &T, b: &T| a.ex_add(b),
            self.as_slice(),
            other.as_slice(),
        )
        .map(Series::new)
    }
}

pub fn ld_complement(ld: &LatencyDistribution) -> LatencyDistribution {
    ld.complement()
}

/// Histogram of how many of the given events have completed.
///
/// The output has one more entry than the input.
pub fn k_out_of_n<T>(events: &Series<T>) -> Result<Series<T>>
where
    T: TimeToCompletion + ExclusiveSum + Complement + Clone,
{
    match events.as_slice() {
        [] => Err(Error::Empty("kOutOfN")),
        [x] => Ok(Series::from([x.complement(), x.clone()])),
        [x, rest @ ..] => {
            let head = k_out_of_n(&Series::from([x.clone()]))?;
            let tail = k_out_of_n(&Series::from(rest))?;
            try_general_convolve(
                |a: &T, b: &T| a.ex_add(b),
                |a: &T, b: &T| Ok(a.last_to_finish(b)),
                &head,
                &tail,
            )
        }
    }
}

/// Reach histogram for one row of a connectivity matrix: entry `k` is the
/// latency profile of exactly `k` nodes having been reached.
pub fn nodes_reached(row: &Series<LatencyDistribution>) -> Result<Series<LatencyDistribution>> {
    k_out_of_n(row)
}

/// Mean of equally long histograms.
///
/// Each histogram is attenuated by `1/count` before the exclusive sum, which
/// keeps every partial sum a valid probability.
pub fn average(histograms: &[Series<LatencyDistribution>]) -> Result<Series<LatencyDistribution>> {
    let first = histograms.first().ok_or(Error::Empty("average"))?;
    if let Some(bad) = histograms.iter().find(|h| h.len() != first.len()) {
        return Err(Error::LengthMismatch {
            left: first.len(),
            right: bad.len(),
        });
    }
    let weight = Probability::new(1.0 / histograms.len() as f64)?;
    let scaled: Vec<Series<LatencyDistribution>> = histograms
        .iter()
        .map(|h| h.map(|ld| LatencyDistribution::scale_probability(weight, ld)))
        .collect();
    crate::numeric::ex_sum(&scaled)
}

/// Reach histogram for a uniformly chosen source node.
pub fn average_k_out_of_n(m: &NetworkMatrix) -> Result<Series<LatencyDistribution>> {
    let per_source = (0..m.dim())
        .map(|i| nodes_reached(&Series::from(m.row(i))))
        .collect::<Result<Vec<_>>>()?;
    average(&per_source)
}

/// Reach histogram at one instant: entry `k` is the probability that
/// exactly `k` nodes have been reached by `t` from a uniformly chosen source.
///
/// Every cell is first collapsed to its probability of arrival by `t`, so
/// the recursion only sees single-bin distributions, where the pdf-wise
/// complement is the probability of not having arrived.
pub fn reached_by(m: &NetworkMatrix, t: Delay) -> Result<Series<f64>> {
    let snapshot = m.try_map(|ld| {
        Probability::new(ld.cdf_at(t.index()).min(1.0)).map(LatencyDistribution::preserved)
    })?;
    Ok(average_k_out_of_n(&snapshot)?.map(LatencyDistribution::ultimate_arrival))
}
