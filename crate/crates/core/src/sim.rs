//! Monte-Carlo sampling semantics for latency distributions, operators and
//! network broadcast. Used as an independent oracle for the analytic algebra.
//!
//! Randomness comes from ChaCha8 seeded with a `u64`, so a seed pins the
//! sample stream across platforms.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::latency::LatencyDistribution;
use crate::matrix::NetworkMatrix;
use crate::numeric::Delay;
use crate::series::Series;

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SampleOutcome {
    Arrived(Delay),
    Lost,
}

pub use SampleOutcome::{Arrived, Lost};

impl SampleOutcome {
    fn shifted(self, by: Delay) -> SampleOutcome {
        match self {
            Arrived(t) => Arrived(by.saturating_add(t)),
            Lost => Lost,
        }
    }
}

/// Binary operator tags understood by [`simulate_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    After,
    FirstToFinish,
    LastToFinish,
    Failover(Delay),
    Retransmit(Delay),
}

/// Arrives at `i` with probability `pdf[i]`, lost with the remaining mass.
pub fn sample_ld(ld: &LatencyDistribution, rng: &mut impl Rng) -> SampleOutcome {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in ld.pdf().iter().enumerate() {
        acc += p;
        if u < acc {
            return Arrived(Delay::from_index(i));
        }
    }
    Lost
}

/// Outcome of an operator given one outcome per operand.
pub fn simulate_op(op: Op, a: SampleOutcome, b: SampleOutcome) -> SampleOutcome {
    match op {
        Op::After => match (a, b) {
            (Arrived(x), Arrived(y)) => Arrived(x.saturating_add(y)),
            _ => Lost,
        },
        // Lost orders after every arrival.
        Op::FirstToFinish => a.min(b),
        Op::LastToFinish => a.max(b),
        Op::Failover(deadline) => match a {
            Arrived(t) if t < deadline => a,
            _ => b.shifted(deadline),
        },
        Op::Retransmit(deadline) => a.min(b.shifted(deadline)),
    }
}

/// Sampled distribution of `op(a, b)` with independent operands.
pub fn sample_op(
    op: Op,
    a: &LatencyDistribution,
    b: &LatencyDistribution,
    rng: &mut impl Rng,
) -> SampleOutcome {
    let x = sample_ld(a, rng);
    let y = sample_ld(b, rng);
    simulate_op(op, x, y)
}

/// Fraction of samples arriving at each delay up to `horizon` (inclusive),
/// canonicalized.
pub fn empirical_distribution(
    samples: &[SampleOutcome],
    horizon: Delay,
) -> Result<LatencyDistribution> {
    if samples.is_empty() {
        return Err(Error::Empty("empiricalDistribution"));
    }
    let mut counts = vec![0usize; horizon.index() + 1];
    for s in samples {
        if let Arrived(t) = s {
            if let Some(c) = counts.get_mut(t.index()) {
                *c += 1;
            }
        }
    }
    let n = samples.len() as f64;
    LatencyDistribution::from_pdf(&counts.iter().map(|&c| c as f64 / n).collect::<Series<_>>())
}

/// One broadcast trial from `source`.
///
/// Every directed link is sampled once; a node's reach time is the shortest
/// path over the links that delivered. The source itself arrives at 0.
pub fn simulate_broadcast(
    m: &NetworkMatrix,
    source: usize,
    rng: &mut impl Rng,
) -> Vec<SampleOutcome> {
    let n = m.dim();
    let links: Vec<SampleOutcome> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                Lost
            } else {
                sample_ld(&m[(i, j)], rng)
            }
        })
        .collect();

    let mut reach = vec![Lost; n];
    let mut queue = BinaryHeap::new();
    reach[source] = Arrived(Delay::START);
    queue.push(Reverse((Delay::START, source)));
    while let Some(Reverse((t, i))) = queue.pop() {
        if reach[i] < Arrived(t) {
            continue;
        }
        for j in 0..n {
            if let Arrived(w) = links[i * n + j] {
                let candidate = Arrived(t.saturating_add(w));
                if candidate < reach[j] {
                    reach[j] = candidate;
                    queue.push(Reverse((t.saturating_add(w), j)));
                }
            }
        }
    }
    reach
}

/// Largest absolute per-bin pdf difference, missing bins read as zero.
pub fn max_bin_deviation(a: &LatencyDistribution, b: &LatencyDistribution) -> f64 {
    let (x, y) = (a.pdf().as_slice(), b.pdf().as_slice());
    let at = |s: &[f64], i: usize| s.get(i).copied().unwrap_or(0.0);
    (0..x.len().max(y.len()))
        .map(|i| (at(x, i) - at(y, i)).abs())
        .fold(0.0, f64::max)
}
