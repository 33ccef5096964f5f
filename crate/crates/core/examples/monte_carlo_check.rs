//! Cross-checks an operator against sampling.

use deltaq::latency::LatencyDistribution as Ld;
use deltaq::numeric::Delay;
use deltaq::series::Series;
use deltaq::sim::{empirical_distribution, max_bin_deviation, rng_from_seed, sample_op, Op};

fn main() -> Result<(), deltaq::error::Error> {
    let a = Ld::from_pdf(&Series::from([0.1, 0.4, 0.3]))?;
    let b = Ld::from_pdf(&Series::from([0.0, 0.5, 0.5]))?;
    let deadline = Delay::new(2)?;
    let mut rng = rng_from_seed(2024);

    for (name, op, analytic) in [
        ("after", Op::After, a.after(&b)),
        ("first to finish", Op::FirstToFinish, a.first_to_finish(&b)),
        ("last to finish", Op::LastToFinish, a.last_to_finish(&b)),
        (
            "failover",
            Op::Failover(deadline),
            Ld::failover(deadline, &a, &b),
        ),
        (
            "retransmit",
            Op::Retransmit(deadline),
            Ld::retransmit(deadline, &a, &b),
        ),
    ] {
        let samples: Vec<_> = (0..10_000)
            .map(|_| sample_op(op, &a, &b, &mut rng))
            .collect();
        let empirical = empirical_distribution(&samples, Delay::new(8)?)?;
        println!(
            "{name:<16} max bin deviation {:.4}",
            max_bin_deviation(&analytic, &empirical)
        );
    }
    Ok(())
}
