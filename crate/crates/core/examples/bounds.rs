//! Earliest and latest arrival, computed from full distributions and from
//! bounds alone.

use deltaq::latency::{Earliest, LatencyDistribution as Ld, Latest, TimeToCompletion};
use deltaq::numeric::Delay;
use deltaq::series::Series;

fn pipeline<T: TimeToCompletion>(a: &T, b: &T) -> T {
    T::failover(
        Delay::new(3).unwrap(),
        &a.after(b),
        &T::delay(Delay::new(1).unwrap()).after(b),
    )
    .first_to_finish(b)
}

fn main() -> Result<(), deltaq::error::Error> {
    let a = Ld::from_pdf(&Series::from([0.0, 0.25, 0.5, 0.25]))?;
    let b = Ld::from_pdf(&Series::from([0.0, 0.0, 0.5, 0.4]))?;

    let full = pipeline(&a, &b);
    println!("distribution  {:?}", full.pdf().as_slice());
    println!(
        "from distribution: earliest {}, latest {}",
        full.earliest()?,
        full.latest()?
    );

    let early: Earliest = pipeline(&a.earliest()?, &b.earliest()?);
    let late: Latest = pipeline(&a.latest()?, &b.latest()?);
    println!("from bounds:       earliest {early}, latest {late}");
    Ok(())
}
