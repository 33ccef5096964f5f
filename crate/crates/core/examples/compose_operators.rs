//! Sequential and parallel composition, failover and retransmission.

use deltaq::latency::LatencyDistribution as Ld;
use deltaq::numeric::{Delay, Probability};
use deltaq::series::Series;

fn show(name: &str, ld: &Ld) {
    println!(
        "{name:<28} pdf {:?}  arrives {:.3}",
        ld.pdf().as_slice(),
        ld.ultimate_arrival()
    );
}

fn main() -> Result<(), deltaq::error::Error> {
    let hop = Ld::from_pdf(&Series::from([0.0, 0.6, 0.3]))?;
    let lossy = Ld::preserved(Probability::new(0.9)?);
    let two = Delay::new(2)?;

    show("hop", &hop);
    show("hop ; hop", &hop.after(&hop));
    show("hop ; lossy", &hop.after(&lossy));
    show("hop \\/ hop", &hop.first_to_finish(&hop));
    show("hop /\\ hop", &hop.last_to_finish(&hop));
    show("failover(2, hop, hop)", &Ld::failover(two, &hop, &hop));
    show("retransmit(2, hop, hop)", &Ld::retransmit(two, &hop, &hop));
    println!(
        "hop \\/ hop is no worse than hop: {}",
        hop.first_to_finish(&hop).no_worse_than(&hop)
    );
    Ok(())
}
