//! How many nodes a broadcast has reached, as a histogram over time.

use deltaq::cli::Network;
use deltaq::histogram::{k_out_of_n, reached_by};
use deltaq::latency::LatencyDistribution as Ld;
use deltaq::matrix::optimal_connections;
use deltaq::numeric::{Delay, Probability};
use deltaq::series::Series;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // three independent events succeeding with 0.9, 0.5 and 0.2
    let events: Series<Ld> = [0.9, 0.5, 0.2]
        .iter()
        .map(|&p| Probability::new(p).map(Ld::preserved))
        .collect::<Result<_, _>>()?;
    for (k, bin) in k_out_of_n(&events)?.iter().enumerate() {
        println!("exactly {k} succeed: {:.3}", bin.ultimate_arrival());
    }

    let net =
        Network::parse("node a b c d\nedge a b delay(1)\nedge b c delay(1)\nedge c d delay(1)")?;
    let best = optimal_connections(&net.matrix)?;
    for t in 0..=3 {
        let hist = reached_by(&best, Delay::new(t)?)?;
        let row: Vec<String> = hist.iter().map(|p| format!("{p:.2}")).collect();
        println!("t={t}  P(k nodes reached) for k=0..4: {}", row.join(" "));
    }
    Ok(())
}
