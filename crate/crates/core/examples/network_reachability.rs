//! Best-path arrival between all pairs of nodes of a small network.

use deltaq::cli::Network;
use deltaq::matrix::{is_strongly_connected, optimal_connections_counted};

const NETWORK: &str = "
node relay edge1 edge2 edge3
edge relay edge1 delay(1)
edge relay edge2 delay(2)
edge edge2 edge3 delay(1)
edge edge1 edge3 delay(4)
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::parse(NETWORK)?;
    let (best, steps) = optimal_connections_counted(&net.matrix)?;
    println!("settled after {steps} steps");
    for (i, from) in net.nodes.iter().enumerate() {
        for (j, to) in net.nodes.iter().enumerate() {
            println!("{from:>6} -> {to:<6} earliest {}", best[(i, j)].earliest()?);
        }
    }
    println!(
        "strongly connected: {}",
        is_strongly_connected(&net.matrix)?
    );

    // lossy links are counted once per path through them, so the iteration
    // keeps moving and gives up after dim(A) steps
    let lossy = Network::parse("node a b\nedge a b preserved(0.5)")?;
    println!(
        "lossy pair: {}",
        optimal_connections_counted(&lossy.matrix).unwrap_err()
    );
    Ok(())
}
