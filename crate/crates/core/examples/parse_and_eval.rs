//! Parses an expression and evaluates it as a distribution and as bounds.

use deltaq::cli::Expr;
use deltaq::latency::{Earliest, LatencyDistribution, Latest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        r"retransmit(2, pdf[0, 0.7], pdf[0, 0.7]) ; delay(1) \/ delay(5)".to_string()
    });
    let expr = Expr::parse(&text)?;
    println!("parsed   {expr}");

    let ld: LatencyDistribution = expr.eval()?;
    println!("pdf      {:?}", ld.pdf().as_slice());
    println!("cdf      {:?}", ld.cdf().as_slice());
    println!("earliest {}", expr.eval::<Earliest>()?);
    println!("latest   {}", expr.eval::<Latest>()?);
    Ok(())
}
