//! Finite power series: prefix sums, differences and convolutions.

use deltaq::series::{general_convolve, Series};

fn main() {
    let s = Series::from([1.0, 2.0, 3.0]);
    println!("series        {:?}", s.as_slice());
    println!("cumsum        {:?}", s.cumsum().as_slice());
    println!("diff_enc      {:?}", s.cumsum().diff_enc().as_slice());

    let coin = Series::from([0.5, 0.5]);
    println!("coin * coin   {:?}", coin.convolve(&coin).as_slice());

    // any pair of operations works as addition and multiplication
    let max_plus = general_convolve(
        |a: &i64, b| *a.max(b),
        |a, b| a + b,
        &Series::from([0, 1]),
        &Series::from([0, 1]),
    );
    println!("max-plus      {:?}", max_plus.as_slice());
}
