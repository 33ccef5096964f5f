pub mod cli;
pub mod error;
pub mod histogram;
pub mod latency;
pub mod matrix;
pub mod numeric;
pub mod series;
pub mod sim;
