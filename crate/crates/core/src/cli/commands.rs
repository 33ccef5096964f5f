use rand::Rng;

use super::csv::{format_number as num, render, Section};
use super::expr::Expr;
use super::network::Network;
use super::{CliError, Options};
use crate::histogram::reached_by;
use crate::latency::{Earliest, LatencyDistribution, Latest, SometimeOrNever};
use crate::matrix::{optimal_connections, NetworkMatrix};
use crate::numeric::Delay;
use crate::sim::{empirical_distribution, rng_from_seed, simulate_broadcast, SampleOutcome};

fn horizon(opts: &Options, default: Delay) -> Result<usize, CliError> {
    match opts.horizon {
        None => Ok(default.index()),
        Some(t) => Delay::new(t)
            .map(Delay::index)
            .map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn max_deadline(m: &NetworkMatrix) -> Delay {
    m.iter()
        .map(LatencyDistribution::deadline)
        .max()
        .unwrap_or(Delay::START)
}

fn at_or_zero(ld: &LatencyDistribution, t: usize) -> f64 {
    ld.pdf().get(t).copied().unwrap_or(0.0)
}

/// `t,pdf,cdf` of an expression, plus `mc_pdf,mc_cdf` when simulating.
pub fn eval(text: &str, opts: &Options) -> Result<String, CliError> {
    let expr = Expr::parse(text)?;
    let ld: LatencyDistribution = expr.eval()?;
    let horizon = horizon(opts, ld.deadline())?;

    let mc = if opts.simulate {
        let mut rng = rng_from_seed(opts.seed);
        let samples = (0..opts.samples)
            .map(|_| expr.sample(&mut rng))
            .collect::<Result<Vec<_>, _>>()?;
        Some(empirical_distribution(
            &samples,
            Delay::from_index(horizon),
        )?)
    } else {
        None
    };

    let mut table = Section::new(&["t", "pdf", "cdf"]);
    if mc.is_some() {
        table
            .header
            .extend(["mc_pdf".to_string(), "mc_cdf".to_string()]);
    }
    for t in 0..=horizon {
        let mut row = vec![t.to_string(), num(at_or_zero(&ld, t)), num(ld.cdf_at(t))];
        if let Some(mc) = &mc {
            row.extend([num(at_or_zero(mc, t)), num(mc.cdf_at(t))]);
        }
        table.push(row);
    }
    Ok(render(&[table]))
}

/// Reach times of `samples` broadcast trials from `source`, as tick indices.
fn broadcast_trials(
    m: &NetworkMatrix,
    source: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<Option<usize>>> {
    (0..samples)
        .map(|_| {
            simulate_broadcast(m, source, rng)
                .into_iter()
                .map(|o| match o {
                    SampleOutcome::Arrived(t) => Some(t.index()),
                    SampleOutcome::Lost => None,
                })
                .collect()
        })
        .collect()
}

fn fraction(trials: &[Vec<Option<usize>>], hit: impl Fn(&[Option<usize>]) -> bool) -> f64 {
    trials.iter().filter(|reach| hit(reach)).count() as f64 / trials.len() as f64
}

fn by(reach: Option<usize>, t: usize) -> bool {
    reach.is_some_and(|r| r <= t)
}

/// Best-path arrival CDFs `src,dst,t,cdf` between every pair of nodes.
///
/// With `summary`, adds the per-source curve of every node having been
/// reached and the strong-connectivity verdict.
pub fn reachability(text: &str, opts: &Options) -> Result<String, CliError> {
    let net = Network::parse(text)?;
    let best = optimal_connections(&net.matrix)?;
    let horizon = horizon(opts, max_deadline(&best))?;
    let n = best.dim();

    let trials: Option<Vec<_>> = opts.simulate.then(|| {
        let mut rng = rng_from_seed(opts.seed);
        (0..n)
            .map(|s| broadcast_trials(&net.matrix, s, opts.samples, &mut rng))
            .collect()
    });

    let mut pairs = Section::new(&["src", "dst", "t", "cdf"]);
    if trials.is_some() {
        pairs.header.push("mc_cdf".into());
    }
    for i in 0..n {
        for j in 0..n {
            for t in 0..=horizon {
                let mut row = vec![
                    net.nodes[i].clone(),
                    net.nodes[j].clone(),
                    t.to_string(),
                    num(best[(i, j)].cdf_at(t)),
                ];
                if let Some(trials) = &trials {
                    row.push(num(fraction(&trials[i], |reach| by(reach[j], t))));
                }
                pairs.push(row);
            }
        }
    }
    if !opts.summary {
        return Ok(render(&[pairs]));
    }

    let mut all = Section::new(&["src", "t", "all_reached"]);
    if trials.is_some() {
        all.header.push("mc_all_reached".into());
    }
    for i in 0..n {
        let row = best.row(i);
        let everyone = row[1..]
            .iter()
            .fold(row[0].clone(), |acc, ld| acc.last_to_finish(ld));
        for t in 0..=horizon {
            let mut line = vec![net.nodes[i].clone(), t.to_string(), num(everyone.cdf_at(t))];
            if let Some(trials) = &trials {
                line.push(num(fraction(&trials[i], |reach| {
                    reach.iter().all(|&r| by(r, t))
                })));
            }
            all.push(line);
        }
    }

    let connected = best.iter().all(|ld| ld.ultimate_arrival() > 0.0);
    let mut verdict = Section::new(&["verdict"]);
    verdict.push(vec![if connected {
        "strongly connected"
    } else {
        "not strongly connected"
    }
    .into()]);
    Ok(render(&[pairs, all, verdict]))
}

/// Average histogram of nodes reached, `k,t,value` with `value` the
/// probability that exactly `k` nodes have been reached by `t` from a
/// uniformly chosen source.
///
/// The Monte-Carlo column estimates the same quantity from sampled
/// broadcasts.
pub fn histogram(text: &str, opts: &Options) -> Result<String, CliError> {
    let net = Network::parse(text)?;
    let best = optimal_connections(&net.matrix)?;
    let horizon = horizon(opts, max_deadline(&best))?;
    let n = best.dim();
    let snapshots = (0..=horizon)
        .map(|t| reached_by(&best, Delay::from_index(t)))
        .collect::<Result<Vec<_>, _>>()?;

    let trials: Option<Vec<_>> = opts.simulate.then(|| {
        let mut rng = rng_from_seed(opts.seed);
        (0..n)
            .map(|s| broadcast_trials(&net.matrix, s, opts.samples, &mut rng))
            .collect()
    });

    let mut table = Section::new(&["k", "t", "value"]);
    if trials.is_some() {
        table.header.push("mc_value".into());
    }
    for k in 0..=n {
        for (t, snapshot) in snapshots.iter().enumerate() {
            let mut row = vec![k.to_string(), t.to_string(), num(snapshot[k])];
            if let Some(trials) = &trials {
                let mean = trials
                    .iter()
                    .map(|per_source| {
                        fraction(per_source, |reach| {
                            reach.iter().filter(|&&r| by(r, t)).count() == k
                        })
                    })
                    .sum::<f64>()
                    / n as f64;
                row.push(num(mean));
            }
            table.push(row);
        }
    }
    Ok(render(&[table]))
}

fn show(b: SometimeOrNever) -> String {
    b.delay()
        .map_or_else(|| "never".to_string(), |d| d.to_string())
}

/// Earliest and latest arrival computed twice: from the evaluated
/// distribution and by evaluating the expression on bounds alone.
pub fn bounds(text: &str, _opts: &Options) -> Result<String, CliError> {
    let expr = Expr::parse(text)?;
    let ld: LatencyDistribution = expr.eval()?;
    let (Earliest(de), Latest(dl)) = (ld.earliest()?, ld.latest()?);
    let (Earliest(be), Latest(bl)) = (expr.eval::<Earliest>()?, expr.eval::<Latest>()?);
    if (de, dl) != (be, bl) {
        return Err(CliError::BoundsDisagree(format!(
            "distribution gives ({}, {}), bounds give ({}, {})",
            show(de),
            show(dl),
            show(be),
            show(bl)
        )));
    }
    let mut table = Section::new(&["route", "earliest", "latest"]);
    table.push(vec!["distribution".into(), show(de), show(dl)]);
    table.push(vec!["bounds".into(), show(be), show(bl)]);
    Ok(render(&[table]))
}
