//! Expression language over latency distributions.
//!
//! ```text
//! expr   := seq (("\/" | "/\") expr)?
//! seq    := atom (";" seq)?
//! atom   := delay(n) | preserved(p) | pdf[p, ...]
//!         | failover(t, expr, expr) | retransmit(t, expr, expr)
//!         | "(" expr ")"
//! ```
//!
//! `;` (sequential composition) binds tighter than `\/` (first to finish)
//! and `/\` (last to finish); all three associate to the right.

use std::fmt;

use rand::Rng;

use super::lex::{tokenize, Cursor, Tok};
use super::CliError;
use crate::error::Result;
use crate::latency::{Earliest, LatencyDistribution, Latest, TimeToCompletion};
use crate::numeric::{Delay, Probability};
use crate::series::Series;
use crate::sim::{sample_ld, simulate_op, Op, SampleOutcome};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Delay(Delay),
    Preserved(Probability),
    Pdf(Vec<f64>),
    After(Box<Expr>, Box<Expr>),
    FirstToFinish(Box<Expr>, Box<Expr>),
    LastToFinish(Box<Expr>, Box<Expr>),
    Failover(Delay, Box<Expr>, Box<Expr>),
    Retransmit(Delay, Box<Expr>, Box<Expr>),
}

/// A domain an expression can be evaluated in.
pub trait Interpretation: TimeToCompletion {
    fn lift(ld: &LatencyDistribution) -> Result<Self>;
}

impl Interpretation for LatencyDistribution {
    fn lift(ld: &LatencyDistribution) -> Result<Self> {
        Ok(ld.clone())
    }
}

impl Interpretation for Earliest {
    fn lift(ld: &LatencyDistribution) -> Result<Self> {
        ld.earliest()
    }
}

impl Interpretation for Latest {
    fn lift(ld: &LatencyDistribution) -> Result<Self> {
        ld.latest()
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, CliError> {
        let tokens = tokenize(text, 1)?;
        let mut cur = Cursor::new(&tokens, 1, text.chars().count() + 1);
        if cur.at_end() {
            return Err(cur.error("empty expression"));
        }
        let expr = parse_expr(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    /// The distribution of a leaf, `None` for operators.
    pub fn atom(&self) -> Option<Result<LatencyDistribution>> {
        match self {
            Expr::Delay(d) => Some(Ok(LatencyDistribution::delay_of(*d))),
            Expr::Preserved(p) => Some(Ok(LatencyDistribution::preserved(*p))),
            Expr::Pdf(v) => Some(LatencyDistribution::from_pdf(&Series::from(v.as_slice()))),
            _ => None,
        }
    }

    pub fn eval<T: Interpretation>(&self) -> Result<T> {
        if let Some(ld) = self.atom() {
            return T::lift(&ld?);
        }
        Ok(match self {
            Expr::After(a, b) => a.eval::<T>()?.after(&b.eval()?),
            Expr::FirstToFinish(a, b) => a.eval::<T>()?.first_to_finish(&b.eval()?),
            Expr::LastToFinish(a, b) => a.eval::<T>()?.last_to_finish(&b.eval()?),
            Expr::Failover(t, a, b) => T::failover(*t, &a.eval()?, &b.eval()?),
            Expr::Retransmit(t, a, b) => T::retransmit(*t, &a.eval()?, &b.eval()?),
            _ => unreachable!("leaves are handled above"),
        })
    }

    /// One Monte-Carlo trial, every leaf sampled independently.
    pub fn sample(&self, rng: &mut impl Rng) -> Result<SampleOutcome> {
        if let Some(ld) = self.atom() {
            return Ok(sample_ld(&ld?, rng));
        }
        let (op, a, b) = match self {
            Expr::After(a, b) => (Op::After, a, b),
            Expr::FirstToFinish(a, b) => (Op::FirstToFinish, a, b),
            Expr::LastToFinish(a, b) => (Op::LastToFinish, a, b),
            Expr::Failover(t, a, b) => (Op::Failover(*t), a, b),
            Expr::Retransmit(t, a, b) => (Op::Retransmit(*t), a, b),
            _ => unreachable!("leaves are handled above"),
        };
        let x = a.sample(rng)?;
        let y = b.sample(rng)?;
        Ok(simulate_op(op, x, y))
    }
}

fn parse_expr(cur: &mut Cursor<'_>) -> Result<Expr, CliError> {
    let left = parse_seq(cur)?;
    let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match cur.peek() {
        Some(Tok::Or) => Expr::FirstToFinish,
        Some(Tok::And) => Expr::LastToFinish,
        _ => return Ok(left),
    };
    cur.next();
    let right = parse_expr(cur)?;
    Ok(ctor(Box::new(left), Box::new(right)))
}

fn parse_seq(cur: &mut Cursor<'_>) -> Result<Expr, CliError> {
    let left = parse_atom(cur)?;
    if cur.peek() == Some(&Tok::Semi) {
        cur.next();
        let right = parse_seq(cur)?;
        return Ok(Expr::After(Box::new(left), Box::new(right)));
    }
    Ok(left)
}

fn parse_delay(cur: &mut Cursor<'_>) -> Result<Delay, CliError> {
    let (line, column) = cur.here();
    let n = cur.integer("a non-negative integer delay")?;
    Delay::new(n).map_err(|e| CliError::syntax(line, column, e.to_string()))
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<Expr, CliError> {
    if cur.peek() == Some(&Tok::LParen) {
        cur.next();
        let inner = parse_expr(cur)?;
        cur.expect(Tok::RParen, "`)`")?;
        return Ok(inner);
    }
    let (name, line, column) = cur.word("an expression")?;
    match name {
        "delay" => {
            cur.expect(Tok::LParen, "`(`")?;
            let d = parse_delay(cur)?;
            cur.expect(Tok::RParen, "`)`")?;
            Ok(Expr::Delay(d))
        }
        "preserved" => {
            cur.expect(Tok::LParen, "`(`")?;
            let (pl, pc) = cur.here();
            let p = cur.number("a probability")?;
            let p = Probability::new(p).map_err(|_| CliError::InvalidProbability {
                line: Some(pl),
                column: Some(pc),
                value: p,
            })?;
            cur.expect(Tok::RParen, "`)`")?;
            Ok(Expr::Preserved(p))
        }
        "pdf" => {
            let (pl, pc) = cur.here();
            let values = cur.number_list()?;
            if let Some(&bad) = values.iter().find(|&&x| !(0.0..=1.0).contains(&x)) {
                return Err(CliError::InvalidProbability {
                    line: Some(pl),
                    column: Some(pc),
                    value: bad,
                });
            }
            Ok(Expr::Pdf(values))
        }
        "failover" | "retransmit" => {
            cur.expect(Tok::LParen, "`(`")?;
            let t = parse_delay(cur)?;
            cur.expect(Tok::Comma, "`,`")?;
            let a = parse_expr(cur)?;
            cur.expect(Tok::Comma, "`,`")?;
            let b = parse_expr(cur)?;
            cur.expect(Tok::RParen, "`)`")?;
            let (a, b) = (Box::new(a), Box::new(b));
            Ok(if name == "failover" {
                Expr::Failover(t, a, b)
            } else {
                Expr::Retransmit(t, a, b)
            })
        }
        other => Err(CliError::syntax(
            line,
            column,
            format!("unknown term `{other}`"),
        )),
    }
}

/// Fully parenthesized rendering that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Delay(d) => write!(f, "delay({d})"),
            Expr::Preserved(p) => write!(f, "preserved({p})"),
            Expr::Pdf(v) => {
                let items: Vec<String> = v.iter().map(f64::to_string).collect();
                write!(f, "pdf[{}]", items.join(", "))
            }
            Expr::After(a, b) => write!(f, "({a} ; {b})"),
            Expr::FirstToFinish(a, b) => write!(f, "({a} \\/ {b})"),
            Expr::LastToFinish(a, b) => write!(f, "({a} /\\ {b})"),
            Expr::Failover(t, a, b) => write!(f, "failover({t}, {a}, {b})"),
            Expr::Retransmit(t, a, b) => write!(f, "retransmit({t}, {a}, {b})"),
        }
    }
}
