//! Finite power series over discrete delays.
//!
//! A series `[f0, f1, .., fn]` stands for the generating function
//! `f0 + f1*t + .. + fn*t^n`; index `i` is the coefficient at delay `i`.
//! Series are finite and all operations are eager.

use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};
use crate::numeric::{check_probability, Delay, Metric, Null, Unit};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Series<T>(Vec<T>);

impl<T> Series<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        Series(coefficients)
    }

    pub fn empty() -> Self {
        Series(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn get(&self, index: usize) -> Option<&T> {
        self.0.get(index)
    }

    pub fn last(&self) -> Option<&T> {
        self.0.last()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Series<U> {
        Series(self.0.iter().map(f).collect())
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Series<U>> {
        self.0.iter().map(f).collect::<Result<Vec<_>>>().map(Series)
    }
}

impl<T: Clone> Series<T> {
    /// The first `d` coefficients (all of them when the series is shorter).
    pub fn cut(&self, d: Delay) -> Self {
        Series(self.0.iter().take(d.index()).cloned().collect())
    }

    /// Concatenation.
    pub fn append(&self, other: &Series<T>) -> Self {
        Series(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    /// Right-pads to `len` with `pad`; longer series are returned unchanged.
    pub fn padded(&self, len: usize, pad: T) -> Self {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, pad);
        }
        Series(v)
    }
}

impl<T: Copy + Add<Output = T>> Series<T> {
    /// Running sum: `out[i] = s[0] + .. + s[i]`.
    pub fn cumsum(&self) -> Self {
        Series(
            self.0
                .iter()
                .scan(None, |acc: &mut Option<T>, &x| {
                    let next = match *acc {
                        Some(a) => a + x,
                        None => x,
                    };
                    *acc = Some(next);
                    Some(next)
                })
                .collect(),
        )
    }
}

impl<T: Copy + Sub<Output = T>> Series<T> {
    /// Backward differences with the first coefficient copied; inverse of
    /// [`Series::cumsum`].
    pub fn diff_enc(&self) -> Self {
        let s = &self.0;
        Series(
            s.first()
                .copied()
                .into_iter()
                .chain(s.windows(2).map(|w| w[1] - w[0]))
                .collect(),
        )
    }
}

impl<T: Copy + Mul<Output = T>> Series<T> {
    pub fn scale(&self, c: T) -> Self {
        Series(self.0.iter().map(|&x| c * x).collect())
    }

    /// Pointwise product, truncated to the shorter operand.
    pub fn elementwise_mul(&self, other: &Series<T>) -> Self {
        Series(self.0.iter().zip(&other.0).map(|(&a, &b)| a * b).collect())
    }
}

impl<T: Copy + Add<Output = T> + Mul<Output = T>> Series<T> {
    /// Discrete convolution (product of generating functions).
    pub fn convolve(&self, other: &Series<T>) -> Self {
        general_convolve(|a, b| *a + *b, |a, b| *a * *b, self, other)
    }
}

/// Convolution with caller-supplied addition and multiplication.
///
/// Output coefficient `k` is `f[i0]*g[k-i0] + (f[i0+1]*g[k-i0-1] + (..))`,
/// nested to the right over every valid split of `k`. Neither operator needs a
/// neutral element. An empty operand yields an empty series.
pub fn general_convolve<T>(
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    f: &Series<T>,
    g: &Series<T>,
) -> Series<T> {
    try_general_convolve(|a, b| Ok(add(a, b)), |a, b| Ok(mul(a, b)), f, g)
        .expect("infallible operators")
}

/// [`general_convolve`] with fallible operators.
pub fn try_general_convolve<T>(
    add: impl Fn(&T, &T) -> Result<T>,
    mul: impl Fn(&T, &T) -> Result<T>,
    f: &Series<T>,
    g: &Series<T>,
) -> Result<Series<T>> {
    let (m, n) = (f.len(), g.len());
    if m == 0 || n == 0 {
        return Ok(Series::empty());
    }
    let mut out = Vec::with_capacity(m + n - 1);
    for k in 0..m + n - 1 {
        let lo = k.saturating_sub(n - 1);
        let hi = k.min(m - 1);
        let mut acc = mul(&f.0[hi], &g.0[k - hi])?;
        for i in (lo..hi).rev() {
            acc = add(&mul(&f.0[i], &g.0[k - i])?, &acc)?;
        }
        out.push(acc);
    }
    Ok(Series(out))
}

/// Pointwise combination where the missing tail of the shorter operand is
/// taken to be the neutral element of `f`, so the longer tail is copied.
pub fn zip_with_expanding<T: Clone>(f: impl Fn(&T, &T) -> T, a: &[T], b: &[T]) -> Vec<T> {
    try_zip_with_expanding(|x, y| Ok(f(x, y)), a, b).expect("infallible operator")
}

pub fn try_zip_with_expanding<T: Clone>(
    f: impl Fn(&T, &T) -> Result<T>,
    a: &[T],
    b: &[T],
) -> Result<Vec<T>> {
    let common = a.len().min(b.len());
    let mut out = a
        .iter()
        .zip(b)
        .map(|(x, y)| f(x, y))
        .collect::<Result<Vec<_>>>()?;
    out.extend_from_slice(&a[common..]);
    out.extend_from_slice(&b[common..]);
    Ok(out)
}

impl<T: Clone + Add<Output = T>> Add for &Series<T> {
    type Output = Series<T>;

    fn add(self, rhs: &Series<T>) -> Series<T> {
        Series(zip_with_expanding(
            |a: &T, b: &T| a.clone() + b.clone(),
            &self.0,
            &rhs.0,
        ))
    }
}

impl<T: Clone + Add<Output = T>> Add for Series<T> {
    type Output = Series<T>;

    fn add(self, rhs: Series<T>) -> Series<T> {
        &self + &rhs
    }
}

/// Pads the shorter series with `pad` until both have equal length.
pub fn extend_to_same_length<T: Clone>(
    pad: T,
    f: &Series<T>,
    g: &Series<T>,
) -> (Series<T>, Series<T>) {
    let len = f.len().max(g.len());
    (f.padded(len, pad.clone()), g.padded(len, pad))
}

/// Pads the shorter series by repeating its own last element.
pub fn extend_to_same_length_last<T: Clone>(
    f: &Series<T>,
    g: &Series<T>,
) -> Result<(Series<T>, Series<T>)> {
    let (Some(f_last), Some(g_last)) = (f.last(), g.last()) else {
        return Err(Error::Empty("extendToSameLength'"));
    };
    let len = f.len().max(g.len());
    Ok((f.padded(len, f_last.clone()), g.padded(len, g_last.clone())))
}

impl<T: Clone + PartialEq + Null> Series<T> {
    /// Drops trailing null coefficients.
    pub fn trimmed(&self) -> Self {
        let zero = T::null();
        let keep = self.0.iter().rposition(|x| *x != zero).map_or(0, |i| i + 1);
        Series(self.0[..keep].to_vec())
    }

    /// Equality modulo trailing null coefficients.
    pub fn eq_trimmed(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Series<f64> {
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Elementwise `1 - x`; every coefficient must be a probability.
    pub fn complement(&self) -> Result<Self> {
        self.try_map(|&x| check_probability(x).map(|p| 1.0 - p))
    }
}

impl<T: Unit> Unit for Series<T> {
    fn unit() -> Self {
        Series(vec![T::unit()])
    }
}

impl<T: Null> Null for Series<T> {
    fn null() -> Self {
        Series(vec![T::null()])
    }
}

/// Euclidean norm of the zero-expanded difference.
impl Metric for Series<f64> {
    fn distance(&self, other: &Self) -> f64 {
        squared_difference(&self.0, &other.0).sqrt()
    }

    fn similarity_threshold() -> f64 {
        0.001
    }
}

/// Sum of squared pointwise differences, missing coefficients read as zero.
pub(crate) fn squared_difference(a: &[f64], b: &[f64]) -> f64 {
    let at = |s: &[f64], i: usize| s.get(i).copied().unwrap_or(0.0);
    (0..a.len().max(b.len()))
        .map(|i| at(a, i) - at(b, i))
        .map(|d| d * d)
        .sum()
}

impl<T> From<Vec<T>> for Series<T> {
    fn from(v: Vec<T>) -> Self {
        Series(v)
    }
}

impl<T: Clone> From<&[T]> for Series<T> {
    fn from(v: &[T]) -> Self {
        Series(v.to_vec())
    }
}

impl<T, const N: usize> From<[T; N]> for Series<T> {
    fn from(v: [T; N]) -> Self {
        Series(v.into())
    }
}

impl<T> FromIterator<T> for Series<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Series(iter.into_iter().collect())
    }
}

impl<T> IntoIterator for Series<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a, T> IntoIterator for &'a Series<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<T> Index<usize> for Series<T> {
    type Output = T;

    fn index(&self, index: usize) -> &T {
        &self.0[index]
    }
}
