//! Square matrices over arbitrary elements, semiring products and the
//! reachability closure of network connectivity matrices.
//!
//! A network matrix holds a [`LatencyDistribution`] per ordered node pair:
//! row `i` is the outbound links of node `i`, the diagonal is `no_delay` and
//! missing links are `all_lost`. Multiplying with `first_to_finish` as
//! addition and `after` as multiplication extends paths by one hop, so
//! iterating `R(n) = R(n-1) * A` converges to the best path distribution
//! between every pair of nodes.

use std::ops::{Add, Index};

use crate::error::{Error, Result};
use crate::latency::{LatencyDistribution, TimeToCompletion};
use crate::numeric::{Metric, Null, Unit};

/// Dense row-major `dim × dim` matrix, `dim >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SMatrix<T> {
    dim: usize,
    cells: Vec<T>,
}

pub type NetworkMatrix = SMatrix<LatencyDistribution>;

impl<T> SMatrix<T> {
    pub fn build(dim: usize, mut gen: impl FnMut(usize, usize) -> T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let cells = (0..dim * dim).map(|k| gen(k / dim, k % dim)).collect();
        Ok(SMatrix { dim, cells })
    }

    pub fn try_build(dim: usize, mut gen: impl FnMut(usize, usize) -> Result<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let cells = (0..dim * dim)
            .map(|k| gen(k / dim, k % dim))
            .collect::<Result<_>>()?;
        Ok(SMatrix { dim, cells })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::LengthMismatch {
                left: dim,
                right: bad.len(),
            });
        }
        Ok(SMatrix {
            dim,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Result<&T> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::IndexOutOfBounds {
                row,
                col,
                dim: self.dim,
            });
        }
        Ok(&self.cells[row * self.dim + col])
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SMatrix<U> {
        SMatrix {
            dim: self.dim,
            cells: self.cells.iter().map(f).collect(),
        }
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<SMatrix<U>> {
        Ok(SMatrix {
            dim: self.dim,
            cells: self.cells.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.cells.iter()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.cells[i * self.dim..(i + 1) * self.dim]
    }

    fn same_dim<U>(&self, other: &SMatrix<U>) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

impl<T: Clone> SMatrix<T> {
    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].clone()).collect())
            .collect()
    }
}

impl<T: Unit + Null> SMatrix<T> {
    pub fn identity(dim: usize) -> Result<Self> {
        Self::build(dim, |i, j| if i == j { T::unit() } else { T::null() })
    }
}

impl<T: Null> SMatrix<T> {
    pub fn null_matrix(dim: usize) -> Result<Self> {
        Self::build(dim, |_, _| T::null())
    }
}

impl<T> Index<(usize, usize)> for SMatrix<T> {
    type Output = T;

    fn index(&self, (row, col): (usize, usize)) -> &T {
        assert!(
            row < self.dim && col < self.dim,
            "index ({row}, {col}) out of bounds"
        );
        &self.cells[row * self.dim + col]
    }
}

/// Matrix product over caller-supplied addition and multiplication.
///
/// Each cell folds `add` from the right over `mul(a[i][k], b[k][j])`, so `add`
/// needs no neutral element.
pub fn mat_mul_with<T>(
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    a: &SMatrix<T>,
    b: &SMatrix<T>,
) -> Result<SMatrix<T>> {
    a.same_dim(b)?;
    let n = a.dim;
    SMatrix::build(n, |i, j| {
        let mut acc = mul(&a[(i, n - 1)], &b[(n - 1, j)]);
        for k in (0..n - 1).rev() {
            acc = add(&mul(&a[(i, k)], &b[(k, j)]), &acc);
        }
        acc
    })
}

/// Product with `first_to_finish` as addition and `after` as multiplication.
pub fn ttc_mat_mul<T: TimeToCompletion>(a: &SMatrix<T>, b: &SMatrix<T>) -> Result<SMatrix<T>> {
    mat_mul_with(T::first_to_finish, T::after, a, b)
}

/// [`ttc_mat_mul`] on network matrices.
pub fn dq_mat_mul(a: &NetworkMatrix, b: &NetworkMatrix) -> Result<NetworkMatrix> {
    ttc_mat_mul(a, b)
}

pub fn mat_add<T: Clone + Add<Output = T>>(a: &SMatrix<T>, b: &SMatrix<T>) -> Result<SMatrix<T>> {
    a.same_dim(b)?;
    Ok(SMatrix {
        dim: a.dim,
        cells: a
            .cells
            .iter()
            .zip(&b.cells)
            .map(|(x, y)| x.clone() + y.clone())
            .collect(),
    })
}

/// Frobenius distance parametrized by the element metric.
pub fn frobenius_distance<T: Metric>(a: &SMatrix<T>, b: &SMatrix<T>) -> Result<f64> {
    a.same_dim(b)?;
    Ok(a.cells
        .iter()
        .zip(&b.cells)
        .map(|(x, y)| x.distance(y).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// Frobenius distance; matrices of different dimension are infinitely far
/// apart.
impl<T: Metric> Metric for SMatrix<T> {
    fn distance(&self, other: &Self) -> f64 {
        frobenius_distance(self, other).unwrap_or(f64::INFINITY)
    }

    fn similarity_threshold() -> f64 {
        T::similarity_threshold()
    }
}

/// Iterates `step` from `start` until two consecutive values are similar and
/// returns the first of the pair. Fails once `max_steps` comparisons have
/// not produced a fixed point.
pub fn converges<R: Metric>(max_steps: usize, step: impl FnMut(&R) -> R, start: R) -> Result<R> {
    converges_counted(max_steps, step, start).map(|(r, _)| r)
}

/// [`converges`], also returning how many steps were evaluated.
pub fn converges_counted<R: Metric>(
    max_steps: usize,
    mut step: impl FnMut(&R) -> R,
    start: R,
) -> Result<(R, usize)> {
    let mut current = start;
    for taken in 1..=max_steps {
        let next = step(&current);
        if current.similar(&next) {
            return Ok((current, taken));
        }
        current = next;
    }
    Err(Error::DidNotConverge { steps: max_steps })
}

/// Best-path distribution between every pair of nodes: the limit of
/// `R(n) = R(n-1) * A` starting from `A`, within `dim(A)` steps.
pub fn optimal_connections(a: &NetworkMatrix) -> Result<NetworkMatrix> {
    optimal_connections_counted(a).map(|(m, _)| m)
}

pub fn optimal_connections_counted(a: &NetworkMatrix) -> Result<(NetworkMatrix, usize)> {
    converges_counted(
        a.dim(),
        |r: &NetworkMatrix| dq_mat_mul(r, a).expect("dimensions are preserved"),
        a.clone(),
    )
}

/// Every node reaches every other node with non-zero probability.
pub fn is_strongly_connected(a: &NetworkMatrix) -> Result<bool> {
    Ok(optimal_connections(a)?
        .iter()
        .all(|ld| ld.ultimate_arrival() > 0.0))
}
