use crate::error::{Error, Result};
use crate::scalar::Real;

/// Strictly increasing sample locations in (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D<T> {
    points: Vec<T>,
    spacing: Option<T>,
}

impl<T: Real> Grid1D<T> {
    /// `count` equispaced points from `a` to `b` inclusive.
    pub fn uniform(a: T, b: T, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {count}")));
        }
        if !(a < b) {
            return Err(Error::InvalidInterval { a: to_f64(a), b: to_f64(b) });
        }
        let h = (b - a) / T::from_usize_lossy(count - 1);
        let mut points: Vec<T> = (0..count).map(|i| a + h * T::from_usize_lossy(i)).collect();
        points[count - 1] = b;
        Self::check_points(&points)?;
        Ok(Self { points, spacing: Some(h) })
    }

    /// Arbitrary strictly increasing points; uniformity is detected.
    pub fn from_points(points: Vec<T>) -> Result<Self> {
        Self::from_points_with_tol(points, uniform_tolerance::<T>())
    }

    /// As [`Grid1D::from_points`], flagging the grid uniform when every step
    /// is within `rel_tol` (relative to the mean step) of the mean step.
    pub fn from_points_with_tol(points: Vec<T>, rel_tol: T) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        Self::check_points(&points)?;
        let n = points.len();
        let h = (points[n - 1] - points[0]) / T::from_usize_lossy(n - 1);
        let tol = h * rel_tol;
        let uniform = points.windows(2).all(|w| (w[1] - w[0] - h).abs() <= tol);
        Ok(Self { points, spacing: uniform.then_some(h) })
    }

    fn check_points(points: &[T]) -> Result<()> {
        for (i, &p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if !(p > T::zero() && p <= T::one()) {
                return Err(Error::InvalidGrid(format!("point {p} at index {i} outside (0, 1]")));
            }
        }
        if let Some(i) = points.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(format!("points not strictly increasing at index {}", i + 1)));
        }
        Ok(())
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.spacing.is_some()
    }

    /// Grid step, defined iff the grid is uniform.
    pub fn spacing(&self) -> Option<T> {
        self.spacing
    }

    pub fn first(&self) -> T {
        self.points[0]
    }

    pub fn last(&self) -> T {
        self.points[self.points.len() - 1]
    }

    /// Index of the last point `<= x`, or `None` if `x` precedes the grid.
    pub fn floor_index(&self, x: T) -> Option<usize> {
        let k = self.points.partition_point(|&p| p <= x);
        k.checked_sub(1)
    }

    /// Sub-grid of `range` (at least two points).
    pub fn slice(&self, range: std::ops::Range<usize>) -> Result<Self> {
        let pts = self.points[range].to_vec();
        if pts.len() < 2 {
            return Err(Error::InvalidGrid("sub-grid needs at least 2 points".into()));
        }
        Ok(Self { points: pts, spacing: self.spacing })
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Relative tolerance on step deviations for uniformity detection.
fn uniform_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(64.0))
}

/// Samples of a real function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFn<T> {
    grid: Grid1D<T>,
    values: Vec<T>,
    label: String,
}

impl<T: Real> SampledFn<T> {
    pub fn new(grid: Grid1D<T>, values: Vec<T>, label: impl Into<String>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, values, label: label.into() })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid1D<T>, f: impl Fn(T) -> T, label: impl Into<String>) -> Result<Self> {
        let values = grid.points().iter().map(|&t| f(t)).collect();
        Self::new(grid, values, label)
    }

    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Pointwise transform `(t, v) -> v'` on the same grid.
    pub fn map(&self, f: impl Fn(T, T) -> T) -> Result<Self> {
        let values = self
            .grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(&t, &v)| f(t, v))
            .collect();
        Self::new(self.grid.clone(), values, self.label.clone())
    }

    /// Restriction to the index range.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Result<Self> {
        let grid = self.grid.slice(range.clone())?;
        Self::new(grid, self.values[range].to_vec(), self.label.clone())
    }

    /// Largest absolute sample.
    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.grid.points().iter().copied().zip(self.values.iter().copied())
    }
}
