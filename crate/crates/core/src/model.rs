//! Problem-level types shared by the 1-D sorting engine and the d-dimensional
//! TSP engine: points, the write-once placement array, the run configuration,
//! input distributions, and the cost/optimum definitions.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Tolerance used when validating a quantile function on a sampled grid.
const QUANTILE_TOL: f64 = 1e-9;
const QUANTILE_GRID: usize = 1024;

/// A flat, row-major collection of `d`-dimensional points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidConfig(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        Ok(Self { dim, coords })
    }

    /// One-dimensional points from plain values.
    pub fn from_values(values: &[f64]) -> Self {
        Self {
            dim: 1,
            coords: values.to_vec(),
        }
    }

    pub fn from_points(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::PointOutOfDomain { index: i });
            }
            coords.extend_from_slice(p);
        }
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Checks that every coordinate lies in `[0, 1]`.
    pub fn validate_unit_cube(&self) -> Result<()> {
        match self.iter().position(|p| !in_unit_cube(p)) {
            Some(index) => Err(Error::PointOutOfDomain { index }),
            None => Ok(()),
        }
    }

    /// The subset of points at the given indices, in that order.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet {
            dim: self.dim,
            coords,
        }
    }
}

pub fn in_unit_cube(p: &[f64]) -> bool {
    p.iter().all(|c| (0.0..=1.0).contains(c))
}

/// Euclidean distance; absolute difference when `d = 1`.
#[inline]
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// The length-`n` array of optional points that the online algorithm fills.
///
/// Cells are write-once: [`PlacementArray::write`] refuses to touch an
/// occupied cell, so irrevocability is enforced by the type rather than by
/// convention.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementArray {
    dim: usize,
    coords: Vec<f64>,
    occupied: Vec<bool>,
    filled: usize,
}

impl PlacementArray {
    pub fn new(n: usize, dim: usize) -> Self {
        Self {
            dim,
            coords: vec![0.0; n * dim],
            occupied: vec![false; n],
            filled: 0,
        }
    }

    /// A completely filled array holding `points` in the given order.
    pub fn from_points(points: &PointSet) -> Self {
        Self {
            dim: points.dim(),
            coords: points.coords().to_vec(),
            occupied: vec![true; points.len()],
            filled: points.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn filled_count(&self) -> usize {
        self.filled
    }

    pub fn is_full(&self) -> bool {
        self.filled == self.len()
    }

    pub fn is_occupied(&self, cell: usize) -> bool {
        self.occupied[cell]
    }

    pub fn get(&self, cell: usize) -> Option<&[f64]> {
        self.occupied[cell].then(|| &self.coords[cell * self.dim..(cell + 1) * self.dim])
    }

    /// Writes `x` into an empty cell.
    pub fn write(&mut self, cell: usize, x: &[f64]) -> Result<()> {
        if self.occupied[cell] {
            return Err(Error::CellOccupied(cell));
        }
        debug_assert_eq!(x.len(), self.dim);
        self.coords[cell * self.dim..(cell + 1) * self.dim].copy_from_slice(x);
        self.occupied[cell] = true;
        self.filled += 1;
        Ok(())
    }

    /// Lowest-indexed empty cell at or after `from`.
    pub fn first_empty_from(&self, from: usize) -> Option<usize> {
        self.occupied[from..]
            .iter()
            .position(|&o| !o)
            .map(|i| i + from)
    }

    /// Returns the filled array as a point set, or the first empty cell.
    pub fn to_points(&self) -> Result<PointSet> {
        if let Some(c) = self.occupied.iter().position(|&o| !o) {
            return Err(Error::IncompleteArray(c));
        }
        PointSet::new(self.dim, self.coords.clone())
    }
}

/// A quantile function `Q: [0,1] -> [0,1]` for one coordinate.
#[derive(Clone)]
pub enum Quantile {
    /// Closed form, with a label used in reports.
    Func {
        label: String,
        q: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
    /// Monotone `(u, Q(u))` samples, linearly interpolated.
    Table(Vec<(f64, f64)>),
}

impl Quantile {
    pub fn func(label: impl Into<String>, q: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Quantile::Func {
            label: label.into(),
            q: Arc::new(q),
        }
    }

    /// `Q(u) = sqrt(u)`, i.e. the distribution with CDF `F(x) = x^2`.
    pub fn sqrt() -> Self {
        Self::func("sqrt", f64::sqrt)
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Quantile::Func { q, .. } => q(u),
            Quantile::Table(points) => interpolate(points, u),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Quantile::Func { label, .. } => label.clone(),
            Quantile::Table(points) => format!("table[{}]", points.len()),
        }
    }

    /// Reads a two-column `(u, Q(u))` text file. Columns may be separated by
    /// whitespace or commas; blank lines and `#` comments are ignored.
    pub fn from_table_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_table(&text)
    }

    pub fn parse_table(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if fields.len() != 2 {
                return Err(Error::Parse(format!(
                    "line {}: expected two columns",
                    lineno + 1
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad number {s:?}", lineno + 1)))
            };
            points.push((parse(fields[0])?, parse(fields[1])?));
        }
        if points.len() < 2 {
            return Err(Error::Parse(
                "quantile table needs at least two rows".into(),
            ));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Parse("u column must be strictly increasing".into()));
        }
        Ok(Quantile::Table(points))
    }
}

impl fmt::Debug for Quantile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantile({})", self.label())
    }
}

fn interpolate(points: &[(f64, f64)], u: f64) -> f64 {
    let i = points.partition_point(|&(pu, _)| pu < u);
    if i == 0 {
        return points[0].1;
    }
    if i == points.len() {
        return points[points.len() - 1].1;
    }
    let (u0, q0) = points[i - 1];
    let (u1, q1) = points[i];
    q0 + (q1 - q0) * (u - u0) / (u1 - u0)
}

/// Per-coordinate input distribution on `[0,1]`.
#[derive(Debug, Clone, Default)]
pub enum DistributionSpec {
    #[default]
    Uniform,
    InverseCdf(Quantile),
}

impl DistributionSpec {
    pub fn label(&self) -> String {
        match self {
            DistributionSpec::Uniform => "uniform".into(),
            DistributionSpec::InverseCdf(q) => format!("cdf:{}", q.label()),
        }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        match self {
            DistributionSpec::Uniform => u,
            DistributionSpec::InverseCdf(q) => q.eval(u),
        }
    }

    /// CDF `F(x)`, obtained by bisection on the quantile function.
    pub fn cdf(&self, x: f64) -> f64 {
        let q = match self {
            DistributionSpec::Uniform => return x.clamp(0.0, 1.0),
            DistributionSpec::InverseCdf(q) => q,
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if q.eval(mid) < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Checks `Q(0) = 0`, `Q(1) = 1` and monotonicity on a sampled grid.
    pub fn validate(&self) -> Result<()> {
        let q = match self {
            DistributionSpec::Uniform => return Ok(()),
            DistributionSpec::InverseCdf(q) => q,
        };
        if q.eval(0.0).abs() > QUANTILE_TOL || (q.eval(1.0) - 1.0).abs() > QUANTILE_TOL {
            return Err(Error::InvalidConfig(format!(
                "quantile {} must map 0 to 0 and 1 to 1",
                q.label()
            )));
        }
        let mut prev = q.eval(0.0);
        for i in 1..=QUANTILE_GRID {
            let cur = q.eval(i as f64 / QUANTILE_GRID as f64);
            if !cur.is_finite() || cur < prev - QUANTILE_TOL {
                return Err(Error::NonMonotoneQuantile { index: i });
            }
            prev = cur;
        }
        Ok(())
    }
}

/// Parameters of one run of the online algorithm.
#[derive(Debug, Clone)]
pub struct AlgorithmConfig {
    pub n: usize,
    pub d: usize,
    /// Exponent `p` in the `log^p n` bucket-capacity scale.
    pub log_exponent: f64,
    /// Multiplier of `log^p n` below which the remaining array becomes the backyard.
    pub backyard_constant: f64,
    pub seed: u64,
    pub distribution: DistributionSpec,
}

impl AlgorithmConfig {
    pub fn new(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            log_exponent: 2.0,
            backyard_constant: 100.0,
            seed: 0,
            distribution: DistributionSpec::Uniform,
        }
    }

    pub fn with_log_exponent(mut self, p: f64) -> Self {
        self.log_exponent = p;
        self
    }

    pub fn with_backyard_constant(mut self, c: f64) -> Self {
        self.backyard_constant = c;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_distribution(mut self, distribution: DistributionSpec) -> Self {
        self.distribution = distribution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1".into()));
        }
        if !(1.0..=3.0).contains(&self.log_exponent) {
            return Err(Error::InvalidConfig(format!(
                "log exponent {} outside [1, 3]",
                self.log_exponent
            )));
        }
        if !(self.backyard_constant.is_finite() && self.backyard_constant >= 0.0) {
            return Err(Error::InvalidConfig(
                "backyard constant must be a finite nonnegative number".into(),
            ));
        }
        if self.d > 1 && !matches!(self.distribution, DistributionSpec::Uniform) {
            return Err(Error::InvalidConfig(
                "the multidimensional mode supports only the uniform distribution".into(),
            ));
        }
        self.distribution.validate()?;
        compute_ell(self.n, self.log_exponent).map(|_| ())
    }

    /// `log2(n)^p`.
    pub fn log_scale(&self) -> f64 {
        log2_pow(self.n, self.log_exponent)
    }

    /// Remaining-cell count below which the rest of the array becomes the backyard.
    pub fn backyard_threshold(&self) -> f64 {
        self.backyard_constant * self.log_scale()
    }
}

/// `log2(n)^p`.
pub fn log2_pow(n: usize, p: f64) -> f64 {
    (n as f64).log2().powf(p)
}

/// The unique `ℓ ≥ 1` with `n / (4 log2^p n) < 2^ℓ ≤ n / (2 log2^p n)`.
pub fn compute_ell(n: usize, p: f64) -> Result<u32> {
    if n < 2 {
        return Err(Error::InstanceTooSmall { n, p });
    }
    let upper = n as f64 / (2.0 * log2_pow(n, p));
    if upper.is_nan() || upper < 2.0 {
        return Err(Error::InstanceTooSmall { n, p });
    }
    let mut ell = upper.log2().floor() as u32;
    while pow2(ell + 1) <= upper {
        ell += 1;
    }
    while ell > 1 && pow2(ell) > upper {
        ell -= 1;
    }
    debug_assert!(pow2(ell) > upper / 2.0);
    Ok(ell)
}

fn pow2(e: u32) -> f64 {
    2f64.powi(e as i32)
}

/// Sum of distances between consecutive cells.
pub fn tour_cost(array: &PlacementArray) -> Result<f64> {
    let mut cost = 0.0;
    let mut prev: Option<&[f64]> = None;
    for cell in 0..array.len() {
        let x = array.get(cell).ok_or(Error::IncompleteArray(cell))?;
        if let Some(p) = prev {
            cost += distance(p, x);
        }
        prev = Some(x);
    }
    Ok(cost)
}

/// Cost of visiting `points` in the given order.
pub fn path_cost(points: &PointSet) -> f64 {
    let mut it = points.iter();
    let Some(mut prev) = it.next() else {
        return 0.0;
    };
    let mut cost = 0.0;
    for x in it {
        cost += distance(prev, x);
        prev = x;
    }
    cost
}

/// The 1-D offline optimum: the sorted arrangement, whose cost is the span.
pub fn opt_sort_cost(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    Ok(hi - lo)
}

/// Equal-mass boundaries `b_j = Q(j / K)` for `j = 0..=K`.
pub fn quantile_boundaries(dist: &DistributionSpec, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidConfig("bucket count must be positive".into()));
    }
    let bounds: Vec<f64> = (0..=k)
        .map(|j| match j {
            0 => 0.0,
            j if j == k => 1.0,
            j => dist.quantile(j as f64 / k as f64),
        })
        .collect();
    if let Some(w) = bounds
        .windows(2)
        .position(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::NonMonotoneQuantile { index: w + 1 });
    }
    Ok(bounds)
}
