//! Offline comparison costs.
//!
//! All tour costs here are open paths: there is no edge from the last point
//! back to the first, matching the array cost.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::BlockPartition;
use crate::model::{distance, PointSet};

/// Largest instance [`tsp_path_exact`] accepts.
pub const EXACT_MAX_POINTS: usize = 14;

/// Neighbor list length used by the 2-opt pass.
const NEIGHBORS: usize = 10;
/// Below this size every point is a neighbor of every other.
const FULL_NEIGHBORS_BELOW: usize = 64;
const MAX_PASSES: usize = 50;
/// Brute force is used for nearest-neighbor queries below this size.
const GRID_MIN_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Exact,
    HeuristicUpper,
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub value: f64,
    pub kind: OracleKind,
    pub n: usize,
    pub d: usize,
    /// False for the BHH value at `d = 1`, where the sorted span is exact.
    pub applicable: bool,
}

impl OracleEstimate {
    fn new(value: f64, kind: OracleKind, n: usize, d: usize) -> Self {
        Self {
            value,
            kind,
            n,
            d,
            applicable: true,
        }
    }

    pub fn exact(value: f64, n: usize, d: usize) -> Self {
        Self::new(value, OracleKind::Exact, n, d)
    }
}

fn distance_matrix(points: &PointSet) -> Vec<f64> {
    let n = points.len();
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(points.point(i), points.point(j));
            m[i * n + j] = d;
            m[j * n + i] = d;
        }
    }
    m
}

/// Minimum open path over all visiting orders, by dynamic programming over
/// subsets with both endpoints free.
pub fn tsp_path_exact(points: &PointSet) -> Result<OracleEstimate> {
    let n = points.len();
    if n > EXACT_MAX_POINTS {
        return Err(Error::TooLarge {
            n,
            max: EXACT_MAX_POINTS,
        });
    }
    if n <= 1 {
        return Ok(OracleEstimate::exact(0.0, n, points.dim()));
    }
    let dist = distance_matrix(points);
    let full = (1usize << n) - 1;
    // best[mask * n + j]: shortest path through `mask` ending at j.
    let mut best = vec![f64::INFINITY; (full + 1) * n];
    for j in 0..n {
        best[(1 << j) * n + j] = 0.0;
    }
    for mask in 1..=full {
        for j in 0..n {
            let cur = best[mask * n + j];
            if mask & (1 << j) == 0 || !cur.is_finite() {
                continue;
            }
            for k in 0..n {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let next = mask | (1 << k);
                let cand = cur + dist[j * n + k];
                let slot = &mut best[next * n + k];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    let value = (0..n)
        .map(|j| best[full * n + j])
        .fold(f64::INFINITY, f64::min);
    Ok(OracleEstimate::exact(value, n, points.dim()))
}

/// Nearest-neighbor path improved by 2-opt; an upper bound on the optimum.
pub fn tsp_path_heuristic(points: &PointSet) -> OracleEstimate {
    let order = heuristic_path(points);
    OracleEstimate::new(
        order_cost(points, &order),
        OracleKind::HeuristicUpper,
        points.len(),
        points.dim(),
    )
}

/// Cost of visiting `points` in `order`.
pub fn order_cost(points: &PointSet, order: &[usize]) -> f64 {
    order
        .windows(2)
        .map(|w| distance(points.point(w[0]), points.point(w[1])))
        .sum()
}

/// Visiting order found by [`tsp_path_heuristic`].
///
/// The path starts from point 0 and repeatedly moves to the nearest unvisited
/// point (lowest index on ties). 2-opt then reverses segments, including
/// prefixes and suffixes, while that shortens the path, taking the first
/// improving move found and stopping after at most 50 passes.
pub fn heuristic_path(points: &PointSet) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let grid = (n >= GRID_MIN_POINTS && points.dim() <= 3).then(|| Grid::new(points));
    let mut order = nearest_neighbor_order(points, grid.as_ref());
    let neighbors = neighbor_lists(points, grid.as_ref());
    two_opt(points, &mut order, &neighbors);
    order
}

/// Uniform bucket grid over `[0,1]^d` for neighbor queries.
struct Grid {
    d: usize,
    side: usize,
    cell_of: Vec<usize>,
    coord_of: Vec<usize>,
    start: Vec<usize>,
    items: Vec<usize>,
}

impl Grid {
    fn new(points: &PointSet) -> Self {
        let (n, d) = (points.len(), points.dim());
        let side = ((n as f64 / 2.0).powf(1.0 / d as f64).floor() as usize).max(1);
        let cells = side.pow(d as u32);
        let mut coord_of = vec![0; n * d];
        let mut cell_of = vec![0; n];
        for i in 0..n {
            let mut c = 0;
            for (k, &x) in points.point(i).iter().enumerate() {
                let v = ((x * side as f64) as usize).min(side - 1);
                coord_of[i * d + k] = v;
                c = c * side + v;
            }
            cell_of[i] = c;
        }
        let mut start = vec![0; cells + 1];
        for &c in &cell_of {
            start[c + 1] += 1;
        }
        for c in 0..cells {
            start[c + 1] += start[c];
        }
        let mut fill = start.clone();
        let mut items = vec![0; n];
        for (i, &c) in cell_of.iter().enumerate() {
            items[fill[c]] = i;
            fill[c] += 1;
        }
        Self {
            d,
            side,
            cell_of,
            coord_of,
            start,
            items,
        }
    }

    fn width(&self) -> f64 {
        1.0 / self.side as f64
    }

    /// Calls `f` on every cell at Chebyshev distance exactly `r` from the
    /// cell of point `q`.
    fn for_each_shell_cell(&self, q: usize, r: usize, f: &mut impl FnMut(usize)) {
        let center = &self.coord_of[q * self.d..(q + 1) * self.d];
        self.shell(center, r, 0, false, 0, f);
    }

    fn shell(
        &self,
        center: &[usize],
        r: usize,
        dim: usize,
        on_shell: bool,
        acc: usize,
        f: &mut impl FnMut(usize),
    ) {
        if dim == self.d {
            f(acc);
            return;
        }
        let c = center[dim];
        let lo = c.saturating_sub(r);
        let hi = (c + r).min(self.side - 1);
        if dim + 1 == self.d && !on_shell {
            if c >= r {
                f(acc * self.side + c - r);
            }
            if r > 0 && c + r < self.side {
                f(acc * self.side + c + r);
            }
            return;
        }
        for v in lo..=hi {
            self.shell(
                center,
                r,
                dim + 1,
                on_shell || v.abs_diff(c) == r,
                acc * self.side + v,
                f,
            );
        }
    }

    fn cell_items(&self, cell: usize) -> &[usize] {
        &self.items[self.start[cell]..self.start[cell + 1]]
    }
}

/// Distance and index, ordered by distance then index.
#[derive(PartialEq)]
struct Candidate(f64, usize);

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

fn nearest_neighbor_order(points: &PointSet, grid: Option<&Grid>) -> Vec<usize> {
    let n = points.len();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = 0;
    match grid {
        None => {
            for _ in 0..n {
                alive[cur] = false;
                order.push(cur);
                let p = points.point(cur);
                let mut best: Option<(f64, usize)> = None;
                for (j, _) in alive.iter().enumerate().filter(|(_, a)| **a) {
                    let dj = distance(p, points.point(j));
                    if best.is_none_or(|(b, _)| dj < b) {
                        best = Some((dj, j));
                    }
                }
                match best {
                    Some((_, j)) => cur = j,
                    None => break,
                }
            }
        }
        Some(g) => {
            let mut alive_in_cell: Vec<usize> = g.start.windows(2).map(|w| w[1] - w[0]).collect();
            for _ in 0..n {
                alive[cur] = false;
                alive_in_cell[g.cell_of[cur]] -= 1;
                order.push(cur);
                if order.len() == n {
                    break;
                }
                let p = points.point(cur);
                let mut best: Option<(f64, usize)> = None;
                for r in 0..g.side {
                    g.for_each_shell_cell(cur, r, &mut |cell| {
                        if alive_in_cell[cell] == 0 {
                            return;
                        }
                        for &j in g.cell_items(cell) {
                            if alive[j] {
                                let dj = distance(p, points.point(j));
                                if best.is_none_or(|(b, bj)| dj < b || (dj == b && j < bj)) {
                                    best = Some((dj, j));
                                }
                            }
                        }
                    });
                    if best.is_some_and(|(b, _)| b <= r as f64 * g.width()) {
                        break;
                    }
                }
                cur = best.expect("an unvisited point remains").1;
            }
        }
    }
    order
}

/// Up to [`NEIGHBORS`] nearest other points of each point, closest first.
fn neighbor_lists(points: &PointSet, grid: Option<&Grid>) -> Vec<Vec<usize>> {
    let n = points.len();
    let k = if n < FULL_NEIGHBORS_BELOW {
        n - 1
    } else {
        NEIGHBORS
    };
    (0..n)
        .map(|i| {
            let p = points.point(i);
            let mut heap: BinaryHeap<Candidate> = BinaryHeap::with_capacity(k + 1);
            let offer = |j: usize, heap: &mut BinaryHeap<Candidate>| {
                if j == i {
                    return;
                }
                let c = Candidate(distance(p, points.point(j)), j);
                if heap.len() < k {
                    heap.push(c);
                } else if heap.peek().is_some_and(|top| c < *top) {
                    heap.pop();
                    heap.push(c);
                }
            };
            match grid {
                None => (0..n).for_each(|j| offer(j, &mut heap)),
                Some(g) => {
                    for r in 0..g.side {
                        g.for_each_shell_cell(i, r, &mut |cell| {
                            g.cell_items(cell).iter().for_each(|&j| offer(j, &mut heap));
                        });
                        if heap.len() == k
                            && heap.peek().is_some_and(|t| t.0 <= r as f64 * g.width())
                        {
                            break;
                        }
                    }
                }
            }
            heap.into_sorted_vec().into_iter().map(|c| c.1).collect()
        })
        .collect()
}

/// Gain of reversing `order[l..=r]` on an open path.
fn reversal_gain(points: &PointSet, order: &[usize], l: usize, r: usize) -> f64 {
    let d = |a: usize, b: usize| distance(points.point(order[a]), points.point(order[b]));
    let mut gain = 0.0;
    if l > 0 {
        gain += d(l - 1, l) - d(l - 1, r);
    }
    if r + 1 < order.len() {
        gain += d(r, r + 1) - d(l, r + 1);
    }
    gain
}

fn two_opt(points: &PointSet, order: &mut [usize], neighbors: &[Vec<usize>]) {
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
    let eps = 1e-12;
    for _ in 0..MAX_PASSES {
        let mut improved = false;
        for a in 0..n {
            'neighbors: for &c in &neighbors[a] {
                let (i, j) = (pos[a], pos[c]);
                let dac = distance(points.point(a), points.point(c));
                let succ =
                    (i + 1 < n).then(|| distance(points.point(a), points.point(order[i + 1])));
                let pred = (i > 0).then(|| distance(points.point(a), points.point(order[i - 1])));
                // c becomes a's successor, then a's predecessor.
                let moves = [
                    (
                        succ.is_none_or(|s| dac < s),
                        if i < j { (i + 1, j) } else { (j + 1, i) },
                    ),
                    (
                        pred.is_none_or(|p| dac < p),
                        if i < j { (i, j - 1) } else { (j, i - 1) },
                    ),
                ];
                for (promising, (l, r)) in moves {
                    if !promising || l >= r || (l == 0 && r == n - 1) {
                        continue;
                    }
                    if reversal_gain(points, order, l, r) > eps {
                        order[l..=r].reverse();
                        for (k, &x) in order[l..=r].iter().enumerate() {
                            pos[x] = l + k;
                        }
                        improved = true;
                        break 'neighbors;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Block-by-block path: points of each non-empty block are joined by a
/// heuristic path, blocks are visited in serpentine order, and each block's
/// path is entered at the endpoint closer to the previous block's exit.
pub fn block_tour_cost(points: &PointSet, partition: &BlockPartition) -> OracleEstimate {
    let n = points.len();
    let mut by_block: Vec<Vec<usize>> = vec![Vec::new(); partition.block_count()];
    for (i, x) in points.iter().enumerate() {
        by_block[partition.order_index_of(x) - 1].push(i);
    }
    let mut total = 0.0;
    let mut exit: Option<usize> = None;
    for members in by_block.iter().filter(|m| !m.is_empty()) {
        let sub = points.select(members);
        let local = heuristic_path(&sub);
        total += order_cost(&sub, &local);
        let (first, last) = (members[local[0]], members[local[local.len() - 1]]);
        exit = Some(match exit {
            None => last,
            Some(e) => {
                let p = points.point(e);
                let (to_first, to_last) = (
                    distance(p, points.point(first)),
                    distance(p, points.point(last)),
                );
                if to_last < to_first {
                    total += to_last;
                    first
                } else {
                    total += to_first;
                    last
                }
            }
        });
    }
    OracleEstimate::new(total, OracleKind::HeuristicUpper, n, points.dim())
}

/// Limit constant `√(d/(2πe))` of the expected uniform tour length.
pub fn bhh_constant(d: usize) -> f64 {
    (d as f64 / (2.0 * std::f64::consts::PI * std::f64::consts::E)).sqrt()
}

/// `√(d/(2πe)) · n^(1-1/d)` for the unit cube; not applicable at `d = 1`.
pub fn bhh_reference(n: usize, d: usize) -> OracleEstimate {
    let value = bhh_constant(d) * (n as f64).powf(1.0 - 1.0 / d as f64);
    OracleEstimate {
        value,
        kind: OracleKind::Reference,
        n,
        d,
        applicable: d >= 2,
    }
}

/// Bounds `[√d/3, √(d/6)]` on the expected distance between two uniform
/// points of `[0,1]^d`.
pub fn mu_bounds(d: usize) -> (f64, f64) {
    let d = d as f64;
    (d.sqrt() / 3.0, (d / 6.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{sample_points, PortableRng};
    use crate::DistributionSpec;

    #[test]
    fn exact_examples() {
        let line = PointSet::from_values(&[0.0, 0.4, 1.0]);
        assert!((tsp_path_exact(&line).unwrap().value - 1.0).abs() < 1e-12);
        let corners = PointSet::from_points(
            2,
            &[
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
            ],
        )
        .unwrap();
        assert!((tsp_path_exact(&corners).unwrap().value - 3.0).abs() < 1e-12);
        let big = PointSet::from_values(&[0.5; 15]);
        assert!(matches!(
            tsp_path_exact(&big),
            Err(Error::TooLarge { n: 15, max: 14 })
        ));
    }

    #[test]
    fn heuristic_sorts_collinear_points() {
        let vals = [0.9, 0.1, 0.5, 0.3, 0.7, 0.2, 1.0, 0.0];
        let h = tsp_path_heuristic(&PointSet::from_values(&vals));
        assert!((h.value - 1.0).abs() < 1e-12);
        assert_eq!(h.kind, OracleKind::HeuristicUpper);
    }

    #[test]
    fn duplicates_cost_nothing_extra() {
        let pts = PointSet::from_points(
            2,
            &[
                vec![0.1, 0.1],
                vec![0.1, 0.1],
                vec![0.9, 0.1],
                vec![0.9, 0.1],
            ],
        )
        .unwrap();
        assert!((tsp_path_heuristic(&pts).value - 0.8).abs() < 1e-12);
    }

    #[test]
    fn grid_path_matches_brute_force_construction() {
        let mut rng = PortableRng::new(3);
        let pts = sample_points(&mut rng, 3000, 2, &DistributionSpec::Uniform);
        let g = Grid::new(&pts);
        assert_eq!(
            nearest_neighbor_order(&pts, Some(&g)),
            nearest_neighbor_order(&pts, None)
        );
        let (a, b) = (neighbor_lists(&pts, Some(&g)), neighbor_lists(&pts, None));
        assert_eq!(a, b);
    }

    #[test]
    fn shell_cells_partition_the_grid() {
        let mut rng = PortableRng::new(4);
        let pts = sample_points(&mut rng, 4000, 3, &DistributionSpec::Uniform);
        let g = Grid::new(&pts);
        let mut seen = vec![0usize; g.side.pow(3)];
        for r in 0..g.side {
            g.for_each_shell_cell(17, r, &mut |c| seen[c] += 1);
        }
        assert!(seen.iter().all(|&s| s == 1));
    }

    #[test]
    fn block_tour_examples() {
        let mut rng = PortableRng::new(9);
        let pts = sample_points(&mut rng, 40, 2, &DistributionSpec::Uniform);
        let unit = BlockPartition::unit(2);
        assert_eq!(
            block_tour_cost(&pts, &unit).value,
            tsp_path_heuristic(&pts).value
        );

        let part = BlockPartition::round_robin(2, 2);
        let one_each = PointSet::from_points(
            2,
            &[
                vec![0.25, 0.75],
                vec![0.75, 0.25],
                vec![0.25, 0.25],
                vec![0.75, 0.75],
            ],
        )
        .unwrap();
        // Serpentine order is (1,1), (2,1), (2,2), (1,2).
        assert!((block_tour_cost(&one_each, &part).value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn bhh_and_mu() {
        let r = bhh_reference(10_000, 2);
        assert!(
            (r.value - 100.0 / (std::f64::consts::PI * std::f64::consts::E).sqrt()).abs() < 1e-9
        );
        assert!((r.value - 34.22).abs() < 0.01);
        assert!(!bhh_reference(100, 1).applicable);
        let (lo, hi) = mu_bounds(6);
        assert!((lo - 0.8165).abs() < 1e-4 && (hi - 1.0).abs() < 1e-12);
    }
}
