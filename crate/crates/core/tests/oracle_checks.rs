use itertools::Itertools;
use sos::geometry::BlockPartition;
use sos::model::{compute_ell, opt_sort_cost, DistributionSpec, PointSet};
use sos::oracles::{block_tour_cost, order_cost, tsp_path_exact, tsp_path_heuristic};
use sos::rng::{sample_points, PortableRng};

fn brute_force(points: &PointSet) -> f64 {
    (0..points.len())
        .permutations(points.len())
        .map(|p| order_cost(points, &p))
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn exact_matches_permutations_and_bounds_heuristic() {
    let mut rng = PortableRng::new(42);
    for i in 0..60 {
        let n = 2 + rng.below(6) as usize;
        let d = 1 + i % 3;
        let pts = sample_points(&mut rng, n, d, &DistributionSpec::Uniform);
        let exact = tsp_path_exact(&pts).unwrap().value;
        assert!((exact - brute_force(&pts)).abs() < 1e-12);
        assert!(tsp_path_heuristic(&pts).value >= exact - 1e-12);
        if d == 1 {
            assert!((exact - opt_sort_cost(pts.coords()).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn heuristic_is_close_on_small_instances() {
    let mut rng = PortableRng::new(7);
    for _ in 0..100 {
        let n = 3 + rng.below(8) as usize;
        let pts = sample_points(&mut rng, n, 2, &DistributionSpec::Uniform);
        let (h, e) = (
            tsp_path_heuristic(&pts).value,
            tsp_path_exact(&pts).unwrap().value,
        );
        assert!(h <= 1.25 * e + 1e-12, "n={n}: {h} vs {e}");
    }
}

#[test]
fn block_tour_bounds_exact() {
    let mut rng = PortableRng::new(13);
    let part = BlockPartition::round_robin(2, 3);
    for _ in 0..30 {
        let pts = sample_points(&mut rng, 10, 2, &DistributionSpec::Uniform);
        assert!(block_tour_cost(&pts, &part).value >= tsp_path_exact(&pts).unwrap().value - 1e-12);
    }
}

#[test]
fn block_tour_is_within_constant_of_heuristic() {
    let n = 2048;
    let mut rng = PortableRng::new(21);
    let pts = sample_points(&mut rng, n, 2, &DistributionSpec::Uniform);
    let part = BlockPartition::round_robin(2, compute_ell(n, 2.0).unwrap());
    let ratio = block_tour_cost(&pts, &part).value / tsp_path_heuristic(&pts).value;
    assert!(ratio <= 15.0, "{ratio}");
}

#[test]
fn heuristic_is_deterministic() {
    let mut rng = PortableRng::new(5);
    let pts = sample_points(&mut rng, 5000, 2, &DistributionSpec::Uniform);
    assert_eq!(
        tsp_path_heuristic(&pts).value.to_bits(),
        tsp_path_heuristic(&pts).value.to_bits()
    );
}
