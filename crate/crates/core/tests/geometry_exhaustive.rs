use proptest::prelude::*;
use sos::geometry::{merged_key, order_index, serpentine_order, BlockPartition};

/// Every power-of-two slab vector with at most `max_blocks` blocks.
fn grids(d: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|g: Vec<usize>| {
                let used: usize = g.iter().product();
                (0..=12)
                    .map(|e| 1usize << e)
                    .filter(move |&s| used * s <= max_blocks)
                    .map(move |s| {
                        let mut h = g.clone();
                        h.push(s);
                        h
                    })
            })
            .collect();
    }
    out
}

#[test]
fn traversal_is_a_facet_adjacent_enumeration() {
    for d in 1..=3 {
        for splits in grids(d, 256) {
            let order = serpentine_order(&splits);
            assert_eq!(order.len(), splits.iter().product::<usize>(), "{splits:?}");
            for w in order.windows(2) {
                let diff: usize = w[0].iter().zip(&w[1]).map(|(a, b)| a.abs_diff(*b)).sum();
                assert_eq!(diff, 1, "{splits:?}");
            }
            for (pos, v) in order.iter().enumerate() {
                assert_eq!(order_index(v, &splits), pos + 1, "{splits:?} {v:?}");
            }
        }
    }
}

#[test]
fn merged_boxes_pair_consecutive_blocks() {
    let p = BlockPartition::round_robin(3, 6);
    let fine = p.merged_boxes(1);
    for phase in 2..=4u32 {
        let merged = p.merged_boxes(phase);
        assert_eq!(merged.len(), fine.len() >> (phase - 1));
        let total: f64 = merged.iter().map(|b| b.volume()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        // Consecutive serpentine blocks share a facet, so pairs form boxes
        // whose volume equals the sum of their parts.
        for (k, b) in merged.iter().enumerate() {
            let g = 1 << (phase - 1);
            let parts: f64 = fine[k * g..(k + 1) * g].iter().map(|f| f.volume()).sum();
            assert!((b.volume() - parts).abs() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn point_keys_agree_with_grid_position(d in 1usize..5, ell in 0u32..10, x in prop::collection::vec(0.0f64..=1.0, 4)) {
        let p = BlockPartition::round_robin(d, ell);
        let v = p.block_of(&x[..d]);
        let idx = p.order_index_of(&x[..d]);
        prop_assert_eq!(idx, order_index(&v, p.splits_per_dim()));
        let b = p.block_box(&v);
        for ((lo, hi), xi) in b.lo.iter().zip(&b.hi).zip(&x) {
            prop_assert!(lo <= xi && xi <= hi);
        }
        prop_assert!(merged_key(idx, 2) == idx.div_ceil(2));
    }
}
