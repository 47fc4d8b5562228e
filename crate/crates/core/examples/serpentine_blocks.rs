//! Block partition of the unit square and its serpentine order.

use sos::geometry::{serpentine_order, BlockPartition};

fn main() {
    let p = BlockPartition::round_robin(2, 5);
    let splits = p.splits_per_dim().to_vec();
    println!("{} blocks, slabs per dimension {splits:?}", p.block_count());
    let mut pos = vec![vec![0; splits[0]]; splits[1]];
    for (i, v) in serpentine_order(&splits).iter().enumerate() {
        pos[v[1] - 1][v[0] - 1] = i + 1;
    }
    for row in pos.iter().rev() {
        println!(
            "{}",
            row.iter().map(|i| format!("{i:3}")).collect::<String>()
        );
    }
    let x = [0.8, 0.3];
    println!(
        "{x:?} is in block {:?}, position {}",
        p.block_of(&x),
        p.order_index_of(&x)
    );
    for b in p.merged_boxes(3).iter().take(3) {
        println!("phase 3 region {:?}..{:?}", b.lo, b.hi);
    }
}
