//! Capacity planning for the next subarray after an overflow.

use sos::engine::plan_next_phase;

fn main() -> sos::Result<()> {
    // A_1 = 100 cells in 4 buckets of 25, filled 25/20/10/15 when one overflowed.
    let leftovers = [0, 5, 15, 10];
    let plan = plan_next_phase(100, 50, 70, &leftovers)?;
    println!("bin capacity {}", plan.bin_capacity);
    println!("A_2 bucket sizes {:?}", plan.bucket_sizes);
    println!("bin totals {:?}", plan.effective_capacities(&leftovers));

    // Leftovers above a bin's share: the bucket is clamped to zero.
    let skewed = [0, 0, 10, 10];
    let plan = plan_next_phase(40, 4, 20, &skewed)?;
    println!(
        "clamped: sizes {:?}, {} bin(s), deficit {}",
        plan.bucket_sizes, plan.clamped_bins, plan.deficit
    );
    Ok(())
}
