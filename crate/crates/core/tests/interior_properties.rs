use proptest::prelude::*;
use sos::interior::{strategy_for, StrategyKind};

proptest! {
    #[test]
    fn placers_fill_every_cell_once(
        kind in prop_oneof![Just(StrategyKind::AdvSort1d), Just(StrategyKind::GridTspDd), Just(StrategyKind::ArrivalOrder)],
        d in 1usize..4,
        pts in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, 3), 0..300),
        claims in prop::collection::vec(any::<prop::sample::Index>(), 0..10),
    ) {
        let d = if kind == StrategyKind::AdvSort1d { 1 } else { d };
        let m = pts.len() + claims.len();
        let mut placer = strategy_for(kind).open(m, d);
        let mut seen = vec![false; m];
        for c in &claims {
            let off = c.index(m.max(1));
            if m > 0 && !seen[off] {
                seen[off] = true;
                placer.claim(off);
            }
        }
        let free = seen.iter().filter(|s| !**s).count();
        for x in pts.iter().take(free) {
            let off = placer.place(&x[..d]).unwrap();
            prop_assert!(!seen[off]);
            seen[off] = true;
        }
        prop_assert_eq!(placer.fill(), seen.iter().filter(|s| **s).count());
        if placer.fill() == m {
            prop_assert!(placer.is_full());
            prop_assert!(placer.place(&[0.5; 3][..d]).is_err());
        }
    }
}
