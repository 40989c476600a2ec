use convlab_core::enumerate::{canonical_form, is_isomorphic};
use convlab_core::relations::way_below_m_shortcut;
use convlab_core::{Poset, RelationMatrix, Selection, SelectionKind, SubsetMask, Topology};
use proptest::prelude::*;

/// A random poset on up to `max` elements: a random DAG along a shuffled
/// linear order, closed transitively.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                Just(n),
                prop::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, perm)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            Poset::from_covers(n, &edges).expect("edges follow a linear order")
        })
}

fn with_subsets(max: usize) -> impl Strategy<Value = (Poset, SubsetMask, SubsetMask)> {
    poset(max).prop_flat_map(|p| {
        let full = 1u32.checked_shl(p.len() as u32).map_or(u32::MAX, |v| v - 1);
        (Just(p), 0..=full, 0..=full).prop_map(|(p, a, b)| (p, SubsetMask(a), SubsetMask(a | b)))
    })
}

fn order_kind() -> impl Strategy<Value = SelectionKind> {
    prop::sample::select(SelectionKind::ORDER.to_vec())
}

proptest! {
    #[test]
    fn bounds_are_antitone((p, a, b) in with_subsets(6)) {
        prop_assert!(a.is_subset(b));
        prop_assert!(p.upper_bounds(b).is_subset(p.upper_bounds(a)));
        prop_assert!(p.lower_bounds(b).is_subset(p.lower_bounds(a)));
    }

    #[test]
    fn opposite_is_an_involution_that_swaps_duals((p, a, _) in with_subsets(6)) {
        let op = p.opposite();
        prop_assert!(op.opposite().same_order(&p));
        prop_assert_eq!(op.upper_bounds(a), p.lower_bounds(a));
        prop_assert_eq!(op.supremum(a), p.infimum(a));
        prop_assert_eq!(op.is_directed(a), p.is_filtered(a));
        prop_assert_eq!(op.bottom(), p.top());
    }

    #[test]
    fn directed_and_filtered_families_are_dual(p in poset(5)) {
        let dir = Selection::builtin(SelectionKind::Dir).realize(&p.opposite()).unwrap();
        let filt = Selection::builtin(SelectionKind::Filt).realize(&p).unwrap();
        prop_assert_eq!(dir.members(), filt.members());
        prop_assert_eq!(dir.m_plus(), filt.m_minus());
    }

    #[test]
    fn way_below_is_contained_in_the_order(p in poset(5), kind in order_kind()) {
        let fam = Selection::builtin(kind).realize(&p).unwrap();
        let wb = RelationMatrix::way_below_m(&fam);
        for (x, y) in wb.pairs() {
            prop_assert!(p.leq(x, y));
            prop_assert!(way_below_m_shortcut(&fam, x, y));
        }
    }

    #[test]
    fn induced_opens_are_upper_sets(p in poset(5), kind in order_kind()) {
        let fam = Selection::builtin(kind).realize(&p).unwrap();
        let t = Topology::tau_m(&fam).unwrap();
        for &v in t.opens() {
            prop_assert!(p.is_upper_set(v));
        }
        prop_assert!(t.specialization_poset().unwrap().same_order(&p));
    }

    #[test]
    fn canonical_form_ignores_labelling((p, perm) in poset(6).prop_flat_map(|p| {
        let ids: Vec<usize> = (0..p.len()).collect();
        (Just(p), Just(ids).prop_shuffle())
    })) {
        let q = p.permuted(&perm);
        prop_assert!(is_isomorphic(&p, &q));
        prop_assert!(canonical_form(&p).same_order(&canonical_form(&q)));
    }
}
