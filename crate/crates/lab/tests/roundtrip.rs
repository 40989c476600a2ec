use convlab::dsl::{parse_poset, serialize_poset};
use convlab::formats::PosetJson;
use convlab_core::Poset;
use proptest::prelude::*;

fn poset() -> impl Strategy<Value = Poset> {
    (1usize..=7)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, perm)| {
            let mut edges = Vec::new();
            let mut bits = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if bits.next().unwrap() {
                        edges.push((perm[i], perm[j]));
                    }
                }
            }
            Poset::from_covers(n, &edges).unwrap()
        })
}

fn labelled() -> impl Strategy<Value = Poset> {
    poset().prop_flat_map(|p| {
        let n = p.len();
        prop::collection::hash_set("[a-z][a-z0-9_]{0,5}", n)
            .prop_map(move |labels| p.clone().with_labels(labels).unwrap())
    })
}

proptest! {
    #[test]
    fn dsl_round_trips(p in labelled()) {
        let text = serialize_poset(&p);
        let q = parse_poset(&text).unwrap();
        prop_assert_eq!(q.labels(), p.labels());
        prop_assert!(q.same_order(&p), "{}", text);
        prop_assert_eq!(serialize_poset(&q), text);
    }

    #[test]
    fn json_round_trips(p in labelled()) {
        let json = serde_json::to_string(&PosetJson::from_poset(&p)).unwrap();
        let back: PosetJson = serde_json::from_str(&json).unwrap();
        let q = back.to_poset().unwrap();
        prop_assert_eq!(q.labels(), p.labels());
        prop_assert!(q.same_order(&p));
        prop_assert!(parse_poset(&json).unwrap().same_order(&p));
    }
}
