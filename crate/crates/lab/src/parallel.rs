//! Poset enumeration split across worker threads. The posets of a small
//! prefix size are handed out as independent subtrees and the results merged
//! so the output matches the sequential generator exactly.

use std::collections::BTreeMap;

use convlab_core::enumerate::{canonical_form, enumerate_posets_with_cap, one_point_extensions, Dedup};
use convlab_core::{Error, Poset, SubsetMask};
use rayon::prelude::*;

/// Size of the posets that seed each worker.
const PREFIX: usize = 3;

pub fn enumerate_parallel(n: usize, dedup: Dedup, cap: usize) -> Result<Vec<Poset>, Error> {
    if n > cap {
        return Err(Error::SizeOverflow { what: "poset enumeration", size: n, cap });
    }
    let k = n.min(PREFIX);
    let prefixes = enumerate_posets_with_cap(k, dedup, cap)?;
    match dedup {
        Dedup::Labeled => {
            let parts: Vec<Vec<Poset>> = prefixes
                .par_iter()
                .map(|p| {
                    let mut out = Vec::new();
                    extend_all(p, n, &mut out);
                    out
                })
                .collect();
            Ok(parts.into_iter().flatten().collect())
        }
        Dedup::Unlabeled => {
            let parts: Vec<BTreeMap<Vec<SubsetMask>, Poset>> =
                prefixes.par_iter().map(|p| extend_classes(p, n)).collect();
            let mut merged = BTreeMap::new();
            for part in parts {
                for (key, p) in part {
                    merged.entry(key).or_insert(p);
                }
            }
            Ok(merged.into_values().collect())
        }
    }
}

fn extend_all(p: &Poset, n: usize, out: &mut Vec<Poset>) {
    if p.len() == n {
        out.push(p.clone());
        return;
    }
    for q in one_point_extensions(p) {
        extend_all(&q, n, out);
    }
}

/// Canonical representatives of every class reachable from `p` by adding
/// points, deduplicated level by level.
fn extend_classes(p: &Poset, n: usize) -> BTreeMap<Vec<SubsetMask>, Poset> {
    let mut level = BTreeMap::new();
    let c = canonical_form(p);
    level.insert(c.up_rows().to_vec(), c);
    for _ in p.len()..n {
        let mut next = BTreeMap::new();
        for q in level.values() {
            for r in one_point_extensions(q) {
                let c = canonical_form(&r);
                next.entry(c.up_rows().to_vec()).or_insert(c);
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use convlab_core::enumerate::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn matches_the_sequential_generator() {
        for n in 0..=5 {
            for dedup in [Dedup::Labeled, Dedup::Unlabeled] {
                let seq = enumerate_posets_with_cap(n, dedup, DEFAULT_ENUMERATION_CAP).unwrap();
                let par = enumerate_parallel(n, dedup, DEFAULT_ENUMERATION_CAP).unwrap();
                assert_eq!(seq, par, "n = {n}, {dedup:?}");
            }
        }
    }

    #[test]
    fn six_points() {
        assert_eq!(enumerate_parallel(6, Dedup::Unlabeled, 6).unwrap().len(), 318);
        assert_eq!(enumerate_parallel(6, Dedup::Labeled, 6).unwrap().len(), 130023);
        assert!(enumerate_parallel(7, Dedup::Labeled, 6).is_err());
    }
}
