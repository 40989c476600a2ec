//! Enumeration of finite posets, labelled or up to isomorphism, and a
//! canonical form for deciding isomorphism.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{Elem, Poset};
use crate::topology::upper_sets;

pub const DEFAULT_ENUMERATION_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Dedup {
    /// Every order relation on `{0, .., n-1}`.
    #[default]
    Labeled,
    /// One canonical representative per isomorphism class.
    Unlabeled,
}

pub fn enumerate_posets(n: usize, dedup: Dedup) -> Result<Vec<Poset>> {
    enumerate_posets_with_cap(n, dedup, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_posets_with_cap(n: usize, dedup: Dedup, cap: usize) -> Result<Vec<Poset>> {
    check_cap(n, cap)?;
    match dedup {
        Dedup::Labeled => {
            let mut out = Vec::new();
            for_each_labeled(n, &mut |p| out.push(p.clone()));
            Ok(out)
        }
        Dedup::Unlabeled => Ok(unlabeled(n)),
    }
}

/// Visit every labelled poset on `n` elements without collecting them.
pub fn visit_labeled(n: usize, cap: usize, mut f: impl FnMut(&Poset)) -> Result<()> {
    check_cap(n, cap)?;
    for_each_labeled(n, &mut f);
    Ok(())
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeOverflow { what: "poset enumeration", size: n, cap });
    }
    Ok(())
}

fn for_each_labeled(n: usize, f: &mut dyn FnMut(&Poset)) {
    fn go(p: &Poset, n: usize, f: &mut dyn FnMut(&Poset)) {
        if p.len() == n {
            f(p);
            return;
        }
        for q in one_point_extensions(p) {
            go(&q, n, f);
        }
    }
    go(&Poset::antichain(0), n, f);
}

/// All posets on `n + 1` elements whose restriction to the first `n` is `p`.
/// The new element gets a lower set `D` strictly below it and an upper set
/// `U` strictly above it, with every element of `D` below every element of `U`.
pub fn one_point_extensions(p: &Poset) -> Vec<Poset> {
    let n = p.len();
    let full = p.carrier();
    let uppers = upper_sets(p, usize::MAX).expect("uncapped");
    let mut out = Vec::new();
    for &below in &uppers {
        let d = below.complement(n);
        debug_assert!(p.is_lower_set(d) && d.is_subset(full));
        for &u in &uppers {
            if d.meets(u) || !d.iter().all(|x| u.is_subset(p.up(x))) {
                continue;
            }
            let mut up: Vec<SubsetMask> = p.elements().map(|x| p.up(x)).collect();
            for x in d.iter() {
                up[x] = up[x].with(n);
            }
            up.push(u.with(n));
            out.push(Poset::from_up_rows(up));
        }
    }
    out
}

fn unlabeled(n: usize) -> Vec<Poset> {
    let mut level: Vec<Poset> = alloc::vec![Poset::antichain(0)];
    for _ in 0..n {
        let mut next: BTreeMap<Vec<SubsetMask>, Poset> = BTreeMap::new();
        for p in &level {
            for q in one_point_extensions(p) {
                let c = canonical_form(&q);
                next.entry(c.up_rows().to_vec()).or_insert(c);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// Per-element invariant used to order the search for a canonical labelling.
fn invariants(p: &Poset) -> Vec<(usize, usize, usize, usize)> {
    let heights = p.heights();
    let depths = p.depths();
    p.elements().map(|x| (p.down(x).len(), p.up(x).len(), heights[x], depths[x])).collect()
}

/// Ordered partition of the carrier into cells of equal refined invariant.
fn refined_cells(p: &Poset) -> Vec<Vec<Elem>> {
    let mut colour: Vec<usize> = rank(&invariants(p));
    loop {
        let signature: Vec<(usize, Vec<usize>, Vec<usize>)> = p
            .elements()
            .map(|x| {
                let mut below: Vec<usize> = p.down(x).iter().map(|y| colour[y]).collect();
                let mut above: Vec<usize> = p.up(x).iter().map(|y| colour[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colour[x], below, above)
            })
            .collect();
        let refined = rank(&signature);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&refined) == classes(&colour) {
            break;
        }
        colour = refined;
    }
    let mut cells: Vec<Vec<Elem>> = alloc::vec![Vec::new(); colour.iter().max().map_or(0, |m| m + 1)];
    for x in p.elements() {
        cells[colour[x]].push(x);
    }
    cells
}

/// Dense rank of each key among the sorted distinct keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

/// Canonical representative of the isomorphism class of `p`: the relabelling
/// with lexicographically least up-rows among those that respect the refined
/// invariant cells. Labels are reset to the defaults.
pub fn canonical_form(p: &Poset) -> Poset {
    let n = p.len();
    let cells = refined_cells(p);
    // slot -> cell, so positions are filled cell by cell
    let slots: Vec<usize> =
        cells.iter().enumerate().flat_map(|(c, cell)| core::iter::repeat_n(c, cell.len())).collect();
    let mut best: Option<Vec<SubsetMask>> = None;
    let mut order: Vec<Elem> = Vec::with_capacity(n);
    let mut used = SubsetMask::EMPTY;
    search(p, &cells, &slots, &mut order, &mut used, &mut best);
    let rows = best.unwrap_or_default();
    Poset::from_up_rows(rows)
}

/// Backtracking over the orderings allowed by the cells; `order[k]` is the
/// element placed at position `k`.
fn search(
    p: &Poset,
    cells: &[Vec<Elem>],
    slots: &[usize],
    order: &mut Vec<Elem>,
    used: &mut SubsetMask,
    best: &mut Option<Vec<SubsetMask>>,
) {
    let k = order.len();
    if k == slots.len() {
        let rows = relabelled_rows(p, order);
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    }
    for &x in &cells[slots[k]] {
        if used.contains(x) {
            continue;
        }
        order.push(x);
        *used = used.with(x);
        search(p, cells, slots, order, used, best);
        *used = used.without(x);
        order.pop();
    }
}

fn relabelled_rows(p: &Poset, order: &[Elem]) -> Vec<SubsetMask> {
    let mut pos = alloc::vec![0; order.len()];
    for (k, &x) in order.iter().enumerate() {
        pos[x] = k;
    }
    order.iter().map(|&x| p.up(x).iter().map(|y| pos[y]).collect()).collect()
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    p.len() == q.len() && canonical_form(p).same_order(&canonical_form(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::{d4, p3};

    /// Independent oracle: every relation matrix on `n` points that is an order.
    fn brute_force(n: usize) -> Vec<Poset> {
        let off: Vec<(usize, usize)> =
            (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
        (0u64..1 << off.len())
            .filter_map(|bits| {
                let rel = |x: usize, y: usize| {
                    x == y || off.iter().position(|&e| e == (x, y)).is_some_and(|i| bits >> i & 1 == 1)
                };
                Poset::from_relation(n, rel).ok()
            })
            .collect()
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Oracle canonical key: least up-rows over all n! relabellings.
    fn brute_key(p: &Poset) -> Vec<SubsetMask> {
        all_perms(p.len())
            .iter()
            .map(|perm| {
                let q = p.permuted(perm);
                q.elements().map(|x| q.up(x)).collect::<Vec<_>>()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn labeled_counts_match_the_oracle() {
        for (n, expected) in [1usize, 1, 3, 19, 219].into_iter().enumerate() {
            let fast = enumerate_posets(n, Dedup::Labeled).unwrap();
            let slow = brute_force(n);
            assert_eq!(fast.len(), expected, "n = {n}");
            assert_eq!(slow.len(), expected, "oracle n = {n}");
            let mut a: Vec<_> = fast.to_vec();
            let mut b = slow;
            let key = |p: &Poset| p.elements().map(|x| p.up(x)).collect::<Vec<_>>();
            a.sort_by_key(key);
            b.sort_by_key(key);
            assert!(a.iter().zip(&b).all(|(x, y)| x.same_order(y)));
        }
    }

    #[test]
    fn unlabeled_counts_match_the_oracle() {
        for (n, expected) in [1usize, 1, 2, 5, 16].into_iter().enumerate() {
            let fast = enumerate_posets(n, Dedup::Unlabeled).unwrap();
            assert_eq!(fast.len(), expected, "n = {n}");
            let mut classes: Vec<Vec<SubsetMask>> = brute_force(n).iter().map(brute_key).collect();
            classes.sort();
            classes.dedup();
            assert_eq!(classes.len(), expected, "oracle n = {n}");
            let mut mine: Vec<Vec<SubsetMask>> = fast.iter().map(brute_key).collect();
            mine.sort();
            mine.dedup();
            assert_eq!(mine, classes);
        }
    }

    #[test]
    fn counts_at_five_and_six() {
        assert_eq!(enumerate_posets(5, Dedup::Labeled).unwrap().len(), 4231);
        assert_eq!(enumerate_posets(5, Dedup::Unlabeled).unwrap().len(), 63);
        assert_eq!(enumerate_posets(6, Dedup::Unlabeled).unwrap().len(), 318);
        let mut labeled6 = 0;
        visit_labeled(6, DEFAULT_ENUMERATION_CAP, |_| labeled6 += 1).unwrap();
        assert_eq!(labeled6, 130023);
    }

    #[test]
    fn canonical_form_is_invariant_under_relabelling() {
        for p in enumerate_posets(4, Dedup::Labeled).unwrap() {
            let c = canonical_form(&p);
            for perm in all_perms(4) {
                assert!(canonical_form(&p.permuted(&perm)).same_order(&c));
            }
        }
    }

    #[test]
    fn isomorphism_helper() {
        assert!(is_isomorphic(&d4(), &d4().opposite()));
        assert!(!is_isomorphic(&p3(), &p3().opposite()));
        assert!(is_isomorphic(&p3(), &p3().permuted(&[2, 0, 1])));
        assert!(!is_isomorphic(&Poset::chain(3), &Poset::antichain(3)));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_posets(7, Dedup::Labeled), Err(Error::SizeOverflow { .. })));
        assert_eq!(enumerate_posets(1, Dedup::Labeled).unwrap().len(), 1);
    }
}
