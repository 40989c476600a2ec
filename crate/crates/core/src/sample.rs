//! Seeded generators for random nets and subnet maps.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::net::{DirectedIndex, IndexSet, Net, Provenance};
use crate::poset::Poset;

/// Bounds for sampled suites. All randomness flows from `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SampleSpec {
    pub seed: u64,
    /// Random nets per poset.
    pub nets: usize,
    /// Largest random index set.
    pub max_index: usize,
    /// Sampled subnet maps per tested net.
    pub subnets_per_net: usize,
    /// Constructed iterated-limit nets per poset.
    pub iterated: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { seed: 0x5eed, nets: 200, max_index: 8, subnets_per_net: 50, iterated: 50 }
    }
}

impl SampleSpec {
    pub fn empty(seed: u64) -> Self {
        SampleSpec { seed, nets: 0, max_index: 8, subnets_per_net: 0, iterated: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.nets == 0 && self.subnets_per_net == 0 && self.iterated == 0
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic per-query seed derived from a master seed (splitmix64 step).
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A random directed preorder on `m` indices: a sparse random relation plus a
/// top cluster of one to three mutually equivalent indices above everything,
/// closed reflexively and transitively.
pub fn random_index<R: Rng>(rng: &mut R, m: usize) -> DirectedIndex {
    assert!(m > 0);
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j && rng.gen_bool(0.25) {
                edges.push((i, j));
            }
        }
    }
    let cluster_size = rng.gen_range(1..=m.min(3));
    let mut ids: Vec<usize> = (0..m).collect();
    ids.shuffle(rng);
    let cluster = &ids[..cluster_size];
    for i in 0..m {
        for &c in cluster {
            edges.push((i, c));
        }
    }
    DirectedIndex::from_edges(m, &edges).expect("top cluster makes the preorder directed")
}

/// A net with a random index of size `1..=max_index` and uniform values.
pub fn random_net<R: Rng>(rng: &mut R, p: &Poset, max_index: usize, seed: u64) -> Net {
    let m = rng.gen_range(1..=max_index.max(1));
    let index = random_index(rng, m);
    let values = (0..m).map(|_| rng.gen_range(0..p.len())).collect();
    Net::new(index, values, Provenance::Random { seed }).expect("sizes agree")
}

/// `count` seeded random nets in `p`; none when `p` is empty.
pub fn random_nets(p: &Poset, count: usize, max_index: usize, seed: u64) -> Vec<Net> {
    if p.is_empty() {
        return Vec::new();
    }
    (0..count as u64)
        .map(|k| {
            let s = derive_seed(seed, k);
            random_net(&mut rng(s), p, max_index, s)
        })
        .collect()
}

/// Order-equivalence class of `i`.
fn class_of(idx: &DirectedIndex, i: usize) -> Vec<usize> {
    idx.residual(i).iter().filter(|&j| idx.le(j, i)).collect()
}

/// A cofinal map from `child` into `parent`. With `monotone` the map is also
/// order-preserving; otherwise only the top cluster is constrained.
pub fn random_cofinal_map<R: Rng>(
    rng: &mut R,
    parent: &DirectedIndex,
    child: &DirectedIndex,
    monotone: bool,
) -> Vec<usize> {
    let parent_top: Vec<usize> = parent.cofinal_class().iter().collect();
    let child_top = child.cofinal_class();
    let m = child.len();
    let mut h = alloc::vec![usize::MAX; m];
    if !monotone {
        for (j, slot) in h.iter_mut().enumerate() {
            *slot = if child_top.contains(j) {
                *parent_top.choose(rng).expect("nonempty")
            } else {
                rng.gen_range(0..parent.len())
            };
        }
        return h;
    }
    // classes in a linear extension: fewer predecessors first
    let below = |j: usize| (0..m).filter(|&k| child.le(k, j)).count();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&j| below(j));
    for j in order {
        if h[j] != usize::MAX {
            continue;
        }
        let class = class_of(child, j);
        let target: Vec<usize> = if child_top.contains(j) {
            parent_top.clone()
        } else {
            let mut candidates = IndexSet::empty(parent.len());
            for i in 0..parent.len() {
                candidates.insert(i);
            }
            for k in (0..m).filter(|&k| child.le(k, j) && !child.le(j, k)) {
                let r = parent.residual(h[k]);
                let mut next = IndexSet::empty(parent.len());
                for i in candidates.iter().filter(|&i| r.contains(i)) {
                    next.insert(i);
                }
                candidates = next;
            }
            let pool: Vec<usize> = candidates.iter().collect();
            let c = *pool.choose(rng).expect("directed preorders have common upper bounds");
            class_of(parent, c)
        };
        for &k in &class {
            h[k] = *target.choose(rng).expect("nonempty class");
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{is_monotone_map, subnet};

    #[test]
    fn the_empty_poset_has_no_random_nets() {
        assert!(random_nets(&Poset::antichain(0), 10, 4, 1).is_empty());
    }

    #[test]
    fn random_indices_are_directed_preorders() {
        let mut r = rng(7);
        for m in 1..9 {
            for _ in 0..20 {
                let idx = random_index(&mut r, m);
                assert_eq!(idx.len(), m);
                assert!(!idx.cofinal_class().is_empty());
            }
        }
    }

    #[test]
    fn sampled_maps_are_cofinal_and_monotone_when_asked() {
        let p = Poset::chain(3);
        let mut r = rng(11);
        for _ in 0..200 {
            let net = random_net(&mut r, &p, 8, 11);
            let m = r.gen_range(1..=6);
            let child = random_index(&mut r, m);
            let h = random_cofinal_map(&mut r, net.index(), &child, true);
            assert!(is_monotone_map(&net, &child, &h));
            subnet(&net, child.clone(), &h).unwrap();
            let h = random_cofinal_map(&mut r, net.index(), &child, false);
            subnet(&net, child, &h).unwrap();
        }
    }

    #[test]
    fn seeds_reproduce() {
        let p = Poset::antichain(3);
        let a = random_nets(&p, 5, 8, 99);
        let b = random_nets(&p, 5, 8, 99);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.values(), y.values());
            assert_eq!(x.index(), y.index());
        }
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
    }
}
