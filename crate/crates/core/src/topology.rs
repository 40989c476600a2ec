//! Finite topologies: the induced topologies `τ_M` and `τ_MN`, the Scott and
//! Alexandrov baselines, and the passage between T0 spaces and posets.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::Poset;
use crate::relations::{finite_witness, finite_witness_pair, FamilyPair};
use crate::selection::{SelectionFamily, DEFAULT_SUBSET_CAP};

/// Cap on the number of upper sets `τ_M` will enumerate.
pub const DEFAULT_UPPER_SET_CAP: usize = 1 << 16;

/// A topology on `{0, .., n-1}`, opens kept sorted by mask value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Topology {
    n: usize,
    opens: Vec<SubsetMask>,
}

impl Topology {
    /// Validates that `opens` contains `∅` and the carrier and is closed under
    /// binary unions and intersections.
    pub fn new(n: usize, opens: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let full = SubsetMask::full(n);
        let mut opens: Vec<SubsetMask> = opens.into_iter().collect();
        opens.sort();
        opens.dedup();
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(full)) {
            return Err(Error::InvalidTopology(format!("{bad:?} is not a subset of the carrier")));
        }
        let t = Topology { n, opens };
        if !t.is_open(SubsetMask::EMPTY) || !t.is_open(full) {
            return Err(Error::InvalidTopology("missing ∅ or the carrier".into()));
        }
        for &u in &t.opens {
            for &v in &t.opens {
                if !t.is_open(u.union(v)) {
                    return Err(Error::InvalidTopology(format!("{u:?} ∪ {v:?} is not open")));
                }
                if !t.is_open(u.intersection(v)) {
                    return Err(Error::InvalidTopology(format!("{u:?} ∩ {v:?} is not open")));
                }
            }
        }
        Ok(t)
    }

    pub fn discrete(n: usize) -> Self {
        Topology { n, opens: SubsetMask::all(n).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        let mut opens = alloc::vec![SubsetMask::EMPTY, SubsetMask::full(n)];
        opens.dedup();
        Topology { n, opens }
    }

    /// All upper sets of `P`.
    pub fn alexandrov(p: &Poset) -> Self {
        let opens = upper_sets(p, usize::MAX).expect("uncapped");
        Topology { n: p.len(), opens }
    }

    /// Upper sets `V` such that every directed `D` with `⋁D ∈ V` meets `V`.
    pub fn scott(p: &Poset) -> Result<Self> {
        check_subset_cap(p.len())?;
        let directed: Vec<(SubsetMask, usize)> = SubsetMask::all(p.len())
            .filter(|&d| p.is_directed(d))
            .filter_map(|d| p.supremum(d).map(|s| (d, s)))
            .collect();
        let opens = upper_sets(p, DEFAULT_UPPER_SET_CAP)?
            .into_iter()
            .filter(|&v| directed.iter().all(|&(d, s)| !v.contains(s) || d.meets(v)))
            .collect();
        Ok(Topology { n: p.len(), opens })
    }

    /// `τ_M`, built from its order characterisation over the upper sets of `P`.
    pub fn tau_m(fam: &SelectionFamily) -> Result<Self> {
        let p = fam.poset();
        let opens: Vec<SubsetMask> =
            upper_sets(p, DEFAULT_UPPER_SET_CAP)?.into_iter().filter(|&v| is_open_tm(fam, v)).collect();
        Topology::new(p.len(), opens)
    }

    /// `τ_MN`, filtering every subset of the carrier.
    pub fn tau_mn(pair: &FamilyPair<'_>) -> Result<Self> {
        let n = pair.poset().len();
        check_subset_cap(n)?;
        let opens = SubsetMask::all(n).filter(|&v| is_open_tmn(pair, v));
        Topology::new(n, opens)
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[SubsetMask] {
        &self.opens
    }

    pub fn is_open(&self, v: SubsetMask) -> bool {
        self.opens.binary_search(&v).is_ok()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| self.is_open(SubsetMask::singleton(x)))
    }

    /// Opens containing `x`.
    pub fn neighbourhoods(&self, x: usize) -> impl Iterator<Item = SubsetMask> + '_ {
        self.opens.iter().copied().filter(move |o| o.contains(x))
    }

    /// Smallest open containing `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> SubsetMask {
        self.neighbourhoods(x).fold(SubsetMask::full(self.n), SubsetMask::intersection)
    }

    /// The topology whose opens are the closed sets of `self`.
    pub fn complements(&self) -> Self {
        let mut opens: Vec<SubsetMask> = self.opens.iter().map(|o| o.complement(self.n)).collect();
        opens.sort();
        Topology { n: self.n, opens }
    }

    /// `x <= y` iff every open containing `x` contains `y`. Fails when the
    /// preorder is not antisymmetric.
    pub fn specialization_poset(&self) -> Result<Poset> {
        let nbhd: Vec<SubsetMask> = (0..self.n).map(|x| self.minimal_neighbourhood(x)).collect();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if nbhd[x] == nbhd[y] {
                    return Err(Error::NotT0 { a: x, b: y });
                }
            }
        }
        Poset::from_relation(self.n, |x, y| nbhd[x].contains(y))
    }

    /// Nonempty, and any two opens meeting `A` have an intersection meeting `A`.
    pub fn is_irreducible(&self, a: SubsetMask) -> bool {
        if a.is_empty() {
            return false;
        }
        let meeting: Vec<SubsetMask> = self.opens.iter().copied().filter(|o| o.meets(a)).collect();
        meeting.iter().all(|u| meeting.iter().all(|v| u.intersection(*v).meets(a)))
    }

    /// Nonempty, and no two opens split `A` into two nonempty disjoint parts.
    pub fn is_connected(&self, a: SubsetMask) -> bool {
        if a.is_empty() {
            return false;
        }
        let meeting: Vec<SubsetMask> = self.opens.iter().copied().filter(|o| o.meets(a)).collect();
        !meeting.iter().any(|u| {
            meeting.iter().any(|v| a.is_subset(u.union(*v)) && !u.intersection(*v).intersection(a).meets(a))
        })
    }
}

/// (TM1) `V` is an upper set, and (TM2) every `A ∈ M⁺(P)` with `⋁A ∈ V` has
/// a nonempty `B ⊆ A` with `ub(B) ⊆ V`.
pub fn is_open_tm(fam: &SelectionFamily, v: SubsetMask) -> bool {
    fam.poset().is_upper_set(v) && satisfies_tm2(fam, v)
}

/// (TM2) alone.
pub fn satisfies_tm2(fam: &SelectionFamily, v: SubsetMask) -> bool {
    let p = fam.poset();
    fam.plus_with_sup().filter(|&(_, s)| v.contains(s)).all(|(a, _)| finite_witness(p, a, v).is_some())
}

/// Every compatible `(A, S)` with `⋁A = ⋀S ∈ V` has nonempty `B ⊆ A`,
/// `T ⊆ S` with `ub(B) ∩ lb(T) ⊆ V`.
pub fn is_open_tmn(pair: &FamilyPair<'_>, v: SubsetMask) -> bool {
    let p = pair.poset();
    pair.pairs()
        .iter()
        .filter(|&&(_, _, x)| v.contains(x))
        .all(|&(a, s, _)| finite_witness_pair(p, a, s, v).is_some())
}

/// All upper sets of `P` in ascending mask order, one per antichain of
/// minimal elements.
pub fn upper_sets(p: &Poset, cap: usize) -> Result<Vec<SubsetMask>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, SubsetMask)> = alloc::vec![(0, SubsetMask::EMPTY)];
    while let Some((next, chosen)) = stack.pop() {
        out.push(p.up_set(chosen));
        if out.len() > cap {
            return Err(Error::SizeOverflow { what: "upper-set enumeration", size: out.len(), cap });
        }
        for x in next..p.len() {
            if chosen.iter().all(|c| !p.comparable(c, x)) {
                stack.push((x + 1, chosen.with(x)));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn check_subset_cap(n: usize) -> Result<()> {
    if n > DEFAULT_SUBSET_CAP {
        Err(Error::SizeOverflow { what: "subset enumeration", size: n, cap: DEFAULT_SUBSET_CAP })
    } else {
        Ok(())
    }
}
