//! Finite posets and the elementary order-theoretic operations.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMS};
use crate::report::{PropertyReport, Witness};

/// Index of an element in its poset's carrier, `0 <= x < n`.
pub type Elem = usize;

/// A finite partial order stored as its full reflexive-transitive relation.
///
/// `up[x]` is the principal filter `↑x` and `down[x]` the principal ideal `↓x`,
/// so comparability is a single bit test.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    up: Vec<SubsetMask>,
    down: Vec<SubsetMask>,
    labels: Vec<String>,
}

impl core::fmt::Debug for Poset {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Poset[")?;
        let mut first = true;
        for (x, y) in self.covers() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}<{}", self.labels[x], self.labels[y])?;
        }
        write!(f, "; {}]", self.labels.join(" "))
    }
}

impl Poset {
    /// Build a poset from a full order relation. The relation must already be
    /// reflexive, transitive and antisymmetric.
    pub fn from_relation(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        check_size(n)?;
        let mut up = alloc::vec![SubsetMask::EMPTY; n];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if leq(x, y) {
                    *row = row.with(y);
                }
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::NotAnOrder(format!("{x} <= {x} is missing")));
            }
            for y in up[x] {
                if !up[y].is_subset(up[x]) {
                    return Err(Error::NotAnOrder(format!("{x} <= {y} but ↑{y} is not contained in ↑{x}")));
                }
                if x != y && up[y].contains(x) {
                    return Err(Error::Cycle { a: x.min(y), b: x.max(y) });
                }
            }
        }
        Ok(Self::from_up_rows(up))
    }

    /// Build a poset from strict cover pairs `(x, y)` meaning `x < y`, taking the
    /// reflexive-transitive closure. Fails if the closure is not antisymmetric.
    pub fn from_covers(n: usize, covers: &[(Elem, Elem)]) -> Result<Self> {
        check_size(n)?;
        let mut up: Vec<SubsetMask> = (0..n).map(SubsetMask::singleton).collect();
        for &(x, y) in covers {
            for e in [x, y] {
                if e >= n {
                    return Err(Error::ElementOutOfRange { elem: e, n });
                }
            }
            up[x] = up[x].with(y);
        }
        // Warshall over bit rows
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    up[x] = up[x].union(up[k]);
                }
            }
        }
        for x in 0..n {
            for y in up[x] {
                if x != y && up[y].contains(x) {
                    return Err(Error::Cycle { a: x.min(y), b: x.max(y) });
                }
            }
        }
        Ok(Self::from_up_rows(up))
    }

    /// Rows must describe a valid order; only used internally and by generators.
    pub(crate) fn from_up_rows(up: Vec<SubsetMask>) -> Self {
        let n = up.len();
        let mut down = alloc::vec![SubsetMask::EMPTY; n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y] = down[y].with(x);
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Poset { n, up, down, labels }
    }

    /// Replace the display labels. Labels must be distinct.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n {
            return Err(Error::CarrierMismatch { expected: self.n, found: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Precondition(format!("duplicate label `{l}`")));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Chain `0 < 1 < .. < k-1`.
    pub fn chain(k: usize) -> Self {
        let covers: Vec<(Elem, Elem)> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_covers(k, &covers).expect("chain is a poset")
    }

    /// `k` pairwise incomparable elements.
    pub fn antichain(k: usize) -> Self {
        Self::from_covers(k, &[]).expect("antichain is a poset")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// Carrier as a mask.
    #[inline]
    pub fn carrier(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.n
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `↑x`
    #[inline]
    pub fn up(&self, x: Elem) -> SubsetMask {
        self.up[x]
    }

    /// `↓x`
    #[inline]
    pub fn down(&self, x: Elem) -> SubsetMask {
        self.down[x]
    }

    /// `{u : q <= u for all q in Q}`; the full carrier when `Q` is empty.
    pub fn upper_bounds(&self, q: SubsetMask) -> SubsetMask {
        q.iter().fold(self.carrier(), |acc, x| acc.intersection(self.up[x]))
    }

    /// `{l : l <= q for all q in Q}`; the full carrier when `Q` is empty.
    pub fn lower_bounds(&self, q: SubsetMask) -> SubsetMask {
        q.iter().fold(self.carrier(), |acc, x| acc.intersection(self.down[x]))
    }

    /// Least element of a subset, if it has one.
    pub fn least_of(&self, s: SubsetMask) -> Option<Elem> {
        s.iter().find(|&u| s.is_subset(self.up[u]))
    }

    /// Greatest element of a subset, if it has one.
    pub fn greatest_of(&self, s: SubsetMask) -> Option<Elem> {
        s.iter().find(|&u| s.is_subset(self.down[u]))
    }

    /// `⋁Q`: the least upper bound. For `Q = ∅` this is the bottom element.
    pub fn supremum(&self, q: SubsetMask) -> Option<Elem> {
        self.least_of(self.upper_bounds(q))
    }

    /// `⋀Q`: the greatest lower bound. For `Q = ∅` this is the top element.
    pub fn infimum(&self, q: SubsetMask) -> Option<Elem> {
        self.greatest_of(self.lower_bounds(q))
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.infimum(SubsetMask::singleton(x).with(y))
    }

    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.supremum(SubsetMask::singleton(x).with(y))
    }

    pub fn bottom(&self) -> Option<Elem> {
        self.least_of(self.carrier())
    }

    pub fn top(&self) -> Option<Elem> {
        self.greatest_of(self.carrier())
    }

    /// Nonempty, and every pair of members has an upper bound inside `Q`.
    pub fn is_directed(&self, q: SubsetMask) -> bool {
        !q.is_empty() && q.iter().all(|x| q.iter().all(|y| self.up[x].intersection(self.up[y]).meets(q)))
    }

    /// Nonempty, and every pair of members has a lower bound inside `Q`.
    pub fn is_filtered(&self, q: SubsetMask) -> bool {
        !q.is_empty() && q.iter().all(|x| q.iter().all(|y| self.down[x].intersection(self.down[y]).meets(q)))
    }

    pub fn is_chain(&self, q: SubsetMask) -> bool {
        !q.is_empty() && q.iter().all(|x| q.iter().all(|y| self.comparable(x, y)))
    }

    pub fn is_antichain(&self, q: SubsetMask) -> bool {
        !q.is_empty() && q.iter().all(|x| q.iter().all(|y| x == y || !self.comparable(x, y)))
    }

    /// `↑Q`
    pub fn up_set(&self, q: SubsetMask) -> SubsetMask {
        q.iter().fold(SubsetMask::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    /// `↓Q`
    pub fn down_set(&self, q: SubsetMask) -> SubsetMask {
        q.iter().fold(SubsetMask::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn is_upper_set(&self, v: SubsetMask) -> bool {
        self.up_set(v) == v
    }

    pub fn is_lower_set(&self, v: SubsetMask) -> bool {
        self.down_set(v) == v
    }

    /// Minimal elements of `Q`.
    pub fn minimal(&self, q: SubsetMask) -> SubsetMask {
        q.iter().filter(|&x| self.down[x].intersection(q) == SubsetMask::singleton(x)).collect()
    }

    /// Maximal elements of `Q`.
    pub fn maximal(&self, q: SubsetMask) -> SubsetMask {
        q.iter().filter(|&x| self.up[x].intersection(q) == SubsetMask::singleton(x)).collect()
    }

    /// The order-dual `P^op`, keeping labels.
    pub fn opposite(&self) -> Poset {
        Poset { n: self.n, up: self.down.clone(), down: self.up.clone(), labels: self.labels.clone() }
    }

    /// Hasse covers `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in self.up[x].without(x) {
                let between = self.up[x].intersection(self.down[y]).without(x).without(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Length of the longest chain ending at each element (minimal elements have height 0).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = alloc::vec![0usize; self.n];
        // elements sorted by |↓x| form a linear extension
        let mut order: Vec<Elem> = (0..self.n).collect();
        order.sort_by_key(|&x| self.down[x].len());
        for &y in &order {
            h[y] = self.down[y].without(y).iter().map(|x| h[x] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain starting at each element (maximal elements have depth 0).
    pub fn depths(&self) -> Vec<usize> {
        self.opposite().heights()
    }

    /// Apply a relabelling `perm`, element `x` becoming `perm[x]`.
    pub fn permuted(&self, perm: &[Elem]) -> Poset {
        let mut up = alloc::vec![SubsetMask::EMPTY; self.n];
        let mut labels = alloc::vec![String::new(); self.n];
        for x in 0..self.n {
            up[perm[x]] = self.up[x].iter().map(|y| perm[y]).collect();
            labels[perm[x]] = self.labels[x].clone();
        }
        let mut p = Self::from_up_rows(up);
        p.labels = labels;
        p
    }

    /// `↑x` for every `x`, in carrier order. Determines the order completely.
    pub fn up_rows(&self) -> &[SubsetMask] {
        &self.up
    }

    /// Same order relation, ignoring labels.
    pub fn same_order(&self, other: &Poset) -> bool {
        self.n == other.n && self.up == other.up
    }

    /// Meet-continuity: for every directed `D` whose supremum exists and every
    /// `x <= ⋁D`, each meet `x ∧ d` exists and `⋁{x ∧ d : d ∈ D} = x`.
    ///
    /// [`MeetContinuityReading::Literal`] ranges `x` over `D` only.
    pub fn meet_continuity(&self, reading: MeetContinuityReading) -> PropertyReport {
        let name = match reading {
            MeetContinuityReading::Standard => "meet-continuous",
            MeetContinuityReading::Literal => "meet-continuous (x in D)",
        };
        let mut report = PropertyReport::holding(name);
        if self.n > crate::selection::DEFAULT_SUBSET_CAP {
            report.fail(Witness::new(format!("carrier of size {} exceeds subset enumeration cap", self.n)));
            return report;
        }
        for d in SubsetMask::all(self.n) {
            if !self.is_directed(d) {
                continue;
            }
            let Some(top) = self.supremum(d) else { continue };
            let range = match reading {
                MeetContinuityReading::Standard => self.carrier(),
                MeetContinuityReading::Literal => d,
            };
            for x in range.iter().filter(|&x| self.leq(x, top)) {
                if let Some(clause) = self.meet_continuity_clause(d, x) {
                    report.fail(Witness::new(clause).elements(&[x]).subsets(&[d]));
                    return report;
                }
            }
        }
        report
    }

    fn meet_continuity_clause(&self, d: SubsetMask, x: Elem) -> Option<String> {
        let mut meets = SubsetMask::EMPTY;
        for e in d {
            match self.meet(x, e) {
                Some(m) => meets = meets.with(m),
                None => {
                    return Some(format!("meet of {} and {} does not exist", self.labels[x], self.labels[e]))
                }
            }
        }
        match self.supremum(meets) {
            Some(s) if s == x => None,
            Some(s) => Some(format!("sup of meets with {} is {}", self.labels[x], self.labels[s])),
            None => Some(format!("sup of meets with {} does not exist", self.labels[x])),
        }
    }

    pub fn is_meet_continuous(&self) -> PropertyReport {
        self.meet_continuity(MeetContinuityReading::Standard)
    }

    /// Condition (*): `P` and `P^op` are both meet-continuous.
    pub fn condition_star(&self) -> PropertyReport {
        self.condition_star_with(MeetContinuityReading::Standard)
    }

    pub fn condition_star_with(&self, reading: MeetContinuityReading) -> PropertyReport {
        let mut report = PropertyReport::holding("condition (*)");
        report.absorb(self.meet_continuity(reading));
        let mut dual = self.opposite().meet_continuity(reading);
        dual.name = format!("{} of P^op", dual.name);
        report.absorb(dual);
        report
    }
}

/// Quantifier reading for meet-continuity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeetContinuityReading {
    /// `x` ranges over all of `P`.
    #[default]
    Standard,
    /// `x` ranges over the directed set `D` only.
    Literal,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMS {
        Err(Error::SizeOverflow { what: "poset carrier", size: n, cap: MAX_ELEMS })
    } else {
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `a <= c`, `b <= c`.
    pub fn p3() -> Poset {
        Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap().with_labels(["a", "b", "c"]).unwrap()
    }

    /// `⊥ < x, y < ⊤` with indices bot=0, x=1, y=2, top=3.
    pub fn d4() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .unwrap()
            .with_labels(["bot", "x", "y", "top"])
            .unwrap()
    }
}
