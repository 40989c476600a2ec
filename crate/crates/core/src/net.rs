//! Finite nets over directed preorders, eventuality, and the convergence
//! relations: M-convergence, MN-convergence and topological convergence.
//!
//! A finite directed preorder always has a cofinal cluster of indices above
//! everything, but nets are evaluated through their residual sets `↑i0` exactly
//! as the definitions read, without exploiting that.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{Elem, Poset};
use crate::relations::FamilyPair;
use crate::selection::SelectionFamily;
use crate::topology::Topology;

/// Dense bit set over net indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    words: Vec<u64>,
}

impl IndexSet {
    pub fn empty(m: usize) -> Self {
        IndexSet { words: alloc::vec![0; m.div_ceil(64)] }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn meets(&self, other: &IndexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &IndexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            core::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

impl core::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A nonempty finite directed preorder. Antisymmetry is not required.
#[derive(Clone, PartialEq, Eq)]
pub struct DirectedIndex {
    up: Vec<IndexSet>,
}

impl core::fmt::Debug for DirectedIndex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.up.iter()).finish()
    }
}

impl DirectedIndex {
    /// Build from a full relation `le(i, j)` meaning `i <= j`; checks
    /// reflexivity, transitivity and directedness.
    pub fn new(m: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = alloc::vec![IndexSet::empty(m); m];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..m {
                if le(i, j) {
                    row.insert(j);
                }
            }
        }
        let idx = DirectedIndex { up };
        idx.validate()?;
        Ok(idx)
    }

    /// Reflexive-transitive closure of `edges` (pairs `i <= j`), then checks
    /// directedness.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut up = alloc::vec![IndexSet::empty(m); m];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(i, j) in edges {
            if i >= m || j >= m {
                return Err(Error::InvalidIndex(format!("edge ({i}, {j}) out of range")));
            }
            up[i].insert(j);
        }
        for k in 0..m {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let idx = DirectedIndex { up };
        idx.validate()?;
        Ok(idx)
    }

    /// A chain `0 <= 1 <= .. <= m-1`.
    pub fn chain(m: usize) -> Self {
        Self::new(m, |i, j| i <= j).expect("chains are directed")
    }

    /// `m` mutually comparable indices.
    pub fn trivial(m: usize) -> Self {
        Self::new(m, |_, _| true).expect("trivial preorders are directed")
    }

    fn validate(&self) -> Result<()> {
        let m = self.up.len();
        if m == 0 {
            return Err(Error::DegenerateIndex);
        }
        for i in 0..m {
            if !self.up[i].contains(i) {
                return Err(Error::InvalidIndex(format!("index {i} is not reflexive")));
            }
            for j in self.up[i].iter() {
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(Error::InvalidIndex(format!("not transitive through {i} <= {j}")));
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if !self.up[i].meets(&self.up[j]) {
                    return Err(Error::InvalidIndex(format!(
                        "indices {i} and {j} have no common upper bound"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// The residual `↑i`.
    pub fn residual(&self, i: usize) -> &IndexSet {
        &self.up[i]
    }

    /// Indices above every index.
    pub fn cofinal_class(&self) -> IndexSet {
        let m = self.len();
        let mut out = IndexSet::empty(m);
        for j in 0..m {
            if (0..m).all(|i| self.le(i, j)) {
                out.insert(j);
            }
        }
        out
    }

    /// Relation rows as boolean lists.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let m = self.len();
        (0..m).map(|i| (0..m).map(|j| self.le(i, j)).collect()).collect()
    }
}

/// Where a net came from.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Provenance {
    Explicit,
    Constant,
    CanonicalM { a: SubsetMask },
    CanonicalMN { a: SubsetMask, s: SubsetMask },
    Iterated,
    Subnet,
    Random { seed: u64 },
}

/// Anything whose eventual behaviour can be queried.
pub trait Eventuality {
    /// Some residual of the index maps into `s`.
    fn eventually(&self, s: SubsetMask) -> bool;
}

/// A net `(x_i)_{i ∈ I}` into a poset carrier.
#[derive(Debug, Clone)]
pub struct Net {
    index: DirectedIndex,
    values: Vec<Elem>,
    provenance: Provenance,
    /// Inclusion-minimal value sets of the residuals `↑i0`.
    tails: Vec<SubsetMask>,
}

impl Net {
    pub fn new(index: DirectedIndex, values: Vec<Elem>, provenance: Provenance) -> Result<Self> {
        if values.len() != index.len() {
            return Err(Error::InvalidIndex(format!("{} values for {} indices", values.len(), index.len())));
        }
        let mut tails: Vec<SubsetMask> =
            (0..index.len()).map(|i| index.residual(i).iter().map(|j| values[j]).collect()).collect();
        tails.sort_by_key(|t| (t.len(), t.bits()));
        tails.dedup();
        let mut minimal: Vec<SubsetMask> = Vec::new();
        for t in tails {
            if !minimal.iter().any(|m| m.is_subset(t)) {
                minimal.push(t);
            }
        }
        Ok(Net { index, values, provenance, tails: minimal })
    }

    /// Net values checked against a carrier size.
    pub fn new_in(
        p: &Poset,
        index: DirectedIndex,
        values: Vec<Elem>,
        provenance: Provenance,
    ) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= p.len()) {
            return Err(Error::ElementOutOfRange { elem: bad, n: p.len() });
        }
        Self::new(index, values, provenance)
    }

    /// The one-index net at `x`.
    pub fn constant(x: Elem) -> Self {
        Self::new(DirectedIndex::trivial(1), alloc::vec![x], Provenance::Constant).expect("one index")
    }

    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Elem {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// All values the net takes.
    pub fn range(&self) -> SubsetMask {
        self.values.iter().copied().collect()
    }

    /// Literal residual scan: some `i0` with every `i >= i0` mapping into `s`.
    pub fn eventually_by_scan(&self, s: SubsetMask) -> bool {
        (0..self.len()).any(|i0| self.index.residual(i0).iter().all(|i| s.contains(self.values[i])))
    }
}

impl Eventuality for Net {
    fn eventually(&self, s: SubsetMask) -> bool {
        self.tails.iter().any(|t| t.is_subset(s))
    }
}

/// Eventual lower bounds `{x : x_i ∈ ↑x eventually}`.
pub fn elb<N: Eventuality + ?Sized>(p: &Poset, net: &N) -> SubsetMask {
    p.elements().filter(|&x| net.eventually(p.up(x))).collect()
}

/// Some `A ∈ M⁺(P)` has `x <= ⋁A` and `A ⊆ elb(net)`.
pub fn m_converges<N: Eventuality + ?Sized>(fam: &SelectionFamily, net: &N, x: Elem) -> bool {
    m_convergence_witness(fam, net, x).is_some()
}

pub fn m_convergence_witness<N: Eventuality + ?Sized>(
    fam: &SelectionFamily,
    net: &N,
    x: Elem,
) -> Option<SubsetMask> {
    let p = fam.poset();
    let lower = elb(p, net);
    fam.plus_with_sup().find(|&(a, s)| p.leq(x, s) && a.is_subset(lower)).map(|(a, _)| a)
}

/// Every `y` the net M-converges to.
pub fn m_limits<N: Eventuality + ?Sized>(fam: &SelectionFamily, net: &N) -> SubsetMask {
    fam.poset().elements().filter(|&x| m_converges(fam, net, x)).collect()
}

/// Some compatible `(A, S)` with `x = ⋁A = ⋀S` confines the net to
/// `↑a ∩ ↓s` eventually for every `a ∈ A`, `s ∈ S`.
pub fn mn_converges<N: Eventuality + ?Sized>(pair: &FamilyPair<'_>, net: &N, x: Elem) -> bool {
    mn_convergence_witness(pair, net, x).is_some()
}

pub fn mn_convergence_witness<N: Eventuality + ?Sized>(
    pair: &FamilyPair<'_>,
    net: &N,
    x: Elem,
) -> Option<(SubsetMask, SubsetMask)> {
    let p = pair.poset();
    pair.pairs_at(x).find(|&(a, s)| {
        a.iter().all(|ai| s.iter().all(|si| net.eventually(p.up(ai).intersection(p.down(si)))))
    })
}

pub fn mn_limits<N: Eventuality + ?Sized>(pair: &FamilyPair<'_>, net: &N) -> SubsetMask {
    pair.poset().elements().filter(|&x| mn_converges(pair, net, x)).collect()
}

/// Every open containing `x` eventually contains the net.
pub fn tau_converges<N: Eventuality + ?Sized>(t: &Topology, net: &N, x: Elem) -> bool {
    t.neighbourhoods(x).all(|u| net.eventually(u))
}

/// The net on `I_A = {(u, ub(B)) : ∅ ≠ B ⊆ A, u ∈ ub(B)}`, preordered by
/// reverse inclusion of the second component, with value `u` at `(u, ub(B))`.
/// Requires `⋁A` to exist; the result M-converges to `⋁A` under any family
/// containing `A`.
pub fn canonical_net_from_mset(p: &Poset, a: SubsetMask) -> Result<Net> {
    let Some(sup) = p.supremum(a).filter(|_| !a.is_empty()) else {
        return Err(Error::Precondition(format!("{a:?} has no supremum")));
    };
    let components = a.nonempty_subsets_by_size().into_iter().map(|b| p.upper_bounds(b));
    let net = component_net(components, Provenance::CanonicalM { a })?;
    // every a ∈ A is an eventual lower bound, so the net converges to ⋁A
    if !a.is_subset(elb(p, &net)) || !net.eventually(p.up(sup)) {
        return Err(Error::Precondition(format!("canonical net of {a:?} fails to converge to its supremum")));
    }
    Ok(net)
}

/// The net on `I_AS = {(u, ub(B) ∩ lb(T))}` for `⋁A = ⋀S`, preordered by
/// reverse inclusion of the second component.
pub fn canonical_net_from_mnsets(p: &Poset, a: SubsetMask, s: SubsetMask) -> Result<Net> {
    let sup = p.supremum(a).filter(|_| !a.is_empty());
    let inf = p.infimum(s).filter(|_| !s.is_empty());
    let x = match (sup, inf) {
        (Some(x), Some(y)) if x == y => x,
        _ => return Err(Error::Precondition(format!("⋁{a:?} and ⋀{s:?} must exist and coincide"))),
    };
    let ts = s.nonempty_subsets_by_size();
    let mut components = Vec::new();
    for b in a.nonempty_subsets_by_size() {
        let ub = p.upper_bounds(b);
        for &t in &ts {
            components.push(ub.intersection(p.lower_bounds(t)));
        }
    }
    let net = component_net(components, Provenance::CanonicalMN { a, s })?;
    let confined = a.iter().all(|ai| s.iter().all(|si| net.eventually(p.up(ai).intersection(p.down(si)))));
    if !confined || !net.eventually(SubsetMask::singleton(x)) {
        return Err(Error::Precondition(format!("canonical net of ({a:?}, {s:?}) fails to converge")));
    }
    Ok(net)
}

/// Index points `(u, C)` for every component `C` and `u ∈ C`, deduplicated,
/// with `(u1, C1) <= (u2, C2)` iff `C1 ⊇ C2`.
fn component_net(components: impl IntoIterator<Item = SubsetMask>, provenance: Provenance) -> Result<Net> {
    let mut points: Vec<(Elem, SubsetMask)> = Vec::new();
    for c in components {
        for u in c {
            if !points.contains(&(u, c)) {
                points.push((u, c));
            }
        }
    }
    if points.is_empty() {
        return Err(Error::DegenerateIndex);
    }
    let index = DirectedIndex::new(points.len(), |i, j| points[j].1.is_subset(points[i].1))?;
    let values = points.iter().map(|&(u, _)| u).collect();
    Net::new(index, values, provenance)
}

/// The subnet `(x_{h(j)})_{j ∈ J}`. The map must be cofinal: for every `i0`
/// some `j0` has `h(j) >= i0` whenever `j >= j0`. Monotonicity is not required.
pub fn subnet(net: &Net, index: DirectedIndex, h: &[usize]) -> Result<Net> {
    if h.len() != index.len() {
        return Err(Error::InvalidIndex(format!(
            "subnet map has {} entries for {} indices",
            h.len(),
            index.len()
        )));
    }
    if let Some(&bad) = h.iter().find(|&&i| i >= net.len()) {
        return Err(Error::InvalidIndex(format!("subnet map hits missing index {bad}")));
    }
    for i0 in 0..net.len() {
        let good = (0..index.len()).filter(|&j| net.index.le(i0, h[j])).fold(
            IndexSet::empty(index.len()),
            |mut s, j| {
                s.insert(j);
                s
            },
        );
        if !(0..index.len()).any(|j0| index.residual(j0).is_subset(&good)) {
            return Err(Error::CofinalityViolation { index: i0 });
        }
    }
    let values = h.iter().map(|&i| net.values[i]).collect();
    Net::new(index, values, Provenance::Subnet)
}

/// Whether `h` is order-preserving from `index` into the net's index.
pub fn is_monotone_map(net: &Net, index: &DirectedIndex, h: &[usize]) -> bool {
    (0..index.len()).all(|j| index.residual(j).iter().all(|k| net.index.le(h[j], h[k])))
}

/// Default cap on `|I| · ∏ |J(i)|`.
pub const DEFAULT_ITERATED_CAP: u64 = 1_000_000;

/// Cap on the size of an explicitly materialised product index.
pub const DEFAULT_MATERIALIZE_CAP: usize = 4096;

/// The iterated-limit net on `K = I × ∏_{i ∈ I} J(i)` with the pointwise
/// preorder and value `x_{i, f(i)}` at `(i, f)`.
///
/// The product index is kept implicit. Eventuality is decided from the
/// coordinates: a residual `↑(i0, f0)` reaches exactly the values `x_{i,j}` with
/// `i >= i0` and `j >= f0(i)`, and `f0` may be chosen per coordinate, so the
/// net is eventually in `S` iff for some `i0` every inner net at `i >= i0` is
/// eventually in `S`. [`IteratedNet::materialize`] builds `K` explicitly for
/// cross-checking on small instances.
#[derive(Debug, Clone)]
pub struct IteratedNet {
    outer: Net,
    inner: Vec<Net>,
    size: u64,
}

pub fn iterated_limit_net(outer: &Net, inner: Vec<Net>) -> Result<IteratedNet> {
    iterated_limit_net_with_cap(outer, inner, DEFAULT_ITERATED_CAP)
}

pub fn iterated_limit_net_with_cap(outer: &Net, inner: Vec<Net>, cap: u64) -> Result<IteratedNet> {
    if inner.len() != outer.len() {
        return Err(Error::InvalidIndex(format!(
            "{} inner nets for {} outer indices",
            inner.len(),
            outer.len()
        )));
    }
    let size = inner.iter().fold(outer.len() as u64, |acc, n| acc.saturating_mul(n.len() as u64));
    if size > cap {
        return Err(Error::SizeOverflow {
            what: "iterated-limit index",
            size: size.min(usize::MAX as u64) as usize,
            cap: cap as usize,
        });
    }
    Ok(IteratedNet { outer: outer.clone(), inner, size })
}

impl IteratedNet {
    /// `|K|`
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn outer(&self) -> &Net {
        &self.outer
    }

    pub fn inner(&self) -> &[Net] {
        &self.inner
    }

    /// Decode a mixed-radix position into `(i, f)`.
    fn decode(&self, mut k: usize) -> (usize, Vec<usize>) {
        let i = k % self.outer.len();
        k /= self.outer.len();
        let f = self
            .inner
            .iter()
            .map(|n| {
                let c = k % n.len();
                k /= n.len();
                c
            })
            .collect();
        (i, f)
    }

    /// Enumerate `K` with its pointwise preorder as an ordinary net.
    pub fn materialize(&self, cap: usize) -> Result<Net> {
        if self.size > cap as u64 {
            return Err(Error::SizeOverflow {
                what: "materialised product index",
                size: self.size as usize,
                cap,
            });
        }
        let points: Vec<(usize, Vec<usize>)> = (0..self.size as usize).map(|k| self.decode(k)).collect();
        let index = DirectedIndex::new(points.len(), |a, b| {
            let (i1, f1) = &points[a];
            let (i2, f2) = &points[b];
            self.outer.index.le(*i1, *i2)
                && self.inner.iter().enumerate().all(|(c, n)| n.index.le(f1[c], f2[c]))
        })?;
        let values = points.iter().map(|(i, f)| self.inner[*i].value(f[*i])).collect();
        Net::new(index, values, Provenance::Iterated)
    }
}

impl Eventuality for IteratedNet {
    fn eventually(&self, s: SubsetMask) -> bool {
        let m = self.outer.len();
        let mut good = IndexSet::empty(m);
        for (i, n) in self.inner.iter().enumerate() {
            if n.eventually(s) {
                good.insert(i);
            }
        }
        (0..m).any(|i0| self.outer.index.residual(i0).is_subset(&good))
    }
}

/// `V` is open in the topology induced by M-convergence when tested against
/// every canonical net: each `I_A` converges to every `x <= ⋁A`, so `x ∈ V`
/// must force `I_A` eventually into `V`.
pub fn is_open_via_canonical_nets(
    fam: &SelectionFamily,
    nets: &[(SubsetMask, Elem, Net)],
    v: SubsetMask,
) -> bool {
    let p = fam.poset();
    nets.iter().all(|(_, sup, net)| !p.down(*sup).meets(v) || net.eventually(v))
}

/// Canonical nets `(A, ⋁A, I_A)` for every `A ∈ M⁺(P)`.
pub fn canonical_m_nets(fam: &SelectionFamily) -> Result<Vec<(SubsetMask, Elem, Net)>> {
    fam.plus_with_sup().map(|(a, s)| canonical_net_from_mset(fam.poset(), a).map(|n| (a, s, n))).collect()
}

/// Canonical nets `(A, S, x, I_AS)` for every compatible pair.
pub fn canonical_mn_nets(pair: &FamilyPair<'_>) -> Result<Vec<(SubsetMask, SubsetMask, Elem, Net)>> {
    pair.pairs()
        .iter()
        .map(|&(a, s, x)| canonical_net_from_mnsets(pair.poset(), a, s).map(|n| (a, s, x, n)))
        .collect()
}

/// MN-openness tested against canonical nets: `V` contains `⋁A = ⋀S` only if
/// `I_AS` is eventually in `V`.
pub fn is_open_via_canonical_mn_nets(nets: &[(SubsetMask, SubsetMask, Elem, Net)], v: SubsetMask) -> bool {
    nets.iter().all(|(_, _, x, net)| !v.contains(*x) || net.eventually(v))
}

/// A convergence structure on a poset: M-convergence for one family or
/// MN-convergence for a pair.
#[derive(Debug, Clone, Copy)]
pub enum Convergence<'a> {
    M(&'a SelectionFamily),
    MN(&'a FamilyPair<'a>),
}

impl<'a> Convergence<'a> {
    pub fn poset(&self) -> &'a Poset {
        match self {
            Convergence::M(f) => f.poset(),
            Convergence::MN(p) => p.poset(),
        }
    }

    pub fn name(&self) -> alloc::string::String {
        match self {
            Convergence::M(f) => format!("M-convergence [{}]", f.name()),
            Convergence::MN(p) => format!("MN-convergence [{}]", p.name()),
        }
    }

    pub fn converges<N: Eventuality + ?Sized>(&self, net: &N, x: Elem) -> bool {
        match self {
            Convergence::M(f) => m_converges(f, net, x),
            Convergence::MN(p) => mn_converges(p, net, x),
        }
    }

    pub fn limits<N: Eventuality + ?Sized>(&self, net: &N) -> SubsetMask {
        self.poset().elements().filter(|&x| self.converges(net, x)).collect()
    }

    /// `I_A` for every `A ∈ M⁺(P)`, or `I_AS` for every compatible pair.
    pub fn canonical_nets(&self) -> Result<Vec<Net>> {
        match self {
            Convergence::M(f) => Ok(canonical_m_nets(f)?.into_iter().map(|(_, _, n)| n).collect()),
            Convergence::MN(p) => Ok(canonical_mn_nets(p)?.into_iter().map(|(_, _, _, n)| n).collect()),
        }
    }

    /// The induced topology, `τ_M` or `τ_MN`.
    pub fn induced_topology(&self) -> Result<Topology> {
        match self {
            Convergence::M(f) => Topology::tau_m(f),
            Convergence::MN(p) => Topology::tau_mn(p),
        }
    }
}
