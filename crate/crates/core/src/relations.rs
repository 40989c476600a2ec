//! The generalised way-below relations `≪_M`, `≪_MN` and `◁_MN`.
//!
//! Every relation is decided by the literal finite-subset search of its
//! definition: subsets `B ⊆ A` (and `T ⊆ S`) are tried in ascending
//! cardinality until one satisfies the bound condition. The `*_shortcut`
//! functions use `B = A`, `T = S` directly; on finite posets they agree with the
//! literal search and serve as an independent cross-check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{Elem, Poset};
use crate::report::{PropertyReport, Witness};
use crate::selection::SelectionFamily;

/// Nonempty `B ⊆ A` with `ub(B) ⊆ target`, smallest cardinality first.
pub fn finite_witness(p: &Poset, a: SubsetMask, target: SubsetMask) -> Option<SubsetMask> {
    a.nonempty_subsets_by_size().into_iter().find(|&b| p.upper_bounds(b).is_subset(target))
}

/// Nonempty `B ⊆ A`, `T ⊆ S` with `ub(B) ∩ lb(T) ⊆ target`.
pub fn finite_witness_pair(
    p: &Poset,
    a: SubsetMask,
    s: SubsetMask,
    target: SubsetMask,
) -> Option<(SubsetMask, SubsetMask)> {
    let bs = a.nonempty_subsets_by_size();
    let ts = s.nonempty_subsets_by_size();
    for &b in &bs {
        let ub = p.upper_bounds(b);
        if let Some(&t) = ts.iter().find(|&&t| ub.intersection(p.lower_bounds(t)).is_subset(target)) {
            return Some((b, t));
        }
    }
    None
}

/// `x ≪_M y`: every `A ∈ M⁺(P)` with `y <= ⋁A` has a nonempty `B ⊆ A`
/// with `ub(B) ⊆ ↑x`.
pub fn way_below_m(fam: &SelectionFamily, x: Elem, y: Elem) -> bool {
    let p = fam.poset();
    fam.plus_with_sup().filter(|&(_, s)| p.leq(y, s)).all(|(a, _)| finite_witness(p, a, p.up(x)).is_some())
}

/// `x ≪_M y` with `B = A` in place of the subset search.
pub fn way_below_m_shortcut(fam: &SelectionFamily, x: Elem, y: Elem) -> bool {
    let p = fam.poset();
    fam.plus_with_sup().filter(|&(_, s)| p.leq(y, s)).all(|(a, _)| p.upper_bounds(a).is_subset(p.up(x)))
}

/// Pairs `(A, S, x)` with `A ∈ M⁺(P)`, `S ∈ N⁻(P)` and `x = ⋁A = ⋀S`.
#[derive(Debug, Clone)]
pub struct FamilyPair<'a> {
    m: &'a SelectionFamily,
    n: &'a SelectionFamily,
    pairs: Vec<(SubsetMask, SubsetMask, Elem)>,
}

impl<'a> FamilyPair<'a> {
    pub fn new(m: &'a SelectionFamily, n: &'a SelectionFamily) -> Result<Self> {
        if !m.poset().same_order(n.poset()) {
            return Err(Error::Precondition(format!(
                "families {} and {} are realised on different posets",
                m.name(),
                n.name()
            )));
        }
        let mut pairs = Vec::new();
        for (a, sup) in m.plus_with_sup() {
            for (s, inf) in n.minus_with_inf() {
                if sup == inf {
                    pairs.push((a, s, sup));
                }
            }
        }
        Ok(FamilyPair { m, n, pairs })
    }

    pub fn poset(&self) -> &'a Poset {
        self.m.poset()
    }

    pub fn m(&self) -> &'a SelectionFamily {
        self.m
    }

    pub fn n(&self) -> &'a SelectionFamily {
        self.n
    }

    pub fn name(&self) -> String {
        format!("({},{})", self.m.name(), self.n.name())
    }

    /// All compatible `(A, S, ⋁A)` triples.
    pub fn pairs(&self) -> &[(SubsetMask, SubsetMask, Elem)] {
        &self.pairs
    }

    /// Compatible pairs whose common value is `y`.
    pub fn pairs_at(&self, y: Elem) -> impl Iterator<Item = (SubsetMask, SubsetMask)> + '_ {
        self.pairs.iter().filter(move |&&(_, _, v)| v == y).map(|&(a, s, _)| (a, s))
    }
}

fn mn_relation(pair: &FamilyPair<'_>, y: Elem, target: SubsetMask) -> bool {
    let p = pair.poset();
    pair.pairs_at(y).all(|(a, s)| finite_witness_pair(p, a, s, target).is_some())
}

fn mn_relation_shortcut(pair: &FamilyPair<'_>, y: Elem, target: SubsetMask) -> bool {
    let p = pair.poset();
    pair.pairs_at(y).all(|(a, s)| p.upper_bounds(a).intersection(p.lower_bounds(s)).is_subset(target))
}

/// `x ≪_MN y`
pub fn mn_way_below(pair: &FamilyPair<'_>, x: Elem, y: Elem) -> bool {
    mn_relation(pair, y, pair.poset().up(x))
}

/// `y ◁_MN z`
pub fn mn_triangle(pair: &FamilyPair<'_>, y: Elem, z: Elem) -> bool {
    mn_relation(pair, y, pair.poset().down(z))
}

pub fn mn_way_below_shortcut(pair: &FamilyPair<'_>, x: Elem, y: Elem) -> bool {
    mn_relation_shortcut(pair, y, pair.poset().up(x))
}

pub fn mn_triangle_shortcut(pair: &FamilyPair<'_>, y: Elem, z: Elem) -> bool {
    mn_relation_shortcut(pair, y, pair.poset().down(z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RelationKind {
    WayBelowM,
    WayBelowMN,
    TriangleMN,
}

/// A decided relation on a carrier: `rows[x] = {y : x R y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelationMatrix {
    pub kind: RelationKind,
    pub selections: String,
    rows: Vec<SubsetMask>,
    cols: Vec<SubsetMask>,
}

impl RelationMatrix {
    pub fn from_fn(
        kind: RelationKind,
        selections: String,
        n: usize,
        rel: impl Fn(Elem, Elem) -> bool,
    ) -> Self {
        let mut rows = alloc::vec![SubsetMask::EMPTY; n];
        let mut cols = alloc::vec![SubsetMask::EMPTY; n];
        for (x, row) in rows.iter_mut().enumerate() {
            for (y, col) in cols.iter_mut().enumerate() {
                if rel(x, y) {
                    *row = row.with(y);
                    *col = col.with(x);
                }
            }
        }
        RelationMatrix { kind, selections, rows, cols }
    }

    /// `≪_M` by literal search.
    pub fn way_below_m(fam: &SelectionFamily) -> Self {
        Self::from_fn(RelationKind::WayBelowM, fam.name().into(), fam.poset().len(), |x, y| {
            way_below_m(fam, x, y)
        })
    }

    /// `≪_M` with `B = A`.
    pub fn way_below_m_shortcut(fam: &SelectionFamily) -> Self {
        Self::from_fn(RelationKind::WayBelowM, fam.name().into(), fam.poset().len(), |x, y| {
            way_below_m_shortcut(fam, x, y)
        })
    }

    pub fn mn_way_below(pair: &FamilyPair<'_>) -> Self {
        Self::from_fn(RelationKind::WayBelowMN, pair.name(), pair.poset().len(), |x, y| {
            mn_way_below(pair, x, y)
        })
    }

    pub fn mn_triangle(pair: &FamilyPair<'_>) -> Self {
        Self::from_fn(RelationKind::TriangleMN, pair.name(), pair.poset().len(), |y, z| {
            mn_triangle(pair, y, z)
        })
    }

    pub fn mn_way_below_shortcut(pair: &FamilyPair<'_>) -> Self {
        Self::from_fn(RelationKind::WayBelowMN, pair.name(), pair.poset().len(), |x, y| {
            mn_way_below_shortcut(pair, x, y)
        })
    }

    pub fn mn_triangle_shortcut(pair: &FamilyPair<'_>) -> Self {
        Self::from_fn(RelationKind::TriangleMN, pair.name(), pair.poset().len(), |y, z| {
            mn_triangle_shortcut(pair, y, z)
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn holds(&self, x: Elem, y: Elem) -> bool {
        self.rows[x].contains(y)
    }

    /// `{y : x R y}`, i.e. `↟x` for `≪` and the up-triangle set for `◁`.
    #[inline]
    pub fn above(&self, x: Elem) -> SubsetMask {
        self.rows[x]
    }

    /// `{y : y R x}`, i.e. `⇊x` for `≪` and the down-triangle set for `◁`.
    #[inline]
    pub fn below(&self, x: Elem) -> SubsetMask {
        self.cols[x]
    }

    /// Same pairs as the order of `p`.
    pub fn equals_order(&self, p: &Poset) -> bool {
        self.rows.len() == p.len() && (0..p.len()).all(|x| self.rows[x] == p.up(x))
    }

    /// Same pairs as another matrix, ignoring tags.
    pub fn same_pairs(&self, other: &RelationMatrix) -> bool {
        self.rows == other.rows
    }

    /// Rows as lists of related elements, for display and serialisation.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                out.push((x, y));
            }
        }
        out
    }
}

/// `⇊_M x` and `↟_M x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MArrows {
    pub down: SubsetMask,
    pub up: SubsetMask,
}

pub fn m_arrows(fam: &SelectionFamily, x: Elem) -> MArrows {
    let n = fam.poset().len();
    MArrows {
        down: (0..n).filter(|&y| way_below_m(fam, y, x)).collect(),
        up: (0..n).filter(|&y| way_below_m(fam, x, y)).collect(),
    }
}

/// `⇊_MN x`, `↟_MN x`, `{y : y ◁ x}` and `{y : x ◁ y}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MnArrows {
    pub down: SubsetMask,
    pub up: SubsetMask,
    pub triangle_down: SubsetMask,
    pub triangle_up: SubsetMask,
}

pub fn mn_arrows(pair: &FamilyPair<'_>, x: Elem) -> MnArrows {
    let n = pair.poset().len();
    MnArrows {
        down: (0..n).filter(|&y| mn_way_below(pair, y, x)).collect(),
        up: (0..n).filter(|&y| mn_way_below(pair, x, y)).collect(),
        triangle_down: (0..n).filter(|&y| mn_triangle(pair, y, x)).collect(),
        triangle_up: (0..n).filter(|&y| mn_triangle(pair, x, y)).collect(),
    }
}

/// Inclusion in the order, interpolation `u <= x ≪ y <= z ⟹ u ≪ z` and the
/// bottom clause for `≪_M`.
pub fn check_aux_properties_m(fam: &SelectionFamily) -> PropertyReport {
    let p = fam.poset();
    let wb = RelationMatrix::way_below_m(fam);
    let mut report = PropertyReport::holding(format!("auxiliary relation ≪_M [{}]", fam.name()));
    for (x, y) in wb.pairs() {
        if !p.leq(x, y) {
            report.fail(Witness::new("(1) x ≪ y but not x <= y").elements(&[x, y]));
            return report;
        }
        for u in p.down(x) {
            for z in p.up(y) {
                if !wb.holds(u, z) {
                    report.fail(Witness::new("(2) u <= x ≪ y <= z but not u ≪ z").elements(&[u, x, y, z]));
                    return report;
                }
            }
        }
    }
    match p.bottom() {
        Some(bot) => {
            if let Some(x) = p.elements().find(|&x| !wb.holds(bot, x)) {
                report.fail(Witness::new("(3) bottom is not way below x").elements(&[bot, x]));
            }
        }
        None => report.note("(3) vacuous: no bottom element"),
    }
    report
}

/// Inclusions, extremal clauses and the one-sided finite-subset consequences
/// for `≪_MN` and `◁_MN`.
pub fn check_aux_properties_mn(pair: &FamilyPair<'_>) -> PropertyReport {
    let p = pair.poset();
    let wb = RelationMatrix::mn_way_below(pair);
    let tr = RelationMatrix::mn_triangle(pair);
    let mut report = PropertyReport::holding(format!("auxiliary relations ≪_MN, ◁_MN [{}]", pair.name()));
    for (x, y) in wb.pairs() {
        if !p.leq(x, y) {
            report.fail(Witness::new("(1) x ≪_MN y but not x <= y").elements(&[x, y]));
            return report;
        }
    }
    for (y, z) in tr.pairs() {
        if !p.leq(y, z) {
            report.fail(Witness::new("(2) y ◁_MN z but not y <= z").elements(&[y, z]));
            return report;
        }
    }
    match p.bottom() {
        Some(bot) => {
            if let Some(x) = p.elements().find(|&x| !wb.holds(bot, x)) {
                report.fail(Witness::new("(3) bottom is not ≪_MN x").elements(&[bot, x]));
            }
        }
        None => report.note("(3) vacuous: no bottom element"),
    }
    match p.top() {
        Some(top) => {
            if let Some(x) = p.elements().find(|&x| !tr.holds(x, top)) {
                report.fail(Witness::new("(4) x is not ◁_MN top").elements(&[x, top]));
            }
        }
        None => report.note("(4) vacuous: no top element"),
    }
    // (8): x ≪ y and ⋁A = y give B ⊆ A with ub(B) ∩ ↓y ⊆ ↑x
    for (x, y) in wb.pairs() {
        for (a, sup) in pair.m().plus_with_sup() {
            if sup != y {
                continue;
            }
            if finite_witness(p, a, p.up(x).union(p.down(y).complement(p.len()))).is_none() {
                report
                    .fail(Witness::new("(8) no B with ub(B) ∩ lb({y}) ⊆ ↑x").elements(&[x, y]).subsets(&[a]));
                return report;
            }
        }
    }
    // (9): y ◁ z and ⋀S = y give T ⊆ S with ↑y ∩ lb(T) ⊆ ↓z
    for (y, z) in tr.pairs() {
        for (s, inf) in pair.n().minus_with_inf() {
            if inf != y {
                continue;
            }
            let found = s
                .nonempty_subsets_by_size()
                .into_iter()
                .any(|t| p.up(y).intersection(p.lower_bounds(t)).is_subset(p.down(z)));
            if !found {
                report
                    .fail(Witness::new("(9) no T with ub({y}) ∩ lb(T) ⊆ ↓z").elements(&[y, z]).subsets(&[s]));
                return report;
            }
        }
    }
    report
}

/// The literal search and the `B = A` shortcut give the same relations, and on
/// a finite poset both coincide with the order.
pub fn check_collapse_m(fam: &SelectionFamily) -> PropertyReport {
    let p = fam.poset();
    let literal = RelationMatrix::way_below_m(fam);
    let shortcut = RelationMatrix::way_below_m_shortcut(fam);
    let mut report = PropertyReport::holding(format!("≪_M collapses to <= [{}]", fam.name()));
    if !literal.same_pairs(&shortcut) {
        report.fail(Witness::new("literal search and B = A shortcut disagree"));
    }
    if let Some((x, y)) = first_difference(&literal, p) {
        report.fail(Witness::new("≪_M differs from <=").elements(&[x, y]));
    }
    report
}

pub fn check_collapse_mn(pair: &FamilyPair<'_>) -> PropertyReport {
    let p = pair.poset();
    let mut report = PropertyReport::holding(format!("≪_MN and ◁_MN collapse to <= [{}]", pair.name()));
    let checks = [
        (RelationMatrix::mn_way_below(pair), RelationMatrix::mn_way_below_shortcut(pair), "≪_MN"),
        (RelationMatrix::mn_triangle(pair), RelationMatrix::mn_triangle_shortcut(pair), "◁_MN"),
    ];
    for (literal, shortcut, name) in checks {
        if !literal.same_pairs(&shortcut) {
            report.fail(Witness::new(format!("{name}: literal search and shortcut disagree")));
        }
        if let Some((x, y)) = first_difference(&literal, p) {
            report.fail(Witness::new(format!("{name} differs from <=")).elements(&[x, y]));
        }
    }
    report
}

fn first_difference(rel: &RelationMatrix, p: &Poset) -> Option<(Elem, Elem)> {
    for x in p.elements() {
        for y in p.elements() {
            if rel.holds(x, y) != p.leq(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::{d4, p3};
    use crate::selection::{Selection, SelectionKind};

    fn fam(kind: SelectionKind, p: &Poset) -> SelectionFamily {
        Selection::builtin(kind).realize(p).unwrap()
    }

    #[test]
    fn ach_on_p3_way_below_is_the_order() {
        let f = fam(SelectionKind::ACh, &p3());
        assert!(way_below_m(&f, 0, 2));
        assert!(!way_below_m(&f, 2, 0));
        assert!(RelationMatrix::way_below_m(&f).equals_order(f.poset()));
        assert_eq!(m_arrows(&f, 2).down, SubsetMask::full(3));
    }

    #[test]
    fn bottom_is_way_below_everything() {
        let d = d4();
        for k in SelectionKind::ALL {
            let f = fam(k, &d);
            assert!((0..4).all(|x| way_below_m(&f, 0, x)), "{k}");
        }
        let dir = fam(SelectionKind::Dir, &d);
        assert!(RelationMatrix::way_below_m(&dir).equals_order(&d));
    }

    #[test]
    fn dir_filt_relations_on_p3_and_d4() {
        for p in [p3(), d4()] {
            let m = fam(SelectionKind::Dir, &p);
            let n = fam(SelectionKind::Filt, &p);
            let pair = FamilyPair::new(&m, &n).unwrap();
            assert!(RelationMatrix::mn_way_below(&pair).equals_order(&p));
            assert!(RelationMatrix::mn_triangle(&pair).equals_order(&p));
            assert!(check_aux_properties_mn(&pair).holds);
        }
        let d = d4();
        let (m, n) = (fam(SelectionKind::Dir, &d), fam(SelectionKind::Filt, &d));
        let pair = FamilyPair::new(&m, &n).unwrap();
        assert!(mn_way_below(&pair, 0, 3));
        assert!(mn_triangle(&pair, 0, 3));
        assert!((0..4).all(|y| mn_triangle(&pair, y, y)));
        let p = p3();
        let (m, n) = (fam(SelectionKind::Dir, &p), fam(SelectionKind::Filt, &p));
        let pair = FamilyPair::new(&m, &n).unwrap();
        assert_eq!(mn_arrows(&pair, 0).up, SubsetMask::from_elems([0, 2]));
    }

    #[test]
    fn pairs_on_different_posets_are_rejected() {
        let a = fam(SelectionKind::Dir, &p3());
        let b = fam(SelectionKind::Filt, &d4());
        assert!(FamilyPair::new(&a, &b).is_err());
    }

    #[test]
    fn aux_properties_small_cases() {
        let f = fam(SelectionKind::ACh, &p3());
        assert!(check_aux_properties_m(&f).holds);
        let single = Poset::chain(1);
        let f = fam(SelectionKind::Fin, &single);
        assert!(check_aux_properties_m(&f).holds);
        let pair = FamilyPair::new(&f, &f).unwrap();
        assert!(check_aux_properties_mn(&pair).holds);
    }

    #[test]
    fn finite_witness_prefers_small_subsets() {
        let d = d4();
        // ub({x}) = {x, top} ⊆ ↑x; singleton found first
        assert_eq!(
            finite_witness(&d, SubsetMask::from_elems([1, 2]), d.up(1)),
            Some(SubsetMask::singleton(1))
        );
        assert_eq!(
            finite_witness(&d, SubsetMask::from_elems([1, 2]), SubsetMask::singleton(3)),
            Some(SubsetMask::from_elems([1, 2]))
        );
        assert_eq!(finite_witness(&d, SubsetMask::singleton(1), SubsetMask::singleton(3)), None);
    }
}
