//! Continuity notions as decision procedures, and the cross-checks tying them
//! to topologicality of the convergence structures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::mask::SubsetMask;
use crate::net::{tau_converges, Convergence};
use crate::poset::{Elem, Poset};
use crate::relations::{FamilyPair, RelationKind, RelationMatrix};
use crate::report::{PropertyReport, Witness};
use crate::sample::{self, SampleSpec};
use crate::selection::{Selection, SelectionFamily, SelectionKind};
use crate::topology::{is_open_tmn, satisfies_tm2, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Notion {
    M,
    #[cfg_attr(feature = "serde", serde(rename = "alphaM"))]
    AlphaM,
    MN,
    Rstar,
    #[cfg_attr(feature = "serde", serde(rename = "classical"))]
    Classical,
    #[cfg_attr(feature = "serde", serde(rename = "doubly"))]
    Doubly,
    IrrCts,
}

impl Notion {
    pub fn name(self) -> &'static str {
        match self {
            Notion::M => "M",
            Notion::AlphaM => "alphaM",
            Notion::MN => "MN",
            Notion::Rstar => "Rstar",
            Notion::Classical => "classical",
            Notion::Doubly => "doubly",
            Notion::IrrCts => "IrrCts",
        }
    }
}

impl core::fmt::Display for Notion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated clause at an element, pair or triple.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Clause {
    pub clause: String,
    pub at: Vec<Elem>,
    pub holds: bool,
    /// Witnessing sets when the clause holds, offending sets otherwise.
    pub sets: Vec<SubsetMask>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ContinuityVerdict {
    pub notion: Notion,
    pub holds: bool,
    pub evidence: Vec<Clause>,
}

impl ContinuityVerdict {
    fn new(notion: Notion) -> Self {
        ContinuityVerdict { notion, holds: true, evidence: Vec::new() }
    }

    fn record(&mut self, clause: impl Into<String>, at: &[Elem], holds: bool, sets: &[SubsetMask]) {
        self.holds &= holds;
        self.evidence.push(Clause { clause: clause.into(), at: at.to_vec(), holds, sets: sets.to_vec() });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.evidence.iter().filter(|c| !c.holds)
    }

    /// First failing clause, if any.
    pub fn first_failure(&self) -> Option<&Clause> {
        self.failures().next()
    }

    /// `holds` agrees with the conjunction of the clauses.
    pub fn is_consistent(&self) -> bool {
        self.holds == self.evidence.iter().all(|c| c.holds)
    }

    fn retag(mut self, notion: Notion) -> Self {
        self.notion = notion;
        self
    }
}

/// (M1) some `A ∈ M⁺(P)` inside `⇊_M x` has `x <= ⋁A`; (M2) `↟_M x` is an
/// upper set satisfying (TM2).
pub fn is_m_continuous(fam: &SelectionFamily) -> ContinuityVerdict {
    let p = fam.poset();
    let wb = RelationMatrix::way_below_m(fam);
    let mut v = ContinuityVerdict::new(Notion::M);
    for x in p.elements() {
        let down = wb.below(x);
        let witness = fam.plus_with_sup().find(|&(a, s)| a.is_subset(down) && p.leq(x, s)).map(|(a, _)| a);
        match witness {
            Some(a) => v.record("M1", &[x], true, &[a]),
            None => v.record("M1", &[x], false, &[down]),
        }
        let up = wb.above(x);
        v.record("M2 upper set", &[x], p.is_upper_set(up), &[up]);
        v.record("M2 (TM2)", &[x], satisfies_tm2(fam, up), &[up]);
    }
    v
}

/// `⇊_M x` is itself a member of `M(P)` with supremum `x`.
pub fn is_alpha_m_continuous(fam: &SelectionFamily) -> ContinuityVerdict {
    let p = fam.poset();
    let wb = RelationMatrix::way_below_m(fam);
    let mut v = ContinuityVerdict::new(Notion::AlphaM);
    for x in p.elements() {
        let down = wb.below(x);
        v.record("⇊_M x ∈ M(P)", &[x], fam.contains(down), &[down]);
        v.record("⋁⇊_M x = x", &[x], p.supremum(down) == Some(x), &[down]);
    }
    v
}

/// The two class hypotheses: `⇊_M x ∈ M(P)` and
/// `{y : ∃z, y ≪_M z ≪_M x} ∈ M(P)` for every `x`.
pub fn zz07_class_membership(fam: &SelectionFamily) -> PropertyReport {
    let p = fam.poset();
    let wb = RelationMatrix::way_below_m(fam);
    let mut report = PropertyReport::holding(format!("class hypotheses (1), (2) [{}]", fam.name()));
    for x in p.elements() {
        let down = wb.below(x);
        if !fam.contains(down) {
            report.fail(Witness::new("(1) ⇊_M x ∉ M(P)").elements(&[x]).subsets(&[down]));
        }
        let twice = down.iter().fold(SubsetMask::EMPTY, |acc, z| acc.union(wb.below(z)));
        if !fam.contains(twice) {
            report.fail(Witness::new("(2) ⇊_M ⇊_M x ∉ M(P)").elements(&[x]).subsets(&[twice]));
        }
    }
    report
}

/// (MN1) for every `x`, and (MN2) for every pair `(x, y)`.
pub fn is_mn_continuous(pair: &FamilyPair<'_>) -> ContinuityVerdict {
    let p = pair.poset();
    let wb = RelationMatrix::mn_way_below(pair);
    let tr = RelationMatrix::mn_triangle(pair);
    let mut v = ContinuityVerdict::new(Notion::MN);
    for x in p.elements() {
        let down = wb.below(x);
        let tri_up = tr.above(x);
        let witness = pair.pairs_at(x).find(|&(a, s)| a.is_subset(down) && s.is_subset(tri_up));
        match witness {
            Some((a, s)) => v.record("MN1", &[x], true, &[a, s]),
            None => v.record("MN1", &[x], false, &[down, tri_up]),
        }
    }
    for x in p.elements() {
        for y in p.elements() {
            let set = wb.above(x).intersection(tr.below(y));
            v.record("MN2", &[x, y], is_open_tmn(pair, set), &[set]);
        }
    }
    v
}

/// How the second R*-clause binds its variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RstarReading {
    /// `x ≪ y ◁ z` gives `a ≪ y ◁ s` with `↑a ∩ ↓s ⊆ ↟x ∩ ◺z`.
    #[default]
    Interpolating,
    /// `x ≪ y ◁ z` gives `a ≪ x ◁ s` with `↑a ∩ ↓s ⊆ ↟y ∩ ◺z`, verbatim.
    /// Fails whenever some `x < y` since `x` itself lies in `↑a ∩ ↓s`.
    Verbatim,
}

pub fn is_rstar_doubly_continuous(p: &Poset) -> Result<ContinuityVerdict> {
    is_rstar_doubly_continuous_with(p, RstarReading::default())
}

/// (R1) and (R2) over the order-convergence relations, which are `≪_MN` and
/// `◁_MN` for the pair (Dir, Filt).
pub fn is_rstar_doubly_continuous_with(p: &Poset, reading: RstarReading) -> Result<ContinuityVerdict> {
    let dir = Selection::builtin(SelectionKind::Dir).realize(p)?;
    let filt = Selection::builtin(SelectionKind::Filt).realize(p)?;
    let pair = FamilyPair::new(&dir, &filt)?;
    let wb = RelationMatrix::mn_way_below(&pair);
    let tr = RelationMatrix::mn_triangle(&pair);
    let mut v = ContinuityVerdict::new(Notion::Rstar);
    for x in p.elements() {
        let down = wb.below(x);
        let tri_up = tr.above(x);
        v.record("R1 ⇊x directed", &[x], p.is_directed(down), &[down]);
        v.record("R1 ⋁⇊x = x", &[x], p.supremum(down) == Some(x), &[down]);
        v.record("R1 triangle-up filtered", &[x], p.is_filtered(tri_up), &[tri_up]);
        v.record("R1 ⋀ triangle-up = x", &[x], p.infimum(tri_up) == Some(x), &[tri_up]);
    }
    for (x, y) in wb.pairs() {
        for z in tr.above(y).iter() {
            let (pivot, target) = match reading {
                RstarReading::Interpolating => (y, wb.above(x).intersection(tr.below(z))),
                RstarReading::Verbatim => (x, wb.above(y).intersection(tr.below(z))),
            };
            let found = wb.below(pivot).iter().find_map(|a| {
                tr.above(pivot)
                    .iter()
                    .find(|&s| p.up(a).intersection(p.down(s)).is_subset(target))
                    .map(|s| (a, s))
            });
            match found {
                Some((a, s)) => v.record("R2", &[x, y, z], true, &[SubsetMask::from_elems([a, s])]),
                None => v.record("R2", &[x, y, z], false, &[target]),
            }
        }
    }
    Ok(v)
}

/// The classical way-below relation: `x ≪ y` iff every directed `D` with an
/// existing `⋁D >= y` meets `↑x`.
pub fn classical_way_below(p: &Poset) -> RelationMatrix {
    let directed: Vec<(SubsetMask, Elem)> = p
        .carrier()
        .subsets()
        .filter(|&d| p.is_directed(d))
        .filter_map(|d| p.supremum(d).map(|s| (d, s)))
        .collect();
    RelationMatrix::from_fn(RelationKind::WayBelowM, "classical".into(), p.len(), |x, y| {
        directed.iter().filter(|&&(_, s)| p.leq(y, s)).all(|&(d, _)| d.meets(p.up(x)))
    })
}

/// `⇊x` is directed with supremum `x` for every `x`, using the classical
/// way-below relation.
pub fn is_continuous_poset(p: &Poset) -> ContinuityVerdict {
    let wb = classical_way_below(p);
    let mut v = ContinuityVerdict::new(Notion::Classical);
    for x in p.elements() {
        let down = wb.below(x);
        v.record("⇊x directed", &[x], p.is_directed(down), &[down]);
        v.record("⋁⇊x = x", &[x], p.supremum(down) == Some(x), &[down]);
    }
    v
}

/// `P` and its opposite are continuous. Clauses from the opposite are
/// prefixed with `op:`.
pub fn is_doubly_continuous(p: &Poset) -> ContinuityVerdict {
    let mut v = ContinuityVerdict::new(Notion::Doubly);
    for (prefix, q) in [("", p.clone()), ("op: ", p.opposite())] {
        for c in is_continuous_poset(&q).evidence {
            v.record(format!("{prefix}{}", c.clause), &c.at, c.holds, &c.sets);
        }
    }
    v
}

/// Irr-continuity of a T0 space: its specialisation poset is M-continuous for
/// the irreducible sets of the space itself.
pub fn is_irr_continuous(space: &Topology) -> Result<ContinuityVerdict> {
    let p = space.specialization_poset()?;
    let fam = Selection::with_topology(SelectionKind::Irr, space.clone()).realize(&p)?;
    Ok(is_m_continuous(&fam).retag(Notion::IrrCts))
}

/// Under Condition (*), order-convergence is topological exactly when `P` is
/// doubly continuous. Topologicality is decided through (Dir, Filt)-continuity.
pub fn check_condition_star_theorem(p: &Poset) -> Result<PropertyReport> {
    let mut report = PropertyReport::holding("Condition (*) ⟹ (topological ⟺ doubly continuous)");
    if !p.condition_star().holds {
        report.note("vacuous: Condition (*) fails");
        return Ok(report);
    }
    let dir = Selection::builtin(SelectionKind::Dir).realize(p)?;
    let filt = Selection::builtin(SelectionKind::Filt).realize(p)?;
    let pair = FamilyPair::new(&dir, &filt)?;
    let topological = is_mn_continuous(&pair).holds;
    let doubly = is_doubly_continuous(p).holds;
    if topological != doubly {
        report.fail(Witness::new(format!(
            "(Dir,Filt)-continuous = {topological} but doubly continuous = {doubly}"
        )));
    }
    Ok(report)
}

/// For every canonical net and every seeded random net, and every `x`:
/// convergence in the induced topology agrees with the structure's own
/// convergence. A disagreement is reported with the full net.
pub fn topologicality_witness(conv: Convergence<'_>, spec: &SampleSpec) -> Result<PropertyReport> {
    let p = conv.poset();
    let tau = conv.induced_topology()?;
    let mut nets = conv.canonical_nets()?;
    let canonical = nets.len();
    nets.extend(sample::random_nets(p, spec.nets, spec.max_index, spec.seed));
    let mut report = PropertyReport::holding(format!("topologicality of {}", conv.name()));
    for net in &nets {
        for x in p.elements() {
            let by_tau = tau_converges(&tau, net, x);
            let own = conv.converges(net, x);
            if by_tau != own {
                report.fail(
                    Witness::new(format!(
                        "τ-convergence {by_tau} vs structure {own}; index {:?}, values {:?}, {:?}",
                        net.index().to_matrix(),
                        net.values(),
                        net.provenance()
                    ))
                    .elements(&[x]),
                );
            }
        }
    }
    report.note(format!(
        "{canonical} canonical and {} random nets, {} candidate limits each",
        spec.nets,
        p.len()
    ));
    Ok(report)
}
