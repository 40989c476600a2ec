//! Minimal subset selections and their realised families `M(P)`, `M⁺(P)`, `M⁻(P)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{Elem, Poset};
use crate::topology::Topology;

/// Largest carrier whose `2^n` subsets are enumerated by default.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// The built-in selections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SelectionKind {
    /// Directed subsets.
    Dir,
    /// Filtered subsets.
    Filt,
    /// Nonempty finite subsets.
    Fin,
    /// Nonempty chains.
    Ch,
    /// Nonempty antichains.
    ACh,
    /// Irreducible subsets of a space.
    Irr,
    /// Nonempty compact subsets of a space.
    Cpt,
    /// Connected subsets of a space.
    Con,
}

impl SelectionKind {
    pub const ALL: [SelectionKind; 8] = [
        SelectionKind::Dir,
        SelectionKind::Filt,
        SelectionKind::Fin,
        SelectionKind::Ch,
        SelectionKind::ACh,
        SelectionKind::Irr,
        SelectionKind::Cpt,
        SelectionKind::Con,
    ];

    /// The selections defined purely from the order.
    pub const ORDER: [SelectionKind; 5] =
        [SelectionKind::Dir, SelectionKind::Filt, SelectionKind::Fin, SelectionKind::Ch, SelectionKind::ACh];

    pub fn name(self) -> &'static str {
        match self {
            SelectionKind::Dir => "Dir",
            SelectionKind::Filt => "Filt",
            SelectionKind::Fin => "fin",
            SelectionKind::Ch => "Ch",
            SelectionKind::ACh => "ACh",
            SelectionKind::Irr => "Irr",
            SelectionKind::Cpt => "Cpt",
            SelectionKind::Con => "Con",
        }
    }

    pub fn needs_topology(self) -> bool {
        matches!(self, SelectionKind::Irr | SelectionKind::Cpt | SelectionKind::Con)
    }
}

impl fmt::Display for SelectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SelectionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSelection(s.to_string()))
    }
}

type RuleFn = dyn Fn(&Poset, SubsetMask) -> bool + Send + Sync;

#[derive(Clone)]
enum Rule {
    Builtin(SelectionKind, Option<Topology>),
    Explicit(Vec<SubsetMask>),
    Custom(Arc<RuleFn>),
}

/// A named membership rule producing `M(P)` for a poset.
#[derive(Clone)]
pub struct Selection {
    name: String,
    rule: Rule,
    notes: Vec<String>,
}

impl fmt::Debug for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Selection").field("name", &self.name).finish()
    }
}

impl Selection {
    /// A built-in selection. The space-based kinds (`Irr`, `Cpt`, `Con`) use the
    /// Alexandrov topology of the poset they are realised on.
    pub fn builtin(kind: SelectionKind) -> Self {
        Selection { name: kind.name().to_string(), rule: Rule::Builtin(kind, None), notes: Vec::new() }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        name.parse().map(Selection::builtin)
    }

    /// A space-based selection over an explicit topology on the carrier.
    pub fn with_topology(kind: SelectionKind, topology: Topology) -> Self {
        Selection {
            name: kind.name().to_string(),
            rule: Rule::Builtin(kind, Some(topology)),
            notes: Vec::new(),
        }
    }

    /// The minimal closure of an explicit list: the listed sets plus all
    /// singletons, with `∅` dropped. Repairs are recorded in the notes.
    pub fn from_explicit(p: &Poset, sets: &[SubsetMask]) -> Self {
        let mut notes = Vec::new();
        let mut kept = Vec::new();
        for &s in sets {
            if s.is_empty() {
                notes.push("dropped the empty set".to_string());
            } else if !s.is_subset(p.carrier()) {
                notes.push(format!("dropped {s:?}: not a subset of the carrier"));
            } else if !kept.contains(&s) {
                kept.push(s);
            }
        }
        let missing = p.elements().filter(|&x| !kept.contains(&SubsetMask::singleton(x))).count();
        if missing > 0 {
            notes.push(format!("added {missing} missing singleton(s)"));
        }
        Selection { name: "explicit".to_string(), rule: Rule::Explicit(kept), notes }
    }

    /// An arbitrary user rule. Realisation fails if the rule rejects a
    /// singleton or accepts the empty set.
    pub fn custom(
        name: impl Into<String>,
        rule: impl Fn(&Poset, SubsetMask) -> bool + Send + Sync + 'static,
    ) -> Self {
        Selection { name: name.into(), rule: Rule::Custom(Arc::new(rule)), notes: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Option<SelectionKind> {
        match self.rule {
            Rule::Builtin(k, _) => Some(k),
            _ => None,
        }
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn realize(&self, p: &Poset) -> Result<SelectionFamily> {
        self.realize_with_cap(p, DEFAULT_SUBSET_CAP)
    }

    /// Enumerate all nonempty subsets of `P`, keep the members, and split off
    /// those with a supremum / infimum.
    pub fn realize_with_cap(&self, p: &Poset, cap: usize) -> Result<SelectionFamily> {
        let n = p.len();
        if n > cap {
            return Err(Error::SizeOverflow { what: "selection realisation", size: n, cap });
        }
        let alexandrov;
        let membership: alloc::boxed::Box<dyn Fn(SubsetMask) -> bool + '_> = match &self.rule {
            Rule::Builtin(kind, topo) => {
                let topo = match topo {
                    Some(t) => {
                        if t.carrier_size() != n {
                            return Err(Error::CarrierMismatch { expected: n, found: t.carrier_size() });
                        }
                        t
                    }
                    None => {
                        alexandrov = Topology::alexandrov(p);
                        &alexandrov
                    }
                };
                let kind = *kind;
                alloc::boxed::Box::new(move |a| builtin_member(kind, p, topo, a))
            }
            Rule::Explicit(sets) => {
                alloc::boxed::Box::new(move |a: SubsetMask| a.is_singleton() || sets.contains(&a))
            }
            Rule::Custom(f) => alloc::boxed::Box::new(move |a| f(p, a)),
        };

        if membership(SubsetMask::EMPTY) {
            return Err(Error::MinimalityViolation {
                selection: self.name.clone(),
                subset: SubsetMask::EMPTY,
            });
        }
        let mut members = Vec::new();
        for a in SubsetMask::all(n).skip(1) {
            let keep = membership(a);
            if a.is_singleton() && !keep {
                return Err(Error::MinimalityViolation { selection: self.name.clone(), subset: a });
            }
            if keep {
                members.push(a);
            }
        }
        Ok(SelectionFamily::from_members(self.name.clone(), p.clone(), members, self.notes.clone()))
    }
}

fn builtin_member(kind: SelectionKind, p: &Poset, topo: &Topology, a: SubsetMask) -> bool {
    if a.is_empty() {
        return false;
    }
    match kind {
        SelectionKind::Dir => p.is_directed(a),
        SelectionKind::Filt => p.is_filtered(a),
        SelectionKind::Fin => true,
        SelectionKind::Ch => p.is_chain(a),
        SelectionKind::ACh => p.is_antichain(a),
        SelectionKind::Irr => topo.is_irreducible(a),
        // every subset of a finite space is compact
        SelectionKind::Cpt => true,
        SelectionKind::Con => topo.is_connected(a),
    }
}

/// A realised selection on one poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionFamily {
    name: String,
    poset: Poset,
    members: Vec<SubsetMask>,
    m_plus: Vec<SubsetMask>,
    sups: Vec<Elem>,
    m_minus: Vec<SubsetMask>,
    infs: Vec<Elem>,
    notes: Vec<String>,
}

impl SelectionFamily {
    fn from_members(name: String, poset: Poset, mut members: Vec<SubsetMask>, notes: Vec<String>) -> Self {
        members.sort();
        members.dedup();
        let mut m_plus = Vec::new();
        let mut sups = Vec::new();
        let mut m_minus = Vec::new();
        let mut infs = Vec::new();
        for &a in &members {
            if let Some(s) = poset.supremum(a) {
                m_plus.push(a);
                sups.push(s);
            }
            if let Some(i) = poset.infimum(a) {
                m_minus.push(a);
                infs.push(i);
            }
        }
        SelectionFamily { name, poset, members, m_plus, sups, m_minus, infs, notes }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// `M(P)` in ascending mask order.
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    /// `M⁺(P)`: members with a supremum.
    pub fn m_plus(&self) -> &[SubsetMask] {
        &self.m_plus
    }

    /// `M⁻(P)`: members with an infimum.
    pub fn m_minus(&self) -> &[SubsetMask] {
        &self.m_minus
    }

    /// Members of `M⁺(P)` paired with their suprema.
    pub fn plus_with_sup(&self) -> impl Iterator<Item = (SubsetMask, Elem)> + '_ {
        self.m_plus.iter().copied().zip(self.sups.iter().copied())
    }

    /// Members of `M⁻(P)` paired with their infima.
    pub fn minus_with_inf(&self) -> impl Iterator<Item = (SubsetMask, Elem)> + '_ {
        self.m_minus.iter().copied().zip(self.infs.iter().copied())
    }

    pub fn contains(&self, a: SubsetMask) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Both minimality invariants: no empty member, every singleton present.
    pub fn is_minimal(&self) -> bool {
        self.members.iter().all(|a| !a.is_empty())
            && self.poset.elements().all(|x| self.contains(SubsetMask::singleton(x)))
    }
}
