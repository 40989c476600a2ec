//! Structured verdicts returned by the property checkers.

use alloc::string::String;
use alloc::vec::Vec;

use crate::mask::SubsetMask;
use crate::poset::Elem;

/// One witness or counterexample record: the elements and subsets involved
/// plus a short description of the clause they witness.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub clause: String,
    pub elements: Vec<Elem>,
    pub subsets: Vec<SubsetMask>,
}

impl Witness {
    pub fn new(clause: impl Into<String>) -> Self {
        Witness { clause: clause.into(), ..Default::default() }
    }

    pub fn elements(mut self, elems: &[Elem]) -> Self {
        self.elements.extend_from_slice(elems);
        self
    }

    pub fn subsets(mut self, sets: &[SubsetMask]) -> Self {
        self.subsets.extend_from_slice(sets);
        self
    }
}

/// Verdict of a checker. A failing report always carries at least one witness.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PropertyReport {
    pub name: String,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn holding(name: impl Into<String>) -> Self {
        PropertyReport { name: name.into(), holds: true, witnesses: Vec::new(), notes: Vec::new() }
    }

    pub fn failing(name: impl Into<String>, witness: Witness) -> Self {
        PropertyReport { name: name.into(), holds: false, witnesses: alloc::vec![witness], notes: Vec::new() }
    }

    /// Record a violation; the report stops holding.
    pub fn fail(&mut self, witness: Witness) {
        self.holds = false;
        self.witnesses.push(witness);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note(note);
        self
    }

    /// Fold a sub-report into this one, prefixing its witnesses' clauses.
    pub fn absorb(&mut self, other: PropertyReport) {
        if !other.holds {
            self.holds = false;
        }
        for mut w in other.witnesses {
            w.clause = alloc::format!("{}: {}", other.name, w.clause);
            self.witnesses.push(w);
        }
        self.notes.extend(other.notes);
    }

    /// True when the witness invariant holds (`!holds` implies a witness).
    pub fn is_well_formed(&self) -> bool {
        self.holds || !self.witnesses.is_empty()
    }
}
