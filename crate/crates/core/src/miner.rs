//! Counterexample mining over enumerated posets: evaluate registered
//! properties on every instance and record, for each ordered pair of
//! properties, whether one always implies the other.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::continuity::{
    is_alpha_m_continuous, is_continuous_poset, is_doubly_continuous, is_m_continuous, is_mn_continuous,
    is_rstar_doubly_continuous, zz07_class_membership,
};
use crate::enumerate::{canonical_form, enumerate_posets_with_cap, Dedup, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::Poset;
use crate::relations::{FamilyPair, RelationMatrix};
use crate::sample;
use crate::selection::{Selection, SelectionFamily, SelectionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PropertyId {
    MCts,
    AlphaMCts,
    M1,
    Zz07,
    DirFiltCts,
    Rstar,
    Continuous,
    DoublyContinuous,
    MeetCts,
    ConditionStar,
}

impl PropertyId {
    pub const ALL: [PropertyId; 10] = [
        PropertyId::MCts,
        PropertyId::AlphaMCts,
        PropertyId::M1,
        PropertyId::Zz07,
        PropertyId::DirFiltCts,
        PropertyId::Rstar,
        PropertyId::Continuous,
        PropertyId::DoublyContinuous,
        PropertyId::MeetCts,
        PropertyId::ConditionStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::MCts => "M-cts",
            PropertyId::AlphaMCts => "alphaM-cts",
            PropertyId::M1 => "M1",
            PropertyId::Zz07 => "zz07",
            PropertyId::DirFiltCts => "DirFilt-cts",
            PropertyId::Rstar => "Rstar",
            PropertyId::Continuous => "continuous",
            PropertyId::DoublyContinuous => "doubly-continuous",
            PropertyId::MeetCts => "meet-cts",
            PropertyId::ConditionStar => "cond*",
        }
    }

    /// Whether the value depends on the selection under test.
    pub fn uses_selection(self) -> bool {
        matches!(self, PropertyId::MCts | PropertyId::AlphaMCts | PropertyId::M1 | PropertyId::Zz07)
    }

    /// The literal decision procedure.
    pub fn evaluate(self, inst: &Instance<'_>) -> Result<bool> {
        let p = inst.poset;
        Ok(match self {
            PropertyId::MCts => is_m_continuous(inst.fam).holds,
            PropertyId::AlphaMCts => is_alpha_m_continuous(inst.fam).holds,
            PropertyId::M1 => {
                is_m_continuous(inst.fam).evidence.iter().filter(|c| c.clause == "M1").all(|c| c.holds)
            }
            PropertyId::Zz07 => zz07_class_membership(inst.fam).holds,
            PropertyId::DirFiltCts => {
                let (dir, filt) = dir_filt(p)?;
                is_mn_continuous(&FamilyPair::new(&dir, &filt)?).holds
            }
            PropertyId::Rstar => is_rstar_doubly_continuous(p)?.holds,
            PropertyId::Continuous => is_continuous_poset(p).holds,
            PropertyId::DoublyContinuous => is_doubly_continuous(p).holds,
            PropertyId::MeetCts => p.is_meet_continuous().holds,
            PropertyId::ConditionStar => p.condition_star().holds,
        })
    }

    /// A value obtained from the finite collapse (`≪` equal to `<=`, decided by
    /// the `B = A` shortcut) when the collapse is observed, `None` otherwise.
    pub fn shortcut(self, inst: &Instance<'_>) -> Result<Option<bool>> {
        let p = inst.poset;
        let collapsed_m = || RelationMatrix::way_below_m_shortcut(inst.fam).equals_order(p);
        let down_sets_are_members = || p.elements().all(|x| inst.fam.contains(p.down(x)));
        Ok(match self {
            // singletons witness (M1); every upper set satisfies (TM2) with B = A
            PropertyId::MCts | PropertyId::M1 => collapsed_m().then_some(true),
            // ⇊x = ↓x, whose supremum is x
            PropertyId::AlphaMCts | PropertyId::Zz07 => collapsed_m().then(down_sets_are_members),
            PropertyId::DirFiltCts | PropertyId::Rstar => {
                let (dir, filt) = dir_filt(p)?;
                let pair = FamilyPair::new(&dir, &filt)?;
                let collapsed = RelationMatrix::mn_way_below_shortcut(&pair).equals_order(p)
                    && RelationMatrix::mn_triangle_shortcut(&pair).equals_order(p);
                collapsed.then_some(true)
            }
            _ => None,
        })
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(alloc::format!("unknown property `{s}`")))
    }
}

fn dir_filt(p: &Poset) -> Result<(SelectionFamily, SelectionFamily)> {
    Ok((
        Selection::builtin(SelectionKind::Dir).realize(p)?,
        Selection::builtin(SelectionKind::Filt).realize(p)?,
    ))
}

/// A poset together with the realised selection under test.
pub struct Instance<'a> {
    pub poset: &'a Poset,
    pub fam: &'a SelectionFamily,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MinerJob {
    pub n_min: usize,
    pub n_max: usize,
    pub selections: Vec<SelectionKind>,
    pub properties: Vec<PropertyId>,
    pub dedup: Dedup,
    pub seed: u64,
    /// Enumeration cap; `n_max` must not exceed it.
    pub cap: usize,
    /// Probability that a shortcut value is re-derived by the literal checker.
    pub audit_rate: f64,
    /// Separating instances kept per matrix cell.
    pub archive_limit: usize,
}

impl Default for MinerJob {
    fn default() -> Self {
        MinerJob {
            n_min: 1,
            n_max: 3,
            selections: SelectionKind::ORDER.to_vec(),
            properties: alloc::vec![PropertyId::MCts, PropertyId::AlphaMCts],
            dedup: Dedup::Unlabeled,
            seed: 0x5eed,
            cap: DEFAULT_ENUMERATION_CAP,
            audit_rate: 0.125,
            archive_limit: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Cell {
    Always,
    Counterexample(ArchivedWitness),
}

/// A replayable instance where `premise` holds and `conclusion` fails.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArchivedWitness {
    pub n: usize,
    pub selection: SelectionKind,
    pub premise: PropertyId,
    pub conclusion: PropertyId,
    /// `↑x` for each element.
    pub up_rows: Vec<SubsetMask>,
}

impl ArchivedWitness {
    pub fn poset(&self) -> Poset {
        Poset::from_relation(self.n, |x, y| self.up_rows[x].contains(y)).expect("archived rows form an order")
    }

    /// Re-run the literal checkers: the premise holds and the conclusion fails.
    pub fn replay(&self) -> Result<bool> {
        let p = self.poset();
        let fam = Selection::builtin(self.selection).realize(&p)?;
        let inst = Instance { poset: &p, fam: &fam };
        Ok(self.premise.evaluate(&inst)? && !self.conclusion.evaluate(&inst)?)
    }
}

/// `cells[i][j]` answers "does property `i` imply property `j`".
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ImplicationMatrix {
    pub selection: SelectionKind,
    pub properties: Vec<PropertyId>,
    pub cells: Vec<Vec<Cell>>,
    /// Instances on which property `i` held.
    pub support: Vec<usize>,
}

impl ImplicationMatrix {
    pub fn cell(&self, premise: PropertyId, conclusion: PropertyId) -> Option<&Cell> {
        let i = self.properties.iter().position(|&p| p == premise)?;
        let j = self.properties.iter().position(|&p| p == conclusion)?;
        Some(&self.cells[i][j])
    }

    pub fn implies(&self, premise: PropertyId, conclusion: PropertyId) -> Option<bool> {
        self.cell(premise, conclusion).map(|c| matches!(c, Cell::Always))
    }
}

/// A shortcut value that the literal checker contradicted.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditMismatch {
    pub selection: SelectionKind,
    pub property: PropertyId,
    pub up_rows: Vec<SubsetMask>,
    pub shortcut: bool,
    pub literal: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MiningReport {
    pub job: MinerJob,
    pub instances: usize,
    pub matrices: Vec<ImplicationMatrix>,
    /// Separating instances, sorted, at most `archive_limit` per cell.
    pub archive: Vec<ArchivedWitness>,
    pub shortcut_hits: usize,
    pub audited: usize,
    pub audit_mismatches: Vec<AuditMismatch>,
}

impl MiningReport {
    pub fn matrix(&self, selection: SelectionKind) -> Option<&ImplicationMatrix> {
        self.matrices.iter().find(|m| m.selection == selection)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub n: usize,
    pub posets_done: usize,
    pub posets_total: usize,
}

pub fn mine(job: &MinerJob) -> Result<MiningReport> {
    mine_with_progress(job, |_| {})
}

pub fn mine_with_progress(job: &MinerJob, mut progress: impl FnMut(Progress)) -> Result<MiningReport> {
    if job.n_max > job.cap {
        return Err(Error::SizeOverflow { what: "miner poset size", size: job.n_max, cap: job.cap });
    }
    let props = &job.properties;
    let k = props.len();
    let mut rng = sample::rng(sample::derive_seed(job.seed, 0x317e));
    let mut report = MiningReport {
        job: job.clone(),
        instances: 0,
        matrices: Vec::new(),
        archive: Vec::new(),
        shortcut_hits: 0,
        audited: 0,
        audit_mismatches: Vec::new(),
    };
    let mut cells: BTreeMap<SelectionKind, Vec<Vec<Vec<ArchivedWitness>>>> =
        job.selections.iter().map(|&s| (s, alloc::vec![alloc::vec![Vec::new(); k]; k])).collect();
    let mut support: BTreeMap<SelectionKind, Vec<usize>> =
        job.selections.iter().map(|&s| (s, alloc::vec![0; k])).collect();

    for n in job.n_min..=job.n_max {
        let posets = enumerate_posets_with_cap(n, job.dedup, job.cap)?;
        let total = posets.len();
        for (done, p) in posets.iter().enumerate() {
            // selection-independent values are shared across selections
            let mut shared: BTreeMap<PropertyId, bool> = BTreeMap::new();
            for &kind in &job.selections {
                let fam = Selection::builtin(kind).realize(p)?;
                let inst = Instance { poset: p, fam: &fam };
                let mut values = Vec::with_capacity(k);
                for &prop in props {
                    if let Some(&v) = (!prop.uses_selection()).then(|| shared.get(&prop)).flatten() {
                        values.push(v);
                        continue;
                    }
                    let v = match prop.shortcut(&inst)? {
                        Some(v) => {
                            report.shortcut_hits += 1;
                            if rng.gen_bool(job.audit_rate.clamp(0.0, 1.0)) {
                                report.audited += 1;
                                let literal = prop.evaluate(&inst)?;
                                if literal != v {
                                    report.audit_mismatches.push(AuditMismatch {
                                        selection: kind,
                                        property: prop,
                                        up_rows: p.up_rows().to_vec(),
                                        shortcut: v,
                                        literal,
                                    });
                                }
                                literal
                            } else {
                                v
                            }
                        }
                        None => prop.evaluate(&inst)?,
                    };
                    if !prop.uses_selection() {
                        shared.insert(prop, v);
                    }
                    values.push(v);
                }
                report.instances += 1;
                let sel_cells = cells.get_mut(&kind).expect("initialised");
                let sel_support = support.get_mut(&kind).expect("initialised");
                for i in 0..k {
                    if !values[i] {
                        continue;
                    }
                    sel_support[i] += 1;
                    for j in 0..k {
                        if !values[j] && sel_cells[i][j].len() < job.archive_limit {
                            sel_cells[i][j].push(ArchivedWitness {
                                n,
                                selection: kind,
                                premise: props[i],
                                conclusion: props[j],
                                up_rows: canonical_form(p).up_rows().to_vec(),
                            });
                        }
                    }
                }
            }
            progress(Progress { n, posets_done: done + 1, posets_total: total });
        }
    }

    for (kind, table) in cells {
        let mut rows = Vec::with_capacity(k);
        for row in table {
            let mut out = Vec::with_capacity(k);
            for mut found in row {
                found.sort();
                found.dedup();
                out.push(match found.first() {
                    Some(w) => Cell::Counterexample(w.clone()),
                    None => Cell::Always,
                });
                report.archive.extend(found);
            }
            rows.push(out);
        }
        report.matrices.push(ImplicationMatrix {
            selection: kind,
            properties: props.clone(),
            cells: rows,
            support: support.remove(&kind).unwrap_or_default(),
        });
    }
    report.matrices.sort_by_key(|m| job.selections.iter().position(|&s| s == m.selection));
    report.archive.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::is_isomorphic;
    use crate::poset::fixtures::p3;

    fn job(n_max: usize, sel: SelectionKind, props: &[PropertyId]) -> MinerJob {
        MinerJob {
            n_max,
            selections: alloc::vec![sel],
            properties: props.to_vec(),
            audit_rate: 1.0,
            ..MinerJob::default()
        }
    }

    #[test]
    fn ach_separates_m_from_alpha_m_continuity() {
        let r = mine(&job(3, SelectionKind::ACh, &[PropertyId::MCts, PropertyId::AlphaMCts])).unwrap();
        let m = r.matrix(SelectionKind::ACh).unwrap();
        assert_eq!(m.implies(PropertyId::MCts, PropertyId::AlphaMCts), Some(false));
        assert_eq!(m.implies(PropertyId::AlphaMCts, PropertyId::MCts), Some(true));
        assert_eq!(m.implies(PropertyId::MCts, PropertyId::MCts), Some(true));
        let Some(Cell::Counterexample(w)) = m.cell(PropertyId::MCts, PropertyId::AlphaMCts) else { panic!() };
        // the two-element chain is the smallest separating instance
        assert_eq!(w.n, 2);
        assert!(w.replay().unwrap());
        assert!(r.archive.iter().any(|w| w.premise == PropertyId::MCts && is_isomorphic(&w.poset(), &p3())));
        assert!(r.audit_mismatches.is_empty());
        assert!(r.audited > 0);
    }

    #[test]
    fn dir_has_no_counterexample() {
        let r = mine(&job(4, SelectionKind::Dir, &[PropertyId::MCts, PropertyId::AlphaMCts])).unwrap();
        let m = r.matrix(SelectionKind::Dir).unwrap();
        assert!(m.cells.iter().flatten().all(|c| *c == Cell::Always));
    }

    #[test]
    fn alpha_m_implies_m1_everywhere() {
        let r = mine(&MinerJob {
            n_max: 4,
            selections: SelectionKind::ALL.to_vec(),
            properties: alloc::vec![PropertyId::AlphaMCts, PropertyId::M1],
            ..MinerJob::default()
        })
        .unwrap();
        for m in &r.matrices {
            assert_eq!(m.implies(PropertyId::AlphaMCts, PropertyId::M1), Some(true));
        }
    }

    #[test]
    fn mining_is_deterministic_and_replayable() {
        let j = MinerJob { properties: PropertyId::ALL.to_vec(), ..MinerJob::default() };
        let a = mine(&j).unwrap();
        let b = mine(&j).unwrap();
        assert_eq!(a, b);
        assert!(a.audit_mismatches.is_empty());
        for w in &a.archive {
            assert!(w.replay().unwrap(), "{w:?}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let j = MinerJob { n_max: 9, ..MinerJob::default() };
        assert!(mine(&j).is_err());
    }
}
