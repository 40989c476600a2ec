//! JSON documents exchanged by the command-line tool. Subsets are written as
//! label lists, never as bit masks.

use std::collections::BTreeMap;

use convlab_core::continuity::ContinuityVerdict;
use convlab_core::miner::{ArchivedWitness, Cell, MiningReport};
use convlab_core::{
    DirectedIndex, Net, Poset, PropertyReport, Provenance, SelectionFamily, SubsetMask, Topology, VERSION,
};
use serde::{Deserialize, Serialize};

use crate::dsl;
use crate::error::{LabError, Result};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            covers: p
                .covers()
                .into_iter()
                .map(|(x, y)| [p.label(x).to_string(), p.label(y).to_string()])
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        if self.elements.is_empty() {
            return Err(LabError::Parse { line: 1, msg: "no elements declared".into() });
        }
        let pairs: Vec<(String, String)> = self.covers.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        dsl::build(&self.elements, &pairs)
    }
}

pub fn labels_of(p: &Poset, s: SubsetMask) -> Vec<String> {
    s.iter().map(|x| p.label(x).to_string()).collect()
}

/// Members ordered by size, then by index order.
pub fn by_size(sets: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out = sets.to_vec();
    out.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionFamilyJson {
    pub selection: String,
    pub members: Vec<Vec<String>>,
    pub m_plus: Vec<Vec<String>>,
    pub m_minus: Vec<Vec<String>>,
}

impl SelectionFamilyJson {
    pub fn new(fam: &SelectionFamily) -> Self {
        let p = fam.poset();
        let list = |sets: &[SubsetMask]| by_size(sets).into_iter().map(|s| labels_of(p, s)).collect();
        SelectionFamilyJson {
            selection: fam.name().to_string(),
            members: list(fam.members()),
            m_plus: list(fam.m_plus()),
            m_minus: list(fam.m_minus()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyJson {
    pub opens: Vec<Vec<String>>,
}

impl TopologyJson {
    pub fn new(p: &Poset, t: &Topology) -> Self {
        TopologyJson { opens: by_size(t.opens()).into_iter().map(|s| labels_of(p, s)).collect() }
    }

    pub fn to_topology(&self, p: &Poset) -> Result<Topology> {
        let opens = self.opens.iter().map(|o| mask_of(p, o)).collect::<Result<Vec<_>>>()?;
        Ok(Topology::new(p.len(), opens)?)
    }
}

pub fn mask_of(p: &Poset, names: &[String]) -> Result<SubsetMask> {
    names.iter().map(|n| p.index_of(n).ok_or_else(|| LabError::UnknownElement(n.clone()))).collect()
}

/// The index preorder, either as a full `m × m` boolean matrix or as a list of
/// `[i, j]` pairs meaning `i <= j`, closed reflexively and transitively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexRel {
    Matrix(Vec<Vec<bool>>),
    Pairs(Vec<[usize; 2]>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetJson {
    pub index_rel: IndexRel,
    pub values: Vec<String>,
    #[serde(default = "explicit")]
    pub provenance: Provenance,
}

fn explicit() -> Provenance {
    Provenance::Explicit
}

impl NetJson {
    pub fn new(p: &Poset, net: &Net) -> Self {
        NetJson {
            index_rel: IndexRel::Matrix(net.index().to_matrix()),
            values: net.values().iter().map(|&v| p.label(v).to_string()).collect(),
            provenance: net.provenance().clone(),
        }
    }

    pub fn to_net(&self, p: &Poset) -> Result<Net> {
        let m = self.values.len();
        let index = match &self.index_rel {
            IndexRel::Matrix(rows) => {
                if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                    return Err(LabError::Usage(format!(
                        "index_rel must be a {m} x {m} matrix to match the values"
                    )));
                }
                DirectedIndex::new(m, |i, j| rows[i][j])?
            }
            IndexRel::Pairs(pairs) => {
                let edges: Vec<(usize, usize)> = pairs.iter().map(|&[i, j]| (i, j)).collect();
                DirectedIndex::from_edges(m, &edges)?
            }
        };
        let values = self
            .values
            .iter()
            .map(|v| p.index_of(v).ok_or_else(|| LabError::UnknownElement(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Net::new_in(p, index, values, self.provenance.clone())?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClauseJson {
    pub clause: String,
    pub holds: bool,
    pub sets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub notion: String,
    pub holds: bool,
    /// Keyed by the element, pair or triple the clauses are about, e.g. `"c"`
    /// or `"a,b"`.
    pub evidence: BTreeMap<String, Vec<ClauseJson>>,
}

impl VerdictJson {
    pub fn new(p: &Poset, v: &ContinuityVerdict) -> Self {
        let mut evidence: BTreeMap<String, Vec<ClauseJson>> = BTreeMap::new();
        for c in &v.evidence {
            let key = c.at.iter().map(|&x| p.label(x)).collect::<Vec<_>>().join(",");
            evidence.entry(key).or_default().push(ClauseJson {
                clause: c.clause.clone(),
                holds: c.holds,
                sets: c.sets.iter().map(|&s| labels_of(p, s)).collect(),
            });
        }
        VerdictJson { notion: v.notion.name().to_string(), holds: v.holds, evidence }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub clause: String,
    pub elements: Vec<String>,
    pub subsets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReportJson {
    pub name: String,
    pub holds: bool,
    pub witnesses: Vec<WitnessJson>,
    pub notes: Vec<String>,
}

impl PropertyReportJson {
    pub fn new(p: &Poset, r: &PropertyReport) -> Self {
        PropertyReportJson {
            name: r.name.clone(),
            holds: r.holds,
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    clause: w.clause.clone(),
                    elements: w
                        .elements
                        .iter()
                        .map(|&x| p.labels().get(x).cloned().unwrap_or_else(|| x.to_string()))
                        .collect(),
                    subsets: w.subsets.iter().map(|&s| labels_of(p, s)).collect(),
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArchivedWitnessJson {
    pub selection: String,
    pub premise: String,
    pub conclusion: String,
    pub poset: PosetJson,
}

impl ArchivedWitnessJson {
    pub fn new(w: &ArchivedWitness) -> Self {
        ArchivedWitnessJson {
            selection: w.selection.name().to_string(),
            premise: w.premise.name().to_string(),
            conclusion: w.conclusion.name().to_string(),
            poset: PosetJson::from_poset(&w.poset()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub selection: String,
    pub properties: Vec<String>,
    /// `"always"`, or the index of the smallest witness in the archive.
    pub cells: Vec<Vec<serde_json::Value>>,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MiningJson {
    pub instances: usize,
    pub matrices: Vec<MatrixJson>,
    pub archive: Vec<ArchivedWitnessJson>,
    pub shortcut_hits: usize,
    pub audited: usize,
    pub audit_mismatches: usize,
}

impl MiningJson {
    pub fn new(r: &MiningReport) -> Self {
        let matrices = r
            .matrices
            .iter()
            .map(|m| MatrixJson {
                selection: m.selection.name().to_string(),
                properties: m.properties.iter().map(|p| p.name().to_string()).collect(),
                cells: m
                    .cells
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| match c {
                                Cell::Always => serde_json::Value::from("always"),
                                Cell::Counterexample(w) => serde_json::json!({
                                    "counterexample": r.archive.iter().position(|a| a == w)
                                }),
                            })
                            .collect()
                    })
                    .collect(),
                support: m.support.clone(),
            })
            .collect();
        MiningJson {
            instances: r.instances,
            matrices,
            archive: r.archive.iter().map(ArchivedWitnessJson::new).collect(),
            shortcut_hits: r.shortcut_hits,
            audited: r.audited,
            audit_mismatches: r.audit_mismatches.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    pub caps: BTreeMap<String, u64>,
}

/// Versioned envelope for every JSON report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub header: Header,
    pub body: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(seed: Option<u64>, caps: &[(&str, u64)], body: T) -> Self {
        Envelope {
            schema: SCHEMA,
            header: Header {
                tool: "convlab".into(),
                version: VERSION.into(),
                seed,
                caps: caps.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            },
            body,
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_poset;
    use convlab_core::{Selection, SelectionKind};

    fn p3() -> Poset {
        parse_poset("elements: a b c; order: a<c b<c").unwrap()
    }

    #[test]
    fn poset_json_round_trip() {
        let p = p3();
        let text = serde_json::to_string(&PosetJson::from_poset(&p)).unwrap();
        assert_eq!(text, r#"{"elements":["a","b","c"],"covers":[["a","c"],["b","c"]]}"#);
        assert_eq!(parse_poset(&text).unwrap(), p);
    }

    #[test]
    fn family_json_lists_labels_by_size() {
        let p = p3();
        let fam = Selection::builtin(SelectionKind::ACh).realize(&p).unwrap();
        let v = serde_json::to_value(SelectionFamilyJson::new(&fam)).unwrap();
        assert_eq!(v["selection"], "ACh");
        assert_eq!(v["members"], serde_json::json!([["a"], ["b"], ["c"], ["a", "b"]]));
        assert_eq!(v["m_plus"], serde_json::json!([["a"], ["b"], ["c"], ["a", "b"]]));
        assert_eq!(v["m_minus"], serde_json::json!([["a"], ["b"], ["c"]]));
    }

    #[test]
    fn topology_json_round_trip() {
        let p = p3();
        let t = Topology::alexandrov(&p);
        let j = TopologyJson::new(&p, &t);
        assert_eq!(j.to_topology(&p).unwrap(), t);
    }

    #[test]
    fn net_json_round_trip_and_pairs_form() {
        let p = p3();
        let text = r#"{"index_rel": [[0,1],[1,2]], "values": ["a","b","c"]}"#;
        let net = serde_json::from_str::<NetJson>(text).unwrap().to_net(&p).unwrap();
        assert_eq!(net.values(), [0, 1, 2]);
        assert_eq!(*net.provenance(), Provenance::Explicit);
        let back = NetJson::new(&p, &net);
        let again = back.to_net(&p).unwrap();
        assert_eq!(again.index().to_matrix(), net.index().to_matrix());
        let j = serde_json::to_value(&back).unwrap();
        assert_eq!(j["provenance"], serde_json::json!({"kind": "explicit"}));
    }

    #[test]
    fn malformed_nets_are_rejected() {
        let p = p3();
        let bad = [
            r#"{"index_rel": [[true]], "values": ["a","b"]}"#,
            r#"{"index_rel": [[true,false],[false,true]], "values": ["a","b"]}"#,
            r#"{"index_rel": [], "values": ["z"]}"#,
        ];
        for text in bad {
            let parsed: std::result::Result<NetJson, _> = serde_json::from_str(text);
            assert!(parsed.map_err(LabError::from).and_then(|n| n.to_net(&p)).is_err(), "{text}");
        }
    }

    #[test]
    fn envelope_carries_schema_and_header() {
        let e = Envelope::new(Some(7), &[("n", 4)], serde_json::json!({}));
        let v: serde_json::Value = serde_json::from_str(&e.to_string_pretty()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["header"]["version"], VERSION);
        assert_eq!(v["header"]["seed"], 7);
        assert_eq!(v["header"]["caps"]["n"], 4);
    }
}
