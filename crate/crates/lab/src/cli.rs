//! The `convlab` command line. Exit codes: 0 success, 1 a checked property was
//! violated, 2 bad usage or input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand};
use convlab_core::characterize::{
    check_canonical_nets_m, check_canonical_nets_mn, check_net_characterization_m,
    check_net_characterization_mn,
};
use convlab_core::continuity::{
    is_alpha_m_continuous, is_continuous_poset, is_doubly_continuous, is_m_continuous, is_mn_continuous,
    is_rstar_doubly_continuous, topologicality_witness, zz07_class_membership, ContinuityVerdict,
};
use convlab_core::enumerate::{Dedup, DEFAULT_ENUMERATION_CAP};
use convlab_core::kelley::kelley_check;
use convlab_core::miner::{mine_with_progress, Cell, MinerJob, MiningReport, PropertyId};
use convlab_core::net::{tau_converges, Convergence};
use convlab_core::relations::{
    check_aux_properties_m, check_aux_properties_mn, check_collapse_m, check_collapse_mn,
};
use convlab_core::{
    FamilyPair, Poset, PropertyReport, RelationMatrix, SampleSpec, Selection, SelectionFamily, SelectionKind,
    SubsetMask, Topology,
};
use serde_json::json;

use crate::dot::{hasse_dot, specialization_dot};
use crate::dsl::{parse_poset, serialize_poset};
use crate::error::{LabError, Result};
use crate::formats::{
    by_size, labels_of, Envelope, MiningJson, NetJson, PosetJson, PropertyReportJson, SelectionFamilyJson,
    TopologyJson, VerdictJson,
};
use crate::parallel::enumerate_parallel;

pub const CAP_ENV: &str = "CONVLAB_CAP_N";

const PAPER_EXAMPLE_EXPECTED: &str = include_str!("../data/paper_example.txt");

#[derive(Debug, Parser)]
#[command(name = "convlab", version, about = "Net convergence structures on finite posets")]
pub struct Cli {
    /// Emit JSON instead of human-readable tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relations, theorem checks and continuity verdicts for one poset.
    Analyze {
        /// Poset file, `-` for stdin, or inline DSL text.
        poset: String,
        #[arg(long, short, default_value = "Dir")]
        selection: String,
        /// Second selection for the MN structure.
        #[arg(long)]
        mn: Option<String>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// The topology induced by the convergence structure.
    Topology {
        poset: String,
        #[arg(long, short, default_value = "Dir")]
        selection: String,
        #[arg(long)]
        mn: Option<String>,
        /// Print the specialisation order as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Decide convergence of a net given as JSON.
    Converge {
        poset: String,
        /// Net file or inline JSON.
        net: String,
        #[arg(long, short, default_value = "Dir")]
        selection: String,
        #[arg(long)]
        mn: Option<String>,
        /// Only test this candidate limit.
        #[arg(long)]
        limit: Option<String>,
    },
    /// Kelley's convergence axioms over seeded samples.
    Kelley {
        poset: String,
        #[arg(long, short, default_value = "Dir")]
        selection: String,
        #[arg(long)]
        mn: Option<String>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        nets: usize,
        #[arg(long, default_value_t = 50)]
        subnets: usize,
        #[arg(long, default_value_t = 50)]
        iterated: usize,
    },
    /// Search enumerated posets for implications between properties.
    Mine {
        /// Largest poset size.
        #[arg(long)]
        n: usize,
        /// Smallest poset size.
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, value_delimiter = ',', default_value = "Dir,Filt,fin,Ch,ACh")]
        selections: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "M-cts,alphaM-cts")]
        properties: Vec<String>,
        /// Enumerate labelled posets instead of isomorphism classes.
        #[arg(long)]
        labeled: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 0.125)]
        audit_rate: f64,
        /// Print every archived witness as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// The three-element antichain-selection example, diffed against the
    /// recorded output.
    PaperExample,
    /// List every poset of a given size.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        unlabeled: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Hasse diagram of a poset as DOT.
    Dot { poset: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Violation
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
        }
    }
}

/// Parse `args` and run, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let mut text = String::new();
    match execute(&cli, &mut text, err) {
        Ok(status) => {
            let _ = out.write_all(text.as_bytes());
            status.code()
        }
        Err(e) => {
            let _ = out.write_all(text.as_bytes());
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn execute(cli: &Cli, out: &mut String, err: &mut dyn Write) -> Result<Status> {
    let json = cli.json;
    match &cli.command {
        Command::Analyze { poset, selection, mn, seed } => {
            let p = load_poset(poset)?;
            analyze(&p, selection, mn.as_deref(), *seed, json, out)
        }
        Command::Topology { poset, selection, mn, dot } => {
            let p = load_poset(poset)?;
            topology(&p, selection, mn.as_deref(), *dot, json, out)
        }
        Command::Converge { poset, net, selection, mn, limit } => {
            let p = load_poset(poset)?;
            let net_json: NetJson = serde_json::from_str(&load_text(net)?)?;
            converge(&p, &net_json, selection, mn.as_deref(), limit.as_deref(), json, out)
        }
        Command::Kelley { poset, selection, mn, seed, nets, subnets, iterated } => {
            let p = load_poset(poset)?;
            let spec = SampleSpec {
                seed: *seed,
                nets: *nets,
                max_index: SampleSpec::default().max_index,
                subnets_per_net: *subnets,
                iterated: *iterated,
            };
            kelley(&p, selection, mn.as_deref(), &spec, json, out)
        }
        Command::Mine { n, from, selections, properties, labeled, seed, audit_rate, dot } => {
            let job = MinerJob {
                n_min: *from,
                n_max: *n,
                selections: selections.iter().map(|s| selection_kind(s)).collect::<Result<_>>()?,
                properties: properties
                    .iter()
                    .map(|s| s.parse::<PropertyId>().map_err(|e| LabError::Usage(e.to_string())))
                    .collect::<Result<_>>()?,
                dedup: if *labeled { Dedup::Labeled } else { Dedup::Unlabeled },
                seed: *seed,
                cap: enumeration_cap()?,
                audit_rate: *audit_rate,
                ..MinerJob::default()
            };
            if !(0.0..=1.0).contains(&job.audit_rate) {
                return Err(LabError::Usage("--audit-rate must lie in [0, 1]".into()));
            }
            mine(&job, *dot, json, out, err)
        }
        Command::PaperExample => paper_example(json, out),
        Command::Enumerate { n, unlabeled, dot } => {
            let dedup = if *unlabeled { Dedup::Unlabeled } else { Dedup::Labeled };
            let cap = enumeration_cap()?;
            let posets = enumerate_parallel(*n, dedup, cap)?;
            if json {
                let body: Vec<PosetJson> = posets.iter().map(PosetJson::from_poset).collect();
                writeln!(out, "{}", Envelope::new(None, &[("n", cap as u64)], body).to_string_pretty())
                    .unwrap();
            } else {
                for (i, p) in posets.iter().enumerate() {
                    if *dot {
                        out.push_str(&hasse_dot(p, &format!("P{i}")));
                    } else {
                        writeln!(out, "{}", serialize_poset(p)).unwrap();
                    }
                }
            }
            Ok(Status::Ok)
        }
        Command::Dot { poset } => {
            let p = load_poset(poset)?;
            out.push_str(&hasse_dot(&p, "P"));
            Ok(Status::Ok)
        }
    }
}

/// `CONVLAB_CAP_N` if set, otherwise the default enumeration cap.
pub fn enumeration_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| LabError::Usage(format!("{CAP_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

/// File contents, stdin for `-`, or the argument itself when it is inline
/// text rather than a path.
fn load_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| LabError::Io { path: "-".into(), source })?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.exists() || !(arg.contains(':') || arg.trim_start().starts_with('{')) {
        return std::fs::read_to_string(path).map_err(|source| LabError::Io { path: path.into(), source });
    }
    Ok(arg.to_string())
}

fn load_poset(arg: &str) -> Result<Poset> {
    parse_poset(&load_text(arg)?)
}

fn selection_kind(name: &str) -> Result<SelectionKind> {
    name.parse().map_err(|e: convlab_core::Error| LabError::Usage(e.to_string()))
}

fn realize(p: &Poset, name: &str) -> Result<SelectionFamily> {
    Ok(Selection::builtin(selection_kind(name)?).realize(p)?)
}

fn fmt_set(p: &Poset, s: SubsetMask) -> String {
    format!("{{{}}}", labels_of(p, s).join(","))
}

fn fmt_family(p: &Poset, sets: &[SubsetMask]) -> String {
    let parts: Vec<String> = by_size(sets).into_iter().map(|s| fmt_set(p, s)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_relation(p: &Poset, rel: &RelationMatrix, symbol: &str) -> String {
    let pairs: Vec<String> =
        rel.pairs().into_iter().map(|(x, y)| format!("{}{symbol}{}", p.label(x), p.label(y))).collect();
    pairs.join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_line(p: &Poset, r: &PropertyReport) -> String {
    match r.witnesses.first() {
        None => format!("  [ok]   {}", r.name),
        Some(w) => {
            let at: Vec<&str> = w.elements.iter().filter(|&&x| x < p.len()).map(|&x| p.label(x)).collect();
            format!("  [FAIL] {}: {} at ({})", r.name, w.clause, at.join(","))
        }
    }
}

fn verdict_line(p: &Poset, label: &str, v: &ContinuityVerdict) -> String {
    match v.first_failure() {
        None => format!("  {label}: yes"),
        Some(c) => {
            let at: Vec<&str> = c.at.iter().map(|&x| p.label(x)).collect();
            let sets: Vec<String> = c.sets.iter().map(|&s| fmt_set(p, s)).collect();
            format!("  {label}: no ({} fails at {}; {})", c.clause, at.join(","), sets.join(" "))
        }
    }
}

fn analyze(
    p: &Poset,
    selection: &str,
    mn: Option<&str>,
    seed: u64,
    json: bool,
    out: &mut String,
) -> Result<Status> {
    let fam = realize(p, selection)?;
    let spec = SampleSpec { seed, ..SampleSpec::default() };
    let wb = RelationMatrix::way_below_m(&fam);
    let mut checks = vec![
        check_aux_properties_m(&fam),
        check_collapse_m(&fam),
        check_canonical_nets_m(&fam)?,
        check_net_characterization_m(&fam, &spec)?,
        topologicality_witness(Convergence::M(&fam), &spec)?,
    ];
    let mut verdicts = vec![
        ("M-continuous", is_m_continuous(&fam)),
        ("alphaM-continuous", is_alpha_m_continuous(&fam)),
        ("continuous", is_continuous_poset(p)),
        ("doubly continuous", is_doubly_continuous(p)),
        ("R*-doubly continuous", is_rstar_doubly_continuous(p)?),
    ];
    let zz07 = zz07_class_membership(&fam);
    let meet = p.is_meet_continuous();
    let star = p.condition_star();
    let nfam = mn.map(|n| realize(p, n)).transpose()?;
    let pair = nfam.as_ref().map(|n| FamilyPair::new(&fam, n)).transpose()?;
    let mut mn_relations = None;
    if let Some(pair) = &pair {
        checks.push(check_aux_properties_mn(pair));
        checks.push(check_collapse_mn(pair));
        checks.push(check_canonical_nets_mn(pair)?);
        checks.push(check_net_characterization_mn(pair, &spec)?);
        checks.push(topologicality_witness(Convergence::MN(pair), &spec)?);
        verdicts.push(("MN-continuous", is_mn_continuous(pair)));
        mn_relations = Some((RelationMatrix::mn_way_below(pair), RelationMatrix::mn_triangle(pair)));
    }
    let status = Status::from_ok(checks.iter().all(|r| r.holds));
    if json {
        let body = json!({
            "poset": PosetJson::from_poset(p),
            "family": SelectionFamilyJson::new(&fam),
            "way_below_m": pairs_json(p, &wb),
            "way_below_m_is_order": wb.equals_order(p),
            "mn": pair.as_ref().zip(mn_relations.as_ref()).map(|(pair, (w, t))| json!({
                "pair": pair.name(),
                "way_below_mn": pairs_json(p, w),
                "triangle_mn": pairs_json(p, t),
            })),
            "checks": checks.iter().map(|r| PropertyReportJson::new(p, r)).collect::<Vec<_>>(),
            "verdicts": verdicts.iter().map(|(_, v)| VerdictJson::new(p, v)).collect::<Vec<_>>(),
            "zz07": PropertyReportJson::new(p, &zz07),
            "meet_continuous": PropertyReportJson::new(p, &meet),
            "condition_star": PropertyReportJson::new(p, &star),
        });
        writeln!(
            out,
            "{}",
            Envelope::new(Some(seed), &[("random_nets", spec.nets as u64)], body).to_string_pretty()
        )
        .unwrap();
        return Ok(status);
    }
    writeln!(out, "poset: {}", serialize_poset(p)).unwrap();
    writeln!(out, "selection: {}", fam.name()).unwrap();
    writeln!(out, "M(P)  = {}", fmt_family(p, fam.members())).unwrap();
    writeln!(out, "M+(P) = {}", fmt_family(p, fam.m_plus())).unwrap();
    writeln!(out, "M-(P) = {}", fmt_family(p, fam.m_minus())).unwrap();
    writeln!(out, "≪_M: {}", fmt_relation(p, &wb, "≪")).unwrap();
    writeln!(out, "≪_M = ≤: {}", yes_no(wb.equals_order(p))).unwrap();
    if let (Some(pair), Some((w, t))) = (&pair, &mn_relations) {
        writeln!(out, "pair: {}", pair.name()).unwrap();
        writeln!(out, "≪_MN: {}", fmt_relation(p, w, "≪")).unwrap();
        writeln!(out, "◁_MN: {}", fmt_relation(p, t, "◁")).unwrap();
    }
    writeln!(out, "checks:").unwrap();
    for r in &checks {
        writeln!(out, "{}", check_line(p, r)).unwrap();
    }
    writeln!(out, "verdicts:").unwrap();
    for (label, v) in &verdicts {
        writeln!(out, "{}", verdict_line(p, label, v)).unwrap();
    }
    writeln!(out, "  class hypotheses (1),(2): {}", yes_no(zz07.holds)).unwrap();
    writeln!(out, "  meet-continuous: {}", yes_no(meet.holds)).unwrap();
    writeln!(out, "  Condition (*): {}", yes_no(star.holds)).unwrap();
    Ok(status)
}

fn pairs_json(p: &Poset, rel: &RelationMatrix) -> serde_json::Value {
    rel.pairs().into_iter().map(|(x, y)| json!([p.label(x), p.label(y)])).collect()
}

fn topology(
    p: &Poset,
    selection: &str,
    mn: Option<&str>,
    dot: bool,
    json: bool,
    out: &mut String,
) -> Result<Status> {
    let fam = realize(p, selection)?;
    let nfam = mn.map(|n| realize(p, n)).transpose()?;
    let pair = nfam.as_ref().map(|n| FamilyPair::new(&fam, n)).transpose()?;
    let (name, t) = match &pair {
        Some(pair) => (format!("τ_MN {}", pair.name()), Topology::tau_mn(pair)?),
        None => (format!("τ_M [{}]", fam.name()), Topology::tau_m(&fam)?),
    };
    if dot {
        out.push_str(&specialization_dot(p, &t, "specialization")?);
        return Ok(Status::Ok);
    }
    let alexandrov = t == Topology::alexandrov(p);
    if json {
        let body = json!({
            "topology": name,
            "opens": TopologyJson::new(p, &t).opens,
            "alexandrov": alexandrov,
            "discrete": t.is_discrete(),
        });
        writeln!(out, "{}", Envelope::new(None, &[], body).to_string_pretty()).unwrap();
        return Ok(Status::Ok);
    }
    writeln!(out, "{name}").unwrap();
    writeln!(out, "opens ({}): {}", t.opens().len(), fmt_family(p, t.opens())).unwrap();
    writeln!(out, "Alexandrov: {}", yes_no(alexandrov)).unwrap();
    writeln!(out, "discrete: {}", yes_no(t.is_discrete())).unwrap();
    match t.specialization_poset() {
        Ok(s) => {
            let s = s.with_labels(p.labels().iter().cloned())?;
            writeln!(out, "specialization order: {}", serialize_poset(&s)).unwrap();
        }
        Err(_) => writeln!(out, "specialization order: not T0").unwrap(),
    }
    Ok(Status::Ok)
}

fn converge(
    p: &Poset,
    net_json: &NetJson,
    selection: &str,
    mn: Option<&str>,
    limit: Option<&str>,
    json: bool,
    out: &mut String,
) -> Result<Status> {
    let net = net_json.to_net(p)?;
    let fam = realize(p, selection)?;
    let nfam = mn.map(|n| realize(p, n)).transpose()?;
    let pair = nfam.as_ref().map(|n| FamilyPair::new(&fam, n)).transpose()?;
    let conv = match &pair {
        Some(pair) => Convergence::MN(pair),
        None => Convergence::M(&fam),
    };
    let tau = conv.induced_topology()?;
    let candidates: Vec<usize> = match limit {
        Some(l) => vec![p.index_of(l).ok_or_else(|| LabError::UnknownElement(l.into()))?],
        None => p.elements().collect(),
    };
    let rows: Vec<(usize, bool, bool)> =
        candidates.into_iter().map(|x| (x, conv.converges(&net, x), tau_converges(&tau, &net, x))).collect();
    let agree = rows.iter().all(|&(_, a, b)| a == b);
    if json {
        let body = json!({
            "structure": conv.name(),
            "net": NetJson::new(p, &net),
            "limits": rows.iter().map(|&(x, c, t)| json!({
                "element": p.label(x), "converges": c, "tau_converges": t,
            })).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", Envelope::new(None, &[], body).to_string_pretty()).unwrap();
    } else {
        writeln!(out, "{}", conv.name()).unwrap();
        for (x, c, t) in rows {
            writeln!(out, "{}: converges {}, τ-converges {}", p.label(x), yes_no(c), yes_no(t)).unwrap();
        }
    }
    Ok(Status::from_ok(agree))
}

fn kelley(
    p: &Poset,
    selection: &str,
    mn: Option<&str>,
    spec: &SampleSpec,
    json: bool,
    out: &mut String,
) -> Result<Status> {
    let fam = realize(p, selection)?;
    let nfam = mn.map(|n| realize(p, n)).transpose()?;
    let pair = nfam.as_ref().map(|n| FamilyPair::new(&fam, n)).transpose()?;
    let conv = match &pair {
        Some(pair) => Convergence::MN(pair),
        None => Convergence::M(&fam),
    };
    let report = kelley_check(conv, spec);
    if json {
        let caps = [
            ("random_nets", spec.nets as u64),
            ("subnets_per_net", spec.subnets_per_net as u64),
            ("iterated", spec.iterated as u64),
        ];
        let body = PropertyReportJson::new(p, &report);
        writeln!(out, "{}", Envelope::new(Some(spec.seed), &caps, body).to_string_pretty()).unwrap();
    } else {
        writeln!(out, "{}", check_line(p, &report)).unwrap();
        for n in &report.notes {
            writeln!(out, "  note: {n}").unwrap();
        }
    }
    Ok(Status::from_ok(report.holds))
}

fn mine(job: &MinerJob, dot: bool, json: bool, out: &mut String, err: &mut dyn Write) -> Result<Status> {
    let mut last_n = None;
    let report = mine_with_progress(job, |pr| {
        if pr.posets_done == pr.posets_total && last_n != Some(pr.n) {
            last_n = Some(pr.n);
            let _ = writeln!(err, "mined n = {}: {} posets", pr.n, pr.posets_total);
        }
    })?;
    let replay_ok = report.archive.iter().all(|w| w.replay().unwrap_or(false));
    let status = Status::from_ok(replay_ok && report.audit_mismatches.is_empty());
    if json {
        let caps = [("n_max", job.n_max as u64), ("cap", job.cap as u64)];
        writeln!(
            out,
            "{}",
            Envelope::new(Some(job.seed), &caps, MiningJson::new(&report)).to_string_pretty()
        )
        .unwrap();
        return Ok(status);
    }
    write_mining_tables(&report, out);
    if !replay_ok {
        writeln!(out, "some archived witnesses did not replay").unwrap();
    }
    if dot {
        for (i, w) in report.archive.iter().enumerate() {
            out.push_str(&hasse_dot(&w.poset(), &format!("witness{i}")));
        }
    }
    Ok(status)
}

fn write_mining_tables(report: &MiningReport, out: &mut String) {
    let width = report.job.properties.iter().map(|p| p.name().chars().count()).max().unwrap_or(0).max(8);
    for m in &report.matrices {
        writeln!(out, "selection {}: premise ⟹ conclusion", m.selection).unwrap();
        write!(out, "  {:width$}", "").unwrap();
        for c in &m.properties {
            write!(out, " {:>width$}", c.name()).unwrap();
        }
        out.push('\n');
        for (i, row) in m.cells.iter().enumerate() {
            write!(out, "  {:width$}", m.properties[i].name()).unwrap();
            for cell in row {
                let text = match cell {
                    Cell::Always => "always".to_string(),
                    Cell::Counterexample(w) => {
                        format!("#{}", report.archive.iter().position(|a| a == w).unwrap_or(0))
                    }
                };
                write!(out, " {text:>width$}").unwrap();
            }
            out.push('\n');
        }
    }
    if !report.archive.is_empty() {
        writeln!(out, "witnesses (premise holds, conclusion fails):").unwrap();
        for (i, w) in report.archive.iter().enumerate() {
            writeln!(
                out,
                "  #{i} [{}] {} ⟹ {}: {}",
                w.selection,
                w.premise,
                w.conclusion,
                serialize_poset(&w.poset())
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "instances: {}, shortcut values: {}, audited: {}, audit mismatches: {}",
        report.instances,
        report.shortcut_hits,
        report.audited,
        report.audit_mismatches.len()
    )
    .unwrap();
}

/// The antichain selection on `a < c, b < c`.
fn paper_example(json: bool, out: &mut String) -> Result<Status> {
    let p = parse_poset("elements: a b c; order: a<c b<c")?;
    let fam = realize(&p, "ACh")?;
    let wb = RelationMatrix::way_below_m(&fam);
    let m_cts = is_m_continuous(&fam);
    let alpha = is_alpha_m_continuous(&fam);
    let mut text = String::new();
    writeln!(text, "P = {{a, b, c}} with a < c, b < c").unwrap();
    writeln!(text, "M(P) = {}", fmt_family(&p, fam.members())).unwrap();
    writeln!(text, "≪_M = ≤: {}", yes_no(wb.equals_order(&p))).unwrap();
    writeln!(text, "M-continuous: {}", yes_no(m_cts.holds)).unwrap();
    match alpha.first_failure() {
        Some(c) => writeln!(
            text,
            "α(M)-continuous: no (⇊_M {} = {} is not in M(P))",
            p.label(c.at[0]),
            fmt_set(&p, c.sets[0])
        )
        .unwrap(),
        None => writeln!(text, "α(M)-continuous: yes").unwrap(),
    }
    let matches = text == PAPER_EXAMPLE_EXPECTED;
    if json {
        let body = json!({
            "family": SelectionFamilyJson::new(&fam),
            "way_below_m_is_order": wb.equals_order(&p),
            "m_continuous": VerdictJson::new(&p, &m_cts),
            "alpha_m_continuous": VerdictJson::new(&p, &alpha),
            "matches_recorded": matches,
        });
        writeln!(out, "{}", Envelope::new(None, &[], body).to_string_pretty()).unwrap();
    } else {
        out.push_str(&text);
        if !matches {
            writeln!(out, "--- differs from the recorded output:").unwrap();
            for (got, want) in text.lines().zip(PAPER_EXAMPLE_EXPECTED.lines()) {
                if got != want {
                    writeln!(out, "- {want}\n+ {got}").unwrap();
                }
            }
        }
    }
    Ok(Status::from_ok(matches))
}
