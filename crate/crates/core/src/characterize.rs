//! Cross-checks between the set-based definitions and their net
//! characterisations: canonical nets converge where they should, openness
//! through (TM2) agrees with openness through canonical nets, and the
//! relations are exactly "every converging net is eventually in ...".

use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::mask::SubsetMask;
use crate::net::{
    canonical_m_nets, canonical_mn_nets, is_open_via_canonical_mn_nets, is_open_via_canonical_nets,
    m_converges, mn_converges, Eventuality, Net,
};
use crate::relations::{FamilyPair, RelationMatrix};
use crate::report::{PropertyReport, Witness};
use crate::sample::{self, SampleSpec};
use crate::selection::SelectionFamily;
use crate::topology::{is_open_tm, is_open_tmn};

/// `I_A` M-converges to `⋁A` for every `A ∈ M⁺(P)`, and for every subset `V`
/// the (TM1)+(TM2) test agrees with the canonical-net test.
pub fn check_canonical_nets_m(fam: &SelectionFamily) -> Result<PropertyReport> {
    let p = fam.poset();
    let nets = canonical_m_nets(fam)?;
    let mut report = PropertyReport::holding(format!("canonical nets I_A [{}]", fam.name()));
    for (a, sup, net) in &nets {
        if !m_converges(fam, net, *sup) {
            report.fail(Witness::new("I_A does not M-converge to ⋁A").elements(&[*sup]).subsets(&[*a]));
        }
    }
    for v in p.carrier().subsets() {
        if is_open_tm(fam, v) != is_open_via_canonical_nets(fam, &nets, v) {
            report.fail(Witness::new("(TM1)+(TM2) and canonical nets disagree on openness").subsets(&[v]));
        }
    }
    report.note(format!("{} canonical nets, {} candidate open sets", nets.len(), 1u64 << p.len()));
    Ok(report)
}

/// `I_AS` MN-converges to `⋁A = ⋀S`, and MN-openness agrees with the
/// canonical-net test on every subset.
pub fn check_canonical_nets_mn(pair: &FamilyPair<'_>) -> Result<PropertyReport> {
    let p = pair.poset();
    let nets = canonical_mn_nets(pair)?;
    let mut report = PropertyReport::holding(format!("canonical nets I_AS [{}]", pair.name()));
    for (a, s, x, net) in &nets {
        if !mn_converges(pair, net, *x) {
            report.fail(
                Witness::new("I_AS does not MN-converge to ⋁A = ⋀S").elements(&[*x]).subsets(&[*a, *s]),
            );
        }
    }
    for v in p.carrier().subsets() {
        if is_open_tmn(pair, v) != is_open_via_canonical_mn_nets(&nets, v) {
            report.fail(Witness::new("MN-openness and canonical nets disagree").subsets(&[v]));
        }
    }
    report.note(format!("{} canonical nets, {} candidate open sets", nets.len(), 1u64 << p.len()));
    Ok(report)
}

/// `x ≪_M y` iff every net M-converging to `y` is eventually in `↑x`. The
/// universal side ranges over the canonical nets `I_A` with `y <= ⋁A`, which
/// decide it exactly, and over seeded random nets converging to `y`.
pub fn check_net_characterization_m(fam: &SelectionFamily, spec: &SampleSpec) -> Result<PropertyReport> {
    let p = fam.poset();
    let wb = RelationMatrix::way_below_m(fam);
    let canonical = canonical_m_nets(fam)?;
    let random = sample::random_nets(p, spec.nets, spec.max_index, spec.seed);
    let mut report = PropertyReport::holding(format!("≪_M via nets [{}]", fam.name()));
    for y in p.elements() {
        let mut towards_y: Vec<&Net> = Vec::new();
        for (a, sup, net) in &canonical {
            if p.leq(y, *sup) {
                if !m_converges(fam, net, y) {
                    report
                        .fail(Witness::new("I_A does not M-converge below ⋁A").elements(&[y]).subsets(&[*a]));
                }
                towards_y.push(net);
            }
        }
        let sampled: Vec<&Net> = random.iter().filter(|n| m_converges(fam, *n, y)).collect();
        for x in p.elements() {
            let target = p.up(x);
            let by_canonical = towards_y.iter().all(|n| n.eventually(target));
            if wb.holds(x, y) != by_canonical {
                report.fail(Witness::new("≪_M disagrees with canonical nets").elements(&[x, y]));
            }
            if wb.holds(x, y) {
                if let Some(n) = sampled.iter().find(|n| !n.eventually(target)) {
                    report.fail(
                        Witness::new(format!("random net {:?} converges to y but leaves ↑x", n.values()))
                            .elements(&[x, y]),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// The three net characterisations of `≪_MN`, `◁_MN` and their composite,
/// over canonical nets `I_AS` with `⋁A = ⋀S = y` and seeded random nets.
pub fn check_net_characterization_mn(pair: &FamilyPair<'_>, spec: &SampleSpec) -> Result<PropertyReport> {
    let p = pair.poset();
    let wb = RelationMatrix::mn_way_below(pair);
    let tr = RelationMatrix::mn_triangle(pair);
    let canonical = canonical_mn_nets(pair)?;
    let random = sample::random_nets(p, spec.nets, spec.max_index, spec.seed);
    let mut report = PropertyReport::holding(format!("≪_MN and ◁_MN via nets [{}]", pair.name()));
    for y in p.elements() {
        let towards_y: Vec<&Net> =
            canonical.iter().filter(|&&(_, _, v, _)| v == y).map(|(_, _, _, n)| n).collect();
        let sampled: Vec<&Net> = random.iter().filter(|n| mn_converges(pair, *n, y)).collect();
        let every = |nets: &[&Net], s: SubsetMask| nets.iter().all(|n| n.eventually(s));
        for x in p.elements() {
            let clauses =
                [("(5)", wb.holds(x, y), p.up(x), [x, y]), ("(6)", tr.holds(y, x), p.down(x), [y, x])];
            for (name, rel, target, at) in clauses {
                if rel != every(&towards_y, target) {
                    report.fail(
                        Witness::new(format!("{name} relation disagrees with canonical nets")).elements(&at),
                    );
                }
                if rel && !every(&sampled, target) {
                    report
                        .fail(Witness::new(format!("{name} a random converging net escapes")).elements(&at));
                }
            }
            for z in p.elements() {
                let rel = wb.holds(x, y) && tr.holds(y, z);
                let target = p.up(x).intersection(p.down(z));
                if rel != every(&towards_y, target) {
                    report.fail(
                        Witness::new("(7) composite disagrees with canonical nets").elements(&[x, y, z]),
                    );
                }
                if rel && !every(&sampled, target) {
                    report.fail(Witness::new("(7) a random converging net escapes").elements(&[x, y, z]));
                }
            }
        }
    }
    Ok(report)
}
