//! Kelley's axioms for a net convergence structure, checked on a finite poset:
//! (Constants) exactly, (Subnets) and (Iterated limits) over seeded samples.
//!
//! (Divergence) quantifies over all subnets of all subnets and is not checked
//! directly. On a finite poset it follows from the structure being
//! topological, which [`crate::continuity::topologicality_witness`] confirms.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::mask::SubsetMask;
use crate::net::{
    canonical_net_from_mset, iterated_limit_net, m_convergence_witness, subnet, Convergence, DirectedIndex,
    Eventuality, IteratedNet, Net, Provenance, DEFAULT_ITERATED_CAP, DEFAULT_MATERIALIZE_CAP,
};
use crate::poset::Elem;
use crate::relations::RelationMatrix;
use crate::report::{PropertyReport, Witness};
use crate::sample::{self, SampleSpec};
use crate::selection::SelectionFamily;

/// Explicit nets small enough to cross-check against their materialised index.
const CROSS_CHECK_SIZE: u64 = 512;

pub fn kelley_check(conv: Convergence<'_>, spec: &SampleSpec) -> PropertyReport {
    let mut report = PropertyReport::holding(format!("Kelley axioms for {}", conv.name()));
    report.absorb(check_constants(conv));
    if spec.is_empty() {
        report.note("sample spec is empty: (Subnets) and (Iterated limits) hold vacuously");
    } else {
        let pool = match net_pool(conv, spec) {
            Ok(pool) => pool,
            Err(e) => {
                report.fail(Witness::new(format!("could not build canonical nets: {e}")));
                return report;
            }
        };
        report.absorb(check_subnets(conv, &pool, spec));
        report.absorb(check_iterated_limits(conv, &pool, spec));
    }
    report.note("(Divergence) is implied by topologicality, not checked directly");
    report
}

/// Canonical nets plus seeded random nets, each with its limit set.
fn net_pool(conv: Convergence<'_>, spec: &SampleSpec) -> Result<Vec<(Net, SubsetMask)>> {
    let p = conv.poset();
    let mut nets = conv.canonical_nets()?;
    nets.extend(sample::random_nets(p, spec.nets, spec.max_index, spec.seed));
    Ok(nets
        .into_iter()
        .map(|n| {
            let lim = conv.limits(&n);
            (n, lim)
        })
        .collect())
}

pub fn check_constants(conv: Convergence<'_>) -> PropertyReport {
    let mut report = PropertyReport::holding("(Constants)");
    for x in conv.poset().elements() {
        if !conv.converges(&Net::constant(x), x) {
            report.fail(Witness::new("constant net does not converge to its value").elements(&[x]));
        }
    }
    report
}

fn check_subnets(conv: Convergence<'_>, pool: &[(Net, SubsetMask)], spec: &SampleSpec) -> PropertyReport {
    let mut report = PropertyReport::holding("(Subnets)");
    let mut tested = 0usize;
    for (k, (net, limits)) in pool.iter().enumerate() {
        if limits.is_empty() {
            continue;
        }
        let mut r = sample::rng(sample::derive_seed(spec.seed ^ 0x5b, k as u64));
        for s in 0..spec.subnets_per_net {
            let m = r.gen_range(1..=spec.max_index.max(1));
            let child = sample::random_index(&mut r, m);
            let h = sample::random_cofinal_map(&mut r, net.index(), &child, s % 2 == 0);
            let sub = match subnet(net, child, &h) {
                Ok(sub) => sub,
                Err(e) => {
                    report.fail(Witness::new(format!("sampler produced an invalid subnet map: {e}")));
                    return report;
                }
            };
            tested += 1;
            let lost = limits.difference(conv.limits(&sub));
            if let Some(x) = lost.first() {
                report.fail(
                    Witness::new(format!(
                        "subnet loses limit; parent {:?} values {:?}, map {:?}",
                        net.provenance(),
                        net.values(),
                        h
                    ))
                    .elements(&[x]),
                );
                return report;
            }
        }
    }
    report.note(format!("(Subnets): {tested} sampled subnets preserved every limit"));
    report
}

fn check_iterated_limits(
    conv: Convergence<'_>,
    pool: &[(Net, SubsetMask)],
    spec: &SampleSpec,
) -> PropertyReport {
    let mut report = PropertyReport::holding("(Iterated limits)");
    let convergent: Vec<&(Net, SubsetMask)> = pool.iter().filter(|(_, l)| !l.is_empty()).collect();
    if convergent.is_empty() {
        report.note("(Iterated limits): no convergent nets, holds vacuously");
        return report;
    }
    let p = conv.poset();
    let mut r = sample::rng(sample::derive_seed(spec.seed ^ 0x17, 0));
    let mut cross_checked = 0usize;
    for _ in 0..spec.iterated {
        let (outer, limits) = *convergent.choose(&mut r).expect("nonempty pool");
        let lims: Vec<Elem> = limits.iter().collect();
        let x = *lims.choose(&mut r).expect("nonempty");
        let mut inner: Vec<Net> = outer
            .values()
            .iter()
            .map(|&v| {
                let options: Vec<&Net> =
                    convergent.iter().filter(|(_, l)| l.contains(v)).map(|(n, _)| n).collect();
                options.choose(&mut r).map(|n| (*n).clone()).unwrap_or_else(|| Net::constant(v))
            })
            .collect();
        let it = loop {
            match iterated_limit_net(outer, inner.clone()) {
                Ok(it) => break it,
                Err(_) => {
                    // shrink the largest inner net to a constant until K fits the cap
                    let (big, _) = inner.iter().enumerate().max_by_key(|(_, n)| n.len()).expect("nonempty");
                    let v = inner[big].values()[0];
                    inner[big] = constant_limit(conv, &inner[big], v);
                }
            }
        };
        if !conv.converges(&it, x) {
            report.fail(
                Witness::new(format!(
                    "iterated net fails to converge to the outer limit; outer values {:?}",
                    outer.values()
                ))
                .elements(&[x]),
            );
            return report;
        }
        if it.size() <= CROSS_CHECK_SIZE {
            cross_checked += 1;
            match it.materialize(DEFAULT_MATERIALIZE_CAP) {
                Ok(explicit) => {
                    let disagree = SubsetMask::all(p.len())
                        .find(|&s| explicit.eventually_by_scan(s) != it.eventually(s));
                    if let Some(s) = disagree {
                        report.fail(
                            Witness::new("implicit and materialised product index disagree").subsets(&[s]),
                        );
                        return report;
                    }
                }
                Err(e) => {
                    report.fail(Witness::new(format!("materialisation failed: {e}")));
                    return report;
                }
            }
        }
    }
    report.note(format!(
        "(Iterated limits): {} nets constructed, {cross_checked} cross-checked against an explicit product index",
        spec.iterated
    ));
    report
}

/// A constant net converging to one of `net`'s limits.
fn constant_limit(conv: Convergence<'_>, net: &Net, fallback: Elem) -> Net {
    let limits = conv.limits(net);
    Net::constant(limits.first().unwrap_or(fallback))
}

/// The construction behind "(Iterated limits) implies (M1)": the outer net
/// runs over `{A ∈ M⁺(P) : x <= ⋁A}` under the trivial preorder with values
/// `⋁A`, and the inner net at `A` is `I_A`. Returns the K-net and the
/// M-convergence witness it produces for `x`.
pub fn iterated_lemma_instance(fam: &SelectionFamily, x: Elem) -> Result<(IteratedNet, Option<SubsetMask>)> {
    let p = fam.poset();
    let sets: Vec<(SubsetMask, Elem)> = fam.plus_with_sup().filter(|&(_, s)| p.leq(x, s)).collect();
    let outer = Net::new(
        DirectedIndex::trivial(sets.len()),
        sets.iter().map(|&(_, s)| s).collect(),
        Provenance::Explicit,
    )?;
    let inner = sets.iter().map(|&(a, _)| canonical_net_from_mset(p, a)).collect::<Result<Vec<_>>>()?;
    let it = crate::net::iterated_limit_net_with_cap(&outer, inner, DEFAULT_ITERATED_CAP)?;
    let witness = m_convergence_witness(fam, &it, x);
    Ok((it, witness))
}

/// Re-run the lemma's construction for every element: the witness exists and
/// lies inside `⇊_M x`.
pub fn check_iterated_lemma(fam: &SelectionFamily) -> PropertyReport {
    let mut report = PropertyReport::holding(format!("iterated-limit construction of (M1) [{}]", fam.name()));
    let wb = RelationMatrix::way_below_m(fam);
    for x in fam.poset().elements() {
        match iterated_lemma_instance(fam, x) {
            Ok((_, Some(a))) if a.is_subset(wb.below(x)) => {}
            Ok((_, Some(a))) => {
                report.fail(Witness::new("witness not inside ⇊_M x").elements(&[x]).subsets(&[a]))
            }
            Ok((_, None)) => report.fail(Witness::new("K-net does not M-converge").elements(&[x])),
            Err(e) => report.fail(Witness::new(format!("construction failed: {e}")).elements(&[x])),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::p3;
    use crate::relations::FamilyPair;
    use crate::selection::{Selection, SelectionKind};

    fn small_spec() -> SampleSpec {
        SampleSpec { seed: 3, nets: 20, max_index: 6, subnets_per_net: 5, iterated: 10 }
    }

    #[test]
    fn the_empty_poset_satisfies_the_axioms_vacuously() {
        let fam = Selection::builtin(SelectionKind::Dir).realize(&crate::Poset::antichain(0)).unwrap();
        assert!(kelley_check(Convergence::M(&fam), &SampleSpec::default()).holds);
    }

    #[test]
    fn m_convergence_satisfies_the_axioms_on_p3() {
        let p = p3();
        for k in SelectionKind::ALL {
            let f = Selection::builtin(k).realize(&p).unwrap();
            let r = kelley_check(Convergence::M(&f), &small_spec());
            assert!(r.holds, "{k}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn mn_convergence_satisfies_the_axioms_on_p3() {
        let p = p3();
        let dir = Selection::builtin(SelectionKind::Dir).realize(&p).unwrap();
        let filt = Selection::builtin(SelectionKind::Filt).realize(&p).unwrap();
        let pair = FamilyPair::new(&dir, &filt).unwrap();
        let r = kelley_check(Convergence::MN(&pair), &small_spec());
        assert!(r.holds, "{:?}", r.witnesses);
    }

    #[test]
    fn empty_sample_spec_is_vacuous() {
        let p = p3();
        let f = Selection::builtin(SelectionKind::Dir).realize(&p).unwrap();
        let r = kelley_check(Convergence::M(&f), &SampleSpec::empty(1));
        assert!(r.holds);
        assert!(r.notes.iter().any(|n| n.contains("vacuously")));
    }

    #[test]
    fn lemma_instance_on_p3_with_ach() {
        let p = p3();
        let f = Selection::builtin(SelectionKind::ACh).realize(&p).unwrap();
        let (it, witness) = iterated_lemma_instance(&f, 2).unwrap();
        assert_eq!(it.size(), 2 * 5);
        let a = witness.unwrap();
        assert!(a.is_subset(RelationMatrix::way_below_m(&f).below(2)));
        assert!(check_iterated_lemma(&f).holds);
    }
}
