//! Acceptance suite. Prints one line per criterion and fails the test target
//! if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use convlab_core::characterize::{
    check_canonical_nets_m, check_canonical_nets_mn, check_net_characterization_m,
    check_net_characterization_mn,
};
use convlab_core::continuity::{
    is_alpha_m_continuous, is_continuous_poset, is_m_continuous, is_mn_continuous,
    is_rstar_doubly_continuous, topologicality_witness,
};
use convlab_core::enumerate::{enumerate_posets, Dedup};
use convlab_core::kelley::kelley_check;
use convlab_core::relations::{
    check_aux_properties_m, check_aux_properties_mn, check_collapse_m, check_collapse_mn,
};
use convlab_core::{
    Convergence, FamilyPair, Poset, PropertyReport, RelationMatrix, SampleSpec, Selection, SelectionFamily,
    SelectionKind, SubsetMask, Topology,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn labeled_up_to(n: usize) -> Vec<Poset> {
    (0..=n).flat_map(|k| enumerate_posets(k, Dedup::Labeled).expect("within cap")).collect()
}

fn family(p: &Poset, kind: SelectionKind) -> SelectionFamily {
    Selection::builtin(kind).realize(p).expect("small poset")
}

fn describe(p: &Poset, r: &PropertyReport) -> String {
    let w = r.witnesses.first().map(|w| w.clause.clone()).unwrap_or_default();
    format!("{} fails on {:?}: {w}", r.name, p.up_rows())
}

fn require(p: &Poset, r: PropertyReport) -> Result<(), String> {
    if r.holds {
        Ok(())
    } else {
        Err(describe(p, &r))
    }
}

fn p3() -> Poset {
    Poset::from_covers(3, &[(0, 2), (1, 2)]).and_then(|p| p.with_labels(["a", "b", "c"])).unwrap()
}

fn a1() -> Outcome {
    let p = p3();
    let fam = family(&p, SelectionKind::ACh);
    let set = |xs: &[usize]| SubsetMask::from_elems(xs.iter().copied());
    let mut members = fam.members().to_vec();
    members.sort();
    let mut expected = vec![set(&[0]), set(&[1]), set(&[2]), set(&[0, 1])];
    expected.sort();
    if members != expected {
        return Err(format!("M(P3) = {members:?}"));
    }
    let wb = RelationMatrix::way_below_m(&fam);
    let pairs = (0..3).flat_map(|x| (0..3).map(move |y| (x, y)));
    if !pairs.clone().all(|(x, y)| wb.holds(x, y) == p.leq(x, y)) {
        return Err("≪_M differs from <=".into());
    }
    if !is_m_continuous(&fam).holds {
        return Err("not M-continuous".into());
    }
    let alpha = is_alpha_m_continuous(&fam);
    match alpha.first_failure() {
        Some(c) if !alpha.holds && c.at == [2] && c.sets.first() == Some(&set(&[0, 1, 2])) => Ok(format!(
            "M(P3) exact, ≪_M = <= on {} pairs, ⇊_M c = {{a,b,c}} witnesses failure",
            pairs.count()
        )),
        other => Err(format!("unexpected alpha verdict {:?}", other)),
    }
}

fn a2() -> Outcome {
    let posets = labeled_up_to(4);
    for p in &posets {
        for kind in SelectionKind::ORDER {
            let fam = family(p, kind);
            require(p, check_collapse_m(&fam))?;
            if Topology::tau_m(&fam).unwrap() != Topology::alexandrov(p) {
                return Err(format!("τ_M [{kind}] is not Alexandrov on {:?}", p.up_rows()));
            }
        }
        let (dir, filt) = (family(p, SelectionKind::Dir), family(p, SelectionKind::Filt));
        let pair = FamilyPair::new(&dir, &filt).unwrap();
        require(p, check_collapse_mn(&pair))?;
        if !Topology::tau_mn(&pair).unwrap().is_discrete() {
            return Err(format!("τ_MN (Dir,Filt) not discrete on {:?}", p.up_rows()));
        }
    }
    Ok(format!("{} posets × 5 selections", posets.len()))
}

fn a3() -> Outcome {
    let posets = labeled_up_to(4);
    let kinds = [SelectionKind::Dir, SelectionKind::ACh, SelectionKind::Fin];
    for p in &posets {
        let fams: Vec<SelectionFamily> = kinds.iter().map(|&k| family(p, k)).collect();
        for m in &fams {
            require(p, check_canonical_nets_m(m).unwrap())?;
            for n in &fams {
                require(p, check_canonical_nets_mn(&FamilyPair::new(m, n).unwrap()).unwrap())?;
            }
        }
    }
    Ok(format!("{} posets, selections Dir, ACh, fin and their pairs", posets.len()))
}

fn a4() -> Outcome {
    let posets = labeled_up_to(4);
    let spec = SampleSpec { nets: 50, ..SampleSpec::default() };
    for p in &posets {
        let fams: Vec<SelectionFamily> = SelectionKind::ALL.iter().map(|&k| family(p, k)).collect();
        for m in &fams {
            require(p, check_net_characterization_m(m, &spec).unwrap())?;
            for n in &fams {
                let pair = FamilyPair::new(m, n).unwrap();
                require(p, check_net_characterization_mn(&pair, &spec).unwrap())?;
            }
        }
    }
    Ok(format!("{} posets, 8 selections, 64 pairs", posets.len()))
}

fn a5() -> Outcome {
    let posets = labeled_up_to(4);
    for p in &posets {
        let fams: Vec<SelectionFamily> = SelectionKind::ALL.iter().map(|&k| family(p, k)).collect();
        for m in &fams {
            require(p, check_aux_properties_m(m))?;
            for n in &fams {
                require(p, check_aux_properties_mn(&FamilyPair::new(m, n).unwrap()))?;
            }
        }
    }
    Ok(format!("{} posets, 8 selections, 64 pairs", posets.len()))
}

fn a6() -> Outcome {
    let posets = labeled_up_to(4);
    let spec = SampleSpec { nets: 200, ..SampleSpec::default() };
    for p in &posets {
        let dir = family(p, SelectionKind::Dir);
        let ach = family(p, SelectionKind::ACh);
        let filt = family(p, SelectionKind::Filt);
        let pair = FamilyPair::new(&dir, &filt).unwrap();
        for conv in [Convergence::M(&dir), Convergence::M(&ach), Convergence::MN(&pair)] {
            require(p, topologicality_witness(conv, &spec).unwrap())?;
        }
    }
    Ok(format!("{} posets, canonical nets plus {} random nets each", posets.len(), spec.nets))
}

fn a7() -> Outcome {
    let posets = labeled_up_to(3);
    let spec = SampleSpec { subnets_per_net: 50, iterated: 50, ..SampleSpec::default() };
    for p in &posets {
        let dir = family(p, SelectionKind::Dir);
        let ach = family(p, SelectionKind::ACh);
        let filt = family(p, SelectionKind::Filt);
        let pair = FamilyPair::new(&dir, &filt).unwrap();
        for conv in [Convergence::M(&dir), Convergence::M(&ach), Convergence::MN(&pair)] {
            require(p, kelley_check(conv, &spec))?;
        }
    }
    Ok(format!("{} posets, Dir, ACh and (Dir,Filt); divergence follows from A6", posets.len()))
}

fn a8() -> Outcome {
    let posets = labeled_up_to(5);
    for p in &posets {
        let dir = family(p, SelectionKind::Dir);
        let filt = family(p, SelectionKind::Filt);
        let pair = FamilyPair::new(&dir, &filt).unwrap();
        let rstar = is_rstar_doubly_continuous(p).unwrap().holds;
        if rstar != is_mn_continuous(&pair).holds {
            return Err(format!(
                "R*-double continuity differs from (Dir,Filt)-continuity on {:?}",
                p.up_rows()
            ));
        }
        if is_m_continuous(&dir).holds != is_continuous_poset(p).holds {
            return Err(format!("Dir-continuity differs from continuity on {:?}", p.up_rows()));
        }
        for kind in SelectionKind::ALL {
            let fam = family(p, kind);
            let m1 = is_m_continuous(&fam).evidence.iter().all(|c| c.clause != "M1" || c.holds);
            if is_alpha_m_continuous(&fam).holds && !m1 {
                return Err(format!("alpha({kind})-continuity without (M1) on {:?}", p.up_rows()));
            }
        }
    }
    Ok(format!("{} posets", posets.len()))
}

/// Every reflexive relation on `n` points that is an order.
fn brute_force(n: usize) -> Vec<Vec<u32>> {
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << off.len() {
        let mut up = vec![0u32; n];
        for (x, row) in up.iter_mut().enumerate() {
            *row |= 1 << x;
        }
        for (i, &(x, y)) in off.iter().enumerate() {
            if bits >> i & 1 == 1 {
                up[x] |= 1 << y;
            }
        }
        let antisymmetric = off.iter().all(|&(x, y)| !(up[x] >> y & 1 == 1 && up[y] >> x & 1 == 1));
        let transitive = (0..n).all(|x| (0..n).filter(|&y| up[x] >> y & 1 == 1).all(|y| up[y] & !up[x] == 0));
        if antisymmetric && transitive {
            out.push(up);
        }
    }
    out.sort();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn class_key(rows: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    perms
        .iter()
        .map(|perm| {
            let mut out = vec![0u32; rows.len()];
            for (x, &row) in rows.iter().enumerate() {
                out[perm[x]] = (0..rows.len()).filter(|&y| row >> y & 1 == 1).map(|y| 1 << perm[y]).sum();
            }
            out
        })
        .min()
        .unwrap()
}

fn a9() -> Outcome {
    let labeled = [1usize, 1, 3, 19, 219, 4231];
    let unlabeled = [1usize, 1, 2, 5, 16, 63];
    for n in 0..=5 {
        let l = enumerate_posets(n, Dedup::Labeled).unwrap();
        let u = enumerate_posets(n, Dedup::Unlabeled).unwrap();
        if l.len() != labeled[n] || u.len() != unlabeled[n] {
            return Err(format!("n = {n}: {} labelled, {} unlabelled", l.len(), u.len()));
        }
        if n <= 4 {
            let mut fast: Vec<Vec<u32>> =
                l.iter().map(|p| p.up_rows().iter().map(|m| m.bits()).collect()).collect();
            fast.sort();
            let oracle = brute_force(n);
            if fast != oracle {
                return Err(format!("n = {n}: labelled posets differ from the brute-force oracle"));
            }
            let perms = permutations(n);
            let mut classes: Vec<Vec<u32>> = oracle.iter().map(|r| class_key(r, &perms)).collect();
            classes.sort();
            classes.dedup();
            let mut reps: Vec<Vec<u32>> = u
                .iter()
                .map(|p| class_key(&p.up_rows().iter().map(|m| m.bits()).collect::<Vec<_>>(), &perms))
                .collect();
            reps.sort();
            if reps != classes {
                return Err(format!("n = {n}: unlabelled representatives differ from the oracle classes"));
            }
        }
    }
    Ok("1,1,3,19,219,4231 labelled; 1,1,2,5,16,63 unlabelled; oracle agrees for n <= 4".into())
}

fn a10() -> Outcome {
    let posets = labeled_up_to(4);
    for p in &posets {
        let back = Topology::alexandrov(p).specialization_poset().unwrap();
        if !back.same_order(p) {
            return Err(format!("specialisation of Alexandrov differs on {:?}", p.up_rows()));
        }
        let irr = family(p, SelectionKind::Irr);
        let dir = family(p, SelectionKind::Dir);
        if irr.members() != dir.members() {
            return Err(format!("Irr differs from Dir on {:?}", p.up_rows()));
        }
    }
    Ok(format!("{} posets", posets.len()))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        ("A1 paper example", a1, secs(1)),
        ("A2 collapse", a2, secs(300)),
        ("A3 canonical nets", a3, secs(600)),
        ("A4 relations via nets", a4, secs(600)),
        ("A5 auxiliary relations", a5, secs(600)),
        ("A6 topologicality", a6, secs(600)),
        ("A7 Kelley axioms", a7, secs(600)),
        ("A8 continuity notions", a8, secs(600)),
        ("A9 enumeration counts", a9, secs(600)),
        ("A10 bridge", a10, secs(600)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("{name}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("{name}: FAIL ({elapsed:.2?}) {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
