//! Acceptance criteria 1-12, one line per criterion. Runs without the libtest harness
//! so the lines are always printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use gray2::cli::{run_suite, Settings, Status, Suite};
use gray2::fincat::{cat_iso, from_poset, product_cat, to_poset};
use gray2::gray::{check_graytenscolim, gray_colax, gray_lax, ColimCase, GrayProduct};
use gray2::mates::{check_mates, check_pasting, find_adjunctions, pos_twocat};
use gray2::phi::{check_nu_naturality, check_odot_pushout, phi_obj};
use gray2::poset::{ordinal_poset, posets_up_to_iso, product, MaxChain, Step};
use gray2::probes::{check_segal, default_probes, label_words};
use gray2::theta2::{tau, two_op_obj, Theta2Obj};
use gray2::twocat::{
    free_linear, iso_two_cats, localize_2morphisms, realize, two_op, CatGraph, Corruption, SearchOptions, DEFAULT_BUDGET,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn iso(a: &gray2::twocat::TwoCat, b: &gray2::twocat::TwoCat) -> Result<bool, String> {
    iso_two_cats(a, b, DEFAULT_BUDGET).map(|r| r.is_some()).map_err(|e| e.to_string())
}

fn binomials(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &t[i - 1];
        let row = (0..=i).map(|j| if j == 0 || j == i { 1 } else { prev[j - 1] + prev[j] }).collect();
        t.push(row);
    }
    t
}

fn c1_shuffle_counts() -> Outcome {
    let pascal = binomials(12);
    for k in 0..=6 {
        for m in 0..=6 {
            let got = MaxChain::new(k, m).len() as u64;
            ensure(got == pascal[k + m][k], || format!("|MaxCh({k},{m})| = {got}, expected {}", pascal[k + m][k]))?;
        }
    }
    Ok("49 pairs match Pascal's triangle".into())
}

fn c2_square() -> Outcome {
    let g = gray_colax(&Theta2Obj::arrow(), &Theta2Obj::arrow());
    ensure(g.n_objects() == 4, || format!("{} objects", g.n_objects()))?;
    let top = to_poset(g.hom(0, 3)).ok_or("hom(00,11) is not a poset")?;
    ensure(top.iso(&ordinal_poset(1)).is_some(), || "hom(00,11) is not a 2-chain".into())?;
    for x in 0..4 {
        for y in 0..4 {
            let h = g.hom(x, y);
            if (x, y) != (0, 3) && h.n_objects() > 0 {
                ensure(h.n_objects() == 1 && h.n_morphisms() == 1, || format!("hom({x},{y}) is not terminal"))?;
            }
        }
    }
    Ok("4 objects, hom(00,11) = [1], other homs terminal or empty".into())
}

fn c3_cylinder() -> Outcome {
    let (a, b) = (Theta2Obj::two_cell(), Theta2Obj::arrow());
    let g = GrayProduct::new(&a, &b);
    let h = g.cat.hom(g.object(0, 0), g.object(1, 1));
    ensure(h.n_objects() == 4, || format!("hom((0,0),(1,1)) has {} objects", h.n_objects()))?;
    let p = to_poset(h).ok_or("hom is not a poset")?;
    let square = product(&ordinal_poset(1), &ordinal_poset(1));
    ensure(p.iso(&square).is_some(), || "hom((0,0),(1,1)) is not [1]x[1]".into())?;
    let cell = |steps: &[Step], i: usize| g.cell_local((0, 0), (1, 1), steps, &[i], &[0]).unwrap();
    let (hv, vh) = ([Step::H, Step::V], [Step::V, Step::H]);
    let chain = [cell(&hv, 0), cell(&hv, 1), cell(&vh, 1)];
    let other = [cell(&hv, 0), cell(&vh, 0), cell(&vh, 1)];
    for w in [chain, other] {
        ensure(p.leq(w[0], w[1]) && p.leq(w[1], w[2]), || "cylinder order violated".into())?;
    }
    ensure(!p.leq(cell(&hv, 1), cell(&vh, 0)) && !p.leq(cell(&vh, 0), cell(&hv, 1)), || {
        "(HV,1) and (VH,0) are comparable".into()
    })?;
    let lhs = localize_2morphisms(&g.cat).map_err(|e| e.to_string())?;
    let rhs = product_cat(
        &localize_2morphisms(&realize(&a)).map_err(|e| e.to_string())?,
        &localize_2morphisms(&realize(&b)).map_err(|e| e.to_string())?,
    );
    ensure(cat_iso(&lhs, &rhs).is_some(), || "localization is not the product".into())?;
    Ok("hom = [1]x[1] in cylinder order; localization = product".into())
}

fn c4_graytenscolim() -> Outcome {
    let probes = default_probes();
    let mut parts = Vec::new();
    for case in ColimCase::ALL {
        let r = check_graytenscolim(case, &probes, &SearchOptions::default(), None).map_err(|e| e.to_string())?;
        if let Some(f) = r.first_failure() {
            return Err(format!("{}: {:?}", case.name(), f));
        }
        parts.push(format!("{}: {} probes", case.name(), r.probes.len()));
    }
    Ok(parts.join(", "))
}

fn c5_segal() -> Outcome {
    let probes = default_probes();
    let words = label_words(3);
    for w in &words {
        let r = check_segal(w, &probes, &SearchOptions::default(), None).map_err(|e| e.to_string())?;
        if let Some(f) = r.first_failure() {
            return Err(format!("{w:?}: {f:?}"));
        }
    }
    Ok(format!("{} decompositions x {} probes", words.len(), probes.len()))
}

fn c6_phi_generators() -> Outcome {
    ensure(iso(&phi_obj(&Theta2Obj::arrow(), 1), &realize(&Theta2Obj::two_cell()))?, || {
        "Φ([1](0),1) is not [1](1)".into()
    })?;
    let sq = product_cat(&from_poset(&ordinal_poset(1)), &from_poset(&ordinal_poset(1)));
    ensure(iso(&phi_obj(&Theta2Obj::two_cell(), 1), &free_linear(&CatGraph { labels: vec![sq] }))?, || {
        "Φ([1](1),1) is not [1]([1]x[1])".into()
    })?;
    Ok("both generator identifications hold".into())
}

fn c7_nu() -> Outcome {
    let r = check_nu_naturality(2, 2, 2);
    ensure(r.passed(), || r.failures.join("; "))?;
    Ok(format!("{} functors valid, {} naturality squares", r.functors_validated, r.squares_checked))
}

fn c8_odot() -> Outcome {
    let probes = default_probes();
    let opts = SearchOptions::default();
    for obj in [Theta2Obj::arrow(), Theta2Obj::two_cell()] {
        let r = check_odot_pushout(&obj, 1, &probes, &opts, None).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{obj}: {:?}", r.first_failure()))?;
        for how in [Corruption::ExtraObject, Corruption::Collapse2Cells] {
            let bad = check_odot_pushout(&obj, 1, &probes, &opts, Some(how)).map_err(|e| e.to_string())?;
            ensure(!bad.passed(), || format!("{obj} passes under {how:?}"))?;
        }
    }
    Ok("pass for [1](0), [1](1); both corruptions fail".into())
}

fn c9_mates() -> Outcome {
    let ps: Vec<_> = (1..=3).flat_map(posets_up_to_iso).collect();
    ensure(ps.len() == 8, || format!("{} posets", ps.len()))?;
    let x = pos_twocat(&ps);
    let adjs = find_adjunctions(&x, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let r = check_mates(&x, &adjs);
    ensure(r.passed(), || r.failures[0].clone())?;
    let chains = pos_twocat(&[ordinal_poset(0), ordinal_poset(1), ordinal_poset(2)]);
    let cadjs = find_adjunctions(&chains, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let p = check_pasting(&chains, &cadjs);
    ensure(p.passed(), || p.failures[0].clone())?;
    ensure(p.pastings_checked > 0, || "no pastings".into())?;
    Ok(format!(
        "{} adjunctions, {} squares, {} pastings",
        r.adjunctions, r.squares_checked, p.pastings_checked
    ))
}

fn c10_duality() -> Outcome {
    let objs = Theta2Obj::bounded(2, 1);
    for i in &objs {
        ensure(iso(&two_op(&realize(i)), &realize(&two_op_obj(i).obj))?, || format!("2-op of {i} is not realized"))?;
    }
    for i in &objs {
        for j in &objs {
            let lhs = two_op(&gray_lax(i, j));
            let rhs = gray_colax(&two_op_obj(i).obj, &two_op_obj(j).obj);
            ensure(iso(&lhs, &rhs)?, || format!("duality fails for ({i}, {j})"))?;
        }
    }
    Ok(format!("{} pairs", objs.len() * objs.len()))
}

fn c11_localization() -> Outcome {
    let mut n = 0;
    for k in 0..=3 {
        for l in 0..=3 {
            let (a, b) = (tau(k, 0), tau(l, 0));
            let lhs = localize_2morphisms(&gray_colax(&a, &b)).map_err(|e| e.to_string())?;
            let rhs = product_cat(&from_poset(&ordinal_poset(k)), &from_poset(&ordinal_poset(l)));
            ensure(cat_iso(&lhs, &rhs).is_some(), || format!("localization of gray([{k}],[{l}]) is not [{k}]x[{l}]"))?;
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

fn c12_corruption() -> Outcome {
    let suites = [Suite::Segal, Suite::Graytenscolim, Suite::Phieq, Suite::Odot, Suite::Mates];
    let mut n = 0;
    for how in [Corruption::ExtraObject, Corruption::Collapse2Cells] {
        let s = Settings { corrupt: Some(how), ..Settings::default() };
        for suite in suites {
            let checks = run_suite(suite, &s);
            ensure(checks.iter().all(|c| c.status != Status::Error), || format!("{} errors under {how:?}", suite.name()))?;
            let failed: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).collect();
            ensure(!failed.is_empty(), || format!("{} passes under {how:?}", suite.name()))?;
            ensure(failed.iter().all(|c| c.witness.as_deref().is_some_and(|w| !w.is_empty())), || {
                format!("{} fails without a witness under {how:?}", suite.name())
            })?;
            n += failed.len();
        }
    }
    Ok(format!("5 suites x 2 corruptions fail, {n} failing checks all with witnesses"))
}

fn main() {
    // `cargo test -- <filter>` passes extra arguments; run everything regardless.
    let criteria: [Criterion; 12] = [
        ("shuffle counts", Duration::from_secs(1), c1_shuffle_counts),
        ("C1 x C1", Duration::from_secs(1), c2_square),
        ("C2 x C1 cylinder", Duration::from_secs(5), c3_cylinder),
        ("Gray decompositions", Duration::from_secs(120), c4_graytenscolim),
        ("Segal decompositions", Duration::from_secs(60), c5_segal),
        ("Phi generators", Duration::from_secs(1), c6_phi_generators),
        ("nu naturality", Duration::from_secs(60), c7_nu),
        ("odot pushout", Duration::from_secs(30), c8_odot),
        ("mates", Duration::from_secs(120), c9_mates),
        ("2-op duality", Duration::from_secs(60), c10_duality),
        ("localization", Duration::from_secs(10), c11_localization),
        ("corruption", Duration::from_secs(600), c12_corruption),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let t = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if t <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<22} {} {:>9.3}s  {}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {}/12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
