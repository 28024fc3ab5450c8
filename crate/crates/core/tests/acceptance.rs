//! Acceptance gate. Runs ten criteria, prints one PASS/FAIL line for each,
//! and exits non-zero if any fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cliffperm_core::group_algorithms::{
    group_order, membership, orbit, order_of, schreier_sims, stabilizer, Bsgs, Permutation,
};
use cliffperm_core::matrix_oracle::{
    check_all_single_qubit_words, check_generators, check_random_words, cx_discrepancy, equal_up_to_phase,
    matrix_of_word,
};
use cliffperm_core::normal_form::{
    all_params, build_level_lookup, expand_gate_word, l_count, m_count, nf_to_tableau, synthesize,
    verify_rewrite_identities,
};
use cliffperm_core::orders::clifford_order;
use cliffperm_core::perm_rep::{enumerate_class, phase_class, ClassIndex, DEFAULT_GUARD};
use cliffperm_core::presentations::{
    builtin_presentation, todd_coxeter, verify_relators, CosetOutcome, PresentationKind, DEFAULT_MAX_COSETS,
};
use cliffperm_core::tableau::{compose, generator, random_word, standard_generators, word_eval};
use cliffperm_core::{CliffordTableau, GeneratorKind};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

fn within(what: &str, took: Duration, limit: Duration) -> Result<(), String> {
    ensure(took < limit, || format!("{what}: took {took:?}, limit {limit:?}"))
}

fn el(n: usize, text: &str) -> CliffordTableau {
    word_eval(&expand_gate_word(n, text).unwrap()).unwrap()
}

fn m_gate(n: usize) -> CliffordTableau {
    generator(GeneratorKind::M, &[1, 2], n).unwrap()
}

fn gens(n: usize) -> Vec<CliffordTableau> {
    standard_generators(n).into_iter().map(|(_, g)| g).collect()
}

fn words(n: usize, ws: &[String]) -> Vec<CliffordTableau> {
    ws.iter().map(|w| el(n, w)).collect()
}

fn range(prefix: &str, lo: usize, hi: usize) -> Vec<String> {
    (lo..=hi).map(|i| format!("{prefix}{i}")).collect()
}

fn perms(idx: &ClassIndex, ts: &[CliffordTableau]) -> Vec<Permutation> {
    ts.iter().map(|t| idx.permutation_of(t).unwrap()).collect()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn all_in(ps: &[Permutation], b: &Bsgs) -> bool {
    ps.iter().all(|p| membership(p, b))
}

/// Equal order, and each generating set lies in the other's group.
fn same_group(a: &[Permutation], b: &[Permutation], degree: usize) -> bool {
    let (ba, bb) = (schreier_sims(a, degree), schreier_sims(b, degree));
    group_order(&ba) == group_order(&bb) && all_in(a, &bb) && all_in(b, &ba)
}

fn bfs_closure(n: usize) -> usize {
    let g = gens(n);
    let mut seen = HashSet::from([CliffordTableau::identity(n).canonical_key()]);
    let mut frontier = vec![CliffordTableau::identity(n)];
    while let Some(t) = frontier.pop() {
        for x in &g {
            let c = compose(&t, x).unwrap();
            if seen.insert(c.canonical_key()) {
                frontier.push(c);
            }
        }
    }
    seen.len()
}

fn order_formula() -> Outcome {
    let mut parts = Vec::new();
    for (n, want, limit) in [(1, 24u64, 1), (2, 11520, 2), (3, 92897280, 30)] {
        let t = Instant::now();
        let idx = phase_class(n, DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let order = order_of(&perms(&idx, &gens(n)), idx.len());
        let took = t.elapsed();
        eq(&format!("order n={n}"), order, big(want))?;
        within(&format!("order n={n}"), took, Duration::from_secs(limit))?;
        parts.push(format!("n{n}={want} in {took:.2?}"));
    }
    Ok(parts.join(", "))
}

fn embedding_degree() -> Outcome {
    for (n, v) in [(1, 6), (2, 30), (3, 126)] {
        eq(&format!("|V| n={n}"), phase_class(n, DEFAULT_GUARD).unwrap().len(), v)?;
    }
    eq("tableau BFS n=1", bfs_closure(1), 24)?;
    eq("tableau BFS n=2", bfs_closure(2), 11520)?;
    Ok("|V| = 6, 30, 126; BFS |C_1| = 24, |C_2| = 11520".into())
}

fn cent_s1_listed(n: usize) -> Vec<CliffordTableau> {
    if n == 1 {
        return vec![el(1, "s1")];
    }
    let mut w = range("h", 2, n);
    w.extend(range("s", 1, n));
    w.extend(range("cz", 1, n - 1));
    words(n, &w)
}

fn centralizer_s1() -> Outcome {
    for (n, want) in [(1, 4u64), (2, 384), (3, 737280)] {
        let idx = phase_class(n, DEFAULT_GUARD).unwrap();
        let pt = idx.point_of(&el(n, "s1")).unwrap();
        let stab = stabilizer(&perms(&idx, &gens(n)), idx.len(), &[pt]);
        eq(&format!("stabilizer n={n}"), order_of(&stab, idx.len()), big(want))?;
        let listed = perms(&idx, &cent_s1_listed(n));
        ensure(same_group(&listed, &stab, idx.len()), || {
            format!("listed generators differ from the stabilizer at n={n}")
        })?;
    }
    Ok("orders 4, 384, 737280; listed generators equal the stabilizer".into())
}

fn inertia_listed(n: usize) -> Vec<CliffordTableau> {
    match n {
        1 => words(1, &["h1".into(), "s1 s1 s1 h1 s1 h1 s1".into()]),
        2 => {
            let mut g = words(2, &["h1".into(), "h2".into(), "s2".into(), "h1 z1 h1".into()]);
            g.push(m_gate(2));
            g
        }
        _ => {
            let mut w = range("h", 1, n);
            w.extend(range("s", 2, n));
            let mut g = words(n, &w);
            g.push(m_gate(n));
            g.extend(words(n, &range("cz", 2, n - 1)));
            g
        }
    }
}

fn centralizer_z1() -> Outcome {
    for (n, orbit_len, want) in [(1, 3, 8u64), (2, 15, 768), (3, 63, 1474560)] {
        let v = phase_class(n, DEFAULT_GUARD).unwrap();
        let z = enumerate_class(&el(n, "z1"), DEFAULT_GUARD).unwrap();
        let act = |ts: &[CliffordTableau]| -> Vec<Permutation> {
            ts.iter().map(|t| v.permutation_of(t).unwrap().direct_sum(&z.permutation_of(t).unwrap())).collect()
        };
        let deg = v.len() + z.len();
        let cn = act(&gens(n));
        let pt = v.len() + z.point_of(&el(n, "z1")).unwrap();
        eq(&format!("z1 orbit n={n}"), orbit(&cn, deg, pt).len(), orbit_len)?;
        let stab = stabilizer(&cn, deg, &[pt]);
        let sb = schreier_sims(&stab, deg);
        eq(&format!("Cent(z1) n={n}"), group_order(&sb), big(want))?;
        if n >= 2 {
            let c = el(n, "s1 s1 s1 h1");
            let inertia = inertia_listed(n);
            eq(&format!("|IN_n| n={n}"), order_of(&act(&inertia), deg), big(want))?;
            let conj: Vec<CliffordTableau> = inertia.iter().map(|g| g.conjugated_by(&c).unwrap()).collect();
            ensure(all_in(&act(&conj), &sb), || format!("h1 s1 IN s1^3 h1 not inside Cent(z1) at n={n}"))?;
        }
    }
    Ok("orbits 3, 15, 63; stabilizers 8, 768, 1474560; conjugated IN_n equals Cent(z1) at n=2,3".into())
}

fn two_point() -> Outcome {
    for (n, want) in [(2, 24u64), (3, 11520)] {
        let idx = phase_class(n, DEFAULT_GUARD).unwrap();
        let cn = perms(&idx, &gens(n));
        let mut points = Vec::new();
        for k in 1..=n {
            points.push(idx.point_of(&el(n, &format!("s{k}"))).unwrap());
            points.push(idx.point_of(&el(n, &format!("h{k} s{k} h{k}"))).unwrap());
            let o = order_of(&stabilizer(&cn, idx.len(), &points), idx.len());
            let expected = if k == n { big(1) } else { clifford_order(n - k) };
            if k == 1 {
                eq(&format!("two-point n={n}"), o.clone(), big(want))?;
            }
            eq(&format!("chain n={n} k={k}"), o, expected)?;
        }
    }
    Ok("two-point stabilizers 24, 11520; chains end at the trivial group".into())
}

fn presentations() -> Outcome {
    use PresentationKind::*;
    let mut relators = 0;
    for kind in [Cn, INn, INnModPn] {
        for n in 1..=4 {
            let r = verify_relators(kind, n).map_err(|e| e.to_string())?;
            let bad: Vec<String> = r.failures().map(ToString::to_string).collect();
            ensure(bad.is_empty(), || format!("{kind} n={n}: {bad:?}"))?;
            relators += r.checks.len();
        }
    }
    let mut parts = Vec::new();
    for (kind, n, want, flagged) in
        [(Cn, 2, 11520, false), (INn, 2, 768, false), (INnModPn, 2, 48, false), (Cn, 1, 24, true), (INn, 1, 8, true)]
    {
        let p = builtin_presentation(kind, n).unwrap();
        eq(&format!("{kind} n={n} extrapolated flag"), p.extrapolated, flagged)?;
        let t = Instant::now();
        let got = todd_coxeter(&p, &[], DEFAULT_MAX_COSETS);
        within(&format!("{kind} n={n} enumeration"), t.elapsed(), Duration::from_secs(60))?;
        eq(&format!("{kind} n={n} coset count"), got, CosetOutcome::Complete(want))?;
        parts.push(format!("{kind}_{n}={want}{}", if flagged { "*" } else { "" }));
    }
    Ok(format!("{relators} relators hold; {} (* extrapolated)", parts.join(", ")))
}

fn normal_form() -> Outcome {
    for n in 1..=6 {
        let count: BigUint = (1..=n).map(|k| big((l_count(k) * m_count(k)) as u64)).product();
        eq(&format!("parameter count n={n}"), count, clifford_order(n))?;
    }
    for n in 1..=2 {
        let mut keys = HashSet::new();
        let mut params = 0usize;
        for p in all_params(n) {
            keys.insert(nf_to_tableau(&p).unwrap().canonical_key());
            params += 1;
        }
        eq(&format!("distinct images n={n}"), keys.len(), params)?;
        eq(&format!("params n={n}"), big(params as u64), clifford_order(n))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3, 4] {
        for i in 0..1000 {
            let f = word_eval(&random_word(n, 40, &mut rng)).unwrap();
            let p = synthesize(&f).map_err(|e| format!("synthesize n={n} #{i}: {e}"))?;
            ensure(nf_to_tableau(&p).unwrap() == f, || format!("round trip n={n} #{i}"))?;
        }
    }
    for (k, size) in [(1, 24), (2, 480), (3, 8064)] {
        eq(&format!("level table k={k}"), build_level_lookup(k).map_err(|e| e.to_string())?.len(), size)?;
    }
    Ok("counts match for n<=6; bijective for n<=2; 2000 round trips; tables 24, 480, 8064".into())
}

fn rewriting() -> Outcome {
    let r = verify_rewrite_identities();
    let bad: Vec<String> = r.failures().map(ToString::to_string).collect();
    ensure(bad.is_empty(), || format!("{bad:?}"))?;
    let lhs = matrix_of_word(&expand_gate_word(3, "s1 B1 C2 D3 D4@2 E2@3 B4 C1 D2 E4@2 A1 C2 E3").unwrap()).unwrap();
    let rhs = matrix_of_word(&expand_gate_word(3, "B1 C2 D4 D4@2 E4@3 B4 C1 D2 E4@2 A1 C1 E3").unwrap()).unwrap();
    ensure(equal_up_to_phase(&lhs, &rhs).unwrap(), || "worked example differs as unitaries".into())?;
    Ok(format!("{} identities hold; worked example confirmed by matrices", r.checks.len()))
}

fn counting() -> Outcome {
    let mut parts = Vec::new();
    for (m, s_want, z_want) in [(1, 4, 8), (2, 384, 768)] {
        let (s, hsh, z, hzh) = (el(m, "s1"), el(m, "h1 s1 h1"), el(m, "s1 s1"), el(m, "h1 s1 s1 h1"));
        let (mut c_s, mut c_hsh, mut c_z, mut c_hzh) = (0, 0, 0, 0);
        let mut seen = HashSet::new();
        for p in all_params(m) {
            let u = nf_to_tableau(&p).unwrap();
            seen.insert(u.canonical_key());
            let (us, uz) = (compose(&u, &s).unwrap(), compose(&u, &z).unwrap());
            c_s += (compose(&s, &u).unwrap() == us) as usize;
            c_hsh += (compose(&hsh, &u).unwrap() == us) as usize;
            c_z += (compose(&z, &u).unwrap() == uz) as usize;
            c_hzh += (compose(&hzh, &u).unwrap() == uz) as usize;
        }
        eq(&format!("elements m={m}"), big(seen.len() as u64), clifford_order(m))?;
        eq(&format!("counts m={m}"), (c_s, c_hsh, c_z, c_hzh), (s_want, s_want, z_want, z_want))?;
        parts.push(format!("m{m}: {c_s},{c_hsh},{c_z},{c_hzh}"));
    }
    Ok(parts.join("; "))
}

fn oracle() -> Outcome {
    let mut checked = 0;
    let mut run =
        |what: &str, r: cliffperm_core::Result<cliffperm_core::matrix_oracle::OracleReport>| -> Result<(), String> {
            let r = r.map_err(|e| format!("{what}: {e}"))?;
            checked += r.checked;
            ensure(r.passed(), || format!("{what}: {:?}", r.mismatches.iter().take(3).collect::<Vec<_>>()))
        };
    for n in 1..=3 {
        run(&format!("generators n={n}"), check_generators(n))?;
    }
    run("random n=1", check_random_words(1, 1000, 16, 11))?;
    run("random n=2", check_random_words(2, 1000, 16, 12))?;
    run("random n=3", check_random_words(3, 100, 16, 13))?;
    run("exhaustive n=1", check_all_single_qubit_words(8))?;
    let cx = cx_discrepancy();
    ensure(!cx.z_reading_matches && cx.cz_reading_matches, || format!("CX readings: {}", cx.describe()))?;
    Ok(format!("{checked} conjugations agree; CX discrepancy detected ({})", cx.describe()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("order formula", order_formula),
        ("embedding degree", embedding_degree),
        ("centralizer of s1", centralizer_s1),
        ("centralizer of z1", centralizer_z1),
        ("two-point stabilizer", two_point),
        ("presentations", presentations),
        ("normal form", normal_form),
        ("rewriting identities", rewriting),
        ("counting", counting),
        ("convention oracle", oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
