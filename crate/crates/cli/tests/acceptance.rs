//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigUint;
use symdet::code::{build_generator, projective_generator};
use symdet::combinat::{mu_stratum, nu};
use symdet::gf::{FElem, Field};
use symdet::krawtchouk::kraw_f;
use symdet::oracle::verify::{kraw_checks, qnum_checks, representative_independence, weight_checks, Check};
use symdet::oracle::{brute_weight_table, census, Mode, SymSpace};
use symdet::symmat::{strata, upper_len, FormType, RankType};
use symdet::weights::{
    min_distance, min_distance_projective, min_weight_stratum, projective_length, restricted_weight,
    restricted_weight_via_q, weight, weight_stratified,
};
use symdet::Guard;

type Outcome = Result<String, String>;

fn gf(q: u64) -> Field {
    Field::from_order(q).expect("valid field order")
}

fn err(e: symdet::Error) -> String {
    e.to_string()
}

fn all_pass(checks: &[Check]) -> Result<usize, String> {
    match checks.iter().find(|c| !c.pass) {
        Some(c) => Err(c.to_string()),
        None => Ok(checks.len()),
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

const SYM_SET: [(u64, usize); 7] = [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (9, 2)];

fn census_equivalence() -> Outcome {
    let mut n = 0;
    for (q, m) in SYM_SET {
        let f = gf(q);
        let c = census(&f, m, &Guard::default()).map_err(err)?;
        ensure(c.len() == strata(m).len(), || format!("q={q} m={m}: empty stratum"))?;
        for (s, count) in c {
            let mu = mu_stratum(&f, m, s).map_err(err)?;
            ensure(mu == BigUint::from(count), || format!("q={q} m={m} {s}: mu={mu} census={count}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} strata"))
}

fn qnumber_equivalence() -> Outcome {
    let g = Guard::default();
    let mut n = 0;
    for (q, m) in SYM_SET {
        let f = gf(q);
        let space = SymSpace::new(&f, m, &g).map_err(err)?;
        n += all_pass(&qnum_checks(&f, &space, &g).map_err(err)?)?;
    }
    for (q, m) in [(3, 2), (3, 3)] {
        let f = gf(q);
        let space = SymSpace::new(&f, m, &g).map_err(err)?;
        n += all_pass(&representative_independence(&f, &space, &g).map_err(err)?)?;
    }
    Ok(format!("{n} checks"))
}

fn krawtchouk_equivalence() -> Outcome {
    let mut n = 0;
    for (q, m) in [(3, 2), (3, 3), (3, 4), (3, 5), (5, 4)] {
        n += all_pass(&kraw_checks(&gf(q), m, &Guard::default()).map_err(err)?)?;
    }
    Ok(format!("{n} checks"))
}

fn weight_equivalence() -> Outcome {
    let g = Guard::default();
    let mut n = 0;
    let mut full_runs = 0;
    for (q, m) in [(3u64, 1usize), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (9, 2)] {
        let f = gf(q);
        for t in 1..=m {
            let cost = BigUint::from(q).pow(upper_len(m) as u32) * nu(&f, m, t).map_err(err)?;
            if cost <= BigUint::from(1_000_000_000u32) {
                n += all_pass(&weight_checks(&f, m, t, Mode::Full, &g).map_err(err)?)?;
                full_runs += 1;
            }
            n += all_pass(&weight_checks(&f, m, t, Mode::Representative, &g).map_err(err)?)?;
        }
    }

    let f = gf(3);
    let t1 = brute_weight_table(&f, 2, 1, Mode::Full, &g).map_err(err)?;
    let agg: Vec<(u64, u64)> = t1
        .aggregated
        .iter()
        .map(|w| (w.weight.to_u64_digits().first().copied().unwrap_or(0), w.multiplicity.to_u64_digits()[0]))
        .collect();
    ensure(agg == [(0, 1), (4, 12), (6, 8), (8, 6)], || format!("(3,2,1) aggregated {agg:?}"))?;
    ensure(t1.min_distance == BigUint::from(4u32), || format!("(3,2,1) d = {}", t1.min_distance))?;
    let t2 = brute_weight_table(&f, 2, 2, Mode::Full, &g).map_err(err)?;
    ensure(t2.min_distance == BigUint::from(18u32), || format!("(3,2,2) d = {}", t2.min_distance))?;
    Ok(format!("{n} checks, {full_runs} full-mode tables"))
}

fn closed_form_identities() -> Outcome {
    let mut n = 0u64;
    for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
        let f = gf(q);
        for m in 1..=14usize {
            let mi = m as i64;
            for tt in 0..=mi / 2 {
                let at_zero = kraw_f(&f, mi, tt, 0).map_err(err)?;
                for l in 0..=mi / 2 {
                    let v = kraw_f(&f, mi, tt, l).map_err(err)?;
                    ensure(v.magnitude() <= at_zero.magnitude(), || format!("|F_{tt}^({m})({l})| > F(0)"))?;
                    n += 1;
                }
            }
            for t in 1..=m {
                let params = || format!("q={q} m={m} t={t}");
                let mut ws = Vec::new();
                for s in strata(m).into_iter().skip(1) {
                    let w = weight(&f, m, t, s).map_err(err)?;
                    ensure(w == weight_stratified(&f, m, t, s).map_err(err)?, || format!("{} {s}: stratified", params()))?;
                    ws.push((s, w));
                    n += 1;
                }
                let w_of = |k: usize, ty: FormType| ws.iter().find(|(s, _)| s.rank == k && s.ty == ty).map(|(_, w)| w);
                if t % 2 == 0 {
                    for k in (2..=m).step_by(2) {
                        let plus = w_of(k, FormType::Hyperbolic).unwrap();
                        let minus = w_of(k, FormType::Elliptic).unwrap();
                        let odd = w_of(k - 1, FormType::Parabolic).unwrap();
                        ensure(plus == minus, || format!("{} k={k}: tau dependence", params()))?;
                        ensure(odd == plus, || format!("{} k={k}: W_(k-1) != W_k", params()))?;
                        n += 2;
                    }
                } else {
                    let first = w_of(1, FormType::Parabolic).unwrap();
                    for k in (3..=m).step_by(2) {
                        ensure(w_of(k, FormType::Parabolic).unwrap() == first, || format!("{} k={k}: odd ranks differ", params()))?;
                        n += 1;
                    }
                }
                let d = min_distance(&f, m, t).map_err(err)?;
                let argmin = ws.iter().map(|(_, w)| w).min().unwrap();
                ensure(&d == argmin, || format!("{}: d={d} argmin={argmin}", params()))?;
                let expected = if t % 2 == 0 || m < 2 {
                    RankType::odd(1)
                } else {
                    RankType { rank: 2, ty: FormType::Hyperbolic }
                };
                ensure(min_weight_stratum(m, t) == expected, || format!("{}: min stratum", params()))?;
                ensure(w_of(expected.rank, expected.ty).unwrap() == &d, || format!("{}: d not at {expected}", params()))?;

                let mut distinct: Vec<&BigUint> = ws.iter().map(|(_, w)| w).collect();
                distinct.sort();
                distinct.dedup();
                let bound = if t % 2 == 0 { m.div_ceil(2) } else { 2 * (m / 2) + 1 };
                ensure(distinct.len() <= bound, || format!("{}: {} distinct weights > {bound}", params(), distinct.len()))?;
                min_distance_projective(&f, m, t).map_err(err)?;
                projective_length(&f, m, t).map_err(err)?;
                n += 4;
            }
            for s in strata(m).into_iter().skip(1) {
                for r in 0..=m {
                    let a = restricted_weight(&f, m, s, r).map_err(err)?;
                    let b = restricted_weight_via_q(&f, m, s, r).map_err(err)?;
                    ensure(a == b, || format!("q={q} m={m} {s} r={r}: restricted weight routes differ"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} identities"))
}

fn min_codeword_weight(g: &symdet::code::GeneratorMatrix) -> Result<u64, String> {
    let f = g.field();
    let q = f.q() as usize;
    let k = g.rows();
    let mut best = u64::MAX;
    for idx in 1..q.pow(k as u32) {
        let mut x = idx;
        let coeffs: Vec<FElem> = (0..k)
            .map(|_| {
                let c = f.elem((x % q) as u64).unwrap();
                x /= q;
                c
            })
            .collect();
        best = best.min(g.codeword_weight(&coeffs).map_err(err)?);
    }
    Ok(best)
}

fn code_construction() -> Outcome {
    let guard = Guard::default();
    for (q, m, t) in [(3u64, 2usize, 1usize), (3, 2, 2), (3, 3, 1)] {
        let f = gf(q);
        let p = || format!("q={q} m={m} t={t}");
        let g = build_generator(&f, m, t, &guard).map_err(err)?;
        ensure(g.rank() == upper_len(m), || format!("{}: rank {}", p(), g.rank()))?;
        ensure(BigUint::from(g.cols()) == nu(&f, m, t).map_err(err)?, || format!("{}: length", p()))?;
        let pg = projective_generator(&f, m, t, &guard).map_err(err)?;
        let plen = projective_length(&f, m, t).map_err(err)?;
        ensure(BigUint::from(pg.cols()) == plen, || format!("{}: projective length {} vs {plen}", p(), pg.cols()))?;
        ensure(pg.rank() == upper_len(m), || format!("{}: projective rank", p()))?;
        let d = min_codeword_weight(&g)?;
        let pd = min_codeword_weight(&pg)?;
        ensure(BigUint::from(d) == min_distance(&f, m, t).map_err(err)?, || format!("{}: d = {d}", p()))?;
        ensure(pd * (q - 1) == d, || format!("{}: projective d = {pd}, affine {d}", p()))?;
        ensure(BigUint::from(pd) == min_distance_projective(&f, m, t).map_err(err)?, || format!("{}: projective formula", p()))?;
    }
    Ok("3 codes".into())
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_symdet"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_end_to_end() -> Outcome {
    let (code, out) = run_cli(&["mindist", "--q", "3", "--m", "2", "--t", "1"])?;
    ensure(code == 0 && out.trim() == "4", || format!("mindist: exit {code}, output {out:?}"))?;
    let (code, out) = run_cli(&["nu", "--q", "3", "--m", "2", "--t", "2"])?;
    ensure(code == 0 && out.trim() == "27", || format!("nu: exit {code}, output {out:?}"))?;
    let (code, out) = run_cli(&["verify", "--q", "3", "--m", "2"])?;
    ensure(code == 0, || format!("verify: exit {code}"))?;
    for kind in ["census", "qnum", "kraw", "weights"] {
        ensure(
            out.lines().any(|l| l.starts_with(kind) && l.ends_with("PASS")),
            || format!("verify: no {kind} PASS line"),
        )?;
    }
    for t in ["t=1", "t=2"] {
        ensure(out.lines().any(|l| l.contains(t)), || format!("verify: no weight checks at {t}"))?;
    }
    ensure(!out.contains("FAIL"), || "verify: FAIL line".into())?;
    Ok(format!("{} verify lines", out.lines().count()))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("census equivalence", census_equivalence),
        ("Q-number equivalence", qnumber_equivalence),
        ("Krawtchouk equivalence", krawtchouk_equivalence),
        ("weight-distribution equivalence", weight_equivalence),
        ("closed-form identities", closed_form_identities),
        ("code construction", code_construction),
        ("CLI end-to-end", cli_end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
