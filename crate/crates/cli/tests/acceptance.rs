//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Randomized criteria honour `SATCERT_TEST_SEED`.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oracles::*;
use satcert_cli::dispatch;
use satcert_core::cobordisms::{build_p, build_r, build_z};
use satcert_core::covers::{crossing_change_filling, pattern_gluing, slope_from_filling, BasisCurve, CrossingCircles};
use satcert_core::cs_invariants::{lens_cs_lower_bound, pontryagin_number};
use satcert_core::exactmath::{definiteness, ratio, smith_normal_form, Definiteness, Slope, SymIntMatrix};
use satcert_core::obstruction::{assemble_x, assembly_compactness, generate_family, IndependenceCertificate, Verdict};
use satcert_core::{FamilyTriple, SatelliteParams};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> satcert_cli::Outcome {
    dispatch(std::iter::once("satcert").chain(args.iter().copied()))
}

fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    (2..=max)
        .flat_map(|p| (p + 1..=max).map(move |q| (p, q)))
        .filter(|&(p, q)| gcd_u64(p, q) == 1)
        .collect()
}

fn closed_form_r() -> Check {
    let mut count = 0;
    let mut worst = 0.0f64;
    for (p, q) in coprime_pairs(7) {
        for k in 1..=3 {
            let third = (k * p * q - 1).to_string();
            let out = cli(&["r-invariant", &p.to_string(), &q.to_string(), &third, "--format", "json"]);
            ensure(out.code == 0, || format!("Σ({p},{q},{third}): {}", out.stderr.trim()))?;
            let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
            let residual: f64 = v["residual"].as_str().unwrap_or("inf").parse().unwrap_or(f64::INFINITY);
            ensure(v["rounded"] == "1", || format!("Σ({p},{q},{third}) rounded to {}", v["rounded"]))?;
            ensure(residual < 1e-6, || format!("Σ({p},{q},{third}) residual {residual:e}"))?;
            worst = worst.max(residual);
            count += 1;
        }
    }
    Ok(format!("{count} spheres rounded to 1, max residual {worst:e}"))
}

fn tau_and_pontryagin() -> Check {
    let out = cli(&["tau", "2", "3", "1"]);
    ensure(out.stdout == "1/30\n", || format!("tau 2 3 1 printed {:?}", out.stdout))?;
    let t = FamilyTriple::new(2, 3, 1).unwrap();
    ensure(pontryagin_number(&t) == ratio(1, 30), || "p1(2,3,1) != 1/30".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut n = 0;
    while n < 200 {
        let (p, q, k) = (rng.gen_range(2..60u64), rng.gen_range(2..60u64), rng.gen_range(1..50u64));
        let Ok(t) = FamilyTriple::new(p, q, k) else { continue };
        ensure(lens_cs_lower_bound(&t) > pontryagin_number(&t), || format!("bound fails at {t}"))?;
        n += 1;
    }
    Ok("tau(2,3,1) = p1(2,3,1) = 1/30; lens bound > p1 on 200 random triples".into())
}

fn slope_calculus() -> Check {
    for n in (2..=20u64).step_by(2) {
        let z = slope_from_filling(&pattern_gluing(n), BasisCurve::Longitude);
        let p = slope_from_filling(&crossing_change_filling(n, CrossingCircles::Plus), BasisCurve::Meridian);
        let r = slope_from_filling(&crossing_change_filling(n, CrossingCircles::Minus), BasisCurve::Meridian);
        ensure(z == Slope::reciprocal(n), || format!("n={n}: Z slope {z}"))?;
        ensure(p == Slope::reciprocal(2 * n), || format!("n={n}: P slope {p}"))?;
        ensure(r == Slope::infinity(), || format!("n={n}: R slope {r}"))?;
    }
    Ok("1/n, 1/(2n), 1/0 for n = 2, 4, ..., 20".into())
}

fn cobordism_forms() -> Check {
    let mut count = 0;
    for n in (2..=10u64).step_by(2) {
        for (p, q) in coprime_pairs(7) {
            let s = SatelliteParams::new(n, p, q).unwrap();
            let c = ((p - 1) * (q - 1) / 2) as usize;
            let z = build_z(&s, None).map_err(|e| e.to_string())?;
            let r = build_r(&s).map_err(|e| e.to_string())?;
            let pp = build_p(&s).map_err(|e| e.to_string())?;
            let nn = n as usize;
            ensure(z.form == SymIntMatrix::neg_identity(c), || format!("Z{s} form {}", z.form))?;
            ensure(r.form == SymIntMatrix::neg_identity(nn), || format!("R{s} form {}", r.form))?;
            ensure(pp.form == SymIntMatrix::identity(nn), || format!("P{s} form {}", pp.form))?;
            ensure(definiteness(&z.form) == Definiteness::NegativeDefinite, || format!("Z{s} class"))?;
            ensure(definiteness(&r.form) == Definiteness::NegativeDefinite, || format!("R{s} class"))?;
            ensure(definiteness(&pp.form) == Definiteness::PositiveDefinite, || format!("P{s} class"))?;
            count += 3;
        }
    }
    Ok(format!("{count} records with -I_c / -I_n / +I_n and matching classes"))
}

fn certify(family: &str) -> Result<(i32, IndependenceCertificate), String> {
    let out = cli(&["certify", "--family", family]);
    let cert = serde_json::from_str(&out.stdout).map_err(|e| format!("{family}: {e}: {}", out.stderr))?;
    Ok((out.code, cert))
}

fn independence() -> Check {
    let (code, cert) = certify("2,2,3;2,2,5")?;
    let c = &cert.chain_checks[0];
    ensure(code == 0 && cert.verdict == Verdict::Independent, || "(2,2,3),(2,2,5) not Independent".into())?;
    ensure(c.lhs == BigInt::from(138) && c.rhs == BigInt::from(190), || format!("chain {} < {}", c.lhs, c.rhs))?;
    let (code, cert) = certify("2,2,5;2,2,3")?;
    ensure(code != 0 && cert.verdict == Verdict::CriterionFails { index: 1 }, || "reversed order not rejected".into())?;

    let out = cli(&["generate", "--start", "2,2,3", "--count", "10", "--fix-n", "2"]);
    ensure(out.code == 0, || out.stderr.clone())?;
    let family: Vec<String> = out
        .stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).take(3).collect::<Vec<_>>().join(","))
        .collect();
    ensure(family.len() == 10, || format!("generated {} members", family.len()))?;
    let (code, cert) = certify(&family.join(";"))?;
    ensure(code == 0 && cert.is_independent(), || format!("generated family not Independent: {family:?}"))?;
    Ok(format!("138 < 190 Independent; reversed CriterionFails(1); 10-member n=2 chain ends at {}", family[9]))
}

fn bridging() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 6);
    let mut families = 0;
    while families < 50 {
        let (p, q) = (rng.gen_range(2..12u64), rng.gen_range(2..12u64));
        let Ok(start) = SatelliteParams::new(2 * rng.gen_range(1..4u64), p, q) else { continue };
        let count = rng.gen_range(2..=8);
        let family = generate_family(start, count, Some(2 * rng.gen_range(1..4u64))).map_err(|e| e.to_string())?;
        let mut c: Vec<i64> = (0..count).map(|_| rng.gen_range(-3..=-1)).collect();
        c[count - 1] = rng.gen_range(1..=3);
        let x = assemble_x(&family, &c).map_err(|e| e.to_string())?;
        ensure(x.doubled_triples.len() == count - 1, || format!("{family}: missing doubled ends"))?;
        let report = assembly_compactness(&x);
        ensure(report.compact, || format!("{family} {c:?}: compactness fails"))?;
        families += 1;
    }
    Ok("50 generated families pass compactness with every doubled end present".into())
}

fn oracle_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 7);
    for _ in 0..1000 {
        let m = random_form(&mut rng, 8);
        let got = definiteness(&to_sym(&m));
        let expected = brute_force_definiteness(&m);
        ensure(got == expected, || format!("{m:?}: {got} vs oracle {expected}"))?;
    }
    for _ in 0..1000 {
        let m = random_matrix(&mut rng, 6, 20);
        let a = to_int_matrix(&m);
        let snf = smith_normal_form(&a);
        let left = big_rows(&snf.left);
        let right = big_rows(&snf.right);
        let product = big_matmul(&big_matmul(&left, &big_rows(&a)), &right);
        ensure(product == big_rows(&snf.diagonal_matrix()), || format!("{m:?}: transform identity"))?;
        let unit = |d: BigInt| d == BigInt::from(1) || d == BigInt::from(-1);
        ensure(unit(big_det(&left)) && unit(big_det(&right)), || format!("{m:?}: not unimodular"))?;
        let zero = BigInt::from(0);
        for w in snf.diagonal.windows(2) {
            let divides = if w[0] == zero { w[1] == zero } else { &w[1] % &w[0] == zero };
            ensure(w[0] >= zero && divides, || format!("{m:?}: divisibility {:?}", snf.diagonal))?;
        }
    }
    Ok("1000 forms agree with brute force; 1000 SNF transforms exact and unimodular".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 7] = [
        (1, "closed-form R reproduction", Duration::from_secs(5), closed_form_r),
        (2, "tau and p1 exactness", Duration::from_secs(1), tau_and_pontryagin),
        (3, "slope calculus", Duration::from_secs(1), slope_calculus),
        (4, "cobordism forms", Duration::from_secs(1), cobordism_forms),
        (5, "independence certification", Duration::from_secs(2), independence),
        (6, "bridging property", Duration::from_secs(5), bridging),
        (7, "oracle suites", Duration::from_secs(30), oracle_suites),
    ];
    println!("acceptance (seed {})", seed());
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] criterion {id}: {name} ({:.3}s, limit {}s): {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
