//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use degen::analytic::{
    deg_derangement, deg_derangement_closed, deg_gamma, deg_gamma_moment, derangement,
    gamma_quadrature_oracle,
};
use degen::bell::{
    complete_bell, deg_bell_number, deg_complete_bell, deg_partial_bell, partial_bell, ArgumentVector,
};
use degen::series::TruncatedSeries;
use degen::stirling::{
    deg_stirling1_triangle, deg_stirling2_triangle, deg_unsigned_stirling1_triangle,
    stirling_scaling_oracle, unsigned_scaling_oracle, TriangleFamily,
};
use degen::verify::{
    check_derangement_rec2, check_gamma_recurrence, check_theorem1, check_theorem2, check_theorem3,
    check_theorem4_rhs, check_theorem5, check_theorem5_classical, run_suite, theorem4_partial_sums,
    CheckId, IdentityCheck, LambdaMode, Status, SuiteConfig, Witness,
};
use degen::{Rational, Scalar};
use serde_json::Value;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn all_pass(checks: &[IdentityCheck], what: &str) -> Outcome {
    match checks.iter().find(|c| c.status != Status::Pass) {
        Some(c) => Err(format!("{what}: {:?} failed at {:?}", c.id, c.params)),
        None => Ok(()),
    }
}

fn sides(c: &IdentityCheck) -> (Scalar, Scalar) {
    match (&c.lhs, &c.rhs) {
        (Some(Witness::Exact(l)), Some(Witness::Exact(r))) => (l.clone(), r.clone()),
        other => panic!("expected exact sides, got {other:?}"),
    }
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn rationals(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, d)| q(p, d)).collect()
}

fn sign_relation() -> Outcome {
    let s1 = deg_stirling1_triangle(20, &lam());
    let s = deg_unsigned_stirling1_triangle(20, &lam());
    for n in 0..=20 {
        let falling = product(n, -1);
        for k in 0..=n {
            ensure!(s.get(n, k) == s1.get(n, k).scale(&sign(n - k)), "sign relation at ({n},{k})");
            ensure!(s1.get(n, k) == x_coefficient(&falling, k), "first kind vs expansion at ({n},{k})");
        }
    }
    let report = run_suite(&SuiteConfig::only(&[CheckId::Sign]).with_nmax(20)).map_err(|e| e.to_string())?;
    all_pass(&report.checks, "suite SIGN")
}

fn scaling_oracle() -> Outcome {
    let s1 = deg_stirling1_triangle(20, &lam());
    let s = deg_unsigned_stirling1_triangle(20, &lam());
    for n in 0..=20 {
        for k in 0..=n {
            let scaled = lam().pow((n - k) as u32).scale(&classical_s1(n, k));
            ensure!(s1.get(n, k) == scaled, "S1λ({n},{k}) != λ^(n-k) S1");
            ensure!(Scalar::from_poly(stirling_scaling_oracle(n, k)) == scaled, "oracle at ({n},{k})");
            let unsigned = scaled.scale(&sign(n - k));
            ensure!(s.get(n, k) == unsigned, "Sλ({n},{k}) != λ^(n-k) S");
            ensure!(Scalar::from_poly(unsigned_scaling_oracle(n, k)) == unsigned, "unsigned oracle at ({n},{k})");
        }
    }
    Ok(())
}

fn gf_cross_check() -> Outcome {
    const N: usize = 16;
    let l = lam();
    // log(1+λt)^{1/λ}, log(1-λt)^{-1/λ}, (1+λt)^{1/λ} - 1
    let first = series_from(N, |m| l.pow(m as u32 - 1).scale(&(sign(m - 1) * Rational::new(1, m as i64))));
    let unsigned = series_from(N, |m| l.pow(m as u32 - 1).scale(&Rational::new(1, m as i64)));
    let second = series_from(N, |m| falling_one(m, &l).scale(&fact(m).recip().unwrap()));
    let triangles = [
        (deg_stirling1_triangle(N, &l), first),
        (deg_unsigned_stirling1_triangle(N, &l), unsigned),
        (deg_stirling2_triangle(N, &l), second),
    ];
    for (t, base) in &triangles {
        for k in 0..=N {
            let power = base.pow(k as u32).scale_rational(&fact(k).recip().unwrap());
            for n in k..=N {
                let want = power.coeff(n).scale(&fact(n));
                ensure!(t.get(n, k) == want, "{} ({n},{k}) vs kernel", t.family());
            }
        }
    }
    for lam_q in rationals(&[(1, 2), (1, 3), (1, 10)]) {
        let lq = Scalar::from(lam_q.clone());
        // (1+λt)^{-1/λ} = Σ (-1)_{m,λ} t^m/m!, and 1/(1-λ-t) = Σ t^m/(1-λ)^{m+1}
        let minus_one = |m: usize| {
            (0..m).fold(Scalar::one(), |acc, j| acc * (Scalar::int(-1) - lq.scale(&Rational::from(j))))
        };
        let a = TruncatedSeries::new((0..=N).map(|m| minus_one(m).scale(&fact(m).recip().unwrap())).collect());
        let inv = (Rational::one() - &lam_q).recip().unwrap();
        let b = TruncatedSeries::new((0..=N).map(|m| Scalar::from(inv.pow(m as u32 + 1))).collect());
        let gf = a.mul(&b);
        let d = deg_derangement(N, &lam_q).map_err(|e| e.to_string())?;
        for n in 0..=N {
            ensure!(
                Scalar::from(d.get(n).clone()) == gf.coeff(n).scale(&fact(n)),
                "deg derangement n={n} λ={lam_q}"
            );
        }
    }
    let report = run_suite(&SuiteConfig::only(&[CheckId::GfCrossCheck]).with_nmax(N)).map_err(|e| e.to_string())?;
    all_pass(&report.checks, "suite GF-XCHK")
}

fn defining_identities() -> Outcome {
    let s1 = deg_stirling1_triangle(16, &lam());
    let s = deg_unsigned_stirling1_triangle(16, &lam());
    for n in 0..=16 {
        ensure!(s1.row_polynomial(n) == product(n, -1), "Σ S1λ(n,k)x^k at n={n}");
        ensure!(s.row_polynomial(n) == product(n, 1), "Σ Sλ(n,k)x^k at n={n}");
    }
    Ok(())
}

fn theorem1() -> Outcome {
    let checks = check_theorem1(12, &[1, 3, 5], &LambdaMode::Symbolic).map_err(|e| e.to_string())?;
    ensure!(checks.len() == 13 * 3, "expected 39 points, got {}", checks.len());
    all_pass(&checks, "theorem 1")?;
    let at = |n: usize, m: u64| {
        checks
            .iter()
            .find(|c| c.params["n"] == n && c.params["m"] == m)
            .map(sides)
            .expect("point present")
    };
    ensure!(at(0, 1) == (Scalar::int(2), Scalar::int(2)), "n=0, m=1");
    ensure!(at(1, 1) == (Scalar::zero(), Scalar::zero()), "n=1, m=1");
    ensure!(at(1, 3) == (Scalar::int(2), Scalar::int(2)), "n=1, m=3");
    Ok(())
}

fn theorem2() -> Outcome {
    let checks = check_theorem2(14, &LambdaMode::Symbolic);
    ensure!(checks.len() == (15 * 16) / 2, "expected 120 points, got {}", checks.len());
    all_pass(&checks, "theorem 2")?;
    let c = checks
        .iter()
        .find(|c| c.params["n"] == 3 && c.params["r"] == 1)
        .unwrap();
    ensure!(sides(c).0 == lam().pow(2).scale(&q(11, 1)), "S_λ(4,2) = 11λ²");
    Ok(())
}

fn theorem3() -> Outcome {
    let checks = check_theorem3(14, &LambdaMode::Symbolic);
    ensure!(checks.len() == (15 * 16) / 2, "expected 120 points, got {}", checks.len());
    all_pass(&checks, "theorem 3")
}

/// Derangements of 0..n by brute force over permutations.
fn count_derangements(n: usize) -> u64 {
    fn go(pos: usize, n: usize, used: &mut Vec<bool>) -> u64 {
        if pos == n {
            return 1;
        }
        let mut total = 0;
        for v in 0..n {
            if !used[v] && v != pos {
                used[v] = true;
                total += go(pos + 1, n, used);
                used[v] = false;
            }
        }
        total
    }
    go(0, n, &mut vec![false; n])
}

fn theorem5() -> Outcome {
    for l in rationals(&[(1, 2), (1, 3), (1, 10)]) {
        let checks = check_theorem5(14, &l).map_err(|e| e.to_string())?;
        all_pass(&checks, &format!("closed vs recurrence vs gf at λ={l}"))?;
    }
    all_pass(&check_theorem5_classical(14).map_err(|e| e.to_string())?, "classical limit")?;
    for n in 0..=14 {
        let closed = deg_derangement_closed(n, &Rational::zero()).map_err(|e| e.to_string())?;
        ensure!(closed == Rational::from(derangement(n)), "closed form at λ=0, n={n}");
    }
    for n in 0..=8 {
        ensure!(Rational::from(derangement(n)) == Rational::from(count_derangements(n)), "d_{n} by enumeration");
    }
    Ok(())
}

fn derangement_rec2() -> Outcome {
    for l in rationals(&[(1, 2), (1, 3), (1, 10)]) {
        let checks = check_derangement_rec2(14, &l).map_err(|e| e.to_string())?;
        ensure!(checks.len() == 14, "expected 14 points at λ={l}");
        all_pass(&checks, &format!("second recurrence at λ={l}"))?;
    }
    let first = &check_derangement_rec2(1, &q(1, 2)).map_err(|e| e.to_string())?[0];
    ensure!(sides(first).0 == Scalar::ratio(11, 2), "(1-λ)d₂ at λ=1/2");
    Ok(())
}

fn theorem4() -> Outcome {
    for l in rationals(&[(1, 2), (1, 3), (2, 7)]) {
        let checks = check_theorem4_rhs(12, &l).map_err(|e| e.to_string())?;
        all_pass(&checks, &format!("finite form at λ={l}"))?;
    }
    let spots: Vec<Scalar> = check_theorem4_rhs(2, &q(1, 2))
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| sides(c).0)
        .collect();
    ensure!(spots == vec![Scalar::int(2), Scalar::int(4), Scalar::int(16)], "spot values {spots:?}");
    for n in 0..=4 {
        let p = theorem4_partial_sums(n, &q(2, 7), 200).map_err(|e| e.to_string())?;
        ensure!(p.sums.len() == 201 - n, "partial sums at n={n}");
        if n == 0 {
            ensure!(p.sums.iter().all(|s| s == &p.target), "n=0 series is exact from the first term");
            ensure!(p.target == q(7, 5), "target at n=0");
        }
    }
    Ok(())
}

fn gamma_recurrence() -> Outcome {
    for l in rationals(&[(1, 20), (1, 50)]) {
        all_pass(&check_gamma_recurrence(10, &l), &format!("gamma recurrence at λ={l}"))?;
        let one_minus = Rational::one() - &l;
        let mu = l.checked_div(&one_minus).unwrap();
        for k in 1..=10usize {
            // direct product formula
            let direct = |k: usize, l: &Rational| {
                let den = (1..=k).fold(Rational::one(), |a, j| a * (Rational::one() - l * Rational::from(j)));
                fact(k - 1) * den.recip().unwrap()
            };
            let lhs = deg_gamma(k + 1, &l).map_err(|e| e.to_string())?.value;
            ensure!(lhs == direct(k + 1, &l), "Γ_λ({}) closed form", k + 1);
            let alpha = Rational::from(k);
            let corrected = &alpha * one_minus.pow(k as u32 + 1).recip().unwrap() * direct(k, &mu);
            ensure!(lhs == corrected, "recurrence with exponent k+1 at k={k}");
            // the exponent α-1 variant is off by exactly (1-λ)²
            let variant = &alpha * one_minus.pow(k as u32 - 1).recip().unwrap() * direct(k, &mu);
            ensure!(variant == lhs.clone() * one_minus.pow(2), "α-1 variant ratio at k={k}");
            ensure!(variant != lhs, "α-1 variant unexpectedly exact at k={k}");
        }
    }
    Ok(())
}

fn moment_quadrature() -> Outcome {
    let l = q(1, 10);
    let timed = |alpha: usize, lam: &Rational| -> Result<(f64, f64), String> {
        let start = Instant::now();
        let v = gamma_quadrature_oracle(&Rational::from(alpha), lam, 1e-12).map_err(|e| e.to_string())?;
        Ok((v, start.elapsed().as_secs_f64()))
    };
    let (g1, t1) = timed(1, &l)?;
    ensure!(t1 < 1.0, "Γ_λ(1) quadrature took {t1}s");
    for k in 0..=3 {
        let (gk, tk) = timed(k + 1, &l)?;
        ensure!(tk < 1.0, "Γ_λ({}) quadrature took {tk}s", k + 1);
        let exact = deg_gamma_moment(k, &l).map_err(|e| e.to_string())?.to_f64();
        let rel = ((gk / g1 - exact) / exact).abs();
        ensure!(rel <= 1e-8, "moment k={k}: relative error {rel:e}");
    }
    for (alpha, lam) in [(1, q(1, 2)), (2, q(1, 4)), (3, q(1, 10))] {
        let (v, t) = timed(alpha, &lam)?;
        ensure!(t < 1.0, "Γ quadrature at α={alpha} took {t}s");
        let exact = deg_gamma(alpha, &lam).map_err(|e| e.to_string())?.value.to_f64();
        ensure!(((v - exact) / exact).abs() <= 1e-8, "Γ_λ({alpha}) at λ={lam}: {v} vs {exact}");
    }
    ensure!(deg_gamma_moment(2, &l).unwrap() == q(25, 7), "E[X²] at λ=1/10");
    Ok(())
}

fn bell_oracles() -> Outcome {
    let mut rng = rng(0x5eed_be11);
    for trial in 0..20 {
        let xs = random_arguments(&mut rng, 8);
        let av = ArgumentVector::new(xs.clone());
        for n in 0..=8 {
            let got = complete_bell(n, &av).map_err(|e| e.to_string())?;
            ensure!(got == bell_by_partitions(n, &xs), "Bel_{n} trial {trial}");
            for k in 0..=n {
                let got = partial_bell(n, k, &av).map_err(|e| e.to_string())?;
                ensure!(got == partial_bell_by_partitions(n, k, &xs), "B_{{{n},{k}}} trial {trial}");
            }
        }
    }
    for trial in 0..5 {
        let av = ArgumentVector::new(random_arguments(&mut rng, 12));
        let lambdas = [lam(), Scalar::from(random_rational(&mut rng))];
        for l in &lambdas {
            for n in 0..=12 {
                let lhs = deg_complete_bell(n, &av, l).map_err(|e| e.to_string())?;
                let mut rhs = Scalar::zero();
                for k in 0..=n {
                    rhs = rhs + deg_partial_bell(n, k, &av, l).map_err(|e| e.to_string())?;
                }
                ensure!(lhs == rhs, "row sum n={n} trial {trial} λ={l}");
            }
        }
    }
    Ok(())
}

fn degenerate_bell() -> Outcome {
    const N: usize = 14;
    let s2 = deg_stirling2_triangle(N, &lam());
    // exp((1+λt)^{1/λ} - 1), built from the falling factorials directly
    let inner = series_from(N, |m| falling_one(m, &lam()).scale(&fact(m).recip().unwrap()));
    let gf = inner.exp().map_err(|e| e.to_string())?;
    for n in 0..=N {
        let row: Scalar = s2.row(n).iter().cloned().sum();
        let bel = deg_bell_number(n, &lam());
        ensure!(row == bel, "Σ_k S2λ({n},k) vs Bel_(n,λ)");
        ensure!(bel == gf.coeff(n).scale(&fact(n)), "Bel_(n,λ) vs series at n={n}");
    }
    ensure!(deg_bell_number(2, &lam()) == Scalar::int(2) - lam(), "Bel_(2,λ) = 2 - λ");
    Ok(())
}

fn cli_integration() -> Outcome {
    // 0: table, with an exact JSON round trip
    let out = degen(&["table", "--family", "deg-stirling1", "--n-max", "6", "--lambda", "sym", "--format", "json"]);
    ensure!(code(&out) == 0, "table exit {}", code(&out));
    let text = stdout(&out);
    ensure!(text.ends_with('\n') && !text.contains('\r'), "LF-terminated output");
    let json: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<Scalar>> = serde_json::from_value(json["values"].clone()).map_err(|e| e.to_string())?;
    let want = deg_stirling1_triangle(6, &lam());
    ensure!(rows == want.rows(), "JSON round trip of deg-stirling1");
    ensure!(json["lambda"] == "sym" && json["family"] == "deg-stirling1", "JSON header fields");

    let out = degen(&["compute", "--family", "deg-derangement", "--n", "2", "--lambda", "1/2"]);
    ensure!(code(&out) == 0 && stdout(&out) == "11\n", "compute deg-derangement");

    let out = degen(&["verify", "--suite", "theorem4-partial", "--n", "1", "--lambda", "2/7", "--truncate", "50"]);
    ensure!(code(&out) == 0, "partial-sum diagnostic exit {}", code(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).map_err(|e| e.to_string())?;
    ensure!(report["checks"][0]["status"] == "diagnostic", "diagnostic record");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("out.json");
    let path_s = path.to_str().unwrap();
    let out = degen(&["verify", "--suite", "all", "--n-max", "12", "--lambda", "1/3", "--report", path_s]);
    ensure!(code(&out) == 0, "verify all at λ=1/3 exit {}: {}", code(&out), stderr(&out));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
    ensure!(report["checks"].as_array().is_some_and(|c| !c.is_empty()), "report written");

    // 1: every corrupted triangle is caught with a witness
    for family in TriangleFamily::ALL {
        let target = format!("{}:3:1", family.name());
        let out = degen(&["verify", "--suite", "all", "--n-max", "6", "--truncate", "20", "--corrupt", &target]);
        ensure!(code(&out) == 1, "corrupt {target}: exit {}", code(&out));
        let report: Value = serde_json::from_str(&stdout(&out)).map_err(|e| e.to_string())?;
        let witnessed = report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["status"] == "fail" && !c["lhs"].is_null() && !c["rhs"].is_null() && c["lhs"] != c["rhs"]);
        ensure!(witnessed, "corrupt {target}: no witness");
    }

    // 2: usage and domain errors
    let out = degen(&["compute", "--family", "deg-derangement", "--lambda", "sym", "--n", "2"]);
    ensure!(code(&out) == 2 && stderr(&out).contains("SymbolicLambdaUnsupported"), "symbolic derangement");
    let out = degen(&["verify", "--suite", "all", "--lambda", "1"]);
    ensure!(code(&out) == 2 && stderr(&out).contains("LambdaOutOfRange"), "verify at λ=1");
    ensure!(code(&degen(&["table", "--bogus"])) == 2, "unknown flag");
    ensure!(code(&degen(&["compute", "--family", "deg-bell", "--n", "2", "--lambda", "0.5"])) == 2, "decimal λ");

    // 3: unwritable destinations
    let missing = dir.path().join("missing").join("x.csv");
    let missing = missing.to_str().unwrap();
    let out = degen(&["table", "--family", "derangement", "--n-max", "4", "--format", "csv", "--output", missing]);
    ensure!(code(&out) == 3, "table to missing dir exit {}", code(&out));
    let out = degen(&["verify", "--suite", "sign", "--n-max", "3", "--report", missing]);
    ensure!(code(&out) == 3, "report to missing dir exit {}", code(&out));
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("sign relation S_λ = (-1)^(n-k) S_1λ, symbolic, n ≤ 20", sign_relation),
        ("scaling oracle λ^(n-k)·classical, symbolic, n ≤ 20", scaling_oracle),
        ("generating-function cross-check, n ≤ 16", gf_cross_check),
        ("defining expansions as bivariate polynomials, n ≤ 16", defining_identities),
        ("Euler/first-kind identity, n ≤ 12, m ∈ {1,3,5}", theorem1),
        ("harmonic Bell formula for S_λ(n+1,r+1), r ≤ n ≤ 14", theorem2),
        ("partial Bell formula for S_λ(n,k), k ≤ n ≤ 14", theorem3),
        ("derangements: closed form, recurrence and series agree, n ≤ 14", theorem5),
        ("second derangement recurrence, 1 ≤ n ≤ 14", derangement_rec2),
        ("derangement moment identity and partial sums", theorem4),
        ("degenerate gamma recurrence at integers k ≤ 10", gamma_recurrence),
        ("gamma moments against quadrature, k ≤ 3", moment_quadrature),
        ("Bell recurrences against partition enumeration", bell_oracles),
        ("row sums of S_2λ equal degenerate Bell numbers, n ≤ 14", degenerate_bell),
        ("command-line exit codes, round trip and corruption hook", cli_integration),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
