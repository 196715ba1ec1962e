//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use pentachain::builtin;
use pentachain::chain::{build_chain, dlambda, domega};
use pentachain::exact::int;
use pentachain::geometry::{assign_geometry, domega_dlambda, GeometryAssignment, DEFAULT_RETRIES};
use pentachain::pachner::random_walk_traced;
use pentachain::pentagon::run_suite;
use pentachain::torsion::{
    complete_partition, invariant_with_geometry, reference_f1_rows, select_partition, tau,
};
use pentachain::{Rational, Triangulation};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run_cli(args: &[&str]) -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pentachain"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    let json = serde_json::from_slice(&out.stdout).map_err(|e| format!("bad json: {e}"))?;
    Ok((json, elapsed))
}

fn exact_builtin(name: &str, want: &str, limit: Duration) -> Outcome {
    let (report, elapsed) = run_cli(&["invariant", "--builtin", name, "--json"])?;
    let got = report["abs_invariant"].as_str().unwrap_or("?").to_string();
    let detail = format!("abs_invariant {got} in {} ms", elapsed.as_millis());
    if got != want {
        return Err(format!("{detail}, want {want}"));
    }
    if elapsed >= limit {
        return Err(format!("{detail}, limit {} ms", limit.as_millis()));
    }
    Ok(detail)
}

fn criterion_1() -> Outcome {
    exact_builtin("s3", "1", Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    exact_builtin("rp3", "64", Duration::from_secs(5))
}

fn face_areas_product(g: &GeometryAssignment) -> Rational {
    g.area(0, 1, 2) * g.area(0, 1, 3) * g.area(0, 2, 3) * g.area(1, 2, 3)
}

fn criterion_3() -> Outcome {
    let t = builtin::s3();
    let mut geometries = vec![GeometryAssignment::from_points(&[(0, 0), (1, 0), (0, 1), (1, 1)])];
    for seed in 0..5 {
        geometries.push(assign_geometry(&t, seed, DEFAULT_RETRIES).map_err(|e| e.to_string())?);
    }
    for (i, g) in geometries.iter().enumerate() {
        let c = build_chain(&t, g).map_err(|e| e.to_string())?;
        let fixed = [reference_f1_rows(), vec![], vec![], vec![]];
        let p = complete_partition(&c, &fixed, None).map_err(|e| e.to_string())?;
        if p.rows[0] != reference_f1_rows() {
            return Err(format!("geometry {i}: f1 rows {:?}", p.rows[0]));
        }
        let m = tau(&c, &p).map_err(|e| e.to_string())?.minors;
        let r12 = (&m[0] / &m[1]).abs();
        let r54 = (&m[4] / &m[3]).abs();
        let want54 = (int(4) / face_areas_product(g)).abs();
        if r12 != int(8) || r54 != want54 {
            return Err(format!("geometry {i}: |f1/f2| = {r12}, |f5/f4| = {r54} (want 8, {want54})"));
        }
    }
    Ok(format!("|f1/f2| = 8 and |f5/f4| = 4/|prod S| on {} geometries", geometries.len()))
}

fn criterion_4() -> Outcome {
    let t = builtin::rp3();
    let names = ["b", "c", "d", "h", "g", "f"];
    let edge = |n: &str| builtin::rp3_edge(&t, n).ok_or_else(|| format!("no edge {n}"));
    let partner = |n: &str| match n {
        "b" => "f",
        "f" => "b",
        "c" => "g",
        "g" => "c",
        "d" => "h",
        _ => "d",
    };
    for seed in 0..5 {
        let g = assign_geometry(&t, seed, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
        let lam = g.edge_values(&t);
        let d = domega_dlambda(&t, &lam, edge("b")?, edge("f")?).map_err(|e| e.to_string())?;
        let want = (int(2) / (g.area(0, 1, 2) * g.area(0, 1, 3))).abs();
        if d.abs() != want {
            return Err(format!("seed {seed}: |dω_b/dλ_f| = {}, want {want}", d.abs()));
        }
        let c = build_chain(&t, &g).map_err(|e| e.to_string())?;
        let f3 = c.f(3);
        for row in names {
            for col in names {
                let v = f3
                    .entry(&domega(edge(row)?), &dlambda(edge(col)?))
                    .map_err(|e| e.to_string())?;
                let expect_nonzero = partner(row) == col;
                if v.is_zero() == expect_nonzero {
                    return Err(format!("seed {seed}: entry ({row}, {col}) = {v}"));
                }
            }
        }
    }
    Ok("|dω_b/dλ_f| = 2/|S_ABC S_ABD|; only the six paired entries are nonzero (5 seeds)".into())
}

fn builtins() -> [(&'static str, Triangulation); 2] {
    [("s3", builtin::s3()), ("rp3", builtin::rp3())]
}

fn criterion_5() -> Outcome {
    let seeds = 50;
    for (name, t) in builtins() {
        for seed in 0..seeds {
            let g = assign_geometry(&t, seed, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
            let c = build_chain(&t, &g).map_err(|e| e.to_string())?;
            c.verify_chain().map_err(|d| format!("{name} seed {seed}: {d:?}"))?;
        }
    }
    Ok(format!("all composites vanish, {seeds} seeds per built-in"))
}

fn criterion_6() -> Outcome {
    let wants = [("s3", [6, 6, 0, 6, 6]), ("rp3", [6, 6, 6, 6, 6])];
    let mut detail = Vec::new();
    for ((name, t), (_, want)) in builtins().into_iter().zip(wants) {
        let g = assign_geometry(&t, 0, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
        let a = build_chain(&t, &g).map_err(|e| e.to_string())?.check_acyclic();
        if a.ranks != want || a.expected != want || !a.acyclic {
            return Err(format!("{name}: ranks {:?}, pattern {:?}", a.ranks, a.expected));
        }
        detail.push(format!("{name} {:?}", a.ranks));
    }
    Ok(detail.join(", "))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let r = run_suite(7, 100).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let detail = format!(
        "pentagon {}/100, flatness {}/100 in {} ms",
        r.pentagon_passed,
        r.flatness_passed,
        elapsed.as_millis()
    );
    if r.pentagon_passed != 100 || r.flatness_passed != 100 || elapsed >= Duration::from_secs(5) {
        return Err(detail);
    }
    Ok(detail)
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (walks, steps) = (5, 20);
    for (name, t) in builtins() {
        let base = invariant_with_geometry(&t, &assign_geometry(&t, 0, DEFAULT_RETRIES).map_err(|e| e.to_string())?, None)
            .map_err(|e| e.to_string())?
            .abs_invariant;
        for w in 0..walks {
            let walk = random_walk_traced(&t, steps, 1000 + w, 16);
            if walk.moves.len() < steps {
                return Err(format!("{name} walk {w}: only {} moves", walk.moves.len()));
            }
            let g = assign_geometry(&walk.triangulation, w, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
            let got = invariant_with_geometry(&walk.triangulation, &g, None)
                .map_err(|e| format!("{name} walk {w}: {e}"))?
                .abs_invariant;
            if got != base {
                return Err(format!("{name} walk {w}: {got} vs {base}, moves {:?}", walk.moves));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {} s", elapsed.as_secs()));
    }
    Ok(format!(
        "{walks} walks x {steps} moves per built-in preserved in {} ms",
        elapsed.as_millis()
    ))
}

fn criterion_9() -> Outcome {
    for (name, t) in builtins() {
        let mut values = Vec::new();
        for seed in 0..10 {
            let g = assign_geometry(&t, seed, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
            values.push(invariant_with_geometry(&t, &g, None).map_err(|e| e.to_string())?.abs_invariant);
        }
        let g = assign_geometry(&t, 0, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
        let c = build_chain(&t, &g).map_err(|e| e.to_string())?;
        let base = tau(&c, &select_partition(&c, None).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .tau;
        for pseed in 0..10 {
            let p = select_partition(&c, Some(pseed)).map_err(|e| e.to_string())?;
            let tv = tau(&c, &p).map_err(|e| e.to_string())?.tau;
            if tv.abs() != base.abs() {
                return Err(format!("{name} partition {pseed}: tau {tv} vs {base}"));
            }
            values.push(invariant_with_geometry(&t, &g, Some(pseed)).map_err(|e| e.to_string())?.abs_invariant);
        }
        if values.iter().any(|v| v != &values[0]) {
            return Err(format!("{name}: values {values:?}"));
        }
    }
    Ok("10 geometry seeds and 10 partition seeds per built-in agree".into())
}

fn criterion_10() -> Outcome {
    let r = run_suite(10, 100).map_err(|e| e.to_string())?;
    let detail = format!("vector identities {}/100", r.vector_passed);
    if r.vector_passed != 100 {
        return Err(format!("{detail}, first failure at sample {:?}", r.first_failure));
    }
    Ok(detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sphere value", criterion_1),
        ("projective space value", criterion_2),
        ("intermediate ratios", criterion_3),
        ("derivative value", criterion_4),
        ("chain property", criterion_5),
        ("acyclicity ranks", criterion_6),
        ("pentagon identity", criterion_7),
        ("pachner invariance", criterion_8),
        ("gauge independence", criterion_9),
        ("local identity suite", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
