use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::Signed;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pentachain::geometry::{assign_geometry, check_geometry};
use pentachain::pachner::{enumerate_sites, random_walk_traced, MoveKind};
use pentachain::pentagon::run_suite;
use pentachain::torsion::{invariant_with_geometry, select_partition, tau, InvariantResult};
use pentachain::{builtin, build_chain, apply_move, GeometryAssignment, InvariantError, Rational, TorsionError, Triangulation};

use crate::error::{exit, CliError};
use crate::report::Report;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Extra geometry seeds tried by `verify`.
const GEOMETRY_SEEDS: u64 = 3;
/// Partition seeds tried by `verify`.
const PARTITION_SEEDS: u64 = 10;

/// Text to print and the exit code to finish with.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

pub struct Input {
    pub builtin: Option<String>,
    pub file: Option<PathBuf>,
}

impl Input {
    pub fn describe(&self) -> String {
        match (&self.builtin, &self.file) {
            (Some(b), _) => format!("--builtin {b}"),
            (None, Some(f)) => format!("--file {}", f.display()),
            (None, None) => String::new(),
        }
    }

    pub fn is_given(&self) -> bool {
        self.builtin.is_some() || self.file.is_some()
    }

    pub fn load(&self) -> Result<Triangulation, CliError> {
        match (&self.builtin, &self.file) {
            (Some(name), _) => builtin::load(name).map_err(|e| CliError::new(exit::PARSE, e.to_string())),
            (None, Some(path)) => Ok(Triangulation::parse(&read(path)?)?),
            (None, None) => Err(CliError::new(exit::PARSE, "give --builtin <name> or --file <path>")),
        }
    }
}

pub struct GeometryChoice {
    pub seed: u64,
    pub retries: usize,
    pub file: Option<PathBuf>,
}

impl GeometryChoice {
    pub fn describe(&self) -> String {
        match &self.file {
            Some(f) => format!("--geometry {}", f.display()),
            None => format!("--seed {} --retries {}", self.seed, self.retries),
        }
    }

    fn assign(&self, t: &Triangulation) -> Result<GeometryAssignment, CliError> {
        match &self.file {
            Some(path) => {
                let g = GeometryAssignment::parse(&read(path)?, t.vertices().len())?;
                check_geometry(t, &g)?;
                Ok(g)
            }
            None => Ok(assign_geometry(t, self.seed, self.retries)?),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", path.display())))
}

/// Independent seed for a named purpose, derived from the run seed.
pub fn sub_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

fn r(v: &Rational) -> Value {
    Value::String(v.to_string())
}

fn header(report: &mut Report, command: String, t: &Triangulation) {
    let f = t.f_vector();
    report
        .push("command", command)
        .push("version", VERSION)
        .push("f_vector", vec![f.vertices, f.edges, f.faces, f.tetrahedra]);
}

fn push_result(report: &mut Report, res: &InvariantResult) {
    report
        .push("ranks", res.ranks.to_vec())
        .push("acyclic", true)
        .push("tau", r(&res.tau))
        .push("face_product", r(&res.face_product))
        .push("vertex_count", res.vertex_count)
        .push("invariant", r(&res.invariant))
        .push("abs_invariant", r(&res.abs_invariant));
}

pub fn invariant(input: &Input, geo: &GeometryChoice, json: bool, timing: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let t = input.load()?;
    let g = geo.assign(&t)?;
    let mut report = Report::new();
    header(&mut report, format!("invariant {} {}", input.describe(), geo.describe()), &t);
    report.push("seed", g.seed.map_or(Value::Null, Value::from));
    let code = match invariant_with_geometry(&t, &g, None) {
        Ok(res) => {
            push_result(&mut report, &res);
            0
        }
        Err(InvariantError::Torsion(TorsionError::NotAcyclic(a))) => {
            report
                .push("ranks", a.ranks.to_vec())
                .push("expected_ranks", a.expected.to_vec())
                .push("acyclic", false);
            exit::NOT_ACYCLIC
        }
        Err(e) => return Err(e.into()),
    };
    if timing {
        report.push("timing_ms", start.elapsed().as_millis() as u64);
    }
    Ok(Outcome {
        output: report.render(json),
        code,
    })
}

pub fn dump_chain(input: &Input, geo: &GeometryChoice) -> Result<Outcome, CliError> {
    let t = input.load()?;
    let g = geo.assign(&t)?;
    let c = build_chain(&t, &g)?;
    Ok(Outcome::ok(c.dump()))
}

pub fn pentagon(seed: u64, samples: usize, json: bool) -> Result<Outcome, CliError> {
    let mut report = Report::new();
    report
        .push("command", format!("pentagon --seed {seed} --samples {samples}"))
        .push("version", VERSION);
    let code = push_pentagon(&mut report, seed, samples)?;
    Ok(Outcome {
        output: report.render(json),
        code,
    })
}

fn push_pentagon(report: &mut Report, seed: u64, samples: usize) -> Result<i32, CliError> {
    let s = run_suite(seed, samples)?;
    let status = |n: usize| format!("{} {n}/{}", if n == s.samples { "pass" } else { "FAIL" }, s.samples);
    report
        .push("pentagon", status(s.pentagon_passed))
        .push("flatness", status(s.flatness_passed))
        .push("vector_identities", status(s.vector_passed));
    if let Some(i) = s.first_failure {
        report.push("reproducer", format!("pentagon --seed {seed} --samples {}", i + 1));
    }
    Ok(if s.passed() { 0 } else { exit::VIOLATION })
}

pub struct VerifyOptions {
    pub walks: usize,
    pub steps: usize,
    pub samples: usize,
    pub max_tets: usize,
    pub pentagon_only: bool,
    pub json: bool,
    pub timing: bool,
}

pub fn verify(input: &Input, geo: &GeometryChoice, o: &VerifyOptions) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut report = Report::new();
    let seed = geo.seed;
    if o.pentagon_only || !input.is_given() {
        if !o.pentagon_only {
            return Err(CliError::new(exit::PARSE, "give --builtin <name>, --file <path> or --pentagon-only"));
        }
        report
            .push("command", format!("verify --pentagon-only --seed {seed} --samples {}", o.samples))
            .push("version", VERSION);
        let code = push_pentagon(&mut report, sub_seed(seed, 1), o.samples)?;
        report.push("overall", if code == 0 { "pass" } else { "FAIL" });
        if o.timing {
            report.push("timing_ms", start.elapsed().as_millis() as u64);
        }
        return Ok(Outcome {
            output: report.render(o.json),
            code,
        });
    }

    let t = input.load()?;
    let command = format!(
        "verify {} {} --walks {} --steps {} --samples {} --max-tets {}",
        input.describe(),
        geo.describe(),
        o.walks,
        o.steps,
        o.samples,
        o.max_tets
    );
    header(&mut report, command, &t);
    report.push("seed", seed);
    let mut code = 0;

    let g = geo.assign(&t)?;
    let c = build_chain(&t, &g)?;
    match c.verify_chain() {
        Ok(()) => {
            report.push("chain", "pass");
        }
        Err(d) => fail(&mut report, &mut code, "chain", format!("f{}·f{} at ({}, {}) = {}", d.k + 1, d.k, d.row, d.col, d.value)),
    }
    let acyc = c.check_acyclic();
    report.push("ranks", acyc.ranks.to_vec());
    if !acyc.acyclic {
        report.push("expected_ranks", acyc.expected.to_vec()).push("acyclic", "FAIL");
        report.push("overall", "FAIL");
        return Ok(Outcome {
            output: report.render(o.json),
            code: exit::NOT_ACYCLIC,
        });
    }
    report.push("acyclic", "pass");

    let base = invariant_with_geometry(&t, &g, None)?;
    report.push("abs_invariant", r(&base.abs_invariant));

    let mut mismatched = Vec::new();
    for i in 0..GEOMETRY_SEEDS {
        let s = sub_seed(seed, 10 + i);
        let g2 = assign_geometry(&t, s, geo.retries)?;
        let v = invariant_with_geometry(&t, &g2, None)?.abs_invariant;
        if v != base.abs_invariant {
            mismatched.push(format!("seed {s} gives {v}"));
        }
    }
    if mismatched.is_empty() {
        report.push("geometry_seeds", format!("pass {GEOMETRY_SEEDS}"));
    } else {
        fail(&mut report, &mut code, "geometry_seeds", mismatched.join("; "));
    }

    let base_tau = base.tau.abs();
    let mut bad = Vec::new();
    for i in 0..PARTITION_SEEDS {
        let s = sub_seed(seed, 20 + i);
        let p = select_partition(&c, Some(s)).map_err(InvariantError::from)?;
        let v = tau(&c, &p).map_err(InvariantError::from)?.tau;
        if v.abs() != base_tau {
            bad.push(format!("partition seed {s} gives tau {v}"));
        }
    }
    if bad.is_empty() {
        report.push("partitions", format!("pass {PARTITION_SEEDS}"));
    } else {
        fail(&mut report, &mut code, "partitions", bad.join("; "));
    }

    let pent = push_pentagon(&mut report, sub_seed(seed, 1), o.samples)?;
    if pent != 0 && code == 0 {
        code = pent;
    }

    let mut values = Vec::new();
    let mut walk_failures = Vec::new();
    let mut skipped = 0;
    for w in 0..o.walks {
        let walk_seed = sub_seed(seed, 100 + w as u64);
        let walk = random_walk_traced(&t, o.steps, walk_seed, o.max_tets);
        let gw = match assign_geometry(&walk.triangulation, sub_seed(walk_seed, 0), geo.retries) {
            Ok(g) => g,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        match invariant_with_geometry(&walk.triangulation, &gw, None) {
            Ok(res) => {
                if res.abs_invariant != base.abs_invariant {
                    walk_failures.push(format!(
                        "walk {w} (pachner {} --steps {} --seed {walk_seed} --max-tets {}) gives {}",
                        input.describe(),
                        o.steps,
                        o.max_tets,
                        res.abs_invariant
                    ));
                }
                values.push(r(&res.abs_invariant));
            }
            Err(e) => walk_failures.push(format!("walk {w} seed {walk_seed}: {e}")),
        }
    }
    if walk_failures.is_empty() {
        report.push("walks", format!("pass {} x {} steps", o.walks, o.steps));
    } else {
        fail(&mut report, &mut code, "walks", walk_failures.join("; "));
    }
    report.push("walk_invariants", values);
    if skipped > 0 {
        report.push("walks_skipped", skipped);
    }
    report.push("overall", if code == 0 { "pass" } else { "FAIL" });
    if o.timing {
        report.push("timing_ms", start.elapsed().as_millis() as u64);
    }
    Ok(Outcome {
        output: report.render(o.json),
        code,
    })
}

fn fail(report: &mut Report, code: &mut i32, key: &str, detail: String) {
    report.push(key, format!("FAIL {detail}"));
    if *code == 0 {
        *code = exit::VIOLATION;
    }
}

pub struct PachnerOptions {
    pub steps: usize,
    pub seed: u64,
    pub max_tets: usize,
    pub kind: Option<MoveKind>,
    pub site: usize,
    pub json: bool,
}

pub fn pachner(input: &Input, o: &PachnerOptions) -> Result<Outcome, CliError> {
    let t = input.load()?;
    let (result, moves) = match o.kind {
        Some(kind) => {
            let sites = enumerate_sites(&t, kind);
            let site = *sites.get(o.site).ok_or_else(|| {
                CliError::new(exit::VALIDATION, format!("{kind} has {} sites, index {} requested", sites.len(), o.site))
            })?;
            (apply_move(&t, site)?, vec![site])
        }
        None => {
            let w = random_walk_traced(&t, o.steps, o.seed, o.max_tets);
            (w.triangulation, w.moves)
        }
    };
    let command = match o.kind {
        Some(k) => format!("pachner {} --move {k} --site {}", input.describe(), o.site),
        None => format!(
            "pachner {} --steps {} --seed {} --max-tets {}",
            input.describe(),
            o.steps,
            o.seed,
            o.max_tets
        ),
    };
    let f = result.f_vector();
    let output = if o.json {
        let mut report = Report::new();
        report
            .push("command", command)
            .push("version", VERSION)
            .push("moves", moves.iter().map(|m| m.to_string()).collect::<Vec<_>>())
            .push("f_vector", vec![f.vertices, f.edges, f.faces, f.tetrahedra])
            .push("triangulation", result.to_text());
        report.to_json()
    } else {
        let mut out = format!("# {command}\n# f_vector {f}\n");
        for m in &moves {
            out.push_str(&format!("# move {m}\n"));
        }
        out + &result.to_text()
    };
    Ok(Outcome::ok(output))
}
