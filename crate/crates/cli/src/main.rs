//! `covex`: JSON front end for the covexillary toolkit.
//!
//! Every command prints one JSON document on stdout and a short human
//! summary on stderr (`verify` prints JSON lines). Exit codes: 0 on success,
//! 2 on input errors, 3 when a verification fails.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use covex_core::conormal::{
    conormal_fiber_flag, conormal_fiber_matrix, in_conormal_flag, in_conormal_grass, in_conormal_matrix,
};
use covex_core::embedding::EmbeddingTarget;
use covex_core::equivariant::{
    base_fixed_point, double_schubert, localize_grass_class, raw_multidegree, t_names, verify_multidegree,
    xy_names, MultiPoly,
};
use covex_core::exactla::{Field, FieldSpec, PrimeField, Rationals};
use covex_core::kl::{covexillary_kl_check, kl_polynomial};
use covex_core::permcore::{
    covexillary_data, diagram, essential_set, find_pattern, rank_matrix, PartialPermutation,
};
use covex_core::pointfile::{matrix_to_json, parse_point_file, subspace_to_json, Point, PointKind};
use covex_core::suite::{run_suite, to_json_lines, SuiteConfig};
use covex_core::varieties::{
    flag_schubert_violation, grass_schubert_violation, in_matrix_schubert, matrix_schubert_violation,
    ConditionSet, GrassConditions, GrassIndex,
};

#[derive(Parser)]
#[command(name = "covex", version, about = "Covexillary Schubert varieties, embeddings and conormal checks")]
struct Cli {
    /// Scalar field: p:<prime> or Q.
    #[arg(long, global = true, default_value = "p:10007")]
    field: String,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Samples per case for `verify`.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Largest n swept by `verify`.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank matrix, diagram and essential set of a partial permutation.
    Ess { perm: String },
    /// Covexillary data, or a witness that there is none.
    Covex { perm: String },
    /// The permutation τ and the target conditions.
    Tau { perm: String },
    /// Image of a matrix under the embedding, with per-condition verdicts.
    Embed { perm: String, matrix: PathBuf },
    /// Schubert variety membership of a point file.
    Member {
        kind: SpaceKind,
        file: PathBuf,
        /// A permutation for matrix and flag points, an increasing sequence for Grassmannian points.
        index: String,
    },
    /// Conormal variety membership and conormal fibers.
    Conormal {
        #[command(subcommand)]
        command: ConormalCommand,
    },
    /// `kl <u> <w>`, or `kl covex-check <w>`.
    Kl {
        #[arg(num_args = 2)]
        args: Vec<String>,
    },
    /// Double Schubert polynomials and localized classes.
    Schubert {
        action: SchubertAction,
        perm: String,
    },
    /// Runs a verification suite and prints JSON lines.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum ConormalCommand {
    /// Membership of a cotangent point; the file holds {"x","y"}, {"flag","z"} or {"basis","x"}.
    Member { kind: SpaceKind, file: PathBuf, perm: String },
    /// Basis of the conormal fiber over a matrix or flag point.
    Fiber { kind: FiberKind, file: PathBuf, perm: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceKind {
    Matrix,
    Flag,
    Grass,
}

#[derive(Clone, Copy, ValueEnum)]
enum FiberKind {
    Matrix,
    Flag,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchubertAction {
    Double,
    Localize,
    Verify,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<covex_core::Error> for Failure {
    fn from(e: covex_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<covex_core::permcore::PermError> for Failure {
    fn from(e: covex_core::permcore::PermError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn perm(s: &str) -> Result<PartialPermutation, Failure> {
    s.parse().map_err(|e: covex_core::permcore::PermError| Failure::Input(format!("{s:?}: {e}")))
}

fn grass_seq(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad increasing sequence {s:?}"));
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.contains([' ', ',']) {
        t.split([' ', ',']).filter(|p| !p.is_empty()).map(|p| p.parse().map_err(|_| bad())).collect()
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

/// Writes to stdout, ignoring a reader that went away.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(doc: &Value, summary: &str) {
    out(&format!("{}\n", serde_json::to_string_pretty(doc).expect("json")));
    eprintln!("{summary}");
}

fn poly_json(f: &MultiPoly, names: &[String]) -> Value {
    json!({ "text": f.render(names), "terms": f.to_terms() })
}

fn run<F: Field>(field: &F, cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Ess { perm: p } => {
            let w = perm(p)?;
            let ess = essential_set(&w);
            let doc = json!({
                "w": w,
                "rank_matrix": rank_matrix(&w).rows(),
                "diagram": diagram(&w),
                "essential": ess,
            });
            emit(&doc, &format!("{w}: {} essential boxes", ess.len()));
        }
        Command::Covex { perm: p } => {
            let w = perm(p)?;
            match covexillary_data(&w) {
                Ok(data) => {
                    emit(&json!({ "w": w, "covexillary": true, "triples": data.triples() }), &format!("{w} is covexillary"))
                }
                Err(e) => {
                    let pattern: PartialPermutation = "3412".parse().expect("literal");
                    let witness = find_pattern(&w, &pattern);
                    emit(
                        &json!({ "w": w, "covexillary": false, "reason": e.to_string(), "pattern_3412": witness }),
                        &format!("{w} is not covexillary: {e}"),
                    );
                }
            }
        }
        Command::Tau { perm: p } => {
            let w = perm(p)?;
            let target = EmbeddingTarget::of(&w)?;
            let doc = json!({
                "tau": target.tau.to_string(),
                "conditions": target.conditions,
                "v_hat": target.grass_index()?.seq(),
            });
            emit(&doc, &format!("tau = {}", target.tau));
        }
        Command::Embed { perm: p, matrix } => {
            let w = perm(p)?;
            let target = EmbeddingTarget::of(&w)?;
            let Point::Matrix(x) = parse_point_file(field, matrix, PointKind::Matrix)? else { unreachable!() };
            let v = target.embed_point(&x)?;
            let mut rows = Vec::new();
            for c in &target.conditions {
                let dim = covex_core::varieties::dim_plus_standard(&v, c.t);
                rows.push(json!({ "t": c.t, "bound": c.bound, "dim": dim, "holds": dim <= c.bound }));
            }
            let member = target.contains(&v)?;
            let in_matrix = in_matrix_schubert(&x, &w, ConditionSet::Full)?;
            let doc = json!({ "tau": target.tau.to_string(), "basis": subspace_to_json(&v), "conditions": rows, "member": member, "matrix_member": in_matrix });
            emit(&doc, &format!("target conditions hold: {member}"));
        }
        Command::Member { kind, file, index } => {
            let doc = match kind {
                SpaceKind::Matrix => {
                    let w = perm(index)?;
                    let Point::Matrix(x) = parse_point_file(field, file, PointKind::Matrix)? else { unreachable!() };
                    let v = matrix_schubert_violation(&x, &w, ConditionSet::Full)?;
                    json!({ "member": v.is_none(), "violation": v })
                }
                SpaceKind::Flag => {
                    let w = perm(index)?;
                    let Point::Flag(fl) = parse_point_file(field, file, PointKind::Flag)? else { unreachable!() };
                    let v = flag_schubert_violation(&fl, &w)?;
                    json!({ "member": v.is_none(), "violation": v })
                }
                SpaceKind::Grass => {
                    let Point::Grass(v) = parse_point_file(field, file, PointKind::Grass)? else { unreachable!() };
                    let idx = GrassIndex::new(v.ambient(), grass_seq(index)?)?;
                    let bad = grass_schubert_violation(&v, &idx, GrassConditions::All)?;
                    json!({ "member": bad.is_none(), "violation": bad })
                }
            };
            let summary = format!("member: {}", doc["member"]);
            emit(&doc, &summary);
        }
        Command::Conormal { command } => conormal(field, command)?,
        Command::Kl { args } => {
            if args[0] == "covex-check" {
                let w = perm(&args[1])?;
                let report = covexillary_kl_check(&w)?;
                let doc = serde_json::to_value(&report).expect("json");
                let bad = report.rows.iter().filter(|r| !r.matched).count();
                emit(&doc, &format!("{} rows, {bad} mismatches", report.rows.len()));
                if bad > 0 {
                    return Err(Failure::Verification(format!("{bad} KL mismatches for {w}")));
                }
            } else {
                let (u, w) = (perm(&args[0])?, perm(&args[1])?);
                let p = kl_polynomial(&u, &w)?;
                emit(&json!({ "text": p.to_string(), "coeffs": p.coeffs() }), &format!("P = {p}"));
            }
        }
        Command::Schubert { action, perm: p } => {
            let w = perm(p)?;
            let names = xy_names(w.n());
            match action {
                SchubertAction::Double => {
                    let f = double_schubert(&w)?;
                    emit(&poly_json(&f, &names), &f.render(&names));
                }
                SchubertAction::Localize => {
                    let target = EmbeddingTarget::of(&w)?;
                    let point = base_fixed_point(&target)?;
                    let local = localize_grass_class(&target.grass_index()?, &point)?;
                    let pulled = raw_multidegree(&target)?;
                    let doc = json!({
                        "point": point.seq(),
                        "v_hat": target.grass_index()?.seq(),
                        "localized": poly_json(&local, &t_names(2 * w.n())),
                        "pulled_back": poly_json(&pulled, &names),
                    });
                    emit(&doc, &local.render(&t_names(2 * w.n())));
                }
                SchubertAction::Verify => {
                    let report = verify_multidegree(&w)?;
                    emit(&serde_json::to_value(&report).expect("json"), &format!("matched: {}", report.matched));
                    if !report.matched {
                        return Err(Failure::Verification(format!("multidegree mismatch for {w}")));
                    }
                }
            }
        }
        Command::Verify { suite } => {
            let FieldSpec::Prime(prime) = field.spec() else {
                return Err(Failure::Input("suites sample over a prime field".into()));
            };
            let config = SuiteConfig { suite: suite.clone(), n_max: cli.nmax, trials: cli.trials, prime, seed: cli.seed };
            let verdicts = run_suite(&config)?;
            out(&to_json_lines(&verdicts));
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            eprintln!("{suite}: {} cases, {failed} failed", verdicts.len());
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} cases of {suite} failed")));
            }
        }
    }
    Ok(())
}

fn conormal<F: Field>(field: &F, command: &ConormalCommand) -> Outcome {
    match command {
        ConormalCommand::Member { kind, file, perm: p } => {
            let w = perm(p)?;
            let verdict = match kind {
                SpaceKind::Matrix => {
                    let Point::Cotangent(pt) = parse_point_file(field, file, PointKind::Cotangent)? else { unreachable!() };
                    in_conormal_matrix(&pt, &w)?
                }
                SpaceKind::Flag => {
                    let Point::SpringerFlag(pt) = parse_point_file(field, file, PointKind::SpringerFlag)? else {
                        unreachable!()
                    };
                    in_conormal_flag(&pt, &w)?
                }
                SpaceKind::Grass => {
                    let Point::SpringerGrass(pt) = parse_point_file(field, file, PointKind::SpringerGrass)? else {
                        unreachable!()
                    };
                    in_conormal_grass(&pt, &EmbeddingTarget::of(&w)?.conditions)?
                }
            };
            let summary = match verdict.first_failure() {
                Some(f) => format!("member: false (pair ({}, {}) has rank {} > {})", f.i, f.j, f.rank, f.bound),
                None => format!("member: {}", verdict.member),
            };
            emit(&serde_json::to_value(&verdict).expect("json"), &summary);
        }
        ConormalCommand::Fiber { kind, file, perm: p } => {
            let w = perm(p)?;
            let space = match kind {
                FiberKind::Matrix => {
                    let Point::Matrix(x) = parse_point_file(field, file, PointKind::Matrix)? else { unreachable!() };
                    conormal_fiber_matrix(&x, &w)?
                }
                FiberKind::Flag => {
                    let Point::Flag(fl) = parse_point_file(field, file, PointKind::Flag)? else { unreachable!() };
                    conormal_fiber_flag(fl.generator(), &w)?
                }
            };
            let basis: Vec<Value> = space.basis().iter().map(matrix_to_json).collect();
            emit(&json!({ "dim": space.dim(), "basis": basis }), &format!("fiber dimension {}", space.dim()));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec: FieldSpec = match cli.field.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match spec {
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(f) => run(&f, &cli),
            Err(e) => Err(Failure::Input(e.to_string())),
        },
        FieldSpec::Rational => run(&Rationals, &cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
