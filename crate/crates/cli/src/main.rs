//! `hcstem`: stems, audits, pair checks, structure builds and HC enumeration.
//!
//! Exit codes: 0 pass, 1 failed verification or negative verdict, 2 usage error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hcstem::classify::{audit_type, enumerate_hc_spaces};
use hcstem::hcstruct::{dense, verify_cayley, Phases, Structure, VerificationReport};
use hcstem::pairs::{check_pair, PairSpec, Substem};
use hcstem::roots::{ReductiveShape, SimpleType};
use hcstem::scalar::TowerScalar;
use hcstem::selftest::selftest;
use hcstem::Algebra;

#[derive(Parser)]
#[command(name = "hcstem", version, about = "Stems of root systems and homogeneous hypercomplex structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the stem, its Hasse diagram and srank.
    Stem {
        #[arg(long = "type")]
        ty: ReductiveShape,
        /// Write the Hasse diagram as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Deficiencies of every antichain of a simple type.
    Audit {
        #[arg(long = "type")]
        ty: SimpleType,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a stemmed subalgebra gives a hypercomplex pair.
    Pair {
        #[arg(long)]
        g: ReductiveShape,
        /// 1-based stem positions, comma separated, or "none".
        #[arg(long, default_value = "none")]
        substem: String,
        #[arg(long, default_value_t = 0)]
        ok_dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build (I, J) on 𝔭 and verify it.
    Build {
        #[arg(long)]
        g: ReductiveShape,
        #[arg(long, default_value = "none")]
        substem: String,
        #[arg(long, default_value_t = 0)]
        ok_dim: usize,
        /// Unit-modulus phases: one value for every stem element, or one per element.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        rho: Vec<TowerScalar>,
        #[arg(long, value_enum, default_value_t = Verify::All)]
        verify: Verify,
        /// Include I and J as dense matrices in the output.
        #[arg(long)]
        operators: bool,
        #[arg(long)]
        json: bool,
    },
    /// List HC spaces up to a dimension.
    Enumerate {
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant battery over all simple types of small rank.
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Verify {
    /// Structure identities and Cayley transforms.
    All,
    Structure,
    Cayley,
    None,
}

/// Failure modes that map onto exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<hcstem::Error> for Failure {
    fn from(e: hcstem::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(json: bool, value: Value, text: String) {
    let out = if json { serde_json::to_string_pretty(&value).expect("serializable") + "\n" } else { text };
    // a closed pipe downstream is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn report_text(r: &VerificationReport) -> String {
    let width = r.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.checks {
        let pad = width - c.name.chars().count();
        let status = if c.ok() { "ok" } else { "FAIL" };
        let _ =
            writeln!(s, "{}{}  {:>7} checked  {:>5} failed  {status}", c.name, " ".repeat(pad), c.checked, c.failed);
    }
    s
}

fn stem(shape: ReductiveShape, dot: Option<PathBuf>, json: bool) -> Outcome {
    let alg = Algebra::new(&shape)?;
    let rs = alg.rs();
    let st = alg.stem();
    if let Some(path) = dot {
        std::fs::write(&path, st.hasse_dot(rs))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let edges: Vec<(usize, usize)> = st.covering_edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect();
    let roots: Vec<Value> = st
        .elements()
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let r = rs.root(g);
            json!({
                "index": i + 1,
                "component": r.component + 1,
                "coords": r.coords,
                "theta_size": st.theta(i).len(),
                "phi_size": st.phi(i).len(),
            })
        })
        .collect();
    let value = json!({
        "shape": shape.to_string(),
        "rank": alg.rank(),
        "srank": alg.srank(),
        "stem": roots,
        "hasse_edges": edges,
    });
    let mut text = format!("{shape}: rank {}, srank {}\n", alg.rank(), alg.srank());
    for (i, &g) in st.elements().iter().enumerate() {
        let _ = writeln!(
            text,
            "  γ{:<3} {:<28} |Θ⁺| = {:<4} |Φ⁺| = {}",
            i + 1,
            rs.root(g).to_string(),
            st.theta(i).len(),
            st.phi(i).len()
        );
    }
    let e: Vec<String> = edges.iter().map(|(i, j)| format!("γ{i} → γ{j}")).collect();
    let _ = writeln!(text, "  Hasse: {}", if e.is_empty() { "no edges".into() } else { e.join(", ") });
    emit(json, value, text);
    Ok(())
}

fn audit(t: SimpleType, json: bool) -> Outcome {
    let table = audit_type(t)?;
    let mut text = format!("{t}: {:?}\n", table.proposition);
    for r in &table.rows {
        let m: Vec<String> = r.antichain.iter().map(|i| format!("γ{}", i + 1)).collect();
        let m = if m.is_empty() { "∅".to_string() } else { m.join(",") };
        let _ = writeln!(
            text,
            "  𝓜 = {:<16} deficiency {:>3}  claim {:?}  {}",
            m,
            r.deficiency,
            r.claim,
            if r.holds { "ok" } else { "FAIL" }
        );
    }
    emit(json, to_value(&table), text);
    verdict(table.holds())
}

fn spec_for(alg: &Algebra, shape: &ReductiveShape, substem: &str, ok_dim: usize) -> Result<PairSpec, Failure> {
    let sub = Substem::parse(alg.stem(), substem)?;
    Ok(PairSpec::new(shape.clone(), sub, ok_dim))
}

fn pair(shape: ReductiveShape, substem: &str, ok_dim: usize, json: bool) -> Outcome {
    let alg = Algebra::new(&shape)?;
    let spec = spec_for(&alg, &shape, substem, ok_dim)?;
    let report = check_pair(&alg, &spec)?;
    let mut value = to_value(&report);
    value["shape"] = json!(shape.to_string());
    value["substem"] = json!(spec.substem.one_based());
    let reasons: Vec<String> = report.reasons.iter().map(ToString::to_string).collect();
    let text = format!(
        "{shape} ⊃ substem {}: rank {} / {}, srank {} / {}, dim {} / {}\n  deficiency {}, codimension {}\n  verdict {}{}\n",
        spec.substem,
        report.rank_g,
        report.rank_k,
        report.srank_g,
        report.srank_k,
        report.dim_g,
        report.dim_k,
        report.deficiency,
        report.dim_diff,
        report.verdict,
        if reasons.is_empty() { String::new() } else { format!(" ({})", reasons.join(", ")) }
    );
    emit(json, value, text);
    verdict(report.verdict)
}

struct BuildArgs {
    shape: ReductiveShape,
    substem: String,
    ok_dim: usize,
    rho: Vec<TowerScalar>,
    verify: Verify,
    operators: bool,
    json: bool,
}

fn build(a: BuildArgs) -> Outcome {
    let alg = Algebra::new(&a.shape)?;
    let spec = spec_for(&alg, &a.shape, &a.substem, a.ok_dim)?;
    let n = alg.stem().len();
    let rho = match a.rho.len() {
        1 => vec![a.rho[0].clone(); n],
        k if k == n => a.rho,
        k => return Err(Failure::Usage(format!("--rho has {k} values, the stem has {n} elements"))),
    };
    let phases = Phases::new(rho)?;
    let s = Structure::build(&alg, spec, phases.clone())?;
    let mut report = VerificationReport::default();
    if matches!(a.verify, Verify::All | Verify::Structure) {
        report.extend(s.verify()?);
    }
    if matches!(a.verify, Verify::All | Verify::Cayley) {
        report.extend(verify_cayley(&alg, &phases)?);
    }
    let mut value = json!({
        "shape": a.shape.to_string(),
        "substem": s.spec.substem.one_based(),
        "dim_p": s.basis.dim(),
        "dim_j": s.basis.j.len(),
        "phases": phases.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "report": to_value(&report),
        "ok": report.ok(),
    });
    let mut text =
        format!("{} ⊃ substem {}: dim 𝔭 = {}, dim 𝔧_𝔭 = {}\n", a.shape, s.spec.substem, s.basis.dim(), s.basis.j.len());
    text.push_str(&report_text(&report));
    if a.operators {
        let labels: Vec<String> = s.basis.labels.iter().map(|l| format!("{l:?}")).collect();
        value["basis"] = json!(labels);
        value["I"] = json!(dense(&s.ops.i));
        value["J"] = json!(dense(&s.ops.j));
        for (name, m) in [("I", &s.ops.i), ("J", &s.ops.j)] {
            let _ = writeln!(text, "{name}:");
            for row in dense(m) {
                let _ = writeln!(text, "  [{}]", row.join(", "));
            }
        }
    }
    emit(a.json, value, text);
    verdict(report.ok())
}

fn enumerate(max_dim: usize, json: bool) -> Outcome {
    let spaces = enumerate_hc_spaces(max_dim);
    let mut text = String::new();
    for s in &spaces {
        let _ = writeln!(text, "{:>4}  {s}", s.dim);
    }
    emit(json, json!({ "max_dim": max_dim, "spaces": to_value(&spaces) }), text);
    Ok(())
}

fn run_selftest(max_rank: usize, json: bool) -> Outcome {
    let report = selftest(max_rank)?;
    let failed = report.failures().count();
    let mut text = report_text(&report);
    let _ = writeln!(text, "{} identities, {failed} failing", report.checks.len());
    emit(json, to_value(&report), text);
    verdict(report.ok())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Stem { ty, dot, json } => stem(ty, dot, json),
        Command::Audit { ty, json } => audit(ty, json),
        Command::Pair { g, substem, ok_dim, json } => pair(g, &substem, ok_dim, json),
        Command::Build { g, substem, ok_dim, rho, verify, operators, json } => {
            build(BuildArgs { shape: g, substem, ok_dim, rho, verify, operators, json })
        }
        Command::Enumerate { max_dim, json } => enumerate(max_dim, json),
        Command::Selftest { max_rank, json } => run_selftest(max_rank, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
