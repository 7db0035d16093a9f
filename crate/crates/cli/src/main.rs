//! `torquo`: enumerate bases, straighten, factorize and verify generation degrees.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use torquo::graphs::{extract_degree_one, graph_of_monomial};
use torquo::oracle::agree;
use torquo::plucker::{exchange, parse_monomial, parse_poly, Straightener};
use torquo::tableau_a::enumerate_standard;
use torquo::tableau_b::{enumerate_standard_b, format_tableaux_b};
use torquo::verifier::{
    check_generation_with, check_type_b_factorization_with, duality_dims, format_csv, format_table, reports_json,
    run_suite_with, GenerationOptions, GenerationReport, DEFAULT_BUDGET,
};
use torquo::weights::{descent_ok, lookup_instance, default_manifest_json, parse_manifest, shape_a};
use torquo::{ContentSpec, GroupInstance, PluckerPoly, Row};

#[derive(Parser, Debug)]
#[command(name = "torquo", version, about = "Torus quotient invariant rings: bases, straightening, generation checks")]
struct Cli {
    /// Seed for the random evaluation matrices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random matrices per evaluation check.
    #[arg(long, global = true, default_value_t = 10)]
    matrices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the zero-weight standard tableaux of degree k.
    Enumerate {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Write a Plücker polynomial in the standard monomial basis.
    Straighten {
        /// File with one `c * p[..]p[..]` term per line; `-` reads stdin.
        #[arg(long, conflicts_with = "expr")]
        input: Option<PathBuf>,
        /// Inline polynomial, terms separated by `;`.
        #[arg(long)]
        expr: Option<String>,
        /// Apply one three-term relation to this pair of factors, e.g. `p[1,3]p[4,5]`,
        /// instead of straightening fully.
        #[arg(long, value_name = "PAIR")]
        exchange: Option<String>,
        /// Also compare both sides on random matrices.
        #[arg(long)]
        check: bool,
    },
    /// Write an invariant monomial as a combination of degree-1 invariants times the rest.
    Factorize {
        #[arg(long)]
        instance: String,
        /// Monomial such as `p[1,2]^2p[3,4]^2`.
        #[arg(long, conflicts_with = "input")]
        monomial: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the graph of the monomial and of each generator in DOT format.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Check that products of generators of degree at most `gen-degree` span degree k.
    Verify {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        gen_degree: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Attach up to this many factorization certificates (type A, gen-degree 1).
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
        /// Limit on products x basis size.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Compare dim R_k for G(r,n) and G(n-r,n).
    Duality {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
    },
    /// Run every entry of a manifest.
    Suite {
        /// JSON manifest; the bundled nine-case manifest when omitted.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Print the bundled manifest and exit.
        #[arg(long)]
        print_manifest: bool,
    },
}

/// A failed run: exit code 1 for failed checks, 2 for bad input.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, msg: e.to_string() }
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, msg: e.to_string() }
}

type Run = Result<bool, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(usage)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn instance(label: &str) -> Result<GroupInstance, Failure> {
    lookup_instance(label).map_err(usage)
}

fn print(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    if !s.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain json")
}

fn row_strings(rows: &[Row]) -> Vec<String> {
    rows.iter()
        .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
        .collect()
}

fn enumerate(label: &str, k: u64, format: TextFormat) -> Run {
    let inst = instance(label)?;
    if inst.is_type_a() {
        let shape = shape_a(&inst, k).map_err(usage)?;
        let n = inst.family.n();
        let ts: Vec<_> = enumerate_standard(&shape, n, &ContentSpec::Uniform).map_err(usage)?.collect();
        match format {
            TextFormat::Text => {
                let blocks: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                print(&format!("type: A, n: {n}\n{}", blocks.join("\n")));
            }
            TextFormat::Json => {
                let rows: Vec<Value> = ts.iter().map(|t| json!(row_strings(t.rows()))).collect();
                print(&pretty(&json!({"instance": inst.label, "k": k, "count": ts.len(), "tableaux": rows})));
            }
        }
        log::info!("{} tableaux", ts.len());
    } else {
        let ts: Vec<_> = enumerate_standard_b(&inst, k, true).map_err(usage)?.collect();
        match format {
            TextFormat::Text => print(&format_tableaux_b(&ts)),
            TextFormat::Json => {
                let rows: Vec<Value> = ts.iter().map(|t| json!({"rows": row_strings(t.rows()), "paired": t.paired()})).collect();
                print(&pretty(&json!({"instance": inst.label, "k": k, "count": ts.len(), "tableaux": rows})));
            }
        }
        log::info!("{} tableaux", ts.len());
    }
    Ok(true)
}

fn exchange_once(poly: &PluckerPoly, pair: &str) -> Result<PluckerPoly, Failure> {
    let pair = parse_monomial(pair, Some(poly.n())).map_err(usage)?;
    let [a, b] = pair.factors() else {
        return Err(usage("--exchange takes exactly two factors"));
    };
    let mut out = PluckerPoly::zero(poly.n());
    for (m, c) in poly.terms() {
        let present = if a == b { m.multiplicity(a) >= 2 } else { m.multiplicity(a) >= 1 && m.multiplicity(b) >= 1 };
        if present {
            out.add_assign_scaled(&exchange(m, a, b).map_err(usage)?, c);
        } else {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

struct StraightenArgs<'a> {
    input: Option<&'a Path>,
    expr: Option<&'a str>,
    exchange: Option<&'a str>,
    check: bool,
}

fn straighten(a: StraightenArgs<'_>, seed: u64, count: usize) -> Run {
    let StraightenArgs { input, expr, exchange, check } = a;
    let text = match (input, expr) {
        (Some(p), _) => read_input(p)?,
        (None, Some(e)) => e.replace(';', "\n"),
        (None, None) => return Err(usage("one of --input or --expr is required")),
    };
    let poly = parse_poly(&text).map_err(usage)?;
    let out = match exchange {
        Some(pair) => exchange_once(&poly, pair)?,
        None => Straightener::new().straighten(&poly).map_err(usage)?,
    };
    print(&out.to_string());
    if check {
        let ok = agree(&poly, &out, seed, count).map_err(usage)?;
        eprintln!("evaluation check on {count} matrices: {}", if ok { "ok" } else { "MISMATCH" });
        return Ok(ok);
    }
    Ok(true)
}

fn factorize(label: &str, monomial: Option<&str>, input: Option<&Path>, dot: Option<&Path>, seed: u64, count: usize) -> Run {
    let inst = instance(label)?;
    let text = match (monomial, input) {
        (Some(m), _) => m.to_string(),
        (None, Some(p)) => read_input(p)?,
        (None, None) => return Err(usage("one of --monomial or --input is required")),
    };
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let f = parse_monomial(&body, Some(inst.family.n())).map_err(usage)?;
    let cert = extract_degree_one(&f, &inst).map_err(usage)?;
    let by_straightening = cert.check_straighten(&mut Straightener::new()).map_err(usage)?;
    let by_evaluation = cert.check_eval(seed, count).map_err(usage)?;
    let mut v = cert.to_json();
    v["verified"] = json!({"straighten": by_straightening, "eval": by_evaluation});
    print(&pretty(&v));
    if let Some(path) = dot {
        let mut out = graph_of_monomial(&f).map_err(usage)?.to_dot("target");
        for (i, g) in cert.generators().into_iter().enumerate() {
            out += &graph_of_monomial(g).map_err(usage)?.to_dot(&format!("generator{i}"));
        }
        fs::write(path, out).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(by_straightening && by_evaluation)
}

fn emit_reports(reports: &[GenerationReport], format: Format) {
    match format {
        Format::Json => print(&reports_json(reports)),
        Format::Table => print(&format_table(reports)),
        Format::Csv => print(&format_csv(reports)),
    }
}

/// Evaluation check of every attached witness; false if any fails.
fn witnesses_hold(r: &GenerationReport, seed: u64, count: usize) -> Result<bool, Failure> {
    for w in r.witnesses.iter().flatten() {
        if !w.check_eval(seed, count).map_err(failed)? {
            eprintln!("{}: witness for {} fails the evaluation check", r.instance, w.target);
            return Ok(false);
        }
    }
    Ok(true)
}

struct VerifyArgs<'a> {
    label: &'a str,
    k: u64,
    d: u64,
    format: Format,
    opts: GenerationOptions,
}

fn verify(a: VerifyArgs<'_>, seed: u64, count: usize) -> Run {
    let inst = instance(a.label)?;
    if !descent_ok(&inst) {
        return Err(usage(format!(
            "{} with multiple {} does not descend to the quotient",
            inst.label, inst.multiple
        )));
    }
    let r = if inst.is_type_a() {
        check_generation_with(&inst, a.k, a.d, &a.opts)
    } else {
        check_type_b_factorization_with(&inst, a.k, a.d, &a.opts)
    }
    .map_err(usage)?;
    match a.format {
        Format::Json => print(&pretty(&r.to_json())),
        f => emit_reports(std::slice::from_ref(&r), f),
    }
    Ok(r.passed() && witnesses_hold(&r, seed, count)?)
}

fn duality(r: usize, n: usize, k: u64) -> Run {
    let (a, b) = duality_dims(r, n, k).map_err(usage)?;
    let ok = a == b;
    print(&pretty(&json!({
        "r": r,
        "n": n,
        "k": k,
        "dim": a,
        "dual_dim": b,
        "verdict": if ok { "pass" } else { "fail" },
    })));
    Ok(ok)
}

fn suite(manifest: Option<&Path>, format: Format, jobs: usize, opts: GenerationOptions, seed: u64, count: usize) -> Run {
    let entries = match manifest {
        Some(p) => parse_manifest(&read_input(p)?).map_err(usage)?,
        None => parse_manifest(default_manifest_json()).map_err(usage)?,
    };
    let reports = run_suite_with(&entries, jobs, &opts);
    emit_reports(&reports, format);
    let mut ok = true;
    for r in &reports {
        ok &= r.passed() && witnesses_hold(r, seed, count)?;
    }
    Ok(ok)
}

fn run(cli: Cli) -> Run {
    let (seed, count) = (cli.seed, cli.matrices);
    match cli.command {
        Command::Enumerate { instance, k, format } => enumerate(&instance, k, format),
        Command::Straighten {
            input,
            expr,
            exchange,
            check,
        } => straighten(
            StraightenArgs {
                input: input.as_deref(),
                expr: expr.as_deref(),
                exchange: exchange.as_deref(),
                check,
            },
            seed,
            count,
        ),
        Command::Factorize {
            instance,
            monomial,
            input,
            emit_dot,
        } => factorize(&instance, monomial.as_deref(), input.as_deref(), emit_dot.as_deref(), seed, count),
        Command::Verify {
            instance,
            k,
            gen_degree,
            format,
            witnesses,
            budget,
        } => verify(
            VerifyArgs {
                label: &instance,
                k,
                d: gen_degree,
                format,
                opts: GenerationOptions { budget, witnesses },
            },
            seed,
            count,
        ),
        Command::Duality { r, n, k } => duality(r, n, k),
        Command::Suite {
            manifest,
            format,
            jobs,
            witnesses,
            budget,
            print_manifest,
        } => {
            if print_manifest {
                print(default_manifest_json());
                return Ok(true);
            }
            suite(manifest.as_deref(), format, jobs, GenerationOptions { budget, witnesses }, seed, count)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
