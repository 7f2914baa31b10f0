//! trace-pi: exact trace-identity and codimension computations for small
//! algebras with trace.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical verdict is negative,
//! 2 usage or parse error, 3 resource cap exceeded.

mod output;
mod spec;
mod suite;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use trace_pi_core::{
    catalog, catalog_names, codimension_with, comb, contains_at_degree, count_trace_monomials,
    family_ck, family_one_trace, family_strange, family_two_trace, ideals_equal_at_degree,
    is_identity, parse_poly, parse_rat, rat, report, verify_generators, verify_spanning_family,
    CodimError, CodimOptions, GeneratorSet, IdentityCheck, MatrixMode, MtMode, Rat,
    TracePolynomial, DEFAULT_ROW_CAP,
};

use output::Format;
use spec::{parse_trace_list, AlgebraSpec};

#[derive(Debug)]
pub struct CliError {
    pub exit: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: 2,
            message: message.into(),
        }
    }
    pub fn resource(message: impl Into<String>) -> Self {
        Self {
            exit: 3,
            message: message.into(),
        }
    }
    pub fn from_codim(e: CodimError) -> Self {
        match e {
            CodimError::RowCapExceeded { .. } => Self::resource(e.to_string()),
            other => Self::usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "trace-pi",
    about = "Exact trace codimensions, identity checks, and generator verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, default_value = "table")]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<String>,

    /// Worker threads for matrix assembly (default: available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Evaluation-matrix row cap (overrides TRACE_PI_ROW_CAP)
    #[arg(long, global = true)]
    row_cap: Option<usize>,

    /// Suppress timing fields so identical runs produce identical bytes
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// Algebra builder: d2|d3|dn|ck|c2|ut2|mn|file
    #[arg(long)]
    algebra: String,
    /// Trace values for diagonal builders, e.g. 1,0 or 1,2,0
    #[arg(long)]
    trace: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Size parameter for ck (nilpotency index) and mn (matrix size)
    #[arg(long)]
    k: Option<u32>,
    /// Path to a JSON algebra file (with --algebra file)
    #[arg(long)]
    file: Option<String>,
}

impl AlgebraArgs {
    fn to_spec(&self) -> Result<AlgebraSpec, CliError> {
        Ok(AlgebraSpec {
            name: self.algebra.clone(),
            trace: self
                .trace
                .as_deref()
                .map(parse_trace_list)
                .transpose()?,
            alpha: self
                .alpha
                .as_deref()
                .map(|s| parse_rat(s).map_err(|e| CliError::usage(e.to_string())))
                .transpose()?,
            beta: self
                .beta
                .as_deref()
                .map(|s| parse_rat(s).map_err(|e| CliError::usage(e.to_string())))
                .transpose()?,
            k: self.k,
            file: self.file.clone(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a table of trace codimensions
    Codim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Degree or range, e.g. 3 or 1..5 (inclusive)
        #[arg(long)]
        n: String,
        /// Matrix mode: auto|general|commutative
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Decide whether a polynomial is a trace identity of an algebra
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Catalog name (f1..f5, g3..g7, h2..h5) or polynomial text
        #[arg(long)]
        poly: String,
    },
    /// Verify that a generator set produces exactly the identities, degree by degree
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Comma-separated catalog names, e.g. f1,g3
        #[arg(long)]
        gens: String,
        #[arg(long)]
        max_n: u32,
    },
    /// Check a named monomial family against the codimension (basis modulo identities)
    Basis {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// one-trace | two-trace | strange | ck
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
    },
    /// Compare identity ideals of two algebras degree by degree
    Compare {
        /// First algebra builder name
        #[arg(long)]
        a: String,
        #[arg(long)]
        trace_a: Option<String>,
        #[arg(long)]
        alpha_a: Option<String>,
        #[arg(long)]
        beta_a: Option<String>,
        #[arg(long)]
        k_a: Option<u32>,
        #[arg(long)]
        file_a: Option<String>,
        /// Second algebra builder name
        #[arg(long)]
        b: String,
        #[arg(long)]
        trace_b: Option<String>,
        #[arg(long)]
        alpha_b: Option<String>,
        #[arg(long)]
        beta_b: Option<String>,
        #[arg(long)]
        k_b: Option<u32>,
        #[arg(long)]
        file_b: Option<String>,
        #[arg(long)]
        max_n: u32,
        /// equal | contains (contains: identities of B hold on A)
        #[arg(long, default_value = "equal")]
        mode: String,
    },
    /// Count commutative trace monomials with exactly k trace blocks
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Run the full verification battery and print a scorecard
    PaperSuite,
}

fn main() {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let row_cap = cli
        .row_cap
        .or_else(|| {
            std::env::var("TRACE_PI_ROW_CAP")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_ROW_CAP);

    let outcome = run(&cli, row_cap);
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.exit);
        }
    }
}

fn parse_range(text: &str) -> Result<(u32, u32), CliError> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad range `{text}`")))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad range `{text}`")))?;
        if lo == 0 || hi < lo {
            return Err(CliError::usage(format!("bad range `{text}`")));
        }
        Ok((lo, hi))
    } else {
        let n: u32 = text
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad degree `{text}`")))?;
        if n == 0 {
            return Err(CliError::usage("degree must be at least 1"));
        }
        Ok((n, n))
    }
}

/// Build a catalog polynomial, supplying whichever of alpha/beta/k it needs.
fn build_catalog(
    name: &str,
    alpha: Option<&Rat>,
    beta: Option<&Rat>,
    k: Option<u32>,
) -> Result<TracePolynomial, CliError> {
    let need = |p: Option<&Rat>, flag: &str| {
        p.cloned()
            .ok_or_else(|| CliError::usage(format!("catalog `{name}` requires --{flag}")))
    };
    let params: Vec<Rat> = match name {
        "f1" | "h2" | "h3" => vec![],
        "f2" | "f3" | "g3" | "g6" | "h4" | "h5" => vec![need(alpha, "alpha")?],
        "f4" | "f5" | "g4" | "g5" => {
            vec![need(alpha, "alpha")?, need(beta, "beta")?]
        }
        "g7" => {
            let k = k.ok_or_else(|| CliError::usage("catalog `g7` requires --k"))?;
            vec![need(alpha, "alpha")?, rat(k as i64)]
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown catalog polynomial `{other}`; known: {}",
                catalog_names().join(", ")
            )))
        }
    };
    catalog(name, &params).map_err(|e| CliError::usage(e.to_string()))
}

fn run(cli: &Cli, row_cap: usize) -> Result<i32, CliError> {
    match &cli.command {
        Command::Codim { algebra, n, mode } => {
            cmd_codim(cli, row_cap, algebra, n, mode)
        }
        Command::Check { algebra, poly } => cmd_check(cli, algebra, poly),
        Command::Verify {
            algebra,
            gens,
            max_n,
        } => cmd_verify(cli, row_cap, algebra, gens, *max_n),
        Command::Basis { algebra, family, n } => {
            cmd_basis(cli, row_cap, algebra, family, *n)
        }
        Command::Compare {
            a,
            trace_a,
            alpha_a,
            beta_a,
            k_a,
            file_a,
            b,
            trace_b,
            alpha_b,
            beta_b,
            k_b,
            file_b,
            max_n,
            mode,
        } => {
            let parse_side = |name: &String,
                              trace: &Option<String>,
                              alpha: &Option<String>,
                              beta: &Option<String>,
                              k: &Option<u32>,
                              file: &Option<String>|
             -> Result<AlgebraSpec, CliError> {
                Ok(AlgebraSpec {
                    name: name.clone(),
                    trace: trace.as_deref().map(parse_trace_list).transpose()?,
                    alpha: alpha
                        .as_deref()
                        .map(|s| parse_rat(s).map_err(|e| CliError::usage(e.to_string())))
                        .transpose()?,
                    beta: beta
                        .as_deref()
                        .map(|s| parse_rat(s).map_err(|e| CliError::usage(e.to_string())))
                        .transpose()?,
                    k: *k,
                    file: file.clone(),
                })
            };
            let spec_a = parse_side(a, trace_a, alpha_a, beta_a, k_a, file_a)?;
            let spec_b = parse_side(b, trace_b, alpha_b, beta_b, k_b, file_b)?;
            cmd_compare(cli, &spec_a, &spec_b, *max_n, mode)
        }
        Command::Count { n, k } => cmd_count(cli, *n, *k),
        Command::PaperSuite => cmd_paper_suite(cli, row_cap),
    }
}

fn cmd_codim(
    cli: &Cli,
    row_cap: usize,
    algebra: &AlgebraArgs,
    n: &str,
    mode: &str,
) -> Result<i32, CliError> {
    let spec = algebra.to_spec()?;
    let alg = spec.build()?;
    let (lo, hi) = parse_range(n)?;
    let mode = match mode {
        "auto" => MatrixMode::Auto,
        "general" => MatrixMode::General,
        "commutative" => MatrixMode::Commutative,
        other => return Err(CliError::usage(format!("unknown mode `{other}`"))),
    };
    let opts = CodimOptions { mode, row_cap };
    let tag = spec.closed_form_tag();

    let mut reports = Vec::new();
    for degree in lo..=hi {
        let start = Instant::now();
        let result = codimension_with(&alg, degree, &opts).map_err(CliError::from_codim)?;
        let elapsed = start.elapsed().as_millis() as u64;
        let closed: Option<u64> = tag.map(|t| {
            trace_pi_core::closed_form(t, degree)
                .to_integer()
                .to_u64()
                .expect("closed form fits u64 at desk scale")
        });
        reports.push(report::CodimReport {
            algebra: alg.label().to_string(),
            n: degree,
            codim: result.codim as u64,
            closed_form: closed,
            matches: closed.map(|c| c == result.codim as u64),
            mode: match result.mode {
                MtMode::General => "general".into(),
                MtMode::Commutative => "commutative".into(),
            },
            elapsed_ms: (!cli.no_timing).then_some(elapsed),
        });
    }

    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("serializable"),
        Format::Table | Format::Csv => {
            let header = ["algebra", "n", "codim", "closed_form", "match", "mode", "elapsed_ms"];
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.algebra.clone(),
                        r.n.to_string(),
                        r.codim.to_string(),
                        r.closed_form.map_or("-".into(), |c| c.to_string()),
                        r.matches.map_or("-".into(), |m| m.to_string()),
                        r.mode.clone(),
                        r.elapsed_ms.map_or("-".into(), |t| t.to_string()),
                    ]
                })
                .collect();
            if cli.format == Format::Csv {
                output::render_csv(&header, &rows)
            } else {
                output::render_table(&header, &rows)
            }
        }
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let all_match = reports
        .iter()
        .all(|r| r.matches.unwrap_or(true));
    Ok(if all_match { 0 } else { 1 })
}

fn cmd_check(cli: &Cli, algebra: &AlgebraArgs, poly_text: &str) -> Result<i32, CliError> {
    let spec = algebra.to_spec()?;
    let alg = spec.build()?;
    let poly = if catalog_names().contains(&poly_text) {
        build_catalog(
            poly_text,
            spec.alpha.as_ref(),
            spec.beta.as_ref(),
            spec.k,
        )?
    } else {
        parse_poly(poly_text).map_err(|e| CliError::usage(e.to_string()))?
    };
    let verdict = is_identity(&poly, &alg).map_err(|e| CliError::usage(e.to_string()))?;
    let (identity, witness) = match &verdict {
        IdentityCheck::Holds => (true, None),
        IdentityCheck::Fails { witness } => (
            false,
            Some(
                witness
                    .iter()
                    .map(|&i| alg.basis_label(i).to_string())
                    .collect::<Vec<_>>(),
            ),
        ),
    };
    let rep = report::CheckReport {
        poly: poly_text.to_string(),
        algebra: alg.label().to_string(),
        identity,
        witness: witness.clone(),
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("serializable"),
        _ => match &witness {
            None => format!("identity: {} vanishes on {}\n", poly_text, alg.label()),
            Some(w) => format!(
                "not-identity: {} fails on {} at ({})\n",
                poly_text,
                alg.label(),
                w.join(", ")
            ),
        },
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(if identity { 0 } else { 1 })
}

fn parse_generator_list(
    gens: &str,
    spec: &AlgebraSpec,
) -> Result<GeneratorSet, CliError> {
    let mut list = Vec::new();
    for name in gens.split(',') {
        let name = name.trim();
        let poly = build_catalog(name, spec.alpha.as_ref(), spec.beta.as_ref(), spec.k)?;
        list.push((name.to_string(), poly));
    }
    GeneratorSet::new(list).map_err(|e| CliError::usage(e.to_string()))
}

fn cmd_verify(
    cli: &Cli,
    row_cap: usize,
    algebra: &AlgebraArgs,
    gens: &str,
    max_n: u32,
) -> Result<i32, CliError> {
    let spec = algebra.to_spec()?;
    let alg = spec.build()?;
    let generators = parse_generator_list(gens, &spec)?;
    let result = verify_generators(&generators, &alg, max_n, row_cap).map_err(|e| {
        match e {
            trace_pi_core::TidealError::Codim(c) => CliError::from_codim(c),
            other => CliError::usage(other.to_string()),
        }
    })?;
    let rep = report::VerifyReport::from(&result);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("serializable"),
        Format::Table | Format::Csv => {
            let header = ["n", "dim_consequences", "dim_identities", "sound", "complete"];
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.dim_consequences.to_string(),
                        r.dim_identities.to_string(),
                        r.sound.to_string(),
                        r.complete.to_string(),
                    ]
                })
                .collect();
            let body = if cli.format == Format::Csv {
                output::render_csv(&header, &rows)
            } else {
                output::render_table(&header, &rows)
            };
            format!(
                "{}generators {} on {}: {}\n",
                body,
                rep.generators.join(","),
                rep.algebra,
                if rep.pass { "pass" } else { "FAIL" }
            )
        }
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(if rep.pass { 0 } else { 1 })
}

fn cmd_basis(
    cli: &Cli,
    row_cap: usize,
    algebra: &AlgebraArgs,
    family: &str,
    n: u32,
) -> Result<i32, CliError> {
    let spec = algebra.to_spec()?;
    let alg = spec.build()?;
    let monomials = match family {
        "one-trace" => family_one_trace(n),
        "two-trace" => family_two_trace(n),
        "strange" => family_strange(n),
        "ck" => {
            let k = spec
                .k
                .ok_or_else(|| CliError::usage("family `ck` requires --k"))?;
            family_ck(n, k)
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown family `{other}` (one-trace|two-trace|strange|ck)"
            )))
        }
    };
    let opts = CodimOptions {
        mode: MatrixMode::Auto,
        row_cap,
    };
    let result = verify_spanning_family(&monomials, &alg, n, &opts)
        .map_err(CliError::from_codim)?;
    let rep = report::BasisReport::new(
        alg.label().to_string(),
        family.to_string(),
        n,
        &result,
    );
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("serializable"),
        _ => format!(
            "family {} on {} at n={}: size {} rank {} codim {} -> {}\n",
            rep.family,
            rep.algebra,
            rep.n,
            rep.family_size,
            rep.rank,
            rep.codim,
            if rep.pass { "pass" } else { "FAIL" }
        ),
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(if rep.pass { 0 } else { 1 })
}

fn cmd_compare(
    cli: &Cli,
    spec_a: &AlgebraSpec,
    spec_b: &AlgebraSpec,
    max_n: u32,
    mode: &str,
) -> Result<i32, CliError> {
    let a = spec_a.build()?;
    let b = spec_b.build()?;
    if mode != "equal" && mode != "contains" {
        return Err(CliError::usage(format!(
            "unknown compare mode `{mode}` (equal|contains)"
        )));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let holds = if mode == "equal" {
            ideals_equal_at_degree(&a, &b, n).map_err(CliError::from_codim)?
        } else {
            contains_at_degree(&a, &b, n).map_err(CliError::from_codim)?
        };
        rows.push(report::CompareRow { n, holds });
    }
    let pass = rows.iter().all(|r| r.holds);
    let rep = report::CompareReport {
        a: a.label().to_string(),
        b: b.label().to_string(),
        mode: mode.to_string(),
        max_n,
        rows,
        pass,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("serializable"),
        _ => {
            let per: Vec<String> = rep
                .rows
                .iter()
                .map(|r| format!("n={} {}", r.n, if r.holds { "ok" } else { "FAIL" }))
                .collect();
            format!(
                "{} vs {} ({}): {} [{}]\n",
                rep.a,
                rep.b,
                rep.mode,
                if pass { "pass" } else { "FAIL" },
                per.join(", ")
            )
        }
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_count(cli: &Cli, n: u32, k: u32) -> Result<i32, CliError> {
    let count =
        count_trace_monomials(n, k).map_err(|e| CliError::usage(e.to_string()))? as u64;
    let stirling = comb::stirling2(n + 1, k + 1)
        .to_u64()
        .ok_or_else(|| CliError::resource("stirling value exceeds u64"))?;
    let rep = report::CountReport {
        n,
        k,
        count,
        stirling,
        matches: count == stirling,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("serializable"),
        _ => format!(
            "monomials(n={}, k={}) = {} ; S({},{}) = {} ; match: {}\n",
            n,
            k,
            count,
            n + 1,
            k + 1,
            stirling,
            rep.matches
        ),
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(if rep.matches { 0 } else { 1 })
}

fn cmd_paper_suite(cli: &Cli, row_cap: usize) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut report = suite::run_suite(row_cap);
    report.elapsed_ms = (!cli.no_timing).then(|| start.elapsed().as_millis() as u64);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        _ => {
            let header = ["id", "criterion", "status", "detail"];
            let rows: Vec<Vec<String>> = report
                .criteria
                .iter()
                .map(|c| {
                    vec![
                        c.id.clone(),
                        c.name.clone(),
                        if c.pass { "pass".into() } else { "FAIL".into() },
                        c.detail.clone(),
                    ]
                })
                .collect();
            let mut body = output::render_table(&header, &rows);
            body.push_str(&format!(
                "overall: {} ({}/{} criteria)\n",
                if report.pass { "pass" } else { "FAIL" },
                report.criteria.iter().filter(|c| c.pass).count(),
                report.criteria.len()
            ));
            body
        }
    };
    output::emit(cli.output.as_deref(), &text)
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(if report.pass { 0 } else { 1 })
}
