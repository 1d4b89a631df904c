use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use binomial_ci::algebra::Convention;
use binomial_ci::dual::{dual_generator, verify_annihilation};
use binomial_ci::family::{parse_assignment, parse_monomial, parse_polynomial};
use binomial_ci::graph::ReductionGraph;
use binomial_ci::lefschetz::slp_check;
use binomial_ci::oracle::{ci_hilbert_series, NumericSystem};
use binomial_ci::resultant::{build_c_matrix, det_numeric_oracle, det_structural, resultant_radical, ProbeOptions};
use binomial_ci::rewrite::{certificate, reduce_monomial, reduce_polynomial, OutcomeKind};
use binomial_ci::{selftest, BinomialFamily, Error, Poly};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bci", version, about = "Exact computations for binomial complete intersections")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "BCI_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Family file (JSON or text) or the family text itself.
    #[arg(long)]
    family: String,
    /// Coefficient values such as `a=1, b2=3/2`.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Contraction,
    Differentiation,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Contraction => Convention::Contraction,
            ConventionArg::Differentiation => Convention::Differentiation,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the reduction graph in one degree.
    Graph {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Degree of the vertices; defaults to the socle degree.
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Rewrite a monomial or a polynomial modulo the family.
    Reduce {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, conflicts_with = "polynomial", required_unless_present = "polynomial")]
        monomial: Option<String>,
        /// Needs fully numeric coefficients.
        #[arg(long)]
        polynomial: Option<String>,
        /// Use only the first k generators.
        #[arg(long, requires = "monomial")]
        k: Option<usize>,
        /// Also print the relation proving the reduction.
        #[arg(long, requires = "monomial")]
        certificate: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dual generator built from the reduction graph in the socle degree.
    Dual {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum, default_value = "contraction")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The matrix C, its determinant and the radical of the resultant.
    Resultant {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        det: bool,
        #[arg(long)]
        radical: bool,
        /// Decide undetermined exponents by random specialization.
        #[arg(long)]
        probe: bool,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hilbert function of a numeric specialization by linear algebra.
    Hilbert {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Defaults to the socle degree plus one.
        #[arg(long)]
        max_degree: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hessian rank checks for a dual form.
    Lefschetz {
        /// Family whose dual generator is checked; needs numeric coefficients.
        #[arg(long, required_unless_present = "dual_file")]
        family: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        /// File holding a form in X1..Xn to check instead.
        #[arg(long)]
        dual_file: Option<String>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value = "differentiation")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the golden checks on the built-in families.
    Selftest {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Validation(String),
    Usage(String),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e: Error = e.into();
        let module = match &e {
            Error::Algebra(_) => "algebra",
            Error::Family(_) => "family",
            Error::Oracle(_) => "oracle",
            Error::Lefschetz(_) => "lefschetz",
        };
        Failure::Validation(format!("{module}: {e}"))
    }
}

type Outcome = Result<String, Failure>;

/// Inline family text always contains `=`, inline JSON starts with `{`;
/// anything else is a path.
fn read_source(arg: &str) -> Result<String, Failure> {
    let inline = arg.contains('=') || arg.trim_start().starts_with('{');
    if inline && !Path::new(arg).is_file() {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Validation(format!("io: {arg}: {e}")))
    }
}

fn load_family(source: &str, spec: Option<&str>) -> Result<BinomialFamily, Failure> {
    let fam = BinomialFamily::from_source(&read_source(source)?)?;
    match spec {
        Some(s) => Ok(fam.specialize(&parse_assignment(s, fam.n())?)?),
        None => Ok(fam),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn graph_text(g: &ReductionGraph) -> String {
    let mut out = format!("degree {}: {} vertices, {} edges, {} cycles\n", g.degree(), g.len(), g.edge_count(), g.cycles().len());
    for v in 0..g.len() {
        let m = &g.vertices()[v];
        match (g.succ(v), g.label(v)) {
            (Some(w), Some(i)) => out.push_str(&format!("{m} -{}-> {}\n", i + 1, g.vertices()[w])),
            _ => out.push_str(&format!("{m} (sink)\n")),
        }
    }
    for c in g.cycles() {
        let names: Vec<String> = c.vertices().iter().map(ToString::to_string).collect();
        out.push_str(&format!("cycle {} r=({})\n", names.join(" -> "), join(c.label_counts())));
    }
    out.push_str(&format!("p(G) = {}", g.cycle_polynomial()));
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_graph(fam: &BinomialFamily, degree: Option<u64>, format: GraphFormat) -> Outcome {
    let g = ReductionGraph::build(fam, degree.unwrap_or_else(|| fam.socle_degree()));
    Ok(match format {
        GraphFormat::Text => graph_text(&g),
        GraphFormat::Json => pretty(&g.to_json()),
        GraphFormat::Dot => g.to_dot().trim_end().to_string(),
    })
}

fn cmd_reduce(
    fam: &BinomialFamily,
    monomial: Option<&str>,
    polynomial: Option<&str>,
    k: Option<usize>,
    with_certificate: bool,
    format: Format,
) -> Outcome {
    if let Some(text) = polynomial {
        let p = parse_polynomial(text, fam.n())?;
        let r = reduce_polynomial(fam, &p)?;
        let cycles: Vec<String> = r.cycle_monomials.iter().map(ToString::to_string).collect();
        return Ok(match format {
            Format::Json => pretty(&json!({
                "normal_form": r.normal_form.display_with("x").to_string(),
                "cycle_monomials": cycles,
                "conditional_zero": r.conditional_zero(),
            })),
            Format::Text => {
                let mut s = format!("normal form: {}", r.normal_form.display_with("x"));
                if r.conditional_zero() {
                    s.push_str(&format!("\nzero if complete intersection: {}", cycles.join(", ")));
                }
                s
            }
        });
    }
    let m = parse_monomial(monomial.expect("clap requires one input"), fam.n())?;
    let k = k.unwrap_or(fam.n());
    if k == 0 || k > fam.n() {
        return Err(Failure::Usage(format!("--k must lie in 1..={}", fam.n())));
    }
    let out = reduce_monomial(fam, &m, k);
    let cert = with_certificate.then(|| certificate(fam, &m));
    if let Some(c) = &cert {
        if !c.verify(fam) {
            return Err(Failure::Validation("rewrite: certificate does not expand to zero".into()));
        }
    }
    Ok(match format {
        Format::Json => {
            let mut v = out.to_json();
            if let Some(c) = &cert {
                v["certificate"] = c.to_json();
                v["certificate_steps"] = json!(c.step_count());
            }
            pretty(&v)
        }
        Format::Text => {
            let path: Vec<String> = out.path.iter().map(ToString::to_string).collect();
            let mut s = format!("path: {}\nlabels: {}\n", path.join(" -> "), join(&out.labels_one_based()));
            match out.kind {
                OutcomeKind::ToBasis => s.push_str(&format!(
                    "{m} = {} * {}",
                    out.coeff.as_ref().expect("basis outcome has a coefficient"),
                    out.basis.as_ref().expect("basis outcome has a monomial")
                )),
                OutcomeKind::ToCycle => s.push_str(&format!(
                    "{m} reaches the cycle at {}; zero if complete intersection",
                    out.cycle_entry().expect("cycle outcome has an entry")
                )),
            }
            if let Some(c) = &cert {
                s.push_str(&format!("\ncertificate ({} steps):\n{c}", c.step_count()));
            }
            s
        }
    })
}

fn cmd_dual(fam: &BinomialFamily, convention: Convention, format: Format) -> Outcome {
    let f = dual_generator(fam, convention);
    let annihilated = verify_annihilation(fam, &f.to_poly(), convention).holds();
    Ok(match format {
        Format::Json => {
            let mut v = f.to_json();
            v["annihilated"] = json!(annihilated);
            pretty(&v)
        }
        Format::Text => format!(
            "F = {}\ns = ({})\nannihilated: {annihilated}",
            f.to_poly().display_with("X"),
            join(f.s())
        ),
    })
}

fn cmd_resultant(fam: &BinomialFamily, matrix: bool, det: bool, radical: bool, probe: Option<ProbeOptions>, format: Format) -> Outcome {
    let radical = radical || !(matrix || det);
    let mut json = json!({});
    let mut text = Vec::new();
    if matrix {
        let c = build_c_matrix(fam);
        json["matrix"] = c.to_json();
        text.push(format!("C ({0}x{0}, degree {1}):\n{2}", c.size(), c.degree(), c.to_text().trim_end()));
    }
    if det {
        let d = det_structural(fam);
        json["det"] = json!(d.to_string());
        text.push(format!("|C| = {d}"));
        if fam.is_numeric() {
            let v = det_numeric_oracle(fam)?;
            json["det_value"] = json!(v.to_string());
            text.push(format!("|C| at the given values = {v}"));
        }
    }
    if radical {
        let r = resultant_radical(&fam.symbolic_shape(), probe);
        json["radical"] = r.to_json();
        text.push(format!("sqrt(res) = {r}"));
        let t: Vec<String> = r.t().iter().zip(r.status()).map(|(t, s)| format!("{t} ({})", s.name())).collect();
        text.push(format!("t = {}", t.join(", ")));
        if fam.coefficients().a().iter().chain(fam.coefficients().b()).any(Option::is_some) {
            let s = r.specialize(fam.coefficients());
            json["radical_specialized"] = json!(s.to_string());
            text.push(format!("sqrt(res) at the given values = {s}"));
        }
    }
    Ok(match format {
        Format::Json => pretty(&json),
        Format::Text => text.join("\n"),
    })
}

fn cmd_hilbert(fam: &BinomialFamily, max_degree: Option<u64>, format: Format) -> Outcome {
    let sys = NumericSystem::from_family(fam)?;
    let max = max_degree.unwrap_or(fam.socle_degree() + 1);
    let h = sys.hilbert_function(max);
    let mut expected = ci_hilbert_series(fam.degrees());
    expected.resize(max as usize + 1, 0);
    let ci = sys.is_complete_intersection();
    Ok(match format {
        Format::Json => pretty(&json!({
            "hilbert_function": h.values(),
            "complete_intersection_series": expected,
            "complete_intersection": ci,
        })),
        Format::Text => format!("h = ({})\nseries: {h}\ncomplete intersection: {ci}", join(h.values())),
    })
}

fn variable_count(text: &str) -> usize {
    let mut n = 0;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == 'x' || c == 'X' {
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            n = n.max(digits.parse().unwrap_or(0));
        }
    }
    n
}

fn cmd_lefschetz(
    family: Option<&str>,
    spec: Option<&str>,
    dual_file: Option<&str>,
    trials: usize,
    seed: u64,
    convention: Convention,
    format: Format,
) -> Outcome {
    let fam = family.map(|f| load_family(f, spec)).transpose()?;
    let form: Poly<_> = match (dual_file, &fam) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("io: {path}: {e}")))?;
            let n = fam.as_ref().map_or_else(|| variable_count(&text), BinomialFamily::n);
            parse_polynomial(text.trim(), n)?
        }
        (None, Some(fam)) => dual_generator(fam, convention)
            .to_numeric()
            .ok_or_else(|| Failure::Validation("lefschetz: the dual generator still has free coefficients; pass --spec".into()))?,
        (None, None) => unreachable!("clap requires --family or --dual-file"),
    };
    if form.homogeneous_degree().is_none() {
        return Err(Failure::Validation("lefschetz: the form is zero or not homogeneous".into()));
    }
    let report = slp_check(&form, trials, seed, convention);
    Ok(match format {
        Format::Json => pretty(&report.to_json()),
        Format::Text => {
            let mut lines: Vec<String> = report
                .orders
                .iter()
                .map(|o| format!("k={}: rank {}/{} {} at l=({})", o.k, o.rank, o.basis_size, o.verdict.name(), join(&o.ell)))
                .collect();
            lines.push(format!("SLP: {}", if report.holds() { "holds" } else { "probably fails" }));
            lines.join("\n")
        }
    })
}

fn cmd_selftest(seed: u64, format: Format) -> Result<(String, bool), Failure> {
    let checks = selftest::run(seed);
    let ok = checks.iter().all(|c| c.passed);
    let body = match format {
        Format::Json => pretty(&json!({
            "passed": ok,
            "checks": checks.iter().map(selftest::Check::to_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut lines: Vec<String> = checks
                .iter()
                .map(|c| {
                    if c.passed {
                        format!("PASS {}", c.name)
                    } else {
                        format!("FAIL {}: expected {:?}, got {:?}", c.name, c.expected, c.actual)
                    }
                })
                .collect();
            let failed = checks.iter().filter(|c| !c.passed).count();
            lines.push(format!("{} checks, {failed} failed", checks.len()));
            lines.join("\n")
        }
    };
    Ok((body, ok))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let seed = cli.seed;
    let ok = |s: String| (s, true);
    match cli.command {
        Command::Graph { fam, degree, format } => {
            cmd_graph(&load_family(&fam.family, fam.spec.as_deref())?, degree, format).map(ok)
        }
        Command::Reduce {
            fam,
            monomial,
            polynomial,
            k,
            certificate,
            format,
        } => cmd_reduce(
            &load_family(&fam.family, fam.spec.as_deref())?,
            monomial.as_deref(),
            polynomial.as_deref(),
            k,
            certificate,
            format,
        )
        .map(ok),
        Command::Dual { fam, convention, format } => {
            cmd_dual(&load_family(&fam.family, fam.spec.as_deref())?, convention.into(), format).map(ok)
        }
        Command::Resultant {
            fam,
            matrix,
            det,
            radical,
            probe,
            trials,
            format,
        } => {
            let probe = probe.then_some(ProbeOptions { trials, seed });
            cmd_resultant(&load_family(&fam.family, fam.spec.as_deref())?, matrix, det, radical, probe, format).map(ok)
        }
        Command::Hilbert { fam, max_degree, format } => {
            cmd_hilbert(&load_family(&fam.family, fam.spec.as_deref())?, max_degree, format).map(ok)
        }
        Command::Lefschetz {
            family,
            spec,
            dual_file,
            trials,
            convention,
            format,
        } => cmd_lefschetz(
            family.as_deref(),
            spec.as_deref(),
            dual_file.as_deref(),
            trials,
            seed,
            convention.into(),
            format,
        )
        .map(ok),
        Command::Selftest { format } => cmd_selftest(seed, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, passed)) => {
            // a closed pipe is not an error for a one-shot command
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
