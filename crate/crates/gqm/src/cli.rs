//! Command-line front end.
//!
//! Every subcommand renders one of the [`crate::report`] documents as aligned
//! text, JSON, or CSV. Output is byte-stable for a fixed invocation: rationals
//! are exact strings, orderings are the library's deterministic enumeration
//! orders, and no timestamps or host data are emitted.
//!
//! Exit codes: 0 on success (and all checks passing), 1 when a requested
//! check fails, 2 for usage or input errors.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::gf::{factor_prime_power, FieldCtx};
use crate::lhv::{JointTable, Scenario};
use crate::report::{self, GqmLhvState};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "gqm",
    version,
    about = "Exact quantum-like models over finite fields: states, probabilities, correlations, hidden-variable checks, and the q=1 monoid limit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct FieldOrder {
    /// Field order q = p^n (factored automatically).
    #[arg(long)]
    q: Option<u64>,
    /// Prime characteristic (use together with --n).
    #[arg(long, requires = "n")]
    p: Option<u64>,
    /// Extension degree (use together with --p).
    #[arg(long, requires = "p")]
    n: Option<u32>,
}

impl FieldOrder {
    fn resolve(&self) -> Result<Arc<FieldCtx>> {
        match (self.q, self.p, self.n) {
            (Some(q), None, None) => {
                let (p, n) = factor_prime_power(q).ok_or(Error::InvalidField(q))?;
                Ok(Arc::new(FieldCtx::new(p, n)?))
            }
            (None, Some(p), Some(n)) => Ok(Arc::new(FieldCtx::new(p, n)?)),
            (Some(q), Some(p), Some(n)) => {
                let mut check = 1u64;
                for _ in 0..n {
                    check = check.saturating_mul(p);
                }
                if check != q {
                    return Err(Error::InvalidArgs(format!("--q {q} conflicts with --p {p} --n {n}")));
                }
                Ok(Arc::new(FieldCtx::new(p, n)?))
            }
            _ => Err(Error::InvalidArgs("specify the field as --q Q or as --p P --n N".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the deterministic construction of GF(q): modulus, generator,
    /// characteristic, optionally the element list.
    Field {
        #[command(flatten)]
        order: FieldOrder,
        /// List every element with its wire code.
        #[arg(long)]
        elements: bool,
    },
    /// q-analog counts: [N]_q, the q-factorial, Gaussian binomials, and
    /// subspace counts, optionally checked against brute-force enumeration.
    Counts {
        #[command(flatten)]
        order: FieldOrder,
        /// Ambient dimension N.
        #[arg(long = "dim", visible_alias = "N")]
        dim: u64,
        /// Re-count subspaces by exhaustive enumeration and compare.
        #[arg(long)]
        check_oracle: bool,
    },
    /// List the points of PG(N-1, q); for N = 2 also the indexed kets and
    /// bras of the two-level model.
    States {
        #[command(flatten)]
        order: FieldOrder,
        /// Ambient dimension N.
        #[arg(long = "dim", default_value_t = 2)]
        dim: usize,
    },
    /// Single-spin outcome probabilities and expectations; generic pattern
    /// rows, or the concrete table of A(r,s) when both indices are given.
    Probs {
        #[command(flatten)]
        order: FieldOrder,
        /// First direction index (+1 outcome).
        #[arg(long, requires = "s")]
        r: Option<u64>,
        /// Second direction index (-1 outcome).
        #[arg(long, requires = "r")]
        s: Option<u64>,
    },
    /// The singlet correlation table: joint probabilities and expectation
    /// values of the product-observable patterns.
    Table1 {
        #[command(flatten)]
        order: FieldOrder,
    },
    /// Maximize |<A,a;B,b>| over all observable quadruples on the singlet,
    /// or over every entangled state.
    Chsh {
        #[command(flatten)]
        order: FieldOrder,
        /// Sweep all entangled states instead of just the singlet.
        #[arg(long)]
        all_states: bool,
    },
    /// Local-hidden-variable feasibility of a joint table, from a JSON file
    /// or built from the field model.
    Lhv {
        /// JSON joint table: {"m1":..,"m2":..,"pairs":{"i,j":{"pp":"a/b",..}}}.
        #[arg(long, conflicts_with = "from_gqm")]
        table: Option<std::path::PathBuf>,
        /// Build the table from the field model.
        #[arg(long, requires = "q")]
        from_gqm: bool,
        /// Field order for --from-gqm.
        #[arg(long)]
        q: Option<u64>,
        /// State to analyze: "singlet" or "product:<index>".
        #[arg(long, default_value = "singlet")]
        state: String,
    },
    /// The q = 1 limit: the N-point geometry, permutation automorphisms, the
    /// classical spin models, and the consistency report.
    Fun {
        /// Number of points N.
        #[arg(long = "n", visible_alias = "dim")]
        n: usize,
    },
    /// Run every reproduction check that applies at this field order; exits
    /// nonzero if any check fails.
    VerifyAll {
        #[command(flatten)]
        order: FieldOrder,
    },
}

/// Captured result of one CLI invocation.
#[derive(Debug)]
pub struct CliOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the CLI on explicit arguments (the first element is the program
/// name). All output is captured, never printed directly.
pub fn run<I, S>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version through "errors"
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutcome { exit_code: 2, stdout: String::new(), stderr: rendered }
            } else {
                CliOutcome { exit_code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok((stdout, exit_code)) => CliOutcome { exit_code, stdout, stderr: String::new() },
        Err(e) => {
            let message = match &e {
                Error::InvalidField(_) => "q must be a prime power (q=1: use `fun`)".to_string(),
                other => other.to_string(),
            };
            CliOutcome { exit_code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Field { order, elements } => {
            let ctx = order.resolve()?;
            let report = report::field_report(&ctx, *elements);
            Ok((render_field(&report, cli.format)?, 0))
        }
        Command::Counts { order, dim, check_oracle } => {
            let ctx = order.resolve()?;
            let report = report::counts_report(*dim, ctx.q(), *check_oracle)?;
            Ok((render_counts(&report, cli.format)?, 0))
        }
        Command::States { order, dim } => {
            let ctx = order.resolve()?;
            let report = report::states_report(&ctx, *dim)?;
            Ok((render_states(&report, cli.format)?, 0))
        }
        Command::Probs { order, r, s } => {
            let ctx = order.resolve()?;
            let rs = match (r, s) {
                (Some(r), Some(s)) => Some((*r, *s)),
                _ => None,
            };
            let report = report::probs_report(&ctx, rs)?;
            Ok((render_probs(&report, cli.format)?, 0))
        }
        Command::Table1 { order } => {
            let ctx = order.resolve()?;
            let report = report::table1_report(&ctx)?;
            Ok((render_table1(&report, cli.format)?, 0))
        }
        Command::Chsh { order, all_states } => {
            let ctx = order.resolve()?;
            let report = report::chsh_report(&ctx, *all_states)?;
            Ok((render_chsh(&report, cli.format)?, 0))
        }
        Command::Lhv { table, from_gqm, q, state } => {
            let report = if *from_gqm {
                let q = q.ok_or_else(|| Error::InvalidArgs("--from-gqm needs --q".into()))?;
                let ctx = FieldCtx::for_order(q)?;
                let which = parse_gqm_state(state)?;
                report::lhv_report_from_gqm(&ctx, which)?
            } else {
                let path = table
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgs("provide --table FILE or --from-gqm --q Q".into()))?;
                let (scenario, joint) = load_joint_table(path)?;
                report::lhv_report_for_table(scenario, &joint)?
            };
            let code = i32::from(!report.verified);
            Ok((render_lhv(&report, cli.format)?, code))
        }
        Command::Fun { n } => {
            let report = report::fun_report(*n)?;
            let ok = report.consistency.iter().all(|c| c.status == "pass");
            Ok((render_fun(&report, cli.format)?, i32::from(!ok)))
        }
        Command::VerifyAll { order } => {
            let ctx = order.resolve()?;
            let report = report::verify_all(ctx.q())?;
            let code = i32::from(!report.all_passed);
            Ok((render_verify(&report, cli.format)?, code))
        }
    }
}

fn parse_gqm_state(raw: &str) -> Result<GqmLhvState> {
    if raw == "singlet" {
        return Ok(GqmLhvState::Singlet);
    }
    if let Some(idx) = raw.strip_prefix("product:") {
        let idx = idx
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgs(format!("bad product index in --state {raw}")))?;
        return Ok(GqmLhvState::Product(idx));
    }
    Err(Error::InvalidArgs(format!("--state must be 'singlet' or 'product:<index>', got {raw}")))
}

fn load_joint_table(path: &std::path::Path) -> Result<(Scenario, JointTable)> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgs(format!("cannot read {}: {e}", path.display())))?;
    crate::lhv::parse_table_json(&raw)
}

// ---- rendering ----------------------------------------------------------

fn json_out<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidArgs(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&headers.iter().map(|h| csv_escape(h)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.iter().map(|f| csv_escape(f)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: Vec<String>, widths: &[usize]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&fmt_row(headers.iter().map(|h| h.to_string()).collect(), &widths));
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row.clone(), &widths));
        out.push('\n');
    }
    out
}

fn no_csv(what: &str) -> Error {
    Error::InvalidArgs(format!("{what} has no CSV form; use --format text or json"))
}

fn render_field(r: &report::FieldReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => {
            let rows = r
                .elements
                .as_ref()
                .ok_or_else(|| no_csv("field summary (hint: add --elements)"))?
                .iter()
                .map(|e| vec![e.display.clone(), e.code.clone()])
                .collect::<Vec<_>>();
            Ok(csv_table(&["element", "code"], &rows))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "GF({}) = GF({}^{})", r.q, r.p, r.n).unwrap();
            writeln!(out, "modulus:        {}", r.modulus_display).unwrap();
            writeln!(out, "generator:      {}", r.generator.display).unwrap();
            writeln!(out, "characteristic: {}", r.characteristic).unwrap();
            if let Some(elements) = &r.elements {
                let rows: Vec<Vec<String>> = elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| vec![i.to_string(), e.display.clone(), e.code.clone()])
                    .collect();
                out.push_str(&text_table(&["#", "element", "code"], &rows));
            }
            Ok(out)
        }
    }
}

fn render_counts(r: &report::CountsReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => {
            let rows: Vec<Vec<String>> = r
                .subspaces
                .iter()
                .map(|s| vec![s.k.to_string(), s.count.clone(), s.points_each.clone()])
                .collect();
            Ok(csv_table(&["k", "subspaces", "points_each"], &rows))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "[N]_q       = {}   (N = {}, q = {})", r.q_int, r.n, r.q).unwrap();
            writeln!(out, "[N]_q!      = {}", r.q_factorial).unwrap();
            let rows: Vec<Vec<String>> = r
                .gaussian_binomials
                .iter()
                .map(|b| vec![b.m.to_string(), b.value.clone()])
                .collect();
            out.push_str("\nGaussian binomials [N over M]_q\n");
            out.push_str(&text_table(&["M", "value"], &rows));
            let rows: Vec<Vec<String>> = r
                .subspaces
                .iter()
                .map(|s| vec![s.k.to_string(), s.count.clone(), s.points_each.clone()])
                .collect();
            out.push_str("\nk-dimensional subspaces of PG(N-1, q)\n");
            out.push_str(&text_table(&["k", "count", "points each"], &rows));
            if let Some(oracle) = &r.oracle {
                let rows: Vec<Vec<String>> = oracle
                    .iter()
                    .map(|o| {
                        vec![
                            o.k.to_string(),
                            o.closed_form.clone(),
                            o.enumerated.clone(),
                            if o.matches { "yes".into() } else { "NO".into() },
                        ]
                    })
                    .collect();
                out.push_str("\nbrute-force enumeration cross-check\n");
                out.push_str(&text_table(&["k", "closed form", "enumerated", "match"], &rows));
            }
            Ok(out)
        }
    }
}

fn render_states(r: &report::StatesReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => {
            let rows: Vec<Vec<String>> = r
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| vec![i.to_string(), p.display.clone(), p.codes.join(";")])
                .collect();
            Ok(csv_table(&["index", "point", "codes"], &rows))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "PG({}, {}): {} points", r.n - 1, r.q, r.point_count).unwrap();
            let rows: Vec<Vec<String>> = r
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| vec![i.to_string(), p.display.clone()])
                .collect();
            out.push_str(&text_table(&["#", "canonical representative"], &rows));
            if let Some(model) = &r.spin_model {
                out.push_str("\ntwo-level model kets\n");
                let rows: Vec<Vec<String>> = model
                    .kets
                    .iter()
                    .map(|k| vec![format!("|{}>", k.index), k.display.clone()])
                    .collect();
                out.push_str(&text_table(&["ket", "vector"], &rows));
                out.push_str("\ntwo-level model bras\n");
                let rows: Vec<Vec<String>> = model
                    .bras
                    .iter()
                    .map(|b| vec![format!("<{}|", b.index), b.display.clone()])
                    .collect();
                out.push_str(&text_table(&["bra", "dual vector"], &rows));
            }
            Ok(out)
        }
    }
}

fn render_probs(r: &report::ProbsReport, format: Format) -> Result<String> {
    let headers = ["state", "P(+1)", "P(-1)", "<A>"];
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![row.state.clone(), row.p_plus.clone(), row.p_minus.clone(), row.expectation.clone()]
        })
        .collect();
    match format {
        Format::Json => json_out(r),
        Format::Csv => Ok(csv_table(&headers, &rows)),
        Format::Text => {
            let mut out = String::new();
            match &r.observable {
                Some(name) => writeln!(out, "outcome table of {} over GF({})", name, r.q).unwrap(),
                None => writeln!(
                    out,
                    "generic single-spin table over GF({}) (identical for every A(r,s))",
                    r.q
                )
                .unwrap(),
            }
            out.push_str(&text_table(&headers, &rows));
            Ok(out)
        }
    }
}

fn render_table1(r: &report::Table1Report, format: Format) -> Result<String> {
    let headers = ["observable", "++", "+-", "-+", "--", "E.V."];
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.observable.clone(),
                row.pp.clone(),
                row.pm.clone(),
                row.mp.clone(),
                row.mm.clone(),
                row.ev.clone(),
            ]
        })
        .collect();
    match format {
        Format::Json => json_out(r),
        Format::Csv => Ok(csv_table(&headers, &rows)),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "singlet correlation table, q = {}, |S> = {}", r.q, r.state).unwrap();
            out.push_str(&text_table(&headers, &rows));
            for s in &r.skipped {
                writeln!(out, "skipped {}: {}", s.observable, s.reason).unwrap();
            }
            Ok(out)
        }
    }
}

fn render_chsh(r: &report::ChshReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => Err(no_csv("chsh summary")),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "CHSH sweep ({}) over GF({})", r.sweep, r.q).unwrap();
            writeln!(out, "observables: {} ordered direction pairs", r.observable_count).unwrap();
            writeln!(out, "states:      {}", r.state_count).unwrap();
            writeln!(out, "max |<A,a;B,b>| = {}", r.max_abs).unwrap();
            writeln!(
                out,
                "witness: A = {}, a = {}, B = {}, b = {}",
                r.witness_quadruple[0],
                r.witness_quadruple[1],
                r.witness_quadruple[2],
                r.witness_quadruple[3]
            )
            .unwrap();
            writeln!(out, "witness state: {}", r.witness_state).unwrap();
            Ok(out)
        }
    }
}

fn render_lhv(r: &report::LhvReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => Err(no_csv("lhv verdict")),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "LHV feasibility ({}), scenario {}x{}", r.source, r.m1, r.m2).unwrap();
            if let Some(obs) = &r.observables {
                writeln!(out, "observables per side: {}", obs.join(", ")).unwrap();
            }
            writeln!(out, "verdict:  {}", if r.feasible { "FEASIBLE" } else { "INFEASIBLE" })
                .unwrap();
            writeln!(out, "verified: {}", if r.verified { "yes" } else { "NO" }).unwrap();
            if let Some(weights) = &r.weights {
                let rows: Vec<Vec<String>> = weights
                    .iter()
                    .map(|w| vec![w.strategy.clone(), w.weight.clone()])
                    .collect();
                out.push_str("\nreproducing mixture of deterministic strategies\n");
                out.push_str(&text_table(&["strategy (a|b)", "weight"], &rows));
            }
            if let Some(cert) = &r.certificate {
                writeln!(out, "\nseparating functional (value on table > bound = {})", cert.bound)
                    .unwrap();
                let rows: Vec<Vec<String>> = cert
                    .pairs
                    .iter()
                    .map(|p| {
                        vec![
                            format!("({},{})", p.i, p.j),
                            p.coeffs[0].clone(),
                            p.coeffs[1].clone(),
                            p.coeffs[2].clone(),
                            p.coeffs[3].clone(),
                        ]
                    })
                    .collect();
                out.push_str(&text_table(&["pair", "++", "+-", "-+", "--"], &rows));
            }
            Ok(out)
        }
    }
}

fn render_fun(r: &report::FunReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => Err(no_csv("fun report")),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "q = 1 limit on {} points", r.n).unwrap();
            writeln!(out, "automorphism group order: {} (= N!)", r.automorphism_order).unwrap();
            out.push('\n');
            let rows: Vec<Vec<String>> = r
                .subspaces
                .iter()
                .map(|s| {
                    vec![
                        s.k.to_string(),
                        s.count.to_string(),
                        s.expected.clone(),
                        s.members.join(" "),
                    ]
                })
                .collect();
            out.push_str("subspaces (subsets of size k+1)\n");
            out.push_str(&text_table(&["k", "count", "binomial", "members"], &rows));
            writeln!(out, "\none-spin model: states {}", r.spin_model.states.join(", ")).unwrap();
            for e in &r.spin_model.expectations {
                writeln!(out, "  {e}").unwrap();
            }
            writeln!(out, "  superposition attempt: {}", r.spin_model.superposition).unwrap();
            writeln!(
                out,
                "\ntwo-spin model: states {}, entangled {}",
                r.two_spin_model.states.join(", "),
                r.two_spin_model.entangled_count
            )
            .unwrap();
            for o in &r.two_spin_model.definite_outcomes {
                writeln!(out, "  {o}").unwrap();
            }
            writeln!(out, "  CHSH bound: {}", r.two_spin_model.chsh_bound).unwrap();
            if !r.consistency.is_empty() {
                out.push_str("\nconsistency against the q -> 1 formulas\n");
                for c in &r.consistency {
                    writeln!(out, "  {}  {} ({})", status_tag(&c.status), c.name, c.detail).unwrap();
                }
            }
            Ok(out)
        }
    }
}

fn status_tag(status: &str) -> &'static str {
    match status {
        "pass" => "PASS",
        "skip" => "SKIP",
        _ => "FAIL",
    }
}

fn render_verify(r: &report::VerifyReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_out(r),
        Format::Csv => Err(no_csv("verify report")),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "reproduction checks at q = {}", r.q).unwrap();
            for c in &r.checks {
                writeln!(out, "{}  {:<22} {}", status_tag(&c.status), c.name, c.detail).unwrap();
            }
            writeln!(
                out,
                "{}",
                if r.all_passed { "all checks passed" } else { "CHECK FAILURES PRESENT" }
            )
            .unwrap();
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutcome {
        run(std::iter::once("gqm").chain(args.iter().copied()))
    }

    #[test]
    fn non_prime_power_is_exit_2_with_message() {
        let out = run_args(&["field", "--q", "6"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("q must be a prime power (q=1: use `fun`)"), "{}", out.stderr);
        let out = run_args(&["table1", "--q", "1"]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn conflicting_field_specs_error() {
        let out = run_args(&["field", "--q", "8", "--p", "3", "--n", "2"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("conflicts"));
    }

    #[test]
    fn table1_text_is_deterministic() {
        let a = run_args(&["table1", "--q", "3"]);
        let b = run_args(&["table1", "--q", "3"]);
        assert_eq!(a.exit_code, 0);
        assert_eq!(a.stdout, b.stdout);
        assert!(a.stdout.contains("A_rs A_tu"));
        assert!(a.stdout.contains("1/3"));
    }

    #[test]
    fn table1_json_rationals_are_strings() {
        let out = run_args(&["table1", "--q", "2", "--format", "json"]);
        assert_eq!(out.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["rows"][0]["pm"], "1/2");
        assert_eq!(v["skipped"][0]["observable"], "A_rs A_tu");
    }

    #[test]
    fn chsh_reports_the_bound() {
        let out = run_args(&["chsh", "--q", "2"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("max |<A,a;B,b>| = 2"));
    }

    #[test]
    fn lhv_from_gqm_singlet_is_infeasible() {
        let out = run_args(&["lhv", "--from-gqm", "--q", "2", "--format", "json"]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["feasible"], false);
        assert_eq!(v["verified"], true);
        assert!(v["certificate"]["bound"].is_string());
    }

    #[test]
    fn lhv_reads_table_files() {
        let dir = std::env::temp_dir().join("gqm-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("uniform.json");
        std::fs::write(
            &path,
            r#"{"m1":1,"m2":1,"pairs":{"0,0":{"pp":"1/4","pm":"1/4","mp":"1/4","mm":"1/4"}}}"#,
        )
        .unwrap();
        let out = run_args(&["lhv", "--table", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        assert!(out.stdout.contains("FEASIBLE"));

        std::fs::write(&path, "{not json").unwrap();
        let out = run_args(&["lhv", "--table", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn fun_subcommand_renders() {
        let out = run_args(&["fun", "--n", "3"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("automorphism group order: 6"));
        assert!(out.stdout.contains("AdditionForbidden"));
    }

    #[test]
    fn csv_where_supported() {
        let out = run_args(&["table1", "--q", "3", "--format", "csv"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.starts_with("observable,"));
        let out = run_args(&["chsh", "--q", "2", "--format", "csv"]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn help_goes_to_stdout_with_exit_zero() {
        let out = run_args(&["--help"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("verify-all"));
    }
}
