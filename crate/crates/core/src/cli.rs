//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the exit code: 0 on success, 1 when a check fails or a verdict differs
//! from `--expect`, 2 on usage or input errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classical::{self, LaurentPoly, Poly};
use crate::error::{Error, Result};
use crate::fock::{parse_state, FockState};
use crate::linalg::{format_rational, Rational};
use crate::modes::suite::{identity_suites, length_parity_suite, oracle_suite, SuiteOutcome};
use crate::modes::{check_oracle, mode_product_oracle, ModeEngine};
use crate::report::ProbeReport;
use crate::setcalc::{MZVerdict, PeriodicSet, Verdict};
use crate::text::Cursor;
use crate::vamz::{self, ProbeBounds, SubspaceSpec};
use crate::zhu;

#[derive(Parser, Debug)]
#[command(name = "vamz", version, about = "Exact computations in the Heisenberg vertex algebra M_1(1)")]
struct Cli {
    /// Emit JSON (sorted keys) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A(n)w.
    ModeProduct {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Use the normal-ordered oracle instead of the recursion.
        #[arg(long)]
        oracle: bool,
    },
    /// Compare the recursion with the oracle on one instance or on a corpus.
    OracleDiff {
        #[arg(long = "A", allow_hyphen_values = true, requires_all = ["n", "w"])]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_weight: u64,
        #[arg(long, default_value_t = 3)]
        range: i64,
    },
    /// Run the identity suites on all monomials up to a weight.
    Identities {
        #[arg(long, default_value_t = 4)]
        max_weight: u64,
    },
    /// Mathieu-Zhao decision for a length-set subspace or a monomial set.
    MzDecide {
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        space: Option<String>,
        #[arg(long)]
        set: Option<String>,
        /// Exit 1 unless the verdict is this one.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Bounded search for v(n_1)...v(n_t)|0> outside M.
    RadicalProbe {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        space: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Left and right strong radical probes.
    StrongProbe {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        space: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Search for (w, n) with v(n)w != 0.
    AnnihilatorProbe {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Zhu algebra operations.
    #[command(subcommand)]
    Zhu(ZhuCommand),
    /// Associative-algebra counterparts.
    #[command(subcommand)]
    Classical(ClassicalCommand),
    /// Parse an input and print its canonical form.
    ParseCheck {
        #[arg(long, allow_hyphen_values = true, group = "input")]
        state: Option<String>,
        #[arg(long, group = "input")]
        set: Option<String>,
        #[arg(long, group = "input")]
        space: Option<String>,
        #[arg(long, allow_hyphen_values = true, group = "input")]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true, group = "input")]
        laurent: Option<String>,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Mode window, `lo..hi` or a comma list.
    #[arg(long, allow_hyphen_values = true, default_value = "-4..4")]
    window: String,
    #[arg(long, default_value_t = 6)]
    t_max: usize,
    /// Corpus: all monomials up to this weight.
    #[arg(long, default_value_t = 4)]
    corpus_weight: u64,
}

impl BoundArgs {
    fn resolve(&self) -> Result<ProbeBounds> {
        if self.t_max == 0 {
            return Err(Error::InvalidArgument("--t-max must be at least 1".into()));
        }
        Ok(ProbeBounds {
            window: parse_window(&self.window)?,
            t_max: self.t_max,
            corpus_weight: self.corpus_weight,
        })
    }
}

#[derive(Subcommand, Debug)]
enum ZhuCommand {
    /// a ⋆ b.
    Star {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// a ∘ b, a spanning element of O(V).
    OvGenerator {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// x ∈ O(V) within the window at the cap.
    OvMember {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        cap: u64,
    },
    /// a ⋆ b - b ⋆ a ∈ O(V).
    Commutes {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        cap: u64,
    },
    /// (a ⋆ b) ⋆ c - a ⋆ (b ⋆ c) ∈ O(V).
    Associates {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        cap: u64,
    },
    /// Linear independence of classes modulo O(V).
    Independent {
        #[arg(long = "x", allow_hyphen_values = true, required = true)]
        xs: Vec<String>,
        #[arg(long)]
        cap: u64,
    },
    /// Search for (w, n != -1) with v(n)w != 0.
    Center {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// e(-1)e = e.
    Idempotent {
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
}

#[derive(Subcommand, Debug)]
enum ClassicalCommand {
    /// Decision for span{x^n : n in S}.
    MonomialMz {
        #[arg(long)]
        set: String,
        #[arg(long)]
        expect: Option<String>,
    },
    /// Components of f by exponent residue mod k.
    Eigenspace {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        k: u32,
    },
    /// Whether the integral of f over [0, 1] vanishes.
    Integral {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// D_λ f.
    DlambdaApply {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// f ∈ D_λ(Q[t, t^-1]).
    DlambdaMember {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Decision for the image of D_λ.
    DlambdaClassify {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        expect: Option<String>,
    },
    /// f(n)g in Q[t, t^-1].
    LaurentMode {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Powers f^m against span{x^n : n in S}.
    RadicalProbe {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
    },
}

/// What a command produced: text, its JSON form, and whether a check failed.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            failed: false,
        }
    }

    fn failing_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(output) => {
            let printed = if cli.json {
                serde_json::to_string_pretty(&output.json).expect("json")
            } else {
                output.text
            };
            let _ = writeln!(out, "{printed}");
            if output.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn state(text: &str) -> Result<FockState> {
    parse_state(text)
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

/// `lo..hi` (inclusive) or `n1,n2,...`.
fn parse_window(text: &str) -> Result<Vec<i64>> {
    let mut cur = Cursor::new(text);
    let first = cur.int()?;
    let window = if cur.eat("..") {
        let last = cur.int()?;
        if last < first {
            return Err(Error::InvalidArgument(format!("empty window {text}")));
        }
        (first..=last).collect()
    } else {
        let mut w = vec![first];
        while cur.eat(",") {
            w.push(cur.int()?);
        }
        w
    };
    cur.finish()?;
    Ok(window)
}

/// Optionally signed `INT` or `INT/INT`.
fn parse_rational(text: &str) -> Result<Rational> {
    let mut cur = Cursor::new(text);
    let neg = cur.eat("-");
    let r = cur.rational()?;
    cur.finish()?;
    Ok(if neg { -r } else { r })
}

fn expect_verdict(v: MZVerdict, expect: Option<&str>, extra: Value) -> Result<Output> {
    let expected = expect.map(str::parse::<Verdict>).transpose()?;
    let mut json = to_json(&v);
    if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
        map.extend(more);
    }
    let mut text = format!("{}: {}", v.verdict, v.reason);
    if let Some(d) = v.witness_d {
        text.push_str(&format!("\nwitness d = {d}"));
    }
    let mismatch = expected.is_some_and(|e| e != v.verdict);
    if let (true, Some(e)) = (mismatch, expected) {
        text.push_str(&format!("\nexpected {e}"));
    }
    Ok(Output::new(text, json).failing_if(mismatch))
}

fn report_output(report: &ProbeReport) -> Output {
    let mut lines = vec![report.conclusion.clone(), format!("bounds: {}", report.bounds_text())];
    lines.push(format!("tested: {}", report.tested));
    for cx in &report.counterexamples {
        let mut line = format!("{:?} t={} modes={:?}", cx.side, cx.t, cx.modes);
        if let Some(op) = &cx.operand {
            line.push_str(&format!(" operand={op}"));
        }
        if let Some(n) = cx.outer_mode {
            line.push_str(&format!(" outer_mode={n}"));
        }
        line.push_str(&format!(" -> {}", cx.state));
        lines.push(line);
    }
    Output::new(lines.join("\n"), report.to_json())
}

fn suites_output(outcomes: Vec<SuiteOutcome>) -> Output {
    let failed = outcomes.iter().any(|o| !o.passed());
    let text = outcomes
        .iter()
        .map(|o| {
            let mut line = format!(
                "{} {}: {} checks, {} failures",
                if o.passed() { "PASS" } else { "FAIL" },
                o.name,
                o.checked,
                o.failures.len()
            );
            for f in o.failures.iter().take(5) {
                line.push_str(&format!("\n  {f}"));
            }
            line
        })
        .collect::<Vec<_>>()
        .join("\n");
    Output::new(text, json!({ "suites": outcomes, "passed": !failed })).failing_if(failed)
}

fn bool_output(key: &str, value: bool, mut json: Value) -> Output {
    if let Value::Object(map) = &mut json {
        map.insert(key.to_string(), json!(value));
    }
    Output::new(value.to_string(), json)
}

fn state_output(result: &FockState, mut json: Value) -> Output {
    if let Value::Object(map) = &mut json {
        map.insert("result".into(), json!(result.to_string()));
    }
    Output::new(result.to_string(), json)
}

fn dispatch(command: &Command) -> Result<Output> {
    let engine = ModeEngine::shared();
    match command {
        Command::ModeProduct { a, n, w, oracle } => {
            let (sa, sw) = (state(a)?, state(w)?);
            let result = if *oracle {
                mode_product_oracle(&sa, *n, &sw)
            } else {
                engine.mode_product(&sa, *n, &sw)
            };
            Ok(state_output(
                &result,
                json!({ "A": sa.to_string(), "n": n, "w": sw.to_string(), "oracle": oracle }),
            ))
        }
        Command::OracleDiff {
            a,
            n,
            w,
            max_weight,
            range,
        } => match (a, n, w) {
            (Some(a), Some(n), Some(w)) => {
                let d = check_oracle(engine, &state(a)?, *n, &state(w)?);
                let text = format!(
                    "recursion: {}\noracle: {}\ndifference: {}",
                    d.left, d.right, d.difference
                );
                Ok(Output::new(text, to_json(&d.to_json())).failing_if(!d.holds()))
            }
            _ => Ok(suites_output(vec![
                oracle_suite(engine, *max_weight, *range),
                length_parity_suite(engine, *max_weight, *range),
            ])),
        },
        Command::Identities { max_weight } => Ok(suites_output(identity_suites(engine, *max_weight))),
        Command::MzDecide { space, set, expect } => {
            let (verdict, label) = match (space, set) {
                (Some(s), _) => {
                    let spec = SubspaceSpec::parse(s)?;
                    (vamz::fock_mz_decide(&spec), json!({ "space": spec.to_string() }))
                }
                (None, Some(s)) => {
                    let set = PeriodicSet::parse(s)?;
                    (classical::poly_monomial_mz_decide(&set), json!({ "set": set.to_string() }))
                }
                (None, None) => unreachable!("clap requires one of --space, --set"),
            };
            expect_verdict(verdict, expect.as_deref(), label)
        }
        Command::RadicalProbe { v, space, bounds } => {
            let b = bounds.resolve()?;
            let spec = SubspaceSpec::parse(space)?;
            let r = vamz::radical_probe(engine, &state(v)?, &spec, b.t_max, &b.window)?;
            Ok(report_output(&r))
        }
        Command::StrongProbe { v, space, bounds } => {
            let b = bounds.resolve()?;
            let spec = SubspaceSpec::parse(space)?;
            let r = vamz::strong_radical_probe(
                engine,
                &state(v)?,
                &spec,
                &b.corpus(),
                b.t_max,
                &b.window,
            )?;
            Ok(report_output(&r))
        }
        Command::AnnihilatorProbe { v, bounds } => {
            let b = bounds.resolve()?;
            Ok(report_output(&vamz::annihilator_probe(
                engine,
                &state(v)?,
                &b.corpus(),
                &b.window,
            )))
        }
        Command::Zhu(z) => dispatch_zhu(engine, z),
        Command::Classical(c) => dispatch_classical(c),
        Command::ParseCheck {
            state: st,
            set,
            space,
            poly,
            laurent,
        } => {
            let canonical = if let Some(s) = st {
                state(s)?.to_string()
            } else if let Some(s) = set {
                PeriodicSet::parse(s)?.canonicalize().to_string()
            } else if let Some(s) = space {
                SubspaceSpec::parse(s)?.to_string()
            } else if let Some(s) = poly {
                Poly::parse(s)?.to_string()
            } else if let Some(s) = laurent {
                LaurentPoly::parse(s)?.to_string()
            } else {
                return Err(Error::InvalidArgument(
                    "one of --state, --set, --space, --poly, --laurent is required".into(),
                ));
            };
            Ok(Output::new(canonical.clone(), json!({ "canonical": canonical })))
        }
    }
}

fn dispatch_zhu(engine: &ModeEngine, command: &ZhuCommand) -> Result<Output> {
    match command {
        ZhuCommand::Star { a, b } => {
            let r = zhu::zhu_star(engine, &state(a)?, &state(b)?);
            Ok(state_output(&r, json!({ "a": a, "b": b })))
        }
        ZhuCommand::OvGenerator { a, b } => {
            let r = zhu::zhu_ov_generator(engine, &state(a)?, &state(b)?);
            Ok(state_output(&r, json!({ "a": a, "b": b })))
        }
        ZhuCommand::OvMember { x, cap } => {
            let m = zhu::zhu_ov_membership(&state(x)?, *cap)?;
            Ok(bool_output("member", m, json!({ "x": x, "cap": cap })))
        }
        ZhuCommand::Commutes { a, b, cap } => {
            let m = zhu::zhu_commutativity_check(engine, &state(a)?, &state(b)?, *cap)?;
            Ok(bool_output("commutes", m, json!({ "cap": cap })))
        }
        ZhuCommand::Associates { a, b, c, cap } => {
            let m = zhu::zhu_associativity_check(engine, &state(a)?, &state(b)?, &state(c)?, *cap)?;
            Ok(bool_output("associates", m, json!({ "cap": cap })))
        }
        ZhuCommand::Independent { xs, cap } => {
            let states = xs.iter().map(|x| state(x)).collect::<Result<Vec<_>>>()?;
            let m = zhu::zhu_independence_check(&states, *cap)?;
            Ok(bool_output("independent", m, json!({ "cap": cap })))
        }
        ZhuCommand::Center { v, bounds } => {
            let b = bounds.resolve()?;
            Ok(report_output(&zhu::center_probe(engine, &state(v)?, &b.corpus(), &b.window)))
        }
        ZhuCommand::Idempotent { e } => {
            let m = zhu::idempotent_check(engine, &state(e)?);
            Ok(bool_output("idempotent", m, json!({ "e": e })))
        }
    }
}

fn dispatch_classical(command: &ClassicalCommand) -> Result<Output> {
    match command {
        ClassicalCommand::MonomialMz { set, expect } => {
            let set = PeriodicSet::parse(set)?;
            let v = classical::poly_monomial_mz_decide(&set);
            expect_verdict(v, expect.as_deref(), json!({ "set": set.to_string() }))
        }
        ClassicalCommand::Eigenspace { f, k } => {
            if *k < 2 {
                return Err(Error::InvalidArgument("--k must be at least 2".into()));
            }
            let parts: Vec<String> = classical::cx_eigenspace_decompose(&Poly::parse(f)?, *k)
                .iter()
                .map(Poly::to_string)
                .collect();
            let text = parts
                .iter()
                .enumerate()
                .map(|(l, p)| format!("{l}: {p}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(text, json!({ "k": k, "components": parts })))
        }
        ClassicalCommand::Integral { f } => {
            let p = Poly::parse(f)?;
            let value = format_rational(&p.integral_unit_interval());
            let member = classical::integral_membership(&p);
            Ok(Output::new(
                format!("{member} (integral = {value})"),
                json!({ "member": member, "integral": value }),
            ))
        }
        ClassicalCommand::DlambdaApply { lambda, f } => {
            let l = parse_rational(lambda)?;
            let r = classical::dlambda_apply(&l, &LaurentPoly::parse(f)?);
            Ok(Output::new(
                r.to_string(),
                json!({ "lambda": format_rational(&l), "result": r.to_string() }),
            ))
        }
        ClassicalCommand::DlambdaMember { lambda, f } => {
            let l = parse_rational(lambda)?;
            let m = classical::dlambda_image_membership(&l, &LaurentPoly::parse(f)?);
            Ok(bool_output("member", m, json!({ "lambda": format_rational(&l) })))
        }
        ClassicalCommand::DlambdaClassify { lambda, expect } => {
            let l = parse_rational(lambda)?;
            let v = classical::dlambda_mz_classify(&l);
            expect_verdict(v, expect.as_deref(), json!({ "lambda": format_rational(&l) }))
        }
        ClassicalCommand::LaurentMode { f, n, g } => {
            let r = classical::laurent_mode(&LaurentPoly::parse(f)?, *n, &LaurentPoly::parse(g)?);
            Ok(Output::new(r.to_string(), json!({ "n": n, "result": r.to_string() })))
        }
        ClassicalCommand::RadicalProbe { f, set, m_max } => {
            if *m_max == 0 {
                return Err(Error::InvalidArgument("--m-max must be at least 1".into()));
            }
            let set = PeriodicSet::parse(set)?;
            let r = classical::poly_radical_probe(
                &Poly::parse(f)?,
                |p| classical::monomial_span_member(&set, p),
                *m_max,
            );
            Ok(report_output(&r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("vamz").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mode_product_example() {
        let (code, out, _) = call(&["mode-product", "--A", "a(-1)^2|0>", "--n", "1", "--w", "a(-1)|0>"]);
        assert_eq!((code, out.trim()), (0, "2*a(-1)|0>"));
        let (code, out, _) = call(&["mode-product", "--A", "a(-2)|0>", "--n", "-1", "--w", "|0>", "--oracle"]);
        assert_eq!((code, out.trim()), (0, "a(-2)|0>"));
    }

    #[test]
    fn windows_and_rationals() {
        assert_eq!(parse_window("-2..1").unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(parse_window("-1").unwrap(), vec![-1]);
        assert_eq!(parse_window("3, -1").unwrap(), vec![3, -1]);
        assert!(parse_window("2..1").is_err());
        assert_eq!(parse_rational("-7/3").unwrap(), crate::linalg::rat_frac(-7, 3));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn mz_json() {
        let (code, out, _) = call(&["--json", "mz-decide", "--space", "lengths mod 3 in {1,2}"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "MZ");
        let (code, _, _) = call(&["mz-decide", "--set", "mod 2 in {0}", "--expect", "MZ"]);
        assert_eq!(code, 1);
    }
}
