//! Command-line front end.
//!
//! Exit status: 0 on success or a verdict that holds, 1 on a failed verdict
//! with a witness, 2 on usage or input errors. Output is deterministic: no
//! timings, fixed orderings, seeded randomness.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::algebra::{AlgElem, AlgMatrix};
use crate::ca::{direct_finiteness_scan, surjunctivity_scan, CARule, DEFAULT_CONFIG_BUDGET, DEFAULT_RULE_BUDGET};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finiteness::{bicyclic_witness, certify_two_sided};
use crate::lca::{psi, psi_inverse};
use crate::monoid::{enumerate_monoids, Elem, Monoid};
use crate::parse;
use crate::pattern::{convolve_matrix, required_domain, SymbolAlphabet, VectorPattern};
use crate::sample::Sampler;
use crate::sentence::{build_sentence, check_model, find_model, DEFAULT_SENTENCE_BUDGET};
use crate::Verdict;

#[derive(Parser, Debug)]
#[command(name = "monalg", version, about = "Monoid algebras and linear cellular automata")]
struct Cli {
    /// Coefficient field: `p`, `p^k`, `q`, `p^k:MODULUS` or `Q`.
    #[arg(long, global = true, default_value = "2")]
    field: String,
    /// `bicyclic`, `cyclic:n`, `freecomm:r` or `table:PATH`.
    #[arg(long, global = true, default_value = "bicyclic")]
    monoid: String,
    /// Cap on the enumerated search space.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two monoid elements.
    Mul { x: String, y: String },
    /// Product of two algebra literals.
    Amul { a: String, b: String },
    /// Product of two matrix files.
    MatMul { a: PathBuf, b: PathBuf },
    /// The convolution `c * alpha` or `c * A` on a window.
    Conv(ConvArgs),
    /// Applies a rule file to a symbol pattern on a window.
    CaApply {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        window: Option<String>,
    },
    /// The rule `outer o inner`.
    CaCompose { outer: PathBuf, inner: PathBuf },
    /// Minimal memory set and reduced rule.
    CaMinMemory { rule: PathBuf },
    /// Injective implies surjective for every rule with the given memory,
    /// and direct finiteness of the monoid of those rules.
    CaScanSurjunctivity {
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
        /// Comma-separated memory set; defaults to the whole monoid.
        #[arg(long)]
        memory: Option<String>,
    },
    /// Memory set and local map of the linear rule `c |-> c * A`.
    Psi {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Recovers the matrix of the composite of the given rules, applied in
    /// order, from its action on indicator patterns.
    PsiInv {
        #[arg(long)]
        support: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long = "apply", required = true)]
        apply: Vec<PathBuf>,
    },
    /// Applies `c |-> c * A` through convolution and the local map.
    LcaApply {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        window: Option<String>,
    },
    /// Randomized check of `psi(B) o psi(A) = psi(AB)`.
    LcaCheckAntihom {
        #[arg(long = "matrixA")]
        matrix_a: Option<PathBuf>,
        #[arg(long = "matrixB")]
        matrix_b: Option<PathBuf>,
        /// Dimension of random matrices when no files are given.
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Two-sided inverse certificates and the bicyclic counterexample.
    Finiteness {
        #[command(subcommand)]
        command: FinitenessCommand,
    },
    /// The first-order sentence for one-sided inverses with a given support.
    Sentence {
        #[command(subcommand)]
        command: SentenceCommand,
    },
    /// All monoid tables of the given order (at most 3).
    EnumerateMonoids {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct ConvArgs {
    #[arg(long)]
    pattern: PathBuf,
    /// Algebra literal (dimension 1).
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    alpha: Option<String>,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    window: Option<String>,
}

#[derive(Subcommand, Debug)]
enum FinitenessCommand {
    /// Given `AB = I`, checks `BA = I` directly and by rank.
    Certify {
        #[arg(long = "matrixA")]
        matrix_a: PathBuf,
        #[arg(long = "matrixB")]
        matrix_b: PathBuf,
    },
    /// `A = [p]`, `B = [q]` over the bicyclic monoid.
    BicyclicWitness,
}

#[derive(Args, Debug)]
struct SentenceArgs {
    /// Comma-separated support set, in variable order.
    #[arg(long)]
    support: String,
    #[arg(long, default_value_t = 1)]
    dim: usize,
}

#[derive(Subcommand, Debug)]
enum SentenceCommand {
    /// Prints the sentence as a formula (text) or a structured document (json).
    Emit(SentenceArgs),
    /// Exhaustive search for a model over a finite field.
    Solve(SentenceArgs),
    /// Evaluates both blocks on an assignment.
    Check {
        #[command(flatten)]
        args: SentenceArgs,
        /// Comma-separated field literals, x-block then y-block.
        #[arg(long)]
        assignment: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Ok,
    Holds,
    Fails,
    Sat,
    Unsat,
}

impl Outcome {
    fn name(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Sat => "sat",
            Outcome::Unsat => "unsat",
        }
    }

    fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok | Outcome::Holds | Outcome::Unsat => 0,
            Outcome::Fails | Outcome::Sat => 1,
        }
    }
}

struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    outcome: Outcome,
    witness: Option<Value>,
    stats: Map<String, Value>,
    text: String,
    /// Replaces the JSON wrapper when set (structured sentence emission).
    raw_json: Option<String>,
}

impl Report {
    fn new(command: &'static str, ctx: &Context) -> Self {
        let mut inputs = Map::new();
        inputs.insert("field".into(), json!(ctx.field_spec));
        inputs.insert("monoid".into(), json!(ctx.monoid_spec));
        Report {
            command,
            inputs,
            outcome: Outcome::Ok,
            witness: None,
            stats: Map::new(),
            text: String::new(),
            raw_json: None,
        }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    fn stat(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.stats.insert(key.into(), value.into());
        self
    }

    fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn render(&self, format: Format) -> String {
        match (format, &self.raw_json) {
            (Format::Text, _) => self.text.clone(),
            (Format::Json, Some(raw)) => format!("{raw}\n"),
            (Format::Json, None) => {
                let mut obj = Map::new();
                obj.insert("command".into(), json!(self.command));
                obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
                obj.insert("verdict".into(), json!(self.outcome.name()));
                if let Some(w) = &self.witness {
                    obj.insert("witness".into(), w.clone());
                }
                obj.insert("stats".into(), Value::Object(self.stats.clone()));
                format!("{}\n", serde_json::to_string_pretty(&Value::Object(obj)).expect("json"))
            }
        }
    }
}

struct Context {
    field_spec: String,
    monoid_spec: String,
    field: Field,
    monoid: Monoid,
    budget: Option<u64>,
    seed: u64,
    workers: usize,
}

impl Context {
    fn elems(&self, text: &str) -> Result<Vec<Elem>> {
        parse::parse_elem_list(&self.monoid, text)
    }

    /// The given window, or the whole monoid when it is finite.
    fn window(&self, text: Option<&str>) -> Result<Vec<Elem>> {
        match text {
            Some(t) => self.elems(t),
            None if self.monoid.is_finite() => self.monoid.elements(),
            None => Err(Error::Precondition("--window is required for infinite monoids".into())),
        }
    }

    fn matrix(&self, path: &Path) -> Result<AlgMatrix> {
        parse::parse_matrix(&self.field, &self.monoid, &parse::read_file(path)?)
    }

    fn rule(&self, path: &Path) -> Result<CARule> {
        parse::parse_rule(&self.monoid, &parse::read_file(path)?)
    }

    fn names(&self, els: &[Elem]) -> Vec<String> {
        els.iter().map(|e| self.monoid.name(e)).collect()
    }
}

/// One-line rendering `[a; b | c; d]`.
fn inline(a: &AlgMatrix) -> String {
    let rows: Vec<String> = (0..a.dim())
        .map(|i| {
            (0..a.dim())
                .map(|j| a.entry(i, j).to_string())
                .collect::<Vec<_>>()
                .join("; ")
        })
        .collect();
    format!("[{}]", rows.join(" | "))
}

fn matrix_json(a: &AlgMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..a.dim())
        .map(|i| (0..a.dim()).map(|j| a.entry(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn vector_pattern_json(field: &Field, c: &VectorPattern) -> Value {
    let m = c.monoid();
    let cells: Map<String, Value> = c
        .cells()
        .map(|(e, v)| (m.name(e), json!(v.iter().map(|x| field.format(x)).collect::<Vec<_>>())))
        .collect();
    Value::Object(cells)
}

fn rule_json(rule: &CARule) -> Value {
    json!(parse::format_rule(rule))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(format).as_bytes());
            report.outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<Report> {
    let ctx = Context {
        field: Field::from_spec(&cli.field)?,
        monoid: parse::monoid_from_spec(&cli.monoid)?,
        field_spec: cli.field,
        monoid_spec: cli.monoid,
        budget: cli.budget,
        seed: cli.seed,
        workers: cli.workers.max(1),
    };
    match cli.command {
        Command::Mul { x, y } => cmd_mul(&ctx, &x, &y),
        Command::Amul { a, b } => cmd_amul(&ctx, &a, &b),
        Command::MatMul { a, b } => cmd_mat_mul(&ctx, &a, &b),
        Command::Conv(args) => cmd_conv(&ctx, &args),
        Command::CaApply { rule, pattern, window } => cmd_ca_apply(&ctx, &rule, &pattern, window.as_deref()),
        Command::CaCompose { outer, inner } => cmd_ca_compose(&ctx, &outer, &inner),
        Command::CaMinMemory { rule } => cmd_ca_min_memory(&ctx, &rule),
        Command::CaScanSurjunctivity { alphabet, memory } => cmd_ca_scan(&ctx, alphabet, memory.as_deref()),
        Command::Psi { matrix } => cmd_psi(&ctx, &matrix),
        Command::PsiInv { support, dim, apply } => cmd_psi_inv(&ctx, &support, dim, &apply),
        Command::LcaApply { matrix, pattern, window } => cmd_lca_apply(&ctx, &matrix, &pattern, window.as_deref()),
        Command::LcaCheckAntihom {
            matrix_a,
            matrix_b,
            dim,
            trials,
        } => cmd_antihom(&ctx, matrix_a.as_deref(), matrix_b.as_deref(), dim, trials),
        Command::Finiteness { command } => match command {
            FinitenessCommand::Certify { matrix_a, matrix_b } => cmd_certify(&ctx, &matrix_a, &matrix_b),
            FinitenessCommand::BicyclicWitness => cmd_bicyclic_witness(&ctx),
        },
        Command::Sentence { command } => match command {
            SentenceCommand::Emit(args) => cmd_sentence_emit(&ctx, &args),
            SentenceCommand::Solve(args) => cmd_sentence_solve(&ctx, &args),
            SentenceCommand::Check { args, assignment } => cmd_sentence_check(&ctx, &args, &assignment),
        },
        Command::EnumerateMonoids { order } => cmd_enumerate(&ctx, order),
    }
}

fn cmd_mul(ctx: &Context, x: &str, y: &str) -> Result<Report> {
    let m = &ctx.monoid;
    let z = m.mul(&m.parse_elem(x)?, &m.parse_elem(y)?)?;
    let mut r = Report::new("mul", ctx);
    r.input("x", x).input("y", y);
    r.stat("product", m.name(&z));
    r.line(m.name(&z));
    Ok(r)
}

fn cmd_amul(ctx: &Context, a: &str, b: &str) -> Result<Report> {
    let x = AlgElem::parse(&ctx.field, &ctx.monoid, a)?;
    let y = AlgElem::parse(&ctx.field, &ctx.monoid, b)?;
    let z = x.mul(&y)?;
    let mut r = Report::new("amul", ctx);
    r.input("a", a).input("b", b);
    r.stat("product", z.to_string());
    r.line(z.to_string());
    Ok(r)
}

fn cmd_mat_mul(ctx: &Context, a: &Path, b: &Path) -> Result<Report> {
    let c = ctx.matrix(a)?.mul(&ctx.matrix(b)?)?;
    let mut r = Report::new("mat-mul", ctx);
    r.input("a", a.display().to_string()).input("b", b.display().to_string());
    r.stat("product", matrix_json(&c));
    r.text = c.to_string();
    Ok(r)
}

fn cmd_conv(ctx: &Context, args: &ConvArgs) -> Result<Report> {
    let a = match (&args.alpha, &args.matrix) {
        (Some(lit), _) => AlgMatrix::scalar(AlgElem::parse(&ctx.field, &ctx.monoid, lit)?),
        (None, Some(path)) => ctx.matrix(path)?,
        (None, None) => unreachable!("clap requires one of --alpha, --matrix"),
    };
    let c = parse::parse_vector_pattern(&ctx.field, &ctx.monoid, a.dim(), &parse::read_file(&args.pattern)?)?;
    let w = ctx.window(args.window.as_deref())?;
    let out = convolve_matrix(&c, &a, &w)?;
    let mut r = Report::new("conv", ctx);
    r.input("pattern", args.pattern.display().to_string())
        .input("window", json!(ctx.names(&w)));
    if let Some(lit) = &args.alpha {
        r.input("alpha", lit.as_str());
    }
    if let Some(p) = &args.matrix {
        r.input("matrix", p.display().to_string());
    }
    r.stat("output", vector_pattern_json(&ctx.field, &out));
    r.text = parse::format_vector_pattern(&ctx.field, &out);
    Ok(r)
}

fn cmd_ca_apply(ctx: &Context, rule: &Path, pattern: &Path, window: Option<&str>) -> Result<Report> {
    let tau = ctx.rule(rule)?;
    let c = parse::parse_symbol_pattern(&ctx.monoid, tau.alphabet(), &parse::read_file(pattern)?)?;
    let w = ctx.window(window)?;
    let out = tau.apply(&c, &w)?;
    let mut r = Report::new("ca-apply", ctx);
    r.input("rule", rule.display().to_string())
        .input("pattern", pattern.display().to_string())
        .input("window", json!(ctx.names(&w)));
    let cells: Map<String, Value> = out.cells().map(|(e, v)| (ctx.monoid.name(e), json!(v))).collect();
    r.stat("output", Value::Object(cells));
    r.text = parse::format_symbol_pattern(&out);
    Ok(r)
}

fn cmd_ca_compose(ctx: &Context, outer: &Path, inner: &Path) -> Result<Report> {
    let rule = ctx.rule(outer)?.compose(&ctx.rule(inner)?)?;
    let mut r = Report::new("ca-compose", ctx);
    r.input("outer", outer.display().to_string())
        .input("inner", inner.display().to_string());
    r.stat("memory", json!(ctx.names(rule.memory())))
        .stat("rule", rule_json(&rule));
    r.text = parse::format_rule(&rule);
    Ok(r)
}

fn cmd_ca_min_memory(ctx: &Context, path: &Path) -> Result<Report> {
    let rule = ctx.rule(path)?;
    let (memory, reduced) = rule.minimal_memory();
    let mut r = Report::new("ca-min-memory", ctx);
    r.input("rule", path.display().to_string());
    r.stat("memory", json!(ctx.names(&memory)))
        .stat("rule", rule_json(&reduced));
    r.text = parse::format_rule(&reduced);
    Ok(r)
}

fn cmd_ca_scan(ctx: &Context, a: u32, memory: Option<&str>) -> Result<Report> {
    let alphabet = SymbolAlphabet::new(a)?;
    let memory = match memory {
        Some(t) => ctx.elems(t)?,
        None => ctx.monoid.elements()?,
    };
    let rule_budget = ctx.budget.unwrap_or(DEFAULT_RULE_BUDGET);
    let surj = surjunctivity_scan(&ctx.monoid, alphabet, &memory, rule_budget, DEFAULT_CONFIG_BUDGET)?;
    let df = direct_finiteness_scan(&ctx.monoid, alphabet, &memory, rule_budget, DEFAULT_CONFIG_BUDGET)?;
    let mut r = Report::new("ca-scan-surjunctivity", ctx);
    r.input("alphabet", a).input("memory", json!(ctx.names(&memory)));
    r.stat("rules", surj.rules)
        .stat("injective", surj.injective)
        .stat("surjective", surj.surjective)
        .stat("surjunctive", surj.violation.is_none())
        .stat("directly_finite", df.holds());
    r.line(format!("rules: {}", surj.rules))
        .line(format!("injective: {}", surj.injective))
        .line(format!("surjective: {}", surj.surjective));
    let mut witness = Map::new();
    match &surj.violation {
        None => r.line("injective implies surjective: yes"),
        Some(rule) => {
            witness.insert("injective_not_surjective".into(), rule_json(rule));
            r.line("injective implies surjective: no").line(parse::format_rule(rule).trim_end())
        }
    };
    match &df {
        Verdict::Holds => r.line("rule monoid directly finite: yes"),
        Verdict::Fails((sigma, tau)) => {
            witness.insert("sigma".into(), rule_json(sigma));
            witness.insert("tau".into(), rule_json(tau));
            r.line("rule monoid directly finite: no")
                .line(format!("sigma:\n{}", parse::format_rule(sigma).trim_end()))
                .line(format!("tau:\n{}", parse::format_rule(tau).trim_end()))
        }
    };
    if witness.is_empty() {
        r.outcome = Outcome::Holds;
    } else {
        r.outcome = Outcome::Fails;
        r.witness = Some(Value::Object(witness));
    }
    Ok(r)
}

fn cmd_psi(ctx: &Context, path: &Path) -> Result<Report> {
    let a = ctx.matrix(path)?;
    let rule = psi(&a);
    let f = &ctx.field;
    let memory = rule.memory();
    let mut r = Report::new("psi", ctx);
    r.input("matrix", path.display().to_string());
    r.line(format!("memory: {}", ctx.names(&memory).join(" ")));
    let mut maps = Vec::new();
    for j in 0..a.dim() {
        let mut terms = Vec::new();
        for s in &memory {
            for i in 0..a.dim() {
                let c = a.entry(i, j).coeff(s);
                if f.is_zero(&c) {
                    continue;
                }
                let var = format!("c{}({})", i + 1, ctx.monoid.name(s));
                terms.push(if f.is_one(&c) {
                    var
                } else {
                    format!("{}*{var}", f.format(&c))
                });
            }
        }
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        r.line(format!("mu{}(c) = {rhs}", j + 1));
        maps.push(rhs);
    }
    r.stat("memory", json!(ctx.names(&memory))).stat("local_map", json!(maps));
    Ok(r)
}

fn cmd_psi_inv(ctx: &Context, support: &str, dim: usize, apply: &[PathBuf]) -> Result<Report> {
    let support = ctx.elems(support)?;
    let rules = apply
        .iter()
        .map(|p| ctx.matrix(p).map(|a| psi(&a)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = rules.iter().find(|r| r.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.dim(),
        });
    }
    // windows[k] is where rule k must be evaluated for the final output at 1_M
    let mut windows = vec![vec![ctx.monoid.identity()]];
    for rule in rules.iter().rev() {
        let next = required_domain(&ctx.monoid, windows.last().expect("nonempty"), &rule.memory())?;
        windows.push(next);
    }
    windows.reverse();
    let blackbox = |c: &VectorPattern| {
        let mut cur = c.clone();
        for (k, rule) in rules.iter().enumerate() {
            cur = rule.apply_checked(&cur, &windows[k + 1])?;
        }
        Ok(cur)
    };
    let a = psi_inverse(&ctx.field, &ctx.monoid, dim, &support, blackbox, ctx.seed)?;
    let mut r = Report::new("psi-inv", ctx);
    r.input("support", json!(ctx.names(&support)))
        .input("dim", dim)
        .input("apply", json!(apply.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()));
    r.stat("matrix", matrix_json(&a)).stat("memory", json!(ctx.names(&a.support())));
    r.text = a.to_string();
    Ok(r)
}

fn cmd_lca_apply(ctx: &Context, matrix: &Path, pattern: &Path, window: Option<&str>) -> Result<Report> {
    let a = ctx.matrix(matrix)?;
    let c = parse::parse_vector_pattern(&ctx.field, &ctx.monoid, a.dim(), &parse::read_file(pattern)?)?;
    let w = ctx.window(window)?;
    let out = psi(&a).apply_checked(&c, &w)?;
    let mut r = Report::new("lca-apply", ctx);
    r.input("matrix", matrix.display().to_string())
        .input("pattern", pattern.display().to_string())
        .input("window", json!(ctx.names(&w)));
    r.stat("output", vector_pattern_json(&ctx.field, &out));
    r.text = parse::format_vector_pattern(&ctx.field, &out);
    Ok(r)
}

fn cmd_antihom(ctx: &Context, pa: Option<&Path>, pb: Option<&Path>, dim: usize, trials: usize) -> Result<Report> {
    let (f, m) = (&ctx.field, &ctx.monoid);
    let sampler = Sampler::new(f, m);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let a = match pa {
        Some(p) => ctx.matrix(p)?,
        None => sampler.matrix(&mut rng, dim, 3),
    };
    let b = match pb {
        Some(p) => ctx.matrix(p)?,
        None => sampler.matrix(&mut rng, a.dim(), 3),
    };
    let d = a.dim();
    let ab = a.mul(&b)?;
    let (ra, rb) = (psi(&a), psi(&b));
    let composed = rb.compose(&ra)?;
    let mut r = Report::new("lca-check-antihom", ctx);
    r.input("a", inline(&a)).input("b", inline(&b)).input("trials", trials);
    r.line(format!("A = {}", inline(&a)))
        .line(format!("B = {}", inline(&b)))
        .line(format!("AB = {}", inline(&ab)));

    let mut failure: Option<Value> = None;
    for t in 0..trials {
        let mut w: Vec<Elem> = (0..3).map(|_| sampler.element(&mut rng)).collect();
        w.sort();
        w.dedup();
        let mid = required_domain(m, &w, &b.support())?;
        let dom = required_domain(m, &mid, &a.support())?;
        let c = sampler.vector_pattern(&mut rng, d, &dom);
        let seq = rb.apply_checked(&ra.apply_checked(&c, &mid)?, &w)?;
        let once = composed.apply_checked(&c, &w)?;
        if seq != once {
            failure = Some(json!({
                "trial": t,
                "pattern": vector_pattern_json(f, &c),
                "sequential": vector_pattern_json(f, &seq),
                "composed": vector_pattern_json(f, &once),
            }));
            break;
        }
    }
    let support = m.product_set(&a.support(), &b.support())?;
    let one = [m.identity()];
    let mid = b.support();
    let recovered = psi_inverse(
        f,
        m,
        d,
        &support,
        |c| rb.apply(&ra.apply(c, &mid)?, &one),
        ctx.seed,
    )?;
    if failure.is_none() && recovered != ab {
        failure = Some(json!({ "recovered": matrix_json(&recovered), "expected": matrix_json(&ab) }));
    }
    r.stat("trials", trials).stat("recovered", matrix_json(&recovered));
    r.line(format!("recovered from psi(B) o psi(A): {}", inline(&recovered)));
    match failure {
        None => {
            r.outcome = Outcome::Holds;
            r.line("psi(B) o psi(A) = psi(AB): yes");
        }
        Some(w) => {
            r.outcome = Outcome::Fails;
            r.line("psi(B) o psi(A) = psi(AB): no");
            r.line(serde_json::to_string(&w).expect("json"));
            r.witness = Some(w);
        }
    }
    Ok(r)
}

fn cmd_certify(ctx: &Context, pa: &Path, pb: &Path) -> Result<Report> {
    let (a, b) = (ctx.matrix(pa)?, ctx.matrix(pb)?);
    let cert = certify_two_sided(&a, &b)?;
    let mut r = Report::new("finiteness certify", ctx);
    r.input("matrixA", pa.display().to_string())
        .input("matrixB", pb.display().to_string());
    r.stat("ba_identity", cert.direct)
        .stat("full_rank", cert.full_rank)
        .stat("rank", cert.rank)
        .stat("size", cert.size);
    r.line("AB = I: yes")
        .line(format!("BA = I: {}", if cert.direct { "yes" } else { "no" }))
        .line(format!("rank of flatten(A): {} of {}", cert.rank, cert.size));
    if cert.certified() {
        r.outcome = Outcome::Holds;
    } else {
        r.outcome = Outcome::Fails;
        r.witness = Some(json!({ "ba": matrix_json(&b.mul(&a)?) }));
    }
    Ok(r)
}

fn cmd_bicyclic_witness(ctx: &Context) -> Result<Report> {
    let (a, b) = bicyclic_witness(&ctx.field)?;
    let (ab, ba) = (a.mul(&b)?, b.mul(&a)?);
    let mut r = Report::new("finiteness bicyclic-witness", ctx);
    r.inputs.insert("monoid".into(), json!("bicyclic"));
    r.stat("ab_identity", ab.is_identity()).stat("ba_identity", ba.is_identity());
    r.witness = Some(json!({
        "A": matrix_json(&a),
        "B": matrix_json(&b),
        "AB": matrix_json(&ab),
        "BA": matrix_json(&ba),
    }));
    r.line(format!("field: {}", ctx.field))
        .line(format!("A = {}", inline(&a)))
        .line(format!("B = {}", inline(&b)))
        .line(format!("AB = {} = I", inline(&ab)))
        .line(format!("BA = {} != I", inline(&ba)));
    Ok(r)
}

fn sentence_inputs(r: &mut Report, ctx: &Context, support: &[Elem], dim: usize) {
    r.input("support", json!(ctx.names(support))).input("dim", dim);
}

fn cmd_sentence_emit(ctx: &Context, args: &SentenceArgs) -> Result<Report> {
    let support = ctx.elems(&args.support)?;
    let (_, sys) = build_sentence(&ctx.monoid, &support, args.dim)?;
    let sys = sys.with_field(&ctx.field);
    let mut r = Report::new("sentence emit", ctx);
    sentence_inputs(&mut r, ctx, &support, args.dim);
    r.text = sys.to_text();
    r.raw_json = Some(sys.to_json());
    Ok(r)
}

fn cmd_sentence_solve(ctx: &Context, args: &SentenceArgs) -> Result<Report> {
    let support = ctx.elems(&args.support)?;
    let (spec, sys) = build_sentence(&ctx.monoid, &support, args.dim)?;
    let budget = ctx.budget.unwrap_or(DEFAULT_SENTENCE_BUDGET);
    let report = find_model(&spec, &sys, &ctx.field, budget, ctx.workers)?;
    let mut r = Report::new("sentence solve", ctx);
    sentence_inputs(&mut r, ctx, &support, args.dim);
    r.stat("variables", sys.variables.len())
        .stat("equations", sys.equations.len())
        .stat("space", report.space)
        .stat("scanned", report.scanned)
        .stat("identity_missing", sys.meta.identity_missing);
    r.line(format!("variables: {}", sys.variables.len()))
        .line(format!("space: {}", report.space));
    match report.model {
        None => {
            r.outcome = Outcome::Unsat;
            r.line("UNSAT");
            if sys.meta.identity_missing {
                r.line("note: 1 is not in S^2, so the diagonal equations read 0 = 1");
            }
        }
        Some(model) => {
            r.outcome = Outcome::Sat;
            let values: Vec<String> = model.assignment.iter().map(|v| ctx.field.format(v)).collect();
            let assignment: Map<String, Value> = sys
                .variables
                .iter()
                .zip(&values)
                .map(|(k, v)| (k.clone(), json!(v)))
                .collect();
            r.witness = Some(json!({
                "assignment": Value::Object(assignment),
                "A": matrix_json(&model.a),
                "B": matrix_json(&model.b),
            }));
            r.line("SAT");
            for (name, v) in sys.variables.iter().zip(&values) {
                r.line(format!("{name} = {v}"));
            }
            r.line(format!("A = {}", inline(&model.a)))
                .line(format!("B = {}", inline(&model.b)))
                .line(format!("BA = {}", inline(&model.b.mul(&model.a)?)));
        }
    }
    Ok(r)
}

fn cmd_sentence_check(ctx: &Context, args: &SentenceArgs, assignment: &str) -> Result<Report> {
    let support = ctx.elems(&args.support)?;
    let (_, sys) = build_sentence(&ctx.monoid, &support, args.dim)?;
    let values = assignment
        .split(',')
        .map(|s| ctx.field.parse_scalar(s))
        .collect::<Result<Vec<_>>>()?;
    let check = check_model(&sys, &ctx.field, &values)?;
    let mut r = Report::new("sentence check", ctx);
    sentence_inputs(&mut r, ctx, &support, args.dim);
    r.input("assignment", assignment);
    r.stat("equalities_hold", check.failed_equation.is_none())
        .stat("negation_holds", check.negation_holds);
    match check.failed_equation {
        Some(k) => {
            let eq = &sys.equations[k];
            let label = format!("P({},{},{})", eq.label.0, eq.label.1, eq.label.2);
            r.line(format!("fails: {label} = {} does not hold", eq.rhs));
            r.witness = Some(json!({ "failed_equation": label }));
        }
        None if !check.negation_holds => {
            r.line("fails: P(Y,X) holds as well, so BA = I");
            r.witness = Some(json!({ "failed_equation": "not P(Y,X)" }));
        }
        None => {
            r.line("satisfied");
        }
    }
    r.outcome = if check.satisfied() { Outcome::Holds } else { Outcome::Fails };
    Ok(r)
}

fn cmd_enumerate(ctx: &Context, order: usize) -> Result<Report> {
    let monoids = enumerate_monoids(order)?;
    let mut r = Report::new("enumerate-monoids", ctx);
    r.inputs.remove("field");
    r.inputs.remove("monoid");
    r.input("order", order);
    let mut tables = Vec::new();
    for (k, m) in monoids.iter().enumerate() {
        let table = parse::format_monoid_table(m)?;
        if k > 0 {
            r.text.push('\n');
        }
        r.line(format!("# monoid {}", k + 1));
        r.text.push_str(&table);
        tables.push(table);
    }
    r.stat("count", monoids.len()).stat("tables", json!(tables));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["monalg"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mul_bicyclic() {
        assert_eq!(run_str(&["mul", "--monoid", "bicyclic", "p", "q"]), (0, "1\n".into(), String::new()));
        assert_eq!(run_str(&["mul", "--monoid", "bicyclic", "q", "p"]).1, "q^1p^1\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["mul", "--monoid", "cyclic:0", "e", "e"]).0, 2);
        assert_eq!(run_str(&["mul", "--bogus", "p", "q"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn sentence_solve_exit_codes() {
        let (code, out, _) = run_str(&["sentence", "solve", "--support", "p,q", "--dim", "1", "--field", "2"]);
        assert_eq!(code, 1);
        assert!(out.contains("SAT\n") && out.contains("A = [p^1]\nB = [q^1]\n"), "{out}");
        let (code, out, _) = run_str(&["sentence", "solve", "--monoid", "cyclic:2", "--support", "e,g"]);
        assert_eq!(code, 0);
        assert!(out.contains("UNSAT"));
    }
}
