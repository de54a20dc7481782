use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use relsimp::relativized::align;
use relsimp::synthesis::{compact, minimize_rules};
use relsimp::verify::QbfReduction;
use relsimp::*;

const SPECTRUM: &str = "\
Spectrum of --remove (A) and --relative-to (B):
  A      B           notion
  none   omitted     strong equivalence
  none   B           strong equivalence relative to B
  A      omitted     strong simplification (B defaults to all atoms)
  A      B           B-relativized A-simplification
  A      U \\ A       strong persistence forgetting
  A      S in U \\ A  relativized strong persistence
  A      \"\"          faithful abstraction (answer sets only)

Atom sets are comma-separated names, e.g. --remove b,c. An empty string
denotes the empty set.

Exit codes: 0 positive verdict or success, 1 negative verdict,
2 usage or parse error, 3 internal verification failure.";

#[derive(Parser)]
#[command(name = "relsimp", version, about = "Relativized simplification and forgetting for extended logic programs", after_help = SPECTRUM)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report (or program) here instead of standard output. In
    /// batch mode this names a directory for program outputs.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct CtxArgs {
    /// Atoms to remove (A). Defaults to none.
    #[arg(long, value_name = "ATOMS")]
    remove: Option<String>,
    /// Context atoms (B). Defaults to all atoms; "" is the empty set.
    #[arg(long = "relative-to", value_name = "ATOMS")]
    relative_to: Option<String>,
}

#[derive(Args, Clone)]
struct BoundsArgs {
    /// Maximum rules per enumerated context program.
    #[arg(long, default_value_t = 2)]
    max_rules: usize,
    /// Maximum body literals per context rule.
    #[arg(long = "max-body", default_value_t = 2)]
    max_body: usize,
    /// Leave out the proof-shaped witness contexts.
    #[arg(long)]
    no_proof_witnesses: bool,
    /// Refuse to enumerate more context programs than this.
    #[arg(long, default_value_t = 2_000_000)]
    max_contexts: usize,
}

impl BoundsArgs {
    fn bounds(&self) -> ContextBounds {
        ContextBounds {
            max_rules: self.max_rules,
            max_body_literals: self.max_body,
            include_proof_witness_family: !self.no_proof_witnesses,
            max_contexts: self.max_contexts,
            ..ContextBounds::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the answer sets of each program.
    AnswerSets {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// List SE-models, relativized to B when --relative-to is given.
    SeModels {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long = "relative-to", value_name = "ATOMS")]
        relative_to: Option<String>,
    },
    /// List the A-B-SE-models.
    AbSeModels {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Decide B-relativized A-simplifiability.
    #[command(after_help = SPECTRUM)]
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Compute a B-relativized A-simplification.
    Simplify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        ctx: CtxArgs,
        /// Drop rules whose removal keeps the SE-models.
        #[arg(long)]
        simplify_output: bool,
    },
    /// Check that CANDIDATE is a B-relativized A-simplification of ORIGINAL.
    Verify {
        original: PathBuf,
        candidate: PathBuf,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Forget A relative to S (relativized strong persistence). S defaults
    /// to the atoms not in A.
    Forget {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long)]
        simplify_output: bool,
        /// Also check the result against enumerated contexts.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Compare two programs: relativized strong equivalence, or with
    /// --remove the simplification check.
    #[command(after_help = SPECTRUM)]
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Build the program pair of the QBF hardness reduction.
    QbfGen { path: PathBuf },
}

/// A failure carrying its exit code and tag.
struct Failure {
    code: u8,
    tag: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Input => 2,
            ErrorKind::Negative => 1,
            ErrorKind::Internal => 3,
        };
        Failure {
            code,
            tag: e.tag(),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        tag: "io",
        message: format!("{}: {e}", path.display()),
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// What one analysis produced.
struct Report {
    text: String,
    json: Value,
    positive: bool,
    verdict: String,
    /// Program text for commands that produce one.
    program: Option<String>,
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load(path: &Path) -> Outcome<Program> {
    let text = read(path)?;
    parse_program(&text).map_err(|e| Failure {
        message: format!("{}:{e}", path.display()),
        ..Failure::from(e)
    })
}

fn atom_names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn atoms(p: &Program, list: &str) -> Outcome<AtomSet> {
    let set = p.symbols().set_of(atom_names(list))?;
    if !set.is_subset(p.universe()) {
        return Err(Error::NotSubset {
            what: format!("atom set {}", p.symbols().show(set)),
            of: "the program's universe".into(),
        }
        .into());
    }
    Ok(set)
}

fn context(p: &Program, args: &CtxArgs) -> Outcome<RelCtx> {
    let a = match &args.remove {
        Some(list) => atoms(p, list)?,
        None => AtomSet::EMPTY,
    };
    let b = match &args.relative_to {
        Some(list) => Some(atoms(p, list)?),
        None => None,
    };
    Ok(RelCtx::for_program(p, a, b)?)
}

fn names(p: &Program, s: AtomSet) -> Vec<String> {
    p.symbols().sorted_names(s)
}

fn ctx_json(p: &Program, ctx: &RelCtx) -> Value {
    json!({ "remove": names(p, ctx.remove()), "relativeTo": names(p, ctx.context()) })
}

fn answer_sets_report(p: &Program) -> Report {
    let sets = answer_sets(p);
    let text = sets.iter().map(|&y| p.symbols().show(y) + "\n").collect();
    let n = sets.len();
    Report {
        text,
        json: json!({ "answerSets": sets.iter().map(|&y| names(p, y)).collect::<Vec<_>>() }),
        positive: true,
        verdict: format!("{n} answer set{}", if n == 1 { "" } else { "s" }),
        program: None,
    }
}

fn model_set_report(set: &SeModelSet) -> Report {
    Report {
        text: set.render(),
        json: serde_json::to_value(set.to_json()).expect("serializable"),
        positive: true,
        verdict: format!("{} pairs", set.len()),
        program: None,
    }
}

fn check_report(p: &Program, ctx: &RelCtx) -> Outcome<Report> {
    let r = is_simplifiable(p, ctx)?;
    let mut json = serde_json::to_value(r.to_json()).expect("serializable");
    json["context"] = ctx_json(p, ctx);
    Ok(Report {
        text: r.render(),
        json,
        positive: r.simplifiable,
        verdict: if r.simplifiable { "simplifiable".into() } else { "not simplifiable".into() },
        program: None,
    })
}

fn finish_program(q: Program, tidy: bool) -> Outcome<Program> {
    let q = if tidy { minimize_rules(&q)? } else { q };
    Ok(compact(&q)?)
}

fn program_report(p: &Program, ctx: &RelCtx, header: String, q: &Program, extra: Value) -> Report {
    let body = format_program(q);
    let mut json = json!({ "program": body, "context": ctx_json(p, ctx) });
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    Report {
        text: format!("{header}{body}"),
        json,
        positive: true,
        verdict: format!("{} rule{}", q.len(), if q.len() == 1 { "" } else { "s" }),
        program: Some(format!("{header}{body}")),
    }
}

fn simplify_report(p: &Program, ctx: &RelCtx, tidy: bool) -> Outcome<Report> {
    let s = simplify_detailed(p, ctx)?;
    let q = finish_program(s.program.clone(), tidy)?;
    let extra = json!({ "projected": names(p, s.projected), "forgotten": names(p, s.forgotten) });
    Ok(program_report(p, ctx, s.header(), &q, extra))
}

fn verification_report(rep: &VerificationReport) -> Report {
    Report {
        text: rep.render(),
        json: serde_json::to_value(rep.to_json()).expect("serializable"),
        positive: rep.passed(),
        verdict: if rep.passed() { "pass".into() } else { "fail".into() },
        program: None,
    }
}

fn forget_report(p: &Program, args: &CtxArgs, tidy: bool, verify: Option<&ContextBounds>) -> Outcome<Report> {
    let a = match &args.remove {
        Some(list) => atoms(p, list)?,
        None => AtomSet::EMPTY,
    };
    let s = match &args.relative_to {
        Some(list) => atoms(p, list)?,
        None => p.universe() - a,
    };
    let ctx = RelCtx::new(p.universe(), a, s)?;
    let q = forget_rsp(p, a, s)?;
    let q = finish_program(q, tidy)?;
    let header = format!(
        "% relsimp forget: A = {}, S = {}\n",
        p.symbols().show(a),
        p.symbols().show(s)
    );
    let mut report = program_report(p, &ctx, header, &q, json!({}));
    if let Some(bounds) = verify {
        let rep = check_forgetting(p, &q, a, s, bounds)?;
        report.text += &format!("% check:\n{}", prefix_lines(&rep.render(), "%   "));
        report.json["verification"] = serde_json::to_value(rep.to_json()).expect("serializable");
        report.positive = rep.passed();
        if !rep.passed() {
            report.verdict += ", check failed";
        }
    }
    Ok(report)
}

fn prefix_lines(text: &str, prefix: &str) -> String {
    text.lines().map(|l| format!("{prefix}{l}\n")).collect()
}

fn equiv_report(first: &Path, second: &Path, args: &CtxArgs, bounds: &BoundsArgs) -> Outcome<Report> {
    let p1 = load(first)?;
    let p2 = load(second)?;
    if args.remove.is_some() {
        let ctx = context(&p1, args)?;
        return Ok(verification_report(&check_simplification(&p1, &p2, &ctx, &bounds.bounds())?));
    }
    let (p1, p2) = align(&p1, &p2)?;
    let b = match &args.relative_to {
        Some(list) => atoms(&p1, list)?,
        None => p1.universe(),
    };
    let same = check_relativized_equivalence(&p1, &p2, b)?;
    let verdict = if same { "equivalent" } else { "not equivalent" };
    Ok(Report {
        text: format!("relative to {}: {verdict}\n", p1.symbols().show(b)),
        json: json!({ "equivalent": same, "relativeTo": names(&p1, b) }),
        positive: same,
        verdict: verdict.into(),
        program: None,
    })
}

fn qbf_report(path: &Path, out: Option<&Path>) -> Outcome<Report> {
    let phi = parse_qbf(&read(path)?)?;
    let QbfReduction { p, q, a } = qbf_reduce(&phi)?;
    let value = qbf_eval(&phi);
    let a_names = names(&p, a).join(",");
    let (p_text, q_text) = (format_program(&p), format_program(&q));
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for (name, body) in [("p.lp", &p_text), ("q.lp", &q_text), ("a.txt", &format!("{a_names}\n"))] {
            let file = dir.join(name);
            fs::write(&file, body).map_err(|e| io_failure(&file, e))?;
        }
    }
    let text = format!("% qbf value: {value}\n% remove: {a_names}\n% P\n{p_text}% Q\n{q_text}");
    Ok(Report {
        text,
        json: json!({ "value": value, "remove": names(&p, a), "p": p_text, "q": q_text }),
        positive: true,
        verdict: format!("qbf {value}"),
        program: None,
    })
}

/// Directories expand to their `.lp` files in name order.
fn expand(paths: &[PathBuf]) -> Outcome<Vec<PathBuf>> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(path)
                .map_err(|e| io_failure(path, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "lp"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(path.clone());
        }
    }
    Ok(out)
}

fn per_file(command: &Command, path: &Path) -> Outcome<Report> {
    let p = load(path)?;
    match command {
        Command::AnswerSets { .. } => Ok(answer_sets_report(&p)),
        Command::SeModels { relative_to, .. } => Ok(model_set_report(&match relative_to {
            Some(list) => rel_se_models(&p, atoms(&p, list)?),
            None => se_models(&p),
        })),
        Command::AbSeModels { ctx, .. } => Ok(model_set_report(&ab_se_models(&p, &context(&p, ctx)?)?)),
        Command::Check { ctx, .. } => check_report(&p, &context(&p, ctx)?),
        Command::Simplify { ctx, simplify_output, .. } => simplify_report(&p, &context(&p, ctx)?, *simplify_output),
        Command::Forget { ctx, simplify_output, verify, bounds, .. } => {
            let b = bounds.bounds();
            forget_report(&p, ctx, *simplify_output, verify.then_some(&b))
        }
        _ => unreachable!("single-program commands only"),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

fn to_json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn fail_line(f: &Failure) -> String {
    format!("error[{}]: {}", f.tag, f.message)
}

fn single(cli: &Cli, report: Outcome<Report>) -> Outcome<u8> {
    let report = report?;
    let code = if report.positive { 0 } else { 1 };
    let body = if cli.json { to_json_text(&report.json) } else { report.text };
    emit(cli.output.as_deref(), &body)?;
    Ok(code)
}

fn batch(cli: &Cli, files: &[PathBuf]) -> Outcome<u8> {
    let writes_programs = matches!(cli.command, Command::Simplify { .. } | Command::Forget { .. });
    if writes_programs {
        if let Some(dir) = &cli.output {
            fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        }
    }
    let mut worst = 0u8;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for file in files {
        let shown = file.display().to_string();
        let (code, verdict, report) = match per_file(&cli.command, file) {
            Ok(r) => (if r.positive { 0 } else { 1 }, r.verdict.clone(), Some(r)),
            Err(f) => (f.code, fail_line(&f), None),
        };
        worst = worst.max(code);
        if let (true, Some(dir), Some(prog)) = (writes_programs, &cli.output, report.as_ref().and_then(|r| r.program.as_ref())) {
            let target = dir.join(file.file_name().expect("file path"));
            fs::write(&target, prog).map_err(|e| io_failure(&target, e))?;
        }
        text += &format!("== {shown}\n");
        match &report {
            Some(r) if !(writes_programs && cli.output.is_some()) => text += &r.text,
            Some(_) => {}
            None => text += &format!("{verdict}\n"),
        }
        entries.push(json!({
            "file": shown,
            "exit": code,
            "verdict": verdict,
            "report": report.map(|r| r.json).unwrap_or(Value::Null),
        }));
        rows.push((shown, verdict, code));
    }
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(4).max(4);
    text += &format!("\n{:<width$}  exit  verdict\n", "file");
    for (file, verdict, code) in &rows {
        text += &format!("{file:<width$}  {code:<4}  {verdict}\n");
    }
    let body = if cli.json {
        to_json_text(&json!({ "files": entries, "exit": worst }))
    } else {
        text
    };
    if writes_programs && cli.output.is_some() {
        emit(None, &body)?;
    } else {
        emit(cli.output.as_deref(), &body)?;
    }
    Ok(worst)
}

fn run(cli: &Cli) -> Outcome<u8> {
    match &cli.command {
        Command::Verify { original, candidate, ctx, bounds } => {
            let r = (|| {
                let p = load(original)?;
                let q = load(candidate)?;
                let c = context(&p, ctx)?;
                Ok(verification_report(&check_simplification(&p, &q, &c, &bounds.bounds())?))
            })();
            single(cli, r)
        }
        Command::Equiv { first, second, ctx, bounds } => single(cli, equiv_report(first, second, ctx, bounds)),
        Command::QbfGen { path } => {
            let report = qbf_report(path, cli.output.as_deref())?;
            let body = if cli.json { to_json_text(&report.json) } else { report.text };
            emit(None, &body)?;
            Ok(0)
        }
        Command::AnswerSets { paths }
        | Command::SeModels { paths, .. }
        | Command::AbSeModels { paths, .. }
        | Command::Check { paths, .. }
        | Command::Simplify { paths, .. }
        | Command::Forget { paths, .. } => {
            let files = expand(paths)?;
            if files.len() == 1 && !paths[0].is_dir() {
                single(cli, per_file(&cli.command, &files[0]))
            } else if files.is_empty() {
                Err(Failure {
                    code: 2,
                    tag: "io",
                    message: "no .lp files found".into(),
                })
            } else {
                batch(cli, &files)
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RELSIMP_LOG", "warn"))
        .format_timestamp(None)
        .format_target(false)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            eprint!("error[usage]: {}", msg.strip_prefix("error: ").unwrap_or(&msg));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", fail_line(&f));
            ExitCode::from(f.code)
        }
    }
}
