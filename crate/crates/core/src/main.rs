use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use argeq::adf::{adf_run, Adf};
use argeq::afn::AfnKind;
use argeq::cp::{cp_pipeline, down_admissible, up_complete};
use argeq::enhanced::{enhanced_run, EquilibriumMode};
use argeq::fixtures;
use argeq::gr::{run_to_equilibrium, run_to_stable, GRConfig, GRStatus};
use argeq::io::{
    format_value, parse_initial_values, parse_votes, render_csv, render_table, valuation_map, OutputFormat,
    RunReportDocument,
};
use argeq::models::{
    hassell_fixed_point, hassell_simulate, naive_iteration, numafn_solve, pereira_alpha, pereira_beta, period,
    social_solve, HassellParams, HassellState, NumericalNetwork,
};
use argeq::semantics::{default_oracle_cap, enumerate_extensions, Semantics};
use argeq::{Error, Framework, FrameworkFormat, Valuation};

#[derive(Parser)]
#[command(name = "argeq", version, about = "Equilibrium values of argumentation networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate to the equilibrium.
    Run(RunArgs),
    /// Iterate only until the stable index is known.
    Stable(NetArgs),
    /// Enumerate extensions by brute force.
    Oracle(OracleArgs),
    /// Contraction then expansion of the initial labelling.
    Cp(NetArgs),
    /// Repeated runs that freeze newly crisp values.
    Enhanced(EnhancedArgs),
    /// GR, CP, Pereira and naive substitution side by side.
    Compare(CompareArgs),
    /// Social vote semantics under the product semantics.
    Social(SocialArgs),
    /// Numerical network with weights, solved by damped iteration.
    Numafn(NumafnArgs),
    /// Built-in worked examples.
    Demo(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Max,
    Product,
}

impl Function {
    fn kind(self) -> AfnKind {
        match self {
            Function::Max => AfnKind::Min,
            Function::Product => AfnKind::Product,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Table => OutputFormat::Table,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "max")]
    function: Function,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long, default_value_t = 1e-6)]
    snap: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iterations: usize,
    /// Record every iteration.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl Common {
    fn config(&self) -> GRConfig {
        GRConfig {
            change_tolerance: self.tolerance,
            snap_tolerance: self.snap,
            max_iterations: self.max_iterations,
            record_trajectory: self.trace,
        }
    }
}

#[derive(Args, Clone)]
struct NetArgs {
    /// Framework file (APX or edge list).
    #[arg(long)]
    af: PathBuf,
    /// Override the format guessed from the file.
    #[arg(long)]
    af_format: Option<String>,
    /// Initial values; unlisted arguments default to 0.5.
    #[arg(long)]
    init: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    net: NetArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    net: NetArgs,
    #[arg(long, default_value = "complete")]
    semantics: String,
}

#[derive(Args)]
struct EnhancedArgs {
    #[command(flatten)]
    net: NetArgs,
    /// Use the iterative engine instead of the exact labelling pipeline.
    #[arg(long)]
    iterative: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    net: NetArgs,
    /// Steps for the Pereira and naive iterations.
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

#[derive(Args)]
struct SocialArgs {
    #[arg(long)]
    af: PathBuf,
    #[arg(long)]
    af_format: Option<String>,
    #[arg(long)]
    votes: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    damping: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct NumafnArgs {
    #[command(flatten)]
    net: NetArgs,
    /// Combination of the initial value with the attack aggregate.
    #[arg(long, value_enum, default_value = "product")]
    h: HKind,
    /// Lines `src tgt weight`.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    damping: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum HKind {
    Product,
    Min,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(value_enum)]
    name: Demo,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Fig6,
    Fig9,
    Adf,
    Hassell,
    Npq,
    Selfloop,
}

/// Everything a command prints, in all three formats.
struct Output {
    json: Value,
    table: String,
    csv: String,
    converged: bool,
}

impl Output {
    fn doc(doc: RunReportDocument) -> Self {
        let converged = doc.status == GRStatus::Converged;
        Output {
            json: serde_json::to_value(&doc).expect("report serializes"),
            table: doc.to_table(),
            csv: doc.to_csv(),
            converged,
        }
    }

    fn docs(cases: Vec<(String, RunReportDocument)>) -> Self {
        let mut table = String::new();
        let mut csv = String::new();
        let mut json = Vec::new();
        let mut converged = true;
        for (i, (name, doc)) in cases.into_iter().enumerate() {
            converged &= doc.status == GRStatus::Converged;
            if i > 0 {
                table.push('\n');
            }
            table.push_str(&format!("[{name}]\n{}", doc.to_table()));
            for (j, line) in doc.to_csv().lines().enumerate() {
                if j == 0 && i == 0 {
                    csv.push_str(&format!("case,{line}\n"));
                } else if j > 0 {
                    csv.push_str(&format!("{name},{line}\n"));
                }
            }
            json.push(json!({ "case": name, "report": doc }));
        }
        Output {
            json: Value::Array(json),
            table,
            csv,
            converged,
        }
    }

    fn tabular(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            table: render_table(headers, &rows),
            csv: render_csv(headers, &rows),
            converged: true,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value serializes");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
            Format::Csv => self.csv.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_framework(path: &Path, format: Option<&str>) -> Result<Framework, String> {
    let text = read(path)?;
    let format = match format {
        Some(f) => f.parse::<FrameworkFormat>().map_err(|e| e.to_string())?,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("apx") => FrameworkFormat::Apx,
            Some("tgf" | "el" | "edges") => FrameworkFormat::EdgeList,
            _ if text.contains("arg(") => FrameworkFormat::Apx,
            _ => FrameworkFormat::EdgeList,
        },
    };
    Framework::parse(&text, format).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_net(args: &NetArgs) -> Result<(Framework, Valuation), String> {
    let fw = load_framework(&args.af, args.af_format.as_deref())?;
    let text = match &args.init {
        Some(p) => read(p)?,
        None => String::new(),
    };
    let v0 = parse_initial_values(&text, &fw).map_err(|e| match &args.init {
        Some(p) => format!("{}: {e}", p.display()),
        None => e.to_string(),
    })?;
    Ok((fw, v0))
}

/// Input problems exit with 1, failed convergence with 2.
enum Failure {
    Input(String),
    NotConverged(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConverged { .. } | Error::StabilityBoundExceeded(_) => Failure::NotConverged(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Run(a) => a.net.common.format,
        Command::Stable(a) | Command::Cp(a) => a.common.format,
        Command::Oracle(a) => a.net.common.format,
        Command::Enhanced(a) => a.net.common.format,
        Command::Compare(a) => a.net.common.format,
        Command::Social(a) => a.common.format,
        Command::Numafn(a) => a.net.common.format,
        Command::Demo(a) => a.common.format,
    };
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{}", out.render(format));
            if out.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::NotConverged(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Run(a) => {
            let (fw, v0) = load_net(&a.net)?;
            let kind = a.net.common.function.kind();
            let cfg = a.net.common.config();
            let r = run_to_equilibrium(&fw, &v0, &kind, &cfg)?;
            Ok(Output::doc(RunReportDocument::from_gr(&fw, &v0, &r, &kind, &cfg, "gr")))
        }
        Command::Stable(a) => {
            let (fw, v0) = load_net(&a)?;
            let (k, settled) = run_to_stable(&fw, &v0, &a.common.function.kind())?;
            Ok(Output::doc(RunReportDocument::from_stable(&fw, &v0, k, &settled)))
        }
        Command::Oracle(a) => oracle(a),
        Command::Cp(a) => {
            let (fw, v0) = load_net(&a)?;
            let lab = v0.to_labelling();
            let down = down_admissible(&fw, &lab);
            let up = up_complete(&fw, &down.final_labelling)?;
            debug_assert_eq!(up.final_labelling, cp_pipeline(&fw, &lab));
            let mut out = Output::doc(RunReportDocument::from_labelling(&fw, &v0, &up.final_labelling, "cp"));
            if a.common.trace {
                let steps = |t: &argeq::cp::SequenceTrace| -> Vec<Value> {
                    t.steps
                        .iter()
                        .map(|s| json!({ "argument": fw.name(s.argument).as_str(), "from": s.from, "to": s.to }))
                        .collect()
                };
                out.json["contraction"] = Value::Array(steps(&down));
                out.json["expansion"] = Value::Array(steps(&up));
            }
            Ok(out)
        }
        Command::Enhanced(a) => {
            let (fw, v0) = load_net(&a.net)?;
            let mode = if a.iterative {
                EquilibriumMode::Iterative
            } else {
                EquilibriumMode::Oracle
            };
            let r = enhanced_run(&fw, &v0, &a.net.common.config(), mode)?;
            Ok(Output::doc(RunReportDocument::from_enhanced(&fw, &v0, &r)))
        }
        Command::Compare(a) => compare(a),
        Command::Social(a) => {
            let fw = load_framework(&a.af, a.af_format.as_deref())?;
            let sf = parse_votes(&read(&a.votes)?, &fw, a.epsilon)
                .map_err(|e| format!("{}: {e}", a.votes.display()))?;
            let m = social_solve(&sf, a.damping, &a.common.config())?;
            let support = Valuation::new(&fw, sf.argument_support())?;
            let rows = fw
                .arguments()
                .iter()
                .enumerate()
                .map(|(x, name)| vec![name.to_string(), format_value(support.get(x)), format_value(m.get(x))])
                .collect();
            let json = json!({
                "epsilon": a.epsilon,
                "support": valuation_map(&fw, &support),
                "model": valuation_map(&fw, &m),
            });
            Ok(Output::tabular(json, &["argument", "support", "model"], rows))
        }
        Command::Numafn(a) => numafn(a),
        Command::Demo(a) => demo(a),
    }
}

fn oracle(a: OracleArgs) -> Result<Output, Failure> {
    let fw = load_framework(&a.net.af, a.net.af_format.as_deref())?;
    let semantics: Semantics = a.semantics.parse()?;
    let exts = enumerate_extensions(&fw, semantics, default_oracle_cap())?;
    let named: Vec<Vec<&str>> = exts.iter().map(|e| fw.names(e)).collect();
    let rows = named.iter().map(|e| vec![format!("{{{}}}", e.join(", "))]).collect();
    let json = json!({ "semantics": semantics, "extensions": named });
    Ok(Output::tabular(json, &["extension"], rows))
}

fn compare(a: CompareArgs) -> Result<Output, Failure> {
    let (fw, v0) = load_net(&a.net)?;
    let cfg = a.net.common.config();
    let kind = a.net.common.function.kind();
    let gr = run_to_equilibrium(&fw, &v0, &kind, &cfg)?;
    let cp = cp_pipeline(&fw, &v0.to_labelling()).to_valuation();
    let alpha = pereira_alpha(&fw, &v0, a.steps);
    let alpha_last = alpha.last().expect("non-empty");
    let beta = pereira_beta(&fw, &v0).ok();
    let naive = naive_iteration(&fw, &kind, &v0, a.steps);
    let naive_last = naive.last().expect("non-empty");
    let naive_period = period(&naive, 8, 1e-12);

    let mut headers = vec!["argument", "V0", "gr", "cp", "pereira_alpha"];
    if beta.is_some() {
        headers.push("pereira_beta");
    }
    headers.push("naive");
    let rows = (0..fw.len())
        .map(|x| {
            let mut row = vec![
                fw.name(x).to_string(),
                format_value(v0.get(x)),
                format_value(gr.equilibrium.get(x)),
                format_value(cp.get(x)),
                format_value(alpha_last.get(x)),
            ];
            if let Some(b) = &beta {
                row.push(format_value(b.get(x)));
            }
            row.push(format_value(naive_last.get(x)));
            row
        })
        .collect();
    let json = json!({
        "initial": valuation_map(&fw, &v0),
        "gr": RunReportDocument::from_gr(&fw, &v0, &gr, &kind, &cfg, "gr"),
        "cp": valuation_map(&fw, &cp),
        "pereira_alpha": valuation_map(&fw, alpha_last),
        "pereira_beta": beta.as_ref().map(|b| valuation_map(&fw, b)),
        "naive": valuation_map(&fw, naive_last),
        "naive_period": naive_period,
        "steps": a.steps,
    });
    let mut out = Output::tabular(json, &headers, rows);
    out.converged = gr.converged();
    Ok(out)
}

fn numafn(a: NumafnArgs) -> Result<Output, Failure> {
    let (fw, v0) = load_net(&a.net)?;
    let h = match a.h {
        HKind::Product => AfnKind::Product,
        HKind::Min => AfnKind::Min,
    };
    let mut net = NumericalNetwork::new(fw.clone(), v0.clone(), a.net.common.function.kind(), h)?;
    if let Some(path) = &a.weights {
        for (i, raw) in read(path)?.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [s, t, w] = parts.as_slice() else {
                return Err(format!("{}:{}: expected `src tgt weight`", path.display(), i + 1).into());
            };
            let w: f64 = w
                .parse()
                .map_err(|_| format!("{}:{}: `{w}` is not a number", path.display(), i + 1))?;
            net.set_weight(s, t, w)
                .map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?;
        }
    }
    let v = numafn_solve(&net, a.damping, &a.net.common.config())?;
    let rows = (0..fw.len())
        .map(|x| vec![fw.name(x).to_string(), format_value(v0.get(x)), format_value(v.get(x))])
        .collect();
    let json = json!({
        "initial": valuation_map(&fw, &v0),
        "equilibrium": valuation_map(&fw, &v),
        "residual": net.residual(&v),
    });
    Ok(Output::tabular(json, &["argument", "V0", "Ve"], rows))
}

fn seeded(fw: &Framework, values: &[f64]) -> Valuation {
    Valuation::new(fw, values.to_vec()).expect("demo seed is valid")
}

fn gr_cases(fw: &Framework, seeds: &[(&str, &[f64])], kind: &AfnKind, cfg: &GRConfig) -> Result<Output, Failure> {
    let mut cases = Vec::new();
    for (name, seed) in seeds {
        let v0 = seeded(fw, seed);
        let r = run_to_equilibrium(fw, &v0, kind, cfg)?;
        cases.push((name.to_string(), RunReportDocument::from_gr(fw, &v0, &r, kind, cfg, "gr")));
    }
    Ok(Output::docs(cases))
}

fn demo(a: DemoArgs) -> Result<Output, Failure> {
    let cfg = a.common.config();
    let kind = a.common.function.kind();
    match a.name {
        Demo::Fig6 => gr_cases(
            &fixtures::fig6(),
            &[
                ("case1", &[0.0, 0.0, 0.0, 1.0]),
                ("case2", &[0.0, 1.0, 1.0, 0.0]),
                ("case3", &[1.0, 0.0, 1.0, 0.0]),
            ],
            &kind,
            &cfg,
        ),
        Demo::Fig9 => {
            let left = fixtures::fig9_left();
            let right = fixtures::fig9_right();
            let mut out = gr_cases(
                &left,
                &[("L1", &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0]), ("L2", &[1.0, 0.0, 1.0, 0.0, 0.0, 0.5])],
                &kind,
                &cfg,
            )?;
            let r = gr_cases(
                &right,
                &[("R1", &[1.0, 0.0, 1.0, 1.0, 0.0, 0.0]), ("R2", &[0.0, 1.0, 0.0, 0.0, 1.0, 0.5])],
                &kind,
                &cfg,
            )?;
            if let (Value::Array(l), Value::Array(rr)) = (&mut out.json, r.json) {
                l.extend(rr);
            }
            out.table = format!("{}\n{}", out.table, r.table);
            out.csv.push_str(r.csv.split_once('\n').map_or("", |(_, rest)| rest));
            out.converged &= r.converged;
            Ok(out)
        }
        Demo::Adf => {
            let adf = Adf::example();
            let fw = adf.framework();
            let mut cases = Vec::new();
            for (name, seed) in [
                ("m1", [1.0, 1.0, 0.5, 0.5]),
                ("m2", [1.0, 1.0, 1.0, 1.0]),
                ("m3", [0.0, 0.0, 0.0, 0.0]),
            ] {
                let v0 = seeded(fw, &seed);
                let r = adf_run(&adf, &v0, &cfg)?;
                let mut doc = RunReportDocument::from_gr(fw, &v0, &r, &AfnKind::Min, &cfg, "adf");
                if let Some(c) = doc.config.as_mut() {
                    c.function = "adf".into();
                }
                cases.push((name.to_string(), doc));
            }
            Ok(Output::docs(cases))
        }
        Demo::Hassell => {
            let params = HassellParams::new(2.0, 3.0, 2.0)?;
            let fp = hassell_fixed_point(&params)?;
            let runs = [
                ("from_half", HassellState::new(0.5, 0.5, 0.5), 3),
                ("host_only", HassellState::new(1.0, 0.0, 0.0), 10),
                ("fixed_point", fp, 3),
            ];
            let mut rows = Vec::new();
            let mut json_runs = serde_json::Map::new();
            for (name, s0, steps) in runs {
                let t = hassell_simulate(&params, s0, steps);
                for (i, s) in t.iter().enumerate() {
                    rows.push(vec![
                        name.to_string(),
                        i.to_string(),
                        format_value(s.n),
                        format_value(s.p),
                        format_value(s.q),
                    ]);
                }
                json_runs.insert(name.into(), serde_json::to_value(&t).expect("states serialize"));
            }
            let json = json!({ "params": params, "fixed_point": fp, "runs": json_runs });
            Ok(Output::tabular(json, &["run", "step", "N", "P", "Q"], rows))
        }
        Demo::Npq => {
            let fw = fixtures::npq();
            let v0 = seeded(&fw, &[1.0, 0.0, 0.5]);
            let naive = naive_iteration(&fw, &AfnKind::Min, &v0, 6);
            let gr = run_to_equilibrium(&fw, &v0, &AfnKind::Min, &cfg)?;
            let mut rows: Vec<Vec<String>> = naive
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let mut row = vec!["naive".to_string(), i.to_string()];
                    row.extend(v.values().iter().map(|&x| format_value(x)));
                    row
                })
                .collect();
            let mut row = vec!["gr".to_string(), gr.iterations_run.to_string()];
            row.extend(gr.equilibrium.values().iter().map(|&x| format_value(x)));
            rows.push(row);
            let json = json!({
                "naive": naive.iter().map(|v| valuation_map(&fw, v)).collect::<Vec<_>>(),
                "naive_period": period(&naive, 4, 0.0),
                "gr": RunReportDocument::from_gr(&fw, &v0, &gr, &AfnKind::Min, &cfg, "gr"),
            });
            let mut out = Output::tabular(json, &["method", "step", "N", "P", "Q"], rows);
            out.converged = gr.converged();
            Ok(out)
        }
        Demo::Selfloop => {
            let fw = fixtures::self_loop();
            let mut cases = Vec::new();
            for (fname, k) in [("min", AfnKind::Min), ("product", AfnKind::Product)] {
                for seed in [0.0, 0.3, 1.0] {
                    let v0 = seeded(&fw, &[seed]);
                    let r = run_to_equilibrium(&fw, &v0, &k, &cfg)?;
                    cases.push((
                        format!("{fname}@{seed}"),
                        RunReportDocument::from_gr(&fw, &v0, &r, &k, &cfg, "gr"),
                    ));
                }
            }
            Ok(Output::docs(cases))
        }
    }
}
