use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use agdecode::code::{CodeFamily, CodeSpec, GammaSelector};
use agdecode::decoder::{DecodeOptions, Decoder};
use agdecode::field::FieldElement;
use agdecode::gs::{gs_list_decode, GsParams};
use agdecode::io::{format_vector, parse_points, parse_vector, CurveFile};
use agdecode::sim::{simulate, ErrorModel, ExperimentConfig};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

/// Exit status when decoding succeeds but the list is empty.
const EXIT_EMPTY_LIST: u8 = 3;

#[derive(Parser)]
#[command(
    name = "agdecode",
    version,
    about = "One-point AG codes: inspect, encode, list-decode, simulate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curve-file operations.
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Code operations.
    Code {
        #[command(subcommand)]
        command: CodeCommand,
    },
    /// Encode a message vector.
    Encode(EncodeArgs),
    /// List-decode a received vector with the majority-voting decoder.
    Decode(DecodeArgs),
    /// List-decode a received vector with Guruswami–Sudan interpolation.
    GsDecode(GsArgs),
    /// Run a seeded Monte-Carlo experiment.
    Simulate(SimArgs),
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Check a curve file and print its semigroup data.
    Validate(CurveArgs),
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Print length, dimension, Γ, distance bounds and the ν/λ table.
    Info(InfoArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Curve file (TOML).
    curve: PathBuf,
    /// Points file overriding the curve's points; one point per line.
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Selector {
    /// Γ = S ∩ [0, u].
    #[arg(long)]
    u: Option<u64>,
    /// Explicit Γ, comma separated.
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<u64>>,
    /// Improved code of designed distance δ.
    #[arg(long)]
    improved: Option<u64>,
}

impl Selector {
    fn get(&self) -> GammaSelector {
        match (self.u, &self.gamma, self.improved) {
            (Some(u), _, _) => GammaSelector::U(u),
            (_, Some(g), _) => GammaSelector::Explicit(g.clone()),
            (_, _, Some(d)) => GammaSelector::Improved(d),
            _ => unreachable!("clap enforces one selector"),
        }
    }
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[command(flatten)]
    selector: Selector,
}

#[derive(Args)]
struct InfoArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Message file (`-` for stdin).
    message: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Received-vector file (`-` for stdin).
    received: PathBuf,
    #[arg(long)]
    tau: usize,
    #[arg(long, default_value_t = DecodeOptions::new(0).max_branches)]
    max_branches: usize,
    /// Disable the earlier-termination check.
    #[arg(long)]
    no_early_term: bool,
    /// Verify the Gröbner-basis invariants at every step.
    #[arg(long)]
    checked: bool,
    /// Decode with Guruswami–Sudan instead (requires `--u`).
    #[arg(long)]
    gs: bool,
    /// Multiplicity for `--gs`.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// z-degree bound for `--gs`; defaults to `m`.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GsArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Received-vector file (`-` for stdin).
    received: PathBuf,
    #[arg(long)]
    u: u64,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Defaults to `m`.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    tau: usize,
    /// Root-search node budget.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Error weight per trial.
    #[arg(long)]
    weight: usize,
    #[arg(long)]
    tau: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `uniform_support` or `toward_nearest_codeword`.
    #[arg(long, default_value = "uniform_support")]
    model: ErrorModel,
    #[arg(long, default_value_t = DecodeOptions::new(0).max_branches)]
    max_branches: usize,
    #[arg(long)]
    no_early_term: bool,
    #[arg(long)]
    checked: bool,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_family(args: &CurveArgs) -> Result<(CurveFile, Arc<CodeFamily>)> {
    let file = CurveFile::load(&args.curve)?;
    let points = match &args.points {
        Some(p) => {
            let field = agdecode::field::Field::from_spec(&file.curve.field)?;
            Some(parse_points(&read_input(p)?, &field, file.curve.weights.len())?)
        }
        None => None,
    };
    let fam = file.family_with_points(points)?;
    Ok((file, fam))
}

fn load_code(args: &CodeArgs) -> Result<CodeSpec> {
    let (_, fam) = load_family(&args.curve)?;
    Ok(CodeSpec::new(fam, &args.selector.get())?)
}

fn list_exit(empty: bool) -> ExitCode {
    if empty {
        ExitCode::from(EXIT_EMPTY_LIST)
    } else {
        ExitCode::SUCCESS
    }
}

fn curve_validate(args: &CurveArgs) -> Result<ExitCode> {
    let (file, fam) = load_family(args)?;
    let sf = fam.standard_form();
    let sg = sf.semigroup();
    println!(
        "field GF({}) modulus {:?}",
        sf.field().order(),
        file.curve.field.modulus
    );
    println!("weights {:?} genus {}", file.curve.weights, sf.genus());
    println!("gaps {:?}", sg.gaps());
    println!("b {:?}", sf.b());
    println!("points n={}", fam.n());
    println!("vanishing pole orders {:?}", fam.eta_basis().pole_orders);
    println!("ok");
    Ok(ExitCode::SUCCESS)
}

fn code_info(args: &InfoArgs) -> Result<ExitCode> {
    let code = load_code(&args.code)?;
    let fam = code.family();
    let table = fam.nu_lambda_table();
    if args.json {
        let v = serde_json::json!({
            "n": code.n(),
            "k": code.dimension(),
            "gamma": code.gamma(),
            "gamma_indep": code.gamma_indep(),
            "d_ag": code.d_ag(),
            "goppa_bound": code.goppa_bound(),
            "genus": fam.genus(),
            "nu_lambda": table,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("n {}", code.n());
    println!("k {}", code.dimension());
    println!("genus {}", fam.genus());
    println!("gamma {:?}", code.gamma());
    println!("gamma_indep {:?}", code.gamma_indep());
    println!("d_ag {}", code.d_ag());
    println!("goppa_bound {}", code.goppa_bound());
    println!("s nu lambda");
    for (s, nu, la) in table {
        println!("{s} {nu} {la}");
    }
    Ok(ExitCode::SUCCESS)
}

fn encode(args: &EncodeArgs) -> Result<ExitCode> {
    let code = load_code(&args.code)?;
    let msg = parse_vector(&read_input(&args.message)?, code.field(), Some(code.dimension()))?;
    let (word, _) = code.encode(&msg)?;
    println!("{}", format_vector(&word));
    Ok(ExitCode::SUCCESS)
}

fn received(path: &Path, code: &CodeSpec) -> Result<Vec<FieldElement>> {
    Ok(parse_vector(&read_input(path)?, code.field(), Some(code.n()))?)
}

fn print_list<'a>(list: impl Iterator<Item = (&'a [FieldElement], &'a [FieldElement], usize)>) {
    for (msg, word, d) in list {
        println!("candidate distance {d}");
        println!("  message {}", format_vector(msg));
        println!("  codeword {}", format_vector(word));
    }
}

fn run_gs(code: &CodeSpec, r: &[FieldElement], p: GsParams, tau: usize, budget: u64, json: bool) -> Result<ExitCode> {
    let res = gs_list_decode(code, r, &p, tau, budget)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&res)?);
    } else {
        print_list(res.list.iter().map(|c| (&c.message[..], &c.codeword[..], c.distance)));
        println!(
            "list {} multiplications {} weighted_degree {} search_nodes {} partial {}",
            res.list.len(),
            res.multiplications,
            res.weighted_degree,
            res.search_nodes,
            res.partial
        );
    }
    Ok(list_exit(res.list.is_empty()))
}

fn decode(args: &DecodeArgs) -> Result<ExitCode> {
    let code = load_code(&args.code)?;
    let r = received(&args.received, &code)?;
    if args.gs {
        let Some(u) = args.code.selector.u else {
            bail!("--gs needs --u")
        };
        let p = GsParams {
            m: args.m,
            ell: args.ell.unwrap_or(args.m),
            u,
        };
        return run_gs(&code, &r, p, args.tau, 100_000, args.json);
    }
    let mut opts = DecodeOptions::new(args.tau);
    opts.max_branches = args.max_branches;
    opts.early_termination = !args.no_early_term;
    opts.checked = args.checked;
    let res = Decoder::new(code).list_decode(&r, &opts)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&res)?);
    } else {
        print_list(res.list.iter().map(|c| (&c.message[..], &c.codeword[..], c.distance)));
        let s = &res.stats;
        println!(
            "list {} iterations {} branches {} early_terminations {} partial {}",
            res.list.len(),
            s.iterations,
            s.branches,
            s.early_terminations,
            res.partial
        );
    }
    Ok(list_exit(res.list.is_empty()))
}

fn gs_decode(args: &GsArgs) -> Result<ExitCode> {
    let (_, fam) = load_family(&args.curve)?;
    let code = CodeSpec::new(fam, &GammaSelector::U(args.u))?;
    let r = received(&args.received, &code)?;
    let p = GsParams {
        m: args.m,
        ell: args.ell.unwrap_or(args.m),
        u: args.u,
    };
    run_gs(&code, &r, p, args.tau, args.budget, args.json)
}

fn sim(args: &SimArgs) -> Result<ExitCode> {
    let cfg = ExperimentConfig {
        curve: args.code.curve.curve.display().to_string(),
        selector: args.code.selector.get(),
        trials: args.trials,
        error_weight: args.weight,
        tau: args.tau,
        seed: args.seed,
        error_model: args.model,
        max_branches: args.max_branches,
        early_termination: !args.no_early_term,
        checked: args.checked,
    };
    if args.code.curve.points.is_some() {
        bail!("simulate uses the points in the curve file; --points is not supported");
    }
    let report = simulate(&cfg)?.render();
    print!("{report}");
    if let Some(out) = &args.out {
        std::fs::write(out, &report).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Curve {
            command: CurveCommand::Validate(a),
        } => curve_validate(a),
        Command::Code {
            command: CodeCommand::Info(a),
        } => code_info(a),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::GsDecode(a) => gs_decode(a),
        Command::Simulate(a) => sim(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
