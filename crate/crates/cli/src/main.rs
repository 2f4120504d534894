//! Command-line front end: closed-form qudit bounds, single scheme
//! simulations with oracle self-checks, parameter optimization, β
//! sweeps, and regeneration of the published tables and figure data.

mod config;
mod output;
mod recipes;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;

use catsmith::cat::{
    alpha_maximized_scq_fidelity, scq_cat_fidelity, scq_polynomial, CatSpec, Parity,
};
use catsmith::optimize::{
    optimize, sweep_beta, OptimizerBudget, SearchSpace, SweepPoint,
};
use catsmith::poly::polynomial_roots;
use catsmith::scheme::{
    analytic_conditional_m1, analytic_conditional_m2, polynomial_oracle, run_scheme,
    CutoffSpec, InputSpec, SchemeConfig,
};
use catsmith::Error as CoreError;

use config::{ConfigFile, SchemeConfigOut};
use output::{sig9, CsvWriter, ManifestBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Failure = 1,
    Usage = 2,
    ZeroProbability = 3,
    ReproductionFailed = 4,
}

#[derive(Debug)]
pub struct CliError {
    exit: Exit,
    message: String,
}

impl CliError {
    fn new(exit: Exit, message: String) -> Self {
        CliError { exit, message }
    }

    pub fn schema(message: String) -> Self {
        Self::new(Exit::Usage, message)
    }

    pub fn io(message: String) -> Self {
        Self::new(Exit::Failure, message)
    }

    fn from_core(err: CoreError) -> Self {
        let exit = match err {
            CoreError::ZeroProbability => Exit::ZeroProbability,
            CoreError::InvalidConfig(_) => Exit::Usage,
            _ => Exit::Failure,
        };
        Self::new(exit, err.to_string())
    }
}

#[derive(Parser)]
#[command(name = "catsmith", version, about = "Conditional linear-optical engineering of Schrödinger cat states")]
struct Cli {
    /// Seed for optimizer start points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Base Fock cutoff override (photon budgets are added on top).
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Output directory for data files and manifests.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for concurrent optimizer restarts.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cross-check simulations against the polynomial and closed-form
    /// routes; mismatches exit nonzero.
    #[arg(long, global = true)]
    verify_oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlphaMode {
    /// Evaluate at a fixed representation displacement (default α = 0).
    Fixed,
    /// Maximize the bound over the representation displacement.
    Maximized,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Args, Serialize)]
struct ScqArgs {
    /// Qudit order n.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    #[serde(skip)]
    parity: ParityArg,
    /// Single cat amplitude; alternative to --beta-range.
    #[arg(long, conflicts_with = "beta_range")]
    beta: Option<f64>,
    /// Amplitude grid lo:hi:step.
    #[arg(long)]
    beta_range: Option<String>,
    #[arg(long, value_enum, default_value_t = AlphaMode::Fixed)]
    #[serde(skip)]
    alpha_mode: AlphaMode,
    /// Representation displacement for --alpha-mode fixed.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Also write the qudit polynomial roots per β.
    #[arg(long)]
    emit_roots: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Genuine-qudit fidelity bounds (and optionally roots) over β.
    Scq(ScqArgs),
    /// Run one concrete scheme configuration from a JSON file.
    Simulate { config: PathBuf },
    /// Optimize the free parameters of a JSON configuration.
    Optimize {
        config: PathBuf,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Optimize along a β grid and emit the curve with qudit bounds.
    Sweep {
        config: PathBuf,
        /// Amplitude grid lo:hi:step.
        #[arg(long)]
        beta_range: String,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Regenerate published operating points (tables gate, figures are
    /// data-only): table1|table2|table3|fig3|fig7|fig8.
    Reproduce {
        recipe: String,
        #[arg(long)]
        restarts: Option<usize>,
        /// Figure recipes only: amplitude grid lo:hi:step.
        #[arg(long)]
        beta_range: Option<String>,
    },
}

fn parse_beta_range(text: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::schema(format!(
            "beta range must be lo:hi:step, got \"{text}\""
        )));
    }
    let values: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::schema(format!("bad number \"{p}\" in beta range")))
        })
        .collect::<Result<_, _>>()?;
    let (lo, hi, step) = (values[0], values[1], values[2]);
    if !(lo > 0.0) || hi < lo || !(step > 0.0) {
        return Err(CliError::schema(format!(
            "empty or invalid beta range \"{text}\""
        )));
    }
    Ok((lo, hi, step))
}

fn beta_grid(range: (f64, f64, f64)) -> Vec<f64> {
    let (lo, hi, step) = range;
    let mut betas = Vec::new();
    let mut b = lo;
    while b <= hi + 1e-9 {
        betas.push(b);
        b += step;
    }
    betas
}

fn cmd_scq(cli: &Cli, args: &ScqArgs) -> Result<(), CliError> {
    let parity: Parity = args.parity.into();
    let betas = match (&args.beta, &args.beta_range) {
        (Some(b), None) => {
            if !(*b > 0.0) {
                return Err(CliError::schema("beta must be positive".into()));
            }
            vec![*b]
        }
        (None, Some(range)) => beta_grid(parse_beta_range(range)?),
        _ => {
            return Err(CliError::schema(
                "scq needs exactly one of --beta / --beta-range".into(),
            ))
        }
    };

    let canonical = serde_json::to_string(args).expect("args serialize");
    let manifest = ManifestBuilder::start(command_line(), &canonical, cli.seed);

    let mut csv = CsvWriter::new(cli.out.join("scq.csv"), &[
        "beta",
        "fidelity_upper_bound",
        "alpha_used",
    ]);
    let mut roots_csv = args.emit_roots.then(|| {
        CsvWriter::new(cli.out.join("scq_roots.csv"), &[
            "beta",
            "root_index",
            "re",
            "im",
        ])
    });

    for &beta in &betas {
        let (fidelity, alpha_used) = match args.alpha_mode {
            AlphaMode::Fixed => {
                let spec = CatSpec::with_alpha(beta, parity, args.alpha)
                    .map_err(CliError::from_core)?;
                let f = scq_cat_fidelity(args.n, &spec).map_err(|e| {
                    CliError::new(Exit::Usage, format!("beta={beta}: {e}"))
                })?;
                (f, args.alpha)
            }
            AlphaMode::Maximized => alpha_maximized_scq_fidelity(args.n, beta, parity, 4.0)
                .map_err(CliError::from_core)?,
        };
        csv.row(&[sig9(beta), sig9(fidelity), sig9(alpha_used)]);

        if let Some(rcsv) = roots_csv.as_mut() {
            let spec =
                CatSpec::with_alpha(beta, parity, alpha_used).map_err(CliError::from_core)?;
            let poly = scq_polynomial(args.n, &spec)
                .map_err(|e| CliError::new(Exit::Usage, format!("beta={beta}: {e}")))?;
            let roots = polynomial_roots(&poly).map_err(CliError::from_core)?;
            for (i, z) in roots.roots.iter().enumerate() {
                rcsv.row(&[sig9(beta), i.to_string(), sig9(z.re), sig9(z.im)]);
            }
        }
    }

    let path = csv.finish()?;
    manifest.write_for(&path)?;
    if let Some(rcsv) = roots_csv {
        let rpath = rcsv.finish()?;
        manifest.write_for(&rpath)?;
    }
    println!("wrote {}", path.display());
    Ok(())
}

#[derive(Serialize)]
struct SimulateResult {
    amplitudes: Vec<[f64; 2]>,
    cutoff: usize,
    success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity: Option<f64>,
}

fn verify_against_oracles(
    config: &SchemeConfig,
    state: &catsmith::fock::FockVector,
    probability: f64,
) -> Result<(), CliError> {
    let mismatch = |route: &str, f: f64, rel: f64| {
        CliError::new(
            Exit::Failure,
            format!("oracle mismatch ({route}): fidelity {f}, probability rel. err. {rel:.2e}"),
        )
    };
    if config.mode_count() <= 4 {
        let (ostate, oprob) = polynomial_oracle(config).map_err(CliError::from_core)?;
        let f = catsmith::fock::fidelity_pure(state, &ostate).map_err(CliError::from_core)?;
        let rel = (probability - oprob).abs() / oprob;
        if f < 1.0 - 1e-9 || rel > 1e-8 {
            return Err(mismatch("polynomial", f, rel));
        }
    }
    let gamma = match &config.input {
        InputSpec::Vacuum => Some(C64::new(0.0, 0.0)),
        InputSpec::Coherent { gamma } => Some(*gamma),
        _ => None,
    };
    if let Some(gamma) = gamma {
        let cutoff = config.final_cutoff(None);
        let analytic = match config.mode_count() {
            1 => analytic_conditional_m1(
                gamma,
                config.bs_theta[0],
                config.aux_alpha[0],
                config.aux_photons[0],
                config.alpha0,
                cutoff,
            )
            .map(|(st, _, p)| (st, p)),
            2 => analytic_conditional_m2(
                gamma,
                config.bs_theta[0],
                config.bs_theta[1],
                config.aux_alpha[0],
                config.aux_alpha[1],
                config.aux_photons[0],
                config.aux_photons[1],
                config.alpha0,
                cutoff,
            )
            .map(|(st, _, _, p)| (st, p)),
            _ => Err(CoreError::UnsupportedInput("m > 2".into())),
        };
        if let Ok((astate, aprob)) = analytic {
            let f = catsmith::fock::fidelity_pure(state, &astate).map_err(CliError::from_core)?;
            let rel = (probability - aprob).abs() / aprob;
            if f < 1.0 - 1e-9 || rel > 1e-8 {
                return Err(mismatch("closed-form", f, rel));
            }
        }
    }
    Ok(())
}

fn cmd_simulate(cli: &Cli, config_path: &PathBuf) -> Result<(), CliError> {
    let file = ConfigFile::load(config_path)?;
    let manifest = ManifestBuilder::start(command_line(), &file.canonical_json(), cli.seed);
    let scheme = file.concrete_scheme(cli.cutoff)?;
    for warning in scheme.validate().map_err(CliError::from_core)? {
        eprintln!("warning: {warning}");
    }
    let target = file.target_spec()?;
    let result = run_scheme(&scheme, target.as_ref()).map_err(CliError::from_core)?;

    if cli.verify_oracle {
        verify_against_oracles(&scheme, &result.state, result.success_probability)?;
    }

    let out = SimulateResult {
        amplitudes: result
            .state
            .amplitudes()
            .iter()
            .map(|a| [a.re, a.im])
            .collect(),
        cutoff: result.state.cutoff(),
        success_probability: result.success_probability,
        fidelity: result.fidelity,
    };
    let path = cli.out.join("result.json");
    std::fs::write(
        &path,
        serde_json::to_string_pretty(&out).expect("result serializes"),
    )
    .map_err(|e| CliError::io(format!("write {}: {e}", path.display())))?;
    manifest.write_for(&path)?;
    println!(
        "wrote {} (P={:.3e}{})",
        path.display(),
        out.success_probability,
        out.fidelity
            .map(|f| format!(", F={f:.6}"))
            .unwrap_or_default()
    );
    Ok(())
}

#[derive(Serialize)]
struct OptimizeResult {
    fidelity: f64,
    success_probability: f64,
    restarts_used: usize,
    objective_evaluations: u64,
    seed: u64,
    best_config: SchemeConfigOut,
    best_params: Vec<f64>,
}

fn cmd_optimize(
    cli: &Cli,
    config_path: &PathBuf,
    restarts: Option<usize>,
) -> Result<(), CliError> {
    let file = ConfigFile::load(config_path)?;
    let manifest = ManifestBuilder::start(command_line(), &file.canonical_json(), cli.seed);
    let space = file.search_space(cli.cutoff)?;
    let target = file
        .target_spec()?
        .ok_or_else(|| CliError::schema("optimize needs a target section".into()))?;
    let budget = file.budget(cli.seed, restarts);
    let outcome = optimize(&space, &target, &budget).map_err(CliError::from_core)?;

    let out = OptimizeResult {
        fidelity: outcome.fidelity,
        success_probability: outcome.success_probability,
        restarts_used: outcome.restarts_used,
        objective_evaluations: outcome.objective_evaluations,
        seed: outcome.seed,
        best_config: SchemeConfigOut::from_core(&outcome.best_config),
        best_params: outcome.best_params.clone(),
    };
    let path = cli.out.join("outcome.json");
    std::fs::write(
        &path,
        serde_json::to_string_pretty(&out).expect("outcome serializes"),
    )
    .map_err(|e| CliError::io(format!("write {}: {e}", path.display())))?;
    manifest.write_for(&path)?;
    println!(
        "wrote {} (F={:.6}, P={:.3e})",
        path.display(),
        out.fidelity,
        out.success_probability
    );
    Ok(())
}

fn sweep_rows(points: &[SweepPoint], case: &str, parity: Parity, csv: &mut CsvWriter) {
    let parity_str = match parity {
        Parity::Even => "even",
        Parity::Odd => "odd",
    };
    for p in points {
        let (fidelity, probability, error) = match &p.outcome {
            Ok(out) => (
                sig9(out.fidelity),
                sig9(out.success_probability),
                String::new(),
            ),
            Err(e) => (String::new(), String::new(), e.replace(',', ";")),
        };
        csv.row(&[
            case.to_string(),
            parity_str.to_string(),
            sig9(p.beta),
            fidelity,
            probability,
            p.bound_alpha0.map(sig9).unwrap_or_default(),
            sig9(p.bound_alpha_max),
            sig9(p.bound_alpha_arg),
            error,
        ]);
    }
}

const SWEEP_HEADER: [&str; 9] = [
    "case",
    "parity",
    "beta",
    "fidelity",
    "probability",
    "scq_bound_alpha0",
    "scq_bound_alphamax",
    "scq_bound_alpha_arg",
    "error",
];

fn cmd_sweep(
    cli: &Cli,
    config_path: &PathBuf,
    beta_range: &str,
    restarts: Option<usize>,
) -> Result<(), CliError> {
    let file = ConfigFile::load(config_path)?;
    let manifest = ManifestBuilder::start(command_line(), &file.canonical_json(), cli.seed);
    let range = parse_beta_range(beta_range)?;
    let space = file.search_space(cli.cutoff)?;
    let target = file
        .target_spec()?
        .ok_or_else(|| CliError::schema("sweep needs a target section for the parity".into()))?;
    let budget = file.budget(cli.seed, restarts);
    let points =
        sweep_beta(&space, target.parity, range, &budget).map_err(CliError::from_core)?;

    let mut csv = CsvWriter::new(cli.out.join("sweep.csv"), &SWEEP_HEADER);
    sweep_rows(&points, "sweep", target.parity, &mut csv);
    let path = csv.finish()?;
    manifest.write_for(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn standard_space(input: InputSpec, aux: &[usize], cutoff: Option<usize>) -> SearchSpace {
    let m = aux.len();
    let template = SchemeConfig {
        input,
        aux_photons: aux.to_vec(),
        bs_theta: vec![0.9; m],
        aux_alpha: vec![C64::new(0.0, 0.0); m],
        alpha0: 0.0,
        cutoff: cutoff.map(CutoffSpec::Explicit).unwrap_or(CutoffSpec::Auto),
    };
    SearchSpace::standard(template).expect("recipe templates are valid")
}

fn cmd_reproduce(
    cli: &Cli,
    recipe: &str,
    restarts: Option<usize>,
    beta_range: Option<&str>,
) -> Result<(), CliError> {
    let canonical = format!("{{\"recipe\":\"{recipe}\"}}");
    let manifest = ManifestBuilder::start(command_line(), &canonical, cli.seed);
    let budget = OptimizerBudget {
        restarts: restarts.unwrap_or(16),
        max_evals_per_start: 4000,
        simplex_tolerance: 1e-9,
        seed: cli.seed,
    };

    if let Some(rows) = recipes::table_rows(recipe) {
        let mut csv = CsvWriter::new(cli.out.join(format!("reproduce_{recipe}.csv")), &[
            "case",
            "parity",
            "beta",
            "fidelity",
            "probability",
            "paper_fidelity",
            "paper_probability",
            "pass",
        ]);
        let mut all_pass = true;
        for row in &rows {
            let space = standard_space(row.input.clone(), row.aux, cli.cutoff);
            let target = CatSpec::new(row.beta, row.parity).map_err(CliError::from_core)?;
            let outcome = optimize(&space, &target, &budget).map_err(CliError::from_core)?;
            let pass = outcome.fidelity >= row.published_fidelity - 0.005;
            all_pass &= pass;
            let parity_str = match row.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            };
            println!(
                "{} {}: F={:.5} vs {:.3} (P ratio {:.2e}) {}",
                row.case,
                parity_str,
                outcome.fidelity,
                row.published_fidelity,
                outcome.success_probability / row.published_probability,
                if pass { "pass" } else { "FAIL" }
            );
            csv.row(&[
                row.case.to_string(),
                parity_str.to_string(),
                sig9(row.beta),
                sig9(outcome.fidelity),
                sig9(outcome.success_probability),
                sig9(row.published_fidelity),
                sig9(row.published_probability),
                pass.to_string(),
            ]);
        }
        let path = csv.finish()?;
        manifest.write_for(&path)?;
        println!("wrote {}", path.display());
        if !all_pass {
            return Err(CliError::new(
                Exit::ReproductionFailed,
                format!("{recipe}: at least one operating point missed its published fidelity"),
            ));
        }
        return Ok(());
    }

    if let Some(cases) = recipes::figure_cases(recipe) {
        let range = parse_beta_range(beta_range.unwrap_or("1.0:3.0:0.25"))?;
        let mut csv = CsvWriter::new(
            cli.out.join(format!("reproduce_{recipe}.csv")),
            &SWEEP_HEADER,
        );
        for case in &cases {
            let space = standard_space(case.input.clone(), case.aux, cli.cutoff);
            let points = sweep_beta(&space, case.parity, range, &budget)
                .map_err(CliError::from_core)?;
            sweep_rows(&points, case.case, case.parity, &mut csv);
        }
        let path = csv.finish()?;
        manifest.write_for(&path)?;
        write_gnuplot_script(cli, recipe)?;
        println!("wrote {}", path.display());
        return Ok(());
    }

    Err(CliError::schema(format!(
        "unknown recipe \"{recipe}\" (expected table1|table2|table3|fig3|fig7|fig8)"
    )))
}

fn write_gnuplot_script(cli: &Cli, recipe: &str) -> Result<(), CliError> {
    let path = cli.out.join(format!("reproduce_{recipe}.gp"));
    let csv = format!("reproduce_{recipe}.csv");
    let script = format!(
        "set datafile separator ','\n\
         set key outside\n\
         set xlabel 'beta'\n\
         set ylabel 'fidelity'\n\
         set yrange [0:1.02]\n\
         plot '{csv}' using 3:4 with points title 'optimized', \\\n\
         \x20    '{csv}' using 3:7 with lines title 'qudit bound'\n"
    );
    std::fs::write(&path, script)
        .map_err(|e| CliError::io(format!("write {}: {e}", path.display())))
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(1);
        }
    }
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("error: cannot create output directory: {e}");
        return ExitCode::from(1);
    }

    let result = match &cli.command {
        Command::Scq(args) => cmd_scq(&cli, args),
        Command::Simulate { config } => cmd_simulate(&cli, config),
        Command::Optimize { config, restarts } => cmd_optimize(&cli, config, *restarts),
        Command::Sweep {
            config,
            beta_range,
            restarts,
        } => cmd_sweep(&cli, config, beta_range, *restarts),
        Command::Reproduce {
            recipe,
            restarts,
            beta_range,
        } => cmd_reproduce(&cli, recipe, *restarts, beta_range.as_deref()),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit as u8)
        }
    }
}
