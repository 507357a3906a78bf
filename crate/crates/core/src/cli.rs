//! Command-line front end.
//!
//! Exit codes: `0` success, `1` internal failure, `2` input error,
//! `3` I/O error, `4` plan rejection.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::baselines::{exhaustive_search, DEFAULT_EXHAUSTIVE_LIMIT};
use crate::channel_io::{read_channel, write_channel};
use crate::das::das_solve;
use crate::error::Error;
use crate::harness::{aggregate, run_plan, write_aggregate_csv, write_trials_csv, ExperimentPlan, Method};
use crate::model::{generate_channel, snr_db, ChannelParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PLAN: i32 = 4;

pub const TRIALS_FILE: &str = "trials.csv";
pub const AGGREGATE_FILE: &str = "aggregate.csv";

#[derive(Debug, Parser)]
#[command(name = "ris-das", version, about = "Optimal 1-bit RIS phase configuration by divide-and-sort")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one channel file and print the optimal configuration.
    Solve(SolveArgs),
    /// Run a seeded sweep and write trial and aggregate CSVs.
    Bench(SweepArgs),
    /// Run a seeded sweep and print a method comparison table.
    Compare(SweepArgs),
    /// Write a seeded random channel file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Block the direct link (h_d = 0).
    #[arg(long)]
    pub no_los: bool,
    #[arg(long, default_value_t = 1.0)]
    pub beta_g: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta_r: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta_d: f64,
    #[arg(long, default_value_t = 1.0)]
    pub noise_power: f64,
}

impl ChannelArgs {
    fn params(&self) -> ChannelParams {
        ChannelParams {
            beta_g: self.beta_g,
            beta_r: self.beta_r,
            beta_d: self.beta_d,
            los: !self.no_los,
            noise_power: self.noise_power,
            tx_power: 1.0,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Channel file (`idx,g_re,g_im,hr_re,hr_im` rows plus an `hd` footer).
    pub channel: PathBuf,
    /// Also run the exhaustive search and compare.
    #[arg(long)]
    pub verify_exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// RIS sizes, comma separated.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    pub n_values: Vec<usize>,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma separated subset of das, exhaustive, greedy, random.
    #[arg(long, value_delimiter = ',', default_value = "das")]
    pub methods: Vec<Method>,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Output directory for `trials.csv` and `aggregate.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SweepArgs {
    fn plan(&self) -> ExperimentPlan {
        ExperimentPlan {
            n_values: self.n_values.clone(),
            trials: self.trials,
            base_seed: self.seed,
            methods: self.methods.clone(),
            channel_params: self.channel.params(),
            exhaustive_limit: self.exhaustive_limit,
            ..Default::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Destination file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
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
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self::new(EXIT_IO, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::ExhaustiveLimit { .. } => EXIT_PLAN,
            _ => EXIT_INPUT,
        };
        Self::new(code, e.to_string())
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::new(EXIT_IO, format!("writing output: {e}"))
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let file = File::open(&args.channel).map_err(|e| CliError::new(EXIT_INPUT, format!("{}: {e}", args.channel.display())))?;
    let ch = read_channel(BufReader::new(file)).map_err(|e| match e {
        Error::Io(io) => CliError::new(EXIT_INPUT, format!("{}: {io}", args.channel.display())),
        other => CliError::new(EXIT_INPUT, format!("{}: {other}", args.channel.display())),
    })?;

    let sol = das_solve(&ch);
    let phases: Vec<String> = sol.phases().iter().map(|p| p.to_string()).collect();
    (|| -> std::io::Result<()> {
        writeln!(out, "n: {}", ch.len())?;
        writeln!(out, "w: {}", sol.config.to_sign_string())?;
        writeln!(out, "theta: {}", phases.join(" "))?;
        writeln!(out, "power: {}", sol.power)?;
        writeln!(out, "snr_db: {:.4}", snr_db(sol.power, ch.noise_power()))
    })()
    .map_err(stdout_err)?;

    if args.verify_exhaustive {
        let ex = exhaustive_search(&ch, args.exhaustive_limit)?;
        let ok = (ex.power - sol.power).abs() <= 1e-9 * ex.power.abs();
        if ok {
            writeln!(out, "verified: optimal").map_err(stdout_err)?;
        } else {
            writeln!(out, "verified: MISMATCH (exhaustive power {})", ex.power).map_err(stdout_err)?;
            return Ok(EXIT_FAILURE);
        }
    }
    Ok(EXIT_OK)
}

fn write_csv_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> crate::Result<()>) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    write(&mut w).map_err(|e| CliError::io(path, e))
}

pub fn cmd_bench(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let plan = args.plan();
    plan.validate()?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        // Probe writability before running the sweep.
        write_csv_file(&dir.join(TRIALS_FILE), |_| Ok(()))?;
    }
    let records = run_plan(&plan)?;
    let rows = aggregate(&records);
    match &args.out {
        Some(dir) => {
            let trials = dir.join(TRIALS_FILE);
            let agg = dir.join(AGGREGATE_FILE);
            write_csv_file(&trials, |w| write_trials_csv(&records, w))?;
            write_csv_file(&agg, |w| write_aggregate_csv(&rows, w))?;
            writeln!(out, "wrote {} and {}", trials.display(), agg.display()).map_err(stdout_err)?;
        }
        None => write_aggregate_csv(&rows, &mut *out).map_err(|e| CliError::new(EXIT_IO, e.to_string()))?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_compare(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut plan = args.plan();
    if !plan.methods.contains(&Method::Das) {
        plan.methods.push(Method::Das);
    }
    plan.validate()?;
    let records = run_plan(&plan)?;
    let rows = aggregate(&records);

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        write_csv_file(&dir.join(TRIALS_FILE), |w| write_trials_csv(&records, w))?;
        write_csv_file(&dir.join(AGGREGATE_FILE), |w| write_aggregate_csv(&rows, w))?;
    }

    (|| -> std::io::Result<()> {
        writeln!(
            out,
            "{:>6}  {:<10}  {:>12}  {:>12}  {:>12}  {:>10}",
            "n", "method", "mean_snr_db", "gap_db", "total_s", "optimal"
        )?;
        for row in &rows {
            let das = rows
                .iter()
                .find(|r| r.n == row.n && r.method == Method::Das)
                .expect("das always runs in compare");
            let rate = row
                .optimality_rate
                .map(|r| format!("{:.3}", r))
                .unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{:>6}  {:<10}  {:>12.4}  {:>12.4}  {:>12.6}  {:>10}",
                row.n,
                row.method,
                row.mean_snr_db,
                das.mean_snr_db - row.mean_snr_db,
                row.total_time,
                rate
            )?;
        }
        Ok(())
    })()
    .map_err(stdout_err)?;
    Ok(EXIT_OK)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.n == 0 {
        return Err(CliError::new(EXIT_INPUT, "--n must be at least 1"));
    }
    let ch = generate_channel(args.n, args.seed, &args.channel.params())?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            write_channel(&ch, BufWriter::new(file)).map_err(|e| CliError::io(path, e))?;
        }
        None => write_channel(&ch, &mut *out).map_err(|e| CliError::new(EXIT_IO, e.to_string()))?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ris-das").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_rejects_zero() {
        let (code, _, err) = run_capture(&["gen", "--n", "0"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--n"));
    }

    #[test]
    fn gen_to_stdout_no_los() {
        let (code, out, _) = run_capture(&["gen", "--n", "8", "--seed", "5", "--no-los"]);
        assert_eq!(code, EXIT_OK);
        let footer = out.lines().last().unwrap();
        assert!(footer.starts_with("hd,0.0000000000000000e0,0.0000000000000000e0,"), "{footer}");
        assert_eq!(out.lines().count(), 10);
    }

    #[test]
    fn unknown_flag_is_input_error() {
        let (code, _, _) = run_capture(&["bench", "--n", "4", "--trials", "2", "--bogus"]);
        assert_eq!(code, EXIT_INPUT);
        let (code, _, _) = run_capture(&["bench", "--n", "4", "--trials", "2", "--methods", "sdr"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn bench_refuses_large_exhaustive() {
        let (code, _, err) = run_capture(&[
            "bench", "--n", "25", "--trials", "10", "--methods", "das,exhaustive", "--exhaustive-limit", "20",
        ]);
        assert_eq!(code, EXIT_PLAN);
        assert!(err.contains("20"), "{err}");
    }

    #[test]
    fn bench_to_stdout() {
        let (code, out, _) = run_capture(&["bench", "--n", "10,50", "--trials", "5", "--seed", "1"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], crate::harness::AGGREGATE_HEADER);
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn compare_prints_gap_table() {
        let (code, out, _) = run_capture(&["compare", "--n", "6", "--trials", "20", "--methods", "greedy,exhaustive,random"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("das"));
        assert!(out.contains("exhaustive"));
        let das_line = out.lines().find(|l| l.contains(" das ")).unwrap();
        assert!(das_line.trim_end().ends_with("1.000"), "{das_line}");
    }
}
