//! The `thompson` command line.

use std::ffi::OsString;
use std::io::Write;
use std::net::TcpListener;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thompson_core::engine::normal_form;
use thompson_core::{oracle_normal, NormalWord, ProtocolParams, Role, Word};

use crate::attack::{AttackBudget, Outcome};
use crate::bench::bench_nf;
use crate::keys::keygen;
use crate::sweep::{attack_sweep, GridPoint, Instance};
use crate::wire::{self, Transcript};

#[derive(Debug, Parser)]
#[command(name = "thompson", version, about = "Normal forms, key exchange and attacks in Thompson's group F")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every randomized subcommand
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the essential result
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoleArg {
    Alice,
    Bob,
}

impl From<RoleArg> for Role {
    fn from(r: RoleArg) -> Role {
        match r {
            RoleArg::Alice => Role::Alice,
            RoleArg::Bob => Role::Bob,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a word such as "x1 x0^-1"
    Nf {
        word: String,
        /// Use the rewriting oracle instead of the fast engine
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a key bundle
    Keygen {
        #[arg(long)]
        s: u64,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, value_enum)]
        role: RoleArg,
        /// Seed for the public parameters (defaults to --seed)
        #[arg(long)]
        params_seed: Option<u64>,
    },
    /// Run the key exchange
    Kex {
        #[command(subcommand)]
        mode: KexMode,
    },
    /// Length-based attack on a freshly generated token
    Attack {
        #[arg(long)]
        s: u64,
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        max_nodes: u64,
        #[arg(long)]
        max_seconds: f64,
        /// Exit with status 2 unless the attack succeeds
        #[arg(long)]
        require_success: bool,
    },
    /// Attack trials over a grid of (s, M) points, as CSV
    AttackSweep {
        /// JSON file: [{"s": 2, "M": 4}, ...]
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 60.0)]
        max_seconds: f64,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Letter visits and timings for random words of length 2^k, as CSV
    BenchNf {
        #[arg(long, default_value_t = 10)]
        min_exp: u32,
        #[arg(long, default_value_t = 20)]
        max_exp: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum KexMode {
    /// Both parties in one process
    Demo {
        #[arg(long)]
        s: u64,
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        seed_alice: u64,
        #[arg(long)]
        seed_bob: u64,
    },
    /// Play Bob on one incoming TCP connection
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long)]
        port: u16,
    },
    /// Play Alice against a listening Bob
    Connect {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long)]
        port: u16,
        #[arg(long, default_value_t = 4)]
        s: u64,
        #[arg(long = "M", default_value_t = 256)]
        m: usize,
    },
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need_seed(global: &Global) -> Result<u64, Failure> {
    global.seed.ok_or_else(|| usage("this subcommand requires --seed"))
}

/// Checks `s` and `M` before anything is generated.
fn check_params(s: u64, m: usize) -> Result<(), Failure> {
    ProtocolParams::new(s, m, NormalWord::empty()).map(drop).map_err(|e| usage(e.to_string()))
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status: 0 on success, 1 on usage errors, 2 on runtime errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn print_transcript(t: &Transcript, g: &Global, out: &mut dyn Write) -> std::io::Result<()> {
    if g.json {
        return writeln!(out, "{}", t.to_json());
    }
    if !g.quiet {
        for e in &t.messages {
            let from = match e.from {
                Role::Alice => "alice",
                Role::Bob => "bob",
            };
            writeln!(out, "{from}: {}", e.msg.to_line())?;
        }
    }
    writeln!(out, "K_equal: {}", t.k_equal)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Nf { word, oracle } => {
            let w: Word = word.parse().map_err(|e: thompson_core::WordError| usage(e.to_string()))?;
            let nf = if *oracle { oracle_normal(&w) } else { normal_form(&w) };
            if g.json {
                writeln!(out, "{}", nf.to_canonical_json())?;
            } else {
                writeln!(out, "{nf}")?;
            }
        }
        Command::Keygen { s, m, role, params_seed } => {
            let seed = need_seed(g)?;
            check_params(*s, *m)?;
            let bundle = keygen((*role).into(), *s, *m, seed, params_seed.unwrap_or(seed))
                .map_err(anyhow::Error::from)?;
            let text =
                if g.json { serde_json::to_string(&bundle) } else { serde_json::to_string_pretty(&bundle) };
            writeln!(out, "{}", text.map_err(anyhow::Error::from)?)?;
        }
        Command::Kex { mode: KexMode::Demo { s, m, seed_alice, seed_bob } } => {
            check_params(*s, *m)?;
            let t = wire::demo(*s, *m, *seed_alice, *seed_bob).map_err(anyhow::Error::from)?;
            print_transcript(&t, g, out)?;
            if !t.k_equal {
                return Ok(2);
            }
        }
        Command::Kex { mode: KexMode::Serve { host, port } } => {
            let seed = need_seed(g)?;
            let listener = TcpListener::bind((host.as_str(), *port))
                .with_context(|| format!("binding {host}:{port}"))?;
            if !g.quiet {
                writeln!(err, "listening on {}", listener.local_addr()?)?;
            }
            let t = wire::serve(&listener, seed).map_err(anyhow::Error::from)?;
            print_transcript(&t, g, out)?;
            if !t.k_equal {
                return Ok(2);
            }
        }
        Command::Kex { mode: KexMode::Connect { host, port, s, m } } => {
            let seed = need_seed(g)?;
            check_params(*s, *m)?;
            let t = wire::connect((host.as_str(), *port), *s, *m, seed)
                .with_context(|| format!("exchange with {host}:{port}"))?;
            print_transcript(&t, g, out)?;
            if !t.k_equal {
                return Ok(2);
            }
        }
        Command::Attack { s, m, max_nodes, max_seconds, require_success } => {
            let seed = need_seed(g)?;
            check_params(*s, *m)?;
            let budget = AttackBudget::new(*max_nodes, *max_seconds)
                .ok_or_else(|| usage("--max-nodes and --max-seconds must be positive"))?;
            let inst = Instance::generate(GridPoint { s: *s, m: *m }, seed).map_err(anyhow::Error::from)?;
            let report = inst.attack(budget);
            let text = if g.json || g.quiet {
                serde_json::to_string(&report)
            } else {
                serde_json::to_string_pretty(&report)
            };
            writeln!(out, "{}", text.map_err(anyhow::Error::from)?)?;
            if *require_success && report.outcome != Outcome::Success {
                writeln!(err, "error: attack did not succeed within the budget")?;
                return Ok(2);
            }
        }
        Command::AttackSweep { grid, trials, max_nodes, max_seconds, parallel } => {
            let seed = need_seed(g)?;
            let budget = AttackBudget::new(*max_nodes, *max_seconds)
                .ok_or_else(|| usage("--max-nodes and --max-seconds must be positive"))?;
            let text =
                std::fs::read_to_string(grid).with_context(|| format!("reading {}", grid.display()))?;
            let points: Vec<GridPoint> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", grid.display()))?;
            for p in &points {
                check_params(p.s, p.m)?;
            }
            let result =
                attack_sweep(&points, *trials, budget, seed, *parallel).map_err(anyhow::Error::from)?;
            if g.json {
                writeln!(out, "{}", serde_json::to_string(&result).map_err(anyhow::Error::from)?)?;
            } else {
                result.write_csv(&mut *out).map_err(anyhow::Error::from)?;
                if !g.quiet {
                    for p in &result.summary {
                        writeln!(
                            err,
                            "s={} M={} success_rate={:.3} median_nodes={} growth_exponent={}",
                            p.s,
                            p.m,
                            p.success_rate,
                            p.median_nodes_to_success.map_or("-".into(), |v| format!("{v}")),
                            p.growth_exponent.map_or("-".into(), |v| format!("{v:.3}")),
                        )?;
                    }
                }
            }
        }
        Command::BenchNf { min_exp, max_exp } => {
            let seed = need_seed(g)?;
            if min_exp > max_exp || *max_exp > 30 {
                return Err(usage("need --min-exp <= --max-exp <= 30"));
            }
            let rows = bench_nf(*min_exp, *max_exp, seed);
            if g.json {
                writeln!(out, "{}", serde_json::to_string(&rows).map_err(anyhow::Error::from)?)?;
            } else {
                let mut w = csv::Writer::from_writer(&mut *out);
                for r in &rows {
                    w.serialize(r).map_err(anyhow::Error::from)?;
                }
                w.flush()?;
            }
        }
    }
    Ok(0)
}
