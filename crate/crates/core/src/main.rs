// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use entanglement_engine::experiments::figures::weak_coupling_base;
use entanglement_engine::experiments::{
    emit_figure, find_kappa_max, optimize_negativity, sweep, FigureId, FigureOverrides, FreeParam, KappaObjective,
    SweepSpec,
};
use entanglement_engine::observables::{report, report_numeric};
use entanglement_engine::{EngineError, EngineParams, ParamName, Regime, Result};

#[derive(Parser)]
#[command(name = "entanglement-engine", version, about = "Two-qubit autonomous entanglement engine simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady state and observables for one parameter set, as JSON.
    Report {
        #[command(flatten)]
        params: ParamArgs,
        /// Solve the generator numerically even when a closed form exists.
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Parameter sweep described by a JSON spec, as CSV.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dataset behind a figure (Fig2 to Fig6), as CSV.
    Figure {
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Grid points along each swept axis.
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Hot-qubit tunnelling amplitude that maximises current or negativity.
    KappaMax {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "current")]
        objective: KappaObjective,
        #[arg(long, default_value_t = 0.0)]
        kappa_lo: f64,
        #[arg(long, default_value_t = 0.15)]
        kappa_hi: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maximise the steady-state negativity over one or two parameters.
    Optimize {
        #[command(flatten)]
        params: ParamArgs,
        /// NAME:LO:HI, optionally followed by :open, :left-open or :closed (default).
        #[arg(long = "free", required = true)]
        free: Vec<String>,
        /// Include every evaluated point in the output.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parameter flags; any flag given overrides the config file.
#[derive(Args, Default)]
struct ParamArgs {
    /// JSON file with any subset of the parameter fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    eps_h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma_h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma_c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    temp_h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    temp_c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    kappa_h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    kappa_c: Option<f64>,
    #[arg(long)]
    regime: Option<Regime>,
}

/// A partial parameter set, as read from a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialParams {
    eps_h: Option<f64>,
    delta: Option<f64>,
    g: Option<f64>,
    gamma_h: Option<f64>,
    gamma_c: Option<f64>,
    temp_h: Option<f64>,
    temp_c: Option<f64>,
    kappa_h: Option<f64>,
    kappa_c: Option<f64>,
    regime: Option<Regime>,
}

impl PartialParams {
    fn values(&self) -> [(ParamName, Option<f64>); 9] {
        [
            (ParamName::EpsH, self.eps_h),
            (ParamName::Delta, self.delta),
            (ParamName::G, self.g),
            (ParamName::GammaH, self.gamma_h),
            (ParamName::GammaC, self.gamma_c),
            (ParamName::TempH, self.temp_h),
            (ParamName::TempC, self.temp_c),
            (ParamName::KappaH, self.kappa_h),
            (ParamName::KappaC, self.kappa_c),
        ]
    }

    /// `other` wins wherever it sets a field.
    fn overlay(self, other: PartialParams) -> PartialParams {
        PartialParams {
            eps_h: other.eps_h.or(self.eps_h),
            delta: other.delta.or(self.delta),
            g: other.g.or(self.g),
            gamma_h: other.gamma_h.or(self.gamma_h),
            gamma_c: other.gamma_c.or(self.gamma_c),
            temp_h: other.temp_h.or(self.temp_h),
            temp_c: other.temp_c.or(self.temp_c),
            kappa_h: other.kappa_h.or(self.kappa_h),
            kappa_c: other.kappa_c.or(self.kappa_c),
            regime: other.regime.or(self.regime),
        }
    }
}

impl ParamArgs {
    fn flags(&self) -> PartialParams {
        PartialParams {
            eps_h: self.eps_h,
            delta: self.delta,
            g: self.g,
            gamma_h: self.gamma_h,
            gamma_c: self.gamma_c,
            temp_h: self.temp_h,
            temp_c: self.temp_c,
            kappa_h: self.kappa_h,
            kappa_c: self.kappa_c,
            regime: self.regime,
        }
    }

    /// Config file values overlaid with command-line flags.
    fn partial(&self) -> Result<PartialParams> {
        let file = match &self.config {
            Some(path) => serde_json::from_str(&read(path)?)
                .map_err(|e| EngineError::Spec(format!("bad config {}: {e}", path.display())))?,
            None => PartialParams::default(),
        };
        Ok(file.overlay(self.flags()))
    }

    /// Full parameter set on top of the weak-coupling defaults.
    fn resolve(&self) -> Result<EngineParams> {
        let partial = self.partial()?;
        let mut p = weak_coupling_base();
        for (name, value) in partial.values() {
            if let Some(v) = value {
                p.set(name, v);
            }
        }
        if let Some(r) = partial.regime {
            p.regime = r;
        }
        p.validate()?;
        Ok(p)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| EngineError::Spec(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| EngineError::Spec(format!("cannot write output: {e}"));
    match output {
        Some(path) => fs::write(path, bytes).map_err(io),
        None => std::io::stdout().lock().write_all(bytes).map_err(io),
    }
}

fn emit_json<T: Serialize>(output: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| EngineError::Spec(e.to_string()))?;
    s.push('\n');
    emit(output, s.as_bytes())
}

fn parse_free(s: &str) -> Result<FreeParam> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || EngineError::Spec(format!("expected NAME:LO:HI[:open|left-open|closed], got `{s}`"));
    if parts.len() < 3 || parts.len() > 4 {
        return Err(bad());
    }
    let name: ParamName = parts[0].parse()?;
    let lo: f64 = parts[1].parse().map_err(|_| bad())?;
    let hi: f64 = parts[2].parse().map_err(|_| bad())?;
    match parts.get(3).copied().unwrap_or("closed") {
        "closed" => Ok(FreeParam::closed(name, lo, hi)),
        "open" => Ok(FreeParam::open(name, lo, hi)),
        "left-open" => Ok(FreeParam::left_open(name, lo, hi)),
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct OptimizeOutput<'a> {
    best_params: &'a EngineParams,
    best_value: f64,
    evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a [(EngineParams, f64)]>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Report { params, numeric, output } => {
            let p = params.resolve()?;
            let rep = if numeric { report_numeric(&p)? } else { report(&p)? };
            emit_json(&output, &rep)
        }
        Command::Sweep { spec, output } => {
            let spec: SweepSpec = serde_json::from_str(&read(&spec)?)
                .map_err(|e| EngineError::Spec(format!("bad sweep spec: {e}")))?;
            emit(&output, sweep(&spec)?.to_csv_string()?.as_bytes())
        }
        Command::Figure { id, params, points, output } => {
            let id: FigureId = id.parse()?;
            let partial = params.partial()?;
            if partial.regime.is_some() {
                return Err(EngineError::Spec("figures fix their own regime; drop --regime".into()));
            }
            let mut overrides = FigureOverrides { points, ..Default::default() };
            for (name, value) in partial.values() {
                if let Some(v) = value {
                    overrides = overrides.with_param(name, v);
                }
            }
            emit(&output, emit_figure(id, &overrides)?.to_csv_string()?.as_bytes())
        }
        Command::KappaMax { params, objective, kappa_lo, kappa_hi, output } => {
            let p = params.resolve()?;
            emit_json(&output, &find_kappa_max(&p, objective, (kappa_lo, kappa_hi))?)
        }
        Command::Optimize { params, free, trace, output } => {
            let p = params.resolve()?;
            let free: Vec<FreeParam> = free.iter().map(|s| parse_free(s)).collect::<Result<_>>()?;
            let r = optimize_negativity(&p, &free)?;
            emit_json(
                &output,
                &OptimizeOutput {
                    best_params: &r.best_params,
                    best_value: r.best_value,
                    evaluations: r.evaluations,
                    trace: trace.then_some(r.trace.as_slice()),
                },
            )
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
