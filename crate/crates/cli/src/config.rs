//! Experiment configuration: a flat JSON document whose keys mirror the
//! command-line flags. Flags override file values.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Trace,
    Cardy,
    Touch,
    SameSwallow,
    Dim,
    Zigzag1,
    Zigzag2,
    DipolarAvoid,
    Restriction,
    AnnularBoundary,
    Martingale,
    VirasoroCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Accepts plain reals and fractions such as `8/3`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => Ok(parse(n)? / parse(d)?),
        None => parse(s),
    }
}

macro_rules! config {
    ($($(#[$m:meta])* $name:ident : $ty:ty),* $(,)?) => {
        #[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, Args)]
        #[serde(deny_unknown_fields)]
        pub struct ExperimentConfig {
            /// Experiment to run.
            #[arg(value_enum)]
            #[serde(default, skip_serializing_if = "Option::is_none")]
            pub command: Option<Command>,
            $(
                $(#[$m])*
                #[serde(default, skip_serializing_if = "Option::is_none")]
                pub $name: Option<$ty>,
            )*
        }
    };
}

config! {
    #[arg(long, value_parser = parse_real)]
    kappa: f64,
    #[arg(long, value_parser = parse_real)]
    dt: f64,
    /// Number of Monte Carlo samples.
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    workers: usize,
    /// Time horizon T.
    #[arg(long, value_parser = parse_real)]
    horizon: f64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Format,
    #[arg(long, value_parser = parse_real)]
    a: f64,
    #[arg(long, value_parser = parse_real)]
    b: f64,
    #[arg(long, value_parser = parse_real)]
    x: f64,
    #[arg(long = "X", value_parser = parse_real)]
    #[serde(rename = "X")]
    big_x: f64,
    #[arg(long, value_parser = parse_real)]
    y: f64,
    #[arg(long, value_parser = parse_real, value_delimiter = ',')]
    dxs: Vec<f64>,
    #[arg(long, value_parser = parse_real, value_delimiter = ',')]
    epsilons: Vec<f64>,
    #[arg(long, value_parser = parse_real, value_delimiter = ',')]
    deltas: Vec<f64>,
    #[arg(long, value_parser = parse_real, value_delimiter = ',')]
    times: Vec<f64>,
    #[arg(long, value_parser = parse_real)]
    z0_re: f64,
    #[arg(long, value_parser = parse_real)]
    z0_im: f64,
    /// `semi_disk` or `vertical_slit`.
    #[arg(long)]
    hull: String,
    #[arg(long, value_parser = parse_real)]
    hull_x: f64,
    /// Radius of the semi-disk or height of the slit.
    #[arg(long, value_parser = parse_real)]
    hull_size: f64,
    /// Restriction flow step factor.
    #[arg(long, value_parser = parse_real)]
    eta: f64,
    /// `chordal`, `radial` or `dipolar`.
    #[arg(long)]
    geometry: String,
    #[arg(long)]
    steps: usize,
    /// Constant driver value instead of a Brownian driver.
    #[arg(long, value_parser = parse_real)]
    driver: f64,
    #[arg(long)]
    stride: usize,
    /// Annulus modulus.
    #[arg(long, value_parser = parse_real)]
    p: f64,
    /// Lattice-sum truncation.
    #[arg(long)]
    trunc: usize,
    /// `outer` or `inner`.
    #[arg(long)]
    boundary: String,
    #[arg(long, value_parser = parse_real)]
    angle: f64,
    /// Polynomial in the coefficients, e.g. `f1^2 - 3*f2`.
    #[arg(long)]
    poly: String,
    #[arg(long)]
    grade: u32,
}

impl ExperimentConfig {
    pub fn from_json(src: &str) -> Result<ExperimentConfig, CliError> {
        serde_json::from_str(src).map_err(|e| CliError::Domain(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// `self` with every field set in `over` replaced.
    pub fn overlay(&self, over: &ExperimentConfig) -> ExperimentConfig {
        let mut base = to_map(self);
        base.extend(to_map(over));
        serde_json::from_value(Value::Object(base)).expect("merged config deserializes")
    }

    pub fn command(&self) -> Result<Command, CliError> {
        self.command.ok_or_else(|| CliError::Domain("no command given".into()))
    }

    /// The configuration with every parameter the command reads filled in,
    /// defaults included. This is what output files echo.
    pub fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        use Command::*;
        let cmd = self.command()?;
        let mut c = self.clone();
        c.out = None;
        let mc = |c: &mut ExperimentConfig, dt: f64, horizon: f64| {
            c.dt.get_or_insert(dt);
            c.samples.get_or_insert(10_000);
            c.seed.get_or_insert(0);
            c.workers.get_or_insert(1);
            c.horizon.get_or_insert(horizon);
        };
        let far = 1e30;
        c.format.get_or_insert(if cmd == Trace { Format::Svg } else { Format::Json });
        match cmd {
            Trace => {
                c.geometry.get_or_insert_with(|| "chordal".into());
                c.dt.get_or_insert(1e-3);
                c.steps.get_or_insert(1000);
                c.seed.get_or_insert(0);
                if c.driver.is_none() {
                    c.kappa.get_or_insert(6.0);
                }
                let n = c.steps.unwrap();
                c.stride.get_or_insert((n / 500).max(1));
            }
            Cardy => {
                c.kappa.get_or_insert(6.0);
                c.a.get_or_insert(-1.0);
                c.b.get_or_insert(1.0);
                mc(&mut c, 1e-4, far);
            }
            Touch | SameSwallow => {
                c.kappa.get_or_insert(6.0);
                c.x.get_or_insert(1.0);
                c.big_x.get_or_insert(2.0);
                mc(&mut c, 1e-4, far);
            }
            Dim => {
                c.kappa.get_or_insert(6.0);
                c.z0_re.get_or_insert(0.0);
                c.z0_im.get_or_insert(1.0);
                c.epsilons.get_or_insert_with(|| vec![0.2, 0.126, 0.08, 0.05, 0.032, 0.02]);
                mc(&mut c, 1e-3, far);
            }
            Zigzag1 => {
                c.kappa.get_or_insert(6.0);
                c.x.get_or_insert(1.0);
                c.dxs.get_or_insert_with(|| vec![1e-3, 3e-3, 1e-2, 3e-2, 1e-1]);
                mc(&mut c, 1e-3, far);
            }
            Zigzag2 => {
                c.kappa.get_or_insert(6.0);
                c.x.get_or_insert(1.0);
                c.big_x.get_or_insert(2.0);
                c.y.get_or_insert(-1.0);
                mc(&mut c, 1e-3, far);
            }
            DipolarAvoid => {
                c.kappa.get_or_insert(6.0);
                c.deltas.get_or_insert_with(|| vec![1e-1, 1e-2, 1e-3]);
                mc(&mut c, 2e-3, 2.0);
            }
            Restriction => {
                c.kappa = Some(8.0 / 3.0);
                c.hull.get_or_insert_with(|| "semi_disk".into());
                c.hull_x.get_or_insert(2.0);
                c.hull_size.get_or_insert(1.0);
                c.eta.get_or_insert(sle_core::estimators::RestrictionTuning::default().eta);
                mc(&mut c, 1e-3, far);
            }
            AnnularBoundary => {
                c.kappa.get_or_insert(6.0);
                c.p.get_or_insert(2.0);
                c.trunc.get_or_insert(40);
                c.boundary.get_or_insert_with(|| "outer".into());
                c.angle.get_or_insert(PI / 2.0);
                c.dt.get_or_insert(1e-3);
                c.steps.get_or_insert(1000);
                c.seed.get_or_insert(0);
            }
            Martingale => {
                c.kappa.get_or_insert(6.0);
                c.poly.get_or_insert_with(|| "f1".into());
                c.times.get_or_insert_with(|| vec![0.25, 0.5, 1.0]);
                let t_max = c.times.as_ref().unwrap().iter().copied().fold(0.0, f64::max);
                mc(&mut c, 1e-3, t_max.max(f64::MIN_POSITIVE));
            }
            VirasoroCheck => {
                c.kappa.get_or_insert(6.0);
                c.grade.get_or_insert(4);
                c.p.get_or_insert(2.0);
                c.trunc.get_or_insert(40);
            }
        }
        Ok(c)
    }
}

fn to_map(c: &ExperimentConfig) -> Map<String, Value> {
    match serde_json::to_value(c).expect("config serializes") {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}
