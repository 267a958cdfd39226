use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every command. Any of them may also come from a
/// `--config` file of `key = value` lines; flags on the command line win.
#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// Base q as `re` or `re,im`
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Spiral parameter lambda as `re` or `re,im`
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Evaluation point as `re` or `re,im`
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Grid `re_min,re_max,im_min,im_max,steps_re,steps_im`
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Function name (eval, scan)
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// Identity or audit target name
    #[arg(long)]
    pub id: Option<String>,
    /// Numerator parameters of phi, `;`-separated
    #[arg(long, allow_hyphen_values = true)]
    pub upper: Option<String>,
    /// Denominator parameters of phi, `;`-separated
    #[arg(long, allow_hyphen_values = true)]
    pub lower: Option<String>,
    /// Number of zeros in resum_rf0 (omit for resum_2f0)
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for generated point sets
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of generated points
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Flat `key = value` file with defaults for the flags above
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 14] = [
    "q", "lambda", "x", "grid", "fn", "id", "upper", "lower", "r", "tol", "seed", "points", "output", "format",
];

fn parse_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(CliError::Usage(format!("config line {}: unknown key {k:?}", i + 1)));
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn fill<T>(slot: &mut Option<T>, map: &BTreeMap<String, String>, key: &str, parse: impl Fn(&str) -> Result<T, CliError>) -> Result<(), CliError> {
    if slot.is_none() {
        if let Some(v) = map.get(key) {
            *slot = Some(parse(v)?);
        }
    }
    Ok(())
}

fn num<T: std::str::FromStr>(key: &'static str) -> impl Fn(&str) -> Result<T, CliError> {
    move |s| s.parse().map_err(|_| CliError::Usage(format!("config: bad value {s:?} for {key}")))
}

impl Opts {
    /// Fills unset flags from the config file, if one was given.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let map = parse_config(&path)?;
        let s = |v: &str| Ok(v.to_string());
        fill(&mut self.q, &map, "q", s)?;
        fill(&mut self.lambda, &map, "lambda", s)?;
        fill(&mut self.x, &map, "x", s)?;
        fill(&mut self.grid, &map, "grid", s)?;
        fill(&mut self.function, &map, "fn", s)?;
        fill(&mut self.id, &map, "id", s)?;
        fill(&mut self.upper, &map, "upper", s)?;
        fill(&mut self.lower, &map, "lower", s)?;
        fill(&mut self.r, &map, "r", num("r"))?;
        fill(&mut self.tol, &map, "tol", num("tol"))?;
        fill(&mut self.seed, &map, "seed", num("seed"))?;
        fill(&mut self.points, &map, "points", num("points"))?;
        fill(&mut self.output, &map, "output", |v| Ok(PathBuf::from(v)))?;
        fill(&mut self.format, &map, "format", |v| {
            Format::from_str(v, true).map_err(|_| CliError::Usage(format!("config: bad format {v:?}")))
        })?;
        Ok(self)
    }

    pub fn q(&self) -> Result<Complex64, CliError> {
        let s = self.q.as_deref().ok_or_else(|| CliError::Usage("missing --q".into()))?;
        parse_complex(s)
    }

    pub fn lambda(&self) -> Result<Option<Complex64>, CliError> {
        self.lambda.as_deref().map(parse_complex).transpose()
    }

    pub fn need_lambda(&self, what: &str) -> Result<Complex64, CliError> {
        self.lambda()?.ok_or_else(|| CliError::Usage(format!("{what} needs --lambda")))
    }

    /// Points from `--x` or `--grid`, in grid order.
    pub fn xs(&self) -> Result<Option<Vec<Complex64>>, CliError> {
        match (&self.x, &self.grid) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either --x or --grid, not both".into())),
            (Some(x), None) => Ok(Some(vec![parse_complex(x)?])),
            (None, Some(g)) => Ok(Some(Grid::parse(g)?.points())),
            (None, None) => Ok(None),
        }
    }

    pub fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Parses `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse complex number {s:?}; use re or re,im"));
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// `;`-separated list of complex numbers; empty string is the empty list.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(';').map(str::trim).filter(|p| !p.is_empty()).map(parse_complex).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub steps_re: usize,
    pub steps_im: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Usage(format!("malformed grid {s:?}: {why}"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(bad("expected re_min,re_max,im_min,im_max,steps_re,steps_im"));
        }
        let f: Vec<f64> = parts[..4]
            .iter()
            .map(|p| p.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("bounds must be finite numbers"))?;
        let n: Vec<usize> = parts[4..]
            .iter()
            .map(|p| p.parse().ok())
            .collect::<Option<_>>()
            .ok_or_else(|| bad("steps must be non-negative integers"))?;
        if n[0] < 1 || n[1] < 1 {
            return Err(bad("steps must be >= 1"));
        }
        if f[1] < f[0] || f[3] < f[2] {
            return Err(bad("min must not exceed max"));
        }
        Ok(Self { re: (f[0], f[1]), im: (f[2], f[3]), steps_re: n[0], steps_im: n[1] })
    }

    fn axis((lo, hi): (f64, f64), n: usize, i: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    }

    /// Row-major: real part outer, imaginary part inner.
    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.steps_re * self.steps_im);
        for i in 0..self.steps_re {
            for j in 0..self.steps_im {
                out.push(Complex64::new(
                    Self::axis(self.re, self.steps_re, i),
                    Self::axis(self.im, self.steps_im, j),
                ));
            }
        }
        out
    }
}
