//! Flat `key = value` config for the `weak` subcommand.
//!
//! ```text
//! # system (dimension taken from `pre`)
//! pre = 1, 1              # amplitudes, normalized on load; or `random`
//! post = 0.6, 0.8         # or `random`
//! obs = sigma_z           # sigma_x | sigma_y | sigma_z | diag a, b, ... | row-major entries | random
//! # pointer
//! pointer = vacuum        # vacuum | coherent
//! z = 0+2i                # coherent amplitude
//! trunc = 64
//! generator = P           # Q | P | H0 | g | k | N
//! measure = Q, P          # observables whose shifts are reported
//! eps = 1e-3
//! seed = 7                # for `random` entries; QPL_SEED and --seed override
//! ```

use std::collections::BTreeMap;

use qpl_core::{Ket, Operator, C64};

use crate::error::{CliError, CliResult};
use crate::parse;

pub const KEYS: [&str; 10] = ["pre", "post", "obs", "pointer", "z", "trunc", "generator", "measure", "eps", "seed"];

#[derive(Clone, Debug, PartialEq)]
pub enum Amplitudes {
    Given(Vec<C64>),
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ObsSource {
    Named(String),
    Diagonal(Vec<f64>),
    Entries(Vec<C64>),
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointerKind {
    Vacuum,
    Coherent(C64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakFile {
    pub pre: Amplitudes,
    pub post: Amplitudes,
    pub obs: ObsSource,
    pub pointer: PointerKind,
    pub trunc: usize,
    pub generator: String,
    pub measure: Vec<String>,
    pub eps: f64,
    pub seed: Option<u64>,
    /// The key/value pairs as read, for echoing.
    pub raw: BTreeMap<String, String>,
}

pub const GENERATORS: [&str; 6] = ["Q", "P", "H0", "g", "k", "N"];

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

pub fn parse_pairs(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| usage(format!("line {}: expected key = value", lineno + 1)))?;
        let k = k.trim().to_string();
        if !KEYS.contains(&k.as_str()) {
            return Err(usage(format!("line {}: unknown key '{k}'", lineno + 1)));
        }
        if out.insert(k.clone(), v.trim().to_string()).is_some() {
            return Err(usage(format!("line {}: duplicate key '{k}'", lineno + 1)));
        }
    }
    Ok(out)
}

fn amplitudes(v: &str) -> CliResult<Amplitudes> {
    if v == "random" {
        Ok(Amplitudes::Random)
    } else {
        Ok(Amplitudes::Given(parse::complex_list(v)?))
    }
}

fn obs_source(v: &str) -> CliResult<ObsSource> {
    match v {
        "sigma_x" | "sigma_y" | "sigma_z" => Ok(ObsSource::Named(v.to_string())),
        "random" => Ok(ObsSource::Random),
        _ => match v.strip_prefix("diag") {
            Some(rest) => Ok(ObsSource::Diagonal(parse::real_list(rest)?)),
            None => Ok(ObsSource::Entries(parse::complex_list(v)?)),
        },
    }
}

pub fn parse(text: &str) -> CliResult<WeakFile> {
    let raw = parse_pairs(text)?;
    let need = |k: &str| raw.get(k).ok_or_else(|| usage(format!("missing key '{k}'")));
    let pre = amplitudes(need("pre")?)?;
    let post = amplitudes(need("post")?)?;
    let obs = obs_source(need("obs")?)?;
    let pointer = match raw.get("pointer").map(String::as_str).unwrap_or("vacuum") {
        "vacuum" => PointerKind::Vacuum,
        "coherent" => PointerKind::Coherent(parse::complex(need("z")?)?),
        other => return Err(usage(format!("unknown pointer '{other}'"))),
    };
    let trunc = match raw.get("trunc") {
        Some(t) => t.parse().map_err(|_| usage(format!("bad trunc '{t}'")))?,
        None => qpl_core::fock::DEFAULT_TRUNC,
    };
    let generator = raw.get("generator").cloned().unwrap_or_else(|| "P".into());
    if !GENERATORS.contains(&generator.as_str()) {
        return Err(usage(format!("unknown generator '{generator}'")));
    }
    let measure: Vec<String> = match raw.get("measure") {
        Some(m) => m.split(',').map(|s| s.trim().to_string()).collect(),
        None => vec!["Q".into(), "P".into()],
    };
    if let Some(bad) = measure.iter().find(|m| !GENERATORS.contains(&m.as_str())) {
        return Err(usage(format!("unknown observable '{bad}'")));
    }
    let eps = match raw.get("eps") {
        Some(e) => e.parse().map_err(|_| usage(format!("bad eps '{e}'")))?,
        None => qpl_core::weak::DEFAULT_EPS,
    };
    let seed = match raw.get("seed") {
        Some(s) => Some(s.parse().map_err(|_| usage(format!("bad seed '{s}'")))?),
        None => None,
    };
    Ok(WeakFile { pre, post, obs, pointer, trunc, generator, measure, eps, seed, raw })
}

pub fn named_obs(name: &str) -> Operator {
    let (z, o, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
    let e = match name {
        "sigma_x" => [z, o, o, z],
        "sigma_y" => [z, -i, i, z],
        _ => [o, z, z, -o],
    };
    Operator::from_rows(2, &e).expect("2x2")
}

pub fn build_ket<R: rand::Rng>(a: &Amplitudes, dim: usize, rng: &mut R) -> CliResult<Ket> {
    match a {
        Amplitudes::Given(v) => {
            if v.len() != dim {
                return Err(usage(format!("expected {dim} amplitudes, got {}", v.len())));
            }
            Ok(Ket::new(v.clone())?.normalized()?)
        }
        Amplitudes::Random => Ok(qpl_core::random::ket(rng, dim)),
    }
}

pub fn build_obs<R: rand::Rng>(o: &ObsSource, dim: usize, rng: &mut R) -> CliResult<Operator> {
    let op = match o {
        ObsSource::Named(n) => {
            if dim != 2 {
                return Err(usage(format!("{n} needs a 2-level system, got {dim}")));
            }
            named_obs(n)
        }
        ObsSource::Diagonal(d) => {
            if d.len() != dim {
                return Err(usage(format!("expected {dim} diagonal entries, got {}", d.len())));
            }
            Operator::real_diagonal(d)
        }
        ObsSource::Entries(e) => Operator::from_rows(dim, e)?,
        ObsSource::Random => qpl_core::random::hermitian(rng, dim),
    };
    let d = op.hermiticity_defect();
    if d > 1e-10 {
        return Err(usage(format!("observable is not hermitian (defect {d:e})")));
    }
    Ok(op)
}

/// Dimension implied by the config, from the first explicit entry.
pub fn system_dim(f: &WeakFile) -> usize {
    for a in [&f.pre, &f.post] {
        if let Amplitudes::Given(v) = a {
            return v.len();
        }
    }
    match &f.obs {
        ObsSource::Diagonal(d) => d.len(),
        ObsSource::Entries(e) => (e.len() as f64).sqrt().round() as usize,
        _ => 2,
    }
}
