use std::fs;
use std::path::{Path, PathBuf};

use conformal_hodge::domains::ConformalMap;
use conformal_hodge::formats;
use serde::Deserialize;

use crate::failure::{CmdResult, Failure, InputContext};
use crate::{CommonArgs, DynamicsArgs};

pub const DEFAULT_DEGREE: usize = 16;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_DT: f64 = 1e-3;
pub const MAX_DEGREE: usize = 64;

/// Optional run parameters read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub sample_stride: Option<usize>,
    pub degree: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainSel {
    Disk,
    Map(PathBuf),
    Annulus(f64),
    Torus,
    Sphere,
}

impl DomainSel {
    pub fn name(&self) -> &'static str {
        match self {
            DomainSel::Disk => "disk",
            DomainSel::Map(_) => "map",
            DomainSel::Annulus(_) => "annulus",
            DomainSel::Torus => "torus",
            DomainSel::Sphere => "sphere",
        }
    }
}

/// Resolves `--domain` together with `--map` and `--r-in`.
pub fn parse_domain(args: &CommonArgs) -> CmdResult<DomainSel> {
    let d = args.domain.as_str();
    let (head, tail) = match d.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (d, None),
    };
    let sel = match head {
        "disk" => DomainSel::Disk,
        "torus" => DomainSel::Torus,
        "sphere" => DomainSel::Sphere,
        "map" => match (tail, &args.map) {
            (Some(p), _) if !p.is_empty() => DomainSel::Map(PathBuf::from(p)),
            (_, Some(p)) => DomainSel::Map(p.clone()),
            _ => return Err(Failure::input("`--domain map` needs a path (map:<path> or --map)")),
        },
        "annulus" => {
            let r = match (args.r_in, tail) {
                (Some(r), _) => r,
                (None, Some(t)) => t.parse().input_context(format!("inner radius '{t}'"))?,
                (None, None) => return Err(Failure::input("`--domain annulus` needs annulus:<r_in> or --r-in")),
            };
            if !(r > 0.0 && r < 1.0) {
                return Err(Failure::input(format!("inner radius {r} outside (0, 1)")));
            }
            DomainSel::Annulus(r)
        }
        other => return Err(Failure::input(format!("unknown domain '{other}'"))),
    };
    if head == "disk" && args.map.is_some() {
        return Ok(DomainSel::Map(args.map.clone().expect("checked")));
    }
    Ok(sel)
}

pub fn load_config(path: Option<&Path>) -> CmdResult<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).input_context(format!("reading {}", p.display()))?;
            serde_json::from_str(&text).input_context(format!("parsing config {}", p.display()))
        }
    }
}

pub fn read_text(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).input_context(format!("reading {}", path.display()))
}

pub fn require_input(args: &CommonArgs) -> CmdResult<String> {
    match &args.input {
        Some(p) => read_text(p),
        None => Err(Failure::input("this command needs --in <file>")),
    }
}

pub fn load_map(path: &Path) -> CmdResult<ConformalMap> {
    let text = read_text(path)?;
    formats::map_from_json(&text).map_err(|e| {
        Failure::Input(anyhow::Error::from(e).context(format!("map {}", path.display())))
    })
}

/// Degree and tolerance after applying flags over the config file.
#[derive(Debug, Clone, Copy)]
pub struct Basic {
    pub degree: usize,
    pub tol: f64,
}

pub fn basic(args: &CommonArgs, cfg: &FileConfig) -> CmdResult<Basic> {
    let degree = args.degree.or(cfg.degree).unwrap_or(DEFAULT_DEGREE);
    if !(1..=MAX_DEGREE).contains(&degree) {
        return Err(Failure::input(format!("degree {degree} outside 1..={MAX_DEGREE}")));
    }
    let tol = args.tol.or(cfg.tol).unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::input(format!("tolerance {tol} must be positive")));
    }
    Ok(Basic { degree, tol })
}

#[derive(Debug, Clone, Copy)]
pub struct Stepping {
    pub dt: f64,
    pub steps: usize,
    pub sample_stride: usize,
}

pub fn stepping(dy: &DynamicsArgs, cfg: &FileConfig, steps: usize, stride: usize) -> CmdResult<Stepping> {
    let dt = dy.dt.or(cfg.dt).unwrap_or(DEFAULT_DT);
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Failure::input(format!("time step {dt} must be positive")));
    }
    let sample_stride = dy.sample_stride.or(cfg.sample_stride).unwrap_or(stride);
    if sample_stride == 0 {
        return Err(Failure::input("sample stride must be positive"));
    }
    Ok(Stepping {
        dt,
        steps: dy.steps.or(cfg.steps).unwrap_or(steps),
        sample_stride,
    })
}
