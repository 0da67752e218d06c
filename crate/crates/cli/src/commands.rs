use std::path::{Path, PathBuf};

use conformal_hodge::disk_calculus::{
    adjoint_dz_disk, conformal_decompose, helmholtz_decompose, project_con_rule, symplectic_decompose,
    DecompositionKind,
};
use conformal_hodge::domains::{
    adjoint_dz_mapped, annulus_classify, annulus_project_con, flat_map, hodge_catalog, hodge_membership_annulus,
    hodge_membership_disk, hodge_membership_torus, project_con_mapped, torus_project_con, ConformalMap, HodgeDomain,
    MembershipReport, TorusField,
};
use conformal_hodge::dynamics::{
    geodesic_integrate, stationary_solve, wave_integrate, wave_mode_solution, Domain, GeodesicConfig, GeodesicState,
    PotentialSpec, StationaryConfig, WaveConfig, WaveState,
};
use conformal_hodge::formats::{self, FieldJson};
use conformal_hodge::quadrature::QuadratureSpec;
use conformal_hodge::selftest::{run_self_test, SelfTestOptions};
use conformal_hodge::{BivariateField, HolomorphicSeries};
use serde_json::json;

use crate::expr::parse_series;
use crate::failure::{CmdResult, Failure, InputContext};
use crate::output::{emit, Table};
use crate::settings::{self, basic, load_config, load_map, parse_domain, require_input, stepping, DomainSel};
use crate::{Command, CommonArgs, DynamicsArgs};

pub fn run(cmd: Command) -> CmdResult<u8> {
    match cmd {
        Command::Project(c) => project(&c),
        Command::Decompose { common, kind } => decompose(&common, &kind),
        Command::Adjoint(c) => adjoint(&c),
        Command::Classify(c) => classify(&c),
        Command::Catalog(c) => catalog(&c),
        Command::Stationary {
            common,
            dynamics,
            max_iter,
        } => stationary(&common, &dynamics, max_iter),
        Command::Wave { common, dynamics } => wave(&common, &dynamics),
        Command::Geodesic {
            common,
            dynamics,
            work_degree,
            min_deriv_floor,
        } => geodesic(&common, &dynamics, work_degree, min_deriv_floor),
        Command::Check {
            quadrature,
            inject_moment_perturbation,
        } => check(&quadrature, inject_moment_perturbation),
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn read_field(text: &str) -> CmdResult<BivariateField> {
    Ok(formats::field_from_json(text)?)
}

fn read_holomorphic(text: &str, tol: f64) -> CmdResult<HolomorphicSeries> {
    let f = read_field(text)?;
    Ok(f.to_holomorphic(tol * f.max_abs_coeff().max(1.0))?)
}

fn field_value(f: &BivariateField) -> serde_json::Value {
    serde_json::to_value(FieldJson::from(f)).expect("plain data serializes")
}

fn project(args: &CommonArgs) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    let cfg = load_config(args.config.as_deref())?;
    let b = basic(args, &cfg)?;
    let text = match domain {
        DomainSel::Sphere => return Err(Failure::incompatible("project", "sphere")),
        _ => require_input(args)?,
    };
    let out = match &domain {
        DomainSel::Disk => formats::holomorphic_to_json(&project_con_rule(&read_field(&text)?)),
        DomainSel::Map(p) => {
            let map = load_map(p)?;
            formats::holomorphic_to_json(&project_con_mapped(&map, &read_field(&text)?, b.degree)?)
        }
        DomainSel::Annulus(r) => {
            let f = formats::laurent_from_json(&text)?;
            check_radius(f.r_in(), *r)?;
            let (p, dropped) = annulus_project_con(&f, f.band());
            if dropped > 0 {
                log::warn!("{dropped} Laurent modes fell outside the band and were dropped");
            }
            formats::laurent_to_json(&p)
        }
        DomainSel::Torus => {
            let f = formats::torus_from_json(&text)?;
            let p = torus_project_con(&f);
            formats::torus_to_json(&TorusField::constant(p.c_theta, p.c_phi, f.band()))
        }
        DomainSel::Sphere => unreachable!("rejected above"),
    };
    emit(args.out.as_deref(), &out)?;
    Ok(0)
}

fn check_radius(file: f64, flag: f64) -> CmdResult<()> {
    if file != flag {
        return Err(Failure::input(format!(
            "input field has r_in = {file} but the domain selects r_in = {flag}"
        )));
    }
    Ok(())
}

fn decompose(args: &CommonArgs, kind: &str) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    if domain != DomainSel::Disk {
        return Err(Failure::incompatible("decompose", domain.name()));
    }
    let kind: DecompositionKind = kind.parse()?;
    let f = read_field(&require_input(args)?)?;
    let d = match kind {
        DecompositionKind::Conformal => conformal_decompose(&f),
        DecompositionKind::Helmholtz => helmholtz_decompose(&f),
        DecompositionKind::Symplectic => symplectic_decompose(&f),
    };
    emit(args.out.as_deref(), &formats::decomposition_to_json(&d))?;
    Ok(0)
}

fn adjoint(args: &CommonArgs) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    let cfg = load_config(args.config.as_deref())?;
    let b = basic(args, &cfg)?;
    let result = match &domain {
        DomainSel::Disk => {
            let h = read_holomorphic(&require_input(args)?, b.tol)?;
            let t = adjoint_dz_disk(&h, b.degree);
            if t.dropped_norm > 0.0 {
                log::warn!("adjoint truncated at degree {} (dropped norm {:.3e})", b.degree, t.dropped_norm);
            }
            t.value
        }
        DomainSel::Map(p) => {
            let map = load_map(p)?;
            let h = read_holomorphic(&require_input(args)?, b.tol)?;
            adjoint_dz_mapped(&map, &h, b.degree)?
        }
        other => return Err(Failure::incompatible("adjoint", other.name())),
    };
    emit(args.out.as_deref(), &formats::holomorphic_to_json(&result))?;
    Ok(0)
}

fn report_value(r: &MembershipReport) -> serde_json::Value {
    json!({
        "labels": r.labels(),
        "conclusive": r.is_conclusive(),
        "report": r,
    })
}

/// Disk fields are read as `f♭`; annulus fields as `Im(h dz) = ⋆(h♭)`, the reading under
/// which `1/z` is the co-exact harmonic generator and `i/z` the exact one.
fn classify(args: &CommonArgs) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    let cfg = load_config(args.config.as_deref())?;
    let b = basic(args, &cfg)?;
    let value = match &domain {
        DomainSel::Disk => {
            let f = read_field(&require_input(args)?)?;
            let mut v = report_value(&hodge_membership_disk(&flat_map(&f), b.tol));
            v["domain"] = json!("disk");
            v
        }
        DomainSel::Annulus(r) => {
            let h = formats::laurent_from_json(&require_input(args)?)?;
            check_radius(h.r_in(), *r)?;
            let mut v = report_value(&hodge_membership_annulus(&flat_map(&h).star(), b.tol));
            v["domain"] = json!("annulus");
            v["reading"] = json!("Im(h dz)");
            if let Ok(c) = annulus_classify(&h, b.tol) {
                v["coordinates"] = json!({
                    "a4": c.a4_coeff,
                    "a5": c.a5_coeff,
                    "a6_part": serde_json::from_str::<serde_json::Value>(&formats::laurent_to_json(&c.a6_part))
                        .expect("valid JSON"),
                });
            }
            v
        }
        DomainSel::Torus => {
            let f = formats::torus_from_json(&require_input(args)?)?;
            let m = hodge_membership_torus(&f, b.tol);
            let mut v = report_value(&m.report);
            v["domain"] = json!("torus");
            v["coordinates"] = json!({ "c_theta": m.c_theta, "c_phi": m.c_phi });
            v
        }
        other => return Err(Failure::incompatible("classify", other.name())),
    };
    emit(args.out.as_deref(), &json_text(&value))?;
    Ok(0)
}

fn catalog(args: &CommonArgs) -> CmdResult<u8> {
    let domain = match args.domain.split(':').next().unwrap_or("") {
        "map" => HodgeDomain::Disk,
        other => other.parse::<HodgeDomain>()?,
    };
    let entry = hodge_catalog(domain);
    let dims: Vec<String> = entry.dims.iter().map(|d| d.to_string()).collect();
    let value = json!({
        "domain": entry.domain,
        "A1": dims[0], "A2": dims[1], "A3": dims[2],
        "A4": dims[3], "A5": dims[4], "A6": dims[5],
    });
    let text = json_text(&value);
    if let Some(p) = &args.out {
        emit(Some(p), &text)?;
    }
    print!("{text}");
    Ok(0)
}

fn potential(dy: &DynamicsArgs) -> CmdResult<PotentialSpec> {
    match (&dy.potential, dy.c) {
        (Some(p), _) => {
            let v = read_field(&settings::read_text(p)?)?;
            Ok(PotentialSpec::polynomial(v)?)
        }
        (None, c) => Ok(PotentialSpec::Quadratic { c: c.unwrap_or(0.0) }),
    }
}

/// Series from an expression, or from a field JSON file when the argument names one.
fn series_arg(arg: &str, budget: usize, tol: f64) -> CmdResult<HolomorphicSeries> {
    let path = Path::new(arg);
    if path.is_file() {
        let h = read_holomorphic(&settings::read_text(path)?, tol)?;
        if h.degree().unwrap_or(0) > budget {
            return Err(Failure::input(format!("{arg}: degree exceeds the budget {budget}")));
        }
        return Ok(h.resized(budget).value);
    }
    parse_series(arg, budget).map_err(|e| Failure::input(format!("--xi0/--xidot0 '{arg}': {e}")))
}

fn initial_xi(args: &CommonArgs, dy: &DynamicsArgs, budget: usize, tol: f64) -> CmdResult<Option<HolomorphicSeries>> {
    match (&dy.xi0, &args.input) {
        (Some(s), _) => series_arg(s, budget, tol).map(Some),
        (None, Some(p)) => series_arg(&p.to_string_lossy(), budget, tol).map(Some),
        (None, None) => Ok(None),
    }
}

/// Trajectory CSV to `--out` (or stdout); summary JSON to `--summary`, `<out>.summary.json` or stderr.
fn write_outputs(args: &CommonArgs, dy: &DynamicsArgs, csv: String, summary: &serde_json::Value) -> CmdResult<()> {
    emit(args.out.as_deref(), &csv)?;
    let text = json_text(summary);
    let summary_path: Option<PathBuf> = dy.summary.clone().or_else(|| {
        args.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".summary.json");
            PathBuf::from(s)
        })
    });
    match summary_path {
        Some(p) => emit(Some(&p), &text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn coeff_header(prefix: &str, budget: usize) -> Vec<String> {
    (0..=budget)
        .flat_map(|k| [format!("{prefix}{k}_re"), format!("{prefix}{k}_im")])
        .collect()
}

fn push_coeffs(row: &mut Vec<f64>, s: &HolomorphicSeries, budget: usize) {
    for k in 0..=budget {
        let c = s.coeff(k);
        row.push(c.re);
        row.push(c.im);
    }
}

/// `log₂(‖x₁ − x₂‖ / ‖x₂ − x₄‖)` from final states at `dt`, `dt/2`, `dt/4`.
fn observed_order(x1: &[f64], x2: &[f64], x4: &[f64]) -> Option<f64> {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
    let (e1, e2) = (dist(x1, x2), dist(x2, x4));
    (e1 > 0.0 && e2 > 0.0).then(|| (e1 / e2).log2())
}

fn stationary(args: &CommonArgs, dy: &DynamicsArgs, max_iter: usize) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    let cfg = load_config(args.config.as_deref())?;
    let b = basic(args, &cfg)?;
    let map = match &domain {
        DomainSel::Disk => None,
        DomainSel::Map(p) => Some(load_map(p)?),
        other => return Err(Failure::incompatible("stationary", other.name())),
    };
    let dom = match &map {
        Some(m) => Domain::Mapped(m),
        None => Domain::Disk,
    };
    let v = potential(dy)?;
    let init = initial_xi(args, dy, b.degree, b.tol)?.unwrap_or_else(|| HolomorphicSeries::zero(b.degree));
    let sc = StationaryConfig {
        tol: b.tol,
        max_iter,
        damping: 1.0,
    };
    let sol = stationary_solve(&v, &init, &sc, &dom)?;

    let mut header = vec!["iteration".to_string()];
    header.extend(coeff_header("xi", b.degree));
    header.push("residual".into());
    let mut table = Table::new(&header);
    for (i, it) in sol.history.iter().enumerate() {
        let mut row = vec![i as f64];
        push_coeffs(&mut row, &it.xi, b.degree);
        row.push(it.residual_norm);
        table.row(&row);
    }
    let summary = json!({
        "command": "stationary",
        "domain": domain.name(),
        "converged": sol.converged,
        "iterations": sol.iterations,
        "final_residual": sol.residual_norm,
        "tol": b.tol,
        "multiplier_boundary_trace": sol.multipliers.as_ref().map(|m| m.boundary_trace(256)),
        "xi": field_value(&sol.xi.to_field()),
    });
    write_outputs(args, dy, table.into_string(), &summary)?;
    if !sol.converged {
        return Err(Failure::Numerical(anyhow::anyhow!(
            "stationary solve did not converge in {} iterations (residual {:.3e})",
            sol.iterations,
            sol.residual_norm
        )));
    }
    Ok(0)
}

fn wave(args: &CommonArgs, dy: &DynamicsArgs) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    if domain != DomainSel::Disk {
        return Err(Failure::incompatible("wave", domain.name()));
    }
    let cfg = load_config(args.config.as_deref())?;
    let b = basic(args, &cfg)?;
    let st = stepping(dy, &cfg, 10_000, 100)?;
    let v = potential(dy)?;
    let xi0 = initial_xi(args, dy, b.degree, b.tol)?.ok_or_else(|| Failure::input("wave needs --xi0 or --in"))?;
    let xidot0 = match &dy.xidot0 {
        Some(s) => series_arg(s, b.degree, b.tol)?,
        None => HolomorphicSeries::zero(b.degree),
    };
    let state0 = WaveState::new(xi0, xidot0, 0.0);
    let wc = WaveConfig {
        dt: st.dt,
        steps: st.steps,
        sample_stride: st.sample_stride,
        ..WaveConfig::default()
    };
    let tr = wave_integrate(&state0, &v, &wc)?;

    let c = v.quadratic_c();
    let mut header = vec!["t".to_string()];
    header.extend(coeff_header("xi", b.degree));
    if c.is_some() {
        header.extend((0..=b.degree).map(|m| format!("I{m}")));
    }
    let mut table = Table::new(&header);
    for s in &tr.samples {
        let mut row = vec![s.state.t];
        push_coeffs(&mut row, &s.state.xi, b.degree);
        if let Some(r) = &s.integrals {
            row.extend_from_slice(&r.values);
        }
        table.row(&row);
    }

    let mut summary = json!({
        "command": "wave",
        "dt": st.dt,
        "steps": st.steps,
        "t_final": tr.last().t,
    });
    if let Some(c) = c {
        let first = tr.samples[0].integrals.as_ref().expect("quadratic potential records integrals");
        let drift: Vec<serde_json::Value> = (0..=b.degree)
            .map(|m| {
                let i0 = first.values[m];
                let worst = tr
                    .samples
                    .iter()
                    .filter_map(|s| s.integrals.as_ref())
                    .map(|r| (r.values[m] - i0).abs())
                    .fold(0.0, f64::max);
                let relative = i0 != 0.0;
                json!({
                    "m": m,
                    "initial": i0,
                    "max_drift": if relative { worst / i0.abs() } else { worst },
                    "relative": relative,
                })
            })
            .collect();
        let mut mode_err = 0.0f64;
        for s in &tr.samples {
            for m in 0..=b.degree {
                let (x, _) = wave_mode_solution(m as u32, c, state0.xi.coeff(m), state0.xi_t.coeff(m), s.state.t);
                mode_err = mode_err.max((s.state.xi.coeff(m) - x).norm());
            }
        }
        summary["integral_drift"] = json!(drift);
        summary["final_residual"] = json!(mode_err);
        summary["final_residual_kind"] = json!("max |xi_m - closed form| over samples");
    }
    if dy.halve_dt {
        let finals: Vec<Vec<f64>> = [1usize, 2, 4]
            .iter()
            .map(|&k| {
                let cfg_k = WaveConfig {
                    dt: st.dt / k as f64,
                    steps: st.steps * k,
                    sample_stride: st.steps * k,
                    ..wc
                };
                let t = wave_integrate(&state0, &v, &cfg_k)?;
                let mut x = Vec::new();
                push_coeffs(&mut x, &t.last().xi, b.degree);
                Ok(x)
            })
            .collect::<CmdResult<_>>()?;
        summary["convergence_order"] = json!(observed_order(&finals[0], &finals[1], &finals[2]));
    }
    write_outputs(args, dy, table.into_string(), &summary)?;
    Ok(0)
}

fn geodesic(args: &CommonArgs, dy: &DynamicsArgs, work: Option<usize>, floor: f64) -> CmdResult<u8> {
    let domain = parse_domain(args)?;
    let phi0 = match &domain {
        DomainSel::Disk => ConformalMap::identity(),
        DomainSel::Map(p) => load_map(p)?,
        other => return Err(Failure::incompatible("geodesic", other.name())),
    };
    let cfg = load_config(args.config.as_deref())?;
    let b = basic(args, &cfg)?;
    let st = stepping(dy, &cfg, 1000, 10)?;
    let xi0 = initial_xi(args, dy, b.degree, b.tol)?.ok_or_else(|| Failure::input("geodesic needs --xi0 or --in"))?;
    let work = work.unwrap_or(2 * b.degree);
    if work < b.degree {
        return Err(Failure::input("--work-degree must be at least --degree"));
    }
    let gc = GeodesicConfig {
        dt: st.dt,
        steps: st.steps,
        sample_stride: st.sample_stride,
        degree: Some(b.degree),
        work_degree: Some(work),
        min_deriv_floor: floor,
    };
    let state0 = GeodesicState {
        phi: phi0,
        xi: xi0,
        t: 0.0,
    };
    let tr = geodesic_integrate(&state0, &gc)?;

    let phi_budget = tr.samples.iter().map(|s| s.phi.budget()).max().unwrap_or(1);
    let mut header = vec!["t".to_string()];
    header.extend(coeff_header("phi", phi_budget));
    header.extend(coeff_header("xi", b.degree));
    header.push("E".into());
    header.push("min_dphi".into());
    let mut table = Table::new(&header);
    for s in &tr.samples {
        let mut row = vec![s.t];
        push_coeffs(&mut row, &s.phi, phi_budget);
        push_coeffs(&mut row, &s.xi, b.degree);
        row.push(s.energy);
        row.push(s.min_deriv);
        table.row(&row);
    }
    let last = tr.last();
    let mut summary = json!({
        "command": "geodesic",
        "domain": domain.name(),
        "dt": st.dt,
        "steps": st.steps,
        "t_final": last.t,
        "energy_initial": tr.samples[0].energy,
        "energy_final": last.energy,
        "energy_drift": tr.energy_drift(),
        "min_deriv_final": last.min_deriv,
    });
    if dy.halve_dt {
        let finals: Vec<Vec<f64>> = [1usize, 2, 4]
            .iter()
            .map(|&k| {
                let cfg_k = GeodesicConfig {
                    dt: st.dt / k as f64,
                    steps: st.steps * k,
                    sample_stride: st.steps * k,
                    ..gc
                };
                let t = geodesic_integrate(&state0, &cfg_k)?;
                let mut x = Vec::new();
                push_coeffs(&mut x, &t.last().phi, phi_budget);
                push_coeffs(&mut x, &t.last().xi, b.degree);
                Ok(x)
            })
            .collect::<CmdResult<_>>()?;
        summary["convergence_order"] = json!(observed_order(&finals[0], &finals[1], &finals[2]));
    }
    write_outputs(args, dy, table.into_string(), &summary)?;
    Ok(0)
}

fn check(quadrature: &str, delta: f64) -> CmdResult<u8> {
    let (r, a) = quadrature
        .split_once('x')
        .ok_or_else(|| Failure::input(format!("quadrature '{quadrature}' is not RADIALxANGULAR")))?;
    let radial: usize = r.parse().input_context("radial quadrature size")?;
    let angular: usize = a.parse().input_context("angular quadrature size")?;
    if radial == 0 || angular == 0 {
        return Err(Failure::input("quadrature sizes must be positive"));
    }
    let opts = SelfTestOptions {
        bergman_quadrature: QuadratureSpec::new(radial, angular),
        moment_perturbation: delta,
    };
    let report = run_self_test(&opts);
    print!("{report}");
    if report.all_passed() {
        println!("all suites passed");
        Ok(0)
    } else {
        for s in report.failures() {
            eprintln!("failed invariant: {} (measured {:.3e}, threshold {:.1e})", s.name, s.measured, s.threshold);
        }
        Ok(1)
    }
}
