use rayon::prelude::*;
use serde_json::json;

use bhqnm::complex_scaling::{qnm_direct, ScalingConfig};
use bhqnm::normal_form::qnm_symbol;
use bhqnm::pseudospectrum::{instability_report, RotatedHOConfig};
use bhqnm::qnm_catalog::{asymptotic_check, counting_constant, validity_radius, QnmEntry};
use bhqnm::spacetime::potential_parts;
use bhqnm::{c64, Graded1};

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Report, Table};

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        Command::Potential => potential(cfg),
        Command::Gsymbol => gsymbol(cfg),
        Command::Lattice => lattice(cfg),
        Command::Count => count(cfg),
        Command::Direct => direct(cfg),
        Command::Pseudo => pseudo(cfg),
    }
}

fn potential(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params()?;
    let rows = cfg
        .grid
        .nodes()
        .into_iter()
        .map(|x| {
            let (w0, w1) = potential_parts(x, &p)?;
            Ok(vec![Cell::Real(x), Cell::Real(w0), Cell::Real(w1)])
        })
        .collect::<Result<Vec<_>, bhqnm::Error>>()?;
    Ok(Report::table(Table { columns: vec!["x", "W0", "W1"], rows }))
}

fn symbol(cfg: &RunConfig) -> Result<(Graded1, f64), CliError> {
    let nf = qnm_symbol(&cfg.params()?, cfg.series_degree, cfg.h_order)?;
    let g = nf.g_qnm.ok_or_else(|| CliError::Numerical(bhqnm::Error::Numerical("no QNM symbol produced".into())))?;
    let radius = validity_radius(&g.levels()[0])?;
    Ok((g, radius))
}

fn gsymbol(cfg: &RunConfig) -> Result<Report, CliError> {
    let (g, radius) = symbol(cfg)?;
    let mut rows = Vec::new();
    for (k, level) in g.levels().iter().enumerate() {
        for (j, c) in level.coeffs().iter().enumerate() {
            rows.push(vec![Cell::Int(k as i64), Cell::Int(j as i64), Cell::Real(c.re), Cell::Real(c.im)]);
        }
    }
    let payload = json!({ "levels": g.to_json_levels(), "validity_radius": radius });
    Ok(Report { table: Table { columns: vec!["h_level", "power", "re", "im"], rows }, payload: Some(payload) })
}

/// `λ_{ℓ,n}` when `2π(n+½)h` is inside the validity radius.
fn lattice_value(g: &Graded1, ell: u32, n: u32, radius: f64) -> Option<c64> {
    let h = 1.0 / (ell as f64 + 0.5);
    let x = 2.0 * std::f64::consts::PI * (n as f64 + 0.5) * h;
    (x <= radius).then(|| QnmEntry::from_symbol(ell, n, g).lambda)
}

fn lattice(cfg: &RunConfig) -> Result<Report, CliError> {
    let (g, radius) = symbol(cfg)?;
    let mut rows = Vec::new();
    for ell in cfg.ell_range[0]..=cfg.ell_range[1] {
        let h = 1.0 / (ell as f64 + 0.5);
        for n in 0..=cfg.n_max {
            let Some(lam) = lattice_value(&g, ell, n, radius) else { break };
            rows.push(vec![
                Cell::Int(ell as i64),
                Cell::Int(n as i64),
                Cell::Real(h),
                Cell::Real(lam.re),
                Cell::Real(lam.im),
                Cell::Int(2 * ell as i64 + 1),
            ]);
        }
    }
    Ok(Report::table(Table { columns: vec!["ell", "n", "h", "re", "im", "multiplicity"], rows }))
}

fn count(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params()?;
    let (g, radius) = symbol(cfg)?;
    let c = counting_constant(cfg.t, &p, &g.levels()[0], radius)?;
    let table = asymptotic_check(&p, &g, cfg.t, &cfg.r_list, radius)?;
    let rows = table
        .iter()
        .map(|r| {
            vec![Cell::Real(r.r), Cell::Int(r.count as i64), Cell::Real(r.predicted), Cell::Real(r.ratio), Cell::Int(r.gaps as i64)]
        })
        .collect();
    let table = Table { columns: vec!["r", "count", "predicted", "ratio", "gaps"], rows };
    let payload = json!({
        "counting_constant": c,
        "columns": table.columns,
        "rows": table.rows.iter().map(|r| r.iter().map(|c| match c { Cell::Int(i) => json!(i), Cell::Real(x) => json!(x) }).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Report { table, payload: Some(payload) })
}

fn direct(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params()?;
    let (g, radius) = symbol(cfg)?;
    let ells: Vec<u32> = (cfg.ell_range[0]..=cfg.ell_range[1]).collect();
    let solved = ells
        .par_iter()
        .map(|&ell| {
            let sc = ScalingConfig::for_ell(&p, ell, cfg.theta, cfg.basis_size)?;
            qnm_direct(ell, &sc, &p).map(|r| (ell, r))
        })
        .collect::<Result<Vec<_>, bhqnm::Error>>()?;
    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    for (ell, res) in &solved {
        let kept: Vec<&QnmEntry> = res.entries.iter().filter(|e| e.n <= cfg.n_max).collect();
        let mut lat = Vec::new();
        for e in &kept {
            let l = lattice_value(&g, *ell, e.n, radius);
            let (lr, li, d) = match l {
                Some(l) => (l.re, l.im, (l - e.lambda).norm()),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            rows.push(vec![
                Cell::Int(*ell as i64),
                Cell::Int(e.n as i64),
                Cell::Real(e.lambda.re),
                Cell::Real(e.lambda.im),
                Cell::Real(lr),
                Cell::Real(li),
                Cell::Real(d),
            ]);
            lat.push(l.map(|l| [l.re, l.im]));
        }
        blocks.push(json!({
            "ell": ell,
            "theta": cfg.theta,
            "qnm": kept.iter().map(|e| [e.lambda.re, e.lambda.im]).collect::<Vec<_>>(),
            "lattice": lat,
            "max_residual": res.max_residual,
        }));
    }
    let table = Table { columns: vec!["ell", "n", "re", "im", "lattice_re", "lattice_im", "abs_diff"], rows };
    Ok(Report { table, payload: Some(json!(blocks)) })
}

fn pseudo(cfg: &RunConfig) -> Result<Report, CliError> {
    let rep = instability_report(&RotatedHOConfig { h: cfg.pseudo_h, basis_size: cfg.basis_size })?;
    let rows: Vec<Vec<Cell>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.n as i64),
                Cell::Real(r.exact.re),
                Cell::Real(r.exact.im),
                Cell::Real(r.computed.re),
                Cell::Real(r.computed.im),
                Cell::Real(r.distance),
            ]
        })
        .collect();
    let table = Table { columns: vec!["n", "re_exact", "im_exact", "re_num", "im_num", "dist"], rows };
    let payload = json!({
        "divergence_index": rep.divergence_index,
        "columns": table.columns,
        "rows": rep.rows.iter().map(|r| json!([r.n, r.exact.re, r.exact.im, r.computed.re, r.computed.im, r.distance])).collect::<Vec<_>>(),
    });
    Ok(Report { table, payload: Some(payload) })
}
