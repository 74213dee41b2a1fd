use std::path::Path;

use plv_core::analysis::CertifyOptions;
use plv_core::gram::{gram_blocks, DEFAULT_CONDITION_CEILING};
use plv_core::{
    assemble_gram_with, certify_with, evaluate_solution, recover_with, resolution_sweep_with, synthesize_lags,
    CovarianceLags, DomainPath, PlvError, RecoveryOptions, SynthesisOptions,
};

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult, Reason};
use crate::io::{self, Report};

/// Tolerance on `Im r_0` when reading lags from disk.
pub const IM_R0_TOLERANCE: f64 = 1e-12;

fn synthesis(cfg: &ScenarioConfig) -> CliResult<SynthesisOptions> {
    Ok(SynthesisOptions::new(cfg.nodes, DomainPath::Theta)?)
}

fn recovery(cfg: &ScenarioConfig) -> RecoveryOptions {
    RecoveryOptions { constraint_tolerance: cfg.constraint_tolerance, ..RecoveryOptions::default() }
}

fn ensure_dir(out: &Path) -> CliResult<()> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::config(format!("cannot create output directory {}: {e}", out.display())))
}

pub fn synthesize(cfg: &ScenarioConfig, out: &Path) -> CliResult<()> {
    let lags = synthesize_lags(&cfg.aps, &cfg.array, &synthesis(cfg)?)?;
    ensure_dir(out)?;
    io::write_file(out, &cfg.paths.lags, &io::format_lags(lags.as_slice()))
}

pub fn recover(cfg: &ScenarioConfig, lags_path: &Path, out: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(lags_path)
        .map_err(|e| CliError::config(format!("cannot read lags {}: {e}", lags_path.display())))?;
    let values = io::parse_lags(&text)?;
    let m = cfg.array.antennas();
    if values.len() != m {
        return Err(CliError::config(format!("lags: expected {m} rows for array.antennas, got {}", values.len())));
    }
    if values[0].im.abs() > IM_R0_TOLERANCE {
        return Err(CliError::config(format!(
            "lags line 2: im of lag 0 must be zero within {IM_R0_TOLERANCE:e}, got {:e}",
            values[0].im
        )));
    }
    let lags = CovarianceLags::with_tolerance(values, IM_R0_TOLERANCE)?;
    let sol = recover_with(&lags, &cfg.array, &recovery(cfg))?;
    let grid = cfg.domain.uniform_grid(cfg.grid_points);
    let samples = evaluate_solution(&sol, &grid, cfg.domain)?;

    let mut report = Report::new();
    report
        .text("antennas", m.to_string())
        .num("gamma", cfg.array.gamma())
        .num("constraint_residual", sol.constraint_residual())
        .num("energy", plv_core::energy_of_solution(&sol))
        .num("min_value", samples.min_value())
        .num("negative_mass_fraction", samples.negative_mass_fraction());

    ensure_dir(out)?;
    io::write_file(out, &cfg.paths.coefficients, &io::format_coefficients(sol.coeffs()))?;
    io::write_file(out, &cfg.paths.aps, &io::format_samples(&samples))?;
    io::write_file(out, &cfg.paths.recovery_report, &report.render())
}

/// Parses `M1,M2,...` into strictly increasing antenna counts.
pub fn parse_sweep(list: &str) -> CliResult<Vec<usize>> {
    let values = list
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| CliError::config(format!("--sweep: invalid antenna count \"{}\"", s.trim())))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::config("--sweep: antenna counts must be strictly increasing"));
    }
    Ok(values)
}

fn inapplicable(err: PlvError) -> CliError {
    match err {
        PlvError::Model(msg) => CliError::new(Reason::Inapplicable, msg),
        other => other.into(),
    }
}

pub fn certify(cfg: &ScenarioConfig, sweep: Option<&str>, out: &Path) -> CliResult<()> {
    let sweep = sweep.map(parse_sweep).transpose()?;
    let opts = CertifyOptions {
        synthesis: synthesis(cfg)?,
        recovery: recovery(cfg),
        identifiability_tolerance: cfg.identifiability_tolerance,
        ..CertifyOptions::default()
    };
    let cert = certify_with(&cfg.aps, &cfg.array, &opts).map_err(inapplicable)?;

    let mut report = Report::new();
    report
        .text("antennas", cfg.array.antennas().to_string())
        .num("gamma", cfg.array.gamma())
        .num("energy_truth", cert.energy_truth)
        .num("energy_plv", cert.energy_plv)
        .num("quadratic_form", cert.quadratic_form)
        .num("reconstruction_error_sq", cert.reconstruction_error_sq)
        .num("direct_error_sq", cert.direct_error_sq)
        .num("pythagoras_gap", cert.pythagoras_gap)
        .num("cross_term", cert.cross_term)
        .num("error_ratio", cert.error_ratio)
        .num("constraint_residual", cert.constraint_residual)
        .text("identifiable", cert.identifiable.to_string());

    let sweep_csv = match &sweep {
        Some(ms) => {
            let points = resolution_sweep_with(&cfg.aps, cfg.array.gamma(), ms, &opts).map_err(inapplicable)?;
            let mut csv = String::from("antennas,reconstruction_error_sq,energy_truth,identifiable\n");
            for p in &points {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    p.antennas,
                    io::fmt12(p.reconstruction_error_sq),
                    io::fmt12(p.energy_truth),
                    p.identifiable
                ));
            }
            Some(csv)
        }
        None => None,
    };

    ensure_dir(out)?;
    io::write_file(out, &cfg.paths.certificate, &report.render())?;
    if let Some(csv) = sweep_csv {
        io::write_file(out, &cfg.paths.sweep, &csv)?;
    }
    Ok(())
}

/// Writes both Gram blocks, then factors them; a failed factorization or
/// excessive condition number still leaves the blocks on disk.
pub fn gram(cfg: &ScenarioConfig, out: &Path) -> CliResult<()> {
    let (g_re, g_im) = gram_blocks(&cfg.array);
    ensure_dir(out)?;
    io::write_file(out, &cfg.paths.gram_re, &io::format_matrix(&g_re))?;
    io::write_file(out, &cfg.paths.gram_im, &io::format_matrix(&g_im))?;

    let gram = assemble_gram_with(&cfg.array, DEFAULT_CONDITION_CEILING)?;
    let mut report = Report::new();
    report
        .text("antennas", cfg.array.antennas().to_string())
        .num("gamma", cfg.array.gamma())
        .text("dimension", gram.dim().to_string())
        .num("max_kappa", cfg.array.max_gram_kappa())
        .num("condition_1norm", gram.cond_estimate())
        .num("min_cholesky_pivot", gram.min_pivot());
    io::write_file(out, &cfg.paths.gram_report, &report.render())
}
