//! Built-in consistency suite behind `su11sim validate`.
//!
//! Every check measures a residual against a pinned tolerance and the
//! report lists all of them with their observed values; the process exits
//! nonzero if any check fails.  The `fast` level keeps every Fock box at
//! dimension ≤ 128; `full` rises to the dimensions used by the acceptance
//! grids (up to 512).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use num_complex::Complex64;

use su11_core::{
    casimir_matrix, coherent_closed_form_moments, coherent_intelligent_params, coherent_state,
    commutator_residual, default_truncation_dim, delta_phi_coherent_intelligent, delta_phi_evolved,
    delta_phi_evolved_small_phase_limit, delta_phi_numeric, delta_phi_vacuum,
    delta_phi_vacuum_limit, delta_phi_vs_photons, gamma_from_state, ground_state,
    intelligent_residual, irrep_embedding_check, k3_out_coefficients, moments, overall_transform,
    total_photons, total_photons_from_state, BargmannIndex, Branch, CoherentParams,
    InterferometerConfig, InterferometerEngine, KMoments,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// Every truncation at dimension ≤ 128; finishes in seconds.
    Fast,
    /// Acceptance-grid dimensions (up to 512) and wider parameter grids.
    Full,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Fast => "fast",
            Level::Full => "full",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Direction of a check: most bound a residual from above; a few require a
/// quantity to stay above a floor (strict-inequality slack).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Below,
    Above,
}

#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub tolerance: f64,
    pub observed: f64,
    bound: Bound,
}

impl PropertyCheck {
    fn below(name: &'static str, tolerance: f64, observed: f64) -> Self {
        PropertyCheck {
            name,
            tolerance,
            observed,
            bound: Bound::Below,
        }
    }

    fn above(name: &'static str, floor: f64, observed: f64) -> Self {
        PropertyCheck {
            name,
            tolerance: floor,
            observed,
            bound: Bound::Above,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::Below => self.observed < self.tolerance,
            Bound::Above => self.observed > self.tolerance,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub level: Level,
    pub checks: Vec<PropertyCheck>,
    pub seconds: f64,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(PropertyCheck::passed)
    }
}

fn coherent_moments(k: BargmannIndex, zeta: Complex64, tol: f64) -> KMoments {
    let params = CoherentParams::new(k, zeta).unwrap();
    let dim = default_truncation_dim(&params, tol).unwrap();
    let state = coherent_state(&params, dim).unwrap();
    moments(&state).unwrap()
}

fn algebra_checks(level: Level, checks: &mut Vec<PropertyCheck>) {
    // The interior residual is ulp-level noise at the K₊K₋ product scale,
    // i.e. it grows like dim²·ε (~4.6e-13 at dim 64), so the flat 1e-12
    // bound is honest only up to dim ≈ 64.
    let dims: &[usize] = match level {
        Level::Fast => &[16, 48],
        Level::Full => &[16, 32, 64],
    };
    let mut worst_comm = 0.0f64;
    let mut worst_casimir = 0.0f64;
    for twice_k in [1u32, 2, 3, 5] {
        let k = BargmannIndex::new(twice_k).unwrap();
        for &dim in dims {
            worst_comm = worst_comm.max(commutator_residual(k, dim).unwrap());
            let c = casimir_matrix(k, dim).unwrap();
            let view = c.interior(2);
            let expected = k.k() * (k.k() - 1.0);
            for i in 0..view.nrows() {
                for j in 0..view.ncols() {
                    let target = if i == j { expected } else { 0.0 };
                    worst_casimir = worst_casimir.max((view[(i, j)].re - target).abs());
                }
            }
        }
    }
    checks.push(PropertyCheck::below(
        "commutator closure",
        1e-12,
        worst_comm,
    ));
    checks.push(PropertyCheck::below(
        "Casimir constancy",
        1e-12,
        worst_casimir,
    ));

    let n_max = match level {
        Level::Fast => 10,
        Level::Full => 12,
    };
    let worst_embed = (0..4)
        .map(|n0| irrep_embedding_check(n0, n_max).unwrap())
        .fold(0.0f64, f64::max);
    checks.push(PropertyCheck::below(
        "two-mode embedding",
        1e-12,
        worst_embed,
    ));
}

fn transport_checks(checks: &mut Vec<PropertyCheck>) {
    let mut worst_metric = 0.0f64;
    let mut worst_row = 0.0f64;
    for beta in [-2.0, -0.7, 0.5, 1.0, 2.0] {
        for phi in [-3.0, 0.0, 0.3, 1.0, 3.0] {
            let cfg = InterferometerConfig::new(beta, phi);
            let t = overall_transform(&cfg);
            worst_metric = worst_metric.max(t.metric_defect());
            let row = t.matrix().row(2).transpose();
            let c = k3_out_coefficients(&cfg).coefficients;
            worst_row = worst_row.max((row - c).abs().max());
        }
    }
    checks.push(PropertyCheck::below(
        "metric preservation",
        1e-12,
        worst_metric,
    ));
    checks.push(PropertyCheck::below(
        "transport output row",
        1e-12,
        worst_row,
    ));
}

fn state_checks(level: Level, checks: &mut Vec<PropertyCheck>) {
    let radii: &[f64] = match level {
        Level::Fast => &[0.3, 0.5],
        Level::Full => &[0.1, 0.3, 0.5, 0.7],
    };
    let mut worst_moment = 0.0f64;
    for twice_k in [1u32, 2, 5] {
        let k = BargmannIndex::new(twice_k).unwrap();
        for &r in radii {
            for theta in [0.0, FRAC_PI_4, FRAC_PI_2, PI] {
                let z = Complex64::from_polar(r, theta);
                let m = coherent_moments(k, z, 1e-16);
                let cf = coherent_closed_form_moments(&CoherentParams::new(k, z).unwrap()).unwrap();
                worst_moment = worst_moment.max((m.mean_k1() - cf.mean_k1).abs());
                worst_moment = worst_moment.max((m.var_k2() - cf.var_k2).abs());
                worst_moment = worst_moment.max((m.var_k3() - cf.var_k3).abs());
            }
        }
    }
    checks.push(PropertyCheck::below(
        "coherent moments closed vs summed",
        1e-9,
        worst_moment,
    ));

    let zetas: &[f64] = match level {
        Level::Fast => &[-0.3, 0.3, 0.5],
        Level::Full => &[-0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.7],
    };
    let mut worst_eq = 0.0f64;
    let mut min_slack = f64::INFINITY;
    for twice_k in [1u32, 3] {
        let k = BargmannIndex::new(twice_k).unwrap();
        for &z in zetas {
            let m = coherent_moments(k, Complex64::new(z, 0.0), 1e-18);
            worst_eq =
                worst_eq.max((m.var_k2() * m.var_k3() - 0.25 * m.mean_k1() * m.mean_k1()).abs());
        }
        let m = coherent_moments(k, Complex64::from_polar(0.3, FRAC_PI_4), 1e-18);
        min_slack = min_slack.min(m.var_k2() * m.var_k3() - 0.25 * m.mean_k1() * m.mean_k1());
    }
    checks.push(PropertyCheck::below(
        "uncertainty equality (real amplitudes)",
        1e-10,
        worst_eq,
    ));
    checks.push(PropertyCheck::above(
        "uncertainty slack (complex amplitude)",
        1e-6,
        min_slack,
    ));

    let mut worst_residual = 0.0f64;
    let mut worst_gamma = 0.0f64;
    for twice_k in [1u32, 4] {
        let k = BargmannIndex::new(twice_k).unwrap();
        for (gamma, branch) in [
            (0.75, Branch::Upper),
            (2.0, Branch::Upper),
            (-0.75, Branch::Lower),
        ] {
            let ip = coherent_intelligent_params(k, gamma, branch).unwrap();
            let params = CoherentParams::new(k, Complex64::new(ip.zeta(), 0.0)).unwrap();
            let dim = default_truncation_dim(&params, 1e-14).unwrap().max(40);
            let state = coherent_state(&params, dim).unwrap();
            worst_residual =
                worst_residual.max(intelligent_residual(&state, gamma, ip.lambda()).unwrap());
            worst_gamma = worst_gamma.max((gamma_from_state(&state).unwrap() - gamma.abs()).abs());
        }
    }
    checks.push(PropertyCheck::below(
        "intersection eigenvalue residual",
        1e-8,
        worst_residual,
    ));
    checks.push(PropertyCheck::below(
        "intersection spread ratio",
        1e-8,
        worst_gamma,
    ));
}

fn budget_checks(checks: &mut Vec<PropertyCheck>) {
    let mut worst_photons = 0.0f64;
    let mut worst_chain = 0.0f64;
    for twice_k in [1u32, 3, 4] {
        let k = BargmannIndex::new(twice_k).unwrap();
        for zeta in [0.0, 0.3, -0.5] {
            let params = CoherentParams::new(k, Complex64::new(zeta, 0.0)).unwrap();
            let dim = default_truncation_dim(&params, 1e-16).unwrap();
            let state = coherent_state(&params, dim).unwrap();
            for beta in [0.5, 1.0, 2.0] {
                let closed = total_photons(&params, beta).unwrap();
                let from_state = total_photons_from_state(&state, beta).unwrap();
                worst_photons = worst_photons.max((from_state - closed).abs() / closed);
                let chained = delta_phi_vs_photons(k, zeta, closed).unwrap().delta_phi_sq;
                let direct = delta_phi_coherent_intelligent(k, beta)
                    .unwrap()
                    .delta_phi_sq;
                worst_chain = worst_chain.max((chained - direct).abs() / direct);
            }
        }
    }
    checks.push(PropertyCheck::below(
        "photon count closed vs summed",
        1e-8,
        worst_photons,
    ));
    checks.push(PropertyCheck::below(
        "photon budget chain",
        1e-10,
        worst_chain,
    ));

    let half = BargmannIndex::new(1).unwrap();
    let worst_vacuum = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|n| {
            let general = delta_phi_vs_photons(half, 0.0, n).unwrap().delta_phi_sq;
            let vacuum = delta_phi_vacuum_limit(n).unwrap().delta_phi_sq;
            (general - vacuum).abs() / vacuum
        })
        .fold(0.0f64, f64::max);
    checks.push(PropertyCheck::below(
        "vacuum budget special case",
        1e-12,
        worst_vacuum,
    ));
}

fn route_agreement_checks(level: Level, flipped_fwm: bool, checks: &mut Vec<PropertyCheck>) {
    let (dim, twice_ks, zetas, phis): (usize, &[u32], &[f64], &[f64]) = match level {
        Level::Fast => (128, &[1, 2], &[0.0, 0.3], &[0.3, 1.0]),
        Level::Full => (256, &[1, 2, 4], &[0.0, 0.3, 0.5], &[0.0, 0.3, 1.0]),
    };
    let mut worst_mean = 0.0f64;
    let mut worst_var = 0.0f64;
    for &twice_k in twice_ks {
        let k = BargmannIndex::new(twice_k).unwrap();
        for beta in [0.5, 1.0] {
            let engine = if flipped_fwm {
                InterferometerEngine::new_with_flipped_fwm(beta, k, dim).unwrap()
            } else {
                InterferometerEngine::new(beta, k, dim).unwrap()
            };
            for &zeta in zetas {
                let params = CoherentParams::new(k, Complex64::new(zeta, 0.0)).unwrap();
                let state = coherent_state(&params, dim).unwrap();
                let m0 = moments(&state).unwrap();
                for &phi in phis {
                    let evolved = engine.evolve(&state, phi).unwrap();
                    let ms = moments(&evolved).unwrap();
                    let t = overall_transform(&InterferometerConfig::new(beta, phi));
                    let mean_h = t.apply(&m0.mean());
                    let second_h = t.matrix() * m0.second() * t.matrix().transpose();
                    worst_mean = worst_mean.max((ms.mean() - mean_h).abs().max());
                    for i in 0..3 {
                        let var_h = second_h[(i, i)] - mean_h[i] * mean_h[i];
                        worst_var = worst_var.max((ms.var(i) - var_h).abs());
                    }
                }
            }
        }
    }
    checks.push(PropertyCheck::below(
        "route agreement: first moments",
        1e-7,
        worst_mean,
    ));
    checks.push(PropertyCheck::below(
        "route agreement: variances",
        1e-6,
        worst_var,
    ));
}

fn sensitivity_checks(level: Level, checks: &mut Vec<PropertyCheck>) {
    let grid: &[(f64, usize)] = match level {
        Level::Fast => &[(0.5, 96)],
        Level::Full => &[(0.5, 96), (1.0, 192), (2.0, 512)],
    };
    let k = BargmannIndex::new(1).unwrap();
    let mut worst_grid = 0.0f64;
    let mut worst_limit = 0.0f64;
    for &(beta, dim) in grid {
        let engine = InterferometerEngine::new(beta, k, dim).unwrap();
        let vacuum = ground_state(k, dim).unwrap();
        for phi in [0.3, 1.0] {
            let evolved = delta_phi_evolved(&engine, &vacuum, phi)
                .unwrap()
                .delta_phi_sq;
            let closed = delta_phi_vacuum(beta, phi).unwrap().delta_phi_sq;
            worst_grid = worst_grid.max((evolved - closed).abs() / closed);
        }
        let limit = delta_phi_evolved_small_phase_limit(&engine, &vacuum)
            .unwrap()
            .delta_phi_sq;
        let closed_limit = delta_phi_vacuum(beta, 0.0).unwrap().delta_phi_sq;
        worst_limit = worst_limit.max((limit - closed_limit).abs() / closed_limit);
    }
    checks.push(PropertyCheck::below(
        "vacuum closed form vs evolution",
        1e-6,
        worst_grid,
    ));
    checks.push(PropertyCheck::below(
        "vacuum small-phase limit",
        1e-4,
        worst_limit,
    ));

    let mut worst_intersection = 0.0f64;
    for twice_k in [1u32, 2, 6] {
        let k = BargmannIndex::new(twice_k).unwrap();
        for zeta in [0.0, 0.2, 0.5] {
            let m = coherent_moments(k, Complex64::new(zeta, 0.0), 1e-14);
            for beta in [0.5, 1.0] {
                let cfg = InterferometerConfig::new(beta, 1e-3);
                let numeric = delta_phi_numeric(&m, &cfg).unwrap().delta_phi_sq;
                let closed = delta_phi_coherent_intelligent(k, beta)
                    .unwrap()
                    .delta_phi_sq;
                worst_intersection = worst_intersection.max((numeric - closed).abs() / closed);
            }
        }
    }
    checks.push(PropertyCheck::below(
        "intersection vs error propagation",
        1e-4,
        worst_intersection,
    ));
}

/// Run the consistency suite.  `flipped_fwm` deliberately builds the mixer
/// unitaries with the opposite generator sign; the route-agreement checks
/// must then fail, which proves the empirical sign determination is
/// discriminating.
pub fn run_validate(level: Level, flipped_fwm: bool) -> ValidationReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    algebra_checks(level, &mut checks);
    transport_checks(&mut checks);
    state_checks(level, &mut checks);
    budget_checks(&mut checks);
    route_agreement_checks(level, flipped_fwm, &mut checks);
    sensitivity_checks(level, &mut checks);
    ValidationReport {
        level,
        checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn render_report(report: &ValidationReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        let relation = match c.bound {
            Bound::Below => "within",
            Bound::Above => "above floor",
        };
        out.push_str(&format!(
            "[validate] {}: observed {:.3e} {} {:.0e} — {}\n",
            c.name, c.observed, relation, c.tolerance, verdict
        ));
    }
    let passed = report.checks.iter().filter(|c| c.passed()).count();
    out.push_str(&format!(
        "[validate] {}/{} properties passed (level {}, {:.1}s)\n",
        passed,
        report.checks.len(),
        report.level,
        report.seconds
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_level_passes_cleanly() {
        let report = run_validate(Level::Fast, false);
        assert!(report.all_passed(), "{}", render_report(&report));
        assert!(report.seconds < 30.0);
    }

    #[test]
    fn flipped_mixer_sign_breaks_route_agreement() {
        let report = run_validate(Level::Fast, true);
        assert!(!report.all_passed());
        let broken: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect();
        assert!(broken.contains(&"route agreement: first moments"));
        let text = render_report(&report);
        assert!(text.contains("FAIL"));
    }
}
