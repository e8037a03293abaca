//! Batteries of checks grouped into suites, as run by `rharmonic verify`.
//!
//! Every check has a pinned tolerance. The `fd_tol` argument only sets the
//! tolerance of the finite-difference routes; analytic cross-evaluations keep
//! their own.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::critical_points::{
    build_p, clifford_kind, discriminant_condition, root_solve, solve_clifford, solve_hypersphere,
    SolutionKind, ROOT_TOL,
};
use crate::error::Result;
use crate::fd_oracle::{
    default_step, fd_derivative, observed_order, scan_roots, verify_clifford_criticality,
    verify_hypersphere_critical, verify_variation, OracleReport,
};
use crate::reduced_energy::{
    eps_r_deriv, eps_r_raw, total_energy, CliffordConfig, DerivOrder, HypersphereConfig,
};
use crate::section_calculus::{
    apply_d, apply_dstar, christoffel_numeric, laplacian_power, operator_energy, tau_r, tension,
    ChartPoint, ChristoffelTable,
};

/// Sweep grid bounds shared by the Clifford checks: `p, q ≤ 8`, `3 ≤ r ≤ 40`.
pub const GRID_PQ: u32 = 8;
pub const GRID_R: u32 = 40;

/// Grid size used by [`scan_roots`] when counting roots of the cubic.
pub const SCAN_GRID: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Energy,
    Ladder,
    Tau,
    Clifford,
    All,
}

impl Suite {
    pub fn run(self, fd_tol: f64) -> Result<Vec<OracleReport>> {
        let mut out = match self {
            Suite::Energy => energy_suite(fd_tol)?,
            Suite::Ladder => ladder_suite()?,
            Suite::Tau => tau_suite(fd_tol)?,
            Suite::Clifford => clifford_suite(fd_tol)?,
            Suite::All => {
                let mut all = energy_suite(fd_tol)?;
                all.extend(ladder_suite()?);
                all.extend(tau_suite(fd_tol)?);
                all.extend(clifford_suite(fd_tol)?);
                all
            }
        };
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }
}

/// `n` evenly spaced interior points of `(lo, hi)`.
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |i| lo + (hi - lo) * i as f64 / (n + 1) as f64)
}

/// Deterministic low-discrepancy samples in `[0, 1)` (additive recurrence on
/// the golden ratio), offset per stream.
pub fn weyl(index: usize, stream: usize) -> f64 {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    let x = (index as f64 + 1.0) * GOLDEN + stream as f64 * 0.414_213_562_373_095_1;
    x.fract()
}

fn relative_gap(got: f64, want: f64, floor: f64) -> f64 {
    (got - want).abs() / want.abs().max(floor)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> (f64, usize) {
    values.into_iter().fold((0.0, 0), |(m, n), v| {
        (if v.is_nan() || v > m { v } else { m }, n + 1)
    })
}

fn energy_suite(fd_tol: f64) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();

    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for i in 0..100 {
        let alpha = 0.05 + (PI - 0.1) * weyl(i, 0);
        let r = 2 + (weyl(i, 1) * 10.0) as u32;
        let f = |a: f64| eps_r_raw(a, r);
        let fd1 = fd_derivative(f, alpha, DerivOrder::First, default_step(alpha));
        let exact1 = eps_r_deriv(alpha, r, DerivOrder::First)?;
        d1.push((fd1 - exact1).abs());
        let g = |a: f64| eps_r_deriv(a, r, DerivOrder::First).unwrap_or(f64::NAN);
        let fd2 = fd_derivative(g, alpha, DerivOrder::First, default_step(alpha));
        d2.push((fd2 - eps_r_deriv(alpha, r, DerivOrder::Second)?).abs());
    }
    let (m, n) = max_of(d1);
    out.push(OracleReport::new(
        "energy.fd_first_derivative",
        m,
        n,
        fd_tol.max(1e-6),
    ));
    let (m, n) = max_of(d2);
    out.push(OracleReport::new(
        "energy.fd_second_derivative",
        m,
        n,
        fd_tol.max(1e-6),
    ));

    let mut rec = Vec::new();
    for r in 2..=8 {
        for n in 2..=5 {
            let lo = HypersphereConfig::new(r, n)?;
            let hi = HypersphereConfig::new(r + 1, n)?;
            for alpha in interior_grid(0.0, PI, 200) {
                let next = total_energy(&hi, alpha)?;
                let predicted = f64::from(n - 1) * alpha.cos().powi(2) * total_energy(&lo, alpha)?;
                rec.push(relative_gap(next, predicted, 1e-300));
            }
        }
    }
    let (m, n) = max_of(rec);
    out.push(OracleReport::new("energy.recursion", m, n, 1e-14));

    let mut route = Vec::new();
    for r in 2..=8 {
        for n in 2..=5 {
            let cfg = HypersphereConfig::new(r, n)?;
            for alpha in interior_grid(0.0, PI, 200) {
                route.push(relative_gap(
                    operator_energy(&cfg, alpha)?,
                    total_energy(&cfg, alpha)?,
                    1e-300,
                ));
            }
        }
    }
    let (m, n) = max_of(route);
    out.push(OracleReport::new("energy.operator_route", m, n, 1e-10));

    let mut crit = Vec::new();
    let mut unstable = true;
    for r in 2..=64 {
        let rep = solve_hypersphere(r)?;
        let check = verify_hypersphere_critical(rep.alpha_star, r, fd_tol)?;
        unstable &= check.details["fd_second"] < 0.0 && rep.stable == Some(false);
        crit.push(check.max_residual);
    }
    let (m, n) = max_of(crit);
    out.push(OracleReport::new(
        "energy.hypersphere_critical",
        m,
        n,
        fd_tol,
    ));
    out.push(OracleReport::new(
        "energy.hypersphere_unstable",
        if unstable { 0.0 } else { 1.0 },
        63,
        0.0,
    ));

    let orders: Vec<f64> = [(0.3, 0.2), (1.1, 0.1), (2.0, 0.05)]
        .into_iter()
        .map(|(x, h)| observed_order(f64::sin, x, DerivOrder::First, h))
        .collect();
    let worst = orders.iter().copied().fold(f64::INFINITY, f64::min);
    // Residual is the shortfall below order 3.5.
    out.push(
        OracleReport::new(
            "energy.fd_convergence_order",
            (3.5 - worst).max(0.0),
            orders.len(),
            0.0,
        )
        .with_detail("observed_order", worst),
    );
    Ok(out)
}

fn ladder_suite() -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();

    let mut gaps = Vec::new();
    for i in 0..50 {
        let n = 2 + (weyl(i, 2) * 5.0) as usize;
        let theta: Vec<f64> = (0..n - 1)
            .map(|m| 0.3 + (PI - 0.6) * weyl(i, 3 + m))
            .collect();
        let alpha = 0.3 + (PI - 0.6) * weyl(i, 9);
        let point = ChartPoint { theta, alpha };
        let closed = ChristoffelTable::new(point.clone())?.to_sample();
        gaps.push(closed.max_abs_diff(&christoffel_numeric(&point)?));
    }
    let (m, n) = max_of(gaps);
    out.push(OracleReport::new("ladder.christoffel", m, n, 1e-7));

    let mut g_gap = Vec::new();
    let mut h_gap = Vec::new();
    let mut pow_gap = Vec::new();
    for n in 2..=6u32 {
        let k = f64::from(n - 1);
        for alpha in interior_grid(0.0, PI, 100) {
            let (s, c) = alpha.sin_cos();
            let tau = tension(alpha, n)?;
            let g = apply_d(&tau)?;
            g_gap.push((g.coeff + k * c * c).abs());
            let h = apply_dstar(&g)?;
            h_gap.push((h.coeff - k * g.coeff * s * c).abs());
            for power in 1..=6 {
                let closed = (k * c * c).powi(power as i32) * tau.coeff;
                let iterated = laplacian_power(alpha, n, power)?.coeff;
                pow_gap.push(relative_gap(iterated, closed, 1e-300));
            }
        }
    }
    let (m, n) = max_of(g_gap);
    out.push(OracleReport::new("ladder.d_of_tension", m, n, 1e-13));
    let (m, n) = max_of(h_gap);
    out.push(OracleReport::new("ladder.dstar_d_of_tension", m, n, 1e-13));
    let (m, n) = max_of(pow_gap);
    out.push(OracleReport::new("ladder.laplacian_powers", m, n, 1e-12));
    Ok(out)
}

fn tau_suite(fd_tol: f64) -> Result<Vec<OracleReport>> {
    let mut master = Vec::new();
    for r in 2..=6 {
        for n in 2..=5 {
            let k = f64::from(n - 1);
            for alpha in interior_grid(0.0, PI, 200) {
                let target = -0.5 * k.powi(r as i32) * eps_r_deriv(alpha, r, DerivOrder::First)?;
                master.push(relative_gap(
                    tau_r(alpha, n, r)?.coeff,
                    target,
                    1e-4 * k.powi(r as i32),
                ));
            }
        }
    }
    let (m, n) = max_of(master);
    let mut out = vec![OracleReport::new("tau.master_identity", m, n, 1e-9)];

    let mut variation = Vec::new();
    for r in 2..=6 {
        for n in 2..=5 {
            for alpha in interior_grid(0.0, PI, 20) {
                variation.push(verify_variation(alpha, n, r, fd_tol)?.max_residual);
            }
            let star = solve_hypersphere(r)?.alpha_star;
            variation.push(verify_variation(star, n, r, fd_tol)?.max_residual);
        }
    }
    let (m, n) = max_of(variation);
    out.push(OracleReport::new("tau.variation", m, n, fd_tol));
    Ok(out)
}

fn clifford_suite(fd_tol: f64) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    let mut boundary = 0.0f64;
    let mut at_least_one = 0.0f64;
    let mut sufficiency = 0.0f64;
    let mut scan_mismatch = 0.0f64;
    let mut criticality = Vec::new();
    let mut cells = 0;
    let mut disc_positive = 0;
    for p in 1..=GRID_PQ {
        for q in 1..=GRID_PQ {
            for r in 2..=GRID_R {
                cells += 1;
                let poly = build_p(p, q, r);
                boundary = boundary
                    .max((poly.eval(0.0) + f64::from(p)).abs())
                    .max((poly.eval(1.0) - f64::from(q)).abs());
                let reports = solve_clifford(p, q, r)?;
                for rep in &reports {
                    let check = verify_clifford_criticality(rep.parameter, p, q, r, fd_tol)?;
                    criticality.push(check.max_residual);
                }
                if r < 3 {
                    continue;
                }
                if reports.is_empty() {
                    at_least_one = 1.0;
                }
                let solved = root_solve(&poly, (0.0, 1.0), ROOT_TOL).len();
                let scanned = scan_roots(|t| poly.eval(t), (0.0, 1.0), SCAN_GRID).len();
                if discriminant_condition(p, q, r)? > 0.0 {
                    disc_positive += 1;
                    if solved != 3 || scanned != 3 || reports.len() != 3 {
                        sufficiency = 1.0;
                    }
                }
                if solved != scanned {
                    scan_mismatch = 1.0;
                }
            }
        }
    }
    out.push(OracleReport::new(
        "clifford.boundary_values",
        boundary,
        cells,
        0.0,
    ));
    out.push(OracleReport::new(
        "clifford.admissible_root_exists",
        at_least_one,
        cells,
        0.0,
    ));
    out.push(
        OracleReport::new(
            "clifford.discriminant_sufficiency",
            sufficiency,
            disc_positive,
            0.0,
        )
        .with_detail("cells_with_positive_condition", disc_positive as f64),
    );
    out.push(OracleReport::new(
        "clifford.scan_agreement",
        scan_mismatch,
        cells,
        0.0,
    ));
    let (m, n) = max_of(criticality);
    out.push(OracleReport::new(
        "clifford.criticality",
        m,
        n,
        fd_tol.min(1e-8),
    ));

    let mut minimal = Vec::new();
    for i in 0..12 {
        let p = 1 + (weyl(i, 11) * 16.0) as u32;
        let q = 1 + (weyl(i, 12) * 16.0) as u32;
        let t = f64::from(p) / f64::from(p + q);
        let cfg = CliffordConfig::from_r1_squared(p, q, 3, t)?;
        let misclassified = if clifford_kind(p, q, t) == SolutionKind::Minimal {
            0.0
        } else {
            1.0
        };
        minimal.push(cfg.tension_factor().abs().max(misclassified));
    }
    let (m, n) = max_of(minimal);
    out.push(OracleReport::new("clifford.minimality", m, n, 1e-10));

    let mut balanced = Vec::new();
    for r in 2..=40u32 {
        let reports = solve_clifford(1, 1, r)?;
        if r <= 4 {
            let ok = reports.len() == 1
                && reports[0].kind == SolutionKind::Minimal
                && reports[0].parameter == 0.5;
            balanced.push(if ok { 0.0 } else { 1.0 });
        } else {
            let d = 0.5 * ((f64::from(r) - 4.0) / f64::from(r)).sqrt();
            if reports.len() != 3 {
                balanced.push(1.0);
                continue;
            }
            balanced.push((reports[0].parameter - (0.5 - d)).abs());
            balanced.push((reports[2].parameter - (0.5 + d)).abs());
        }
    }
    let (m, n) = max_of(balanced);
    out.push(OracleReport::new(
        "clifford.balanced_closed_form",
        m,
        n,
        1e-10,
    ));
    Ok(out)
}
