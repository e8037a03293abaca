//! Brute-force and finite-difference checks of the closed forms.
//!
//! Nothing in here calls an analytic derivative to produce the quantity it is
//! checking: derivatives come from Richardson-extrapolated central
//! differences and root counts from uniform sign scans.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::critical_points::build_p;
use crate::error::{check_open, check_order, Result};
use crate::reduced_energy::{
    energy_scale, eps_r_deriv, eps_r_raw, ln_eps_c_raw, residual_334, total_energy, CliffordConfig,
    DerivOrder, HypersphereConfig,
};
use crate::section_calculus::tau_r;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub max_residual: f64,
    pub samples: usize,
    pub passed: bool,
    pub tolerance: f64,
    /// Individual residuals or reference values, keyed by route.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
}

impl OracleReport {
    /// Builds a report; `passed` is `max_residual <= tolerance` (NaN fails).
    pub fn new(name: impl Into<String>, max_residual: f64, samples: usize, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual,
            samples,
            passed: max_residual <= tolerance,
            tolerance,
            details: BTreeMap::new(),
        }
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {} max_residual={:.3e} tol={:.1e} samples={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tolerance,
            self.samples
        )
    }
}

/// Default step `1e-4 · max(1, |x|)`.
pub fn default_step(x: f64) -> f64 {
    1e-4 * x.abs().max(1.0)
}

fn central(f: &impl Fn(f64) -> f64, x: f64, order: DerivOrder, h: f64) -> f64 {
    match order {
        DerivOrder::First => (f(x + h) - f(x - h)) / (2.0 * h),
        DerivOrder::Second => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    }
}

/// Central difference with one Richardson level, `(4 D(h) − D(2h)) / 3`.
/// Evaluates `f` on `[x − 2h, x + 2h]`; the error is `O(h⁴)`.
pub fn fd_derivative(f: impl Fn(f64) -> f64, x: f64, order: DerivOrder, h: f64) -> f64 {
    assert!(h > 0.0, "finite-difference step must be positive");
    (4.0 * central(&f, x, order, h) - central(&f, x, order, 2.0 * h)) / 3.0
}

/// Empirical convergence order of [`fd_derivative`] from three successive
/// step halvings, `log₂(|D(h) − D(h/2)| / |D(h/2) − D(h/4)|)`.
pub fn observed_order(f: impl Fn(f64) -> f64, x: f64, order: DerivOrder, h: f64) -> f64 {
    let d0 = fd_derivative(&f, x, order, h);
    let d1 = fd_derivative(&f, x, order, h / 2.0);
    let d2 = fd_derivative(&f, x, order, h / 4.0);
    ((d0 - d1).abs() / (d1 - d2).abs()).log2()
}

/// Sign-change brackets of `f` on a uniform grid of `grid_points` nodes
/// spanning `interval` (endpoints included). Exact zeros and non-finite
/// values are skipped, so a root sitting on a node is bracketed by its
/// non-zero neighbours.
pub fn scan_roots(
    f: impl Fn(f64) -> f64,
    interval: (f64, f64),
    grid_points: usize,
) -> Vec<(f64, f64)> {
    assert!(
        grid_points >= 2,
        "scan_roots needs at least two grid points"
    );
    let (a, b) = interval;
    let step = (b - a) / (grid_points - 1) as f64;
    let mut brackets = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for i in 0..grid_points {
        let x = if i == grid_points - 1 {
            b
        } else {
            a + step * i as f64
        };
        let fx = f(x);
        if !fx.is_finite() || fx == 0.0 {
            continue;
        }
        if let Some((xl, fl)) = last {
            if fl.signum() != fx.signum() {
                brackets.push((xl, x));
            }
        }
        last = Some((x, fx));
    }
    brackets
}

/// Tolerance for [`verify_variation`] and the other finite-difference routes.
pub const FD_TOL: f64 = 1e-7;

/// Compares three routes to `d/dt E_r(φ_{α+t})|_{t=0}`:
///
/// * finite differences of [`total_energy`];
/// * `½ Vol(S^{n−1}) (n−1)^r ε_r′(α)`;
/// * `−Vol(S^{n−1}) · T_r(α)` with `T_r` the coefficient of [`tau_r`].
///
/// The residual is the largest pairwise gap divided by `½ Vol(S^{n−1}) (n−1)^r`.
pub fn verify_variation(alpha: f64, n: u32, r: u32, tol: f64) -> Result<OracleReport> {
    let cfg = HypersphereConfig::new(r, n)?;
    check_open("alpha", alpha, 0.0, std::f64::consts::PI, "(0, pi)")?;
    let scale = energy_scale(&cfg);
    let energy = |t: f64| total_energy(&cfg, alpha + t).unwrap_or(f64::NAN);
    let fd = fd_derivative(energy, 0.0, DerivOrder::First, default_step(0.0));
    let analytic = scale * eps_r_deriv(alpha, r, DerivOrder::First)?;
    let vol = 2.0 * scale / f64::from(n - 1).powi(r as i32);
    let operator = -vol * tau_r(alpha, n, r)?.coeff;
    let gap = [
        (fd - analytic).abs(),
        (fd - operator).abs(),
        (analytic - operator).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(OracleReport::new(
        format!("variation(alpha={alpha}, n={n}, r={r})"),
        gap / scale,
        3,
        tol,
    )
    .with_detail("finite_difference", fd)
    .with_detail("energy_derivative", analytic)
    .with_detail("tension_pairing", operator))
}

/// Finite-difference check of a hypersphere critical angle: `ε_r′(α) ≈ 0`,
/// with the sign of the differenced `ε_r″` reported alongside.
pub fn verify_hypersphere_critical(alpha: f64, r: u32, tol: f64) -> Result<OracleReport> {
    check_order(r)?;
    check_open("alpha", alpha, 0.0, std::f64::consts::PI, "(0, pi)")?;
    let f = |a: f64| eps_r_raw(a, r);
    let h = default_step(alpha);
    let d1 = fd_derivative(f, alpha, DerivOrder::First, h);
    let d2 = fd_derivative(f, alpha, DerivOrder::Second, h);
    Ok(
        OracleReport::new(format!("hypersphere_critical(r={r})"), d1.abs(), 1, tol)
            .with_detail("fd_first", d1)
            .with_detail("fd_second", d2),
    )
}

/// Cross-checks that `t = R₁²` (with `sin²α = t`) is a critical point through
/// three routes that must agree:
///
/// * `fd_eps_c`: differenced `ln ε_r^C` at `α = arcsin √t`, i.e. the relative
///   derivative `ε′/ε`, which stays finite when `ε_r^C` overflows;
/// * `residual_334`: the explicit criticality polynomial in `sin²α`, divided
///   by `r (a + b)`;
/// * `P`: the cubic itself, divided by the sum of its absolute coefficients.
///
/// A torus with vanishing tension factor `p/R₁² − q/R₂²` is harmonic and
/// passes regardless. For `r = 2` the cubic routes are replaced by the
/// condition `t = 1/2`.
pub fn verify_clifford_criticality(
    t: f64,
    p: u32,
    q: u32,
    r: u32,
    tol: f64,
) -> Result<OracleReport> {
    let cfg = CliffordConfig::from_r1_squared(p, q, r, t)?;
    let alpha = t.sqrt().asin();
    let ln_eps = |a: f64| ln_eps_c_raw(a, &cfg);
    let fd_rel = fd_derivative(ln_eps, alpha, DerivOrder::First, default_step(alpha)).abs();
    let tension = cfg.tension_factor().abs();

    let mut routes = BTreeMap::new();
    routes.insert("fd_eps_c", fd_rel);
    let name = if r == 2 {
        routes.insert("half", (t - 0.5).abs());
        format!("clifford_biharmonic(t={t}, p={p}, q={q})")
    } else {
        let quad_scale = f64::from(r) * (cfg.a() + cfg.b());
        routes.insert("residual_334", residual_334(t, &cfg)?.abs() / quad_scale);
        let poly = build_p(p, q, r);
        let cubic_scale: f64 = poly.coefficients().iter().map(|c| c.abs()).sum();
        routes.insert("P", poly.eval(t).abs() / cubic_scale);
        format!("clifford_criticality(t={t}, p={p}, q={q}, r={r})")
    };
    let critical = routes.values().copied().fold(0.0, f64::max);
    let mut report = OracleReport::new(name, critical.min(tension), routes.len(), tol);
    for (k, v) in routes {
        report = report.with_detail(k, v);
    }
    Ok(report.with_detail("tension_factor", tension))
}

/// Whether the criticality routes of a [`verify_clifford_criticality`] report
/// agree on vanishing: all at most `tol`, or all above it.
pub fn routes_agree(report: &OracleReport, tol: f64) -> bool {
    let routes: Vec<f64> = report
        .details
        .iter()
        .filter(|(k, _)| k.as_str() != "tension_factor")
        .map(|(_, v)| *v)
        .collect();
    routes.iter().all(|v| *v <= tol) || routes.iter().all(|v| *v > tol)
}
