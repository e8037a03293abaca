//! Solvers for the critical points of the reduced energies.
//!
//! Hyperspheres have a closed form, `sin²α* = 1/r`. Clifford tori reduce to
//! the admissible roots `t = R₁² ∈ (0, 1)` of the cubic
//!
//! ```text
//! P(t) = r(p+q) t³ + [q − p − r(q + 2p)] t² + (2p + rp) t − p
//! ```
//!
//! which are isolated numerically rather than through Cardano's formula:
//! double roots sit exactly on the zero set of the discriminant, where the
//! closed form loses most of its digits.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_order, Error, Result};
use crate::reduced_energy::{
    eps_c_deriv, eps_r_prime_raw, eps_r_second_raw, residual_334, CliffordConfig,
};

/// Uniform sign-scan resolution used by [`root_solve`].
pub const SCAN_POINTS: usize = 4096;

/// Roots closer than this to `0` or `1` describe a collapsed factor sphere.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;

/// Tolerance used when comparing a root against `p/(p+q)`.
pub const MINIMALITY_TOL: f64 = 1e-9;

/// Residual tolerance handed to [`root_solve`] by [`solve_clifford`].
pub const ROOT_TOL: f64 = 1e-9;

/// `c3 t³ + c2 t² + c1 t + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicPolynomial {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicPolynomial {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        Self { c3, c2, c1, c0 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        ((self.c3 * t + self.c2) * t + self.c1) * t + self.c0
    }

    pub fn deriv(&self, t: f64) -> f64 {
        (3.0 * self.c3 * t + 2.0 * self.c2) * t + self.c1
    }

    /// Coefficients, highest degree first.
    pub fn coefficients(&self) -> [f64; 4] {
        [self.c3, self.c2, self.c1, self.c0]
    }
}

/// What kind of critical point a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    /// The map itself is harmonic (hypersphere equator).
    Harmonic,
    /// Harmonic isometric immersion, i.e. a minimal submanifold.
    Minimal,
    /// r-harmonic but not harmonic.
    ProperRHarmonic,
}

impl SolutionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionKind::Harmonic => "harmonic",
            SolutionKind::Minimal => "minimal",
            SolutionKind::ProperRHarmonic => "proper_r_harmonic",
        }
    }
}

impl std::fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A classified critical point.
///
/// `parameter` is the radius `R` for hyperspheres and `t = R₁²` for Clifford
/// tori. `stable` is `None` where no second-variation statement is available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub parameter: f64,
    pub alpha_star: f64,
    pub kind: SolutionKind,
    pub stable: Option<bool>,
    pub residuals: BTreeMap<String, f64>,
}

impl SolutionReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

fn hypersphere_report(alpha: f64, r: u32, kind: SolutionKind) -> SolutionReport {
    let mut residuals = BTreeMap::new();
    residuals.insert("eps_prime".to_string(), eps_r_prime_raw(alpha, r).abs());
    let stable = match kind {
        // ε_r ≥ 0 vanishes there: a global minimum of the energy.
        SolutionKind::Harmonic => true,
        _ => eps_r_second_raw(alpha, r) > 0.0,
    };
    SolutionReport {
        parameter: alpha.sin(),
        alpha_star: alpha,
        kind,
        stable: Some(stable),
        residuals,
    }
}

/// The proper r-harmonic hypersphere: `R = 1/√r`, `α* = arcsin(1/√r)`.
pub fn solve_hypersphere(r: u32) -> Result<SolutionReport> {
    check_order(r)?;
    let radius = 1.0 / f64::from(r).sqrt();
    let mut report = hypersphere_report(radius.asin(), r, SolutionKind::ProperRHarmonic);
    report.parameter = radius;
    Ok(report)
}

/// Every critical point of `ε_r` on `(0, π)`, in increasing `α`.
pub fn enumerate_hypersphere_criticals(r: u32) -> Result<Vec<SolutionReport>> {
    let first = solve_hypersphere(r)?;
    let mut mirrored = hypersphere_report(PI - first.alpha_star, r, SolutionKind::ProperRHarmonic);
    mirrored.parameter = first.parameter;
    let equator = hypersphere_report(FRAC_PI_2, r, SolutionKind::Harmonic);
    Ok(vec![first, equator, mirrored])
}

/// The cubic whose admissible roots are the r-harmonic Clifford tori.
pub fn build_p(p: u32, q: u32, r: u32) -> CubicPolynomial {
    let (p, q, r) = (f64::from(p), f64::from(q), f64::from(r));
    CubicPolynomial {
        c3: r * (p + q),
        c2: q - p - r * (q + 2.0 * p),
        c1: 2.0 * p + r * p,
        c0: -p,
    }
}

/// `(r⁴ − 4r³ + 24r² − 40r − 8) pq + 4(1 − r)³ (p² + q²)`.
///
/// Equals `disc(P) / (pq)`, so a positive value means three distinct real
/// roots. Evaluated in exact integer arithmetic.
pub fn discriminant_condition(p: u32, q: u32, r: u32) -> Result<f64> {
    check_order(r)?;
    if r == 2 {
        return Err(Error::UnsupportedOrder {
            r,
            reason: "the cubic only governs r >= 3",
        });
    }
    let (p, q, r) = (i128::from(p), i128::from(q), i128::from(r));
    let quartic = r.pow(4) - 4 * r.pow(3) + 24 * r.pow(2) - 40 * r - 8;
    let value = quartic * p * q + 4 * (1 - r).pow(3) * (p * p + q * q);
    Ok(value as f64)
}

/// Classifies an r-harmonic Clifford torus with `R₁² = t`: minimal when `t`
/// matches `p/(p+q)`, proper otherwise. With `p = q` the comparison against
/// `1/2` is made exactly when `t` is exactly `1/2`.
pub fn clifford_kind(p: u32, q: u32, t: f64) -> SolutionKind {
    let target = f64::from(p) / f64::from(p + q);
    if t == target || (t - target).abs() <= MINIMALITY_TOL {
        SolutionKind::Minimal
    } else {
        SolutionKind::ProperRHarmonic
    }
}

/// All r-harmonic generalized Clifford tori `S^p(R₁) × S^q(R₂)` in
/// `S^{p+q+1}`, one report per admissible `t = R₁²`, sorted by `t`.
pub fn solve_clifford(p: u32, q: u32, r: u32) -> Result<Vec<SolutionReport>> {
    check_order(r)?;
    if p < 1 || q < 1 {
        return Err(Error::Domain {
            what: "min(p, q)",
            value: f64::from(p.min(q)),
            domain: "p, q >= 1",
        });
    }
    let poly = build_p(p, q, r);

    if r == 2 {
        // Biharmonic case: only the equal-radii torus, never other P-roots.
        let t = 0.5;
        let cfg = CliffordConfig::from_r1_squared(p, q, r, t)?;
        let alpha = t.sqrt().asin();
        let mut residuals = BTreeMap::new();
        residuals.insert("P".to_string(), poly.eval(t).abs());
        residuals.insert("eps_c_prime".to_string(), eps_c_deriv(alpha, &cfg)?.abs());
        let kind = if p == q {
            SolutionKind::Minimal
        } else {
            SolutionKind::ProperRHarmonic
        };
        return Ok(vec![SolutionReport {
            parameter: t,
            alpha_star: alpha,
            kind,
            stable: None,
            residuals,
        }]);
    }

    let mut reports = Vec::new();
    for t in root_solve(&poly, (0.0, 1.0), ROOT_TOL) {
        if t <= ADMISSIBILITY_TOL || t >= 1.0 - ADMISSIBILITY_TOL {
            continue;
        }
        let cfg = CliffordConfig::from_r1_squared(p, q, r, t)?;
        let mut residuals = BTreeMap::new();
        residuals.insert("P".to_string(), poly.eval(t).abs());
        residuals.insert("residual_334".to_string(), residual_334(t, &cfg)?.abs());
        reports.push(SolutionReport {
            parameter: t,
            alpha_star: t.sqrt().asin(),
            kind: clifford_kind(p, q, t),
            stable: None,
            residuals,
        });
    }
    Ok(reports)
}

/// Real roots of `poly` inside the open `interval`.
///
/// The interval is cut at a uniform grid of [`SCAN_POINTS`] cells and at the
/// critical points of the polynomial (found recursively from its derivative),
/// so every cell is monotone or tiny. Sign changes are bisected down to
/// machine resolution and polished with Newton steps; critical points where
/// `|P| < tol` and the sign does not change are reported as tangential
/// (even-multiplicity) roots. Roots closer than `tol` are merged.
pub fn root_solve(poly: &CubicPolynomial, interval: (f64, f64), tol: f64) -> Vec<f64> {
    assert!(tol > 0.0, "root_solve needs a positive tolerance");
    real_roots(&poly.coefficients(), interval.0, interval.1, tol)
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let degree = coeffs.len() - 1;
    coeffs[..degree]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (degree - i) as f64)
        .collect()
}

fn real_roots(coeffs: &[f64], lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let start = coeffs.iter().position(|&c| c != 0.0);
    let coeffs = match start {
        Some(i) => &coeffs[i..],
        None => return Vec::new(),
    };
    match coeffs.len() {
        1 => return Vec::new(),
        2 => {
            let x = -coeffs[1] / coeffs[0];
            return if x > lo && x < hi {
                vec![x]
            } else {
                Vec::new()
            };
        }
        _ => {}
    }

    let dcoeffs = derivative(coeffs);
    let critical = real_roots(&dcoeffs, lo, hi, tol);
    let f = |x: f64| horner(coeffs, x);
    let df = |x: f64| horner(&dcoeffs, x);

    let mut cuts: Vec<f64> = (0..=SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / SCAN_POINTS as f64)
        .chain(critical.iter().copied())
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    // One slot per cell [cuts[j], cuts[j+1]].
    let mut cell_roots: Vec<Option<f64>> = cuts
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (f(a), f(b));
            if fa == 0.0 {
                Some(a)
            } else if fa * fb < 0.0 {
                Some(refine(&f, &df, a, b, fa))
            } else {
                None
            }
        })
        .collect();
    let mut roots = Vec::new();
    if let Some(&last) = cuts.last() {
        if f(last) == 0.0 {
            roots.push(last);
        }
    }
    // Critical points decide tangencies. With no sign change on either side a
    // small |P| means an even-multiplicity root; with sign changes on both
    // sides and |P| at rounding level the two brackets are one double root.
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    for &c in &critical {
        let fc = f(c);
        if fc == 0.0 || fc.abs() >= tol {
            continue;
        }
        let Some(j) = cuts.iter().position(|&x| x == c) else {
            continue;
        };
        let left = j.checked_sub(1).filter(|&i| cell_roots[i].is_some());
        let right = Some(j).filter(|&i| i < cell_roots.len() && cell_roots[i].is_some());
        let noise = 64.0 * f64::EPSILON * horner(&abs_coeffs, c.abs());
        match (left, right) {
            (None, None) => roots.push(c),
            (Some(l), Some(r)) if fc.abs() <= noise => {
                cell_roots[l] = None;
                cell_roots[r] = None;
                roots.push(c);
            }
            _ => {}
        }
    }
    roots.extend(cell_roots.into_iter().flatten());

    roots.retain(|&x| x > lo && x < hi);
    roots.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(roots.len());
    for x in roots {
        match merged.last_mut() {
            Some(prev) if x - *prev <= tol => {
                if f(x).abs() < f(*prev).abs() {
                    *prev = x;
                }
            }
            _ => merged.push(x),
        }
    }
    merged
}

fn refine(
    f: &impl Fn(f64) -> f64,
    df: &impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    for _ in 0..3 {
        let slope = df(x);
        if slope == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - fx / slope;
        let fnext = f(next);
        if !(next >= a && next <= b) || fnext.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced_energy::{eps_r_deriv, DerivOrder};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Plain bisection on a sign-change bracket, independent of root_solve.
    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(a) * f(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    }

    fn closed_form_extra_roots(r: u32) -> (f64, f64) {
        let d = 0.5 * ((f64::from(r) - 4.0) / f64::from(r)).sqrt();
        (0.5 - d, 0.5 + d)
    }

    #[test]
    fn hypersphere_examples() {
        assert_relative_eq!(
            solve_hypersphere(2).unwrap().parameter,
            0.5f64.sqrt(),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            solve_hypersphere(4).unwrap().parameter,
            0.5,
            epsilon = 1e-15
        );
        let nine = solve_hypersphere(9).unwrap();
        assert_relative_eq!(nine.parameter, 1.0 / 3.0, epsilon = 1e-15);
        assert!(nine.residuals["eps_prime"] < 1e-12);
        assert_eq!(nine.kind, SolutionKind::ProperRHarmonic);
        assert_eq!(nine.stable, Some(false));
        // Bracket ε_9' on (0, π/2) away from the equator.
        let oracle = bisect(|a| eps_r_deriv(a, 9, DerivOrder::First).unwrap(), 0.1, 1.2);
        assert!((oracle - nine.alpha_star).abs() < 1e-12);
        assert!(solve_hypersphere(1).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let two = enumerate_hypersphere_criticals(2).unwrap();
        let alphas: Vec<f64> = two.iter().map(|r| r.alpha_star).collect();
        for (got, want) in alphas.iter().zip([PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        // Dense sign scan of ε_2' finds the same three points.
        let grid = 10_000;
        let mut changes = Vec::new();
        let d = |a: f64| eps_r_deriv(a, 2, DerivOrder::First).unwrap();
        let mut prev = d(PI / (grid as f64 + 1.0));
        for i in 2..=grid {
            let a = PI * i as f64 / (grid as f64 + 1.0);
            let cur = d(a);
            if prev * cur < 0.0 {
                changes.push(a);
            }
            prev = cur;
        }
        assert_eq!(changes.len(), 3);
        for (c, a) in changes.iter().zip(&alphas) {
            assert!((c - a).abs() < 1e-3);
        }

        let three = enumerate_hypersphere_criticals(3).unwrap();
        assert_eq!(three[1].kind, SolutionKind::Harmonic);
        assert_eq!(three[1].alpha_star, FRAC_PI_2);
        for r in 2..20 {
            let list = enumerate_hypersphere_criticals(r).unwrap();
            assert!((list[0].alpha_star + list[2].alpha_star - PI).abs() < 1e-14);
            assert!(list.windows(2).all(|w| w[0].alpha_star < w[1].alpha_star));
        }
    }

    #[test]
    fn build_p_examples() {
        assert_eq!(
            build_p(1, 2, 3),
            CubicPolynomial::new(9.0, -11.0, 5.0, -1.0)
        );
        for p in 1..9 {
            for q in 1..9 {
                for r in 2..41 {
                    let poly = build_p(p, q, r);
                    assert_eq!(poly.eval(0.0), -f64::from(p));
                    assert_eq!(poly.eval(1.0), f64::from(q));
                }
            }
        }
    }

    #[test]
    fn build_p_factors_when_balanced() {
        for p in 1..6u32 {
            for r in 2..12u32 {
                let poly = build_p(p, p, r);
                let (pf, rf) = (f64::from(p), f64::from(r));
                // p(2t − 1)(rt² − rt + 1) expanded termwise.
                assert_eq!(poly.c3, 2.0 * pf * rf);
                assert_eq!(poly.c2, -3.0 * pf * rf);
                assert_eq!(poly.c1, pf * (rf + 2.0));
                assert_eq!(poly.c0, -pf);
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant_condition(1, 2, 10).unwrap(), 1404.0);
        assert_eq!(discriminant_condition(1, 2, 3).unwrap(), -38.0);
        assert!(matches!(
            discriminant_condition(1, 2, 2),
            Err(Error::UnsupportedOrder { r: 2, .. })
        ));
        // Balanced exponents: value is p² r (r − 4)³.
        for p in 1..5u32 {
            for r in 3..30u32 {
                let expected = f64::from(p * p) * f64::from(r) * (f64::from(r) - 4.0).powi(3);
                assert_eq!(discriminant_condition(p, p, r).unwrap(), expected);
                // Positive exactly when rt² − rt + 1 has two distinct roots.
                assert_eq!(expected > 0.0, r * r > 4 * r);
            }
        }
    }

    #[test]
    fn root_solve_examples() {
        let poly = build_p(1, 2, 3);
        assert!(poly.eval(0.6) < 0.0 && poly.eval(0.62) > 0.0);
        let roots = root_solve(&poly, (0.0, 1.0), 1e-12);
        assert_eq!(roots.len(), 1);
        let oracle = bisect(|t| poly.eval(t), 0.6, 0.62);
        assert!((roots[0] - oracle).abs() < 1e-13);

        let five = root_solve(&build_p(1, 1, 5), (0.0, 1.0), 1e-12);
        let (lo, hi) = closed_form_extra_roots(5);
        assert_eq!(five.len(), 3);
        for (got, want) in five.iter().zip([lo, 0.5, hi]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn root_solve_finds_tangency() {
        // (t − 0.3)² (t − 0.8) has a double root that no sign scan sees.
        let poly = CubicPolynomial::new(1.0, -1.4, 0.57, -0.072);
        let roots = root_solve(&poly, (0.0, 1.0), 1e-9);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.3).abs() < 1e-6);
        assert!((roots[1] - 0.8).abs() < 1e-12);
        // Two roots inside one scan cell.
        let close = CubicPolynomial::new(0.0, 1.0, -(0.5 + 0.50001), 0.5 * 0.50001);
        assert_eq!(root_solve(&close, (0.0, 1.0), 1e-9).len(), 2);
    }

    #[test]
    fn triple_root_counts_once() {
        let roots = root_solve(&build_p(3, 3, 4), (0.0, 1.0), 1e-9);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 0.5).abs() < 1e-5);
    }

    #[test]
    fn solve_clifford_examples() {
        let five = solve_clifford(1, 1, 5).unwrap();
        let (lo, hi) = closed_form_extra_roots(5);
        assert_eq!(five.len(), 3);
        assert!((five[0].parameter - lo).abs() < 1e-10);
        assert!((five[0].parameter - 0.27639).abs() < 1e-5);
        assert!((five[2].parameter - hi).abs() < 1e-10);
        assert_eq!(five[1].parameter, 0.5);
        let kinds: Vec<_> = five.iter().map(|r| r.kind).collect();
        assert_eq!(
            kinds,
            [
                SolutionKind::ProperRHarmonic,
                SolutionKind::Minimal,
                SolutionKind::ProperRHarmonic
            ]
        );

        let three = solve_clifford(1, 1, 3).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].kind, SolutionKind::Minimal);

        // p = 1, q = 3: the minimal radius 1/4 is never a root of P.
        assert_eq!(clifford_kind(1, 3, 0.25), SolutionKind::Minimal);
        for r in 3..30 {
            assert!(solve_clifford(1, 3, r)
                .unwrap()
                .iter()
                .all(|rep| rep.kind == SolutionKind::ProperRHarmonic));
        }
    }

    #[test]
    fn solve_clifford_biharmonic_branch() {
        let unequal = solve_clifford(1, 2, 2).unwrap();
        assert_eq!(unequal.len(), 1);
        assert_eq!(unequal[0].parameter, 0.5);
        assert_eq!(unequal[0].kind, SolutionKind::ProperRHarmonic);
        assert_eq!(unequal[0].stable, None);
        let equal = solve_clifford(4, 4, 2).unwrap();
        assert_eq!(equal[0].kind, SolutionKind::Minimal);
        assert!(solve_clifford(0, 1, 3).is_err());
        assert!(solve_clifford(1, 1, 1).is_err());
    }

    #[test]
    fn balanced_small_orders_are_minimal() {
        for r in 2..=4 {
            let reports = solve_clifford(1, 1, r).unwrap();
            assert_eq!(reports.len(), 1);
            assert_eq!(reports[0].kind, SolutionKind::Minimal);
        }
    }

    #[test]
    fn hypersphere_is_unstable_maximum() {
        for r in 2..=64 {
            let rep = solve_hypersphere(r).unwrap();
            assert!(
                eps_r_deriv(rep.alpha_star, r, DerivOrder::First)
                    .unwrap()
                    .abs()
                    < 1e-12
            );
            assert!(eps_r_deriv(rep.alpha_star, r, DerivOrder::Second).unwrap() < 0.0);
        }
    }

    proptest! {
        #[test]
        fn clifford_has_a_root(p in 1u32..=16, q in 1u32..=16, r in 3u32..60) {
            let reports = solve_clifford(p, q, r).unwrap();
            prop_assert!(!reports.is_empty());
            for rep in &reports {
                prop_assert!(rep.parameter > 0.0 && rep.parameter < 1.0);
                let cfg = CliffordConfig::from_r1_squared(p, q, r, rep.parameter).unwrap();
                prop_assert!(residual_334(rep.parameter, &cfg).unwrap().abs() < 1e-9);
            }
        }

        #[test]
        fn balanced_roots_factor(p in 1u32..10, r in 3u32..60) {
            let roots: Vec<f64> = solve_clifford(p, p, r).unwrap().iter().map(|s| s.parameter).collect();
            if r >= 5 {
                let (lo, hi) = closed_form_extra_roots(r);
                prop_assert_eq!(roots.len(), 3);
                prop_assert!((roots[0] - lo).abs() < 1e-10);
                prop_assert!((roots[1] - 0.5).abs() < 1e-12);
                prop_assert!((roots[2] - hi).abs() < 1e-10);
            } else {
                prop_assert_eq!(roots.len(), 1);
            }
        }
    }
}
