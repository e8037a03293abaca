//! One-variable reduced energies for the two equivariant map families.
//!
//! For the hypersphere family `w ↦ (sin α · w, cos α)` of `S^{n-1}` into
//! `S^n`, the r-energy collapses to a constant times
//!
//! ```text
//! ε_r(α) = sin²α · cos^{2(r-1)}α,        α ∈ (0, π)
//! ```
//!
//! and for the product family `(R₁w, R₂z) ↦ (sin α · w, cos α · z)` of
//! `S^p(R₁) × S^q(R₂)` into `S^{p+q+1}` it collapses to a constant times
//!
//! ```text
//! ε_r^C(α) = sin²α cos²α · [a cos²α + b sin²α]^{r-2},   a = p/R₁², b = q/R₂²
//! ```
//!
//! on `(0, π/2)`. All derivatives here are hand-differentiated closed forms.
//! Numerical differentiation lives in [`crate::fd_oracle`] only.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_open, check_order, Error, Result};

/// Order `r` and ambient dimension `n` for the hypersphere family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersphereConfig {
    r: u32,
    n: u32,
}

impl HypersphereConfig {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        check_order(r)?;
        if n < 2 {
            return Err(Error::Domain {
                what: "n",
                value: f64::from(n),
                domain: "n >= 2",
            });
        }
        Ok(Self { r, n })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Reduced energy `ε_r(α)` tagged with its angle.
    pub fn reduced(&self, alpha: f64) -> Result<EnergyValue> {
        Ok(EnergyValue {
            value: eps_r(alpha, self.r)?,
            alpha,
        })
    }
}

/// Exponents, order and radii for the generalized Clifford torus family.
///
/// Only `R₁²` is stored; `R₂² = 1 − R₁²` is derived so the radii always lie
/// on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CliffordConfig {
    p: u32,
    q: u32,
    r: u32,
    r1_sq: f64,
}

impl CliffordConfig {
    /// Builds the configuration from the first radius `R₁ ∈ (0, 1)`.
    pub fn new(p: u32, q: u32, r: u32, r1: f64) -> Result<Self> {
        check_open("R1", r1, 0.0, 1.0, "(0, 1)")?;
        Self::from_r1_squared(p, q, r, r1 * r1)
    }

    /// Builds the configuration from `t = R₁² ∈ (0, 1)`.
    pub fn from_r1_squared(p: u32, q: u32, r: u32, t: f64) -> Result<Self> {
        check_order(r)?;
        if p < 1 || q < 1 {
            return Err(Error::Domain {
                what: "min(p, q)",
                value: f64::from(p.min(q)),
                domain: "p, q >= 1",
            });
        }
        check_open("R1^2", t, 0.0, 1.0, "(0, 1)")?;
        Ok(Self { p, q, r, r1_sq: t })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn r1_squared(&self) -> f64 {
        self.r1_sq
    }

    pub fn r2_squared(&self) -> f64 {
        1.0 - self.r1_sq
    }

    pub fn r1(&self) -> f64 {
        self.r1_sq.sqrt()
    }

    pub fn r2(&self) -> f64 {
        self.r2_squared().sqrt()
    }

    /// `p / R₁²`
    pub fn a(&self) -> f64 {
        f64::from(self.p) / self.r1_sq
    }

    /// `q / R₂²`
    pub fn b(&self) -> f64 {
        f64::from(self.q) / self.r2_squared()
    }

    /// `p/R₁² − q/R₂²`. The tension field of the map is this factor times
    /// `−sin α cos α ∂/∂α`, so the map is harmonic exactly when it vanishes.
    pub fn tension_factor(&self) -> f64 {
        self.a() - self.b()
    }

    pub fn reduced(&self, alpha: f64) -> Result<EnergyValue> {
        Ok(EnergyValue {
            value: eps_c(alpha, self)?,
            alpha,
        })
    }
}

/// A reduced energy value at an angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyValue {
    pub value: f64,
    pub alpha: f64,
}

/// Which derivative of `ε_r` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

fn check_hypersphere_angle(alpha: f64) -> Result<()> {
    check_open("alpha", alpha, 0.0, PI, "(0, pi)")
}

fn check_clifford_angle(alpha: f64) -> Result<()> {
    check_open("alpha", alpha, 0.0, FRAC_PI_2, "(0, pi/2)")
}

/// `ε_r(α) = sin²α cos^{2(r−1)}α`.
pub fn eps_r(alpha: f64, r: u32) -> Result<f64> {
    check_order(r)?;
    check_hypersphere_angle(alpha)?;
    Ok(eps_r_raw(alpha, r))
}

pub(crate) fn eps_r_raw(alpha: f64, r: u32) -> f64 {
    let (s, c) = alpha.sin_cos();
    s * s * c.powi(2 * (r as i32 - 1))
}

/// Exact first or second derivative of [`eps_r`].
pub fn eps_r_deriv(alpha: f64, r: u32, order: DerivOrder) -> Result<f64> {
    check_order(r)?;
    check_hypersphere_angle(alpha)?;
    Ok(match order {
        DerivOrder::First => eps_r_prime_raw(alpha, r),
        DerivOrder::Second => eps_r_second_raw(alpha, r),
    })
}

// ε' = 2 sin α cos^{2r-3} α (1 − r sin²α)
pub(crate) fn eps_r_prime_raw(alpha: f64, r: u32) -> f64 {
    let (s, c) = alpha.sin_cos();
    let m = 2 * r as i32 - 3;
    2.0 * s * c.powi(m) * (1.0 - f64::from(r) * s * s)
}

// Differentiates 2 s c^m − 2r s³ c^m term by term, m = 2r − 3 ≥ 1.
pub(crate) fn eps_r_second_raw(alpha: f64, r: u32) -> f64 {
    let (s, c) = alpha.sin_cos();
    let m = 2 * r as i32 - 3;
    let mf = f64::from(m);
    let rf = f64::from(r);
    let c_hi = c.powi(m + 1);
    let c_lo = c.powi(m - 1);
    let s2 = s * s;
    2.0 * (c_hi - mf * s2 * c_lo) - 2.0 * rf * (3.0 * s2 * c_hi - mf * s2 * s2 * c_lo)
}

/// `ε_r^C(α) = sin²α cos²α [a cos²α + b sin²α]^{r−2}`; at `r = 2` the
/// bracket is absent.
pub fn eps_c(alpha: f64, cfg: &CliffordConfig) -> Result<f64> {
    check_clifford_angle(alpha)?;
    Ok(eps_c_raw(alpha, cfg))
}

pub(crate) fn eps_c_raw(alpha: f64, cfg: &CliffordConfig) -> f64 {
    let (s, c) = alpha.sin_cos();
    let base = s * s * c * c;
    if cfg.r == 2 {
        return base;
    }
    let bracket = cfg.a() * c * c + cfg.b() * s * s;
    base * bracket.powi(cfg.r as i32 - 2)
}

/// `ln ε_r^C`, finite where `ε_r^C` itself would overflow for large `r`.
pub(crate) fn ln_eps_c_raw(alpha: f64, cfg: &CliffordConfig) -> f64 {
    let (s, c) = alpha.sin_cos();
    let bracket = cfg.a() * c * c + cfg.b() * s * s;
    (s * s * c * c).ln() + f64::from(cfg.r - 2) * bracket.ln()
}

/// Exact `dε_r^C/dα`, by the product rule on `sin²α cos²α` and the bracket.
pub fn eps_c_deriv(alpha: f64, cfg: &CliffordConfig) -> Result<f64> {
    check_clifford_angle(alpha)?;
    let (s, c) = alpha.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let base = s2 * c2;
    let base_prime = 2.0 * s * c * (c2 - s2);
    if cfg.r == 2 {
        return Ok(base_prime);
    }
    let k = cfg.r as i32 - 2;
    let bracket = cfg.a() * c2 + cfg.b() * s2;
    let bracket_prime = 2.0 * (cfg.b() - cfg.a()) * s * c;
    let tail = if k == 1 { 1.0 } else { bracket.powi(k - 1) };
    Ok(base_prime * bracket.powi(k) + base * f64::from(k) * tail * bracket_prime)
}

/// Left side of the explicit criticality condition for `ε_r^C`, `r ≥ 3`,
/// written in `x = sin²α`:
///
/// ```text
/// a + [(r−1)(b − a) − 2a] x + r (a − b) x²
/// ```
///
/// Away from `α ∈ {0, π/2}` one has
/// `dε_r^C/dα = 2 sin α cos α · bracket^{r−3} · residual_334(sin²α)`.
pub fn residual_334(sin_sq: f64, cfg: &CliffordConfig) -> Result<f64> {
    if cfg.r < 3 {
        return Err(Error::UnsupportedOrder {
            r: cfg.r,
            reason: "the explicit criticality condition needs r >= 3",
        });
    }
    let (a, b) = (cfg.a(), cfg.b());
    let rf = f64::from(cfg.r);
    Ok(a + ((rf - 1.0) * (b - a) - 2.0 * a) * sin_sq + rf * (a - b) * sin_sq * sin_sq)
}

/// Riemannian volume of the unit sphere `S^dim ⊂ R^{dim+1}`,
/// `2π^{(dim+1)/2} / Γ((dim+1)/2)`, evaluated by the two-step recurrence
/// `Vol(S^k) = 2π/(k−1) · Vol(S^{k−2})`.
pub fn sphere_volume(dim: u32) -> f64 {
    let (mut k, mut vol) = if dim.is_multiple_of(2) {
        (0, 2.0)
    } else {
        (1, 2.0 * PI)
    };
    while k < dim {
        k += 2;
        vol *= 2.0 * PI / f64::from(k - 1);
    }
    vol
}

/// r-energy of the hypersphere map at angle `alpha`:
/// `½ Vol(S^{n−1}) (n−1)^r ε_r(α)`.
pub fn total_energy(cfg: &HypersphereConfig, alpha: f64) -> Result<f64> {
    let eps = eps_r(alpha, cfg.r)?;
    Ok(energy_scale(cfg) * eps)
}

/// The constant `½ Vol(S^{n−1}) (n−1)^r` relating [`total_energy`] to [`eps_r`].
pub fn energy_scale(cfg: &HypersphereConfig) -> f64 {
    0.5 * sphere_volume(cfg.n - 1) * f64::from(cfg.n - 1).powi(cfg.r as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn eps_r_examples() {
        assert!(eps_r(FRAC_PI_2, 3).unwrap().abs() < 1e-30);
        assert_relative_eq!(eps_r(FRAC_PI_4, 2).unwrap(), 0.25, epsilon = 1e-15);
        let a = (1.0 / 3f64.sqrt()).asin();
        assert_relative_eq!(eps_r(a, 3).unwrap(), 4.0 / 27.0, epsilon = 1e-15);
    }

    #[test]
    fn eps_r_rejects_bad_input() {
        assert!(matches!(eps_r(0.0, 2), Err(Error::Domain { .. })));
        assert!(matches!(eps_r(PI, 2), Err(Error::Domain { .. })));
        assert!(matches!(eps_r(1.0, 1), Err(Error::Domain { .. })));
        assert!(eps_r(f64::NAN, 2).is_err());
    }

    #[test]
    fn eps_r_deriv_examples() {
        let a = (0.5f64.sqrt()).asin();
        assert!(eps_r_deriv(a, 2, DerivOrder::First).unwrap().abs() < 1e-15);
        assert!(eps_r_deriv(FRAC_PI_2, 3, DerivOrder::First).unwrap().abs() < 1e-30);
        let a5 = (1.0 / 5f64.sqrt()).asin();
        assert!(eps_r_deriv(a5, 5, DerivOrder::Second).unwrap() < 0.0);
    }

    #[test]
    fn eps_c_examples() {
        let half = CliffordConfig::from_r1_squared(1, 1, 2, 0.5).unwrap();
        assert_relative_eq!(eps_c(FRAC_PI_4, &half).unwrap(), 0.25, epsilon = 1e-15);
        let r3 = CliffordConfig::from_r1_squared(1, 1, 3, 0.5).unwrap();
        assert_relative_eq!(eps_c(FRAC_PI_4, &r3).unwrap(), 0.5, epsilon = 1e-15);
        assert!(eps_c(1e-9, &r3).unwrap() < 1e-17);
    }

    #[test]
    fn clifford_config_validation() {
        assert!(CliffordConfig::new(1, 1, 2, 0.0).is_err());
        assert!(CliffordConfig::new(1, 1, 2, 1.0).is_err());
        assert!(CliffordConfig::new(0, 1, 2, 0.5).is_err());
        assert!(CliffordConfig::new(1, 1, 1, 0.5).is_err());
        let cfg = CliffordConfig::new(2, 3, 4, 0.6).unwrap();
        assert_relative_eq!(cfg.r1_squared() + cfg.r2_squared(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn eps_c_deriv_examples() {
        for r in 2..8 {
            let cfg = CliffordConfig::from_r1_squared(3, 3, r, 0.5).unwrap();
            let scale = eps_c(FRAC_PI_4, &cfg).unwrap();
            assert!(eps_c_deriv(FRAC_PI_4, &cfg).unwrap().abs() < 1e-12 * scale);
        }
        let cfg = CliffordConfig::from_r1_squared(1, 1, 3, 0.5).unwrap();
        assert!(eps_c_deriv(0.05, &cfg).unwrap() > 0.0);
        assert!(matches!(
            residual_334(0.3, &CliffordConfig::from_r1_squared(1, 2, 2, 0.3).unwrap()),
            Err(Error::UnsupportedOrder { r: 2, .. })
        ));
    }

    #[test]
    fn sphere_volumes() {
        assert_relative_eq!(sphere_volume(0), 2.0);
        assert_relative_eq!(sphere_volume(1), 2.0 * PI, epsilon = 1e-15);
        assert_relative_eq!(sphere_volume(2), 4.0 * PI, epsilon = 1e-15);
        assert_relative_eq!(sphere_volume(3), 2.0 * PI * PI, epsilon = 1e-14);
        for dim in 0..12u32 {
            let half = f64::from(dim + 1) / 2.0;
            let expected = 2.0 * PI.powf(half) / statrs::function::gamma::gamma(half);
            assert_relative_eq!(sphere_volume(dim), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn total_energy_examples() {
        let cfg = HypersphereConfig::new(2, 3).unwrap();
        assert_relative_eq!(
            total_energy(&cfg, FRAC_PI_4).unwrap(),
            2.0 * PI,
            epsilon = 1e-13
        );
        assert!(total_energy(&cfg, FRAC_PI_2).unwrap().abs() < 1e-30);
        let cfg3 = HypersphereConfig::new(3, 3).unwrap();
        let a = 0.77;
        let ratio = total_energy(&cfg3, a).unwrap() / total_energy(&cfg, a).unwrap();
        assert_relative_eq!(ratio, 2.0 * a.cos().powi(2), max_relative = 1e-14);
        assert!(HypersphereConfig::new(2, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn eps_r_symmetric(alpha in 0.01f64..3.13, r in 2u32..12) {
            let lhs = eps_r(PI - alpha, r).unwrap();
            let rhs = eps_r(alpha, r).unwrap();
            // π − α carries an absolute rounding error of one ulp of π.
            let small = alpha.sin().abs().min(alpha.cos().abs());
            let slack = 4.0 * f64::EPSILON * PI / small * f64::from(2 * r);
            prop_assert!((lhs - rhs).abs() <= (1e-14 + slack) * rhs.abs());
        }

        #[test]
        fn eps_r_recursion(alpha in 0.01f64..3.13, r in 2u32..12) {
            let next = eps_r(alpha, r + 1).unwrap();
            let prev = eps_r(alpha, r).unwrap() * alpha.cos().powi(2);
            prop_assert!((next - prev).abs() <= 1e-15 * next.abs() + 1e-300);
        }

        #[test]
        fn eps_r_positive_off_zeros(alpha in 0.01f64..3.13, r in 2u32..12) {
            prop_assume!((alpha - FRAC_PI_2).abs() > 1e-6);
            prop_assert!(eps_r(alpha, r).unwrap() > 0.0);
        }

        #[test]
        fn eps_r_derivs_match_differences(alpha in 0.05f64..3.09, r in 2u32..10) {
            let h = 1e-5;
            let f = |a: f64| eps_r_raw(a, r);
            let g = |a: f64| eps_r_prime_raw(a, r);
            let d1 = eps_r_deriv(alpha, r, DerivOrder::First).unwrap();
            let d2 = eps_r_deriv(alpha, r, DerivOrder::Second).unwrap();
            prop_assert!((central(f, alpha, h) - d1).abs() < 1e-6);
            prop_assert!((central(g, alpha, h) - d2).abs() < 1e-6);
        }

        #[test]
        fn eps_c_balanced_reduces(alpha in 0.01f64..1.56, p in 1u32..8, r in 2u32..9) {
            // p/R1² = q/R2² with q = p forces R1² = 1/2.
            let cfg = CliffordConfig::from_r1_squared(p, p, r, 0.5).unwrap();
            let (s, c) = alpha.sin_cos();
            let expected = cfg.a().powi(r as i32 - 2) * s * s * c * c;
            let got = eps_c(alpha, &cfg).unwrap();
            prop_assert!((got - expected).abs() <= 1e-13 * expected.abs());
        }

        #[test]
        fn residual_matches_derivative(
            alpha in 0.02f64..1.55,
            t in 0.02f64..0.98,
            p in 1u32..10,
            q in 1u32..10,
            r in 3u32..12,
        ) {
            let cfg = CliffordConfig::from_r1_squared(p, q, r, t).unwrap();
            let (s, c) = alpha.sin_cos();
            let bracket = cfg.a() * c * c + cfg.b() * s * s;
            let normalized = eps_c_deriv(alpha, &cfg).unwrap()
                / (2.0 * s * c * bracket.powi(r as i32 - 3));
            let res = residual_334(s * s, &cfg).unwrap();
            let scale = cfg.a().abs().max(cfg.b().abs()) * f64::from(r);
            prop_assert!((normalized - res).abs() <= 1e-9 * scale);
        }
    }
}
