//! Operator-level calculus on the pull-back bundle of the hypersphere map
//! `φ_α : S^{n−1} → S^n`, `w ↦ (sin α · w, cos α)`.
//!
//! On `S^n` we use coordinates `(w₁, …, w_{n−1}, α)` in which
//!
//! ```text
//! g = sin²α · g_{S^{n−1}} + dα²
//! ```
//!
//! Every section that appears in the r-tension field of `φ_α` is either
//! *radial*, `A · ∂/∂α`, or *tangential*, `B · Σ dwⁱ ⊗ ∂/∂wᵢ` (equivalently
//! `e_j ↦ B e_j` on an orthonormal frame of the domain). The operators below
//! act on that one scalar coefficient:
//!
//! | operator            | input      | output     | coefficient map          |
//! |---------------------|------------|------------|--------------------------|
//! | [`tension`]         |            | radial     | `−(n−1) sin α cos α`     |
//! | [`apply_d`]         | radial     | tangential | `A cot α`                |
//! | [`apply_dstar`]     | tangential | radial     | `(n−1) B sin α cos α`    |
//! | [`rough_laplacian`] | radial     | radial     | `(n−1) cos²α · A`        |
//!
//! Frame sums over the `n − 1` domain directions are always multiplied out
//! analytically, using `|dφ(e_j)|² = sin²α` and `⟨dφ(e_j), ∂/∂α⟩ = 0`.
//! Curvature is that of the unit sphere, `R(X, Y)W = ⟨Y, W⟩X − ⟨X, W⟩Y`, and
//! `Δ̄ = d*d` is the non-negative rough Laplacian.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{check_open, check_order, Error, Result};
use crate::reduced_energy::{sphere_volume, HypersphereConfig};

/// Shape of an equivariant section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    /// `coeff · ∂/∂α`
    Radial,
    /// `coeff · Σᵢ dwⁱ ⊗ ∂/∂wᵢ`
    Tangential,
}

/// An equivariant section of `φ_α⁻¹ T S^n`, carried by one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivariantSection {
    pub kind: SectionKind,
    pub coeff: f64,
    pub alpha: f64,
    pub n: u32,
}

impl EquivariantSection {
    pub fn radial(coeff: f64, alpha: f64, n: u32) -> Self {
        Self {
            kind: SectionKind::Radial,
            coeff,
            alpha,
            n,
        }
    }

    pub fn tangential(coeff: f64, alpha: f64, n: u32) -> Self {
        Self {
            kind: SectionKind::Tangential,
            coeff,
            alpha,
            n,
        }
    }

    fn frame_count(&self) -> f64 {
        f64::from(self.n - 1)
    }

    /// Pointwise squared norm, summed over the domain frame for tangential
    /// sections: `A²` or `(n−1) sin²α · B²`.
    pub fn norm_sq(&self) -> f64 {
        match self.kind {
            SectionKind::Radial => self.coeff * self.coeff,
            SectionKind::Tangential => {
                let s = self.alpha.sin();
                self.frame_count() * s * s * self.coeff * self.coeff
            }
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coeff: self.coeff * factor,
            ..*self
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.alpha != other.alpha || self.n != other.n {
            return Err(Error::Contract(format!(
                "cannot combine {:?} section at (alpha = {}, n = {}) with {:?} section at (alpha = {}, n = {})",
                self.kind, self.alpha, self.n, other.kind, other.alpha, other.n
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            coeff: self.coeff + other.coeff,
            ..*self
        })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(-1.0))
    }

    fn expect_kind(&self, kind: SectionKind, op: &str) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Contract(format!(
                "{op} expects a {kind:?} section, got {:?}",
                self.kind
            )));
        }
        if !self.coeff.is_finite() {
            return Err(Error::Contract(format!(
                "{op} received a non-finite coefficient"
            )));
        }
        Ok(())
    }
}

fn check_angle(alpha: f64) -> Result<()> {
    check_open("alpha", alpha, 0.0, PI, "(0, pi)")
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain {
            what: "n",
            value: f64::from(n),
            domain: "n >= 2",
        });
    }
    Ok(())
}

/// `τ(φ_α) = F(α) ∂/∂α` with `F(α) = −(n−1) sin α cos α`.
pub fn tension(alpha: f64, n: u32) -> Result<EquivariantSection> {
    check_angle(alpha)?;
    check_n(n)?;
    let (s, c) = alpha.sin_cos();
    Ok(EquivariantSection::radial(
        -f64::from(n - 1) * s * c,
        alpha,
        n,
    ))
}

/// `d` of a radial section: `∇_{∂/∂wᵢ}(A ∂/∂α) = A Γʲ_{iα} ∂/∂wⱼ = A cot α ∂/∂wᵢ`.
pub fn apply_d(s: &EquivariantSection) -> Result<EquivariantSection> {
    s.expect_kind(SectionKind::Radial, "apply_d")?;
    check_angle(s.alpha)?;
    let (sin, cos) = s.alpha.sin_cos();
    Ok(EquivariantSection::tangential(
        s.coeff * cos / sin,
        s.alpha,
        s.n,
    ))
}

/// `d*` of a tangential section. Only the `Γ^α_{ij} = −sin α cos α (g_S)_{ij}`
/// part of `∇(dwˡ ⊗ ∂/∂w_ℓ)` survives the trace, giving
/// `(n−1) B sin α cos α ∂/∂α`.
pub fn apply_dstar(s: &EquivariantSection) -> Result<EquivariantSection> {
    s.expect_kind(SectionKind::Tangential, "apply_dstar")?;
    let (sin, cos) = s.alpha.sin_cos();
    Ok(EquivariantSection::radial(
        s.frame_count() * s.coeff * sin * cos,
        s.alpha,
        s.n,
    ))
}

/// `Δ̄ = d*d` on radial sections.
pub fn rough_laplacian(s: &EquivariantSection) -> Result<EquivariantSection> {
    apply_dstar(&apply_d(s)?)
}

/// `∇^φ_{e_j}` of a radial section in an orthonormal domain frame; the result
/// is `coeff · cot α · e_j`, stored as a tangential section.
pub fn nabla_frame(s: &EquivariantSection) -> Result<EquivariantSection> {
    s.expect_kind(SectionKind::Radial, "nabla_frame")?;
    check_angle(s.alpha)?;
    let (sin, cos) = s.alpha.sin_cos();
    Ok(EquivariantSection::tangential(
        s.coeff * cos / sin,
        s.alpha,
        s.n,
    ))
}

/// Slot pattern of a frame-summed curvature term `Σ_j R(X_j, Y_j) dφ(e_j)`.
#[derive(Debug, Clone, Copy)]
pub enum CurvatureTerm<'a> {
    /// `R(X, dφ(e_j)) dφ(e_j)` with `X` radial.
    SectionFrame(&'a EquivariantSection),
    /// `R(dφ(e_j), X) dφ(e_j)` with `X` radial.
    FrameSection(&'a EquivariantSection),
    /// `R(X(e_j), Y(e_j)) dφ(e_j)` with one radial and one tangential slot; a
    /// tangential slot is evaluated on `e_j`.
    Pair(&'a EquivariantSection, &'a EquivariantSection),
}

/// Evaluates a frame-summed curvature term of the unit sphere. The output is
/// always radial.
pub fn curvature_action(term: CurvatureTerm<'_>) -> Result<EquivariantSection> {
    match term {
        CurvatureTerm::SectionFrame(x) | CurvatureTerm::FrameSection(x) => {
            x.expect_kind(SectionKind::Radial, "curvature_action")?;
            let s = x.alpha.sin();
            // R(∂α, e_j)e_j = ⟨e_j, e_j⟩∂α − ⟨∂α, e_j⟩e_j = sin²α ∂α
            let value = x.frame_count() * s * s * x.coeff;
            let sign = if matches!(term, CurvatureTerm::SectionFrame(_)) {
                1.0
            } else {
                -1.0
            };
            Ok(EquivariantSection::radial(sign * value, x.alpha, x.n))
        }
        CurvatureTerm::Pair(x, y) => {
            if x.alpha != y.alpha || x.n != y.n {
                return Err(Error::Contract(
                    "curvature_action pair lives over different points".to_string(),
                ));
            }
            let sign = match (x.kind, y.kind) {
                // R(A∂α, B e_j)e_j = AB ⟨e_j, e_j⟩ ∂α
                (SectionKind::Radial, SectionKind::Tangential) => 1.0,
                // R(B e_j, A∂α)e_j = −AB ⟨e_j, e_j⟩ ∂α
                (SectionKind::Tangential, SectionKind::Radial) => -1.0,
                (kx, ky) => {
                    return Err(Error::Contract(format!(
                        "curvature_action pair needs one radial and one tangential slot, got {kx:?} and {ky:?}"
                    )))
                }
            };
            if !x.coeff.is_finite() || !y.coeff.is_finite() {
                return Err(Error::Contract(
                    "curvature_action received a non-finite coefficient".to_string(),
                ));
            }
            let s = x.alpha.sin();
            Ok(EquivariantSection::radial(
                sign * x.frame_count() * s * s * x.coeff * y.coeff,
                x.alpha,
                x.n,
            ))
        }
    }
}

/// `Δ̄^m τ(φ_α)` for `m = −1, 0, 1, …, max`, with `Δ̄^{−1} τ = 0` at index 0.
fn laplacian_ladder(alpha: f64, n: u32, max: usize) -> Result<Vec<EquivariantSection>> {
    let tau = tension(alpha, n)?;
    let mut ladder = Vec::with_capacity(max + 2);
    ladder.push(EquivariantSection::radial(0.0, alpha, n));
    ladder.push(tau);
    for _ in 0..max {
        let next = rough_laplacian(ladder.last().expect("ladder is non-empty"))?;
        ladder.push(next);
    }
    Ok(ladder)
}

/// `Δ̄^m τ(φ_α)` by `m`-fold application of [`rough_laplacian`].
pub fn laplacian_power(alpha: f64, n: u32, m: usize) -> Result<EquivariantSection> {
    Ok(laplacian_ladder(alpha, n, m)?[m + 1])
}

/// The r-tension field of `φ_α`, assembled term by term.
///
/// With `Δ̄^{−1} = 0`, frame sums over `j` understood, and `r = 2s`:
///
/// ```text
/// τ_{2s} = Δ̄^{2s−1}τ − R(Δ̄^{2s−2}τ, dφe_j)dφe_j
///        − Σ_{ℓ=1}^{s−1} { R(∇_{e_j}Δ̄^{s+ℓ−2}τ, Δ̄^{s−ℓ−1}τ)dφe_j
///                        − R(Δ̄^{s+ℓ−2}τ, ∇_{e_j}Δ̄^{s−ℓ−1}τ)dφe_j }
/// ```
///
/// and for `r = 2s + 1`:
///
/// ```text
/// τ_{2s+1} = Δ̄^{2s}τ − R(Δ̄^{2s−1}τ, dφe_j)dφe_j
///          − Σ_{ℓ=1}^{s−1} { R(∇_{e_j}Δ̄^{s+ℓ−1}τ, Δ̄^{s−ℓ−1}τ)dφe_j
///                          − R(Δ̄^{s+ℓ−1}τ, ∇_{e_j}Δ̄^{s−ℓ−1}τ)dφe_j }
///          − R(∇_{e_j}Δ̄^{s−1}τ, Δ̄^{s−1}τ)dφe_j
/// ```
///
/// Empty ℓ-sums contribute zero. The result is radial; its coefficient is
/// `−((n−1)^r / 2) ε_r′(α)`.
pub fn tau_r(alpha: f64, n: u32, r: u32) -> Result<EquivariantSection> {
    check_order(r)?;
    let r = r as usize;
    let ladder = laplacian_ladder(alpha, n, r - 1)?;
    // Δ̄^m τ, with m = −1 mapped to the zero section.
    let lap = |m: isize| -> &EquivariantSection { &ladder[(m + 1) as usize] };
    let s = (r / 2) as isize;
    let odd = r % 2 == 1;
    let shift = if odd { 1 } else { 0 };

    let top = lap(r as isize - 1);
    let frame_term = curvature_action(CurvatureTerm::SectionFrame(lap(r as isize - 2)))?;
    let mut total = top.minus(&frame_term)?;

    for l in 1..s {
        let hi = lap(s + l - 2 + shift);
        let lo = lap(s - l - 1);
        let first = curvature_action(CurvatureTerm::Pair(&nabla_frame(hi)?, lo))?;
        let second = curvature_action(CurvatureTerm::Pair(hi, &nabla_frame(lo)?))?;
        total = total.minus(&first.minus(&second)?)?;
    }

    if odd {
        let base = lap(s - 1);
        let last = curvature_action(CurvatureTerm::Pair(&nabla_frame(base)?, base))?;
        total = total.minus(&last)?;
    }

    if total.kind != SectionKind::Radial {
        return Err(Error::Contract(
            "r-tension field left the radial shape".to_string(),
        ));
    }
    Ok(total)
}

/// r-energy of `φ_α` computed from the operator ladder:
/// `½ Vol(S^{n−1}) |Δ̄^{s−1}τ|²` for `r = 2s` and
/// `½ Vol(S^{n−1}) Σ_j |∇_{e_j} Δ̄^{s−1}τ|²` for `r = 2s + 1`.
pub fn operator_energy(cfg: &HypersphereConfig, alpha: f64) -> Result<f64> {
    let r = cfg.r() as usize;
    let s = r / 2;
    let inner = laplacian_power(alpha, cfg.n(), s - 1)?;
    let integrand = if r.is_multiple_of(2) {
        inner.norm_sq()
    } else {
        nabla_frame(&inner)?.norm_sq()
    };
    Ok(0.5 * sphere_volume(cfg.n() - 1) * integrand)
}

/// Dense `Γᵏᵢⱼ` values at one point of the `(θ, α)` chart of `S^n`, indexed
/// `[k][i][j]` with `α` as the last coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelSample {
    dim: usize,
    values: Vec<f64>,
}

impl ChristoffelSample {
    fn zeros(dim: usize) -> Self {
        Self {
            dim,
            values: vec![0.0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.values[(k * self.dim + i) * self.dim + j]
    }

    fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.values[(k * self.dim + i) * self.dim + j] = v;
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "samples of different dimension");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Point of the chart on `S^n`: hyperspherical angles `θ₁, …, θ_{n−1}` on
/// `S^{n−1}` (all but the last in `(0, π)`) and the warp angle `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub theta: Vec<f64>,
    pub alpha: f64,
}

impl ChartPoint {
    /// Dimension `n` of the target sphere `S^n`.
    pub fn n(&self) -> usize {
        self.theta.len() + 1
    }

    fn check(&self) -> Result<()> {
        if self.theta.is_empty() {
            return Err(Error::Domain {
                what: "n",
                value: 1.0,
                domain: "n >= 2",
            });
        }
        let singular = |v: f64| v.sin().abs() < 1e-8;
        if singular(self.alpha) {
            return Err(Error::ChartSingularity(format!(
                "sin(alpha) = 0 at alpha = {}",
                self.alpha
            )));
        }
        let last = self.theta.len() - 1;
        if let Some((m, t)) = self.theta[..last]
            .iter()
            .enumerate()
            .find(|(_, t)| singular(**t))
        {
            return Err(Error::ChartSingularity(format!(
                "sin(theta_{}) = 0 at {t}",
                m + 1
            )));
        }
        Ok(())
    }
}

/// Diagonal of the round metric on `S^{n−1}` in hyperspherical angles,
/// `(g_S)_{ii} = Π_{m<i} sin²θ_m`.
fn sphere_metric_diag(theta: &[f64]) -> Vec<f64> {
    let mut diag = Vec::with_capacity(theta.len());
    let mut prod = 1.0;
    for t in theta {
        diag.push(prod);
        prod *= t.sin().powi(2);
    }
    diag
}

/// The Christoffel symbols of `sin²α g_{S^{n−1}} + dα²`, in closed form.
///
/// * all indices tangential: the symbols of `S^{n−1}` itself;
/// * `Γ^α_{ij} = −sin α cos α (g_S)_{ij}`;
/// * `Γʲ_{iα} = Γʲ_{αi} = cot α δʲᵢ`;
/// * `Γʲ_{αα} = 0 = Γ^α_{jα}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelTable {
    point: ChartPoint,
    g_sphere: Vec<f64>,
}

impl ChristoffelTable {
    pub fn new(point: ChartPoint) -> Result<Self> {
        point.check()?;
        let g_sphere = sphere_metric_diag(&point.theta);
        Ok(Self { point, g_sphere })
    }

    /// Index of the `α` coordinate.
    fn radial(&self) -> usize {
        self.point.theta.len()
    }

    /// `ˢΓᵏᵢⱼ` of the round `S^{n−1}` in hyperspherical angles.
    fn sphere_gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        let theta = &self.point.theta;
        let cot = |m: usize| theta[m].cos() / theta[m].sin();
        if k == i && k == j {
            0.0
        } else if k == i && j < k {
            cot(j)
        } else if k == j && i < k {
            cot(i)
        } else if i == j && k < i {
            // −½ ∂_k g_ii / g_kk = −cot θ_k · g_ii / g_kk
            -cot(k) * self.g_sphere[i] / self.g_sphere[k]
        } else {
            0.0
        }
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        let a = self.radial();
        let (s, c) = self.point.alpha.sin_cos();
        match (k == a, i == a, j == a) {
            (false, false, false) => self.sphere_gamma(k, i, j),
            (true, false, false) => {
                if i == j {
                    -s * c * self.g_sphere[i]
                } else {
                    0.0
                }
            }
            (false, true, false) if k == j => c / s,
            (false, false, true) if k == i => c / s,
            _ => 0.0,
        }
    }

    pub fn to_sample(&self) -> ChristoffelSample {
        let dim = self.point.n();
        let mut out = ChristoffelSample::zeros(dim);
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    out.set(k, i, j, self.gamma(k, i, j));
                }
            }
        }
        out
    }
}

/// Finite-difference step for metric derivatives in [`christoffel_numeric`].
pub const METRIC_FD_STEP: f64 = 1e-5;

fn full_metric(coords: &[f64]) -> DMatrix<f64> {
    let dim = coords.len();
    let alpha = coords[dim - 1];
    let warp = alpha.sin().powi(2);
    let diag = sphere_metric_diag(&coords[..dim - 1]);
    DMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            0.0
        } else if i == dim - 1 {
            1.0
        } else {
            warp * diag[i]
        }
    })
}

fn metric_partial(coords: &[f64], l: usize, h: f64) -> DMatrix<f64> {
    let shifted = |delta: f64| {
        let mut y = coords.to_vec();
        y[l] += delta;
        full_metric(&y)
    };
    let central = |step: f64| (shifted(step) - shifted(-step)) / (2.0 * step);
    // One Richardson level on top of the central difference.
    (central(h / 2.0) * 4.0 - central(h)) / 3.0
}

/// All `Γᵏᵢⱼ` at `point`, computed only from the chart metric
/// `sin²α g_{S^{n−1}} + dα²` via
/// `Γᵏᵢⱼ = ½ gᵏˡ (∂ᵢ g_{jl} + ∂ⱼ g_{li} − ∂ₗ g_{ij})`, with the metric
/// derivatives taken by Richardson-extrapolated central differences.
pub fn christoffel_numeric(point: &ChartPoint) -> Result<ChristoffelSample> {
    point.check()?;
    let mut coords = point.theta.clone();
    coords.push(point.alpha);
    let dim = coords.len();
    let g_inv = full_metric(&coords)
        .try_inverse()
        .ok_or_else(|| Error::ChartSingularity("metric is not invertible".to_string()))?;
    let partials: Vec<DMatrix<f64>> = (0..dim)
        .map(|l| metric_partial(&coords, l, METRIC_FD_STEP))
        .collect();

    let mut out = ChristoffelSample::zeros(dim);
    for k in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let sum: f64 = (0..dim)
                    .map(|l| {
                        g_inv[(k, l)]
                            * (partials[i][(j, l)] + partials[j][(l, i)] - partials[l][(i, j)])
                    })
                    .sum();
                out.set(k, i, j, 0.5 * sum);
            }
        }
    }
    Ok(out)
}
