//! The BVP data model: boundary data (α, β, η), the solvability scalar μ,
//! validation, and the combined kernel Γ of the solution representation
//!
//! ```text
//! Γ(t,s) = G(t,s) + (1/μ) Σᵢ αᵢ [K(ηᵢ₊₁,s) − K(ηᵢ,s)] + (1/μ) Σᵢ βᵢ G(ηᵢ,s),
//! ```
//!
//! so that the unique solution of u⁽⁶⁾ + h = 0 under the boundary
//! conditions is u(t) = ∫₀¹ Γ(t,s) h(s) ds whenever μ ≠ 0.

use crate::expr::ExprAst;
use crate::kernels::{green_g, green_k};

/// Problems with |μ| below this floor are rejected as degenerate: 1/μ
/// amplifies quadrature error without bound as μ → 0.
pub const MU_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValidationError {
    #[error("alphas: expected m - 1 = {expected} entries for m = {m} eta points, got {got}")]
    AlphaArity { m: usize, expected: usize, got: usize },
    #[error("betas: expected m = {expected} entries to match etas, got {got}")]
    BetaArity { expected: usize, got: usize },
    #[error("etas: at least two points are required, got m = {0}")]
    TooFewEtas(usize),
    #[error("etas[{index}] = {value}: must lie in (0, 1]")]
    EtaOutOfRange { index: usize, value: f64 },
    #[error("etas[{index}] = {value} must strictly exceed the previous eta {previous}")]
    EtaNotIncreasing {
        index: usize,
        value: f64,
        previous: f64,
    },
    #[error("{field} contains a non-finite entry")]
    NonFinite { field: &'static str },
    #[error("mu = {0}: |mu| is below the degeneracy floor {MU_FLOOR}")]
    DegenerateMu(f64),
}

/// Boundary weights and points of the nonlocal condition
/// u(0) = Σᵢ αᵢ ∫_{ηᵢ}^{ηᵢ₊₁} u + Σᵢ βᵢ u(ηᵢ), with m ≥ 2 points
/// 0 < η₁ < … < η_m ≤ 1. Negative and sign-mixed weights are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    etas: Vec<f64>,
}

impl BoundaryData {
    pub fn new(
        alphas: Vec<f64>,
        betas: Vec<f64>,
        etas: Vec<f64>,
    ) -> Result<Self, Vec<ValidationError>> {
        let data = BoundaryData {
            alphas,
            betas,
            etas,
        };
        let errors = data.check();
        if errors.is_empty() {
            Ok(data)
        } else {
            Err(errors)
        }
    }

    fn check(&self) -> Vec<ValidationError> {
        let mut errors = Vec::new();
        let m = self.etas.len();
        if m < 2 {
            errors.push(ValidationError::TooFewEtas(m));
        }
        if self.alphas.len() + 1 != m {
            errors.push(ValidationError::AlphaArity {
                m,
                expected: m.saturating_sub(1),
                got: self.alphas.len(),
            });
        }
        if self.betas.len() != m {
            errors.push(ValidationError::BetaArity {
                expected: m,
                got: self.betas.len(),
            });
        }
        for (field, values) in [("alphas", &self.alphas), ("betas", &self.betas)] {
            if values.iter().any(|v| !v.is_finite()) {
                errors.push(ValidationError::NonFinite { field });
            }
        }
        let mut previous = 0.0;
        for (index, &value) in self.etas.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 || value > 1.0 {
                errors.push(ValidationError::EtaOutOfRange { index, value });
            } else if index > 0 && value <= previous {
                errors.push(ValidationError::EtaNotIncreasing {
                    index,
                    value,
                    previous,
                });
            }
            previous = value;
        }
        errors
    }

    pub fn m(&self) -> usize {
        self.etas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn etas(&self) -> &[f64] {
        &self.etas
    }
}

/// μ = 1 − (Σᵢ αᵢ (ηᵢ₊₁ − ηᵢ) + Σᵢ βᵢ); the α sum pairs αᵢ with the gap
/// (ηᵢ₊₁ − ηᵢ) for i = 1..m−1 and the β sum runs over all m points.
pub fn compute_mu(boundary: &BoundaryData) -> f64 {
    let etas = boundary.etas();
    let alpha_sum: f64 = boundary
        .alphas()
        .iter()
        .enumerate()
        .map(|(i, &a)| a * (etas[i + 1] - etas[i]))
        .sum();
    let beta_sum: f64 = boundary.betas().iter().sum();
    1.0 - (alpha_sum + beta_sum)
}

/// A validated problem: the nonlinearity f(t,u) as a parsed expression,
/// boundary data, and the derived μ (always recomputed, never trusted
/// from input). Immutable after validation; all operations are pure.
#[derive(Debug, Clone)]
pub struct BvpProblem {
    f: ExprAst,
    boundary: BoundaryData,
    mu: f64,
}

impl BvpProblem {
    pub fn new(f: ExprAst, boundary: BoundaryData) -> Result<Self, Vec<ValidationError>> {
        let mut errors = boundary.check();
        let mu = if errors.is_empty() {
            compute_mu(&boundary)
        } else {
            f64::NAN
        };
        if errors.is_empty() && !(mu.abs() > MU_FLOOR) {
            errors.push(ValidationError::DegenerateMu(mu));
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(BvpProblem { f, boundary, mu })
    }

    pub fn f(&self) -> &ExprAst {
        &self.f
    }

    pub fn boundary(&self) -> &BoundaryData {
        &self.boundary
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Γ(t,s), the kernel of the fixed-point operator. Inherits the zero
    /// rows of G and K at s = 0 and s = 1.
    pub fn combined_kernel(&self, t: f64, s: f64) -> f64 {
        let etas = self.boundary.etas();
        let mut acc = green_g(t, s);
        let inv_mu = 1.0 / self.mu;
        for (i, &alpha) in self.boundary.alphas().iter().enumerate() {
            acc += inv_mu * alpha * (green_k(etas[i + 1], s) - green_k(etas[i], s));
        }
        for (i, &beta) in self.boundary.betas().iter().enumerate() {
            acc += inv_mu * beta * green_g(etas[i], s);
        }
        acc
    }

    /// Breakpoints for quadrature in s of a kernel row at t₀: the η points
    /// plus the branch seam s = t₀, each of which is a kink of Γ(t₀,·).
    pub fn row_breakpoints(&self, extra: &[f64]) -> Vec<f64> {
        let mut points: Vec<f64> = self
            .boundary
            .etas()
            .iter()
            .chain(extra.iter())
            .copied()
            .collect();
        points.retain(|&x| x > 0.0 && x < 1.0);
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        points.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let mut bps = Vec::with_capacity(points.len() + 2);
        bps.push(0.0);
        bps.extend(points);
        bps.push(1.0);
        bps
    }
}
