//! Solvability certificates for the BVP.
//!
//! Uniqueness (Rus, two metrics): with L a Lipschitz constant of f in u
//! and p > 1,
//!
//! ```text
//! Φ = ‖G(1,·)‖_p + (1/|μ|) Σᵢ |αᵢ| ‖K(ηᵢ₊₁,·) − K(ηᵢ,·)‖_p
//!                + (1/|μ|) Σᵢ |βᵢ| ‖G(ηᵢ,·)‖_p,
//! ```
//!
//! and LΦ < 1 certifies a unique solution (the fixed-point operator is a
//! contraction in the L^p metric).
//!
//! Existence (Krasnoselskii–Zabreiko): when f(t,u) = p(t)·g(u) with
//! asymptotic slope γ = lim g(u)/u and p(t₀)g(0) ≠ 0 for some t₀,
//!
//! ```text
//! M = p* · (1 + (1/|μ|) Σᵢ |αᵢ|(ηᵢ₊₁ − ηᵢ) + (1/|μ|) Σᵢ |βᵢ|) · ∫₀¹ G(1,s) ds,
//! p* = max |p(t)|,
//! ```
//!
//! and |γ| ≤ 1/M certifies at least one nontrivial solution. The norm
//! chain behind it needs 1 to not be an eigenvalue of the linearization
//! Lu(t) = ∫₀¹ Γ(t,s) γ p(s) u(s) ds; a Nyström discretization with a
//! power-iteration radius estimate makes that hypothesis a numeric
//! diagnostic.

use crate::expr::{EvalError, ExprAst, Var};
use crate::kernels::{green_g, green_k, G_ROW_ONE_INTEGRAL};
use crate::problem::BvpProblem;
use crate::quadrature::{refine_until, CompositeRule, QuadratureError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-row refinement tolerance for the L^p norms entering Φ.
pub const PHI_TOL: f64 = 1e-12;

/// Dense-grid size (number of intervals) for the p* search.
const P_STAR_GRID: usize = 10_000;

/// Relative agreement window of the asymptotic-slope probe.
const GAMMA_AGREEMENT: f64 = 1e-4;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ConditionsError {
    #[error("{context} must depend only on {allowed}, but uses '{found}'")]
    ForbiddenVariable {
        context: &'static str,
        allowed: &'static str,
        found: &'static str,
    },
    #[error("asymptotic slope probe found no limit: {0}")]
    NoLimit(String),
    #[error("nontriviality hypothesis fails: {0}")]
    Degenerate(String),
    #[error("p must exceed 1, got {0}")]
    BadExponent(f64),
    #[error("Lipschitz constant must be positive, got {0}")]
    BadLipschitz(f64),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn require_vars(
    expr: &ExprAst,
    allowed: Var,
    context: &'static str,
) -> Result<(), ConditionsError> {
    for var in expr.free_vars() {
        if var != allowed {
            return Err(ConditionsError::ForbiddenVariable {
                context,
                allowed: allowed.name(),
                found: var.name(),
            });
        }
    }
    Ok(())
}

/// Φ for the given exponent p > 1. Each row norm is computed with panel
/// breakpoints at its seam points and refined to [`PHI_TOL`].
pub fn compute_phi(problem: &BvpProblem, p: f64) -> Result<f64, ConditionsError> {
    if !(p > 1.0) {
        return Err(ConditionsError::BadExponent(p));
    }
    let etas = problem.boundary().etas();
    let inv_mu = 1.0 / problem.mu().abs();

    let row_norm = |row: &dyn Fn(f64) -> f64, seams: &[f64]| -> Result<f64, QuadratureError> {
        let base = CompositeRule::with_interior_breakpoints(seams);
        Ok(refine_until(|rule| rule.lp_norm(row, p), &base, PHI_TOL)?.value)
    };

    let mut phi = row_norm(&|s| green_g(1.0, s), &[])?;
    for (i, &alpha) in problem.boundary().alphas().iter().enumerate() {
        let (lo, hi) = (etas[i], etas[i + 1]);
        let row = move |s: f64| green_k(hi, s) - green_k(lo, s);
        phi += inv_mu * alpha.abs() * row_norm(&row, &[lo, hi])?;
    }
    for (i, &beta) in problem.boundary().betas().iter().enumerate() {
        let eta = etas[i];
        let row = move |s: f64| green_g(eta, s);
        phi += inv_mu * beta.abs() * row_norm(&row, &[eta])?;
    }
    Ok(phi)
}

/// M and p* for the existence certificate. p* is located on a dense grid
/// (10⁴ intervals plus endpoints) and sharpened by golden-section search
/// around the grid argmax; M uses the exact row integral 1/1440.
pub fn compute_m(problem: &BvpProblem, p_expr: &ExprAst) -> Result<(f64, f64), ConditionsError> {
    require_vars(p_expr, Var::T, "p(t)")?;
    let eval = |t: f64| -> Result<f64, EvalError> { Ok(p_expr.evaluate(t, 0.0)?.abs()) };

    let n = P_STAR_GRID;
    let mut best = 0.0;
    let mut best_index = 0;
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let v = eval(t)?;
        if v > best {
            best = v;
            best_index = i;
        }
    }
    let lo = best_index.saturating_sub(1) as f64 / n as f64;
    let hi = (best_index + 1).min(n) as f64 / n as f64;
    let p_star = best.max(golden_max(&eval, lo, hi)?);

    let etas = problem.boundary().etas();
    let inv_mu = 1.0 / problem.mu().abs();
    let alpha_sum: f64 = problem
        .boundary()
        .alphas()
        .iter()
        .enumerate()
        .map(|(i, &a)| a.abs() * (etas[i + 1] - etas[i]))
        .sum();
    let beta_sum: f64 = problem.boundary().betas().iter().map(|b| b.abs()).sum();
    let bracket = 1.0 + inv_mu * alpha_sum + inv_mu * beta_sum;
    Ok((p_star * bracket * G_ROW_ONE_INTEGRAL, p_star))
}

/// Golden-section maximization of f on [a, b] to interval width 1e-12.
fn golden_max(
    f: &impl Fn(f64) -> Result<f64, EvalError>,
    mut a: f64,
    mut b: f64,
) -> Result<f64, EvalError> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut best = fc.max(fd);
    for _ in 0..200 {
        if b - a < 1e-12 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        best = best.max(fc).max(fd);
    }
    Ok(best)
}

/// Probes γ = lim g(u)/u by evaluating at u = ±10^k for k = 3..8. The
/// probe accepts when the last three values at both signs agree within
/// relative 1e-4 (measured against max(1, |mean|), so bounded g reports
/// γ ≈ 0 rather than failing), and returns their mean. u → ∞ is read as
/// |u| → ∞, so both signs must agree.
pub fn estimate_gamma(g_expr: &ExprAst) -> Result<f64, ConditionsError> {
    require_vars(g_expr, Var::U, "g(u)")?;
    let mut tail = Vec::with_capacity(6);
    for k in 3..=8u32 {
        let u = 10f64.powi(k as i32);
        for sign in [1.0, -1.0] {
            let x = sign * u;
            let value = g_expr
                .evaluate(0.0, x)
                .map_err(|e| ConditionsError::NoLimit(format!("g({x:e}) failed: {e}")))?;
            if k >= 6 {
                tail.push(value / x);
            }
        }
    }
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let window = GAMMA_AGREEMENT * mean.abs().max(1.0);
    for &v in &tail {
        if (v - mean).abs() > window {
            return Err(ConditionsError::NoLimit(format!(
                "probe values at |u| = 1e6..1e8 spread beyond {GAMMA_AGREEMENT:e} \
                 relative (saw {v:.6e} against mean {mean:.6e})"
            )));
        }
    }
    Ok(mean)
}

/// The uniqueness certificate LΦ < 1 of the two-metric fixed point
/// theorem. L is user-supplied: a true global Lipschitz constant cannot
/// be computed from a black-box expression (see [`lipschitz_lower_bound`]
/// for a sampled lower bound).
#[derive(Debug, Clone)]
pub struct UniquenessCertificate {
    pub p: f64,
    pub lipschitz: f64,
    pub phi: f64,
    /// L·Φ, the contraction factor in the L^p metric.
    pub product: f64,
    pub holds: bool,
}

pub fn check_uniqueness(
    problem: &BvpProblem,
    p: f64,
    lipschitz: f64,
) -> Result<UniquenessCertificate, ConditionsError> {
    if !(lipschitz > 0.0) {
        return Err(ConditionsError::BadLipschitz(lipschitz));
    }
    let phi = compute_phi(problem, p)?;
    let product = lipschitz * phi;
    Ok(UniquenessCertificate {
        p,
        lipschitz,
        phi,
        product,
        holds: product < 1.0,
    })
}

/// Sampled lower bound on the Lipschitz constant of f in u: the largest
/// |f(t,u₁) − f(t,u₂)| / |u₁ − u₂| over seeded random points in
/// [0,1] × [-scale, scale]². A lower bound only — it never certifies H3.
pub fn lipschitz_lower_bound(
    f: &ExprAst,
    scale: f64,
    samples: usize,
    seed: u64,
) -> Result<f64, ConditionsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: f64 = 0.0;
    for _ in 0..samples {
        let t: f64 = rng.random();
        let u1 = (rng.random::<f64>() * 2.0 - 1.0) * scale;
        let u2 = (rng.random::<f64>() * 2.0 - 1.0) * scale;
        if (u1 - u2).abs() < 1e-12 {
            continue;
        }
        let ratio = (f.evaluate(t, u1)? - f.evaluate(t, u2)?).abs() / (u1 - u2).abs();
        bound = bound.max(ratio);
    }
    Ok(bound)
}

/// The existence certificate |γ|·M ≤ 1. The theorem's statement is
/// non-strict while its proof uses the strict form, so the certificate
/// records both; `holds && !strict` marks the inconclusive equality case.
#[derive(Debug, Clone)]
pub struct ExistenceCertificate {
    pub gamma: f64,
    pub p_star: f64,
    pub m_bound: f64,
    /// |γ|·M.
    pub gamma_m: f64,
    pub holds: bool,
    pub strict: bool,
}

/// Checks the existence hypotheses for f(t,u) = p(t)·g(u). γ comes from
/// the numeric probe unless `gamma_override` supplies it. Fails when the
/// nontriviality hypothesis p(t₀)g(0) ≠ 0 cannot hold, i.e. g(0) = 0 or
/// p vanishes identically.
pub fn check_existence(
    problem: &BvpProblem,
    p_expr: &ExprAst,
    g_expr: &ExprAst,
    gamma_override: Option<f64>,
) -> Result<ExistenceCertificate, ConditionsError> {
    require_vars(p_expr, Var::T, "p(t)")?;
    require_vars(g_expr, Var::U, "g(u)")?;
    let gamma = match gamma_override {
        Some(g) => g,
        None => estimate_gamma(g_expr)?,
    };
    let (m_bound, p_star) = compute_m(problem, p_expr)?;
    let g_zero = g_expr.evaluate(0.0, 0.0)?;
    if g_zero == 0.0 {
        return Err(ConditionsError::Degenerate(
            "g(0) = 0, so f(t,0) = p(t)g(0) vanishes everywhere".to_string(),
        ));
    }
    if p_star == 0.0 {
        return Err(ConditionsError::Degenerate(
            "p(t) vanishes identically on the sampled grid".to_string(),
        ));
    }
    let gamma_m = gamma.abs() * m_bound;
    Ok(ExistenceCertificate {
        gamma,
        p_star,
        m_bound,
        gamma_m,
        holds: gamma_m <= 1.0,
        strict: gamma_m < 1.0,
    })
}

/// Dense Nyström discretization of the linearized operator
/// Lu(t) = ∫₀¹ Γ(t,s) γ p(s) u(s) ds on composite Gauss nodes, collocated
/// at the nodes themselves: entries Aᵢⱼ = wⱼ Γ(tᵢ, sⱼ) γ p(sⱼ).
#[derive(Debug, Clone)]
pub struct NystromMatrix {
    dim: usize,
    /// Row-major entries.
    data: Vec<f64>,
    nodes: Vec<f64>,
}

impl NystromMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// The max-row-sum (operator ∞) norm, an upper bound on the spectral
    /// radius.
    pub fn max_row_sum(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .map(|a| a.abs())
                    .sum()
            })
            .fold(0.0, f64::max)
    }

    fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (i, out) in y.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *out = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

/// Builds the Nyström matrix with at least `min_nodes` collocation nodes
/// (order-8 panels aligned to the η breakpoints, so the actual dimension
/// rounds up to a whole number of panels).
pub fn nystrom_matrix(
    problem: &BvpProblem,
    p_expr: &ExprAst,
    gamma: f64,
    min_nodes: usize,
) -> Result<NystromMatrix, ConditionsError> {
    assert!(min_nodes >= 8, "need at least 8 Nystrom nodes");
    require_vars(p_expr, Var::T, "p(t)")?;
    let order = 8;
    let breakpoints = problem.row_breakpoints(&[]);
    let segments = breakpoints.len() - 1;
    let panels = min_nodes.div_ceil(order * segments);
    let rule = CompositeRule::new(breakpoints, order, panels)?;
    let points = rule.points();
    let dim = points.len();

    let mut weighted = Vec::with_capacity(dim);
    for &(s, w) in &points {
        weighted.push(w * gamma * p_expr.evaluate(s, 0.0)?);
    }
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        let ti = points[i].0;
        for j in 0..dim {
            data[i * dim + j] = weighted[j] * problem.combined_kernel(ti, points[j].0);
        }
    }
    Ok(NystromMatrix {
        dim,
        data,
        nodes: points.into_iter().map(|(x, _)| x).collect(),
    })
}

/// A power-iteration estimate of the dominant eigenvalue magnitude.
#[derive(Debug, Clone, Copy)]
pub struct RadiusEstimate {
    pub value: f64,
    /// False when the Rayleigh quotient failed to settle to 1e-8
    /// relative within the iteration budget (e.g. a complex dominant
    /// pair); the value is then unreliable.
    pub converged: bool,
}

/// Power iteration with a seeded random start vector, returning the
/// magnitude of the converged Rayleigh quotient.
pub fn spectral_radius(matrix: &NystromMatrix, iters: usize, seed: u64) -> RadiusEstimate {
    assert!(iters >= 100, "power iteration needs at least 100 iterations");
    let n = matrix.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
    normalize(&mut v);
    let mut av = vec![0.0; n];
    let mut rayleigh = 0.0;
    for _ in 0..iters {
        matrix.mul_vec(&v, &mut av);
        let next = dot(&v, &av);
        let norm = dot(&av, &av).sqrt();
        if norm == 0.0 {
            return RadiusEstimate {
                value: 0.0,
                converged: true,
            };
        }
        let settled = (next - rayleigh).abs() <= 1e-8 * next.abs().max(f64::MIN_POSITIVE);
        rayleigh = next;
        for (vi, ai) in v.iter_mut().zip(&av) {
            *vi = ai / norm;
        }
        if settled {
            return RadiusEstimate {
                value: rayleigh.abs(),
                converged: true,
            };
        }
    }
    RadiusEstimate {
        value: rayleigh.abs(),
        converged: false,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Numeric stand-in for the hypothesis that 1 is not an eigenvalue of the
/// linearization: a radius estimate safely below 1 supports it.
#[derive(Debug, Clone)]
pub struct SpectralDiagnostic {
    pub grid_n: usize,
    /// |γ|·M, the operator-norm bound from the existence certificate.
    pub norm_bound: f64,
    pub radius_estimate: f64,
    pub converged: bool,
    pub one_is_eigenvalue_suspected: bool,
}

pub fn spectral_diagnostic(
    problem: &BvpProblem,
    p_expr: &ExprAst,
    gamma: f64,
    min_nodes: usize,
    norm_bound: f64,
    seed: u64,
) -> Result<SpectralDiagnostic, ConditionsError> {
    let matrix = nystrom_matrix(problem, p_expr, gamma, min_nodes)?;
    let estimate = spectral_radius(&matrix, 1000, seed);
    Ok(SpectralDiagnostic {
        grid_n: matrix.dim(),
        norm_bound,
        radius_estimate: estimate.value,
        converged: estimate.converged,
        one_is_eigenvalue_suspected: estimate.value >= 1.0 - 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::problem::BoundaryData;

    fn example1() -> BvpProblem {
        let boundary =
            BoundaryData::new(vec![1.0], vec![3.0, 4.0], vec![0.25, 1.0 / 3.0]).unwrap();
        BvpProblem::new(parse("t + 1000*atan(u)").unwrap(), boundary).unwrap()
    }

    fn example2() -> BvpProblem {
        let boundary = BoundaryData::new(
            vec![1.0, 2.0],
            vec![1.0 / 3.0, 0.4, 0.25],
            vec![0.5, 2.0 / 3.0, 0.8],
        )
        .unwrap();
        BvpProblem::new(
            parse("10*t*(1+150*u^3+sin(u))*exp(-t^2)/(1+2*u^2)").unwrap(),
            boundary,
        )
        .unwrap()
    }

    fn trivial_problem() -> BvpProblem {
        let boundary = BoundaryData::new(vec![0.0], vec![0.0, 0.0], vec![0.5, 1.0]).unwrap();
        BvpProblem::new(parse("0").unwrap(), boundary).unwrap()
    }

    const G1_NORM_2: f64 = 8.953588489170892e-4; // (1/120) sqrt(8/693)

    #[test]
    fn phi_example1_matches_paper() {
        let phi = compute_phi(&example1(), 2.0).unwrap();
        // frozen from a 40-digit quadrature oracle
        assert!((phi - 9.028835674337722e-4).abs() < 1e-11, "phi = {phi}");
        // within 1% of the paper's printed value
        assert!((phi - 9.02884e-4).abs() < 0.01 * 9.02884e-4);
    }

    #[test]
    fn phi_without_weights_is_the_g_row_norm() {
        let phi = compute_phi(&trivial_problem(), 2.0).unwrap();
        assert!((phi - (1.0 / 120.0) * (8.0f64 / 693.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn phi_with_eta_one_row_doubles_the_g_row_norm() {
        // beta = {0, 1/2}, eta = {1/2, 1}: mu = 1/2 and the beta2 row is
        // the G(1,.) row, so phi = (1 + 2*(1/2)) ||G(1,.)||_2
        let boundary = BoundaryData::new(vec![0.0], vec![0.0, 0.5], vec![0.5, 1.0]).unwrap();
        let problem = BvpProblem::new(parse("0").unwrap(), boundary).unwrap();
        assert!((problem.mu() - 0.5).abs() < 1e-15);
        let phi = compute_phi(&problem, 2.0).unwrap();
        assert!((phi - 2.0 * G1_NORM_2).abs() < 1e-13);
    }

    #[test]
    fn phi_grows_with_an_extra_beta_row() {
        let base = compute_phi(&trivial_problem(), 2.0).unwrap();
        let boundary = BoundaryData::new(vec![0.0], vec![0.3, 0.0], vec![0.5, 1.0]).unwrap();
        let problem = BvpProblem::new(parse("0").unwrap(), boundary).unwrap();
        let phi = compute_phi(&problem, 2.0).unwrap();
        assert!(phi > base, "adding a nonzero |beta| row must increase phi");
    }

    #[test]
    fn phi_rejects_bad_exponent() {
        assert!(matches!(
            compute_phi(&example1(), 1.0),
            Err(ConditionsError::BadExponent(_))
        ));
    }

    #[test]
    fn m_example2_matches_paper() {
        let p_expr = parse("10*t*exp(-t^2)").unwrap();
        let (m, p_star) = compute_m(&example2(), &p_expr).unwrap();
        let exact_p_star = 5.0 * (2.0f64 / std::f64::consts::E).sqrt();
        let exact_m = (11.0 / 720.0) * (2.0f64 / std::f64::consts::E).sqrt();
        assert!((p_star - exact_p_star).abs() < 1e-11, "p* = {p_star}");
        assert!((m - exact_m).abs() < 1e-10, "M = {m}");
    }

    #[test]
    fn m_of_zero_weight_is_zero() {
        let (m, p_star) = compute_m(&example2(), &parse("0").unwrap()).unwrap();
        assert_eq!(m, 0.0);
        assert_eq!(p_star, 0.0);
    }

    #[test]
    fn m_of_unit_weight_trivial_problem_is_the_row_integral() {
        let (m, _) = compute_m(&trivial_problem(), &parse("1").unwrap()).unwrap();
        assert!((m - G_ROW_ONE_INTEGRAL).abs() < 1e-18);
    }

    #[test]
    fn m_rejects_p_with_u() {
        assert!(matches!(
            compute_m(&example2(), &parse("u").unwrap()),
            Err(ConditionsError::ForbiddenVariable { .. })
        ));
    }

    #[test]
    fn gamma_probe_example2() {
        let g = parse("(1+150*u^3+sin(u))/(1+2*u^2)").unwrap();
        let gamma = estimate_gamma(&g).unwrap();
        assert!((gamma - 75.0).abs() < 1e-3, "gamma = {gamma}");
    }

    #[test]
    fn gamma_probe_identity_and_divergence() {
        assert!((estimate_gamma(&parse("u").unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            estimate_gamma(&parse("u^2").unwrap()),
            Err(ConditionsError::NoLimit(_))
        ));
    }

    #[test]
    fn gamma_probe_bounded_g_reports_zero() {
        let gamma = estimate_gamma(&parse("atan(u)").unwrap()).unwrap();
        assert!(gamma.abs() < 1e-5);
    }

    #[test]
    fn gamma_probe_rejects_sign_disagreement() {
        // abs(u)/u -> +-1: both signs must agree
        assert!(matches!(
            estimate_gamma(&parse("abs(u)").unwrap()),
            Err(ConditionsError::NoLimit(_))
        ));
    }

    #[test]
    fn uniqueness_certificate_example1() {
        let cert = check_uniqueness(&example1(), 2.0, 1000.0).unwrap();
        assert!(cert.holds);
        assert!((cert.product - 0.9028835674337722).abs() < 1e-9);
        assert!(cert.phi >= G1_NORM_2 - 1e-15, "G row norm is a lower bound");
    }

    #[test]
    fn uniqueness_fails_at_larger_lipschitz_constant() {
        let cert = check_uniqueness(&example1(), 2.0, 1e4).unwrap();
        assert!(!cert.holds);
    }

    #[test]
    fn uniqueness_holds_for_tiny_lipschitz_constant() {
        let cert = check_uniqueness(&example1(), 2.0, 1e-9).unwrap();
        assert!(cert.holds);
    }

    #[test]
    fn lipschitz_probe_is_a_lower_bound_for_atan_slope() {
        let f = parse("t + 1000*atan(u)").unwrap();
        let bound = lipschitz_lower_bound(&f, 2.0, 2000, 9).unwrap();
        assert!(bound > 500.0, "sampled slope of 1000 atan near 0");
        assert!(bound <= 1000.0 + 1e-9, "never exceeds the true constant");
    }

    #[test]
    fn existence_certificate_example2() {
        let p_expr = parse("10*t*exp(-t^2)").unwrap();
        let g_expr = parse("(1+150*u^3+sin(u))/(1+2*u^2)").unwrap();
        let cert = check_existence(&example2(), &p_expr, &g_expr, None).unwrap();
        assert!(cert.holds);
        assert!(cert.strict);
        assert!((cert.gamma_m - 0.9828544515).abs() < 1e-4, "{}", cert.gamma_m);
    }

    #[test]
    fn existence_fails_with_gamma_override_eighty() {
        let p_expr = parse("10*t*exp(-t^2)").unwrap();
        let g_expr = parse("(1+150*u^3+sin(u))/(1+2*u^2)").unwrap();
        let cert = check_existence(&example2(), &p_expr, &g_expr, Some(80.0)).unwrap();
        assert!(!cert.holds);
    }

    #[test]
    fn existence_holds_for_zero_gamma() {
        let cert = check_existence(
            &example2(),
            &parse("10*t*exp(-t^2)").unwrap(),
            &parse("atan(u) + 1").unwrap(),
            Some(0.0),
        )
        .unwrap();
        assert!(cert.holds && cert.strict);
    }

    #[test]
    fn existence_rejects_degenerate_factorizations() {
        let p_expr = parse("10*t*exp(-t^2)").unwrap();
        assert!(matches!(
            check_existence(&example2(), &p_expr, &parse("u").unwrap(), None),
            Err(ConditionsError::Degenerate(_))
        ));
        assert!(matches!(
            check_existence(&example2(), &parse("0").unwrap(), &parse("atan(u)+1").unwrap(), Some(0.0)),
            Err(ConditionsError::Degenerate(_))
        ));
    }

    #[test]
    fn nystrom_zero_gamma_gives_zero_matrix() {
        let matrix =
            nystrom_matrix(&example2(), &parse("10*t*exp(-t^2)").unwrap(), 0.0, 32).unwrap();
        assert!(matrix.data.iter().all(|&x| x == 0.0));
        assert_eq!(spectral_radius(&matrix, 100, 1).value, 0.0);
    }

    #[test]
    fn nystrom_trivial_row_sums_bounded_by_row_integral() {
        let matrix =
            nystrom_matrix(&trivial_problem(), &parse("1").unwrap(), 1.0, 64).unwrap();
        assert!(matrix.max_row_sum() <= G_ROW_ONE_INTEGRAL + 1e-12);
    }

    #[test]
    fn nystrom_dimension_rounds_up_to_panels() {
        let matrix =
            nystrom_matrix(&example2(), &parse("1").unwrap(), 1.0, 64).unwrap();
        assert_eq!(matrix.dim(), 64); // 4 segments x 2 panels x order 8
        let matrix = nystrom_matrix(&example1(), &parse("1").unwrap(), 1.0, 64).unwrap();
        assert_eq!(matrix.dim(), 72); // 3 segments x 3 panels x order 8
    }

    #[test]
    fn spectral_radius_of_known_diagonal() {
        let matrix = NystromMatrix {
            dim: 2,
            data: vec![0.5, 0.0, 0.0, 0.25],
            nodes: vec![0.25, 0.75],
        };
        let estimate = spectral_radius(&matrix, 500, 3);
        assert!(estimate.converged);
        assert!((estimate.value - 0.5).abs() < 1e-7);
    }

    #[test]
    fn spectral_diagnostic_example2() {
        let p_expr = parse("10*t*exp(-t^2)").unwrap();
        let g_expr = parse("(1+150*u^3+sin(u))/(1+2*u^2)").unwrap();
        let cert = check_existence(&example2(), &p_expr, &g_expr, None).unwrap();
        let diag =
            spectral_diagnostic(&example2(), &p_expr, cert.gamma, 64, cert.gamma_m, 7).unwrap();
        assert!(diag.radius_estimate < 1.0);
        assert!(diag.radius_estimate <= cert.gamma_m + 0.01);
        assert!(!diag.one_is_eigenvalue_suspected);
        // spectral radius never exceeds the max-row-sum norm
        let matrix = nystrom_matrix(&example2(), &p_expr, cert.gamma, 64).unwrap();
        assert!(diag.radius_estimate <= matrix.max_row_sum() + 1e-10);
    }
}
