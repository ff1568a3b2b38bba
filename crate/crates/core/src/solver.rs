//! Fixed-point solver for u = Au with (Au)(t) = ∫₀¹ Γ(t,s) f(s, u(s)) ds,
//! plus the verification machinery around it: a closed-form linear path
//! that never touches Γ, boundary-condition residuals, an ODE residual,
//! and an empirical contraction probe.
//!
//! Solutions live on a uniform grid with a piecewise-cubic interpolant.
//! Picard iteration u ← (1−ω)u + ω·Au converges geometrically whenever
//! the uniqueness certificate LΦ < 1 holds; non-convergence is a flagged
//! result rather than an error, since uncertified problems may be run
//! deliberately.

use crate::expr::{EvalError, ExprAst, Var};
use crate::problem::BvpProblem;
use crate::quadrature::{CompositeRule, QuadratureError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Minimum node count; the one-sided 7-point boundary stencils and the
/// interpolant need room.
pub const MIN_GRID_N: usize = 33;

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("{context} must depend only on t, but uses 'u'")]
    ForbiddenVariable { context: &'static str },
    #[error("grid too coarse: need at least {min} nodes, got {got}")]
    GridTooCoarse { min: usize, got: usize },
    #[error("invalid solver configuration: {0}")]
    BadConfig(String),
    #[error("initial iterate has {got} nodes but the configured grid has {expected}")]
    InitialSizeMismatch { expected: usize, got: usize },
    #[error("iteration produced non-finite values")]
    NonFinite,
}

/// Solve parameters. `gauss_order` and `panels_per_segment` describe the
/// per-row quadrature rules; ω = 1 is pure Picard, ω < 1 is an escape
/// hatch for uncertified problems.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub grid_n: usize,
    pub gauss_order: usize,
    pub panels_per_segment: usize,
    pub tol_sup: f64,
    pub max_iter: usize,
    pub relaxation: f64,
    /// Exponent of the σ metric recorded in iteration traces.
    pub sigma_p: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid_n: 257,
            gauss_order: CompositeRule::DEFAULT_GAUSS_ORDER,
            panels_per_segment: CompositeRule::DEFAULT_PANELS_PER_SEGMENT,
            tol_sup: 1e-10,
            max_iter: 500,
            relaxation: 1.0,
            sigma_p: 2.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let fail = |msg: String| Err(SolverError::BadConfig(msg));
        if self.grid_n < MIN_GRID_N {
            return fail(format!("grid_n must be at least {MIN_GRID_N}, got {}", self.grid_n));
        }
        if !(self.tol_sup > 0.0) {
            return fail(format!("tol_sup must be positive, got {}", self.tol_sup));
        }
        if self.max_iter == 0 {
            return fail("max_iter must be at least 1".to_string());
        }
        if !(self.relaxation > 0.0 && self.relaxation <= 1.0) {
            return fail(format!(
                "relaxation must lie in (0, 1], got {}",
                self.relaxation
            ));
        }
        if !(self.sigma_p > 1.0) {
            return fail(format!("sigma_p must exceed 1, got {}", self.sigma_p));
        }
        if self.gauss_order < 2 || self.panels_per_segment < 1 {
            return fail("quadrature parameters out of range".to_string());
        }
        Ok(())
    }
}

/// A discrete approximation of u on uniform nodes t_i = i/(n−1), with a
/// local piecewise-cubic (4-point Lagrange) interpolant that reproduces
/// node values exactly. Immutable once returned by a solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionGrid {
    values: Vec<f64>,
}

impl SolutionGrid {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 4, "grid needs at least 4 nodes for the cubic interpolant");
        SolutionGrid {
            values: vec![0.0; n],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self, SolverError> {
        if values.len() < 4 {
            return Err(SolverError::GridTooCoarse {
                min: 4,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::NonFinite);
        }
        Ok(SolutionGrid { values })
    }

    /// Samples f at the grid nodes.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Self {
        assert!(n >= 4);
        let values = (0..n).map(|i| f(node(n, i))).collect();
        SolutionGrid { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, i: usize) -> f64 {
        node(self.values.len(), i)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Piecewise-cubic evaluation anywhere in [0, 1].
    pub fn eval(&self, x: f64) -> f64 {
        let (base, coeff) = lagrange_stencil(self.values.len(), x);
        coeff[0] * self.values[base]
            + coeff[1] * self.values[base + 1]
            + coeff[2] * self.values[base + 2]
            + coeff[3] * self.values[base + 3]
    }
}

fn node(n: usize, i: usize) -> f64 {
    i as f64 / (n - 1) as f64
}

/// The 4-point Lagrange stencil through the nodes nearest x: stencil base
/// index and basis weights. At a node the weights are exactly {0,1} since
/// the zero factor is computed bitwise, so node values reproduce exactly.
fn lagrange_stencil(n: usize, x: f64) -> (usize, [f64; 4]) {
    debug_assert!(n >= 4);
    let spacing = (n - 1) as f64;
    let interval = ((x * spacing) as usize).min(n - 2);
    let base = interval.saturating_sub(1).min(n - 4);
    let mut coeff = [0.0; 4];
    let nodes = [
        node(n, base),
        node(n, base + 1),
        node(n, base + 2),
        node(n, base + 3),
    ];
    for k in 0..4 {
        let mut c = 1.0;
        for m in 0..4 {
            if m != k {
                c *= (x - nodes[m]) / (nodes[k] - nodes[m]);
            }
        }
        coeff[k] = c;
    }
    (base, coeff)
}

/// Sup distance over the grid nodes, the d metric of the two-metric
/// fixed point argument.
pub fn d_metric(a: &SolutionGrid, b: &SolutionGrid) -> f64 {
    assert_eq!(a.len(), b.len(), "metric needs matching grids");
    a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// L^p distance of the interpolants, the σ metric. Panels are aligned to
/// the grid intervals where the interpolants are polynomial.
pub fn sigma_metric(a: &SolutionGrid, b: &SolutionGrid, p: f64) -> f64 {
    assert_eq!(a.len(), b.len(), "metric needs matching grids");
    let rule = interval_rule(a.len(), 8);
    rule.lp_norm(|x| a.eval(x) - b.eval(x), p)
}

/// A rule whose panel edges are the grid nodes.
fn interval_rule(n: usize, order: usize) -> CompositeRule {
    let interior: Vec<f64> = (1..n - 1).map(|i| node(n, i)).collect();
    CompositeRule::with_breakpoints_and_order(&interior, order, 1)
}

/// Per-iteration distances to the previous iterate.
#[derive(Debug, Clone, Copy)]
pub struct TraceStep {
    pub d: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub steps: Vec<TraceStep>,
    pub iterations: usize,
    pub converged: bool,
}

impl IterationTrace {
    pub fn final_d(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.d)
    }

    pub fn final_sigma(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.sigma)
    }
}

/// The discretized operator A with everything that does not depend on the
/// current iterate precomputed: per output node, the row quadrature
/// nodes, the Γ-weighted quadrature weights, and the interpolation
/// stencils that read u at the quadrature nodes. Node evaluations within
/// an application are independent.
struct PicardOperator<'p> {
    problem: &'p BvpProblem,
    grid_n: usize,
    rows: Vec<OperatorRow>,
}

struct OperatorRow {
    nodes: Vec<f64>,
    kernel_weights: Vec<f64>,
    stencils: Vec<(usize, [f64; 4])>,
}

impl<'p> PicardOperator<'p> {
    fn build(problem: &'p BvpProblem, config: &SolverConfig) -> Result<Self, SolverError> {
        config.validate()?;
        let n = config.grid_n;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let ti = node(n, i);
            let breakpoints = problem.row_breakpoints(&[ti]);
            let rule = CompositeRule::new(
                breakpoints,
                config.gauss_order,
                config.panels_per_segment,
            )?;
            let points = rule.points();
            let mut nodes = Vec::with_capacity(points.len());
            let mut kernel_weights = Vec::with_capacity(points.len());
            let mut stencils = Vec::with_capacity(points.len());
            for (s, w) in points {
                nodes.push(s);
                kernel_weights.push(w * problem.combined_kernel(ti, s));
                stencils.push(lagrange_stencil(n, s));
            }
            rows.push(OperatorRow {
                nodes,
                kernel_weights,
                stencils,
            });
        }
        Ok(PicardOperator {
            problem,
            grid_n: n,
            rows,
        })
    }

    fn apply(&self, u: &SolutionGrid) -> Result<SolutionGrid, SolverError> {
        if u.len() != self.grid_n {
            return Err(SolverError::InitialSizeMismatch {
                expected: self.grid_n,
                got: u.len(),
            });
        }
        let f = self.problem.f();
        let vals = u.values();
        let mut out = vec![0.0; self.grid_n];
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0.0;
            for j in 0..row.nodes.len() {
                let (base, c) = row.stencils[j];
                let uval = c[0] * vals[base]
                    + c[1] * vals[base + 1]
                    + c[2] * vals[base + 2]
                    + c[3] * vals[base + 3];
                acc += row.kernel_weights[j] * f.evaluate(row.nodes[j], uval)?;
            }
            out[i] = acc;
        }
        if out.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::NonFinite);
        }
        Ok(SolutionGrid { values: out })
    }
}

/// One application of the operator: quadrature of Γ(tᵢ,·)·f(·, u(·)) with
/// panel edges at the η points and the row seam tᵢ, reading u through the
/// interpolant.
pub fn apply_a(
    problem: &BvpProblem,
    u: &SolutionGrid,
    config: &SolverConfig,
) -> Result<SolutionGrid, SolverError> {
    PicardOperator::build(problem, config)?.apply(u)
}

/// Picard iteration u ← (1−ω)u + ω·Au from the given start (u ≡ 0 by
/// default) until the sup distance between iterates drops to `tol_sup`
/// or `max_iter` is hit. Hitting the cap is reported in the trace, not
/// as an error.
pub fn picard_solve(
    problem: &BvpProblem,
    config: &SolverConfig,
    initial: Option<SolutionGrid>,
) -> Result<(SolutionGrid, IterationTrace), SolverError> {
    let operator = PicardOperator::build(problem, config)?;
    let mut u = match initial {
        Some(grid) if grid.len() != config.grid_n => {
            return Err(SolverError::InitialSizeMismatch {
                expected: config.grid_n,
                got: grid.len(),
            })
        }
        Some(grid) => grid,
        None => SolutionGrid::zeros(config.grid_n),
    };
    let sigma_rule = interval_rule(config.grid_n, 8);
    let omega = config.relaxation;
    let mut steps = Vec::new();
    let mut converged = false;
    for _ in 0..config.max_iter {
        let au = operator.apply(&u)?;
        let next = if omega == 1.0 {
            au
        } else {
            let values = u
                .values()
                .iter()
                .zip(au.values())
                .map(|(old, new)| (1.0 - omega) * old + omega * new)
                .collect();
            SolutionGrid { values }
        };
        let d = d_metric(&next, &u);
        let sigma = sigma_rule.lp_norm(|x| next.eval(x) - u.eval(x), config.sigma_p);
        steps.push(TraceStep { d, sigma });
        u = next;
        if d <= config.tol_sup {
            converged = true;
            break;
        }
    }
    let trace = IterationTrace {
        iterations: steps.len(),
        steps,
        converged,
    };
    Ok((u, trace))
}

/// Direct construction of the linear solution of u⁽⁶⁾ + h = 0 from the
/// solution representation
///
/// ```text
/// u(t) = −(1/120) ∫₀ᵗ (t−s)⁵ h(s) ds + (κ₁/120) t⁵ + κ₆,
/// κ₁ = ∫₀¹ (1−s)³ h(s) ds,
/// κ₆ = (1/μ) [ Σᵢ αᵢ ∫_{ηᵢ}^{ηᵢ₊₁} v(τ) dτ + Σᵢ βᵢ v(ηᵢ) ],
/// v(τ) = −(1/120) ∫₀^τ (τ−s)⁵ h(s) ds + (κ₁/120) τ⁵.
/// ```
///
/// This path never evaluates G, K or Γ, so it is an independent oracle
/// for the Green-representation path.
pub fn linear_solve_closed_form(
    problem: &BvpProblem,
    h_expr: &ExprAst,
    config: &SolverConfig,
) -> Result<SolutionGrid, SolverError> {
    config.validate()?;
    if h_expr.free_vars().contains(&Var::U) {
        return Err(SolverError::ForbiddenVariable { context: "h(t)" });
    }
    let rule = CompositeRule::with_breakpoints_and_order(
        problem.boundary().etas(),
        config.gauss_order,
        config.panels_per_segment,
    );
    let unit = CompositeRule::with_breakpoints_and_order(
        &[],
        config.gauss_order,
        config.panels_per_segment,
    );
    let h = |t: f64| h_expr.evaluate(t, 0.0);

    let kappa1 = rule.try_integrate(|s| Ok::<_, EvalError>((1.0 - s).powi(3) * h(s)?))?;

    // ∫₀^τ (τ−s)⁵ h(s) ds = τ⁶ ∫₀¹ (1−σ)⁵ h(τσ) dσ
    let moment = |tau: f64| -> Result<f64, EvalError> {
        if tau == 0.0 {
            return Ok(0.0);
        }
        let integral = unit.try_integrate(|sigma| {
            Ok::<_, EvalError>((1.0 - sigma).powi(5) * h(tau * sigma)?)
        })?;
        Ok(tau.powi(6) * integral)
    };
    let v = |tau: f64| -> Result<f64, EvalError> {
        Ok(-moment(tau)? / 120.0 + kappa1 * tau.powi(5) / 120.0)
    };

    let boundary = problem.boundary();
    let etas = boundary.etas();
    let mut kappa6 = 0.0;
    for (i, &alpha) in boundary.alphas().iter().enumerate() {
        let (lo, hi) = (etas[i], etas[i + 1]);
        let width = hi - lo;
        let segment =
            unit.try_integrate(|sigma| v(lo + width * sigma))?;
        kappa6 += alpha * width * segment;
    }
    for (i, &beta) in boundary.betas().iter().enumerate() {
        kappa6 += beta * v(etas[i])?;
    }
    kappa6 /= problem.mu();

    let n = config.grid_n;
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        values.push(v(node(n, i))? + kappa6);
    }
    SolutionGrid::from_values(values)
}

/// The six boundary residuals of a discrete solution:
/// |u′(0)|, |u″(0)|, |u‴(0)|, |u⁗(0)| from one-sided 7-point stencils,
/// |u″(1)| one-sided at the right end, and the nonlocal defect
/// |u(0) − Σᵢ αᵢ ∫_{ηᵢ}^{ηᵢ₊₁} u − Σᵢ βᵢ u(ηᵢ)| with the integrals taken
/// over the interpolant.
pub fn bc_residuals(problem: &BvpProblem, u: &SolutionGrid) -> Result<[f64; 6], SolverError> {
    let n = u.len();
    if n < MIN_GRID_N {
        return Err(SolverError::GridTooCoarse {
            min: MIN_GRID_N,
            got: n,
        });
    }
    let h = 1.0 / (n - 1) as f64;
    let vals = u.values();
    let mut out = [0.0; 6];
    for (slot, order) in [(0usize, 1usize), (1, 2), (2, 3), (3, 4)] {
        let coeff = derivative_stencil(order, h, false);
        out[slot] = coeff
            .iter()
            .zip(vals)
            .map(|(c, v)| c * v)
            .sum::<f64>()
            .abs();
    }
    let coeff = derivative_stencil(2, h, true);
    out[4] = coeff
        .iter()
        .zip(vals.iter().rev())
        .map(|(c, v)| c * v)
        .sum::<f64>()
        .abs();

    let boundary = problem.boundary();
    let etas = boundary.etas();
    let mut defect = vals[0];
    for (i, &alpha) in boundary.alphas().iter().enumerate() {
        defect -= alpha * integrate_interpolant(u, etas[i], etas[i + 1]);
    }
    for (i, &beta) in boundary.betas().iter().enumerate() {
        defect -= beta * u.eval(etas[i]);
    }
    out[5] = defect.abs();
    Ok(out)
}

/// One-sided 7-point finite-difference coefficients for the k-th
/// derivative at the boundary node. Solved from the moment conditions
/// Σⱼ cⱼ oⱼ^m = m!·δ_{mk}, m = 0..6, in unit offsets and rescaled by h^k;
/// exact for polynomials through degree 6. `backward` mirrors the
/// offsets for the right endpoint.
fn derivative_stencil(k: usize, h: f64, backward: bool) -> [f64; 7] {
    let mut matrix = [[0.0f64; 7]; 7];
    let mut rhs = [0.0f64; 7];
    for m in 0..7 {
        for (j, cell) in matrix[m].iter_mut().enumerate() {
            let offset = if backward { -(j as f64) } else { j as f64 };
            *cell = offset.powi(m as i32);
        }
        rhs[m] = if m == k {
            (1..=m).map(|x| x as f64).product()
        } else {
            0.0
        };
    }
    let solution = solve_dense(&mut matrix, &mut rhs);
    let scale = h.powi(k as i32);
    let mut coeff = [0.0; 7];
    for (c, s) in coeff.iter_mut().zip(solution) {
        *c = s / scale;
    }
    coeff
}

/// Gaussian elimination with partial pivoting on a 7×7 system.
fn solve_dense(a: &mut [[f64; 7]; 7], b: &mut [f64; 7]) -> [f64; 7] {
    let n = 7;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 7];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// ∫ₐᵇ of the interpolant, with quadrature panels aligned to the grid
/// intervals so the piecewise cubic integrates exactly.
fn integrate_interpolant(u: &SolutionGrid, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = u.len();
    let width = b - a;
    let mut cuts = Vec::new();
    for i in 0..n {
        let x = node(n, i);
        if x > a && x < b {
            cuts.push((x - a) / width);
        }
    }
    let rule = CompositeRule::with_breakpoints_and_order(&cuts, 4, 1);
    width * rule.integrate(|y| u.eval(a + width * y))
}

/// Maximum of |u⁽⁶⁾ + f(t, u)| over `sample_n` interior points, where
/// u⁽⁶⁾ comes from differentiating a global least-squares Chebyshev fit
/// of the solution six times analytically. A diagnostic with loose
/// tolerance: sixth derivatives amplify fit noise severely, so the fit
/// degree is kept moderate (≤ 12).
pub fn ode_residual(
    problem: &BvpProblem,
    u: &SolutionGrid,
    sample_n: usize,
) -> Result<f64, SolverError> {
    assert!(sample_n >= 1);
    let n = u.len();
    let degree = 12.min(n - 1);
    let coeffs = chebyshev_fit(u, degree);
    let mut sixth = coeffs.clone();
    for _ in 0..6 {
        sixth = chebyshev_derivative(&sixth);
        // chain rule for x = 2t − 1
        for c in &mut sixth {
            *c *= 2.0;
        }
    }
    let f = problem.f();
    let mut worst = 0.0f64;
    for j in 0..sample_n {
        let t = (j + 1) as f64 / (sample_n + 1) as f64;
        let x = 2.0 * t - 1.0;
        let u_fit = clenshaw(&coeffs, x);
        let u6 = clenshaw(&sixth, x);
        let residual = (u6 + f.evaluate(t, u_fit)?).abs();
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Least-squares Chebyshev coefficients of the grid values by modified
/// Gram-Schmidt QR.
fn chebyshev_fit(u: &SolutionGrid, degree: usize) -> Vec<f64> {
    let n = u.len();
    let m = degree + 1;
    // columns T_k(2t_i - 1)
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(m);
    for k in 0..m {
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            let x = 2.0 * node(n, i) - 1.0;
            col.push(chebyshev_t(k, x));
        }
        q.push(col);
    }
    let mut r = vec![vec![0.0; m]; m];
    for j in 0..m {
        for i in 0..j {
            let proj: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            r[i][j] = proj;
            let qi = q[i].clone();
            for (x, y) in q[j].iter_mut().zip(qi) {
                *x -= proj * y;
            }
        }
        let norm: f64 = q[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        r[j][j] = norm;
        for x in q[j].iter_mut() {
            *x /= norm;
        }
    }
    // rhs = Qᵀ values, then back-substitute R c = rhs
    let mut rhs: Vec<f64> = (0..m)
        .map(|i| q[i].iter().zip(u.values()).map(|(a, b)| a * b).sum())
        .collect();
    for row in (0..m).rev() {
        for k in row + 1..m {
            let upper = rhs[k];
            rhs[row] -= r[row][k] * upper;
        }
        rhs[row] /= r[row][row];
    }
    rhs
}

fn chebyshev_t(k: usize, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        _ => {
            let mut prev = 1.0;
            let mut curr = x;
            for _ in 2..=k {
                let next = 2.0 * x * curr - prev;
                prev = curr;
                curr = next;
            }
            curr
        }
    }
}

/// Coefficients of the derivative of a Chebyshev series (in the
/// Chebyshev variable).
fn chebyshev_derivative(c: &[f64]) -> Vec<f64> {
    let m = c.len();
    if m <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; m - 1];
    d[m - 2] = 2.0 * (m - 1) as f64 * c[m - 1];
    if m >= 3 {
        d[m - 3] = 2.0 * (m - 2) as f64 * c[m - 2];
    }
    for k in (0..m.saturating_sub(3)).rev() {
        d[k] = d[k + 2] + 2.0 * (k + 1) as f64 * c[k + 1];
    }
    d[0] /= 2.0;
    d
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c.iter().skip(1).rev() {
        let b = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b;
    }
    x * b1 - b2 + c[0]
}

/// Empirical contraction factor: the maximum of σ(Au₁,Au₂)/σ(u₁,u₂) over
/// seeded random pairs of low-degree polynomial grids. Under H3–H4 the
/// theoretical bound is LΦ.
pub fn contraction_probe(
    problem: &BvpProblem,
    config: &SolverConfig,
    pairs: usize,
    p: f64,
    seed: u64,
) -> Result<f64, SolverError> {
    assert!(pairs >= 10, "probe needs at least 10 pairs");
    let operator = PicardOperator::build(problem, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let u1 = random_polynomial_grid(config.grid_n, &mut rng);
        let u2 = random_polynomial_grid(config.grid_n, &mut rng);
        let denom = sigma_metric(&u1, &u2, p);
        if denom < 1e-13 {
            continue;
        }
        let au1 = operator.apply(&u1)?;
        let au2 = operator.apply(&u2)?;
        worst = worst.max(sigma_metric(&au1, &au2, p) / denom);
    }
    Ok(worst)
}

fn random_polynomial_grid(n: usize, rng: &mut ChaCha8Rng) -> SolutionGrid {
    let coeffs: [f64; 5] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
    SolutionGrid::from_fn(n, |t| {
        coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    })
}
