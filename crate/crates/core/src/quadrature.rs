//! Composite Gauss–Legendre integration and L^p norms on [0, 1].
//!
//! Every integrand in this crate is piecewise smooth with kinks at kernel
//! seams and at the η points, so rules carry caller-supplied breakpoints;
//! aligning panel edges with the kinks restores spectral convergence.
//! Gauss nodes and weights are computed at startup by Newton iteration on
//! the Legendre polynomials, so there are no external tables.

use std::f64::consts::PI;

/// Panels-per-segment cap for [`refine_until`].
pub const PANEL_CAP: usize = 1 << 10;

#[derive(Debug, Clone, thiserror::Error)]
pub enum QuadratureError {
    #[error("breakpoints must start at 0, end at 1, and be strictly increasing")]
    InvalidBreakpoints,
    #[error("gauss order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("panels per segment must be at least 1")]
    NoPanels,
    #[error(
        "quadrature refinement did not converge: value {value:.17e}, \
         last difference {achieved:.3e} above tolerance {tol:.3e}"
    )]
    NonConvergence { value: f64, achieved: f64, tol: f64 },
}

/// A composite Gauss–Legendre rule on [0, 1]: panel breakpoints plus
/// per-panel Gauss nodes and weights. Immutable after construction;
/// integration of a pure integrand is pure.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    breakpoints: Vec<f64>,
    gauss_order: usize,
    panels_per_segment: usize,
    /// Reference nodes and weights on (-1, 1).
    base_nodes: Vec<f64>,
    base_weights: Vec<f64>,
}

impl CompositeRule {
    pub const DEFAULT_GAUSS_ORDER: usize = 16;
    pub const DEFAULT_PANELS_PER_SEGMENT: usize = 4;

    pub fn new(
        breakpoints: Vec<f64>,
        gauss_order: usize,
        panels_per_segment: usize,
    ) -> Result<Self, QuadratureError> {
        if gauss_order < 2 {
            return Err(QuadratureError::OrderTooSmall(gauss_order));
        }
        if panels_per_segment < 1 {
            return Err(QuadratureError::NoPanels);
        }
        let valid = breakpoints.len() >= 2
            && breakpoints.first() == Some(&0.0)
            && breakpoints.last() == Some(&1.0)
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !valid {
            return Err(QuadratureError::InvalidBreakpoints);
        }
        let (base_nodes, base_weights) = legendre_nodes_weights(gauss_order);
        Ok(CompositeRule {
            breakpoints,
            gauss_order,
            panels_per_segment,
            base_nodes,
            base_weights,
        })
    }

    /// The default rule on the single segment [0, 1].
    pub fn unit() -> Self {
        CompositeRule::new(
            vec![0.0, 1.0],
            Self::DEFAULT_GAUSS_ORDER,
            Self::DEFAULT_PANELS_PER_SEGMENT,
        )
        .expect("unit rule is valid")
    }

    /// Builds a default-order rule whose breakpoints are {0, 1} plus the
    /// given interior points. Points outside (0, 1) are dropped, the rest
    /// sorted and deduplicated.
    pub fn with_interior_breakpoints(points: &[f64]) -> Self {
        Self::with_breakpoints_and_order(
            points,
            Self::DEFAULT_GAUSS_ORDER,
            Self::DEFAULT_PANELS_PER_SEGMENT,
        )
    }

    pub fn with_breakpoints_and_order(
        points: &[f64],
        gauss_order: usize,
        panels_per_segment: usize,
    ) -> Self {
        let mut bps: Vec<f64> = points
            .iter()
            .copied()
            .filter(|&x| x > 0.0 && x < 1.0)
            .collect();
        bps.push(0.0);
        bps.push(1.0);
        bps.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        bps.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        CompositeRule::new(bps, gauss_order, panels_per_segment)
            .expect("constructed breakpoints are valid")
    }

    /// The same breakpoints with `factor` times as many panels per segment.
    pub fn refined(&self, factor: usize) -> Self {
        CompositeRule {
            breakpoints: self.breakpoints.clone(),
            gauss_order: self.gauss_order,
            panels_per_segment: self.panels_per_segment * factor,
            base_nodes: self.base_nodes.clone(),
            base_weights: self.base_weights.clone(),
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn gauss_order(&self) -> usize {
        self.gauss_order
    }

    pub fn panels_per_segment(&self) -> usize {
        self.panels_per_segment
    }

    pub fn node_count(&self) -> usize {
        (self.breakpoints.len() - 1) * self.panels_per_segment * self.gauss_order
    }

    /// All (node, weight) pairs in ascending node order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.node_count());
        self.for_each_point(|x, w| out.push((x, w)));
        out
    }

    fn for_each_point(&self, mut visit: impl FnMut(f64, f64)) {
        for seg in self.breakpoints.windows(2) {
            let width = (seg[1] - seg[0]) / self.panels_per_segment as f64;
            for panel in 0..self.panels_per_segment {
                let lo = seg[0] + panel as f64 * width;
                let half = 0.5 * width;
                let mid = lo + half;
                for (x, w) in self.base_nodes.iter().zip(&self.base_weights) {
                    visit(mid + half * x, half * w);
                }
            }
        }
    }

    /// Sum of Gauss–Legendre panel quadratures of `f` over [0, 1]. Exact
    /// (up to rounding) for polynomials of degree ≤ 2·order − 1 per panel.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        self.for_each_point(|x, w| acc += w * f(x));
        acc
    }

    /// Like [`integrate`](Self::integrate) for integrands that can fail;
    /// the first error aborts the sum.
    pub fn try_integrate<E>(
        &self,
        mut f: impl FnMut(f64) -> Result<f64, E>,
    ) -> Result<f64, E> {
        let mut acc = 0.0;
        for seg in self.breakpoints.windows(2) {
            let width = (seg[1] - seg[0]) / self.panels_per_segment as f64;
            for panel in 0..self.panels_per_segment {
                let lo = seg[0] + panel as f64 * width;
                let half = 0.5 * width;
                let mid = lo + half;
                for (x, w) in self.base_nodes.iter().zip(&self.base_weights) {
                    acc += half * w * f(mid + half * x)?;
                }
            }
        }
        Ok(acc)
    }

    /// The L^p norm (∫₀¹ |f|^p)^(1/p) for p > 1.
    pub fn lp_norm(&self, mut f: impl FnMut(f64) -> f64, p: f64) -> f64 {
        assert!(p > 1.0, "lp_norm requires p > 1, got {p}");
        self.integrate(|x| f(x).abs().powf(p)).powf(1.0 / p)
    }
}

/// Result of [`refine_until`]: the last value and the last observed
/// difference between successive refinements.
#[derive(Debug, Clone, Copy)]
pub struct Refined {
    pub value: f64,
    pub achieved: f64,
    pub refinements: usize,
}

/// Doubles the panels per segment until two successive values of `eval`
/// differ by less than `tol`, or the panel cap of 2¹⁰ per segment is hit,
/// in which case the non-convergence is reported as an error.
pub fn refine_until(
    eval: impl Fn(&CompositeRule) -> f64,
    base: &CompositeRule,
    tol: f64,
) -> Result<Refined, QuadratureError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut rule = base.clone();
    let mut prev = eval(&rule);
    let mut refinements = 0;
    let mut achieved = f64::INFINITY;
    while rule.panels_per_segment() * 2 <= PANEL_CAP {
        rule = rule.refined(2);
        refinements += 1;
        let next = eval(&rule);
        achieved = (next - prev).abs();
        if achieved < tol {
            return Ok(Refined {
                value: next,
                achieved,
                refinements,
            });
        }
        prev = next;
    }
    Err(QuadratureError::NonConvergence {
        value: prev,
        achieved,
        tol,
    })
}

/// Gauss–Legendre nodes and weights on (-1, 1) by Newton iteration on
/// P_n, converged to ~1e-15 and polished once.
fn legendre_nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // roots come out in descending |x|; store symmetric pair
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_and_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{green_g, G_ROW_ONE_INTEGRAL};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nodes_lie_inside_panels_and_weights_sum_to_length() {
        for order in [2, 3, 8, 16, 21] {
            let rule = CompositeRule::new(vec![0.0, 0.25, 1.0], order, 3).unwrap();
            assert_eq!(rule.node_count(), 2 * 3 * order);
            let points = rule.points();
            assert!(points.iter().all(|&(x, w)| x > 0.0 && x < 1.0 && w > 0.0));
            let total: f64 = points.iter().map(|&(_, w)| w).sum();
            assert!((total - 1.0).abs() < 1e-14);
            // per-panel sums equal panel lengths
            let per_panel: f64 = points[..order].iter().map(|&(_, w)| w).sum();
            assert!((per_panel - 0.25 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(CompositeRule::new(vec![0.0, 1.0], 1, 4).is_err());
        assert!(CompositeRule::new(vec![0.0, 1.0], 16, 0).is_err());
        assert!(CompositeRule::new(vec![0.1, 1.0], 16, 4).is_err());
        assert!(CompositeRule::new(vec![0.0, 0.9], 16, 4).is_err());
        assert!(CompositeRule::new(vec![0.0, 0.5, 0.5, 1.0], 16, 4).is_err());
        assert!(CompositeRule::new(vec![0.0, 0.7, 0.3, 1.0], 16, 4).is_err());
    }

    #[test]
    fn integrates_linear_exactly() {
        let rule = CompositeRule::unit();
        assert!((rule.integrate(|s| s) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn integrates_kernel_row_to_analytic_value() {
        let rule = CompositeRule::unit();
        let value = rule.integrate(|s| green_g(1.0, s));
        assert!((value - G_ROW_ONE_INTEGRAL).abs() < 1e-14);
    }

    #[test]
    fn breakpoint_handles_kink() {
        // ∫₀¹ |s - 1/3| ds = 5/18 exactly when the kink is a panel edge
        let rule = CompositeRule::with_interior_breakpoints(&[1.0 / 3.0]);
        let value = rule.integrate(|s| (s - 1.0 / 3.0).abs());
        assert!((value - 5.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn exactness_for_max_degree_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for order in [2, 4, 8, 16] {
            let rule = CompositeRule::new(vec![0.0, 1.0], order, 1).unwrap();
            let degree = 2 * order - 1;
            for _ in 0..20 {
                let coeffs: Vec<f64> =
                    (0..=degree).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
                let f = |x: f64| {
                    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
                };
                let exact: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c / (k as f64 + 1.0))
                    .sum();
                assert!(
                    (rule.integrate(f) - exact).abs() < 1e-13,
                    "order {order} failed"
                );
            }
        }
    }

    #[test]
    fn linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rule = CompositeRule::unit();
        for _ in 0..50 {
            let a: f64 = rng.random::<f64>() * 4.0 - 2.0;
            let b: f64 = rng.random::<f64>() * 4.0 - 2.0;
            let c1: f64 = rng.random();
            let c2: f64 = rng.random();
            let f = |x: f64| (c1 * x).sin() + x * x;
            let g = |x: f64| (c2 * x).exp();
            let lhs = rule.integrate(|x| a * f(x) + b * g(x));
            let rhs = a * rule.integrate(f) + b * rule.integrate(g);
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn lp_norm_of_constant_is_its_magnitude() {
        let rule = CompositeRule::unit();
        for p in [1.5, 2.0, 3.0] {
            assert!((rule.lp_norm(|_| -2.5, p) - 2.5).abs() < 1e-13);
        }
    }

    #[test]
    fn lp_norm_analytic_values() {
        let rule = CompositeRule::unit();
        // ||s||_2 = 1/sqrt(3)
        let n2 = rule.lp_norm(|s| s, 2.0);
        assert!((n2 - 1.0 / 3.0_f64.sqrt()).abs() < 1e-14);
        // ||G(1,.)||_2 = (1/120) sqrt(8/693)
        let ng = rule.lp_norm(|s| green_g(1.0, s), 2.0);
        assert!((ng - (1.0 / 120.0) * (8.0_f64 / 693.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lp_norm_homogeneity() {
        let rule = CompositeRule::unit();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [1.5, 2.0, 3.0] {
            for _ in 0..20 {
                let c: f64 = rng.random::<f64>() * 10.0 - 5.0;
                let k: f64 = rng.random::<f64>() * 3.0;
                let f = |x: f64| (k * x).cos() + x;
                let lhs = rule.lp_norm(|x| c * f(x), p);
                let rhs = c.abs() * rule.lp_norm(f, p);
                assert!((lhs - rhs).abs() < 1e-13 * rhs.max(1.0));
            }
        }
    }

    fn random_smooth(rng: &mut ChaCha8Rng) -> impl Fn(f64) -> f64 {
        let a: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let b: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let c: f64 = rng.random::<f64>() * 4.0;
        let d: f64 = rng.random::<f64>() * 4.0;
        move |x: f64| a * (c * x).sin() + b * (d * x + 0.3).cos() + a * x * x - b
    }

    #[test]
    fn minkowski_inequality() {
        let rule = CompositeRule::unit();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for p in [1.5, 2.0, 3.0] {
            for _ in 0..100 {
                let f = random_smooth(&mut rng);
                let g = random_smooth(&mut rng);
                let sum = rule.lp_norm(|x| f(x) + g(x), p);
                let parts = rule.lp_norm(&f, p) + rule.lp_norm(&g, p);
                assert!(sum <= parts + 1e-12, "p = {p}: {sum} > {parts}");
            }
        }
    }

    #[test]
    fn hoelder_inequality() {
        let rule = CompositeRule::unit();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for p in [1.5, 2.0, 3.0] {
            let q = p / (p - 1.0);
            for _ in 0..100 {
                let f = random_smooth(&mut rng);
                let g = random_smooth(&mut rng);
                let prod = rule.integrate(|x| (f(x) * g(x)).abs());
                let bound = rule.lp_norm(&f, p) * rule.lp_norm(&g, q);
                assert!(prod <= bound + 1e-12, "p = {p}: {prod} > {bound}");
            }
        }
    }

    #[test]
    fn refine_until_converges_on_smooth_integrand() {
        let rule = CompositeRule::unit();
        let refined = refine_until(|r| r.integrate(f64::exp), &rule, 1e-12).unwrap();
        assert!(refined.refinements <= 4);
        assert!((refined.value - (std::f64::consts::E - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn refine_until_zero_integrand_stops_immediately() {
        let rule = CompositeRule::unit();
        let refined = refine_until(|r| r.integrate(|_| 0.0), &rule, 1e-12).unwrap();
        assert_eq!(refined.value, 0.0);
        assert_eq!(refined.achieved, 0.0);
        assert_eq!(refined.refinements, 1);
    }

    #[test]
    fn refine_until_flags_discontinuity_without_breakpoint() {
        let rule = CompositeRule::unit();
        let step = |x: f64| if x < 1.0 / std::f64::consts::PI { 0.0 } else { 1.0 };
        let result = refine_until(|r| r.integrate(step), &rule, 1e-13);
        assert!(matches!(
            result,
            Err(QuadratureError::NonConvergence { .. })
        ));
    }

    #[test]
    fn try_integrate_propagates_errors() {
        let rule = CompositeRule::unit();
        let result: Result<f64, &str> =
            rule.try_integrate(|x| if x > 0.5 { Err("boom") } else { Ok(x) });
        assert_eq!(result, Err("boom"));
        let ok: Result<f64, &str> = rule.try_integrate(|x| Ok(x));
        assert!((ok.unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn legendre_roots_match_known_values() {
        // order 2: ±1/sqrt(3); order 3: 0, ±sqrt(3/5)
        let (n2, w2) = legendre_nodes_weights(2);
        assert!((n2[0] + 1.0 / 3.0_f64.sqrt()).abs() < 1e-15);
        assert!((n2[1] - 1.0 / 3.0_f64.sqrt()).abs() < 1e-15);
        assert!((w2[0] - 1.0).abs() < 1e-15);
        let (n3, w3) = legendre_nodes_weights(3);
        assert!(n3[1].abs() < 1e-15);
        assert!((n3[2] - (0.6_f64).sqrt()).abs() < 1e-15);
        assert!((w3[1] - 8.0 / 9.0).abs() < 1e-15);
    }
}
