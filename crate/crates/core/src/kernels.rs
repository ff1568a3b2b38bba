//! Closed-form evaluation of the Green's kernels of the linear problem
//! u⁽⁶⁾ + h = 0 under the nonlocal boundary conditions.
//!
//! On the unit square J × J, J = [0, 1]:
//!
//! ```text
//! G(t,s) = (1/5!) · [t⁵(1−s)³ − (t−s)⁵]   for s ≤ t,   (1/5!) · t⁵(1−s)³   for t ≤ s,
//! K(t,s) = (1/6!) · [t⁶(1−s)³ − (t−s)⁶]   for s ≤ t,   (1/6!) · t⁶(1−s)³   for t ≤ s,
//! H(t,s) = (1/4!) · [t⁴(1−s)³ − (t−s)⁴]   for s ≤ t,   (1/4!) · t⁴(1−s)³   for t ≤ s.
//! ```
//!
//! K is the t-antiderivative of G and H is the t-derivative of G, so
//! ∫ₐᵇ G(τ,s) dτ = K(b,s) − K(a,s). All three kernels are nonnegative,
//! G and K are sandwiched by their t = 1 rows (t⁵G(1,s) ≤ G(t,s) ≤ G(1,s)
//! and t⁶K(1,s) ≤ K(t,s) ≤ K(1,s)), and both branch formulas agree at the
//! seam t = s. The tie t = s is assigned to the first branch, where the
//! (t−s) power is exactly zero, so the choice is observationally irrelevant.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const INV_4_FACT: f64 = 1.0 / 24.0;
const INV_5_FACT: f64 = 1.0 / 120.0;
const INV_6_FACT: f64 = 1.0 / 720.0;

/// ∫₀¹ G(1,s) ds = (1/120)(1/4 − 1/6) = 1/1440, exact.
pub const G_ROW_ONE_INTEGRAL: f64 = 1.0 / 1440.0;

/// The Green's function G of the solution representation. Degree 5 in t,
/// nonnegative on the unit square, zero rows at s = 0 and t = 0.
pub fn green_g(t: f64, s: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s));
    let w = 1.0 - s;
    if s <= t {
        INV_5_FACT * (t.powi(5) * w.powi(3) - (t - s).powi(5))
    } else {
        INV_5_FACT * (t.powi(5) * w.powi(3))
    }
}

/// The t-antiderivative kernel K, with ∂K/∂t = G.
pub fn green_k(t: f64, s: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s));
    let w = 1.0 - s;
    if s <= t {
        INV_6_FACT * (t.powi(6) * w.powi(3) - (t - s).powi(6))
    } else {
        INV_6_FACT * (t.powi(6) * w.powi(3))
    }
}

/// The t-derivative kernel H = ∂G/∂t. Nonnegative, which is what makes
/// G increasing in t.
pub fn green_h(t: f64, s: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s));
    let w = 1.0 - s;
    if s <= t {
        INV_4_FACT * (t.powi(4) * w.powi(3) - (t - s).powi(4))
    } else {
        INV_4_FACT * (t.powi(4) * w.powi(3))
    }
}

#[derive(Debug, Clone, Copy, thiserror::Error)]
#[error("invalid integration interval: a = {a} must not exceed b = {b}")]
pub struct IntervalError {
    pub a: f64,
    pub b: f64,
}

/// ∫ₐᵇ G(τ,s) dτ in closed form via K(b,s) − K(a,s). Always nonnegative
/// since K is increasing in t.
pub fn integral_g_over_t(a: f64, b: f64, s: f64) -> Result<f64, IntervalError> {
    if !(a <= b) {
        return Err(IntervalError { a, b });
    }
    Ok(green_k(b, s) - green_k(a, s))
}

/// One named check of the random property sweep.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub failures: usize,
    /// Description of the worst violation seen, if any.
    pub worst: Option<String>,
}

/// Outcome of [`property_sweep`]: per-check failure counts over the
/// sampled points.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

/// Slack for sign and sandwich checks; rounding only, the inequalities
/// are exact in real arithmetic.
pub const SWEEP_SLACK: f64 = 1e-15;

/// Step and tolerance of the central finite-difference derivative checks.
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-8;
/// The difference stencil must not straddle the branch seam.
const SEAM_EXCLUSION: f64 = 1e-3;

/// Runs the kernel property checks on `samples` seeded-random points:
/// nonnegativity of G, K and H, the two sandwich inequalities, central
/// finite differences of K against G and of G against H away from the
/// seam, and exact agreement of the two branch formulas at t = s.
pub fn property_sweep(samples: usize, seed: u64) -> SweepReport {
    sweep_kernels(green_g, green_k, green_h, samples, seed)
}

fn sweep_kernels(
    g: impl Fn(f64, f64) -> f64,
    k: impl Fn(f64, f64) -> f64,
    h: impl Fn(f64, f64) -> f64,
    samples: usize,
    seed: u64,
) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![
        Check::new("C1: G >= 0 and K >= 0"),
        Check::new("C2: t^5 G(1,s) <= G(t,s) <= G(1,s)"),
        Check::new("C3: t^6 K(1,s) <= K(t,s) <= K(1,s)"),
        Check::new("H >= 0 (G increasing in t)"),
        Check::new("dK/dt matches G (central difference)"),
        Check::new("dG/dt matches H (central difference)"),
        Check::new("branch formulas agree exactly at t = s"),
    ];
    for _ in 0..samples {
        let t: f64 = rng.random();
        let s: f64 = rng.random();
        let gv = g(t, s);
        let kv = k(t, s);
        let hv = h(t, s);
        let g1 = g(1.0, s);
        let k1 = k(1.0, s);

        checks[0].record(gv.min(kv), -SWEEP_SLACK, t, s);
        let c2 = (gv + SWEEP_SLACK - t.powi(5) * g1).min(g1 + SWEEP_SLACK - gv);
        checks[1].record(c2, 0.0, t, s);
        let c3 = (kv + SWEEP_SLACK - t.powi(6) * k1).min(k1 + SWEEP_SLACK - kv);
        checks[2].record(c3, 0.0, t, s);
        checks[3].record(hv, -SWEEP_SLACK, t, s);

        if (t - s).abs() > SEAM_EXCLUSION && t >= FD_STEP && t <= 1.0 - FD_STEP {
            let dk = (k(t + FD_STEP, s) - k(t - FD_STEP, s)) / (2.0 * FD_STEP);
            checks[4].record(FD_TOL - (dk - gv).abs(), 0.0, t, s);
            let dg = (g(t + FD_STEP, s) - g(t - FD_STEP, s)) / (2.0 * FD_STEP);
            checks[5].record(FD_TOL - (dg - hv).abs(), 0.0, t, s);
        }

        // both branch expressions at the seam point (t, t)
        let w = (1.0 - t).powi(3);
        let first = INV_5_FACT * (t.powi(5) * w - 0.0_f64.powi(5));
        let second = INV_5_FACT * (t.powi(5) * w);
        let seam_ok = first.to_bits() == second.to_bits();
        checks[6].record(if seam_ok { 1.0 } else { -1.0 }, 0.0, t, t);
    }
    SweepReport {
        samples,
        seed,
        checks: checks.into_iter().map(Check::finish).collect(),
    }
}

struct Check {
    name: &'static str,
    failures: usize,
    worst_margin: f64,
    worst_at: Option<(f64, f64)>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            failures: 0,
            worst_margin: f64::INFINITY,
            worst_at: None,
        }
    }

    /// A check passes when `margin >= threshold`.
    fn record(&mut self, margin: f64, threshold: f64, t: f64, s: f64) {
        if !(margin >= threshold) {
            self.failures += 1;
            if margin < self.worst_margin {
                self.worst_margin = margin;
                self.worst_at = Some((t, s));
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            failures: self.failures,
            worst: self.worst_at.map(|(t, s)| {
                format!(
                    "margin {:.3e} at (t, s) = ({t:.6}, {s:.6})",
                    self.worst_margin
                )
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_vanishes_at_s_zero() {
        for t in [0.0, 0.2, 0.5, 0.99, 1.0] {
            assert_eq!(green_g(t, 0.0), 0.0);
            assert_eq!(green_k(t, 0.0), 0.0);
            assert_eq!(green_h(t, 0.0), 0.0);
        }
    }

    #[test]
    fn kernels_vanish_at_t_zero() {
        for s in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(green_k(0.0, s), 0.0);
            assert_eq!(green_h(0.0, s), 0.0);
            assert_eq!(green_g(0.0, s), 0.0);
        }
    }

    #[test]
    fn g_hand_values() {
        // (1/120)(1/8 - 1/32) = 1/1280
        assert!((green_g(1.0, 0.5) - 1.0 / 1280.0).abs() < 1e-18);
        // t <= s branch: (1/120)(1/32)(1/64) = 1/245760
        assert!((green_g(0.5, 0.75) - 1.0 / 245760.0).abs() < 1e-20);
    }

    #[test]
    fn k_hand_values() {
        // (1/720)(1/8 - 1/64) = 7/46080
        assert!((green_k(1.0, 0.5) - 7.0 / 46080.0).abs() < 1e-18);
    }

    #[test]
    fn h_hand_values() {
        // (1/24)(1/8 - 1/16) = 1/384
        assert!((green_h(1.0, 0.5) - 1.0 / 384.0).abs() < 1e-18);
    }

    #[test]
    fn interval_integral_matches_k_difference() {
        // empty interval
        assert_eq!(integral_g_over_t(0.3, 0.3, 0.5).unwrap(), 0.0);
        // full interval against the K(1, 1/2) hand value
        let full = integral_g_over_t(0.0, 1.0, 0.5).unwrap();
        assert!((full - 7.0 / 46080.0).abs() < 1e-18);
        // s = 0 row is identically zero
        assert_eq!(integral_g_over_t(0.25, 1.0 / 3.0, 0.0).unwrap(), 0.0);
        assert!(integral_g_over_t(0.5, 0.4, 0.1).is_err());
    }

    #[test]
    fn interval_integral_is_not_the_row_integral() {
        // different variables of integration: ∫G(τ,1/2)dτ = 7/46080 ≠ 1/1440
        let over_t = integral_g_over_t(0.0, 1.0, 0.5).unwrap();
        assert!((over_t - G_ROW_ONE_INTEGRAL).abs() > 1e-4);
    }

    #[test]
    fn row_one_integral_constant() {
        assert!((G_ROW_ONE_INTEGRAL - 6.944444444444444e-4).abs() < 1e-18);
    }

    /// Cancellation-free form of the s <= t branch: with a = t(1-s) and
    /// b = t-s,
    ///   t^5(1-s)^3 - (t-s)^5 = s * [t^2(1-t)(a^2+ab+b^2) + b^3(2t-s)],
    /// a sum of nonnegative terms. Expanding s/5! (t-s)^3 (2t-s) out of it
    /// recovers the lower bound used to prove nonnegativity.
    fn factored_g(t: f64, s: f64) -> f64 {
        let a = t * (1.0 - s);
        let b = t - s;
        s / 120.0 * (t * t * (1.0 - t) * (a * a + a * b + b * b) + b.powi(3) * (2.0 * t - s))
    }

    #[test]
    fn factored_form_cross_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let t: f64 = rng.random();
            let s: f64 = rng.random::<f64>() * t; // s <= t branch
            let lit = green_g(t, s);
            let fac = factored_g(t, s);
            assert!(
                (lit - fac).abs() <= 1e-12 * fac.max(1e-300),
                "branch mismatch at ({t}, {s}): literal {lit}, factored {fac}"
            );
        }
        // and tight against the seam, where (t-s)^5 is ~0
        for _ in 0..10_000 {
            let t: f64 = rng.random();
            let s = (t - rng.random::<f64>() * 1e-8).max(0.0);
            let lit = green_g(t, s);
            let fac = factored_g(t, s);
            assert!((lit - fac).abs() <= 1e-12 * fac.max(1e-300));
        }
    }

    #[test]
    fn property_sweep_passes_on_true_kernels() {
        let report = property_sweep(20_000, 42);
        for check in &report.checks {
            assert_eq!(
                check.failures, 0,
                "{} failed: {:?}",
                check.name, check.worst
            );
        }
        assert!(report.all_passed());
    }

    #[test]
    fn property_sweep_catches_perturbed_kernel() {
        // a deliberately wrong G must trip the sweep
        let bad_g = |t: f64, s: f64| green_g(t, s) + 1e-6 * t * (1.0 - s);
        let report = sweep_kernels(bad_g, green_k, green_h, 5_000, 42);
        assert!(!report.all_passed());
    }

    #[test]
    fn seam_continuity_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let t: f64 = rng.random();
            let w = (1.0 - t).powi(3);
            let first = INV_5_FACT * (t.powi(5) * w - (t - t).powi(5));
            let second = INV_5_FACT * (t.powi(5) * w);
            assert_eq!(first.to_bits(), second.to_bits());
            let kf = INV_6_FACT * (t.powi(6) * w - (t - t).powi(6));
            let ks = INV_6_FACT * (t.powi(6) * w);
            assert_eq!(kf.to_bits(), ks.to_bits());
        }
    }
}
