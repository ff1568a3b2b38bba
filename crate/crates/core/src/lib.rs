//! Solver and certificate checker for the sixth-order boundary value problem
//!
//! ```text
//! u⁽⁶⁾(t) + f(t, u(t)) = 0,            t ∈ (0, 1),
//! u⁽ʲ⁾(0) = u″(1) = 0,                 1 ≤ j ≤ 4,
//! u(0) = Σᵢ αᵢ ∫_{ηᵢ}^{ηᵢ₊₁} u(s) ds + Σᵢ βᵢ u(ηᵢ),
//! ```
//!
//! built on the explicit Green's-function reformulation of the problem as a
//! Hammerstein fixed-point equation u = Au with
//! (Au)(t) = ∫₀¹ Γ(t,s) f(s, u(s)) ds.
//!
//! The crate evaluates the kernels G, K, H in closed form ([`kernels`]),
//! assembles the combined kernel Γ for given boundary data ([`problem`]),
//! checks a uniqueness certificate LΦ < 1 and an existence certificate
//! |γ|·M ≤ 1 together with a Nyström spectral diagnostic ([`conditions`]),
//! and computes solutions by Picard iteration with residual verification
//! ([`solver`]). Problems are specified as text expressions ([`expr`]) in a
//! TOML config consumed by the command-line front end ([`cli`]).

pub mod cli;
pub mod conditions;
pub mod expr;
pub mod kernels;
pub mod problem;
pub mod quadrature;
pub mod solver;

pub use expr::ExprAst;
pub use problem::{BoundaryData, BvpProblem};
pub use quadrature::CompositeRule;
pub use solver::{SolutionGrid, SolverConfig};
