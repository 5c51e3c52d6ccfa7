mod solve;
mod system;

pub use solve::{
    cmp_solutions, filter_involutions, gamma1_alpha_poly, solve_generic, solve_involutions, solve_phi, solve_system, validate,
    PhiSolution,
};
pub use system::{build_system, Branch, PhiMode, PhiSystem, ALPHA, BETA, DELTA, GAMMA, K, NVARS, VAR_NAMES};
