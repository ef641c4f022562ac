//! Closed-form solutions and their asymptotic limits.

mod asymptote;
mod field;
mod full;
mod matched;

pub use asymptote::{asymptote_blurring, asymptote_polariton, peak_time};
pub use field::{Column, Method, SolutionField};
pub use full::{
    solve_full, solve_full_gamma, solve_full_gamma_with, solve_full_with, Quadrature,
    SolverOptions,
};
pub use matched::matched_pulse;
