//! Closed forms of C-finite sequences: minimal annihilators, rational
//! eigenvalues and exponential polynomials.

mod expoly;
mod unipoly;

pub use expoly::{closed_form_from_terms, expoly_eval, solve_all_closed_forms, solve_closed_form, ExpPoly, ExpPolyJson, ExpPolyTermJson};
pub use unipoly::{minimal_recurrence, UniPoly};

/// Rational roots with multiplicities and the root-free cofactor.
pub fn rational_roots(p: &UniPoly) -> (Vec<(crate::algebra::Rational, usize)>, UniPoly) {
    p.rational_roots()
}
