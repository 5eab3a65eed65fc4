//! Algebraic relations among closed forms: the moment invariant ideal, the
//! ψ map to classical invariants, and an evaluation-kernel oracle.

mod empirical;
mod ideal;
mod lattice;

pub use empirical::{empirical_relations, simulation_table};
pub use ideal::{
    moment_degree, moment_invariant_ideal, moment_invariant_ideal_with_budget, moment_ring, psi_map, relations_ideal, restrict_to_order_one,
};
pub use lattice::{multiplicative_lattice, BaseLattice};
