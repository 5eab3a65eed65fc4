//! Executable forms of the Skolem → P2P → SPInv reductions, their witness
//! systems, and the eventual-zero detector on invariant ideals.

mod detect;
mod skolem;
mod spinv;

pub use detect::detect_eventual_zero;
pub use skolem::{augment_witness, skolem_to_p2p, verify_lemma31, Lemma31Report, WitnessSystem};
pub use spinv::{p2p_to_spinv, skolem_to_spinv_direct};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::loops::{LoopProgram, State};

/// Does the deterministic `system` ever reach `target`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2PInstance {
    system: LoopProgram,
    target: State,
}

impl P2PInstance {
    pub fn new(system: LoopProgram, target: State) -> Result<Self> {
        if !system.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        if target.len() != system.vars().len() {
            return Err(Error::ArityMismatch { expected: system.vars().len(), got: target.len() });
        }
        Ok(P2PInstance { system, target })
    }

    pub fn system(&self) -> &LoopProgram {
        &self.system
    }

    pub fn target(&self) -> &[Rational] {
        &self.target
    }

    /// First `n ≤ horizon` at which the target is hit, by simulation.
    pub fn first_hit(&self, horizon: usize) -> Result<Option<usize>> {
        let states = crate::loops::simulate(&self.system, horizon)?;
        Ok(states.iter().position(|s| s == &self.target))
    }
}
