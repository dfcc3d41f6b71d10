//! Shared inputs for the criterion benches.

use fkf_core::{Engine, KillingState, Poly, Prolongation, TjMethod};

/// A dense-ish operand: `T_j` for the given index.
pub fn tj_operand(j: u32) -> Poly {
    Prolongation::new(j).and_then(|r| r.tj(j, TjMethod::Closed)).expect("valid tower")
}

/// A state after `cycles` full cycles of the given ansatz.
pub fn state(ansatz: fkf_core::Ansatz, cycles: u32) -> KillingState {
    Engine::new(Engine::required_tower(cycles)).and_then(|e| e.run(ansatz, cycles)).expect("engine run")
}
