//! Composite objects: projectors, ladders, supercharges and Hamiltonians.

mod gwh;
mod projectors;
mod quon;
mod system;
mod uqsl2;

pub use gwh::{gwh_rep, hamiltonian_gwh, hamiltonian_gwh_printed, structure_operator, GradeFn, GwhRep, Structure};
pub use projectors::{kpowers_to_grades, projectors, weighted_projector_sum, ProjectorFamily};
pub use quon::{
    defining_relation_operator, defining_relation_residual, fermionic_factor, hamiltonian_quon, quon_ladder,
    supercharges, QuonLadder,
};
pub use system::{Construction, SusySystem, SystemBundle};
pub use uqsl2::{casimir, hamiltonian_uqsl2};
