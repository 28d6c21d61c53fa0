//! Proof kernel for first-order natural deduction with classes and
//! second-order propositional variables, plus an automatic prover for
//! intuitionistic propositional logic.

pub mod environment;
pub mod gentzen;
pub mod kernel;
pub mod shell;
pub mod syntax;
