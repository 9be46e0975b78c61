pub mod cli;
pub mod dsl;
pub mod hilbert;
pub mod lattice;
pub mod rees;
pub mod report;
pub mod theorems;
