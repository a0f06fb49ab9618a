//! Exact special values of the Riemann zeta function and of quadratic
//! Dirichlet L-functions, scans of their numerators for congruence primes,
//! and Sturm-bound verification of Eisenstein/cusp-form congruences.

pub mod bernoulli;
pub mod bigmath;
pub mod dirichlet;
pub mod scan;
pub mod numberfield;
pub mod qseries;
pub mod sturm;
pub mod io;
pub mod cli;
