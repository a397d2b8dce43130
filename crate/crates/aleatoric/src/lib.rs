//! Classical probability toolkit: exact combinatorics, the Gaussian
//! deviation integral and its landmark values, binomial/hypergeometric
//! repetition laws, distribution summaries (mean, median, modulus of
//! convergence), posterior comparison tests, combination of measurements
//! and least squares, games of chance and ruin, insurance risk windows,
//! tribunal/jury/witness reliability solvers, life-table calculus,
//! angular statistics of orbit catalogs, and a seeded Monte Carlo oracle
//! that cross-checks the analytic modules.

pub mod combinatorics;
pub mod deviation;
pub mod repetition;
pub mod summaries;
pub mod inference;
pub mod measurement;
pub mod games;
pub mod insurance;
pub mod judgements;
pub mod demography;
pub mod orbits;
pub mod montecarlo;
pub mod reproduce;
pub mod cli;
