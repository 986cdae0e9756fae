//! Finite quantum groups, their actions, and the combinatorics of free
//! orthogonal quantum groups, all as explicit structure constants.

pub mod action;
pub mod cli;
pub mod corep;
pub mod hopf;
pub mod io;
pub mod numlin;
pub mod products;
pub mod report;
pub mod oplus;
pub mod twist;
