pub mod classify;
pub mod cli;
pub mod dbrg;
pub mod matrix;
pub mod network;
pub mod potential;
pub mod rational;
