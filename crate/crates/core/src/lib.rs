pub mod cancel;
pub mod cli;
pub mod decide;
pub mod geometry;
pub mod hats;
pub mod mvterm;
pub mod pwl;
pub mod rational;
pub mod synth;

#[cfg(test)]
pub(crate) mod testgen;
