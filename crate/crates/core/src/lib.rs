pub mod lattice;
pub mod series;
pub mod gas;
pub mod quadrature;
pub mod continuum;
pub mod forest;
pub mod analysis;
pub mod cli;
