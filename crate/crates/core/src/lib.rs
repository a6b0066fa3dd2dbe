pub mod lattice_paths;
pub mod set_partitions;
pub mod rational_nc;
pub mod symmetry;
pub mod qseries;
pub mod parking;
pub mod cli;
