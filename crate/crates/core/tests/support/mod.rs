pub mod random_project;
pub mod chi_square_grid;
