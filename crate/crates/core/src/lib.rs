pub mod cat;
pub mod error;
pub mod finset;
pub mod io;
pub mod hopf;
pub mod linalg;
pub mod monoidale;
pub mod polyad;
pub mod random;
pub mod report;
pub mod spanv;
pub mod vect;
