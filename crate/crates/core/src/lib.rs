pub mod archimedean;
pub mod batch;
pub mod echelon;
pub mod elementary;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod random;
pub mod sweep;
