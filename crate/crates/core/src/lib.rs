pub mod bases;
pub mod bloch;
pub mod density;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod random;
pub mod states;
pub mod tol;
