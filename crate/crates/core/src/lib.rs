pub mod cli;
pub mod cocycle;
pub mod descent;
pub mod document;
pub mod error;
pub mod field;
pub mod kernel;
pub mod matrix;
pub mod moore;
pub mod oracle;
pub mod poly;
pub mod selftest;
pub mod semilinear;
