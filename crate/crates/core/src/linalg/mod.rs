//! Dense complex linear algebra: matrices, Kronecker products, partial
//! transposition, 2×2 block views and a Hermitian eigensolver.

pub mod blocks;
pub mod eigen;
pub mod matrix;
pub mod tensor;

pub use blocks::{assemble, blocks, BlockView};
pub use eigen::{eigenvalues, hermitian_eig, min_eigenvalue, numerical_rank, trace_norm, Spectrum};
pub use matrix::{basis, inner, vec_norm, ComplexMatrix, C64, I, ONE, ZERO};
pub use tensor::{contract_factor, kron, kron_vec, partial_transpose, realign, Subsystem};
