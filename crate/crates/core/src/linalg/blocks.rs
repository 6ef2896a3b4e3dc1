use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// A 2K×2K matrix viewed as a 2×2 array of K×K blocks,
/// X = Σ_{k,l} |k⟩⟨l| ⊗ X_kl.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockView {
    pub k: usize,
    pub x11: ComplexMatrix,
    pub x12: ComplexMatrix,
    pub x21: ComplexMatrix,
    pub x22: ComplexMatrix,
}

impl BlockView {
    pub fn split(x: &ComplexMatrix, k: usize) -> Result<Self> {
        let n = x.square_dim()?;
        if k == 0 || n != 2 * k {
            return Err(Error::BadBlockSize(n, k));
        }
        Ok(Self {
            k,
            x11: x.submatrix(0, 0, k, k),
            x12: x.submatrix(0, k, k, k),
            x21: x.submatrix(k, 0, k, k),
            x22: x.submatrix(k, k, k, k),
        })
    }

    /// Splits an even-dimensional square matrix into halves.
    pub fn halves(x: &ComplexMatrix) -> Result<Self> {
        let n = x.square_dim()?;
        if n == 0 || n % 2 != 0 {
            return Err(Error::BadBlockSize(n, n / 2));
        }
        Self::split(x, n / 2)
    }

    pub fn from_blocks(
        x11: ComplexMatrix,
        x12: ComplexMatrix,
        x21: ComplexMatrix,
        x22: ComplexMatrix,
    ) -> Result<Self> {
        let k = x11.rows();
        for b in [&x11, &x12, &x21, &x22] {
            if b.dim() != (k, k) {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: b.rows().max(b.cols()),
                });
            }
        }
        Ok(Self {
            k,
            x11,
            x12,
            x21,
            x22,
        })
    }

    pub fn assemble(&self) -> ComplexMatrix {
        let k = self.k;
        let mut out = ComplexMatrix::zeros(2 * k, 2 * k);
        out.set_submatrix(0, 0, &self.x11);
        out.set_submatrix(0, k, &self.x12);
        out.set_submatrix(k, 0, &self.x21);
        out.set_submatrix(k, k, &self.x22);
        out
    }
}

pub fn blocks(x: &ComplexMatrix, k: usize) -> Result<BlockView> {
    BlockView::split(x, k)
}

pub fn assemble(view: &BlockView) -> ComplexMatrix {
    view.assemble()
}
