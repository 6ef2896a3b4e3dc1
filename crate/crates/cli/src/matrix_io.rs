//! JSON form of a square complex matrix: `{"d": n, "rows": [[[re, im], ...], ...]}`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use robertson_core::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self { d: m.rows(), rows }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows.len() != self.d {
            bail!("matrix has {} rows but d = {}", self.rows.len(), self.d);
        }
        if let Some((i, r)) = self
            .rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.d)
        {
            bail!("row {i} has {} entries but d = {}", r.len(), self.d);
        }
        let rows: Vec<Vec<C64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        Ok(ComplexMatrix::from_rows(&rows)?)
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed: MatrixJson =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    parsed
        .to_matrix()
        .with_context(|| format!("in {}", path.display()))
}
