use crate::error::{Error, Result};

/// Piecewise-constant symmetric graphon on a `k × k` grid of cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    k: usize,
    values: Vec<f64>,
}

impl Grid {
    /// `values` is row-major, length `k²`, symmetric, entries in `[0,1]`.
    pub fn new(k: usize, values: Vec<f64>) -> Result<Self> {
        if k == 0 || values.len() != k * k {
            return Err(Error::invalid(format!("grid needs {} entries, got {}", k * k, values.len())));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::invalid("grid entries must be probabilities"));
        }
        for r in 0..k {
            for c in 0..r {
                if values[r * k + c] != values[c * k + r] {
                    return Err(Error::invalid(format!("grid not symmetric at ({}, {})", r + 1, c + 1)));
                }
            }
        }
        Ok(Grid { k, values })
    }

    pub fn constant(p: f64) -> Result<Self> {
        Self::new(1, vec![p])
    }

    /// Infers `k` from a row-major list of `k²` values.
    pub fn from_row_major(values: Vec<f64>) -> Result<Self> {
        let k = (values.len() as f64).sqrt().round() as usize;
        Self::new(k, values)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value in cell `(r, c)`, 0-based.
    pub fn cell(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.k + c]
    }

    /// 0-based cell index of `u ∈ [0,1]`: `⌈u·k⌉ − 1`, with `u = 0` in the first cell.
    pub fn cell_index(&self, u: f64) -> usize {
        ((u * self.k as f64).ceil() as usize).clamp(1, self.k) - 1
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.cell(self.cell_index(u), self.cell_index(v))
    }

    /// `∫∫ h(u,v) du dv`.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / (self.k * self.k) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_by_cells() {
        let g = Grid::from_row_major(vec![0.9, 0.1, 0.1, 0.9]).unwrap();
        assert_eq!(g.eval(0.25, 0.75), 0.1);
        assert_eq!(g.eval(0.5, 0.5), 0.9);
        assert_eq!(g.eval(1.0, 0.0), 0.1);
        assert!((g.mean() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(Grid::new(2, vec![0.9, 0.2, 0.1, 0.9]).is_err());
        assert!(Grid::new(2, vec![0.9, 0.1, 0.1]).is_err());
        assert!(Grid::new(1, vec![1.5]).is_err());
    }
}
