use crate::error::{Error, Result};

/// Neville tableau extrapolating `values(h)` to `h = 0`.
///
/// `table[i][k]` is the value at zero of the degree-`k` polynomial through
/// the points `i-k..=i`.
#[derive(Debug, Clone)]
pub struct RichardsonTableau {
    pub table: Vec<Vec<f64>>,
}

impl RichardsonTableau {
    pub fn best(&self) -> f64 {
        let last = self.table.last().expect("non-empty tableau");
        *last.last().expect("non-empty row")
    }

    /// Relative gap between the two highest-order entries of the last row.
    pub fn error_estimate(&self) -> f64 {
        let last = self.table.last().expect("non-empty tableau");
        if last.len() < 2 {
            return f64::INFINITY;
        }
        let best = last[last.len() - 1];
        let prev = last[last.len() - 2];
        (best - prev).abs() / best.abs()
    }
}

/// Polynomial (Richardson) extrapolation in the step `h`.
pub fn richardson_tableau(h: &[f64], values: &[f64]) -> Result<RichardsonTableau> {
    if h.len() != values.len() || h.is_empty() {
        return Err(Error::invalid("extrapolation needs matching, non-empty h and value lists"));
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(h.len());
    for i in 0..h.len() {
        let mut row = vec![values[i]];
        for k in 1..=i {
            let hi = h[i];
            let hk = h[i - k];
            if hi == hk {
                return Err(Error::invalid("extrapolation steps must be distinct"));
            }
            let upper = row[k - 1];
            let lower = table[i - 1][k - 1];
            row.push((hk * upper - hi * lower) / (hk - hi));
        }
        table.push(row);
    }
    Ok(RichardsonTableau { table })
}
