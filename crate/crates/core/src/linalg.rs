//! Exact sparse Gauss-Jordan elimination over a field.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rings::{RingElement, RingSpec};

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, RingElement>;

/// The reduced row echelon form of a homogeneous system.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub columns: usize,
    /// `(pivot column, row)` with the pivot entry equal to one, sorted by column.
    pub rows: Vec<(usize, SparseRow)>,
}

impl Echelon {
    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.iter().any(|(p, _)| *p == col)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The solution with `col` set to one and every other free column zero.
    pub fn free_solution(&self, col: usize, ring: RingSpec) -> Option<Vec<RingElement>> {
        if self.is_pivot(col) {
            return None;
        }
        let mut x = vec![ring.zero(); self.columns];
        x[col] = ring.one();
        for (p, row) in &self.rows {
            if let Some(v) = row.get(&col) {
                x[*p] = -v;
            }
        }
        Some(x)
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self, ring: RingSpec) -> Vec<Vec<RingElement>> {
        (0..self.columns)
            .filter_map(|c| self.free_solution(c, ring))
            .collect()
    }
}

/// Row reduces `rows`, choosing pivots column by column (lowest column first)
/// and preferring the sparsest candidate row.
pub fn row_reduce(rows: Vec<SparseRow>, columns: usize, ring: RingSpec) -> Result<Echelon> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let mut pending: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<(usize, SparseRow)> = Vec::new();
    for col in 0..columns {
        let Some(best) = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains_key(&col))
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
        else {
            continue;
        };
        let mut pivot = pending.swap_remove(best);
        let inv = pivot[&col]
            .inverse()
            .ok_or_else(|| Error::Invariant("zero entry stored in a sparse row".into()))?;
        for v in pivot.values_mut() {
            *v = &*v * &inv;
        }
        for row in pending.iter_mut() {
            eliminate(row, &pivot, col);
        }
        for (_, row) in done.iter_mut() {
            eliminate(row, &pivot, col);
        }
        pending.retain(|r| !r.is_empty());
        done.push((col, pivot));
    }
    done.sort_by_key(|(c, _)| *c);
    Ok(Echelon { columns, rows: done })
}

fn eliminate(row: &mut SparseRow, pivot: &SparseRow, col: usize) {
    let Some(factor) = row.get(&col).cloned() else {
        return;
    };
    for (c, v) in pivot {
        let updated = match row.get(c) {
            Some(old) => old - &(&factor * v),
            None => -(&factor * v),
        };
        if updated.is_zero() {
            row.remove(c);
        } else {
            row.insert(*c, updated);
        }
    }
}
