use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactpoly::rational::Rational;

/// Sparse row: strictly increasing column indices, nonzero values.
pub type SparseRow = Vec<(usize, Rational)>;

/// Exact row reduction for large sparse homogeneous systems. Rows are
/// pushed one at a time; the nullspace is read off at the end.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &SparseRow, f: &Rational, piv: &SparseRow) -> SparseRow {
    // row - f * piv, both sorted
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j == piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i == row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, -(f * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &piv[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Insert a row given as unsorted `(col, value)` pairs (duplicates summed).
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        let mut row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            let Some((lead, coef)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => row = axpy(&row, &coef, piv),
                None => {
                    let inv = coef.recip();
                    for e in row.iter_mut() {
                        e.1 *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Fully reduced pivot rows (each pivot column appears in one row only).
    fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(c, _)| done.contains_key(c))
                    .cloned();
                match hit {
                    Some((c, f)) => row = axpy(&row, &f, &done[&c]),
                    None => break,
                }
            }
            debug_assert!(row[0].0 == lead && row[0].1.is_one());
            done.insert(lead, row);
        }
        done
    }

    /// Basis of the solution space, one vector per free column, sparse.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let red = self.reduced();
        // For each free column f, v[f] = 1 and v[p] = -R[p][f].
        let mut by_free: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (&p, row) in &red {
            for (c, v) in row.iter().skip(1) {
                by_free.entry(*c).or_default().push((p, -v.clone()));
            }
        }
        (0..self.ncols)
            .filter(|c| !red.contains_key(c))
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, Rational::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }
}
