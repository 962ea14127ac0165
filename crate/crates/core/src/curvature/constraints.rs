//! The linear solution space of the `∇R` identities.
//!
//! Unknowns are reduced up front by the pair symmetries: for each last slot
//! `v` one unknown per unordered pair `{A, B}` of index pairs `A = (x<y)`,
//! `B = (z<w)`. The two cyclic identities are then imposed as sparse rows.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::exactpoly::rational::Rational;
use crate::pseudolin::sparse::{SparseEchelon, SparseRow};

/// Index bookkeeping for the reduced unknowns in dimension `m`.
#[derive(Clone, Debug)]
pub struct Layout {
    pub m: usize,
    pair: Vec<Vec<Option<usize>>>,
    npairs: usize,
}

impl Layout {
    pub fn new(m: usize) -> Self {
        let mut pair = vec![vec![None; m]; m];
        let mut n = 0;
        for (i, row) in pair.iter_mut().enumerate() {
            for cell in row.iter_mut().skip(i + 1) {
                *cell = Some(n);
                n += 1;
            }
        }
        Layout { m, pair, npairs: n }
    }

    fn per_slot(&self) -> usize {
        self.npairs * (self.npairs + 1) / 2
    }

    pub fn ncols(&self) -> usize {
        self.m * self.per_slot()
    }

    fn tri(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        // row-major upper triangle including the diagonal
        a * self.npairs - a * (a + 1) / 2 + b
    }

    fn signed_pair(&self, x: usize, y: usize) -> Option<(usize, i64)> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some((self.pair[x][y].unwrap(), 1)),
            std::cmp::Ordering::Greater => Some((self.pair[y][x].unwrap(), -1)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Reduced column and sign carrying the component `T[x,y,z,w;v]`, or
    /// `None` when identity (1) forces it to vanish.
    pub fn component(
        &self,
        x: usize,
        y: usize,
        z: usize,
        w: usize,
        v: usize,
    ) -> Option<(usize, i64)> {
        let (a, sa) = self.signed_pair(x, y)?;
        let (b, sb) = self.signed_pair(z, w)?;
        Some((v * self.per_slot() + self.tri(a, b), sa * sb))
    }
}

fn add(row: &mut HashMap<usize, i64>, c: Option<(usize, i64)>) {
    if let Some((col, s)) = c {
        *row.entry(col).or_insert(0) += s;
    }
}

fn canonical(row: HashMap<usize, i64>) -> Option<Vec<(usize, i64)>> {
    let mut r: Vec<(usize, i64)> = row.into_iter().filter(|e| e.1 != 0).collect();
    if r.is_empty() {
        return None;
    }
    r.sort_unstable();
    if r[0].1 < 0 {
        for e in r.iter_mut() {
            e.1 = -e.1;
        }
    }
    Some(r)
}

/// Distinct nonzero rows of the two cyclic identities in reduced unknowns.
pub fn cyclic_rows(layout: &Layout) -> Vec<Vec<(usize, i64)>> {
    let m = layout.m;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for w in 0..m {
                    for v in 0..m {
                        // first Bianchi on (x,y,z)
                        let mut r = HashMap::new();
                        add(&mut r, layout.component(x, y, z, w, v));
                        add(&mut r, layout.component(y, z, x, w, v));
                        add(&mut r, layout.component(z, x, y, w, v));
                        if let Some(c) = canonical(r) {
                            if seen.insert(c.clone()) {
                                out.push(c);
                            }
                        }
                        // second Bianchi on (z,w,v)
                        let mut r = HashMap::new();
                        add(&mut r, layout.component(x, y, z, w, v));
                        add(&mut r, layout.component(x, y, w, v, z));
                        add(&mut r, layout.component(x, y, v, z, w));
                        if let Some(c) = canonical(r) {
                            if seen.insert(c.clone()) {
                                out.push(c);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Nullspace of the identities in dimension `m` (reduced coordinates).
#[derive(Debug)]
pub struct SolutionSpace {
    pub layout: Layout,
    pub basis: Vec<SparseRow>,
    pub rows_used: usize,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn solve(m: usize) -> SolutionSpace {
    let layout = Layout::new(m);
    let rows = cyclic_rows(&layout);
    let mut ech = SparseEchelon::new(layout.ncols());
    for r in &rows {
        ech.push(
            r.iter()
                .map(|&(c, s)| (c, Rational::from_integer(s.into()))),
        );
    }
    let basis = ech.nullspace();
    debug_assert!(basis.iter().all(|b| b.iter().all(|e| !e.1.is_zero())));
    SolutionSpace {
        layout,
        basis,
        rows_used: rows.len(),
    }
}

/// Cached per dimension; computed once per process.
pub fn solution_space(m: usize) -> Arc<SolutionSpace> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SolutionSpace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&m) {
        return s.clone();
    }
    let s = Arc::new(solve(m));
    cache.lock().unwrap().entry(m).or_insert(s).clone()
}

/// `m²(m²−1)(m+2)/24`.
pub fn expected_dimension(m: usize) -> usize {
    m * m * (m * m - 1) * (m + 2) / 24
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_sign_rules() {
        let l = Layout::new(3);
        let (c, s) = l.component(0, 1, 0, 2, 1).unwrap();
        assert_eq!(l.component(1, 0, 0, 2, 1), Some((c, -s)));
        assert_eq!(l.component(0, 2, 0, 1, 1), Some((c, s)));
        assert_eq!(l.component(1, 1, 0, 2, 0), None);
    }

    #[test]
    fn small_dimensions() {
        for m in 2..=4 {
            assert_eq!(solve(m).dimension(), expected_dimension(m), "m = {m}");
        }
    }
}
