//! Exact Gaussian elimination over the coefficient field.

use std::collections::BTreeMap;

use crate::exactfield::{FieldContext, FieldElement};

/// Dense matrix over `Q(zeta_N)` with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    context: FieldContext,
    rows: Vec<Vec<FieldElement>>,
    ncols: usize,
}

impl Matrix {
    pub fn from_rows(context: FieldContext, rows: Vec<Vec<FieldElement>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix {
            context,
            rows,
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    #[allow(clippy::needless_range_loop)] // index form mirrors the elimination
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let nrows = m.len();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            if row >= nrows {
                break;
            }
            let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].inverse().expect("pivot is nonzero");
            for c in col..self.ncols {
                m[row][c] = &m[row][c] * &inv;
            }
            for r in 0..nrows {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..self.ncols {
                        let t = &factor * &m[row][c];
                        m[r][c] = &m[r][c] - &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.truncate(row);
        (
            Matrix {
                context: self.context,
                rows: m,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : A v = 0 }` (columns as unknowns).
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let zero = self.context.zero();
        let one = self.context.one();
        let mut basis = Vec::new();
        let is_pivot = {
            let mut v = vec![None; self.ncols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        for free in 0..self.ncols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![zero.clone(); self.ncols];
            v[free] = one.clone();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&r.rows[i][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `v` lies in the row span.
    #[allow(clippy::needless_range_loop)] // index form mirrors the elimination
    pub fn row_space_contains(&self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let (r, pivots) = self.rref();
        let mut v = v.to_vec();
        for (i, &c) in pivots.iter().enumerate() {
            if !v[c].is_zero() {
                let factor = v[c].clone();
                for j in 0..self.ncols {
                    let t = &factor * &r.rows[i][j];
                    v[j] = &v[j] - &t;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Exact span equality of the row spaces of two matrices.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        debug_assert_eq!(self.ncols, other.ncols);
        self.rref().0 == other.rref().0
    }
}

/// Incrementally maintained row-echelon basis for cheap repeated span queries.
///
/// Rows are stored sparsely, keyed by pivot column and kept with unit pivots;
/// reducing a vector only ever touches rows whose pivot appears in its
/// support, so monomial-heavy workloads stay near-linear.
pub struct EchelonSpan {
    ncols: usize,
    // pivot column -> remaining entries of the reduced row (excluding the
    // pivot itself, which is implicitly 1), sparse and sorted by column
    rows: BTreeMap<usize, Vec<(usize, FieldElement)>>,
}

impl EchelonSpan {
    pub fn new(_context: FieldContext, ncols: usize) -> Self {
        EchelonSpan {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminate every pivot of the span from `v`, leaving the residual.
    fn reduce(&self, v: &[(usize, FieldElement)]) -> BTreeMap<usize, FieldElement> {
        let mut work: BTreeMap<usize, FieldElement> = v
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (*j, c.clone()))
            .collect();
        debug_assert!(work.keys().all(|&j| j < self.ncols));
        let mut cursor = 0usize;
        while let Some((&col, _)) = work.range(cursor..).next() {
            let Some(row) = self.rows.get(&col) else {
                cursor = col + 1;
                continue;
            };
            let factor = work.remove(&col).expect("entry exists");
            for (j, c) in row {
                let t = &factor * c;
                match work.entry(*j) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let next = e.get() - &t;
                        if next.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = next;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-&t);
                    }
                }
            }
            cursor = col + 1;
        }
        work
    }

    pub fn contains(&self, v: &[(usize, FieldElement)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add `v` to the span; returns true when the rank grows.
    pub fn insert(&mut self, v: &[(usize, FieldElement)]) -> bool {
        let residual = self.reduce(v);
        let Some((&p, lead)) = residual.iter().next() else {
            return false;
        };
        let inv = lead.inverse().expect("pivot is nonzero");
        let row: Vec<(usize, FieldElement)> = residual
            .iter()
            .skip(1)
            .map(|(j, c)| (*j, c * &inv))
            .collect();
        self.rows.insert(p, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldContext;

    fn mat(rows: &[&[i64]]) -> Matrix {
        let k = FieldContext::new(1);
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            k,
            rows.iter()
                .map(|r| r.iter().map(|&x| k.from_int(x)).collect())
                .collect(),
            ncols,
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for row in m.rows() {
            let mut dot = FieldContext::new(1).zero();
            for (a, b) in row.iter().zip(&ker[0]) {
                dot = &dot + &(a * b);
            }
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn span_checks() {
        let m = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        let k = FieldContext::new(1);
        let v: Vec<_> = [2, 3, 5].iter().map(|&x| k.from_int(x)).collect();
        assert!(m.row_space_contains(&v));
        let w: Vec<_> = [1, 0, 0].iter().map(|&x| k.from_int(x)).collect();
        assert!(!m.row_space_contains(&w));
        let m2 = mat(&[&[1, 1, 2], &[1, -1, 0]]);
        assert!(m.same_row_space(&m2));
    }

    #[test]
    fn echelon_span_incremental() {
        let k = FieldContext::new(1);
        let v = |xs: &[i64]| -> Vec<(usize, FieldElement)> {
            xs.iter()
                .enumerate()
                .map(|(i, &x)| (i, k.from_int(x)))
                .collect()
        };
        let mut s = EchelonSpan::new(k, 3);
        assert!(s.insert(&v(&[1, 2, 3])));
        assert!(!s.insert(&v(&[2, 4, 6])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(&[1, 0, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }
}
