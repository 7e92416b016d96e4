//! Sparse exact Gaussian elimination.
//!
//! Pivots are taken on the diagonal in Markowitz order (smallest
//! `(row_nnz - 1) * (col_nnz - 1)`, ties to the lowest index). The systems
//! solved here are nonsingular M-matrices, whose Schur complements keep a
//! nonzero diagonal; if that ever fails the first nonzero entry of the
//! lowest remaining column is used instead.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) struct SparseSystem {
    rows: Vec<BTreeMap<usize, Rational>>,
    rhs: Vec<Rational>,
}

impl SparseSystem {
    pub fn new(size: usize) -> Self {
        SparseSystem { rows: vec![BTreeMap::new(); size], rhs: vec![Rational::zero(); size] }
    }

    pub fn add(&mut self, row: usize, col: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        let entry = self.rows[row].entry(col).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.rows[row].remove(&col);
        }
    }

    pub fn add_rhs(&mut self, row: usize, value: Rational) {
        self.rhs[row] += value;
    }

    pub fn solve(self) -> Result<Vec<Rational>> {
        let SparseSystem { mut rows, mut rhs } = self;
        let size = rows.len();
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); size];
        for (r, row) in rows.iter().enumerate() {
            for &c in row.keys() {
                cols[c].insert(r);
            }
        }
        let mut row_done = vec![false; size];
        let mut col_done = vec![false; size];
        let cost = |rows: &[BTreeMap<usize, Rational>], cols: &[BTreeSet<usize>], k: usize| {
            rows[k].len().saturating_sub(1) * cols[k].len().saturating_sub(1)
        };
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..size).map(|k| Reverse((cost(&rows, &cols, k), k))).collect();
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(size);

        while order.len() < size {
            let mut pivot = None;
            while let Some(Reverse((c, k))) = heap.pop() {
                if row_done[k] || col_done[k] || c != cost(&rows, &cols, k) {
                    continue;
                }
                if rows[k].contains_key(&k) {
                    pivot = Some((k, k));
                    break;
                }
            }
            let (pr, pc) = match pivot {
                Some(p) => p,
                None => fallback_pivot(&rows, &cols, &row_done, &col_done).ok_or(Error::SingularSystem)?,
            };
            row_done[pr] = true;
            col_done[pc] = true;
            order.push((pr, pc));

            let pivot_row: Vec<(usize, Rational)> = rows[pr].iter().map(|(&c, v)| (c, v.clone())).collect();
            let pivot_val = rows[pr][&pc].clone();
            let pivot_rhs = rhs[pr].clone();
            let targets: Vec<usize> = cols[pc].iter().copied().filter(|&r| r != pr && !row_done[r]).collect();
            let mut touched = BTreeSet::new();
            for r in targets {
                let factor = rows[r].remove(&pc).expect("column index out of sync") / &pivot_val;
                cols[pc].remove(&r);
                for (c, v) in &pivot_row {
                    if *c == pc {
                        continue;
                    }
                    let entry = rows[r].entry(*c).or_insert_with(Rational::zero);
                    let was_zero = entry.is_zero();
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[r].remove(c);
                        cols[*c].remove(&r);
                    } else if was_zero {
                        cols[*c].insert(r);
                    }
                    touched.insert(*c);
                }
                rhs[r] -= &factor * &pivot_rhs;
                touched.insert(r);
            }
            for k in touched {
                if !row_done[k] && !col_done[k] {
                    heap.push(Reverse((cost(&rows, &cols, k), k)));
                }
            }
        }

        let mut x = vec![Rational::zero(); size];
        for &(r, c) in order.iter().rev() {
            let mut acc = rhs[r].clone();
            for (&j, v) in &rows[r] {
                if j != c {
                    acc -= v * &x[j];
                }
            }
            x[c] = acc / &rows[r][&c];
        }
        Ok(x)
    }
}

fn fallback_pivot(
    rows: &[BTreeMap<usize, Rational>],
    cols: &[BTreeSet<usize>],
    row_done: &[bool],
    col_done: &[bool],
) -> Option<(usize, usize)> {
    let c = (0..cols.len()).find(|&c| !col_done[c])?;
    let r = cols[c].iter().copied().find(|&r| !row_done[r] && rows[r].contains_key(&c))?;
    Some((r, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn solves_small_dense_system() {
        // 2x + y = 3, x + 3y = 5  ->  x = 4/5, y = 7/5
        let mut s = SparseSystem::new(2);
        s.add(0, 0, int(2));
        s.add(0, 1, int(1));
        s.add(1, 0, int(1));
        s.add(1, 1, int(3));
        s.add_rhs(0, int(3));
        s.add_rhs(1, int(5));
        assert_eq!(s.solve().unwrap(), vec![ratio(4, 5), ratio(7, 5)]);
    }

    #[test]
    fn zero_diagonal_uses_fallback() {
        // y = 1, x = 2 written with swapped rows
        let mut s = SparseSystem::new(2);
        s.add(0, 1, int(1));
        s.add(1, 0, int(1));
        s.add_rhs(0, int(1));
        s.add_rhs(1, int(2));
        assert_eq!(s.solve().unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn singular_is_reported() {
        let mut s = SparseSystem::new(2);
        s.add(0, 0, int(1));
        s.add(0, 1, int(1));
        s.add(1, 0, int(2));
        s.add(1, 1, int(2));
        assert!(matches!(s.solve(), Err(Error::SingularSystem)));
    }
}
