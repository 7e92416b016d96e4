//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! All variables are nonnegative. Phase one drives artificial variables out,
//! phase two optimizes the real objective; Bland's lowest-index rule for both
//! the entering and the leaving variable guarantees termination.

use num_traits::{One, Signed, Zero};

use super::{Direction, LinearProgram, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub values: Vec<Rational>,
    pub objective: Rational,
    pub pivots: usize,
}

struct Tableau {
    /// `rows[r]` has one coefficient per column followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    columns: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.columns]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Maximizes `cost · x` over columns allowed by `enterable`.
    fn optimize(&mut self, cost: &[Rational], enterable: impl Fn(usize) -> bool) -> Result<()> {
        loop {
            // reduced cost of column j: cost[j] - sum_r cost[basis[r]] * a[r][j]
            let entering = (0..self.columns).filter(|&j| enterable(j)).find(|&j| {
                let mut d = cost[j].clone();
                for (r, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        d -= &cost[self.basis[r]] * &row[j];
                    }
                }
                d.is_positive()
            });
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

/// Exact optimum of `lp`.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution> {
    let nv = lp.variables.len();
    let m = lp.constraints.len();
    // normalize every row to a nonnegative right-hand side
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(m);
    for con in &lp.constraints {
        let (mut coeffs, mut rel, mut rhs) = (con.coeffs.clone(), con.relation, con.rhs.clone());
        if rhs.is_negative() || (rhs.is_zero() && rel == Relation::Ge) {
            coeffs.iter_mut().for_each(|x| *x = -x.clone());
            rhs = -rhs;
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        rows.push((coeffs, rel, rhs));
    }
    let slack_count = rows.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|(_, r, _)| *r != Relation::Le).count();
    let columns = nv + slack_count + artificial_count;
    let first_artificial = nv + slack_count;

    let mut tableau = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), columns, pivots: 0 };
    let (mut next_slack, mut next_art) = (nv, first_artificial);
    for (coeffs, rel, rhs) in rows {
        let mut row = vec![Rational::zero(); columns + 1];
        row[..nv].clone_from_slice(&coeffs);
        row[columns] = rhs;
        match rel {
            Relation::Le => {
                row[next_slack] = Rational::one();
                tableau.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                tableau.basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                tableau.basis.push(next_art);
                next_art += 1;
            }
        }
        tableau.rows.push(row);
    }

    if artificial_count > 0 {
        let phase_one: Vec<Rational> =
            (0..columns).map(|j| if j >= first_artificial { -Rational::one() } else { Rational::zero() }).collect();
        tableau.optimize(&phase_one, |_| true)?;
        let infeasible = tableau
            .basis
            .iter()
            .enumerate()
            .any(|(r, &b)| b >= first_artificial && !tableau.rhs(r).is_zero());
        if infeasible {
            return Err(Error::Infeasible);
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= first_artificial {
                match (0..first_artificial).find(|&j| !tableau.rows[r][j].is_zero()) {
                    Some(c) => tableau.pivot(r, c),
                    None => {
                        tableau.rows.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let sign = match lp.direction {
        Direction::Maximize => Rational::one(),
        Direction::Minimize => -Rational::one(),
    };
    let mut cost = vec![Rational::zero(); columns];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = c * &sign;
    }
    tableau.optimize(&cost, |j| j < first_artificial)?;

    let mut values = vec![Rational::zero(); nv];
    for (r, &b) in tableau.basis.iter().enumerate() {
        if b < nv {
            values[b] = tableau.rhs(r).clone();
        }
    }
    let objective = lp.objective.iter().zip(&values).map(|(c, x)| c * x).sum();
    Ok(LpSolution { values, objective, pivots: tableau.pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Constraint;
    use crate::rational::{int, ratio};

    fn lp(direction: Direction, objective: Vec<i64>, constraints: Vec<(Vec<i64>, Relation, Rational)>) -> LinearProgram {
        LinearProgram {
            variables: (1..=objective.len()).map(|k| format!("x{k}")).collect(),
            objective: objective.into_iter().map(int).collect(),
            direction,
            constraints: constraints
                .into_iter()
                .map(|(c, relation, rhs)| Constraint { coeffs: c.into_iter().map(int).collect(), relation, rhs })
                .collect(),
        }
    }

    #[test]
    fn single_variable_box() {
        let p = lp(Direction::Maximize, vec![1], vec![(vec![1], Relation::Le, int(1)), (vec![1], Relation::Ge, int(0))]);
        assert_eq!(simplex_solve(&p).unwrap().values, vec![int(1)]);
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let p = lp(
            Direction::Maximize,
            vec![3, 5],
            vec![
                (vec![1, 0], Relation::Le, int(4)),
                (vec![0, 2], Relation::Le, int(12)),
                (vec![3, 2], Relation::Le, int(18)),
            ],
        );
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.values, vec![int(2), int(6)]);
        assert_eq!(s.objective, int(36));
    }

    #[test]
    fn minimum_with_equalities_and_fractions() {
        // min x + y, x + 2y >= 1, x - y = 0 -> x = y = 1/3
        let p = lp(
            Direction::Minimize,
            vec![1, 1],
            vec![(vec![1, 2], Relation::Ge, int(1)), (vec![1, -1], Relation::Eq, int(0))],
        );
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.values, vec![ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn redundant_equalities() {
        let p = lp(
            Direction::Maximize,
            vec![1, 1],
            vec![
                (vec![1, 1], Relation::Eq, int(1)),
                (vec![2, 2], Relation::Eq, int(2)),
                (vec![1, 0], Relation::Le, ratio(1, 4)),
            ],
        );
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.objective, int(1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(Direction::Maximize, vec![1], vec![(vec![1], Relation::Le, int(1)), (vec![1], Relation::Ge, int(2))]);
        assert!(matches!(simplex_solve(&p), Err(Error::Infeasible)));
        let p = lp(Direction::Maximize, vec![1], vec![(vec![1], Relation::Ge, int(1))]);
        assert!(matches!(simplex_solve(&p), Err(Error::Unbounded)));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule
        let p = LinearProgram {
            variables: (1..=4).map(|k| format!("x{k}")).collect(),
            objective: vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)],
            direction: Direction::Maximize,
            constraints: vec![
                Constraint { coeffs: vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)], relation: Relation::Le, rhs: int(0) },
                Constraint { coeffs: vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)], relation: Relation::Le, rhs: int(0) },
                Constraint { coeffs: vec![int(0), int(0), int(1), int(0)], relation: Relation::Le, rhs: int(1) },
            ],
        };
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.objective, ratio(1, 20));
    }
}
