//! Exact two-phase simplex over rationals.
//!
//! Variables are nonnegative. Constraints may be `<=`, `>=` or `=` with any
//! sign of right-hand side. Pivoting follows Bland's smallest-index rule, so
//! the method terminates on degenerate problems. The solver reports the
//! optimal basic solution together with the dual values of the constraint
//! rows, which certify optimality: `rhs . duals == objective`.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coefficients,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub objective: Rational,
    pub values: Vec<Rational>,
    /// One dual value per constraint row, in the sign convention of the
    /// original problem.
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    artificial: Vec<bool>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for (v, pv) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    fn reduced_cost(&self, costs: &[Rational], col: usize) -> Rational {
        let mut d = costs[col].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !costs[b].is_zero() && !self.rows[r][col].is_zero() {
                d -= &costs[b] * &self.rows[r][col];
            }
        }
        d
    }

    /// Maximizes `costs . x` from the current feasible basis.
    fn optimize(&mut self, costs: &[Rational], allow_artificial: bool) -> Result<()> {
        let ncols = costs.len();
        loop {
            let entering = (0..ncols).find(|&j| {
                (allow_artificial || !self.artificial[j])
                    && !self.basis.contains(&j)
                    && self.reduced_cost(costs, j).is_positive()
            });
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(row, col);
        }
    }

    fn value(&self, costs: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &costs[b] * v)
            .sum()
    }
}

/// Solves `lp` exactly.
///
/// Returns [`Error::Infeasible`] or [`Error::Unbounded`] for problems without
/// an optimum, and [`Error::Input`] when row lengths disagree with the
/// objective.
pub fn exact_lp_solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coefficients.len() != n {
            return Err(Error::Input(format!(
                "constraint {i} has {} coefficients, expected {n}",
                c.coefficients.len()
            )));
        }
    }

    // Normalize to nonnegative right-hand sides; remember flipped rows.
    let mut sign = vec![false; m];
    let mut rels = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let flip = c.rhs.is_negative();
        sign[i] = flip;
        rels.push(match (c.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        });
    }

    let extra: usize = rels
        .iter()
        .map(|r| if *r == Relation::Ge { 2 } else { 1 })
        .sum();
    let ncols = n + extra;
    let mut rows = vec![vec![Rational::zero(); ncols]; m];
    let mut rhs = Vec::with_capacity(m);
    let mut basis = vec![0; m];
    let mut artificial = vec![false; ncols];
    // Column holding the initial identity for each row.
    let mut identity = vec![0; m];
    let mut next = n;
    for (i, c) in lp.constraints.iter().enumerate() {
        for (j, a) in c.coefficients.iter().enumerate() {
            rows[i][j] = if sign[i] { -a.clone() } else { a.clone() };
        }
        rhs.push(c.rhs.abs());
        let one = Rational::from_integer(1.into());
        match rels[i] {
            Relation::Le => {
                rows[i][next] = one;
                identity[i] = next;
                next += 1;
            }
            Relation::Ge => {
                rows[i][next] = -one.clone();
                rows[i][next + 1] = one;
                artificial[next + 1] = true;
                identity[i] = next + 1;
                next += 2;
            }
            Relation::Eq => {
                rows[i][next] = one;
                artificial[next] = true;
                identity[i] = next;
                next += 1;
            }
        }
        basis[i] = identity[i];
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        artificial,
        pivots: 0,
    };

    if tab.artificial.iter().any(|&a| a) {
        let phase1: Vec<Rational> = tab
            .artificial
            .iter()
            .map(|&a| {
                if a {
                    -Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        tab.optimize(&phase1, true)?;
        if tab.value(&phase1).is_negative() {
            return Err(Error::Infeasible);
        }
        for r in 0..m {
            if !tab.artificial[tab.basis[r]] {
                continue;
            }
            let col = (0..ncols).find(|&j| !tab.artificial[j] && !tab.rows[r][j].is_zero());
            // No such column means the row is redundant; the artificial stays
            // basic at level zero and never moves again.
            if let Some(col) = col {
                tab.pivot(r, col);
            }
        }
    }

    let mut costs = vec![Rational::zero(); ncols];
    for (j, c) in lp.objective.iter().enumerate() {
        costs[j] = match lp.sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c.clone(),
        };
    }
    tab.optimize(&costs, false)?;

    let mut values = vec![Rational::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] = tab.rhs[r].clone();
        }
    }
    let objective: Rational = lp.objective.iter().zip(&values).map(|(c, x)| c * x).sum();

    let duals = (0..m)
        .map(|i| {
            let col = identity[i];
            let mut y: Rational = tab
                .basis
                .iter()
                .enumerate()
                .map(|(r, &b)| &costs[b] * &tab.rows[r][col])
                .sum();
            if sign[i] {
                y = -y;
            }
            if lp.sense == Sense::Minimize {
                y = -y;
            }
            y
        })
        .collect();

    Ok(LpSolution {
        objective,
        values,
        duals,
        pivots: tab.pivots,
    })
}
