use std::collections::BTreeMap;

use super::{Expr, SymError, Symbol};
use crate::scalar::Scalar;

/// One equation `sum_j coeffs[j] * unknown_j = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquation<C> {
    pub coeffs: Vec<Expr<C>>,
    pub rhs: Expr<C>,
}

impl<C: Scalar> LinearEquation<C> {
    pub fn new(coeffs: Vec<Expr<C>>, rhs: Expr<C>) -> Self {
        LinearEquation { coeffs, rhs }
    }

    /// Reads `expr = 0` as an equation in `unknowns`.
    pub fn from_expr(expr: &Expr<C>, unknowns: &[Symbol]) -> Result<Self, SymError> {
        let mut rest = expr.clone();
        let mut coeffs = Vec::with_capacity(unknowns.len());
        for u in unknowns {
            let (a, b) = rest.linear_in(u)?;
            if unknowns.iter().any(|v| a.symbols().contains(v)) {
                return Err(SymError::NonLinear(u.name().to_string()));
            }
            coeffs.push(a);
            rest = b;
        }
        Ok(LinearEquation { coeffs, rhs: -rest })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution<C> {
    Unique(BTreeMap<Symbol, Expr<C>>),
    Inconsistent,
    Underdetermined,
    /// Elimination needed a quotient outside the expression algebra.
    Inconclusive(String),
}

impl<C: Scalar> LinearSolution<C> {
    pub fn unique(&self) -> Option<&BTreeMap<Symbol, Expr<C>>> {
        match self {
            LinearSolution::Unique(m) => Some(m),
            _ => None,
        }
    }
}

fn pivot_rank<C: Scalar>(e: &Expr<C>) -> (u8, usize) {
    if e.as_constant().is_some() {
        (0, 0)
    } else if e.as_single_term().map_or(false, |t| t.is_unit()) {
        (1, 0)
    } else if e.term_count() == 1 {
        (2, 0)
    } else {
        (3, e.term_count())
    }
}

/// Solves a linear system over the fraction field of the expression algebra.
///
/// Elimination is fraction free: rows are cross-multiplied, and a pivot is
/// divided out only when it is a unit. Division is needed only during back
/// substitution; when that quotient leaves the algebra the result is
/// `Inconclusive`.
pub fn solve_linear<C: Scalar>(
    system: &[LinearEquation<C>],
    unknowns: &[Symbol],
) -> LinearSolution<C> {
    let n = unknowns.len();
    let mut rows: Vec<Vec<Expr<C>>> = Vec::with_capacity(system.len());
    for eq in system {
        if eq.coeffs.len() != n {
            return LinearSolution::Inconclusive(format!(
                "equation has {} coefficients for {} unknowns",
                eq.coeffs.len(),
                n
            ));
        }
        let mut row = eq.coeffs.clone();
        row.push(eq.rhs.clone());
        rows.push(row);
    }

    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..n {
        let Some(best) = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| pivot_rank(&rows[r][col]))
        else {
            continue;
        };
        rows.swap(rank, best);
        if let Some(t) = rows[rank][col].as_single_term().filter(|t| t.is_unit()) {
            for e in rows[rank].iter_mut() {
                *e = e.divide_by_term(&t).expect("unit terms divide everything");
            }
        }
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[col].clone();
        for r in rank + 1..rows.len() {
            let factor = rows[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            if pivot.is_one() {
                for (e, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *e = &*e - &(&factor * p);
                }
            } else {
                for (e, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *e = &(&pivot * &*e) - &(&factor * p);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    if rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if rank < n {
        return LinearSolution::Underdetermined;
    }

    let mut values: Vec<Expr<C>> = vec![Expr::zero(); n];
    for k in (0..rank).rev() {
        let col = pivot_cols[k];
        let mut acc = rows[k][n].clone();
        for j in col + 1..n {
            acc = &acc - &(&rows[k][j] * &values[j]);
        }
        match acc.exact_div(&rows[k][col]) {
            Ok(v) => values[col] = v,
            Err(e) => {
                return LinearSolution::Inconclusive(format!(
                    "cannot divide by pivot {}: {e}",
                    rows[k][col]
                ))
            }
        }
    }
    LinearSolution::Unique(unknowns.iter().cloned().zip(values).collect())
}
