use crate::error::{Error, Result};
use crate::rational::Rational;

/// A square system `coefficients * x = rhs` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub coefficients: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(coefficients: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        let n = rhs.len();
        if coefficients.len() != n || coefficients.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("system is not square with {n} unknowns")));
        }
        Ok(LinearSystem { coefficients, rhs })
    }

    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    /// True when `x` satisfies every equation exactly.
    pub fn is_solution(&self, x: &[Rational]) -> bool {
        x.len() == self.size()
            && self.coefficients.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row.iter().zip(x).map(|(a, xi)| a * xi).sum();
                &lhs == b
            })
    }
}

/// Gauss-Jordan elimination in exact arithmetic.
pub fn solve_exact(system: &LinearSystem) -> Result<Vec<Rational>> {
    let n = system.size();
    let mut rows: Vec<Vec<Rational>> = system
        .coefficients
        .iter()
        .zip(&system.rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&factor * p);
            }
        }
    }
    let solution: Vec<Rational> = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
    debug_assert!(system.is_solution(&solution));
    Ok(solution)
}
