//! Complete and partial exponential Bell polynomials and their degenerate
//! variants.
//!
//! Everything here is computed by the standard recurrences
//!
//! ```text
//! Bel_{n+1}  = Σ_{i=0}^{n} C(n,i) x_{i+1} Bel_{n-i}
//! B_{n,k}    = Σ_{i=1}^{n-k+1} C(n-1,i-1) x_i B_{n-i,k-1}
//! ```
//!
//! The degenerate forms substitute `x_j ↦ (1)_{j,λ} x_j`.

use crate::error::{Error, Result};
use crate::ring::{Rational, Scalar, Var};
use crate::sequences::{binomial_q, deg_falling};

/// Bell polynomial arguments `x₁, x₂, …` (1-indexed).
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ArgumentVector(Vec<Scalar>);

impl ArgumentVector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        ArgumentVector(entries)
    }

    /// `(c, c, …, c)` of length `len`.
    pub fn constant(c: Scalar, len: usize) -> Self {
        ArgumentVector(vec![c; len])
    }

    /// Independent indeterminates `x_1, …, x_len`.
    pub fn symbolic(len: usize) -> Self {
        ArgumentVector((1..=len).map(|i| Scalar::var(Var::Arg(i as u16))).collect())
    }

    pub fn from_rationals(rs: impl IntoIterator<Item = Rational>) -> Self {
        ArgumentVector(rs.into_iter().map(Scalar::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x_i`, 1-indexed.
    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i - 1]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    fn require(&self, need: usize) -> Result<()> {
        if self.0.len() < need {
            return Err(Error::ArgumentVectorTooShort {
                need,
                have: self.0.len(),
            });
        }
        Ok(())
    }

    /// `((1)_{1,λ} x₁, (1)_{2,λ} x₂, …)`, first `len` entries.
    pub fn degenerate(&self, lambda: &Scalar, len: usize) -> Result<ArgumentVector> {
        self.require(len)?;
        Ok(ArgumentVector(
            (1..=len)
                .map(|j| deg_falling(&Scalar::one(), j, lambda) * self.get(j))
                .collect(),
        ))
    }
}

/// `Bel_0, …, Bel_r`.
pub fn complete_bell_all(r: usize, xs: &ArgumentVector) -> Result<Vec<Scalar>> {
    xs.require(r)?;
    let mut bel = vec![Scalar::one()];
    for n in 0..r {
        let next = (0..=n)
            .map(|i| (xs.get(i + 1) * &bel[n - i]).scale(&binomial_q(n, i)))
            .sum();
        bel.push(next);
    }
    Ok(bel)
}

/// Complete exponential Bell polynomial `Bel_r(x₁, …, x_r)`.
pub fn complete_bell(r: usize, xs: &ArgumentVector) -> Result<Scalar> {
    Ok(complete_bell_all(r, xs)?.pop().expect("nonempty"))
}

/// Partial exponential Bell polynomial `B_{n,k}(x₁, …, x_{n-k+1})`.
pub fn partial_bell(n: usize, k: usize, xs: &ArgumentVector) -> Result<Scalar> {
    if k > n {
        return Err(Error::IndexOutOfTriangle { n, k });
    }
    if n == 0 {
        return Ok(Scalar::one());
    }
    if k == 0 {
        return Ok(Scalar::zero());
    }
    let width = n - k; // only cells with m - j ≤ n - k are reachable
    xs.require(width + 1)?;
    // b[j][d] = B_{j+d, j}
    let mut b: Vec<Vec<Scalar>> = vec![std::iter::once(Scalar::one())
        .chain(std::iter::repeat_n(Scalar::zero(), width))
        .collect()];
    for j in 1..=k {
        let prev = &b[j - 1];
        let row = (0..=width)
            .map(|d| {
                let m = j + d;
                (1..=d + 1)
                    .map(|i| (xs.get(i) * &prev[d + 1 - i]).scale(&binomial_q(m - 1, i - 1)))
                    .sum()
            })
            .collect();
        b.push(row);
    }
    Ok(b[k][width].clone())
}

/// All `B_{n,k}` for `0 ≤ k ≤ n ≤ nmax`; needs `xs.len() ≥ nmax`.
pub fn partial_bell_triangle(nmax: usize, xs: &ArgumentVector) -> Result<Vec<Vec<Scalar>>> {
    xs.require(nmax)?;
    let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
    for n in 1..=nmax {
        let mut row = vec![Scalar::zero(); n + 1];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = (1..=n - k + 1)
                .map(|i| (xs.get(i) * &rows[n - i][k - 1]).scale(&binomial_q(n - 1, i - 1)))
                .sum();
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Complete degenerate Bell polynomial `Bel_n^{(λ)}(x₁, …, xₙ)`.
pub fn deg_complete_bell(n: usize, xs: &ArgumentVector, lambda: &Scalar) -> Result<Scalar> {
    complete_bell(n, &xs.degenerate(lambda, n)?)
}

/// Partial degenerate Bell polynomial `B_{n,k}^{(λ)}`.
pub fn deg_partial_bell(n: usize, k: usize, xs: &ArgumentVector, lambda: &Scalar) -> Result<Scalar> {
    if k > n {
        return Err(Error::IndexOutOfTriangle { n, k });
    }
    let len = if n == 0 || k == 0 { 0 } else { n - k + 1 };
    partial_bell(n, k, &xs.degenerate(lambda, len)?)
}

/// Degenerate Bell numbers `Bel_{0,λ}, …, Bel_{nmax,λ}`.
pub fn deg_bell_numbers(nmax: usize, lambda: &Scalar) -> Vec<Scalar> {
    partially_deg_bell_polys(nmax, &Scalar::one(), lambda)
}

pub fn deg_bell_number(n: usize, lambda: &Scalar) -> Scalar {
    deg_bell_numbers(n, lambda).pop().expect("nonempty")
}

/// `Bel_{0,λ}(x), …, Bel_{nmax,λ}(x)`.
pub fn partially_deg_bell_polys(nmax: usize, x: &Scalar, lambda: &Scalar) -> Vec<Scalar> {
    let xs = ArgumentVector::constant(x.clone(), nmax)
        .degenerate(lambda, nmax)
        .expect("length matches");
    complete_bell_all(nmax, &xs).expect("length matches")
}

pub fn partially_deg_bell_poly(n: usize, x: &Scalar, lambda: &Scalar) -> Scalar {
    partially_deg_bell_polys(n, x, lambda).pop().expect("nonempty")
}
