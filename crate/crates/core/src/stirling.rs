//! Classical and degenerate Stirling triangles.
//!
//! Production values come from row recurrences (O(n²) scalar operations, exact
//! for symbolic λ). The generating-function kernels in [`crate::series`] give
//! an independent extraction path, exposed here as [`gf_triangle`], and
//! [`stirling_scaling_oracle`] gives a third route for the first kind through
//! `(x)_{n,λ} = λⁿ (x/λ)_n`.
//!
//! The degenerate second kind is the exception: its values are extracted from
//! the generating function, and [`deg_stirling2_recurrence`] is the
//! cross-check.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::ring::{Polynomial, Rational, Scalar, Var};
use crate::series::{deg_exp_minus_one, deg_log, gf_build, GfFamily, TruncatedSeries};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TriangleFamily {
    /// signed first kind `S₁(n,k)`
    S1,
    /// second kind `S₂(n,k)`
    S2,
    /// unsigned first kind `S(n,k)`
    SUnsigned,
    /// degenerate first kind `S_{1,λ}(n,k)`
    S1Lambda,
    /// unsigned degenerate first kind `S_λ(n,k)`
    SLambda,
    /// degenerate second kind `S_{2,λ}(n,k)`
    S2Lambda,
}

impl TriangleFamily {
    pub const ALL: [TriangleFamily; 6] = [
        TriangleFamily::S1,
        TriangleFamily::S2,
        TriangleFamily::SUnsigned,
        TriangleFamily::S1Lambda,
        TriangleFamily::SLambda,
        TriangleFamily::S2Lambda,
    ];

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            TriangleFamily::S1Lambda | TriangleFamily::SLambda | TriangleFamily::S2Lambda
        )
    }

    /// Name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            TriangleFamily::S1 => "stirling1",
            TriangleFamily::S2 => "stirling2",
            TriangleFamily::SUnsigned => "unsigned-stirling1",
            TriangleFamily::S1Lambda => "deg-stirling1",
            TriangleFamily::SLambda => "deg-unsigned-stirling1",
            TriangleFamily::S2Lambda => "deg-stirling2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        TriangleFamily::ALL.into_iter().find(|f| f.name() == s)
    }

    fn kernel(self, k: u32) -> GfFamily {
        match self {
            TriangleFamily::S1 => GfFamily::Stirling1Kernel { k },
            TriangleFamily::S2 => GfFamily::Stirling2Kernel { k },
            TriangleFamily::SUnsigned => GfFamily::UnsignedStirling1Kernel { k },
            TriangleFamily::S1Lambda => GfFamily::DegStirling1Kernel { k },
            TriangleFamily::SLambda => GfFamily::DegUnsignedStirling1Kernel { k },
            TriangleFamily::S2Lambda => GfFamily::DegStirling2Kernel { k },
        }
    }
}

impl fmt::Display for TriangleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lower-triangular table `T[n][k]`, `0 ≤ k ≤ n ≤ nmax`. Entries above the
/// diagonal are zero and not stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Triangle {
    family: TriangleFamily,
    lambda: Option<Scalar>,
    rows: Vec<Vec<Scalar>>,
}

impl Triangle {
    fn new(family: TriangleFamily, lambda: Option<Scalar>, rows: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == n + 1));
        Triangle { family, lambda, rows }
    }

    pub fn family(&self) -> TriangleFamily {
        self.family
    }

    pub fn lambda(&self) -> Option<&Scalar> {
        self.lambda.as_ref()
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// `T[n][k]`, zero for `k > n`. Panics if `n > nmax`.
    pub fn get(&self, n: usize, k: usize) -> Scalar {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[Scalar] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// (n, k, value) in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, n: usize, k: usize, value: Scalar) -> Triangle {
        let mut t = self.clone();
        t.rows[n][k] = value;
        t
    }

    /// Row `n` as a polynomial `Σ_k T[n][k] x^k`.
    pub fn row_polynomial(&self, n: usize) -> Scalar {
        self.rows[n]
            .iter()
            .enumerate()
            .map(|(k, c)| c * &Scalar::x().pow(k as u32))
            .sum()
    }
}

fn int_triangle(nmax: usize, step: impl Fn(usize, usize, &BigInt, &BigInt) -> BigInt) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..nmax {
        let prev = &rows[n];
        let mut next = vec![BigInt::zero(); n + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            let left = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            let same = prev.get(k).cloned().unwrap_or_default();
            *slot = step(n, k, &left, &same);
        }
        rows.push(next);
    }
    rows
}

fn to_scalar_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<Scalar>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|v| Scalar::from(Rational::from(v))).collect())
        .collect()
}

/// Signed first kind, `S₁(n+1,k) = S₁(n,k-1) - n·S₁(n,k)`.
pub fn stirling1_triangle(nmax: usize) -> Triangle {
    let rows = int_triangle(nmax, |n, _, left, same| left - same * n);
    Triangle::new(TriangleFamily::S1, None, to_scalar_rows(rows))
}

/// Unsigned first kind, `S(n+1,k) = S(n,k-1) + n·S(n,k)`.
pub fn unsigned_stirling1_triangle(nmax: usize) -> Triangle {
    let rows = int_triangle(nmax, |n, _, left, same| left + same * n);
    Triangle::new(TriangleFamily::SUnsigned, None, to_scalar_rows(rows))
}

/// Second kind, `S₂(n+1,k) = S₂(n,k-1) + k·S₂(n,k)`.
pub fn stirling2_triangle(nmax: usize) -> Triangle {
    let rows = int_triangle(nmax, |_, k, left, same| left + same * k);
    Triangle::new(TriangleFamily::S2, None, to_scalar_rows(rows))
}

fn scalar_triangle(
    nmax: usize,
    kmax: usize,
    step: impl Fn(usize, usize, &Scalar, &Scalar) -> Scalar,
) -> Vec<Vec<Scalar>> {
    let mut rows = vec![vec![Scalar::one()]];
    for n in 0..nmax {
        let width = (n + 2).min(kmax + 1);
        let prev = &rows[n];
        let next = (0..width)
            .map(|k| {
                let zero = Scalar::zero();
                let left = if k > 0 { &prev[k - 1] } else { &zero };
                let same = prev.get(k).unwrap_or(&zero);
                step(n, k, left, same)
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// `S_{1,λ}(n+1,k) = S_{1,λ}(n,k-1) - nλ·S_{1,λ}(n,k)`, from
/// `(x)_{n+1,λ} = (x - nλ)(x)_{n,λ}`.
pub fn deg_stirling1_triangle(nmax: usize, lambda: &Scalar) -> Triangle {
    let rows = scalar_triangle(nmax, nmax, |n, _, left, same| {
        left - &(same * &lambda.scale(&Rational::from(n)))
    });
    Triangle::new(TriangleFamily::S1Lambda, Some(lambda.clone()), rows)
}

/// Columns `0..=kmax` of the degenerate first kind for rows up to `nmax`.
/// Row `n` holds `min(n, kmax) + 1` entries.
pub fn deg_stirling1_columns(nmax: usize, kmax: usize, lambda: &Scalar) -> Vec<Vec<Scalar>> {
    scalar_triangle(nmax, kmax, |n, _, left, same| {
        left - &(same * &lambda.scale(&Rational::from(n)))
    })
}

/// `S_λ(n+1,k) = S_λ(n,k-1) + nλ·S_λ(n,k)`.
pub fn deg_unsigned_stirling1_triangle(nmax: usize, lambda: &Scalar) -> Triangle {
    let rows = scalar_triangle(nmax, nmax, |n, _, left, same| {
        left + &(same * &lambda.scale(&Rational::from(n)))
    });
    Triangle::new(TriangleFamily::SLambda, Some(lambda.clone()), rows)
}

/// `S_{2,λ}(n,k) = n!·[tⁿ] ((1+λt)^{1/λ} - 1)^k / k!`.
pub fn deg_stirling2_triangle(nmax: usize, lambda: &Scalar) -> Triangle {
    let base = deg_exp_minus_one(lambda, nmax);
    Triangle::new(
        TriangleFamily::S2Lambda,
        Some(lambda.clone()),
        kernel_rows(&base, nmax),
    )
}

/// Recurrence `S_{2,λ}(n+1,k) = S_{2,λ}(n,k-1) + (k - nλ)·S_{2,λ}(n,k)`.
pub fn deg_stirling2_recurrence(nmax: usize, lambda: &Scalar) -> Triangle {
    let rows = scalar_triangle(nmax, nmax, |n, k, left, same| {
        let factor = &Scalar::int(k as i64) - &lambda.scale(&Rational::from(n));
        left + &(same * &factor)
    });
    Triangle::new(TriangleFamily::S2Lambda, Some(lambda.clone()), rows)
}

// T[n][k] = n!·[tⁿ] base^k / k!, base with zero constant term
fn kernel_rows(base: &TruncatedSeries, nmax: usize) -> Vec<Vec<Scalar>> {
    let powers = base.powers(nmax);
    let mut fact = vec![Rational::one()];
    for i in 1..=nmax {
        fact.push(&fact[i - 1] * Rational::from(i));
    }
    (0..=nmax)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let c = powers[k].coeff(n);
                    c.scale(&fact[n].checked_div(&fact[k]).expect("k! > 0"))
                })
                .collect()
        })
        .collect()
}

/// The triangle of `family` read off its generating-function kernel. Used as
/// the independent oracle for the recurrences.
pub fn gf_triangle(family: TriangleFamily, nmax: usize, lambda: &Scalar) -> Result<Triangle> {
    let rows = match family {
        TriangleFamily::S1Lambda => kernel_rows(&deg_log(lambda, nmax), nmax),
        TriangleFamily::SLambda => kernel_rows(&deg_log(&-lambda, nmax), nmax),
        TriangleFamily::S2Lambda => kernel_rows(&deg_exp_minus_one(lambda, nmax), nmax),
        classical => {
            // k = 1 kernel is the base series itself
            let base = gf_build(&classical.kernel(1), lambda, nmax)?;
            kernel_rows(&base, nmax)
        }
    };
    let lambda = family.is_degenerate().then(|| lambda.clone());
    Ok(Triangle::new(family, lambda, rows))
}

/// Builds the production triangle of any family; `lambda` is ignored for
/// the classical ones.
pub fn build_triangle(family: TriangleFamily, nmax: usize, lambda: &Scalar) -> Triangle {
    match family {
        TriangleFamily::S1 => stirling1_triangle(nmax),
        TriangleFamily::S2 => stirling2_triangle(nmax),
        TriangleFamily::SUnsigned => unsigned_stirling1_triangle(nmax),
        TriangleFamily::S1Lambda => deg_stirling1_triangle(nmax, lambda),
        TriangleFamily::SLambda => deg_unsigned_stirling1_triangle(nmax, lambda),
        TriangleFamily::S2Lambda => deg_stirling2_triangle(nmax, lambda),
    }
}

fn lambda_power(e: usize) -> Polynomial {
    Polynomial::var(Var::Lambda).pow(e as u32)
}

/// `λ^{n-k}·S₁(n,k)` with the classical signed value.
pub fn stirling_scaling_oracle(n: usize, k: usize) -> Polynomial {
    assert!(k <= n, "k ≤ n required");
    let s1 = stirling1_triangle(n).get(n, k);
    lambda_power(n - k).scale(s1.as_rational().expect("integer"))
}

/// `λ^{n-k}·S(n,k)` with the classical unsigned value.
pub fn unsigned_scaling_oracle(n: usize, k: usize) -> Polynomial {
    assert!(k <= n, "k ≤ n required");
    let s = unsigned_stirling1_triangle(n).get(n, k);
    lambda_power(n - k).scale(s.as_rational().expect("integer"))
}

type CacheKey = (TriangleFamily, Option<Scalar>, usize);

/// Memoizes triangles per (family, λ, nmax). Symbolic λ is its own key.
#[derive(Default)]
pub struct TriangleCache {
    inner: Mutex<HashMap<CacheKey, Arc<Triangle>>>,
}

impl TriangleCache {
    pub fn new() -> Self {
        TriangleCache::default()
    }

    pub fn get(&self, family: TriangleFamily, nmax: usize, lambda: &Scalar) -> Arc<Triangle> {
        let key = (family, family.is_degenerate().then(|| lambda.clone()), nmax);
        if let Some(t) = self.inner.lock().expect("cache lock").get(&key) {
            return Arc::clone(t);
        }
        // built outside the lock; a racing builder produces an identical value
        let t = Arc::new(build_triangle(family, nmax, lambda));
        Arc::clone(self.inner.lock().expect("cache lock").entry(key).or_insert(t))
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
