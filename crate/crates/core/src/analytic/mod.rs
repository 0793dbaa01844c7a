//! Degenerate Euler polynomials, derangement numbers (classical and
//! degenerate) and the degenerate gamma function at integer arguments.
//!
//! `d_{n,λ}` and `Γ_λ(k)` are rational functions of λ, so they are only
//! computed at concrete rational λ. Passing λ = 0 to the derangement
//! functions selects the classical numbers.

pub mod quadrature;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Rational, Scalar, Var};
use crate::sequences::{deg_falling, deg_rising, factorial, factorial_q};
use crate::series::{gf_build, GfFamily};

pub use quadrature::{deg_gamma_pdf, gamma_quadrature_oracle};

/// `E_{n,λ}(x)` for `n = 0..=nmax`, as polynomials in x (and λ when
/// symbolic).
#[derive(Clone, Debug, PartialEq)]
pub struct EulerTable {
    lambda: Scalar,
    rows: Vec<Scalar>,
}

impl EulerTable {
    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// `E_{n,λ}(x)`.
    pub fn polynomial(&self, n: usize) -> &Scalar {
        &self.rows[n]
    }

    pub fn polynomials(&self) -> &[Scalar] {
        &self.rows
    }

    /// `E_{n,λ}(value)`.
    pub fn at(&self, n: usize, value: &Rational) -> Scalar {
        self.rows[n].specialize(Var::X, value)
    }

    /// Degenerate Euler number `E_{n,λ} = E_{n,λ}(0)`.
    pub fn number(&self, n: usize) -> Scalar {
        self.at(n, &Rational::zero())
    }
}

/// Coefficients of `2/((1+λt)^{1/λ}+1)·(1+λt)^{x/λ}` with symbolic x.
pub fn deg_euler_polys(nmax: usize, lambda: &Scalar) -> EulerTable {
    let gf = gf_build(&GfFamily::DegEuler { x: Scalar::x() }, lambda, nmax)
        .expect("constant term of the divisor is 2");
    EulerTable {
        lambda: lambda.clone(),
        rows: gf.egf_values(),
    }
}

/// Classical Euler polynomials from `2e^{xt}/(e^t+1)`.
pub fn euler_polys(nmax: usize) -> Vec<Scalar> {
    gf_build(&GfFamily::Euler { x: Scalar::x() }, &Scalar::zero(), nmax)
        .expect("constant term of the divisor is 2")
        .egf_values()
}

/// `d_n` by `d_n = n d_{n-1} + (-1)^n`, `d_0 = 1`.
pub fn derangement(n: usize) -> BigInt {
    derangements(n).pop().expect("nonempty")
}

pub fn derangements(nmax: usize) -> Vec<BigInt> {
    let mut d = vec![BigInt::one()];
    for n in 1..=nmax {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let next = &d[n - 1] * n + sign;
        d.push(next);
    }
    d
}

/// `d_n = n! Σ_{m=0}^{n} (-1)^m/m!`.
pub fn derangement_closed(n: usize) -> Rational {
    let sum = (0..=n).fold(Rational::zero(), |acc, m| {
        let term = factorial_q(m).recip().expect("m! > 0");
        if m % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    sum * factorial_q(n)
}

fn unit_interval(lambda: &Rational) -> Result<()> {
    if lambda.is_negative() || *lambda >= Rational::one() {
        return Err(Error::LambdaOutOfRange {
            lambda: lambda.to_string(),
            range: "[0, 1)".into(),
        });
    }
    Ok(())
}

fn one_minus(lambda: &Rational) -> Rational {
    Rational::one() - lambda
}

fn rising_one(n: usize, lambda: &Rational) -> Rational {
    deg_rising(&Scalar::one(), n, &Scalar::from(lambda.clone()))
        .as_rational()
        .expect("rational arguments")
        .clone()
}

/// `(1)_{n,λ}` at rational λ.
pub fn falling_one(n: usize, lambda: &Rational) -> Rational {
    deg_falling(&Scalar::one(), n, &Scalar::from(lambda.clone()))
        .as_rational()
        .expect("rational arguments")
        .clone()
}

/// Degenerate derangement numbers at a fixed λ ∈ [0, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct DerangementTable {
    lambda: Rational,
    values: Vec<Rational>,
}

impl DerangementTable {
    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }
}

/// `d_{0,λ} = 1/(1-λ)`, `(1-λ)d_{n,λ} = (-1)^n <1>_{n,λ} + n d_{n-1,λ}`.
pub fn deg_derangement(nmax: usize, lambda: &Rational) -> Result<DerangementTable> {
    unit_interval(lambda)?;
    let inv = one_minus(lambda).recip()?;
    let mut values = vec![inv.clone()];
    let mut rising = Rational::one();
    for n in 1..=nmax {
        rising = rising * (Rational::one() + lambda * Rational::from(n - 1));
        let signed = if n % 2 == 0 { rising.clone() } else { -&rising };
        let next = (signed + Rational::from(n) * &values[n - 1]) * &inv;
        values.push(next);
    }
    Ok(DerangementTable {
        lambda: lambda.clone(),
        values,
    })
}

/// `d_{n,λ} = n! Σ_{l=0}^{n} (1/(1-λ))^{n-l+1} (-1)^l/l! <1>_{l,λ}`.
pub fn deg_derangement_closed(n: usize, lambda: &Rational) -> Result<Rational> {
    unit_interval(lambda)?;
    let inv = one_minus(lambda).recip()?;
    let mut sum = Rational::zero();
    for l in 0..=n {
        let mut term = inv.pow((n - l + 1) as u32) * rising_one(l, lambda)
            * factorial_q(l).recip()?;
        if l % 2 == 1 {
            term = -term;
        }
        sum = sum + term;
    }
    Ok(sum * factorial_q(n))
}

/// `d_{n,λ}` read off `(1+λt)^{-1/λ}/(1-λ-t)`.
pub fn deg_derangement_gf(nmax: usize, lambda: &Rational) -> Result<Vec<Rational>> {
    unit_interval(lambda)?;
    let gf = gf_build(&GfFamily::DegDerangement, &Scalar::from(lambda.clone()), nmax)?;
    Ok(gf
        .egf_values()
        .into_iter()
        .map(|v| v.as_rational().expect("rational lambda").clone())
        .collect())
}

/// `Γ_λ(k)` at a positive integer.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaValue {
    pub lambda: Rational,
    pub k: usize,
    pub value: Rational,
}

// Π_{j=from}^{to} (1 - jλ)
fn shifted_product(from: usize, to: usize, lambda: &Rational) -> Rational {
    (from..=to).fold(Rational::one(), |acc, j| {
        acc * (Rational::one() - lambda * Rational::from(j))
    })
}

fn gamma_domain(k: usize, lambda: &Rational) -> Result<()> {
    // 0 < λ < 1/k  ⇔  λ > 0 and kλ < 1
    if !lambda.is_positive() || lambda * Rational::from(k) >= Rational::one() {
        return Err(Error::LambdaOutOfRange {
            lambda: lambda.to_string(),
            range: format!("(0, 1/{k})"),
        });
    }
    Ok(())
}

/// `Γ_λ(k) = (k-1)!/((1-λ)(1-2λ)⋯(1-kλ))` for `0 < λ < 1/k`.
pub fn deg_gamma(k: usize, lambda: &Rational) -> Result<GammaValue> {
    if k == 0 {
        return Err(Error::NonConvergent("Γ_λ(0) diverges".into()));
    }
    gamma_domain(k, lambda)?;
    let value = Rational::from(factorial(k - 1)).checked_div(&shifted_product(1, k, lambda))?;
    Ok(GammaValue {
        lambda: lambda.clone(),
        k,
        value,
    })
}

/// `E[X^k] = Γ_λ(k+1)/Γ_λ(1) = k!/((1-2λ)⋯(1-(k+1)λ))` for the degenerate
/// gamma variable with parameters 1, 1; needs `0 < λ < 1/(k+1)`.
pub fn deg_gamma_moment(k: usize, lambda: &Rational) -> Result<Rational> {
    gamma_domain(k + 1, lambda)?;
    factorial_q(k).checked_div(&shifted_product(2, k + 1, lambda))
}
