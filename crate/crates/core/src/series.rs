//! Truncated formal power series in `t` over [`Scalar`]s, and the generating
//! functions of every family in the crate.
//!
//! A series of order `N` stores the coefficients of `t^0 … t^N`. Binary
//! operations truncate to the smaller operand order, so nothing is ever read
//! past what was computed. Coefficient extraction in the exponential
//! convention (`a_n = n!·[t^n]`) is [`TruncatedSeries::coeff_factorial`].
//!
//! Generating functions containing `(1+λt)^{x/λ}` are built coefficientwise
//! from the degenerate falling factorial rather than as `exp(x/λ·log(1+λt))`,
//! so they stay inside the polynomial ring when λ is symbolic.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{Rational, Scalar};
use crate::sequences::factorial_q;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    /// Series with the given coefficients of `t^0, t^1, …`; order is
    /// `coeffs.len() - 1`. An empty vector yields the zero series of order 0.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(vec![Scalar::zero(); order + 1])
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(Scalar::one(), order)
    }

    /// `c·t^k`, truncated to `order`.
    pub fn monomial(c: Scalar, k: usize, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `Σ values[n]·t^n/n!`.
    pub fn from_egf(values: &[Scalar]) -> Self {
        TruncatedSeries::new(
            values
                .iter()
                .enumerate()
                .map(|(n, v)| v.scale(&factorial_q(n).recip().expect("n! > 0")))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `[t^n]`; zero beyond the stored order is NOT assumed, use
    /// [`TruncatedSeries::get`] for checked access.
    pub fn coeff(&self, n: usize) -> &Scalar {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Result<&Scalar> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.order(),
        })
    }

    /// `n!·[t^n]`.
    pub fn coeff_factorial(&self, n: usize) -> Result<Scalar> {
        Ok(self.get(n)?.scale(&factorial_q(n)))
    }

    /// All `n!·[t^n]` for n = 0..=order.
    pub fn egf_values(&self) -> Vec<Scalar> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&factorial_q(n)))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Scalar::zero());
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new((0..=order).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect())
    }

    /// Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![Scalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TruncatedSeries::new(out)
    }

    fn unit_constant(&self) -> Result<Rational> {
        match &self.coeffs[0] {
            Scalar::Rational(r) if !r.is_zero() => Ok(r.clone()),
            _ => Err(Error::NonUnitConstantTerm),
        }
    }

    /// Quotient `self / rhs`; the constant term of `rhs` must be a nonzero
    /// rational.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let inv0 = rhs.unit_constant()?.recip()?;
        let order = self.order().min(rhs.order());
        let mut q: Vec<Scalar> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..=n {
                if !rhs.coeffs[i].is_zero() {
                    acc = acc - &q[n - i] * &rhs.coeffs[i];
                }
            }
            q.push(acc.scale(&inv0));
        }
        Ok(TruncatedSeries::new(q))
    }

    /// `exp(self)`, requires a zero constant term. Uses `n f_n = Σ k a_k f_{n-k}`
    /// from `f' = a' f`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm("exp needs a zero constant term"));
        }
        let order = self.order();
        let mut f = vec![Scalar::one()];
        for n in 1..=order {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc + (&self.coeffs[k] * &f[n - k]).scale(&Rational::from(k));
                }
            }
            f.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(TruncatedSeries::new(f))
    }

    /// `log(self)`, requires constant term 1. Uses `a g' = a'`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm("log needs constant term 1"));
        }
        let order = self.order();
        let mut g = vec![Scalar::zero()];
        for n in 1..=order {
            let mut acc = Scalar::zero();
            for k in 1..n {
                if !self.coeffs[n - k].is_zero() {
                    acc = acc + (&g[k] * &self.coeffs[n - k]).scale(&Rational::from(k));
                }
            }
            g.push(&self.coeffs[n] - &acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(TruncatedSeries::new(g))
    }

    /// `self^k` by binary exponentiation; valid for any constant term.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TruncatedSeries::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^0, self^1, …, self^kmax` by successive multiplication.
    pub fn powers(&self, kmax: usize) -> Vec<Self> {
        let mut out = vec![TruncatedSeries::one(self.order())];
        for _ in 0..kmax {
            let next = out.last().expect("nonempty").mul(self);
            out.push(next);
        }
        out
    }

    /// Substitute a value for a variable in every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(f).collect())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.map_coeffs(|a| -a)
    }
}

/// `(1+λt)^{x/λ} = Σ (x)_{k,λ} t^k/k!`, from the falling factorial.
pub fn gf_deg_exponential(x: &Scalar, lambda: &Scalar, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut ff = Scalar::one();
    for k in 0..=order {
        coeffs.push(ff.scale(&factorial_q(k).recip().expect("k! > 0")));
        ff = ff * (x - &lambda.scale(&Rational::from(k)));
    }
    TruncatedSeries::new(coeffs)
}

/// Generating functions known to [`gf_build`].
///
/// Kernel families carry the column index `k` and produce
/// `(…)^k / k!`, whose `n!·[t^n]` coefficient is the triangle entry `T[n][k]`.
#[derive(Clone, Debug, PartialEq)]
pub enum GfFamily {
    /// `(1+λt)^{x/λ}`
    DegExponential { x: Scalar },
    /// `(log(1+t))^k / k!`
    Stirling1Kernel { k: u32 },
    /// `(log(1/(1-t)))^k / k!`
    UnsignedStirling1Kernel { k: u32 },
    /// `(e^t - 1)^k / k!`
    Stirling2Kernel { k: u32 },
    /// `(log (1+λt)^{1/λ})^k / k!`
    DegStirling1Kernel { k: u32 },
    /// `(log (1-λt)^{-1/λ})^k / k!`
    DegUnsignedStirling1Kernel { k: u32 },
    /// `((1+λt)^{1/λ} - 1)^k / k!`
    DegStirling2Kernel { k: u32 },
    /// `2/((1+λt)^{1/λ}+1) · (1+λt)^{x/λ}`
    DegEuler { x: Scalar },
    /// `2/(e^t+1) · e^{xt}`
    Euler { x: Scalar },
    /// `exp((1+λt)^{1/λ} - 1)`
    DegBell,
    /// `exp(x((1+λt)^{1/λ} - 1))`
    PartiallyDegBell { x: Scalar },
    /// `e^{-t}/(1-t)`
    Derangement,
    /// `(1+λt)^{-1/λ}/(1-λ-t)`, rational λ ≠ 1 only
    DegDerangement,
}

impl GfFamily {
    pub fn uses_lambda(&self) -> bool {
        !matches!(
            self,
            GfFamily::Stirling1Kernel { .. }
                | GfFamily::UnsignedStirling1Kernel { .. }
                | GfFamily::Stirling2Kernel { .. }
                | GfFamily::Euler { .. }
                | GfFamily::Derangement
        )
    }
}

fn t_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(Scalar::one(), 1, order)
}

fn kernel(base: &TruncatedSeries, k: u32) -> TruncatedSeries {
    base.pow(k).scale_rational(&factorial_q(k as usize).recip().expect("k! > 0"))
}

/// `(1+λt)^{1/λ} - 1`
pub fn deg_exp_minus_one(lambda: &Scalar, order: usize) -> TruncatedSeries {
    &gf_deg_exponential(&Scalar::one(), lambda, order) - &TruncatedSeries::one(order)
}

/// `log (1+λt)^{1/λ} = (1/λ) log(1+λt)`
pub fn deg_log(lambda: &Scalar, order: usize) -> TruncatedSeries {
    gf_deg_exponential(&Scalar::one(), lambda, order)
        .log()
        .expect("constant term is 1")
}

/// Builds the generating function of `family` at parameter `lambda` to
/// order `order`.
pub fn gf_build(family: &GfFamily, lambda: &Scalar, order: usize) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(order);
    let t = t_series(order);
    let series = match family {
        GfFamily::DegExponential { x } => gf_deg_exponential(x, lambda, order),
        GfFamily::Stirling1Kernel { k } => kernel(&(&one + &t).log()?, *k),
        GfFamily::UnsignedStirling1Kernel { k } => kernel(&-&(&one - &t).log()?, *k),
        GfFamily::Stirling2Kernel { k } => kernel(&(&t.exp()? - &one), *k),
        GfFamily::DegStirling1Kernel { k } => kernel(&deg_log(lambda, order), *k),
        GfFamily::DegUnsignedStirling1Kernel { k } => {
            // (1-λt)^{-1/λ} is the degenerate exponential at parameter -λ
            kernel(&deg_log(&-lambda, order), *k)
        }
        GfFamily::DegStirling2Kernel { k } => kernel(&deg_exp_minus_one(lambda, order), *k),
        GfFamily::DegEuler { x } => {
            let e = gf_deg_exponential(&Scalar::one(), lambda, order);
            let two = TruncatedSeries::constant(Scalar::int(2), order);
            two.div(&(&e + &one))?.mul(&gf_deg_exponential(x, lambda, order))
        }
        GfFamily::Euler { x } => {
            let two = TruncatedSeries::constant(Scalar::int(2), order);
            let et = t.exp()?;
            let ext = t.scale(x).exp()?;
            two.div(&(&et + &one))?.mul(&ext)
        }
        GfFamily::DegBell => deg_exp_minus_one(lambda, order).exp()?,
        GfFamily::PartiallyDegBell { x } => deg_exp_minus_one(lambda, order).scale(x).exp()?,
        GfFamily::Derangement => (-&t).exp()?.div(&(&one - &t))?,
        GfFamily::DegDerangement => {
            let l = lambda
                .as_rational()
                .ok_or(Error::SymbolicLambdaUnsupported("deg-derangement"))?;
            if l.is_one() {
                return Err(Error::LambdaOutOfRange {
                    lambda: l.to_string(),
                    range: "lambda != 1".into(),
                });
            }
            let denom = &TruncatedSeries::constant(Scalar::from(Rational::one() - l), order) - &t;
            gf_deg_exponential(&Scalar::int(-1), lambda, order).div(&denom)?
        }
    };
    Ok(series)
}
