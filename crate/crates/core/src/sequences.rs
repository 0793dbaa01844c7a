//! Primitive one-index sequences: factorials, binomials, the degenerate
//! falling and rising factorials, and harmonic / Hurwitz-type sums.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Rational, Scalar};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// C(n, k) by the multiplicative formula; zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) * (n - i) / (i + 1) = C(n, i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial_q(n: usize) -> Rational {
    Rational::from(factorial(n))
}

pub fn binomial_q(n: usize, k: usize) -> Rational {
    Rational::from(binomial(n, k))
}

/// `(x)_{n,λ} = x(x-λ)(x-2λ)…(x-(n-1)λ)`; empty product for n = 0.
pub fn deg_falling(x: &Scalar, n: usize, lambda: &Scalar) -> Scalar {
    (0..n).fold(Scalar::one(), |acc, i| {
        acc * (x - &lambda.scale(&Rational::from(i)))
    })
}

/// `<x>_{n,λ} = x(x+λ)(x+2λ)…(x+(n-1)λ)`; empty product for n = 0.
pub fn deg_rising(x: &Scalar, n: usize, lambda: &Scalar) -> Scalar {
    (0..n).fold(Scalar::one(), |acc, i| {
        acc * (x + &lambda.scale(&Rational::from(i)))
    })
}

/// Classical falling factorial `(x)_n`.
pub fn falling(x: &Scalar, n: usize) -> Scalar {
    deg_falling(x, n, &Scalar::one())
}

/// `H_n^{(r)} = Σ_{k=1}^{n} 1/k^r`, with `H_0^{(r)} = 0`.
pub fn harmonic(n: usize, r: u32) -> Rational {
    hurwitz(n, r, &Rational::one()).expect("no poles at x = 1")
}

/// `H_n^{(r)}(x) = Σ_{k=0}^{n-1} 1/(k+x)^r`.
pub fn hurwitz(n: usize, r: u32, x: &Rational) -> Result<Rational> {
    let mut sum = Rational::zero();
    for k in 0..n {
        let base = x + Rational::from(k);
        if base.is_zero() {
            return Err(Error::PoleAtSummand(k));
        }
        sum = sum + base.pow(r).recip()?;
    }
    Ok(sum)
}

/// An append-only list of values of a one-index family, as emitted by the
/// CLI `table` command.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceTable {
    family: String,
    params: Vec<(String, Scalar)>,
    first_index: usize,
    values: Vec<Scalar>,
}

impl SequenceTable {
    pub fn new(family: impl Into<String>, params: Vec<(String, Scalar)>) -> Self {
        SequenceTable {
            family: family.into(),
            params,
            first_index: 0,
            values: Vec::new(),
        }
    }

    /// For families that start above n = 0 (the gamma values start at 1).
    pub fn starting_at(mut self, first_index: usize) -> Self {
        self.first_index = first_index;
        self
    }

    pub fn from_values(
        family: impl Into<String>,
        params: Vec<(String, Scalar)>,
        values: impl IntoIterator<Item = Scalar>,
    ) -> Self {
        let mut t = SequenceTable::new(family, params);
        t.values.extend(values);
        t
    }

    pub fn push(&mut self, value: Scalar) {
        self.values.push(value);
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn params(&self) -> &[(String, Scalar)] {
        &self.params
    }

    pub fn first_index(&self) -> usize {
        self.first_index
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// (index, value) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (i + self.first_index, v))
    }
}

pub fn deg_falling_table(x: &Scalar, lambda: &Scalar, nmax: usize) -> SequenceTable {
    let mut t = SequenceTable::new(
        "deg-falling",
        vec![("x".into(), x.clone()), ("lambda".into(), lambda.clone())],
    );
    let mut acc = Scalar::one();
    for n in 0..=nmax {
        t.push(acc.clone());
        acc = acc * (x - &lambda.scale(&Rational::from(n)));
    }
    t
}

pub fn deg_rising_table(x: &Scalar, lambda: &Scalar, nmax: usize) -> SequenceTable {
    let mut t = SequenceTable::new(
        "deg-rising",
        vec![("x".into(), x.clone()), ("lambda".into(), lambda.clone())],
    );
    let mut acc = Scalar::one();
    for n in 0..=nmax {
        t.push(acc.clone());
        acc = acc * (x + &lambda.scale(&Rational::from(n)));
    }
    t
}

pub fn hurwitz_table(r: u32, x: &Rational, nmax: usize) -> Result<SequenceTable> {
    let mut t = SequenceTable::new(
        "hurwitz",
        vec![("r".into(), Scalar::int(r as i64)), ("x".into(), x.clone().into())],
    );
    let mut acc = Rational::zero();
    for n in 0..=nmax {
        t.push(acc.clone().into());
        let base = x + Rational::from(n);
        if n < nmax {
            if base.is_zero() {
                return Err(Error::PoleAtSummand(n));
            }
            acc = acc + base.pow(r).recip()?;
        }
    }
    Ok(t)
}

pub fn harmonic_table(r: u32, nmax: usize) -> SequenceTable {
    let t = hurwitz_table(r, &Rational::one(), nmax).expect("no poles at x = 1");
    SequenceTable::from_values("harmonic", vec![("r".into(), Scalar::int(r as i64))], t.values)
}
