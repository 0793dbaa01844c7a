use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::Rational;

/// Indeterminates the ring knows about.
///
/// `Arg(i)` are auxiliary variables standing in for symbolic Bell arguments
/// x₁, x₂, …; they sort after λ and x.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    Lambda,
    X,
    Arg(u16),
}

impl Var {
    /// Name used in serialized output.
    pub fn ident(self) -> String {
        match self {
            Var::Lambda => "lambda".into(),
            Var::X => "x".into(),
            Var::Arg(i) => format!("x_{i}"),
        }
    }

    pub fn from_ident(s: &str) -> Option<Var> {
        match s {
            "lambda" | "λ" => Some(Var::Lambda),
            "x" => Some(Var::X),
            _ => s.strip_prefix("x_")?.parse().ok().map(Var::Arg),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Lambda => f.write_str("λ"),
            Var::X => f.write_str("x"),
            Var::Arg(i) => write!(f, "x_{i}"),
        }
    }
}

/// Product of powers of distinct variables, sorted by variable, no zero
/// exponents. The empty monomial is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }
}

/// Sparse polynomial over the rationals.
///
/// The zero polynomial has no terms; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Univariate polynomial from dense ascending coefficients.
    pub fn from_dense(v: Var, coeffs: &[Rational]) -> Self {
        let mut p = Polynomial::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(v, i as u32), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    /// Maximum total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Variables that occur, in order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Dense ascending coefficients if the polynomial is univariate in `v`
    /// (or constant).
    pub fn dense(&self, v: Var) -> Option<Vec<Rational>> {
        if self.variables().iter().any(|&w| w != v) {
            return None;
        }
        let mut out = vec![Rational::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize] = c.clone();
        }
        Some(out)
    }

    /// Coefficients with respect to `v`: result\[i\] multiplies `v^i`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn div_rational(&self, c: &Rational) -> Result<Polynomial> {
        Ok(self.scale(&c.recip()?))
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(Rational::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Full evaluation; every occurring variable must be bound.
    pub fn eval(&self, at: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let val = at.get(&v).ok_or_else(|| Error::UnboundVariable(v.ident()))?;
                t = t * val.pow(e);
            }
            sum = sum + t;
        }
        Ok(sum)
    }

    /// Substitutes `value` for `v`, keeping the remaining variables.
    pub fn specialize(&self, v: Var, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                out.add_term(m.without(v), c * value.pow(e));
            }
        }
        out
    }

    /// Substitutes a polynomial for `v`.
    pub fn compose(&self, v: Var, value: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, coeff) in self.coefficients_in(v).into_iter().enumerate() {
            if !coeff.is_zero() {
                out = &out + &(&coeff * &value.pow(i as u32));
            }
        }
        out
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for &(v, e) in &m.0 {
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Human-readable form, highest total degree first: `2λ^2 - 3λ + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            fmt_monomial(m, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
