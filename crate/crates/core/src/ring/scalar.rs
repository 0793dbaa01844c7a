use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, Rational, Var};

/// Coefficient domain used everywhere: an exact rational, or a polynomial
/// over the rationals.
///
/// Canonical form: the `Poly` variant always holds a non-constant
/// polynomial; constants are demoted to `Rational`. Derived equality is
/// therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(Rational),
    Poly(Polynomial),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(Rational::from(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Rational(Rational::new(p, q))
    }

    pub fn var(v: Var) -> Self {
        Scalar::Poly(Polynomial::var(v))
    }

    /// The symbolic parameter λ.
    pub fn lambda() -> Self {
        Scalar::var(Var::Lambda)
    }

    pub fn x() -> Self {
        Scalar::var(Var::X)
    }

    pub fn from_poly(p: Polynomial) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Rational(c),
            None => Scalar::Poly(p),
        }
    }

    pub fn to_poly(&self) -> Polynomial {
        match self {
            Scalar::Rational(r) => Polynomial::constant(r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Poly(_) => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Scalar::Poly(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r * c),
            Scalar::Poly(p) => Scalar::from_poly(p.scale(c)),
        }
    }

    /// Exact quotient. The divisor must be a nonzero constant unless both
    /// operands are rationals; the ring has no rational functions.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        match rhs {
            Scalar::Rational(d) => {
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.scale(&d.recip()?))
            }
            Scalar::Poly(_) => Err(Error::NonConstantDivisor),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.pow(exp)),
            Scalar::Poly(p) => Scalar::from_poly(p.pow(exp)),
        }
    }

    pub fn eval(&self, at: &BTreeMap<Var, Rational>) -> Result<Rational> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Poly(p) => p.eval(at),
        }
    }

    pub fn specialize(&self, v: Var, value: &Rational) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Poly(p) => Scalar::from_poly(p.specialize(v, value)),
        }
    }

    /// Substitutes `value` for `v`.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Scalar {
        match (self, value) {
            (Scalar::Rational(_), _) => self.clone(),
            (Scalar::Poly(p), Scalar::Rational(r)) => Scalar::from_poly(p.specialize(v, r)),
            (Scalar::Poly(p), Scalar::Poly(q)) => Scalar::from_poly(p.compose(v, q)),
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        match self {
            Scalar::Rational(_) => Vec::new(),
            Scalar::Poly(p) => p.variables(),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_poly(p)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.$method(b)),
                    (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::from_poly(a.$method(b)),
                    (a, b) => Scalar::from_poly((&a.to_poly()).$method(&b.to_poly())),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}
scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Poly(p) => Scalar::Poly(-p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => fmt::Display::fmt(r, f),
            Scalar::Poly(p) => fmt::Display::fmt(p, f),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Wire form:
//   rational                     "p/q"
//   univariate polynomial in λ   ["c0", "c1", ...]   (dense, ascending)
//   anything else                {"vars": [...], "terms": [[[e, ...], "c"], ...]}
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Rational(Rational),
    Dense(Vec<Rational>),
    Sparse {
        vars: Vec<String>,
        terms: Vec<(Vec<u32>, Rational)>,
    },
}

impl Scalar {
    fn to_repr(&self) -> Repr {
        match self {
            Scalar::Rational(r) => Repr::Rational(r.clone()),
            Scalar::Poly(p) => {
                if let Some(dense) = p.dense(Var::Lambda) {
                    return Repr::Dense(dense);
                }
                let vars = p.variables();
                let terms = p
                    .terms()
                    .map(|(m, c)| (vars.iter().map(|&v| m.exponent(v)).collect(), c.clone()))
                    .collect();
                Repr::Sparse {
                    vars: vars.into_iter().map(Var::ident).collect(),
                    terms,
                }
            }
        }
    }

    fn from_repr(repr: Repr) -> Result<Scalar> {
        match repr {
            Repr::Rational(r) => Ok(Scalar::Rational(r)),
            Repr::Dense(cs) => Ok(Scalar::from_poly(Polynomial::from_dense(Var::Lambda, &cs))),
            Repr::Sparse { vars, terms } => {
                let vars = vars
                    .iter()
                    .map(|s| Var::from_ident(s).ok_or_else(|| Error::ParseScalar(format!("unknown variable {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                let mut p = Polynomial::zero();
                for (exps, c) in terms {
                    if exps.len() != vars.len() {
                        return Err(Error::ParseScalar("exponent vector length mismatch".into()));
                    }
                    let m = Monomial::from_pairs(vars.iter().copied().zip(exps));
                    p = &p + &Polynomial::term(c, m);
                }
                Ok(Scalar::from_poly(p))
            }
        }
    }

    /// JSON text of the wire form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scalar serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Scalar> {
        serde_json::from_str(s).map_err(|e| Error::ParseScalar(e.to_string()))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        Scalar::from_repr(repr).map_err(serde::de::Error::custom)
    }
}
