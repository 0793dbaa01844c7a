//! Oracles shared by the integration tests. Nothing here calls the crate's
//! recurrences; values are rebuilt from products, partitions and series.
#![allow(dead_code)]

use std::process::{Command, Output};

use degen::series::TruncatedSeries;
use degen::{Rational, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

pub fn lam() -> Scalar {
    Scalar::lambda()
}

pub fn fact(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, i| a * Rational::from(i))
}

/// `Π_{j<n} (x + s·jλ)` expanded by repeated multiplication.
pub fn product(n: usize, s: i64) -> Scalar {
    (0..n).fold(Scalar::one(), |acc, j| {
        acc * (Scalar::x() + lam().scale(&Rational::from(s * j as i64)))
    })
}

/// Coefficient of `x^k` in a polynomial in x (and λ).
pub fn x_coefficient(p: &Scalar, k: usize) -> Scalar {
    let poly = p.to_poly();
    let mut out = Scalar::zero();
    for (m, c) in poly.terms() {
        if m.exponent(degen::Var::X) as usize == k {
            let rest = m
                .factors()
                .iter()
                .filter(|(v, _)| *v != degen::Var::X)
                .fold(Scalar::from(c.clone()), |acc, (v, e)| acc * Scalar::var(*v).pow(*e));
            out = out + rest;
        }
    }
    out
}

/// Classical signed first kind from the expansion of `x(x-1)⋯(x-n+1)`.
pub fn classical_s1(n: usize, k: usize) -> Rational {
    let p = (0..n).fold(Scalar::one(), |acc, j| acc * (Scalar::x() - Scalar::int(j as i64)));
    x_coefficient(&p, k).as_rational().cloned().unwrap_or_default()
}

/// Classical second kind by inclusion-exclusion.
pub fn classical_s2(n: usize, k: usize) -> Rational {
    let mut sum = Rational::zero();
    for j in 0..=k {
        let binom = fact(k) * (fact(j) * fact(k - j)).recip().unwrap();
        let term = binom * Rational::from(j).pow(n as u32);
        sum = if (k - j).is_multiple_of(2) { sum + term } else { sum - term };
    }
    sum * fact(k).recip().unwrap()
}

/// `(1)_{m,λ}` as a polynomial in λ.
pub fn falling_one(m: usize, lambda: &Scalar) -> Scalar {
    (0..m).fold(Scalar::one(), |acc, j| acc * (Scalar::one() - lambda.scale(&Rational::from(j))))
}

/// `Σ_{m≥1} c_m t^m` truncated at `order`.
pub fn series_from(order: usize, c: impl Fn(usize) -> Scalar) -> TruncatedSeries {
    let mut coeffs = vec![Scalar::zero()];
    coeffs.extend((1..=order).map(c));
    TruncatedSeries::new(coeffs)
}

/// `n!·[t^n]` of `base^k/k!`.
pub fn kernel_value(base: &TruncatedSeries, n: usize, k: usize) -> Scalar {
    base.pow(k as u32).coeff(n).scale(&(fact(n) * fact(k).recip().unwrap()))
}

/// Integer partitions of `n` as multiplicity vectors `m[j]` = number of
/// parts equal to `j` (index 0 unused), generated in lexicographically
/// decreasing part order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, n: usize) {
        if rest == 0 {
            let mut m = vec![0; n + 1];
            for &p in parts.iter() {
                m[p] += 1;
            }
            out.push(m);
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            parts.push(p);
            go(rest - p, p, parts, out, n);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out, n);
    out
}

fn partition_term(n: usize, m: &[usize], xs: &[Scalar]) -> Scalar {
    let mut denom = Rational::one();
    let mut mono = Scalar::one();
    for (j, &kj) in m.iter().enumerate().skip(1) {
        if kj > 0 {
            denom = denom * fact(kj) * fact(j).pow(kj as u32);
            mono = mono * xs[j - 1].pow(kj as u32);
        }
    }
    mono.scale(&(fact(n) * denom.recip().unwrap()))
}

/// `Bel_n` as the multinomial sum over partitions of n.
pub fn bell_by_partitions(n: usize, xs: &[Scalar]) -> Scalar {
    partitions(n).iter().map(|m| partition_term(n, m, xs)).sum()
}

/// `B_{n,k}` as the sum over partitions of n into k parts.
pub fn partial_bell_by_partitions(n: usize, k: usize, xs: &[Scalar]) -> Scalar {
    partitions(n)
        .iter()
        .filter(|m| m.iter().sum::<usize>() == k)
        .map(|m| partition_term(n, m, xs))
        .sum()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn random_arguments(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::from(random_rational(rng))).collect()
}

/// Runs the `degen` binary.
pub fn degen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degen"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}
