//! Executable identity checks and the suite runner.
//!
//! Each check compares two independently computed sides exactly (or, for
//! the quadrature comparison, to a relative tolerance) and records the
//! outcome as an [`IdentityCheck`]. [`run_suite`] evaluates a
//! [`SuiteConfig`] in parallel and returns a [`Report`] whose order and JSON
//! text depend only on the configuration.
//!
//! ```
//! use degen::verify::{run_suite, CheckId, SuiteConfig};
//!
//! let config = SuiteConfig::only(&[CheckId::Sign]).with_nmax(6);
//! let report = run_suite(&config).unwrap();
//! assert!(report.passed());
//! assert!(!report.checks.is_empty());
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analytic::{
    deg_derangement, deg_derangement_closed, deg_derangement_gf, deg_euler_polys, deg_gamma,
    deg_gamma_moment, derangement, derangement_closed, derangements, euler_polys, falling_one,
    gamma_quadrature_oracle,
};
use crate::bell::{
    complete_bell_all, deg_bell_numbers, deg_complete_bell, deg_partial_bell, partial_bell_triangle,
    partially_deg_bell_polys, ArgumentVector,
};
use crate::error::{Error, Result};
use crate::ring::{Rational, Scalar, Var};
use crate::sequences::{binomial_q, deg_falling, deg_rising, factorial_q, harmonic};
use crate::series::{gf_build, GfFamily};
use crate::stirling::{
    deg_stirling1_columns, deg_stirling2_recurrence, gf_triangle, stirling_scaling_oracle,
    unsigned_scaling_oracle, Triangle, TriangleCache, TriangleFamily,
};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum CheckId {
    #[serde(rename = "T1")]
    Theorem1,
    #[serde(rename = "T2")]
    Theorem2,
    #[serde(rename = "T3")]
    Theorem3,
    #[serde(rename = "T4-RHS")]
    Theorem4Rhs,
    #[serde(rename = "T4-PARTIAL")]
    Theorem4Partial,
    #[serde(rename = "T5")]
    Theorem5,
    #[serde(rename = "SIGN")]
    Sign,
    #[serde(rename = "GF-XCHK")]
    GfCrossCheck,
    #[serde(rename = "BELL-SUM")]
    BellSum,
    #[serde(rename = "DERANGE-REC2")]
    DerangementRec2,
    #[serde(rename = "GAMMA-REC")]
    GammaRec,
    #[serde(rename = "MOMENT-QUAD")]
    MomentQuad,
    #[serde(rename = "REFLECT")]
    Reflect,
    #[serde(rename = "SCALING")]
    Scaling,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::Theorem1,
        CheckId::Theorem2,
        CheckId::Theorem3,
        CheckId::Theorem4Rhs,
        CheckId::Theorem4Partial,
        CheckId::Theorem5,
        CheckId::Sign,
        CheckId::GfCrossCheck,
        CheckId::BellSum,
        CheckId::DerangementRec2,
        CheckId::GammaRec,
        CheckId::MomentQuad,
        CheckId::Reflect,
        CheckId::Scaling,
    ];

    /// Identifier used in reports.
    pub fn code(self) -> &'static str {
        match self {
            CheckId::Theorem1 => "T1",
            CheckId::Theorem2 => "T2",
            CheckId::Theorem3 => "T3",
            CheckId::Theorem4Rhs => "T4-RHS",
            CheckId::Theorem4Partial => "T4-PARTIAL",
            CheckId::Theorem5 => "T5",
            CheckId::Sign => "SIGN",
            CheckId::GfCrossCheck => "GF-XCHK",
            CheckId::BellSum => "BELL-SUM",
            CheckId::DerangementRec2 => "DERANGE-REC2",
            CheckId::GammaRec => "GAMMA-REC",
            CheckId::MomentQuad => "MOMENT-QUAD",
            CheckId::Reflect => "REFLECT",
            CheckId::Scaling => "SCALING",
        }
    }

    /// Suite name selecting this check on the command line.
    pub fn suite_name(self) -> &'static str {
        match self {
            CheckId::Theorem1 => "theorem1",
            CheckId::Theorem2 => "theorem2",
            CheckId::Theorem3 => "theorem3",
            CheckId::Theorem4Rhs => "theorem4-rhs",
            CheckId::Theorem4Partial => "theorem4-partial",
            CheckId::Theorem5 => "theorem5",
            CheckId::Sign => "sign",
            CheckId::GfCrossCheck => "gf-xchk",
            CheckId::BellSum => "bell-sum",
            CheckId::DerangementRec2 => "derange-rec2",
            CheckId::GammaRec => "gamma-rec",
            CheckId::MomentQuad => "moment-quad",
            CheckId::Reflect => "reflect",
            CheckId::Scaling => "scaling",
        }
    }

    /// Parses a suite name. `all` and `theorem4` select several checks.
    pub fn parse_suite(name: &str) -> Option<Vec<CheckId>> {
        match name {
            "all" => Some(CheckId::ALL.to_vec()),
            "theorem4" => Some(vec![CheckId::Theorem4Rhs, CheckId::Theorem4Partial]),
            _ => CheckId::ALL
                .into_iter()
                .find(|c| c.suite_name() == name || c.code() == name)
                .map(|c| vec![c]),
        }
    }

    fn uses_derangements(self) -> bool {
        matches!(
            self,
            CheckId::Theorem4Rhs
                | CheckId::Theorem4Partial
                | CheckId::Theorem5
                | CheckId::DerangementRec2
                | CheckId::GfCrossCheck
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Diagnostic,
}

/// One side of a comparison.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Exact(Scalar),
    Float(f64),
    Error { error: String, message: String },
}

impl From<&Error> for Witness {
    fn from(e: &Error) -> Self {
        Witness::Error {
            error: e.name().to_string(),
            message: e.to_string(),
        }
    }
}

/// The evaluation of one identity at one parameter point.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct IdentityCheck {
    pub id: CheckId,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub lhs: Option<Witness>,
    pub rhs: Option<Witness>,
    /// Only for the partial-sum diagnostic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_sums: Option<Vec<f64>>,
}

impl IdentityCheck {
    fn exact(id: CheckId, params: BTreeMap<String, Value>, lhs: Scalar, rhs: Scalar) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        IdentityCheck {
            id,
            params,
            status,
            lhs: Some(Witness::Exact(lhs)),
            rhs: Some(Witness::Exact(rhs)),
            partial_sums: None,
        }
    }

    fn error(id: CheckId, params: BTreeMap<String, Value>, e: &Error) -> Self {
        IdentityCheck {
            id,
            params,
            status: Status::Fail,
            lhs: Some(e.into()),
            rhs: None,
            partial_sums: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// Value taken by λ in a check: the indeterminate, or one rational.
#[derive(Clone, PartialEq, Debug)]
pub enum LambdaMode {
    Symbolic,
    Rational(Rational),
}

impl LambdaMode {
    pub fn scalar(&self) -> Scalar {
        match self {
            LambdaMode::Symbolic => Scalar::lambda(),
            LambdaMode::Rational(r) => Scalar::from(r.clone()),
        }
    }

    fn label(&self) -> String {
        match self {
            LambdaMode::Symbolic => "sym".into(),
            LambdaMode::Rational(r) => r.to_string(),
        }
    }

    fn mode(&self) -> &'static str {
        match self {
            LambdaMode::Symbolic => "symbolic",
            LambdaMode::Rational(_) => "rational-list",
        }
    }

    fn params(&self) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("lambda".to_string(), json!(self.label())),
            ("lambda_mode".to_string(), json!(self.mode())),
        ])
    }
}

fn rational_params(lambda: &Rational) -> BTreeMap<String, Value> {
    LambdaMode::Rational(lambda.clone()).params()
}

/// Test hook: adds 1 to `T[n][k]` of one triangle family wherever the suite
/// reads it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Corruption {
    pub family: TriangleFamily,
    pub n: usize,
    pub k: usize,
}

/// Triangle provider shared by the checks, with the corruption hook applied.
#[derive(Default)]
pub struct Triangles {
    cache: TriangleCache,
    corruption: Option<Corruption>,
}

impl Triangles {
    pub fn new(corruption: Option<Corruption>) -> Self {
        Triangles {
            cache: TriangleCache::new(),
            corruption,
        }
    }

    pub fn get(&self, family: TriangleFamily, nmax: usize, lambda: &Scalar) -> Arc<Triangle> {
        let t = self.cache.get(family, nmax, lambda);
        match self.corruption {
            Some(c) if c.family == family && c.n <= nmax && c.k <= c.n => {
                let bad = t.get(c.n, c.k) + Scalar::one();
                Arc::new(t.with_entry(c.n, c.k, bad))
            }
            _ => t,
        }
    }
}

fn poly_in_x(coeffs: impl IntoIterator<Item = Scalar>) -> Scalar {
    coeffs
        .into_iter()
        .enumerate()
        .map(|(k, c)| c * Scalar::x().pow(k as u32))
        .sum()
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

// ---------------------------------------------------------------------------
// individual checks

/// `E_{n,λ} + E_{n,λ}(m) = 2 Σ_k Σ_{l<m} (-1)^l S_{1,λ}(n,k) l^k` with
/// `0^0 = 1`, for `n ≤ nmax` and each odd `m`.
pub fn check_theorem1(nmax: usize, ms: &[u64], lambda: &LambdaMode) -> Result<Vec<IdentityCheck>> {
    theorem1(&Triangles::default(), nmax, ms, lambda)
}

fn theorem1(src: &Triangles, nmax: usize, ms: &[u64], lambda: &LambdaMode) -> Result<Vec<IdentityCheck>> {
    if let Some(&m) = ms.iter().find(|&&m| m % 2 == 0) {
        return Err(Error::EvenM(m));
    }
    let lam = lambda.scalar();
    let euler = deg_euler_polys(nmax, &lam);
    let s1 = src.get(TriangleFamily::S1Lambda, nmax, &lam);
    let mut out = Vec::new();
    for n in 0..=nmax {
        for &m in ms {
            // Σ_{l<m} (-1)^l l^k, one entry per k
            let alt: Vec<Rational> = (0..=n)
                .map(|k| {
                    (0..m)
                        .map(|l| sign(l as usize) * Rational::from(l).pow(k as u32))
                        .fold(Rational::zero(), |a, b| a + b)
                })
                .collect();
            let lhs = euler.number(n) + euler.at(n, &Rational::from(m));
            let rhs: Scalar = (0..=n).map(|k| s1.get(n, k).scale(&alt[k])).sum();
            out.push(
                IdentityCheck::exact(CheckId::Theorem1, lambda.params(), lhs, rhs.scale(&Rational::from(2)))
                    .with("n", n)
                    .with("m", m),
            );
        }
    }
    Ok(out)
}

/// `S_λ(n+1,r+1) = (n!/r!) λ^{n-r} Bel_r(H_n^{(1)}, -1!·H_n^{(2)}, …)` for
/// `0 ≤ r ≤ n ≤ nmax`.
pub fn check_theorem2(nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    theorem2(&Triangles::default(), nmax, lambda)
}

fn theorem2(src: &Triangles, nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    let lam = lambda.scalar();
    let s = src.get(TriangleFamily::SLambda, nmax + 1, &lam);
    let mut out = Vec::new();
    for n in 0..=nmax {
        let args = ArgumentVector::from_rationals(
            (1..=n).map(|j| sign(j - 1) * factorial_q(j - 1) * harmonic(n, j as u32)),
        );
        let bel = complete_bell_all(n, &args).expect("n arguments supplied");
        for (r, b) in bel.iter().enumerate() {
            let coeff = factorial_q(n).checked_div(&factorial_q(r)).expect("r! > 0");
            let rhs = (lam.pow((n - r) as u32) * b).scale(&coeff);
            out.push(
                IdentityCheck::exact(CheckId::Theorem2, lambda.params(), s.get(n + 1, r + 1), rhs)
                    .with("n", n)
                    .with("r", r),
            );
        }
    }
    out
}

/// `S_λ(n,k) = B_{n,k}(0!, 1!λ, …, (n-k)!λ^{n-k})` for `0 ≤ k ≤ n ≤ nmax`.
pub fn check_theorem3(nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    theorem3(&Triangles::default(), nmax, lambda)
}

fn theorem3(src: &Triangles, nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    let lam = lambda.scalar();
    let s = src.get(TriangleFamily::SLambda, nmax, &lam);
    let xs = ArgumentVector::new(
        (1..=nmax)
            .map(|j| lam.pow((j - 1) as u32).scale(&factorial_q(j - 1)))
            .collect(),
    );
    let b = partial_bell_triangle(nmax, &xs).expect("nmax arguments supplied");
    let mut out = Vec::new();
    for n in 0..=nmax {
        for k in 0..=n {
            out.push(
                IdentityCheck::exact(CheckId::Theorem3, lambda.params(), s.get(n, k), b[n][k].clone())
                    .with("n", n)
                    .with("k", k),
            );
        }
    }
    out
}

fn open_unit(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || lambda >= &Rational::one() {
        return Err(Error::LambdaOutOfRange {
            lambda: lambda.to_string(),
            range: "(0, 1)".into(),
        });
    }
    Ok(())
}

/// `Σ_l C(n,l) d_{l,λ} (1)_{n-l,λ} = n!/(1-λ)^{n+1}` for `n ≤ nmax`.
pub fn check_theorem4_rhs(nmax: usize, lambda: &Rational) -> Result<Vec<IdentityCheck>> {
    open_unit(lambda)?;
    let d = deg_derangement(nmax, lambda)?;
    let one_minus = Rational::one() - lambda;
    let mut out = Vec::new();
    for n in 0..=nmax {
        let lhs = (0..=n).fold(Rational::zero(), |acc, l| {
            acc + binomial_q(n, l) * d.get(l) * falling_one(n - l, lambda)
        });
        let rhs = factorial_q(n).checked_div(&one_minus.pow(n as u32 + 1))?;
        out.push(
            IdentityCheck::exact(CheckId::Theorem4Rhs, rational_params(lambda), lhs.into(), rhs.into())
                .with("n", n),
        );
    }
    Ok(out)
}

/// Partial sums of `Σ_{k≥n} S_{1,λ}(k,n) n!/Π_{j=1}^{k+1}(1-jλ)`.
#[derive(Clone, PartialEq, Debug)]
pub struct PartialSums {
    pub n: usize,
    pub lambda: Rational,
    pub truncation: usize,
    /// sums for `K' = n, n+1, …, K`
    pub sums: Vec<Rational>,
    /// `n!/(1-λ)^{n+1}`
    pub target: Rational,
}

impl PartialSums {
    pub fn last(&self) -> &Rational {
        self.sums.last().expect("K ≥ n gives at least one term")
    }

    pub fn to_check(&self) -> IdentityCheck {
        IdentityCheck {
            id: CheckId::Theorem4Partial,
            params: rational_params(&self.lambda),
            status: Status::Diagnostic,
            lhs: Some(Witness::Exact(self.last().clone().into())),
            rhs: Some(Witness::Exact(self.target.clone().into())),
            partial_sums: Some(self.sums.iter().map(Rational::to_f64).collect()),
        }
        .with("n", self.n)
        .with("K", self.truncation)
        .with("terms", self.sums.len())
    }
}

/// Partial sums of the series side of the degenerate-derangement moment
/// identity, up to `k = truncation`. The series is not asserted to converge.
pub fn theorem4_partial_sums(n: usize, lambda: &Rational, truncation: usize) -> Result<PartialSums> {
    open_unit(lambda)?;
    let inv = lambda.recip()?;
    if inv.is_integer() {
        let j = inv.numer().to_string().parse::<usize>().unwrap_or(usize::MAX);
        if j <= truncation + 1 {
            return Err(Error::SingularDenominator { j });
        }
    }
    let truncation = truncation.max(n);
    let s1 = deg_stirling1_columns(truncation, n, &Scalar::from(lambda.clone()));
    let nf = factorial_q(n);
    // Π_{j=1}^{k+1} (1-jλ), advanced with k
    let mut denom = (1..=n + 1).fold(Rational::one(), |acc, j| {
        acc * (Rational::one() - lambda * Rational::from(j))
    });
    let mut sum = Rational::zero();
    let mut sums = Vec::with_capacity(truncation - n + 1);
    for k in n..=truncation {
        if k > n {
            denom = denom * (Rational::one() - lambda * Rational::from(k + 1));
        }
        let s = s1[k][n].as_rational().expect("rational lambda");
        sum = sum + (s * &nf).checked_div(&denom)?;
        sums.push(sum.clone());
    }
    let target = nf.checked_div(&(Rational::one() - lambda).pow(n as u32 + 1))?;
    Ok(PartialSums {
        n,
        lambda: lambda.clone(),
        truncation,
        sums,
        target,
    })
}

/// Closed form of `d_{n,λ}` against the recurrence and the generating
/// function, plus the classical limit λ = 0.
pub fn check_theorem5(nmax: usize, lambda: &Rational) -> Result<Vec<IdentityCheck>> {
    let rec = deg_derangement(nmax, lambda)?;
    let gf = deg_derangement_gf(nmax, lambda)?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        let closed: Scalar = deg_derangement_closed(n, lambda)?.into();
        out.push(
            IdentityCheck::exact(CheckId::Theorem5, rational_params(lambda), closed.clone(), rec.get(n).clone().into())
                .with("n", n)
                .with("form", "recurrence"),
        );
        out.push(
            IdentityCheck::exact(CheckId::Theorem5, rational_params(lambda), closed, gf[n].clone().into())
                .with("n", n)
                .with("form", "gf"),
        );
    }
    Ok(out)
}

/// `d_{n,0}` from the closed form and the recurrence against the classical
/// numbers.
pub fn check_theorem5_classical(nmax: usize) -> Result<Vec<IdentityCheck>> {
    let zero = Rational::zero();
    let rec = deg_derangement(nmax, &zero)?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        out.push(
            IdentityCheck::exact(
                CheckId::Theorem5,
                rational_params(&zero),
                deg_derangement_closed(n, &zero)?.into(),
                derangement_closed(n).into(),
            )
            .with("n", n)
            .with("form", "classical-closed"),
        );
        out.push(
            IdentityCheck::exact(
                CheckId::Theorem5,
                rational_params(&zero),
                rec.get(n).clone().into(),
                Rational::from(derangement(n)).into(),
            )
            .with("n", n)
            .with("form", "classical-recurrence"),
        );
    }
    Ok(out)
}

/// `(1-λ)d_{n+1,λ} = (n+λ)d_{n,λ} + n d_{n-1,λ} + nλ(-1)^{n-1}<1>_{n,λ}` for
/// `1 ≤ n ≤ nmax`.
pub fn check_derangement_rec2(nmax: usize, lambda: &Rational) -> Result<Vec<IdentityCheck>> {
    let d = deg_derangement(nmax + 1, lambda)?;
    let lam = Scalar::from(lambda.clone());
    let mut out = Vec::new();
    for n in 1..=nmax {
        let rising = deg_rising(&Scalar::one(), n, &lam);
        let rising = rising.as_rational().expect("rational lambda");
        let nq = Rational::from(n);
        let lhs = (Rational::one() - lambda) * d.get(n + 1);
        let rhs = (&nq + lambda) * d.get(n)
            + &nq * d.get(n - 1)
            + &nq * lambda * sign(n - 1) * rising;
        out.push(
            IdentityCheck::exact(CheckId::DerangementRec2, rational_params(lambda), lhs.into(), rhs.into())
                .with("n", n),
        );
    }
    Ok(out)
}

/// `Γ_λ(k+1) = k/(1-λ)^{k+1} · Γ_{λ/(1-λ)}(k)` for `1 ≤ k ≤ kmax`.
pub fn check_gamma_recurrence(kmax: usize, lambda: &Rational) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        let params = rational_params(lambda);
        let sides = || -> Result<(Rational, Rational)> {
            let lhs = deg_gamma(k + 1, lambda)?.value;
            let one_minus = Rational::one() - lambda;
            let mu = lambda.checked_div(&one_minus)?;
            let rhs = Rational::from(k).checked_div(&one_minus.pow(k as u32 + 1))? * deg_gamma(k, &mu)?.value;
            Ok((lhs, rhs))
        };
        let check = match sides() {
            Ok((l, r)) => IdentityCheck::exact(CheckId::GammaRec, params, l.into(), r.into()),
            Err(e) => IdentityCheck::error(CheckId::GammaRec, params, &e),
        };
        out.push(check.with("k", k));
    }
    out
}

fn float_check(id: CheckId, params: BTreeMap<String, Value>, exact: f64, approx: f64, tol: f64) -> IdentityCheck {
    let rel = ((approx - exact) / exact).abs();
    IdentityCheck {
        id,
        params,
        status: if rel <= tol { Status::Pass } else { Status::Fail },
        lhs: Some(Witness::Float(exact)),
        rhs: Some(Witness::Float(approx)),
        partial_sums: None,
    }
    .with("tol", tol)
}

/// Closed-form moments `E[X^k]`, `k ≤ kmax`, against the ratio of two
/// quadratures, plus `Γ_λ(α)` at the points in `gamma_points`.
pub fn check_moments_quadrature(
    kmax: usize,
    lambda: &Rational,
    gamma_points: &[(usize, Rational)],
    quad_tol: f64,
    tol: f64,
) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        let params = rational_params(lambda);
        let sides = || -> Result<(f64, f64)> {
            let exact = deg_gamma_moment(k, lambda)?.to_f64();
            let num = gamma_quadrature_oracle(&Rational::from(k + 1), lambda, quad_tol)?;
            let den = gamma_quadrature_oracle(&Rational::one(), lambda, quad_tol)?;
            Ok((exact, num / den))
        };
        let check = match sides() {
            Ok((e, a)) => float_check(CheckId::MomentQuad, params, e, a, tol),
            Err(e) => IdentityCheck::error(CheckId::MomentQuad, params, &e),
        };
        out.push(check.with("k", k).with("quantity", "moment"));
    }
    for (alpha, lam) in gamma_points {
        let params = rational_params(lam);
        let sides = || -> Result<(f64, f64)> {
            let exact = deg_gamma(*alpha, lam)?.value.to_f64();
            Ok((exact, gamma_quadrature_oracle(&Rational::from(*alpha), lam, quad_tol)?))
        };
        let check = match sides() {
            Ok((e, a)) => float_check(CheckId::MomentQuad, params, e, a, tol),
            Err(e) => IdentityCheck::error(CheckId::MomentQuad, params, &e),
        };
        out.push(check.with("alpha", *alpha).with("quantity", "gamma"));
    }
    out
}

/// `S_λ(n,k) = (-1)^{n-k} S_{1,λ}(n,k)` row by row (as polynomials in x),
/// and the classical analogue once.
pub fn check_sign(nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    sign_check(&Triangles::default(), nmax, lambda, true)
}

fn sign_check(src: &Triangles, nmax: usize, lambda: &LambdaMode, classical: bool) -> Vec<IdentityCheck> {
    let lam = lambda.scalar();
    let mut pairs = vec![(
        "degenerate",
        lambda.params(),
        src.get(TriangleFamily::SLambda, nmax, &lam),
        src.get(TriangleFamily::S1Lambda, nmax, &lam),
    )];
    if classical {
        pairs.push((
            "classical",
            BTreeMap::new(),
            src.get(TriangleFamily::SUnsigned, nmax, &lam),
            src.get(TriangleFamily::S1, nmax, &lam),
        ));
    }
    let mut out = Vec::new();
    for (kind, params, unsigned, signed) in pairs {
        for n in 0..=nmax {
            let rhs = poly_in_x((0..=n).map(|k| signed.get(n, k).scale(&sign(n - k))));
            out.push(
                IdentityCheck::exact(CheckId::Sign, params.clone(), unsigned.row_polynomial(n), rhs)
                    .with("n", n)
                    .with("family", kind),
            );
        }
    }
    out
}

/// `S_{1,λ}(n,k) = λ^{n-k}S₁(n,k)` and `S_λ(n,k) = λ^{n-k}S(n,k)`, row by row.
pub fn check_scaling(nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    scaling(&Triangles::default(), nmax, lambda)
}

fn scaling(src: &Triangles, nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    let lam = lambda.scalar();
    let at = |p| {
        let s = Scalar::from_poly(p);
        match lambda {
            LambdaMode::Symbolic => s,
            LambdaMode::Rational(r) => s.specialize(Var::Lambda, r),
        }
    };
    let mut out = Vec::new();
    for family in [TriangleFamily::S1Lambda, TriangleFamily::SLambda] {
        let t = src.get(family, nmax, &lam);
        for n in 0..=nmax {
            let oracle = poly_in_x((0..=n).map(|k| {
                at(if family == TriangleFamily::S1Lambda {
                    stirling_scaling_oracle(n, k)
                } else {
                    unsigned_scaling_oracle(n, k)
                })
            }));
            out.push(
                IdentityCheck::exact(CheckId::Scaling, lambda.params(), t.row_polynomial(n), oracle)
                    .with("n", n)
                    .with("family", family.name()),
            );
        }
    }
    out
}

/// `(-x)_{n,λ} = (-1)^n <x>_{n,λ}`, and the defining expansions
/// `Σ_k S_{1,λ}(n,k)x^k = (x)_{n,λ}`, `Σ_k S_λ(n,k)x^k = <x>_{n,λ}`.
pub fn check_reflect(nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    reflect(&Triangles::default(), nmax, lambda)
}

fn reflect(src: &Triangles, nmax: usize, lambda: &LambdaMode) -> Vec<IdentityCheck> {
    let lam = lambda.scalar();
    let x = Scalar::x();
    let s1 = src.get(TriangleFamily::S1Lambda, nmax, &lam);
    let s = src.get(TriangleFamily::SLambda, nmax, &lam);
    let mut out = Vec::new();
    for n in 0..=nmax {
        let rising = deg_rising(&x, n, &lam);
        let cases = [
            ("reflection", deg_falling(&-&x, n, &lam), rising.scale(&sign(n))),
            ("falling", s1.row_polynomial(n), deg_falling(&x, n, &lam)),
            ("rising", s.row_polynomial(n), rising),
        ];
        for (identity, lhs, rhs) in cases {
            out.push(
                IdentityCheck::exact(CheckId::Reflect, lambda.params(), lhs, rhs)
                    .with("n", n)
                    .with("identity", identity),
            );
        }
    }
    out
}

fn rows_against(
    params: &BTreeMap<String, Value>,
    family: &str,
    form: &str,
    got: &Triangle,
    want: &Triangle,
) -> Vec<IdentityCheck> {
    (0..=got.nmax())
        .map(|n| {
            IdentityCheck::exact(CheckId::GfCrossCheck, params.clone(), got.row_polynomial(n), want.row_polynomial(n))
                .with("n", n)
                .with("family", family)
                .with("form", form)
        })
        .collect()
}

fn sequence_against(
    params: &BTreeMap<String, Value>,
    family: &str,
    got: Vec<Scalar>,
    want: Vec<Scalar>,
) -> Vec<IdentityCheck> {
    got.into_iter()
        .zip(want)
        .enumerate()
        .map(|(n, (g, w))| {
            IdentityCheck::exact(CheckId::GfCrossCheck, params.clone(), g, w)
                .with("n", n)
                .with("family", family)
                .with("form", "gf")
        })
        .collect()
}

/// Degenerate triangles and sequences against generating-function
/// extraction at one λ.
pub fn check_gf_degenerate(nmax: usize, lambda: &LambdaMode) -> Result<Vec<IdentityCheck>> {
    gf_degenerate(&Triangles::default(), nmax, lambda)
}

fn gf_degenerate(src: &Triangles, nmax: usize, lambda: &LambdaMode) -> Result<Vec<IdentityCheck>> {
    let lam = lambda.scalar();
    let params = lambda.params();
    let mut out = Vec::new();
    for family in [TriangleFamily::S1Lambda, TriangleFamily::SLambda, TriangleFamily::S2Lambda] {
        let got = src.get(family, nmax, &lam);
        out.extend(rows_against(&params, family.name(), "gf", &got, &gf_triangle(family, nmax, &lam)?));
        if family == TriangleFamily::S2Lambda {
            let rec = deg_stirling2_recurrence(nmax, &lam);
            out.extend(rows_against(&params, family.name(), "recurrence", &got, &rec));
        }
    }
    let bell = gf_build(&GfFamily::DegBell, &lam, nmax)?.egf_values();
    out.extend(sequence_against(&params, "deg-bell", deg_bell_numbers(nmax, &lam), bell));
    let x = Scalar::x();
    let bell_x = gf_build(&GfFamily::PartiallyDegBell { x: x.clone() }, &lam, nmax)?.egf_values();
    out.extend(sequence_against(
        &params,
        "partially-deg-bell",
        partially_deg_bell_polys(nmax, &x, &lam),
        bell_x,
    ));
    Ok(out)
}

/// Classical triangles, derangements and the λ = 0 Euler polynomials
/// against their generating functions.
pub fn check_gf_classical(nmax: usize) -> Result<Vec<IdentityCheck>> {
    gf_classical(&Triangles::default(), nmax)
}

fn gf_classical(src: &Triangles, nmax: usize) -> Result<Vec<IdentityCheck>> {
    let params = BTreeMap::new();
    let lam = Scalar::zero();
    let mut out = Vec::new();
    for family in [TriangleFamily::S1, TriangleFamily::S2, TriangleFamily::SUnsigned] {
        let got = src.get(family, nmax, &lam);
        out.extend(rows_against(&params, family.name(), "gf", &got, &gf_triangle(family, nmax, &lam)?));
    }
    let d = derangements(nmax).into_iter().map(|v| Rational::from(v).into()).collect();
    let gf = gf_build(&GfFamily::Derangement, &lam, nmax)?.egf_values();
    out.extend(sequence_against(&params, "derangement", d, gf));
    let limit = deg_euler_polys(nmax, &lam).polynomials().to_vec();
    out.extend(
        sequence_against(&params, "euler-limit", limit, euler_polys(nmax))
            .into_iter()
            .map(|c| c.with("form", "classical")),
    );
    Ok(out)
}

/// `d_{n,λ}` from the recurrence against its generating function.
pub fn check_gf_derangement(nmax: usize, lambda: &Rational) -> Result<Vec<IdentityCheck>> {
    let rec = deg_derangement(nmax, lambda)?;
    let gf = deg_derangement_gf(nmax, lambda)?;
    Ok(sequence_against(
        &rational_params(lambda),
        "deg-derangement",
        rec.values().iter().cloned().map(Scalar::from).collect(),
        gf.into_iter().map(Scalar::from).collect(),
    ))
}

/// Fixed rational Bell arguments `x_j = (-1)^j (2j+1)/(j+3)`.
pub fn sample_arguments(len: usize) -> ArgumentVector {
    ArgumentVector::from_rationals((1..=len).map(|j| {
        sign(j) * Rational::new(2 * j as i64 + 1, j as i64 + 3)
    }))
}

/// `Bel_n^{(λ)} = Σ_k B_{n,k}^{(λ)}` with rational arguments for `n ≤ nmax`
/// and symbolic arguments for `n ≤ min(nmax, 8)`, plus
/// `Σ_k S_{2,λ}(n,k) = Bel_{n,λ}`.
pub fn check_bell_sum(nmax: usize, lambda: &LambdaMode) -> Result<Vec<IdentityCheck>> {
    bell_sum(&Triangles::default(), nmax, lambda)
}

fn bell_sum(src: &Triangles, nmax: usize, lambda: &LambdaMode) -> Result<Vec<IdentityCheck>> {
    let lam = lambda.scalar();
    let mut out = Vec::new();
    let arg_sets = [
        ("rational", sample_arguments(nmax), nmax),
        ("symbolic", ArgumentVector::symbolic(nmax.min(8)), nmax.min(8)),
    ];
    for (kind, xs, limit) in arg_sets {
        for n in 0..=limit {
            let lhs = deg_complete_bell(n, &xs, &lam)?;
            let mut rhs = Scalar::zero();
            for k in 0..=n {
                rhs = rhs + deg_partial_bell(n, k, &xs, &lam)?;
            }
            out.push(
                IdentityCheck::exact(CheckId::BellSum, lambda.params(), lhs, rhs)
                    .with("n", n)
                    .with("identity", "row-sum")
                    .with("args", kind),
            );
        }
    }
    let s2 = src.get(TriangleFamily::S2Lambda, nmax, &lam);
    for (n, bel) in deg_bell_numbers(nmax, &lam).into_iter().enumerate() {
        let lhs: Scalar = s2.row(n).iter().cloned().sum();
        out.push(
            IdentityCheck::exact(CheckId::BellSum, lambda.params(), lhs, bel)
                .with("n", n)
                .with("identity", "stirling2-row-sum"),
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// suite

/// What [`run_suite`] evaluates.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub name: String,
    pub checks: Vec<CheckId>,
    /// run λ-polynomial checks with symbolic λ
    pub symbolic: bool,
    /// rational λ values for the λ-polynomial checks
    pub rationals: Vec<Rational>,
    /// λ values for T5, DERANGE-REC2 and the derangement cross-check
    pub derangement_lambdas: Vec<Rational>,
    pub theorem4_lambdas: Vec<Rational>,
    pub partial_lambdas: Vec<Rational>,
    pub partial_ns: Vec<usize>,
    pub truncation: usize,
    pub theorem1_ms: Vec<u64>,
    pub gamma_lambdas: Vec<Rational>,
    pub gamma_kmax: usize,
    pub moment_lambda: Rational,
    pub moment_kmax: usize,
    pub gamma_points: Vec<(usize, Rational)>,
    pub quad_tol: f64,
    pub moment_tol: f64,
    pub nmax: BTreeMap<CheckId, usize>,
    pub corruption: Option<Corruption>,
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let nmax = [
            (CheckId::Theorem1, 12),
            (CheckId::Theorem2, 14),
            (CheckId::Theorem3, 14),
            (CheckId::Theorem4Rhs, 12),
            (CheckId::Theorem5, 14),
            (CheckId::Sign, 20),
            (CheckId::GfCrossCheck, 16),
            (CheckId::BellSum, 14),
            (CheckId::DerangementRec2, 14),
            (CheckId::Reflect, 16),
            (CheckId::Scaling, 20),
        ]
        .into_iter()
        .collect();
        SuiteConfig {
            name: "all".into(),
            checks: CheckId::ALL.to_vec(),
            symbolic: true,
            rationals: vec![q(1, 2), q(1, 3), q(1, 10)],
            derangement_lambdas: vec![q(1, 2), q(1, 3), q(1, 10)],
            theorem4_lambdas: vec![q(1, 2), q(1, 3), q(2, 7)],
            partial_lambdas: vec![q(2, 7)],
            partial_ns: (0..=4).collect(),
            truncation: 200,
            theorem1_ms: vec![1, 3, 5],
            gamma_lambdas: vec![q(1, 20), q(1, 50)],
            gamma_kmax: 10,
            moment_lambda: q(1, 10),
            moment_kmax: 3,
            gamma_points: vec![(1, q(1, 2)), (2, q(1, 4)), (3, q(1, 10))],
            quad_tol: 1e-12,
            moment_tol: 1e-8,
            nmax,
            corruption: None,
        }
    }
}

impl SuiteConfig {
    /// No checks; runs to an empty, passing report.
    pub fn empty() -> Self {
        SuiteConfig {
            name: "empty".into(),
            checks: Vec::new(),
            ..SuiteConfig::default()
        }
    }

    /// Default parameters restricted to `checks`.
    pub fn only(checks: &[CheckId]) -> Self {
        SuiteConfig {
            name: checks.iter().map(|c| c.suite_name()).collect::<Vec<_>>().join(","),
            checks: checks.to_vec(),
            ..SuiteConfig::default()
        }
    }

    /// Sets every per-check `nmax` to `n`.
    pub fn with_nmax(mut self, n: usize) -> Self {
        for v in self.nmax.values_mut() {
            *v = n;
        }
        self
    }

    /// Replaces every λ list except those of the gamma checks.
    pub fn with_lambdas(mut self, symbolic: bool, rationals: Vec<Rational>) -> Self {
        self.symbolic = symbolic;
        if !rationals.is_empty() {
            self.derangement_lambdas = rationals.clone();
            self.theorem4_lambdas = rationals.clone();
            self.partial_lambdas = rationals.clone();
        }
        self.rationals = rationals;
        self
    }

    pub fn nmax_for(&self, id: CheckId) -> usize {
        self.nmax.get(&id).copied().unwrap_or(0)
    }

    fn modes(&self) -> Vec<LambdaMode> {
        let sym = self.symbolic.then_some(LambdaMode::Symbolic);
        sym.into_iter()
            .chain(self.rationals.iter().cloned().map(LambdaMode::Rational))
            .collect()
    }

    /// Rejects λ values outside the domain of the selected checks.
    pub fn validate(&self) -> Result<()> {
        if self.checks.contains(&CheckId::Theorem1) {
            if let Some(&m) = self.theorem1_ms.iter().find(|&&m| m % 2 == 0) {
                return Err(Error::EvenM(m));
            }
        }
        if self.checks.iter().any(|c| c.uses_derangements()) {
            for l in self
                .derangement_lambdas
                .iter()
                .chain(&self.theorem4_lambdas)
                .chain(&self.partial_lambdas)
            {
                open_unit(l)?;
            }
        }
        Ok(())
    }
}

/// Outcome of a suite run.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    /// True when no check failed; diagnostics do not count.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<IdentityCheck> + Send + Sync + 'a>;

fn guarded(id: CheckId, params: BTreeMap<String, Value>, r: Result<Vec<IdentityCheck>>) -> Vec<IdentityCheck> {
    r.unwrap_or_else(|e| vec![IdentityCheck::error(id, params, &e)])
}

fn jobs<'a>(config: &'a SuiteConfig, src: &'a Triangles) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();
    let mut ids = config.checks.clone();
    ids.sort();
    ids.dedup();
    for id in ids {
        let n = config.nmax_for(id);
        match id {
            CheckId::Theorem1 => {
                for mode in config.modes() {
                    jobs.push(Box::new(move || {
                        guarded(id, mode.params(), theorem1(src, n, &config.theorem1_ms, &mode))
                    }));
                }
            }
            CheckId::Theorem2 => {
                for mode in config.modes() {
                    jobs.push(Box::new(move || theorem2(src, n, &mode)));
                }
            }
            CheckId::Theorem3 => {
                for mode in config.modes() {
                    jobs.push(Box::new(move || theorem3(src, n, &mode)));
                }
            }
            CheckId::Theorem4Rhs => {
                for l in &config.theorem4_lambdas {
                    jobs.push(Box::new(move || guarded(id, rational_params(l), check_theorem4_rhs(n, l))));
                }
            }
            CheckId::Theorem4Partial => {
                for l in &config.partial_lambdas {
                    for &pn in &config.partial_ns {
                        jobs.push(Box::new(move || {
                            // the diagnostic never fails; an error is recorded as its outcome
                            let check = match theorem4_partial_sums(pn, l, config.truncation) {
                                Ok(p) => p.to_check(),
                                Err(e) => IdentityCheck {
                                    status: Status::Diagnostic,
                                    ..IdentityCheck::error(id, rational_params(l), &e)
                                }
                                .with("n", pn)
                                .with("K", config.truncation),
                            };
                            vec![check]
                        }));
                    }
                }
            }
            CheckId::Theorem5 => {
                for l in &config.derangement_lambdas {
                    jobs.push(Box::new(move || guarded(id, rational_params(l), check_theorem5(n, l))));
                }
                jobs.push(Box::new(move || {
                    guarded(id, rational_params(&Rational::zero()), check_theorem5_classical(n))
                }));
            }
            CheckId::Sign => {
                let mut first = true;
                for mode in config.modes() {
                    let classical = std::mem::take(&mut first);
                    jobs.push(Box::new(move || sign_check(src, n, &mode, classical)));
                }
            }
            CheckId::GfCrossCheck => {
                jobs.push(Box::new(move || guarded(id, BTreeMap::new(), gf_classical(src, n))));
                for mode in config.modes() {
                    jobs.push(Box::new(move || guarded(id, mode.params(), gf_degenerate(src, n, &mode))));
                }
                for l in &config.derangement_lambdas {
                    jobs.push(Box::new(move || guarded(id, rational_params(l), check_gf_derangement(n, l))));
                }
            }
            CheckId::BellSum => {
                for mode in config.modes() {
                    jobs.push(Box::new(move || guarded(id, mode.params(), bell_sum(src, n, &mode))));
                }
            }
            CheckId::DerangementRec2 => {
                for l in &config.derangement_lambdas {
                    jobs.push(Box::new(move || guarded(id, rational_params(l), check_derangement_rec2(n, l))));
                }
            }
            CheckId::GammaRec => {
                for l in &config.gamma_lambdas {
                    jobs.push(Box::new(move || check_gamma_recurrence(config.gamma_kmax, l)));
                }
            }
            CheckId::MomentQuad => {
                jobs.push(Box::new(move || {
                    check_moments_quadrature(
                        config.moment_kmax,
                        &config.moment_lambda,
                        &config.gamma_points,
                        config.quad_tol,
                        config.moment_tol,
                    )
                }));
            }
            CheckId::Reflect => {
                for mode in config.modes() {
                    jobs.push(Box::new(move || reflect(src, n, &mode)));
                }
            }
            CheckId::Scaling => {
                for mode in config.modes() {
                    jobs.push(Box::new(move || scaling(src, n, &mode)));
                }
            }
        }
    }
    jobs
}

/// Thread count from `DEGEN_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("DEGEN_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

/// Runs every selected check. The report lists checks by id, then by λ and
/// the remaining parameters, regardless of scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let src = Triangles::new(config.corruption);
    let jobs = jobs(config, &src);
    let run = || jobs.par_iter().map(|job| job()).collect::<Vec<_>>();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let results = match builder.build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    Ok(Report {
        suite: config.name.clone(),
        checks: results.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn find<'a>(checks: &'a [IdentityCheck], pairs: &[(&str, Value)]) -> &'a IdentityCheck {
        checks
            .iter()
            .find(|c| pairs.iter().all(|(k, v)| c.params.get(*k) == Some(v)))
            .expect("parameter point present")
    }

    fn sides(c: &IdentityCheck) -> (Scalar, Scalar) {
        match (&c.lhs, &c.rhs) {
            (Some(Witness::Exact(l)), Some(Witness::Exact(r))) => (l.clone(), r.clone()),
            other => panic!("not exact: {other:?}"),
        }
    }

    #[test]
    fn theorem1_examples() {
        let checks = check_theorem1(1, &[1, 3], &LambdaMode::Symbolic).unwrap();
        assert!(checks.iter().all(|c| c.status == Status::Pass));
        let c = find(&checks, &[("n", json!(0)), ("m", json!(1))]);
        assert_eq!(sides(c), (Scalar::int(2), Scalar::int(2)));
        let c = find(&checks, &[("n", json!(1)), ("m", json!(1))]);
        assert_eq!(sides(c), (Scalar::zero(), Scalar::zero()));
        let c = find(&checks, &[("n", json!(1)), ("m", json!(3))]);
        assert_eq!(sides(c), (Scalar::int(2), Scalar::int(2)));
        assert_eq!(
            check_theorem1(2, &[1, 2], &LambdaMode::Symbolic),
            Err(Error::EvenM(2))
        );
    }

    #[test]
    fn theorem2_and_3_examples() {
        let lam = Scalar::lambda();
        let t2 = check_theorem2(3, &LambdaMode::Symbolic);
        assert!(t2.iter().all(|c| c.status == Status::Pass));
        let c = find(&t2, &[("n", json!(3)), ("r", json!(1))]);
        assert_eq!(sides(c).1, lam.pow(2).scale(&r(11, 1)));
        let c = find(&t2, &[("n", json!(2)), ("r", json!(2))]);
        assert_eq!(sides(c).1, Scalar::one());
        let t3 = check_theorem3(4, &LambdaMode::Symbolic);
        assert!(t3.iter().all(|c| c.status == Status::Pass));
        let c = find(&t3, &[("n", json!(4)), ("k", json!(2))]);
        assert_eq!(sides(c).0, lam.pow(2).scale(&r(11, 1)));
        let c = find(&t3, &[("n", json!(3)), ("k", json!(2))]);
        assert_eq!(sides(c).1, lam.scale(&r(3, 1)));
    }

    #[test]
    fn theorem4_examples() {
        let checks = check_theorem4_rhs(2, &r(1, 2)).unwrap();
        let rhs: Vec<Scalar> = checks.iter().map(|c| sides(c).1).collect();
        assert_eq!(rhs, vec![Scalar::int(2), Scalar::int(4), Scalar::int(16)]);
        assert!(checks.iter().all(|c| c.status == Status::Pass));
        assert!(matches!(check_theorem4_rhs(2, &r(1, 1)), Err(Error::LambdaOutOfRange { .. })));

        let p = theorem4_partial_sums(0, &r(2, 7), 10).unwrap();
        assert_eq!(p.sums.len(), 11);
        assert!(p.sums.iter().all(|s| s == &r(7, 5)));
        assert_eq!(p.target, r(7, 5));
        assert_eq!(p.to_check().status, Status::Diagnostic);
        assert_eq!(
            theorem4_partial_sums(1, &r(1, 2), 5),
            Err(Error::SingularDenominator { j: 2 })
        );
        let p = theorem4_partial_sums(1, &r(2, 7), 50).unwrap();
        assert_eq!(p.target, r(49, 25));
        assert_eq!(p.sums.len(), 50);
    }

    #[test]
    fn derangement_checks() {
        for l in [r(1, 2), r(1, 3), r(1, 10)] {
            assert!(check_theorem5(8, &l).unwrap().iter().all(IdentityCheck::passed));
            assert!(check_derangement_rec2(8, &l).unwrap().iter().all(IdentityCheck::passed));
        }
        let c = &check_derangement_rec2(1, &r(1, 2)).unwrap()[0];
        assert_eq!(sides(c).0, Scalar::ratio(11, 2));
        assert!(check_theorem5_classical(8).unwrap().iter().all(IdentityCheck::passed));
    }

    #[test]
    fn gamma_checks() {
        let checks = check_gamma_recurrence(10, &r(1, 20));
        assert_eq!(checks.len(), 10);
        assert!(checks.iter().all(|c| c.status == Status::Pass));
        // outside λ < 1/(k+1) the recurrence's right side is undefined
        let bad = check_gamma_recurrence(3, &r(1, 3));
        assert_eq!(bad[2].status, Status::Fail);
        assert!(matches!(bad[2].lhs, Some(Witness::Error { .. })));
    }

    #[test]
    fn corruption_is_caught_by_sign() {
        let config = SuiteConfig {
            corruption: Some(Corruption {
                family: TriangleFamily::SLambda,
                n: 3,
                k: 1,
            }),
            ..SuiteConfig::only(&[CheckId::Sign]).with_nmax(5)
        };
        let report = run_suite(&config).unwrap();
        assert!(!report.passed());
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.iter().all(|c| c.lhs.is_some() && c.rhs.is_some()));
        assert!(bad.iter().all(|c| c.params["n"] == json!(3)));
    }

    #[test]
    fn empty_suite_passes() {
        let report = run_suite(&SuiteConfig::empty()).unwrap();
        assert!(report.checks.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn validation() {
        let config = SuiteConfig::default().with_lambdas(false, vec![r(1, 1)]);
        assert!(matches!(run_suite(&config), Err(Error::LambdaOutOfRange { .. })));
        let config = SuiteConfig {
            theorem1_ms: vec![4],
            ..SuiteConfig::only(&[CheckId::Theorem1])
        };
        assert_eq!(run_suite(&config), Err(Error::EvenM(4)));
    }

    #[test]
    fn small_suite_is_deterministic() {
        let config = SuiteConfig::default().with_nmax(5);
        let a = run_suite(&config).unwrap();
        let b = run_suite(&config).unwrap();
        assert!(a.passed(), "{:?}", a.failures().next());
        assert_eq!(a.to_json(), b.to_json());
        for id in CheckId::ALL {
            assert!(a.checks.iter().any(|c| c.id == id), "{id} missing");
        }
    }
}
