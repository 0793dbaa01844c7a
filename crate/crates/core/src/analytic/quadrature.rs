//! Floating-point evaluation of the degenerate gamma integral
//!
//! ```text
//! Γ_λ(α) = ∫₀^∞ (1+λt)^{-1/λ} t^{α-1} dt
//! ```
//!
//! This is the only floating-point code in the crate. It exists to check the
//! exact closed forms numerically and is not used to produce any value.
//!
//! With `u = 1/(1+λt)` the half-line maps onto `(0, 1)`:
//!
//! ```text
//! Γ_λ(α) = λ^{-α} ∫₀¹ u^{1/λ-α-1} (1-u)^{α-1} du
//! ```
//!
//! which is integrated by globally adaptive 7/15-point Gauss–Kronrod
//! bisection, split at u = 1/2.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ring::Rational;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]` until the summed error estimate is at most
/// `tol` relative to the result.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b);
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    while error > tol * value.abs() && error > f64::MIN_POSITIVE {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::ToleranceNotMet { tol, estimate: error / value.abs() });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // resum to shed the drift of the running totals
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error: f64 = heap.iter().map(|s| s.error).sum();
    if !value.is_finite() || error > tol * value.abs() {
        return Err(Error::ToleranceNotMet { tol, estimate: error / value.abs() });
    }
    Ok(value)
}

/// Numerical `Γ_λ(α)` to relative tolerance `tol`.
pub fn gamma_quadrature_oracle(alpha: &Rational, lambda: &Rational, tol: f64) -> Result<f64> {
    if !lambda.is_positive() {
        return Err(Error::LambdaOutOfRange {
            lambda: lambda.to_string(),
            range: "(0, inf)".into(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::ToleranceNotMet { tol, estimate: f64::NAN });
    }
    if !alpha.is_positive() {
        return Err(Error::NonConvergent(format!("alpha = {alpha} must be positive")));
    }
    // convergence at infinity needs α < 1/λ; insist on a margin
    let slack = Rational::one() - alpha * lambda;
    if slack.to_f64() < 1e-9 {
        return Err(Error::NonConvergent(format!(
            "alpha*lambda = {} must be below 1",
            alpha * lambda
        )));
    }
    let (a, l) = (alpha.to_f64(), lambda.to_f64());
    let p = 1.0 / l - a - 1.0;
    let q = a - 1.0;
    let scale = l.powf(-a);
    // Both endpoint singularities are moved to 0, where f64 has resolution:
    // the upper half is integrated in v = 1 - u.
    let kernel = move |s: f64, p: f64, q: f64| {
        let v = scale * s.powf(p) * (1.0 - s).powf(q);
        // a node rounded onto a singular endpoint contributes nothing
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let lower = integrate(|u| kernel(u, p, q), 0.0, 0.5, tol)?;
    let upper = integrate(|v| kernel(v, q, p), 0.0, 0.5, tol)?;
    Ok(lower + upper)
}

/// Density of the degenerate gamma variable with parameters `α`, `β`:
/// `β(βx)^{α-1}(1+λx)^{-1/λ}/Γ_λ(α)` on `x ≥ 0`, zero elsewhere.
pub fn deg_gamma_pdf(x: f64, alpha: u32, beta: f64, lambda: &Rational) -> Result<f64> {
    let gamma = super::deg_gamma(alpha as usize, lambda)?.value.to_f64();
    if x < 0.0 {
        return Ok(0.0);
    }
    let l = lambda.to_f64();
    Ok(beta * (beta * x).powi(alpha as i32 - 1) * (1.0 + l * x).powf(-1.0 / l) / gamma)
}
