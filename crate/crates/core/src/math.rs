//! Numerically stable scalar kernels shared across the crate.
//!
//! The recurring quantities are `ln((1 ± tanh(η/2))/2) = -softplus(∓η)`,
//! the sigmoid/logit pair mapping between probability space `(0,1)` and
//! log-likelihood-ratio space `ℝ`, and two-term log-sum-exp. The naive
//! `tanh` forms lose all precision for `|η| > 40`.

/// `ln(1 + e^z)`, branching at `|z| = 30` where the dropped term is below
/// f64 resolution.
#[inline]
pub fn softplus(z: f64) -> f64 {
    if z > 30.0 {
        z
    } else if z < -30.0 {
        z.exp()
    } else {
        z.exp().ln_1p()
    }
}

/// `ψ(z) = 1/(1 + e^{-z}) = (1 + tanh(z/2))/2`.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `φ(p) = ln(p/(1-p))`, inverse of [`sigmoid`].
#[inline]
pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// `ln ψ(z) = -softplus(-z)`, i.e. `ln((1 + tanh(z/2))/2)` without the
/// cancellation of the tanh form.
#[inline]
pub fn ln_sigmoid(z: f64) -> f64 {
    -softplus(-z)
}

/// `ln(e^a + e^b)` with either argument allowed to be `-inf`.
#[inline]
pub fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `ln(1 - e^z)` for `z < 0`, stable near both ends.
#[inline]
pub fn ln_one_minus_exp(z: f64) -> f64 {
    debug_assert!(z < 0.0);
    if z > -0.693 {
        (-z.exp_m1()).ln()
    } else {
        (-z.exp()).ln_1p()
    }
}
