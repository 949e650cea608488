//! Real special functions: log-gamma, digamma, trigamma, Pochhammer symbols,
//! Beta and regularized incomplete Beta, and the principal Lambert W branch.

use crate::error::{domain, Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SHIFT: f64 = 10.0;

fn check_positive(func: &'static str, t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(domain(func, format!("argument must be finite and positive, got {t}")));
    }
    Ok(())
}

/// ln Γ(t) for t > 0.
pub fn log_gamma(t: f64) -> Result<f64> {
    check_positive("log_gamma", t)?;
    Ok(log_gamma_unchecked(t))
}

pub(crate) fn log_gamma_unchecked(t: f64) -> f64 {
    // small integers: factorials are exact in f64 up to 22!
    if t == t.floor() && t <= 23.0 {
        let mut f = 1.0f64;
        let mut k = 2.0;
        while k < t {
            f *= k;
            k += 1.0;
        }
        return f.ln();
    }
    let mut x = t;
    let mut shift_log = 0.0;
    if x < SHIFT {
        let mut prod = 1.0;
        while x < SHIFT {
            prod *= x;
            x += 1.0;
        }
        shift_log = prod.ln();
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Stirling series with Bernoulli coefficients B_{2k} / (2k(2k-1))
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2
                                * (-1.0 / 1680.0
                                    + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360_360.0 + inv2 / 156.0))))));
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series - shift_log
}

/// Ψ(t) = Γ'(t)/Γ(t) for t > 0.
pub fn digamma(t: f64) -> Result<f64> {
    check_positive("digamma", t)?;
    Ok(digamma_unchecked(t))
}

pub(crate) fn digamma_unchecked(t: f64) -> f64 {
    let mut x = t;
    let mut acc = 0.0;
    while x < SHIFT {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32_760.0 - inv2 / 12.0))))));
    acc + x.ln() - 0.5 / x - tail
}

/// Ψ'(t) for t > 0.
pub fn trigamma(t: f64) -> Result<f64> {
    check_positive("trigamma", t)?;
    Ok(trigamma_unchecked(t))
}

pub(crate) fn trigamma_unchecked(t: f64) -> f64 {
    let mut x = t;
    let mut acc = 0.0;
    while x < SHIFT {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let tail = inv
        + inv2 / 2.0
        + inv
            * inv2
            * (1.0 / 6.0
                - inv2
                    * (1.0 / 30.0
                        - inv2
                            * (1.0 / 42.0
                                - inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0 - inv2 * (691.0 / 2730.0 - inv2 * 7.0 / 6.0))))));
    acc + tail
}

/// Ψ(x) − Ψ(x+c) for x > 0, c ≥ 0, without the cancellation of subtracting
/// two nearly equal values when x is large.
pub fn digamma_diff(x: f64, c: f64) -> Result<f64> {
    check_positive("digamma_diff", x)?;
    if !(c >= 0.0) {
        return Err(domain("digamma_diff", format!("shift must be nonnegative, got {c}")));
    }
    Ok(digamma_diff_unchecked(x, c))
}

pub(crate) fn digamma_diff_unchecked(x: f64, c: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    if c == c.floor() && c <= 64.0 {
        return -(0..c as usize).map(|k| 1.0 / (x + k as f64)).sum::<f64>();
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < SHIFT {
        acc -= c / (y * (y + c));
        y += 1.0;
    }
    let z = y + c;
    let (iy2, iz2) = (1.0 / (y * y), 1.0 / (z * z));
    let bern = |u: f64| {
        u * (1.0 / 12.0 - u * (1.0 / 120.0 - u * (1.0 / 252.0 - u * (1.0 / 240.0 - u * (1.0 / 132.0)))))
    };
    acc - (c / y).ln_1p() - c / (2.0 * y * z) - (bern(iy2) - bern(iz2))
}

/// Ψ'(x) − Ψ'(x+c) for x > 0, c ≥ 0.
pub fn trigamma_diff(x: f64, c: f64) -> Result<f64> {
    check_positive("trigamma_diff", x)?;
    if !(c >= 0.0) {
        return Err(domain("trigamma_diff", format!("shift must be nonnegative, got {c}")));
    }
    Ok(trigamma_diff_unchecked(x, c))
}

pub(crate) fn trigamma_diff_unchecked(x: f64, c: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    if c == c.floor() && c <= 64.0 {
        return (0..c as usize).map(|k| 1.0 / ((x + k as f64) * (x + k as f64))).sum::<f64>();
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < SHIFT {
        acc += c * (2.0 * y + c) / (y * y * (y + c) * (y + c));
        y += 1.0;
    }
    let z = y + c;
    let tail = |u: f64| {
        let u2 = u * u;
        u * u2 * (1.0 / 6.0 - u2 * (1.0 / 30.0 - u2 * (1.0 / 42.0 - u2 * (1.0 / 30.0 - u2 * (5.0 / 66.0)))))
    };
    acc + c / (y * z) + c * (2.0 * y + c) / (2.0 * y * y * z * z) + (tail(1.0 / y) - tail(1.0 / z))
}

/// Rising factorial (a)_n by direct product.
pub fn pochhammer(a: f64, n: u32) -> Result<f64> {
    if !a.is_finite() {
        return Err(domain("pochhammer", "non-finite base"));
    }
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    if !p.is_finite() {
        return Err(Error::Overflow { func: "pochhammer" });
    }
    Ok(p)
}

/// ln (a)_n for a > 0, valid far beyond the overflow range of [`pochhammer`].
pub fn ln_pochhammer(a: f64, n: u32) -> Result<f64> {
    check_positive("ln_pochhammer", a)?;
    if n <= 64 {
        return Ok((0..n).map(|k| (a + k as f64).ln()).sum());
    }
    Ok(log_gamma_unchecked(a + n as f64) - log_gamma_unchecked(a))
}

/// (a)_n / n!, computed as a product of ratios so it never overflows for
/// moderate a; this is the harmonic kernel weight when a = α + 2.
pub fn pochhammer_over_factorial(a: f64, n: u32) -> f64 {
    if n <= 2048 {
        let mut p = 1.0;
        for k in 0..n {
            p *= (a + k as f64) / (k as f64 + 1.0);
        }
        p
    } else {
        (log_gamma_unchecked(a + n as f64) - log_gamma_unchecked(a) - log_gamma_unchecked(n as f64 + 1.0)).exp()
    }
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta(a: f64, b: f64) -> Result<f64> {
    check_positive("beta", a)?;
    check_positive("beta", b)?;
    Ok(ln_beta_unchecked(a, b).exp())
}

pub(crate) fn ln_beta_unchecked(a: f64, b: f64) -> f64 {
    log_gamma_unchecked(a) + log_gamma_unchecked(b) - log_gamma_unchecked(a + b)
}

/// Regularized incomplete Beta I_x(a, b).
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    check_positive("reg_inc_beta", a)?;
    check_positive("reg_inc_beta", b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("reg_inc_beta", format!("x must lie in [0,1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta_unchecked(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok((ln_front.exp() * beta_cf(x, a, b) / a).clamp(0.0, 1.0))
    } else {
        Ok((1.0 - ln_front.exp() * beta_cf(1.0 - x, b, a) / b).clamp(0.0, 1.0))
    }
}

/// Continued fraction for the incomplete Beta, modified Lentz.
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..20_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Principal branch W₀ of the inverse of t ↦ t·eᵗ, for x ≥ −1/e.
pub fn lambert_w0(x: f64) -> Result<f64> {
    const INV_E: f64 = 0.367_879_441_171_442_33;
    if x.is_nan() || x < -INV_E - 1e-16 {
        return Err(domain("lambert_w0", format!("argument must be >= -1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= -INV_E {
        return Ok(-1.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut w = if x < -0.25 {
        // series about the branch point in p = sqrt(2(e x + 1))
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < 3.0 {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-300 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert!(close(log_gamma(5.0).unwrap(), 24f64.ln(), 1e-14));
        // Γ(1/2) = √π
        assert!(close(log_gamma(0.5).unwrap(), 0.5 * std::f64::consts::PI.ln(), 1e-14));
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.0).is_err());
    }

    #[test]
    fn log_gamma_large_matches_stirling_recurrence() {
        for &t in &[10.5, 123.25, 1e4 + 0.5, 1e6 - 0.3] {
            let lhs = log_gamma(t + 1.0).unwrap() - log_gamma(t).unwrap();
            assert!((lhs - t.ln()).abs() <= 1e-13 * log_gamma(t).unwrap().abs().max(1.0), "t = {t}");
        }
    }

    #[test]
    fn digamma_values() {
        assert!(close(digamma(1.0).unwrap(), -EULER_GAMMA, 1e-14));
        assert!(close(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA, 1e-14));
        assert!(close(digamma(4.0).unwrap(), -EULER_GAMMA + 1.0 + 0.5 + 1.0 / 3.0, 1e-14));
        // Ψ(1/2) = −γ − 2 ln 2
        assert!(close(digamma(0.5).unwrap(), -EULER_GAMMA - 2.0 * 2f64.ln(), 1e-14));
    }

    #[test]
    fn trigamma_values() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!(close(trigamma(1.0).unwrap(), z2, 1e-14));
        assert!(close(trigamma(2.0).unwrap(), z2 - 1.0, 1e-14));
        assert!(close(trigamma(0.5).unwrap(), std::f64::consts::PI.powi(2) / 2.0, 1e-13));
        let t: f64 = 1e4;
        let v = t * t * (trigamma(t).unwrap() - trigamma(t + 1.0).unwrap());
        assert!((v - 1.0).abs() < 1e-6);
    }

    #[test]
    fn differences_match_direct_subtraction() {
        for &x in &[0.3, 1.0, 7.5, 42.0] {
            for &c in &[1.0, 3.0, 0.5, 2.5, 1.7] {
                let d = digamma_diff(x, c).unwrap();
                let t = trigamma_diff(x, c).unwrap();
                assert!((d - (digamma(x).unwrap() - digamma(x + c).unwrap())).abs() < 1e-13, "x={x} c={c}");
                assert!((t - (trigamma(x).unwrap() - trigamma(x + c).unwrap())).abs() < 1e-13, "x={x} c={c}");
            }
        }
        // leading asymptotics for large arguments: −c/x and c/x²
        let x = 1e7;
        assert!((digamma_diff(x, 2.5).unwrap() * x / -2.5 - 1.0).abs() < 1e-6);
        assert!((trigamma_diff(x, 2.5).unwrap() * x * x / 2.5 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(2.0, 3).unwrap(), 24.0);
        assert_eq!(pochhammer(2.0, 0).unwrap(), 1.0);
        assert!(close(pochhammer(2.5, 2).unwrap(), 8.75, 1e-15));
        assert!(matches!(pochhammer(10.0, 400), Err(Error::Overflow { .. })));
        let lp = ln_pochhammer(10.0, 400).unwrap();
        assert!(close(lp, log_gamma(410.0).unwrap() - log_gamma(10.0).unwrap(), 1e-10));
        // (2)_n / n! = n + 1
        assert!(close(pochhammer_over_factorial(2.0, 50), 51.0, 1e-12));
    }

    #[test]
    fn beta_values() {
        assert!(close(beta(2.0, 1.0).unwrap(), 0.5, 1e-15));
        assert!(close(beta(1.0, 1.0).unwrap(), 1.0, 1e-15));
        assert!(close(beta(3.0, 1.0).unwrap(), 1.0 / 3.0, 1e-15));
        assert!(beta(0.0, 1.0).is_err());
    }

    #[test]
    fn inc_beta_values() {
        assert_eq!(reg_inc_beta(0.0, 2.0, 3.0).unwrap(), 0.0);
        assert_eq!(reg_inc_beta(1.0, 2.0, 3.0).unwrap(), 1.0);
        assert!(close(reg_inc_beta(0.5, 1.0, 1.0).unwrap(), 0.5, 1e-15));
        // I_x(a, 1) = x^a
        assert!(close(reg_inc_beta(0.3, 4.5, 1.0).unwrap(), 0.3f64.powf(4.5), 1e-14));
        // I_x(1, b) = 1 − (1−x)^b
        assert!(close(reg_inc_beta(0.7, 1.0, 2.5).unwrap(), 1.0 - 0.3f64.powf(2.5), 1e-14));
        // symmetry I_x(a,b) = 1 − I_{1−x}(b,a)
        let v = reg_inc_beta(0.8, 150.5, 2.0).unwrap() + reg_inc_beta(0.2, 2.0, 150.5).unwrap();
        assert!(close(v, 1.0, 1e-13));
        assert!(reg_inc_beta(1.2, 1.0, 1.0).is_err());
    }

    #[test]
    fn lambert_values() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!(close(lambert_w0(std::f64::consts::E).unwrap(), 1.0, 1e-15));
        assert!(close(lambert_w0(1.0).unwrap(), 0.567_143_290_409_783_8, 1e-15));
        assert!(close(lambert_w0(-(-1f64).exp()).unwrap(), -1.0, 1e-7));
        assert!(lambert_w0(-0.5).is_err());
        for &x in &[-0.3678, -0.2, 0.5, 10.0, 1e3, 1e8] {
            let w = lambert_w0(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0), "x = {x}");
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn digamma_recurrence(t in 1e-2f64..1e4) {
            let lhs = digamma(t + 1.0).unwrap() - digamma(t).unwrap();
            prop_assert!((lhs - 1.0 / t).abs() <= 1e-12 * (1.0 / t).max(1.0));
        }

        #[test]
        fn trigamma_recurrence(t in 1e-2f64..1e4) {
            let lhs = trigamma(t + 1.0).unwrap() - trigamma(t).unwrap();
            let want = -1.0 / (t * t);
            prop_assert!((lhs - want).abs() <= 1e-12 * want.abs().max(1.0));
        }

        #[test]
        fn beta_symmetry_and_shift(a in 0.05f64..60.0, b in 0.05f64..60.0) {
            let ab = beta(a, b).unwrap();
            prop_assert!((ab - beta(b, a).unwrap()).abs() <= 1e-12 * ab);
            let shifted = beta(a + 1.0, b).unwrap();
            let want = ab * a / (a + b);
            prop_assert!((shifted - want).abs() <= 1e-12 * want);
        }

        #[test]
        fn lambert_inverts_x_exp_x(x in -1.0f64..=5.0) {
            let w = lambert_w0(x * x.exp()).unwrap();
            prop_assert!((w - x).abs() <= 1e-10, "x = {x}, w = {w}");
        }

        #[test]
        fn pochhammer_step(a in 0.05f64..20.0, n in 0u32..40) {
            let next = pochhammer(a, n + 1).unwrap();
            let want = pochhammer(a, n).unwrap() * (a + n as f64);
            prop_assert!((next - want).abs() <= 4.0 * f64::EPSILON * want.abs());
        }
    }
}
