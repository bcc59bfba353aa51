//! Small numerical toolbox shared by the prior and transport modules:
//! log-gamma, regularized incomplete gamma, quadrature, bisection and
//! golden-section search. All generic over the scalar type.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Lanczos approximation of ln Γ(x) for x > 0.
pub fn ln_gamma<S: Scalar>(x: S) -> S {
    const G: f64 = 7.0;
    const COEFFS: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    let xf = x.to_f64_lossy();
    assert!(xf > 0.0, "ln_gamma requires positive argument");
    let z = xf - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    let v = 0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln();
    S::from_f64(v)
}

/// Regularized lower incomplete gamma P(a, x) by series expansion.
fn gamma_p_series(a: f64, x: f64) -> f64 {
    let ln_ga = ln_gamma::<f64>(a);
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-15 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_ga).exp()
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction.
fn gamma_q_cf(a: f64, x: f64) -> f64 {
    let ln_ga = ln_gamma::<f64>(a);
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-15 {
            break;
        }
    }
    (-x + a * x.ln() - ln_ga).exp() * h
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
pub fn gamma_q<S: Scalar>(a: S, x: S) -> S {
    let (a, x) = (a.to_f64_lossy(), x.to_f64_lossy());
    assert!(a > 0.0 && x >= 0.0);
    let v = if x == 0.0 {
        1.0
    } else if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    };
    S::from_f64(v.clamp(0.0, 1.0))
}

/// Composite Simpson quadrature with `n` (even) panels.
pub fn simpson<S: Scalar, F: Fn(S) -> S>(f: F, a: S, b: S, n: usize) -> S {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / S::from_usize(n);
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + h * S::from_usize(i);
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc + S::from_f64(w) * f(x);
    }
    acc * h / S::from_f64(3.0)
}

/// Bisection root-find for a continuous function with a sign change on [lo, hi].
/// Converges to relative tolerance `rel_tol` on the abscissa.
pub fn bisect<S: Scalar, F: Fn(S) -> S>(f: F, mut lo: S, mut hi: S, rel_tol: S) -> Result<S> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == S::zero() {
        return Ok(lo);
    }
    if fhi == S::zero() {
        return Ok(hi);
    }
    if (flo > S::zero()) == (fhi > S::zero()) {
        return Err(Error::CalibrationFailure(format!(
            "no sign change on bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )));
    }
    for _ in 0..200 {
        let mid = (lo + hi) * S::from_f64(0.5);
        let fm = f(mid);
        if fm == S::zero() || (hi - lo) <= rel_tol * mid.abs().max(S::one()) {
            return Ok(mid);
        }
        if (fm > S::zero()) == (flo > S::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * S::from_f64(0.5))
}

/// Golden-section minimization of a unimodal function on [a, b].
pub fn golden_min<S: Scalar, F: Fn(S) -> S>(f: F, mut a: S, mut b: S, tol: S) -> S {
    let inv_phi = S::from_f64(0.618_033_988_749_894_9);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() < tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a + b) * S::from_f64(0.5)
}

/// Numerically stable log(Σ exp(x_i)).
pub fn logsumexp<S: Scalar>(xs: &[S]) -> S {
    let m = xs.iter().cloned().fold(S::neg_infinity(), S::max);
    if m == S::neg_infinity() {
        return S::neg_infinity();
    }
    let s: S = xs.iter().map(|&x| (x - m).exp()).sum();
    m + s.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in 1..10u64 {
            let fact: f64 = (1..n).map(|k| k as f64).product();
            assert!((ln_gamma(n as f64) - fact.ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn gamma_q_known_values() {
        // Q(1, x) = exp(-x)
        for &x in &[0.1, 1.0, 5.0, 20.0] {
            assert!((gamma_q(1.0f64, x) - (-x).exp()).abs() < 1e-12);
        }
        // Q(3, x) = e^-x (1 + x + x^2/2)
        let x = 2.5f64;
        let q3 = (-x).exp() * (1.0 + x + x * x / 2.0);
        assert!((gamma_q(3.0f64, x) - q3).abs() < 1e-12);
    }

    #[test]
    fn simpson_integrates_polynomial_exactly() {
        let v = simpson(|x: f64| x * x * x, 0.0, 2.0, 16);
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn bisect_rejects_bad_bracket() {
        assert!(bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn golden_min_quadratic() {
        let m = golden_min(|x: f64| (x - 1.3) * (x - 1.3), -5.0, 5.0, 1e-10);
        assert!((m - 1.3).abs() < 1e-6);
    }

    #[test]
    fn logsumexp_stable() {
        let v = logsumexp(&[1000.0f64, 1000.0]);
        assert!((v - (1000.0 + 2.0f64.ln())).abs() < 1e-9);
    }
}
