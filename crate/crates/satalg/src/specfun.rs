//! Special functions needed by the closed-form wavefunctions: the real gamma
//! function and the Gauss hypergeometric series 2F1.
//!
//! Every 2F1 call made by the bound-state constructions in this crate has a
//! nonpositive-integer numerator parameter, so the series terminates and is
//! summed exactly as a polynomial. A guarded series branch for |w| < 1 exists
//! for completeness and cross-checks.

use crate::error::{Error, Result};
use crate::jet::Jet;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() < tol && r <= 0.0 {
        Some(r as i64)
    } else {
        None
    }
}

/// Gamma function on the real line (Lanczos approximation, g = 7, nine
/// coefficients, reflection formula for x < 0.5). Accurate to at least
/// twelve significant digits for |x| <= 50 away from the poles.
pub fn gamma_real(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x, 1e-12).is_some() {
        return Err(Error::Domain(format!("gamma pole at nonpositive integer x = {x}")));
    }
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let sin_pix = (std::f64::consts::PI * x).sin();
        return Ok(std::f64::consts::PI / (sin_pix * gamma_real(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc)
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).map(|j| a + j as f64).product()
}

/// Parameter triple of a Gauss hypergeometric function 2F1(a, b; c; w).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyp2F1Spec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Hyp2F1Spec {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Hyp2F1Spec { a, b, c }
    }

    /// Degree of the terminating series, if `a` or `b` is a nonpositive
    /// integer (within 1e-9). The series then has exactly `degree + 1` terms.
    pub fn terminating_degree(&self) -> Option<usize> {
        let da = is_nonpositive_integer(self.a, 1e-9).map(|n| (-n) as usize);
        let db = is_nonpositive_integer(self.b, 1e-9).map(|n| (-n) as usize);
        match (da, db) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) => Some(x),
            (None, Some(y)) => Some(y),
            (None, None) => None,
        }
    }

    /// Series coefficients p_k = (a)_k (b)_k / ((c)_k k!) of a terminating
    /// series, constant term first.
    fn poly_coeffs(&self) -> Result<Vec<f64>> {
        let n = self.terminating_degree().expect("poly_coeffs requires a terminating series");
        self.check_c_pole(n)?;
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut term = 1.0;
        coeffs.push(term);
        for k in 0..n {
            let kf = k as f64;
            term *= (self.a + kf) * (self.b + kf) / ((self.c + kf) * (kf + 1.0));
            coeffs.push(term);
        }
        Ok(coeffs)
    }

    fn check_c_pole(&self, degree: usize) -> Result<()> {
        if let Some(nc) = is_nonpositive_integer(self.c, 1e-9) {
            // (c)_k vanishes once k exceeds -c; harmless only if the series
            // terminates strictly before that happens.
            if (-nc) as usize <= degree.saturating_sub(1) {
                return Err(Error::Domain(format!(
                    "2F1 denominator pole: c = {} hit before the series terminates",
                    self.c
                )));
            }
        }
        Ok(())
    }

    /// Parameter triple of the derivative series: d/dw 2F1(a,b;c;w)
    /// = (ab/c) 2F1(a+1, b+1; c+1; w).
    pub fn derivative_spec(&self) -> (f64, Hyp2F1Spec) {
        (
            self.a * self.b / self.c,
            Hyp2F1Spec::new(self.a + 1.0, self.b + 1.0, self.c + 1.0),
        )
    }
}

/// Evaluate 2F1(a, b; c; w). Terminating series are summed exactly; otherwise
/// the power series is used and requires |w| < 1.
pub fn hyp2f1(spec: &Hyp2F1Spec, w: f64) -> Result<f64> {
    if let Some(n) = spec.terminating_degree() {
        spec.check_c_pole(n)?;
        let mut sum = 1.0;
        let mut term = 1.0;
        for k in 0..n {
            let kf = k as f64;
            term *= (spec.a + kf) * (spec.b + kf) / ((spec.c + kf) * (kf + 1.0)) * w;
            sum += term;
        }
        return Ok(sum);
    }
    if is_nonpositive_integer(spec.c, 1e-9).is_some() {
        return Err(Error::Domain(format!(
            "2F1 with nonpositive integer c = {} and non-terminating series",
            spec.c
        )));
    }
    if w.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "2F1 series requires |w| < 1 for non-terminating parameters, got w = {w}"
        )));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..10_000 {
        let kf = k as f64;
        term *= (spec.a + kf) * (spec.b + kf) / ((spec.c + kf) * (kf + 1.0)) * w;
        sum += term;
        if term.abs() <= 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence(format!(
        "2F1 series did not converge within 10000 terms at w = {w}"
    )))
}

/// First or second derivative of 2F1 with respect to w, via the contiguous
/// parameter-shift identity applied once or twice.
pub fn hyp2f1_derivative(spec: &Hyp2F1Spec, w: f64, order: u8) -> Result<f64> {
    match order {
        1 => {
            let (factor, shifted) = spec.derivative_spec();
            Ok(factor * hyp2f1(&shifted, w)?)
        }
        2 => {
            let (f1, s1) = spec.derivative_spec();
            let (f2, s2) = s1.derivative_spec();
            Ok(f1 * f2 * hyp2f1(&s2, w)?)
        }
        _ => Err(Error::Domain(format!("derivative order must be 1 or 2, got {order}"))),
    }
}

/// Jet of 2F1(a, b; c; w(x)) given the jet of the inner argument. Only
/// terminating series are supported (the polynomial is evaluated by Horner's
/// method in jet arithmetic).
pub fn hyp2f1_jet(spec: &Hyp2F1Spec, w: &Jet) -> Result<Jet> {
    if spec.terminating_degree().is_none() {
        return Err(Error::Domain(
            "jet evaluation of 2F1 requires a terminating series".into(),
        ));
    }
    Ok(w.poly(&spec.poly_coeffs()?))
}
