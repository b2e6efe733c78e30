//! Closed-form bound-state wavefunctions: an exponential-hyperbolic prefactor
//! times a terminating hypergeometric polynomial, evaluated in jet arithmetic
//! so that exact derivatives come along for free.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::specfun::{hyp2f1_jet, Hyp2F1Spec};

/// Functional shape of a closed-form wavefunction.
#[derive(Clone, Debug)]
pub enum WaveForm {
    /// y^p (1+y)^(-beta) F(-y) with y = 1/(e^(2x) - 1), for x > 0.
    MorseLike { p: f64, beta: f64, f: Hyp2F1Spec },
    /// e^(a u) cosh(u)^(-b) F((1 + tanh u)/2) with u = alpha x.
    RosenMorseLike { alpha: f64, a: f64, b: f64, f: Hyp2F1Spec },
    /// sinh(x)^p e^(kappa x) F(1 - e^(-2x)), for x > 0.
    KeplerLike { p: f64, kappa: f64, f: Hyp2F1Spec },
    /// exp(-(x-c)^2 / (2 w^2)) * poly(x-c); a smooth localized test function.
    Bump { center: f64, width: f64, coeffs: Vec<f64> },
    /// The zero function (image of an annihilated state).
    Zero,
}

/// A scaled closed-form wavefunction.
#[derive(Clone, Debug)]
pub struct ClosedFormWavefunction {
    pub scale: f64,
    pub form: WaveForm,
}

impl ClosedFormWavefunction {
    pub fn new(scale: f64, form: WaveForm) -> Self {
        ClosedFormWavefunction { scale, form }
    }

    pub fn zero() -> Self {
        ClosedFormWavefunction { scale: 0.0, form: WaveForm::Zero }
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.scale *= factor;
        self
    }

    /// Taylor jet of the wavefunction at `x` carrying derivatives up to
    /// `order`.
    pub fn eval_jet(&self, x: f64, order: usize) -> Result<Jet> {
        let jet = match &self.form {
            WaveForm::MorseLike { p, beta, f } => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!(
                        "exponential-well form needs x > 0, got {x}"
                    )));
                }
                let e2 = Jet::variable(x).scale(2.0).exp();
                let y = e2.sub(&Jet::constant(1.0)).recip();
                let head = y.powf(*p);
                let tail = y.add(&Jet::constant(1.0)).powf(-beta);
                let poly = hyp2f1_jet(f, &y.neg())?;
                head.mul(&tail).mul(&poly)
            }
            WaveForm::RosenMorseLike { alpha, a, b, f } => {
                let u = Jet::variable(x).scale(*alpha);
                let (sh, ch) = u.sinh_cosh();
                let head = u.scale(*a).exp();
                let tail = ch.powf(-b);
                let y = sh.div(&ch).add(&Jet::constant(1.0)).scale(0.5);
                let poly = hyp2f1_jet(f, &y)?;
                head.mul(&tail).mul(&poly)
            }
            WaveForm::KeplerLike { p, kappa, f } => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!(
                        "radial hyperbolic form needs x > 0, got {x}"
                    )));
                }
                let xj = Jet::variable(x);
                let head = xj.sinh().powf(*p);
                let tail = xj.scale(*kappa).exp();
                let w = Jet::constant(1.0).sub(&xj.scale(-2.0).exp());
                let poly = hyp2f1_jet(f, &w)?;
                head.mul(&tail).mul(&poly)
            }
            WaveForm::Bump { center, width, coeffs } => {
                let u = Jet::variable(x).sub(&Jet::constant(*center));
                let gauss = u.mul(&u).scale(-0.5 / (width * width)).exp();
                gauss.mul(&u.poly(coeffs))
            }
            WaveForm::Zero => Jet::constant(0.0),
        };
        Ok(jet.truncated(order).scale(self.scale))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval_jet(x, 0)?.value())
    }
}
