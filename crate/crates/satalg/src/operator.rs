//! First-order differential operators `sigma (d(x) d/dx + m(x))` applied
//! symbolically to wavefunctions. Images stay exact: evaluating one point
//! evaluates the operand as a deeper jet and combines coefficients, so no
//! discretization error enters ladder or commutator checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet, MAX_ORDER};
use crate::numerics::Grid;
use crate::wavefunction::ClosedFormWavefunction;

/// Nesting limit for operator images. Each level of nesting consumes one
/// derivative order of the underlying jets, and the deepest evaluation in
/// any verification is a second derivative of a doubly-nested image.
pub const MAX_DEPTH: usize = 3;

/// Real coefficient functions appearing in ladder and algebra generators.
#[derive(Clone, Debug)]
pub enum Coeff {
    Const(f64),
    /// scale * sinh(freq x)
    Sinh { freq: f64, scale: f64 },
    /// scale * cosh(freq x)
    Cosh { freq: f64, scale: f64 },
    /// scale * tanh(freq x)
    Tanh { freq: f64, scale: f64 },
    /// scale * coth(freq x); only evaluated away from x = 0
    Coth { freq: f64, scale: f64 },
    Sum(Vec<Coeff>),
}

impl Coeff {
    pub fn eval_jet(&self, x: f64, order: usize) -> Jet {
        match self {
            Coeff::Const(c) => Jet::constant(*c).truncated(order),
            Coeff::Sinh { freq, scale } => {
                Jet::variable(x).scale(*freq).sinh().scale(*scale).truncated(order)
            }
            Coeff::Cosh { freq, scale } => {
                Jet::variable(x).scale(*freq).cosh().scale(*scale).truncated(order)
            }
            Coeff::Tanh { freq, scale } => {
                let (sh, ch) = Jet::variable(x).scale(*freq).sinh_cosh();
                sh.div(&ch).scale(*scale).truncated(order)
            }
            Coeff::Coth { freq, scale } => {
                let (sh, ch) = Jet::variable(x).scale(*freq).sinh_cosh();
                ch.div(&sh).scale(*scale).truncated(order)
            }
            Coeff::Sum(parts) => parts
                .iter()
                .fold(Jet::constant(0.0).truncated(order), |acc, p| {
                    acc.add(&p.eval_jet(x, order))
                }),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.eval_jet(x, 0).value()
    }
}

/// A jet with complex coefficients, stored as two real jets.
#[derive(Clone, Debug)]
pub struct ComplexJet {
    pub re: Jet,
    pub im: Jet,
}

impl ComplexJet {
    pub fn from_real(re: Jet) -> Self {
        let im = Jet::constant(0.0).truncated(re.order());
        ComplexJet { re, im }
    }

    pub fn order(&self) -> usize {
        self.re.order()
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn derivative(&self, k: usize) -> Complex64 {
        Complex64::new(self.re.derivative(k), self.im.derivative(k))
    }

    pub fn differentiate(&self) -> Self {
        ComplexJet { re: self.re.differentiate(), im: self.im.differentiate() }
    }

    pub fn truncated(&self, order: usize) -> Self {
        ComplexJet { re: self.re.truncated(order), im: self.im.truncated(order) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ComplexJet { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn mul_real(&self, rhs: &Jet) -> Self {
        ComplexJet { re: self.re.mul(rhs), im: self.im.mul(rhs) }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        ComplexJet {
            re: self.re.scale(z.re).sub(&self.im.scale(z.im)),
            im: self.re.scale(z.im).add(&self.im.scale(z.re)),
        }
    }
}

/// A wavefunction-valued expression: either a closed form or the image of
/// one under a chain of first-order operators.
#[derive(Clone, Debug)]
pub enum XPart {
    Closed(ClosedFormWavefunction),
    Image(Box<ImageNode>),
}

/// `sigma (deriv_coeff(x) d/dx + mult_coeff(x))` applied to `inner`.
#[derive(Clone, Debug)]
pub struct ImageNode {
    pub sigma: Complex64,
    pub deriv_coeff: Coeff,
    pub mult_coeff: Coeff,
    pub inner: XPart,
}

impl XPart {
    pub fn closed(wf: ClosedFormWavefunction) -> Self {
        XPart::Closed(wf)
    }

    pub fn depth(&self) -> usize {
        match self {
            XPart::Closed(_) => 0,
            XPart::Image(node) => 1 + node.inner.depth(),
        }
    }

    /// Apply `sigma (d(x) d/dx + m(x))`, consuming self as the operand.
    pub fn apply(self, sigma: Complex64, deriv_coeff: Coeff, mult_coeff: Coeff) -> Result<XPart> {
        if self.depth() + 1 > MAX_DEPTH {
            return Err(Error::Validation(format!(
                "operator nesting deeper than {MAX_DEPTH} loses derivative orders; \
                 refit the operand to a closed form first"
            )));
        }
        Ok(XPart::Image(Box::new(ImageNode { sigma, deriv_coeff, mult_coeff, inner: self })))
    }

    /// Evaluate as a complex jet carrying derivatives up to `order`.
    pub fn eval(&self, x: f64, order: usize) -> Result<ComplexJet> {
        if order + self.depth() > MAX_ORDER {
            return Err(Error::Validation(format!(
                "depth-{} image cannot supply order {} (jet budget {})",
                self.depth(),
                order,
                MAX_ORDER
            )));
        }
        match self {
            XPart::Closed(wf) => Ok(ComplexJet::from_real(wf.eval_jet(x, order)?)),
            XPart::Image(node) => {
                let inner = node.inner.eval(x, order + 1)?;
                let d_inner = inner.differentiate();
                let dc = node.deriv_coeff.eval_jet(x, order);
                let mc = node.mult_coeff.eval_jet(x, order);
                let combined =
                    d_inner.mul_real(&dc).add(&inner.truncated(order).mul_real(&mc));
                Ok(combined.scale(node.sigma))
            }
        }
    }

    pub fn value(&self, x: f64) -> Result<Complex64> {
        Ok(self.eval(x, 0)?.value())
    }

    pub fn values_on(&self, grid: &Grid) -> Result<Vec<Complex64>> {
        grid.points().iter().map(|&x| self.value(x)).collect()
    }
}
