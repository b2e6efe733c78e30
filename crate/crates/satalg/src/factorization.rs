//! Ladder factorization of the hyperbolic Schrodinger family
//!
//!   -y'' + r(x, m) y = lambda y,
//!   k(x, m) = m a coth(a x) + q/m,   L(m) = -a^2 m^2 - q^2 / m^2,
//!
//! together with the half-period imaginary shift that turns coth into tanh.
//! The operators H(+/-)(m) = (+/- d/dx + k(x, m)) connect solutions of
//! neighboring m at fixed lambda:
//!
//!   H-(m+1) Y^m = sqrt(lambda - L(m+1)) Y^(m+1),
//!   H+(m)   Y^m = sqrt(lambda - L(m))   Y^(m-1),
//!
//! and the products H+(m+1) H-(m+1) and H-(m) H+(m) act diagonally, which is
//! exactly what `factorization_residuals` measures.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{sup_norm, Grid};
use crate::operator::{Coeff, XPart};

/// Real form chosen for the hyperbolic coefficient functions. The imaginary
/// half-period shift x -> x + i pi / (2a) replaces coth by tanh and keeps
/// everything real on the whole line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffsetFlavor {
    None,
    ImaginaryHalfPi,
}

/// Monotonicity of L on the working label range, which decides where a
/// ladder terminates: an increasing L is capped above (annihilation by the
/// raising operator at the top label), a decreasing one below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderClass {
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, Debug)]
pub struct TypeEProblem {
    alpha: f64,
    q: f64,
    offset: OffsetFlavor,
}

impl TypeEProblem {
    pub fn new(alpha: f64, q: f64, offset: OffsetFlavor) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Validation(format!(
                "hyperbolic scale must be positive and finite, got {alpha}"
            )));
        }
        if q == 0.0 || !q.is_finite() {
            return Err(Error::Validation(format!(
                "linear coefficient q must be nonzero and finite, got {q}"
            )));
        }
        Ok(TypeEProblem { alpha, q, offset })
    }

    /// Build from the complex frequency `a` of the trigonometric normal form.
    /// Only purely imaginary `a = i alpha` (the hyperbolic branch) is
    /// representable here; a genuinely trigonometric problem is rejected.
    pub fn from_link_parameter(a: Complex64, q: f64, offset: OffsetFlavor) -> Result<Self> {
        if a.re.abs() > 1e-12 * a.im.abs() {
            return Err(Error::Domain(format!(
                "link parameter a = {a} has a real part: trigonometric branch is not supported"
            )));
        }
        Self::new(a.im, q, offset)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn offset(&self) -> OffsetFlavor {
        self.offset
    }

    /// Ladder eigenvalue L(m) = -a^2 m^2 - q^2 / m^2.
    pub fn l_of(&self, m: f64) -> f64 {
        assert!(m != 0.0, "L(m) is singular at m = 0");
        -self.alpha * self.alpha * m * m - self.q * self.q / (m * m)
    }

    /// lambda - L(m): the squared coefficient of the normalized ladder step
    /// through label m.
    pub fn coefficient_sq(&self, lambda: f64, m: f64) -> f64 {
        lambda - self.l_of(m)
    }

    /// k(x, m), the multiplicative part of the ladder operators at label m.
    pub fn k_coeff(&self, m: f64) -> Result<Coeff> {
        if m == 0.0 {
            return Err(Error::Degenerate("ladder label m = 0 makes k(x, m) singular".into()));
        }
        let hyper = match self.offset {
            OffsetFlavor::None => Coeff::Coth { freq: self.alpha, scale: m * self.alpha },
            OffsetFlavor::ImaginaryHalfPi => {
                Coeff::Tanh { freq: self.alpha, scale: m * self.alpha }
            }
        };
        Ok(Coeff::Sum(vec![hyper, Coeff::Const(self.q / m)]))
    }

    /// H+(m) y = (d/dx + k(x, m)) y.
    pub fn apply_h_plus(&self, m: f64, y: XPart) -> Result<XPart> {
        y.apply(Complex64::new(1.0, 0.0), Coeff::Const(1.0), self.k_coeff(m)?)
    }

    /// H-(m) y = (-d/dx + k(x, m)) y.
    pub fn apply_h_minus(&self, m: f64, y: XPart) -> Result<XPart> {
        y.apply(Complex64::new(1.0, 0.0), Coeff::Const(-1.0), self.k_coeff(m)?)
    }

    /// Monotonicity of L at label m.
    pub fn ladder_class(&self, m: f64) -> Result<LadderClass> {
        let dl = -2.0 * self.alpha * self.alpha * m + 2.0 * self.q * self.q / (m * m * m);
        let scale = (self.alpha * self.alpha * m.abs()).max(self.q.abs() / (m * m)).max(1e-300);
        if dl.abs() < 1e-10 * scale {
            return Err(Error::Degenerate(format!(
                "L is stationary at m = {m}; ladder direction undefined"
            )));
        }
        Ok(if dl > 0.0 { LadderClass::Increasing } else { LadderClass::Decreasing })
    }

    /// The two positive labels j with L(j) = lambda, smaller first. These are
    /// the termination labels of the two ladder directions and coincide with
    /// the magnitudes of the satellite labels (|s|, |t|) up to ordering.
    pub fn chain_roots(&self, lambda: f64) -> Result<(f64, f64)> {
        let a2 = self.alpha * self.alpha;
        let disc = lambda * lambda - 4.0 * a2 * self.q * self.q;
        if lambda >= 0.0 || disc < 0.0 {
            return Err(Error::Degenerate(format!(
                "no real termination labels: lambda = {lambda} is above the ladder range"
            )));
        }
        let root = disc.sqrt();
        let j2_small = (-lambda - root) / (2.0 * a2);
        let j2_large = (-lambda + root) / (2.0 * a2);
        Ok((j2_small.sqrt(), j2_large.sqrt()))
    }

    /// Sup-normalized residuals of the two factorization identities applied
    /// to `y` (an eigenfunction at `lambda` of the equation with label `m`):
    ///
    ///   res1:  H+(m+1) H-(m+1) y - (lambda - L(m+1)) y,
    ///   res2:  H-(m)   H+(m)   y - (lambda - L(m))   y,
    ///
    /// both divided by sup|y| max(1, |lambda - L|) over the grid interior.
    pub fn factorization_residuals(
        &self,
        y: &XPart,
        lambda: f64,
        m: f64,
        grid: &Grid,
    ) -> Result<(f64, f64)> {
        let y_vals = y.values_on(grid)?;
        let y_sup = sup_norm(&y_vals.iter().map(|v| v.norm()).collect::<Vec<_>>());
        if y_sup == 0.0 {
            return Err(Error::Degenerate("residuals of the zero function are vacuous".into()));
        }

        let up_then_down =
            self.apply_h_plus(m + 1.0, self.apply_h_minus(m + 1.0, y.clone())?)?;
        let down_then_up = self.apply_h_minus(m, self.apply_h_plus(m, y.clone())?)?;

        let res1 = sup_residual_against(
            &up_then_down,
            &y_vals,
            y_sup,
            self.coefficient_sq(lambda, m + 1.0),
            grid,
        )?;
        let res2 =
            sup_residual_against(&down_then_up, &y_vals, y_sup, self.coefficient_sq(lambda, m), grid)?;
        Ok((res1, res2))
    }

    /// The raised identity alone. At m = 0 the coefficient k(x, m) of the
    /// lowered identity is singular, but H+(m+1) H-(m+1) still exists; this
    /// is the res1 half of [`Self::factorization_residuals`].
    pub fn factorization_residual_up(
        &self,
        y: &XPart,
        lambda: f64,
        m: f64,
        grid: &Grid,
    ) -> Result<f64> {
        let y_vals = y.values_on(grid)?;
        let y_sup = sup_norm(&y_vals.iter().map(|v| v.norm()).collect::<Vec<_>>());
        if y_sup == 0.0 {
            return Err(Error::Degenerate("residuals of the zero function are vacuous".into()));
        }
        let up_then_down =
            self.apply_h_plus(m + 1.0, self.apply_h_minus(m + 1.0, y.clone())?)?;
        sup_residual_against(&up_then_down, &y_vals, y_sup, self.coefficient_sq(lambda, m + 1.0), grid)
    }
}

/// sup over the grid interior of |op - shift y| / (sup|y| max(1, |shift|)).
fn sup_residual_against(
    op: &XPart,
    y_vals: &[Complex64],
    y_sup: f64,
    shift: f64,
    grid: &Grid,
) -> Result<f64> {
    let op_vals = op.values_on(grid)?;
    let scale = y_sup * shift.abs().max(1.0);
    let mut worst = 0.0f64;
    for i in grid.interior() {
        worst = worst.max((op_vals[i] - y_vals[i] * shift).norm() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::Hyp2F1Spec;
    use crate::wavefunction::{ClosedFormWavefunction, WaveForm};
    use approx::assert_relative_eq;

    /// e^(-x) cosh(x)^(-3): eigenfunction at lambda = -10 of the tanh-form
    /// equation with label m = 3 (q = 3).
    fn tanh_ground() -> XPart {
        XPart::closed(ClosedFormWavefunction::new(
            1.0,
            WaveForm::RosenMorseLike {
                alpha: 1.0,
                a: -1.0,
                b: 3.0,
                f: Hyp2F1Spec::new(0.0, 7.0, 1.0),
            },
        ))
    }

    /// sinh(x) e^((1 - nu/2) x) F(-1, 1 + nu/2; 2; 1 - e^(-2x)) with
    /// nu = 6.25: eigenfunction at lambda = -4 - nu^2/4 of the coth-form
    /// equation with label m = 0 (q = -nu).
    fn coth_excited() -> XPart {
        XPart::closed(ClosedFormWavefunction::new(
            1.0,
            WaveForm::KeplerLike {
                p: 1.0,
                kappa: 1.0 - 3.125,
                f: Hyp2F1Spec::new(-1.0, 1.0 + 3.125, 2.0),
            },
        ))
    }

    #[test]
    fn construction_validates_parameters() {
        assert!(TypeEProblem::new(1.0, 3.0, OffsetFlavor::None).is_ok());
        assert!(TypeEProblem::new(0.0, 3.0, OffsetFlavor::None).is_err());
        assert!(TypeEProblem::new(-1.0, 3.0, OffsetFlavor::None).is_err());
        assert!(TypeEProblem::new(1.0, 0.0, OffsetFlavor::None).is_err());
    }

    #[test]
    fn only_the_hyperbolic_branch_is_accepted() {
        let ok = TypeEProblem::from_link_parameter(
            Complex64::new(0.0, 2.5),
            -1.0,
            OffsetFlavor::None,
        )
        .unwrap();
        assert_relative_eq!(ok.alpha(), 2.5);
        assert!(TypeEProblem::from_link_parameter(
            Complex64::new(1.0, 0.0),
            -1.0,
            OffsetFlavor::None
        )
        .is_err());
    }

    #[test]
    fn ladder_eigenvalue_and_roots_are_mutually_inverse() {
        let p = TypeEProblem::new(1.0, 3.0, OffsetFlavor::ImaginaryHalfPi).unwrap();
        assert_relative_eq!(p.l_of(3.0), -10.0, max_relative = 1e-15);
        let (small, large) = p.chain_roots(-6.25).unwrap();
        assert_relative_eq!(small, 1.5, max_relative = 1e-12);
        assert_relative_eq!(large, 2.0, max_relative = 1e-12);
        assert_relative_eq!(p.l_of(small), -6.25, max_relative = 1e-12);
        assert!(p.chain_roots(10.0).is_err());
        // lambda above the minimum of |L| on the positive axis: no real roots
        assert!(p.chain_roots(-5.0).is_err());
    }

    #[test]
    fn ladder_class_follows_the_slope_of_l() {
        let p = TypeEProblem::new(1.0, 3.0, OffsetFlavor::ImaginaryHalfPi).unwrap();
        assert_eq!(p.ladder_class(3.0).unwrap(), LadderClass::Decreasing);
        let k = TypeEProblem::new(1.0, -6.25, OffsetFlavor::None).unwrap();
        assert_eq!(k.ladder_class(1.0).unwrap(), LadderClass::Increasing);
        // |m| = sqrt(|q|/alpha) is the turning point
        let turning = TypeEProblem::new(1.0, 16.0, OffsetFlavor::None).unwrap();
        assert!(turning.ladder_class(4.0).is_err());
    }

    #[test]
    fn tanh_ground_state_is_annihilated_at_its_own_label() {
        let p = TypeEProblem::new(1.0, 3.0, OffsetFlavor::ImaginaryHalfPi).unwrap();
        let img = p.apply_h_plus(3.0, tanh_ground()).unwrap();
        for &x in &[-3.0, 0.0, 1.7, 6.0] {
            assert!(img.value(x).unwrap().norm() < 1e-13);
        }
    }

    #[test]
    fn tanh_factorization_residuals_vanish() {
        let p = TypeEProblem::new(1.0, 3.0, OffsetFlavor::ImaginaryHalfPi).unwrap();
        let grid = Grid::uniform(-12.0, 12.0, 1501).unwrap();
        let (res1, res2) = p
            .factorization_residuals(&tanh_ground(), -10.0, 3.0, &grid)
            .unwrap();
        assert!(res1 < 1e-12, "res1 = {res1}");
        assert!(res2 < 1e-12, "res2 = {res2}");
    }

    #[test]
    fn coth_chain_steps_to_the_neighboring_label() {
        // H-(1) maps the label-0 eigenfunction to a multiple of the label-1
        // one at the same lambda: sinh^2(x) e^(-3.125 x).
        let p = TypeEProblem::new(1.0, -6.25, OffsetFlavor::None).unwrap();
        let img = p.apply_h_minus(1.0, coth_excited()).unwrap();
        let target = |x: f64| x.sinh().powi(2) * (-3.125 * x).exp();
        let c1 = img.value(0.7).unwrap().re / target(0.7);
        let c2 = img.value(2.9).unwrap().re / target(2.9);
        assert_relative_eq!(c1, c2, max_relative = 1e-10);
    }

    #[test]
    fn coth_factorization_residual_vanishes_on_the_raising_product() {
        let p = TypeEProblem::new(1.0, -6.25, OffsetFlavor::None).unwrap();
        let lambda = -4.0 - 6.25 * 6.25 / 4.0;
        let grid = Grid::uniform(1e-6, 40.0, 1501).unwrap();
        // the lowering product at m = 0 is singular, so check res1 manually
        let y = coth_excited();
        let up_down = p
            .apply_h_plus(1.0, p.apply_h_minus(1.0, y.clone()).unwrap())
            .unwrap();
        let shift = p.coefficient_sq(lambda, 1.0);
        assert_relative_eq!(shift, 26.296875, max_relative = 1e-12);
        let y_vals = y.values_on(&grid).unwrap();
        let op_vals = up_down.values_on(&grid).unwrap();
        let y_sup = y_vals.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let mut worst = 0.0f64;
        for i in grid.interior() {
            worst = worst.max((op_vals[i] - y_vals[i] * shift).norm() / (y_sup * shift));
        }
        assert!(worst < 1e-12, "residual {worst}");
    }

    #[test]
    fn squared_norm_of_ladder_image_matches_coefficient() {
        // mutual adjointness: ||H-(1) y||^2 = (lambda - L(1)) ||y||^2
        use crate::numerics::integrate;
        let p = TypeEProblem::new(1.0, -6.25, OffsetFlavor::None).unwrap();
        let lambda = -4.0 - 6.25 * 6.25 / 4.0;
        let grid = Grid::uniform(1e-6, 40.0, 16001).unwrap();
        let y = coth_excited();
        let img = p.apply_h_minus(1.0, y.clone()).unwrap();
        let y2: Vec<f64> = y.values_on(&grid).unwrap().iter().map(|v| v.norm_sqr()).collect();
        let i2: Vec<f64> = img.values_on(&grid).unwrap().iter().map(|v| v.norm_sqr()).collect();
        let ratio = integrate(grid.spacing(), &i2) / integrate(grid.spacing(), &y2);
        assert_relative_eq!(ratio, p.coefficient_sq(lambda, 1.0), max_relative = 1e-8);
    }

    #[test]
    fn zero_label_ladder_is_rejected() {
        let p = TypeEProblem::new(1.0, -6.25, OffsetFlavor::None).unwrap();
        assert!(p.k_coeff(0.0).is_err());
        assert!(p.apply_h_plus(0.0, tanh_ground()).is_err());
    }
}
