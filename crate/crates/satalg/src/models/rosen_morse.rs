//! Asymmetric hyperbolic well
//!
//!   V(x) = B tanh(alpha x) - C sech^2(alpha x),   x in (-inf, inf),
//!
//! a tanh-form hyperbolic problem (the half-period-shifted flavor). The
//! even depth C fixes the conserved label m; the odd strength B moves along
//! the s lattice, so every shift generator keeps C and m fixed. B = 0 is
//! admitted as the symmetric-well edge of the lattice, where the problem
//! itself degenerates out of the hyperbolic family but the labels remain.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    grid_count_for, is_gamma_pole, largest_integer_below, sqrt_upper, EnergyLevel,
    GeneratorFamily, Measure, ModelParams, ModelWavefunction, SatelliteLabels, SatelliteMap,
    ShiftGenerator, StateLabel, TypeEView,
};
use crate::error::{Error, Result};
use crate::factorization::{LadderClass, OffsetFlavor, TypeEProblem};
use crate::models::gamma_product_ratio;
use crate::numerics::Grid;
use crate::specfun::{gamma_real, Hyp2F1Spec};
use crate::transform;
use crate::wavefunction::{ClosedFormWavefunction, WaveForm};

fn unit() -> f64 {
    1.0
}

/// Well parameters: odd strength B (any real with |B| < 2C), even depth
/// C > 0, range alpha > 0, and the mass and action scales.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RosenMorseParams {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub alpha: f64,
    #[serde(default = "unit")]
    pub mu: f64,
    #[serde(default = "unit")]
    pub hbar: f64,
}

/// Built asymmetric well with its derived constants.
#[derive(Clone, Debug)]
pub struct RosenMorseModel {
    params: RosenMorseParams,
    /// Dimensionless odd strength 2 mu B / (hbar alpha)^2.
    beta: f64,
    /// Dimensionless even depth 2 mu C / (hbar alpha)^2.
    gamma: f64,
    /// Conserved label: m (m + 1) = gamma.
    m: f64,
    /// Linear coefficient of the hyperbolic equation: q = alpha beta / 2.
    q: f64,
    epsilon: f64,
    n_max: i64,
}

impl RosenMorseModel {
    pub fn new(params: RosenMorseParams) -> Result<Self> {
        for (name, value) in [
            ("C", params.c),
            ("alpha", params.alpha),
            ("mu", params.mu),
            ("hbar", params.hbar),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{name} > 0 violated: got {value}"
                )));
            }
        }
        if !params.b.is_finite() || params.b.abs() >= 2.0 * params.c {
            return Err(Error::Validation(format!(
                "|B| < 2C violated: |{}| >= {}",
                params.b,
                2.0 * params.c
            )));
        }
        let denom = params.hbar * params.hbar * params.alpha * params.alpha;
        let beta = 2.0 * params.mu * params.b / denom;
        let gamma = 2.0 * params.mu * params.c / denom;
        let m = 0.5 * (-1.0 + (1.0 + 4.0 * gamma).sqrt());
        let q = params.alpha * beta / 2.0;
        let epsilon = if params.b >= 0.0 { 1.0 } else { -1.0 };
        let n_max = largest_integer_below(m - (beta.abs() / 2.0).sqrt()).ok_or_else(|| {
            Error::Validation("bound-state count is not finite for these parameters".into())
        })?;
        Ok(RosenMorseModel { params, beta, gamma, m, q, epsilon, n_max })
    }

    pub fn params(&self) -> RosenMorseParams {
        self.params
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The conserved label m.
    pub fn m_label(&self) -> f64 {
        self.m
    }

    pub fn conserved(&self) -> f64 {
        self.m
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn potential(&self, x: f64) -> f64 {
        let u = self.params.alpha * x;
        let sech = 1.0 / u.cosh();
        self.params.b * u.tanh() - self.params.c * sech * sech
    }

    pub fn states(&self) -> Vec<StateLabel> {
        (0..=self.n_max.max(-1))
            .map(|n| StateLabel::vibrational(n as u32))
            .collect()
    }

    fn check_state(&self, state: StateLabel) -> Result<u32> {
        if state.l != 0 {
            return Err(Error::Validation(
                "the asymmetric well carries a single quantum number; l must be 0".into(),
            ));
        }
        if (state.n as i64) > self.n_max {
            return Err(Error::Validation(format!(
                "state {state} outside the bound spectrum (n_max = {})",
                self.n_max
            )));
        }
        Ok(state.n)
    }

    /// Odd decay exponent of level n.
    pub fn a_n(&self, n: u32) -> f64 {
        -self.beta / (2.0 * self.b_n(n))
    }

    /// Even decay exponent of level n (also the chain label m - n).
    pub fn b_n(&self, n: u32) -> f64 {
        self.m - n as f64
    }

    pub fn energy(&self, state: StateLabel) -> Result<f64> {
        let n = self.check_state(state)?;
        let (an, bn) = (self.a_n(n), self.b_n(n));
        let p = &self.params;
        Ok(-(p.hbar * p.hbar * p.alpha * p.alpha / (2.0 * p.mu)) * (an * an + bn * bn))
    }

    pub fn type_e_view(&self, state: StateLabel) -> Result<TypeEView> {
        let n = self.check_state(state)?;
        let problem = TypeEProblem::new(self.params.alpha, self.q, OffsetFlavor::ImaginaryHalfPi)?;
        let lambda =
            2.0 * self.params.mu * self.energy(state)? / (self.params.hbar * self.params.hbar);
        Ok(TypeEView {
            problem,
            equation_label: self.m,
            chain_label: self.b_n(n),
            class: LadderClass::Decreasing,
            lambda,
        })
    }

    pub fn labels(&self, state: StateLabel) -> Result<SatelliteLabels> {
        let n = self.check_state(state)?;
        let bn = self.b_n(n);
        if self.q == 0.0 {
            // symmetric well: the hyperbolic view degenerates but the
            // lattice point is still well defined on the s = 0 axis
            return Ok(SatelliteLabels {
                s: 0.0,
                t: self.epsilon * bn,
                epsilon: self.epsilon,
                casimir_label: self.m,
            });
        }
        let view = self.type_e_view(state)?;
        let (s, t) = transform::satellite_labels(
            &view.problem,
            view.lambda,
            view.termination_label(),
            self.epsilon,
        )?;
        Ok(SatelliteLabels { s, t, epsilon: self.epsilon, casimir_label: self.m })
    }

    /// Normalized x-part of the extended state at an arbitrary lattice
    /// point of the conserved sector. The scale is the magnitude of the
    /// closed normalizer, which continues past the normalizable wedge.
    pub fn extended_x_part(&self, labels: &SatelliteLabels) -> Result<ClosedFormWavefunction> {
        let (s, t, eps) = (labels.s, labels.t, labels.epsilon);
        let m = labels.casimir_label;
        if eps * eps != 1.0 {
            return Err(Error::Validation(format!("epsilon must be +-1, got {eps}")));
        }
        let f = Hyp2F1Spec::new(eps * t - m, eps * t + m + 1.0, eps * (t - s) + 1.0);
        if f.terminating_degree().is_none() {
            return Err(Error::Degenerate(format!(
                "extended x-part does not terminate at labels ({s}, {t})"
            )));
        }
        if is_gamma_pole(f.c) {
            return Err(Error::Degenerate(format!(
                "lower hypergeometric parameter hits a pole at labels ({s}, {t})"
            )));
        }
        let gr = gamma_product_ratio(
            &[m + eps * t + 1.0, m - eps * s + 1.0],
            &[m - eps * t + 1.0, m + eps * s + 1.0],
        )?;
        let alpha = self.params.alpha;
        let rad = eps * alpha * (t - s) * (t + s) * gr / t;
        if rad == 0.0 {
            return Err(Error::Degenerate(format!(
                "normalizer vanishes at labels ({s}, {t}); the lattice ends here"
            )));
        }
        let scale = rad.abs().sqrt() / (2f64.powf(eps * t) * gamma_real(f.c)?).abs();
        Ok(ClosedFormWavefunction::new(
            scale,
            WaveForm::RosenMorseLike { alpha, a: -eps * s, b: eps * t, f },
        ))
    }

    pub fn eigenfunction(&self, state: StateLabel) -> Result<ModelWavefunction> {
        let labels = self.labels(state)?;
        Ok(ModelWavefunction {
            x_part: self.extended_x_part(&labels)?,
            measure: Measure::Dx { scale: 1.0 },
        })
    }

    /// Closed-form shift coefficient on normalized extended states. Factors
    /// within 1e-12 of zero are treated as exact endpoint zeros.
    pub fn predicted_ladder_coefficient(
        &self,
        labels: &SatelliteLabels,
        gen: ShiftGenerator,
    ) -> Result<Complex64> {
        let (s, t, eps) = (labels.s, labels.t, labels.epsilon);
        let m = labels.casimir_label;
        let dir = gen.direction();
        let snap = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
        let (num_factors, den_factors, sign): (Vec<f64>, Vec<f64>, f64) = match gen.family() {
            GeneratorFamily::S => (
                vec![t - s, t + s, m - dir * s, m + dir * s + 1.0],
                vec![t - s - dir, t + s + dir],
                eps,
            ),
            GeneratorFamily::T => (
                vec![t - s, t + s, t + dir, m - dir * t, m + dir * t + 1.0],
                vec![t, t - s + dir, t + s + dir],
                -eps,
            ),
        };
        let num: f64 = num_factors.into_iter().map(snap).product();
        let den: f64 = den_factors.into_iter().map(snap).product();
        if den == 0.0 {
            return Err(Error::Degenerate(format!(
                "target normalizer vanishes for {gen} at labels ({s}, {t})"
            )));
        }
        if num == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(Complex64::new(0.0, sign) * sqrt_upper(num / den))
    }

    pub fn satellite_parameter_map(
        &self,
        state: StateLabel,
        gen: ShiftGenerator,
    ) -> Result<SatelliteMap> {
        let labels = self.labels(state)?;
        let target = labels.shifted(gen);
        let p = &self.params;
        // the mapped odd strength through the label route B' = s' t' hbar^2 alpha^2 / mu,
        // which agrees with B (s +- 1)/s resp. B (t +- 1)/t and covers B = 0
        let b2 = target.s * target.t * p.hbar * p.hbar * p.alpha * p.alpha / p.mu;
        let n2 = match gen.family() {
            GeneratorFamily::S => state.n as i64,
            GeneratorFamily::T => state.n as i64 - (gen.direction() * self.epsilon) as i64,
        };
        let mapped = RosenMorseParams { b: b2, ..*p };
        let rebuilt = RosenMorseModel::new(mapped);
        let conserved_after = rebuilt.as_ref().map(|m2| m2.conserved()).unwrap_or(f64::NAN);
        let mapped_state = (n2 >= 0).then(|| StateLabel::vibrational(n2 as u32));
        let normalizable = match (&rebuilt, mapped_state) {
            (Ok(m2), Some(st)) => (st.n as i64) <= m2.n_max(),
            _ => false,
        };
        Ok(SatelliteMap {
            generator: gen,
            params: ModelParams::RosenMorse(mapped),
            state: mapped_state,
            labels: (target.s, target.t),
            conserved_before: self.m,
            conserved_after,
            normalizable,
        })
    }

    pub fn default_grid(&self) -> Result<Grid> {
        let w = 12.0 / self.params.alpha;
        Grid::uniform(-w, w, 4001)
    }

    pub fn verification_grid(&self, state: StateLabel) -> Result<Grid> {
        let n = self.check_state(state)?;
        let alpha = self.params.alpha;
        let rate = 2.0 * alpha * (self.b_n(n) - self.a_n(n).abs());
        let w = (12.0 / alpha).max(30.0 / rate);
        Grid::uniform(-w, w, grid_count_for(2.0 * w, 0.006 / alpha, 4001))
    }

    pub fn grid_for_labels(&self, labels: &SatelliteLabels) -> Result<Grid> {
        let alpha = self.params.alpha;
        let gap = labels.t.abs() - labels.s.abs();
        if gap <= 0.05 {
            // no usable decay: measure on a bounded window instead
            let w = 6.0 / alpha;
            return Grid::uniform(-w, w, 2001);
        }
        let w = (12.0 / alpha).max(15.0 / (alpha * gap));
        Grid::uniform(-w, w, grid_count_for(2.0 * w, 0.006 / alpha, 4001))
    }

    pub fn spectrum(&self) -> Result<Vec<EnergyLevel>> {
        self.states()
            .into_iter()
            .map(|state| {
                Ok(EnergyLevel {
                    state,
                    energy: self.energy(state)?,
                    lambda: self.type_e_view(state)?.lambda,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reference() -> RosenMorseModel {
        RosenMorseModel::new(RosenMorseParams { b: 3.0, c: 6.0, alpha: 1.0, mu: 1.0, hbar: 1.0 })
            .unwrap()
    }

    #[test]
    fn derived_constants_of_the_reference_well() {
        let m = reference();
        assert_eq!(m.beta(), 6.0);
        assert_eq!(m.gamma(), 12.0);
        assert_eq!(m.m_label(), 3.0);
        assert_eq!(m.q(), 3.0);
        assert_eq!(m.epsilon(), 1.0);
        assert_eq!(m.n_max(), 1);
    }

    #[test]
    fn odd_strength_bound_is_enforced() {
        let bad = RosenMorseModel::new(RosenMorseParams {
            b: 13.0,
            c: 6.0,
            alpha: 1.0,
            mu: 1.0,
            hbar: 1.0,
        });
        assert!(matches!(bad, Err(Error::Validation(ref msg)) if msg.contains("|B| < 2C violated")));
    }

    #[test]
    fn energies_are_exact_for_the_reference_well() {
        let m = reference();
        assert_eq!(m.energy(StateLabel::vibrational(0)).unwrap(), -5.0);
        assert_eq!(m.energy(StateLabel::vibrational(1)).unwrap(), -3.125);
        assert!(m.energy(StateLabel::vibrational(2)).is_err());
    }

    #[test]
    fn ladder_eigenvalue_agrees_by_both_routes() {
        let m = reference();
        for state in m.states() {
            let view = m.type_e_view(state).unwrap();
            let direct = view.problem.l_of(view.termination_label());
            assert_relative_eq!(view.lambda, direct, max_relative = 1e-12);
            assert_eq!(view.class, LadderClass::Decreasing);
            assert_eq!(
                view.problem.ladder_class(view.termination_label()).unwrap(),
                LadderClass::Decreasing
            );
        }
        let v0 = m.type_e_view(StateLabel::vibrational(0)).unwrap();
        assert_eq!(v0.lambda, -10.0);
    }

    #[test]
    fn labels_recombine_the_decay_exponents() {
        let m = reference();
        let l0 = m.labels(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(l0.s, 1.0, max_relative = 1e-12);
        assert_relative_eq!(l0.t, 3.0, max_relative = 1e-12);
        let l1 = m.labels(StateLabel::vibrational(1)).unwrap();
        assert_relative_eq!(l1.s, 1.5, max_relative = 1e-12);
        assert_relative_eq!(l1.t, 2.0, max_relative = 1e-12);
        for state in m.states() {
            let lab = m.labels(state).unwrap();
            assert_relative_eq!(lab.s, -m.epsilon() * m.a_n(state.n), max_relative = 1e-12);
            assert_relative_eq!(lab.t, m.epsilon() * m.b_n(state.n), max_relative = 1e-12);
        }
    }

    #[test]
    fn mirrored_strength_flips_the_sign_convention() {
        let m = RosenMorseModel::new(RosenMorseParams {
            b: -3.0,
            c: 6.0,
            alpha: 1.0,
            mu: 1.0,
            hbar: 1.0,
        })
        .unwrap();
        assert_eq!(m.epsilon(), -1.0);
        assert_eq!(m.energy(StateLabel::vibrational(0)).unwrap(), -5.0);
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(lab.s, 1.0, max_relative = 1e-12);
        assert_relative_eq!(lab.t, -3.0, max_relative = 1e-12);
    }

    #[test]
    fn symmetric_well_sits_on_the_s_axis() {
        let m = RosenMorseModel::new(RosenMorseParams {
            b: 0.0,
            c: 6.0,
            alpha: 1.0,
            mu: 1.0,
            hbar: 1.0,
        })
        .unwrap();
        assert_eq!(m.epsilon(), 1.0);
        assert_eq!(m.n_max(), 2);
        assert_eq!(m.energy(StateLabel::vibrational(0)).unwrap(), -4.5);
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        assert_eq!((lab.s, lab.t), (0.0, 3.0));
        // the hyperbolic view itself degenerates at q = 0
        assert!(m.type_e_view(StateLabel::vibrational(0)).is_err());
        // but the extended state is a plain even sech power
        let wf = m.eigenfunction(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(wf.x_part.scale, 0.968246, max_relative = 1e-5);
    }

    #[test]
    fn closed_normalizers_match_the_exact_integrals() {
        let m = reference();
        // ground state: N^2 = 5/8
        let wf0 = m.eigenfunction(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(wf0.x_part.scale, 0.625f64.sqrt(), max_relative = 1e-12);
        // first excited state against the pinned value
        let wf1 = m.eigenfunction(StateLabel::vibrational(1)).unwrap();
        assert_relative_eq!(wf1.x_part.scale, 0.46065, max_relative = 1e-4);
        // quadrature confirms both on their verification grids
        for state in m.states() {
            let wf = m.eigenfunction(state).unwrap();
            let grid = m.verification_grid(state).unwrap();
            assert_relative_eq!(wf.norm_squared(&grid).unwrap(), 1.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn shift_coefficients_match_the_closed_values() {
        let m = reference();
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        let c = m.predicted_ladder_coefficient(&lab, ShiftGenerator::SPlus).unwrap();
        assert_relative_eq!(c.re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(c.im, 4.0, max_relative = 1e-14);
        let c = m.predicted_ladder_coefficient(&lab, ShiftGenerator::SMinus).unwrap();
        assert_relative_eq!(c.im, (96.0f64 / 9.0).sqrt(), max_relative = 1e-14);
        let c = m.predicted_ladder_coefficient(&lab, ShiftGenerator::TMinus).unwrap();
        assert_relative_eq!(c.im, -(96.0f64 / 9.0).sqrt(), max_relative = 1e-14);
        // the chain ends exactly at t = m
        let c = m.predicted_ladder_coefficient(&lab, ShiftGenerator::TPlus).unwrap();
        assert_eq!(c, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn continued_coefficient_past_the_wedge_is_real() {
        let m = reference();
        let lab = m.labels(StateLabel::vibrational(1)).unwrap();
        let c = m.predicted_ladder_coefficient(&lab, ShiftGenerator::SPlus).unwrap();
        // radicand (t-s)(t+s)(m-s)(m+s+1) / ((t-s-1)(t+s+1)) < 0 here
        let expect = (0.5f64 * 3.5 * 1.5 * 5.5 / (0.5 * 4.5)).sqrt();
        assert_relative_eq!(c.re, -expect, max_relative = 1e-12);
        assert_relative_eq!(c.im, 0.0, epsilon = 1e-14);
        // its target still has a finite continued normalizer
        let target = lab.shifted(ShiftGenerator::SPlus);
        assert!(m.extended_x_part(&target).is_ok());
    }

    #[test]
    fn flipped_convention_swaps_raising_and_lowering() {
        let m = reference();
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        let flipped = lab.flipped();
        for gen in ShiftGenerator::ALL {
            let phys = m.predicted_ladder_coefficient(&lab, gen).unwrap();
            let swap = m.predicted_ladder_coefficient(&flipped, gen.partner()).unwrap();
            assert_relative_eq!(phys.norm(), swap.norm(), epsilon = 1e-12);
        }
    }

    #[test]
    fn lattice_ends_where_the_normalizer_vanishes() {
        let m = reference();
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        let above_top = lab.shifted(ShiftGenerator::TPlus);
        assert!(matches!(
            m.extended_x_part(&above_top),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn maps_move_one_lattice_coordinate() {
        let m = reference();
        let n0 = StateLabel::vibrational(0);

        let map = m.satellite_parameter_map(n0, ShiftGenerator::SPlus).unwrap();
        let mapped = match map.params {
            ModelParams::RosenMorse(p) => p,
            ref other => panic!("unexpected family {other:?}"),
        };
        assert_relative_eq!(mapped.b, 6.0, max_relative = 1e-12);
        assert_eq!(mapped.c, 6.0);
        assert_eq!(map.state, Some(n0));
        assert!(map.normalizable);
        let rebuilt = RosenMorseModel::new(mapped).unwrap();
        let lab2 = rebuilt.labels(n0).unwrap();
        assert_relative_eq!(lab2.s, 2.0, max_relative = 1e-10);
        assert_relative_eq!(lab2.t, 3.0, max_relative = 1e-10);

        // stepping down in s lands exactly on the symmetric well
        let map = m.satellite_parameter_map(n0, ShiftGenerator::SMinus).unwrap();
        match map.params {
            ModelParams::RosenMorse(p) => assert_eq!(p.b, 0.0),
            ref other => panic!("unexpected family {other:?}"),
        }
        assert!(map.normalizable);

        let map = m.satellite_parameter_map(n0, ShiftGenerator::TMinus).unwrap();
        match map.params {
            ModelParams::RosenMorse(p) => assert_relative_eq!(p.b, 2.0, max_relative = 1e-12),
            ref other => panic!("unexpected family {other:?}"),
        }
        assert_eq!(map.state, Some(StateLabel::vibrational(1)));
        assert!(map.normalizable);
        assert_relative_eq!(map.conserved_after, 3.0, max_relative = 1e-12);

        // raising t above the conserved label leaves the spectrum
        let map = m.satellite_parameter_map(n0, ShiftGenerator::TPlus).unwrap();
        assert_eq!(map.state, None);
        assert!(!map.normalizable);

        // from n = 1, raising s overshoots the mapped well's bound range
        let map = m
            .satellite_parameter_map(StateLabel::vibrational(1), ShiftGenerator::SPlus)
            .unwrap();
        match map.params {
            ModelParams::RosenMorse(p) => assert_relative_eq!(p.b, 5.0, max_relative = 1e-12),
            ref other => panic!("unexpected family {other:?}"),
        }
        assert_eq!(map.state, Some(StateLabel::vibrational(1)));
        assert!(!map.normalizable);
    }

    #[test]
    fn potential_shape_is_the_declared_sum() {
        let m = reference();
        let x = 0.8f64;
        let expect = 3.0 * x.tanh() - 6.0 / (x.cosh() * x.cosh());
        assert_relative_eq!(m.potential(x), expect, max_relative = 1e-14);
    }

    #[test]
    fn slow_tails_widen_the_verification_grid() {
        let m = reference();
        let g0 = m.verification_grid(StateLabel::vibrational(0)).unwrap();
        assert_eq!((g0.lo(), g0.hi()), (-12.0, 12.0));
        // n = 1 decays like e^{-|x|} on the slow side, so the grid stretches
        let g1 = m.verification_grid(StateLabel::vibrational(1)).unwrap();
        assert_eq!((g1.lo(), g1.hi()), (-30.0, 30.0));
        assert!(g1.spacing() <= 0.006001);
    }
}
