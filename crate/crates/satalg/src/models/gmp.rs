//! Exponential radial well (generalized Morse form)
//!
//!   V(r) = D (1 - b/(e^{ar} - 1))^2,   r in (0, inf),
//!
//! which becomes a coth-form hyperbolic problem with alpha = 1 in the
//! half-log coordinate x = a r / 2. The vibrational label n runs over the
//! finitely many bound states; every shift generator preserves k b^2.

use serde::{Deserialize, Serialize};

use super::{
    grid_count_for, largest_integer_below, EnergyLevel, Measure, ModelWavefunction,
    SatelliteLabels, SatelliteMap, ShiftGenerator, StateLabel, TypeEView,
};
use crate::error::{Error, Result};
use crate::factorization::{LadderClass, OffsetFlavor, TypeEProblem};
use crate::numerics::Grid;
use crate::specfun::Hyp2F1Spec;
use crate::transform;
use crate::wavefunction::{ClosedFormWavefunction, WaveForm};
use crate::models::{GeneratorFamily, ModelParams};

fn unit() -> f64 {
    1.0
}

/// Well parameters: depth D, shape b, range a (all positive), and the mass
/// and action scales.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GmpParams {
    #[serde(rename = "D")]
    pub d: f64,
    pub b: f64,
    pub a: f64,
    #[serde(default = "unit")]
    pub mu: f64,
    #[serde(default = "unit")]
    pub hbar: f64,
}

/// Built exponential well with its derived constants.
#[derive(Clone, Debug)]
pub struct GmpModel {
    params: GmpParams,
    /// Dimensionless depth 2 mu D / (a hbar)^2.
    k: f64,
    /// Root label with m (m + 1) = k b^2.
    m: f64,
    /// Linear coefficient of the hyperbolic equation: q = -k b (b + 2).
    q: f64,
    n_max: i64,
}

impl GmpModel {
    pub fn new(params: GmpParams) -> Result<Self> {
        for (name, value) in [
            ("D", params.d),
            ("b", params.b),
            ("a", params.a),
            ("mu", params.mu),
            ("hbar", params.hbar),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{name} > 0 violated: got {value}"
                )));
            }
        }
        let k = 2.0 * params.mu * params.d / (params.a * params.a * params.hbar * params.hbar);
        let kb2 = k * params.b * params.b;
        let m = 0.5 * (-1.0 + (1.0 + 4.0 * kb2).sqrt());
        let q = -k * params.b * (params.b + 2.0);
        let n_max = largest_integer_below((-q).sqrt() - m - 1.0).ok_or_else(|| {
            Error::Validation("bound-state count is not finite for these parameters".into())
        })?;
        Ok(GmpModel { params, k, m, q, n_max })
    }

    pub fn params(&self) -> GmpParams {
        self.params
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The fixed equation label m.
    pub fn m_label(&self) -> f64 {
        self.m
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    /// k b^2, the quantity every shift generator preserves.
    pub fn conserved(&self) -> f64 {
        self.k * self.params.b * self.params.b
    }

    pub fn potential(&self, r: f64) -> f64 {
        let y = (self.params.a * r).exp_m1();
        let w = 1.0 - self.params.b / y;
        self.params.d * w * w
    }

    pub fn states(&self) -> Vec<StateLabel> {
        (0..=self.n_max.max(-1))
            .map(|n| StateLabel::vibrational(n as u32))
            .collect()
    }

    fn check_state(&self, state: StateLabel) -> Result<u32> {
        if state.l != 0 {
            return Err(Error::Validation(
                "the exponential well carries a single quantum number; l must be 0".into(),
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

    /// Chain termination label for level n.
    fn capital_lambda(&self, n: u32) -> f64 {
        n as f64 + self.m + 1.0
    }

    /// Dimensionless decay exponent of level n.
    pub fn alpha_n(&self, n: u32) -> f64 {
        let lam = self.capital_lambda(n);
        0.5 * (-self.q / lam - lam)
    }

    pub fn beta_n(&self, n: u32) -> f64 {
        let lam = self.capital_lambda(n);
        0.5 * (-self.q / lam + lam)
    }

    pub fn energy(&self, state: StateLabel) -> Result<f64> {
        let n = self.check_state(state)?;
        let lam = self.capital_lambda(n);
        let p = &self.params;
        let scale = p.a * p.a * p.hbar * p.hbar / (8.0 * p.mu);
        let w = lam + self.q / lam;
        Ok(p.d - scale * w * w)
    }

    pub fn type_e_view(&self, state: StateLabel) -> Result<TypeEView> {
        let n = self.check_state(state)?;
        let problem = TypeEProblem::new(1.0, self.q, OffsetFlavor::None)?;
        let p = &self.params;
        // dimensionless energy, then the ladder eigenvalue route through it
        let eps_n = 2.0 * p.mu * self.energy(state)? / (p.a * p.a * p.hbar * p.hbar);
        let lambda = 4.0 * (eps_n - self.k) + 2.0 * self.q;
        Ok(TypeEView {
            problem,
            equation_label: self.m,
            chain_label: n as f64 + self.m,
            class: LadderClass::Increasing,
            lambda,
        })
    }

    pub fn labels(&self, state: StateLabel) -> Result<SatelliteLabels> {
        let view = self.type_e_view(state)?;
        let (s, t) = transform::satellite_labels(
            &view.problem,
            view.lambda,
            view.termination_label(),
            -1.0,
        )?;
        Ok(SatelliteLabels { s, t, epsilon: -1.0, casimir_label: self.m })
    }

    /// Normalized eigenfunction of level n in the half-log coordinate. The
    /// normalizer is fixed by quadrature against the physical measure.
    pub fn eigenfunction(&self, state: StateLabel) -> Result<ModelWavefunction> {
        let n = self.check_state(state)?;
        let al = self.alpha_n(n);
        let be = self.beta_n(n);
        let f = Hyp2F1Spec::new(
            -(n as f64),
            -(n as f64) - 2.0 * self.m - 1.0,
            2.0 * al + 1.0,
        );
        let raw = ModelWavefunction {
            x_part: ClosedFormWavefunction::new(1.0, WaveForm::MorseLike { p: al, beta: be, f }),
            measure: self.measure(),
        };
        let grid = self.verification_grid(state)?;
        let norm_sq = raw.norm_squared(&grid)?;
        if !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::Domain(format!(
                "norm integral for state {state} is not positive"
            )));
        }
        Ok(ModelWavefunction {
            x_part: raw.x_part.scaled(1.0 / norm_sq.sqrt()),
            measure: raw.measure,
        })
    }

    fn measure(&self) -> Measure {
        Measure::Dx { scale: 2.0 / self.params.a }
    }

    pub fn satellite_parameter_map(
        &self,
        state: StateLabel,
        gen: ShiftGenerator,
    ) -> Result<SatelliteMap> {
        let labels = self.labels(state)?;
        let target = labels.shifted(gen);
        let p = &self.params;
        let kb2 = self.conserved();
        let dir = gen.direction();
        let (b2, n2) = match gen.family() {
            GeneratorFamily::S => {
                let b2 = 2.0 * kb2 * p.b / (2.0 * kb2 - dir * labels.t * p.b);
                (b2, state.n as i64)
            }
            GeneratorFamily::T => {
                let b2 = 2.0 * labels.t * p.b / (2.0 * labels.t + dir * (p.b + 2.0));
                (b2, state.n as i64 - dir as i64)
            }
        };
        let k2 = kb2 / (b2 * b2);
        let d2 = k2 * p.a * p.a * p.hbar * p.hbar / (2.0 * p.mu);
        let mapped = GmpParams { d: d2, b: b2, ..*p };
        let rebuilt = GmpModel::new(mapped);
        let conserved_after = rebuilt.as_ref().map(|m| m.conserved()).unwrap_or(f64::NAN);
        let mapped_state = (n2 >= 0).then(|| StateLabel::vibrational(n2 as u32));
        let normalizable = match (&rebuilt, mapped_state) {
            (Ok(m2), Some(st)) => (st.n as i64) <= m2.n_max(),
            _ => false,
        };
        Ok(SatelliteMap {
            generator: gen,
            params: ModelParams::Gmp(mapped),
            state: mapped_state,
            labels: (target.s, target.t),
            conserved_before: kb2,
            conserved_after,
            normalizable,
        })
    }

    pub fn default_grid(&self) -> Result<Grid> {
        Grid::uniform(5e-7 * self.params.a, 20.0, 4001)
    }

    pub fn verification_grid(&self, state: StateLabel) -> Result<Grid> {
        let n = self.check_state(state)?;
        let lo = 5e-7 * self.params.a;
        let hi = 20.0f64.max(8.0 / self.alpha_n(n));
        Grid::uniform(lo, hi, grid_count_for(hi - lo, 0.005, 4001))
    }

    pub fn grid_for_labels(&self, labels: &SatelliteLabels) -> Result<Grid> {
        let lo = 5e-7 * self.params.a;
        let ahat = 0.5 * (labels.s + labels.t).abs();
        if ahat < 0.05 {
            // no usable decay: measure on a bounded window instead
            return Grid::uniform(lo, 10.0, 2001);
        }
        let hi = 20.0f64.max(8.0 / ahat);
        Grid::uniform(lo, hi, grid_count_for(hi - lo, 0.005, 4001))
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
    use crate::models::Model;
    use approx::assert_relative_eq;

    fn reference() -> GmpModel {
        GmpModel::new(GmpParams { d: 8.0, b: 1.0, a: 1.0, mu: 1.0, hbar: 1.0 }).unwrap()
    }

    #[test]
    fn derived_constants_of_the_reference_well() {
        let m = reference();
        assert_eq!(m.k(), 16.0);
        assert_eq!(m.q(), -48.0);
        assert_eq!(m.n_max(), 2);
        assert_relative_eq!(m.m_label(), 3.531128874149275, max_relative = 1e-12);
        // the root label reproduces the conserved quantity exactly
        assert_relative_eq!(
            m.m_label() * (m.m_label() + 1.0),
            m.conserved(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let bad = GmpModel::new(GmpParams { d: -8.0, b: 1.0, a: 1.0, mu: 1.0, hbar: 1.0 });
        assert!(matches!(bad, Err(Error::Validation(ref msg)) if msg.contains("D > 0 violated")));
        let bad = GmpModel::new(GmpParams { d: 8.0, b: 0.0, a: 1.0, mu: 1.0, hbar: 1.0 });
        assert!(matches!(bad, Err(Error::Validation(ref msg)) if msg.contains("b > 0 violated")));
    }

    #[test]
    fn ground_level_energy_and_exponents() {
        let m = reference();
        let e0 = m.energy(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(e0, 3.406128, max_relative = 1e-6);
        assert_relative_eq!(m.alpha_n(0), 3.031129, max_relative = 1e-6);
        assert_relative_eq!(m.beta_n(0), 7.562258, max_relative = 1e-6);
        // energies rise toward the dissociation limit
        let spectrum = m.spectrum().unwrap();
        assert_eq!(spectrum.len(), 3);
        assert!(spectrum.windows(2).all(|w| w[0].energy < w[1].energy));
        assert!(spectrum.iter().all(|lvl| lvl.energy < 8.0));
    }

    #[test]
    fn ladder_eigenvalue_agrees_by_both_routes() {
        let m = reference();
        for state in m.states() {
            let view = m.type_e_view(state).unwrap();
            let direct = view.problem.l_of(view.termination_label());
            assert_relative_eq!(view.lambda, direct, max_relative = 1e-12);
            assert_eq!(view.class, LadderClass::Increasing);
            assert_eq!(
                view.problem.ladder_class(view.termination_label()).unwrap(),
                LadderClass::Increasing
            );
        }
    }

    #[test]
    fn ground_state_labels_and_identities() {
        let m = reference();
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(lab.s, 10.593387, max_relative = 1e-6);
        assert_relative_eq!(lab.t, -4.531129, max_relative = 1e-6);
        assert_eq!(lab.epsilon, -1.0);
        // s and t recombine the decay exponents
        assert_relative_eq!(lab.s, m.alpha_n(0) + m.beta_n(0), max_relative = 1e-12);
        assert_relative_eq!(lab.t, m.alpha_n(0) - m.beta_n(0), max_relative = 1e-12);
        // and satisfy the bridge identities
        let view = m.type_e_view(StateLabel::vibrational(0)).unwrap();
        assert_relative_eq!(lab.s * lab.t, m.q(), max_relative = 1e-12);
        assert_relative_eq!(lab.s * lab.s + lab.t * lab.t, -view.lambda, max_relative = 1e-12);
    }

    #[test]
    fn chain_roots_bracket_the_termination_label() {
        let m = reference();
        let view = m.type_e_view(StateLabel::vibrational(0)).unwrap();
        let (lo, hi) = view.problem.chain_roots(view.lambda).unwrap();
        assert_relative_eq!(lo, 4.531129, max_relative = 1e-6);
        assert_relative_eq!(hi, 10.593387, max_relative = 1e-6);
    }

    #[test]
    fn eigenfunctions_are_normalized_under_the_physical_measure() {
        let m = reference();
        for state in m.states() {
            let wf = m.eigenfunction(state).unwrap();
            // re-integrate on a wider, differently spaced grid
            let grid = Grid::uniform(5e-7, 28.0, 6007).unwrap();
            let norm_sq = wf.norm_squared(&grid).unwrap();
            assert_relative_eq!(norm_sq, 1.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn ground_state_shape_matches_the_closed_form() {
        let m = reference();
        let wf = m.eigenfunction(StateLabel::vibrational(0)).unwrap();
        match wf.x_part.form {
            WaveForm::MorseLike { p, beta, .. } => {
                assert_relative_eq!(p, 3.031129, max_relative = 1e-6);
                assert_relative_eq!(beta, 7.562258, max_relative = 1e-6);
            }
            ref other => panic!("unexpected form {other:?}"),
        }
        assert_eq!(wf.measure, Measure::Dx { scale: 2.0 });
    }

    #[test]
    fn raising_map_reaches_the_documented_neighbor() {
        let m = reference();
        let map = m
            .satellite_parameter_map(StateLabel::vibrational(0), ShiftGenerator::SPlus)
            .unwrap();
        let mapped = match map.params {
            ModelParams::Gmp(p) => p,
            ref other => panic!("unexpected family {other:?}"),
        };
        assert_relative_eq!(mapped.b, 0.875966, max_relative = 1e-6);
        // the label route to the mapped shape parameter agrees
        let (s2, t2) = map.labels;
        let q2 = s2 * t2;
        let b_label_route = 2.0 * 16.0 / (-q2 - 16.0);
        assert_relative_eq!(mapped.b, b_label_route, max_relative = 1e-12);
        assert_relative_eq!(mapped.d, 16.0 / (mapped.b * mapped.b) / 2.0, max_relative = 1e-12);
        assert_eq!(map.state, Some(StateLabel::vibrational(0)));
        assert!(map.normalizable);
        assert_relative_eq!(map.conserved_after, 16.0, max_relative = 1e-12);
        // rebuilding the mapped model reproduces the shifted labels
        let rebuilt = Model::build(map.params).unwrap();
        let lab2 = rebuilt.labels(map.state.unwrap()).unwrap();
        assert_relative_eq!(lab2.s, s2, max_relative = 1e-10);
        assert_relative_eq!(lab2.t, t2, max_relative = 1e-10);
    }

    #[test]
    fn lowering_the_chain_label_annihilates_at_the_bottom() {
        let m = reference();
        let map = m
            .satellite_parameter_map(StateLabel::vibrational(0), ShiftGenerator::TPlus)
            .unwrap();
        assert_eq!(map.state, None);
        assert!(!map.normalizable);
    }

    #[test]
    fn chain_extension_map_is_consistent() {
        let m = reference();
        let map = m
            .satellite_parameter_map(StateLabel::vibrational(0), ShiftGenerator::TMinus)
            .unwrap();
        let mapped = match map.params {
            ModelParams::Gmp(p) => p,
            ref other => panic!("unexpected family {other:?}"),
        };
        // b' = 2 t b / (2 t - (b + 2)) at t = -4.531129
        let t = m.labels(StateLabel::vibrational(0)).unwrap().t;
        assert_relative_eq!(mapped.b, 2.0 * t / (2.0 * t - 3.0), max_relative = 1e-12);
        assert_relative_eq!(mapped.b, 0.751290, max_relative = 1e-5);
        assert_eq!(map.state, Some(StateLabel::vibrational(1)));
        assert!(map.normalizable);
        let rebuilt = GmpModel::new(mapped).unwrap();
        let lab2 = rebuilt.labels(StateLabel::vibrational(1)).unwrap();
        assert_relative_eq!(lab2.s, map.labels.0, max_relative = 1e-10);
        assert_relative_eq!(lab2.t, map.labels.1, max_relative = 1e-10);
    }

    #[test]
    fn closed_forms_listed_as_unavailable() {
        let m = Model::Gmp(reference());
        let lab = m.labels(StateLabel::vibrational(0)).unwrap();
        assert!(matches!(
            m.predicted_ladder_coefficient(&lab, ShiftGenerator::SPlus),
            Err(Error::Unavailable(_))
        ));
        assert!(matches!(m.extended_x_part(&lab), Err(Error::Unavailable(_))));
    }

    #[test]
    fn potential_vanishes_at_the_well_minimum() {
        let m = reference();
        let r_e = (1.0f64 + 1.0).ln();
        assert!(m.potential(r_e).abs() < 1e-14);
        assert!(m.potential(1e-4) > 1e4);
    }
}
