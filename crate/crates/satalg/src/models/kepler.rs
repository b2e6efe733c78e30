//! Coulomb problem on the negative-curvature radial line.
//!
//! In units where the curvature radius scales the coordinate, the radial
//! equation for angular momentum l becomes, after the substitution
//! phi = sinh(x) psi,
//!
//!   phi'' - [ l(l+1)/sinh^2(x) - 2 nu coth(x) ] phi + lambda' phi = 0,
//!
//! a coth-form hyperbolic problem with alpha = 1 and linear coefficient
//! -nu. The principal label n = n_r + l + 1 runs up to the largest integer
//! below sqrt(nu); every shift generator preserves l. All internal work
//! uses the plain-measure phi forms; the sinh^2-weighted psi form is
//! produced only for presentation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    gamma_product_ratio, grid_count_for, largest_integer_below, sqrt_upper, EnergyLevel,
    GeneratorFamily, Measure, ModelParams, ModelWavefunction, SatelliteLabels, SatelliteMap,
    ShiftGenerator, StateLabel, TypeEView,
};
use crate::error::{Error, Result};
use crate::factorization::{LadderClass, OffsetFlavor, TypeEProblem};
use crate::numerics::Grid;
use crate::specfun::{gamma_real, Hyp2F1Spec};
use crate::transform;
use crate::wavefunction::{ClosedFormWavefunction, WaveForm};

fn unit() -> f64 {
    1.0
}

/// Coupling nu = Z R / a_0 > 0 and curvature radius R > 0; mass, charge,
/// and action scales are already folded into the dimensionless form.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeplerParams {
    pub nu: f64,
    #[serde(rename = "R", default = "unit")]
    pub r: f64,
}

/// Built curved-space Coulomb problem.
#[derive(Clone, Debug)]
pub struct KeplerModel {
    params: KeplerParams,
    n_max: i64,
}

impl KeplerModel {
    pub fn new(params: KeplerParams) -> Result<Self> {
        for (name, value) in [("nu", params.nu), ("R", params.r)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{name} > 0 violated: got {value}"
                )));
            }
        }
        let n_max = largest_integer_below(params.nu.sqrt()).ok_or_else(|| {
            Error::Validation("bound-state count is not finite for these parameters".into())
        })?;
        Ok(KeplerModel { params, n_max })
    }

    pub fn params(&self) -> KeplerParams {
        self.params
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    /// Linear coefficient of the coth term in the factorized form.
    pub fn q(&self) -> f64 {
        -self.params.nu
    }

    pub fn states(&self) -> Vec<StateLabel> {
        let mut out = Vec::new();
        for n in 1..=self.n_max.max(0) {
            for l in 0..n {
                out.push(StateLabel::radial(n as u32, l as u32));
            }
        }
        out
    }

    fn check_state(&self, state: StateLabel) -> Result<(u32, u32)> {
        if state.n == 0 || state.l >= state.n {
            return Err(Error::Validation(format!(
                "state {state} is malformed: need n >= l + 1 >= 1"
            )));
        }
        if (state.n as i64) > self.n_max {
            return Err(Error::Validation(format!(
                "state {state} outside the bound spectrum (n_max = {})",
                self.n_max
            )));
        }
        Ok((state.n, state.l))
    }

    pub fn energy(&self, state: StateLabel) -> Result<f64> {
        let (n, _) = self.check_state(state)?;
        let nf = n as f64;
        let nu = self.params.nu;
        let e_dimless = nu - (nf * nf - 1.0) / 2.0 - nu * nu / (2.0 * nf * nf);
        Ok(e_dimless / (self.params.r * self.params.r))
    }

    /// Eigenvalue of the sinh-weighted radial equation, recovered from the
    /// energy route lambda' = 2 R^2 E - 1 - 2 nu.
    fn tilde_eigenvalue(&self, state: StateLabel) -> Result<f64> {
        let e = self.energy(state)?;
        Ok(2.0 * self.params.r * self.params.r * e - 1.0 - 2.0 * self.params.nu)
    }

    /// Inverse of the energy route, used when eigenvalues come from an
    /// independent solver of the phi equation.
    pub fn energy_from_tilde_eigenvalue(&self, lambda_tilde: f64) -> f64 {
        (lambda_tilde + 1.0 + 2.0 * self.params.nu) / (2.0 * self.params.r * self.params.r)
    }

    /// Effective potential of the phi equation for angular momentum l, in
    /// the convention -phi'' + V phi = lambda' phi.
    pub fn effective_potential(&self, l: u32, x: f64) -> f64 {
        let lf = l as f64;
        let sh = x.sinh();
        lf * (lf + 1.0) / (sh * sh) - 2.0 * self.params.nu / x.tanh()
    }

    pub fn type_e_view(&self, state: StateLabel) -> Result<TypeEView> {
        let (n, l) = self.check_state(state)?;
        let problem = TypeEProblem::new(1.0, -self.params.nu, OffsetFlavor::None)?;
        Ok(TypeEView {
            problem,
            equation_label: l as f64,
            chain_label: n as f64 - 1.0,
            class: LadderClass::Increasing,
            lambda: self.tilde_eigenvalue(state)?,
        })
    }

    pub fn labels(&self, state: StateLabel) -> Result<SatelliteLabels> {
        let (_, l) = self.check_state(state)?;
        let view = self.type_e_view(state)?;
        let (s, t) = transform::satellite_labels(
            &view.problem,
            view.lambda,
            view.termination_label(),
            -1.0,
        )?;
        Ok(SatelliteLabels { s, t, epsilon: -1.0, casimir_label: l as f64 })
    }

    /// The orientation of the label pair whose hypergeometric factor
    /// terminates; the two orientations describe the same function, so the
    /// terminating one is always used for evaluation.
    fn canonical_orientation(&self, labels: &SatelliteLabels) -> Result<(f64, f64)> {
        let l = labels.casimir_label;
        for (s, t) in [(labels.s, labels.t), (-labels.s, -labels.t)] {
            let a_param = t + l + 1.0;
            let r = a_param.round();
            if (a_param - r).abs() < 1e-9 && r <= 0.0 {
                return Ok((s, t));
            }
        }
        Err(Error::Degenerate(format!(
            "no terminating orientation at labels ({}, {}); the lattice ends here",
            labels.s, labels.t
        )))
    }

    /// Normalized sinh-weighted x-part (the phi form) of the extended state
    /// at an arbitrary lattice point of the conserved-l sector. The scale is
    /// the magnitude of the closed normalizer.
    pub fn extended_x_part(&self, labels: &SatelliteLabels) -> Result<ClosedFormWavefunction> {
        let l = labels.casimir_label;
        let (s, t) = self.canonical_orientation(labels)?;
        let gr = gamma_product_ratio(&[l - t + 1.0, s + l + 1.0], &[-t - l, s - l])?;
        let rad = (s + t) * (s - t) * gr / (-t);
        if rad == 0.0 {
            return Err(Error::Degenerate(format!(
                "normalizer vanishes at labels ({s}, {t}); the lattice ends here"
            )));
        }
        let scale = 2f64.powf(l + 1.0) / gamma_real(2.0 * l + 2.0)? * rad.abs().sqrt();
        let f = Hyp2F1Spec::new(t + l + 1.0, s + l + 1.0, 2.0 * l + 2.0);
        Ok(ClosedFormWavefunction::new(
            scale,
            WaveForm::KeplerLike { p: l + 1.0, kappa: -(s + t + l + 1.0), f },
        ))
    }

    /// Normalized phi form with its plain measure.
    pub fn eigenfunction(&self, state: StateLabel) -> Result<ModelWavefunction> {
        let labels = self.labels(state)?;
        Ok(ModelWavefunction {
            x_part: self.extended_x_part(&labels)?,
            measure: Measure::Dx { scale: 1.0 },
        })
    }

    /// The presentation form psi = phi / sinh(x) with its sinh^2 measure.
    pub fn psi_form(&self, state: StateLabel) -> Result<ModelWavefunction> {
        let labels = self.labels(state)?;
        let phi = self.extended_x_part(&labels)?;
        let x_part = match phi.form {
            WaveForm::KeplerLike { p, kappa, f } => ClosedFormWavefunction::new(
                phi.scale,
                WaveForm::KeplerLike { p: p - 1.0, kappa, f },
            ),
            ref other => unreachable!("phi form is always KeplerLike, got {other:?}"),
        };
        Ok(ModelWavefunction { x_part, measure: Measure::SinhSquaredDx })
    }

    /// Closed-form shift coefficient on normalized extended states. Factors
    /// within 1e-12 of zero are treated as exact endpoint zeros.
    pub fn predicted_ladder_coefficient(
        &self,
        labels: &SatelliteLabels,
        gen: ShiftGenerator,
    ) -> Result<Complex64> {
        let (s, t) = (labels.s, labels.t);
        let l = labels.casimir_label;
        let dir = gen.direction();
        let snap = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
        let (num_factors, den_factors, sign): (Vec<f64>, Vec<f64>, f64) = match gen.family() {
            GeneratorFamily::S => (
                vec![s + t, s - t, s - dir * l, s + dir * l + dir],
                vec![s + t + dir, s - t + dir],
                1.0,
            ),
            GeneratorFamily::T => (
                vec![s + t, s - t, -t - dir, -t + dir * l, -t - dir * l - dir],
                vec![-t, s + t + dir, s - t - dir],
                -1.0,
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
        Ok(sign * sqrt_upper(num / den))
    }

    pub fn satellite_parameter_map(
        &self,
        state: StateLabel,
        gen: ShiftGenerator,
    ) -> Result<SatelliteMap> {
        let (n, l) = self.check_state(state)?;
        let labels = self.labels(state)?;
        let target = labels.shifted(gen);
        let dir = gen.direction();
        let p = &self.params;
        let (ratio_base, n2) = match gen.family() {
            GeneratorFamily::S => (labels.s, n as i64),
            GeneratorFamily::T => (labels.t, n as i64 - dir as i64),
        };
        let nu2 = p.nu * (ratio_base + dir) / ratio_base;
        let r2 = p.r * (ratio_base + dir) / ratio_base;
        let mapped = KeplerParams { nu: nu2, r: r2 };
        let rebuilt = KeplerModel::new(mapped);
        let conserved_after = rebuilt.as_ref().map(|_| l as f64).unwrap_or(f64::NAN);
        let mapped_state =
            (n2 >= l as i64 + 1).then(|| StateLabel::radial(n2 as u32, l));
        let normalizable = match (&rebuilt, mapped_state) {
            (Ok(m2), Some(st)) => (st.n as i64) <= m2.n_max(),
            _ => false,
        };
        Ok(SatelliteMap {
            generator: gen,
            params: ModelParams::Kepler(mapped),
            state: mapped_state,
            labels: (target.s, target.t),
            conserved_before: l as f64,
            conserved_after,
            normalizable,
        })
    }

    pub fn default_grid(&self) -> Result<Grid> {
        Grid::uniform(1e-6, 40.0, 4001)
    }

    pub fn verification_grid(&self, state: StateLabel) -> Result<Grid> {
        let labels = self.labels(state)?;
        let rate = 2.0 * (labels.s + labels.t);
        let hi = 40.0f64.max(30.0 / rate);
        Grid::uniform(1e-6, hi, grid_count_for(hi, 0.005, 4001))
    }

    pub fn grid_for_labels(&self, labels: &SatelliteLabels) -> Result<Grid> {
        let decay = (labels.s + labels.t).abs();
        if decay < 0.05 {
            // no usable decay: measure on a bounded window instead
            return Grid::uniform(1e-6, 8.0, 2001);
        }
        let hi = 40.0f64.max(15.0 / decay);
        Grid::uniform(1e-6, hi, grid_count_for(hi, 0.01, 4001))
    }

    pub fn spectrum(&self) -> Result<Vec<EnergyLevel>> {
        self.states()
            .into_iter()
            .map(|state| {
                Ok(EnergyLevel {
                    state,
                    energy: self.energy(state)?,
                    lambda: self.tilde_eigenvalue(state)?,
                })
            })
            .collect()
    }
}
