//! The three worked bound-state families and their satellite-algebra data:
//! parameter validation, derived constants, spectra, normalized closed-form
//! eigenfunctions, hyperbolic-ladder views, (s, t) label maps, predicted
//! shift coefficients, and the parameter maps induced by the shift
//! generators.

pub mod gmp;
pub mod kepler;
pub mod rosen_morse;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{LadderClass, TypeEProblem};
use crate::numerics::{integrate, Grid};
use crate::operator::Coeff;
use crate::specfun::gamma_real;
use crate::wavefunction::ClosedFormWavefunction;

pub use gmp::{GmpModel, GmpParams};
pub use kepler::{KeplerModel, KeplerParams};
pub use rosen_morse::{RosenMorseModel, RosenMorseParams};

/// Quantum numbers of a bound state. One-label families use `n` alone and
/// keep `l = 0`; the curved radial family uses both, with n >= l + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateLabel {
    pub n: u32,
    #[serde(default)]
    pub l: u32,
}

impl StateLabel {
    pub fn vibrational(n: u32) -> Self {
        StateLabel { n, l: 0 }
    }

    pub fn radial(n: u32, l: u32) -> Self {
        StateLabel { n, l }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 0 {
            write!(f, "n={}", self.n)
        } else {
            write!(f, "n={},l={}", self.n, self.l)
        }
    }
}

/// One bound level: quantum numbers, energy, and the ladder eigenvalue of
/// the hyperbolic equation the state solves.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnergyLevel {
    pub state: StateLabel,
    pub energy: f64,
    pub lambda: f64,
}

/// Point of the (s, t) label lattice occupied by a state, together with the
/// sign convention and the label j whose Casimir eigenvalue is j(j+1).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SatelliteLabels {
    pub s: f64,
    pub t: f64,
    pub epsilon: f64,
    pub casimir_label: f64,
}

impl SatelliteLabels {
    pub fn casimir_eigenvalue(&self) -> f64 {
        self.casimir_label * (self.casimir_label + 1.0)
    }

    /// The same state described in the opposite sign convention, which
    /// negates both lattice coordinates.
    pub fn flipped(&self) -> Self {
        SatelliteLabels {
            s: -self.s,
            t: -self.t,
            epsilon: -self.epsilon,
            casimir_label: self.casimir_label,
        }
    }

    /// Label point reached by one shift generator.
    pub fn shifted(&self, gen: ShiftGenerator) -> Self {
        let mut out = *self;
        match gen.family() {
            GeneratorFamily::S => out.s += gen.direction(),
            GeneratorFamily::T => out.t += gen.direction(),
        }
        out
    }
}

/// A bound state seen through the hyperbolic ladder: the problem data, the
/// label of the equation the state solves, the chain label attached to the
/// state by the factorization method, and the ladder eigenvalue.
#[derive(Clone, Copy, Debug)]
pub struct TypeEView {
    pub problem: TypeEProblem,
    pub equation_label: f64,
    pub chain_label: f64,
    pub class: LadderClass,
    pub lambda: f64,
}

impl TypeEView {
    /// The label at which the chain terminates: lambda = L(termination).
    /// Chains capped above terminate one step past the chain label; chains
    /// capped below terminate at it.
    pub fn termination_label(&self) -> f64 {
        match self.class {
            LadderClass::Increasing => self.chain_label + 1.0,
            LadderClass::Decreasing => self.chain_label,
        }
    }
}

/// Integration measure w(x) dx declared with each wavefunction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Measure {
    /// Constant weight (a coordinate Jacobian).
    Dx { scale: f64 },
    /// Curved radial weight sinh^2(x).
    SinhSquaredDx,
}

impl Measure {
    pub fn weight(&self, x: f64) -> f64 {
        match self {
            Measure::Dx { scale } => *scale,
            Measure::SinhSquaredDx => {
                let sh = x.sinh();
                sh * sh
            }
        }
    }
}

/// A normalized bound-state wavefunction together with its measure.
#[derive(Clone, Debug)]
pub struct ModelWavefunction {
    pub x_part: ClosedFormWavefunction,
    pub measure: Measure,
}

impl ModelWavefunction {
    /// Integral of w(x) |psi(x)|^2 over the grid.
    pub fn norm_squared(&self, grid: &Grid) -> Result<f64> {
        let vals = grid
            .points()
            .iter()
            .map(|&x| {
                let v = self.x_part.value(x)?;
                Ok(self.measure.weight(x) * v * v)
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(integrate(grid.spacing(), &vals))
    }
}

/// The four shift generators of the satellite algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShiftGenerator {
    #[serde(rename = "S+")]
    SPlus,
    #[serde(rename = "S-")]
    SMinus,
    #[serde(rename = "T+")]
    TPlus,
    #[serde(rename = "T-")]
    TMinus,
}

/// Which of the two commuting su(1,1) factors a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorFamily {
    S,
    T,
}

impl ShiftGenerator {
    pub const ALL: [ShiftGenerator; 4] = [
        ShiftGenerator::SPlus,
        ShiftGenerator::SMinus,
        ShiftGenerator::TPlus,
        ShiftGenerator::TMinus,
    ];

    pub fn family(&self) -> GeneratorFamily {
        match self {
            ShiftGenerator::SPlus | ShiftGenerator::SMinus => GeneratorFamily::S,
            ShiftGenerator::TPlus | ShiftGenerator::TMinus => GeneratorFamily::T,
        }
    }

    pub fn direction(&self) -> f64 {
        match self {
            ShiftGenerator::SPlus | ShiftGenerator::TPlus => 1.0,
            ShiftGenerator::SMinus | ShiftGenerator::TMinus => -1.0,
        }
    }

    /// The generator of the same family with the opposite direction.
    pub fn partner(&self) -> ShiftGenerator {
        match self {
            ShiftGenerator::SPlus => ShiftGenerator::SMinus,
            ShiftGenerator::SMinus => ShiftGenerator::SPlus,
            ShiftGenerator::TPlus => ShiftGenerator::TMinus,
            ShiftGenerator::TMinus => ShiftGenerator::TPlus,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ShiftGenerator::SPlus => "S+",
            ShiftGenerator::SMinus => "S-",
            ShiftGenerator::TPlus => "T+",
            ShiftGenerator::TMinus => "T-",
        }
    }
}

impl fmt::Display for ShiftGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ShiftGenerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShiftGenerator::ALL
            .into_iter()
            .find(|g| g.label() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}; expected S+, S-, T+, or T-")))
    }
}

/// Differential realization of the shift generators on x-parts. The phase
/// factors attached to the auxiliary angles are bookkept in the labels and
/// never discretized; what acts on functions of x is
///
///   coth form:   +-(sinh(ax)/a) d/dx + own cosh(ax) + other sinh(ax),
///   tanh form:  i[+-(cosh(ax)/a) d/dx + own sinh(ax) + other cosh(ax)],
///
/// where `own` is the label the generator shifts (s for the S family, t for
/// the T family) and `other` is the spectator label.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealizationKind {
    Hyperbolic { alpha: f64 },
    HyperbolicShifted { alpha: f64 },
}

impl RealizationKind {
    pub fn alpha(&self) -> f64 {
        match self {
            RealizationKind::Hyperbolic { alpha } => *alpha,
            RealizationKind::HyperbolicShifted { alpha } => *alpha,
        }
    }

    /// (sigma, derivative coefficient, multiplicative coefficient) of one
    /// shift generator at the label point (s, t).
    pub fn shift_parts(
        &self,
        gen: ShiftGenerator,
        s: f64,
        t: f64,
    ) -> (Complex64, Coeff, Coeff) {
        let dir = gen.direction();
        let (own, other) = match gen.family() {
            GeneratorFamily::S => (s, t),
            GeneratorFamily::T => (t, s),
        };
        match *self {
            RealizationKind::Hyperbolic { alpha } => (
                Complex64::new(1.0, 0.0),
                Coeff::Sinh { freq: alpha, scale: dir / alpha },
                Coeff::Sum(vec![
                    Coeff::Cosh { freq: alpha, scale: own },
                    Coeff::Sinh { freq: alpha, scale: other },
                ]),
            ),
            RealizationKind::HyperbolicShifted { alpha } => (
                Complex64::new(0.0, 1.0),
                Coeff::Cosh { freq: alpha, scale: dir / alpha },
                Coeff::Sum(vec![
                    Coeff::Sinh { freq: alpha, scale: own },
                    Coeff::Cosh { freq: alpha, scale: other },
                ]),
            ),
        }
    }

    /// Coefficients (c2, c0) at the point x of the Casimir differential
    /// realization C = c2 d^2/dx^2 + c0 for the label point (s, t):
    ///
    ///   coth form:  c2 = sinh^2(ax)/a^2,
    ///               c0 = -(s^2+t^2) sinh^2(ax) - 2 s t sinh(ax) cosh(ax),
    ///   tanh form:  c2 = -cosh^2(ax)/a^2,
    ///               c0 = (s^2+t^2) cosh^2(ax) + 2 s t sinh(ax) cosh(ax).
    pub fn casimir_coefficients(&self, s: f64, t: f64, x: f64) -> (f64, f64) {
        let a = self.alpha();
        let sh = (a * x).sinh();
        let ch = (a * x).cosh();
        let sum_sq = s * s + t * t;
        match self {
            RealizationKind::Hyperbolic { .. } => {
                (sh * sh / (a * a), -sum_sq * sh * sh - 2.0 * s * t * sh * ch)
            }
            RealizationKind::HyperbolicShifted { .. } => {
                (-ch * ch / (a * a), sum_sq * ch * ch + 2.0 * s * t * sh * ch)
            }
        }
    }
}

/// Result of pushing a bound state through one shift generator: the mapped
/// parameter record, the target quantum numbers (when they index a state of
/// the mapped family), the target labels, and the conserved quantity before
/// and after.
#[derive(Clone, Debug, Serialize)]
pub struct SatelliteMap {
    pub generator: ShiftGenerator,
    pub params: ModelParams,
    pub state: Option<StateLabel>,
    pub labels: (f64, f64),
    pub conserved_before: f64,
    pub conserved_after: f64,
    pub normalizable: bool,
}

/// Tagged parameter record for building any of the three families.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "snake_case")]
pub enum ModelParams {
    Gmp(GmpParams),
    RosenMorse(RosenMorseParams),
    Kepler(KeplerParams),
}

impl ModelParams {
    pub fn build(self) -> Result<Model> {
        Ok(match self {
            ModelParams::Gmp(p) => Model::Gmp(GmpModel::new(p)?),
            ModelParams::RosenMorse(p) => Model::RosenMorse(RosenMorseModel::new(p)?),
            ModelParams::Kepler(p) => Model::Kepler(KeplerModel::new(p)?),
        })
    }
}

/// A built model: validated parameters plus derived constants.
#[derive(Clone, Debug)]
pub enum Model {
    Gmp(GmpModel),
    RosenMorse(RosenMorseModel),
    Kepler(KeplerModel),
}

impl Model {
    pub fn build(params: ModelParams) -> Result<Model> {
        params.build()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Gmp(_) => "gmp",
            Model::RosenMorse(_) => "rosen_morse",
            Model::Kepler(_) => "kepler",
        }
    }

    pub fn params(&self) -> ModelParams {
        match self {
            Model::Gmp(m) => ModelParams::Gmp(m.params()),
            Model::RosenMorse(m) => ModelParams::RosenMorse(m.params()),
            Model::Kepler(m) => ModelParams::Kepler(m.params()),
        }
    }

    /// All admissible bound states, lowest first.
    pub fn states(&self) -> Vec<StateLabel> {
        match self {
            Model::Gmp(m) => m.states(),
            Model::RosenMorse(m) => m.states(),
            Model::Kepler(m) => m.states(),
        }
    }

    pub fn energy(&self, state: StateLabel) -> Result<f64> {
        match self {
            Model::Gmp(m) => m.energy(state),
            Model::RosenMorse(m) => m.energy(state),
            Model::Kepler(m) => m.energy(state),
        }
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

    pub fn type_e_view(&self, state: StateLabel) -> Result<TypeEView> {
        match self {
            Model::Gmp(m) => m.type_e_view(state),
            Model::RosenMorse(m) => m.type_e_view(state),
            Model::Kepler(m) => m.type_e_view(state),
        }
    }

    /// Satellite labels of a bound state in the model's own sign convention.
    pub fn labels(&self, state: StateLabel) -> Result<SatelliteLabels> {
        match self {
            Model::Gmp(m) => m.labels(state),
            Model::RosenMorse(m) => m.labels(state),
            Model::Kepler(m) => m.labels(state),
        }
    }

    /// Normalized eigenfunction with its declared measure.
    pub fn eigenfunction(&self, state: StateLabel) -> Result<ModelWavefunction> {
        match self {
            Model::Gmp(m) => m.eigenfunction(state),
            Model::RosenMorse(m) => m.eigenfunction(state),
            Model::Kepler(m) => m.eigenfunction(state),
        }
    }

    /// Normalized x-part of the extended state at an arbitrary label point
    /// on the model's conserved sector. Families without a closed normalizer
    /// report the closed form as unavailable.
    pub fn extended_x_part(&self, labels: &SatelliteLabels) -> Result<ClosedFormWavefunction> {
        match self {
            Model::Gmp(_) => Err(Error::Unavailable(
                "no closed-form extended normalizer for the exponential well; \
                 certify shift images by proportionality and Casimir checks"
                    .into(),
            )),
            Model::RosenMorse(m) => m.extended_x_part(labels),
            Model::Kepler(m) => m.extended_x_part(labels),
        }
    }

    /// Closed-form coefficient of one shift generator acting on the
    /// normalized extended state at `labels`, with the phase convention of
    /// the closed formulas. Only its magnitude is convention independent.
    pub fn predicted_ladder_coefficient(
        &self,
        labels: &SatelliteLabels,
        gen: ShiftGenerator,
    ) -> Result<Complex64> {
        match self {
            Model::Gmp(_) => Err(Error::Unavailable(
                "no closed-form shift coefficients for the exponential well".into(),
            )),
            Model::RosenMorse(m) => m.predicted_ladder_coefficient(labels, gen),
            Model::Kepler(m) => m.predicted_ladder_coefficient(labels, gen),
        }
    }

    /// Parameter record of the neighboring problem reached by one shift
    /// generator, with the target quantum numbers and conserved quantity.
    pub fn satellite_parameter_map(
        &self,
        state: StateLabel,
        gen: ShiftGenerator,
    ) -> Result<SatelliteMap> {
        match self {
            Model::Gmp(m) => m.satellite_parameter_map(state, gen),
            Model::RosenMorse(m) => m.satellite_parameter_map(state, gen),
            Model::Kepler(m) => m.satellite_parameter_map(state, gen),
        }
    }

    pub fn realization(&self) -> RealizationKind {
        match self {
            Model::Gmp(_) => RealizationKind::Hyperbolic { alpha: 1.0 },
            Model::RosenMorse(m) => {
                RealizationKind::HyperbolicShifted { alpha: m.params().alpha }
            }
            Model::Kepler(_) => RealizationKind::Hyperbolic { alpha: 1.0 },
        }
    }

    pub fn measure(&self) -> Measure {
        match self {
            Model::Gmp(m) => Measure::Dx { scale: 2.0 / m.params().a },
            Model::RosenMorse(_) | Model::Kepler(_) => Measure::Dx { scale: 1.0 },
        }
    }

    /// Sign convention tying the labels to the linear coefficient of the
    /// hyperbolic equation.
    pub fn epsilon(&self) -> f64 {
        match self {
            Model::Gmp(_) => -1.0,
            Model::RosenMorse(m) => m.epsilon(),
            Model::Kepler(_) => -1.0,
        }
    }

    /// Linear coefficient q of the hyperbolic factorized form.
    pub fn q(&self) -> f64 {
        match self {
            Model::Gmp(m) => m.q(),
            Model::RosenMorse(m) => m.q(),
            Model::Kepler(m) => m.q(),
        }
    }

    /// The quantity every shift generator leaves unchanged.
    pub fn conserved(&self, state: StateLabel) -> f64 {
        match self {
            Model::Gmp(m) => m.conserved(),
            Model::RosenMorse(m) => m.conserved(),
            Model::Kepler(_) => state.l as f64,
        }
    }

    /// The documented default working grid.
    pub fn default_grid(&self) -> Result<Grid> {
        match self {
            Model::Gmp(m) => m.default_grid(),
            Model::RosenMorse(m) => m.default_grid(),
            Model::Kepler(m) => m.default_grid(),
        }
    }

    /// A grid wide and fine enough to normalize and verify the given state,
    /// extending the default when the state decays slowly.
    pub fn verification_grid(&self, state: StateLabel) -> Result<Grid> {
        match self {
            Model::Gmp(m) => m.verification_grid(state),
            Model::RosenMorse(m) => m.verification_grid(state),
            Model::Kepler(m) => m.verification_grid(state),
        }
    }

    /// A measurement grid adequate for extended states at the given label
    /// point; falls back to a bounded window when the labels do not decay.
    pub fn grid_for_labels(&self, labels: &SatelliteLabels) -> Result<Grid> {
        match self {
            Model::Gmp(m) => m.grid_for_labels(labels),
            Model::RosenMorse(m) => m.grid_for_labels(labels),
            Model::Kepler(m) => m.grid_for_labels(labels),
        }
    }
}

/// Largest integer strictly smaller than `x`. Values within 1e-9 of an
/// integer are snapped to it first, so exact integers step down by one.
pub fn largest_integer_below(x: f64) -> Option<i64> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let r = x.round();
    let v = if (x - r).abs() <= 1e-9 { r - 1.0 } else { x.floor() };
    Some(v as i64)
}

/// Odd sample count giving a spacing of at most `target_h` over `span`,
/// never below `min_count`.
pub(crate) fn grid_count_for(span: f64, target_h: f64, min_count: usize) -> usize {
    let n = ((span / target_h).ceil() as usize + 1).max(min_count);
    if n % 2 == 0 {
        n + 1
    } else {
        n
    }
}

/// Square root of a real radicand continued to the upper half-plane:
/// sqrt(r) for r >= 0 and i sqrt(|r|) for r < 0.
pub(crate) fn sqrt_upper(r: f64) -> Complex64 {
    if r >= 0.0 {
        Complex64::new(r.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-r).sqrt())
    }
}

pub(crate) fn is_gamma_pole(x: f64) -> bool {
    let r = x.round();
    (x - r).abs() < 1e-9 && r <= 0.0
}

/// Gamma(num_0) ... Gamma(num_i) / (Gamma(den_0) ... Gamma(den_j)), treating
/// a denominator pole as an exact zero of the whole ratio. A numerator pole
/// is a genuine singularity and is reported as such.
pub(crate) fn gamma_product_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    for &x in num {
        if is_gamma_pole(x) {
            return Err(Error::Degenerate(format!(
                "gamma pole at {x} in a normalizer numerator"
            )));
        }
    }
    if den.iter().copied().any(is_gamma_pole) {
        return Ok(0.0);
    }
    let mut out = 1.0;
    for &x in num {
        out *= gamma_real(x)?;
    }
    for &x in den {
        out /= gamma_real(x)?;
    }
    Ok(out)
}
