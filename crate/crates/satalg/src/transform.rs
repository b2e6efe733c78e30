//! Embedding of the hyperbolic ladder problem into the complexified
//! trigonometric normal form k(x, m) = (m + c) a cot(a x) + d / sin(a x),
//! whose label pair generates the satellite algebra.
//!
//! With a = i alpha and the chain terminating at label `Lambda` (so that
//! lambda = L(Lambda)), the embedding has two solutions; both satisfy the
//! link identity a^2 d^2 - q^2 / d^2 = lambda, and the two real numbers
//!
//!   s = eps q / (alpha Lambda),   t = eps Lambda,
//!
//! appear as (d, m + c + 1/2) in one solution and swapped in the other.
//! (s, t) are the satellite labels: s^2 + t^2 = -lambda / alpha^2 and
//! s t = q / alpha hold identically.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::factorization::TypeEProblem;

/// One branch of the embedding into the complexified normal form.
#[derive(Clone, Copy, Debug)]
pub struct BridgeSolution {
    pub dbar: Complex64,
    pub mbar_plus_cbar: Complex64,
}

impl BridgeSolution {
    /// Residual of the link identity a^2 d^2 - q^2 / d^2 = lambda, relative
    /// to |lambda|.
    pub fn link_residual(&self, alpha: f64, q: f64, lambda: f64) -> f64 {
        let a = Complex64::new(0.0, alpha);
        let d2 = self.dbar * self.dbar;
        let lhs = a * a * d2 - q * q / d2;
        (lhs - lambda).norm() / lambda.abs()
    }
}

/// Sign convention tying the satellite labels to the linear coefficient:
/// eps = q / |q|.
pub fn epsilon_convention(q: f64) -> f64 {
    if q >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn check_inputs(
    prob: &TypeEProblem,
    lambda: f64,
    capital_lambda: f64,
    epsilon: f64,
) -> Result<()> {
    if epsilon != 1.0 && epsilon != -1.0 {
        return Err(Error::Validation(format!("epsilon must be +1 or -1, got {epsilon}")));
    }
    if !(capital_lambda > 0.0) {
        return Err(Error::Validation(format!(
            "termination label must be positive, got {capital_lambda}"
        )));
    }
    let l_at = prob.l_of(capital_lambda);
    if (l_at - lambda).abs() > 1e-8 * lambda.abs().max(1.0) {
        return Err(Error::Validation(format!(
            "lambda = {lambda} is not the ladder eigenvalue at the termination label \
             (L({capital_lambda}) = {l_at})"
        )));
    }
    Ok(())
}

/// Both embedding branches for a chain that terminates at `capital_lambda`.
pub fn solve_bridge(
    prob: &TypeEProblem,
    lambda: f64,
    capital_lambda: f64,
    epsilon: f64,
) -> Result<[BridgeSolution; 2]> {
    check_inputs(prob, lambda, capital_lambda, epsilon)?;
    let a = Complex64::new(0.0, prob.alpha());
    let i = Complex64::new(0.0, 1.0);
    let first = Complex64::new(epsilon * capital_lambda, 0.0);
    let second = i * epsilon * prob.q() / (a * capital_lambda);
    Ok([
        BridgeSolution { dbar: first, mbar_plus_cbar: second - 0.5 },
        BridgeSolution { dbar: second, mbar_plus_cbar: first - 0.5 },
    ])
}

/// The satellite label pair (s, t) of a chain terminating at
/// `capital_lambda`.
pub fn satellite_labels(
    prob: &TypeEProblem,
    lambda: f64,
    capital_lambda: f64,
    epsilon: f64,
) -> Result<(f64, f64)> {
    check_inputs(prob, lambda, capital_lambda, epsilon)?;
    let s = epsilon * prob.q() / (prob.alpha() * capital_lambda);
    let t = epsilon * capital_lambda;
    Ok((s, t))
}

/// Residuals of the two label identities s^2 + t^2 = -lambda / alpha^2 and
/// s t = q / alpha, relative to the magnitudes of their right-hand sides.
pub fn label_identity_residuals(
    prob: &TypeEProblem,
    lambda: f64,
    s: f64,
    t: f64,
) -> (f64, f64) {
    let a2 = prob.alpha() * prob.alpha();
    let sum_res = (s * s + t * t + lambda / a2).abs() / (lambda.abs() / a2);
    let prod_rhs = prob.q() / prob.alpha();
    let prod_res = (s * t - prod_rhs).abs() / prod_rhs.abs();
    (sum_res, prod_res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::OffsetFlavor;
    use approx::assert_relative_eq;

    fn tanh_problem() -> TypeEProblem {
        TypeEProblem::new(1.0, 3.0, OffsetFlavor::ImaginaryHalfPi).unwrap()
    }

    #[test]
    fn epsilon_follows_the_sign_of_q() {
        assert_eq!(epsilon_convention(3.0), 1.0);
        assert_eq!(epsilon_convention(-48.0), -1.0);
        assert_eq!(epsilon_convention(-6.25), -1.0);
    }

    #[test]
    fn both_branches_satisfy_the_link_identity() {
        let p = tanh_problem();
        for (lambda, cap) in [(-10.0, 3.0), (-6.25, 2.0)] {
            let sols = solve_bridge(&p, lambda, cap, 1.0).unwrap();
            for sol in sols {
                assert!(sol.link_residual(1.0, 3.0, lambda) < 1e-14);
            }
        }
    }

    #[test]
    fn branches_swap_the_label_pair() {
        let p = tanh_problem();
        let sols = solve_bridge(&p, -6.25, 2.0, 1.0).unwrap();
        // first branch: d = t, m + c + 1/2 = s; second swaps
        assert_relative_eq!(sols[0].dbar.re, 2.0, max_relative = 1e-14);
        assert_relative_eq!((sols[0].mbar_plus_cbar + 0.5).re, 1.5, max_relative = 1e-14);
        assert!(sols[0].mbar_plus_cbar.im.abs() < 1e-15);
        assert_relative_eq!(sols[1].dbar.re, 1.5, max_relative = 1e-14);
        assert_relative_eq!((sols[1].mbar_plus_cbar + 0.5).re, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn labels_match_the_frozen_model_values() {
        // tanh well at lambda = -10: (s, t) = (1, 3)
        let p = tanh_problem();
        let (s, t) = satellite_labels(&p, -10.0, 3.0, 1.0).unwrap();
        assert_relative_eq!(s, 1.0, max_relative = 1e-14);
        assert_relative_eq!(t, 3.0, max_relative = 1e-14);

        // curved radial problem at n = 2: (s, t) = (3.125, -2)
        let k = TypeEProblem::new(1.0, -6.25, OffsetFlavor::None).unwrap();
        let lambda = -4.0 - 6.25 * 6.25 / 4.0;
        let (s, t) = satellite_labels(&k, lambda, 2.0, -1.0).unwrap();
        assert_relative_eq!(s, 3.125, max_relative = 1e-14);
        assert_relative_eq!(t, -2.0, max_relative = 1e-14);

        // deep exponential well, ground chain: t = -(m+1), s = -q/(m+1)
        let m = (-1.0 + 65.0f64.sqrt()) / 2.0;
        let g = TypeEProblem::new(1.0, -48.0, OffsetFlavor::None).unwrap();
        let lam = g.l_of(m + 1.0);
        let (s, t) = satellite_labels(&g, lam, m + 1.0, -1.0).unwrap();
        assert_relative_eq!(s, 10.5933866, max_relative = 1e-7);
        assert_relative_eq!(t, -4.5311289, max_relative = 1e-7);
    }

    #[test]
    fn label_identities_hold_for_bridge_output() {
        let p = tanh_problem();
        for (lambda, cap) in [(-10.0, 3.0), (-6.25, 2.0)] {
            let (s, t) = satellite_labels(&p, lambda, cap, 1.0).unwrap();
            let (r1, r2) = label_identity_residuals(&p, lambda, s, t);
            assert!(r1 < 1e-14 && r2 < 1e-14, "residuals {r1}, {r2}");
        }
    }

    #[test]
    fn labels_agree_with_chain_roots_up_to_sign() {
        let p = tanh_problem();
        let (s, t) = satellite_labels(&p, -6.25, 2.0, 1.0).unwrap();
        let (small, large) = p.chain_roots(-6.25).unwrap();
        let mut mags = [s.abs(), t.abs()];
        mags.sort_by(f64::total_cmp);
        assert_relative_eq!(mags[0], small, max_relative = 1e-12);
        assert_relative_eq!(mags[1], large, max_relative = 1e-12);
    }

    #[test]
    fn inconsistent_inputs_are_rejected() {
        let p = tanh_problem();
        assert!(solve_bridge(&p, -10.0, 3.0, 0.5).is_err());
        assert!(solve_bridge(&p, -10.0, -3.0, 1.0).is_err());
        // lambda that is not the ladder eigenvalue of the claimed label
        assert!(solve_bridge(&p, -9.0, 3.0, 1.0).is_err());
    }
}
