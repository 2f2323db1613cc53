//! Exit identities, ruin probability and the law of the deficit at ruin.
//!
//! Everything here is expressed through the scale functions of
//! [`crate::scale_fn`]. Functions that need `Phi(0) = 0` reject models with
//! `psi'(0+) < 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::levy_model::LevyModel;
use crate::quadrature;
use crate::scale_fn::{make_evaluator, ScaleEvaluator};

const DENSITY_ABS_TOL: f64 = 1e-12;

fn require_no_negative_drift(model: &LevyModel, what: &str) -> Result<()> {
    let m = model.psi_prime_at_zero();
    if m < 0.0 {
        return Err(Error::Hypothesis(format!(
            "{what} requires psi'(0+) >= 0, got {m}"
        )));
    }
    Ok(())
}

fn require_interval(x: f64, a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("upper level a must be positive, got {a}")));
    }
    if !(0.0..=a).contains(&x) {
        return Err(Error::Domain(format!("x = {x} must lie in [0, a] = [0, {a}]")));
    }
    Ok(())
}

/// `E_x[exp(-q tau_a^+); tau_a^+ < tau_0^-] = W(x) / W(a)`.
pub fn exit_up(model: &LevyModel, q: f64, x: f64, a: f64) -> Result<f64> {
    require_interval(x, a)?;
    let ev = make_evaluator(model, q)?;
    Ok(exit_up_with(&ev, x, a))
}

pub fn exit_up_with(ev: &ScaleEvaluator, x: f64, a: f64) -> f64 {
    if x == a {
        return 1.0;
    }
    (ev.w(x) / ev.w(a)).clamp(0.0, 1.0)
}

/// `E_x[exp(-q tau_0^-); tau_0^- < tau_a^+] = Z(x) - Z(a) W(x) / W(a)`.
pub fn exit_down(model: &LevyModel, q: f64, x: f64, a: f64) -> Result<f64> {
    require_interval(x, a)?;
    let ev = make_evaluator(model, q)?;
    Ok(exit_down_with(&ev, x, a))
}

pub fn exit_down_with(ev: &ScaleEvaluator, x: f64, a: f64) -> f64 {
    if x == a {
        return 0.0;
    }
    (ev.z(x) - ev.z(a) * ev.w(x) / ev.w(a)).clamp(0.0, 1.0)
}

/// `E_x[exp(-q tau_a^+)] = exp(-Phi(q) (a - x))` for `x <= a`.
pub fn one_sided_up(model: &LevyModel, q: f64, x: f64, a: f64) -> Result<f64> {
    require_no_negative_drift(model, "one-sided upward passage")?;
    if !(x <= a) {
        return Err(Error::Domain(format!("need x <= a, got x = {x}, a = {a}")));
    }
    Ok((-model.phi(q)? * (a - x)).exp())
}

/// `P_x{tau_0^- < inf} = 1 - psi'(0+) W(x)`.
pub fn ruin_probability(model: &LevyModel, x: f64) -> Result<f64> {
    require_no_negative_drift(model, "ruin probability")?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("ruin probability needs x >= 0, got {x}")));
    }
    if model.is_pure_drift() {
        return Ok(0.0);
    }
    let ev = make_evaluator(model, 0.0)?;
    Ok((1.0 - model.psi_prime_at_zero() * ev.w(x)).clamp(0.0, 1.0))
}

/// Law of `X` at the first passage below zero, started from `x`, on
/// `{tau_0^- < inf}`; the remaining mass `defect` sits on `{tau_0^- = inf}`.
#[derive(Debug, Clone)]
pub struct DeficitLaw {
    /// Probability of creeping, `X_{tau_0^-} = 0`.
    pub atom_at_zero: f64,
    /// `P_x{tau_0^- = inf} = psi'(0+) W(x)`.
    pub defect: f64,
    x: f64,
    ev: ScaleEvaluator,
}

impl DeficitLaw {
    pub fn x(&self) -> f64 {
        self.x
    }

    /// Density of `X_{tau_0^-}` at `z < 0`:
    /// `int_0^inf pi(z - y) [W(x) - W(x - y)] dy`.
    pub fn density(&self, z: f64) -> f64 {
        if !(z < 0.0) {
            return 0.0;
        }
        let model = self.ev.model();
        let x = self.x;
        let wx = self.ev.w(x);
        // for y >= x the bracket is W(x) and pi integrates to the tail
        let far = wx * model.levy_tail_unchecked(z - x);
        let near = if x > 0.0 {
            quadrature::integrate(
                |y| model.levy_density(z - y) * (wx - self.ev.w(x - y)),
                0.0,
                x,
                DENSITY_ABS_TOL,
            )
            .unwrap_or(f64::NAN)
        } else {
            0.0
        };
        (far + near).max(0.0)
    }

    /// `int_{-inf}^0 density = int_0^inf nu(-y) [W(x) - W(x - y)] dy`.
    pub fn density_mass(&self) -> f64 {
        jump_mass(&self.ev, self.x)
    }

    /// `P_x{X_{tau_0^-} <= z, tau_0^- < inf}` for `z < 0`, by quadrature
    /// of the density.
    pub fn cdf(&self, z: f64) -> Result<f64> {
        if z >= 0.0 {
            return Ok(self.density_mass() + self.atom_at_zero);
        }
        // the density has exponential tails; integrate outwards in doublings
        let mut total = 0.0;
        let mut hi = z;
        let mut width = 1.0;
        loop {
            let lo = hi - width;
            let piece = quadrature::integrate(|u| self.density(u), lo, hi, DENSITY_ABS_TOL)?;
            total += piece;
            if piece.abs() < 1e-15 && self.ev.model().levy_tail_unchecked(lo - self.x) < 1e-15 {
                break;
            }
            hi = lo;
            width *= 2.0;
            if width > 1e6 {
                break;
            }
        }
        Ok(total)
    }
}

/// Creeping atom, jump density and defect of the deficit at ruin.
pub fn deficit_law(model: &LevyModel, x: f64) -> Result<DeficitLaw> {
    require_no_negative_drift(model, "deficit at ruin")?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("deficit law needs x >= 0, got {x}")));
    }
    let ev = make_evaluator(model, 0.0)?;
    let s2 = model.sigma() * model.sigma();
    // W'(0+) = 2 / sigma^2 makes the atom exactly 1 at x = 0
    let atom_at_zero = if s2 == 0.0 {
        0.0
    } else if x == 0.0 {
        1.0
    } else {
        0.5 * s2 * ev.w_prime(x)
    };
    Ok(DeficitLaw {
        atom_at_zero,
        defect: model.psi_prime_at_zero() * ev.w(x),
        x,
        ev,
    })
}

/// `int_0^inf nu(-y) [W(x) - W(x - y)] dy`, the jump part of the ruin identity.
fn jump_mass(ev: &ScaleEvaluator, x: f64) -> f64 {
    let model = ev.model();
    if model.jumps().is_none() {
        return 0.0;
    }
    let wx = ev.w(x);
    let far = wx * model.levy_tail_integral(-x);
    let near = if x > 0.0 {
        quadrature::integrate(
            |y| model.levy_tail_unchecked(-y) * (wx - ev.w(x - y)),
            0.0,
            x,
            DENSITY_ABS_TOL,
        )
        .unwrap_or(f64::NAN)
    } else {
        0.0
    };
    far + near
}

/// `E_x[exp(r X_{tau_0^-}); tau_0^- < inf]` for `r > 0`.
pub fn deficit_laplace(model: &LevyModel, r: f64, x: f64) -> Result<f64> {
    require_no_negative_drift(model, "Laplace transform of the deficit")?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("deficit Laplace transform needs r > 0, got {r}")));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("deficit Laplace transform needs x >= 0, got {x}")));
    }
    if model.is_pure_drift() {
        return Ok(0.0);
    }
    let ev = make_evaluator(model, 0.0)?;
    Ok(deficit_laplace_with(&ev, r, x)?.clamp(0.0, 1.0))
}

/// Same as [`deficit_laplace`] for a prepared `q = 0` evaluator, unclamped.
///
/// With `W = sum_j c_j exp(zeta_j x)` and `sum_j c_j / (r - zeta_j) = 1/psi(r)`
/// the transform collapses to `psi(r)/r sum_j c_j zeta_j exp(zeta_j x) / (r - zeta_j)`,
/// which avoids the cancellation between `exp(r x)` and the integral term.
pub fn deficit_laplace_with(ev: &ScaleEvaluator, r: f64, x: f64) -> Result<f64> {
    let model = ev.model();
    let psi_r = model.psi(r)?;
    let x = x.max(0.0);
    match ev.exp_sum() {
        Some(terms) => {
            let s: Complex64 = terms
                .iter()
                .map(|t| t.coeff * t.root * (t.root * x).exp() / (r - t.root))
                .sum();
            Ok(psi_r / r * s.re)
        }
        None => Ok(psi_r * (ev.tail_laplace(r, x)? - ev.w(x) / r)),
    }
}

/// `|1 - psi'(0+) W(x) - sigma^2/2 W'(x) - int_0^inf nu(-y)[W(x) - W(x-y)] dy|`.
pub fn check_identity_trick(model: &LevyModel, x: f64) -> Result<f64> {
    require_no_negative_drift(model, "the ruin identity")?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("identity check needs x >= 0, got {x}")));
    }
    let ev = make_evaluator(model, 0.0)?;
    let s2 = model.sigma() * model.sigma();
    let creep = if s2 == 0.0 { 0.0 } else { 0.5 * s2 * ev.w_prime(x) };
    let rhs = model.psi_prime_at_zero() * ev.w(x) + creep + jump_mass(&ev, x);
    Ok((1.0 - rhs).abs())
}
