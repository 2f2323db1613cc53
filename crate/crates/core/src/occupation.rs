//! Laplace transforms of the time spent below zero.
//!
//! * [`occupation_total_lt`]: `E[exp(-lambda int_0^inf 1{X_s <= 0} ds)]`
//!   started from zero, equal to `psi'(0+) Phi(lambda) / lambda`.
//! * [`occupation_total_lt_from`]: the same from `x >= 0`,
//!   `psi'(0+) Phi(lambda) int_0^inf exp(-Phi(lambda) z) W(x + z) dz`.
//! * [`occupation_until_passage_lt`]: occupation up to the first passage
//!   below `-b`, a ratio of scale-function expressions.
//! * [`parisian_ruin`]: ruin with exponential implementation delays of rate
//!   `d`, which is one minus the total-occupation transform at `lambda = d`.
//!
//! The integrals against the Lévy measure reduce to one-dimensional
//! integrals against the tail `nu(x) = Pi(-inf, x)`, since all supported
//! jump laws have a density.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::levy_model::LevyModel;
use crate::quadrature;
use crate::scale_fn::{make_evaluator, PoleTerm, ScaleEvaluator};

const JUMP_INTEGRAL_ABS_TOL: f64 = 1e-12;
const TAIL_CUTOFF: f64 = 1e-15;

fn require_net_profit(model: &LevyModel, what: &str) -> Result<f64> {
    let m = model.psi_prime_at_zero();
    if !(m > 0.0) {
        return Err(Error::Hypothesis(format!(
            "{what} requires the net profit condition psi'(0+) > 0, got {m}"
        )));
    }
    if model.is_pure_drift() {
        return Err(Error::Hypothesis(format!(
            "{what} requires non-monotone paths; the model is a pure drift"
        )));
    }
    Ok(m)
}

fn require_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda must be finite and >= 0, got {lambda}")));
    }
    Ok(())
}

/// `psi'(0+) Phi(lambda) / lambda`, with the value 1 at `lambda = 0`.
pub fn occupation_total_lt(model: &LevyModel, lambda: f64) -> Result<f64> {
    let m = require_net_profit(model, "total occupation transform")?;
    require_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(1.0);
    }
    Ok((m * model.phi(lambda)? / lambda).min(1.0))
}

fn check_from_args(model: &LevyModel, lambda: f64, x: f64) -> Result<f64> {
    let m = require_net_profit(model, "total occupation transform")?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!(
            "lambda must be positive (the lambda = 0 value is 1), got {lambda}"
        )));
    }
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("starting point must be x >= 0, got {x}")));
    }
    Ok(m)
}

/// `psi'(0+) Phi(lambda) int_0^inf exp(-Phi(lambda) z) W(x + z) dz` for
/// `lambda > 0`, `x >= 0`.
pub fn occupation_total_lt_from(model: &LevyModel, lambda: f64, x: f64) -> Result<f64> {
    let m = check_from_args(model, lambda, x)?;
    let phi = model.phi(lambda)?;
    let ev = make_evaluator(model, 0.0)?;
    Ok((m * phi * ev.tail_laplace(phi, x)?).clamp(0.0, 1.0))
}

/// The finite-integral form of [`occupation_total_lt_from`],
/// `psi'(0+) (Phi/lambda) exp(Phi x) (1 - lambda int_0^x exp(-Phi z) W(z) dz)`.
/// It cancels badly for large `x` and is kept as a cross-check.
pub fn occupation_total_lt_from_finite(model: &LevyModel, lambda: f64, x: f64) -> Result<f64> {
    let m = check_from_args(model, lambda, x)?;
    let phi = model.phi(lambda)?;
    let ev = make_evaluator(model, 0.0)?;
    let inner = 1.0 - lambda * ev.partial_laplace(phi, x);
    Ok(m * phi / lambda * (phi * x).exp() * inner)
}

/// `E[exp(-lambda int_0^{tau_{-b}^-} 1{X_s <= 0} ds)]` for `psi'(0+) >= 0`.
pub fn occupation_until_passage_lt(model: &LevyModel, lambda: f64, b: f64) -> Result<f64> {
    let m = model.psi_prime_at_zero();
    if m < 0.0 {
        return Err(Error::Hypothesis(format!(
            "occupation until passage below -b requires psi'(0+) >= 0, got {m}"
        )));
    }
    require_lambda(lambda)?;
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain(format!("barrier depth b must be positive, got {b}")));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let ev = make_evaluator(model, lambda)?;
    occupation_until_passage_lt_with(&ev, b)
}

/// [`occupation_until_passage_lt`] for a prepared evaluator at `q = lambda > 0`.
pub fn occupation_until_passage_lt_with(ev: &ScaleEvaluator, b: f64) -> Result<f64> {
    let lambda = ev.q();
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let model = ev.model();
    let parts = match ev.exp_sum() {
        Some(terms) => ExpSumRatio::new(&terms, ev.phi_q(), lambda, b).parts(model)?,
        None => direct_parts(ev, b)?,
    };
    let half_s2 = 0.5 * model.sigma() * model.sigma();
    let m = model.psi_prime_at_zero();
    let num = m + half_s2 * parts.a1_over_w + parts.int_a2;
    let den = m + half_s2 * parts.wp_over_w + parts.int_a3;
    Ok((num / den).clamp(0.0, 1.0))
}

struct RatioParts {
    a1_over_w: f64,
    wp_over_w: f64,
    int_a2: f64,
    int_a3: f64,
}

/// `int_{-inf}^0 f(x) nu(x) dx` where `f = 1` below `-b`.
fn jump_integral(model: &LevyModel, b: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    if model.jumps().is_none() {
        return Ok(0.0);
    }
    let below = model.levy_tail_integral(-b);
    let lower = model.levy_tail_cutoff(TAIL_CUTOFF).max(-b);
    let mut total = below;
    // the integrand varies on the scale of the claim sizes; hand the
    // adaptive rule pieces of that length
    let step = 1.0 / model.jumps().map_or(1.0, |j| j.claim.min_rate());
    let mut hi = 0.0;
    while hi > lower {
        let lo = (hi - step).max(lower);
        total += quadrature::integrate(|x| f(x) * model.levy_tail_unchecked(x), lo, hi, JUMP_INTEGRAL_ABS_TOL)?;
        hi = lo;
    }
    Ok(total)
}

fn direct_parts(ev: &ScaleEvaluator, b: f64) -> Result<RatioParts> {
    let lambda = ev.q();
    let model = ev.model();
    let wb = ev.w(b);
    let wpb = ev.w_prime(b);
    let zb = ev.z(b);
    Ok(RatioParts {
        a1_over_w: (zb * wpb - lambda * wb * wb) / wb,
        wp_over_w: wpb / wb,
        int_a2: jump_integral(model, b, |x| ev.z(x + b) - zb * ev.w(x + b) / wb)?,
        int_a3: jump_integral(model, b, |x| 1.0 - ev.w(x + b) / wb)?,
    })
}

/// The ratio written through `W = sum_j c_j exp(zeta_j y)`.
///
/// For `lambda > 0`, `sum_j c_j / zeta_j = 1 / lambda`, so
/// `Z(y) = lambda sum_j c_j exp(zeta_j y) / zeta_j`. With `w_k = c_k exp(zeta_k b) / W(b)`:
///
/// * `A1 / W(b) = lambda sum_{j<k} c_j exp(zeta_j b) w_k (zeta_k - zeta_j)^2 / (zeta_j zeta_k)`
/// * `A2(x) = lambda sum_{j != k} c_j exp(zeta_j (x + b)) w_k (1/zeta_j - 1/zeta_k)`
///
/// Every product is formed in the exponent, scaled by `exp(-Phi b)`, so no
/// term overflows and the large cancellations of `Z W' - lambda W^2` never
/// happen.
struct ExpSumRatio<'a> {
    terms: &'a [PoleTerm],
    phi: f64,
    lambda: f64,
    b: f64,
    /// `W(b) exp(-Phi b)`.
    scaled_wb: f64,
}

impl<'a> ExpSumRatio<'a> {
    fn new(terms: &'a [PoleTerm], phi: f64, lambda: f64, b: f64) -> Self {
        let scaled_wb = terms
            .iter()
            .map(|t| t.coeff * ((t.root - phi) * b).exp())
            .sum::<Complex64>()
            .re;
        ExpSumRatio {
            terms,
            phi,
            lambda,
            b,
            scaled_wb,
        }
    }

    /// `c_j exp(zeta_j y) w_k`.
    fn pair(&self, j: usize, y: f64, k: usize) -> Complex64 {
        let (tj, tk) = (&self.terms[j], &self.terms[k]);
        tj.coeff * tk.coeff * (tj.root * y + tk.root * self.b - self.phi * self.b).exp()
            / self.scaled_wb
    }

    fn a1_over_w(&self) -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..self.terms.len() {
            for k in j + 1..self.terms.len() {
                let (zj, zk) = (self.terms[j].root, self.terms[k].root);
                s += self.pair(j, self.b, k) * (zk - zj) * (zk - zj) / (zj * zk);
            }
        }
        self.lambda * s.re
    }

    fn wp_over_w(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.root * t.coeff * ((t.root - self.phi) * self.b).exp())
            .sum::<Complex64>()
            .re
            / self.scaled_wb
    }

    fn a2(&self, x: f64) -> f64 {
        let y = x + self.b;
        if y <= 0.0 {
            return 1.0;
        }
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..self.terms.len() {
            for k in 0..self.terms.len() {
                if j != k {
                    let (zj, zk) = (self.terms[j].root, self.terms[k].root);
                    s += self.pair(j, y, k) * (1.0 / zj - 1.0 / zk);
                }
            }
        }
        self.lambda * s.re
    }

    fn a3(&self, x: f64) -> f64 {
        let y = x + self.b;
        if y <= 0.0 {
            return 1.0;
        }
        let ratio = self
            .terms
            .iter()
            .map(|t| t.coeff * (t.root * y - self.phi * self.b).exp())
            .sum::<Complex64>()
            .re
            / self.scaled_wb;
        1.0 - ratio
    }

    fn parts(&self, model: &LevyModel) -> Result<RatioParts> {
        Ok(RatioParts {
            a1_over_w: self.a1_over_w(),
            wp_over_w: self.wp_over_w(),
            int_a2: jump_integral(model, self.b, |x| self.a2(x))?,
            int_a3: jump_integral(model, self.b, |x| self.a3(x))?,
        })
    }
}

/// The Brownian-with-drift case `X_t = m t + sigma B_t` of
/// [`occupation_until_passage_lt`] from sinh/cosh alone.
///
/// With `Delta = sqrt(m^2 + 2 lambda sigma^2)` and `beta = Delta / sigma^2`,
/// `Z W' - lambda W^2 = 2 exp(-2 m b / sigma^2) / sigma^2`, and the ratio
/// becomes `(2 m sinh(beta b) + Delta exp(-m b / sigma^2)) / (m sinh(beta b) + Delta cosh(beta b))`.
pub fn bm_reference_occupation(b: f64, lambda: f64, m: f64, sigma: f64) -> f64 {
    assert!(m >= 0.0 && sigma > 0.0, "needs m >= 0 and sigma > 0");
    if lambda == 0.0 {
        return 1.0;
    }
    let s2 = sigma * sigma;
    let delta = (m * m + 2.0 * lambda * s2).sqrt();
    let u = delta / s2 * b;
    // divide through by cosh(u) to stay finite for large b
    let t = u.tanh();
    let e_over_c = 2.0 * (-(m / s2) * b - u).exp() / (1.0 + (-2.0 * u).exp());
    (2.0 * m * t + delta * e_over_c) / (m * t + delta)
}

/// `P{tau_d < inf}` for Parisian ruin with `Exp(d)` implementation delays,
/// started from `x >= 0`.
pub fn parisian_ruin(model: &LevyModel, d: f64, x: f64) -> Result<f64> {
    require_net_profit(model, "Parisian ruin")?;
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("delay rate d must be positive, got {d}")));
    }
    let survival = if x == 0.0 {
        occupation_total_lt(model, d)?
    } else {
        occupation_total_lt_from(model, d, x)?
    };
    Ok((1.0 - survival).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy_model::ClaimDistribution;
    use crate::scale_fn::BackendKind;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn exp_claims() -> LevyModel {
        LevyModel::cramer_lundberg(1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap()).unwrap()
    }

    fn jump_diffusion() -> LevyModel {
        LevyModel::jump_diffusion(1.0, 1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap())
            .unwrap()
    }

    /// Literal sinh/cosh evaluation of the drifted-BM ratio, fine for
    /// moderate `b` where `Z W' - lambda W^2` does not cancel badly.
    fn literal_bm_ratio(b: f64, lambda: f64, m: f64, sigma: f64) -> f64 {
        let s2 = sigma * sigma;
        let delta = (m * m + 2.0 * lambda * s2).sqrt();
        let (k, beta) = (m / s2, delta / s2);
        let e = (-k * b).exp();
        let w = 2.0 / delta * e * (beta * b).sinh();
        let wp = 2.0 / delta * e * (beta * (beta * b).cosh() - k * (beta * b).sinh());
        let z = e * ((beta * b).cosh() + k / beta * (beta * b).sinh());
        (m * w + 0.5 * s2 * (z * wp - lambda * w * w)) / (m * w + 0.5 * s2 * wp)
    }

    #[test]
    fn total_occupation_examples() {
        let bm = LevyModel::brownian(1.0, 2f64.sqrt()).unwrap();
        assert_eq!(occupation_total_lt(&bm, 0.0).unwrap(), 1.0);
        assert_relative_eq!(occupation_total_lt(&bm, 2.0).unwrap(), 0.5, epsilon = 1e-14);
        assert_relative_eq!(
            occupation_total_lt(&exp_claims(), 1.0).unwrap(),
            0.5 * 2f64.sqrt(),
            epsilon = 1e-14
        );
        let critical = LevyModel::brownian(0.0, 1.0).unwrap();
        assert!(matches!(occupation_total_lt(&critical, 1.0), Err(Error::Hypothesis(_))));
        let drift = LevyModel::new(1.0, 0.0, None).unwrap();
        assert!(matches!(occupation_total_lt(&drift, 1.0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn corollary_forms_agree() {
        let models = [exp_claims(), jump_diffusion(), LevyModel::brownian(0.5, 1.2).unwrap()];
        for m in &models {
            for lambda in [0.3, 1.0, 4.0] {
                let t1 = occupation_total_lt(m, lambda).unwrap();
                assert_relative_eq!(occupation_total_lt_from(m, lambda, 0.0).unwrap(), t1, epsilon = 1e-12);
                // the finite form loses about exp(Phi x) * 1e-16 to cancellation
                let phi = m.phi(lambda).unwrap();
                for x in [0.0, 0.5, 1.0, 5.0] {
                    let inf = occupation_total_lt_from(m, lambda, x).unwrap();
                    let fin = occupation_total_lt_from_finite(m, lambda, x).unwrap();
                    let tol = 1e-12 + 1e-15 * (phi * x).exp();
                    assert!((inf - fin).abs() < tol, "lambda {lambda}, x {x}: {inf} vs {fin}");
                }
            }
        }
        let far = occupation_total_lt_from(&exp_claims(), 1.0, 50.0).unwrap();
        assert_relative_eq!(far, 1.0, epsilon = 1e-6);
        assert!(matches!(
            occupation_total_lt_from(&exp_claims(), 0.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn corollary_for_exponential_claims_by_hand() {
        // W(x) = 2 - e^{-x} gives int_0^inf e^{-phi z} W(x+z) dz = 2/phi - e^{-x}/(phi+1)
        let m = exp_claims();
        let phi = 2f64.sqrt();
        for x in [0.0f64, 1.0, 3.0] {
            let expected = 0.5 * phi * (2.0 / phi - (-x).exp() / (phi + 1.0));
            assert_relative_eq!(occupation_total_lt_from(&m, 1.0, x).unwrap(), expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn brownian_cosh_identity() {
        let bm = LevyModel::brownian(0.0, 1.0).unwrap();
        assert_relative_eq!(
            occupation_until_passage_lt(&bm, 0.5, 1.0).unwrap(),
            0.648_054_273_663_885_4,
            max_relative = 1e-14
        );
        for b in [0.25f64, 1.0, 4.0, 30.0] {
            for lambda in [0.1f64, 1.0, 4.0] {
                let expected = 1.0 / (b * (2.0 * lambda).sqrt()).cosh();
                let got = occupation_until_passage_lt(&bm, lambda, b).unwrap();
                assert_relative_eq!(got, expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn bm_reference_matches_literal_ratio() {
        for (b, lambda, m, sigma) in [(1.0, 2.0, 1.0, 2f64.sqrt()), (0.5, 0.3, 0.2, 0.7), (2.0, 1.0, 0.0, 1.0)] {
            assert_relative_eq!(
                bm_reference_occupation(b, lambda, m, sigma),
                literal_bm_ratio(b, lambda, m, sigma),
                max_relative = 1e-11
            );
        }
        assert_eq!(bm_reference_occupation(1.0, 0.0, 0.5, 1.0), 1.0);
        let v = bm_reference_occupation(1.0, 0.5, 0.0, 1.0);
        assert_relative_eq!(v, 1.0 / 1f64.cosh(), max_relative = 1e-15);
    }

    #[test]
    fn drifted_brownian_general_path_equals_reference() {
        for m in [0.0, 0.3, 1.0, 2.5] {
            for sigma in [0.5, 1.0, 2.0] {
                let model = LevyModel::brownian(m, sigma).unwrap();
                for b in [0.25, 1.0, 4.0] {
                    for lambda in [0.1, 1.0, 4.0] {
                        let got = occupation_until_passage_lt(&model, lambda, b).unwrap();
                        let want = bm_reference_occupation(b, lambda, m, sigma);
                        assert_relative_eq!(got, want, max_relative = 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn passage_ratio_backends_agree() {
        let model = jump_diffusion();
        for lambda in [0.5, 1.0] {
            let pf = make_evaluator(&model, lambda).unwrap();
            let inv = ScaleEvaluator::with_backend(&model, lambda, BackendKind::NumericalInversion).unwrap();
            for b in [0.5, 2.0] {
                let a = occupation_until_passage_lt_with(&pf, b).unwrap();
                let c = occupation_until_passage_lt_with(&inv, b).unwrap();
                assert_relative_eq!(a, c, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn passage_lambda_zero_and_domain() {
        assert_eq!(occupation_until_passage_lt(&jump_diffusion(), 0.0, 2.0).unwrap(), 1.0);
        assert!(matches!(
            occupation_until_passage_lt(&jump_diffusion(), 1.0, 0.0),
            Err(Error::Domain(_))
        ));
        let down = LevyModel::brownian(-0.5, 1.0).unwrap();
        assert!(matches!(occupation_until_passage_lt(&down, 1.0, 1.0), Err(Error::Hypothesis(_))));
        // psi'(0+) = 0 is admitted
        let critical = LevyModel::cramer_lundberg(0.5, 1.0, ClaimDistribution::exponential(2.0).unwrap()).unwrap();
        let v = occupation_until_passage_lt(&critical, 1.0, 1.0).unwrap();
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn passage_converges_to_total_occupation() {
        for model in [exp_claims(), jump_diffusion()] {
            let total = occupation_total_lt(&model, 1.0).unwrap();
            let mut prev = f64::INFINITY;
            for b in [1.0, 2.0, 5.0, 10.0, 20.0] {
                let v = occupation_until_passage_lt(&model, 1.0, b).unwrap();
                assert!(v <= prev && v >= total - 1e-12, "b = {b}: {v}");
                prev = v;
            }
            assert!((prev - total).abs() < 1e-4);
        }
        // far beyond the claim scale the barrier no longer matters
        let v = occupation_until_passage_lt(&exp_claims(), 1.0, 300.0).unwrap();
        assert_relative_eq!(v, occupation_total_lt(&exp_claims(), 1.0).unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn compound_poisson_passage_by_direct_route() {
        // the direct formula on the partial-fraction backend, small b only
        let model = exp_claims();
        let ev = make_evaluator(&model, 1.0).unwrap();
        let b = 0.7;
        let direct = direct_parts(&ev, b).unwrap();
        let m = model.psi_prime_at_zero();
        let direct = (m + direct.int_a2) / (m + direct.int_a3);
        assert_relative_eq!(occupation_until_passage_lt_with(&ev, b).unwrap(), direct, max_relative = 1e-10);
    }

    #[test]
    fn parisian_examples() {
        let m = exp_claims();
        assert_relative_eq!(parisian_ruin(&m, 1.0, 0.0).unwrap(), 1.0 - 0.5 * 2f64.sqrt(), epsilon = 1e-14);
        assert!(parisian_ruin(&m, 1e-6, 0.0).unwrap() < 1e-5);
        assert!((parisian_ruin(&m, 1e8, 0.0).unwrap() - 0.5).abs() < 1e-3);
        let mut prev = 0.0;
        for d in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let v = parisian_ruin(&m, d, 0.0).unwrap();
            assert!(v > prev);
            prev = v;
            let mut prev_x = v;
            for x in [0.5, 1.0, 3.0] {
                let vx = parisian_ruin(&m, d, x).unwrap();
                assert!(vx <= prev_x);
                prev_x = vx;
            }
        }
        assert!(matches!(parisian_ruin(&m, 0.0, 0.0), Err(Error::Domain(_))));
    }

    fn arb_model() -> impl Strategy<Value = LevyModel> {
        (0.5f64..3.0, 0.0f64..1.5, 0.1f64..2.0, 0.5f64..4.0, 0usize..3)
            .prop_filter_map("net profit", |(gamma, sigma, rate, mu, family)| {
                let claim = match family {
                    0 => ClaimDistribution::exponential(mu).ok()?,
                    1 => ClaimDistribution::hyper_exponential(vec![0.4, 0.6], vec![mu, mu + 1.5]).ok()?,
                    _ => ClaimDistribution::erlang(2, 2.0 * mu).ok()?,
                };
                let model = LevyModel::jump_diffusion(gamma, sigma, rate, claim).ok()?;
                (model.psi_prime_at_zero() > 0.05).then_some(model)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn total_occupation_is_decreasing_and_convex(model in arb_model()) {
            let grid: Vec<f64> = (0..8).map(|i| 0.25 * i as f64).collect();
            let v: Vec<f64> = grid.iter().map(|&l| occupation_total_lt(&model, l).unwrap()).collect();
            for w in v.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-14);
            }
            for w in v.windows(3) {
                prop_assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-12);
            }
            for x in &v {
                prop_assert!((0.0..=1.0).contains(x));
            }
        }

        #[test]
        fn passage_transform_is_a_probability_and_above_total(
            model in arb_model(), lambda in 0.05f64..5.0, b in 0.1f64..6.0,
        ) {
            let v = occupation_until_passage_lt(&model, lambda, b).unwrap();
            prop_assert!(v > 0.0 && v <= 1.0);
            // occupation up to tau_{-b} is at most the total occupation
            prop_assert!(v >= occupation_total_lt(&model, lambda).unwrap() - 1e-10);
            let deeper = occupation_until_passage_lt(&model, lambda, b + 0.5).unwrap();
            prop_assert!(deeper <= v + 1e-12);
        }

        #[test]
        fn corollary_is_increasing_in_x(model in arb_model(), lambda in 0.05f64..5.0) {
            let mut prev = occupation_total_lt(&model, lambda).unwrap();
            prop_assert!((occupation_total_lt_from(&model, lambda, 0.0).unwrap() - prev).abs() < 1e-10);
            for x in [0.25, 1.0, 2.0, 5.0] {
                let v = occupation_total_lt_from(&model, lambda, x).unwrap();
                prop_assert!(v >= prev - 1e-12 && v <= 1.0);
                prev = v;
            }
        }

        #[test]
        fn parisian_is_monotone_in_d(model in arb_model()) {
            let mut prev = 0.0;
            for d in [0.1, 0.5, 1.0, 3.0] {
                let v = parisian_ruin(&model, d, 0.0).unwrap();
                prop_assert!(v >= prev - 1e-14 && v < 1.0);
                prev = v;
            }
        }
    }
}
