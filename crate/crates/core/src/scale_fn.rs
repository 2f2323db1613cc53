//! The `q`-scale function `W^(q)` and its companions `W^(q)'`, `Wbar^(q)` and
//! `Z^(q) = 1 + q Wbar^(q)`.
//!
//! `W^(q)` vanishes on `(-inf, 0)` and on `[0, inf)` has Laplace transform
//! `1 / (psi(theta) - q)` for `theta > Phi(q)`. Three backends:
//!
//! * closed-form sinh expression for Brownian motion with drift,
//! * partial fractions `W(x) = sum_j exp(zeta_j x) / psi'(zeta_j)` over the
//!   (simple) roots of `psi(theta) = q` when `psi` is rational,
//! * Euler-summation Bromwich inversion on a contour shifted by `Phi(q)`,
//!   used when a root is (numerically) repeated.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inversion::EulerInverter;
use crate::levy_model::LevyModel;
use crate::{poly, quadrature};

/// Which algorithm a [`ScaleEvaluator`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendKind {
    ClosedFormBrownian,
    PartialFraction,
    NumericalInversion,
}

impl BackendKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BackendKind::ClosedFormBrownian => "closed_form_brownian",
            BackendKind::PartialFraction => "partial_fraction",
            BackendKind::NumericalInversion => "numerical_inversion",
        }
    }
}

impl std::fmt::Display for BackendKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One term `coeff * exp(root * x)` of an exponential-sum scale function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleTerm {
    pub root: Complex64,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Backend {
    ClosedFormBrownian {
        drift: f64,
        sigma: f64,
        /// `sqrt(drift^2 + 2 q sigma^2)`.
        delta: f64,
    },
    PartialFraction {
        /// Roots of `psi = q` with coefficients `D_j = 1 / psi'(zeta_j)`; the
        /// first term is the real root `Phi(q)`.
        terms: Vec<PoleTerm>,
    },
    NumericalInversion {
        inverter: EulerInverter,
        /// Contour shift; the inverted function is `exp(-shift x) W(x)`.
        shift: f64,
    },
}

impl Backend {
    pub fn kind(&self) -> BackendKind {
        match self {
            Backend::ClosedFormBrownian { .. } => BackendKind::ClosedFormBrownian,
            Backend::PartialFraction { .. } => BackendKind::PartialFraction,
            Backend::NumericalInversion { .. } => BackendKind::NumericalInversion,
        }
    }
}

const ROOT_RESIDUAL_TOL: f64 = 1e-10;
const SIMPLE_ROOT_TOL: f64 = 1e-8;
const W_BAR_ABS_TOL: f64 = 1e-10;

/// Prepared evaluator of the scale functions for a fixed `(model, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleEvaluator {
    model: LevyModel,
    q: f64,
    phi_q: f64,
    backend: Backend,
}

/// Builds an evaluator with automatic backend selection.
pub fn make_evaluator(model: &LevyModel, q: f64) -> Result<ScaleEvaluator> {
    ScaleEvaluator::new(model, q)
}

impl ScaleEvaluator {
    pub fn new(model: &LevyModel, q: f64) -> Result<Self> {
        let phi_q = Self::prepare(model, q)?;
        let backend = if model.jumps().is_none() && model.sigma() > 0.0 {
            closed_form_brownian(model, q)
        } else {
            match partial_fraction_terms(model, q, phi_q)? {
                Some(terms) => Backend::PartialFraction { terms },
                None => Backend::NumericalInversion {
                    inverter: EulerInverter::default(),
                    shift: phi_q,
                },
            }
        };
        Ok(ScaleEvaluator {
            model: model.clone(),
            q,
            phi_q,
            backend,
        })
    }

    /// Builds an evaluator with a specific backend, failing if it does not
    /// apply to the model.
    pub fn with_backend(model: &LevyModel, q: f64, kind: BackendKind) -> Result<Self> {
        let phi_q = Self::prepare(model, q)?;
        let backend = match kind {
            BackendKind::ClosedFormBrownian => {
                if model.jumps().is_some() || model.sigma() == 0.0 {
                    return Err(Error::Backend(
                        "closed form requires Brownian motion with drift (sigma > 0, no jumps)"
                            .into(),
                    ));
                }
                closed_form_brownian(model, q)
            }
            BackendKind::PartialFraction => Backend::PartialFraction {
                terms: partial_fraction_terms(model, q, phi_q)?.ok_or_else(|| {
                    Error::Backend(format!("psi(theta) = {q} has a repeated root"))
                })?,
            },
            BackendKind::NumericalInversion => Backend::NumericalInversion {
                inverter: EulerInverter::default(),
                shift: phi_q,
            },
        };
        Ok(ScaleEvaluator {
            model: model.clone(),
            q,
            phi_q,
            backend,
        })
    }

    fn prepare(model: &LevyModel, q: f64) -> Result<f64> {
        if !(q >= 0.0 && q.is_finite()) {
            return Err(Error::Domain(format!("scale function needs finite q >= 0, got {q}")));
        }
        if !model.is_non_monotone() {
            return Err(Error::Hypothesis(
                "scale functions require a process with non-monotone paths".into(),
            ));
        }
        model.phi(q)
    }

    pub fn model(&self) -> &LevyModel {
        &self.model
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn phi_q(&self) -> f64 {
        self.phi_q
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn backend_kind(&self) -> BackendKind {
        self.backend.kind()
    }

    /// `W^(q)(0+)`: `1/d` for bounded variation, `0` otherwise.
    pub fn w_at_zero(&self) -> f64 {
        let reg = self.model.path_regularity();
        if reg.bounded_variation {
            1.0 / reg.drift_d
        } else {
            0.0
        }
    }

    /// `W^(q)'(0+)`: `2/sigma^2` when `sigma > 0`, else `(Pi(-inf,0) + q)/d^2`.
    pub fn w_prime_at_zero(&self) -> f64 {
        let sigma = self.model.sigma();
        if sigma > 0.0 {
            2.0 / (sigma * sigma)
        } else {
            let d = self.model.path_regularity().drift_d;
            (self.model.jump_rate() + self.q) / (d * d)
        }
    }

    /// Exponential-sum representation, when the backend has one.
    pub fn exp_sum(&self) -> Option<Vec<PoleTerm>> {
        match &self.backend {
            Backend::PartialFraction { terms } => Some(terms.clone()),
            Backend::ClosedFormBrownian { drift, sigma, delta } if *delta > 0.0 => {
                let s2 = sigma * sigma;
                Some(vec![
                    PoleTerm {
                        root: Complex64::new((delta - drift) / s2, 0.0),
                        coeff: Complex64::new(1.0 / delta, 0.0),
                    },
                    PoleTerm {
                        root: Complex64::new(-(delta + drift) / s2, 0.0),
                        coeff: Complex64::new(-1.0 / delta, 0.0),
                    },
                ])
            }
            _ => None,
        }
    }

    pub fn w(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            return self.w_at_zero();
        }
        match &self.backend {
            Backend::ClosedFormBrownian { drift, sigma, delta } => {
                let s2 = sigma * sigma;
                if *delta == 0.0 {
                    2.0 * x / s2
                } else {
                    // (2/delta) e^{-m x/s2} sinh(x delta/s2), written without overflow of sinh
                    (-(delta + drift) * x / s2).exp() * (2.0 * delta * x / s2).exp_m1() / delta
                }
            }
            Backend::PartialFraction { terms } => {
                terms.iter().map(|t| t.coeff * (t.root * x).exp()).sum::<Complex64>().re
            }
            Backend::NumericalInversion { inverter, shift } => {
                let g = inverter.invert(|s| 1.0 / (self.model.psi_complex(s + *shift) - self.q), x);
                (shift * x).exp() * g
            }
        }
    }

    /// `W^(q)'(x)`; zero on `x < 0` and the right derivative at `x = 0`.
    pub fn w_prime(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            return self.w_prime_at_zero();
        }
        match &self.backend {
            Backend::ClosedFormBrownian { drift, sigma, delta } => {
                let s2 = sigma * sigma;
                if *delta == 0.0 {
                    2.0 / s2
                } else {
                    let a = (delta - drift) / s2;
                    let b = (delta + drift) / s2;
                    (a * (a * x).exp() + b * (-b * x).exp()) / delta
                }
            }
            Backend::PartialFraction { terms } => terms
                .iter()
                .map(|t| t.coeff * t.root * (t.root * x).exp())
                .sum::<Complex64>()
                .re,
            Backend::NumericalInversion { inverter, shift } => {
                let w0 = self.w_at_zero();
                let g = inverter.invert(
                    |s| (s + *shift) / (self.model.psi_complex(s + *shift) - self.q) - w0,
                    x,
                );
                (shift * x).exp() * g
            }
        }
    }

    /// `Wbar^(q)(x) = int_0^x W^(q)(z) dz`.
    pub fn w_bar(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match &self.backend {
            Backend::ClosedFormBrownian { drift, sigma, delta } => {
                let s2 = sigma * sigma;
                if *delta == 0.0 {
                    x * x / s2
                } else {
                    let a = (delta - drift) / s2;
                    let b = (delta + drift) / s2;
                    (expm1_over(a, x) - expm1_over(-b, x)) / delta
                }
            }
            Backend::PartialFraction { terms } => terms
                .iter()
                .map(|t| t.coeff * expm1_over_c(t.root, x))
                .sum::<Complex64>()
                .re,
            Backend::NumericalInversion { .. } => self.integrate_w(|_| 1.0, x),
        }
    }

    /// `Z^(q)(x) = 1 + q Wbar^(q)(x)`; equal to 1 on `x <= 0`.
    pub fn z(&self, x: f64) -> f64 {
        if x <= 0.0 || self.q == 0.0 {
            return 1.0;
        }
        1.0 + self.q * self.w_bar(x)
    }

    /// `int_0^x exp(-r z) W^(q)(z) dz` for `x >= 0`.
    pub fn partial_laplace(&self, r: f64, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match (&self.backend, self.exp_sum()) {
            (_, Some(terms)) => terms
                .iter()
                .map(|t| t.coeff * expm1_over_c(t.root - r, x))
                .sum::<Complex64>()
                .re,
            (Backend::ClosedFormBrownian { sigma, .. }, None) => {
                // W = 2 z / sigma^2
                let s2 = sigma * sigma;
                if r == 0.0 {
                    x * x / s2
                } else {
                    2.0 / s2 * (-(-r * x).exp_m1() - r * x * (-r * x).exp()) / (r * r)
                }
            }
            _ => self.integrate_w(|z| (-r * z).exp(), x),
        }
    }

    /// `int_0^inf exp(-r u) W^(q)(x + u) du` for `r > Phi(q)` and `x >= 0`.
    pub fn tail_laplace(&self, r: f64, x: f64) -> Result<f64> {
        if !(r > self.phi_q) {
            return Err(Error::Domain(format!(
                "tail Laplace transform needs r > Phi(q) = {}, got {r}",
                self.phi_q
            )));
        }
        let x = x.max(0.0);
        match (&self.backend, self.exp_sum()) {
            (_, Some(terms)) => Ok(terms
                .iter()
                .map(|t| t.coeff * (t.root * x).exp() / (r - t.root))
                .sum::<Complex64>()
                .re),
            (Backend::ClosedFormBrownian { sigma, .. }, None) => {
                Ok(2.0 / (sigma * sigma) * (x / r + 1.0 / (r * r)))
            }
            _ => self.tail_laplace_quadrature(r, x),
        }
    }

    /// Truncated-quadrature route for [`Self::tail_laplace`], valid for every
    /// backend.
    pub fn tail_laplace_quadrature(&self, r: f64, x: f64) -> Result<f64> {
        let gap = r - self.phi_q;
        // exp(-phi u) W(x+u) is bounded by exp(phi x) K (1 + u) with K from
        // the Esscher-transformed drift, or the linear growth when it is zero.
        let slope = self.model.psi_prime_unchecked(self.phi_q);
        let k = if slope > 1e-8 {
            1.0 / slope
        } else {
            self.w(x + 1.0) * (-self.phi_q * (x + 1.0)).exp() + 1.0
        };
        let scale = (self.phi_q * x).exp() * k;
        let mut upper = 1.0;
        while scale * (1.0 + upper) * (-gap * upper).exp() / gap > 1e-13 {
            upper *= 1.5;
        }
        let tol = 1e-12 * scale.max(1.0);
        let f = |u: f64| (-r * u).exp() * self.w(x + u);
        // split geometrically so the adaptive rule sees the decay
        let mut total = 0.0;
        let mut a = 0.0;
        let mut b = (1.0 / gap).min(upper);
        loop {
            total += quadrature::integrate(f, a, b, tol)?;
            if b >= upper {
                break;
            }
            a = b;
            b = (2.0 * b).min(upper);
        }
        Ok(total)
    }

    fn integrate_w(&self, weight: impl Fn(f64) -> f64, x: f64) -> f64 {
        // inverted values carry ~1e-11 relative noise, so the relative
        // target sits just above it
        let f = |z: f64| weight(z) * self.w(z);
        quadrature::integrate_with(f, 0.0, x, W_BAR_ABS_TOL, 1e-11)
            .or_else(|_| quadrature::integrate_with(f, 0.0, x, W_BAR_ABS_TOL, 1e-9))
            .unwrap_or(f64::NAN)
    }
}

/// `(exp(a x) - 1) / a`, equal to `x` at `a = 0`.
fn expm1_over(a: f64, x: f64) -> f64 {
    if a == 0.0 {
        x
    } else {
        (a * x).exp_m1() / a
    }
}

fn expm1_over_c(a: Complex64, x: f64) -> Complex64 {
    let ax = a * x;
    if ax.im == 0.0 {
        return Complex64::new(expm1_over(a.re, x), 0.0);
    }
    if ax.norm() < 1e-5 {
        return x * (1.0 + ax / 2.0 + ax * ax / 6.0);
    }
    (ax.exp() - 1.0) / a
}

fn closed_form_brownian(model: &LevyModel, q: f64) -> Backend {
    let drift = model.gamma();
    let sigma = model.sigma();
    let delta = (drift * drift + 2.0 * q * sigma * sigma).sqrt();
    Backend::ClosedFormBrownian { drift, sigma, delta }
}

/// Roots of `psi(theta) = q` and their residues, or `None` on a repeated root.
fn partial_fraction_terms(model: &LevyModel, q: f64, phi_q: f64) -> Result<Option<Vec<PoleTerm>>> {
    let s2 = 0.5 * model.sigma() * model.sigma();
    let (num, den, rate) = match model.jumps() {
        Some(j) => {
            let (n, d) = j.claim.rational_transform();
            (n, d, j.rate)
        }
        None => (vec![0.0], vec![1.0], 0.0),
    };
    let lin = if s2 > 0.0 {
        vec![-rate - q, model.gamma(), s2]
    } else {
        vec![-rate - q, model.gamma()]
    };
    let numerator = poly::trim(poly::add(&poly::mul(&lin, &den), &poly::scale(&num, rate)));
    let degree = numerator.len() - 1;

    let mut roots: Vec<Complex64> = poly::roots(&numerator)
        .into_iter()
        .map(|z0| polish_root(model, q, z0))
        .collect();
    if roots.len() != degree {
        return Err(Error::Backend("companion matrix lost roots".into()));
    }

    // the root with the largest real part is Phi(q)
    let lead = roots
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.re.total_cmp(&b.1.re))
        .map(|(i, _)| i)
        .unwrap();
    if (roots[lead] - phi_q).norm() > 1e-6 * (1.0 + phi_q) {
        return Err(Error::Backend(format!(
            "largest root {} does not match Phi(q) = {phi_q}",
            roots[lead]
        )));
    }
    roots.swap(0, lead);
    roots[0] = Complex64::new(phi_q, 0.0);

    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if (a - b).norm() <= SIMPLE_ROOT_TOL * scale {
                return Ok(None);
            }
        }
    }

    let mut terms = Vec::with_capacity(degree);
    for root in roots {
        let residual = (model.psi_complex(root) - q).norm();
        if residual > ROOT_RESIDUAL_TOL * (1.0 + q) {
            return Err(Error::Backend(format!(
                "root {root} leaves residual {residual:e} in psi = q"
            )));
        }
        let slope = model.psi_prime_complex(root);
        if slope.norm() <= SIMPLE_ROOT_TOL {
            return Ok(None);
        }
        terms.push(PoleTerm {
            root,
            coeff: 1.0 / slope,
        });
    }
    Ok(Some(terms))
}

fn polish_root(model: &LevyModel, q: f64, mut z: Complex64) -> Complex64 {
    for _ in 0..50 {
        let f = model.psi_complex(z) - q;
        let df = model.psi_prime_complex(z);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    if z.im.abs() <= 1e-13 * (1.0 + z.re.abs()) {
        z.im = 0.0;
    }
    z
}
