//! Single-path simulation.
//!
//! Between jumps the path is `x + gamma t + sigma B_t`. With `sigma = 0` it
//! is linear and everything is computed exactly. With `sigma > 0` each
//! stretch between jumps is cut into top-level pieces of length at most
//! [`MAX_PIECE`], and each piece is refined by Brownian-bridge midpoints
//! (node `n` has children `2n` and `2n + 1`) only where the bridge could
//! reach zero or the barrier with probability above [`SKIP_EPS`]. Leaves
//! have length at most `dt` and use the left-endpoint rule. Because a
//! node's random numbers depend only on its id, runs with different `dt`
//! see the same Brownian path at different resolutions.

use crate::levy_model::ClaimDistribution;

use super::rng::{PathStream, Tag};

pub(crate) const MAX_PIECE: f64 = 1.0;
/// A bridge whose probability of touching a level is below this is taken
/// not to touch it.
pub(crate) const SKIP_EPS: f64 = 1e-10;
const MAX_DEPTH: u32 = 30;

/// Parameters shared by all paths of one run.
#[derive(Debug, Clone)]
pub(crate) struct Walker<'a> {
    pub gamma: f64,
    pub sigma: f64,
    pub jump_rate: f64,
    pub claim: Option<&'a ClaimDistribution>,
    pub dt: f64,
    pub horizon: f64,
    pub bridge_correction: bool,
    /// Absolute level; the path is stopped at the first time it is below.
    pub barrier: Option<f64>,
    /// Level above which the path is declared to never come back below zero.
    pub escape: f64,
    /// Occupation beyond which the caller no longer cares.
    pub occupation_cap: f64,
    /// Record the lengths of excursions below zero (`sigma = 0` only).
    pub track_excursions: bool,
    pub start: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct PathOutcome {
    pub occupation: f64,
    /// Position right after the first passage below the barrier.
    pub killed_at: Option<f64>,
    /// Stopped by the horizon while the outcome was still open.
    pub truncated: bool,
    pub excursions: Vec<f64>,
}

struct State {
    occupation: f64,
    killed_at: Option<f64>,
    capped: bool,
}

impl<'a> Walker<'a> {
    pub fn run(&self, stream: &PathStream) -> PathOutcome {
        if self.sigma == 0.0 {
            self.run_linear(stream)
        } else {
            self.run_diffusive(stream)
        }
    }

    fn next_gap(&self, stream: &PathStream, j: u32) -> f64 {
        if self.jump_rate > 0.0 {
            stream.exponential(Tag::JumpTime, j, 0) / self.jump_rate
        } else {
            f64::INFINITY
        }
    }

    fn claim_size(&self, stream: &PathStream, j: u32) -> f64 {
        match self.claim {
            None => 0.0,
            Some(ClaimDistribution::Exponential { rate }) => {
                stream.exponential(Tag::ClaimSize, j, 0) / rate
            }
            Some(ClaimDistribution::HyperExponential { weights, rates }) => {
                let (pick, u) = stream.uniforms(Tag::ClaimSize, j, 0);
                let mut acc = 0.0;
                let mut i = weights.len() - 1;
                for (k, w) in weights.iter().enumerate() {
                    acc += w;
                    if pick < acc {
                        i = k;
                        break;
                    }
                }
                -u.ln() / rates[i]
            }
            Some(ClaimDistribution::Erlang { shape, rate }) => {
                let mut total = 0.0;
                let mut left = *shape;
                let mut block = 0;
                while left > 0 {
                    let (u1, u2) = stream.uniforms(Tag::ClaimSize, j, block);
                    total -= u1.ln();
                    if left > 1 {
                        total -= u2.ln();
                    }
                    left = left.saturating_sub(2);
                    block += 1;
                }
                total / rate
            }
        }
    }

    fn run_linear(&self, stream: &PathStream) -> PathOutcome {
        let g = self.gamma;
        debug_assert!(g > 0.0);
        let mut out = PathOutcome::default();
        let mut x = self.start;
        let mut t = 0.0;
        let mut j = 0u32;
        let mut next_jump = self.next_gap(stream, 0);
        // length of the excursion below zero in progress, if any
        let mut open: Option<f64> = None;
        loop {
            let end = next_jump.min(self.horizon);
            let len = end - t;
            let y = x + g * len;
            let below = if y <= 0.0 {
                len
            } else if x <= 0.0 {
                -x / g
            } else {
                0.0
            };
            out.occupation += below;
            if let Some(e) = open.as_mut() {
                *e += below;
                if y > 0.0 {
                    out.excursions.push(*e);
                    open = None;
                }
            }
            x = y;
            t = end;
            if out.occupation >= self.occupation_cap {
                break;
            }
            if t >= self.horizon {
                out.truncated = true;
                break;
            }
            if x > self.escape {
                break;
            }
            let before = x;
            x -= self.claim_size(stream, j);
            if let Some(level) = self.barrier {
                if x < level {
                    out.killed_at = Some(x);
                    break;
                }
            }
            if self.track_excursions && before > 0.0 && x <= 0.0 && open.is_none() {
                open = Some(0.0);
            }
            j += 1;
            next_jump = t + self.next_gap(stream, j);
        }
        if let Some(e) = open {
            out.excursions.push(e);
        }
        if !self.track_excursions {
            out.excursions.clear();
        }
        out
    }

    fn run_diffusive(&self, stream: &PathStream) -> PathOutcome {
        let mut st = State {
            occupation: 0.0,
            killed_at: None,
            capped: false,
        };
        let mut out = PathOutcome::default();
        let mut x = self.start;
        let mut t = 0.0;
        let mut j = 0u32;
        let mut piece = 0u32;
        let mut next_jump = self.next_gap(stream, 0);
        let no_jumps = self.claim.is_none();
        let return_level = 3.0 * self.sigma;
        let s2 = self.sigma * self.sigma;
        'outer: loop {
            let end = next_jump.min(self.horizon);
            let span = end - t;
            let n = (span / MAX_PIECE).ceil().max(1.0) as u32;
            let len = span / n as f64;
            for _ in 0..n {
                if no_jumps && x > return_level {
                    // without jumps the path is back at zero before it can
                    // accumulate occupation, or drifts away for good
                    let p_return = if self.gamma > 0.0 {
                        (-2.0 * self.gamma * x / s2).exp()
                    } else {
                        1.0
                    };
                    if stream.uniform(Tag::Return, piece, 0) >= p_return {
                        break 'outer;
                    }
                    x = 0.0;
                }
                let y = x + self.gamma * len + self.sigma * len.sqrt() * stream.normal(Tag::CoarseIncrement, piece, 0);
                if !self.bridge(stream, &mut st, piece, 1, 0, x, y, len) {
                    break 'outer;
                }
                x = y;
                piece += 1;
                if x > self.escape {
                    break 'outer;
                }
            }
            t = end;
            if t >= self.horizon {
                out.truncated = true;
                break;
            }
            x -= self.claim_size(stream, j);
            if let Some(level) = self.barrier {
                if x < level {
                    st.killed_at = Some(x);
                    break;
                }
            }
            j += 1;
            next_jump = t + self.next_gap(stream, j);
        }
        out.occupation = st.occupation;
        out.killed_at = st.killed_at;
        out.truncated &= !st.capped;
        out
    }

    /// `Some(true)` if the bridge from `a` to `y` stays above `level`,
    /// `Some(false)` if it stays below, up to probability [`SKIP_EPS`].
    fn side(&self, a: f64, y: f64, level: f64, len: f64) -> Option<bool> {
        let (u, v) = (a - level, y - level);
        if u * v <= 0.0 {
            return None;
        }
        let p = (-2.0 * u * v / (self.sigma * self.sigma * len)).exp();
        (p < SKIP_EPS).then_some(u > 0.0)
    }

    /// Walks the bridge on one node; `false` once the path is finished.
    #[allow(clippy::too_many_arguments)]
    fn bridge(
        &self,
        stream: &PathStream,
        st: &mut State,
        piece: u32,
        node: u32,
        depth: u32,
        a: f64,
        y: f64,
        len: f64,
    ) -> bool {
        let occupied = match self.side(a, y, 0.0, len) {
            Some(true) => Some(0.0),
            Some(false) => Some(len),
            None => None,
        };
        let barrier_clear = match self.barrier {
            None => true,
            Some(level) => self.side(a, y, level, len) == Some(true),
        };
        if let (Some(o), true) = (occupied, barrier_clear) {
            st.occupation += o;
            return self.under_cap(st);
        }
        if len <= self.dt || depth >= MAX_DEPTH {
            if a <= 0.0 {
                st.occupation += len;
            }
            if let Some(level) = self.barrier {
                // continuous crossing: the path sits exactly on the level
                if y < level {
                    st.killed_at = Some(level);
                    return false;
                }
                if self.bridge_correction && a >= level {
                    let p = (-2.0 * (a - level) * (y - level) / (self.sigma * self.sigma * len)).exp();
                    if stream.uniform(Tag::BridgeCrossing, node, piece) < p {
                        st.killed_at = Some(level);
                        return false;
                    }
                }
            }
            return self.under_cap(st);
        }
        let mid = 0.5 * (a + y) + 0.5 * self.sigma * len.sqrt() * stream.normal(Tag::BridgeMidpoint, node, piece);
        let half = 0.5 * len;
        self.bridge(stream, st, piece, 2 * node, depth + 1, a, mid, half)
            && self.bridge(stream, st, piece, 2 * node + 1, depth + 1, mid, y, half)
    }

    fn under_cap(&self, st: &mut State) -> bool {
        if st.occupation >= self.occupation_cap {
            st.capped = true;
            return false;
        }
        true
    }
}
