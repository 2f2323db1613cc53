//! Philox4x32-10 counter-based generator.
//!
//! Every random number used by the simulator is a pure function of
//! `(seed, path, tag, index, sub)`, so a path can be regenerated from its
//! index alone and the order of evaluation never matters.

const M0: u32 = 0xD251_1F53;
const M1: u32 = 0xCD9E_8D57;
const W0: u32 = 0x9E37_79B9;
const W1: u32 = 0xBB67_AE85;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// Ten rounds of Philox on one 128-bit counter block.
pub fn philox4x32(mut ctr: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(W0);
            k[1] = k[1].wrapping_add(W1);
        }
        let (hi0, lo0) = mulhilo(M0, ctr[0]);
        let (hi1, lo1) = mulhilo(M1, ctr[2]);
        ctr = [hi1 ^ ctr[1] ^ k[0], lo1, hi0 ^ ctr[3] ^ k[1], lo0];
    }
    ctr
}

/// What a block of randomness is used for; keeps streams disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u32)]
pub enum Tag {
    JumpTime = 1,
    ClaimSize = 2,
    CoarseIncrement = 3,
    BridgeMidpoint = 4,
    BridgeCrossing = 5,
    Clock = 6,
    Return = 7,
}

/// The random numbers of one path.
#[derive(Debug, Clone, Copy)]
pub struct PathStream {
    key: [u32; 2],
    path: u32,
}

/// Uniform on the open interval `(0, 1)` from 64 random bits.
#[inline]
fn to_open_unit(hi: u32, lo: u32) -> f64 {
    let bits = ((u64::from(hi) << 32) | u64::from(lo)) >> 11;
    (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

impl PathStream {
    pub fn new(seed: u64, path: u32) -> Self {
        PathStream {
            key: [seed as u32, (seed >> 32) as u32],
            path,
        }
    }

    /// Two independent uniforms on `(0, 1)`.
    #[inline]
    pub fn uniforms(&self, tag: Tag, index: u32, sub: u32) -> (f64, f64) {
        let r = philox4x32([self.path, tag as u32, index, sub], self.key);
        (to_open_unit(r[0], r[1]), to_open_unit(r[2], r[3]))
    }

    #[inline]
    pub fn uniform(&self, tag: Tag, index: u32, sub: u32) -> f64 {
        self.uniforms(tag, index, sub).0
    }

    /// Standard normal by Box–Muller.
    #[inline]
    pub fn normal(&self, tag: Tag, index: u32, sub: u32) -> f64 {
        let (u1, u2) = self.uniforms(tag, index, sub);
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Standard exponential.
    #[inline]
    pub fn exponential(&self, tag: Tag, index: u32, sub: u32) -> f64 {
        -self.uniform(tag, index, sub).ln()
    }
}
