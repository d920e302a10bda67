use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};

/// Step size rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Schedule {
    Fixed { eta: f64 },
    /// Doubling trick: epoch `e` lasts `base_len · 2^e` rounds with
    /// `η_e = √(ln d / len_e)`, and the learner restarts at each epoch.
    Doubling { base_len: usize },
}

impl Schedule {
    pub const DEFAULT_BASE_LEN: usize = 8;

    pub fn doubling() -> Self {
        Schedule::Doubling {
            base_len: Self::DEFAULT_BASE_LEN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Schedule::Fixed { eta } if !(eta > 0.0 && eta.is_finite()) => {
                Err(Error::InvalidArgument(format!("step size must be positive, got {eta}")))
            }
            Schedule::Doubling { base_len: 0 } => Err(Error::InvalidArgument("epoch length must be positive".into())),
            _ => Ok(()),
        }
    }

    /// `(epoch index, epoch length)` of the 0-based round `n`.
    pub fn epoch_of(&self, n: usize) -> (usize, usize) {
        match *self {
            Schedule::Fixed { .. } => (0, usize::MAX),
            Schedule::Doubling { base_len } => {
                let (mut e, mut start, mut len) = (0, 0, base_len);
                while n >= start + len {
                    start += len;
                    len *= 2;
                    e += 1;
                }
                (e, len)
            }
        }
    }

    /// Step size in force at 0-based round `n` for a `d`-dimensional learner.
    pub fn eta_at(&self, n: usize, d: usize) -> f64 {
        match *self {
            Schedule::Fixed { eta } => eta,
            Schedule::Doubling { .. } => {
                let (_, len) = self.epoch_of(n);
                libm::sqrt(libm::log(d as f64) / len as f64)
            }
        }
    }

    /// Splits rounds `0..t` into `(η, rounds)` blocks sharing one restart.
    pub(crate) fn blocks(&self, t: usize, d: usize) -> alloc::vec::Vec<(f64, usize)> {
        let mut out = alloc::vec::Vec::new();
        match *self {
            Schedule::Fixed { eta } => out.push((eta, t)),
            Schedule::Doubling { base_len } => {
                let (mut start, mut len) = (0, base_len);
                while start < t {
                    let used = len.min(t - start);
                    out.push((libm::sqrt(libm::log(d as f64) / len as f64), used));
                    start += len;
                    len *= 2;
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        match *self {
            Schedule::Fixed { eta } => format!("fixed(eta={eta})"),
            Schedule::Doubling { base_len } => format!("doubling(base_len={base_len})"),
        }
    }
}

/// Which regret guarantee a horizon is computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    /// QCCE via external regret; `d` is the largest register dimension.
    General { d: usize },
    /// Separable QNE of a two-player zero-sum game.
    ZeroSum { d: usize },
    /// QNE of a `k`-player globally zero-sum polymatrix game.
    Polymatrix { d: usize, k: usize },
}

/// Fixed step size and horizon after which MMWU play certifies an
/// `ε`-equilibrium for `setting`.
pub fn horizon_for_epsilon(setting: Setting, epsilon: f64) -> Result<(f64, usize)> {
    let (d, scale, cap) = match setting {
        Setting::General { d } => (d, 2.0, 2.0),
        Setting::ZeroSum { d } => (d, 4.0, 4.0),
        Setting::Polymatrix { d, k } => {
            if k < 2 {
                return Err(Error::InvalidArgument("polymatrix games need at least two players".into()));
            }
            (d, 2.0 * k as f64, 2.0 * k as f64)
        }
    };
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {d}")));
    }
    if !(epsilon > 0.0 && epsilon <= cap) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, {cap}], got {epsilon}")));
    }
    let eta = epsilon / scale;
    let horizon = libm::ceil(scale * scale * libm::log(d as f64) / (epsilon * epsilon)) as usize;
    Ok((eta, horizon))
}
