//! Optimal cyclic (r, δ) locally repairable codes.

mod bound;
mod construct;
mod locality;
mod search;
mod verify;

pub use bound::singleton_bound;
pub use construct::{construct, LrcCode};
pub use locality::{
    check_witness, locality_check_defining_set, locality_check_direct, punctured_distance,
    DefiningSetWitness, DirectLocality,
};
pub use search::{search_params, SearchHit};
pub use verify::{measure, verify, verify_many, LrcReport, Measurements, VerifyConfig};

use std::fmt;

use crate::code::CodeError;
use crate::field::FieldError;
use crate::numtheory::{extended_gcd, gcd, prime_power};
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LrcError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generator roots collide at exponent {exponent}")]
    RootCollision { exponent: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn failed(condition: impl Into<String>) -> LrcError {
    LrcError::PreconditionFailed(condition.into())
}

/// Length, alphabet, locality and local distance of an LRC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LrcParams {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub delta: usize,
}

impl LrcParams {
    pub fn new(q: u64, n: usize, r: usize, delta: usize) -> Self {
        LrcParams { q, n, r, delta }
    }

    /// Repair-group size `r + δ - 1`.
    pub fn group_size(&self) -> usize {
        self.r + self.delta - 1
    }

    /// Number of repair groups `n / (r + δ - 1)`, when that divides.
    pub fn rho(&self) -> Option<usize> {
        let v = self.group_size();
        (v > 0 && self.n.is_multiple_of(v)).then(|| self.n / v)
    }
}

impl fmt::Display for LrcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} n={} r={} δ={}", self.q, self.n, self.r, self.delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    /// Distance δ + 1.
    T1,
    /// Distance δ + 2.
    T2,
    /// Distance 2δ.
    T3,
    /// Any distance `d` with δ + 1 ≤ d ≤ 2δ.
    Remark3 { d: usize },
    /// δ = 3, distance 6, with `(r + 2) | (q + 1)`.
    T4,
}

impl ConstructionKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ConstructionKind::T1 => "t1",
            ConstructionKind::T2 => "t2",
            ConstructionKind::T3 => "t3",
            ConstructionKind::Remark3 { .. } => "remark3",
            ConstructionKind::T4 => "t4",
        }
    }

    /// Parses a tag; `remark3` needs the target distance.
    pub fn from_tag(tag: &str, d: Option<usize>) -> Result<Self, LrcError> {
        match (tag.to_ascii_lowercase().as_str(), d) {
            ("t1", _) => Ok(ConstructionKind::T1),
            ("t2", _) => Ok(ConstructionKind::T2),
            ("t3", _) => Ok(ConstructionKind::T3),
            ("t4", _) => Ok(ConstructionKind::T4),
            ("remark3", Some(d)) => Ok(ConstructionKind::Remark3 { d }),
            ("remark3", None) => Err(LrcError::InvalidParams(
                "remark3 needs a target distance d".into(),
            )),
            (other, _) => Err(LrcError::InvalidParams(format!(
                "unknown construction '{other}'"
            ))),
        }
    }

    /// Minimum distance the construction promises.
    pub fn target_distance(&self, delta: usize) -> usize {
        match self {
            ConstructionKind::T1 => delta + 1,
            ConstructionKind::T2 => delta + 2,
            ConstructionKind::T3 => 2 * delta,
            ConstructionKind::Remark3 { d } => *d,
            ConstructionKind::T4 => 6,
        }
    }

    /// Closed-form dimension `rρ - (d - δ)`.
    pub fn expected_dimension(&self, params: &LrcParams) -> Option<usize> {
        let rho = params.rho()?;
        let drop = self
            .target_distance(params.delta)
            .checked_sub(params.delta)?;
        (params.r * rho).checked_sub(drop)
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionKind::Remark3 { d } => write!(f, "remark3(d={d})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// Integers with `a ρ + b (r + δ - 1) = target` and `0 ≤ a < r + δ - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bezout {
    pub a: i64,
    pub b: i64,
    pub target: i64,
}

impl Bezout {
    fn solve(rho: usize, v: usize, target: i64) -> Option<Bezout> {
        let (g, x, _) = extended_gcd(rho as i64, v as i64);
        if target % g != 0 {
            return None;
        }
        let v_i = v as i64;
        let a = (x * (target / g)).rem_euclid(v_i);
        let b = (target - a * rho as i64) / v_i;
        debug_assert_eq!(a * rho as i64 + b * v_i, target);
        Some(Bezout { a, b, target })
    }
}

/// Checks every hypothesis of `kind` for `params`, in a fixed order, and
/// returns the Bézout data the construction needs (none for T1).
///
/// Conditions that do not depend on `n` are checked first, so that a
/// parameter family that can never work is reported the same way for every
/// length.
pub fn check_preconditions(
    params: &LrcParams,
    kind: ConstructionKind,
) -> Result<Option<Bezout>, LrcError> {
    let LrcParams { q, n, r, delta } = *params;
    if prime_power(q).is_none() {
        return Err(failed(format!("q = {q} must be a prime power")));
    }
    let v = params.group_size();
    let q_u = q as usize;
    match kind {
        ConstructionKind::T1
        | ConstructionKind::T2
        | ConstructionKind::T3
        | ConstructionKind::Remark3 { .. } => {
            if r < 2 {
                return Err(failed("r ≥ 2"));
            }
            if delta < 2 {
                return Err(failed("δ ≥ 2"));
            }
            match kind {
                ConstructionKind::T2 if r < 3 => return Err(failed("r ≥ 3")),
                ConstructionKind::T3 if r < delta + 1 => return Err(failed("r ≥ δ+1")),
                ConstructionKind::Remark3 { d } => {
                    if d < delta + 1 || d > 2 * delta {
                        return Err(failed("δ+1 ≤ d ≤ 2δ"));
                    }
                    if r < d - delta + 1 {
                        return Err(failed("r ≥ d−δ+1"));
                    }
                }
                _ => {}
            }
            if !(q_u - 1).is_multiple_of(v) {
                return Err(failed("(r+δ−1) | q−1"));
            }
            if n == 0 || gcd(n as u64, q) != 1 {
                return Err(failed("gcd(n,q) ≠ 1"));
            }
            if n % v != 0 {
                return Err(failed("(r+δ−1) | n"));
            }
            let rho = n / v;
            match kind {
                ConstructionKind::T1 => Ok(None),
                ConstructionKind::T2 => {
                    if !(delta as u64).is_multiple_of(gcd(rho as u64, v as u64)) {
                        return Err(failed("gcd(ρ, r+δ−1) | δ"));
                    }
                    Ok(Some(
                        Bezout::solve(rho, v, delta as i64).expect("gcd divides δ"),
                    ))
                }
                _ => {
                    if gcd(rho as u64, v as u64) != 1 {
                        return Err(failed("gcd(ρ, r+δ−1) = 1"));
                    }
                    Ok(Some(Bezout::solve(rho, v, 1).expect("coprime")))
                }
            }
        }
        ConstructionKind::T4 => {
            if delta != 3 {
                return Err(failed("δ = 3"));
            }
            if r < 4 {
                return Err(failed("r ≥ 4"));
            }
            if (r + 2) % 2 == 0 {
                return Err(failed(format!(
                    "n must be odd, but r+2 = {} is even and must divide n",
                    r + 2
                )));
            }
            if !(q_u + 1).is_multiple_of(r + 2) {
                return Err(failed("(r+2) | q+1"));
            }
            if n == 0 || gcd(n as u64, q) != 1 {
                return Err(failed("gcd(n,q) ≠ 1"));
            }
            if n % 2 == 0 {
                return Err(failed("n must be odd"));
            }
            if n % (r + 2) != 0 {
                return Err(failed("(r+2) | n"));
            }
            let rho = n / (r + 2);
            if gcd(rho as u64, (r + 2) as u64) != 1 {
                return Err(failed("gcd(ρ, r+2) = 1"));
            }
            Ok(Some(Bezout::solve(rho, v, 1).expect("coprime")))
        }
    }
}
