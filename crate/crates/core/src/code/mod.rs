//! Cyclic codes over GF(q) described by a generator polynomial.

mod bch;
mod distance;

pub use bch::{bch_lower_bound, longest_progression, Progression};
pub use distance::{
    column_search, enumeration_distance, min_distance_exact, ColumnSearch, DistanceConfig,
    DistanceOutcome, DistanceReport,
};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::field::{multiplicative_order, FieldElement, FieldError, FieldTower, FiniteField};
use crate::linalg::Matrix;
use crate::numtheory;
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("generator does not divide x^{n} - 1")]
    NotADivisor { n: usize },
    #[error("gcd(n,q) ≠ 1 (n = {n}, q = {q})")]
    NotCoprime { n: usize, q: u64 },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("generator has a repeated root")]
    RepeatedRoot,
    #[error("the code has dimension 0, so its minimum distance is undefined")]
    TrivialCode,
    #[error("search at weight {weight} needs {subsets} rank tests, over the cap of {cap}")]
    InfeasibleBudget {
        weight: usize,
        subsets: u128,
        cap: u128,
    },
    #[error("message space of size {size} exceeds the enumeration cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("distance oracles disagree: enumeration found {enumeration}, column search found {column_search:?}")]
    OracleDisagreement {
        enumeration: usize,
        column_search: DistanceOutcome,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodeMode {
    /// `c(x) = m(x) g(x)`
    Multiplicative,
    /// Message in the last `k` positions, parity in the first `n - k`.
    Systematic,
}

struct CodeInner {
    n: usize,
    k: usize,
    tower: FieldTower,
    xi: FieldElement,
    generator: Polynomial,
    zeros: Vec<usize>,
    expanded: OnceLock<Matrix>,
    parity: OnceLock<Matrix>,
    generator_matrix: OnceLock<Matrix>,
}

/// A q-ary cyclic code of length `n` with `gcd(n, q) = 1`.
///
/// Carries the splitting field GF(q^s) of `x^n - 1`, the primitive `n`-th
/// root `ξ` used to index zeros, and the complete defining set
/// `Z = { e : g(ξ^e) = 0 }`.
#[derive(Clone)]
pub struct CyclicCode(Arc<CodeInner>);

impl CyclicCode {
    pub fn from_generator(base: &FiniteField, n: usize, g: &Polynomial) -> Result<Self, CodeError> {
        if g.field() != base {
            return Err(PolyError::FieldMismatch {
                left: base.size(),
                right: g.field().size(),
            }
            .into());
        }
        let q = base.size();
        if n == 0 || numtheory::gcd(n as u64, q) != 1 {
            return Err(CodeError::NotCoprime { n, q });
        }
        if !g.divides_xn_minus_1(n)? {
            return Err(CodeError::NotADivisor { n });
        }
        let s = multiplicative_order(q, n as u64)? as u32;
        let ext = FiniteField::new(base.characteristic(), base.degree() * s)?;
        let tower = FieldTower::new(base, &ext)?;
        let xi = ext.primitive_nth_root(n as u64)?;
        let lifted = g.embed(&tower)?;
        let mut zeros = Vec::new();
        let mut root = 1u32;
        for e in 0..n {
            if lifted.eval_raw(root) == 0 {
                zeros.push(e);
            }
            root = ext.mul_raw(root, xi.value());
        }
        let deg = g.degree().unwrap_or(0);
        if zeros.len() != deg {
            return Err(CodeError::RepeatedRoot);
        }
        Ok(CyclicCode(Arc::new(CodeInner {
            n,
            k: n - deg,
            tower,
            xi,
            generator: g.clone(),
            zeros,
            expanded: OnceLock::new(),
            parity: OnceLock::new(),
            generator_matrix: OnceLock::new(),
        })))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.tower.base().size()
    }

    pub fn base_field(&self) -> &FiniteField {
        self.0.tower.base()
    }

    pub fn splitting_field(&self) -> &FiniteField {
        self.0.tower.ext()
    }

    pub fn tower(&self) -> &FieldTower {
        &self.0.tower
    }

    /// `s`, the order of `q` modulo `n`.
    pub fn splitting_degree(&self) -> u32 {
        self.0.tower.degree()
    }

    /// The primitive `n`-th root of unity ξ.
    pub fn xi(&self) -> &FieldElement {
        &self.0.xi
    }

    pub fn generator(&self) -> &Polynomial {
        &self.0.generator
    }

    /// Complete defining set, ascending.
    pub fn zeros(&self) -> &[usize] {
        &self.0.zeros
    }

    /// Rows `x^i g(x)` for `i < k`.
    pub fn generator_matrix(&self) -> &Matrix {
        self.0.generator_matrix.get_or_init(|| {
            let n = self.n();
            let g = self.generator().raw_coefficients();
            let rows = (0..self.k())
                .map(|i| {
                    let mut row = vec![0u32; n];
                    row[i..i + g.len()].copy_from_slice(g);
                    row
                })
                .collect();
            Matrix::from_rows(self.base_field(), n, rows)
        })
    }

    /// The `s|Z| x n` parity-check matrix over GF(q) obtained by expanding
    /// every entry `ξ^(e j)` of the Vandermonde matrix on the zeros into its
    /// coordinates over the basis `1, ξ, ..., ξ^(s-1)`.
    pub fn expanded_parity_check(&self) -> &Matrix {
        self.0.expanded.get_or_init(|| {
            let n = self.n();
            let s = self.splitting_degree() as usize;
            let ext = self.splitting_field();
            let coords = self
                .tower()
                .coordinate_map(self.xi())
                .expect("ξ generates GF(q^s) over GF(q)");
            let mut h = Matrix::zeros(self.base_field(), s * self.zeros().len(), n);
            for (zi, &e) in self.zeros().iter().enumerate() {
                let step = ext.pow_raw(self.xi().value(), e as u64);
                let mut entry = 1u32;
                for j in 0..n {
                    for (u, c) in coords.coordinates_raw(entry).into_iter().enumerate() {
                        h.set(zi * s + u, j, c);
                    }
                    entry = ext.mul_raw(entry, step);
                }
            }
            h
        })
    }

    /// Independent rows spanning the dual; exactly `n - k` of them.
    pub fn parity_check(&self) -> &Matrix {
        self.0.parity.get_or_init(|| {
            let h = self.expanded_parity_check().row_basis();
            debug_assert_eq!(h.rows(), self.n() - self.k());
            h
        })
    }

    fn check_len(&self, len: usize, expected: usize) -> Result<(), CodeError> {
        if len == expected {
            Ok(())
        } else {
            Err(CodeError::LengthMismatch { expected, got: len })
        }
    }

    fn raw_word(&self, word: &[FieldElement]) -> Result<Vec<u32>, CodeError> {
        let base = self.base_field();
        word.iter()
            .map(|c| {
                if c.field() == base {
                    Ok(c.value())
                } else {
                    Err(FieldError::FieldMismatch {
                        left: base.size(),
                        right: c.field().size(),
                    }
                    .into())
                }
            })
            .collect()
    }

    fn lift_word(&self, raw: Vec<u32>) -> Vec<FieldElement> {
        let base = self.base_field();
        raw.into_iter()
            .map(|v| base.element(v as u64).expect("in range"))
            .collect()
    }

    /// Membership by divisibility of `c(x)` by `g(x)`.
    pub fn is_codeword(&self, word: &[FieldElement]) -> Result<bool, CodeError> {
        self.check_len(word.len(), self.n())?;
        let c = Polynomial::new(self.base_field(), word)?;
        Ok(c.rem(self.generator())?.is_zero())
    }

    /// Membership by the parity-check matrix.
    pub fn syndrome_is_zero(&self, word: &[u32]) -> bool {
        self.parity_check().mul_vec(word).iter().all(|&x| x == 0)
    }

    pub fn encode_raw(&self, message: &[u32], mode: EncodeMode) -> Result<Vec<u32>, CodeError> {
        self.check_len(message.len(), self.k())?;
        let f = self.base_field();
        let n = self.n();
        let m = Polynomial::from_raw(f, message.to_vec());
        let c = match mode {
            EncodeMode::Multiplicative => m.mul(self.generator())?,
            EncodeMode::Systematic => {
                let shifted = m.mul(&Polynomial::monomial(&f.one(), n - self.k()))?;
                let r = shifted.rem(self.generator())?;
                shifted.sub(&r)?
            }
        };
        let mut out = c.raw_coefficients().to_vec();
        out.resize(n, 0);
        Ok(out)
    }

    pub fn encode(
        &self,
        message: &[FieldElement],
        mode: EncodeMode,
    ) -> Result<Vec<FieldElement>, CodeError> {
        let raw = self.raw_word(message)?;
        Ok(self.lift_word(self.encode_raw(&raw, mode)?))
    }
}

impl fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] cyclic code over GF({}) with g(x) = {}",
            self.n(),
            self.k(),
            self.q(),
            self.generator()
        )
    }
}
