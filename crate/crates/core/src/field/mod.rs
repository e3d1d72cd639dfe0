//! Arithmetic in GF(p^m).
//!
//! A field is identified by `(p, m)`. The modulus is the lexicographically
//! smallest monic irreducible polynomial of degree `m` over GF(p), comparing
//! coefficients from the constant term upward, so building the same field
//! twice always yields the same representation. Fields are interned: every
//! call to [`FiniteField::new`] with the same `(p, m)` returns a handle to the
//! same shared instance.
//!
//! Elements are stored as their canonical index `c_0 + c_1 p + ... +
//! c_{m-1} p^{m-1}` in the polynomial basis. The canonical element ordering
//! used throughout the crate (e.g. when picking the smallest generator) is the
//! ordering of these indices. Prime-subfield elements are exactly the indices
//! below `p`.

mod element;
mod tower;

pub use element::FieldElement;
pub use tower::{CoordinateMap, FieldTower};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::numtheory;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

/// Fields up to this size get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{m} exceeds the supported maximum of 2^31")]
    SizeOverflow { p: u64, m: u32 },
    #[error("gcd(n, q) != 1 for n = {n}, q = {q}")]
    NotCoprime { q: u64, n: u64 },
    #[error("no primitive {n}-th root of unity in a field of size {size}")]
    NoSuchRoot { n: u64, size: u64 },
    #[error("GF({q}) is not a subfield of GF({size})")]
    NotASubfield { q: u64, size: u64 },
    #[error("elements belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u64, right: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("value {value} is not an element of GF({size})")]
    InvalidElement { value: u64, size: u64 },
    #[error("elements do not form a basis of the extension")]
    DegenerateBasis,
    #[error("malformed field element encoding: {0}")]
    Malformed(String),
}

struct LogTables {
    /// `exp[i] = g^i`, stored twice over so `exp[log a + log b]` needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) struct FieldInner {
    p: u32,
    m: u32,
    size: u32,
    modulus: Vec<u32>,
    group_order_factors: Vec<(u64, u32)>,
    generator: u32,
    tables: Option<LogTables>,
}

/// Handle to an interned finite field. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldInner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), FiniteField>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), FiniteField>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches the interned copy of) GF(p^m).
pub fn build_field(p: u64, m: u32) -> Result<FiniteField, FieldError> {
    FiniteField::new(p, m)
}

impl FiniteField {
    pub fn new(p: u64, m: u32) -> Result<Self, FieldError> {
        if !numtheory::is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let size = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(FieldError::SizeOverflow { p, m });
        }
        let key = (p as u32, m);
        if let Some(f) = registry().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        // Built outside the lock; a racing builder produces an identical field.
        let field = FiniteField(Arc::new(FieldInner::build(p as u32, m, size as u32)));
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(key).or_insert(field).clone())
    }

    /// The field of size `q`, which must be a prime power.
    pub fn with_size(q: u64) -> Result<Self, FieldError> {
        match numtheory::prime_power(q) {
            Some((p, t)) => Self::new(p, t),
            None => Err(FieldError::NonPrimeCharacteristic(q)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn size(&self) -> u64 {
        self.0.size as u64
    }

    /// Monic modulus, constant term first, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Prime factorization of `size - 1`.
    pub fn group_order_factors(&self) -> &[(u64, u32)] {
        &self.0.group_order_factors
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), 0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), 1)
    }

    /// Element with the given canonical index.
    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        if value >= self.size() {
            return Err(FieldError::InvalidElement {
                value,
                size: self.size(),
            });
        }
        Ok(FieldElement::from_raw(self.clone(), value as u32))
    }

    /// Element from polynomial-basis coordinates, constant term first.
    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.m as usize {
            return Err(FieldError::Malformed(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.0.m
            )));
        }
        let p = self.characteristic();
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(FieldError::Malformed(format!(
                    "coefficient {c} is not below p = {p}"
                )));
            }
            value = value * p + c;
        }
        self.element(value)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.0.p as i64;
        FieldElement::from_raw(self.clone(), v.rem_euclid(p) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(move |v| FieldElement::from_raw(self.clone(), v))
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), self.0.generator)
    }

    /// `g^((size-1)/n)` for the smallest generator `g`.
    pub fn primitive_nth_root(&self, n: u64) -> Result<FieldElement, FieldError> {
        let order = self.size() - 1;
        if n == 0 || !order.is_multiple_of(n) {
            return Err(FieldError::NoSuchRoot {
                n,
                size: self.size(),
            });
        }
        Ok(self.primitive_element().pow(order / n))
    }

    #[cfg(test)]
    fn inner(&self) -> &FieldInner {
        &self.0
    }

    // Raw arithmetic on canonical indices. Callers guarantee operands are in range.

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let f = &self.0;
        if f.m == 1 {
            let s = a as u64 + b as u64;
            let p = f.p as u64;
            return (if s >= p { s - p } else { s }) as u32;
        }
        f.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        let f = &self.0;
        if f.m == 1 {
            return if a >= b { a - b } else { a + f.p - b };
        }
        f.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        self.sub_raw(0, a)
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let f = &self.0;
        if f.m == 1 {
            return (a as u64 * b as u64 % f.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        match &f.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => f.slow_mul(a, b),
        }
    }

    /// Inverse of a nonzero raw value.
    #[inline]
    pub fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        let f = &self.0;
        match &f.tables {
            Some(t) => {
                let order = f.size - 1;
                t.exp[((order - t.log[a as usize]) % order) as usize]
            }
            None => self.pow_raw(a, f.size as u64 - 2),
        }
    }

    pub fn pow_raw(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &self.0;
        if let Some(t) = &f.tables {
            let order = (f.size - 1) as u64;
            let idx = (t.log[a as usize] as u64 * (exp % order)) % order;
            return t.exp[idx as usize];
        }
        let mut acc = 1u32;
        let mut base = a;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Polynomial-basis digits of a raw value, constant term first.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a;
        (0..self.0.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.0.p;
        digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
    }
}

impl FieldInner {
    fn build(p: u32, m: u32, size: u32) -> Self {
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p as u64, m)
        };
        let group_order_factors = numtheory::factorize(size as u64 - 1);
        let mut inner = FieldInner {
            p,
            m,
            size,
            modulus,
            group_order_factors,
            generator: 1,
            tables: None,
        };
        inner.generator = inner.find_generator();
        if (size as u64) <= TABLE_LIMIT && size > 2 {
            inner.tables = Some(inner.build_tables());
        }
        inner
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            out += op(a % p, b % p, p) * scale;
            a /= p;
            b /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        let digits = |mut v: u32| -> Vec<u64> {
            (0..m)
                .map(|_| {
                    let d = (v % self.p) as u64;
                    v /= self.p;
                    d
                })
                .collect()
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] as u64 % p;
                prod[top - m + j] = (prod[top - m + j] + p - sub) % p;
            }
        }
        prod[..m]
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d as u32)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mul = |x: u32, y: u32| {
            if self.m == 1 {
                (x as u64 * y as u64 % self.p as u64) as u32
            } else if x == 0 || y == 0 {
                0
            } else {
                self.slow_mul(x, y)
            }
        };
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u32 {
        let order = self.size as u64 - 1;
        if order == 1 {
            return 1;
        }
        (1..self.size)
            .find(|&g| {
                self.group_order_factors
                    .iter()
                    .all(|&(t, _)| self.slow_pow(g, order / t) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let order = self.size as usize - 1;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; self.size as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = if self.m == 1 {
                (x as u64 * self.generator as u64 % self.p as u64) as u32
            } else {
                self.slow_mul(x, self.generator)
            };
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        LogTables { exp, log }
    }
}

// Polynomials over GF(p) as u64 coefficient vectors, constant term first;
// only used to pick the modulus.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = numtheory::pow_mod(f[df], p - 2, p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - df;
        for (j, &fj) in f.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * fj % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: `f` of degree `m` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for every `1 <= i <= m/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let mut h = vec![0u64, 1];
    for _ in 0..m / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, m: u32) -> Vec<u32> {
    let m = m as usize;
    let count = p.pow(m as u32);
    // c_0 is the most significant digit of idx; c_0 = 0 is never irreducible.
    for idx in count / p..count {
        let mut f = vec![0u64; m + 1];
        let mut v = idx;
        for j in (0..m).rev() {
            f[j] = v % p;
            v /= p;
        }
        f[m] = 1;
        if is_irreducible(&f, p) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Least `s >= 1` with `n | q^s - 1`.
pub fn multiplicative_order(q: u64, n: u64) -> Result<u64, FieldError> {
    if n == 0 || numtheory::gcd(q, n) != 1 {
        return Err(FieldError::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let qm = q % n;
    let mut acc = qm;
    let mut s = 1;
    while acc != 1 {
        acc = ((acc as u128 * qm as u128) % n as u128) as u64;
        s += 1;
    }
    Ok(s)
}

/// Frobenius test against GF(q): returns the image in GF(q) when `x^q = x`.
pub fn in_base_field(x: &FieldElement, q: u64) -> Result<Option<FieldElement>, FieldError> {
    let base = FiniteField::with_size(q).map_err(|_| FieldError::NotASubfield {
        q,
        size: x.field().size(),
    })?;
    let tower = FieldTower::new(&base, x.field())?;
    Ok(tower.descend(x))
}
