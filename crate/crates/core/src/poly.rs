//! Dense univariate polynomials over a finite field.

use std::fmt;

use serde_json::Value;

use crate::field::{FieldElement, FieldError, FieldTower, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("polynomials over different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u64, right: u64 },
    #[error("generator polynomial must be monic")]
    NonMonicGenerator,
    #[error("coefficient of x^{index} does not lie in GF({q})")]
    CoefficientNotInBaseField { index: usize, q: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients are stored constant term first with no trailing zeros; the
/// zero polynomial has an empty coefficient vector and no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FiniteField,
    coeffs: Vec<u32>,
}

impl Polynomial {
    /// From raw canonical indices, constant term first.
    pub fn from_raw(field: &FiniteField, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn new(field: &FiniteField, coeffs: &[FieldElement]) -> Result<Self, PolyError> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(PolyError::FieldMismatch {
                    left: field.size(),
                    right: c.field().size(),
                });
            }
            raw.push(c.value());
        }
        Ok(Self::from_raw(field, raw))
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::from_raw(field, vec![1])
    }

    pub fn x(field: &FiniteField) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    /// `c * x^degree`
    pub fn monomial(c: &FieldElement, degree: usize) -> Self {
        let mut raw = vec![0; degree + 1];
        raw[degree] = c.value();
        Self::from_raw(c.field(), raw)
    }

    /// `x^rho - c`
    pub fn sparse_binomial(rho: usize, c: &FieldElement) -> Self {
        assert!(rho >= 1, "binomial degree must be positive");
        let f = c.field();
        let mut raw = vec![0; rho + 1];
        raw[0] = f.neg_raw(c.value());
        raw[rho] = 1;
        Self::from_raw(f, raw)
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(field: &FiniteField, n: usize) -> Self {
        Self::sparse_binomial(n, &field.one())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn raw_coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coefficient(&self, i: usize) -> FieldElement {
        let v = self.coeffs.get(i).copied().unwrap_or(0);
        self.field
            .element(v as u64)
            .expect("stored coefficients are in range")
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        (0..self.coeffs.len())
            .map(|i| self.coefficient(i))
            .collect()
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.degree().map(|d| self.coefficient(d))
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch {
                left: self.field.size(),
                right: other.field.size(),
            })
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let raw = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add_raw(a, b)
            })
            .collect();
        Ok(Self::from_raw(f, raw))
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut raw = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                raw[i + j] = f.add_raw(raw[i + j], f.mul_raw(a, b));
            }
        }
        Ok(Self::from_raw(f, raw))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial, PolyError> {
        if c.field() != &self.field {
            return Err(PolyError::FieldMismatch {
                left: self.field.size(),
                right: c.field().size(),
            });
        }
        let f = &self.field;
        Ok(Self::from_raw(
            f,
            self.coeffs
                .iter()
                .map(|&a| f.mul_raw(a, c.value()))
                .collect(),
        ))
    }

    /// `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        self.check(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(PolyError::DivisionByZeroPolynomial);
        };
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let lead_inv = f.inv_raw(divisor.coeffs[dd]);
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = f.mul_raw(c, lead_inv);
            let shift = top - dd;
            quot[shift] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[shift + j] = f.sub_raw(rem[shift + j], f.mul_raw(factor, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn eval_raw(&self, t: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| f.add_raw(f.mul_raw(acc, t), c))
    }

    pub fn eval(&self, t: &FieldElement) -> Result<FieldElement, PolyError> {
        if t.field() != &self.field {
            return Err(PolyError::FieldMismatch {
                left: self.field.size(),
                right: t.field().size(),
            });
        }
        Ok(self.field.element(self.eval_raw(t.value()) as u64)?)
    }

    /// Scaled to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => {
                let f = &self.field;
                let inv = f.inv_raw(lead);
                Self::from_raw(f, self.coeffs.iter().map(|&c| f.mul_raw(c, inv)).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Whether this monic polynomial divides `x^n - 1`.
    pub fn divides_xn_minus_1(&self, n: usize) -> Result<bool, PolyError> {
        if !self.is_monic() {
            return Err(PolyError::NonMonicGenerator);
        }
        if self.degree().unwrap_or(0) > n {
            return Ok(false);
        }
        Ok(Self::x_pow_minus_one(&self.field, n).rem(self)?.is_zero())
    }

    /// Maps each coefficient into the extension of `tower`.
    pub fn embed(&self, tower: &FieldTower) -> Result<Polynomial, PolyError> {
        if &self.field != tower.base() {
            return Err(PolyError::FieldMismatch {
                left: self.field.size(),
                right: tower.base().size(),
            });
        }
        let raw = self.coeffs.iter().map(|&c| tower.embed_raw(c)).collect();
        Ok(Self::from_raw(tower.ext(), raw))
    }

    /// Re-expresses a polynomial over the extension of `tower` with
    /// coefficients in its base field, after checking `g_i^q = g_i` for
    /// every coefficient.
    pub fn descend_coefficients(&self, tower: &FieldTower) -> Result<Polynomial, PolyError> {
        if &self.field != tower.ext() {
            return Err(PolyError::FieldMismatch {
                left: self.field.size(),
                right: tower.ext().size(),
            });
        }
        let q = tower.base().size();
        let mut raw = Vec::with_capacity(self.coeffs.len());
        for (index, c) in self.coefficients().iter().enumerate() {
            match tower.descend(c) {
                Some(b) => raw.push(b.value()),
                None => return Err(PolyError::CoefficientNotInBaseField { index, q }),
            }
        }
        Ok(Self::from_raw(tower.base(), raw))
    }

    /// Array of serialized coefficients, constant term first.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coefficients()
                .iter()
                .map(FieldElement::to_json)
                .collect(),
        )
    }

    pub fn from_json(field: &FiniteField, v: &Value) -> Result<Polynomial, PolyError> {
        let items = v.as_array().ok_or_else(|| {
            FieldError::Malformed(format!("expected a coefficient array, got {v}"))
        })?;
        let coeffs = items
            .iter()
            .map(|c| FieldElement::from_json(field, c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, &coeffs)
    }
}

/// [`Polynomial::descend_coefficients`] against GF(q) inside the
/// polynomial's own field.
pub fn descend_coefficients(g: &Polynomial, q: u64) -> Result<Polynomial, PolyError> {
    let base = FiniteField::with_size(q).map_err(|_| FieldError::NotASubfield {
        q,
        size: g.field().size(),
    })?;
    let tower = FieldTower::new(&base, g.field())?;
    g.descend_coefficients(&tower)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            if self.coeffs[i] == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = self.coefficient(i);
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf11() -> FiniteField {
        FiniteField::new(11, 1).unwrap()
    }

    fn p(f: &FiniteField, c: &[u32]) -> Polynomial {
        Polynomial::from_raw(f, c.to_vec())
    }

    #[test]
    fn product_of_linear_factors() {
        let f = gf11();
        let prod = p(&f, &[10, 1]).mul(&p(&f, &[1, 1])).unwrap();
        assert_eq!(prod, p(&f, &[10, 0, 1]));
    }

    #[test]
    fn geometric_sum_division() {
        let f = gf11();
        let (q, r) = Polynomial::x_pow_minus_one(&f, 5)
            .divmod(&p(&f, &[10, 1]))
            .unwrap();
        assert_eq!(q, p(&f, &[1, 1, 1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn division_errors() {
        let f = gf11();
        assert_eq!(
            p(&f, &[1, 1]).divmod(&Polynomial::zero(&f)).unwrap_err(),
            PolyError::DivisionByZeroPolynomial
        );
        let g = FiniteField::new(13, 1).unwrap();
        assert!(matches!(
            p(&f, &[1]).mul(&p(&g, &[1])),
            Err(PolyError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn normal_form_and_degree() {
        let f = gf11();
        let z = p(&f, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&f, &[3, 0, 2, 0]).degree(), Some(2));
    }

    #[test]
    fn sparse_binomials() {
        let f = gf11();
        assert_eq!(Polynomial::sparse_binomial(1, &f.one()), p(&f, &[10, 1]));
        assert_eq!(
            Polynomial::sparse_binomial(3, &f.zero()),
            p(&f, &[0, 0, 0, 1])
        );
        let ext = FiniteField::new(7, 4).unwrap();
        let alpha = ext.primitive_element();
        let b = Polynomial::sparse_binomial(5, &alpha);
        assert_eq!(b.degree(), Some(5));
        assert_eq!(b.raw_coefficients().iter().filter(|&&c| c != 0).count(), 2);
        assert_eq!(b.coefficient(0), -&alpha);
    }

    #[test]
    fn divides_x_n_minus_one() {
        let f = gf11();
        for n in 1..12 {
            assert!(p(&f, &[10, 1]).divides_xn_minus_1(n).unwrap());
        }
        assert!(!p(&f, &[1, 0, 1]).divides_xn_minus_1(5).unwrap());
        assert_eq!(
            p(&f, &[1, 2]).divides_xn_minus_1(5).unwrap_err(),
            PolyError::NonMonicGenerator
        );
    }

    #[test]
    fn gcd_is_monic() {
        let f = gf11();
        let a = p(&f, &[10, 0, 1]); // x^2 - 1
        let b = p(&f, &[2, 2]); // 2(x + 1)
        assert_eq!(a.gcd(&b).unwrap(), p(&f, &[1, 1]));
    }

    #[test]
    fn descend_rejects_extension_coefficients() {
        let ext = FiniteField::new(11, 2).unwrap();
        let xi = ext.primitive_nth_root(8).unwrap(); // order 8 does not divide 10
        let g = Polynomial::sparse_binomial(1, &xi);
        assert_eq!(
            descend_coefficients(&g, 11).unwrap_err(),
            PolyError::CoefficientNotInBaseField { index: 0, q: 11 }
        );
        let ones = Polynomial::from_raw(&ext, vec![1, 0, 1, 1]);
        let down = descend_coefficients(&ones, 11).unwrap();
        assert_eq!(down.raw_coefficients(), &[1, 0, 1, 1]);
        assert_eq!(down.field().size(), 11);
    }

    #[test]
    fn json_roundtrip() {
        let f = gf11();
        let g = p(&f, &[3, 0, 1]);
        assert_eq!(g.to_json(), serde_json::json!([3, 0, 1]));
        assert_eq!(Polynomial::from_json(&f, &g.to_json()).unwrap(), g);
    }

    #[test]
    fn display() {
        let f = gf11();
        assert_eq!(p(&f, &[10, 0, 1]).to_string(), "x^2 + 10");
        assert_eq!(p(&f, &[0, 3, 2]).to_string(), "2x^2 + 3x");
    }
}
