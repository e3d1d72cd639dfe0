use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde_json::Value;

use super::{FieldError, FiniteField};

/// An element of a specific [`FiniteField`].
///
/// Arithmetic between elements of different fields is rejected: the `try_*`
/// methods return [`FieldError::FieldMismatch`], the operator impls panic.
#[derive(Clone)]
pub struct FieldElement {
    field: FiniteField,
    value: u32,
}

impl FieldElement {
    pub(crate) fn from_raw(field: FiniteField, value: u32) -> Self {
        debug_assert!((value as u64) < field.size());
        FieldElement { field, value }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Canonical index in the polynomial basis.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Polynomial-basis coordinates over GF(p), constant term first.
    pub fn coefficients(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.field.size(),
                right: other.field.size(),
            })
        }
    }

    fn with_value(&self, value: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with_value(self.field.add_raw(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with_value(self.field.sub_raw(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with_value(self.field.mul_raw(self.value, other.value)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let inv = other.inverse()?;
        Ok(self.with_value(self.field.mul_raw(self.value, inv.value)))
    }

    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.with_value(self.field.inv_raw(self.value)))
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        self.with_value(self.field.pow_raw(self.value, exp))
    }

    /// Signed power; negative exponents need a nonzero base.
    pub fn pow_signed(&self, exp: i64) -> Result<FieldElement, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inverse()?.pow(exp.unsigned_abs()))
        }
    }

    /// Multiplicative order, `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut order = self.field.size() - 1;
        for &(t, e) in self.field.group_order_factors() {
            for _ in 0..e {
                if self.pow(order / t).is_one() {
                    order /= t;
                } else {
                    break;
                }
            }
        }
        Some(order)
    }

    /// Integer for prime-field elements, coefficient array otherwise.
    pub fn to_json(&self) -> Value {
        if self.field.degree() == 1 {
            Value::from(self.value)
        } else {
            Value::from(self.coefficients())
        }
    }

    /// Inverse of [`FieldElement::to_json`]. A bare integer is accepted for
    /// extension fields as the constant coefficient.
    pub fn from_json(field: &FiniteField, v: &Value) -> Result<FieldElement, FieldError> {
        match v {
            Value::Number(n) => {
                let c = n
                    .as_u64()
                    .ok_or_else(|| FieldError::Malformed(n.to_string()))?;
                field.from_coefficients(&[c])
            }
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| {
                        c.as_u64()
                            .ok_or_else(|| FieldError::Malformed(c.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                field.from_coefficients(&coeffs)
            }
            other => Err(FieldError::Malformed(other.to_string())),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.characteristic().hash(state);
        self.field.degree().hash(state);
        self.value.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.value)
        } else {
            let c: Vec<String> = self.coefficients().iter().map(u32::to_string).collect();
            write!(f, "[{}]", c.join(","))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self, self.field)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with_value(self.field.neg_raw(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_field_arithmetic_is_an_error() {
        let a = FiniteField::new(11, 1).unwrap().one();
        let b = FiniteField::new(13, 1).unwrap().one();
        assert_eq!(
            a.try_add(&b).unwrap_err(),
            FieldError::FieldMismatch {
                left: 11,
                right: 13
            }
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn cross_field_operator_panics() {
        let a = FiniteField::new(11, 1).unwrap().one();
        let b = FiniteField::new(7, 2).unwrap().one();
        let _ = &a + &b;
    }

    #[test]
    fn json_encoding() {
        let f = FiniteField::new(11, 1).unwrap();
        assert_eq!(f.element(7).unwrap().to_json(), serde_json::json!(7));
        let g = FiniteField::new(7, 2).unwrap();
        let x = g.from_coefficients(&[3, 5]).unwrap();
        assert_eq!(x.value(), 3 + 5 * 7);
        assert_eq!(x.to_json(), serde_json::json!([3, 5]));
        assert_eq!(FieldElement::from_json(&g, &x.to_json()).unwrap(), x);
        assert!(FieldElement::from_json(&g, &serde_json::json!([7, 0])).is_err());
        assert!(FieldElement::from_json(&g, &serde_json::json!("x")).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.zero().inverse().unwrap_err(), FieldError::ZeroInverse);
        assert!(f.zero().pow_signed(-1).is_err());
        assert_eq!(f.zero().multiplicative_order(), None);
    }
}
