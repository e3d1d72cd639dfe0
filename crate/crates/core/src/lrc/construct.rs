use std::collections::BTreeSet;

use super::{check_preconditions, Bezout, ConstructionKind, LrcError, LrcParams};
use crate::code::CyclicCode;
use crate::field::{multiplicative_order, FieldElement, FieldTower, FiniteField};
use crate::poly::Polynomial;

/// A constructed LRC together with the extension-field data it was built
/// from.
#[derive(Debug, Clone)]
pub struct LrcCode {
    params: LrcParams,
    kind: ConstructionKind,
    code: CyclicCode,
    bezout: Option<Bezout>,
    alpha: FieldElement,
    gamma: Option<FieldElement>,
    extension_generator: Polynomial,
    root_exponents: Vec<usize>,
}

impl LrcCode {
    pub fn params(&self) -> &LrcParams {
        &self.params
    }

    pub fn kind(&self) -> ConstructionKind {
        self.kind
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn bezout(&self) -> Option<Bezout> {
        self.bezout
    }

    /// `ξ^ρ`, of multiplicative order `r + δ - 1`.
    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    /// `α^a` for the Bézout coefficient `a`.
    pub fn gamma(&self) -> Option<&FieldElement> {
        self.gamma.as_ref()
    }

    /// The generator as built over GF(q^s), before its coefficients were
    /// mapped down to GF(q).
    pub fn extension_generator(&self) -> &Polynomial {
        &self.extension_generator
    }

    /// Exponents `e` of the roots `ξ^e` the construction placed, ascending.
    pub fn root_exponents(&self) -> &[usize] {
        &self.root_exponents
    }
}

/// Builds the generator of `kind` over the splitting field, checks its
/// roots are distinct, and maps it down to GF(q).
pub fn construct(params: &LrcParams, kind: ConstructionKind) -> Result<LrcCode, LrcError> {
    let bezout = check_preconditions(params, kind)?;
    let LrcParams { q, n, r: _, delta } = *params;
    let v = params.group_size();
    let rho = n / v;
    let base = FiniteField::with_size(q)?;
    let s = multiplicative_order(q, n as u64)? as u32;
    let ext = FiniteField::new(base.characteristic(), base.degree() * s)?;
    let tower = FieldTower::new(&base, &ext)?;
    let xi = ext.primitive_nth_root(n as u64)?;
    let alpha = xi.pow(rho as u64);
    let gamma_exp = bezout.map(|b| (rho * b.a as usize) % n);
    let gamma = gamma_exp.map(|e| xi.pow(e as u64));

    let coset = |l: i64| -> Vec<usize> {
        let l = l.rem_euclid(v as i64) as usize;
        (0..rho).map(|j| l + j * v).collect()
    };
    let scaled_gamma =
        |j: i64| -> usize { ((gamma_exp.unwrap() as i64 * j).rem_euclid(n as i64)) as usize };

    let mut exponents = vec![0usize];
    // Factors (x^ρ - α^i) followed by linear factors (x - ξ^e).
    let mut sparse: Vec<i64> = Vec::new();
    let mut linear: Vec<usize> = Vec::new();
    match kind {
        ConstructionKind::T4 => {
            sparse.extend([1, -1]);
            linear.extend([scaled_gamma(2), scaled_gamma(-2)]);
        }
        _ => {
            sparse.extend(1..delta as i64);
            match kind {
                ConstructionKind::T2 => linear.push(scaled_gamma(1)),
                ConstructionKind::T3 | ConstructionKind::Remark3 { .. } => {
                    let d = kind.target_distance(delta);
                    linear.extend((delta..=d.saturating_sub(2)).map(|j| scaled_gamma(j as i64)));
                }
                _ => {}
            }
        }
    }
    for &i in &sparse {
        exponents.extend(coset(i));
    }
    exponents.extend(&linear);
    let mut seen = BTreeSet::new();
    for &e in &exponents {
        if !seen.insert(e) {
            return Err(LrcError::RootCollision { exponent: e });
        }
    }

    let mut g = Polynomial::sparse_binomial(1, &ext.one());
    for &i in &sparse {
        g = g.mul(&Polynomial::sparse_binomial(rho, &alpha.pow_signed(i)?))?;
    }
    for &e in &linear {
        g = g.mul(&Polynomial::sparse_binomial(1, &xi.pow(e as u64)))?;
    }
    let descended = g.descend_coefficients(&tower)?;
    let code = CyclicCode::from_generator(&base, n, &descended)?;
    let root_exponents: Vec<usize> = seen.into_iter().collect();
    debug_assert_eq!(code.zeros(), &root_exponents[..]);
    Ok(LrcCode {
        params: *params,
        kind,
        code,
        bezout,
        alpha,
        gamma,
        extension_generator: g,
        root_exponents,
    })
}
