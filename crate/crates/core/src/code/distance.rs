//! Exact minimum distance by two independent routes.
//!
//! * Codeword enumeration walks the whole message space and records the
//!   lightest nonzero codeword.
//! * Column search finds the smallest set of linearly dependent columns of a
//!   parity-check matrix, ascending by size, with incremental elimination
//!   along a depth-first walk over column subsets.

use super::{CodeError, CyclicCode};
use crate::linalg::{IncrementalBasis, Matrix};
use crate::numtheory::binomial;
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceOutcome {
    Exact(usize),
    /// No nonzero codeword of weight at most the ceiling.
    AboveCeiling(usize),
}

impl DistanceOutcome {
    pub fn exact(self) -> Option<usize> {
        match self {
            DistanceOutcome::Exact(d) => Some(d),
            DistanceOutcome::AboveCeiling(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DistanceConfig {
    pub ceiling: usize,
    /// Largest number of column subsets the search may test at one weight.
    pub rank_test_cap: u128,
    /// Largest message space the enumeration oracle will walk.
    pub enumeration_cap: u128,
    pub parallelism: Parallelism,
}

impl DistanceConfig {
    pub const DEFAULT_RANK_TEST_CAP: u128 = 5_000_000;
    pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

    pub fn with_ceiling(ceiling: usize) -> Self {
        DistanceConfig {
            ceiling,
            rank_test_cap: Self::DEFAULT_RANK_TEST_CAP,
            enumeration_cap: Self::DEFAULT_ENUMERATION_CAP,
            parallelism: Parallelism::default(),
        }
    }

    pub fn parallelism(mut self, p: Parallelism) -> Self {
        self.parallelism = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub outcome: DistanceOutcome,
    /// Exact distance from codeword enumeration, when it ran.
    pub enumeration: Option<usize>,
    /// Result of the column search, when it ran.
    pub column_search: Option<DistanceOutcome>,
    /// Lexicographically first minimal dependent column set.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSearch {
    pub outcome: DistanceOutcome,
    pub witness: Option<Vec<usize>>,
}

/// Exact minimum distance, or `AboveCeiling` when it exceeds
/// `config.ceiling`. Both oracles run whenever both are within budget and
/// must agree.
pub fn min_distance_exact(
    code: &CyclicCode,
    config: &DistanceConfig,
) -> Result<DistanceReport, CodeError> {
    if code.k() == 0 {
        return Err(CodeError::TrivialCode);
    }
    let ceiling = config.ceiling.max(1);
    let space = (code.q() as u128)
        .checked_pow(code.k() as u32)
        .unwrap_or(u128::MAX);
    let search = column_search(
        code.parity_check(),
        ceiling,
        config.rank_test_cap,
        config.parallelism,
    );
    if space > config.enumeration_cap {
        let s = search?;
        return Ok(DistanceReport {
            outcome: s.outcome,
            enumeration: None,
            column_search: Some(s.outcome),
            witness: s.witness,
        });
    }
    let d = enumeration_distance(
        code.generator_matrix(),
        config.enumeration_cap,
        config.parallelism,
    )?
    .expect("a nonzero generator spans nonzero codewords");
    let search = match search {
        Ok(s) => Some(s),
        Err(CodeError::InfeasibleBudget { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(s) = &search {
        let agrees = match s.outcome {
            DistanceOutcome::Exact(w) => w == d,
            DistanceOutcome::AboveCeiling(c) => d > c,
        };
        if !agrees {
            return Err(CodeError::OracleDisagreement {
                enumeration: d,
                column_search: s.outcome,
            });
        }
    }
    let outcome = if d <= ceiling {
        DistanceOutcome::Exact(d)
    } else {
        DistanceOutcome::AboveCeiling(ceiling)
    };
    Ok(DistanceReport {
        outcome,
        enumeration: Some(d),
        column_search: search.as_ref().map(|s| s.outcome),
        witness: search.and_then(|s| s.witness),
    })
}

/// Minimum weight of a nonzero vector in the row space of `generator`, or
/// `None` when the row space is `{0}`.
///
/// Over GF(p^t) the row space is walked as a GF(p)-space: every step of the
/// odometer adds exactly one basis row, because `p` additions of a row
/// vanish.
pub fn enumeration_distance(
    generator: &Matrix,
    cap: u128,
    mode: Parallelism,
) -> Result<Option<usize>, CodeError> {
    let basis = generator.row_basis();
    let f = basis.field().clone();
    let n = basis.cols();
    let p = f.characteristic() as u128;
    let t = f.degree();
    let size = (f.size() as u128)
        .checked_pow(basis.rows() as u32)
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(CodeError::EnumerationTooLarge { size, cap });
    }
    if basis.rows() == 0 {
        return Ok(None);
    }
    // GF(p)-basis: y^u * row_i.
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in 0..basis.rows() {
        for u in 0..t {
            let scale = f.pow_raw(if t == 1 { 1 } else { p as u32 }, u as u64);
            rows.push(basis.row(r).iter().map(|&x| f.mul_raw(x, scale)).collect());
        }
    }
    let supports: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let digits = rows.len();
    // Split the top digits across tasks.
    let mut outer = 0usize;
    let mut chunks: u128 = 1;
    while outer < digits && chunks < 256 {
        outer += 1;
        chunks *= p;
    }
    let inner = digits - outer;
    let best = par::map_collect(chunks as usize, mode, |chunk| {
        let mut word = vec![0u32; n];
        let mut c = chunk as u128;
        for j in 0..outer {
            let d = (c % p) as u32;
            c /= p;
            if d != 0 {
                let row = &rows[inner + j];
                for &i in &supports[inner + j] {
                    word[i] = f.add_raw(word[i], f.mul_raw(d, row[i]));
                }
            }
        }
        let mut weight = word.iter().filter(|&&x| x != 0).count();
        let mut best = if weight > 0 { weight } else { usize::MAX };
        let mut counter = vec![0u128; inner];
        let steps = p.pow(inner as u32);
        for _ in 1..steps {
            let mut j = 0;
            loop {
                let row = &rows[j];
                for &i in &supports[j] {
                    let old = word[i];
                    let new = f.add_raw(old, row[i]);
                    word[i] = new;
                    match (old == 0, new == 0) {
                        (true, false) => weight += 1,
                        (false, true) => weight -= 1,
                        _ => {}
                    }
                }
                counter[j] += 1;
                if counter[j] == p {
                    counter[j] = 0;
                    j += 1;
                } else {
                    break;
                }
            }
            if weight > 0 && weight < best {
                best = weight;
            }
        }
        best
    });
    let min = best.into_iter().min().unwrap_or(usize::MAX);
    Ok((min != usize::MAX).then_some(min))
}

/// Smallest `w <= ceiling` such that some `w` columns of `parity` are
/// linearly dependent.
pub fn column_search(
    parity: &Matrix,
    ceiling: usize,
    cap: u128,
    mode: Parallelism,
) -> Result<ColumnSearch, CodeError> {
    let n = parity.cols();
    let columns: Vec<Vec<u32>> = (0..n).map(|c| parity.column(c)).collect();
    for w in 1..=ceiling.min(n) {
        let subsets = binomial(n as u64, w as u64);
        if subsets > cap {
            return Err(CodeError::InfeasibleBudget {
                weight: w,
                subsets,
                cap,
            });
        }
        if let Some(witness) = dependent_subset(parity, &columns, w, mode) {
            return Ok(ColumnSearch {
                outcome: DistanceOutcome::Exact(w),
                witness: Some(witness),
            });
        }
    }
    Ok(ColumnSearch {
        outcome: DistanceOutcome::AboveCeiling(ceiling),
        witness: None,
    })
}

/// Lexicographically first dependent `w`-subset, assuming every smaller
/// subset is independent.
fn dependent_subset(
    parity: &Matrix,
    columns: &[Vec<u32>],
    w: usize,
    mode: Parallelism,
) -> Option<Vec<usize>> {
    let n = columns.len();
    let prefix_len = w.min(2);
    let prefixes = combinations(n, prefix_len, w);
    par::find_map_first(prefixes.len(), mode, |idx| {
        let prefix = &prefixes[idx];
        let mut basis = IncrementalBasis::new(parity.field(), parity.rows());
        let mut chosen = Vec::with_capacity(w);
        for (i, &c) in prefix.iter().enumerate() {
            chosen.push(c);
            if !basis.push(&columns[c]) {
                return (i + 1 == w).then_some(chosen);
            }
        }
        if prefix_len == w {
            return None;
        }
        let start = prefix[prefix_len - 1] + 1;
        extend(columns, &mut basis, &mut chosen, start, w - prefix_len).then_some(chosen)
    })
}

fn extend(
    columns: &[Vec<u32>],
    basis: &mut IncrementalBasis,
    chosen: &mut Vec<usize>,
    start: usize,
    remaining: usize,
) -> bool {
    let n = columns.len();
    if remaining == 1 {
        for j in start..n {
            if !basis.is_independent(&columns[j]) {
                chosen.push(j);
                return true;
            }
        }
        return false;
    }
    for j in start..=n.saturating_sub(remaining) {
        if !basis.push(&columns[j]) {
            // Only reachable if a smaller dependent set was missed.
            basis.pop();
            continue;
        }
        chosen.push(j);
        if extend(columns, basis, chosen, j + 1, remaining - 1) {
            return true;
        }
        chosen.pop();
        basis.pop();
    }
    false
}

/// All `len`-prefixes (ascending) that can still be completed to `total`
/// elements drawn from `0..n`, in lexicographic order.
fn combinations(n: usize, len: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        n: usize,
        len: usize,
        total: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining_after = total - cur.len() - 1;
        for j in start..n.saturating_sub(remaining_after) {
            cur.push(j);
            rec(n, len, total, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, len, total, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::poly::Polynomial;

    fn gf11() -> FiniteField {
        FiniteField::new(11, 1).unwrap()
    }

    #[test]
    fn repetition_code_distance() {
        let f = gf11();
        let code =
            CyclicCode::from_generator(&f, 5, &Polynomial::from_raw(&f, vec![1; 5])).unwrap();
        let r = min_distance_exact(&code, &DistanceConfig::with_ceiling(6)).unwrap();
        assert_eq!(r.outcome, DistanceOutcome::Exact(5));
        assert_eq!(r.enumeration, Some(5));
        assert_eq!(r.column_search, Some(DistanceOutcome::Exact(5)));
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn above_ceiling() {
        let f = gf11();
        let code =
            CyclicCode::from_generator(&f, 5, &Polynomial::from_raw(&f, vec![1; 5])).unwrap();
        let r = min_distance_exact(&code, &DistanceConfig::with_ceiling(3)).unwrap();
        assert_eq!(r.outcome, DistanceOutcome::AboveCeiling(3));
        assert_eq!(r.enumeration, Some(5));
    }

    #[test]
    fn full_space_has_distance_one() {
        let f = gf11();
        let code = CyclicCode::from_generator(&f, 5, &Polynomial::one(&f)).unwrap();
        let r = min_distance_exact(&code, &DistanceConfig::with_ceiling(2)).unwrap();
        assert_eq!(r.outcome, DistanceOutcome::Exact(1));
    }

    #[test]
    fn zero_code_is_rejected() {
        let f = gf11();
        let code = CyclicCode::from_generator(&f, 5, &Polynomial::x_pow_minus_one(&f, 5)).unwrap();
        assert_eq!(
            min_distance_exact(&code, &DistanceConfig::with_ceiling(2)).unwrap_err(),
            CodeError::TrivialCode
        );
    }

    #[test]
    fn budget_is_enforced_per_weight() {
        let f = gf11();
        let parity = Matrix::identity(&f, 10);
        let err = column_search(&parity, 5, 200, Parallelism::Sequential).unwrap_err();
        assert_eq!(
            err,
            CodeError::InfeasibleBudget {
                weight: 4,
                subsets: 210,
                cap: 200
            }
        );
    }

    #[test]
    fn prefixes_are_completable() {
        assert_eq!(
            combinations(4, 2, 3),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(combinations(3, 1, 1), vec![vec![0], vec![1], vec![2]]);
    }
}
