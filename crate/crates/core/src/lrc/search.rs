use std::ops::RangeInclusive;

use super::{check_preconditions, ConstructionKind, LrcParams};

/// Parameters together with every construction whose hypotheses they meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub params: LrcParams,
    pub kinds: Vec<ConstructionKind>,
}

fn candidate_kinds(delta: usize) -> Vec<ConstructionKind> {
    let mut kinds = vec![
        ConstructionKind::T1,
        ConstructionKind::T2,
        ConstructionKind::T3,
    ];
    kinds.extend((delta + 1..2 * delta).map(|d| ConstructionKind::Remark3 { d }));
    kinds.push(ConstructionKind::T4);
    kinds
}

/// All `(q, n, r, δ)` in the ranges for which at least one construction
/// applies, sorted by q, n, r, δ. Interpolating-family entries are listed for
/// `δ < d < 2δ`, since `d = 2δ` is T3.
pub fn search_params(
    q: RangeInclusive<u64>,
    n: RangeInclusive<usize>,
    r: RangeInclusive<usize>,
    delta: RangeInclusive<usize>,
) -> Vec<SearchHit> {
    let mut hits = Vec::new();
    for q in q {
        for n in n.clone() {
            for r in r.clone() {
                for delta in delta.clone() {
                    let params = LrcParams::new(q, n, r, delta);
                    if params.rho().is_none() {
                        continue;
                    }
                    let kinds: Vec<ConstructionKind> = candidate_kinds(delta)
                        .into_iter()
                        .filter(|&k| check_preconditions(&params, k).is_ok())
                        .collect();
                    if !kinds.is_empty() {
                        hits.push(SearchHit { params, kinds });
                    }
                }
            }
        }
    }
    hits
}
