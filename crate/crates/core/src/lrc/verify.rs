use super::{
    construct, locality_check_defining_set, locality_check_direct, singleton_bound,
    ConstructionKind, DefiningSetWitness, DirectLocality, LrcCode, LrcError, LrcParams,
};
use crate::code::{
    bch_lower_bound, min_distance_exact, CyclicCode, DistanceConfig, DistanceReport,
};
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub rank_test_cap: u128,
    pub enumeration_cap: u128,
    pub parallelism: Parallelism,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            rank_test_cap: DistanceConfig::DEFAULT_RANK_TEST_CAP,
            enumeration_cap: DistanceConfig::DEFAULT_ENUMERATION_CAP,
            parallelism: Parallelism::default(),
        }
    }
}

impl VerifyConfig {
    pub fn distance_config(&self, ceiling: usize) -> DistanceConfig {
        DistanceConfig {
            ceiling,
            rank_test_cap: self.rank_test_cap,
            enumeration_cap: self.enumeration_cap,
            parallelism: self.parallelism,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LrcReport {
    pub lrc: LrcCode,
    pub k: usize,
    pub expected_k: Option<usize>,
    pub distance: DistanceReport,
    /// Exact minimum distance, when it is at most the bound plus one.
    pub d_exact: Option<usize>,
    pub bch_lower: usize,
    pub singleton_bound: i64,
    pub defining_set: Option<DefiningSetWitness>,
    pub direct: DirectLocality,
    pub optimal: bool,
}

impl LrcReport {
    pub fn params(&self) -> &LrcParams {
        self.lrc.params()
    }

    pub fn kind(&self) -> ConstructionKind {
        self.lrc.kind()
    }
}

/// Constructs the code and measures everything the optimality claim rests
/// on: dimension, exact distance (searched up to bound + 1), the BCH bound,
/// and both locality verdicts.
pub fn verify(
    params: &LrcParams,
    kind: ConstructionKind,
    config: &VerifyConfig,
) -> Result<LrcReport, LrcError> {
    let lrc = construct(params, kind)?;
    report_for(lrc, config)
}

fn report_for(lrc: LrcCode, config: &VerifyConfig) -> Result<LrcReport, LrcError> {
    let m = measure(lrc.code(), lrc.params(), config)?;
    Ok(LrcReport {
        expected_k: lrc.kind().expected_dimension(lrc.params()),
        lrc,
        k: m.k,
        distance: m.distance,
        d_exact: m.d_exact,
        bch_lower: m.bch_lower,
        singleton_bound: m.singleton_bound,
        defining_set: m.defining_set,
        direct: m.direct,
        optimal: m.optimal,
    })
}

/// Everything [`verify`] measures, for an arbitrary cyclic code read as an
/// (r, δ)-LRC of the given parameters.
#[derive(Debug, Clone)]
pub struct Measurements {
    pub k: usize,
    pub distance: DistanceReport,
    pub d_exact: Option<usize>,
    pub bch_lower: usize,
    pub singleton_bound: i64,
    pub defining_set: Option<DefiningSetWitness>,
    pub direct: DirectLocality,
    pub optimal: bool,
}

pub fn measure(
    code: &CyclicCode,
    p: &LrcParams,
    config: &VerifyConfig,
) -> Result<Measurements, LrcError> {
    let k = code.k();
    let bound = singleton_bound(p.n, k, p.r, p.delta)?;
    let ceiling = (bound + 1).max(1) as usize;
    let distance = min_distance_exact(code, &config.distance_config(ceiling))?;
    let d_exact = distance.outcome.exact();
    let bch_lower = bch_lower_bound(code);
    let defining_set = locality_check_defining_set(code, p.r, p.delta)?;
    let direct = locality_check_direct(code, p.r, p.delta, &config.distance_config(ceiling))?;
    let optimal = d_exact.map(|d| d as i64) == Some(bound) && direct.holds;
    Ok(Measurements {
        k,
        distance,
        d_exact,
        bch_lower,
        singleton_bound: bound,
        defining_set,
        direct,
        optimal,
    })
}

/// Verifies several instances concurrently; results keep the input order.
pub fn verify_many(
    jobs: &[(LrcParams, ConstructionKind)],
    config: &VerifyConfig,
) -> Vec<Result<LrcReport, LrcError>> {
    par::map_collect(jobs.len(), config.parallelism, |i| {
        verify(&jobs[i].0, jobs[i].1, config)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q11_n5_is_optimal() {
        let report = verify(
            &LrcParams::new(11, 5, 3, 3),
            ConstructionKind::T1,
            &VerifyConfig::default(),
        )
        .unwrap();
        assert_eq!(report.k, 2);
        assert_eq!(report.d_exact, Some(4));
        assert_eq!(report.singleton_bound, 4);
        assert_eq!(report.bch_lower, 4);
        assert!(report.direct.holds);
        assert!(report.optimal);
    }

    #[test]
    fn many_preserves_order() {
        let jobs = [
            (LrcParams::new(11, 10, 3, 3), ConstructionKind::T1),
            (LrcParams::new(11, 11, 3, 3), ConstructionKind::T1),
        ];
        let out = verify_many(&jobs, &VerifyConfig::default());
        assert_eq!(out[0].as_ref().unwrap().k, 5);
        assert!(matches!(out[1], Err(LrcError::PreconditionFailed(_))));
    }
}
