use super::LrcError;
use crate::code::{enumeration_distance, CodeError, CyclicCode, DistanceConfig};
use crate::numtheory::{binomial, gcd};
use crate::par;
use crate::repair::repair_groups;

/// Residues `ell[0] < ell[1] < ...` with common difference `step` whose full
/// cosets mod `r + δ - 1` lie in the defining set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSetWitness {
    pub ell: Vec<i64>,
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectLocality {
    pub holds: bool,
    /// A repair set for every coordinate, when `holds`.
    pub repair_sets: Vec<Vec<usize>>,
    pub failing_coordinate: Option<usize>,
}

fn coset_flags(code: &CyclicCode, v: usize) -> Vec<bool> {
    let n = code.n();
    let mut in_z = vec![false; n];
    for &e in code.zeros() {
        in_z[e] = true;
    }
    (0..v).map(|l| (l..n).step_by(v).all(|e| in_z[e])).collect()
}

fn group_size(n: usize, r: usize, delta: usize) -> Result<usize, LrcError> {
    if r == 0 || delta < 2 {
        return Err(LrcError::InvalidParams("need r ≥ 1 and δ ≥ 2".into()));
    }
    let v = r + delta - 1;
    if !n.is_multiple_of(v) {
        return Err(LrcError::InvalidParams(format!(
            "r+δ−1 = {v} does not divide n = {n}"
        )));
    }
    Ok(v)
}

/// Searches for δ - 1 residues in arithmetic progression, with a step
/// coprime to `n`, whose cosets are all zeros of the code.
///
/// Steps are tried in ascending order; for each step the first residue runs
/// through 1, -1, 2, -2, ... and finally 0. `None` is inconclusive: the
/// condition is only sufficient for locality.
pub fn locality_check_defining_set(
    code: &CyclicCode,
    r: usize,
    delta: usize,
) -> Result<Option<DefiningSetWitness>, LrcError> {
    let n = code.n();
    let v = group_size(n, r, delta)?;
    let full = coset_flags(code, v);
    let vi = v as i64;
    let mut starts: Vec<i64> = (1..vi).flat_map(|l| [l, -l]).collect();
    starts.push(0);
    for step in (1..n.max(2)).filter(|&b| gcd(b as u64, n as u64) == 1) {
        for &start in &starts {
            let ell: Vec<i64> = (0..delta as i64 - 1)
                .map(|i| start + i * step as i64)
                .collect();
            if ell.iter().all(|&l| full[l.rem_euclid(vi) as usize]) {
                return Ok(Some(DefiningSetWitness { ell, step }));
            }
        }
    }
    Ok(None)
}

/// Checks a claimed witness against the code's defining set.
pub fn check_witness(
    code: &CyclicCode,
    r: usize,
    delta: usize,
    w: &DefiningSetWitness,
) -> Result<bool, LrcError> {
    let n = code.n();
    let v = group_size(n, r, delta)?;
    if w.ell.len() != delta - 1 || gcd(w.step as u64, n as u64) != 1 {
        return Ok(false);
    }
    if w.ell.windows(2).any(|p| p[1] - p[0] != w.step as i64) {
        return Ok(false);
    }
    let full = coset_flags(code, v);
    Ok(w.ell.iter().all(|&l| full[l.rem_euclid(v as i64) as usize]))
}

/// Minimum distance of the code punctured to `positions`, or `None` when
/// every codeword vanishes there.
pub fn punctured_distance(
    code: &CyclicCode,
    positions: &[usize],
    config: &DistanceConfig,
) -> Result<Option<usize>, CodeError> {
    let g = code.generator_matrix().select_columns(positions);
    enumeration_distance(&g, config.enumeration_cap, par::Parallelism::Sequential)
}

fn passes(
    code: &CyclicCode,
    positions: &[usize],
    delta: usize,
    config: &DistanceConfig,
) -> Result<bool, CodeError> {
    Ok(punctured_distance(code, positions, config)?.is_none_or(|d| d >= delta))
}

/// Checks (r, δ)-locality from the definition: every coordinate needs a set
/// of at most `r + δ - 1` coordinates containing it on which the punctured
/// code has distance at least δ.
///
/// The residue classes mod `n / (r + δ - 1)` are tried first. Coordinates
/// they do not cover are searched over all small subsets containing them.
pub fn locality_check_direct(
    code: &CyclicCode,
    r: usize,
    delta: usize,
    config: &DistanceConfig,
) -> Result<DirectLocality, LrcError> {
    if r == 0 || delta < 2 {
        return Err(LrcError::InvalidParams("need r ≥ 1 and δ ≥ 2".into()));
    }
    let n = code.n();
    let v = r + delta - 1;
    let mut sets: Vec<Option<Vec<usize>>> = vec![None; n];
    if let Ok(groups) = repair_groups(n, r, delta) {
        let verdicts = par::map_collect(groups.len(), config.parallelism, |i| {
            passes(code, &groups[i].positions, delta, config)
        });
        for (group, ok) in groups.iter().zip(verdicts) {
            if ok? {
                for &i in &group.positions {
                    sets[i] = Some(group.positions.clone());
                }
            }
        }
    }
    let missing: Vec<usize> = (0..n).filter(|&i| sets[i].is_none()).collect();
    if !missing.is_empty() {
        let per_coordinate: u128 = (1..=v.min(n))
            .map(|s| binomial(n as u64 - 1, s as u64 - 1))
            .sum();
        if per_coordinate > config.rank_test_cap {
            return Err(CodeError::InfeasibleBudget {
                weight: v,
                subsets: per_coordinate,
                cap: config.rank_test_cap,
            }
            .into());
        }
    }
    for i in missing {
        match subset_search(code, i, v.min(n), delta, config)? {
            Some(set) => sets[i] = Some(set),
            None => {
                return Ok(DirectLocality {
                    holds: false,
                    repair_sets: Vec::new(),
                    failing_coordinate: Some(i),
                })
            }
        }
    }
    Ok(DirectLocality {
        holds: true,
        repair_sets: sets
            .into_iter()
            .map(|s| s.expect("every coordinate covered"))
            .collect(),
        failing_coordinate: None,
    })
}

fn subset_search(
    code: &CyclicCode,
    coordinate: usize,
    max_size: usize,
    delta: usize,
    config: &DistanceConfig,
) -> Result<Option<Vec<usize>>, CodeError> {
    let others: Vec<usize> = (0..code.n()).filter(|&j| j != coordinate).collect();
    for size in 1..=max_size {
        let mut idx: Vec<usize> = (0..size - 1).collect();
        loop {
            let mut set: Vec<usize> = idx.iter().map(|&j| others[j]).collect();
            set.push(coordinate);
            set.sort_unstable();
            if passes(code, &set, delta, config)? {
                return Ok(Some(set));
            }
            if !next_combination(&mut idx, others.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
