use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use lrc_forge::repair::RepairPath;
use lrc_forge::{EncodeMode, ErasurePattern, ReceivedWord, RepairEngine};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::descriptor::CodeDescriptor;
use crate::error::CliError;
use crate::{emit, read_input, Settings, SimulateArgs};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErasureSpec {
    /// `w` erasures inside one repair group chosen per trial.
    Local(usize),
    /// `w` erasures anywhere, repaired by global decoding.
    Global(usize),
    /// The same coordinates every trial.
    Explicit(Vec<usize>),
}

impl FromStr for ErasureSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::BadInput(format!("cannot parse erasure spec '{s}'"));
        let s = s.trim();
        if let Some(w) = s.strip_prefix("local:") {
            return w.parse().map(ErasureSpec::Local).map_err(|_| bad());
        }
        if let Some(w) = s.strip_prefix("global:") {
            return w.parse().map(ErasureSpec::Global).map_err(|_| bad());
        }
        if s.is_empty() {
            return Ok(ErasureSpec::Explicit(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()
            .map(ErasureSpec::Explicit)
    }
}

impl fmt::Display for ErasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErasureSpec::Local(w) => write!(f, "local:{w}"),
            ErasureSpec::Global(w) => write!(f, "global:{w}"),
            ErasureSpec::Explicit(ix) => {
                let parts: Vec<String> = ix.iter().map(usize::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PathCounts {
    pub untouched: u64,
    pub local: u64,
    pub global: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ContactStats {
    /// Repaired groups over all trials.
    pub groups: u64,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationStats {
    pub erasures: String,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub paths: PathCounts,
    pub contact_set: ContactStats,
    /// Error message to number of trials that hit it.
    pub errors: BTreeMap<String, u64>,
}

struct Trial {
    success: bool,
    path: Option<RepairPath>,
    contacts: Vec<usize>,
    error: Option<String>,
}

/// Distance used for the global capability check: the recorded exact value,
/// or the BCH bound when the exact value was not recorded.
fn guaranteed_distance(desc: &CodeDescriptor) -> usize {
    desc.d_exact.unwrap_or(desc.d_bch_lower)
}

fn check_capability(
    desc: &CodeDescriptor,
    spec: &ErasureSpec,
    allow: bool,
) -> Result<(), CliError> {
    let v = desc.r + desc.delta - 1;
    let d = guaranteed_distance(desc);
    let beyond = match spec {
        ErasureSpec::Local(w) => {
            if *w > v {
                return Err(CliError::BadInput(format!(
                    "local:{w} exceeds the repair-group size {v}"
                )));
            }
            (*w >= desc.delta).then(|| format!("local:{w} needs w ≤ δ−1 = {}", desc.delta - 1))
        }
        ErasureSpec::Global(w) => {
            if *w > desc.n {
                return Err(CliError::BadInput(format!(
                    "global:{w} exceeds the length {}",
                    desc.n
                )));
            }
            (*w + 1 > d).then(|| format!("global:{w} needs w ≤ d−1 = {}", d.saturating_sub(1)))
        }
        ErasureSpec::Explicit(ix) => {
            let pattern = ErasurePattern::new(desc.n, ix)?;
            let rho = desc.n / v.max(1);
            let mut per_group = vec![0usize; rho.max(1)];
            for &i in pattern.erased() {
                per_group[i % rho.max(1)] += 1;
            }
            let local_ok = per_group.iter().all(|&c| c < desc.delta);
            (!local_ok && pattern.count() + 1 > d)
                .then(|| format!("{} erasures exceed both local (δ−1 per group) and global (d−1 = {}) capability", pattern.count(), d.saturating_sub(1)))
        }
    };
    match beyond {
        Some(msg) if !allow => Err(CliError::Capability(format!(
            "{msg}; pass --allow-failures to run anyway"
        ))),
        _ => Ok(()),
    }
}

fn run_trial(engine: &RepairEngine, spec: &ErasureSpec, seed: u64, trial: u64) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let code = engine.code();
    let n = code.n();
    let q = code.q() as u32;
    let message: Vec<u32> = (0..code.k()).map(|_| rng.gen_range(0..q)).collect();
    let codeword = code
        .encode_raw(&message, EncodeMode::Systematic)
        .expect("message has length k");
    let erased: Vec<usize> = match spec {
        ErasureSpec::Local(w) => {
            let groups = engine.groups();
            let group = &groups[rng.gen_range(0..groups.len())];
            sample(&mut rng, group.positions.len(), *w)
                .into_iter()
                .map(|j| group.positions[j])
                .collect()
        }
        ErasureSpec::Global(w) => sample(&mut rng, n, *w).into_vec(),
        ErasureSpec::Explicit(ix) => ix.clone(),
    };
    let fail = |e: String| Trial {
        success: false,
        path: None,
        contacts: Vec::new(),
        error: Some(e),
    };
    let pattern = match ErasurePattern::new(n, &erased) {
        Ok(p) => p,
        Err(e) => return fail(e.to_string()),
    };
    let received = ReceivedWord::new(&codeword, &pattern).expect("lengths agree");
    let result = match spec {
        ErasureSpec::Global(_) if !pattern.is_empty() => engine
            .global_decode(&received)
            .map(|word| (word, RepairPath::Global, Vec::new())),
        _ => engine
            .repair(&received)
            .map(|o| (o.word, o.path, o.contact_sizes)),
    };
    match result {
        Ok((word, path, contacts)) => {
            let success = word == codeword;
            let error = (!success).then(|| "repaired word differs from the codeword".to_string());
            Trial {
                success,
                path: Some(path),
                contacts,
                error,
            }
        }
        Err(e) => fail(e.to_string()),
    }
}

fn run_trials(
    engine: &RepairEngine,
    spec: &ErasureSpec,
    seed: u64,
    trials: u64,
    settings: &Settings,
) -> Vec<Trial> {
    #[cfg(feature = "parallel")]
    if settings.parallelism.is_parallel() {
        use rayon::prelude::*;
        return (0..trials)
            .into_par_iter()
            .map(|t| run_trial(engine, spec, seed, t))
            .collect();
    }
    let _ = settings;
    (0..trials)
        .map(|t| run_trial(engine, spec, seed, t))
        .collect()
}

/// Runs `trials` encode, erase, repair round trips on the descriptor's code.
/// Trial `t` draws everything from a ChaCha8 stream `t` keyed by `seed`, so
/// results depend only on the seed and trial index.
pub fn simulate(
    desc: &CodeDescriptor,
    spec: &ErasureSpec,
    trials: u64,
    seed: u64,
    allow_failures: bool,
    settings: &Settings,
) -> Result<SimulationStats, CliError> {
    check_capability(desc, spec, allow_failures)?;
    let code = desc.code()?;
    let engine = RepairEngine::new(&code, desc.r, desc.delta)?;
    let results = run_trials(&engine, spec, seed, trials, settings);

    let mut stats = SimulationStats {
        erasures: spec.to_string(),
        seed,
        trials,
        successes: 0,
        failures: 0,
        paths: PathCounts::default(),
        contact_set: ContactStats::default(),
        errors: BTreeMap::new(),
    };
    let mut contact_total = 0usize;
    for t in &results {
        if t.success {
            stats.successes += 1;
        } else {
            stats.failures += 1;
        }
        match t.path {
            Some(RepairPath::Untouched) => stats.paths.untouched += 1,
            Some(RepairPath::Local) => stats.paths.local += 1,
            Some(RepairPath::Global) => stats.paths.global += 1,
            None => {}
        }
        if let Some(e) = &t.error {
            *stats.errors.entry(e.clone()).or_default() += 1;
        }
        for &c in &t.contacts {
            let cs = &mut stats.contact_set;
            cs.groups += 1;
            cs.min = Some(cs.min.map_or(c, |m| m.min(c)));
            cs.max = Some(cs.max.map_or(c, |m| m.max(c)));
            contact_total += c;
        }
    }
    if stats.contact_set.groups > 0 {
        stats.contact_set.mean = Some(contact_total as f64 / stats.contact_set.groups as f64);
    }
    Ok(stats)
}

pub(crate) fn cmd_simulate(
    args: &SimulateArgs,
    settings: &Settings,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let desc = CodeDescriptor::parse(&read_input(&args.input)?)?;
    let spec: ErasureSpec = args.erasures.parse()?;
    let stats = simulate(
        &desc,
        &spec,
        args.trials,
        args.seed,
        args.allow_failures,
        settings,
    )?;
    emit(
        out,
        &serde_json::to_string_pretty(&stats).expect("stats serialize"),
    )?;
    if stats.failures > 0 && !args.allow_failures {
        return Err(CliError::Internal(format!(
            "{} of {} trials failed within the code's guaranteed capability",
            stats.failures, stats.trials
        )));
    }
    Ok(())
}
