//! Repair groups, local repair inside a group, and global erasure decoding.

use crate::code::CyclicCode;
use crate::linalg::{Matrix, Solution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepairError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no dual codeword is supported inside repair group {offset}")]
    EmptyLocalDual { offset: usize },
    #[error("repair group {offset} cannot be repaired locally")]
    LocalRepairInfeasible { offset: usize },
    #[error("erasure pattern of size {erased} is not uniquely decodable")]
    AmbiguousErasure { erased: usize },
    #[error("received symbols are inconsistent with every codeword")]
    Inconsistent,
    #[error("coordinate {index} is out of range for length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected a word of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// The coordinates `offset, offset + ρ, offset + 2ρ, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairGroup {
    pub offset: usize,
    pub positions: Vec<usize>,
}

/// The ρ = n / (r + δ - 1) residue classes mod ρ.
pub fn repair_groups(n: usize, r: usize, delta: usize) -> Result<Vec<RepairGroup>, RepairError> {
    let v = r + delta - 1;
    if r == 0 || delta < 2 || n == 0 || !n.is_multiple_of(v) {
        return Err(RepairError::InvalidParams(format!(
            "r+δ−1 = {v} must divide n = {n} (r ≥ 1, δ ≥ 2)"
        )));
    }
    let rho = n / v;
    Ok((0..rho)
        .map(|t| RepairGroup {
            offset: t,
            positions: (t..n).step_by(rho).collect(),
        })
        .collect())
}

/// Basis of the dual codewords supported inside `group`, restricted to the
/// group's columns.
pub fn local_parities(code: &CyclicCode, group: &RepairGroup) -> Result<Matrix, RepairError> {
    let h = code.parity_check();
    let outside: Vec<usize> = (0..code.n())
        .filter(|i| !group.positions.contains(i))
        .collect();
    let combos = h.select_columns(&outside).transpose().kernel();
    let local = if combos.rows() == 0 {
        Matrix::zeros(h.field(), 0, group.positions.len())
    } else {
        combos.mul(&h.select_columns(&group.positions)).row_basis()
    };
    if local.rows() == 0 {
        return Err(RepairError::EmptyLocalDual {
            offset: group.offset,
        });
    }
    Ok(local)
}

/// A set of erased coordinates, sorted and without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasurePattern {
    n: usize,
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(n: usize, indices: &[usize]) -> Result<Self, RepairError> {
        let mut erased = indices.to_vec();
        erased.sort_unstable();
        erased.dedup();
        if let Some(&index) = erased.iter().find(|&&i| i >= n) {
            return Err(RepairError::IndexOutOfRange { index, n });
        }
        Ok(ErasurePattern { n, erased })
    }

    pub fn none(n: usize) -> Self {
        ErasurePattern {
            n,
            erased: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn count(&self) -> usize {
        self.erased.len()
    }
}

/// Read access to a possibly damaged word.
pub trait SymbolSource {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn is_erased(&self, i: usize) -> bool;
    /// The symbol at an unerased coordinate.
    fn read(&self, i: usize) -> u32;
}

/// A word with an explicit erasure mask; erased slots hold no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    symbols: Vec<Option<u32>>,
}

impl ReceivedWord {
    pub fn new(word: &[u32], pattern: &ErasurePattern) -> Result<Self, RepairError> {
        if word.len() != pattern.n() {
            return Err(RepairError::LengthMismatch {
                expected: pattern.n(),
                got: word.len(),
            });
        }
        let mut symbols: Vec<Option<u32>> = word.iter().map(|&x| Some(x)).collect();
        for &i in pattern.erased() {
            symbols[i] = None;
        }
        Ok(ReceivedWord { symbols })
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.symbols[i]
    }

    pub fn erased(&self) -> Vec<usize> {
        (0..self.symbols.len())
            .filter(|&i| self.symbols[i].is_none())
            .collect()
    }
}

impl SymbolSource for ReceivedWord {
    fn len(&self) -> usize {
        self.symbols.len()
    }

    fn is_erased(&self, i: usize) -> bool {
        self.symbols[i].is_none()
    }

    fn read(&self, i: usize) -> u32 {
        self.symbols[i].expect("read of an erased symbol")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRepair {
    pub offset: usize,
    pub erased: Vec<usize>,
    /// Recovered symbols, aligned with `erased`.
    pub values: Vec<u32>,
    /// Unerased coordinates whose symbols were read.
    pub contacts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRepair {
    pub word: Vec<u32>,
    pub groups: Vec<GroupRepair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairPath {
    /// Nothing was erased.
    Untouched,
    Local,
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairOutcome {
    pub word: Vec<u32>,
    pub path: RepairPath,
    /// Symbols read per repaired group (local path only).
    pub contact_sizes: Vec<usize>,
}

/// Caches repair groups and their local parities for one code.
#[derive(Debug, Clone)]
pub struct RepairEngine {
    code: CyclicCode,
    r: usize,
    delta: usize,
    groups: Vec<RepairGroup>,
    parities: Vec<Matrix>,
}

impl RepairEngine {
    pub fn new(code: &CyclicCode, r: usize, delta: usize) -> Result<Self, RepairError> {
        let groups = repair_groups(code.n(), r, delta)?;
        let parities = groups
            .iter()
            .map(|g| local_parities(code, g))
            .collect::<Result<_, _>>()?;
        Ok(RepairEngine {
            code: code.clone(),
            r,
            delta,
            groups,
            parities,
        })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn groups(&self) -> &[RepairGroup] {
        &self.groups
    }

    pub fn local_parities(&self, offset: usize) -> &Matrix {
        &self.parities[offset]
    }

    /// Group containing coordinate `i`.
    pub fn group_of(&self, i: usize) -> &RepairGroup {
        &self.groups[i % self.groups.len()]
    }

    /// Recovers the erased symbols of each damaged group from symbols inside
    /// that group only, groups in ascending offset order. Only the contact
    /// symbols are read from `received`.
    pub fn repair_symbols(
        &self,
        received: &dyn SymbolSource,
    ) -> Result<Vec<GroupRepair>, RepairError> {
        let n = self.code.n();
        if received.len() != n {
            return Err(RepairError::LengthMismatch {
                expected: n,
                got: received.len(),
            });
        }
        let mut groups = Vec::new();
        for (group, parity) in self.groups.iter().zip(&self.parities) {
            let erased: Vec<usize> = group
                .positions
                .iter()
                .copied()
                .filter(|&i| received.is_erased(i))
                .collect();
            if erased.is_empty() {
                continue;
            }
            if erased.len() >= self.delta {
                return Err(RepairError::LocalRepairInfeasible {
                    offset: group.offset,
                });
            }
            let (values, contacts) = repair_group(group, parity, &erased, received)?;
            groups.push(GroupRepair {
                offset: group.offset,
                erased,
                values,
                contacts,
            });
        }
        Ok(groups)
    }

    /// The received word with every erased symbol recovered locally.
    pub fn local_repair(&self, received: &ReceivedWord) -> Result<LocalRepair, RepairError> {
        let groups = self.repair_symbols(received)?;
        let mut word: Vec<u32> = received.symbols.iter().map(|s| s.unwrap_or(0)).collect();
        for g in &groups {
            for (&i, &v) in g.erased.iter().zip(&g.values) {
                word[i] = v;
            }
        }
        Ok(LocalRepair { word, groups })
    }

    pub fn global_decode(&self, received: &dyn SymbolSource) -> Result<Vec<u32>, RepairError> {
        global_erasure_decode(&self.code, received)
    }

    /// Local repair when every group allows it, global decoding otherwise.
    pub fn repair(&self, received: &ReceivedWord) -> Result<RepairOutcome, RepairError> {
        if received.symbols.iter().all(Option::is_some) {
            let word = received.symbols.iter().map(|s| s.unwrap_or(0)).collect();
            return Ok(RepairOutcome {
                word,
                path: RepairPath::Untouched,
                contact_sizes: Vec::new(),
            });
        }
        match self.local_repair(received) {
            Ok(local) => Ok(RepairOutcome {
                word: local.word,
                path: RepairPath::Local,
                contact_sizes: local.groups.iter().map(|g| g.contacts.len()).collect(),
            }),
            Err(RepairError::LocalRepairInfeasible { .. }) => Ok(RepairOutcome {
                word: self.global_decode(received)?,
                path: RepairPath::Global,
                contact_sizes: Vec::new(),
            }),
            Err(e) => Err(e),
        }
    }
}

/// Grows a contact set in ascending coordinate order until the local dual
/// words vanishing outside erased ∪ contacts pin down the erased symbols,
/// then solves for them.
fn repair_group(
    group: &RepairGroup,
    parity: &Matrix,
    erased: &[usize],
    received: &dyn SymbolSource,
) -> Result<(Vec<u32>, Vec<usize>), RepairError> {
    let f = parity.field();
    let col = |i: usize| {
        group
            .positions
            .iter()
            .position(|&p| p == i)
            .expect("coordinate in group")
    };
    let erased_cols: Vec<usize> = erased.iter().map(|&i| col(i)).collect();
    let candidates: Vec<usize> = group
        .positions
        .iter()
        .copied()
        .filter(|i| !erased.contains(i))
        .collect();
    for size in 0..=candidates.len() {
        let contacts = &candidates[..size];
        let contact_cols: Vec<usize> = contacts.iter().map(|&i| col(i)).collect();
        let unused: Vec<usize> = (0..group.positions.len())
            .filter(|c| !erased_cols.contains(c) && !contact_cols.contains(c))
            .collect();
        let rows = if unused.is_empty() {
            parity.clone()
        } else {
            let combos = parity.select_columns(&unused).transpose().kernel();
            if combos.rows() == 0 {
                continue;
            }
            combos.mul(parity)
        };
        let on_erased = rows.select_columns(&erased_cols);
        if on_erased.rank() < erased.len() {
            continue;
        }
        // rows[:, E] x = -rows[:, S] c_S
        let symbols: Vec<u32> = contacts.iter().map(|&i| received.read(i)).collect();
        let rhs: Vec<u32> = rows
            .select_columns(&contact_cols)
            .mul_vec(&symbols)
            .into_iter()
            .map(|x| f.neg_raw(x))
            .collect();
        return match on_erased.solve(&rhs) {
            Solution::Unique(x) => Ok((x, contacts.to_vec())),
            Solution::Inconsistent => Err(RepairError::Inconsistent),
            Solution::Underdetermined(_) => unreachable!("full column rank"),
        };
    }
    Err(RepairError::LocalRepairInfeasible {
        offset: group.offset,
    })
}

/// Local repair with groups and parities computed on the fly.
pub fn local_repair(
    code: &CyclicCode,
    r: usize,
    delta: usize,
    received: &ReceivedWord,
) -> Result<LocalRepair, RepairError> {
    RepairEngine::new(code, r, delta)?.local_repair(received)
}

/// Solves `H[:, E] x = -H[:, K] c_K` for the erased symbols.
pub fn global_erasure_decode(
    code: &CyclicCode,
    received: &dyn SymbolSource,
) -> Result<Vec<u32>, RepairError> {
    let n = code.n();
    if received.len() != n {
        return Err(RepairError::LengthMismatch {
            expected: n,
            got: received.len(),
        });
    }
    let erased: Vec<usize> = (0..n).filter(|&i| received.is_erased(i)).collect();
    let known: Vec<usize> = (0..n).filter(|&i| !received.is_erased(i)).collect();
    let mut word = vec![0u32; n];
    for &i in &known {
        word[i] = received.read(i);
    }
    if erased.is_empty() {
        return Ok(word);
    }
    if erased.len() > n - code.k() {
        return Err(RepairError::AmbiguousErasure {
            erased: erased.len(),
        });
    }
    let h = code.parity_check();
    let f = h.field();
    let known_symbols: Vec<u32> = known.iter().map(|&i| word[i]).collect();
    let rhs: Vec<u32> = h
        .select_columns(&known)
        .mul_vec(&known_symbols)
        .into_iter()
        .map(|x| f.neg_raw(x))
        .collect();
    match h.select_columns(&erased).solve(&rhs) {
        Solution::Unique(x) => {
            for (&i, v) in erased.iter().zip(x) {
                word[i] = v;
            }
            Ok(word)
        }
        Solution::Underdetermined(_) => Err(RepairError::AmbiguousErasure {
            erased: erased.len(),
        }),
        Solution::Inconsistent => Err(RepairError::Inconsistent),
    }
}
