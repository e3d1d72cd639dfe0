use super::CyclicCode;
use crate::numtheory::gcd;

/// Consecutive zeros `start, start + step, ..., start + (length - 1) step`
/// modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    pub start: usize,
    pub step: usize,
    pub length: usize,
}

/// Longest arithmetic progression inside `zeros` (mod `n`) whose step is a
/// unit mod `n`. Ties go to the smallest step, then the smallest start.
pub fn longest_progression(zeros: &[usize], n: usize) -> Option<Progression> {
    if zeros.is_empty() || n == 0 {
        return None;
    }
    let mut member = vec![false; n];
    for &z in zeros {
        member[z % n] = true;
    }
    let mut best: Option<Progression> = None;
    for step in 1..n.max(2) {
        if gcd(step as u64, n as u64) != 1 {
            continue;
        }
        // Walk the single cycle 0, step, 2 step, ... and measure circular runs.
        let order: Vec<usize> = (0..n).map(|i| (i * step) % n).collect();
        if order.iter().all(|&e| member[e]) {
            let p = Progression {
                start: 0,
                step: step % n.max(1),
                length: n,
            };
            return Some(pick(best, p));
        }
        // Start counting just after a non-member so runs never wrap mid-count.
        let gap = order
            .iter()
            .position(|&e| !member[e])
            .expect("some non-member exists");
        let mut run = 0usize;
        let mut run_start = 0usize;
        for i in 1..=n {
            let e = order[(gap + i) % n];
            if member[e] {
                if run == 0 {
                    run_start = e;
                }
                run += 1;
                let p = Progression {
                    start: run_start,
                    step,
                    length: run,
                };
                best = Some(pick(best, p));
            } else {
                run = 0;
            }
        }
    }
    best
}

fn pick(best: Option<Progression>, p: Progression) -> Progression {
    match best {
        None => p,
        Some(b) => {
            if (
                p.length,
                std::cmp::Reverse(p.step),
                std::cmp::Reverse(p.start),
            ) > (
                b.length,
                std::cmp::Reverse(b.step),
                std::cmp::Reverse(b.start),
            ) {
                p
            } else {
                b
            }
        }
    }
}

/// `1 + L` where `L` is the longest run of zeros along a unit step.
pub fn bch_lower_bound(code: &CyclicCode) -> usize {
    1 + longest_progression(code.zeros(), code.n()).map_or(0, |p| p.length)
}
