use std::io::Write;
use std::ops::RangeInclusive;

use lrc_forge::lrc::search_params;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::{emit, SearchArgs};

/// Parses `a`, `a-b`, `a..b` or `a..=b`, all inclusive.
pub(crate) fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::BadInput(format!("cannot parse range '{text}'"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let t = text.trim();
    let (lo, hi) = if let Some((a, b)) = t.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = t.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = t.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let a = num(t)?;
        (a, a)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub(crate) fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let default = 2..=args.n_max.max(1);
    let r = args
        .r_range
        .as_deref()
        .map(parse_range)
        .transpose()?
        .unwrap_or(default.clone());
    let delta = args
        .delta_range
        .as_deref()
        .map(parse_range)
        .transpose()?
        .unwrap_or(default);
    let hits = search_params(args.q..=args.q, 1..=args.n_max, r, delta);
    let rows: Vec<Value> = hits
        .iter()
        .flat_map(|h| {
            h.kinds.iter().map(move |kind| {
                let p = &h.params;
                let mut row = json!({
                    "q": p.q, "n": p.n, "r": p.r, "delta": p.delta,
                    "kind": kind.tag(),
                    "k": kind.expected_dimension(p),
                    "d": kind.target_distance(p.delta),
                });
                if let lrc_forge::ConstructionKind::Remark3 { d } = kind {
                    row["target_d"] = json!(d);
                }
                row
            })
        })
        .collect();
    if args.json {
        return emit(
            out,
            &serde_json::to_string_pretty(&rows).expect("rows serialize"),
        );
    }
    let header = format!(
        "{:>6} {:>4} {:>4} {:>5} {:<13} {:>5} {:>3}",
        "q", "n", "r", "delta", "kind", "k", "d"
    );
    emit(out, &header)?;
    for h in &hits {
        let p = &h.params;
        for kind in &h.kinds {
            let k = kind
                .expected_dimension(p)
                .map_or("-".to_string(), |k| k.to_string());
            let line = format!(
                "{:>6} {:>4} {:>4} {:>5} {:<13} {:>5} {:>3}",
                p.q,
                p.n,
                p.r,
                p.delta,
                kind.to_string(),
                k,
                kind.target_distance(p.delta)
            );
            emit(out, &line)?;
        }
    }
    Ok(())
}
