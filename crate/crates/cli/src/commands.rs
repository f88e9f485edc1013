use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use andlift_core::bitvec::BitVec;
use andlift_core::comm::{self, CommMatrix, CompiledAdt};
use andlift_core::harness::{self, Mode};
use andlift_core::measures::{global_measures, local_measures};
use andlift_core::optkern::SetSystem;
use andlift_core::poly::{format_poly, format_table, parse_function};
use andlift_core::trees::{build_zero_dt, format_adt, format_dt, zero_dt_to_adt};
use andlift_core::zoo::{self, FamilySpec};
use andlift_core::{capacity, Error, MultilinearPoly};
use serde::Serialize;
use serde_json::json;

/// Largest `n` for which `protocol` enumerates all `4^n` input pairs.
pub const PAIRS_LIMIT: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{count} violations")]
    Violations { report: String, count: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Capacity { .. }) => 2,
            CliError::Core(Error::Parse { .. } | Error::InvalidInput(_) | Error::NotBoolean) => 1,
            CliError::Core(_) | CliError::Violations { .. } => 3,
            CliError::Io { .. } | CliError::Usage(_) => 1,
        }
    }
}

type CliResult = Result<String, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_function(path: &Path) -> Result<MultilinearPoly, CliError> {
    Ok(parse_function(&read(path)?)?.into_poly()?)
}

fn to_json<T: Serialize>(value: &T) -> CliResult {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(format!("cannot encode JSON: {e}")))
}

/// `0` is the all-zeros point; otherwise a bit string of length `n` or a
/// 1-based set `{i,j}`.
pub fn parse_point(n: usize, s: &str) -> Result<BitVec, CliError> {
    let s = s.trim();
    if s == "0" {
        return Ok(BitVec::empty(n));
    }
    let z = if s.starts_with('{') { BitVec::parse_set(n, s)? } else { BitVec::from_bit_string(s)? };
    if z.n() != n {
        return Err(CliError::Usage(format!("point {s:?} has {} bits, expected {n}", z.n())));
    }
    Ok(z)
}

pub fn measures(path: &Path, point: Option<&str>, global: bool, json: bool) -> CliResult {
    let f = load_function(path)?;
    let report = if global {
        global_measures(&f)?
    } else {
        capacity::check_enumeration("measures", f.n())?;
        let z = match point {
            Some(p) => parse_point(f.n(), p)?,
            None => BitVec::empty(f.n()),
        };
        local_measures(&f, &z)
    };
    if json {
        to_json(&report)
    } else {
        Ok(report.to_string())
    }
}

pub fn tree(path: &Path, and: bool, json: bool) -> CliResult {
    let f = load_function(path)?;
    let n = f.n();
    let dt = build_zero_dt(&f)?;
    let (text, depth) = if and {
        let adt = zero_dt_to_adt(&dt, n);
        (format_adt(&adt, n), adt.depth())
    } else {
        (format_dt(&dt, n), dt.depth())
    };
    let zero_depth = dt.zero_depth();
    if json {
        let kind = if and { "and" } else { "zero" };
        to_json(&json!({ "kind": kind, "n": n, "zero_depth": zero_depth, "depth": depth, "tree": text }))
    } else {
        Ok(format!("# zero_depth={zero_depth} depth={depth}\n{text}"))
    }
}

#[derive(Serialize)]
struct ProtocolSummary {
    n: usize,
    adt_depth: usize,
    pairs: u64,
    correct: u64,
    max_cost: usize,
    first_error: Option<(String, String)>,
}

pub fn protocol(path: &Path, pair: Option<(&str, &str)>, report: bool, json: bool) -> CliResult {
    let f = load_function(path)?;
    let n = f.n();
    if report {
        let r = comm::lifting_report(&f)?;
        return if json { to_json(&r) } else { Ok(r.to_string()) };
    }
    if !f.is_boolean()? {
        return Err(Error::NotBoolean.into());
    }
    let dt = build_zero_dt(&f)?;
    let adt = zero_dt_to_adt(&dt, n);

    if let Some((x, y)) = pair {
        let (x, y) = (parse_point(n, x)?, parse_point(n, y)?);
        let transcript = comm::simulate_protocol(&adt, &x, &y);
        let expected = f.evaluate(&x.intersection(&y));
        if transcript.output != expected {
            return Err(Error::Internal(format!("protocol output {} differs from f(x ∧ y) = {expected}", transcript.output)).into());
        }
        return if json {
            to_json(&json!({
                "x": x.to_bit_string(),
                "y": y.to_bit_string(),
                "transcript": transcript.to_string(),
                "cost": transcript.cost(),
                "output": transcript.output,
            }))
        } else {
            Ok(format!("{transcript}\ncost={}", transcript.cost()))
        };
    }

    capacity::check_or_override("protocol pairs", n, PAIRS_LIMIT)?;
    let table = f.to_truth_table()?;
    let compiled = CompiledAdt::new(&adt, n)?;
    let leaves = compiled.leaves();
    let mut summary =
        ProtocolSummary { n, adt_depth: adt.depth(), pairs: 0, correct: 0, max_cost: 0, first_error: None };
    for x in 0..1u64 << n {
        for y in 0..1u64 << n {
            let (leaf, cost) = compiled.run(x, y);
            summary.pairs += 1;
            summary.max_cost = summary.max_cost.max(cost);
            if &leaves[leaf] == table.get((x & y) as usize) {
                summary.correct += 1;
            } else if summary.first_error.is_none() {
                summary.first_error = Some((
                    BitVec::from_index(n, x).to_bit_string(),
                    BitVec::from_index(n, y).to_bit_string(),
                ));
            }
        }
    }
    let out = if json {
        to_json(&summary)?
    } else {
        format!(
            "pairs={} correct={} max_cost={} adt_depth={}",
            summary.pairs, summary.correct, summary.max_cost, summary.adt_depth
        )
    };
    let count = summary.pairs - summary.correct + u64::from(summary.max_cost > 2 * summary.adt_depth);
    if count > 0 {
        return Err(CliError::Violations { report: out, count });
    }
    Ok(out)
}

pub fn rank(path: &Path, json: bool) -> CliResult {
    let f = load_function(path)?;
    let rank = CommMatrix::new(&f)?.rank();
    let spar = f.spar();
    if json {
        to_json(&json!({ "n": f.n(), "rank": rank, "spar": spar }))
    } else {
        Ok(format!("rank={rank} spar={spar}"))
    }
}

pub fn zoo(family: &str, param: usize, table: bool) -> CliResult {
    let spec = FamilySpec::new(family, param)?;
    let header = format!("# {spec}\n");
    if table {
        Ok(header + &format_table(&zoo::generate_table(&spec)?))
    } else {
        Ok(header + &format_poly(&zoo::generate(&spec)?))
    }
}

pub fn dichotomy(path: &Path, m: usize, json: bool) -> CliResult {
    let s = SetSystem::parse(&read(path)?)?;
    let d = zoo::dichotomy(&s, m)?;
    if json {
        return to_json(&d);
    }
    let one_based = |b: &BitVec| format!("{{{}}}", b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
    Ok(match d {
        zoo::Dichotomy::HittingSet { mbs, cover, greedy_bound } => format!(
            "branch=hitting_set mbs={mbs} m={m}\nhitting_set={} size={} bound={greedy_bound}",
            one_based(&cover.hitting_set),
            cover.hitting_set.count(),
        ),
        zoo::Dichotomy::Disjoint { mbs, t, sets, indices } => {
            let mut out = format!("branch=disjoint mbs={mbs} m={m}\nt={}\n", one_based(&t));
            for (set, i) in sets.iter().zip(&indices) {
                let _ = writeln!(out, "set {} -> {}", i + 1, one_based(set));
            }
            out
        }
    })
}

pub fn verify(max_n: usize, exhaustive: bool, samples: usize, seed: u64, json: bool) -> CliResult {
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Sampled { samples, seed } };
    let report = harness::run(max_n, mode)?;
    let out = if json { to_json(&report)? } else { report.to_string() };
    if report.passed() {
        Ok(out)
    } else {
        Err(CliError::Violations { count: report.violations(), report: out })
    }
}
