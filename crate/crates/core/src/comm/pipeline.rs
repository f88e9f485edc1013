use std::fmt;

use serde::{Deserialize, Serialize};

use super::{comm_rank, CompiledAdt};
use crate::bounds;
use crate::capacity;
use crate::error::{Error, Result};
use crate::measures::global_measures;
use crate::poly::MultilinearPoly;
use crate::rational::Rational;
use crate::trees::{build_zero_dt, zero_dt_to_adt, AndDecisionTree};

/// Largest `n` for which reports include the exact matrix rank.
pub const REPORT_RANK_LIMIT: usize = 8;

/// `lhs <= rhs` or `lhs = rhs`, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl BoundCheck {
    pub fn at_most(name: &str, lhs: impl Into<Rational>, rhs: impl Into<Rational>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        BoundCheck { name: name.into(), holds: lhs <= rhs, lhs, rhs }
    }

    pub fn equal(name: &str, lhs: impl Into<Rational>, rhs: impl Into<Rational>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        BoundCheck { name: name.into(), holds: lhs == rhs, lhs, rhs }
    }

    /// `rhs - lhs`.
    pub fn margin(&self) -> Rational {
        &self.rhs - &self.lhs
    }
}

/// A quantity reported without a pass/fail verdict. `None` when the
/// denominator vanishes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ratio {
    pub name: String,
    pub value: Option<f64>,
}

impl Ratio {
    fn new(name: &str, num: f64, den: f64) -> Self {
        Ratio { name: name.into(), value: (den > 0.0).then(|| num / den) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub n: usize,
    pub spar: usize,
    pub l1_norm: Rational,
    /// Omitted above [`REPORT_RANK_LIMIT`].
    pub rank: Option<usize>,
    pub mbs: usize,
    pub fmbs: Rational,
    pub fhsc: Rational,
    pub hsc: usize,
    pub zero_depth: usize,
    pub adt_depth: usize,
    /// Most bits the simulated protocol exchanges on any input pair.
    pub protocol_cost: usize,
    pub bounds: Vec<BoundCheck>,
    pub ratios: Vec<Ratio>,
}

impl PipelineReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bounds.iter().filter(|b| !b.holds)
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} spar={} l1={}", self.n, self.spar, self.l1_norm)?;
        if let Some(r) = self.rank {
            writeln!(f, "rank={r}")?;
        }
        writeln!(f, "mbs={} fmbs={} fhsc={} hsc={}", self.mbs, self.fmbs, self.fhsc, self.hsc)?;
        writeln!(f, "zero_depth={} adt_depth={} protocol_cost={}", self.zero_depth, self.adt_depth, self.protocol_cost)?;
        for b in &self.bounds {
            let verdict = if b.holds { "ok" } else { "VIOLATED" };
            writeln!(f, "  {verdict:8} {}: {} vs {}", b.name, b.lhs, b.rhs)?;
        }
        for r in &self.ratios {
            match r.value {
                Some(v) => writeln!(f, "  ratio    {}: {v:.4}", r.name)?,
                None => writeln!(f, "  ratio    {}: n/a", r.name)?,
            }
        }
        Ok(())
    }
}

/// Measures, greedy 0-depth tree, AND tree and protocol for a boolean `f`,
/// with every non-asymptotic bound checked on the result.
pub fn logrank_pipeline(f: &MultilinearPoly) -> Result<(AndDecisionTree, PipelineReport)> {
    let n = f.n();
    capacity::check_enumeration("pipeline", n)?;
    if !f.is_boolean()? {
        return Err(Error::NotBoolean);
    }
    let m = global_measures(f)?;
    let dt = build_zero_dt(f)?;
    if !dt.computes(f)? {
        return Err(Error::Internal("greedy tree disagrees with f".into()));
    }
    let adt = zero_dt_to_adt(&dt, n);
    if !adt.computes(f)? {
        return Err(Error::Internal("AND tree disagrees with f".into()));
    }
    let compiled = CompiledAdt::new(&adt, n)?;
    // x = y = z follows the path of z, and every pair follows the path of x ∧ y
    let protocol_cost = (0..1u64 << n).map(|z| compiled.run(z, z).1).max().unwrap_or(0);
    let rank = if n <= REPORT_RANK_LIMIT { Some(comm_rank(f)?) } else { None };

    let spar = f.spar();
    let zero_depth = dt.zero_depth();
    let adt_depth = adt.depth();
    let l1_norm = f.l1_norm();
    let mut checks = vec![
        BoundCheck::at_most("mbs <= fmbs", m.mbs(), m.fmbs().clone()),
        BoundCheck::equal("fmbs = fhsc", m.fmbs().clone(), m.fhsc().clone()),
        BoundCheck::at_most("fhsc <= hsc", m.fhsc().clone(), m.hsc()),
        BoundCheck::at_most(
            "zero_depth <= ceil(2 fhsc ln spar) + 1",
            zero_depth,
            bounds::zero_depth_bound(m.fhsc(), spar),
        ),
        BoundCheck::at_most(
            "adt_depth <= zero_depth ceil(log2(n+1))",
            adt_depth,
            bounds::adt_depth_bound(zero_depth, n),
        ),
        BoundCheck::at_most("protocol_cost <= 2 adt_depth", protocol_cost, 2 * adt_depth),
        BoundCheck::at_most("spar <= 3^adt_depth", spar, bounds::pow3(adt_depth)),
        BoundCheck::at_most("l1 <= 3^adt_depth", l1_norm.clone(), bounds::pow3(adt_depth)),
        BoundCheck::at_most("spar <= 2^protocol_cost", spar, bounds::pow2(protocol_cost)),
    ];
    if let Some(r) = rank {
        checks.push(BoundCheck::equal("rank = spar", r, spar));
    }

    let log_r = if spar > 1 { (spar as f64).log2() } else { 0.0 };
    let log_n = if n > 1 { (n as f64).log2() } else { 0.0 };
    let mbs = m.mbs() as f64;
    let ratios = vec![
        Ratio::new("mbs / log2(spar)^2", mbs, log_r.powi(2)),
        Ratio::new("fmbs / mbs^2", m.fmbs().to_f64(), mbs.powi(2)),
        Ratio::new("hsc / log2(spar)^5", m.hsc() as f64, log_r.powi(5)),
        Ratio::new("adt_depth / (log2(spar)^5 log2 n)", adt_depth as f64, log_r.powi(5) * log_n),
    ];
    let report = PipelineReport {
        n,
        spar,
        l1_norm,
        rank,
        mbs: m.mbs(),
        fmbs: m.fmbs().clone(),
        fhsc: m.fhsc().clone(),
        hsc: m.hsc(),
        zero_depth,
        adt_depth,
        protocol_cost,
        bounds: checks,
        ratios,
    };
    Ok((adt, report))
}

/// The pipeline report with the constructed protocol's cost `C` in the
/// role of the communication complexity: adds `adt_depth / (C^3 log2 n)`
/// and `mbs / C`.
pub fn lifting_report(f: &MultilinearPoly) -> Result<PipelineReport> {
    let (_, mut report) = logrank_pipeline(f)?;
    let c = report.protocol_cost as f64;
    let log_n = if report.n > 1 { (report.n as f64).log2() } else { 0.0 };
    report.ratios.push(Ratio::new("adt_depth / (C^3 log2 n)", report.adt_depth as f64, c.powi(3) * log_n));
    report.ratios.push(Ratio::new("mbs / C", report.mbs as f64, c));
    Ok(report)
}
