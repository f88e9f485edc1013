//! Runs every checkable inequality over many functions and tallies the
//! results per check.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::bounds;
use crate::capacity;
use crate::comm::{comm_rank, udisj_embedding, CompiledAdt};
use crate::error::{Error, Result};
use crate::measures::{
    check_chain, disjointify, global_measures_cached, sample_count, smooth_flip_probability, MeasureCache, SmoothDistribution,
    SystemMeasures,
};
use crate::optkern::{greedy_cover, SetSystem};
use crate::poly::TruthTable;
use crate::rational::Rational;
use crate::trees::{adt_to_dt, build_zero_dt, zero_dt_to_adt};

pub const EXHAUSTIVE_LIMIT: usize = 4;
pub const SAMPLED_LIMIT: usize = 10;
/// Largest `n` whose protocol is run on all `4^n` input pairs.
pub const PAIRS_LIMIT: usize = 8;
pub const RANK_LIMIT: usize = 8;
pub const UDISJ_LIMIT: usize = 8;
pub const DISJOINTIFY_ATTEMPTS: usize = 20;

pub const CHAIN: &str = "mbs <= fmbs = fhsc <= hsc at every point";
pub const SOLUTIONS: &str = "packing, hitting set and LP solutions feasible at every point";
pub const GREEDY_HITTING_SET: &str = "greedy hitting set <= floor(fhsc ln |mon|) + 1 at every point";
pub const SMOOTH_NOISE: &str = "Pr[flip] <= p fmbs for a random p-smooth distribution";
pub const ZERO_DEPTH: &str = "zero_depth <= ceil(2 fhsc ln spar) + 1";
pub const TREES_CORRECT: &str = "greedy, AND and simulated trees compute f";
pub const ADT_DEPTH: &str = "adt_depth <= zero_depth ceil(log2(n+1))";
pub const SIMULATION: &str = "simulated tree zero_depth <= adt_depth";
pub const PROTOCOL: &str = "protocol correct on all pairs with cost <= 2 adt_depth";
pub const ADT_SPARSITY: &str = "spar and l1 <= 3^adt_depth";
pub const RANK: &str = "rank = spar";
pub const UDISJ: &str = "unique disjointness embedding of the largest packing";
pub const DISJOINTIFY: &str = "disjointify successes are disjoint flipping packings";
pub const RATIO_MBS: &str = "mbs / log2(spar)^2";
pub const RATIO_FMBS: &str = "fmbs / mbs^2";
pub const RATIO_HSC: &str = "hsc / log2(spar)^5";

const ASSERTS: [&str; 13] = [
    CHAIN,
    SOLUTIONS,
    GREEDY_HITTING_SET,
    SMOOTH_NOISE,
    ZERO_DEPTH,
    TREES_CORRECT,
    ADT_DEPTH,
    SIMULATION,
    PROTOCOL,
    ADT_SPARSITY,
    RANK,
    UDISJ,
    DISJOINTIFY,
];
const RATIOS: [&str; 3] = [RATIO_MBS, RATIO_FMBS, RATIO_HSC];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    /// Every boolean function for each `n <= max_n`.
    Exhaustive,
    /// `samples` uniformly random functions for each `n <= max_n`.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Assert { violations: u64, first_violation: Option<String> },
    /// Largest value seen; `None` while every instance was undefined.
    Ratio { max: Option<f64>, at: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub instances: u64,
    pub outcome: Outcome,
    pub wall_ms: f64,
}

impl Check {
    pub fn violations(&self) -> u64 {
        match self.outcome {
            Outcome::Assert { violations, .. } => violations,
            Outcome::Ratio { .. } => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub max_n: usize,
    pub mode: Mode,
    pub functions: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn violations(&self) -> u64 {
        self.checks.iter().map(Check::violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled { samples, seed } => format!("{samples} samples per n, seed {seed}"),
        };
        writeln!(f, "n <= {}, {mode}, {} functions", self.max_n, self.functions)?;
        for c in &self.checks {
            match &c.outcome {
                Outcome::Assert { violations, first_violation } => {
                    let verdict = if *violations == 0 { "ok" } else { "FAIL" };
                    writeln!(f, "{verdict:5} {:>10} inst {:>6} viol {:>9.1} ms  {}", c.instances, violations, c.wall_ms, c.name)?;
                    if let Some(v) = first_violation {
                        writeln!(f, "      first violation: {v}")?;
                    }
                }
                Outcome::Ratio { max, at } => {
                    let shown = max.map_or("n/a".to_string(), |m| format!("{m:.4}"));
                    writeln!(f, "ratio {:>10} inst max {shown:>7} {:>6.1} ms  {}", c.instances, c.wall_ms, c.name)?;
                    if let Some(at) = at {
                        writeln!(f, "      attained at {at}")?;
                    }
                }
            }
        }
        write!(f, "{} violations", self.violations())
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn new() -> Self {
        let assert = ASSERTS.iter().map(|&name| Check {
            name: name.into(),
            instances: 0,
            outcome: Outcome::Assert { violations: 0, first_violation: None },
            wall_ms: 0.0,
        });
        let ratio = RATIOS.iter().map(|&name| Check {
            name: name.into(),
            instances: 0,
            outcome: Outcome::Ratio { max: None, at: None },
            wall_ms: 0.0,
        });
        Suite { checks: assert.chain(ratio).collect() }
    }

    fn get(&mut self, name: &str) -> &mut Check {
        self.checks.iter_mut().find(|c| c.name == name).expect("registered check")
    }

    fn assert(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let c = self.get(name);
        c.instances += 1;
        if let Outcome::Assert { violations, first_violation } = &mut c.outcome {
            if !ok {
                *violations += 1;
                first_violation.get_or_insert_with(detail);
            }
        }
    }

    fn ratio(&mut self, name: &str, num: f64, den: f64, at: impl FnOnce() -> String) {
        let c = self.get(name);
        c.instances += 1;
        if den <= 0.0 {
            return;
        }
        let v = num / den;
        if let Outcome::Ratio { max, at: where_ } = &mut c.outcome {
            if max.map_or(true, |m| v > m) {
                *max = Some(v);
                *where_ = Some(at());
            }
        }
    }

    fn time(&mut self, name: &str, since: Instant) {
        self.get(name).wall_ms += since.elapsed().as_secs_f64() * 1e3;
    }
}

/// Runs the suite over every function (or the sampled ones) with
/// `1 <= n <= max_n`.
pub fn run(max_n: usize, mode: Mode) -> Result<VerificationReport> {
    match mode {
        Mode::Exhaustive => capacity::check_or_override("exhaustive verification", max_n, EXHAUSTIVE_LIMIT)?,
        Mode::Sampled { .. } => capacity::check_or_override("sampled verification", max_n, SAMPLED_LIMIT)?,
    }
    // 2^(2^n) functions must be countable
    if matches!(mode, Mode::Exhaustive) && max_n > 5 {
        return Err(Error::Capacity { what: "exhaustive verification", n: max_n, limit: 5 });
    }
    let mut suite = Suite::new();
    let mut cache = MeasureCache::new();
    let mut functions = 0u64;
    for n in 1..=max_n {
        match mode {
            Mode::Exhaustive => {
                for bits in 0..1u64 << (1 << n) {
                    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
                    rng.set_stream(bits);
                    check_function(&TruthTable::from_bits(n, bits), &mut rng, &mut suite, &mut cache)?;
                    functions += 1;
                }
            }
            Mode::Sampled { samples, seed } => {
                for i in 0..samples {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(((n as u64) << 32) | i as u64);
                    let table = TruthTable::from_predicate(n, |_| rng.gen())?;
                    check_function(&table, &mut rng, &mut suite, &mut cache)?;
                    functions += 1;
                }
            }
        }
    }
    Ok(VerificationReport { max_n, mode, functions, checks: suite.checks })
}

fn describe(table: &TruthTable) -> String {
    let bits: String = table.values().iter().map(|v| if v.is_one() { '1' } else { '0' }).collect();
    format!("n={} table={bits}", table.n())
}

fn lp_solutions_feasible(s: &SetSystem, m: &SystemMeasures) -> bool {
    let n = s.n();
    let cover = m.cover_lp.primal();
    let pack = m.pack_lp.primal();
    let covered = s.sets().iter().all(|w| w.iter().map(|i| &cover[i]).sum::<Rational>() >= Rational::one());
    let packed = (0..n).all(|i| {
        s.sets().iter().zip(pack).filter(|(w, _)| w.contains(i)).map(|(_, y)| y).sum::<Rational>() <= Rational::one()
    });
    let nonneg = cover.iter().chain(pack).all(|v| !v.is_negative());
    let values = cover.iter().sum::<Rational>() == *m.fhsc() && pack.iter().sum::<Rational>() == *m.fmbs();
    s.is_packing(&m.packing) && s.is_hit_by(&m.hitting_set) && covered && packed && nonneg && values
}

/// A random distribution over up to four random nonempty blocks outside `z`.
fn random_distribution(z: &BitVec, rng: &mut ChaCha8Rng) -> Option<SmoothDistribution> {
    let free: Vec<usize> = z.complement().iter().collect();
    if free.is_empty() {
        return None;
    }
    let n = z.n();
    let mut support: Vec<(BitVec, Rational)> = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let mut w = BitVec::from_indices(n, free.iter().copied().filter(|_| rng.gen_bool(0.5)));
        if w.is_empty() {
            w.insert(free[rng.gen_range(0..free.len())]);
        }
        let weight = Rational::from_integer(rng.gen_range(1..=5));
        match support.iter_mut().find(|(u, _)| *u == w) {
            Some((_, p)) => *p += &weight,
            None => support.push((w, weight)),
        }
    }
    let total: Rational = support.iter().map(|(_, p)| p).sum();
    let support = support.into_iter().map(|(w, p)| (w, &p / &total)).collect();
    SmoothDistribution::new(support).ok()
}

fn check_function(table: &TruthTable, rng: &mut ChaCha8Rng, suite: &mut Suite, cache: &mut MeasureCache) -> Result<()> {
    let n = table.n();
    let f = table.to_poly()?;
    let name = || describe(table);

    // local measures at every point
    let start = Instant::now();
    let mut points = Vec::new();
    for j in 0..1u64 << n {
        let z = BitVec::from_index(n, j);
        let (fam, m) = cache.local(&f, Some(table), &z);
        let chain = check_chain(m.mbs(), m.fmbs(), m.fhsc(), m.hsc()).is_ok();
        suite.assert(CHAIN, chain, || format!("{} z={z}", name()));
        let feasible = lp_solutions_feasible(&fam.blocks, &m);
        suite.assert(SOLUTIONS, feasible, || format!("{} z={z}", name()));
        points.push((z, fam, m));
    }
    suite.time(CHAIN, start);

    let start = Instant::now();
    for (z, _, m) in &points {
        let fz = f.restrict_ones(z);
        if fz.is_constant() {
            continue;
        }
        let mon = SetSystem::new(n, fz.mon()).expect("distinct nonempty supports");
        let size = greedy_cover(&mon).hitting_set.count();
        let bound = bounds::greedy_bound(m.fhsc(), mon.len());
        suite.assert(GREEDY_HITTING_SET, size <= bound, || format!("{} z={z}: {size} > {bound}", name()));
    }
    suite.time(GREEDY_HITTING_SET, start);

    let start = Instant::now();
    let live: Vec<usize> = (0..points.len()).filter(|&j| !points[j].1.blocks.is_empty()).collect();
    if !live.is_empty() {
        let (z, _, m) = &points[live[rng.gen_range(0..live.len())]];
        if let Some(d) = random_distribution(z, rng) {
            let pr = smooth_flip_probability(&f, z, &d);
            let rhs = d.smoothness() * m.fmbs();
            suite.assert(SMOOTH_NOISE, pr <= rhs, || format!("{} z={z}: {pr} > {rhs}", name()));
        }
    }
    suite.time(SMOOTH_NOISE, start);

    let start = Instant::now();
    let global = global_measures_cached(&f, cache)?;
    let spar = f.spar();
    let dt = build_zero_dt(&f)?;
    let zd = dt.zero_depth();
    let zd_bound = bounds::zero_depth_bound(global.fhsc(), spar);
    suite.assert(ZERO_DEPTH, zd <= zd_bound, || format!("{}: {zd} > {zd_bound}", name()));
    suite.time(ZERO_DEPTH, start);

    let start = Instant::now();
    let adt = zero_dt_to_adt(&dt, n);
    let sim = adt_to_dt(&adt, n);
    let correct = dt.computes(&f)? && adt.computes(&f)? && sim.computes(&f)? && sim.is_valid(n);
    suite.assert(TREES_CORRECT, correct, name);
    let depth = adt.depth();
    let depth_bound = bounds::adt_depth_bound(zd, n);
    suite.assert(ADT_DEPTH, depth <= depth_bound, || format!("{}: {depth} > {depth_bound}", name()));
    suite.assert(SIMULATION, sim.zero_depth() <= depth, name);
    let l1 = f.l1_norm();
    let cap = bounds::pow3(depth);
    suite.assert(ADT_SPARSITY, Rational::from(spar) <= cap && l1 <= cap, name);
    suite.time(TREES_CORRECT, start);

    if n <= PAIRS_LIMIT {
        let start = Instant::now();
        let compiled = CompiledAdt::new(&adt, n)?;
        let size = 1u64 << n;
        let mut ok = true;
        'pairs: for x in 0..size {
            for y in 0..size {
                let (leaf, cost) = compiled.run(x, y);
                if &compiled.leaves()[leaf] != table.get((x & y) as usize) || cost > 2 * depth {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        suite.assert(PROTOCOL, ok, name);
        suite.time(PROTOCOL, start);
    }

    if n <= RANK_LIMIT {
        let start = Instant::now();
        let rank = comm_rank(&f)?;
        suite.assert(RANK, rank == spar, || format!("{}: rank {rank}, spar {spar}", name()));
        suite.time(RANK, start);
    }

    let packing = &global.witnesses().packing;
    if packing.size() <= UDISJ_LIMIT && packing.size() > 0 {
        let start = Instant::now();
        let ok = udisj_embedding(&f, packing).and_then(|e| e.violations(&f)).is_ok_and(|v| v.is_empty());
        suite.assert(UDISJ, ok, name);
        suite.time(UDISJ, start);
    }

    if let Some(d) = &global.witnesses().distribution.distribution {
        let start = Instant::now();
        let z = &global.witnesses().distribution.point;
        let ok = match disjointify(&f, z, d, rng.gen(), DISJOINTIFY_ATTEMPTS) {
            Ok(out) => out.witness.verify(&f).is_ok() && out.witness.size() >= (2 * sample_count(d.smoothness())).div_ceil(3),
            Err(Error::AttemptsExhausted { .. }) => true,
            Err(_) => false,
        };
        suite.assert(DISJOINTIFY, ok, || format!("{} z={z}", name()));
        suite.time(DISJOINTIFY, start);
    }

    let start = Instant::now();
    let log_r = if spar > 1 { (spar as f64).log2() } else { 0.0 };
    let mbs = global.mbs() as f64;
    suite.ratio(RATIO_MBS, mbs, log_r.powi(2), name);
    suite.ratio(RATIO_FMBS, global.fmbs().to_f64(), mbs.powi(2), name);
    suite.ratio(RATIO_HSC, global.hsc() as f64, log_r.powi(5), name);
    suite.time(RATIO_MBS, start);
    Ok(())
}
