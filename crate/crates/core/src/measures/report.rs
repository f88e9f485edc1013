use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::family::{family_with, Oracle, SensitiveFamily};
use super::witness::{CoverWitness, DistributionWitness, HittingSetWitness, PackingWitness, SmoothDistribution, Witnesses};
use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::{Error, Result};
use crate::optkern::{fractional_cover, fractional_pack, integral_cover, integral_pack, LpResult, SetSystem};
use crate::poly::{MultilinearPoly, TruthTable};
use crate::rational::Rational;

/// The four measures of one set system, with the solver outputs behind them.
#[derive(Clone, Debug)]
pub struct SystemMeasures {
    /// Indices of a maximum packing.
    pub packing: Vec<usize>,
    /// Optimal packing LP; primal weights are per set.
    pub pack_lp: LpResult,
    /// Optimal covering LP; primal weights are per element.
    pub cover_lp: LpResult,
    pub hitting_set: BitVec,
}

impl SystemMeasures {
    pub fn compute(s: &SetSystem) -> Self {
        SystemMeasures {
            packing: integral_pack(s),
            pack_lp: fractional_pack(s),
            cover_lp: fractional_cover(s),
            hitting_set: integral_cover(s),
        }
    }

    pub fn mbs(&self) -> usize {
        self.packing.len()
    }

    pub fn fmbs(&self) -> &Rational {
        self.pack_lp.value()
    }

    pub fn fhsc(&self) -> &Rational {
        self.cover_lp.value()
    }

    pub fn hsc(&self) -> usize {
        self.hitting_set.count()
    }
}

/// Memoizes [`SystemMeasures`] by set system. Exhaustive scans over small
/// `n` meet the same few families over and over.
#[derive(Default)]
pub struct MeasureCache {
    map: HashMap<SetSystem, Arc<SystemMeasures>>,
    limit: usize,
    hits: u64,
    misses: u64,
}

impl MeasureCache {
    pub fn new() -> Self {
        Self::with_limit(1 << 18)
    }

    /// Cache that is emptied whenever it would exceed `limit` entries.
    pub fn with_limit(limit: usize) -> Self {
        MeasureCache { map: HashMap::new(), limit, hits: 0, misses: 0 }
    }

    pub fn measures(&mut self, s: &SetSystem) -> Arc<SystemMeasures> {
        if let Some(m) = self.map.get(s) {
            self.hits += 1;
            return m.clone();
        }
        self.misses += 1;
        let m = Arc::new(SystemMeasures::compute(s));
        if self.map.len() >= self.limit.max(1) {
            self.map.clear();
        }
        self.map.insert(s.clone(), m.clone());
        m
    }

    /// `(hits, misses)` so far.
    pub fn stats(&self) -> (u64, u64) {
        (self.hits, self.misses)
    }

    pub fn local(&mut self, f: &MultilinearPoly, table: Option<&TruthTable>, z: &BitVec) -> (SensitiveFamily, Arc<SystemMeasures>) {
        let oracle = table.map_or(Oracle::Poly(f), Oracle::Table);
        let fam = family_with(f, z, oracle).expect("minimal monomials always flip");
        let m = self.measures(&fam.blocks);
        (fam, m)
    }
}

/// Where a report was evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportPoint {
    At(BitVec),
    /// Maximum over all points; each witness records its own arg-max.
    Global,
}

impl Serialize for ReportPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ReportPoint::At(z) => z.serialize(serializer),
            ReportPoint::Global => serializer.serialize_str("global"),
        }
    }
}

impl<'de> Deserialize<'de> for ReportPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "global" {
            Ok(ReportPoint::Global)
        } else {
            BitVec::from_bit_string(&s).map(ReportPoint::At).map_err(serde::de::Error::custom)
        }
    }
}

/// MBS, FMBS, FHSC and HSC with witnesses. Construction enforces
/// `mbs <= fmbs == fhsc <= hsc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawReport", into = "RawReport")]
pub struct MeasureReport {
    point: ReportPoint,
    mbs: usize,
    fmbs: Rational,
    fhsc: Rational,
    hsc: usize,
    witnesses: Witnesses,
}

#[derive(Serialize, Deserialize)]
struct RawReport {
    point: ReportPoint,
    mbs: usize,
    fmbs: Rational,
    fhsc: Rational,
    hsc: usize,
    witnesses: Witnesses,
}

impl TryFrom<RawReport> for MeasureReport {
    type Error = Error;

    fn try_from(r: RawReport) -> Result<Self> {
        MeasureReport::new(r.point, r.mbs, r.fmbs, r.fhsc, r.hsc, r.witnesses)
    }
}

impl From<MeasureReport> for RawReport {
    fn from(r: MeasureReport) -> Self {
        RawReport { point: r.point, mbs: r.mbs, fmbs: r.fmbs, fhsc: r.fhsc, hsc: r.hsc, witnesses: r.witnesses }
    }
}

impl MeasureReport {
    pub fn new(point: ReportPoint, mbs: usize, fmbs: Rational, fhsc: Rational, hsc: usize, witnesses: Witnesses) -> Result<Self> {
        check_chain(mbs, &fmbs, &fhsc, hsc)?;
        Ok(MeasureReport { point, mbs, fmbs, fhsc, hsc, witnesses })
    }

    pub fn point(&self) -> &ReportPoint {
        &self.point
    }

    pub fn mbs(&self) -> usize {
        self.mbs
    }

    pub fn fmbs(&self) -> &Rational {
        &self.fmbs
    }

    pub fn fhsc(&self) -> &Rational {
        &self.fhsc
    }

    pub fn hsc(&self) -> usize {
        self.hsc
    }

    pub fn witnesses(&self) -> &Witnesses {
        &self.witnesses
    }

    /// Re-checks all witnesses against `f`.
    pub fn verify(&self, f: &MultilinearPoly) -> Result<()> {
        self.witnesses.verify(f, self.mbs, &self.fmbs, &self.fhsc, self.hsc)
    }
}

impl fmt::Display for MeasureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witnesses;
        match &self.point {
            ReportPoint::At(z) => writeln!(f, "point {z}")?,
            ReportPoint::Global => writeln!(f, "global")?,
        }
        let at = |p: &BitVec| if self.point == ReportPoint::Global { format!(" at {p}") } else { String::new() };
        let blocks: Vec<String> = w.packing.blocks.iter().map(BitVec::to_string).collect();
        writeln!(f, "mbs  {}{}  blocks [{}]", self.mbs, at(&w.packing.point), blocks.join(" "))?;
        writeln!(f, "fmbs {}{}", self.fmbs, at(&w.distribution.point))?;
        writeln!(f, "fhsc {}{}", self.fhsc, at(&w.cover.point))?;
        write!(f, "hsc  {}{}  set {}", self.hsc, at(&w.hitting_set.point), w.hitting_set.elements)
    }
}

pub fn check_chain(mbs: usize, fmbs: &Rational, fhsc: &Rational, hsc: usize) -> Result<()> {
    if Rational::from(mbs) <= *fmbs && fmbs == fhsc && *fhsc <= Rational::from(hsc) {
        Ok(())
    } else {
        Err(Error::Internal(format!("chain violated: mbs {mbs}, fmbs {fmbs}, fhsc {fhsc}, hsc {hsc}")))
    }
}

fn packing_witness(fam: &SensitiveFamily, m: &SystemMeasures) -> PackingWitness {
    PackingWitness { point: fam.base.clone(), blocks: m.packing.iter().map(|&k| fam.blocks.sets()[k].clone()).collect() }
}

fn distribution_witness(fam: &SensitiveFamily, m: &SystemMeasures) -> DistributionWitness {
    let value = m.fmbs();
    let distribution = if value.is_zero() {
        None
    } else {
        let support = fam
            .blocks
            .sets()
            .iter()
            .zip(m.pack_lp.primal())
            .filter(|(_, a)| a.is_positive())
            .map(|(w, a)| (w.clone(), a / value))
            .collect();
        Some(SmoothDistribution::new(support).expect("normalized optimal packing weights"))
    };
    DistributionWitness { point: fam.base.clone(), distribution }
}

fn cover_witness(fam: &SensitiveFamily, m: &SystemMeasures) -> CoverWitness {
    CoverWitness { point: fam.base.clone(), weights: m.cover_lp.primal().to_vec() }
}

fn hitting_witness(fam: &SensitiveFamily, m: &SystemMeasures) -> HittingSetWitness {
    HittingSetWitness { point: fam.base.clone(), elements: m.hitting_set.clone() }
}

pub fn local_measures(f: &MultilinearPoly, z: &BitVec) -> MeasureReport {
    local_measures_cached(f, z, &mut MeasureCache::with_limit(1))
}

pub fn local_measures_cached(f: &MultilinearPoly, z: &BitVec, cache: &mut MeasureCache) -> MeasureReport {
    let (fam, m) = cache.local(f, None, z);
    let witnesses = Witnesses {
        packing: packing_witness(&fam, &m),
        hitting_set: hitting_witness(&fam, &m),
        distribution: distribution_witness(&fam, &m),
        cover: cover_witness(&fam, &m),
    };
    MeasureReport::new(ReportPoint::At(z.clone()), m.mbs(), m.fmbs().clone(), m.fhsc().clone(), m.hsc(), witnesses)
        .expect("LP values sandwich between integral optima")
}

pub fn global_measures(f: &MultilinearPoly) -> Result<MeasureReport> {
    global_measures_cached(f, &mut MeasureCache::new())
}

/// Maxima over every `z ∈ {0,1}^n`. Ties go to the smallest truth-table
/// index.
pub fn global_measures_cached(f: &MultilinearPoly, cache: &mut MeasureCache) -> Result<MeasureReport> {
    let n = f.n();
    capacity::check_enumeration("global measures", n)?;
    let table = f.to_truth_table()?;
    let zero = BitVec::empty(n);
    let (fam0, m0) = cache.local(f, Some(&table), &zero);
    let mut best_mbs = (packing_witness(&fam0, &m0), m0.mbs());
    let mut best_hsc = (hitting_witness(&fam0, &m0), m0.hsc());
    let mut best_fmbs = (distribution_witness(&fam0, &m0), m0.fmbs().clone());
    let mut best_fhsc = (cover_witness(&fam0, &m0), m0.fhsc().clone());
    for j in 1..1u64 << n {
        let z = BitVec::from_index(n, j);
        if f.restrict_ones(&z).is_constant() {
            continue;
        }
        let (fam, m) = cache.local(f, Some(&table), &z);
        if m.mbs() > best_mbs.1 {
            best_mbs = (packing_witness(&fam, &m), m.mbs());
        }
        if m.hsc() > best_hsc.1 {
            best_hsc = (hitting_witness(&fam, &m), m.hsc());
        }
        if *m.fmbs() > best_fmbs.1 {
            best_fmbs = (distribution_witness(&fam, &m), m.fmbs().clone());
        }
        if *m.fhsc() > best_fhsc.1 {
            best_fhsc = (cover_witness(&fam, &m), m.fhsc().clone());
        }
    }
    let witnesses = Witnesses { packing: best_mbs.0, hitting_set: best_hsc.0, distribution: best_fmbs.0, cover: best_fhsc.0 };
    MeasureReport::new(ReportPoint::Global, best_mbs.1, best_fmbs.1, best_fhsc.1, best_hsc.1, witnesses)
}
