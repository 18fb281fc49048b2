//! The complete search for post-critically finite cubics `z^3 + A z + B`
//! and quadratics `z^2 + c` over Q, plus height-ratio scans along the two
//! extremal families.
//!
//! Cubic pipeline: grid -> integrality -> archimedean escape -> p-adic
//! escape (each prime in turn) -> exact certification of what is left,
//! then the `B -> -B` twins (`z^3 + A z - B` is conjugate to
//! `z^3 + A z + B` by `z -> -z`) are certified too.

pub mod config;
pub mod family;
pub mod output;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::rational::{as_string, as_strings};
use crate::numerics::Rational;
use crate::pcf::{
    arch_escape_sieve, certify_pcf, integrality_sieve, padic_escape_sieve, EscapeWitness, PcfVerdict, SieveReport,
    Stage,
};
use crate::poly::PolySpec;

pub use config::EnumerationConfig;
pub use family::{family_scan, Family, FamilyRow};
pub use output::{write_cubic_run, write_quadratic_run, RunFiles};

/// `4|A| <= 20` since `|A| <= 3^(3/2)`, and `8|B| <= 94` since
/// `|B| <= 3^(9/4)`.
pub const A_RANGE: std::ops::RangeInclusive<i64> = -20..=20;
pub const B_RANGE: std::ops::RangeInclusive<i64> = 0..=94;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub a: i64,
    pub b: i64,
}

impl Candidate {
    #[allow(non_snake_case)]
    pub fn A(&self) -> Rational {
        Rational::new(self.a.into(), 4.into())
    }

    #[allow(non_snake_case)]
    pub fn B(&self) -> Rational {
        Rational::new(self.b.into(), 8.into())
    }
}

/// `(a/4, b/8)` for `a` in `-20..=20`, `b` in `0..=94`; `a` ascending, then
/// `b` ascending.
pub fn cubic_candidate_grid() -> Vec<Candidate> {
    A_RANGE.flat_map(|a| B_RANGE.map(move |b| Candidate { a, b })).collect()
}

/// What happened to one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateRecord {
    pub a: i64,
    pub b: i64,
    #[serde(rename = "A", with = "as_string")]
    pub big_a: Rational,
    #[serde(rename = "B", with = "as_string")]
    pub big_b: Rational,
    /// The sieve that eliminated it, or `Survived`.
    pub stage: Stage,
    pub witness: Option<EscapeWitness>,
    /// Exact certification of sieve survivors.
    pub verdict: Option<PcfVerdict>,
    pub inconclusive: bool,
}

impl CandidateRecord {
    pub fn verdict_label(&self) -> &'static str {
        match &self.verdict {
            Some(v) => v.label(),
            None => "not_pcf",
        }
    }

    /// Re-checks the elimination, or the orbit certificate of a survivor.
    pub fn replay(&self) -> bool {
        let f = PolySpec::cubic(self.big_a.clone(), self.big_b.clone());
        let report = SieveReport {
            a: self.big_a.clone(),
            b: self.big_b.clone(),
            stage: self.stage,
            witness: self.witness.clone(),
            inconclusive: self.inconclusive,
        };
        if !report.replay() {
            return false;
        }
        match &self.verdict {
            Some(PcfVerdict::Pcf { orbits }) => orbits.iter().all(|o| o.verify(&f)),
            Some(PcfVerdict::NotPcf { witness }) => witness.replay(&f),
            Some(PcfVerdict::Undecided { .. }) => true,
            None => self.stage != Stage::Survived,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageCount {
    pub stage: String,
    pub eliminated: usize,
    pub survivors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicPcf {
    #[serde(rename = "A", with = "as_string")]
    pub a: Rational,
    #[serde(rename = "B", with = "as_string")]
    pub b: Rational,
    pub verdict: PcfVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnumerationResult {
    pub grid_size: usize,
    /// Running survivor counts after each stage, starting with the grid.
    pub stage_counts: Vec<StageCount>,
    pub records: Vec<CandidateRecord>,
    /// Certified PCF pairs including twins, sorted by `(A, B)`.
    pub pcf: Vec<CubicPcf>,
    /// Pairs (twins included) that no stage could decide.
    pub undecided: Vec<CubicPcf>,
    pub config: EnumerationConfig,
}

impl EnumerationResult {
    pub fn pairs(&self) -> Vec<(Rational, Rational)> {
        self.pcf.iter().map(|p| (p.a.clone(), p.b.clone())).collect()
    }

    pub fn survivors_after(&self, stage: &str) -> Option<usize> {
        self.stage_counts.iter().find(|s| s.stage == stage).map(|s| s.survivors)
    }
}

fn run_candidate(c: &Candidate, config: &EnumerationConfig) -> Result<CandidateRecord> {
    let (a, b) = (c.A(), c.B());
    let record = |report: SieveReport, verdict| CandidateRecord {
        a: c.a,
        b: c.b,
        big_a: a.clone(),
        big_b: b.clone(),
        stage: report.stage,
        witness: report.witness,
        verdict,
        inconclusive: report.inconclusive,
    };
    if let Err(place) = integrality_sieve(&a, &b) {
        let r = SieveReport {
            a: a.clone(),
            b: b.clone(),
            stage: Stage::Integrality { place },
            witness: None,
            inconclusive: false,
        };
        return Ok(record(r, None));
    }
    let sieve = config.sieve();
    let mut report = arch_escape_sieve(&a, &b, sieve.n_arch, sieve.precision, sieve.refinements);
    let mut inconclusive = report.inconclusive;
    if report.eliminated() {
        return Ok(record(report, None));
    }
    for &p in &config.primes {
        report = padic_escape_sieve(&a, &b, p, sieve.n_padic, sieve.max_bits);
        inconclusive |= report.inconclusive;
        if report.eliminated() {
            return Ok(record(report, None));
        }
    }
    report.inconclusive = inconclusive;
    let verdict = certify_pcf(&PolySpec::cubic(a.clone(), b.clone()), &config.budget())?;
    Ok(record(report, Some(verdict)))
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    // deep bignum recursion on large iterates wants more than the default stack
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .stack_size(64 << 20)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

fn stage_counts(records: &[CandidateRecord], config: &EnumerationConfig) -> Vec<StageCount> {
    let mut left = records.len();
    let mut out = vec![StageCount {
        stage: "grid".into(),
        eliminated: 0,
        survivors: left,
    }];
    let mut push = |name: String, pred: &dyn Fn(&Stage) -> bool| {
        let k = records.iter().filter(|r| pred(&r.stage)).count();
        left -= k;
        out.push(StageCount {
            stage: name,
            eliminated: k,
            survivors: left,
        });
    };
    push("integrality".into(), &|s| matches!(s, Stage::Integrality { .. }));
    push("arch".into(), &|s| matches!(s, Stage::ArchEscape { .. }));
    for &p in &config.primes {
        push(format!("padic{p}"), &move |s| matches!(s, Stage::PadicEscape { p: q, .. } if *q == p));
    }
    push("certify".into(), &|_| false);
    let certified_out = records
        .iter()
        .filter(|r| matches!(r.verdict, Some(PcfVerdict::NotPcf { .. })))
        .count();
    let last = out.last_mut().expect("nonempty");
    last.eliminated = certified_out;
    last.survivors -= certified_out;
    out
}

/// The full cubic search. Candidates run in parallel; records come back in
/// grid order regardless of scheduling.
pub fn enumerate_pcf_cubics(config: &EnumerationConfig) -> Result<EnumerationResult> {
    config.validate()?;
    let grid = cubic_candidate_grid();
    let records: Vec<CandidateRecord> = with_pool(config.workers, || {
        grid.par_iter().map(|c| run_candidate(c, config)).collect::<Result<Vec<_>>>()
    })??;

    let mut pcf = Vec::new();
    let mut undecided = Vec::new();
    let budget = config.budget();
    for r in &records {
        let Some(v) = &r.verdict else { continue };
        let mut pairs = vec![(r.big_a.clone(), r.big_b.clone(), v.clone())];
        if r.b != 0 {
            let twin = -r.big_b.clone();
            let tv = certify_pcf(&PolySpec::cubic(r.big_a.clone(), twin.clone()), &budget)?;
            pairs.push((r.big_a.clone(), twin, tv));
        }
        for (a, b, verdict) in pairs {
            let entry = CubicPcf { a, b, verdict };
            match entry.verdict {
                PcfVerdict::Pcf { .. } => pcf.push(entry),
                PcfVerdict::Undecided { .. } => undecided.push(entry),
                PcfVerdict::NotPcf { .. } => {}
            }
        }
    }
    pcf.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    undecided.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));

    if config.strict && !undecided.is_empty() {
        return Err(Error::Undecided {
            iterations: config.certify_iterations,
            partial: None,
        });
    }
    Ok(EnumerationResult {
        grid_size: grid.len(),
        stage_counts: stage_counts(&records, config),
        records,
        pcf,
        undecided,
        config: config.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticRecord {
    #[serde(with = "as_string")]
    pub c: Rational,
    pub verdict: PcfVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticResult {
    /// How the candidate list was obtained.
    pub grid_derivation: &'static str,
    pub records: Vec<QuadraticRecord>,
    #[serde(with = "as_strings")]
    pub pcf: Vec<Rational>,
    #[serde(with = "as_strings")]
    pub undecided: Vec<Rational>,
}

pub const QUADRATIC_GRID_DERIVATION: &str = "critical point 0, f(0) = c. If v_p(c) < 0 then |c|_p > 1 = C*_{f,p} \
     and 0 escapes p-adically, so c is an integer. If |c| > 2 then |f(c)| >= |c|^2 - |c| > |c| and the orbit \
     escapes. Hence c in {-2, -1, 0, 1, 2}; each is certified exactly.";

/// `z^2 + c` with `c` in `-2..=2`; each candidate is decided by exact
/// iteration.
pub fn enumerate_pcf_quadratics(config: &EnumerationConfig) -> Result<QuadraticResult> {
    config.validate()?;
    let budget = config.budget();
    let mut records = Vec::new();
    for c in -2i64..=2 {
        let c = Rational::from_integer(c.into());
        let verdict = certify_pcf(&PolySpec::quadratic(c.clone()), &budget)?;
        records.push(QuadraticRecord { c, verdict });
    }
    let pick = |label: &str| {
        let mut v: Vec<Rational> = records
            .iter()
            .filter(|r| r.verdict.label() == label)
            .map(|r| r.c.clone())
            .collect();
        v.sort();
        v
    };
    let (pcf, undecided) = (pick("pcf"), pick("undecided"));
    if config.strict && !undecided.is_empty() {
        return Err(Error::Undecided {
            iterations: config.certify_iterations,
            partial: None,
        });
    }
    Ok(QuadraticResult {
        grid_derivation: QUADRATIC_GRID_DERIVATION,
        records,
        pcf,
        undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    #[test]
    fn grid_shape() {
        let g = cubic_candidate_grid();
        assert_eq!(g.len(), 3895);
        assert!(g.contains(&Candidate { a: -12, b: 0 }));
        assert!(g.iter().all(|c| c.a.abs() <= 20 && (0..=94).contains(&c.b)));
        assert_eq!(g[0], Candidate { a: -20, b: 0 });
        assert_eq!(g[1], Candidate { a: -20, b: 1 });
        // the bounds are the floors of 4 * 3^(3/2) and 8 * 3^(9/4)
        assert_eq!((4.0 * 3f64.powf(1.5)).floor() as i64, 20);
        assert_eq!((8.0 * 3f64.powf(2.25)).floor() as i64, 94);
    }

    #[test]
    fn quadratics() {
        let r = enumerate_pcf_quadratics(&EnumerationConfig::default()).unwrap();
        assert_eq!(r.pcf, vec![int(-2), int(-1), int(0)]);
        let one = r.records.iter().find(|x| x.c == int(1)).unwrap();
        let PcfVerdict::NotPcf { witness } = &one.verdict else {
            panic!()
        };
        assert_eq!(witness.place, crate::heights::Place::Arch);
    }
}
