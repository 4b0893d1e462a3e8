//! Paired latency comparison of the cascade and reverse strategies.
//!
//! Only engine-side retrieval work is timed: the children queries that
//! open each cascade level, and the suggest/resolve calls of a reverse
//! entry. Durations are kept in nanoseconds and reported in microseconds
//! and milliseconds.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cascade::CascadeSession;
use crate::error::{Error, Result};
use crate::gazetteer::{Gazetteer, LocationNode};
use crate::reverse;
use crate::search_index::{normalize, SearchIndex, DEFAULT_LIMIT};

pub const DEFAULT_WARMUP: usize = 100;
pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_PREFIX_LEN: usize = 3;

/// Published totals of the original comparison, in milliseconds. Printed
/// next to measured output as a labeled reference, never as a measurement.
pub const REFERENCE_CASCADE_MS: i64 = 91;
pub const REFERENCE_REVERSE_MS: i64 = 37;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Cascade,
    Reverse,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Cascade => "cascade",
            Strategy::Reverse => "reverse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub label: String,
    pub nanos: u64,
}

/// Timed steps of one trial. `total_nanos` is the exact sum of the steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TimingSample {
    pub strategy: Strategy,
    pub target: String,
    pub steps: Vec<Step>,
    pub total_nanos: u64,
}

impl TimingSample {
    fn new(strategy: Strategy, target: &str, steps: Vec<Step>) -> Self {
        let total_nanos = steps.iter().map(|s| s.nanos).sum();
        TimingSample {
            strategy,
            target: target.to_string(),
            steps,
            total_nanos,
        }
    }

    pub fn total_micros(&self) -> f64 {
        self.total_nanos as f64 / 1_000.0
    }
}

fn nanos(d: Duration) -> u64 {
    u64::try_from(d.as_nanos()).unwrap_or(u64::MAX)
}

fn require_leaf<'g>(gazetteer: &'g Gazetteer, target: &str) -> Result<&'g LocationNode> {
    let node = gazetteer.node(target)?;
    if !gazetteer.is_leaf(node) {
        return Err(Error::NotLeaf(target.to_string()));
    }
    Ok(node)
}

/// Walk the cascade to `target`, timing the children query that opens
/// each level. The final pick issues no query and is not timed.
pub fn run_cascade_trial(gazetteer: &Gazetteer, target: &str) -> Result<TimingSample> {
    require_leaf(gazetteer, target)?;
    let chain = gazetteer.ancestors(target)?;
    let levels = gazetteer.levels();
    let mut steps = Vec::with_capacity(levels.len());

    let started = Instant::now();
    let mut session = black_box(CascadeSession::start(gazetteer)?);
    steps.push(Step {
        label: levels[0].name.clone(),
        nanos: nanos(started.elapsed()),
    });
    for (k, node) in chain.iter().enumerate() {
        let opens_next = k + 1 < levels.len();
        let started = Instant::now();
        session = black_box(session.select(&node.code)?);
        if opens_next {
            steps.push(Step {
                label: levels[k + 1].name.clone(),
                nanos: nanos(started.elapsed()),
            });
        }
    }
    debug_assert!(session.is_complete());
    Ok(TimingSample::new(Strategy::Cascade, target, steps))
}

/// Type the first `typed_prefix_len` characters of the target's
/// normalized name, then resolve the target from the suggestions.
pub fn run_reverse_trial(
    gazetteer: &Gazetteer,
    index: &SearchIndex,
    target: &str,
    typed_prefix_len: usize,
    limit: usize,
) -> Result<TimingSample> {
    let node = require_leaf(gazetteer, target)?;
    let key = normalize(&node.name);
    let max = key.chars().count();
    if typed_prefix_len == 0 || typed_prefix_len > max {
        return Err(Error::InvalidPrefixLength {
            len: typed_prefix_len,
            max,
        });
    }
    let typed: String = key.chars().take(typed_prefix_len).collect();

    let started = Instant::now();
    let candidates = black_box(reverse::suggest(index, &typed, limit)?);
    let suggest_nanos = nanos(started.elapsed());

    let picked = candidates
        .iter()
        .find(|c| c.node.code == target)
        .ok_or_else(|| Error::TargetNotSuggested(target.to_string()))?;

    let started = Instant::now();
    black_box(reverse::resolve(gazetteer, &picked.node.code)?);
    let resolve_nanos = nanos(started.elapsed());

    Ok(TimingSample::new(
        Strategy::Reverse,
        target,
        vec![
            Step {
                label: "suggest".into(),
                nanos: suggest_nanos,
            },
            Step {
                label: "resolve".into(),
                nanos: resolve_nanos,
            },
        ],
    ))
}

/// Saved time and percent reduction of `candidate` relative to `baseline`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComparisonResult {
    pub baseline_total: i64,
    pub candidate_total: i64,
    pub saved: i64,
    /// `100 * saved / baseline`, rounded half-up to an integer.
    pub reduction_pct: i64,
}

impl ComparisonResult {
    /// Unrounded percentage.
    pub fn reduction_exact(&self) -> f64 {
        100.0 * self.saved as f64 / self.baseline_total as f64
    }
}

/// Exact integer comparison; both totals share one time unit.
pub fn compare(baseline_total: i64, candidate_total: i64) -> Result<ComparisonResult> {
    if baseline_total <= 0 {
        return Err(Error::ZeroBaseline);
    }
    let saved = baseline_total - candidate_total;
    // floor(100 * saved / baseline + 1/2) in integers.
    let b = i128::from(baseline_total);
    let reduction = (200 * i128::from(saved) + b).div_euclid(2 * b);
    Ok(ComparisonResult {
        baseline_total,
        candidate_total,
        saved,
        reduction_pct: reduction as i64,
    })
}

/// Nearest-rank percentile of an ascending slice.
pub fn percentile(sorted: &[u64], pct: u32) -> u64 {
    assert!(!sorted.is_empty(), "percentile of an empty sample");
    let n = sorted.len();
    let rank = (pct as usize * n).div_ceil(100).max(1);
    sorted[rank.min(n) - 1]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepStats {
    pub label: String,
    pub median_nanos: u64,
    pub p95_nanos: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyStats {
    pub strategy: Strategy,
    pub steps: Vec<StepStats>,
    pub total: StepStats,
}

impl StrategyStats {
    pub fn from_samples(strategy: Strategy, samples: &[TimingSample]) -> Self {
        let stats = |label: String, mut values: Vec<u64>| {
            values.sort_unstable();
            StepStats {
                label,
                median_nanos: percentile(&values, 50),
                p95_nanos: percentile(&values, 95),
            }
        };
        let first = &samples[0];
        let steps = (0..first.steps.len())
            .map(|i| {
                let values = samples.iter().map(|s| s.steps[i].nanos).collect();
                stats(first.steps[i].label.clone(), values)
            })
            .collect();
        let total = stats(
            "TOTAL".into(),
            samples.iter().map(|s| s.total_nanos).collect(),
        );
        StrategyStats {
            strategy,
            steps,
            total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub warmup: usize,
    pub seed: u64,
    pub limit: usize,
    pub typed_prefix_len: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: DEFAULT_TRIALS,
            warmup: DEFAULT_WARMUP,
            seed: 0,
            limit: DEFAULT_LIMIT,
            typed_prefix_len: DEFAULT_PREFIX_LEN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCount {
    pub ordinal: usize,
    pub name: String,
    pub nodes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub level_counts: Vec<LevelCount>,
    pub trials: usize,
    pub warmup: usize,
    pub seed: u64,
    pub limit: usize,
    pub typed_prefix_len: usize,
    /// Leaf targeted by each retained trial, shared by both strategies.
    pub targets: Vec<String>,
    pub cascade_samples: Vec<TimingSample>,
    pub reverse_samples: Vec<TimingSample>,
    pub cascade: StrategyStats,
    pub reverse: StrategyStats,
    /// Median totals in nanoseconds, cascade as baseline.
    pub comparison: ComparisonResult,
}

/// Leaves for `count` draws, uniform with replacement.
pub fn sample_targets(gazetteer: &Gazetteer, count: usize, seed: u64) -> Vec<String> {
    let leaves: Vec<&LocationNode> = gazetteer.leaves().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| leaves.choose(&mut rng).expect("non-empty").code.clone())
        .collect()
}

/// Reverse trial that keeps "typing" one more character whenever the
/// target is not yet among the suggestions.
fn reverse_trial_extending(
    gazetteer: &Gazetteer,
    index: &SearchIndex,
    target: &str,
    config: &SuiteConfig,
) -> Result<TimingSample> {
    let max = normalize(&gazetteer.node(target)?.name).chars().count();
    let mut typed = config.typed_prefix_len.min(max);
    loop {
        match run_reverse_trial(gazetteer, index, target, typed, config.limit) {
            Err(Error::TargetNotSuggested(_)) if typed < max => typed += 1,
            other => return other,
        }
    }
}

/// Paired suite: both strategies run against the same seeded sequence of
/// leaves, alternating which goes first. The first `warmup` pairs are
/// discarded. Runs on the calling thread only.
pub fn run_suite(
    gazetteer: &Gazetteer,
    index: &SearchIndex,
    config: &SuiteConfig,
) -> Result<BenchmarkReport> {
    if config.trials == 0 {
        return Err(Error::InvalidCount("trials must be at least 1"));
    }
    if config.limit == 0 {
        return Err(Error::InvalidLimit);
    }
    if config.typed_prefix_len == 0 {
        return Err(Error::InvalidCount(
            "typed prefix length must be at least 1",
        ));
    }
    if gazetteer.leaves().next().is_none() {
        return Err(Error::EmptyGazetteer);
    }

    let all = sample_targets(gazetteer, config.warmup + config.trials, config.seed);
    let mut cascade_samples = Vec::with_capacity(config.trials);
    let mut reverse_samples = Vec::with_capacity(config.trials);
    for (i, target) in all.iter().enumerate() {
        let (cascade, reverse) = if i % 2 == 0 {
            let c = run_cascade_trial(gazetteer, target)?;
            (
                c,
                reverse_trial_extending(gazetteer, index, target, config)?,
            )
        } else {
            let r = reverse_trial_extending(gazetteer, index, target, config)?;
            (run_cascade_trial(gazetteer, target)?, r)
        };
        if i >= config.warmup {
            cascade_samples.push(cascade);
            reverse_samples.push(reverse);
        }
    }

    let cascade = StrategyStats::from_samples(Strategy::Cascade, &cascade_samples);
    let reverse = StrategyStats::from_samples(Strategy::Reverse, &reverse_samples);
    // Guard against a zero-duration median on coarse clocks.
    let baseline = (cascade.total.median_nanos as i64).max(1);
    let comparison = compare(baseline, reverse.total.median_nanos as i64)?;

    Ok(BenchmarkReport {
        level_counts: gazetteer
            .level_counts()
            .into_iter()
            .map(|(level, nodes)| LevelCount {
                ordinal: level.ordinal,
                name: level.name,
                nodes,
            })
            .collect(),
        trials: config.trials,
        warmup: config.warmup,
        seed: config.seed,
        limit: config.limit,
        typed_prefix_len: config.typed_prefix_len,
        targets: all[config.warmup..].to_vec(),
        cascade_samples,
        reverse_samples,
        cascade,
        reverse,
        comparison,
    })
}

fn us(nanos: u64) -> f64 {
    nanos as f64 / 1_000.0
}

fn ms(nanos: i64) -> f64 {
    nanos as f64 / 1_000_000.0
}

impl BenchmarkReport {
    /// `strategy,step,median_us,p95_us`, one row per step plus a TOTAL row
    /// per strategy.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("strategy,step,median_us,p95_us\n");
        for stats in [&self.cascade, &self.reverse] {
            for step in stats.steps.iter().chain(std::iter::once(&stats.total)) {
                let _ = writeln!(
                    out,
                    "{},{},{:.3},{:.3}",
                    stats.strategy.as_str(),
                    step.label,
                    us(step.median_nanos),
                    us(step.p95_nanos)
                );
            }
        }
        out
    }

    /// Per-level table for each strategy, the comparison line, and the
    /// published reference row.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let counts: Vec<String> = self
            .level_counts
            .iter()
            .map(|c| format!("{}={}", c.name, c.nodes))
            .collect();
        let _ = writeln!(out, "gazetteer: {}", counts.join(" "));
        let _ = writeln!(
            out,
            "trials={} warmup={} seed={} limit={} typed_prefix_len={}",
            self.trials, self.warmup, self.seed, self.limit, self.typed_prefix_len
        );
        for (title, stats) in [
            ("Cascade (top-down)", &self.cascade),
            ("Reverse (bottom-up)", &self.reverse),
        ] {
            let _ = writeln!(out);
            let _ = writeln!(out, "{title}");
            let _ = writeln!(
                out,
                "  {:<10} {:>14} {:>14}",
                "step", "median (ms)", "p95 (ms)"
            );
            for step in stats.steps.iter().chain(std::iter::once(&stats.total)) {
                let _ = writeln!(
                    out,
                    "  {:<10} {:>14.6} {:>14.6}",
                    step.label,
                    ms(step.median_nanos as i64),
                    ms(step.p95_nanos as i64)
                );
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "saved={:.6} reduction={}%",
            ms(self.comparison.saved),
            self.comparison.reduction_pct
        );
        let reference =
            compare(REFERENCE_CASCADE_MS, REFERENCE_REVERSE_MS).expect("positive baseline");
        let _ = writeln!(
            out,
            "reference (published figures, not measured): cascade={}ms reverse={}ms saved={}ms reduction={}%",
            REFERENCE_CASCADE_MS, REFERENCE_REVERSE_MS, reference.saved, reference.reduction_pct
        );
        out
    }
}
