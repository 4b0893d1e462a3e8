//! Exit criteria. Each prints one PASS/FAIL line; the test fails if any
//! criterion fails.

mod common;

#[allow(dead_code)]
#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::sync::Arc;
use std::time::{Duration, Instant};

use geo_reverse_core::benchmark::{self, SuiteConfig};
use geo_reverse_core::fixtures::fixture_huanuco;
use geo_reverse_core::synthetic::{self, Shape};
use geo_reverse_core::{normalize, reverse, CascadeSession, Gazetteer, MatchClass, SearchIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SYNTHETIC_SEED: u64 = 2016;
const SUITE_SEED: u64 = 7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn desk_scale() -> (Arc<Gazetteer>, SearchIndex) {
    let g = Arc::new(synthetic::generate(&Shape::desk_scale(), SYNTHETIC_SEED).unwrap());
    let idx = SearchIndex::build_leaf(g.clone());
    (g, idx)
}

fn within(started: Instant, budget: Duration, detail: String) -> Outcome {
    let elapsed = started.elapsed();
    if elapsed < budget {
        Ok(format!("{detail} in {elapsed:.2?}"))
    } else {
        Err(format!(
            "{detail} but took {elapsed:.2?} (budget {budget:?})"
        ))
    }
}

/// Cascade walk driven only by the options each step offers.
fn walk_by_options<'g>(g: &'g Gazetteer, leaf: &str) -> CascadeSession<'g> {
    let mut session = CascadeSession::start(g).unwrap();
    while !session.is_complete() {
        let choice = session
            .current_options()
            .iter()
            .find(|n| leaf.starts_with(&n.code))
            .expect("ancestor offered")
            .code
            .clone();
        session = session.select(&choice).unwrap();
    }
    session
}

fn path_equivalence() -> Outcome {
    let started = Instant::now();
    let (g, _) = desk_scale();
    let leaves: Vec<String> = g.leaves().map(|n| n.code.clone()).collect();
    if leaves.len() != 1800 {
        return Err(format!("expected 1800 leaves, got {}", leaves.len()));
    }
    let mismatched = leaves
        .iter()
        .filter(|leaf| {
            let walked = walk_by_options(&g, leaf).selected_path().unwrap();
            reverse::resolve(&g, leaf).unwrap() != walked
        })
        .count();
    if mismatched > 0 {
        return Err(format!("{mismatched}/1800 leaves differ"));
    }
    within(
        started,
        Duration::from_secs(5),
        "1800/1800 leaves identical".into(),
    )
}

fn class_code(c: MatchClass) -> u8 {
    match c {
        MatchClass::Exact => 0,
        MatchClass::Prefix => 1,
        MatchClass::Substring => 2,
    }
}

fn garbage(rng: &mut ChaCha8Rng) -> String {
    const ALPHABET: &[char] = &[
        'q', 'x', 'z', 'w', 'k', 'j', '7', '#', '-', ' ', 'ß', 'Ω', 'é', 'Ñ', '漢', 'a', 'e',
    ];
    let len = rng.gen_range(1..=8);
    (0..len)
        .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
        .collect()
}

fn search_oracle() -> Outcome {
    let started = Instant::now();
    let (g, idx) = desk_scale();
    let names: Vec<String> = g.leaves().map(|n| n.name.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut queries = Vec::with_capacity(500);
    for i in 0..450 {
        let chars: Vec<char> = names[rng.gen_range(0..names.len())].chars().collect();
        let start = if i % 2 == 0 {
            0
        } else {
            rng.gen_range(0..chars.len())
        };
        let end = rng.gen_range(start + 1..=chars.len());
        queries.push(chars[start..end].iter().collect::<String>());
    }
    queries.extend((0..50).map(|_| garbage(&mut rng)));

    let scan = oracle::LinearScan::new(&g, g.depth());
    let mut mismatches = Vec::new();
    for q in &queries {
        if normalize(q).is_empty() {
            if idx.match_query(q, 10).is_ok() {
                mismatches.push(format!("{q:?}: accepted a blank query"));
            }
            continue;
        }
        for limit in [10, idx.len()] {
            let got: Vec<(String, u8)> = idx
                .match_query(q, limit)
                .unwrap()
                .iter()
                .map(|c| (c.node.code.clone(), class_code(c.match_class)))
                .collect();
            if got != scan.query(q, limit) {
                mismatches.push(format!("{q:?} limit {limit}"));
            }
        }
    }
    if !mismatches.is_empty() {
        return Err(format!(
            "{} mismatches, first: {}",
            mismatches.len(),
            mismatches[0]
        ));
    }
    within(
        started,
        Duration::from_secs(5),
        format!("{} queries match the linear scan", queries.len()),
    )
}

fn published_arithmetic() -> Outcome {
    let c = benchmark::compare(91, 37).map_err(|e| e.to_string())?;
    if c.saved == 54 && c.reduction_pct == 59 {
        Ok(format!(
            "compare(91, 37): saved={} reduction={}%",
            c.saved, c.reduction_pct
        ))
    } else {
        Err(format!("saved={} reduction={}", c.saved, c.reduction_pct))
    }
}

fn relative_latency() -> Outcome {
    let started = Instant::now();
    let (g, idx) = desk_scale();
    let config = SuiteConfig {
        seed: SUITE_SEED,
        ..SuiteConfig::default()
    };
    assert_eq!((config.warmup, config.trials), (100, 1000));
    let report = benchmark::run_suite(&g, &idx, &config).map_err(|e| e.to_string())?;
    let table = report.render_table();
    println!("{table}");
    let cascade = report.cascade.total.median_nanos;
    let reverse = report.reverse.total.median_nanos;
    let printed = format!("reduction={}%", report.comparison.reduction_pct);
    if reverse >= cascade {
        return Err(format!("median reverse {reverse}ns >= cascade {cascade}ns"));
    }
    if report.comparison.reduction_pct <= 0 || !table.contains(&printed) {
        return Err(format!("reduction not strictly positive: {printed}"));
    }
    if !table.contains("reference (published figures, not measured): cascade=91ms reverse=37ms saved=54ms reduction=59%") {
        return Err("reference row missing".into());
    }
    within(
        started,
        Duration::from_secs(60),
        format!("median cascade {cascade}ns, reverse {reverse}ns, {printed}"),
    )
}

fn structural_cost() -> Outcome {
    let (g, idx) = desk_scale();
    let scan = oracle::LinearScan::new(&g, 3);
    let mut bad = Vec::new();
    for leaf in g.leaves() {
        let session = walk_by_options(&g, &leaf.code);
        if session.query_count() != 3 {
            bad.push(format!(
                "{} cascade issued {}",
                leaf.code,
                session.query_count()
            ));
        }
        // Position of the target among the suggestions for its own name,
        // taken from the oracle so no extra engine call is made.
        let ranked = scan.query(&leaf.name, usize::MAX);
        let pick = ranked
            .iter()
            .position(|(code, _)| *code == leaf.code)
            .unwrap();
        let entry = reverse::complete_entry(&g, &idx, &leaf.name, pick, pick + 1).unwrap();
        let resolved = entry.resolved.as_ref().unwrap();
        if entry.lookup_count != 2 || resolved.leaf().unwrap().code != leaf.code {
            bad.push(format!(
                "{} reverse issued {}",
                leaf.code, entry.lookup_count
            ));
        }
    }
    if bad.is_empty() {
        Ok("1800 leaves: cascade 3 children queries, reverse 2 engine calls".into())
    } else {
        Err(format!("{} violations, first: {}", bad.len(), bad[0]))
    }
}

fn random_text(rng: &mut ChaCha8Rng) -> String {
    const SPICE: &[char] = &[
        'á', 'é', 'í', 'ó', 'ú', 'ü', 'ñ', 'Á', 'É', 'Í', 'Ó', 'Ú', 'Ü', 'Ñ', ' ', ' ', '\t', '\n',
        '\u{3000}', 'İ', 'ẞ', 'Σ', 'ǅ', 'Å',
    ];
    let len = rng.gen_range(0..32);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => SPICE[rng.gen_range(0..SPICE.len())],
            1 => rng.gen_range('A'..='z'),
            _ => rng.gen::<char>(),
        })
        .collect()
}

fn normalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let failures = (0..10_000)
        .map(|_| random_text(&mut rng))
        .filter(|s| {
            let once = normalize(s);
            normalize(&once) != once
        })
        .count();
    if failures > 0 {
        return Err(format!("{failures}/10000 strings not idempotent"));
    }
    let g = Arc::new(fixture_huanuco());
    let idx = SearchIndex::build_leaf(g);
    let accented = reverse::suggest(&idx, "huánuco", 10).map_err(|e| e.to_string())?;
    let plain = reverse::suggest(&idx, "huanuco", 10).map_err(|e| e.to_string())?;
    if accented.is_empty() || accented != plain {
        return Err("suggest(\"huánuco\") differs from suggest(\"huanuco\")".into());
    }
    Ok(format!(
        "10000/10000 idempotent; huánuco == huanuco ({} candidates)",
        accented.len()
    ))
}

fn api_contract() -> Outcome {
    let runtime = tokio::runtime::Builder::new_current_thread()
        .build()
        .unwrap();
    let failures = runtime.block_on(common::check_golden());
    if failures.is_empty() {
        Ok(format!(
            "{} endpoint cases byte-identical to golden files",
            common::GOLDEN_CASES.len()
        ))
    } else {
        Err(failures.join("; "))
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("path-equivalence oracle", path_equivalence),
        ("search oracle equivalence", search_oracle),
        ("published savings arithmetic", published_arithmetic),
        ("relative latency at desk scale", relative_latency),
        ("structural-cost invariant", structural_cost),
        ("normalization properties", normalization),
        ("API contract", api_contract),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
