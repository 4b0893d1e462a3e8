//! Seeded generator for full-depth gazetteers of arbitrary shape.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gazetteer::{Gazetteer, LoadOptions};

const SYLLABLES: &[&str] = &[
    "pa", "ma", "hua", "chu", "ca", "lla", "to", "ri", "que", "ta", "ya", "co", "ba", "mi", "lo",
    "qui", "pu", "ra", "sa", "ti", "cha", "nu", "gua", "ya", "mar", "pam", "cu", "so", "ña", "ná",
    "bé", "tí", "ró", "cú", "lü",
];

const PREFIXES: &[&str] = &["San ", "Santa ", "Alto ", "Bajo ", "Nueva ", "La ", "El "];

/// Shape of a generated hierarchy: fan-out per level, outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub fanout: Vec<usize>,
}

impl Shape {
    /// 25 regions x 8 provinces x 9 districts: 1,800 leaves.
    pub fn desk_scale() -> Self {
        Shape {
            fanout: vec![25, 8, 9],
        }
    }

    pub fn leaves(&self) -> usize {
        self.fanout.iter().product()
    }
}

fn place_name(rng: &mut ChaCha8Rng) -> String {
    let syllables = rng.gen_range(2..=4);
    let mut word: String = (0..syllables)
        .map(|_| *SYLLABLES.choose(rng).expect("non-empty"))
        .collect();
    if let Some(first) = word.chars().next() {
        let upper: String = first.to_uppercase().collect();
        word.replace_range(..first.len_utf8(), &upper);
    }
    if rng.gen_ratio(1, 6) {
        format!("{}{word}", PREFIXES.choose(rng).expect("non-empty"))
    } else {
        word
    }
}

/// `(code, name)` rows for `shape`. Fan-outs above 99 cannot be encoded in
/// two digits and are clamped.
pub fn rows(shape: &Shape, seed: u64) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut frontier = vec![String::new()];
    for &fanout in &shape.fanout {
        let mut next = Vec::with_capacity(frontier.len() * fanout);
        for parent in &frontier {
            for i in 1..=fanout.min(99) {
                let code = format!("{parent}{i:02}");
                out.push((code.clone(), place_name(&mut rng)));
                next.push(code);
            }
        }
        frontier = next;
    }
    out
}

pub fn generate(shape: &Shape, seed: u64) -> Result<Gazetteer> {
    Gazetteer::load_with(
        rows(shape, seed),
        &LoadOptions::with_depth(shape.fanout.len()),
    )
}
