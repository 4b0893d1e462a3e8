//! Normalized-name index over one gazetteer level.
//!
//! Names are reduced with [`normalize`] and kept sorted, so exact and
//! prefix hits are one contiguous range found by binary search. Substring
//! hits come from a suffix array over the non-initial suffixes of every
//! key and are only consulted when the prefix range cannot fill the limit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gazetteer::{Gazetteer, Level, LocationNode, ResolvedLocation};

pub const DEFAULT_LIMIT: usize = 10;

/// Lowercase, diacritic-folded, whitespace-collapsed text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalizedKey(String);

impl NormalizedKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl Deref for NormalizedKey {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NormalizedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

// Applied after lowercasing, so uppercase forms are covered too.
fn fold(ch: char) -> char {
    match ch {
        'á' => 'a',
        'é' => 'e',
        'í' => 'i',
        'ó' => 'o',
        'ú' | 'ü' => 'u',
        'ñ' => 'n',
        other => other,
    }
}

/// Lowercase, fold `á é í ó ú ü ñ` to ASCII, collapse whitespace runs to a
/// single space and trim.
pub fn normalize(text: &str) -> NormalizedKey {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for ch in text.chars().flat_map(char::to_lowercase) {
        if ch.is_whitespace() {
            pending_space = !out.is_empty();
            continue;
        }
        if pending_space {
            out.push(' ');
            pending_space = false;
        }
        out.push(fold(ch));
    }
    NormalizedKey(out)
}

/// How a candidate's normalized name relates to the normalized query.
/// Declaration order is ranking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchClass {
    Exact,
    Prefix,
    Substring,
}

impl MatchClass {
    /// Classify `key` against `query`, both already normalized.
    pub fn of(key: &str, query: &str) -> Option<MatchClass> {
        if key == query {
            Some(MatchClass::Exact)
        } else if key.starts_with(query) {
            Some(MatchClass::Prefix)
        } else if key.contains(query) {
            Some(MatchClass::Substring)
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MatchClass::Exact => "exact",
            MatchClass::Prefix => "prefix",
            MatchClass::Substring => "substring",
        }
    }
}

impl fmt::Display for MatchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One ranked suggestion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub node: LocationNode,
    pub path: ResolvedLocation,
    pub match_class: MatchClass,
    /// Zero-based position in the result list.
    pub rank: usize,
}

#[derive(Debug, Clone, Copy)]
struct Suffix {
    key: u32,
    offset: u32,
}

#[derive(Debug, Clone)]
struct Entry {
    node: LocationNode,
    path: ResolvedLocation,
}

#[derive(Debug, Clone)]
pub struct SearchIndex {
    gazetteer: Arc<Gazetteer>,
    level: Level,
    /// Distinct normalized names, ascending.
    keys: Vec<NormalizedKey>,
    /// Nodes per key in code order, with their ancestor paths.
    nodes: Vec<Vec<Entry>>,
    /// Suffixes starting after the first character of each key, sorted by
    /// suffix text.
    suffixes: Vec<Suffix>,
}

impl SearchIndex {
    /// Index every node at `ordinal`. An ordinal with no nodes gives an
    /// empty index; an ordinal outside the hierarchy is an error.
    pub fn build(gazetteer: Arc<Gazetteer>, ordinal: usize) -> Result<Self> {
        let level = gazetteer
            .level(ordinal)
            .cloned()
            .ok_or_else(|| Error::InvalidLevels(format!("no level with ordinal {ordinal}")))?;

        let mut grouped: BTreeMap<NormalizedKey, Vec<Entry>> = BTreeMap::new();
        for node in gazetteer.nodes_at(ordinal) {
            // Nodes iterate in code order, so each list is already sorted.
            let path = gazetteer.resolved_path(&node.code)?;
            grouped
                .entry(normalize(&node.name))
                .or_default()
                .push(Entry {
                    node: node.clone(),
                    path,
                });
        }
        let (keys, nodes): (Vec<_>, Vec<_>) = grouped.into_iter().unzip();

        let mut suffixes: Vec<Suffix> = keys
            .iter()
            .enumerate()
            .flat_map(|(key, text)| {
                text.char_indices().skip(1).map(move |(offset, _)| Suffix {
                    key: key as u32,
                    offset: offset as u32,
                })
            })
            .collect();
        suffixes.sort_unstable_by(|a, b| {
            suffix_text(&keys, *a)
                .cmp(suffix_text(&keys, *b))
                .then(a.key.cmp(&b.key))
                .then(a.offset.cmp(&b.offset))
        });

        Ok(SearchIndex {
            gazetteer,
            level,
            keys,
            nodes,
            suffixes,
        })
    }

    /// Index the leaf level.
    pub fn build_leaf(gazetteer: Arc<Gazetteer>) -> Self {
        let depth = gazetteer.depth();
        Self::build(gazetteer, depth).expect("leaf level exists")
    }

    pub fn gazetteer(&self) -> &Arc<Gazetteer> {
        &self.gazetteer
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    /// Number of indexed nodes.
    pub fn len(&self) -> usize {
        self.nodes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Distinct keys in ascending order with their codes.
    pub fn entries(&self) -> impl Iterator<Item = (&NormalizedKey, Vec<&str>)> {
        self.keys
            .iter()
            .zip(&self.nodes)
            .map(|(key, entries)| (key, entries.iter().map(|e| e.node.code.as_str()).collect()))
    }

    /// Candidates matching `query` as exact, prefix or substring, ordered
    /// by (class, normalized name, code) and truncated to `limit`.
    pub fn match_query(&self, query: &str, limit: usize) -> Result<Vec<Candidate>> {
        if limit == 0 {
            return Err(Error::InvalidLimit);
        }
        let query = normalize(query);
        if query.is_empty() {
            return Err(Error::QueryTooShort);
        }

        let q = query.as_str();

        // Keys starting with the query form one sorted run; an exact hit
        // can only be its first element.
        let lo = self.keys.partition_point(|k| k.as_str() < q);
        let hi = lo + self.keys[lo..].partition_point(|k| k.starts_with(q));
        let mut hits: Vec<(MatchClass, usize)> = (lo..hi)
            .map(|key| {
                let class = if self.keys[key].len() == q.len() {
                    MatchClass::Exact
                } else {
                    MatchClass::Prefix
                };
                (class, key)
            })
            .collect();

        let prefix_nodes: usize = hits.iter().map(|&(_, key)| self.nodes[key].len()).sum();
        if prefix_nodes < limit {
            let start = self
                .suffixes
                .partition_point(|s| suffix_text(&self.keys, *s) < q);
            let mut inner: Vec<usize> = self.suffixes[start..]
                .iter()
                .take_while(|s| suffix_text(&self.keys, **s).starts_with(q))
                .map(|s| s.key as usize)
                .filter(|key| !(lo..hi).contains(key))
                .collect();
            inner.sort_unstable();
            inner.dedup();
            hits.extend(inner.into_iter().map(|key| (MatchClass::Substring, key)));
        }

        let candidates = hits
            .into_iter()
            .flat_map(|(class, key)| self.nodes[key].iter().map(move |entry| (class, entry)))
            .take(limit)
            .enumerate()
            .map(|(rank, (match_class, entry))| Candidate {
                node: entry.node.clone(),
                path: entry.path.clone(),
                match_class,
                rank,
            })
            .collect();
        Ok(candidates)
    }
}

fn suffix_text(keys: &[NormalizedKey], suffix: Suffix) -> &str {
    &keys[suffix.key as usize][suffix.offset as usize..]
}
