//! Bottom-up entry: type the leaf name, pick a suggestion, and every
//! enclosing level comes back filled in.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gazetteer::{Gazetteer, ResolvedLocation};
use crate::search_index::{Candidate, SearchIndex};

/// Leaf-level suggestions for `query`. Each candidate carries its full
/// ancestor path so homonyms can be told apart.
pub fn suggest(index: &SearchIndex, query: &str, limit: usize) -> Result<Vec<Candidate>> {
    index.match_query(query, limit)
}

/// Populate every level above the leaf `code`.
pub fn resolve(gazetteer: &Gazetteer, code: &str) -> Result<ResolvedLocation> {
    let node = gazetteer.node(code)?;
    if !gazetteer.is_leaf(node) {
        return Err(Error::NotLeaf(code.to_string()));
    }
    gazetteer.resolved_path(code)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReverseEntryResult {
    pub query: String,
    pub candidates: Vec<Candidate>,
    pub picked: Option<usize>,
    pub resolved: Option<ResolvedLocation>,
    /// Engine calls issued (suggest + resolve).
    pub lookup_count: usize,
}

/// One complete entry: suggest for `query`, then resolve the candidate at
/// position `pick`.
pub fn complete_entry(
    gazetteer: &Gazetteer,
    index: &SearchIndex,
    query: &str,
    pick: usize,
    limit: usize,
) -> Result<ReverseEntryResult> {
    let mut lookup_count = 0;

    let candidates = suggest(index, query, limit)?;
    lookup_count += 1;
    if candidates.is_empty() {
        return Err(Error::NoMatches);
    }
    let chosen = candidates.get(pick).ok_or(Error::PickOutOfRange {
        pick,
        count: candidates.len(),
    })?;

    let resolved = resolve(gazetteer, &chosen.node.code)?;
    lookup_count += 1;

    Ok(ReverseEntryResult {
        query: query.to_string(),
        candidates,
        picked: Some(pick),
        resolved: Some(resolved),
        lookup_count,
    })
}
