//! Validated, immutable hierarchy of administrative units keyed by
//! Ubigeo-style codes (two digits per level).

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Digits contributed by each level to a node's code.
pub const DIGITS_PER_LEVEL: usize = 2;

pub const DEFAULT_DEPTH: usize = 3;

const DEFAULT_LEVEL_NAMES: [&str; 3] = ["region", "province", "district"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Level {
    pub ordinal: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocationNode {
    pub code: String,
    pub name: String,
    /// 1 for the outermost level, `depth` for leaves.
    pub ordinal: usize,
    pub parent_code: Option<String>,
}

impl LocationNode {
    pub fn is_root(&self) -> bool {
        self.parent_code.is_none()
    }
}

/// One `(code, name)` pair of a [`ResolvedLocation`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathEntry {
    pub level: usize,
    pub code: String,
    pub name: String,
}

/// A fully populated location: one entry per level from the root down,
/// each code a prefix of the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResolvedLocation {
    pub levels: Vec<PathEntry>,
}

impl ResolvedLocation {
    pub fn leaf(&self) -> Option<&PathEntry> {
        self.levels.last()
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.levels.iter().map(|e| e.code.as_str())
    }

    /// True when entry `k` sits at ordinal `k + 1` and extends the code of
    /// entry `k - 1` by exactly one level.
    pub fn is_prefix_chain(&self) -> bool {
        self.levels.iter().enumerate().all(|(k, entry)| {
            entry.level == k + 1
                && entry.code.len() == DIGITS_PER_LEVEL * (k + 1)
                && (k == 0 || entry.code.starts_with(&self.levels[k - 1].code))
        })
    }
}

impl<'a> FromIterator<&'a LocationNode> for ResolvedLocation {
    fn from_iter<I: IntoIterator<Item = &'a LocationNode>>(iter: I) -> Self {
        ResolvedLocation {
            levels: iter
                .into_iter()
                .map(|n| PathEntry {
                    level: n.ordinal,
                    code: n.code.clone(),
                    name: n.name.clone(),
                })
                .collect(),
        }
    }
}

/// Load-time configuration: hierarchy depth and the labels of its levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadOptions {
    pub level_names: Vec<String>,
}

impl LoadOptions {
    /// Depth `depth` with the default labels (`region`, `province`,
    /// `district`, then `level4`, `level5`, ...).
    pub fn with_depth(depth: usize) -> Self {
        let level_names = (1..=depth)
            .map(|ordinal| match DEFAULT_LEVEL_NAMES.get(ordinal - 1) {
                Some(name) => (*name).to_string(),
                None => format!("level{ordinal}"),
            })
            .collect();
        LoadOptions { level_names }
    }

    pub fn with_level_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        LoadOptions {
            level_names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn depth(&self) -> usize {
        self.level_names.len()
    }

    fn levels(&self) -> Result<Vec<Level>> {
        if self.level_names.is_empty() {
            return Err(Error::InvalidLevels("depth must be at least 1".into()));
        }
        if self.level_names.len() > 9 {
            return Err(Error::InvalidLevels("depth must be at most 9".into()));
        }
        self.level_names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let name = name.trim();
                if name.is_empty() {
                    return Err(Error::InvalidLevels(format!(
                        "level {} has a blank name",
                        i + 1
                    )));
                }
                Ok(Level {
                    ordinal: i + 1,
                    name: name.to_string(),
                })
            })
            .collect()
    }
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions::with_depth(DEFAULT_DEPTH)
    }
}

/// Immutable forest of [`LocationNode`]s.
///
/// Child lists are kept sorted by code, so two gazetteers loaded from the
/// same rows in any order compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gazetteer {
    levels: Vec<Level>,
    nodes: BTreeMap<String, LocationNode>,
    roots: Vec<String>,
    children: BTreeMap<String, Vec<String>>,
}

impl Gazetteer {
    /// Load with the default three-level configuration.
    pub fn load<I, C, N>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, N)>,
        C: AsRef<str>,
        N: AsRef<str>,
    {
        Self::load_with(rows, &LoadOptions::default())
    }

    /// Validate and link `(code, name)` rows. Row order is insignificant:
    /// every row is collected first, parents are linked afterwards.
    pub fn load_with<I, C, N>(rows: I, options: &LoadOptions) -> Result<Self>
    where
        I: IntoIterator<Item = (C, N)>,
        C: AsRef<str>,
        N: AsRef<str>,
    {
        let levels = options.levels()?;
        let depth = levels.len();

        let mut nodes = BTreeMap::new();
        for (code, name) in rows {
            let code = code.as_ref().trim();
            let ordinal = parse_code(code, depth)?;
            let name = name.as_ref().trim();
            if name.is_empty() {
                return Err(Error::BlankName(code.to_string()));
            }
            let parent_code = (ordinal > 1).then(|| parent_of(code).to_string());
            let node = LocationNode {
                code: code.to_string(),
                name: name.to_string(),
                ordinal,
                parent_code,
            };
            if nodes.insert(code.to_string(), node).is_some() {
                return Err(Error::DuplicateCode(code.to_string()));
            }
        }
        if nodes.is_empty() {
            return Err(Error::EmptyInput);
        }

        let mut roots = Vec::new();
        let mut children: BTreeMap<String, Vec<String>> = BTreeMap::new();
        // BTreeMap iteration is already in code order, so child lists come
        // out sorted.
        for node in nodes.values() {
            match &node.parent_code {
                None => roots.push(node.code.clone()),
                Some(parent) => {
                    if !nodes.contains_key(parent) {
                        return Err(Error::OrphanNode {
                            code: node.code.clone(),
                            parent: parent.clone(),
                        });
                    }
                    children
                        .entry(parent.clone())
                        .or_default()
                        .push(node.code.clone());
                }
            }
        }

        Ok(Gazetteer {
            levels,
            nodes,
            roots,
            children,
        })
    }

    /// Read a UTF-8 CSV with header `code,name`.
    pub fn from_csv_reader<R: Read>(reader: R, options: &LoadOptions) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = csv.headers()?.clone();
        let header: Vec<&str> = headers.iter().collect();
        if header != ["code", "name"] {
            return Err(Error::Csv(format!(
                "expected header `code,name`, found `{}`",
                header.join(",")
            )));
        }
        let mut rows = Vec::new();
        for record in csv.records() {
            let record = record?;
            rows.push((record[0].to_string(), record[1].to_string()));
        }
        Self::load_with(rows, options)
    }

    pub fn from_csv_path(path: impl AsRef<std::path::Path>, options: &LoadOptions) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| Error::Csv(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_csv_reader(std::io::BufReader::new(file), options)
    }

    /// A gazetteer with levels but no nodes. Only reachable through this
    /// constructor; loading never produces one.
    pub fn empty(options: &LoadOptions) -> Result<Self> {
        Ok(Gazetteer {
            levels: options.levels()?,
            nodes: BTreeMap::new(),
            roots: Vec::new(),
            children: BTreeMap::new(),
        })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, ordinal: usize) -> Option<&Level> {
        ordinal.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn leaf_level(&self) -> &Level {
        self.levels.last().expect("at least one level")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&LocationNode> {
        self.nodes.get(code)
    }

    pub fn node(&self, code: &str) -> Result<&LocationNode> {
        self.get(code)
            .ok_or_else(|| Error::UnknownCode(code.to_string()))
    }

    /// All nodes in ascending code order.
    pub fn nodes(&self) -> impl Iterator<Item = &LocationNode> {
        self.nodes.values()
    }

    pub fn nodes_at(&self, ordinal: usize) -> impl Iterator<Item = &LocationNode> {
        self.nodes.values().filter(move |n| n.ordinal == ordinal)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &LocationNode> {
        self.nodes_at(self.depth())
    }

    pub fn is_leaf(&self, node: &LocationNode) -> bool {
        node.ordinal == self.depth()
    }

    /// Node counts per level, outermost first.
    pub fn level_counts(&self) -> Vec<(Level, usize)> {
        self.levels
            .iter()
            .map(|level| (level.clone(), self.nodes_at(level.ordinal).count()))
            .collect()
    }

    /// Nodes directly under `parent`, or the top level when `parent` is
    /// `None`. Sorted ascending by code; empty for leaves.
    pub fn children(&self, parent: Option<&str>) -> Result<Vec<&LocationNode>> {
        let codes = match parent {
            None => &self.roots[..],
            Some(code) => {
                self.node(code)?;
                self.children.get(code).map(Vec::as_slice).unwrap_or(&[])
            }
        };
        Ok(codes.iter().map(|c| &self.nodes[c]).collect())
    }

    /// The chain root → `code`, one node per level.
    pub fn ancestors(&self, code: &str) -> Result<Vec<&LocationNode>> {
        let node = self.node(code)?;
        let chain = (1..=node.ordinal)
            .map(|k| &self.nodes[&code[..DIGITS_PER_LEVEL * k]])
            .collect();
        Ok(chain)
    }

    pub fn resolved_path(&self, code: &str) -> Result<ResolvedLocation> {
        Ok(self.ancestors(code)?.into_iter().collect())
    }
}

fn parse_code(code: &str, depth: usize) -> Result<usize> {
    let malformed = |reason| Error::MalformedCode {
        code: code.to_string(),
        reason,
    };
    if code.is_empty() {
        return Err(malformed("empty"));
    }
    if !code.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed("non-digit character"));
    }
    if !code.len().is_multiple_of(DIGITS_PER_LEVEL) {
        return Err(malformed("odd length"));
    }
    let ordinal = code.len() / DIGITS_PER_LEVEL;
    if ordinal > depth {
        return Err(malformed("deeper than the configured depth"));
    }
    Ok(ordinal)
}

fn parent_of(code: &str) -> &str {
    &code[..code.len() - DIGITS_PER_LEVEL]
}
