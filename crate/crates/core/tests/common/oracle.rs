//! Brute-force reference for leaf search: normalize every node name and
//! classify it against the query with plain string predicates. Shares
//! nothing with the index beyond `normalize`.

use geo_reverse_core::{normalize, Gazetteer};

pub struct LinearScan {
    /// `(normalized name, code)` for every node of one level.
    names: Vec<(String, String)>,
}

impl LinearScan {
    pub fn new(g: &Gazetteer, ordinal: usize) -> Self {
        let names = g
            .nodes()
            .filter(|n| n.ordinal == ordinal)
            .map(|n| (normalize(&n.name).into_string(), n.code.clone()))
            .collect();
        LinearScan { names }
    }

    /// `(code, class)` with class 0 = exact, 1 = prefix, 2 = substring.
    pub fn query(&self, query: &str, limit: usize) -> Vec<(String, u8)> {
        let q = normalize(query);
        if q.is_empty() {
            return Vec::new();
        }
        let q = q.as_str();
        let mut hits: Vec<(u8, &str, &str)> = self
            .names
            .iter()
            .filter_map(|(key, code)| {
                let class = if key == q {
                    0
                } else if key.starts_with(q) {
                    1
                } else if key.contains(q) {
                    2
                } else {
                    return None;
                };
                Some((class, key.as_str(), code.as_str()))
            })
            .collect();
        hits.sort();
        hits.into_iter()
            .take(limit)
            .map(|(class, _, code)| (code.to_string(), class))
            .collect()
    }
}

pub fn linear_scan(g: &Gazetteer, ordinal: usize, query: &str, limit: usize) -> Vec<(String, u8)> {
    LinearScan::new(g, ordinal).query(query, limit)
}
