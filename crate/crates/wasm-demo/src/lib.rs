//! Browser demo: cascading dropdowns and typeahead entry over the same
//! in-memory gazetteer, with a running count of engine calls per entry.
//!
//! Build with `wasm-pack build --target web --out-dir www/pkg` and serve
//! `www/` as static files.

use std::sync::Arc;

use geo_reverse_core::fixtures;
use geo_reverse_core::synthetic::{self, Shape};
use geo_reverse_core::{reverse, Gazetteer, LoadOptions, PathEntry, SearchIndex};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct NodeView<'a> {
    code: &'a str,
    name: &'a str,
}

#[derive(Serialize)]
struct CandidateView<'a> {
    code: &'a str,
    name: &'a str,
    match_class: &'static str,
    path: &'a [PathEntry],
}

#[derive(Serialize)]
struct LevelView<'a> {
    ordinal: usize,
    name: &'a str,
    nodes: usize,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

#[wasm_bindgen]
pub struct Demo {
    gazetteer: Arc<Gazetteer>,
    index: SearchIndex,
}

impl Demo {
    fn new(gazetteer: Gazetteer) -> Self {
        let gazetteer = Arc::new(gazetteer);
        let index = SearchIndex::build_leaf(gazetteer.clone());
        Demo { gazetteer, index }
    }

    pub fn try_from_csv(text: &str) -> Result<Demo, String> {
        Gazetteer::from_csv_reader(text.as_bytes(), &LoadOptions::default())
            .map(Demo::new)
            .map_err(|e| e.to_string())
    }

    pub fn levels_json(&self) -> String {
        let counts = self.gazetteer.level_counts();
        let levels: Vec<LevelView<'_>> = counts
            .iter()
            .map(|(level, nodes)| LevelView {
                ordinal: level.ordinal,
                name: &level.name,
                nodes: *nodes,
            })
            .collect();
        json(&levels)
    }

    pub fn children_json(&self, parent: Option<&str>) -> Result<String, String> {
        let nodes = self.gazetteer.children(parent).map_err(|e| e.to_string())?;
        let view: Vec<NodeView<'_>> = nodes
            .iter()
            .map(|n| NodeView {
                code: &n.code,
                name: &n.name,
            })
            .collect();
        Ok(json(&view))
    }

    pub fn search_json(&self, query: &str, limit: usize) -> Result<String, String> {
        let candidates = reverse::suggest(&self.index, query, limit).map_err(|e| e.to_string())?;
        let view: Vec<CandidateView<'_>> = candidates
            .iter()
            .map(|c| CandidateView {
                code: &c.node.code,
                name: &c.node.name,
                match_class: c.match_class.as_str(),
                path: &c.path.levels,
            })
            .collect();
        Ok(json(&view))
    }

    pub fn resolve_json(&self, code: &str) -> Result<String, String> {
        reverse::resolve(&self.gazetteer, code)
            .map(|path| json(&path))
            .map_err(|e| e.to_string())
    }
}

#[wasm_bindgen]
impl Demo {
    /// The small two-region fixture.
    pub fn fixture() -> Demo {
        Demo::new(fixtures::fixture_a())
    }

    /// A generated 25 x 8 x 9 gazetteer.
    pub fn synthetic(seed: u32) -> Demo {
        Demo::new(synthetic::generate(&Shape::desk_scale(), u64::from(seed)).expect("valid shape"))
    }

    #[wasm_bindgen(js_name = fromCsv)]
    pub fn from_csv(text: &str) -> Result<Demo, JsValue> {
        Demo::try_from_csv(text).map_err(|e| JsValue::from_str(&e))
    }

    pub fn levels(&self) -> String {
        self.levels_json()
    }

    /// Children of `parent`, or the top level when `parent` is undefined.
    pub fn children(&self, parent: Option<String>) -> Result<String, JsValue> {
        self.children_json(parent.as_deref())
            .map_err(|e| JsValue::from_str(&e))
    }

    pub fn search(&self, query: &str, limit: usize) -> Result<String, JsValue> {
        self.search_json(query, limit)
            .map_err(|e| JsValue::from_str(&e))
    }

    pub fn resolve(&self, code: &str) -> Result<String, JsValue> {
        self.resolve_json(code).map_err(|e| JsValue::from_str(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_round_trip() {
        let demo = Demo::fixture();
        assert_eq!(
            demo.children_json(None).unwrap(),
            r#"[{"code":"01","name":"Alpha"},{"code":"02","name":"Beta"}]"#
        );
        let found = demo.search_json("pampas ver", 10).unwrap();
        assert!(
            found.starts_with(r#"[{"code":"020101","name":"Pampas Verdes","match_class":"prefix""#)
        );
        assert!(demo
            .resolve_json("020101")
            .unwrap()
            .ends_with(r#""name":"Pampas Verdes"}]}"#));
    }

    #[test]
    fn errors_are_messages() {
        let demo = Demo::fixture();
        assert!(demo.search_json(" ", 10).is_err());
        assert!(demo
            .resolve_json("0101")
            .unwrap_err()
            .contains("not at the leaf level"));
        assert!(demo.children_json(Some("77")).is_err());
        assert!(Demo::try_from_csv("code,name\n0101,Orphan\n").is_err());
    }

    #[test]
    fn synthetic_levels() {
        let levels = Demo::synthetic(1).levels_json();
        assert!(levels.contains(r#"{"ordinal":3,"name":"district","nodes":1800}"#));
    }
}
