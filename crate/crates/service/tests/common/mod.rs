#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use geo_reverse::api::{router, Engine};
use geo_reverse_core::fixtures::fixture_a;
use http_body_util::BodyExt;
use tower::ServiceExt;

/// Every endpoint case checked against a frozen body: request URI, status,
/// golden file name.
pub const GOLDEN_CASES: &[(&str, u16, &str)] = &[
    ("/levels", 200, "levels.json"),
    ("/children", 200, "children_root.json"),
    ("/children?parent=01", 200, "children_01.json"),
    ("/children?parent=0101", 200, "children_0101.json"),
    ("/children?parent=010101", 200, "children_leaf.json"),
    ("/children?parent=xx", 404, "children_unknown.json"),
    ("/search?q=pam", 200, "search_pam.json"),
    ("/search?q=san+juan", 200, "search_san_juan.json"),
    ("/search?q=Pampas&limit=1", 200, "search_pampas_limit1.json"),
    ("/search?q=zzz", 200, "search_zzz.json"),
    ("/search?q=%20", 400, "search_blank.json"),
    ("/search?q=pam&limit=0", 400, "search_bad_limit.json"),
    ("/resolve/020101", 200, "resolve_020101.json"),
    ("/resolve/0101", 404, "resolve_not_leaf.json"),
    ("/resolve/999999", 404, "resolve_unknown.json"),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture_engine() -> Arc<Engine> {
    Arc::new(Engine::new(Arc::new(fixture_a())))
}

pub struct Reply {
    pub status: StatusCode,
    pub content_type: String,
    pub body: String,
}

pub async fn get(engine: Arc<Engine>, uri: &str) -> Reply {
    let response = router(engine, false)
        .oneshot(Request::get(uri).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let status = response.status();
    let content_type = response
        .headers()
        .get("content-type")
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    Reply {
        status,
        content_type,
        body: String::from_utf8(bytes.to_vec()).unwrap(),
    }
}

/// Compare every case with its golden file; `GOLDEN_UPDATE=1` rewrites
/// the files instead. Returns one message per mismatch.
pub async fn check_golden() -> Vec<String> {
    let update = std::env::var_os("GOLDEN_UPDATE").is_some();
    let engine = fixture_engine();
    let mut failures = Vec::new();
    for &(uri, status, file) in GOLDEN_CASES {
        let reply = get(engine.clone(), uri).await;
        let path = golden_dir().join(file);
        if update {
            std::fs::write(&path, format!("{}\n", reply.body)).unwrap();
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if reply.status.as_u16() != status {
            failures.push(format!("{uri}: status {} != {status}", reply.status));
        }
        if reply.content_type != "application/json; charset=utf-8" {
            failures.push(format!("{uri}: content-type {:?}", reply.content_type));
        }
        if expected.strip_suffix('\n') != Some(reply.body.as_str()) {
            failures.push(format!(
                "{uri}: body differs from {file}:\n  got  {}",
                reply.body
            ));
        }
    }
    failures
}
