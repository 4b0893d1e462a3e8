//! Read-only JSON facade over a loaded gazetteer.
//!
//! Every handler is a pure function of the request and the immutable
//! [`Engine`], so identical requests produce byte-identical bodies.

use std::collections::HashMap;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use geo_reverse_core::search_index::DEFAULT_LIMIT;
use geo_reverse_core::{reverse, Error, Gazetteer, PathEntry, ResolvedLocation, SearchIndex};
use serde::Serialize;
use tower_http::cors::CorsLayer;

pub const CONTENT_TYPE: &str = "application/json; charset=utf-8";

/// Gazetteer plus its leaf index, shared by all requests.
#[derive(Debug)]
pub struct Engine {
    gazetteer: Arc<Gazetteer>,
    index: SearchIndex,
}

/// Status code and serialized JSON body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiResponse {
    pub status: u16,
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(rename = "status")]
    pub http_status: u16,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn from_engine(err: &Error) -> Self {
        ApiError {
            http_status: status_for(err),
            code: err.name().to_string(),
            message: err.to_string(),
        }
    }
}

/// Engine error to HTTP status. Lookups of codes that do not exist (or are
/// not leaves) are 404, malformed requests 400, anything else 500.
pub fn status_for(err: &Error) -> u16 {
    match err {
        Error::UnknownCode(_) | Error::NotLeaf(_) => 404,
        Error::QueryTooShort
        | Error::InvalidLimit
        | Error::PickOutOfRange { .. }
        | Error::InvalidChoice(_)
        | Error::NoMatches => 400,
        _ => 500,
    }
}

#[derive(Serialize)]
struct LevelBody<'a> {
    ordinal: usize,
    name: &'a str,
}

#[derive(Serialize)]
struct NodeBody<'a> {
    code: &'a str,
    name: &'a str,
}

#[derive(Serialize)]
struct CandidateBody<'a> {
    code: &'a str,
    name: &'a str,
    match_class: &'static str,
    path: &'a [PathEntry],
}

fn ok<T: Serialize>(value: &T) -> ApiResponse {
    ApiResponse {
        status: 200,
        body: serde_json::to_string(value).expect("serializable"),
    }
}

fn fail(err: &Error) -> ApiResponse {
    let err = ApiError::from_engine(err);
    ApiResponse {
        status: err.http_status,
        body: serde_json::to_string(&err).expect("serializable"),
    }
}

fn respond<T: Serialize>(result: Result<T, Error>) -> ApiResponse {
    match result {
        Ok(value) => ok(&value),
        Err(err) => fail(&err),
    }
}

impl Engine {
    pub fn new(gazetteer: Arc<Gazetteer>) -> Self {
        let index = SearchIndex::build_leaf(gazetteer.clone());
        Engine { gazetteer, index }
    }

    pub fn gazetteer(&self) -> &Arc<Gazetteer> {
        &self.gazetteer
    }

    pub fn index(&self) -> &SearchIndex {
        &self.index
    }

    /// `GET /levels`
    pub fn levels(&self) -> ApiResponse {
        let levels: Vec<LevelBody<'_>> = self
            .gazetteer
            .levels()
            .iter()
            .map(|l| LevelBody {
                ordinal: l.ordinal,
                name: &l.name,
            })
            .collect();
        ok(&levels)
    }

    /// `GET /children[?parent=CODE]`
    pub fn children(&self, parent: Option<&str>) -> ApiResponse {
        respond(self.gazetteer.children(parent).map(|nodes| {
            nodes
                .into_iter()
                .map(|n| NodeBody {
                    code: &n.code,
                    name: &n.name,
                })
                .collect::<Vec<_>>()
        }))
    }

    /// `GET /search?q=TEXT[&limit=N]`. A missing `q` is an empty query.
    pub fn search(&self, query: Option<&str>, limit: Option<&str>) -> ApiResponse {
        let limit = match limit {
            None => DEFAULT_LIMIT,
            Some(raw) => match raw.trim().parse::<usize>() {
                Ok(n) if n >= 1 => n,
                _ => return fail(&Error::InvalidLimit),
            },
        };
        let candidates = match reverse::suggest(&self.index, query.unwrap_or(""), limit) {
            Ok(c) => c,
            Err(err) => return fail(&err),
        };
        let body: Vec<CandidateBody<'_>> = candidates
            .iter()
            .map(|c| CandidateBody {
                code: &c.node.code,
                name: &c.node.name,
                match_class: c.match_class.as_str(),
                path: &c.path.levels,
            })
            .collect();
        ok(&body)
    }

    /// `GET /resolve/{code}`
    pub fn resolve(&self, code: &str) -> ApiResponse {
        respond::<ResolvedLocation>(reverse::resolve(&self.gazetteer, code))
    }
}

impl IntoResponse for ApiResponse {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, [(header::CONTENT_TYPE, CONTENT_TYPE)], self.body).into_response()
    }
}

type Params = Query<HashMap<String, String>>;

async fn levels(State(engine): State<Arc<Engine>>) -> ApiResponse {
    engine.levels()
}

async fn children(State(engine): State<Arc<Engine>>, Query(params): Params) -> ApiResponse {
    engine.children(params.get("parent").map(String::as_str))
}

async fn search(State(engine): State<Arc<Engine>>, Query(params): Params) -> ApiResponse {
    engine.search(
        params.get("q").map(String::as_str),
        params.get("limit").map(String::as_str),
    )
}

async fn resolve(State(engine): State<Arc<Engine>>, Path(code): Path<String>) -> ApiResponse {
    engine.resolve(&code)
}

/// Routes for the four read-only endpoints. `cors_any` opens the API to
/// every origin; otherwise no CORS headers are sent and browsers apply
/// their same-origin default.
pub fn router(engine: Arc<Engine>, cors_any: bool) -> Router {
    let router = Router::new()
        .route("/levels", get(levels))
        .route("/children", get(children))
        .route("/search", get(search))
        .route("/resolve/:code", get(resolve))
        .with_state(engine);
    if cors_any {
        router.layer(CorsLayer::permissive())
    } else {
        router
    }
}
