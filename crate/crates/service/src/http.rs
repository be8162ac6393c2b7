use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clusterweyl::corpus::named_seed;
use clusterweyl::relations::RelationReport;
use clusterweyl::wire::MatrixDoc;
use clusterweyl::{Sign, SkewMatrix};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::journal::{Event, Journal};
use crate::session::{Export, Session, SessionError, Snapshot};

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::StaleCursor { .. } => StatusCode::CONFLICT,
            _ => StatusCode::BAD_REQUEST,
        };
        Self::new(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::bad_request(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(serde_json::json!({ "error": self.message })),
        )
            .into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

type Shared = Arc<tokio::sync::RwLock<Session>>;

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Shared>>>,
    journal: Option<Journal>,
}

impl AppState {
    pub fn new(journal: Option<Journal>) -> Self {
        Self {
            sessions: Arc::default(),
            journal,
        }
    }

    pub fn insert(&self, session: Session) {
        let id = session.id().to_string();
        self.sessions
            .write()
            .expect("session map poisoned")
            .insert(id, Arc::new(tokio::sync::RwLock::new(session)));
    }

    fn get(&self, id: &str) -> Result<Shared, ApiError> {
        self.sessions
            .read()
            .expect("session map poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("unknown session {id}")))
    }

    fn record(&self, id: &str, event: Event) {
        if let Some(j) = &self.journal {
            if let Err(e) = j.append(id, &event) {
                log::error!("journal write for {id} failed: {e}");
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDoc {
    pub id: String,
    pub cursor: usize,
    pub nodes: usize,
    pub snapshot: Snapshot,
}

fn state_doc(s: &Session) -> StateDoc {
    StateDoc {
        id: s.id().to_string(),
        cursor: s.cursor(),
        nodes: s.node_count(),
        snapshot: (*s.current()).clone(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateBody {
    vertex: usize,
    eps: Sign,
    /// Cursor the client expects; a mismatch is a conflict.
    #[serde(default)]
    node: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CursorBody {
    node: usize,
}

#[derive(Debug, Deserialize)]
struct RelationsQuery {
    #[serde(default)]
    full: bool,
    #[serde(default)]
    verify: bool,
}

#[derive(Debug, Serialize)]
struct RelationsDoc {
    node: usize,
    relations: Vec<RelationReport>,
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, ApiError> {
    serde_json::from_value(v).map_err(|e| ApiError::bad_request(format!("invalid {what}: {e}")))
}

fn matrix_from(v: Value) -> Result<SkewMatrix, ApiError> {
    let doc: MatrixDoc = parse(v, "matrix")?;
    SkewMatrix::try_from(doc).map_err(|e| ApiError::bad_request(format!("invalid matrix: {e}")))
}

/// Accepts a bare matrix document, `{"matrix": …}`, `{"named": "A3"}` or
/// `{"export": …}` to replay an exported session.
async fn create(
    State(state): State<AppState>,
    body: Result<Json<Value>, JsonRejection>,
) -> Result<(StatusCode, Json<StateDoc>), ApiError> {
    let Json(mut body) = body?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = if let Some(export) = body.get_mut("export").map(Value::take) {
        let export: Export = parse(export, "export")?;
        Session::replay(id.clone(), &export)?
    } else {
        let seed = if let Some(name) = body.get("named").and_then(Value::as_str) {
            named_seed(name).ok_or_else(|| ApiError::bad_request(format!("unknown seed {name}")))?
        } else if let Some(m) = body.get_mut("matrix").map(Value::take) {
            matrix_from(m)?
        } else {
            matrix_from(body)?
        };
        Session::new(id.clone(), seed)?
    };
    let export = session.export();
    state.record(
        &id,
        Event::Create {
            seed: export.seed.clone(),
        },
    );
    for snap in export.nodes.iter().skip(1) {
        if let (Some(from), Some(vertex), Some(eps)) = (snap.parent, snap.vertex, snap.eps) {
            state.record(&id, Event::Mutate { from, vertex, eps });
        }
    }
    if export.cursor + 1 != export.nodes.len() {
        state.record(
            &id,
            Event::Cursor {
                node: export.cursor,
            },
        );
    }
    let doc = state_doc(&session);
    log::info!("created session {id}");
    state.insert(session);
    Ok((StatusCode::CREATED, Json(doc)))
}

async fn get_state(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<StateDoc> {
    let s = state.get(&id)?;
    let s = s.read().await;
    Ok(Json(state_doc(&s)))
}

async fn mutate(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MutateBody>, JsonRejection>,
) -> ApiResult<StateDoc> {
    let shared = state.get(&id)?;
    let Json(body) = body?;
    let mut s = shared.write().await;
    let from = s.cursor();
    s.mutate(body.vertex, body.eps, body.node)?;
    state.record(
        &id,
        Event::Mutate {
            from,
            vertex: body.vertex,
            eps: body.eps,
        },
    );
    Ok(Json(state_doc(&s)))
}

async fn cursor(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<CursorBody>, JsonRejection>,
) -> ApiResult<StateDoc> {
    let shared = state.get(&id)?;
    let Json(body) = body?;
    let mut s = shared.write().await;
    s.move_cursor(body.node)?;
    state.record(&id, Event::Cursor { node: body.node });
    Ok(Json(state_doc(&s)))
}

async fn relations(
    State(state): State<AppState>,
    Path(id): Path<String>,
    query: Result<Query<RelationsQuery>, QueryRejection>,
) -> ApiResult<RelationsDoc> {
    let Query(q) = query.map_err(|e| ApiError::bad_request(e.body_text()))?;
    let shared = state.get(&id)?;
    let s = shared.read().await;
    Ok(Json(RelationsDoc {
        node: s.cursor(),
        relations: s.relations(q.full, q.verify)?,
    }))
}

async fn export(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Export> {
    let shared = state.get(&id)?;
    let s = shared.read().await;
    Ok(Json(s.export()))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(get_state))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/cursor", post(cursor))
        .route("/sessions/{id}/relations", get(relations))
        .route("/sessions/{id}/export", get(export))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "no such endpoint") })
        .with_state(state)
}
