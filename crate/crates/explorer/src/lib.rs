//! Session-scoped HTTP service for exploring cluster mutation.
//!
//! Every session owns an initial seed and a history of committed mutations;
//! the current seed is always the fold of that history over the initial one.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cq_core::verify::z_to_y;
use cq_core::{
    build_x_quiver, build_z_quiver, library_bipartite, BipartiteGraph, Error as CoreError, Graph, PrincipalSeed, Seed,
    VarNaming,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::{Mutex, RwLock};

pub const DEFAULT_PORT: u16 = 8472;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn not_found(what: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, what)
    }

    fn unprocessable(what: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, what)
    }
}

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> ApiError {
        let status = match e {
            CoreError::FrozenVertex(_) => StatusCode::CONFLICT,
            CoreError::UnknownVertex(_) => StatusCode::NOT_FOUND,
            CoreError::InvalidGraph(_) | CoreError::NotBipartite(_) | CoreError::Parse(_) => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> ApiError {
        ApiError::unprocessable(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// What a client sends to open a session. `graph` is a built-in name or a
/// graph object `{vertices, edges}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SessionRequest {
    pub graph: Value,
    #[serde(default)]
    pub parts: Option<Vec<String>>,
    /// Keep the frozen vertices of the x-quiver; `false` gives the
    /// coefficient-free seed on the principal part.
    #[serde(default = "yes")]
    pub frozen: bool,
}

fn yes() -> bool {
    true
}

impl SessionRequest {
    fn bipartite(&self) -> ApiResult<BipartiteGraph> {
        let parts = self.parts.as_deref();
        match &self.graph {
            Value::String(name) => Ok(library_bipartite(name, parts)?),
            v @ Value::Object(_) => {
                let g = Graph::from_json(v)?;
                Ok(BipartiteGraph::new(g, parts)?)
            }
            _ => Err(ApiError::unprocessable("`graph` must be a library name or a graph object")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    id: String,
    request: SessionRequest,
    history: Vec<String>,
}

pub struct Session {
    id: String,
    request: SessionRequest,
    bg: BipartiteGraph,
    initial: Seed,
    current: Seed,
    history: Vec<String>,
    principal: PrincipalSeed,
    z_seed: Option<Seed>,
    analyses: HashMap<String, Value>,
}

impl Session {
    fn open(id: String, request: SessionRequest) -> ApiResult<Session> {
        let bg = request.bipartite()?;
        let x = build_x_quiver(&bg).to_matrix();
        let matrix = if request.frozen { x.clone() } else { x.principal_block() };
        let initial = Seed::initial(matrix, &VarNaming::cluster());
        let z_seed = request.frozen.then(|| {
            let z = Seed::initial(build_z_quiver(&bg).to_matrix(), &VarNaming::new("z", "f"));
            let i1: Vec<String> = bg.i1().into_iter().map(|i| bg.ids()[i].clone()).collect();
            z.mutate_path(&i1).expect("I1 vertices of the z-quiver are mutable")
        });
        Ok(Session {
            id,
            principal: PrincipalSeed::new(&x),
            request,
            bg,
            current: initial.clone(),
            initial,
            history: Vec::new(),
            z_seed,
            analyses: HashMap::new(),
        })
    }

    pub fn seed(&self) -> &Seed {
        &self.current
    }

    pub fn history(&self) -> &[String] {
        &self.history
    }

    fn summary(&self) -> Value {
        json!({
            "id": self.id,
            "graph": self.request.graph,
            "parts": self.bg.i0_ids(),
            "frozen": self.request.frozen,
            "seed": self.current.to_json(),
            "history": self.history,
        })
    }

    fn check_mutable(&self, vertex: &str) -> ApiResult<()> {
        let m = self.current.matrix();
        let row = m.row(vertex)?;
        if m.is_frozen(row) {
            return Err(CoreError::FrozenVertex(vertex.to_string()).into());
        }
        Ok(())
    }

    fn mutate(&mut self, vertex: &str) -> ApiResult<Value> {
        self.check_mutable(vertex)?;
        let next = self.current.mutate(vertex)?;
        let diff = diff(&self.current, &next, vertex);
        self.current = next;
        self.history.push(vertex.to_string());
        Ok(diff)
    }

    fn undo(&mut self) -> ApiResult<Value> {
        let Some(last) = self.history.pop() else {
            return Err(ApiError::new(StatusCode::CONFLICT, "history is empty"));
        };
        let prev = self.initial.mutate_path(&self.history)?;
        let diff = diff(&self.current, &prev, &last);
        self.current = prev;
        Ok(diff)
    }

    fn replay(&self) -> ApiResult<Seed> {
        Ok(self.initial.mutate_path(&self.history)?)
    }

    /// Laurent expansion, F-polynomial, g-vector and character of the
    /// current variable at `vertex`.
    fn variable(&mut self, vertex: &str) -> ApiResult<Value> {
        let row = self.current.matrix().row(vertex)?;
        let value = self.current.variable(vertex)?.clone();
        let text = value.to_string();
        if let Some(v) = self.analyses.get(&text) {
            return Ok(v.clone());
        }
        let frozen = self.current.matrix().is_frozen(row);
        let (f, g) = if frozen {
            (Value::Null, Value::Null)
        } else {
            let p = self.principal.seed().mutate_path(&self.history)?;
            let u = p.variable(vertex)?;
            let f = self.principal.f_polynomial(u)?;
            let g = self.principal.g_vector(u)?;
            let ids = self.principal.principal_ids();
            let g: BTreeMap<&str, i64> = ids.iter().map(String::as_str).zip(g).collect();
            (json!(f.to_string()), json!(g))
        };
        let character = match &self.z_seed {
            Some(z) => {
                let expr = z.mutate_path(&self.history)?;
                let chi = expr.variable(vertex)?.substitute(&z_to_y(&self.bg))?;
                json!(chi.to_string())
            }
            None => Value::Null,
        };
        let out = json!({
            "vertex": vertex,
            "frozen": frozen,
            "laurent": text,
            "fraction": value.to_fraction(),
            "f_polynomial": f,
            "g_vector": g,
            "character": character,
        });
        self.analyses.insert(text, out.clone());
        Ok(out)
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            id: self.id.clone(),
            request: self.request.clone(),
            history: self.history.clone(),
        }
    }
}

fn diff(before: &Seed, after: &Seed, vertex: &str) -> Value {
    let changed: BTreeMap<String, Value> = after
        .variables()
        .filter_map(|(id, v)| {
            let old = before.variable(id).ok()?;
            (old != v).then(|| (id.to_string(), json!({ "old": old.to_string(), "new": v.to_string() })))
        })
        .collect();
    json!({
        "vertex": vertex,
        "variables": changed,
        "matrix": after.matrix().to_json(),
        "seed": after.to_json(),
    })
}

/// Shared service state: the session table and optional snapshot directory.
#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Arc<Mutex<Session>>>>>,
    next_id: Arc<AtomicU64>,
    state_dir: Option<PathBuf>,
}

impl AppState {
    /// Restores every snapshot found in `state_dir`.
    pub fn new(state_dir: Option<PathBuf>) -> std::io::Result<AppState> {
        let mut sessions = HashMap::new();
        let mut max_id = 0;
        if let Some(dir) = &state_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().and_then(|e| e.to_str()) != Some("json") {
                    continue;
                }
                let snap: Snapshot = serde_json::from_slice(&std::fs::read(&path)?)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{}: {e}", path.display())))?;
                let mut s = Session::open(snap.id.clone(), snap.request)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.message))?;
                for v in &snap.history {
                    s.mutate(v)
                        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.message))?;
                }
                if let Some(n) = snap.id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
                    max_id = max_id.max(n);
                }
                sessions.insert(snap.id, Arc::new(Mutex::new(s)));
            }
        }
        Ok(AppState {
            sessions: Arc::new(RwLock::new(sessions)),
            next_id: Arc::new(AtomicU64::new(max_id + 1)),
            state_dir,
        })
    }

    async fn session(&self, id: &str) -> ApiResult<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .await
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("no session `{id}`")))
    }

    fn persist(&self, s: &Session) -> ApiResult<()> {
        let Some(dir) = &self.state_dir else { return Ok(()) };
        write_snapshot(dir, &s.snapshot())
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, format!("snapshot: {e}")))
    }
}

fn write_snapshot(dir: &Path, snap: &Snapshot) -> std::io::Result<()> {
    let tmp = dir.join(format!("{}.json.tmp", snap.id));
    std::fs::write(&tmp, serde_json::to_vec_pretty(snap)?)?;
    std::fs::rename(tmp, dir.join(format!("{}.json", snap.id)))
}

#[derive(Deserialize)]
struct MutateBody {
    vertex: String,
}

async fn create_session(State(st): State<AppState>, body: Result<Json<SessionRequest>, JsonRejection>) -> ApiResult<Response> {
    let Json(request) = body?;
    let id = format!("s{}", st.next_id.fetch_add(1, Ordering::SeqCst));
    let s = Session::open(id.clone(), request)?;
    st.persist(&s)?;
    let out = json!({ "id": id, "seed": s.current.to_json() });
    st.sessions.write().await.insert(id, Arc::new(Mutex::new(s)));
    Ok((StatusCode::CREATED, Json(out)).into_response())
}

async fn get_session(State(st): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<Value>> {
    let s = st.session(&id).await?;
    let s = s.lock().await;
    debug_assert_eq!(s.replay().ok().as_ref(), Some(&s.current));
    Ok(Json(s.summary()))
}

async fn mutate(
    State(st): State<AppState>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<MutateBody>, JsonRejection>,
) -> ApiResult<Json<Value>> {
    let s = st.session(&id).await?;
    let Json(body) = body?;
    let mut s = s.lock().await;
    let out = s.mutate(&body.vertex)?;
    st.persist(&s)?;
    Ok(Json(out))
}

async fn undo(State(st): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<Value>> {
    let s = st.session(&id).await?;
    let mut s = s.lock().await;
    let out = s.undo()?;
    st.persist(&s)?;
    Ok(Json(out))
}

async fn variable(State(st): State<AppState>, UrlPath((id, vertex)): UrlPath<(String, String)>) -> ApiResult<Json<Value>> {
    let s = st.session(&id).await?;
    let mut s = s.lock().await;
    Ok(Json(s.variable(&vertex)?))
}

async fn whatif(State(st): State<AppState>, UrlPath((id, vertex)): UrlPath<(String, String)>) -> ApiResult<Json<Value>> {
    let s = st.session(&id).await?;
    let s = s.lock().await;
    s.check_mutable(&vertex)?;
    let next = s.current.mutate(&vertex)?;
    Ok(Json(diff(&s.current, &next, &vertex)))
}

async fn api() -> Json<Value> {
    Json(openapi())
}

/// OpenAPI 3 description of every route.
pub fn openapi() -> Value {
    let id = json!({ "name": "id", "in": "path", "required": true, "schema": { "type": "string" } });
    let vertex = json!({ "name": "vertex", "in": "path", "required": true, "schema": { "type": "string" } });
    let errors = json!({
        "404": { "description": "unknown session or vertex" },
        "409": { "description": "frozen vertex, or nothing to undo" },
        "422": { "description": "invalid graph or request body" }
    });
    let with = |ok: &str| {
        let mut r = errors.clone();
        r["200"] = json!({ "description": ok });
        r
    };
    json!({
        "openapi": "3.0.3",
        "info": { "title": "cq explorer", "version": env!("CARGO_PKG_VERSION") },
        "paths": {
            "/session": { "post": {
                "summary": "Open a session on a bipartite graph",
                "requestBody": { "required": true, "content": { "application/json": { "schema": {
                    "type": "object",
                    "required": ["graph"],
                    "properties": {
                        "graph": { "oneOf": [
                            { "type": "string", "enum": cq_core::graph::LIBRARY },
                            { "type": "object", "properties": {
                                "vertices": { "type": "array", "items": { "type": "string" } },
                                "edges": { "type": "array" } } }
                        ] },
                        "parts": { "type": "array", "items": { "type": "string" }, "description": "vertices of I0" },
                        "frozen": { "type": "boolean", "default": true }
                    } } } } },
                "responses": { "201": { "description": "{id, seed}" }, "422": errors["422"] }
            } },
            "/session/{id}": { "get": {
                "summary": "Current seed and mutation history",
                "parameters": [id], "responses": with("{id, graph, parts, frozen, seed, history}")
            } },
            "/session/{id}/mutate": { "post": {
                "summary": "Commit a mutation",
                "parameters": [id],
                "requestBody": { "required": true, "content": { "application/json": { "schema": {
                    "type": "object", "required": ["vertex"], "properties": { "vertex": { "type": "string" } } } } } },
                "responses": with("{vertex, variables, matrix, seed}")
            } },
            "/session/{id}/undo": { "post": {
                "summary": "Revert the last committed mutation",
                "parameters": [id], "responses": with("{vertex, variables, matrix, seed}")
            } },
            "/session/{id}/variable/{vertex}": { "get": {
                "summary": "Laurent expansion, F-polynomial, g-vector and truncated character",
                "parameters": [id, vertex],
                "responses": with("{vertex, frozen, laurent, fraction, f_polynomial, g_vector, character}")
            } },
            "/session/{id}/whatif/{vertex}": { "get": {
                "summary": "Preview a mutation without committing it",
                "parameters": [id, vertex], "responses": with("{vertex, variables, matrix, seed}")
            } }
        }
    })
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api", get(api))
        .route("/session", post(create_session))
        .route("/session/{id}", get(get_session))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/variable/{vertex}", get(variable))
        .route("/session/{id}/whatif/{vertex}", get(whatif))
        .with_state(state)
}

/// Serves on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr, state_dir: Option<PathBuf>) -> std::io::Result<()> {
    let state = AppState::new(state_dir)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}
