//! JSON-over-HTTP session service. Every state change goes through
//! [`Session::execute`], so a rejected command leaves the session untouched.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ndkernel::environment::file::theorem_path;
use ndkernel::environment::TheoremFile;
use ndkernel::kernel::{check_theory, RULES};
use ndkernel::shell::{auto_report, theory_names, Command, Session};
use ndkernel::syntax::ascii;

type Shared = Arc<RwLock<Session>>;

pub struct AppState {
    theory_dir: PathBuf,
    sessions: RwLock<HashMap<String, Shared>>,
    counter: AtomicU64,
}

impl AppState {
    pub fn new(theory_dir: impl Into<PathBuf>) -> Arc<Self> {
        Arc::new(AppState {
            theory_dir: theory_dir.into(),
            sessions: RwLock::new(HashMap::new()),
            counter: AtomicU64::new(0),
        })
    }

    fn session(&self, id: &str) -> Result<Shared, ApiError> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("no session '{id}'")))
    }
}

pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: message.into(),
        }
    }

    fn not_found(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(format!("invalid request: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Json<Value> {
    Json(serde_json::to_value(v).expect("response serializes"))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/session", post(create_session))
        .route("/session/{id}/proof", get(proof))
        .route("/session/{id}/environment", get(environment))
        .route("/session/{id}/log", get(log))
        .route("/session/{id}/command", post(command))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/save", post(save))
        .route("/theorem/{name}", get(theorem))
        .route("/check", post(check))
        .route("/auto", post(auto))
        .with_state(state)
}

async fn create_session(State(state): State<Arc<AppState>>) -> ApiResult {
    let n = state.counter.fetch_add(1, Ordering::Relaxed);
    let id = format!("s{n:08x}");
    let session = Session::new(state.theory_dir.clone());
    state
        .sessions
        .write()
        .expect("session table poisoned")
        .insert(id.clone(), Arc::new(RwLock::new(session)));
    Ok(Json(json!({ "id": id })))
}

async fn proof(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let shared = state.session(&id)?;
    let s = shared.read().expect("session poisoned");
    let lines: Vec<Value> = s
        .proof
        .lines()
        .iter()
        .zip(s.rendered_proof())
        .map(|(l, text)| {
            json!({
                "index": l.pos,
                "text": text,
                "formula": s.env.pretty(&l.formula),
                "ascii": ascii(&l.formula),
                "rule": l.rule,
                "parents": l.parents,
                "dischargedBy": l.discharged_by,
                "qed": l.qed,
            })
        })
        .collect();
    Ok(Json(json!({ "lines": lines })))
}

async fn environment(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let shared = state.session(&id)?;
    let s = shared.read().expect("session poisoned");
    let env = &s.env;
    let rules: Vec<Value> = RULES
        .iter()
        .map(|(name, params)| json!({ "name": name, "params": params }))
        .collect();
    Ok(Json(json!({
        "name": env.name,
        "signature": env.signature,
        "classGuard": env.class_guard,
        "axioms": env.show_axioms(),
        "theorems": env.show_theorems(),
        "defEquations": env.show_def_equations(),
        "definitions": env.show_definitions(),
        "rules": rules,
    })))
}

async fn log(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let shared = state.session(&id)?;
    let s = shared.read().expect("session poisoned");
    Ok(Json(json!({
        "log": s.log(),
        "lines": s.proof.render_log(),
    })))
}

async fn command(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult {
    let cmd: Command = body(&bytes)?;
    let shared = state.session(&id)?;
    let result = tokio::task::spawn_blocking(move || {
        shared.write().expect("session poisoned").execute(&cmd)
    })
    .await
    .map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(to_value(&result))
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let shared = state.session(&id)?;
    let mut s = shared.write().expect("session poisoned");
    Ok(to_value(&s.execute(&Command {
        name: "Undo".into(),
        args: vec![],
    })))
}

#[derive(Deserialize)]
struct NameBody {
    name: String,
}

async fn save(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult {
    let NameBody { name } = body(&bytes)?;
    let shared = state.session(&id)?;
    let mut s = shared.write().expect("session poisoned");
    Ok(to_value(&s.execute(&Command {
        name: "Save".into(),
        args: vec![name.as_str().into()],
    })))
}

async fn theorem(State(state): State<Arc<AppState>>, Path(name): Path<String>) -> ApiResult {
    let path = theorem_path(&state.theory_dir, &name).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let file = TheoremFile::read(&path).map_err(|e| ApiError::not_found(e.to_string()))?;
    Ok(to_value(&file))
}

#[derive(Deserialize)]
struct CheckBody {
    #[serde(default)]
    names: Option<Vec<String>>,
}

async fn check(State(state): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let CheckBody { names } = body(&bytes)?;
    let dir = state.theory_dir.clone();
    let report = tokio::task::spawn_blocking(move || {
        let names = match names {
            Some(n) => n,
            None => theory_names(&dir).unwrap_or_default(),
        };
        check_theory(&dir, &names)
    })
    .await
    .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let results: Vec<Value> = report
        .results
        .iter()
        .map(|(name, verdict)| json!({ "name": name, "verdict": verdict }))
        .collect();
    Ok(Json(json!({ "passed": report.passed, "results": results })))
}

#[derive(Deserialize)]
struct AutoBody {
    formula: String,
}

async fn auto(bytes: Bytes) -> ApiResult {
    let AutoBody { formula } = body(&bytes)?;
    let report = tokio::task::spawn_blocking(move || {
        let goal = ndkernel::environment::ProofEnvironment::default()
            .parse(&formula)
            .map_err(|e| e.to_string())?;
        auto_report(&goal).map_err(|e| e.to_string())
    })
    .await
    .map_err(|e| ApiError::bad_request(e.to_string()))?;
    match report {
        Ok(r) => Ok(to_value(&r)),
        Err(e) => Err(ApiError::bad_request(e)),
    }
}
