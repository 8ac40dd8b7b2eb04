//! HTTP service: live Monty Hall sessions plus stateless solver endpoints.
//!
//! Bodies and responses are JSON. Rationals travel as `"a/b"` strings,
//! doors as integers 1 to 3, actions as `"hold"` / `"switch"`. Errors are
//! `{"error": {"code", "message"}}` with codes `wrong-phase`,
//! `invalid-door`, `invalid-distribution`, `parse-error` and `not-found`.

pub mod error;
pub mod session;
pub mod spec;

use std::collections::HashMap;
use std::future::Future;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use montyhall_core::game::Action;
use montyhall_core::matrix::{eliminate_dominated, MatrixDocument, PayoffMatrix};
use montyhall_core::report::{self, FamilyReport, NashProfileReport, NashReport, ReductionReport, ZeroSumReport};
use montyhall_core::solvers::{enumerate_nash_supports, fully_supported_equilibria, solve_zero_sum, BehavioralHost};

pub use error::ApiError;
use session::{Advice, FinalResponse, PickResponse, Session, SessionView, StatsView, Transcript};

#[derive(Clone, Debug)]
pub struct Config {
    /// Sessions untouched for this long are dropped.
    pub idle_timeout: Duration,
    /// Directory served for every path outside the API.
    pub static_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            idle_timeout: Duration::from_secs(30 * 60),
            static_dir: None,
        }
    }
}

type SessionHandle = Arc<Mutex<Session>>;

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, SessionHandle>>>,
    config: Arc<Config>,
}

impl AppState {
    pub fn new(config: Config) -> AppState {
        AppState {
            sessions: Arc::default(),
            config: Arc::new(config),
        }
    }

    pub fn session_count(&self) -> usize {
        self.sessions.read().expect("session map").len()
    }

    /// Drops sessions idle for longer than the configured timeout.
    pub fn purge_idle(&self, now: Instant) -> usize {
        let timeout = self.config.idle_timeout;
        let mut map = self.sessions.write().expect("session map");
        let before = map.len();
        map.retain(|_, s| {
            // A session that is mid-request is in use, hence not idle.
            s.try_lock()
                .map_or(true, |s| now.saturating_duration_since(s.last_used()) < timeout)
        });
        before - map.len()
    }

    fn insert(&self, session: Session) {
        let id = session.id().to_string();
        self.sessions
            .write()
            .expect("session map")
            .insert(id, Arc::new(Mutex::new(session)));
    }

    /// Runs `f` with exclusive access to one session.
    fn with_session<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let handle = self
            .sessions
            .read()
            .expect("session map")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))?;
        let mut session = handle.lock().expect("session lock");
        session.touch();
        f(&mut session)
    }
}

pub fn router(state: AppState) -> Router {
    let api = Router::new()
        .route("/health", get(health))
        .route("/matrix", get(matrix))
        .route("/matrix/reduced", get(matrix_reduced))
        .route("/solve/zerosum", post(solve_zerosum))
        .route("/solve/bayes", post(solve_bayes))
        .route("/solve/nash", post(solve_nash))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/pick", post(pick))
        .route("/sessions/{id}/advice", get(advice))
        .route("/sessions/{id}/final", post(final_choice))
        .route("/sessions/{id}/next", post(next_round))
        .route("/sessions/{id}/stats", get(stats))
        .route("/sessions/{id}/transcript", get(transcript));
    let api = match &state.config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    api.with_state(state)
}

/// Serves on `listener` until `shutdown` completes, sweeping idle
/// sessions once a minute.
pub async fn serve(
    listener: tokio::net::TcpListener,
    config: Config,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    let state = AppState::new(config);
    let sweeper = state.clone();
    let sweep = tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.purge_idle(Instant::now());
        }
    });
    let result = axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await;
    sweep.abort();
    result
}

fn body_json(body: &Bytes) -> Result<Value, ApiError> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(json!({}));
    }
    Ok(serde_json::from_slice(body)?)
}

fn field<'a>(body: &'a Value, name: &str) -> Option<&'a Value> {
    body.get(name).filter(|v| !v.is_null())
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok" }))
}

async fn matrix() -> Json<MatrixDocument> {
    Json(PayoffMatrix::build().to_document())
}

async fn matrix_reduced() -> Json<ReductionReport> {
    Json((&eliminate_dominated(&PayoffMatrix::build())).into())
}

/// Solves the zero-sum game on the full matrix, or on an optional
/// `{"matrix": ...}` restriction of it.
async fn solve_zerosum(body: Bytes) -> Result<Json<ZeroSumReport>, ApiError> {
    let body = body_json(&body)?;
    let m = match field(&body, "matrix") {
        Some(doc) => PayoffMatrix::from_document(serde_json::from_value(doc.clone())?)?,
        None => PayoffMatrix::build(),
    };
    Ok(Json((&solve_zero_sum(&m)?).into()))
}

/// `{"host": ...}` or the host fields inline, e.g. `{"pi": ..., "lambda": ...}`.
async fn solve_bayes(body: Bytes) -> Result<Json<report::BayesReport>, ApiError> {
    let body = body_json(&body)?;
    let host = spec::host_of(field(&body, "host").unwrap_or(&body))?;
    Ok(Json(report::bayes_report(&host)?))
}

/// `{"h": ..., "fully_supported_only": bool}`.
async fn solve_nash(body: Bytes) -> Result<Json<NashReport>, ApiError> {
    let body = body_json(&body)?;
    let h = spec::host_matrix_of(
        field(&body, "h").ok_or_else(|| ApiError::parse("missing Monte's payoff matrix \"h\""))?,
    )?;
    let families_only = field(&body, "fully_supported_only")
        .map(|v| v.as_bool().ok_or_else(|| ApiError::parse("fully_supported_only must be a boolean")))
        .transpose()?
        .unwrap_or(false);
    let report = tokio::task::spawn_blocking(move || NashReport {
        equilibria: (!families_only).then(|| {
            enumerate_nash_supports(&h)
                .iter()
                .map(NashProfileReport::from)
                .collect()
        }),
        fully_supported: fully_supported_equilibria(&h)
            .iter()
            .map(FamilyReport::from)
            .collect(),
    })
    .await
    .map_err(|e| ApiError::new(axum::http::StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?;
    Ok(Json(report))
}

#[derive(Deserialize)]
struct CreateRequest {
    #[serde(default)]
    host: Option<Value>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    h: Option<Value>,
}

/// `{"host": ..., "seed": n, "h": ...}`, all optional. The default host
/// hides uniformly and offers either door with probability 1/2.
async fn create_session(
    State(state): State<AppState>,
    body: Bytes,
) -> Result<(axum::http::StatusCode, Json<SessionView>), ApiError> {
    let request: CreateRequest = serde_json::from_value(body_json(&body)?)?;
    let host = match &request.host {
        Some(spec) => spec::host_of(spec)?,
        None => BehavioralHost::uniform(montyhall_core::rational::ratio(1, 2))?,
    };
    let h = request.h.as_ref().map(spec::host_matrix_of).transpose()?;
    let seed = request.seed.unwrap_or_else(rand::random);
    let id = format!("{:032x}", rand::random::<u128>());
    state.purge_idle(Instant::now());
    let session = Session::new(id, host, seed, h);
    let view = session.view();
    state.insert(session);
    Ok((axum::http::StatusCode::CREATED, Json(view)))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    state.with_session(&id, |s| Ok(Json(s.view())))
}

#[derive(Deserialize)]
struct PickRequest {
    door: i64,
}

async fn pick(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<PickResponse>, ApiError> {
    let request: PickRequest = serde_json::from_value(body_json(&body)?)?;
    state.with_session(&id, |s| s.pick(request.door).map(Json))
}

async fn advice(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Advice>, ApiError> {
    state.with_session(&id, |s| s.advice().map(Json))
}

#[derive(Deserialize)]
struct FinalRequest {
    action: String,
}

async fn final_choice(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<FinalResponse>, ApiError> {
    let request: FinalRequest = serde_json::from_value(body_json(&body)?)?;
    let action: Action = request.action.parse()?;
    state.with_session(&id, |s| s.finish(action).map(Json))
}

async fn next_round(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    state.with_session(&id, |s| s.next_round().map(Json))
}

async fn stats(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<StatsView>, ApiError> {
    state.with_session(&id, |s| Ok(Json(s.stats_view())))
}

async fn transcript(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Transcript>, ApiError> {
    state.with_session(&id, |s| Ok(Json(s.transcript())))
}
