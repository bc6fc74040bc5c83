//! JSON endpoints: `POST /games`, `POST /games/{id}/moves`, `GET /games/{id}`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use nrow_core::{LineDir4, Move, Point, Segment};

use crate::session::{CreateGame, ServiceError, Session, Side, Status};
use crate::store::Store;

type Shared = Arc<RwLock<Session>>;

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Shared>>>,
    store: Option<Store>,
}

impl AppState {
    pub fn in_memory() -> AppState {
        AppState::default()
    }

    /// Persists sessions under `store` and restores the ones already there.
    /// Returns the state and a description of every entry that failed to load.
    pub fn persistent(store: Store) -> (AppState, Vec<String>) {
        let (sessions, problems) = store.load_all();
        let map = sessions
            .into_iter()
            .map(|s| (s.meta.game_id.clone(), Arc::new(RwLock::new(s))))
            .collect();
        let state = AppState {
            sessions: Arc::new(RwLock::new(map)),
            store: Some(store),
        };
        (state, problems)
    }

    pub fn game_count(&self) -> usize {
        self.sessions.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    fn session(&self, id: &str) -> Result<Shared, ServiceError> {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownGame(id.to_string()))
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(submit_move))
        .with_state(state)
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::BadRequest(_) | ServiceError::Rejected(_) => StatusCode::BAD_REQUEST,
            ServiceError::NotYourTurn(_) => StatusCode::CONFLICT,
            ServiceError::UnknownGame(_) => StatusCode::NOT_FOUND,
            ServiceError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let mut body = json!({ "error": self.code(), "detail": self.to_string() });
        if let Some(p) = self.point() {
            body["point"] = json!([p.x, p.y]);
        }
        (status, Json(body)).into_response()
    }
}

fn xy(p: &Point) -> [i64; 2] {
    [p.x, p.y]
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SegmentView {
    start: [i64; 2],
    dir: LineDir4,
    len: usize,
    points: Vec<[i64; 2]>,
}

impl From<Segment> for SegmentView {
    fn from(s: Segment) -> Self {
        SegmentView {
            start: xy(&s.start),
            dir: s.dir,
            len: s.len,
            points: s.points().map(|p| xy(&p)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct MoveView {
    t: usize,
    player: Side,
    points: Vec<[i64; 2]>,
}

impl From<&Move> for MoveView {
    fn from(m: &Move) -> Self {
        MoveView {
            t: m.turn,
            player: Side::of(m.player),
            points: m.points.iter().map(xy).collect(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StateView {
    game_id: String,
    n: usize,
    schedule: String,
    mode: &'static str,
    human_side: Side,
    engine: String,
    seed: u64,
    cap: Option<usize>,
    t: usize,
    to_move: Side,
    quota_next: Option<usize>,
    status: Status,
    winner: Option<Side>,
    win_segment: Option<SegmentView>,
    cells: Vec<(i64, i64, char)>,
    history: Vec<MoveView>,
    last_engine_move: Option<Vec<[i64; 2]>>,
}

impl StateView {
    fn of(s: &Session) -> StateView {
        let state = s.state();
        let config = state.config();
        StateView {
            game_id: s.meta.game_id.clone(),
            n: config.n,
            schedule: config.schedule.to_string(),
            mode: config.mode.tag(),
            human_side: s.meta.human_side,
            engine: s.meta.engine.clone(),
            seed: s.meta.seed,
            cap: s.meta.cap,
            t: state.turn(),
            to_move: Side::of(state.to_move()),
            quota_next: s.quota_next(),
            status: s.status(),
            winner: s.winner(),
            win_segment: s.win_segment().map(SegmentView::from),
            cells: state
                .sorted_cells()
                .into_iter()
                .map(|(p, c)| (p.x, p.y, c.letter()))
                .collect(),
            history: state.history().iter().map(MoveView::from).collect(),
            last_engine_move: s.last_engine_move().map(|m| m.iter().map(xy).collect()),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubmitView {
    accepted: bool,
    t: usize,
    engine_move: Option<Vec<[i64; 2]>>,
    status: Status,
    winner: Option<Side>,
    win_segment: Option<SegmentView>,
    quota_next: Option<usize>,
}

#[derive(Deserialize)]
struct SubmitBody {
    points: Vec<[i64; 2]>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ServiceError> {
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(format!("invalid request body: {e}")))
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ServiceError> + Send + 'static,
) -> Result<T, ServiceError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ServiceError::Internal(format!("worker failed: {e}")))?
}

fn persist_error(e: std::io::Error) -> ServiceError {
    ServiceError::Internal(format!("could not persist the game: {e}"))
}

async fn create_game(State(app): State<AppState>, body: Bytes) -> Result<Response, ServiceError> {
    let req: CreateGame = parse_json(&body)?;
    let view = blocking(move || {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let (session, played) = Session::create(&req, id.clone(), created_at)?;
        if let Some(store) = &app.store {
            store
                .create(
                    &session.meta,
                    session.state().config(),
                    &Session::transcript_lines(&played),
                )
                .map_err(persist_error)?;
        }
        let view = StateView::of(&session);
        app.sessions
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(id, Arc::new(RwLock::new(session)));
        Ok(view)
    })
    .await?;
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<StateView>, ServiceError> {
    let shared = app.session(&id)?;
    let session = shared.read().unwrap_or_else(|e| e.into_inner());
    Ok(Json(StateView::of(&session)))
}

async fn submit_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<SubmitView>, ServiceError> {
    let shared = app.session(&id)?;
    let SubmitBody { points } = parse_json(&body)?;
    let points: Vec<Point> = points.into_iter().map(|[x, y]| Point::new(x, y)).collect();
    let view = blocking(move || {
        let mut session = shared.write().unwrap_or_else(|e| e.into_inner());
        let played = session.submit(points)?;
        if let Some(store) = &app.store {
            store
                .append(&id, &Session::transcript_lines(&played))
                .map_err(persist_error)?;
        }
        let engine_color = session.meta.human_side.color().other();
        let engine_move = played
            .iter()
            .rev()
            .find(|m| m.player == engine_color)
            .map(|m| m.points.iter().map(xy).collect());
        Ok(SubmitView {
            accepted: true,
            t: session.state().turn(),
            engine_move,
            status: session.status(),
            winner: session.winner(),
            win_segment: session.win_segment().map(SegmentView::from),
            quota_next: session.quota_next(),
        })
    })
    .await?;
    Ok(Json(view))
}

/// Serves the API on `addr` until the process is stopped.
pub async fn serve(addr: &str, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}
