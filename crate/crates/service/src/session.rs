//! One interactive game: the board, the human's side, and the engine strategy.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use nrow_core::board::ConfigError;
use nrow_core::transcript::{move_line, Transcript};
use nrow_core::{
    strategy_by_name, GameConfig, GameState, Mode, Move, MoveError, PlayerColor, Point, RngState, Schedule, Segment,
    Strategy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Maker,
    Breaker,
}

impl Side {
    pub fn color(self) -> PlayerColor {
        match self {
            Side::Maker => PlayerColor::Red,
            Side::Breaker => PlayerColor::Blue,
        }
    }

    pub fn of(color: PlayerColor) -> Side {
        match color {
            PlayerColor::Red => Side::Maker,
            PlayerColor::Blue => Side::Breaker,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    HumanWon,
    EngineWon,
    MakerWon,
    Capped,
}

fn default_schedule() -> String {
    "identity".to_string()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateGame {
    pub n: usize,
    #[serde(default = "default_schedule")]
    pub schedule: String,
    pub human_side: Side,
    pub engine: String,
    pub seed: u64,
    /// `MB` (default) or `TW`.
    #[serde(default)]
    pub mode: Option<String>,
    /// Turn after which an undecided game is reported as capped.
    #[serde(default)]
    pub cap: Option<usize>,
}

/// Everything about a session that the transcript does not record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionMeta {
    pub game_id: String,
    pub human_side: Side,
    pub engine: String,
    pub seed: u64,
    pub cap: Option<usize>,
    pub created_at: u64,
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Rejected(MoveError),
    #[error("{0}")]
    NotYourTurn(String),
    #[error("no game with id {0:?}")]
    UnknownGame(String),
    #[error("{0}")]
    Internal(String),
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::Rejected(MoveError::GameOver) => "not_your_turn",
            ServiceError::Rejected(e) => e.code(),
            ServiceError::NotYourTurn(_) => "not_your_turn",
            ServiceError::UnknownGame(_) => "unknown_game",
            ServiceError::Internal(_) => "internal",
        }
    }

    pub fn point(&self) -> Option<Point> {
        match self {
            ServiceError::Rejected(e) => e.point(),
            _ => None,
        }
    }
}

impl From<ConfigError> for ServiceError {
    fn from(e: ConfigError) -> Self {
        ServiceError::BadRequest(e.to_string())
    }
}

pub struct Session {
    pub meta: SessionMeta,
    state: GameState,
    engine: Mutex<Box<dyn Strategy>>,
    last_engine_move: Option<Vec<Point>>,
}

impl std::fmt::Debug for Session {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Session")
            .field("meta", &self.meta)
            .field("turn", &self.state.turn())
            .finish_non_exhaustive()
    }
}

fn engine_for(name: &str) -> Result<Box<dyn Strategy>, ServiceError> {
    strategy_by_name(name).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

impl Session {
    /// Starts a game and plays the engine's opening move when it moves first.
    /// Returns the session and the engine moves played.
    pub fn create(req: &CreateGame, game_id: String, created_at: u64) -> Result<(Session, Vec<Move>), ServiceError> {
        let schedule: Schedule = req
            .schedule
            .parse()
            .map_err(|e| ServiceError::BadRequest(format!("schedule: {e}")))?;
        let mode = match &req.mode {
            None => Mode::MakerBreaker,
            Some(m) => m.parse().map_err(ServiceError::BadRequest)?,
        };
        if req.cap == Some(0) {
            return Err(ServiceError::BadRequest("cap must be at least 1".into()));
        }
        let config = GameConfig::new(req.n, schedule, mode)?;
        let mut session = Session {
            meta: SessionMeta {
                game_id,
                human_side: req.human_side,
                engine: req.engine.clone(),
                seed: req.seed,
                cap: req.cap,
                created_at,
            },
            state: GameState::new(config),
            engine: Mutex::new(engine_for(&req.engine)?),
            last_engine_move: None,
        };
        let played = session.advance()?;
        Ok((session, played))
    }

    /// Rebuilds a session from its metadata and transcript. Engine private
    /// state is recovered from the public history.
    pub fn restore(meta: SessionMeta, transcript: &Transcript) -> Result<Session, ServiceError> {
        let state = transcript
            .replay()
            .map_err(|e| ServiceError::Internal(format!("replaying {}: {e}", meta.game_id)))?;
        let mut engine = engine_for(&meta.engine)?;
        engine.observe(&state);
        let engine_color = meta.human_side.color().other();
        let last_engine_move = state
            .history()
            .iter()
            .rev()
            .find(|m| m.player == engine_color)
            .map(|m| m.points.clone());
        Ok(Session {
            meta,
            state,
            engine: Mutex::new(engine),
            last_engine_move,
        })
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn last_engine_move(&self) -> Option<&[Point]> {
        self.last_engine_move.as_deref()
    }

    fn capped(&self) -> bool {
        !self.state.is_over() && self.meta.cap.is_some_and(|cap| self.state.turn() > cap)
    }

    pub fn status(&self) -> Status {
        match self.state.winner() {
            Some(w) => match self.state.config().mode {
                Mode::MakerBreaker => Status::MakerWon,
                Mode::TwoWinner if w.color == self.meta.human_side.color() => Status::HumanWon,
                Mode::TwoWinner => Status::EngineWon,
            },
            None if self.capped() => Status::Capped,
            None => Status::Ongoing,
        }
    }

    pub fn winner(&self) -> Option<Side> {
        self.state.winner().map(|w| Side::of(w.color))
    }

    pub fn win_segment(&self) -> Option<Segment> {
        self.state.winner().map(|w| w.segment)
    }

    /// Quota of the next turn, if the game continues.
    pub fn quota_next(&self) -> Option<usize> {
        (self.status() == Status::Ongoing).then(|| self.state.quota())
    }

    fn advance(&mut self) -> Result<Vec<Move>, ServiceError> {
        let engine_color = self.meta.human_side.color().other();
        let mut played = Vec::new();
        while self.status() == Status::Ongoing && self.state.to_move() == engine_color {
            let turn = self.state.turn();
            let quota = self.state.quota();
            let mut rng = RngState::for_turn(self.meta.seed, turn);
            let state = &self.state;
            let points = self
                .engine
                .get_mut()
                .unwrap_or_else(|e| e.into_inner())
                .choose(state, quota, &mut rng);
            self.state.apply_move(points.clone()).map_err(|e| {
                ServiceError::Internal(format!("engine {} played an illegal move: {e}", self.meta.engine))
            })?;
            let state = &self.state;
            self.engine.get_mut().unwrap_or_else(|e| e.into_inner()).observe(state);
            self.last_engine_move = Some(points);
            played.push(self.state.history().last().expect("move applied").clone());
        }
        Ok(played)
    }

    /// Applies the human's move and the engine's reply. Returns every move
    /// played, the human's first. A rejected move leaves the session unchanged.
    pub fn submit(&mut self, points: Vec<Point>) -> Result<Vec<Move>, ServiceError> {
        if self.status() != Status::Ongoing {
            return Err(ServiceError::NotYourTurn("the game is over".into()));
        }
        if self.state.to_move() != self.meta.human_side.color() {
            return Err(ServiceError::NotYourTurn("it is the engine's turn".into()));
        }
        self.state.apply_move(points).map_err(ServiceError::Rejected)?;
        let state = &self.state;
        self.engine.get_mut().unwrap_or_else(|e| e.into_inner()).observe(state);
        let mut played = vec![self.state.history().last().expect("move applied").clone()];
        played.extend(self.advance()?);
        Ok(played)
    }

    pub fn transcript_lines(moves: &[Move]) -> String {
        moves.iter().map(|m| move_line(m) + "\n").collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(n: usize, side: Side, engine: &str) -> CreateGame {
        CreateGame {
            n,
            schedule: default_schedule(),
            human_side: side,
            engine: engine.into(),
            seed: 9,
            mode: None,
            cap: None,
        }
    }

    #[test]
    fn human_maker_waits_for_first_move() {
        let (s, played) = Session::create(&req(6, Side::Maker, "line_spoil"), "g".into(), 0).unwrap();
        assert!(played.is_empty());
        assert_eq!(s.state().turn(), 1);
        assert_eq!(s.quota_next(), Some(1));
    }

    #[test]
    fn engine_maker_opens() {
        let (s, played) = Session::create(&req(6, Side::Breaker, "sprint"), "g".into(), 0).unwrap();
        assert_eq!(played.len(), 1);
        assert_eq!(played[0].points.len(), 1);
        assert_eq!(s.state().turn(), 2);
        assert_eq!(s.last_engine_move().map(|m| m.len()), Some(1));
    }

    #[test]
    fn rejections_leave_state_untouched() {
        let (mut s, _) = Session::create(&req(6, Side::Maker, "line_spoil"), "g".into(), 0).unwrap();
        let err = s.submit(vec![Point::ORIGIN, Point::new(1, 0)]).unwrap_err();
        assert_eq!(err.code(), "wrong_count");
        assert_eq!(s.state().turn(), 1);
        let played = s.submit(vec![Point::ORIGIN]).unwrap();
        assert_eq!(played.len(), 2);
        assert_eq!(played[1].points.len(), 2);
        let taken = played[1].points[0];
        let err = s
            .submit(vec![taken, Point::new(50, 50), Point::new(51, 50)])
            .unwrap_err();
        assert_eq!(err.code(), "occupied");
        assert_eq!(err.point(), Some(taken));
    }

    #[test]
    fn invalid_requests() {
        assert_eq!(
            Session::create(&req(0, Side::Maker, "fill"), "g".into(), 0)
                .unwrap_err()
                .code(),
            "bad_request"
        );
        assert_eq!(
            Session::create(&req(5, Side::Maker, "nope"), "g".into(), 0)
                .unwrap_err()
                .code(),
            "bad_request"
        );
    }
}
