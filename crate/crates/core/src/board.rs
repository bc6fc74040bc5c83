//! Game configuration, turn schedules, move application and win detection.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{LineDir4, PlayerColor, Point, Segment};
use crate::runs::RunIndex;
use crate::spiral::spiral_point;

/// Number of points claimed per turn, affine in the turn index per parity:
/// `quota(2t) = even_a*t + even_b` and `quota(2t+1) = odd_a*t + odd_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Schedule {
    pub even_a: usize,
    pub even_b: usize,
    pub odd_a: usize,
    pub odd_c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("turn index must be at least 1, got {0}")]
    InvalidTurn(usize),
    #[error("maker quota is zero on every turn; the game could never end")]
    MakerNeverMoves,
    #[error("cannot parse schedule {0:?}: expected identity, const:K or A,B,C,D")]
    Parse(String),
}

impl Schedule {
    pub const fn new(even_a: usize, even_b: usize, odd_a: usize, odd_c: usize) -> Self {
        Schedule {
            even_a,
            even_b,
            odd_a,
            odd_c,
        }
    }

    /// Turn `t` claims `t` points.
    pub const fn identity() -> Self {
        Schedule::new(2, 0, 2, 1)
    }

    /// Every turn claims `k` points.
    pub const fn constant(k: usize) -> Self {
        Schedule::new(0, k, 0, k)
    }

    pub fn quota(&self, turn: usize) -> Result<usize, ScheduleError> {
        if turn == 0 {
            return Err(ScheduleError::InvalidTurn(turn));
        }
        Ok(self.quota_unchecked(turn))
    }

    pub(crate) fn quota_unchecked(&self, turn: usize) -> usize {
        if turn.is_multiple_of(2) {
            self.even_a * (turn / 2) + self.even_b
        } else {
            self.odd_a * ((turn - 1) / 2) + self.odd_c
        }
    }

    pub fn validate(&self) -> Result<(), ScheduleError> {
        if self.odd_a == 0 && self.odd_c == 0 {
            return Err(ScheduleError::MakerNeverMoves);
        }
        Ok(())
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.even_a, self.even_b, self.odd_a, self.odd_c)
    }
}

impl FromStr for Schedule {
    type Err = ScheduleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScheduleError::Parse(s.to_string());
        if s == "identity" {
            return Ok(Schedule::identity());
        }
        if let Some(k) = s.strip_prefix("const:") {
            return k.trim().parse().map(Schedule::constant).map_err(|_| bad());
        }
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match parts[..] {
            [a, b, c, d] => Ok(Schedule::new(a, b, c, d)),
            _ => Err(bad()),
        }
    }
}

/// Sum of Maker's quotas over odd turns `s <= turn`.
pub fn cumulative_maker_quota(schedule: &Schedule, turn: usize) -> usize {
    (1..=turn).step_by(2).map(|s| schedule.quota_unchecked(s)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Only Red can win; Blue wins by preventing it.
    MakerBreaker,
    /// Whoever first completes a winning set wins.
    TwoWinner,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::MakerBreaker => "MB",
            Mode::TwoWinner => "TW",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mb" | "maker-breaker" | "makerbreaker" => Ok(Mode::MakerBreaker),
            "tw" | "two-winner" | "twowinner" => Ok(Mode::TwoWinner),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    pub n: usize,
    pub schedule: Schedule,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("winning run length must be at least 1")]
    ZeroLength,
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

impl GameConfig {
    pub fn new(n: usize, schedule: Schedule, mode: Mode) -> Result<Self, ConfigError> {
        if n == 0 {
            return Err(ConfigError::ZeroLength);
        }
        schedule.validate()?;
        Ok(GameConfig { n, schedule, mode })
    }

    pub fn maker_breaker(n: usize, schedule: Schedule) -> Result<Self, ConfigError> {
        Self::new(n, schedule, Mode::MakerBreaker)
    }

    pub fn quota(&self, turn: usize) -> usize {
        self.schedule.quota_unchecked(turn.max(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub turn: usize,
    pub player: PlayerColor,
    pub points: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Winner {
    pub color: PlayerColor,
    pub turn: usize,
    pub segment: Segment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("point {0} is already claimed")]
    Occupied(Point),
    #[error("wrong number of points: expected {expected}, got {given}")]
    WrongCount { expected: usize, given: usize },
    #[error("point {0} appears more than once in the move")]
    Duplicate(Point),
    #[error("the game is already over")]
    GameOver,
}

impl MoveError {
    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            MoveError::Occupied(_) => "occupied",
            MoveError::WrongCount { .. } => "wrong_count",
            MoveError::Duplicate(_) => "duplicate",
            MoveError::GameOver => "game_over",
        }
    }

    pub fn point(&self) -> Option<Point> {
        match self {
            MoveError::Occupied(p) | MoveError::Duplicate(p) => Some(*p),
            _ => None,
        }
    }
}

type RunKey = (i64, i64, LineDir4);

/// A position of the game on the unbounded lattice. Storage is sparse.
#[derive(Clone, Debug)]
pub struct GameState {
    config: GameConfig,
    cells: HashMap<Point, PlayerColor>,
    runs: RunIndex,
    // Per colour: maximal runs of length >= n keyed by their lowest endpoint.
    long_runs: [BTreeMap<RunKey, usize>; 2],
    turn: usize,
    history: Vec<Move>,
    winner: Option<Winner>,
    bbox: Option<(Point, Point)>,
    spiral_floor: u64,
}

impl GameState {
    pub fn new(config: GameConfig) -> Self {
        GameState {
            config,
            cells: HashMap::new(),
            runs: RunIndex::new(),
            long_runs: [BTreeMap::new(), BTreeMap::new()],
            turn: 1,
            history: Vec::new(),
            winner: None,
            bbox: None,
            spiral_floor: 0,
        }
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    /// Index of the next turn to be played.
    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn to_move(&self) -> PlayerColor {
        PlayerColor::for_turn(self.turn)
    }

    pub fn quota(&self) -> usize {
        self.config.quota(self.turn)
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn winner(&self) -> Option<&Winner> {
        self.winner.as_ref()
    }

    pub fn is_over(&self) -> bool {
        self.winner.is_some()
    }

    pub fn color_at(&self, p: Point) -> Option<PlayerColor> {
        self.cells.get(&p).copied()
    }

    pub fn is_claimed(&self, p: Point) -> bool {
        self.cells.contains_key(&p)
    }

    pub fn claimed_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (Point, PlayerColor)> + '_ {
        self.cells.iter().map(|(p, c)| (*p, *c))
    }

    /// Claimed cells ordered by (x, y).
    pub fn sorted_cells(&self) -> Vec<(Point, PlayerColor)> {
        let mut v: Vec<_> = self.cells().collect();
        v.sort();
        v
    }

    /// Bounding box (min corner, max corner) of all claimed cells.
    pub fn bbox(&self) -> Option<(Point, Point)> {
        self.bbox
    }

    /// Smallest spiral index whose point is still unclaimed.
    pub fn spiral_floor(&self) -> u64 {
        self.spiral_floor
    }

    /// Validates and applies the next move. On error the state is unchanged.
    pub fn apply_move(&mut self, points: Vec<Point>) -> Result<(), MoveError> {
        if self.winner.is_some() {
            return Err(MoveError::GameOver);
        }
        let expected = self.quota();
        if points.len() != expected {
            return Err(MoveError::WrongCount {
                expected,
                given: points.len(),
            });
        }
        let mut seen = HashSet::with_capacity(points.len());
        for &p in &points {
            if !seen.insert(p) {
                return Err(MoveError::Duplicate(p));
            }
        }
        if let Some(&p) = points.iter().find(|p| self.cells.contains_key(p)) {
            return Err(MoveError::Occupied(p));
        }

        let mover = self.to_move();
        for &p in &points {
            self.claim(p, mover);
        }
        let turn = self.turn;
        self.history.push(Move {
            turn,
            player: mover,
            points,
        });
        self.turn += 1;
        while self.cells.contains_key(&spiral_point(self.spiral_floor)) {
            self.spiral_floor += 1;
        }

        let can_win = mover == PlayerColor::Red || self.config.mode == Mode::TwoWinner;
        if can_win {
            if let Some(segment) = self.has_win(mover) {
                self.winner = Some(Winner {
                    color: mover,
                    turn,
                    segment,
                });
            }
        }
        Ok(())
    }

    fn claim(&mut self, p: Point, color: PlayerColor) {
        let cells = &self.cells;
        let spans = self.runs.claim(p, color, |q| cells.get(&q).copied());
        self.cells.insert(p, color);
        let n = self.config.n;
        let long = &mut self.long_runs[color.index()];
        for dir in LineDir4::ALL {
            let step = dir.step();
            let span = spans[dir.index()];
            // The runs that were merged are keyed by their old lowest endpoints.
            long.remove(&(span.start.x, span.start.y, dir));
            let after_start = p + step;
            long.remove(&(after_start.x, after_start.y, dir));
            if span.len >= n {
                long.insert((span.start.x, span.start.y, dir), span.len);
            }
        }
        self.bbox = Some(match self.bbox {
            None => (p, p),
            Some((lo, hi)) => (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            ),
        });
    }

    /// The lexicographically least (start.x, start.y, dir) length-n segment fully
    /// owned by `color`, if any. Maintained incrementally by run merging.
    pub fn has_win(&self, color: PlayerColor) -> Option<Segment> {
        self.long_runs[color.index()]
            .keys()
            .next()
            .map(|&(x, y, dir)| Segment::new(Point::new(x, y), dir, self.config.n))
    }
}

/// Exhaustive scan of every length-n window touching a `color` cell.
/// Returns the same segment as [`GameState::has_win`].
pub fn brute_force_win_scan(state: &GameState, color: PlayerColor) -> Option<Segment> {
    let n = state.n();
    let mut best: Option<Segment> = None;
    for (p, c) in state.cells() {
        if c != color {
            continue;
        }
        for dir in LineDir4::ALL {
            let step = dir.step();
            for back in 0..n as i64 {
                let seg = Segment::new(p - step * back, dir, n);
                if seg.points().all(|q| state.color_at(q) == Some(color))
                    && best.is_none_or(|b| seg.tie_key() < b.tie_key())
                {
                    best = Some(seg);
                }
            }
        }
    }
    best
}
