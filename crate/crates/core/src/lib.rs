//! Engine for the accelerated n-in-a-row game on the integer lattice, where
//! the player moving at turn t claims quota(t) points (t points under the
//! identity schedule).
//!
//! The crate contains the board and win detection, the cover of the plane by
//! length-2n lines with its red-count ledger, the compass-direction and
//! line-spoiling Breaker strategies together with a suite of Maker
//! adversaries, a seeded game runner with per-turn diagnostics, an experiment
//! sweep, and an exact small-n solver for the two-winner game.

pub mod board;
pub mod compass;
pub mod cover;
pub mod engine;
pub mod geom;
pub mod rng;
pub mod runs;
pub mod selftest;
pub mod solver;
pub mod spiral;
pub mod strategy;
pub mod sweep;
pub mod transcript;

pub use board::{
    brute_force_win_scan, cumulative_maker_quota, ConfigError, GameConfig, GameState, Mode, Move, MoveError, Schedule,
    ScheduleError, Winner,
};
pub use compass::{compass_of, CompassMap, Direction8, COMPASS_BASE};
pub use cover::{containing_line, line_points, lines_through, spoil_targets, LineId, LineLedger, LineRecord};
pub use engine::{play_game, play_game_with, EngineError, GameRecord, Snapshot};
pub use geom::{LineDir4, PlayerColor, Point, Segment};
pub use rng::RngState;
pub use solver::{solve, verify_variation, Side, SolverError, SolverOptions, SolverVerdict};
pub use strategy::{strategy_by_name, Strategy, STRATEGY_NAMES};
pub use sweep::{run_sweep, SweepRow, SweepSpec};
pub use transcript::{parse_transcript, Transcript};
