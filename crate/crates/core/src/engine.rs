//! Game loop with per-turn diagnostics.
//!
//! The diagnostics follow the line cover: at time t (just before turn t is
//! played), `a_r_t(r)` counts the good lines holding at least r red points and
//! `l_t` is the largest red count on a good line. When the Breaker keeps its
//! own ledger (the line-spoiling Breaker) its spoiled flags define "good";
//! otherwise every line is good.

use serde::Serialize;
use thiserror::Error;

use crate::board::{GameConfig, GameState, Move, MoveError, Winner};
use crate::cover::LineLedger;
use crate::geom::{PlayerColor, Segment};
use crate::rng::RngState;
use crate::strategy::{strategy_by_name, Strategy, UnknownStrategy};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    UnknownStrategy(#[from] UnknownStrategy),
    #[error("turn cap must be at least 1")]
    InvalidCap,
    #[error("strategy {strategy} produced an illegal move at turn {turn}: {source}")]
    StrategyBug {
        strategy: String,
        turn: usize,
        source: MoveError,
    },
}

/// Diagnostics at time `turn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snapshot {
    pub turn: usize,
    pub l_t: usize,
    /// `(r, |A_r^t|)` for each requested threshold.
    pub a_r: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameRecord {
    pub config: GameConfig,
    pub maker: String,
    pub breaker: String,
    pub seed: u64,
    /// Turn of Maker's winning move.
    pub win_time: Option<usize>,
    pub win_segment: Option<Segment>,
    /// Set in two-winner games that Blue won.
    pub winner: Option<Winner>,
    pub timeline: Vec<Snapshot>,
    pub truncated_at: Option<usize>,
    pub moves: Vec<Move>,
}

impl GameRecord {
    /// Largest L_t over the timeline.
    pub fn max_l(&self) -> usize {
        self.timeline.iter().map(|s| s.l_t).max().unwrap_or(0)
    }

    pub fn snapshot_at(&self, turn: usize) -> Option<&Snapshot> {
        self.timeline.iter().find(|s| s.turn == turn)
    }

    pub fn transcript(&self) -> String {
        crate::transcript::write_transcript(&self.config, &self.moves)
    }
}

/// Largest red count over good lines.
pub fn l_t(ledger: &LineLedger) -> usize {
    ledger.max_good_red()
}

/// Number of good lines with at least `r` red points.
pub fn a_r_t(ledger: &LineLedger, r: usize) -> usize {
    ledger.count_lines_with_red_at_least(r)
}

fn snapshot(turn: usize, ledger: &LineLedger, thresholds: &[usize]) -> Snapshot {
    Snapshot {
        turn,
        l_t: l_t(ledger),
        a_r: thresholds.iter().map(|&r| (r, a_r_t(ledger, r))).collect(),
    }
}

pub fn play_game(
    config: &GameConfig,
    maker: &str,
    breaker: &str,
    seed: u64,
    cap: usize,
) -> Result<GameRecord, EngineError> {
    play_game_with(config, maker, breaker, seed, cap, &[])
}

/// Plays `maker` (Red) against `breaker` (Blue) until a win or until turn
/// `cap` has been played. Turn t draws from `RngState::for_turn(seed, t)`.
pub fn play_game_with(
    config: &GameConfig,
    maker: &str,
    breaker: &str,
    seed: u64,
    cap: usize,
    thresholds: &[usize],
) -> Result<GameRecord, EngineError> {
    let maker_strategy = strategy_by_name(maker)?;
    let breaker_strategy = strategy_by_name(breaker)?;
    play_with_strategies(config, maker_strategy, breaker_strategy, seed, cap, thresholds)
}

pub fn play_with_strategies(
    config: &GameConfig,
    mut maker: Box<dyn Strategy>,
    mut breaker: Box<dyn Strategy>,
    seed: u64,
    cap: usize,
    thresholds: &[usize],
) -> Result<GameRecord, EngineError> {
    if cap == 0 {
        return Err(EngineError::InvalidCap);
    }
    let mut state = GameState::new(*config);
    breaker.observe(&state);
    let breaker_ledger = breaker.ledger().is_some();
    let mut own_ledger = LineLedger::new(config.n);
    let mut timeline = vec![snapshot(1, &own_ledger, thresholds)];

    while !state.is_over() && state.turn() <= cap {
        let turn = state.turn();
        let quota = state.quota();
        let mut rng = RngState::for_turn(seed, turn);
        let strategy = match state.to_move() {
            PlayerColor::Red => &mut maker,
            PlayerColor::Blue => &mut breaker,
        };
        let points = strategy.choose(&state, quota, &mut rng);
        state.apply_move(points).map_err(|source| EngineError::StrategyBug {
            strategy: strategy.name().to_string(),
            turn,
            source,
        })?;
        maker.observe(&state);
        breaker.observe(&state);
        let ledger = if breaker_ledger {
            breaker.ledger().expect("breaker keeps a ledger")
        } else {
            let mv = state.history().last().expect("move just applied");
            for &p in &mv.points {
                own_ledger.on_claim(p, mv.player);
            }
            &own_ledger
        };
        timeline.push(snapshot(state.turn(), ledger, thresholds));
    }

    let winner = state.winner().copied();
    let red_win = winner.filter(|w| w.color == PlayerColor::Red);
    Ok(GameRecord {
        config: *config,
        maker: maker.name().to_string(),
        breaker: breaker.name().to_string(),
        seed,
        win_time: red_win.map(|w| w.turn),
        win_segment: red_win.map(|w| w.segment),
        winner,
        timeline,
        truncated_at: winner.is_none().then_some(cap),
        moves: state.history().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Schedule;
    use crate::geom::Point;

    fn identity(n: usize) -> GameConfig {
        GameConfig::maker_breaker(n, Schedule::identity()).unwrap()
    }

    #[test]
    fn sprint_against_fill_wins_at_five() {
        for seed in [0, 1, 77] {
            let rec = play_game(&identity(5), "sprint", "fill", seed, 100).unwrap();
            assert_eq!(rec.win_time, Some(5));
            assert_eq!(rec.truncated_at, None);
        }
    }

    #[test]
    fn n_one_is_won_at_turn_one() {
        for maker in ["sprint", "greedy", "random", "fill"] {
            for breaker in ["direction", "line_spoil", "fill"] {
                let rec = play_game(&identity(1), maker, breaker, 5, 10).unwrap();
                assert_eq!(rec.win_time, Some(1), "{maker} vs {breaker}");
            }
        }
    }

    #[test]
    fn cap_truncates() {
        let rec = play_game(&identity(50), "random", "direction", 3, 4).unwrap();
        assert_eq!(rec.win_time, None);
        assert_eq!(rec.truncated_at, Some(4));
        assert_eq!(rec.moves.len(), 4);
        assert_eq!(rec.timeline.len(), 5);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            play_game(&identity(5), "nope", "fill", 1, 10),
            Err(EngineError::UnknownStrategy(_))
        ));
        assert!(matches!(
            play_game(&identity(5), "sprint", "fill", 1, 0),
            Err(EngineError::InvalidCap)
        ));
    }

    struct Cheater;
    impl Strategy for Cheater {
        fn name(&self) -> &'static str {
            "cheater"
        }
        fn choose(&mut self, _s: &GameState, quota: usize, _r: &mut RngState) -> Vec<Point> {
            vec![Point::ORIGIN; quota]
        }
    }

    #[test]
    fn illegal_strategy_output_is_reported() {
        let err = play_with_strategies(
            &identity(5),
            strategy_by_name("sprint").unwrap(),
            Box::new(Cheater),
            1,
            10,
            &[],
        )
        .unwrap_err();
        match err {
            EngineError::StrategyBug { strategy, turn, .. } => {
                assert_eq!(strategy, "cheater");
                assert_eq!(turn, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diagnostics_after_first_red_point() {
        let rec = play_game_with(&identity(20), "greedy", "fill", 1, 1, &[1, 2]).unwrap();
        let snap = rec.snapshot_at(2).unwrap();
        assert_eq!(snap.l_t, 1);
        assert_eq!(snap.a_r, vec![(1, 8), (2, 0)]);
        assert_eq!(rec.snapshot_at(1).unwrap().l_t, 0);
    }

    #[test]
    fn l_t_sees_a_full_row() {
        let mut ledger = LineLedger::new(6);
        for x in 0..6 {
            ledger.on_claim(Point::new(x, 3), PlayerColor::Red);
        }
        assert_eq!(l_t(&ledger), 6);
        assert_eq!(a_r_t(&ledger, 6), 2);
    }
}
