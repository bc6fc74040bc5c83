//! Line-oriented game transcripts.
//!
//! ```text
//! n=5 schedule=2,0,2,1 mode=MB
//! t=1 0,0
//! t=2 0,1 1,0
//! ```
//!
//! A zero-quota turn is written as a bare `t=<t>` line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{ConfigError, GameConfig, GameState, Mode, Move, MoveError, Schedule};
use crate::geom::{PlayerColor, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("turn {turn} is illegal: {source}")]
    Illegal { turn: usize, source: MoveError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub config: GameConfig,
    pub moves: Vec<Move>,
}

pub fn header_line(config: &GameConfig) -> String {
    format!("n={} schedule={} mode={}", config.n, config.schedule, config.mode.tag())
}

pub fn move_line(mv: &Move) -> String {
    let mut line = format!("t={}", mv.turn);
    for p in &mv.points {
        let _ = write!(line, " {},{}", p.x, p.y);
    }
    line
}

pub fn write_transcript(config: &GameConfig, moves: &[Move]) -> String {
    let mut out = header_line(config);
    out.push('\n');
    for mv in moves {
        out.push_str(&move_line(mv));
        out.push('\n');
    }
    out
}

impl GameState {
    pub fn to_transcript(&self) -> String {
        write_transcript(self.config(), self.history())
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> TranscriptError {
    TranscriptError::Syntax { line, msg: msg.into() }
}

fn parse_header(line: usize, text: &str) -> Result<GameConfig, TranscriptError> {
    let (mut n, mut schedule, mut mode) = (None, None, None);
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, got {field:?}")))?;
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|e| syntax(line, format!("n: {e}")))?),
            "schedule" => schedule = Some(value.parse::<Schedule>().map_err(|e| syntax(line, e.to_string()))?),
            "mode" => {
                mode = Some(match value {
                    "MB" => Mode::MakerBreaker,
                    "TW" => Mode::TwoWinner,
                    other => return Err(syntax(line, format!("unknown mode {other:?}"))),
                })
            }
            other => return Err(syntax(line, format!("unknown header key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| syntax(line, "missing n"))?;
    let schedule = schedule.ok_or_else(|| syntax(line, "missing schedule"))?;
    let mode = mode.ok_or_else(|| syntax(line, "missing mode"))?;
    Ok(GameConfig::new(n, schedule, mode)?)
}

fn parse_point(line: usize, tok: &str) -> Result<Point, TranscriptError> {
    let (x, y) = tok
        .split_once(',')
        .ok_or_else(|| syntax(line, format!("bad point {tok:?}")))?;
    let x = x.parse().map_err(|_| syntax(line, format!("bad x in {tok:?}")))?;
    let y = y.parse().map_err(|_| syntax(line, format!("bad y in {tok:?}")))?;
    Ok(Point::new(x, y))
}

pub fn parse_transcript(text: &str) -> Result<Transcript, TranscriptError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, htext) = lines.next().ok_or_else(|| syntax(1, "empty transcript"))?;
    let config = parse_header(hline, htext)?;
    let mut moves = Vec::new();
    for (lineno, text) in lines {
        let mut toks = text.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let turn: usize = head
            .strip_prefix("t=")
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(lineno, format!("expected t=<turn>, got {head:?}")))?;
        if turn != moves.len() + 1 {
            return Err(syntax(lineno, format!("expected turn {}, got {turn}", moves.len() + 1)));
        }
        let points = toks
            .map(|tok| parse_point(lineno, tok))
            .collect::<Result<Vec<_>, _>>()?;
        moves.push(Move {
            turn,
            player: PlayerColor::for_turn(turn),
            points,
        });
    }
    Ok(Transcript { config, moves })
}

impl Transcript {
    /// Rebuilds the position by applying every move through [`GameState::apply_move`].
    pub fn replay(&self) -> Result<GameState, TranscriptError> {
        let mut state = GameState::new(self.config);
        for mv in &self.moves {
            state
                .apply_move(mv.points.clone())
                .map_err(|source| TranscriptError::Illegal { turn: mv.turn, source })?;
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_replays() {
        let cfg = GameConfig::maker_breaker(5, Schedule::new(0, 2, 1, 0)).unwrap();
        let mut s = GameState::new(cfg);
        s.apply_move(vec![]).unwrap();
        s.apply_move(vec![Point::new(0, 1), Point::new(-1, 0)]).unwrap();
        let text = s.to_transcript();
        assert_eq!(text, "n=5 schedule=0,2,1,0 mode=MB\nt=1\nt=2 0,1 -1,0\n");
        let back = parse_transcript(&text).unwrap().replay().unwrap();
        assert_eq!(back.sorted_cells(), s.sorted_cells());
        assert_eq!(back.turn(), 3);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_transcript("").is_err());
        assert!(parse_transcript("n=5 schedule=identity").is_err());
        assert!(parse_transcript("n=5 schedule=2,0,2,1 mode=XX").is_err());
        assert!(parse_transcript("n=5 schedule=2,0,2,1 mode=MB\nt=2 0,0").is_err());
        assert!(parse_transcript("n=5 schedule=2,0,2,1 mode=MB\nt=1 0;0").is_err());
        let illegal = parse_transcript("n=5 schedule=2,0,2,1 mode=MB\nt=1 0,0\nt=2 0,0 1,1").unwrap();
        assert!(matches!(
            illegal.replay(),
            Err(TranscriptError::Illegal { turn: 2, .. })
        ));
    }
}
