//! Strategy contract and the concrete Maker and Breaker strategies.
//!
//! A strategy maps (position, quota, rng) to `quota` distinct unclaimed points.
//! Strategies that keep private state rebuild it from the public move history,
//! so an instance may be handed any position that extends the last one it saw.

mod direction;
mod greedy;
mod makers;
mod spoil;

use std::collections::HashSet;

use thiserror::Error;

use crate::board::GameState;
use crate::compass::Direction8;
use crate::cover::LineLedger;
use crate::geom::Point;
use crate::rng::RngState;
use crate::spiral::spiral_point;

pub use direction::{direction_breaker, DirectionBreaker};
pub use greedy::{greedy_maker, GreedyMaker};
pub use makers::{random_maker, sprint_maker, FillStrategy, RandomMaker, SprintMaker};
pub use spoil::{line_spoil_breaker, LineSpoilBreaker};

pub trait Strategy: Send {
    fn name(&self) -> &'static str;

    /// Catch up with moves played since the last call. Optional; `choose`
    /// performs the same synchronisation.
    fn observe(&mut self, _state: &GameState) {}

    fn choose(&mut self, state: &GameState, quota: usize, rng: &mut RngState) -> Vec<Point>;

    /// Line ledger maintained by the strategy, if it keeps one.
    fn ledger(&self) -> Option<&LineLedger> {
        None
    }
}

/// Names accepted by [`strategy_by_name`].
pub const STRATEGY_NAMES: [&str; 6] = ["direction", "line_spoil", "sprint", "greedy", "random", "fill"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy {0:?} (known: direction, line_spoil, sprint, greedy, random, fill)")]
pub struct UnknownStrategy(pub String);

pub fn strategy_by_name(name: &str) -> Result<Box<dyn Strategy>, UnknownStrategy> {
    Ok(match name {
        "direction" => Box::new(DirectionBreaker),
        "line_spoil" => Box::new(LineSpoilBreaker::default()),
        "sprint" => Box::new(SprintMaker),
        "greedy" => Box::new(GreedyMaker::default()),
        "random" => Box::new(RandomMaker),
        "fill" => Box::new(FillStrategy),
        other => return Err(UnknownStrategy(other.to_string())),
    })
}

/// The first `count` points of the square spiral that are neither claimed nor pending.
pub fn arbitrary_fill(state: &GameState, count: usize, pending: &HashSet<Point>) -> Vec<Point> {
    let mut out = Vec::with_capacity(count);
    let mut idx = state.spiral_floor();
    while out.len() < count {
        let p = spiral_point(idx);
        if !state.is_claimed(p) && !pending.contains(&p) {
            out.push(p);
        }
        idx += 1;
    }
    out
}

/// First point `p + k*d` (k >= 1) that is neither claimed nor pending.
pub fn next_available(state: &GameState, p: Point, d: Direction8, pending: &HashSet<Point>) -> Point {
    let step = d.step();
    let mut q = p + step;
    while state.is_claimed(q) || pending.contains(&q) {
        q = q + step;
    }
    q
}
