use std::collections::HashSet;

use crate::board::GameState;
use crate::cover::{spoil_targets_with, LineLedger};
use crate::geom::{PlayerColor, Point};
use crate::rng::RngState;

use super::{arbitrary_fill, Strategy};

/// Breaker that spoils the good lines holding the most red points.
///
/// Repeatedly takes the best good line (most red points, then textually least
/// id), claims its spoil targets and marks it spoiled, until the best line
/// needs more points than remain. A line needing no new point is spoiled for
/// free. Leftover quota goes to [`arbitrary_fill`]. `ledger` must already
/// reflect every red point in `state`; it is updated with the new spoils.
pub fn line_spoil_breaker(state: &GameState, ledger: &mut LineLedger, quota: usize, _rng: &mut RngState) -> Vec<Point> {
    let n = state.n();
    let mut pending: HashSet<Point> = HashSet::with_capacity(quota);
    let mut out = Vec::with_capacity(quota);
    while let Some((id, _)) = ledger.best_good_line() {
        let color_at = |q: Point| {
            if pending.contains(&q) {
                Some(PlayerColor::Blue)
            } else {
                state.color_at(q)
            }
        };
        match spoil_targets_with(id, n, color_at) {
            Ok(targets) => {
                if targets.len() > quota - out.len() {
                    break;
                }
                for q in targets {
                    pending.insert(q);
                    out.push(q);
                }
                ledger.mark_spoiled(id);
            }
            // Only possible once Red has already completed a segment in this line.
            Err(_) => ledger.mark_spoiled(id),
        }
    }
    let rest = quota - out.len();
    out.extend(arbitrary_fill(state, rest, &pending));
    out
}

/// [`line_spoil_breaker`] with its ledger kept in sync with the move history.
#[derive(Clone, Debug, Default)]
pub struct LineSpoilBreaker {
    ledger: Option<LineLedger>,
    synced_moves: usize,
}

impl LineSpoilBreaker {
    fn sync(&mut self, state: &GameState) {
        let history = state.history();
        let stale = match &self.ledger {
            None => true,
            Some(l) => l.n() != state.n() || history.len() < self.synced_moves,
        };
        if stale {
            self.ledger = Some(LineLedger::new(state.n()));
            self.synced_moves = 0;
        }
        let ledger = self.ledger.as_mut().expect("ledger initialised above");
        for mv in &history[self.synced_moves..] {
            for &p in &mv.points {
                ledger.on_claim(p, mv.player);
            }
        }
        self.synced_moves = history.len();
    }
}

impl Strategy for LineSpoilBreaker {
    fn name(&self) -> &'static str {
        "line_spoil"
    }

    fn observe(&mut self, state: &GameState) {
        self.sync(state);
    }

    fn choose(&mut self, state: &GameState, quota: usize, rng: &mut RngState) -> Vec<Point> {
        self.sync(state);
        let ledger = self.ledger.as_mut().expect("synced");
        line_spoil_breaker(state, ledger, quota, rng)
    }

    fn ledger(&self) -> Option<&LineLedger> {
        self.ledger.as_ref()
    }
}
