//! Exact minimax for the two-winner game under the identity schedule, played
//! on a bounded board: every move must lie in the relevance region (unclaimed
//! points within Chebyshev distance `min(radius, n)` of a claimed point).
//!
//! The search is iterative deepening on the horizon H: `forced_win(s, P, H)`
//! asks whether P can complete a line no later than turn H against every
//! reply. The first H at which either side has a forced win is the optimal
//! win turn. Positions are deduplicated and memoized up to translation and
//! the eight lattice symmetries.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::board::{GameConfig, GameState, Mode, Move, Schedule};
use crate::geom::{LineDir4, PlayerColor, Point};
use crate::transcript::write_transcript;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn color(self) -> PlayerColor {
        match self {
            Side::First => PlayerColor::Red,
            Side::Second => PlayerColor::Blue,
        }
    }

    pub fn of(color: PlayerColor) -> Side {
        match color {
            PlayerColor::Red => Side::First,
            PlayerColor::Blue => Side::Second,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::First => "first",
            Side::Second => "second",
        }
    }
}

/// Winners of the two-winner identity game for n = 1..=7 from published
/// small-case analysis. Only n <= 4 is within reach of this solver.
pub const KNOWN_SMALL_CASE_WINNERS: [Side; 7] = [
    Side::First,
    Side::Second,
    Side::First,
    Side::First,
    Side::Second,
    Side::First,
    Side::First,
];

pub fn known_winner(n: usize) -> Option<Side> {
    n.checked_sub(1).and_then(|i| KNOWN_SMALL_CASE_WINNERS.get(i)).copied()
}

/// Position up to translation and lattice symmetry: the least sorted list of
/// `(color, x, y)` over the eight symmetries, each translated so that the
/// bounding box's minimal corner is the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<(u8, i64, i64)>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(c, x, y) in &self.0 {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            let letter = if c == 0 { 'R' } else { 'B' };
            write!(f, "{letter}{x},{y}")?;
        }
        Ok(())
    }
}

const SYMMETRIES: [fn(Point) -> Point; 8] = [
    |p| Point::new(p.x, p.y),
    |p| Point::new(-p.y, p.x),
    |p| Point::new(-p.x, -p.y),
    |p| Point::new(p.y, -p.x),
    |p| Point::new(-p.x, p.y),
    |p| Point::new(p.x, -p.y),
    |p| Point::new(p.y, p.x),
    |p| Point::new(-p.y, -p.x),
];

pub fn canonicalize<I>(cells: I) -> CanonicalKey
where
    I: IntoIterator<Item = (PlayerColor, Point)>,
{
    let cells: Vec<(PlayerColor, Point)> = cells.into_iter().collect();
    let mut best: Option<Vec<(u8, i64, i64)>> = None;
    for sym in SYMMETRIES {
        let mapped: Vec<(PlayerColor, Point)> = cells.iter().map(|&(c, p)| (c, sym(p))).collect();
        let min_x = mapped.iter().map(|(_, p)| p.x).min().unwrap_or(0);
        let min_y = mapped.iter().map(|(_, p)| p.y).min().unwrap_or(0);
        let mut image: Vec<(u8, i64, i64)> = mapped
            .iter()
            .map(|&(c, p)| (c.index() as u8, p.x - min_x, p.y - min_y))
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    CanonicalKey(best.unwrap_or_default())
}

pub fn canonical_key(state: &GameState) -> CanonicalKey {
    canonicalize(state.cells().map(|(p, c)| (c, p)))
}

/// Unclaimed points within distance `min(radius, n)` of a claimed point (of
/// the origin on an empty board), in lexicographic order. The distance grows
/// by one until the region holds at least `quota` points.
pub fn relevance_region(state: &GameState, radius: usize) -> Vec<Point> {
    let centres: Vec<Point> = if state.claimed_count() == 0 {
        vec![Point::ORIGIN]
    } else {
        state.sorted_cells().into_iter().map(|(p, _)| p).collect()
    };
    let quota = state.quota();
    let mut d = radius.min(state.n()) as i64;
    loop {
        let mut region = BTreeSet::new();
        for &c in &centres {
            for dx in -d..=d {
                for dy in -d..=d {
                    let q = c + Point::new(dx, dy);
                    if !state.is_claimed(q) {
                        region.insert(q);
                    }
                }
            }
        }
        if region.len() >= quota {
            return region.into_iter().collect();
        }
        d += 1;
    }
}

/// All `quota`-subsets of the relevance region in lexicographic order, keeping
/// the first subset of each class of resulting positions.
pub fn candidate_moves(state: &GameState, radius: usize) -> Vec<Vec<Point>> {
    let mut nodes = 0;
    children(state, radius, &mut nodes, u64::MAX)
        .unwrap_or_default()
        .into_iter()
        .map(|(mv, _)| mv)
        .collect()
}

#[derive(Debug)]
struct CapExceeded;

fn children(
    state: &GameState,
    radius: usize,
    nodes: &mut u64,
    cap: u64,
) -> Result<Vec<(Vec<Point>, GameState)>, CapExceeded> {
    let quota = state.quota();
    let region = relevance_region(state, radius);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in region.into_iter().combinations(quota) {
        *nodes += 1;
        if *nodes > cap {
            return Err(CapExceeded);
        }
        let mut child = state.clone();
        child
            .apply_move(subset.clone())
            .expect("region points are unclaimed and distinct");
        if seen.insert(canonical_key(&child)) {
            out.push((subset, child));
        }
    }
    Ok(out)
}

/// A move that completes a line for the player to move, if one exists.
fn immediate_win(state: &GameState, region: &[Point]) -> Option<Vec<Point>> {
    let n = state.n() as i64;
    let quota = state.quota();
    let me = state.to_move();
    let in_region: HashSet<Point> = region.iter().copied().collect();
    let own: Vec<Point> = state
        .sorted_cells()
        .into_iter()
        .filter(|&(_, c)| c == me)
        .map(|(p, _)| p)
        .collect();
    let mut starts: Vec<(Point, LineDir4)> = Vec::new();
    for &p in &own {
        for dir in LineDir4::ALL {
            for k in 0..n {
                starts.push((p - dir.step() * k, dir));
            }
        }
    }
    if quota >= n as usize {
        for &p in region {
            for dir in LineDir4::ALL {
                starts.push((p, dir));
            }
        }
    }
    'window: for (start, dir) in starts {
        let mut missing = Vec::new();
        for k in 0..n {
            let q = start + dir.step() * k;
            match state.color_at(q) {
                Some(c) if c == me => {}
                Some(_) => continue 'window,
                None if in_region.contains(&q) => missing.push(q),
                None => continue 'window,
            }
        }
        if missing.len() > quota {
            continue;
        }
        let chosen: HashSet<Point> = missing.iter().copied().collect();
        let extra = quota - missing.len();
        missing.extend(region.iter().filter(|q| !chosen.contains(q)).take(extra));
        return Some(missing);
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Defaults to n.
    pub radius: Option<usize>,
    pub node_cap: u64,
    pub memo: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            radius: None,
            node_cap: 20_000_000,
            memo: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolverVerdict {
    pub n: usize,
    pub winner: Side,
    pub win_turn: usize,
    pub principal_variation: Vec<Move>,
    pub search_radius: usize,
    pub nodes_expanded: u64,
    pub exactness_note: String,
}

impl SolverVerdict {
    /// Header line followed by the variation as a transcript.
    pub fn report(&self) -> String {
        let config = solver_config(self.n).expect("verdicts have n >= 1");
        format!(
            "n={} winner={} win_turn={} radius={} nodes={}\n{}",
            self.n,
            self.winner.label(),
            self.win_turn,
            self.search_radius,
            self.nodes_expanded,
            write_transcript(&config, &self.principal_variation)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("n must be at least 1")]
    ZeroLength,
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error(
        "inconclusive: node cap {node_cap} reached while searching horizon {horizon} \
         (n={n}, radius={radius}, nodes={nodes})"
    )]
    Inconclusive {
        n: usize,
        radius: usize,
        node_cap: u64,
        nodes: u64,
        /// Horizons below this one have no forced win for either side.
        horizon: usize,
    },
}

fn solver_config(n: usize) -> Option<GameConfig> {
    GameConfig::new(n, Schedule::identity(), Mode::TwoWinner).ok()
}

type MemoKey = (CanonicalKey, usize, PlayerColor, usize);

struct Search {
    radius: usize,
    cap: u64,
    nodes: u64,
    memo: Option<HashMap<MemoKey, bool>>,
}

impl Search {
    fn forced_win(&mut self, state: &GameState, target: PlayerColor, horizon: usize) -> Result<bool, CapExceeded> {
        let t = state.turn();
        if t > horizon {
            return Ok(false);
        }
        let mover = state.to_move();
        let region = relevance_region(state, self.radius);
        if immediate_win(state, &region).is_some() {
            return Ok(mover == target);
        }
        if t == horizon || (mover == target && t + 2 > horizon) {
            return Ok(false);
        }
        let key = self.memo.is_some().then(|| (canonical_key(state), t, target, horizon));
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(&v) = memo.get(key) {
                return Ok(v);
            }
        }
        let kids = children(state, self.radius, &mut self.nodes, self.cap)?;
        let mut result = mover != target;
        for (_, child) in &kids {
            let win = self.forced_win(child, target, horizon)?;
            if mover == target && win {
                result = true;
                break;
            }
            if mover != target && !win {
                result = false;
                break;
            }
        }
        if let (Some(memo), Some(key)) = (&mut self.memo, key) {
            memo.insert(key, result);
        }
        Ok(result)
    }

    /// Winner plays any move keeping the win by `horizon`; the loser prefers
    /// a move after which no win by `horizon - 1` is forced.
    fn principal_variation(
        &mut self,
        root: &GameState,
        winner: PlayerColor,
        horizon: usize,
    ) -> Result<Vec<Move>, CapExceeded> {
        let mut state = root.clone();
        while !state.is_over() && state.turn() <= horizon {
            let region = relevance_region(&state, self.radius);
            let mv = match immediate_win(&state, &region) {
                Some(mv) => mv,
                None => {
                    let kids = children(&state, self.radius, &mut self.nodes, self.cap)?;
                    let mut pick = None;
                    for (mv, child) in &kids {
                        let good = if state.to_move() == winner {
                            self.forced_win(child, winner, horizon)?
                        } else {
                            !self.forced_win(child, winner, horizon - 1)?
                        };
                        if good {
                            pick = Some(mv.clone());
                            break;
                        }
                    }
                    match pick {
                        Some(mv) => mv,
                        None => kids.into_iter().next().map(|(mv, _)| mv).unwrap_or_default(),
                    }
                }
            };
            state.apply_move(mv).expect("candidate moves are legal");
        }
        Ok(state.history().to_vec())
    }
}

fn exactness_note(n: usize, radius: usize, winner: Side) -> String {
    let restriction = format!(
        "exact for the game restricted to points within Chebyshev distance {} of claimed points; \
         equivalence with the unbounded game is not proven",
        radius.min(n)
    );
    match known_winner(n) {
        Some(w) if w == winner => {
            format!("{restriction}; matches the known small-case winner ({})", w.label())
        }
        Some(w) => format!("{restriction}; contradicts the known small-case winner ({})", w.label()),
        None => format!("{restriction}; no known small-case winner to compare"),
    }
}

pub fn solve(n: usize, options: &SolverOptions) -> Result<SolverVerdict, SolverError> {
    let config = solver_config(n).ok_or(SolverError::ZeroLength)?;
    let radius = options.radius.unwrap_or(n);
    if radius == 0 {
        return Err(SolverError::ZeroRadius);
    }
    let mut search = Search {
        radius,
        cap: options.node_cap,
        nodes: 0,
        memo: options.memo.then(HashMap::new),
    };
    let root = GameState::new(config);
    let inconclusive = |nodes, horizon| SolverError::Inconclusive {
        n,
        radius,
        node_cap: options.node_cap,
        nodes,
        horizon,
    };
    for horizon in 1.. {
        for side in [Side::First, Side::Second] {
            let found = search
                .forced_win(&root, side.color(), horizon)
                .map_err(|_| inconclusive(search.nodes, horizon))?;
            if !found {
                continue;
            }
            let principal_variation = search
                .principal_variation(&root, side.color(), horizon)
                .map_err(|_| inconclusive(search.nodes, horizon))?;
            return Ok(SolverVerdict {
                n,
                winner: side,
                win_turn: horizon,
                principal_variation,
                search_radius: radius,
                nodes_expanded: search.nodes,
                exactness_note: exactness_note(n, radius, side),
            });
        }
    }
    unreachable!("the node cap ends the horizon loop")
}

/// Replays the variation; true iff every move is legal and the stated winner
/// completes a line exactly at the stated turn.
pub fn verify_variation(verdict: &SolverVerdict) -> bool {
    let Some(config) = solver_config(verdict.n) else {
        return false;
    };
    let mut state = GameState::new(config);
    for mv in &verdict.principal_variation {
        if mv.turn != state.turn() || mv.player != state.to_move() {
            return false;
        }
        if state.apply_move(mv.points.clone()).is_err() {
            return false;
        }
    }
    state
        .winner()
        .is_some_and(|w| w.color == verdict.winner.color() && w.turn == verdict.win_turn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngState;

    fn opts(radius: Option<usize>) -> SolverOptions {
        SolverOptions {
            radius,
            ..SolverOptions::default()
        }
    }

    #[test]
    fn small_cases() {
        let expect = [(1, Side::First, 1), (2, Side::Second, 2), (3, Side::First, 3)];
        for (n, side, turn) in expect {
            let v = solve(n, &opts(None)).unwrap();
            assert_eq!((v.winner, v.win_turn), (side, turn), "n={n}");
            assert!(verify_variation(&v), "n={n}");
            assert_eq!(v.principal_variation.len(), turn);
            assert!(v.exactness_note.contains("matches"));
        }
    }

    #[test]
    fn memo_does_not_change_verdicts() {
        for n in 1..=3 {
            let with = solve(n, &opts(None)).unwrap();
            let without = solve(
                n,
                &SolverOptions {
                    memo: false,
                    ..opts(None)
                },
            )
            .unwrap();
            assert_eq!((with.winner, with.win_turn), (without.winner, without.win_turn));
        }
    }

    #[test]
    fn larger_radius_keeps_first_win() {
        let a = solve(3, &opts(Some(2))).unwrap();
        let b = solve(3, &opts(Some(3))).unwrap();
        assert_eq!((a.winner, a.win_turn), (b.winner, b.win_turn));
    }

    #[test]
    fn report_format() {
        let v = solve(1, &opts(None)).unwrap();
        assert_eq!(
            v.report(),
            format!(
                "n=1 winner=first win_turn=1 radius=1 nodes={}\nn=1 schedule=2,0,2,1 mode=TW\nt=1 -1,-1\n",
                v.nodes_expanded
            )
        );
    }

    #[test]
    fn node_cap_is_inconclusive() {
        let err = solve(
            3,
            &SolverOptions {
                node_cap: 5,
                ..opts(None)
            },
        )
        .unwrap_err();
        assert!(matches!(err, SolverError::Inconclusive { node_cap: 5, .. }));
        assert_eq!(solve(0, &opts(None)).unwrap_err(), SolverError::ZeroLength);
        assert_eq!(solve(2, &opts(Some(0))).unwrap_err(), SolverError::ZeroRadius);
    }

    #[test]
    fn tampered_variation_fails() {
        let mut v = solve(2, &opts(None)).unwrap();
        assert!(verify_variation(&v));
        v.principal_variation[1].points[0] = v.principal_variation[0].points[0];
        assert!(!verify_variation(&v));
        let mut short = solve(3, &opts(None)).unwrap();
        short.principal_variation.pop();
        assert!(!verify_variation(&short));
    }

    #[test]
    fn empty_board_has_one_class() {
        let cfg = solver_config(3).unwrap();
        let s = GameState::new(cfg);
        assert_eq!(relevance_region(&s, 3).len(), 49);
        assert_eq!(candidate_moves(&s, 3).len(), 1);
    }

    #[test]
    fn zero_quota_gives_one_empty_move() {
        let cfg = GameConfig::new(3, Schedule::new(0, 0, 0, 1), Mode::TwoWinner).unwrap();
        let mut s = GameState::new(cfg);
        s.apply_move(vec![Point::ORIGIN]).unwrap();
        assert_eq!(s.quota(), 0);
        assert_eq!(candidate_moves(&s, 2), vec![Vec::<Point>::new()]);
    }

    /// Orbit count of 2-subsets of the radius-2 annulus under the symmetries
    /// fixing the origin, by Burnside's lemma.
    fn burnside_pair_orbits() -> usize {
        let ring: Vec<Point> = (-2..=2)
            .flat_map(|x| (-2..=2).map(move |y| Point::new(x, y)))
            .filter(|&p| p != Point::ORIGIN)
            .collect();
        let mut fixed_total = 0;
        for g in SYMMETRIES {
            for (i, &a) in ring.iter().enumerate() {
                for &b in &ring[i + 1..] {
                    let (ga, gb) = (g(a), g(b));
                    if (ga == a && gb == b) || (ga == b && gb == a) {
                        fixed_total += 1;
                    }
                }
            }
        }
        assert_eq!(fixed_total % 8, 0);
        fixed_total / 8
    }

    #[test]
    fn second_turn_classes_match_burnside_count() {
        let cfg = solver_config(5).unwrap();
        let mut s = GameState::new(cfg);
        s.apply_move(vec![Point::ORIGIN]).unwrap();
        assert_eq!(relevance_region(&s, 2).len(), 24);
        assert_eq!(candidate_moves(&s, 2).len(), burnside_pair_orbits());
    }

    #[test]
    fn canonical_key_is_symmetry_and_translation_invariant() {
        let mut rng = RngState::new(11);
        for _ in 0..200 {
            let k = 1 + rng.below(7);
            let mut cells = Vec::new();
            let mut used = HashSet::new();
            while cells.len() < k {
                let p = Point::new(rng.below(9) as i64 - 4, rng.below(9) as i64 - 4);
                if used.insert(p) {
                    let c = if rng.below(2) == 0 {
                        PlayerColor::Red
                    } else {
                        PlayerColor::Blue
                    };
                    cells.push((c, p));
                }
            }
            let key = canonicalize(cells.iter().copied());
            let shift = Point::new(rng.below(21) as i64 - 10, rng.below(21) as i64 - 10);
            for g in SYMMETRIES {
                let image = cells.iter().map(|&(c, p)| (c, g(p) + shift));
                assert_eq!(canonicalize(image), key);
            }
        }
    }

    #[test]
    fn colours_are_part_of_the_key() {
        let a = canonicalize([(PlayerColor::Red, Point::ORIGIN), (PlayerColor::Blue, Point::new(1, 0))]);
        let b = canonicalize([
            (PlayerColor::Blue, Point::ORIGIN),
            (PlayerColor::Blue, Point::new(1, 0)),
        ]);
        assert_ne!(a, b);
        assert_eq!(a.to_string(), "R0,0;B0,1");
    }

    #[test]
    fn known_winners_table() {
        assert_eq!(known_winner(2), Some(Side::Second));
        assert_eq!(known_winner(5), Some(Side::Second));
        assert_eq!(known_winner(6), Some(Side::First));
        assert_eq!(known_winner(8), None);
        assert_eq!(known_winner(0), None);
    }
}
