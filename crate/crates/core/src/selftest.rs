//! Built-in consistency suites, each checked against an independent oracle.
//!
//! Every suite takes the implementation under test as a parameter so a
//! deliberately broken variant can be shown to fail.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::board::{brute_force_win_scan, GameConfig, GameState, Mode, Schedule};
use crate::compass::{CompassMap, Direction8};
use crate::cover::{containing_line, line_coords, line_points, lines_through, spoil_targets_with, LineId};
use crate::geom::{LineDir4, PlayerColor, Point, Segment};
use crate::rng::RngState;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.name, self.checked),
            Some(msg) => write!(f, "FAIL {}: {}", self.name, msg),
        }
    }
}

fn report(name: &'static str, checked: usize, result: Result<(), String>) -> SuiteReport {
    SuiteReport {
        name,
        checked,
        failure: result.err(),
    }
}

/// Every 11 consecutive points on any line carry each direction once or
/// twice. Checked for all 11 phases of every line through one period tile.
pub fn compass_window_check(map: &CompassMap) -> SuiteReport {
    let mut checked = 0;
    let result = (|| {
        for x in 0..11 {
            for y in 0..11 {
                for dir in LineDir4::ALL {
                    let start = Point::new(x, y);
                    let mut counts = [0usize; 8];
                    for k in 0..11 {
                        counts[map.direction(start + dir.step() * k).index()] += 1;
                    }
                    checked += 1;
                    if let Some(d) = Direction8::ALL.iter().find(|d| !(1..=2).contains(&counts[d.index()])) {
                        return Err(format!(
                            "window from {start} towards {dir:?} has {} x {d:?}",
                            counts[d.index()]
                        ));
                    }
                }
            }
        }
        Ok(())
    })();
    report("compass-window", checked, result)
}

/// Row 0 from x = 0 to 10, as listed in the definition of the map.
const LISTED_ROW: [Direction8; 11] = {
    use Direction8::*;
    [N, NE, E, SE, S, SW, W, NW, N, NE, E]
};

/// Evaluates the map by applying its defining rules literally:
/// f(x, y+1) = f(x-3, y) to reach row 0, then f(x, 0) = f(x+11, 0).
pub fn compass_by_recurrence(p: Point) -> Direction8 {
    let (mut x, mut y) = (p.x, p.y);
    while y > 0 {
        x -= 3;
        y -= 1;
    }
    while y < 0 {
        x += 3;
        y += 1;
    }
    while x < 0 {
        x += 11;
    }
    while x > 10 {
        x -= 11;
    }
    LISTED_ROW[x as usize]
}

pub fn compass_recurrence_check(map: &CompassMap) -> SuiteReport {
    let mut checked = 0;
    let result = (|| {
        for x in -100..=100 {
            for y in -100..=100 {
                let p = Point::new(x, y);
                checked += 1;
                let (got, want) = (map.direction(p), compass_by_recurrence(p));
                if got != want {
                    return Err(format!("{p}: closed form {got:?}, recurrence {want:?}"));
                }
            }
        }
        Ok(())
    })();
    report("compass-recurrence", checked, result)
}

/// All lines of the cover containing `p`, found by scanning nearby line indices.
fn lines_containing(p: Point, n: usize) -> HashSet<LineId> {
    let mut found = HashSet::new();
    for dir in LineDir4::ALL {
        let (i, k) = line_coords(p, dir);
        let j0 = k.div_euclid(n as i64);
        for j in j0 - 3..=j0 + 3 {
            let id = LineId::new(dir, i, j);
            if line_points(id, n).contains(&p) {
                found.insert(id);
            }
        }
    }
    found
}

fn random_point(rng: &mut RngState, span: i64) -> Point {
    let w = (2 * span + 1) as usize;
    Point::new(rng.below(w) as i64 - span, rng.below(w) as i64 - span)
}

/// Each point lies in exactly eight lines and `lines_through` names them;
/// every length-n segment lies in its `containing_line`, which passes through
/// the segment's start.
pub fn cover_check<F>(lines_through: F, samples: usize, seed: u64) -> SuiteReport
where
    F: Fn(Point, usize) -> Vec<LineId>,
{
    const SIZES: [usize; 3] = [4, 10, 57];
    let mut rng = RngState::new(seed);
    let mut checked = 0;
    let result = (|| {
        for s in 0..samples {
            let n = SIZES[s % SIZES.len()];
            let p = random_point(&mut rng, 1_000);
            let claimed: HashSet<LineId> = lines_through(p, n).into_iter().collect();
            let truth = lines_containing(p, n);
            if truth.len() != 8 {
                return Err(format!("{p} lies in {} lines for n={n}", truth.len()));
            }
            if claimed != truth {
                return Err(format!(
                    "lines through {p} for n={n}: got {claimed:?}, expected {truth:?}"
                ));
            }
            checked += 1;

            let dir = LineDir4::ALL[rng.below(4)];
            let seg = Segment::new(random_point(&mut rng, 1_000), dir, n);
            let id = containing_line(&seg, n);
            let pts: HashSet<Point> = line_points(id, n).into_iter().collect();
            if let Some(q) = seg.points().find(|q| !pts.contains(q)) {
                return Err(format!("{id} misses {q} of segment from {} {dir:?}", seg.start));
            }
            if !lines_through(seg.start, n).contains(&id) {
                return Err(format!("{id} not listed through {}", seg.start));
            }
            checked += 1;
        }
        Ok(())
    })();
    report("cover", checked, result)
}

/// Random colourings of a line with no all-red window; after Blue takes the
/// spoil targets every one of its n+1 windows holds a blue point.
pub fn spoil_check(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = RngState::new(seed);
    let mut checked = 0;
    let result = (|| {
        while checked < samples {
            let n = 1 + rng.below(60);
            let id = LineId::new(
                LineDir4::ALL[rng.below(4)],
                rng.below(101) as i64 - 50,
                rng.below(101) as i64 - 50,
            );
            let pts = line_points(id, n);
            let red_pct = 40 + rng.below(55);
            let mut colours: HashMap<Point, PlayerColor> = HashMap::new();
            for &p in &pts {
                let roll = rng.below(100);
                if roll < red_pct {
                    colours.insert(p, PlayerColor::Red);
                } else if roll < red_pct + (100 - red_pct) / 3 {
                    colours.insert(p, PlayerColor::Blue);
                }
            }
            let red_window = (0..=n).any(|s| pts[s..s + n].iter().all(|p| colours.get(p) == Some(&PlayerColor::Red)));
            if red_window {
                continue;
            }
            let targets = spoil_targets_with(id, n, |p| colours.get(&p).copied())
                .map_err(|e| format!("{e} without an all-red window"))?;
            if targets.len() > 2 || targets.iter().any(|p| colours.contains_key(p)) {
                return Err(format!("bad targets {targets:?} on {id}"));
            }
            for p in targets {
                colours.insert(p, PlayerColor::Blue);
            }
            if let Some(s) =
                (0..=n).find(|&s| !pts[s..s + n].iter().any(|p| colours.get(p) == Some(&PlayerColor::Blue)))
            {
                return Err(format!("window {} of {id} (n={n}) has no blue point", s + 1));
            }
            checked += 1;
        }
        Ok(())
    })();
    report("spoil", checked, result)
}

/// Random games in a small box; after every move the incremental win check
/// agrees with a scan of all windows for both colours.
pub fn win_oracle_check(games: usize, seed: u64) -> SuiteReport {
    let mut rng = RngState::new(seed);
    let mut checked = 0;
    let result = (|| {
        for g in 0..games {
            let n = 2 + rng.below(5);
            let schedule = match rng.below(3) {
                0 => Schedule::identity(),
                1 => Schedule::constant(1 + rng.below(3)),
                _ => Schedule::new(1, 1, 1, 1),
            };
            let mode = if rng.below(2) == 0 {
                Mode::MakerBreaker
            } else {
                Mode::TwoWinner
            };
            let config = GameConfig::new(n, schedule, mode).map_err(|e| e.to_string())?;
            let mut state = GameState::new(config);
            let half = n as i64 + 1;
            let mut free: Vec<Point> = (-half..=half)
                .flat_map(|x| (-half..=half).map(move |y| Point::new(x, y)))
                .collect();
            while !state.is_over() {
                let quota = state.quota();
                if quota > free.len() {
                    break;
                }
                let mut mv = Vec::with_capacity(quota);
                for _ in 0..quota {
                    let i = rng.below(free.len());
                    mv.push(free.swap_remove(i));
                }
                state
                    .apply_move(mv)
                    .map_err(|e| format!("game {g}: random move rejected: {e}"))?;
                for colour in [PlayerColor::Red, PlayerColor::Blue] {
                    let (fast, slow) = (state.has_win(colour), brute_force_win_scan(&state, colour));
                    if fast != slow {
                        return Err(format!(
                            "game {g} turn {}: {colour:?} incremental {fast:?}, scan {slow:?}",
                            state.turn() - 1
                        ));
                    }
                }
                checked += 1;
            }
        }
        Ok(())
    })();
    report("win-oracle", checked, result)
}

/// The default suites at desk-scale sample sizes.
pub fn run_all() -> Vec<SuiteReport> {
    let map = CompassMap::default();
    vec![
        compass_window_check(&map),
        compass_recurrence_check(&map),
        cover_check(|p, n| lines_through(p, n).to_vec(), 10_000, 1),
        spoil_check(10_000, 2),
        win_oracle_check(1_000, 3),
    ]
}
