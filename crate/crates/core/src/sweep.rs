//! Experiment sweeps over (n, matchup, seed) with comma-separated output.
//!
//! Spec files are `key=value` lines; `#` starts a comment:
//!
//! ```text
//! n=55,110,220
//! matchups=greedy:direction, sprint:fill
//! seeds=20          # seeds 1..=20
//! cap=500
//! r=1,2,4           # optional diagnostic thresholds
//! schedule=identity # optional, default identity
//! mode=MB           # optional, default MB
//! ```

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::board::{GameConfig, Mode, Schedule};
use crate::engine::play_game_with;
use crate::strategy::STRATEGY_NAMES;

pub const CSV_HEADER: &str = "n,schedule,maker,breaker,seed,win_time,ratio,max_L,wall_ms";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub ns: Vec<usize>,
    pub matchups: Vec<(String, String)>,
    pub seeds: u64,
    pub cap: usize,
    pub thresholds: Vec<usize>,
    pub schedule: Schedule,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepSpecError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing key {0:?}")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

fn list<T: FromStr>(line: usize, key: &str, v: &str) -> Result<Vec<T>, SweepSpecError> {
    v.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| SweepSpecError::Syntax {
                line,
                msg: format!("{key}: cannot parse {s:?}"),
            })
        })
        .collect()
}

impl FromStr for SweepSpec {
    type Err = SweepSpecError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut ns = None;
        let mut matchups = None;
        let mut seeds = None;
        let mut cap = None;
        let mut thresholds = Vec::new();
        let mut schedule = Schedule::identity();
        let mut mode = Mode::MakerBreaker;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| SweepSpecError::Syntax {
                line,
                msg: format!("expected key=value, got {body:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let err = |msg: String| SweepSpecError::Syntax { line, msg };
            match key {
                "n" => ns = Some(list::<usize>(line, key, value)?),
                "matchups" => {
                    let pairs = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|pair| {
                            pair.split_once(':')
                                .map(|(m, b)| (m.trim().to_string(), b.trim().to_string()))
                                .ok_or_else(|| err(format!("matchup {pair:?} is not maker:breaker")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    matchups = Some(pairs);
                }
                "seeds" => seeds = Some(value.parse().map_err(|_| err(format!("seeds: {value:?}")))?),
                "cap" => cap = Some(value.parse().map_err(|_| err(format!("cap: {value:?}")))?),
                "r" => thresholds = list::<usize>(line, key, value)?,
                "schedule" => schedule = value.parse().map_err(|e| err(format!("{e}")))?,
                "mode" => mode = value.parse().map_err(err)?,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let spec = SweepSpec {
            ns: ns.ok_or(SweepSpecError::Missing("n"))?,
            matchups: matchups.ok_or(SweepSpecError::Missing("matchups"))?,
            seeds: seeds.ok_or(SweepSpecError::Missing("seeds"))?,
            cap: cap.ok_or(SweepSpecError::Missing("cap"))?,
            thresholds,
            schedule,
            mode,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepSpecError> {
        let invalid = |m: &str| Err(SweepSpecError::Invalid(m.to_string()));
        if self.ns.is_empty() || self.ns.contains(&0) {
            return invalid("n must list at least one value, all >= 1");
        }
        if self.matchups.is_empty() {
            return invalid("matchups must not be empty");
        }
        for (maker, breaker) in &self.matchups {
            for name in [maker, breaker] {
                if !STRATEGY_NAMES.contains(&name.as_str()) {
                    return Err(SweepSpecError::Invalid(format!(
                        "unknown strategy {name:?} (known: {})",
                        STRATEGY_NAMES.join(", ")
                    )));
                }
            }
        }
        if self.seeds == 0 {
            return invalid("seeds must be at least 1");
        }
        if self.cap == 0 {
            return invalid("cap must be at least 1");
        }
        self.schedule
            .validate()
            .map_err(|e| SweepSpecError::Invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub schedule: Schedule,
    pub maker: String,
    pub breaker: String,
    pub seed: u64,
    pub win_time: Option<usize>,
    pub ratio: Option<f64>,
    pub max_l: usize,
    pub wall_ms: u128,
    pub truncated_at: Option<usize>,
    pub error: Option<String>,
}

/// Runs every cell, in parallel, and returns rows ordered by (n, matchup, seed).
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    let mut cells = Vec::new();
    for &n in &spec.ns {
        for (maker, breaker) in &spec.matchups {
            for seed in 1..=spec.seeds {
                cells.push((n, maker.as_str(), breaker.as_str(), seed));
            }
        }
    }
    cells
        .into_par_iter()
        .map(|(n, maker, breaker, seed)| run_cell(spec, n, maker, breaker, seed))
        .collect()
}

fn run_cell(spec: &SweepSpec, n: usize, maker: &str, breaker: &str, seed: u64) -> SweepRow {
    let started = Instant::now();
    let mut row = SweepRow {
        n,
        schedule: spec.schedule,
        maker: maker.to_string(),
        breaker: breaker.to_string(),
        seed,
        win_time: None,
        ratio: None,
        max_l: 0,
        wall_ms: 0,
        truncated_at: None,
        error: None,
    };
    let outcome = GameConfig::new(n, spec.schedule, spec.mode)
        .map_err(|e| e.to_string())
        .and_then(|cfg| {
            play_game_with(&cfg, maker, breaker, seed, spec.cap, &spec.thresholds).map_err(|e| e.to_string())
        });
    match outcome {
        Ok(rec) => {
            row.win_time = rec.win_time;
            row.ratio = rec.win_time.map(|t| t as f64 / n as f64);
            row.max_l = rec.max_l();
            row.truncated_at = rec.truncated_at;
        }
        Err(e) => row.error = Some(e),
    }
    row.wall_ms = started.elapsed().as_millis();
    row
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// Renders rows under [`CSV_HEADER`]. With `wall_clock` false the timing
/// column is written as 0 so that output is byte-reproducible.
pub fn rows_to_csv(rows: &[SweepRow], wall_clock: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let win = match (&r.error, r.win_time) {
            (Some(e), _) => quote(&format!("error: {e}")),
            (None, Some(t)) => t.to_string(),
            (None, None) => String::new(),
        };
        let ratio = r.ratio.map(|x| format!("{x:.4}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            quote(&r.schedule.to_string()),
            r.maker,
            r.breaker,
            r.seed,
            win,
            ratio,
            r.max_l,
            if wall_clock { r.wall_ms } else { 0 }
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_file() {
        let spec: SweepSpec = "# demo\nn=55, 110\nmatchups=sprint:fill,greedy:direction\nseeds=3\ncap=200\nr=1,5\n"
            .parse()
            .unwrap();
        assert_eq!(spec.ns, vec![55, 110]);
        assert_eq!(spec.matchups[1], ("greedy".to_string(), "direction".to_string()));
        assert_eq!(spec.seeds, 3);
        assert_eq!(spec.thresholds, vec![1, 5]);
        assert_eq!(spec.schedule, Schedule::identity());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!("n=5\nmatchups=sprint:fill\nseeds=1".parse::<SweepSpec>().is_err());
        assert!("n=5\nmatchups=sprintfill\nseeds=1\ncap=3".parse::<SweepSpec>().is_err());
        assert!("n=x\nmatchups=sprint:fill\nseeds=1\ncap=3"
            .parse::<SweepSpec>()
            .is_err());
        assert!("n=5\nmatchups=sprint:fill\nseeds=0\ncap=3"
            .parse::<SweepSpec>()
            .is_err());
        assert!("bogus".parse::<SweepSpec>().is_err());
    }

    #[test]
    fn sprint_row_has_unit_ratio() {
        let spec: SweepSpec = "n=55\nmatchups=sprint:fill\nseeds=1\ncap=100".parse().unwrap();
        let rows = run_sweep(&spec);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].win_time, Some(55));
        assert_eq!(rows[0].ratio, Some(1.0));
        let csv = rows_to_csv(&rows, false);
        assert_eq!(
            csv,
            format!("{CSV_HEADER}\n55,\"2,0,2,1\",sprint,fill,1,55,1.0000,55,0\n")
        );
    }

    #[test]
    fn capped_and_failed_cells() {
        let rejected = "n=30\nmatchups=random:direction,nobody:fill\nseeds=1\ncap=3".parse::<SweepSpec>();
        assert!(matches!(rejected, Err(SweepSpecError::Invalid(m)) if m.contains("nobody")));
        let mut spec: SweepSpec = "n=30\nmatchups=random:direction\nseeds=1\ncap=3".parse().unwrap();
        spec.matchups.push(("nobody".into(), "fill".into()));
        let rows = run_sweep(&spec);
        assert_eq!(rows[0].win_time, None);
        assert_eq!(rows[0].truncated_at, Some(3));
        assert!(rows[1].error.as_deref().unwrap().contains("unknown strategy"));
        let csv = rows_to_csv(&rows, false);
        let lines: Vec<_> = csv.lines().collect();
        assert!(lines[1].starts_with("30,\"2,0,2,1\",random,direction,1,,,"));
        assert!(lines[2].contains("\"error: unknown strategy"));
    }
}
