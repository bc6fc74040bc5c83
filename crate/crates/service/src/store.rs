//! Append-only on-disk sessions: `<id>.json` holds the session metadata and
//! `<id>.transcript` the game in transcript format, one line per move.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use nrow_core::transcript::{header_line, parse_transcript};
use nrow_core::GameConfig;

use crate::session::{Session, SessionMeta};

#[derive(Clone, Debug)]
pub struct Store {
    dir: PathBuf,
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Store> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Store { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn meta_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn transcript_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.transcript"))
    }

    pub fn create(&self, meta: &SessionMeta, config: &GameConfig, moves: &str) -> io::Result<()> {
        let json = serde_json::to_string_pretty(meta).map_err(io::Error::other)?;
        fs::write(self.meta_path(&meta.game_id), json + "\n")?;
        fs::write(
            self.transcript_path(&meta.game_id),
            format!("{}\n{moves}", header_line(config)),
        )
    }

    pub fn append(&self, id: &str, moves: &str) -> io::Result<()> {
        let mut file = OpenOptions::new().append(true).open(self.transcript_path(id))?;
        file.write_all(moves.as_bytes())?;
        file.sync_data()
    }

    /// Every stored session, replayed. Unreadable entries are reported, not fatal.
    pub fn load_all(&self) -> (Vec<Session>, Vec<String>) {
        let mut sessions = Vec::new();
        let mut problems = Vec::new();
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) => return (sessions, vec![format!("{}: {e}", self.dir.display())]),
        };
        let mut metas: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        metas.sort();
        for path in metas {
            match self.load_one(&path) {
                Ok(s) => sessions.push(s),
                Err(e) => problems.push(format!("{}: {e}", path.display())),
            }
        }
        (sessions, problems)
    }

    fn load_one(&self, meta_path: &Path) -> Result<Session, String> {
        let meta: SessionMeta = serde_json::from_str(&fs::read_to_string(meta_path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let text = fs::read_to_string(self.transcript_path(&meta.game_id)).map_err(|e| e.to_string())?;
        let transcript = parse_transcript(&text).map_err(|e| e.to_string())?;
        Session::restore(meta, &transcript).map_err(|e| e.to_string())
    }
}
