//! Append-only JSON-lines journal, one file per session.

use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clusterweyl::{Sign, SkewMatrix};
use serde::{Deserialize, Serialize};

use crate::session::{Session, SessionError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum Event {
    Create {
        seed: SkewMatrix,
    },
    Mutate {
        from: usize,
        vertex: usize,
        eps: Sign,
    },
    Cursor {
        node: usize,
    },
}

#[derive(Debug, Clone)]
pub struct Journal {
    dir: PathBuf,
}

impl Journal {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.jsonl"))
    }

    pub fn append(&self, id: &str, event: &Event) -> io::Result<()> {
        let mut line = serde_json::to_string(event).map_err(io::Error::other)?;
        line.push('\n');
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.path(id))?;
        f.write_all(line.as_bytes())
    }

    /// Replays every journal in the directory. Unreadable journals are
    /// logged and skipped.
    pub fn restore(&self) -> io::Result<Vec<Session>> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("jsonl") {
                continue;
            }
            match replay_file(&path) {
                Ok(s) => out.push(s),
                Err(e) => log::warn!("skipping journal {}: {e}", path.display()),
            }
        }
        Ok(out)
    }
}

fn replay_file(path: &Path) -> Result<Session, String> {
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or("bad file name")?
        .to_string();
    let file = fs::File::open(path).map_err(|e| e.to_string())?;
    let mut session: Option<Session> = None;
    for (n, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let event: Event =
            serde_json::from_str(&line).map_err(|e| format!("line {}: {e}", n + 1))?;
        let step = |s: &mut Session| -> Result<(), SessionError> {
            match &event {
                Event::Create { .. } => Err(SessionError::Invalid("duplicate create".into())),
                Event::Mutate { from, vertex, eps } => {
                    s.move_cursor(*from)?;
                    s.mutate(*vertex, *eps, None).map(|_| ())
                }
                Event::Cursor { node } => s.move_cursor(*node).map(|_| ()),
            }
        };
        match (&mut session, &event) {
            (None, Event::Create { seed }) => {
                session = Some(Session::new(id.clone(), seed.clone()).map_err(|e| e.to_string())?)
            }
            (None, _) => return Err("journal does not start with create".into()),
            (Some(s), _) => step(s).map_err(|e| format!("line {}: {e}", n + 1))?,
        }
    }
    session.ok_or_else(|| "empty journal".into())
}
