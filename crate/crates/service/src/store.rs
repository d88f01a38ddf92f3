//! Append-only JSON-lines log of session events.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use gadgetlab::exercises::AttemptRecord;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "camelCase")]
pub enum Event {
    #[serde(rename_all = "camelCase")]
    SessionCreated {
        session_id: String,
        workflow_id: String,
        timestamp_ms: u64,
    },
    #[serde(rename_all = "camelCase")]
    Attempt { session_id: String, record: AttemptRecord },
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("session log {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("session log {path}, line {line}: {message}")]
    Corrupt { path: PathBuf, line: usize, message: String },
}

/// The single appender of the session log.
#[derive(Debug)]
pub struct Store {
    path: PathBuf,
    file: Mutex<File>,
}

impl Store {
    /// Opens the log, returning the events already in it. A torn last line
    /// (a write cut short by a crash) is dropped and truncated away; any
    /// other unreadable line is an error.
    pub fn open(path: &Path) -> Result<(Store, Vec<Event>), StoreError> {
        let io = |source| StoreError::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut events = Vec::new();
        let mut valid_len = 0u64;
        if path.exists() {
            let mut reader = BufReader::new(File::open(path).map_err(io)?);
            let mut line = String::new();
            let mut number = 0;
            loop {
                line.clear();
                let n = reader.read_line(&mut line).map_err(io)?;
                if n == 0 {
                    break;
                }
                number += 1;
                let complete = line.ends_with('\n');
                if line.trim().is_empty() {
                    valid_len += n as u64;
                    continue;
                }
                match serde_json::from_str::<Event>(line.trim_end()) {
                    Ok(e) if complete => {
                        events.push(e);
                        valid_len += n as u64;
                    }
                    // unterminated final line: the write did not finish
                    _ if !complete => break,
                    Ok(_) => unreachable!(),
                    Err(e) => {
                        return Err(StoreError::Corrupt {
                            path: path.to_path_buf(),
                            line: number,
                            message: e.to_string(),
                        })
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        if file.metadata().map_err(io)?.len() != valid_len {
            file.set_len(valid_len).map_err(io)?;
        }
        Ok((
            Store {
                path: path.to_path_buf(),
                file: Mutex::new(file),
            },
            events,
        ))
    }

    /// Appends one event and flushes it to disk before returning.
    pub fn append(&self, event: &Event) -> Result<(), StoreError> {
        let mut line = serde_json::to_string(event).expect("events serialize");
        line.push('\n');
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        file.write_all(line.as_bytes())
            .and_then(|()| file.sync_data())
            .map_err(|source| StoreError::Io {
                path: self.path.clone(),
                source,
            })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
