//! Append-only, hash-chained log of cycle reports and task contracts.
//!
//! One JSON object per line with keys `seq`, `kind`, `payload`,
//! `prev_hash`, `hash` in that order. `payload` is the compact JSON
//! serialization of the recorded value, stored as a string. Each hash is
//!
//! ```text
//! SHA-256( seq as u64 big-endian || kind name || payload bytes || prev_hash raw 32 bytes )
//! ```
//!
//! Entry 0 is always a genesis record whose `prev_hash` is all zeros.
//! Every line must be byte-identical to the canonical rendering of the
//! record it parses to, so any edit to a stored byte is caught.
//!
//! A ledger has a single writer. Truncation at a record boundary cannot be
//! detected without an external anchor for the tail hash.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::oracle::{CycleReport, TaskSpec};

pub type Digest32 = [u8; 32];

pub const ZERO_HASH: Digest32 = [0; 32];
const GENESIS_PAYLOAD: &str = r#"{"ledger":"dorg","version":1}"#;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryKind {
    Genesis,
    Cycle,
    Task,
}

impl EntryKind {
    fn name(self) -> &'static str {
        match self {
            EntryKind::Genesis => "Genesis",
            EntryKind::Cycle => "Cycle",
            EntryKind::Task => "Task",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Cycle(CycleReport),
    Task(TaskSpec),
}

impl Payload {
    fn kind(&self) -> EntryKind {
        match self {
            Payload::Cycle(_) => EntryKind::Cycle,
            Payload::Task(_) => EntryKind::Task,
        }
    }

    fn to_canonical(&self) -> Result<String> {
        Ok(match self {
            Payload::Cycle(report) => serde_json::to_string(report)?,
            Payload::Task(task) => serde_json::to_string(task)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub seq: u64,
    pub kind: EntryKind,
    pub payload: String,
    pub prev_hash: Digest32,
    pub hash: Digest32,
}

impl LedgerEntry {
    fn seal(seq: u64, kind: EntryKind, payload: String, prev_hash: Digest32) -> Self {
        let hash = entry_hash(seq, kind, &payload, &prev_hash);
        LedgerEntry {
            seq,
            kind,
            payload,
            prev_hash,
            hash,
        }
    }

    /// The line as stored, without the trailing newline.
    pub fn to_line(&self) -> String {
        Record {
            seq: self.seq,
            kind: self.kind,
            payload: self.payload.clone(),
            prev_hash: hex::encode(self.prev_hash),
            hash: hex::encode(self.hash),
        }
        .render()
    }
}

pub fn entry_hash(seq: u64, kind: EntryKind, payload: &str, prev_hash: &Digest32) -> Digest32 {
    let mut hasher = Sha256::new();
    hasher.update(seq.to_be_bytes());
    hasher.update(kind.name().as_bytes());
    hasher.update(payload.as_bytes());
    hasher.update(prev_hash);
    hasher.finalize().into()
}

#[derive(Serialize, Deserialize)]
struct Record {
    seq: u64,
    kind: EntryKind,
    payload: String,
    prev_hash: String,
    hash: String,
}

impl Record {
    fn render(&self) -> String {
        serde_json::to_string(self).expect("record fields always serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    /// Chain intact with this many entries, genesis included.
    Ok(u64),
    /// First entry whose bytes, hash or linkage fail.
    Corrupt(u64),
}

fn parse_line(line: &[u8], seq: u64, prev: &Digest32) -> Option<LedgerEntry> {
    let text = std::str::from_utf8(line).ok()?;
    let record: Record = serde_json::from_str(text).ok()?;
    if record.render() != text || record.seq != seq {
        return None;
    }
    if (seq == 0) != (record.kind == EntryKind::Genesis) {
        return None;
    }
    // Compare encoded forms: hex decoding alone would accept uppercase digits.
    let hash = entry_hash(seq, record.kind, &record.payload, prev);
    if record.prev_hash != hex::encode(prev) || record.hash != hex::encode(hash) {
        return None;
    }
    let prev_hash = *prev;
    Some(LedgerEntry {
        seq,
        kind: record.kind,
        payload: record.payload,
        prev_hash,
        hash,
    })
}

/// Walks the chain, returning the entries up to the first bad one and,
/// if any, that entry's sequence number.
fn scan(bytes: &[u8]) -> (Vec<LedgerEntry>, Option<u64>) {
    let mut entries: Vec<LedgerEntry> = Vec::new();
    let mut rest = bytes;
    while !rest.is_empty() {
        let seq = entries.len() as u64;
        let Some(end) = rest.iter().position(|&b| b == b'\n') else {
            // Unterminated final line.
            return (entries, Some(seq));
        };
        let prev = entries.last().map_or(ZERO_HASH, |e| e.hash);
        match parse_line(&rest[..end], seq, &prev) {
            Some(entry) => entries.push(entry),
            None => return (entries, Some(seq)),
        }
        rest = &rest[end + 1..];
    }
    (entries, None)
}

pub fn verify_bytes(bytes: &[u8]) -> Verification {
    match scan(bytes) {
        (entries, None) => Verification::Ok(entries.len() as u64),
        (_, Some(seq)) => Verification::Corrupt(seq),
    }
}

pub fn verify(path: impl AsRef<Path>) -> Result<Verification> {
    Ok(verify_bytes(&std::fs::read(path)?))
}

/// All entries of an intact ledger.
pub fn read_entries(path: impl AsRef<Path>) -> Result<Vec<LedgerEntry>> {
    entries_of(&std::fs::read(path)?)
}

fn entries_of(bytes: &[u8]) -> Result<Vec<LedgerEntry>> {
    match scan(bytes) {
        (entries, None) => Ok(entries),
        (_, Some(seq)) => Err(Error::CorruptLedger(seq)),
    }
}

pub fn replay_bytes(bytes: &[u8]) -> Result<Vec<CycleReport>> {
    entries_of(bytes)?
        .into_iter()
        .filter(|e| e.kind == EntryKind::Cycle)
        .map(|e| serde_json::from_str(&e.payload).map_err(Error::from))
        .collect()
}

/// Cycle reports in append order; task entries are skipped.
pub fn replay(path: impl AsRef<Path>) -> Result<Vec<CycleReport>> {
    replay_bytes(&std::fs::read(path)?)
}

/// Exclusive appender over a ledger file.
#[derive(Debug)]
pub struct Ledger {
    path: PathBuf,
    file: File,
    len: u64,
    tail: Digest32,
}

impl Ledger {
    /// Opens or creates the ledger at `path`, verifying what is already there.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        let entries = entries_of(&std::fs::read(&path)?)?;
        Ok(Ledger {
            len: entries.len() as u64,
            tail: entries.last().map_or(ZERO_HASH, |e| e.hash),
            path,
            file,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Number of entries, genesis included.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn tail_hash(&self) -> Digest32 {
        self.tail
    }

    /// Appends `payload`, writing the genesis record first on an empty ledger.
    pub fn append(&mut self, payload: &Payload) -> Result<LedgerEntry> {
        if self.len == 0 {
            let genesis = LedgerEntry::seal(0, EntryKind::Genesis, GENESIS_PAYLOAD.to_string(), ZERO_HASH);
            self.write(&genesis)?;
        }
        let entry = LedgerEntry::seal(self.len, payload.kind(), payload.to_canonical()?, self.tail);
        self.write(&entry)?;
        Ok(entry)
    }

    fn write(&mut self, entry: &LedgerEntry) -> Result<()> {
        let mut line = entry.to_line();
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        self.len += 1;
        self.tail = entry.hash;
        Ok(())
    }
}
