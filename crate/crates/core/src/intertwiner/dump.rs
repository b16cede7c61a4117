//! Text dumps of solved blocks.
//!
//! ```text
//! format=1
//! # tensor: S
//! # params: canonical
//! # block: P=1,Q=1
//! # uniqueness: 1
//! 0,1,0|0,1,0 -> 1-q^4
//! ```

use std::fmt::Write as _;

use crate::coeff::{Coefficient, Symbolic};
use crate::error::{Error, Result};
use crate::fock::MultiIndex;

use super::{Block, BlockKey, TensorKind};

pub const DUMP_FORMAT: u32 = 1;

pub fn write_header(kind: TensorKind, params: &str) -> String {
    format!("format={DUMP_FORMAT}\n# tensor: {kind}\n# params: {params}\n")
}

pub fn write_block(block: &Block<Coefficient>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# block: {}", block.key);
    let _ = writeln!(s, "# uniqueness: {}", block.uniqueness);
    for (o, x, v) in block.nonzero_entries() {
        let _ = writeln!(s, "{o}|{x} -> {v}");
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct DumpedBlock {
    pub key: BlockKey,
    pub uniqueness: Option<usize>,
    pub entries: Vec<(MultiIndex, MultiIndex, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedDump {
    pub kind: TensorKind,
    pub params: String,
    pub blocks: Vec<DumpedBlock>,
}

fn bad(line: usize, msg: &str) -> Error {
    Error::Dump(format!("line {}: {msg}", line + 1))
}

fn parse_index(s: &str, len: usize, line: usize) -> Result<MultiIndex> {
    let v: Vec<u32> = s.split(',').map(|x| x.trim().parse::<u32>()).collect::<std::result::Result<_, _>>().map_err(|_| bad(line, "bad index"))?;
    if v.len() != len || v.iter().any(|&x| x > crate::fock::MAX_OCCUPATION) {
        return Err(bad(line, "index arity"));
    }
    Ok(MultiIndex::new(&v))
}

pub fn parse_dump(text: &str) -> Result<ParsedDump> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == format!("format={DUMP_FORMAT}") => {}
        _ => return Err(Error::Dump("missing format=1 header".into())),
    }
    let mut kind = None;
    let mut params = None;
    let mut blocks: Vec<DumpedBlock> = Vec::new();
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix("# tensor: ") {
            kind = Some(match rest.trim() {
                "S" => TensorKind::S,
                "J" => TensorKind::J,
                _ => return Err(bad(n, "unknown tensor")),
            });
        } else if let Some(rest) = line.strip_prefix("# params: ") {
            params = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("# block: ") {
            let (p, q) = rest.trim().split_once(',').ok_or_else(|| bad(n, "block header"))?;
            let p = p.strip_prefix("P=").and_then(|x| x.parse().ok()).ok_or_else(|| bad(n, "block P"))?;
            let q = q.strip_prefix("Q=").and_then(|x| x.parse().ok()).ok_or_else(|| bad(n, "block Q"))?;
            blocks.push(DumpedBlock { key: BlockKey::new(p, q), uniqueness: None, entries: Vec::new() });
        } else if let Some(rest) = line.strip_prefix("# uniqueness: ") {
            let b = blocks.last_mut().ok_or_else(|| bad(n, "uniqueness outside a block"))?;
            b.uniqueness = Some(rest.trim().parse().map_err(|_| bad(n, "uniqueness"))?);
        } else if line.starts_with('#') {
            continue;
        } else {
            let k = kind.ok_or_else(|| bad(n, "entry before tensor header"))?;
            let b = blocks.last_mut().ok_or_else(|| bad(n, "entry outside a block"))?;
            let (idx, val) = line.split_once(" -> ").ok_or_else(|| bad(n, "entry"))?;
            let (o, x) = idx.split_once('|').ok_or_else(|| bad(n, "entry indices"))?;
            let o = parse_index(o, k.slots(), n)?;
            let x = parse_index(x, k.slots(), n)?;
            if k.key(o) != b.key || k.key(x) != b.key {
                return Err(bad(n, "entry outside its block"));
            }
            let v: Coefficient = val.trim().parse().map_err(|e| bad(n, &format!("coefficient: {e}")))?;
            b.entries.push((o, x, v));
        }
    }
    Ok(ParsedDump {
        kind: kind.ok_or_else(|| Error::Dump("missing tensor header".into()))?,
        params: params.ok_or_else(|| Error::Dump("missing params header".into()))?,
        blocks,
    })
}

impl Block<Coefficient> {
    /// Rebuilds a block from its dumped entries.
    pub fn from_dump(kind: TensorKind, d: &DumpedBlock) -> Result<Self> {
        let states = kind.block_states(d.key);
        let n = states.len();
        let mut entries = vec![vec![Coefficient::zero(); n]; n];
        let pos = |m: &MultiIndex| states.binary_search(m).map_err(|_| Error::Dump(format!("state {m} not in block {}", d.key)));
        for (o, x, v) in &d.entries {
            entries[pos(o)?][pos(x)?] = v.clone();
        }
        Ok(Block::new(&Symbolic, d.key, states.clone(), entries, d.uniqueness.unwrap_or(1)))
    }
}
