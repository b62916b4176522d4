//! Edge-list text and canonical binary graph formats.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! "LMGR" | version: u16 | n: u64 | offsets: (n + 1) × u64 | neighbors: 2m × u64
//! ```

use std::io::{BufRead, Read, Write};

use super::{Graph, NodeId, Simplification};
use crate::error::{Error, Result};

pub const GRAPH_MAGIC: &[u8; 4] = b"LMGR";
pub const GRAPH_VERSION: u16 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub lines: usize,
    pub edges_read: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct Ingested {
    pub graph: Graph,
    /// Original label of each dense node id.
    pub labels: Vec<u64>,
    pub stats: IngestStats,
}

/// Parses a whitespace-separated edge list (`u v` per line, `#` comments).
///
/// Labels are remapped to `0..n` in ascending label order; self-loops and
/// repeated edges are dropped and counted.
pub fn ingest_edgelist<R: BufRead>(reader: R) -> Result<Ingested> {
    let mut raw = Vec::new();
    let mut lines = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        lines += 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let mut next = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: "expected two node labels".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("`{tok}` is not a nonnegative integer"),
            })
        };
        let (u, v) = (next()?, next()?);
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: i + 1,
                msg: "trailing tokens after edge".into(),
            });
        }
        raw.push((u, v));
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let id = |l: u64| labels.binary_search(&l).unwrap() as NodeId;
    let edges: Vec<_> = raw.iter().map(|&(u, v)| (id(u), id(v))).collect();
    let (
        graph,
        Simplification {
            self_loops,
            duplicates,
        },
    ) = Graph::from_edges(labels.len(), edges)?;
    Ok(Ingested {
        graph,
        labels,
        stats: IngestStats {
            lines,
            edges_read: raw.len(),
            self_loops,
            duplicates,
        },
    })
}

/// One `u v` line per edge with `u < v`. Isolated nodes are not represented.
pub fn write_edgelist<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_binary<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    let mut buf = Vec::with_capacity(14 + 8 * (g.offsets().len() + g.targets().len()));
    buf.extend_from_slice(GRAPH_MAGIC);
    buf.extend_from_slice(&GRAPH_VERSION.to_le_bytes());
    buf.extend_from_slice(&(g.node_count() as u64).to_le_bytes());
    for &o in g.offsets() {
        buf.extend_from_slice(&(o as u64).to_le_bytes());
    }
    for &t in g.targets() {
        buf.extend_from_slice(&(t as u64).to_le_bytes());
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<Graph> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    parse_binary(&bytes)
}

/// Reads either format, choosing by the leading magic bytes.
pub fn read_graph<R: Read>(mut r: R) -> Result<Graph> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.starts_with(GRAPH_MAGIC) {
        parse_binary(&bytes)
    } else {
        Ok(ingest_edgelist(bytes.as_slice())?.graph)
    }
}

pub(crate) struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    pub(crate) fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::format("unexpected end of input"))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub(crate) fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub(crate) fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub(crate) fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub(crate) fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub(crate) fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    /// Bounds a declared element count by the bytes actually present, so a
    /// corrupt header cannot trigger a huge allocation.
    pub(crate) fn check_len(&self, count: u64, width: usize) -> Result<usize> {
        match count.checked_mul(width as u64) {
            Some(bytes) if bytes <= self.remaining() as u64 => Ok(count as usize),
            _ => Err(Error::format("unexpected end of input")),
        }
    }
}

fn parse_binary(bytes: &[u8]) -> Result<Graph> {
    let mut c = Cursor::new(bytes);
    if c.take(4)? != GRAPH_MAGIC {
        return Err(Error::format("missing LMGR magic"));
    }
    let version = c.u16()?;
    if version != GRAPH_VERSION {
        return Err(Error::format(format!(
            "unsupported graph version {version}"
        )));
    }
    let n = c.u64()?;
    let n_off = c.check_len(n.saturating_add(1), 8)?;
    let offsets = (0..n_off)
        .map(|_| c.u64().map(|o| o as usize))
        .collect::<Result<Vec<_>>>()?;
    let m2 = *offsets.last().unwrap() as u64;
    let m2 = c.check_len(m2, 8)?;
    let targets = (0..m2)
        .map(|_| {
            let t = c.u64()?;
            NodeId::try_from(t).map_err(|_| Error::format(format!("neighbor id {t} too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    if c.remaining() != 0 {
        return Err(Error::format("trailing bytes after graph"));
    }
    Graph::from_csr(offsets, targets)
}
