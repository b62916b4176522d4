//! Binary interchange format for embeddings.
//!
//! All integers little-endian:
//!
//! ```text
//! "LMEB" | version u16 | builder u8 (0 = bfs, 1 = gnn) | n u64 | M u16 | r u16
//!        | R u32 | seed u64 | x: n × D values | sigma: n × D u64 (bfs only)
//! ```
//!
//! `x` holds u64 hop counts for bfs files and f64 distances for gnn files.
//! An all-ones word marks UNREACHED in `x` and an undefined landmark in
//! `sigma`.

use std::io::{Read, Write};

use super::{Builder, Embedding, EmbeddingHeader};
use crate::error::{Error, Result};
use crate::graph::io::Cursor;
use crate::graph::{NodeId, NO_SOURCE};
use crate::scalar::{Distance, Hops};

pub const EMBEDDING_MAGIC: &[u8; 4] = b"LMEB";
pub const EMBEDDING_VERSION: u16 = 1;

const ALL_ONES: u64 = u64::MAX;

/// An embedding read from disk; the builder tag decides the scalar type.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyEmbedding {
    Hops(Embedding<Hops>),
    Real(Embedding<f64>),
}

impl AnyEmbedding {
    pub fn header(&self) -> &EmbeddingHeader {
        match self {
            AnyEmbedding::Hops(e) => e.header(),
            AnyEmbedding::Real(e) => e.header(),
        }
    }

    pub fn builder(&self) -> Builder {
        self.header().builder
    }
}

pub fn write_embedding<T: Distance, W: Write>(emb: &Embedding<T>, mut w: W) -> Result<()> {
    let h = emb.header();
    let cells = emb.coordinates().len();
    let blocks = if h.builder == Builder::Bfs { 2 } else { 1 };
    let mut buf = Vec::with_capacity(32 + 8 * cells * blocks);
    buf.extend_from_slice(EMBEDDING_MAGIC);
    buf.extend_from_slice(&EMBEDDING_VERSION.to_le_bytes());
    buf.push(match h.builder {
        Builder::Bfs => 0,
        Builder::Gnn => 1,
    });
    buf.extend_from_slice(&(h.n as u64).to_le_bytes());
    buf.extend_from_slice(&(h.base as u16).to_le_bytes());
    buf.extend_from_slice(&(h.max_exp as u16).to_le_bytes());
    buf.extend_from_slice(&h.rounds.to_le_bytes());
    buf.extend_from_slice(&h.seed.to_le_bytes());
    for &v in emb.coordinates() {
        let word = match (h.builder, v.is_unreached()) {
            (_, true) => ALL_ONES,
            (Builder::Bfs, false) => hop_word(v)?,
            (Builder::Gnn, false) => v.as_f64().to_bits(),
        };
        buf.extend_from_slice(&word.to_le_bytes());
    }
    if let Some(sigma) = emb.sigma() {
        for &s in sigma {
            let word = if s == NO_SOURCE { ALL_ONES } else { s as u64 };
            buf.extend_from_slice(&word.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

fn hop_word<T: Distance>(v: T) -> Result<u64> {
    v.to_u64()
        .filter(|&w| w as f64 == v.as_f64() && w != ALL_ONES)
        .ok_or_else(|| Error::format(format!("bfs coordinate {v} is not a hop count")))
}

/// Reads a whole embedding; on any error nothing is returned.
pub fn read_embedding<R: Read>(mut r: R) -> Result<AnyEmbedding> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let mut c = Cursor::new(&bytes);
    if c.take(4)? != EMBEDDING_MAGIC {
        return Err(Error::format("missing LMEB magic"));
    }
    let version = c.u16()?;
    if version != EMBEDDING_VERSION {
        return Err(Error::format(format!(
            "unsupported embedding version {version}"
        )));
    }
    let builder = match c.u8()? {
        0 => Builder::Bfs,
        1 => Builder::Gnn,
        t => return Err(Error::format(format!("unknown builder tag {t}"))),
    };
    let n = c.u64()?;
    let n = usize::try_from(n).map_err(|_| Error::format("node count too large"))?;
    let header = EmbeddingHeader {
        n,
        base: c.u16()? as u32,
        max_exp: c.u16()? as u32,
        rounds: c.u32()?,
        seed: c.u64()?,
        builder,
    };
    if header.base <= 1 {
        return Err(Error::format(format!(
            "base M = {} must exceed 1",
            header.base
        )));
    }
    let cells = (n as u64)
        .checked_mul(header.dims() as u64)
        .ok_or_else(|| Error::format("shape overflows"))?;
    let blocks = if builder == Builder::Bfs { 2 } else { 1 };
    let expected = cells
        .checked_mul(8 * blocks)
        .ok_or_else(|| Error::format("shape overflows"))?;
    if expected != c.remaining() as u64 {
        return Err(Error::format(format!(
            "payload is {} bytes, header implies {expected}",
            c.remaining()
        )));
    }
    let cells = cells as usize;

    let shape = |e: Error| Error::format(e.to_string());
    match builder {
        Builder::Bfs => {
            let x = (0..cells)
                .map(|_| match c.u64()? {
                    ALL_ONES => Ok(Hops::UNREACHED),
                    w => Hops::try_from(w)
                        .ok()
                        .filter(|&h| h != Hops::UNREACHED)
                        .ok_or_else(|| Error::format(format!("hop count {w} too large"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let sigma = (0..cells)
                .map(|_| match c.u64()? {
                    ALL_ONES => Ok(NO_SOURCE),
                    w if w < n as u64 => Ok(w as NodeId),
                    w => Err(Error::format(format!("landmark id {w} out of range"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Embedding::from_parts(header, x, Some(sigma))
                .map(AnyEmbedding::Hops)
                .map_err(shape)
        }
        Builder::Gnn => {
            let x = (0..cells)
                .map(|_| {
                    let w = c.u64()?;
                    let v = f64::from_bits(w);
                    if w == ALL_ONES || v == f64::INFINITY {
                        Ok(f64::UNREACHED)
                    } else if v.is_nan() {
                        Err(Error::format("NaN coordinate"))
                    } else {
                        Ok(v)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Embedding::from_parts(header, x, None)
                .map(AnyEmbedding::Real)
                .map_err(shape)
        }
    }
}
