//! Binary cache of a [`PolarIndex`].
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic        8 bytes   "PTWXIDX1"
//! version      u32       1
//! q            u32
//! dim          u32       2n
//! form_len     u32       followed by form_len bytes of UTF-8 form name
//! points       u64 count, then one u64 packed spanning vector per point
//! maximals     u64 count, u64 greek count, then n u64 echelon rows each
//! flips        u64 hyperplanes per maximal, then count*h u32 ids
//! digest       32 bytes  SHA-256 of every preceding byte
//! ```

use std::io::{Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Subspace;

use super::{PolarIndex, QuadraticSpace, FORM_NAME};

pub const CACHE_MAGIC: &[u8; 8] = b"PTWXIDX1";
const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub q: u32,
    pub dim: u32,
    pub form: String,
    pub digest: String,
}

pub fn write_cache(index: &PolarIndex, mut out: impl Write) -> Result<CacheHeader> {
    let space = index.space();
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&space.q().to_le_bytes());
    buf.extend_from_slice(&(space.dim() as u32).to_le_bytes());
    buf.extend_from_slice(&(FORM_NAME.len() as u32).to_le_bytes());
    buf.extend_from_slice(FORM_NAME.as_bytes());
    buf.extend_from_slice(&(index.points().len() as u64).to_le_bytes());
    for p in index.points() {
        buf.extend_from_slice(&p.rows()[0].to_le_bytes());
    }
    buf.extend_from_slice(&(index.maximals().len() as u64).to_le_bytes());
    buf.extend_from_slice(&(index.greek_count() as u64).to_le_bytes());
    for m in index.maximals() {
        for r in m.rows() {
            buf.extend_from_slice(&r.to_le_bytes());
        }
    }
    buf.extend_from_slice(&(index.hyperplanes_per_maximal() as u64).to_le_bytes());
    for id in index.flip_table() {
        buf.extend_from_slice(&id.to_le_bytes());
    }
    let digest = Sha256::digest(&buf);
    out.write_all(&buf)?;
    out.write_all(&digest)?;
    Ok(CacheHeader {
        q: space.q(),
        dim: space.dim() as u32,
        form: FORM_NAME.to_string(),
        digest: hex(&digest),
    })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.data.len());
        let end = end.ok_or_else(|| Error::Cache("truncated".into()))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Reads a cache written for `space`; rejects mismatched parameters and
/// corrupted content.
pub fn read_cache(space: &QuadraticSpace, mut input: impl Read) -> Result<(PolarIndex, CacheHeader)> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    if data.len() < 32 + CACHE_MAGIC.len() {
        return Err(Error::Cache("truncated".into()));
    }
    let (body, digest) = data.split_at(data.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err(Error::Cache("content hash mismatch".into()));
    }
    let mut c = Cursor { data: body, pos: 0 };
    if c.take(8)? != CACHE_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    if c.u32()? != VERSION {
        return Err(Error::Cache("unsupported version".into()));
    }
    let q = c.u32()?;
    let dim = c.u32()?;
    let form_len = c.u32()? as usize;
    let form = String::from_utf8(c.take(form_len)?.to_vec()).map_err(|_| Error::Cache("form name".into()))?;
    if q != space.q() || dim as usize != space.dim() || form != FORM_NAME {
        return Err(Error::Cache(format!("cache is for q={q} dim={dim} form={form}")));
    }
    let n = space.dim();
    let npoints = c.u64()? as usize;
    let mut points = Vec::with_capacity(npoints);
    for _ in 0..npoints {
        points.push(Subspace::from_rref_rows(n, &[c.u64()?]));
    }
    let nmax = c.u64()? as usize;
    let greek_count = c.u64()? as usize;
    let mut maximals = Vec::with_capacity(nmax);
    let mut rows = vec![0u64; space.rank()];
    for _ in 0..nmax {
        for r in rows.iter_mut() {
            *r = c.u64()?;
        }
        maximals.push(Subspace::from_rref_rows(n, &rows));
    }
    let h = c.u64()? as usize;
    let mut flips = Vec::with_capacity(nmax * h);
    for _ in 0..nmax * h {
        flips.push(c.u32()?);
    }
    if c.pos != body.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    let index = PolarIndex::from_parts(space.clone(), points, maximals, greek_count, flips)?;
    Ok((index, CacheHeader { q, dim, form, digest: hex(digest) }))
}

/// Loads `dir/<file>` if present and valid, otherwise builds the index and
/// writes it there.
pub fn load_or_build(space: &QuadraticSpace, dir: Option<&Path>) -> Result<PolarIndex> {
    let Some(dir) = dir else {
        return PolarIndex::build(space.clone());
    };
    let path = dir.join(format!("polar-q{}-d{}-{}.pidx", space.q(), space.dim(), space.form_hash()));
    if let Ok(file) = std::fs::File::open(&path) {
        match read_cache(space, std::io::BufReader::new(file)) {
            Ok((idx, _)) => return Ok(idx),
            Err(e) => log::warn!("ignoring cache {}: {e}", path.display()),
        }
    }
    let idx = PolarIndex::build(space.clone())?;
    std::fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    write_cache(&idx, std::io::BufWriter::new(std::fs::File::create(&tmp)?))?;
    std::fs::rename(&tmp, &path)?;
    Ok(idx)
}
