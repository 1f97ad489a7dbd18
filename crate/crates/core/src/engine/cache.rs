//! Binary cache format for [`PairTable`].
//!
//! ```text
//! "CISNIM1\n"                       8-byte ASCII magic
//! u32 version (=1), u32 n, u32 |F|  little-endian
//! |F| x (u32 a, u32 b, u32 c)       canonical, ascending lexicographic
//! for x in 0..n, y in 0..=x: u32 third(x, y)
//! u64 checksum                      byte sum of everything above, mod 2^64
//! ```

use std::io::{Read, Write};

use super::PairTable;
use crate::error::{Error, Result};
use crate::rules::{ForbiddenSet, Position};

pub const MAGIC: &[u8; 8] = b"CISNIM1\n";
pub const VERSION: u32 = 1;

fn checksum(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0u64, |acc, &b| acc.wrapping_add(b as u64))
}

/// Writes `t` in the cache format.
pub fn save_table<W: Write>(t: &PairTable, sink: &mut W) -> Result<()> {
    let fsize = t.forbidden().size();
    let mut buf = Vec::with_capacity(8 + 12 + 12 * fsize + 4 * t.raw().len() + 8);
    buf.extend_from_slice(MAGIC);
    for v in [VERSION, t.n(), fsize as u32] {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    for p in t.forbidden().iter() {
        for h in p.heaps() {
            buf.extend_from_slice(&h.to_le_bytes());
        }
    }
    for &z in t.raw() {
        buf.extend_from_slice(&z.to_le_bytes());
    }
    let sum = checksum(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    sink.write_all(&buf)?;
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, len: usize, what: &str) -> Result<&[u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end =
            end.ok_or_else(|| Error::Format(format!("truncated stream while reading {what}")))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }
}

/// Reads a table written by [`save_table`].
pub fn load_table<R: Read>(source: &mut R) -> Result<PairTable> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let mut cur = Cursor {
        bytes: &bytes,
        pos: 0,
    };
    if cur.take(8, "magic")? != MAGIC {
        return Err(Error::Format("bad magic, not a pair-table cache".into()));
    }
    let version = cur.u32("version")?;
    if version != VERSION {
        return Err(Error::Format(format!(
            "unsupported cache version {version}"
        )));
    }
    let n = cur.u32("n")?;
    let fsize = cur.u32("|F|")? as usize;
    // Reject absurd headers before allocating.
    let entries = (n as u64) * (n as u64 + 1) / 2;
    let needed = 12u64 * fsize as u64 + 4 * entries + 8;
    if needed > (bytes.len() - cur.pos) as u64 {
        return Err(Error::Format(
            "truncated stream: header promises more data".into(),
        ));
    }

    let mut forbidden = ForbiddenSet::new();
    let mut prev: Option<Position> = None;
    for _ in 0..fsize {
        let (a, b, c) = (cur.u32("F")?, cur.u32("F")?, cur.u32("F")?);
        if !(a >= b && b >= c) {
            return Err(Error::Format(format!(
                "forbidden entry ({a},{b},{c}) is not canonical"
            )));
        }
        let p = Position::new(a, b, c);
        if prev.is_some_and(|q| q >= p) {
            return Err(Error::Format(
                "forbidden entries are not strictly ascending".into(),
            ));
        }
        prev = Some(p);
        forbidden.insert(p);
    }

    let mut third = Vec::with_capacity(entries as usize);
    for _ in 0..entries {
        third.push(cur.u32("table")?);
    }
    let body_end = cur.pos;
    let stored = u64::from_le_bytes(cur.take(8, "checksum")?.try_into().unwrap());
    if cur.pos != bytes.len() {
        return Err(Error::Format("trailing bytes after checksum".into()));
    }
    if checksum(&bytes[..body_end]) != stored {
        return Err(Error::Format("checksum mismatch".into()));
    }
    if n == 0 {
        return Err(Error::Format("table with n = 0".into()));
    }
    Ok(PairTable::from_parts(n, forbidden, third))
}
