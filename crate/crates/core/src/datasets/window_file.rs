//! Binary window tensor file.
//!
//! Layout (little-endian):
//!
//! ```text
//! magic     b"EDWF"
//! version   u32
//! count     u64
//! seq_len   u32            always 100
//! channels  u32            always 2
//! values    f64 × count·seq_len·channels, row-major (window, time, channel)
//! labels    u8 × count     activity codes
//! domains   u8 × count     0 = source, 1 = target
//! heads     u8 × count     head-movement codes
//! origins   count × (u32 byte length + UTF-8 bytes)
//! ```

use std::path::Path;

use super::labels::{ActivityLabel, DomainTag, HeadMovement};
use super::windows::{LabeledWindow, CHANNELS, WINDOW_LEN};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"EDWF";
pub const WINDOW_FILE_VERSION: u32 = 1;

pub fn encode_windows(windows: &[LabeledWindow]) -> Vec<u8> {
    let mut buf = Vec::with_capacity(24 + windows.len() * (WINDOW_LEN * CHANNELS * 8 + 16));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&WINDOW_FILE_VERSION.to_le_bytes());
    buf.extend_from_slice(&(windows.len() as u64).to_le_bytes());
    buf.extend_from_slice(&(WINDOW_LEN as u32).to_le_bytes());
    buf.extend_from_slice(&(CHANNELS as u32).to_le_bytes());
    for w in windows {
        for v in w.data().iter().flatten() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    buf.extend(windows.iter().map(|w| w.label as u8));
    buf.extend(windows.iter().map(|w| w.domain as u8));
    buf.extend(windows.iter().map(|w| w.head.code()));
    for w in windows {
        buf.extend_from_slice(&(w.origin.len() as u32).to_le_bytes());
        buf.extend_from_slice(w.origin.as_bytes());
    }
    buf
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|e| *e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Corruption("window file is truncated".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

pub fn decode_windows(bytes: &[u8]) -> Result<Vec<LabeledWindow>> {
    let mut cur = Cursor { bytes, pos: 0 };
    if cur.take(4)? != MAGIC {
        return Err(Error::Compatibility("not a window file".into()));
    }
    let version = cur.u32()?;
    if version != WINDOW_FILE_VERSION {
        return Err(Error::Compatibility(format!(
            "window file version {version}, expected {WINDOW_FILE_VERSION}"
        )));
    }
    let count = cur.u64()? as usize;
    let (seq, ch) = (cur.u32()? as usize, cur.u32()? as usize);
    if seq != WINDOW_LEN || ch != CHANNELS {
        return Err(Error::Compatibility(format!(
            "window shape {seq}×{ch}, expected {WINDOW_LEN}×{CHANNELS}"
        )));
    }
    let per = WINDOW_LEN * CHANNELS * 8;
    let values = cur.take(
        count
            .checked_mul(per)
            .ok_or_else(|| Error::Corruption("bad count".into()))?,
    )?;
    let labels = cur.take(count)?;
    let domains = cur.take(count)?;
    let heads = cur.take(count)?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let block = &values[i * per..(i + 1) * per];
        let data = block
            .chunks_exact(CHANNELS * 8)
            .map(|row| {
                let a = f64::from_le_bytes(row[..8].try_into().expect("8 bytes"));
                let g = f64::from_le_bytes(row[8..16].try_into().expect("8 bytes"));
                [a, g]
            })
            .collect();
        let len = cur.u32()? as usize;
        let origin =
            String::from_utf8(cur.take(len)?.to_vec()).map_err(|_| Error::Corruption("origin is not UTF-8".into()))?;
        let label = ActivityLabel::from_index(labels[i] as usize).map_err(|e| Error::Corruption(e.to_string()))?;
        let domain = DomainTag::from_index(domains[i] as usize).map_err(|e| Error::Corruption(e.to_string()))?;
        let head = HeadMovement::from_code(heads[i]).map_err(|e| Error::Corruption(e.to_string()))?;
        out.push(LabeledWindow::new(data, label, domain, head, origin)?);
    }
    if cur.pos != bytes.len() {
        return Err(Error::Corruption("trailing bytes after window records".into()));
    }
    Ok(out)
}

pub fn write_windows(windows: &[LabeledWindow], path: &Path) -> Result<()> {
    std::fs::write(path, encode_windows(windows)).map_err(|e| Error::io(path, e))
}

pub fn read_windows(path: &Path) -> Result<Vec<LabeledWindow>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_windows(&bytes)
}
