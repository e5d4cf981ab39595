//! Binary model checkpoint.
//!
//! Layout (little-endian):
//!
//! ```text
//! magic        b"EDCK"
//! version      u32
//! input, hidden, layers, head_hidden, seq_len, classes, domains   u32 each
//! lambda       f64
//! seed         u64
//! tensors      u32 count, then per tensor:
//!                u32 name length, name bytes, u32 rank, u64 × rank dims, f64 values
//! ```

use super::params::{ModelDims, Params};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"EDCK";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub dims: ModelDims,
    pub lambda: f64,
    pub seed: u64,
    pub params: Params,
}

pub fn encode_checkpoint(ck: &Checkpoint) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
    let d = &ck.dims;
    for v in [
        d.input,
        d.hidden,
        d.layers,
        d.head_hidden,
        d.seq_len,
        d.classes,
        d.domains,
    ] {
        buf.extend_from_slice(&(v as u32).to_le_bytes());
    }
    buf.extend_from_slice(&ck.lambda.to_le_bytes());
    buf.extend_from_slice(&ck.seed.to_le_bytes());
    let named = ck.params.named();
    buf.extend_from_slice(&(named.len() as u32).to_le_bytes());
    for (name, t) in named {
        buf.extend_from_slice(&(name.len() as u32).to_le_bytes());
        buf.extend_from_slice(name.as_bytes());
        buf.extend_from_slice(&(t.shape().len() as u32).to_le_bytes());
        for s in t.shape() {
            buf.extend_from_slice(&(*s as u64).to_le_bytes());
        }
        for v in t.data() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    buf
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|e| *e <= self.bytes.len())
            .ok_or_else(|| Error::Corruption("checkpoint is truncated".into()))?;
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

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

pub fn decode_checkpoint(bytes: &[u8]) -> Result<Checkpoint> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Compatibility("not a checkpoint file".into()));
    }
    let version = r.u32()?;
    if version != CHECKPOINT_VERSION {
        return Err(Error::Compatibility(format!(
            "checkpoint version {version}, expected {CHECKPOINT_VERSION}"
        )));
    }
    let mut size = || -> Result<usize> { Ok(r.u32()? as usize) };
    let dims = ModelDims {
        input: size()?,
        hidden: size()?,
        layers: size()?,
        head_hidden: size()?,
        seq_len: size()?,
        classes: size()?,
        domains: size()?,
    };
    dims.validate().map_err(|e| Error::Corruption(e.to_string()))?;
    if [
        dims.input,
        dims.hidden,
        dims.layers,
        dims.head_hidden,
        dims.classes,
        dims.domains,
    ]
    .iter()
    .any(|v| *v > 4096)
    {
        return Err(Error::Corruption(format!("implausible model sizes {dims:?}")));
    }
    let lambda = r.f64()?;
    let seed = r.u64()?;
    let mut params = Params::zeros(&dims);
    let count = r.u32()? as usize;
    let expected = params.named().len();
    if count != expected {
        return Err(Error::Compatibility(format!(
            "checkpoint has {count} tensors, model needs {expected}"
        )));
    }
    let names: Vec<(String, Vec<usize>)> = params
        .named()
        .iter()
        .map(|(n, t)| (n.clone(), t.shape().to_vec()))
        .collect();
    for (i, (want_name, want_shape)) in names.iter().enumerate() {
        let len = r.u32()? as usize;
        let name =
            std::str::from_utf8(r.take(len)?).map_err(|_| Error::Corruption("tensor name is not UTF-8".into()))?;
        if name != want_name {
            return Err(Error::Compatibility(format!(
                "tensor {i} is {name:?}, expected {want_name:?}"
            )));
        }
        let rank = r.u32()? as usize;
        if rank > 8 {
            return Err(Error::Corruption(format!("{name}: rank {rank}")));
        }
        let shape: Vec<usize> = (0..rank).map(|_| r.u64().map(|v| v as usize)).collect::<Result<_>>()?;
        if &shape != want_shape {
            return Err(Error::Compatibility(format!(
                "{name}: shape {shape:?}, expected {want_shape:?}"
            )));
        }
        let n: usize = shape.iter().product();
        let raw = r.take(n * 8)?;
        let slot = &mut params.tensors_mut()[i].1;
        for (dst, chunk) in slot.data_mut().iter_mut().zip(raw.chunks_exact(8)) {
            *dst = f64::from_le_bytes(chunk.try_into().expect("8 bytes"));
        }
    }
    if r.pos != bytes.len() {
        return Err(Error::Corruption("trailing bytes after checkpoint".into()));
    }
    Ok(Checkpoint {
        dims,
        lambda,
        seed,
        params,
    })
}
