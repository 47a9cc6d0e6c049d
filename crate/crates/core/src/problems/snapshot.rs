//! Binary field snapshots.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic      8 bytes  "RWENOSN1"
//! name_len   u32, then name bytes (UTF-8)
//! nx, ny     u64, u64
//! label_len  u32, then scheme label bytes (UTF-8)
//! time       f64
//! ncomp      u32
//! data       nx * ny * ncomp f64, row-major (x fastest), components innermost
//! ```

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::euler::{Cons, NCONS};
use crate::solver::ConservedField;

use super::ProblemError;

const MAGIC: &[u8; 8] = b"RWENOSN1";

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub problem: String,
    pub n: [usize; 2],
    pub scheme: String,
    pub time: f64,
    /// Interior conserved values, row-major.
    pub data: Vec<Cons>,
}

impl Snapshot {
    pub fn from_field(problem: &str, scheme: &str, field: &ConservedField) -> Self {
        Self {
            problem: problem.to_string(),
            n: field.grid.n,
            scheme: scheme.to_string(),
            time: field.time,
            data: field.interior_values(),
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.data.iter().map(|u| u[0]).collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(64 + self.data.len() * NCONS * 8);
        out.extend_from_slice(MAGIC);
        let put_str = |out: &mut Vec<u8>, s: &str| {
            out.extend_from_slice(&(s.len() as u32).to_le_bytes());
            out.extend_from_slice(s.as_bytes());
        };
        put_str(&mut out, &self.problem);
        out.extend_from_slice(&(self.n[0] as u64).to_le_bytes());
        out.extend_from_slice(&(self.n[1] as u64).to_le_bytes());
        put_str(&mut out, &self.scheme);
        out.extend_from_slice(&self.time.to_le_bytes());
        out.extend_from_slice(&(NCONS as u32).to_le_bytes());
        for u in &self.data {
            for v in u {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(mut bytes: &[u8]) -> Result<Self, ProblemError> {
        let bad = |m: &str| ProblemError::Format(m.to_string());
        let mut take = |n: usize| -> Result<&[u8], ProblemError> {
            if bytes.len() < n {
                return Err(bad("truncated"));
            }
            let (head, rest) = bytes.split_at(n);
            bytes = rest;
            Ok(head)
        };
        if take(8)? != MAGIC {
            return Err(bad("bad magic"));
        }
        let u32_at = |b: &[u8]| u32::from_le_bytes(b.try_into().expect("4 bytes")) as usize;
        let u64_at = |b: &[u8]| u64::from_le_bytes(b.try_into().expect("8 bytes")) as usize;
        let len = u32_at(take(4)?);
        let problem = String::from_utf8(take(len)?.to_vec()).map_err(|_| bad("name is not UTF-8"))?;
        let nx = u64_at(take(8)?);
        let ny = u64_at(take(8)?);
        let len = u32_at(take(4)?);
        let scheme = String::from_utf8(take(len)?.to_vec()).map_err(|_| bad("label is not UTF-8"))?;
        let time = f64::from_le_bytes(take(8)?.try_into().expect("8 bytes"));
        let ncomp = u32_at(take(4)?);
        if ncomp != NCONS {
            return Err(bad("unexpected component count"));
        }
        let cells = nx.checked_mul(ny).ok_or_else(|| bad("size overflow"))?;
        let raw = take(cells * NCONS * 8)?;
        let mut data = Vec::with_capacity(cells);
        for chunk in raw.chunks_exact(NCONS * 8) {
            data.push(std::array::from_fn(|m| {
                f64::from_le_bytes(chunk[m * 8..m * 8 + 8].try_into().expect("8 bytes"))
            }));
        }
        if !bytes.is_empty() {
            return Err(bad("trailing bytes"));
        }
        Ok(Self {
            problem,
            n: [nx, ny],
            scheme,
            time,
            data,
        })
    }

    /// Write through a temporary file and rename, so readers never observe a
    /// partial snapshot.
    pub fn save(&self, path: &Path) -> Result<(), ProblemError> {
        let io = |source| ProblemError::Io {
            path: path.to_path_buf(),
            source,
        };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(io)?;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(&self.to_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    pub fn load(path: &Path) -> Result<Self, ProblemError> {
        let io = |source| ProblemError::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut buf = Vec::new();
        fs::File::open(path).map_err(io)?.read_to_end(&mut buf).map_err(io)?;
        Self::from_bytes(&buf)
    }
}
