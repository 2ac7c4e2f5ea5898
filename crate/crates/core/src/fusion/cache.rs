//! On-disk memo of 3-point tables.
//!
//! File layout, all little endian:
//! `b"CBDV3PT\0"`, version `u32`, `r+1` as `u32`, level `u32`, alcove size
//! `u64`, then `d³` values `u64` for the triples `(a, b, c)` in
//! lexicographic order of sorted alcove indices.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::weights::LeveledAlgebra;

const MAGIC: &[u8; 8] = b"CBDV3PT\0";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 4 + 4 + 8;

fn file_name(dir: &Path, alg: &LeveledAlgebra) -> PathBuf {
    dir.join(format!(
        "sl{}_level{}.3pt",
        alg.rank_plus_one(),
        alg.level()
    ))
}

pub(super) fn load(dir: &Path, alg: &LeveledAlgebra) -> Option<Vec<u64>> {
    let bytes = fs::read(file_name(dir, alg)).ok()?;
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return None;
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    if u32_at(8) != VERSION
        || u32_at(12) as usize != alg.rank_plus_one()
        || u32_at(16) != alg.level()
    {
        return None;
    }
    let d = u64::from_le_bytes(bytes[20..28].try_into().unwrap());
    if d != alg.alcove_size() {
        return None;
    }
    let body = &bytes[HEADER_LEN..];
    if body.len() as u64 != d * d * d * 8 {
        return None;
    }
    Some(
        body.chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect(),
    )
}

pub(super) fn store(dir: &Path, alg: &LeveledAlgebra, values: &[u64]) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut buf = Vec::with_capacity(HEADER_LEN + values.len() * 8);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(alg.rank_plus_one() as u32).to_le_bytes());
    buf.extend_from_slice(&alg.level().to_le_bytes());
    buf.extend_from_slice(&alg.alcove_size().to_le_bytes());
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    // write then rename, so concurrent readers never see a torn file
    let path = file_name(dir, alg);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(&buf).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(())
}
