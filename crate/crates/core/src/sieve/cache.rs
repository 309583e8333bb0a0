//! Binary cache for a [`SieveTable`].
//!
//! Layout (little endian): the 8-byte magic `GBSIEVE\0`, a `u32` format
//! version, a `u64` limit `N`, then `N` IEEE-754 doubles `Λ(1), ..., Λ(N)`.
//! Prefix sums are rebuilt on load in the same order, so a reloaded table is
//! bit-identical to the original.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::SieveTable;
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"GBSIEVE\0";
pub const CACHE_VERSION: u32 = 1;

impl SieveTable {
    pub fn write_cache<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&CACHE_VERSION.to_le_bytes())?;
        out.write_all(&(self.limit as u64).to_le_bytes())?;
        for value in self.mangoldt_values() {
            out.write_all(&value.to_le_bytes())?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_cache<R: Read>(mut input: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        input.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Io("not a sieve cache file".into()));
        }
        let mut word = [0u8; 4];
        input.read_exact(&mut word)?;
        let version = u32::from_le_bytes(word);
        if version != CACHE_VERSION {
            return Err(Error::Io(format!("unsupported sieve cache version {version}")));
        }
        let mut wide = [0u8; 8];
        input.read_exact(&mut wide)?;
        let limit = usize::try_from(u64::from_le_bytes(wide))
            .map_err(|_| Error::Io("sieve limit does not fit in memory".into()))?;
        if limit < 2 {
            return Err(Error::Io(format!("sieve cache limit {limit} is below 2")));
        }
        let mut mangoldt = Vec::with_capacity(limit + 1);
        mangoldt.push(0.0);
        for _ in 0..limit {
            input.read_exact(&mut wide)?;
            mangoldt.push(f64::from_le_bytes(wide));
        }
        if input.read(&mut wide)? != 0 {
            return Err(Error::Io("trailing bytes after sieve cache".into()));
        }
        Ok(SieveTable::from_mangoldt(mangoldt))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_cache(BufWriter::new(File::create(path)?))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_cache(BufReader::new(File::open(path)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_sieve;

    #[test]
    fn round_trip_is_bit_exact() {
        let table = build_sieve(5000).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sieve.bin");
        table.save(&path).unwrap();
        let loaded = SieveTable::load(&path).unwrap();
        assert_eq!(loaded.limit(), table.limit());
        for n in 1..=table.limit() {
            assert_eq!(loaded.mangoldt(n).to_bits(), table.mangoldt(n).to_bits());
            assert_eq!(
                loaded.chebyshev_l(n as f64).unwrap().to_bits(),
                table.chebyshev_l(n as f64).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn corrupt_input_is_rejected() {
        assert!(SieveTable::read_cache(&b"NOTSIEVE"[..]).is_err());
        let table = build_sieve(10).unwrap();
        let mut bytes = Vec::new();
        table.write_cache(&mut bytes).unwrap();
        assert!(SieveTable::read_cache(&bytes[..bytes.len() - 1]).is_err());
        bytes.push(0);
        assert!(SieveTable::read_cache(&bytes[..]).is_err());
    }
}
