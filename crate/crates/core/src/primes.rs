//! Prime tables.
//!
//! A single process-wide table is grown on demand and shared read-only.  It
//! can optionally be persisted to a cache directory (little-endian `u32`
//! words) so repeated CLI runs do not re-sieve.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

/// Plain sieve of Eratosthenes: all primes `<= limit`.
pub fn sieve_primes(limit: u64) -> Vec<u32> {
    assert!(limit <= u32::MAX as u64, "prime table limit must fit in u32");
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u32).collect()
}

struct Table {
    limit: u64,
    primes: Arc<Vec<u32>>,
}

fn table() -> &'static Mutex<Table> {
    static TABLE: OnceLock<Mutex<Table>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Mutex::new(Table {
            limit: 1,
            primes: Arc::new(Vec::new()),
        })
    })
}

/// Shared table containing at least every prime `<= limit` (possibly more).
pub fn primes_up_to(limit: u64) -> Arc<Vec<u32>> {
    let mut t = table().lock().expect("prime table poisoned");
    if t.limit < limit {
        let grown = limit.max(t.limit.saturating_mul(2)).min(u32::MAX as u64);
        t.primes = Arc::new(sieve_primes(grown));
        t.limit = grown;
    }
    Arc::clone(&t.primes)
}

/// Primes `<= limit` as an owned slice view of the shared table.
pub fn primes_le(limit: u64) -> Vec<u32> {
    let all = primes_up_to(limit);
    let end = all.partition_point(|&p| (p as u64) <= limit);
    all[..end].to_vec()
}

fn cache_file(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("primes_le_{limit}.u32le"))
}

/// Loads the table for `limit` from `dir` if present, otherwise sieves and
/// writes it. The loaded table also seeds the process-wide table.
pub fn load_or_build(dir: &Path, limit: u64) -> io::Result<Arc<Vec<u32>>> {
    let path = cache_file(dir, limit);
    let primes = match fs::File::open(&path) {
        Ok(mut f) => {
            let mut bytes = Vec::new();
            f.read_to_end(&mut bytes)?;
            if bytes.len() % 4 != 0 {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("truncated prime cache {}", path.display()),
                ));
            }
            bytes
                .chunks_exact(4)
                .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect()
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            let primes = sieve_primes(limit);
            fs::create_dir_all(dir)?;
            let mut f = fs::File::create(&path)?;
            let mut buf = Vec::with_capacity(primes.len() * 4);
            for p in &primes {
                buf.extend_from_slice(&p.to_le_bytes());
            }
            f.write_all(&buf)?;
            primes
        }
        Err(e) => return Err(e),
    };
    let primes = Arc::new(primes);
    let mut t = table().lock().expect("prime table poisoned");
    if t.limit < limit {
        t.limit = limit;
        t.primes = Arc::clone(&primes);
    }
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        assert_eq!(sieve_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(sieve_primes(1).is_empty());
        assert_eq!(sieve_primes(100_000).len(), 9592);
    }

    #[test]
    fn shared_table_grows() {
        let a = primes_up_to(100);
        assert!(a.len() >= 25);
        assert_eq!(primes_le(100).len(), 25);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("midprime-test-{}", std::process::id()));
        let first = load_or_build(&dir, 1000).unwrap();
        let second = load_or_build(&dir, 1000).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.len(), 168);
        let _ = fs::remove_dir_all(&dir);
    }
}
