use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;
use std::sync::RwLock;

use num_bigint::BigUint;
use serde::Deserialize;
use thiserror::Error;

use super::key::parse_sample_key;
use crate::lattice::MonomialIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CacheError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("cache line {line}, column {column}: {message}")]
    Format { line: usize, column: usize, message: String },
    #[error("cache line {line}: key {key} stores {stored} but recomputes to {recomputed}")]
    Inconsistency { line: usize, key: String, stored: String, recomputed: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    k: String,
    v: String,
}

/// Write-once memo of sampled colengths, shareable across threads.
///
/// On disk: one `{"k": "<key>", "v": "<decimal>"}` record per line, sorted by
/// key, so storing what was loaded reproduces the file byte for byte.
#[derive(Debug, Default)]
pub struct SampleCache {
    entries: RwLock<HashMap<String, BigUint>>,
}

impl SampleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &str) -> Option<BigUint> {
        self.entries.read().unwrap().get(key).cloned()
    }

    /// Inserts unless the key is already present; concurrent duplicate
    /// computations write the same value, so the first one wins.
    pub fn insert(&self, key: String, value: BigUint) {
        self.entries.write().unwrap().entry(key).or_insert(value);
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn snapshot(&self) -> BTreeMap<String, BigUint> {
        self.entries.read().unwrap().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.snapshot() {
            let k = serde_json::to_string(&k).expect("string serialization");
            out.push_str(&format!("{{\"k\": {k}, \"v\": \"{v}\"}}\n"));
        }
        out
    }

    /// Parses cache text. With `verify`, every record is recomputed from its
    /// key and compared against the stored value.
    pub fn parse(text: &str, verify: bool) -> Result<Self, CacheError> {
        let mut map = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Record = serde_json::from_str(line).map_err(|e| CacheError::Format {
                line: lineno,
                column: e.column(),
                message: e.to_string(),
            })?;
            let value = parse_decimal(&rec.v).ok_or_else(|| CacheError::Format {
                line: lineno,
                column: line.find("\"v\"").map_or(1, |c| c + 1),
                message: format!("value {:?} is not a canonical decimal integer", rec.v),
            })?;
            let parsed = parse_sample_key(&rec.k).map_err(|message| CacheError::Format {
                line: lineno,
                column: line.find("\"k\"").map_or(1, |c| c + 1),
                message,
            })?;
            if verify {
                let recomputed = recompute(&parsed.factors).map_err(|message| {
                    CacheError::Format { line: lineno, column: 1, message }
                })?;
                if recomputed != value {
                    return Err(CacheError::Inconsistency {
                        line: lineno,
                        key: rec.k,
                        stored: rec.v,
                        recomputed: recomputed.to_string(),
                    });
                }
            }
            if let Some(prev) = map.get(&rec.k) {
                if *prev != value {
                    return Err(CacheError::Format {
                        line: lineno,
                        column: 1,
                        message: format!("key {} repeated with a different value", rec.k),
                    });
                }
            }
            map.insert(rec.k, value);
        }
        Ok(SampleCache { entries: RwLock::new(map) })
    }

    pub fn load(path: &Path, verify: bool) -> Result<Self, CacheError> {
        let text = fs::read_to_string(path).map_err(|e| CacheError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, verify)
    }

    pub fn store(&self, path: &Path) -> Result<(), CacheError> {
        fs::write(path, self.render()).map_err(|e| CacheError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

fn parse_decimal(s: &str) -> Option<BigUint> {
    let canonical = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    canonical.then(|| s.parse().ok()).flatten()
}

fn recompute(factors: &[(MonomialIdeal, u32)]) -> Result<BigUint, String> {
    let mut product: Option<MonomialIdeal> = None;
    for (ideal, r) in factors {
        let p = ideal.power(*r).map_err(|e| e.to_string())?;
        product = Some(match product {
            None => p,
            Some(acc) => acc.product(&p).map_err(|e| e.to_string())?,
        });
    }
    match product {
        None => Ok(BigUint::from(0u32)),
        Some(p) => p.finite_colength().map_err(|e| e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "{\"k\": \"rm1;poly(2);[(1,0),(0,1)]^1*[(1,0),(0,2)]^1\", \"v\": \"4\"}\n\
                          {\"k\": \"rm1;sg(4,5,7);[4,5,7]^3\", \"v\": \"8\"}\n";

    #[test]
    fn round_trip_is_bit_exact() {
        let c = SampleCache::parse(SAMPLE, true).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.render(), SAMPLE);
    }

    #[test]
    fn empty_file_is_empty_cache() {
        assert!(SampleCache::parse("", true).unwrap().is_empty());
    }

    #[test]
    fn tampered_value_detected_only_when_verifying() {
        let bad = SAMPLE.replace("\"v\": \"8\"", "\"v\": \"9\"");
        assert!(SampleCache::parse(&bad, false).is_ok());
        match SampleCache::parse(&bad, true).unwrap_err() {
            CacheError::Inconsistency { line, stored, recomputed, .. } => {
                assert_eq!((line, stored.as_str(), recomputed.as_str()), (2, "9", "8"));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn format_errors_carry_positions() {
        let err = SampleCache::parse("{\"k\": \"rm1;poly(1);[(2)]^1\", \"v\": \"2\"}\n{oops", false)
            .unwrap_err();
        assert!(matches!(err, CacheError::Format { line: 2, .. }), "{err:?}");
        let err = SampleCache::parse("{\"k\": \"rm1;poly(1);[(2)]^1\", \"v\": \"02\"}", false)
            .unwrap_err();
        assert!(matches!(err, CacheError::Format { line: 1, .. }));
        let err = SampleCache::parse("{\"k\": \"x\", \"v\": \"2\", \"z\": 1}", false).unwrap_err();
        assert!(matches!(err, CacheError::Format { line: 1, .. }));
    }

    #[test]
    fn write_once() {
        let c = SampleCache::new();
        c.insert("a".into(), BigUint::from(1u32));
        c.insert("a".into(), BigUint::from(2u32));
        assert_eq!(c.get("a"), Some(BigUint::from(1u32)));
    }
}
