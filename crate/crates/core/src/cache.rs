//! Plain-text persistence of an [`InvariantStore`].
//!
//! ```text
//! {"schema":1,"seed_digest":"…","tool_version":"0.1.0","max_degree":9,"rows":2838,"rows_digest":"…"}
//! 5 0 0 0 1 0
//! 3 2 0 0 1 1
//! …
//! ```
//!
//! The first line is a JSON header; every further line is
//! `alpha beta gamma delta degree value` with the value as a decimal string.
//! Rows hold canonical keys (`alpha >= beta`) in store order.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::engine::{verify_key, verify_wdvv, Violation};
use crate::equations::{generate_equations, GenerationPolicy};
use crate::key::InvariantKey;
use crate::seeds::SeedSet;
use crate::store::InvariantStore;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported schema version {found} (expected {expected})")]
    Schema { found: u32, expected: u32 },
    #[error("seed digest {found} does not match this build ({expected})")]
    SeedDigest { found: String, expected: String },
    #[error("row digest mismatch: the rows were modified after export")]
    RowsDigest,
    #[error("header declares {declared} rows, file has {found}")]
    RowCount { declared: usize, found: usize },
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("rows do not form a valid store: {0}")]
    Store(String),
    #[error("{} equation(s) violated by cached values, first: degree {} quadruple {:?} monomial {}", .0.len(), .0[0].degree, .0[0].quadruple, .0[0].monomial)]
    Verification(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub schema: u32,
    pub seed_digest: String,
    pub tool_version: String,
    pub max_degree: u32,
    pub rows: usize,
    pub rows_digest: String,
}

/// How much of the WDVV system to re-check on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadCheck {
    /// Re-check the equations containing `rows` randomly chosen keys.
    Sampled { rows: usize, seed: u64 },
    /// Re-check every equation of every cached degree.
    Exhaustive,
}

impl Default for LoadCheck {
    fn default() -> Self {
        LoadCheck::Sampled { rows: 24, seed: 0x9e37_79b9_7f4a_7c15 }
    }
}

fn render_rows(store: &InvariantStore) -> String {
    let mut out = String::new();
    for (k, v) in store.iter() {
        out.push_str(&format!("{} {} {} {} {} {}\n", k.alpha, k.beta, k.gamma, k.delta, k.degree, v));
    }
    out
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Full cache file contents.
pub fn to_string(store: &InvariantStore, seeds: &SeedSet) -> String {
    let rows = render_rows(store);
    let header = CacheHeader {
        schema: SCHEMA_VERSION,
        seed_digest: seeds.digest(),
        tool_version: TOOL_VERSION.to_string(),
        max_degree: store.solved_degree(),
        rows: store.len(),
        rows_digest: digest(&rows),
    };
    let mut out = serde_json::to_string(&header).expect("serializable header");
    out.push('\n');
    out.push_str(&rows);
    out
}

/// Writes the cache to a sibling temporary file, then renames it into place.
pub fn save(store: &InvariantStore, seeds: &SeedSet, path: &Path) -> Result<(), CacheError> {
    let io = |source| CacheError::Io { path: path.to_path_buf(), source };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(to_string(store, seeds).as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

pub fn load(path: &Path, seeds: &SeedSet, check: LoadCheck) -> Result<InvariantStore, CacheError> {
    let text = fs::read_to_string(path).map_err(|source| CacheError::Io { path: path.to_path_buf(), source })?;
    parse(&text, seeds, check)
}

/// Parses and validates cache contents.
pub fn parse(text: &str, seeds: &SeedSet, check: LoadCheck) -> Result<InvariantStore, CacheError> {
    let (head, body) = text.split_once('\n').unwrap_or((text, ""));
    let header: CacheHeader = serde_json::from_str(head).map_err(|e| CacheError::MalformedHeader(e.to_string()))?;
    if header.schema != SCHEMA_VERSION {
        return Err(CacheError::Schema { found: header.schema, expected: SCHEMA_VERSION });
    }
    let expected = seeds.digest();
    if header.seed_digest != expected {
        return Err(CacheError::SeedDigest { found: header.seed_digest, expected });
    }
    if digest(body) != header.rows_digest {
        return Err(CacheError::RowsDigest);
    }

    let mut values: BTreeMap<InvariantKey, BigInt> = BTreeMap::new();
    for (n, line) in body.lines().enumerate() {
        let lineno = n + 2;
        let (key, value) = parse_row(line).map_err(|reason| CacheError::MalformedRow { line: lineno, reason })?;
        if values.insert(key, value).is_some() {
            return Err(CacheError::MalformedRow { line: lineno, reason: format!("duplicate key {key}") });
        }
    }
    if values.len() != header.rows {
        return Err(CacheError::RowCount { declared: header.rows, found: values.len() });
    }
    let store = InvariantStore::from_values(&values).map_err(|e| CacheError::Store(e.to_string()))?;
    if store.solved_degree() != header.max_degree || store.len() != values.len() {
        return Err(CacheError::Store(format!(
            "expected complete degrees 1..={}, found 1..={} with {} extra row(s)",
            header.max_degree,
            store.solved_degree(),
            values.len() - store.len().min(values.len())
        )));
    }
    reverify(&store, check)?;
    Ok(store)
}

fn parse_row(line: &str) -> Result<(InvariantKey, BigInt), String> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != 6 {
        return Err(format!("expected 6 space-separated fields, found {}", fields.len()));
    }
    let mut ints = [0u32; 5];
    for (slot, f) in ints.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| format!("`{f}` is not a nonnegative integer"))?;
    }
    let value: BigInt = fields[5].parse().map_err(|_| format!("`{}` is not a decimal integer", fields[5]))?;
    if value.is_negative() {
        return Err(format!("negative value {value}"));
    }
    let [a, b, c, d, deg] = ints;
    let key = InvariantKey::new(a, b, c, d, deg);
    if !key.is_dimension_valid() {
        return Err(format!("key {key} is not dimension-valid"));
    }
    if !key.is_canonical() {
        return Err(format!("key {key} is not canonical (alpha < beta)"));
    }
    Ok((key, value))
}

fn reverify(store: &InvariantStore, check: LoadCheck) -> Result<(), CacheError> {
    let store_err = |e: crate::error::Error| CacheError::Store(e.to_string());
    let violations = match check {
        LoadCheck::Exhaustive => {
            verify_wdvv(store, store.solved_degree(), GenerationPolicy::DimensionLayer)
                .map_err(store_err)?
                .violations
        }
        LoadCheck::Sampled { rows, seed } => {
            let keys: Vec<InvariantKey> = store.iter().map(|(k, _)| *k).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picked: BTreeSet<InvariantKey> =
                sample(&mut rng, keys.len(), rows.min(keys.len())).into_iter().map(|i| keys[i]).collect();
            let mut by_degree: BTreeMap<u32, Vec<InvariantKey>> = BTreeMap::new();
            for k in picked {
                by_degree.entry(k.degree).or_default().push(k);
            }
            let mut out = Vec::new();
            for (d, ks) in by_degree {
                let equations = generate_equations(store, d, GenerationPolicy::DimensionLayer).map_err(store_err)?;
                for k in ks {
                    out.extend(verify_key(store, &k, &equations).map_err(store_err)?);
                }
            }
            out
        }
    };
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CacheError::Verification(violations))
    }
}
