//! Chunked data-parallel reductions and maps.
//!
//! Work is cut into fixed-size chunks (the CPU analogue of a thread block).
//! Each chunk is folded sequentially, then chunk partials are merged by a
//! combine operator on a rayon pool with `workers` threads. Every combine
//! used here is associative and commutative with a total tie-break, so the
//! result does not depend on chunk size, worker count or merge order.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{Error, Result};

pub const DEFAULT_CHUNK_SIZE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceConfig {
    pub chunk_size: usize,
    pub workers: usize,
}

impl ReduceConfig {
    pub fn new(chunk_size: usize, workers: usize) -> Result<Self> {
        let cfg = Self {
            chunk_size,
            workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.chunk_size == 0 {
            return Err(Error::InvalidConfig("chunk_size must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn sequential() -> Self {
        Self {
            chunk_size: DEFAULT_CHUNK_SIZE,
            workers: 1,
        }
    }
}

impl Default for ReduceConfig {
    fn default() -> Self {
        let workers = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        Self {
            chunk_size: DEFAULT_CHUNK_SIZE,
            workers,
        }
    }
}

/// A key being minimised or maximised, carried with its source index.
///
/// Ordering is by key, then by index; the smaller index wins ties in both
/// the min and the max direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgReduceKey {
    pub key: f64,
    pub index: usize,
}

impl ArgReduceKey {
    pub const fn new(key: f64, index: usize) -> Self {
        Self { key, index }
    }

    #[inline]
    pub fn min(self, other: Self) -> Self {
        if other.key < self.key || (other.key == self.key && other.index < self.index) {
            other
        } else {
            self
        }
    }

    #[inline]
    pub fn max(self, other: Self) -> Self {
        if other.key > self.key || (other.key == self.key && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

/// Owns the worker pool used by every reduction and map.
pub struct ReduceEngine {
    cfg: ReduceConfig,
    pool: ThreadPool,
}

impl std::fmt::Debug for ReduceEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReduceEngine")
            .field("cfg", &self.cfg)
            .finish()
    }
}

impl ReduceEngine {
    pub fn new(cfg: ReduceConfig) -> Result<Self> {
        cfg.validate()?;
        let pool = ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .thread_name(|i| format!("reduce-{i}"))
            .build()
            .map_err(|e| Error::Pool(e.to_string()))?;
        Ok(Self { cfg, pool })
    }

    pub fn config(&self) -> ReduceConfig {
        self.cfg
    }

    /// Runs `op` inside the engine's pool.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        self.pool.install(op)
    }

    /// Folds `0..len` chunk by chunk and merges chunk partials with `combine`.
    ///
    /// `combine` must be associative and commutative for the result to be
    /// independent of the configuration.
    pub fn fold_chunks<A, I, F, C>(&self, len: usize, identity: I, fold: F, combine: C) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        C: Fn(A, A) -> A + Sync + Send,
    {
        let chunk = self.cfg.chunk_size;
        let chunks = len.div_ceil(chunk);
        self.pool.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c * chunk;
                    let end = (start + chunk).min(len);
                    (start..end).fold(identity(), &fold)
                })
                .reduce(&identity, &combine)
        })
    }

    /// Index of the smallest `key(j)` over `0..len`, ties to the smaller index.
    pub fn argmin_by<K>(&self, len: usize, key: K) -> Result<usize>
    where
        K: Fn(usize) -> f64 + Sync + Send,
    {
        if len == 0 {
            return Err(Error::Empty);
        }
        let best = self.fold_chunks(
            len,
            || None,
            |acc: Option<ArgReduceKey>, j| {
                let cand = ArgReduceKey::new(key(j), j);
                Some(acc.map_or(cand, |a| a.min(cand)))
            },
            merge_with(ArgReduceKey::min),
        );
        Ok(best.expect("nonempty input").index)
    }

    /// Index of the largest `key(j)` over `0..len`, ties to the smaller index.
    pub fn argmax_by<K>(&self, len: usize, key: K) -> Result<usize>
    where
        K: Fn(usize) -> f64 + Sync + Send,
    {
        if len == 0 {
            return Err(Error::Empty);
        }
        let best = self.fold_chunks(
            len,
            || None,
            |acc: Option<ArgReduceKey>, j| {
                let cand = ArgReduceKey::new(key(j), j);
                Some(acc.map_or(cand, |a| a.max(cand)))
            },
            merge_with(ArgReduceKey::max),
        );
        Ok(best.expect("nonempty input").index)
    }

    pub fn argmin(&self, keys: &[f64]) -> Result<usize> {
        check_keys(keys)?;
        self.argmin_by(keys.len(), |j| keys[j])
    }

    pub fn argmax(&self, keys: &[f64]) -> Result<usize> {
        check_keys(keys)?;
        self.argmax_by(keys.len(), |j| keys[j])
    }

    /// `out[j] = f(&items[j])`, computed chunk by chunk on the pool.
    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send + Default + Clone,
        F: Fn(&T) -> U + Sync + Send,
    {
        let chunk = self.cfg.chunk_size;
        let mut out = vec![U::default(); items.len()];
        self.pool.install(|| {
            out.par_chunks_mut(chunk)
                .zip(items.par_chunks(chunk))
                .for_each(|(dst, src)| {
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d = f(s);
                    }
                });
        });
        out
    }

    /// Like [`map`](Self::map) but the closure also sees the item index.
    pub fn map_indexed<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send + Default + Clone,
        F: Fn(usize, &T) -> U + Sync + Send,
    {
        let chunk = self.cfg.chunk_size;
        let mut out = vec![U::default(); items.len()];
        self.pool.install(|| {
            out.par_chunks_mut(chunk)
                .zip(items.par_chunks(chunk))
                .enumerate()
                .for_each(|(c, (dst, src))| {
                    let base = c * chunk;
                    for (k, (d, s)) in dst.iter_mut().zip(src).enumerate() {
                        *d = f(base + k, s);
                    }
                });
        });
        out
    }
}

fn merge_with(
    op: fn(ArgReduceKey, ArgReduceKey) -> ArgReduceKey,
) -> impl Fn(Option<ArgReduceKey>, Option<ArgReduceKey>) -> Option<ArgReduceKey> + Sync + Send {
    move |a, b| match (a, b) {
        (Some(a), Some(b)) => Some(op(a, b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn check_keys(keys: &[f64]) -> Result<()> {
    if keys.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(j) = keys.iter().position(|k| !k.is_finite()) {
        return Err(Error::InvalidConfig(format!("key {j} is not finite")));
    }
    Ok(())
}
