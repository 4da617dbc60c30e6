//! Uncoded placement: every file is split into `C(Λ, t)` subfiles labelled by
//! `t`-subsets of caches, and cache `λ` stores every subfile whose label
//! contains `λ`.

use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combinatorics::{binom, k_subsets, CacheSet};
use crate::model::{ratio, Instance};
use crate::{Error, Rational, Result};

/// Subfile `W^n_T`. Displays as `n:{T}` with 1-based file and caches.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubfileId {
    pub file: usize,
    pub label: CacheSet,
}

impl fmt::Display for SubfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file + 1, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    num_files: usize,
    num_caches: usize,
    replication: usize,
    labels: Vec<CacheSet>,
    payloads: Option<Payloads>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Payloads {
    file_len: usize,
    files: Vec<Vec<u8>>,
}

pub fn place(inst: &Instance) -> Result<Placement> {
    let t = inst.replication()?;
    Ok(Placement::new(inst.num_files(), inst.num_caches(), t))
}

impl Placement {
    /// Placement for `N` files over `Λ` caches with replication `t <= Λ`.
    pub fn new(num_files: usize, num_caches: usize, replication: usize) -> Self {
        assert!(replication <= num_caches, "replication exceeds cache count");
        Placement {
            num_files,
            num_caches,
            replication,
            labels: k_subsets(num_caches, replication),
            payloads: None,
        }
    }

    pub fn num_files(&self) -> usize {
        self.num_files
    }

    pub fn num_caches(&self) -> usize {
        self.num_caches
    }

    /// `t = Λγ`.
    pub fn replication(&self) -> usize {
        self.replication
    }

    /// Subfile labels in lexicographic order; also the byte order in payload mode.
    pub fn labels(&self) -> &[CacheSet] {
        &self.labels
    }

    pub fn subfiles_per_file(&self) -> usize {
        self.labels.len()
    }

    /// Size of one subfile in file units.
    pub fn subfile_size(&self) -> Rational {
        ratio(1, self.labels.len() as i128)
    }

    /// Position of `label` among the file's subfiles.
    pub fn label_index(&self, label: CacheSet) -> Option<usize> {
        self.labels.binary_search_by(|l| l.lex_cmp(label)).ok()
    }

    /// Whether cache `cache` stores `id`.
    pub fn caches(&self, cache: usize, id: SubfileId) -> bool {
        id.file < self.num_files && id.label.len() == self.replication && id.label.contains(cache)
    }

    /// `Z_λ`, file-major then lexicographic labels.
    pub fn cache_contents(&self, cache: usize) -> Vec<SubfileId> {
        (0..self.num_files)
            .flat_map(|file| {
                self.labels
                    .iter()
                    .filter(move |l| l.contains(cache))
                    .map(move |&label| SubfileId { file, label })
            })
            .collect()
    }

    /// Subfiles stored per cache, `N·C(Λ-1, t-1)`.
    pub fn subfiles_per_cache(&self) -> usize {
        self.num_files * binom(self.num_caches as i64 - 1, self.replication as i64 - 1) as usize
    }

    /// Fills every file with `file_len` pseudorandom bytes derived from `seed`.
    pub fn attach_payloads(mut self, file_len: usize, seed: u64) -> Result<Placement> {
        let subfiles = self.labels.len();
        if !file_len.is_multiple_of(subfiles) {
            return Err(Error::IndivisibleLength { file_len, subfiles });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let files = (0..self.num_files)
            .map(|_| {
                let mut bytes = alloc::vec![0u8; file_len];
                rng.fill_bytes(&mut bytes);
                bytes
            })
            .collect();
        self.payloads = Some(Payloads { file_len, files });
        Ok(self)
    }

    pub fn has_payloads(&self) -> bool {
        self.payloads.is_some()
    }

    /// File length in bytes, in payload mode.
    pub fn file_len(&self) -> Option<usize> {
        self.payloads.as_ref().map(|p| p.file_len)
    }

    pub fn subfile_len(&self) -> Option<usize> {
        self.file_len().map(|l| l / self.labels.len())
    }

    pub fn file_payload(&self, file: usize) -> Option<&[u8]> {
        self.payloads.as_ref().map(|p| p.files[file].as_slice())
    }

    /// Bytes of `id`: a contiguous slice of its file at the label's lexicographic rank.
    pub fn subfile_payload(&self, id: SubfileId) -> Option<&[u8]> {
        let p = self.payloads.as_ref()?;
        let idx = self.label_index(id.label)?;
        let len = p.file_len / self.labels.len();
        Some(&p.files[id.file][idx * len..(idx + 1) * len])
    }
}
