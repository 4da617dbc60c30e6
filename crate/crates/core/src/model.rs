//! Problem parameters, user-to-cache associations, profiles and demands.
//!
//! Users, caches and files are 0-based throughout the crate. External
//! formats shift them to 1-based.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::combinatorics::MAX_CACHES;
use crate::{Error, Rational, Result};

pub use crate::combinatorics::{binom, perm};

/// `N` files, `K` users, `Λ` caches of `M` files each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    num_files: usize,
    num_users: usize,
    num_caches: usize,
    cache_size: Rational,
}

impl Instance {
    pub fn new(num_files: usize, num_users: usize, num_caches: usize, cache_size: Rational) -> Result<Self> {
        for (what, v) in [("N", num_files), ("K", num_users), ("Λ", num_caches)] {
            if v == 0 {
                return Err(Error::ZeroCount { what });
            }
        }
        if num_files < num_users {
            return Err(Error::FilesFewerThanUsers {
                files: num_files,
                users: num_users,
            });
        }
        if num_caches > num_users {
            return Err(Error::TooManyCaches {
                caches: num_caches,
                users: num_users,
            });
        }
        if num_caches > MAX_CACHES {
            return Err(Error::CacheLimit {
                caches: num_caches,
                max: MAX_CACHES,
            });
        }
        if cache_size < Rational::zero() || cache_size > Rational::from_integer(num_files as i128) {
            return Err(Error::CacheSizeOutOfRange);
        }
        Ok(Instance {
            num_files,
            num_users,
            num_caches,
            cache_size,
        })
    }

    pub fn num_files(&self) -> usize {
        self.num_files
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn num_caches(&self) -> usize {
        self.num_caches
    }

    pub fn cache_size(&self) -> Rational {
        self.cache_size
    }

    /// Normalized cache size `γ = M / N`.
    pub fn gamma(&self) -> Rational {
        self.cache_size / Rational::from_integer(self.num_files as i128)
    }

    /// `t = Λγ`, the number of caches holding each subfile, when it is an integer.
    pub fn replication(&self) -> Result<usize> {
        let t = self.gamma() * Rational::from_integer(self.num_caches as i128);
        if t.is_integer() {
            Ok(t.to_integer() as usize)
        } else {
            Err(Error::NonIntegerT)
        }
    }
}

/// Partition of the users into per-cache ordered lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    lists: Vec<Vec<usize>>,
    cache_of: Vec<usize>,
}

impl Association {
    /// Validates that `lists` partitions `0..num_users`. Empty lists are allowed.
    pub fn new(num_users: usize, lists: Vec<Vec<usize>>) -> Result<Self> {
        if lists.len() > MAX_CACHES {
            return Err(Error::CacheLimit {
                caches: lists.len(),
                max: MAX_CACHES,
            });
        }
        let mut cache_of = vec![usize::MAX; num_users];
        for (cache, list) in lists.iter().enumerate() {
            for &user in list {
                if user >= num_users {
                    return Err(Error::UserOutOfRange { user, users: num_users });
                }
                if cache_of[user] != usize::MAX {
                    return Err(Error::DuplicateUser { user });
                }
                cache_of[user] = cache;
            }
        }
        if let Some(user) = cache_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::MissingUser { user });
        }
        Ok(Association { lists, cache_of })
    }

    /// Users `0..K` handed out consecutively: cache 0 gets the first `L_1`
    /// users, cache 1 the next `L_2`, and so on.
    pub fn from_profile(profile: &Profile) -> Self {
        let mut next = 0;
        let lists = profile
            .counts()
            .iter()
            .map(|&c| {
                let list: Vec<usize> = (next..next + c).collect();
                next += c;
                list
            })
            .collect();
        Association::new(profile.num_users(), lists).expect("consecutive blocks partition the users")
    }

    pub fn num_users(&self) -> usize {
        self.cache_of.len()
    }

    pub fn num_caches(&self) -> usize {
        self.lists.len()
    }

    /// Ordered users of `cache`; `users(λ)[j]` is the `(j+1)`-th user of that cache.
    pub fn users(&self, cache: usize) -> &[usize] {
        &self.lists[cache]
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn cache_of(&self, user: usize) -> usize {
        self.cache_of[user]
    }

    pub fn population(&self, cache: usize) -> usize {
        self.lists[cache].len()
    }

    pub fn populations(&self) -> Vec<usize> {
        self.lists.iter().map(Vec::len).collect()
    }

    /// Caches sorted by descending population, ties by cache index.
    pub fn population_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.num_caches()).collect();
        order.sort_by_key(|&c| core::cmp::Reverse(self.population(c)));
        order
    }
}

/// Sorted histogram of cache populations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Vec<usize>);

impl Profile {
    /// `counts` must already be sorted descending; one entry per cache.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::ZeroCount { what: "Λ" });
        }
        if counts.len() > MAX_CACHES {
            return Err(Error::CacheLimit {
                caches: counts.len(),
                max: MAX_CACHES,
            });
        }
        if counts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::UnsortedProfile);
        }
        Ok(Profile(counts))
    }

    /// Sorts arbitrary per-cache counts into a profile.
    pub fn from_counts(mut counts: Vec<usize>) -> Result<Self> {
        counts.sort_unstable_by(|a, b| b.cmp(a));
        Profile::new(counts)
    }

    /// `(K/Λ, …, K/Λ)` when `Λ | K`.
    pub fn uniform(num_users: usize, num_caches: usize) -> Option<Self> {
        (num_caches > 0 && num_users.is_multiple_of(num_caches))
            .then(|| Profile(vec![num_users / num_caches; num_caches]))
    }

    /// All profiles of `K` users over `Λ` caches, reverse-lexicographic.
    pub fn all(num_users: usize, num_caches: usize) -> Vec<Profile> {
        crate::combinatorics::partitions(num_users, num_caches)
            .into_iter()
            .map(|mut parts| {
                parts.resize(num_caches, 0);
                Profile(parts)
            })
            .collect()
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn num_caches(&self) -> usize {
        self.0.len()
    }

    pub fn num_users(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn profile_of(assoc: &Association) -> Profile {
    Profile::from_counts(assoc.populations()).expect("association has at least one cache")
}

/// One requested file per user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand(Vec<usize>);

impl Demand {
    pub fn new(num_files: usize, files: Vec<usize>) -> Result<Self> {
        if let Some(&file) = files.iter().find(|&&f| f >= num_files) {
            return Err(Error::FileOutOfRange { file, files: num_files });
        }
        Ok(Demand(files))
    }

    /// User `k` requests file `k`.
    pub fn distinct(num_users: usize) -> Self {
        Demand((0..num_users).collect())
    }

    pub fn files(&self) -> &[usize] {
        &self.0
    }

    pub fn file_of(&self, user: usize) -> usize {
        self.0[user]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All entries distinct.
    pub fn is_worst_case(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Demand grouped per cache: `blocks[λ]` lists the files requested by the
/// users of cache `λ`, in association order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReorderedDemand {
    pub blocks: Vec<Vec<usize>>,
}

impl ReorderedDemand {
    pub fn concat(&self) -> Vec<usize> {
        self.blocks.concat()
    }
}

pub fn reorder_demand(assoc: &Association, demand: &Demand) -> Result<ReorderedDemand> {
    if demand.len() != assoc.num_users() {
        return Err(Error::DemandLength {
            expected: assoc.num_users(),
            found: demand.len(),
        });
    }
    let blocks = assoc
        .lists()
        .iter()
        .map(|list| list.iter().map(|&u| demand.file_of(u)).collect())
        .collect();
    Ok(ReorderedDemand { blocks })
}

pub(crate) fn rational(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub(crate) fn ratio(num: i128, den: i128) -> Rational {
    if den == 0 {
        return Rational::zero();
    }
    Rational::new(num, den)
}
