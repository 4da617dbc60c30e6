//! Multiple file requests per cache-equipped user.
//!
//! `Λ` users each own a cache and jointly request `K` files. Treating every
//! request as a virtual user attached to its owner's cache turns the problem
//! into a shared-cache instance with the same profile, so the scheme and the
//! bounds apply unchanged.

use alloc::vec::Vec;

use crate::bounds::t_star;
use crate::model::{Association, Demand, Instance, Profile};
use crate::{Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRequestInstance {
    num_files: usize,
    cache_size: Rational,
    /// `requests[λ]`: indices into `demand` requested by user `λ`.
    requests: Association,
    demand: Demand,
}

impl MultiRequestInstance {
    /// `requests` must partition `0..demand.len()`.
    pub fn new(num_files: usize, cache_size: Rational, requests: Vec<Vec<usize>>, demand: Vec<usize>) -> Result<Self> {
        let demand = Demand::new(num_files, demand)?;
        let requests = Association::new(demand.len(), requests)?;
        // validates N ≥ K, Λ ≤ K and the cache size up front
        Instance::new(num_files, demand.len(), requests.num_caches(), cache_size)?;
        Ok(MultiRequestInstance {
            num_files,
            cache_size,
            requests,
            demand,
        })
    }

    pub fn num_users(&self) -> usize {
        self.requests.num_caches()
    }

    pub fn num_requests(&self) -> usize {
        self.demand.len()
    }

    /// Request indices of physical user `user`.
    pub fn requests_of(&self, user: usize) -> &[usize] {
        self.requests.users(user)
    }

    /// Files requested by physical user `user`.
    pub fn files_of(&self, user: usize) -> Vec<usize> {
        self.requests_of(user).iter().map(|&k| self.demand.file_of(k)).collect()
    }

    /// Equivalent shared-cache problem: request `k` becomes virtual user `k`,
    /// attached to the cache of the user that issued it.
    pub fn to_shared_cache(&self) -> (Instance, Association, Demand) {
        let inst = Instance::new(
            self.num_files,
            self.demand.len(),
            self.requests.num_caches(),
            self.cache_size,
        )
        .expect("validated at construction");
        (inst, self.requests.clone(), self.demand.clone())
    }

    pub fn profile(&self) -> Profile {
        crate::model::profile_of(&self.requests)
    }
}

/// Optimal delay of the multiple-file-requests problem; identical to the
/// shared-cache optimum of the same profile.
pub fn multirequest_t_star(profile: &Profile, gamma: Rational) -> Result<Rational> {
    t_star(profile, gamma)
}
