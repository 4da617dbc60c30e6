//! JSON instance files.
//!
//! ```json
//! { "N": 8, "K": 8, "Lambda": 4, "M": "4/1",
//!   "association": [[1,2,3],[4,5],[6,7],[8]],
//!   "demand": [1,2,3,4,5,6,7,8] }
//! ```
//!
//! Users, caches and files are 1-based. With `"mode": "multirequest"`,
//! `Lambda` counts cache-equipped users, `association[λ]` lists the request
//! indices issued by user `λ` and `demand` holds all `K` requested files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sharedcache::model::{Association, Demand, Instance};
use sharedcache::multirequest::MultiRequestInstance;

use crate::exact::{parse_exact, to_exact};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Shared,
    Multirequest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(rename = "N")]
    pub num_files: usize,
    #[serde(rename = "K")]
    pub num_users: usize,
    #[serde(rename = "Lambda")]
    pub num_caches: usize,
    #[serde(rename = "M")]
    pub cache_size: String,
    pub association: Vec<Vec<usize>>,
    pub demand: Vec<usize>,
    #[serde(default, skip_serializing_if = "is_shared")]
    pub mode: Mode,
}

fn is_shared(mode: &Mode) -> bool {
    *mode == Mode::Shared
}

/// A validated shared-cache problem, possibly obtained from a multi-request one.
#[derive(Debug, Clone)]
pub struct Problem {
    pub instance: Instance,
    pub association: Association,
    pub demand: Demand,
    pub multirequest: Option<MultiRequestInstance>,
}

fn zero_based(values: &[usize], what: &str) -> Result<Vec<usize>> {
    values
        .iter()
        .map(|&v| {
            v.checked_sub(1)
                .with_context(|| format!("{what} indices are 1-based, found 0"))
        })
        .collect()
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn into_problem(self) -> Result<Problem> {
        let cache_size = parse_exact(&self.cache_size)?;
        if self.association.len() != self.num_caches {
            bail!(
                "association has {} lists but Lambda = {}",
                self.association.len(),
                self.num_caches
            );
        }
        if self.demand.len() != self.num_users {
            bail!("demand has {} entries but K = {}", self.demand.len(), self.num_users);
        }
        let lists = self
            .association
            .iter()
            .map(|l| zero_based(l, "user"))
            .collect::<Result<Vec<_>>>()?;
        let files = zero_based(&self.demand, "file")?;
        match self.mode {
            Mode::Shared => {
                let instance = Instance::new(self.num_files, self.num_users, self.num_caches, cache_size)?;
                let association = Association::new(self.num_users, lists)?;
                let demand = Demand::new(self.num_files, files)?;
                Ok(Problem {
                    instance,
                    association,
                    demand,
                    multirequest: None,
                })
            }
            Mode::Multirequest => {
                let mri = MultiRequestInstance::new(self.num_files, cache_size, lists, files)?;
                let (instance, association, demand) = mri.to_shared_cache();
                Ok(Problem {
                    instance,
                    association,
                    demand,
                    multirequest: Some(mri),
                })
            }
        }
    }

    /// Instance file describing `problem` in shared-cache form.
    pub fn from_parts(instance: &Instance, association: &Association, demand: &Demand) -> Self {
        InstanceFile {
            num_files: instance.num_files(),
            num_users: instance.num_users(),
            num_caches: instance.num_caches(),
            cache_size: to_exact(instance.cache_size()),
            association: association
                .lists()
                .iter()
                .map(|l| l.iter().map(|u| u + 1).collect())
                .collect(),
            demand: demand.files().iter().map(|f| f + 1).collect(),
            mode: Mode::Shared,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = r#"{ "N": 8, "K": 8, "Lambda": 4, "M": "4/1",
        "association": [[1,2,3],[4,5],[6,7],[8]], "demand": [1,2,3,4,5,6,7,8] }"#;

    #[test]
    fn parses_golden() {
        let f: InstanceFile = serde_json::from_str(GOLDEN).unwrap();
        let p = f.clone().into_problem().unwrap();
        assert_eq!(p.instance.replication().unwrap(), 2);
        assert_eq!(p.association.users(0), [0, 1, 2]);
        assert!(p.multirequest.is_none());
        let back = InstanceFile::from_parts(&p.instance, &p.association, &p.demand);
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_duplicate_user() {
        let bad = GOLDEN.replace("[[1,2,3],[4,5]", "[[1,2,3],[3,5]");
        let f: InstanceFile = serde_json::from_str(&bad).unwrap();
        let err = f.into_problem().unwrap_err().to_string();
        assert!(err.contains("more than one cache"), "{err}");
    }

    #[test]
    fn rejects_zero_index() {
        let bad = GOLDEN.replace("[8]]", "[0]]");
        let f: InstanceFile = serde_json::from_str(&bad).unwrap();
        assert!(f.into_problem().is_err());
    }

    #[test]
    fn multirequest_mode() {
        let text = r#"{ "N": 6, "K": 5, "Lambda": 2, "M": "3", "mode": "multirequest",
            "association": [[1,3,5],[2,4]], "demand": [6,5,4,3,2] }"#;
        let p: Problem = serde_json::from_str::<InstanceFile>(text)
            .unwrap()
            .into_problem()
            .unwrap();
        assert_eq!(p.instance.num_users(), 5);
        assert_eq!(p.association.cache_of(2), 0);
        assert_eq!(p.multirequest.unwrap().files_of(1), [4, 2]);
    }
}
