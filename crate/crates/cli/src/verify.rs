//! Oracle cross-checks over every small instance.

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use sharedcache::bounds::{c_sequence, lp_lower_bound, q_i, t_star};
use sharedcache::combinatorics::set_partitions;
use sharedcache::delivery::{closed_form_delay, run_delivery};
use sharedcache::indexcoding::{
    appearance_counts, averaged_converse_batch, build_graph, is_acyclic, lemma2_subgraph, SubfileSizes,
};
use sharedcache::model::{Association, Demand, Instance, Profile};
use sharedcache::placement::place;
use sharedcache::{Error, Rational};

use crate::exact::to_exact;

/// Pseudorandom size assignments tried per instance.
pub const RANDOM_SIZES: u64 = 10;

#[derive(Debug, Clone)]
pub struct VerifyCaps {
    pub max_users: usize,
    pub max_caches: usize,
    pub max_files: usize,
    /// Largest demand class walked; bigger classes are skipped.
    pub class_cap: u128,
    /// Restrict to these profiles instead of all of them.
    pub profiles: Option<Vec<Profile>>,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps {
            max_users: 6,
            max_caches: 4,
            max_files: 6,
            class_cap: 100_000,
            profiles: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Skipped {
    pub instance: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instances_checked: usize,
    pub scheme_matches_formula: bool,
    pub lp_matches_formula: bool,
    pub t_star_matches_formula: bool,
    pub qi_matches: bool,
    pub lemma2_always_acyclic: bool,
    pub averaged_converse_matches: bool,
    pub tightness_gap_max: String,
    pub skipped: Vec<Skipped>,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

#[derive(Default)]
struct Partial {
    checked: usize,
    gap: Rational,
    skipped: Vec<Skipped>,
    failures: Vec<Failure>,
}

impl Partial {
    fn fail(&mut self, check: &str, instance: &str, detail: String) {
        self.failures.push(Failure {
            check: check.into(),
            instance: instance.into(),
            detail,
        });
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.checked += other.checked;
        self.gap = self.gap.max(other.gap);
        self.skipped.extend(other.skipped);
        self.failures.extend(other.failures);
        self
    }
}

fn label(profile: &Profile, num_files: usize) -> String {
    format!(
        "N={num_files} K={} Lambda={} profile={:?}",
        profile.num_users(),
        profile.num_caches(),
        profile.counts()
    )
}

/// Delivery, closed form, LP and hull at every integer `t`.
fn check_formulas(profile: &Profile, num_files: usize, out: &mut Partial) {
    let (k, l) = (profile.num_users(), profile.num_caches());
    let name = label(profile, num_files);
    let assoc = Association::from_profile(profile);
    let demand = Demand::distinct(k);
    for t in 0..=l {
        let at = format!("{name} t={t}");
        let formula = closed_form_delay(profile, t);
        let memory = Rational::new((t * num_files) as i128, l as i128);
        let delivered = Instance::new(num_files, k, l, memory)
            .and_then(|inst| place(&inst))
            .and_then(|p| run_delivery(&p, &assoc, &demand));
        match delivered {
            Ok(tr) if tr.all_ok() && tr.delay == formula => {}
            Ok(tr) => out.fail(
                "scheme",
                &at,
                format!("delay {} vs {}", to_exact(tr.delay), to_exact(formula)),
            ),
            Err(e) => out.fail("scheme", &at, e.to_string()),
        }
        match lp_lower_bound(profile, num_files, memory) {
            Ok(v) if v == formula => {}
            Ok(v) => out.fail("lp", &at, format!("{} vs {}", to_exact(v), to_exact(formula))),
            Err(e) => out.fail("lp", &at, e.to_string()),
        }
        match t_star(profile, Rational::new(t as i128, l as i128)) {
            Ok(v) if v == formula => {}
            Ok(v) => out.fail("t_star", &at, format!("{} vs {}", to_exact(v), to_exact(formula))),
            Err(e) => out.fail("t_star", &at, e.to_string()),
        }
    }
}

/// Class walks: appearance counts and the averaged converse.
fn check_class(profile: &Profile, num_files: usize, cap: u128, out: &mut Partial) {
    let l = profile.num_caches();
    let name = label(profile, num_files);
    let counts = match appearance_counts(profile, num_files, cap) {
        Ok(c) => c,
        Err(e @ Error::ClassTooLarge { .. }) => {
            out.skipped.push(Skipped {
                instance: name,
                reason: e.to_string(),
            });
            return;
        }
        Err(e) => return out.fail("q_i", &name, e.to_string()),
    };
    for (idx, &count) in counts.iter().enumerate() {
        let i = (idx & ((1 << l) - 1)).count_ones() as usize;
        let expected = q_i(profile, num_files, i);
        if count as i128 != expected {
            out.fail(
                "q_i",
                &name,
                format!("subfile {idx}: counted {count}, formula {expected}"),
            );
            break;
        }
    }

    // scheme sizes at every t, then pseudorandom ones
    let mut sizes: Vec<SubfileSizes> = (0..=l).map(|t| SubfileSizes::scheme(num_files, l, t)).collect();
    sizes.extend((0..RANDOM_SIZES).map(|seed| SubfileSizes::pseudorandom(num_files, l, seed)));
    let values = match averaged_converse_batch(profile, &sizes, cap) {
        Ok(v) => v,
        Err(e) => return out.fail("averaged_converse", &name, e.to_string()),
    };
    for (t, &v) in values[..=l].iter().enumerate() {
        let formula = closed_form_delay(profile, t);
        let gap = if v > formula { v - formula } else { formula - v };
        out.gap = out.gap.max(gap);
        if gap != Rational::from_integer(0) {
            out.fail(
                "tightness",
                &format!("{name} t={t}"),
                format!("{} vs {}", to_exact(v), to_exact(formula)),
            );
        }
    }
    let c = c_sequence(profile);
    for (seed, (s, &v)) in sizes[l + 1..].iter().zip(&values[l + 1..]).enumerate() {
        let x = s.level_totals();
        let expected: Rational =
            x.iter().zip(&c).map(|(&xi, &ci)| xi * ci).sum::<Rational>() / Rational::from_integer(num_files as i128);
        if v != expected {
            out.fail(
                "averaged_converse",
                &format!("{name} seed={seed}"),
                format!("{} vs {}", to_exact(v), to_exact(expected)),
            );
        }
    }
}

/// The ordered subgraph is acyclic for every association up to relabeling.
fn check_acyclicity(num_users: usize, num_caches: usize, out: &mut Partial) {
    let sizes = SubfileSizes::scheme(num_users, num_caches, 0);
    let demand = Demand::distinct(num_users);
    for blocks in set_partitions(num_users, num_caches) {
        let mut lists = blocks.clone();
        lists.resize(num_caches, Vec::new());
        let name = format!("K={num_users} Lambda={num_caches} association={lists:?}");
        let acyclic = Association::new(num_users, lists)
            .and_then(|a| build_graph(&a, &demand, &sizes))
            .map(|g| is_acyclic(&g, &lemma2_subgraph(&g)));
        match acyclic {
            Ok(true) => {}
            Ok(false) => out.fail("lemma2", &name, "cycle in ordered subgraph".into()),
            Err(e) => out.fail("lemma2", &name, e.to_string()),
        }
    }
}

pub fn run_verify(caps: &VerifyCaps) -> Result<Report> {
    if caps.max_users == 0 || caps.max_caches == 0 || caps.max_files == 0 || caps.class_cap == 0 {
        bail!("caps must be positive");
    }
    if caps.profiles.as_ref().is_some_and(Vec::is_empty) {
        bail!("empty profile list");
    }

    // (profile, N) pairs in canonical order
    let mut jobs = Vec::new();
    for k in 1..=caps.max_users {
        for l in 1..=k.min(caps.max_caches) {
            let profiles = match &caps.profiles {
                Some(list) => list
                    .iter()
                    .filter(|p| p.num_users() == k && p.num_caches() == l)
                    .cloned()
                    .collect(),
                None => Profile::all(k, l),
            };
            for p in profiles {
                jobs.extend((k..=caps.max_files).map(|n| (p.clone(), n)));
            }
        }
    }
    if let Some(list) = &caps.profiles {
        for p in list {
            if !jobs.iter().any(|(q, _)| q == p) {
                bail!("profile {:?} lies outside the caps", p.counts());
            }
        }
    }

    let instance_results: Vec<Partial> = jobs
        .par_iter()
        .map(|(p, n)| {
            let mut out = Partial {
                checked: 1,
                ..Partial::default()
            };
            check_formulas(p, *n, &mut out);
            check_class(p, *n, caps.class_cap, &mut out);
            out
        })
        .collect();
    let shapes: Vec<(usize, usize)> = (1..=caps.max_users)
        .flat_map(|k| (1..=k.min(caps.max_caches)).map(move |l| (k, l)))
        .collect();
    let acyclic_results: Vec<Partial> = shapes
        .par_iter()
        .map(|&(k, l)| {
            let mut out = Partial::default();
            check_acyclicity(k, l, &mut out);
            out
        })
        .collect();
    let total = instance_results
        .into_iter()
        .chain(acyclic_results)
        .fold(Partial::default(), Partial::merge);

    let clean = |check: &str| !total.failures.iter().any(|f| f.check == check);
    Ok(Report {
        instances_checked: total.checked,
        scheme_matches_formula: clean("scheme"),
        lp_matches_formula: clean("lp"),
        t_star_matches_formula: clean("t_star"),
        qi_matches: clean("q_i"),
        lemma2_always_acyclic: clean("lemma2"),
        averaged_converse_matches: clean("averaged_converse"),
        tightness_gap_max: to_exact(total.gap),
        passed: total.failures.is_empty(),
        skipped: total.skipped,
        failures: total.failures,
    })
}
