//! Round-based XOR delivery.
//!
//! Round `j` serves the `j`-th user of every cache that has at least `j`
//! users. For every `(t+1)`-subset `Q` of caches the server XORs, over the
//! caches `λ ∈ Q` that are active in the round, the subfile
//! `W^{d_k}_{Q∖{λ}}` wanted by that cache's round-`j` user `k`. Every other
//! summand is labelled by a set containing `λ`, so `k` cancels it from its
//! own cache.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{binom, k_subsets, CacheSet};
use crate::model::{ratio, rational, Association, Demand, Profile};
use crate::placement::{Placement, SubfileId};
use crate::{Error, Rational, Result};

/// Users served in round `index` (1-based), listed in descending-population
/// cache order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub index: usize,
    pub users: Vec<usize>,
}

/// One subfile folded into a transmission, with the user that wants it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summand {
    pub user: usize,
    pub cache: usize,
    pub subfile: SubfileId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub round: usize,
    /// `Q`, in original cache labels.
    pub caches: CacheSet,
    /// Ascending cache order; one per target user.
    pub summands: Vec<Summand>,
    pub payload: Option<Vec<u8>>,
}

impl Transmission {
    /// `χ_Q`.
    pub fn targets(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.user).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub subfile: SubfileId,
    pub payload: Option<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub transmissions: Vec<Transmission>,
    /// Whether each user ends up with every subfile of its file, and in
    /// payload mode with the exact bytes.
    pub per_user_ok: Vec<bool>,
    /// Reassembled file bytes per user, in payload mode.
    pub recovered: Vec<Option<Vec<u8>>>,
    pub delay: Rational,
}

impl Transcript {
    pub fn all_ok(&self) -> bool {
        self.per_user_ok.iter().all(|&ok| ok)
    }
}

pub fn rounds(assoc: &Association) -> Vec<Round> {
    let order = assoc.population_order();
    let depth = order.first().map_or(0, |&c| assoc.population(c));
    (1..=depth)
        .map(|j| Round {
            index: j,
            users: order
                .iter()
                .filter_map(|&c| assoc.users(c).get(j - 1).copied())
                .collect(),
        })
        .collect()
}

/// Transmissions of one round, `Q` in lexicographic order.
pub fn transmissions_for_round(
    round: &Round,
    assoc: &Association,
    demand: &Demand,
    placement: &Placement,
) -> Vec<Transmission> {
    let t = placement.replication();
    let lambda = placement.num_caches();
    k_subsets(lambda, t + 1)
        .into_iter()
        .filter_map(|q| {
            let summands: Vec<Summand> = q
                .iter()
                .filter_map(|cache| {
                    let &user = assoc.users(cache).get(round.index - 1)?;
                    let subfile = SubfileId {
                        file: demand.file_of(user),
                        label: q.without(cache),
                    };
                    Some(Summand { user, cache, subfile })
                })
                .collect();
            if summands.is_empty() {
                return None;
            }
            let payload = placement.has_payloads().then(|| {
                let mut acc = vec![0u8; placement.subfile_len().unwrap_or(0)];
                for s in &summands {
                    let bytes = placement.subfile_payload(s.subfile).expect("payload mode");
                    debug_assert_eq!(bytes.len(), acc.len());
                    xor_into(&mut acc, bytes);
                }
                acc
            });
            Some(Transmission {
                round: round.index,
                caches: q,
                summands,
                payload,
            })
        })
        .collect()
}

fn xor_into(acc: &mut [u8], bytes: &[u8]) {
    for (a, b) in acc.iter_mut().zip(bytes) {
        *a ^= b;
    }
}

/// Recovers the subfile `user` wants from `tx`, cancelling the other
/// summands with the content of the user's cache.
pub fn decode(user: usize, tx: &Transmission, assoc: &Association, placement: &Placement) -> Result<Decoded> {
    let cache = assoc.cache_of(user);
    let wanted = tx
        .summands
        .iter()
        .find(|s| s.user == user)
        .ok_or(Error::NotTargeted { user })?;
    let mut payload = tx.payload.clone();
    for other in tx.summands.iter().filter(|s| s.user != user) {
        if !placement.caches(cache, other.subfile) {
            return Err(Error::MissingSideInfo {
                user,
                file: other.subfile.file,
            });
        }
        if let Some(acc) = payload.as_mut() {
            let side = placement.subfile_payload(other.subfile).expect("payload mode");
            xor_into(acc, side);
        }
    }
    Ok(Decoded {
        subfile: wanted.subfile,
        payload,
    })
}

/// Runs the whole delivery for `demand` and checks what every user recovers.
///
/// Repeated requests are allowed; the transmissions do not rely on distinct files.
pub fn run_delivery(placement: &Placement, assoc: &Association, demand: &Demand) -> Result<Transcript> {
    if assoc.num_caches() != placement.num_caches() {
        return Err(Error::CacheCountMismatch {
            expected: placement.num_caches(),
            found: assoc.num_caches(),
        });
    }
    let k = assoc.num_users();
    if demand.len() != k {
        return Err(Error::DemandLength {
            expected: k,
            found: demand.len(),
        });
    }
    if let Some(&file) = demand.files().iter().find(|&&f| f >= placement.num_files()) {
        return Err(Error::FileOutOfRange {
            file,
            files: placement.num_files(),
        });
    }

    let n_sub = placement.subfiles_per_file();
    let sub_len = placement.subfile_len().unwrap_or(0);
    // per user: which subfile slots are filled, and the bytes assembled so far
    let mut have: Vec<Vec<bool>> = vec![vec![false; n_sub]; k];
    let mut bytes: Vec<Option<Vec<u8>>> = vec![placement.file_len().map(|len| vec![0u8; len]); k];

    for user in 0..k {
        let cache = assoc.cache_of(user);
        let file = demand.file_of(user);
        for (idx, &label) in placement.labels().iter().enumerate() {
            if label.contains(cache) {
                have[user][idx] = true;
                if let Some(buf) = bytes[user].as_mut() {
                    let src = placement
                        .subfile_payload(SubfileId { file, label })
                        .expect("payload mode");
                    buf[idx * sub_len..(idx + 1) * sub_len].copy_from_slice(src);
                }
            }
        }
    }

    let rounds = rounds(assoc);
    let mut transmissions = Vec::new();
    for round in &rounds {
        for tx in transmissions_for_round(round, assoc, demand, placement) {
            for s in &tx.summands {
                let decoded = decode(s.user, &tx, assoc, placement)?;
                let idx = placement.label_index(decoded.subfile.label).expect("scheme label");
                have[s.user][idx] = true;
                if let (Some(buf), Some(p)) = (bytes[s.user].as_mut(), decoded.payload) {
                    buf[idx * sub_len..(idx + 1) * sub_len].copy_from_slice(&p);
                }
            }
            transmissions.push(tx);
        }
    }

    let per_user_ok = (0..k)
        .map(|u| {
            have[u].iter().all(|&h| h)
                && match (&bytes[u], placement.file_payload(demand.file_of(u))) {
                    (Some(got), Some(want)) => got.as_slice() == want,
                    _ => true,
                }
        })
        .collect();
    let delay = ratio(transmissions.len() as i128, n_sub as i128);
    Ok(Transcript {
        rounds,
        transmissions,
        per_user_ok,
        recovered: bytes,
        delay,
    })
}

/// Transmissions in a round serving `served` users:
/// `C(Λ, t+1) − C(Λ − served, t+1)`.
pub fn round_transmission_count(num_caches: usize, t: usize, served: usize) -> i128 {
    let (l, t) = (num_caches as i64, t as i64);
    binom(l, t + 1) - binom(l - served as i64, t + 1)
}

/// `Σ_{r=1}^{Λ−t} L_r·C(Λ−r, t) / C(Λ, t)`.
pub fn closed_form_delay(profile: &Profile, t: usize) -> Rational {
    let l = profile.num_caches() as i64;
    let t = t as i64;
    let num: i128 = profile
        .counts()
        .iter()
        .enumerate()
        .map(|(r, &lr)| lr as i128 * binom(l - (r as i64 + 1), t))
        .sum();
    let den = binom(l, t);
    if den == 0 {
        rational(0)
    } else {
        ratio(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::profile_of;
    use alloc::string::{String, ToString};

    fn golden() -> (Placement, Association, Demand) {
        let p = Placement::new(8, 4, 2).attach_payloads(12, 3).unwrap();
        let a = Association::new(8, vec![vec![0, 1, 2], vec![3, 4], vec![5, 6], vec![7]]).unwrap();
        (p, a, Demand::distinct(8))
    }

    fn render(tx: &Transmission) -> String {
        let parts: Vec<String> = tx.summands.iter().map(|s| s.subfile.to_string()).collect();
        parts.join(" + ")
    }

    #[test]
    fn golden_rounds() {
        let (_, a, _) = golden();
        let r: Vec<Vec<usize>> = rounds(&a).into_iter().map(|r| r.users).collect();
        assert_eq!(r, [vec![0, 3, 5, 7], vec![1, 4, 6], vec![2]]);
    }

    #[test]
    fn golden_first_and_last_round() {
        let (p, a, d) = golden();
        let rs = rounds(&a);
        let first: Vec<String> = transmissions_for_round(&rs[0], &a, &d, &p).iter().map(render).collect();
        assert_eq!(
            first,
            [
                "1:{2,3} + 4:{1,3} + 6:{1,2}",
                "1:{2,4} + 4:{1,4} + 8:{1,2}",
                "1:{3,4} + 6:{1,4} + 8:{1,3}",
                "4:{3,4} + 6:{2,4} + 8:{2,3}",
            ]
        );
        let last: Vec<String> = transmissions_for_round(&rs[2], &a, &d, &p).iter().map(render).collect();
        assert_eq!(last, ["3:{2,3}", "3:{2,4}", "3:{3,4}"]);
    }

    #[test]
    fn decode_golden_and_errors() {
        let (p, a, d) = golden();
        let rs = rounds(&a);
        let txs = transmissions_for_round(&rs[0], &a, &d, &p);
        let first = &txs[0];
        let got = decode(0, first, &a, &p).unwrap();
        assert_eq!(got.subfile.to_string(), "1:{2,3}");
        assert_eq!(got.payload.as_deref(), p.subfile_payload(got.subfile));
        assert_eq!(decode(3, first, &a, &p).unwrap().subfile.to_string(), "4:{1,3}");
        assert_eq!(decode(1, first, &a, &p), Err(Error::NotTargeted { user: 1 }));

        let unicast = &transmissions_for_round(&rs[2], &a, &d, &p)[0];
        assert_eq!(
            unicast.payload.as_deref(),
            p.subfile_payload(unicast.summands[0].subfile)
        );

        // user 0 moved to cache 2 no longer caches the interference of {1,4,6}
        let moved = Association::new(8, vec![vec![1, 2], vec![3, 4], vec![5, 6, 0], vec![7]]).unwrap();
        assert_eq!(
            decode(0, first, &moved, &p),
            Err(Error::MissingSideInfo { user: 0, file: 5 })
        );
    }

    #[test]
    fn golden_delivery() {
        let (p, a, d) = golden();
        let tr = run_delivery(&p, &a, &d).unwrap();
        assert_eq!(tr.transmissions.len(), 11);
        assert_eq!(tr.delay, ratio(11, 6));
        assert!(tr.all_ok());
        for u in 0..8 {
            assert_eq!(tr.recovered[u].as_deref(), p.file_payload(u));
        }
    }

    #[test]
    fn full_cache_sends_nothing() {
        let p = Placement::new(4, 2, 2);
        let a = Association::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let tr = run_delivery(&p, &a, &Demand::distinct(4)).unwrap();
        assert!(tr.transmissions.is_empty());
        assert_eq!(tr.delay, rational(0));
        assert!(tr.all_ok());
    }

    #[test]
    fn two_by_two_example() {
        // K=4, Λ=2, t=1, L=(2,2): two rounds of one pair-XOR each.
        // per-round count by hand: C(2,2) − C(0,2) = 1 per round, C(2,1) = 2 subfiles.
        let p = Placement::new(4, 2, 1).attach_payloads(8, 1).unwrap();
        let a = Association::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let tr = run_delivery(&p, &a, &Demand::distinct(4)).unwrap();
        assert_eq!(tr.transmissions.len(), 2);
        assert_eq!(tr.delay, ratio(1, 1));
        assert_eq!(closed_form_delay(&profile_of(&a), 1), ratio(1, 1));
        assert!(tr.all_ok());
    }

    #[test]
    fn closed_form_examples() {
        let p = Profile::new(vec![3, 2, 2, 1]).unwrap();
        assert_eq!(closed_form_delay(&p, 2), ratio(11, 6));
        assert_eq!(closed_form_delay(&p, 0), rational(8));
        assert_eq!(closed_form_delay(&p, 4), rational(0));
    }

    #[test]
    fn repeated_requests_still_decode() {
        let p = Placement::new(3, 3, 1).attach_payloads(6, 9).unwrap();
        let a = Association::new(4, vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        let d = Demand::new(3, vec![2, 2, 0, 2]).unwrap();
        let tr = run_delivery(&p, &a, &d).unwrap();
        assert!(tr.all_ok());
        assert_eq!(tr.delay, closed_form_delay(&profile_of(&a), 1));
    }

    #[test]
    fn round_counts_match_formula() {
        let (p, a, d) = golden();
        for r in rounds(&a) {
            let n = transmissions_for_round(&r, &a, &d, &p).len() as i128;
            assert_eq!(n, round_transmission_count(4, 2, r.users.len()));
        }
    }
}
