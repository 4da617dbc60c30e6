//! Index-coding converse.
//!
//! Every requested file is split over the whole power set of caches, with
//! arbitrary subfile sizes. A node of the side-information graph is a
//! subfile `W^{d_k}_T` requested by user `k` at cache `λ ∉ T`; there is an
//! edge `u → v` exactly when the cache of `v`'s requester belongs to `u`'s
//! label, i.e. `v`'s requester already holds `u`. The total size of any
//! acyclic induced subgraph lower-bounds the broadcast time.
//!
//! Ranking caches by descending population and keeping, for the `r`-th
//! ranked cache, only labels avoiding the first `r` ranked caches gives an
//! acyclic subgraph whose size, averaged over a whole demand class, is
//! `Σ_i x_i·c_i / N`.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combinatorics::{binom, permutations, power_set_lex, CacheSet, KPermutations};
use crate::model::{ratio, rational, Association, Demand, Profile};
use crate::{Error, Rational, Result};

pub const DEFAULT_CLASS_CAP: u128 = 10_000_000;
pub const DEFAULT_MAIS_CAP: usize = 20;

/// Sizes of the converse subfiles `W^n_T` for every file `n` and every
/// `T ⊆ [Λ]`, in file units. Each file's sizes sum to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfileSizes {
    num_files: usize,
    num_caches: usize,
    sizes: Vec<Rational>,
}

impl SubfileSizes {
    pub fn from_fn(
        num_files: usize,
        num_caches: usize,
        mut size: impl FnMut(usize, CacheSet) -> Rational,
    ) -> Result<Self> {
        let per_file = 1usize << num_caches;
        let mut sizes = Vec::with_capacity(num_files * per_file);
        for file in 0..num_files {
            let mut total = Rational::zero();
            for mask in 0..per_file {
                let s = size(file, CacheSet::from_mask(mask as u32));
                if s < Rational::zero() {
                    return Err(Error::InvalidSizes { file });
                }
                total += s;
                sizes.push(s);
            }
            if total != rational(1) {
                return Err(Error::InvalidSizes { file });
            }
        }
        Ok(SubfileSizes {
            num_files,
            num_caches,
            sizes,
        })
    }

    /// The scheme's placement: `1/C(Λ,t)` on every `t`-label, zero elsewhere.
    pub fn scheme(num_files: usize, num_caches: usize, t: usize) -> Self {
        let share = ratio(1, binom(num_caches as i64, t as i64));
        SubfileSizes::from_fn(num_files, num_caches, |_, label| {
            if label.len() == t {
                share
            } else {
                Rational::zero()
            }
        })
        .expect("scheme sizes sum to one")
    }

    /// Deterministic pseudorandom sizes: small integer weights per subfile,
    /// normalized per file.
    pub fn pseudorandom(num_files: usize, num_caches: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let per_file = 1usize << num_caches;
        let weights: Vec<Vec<i128>> = (0..num_files)
            .map(|_| {
                let mut w: Vec<i128> = (0..per_file).map(|_| (rng.next_u32() % 5) as i128).collect();
                if w.iter().all(|&v| v == 0) {
                    w[0] = 1;
                }
                w
            })
            .collect();
        SubfileSizes::from_fn(num_files, num_caches, |file, label| {
            let total: i128 = weights[file].iter().sum();
            ratio(weights[file][label.mask() as usize], total)
        })
        .expect("normalized weights sum to one")
    }

    pub fn num_files(&self) -> usize {
        self.num_files
    }

    pub fn num_caches(&self) -> usize {
        self.num_caches
    }

    pub fn get(&self, file: usize, label: CacheSet) -> Rational {
        self.sizes[(file << self.num_caches) | label.mask() as usize]
    }

    /// `x_i`: total size stored in exactly `i` caches, `i = 0..=Λ`.
    pub fn level_totals(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_caches + 1];
        for (idx, &s) in self.sizes.iter().enumerate() {
            let mask = idx & ((1 << self.num_caches) - 1);
            x[mask.count_ones() as usize] += s;
        }
        x
    }
}

/// A requested converse subfile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    /// Cache of the requesting user.
    pub cache: usize,
    /// Position of the requester inside its cache's list.
    pub slot: usize,
    pub user: usize,
    pub file: usize,
    pub label: CacheSet,
    pub size: Rational,
}

/// Indices into [`SideInfoGraph::nodes`], ascending.
pub type NodeSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideInfoGraph {
    populations: Vec<usize>,
    nodes: Vec<Node>,
}

impl SideInfoGraph {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn num_caches(&self) -> usize {
        self.populations.len()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.nodes[from].label.contains(self.nodes[to].cache)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len())
            .map(|u| (0..self.len()).filter(|&v| self.has_edge(u, v)).count())
            .sum()
    }
}

/// Nodes ordered by cache, then slot, then lexicographic label. Edges are
/// evaluated on demand from the labels.
pub fn build_graph(assoc: &Association, demand: &Demand, sizes: &SubfileSizes) -> Result<SideInfoGraph> {
    let lambda = assoc.num_caches();
    if sizes.num_caches() != lambda {
        return Err(Error::CacheCountMismatch {
            expected: lambda,
            found: sizes.num_caches(),
        });
    }
    if demand.len() != assoc.num_users() {
        return Err(Error::DemandLength {
            expected: assoc.num_users(),
            found: demand.len(),
        });
    }
    if let Some(&file) = demand.files().iter().find(|&&f| f >= sizes.num_files()) {
        return Err(Error::FileOutOfRange {
            file,
            files: sizes.num_files(),
        });
    }
    let labels = power_set_lex(lambda);
    let mut nodes = Vec::with_capacity(assoc.num_users() << lambda.saturating_sub(1));
    for cache in 0..lambda {
        for (slot, &user) in assoc.users(cache).iter().enumerate() {
            let file = demand.file_of(user);
            for &label in labels.iter().filter(|l| !l.contains(cache)) {
                nodes.push(Node {
                    cache,
                    slot,
                    user,
                    file,
                    label,
                    size: sizes.get(file, label),
                });
            }
        }
    }
    Ok(SideInfoGraph {
        populations: assoc.populations(),
        nodes,
    })
}

/// `σ_s`: caches by descending population, ties by cache index.
pub fn sigma_s(assoc: &Association) -> Vec<usize> {
    assoc.population_order()
}

/// Acyclic subset built from the stable population order of the graph's caches.
pub fn lemma2_subgraph(graph: &SideInfoGraph) -> NodeSet {
    let mut order: Vec<usize> = (0..graph.num_caches()).collect();
    order.sort_by_key(|&c| core::cmp::Reverse(graph.populations[c]));
    lemma2_subgraph_ordered(graph, &order).expect("stable sort is population-descending")
}

/// Acyclic subset for an explicit ranking of caches. Any ranking with
/// non-increasing populations is accepted; tied caches may come in any order.
pub fn lemma2_subgraph_ordered(graph: &SideInfoGraph, order: &[usize]) -> Result<NodeSet> {
    let lambda = graph.num_caches();
    let mut seen = CacheSet::EMPTY;
    for &c in order {
        if c >= lambda || seen.contains(c) {
            return Err(Error::InvalidOrder);
        }
        seen = seen.with(c);
    }
    if order.len() != lambda
        || order
            .windows(2)
            .any(|w| graph.populations[w[0]] < graph.populations[w[1]])
    {
        return Err(Error::InvalidOrder);
    }
    // caches ranked at or above each cache
    let mut excluded = vec![CacheSet::EMPTY; lambda];
    let mut acc = CacheSet::EMPTY;
    for &c in order {
        acc = acc.with(c);
        excluded[c] = acc;
    }
    Ok((0..graph.len())
        .filter(|&v| graph.nodes[v].label.is_disjoint(excluded[graph.nodes[v].cache]))
        .collect())
}

/// Whether the subgraph induced by `subset` has a topological order.
pub fn is_acyclic(graph: &SideInfoGraph, subset: &[usize]) -> bool {
    let s = subset.len();
    let mut indegree = vec![0usize; s];
    for (a, &u) in subset.iter().enumerate() {
        for (b, &v) in subset.iter().enumerate() {
            if a != b && graph.has_edge(u, v) {
                indegree[b] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..s).filter(|&b| indegree[b] == 0).collect();
    let mut removed = 0;
    while let Some(a) = ready.pop() {
        removed += 1;
        let u = subset[a];
        for (b, &v) in subset.iter().enumerate() {
            if a != b && graph.has_edge(u, v) {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    removed == s
}

/// Total size of an acyclic node subset.
pub fn cutset_bound(graph: &SideInfoGraph, subset: &[usize]) -> Result<Rational> {
    if !is_acyclic(graph, subset) {
        return Err(Error::CyclicSubgraph);
    }
    Ok(subset.iter().map(|&v| graph.nodes[v].size).sum())
}

/// One member of a profile's worst-case demand class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMember {
    pub association: Association,
    pub demand: Demand,
    /// Cache holding the `r`-th block; a population-descending ranking.
    pub order: Vec<usize>,
}

/// All pairs (distinct-entry demand, cache permutation) of a profile.
///
/// Users `0..K` are cut into consecutive blocks of sizes `L_1, …, L_Λ` and
/// block `r` is attached to cache `π(r)`. Members are counted with
/// multiplicity: permuting equally sized blocks can reproduce a reordered
/// demand already produced from another base demand.
#[derive(Debug, Clone)]
pub struct DemandClass {
    profile: Profile,
    num_files: usize,
    size: u128,
    bases: KPermutations,
    current: Option<Vec<usize>>,
    orders: KPermutations,
}

impl DemandClass {
    pub fn size(&self) -> u128 {
        self.size
    }
}

/// `P(N, K)·Λ!`, saturating.
pub fn demand_class_size(profile: &Profile, num_files: usize) -> u128 {
    let k = profile.num_users() as u128;
    let n = num_files as u128;
    if n < k {
        return 0;
    }
    let mut size: u128 = 1;
    for v in (n - k + 1..=n).chain(1..=profile.num_caches() as u128) {
        size = size.saturating_mul(v);
    }
    size
}

pub fn enumerate_demand_class(profile: &Profile, num_files: usize, cap: u128) -> Result<DemandClass> {
    let k = profile.num_users();
    if num_files < k {
        return Err(Error::FilesFewerThanUsers {
            files: num_files,
            users: k,
        });
    }
    let size = demand_class_size(profile, num_files);
    if size > cap {
        return Err(Error::ClassTooLarge { size, cap });
    }
    Ok(DemandClass {
        profile: profile.clone(),
        num_files,
        size,
        bases: KPermutations::new(num_files, k),
        current: None,
        orders: permutations(0),
    })
}

impl Iterator for DemandClass {
    type Item = ClassMember;

    fn next(&mut self) -> Option<ClassMember> {
        loop {
            if self.current.is_none() {
                self.current = Some(self.bases.next()?);
                self.orders = permutations(self.profile.num_caches());
            }
            let Some(pi) = self.orders.next() else {
                self.current = None;
                continue;
            };
            let counts = self.profile.counts();
            let mut lists = vec![Vec::new(); counts.len()];
            let mut start = 0;
            for (r, &len) in counts.iter().enumerate() {
                lists[pi[r]] = (start..start + len).collect();
                start += len;
            }
            let association = Association::new(start, lists).expect("blocks partition the users");
            let demand =
                Demand::new(self.num_files, self.current.clone().expect("base demand")).expect("files in range");
            return Some(ClassMember {
                association,
                demand,
                order: pi,
            });
        }
    }
}

/// Average of the cut-set bound of the population-ordered acyclic subgraph
/// over the whole demand class.
pub fn averaged_converse(profile: &Profile, sizes: &SubfileSizes, cap: u128) -> Result<Rational> {
    Ok(averaged_converse_batch(profile, core::slice::from_ref(sizes), cap)?.remove(0))
}

/// [`averaged_converse`] for several size assignments sharing one class walk.
/// The graph topology and the ordered subgraph do not depend on the sizes, so
/// each member only contributes appearance counts, weighted once at the end.
pub fn averaged_converse_batch(profile: &Profile, sizes: &[SubfileSizes], cap: u128) -> Result<Vec<Rational>> {
    let Some(first) = sizes.first() else {
        return Ok(Vec::new());
    };
    for s in sizes {
        if s.num_caches() != profile.num_caches() {
            return Err(Error::CacheCountMismatch {
                expected: profile.num_caches(),
                found: s.num_caches(),
            });
        }
        if s.num_files() != first.num_files() {
            return Err(Error::InvalidSizes {
                file: s.num_files().min(first.num_files()),
            });
        }
    }
    let lambda = profile.num_caches();
    let (counts, class_size) = walk_class(profile, first.num_files(), cap, true)?;
    let labels = power_set_lex(lambda);
    Ok(sizes
        .iter()
        .map(|s| {
            let mut total = Rational::zero();
            for file in 0..s.num_files() {
                for &label in &labels {
                    let count = counts[(file << lambda) | label.mask() as usize];
                    if count > 0 {
                        total += s.get(file, label) * rational(count as i128);
                    }
                }
            }
            total / rational(class_size as i128)
        })
        .collect())
}

/// For every subfile `W^n_T` (indexed `n·2^Λ + mask(T)`), the number of class
/// members whose population-ordered acyclic subgraph contains it.
pub fn appearance_counts(profile: &Profile, num_files: usize, cap: u128) -> Result<Vec<u128>> {
    Ok(walk_class(profile, num_files, cap, false)?.0)
}

/// Appearance counts of every `(file, label)` in the ordered subgraphs of the
/// class, and the class size. Optionally checks each subgraph for cycles.
fn walk_class(profile: &Profile, num_files: usize, cap: u128, check_acyclic: bool) -> Result<(Vec<u128>, u128)> {
    let lambda = profile.num_caches();
    let sizes = SubfileSizes::scheme(num_files, lambda, 0);
    let mut counts = vec![0u128; num_files << lambda];
    let class = enumerate_demand_class(profile, num_files, cap)?;
    let size = class.size();
    for member in class {
        let graph = build_graph(&member.association, &member.demand, &sizes)?;
        let subset = lemma2_subgraph_ordered(&graph, &member.order)?;
        if check_acyclic && !is_acyclic(&graph, &subset) {
            return Err(Error::CyclicSubgraph);
        }
        for v in subset {
            let node = graph.nodes[v];
            counts[(node.file << lambda) | node.label.mask() as usize] += 1;
        }
    }
    Ok((counts, size))
}

/// Whether `v` closes a cycle with the acyclic set `members`.
fn closes_cycle(graph: &SideInfoGraph, members: &[usize], v: usize) -> bool {
    let mut visited = vec![false; members.len()];
    let mut stack: Vec<usize> = (0..members.len()).filter(|&a| graph.has_edge(v, members[a])).collect();
    while let Some(a) = stack.pop() {
        if visited[a] {
            continue;
        }
        visited[a] = true;
        if graph.has_edge(members[a], v) {
            return true;
        }
        stack.extend((0..members.len()).filter(|&b| !visited[b] && graph.has_edge(members[a], members[b])));
    }
    false
}

/// Maximum-total-size acyclic induced subgraph by exhaustive branch and bound.
///
/// Zero-size nodes never change the bound and are left out of the search;
/// `cap` limits the number of positive-size nodes.
pub fn brute_force_mais(graph: &SideInfoGraph, cap: usize) -> Result<(NodeSet, Rational)> {
    let mut candidates: Vec<usize> = (0..graph.len())
        .filter(|&v| graph.nodes[v].size > Rational::zero())
        .collect();
    if candidates.len() > cap {
        return Err(Error::GraphTooLarge {
            nodes: candidates.len(),
            cap,
        });
    }
    candidates.sort_by(|&a, &b| graph.nodes[b].size.cmp(&graph.nodes[a].size));
    // suffix sums for the optimistic bound
    let mut remaining = vec![Rational::zero(); candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        remaining[i] = remaining[i + 1] + graph.nodes[candidates[i]].size;
    }

    struct Search<'a> {
        graph: &'a SideInfoGraph,
        candidates: Vec<usize>,
        remaining: Vec<Rational>,
        chosen: Vec<usize>,
        best: (Vec<usize>, Rational),
    }

    impl Search<'_> {
        fn run(&mut self, idx: usize, value: Rational) {
            if value > self.best.1 {
                self.best = (self.chosen.clone(), value);
            }
            if idx == self.candidates.len() || value + self.remaining[idx] <= self.best.1 {
                return;
            }
            let v = self.candidates[idx];
            if !closes_cycle(self.graph, &self.chosen, v) {
                self.chosen.push(v);
                self.run(idx + 1, value + self.graph.nodes[v].size);
                self.chosen.pop();
            }
            self.run(idx + 1, value);
        }
    }

    let mut search = Search {
        graph,
        candidates,
        remaining,
        chosen: Vec::new(),
        best: (Vec::new(), Rational::zero()),
    };
    search.run(0, Rational::zero());
    let (mut set, value) = search.best;
    set.sort_unstable();
    Ok((set, value))
}

/// Closed-form node count of the population-ordered subgraph:
/// `Σ_λ L_λ·2^{Λ−λ}`.
pub fn lemma2_node_count(profile: &Profile) -> usize {
    let l = profile.num_caches();
    profile
        .counts()
        .iter()
        .enumerate()
        .map(|(r, &c)| c << (l - r - 1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::q_i;
    use crate::combinatorics::{factorial, perm};

    /// `P(N−1, K−1)·Σ_r L_r·P(Λ−i, r)·(Λ−r)!`, the per-subfile appearance count
    /// obtained by counting (demand, permutation) pairs directly.
    fn appearance_count_by_positions(profile: &Profile, num_files: usize, i: usize) -> i128 {
        let (l, k) = (profile.num_caches() as i64, profile.num_users() as i64);
        let per_position = perm(num_files as i64 - 1, k - 1);
        let sum: i128 = profile
            .counts()
            .iter()
            .enumerate()
            .map(|(idx, &lr)| {
                let r = idx as i64 + 1;
                lr as i128 * perm(l - i as i64, r) * factorial((l - r) as u32)
            })
            .sum();
        per_position * sum
    }

    fn assoc(k: usize, lists: &[&[usize]]) -> Association {
        Association::new(k, lists.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_cache_graph_is_edgeless() {
        let a = assoc(3, &[&[0, 1, 2]]);
        let g = build_graph(&a, &Demand::distinct(3), &SubfileSizes::scheme(3, 1, 0)).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edge_count(), 0);
        assert!(g.nodes().iter().all(|n| n.label.is_empty()));
    }

    #[test]
    fn two_cache_graph_edges() {
        // nodes: (c0,∅), (c0,{2}), (c1,∅), (c1,{1}); only labelled nodes point
        // at the other cache's nodes
        let a = assoc(2, &[&[0], &[1]]);
        let g = build_graph(&a, &Demand::distinct(2), &SubfileSizes::scheme(2, 2, 1)).unwrap();
        assert_eq!(g.len(), 4);
        let edges: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (0..4).map(move |v| (u, v)))
            .filter(|&(u, v)| g.has_edge(u, v))
            .collect();
        assert_eq!(edges, [(1, 2), (1, 3), (3, 0), (3, 1)]);
        assert!(!is_acyclic(&g, &[1, 3]));
        assert!(is_acyclic(&g, &[]));
        assert!(is_acyclic(&g, &[0, 1, 2]));
    }

    #[test]
    fn node_count_closed_form() {
        for k in 1..=6 {
            for l in 1..=4.min(k) {
                for p in Profile::all(k, l) {
                    let a = Association::from_profile(&p);
                    let g = build_graph(&a, &Demand::distinct(k), &SubfileSizes::scheme(k, l, 0)).unwrap();
                    assert_eq!(g.len(), k << (l - 1));
                    let sub = lemma2_subgraph(&g);
                    assert_eq!(sub.len(), lemma2_node_count(&p));
                    assert!(is_acyclic(&g, &sub));
                }
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let golden = assoc(8, &[&[0, 1, 2], &[3, 4], &[5, 6], &[7]]);
        assert_eq!(sigma_s(&golden), [0, 1, 2, 3]);
        assert_eq!(sigma_s(&assoc(6, &[&[0], &[1, 2, 3], &[4, 5]])), [1, 2, 0]);
        assert_eq!(sigma_s(&assoc(3, &[&[0], &[1], &[2]])), [0, 1, 2]);
    }

    #[test]
    fn ordered_subgraph_rejects_bad_rankings() {
        let a = assoc(3, &[&[0], &[1, 2]]);
        let g = build_graph(&a, &Demand::distinct(3), &SubfileSizes::scheme(3, 2, 1)).unwrap();
        assert_eq!(lemma2_subgraph_ordered(&g, &[0, 1]), Err(Error::InvalidOrder));
        assert_eq!(lemma2_subgraph_ordered(&g, &[1, 1]), Err(Error::InvalidOrder));
        assert!(lemma2_subgraph_ordered(&g, &[1, 0]).is_ok());
    }

    #[test]
    fn cutset_examples() {
        let a = assoc(2, &[&[0], &[1]]);
        let one_node =
            SubfileSizes::from_fn(2, 2, |_, l| if l.is_empty() { rational(1) } else { Rational::zero() }).unwrap();
        let g = build_graph(&a, &Demand::distinct(2), &one_node).unwrap();
        assert_eq!(cutset_bound(&g, &[0]), Ok(rational(1)));
        assert_eq!(cutset_bound(&g, &[1, 3]), Err(Error::CyclicSubgraph));

        // Λ = K = 2, t = 1: the subset keeps W^{d_1}_{2} of size 1/2 and W^{d_2}_∅ of size 0
        let g = build_graph(&a, &Demand::distinct(2), &SubfileSizes::scheme(2, 2, 1)).unwrap();
        let sub = lemma2_subgraph(&g);
        assert_eq!(cutset_bound(&g, &sub), Ok(ratio(1, 2)));
    }

    #[test]
    fn golden_tightness_witness() {
        let a = assoc(8, &[&[0, 1, 2], &[3, 4], &[5, 6], &[7]]);
        let g = build_graph(&a, &Demand::distinct(8), &SubfileSizes::scheme(8, 4, 2)).unwrap();
        let sub = lemma2_subgraph(&g);
        assert!(is_acyclic(&g, &sub));
        assert_eq!(cutset_bound(&g, &sub), Ok(ratio(11, 6)));
    }

    #[test]
    fn demand_class_sizes() {
        let p11 = Profile::new(vec![1, 1]).unwrap();
        assert_eq!(enumerate_demand_class(&p11, 2, DEFAULT_CLASS_CAP).unwrap().count(), 4);
        assert_eq!(enumerate_demand_class(&p11, 3, DEFAULT_CLASS_CAP).unwrap().count(), 12);
        let p1 = Profile::new(vec![1]).unwrap();
        assert_eq!(enumerate_demand_class(&p1, 1, DEFAULT_CLASS_CAP).unwrap().count(), 1);
        assert!(matches!(
            enumerate_demand_class(&p11, 3, 11),
            Err(Error::ClassTooLarge { size: 12, cap: 11 })
        ));
    }

    #[test]
    fn members_rank_caches_by_population() {
        let p = Profile::new(vec![2, 1, 0]).unwrap();
        for m in enumerate_demand_class(&p, 3, DEFAULT_CLASS_CAP).unwrap() {
            let pops: Vec<usize> = m.order.iter().map(|&c| m.association.population(c)).collect();
            assert_eq!(pops, [2, 1, 0]);
            assert!(m.demand.is_worst_case());
        }
    }

    #[test]
    fn q_i_tiny_oracle() {
        let p = Profile::new(vec![1, 1]).unwrap();
        let counts = appearance_counts(&p, 2, DEFAULT_CLASS_CAP).unwrap();
        for file in 0..2 {
            for mask in 0..4u32 {
                let i = mask.count_ones() as usize;
                assert_eq!(counts[(file << 2) | mask as usize] as i128, q_i(&p, 2, i));
            }
        }
    }

    #[test]
    fn position_count_agrees_with_printed_formula() {
        for k in 1..=5 {
            for l in 1..=k.min(4) {
                for p in Profile::all(k, l) {
                    for i in 0..=l {
                        assert_eq!(appearance_count_by_positions(&p, k + 1, i), q_i(&p, k + 1, i));
                    }
                }
            }
        }
    }

    #[test]
    fn mais_small_cases() {
        // edgeless: everything
        let a = assoc(2, &[&[0, 1]]);
        let g = build_graph(&a, &Demand::distinct(2), &SubfileSizes::scheme(2, 1, 0)).unwrap();
        assert_eq!(
            brute_force_mais(&g, DEFAULT_MAIS_CAP).unwrap(),
            (vec![0, 1], rational(2))
        );

        // two mutually-cached nodes: only one of them fits
        let a = assoc(2, &[&[0], &[1]]);
        let sizes =
            SubfileSizes::from_fn(2, 2, |_, l| if l.len() == 1 { ratio(1, 2) } else { Rational::zero() }).unwrap();
        let g = build_graph(&a, &Demand::distinct(2), &sizes).unwrap();
        let (set, value) = brute_force_mais(&g, DEFAULT_MAIS_CAP).unwrap();
        assert_eq!(value, ratio(1, 2));
        assert_eq!(set.len(), 1);

        let big = build_graph(&a, &Demand::distinct(2), &SubfileSizes::pseudorandom(2, 2, 1)).unwrap();
        assert!(matches!(brute_force_mais(&big, 1), Err(Error::GraphTooLarge { .. })));
    }

    #[test]
    fn pseudorandom_sizes_are_normalized_and_deterministic() {
        let a = SubfileSizes::pseudorandom(3, 3, 42);
        assert_eq!(a, SubfileSizes::pseudorandom(3, 3, 42));
        assert_eq!(a.level_totals().iter().sum::<Rational>(), rational(3));
        assert_ne!(a, SubfileSizes::pseudorandom(3, 3, 43));
    }
}
