//! Optimal delay per association profile and the converse linear program.
//!
//! At integer `t = Λγ` the optimal delay is
//! `c_t = Σ_{r=1}^{Λ−t} L_r·C(Λ−r, t) / C(Λ, t)`; elsewhere it is the lower
//! convex envelope of those anchor points (memory sharing).

use alloc::vec::Vec;
use num_traits::Zero;

use crate::combinatorics::{binom, factorial, perm};
use crate::delivery::closed_form_delay;
use crate::model::{ratio, rational, Profile};
use crate::{Error, Rational, Result};

/// Piecewise-linear lower convex envelope through a set of anchor points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffCurve {
    anchors: Vec<(Rational, Rational)>,
    hull: Vec<(Rational, Rational)>,
}

fn cross(o: (Rational, Rational), a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl TradeoffCurve {
    /// Builds the envelope with a single monotone-chain pass. Anchors must have
    /// strictly increasing abscissae.
    pub fn from_anchors(anchors: Vec<(Rational, Rational)>) -> Self {
        assert!(!anchors.is_empty(), "curve needs at least one anchor");
        assert!(
            anchors.windows(2).all(|w| w[0].0 < w[1].0),
            "anchors must be sorted by gamma"
        );
        let mut hull: Vec<(Rational, Rational)> = Vec::with_capacity(anchors.len());
        for &p in &anchors {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= Rational::zero() {
                hull.pop();
            }
            hull.push(p);
        }
        TradeoffCurve { anchors, hull }
    }

    /// Anchors `(i/Λ, c_i)` for `i = 0..=Λ`.
    pub fn for_profile(profile: &Profile) -> Self {
        let l = profile.num_caches() as i128;
        let anchors = c_sequence(profile)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (ratio(i as i128, l), c))
            .collect();
        TradeoffCurve::from_anchors(anchors)
    }

    pub fn anchors(&self) -> &[(Rational, Rational)] {
        &self.anchors
    }

    /// Vertices of the envelope.
    pub fn hull(&self) -> &[(Rational, Rational)] {
        &self.hull
    }

    /// Envelope value at `x`, `None` outside the anchor range.
    pub fn eval(&self, x: Rational) -> Option<Rational> {
        let first = self.hull.first()?;
        let last = self.hull.last()?;
        if x < first.0 || x > last.0 {
            return None;
        }
        if let Some(&(_, y)) = self.hull.iter().find(|p| p.0 == x) {
            return Some(y);
        }
        let seg = self.hull.windows(2).find(|w| w[0].0 < x && x < w[1].0)?;
        let ((x0, y0), (x1, y1)) = (seg[0], seg[1]);
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

/// `c_i` for `i = 0..=Λ`; non-increasing in `i`.
pub fn c_sequence(profile: &Profile) -> Vec<Rational> {
    (0..=profile.num_caches())
        .map(|i| closed_form_delay(profile, i))
        .collect()
}

fn check_gamma(gamma: Rational) -> Result<()> {
    if gamma < Rational::zero() || gamma > rational(1) {
        Err(Error::GammaOutOfRange)
    } else {
        Ok(())
    }
}

/// Optimal worst-case delay of `profile` at normalized cache size `gamma`.
pub fn t_star(profile: &Profile, gamma: Rational) -> Result<Rational> {
    check_gamma(gamma)?;
    Ok(TradeoffCurve::for_profile(profile)
        .eval(gamma)
        .expect("gamma within [0, 1]"))
}

/// `K(1−γ)/(Λγ+1)` at the anchors `γ = i/Λ`, convex envelope between them.
pub fn uniform_t_star(num_users: usize, num_caches: usize, gamma: Rational) -> Result<Rational> {
    check_gamma(gamma)?;
    let (k, l) = (num_users as i128, num_caches as i128);
    let anchors = (0..=l)
        .map(|i| (ratio(i, l), ratio(k * (l - i), l * (i + 1))))
        .collect();
    Ok(TradeoffCurve::from_anchors(anchors)
        .eval(gamma)
        .expect("gamma within [0, 1]"))
}

/// Checks `Σ_{r=1}^{Λ−t} C(Λ−r, t) = C(Λ, t+1)` and, when `Λ | K`, that the
/// uniform profile's delay collapses to `K(1−γ)/(Λγ+1)`.
pub fn pascal_reduction_check(num_users: usize, num_caches: usize, t: usize) -> bool {
    let (l, ti) = (num_caches as i64, t as i64);
    let column: i128 = (1..=l - ti).map(|r| binom(l - r, ti)).sum();
    if column != binom(l, ti + 1) {
        return false;
    }
    match Profile::uniform(num_users, num_caches) {
        Some(uniform) => {
            let gamma = ratio(t as i128, num_caches as i128);
            let k = num_users as i128;
            let expected = ratio(k * (l as i128 - t as i128), l as i128 * (t as i128 + 1));
            closed_form_delay(&uniform, t) == expected && t_star(&uniform, gamma) == Ok(expected)
        }
        None => true,
    }
}

/// Number of demand-class members whose population-ordered acyclic subgraph
/// contains a fixed subfile stored in exactly `i` caches:
///
/// `C(N−1,K−1)·Σ_r P(Λ−i−1, r−1)·(Λ−r)!·L_r·P(K−1, L_r−1)·(K−L_r)!·(Λ−i)`.
pub fn q_i(profile: &Profile, num_files: usize, i: usize) -> i128 {
    let l = profile.num_caches() as i64;
    let k = profile.num_users() as i64;
    let i = i as i64;
    let prefix = binom(num_files as i64 - 1, k - 1);
    let sum: i128 = profile
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &lr)| lr > 0)
        .map(|(idx, &lr)| {
            let r = idx as i64 + 1;
            let lr = lr as i64;
            perm(l - i - 1, r - 1)
                * factorial((l - r) as u32)
                * lr as i128
                * perm(k - 1, lr - 1)
                * factorial((k - lr) as u32)
                * (l - i) as i128
        })
        .sum();
    prefix * sum
}

/// Optimum of the converse linear program and one minimizing vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// `x_i`: data stored in exactly `i` caches, `i = 0..=Λ`.
    pub x: Vec<Rational>,
}

/// Minimizes `Σ_i c_i·x_i / N` subject to `Σ_i x_i = N`, `Σ_i i·x_i ≤ ΛM`,
/// `x ≥ 0`, by enumerating every vertex: one or two non-zero coordinates.
pub fn solve_converse_lp(profile: &Profile, num_files: usize, cache_size: Rational) -> Result<LpSolution> {
    let n = rational(num_files as i128);
    if cache_size < Rational::zero() || cache_size > n {
        return Err(Error::CacheSizeOutOfRange);
    }
    let c = c_sequence(profile);
    let l = profile.num_caches();
    let budget = cache_size * rational(l as i128);
    let mut best: Option<LpSolution> = None;
    let mut consider = |x: Vec<Rational>| {
        let value = x.iter().zip(&c).map(|(&xi, &ci)| xi * ci).sum::<Rational>() / n;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(LpSolution { value, x });
        }
    };
    for i in 0..=l {
        if rational(i as i128) * n <= budget {
            let mut x = alloc::vec![Rational::zero(); l + 1];
            x[i] = n;
            consider(x);
        }
        for j in i + 1..=l {
            // both constraints tight
            let xj = (budget - rational(i as i128) * n) / rational((j - i) as i128);
            let xi = n - xj;
            if xi >= Rational::zero() && xj >= Rational::zero() {
                let mut x = alloc::vec![Rational::zero(); l + 1];
                x[i] = xi;
                x[j] = xj;
                consider(x);
            }
        }
    }
    Ok(best.expect("x_0 = N is always feasible"))
}

pub fn lp_lower_bound(profile: &Profile, num_files: usize, cache_size: Rational) -> Result<Rational> {
    solve_converse_lp(profile, num_files, cache_size).map(|s| s.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(v: &[usize]) -> Profile {
        Profile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn golden_t_star() {
        assert_eq!(t_star(&p(&[3, 2, 2, 1]), ratio(1, 2)), Ok(ratio(11, 6)));
    }

    #[test]
    fn t_star_endpoints() {
        let prof = p(&[4, 3, 1]);
        assert_eq!(t_star(&prof, rational(0)), Ok(rational(8)));
        assert_eq!(t_star(&prof, rational(1)), Ok(rational(0)));
        assert_eq!(t_star(&prof, ratio(3, 2)), Err(Error::GammaOutOfRange));
    }

    #[test]
    fn uniform_six_caches() {
        // K(1-γ)/(Λγ+1) at γ=1/6: 30·(5/6)/2
        assert_eq!(t_star(&p(&[5; 6]), ratio(1, 6)), Ok(ratio(25, 2)));
        assert_eq!(uniform_t_star(30, 6, ratio(1, 3)), Ok(ratio(20, 3)));
        assert_eq!(uniform_t_star(30, 6, rational(1)), Ok(rational(0)));
        // Λ = K: the dedicated-cache formula K(1−γ)/(1+Kγ)
        assert_eq!(uniform_t_star(4, 4, ratio(1, 4)), Ok(ratio(3, 2)));
    }

    #[test]
    fn pascal_examples() {
        assert!(pascal_reduction_check(8, 4, 2));
        assert!(pascal_reduction_check(12, 6, 1));
        for l in 1..=12 {
            for t in 0..=l {
                assert!(pascal_reduction_check(l * 2, l, t));
            }
        }
    }

    #[test]
    fn envelope_interpolates_between_hull_points() {
        let curve = TradeoffCurve::from_anchors(vec![
            (rational(0), rational(4)),
            (rational(1), rational(3)),
            (rational(2), rational(0)),
        ]);
        // (1,3) lies above the chord from (0,4) to (2,0)
        assert_eq!(curve.hull().len(), 2);
        assert_eq!(curve.eval(rational(1)), Some(rational(2)));
        assert_eq!(curve.eval(ratio(1, 2)), Some(rational(3)));
        assert_eq!(curve.eval(rational(3)), None);
    }

    #[test]
    fn lp_examples() {
        let prof = p(&[3, 2, 2, 1]);
        assert_eq!(lp_lower_bound(&prof, 8, rational(4)), Ok(ratio(11, 6)));
        assert_eq!(lp_lower_bound(&prof, 8, rational(8)), Ok(rational(0)));
        assert_eq!(lp_lower_bound(&prof, 8, rational(0)), Ok(rational(8)));
        let sol = solve_converse_lp(&prof, 8, rational(4)).unwrap();
        assert_eq!(sol.x.iter().sum::<Rational>(), rational(8));
    }

    #[test]
    fn lp_memory_sharing_matches_envelope() {
        let prof = p(&[3, 2, 2, 1]);
        // M = 3 → Λγ = 3/2, halfway between c_1 and c_2
        let c = c_sequence(&prof);
        let mid = (c[1] + c[2]) / rational(2);
        assert_eq!(lp_lower_bound(&prof, 8, rational(3)), Ok(mid));
        assert_eq!(t_star(&prof, ratio(3, 8)), Ok(mid));
    }

    #[test]
    fn q_i_boundary_levels() {
        let prof = p(&[1, 1]);
        // nothing stored in every cache can avoid the first-ranked cache
        assert_eq!(q_i(&prof, 2, 2), 0);
        assert_eq!(q_i(&prof, 2, 0), 4);
        assert_eq!(q_i(&prof, 2, 1), 1);
    }
}
