//! Exact analysis of finite Markov chains: bottom SCCs, reachability
//! probabilities and the measure of parity objectives, plus a seeded
//! Monte-Carlo estimator used only for statistical cross-checks.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph;
use crate::linalg;
use crate::model::{LabeledMarkovChain, Priority};
use crate::rational::Rational;

/// Row-major transition structure shared by chains and induced games.
pub(crate) type Rows = [Vec<(usize, Rational)>];

/// Bottom strongly connected components of a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsccDecomposition {
    /// Each BSCC as a sorted list of locations, ordered by smallest member.
    pub bsccs: Vec<Vec<usize>>,
    /// Locations outside every BSCC, sorted.
    pub transient: Vec<usize>,
}

impl BsccDecomposition {
    /// A BSCC is accepting iff its minimal priority is even.
    pub fn accepting(&self, priority: &[Priority]) -> Vec<bool> {
        self.bsccs
            .iter()
            .map(|b| b.iter().map(|&s| priority[s]).min().unwrap_or(1) % 2 == 0)
            .collect()
    }

    /// Index of the BSCC containing `s`, if any.
    pub fn bscc_of(&self, s: usize) -> Option<usize> {
        self.bsccs.iter().position(|b| b.binary_search(&s).is_ok())
    }
}

pub fn bscc_decompose(mc: &LabeledMarkovChain) -> BsccDecomposition {
    bsccs_of(&mc.adjacency())
}

pub(crate) fn bsccs_of(adj: &[Vec<usize>]) -> BsccDecomposition {
    let comps = graph::strongly_connected_components(adj, None);
    let id = graph::component_ids(adj.len(), &comps);
    let mut bsccs = Vec::new();
    let mut transient = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        let closed = comp.iter().all(|&v| adj[v].iter().all(|&w| id[w] == c));
        if closed {
            bsccs.push(comp.clone());
        } else {
            transient.extend_from_slice(comp);
        }
    }
    bsccs.sort();
    transient.sort_unstable();
    BsccDecomposition { bsccs, transient }
}

/// Probability, from each location, of reaching `target` without touching
/// `avoid` first.
///
/// # Panics
/// If `target` and `avoid` intersect.
pub fn reach_probability(
    mc: &LabeledMarkovChain,
    target: &BTreeSet<usize>,
    avoid: &BTreeSet<usize>,
) -> Vec<Rational> {
    assert!(target.is_disjoint(avoid), "target and avoid sets must be disjoint");
    let n = mc.len();
    let t: Vec<bool> = (0..n).map(|s| target.contains(&s)).collect();
    let a: Vec<bool> = (0..n).map(|s| avoid.contains(&s)).collect();
    let rows: Vec<Vec<(usize, Rational)>> = (0..n).map(|s| mc.transitions(s).to_vec()).collect();
    reach_rows(&rows, &t, &a)
}

pub(crate) fn reach_rows(rows: &Rows, target: &[bool], avoid: &[bool]) -> Vec<Rational> {
    let n = rows.len();
    let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|(t, _)| *t).collect()).collect();
    let through: Vec<bool> = (0..n).map(|s| !avoid[s]).collect();
    let can = graph::backward_reachable(&adj, target, &through);

    // Unknowns: can reach the target but are not in it (and not avoided).
    let unknown: Vec<usize> = (0..n).filter(|&s| can[s] && !target[s] && !avoid[s]).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &s) in unknown.iter().enumerate() {
        slot[s] = i;
    }
    let m = unknown.len();
    let mut a = vec![vec![Rational::zero(); m]; m];
    let mut b = vec![Rational::zero(); m];
    for (i, &s) in unknown.iter().enumerate() {
        a[i][i] = Rational::one();
        for (t, p) in &rows[s] {
            if target[*t] {
                b[i] += p;
            } else if slot[*t] != usize::MAX {
                a[i][slot[*t]] = &a[i][slot[*t]] - p;
            }
        }
    }
    let x = linalg::solve(a, b)
        .expect("reduced reachability system is nonsingular once the zero set is removed");

    let mut out = vec![Rational::zero(); n];
    for s in 0..n {
        if target[s] {
            out[s] = Rational::one();
        }
    }
    for (i, &s) in unknown.iter().enumerate() {
        out[s] = x[i].clone();
    }
    out
}

/// Measure of the (min-)parity objective from every location.
pub fn parity_measure(mc: &LabeledMarkovChain, priority: &[Priority]) -> Vec<Rational> {
    assert_eq!(priority.len(), mc.len(), "priority must be total on locations");
    let rows: Vec<Vec<(usize, Rational)>> = (0..mc.len()).map(|s| mc.transitions(s).to_vec()).collect();
    parity_rows(&rows, priority)
}

pub(crate) fn parity_rows(rows: &Rows, priority: &[Priority]) -> Vec<Rational> {
    let n = rows.len();
    let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|(t, _)| *t).collect()).collect();
    let dec = bsccs_of(&adj);
    let mut target = vec![false; n];
    for (b, acc) in dec.bsccs.iter().zip(dec.accepting(priority)) {
        if acc {
            for &s in b {
                target[s] = true;
            }
        }
    }
    reach_rows(rows, &target, &vec![false; n])
}

/// Objective sampled by [`monte_carlo_estimate`].
#[derive(Debug, Clone)]
pub enum Objective {
    /// Reach `target` before `avoid`.
    Reach {
        target: BTreeSet<usize>,
        avoid: BTreeSet<usize>,
    },
    /// Min-parity; a finite run is classified by the least priority in the
    /// second half of the horizon.
    Parity(Vec<Priority>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub successes: u64,
    pub samples: u64,
    pub mean: f64,
    pub low: f64,
    pub high: f64,
}

impl Estimate {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }
}

/// Two-sided Wilson score interval at normal quantile `z`.
pub fn wilson_interval(successes: u64, samples: u64, z: f64) -> (f64, f64) {
    let n = samples as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the bounds at 0 and 1 are exact; rounding must not exclude them
    let low = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let high = if successes == samples { 1.0 } else { (centre + half).min(1.0) };
    (low, high)
}

/// Normal quantile for a two-sided 99% interval.
pub const Z_99: f64 = 2.576;

/// Samples `samples` runs of length `horizon` from `start`. Deterministic
/// for a fixed seed. Only a statistical cross-check; never used by solvers.
pub fn monte_carlo_estimate(
    mc: &LabeledMarkovChain,
    start: usize,
    objective: &Objective,
    samples: u64,
    horizon: usize,
    seed: u64,
) -> Estimate {
    assert!(samples >= 1, "at least one sample is required");
    let cumulative: Vec<Vec<(usize, f64)>> = (0..mc.len())
        .map(|s| {
            let mut acc = 0.0;
            mc.transitions(s)
                .iter()
                .map(|(t, p)| {
                    acc += p.to_f64();
                    (*t, acc)
                })
                .collect()
        })
        .collect();
    let step = |s: usize, rng: &mut ChaCha8Rng| -> usize {
        let row = &cumulative[s];
        let u: f64 = rng.random::<f64>() * row.last().map_or(1.0, |x| x.1);
        row.iter().find(|(_, c)| u < *c).map_or(row[row.len() - 1].0, |x| x.0)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    for _ in 0..samples {
        let mut s = start;
        let hit = match objective {
            Objective::Reach { target, avoid } => {
                let mut result = false;
                for _ in 0..=horizon {
                    if target.contains(&s) {
                        result = true;
                        break;
                    }
                    if avoid.contains(&s) {
                        break;
                    }
                    s = step(s, &mut rng);
                }
                result
            }
            Objective::Parity(priority) => {
                let window_start = horizon / 2;
                let mut least = Priority::MAX;
                for i in 0..horizon {
                    if i >= window_start {
                        least = least.min(priority[s]);
                    }
                    s = step(s, &mut rng);
                }
                least % 2 == 0
            }
        };
        if hit {
            successes += 1;
        }
    }
    let (low, high) = wilson_interval(successes, samples, Z_99);
    Estimate {
        successes,
        samples,
        mean: successes as f64 / samples as f64,
        low,
        high,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn chain(rows: Vec<Vec<(usize, &str)>>) -> LabeledMarkovChain {
        let n = rows.len();
        LabeledMarkovChain::new(
            (0..n).map(|i| format!("s{i}")).collect(),
            rows.into_iter()
                .map(|row| row.into_iter().map(|(t, p)| (t, r(p))).collect())
                .collect(),
            vec![BTreeSet::new(); n],
            0,
        )
        .unwrap()
    }

    #[test]
    fn single_absorbing_location() {
        let mc = chain(vec![vec![(0, "1")]]);
        let d = bscc_decompose(&mc);
        assert_eq!(d.bsccs, vec![vec![0]]);
        assert!(d.transient.is_empty());
    }

    #[test]
    fn two_sinks_and_transient_root() {
        let mc = chain(vec![vec![(1, "1/2"), (2, "1/2")], vec![(1, "1")], vec![(2, "1")]]);
        let d = bscc_decompose(&mc);
        assert_eq!(d.bsccs, vec![vec![1], vec![2]]);
        assert_eq!(d.transient, vec![0]);
    }

    #[test]
    fn one_step_law() {
        let mc = chain(vec![vec![(1, "1/3"), (2, "2/3")], vec![(1, "1")], vec![(2, "1")]]);
        let x = reach_probability(&mc, &[1].into(), &BTreeSet::new());
        assert_eq!(x, vec![r("1/3"), r("1"), r("0")]);
        let y = reach_probability(&mc, &[1].into(), &[0].into());
        assert_eq!(y[0], r("0"));
    }

    #[test]
    fn geometric_retry() {
        // s0 retries with 1/2, target with 1/4, fails with 1/4: 1/2
        let mc = chain(vec![
            vec![(0, "1/2"), (1, "1/4"), (2, "1/4")],
            vec![(1, "1")],
            vec![(2, "1")],
        ]);
        let x = reach_probability(&mc, &[1].into(), &BTreeSet::new());
        assert_eq!(x[0], r("1/2"));
    }

    #[test]
    fn parity_extremes_and_complement() {
        let mc = chain(vec![
            vec![(1, "1/2"), (2, "1/2")],
            vec![(0, "1/3"), (1, "2/3")],
            vec![(2, "1/4"), (3, "3/4")],
            vec![(2, "1")],
        ]);
        assert!(parity_measure(&mc, &[0, 2, 4, 0]).iter().all(Rational::is_one));
        assert!(parity_measure(&mc, &[1, 3, 1, 5]).iter().all(Rational::is_zero));
        let c = [1, 2, 0, 3];
        let c1: Vec<Priority> = c.iter().map(|p| p + 1).collect();
        let a = parity_measure(&mc, &c);
        let b = parity_measure(&mc, &c1);
        for s in 0..4 {
            assert!((&a[s] + &b[s]).is_one());
        }
    }

    #[test]
    fn wilson_is_sane() {
        let (lo, hi) = wilson_interval(50, 100, Z_99);
        assert!(lo < 0.5 && 0.5 < hi);
        let (lo, hi) = wilson_interval(100, 100, Z_99);
        assert!(lo > 0.9 && hi > 0.999);
    }

    #[test]
    fn estimates_are_seeded() {
        let mc = chain(vec![vec![(1, "1/3"), (2, "2/3")], vec![(1, "1")], vec![(2, "1")]]);
        let obj = Objective::Reach {
            target: [1].into(),
            avoid: BTreeSet::new(),
        };
        let a = monte_carlo_estimate(&mc, 0, &obj, 2000, 16, 7);
        let b = monte_carlo_estimate(&mc, 0, &obj, 2000, 16, 7);
        assert_eq!(a, b);
        assert!(a.contains(1.0 / 3.0));
        let sure = monte_carlo_estimate(&mc, 0, &Objective::Parity(vec![0, 0, 0]), 100, 8, 1);
        assert_eq!(sure.mean, 1.0);
    }
}
