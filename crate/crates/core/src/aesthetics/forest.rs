//! Binary random-forest classifier reduced to what profile learning needs:
//! Gini impurity-decrease (MDI) feature importances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestParams {
    pub n_trees: usize,
    /// Features drawn per split; `None` means ⌈√f⌉.
    pub max_features: Option<usize>,
    pub bootstrap: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            max_features: None,
            bootstrap: true,
        }
    }
}

fn gini(pos: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = pos as f64 / n as f64;
    2.0 * p * (1.0 - p)
}

struct Split {
    feature: usize,
    threshold: f64,
    /// Weighted impurity decrease `n·g − n_l·g_l − n_r·g_r`.
    decrease: f64,
}

/// Best threshold on one feature over the node's samples, or `None` if the
/// feature is constant there.
fn best_threshold(x: &[Vec<f64>], y: &[bool], samples: &[usize], feature: usize) -> Option<Split> {
    let mut sorted: Vec<(f64, bool)> = samples.iter().map(|&i| (x[i][feature], y[i])).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = sorted.len();
    if sorted[0].0 == sorted[n - 1].0 {
        return None;
    }
    let total_pos = sorted.iter().filter(|s| s.1).count();
    let parent = n as f64 * gini(total_pos, n);
    let mut best: Option<Split> = None;
    let mut left_pos = 0;
    for i in 1..n {
        left_pos += sorted[i - 1].1 as usize;
        if sorted[i].0 == sorted[i - 1].0 {
            continue;
        }
        let (nl, nr) = (i, n - i);
        let child = nl as f64 * gini(left_pos, nl) + nr as f64 * gini(total_pos - left_pos, nr);
        let decrease = parent - child;
        if best.as_ref().is_none_or(|b| decrease > b.decrease) {
            let threshold = sorted[i - 1].0 + (sorted[i].0 - sorted[i - 1].0) / 2.0;
            best = Some(Split { feature, threshold, decrease });
        }
    }
    best
}

/// Grows one unpruned tree on `samples` (indices may repeat) and returns the
/// per-feature sum of weighted impurity decreases.
fn grow_tree(x: &[Vec<f64>], y: &[bool], samples: Vec<usize>, max_features: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n_features = x[0].len();
    let mut importance = vec![0.0; n_features];
    let mut stack = vec![samples];
    let mut features: Vec<usize> = (0..n_features).collect();
    while let Some(node) = stack.pop() {
        let pos = node.iter().filter(|&&i| y[i]).count();
        if node.len() < 2 || pos == 0 || pos == node.len() {
            continue;
        }
        // Draw features until `max_features` non-constant ones were tried.
        features.shuffle(rng);
        let mut tried = 0;
        let mut best: Option<Split> = None;
        for &f in &features {
            if tried == max_features {
                break;
            }
            if let Some(s) = best_threshold(x, y, &node, f) {
                tried += 1;
                if best.as_ref().is_none_or(|b| s.decrease > b.decrease) {
                    best = Some(s);
                }
            }
        }
        let Some(split) = best else { continue };
        importance[split.feature] += split.decrease;
        let (left, right): (Vec<usize>, Vec<usize>) =
            node.iter().partition(|&&i| x[i][split.feature] <= split.threshold);
        stack.push(right);
        stack.push(left);
    }
    importance
}

/// Mean decrease-in-impurity importances of a seeded forest, normalized to
/// sum to 1. Each tree's importances are normalized before averaging. All
/// zeros when no tree found a useful split.
pub fn feature_importances(x: &[Vec<f64>], y: &[bool], params: ForestParams, seed: u64) -> Vec<f64> {
    assert_eq!(x.len(), y.len());
    assert!(!x.is_empty(), "no samples");
    let n = x.len();
    let f = x[0].len();
    let max_features = params
        .max_features
        .unwrap_or_else(|| (f as f64).sqrt().ceil() as usize)
        .clamp(1, f.max(1));
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let tree_seeds: Vec<u64> = (0..params.n_trees).map(|_| master.gen()).collect();

    let per_tree: Vec<Vec<f64>> = tree_seeds
        .par_iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let samples: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            let mut imp = grow_tree(x, y, samples, max_features, &mut rng);
            let total: f64 = imp.iter().sum();
            if total > 0.0 {
                imp.iter_mut().for_each(|v| *v /= total);
            }
            imp
        })
        .collect();

    let mut mean = vec![0.0; f];
    for imp in &per_tree {
        for (m, v) in mean.iter_mut().zip(imp) {
            *m += v;
        }
    }
    let total: f64 = mean.iter().sum();
    if total > 0.0 {
        mean.iter_mut().for_each(|m| *m /= total);
    }
    mean
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gini decrease of the best single threshold on each feature, computed
    /// by trying every cut between sorted values.
    fn stump_decreases(x: &[Vec<f64>], y: &[bool]) -> Vec<f64> {
        let n = x.len();
        let g = |s: &[bool]| {
            let p = s.iter().filter(|&&b| b).count() as f64 / s.len() as f64;
            2.0 * p * (1.0 - p)
        };
        (0..x[0].len())
            .map(|f| {
                let mut best = 0.0f64;
                for cut in x.iter().map(|r| r[f]) {
                    let l: Vec<bool> = (0..n).filter(|&i| x[i][f] <= cut).map(|i| y[i]).collect();
                    let r: Vec<bool> = (0..n).filter(|&i| x[i][f] > cut).map(|i| y[i]).collect();
                    if l.is_empty() || r.is_empty() {
                        continue;
                    }
                    let d = n as f64 * g(y) - l.len() as f64 * g(&l) - r.len() as f64 * g(&r);
                    best = best.max(d);
                }
                best
            })
            .collect()
    }

    #[test]
    fn best_threshold_matches_stump_oracle() {
        let x: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64, (i * 7 % 5) as f64, 1.0]).collect();
        let y: Vec<bool> = (0..12).map(|i| i >= 5).collect();
        let idx: Vec<usize> = (0..12).collect();
        let oracle = stump_decreases(&x, &y);
        for f in 0..2 {
            let s = best_threshold(&x, &y, &idx, f).unwrap();
            assert!((s.decrease - oracle[f]).abs() < 1e-9);
        }
        assert!(best_threshold(&x, &y, &idx, 2).is_none());
    }

    #[test]
    fn separating_feature_dominates() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x: Vec<Vec<f64>> = (0..60)
            .map(|i| vec![rng.gen(), if i < 30 { 0.0 } else { 1.0 } + rng.gen::<f64>() * 0.1, 5.0])
            .collect();
        let y: Vec<bool> = (0..60).map(|i| i >= 30).collect();
        let imp = feature_importances(&x, &y, ForestParams::default(), 9);
        assert!(imp[1] > imp[0]);
        assert_eq!(imp[2], 0.0);
        assert!((imp.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seeded_and_reproducible() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![(i % 7) as f64, (i % 3) as f64]).collect();
        let y: Vec<bool> = (0..20).map(|i| i % 2 == 0).collect();
        let a = feature_importances(&x, &y, ForestParams::default(), 4);
        assert_eq!(a, feature_importances(&x, &y, ForestParams::default(), 4));
    }

    #[test]
    fn constant_features_give_zero() {
        let x = vec![vec![1.0, 2.0]; 6];
        let y = vec![true, false, true, false, true, false];
        assert_eq!(feature_importances(&x, &y, ForestParams::default(), 0), vec![0.0, 0.0]);
    }
}
