//! Semantic fields: affinity-propagation clusters of a poem's content lemmas,
//! their centroids, nearest-word topics and centroid distances.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::Poem;
use crate::lexres::{cosine_of, EmbeddingStore};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApParams {
    pub damping: f64,
    pub max_iter: usize,
    pub convergence_iter: usize,
}

impl Default for ApParams {
    fn default() -> Self {
        ApParams {
            damping: 0.9,
            max_iter: 200,
            convergence_iter: 15,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApResult {
    /// Exemplar index of every item.
    pub exemplar_of: Vec<usize>,
    /// Sorted distinct exemplars.
    pub exemplars: Vec<usize>,
    pub converged: bool,
    pub iterations: usize,
}

impl ApResult {
    /// Cluster id per item, numbered by exemplar order.
    pub fn labels(&self) -> Vec<usize> {
        self.exemplar_of
            .iter()
            .map(|e| self.exemplars.binary_search(e).unwrap())
            .collect()
    }
}

/// Median of the off-diagonal entries; 0 for a single item.
pub fn median_preference(sim: &[Vec<f64>]) -> f64 {
    let mut off: Vec<f64> = Vec::new();
    for (i, row) in sim.iter().enumerate() {
        off.extend(row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s));
    }
    if off.is_empty() {
        return 0.0;
    }
    off.sort_by(f64::total_cmp);
    let m = off.len();
    if m % 2 == 1 {
        off[m / 2]
    } else {
        (off[m / 2 - 1] + off[m / 2]) / 2.0
    }
}

fn assign(sim: &[Vec<f64>], exemplars: &[usize]) -> Vec<usize> {
    (0..sim.len())
        .map(|i| {
            if exemplars.contains(&i) {
                return i;
            }
            let mut best = exemplars[0];
            for &k in &exemplars[1..] {
                if sim[i][k] > sim[i][best] {
                    best = k;
                }
            }
            best
        })
        .collect()
}

/// Affinity propagation (Frey & Dueck) with uniform `preference` on the
/// diagonal. No noise is added to the similarities, so the result is a pure
/// function of the input.
///
/// When every off-diagonal similarity equals the preference the messages
/// carry no information. The items then form one cluster if they are as
/// similar to each other as to themselves (the diagonal of `sim`), else one
/// cluster each. If no exemplar emerges, each item's own `argmax(a + r)`
/// choices serve as exemplars.
pub fn affinity_propagation(sim: &[Vec<f64>], preference: f64, params: ApParams) -> ApResult {
    let n = sim.len();
    assert!(n > 0, "affinity propagation needs at least one item");
    let all_equal = sim
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &s)| i == j || s == preference));
    if all_equal {
        let indistinct = (0..n).all(|i| preference >= sim[i][i]);
        let exemplar_of: Vec<usize> = if indistinct { vec![0; n] } else { (0..n).collect() };
        let mut exemplars = exemplar_of.clone();
        exemplars.dedup();
        return ApResult {
            exemplar_of,
            exemplars,
            converged: true,
            iterations: 0,
        };
    }

    let mut s: Vec<Vec<f64>> = sim.to_vec();
    for (i, row) in s.iter_mut().enumerate() {
        row[i] = preference;
    }
    let lambda = params.damping;
    let mut r = vec![vec![0.0; n]; n];
    let mut a = vec![vec![0.0; n]; n];
    let mut history: Vec<Vec<bool>> = Vec::with_capacity(params.convergence_iter);
    let mut converged = false;
    let mut iterations = 0;

    for it in 0..params.max_iter {
        iterations = it + 1;
        for i in 0..n {
            let (mut first, mut second, mut arg) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0);
            for k in 0..n {
                let v = a[i][k] + s[i][k];
                if v > first {
                    second = first;
                    first = v;
                    arg = k;
                } else if v > second {
                    second = v;
                }
            }
            for k in 0..n {
                let competitor = if k == arg { second } else { first };
                let fresh = s[i][k] - competitor;
                r[i][k] = lambda * r[i][k] + (1.0 - lambda) * fresh;
            }
        }
        for k in 0..n {
            let support: f64 = (0..n)
                .map(|i| if i == k { r[k][k] } else { r[i][k].max(0.0) })
                .sum();
            for i in 0..n {
                let fresh = if i == k {
                    support - r[k][k]
                } else {
                    (support - r[i][k].max(0.0)).min(0.0)
                };
                a[i][k] = lambda * a[i][k] + (1.0 - lambda) * fresh;
            }
        }

        let e: Vec<bool> = (0..n).map(|k| a[k][k] + r[k][k] > 0.0).collect();
        if history.len() == params.convergence_iter {
            history.remove(0);
        }
        history.push(e);
        if history.len() == params.convergence_iter
            && history.iter().all(|h| h == &history[0])
            && history[0].iter().any(|&x| x)
        {
            converged = true;
            break;
        }
    }
    if !converged {
        log::debug!("affinity propagation did not converge in {iterations} iterations");
    }

    let mut exemplars: Vec<usize> = (0..n).filter(|&k| a[k][k] + r[k][k] > 0.0).collect();
    if exemplars.is_empty() {
        exemplars = (0..n)
            .map(|i| {
                (0..n)
                    .max_by(|&x, &y| (a[i][x] + r[i][x]).total_cmp(&(a[i][y] + r[i][y])).then(y.cmp(&x)))
                    .unwrap()
            })
            .collect();
        exemplars.sort_unstable();
        exemplars.dedup();
    }

    // Move each exemplar to the member that best represents its cluster.
    let first = assign(&s, &exemplars);
    let mut refined: Vec<usize> = exemplars
        .iter()
        .map(|&k| {
            let members: Vec<usize> = (0..n).filter(|&i| first[i] == k).collect();
            let mut best = members[0];
            let mut best_score = f64::NEG_INFINITY;
            for &j in &members {
                let score: f64 = members.iter().map(|&i| s[i][j]).sum();
                if score > best_score {
                    best = j;
                    best_score = score;
                }
            }
            best
        })
        .collect();
    refined.sort_unstable();
    refined.dedup();
    ApResult {
        exemplar_of: assign(&s, &refined),
        exemplars: refined,
        converged,
        iterations,
    }
}

/// Two cluster indices and their distance.
pub type FieldPair = (usize, usize, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemanticFields {
    /// Member lemmas per cluster, in poem order. Clusters are ordered by
    /// their first member's position in the poem.
    pub clusters: Vec<Vec<String>>,
    pub centroids: Vec<Vec<f64>>,
    pub topics: Vec<String>,
    /// Cosine distances between centroids.
    pub distances: Vec<Vec<f64>>,
    /// Content lemmas without an embedding.
    pub oov: Vec<String>,
    pub converged: bool,
}

impl SemanticFields {
    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    /// Index of the cluster holding `lemma`.
    pub fn cluster_of(&self, lemma: &str) -> Option<usize> {
        self.clusters
            .iter()
            .position(|c| c.iter().any(|w| w == lemma))
    }

    /// Closest and furthest cluster pairs `(i, j, distance)` with `i < j`.
    /// Ties keep the first pair in row-major order.
    pub fn extreme_pairs(&self) -> Option<(FieldPair, FieldPair)> {
        let mut closest: Option<FieldPair> = None;
        let mut furthest: Option<FieldPair> = None;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let d = self.distances[i][j];
                if closest.is_none_or(|c| d < c.2) {
                    closest = Some((i, j, d));
                }
                if furthest.is_none_or(|f| d > f.2) {
                    furthest = Some((i, j, d));
                }
            }
        }
        closest.zip(furthest)
    }
}

/// Clusters the poem's distinct content lemmas by embedding cosine.
pub fn cluster_poem(poem: &Poem, store: &EmbeddingStore) -> SemanticFields {
    cluster_poem_with(poem, store, ApParams::default())
}

pub fn cluster_poem_with(poem: &Poem, store: &EmbeddingStore, params: ApParams) -> SemanticFields {
    let mut seen = HashSet::new();
    let mut items: Vec<(&str, &[f64])> = Vec::new();
    let mut oov = Vec::new();
    for t in crate::corpus::content_words(poem) {
        if !seen.insert(t.lemma.as_str()) {
            continue;
        }
        match store.vector(&t.lemma) {
            Some(v) => items.push((t.lemma.as_str(), v)),
            None => oov.push(t.lemma.clone()),
        }
    }
    if items.is_empty() {
        return SemanticFields {
            clusters: Vec::new(),
            centroids: Vec::new(),
            topics: Vec::new(),
            distances: Vec::new(),
            oov,
            converged: true,
        };
    }

    let n = items.len();
    let sim: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| cosine_of(items[i].1, items[j].1)).collect())
        .collect();
    let ap = affinity_propagation(&sim, median_preference(&sim), params);

    let mut order: Vec<usize> = Vec::new();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, &e) in ap.exemplar_of.iter().enumerate() {
        match order.iter().position(|&x| x == e) {
            Some(c) => clusters[c].push(i),
            None => {
                order.push(e);
                clusters.push(vec![i]);
            }
        }
    }

    let dim = store.dim();
    let centroids: Vec<Vec<f64>> = clusters
        .iter()
        .map(|members| {
            let mut c = vec![0.0; dim];
            for &m in members {
                for (x, v) in c.iter_mut().zip(items[m].1) {
                    *x += v;
                }
            }
            c.iter_mut().for_each(|x| *x /= members.len() as f64);
            c
        })
        .collect();
    let topics = centroids
        .iter()
        .map(|c| store.nearest(c, 1, None).remove(0).0)
        .collect();
    let k = centroids.len();
    let mut distances = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let d = 1.0 - cosine_of(&centroids[i], &centroids[j]);
            distances[i][j] = d;
            distances[j][i] = d;
        }
    }
    SemanticFields {
        clusters: clusters
            .iter()
            .map(|m| m.iter().map(|&i| items[i].0.to_string()).collect())
            .collect(),
        centroids,
        topics,
        distances,
        oov,
        converged: ap.converged,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SemanticAesthetics {
    pub n_clusters: usize,
    pub avg_distance: f64,
    pub max_distance: f64,
}

/// Cluster count and the mean and maximum distance over cluster pairs.
/// Empty fields give all zeros.
pub fn semantic_aesthetics(fields: &SemanticFields) -> SemanticAesthetics {
    let k = fields.len();
    let mut sum = 0.0;
    let mut max = 0.0f64;
    let mut pairs = 0usize;
    for i in 0..k {
        for j in i + 1..k {
            sum += fields.distances[i][j];
            max = max.max(fields.distances[i][j]);
            pairs += 1;
        }
    }
    SemanticAesthetics {
        n_clusters: k,
        avg_distance: if pairs == 0 { 0.0 } else { sum / pairs as f64 },
        max_distance: max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Token, Verse};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn neg_sq_dist(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
        points
            .iter()
            .map(|p| {
                points
                    .iter()
                    .map(|q| -p.iter().zip(q).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
                    .collect()
            })
            .collect()
    }

    /// Exhaustive search over exemplar subsets for the assignment with the
    /// greatest net similarity, the quantity affinity propagation maximizes.
    fn brute_force_exemplars(sim: &[Vec<f64>], pref: f64) -> Vec<usize> {
        let n = sim.len();
        let mut best = (f64::NEG_INFINITY, Vec::new());
        for mask in 1u32..(1 << n) {
            let ex: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let mut total = pref * ex.len() as f64;
            for i in 0..n {
                if !ex.contains(&i) {
                    total += ex.iter().map(|&k| sim[i][k]).fold(f64::NEG_INFINITY, f64::max);
                }
            }
            if total > best.0 {
                best = (total, ex);
            }
        }
        best.1
    }

    fn blobs(rng: &mut ChaCha8Rng, centers: &[(f64, f64)], per: usize, spread: f64) -> Vec<Vec<f64>> {
        let mut pts = Vec::new();
        for &(cx, cy) in centers {
            for _ in 0..per {
                pts.push(vec![
                    cx + rng.gen_range(-spread..spread),
                    cy + rng.gen_range(-spread..spread),
                ]);
            }
        }
        pts
    }

    #[test]
    fn single_item_is_one_cluster() {
        let r = affinity_propagation(&[vec![1.0]], 0.0, ApParams::default());
        assert_eq!(r.exemplar_of, vec![0]);
    }

    #[test]
    fn identical_items_are_one_cluster() {
        let sim = vec![vec![1.0; 4]; 4];
        let r = affinity_propagation(&sim, median_preference(&sim), ApParams::default());
        assert_eq!(r.exemplars.len(), 1);
    }

    /// Affinity propagation is a heuristic, so the exhaustive optimum is only
    /// an oracle when the preference sits well between within-group and
    /// between-group similarities and no group is a symmetric pair. With
    /// damping 0.9 a 15-iteration window can stop before the messages settle,
    /// so this test waits for 50 stable iterations.
    #[test]
    fn matches_brute_force_on_small_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let layouts: [&[(f64, f64, usize)]; 5] = [
            &[(0.0, 0.0, 8)],
            &[(0.0, 0.0, 4), (10.0, 0.0, 4)],
            &[(0.0, 0.0, 3), (10.0, 0.0, 3), (0.0, 10.0, 3)],
            &[(0.0, 0.0, 3), (10.0, 0.0, 5)],
            &[(0.0, 0.0, 5), (10.0, 10.0, 3)],
        ];
        for trial in 0..20 {
            let layout = layouts[trial % layouts.len()];
            let mut pts = Vec::new();
            for &(cx, cy, size) in layout {
                pts.extend(blobs(&mut rng, &[(cx, cy)], size, 0.5));
            }
            let sim = neg_sq_dist(&pts);
            let params = ApParams { convergence_iter: 50, max_iter: 1000, ..ApParams::default() };
            let r = affinity_propagation(&sim, -25.0, params);
            let expected = brute_force_exemplars(&sim, -25.0);
            assert_eq!(expected.len(), layout.len());
            assert_eq!(r.exemplars, expected, "trial {trial}");
        }
    }

    #[test]
    fn two_blobs_give_two_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = blobs(&mut rng, &[(0.0, 0.0), (20.0, 20.0)], 10, 1.0);
        let sim = neg_sq_dist(&pts);
        let r = affinity_propagation(&sim, median_preference(&sim), ApParams::default());
        let labels = r.labels();
        assert_eq!(r.exemplars.len(), 2);
        assert!(labels[..10].iter().all(|&l| l == labels[0]));
        assert!(labels[10..].iter().all(|&l| l == labels[10]));
        assert!(r.converged);
    }

    #[test]
    fn permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts = blobs(&mut rng, &[(0.0, 0.0), (6.0, 0.0), (0.0, 6.0)], 5, 1.5);
        let sim = neg_sq_dist(&pts);
        let base = affinity_propagation(&sim, median_preference(&sim), ApParams::default());
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..pts.len()).collect();
            perm.shuffle(&mut rng);
            let shuffled: Vec<Vec<f64>> = perm.iter().map(|&i| pts[i].clone()).collect();
            let s2 = neg_sq_dist(&shuffled);
            let r = affinity_propagation(&s2, median_preference(&s2), ApParams::default());
            // map back to original indices and compare exemplar partitions
            let ex: Vec<usize> = r.exemplar_of.iter().map(|&e| perm[e]).collect();
            for (pos, &orig) in perm.iter().enumerate() {
                assert_eq!(ex[pos], base.exemplar_of[orig]);
            }
        }
    }

    fn store(words: &[(&str, Vec<f64>)]) -> EmbeddingStore {
        EmbeddingStore::from_pairs(words.iter().map(|(w, v)| (w.to_string(), v.clone()))).unwrap()
    }

    fn poem(lemmas: &[&str]) -> Poem {
        Poem::new(
            "p",
            vec![Verse::new(lemmas.iter().map(|l| Token::new(l, l, "NOUN")).collect())],
        )
    }

    #[test]
    fn one_lemma_poem() {
        let s = store(&[("kuu", vec![1.0, 0.2]), ("meri", vec![0.0, 1.0])]);
        let f = cluster_poem(&poem(&["kuu", "kuu"]), &s);
        assert_eq!(f.clusters, vec![vec!["kuu".to_string()]]);
        assert_eq!(f.topics, vec!["kuu"]);
        assert_eq!(semantic_aesthetics(&f), SemanticAesthetics { n_clusters: 1, avg_distance: 0.0, max_distance: 0.0 });
    }

    #[test]
    fn orthogonal_pair_is_two_clusters_at_distance_one() {
        let s = store(&[("kuu", vec![1.0, 0.0]), ("meri", vec![0.0, 1.0])]);
        let f = cluster_poem(&poem(&["kuu", "meri", "zzz"]), &s);
        assert_eq!(f.len(), 2);
        assert!((f.distances[0][1] - 1.0).abs() < 1e-12);
        assert_eq!(f.oov, vec!["zzz"]);
        let a = semantic_aesthetics(&f);
        assert_eq!(a.n_clusters, 2);
        assert!((a.avg_distance - 1.0).abs() < 1e-12);
    }

    #[test]
    fn poem_fixture_matches_brute_force_and_hand_distances() {
        let s = store(&[
            ("meri", vec![1.0, 0.05, 0.0]),
            ("aalto", vec![0.95, 0.1, 0.0]),
            ("ranta", vec![0.9, 0.0, 0.1]),
            ("metsä", vec![0.0, 1.0, 0.05]),
            ("puu", vec![0.1, 0.9, 0.0]),
            ("yö", vec![0.0, 0.05, 1.0]),
            ("kuu", vec![0.05, 0.0, 0.95]),
        ]);
        let lemmas = ["meri", "metsä", "yö", "aalto", "puu", "kuu", "ranta"];
        let f = cluster_poem(&poem(&lemmas), &s);

        let vecs: Vec<Vec<f64>> = lemmas.iter().map(|l| s.vector(l).unwrap().to_vec()).collect();
        let sim: Vec<Vec<f64>> = vecs.iter().map(|a| vecs.iter().map(|b| cosine_of(a, b)).collect()).collect();
        let ex = brute_force_exemplars(&sim, median_preference(&sim));
        assert_eq!(f.len(), ex.len());
        assert_eq!(f.clusters[0], vec!["meri", "aalto", "ranta"]);
        assert_eq!(f.clusters[1], vec!["metsä", "puu"]);
        assert_eq!(f.clusters[2], vec!["yö", "kuu"]);

        let mean = |ws: &[&str]| -> Vec<f64> {
            (0..3).map(|d| ws.iter().map(|w| s.vector(w).unwrap()[d]).sum::<f64>() / ws.len() as f64).collect()
        };
        let c = [mean(&["meri", "aalto", "ranta"]), mean(&["metsä", "puu"]), mean(&["yö", "kuu"])];
        let dist = |a: &[f64], b: &[f64]| {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let n = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
            1.0 - dot / (n(a) * n(b))
        };
        let d = [dist(&c[0], &c[1]), dist(&c[0], &c[2]), dist(&c[1], &c[2])];
        let a = semantic_aesthetics(&f);
        assert!((a.avg_distance - (d[0] + d[1] + d[2]) / 3.0).abs() < 1e-12);
        assert!((a.max_distance - d.iter().cloned().fold(0.0, f64::max)).abs() < 1e-12);
        assert!(a.avg_distance <= a.max_distance);
    }

    #[test]
    fn scaling_vectors_keeps_clusters() {
        let base = [
            ("meri", vec![1.0, 0.05]),
            ("aalto", vec![0.95, 0.1]),
            ("metsä", vec![0.0, 1.0]),
            ("puu", vec![0.1, 0.9]),
        ];
        let doubled: Vec<(&str, Vec<f64>)> = base.iter().map(|(w, v)| (*w, v.iter().map(|x| 2.0 * x).collect())).collect();
        let p = poem(&["meri", "metsä", "aalto", "puu"]);
        assert_eq!(cluster_poem(&p, &store(&base)).clusters, cluster_poem(&p, &store(&doubled)).clusters);
    }
}
