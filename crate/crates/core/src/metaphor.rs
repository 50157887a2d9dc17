//! Metaphoricity of a poem's words with respect to tenor–vehicle pairs of
//! cluster topics.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::{content_words, Poem};
use crate::lexres::RelatednessModel;
use crate::semfields::SemanticFields;

/// Mean of "relates to both" and "relates to the vehicle more than the
/// tenor", or 0 unless both are positive.
pub fn metaphoricity(word: &str, tenor: &str, vehicle: &str, model: &RelatednessModel) -> f64 {
    let rt = model.relatedness(word, tenor);
    let rv = model.relatedness(word, vehicle);
    score_from(rt, rv)
}

pub(crate) fn score_from(rel_tenor: f64, rel_vehicle: f64) -> f64 {
    let m1 = rel_tenor.min(rel_vehicle);
    let m2 = (rel_vehicle - rel_tenor).max(0.0);
    if m1 > 0.0 && m2 > 0.0 {
        (m1 + m2) / 2.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interpretation {
    pub word: String,
    pub tenor: String,
    pub vehicle: String,
    pub score: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MetaphorAesthetics {
    pub max_metaphoricity: f64,
    /// Ordered topic pairs with a positive score.
    pub n_metaphorical: usize,
    /// Best word for each positive pair, in pair order.
    pub interpretations: Vec<Interpretation>,
    pub pairs_inspected: usize,
}

impl MetaphorAesthetics {
    /// Distinct words carrying some interpretation, in first-seen order.
    pub fn metaphorical_words(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        self.interpretations
            .iter()
            .map(|i| i.word.as_str())
            .filter(|w| seen.insert(*w))
            .collect()
    }
}

/// Scores every ordered (tenor, vehicle) pair of cluster topics by its most
/// metaphorical content lemma outside both clusters. Equal scores keep the
/// word that comes first in the poem.
pub fn metaphor_aesthetics(poem: &Poem, fields: &SemanticFields, model: &RelatednessModel) -> MetaphorAesthetics {
    let mut seen = HashSet::new();
    let lemmas: Vec<&str> = content_words(poem)
        .into_iter()
        .map(|t| t.lemma.as_str())
        .filter(|l| seen.insert(*l))
        .collect();
    let membership: Vec<Option<usize>> = lemmas.iter().map(|l| fields.cluster_of(l)).collect();

    let mut out = MetaphorAesthetics::default();
    let k = fields.len();
    for t in 0..k {
        for v in 0..k {
            if t == v {
                continue;
            }
            out.pairs_inspected += 1;
            let (tenor, vehicle) = (&fields.topics[t], &fields.topics[v]);
            let mut best: Option<(&str, f64)> = None;
            for (w, m) in lemmas.iter().zip(&membership) {
                if *m == Some(t) || *m == Some(v) {
                    continue;
                }
                let s = metaphoricity(w, tenor, vehicle, model);
                if s > 0.0 && best.is_none_or(|b| s > b.1) {
                    best = Some((w, s));
                }
            }
            if let Some((w, s)) = best {
                out.n_metaphorical += 1;
                out.max_metaphoricity = out.max_metaphoricity.max(s);
                out.interpretations.push(Interpretation {
                    word: w.to_string(),
                    tenor: tenor.clone(),
                    vehicle: vehicle.clone(),
                    score: s,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Token, Verse};
    use proptest::prelude::*;

    #[test]
    fn hand_arithmetic() {
        assert_eq!(score_from(0.0, 0.0), 0.0);
        assert!((score_from(0.2, 0.6) - 0.3).abs() < 1e-12);
        assert_eq!(score_from(0.6, 0.2), 0.0);
        assert_eq!(score_from(0.0, 0.7), 0.0);
    }

    fn fields(clusters: &[&[&str]], topics: &[&str]) -> SemanticFields {
        let k = clusters.len();
        SemanticFields {
            clusters: clusters.iter().map(|c| c.iter().map(|w| w.to_string()).collect()).collect(),
            centroids: vec![vec![0.0]; k],
            topics: topics.iter().map(|t| t.to_string()).collect(),
            distances: vec![vec![0.0; k]; k],
            oov: Vec::new(),
            converged: true,
        }
    }

    fn poem(lemmas: &[&str]) -> Poem {
        Poem::new("p", vec![Verse::new(lemmas.iter().map(|l| Token::new(l, l, "NOUN")).collect())])
    }

    #[test]
    fn single_cluster_has_no_pairs() {
        let m = RelatednessModel::default();
        let out = metaphor_aesthetics(&poem(&["kuu"]), &fields(&[&["kuu"]], &["kuu"]), &m);
        assert_eq!(out, MetaphorAesthetics::default());
    }

    #[test]
    fn unrelated_model_gives_nothing() {
        let m = RelatednessModel::default();
        let f = fields(&[&["meri"], &["yö"]], &["meri", "yö"]);
        let out = metaphor_aesthetics(&poem(&["meri", "yö", "hopea"]), &f, &m);
        assert_eq!(out.n_metaphorical, 0);
        assert_eq!(out.max_metaphoricity, 0.0);
        assert!(out.interpretations.is_empty());
        assert_eq!(out.pairs_inspected, 2);
    }

    #[test]
    fn vehicle_biased_word() {
        let m = RelatednessModel::from_scores([("hopea", "meri", 0.2), ("hopea", "yö", 0.6)]).unwrap();
        let f = fields(&[&["meri"], &["yö"]], &["meri", "yö"]);
        let out = metaphor_aesthetics(&poem(&["meri", "yö", "hopea"]), &f, &m);
        // meri→yö is positive, yö→meri has the vehicle bias reversed
        assert_eq!(out.n_metaphorical, 1);
        assert!((out.max_metaphoricity - 0.3).abs() < 1e-12);
        assert_eq!(out.interpretations[0].word, "hopea");
        assert_eq!(out.interpretations[0].tenor, "meri");
        assert_eq!(out.metaphorical_words(), vec!["hopea"]);
    }

    #[test]
    fn inspects_k_times_k_minus_one_pairs() {
        let m = RelatednessModel::default();
        let f = fields(&[&["a"], &["b"], &["c"], &["d"]], &["a", "b", "c", "d"]);
        assert_eq!(metaphor_aesthetics(&poem(&["a"]), &f, &m).pairs_inspected, 12);
    }

    proptest! {
        #[test]
        fn nonnegative_and_vehicle_biased(rt in 0.0f64..1.0, rv in 0.0f64..1.0) {
            let s = score_from(rt, rv);
            prop_assert!(s >= 0.0);
            if rv <= rt {
                prop_assert_eq!(s, 0.0);
            }
        }
    }
}
