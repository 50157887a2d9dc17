//! Aesthetic functions, their grouping into four fitness functions, per-era
//! profiles (learned weights and accepted ranges) and the master's liking.

mod forest;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::corpus::{content_positions, Era, Poem, TokenPos};
use crate::error::{Error, Result};
use crate::lexres::{Concreteness, Resources};
use crate::metaphor::{metaphor_aesthetics, MetaphorAesthetics};
use crate::semfields::{cluster_poem, semantic_aesthetics, SemanticAesthetics, SemanticFields};
use crate::sonic::{self, SonicReport};

pub use forest::{feature_importances, ForestParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Sonic,
    Semantic,
    Imagerial,
    Metaphorical,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::Sonic, Group::Semantic, Group::Imagerial, Group::Metaphorical];

    pub fn name(self) -> &'static str {
        match self {
            Group::Sonic => "sonic",
            Group::Semantic => "semantic",
            Group::Imagerial => "imagerial",
            Group::Metaphorical => "metaphorical",
        }
    }

    pub fn members(self) -> impl Iterator<Item = Aesthetic> {
        Aesthetic::ALL.into_iter().filter(move |a| a.group() == self)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

macro_rules! aesthetics {
    ($($variant:ident => $name:literal, $group:ident;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Aesthetic {
            $($variant),*
        }

        impl Aesthetic {
            pub const ALL: [Aesthetic; aesthetics!(@count $($variant)*)] = [$(Aesthetic::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Aesthetic::$variant => $name),*
                }
            }

            pub fn group(self) -> Group {
                match self {
                    $(Aesthetic::$variant => Group::$group),*
                }
            }

            pub fn from_name(name: &str) -> Option<Aesthetic> {
                match name {
                    $($name => Some(Aesthetic::$variant),)*
                    _ => None,
                }
            }
        }
    };
    (@count $($x:ident)*) => { 0 $(+ aesthetics!(@one $x))* };
    (@one $x:ident) => { 1 };
}

aesthetics! {
    FullRhyme => "full_rhyme", Sonic;
    Assonance => "assonance", Sonic;
    Consonance => "consonance", Sonic;
    Alliteration => "alliteration", Sonic;
    SyllableCountMean => "syllable_count_mean", Sonic;
    SyllableCountStdev => "syllable_count_stdev", Sonic;
    LongRatio => "long_ratio", Sonic;
    NClusters => "n_clusters", Semantic;
    AvgClusterDistance => "avg_cluster_distance", Semantic;
    MaxClusterDistance => "max_cluster_distance", Semantic;
    ConcreteRatio => "concrete_ratio", Imagerial;
    SentimentVariance => "sentiment_variance", Imagerial;
    MaxMetaphoricity => "max_metaphoricity", Metaphorical;
    NMetaphorical => "n_metaphorical", Metaphorical;
}

pub const N_AESTHETICS: usize = Aesthetic::ALL.len();

impl Aesthetic {
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Aesthetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One value per aesthetic. Serializes as a map in registry order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AestheticReport {
    values: [f64; N_AESTHETICS],
}

impl AestheticReport {
    pub fn from_fn(mut f: impl FnMut(Aesthetic) -> f64) -> Self {
        let mut values = [0.0; N_AESTHETICS];
        for a in Aesthetic::ALL {
            values[a.index()] = f(a);
        }
        AestheticReport { values }
    }

    pub fn get(&self, a: Aesthetic) -> f64 {
        self.values[a.index()]
    }

    pub fn set(&mut self, a: Aesthetic, v: f64) {
        self.values[a.index()] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (Aesthetic, f64)> + '_ {
        Aesthetic::ALL.into_iter().map(|a| (a, self.get(a)))
    }

    /// Values of one group's members, in registry order.
    pub fn group_values(&self, g: Group) -> Vec<f64> {
        g.members().map(|a| self.get(a)).collect()
    }
}

impl Serialize for AestheticReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(N_AESTHETICS))?;
        for (a, v) in self.iter() {
            map.serialize_entry(a.name(), &v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for AestheticReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, f64>::deserialize(d)?;
        let mut report = AestheticReport::default();
        for a in Aesthetic::ALL {
            let v = raw
                .get(a.name())
                .ok_or_else(|| D::Error::custom(format!("missing aesthetic {:?}", a.name())))?;
            report.set(a, *v);
        }
        if let Some(k) = raw.keys().find(|k| Aesthetic::from_name(k).is_none()) {
            return Err(D::Error::custom(format!("unknown aesthetic {k:?}")));
        }
        Ok(report)
    }
}

/// Every intermediate analysis of one poem alongside its report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoemAnalysis {
    pub report: AestheticReport,
    pub sonic: SonicReport,
    pub fields: SemanticFields,
    pub semantic: SemanticAesthetics,
    pub metaphor: MetaphorAesthetics,
    pub verse_sentiment: Vec<f64>,
    /// Content tokens with a concrete lexicon entry.
    pub concrete: Vec<TokenPos>,
}

fn population_variance(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n
}

/// Runs every aesthetic function on the poem.
pub fn analyze(poem: &Poem, res: &Resources) -> PoemAnalysis {
    let sonic = sonic::analyze(poem);
    let fields = cluster_poem(poem, &res.embeddings);
    let semantic = semantic_aesthetics(&fields);
    let metaphor = metaphor_aesthetics(poem, &fields, &res.relatedness);

    let mut concrete = Vec::new();
    let mut judged = 0usize;
    for p in content_positions(poem) {
        let lemma = &poem.token(p).expect("content position").lemma;
        match res.concreteness.is_concrete(lemma) {
            Concreteness::Concrete => {
                concrete.push(p);
                judged += 1;
            }
            Concreteness::Abstract => judged += 1,
            Concreteness::Unknown => {}
        }
    }
    let concrete_ratio = if judged == 0 {
        0.0
    } else {
        concrete.len() as f64 / judged as f64
    };
    let verse_sentiment: Vec<f64> = poem.verses.iter().map(|v| res.sentiment.score_verse(v)).collect();

    let report = AestheticReport::from_fn(|a| match a {
        Aesthetic::FullRhyme => sonic.counts.full_rhyme as f64,
        Aesthetic::Assonance => sonic.counts.assonance as f64,
        Aesthetic::Consonance => sonic.counts.consonance as f64,
        Aesthetic::Alliteration => sonic.alliteration_count as f64,
        Aesthetic::SyllableCountMean => sonic.meter.count_mean,
        Aesthetic::SyllableCountStdev => sonic.meter.count_stdev,
        Aesthetic::LongRatio => sonic.meter.long_ratio,
        Aesthetic::NClusters => semantic.n_clusters as f64,
        Aesthetic::AvgClusterDistance => semantic.avg_distance,
        Aesthetic::MaxClusterDistance => semantic.max_distance,
        Aesthetic::ConcreteRatio => concrete_ratio,
        Aesthetic::SentimentVariance => population_variance(&verse_sentiment),
        Aesthetic::MaxMetaphoricity => metaphor.max_metaphoricity,
        Aesthetic::NMetaphorical => metaphor.n_metaphorical as f64,
    });
    PoemAnalysis {
        report,
        sonic,
        fields,
        semantic,
        metaphor,
        verse_sentiment,
        concrete,
    }
}

pub fn evaluate(poem: &Poem, res: &Resources) -> AestheticReport {
    analyze(poem, res).report
}

/// `weight · value` inside the inclusive range `[lo, hi]`, else 0.
pub fn gate(value: f64, lo: f64, hi: f64, weight: f64) -> f64 {
    if lo <= value && value <= hi {
        weight * value
    } else {
        0.0
    }
}

/// Learned weight and accepted range of one aesthetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateParams {
    pub weight: f64,
    pub lo: f64,
    pub hi: f64,
}

impl GateParams {
    pub const IDENTITY: GateParams = GateParams {
        weight: 1.0,
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn apply(&self, value: f64) -> f64 {
        gate(value, self.lo, self.hi, self.weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FitnessVector {
    pub sonic: f64,
    pub semantic: f64,
    pub imagerial: f64,
    pub metaphorical: f64,
}

impl FitnessVector {
    pub fn get(&self, g: Group) -> f64 {
        match g {
            Group::Sonic => self.sonic,
            Group::Semantic => self.semantic,
            Group::Imagerial => self.imagerial,
            Group::Metaphorical => self.metaphorical,
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.sonic, self.semantic, self.imagerial, self.metaphorical]
    }

    pub fn sum(&self) -> f64 {
        self.as_array().iter().sum()
    }

    /// The master likes a poem when every fitness function is positive.
    pub fn liked(&self) -> bool {
        self.as_array().iter().all(|&v| v > 0.0)
    }
}

/// Per-era weights and accepted ranges. Serializes to JSON with the era,
/// forest seed, the group map and one `{weight, lo, hi}` entry per aesthetic
/// in registry order; an unbounded `lo` or `hi` is written as `null`.
#[derive(Debug, Clone, PartialEq)]
pub struct AestheticProfile {
    pub era: Option<Era>,
    pub forest_seed: u64,
    pub gates: [GateParams; N_AESTHETICS],
}

impl AestheticProfile {
    /// Weight 1 and an unbounded range everywhere: fitness is the plain sum
    /// of each group's raw values.
    pub fn identity() -> Self {
        AestheticProfile {
            era: None,
            forest_seed: 0,
            gates: [GateParams::IDENTITY; N_AESTHETICS],
        }
    }

    pub fn gate(&self, a: Aesthetic) -> &GateParams {
        &self.gates[a.index()]
    }

    pub fn fitness(&self, report: &AestheticReport) -> FitnessVector {
        fitness(report, self)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

#[derive(Serialize, Deserialize)]
struct GateFile {
    weight: f64,
    lo: Option<f64>,
    hi: Option<f64>,
}

struct Ordered<'a, K, V>(&'a [(K, V)]);

impl<K: Serialize, V: Serialize> Serialize for Ordered<'_, K, V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for AestheticProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let finite = |x: f64| x.is_finite().then_some(x);
        let groups: Vec<(&str, Vec<&str>)> = Group::ALL
            .iter()
            .map(|g| (g.name(), g.members().map(Aesthetic::name).collect()))
            .collect();
        let gates: Vec<(&str, GateFile)> = Aesthetic::ALL
            .iter()
            .map(|&a| {
                let g = self.gate(a);
                (a.name(), GateFile { weight: g.weight, lo: finite(g.lo), hi: finite(g.hi) })
            })
            .collect();
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("era", &self.era)?;
        map.serialize_entry("forest_seed", &self.forest_seed)?;
        map.serialize_entry("groups", &Ordered(&groups))?;
        map.serialize_entry("aesthetics", &Ordered(&gates))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for AestheticProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct ProfileFile {
            era: Option<Era>,
            forest_seed: u64,
            groups: BTreeMap<String, Vec<String>>,
            aesthetics: BTreeMap<String, GateFile>,
        }
        let file = ProfileFile::deserialize(d)?;
        for g in Group::ALL {
            let expected: Vec<&str> = g.members().map(Aesthetic::name).collect();
            match file.groups.get(g.name()) {
                Some(listed) if listed.iter().map(String::as_str).eq(expected.iter().copied()) => {}
                _ => return Err(D::Error::custom(format!("group {:?} must list {expected:?}", g.name()))),
            }
        }
        if file.groups.len() != Group::ALL.len() {
            return Err(D::Error::custom("unexpected group in profile"));
        }
        let mut gates = [GateParams::IDENTITY; N_AESTHETICS];
        for a in Aesthetic::ALL {
            let g = file
                .aesthetics
                .get(a.name())
                .ok_or_else(|| D::Error::custom(format!("missing aesthetic {:?}", a.name())))?;
            let lo = g.lo.unwrap_or(f64::NEG_INFINITY);
            let hi = g.hi.unwrap_or(f64::INFINITY);
            if g.weight.is_nan() || g.weight < 0.0 || lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(D::Error::custom(format!("invalid gate for {:?}", a.name())));
            }
            gates[a.index()] = GateParams { weight: g.weight, lo, hi };
        }
        if let Some(k) = file.aesthetics.keys().find(|k| Aesthetic::from_name(k).is_none()) {
            return Err(D::Error::custom(format!("unknown aesthetic {k:?}")));
        }
        Ok(AestheticProfile {
            era: file.era,
            forest_seed: file.forest_seed,
            gates,
        })
    }
}

/// Sums the gated, weighted aesthetics of each group.
pub fn fitness(report: &AestheticReport, profile: &AestheticProfile) -> FitnessVector {
    let group_sum = |g: Group| g.members().map(|a| profile.gate(a).apply(report.get(a))).sum();
    FitnessVector {
        sonic: group_sum(Group::Sonic),
        semantic: group_sum(Group::Semantic),
        imagerial: group_sum(Group::Imagerial),
        metaphorical: group_sum(Group::Metaphorical),
    }
}

pub fn likes(poem: &Poem, profile: &AestheticProfile, res: &Resources) -> bool {
    fitness(&evaluate(poem, res), profile).liked()
}

/// Percentile with linear interpolation between order statistics
/// (`q` in `[0, 1]`, position `q·(n−1)`).
pub fn percentile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty(), "percentile of no values");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Learns a profile from reports labelled target era (`true`) or not.
/// Each group gets its own forest over its members; weights are the
/// forest's importances, ranges the target-era [P25, P75].
pub fn learn_profile(
    samples: &[(AestheticReport, bool)],
    era: Option<Era>,
    seed: u64,
    params: ForestParams,
) -> Result<AestheticProfile> {
    let n_target = samples.iter().filter(|s| s.1).count();
    let n_other = samples.len() - n_target;
    if n_target < 2 || n_other < 2 {
        return Err(Error::invalid(format!(
            "profile learning needs at least 2 target-era and 2 other-era poems, got {n_target} and {n_other}"
        )));
    }
    let y: Vec<bool> = samples.iter().map(|s| s.1).collect();
    let mut gates = [GateParams::IDENTITY; N_AESTHETICS];
    for (gi, g) in Group::ALL.into_iter().enumerate() {
        let x: Vec<Vec<f64>> = samples.iter().map(|s| s.0.group_values(g)).collect();
        let importances = feature_importances(&x, &y, params, seed.wrapping_add(gi as u64));
        if importances.iter().all(|&w| w == 0.0) {
            log::warn!("no aesthetic in the {g} group separates the eras; its weights are all 0");
        }
        for (a, w) in g.members().zip(importances) {
            let target: Vec<f64> = samples.iter().filter(|s| s.1).map(|s| s.0.get(a)).collect();
            gates[a.index()] = GateParams {
                weight: w,
                lo: percentile(&target, 0.25),
                hi: percentile(&target, 0.75),
            };
        }
    }
    Ok(AestheticProfile {
        era,
        forest_seed: seed,
        gates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Token, Verse};
    use crate::lexres::{fixtures, ConcretenessLexicon, PolarityLexicon, RelatednessModel};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn registry_is_grouped() {
        assert_eq!(N_AESTHETICS, 14);
        let sizes: Vec<usize> = Group::ALL.iter().map(|g| g.members().count()).collect();
        assert_eq!(sizes, vec![7, 3, 2, 2]);
        for a in Aesthetic::ALL {
            assert_eq!(Aesthetic::from_name(a.name()), Some(a));
        }
    }

    #[test]
    fn gate_examples() {
        assert_eq!(gate(1.0, 1.0, 2.0, 0.5), 0.5);
        assert_eq!(gate(2.0 + 1e-12, 1.0, 2.0, 0.5), 0.0);
        assert_eq!(gate(1.5, 1.0, 2.0, 0.0), 0.0);
    }

    #[test]
    fn percentile_hand_values() {
        let v: Vec<f64> = (1..=8).map(f64::from).collect();
        assert!((percentile(&v, 0.25) - 2.75).abs() < 1e-12);
        assert!((percentile(&v, 0.75) - 6.25).abs() < 1e-12);
        assert_eq!(percentile(&[4.0], 0.25), 4.0);
    }

    fn report(values: [f64; N_AESTHETICS]) -> AestheticReport {
        AestheticReport { values }
    }

    #[test]
    fn fitness_examples() {
        let r = report([1., 2., 3., 4., 5., 6., 0.5, 2., 0.4, 0.8, 0.25, 0.1, 0.3, 2.]);
        let id = fitness(&r, &AestheticProfile::identity());
        assert_eq!(id.sonic, 21.5);
        assert!((id.semantic - 3.2).abs() < 1e-12);
        assert!((id.imagerial - 0.35).abs() < 1e-12);
        assert!((id.metaphorical - 2.3).abs() < 1e-12);

        let mut p = AestheticProfile::identity();
        for g in p.gates.iter_mut() {
            *g = GateParams { weight: 1.0, lo: 100.0, hi: 200.0 };
        }
        assert_eq!(fitness(&r, &p), FitnessVector::default());

        // hand-summed: full_rhyme 0.5·1, assonance out of range, alliteration 0.25·4
        let mut p = AestheticProfile::identity();
        p.gates = [GateParams { weight: 0.0, lo: 0.0, hi: 0.0 }; N_AESTHETICS];
        p.gates[Aesthetic::FullRhyme.index()] = GateParams { weight: 0.5, lo: 0.0, hi: 1.0 };
        p.gates[Aesthetic::Assonance.index()] = GateParams { weight: 0.5, lo: 0.0, hi: 1.0 };
        p.gates[Aesthetic::Alliteration.index()] = GateParams { weight: 0.25, lo: 4.0, hi: 9.0 };
        p.gates[Aesthetic::ConcreteRatio.index()] = GateParams { weight: 2.0, lo: 0.2, hi: 0.3 };
        let f = fitness(&r, &p);
        assert_eq!(f, FitnessVector { sonic: 1.5, semantic: 0.0, imagerial: 0.5, metaphorical: 0.0 });
    }

    #[test]
    fn liking_examples() {
        let v = |s, m, i, t| FitnessVector { sonic: s, semantic: m, imagerial: i, metaphorical: t };
        assert!(v(0.1, 0.2, 0.3, 0.4).liked());
        assert!(!v(0.1, 0.0, 0.3, 0.4).liked());
    }

    #[test]
    fn profile_json_round_trip() {
        let mut p = AestheticProfile::identity();
        p.era = Some(Era(1900));
        p.forest_seed = 42;
        p.gates[3] = GateParams { weight: 0.25, lo: 1.0, hi: 2.5 };
        let json = p.to_json().unwrap();
        assert!(json.find("\"full_rhyme\"").unwrap() < json.find("\"n_metaphorical\"").unwrap());
        assert_eq!(AestheticProfile::from_json(&json).unwrap(), p);
        assert!(AestheticProfile::from_json(&json.replace("\"lo\": 1.0", "\"lo\": 3.0")).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let r = AestheticReport::from_fn(|a| a.index() as f64 / 3.0);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<AestheticReport>(&json).unwrap(), r);
    }

    fn labelled(rng: &mut ChaCha8Rng, n: usize) -> Vec<(AestheticReport, bool)> {
        // in every group the first member separates the eras, the rest is noise
        let separators: Vec<Aesthetic> = Group::ALL.iter().map(|g| g.members().next().unwrap()).collect();
        (0..n)
            .map(|i| {
                let target = i % 2 == 0;
                let r = AestheticReport::from_fn(|a| {
                    if separators.contains(&a) {
                        (if target { 2.0 } else { 0.0 }) + rng.gen::<f64>()
                    } else {
                        rng.gen::<f64>() * 3.0
                    }
                });
                (r, target)
            })
            .collect()
    }

    #[test]
    fn separating_aesthetic_gets_largest_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples = labelled(&mut rng, 40);
        let p = learn_profile(&samples, Some(Era(1800)), 1, ForestParams::default()).unwrap();
        for g in Group::ALL {
            let members: Vec<Aesthetic> = g.members().collect();
            let sep = p.gate(members[0]).weight;
            assert!(members[1..].iter().all(|&a| p.gate(a).weight < sep), "{g}");
            let total: f64 = members.iter().map(|&a| p.gate(a).weight).sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_aesthetic_gets_no_weight_and_learning_is_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut samples = labelled(&mut rng, 30);
        for s in &mut samples {
            s.0.set(Aesthetic::LongRatio, 0.5);
        }
        let p = learn_profile(&samples, None, 3, ForestParams::default()).unwrap();
        assert_eq!(p.gate(Aesthetic::LongRatio).weight, 0.0);
        assert_eq!(p, learn_profile(&samples, None, 3, ForestParams::default()).unwrap());
    }

    #[test]
    fn single_label_is_an_error() {
        let samples = vec![(AestheticReport::default(), true); 5];
        assert!(learn_profile(&samples, None, 0, ForestParams::default()).is_err());
    }

    #[test]
    fn ranges_are_target_era_quartiles() {
        let mut samples = Vec::new();
        for i in 1..=8 {
            samples.push((AestheticReport::from_fn(|_| i as f64), true));
            samples.push((AestheticReport::from_fn(|_| 100.0 + i as f64), false));
        }
        let p = learn_profile(&samples, None, 0, ForestParams { n_trees: 5, ..Default::default() }).unwrap();
        for a in Aesthetic::ALL {
            assert!((p.gate(a).lo - 2.75).abs() < 1e-9);
            assert!((p.gate(a).hi - 6.25).abs() < 1e-9);
        }
    }

    fn tok(surface: &str, lemma: &str, pos: &str) -> Token {
        Token::new(surface, lemma, pos)
    }

    #[test]
    fn evaluate_composes_module_outputs() {
        let mut res = fixtures::resources(&[
            ("meri", "NOUN", vec![1.0, 0.0]),
            ("aalto", "NOUN", vec![0.9, 0.1]),
            ("yö", "NOUN", vec![0.0, 1.0]),
            ("kuu", "NOUN", vec![0.1, 0.9]),
            ("hopea", "NOUN", vec![0.5, 0.5]),
        ]);
        res.concreteness = ConcretenessLexicon::from_entries([
            ("meri".to_string(), 4.5),
            ("yö".to_string(), 2.0),
        ])
        .unwrap();
        res.sentiment = Box::new(PolarityLexicon::from_entries([("kuu".to_string(), 1.0)]).unwrap());
        res.relatedness = RelatednessModel::from_scores([("hopea", "meri", 0.2), ("hopea", "yö", 0.6)]).unwrap();
        let poem = Poem::new(
            "p",
            vec![
                Verse::new(vec![tok("meri", "meri", "NOUN"), tok("aalto", "aalto", "NOUN")]),
                Verse::new(vec![tok("yö", "yö", "NOUN"), tok("kuu", "kuu", "NOUN"), tok("hopea", "hopea", "NOUN")]),
            ],
        );
        let an = analyze(&poem, &res);
        let r = an.report;
        assert_eq!(r.get(Aesthetic::ConcreteRatio), 0.5);
        // per-verse sentiment 0 and 1
        assert_eq!(r.get(Aesthetic::SentimentVariance), 0.25);
        assert_eq!(r.get(Aesthetic::NClusters), an.fields.len() as f64);
        assert_eq!(r.get(Aesthetic::SyllableCountMean), an.sonic.meter.count_mean);
        assert_eq!(r.get(Aesthetic::FullRhyme), an.sonic.counts.full_rhyme as f64);
        assert_eq!(r.get(Aesthetic::MaxMetaphoricity), an.metaphor.max_metaphoricity);
        assert_eq!(an.concrete, vec![TokenPos::new(0, 0)]);
    }

    #[test]
    fn evaluate_degenerate_poem() {
        let res = fixtures::resources(&[("meri", "NOUN", vec![1.0])]);
        let poem = Poem::new("p", vec![Verse::new(vec![tok("zzz", "zzz", "NOUN")])]);
        let r = evaluate(&poem, &res);
        assert_eq!(r.get(Aesthetic::SentimentVariance), 0.0);
        assert_eq!(r.get(Aesthetic::ConcreteRatio), 0.0);
        assert_eq!(r.get(Aesthetic::NClusters), 0.0);
        assert!(r.iter().all(|(_, v)| v.is_finite()));
    }

    proptest! {
        #[test]
        fn gate_law(v in -10.0f64..10.0, a in -10.0f64..10.0, b in -10.0f64..10.0, w in 0.0f64..5.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let g = gate(v, lo, hi, w);
            if v < lo || v > hi {
                prop_assert_eq!(g, 0.0);
            } else {
                prop_assert_eq!(g, w * v);
            }
        }

        #[test]
        fn fitness_is_monotone_in_range(base in 0.0f64..1.0, bump in 0.0f64..1.0, idx in 0usize..N_AESTHETICS) {
            let a = Aesthetic::ALL[idx];
            let mut p = AestheticProfile::identity();
            p.gates[idx] = GateParams { weight: 0.7, lo: 0.0, hi: 2.0 };
            let mut r = AestheticReport::from_fn(|_| 0.5);
            r.set(a, base);
            let before = fitness(&r, &p).get(a.group());
            r.set(a, base + bump);
            prop_assert!(fitness(&r, &p).get(a.group()) >= before);
        }
    }
}
