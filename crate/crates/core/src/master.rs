//! The master: a multi-objective genetic algorithm that rewrites a seed poem
//! under an aesthetic profile, and the export of its verse pairs.

use std::collections::BTreeSet;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aesthetics::{evaluate, AestheticProfile, FitnessVector};
use crate::corpus::{content_positions, Era, Poem, TokenPos};
use crate::error::{Error, Result};
use crate::lexres::{EmbeddingStore, Resources, RELATED_LIST_LEN};
use crate::moo::{crowded_better, rank_and_crowding, select_survivors};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub population_size: usize,
    pub offspring_size: usize,
    pub generations: usize,
    pub theme_expansion: usize,
    pub related_pool: usize,
    pub similar_pool: usize,
    pub crossover_prob: f64,
    pub rng_seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            population_size: 100,
            offspring_size: 100,
            generations: 50,
            theme_expansion: 30,
            related_pool: RELATED_LIST_LEN,
            similar_pool: 300,
            crossover_prob: 0.9,
            rng_seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let sizes = [
            ("population_size", self.population_size),
            ("offspring_size", self.offspring_size),
            ("theme_expansion", self.theme_expansion),
        ];
        if let Some((name, _)) = sizes.iter().find(|(_, v)| *v == 0) {
            return Err(Error::invalid(format!("{name} must be positive")));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::invalid(format!(
                "crossover_prob {} is outside [0, 1]",
                self.crossover_prob
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    pub poem: Poem,
    pub theme: String,
    /// Id of the corpus poem this individual descends from.
    pub lineage: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scored {
    pub individual: Individual,
    pub fitness: FitnessVector,
    pub liked: bool,
}

/// The `n` vocabulary words closest to the theme.
pub fn expand_theme(theme: &str, store: &EmbeddingStore, n: usize) -> Result<Vec<String>> {
    if !store.contains(theme) {
        return Err(Error::UnknownTheme(theme.to_string()));
    }
    Ok(store
        .top_similar(theme, n)?
        .into_iter()
        .map(|(w, _)| w)
        .collect())
}

fn match_case(form: &str, original: &str) -> String {
    if original.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = form.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    } else {
        form.to_string()
    }
}

/// Replacement candidates for the token at `pos`, with their inflected
/// forms, sorted by lemma.
pub fn candidates(
    poem: &Poem,
    pos: TokenPos,
    theme: &str,
    cfg: &RunConfig,
    res: &Resources,
) -> Vec<(String, String)> {
    let token = poem.token(pos).expect("candidate position inside the poem");
    let mut pool: BTreeSet<&str> = res
        .relatedness
        .related(theme, cfg.related_pool)
        .into_iter()
        .map(|(w, _)| w)
        .collect();
    let similar = res
        .embeddings
        .top_similar(&token.lemma, cfg.similar_pool)
        .unwrap_or_default();
    pool.extend(similar.iter().map(|(w, _)| w.as_str()));

    let governor = (token.deprel.as_deref() == Some("obj"))
        .then(|| token.head.filter(|&h| h > 0))
        .flatten()
        .and_then(|h| poem.verses[pos.verse].tokens.get(h - 1))
        .map(|t| t.lemma.as_str());

    pool.into_iter()
        .filter(|&c| c != token.lemma && res.pos.has(c, &token.pos) && res.embeddings.contains(c))
        .filter_map(|c| {
            let form = match governor {
                Some(_) => res.morphology.realize_object(c, &token.morph, governor),
                None => res.morphology.realize(c, &token.morph),
            }?;
            Some((c.to_string(), match_case(&form, &token.surface)))
        })
        .collect()
}

/// Replaces one random content word with a theme-related or similar word of
/// the same part of speech, inflected like the original. Returns `false`
/// when nothing could be substituted, leaving the individual unchanged.
pub fn mutate<R: Rng>(ind: &mut Individual, cfg: &RunConfig, res: &Resources, rng: &mut R) -> bool {
    let positions = content_positions(&ind.poem);
    let Some(&pos) = positions.choose(rng) else {
        return false;
    };
    let options = candidates(&ind.poem, pos, &ind.theme, cfg, res);
    let Some((lemma, surface)) = options.choose(rng) else {
        return false;
    };
    let token = &mut ind.poem.verses[pos.verse].tokens[pos.token];
    token.lemma = lemma.clone();
    token.surface = surface.clone();
    true
}

/// Verse-level single-point crossover at one cut shared by both parents,
/// drawn from `1..=min(len)`. Each child keeps its first parent's theme and
/// lineage.
pub fn crossover<R: Rng>(a: &Individual, b: &Individual, rng: &mut R) -> (Individual, Individual) {
    let (la, lb) = (a.poem.verses.len(), b.poem.verses.len());
    let min = la.min(lb);
    if min == 0 {
        return (a.clone(), b.clone());
    }
    let cut = rng.gen_range(1..=min);
    (splice(a, b, cut), splice(b, a, cut))
}

fn splice(head: &Individual, tail: &Individual, cut: usize) -> Individual {
    let mut child = head.clone();
    child.poem.verses.truncate(cut);
    child.poem.verses.extend_from_slice(&tail.poem.verses[cut..]);
    let n = child.poem.verses.len();
    child.poem.stanza_starts.retain(|&s| s < n);
    child
}

/// Copies of the seed, each with a random theme from the expansion set and
/// mutated once.
pub fn init_population<R: Rng>(
    seed_poem: &Poem,
    theme: &str,
    cfg: &RunConfig,
    res: &Resources,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    let themes = expand_theme(theme, &res.embeddings, cfg.theme_expansion)?;
    if themes.is_empty() {
        return Err(Error::invalid(format!("theme {theme:?} has no neighbours to expand into")));
    }
    Ok((0..cfg.population_size)
        .map(|_| {
            let mut ind = Individual {
                poem: seed_poem.clone(),
                theme: themes.choose(rng).expect("non-empty themes").clone(),
                lineage: seed_poem.id.clone(),
            };
            mutate(&mut ind, cfg, res, rng);
            ind
        })
        .collect())
}

fn score_all(inds: Vec<Individual>, profile: &AestheticProfile, res: &Resources) -> Vec<Scored> {
    inds.into_par_iter()
        .map(|individual| {
            let fitness = profile.fitness(&evaluate(&individual.poem, res));
            Scored {
                liked: fitness.liked(),
                individual,
                fitness,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub liked: usize,
    pub best_sum: f64,
    pub noop_mutations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed_poem: Poem,
    pub population: Vec<Scored>,
    pub stats: Vec<GenerationStats>,
    /// Fitness of every individual ever scored, in scoring order.
    pub scored_log: Vec<FitnessVector>,
}

fn tournament<'a, R: Rng>(pop: &'a [Scored], rank: &[usize], crowd: &[f64], rng: &mut R) -> &'a Individual {
    let i = rng.gen_range(0..pop.len());
    let j = rng.gen_range(0..pop.len());
    let winner = if crowded_better(rank, crowd, j, i) { j } else { i };
    &pop[winner].individual
}

fn stats(generation: usize, pop: &[Scored], noop_mutations: usize) -> GenerationStats {
    let s = GenerationStats {
        generation,
        liked: pop.iter().filter(|s| s.liked).count(),
        best_sum: pop.iter().map(|s| s.fitness.sum()).fold(0.0, f64::max),
        noop_mutations,
    };
    log::info!(
        "generation {}: {} liked, best fitness sum {:.4}, {} no-op mutations",
        s.generation,
        s.liked,
        s.best_sum,
        s.noop_mutations
    );
    s
}

/// Evolves the seed poem for `cfg.generations` generations. Scoring runs in
/// parallel; every random draw happens on the calling thread in a fixed
/// order, so a given `rng` state reproduces the run exactly.
pub fn run<R: Rng>(
    seed_poem: &Poem,
    theme: &str,
    cfg: &RunConfig,
    profile: &AestheticProfile,
    res: &Resources,
    rng: &mut R,
) -> Result<RunResult> {
    cfg.validate()?;
    seed_poem.validate()?;
    let initial = init_population(seed_poem, theme, cfg, res, rng)?;
    let mut pop = score_all(initial, profile, res);
    let mut scored_log: Vec<FitnessVector> = pop.iter().map(|s| s.fitness).collect();
    let mut all_stats = vec![stats(0, &pop, 0)];

    for generation in 1..=cfg.generations {
        let objectives: Vec<[f64; 4]> = pop.iter().map(|s| s.fitness.as_array()).collect();
        let (rank, crowd) = rank_and_crowding(&objectives);
        let mut offspring = Vec::with_capacity(cfg.offspring_size);
        let mut noops = 0;
        while offspring.len() < cfg.offspring_size {
            let a = tournament(&pop, &rank, &crowd, rng);
            let b = tournament(&pop, &rank, &crowd, rng);
            let (c1, c2) = if rng.gen::<f64>() < cfg.crossover_prob {
                crossover(a, b, rng)
            } else {
                (a.clone(), b.clone())
            };
            for mut child in [c1, c2] {
                if offspring.len() < cfg.offspring_size {
                    if !mutate(&mut child, cfg, res, rng) {
                        noops += 1;
                    }
                    offspring.push(child);
                }
            }
        }
        let offspring = score_all(offspring, profile, res);
        scored_log.extend(offspring.iter().map(|s| s.fitness));

        let mut combined = pop;
        combined.extend(offspring);
        let objectives: Vec<[f64; 4]> = combined.iter().map(|s| s.fitness.as_array()).collect();
        let keep = select_survivors(&objectives, cfg.population_size.min(combined.len()));
        let mut slots: Vec<Option<Scored>> = combined.into_iter().map(Some).collect();
        pop = keep.into_iter().map(|i| slots[i].take().expect("distinct survivors")).collect();
        all_stats.push(stats(generation, &pop, noops));
    }
    Ok(RunResult {
        seed_poem: seed_poem.clone(),
        population: pop,
        stats: all_stats,
        scored_log,
    })
}

/// A uniformly random liked individual, else the one with the largest
/// fitness sum (first on ties).
pub fn choose_output<'a, R: Rng>(population: &'a [Scored], rng: &mut R) -> Option<&'a Scored> {
    let liked: Vec<&Scored> = population.iter().filter(|s| s.liked).collect();
    if let Some(s) = liked.choose(rng) {
        return Some(s);
    }
    population
        .iter()
        .fold(None, |best: Option<&Scored>, s| match best {
            Some(b) if b.fitness.sum() >= s.fitness.sum() => Some(b),
            _ => Some(s),
        })
}

/// One aligned verse pair for apprentice training.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub source: String,
    pub target: String,
    pub poem_id: String,
    pub verse_index: usize,
    pub era: Option<Era>,
}

/// Verse pairs from each (seed, output) run. Runs whose verse counts differ
/// are skipped with a warning.
pub fn export_pairs(runs: &[(Poem, Poem)], era: Option<Era>) -> Vec<PairRecord> {
    let mut out = Vec::new();
    for (seed, output) in runs {
        if seed.verses.len() != output.verses.len() {
            log::warn!(
                "skipping {}: seed has {} verses, output {}",
                seed.id,
                seed.verses.len(),
                output.verses.len()
            );
            continue;
        }
        for (i, (s, t)) in seed.verses.iter().zip(&output.verses).enumerate() {
            out.push(PairRecord {
                source: s.text(),
                target: t.text(),
                poem_id: seed.id.clone(),
                verse_index: i,
                era,
            });
        }
    }
    out
}

/// Writes records as JSON lines.
pub fn write_pairs<W: Write>(records: &[PairRecord], mut out: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_pairs<R: std::io::BufRead>(input: R) -> Result<Vec<PairRecord>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}
