//! Word relatedness from lemma 5-gram co-occurrence.
//!
//! Every unordered pair of distinct lemmas sharing an n-gram co-occurs
//! `count` times (once per position pair). Relatedness is positive PMI over the
//! symmetric co-occurrence matrix, divided by the largest PPMI in the model so
//! that scores lie in `[0, 1]`.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

pub const NGRAM_ORDER: usize = 5;

/// Per-word ranked lists are cut to this length.
pub const RELATED_LIST_LEN: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGram {
    pub words: Vec<String>,
    pub count: u64,
}

/// Reads `w1 w2 w3 w4 w5<TAB>count` lines.
pub fn parse_ngrams<R: BufRead>(input: R, source_name: &str) -> Result<Vec<NGram>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (gram, count) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(source_name, i + 1, "expected <n-gram><TAB><count>"))?;
        let words: Vec<String> = gram.split_whitespace().map(str::to_string).collect();
        if words.len() != NGRAM_ORDER {
            return Err(Error::parse(
                source_name,
                i + 1,
                format!("expected {NGRAM_ORDER} words, found {}", words.len()),
            ));
        }
        let count = count
            .trim()
            .parse()
            .map_err(|_| Error::parse(source_name, i + 1, format!("bad count {count:?}")))?;
        out.push(NGram { words, count });
    }
    Ok(out)
}

pub fn read_ngrams(path: &Path) -> Result<Vec<NGram>> {
    parse_ngrams(crate::error::open(path)?, &path.display().to_string())
}

#[derive(Debug, Clone, Default)]
pub struct RelatednessModel {
    words: Vec<String>,
    index: HashMap<String, u32>,
    /// Keyed by (smaller id, larger id).
    pairs: HashMap<(u32, u32), f64>,
    ranked: Vec<Vec<(u32, f64)>>,
}

fn key(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl RelatednessModel {
    pub fn build<'a, I>(ngrams: I) -> Self
    where
        I: IntoIterator<Item = &'a NGram>,
    {
        Self::build_with_limit(ngrams, RELATED_LIST_LEN)
    }

    pub fn build_with_limit<'a, I>(ngrams: I, list_len: usize) -> Self
    where
        I: IntoIterator<Item = &'a NGram>,
    {
        let mut model = RelatednessModel::default();
        let mut cooc: HashMap<(u32, u32), f64> = HashMap::new();
        for gram in ngrams {
            let ids: Vec<u32> = gram.words.iter().map(|w| model.intern(w)).collect();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    if ids[i] != ids[j] {
                        *cooc.entry(key(ids[i], ids[j])).or_default() += gram.count as f64;
                    }
                }
            }
        }

        let mut marginal = vec![0.0; model.words.len()];
        for (&(a, b), &c) in &cooc {
            marginal[a as usize] += c;
            marginal[b as usize] += c;
        }
        let total: f64 = marginal.iter().sum();

        let mut max_ppmi = 0.0f64;
        for (&(a, b), &c) in &cooc {
            let pmi = (c * total / (marginal[a as usize] * marginal[b as usize])).ln();
            if pmi > 0.0 {
                model.pairs.insert((a, b), pmi);
                max_ppmi = max_ppmi.max(pmi);
            }
        }
        if max_ppmi > 0.0 {
            for v in model.pairs.values_mut() {
                *v /= max_ppmi;
            }
        }

        model.rank(list_len);
        model
    }

    /// A model with the given pair scores taken as already normalized.
    /// Later repeats of a pair replace earlier ones.
    pub fn from_scores<I, S>(scores: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, f64)>,
        S: AsRef<str>,
    {
        let mut model = RelatednessModel::default();
        for (a, b, s) in scores {
            let (a, b) = (a.as_ref(), b.as_ref());
            if !(0.0..=1.0).contains(&s) || a == b {
                return Err(Error::invalid(format!("relatedness({a}, {b}) = {s} is not a valid score")));
            }
            let (x, y) = (model.intern(a), model.intern(b));
            if s > 0.0 {
                model.pairs.insert(key(x, y), s);
            }
        }
        model.rank(RELATED_LIST_LEN);
        Ok(model)
    }

    fn rank(&mut self, list_len: usize) {
        let model = self;
        model.ranked = vec![Vec::new(); model.words.len()];
        for (&(a, b), &s) in &model.pairs {
            model.ranked[a as usize].push((b, s));
            model.ranked[b as usize].push((a, s));
        }
        let words = &model.words;
        for list in &mut model.ranked {
            list.sort_by(|x, y| {
                y.1.total_cmp(&x.1)
                    .then_with(|| words[x.0 as usize].cmp(&words[y.0 as usize]))
            });
            list.truncate(list_len);
        }
    }

    fn intern(&mut self, word: &str) -> u32 {
        if let Some(&id) = self.index.get(word) {
            return id;
        }
        let id = self.words.len() as u32;
        self.words.push(word.to_string());
        self.index.insert(word.to_string(), id);
        id
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(Self::build(&read_ngrams(path)?))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of stored word pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Stored score in `[0, 1]`, 0 for unseen pairs. Symmetric.
    pub fn relatedness(&self, a: &str, b: &str) -> f64 {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&x), Some(&y)) if x != y => self.pairs.get(&key(x, y)).copied().unwrap_or(0.0),
            _ => 0.0,
        }
    }

    /// Up to `k` most related words, best first.
    pub fn related(&self, word: &str, k: usize) -> Vec<(&str, f64)> {
        self.index
            .get(word)
            .map(|&id| {
                self.ranked[id as usize]
                    .iter()
                    .take(k)
                    .map(|&(w, s)| (self.words[w as usize].as_str(), s))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn max_score(&self) -> f64 {
        self.pairs.values().copied().fold(0.0, f64::max)
    }
}
