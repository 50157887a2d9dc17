use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

/// Lemma-keyed dense vectors of one fixed dimension.
#[derive(Debug, Clone)]
pub struct EmbeddingStore {
    words: Vec<String>,
    index: HashMap<String, usize>,
    dim: usize,
    data: Vec<f64>,
    norms: Vec<f64>,
    duplicates: usize,
}

/// Orders `(word, score)` pairs by descending score, then word.
pub(crate) fn by_score_then_word(a: &(String, f64), b: &(String, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0))
}

pub(crate) fn cosine_of(a: &[f64], b: &[f64]) -> f64 {
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0)
}

impl EmbeddingStore {
    /// Builds a store from `(word, vector)` pairs. A repeated word replaces
    /// the earlier vector and is counted in [`EmbeddingStore::duplicates`].
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut store = EmbeddingStore {
            words: Vec::new(),
            index: HashMap::new(),
            dim: 0,
            data: Vec::new(),
            norms: Vec::new(),
            duplicates: 0,
        };
        for (word, vector) in pairs {
            store.insert(word.into(), vector)?;
        }
        if store.words.is_empty() {
            return Err(Error::invalid("embedding store is empty"));
        }
        Ok(store)
    }

    fn insert(&mut self, word: String, vector: Vec<f64>) -> Result<()> {
        if self.words.is_empty() && self.dim == 0 {
            if vector.is_empty() {
                return Err(Error::invalid(format!("embedding for {word:?} is empty")));
            }
            self.dim = vector.len();
        }
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                word,
                expected: self.dim,
                found: vector.len(),
            });
        }
        if vector.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid(format!("embedding for {word:?} is not finite")));
        }
        let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        match self.index.get(&word) {
            Some(&i) => {
                self.duplicates += 1;
                self.data[i * self.dim..(i + 1) * self.dim].copy_from_slice(&vector);
                self.norms[i] = norm;
            }
            None => {
                self.index.insert(word.clone(), self.words.len());
                self.words.push(word);
                self.data.extend_from_slice(&vector);
                self.norms.push(norm);
            }
        }
        Ok(())
    }

    /// Reads the text format: an optional `<count> <dim>` header, then one
    /// word per line followed by its space-separated components.
    pub fn parse<R: BufRead>(input: R, source_name: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut expected_dim = None;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if i == 0 && fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
                expected_dim = fields[1].parse::<usize>().ok();
                continue;
            }
            let vector = fields[1..]
                .iter()
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(source_name, i + 1, format!("{}: {e}", fields[0])))?;
            if let Some(dim) = expected_dim {
                if vector.len() != dim {
                    return Err(Error::DimensionMismatch {
                        word: fields[0].to_string(),
                        expected: dim,
                        found: vector.len(),
                    });
                }
            }
            pairs.push((fields[0].to_string(), vector));
        }
        let store = Self::from_pairs(pairs)?;
        if store.duplicates > 0 {
            log::warn!(
                "{source_name}: {} duplicate embedding entries, later lines won",
                store.duplicates
            );
        }
        Ok(store)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(crate::error::open(path)?, &path.display().to_string())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of lines whose word had already been seen.
    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    /// Vocabulary in load order.
    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index
            .get(word)
            .map(|&i| &self.data[i * self.dim..(i + 1) * self.dim])
    }

    pub fn cosine(&self, a: &str, b: &str) -> Result<f64> {
        let va = self
            .vector(a)
            .ok_or_else(|| Error::MissingWord(a.to_string()))?;
        let vb = self
            .vector(b)
            .ok_or_else(|| Error::MissingWord(b.to_string()))?;
        Ok(cosine_of(va, vb))
    }

    /// The `k` words most cosine-similar to `word`, excluding the word itself.
    /// Equal scores are ordered lexicographically.
    pub fn top_similar(&self, word: &str, k: usize) -> Result<Vec<(String, f64)>> {
        let v = self
            .vector(word)
            .ok_or_else(|| Error::MissingWord(word.to_string()))?;
        Ok(self.nearest(v, k, Some(word)))
    }

    /// The `k` vocabulary words nearest to an arbitrary vector by cosine.
    pub fn nearest(&self, target: &[f64], k: usize, exclude: Option<&str>) -> Vec<(String, f64)> {
        let tnorm = target.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut scored: Vec<(String, f64)> = self
            .words
            .iter()
            .enumerate()
            .filter(|(_, w)| Some(w.as_str()) != exclude)
            .map(|(i, w)| {
                let v = &self.data[i * self.dim..(i + 1) * self.dim];
                let denom = tnorm * self.norms[i];
                let score = if denom == 0.0 {
                    0.0
                } else {
                    let dot: f64 = v.iter().zip(target).map(|(a, b)| a * b).sum();
                    (dot / denom).clamp(-1.0, 1.0)
                };
                (w.clone(), score)
            })
            .collect();
        if k < scored.len() {
            scored.select_nth_unstable_by(k, by_score_then_word);
            scored.truncate(k);
        }
        scored.sort_by(by_score_then_word);
        scored
    }
}
