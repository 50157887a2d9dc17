//! Rule-based Finnish phonology on orthography: syllables and their weight,
//! the rhyme families and meter statistics.
//!
//! Finnish spelling is close to phonemic, so everything here works on
//! lowercase letters with non-letters stripped.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::corpus::{Poem, TokenPos, Verse};

const VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u', 'y', 'ä', 'ö'];

const DIPHTHONGS: &[&str] = &[
    "ai", "ei", "oi", "ui", "yi", "äi", "öi", "au", "eu", "iu", "ou", "ey", "iy", "äy", "öy", "ie",
    "uo", "yö",
];

pub fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

/// Lowercase letters of a word with everything else removed.
pub fn normalize(word: &str) -> String {
    word.chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    Short,
    Long,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllabification {
    /// Normalized letters of the word.
    pub letters: Vec<char>,
    /// Character spans into `letters`, in order, covering every letter.
    pub syllables: Vec<Range<usize>>,
    pub weights: Vec<Weight>,
}

impl Syllabification {
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable(&self, i: usize) -> String {
        self.letters[self.syllables[i].clone()].iter().collect()
    }

    /// Syllables joined with `-`, e.g. `van-ha`.
    pub fn hyphenated(&self) -> String {
        (0..self.len())
            .map(|i| self.syllable(i))
            .collect::<Vec<_>>()
            .join("-")
    }
}

/// Splits a word into syllables. Returns `None` for words without a vowel.
///
/// A nucleus is a long vowel, one of the closed set of diphthongs, or a
/// single vowel. The consonant right before a nucleus opens its syllable;
/// any other consonants close the preceding one. A syllable is long when its
/// nucleus has two vowels or it ends in a consonant.
pub fn syllabify(word: &str) -> Option<Syllabification> {
    let letters: Vec<char> = normalize(word).chars().collect();
    let mut nuclei: Vec<Range<usize>> = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        if !is_vowel(letters[i]) {
            i += 1;
            continue;
        }
        let two = i + 1 < letters.len() && is_vowel(letters[i + 1]) && {
            let pair: String = letters[i..i + 2].iter().collect();
            letters[i] == letters[i + 1] || DIPHTHONGS.contains(&pair.as_str())
        };
        let len = if two { 2 } else { 1 };
        nuclei.push(i..i + len);
        i += len;
    }
    if nuclei.is_empty() {
        return None;
    }

    let mut starts = vec![0];
    for pair in nuclei.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        let start = if next.start == prev.end {
            prev.end
        } else {
            next.start - 1
        };
        starts.push(start);
    }
    let syllables: Vec<Range<usize>> = starts
        .iter()
        .enumerate()
        .map(|(k, &s)| s..starts.get(k + 1).copied().unwrap_or(letters.len()))
        .collect();
    let weights = syllables
        .iter()
        .zip(&nuclei)
        .map(|(syl, nuc)| {
            let closed = !is_vowel(letters[syl.end - 1]);
            if nuc.len() == 2 || closed {
                Weight::Long
            } else {
                Weight::Short
            }
        })
        .collect();
    Some(Syllabification {
        letters,
        syllables,
        weights,
    })
}

fn strip_onset(word: &str) -> &str {
    let start = word.find(is_vowel).unwrap_or(word.len());
    &word[start..]
}

/// Two distinct words whose remainders after the initial consonant run are
/// identical, e.g. *heikko* / *peikko*. Words under two letters never rhyme.
pub fn full_rhyme(a: &str, b: &str) -> bool {
    let (a, b) = (normalize(a), normalize(b));
    if a == b || a.chars().count() < 2 || b.chars().count() < 2 {
        return false;
    }
    let (ra, rb) = (strip_onset(&a), strip_onset(&b));
    !ra.is_empty() && ra == rb
}

fn vowel_skeleton(word: &str) -> String {
    normalize(word).chars().filter(|&c| is_vowel(c)).collect()
}

fn consonant_skeleton(word: &str) -> String {
    normalize(word).chars().filter(|&c| !is_vowel(c)).collect()
}

/// Distinct words with the same vowel sequence, e.g. *talo* / *sano*.
pub fn assonance(a: &str, b: &str) -> bool {
    let (va, vb) = (vowel_skeleton(a), vowel_skeleton(b));
    normalize(a) != normalize(b) && !va.is_empty() && va == vb
}

/// Distinct words with the same consonant sequence, e.g. *sakko* / *sokka*.
pub fn consonance(a: &str, b: &str) -> bool {
    let (ca, cb) = (consonant_skeleton(a), consonant_skeleton(b));
    normalize(a) != normalize(b) && !ca.is_empty() && ca == cb
}

fn initial(word: &str) -> Option<char> {
    word.chars()
        .find(|c| c.is_alphabetic())
        .and_then(|c| c.to_lowercase().next())
}

/// Word tokens of a verse that carry at least one letter.
fn words(verse: &Verse) -> impl Iterator<Item = (usize, &str)> {
    verse
        .tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.surface.chars().any(char::is_alphabetic))
        .map(|(i, t)| (i, t.surface.as_str()))
}

fn alliterating_pairs(verse: &Verse) -> Vec<(usize, usize)> {
    let ws: Vec<(usize, char)> = words(verse)
        .filter_map(|(i, w)| initial(w).map(|c| (i, c)))
        .collect();
    let mut pairs = Vec::new();
    for (x, &(i, ci)) in ws.iter().enumerate() {
        for &(j, cj) in &ws[x + 1..] {
            if ci == cj {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Unordered word pairs within the verse that share their first letter.
pub fn alliteration_count(verse: &Verse) -> usize {
    alliterating_pairs(verse).len()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RhymeSpans {
    pub full_rhyme: Vec<(TokenPos, TokenPos)>,
    pub assonance: Vec<(TokenPos, TokenPos)>,
    pub consonance: Vec<(TokenPos, TokenPos)>,
    pub alliteration: Vec<(TokenPos, TokenPos)>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterverseCounts {
    pub full_rhyme: usize,
    pub assonance: usize,
    pub consonance: usize,
}

/// Counts rhyming word pairs across every pair of distinct verses. A pair
/// that fully rhymes is not also counted as assonance or consonance.
pub fn interverse_counts(poem: &Poem) -> (InterverseCounts, RhymeSpans) {
    let mut counts = InterverseCounts::default();
    let mut spans = RhymeSpans::default();
    let per_verse: Vec<Vec<(usize, &str)>> = poem.verses.iter().map(|v| words(v).collect()).collect();
    for (vi, a_words) in per_verse.iter().enumerate() {
        for (vj, b_words) in per_verse.iter().enumerate().skip(vi + 1) {
            for &(ti, a) in a_words {
                for &(tj, b) in b_words {
                    let span = (TokenPos::new(vi, ti), TokenPos::new(vj, tj));
                    if full_rhyme(a, b) {
                        counts.full_rhyme += 1;
                        spans.full_rhyme.push(span);
                        continue;
                    }
                    if assonance(a, b) {
                        counts.assonance += 1;
                        spans.assonance.push(span);
                    }
                    if consonance(a, b) {
                        counts.consonance += 1;
                        spans.consonance.push(span);
                    }
                }
            }
        }
    }
    for (v, verse) in poem.verses.iter().enumerate() {
        spans.alliteration.extend(
            alliterating_pairs(verse)
                .into_iter()
                .map(|(i, j)| (TokenPos::new(v, i), TokenPos::new(v, j))),
        );
    }
    (counts, spans)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meter {
    pub syllable_counts: Vec<usize>,
    /// Syllable weights of each verse, words concatenated.
    pub weight_patterns: Vec<Vec<Weight>>,
    pub long_ratio: f64,
    pub count_mean: f64,
    /// Population standard deviation of the per-verse counts.
    pub count_stdev: f64,
}

pub fn verse_weights(verse: &Verse) -> Vec<Weight> {
    words(verse)
        .filter_map(|(_, w)| syllabify(w))
        .flat_map(|s| s.weights)
        .collect()
}

pub fn meter_features(poem: &Poem) -> Meter {
    let weight_patterns: Vec<Vec<Weight>> = poem.verses.iter().map(verse_weights).collect();
    let syllable_counts: Vec<usize> = weight_patterns.iter().map(Vec::len).collect();
    let total: usize = syllable_counts.iter().sum();
    let long = weight_patterns
        .iter()
        .flatten()
        .filter(|&&w| w == Weight::Long)
        .count();
    let long_ratio = if total == 0 {
        0.0
    } else {
        long as f64 / total as f64
    };
    let n = syllable_counts.len().max(1) as f64;
    let count_mean = total as f64 / n;
    let count_stdev = (syllable_counts
        .iter()
        .map(|&c| (c as f64 - count_mean).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Meter {
        syllable_counts,
        weight_patterns,
        long_ratio,
        count_mean,
        count_stdev,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SonicReport {
    pub counts: InterverseCounts,
    /// Alliterating pairs summed over verses.
    pub alliteration_count: usize,
    pub meter: Meter,
    pub spans: RhymeSpans,
}

pub fn analyze(poem: &Poem) -> SonicReport {
    let (counts, spans) = interverse_counts(poem);
    SonicReport {
        counts,
        alliteration_count: spans.alliteration.len(),
        meter: meter_features(poem),
        spans,
    }
}
