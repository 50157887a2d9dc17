use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::corpus::{Poem, Pos, Verse};
use crate::error::{Error, Result};

/// Scores of 3 and above count as concrete.
pub const CONCRETE_THRESHOLD: f64 = 3.0;

/// Reads `key<TAB>value` lines, skipping blanks and `#` comments.
pub(crate) fn read_tsv_pairs<R: BufRead>(
    input: R,
    source_name: &str,
) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(source_name, i + 1, "expected two tab-separated fields"))?;
        out.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_score(source_name: &str, line: usize, v: &str, range: (f64, f64)) -> Result<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| Error::parse(source_name, line, format!("bad number {v:?}")))?;
    if !(range.0..=range.1).contains(&x) {
        return Err(Error::parse(
            source_name,
            line,
            format!("{x} outside [{}, {}]", range.0, range.1),
        ));
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concreteness {
    Concrete,
    Abstract,
    Unknown,
}

/// Lemma concreteness on the 1–5 Likert scale.
#[derive(Debug, Clone, Default)]
pub struct ConcretenessLexicon {
    entries: HashMap<String, f64>,
}

impl ConcretenessLexicon {
    pub fn from_entries<I: IntoIterator<Item = (String, f64)>>(entries: I) -> Result<Self> {
        let mut lex = Self::default();
        for (lemma, score) in entries {
            if !(1.0..=5.0).contains(&score) {
                return Err(Error::invalid(format!(
                    "concreteness of {lemma:?} is {score}, outside [1, 5]"
                )));
            }
            lex.entries.insert(lemma, score);
        }
        Ok(lex)
    }

    pub fn parse<R: BufRead>(input: R, source_name: &str) -> Result<Self> {
        let mut lex = Self::default();
        for (line, lemma, v) in read_tsv_pairs(input, source_name)? {
            let score = parse_score(source_name, line, &v, (1.0, 5.0))?;
            lex.entries.insert(lemma, score);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(crate::error::open(path)?, &path.display().to_string())
    }

    pub fn score(&self, lemma: &str) -> Option<f64> {
        self.entries.get(lemma).copied()
    }

    pub fn is_concrete(&self, lemma: &str) -> Concreteness {
        match self.score(lemma) {
            Some(s) if s >= CONCRETE_THRESHOLD => Concreteness::Concrete,
            Some(_) => Concreteness::Abstract,
            None => Concreteness::Unknown,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Verse-level sentiment in `[-1, 1]`.
pub trait SentimentScorer: Send + Sync {
    fn score_verse(&self, verse: &Verse) -> f64;
}

/// Mean polarity of the verse's lexicon lemmas; 0 when none are listed.
#[derive(Debug, Clone, Default)]
pub struct PolarityLexicon {
    entries: HashMap<String, f64>,
}

impl PolarityLexicon {
    pub fn from_entries<I: IntoIterator<Item = (String, f64)>>(entries: I) -> Result<Self> {
        let mut lex = Self::default();
        for (lemma, p) in entries {
            if !(-1.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!(
                    "polarity of {lemma:?} is {p}, outside [-1, 1]"
                )));
            }
            lex.entries.insert(lemma, p);
        }
        Ok(lex)
    }

    pub fn parse<R: BufRead>(input: R, source_name: &str) -> Result<Self> {
        let mut lex = Self::default();
        for (line, lemma, v) in read_tsv_pairs(input, source_name)? {
            let p = parse_score(source_name, line, &v, (-1.0, 1.0))?;
            lex.entries.insert(lemma, p);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(crate::error::open(path)?, &path.display().to_string())
    }

    pub fn polarity(&self, lemma: &str) -> Option<f64> {
        self.entries.get(lemma).copied()
    }
}

impl SentimentScorer for PolarityLexicon {
    fn score_verse(&self, verse: &Verse) -> f64 {
        let (sum, n) = verse
            .tokens
            .iter()
            .filter_map(|t| self.polarity(&t.lemma))
            .fold((0.0, 0usize), |(s, n), p| (s + p, n + 1));
        if n == 0 {
            0.0
        } else {
            sum / n as f64
        }
    }
}

/// Parts of speech a lemma can take, for filtering replacement candidates.
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    entries: HashMap<String, Vec<Pos>>,
}

impl PosLexicon {
    pub fn insert(&mut self, lemma: &str, pos: Pos) {
        let tags = self.entries.entry(lemma.to_string()).or_default();
        if !tags.contains(&pos) {
            tags.push(pos);
        }
    }

    pub fn parse<R: BufRead>(input: R, source_name: &str) -> Result<Self> {
        let mut lex = Self::default();
        for (_, lemma, pos) in read_tsv_pairs(input, source_name)? {
            lex.insert(&lemma, Pos::new(pos));
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(crate::error::open(path)?, &path.display().to_string())
    }

    /// Adds every (lemma, POS) pair attested in the poems.
    pub fn observe(&mut self, poems: &[Poem]) {
        for poem in poems {
            for (_, t) in poem.tokens() {
                self.insert(&t.lemma, t.pos.clone());
            }
        }
    }

    pub fn has(&self, lemma: &str, pos: &Pos) -> bool {
        self.entries
            .get(lemma)
            .is_some_and(|tags| tags.contains(pos))
    }

    pub fn tags(&self, lemma: &str) -> &[Pos] {
        self.entries.get(lemma).map(Vec::as_slice).unwrap_or(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Token;

    #[test]
    fn concreteness_threshold() {
        let lex = ConcretenessLexicon::from_entries([
            ("kivi".to_string(), 3.0),
            ("ilo".to_string(), 2.99),
        ])
        .unwrap();
        assert_eq!(lex.is_concrete("kivi"), Concreteness::Concrete);
        assert_eq!(lex.is_concrete("ilo"), Concreteness::Abstract);
        assert_eq!(lex.is_concrete("zzz"), Concreteness::Unknown);
        assert!(ConcretenessLexicon::from_entries([("x".to_string(), 5.5)]).is_err());
        assert!(ConcretenessLexicon::parse("x\t0.5\n".as_bytes(), "t").is_err());
    }

    fn verse(lemmas: &[&str]) -> Verse {
        Verse::new(lemmas.iter().map(|l| Token::new(l, l, "NOUN")).collect())
    }

    #[test]
    fn sentiment_is_lexicon_mean() {
        let lex = PolarityLexicon::parse("ilo\t1\nsuru\t-1\n".as_bytes(), "t").unwrap();
        assert_eq!(lex.score_verse(&verse(&["talo", "puu"])), 0.0);
        assert_eq!(lex.score_verse(&verse(&["talo", "ilo"])), 1.0);
        let s = lex.score_verse(&verse(&["ilo", "suru", "talo", "ilo"]));
        assert!((s - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pos_lexicon_accumulates() {
        let mut lex = PosLexicon::parse("kuusi\tNOUN\nkuusi\tNUM\n".as_bytes(), "t").unwrap();
        lex.insert("kuusi", Pos::new("NOUN"));
        assert_eq!(lex.tags("kuusi").len(), 2);
        assert!(lex.has("kuusi", &Pos::new("NUM")));
        assert!(!lex.has("kuusi", &Pos::new("VERB")));
    }
}
