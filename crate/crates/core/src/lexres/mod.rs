//! Lexical-semantic resources: embeddings, n-gram relatedness, concreteness
//! and sentiment lexicons, a part-of-speech lexicon and morphology.
//!
//! [`Resources::load_dir`] reads a directory laid out as
//!
//! ```text
//! embeddings.txt     word v1 v2 ... (optional "<count> <dim>" header)
//! ngrams.tsv         w1 w2 w3 w4 w5<TAB>count
//! concreteness.tsv   lemma<TAB>score (1-5)
//! sentiment.tsv      lemma<TAB>polarity (-1..1)
//! morphology.tsv     lemma<TAB>canonical-tags<TAB>surface
//! pos.tsv            lemma<TAB>UPOS
//! government.tsv     verb<TAB>Case   (optional)
//! ```

mod embeddings;
mod lexicons;
mod morphology;
mod relatedness;

use std::path::Path;

pub use embeddings::EmbeddingStore;
pub use lexicons::{
    Concreteness, ConcretenessLexicon, PolarityLexicon, PosLexicon, SentimentScorer,
    CONCRETE_THRESHOLD,
};
pub use morphology::{MorphologyProvider, TableMorphology};
pub use relatedness::{parse_ngrams, read_ngrams, NGram, RelatednessModel, NGRAM_ORDER, RELATED_LIST_LEN};

pub(crate) use embeddings::cosine_of;

use crate::corpus::{Poem, Pos, Token, Verse};
use crate::error::Result;

pub const EMBEDDINGS_FILE: &str = "embeddings.txt";
pub const NGRAMS_FILE: &str = "ngrams.tsv";
pub const CONCRETENESS_FILE: &str = "concreteness.tsv";
pub const SENTIMENT_FILE: &str = "sentiment.tsv";
pub const MORPHOLOGY_FILE: &str = "morphology.tsv";
pub const POS_FILE: &str = "pos.tsv";
pub const GOVERNMENT_FILE: &str = "government.tsv";

/// Everything the aesthetic functions and the mutation operator read.
/// Immutable once built and shared by reference across threads.
pub struct Resources {
    pub embeddings: EmbeddingStore,
    pub relatedness: RelatednessModel,
    pub concreteness: ConcretenessLexicon,
    pub sentiment: Box<dyn SentimentScorer>,
    pub morphology: Box<dyn MorphologyProvider>,
    pub pos: PosLexicon,
}

impl std::fmt::Debug for Resources {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Resources")
            .field("embeddings", &self.embeddings.len())
            .field("relatedness_pairs", &self.relatedness.len())
            .field("concreteness", &self.concreteness.len())
            .finish_non_exhaustive()
    }
}

impl Resources {
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let embeddings = EmbeddingStore::load(&dir.join(EMBEDDINGS_FILE))?;
        let relatedness = RelatednessModel::load(&dir.join(NGRAMS_FILE))?;
        let concreteness = ConcretenessLexicon::load(&dir.join(CONCRETENESS_FILE))?;
        let sentiment = PolarityLexicon::load(&dir.join(SENTIMENT_FILE))?;
        let mut morphology = TableMorphology::load(&dir.join(MORPHOLOGY_FILE))?;
        let government = dir.join(GOVERNMENT_FILE);
        if government.exists() {
            morphology.load_government(&government)?;
        }
        let pos = PosLexicon::load(&dir.join(POS_FILE))?;
        log::info!(
            "loaded resources from {}: {} embeddings (d={}), {} related pairs, {} morphology forms",
            dir.display(),
            embeddings.len(),
            embeddings.dim(),
            relatedness.len(),
            morphology.len()
        );
        Ok(Resources {
            embeddings,
            relatedness,
            concreteness,
            sentiment: Box::new(sentiment),
            morphology: Box::new(morphology),
            pos,
        })
    }

    /// Annotates one raw word: the first morphological reading whose lemma
    /// has a known POS, else the word itself if listed, else POS `X`.
    fn annotate_word(&self, word: &str) -> Token {
        for (lemma, tags) in self.morphology.analyze(word) {
            if let Some(pos) = self.pos.tags(&lemma).first() {
                let mut t = Token::new(word, &lemma, pos.as_str());
                t.morph = tags;
                return t;
            }
        }
        let lower = word.to_lowercase();
        match self.pos.tags(&lower).first() {
            Some(pos) => Token::new(word, &lower, pos.as_str()),
            None => Token::new(word, &lower, "X"),
        }
    }

    /// Builds an annotated poem from plain text, one verse per non-empty line.
    /// Leading and trailing punctuation is split off as PUNCT tokens.
    pub fn annotate_text(&self, id: &str, text: &str) -> Poem {
        let verses = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let mut tokens = Vec::new();
                for raw in line.split_whitespace() {
                    let start = raw.find(char::is_alphanumeric);
                    let Some(start) = start else {
                        tokens.push(Token::new(raw, raw, Pos::PUNCT));
                        continue;
                    };
                    let end = raw
                        .char_indices()
                        .filter(|(_, c)| c.is_alphanumeric())
                        .map(|(i, c)| i + c.len_utf8())
                        .next_back()
                        .unwrap_or(raw.len());
                    if start > 0 {
                        tokens.push(Token::new(&raw[..start], &raw[..start], Pos::PUNCT));
                    }
                    tokens.push(self.annotate_word(&raw[start..end]));
                    if end < raw.len() {
                        tokens.push(Token::new(&raw[end..], &raw[end..], Pos::PUNCT));
                    }
                }
                Verse::new(tokens)
            })
            .collect();
        Poem::new(id, verses)
    }
}

/// Splits plain text into poems at blank lines; ids are `<prefix>-<n>`.
pub fn split_plain_poems(text: &str, prefix: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.is_empty() {
                out.push((format!("{prefix}-{}", out.len() + 1), std::mem::take(&mut block)));
            }
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    out
}
