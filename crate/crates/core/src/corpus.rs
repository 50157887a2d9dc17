//! Annotated poem corpora.
//!
//! The on-disk format is CoNLL-U: ten tab-separated columns per token
//! (`ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC`), `_` for absent
//! values, a blank line after every verse. Three comment lines carry poem
//! structure:
//!
//! ```text
//! # poem_id = runo001     starts a new poem
//! # era = 1800            century label of the current poem
//! # stanza                the next verse opens a new stanza
//! ```
//!
//! `# newdoc id = ...` is accepted as a synonym for `poem_id`. Other comments,
//! multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Universal part-of-speech tag. The set is open; only the four open-class
/// tags get special treatment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pos(String);

impl Pos {
    pub const NOUN: &'static str = "NOUN";
    pub const VERB: &'static str = "VERB";
    pub const ADJ: &'static str = "ADJ";
    pub const ADV: &'static str = "ADV";
    pub const PUNCT: &'static str = "PUNCT";

    pub fn new(tag: impl Into<String>) -> Self {
        Pos(tag.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// NOUN, VERB, ADJ or ADV.
    pub fn is_open_class(&self) -> bool {
        matches!(self.0.as_str(), "NOUN" | "VERB" | "ADJ" | "ADV")
    }

    pub fn is_punct(&self) -> bool {
        self.0 == Self::PUNCT
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Pos {
    fn from(s: &str) -> Self {
        Pos::new(s)
    }
}

/// Morphological features, `Feature=Value` pairs with unique feature names.
///
/// Insertion order is kept so that a parsed FEATS column serializes back
/// unchanged; [`MorphTags::canonical`] gives the sorted form used for lookups.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphTags(Vec<(String, String)>);

impl MorphTags {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `Case=Gen|Number=Sing`; `_` and the empty string give no tags.
    pub fn parse(feats: &str) -> std::result::Result<Self, String> {
        let mut tags = MorphTags::new();
        if feats.is_empty() || feats == "_" {
            return Ok(tags);
        }
        for pair in feats.split('|') {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("feature {pair:?} is not Name=Value"))?;
            if name.is_empty() || value.is_empty() {
                return Err(format!("feature {pair:?} is not Name=Value"));
            }
            if tags.get(name).is_some() {
                return Err(format!("feature {name:?} appears twice"));
            }
            tags.0.push((name.to_string(), value.to_string()));
        }
        Ok(tags)
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    /// Sets `name` to `value`, replacing any previous value in place.
    pub fn set(&mut self, name: &str, value: &str) {
        match self.0.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value.to_string(),
            None => self.0.push((name.to_string(), value.to_string())),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(n, v)| (n.as_str(), v.as_str()))
    }

    /// Pairs sorted by feature name, joined with `|`; `_` when empty.
    pub fn canonical(&self) -> String {
        if self.0.is_empty() {
            return "_".to_string();
        }
        let mut pairs: Vec<_> = self.0.iter().collect();
        pairs.sort();
        pairs
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for MorphTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub morph: MorphTags,
    /// 1-based index of the syntactic head within the verse, 0 for the root.
    pub head: Option<usize>,
    pub deprel: Option<String>,
    pub xpos: Option<String>,
    pub deps: Option<String>,
    pub misc: Option<String>,
}

impl Token {
    pub fn new(surface: &str, lemma: &str, pos: &str) -> Self {
        Token {
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            pos: Pos::new(pos),
            morph: MorphTags::new(),
            head: None,
            deprel: None,
            xpos: None,
            deps: None,
            misc: None,
        }
    }

    pub fn with_morph(mut self, feats: &str) -> Self {
        self.morph = MorphTags::parse(feats).expect("valid feature string");
        self
    }

    pub fn with_deprel(mut self, head: usize, deprel: &str) -> Self {
        self.head = Some(head);
        self.deprel = Some(deprel.to_string());
        self
    }

    pub fn is_content_word(&self) -> bool {
        self.pos.is_open_class()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verse {
    pub tokens: Vec<Token>,
}

impl Verse {
    pub fn new(tokens: Vec<Token>) -> Self {
        Verse { tokens }
    }

    /// Surface text with punctuation attached to the preceding word.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for token in &self.tokens {
            if !out.is_empty() && !token.pos.is_punct() {
                out.push(' ');
            }
            out.push_str(&token.surface);
        }
        out
    }
}

/// Century label, e.g. `1800` for nineteenth-century poetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Era(pub u16);

impl fmt::Display for Era {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for Era {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map(Era)
            .map_err(|_| Error::invalid(format!("era {s:?} is not a year such as 1800")))
    }
}

/// Position of a token inside a poem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TokenPos {
    pub verse: usize,
    pub token: usize,
}

impl TokenPos {
    pub fn new(verse: usize, token: usize) -> Self {
        TokenPos { verse, token }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poem {
    pub id: String,
    pub verses: Vec<Verse>,
    pub era: Option<Era>,
    /// Indices of verses that open a new stanza (never 0).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stanza_starts: Vec<usize>,
}

impl Poem {
    pub fn new(id: impl Into<String>, verses: Vec<Verse>) -> Self {
        Poem {
            id: id.into(),
            verses,
            era: None,
            stanza_starts: Vec::new(),
        }
    }

    pub fn with_era(mut self, era: Era) -> Self {
        self.era = Some(era);
        self
    }

    pub fn token(&self, pos: TokenPos) -> Option<&Token> {
        self.verses.get(pos.verse)?.tokens.get(pos.token)
    }

    pub fn tokens(&self) -> impl Iterator<Item = (TokenPos, &Token)> {
        self.verses.iter().enumerate().flat_map(|(v, verse)| {
            verse
                .tokens
                .iter()
                .enumerate()
                .map(move |(t, token)| (TokenPos::new(v, t), token))
        })
    }

    pub fn token_count(&self) -> usize {
        self.verses.iter().map(|v| v.tokens.len()).sum()
    }

    /// One line per verse.
    pub fn text(&self) -> String {
        self.verses
            .iter()
            .map(Verse::text)
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Checks the structural invariants: at least one verse, no empty verse,
    /// non-empty surface and lemma on every token.
    pub fn validate(&self) -> Result<()> {
        if self.verses.is_empty() {
            return Err(Error::invalid(format!("poem {} has no verses", self.id)));
        }
        for (i, verse) in self.verses.iter().enumerate() {
            if verse.tokens.is_empty() {
                return Err(Error::invalid(format!("poem {} verse {i} is empty", self.id)));
            }
            if verse
                .tokens
                .iter()
                .any(|t| t.surface.is_empty() || t.lemma.is_empty())
            {
                return Err(Error::invalid(format!(
                    "poem {} verse {i} has a token without surface or lemma",
                    self.id
                )));
            }
        }
        Ok(())
    }
}

/// Open-class tokens (NOUN, VERB, ADJ, ADV) in order of appearance.
pub fn content_words(poem: &Poem) -> Vec<&Token> {
    poem.tokens()
        .filter(|(_, t)| t.is_content_word())
        .map(|(_, t)| t)
        .collect()
}

/// Positions of the open-class tokens, in order of appearance.
pub fn content_positions(poem: &Poem) -> Vec<TokenPos> {
    poem.tokens()
        .filter(|(_, t)| t.is_content_word())
        .map(|(p, _)| p)
        .collect()
}

/// Splits a poem at the given verse indices. Each boundary `b` starts a new
/// piece at verse `b`; pieces keep the era and get ids `<id>-s1`, `<id>-s2`...
/// An empty boundary list returns the poem unchanged.
pub fn split_stanzas(poem: &Poem, boundaries: &[usize]) -> Result<Vec<Poem>> {
    if boundaries.is_empty() {
        return Ok(vec![poem.clone()]);
    }
    let n = poem.verses.len();
    let mut prev = 0;
    for &b in boundaries {
        if b == 0 || b >= n {
            return Err(Error::invalid(format!(
                "stanza boundary {b} outside 1..{n} for poem {}",
                poem.id
            )));
        }
        if b <= prev {
            return Err(Error::invalid(format!(
                "stanza boundaries for poem {} are not strictly increasing",
                poem.id
            )));
        }
        prev = b;
    }
    let mut cuts = Vec::with_capacity(boundaries.len() + 2);
    cuts.push(0);
    cuts.extend_from_slice(boundaries);
    cuts.push(n);
    Ok(cuts
        .windows(2)
        .enumerate()
        .map(|(i, w)| Poem {
            id: format!("{}-s{}", poem.id, i + 1),
            verses: poem.verses[w[0]..w[1]].to_vec(),
            era: poem.era,
            stanza_starts: Vec::new(),
        })
        .collect())
}

/// Splits every poem at its `# stanza` markers.
pub fn stanza_poems(poems: &[Poem]) -> Result<Vec<Poem>> {
    let mut out = Vec::new();
    for poem in poems {
        out.extend(split_stanzas(poem, &poem.stanza_starts)?);
    }
    Ok(out)
}

fn optional(field: &str) -> Option<String> {
    (field != "_").then(|| field.to_string())
}

fn comment_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.strip_prefix(key)?.trim_start();
    Some(rest.strip_prefix('=')?.trim())
}

struct PoemBuilder {
    poem: Poem,
    verse: Vec<Token>,
    stanza_pending: bool,
}

impl PoemBuilder {
    fn new(id: String) -> Self {
        PoemBuilder {
            poem: Poem::new(id, Vec::new()),
            verse: Vec::new(),
            stanza_pending: false,
        }
    }

    fn end_verse(&mut self) {
        if self.verse.is_empty() {
            return;
        }
        if self.stanza_pending && !self.poem.verses.is_empty() {
            self.poem.stanza_starts.push(self.poem.verses.len());
        }
        self.stanza_pending = false;
        self.poem
            .verses
            .push(Verse::new(std::mem::take(&mut self.verse)));
    }

    fn finish(mut self, line: usize, source_name: &str) -> Result<Poem> {
        self.end_verse();
        if self.poem.verses.is_empty() {
            return Err(Error::parse(
                source_name,
                line,
                format!("poem {} has no verses", self.poem.id),
            ));
        }
        Ok(self.poem)
    }
}

/// Parses a corpus stream. `source_name` only labels error messages.
pub fn parse_corpus<R: BufRead>(input: R, source_name: &str) -> Result<Vec<Poem>> {
    let mut poems: Vec<Poem> = Vec::new();
    let mut ids = HashSet::new();
    let mut current: Option<PoemBuilder> = None;
    let mut line_no = 0;

    let mut push = |builder: PoemBuilder, line: usize, poems: &mut Vec<Poem>| -> Result<()> {
        let poem = builder.finish(line, source_name)?;
        if !ids.insert(poem.id.clone()) {
            return Err(Error::parse(
                source_name,
                line,
                format!("duplicate poem id {}", poem.id),
            ));
        }
        poems.push(poem);
        Ok(())
    };

    for line in input.lines() {
        line_no += 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.trim().is_empty() {
            if let Some(b) = current.as_mut() {
                b.end_verse();
            }
            continue;
        }

        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            let new_id = comment_value(comment, "poem_id")
                .or_else(|| comment_value(comment, "newdoc id"));
            if let Some(id) = new_id {
                if let Some(b) = current.take() {
                    push(b, line_no, &mut poems)?;
                }
                current = Some(PoemBuilder::new(id.to_string()));
            } else if let Some(era) = comment_value(comment, "era") {
                let era: Era = era
                    .parse()
                    .map_err(|e: Error| Error::parse(source_name, line_no, e.to_string()))?;
                current
                    .get_or_insert_with(|| PoemBuilder::new(format!("doc{}", poems.len() + 1)))
                    .poem
                    .era = Some(era);
            } else if comment == "stanza" {
                if let Some(b) = current.as_mut() {
                    b.end_verse();
                    b.stanza_pending = true;
                }
            }
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::parse(
                source_name,
                line_no,
                format!("expected 10 tab-separated columns, found {}", cols.len()),
            ));
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        if cols[0].parse::<usize>().is_err() {
            return Err(Error::parse(
                source_name,
                line_no,
                format!("token id {:?} is not a number", cols[0]),
            ));
        }
        let (form, lemma) = (cols[1], cols[2]);
        if form.is_empty() {
            return Err(Error::parse(source_name, line_no, "empty FORM"));
        }
        if lemma.is_empty() || (lemma == "_" && form != "_") {
            return Err(Error::parse(source_name, line_no, "missing LEMMA"));
        }
        if cols[3].is_empty() || cols[3] == "_" {
            return Err(Error::parse(source_name, line_no, "missing UPOS"));
        }
        let morph = MorphTags::parse(cols[5]).map_err(|m| Error::parse(source_name, line_no, m))?;
        let head = match cols[6] {
            "_" => None,
            h => Some(h.parse::<usize>().map_err(|_| {
                Error::parse(source_name, line_no, format!("HEAD {h:?} is not a number"))
            })?),
        };
        let token = Token {
            surface: form.to_string(),
            lemma: lemma.to_string(),
            pos: Pos::new(cols[3]),
            morph,
            head,
            deprel: optional(cols[7]),
            xpos: optional(cols[4]),
            deps: optional(cols[8]),
            misc: optional(cols[9]),
        };
        current
            .get_or_insert_with(|| PoemBuilder::new(format!("doc{}", poems.len() + 1)))
            .verse
            .push(token);
    }
    if let Some(b) = current.take() {
        push(b, line_no, &mut poems)?;
    }
    Ok(poems)
}

pub fn read_corpus(path: &std::path::Path) -> Result<Vec<Poem>> {
    parse_corpus(crate::error::open(path)?, &path.display().to_string())
}

fn opt(field: &Option<String>) -> &str {
    field.as_deref().unwrap_or("_")
}

/// Writes poems in the format read by [`parse_corpus`].
pub fn write_corpus<W: Write>(poems: &[Poem], mut out: W) -> Result<()> {
    for poem in poems {
        writeln!(out, "# poem_id = {}", poem.id)?;
        if let Some(era) = poem.era {
            writeln!(out, "# era = {era}")?;
        }
        for (v, verse) in poem.verses.iter().enumerate() {
            if poem.stanza_starts.contains(&v) {
                writeln!(out, "# stanza")?;
            }
            for (i, t) in verse.tokens.iter().enumerate() {
                let head = t.head.map(|h| h.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    i + 1,
                    t.surface,
                    t.lemma,
                    t.pos,
                    opt(&t.xpos),
                    t.morph,
                    head.as_deref().unwrap_or("_"),
                    opt(&t.deprel),
                    opt(&t.deps),
                    opt(&t.misc),
                )?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_VERSES: &str = "# poem_id = p1\n# era = 1900\n\
1\tvanha\tvanha\tADJ\t_\tCase=Nom|Degree=Pos|Number=Sing\t2\tamod\t_\t_\n\
2\tvesi\tvesi\tNOUN\t_\tCase=Nom|Number=Sing\t0\troot\t_\t_\n\
3\tja\tja\tCCONJ\t_\t_\t2\tcc\t_\t_\n\
\n\
1\ttalo\ttalo\tNOUN\t_\tCase=Nom|Number=Sing\t0\troot\t_\tSpaceAfter=No\n\
2\t.\t.\tPUNCT\t_\t_\t1\tpunct\t_\t_\n\
\n";

    fn parse(s: &str) -> Result<Vec<Poem>> {
        parse_corpus(s.as_bytes(), "test")
    }

    #[test]
    fn empty_stream_gives_no_poems() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("\n\n").unwrap().is_empty());
    }

    #[test]
    fn one_document_two_sentences() {
        let poems = parse(TWO_VERSES).unwrap();
        assert_eq!(poems.len(), 1);
        let p = &poems[0];
        assert_eq!(p.id, "p1");
        assert_eq!(p.era, Some(Era(1900)));
        assert_eq!(p.verses.len(), 2);
        assert_eq!(p.verses[0].tokens[1].morph.get("Case"), Some("Nom"));
        assert_eq!(p.verses[1].tokens[0].misc.as_deref(), Some("SpaceAfter=No"));
        assert_eq!(p.verses[0].tokens[0].deprel.as_deref(), Some("amod"));
        assert_eq!(p.verses[1].text(), "talo.");
    }

    #[test]
    fn missing_lemma_column_reports_line() {
        let input = "# poem_id = p\n1\tvesi\tvesi\tNOUN\t_\t_\t0\troot\t_\t_\n2\ttalo\tNOUN\t_\t_\t0\troot\t_\t_\n";
        match parse(input) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_feature_and_bad_head_are_errors() {
        let dup = "1\tvesi\tvesi\tNOUN\t_\tCase=Nom|Case=Gen\t0\troot\t_\t_\n";
        assert!(matches!(parse(dup), Err(Error::Parse { line: 1, .. })));
        let head = "1\tvesi\tvesi\tNOUN\t_\t_\tx\troot\t_\t_\n";
        assert!(matches!(parse(head), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicate_poem_ids_rejected() {
        let input = "# poem_id = a\n1\tx\tx\tX\t_\t_\t0\troot\t_\t_\n\n# poem_id = a\n1\ty\ty\tX\t_\t_\t0\troot\t_\t_\n";
        assert!(parse(input).is_err());
    }

    #[test]
    fn stanza_markers_and_round_trip() {
        let input = "# poem_id = p\n# era = 1800\n\
1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n\n\
1\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n\n\
# stanza\n\
1\tc\tc\tNOUN\tN\tCase=Nom\t0\troot\t_\t_\n\n";
        let poems = parse(input).unwrap();
        assert_eq!(poems[0].stanza_starts, vec![2]);
        let mut out = Vec::new();
        write_corpus(&poems, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), input);

        let mut out = Vec::new();
        write_corpus(&parse(TWO_VERSES).unwrap(), &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), TWO_VERSES);
    }

    #[test]
    fn multiword_ranges_are_skipped() {
        let input = "1-2\tettei\t_\t_\t_\t_\t_\t_\t_\t_\n1\tettä\tettä\tSCONJ\t_\t_\t0\troot\t_\t_\n2\tei\tei\tAUX\t_\t_\t1\taux\t_\t_\n";
        let poems = parse(input).unwrap();
        assert_eq!(poems[0].verses[0].tokens.len(), 2);
        assert_eq!(poems[0].id, "doc1");
    }

    fn poem_of(n: usize) -> Poem {
        let verses = (0..n)
            .map(|i| Verse::new(vec![Token::new(&format!("w{i}"), &format!("w{i}"), "NOUN")]))
            .collect();
        Poem::new("p", verses).with_era(Era(1800))
    }

    #[test]
    fn split_six_verses_at_three() {
        let parts = split_stanzas(&poem_of(6), &[3]).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.verses.len() == 3 && p.era == Some(Era(1800))));
        assert_eq!(parts[0].id, "p-s1");
        assert_eq!(parts[1].id, "p-s2");
    }

    #[test]
    fn split_without_boundaries_is_identity() {
        let p = poem_of(4);
        assert_eq!(split_stanzas(&p, &[]).unwrap(), vec![p]);
    }

    #[test]
    fn split_rejects_bad_boundaries() {
        let p = poem_of(4);
        assert!(split_stanzas(&p, &[4]).is_err());
        assert!(split_stanzas(&p, &[0]).is_err());
        assert!(split_stanzas(&p, &[2, 2]).is_err());
        assert!(split_stanzas(&p, &[3, 1]).is_err());
    }

    #[test]
    fn content_words_keep_open_classes() {
        let verse = Verse::new(vec![
            Token::new("vanha", "vanha", "ADJ"),
            Token::new("vesi", "vesi", "NOUN"),
            Token::new("ja", "ja", "CCONJ"),
        ]);
        let poem = Poem::new("p", vec![verse]);
        let words: Vec<_> = content_words(&poem).iter().map(|t| t.lemma.as_str()).collect();
        assert_eq!(words, ["vanha", "vesi"]);

        let closed = Poem::new(
            "q",
            vec![Verse::new(vec![
                Token::new("ja", "ja", "CCONJ"),
                Token::new(",", ",", "PUNCT"),
            ])],
        );
        assert!(content_words(&closed).is_empty());
    }

    #[test]
    fn canonical_tags_are_sorted() {
        let tags = MorphTags::parse("Number=Sing|Case=Gen").unwrap();
        assert_eq!(tags.canonical(), "Case=Gen|Number=Sing");
        assert_eq!(tags.to_string(), "Number=Sing|Case=Gen");
        assert_eq!(MorphTags::new().canonical(), "_");
    }
}
