//! Template framing: thirteen statements explaining a poem through its
//! aesthetic analyses, and agreement scoring against human judgments.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aesthetics::PoemAnalysis;
use crate::corpus::{content_positions, Poem, TokenPos};
use crate::error::{Error, Result};
use crate::sonic::Weight;

pub const N_STATEMENTS: usize = 13;

/// Statements whose subject may be drawn at random.
pub const FILLER_STATEMENTS: [usize; 5] = [5, 10, 11, 12, 13];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Agree,
    Disagree,
    NotApplicable,
}

impl Prediction {
    fn from_bool(agree: bool) -> Self {
        if agree {
            Prediction::Agree
        } else {
            Prediction::Disagree
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Language {
    Finnish,
    English,
}

/// Statement templates with `{x}`, `{y}`, `{n}` and `{list}` slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Templates {
    statements: Vec<String>,
    and: String,
}

impl Templates {
    pub fn builtin(lang: Language) -> Self {
        let text = match lang {
            Language::Finnish => include_str!("../data/framing/fi.tsv"),
            Language::English => include_str!("../data/framing/en.tsv"),
        };
        Self::parse(text, "builtin templates").expect("builtin templates are well formed")
    }

    /// Parses `key<TAB>template` lines: keys 1 to 13 and `and`.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, template) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(source_name, i + 1, "expected key<TAB>template"))?;
            map.insert(key.trim().to_string(), template.to_string());
        }
        let mut take = |key: &str| {
            map.remove(key)
                .ok_or_else(|| Error::parse(source_name, 0, format!("missing template {key:?}")))
        };
        let statements = (1..=N_STATEMENTS)
            .map(|i| take(&i.to_string()))
            .collect::<Result<Vec<_>>>()?;
        let and = take("and")?;
        if let Some(extra) = map.keys().next() {
            return Err(Error::parse(source_name, 0, format!("unknown template key {extra:?}")));
        }
        Ok(Templates { statements, and })
    }

    fn fill(&self, index: usize, slots: &Slots) -> String {
        let mut s = self.statements[index - 1].clone();
        for (name, value) in [("{x}", &slots.x), ("{y}", &slots.y), ("{n}", &slots.n)] {
            s = s.replace(name, value);
        }
        s.replace("{list}", &self.join(&slots.list))
    }

    /// `a`, `a and b`, `a, b and c`.
    fn join(&self, items: &[String]) -> String {
        match items {
            [] => String::new(),
            [one] => one.clone(),
            [init @ .., last] => format!("{} {} {}", init.join(", "), self.and, last),
        }
    }
}

#[derive(Default)]
struct Slots {
    x: String,
    y: String,
    n: String,
    list: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Statement {
    /// 1-based.
    pub index: usize,
    pub text: String,
    /// Tokens to italicize.
    pub highlights: Vec<TokenPos>,
    /// The subject was drawn at random rather than detected.
    pub is_filler: bool,
    pub prediction: Prediction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramingDocument {
    pub poem_id: String,
    pub statements: Vec<Statement>,
}

fn endpoints(pairs: &[(TokenPos, TokenPos)]) -> Vec<TokenPos> {
    let set: BTreeSet<TokenPos> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    set.into_iter().collect()
}

fn same_meter(an: &PoemAnalysis, a: usize, b: usize) -> bool {
    let m = &an.sonic.meter;
    let pattern = |i: usize| -> &[Weight] { &m.weight_patterns[i] };
    m.syllable_counts[a] == m.syllable_counts[b] && pattern(a) == pattern(b)
}

fn bracket(words: &[String]) -> String {
    format!("[{}]", words.join(", "))
}

/// Builds the thirteen statements for `poem` from its analysis.
pub fn generate_framing<R: Rng>(poem: &Poem, an: &PoemAnalysis, templates: &Templates, rng: &mut R) -> FramingDocument {
    let n_verses = poem.verses.len();
    let mut out = Vec::with_capacity(N_STATEMENTS);
    let mut push = |index: usize, slots: Slots, highlights: Vec<TokenPos>, is_filler: bool, prediction: Prediction| {
        out.push(Statement {
            index,
            text: templates.fill(index, &slots),
            highlights,
            is_filler,
            prediction,
        })
    };

    let spans = &an.sonic.spans;
    for (index, pairs) in [
        (1, &spans.full_rhyme),
        (2, &spans.assonance),
        (3, &spans.consonance),
        (4, &spans.alliteration),
    ] {
        let hl = endpoints(pairs);
        let prediction = Prediction::from_bool(!hl.is_empty());
        push(index, Slots::default(), hl, false, prediction);
    }

    if n_verses >= 2 {
        let mut pick = (0..n_verses).choose_multiple(rng, 2);
        pick.shuffle(rng);
        let (a, b) = (pick[0].min(pick[1]), pick[0].max(pick[1]));
        let slots = Slots { x: (a + 1).to_string(), y: (b + 1).to_string(), ..Slots::default() };
        push(5, slots, Vec::new(), true, Prediction::from_bool(same_meter(an, a, b)));
    } else {
        push(5, Slots::default(), Vec::new(), true, Prediction::NotApplicable);
    }

    let fields = &an.fields;
    let slots = Slots {
        n: fields.len().to_string(),
        list: fields.clusters.iter().map(|c| bracket(c)).collect(),
        ..Slots::default()
    };
    push(6, slots, Vec::new(), false, Prediction::Agree);
    match fields.extreme_pairs() {
        Some((close, far)) => {
            for (index, (i, j, _)) in [(7, close), (8, far)] {
                let slots = Slots {
                    x: bracket(&fields.clusters[i]),
                    y: bracket(&fields.clusters[j]),
                    ..Slots::default()
                };
                push(index, slots, Vec::new(), false, Prediction::Agree);
            }
        }
        None => {
            push(7, Slots::default(), Vec::new(), false, Prediction::NotApplicable);
            push(8, Slots::default(), Vec::new(), false, Prediction::NotApplicable);
        }
    }

    let mut concrete: Vec<String> = Vec::new();
    for &p in &an.concrete {
        let w = &poem.token(p).expect("concrete position inside the poem").surface;
        if !concrete.contains(w) {
            concrete.push(w.clone());
        }
    }
    let prediction = if concrete.is_empty() { Prediction::NotApplicable } else { Prediction::Agree };
    push(9, Slots { list: concrete, ..Slots::default() }, Vec::new(), false, prediction);

    for (index, positive) in [(10, true), (11, false)] {
        let v = rng.gen_range(0..n_verses.max(1));
        let prediction = match an.verse_sentiment.get(v) {
            Some(&s) => Prediction::from_bool(if positive { s > 0.0 } else { s < 0.0 }),
            None => Prediction::NotApplicable,
        };
        push(index, Slots { x: (v + 1).to_string(), ..Slots::default() }, Vec::new(), true, prediction);
    }

    let metaphorical: Vec<String> = an.metaphor.metaphorical_words().into_iter().map(String::from).collect();
    if metaphorical.is_empty() {
        let mut seen = BTreeSet::new();
        let lemmas: Vec<String> = content_positions(poem)
            .into_iter()
            .map(|p| poem.token(p).expect("content position inside the poem").lemma.clone())
            .filter(|l| seen.insert(l.clone()))
            .collect();
        let picked: Vec<String> = lemmas.choose_multiple(rng, 2.min(lemmas.len())).cloned().collect();
        let p12 = if picked.is_empty() { Prediction::NotApplicable } else { Prediction::Disagree };
        push(12, Slots { list: picked.clone(), ..Slots::default() }, Vec::new(), true, p12);
        let p13 = if picked.len() == 2 { Prediction::Disagree } else { Prediction::NotApplicable };
        let mut it = picked.into_iter();
        let slots = Slots { x: it.next().unwrap_or_default(), y: it.next().unwrap_or_default(), ..Slots::default() };
        push(13, slots, Vec::new(), true, p13);
    } else {
        push(12, Slots { list: metaphorical, ..Slots::default() }, Vec::new(), false, Prediction::Agree);
        let best = an
            .metaphor
            .interpretations
            .iter()
            .fold(None, |best: Option<&crate::metaphor::Interpretation>, i| match best {
                Some(b) if b.score >= i.score => Some(b),
                _ => Some(i),
            })
            .expect("metaphorical words come from interpretations");
        let slots = Slots { x: best.word.clone(), y: best.vehicle.clone(), ..Slots::default() };
        push(13, slots, Vec::new(), false, Prediction::Agree);
    }

    FramingDocument {
        poem_id: poem.id.clone(),
        statements: out,
    }
}

impl FramingDocument {
    /// All highlighted positions, in poem order.
    pub fn highlights(&self) -> BTreeSet<TokenPos> {
        self.statements.iter().flat_map(|s| s.highlights.iter().copied()).collect()
    }

    /// The poem with highlighted words as `*word*`, a blank line, then the
    /// numbered statements.
    pub fn render(&self, poem: &Poem) -> String {
        let marked = self.highlights();
        let mut out = String::new();
        for (v, verse) in poem.verses.iter().enumerate() {
            if v > 0 && poem.stanza_starts.contains(&v) {
                out.push('\n');
            }
            let mut marked_verse = verse.clone();
            for (t, tok) in marked_verse.tokens.iter_mut().enumerate() {
                if marked.contains(&TokenPos::new(v, t)) {
                    tok.surface = format!("*{}*", tok.surface);
                }
            }
            out.push_str(&marked_verse.text());
            out.push('\n');
        }
        out.push('\n');
        for s in &self.statements {
            out.push_str(&format!("{}. {}\n", s.index, s.text));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FramingDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Checks count, order and filler placement; with `poem`, also that every
    /// highlight resolves to a token.
    pub fn check(&self, poem: Option<&Poem>) -> Result<()> {
        if self.statements.len() != N_STATEMENTS {
            return Err(Error::invalid(format!("{} statements, expected {N_STATEMENTS}", self.statements.len())));
        }
        for (i, s) in self.statements.iter().enumerate() {
            if s.index != i + 1 {
                return Err(Error::invalid(format!("statement {} out of order", s.index)));
            }
            if s.is_filler && !FILLER_STATEMENTS.contains(&s.index) {
                return Err(Error::invalid(format!("statement {} cannot be a filler", s.index)));
            }
            if let Some(p) = poem {
                if let Some(bad) = s.highlights.iter().find(|&&h| p.token(h).is_none()) {
                    return Err(Error::invalid(format!("statement {} highlights missing token {bad:?}", s.index)));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check(None)
    }
}

/// Answers to one statement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub statement_index: usize,
    pub agree: u32,
    pub disagree: u32,
    pub dont_know: u32,
}

impl Tally {
    pub fn majority(&self) -> Option<Prediction> {
        match self.agree.cmp(&self.disagree) {
            std::cmp::Ordering::Greater => Some(Prediction::Agree),
            std::cmp::Ordering::Less => Some(Prediction::Disagree),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn is_tie(&self) -> bool {
        self.agree == self.disagree && self.agree > 0
    }

    pub fn answers(&self) -> u32 {
        self.agree + self.disagree + self.dont_know
    }
}

/// Reads `statement_index,agree,disagree,dont_know` rows with a header.
pub fn read_judgments<R: Read>(input: R) -> Result<Vec<Tally>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in reader.deserialize() {
        let t: Tally = row?;
        if !(1..=N_STATEMENTS).contains(&t.statement_index) {
            return Err(Error::invalid(format!("statement_index {} outside 1..=13", t.statement_index)));
        }
        out.push(t);
    }
    Ok(out)
}

pub fn write_judgments<W: Write>(tallies: &[Tally], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in tallies {
        w.serialize(t)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    /// Majority matches over statements with a strict majority and an
    /// applicable prediction; `None` when there are none.
    pub accuracy: Option<f64>,
    pub majority_decisions: usize,
    /// Ties over statements that received any agree or disagree answer.
    pub tie_rate: Option<f64>,
    /// Don't-know answers over all answers.
    pub dont_know_rate: Option<f64>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Agreement of one or more documents with their tallies. Tallies are
/// matched to statements by index; a document may have several tallies per
/// statement, e.g. one per judge.
pub fn score_agreement<'a, I>(judged: I) -> Agreement
where
    I: IntoIterator<Item = (&'a FramingDocument, &'a [Tally])>,
{
    let (mut matches, mut decisions, mut ties, mut opinionated, mut dk, mut answers) = (0u64, 0u64, 0u64, 0u64, 0u64, 0u64);
    for (doc, tallies) in judged {
        let mut merged: BTreeMap<usize, Tally> = BTreeMap::new();
        for t in tallies {
            let m = merged.entry(t.statement_index).or_insert(Tally { statement_index: t.statement_index, ..Tally::default() });
            m.agree += t.agree;
            m.disagree += t.disagree;
            m.dont_know += t.dont_know;
        }
        for (index, t) in merged {
            dk += u64::from(t.dont_know);
            answers += u64::from(t.answers());
            if t.agree + t.disagree > 0 {
                opinionated += 1;
                ties += u64::from(t.is_tie());
            }
            let predicted = doc.statements.get(index - 1).map(|s| s.prediction);
            if let (Some(majority), Some(p)) = (t.majority(), predicted) {
                if p != Prediction::NotApplicable {
                    decisions += 1;
                    matches += u64::from(majority == p);
                }
            }
        }
    }
    Agreement {
        accuracy: ratio(matches, decisions),
        majority_decisions: decisions as usize,
        tie_rate: ratio(ties, opinionated),
        dont_know_rate: ratio(dk, answers),
    }
}

/// Agreement broken down by statement index, as in a per-statement chart.
pub fn score_by_statement<'a, I>(judged: I) -> Vec<(usize, Agreement)>
where
    I: IntoIterator<Item = (&'a FramingDocument, &'a [Tally])> + Clone,
{
    (1..=N_STATEMENTS)
        .map(|index| {
            let per: Vec<(&FramingDocument, Vec<Tally>)> = judged
                .clone()
                .into_iter()
                .map(|(d, ts)| (d, ts.iter().copied().filter(|t| t.statement_index == index).collect()))
                .collect();
            (index, score_agreement(per.iter().map(|(d, ts)| (*d, ts.as_slice()))))
        })
        .collect()
}
