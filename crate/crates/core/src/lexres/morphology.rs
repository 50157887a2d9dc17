//! Morphological generation behind a provider trait.
//!
//! [`TableMorphology`] is a lookup table keyed by lemma and canonical tag set.
//! A transducer-backed generator can implement [`MorphologyProvider`] instead.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::corpus::MorphTags;
use crate::error::{Error, Result};

use super::lexicons::read_tsv_pairs;

pub trait MorphologyProvider: Send + Sync {
    /// Inflects `lemma` with `tags`. `None` means the form cannot be produced;
    /// implementations never fall back to the bare lemma for unknown tags.
    fn realize(&self, lemma: &str, tags: &MorphTags) -> Option<String>;

    /// Inflects a direct object of `governor`, letting the verb's case
    /// government override the object's case.
    fn realize_object(&self, lemma: &str, tags: &MorphTags, governor: Option<&str>) -> Option<String> {
        let _ = governor;
        self.realize(lemma, tags)
    }

    /// Possible (lemma, tags) readings of a surface form.
    fn analyze(&self, surface: &str) -> Vec<(String, MorphTags)> {
        let _ = surface;
        Vec::new()
    }
}

#[derive(Debug, Clone, Default)]
pub struct TableMorphology {
    forms: HashMap<(String, String), String>,
    readings: HashMap<String, Vec<(String, MorphTags)>>,
    /// Verb lemma → case its object takes.
    government: HashMap<String, String>,
}

impl TableMorphology {
    pub fn insert(&mut self, lemma: &str, tags: &MorphTags, surface: &str) {
        self.forms
            .insert((lemma.to_string(), tags.canonical()), surface.to_string());
        let readings = self.readings.entry(surface.to_lowercase()).or_default();
        if !readings
            .iter()
            .any(|(l, t)| l == lemma && t.canonical() == tags.canonical())
        {
            readings.push((lemma.to_string(), tags.clone()));
        }
    }

    pub fn set_government(&mut self, verb: &str, case: &str) {
        self.government.insert(verb.to_string(), case.to_string());
    }

    /// Reads `lemma<TAB>tags<TAB>surface` lines.
    pub fn parse<R: BufRead>(input: R, source_name: &str) -> Result<Self> {
        let mut table = Self::default();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    "expected lemma<TAB>tags<TAB>surface",
                ));
            }
            let tags = MorphTags::parse(cols[1]).map_err(|m| Error::parse(source_name, i + 1, m))?;
            table.insert(cols[0], &tags, cols[2]);
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(crate::error::open(path)?, &path.display().to_string())
    }

    /// Reads `verb<TAB>Case` lines into the government map.
    pub fn load_government(&mut self, path: &Path) -> Result<()> {
        let name = path.display().to_string();
        for (_, verb, case) in read_tsv_pairs(crate::error::open(path)?, &name)? {
            self.set_government(&verb, &case);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

impl MorphologyProvider for TableMorphology {
    fn realize(&self, lemma: &str, tags: &MorphTags) -> Option<String> {
        if tags.is_empty() {
            return Some(lemma.to_string());
        }
        self.forms
            .get(&(lemma.to_string(), tags.canonical()))
            .cloned()
    }

    fn realize_object(&self, lemma: &str, tags: &MorphTags, governor: Option<&str>) -> Option<String> {
        match governor.and_then(|v| self.government.get(v)) {
            Some(case) if tags.get("Case").is_some() => {
                let mut governed = tags.clone();
                governed.set("Case", case);
                self.realize(lemma, &governed)
            }
            _ => self.realize(lemma, tags),
        }
    }

    fn analyze(&self, surface: &str) -> Vec<(String, MorphTags)> {
        self.readings
            .get(&surface.to_lowercase())
            .cloned()
            .unwrap_or_default()
    }
}
