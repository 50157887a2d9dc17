#![allow(dead_code)]

use std::path::{Path, PathBuf};

use runomestari::corpus::{read_corpus, stanza_poems, Poem};
use runomestari::Resources;

pub fn toy_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy")
}

pub fn toy_corpus_path() -> PathBuf {
    toy_dir().join("corpus.conllu")
}

/// Toy resources with corpus POS tags folded in, and the stanza-poems.
pub fn toy() -> (Resources, Vec<Poem>) {
    let mut res = Resources::load_dir(&toy_dir()).expect("toy resources load");
    let poems = stanza_poems(&read_corpus(&toy_corpus_path()).expect("toy corpus parses")).unwrap();
    res.pos.observe(&poems);
    (res, poems)
}

/// Linear-interpolation percentile written out longhand.
pub fn percentile_oracle(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (v.len() - 1) as f64 * q;
    let below = h.floor();
    let frac = h - below;
    let i = below as usize;
    if i + 1 < v.len() {
        v[i] + frac * (v[i + 1] - v[i])
    } else {
        v[i]
    }
}
