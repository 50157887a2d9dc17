//! Semantic fields of a toy corpus poem: affinity propagation over lemma
//! embeddings, cluster topics and distances.
//!
//!     cargo run --example clustering

use std::path::Path;

use runomestari::corpus::{read_corpus, stanza_poems};
use runomestari::lexres::Resources;
use runomestari::semfields::{cluster_poem, semantic_aesthetics};

fn main() -> runomestari::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;

    for poem in poems.iter().filter(|p| ["runo002-s1", "runo020-s1"].contains(&p.id.as_str())) {
        println!("{}\n{}\n", poem.id, poem.text());
        let fields = cluster_poem(poem, &res.embeddings);
        for (c, (members, topic)) in fields.clusters.iter().zip(&fields.topics).enumerate() {
            println!("  field {c} (topic {topic}): {}", members.join(", "));
        }
        if let Some(((a, b, near), (c, d, far))) = fields.extreme_pairs() {
            println!("  closest fields {a} and {b} at {near:.3}, furthest {c} and {d} at {far:.3}");
        }
        let s = semantic_aesthetics(&fields);
        println!("  clusters {} mean distance {:.3} max distance {:.3}\n", s.n_clusters, s.avg_distance, s.max_distance);
    }
    Ok(())
}
