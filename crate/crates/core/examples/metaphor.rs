//! Tenor/vehicle metaphoricity over the cluster topics of toy poems.
//!
//!     cargo run --example metaphor

use std::path::Path;

use runomestari::corpus::{read_corpus, stanza_poems};
use runomestari::lexres::Resources;
use runomestari::metaphor::{metaphor_aesthetics, metaphoricity};
use runomestari::semfields::cluster_poem;

fn main() -> runomestari::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;

    let mut shown = 0;
    for poem in &poems {
        let fields = cluster_poem(poem, &res.embeddings);
        let m = metaphor_aesthetics(poem, &fields, &res.relatedness);
        if m.n_metaphorical == 0 {
            continue;
        }
        println!("{}: {} of {} topic pairs metaphorical, max {:.3}", poem.id, m.n_metaphorical, m.pairs_inspected, m.max_metaphoricity);
        for i in m.interpretations.iter().take(3) {
            let back = metaphoricity(&i.word, &i.vehicle, &i.tenor, &res.relatedness);
            println!("  {} links tenor {} to vehicle {}: {:.3} (reversed {:.3})", i.word, i.tenor, i.vehicle, i.score, back);
        }
        shown += 1;
        if shown == 3 {
            break;
        }
    }
    Ok(())
}
