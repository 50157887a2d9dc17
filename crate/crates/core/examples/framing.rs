//! Frames a toy poem in Finnish and English, then scores the framing against
//! a small set of made-up judgments.
//!
//!     cargo run --example framing [poem-id]

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use runomestari::aesthetics::analyze;
use runomestari::corpus::{read_corpus, stanza_poems};
use runomestari::framing::{generate_framing, read_judgments, score_agreement, Language, Templates};
use runomestari::Resources;

const JUDGMENTS: &str = "statement_index,agree,disagree,dont_know
1,4,1,0
2,2,2,1
5,1,3,1
6,0,1,4
10,3,0,2
12,1,1,3
";

fn main() -> runomestari::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "runo008-s1".into());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;
    let poem = poems
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| runomestari::Error::Invalid(format!("no poem {id}")))?;
    let analysis = analyze(poem, &res);

    for lang in [Language::Finnish, Language::English] {
        let doc = generate_framing(poem, &analysis, &Templates::builtin(lang), &mut ChaCha8Rng::seed_from_u64(1));
        println!("{}", doc.render(poem));
    }

    let doc = generate_framing(poem, &analysis, &Templates::builtin(Language::English), &mut ChaCha8Rng::seed_from_u64(1));
    for s in &doc.statements {
        println!("{:>2} {:?}{}", s.index, s.prediction, if s.is_filler { " (filler)" } else { "" });
    }
    let tallies = read_judgments(JUDGMENTS.as_bytes())?;
    let a = score_agreement([(&doc, tallies.as_slice())]);
    println!("\naccuracy {:?} over {} majority decisions, tie rate {:?}, don't-know rate {:?}", a.accuracy, a.majority_decisions, a.tie_rate, a.dont_know_rate);
    Ok(())
}
