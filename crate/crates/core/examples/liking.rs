//! Liking matrix: toy corpus eras and a plain-text poem set judged by the two
//! learned masters.
//!
//!     cargo run --example liking

use std::path::Path;

use runomestari::cli::{cmd_learn, liking_matrix};
use runomestari::corpus::{read_corpus, stanza_poems, Era};
use runomestari::lexres::split_plain_poems;
use runomestari::Resources;

const PLAIN: &str = "
Meri on syvä ja kylmä,
aalto kantaa laivaa.

Metsä kasvaa hiljaa,
vanha puu tuoksuu.
";

fn main() -> runomestari::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let mut res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;
    res.pos.observe(&poems);

    let profiles = vec![
        ("master 1800".to_string(), cmd_learn(&poems, Era(1800), 0, &res)?),
        ("master 1900".to_string(), cmd_learn(&poems, Era(1900), 0, &res)?),
    ];
    let era = |e: u16| poems.iter().filter(|p| p.era == Some(Era(e))).cloned().collect::<Vec<_>>();
    let plain = split_plain_poems(PLAIN, "plain").into_iter().map(|(id, text)| res.annotate_text(&id, &text)).collect();
    let sets = vec![
        ("corpus 1800".to_string(), era(1800)),
        ("corpus 1900".to_string(), era(1900)),
        ("plain text".to_string(), plain),
        ("empty".to_string(), Vec::new()),
    ];
    print!("{}", liking_matrix(&sets, &profiles, &res).render());
    Ok(())
}
