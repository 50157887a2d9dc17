//! Learns the 1800 and 1900 aesthetic profiles of the toy corpus and prints
//! the learned weights and accepted ranges side by side.
//!
//!     cargo run --example learn_profile

use std::path::Path;

use runomestari::aesthetics::{learn_profile, Aesthetic, ForestParams};
use runomestari::corpus::{read_corpus, stanza_poems, Era};
use runomestari::{evaluate, Resources};

fn main() -> runomestari::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;
    let reports: Vec<_> = poems.iter().filter_map(|p| p.era.map(|e| (evaluate(p, &res), e))).collect();

    let profiles = [Era(1800), Era(1900)].map(|era| {
        let samples: Vec<_> = reports.iter().map(|(r, e)| (*r, *e == era)).collect();
        learn_profile(&samples, Some(era), 0, ForestParams::default())
    });
    let [p18, p19] = profiles;
    let (p18, p19) = (p18?, p19?);

    println!("{:<22} {:>8} {:>22}   {:>8} {:>22}", "aesthetic", "w 1800", "range 1800", "w 1900", "range 1900");
    for a in Aesthetic::ALL {
        let (g, h) = (p18.gate(a), p19.gate(a));
        println!(
            "{:<22} {:>8.3} {:>22}   {:>8.3} {:>22}",
            a.name(),
            g.weight,
            format!("[{:.3}, {:.3}]", g.lo, g.hi),
            h.weight,
            format!("[{:.3}, {:.3}]", h.lo, h.hi)
        );
    }
    Ok(())
}
