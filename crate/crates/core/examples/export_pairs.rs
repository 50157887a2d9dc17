//! Runs the master a few times with a small configuration and writes the
//! seed/output verse pairs as JSON lines to stdout.
//!
//!     cargo run --release --example export_pairs > pairs.jsonl

use std::path::Path;

use runomestari::cli::{cmd_export_pairs, cmd_learn};
use runomestari::corpus::{read_corpus, stanza_poems, Era};
use runomestari::master::write_pairs;
use runomestari::{Resources, RunConfig};

fn main() -> runomestari::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let mut res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;
    res.pos.observe(&poems);

    let profile = cmd_learn(&poems, Era(1900), 0, &res)?;
    let cfg = RunConfig { population_size: 30, offspring_size: 30, generations: 10, rng_seed: 2, ..RunConfig::default() };
    let pairs = cmd_export_pairs(&poems, &profile, 4, &cfg, &res)?;
    write_pairs(&pairs, std::io::stdout().lock())?;
    eprintln!("{} verse pairs", pairs.len());
    Ok(())
}
