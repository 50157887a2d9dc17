//! One master run on the toy corpus with the default configuration: 100
//! individuals, 50 generations, a learned 1800 profile.
//!
//!     cargo run --release --example generate [theme] [seed]

use std::path::Path;

use runomestari::cli::{cmd_generate, cmd_learn};
use runomestari::corpus::{read_corpus, stanza_poems, Era};
use runomestari::{Resources, RunConfig};

fn main() -> runomestari::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let mut args = std::env::args().skip(1);
    let theme = args.next().unwrap_or_else(|| "meri".into());
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy");
    let mut res = Resources::load_dir(&dir)?;
    let poems = stanza_poems(&read_corpus(&dir.join("corpus.conllu"))?)?;
    res.pos.observe(&poems);

    let profile = cmd_learn(&poems, Era(1800), 0, &res)?;
    let cfg = RunConfig { rng_seed: seed, ..RunConfig::default() };
    let (report, result) = cmd_generate(&poems, &profile, Some(&theme), None, &cfg, &res)?;
    print!("{report}");

    let last = result.stats.last().unwrap();
    println!("{} individuals scored; {} no-op mutations in the last generation", result.scored_log.len(), last.noop_mutations);
    Ok(())
}
