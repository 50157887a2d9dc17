//! Command-line surface: `learn`, `generate`, `frame`, `like` and
//! `export-pairs`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aesthetics::{analyze, evaluate, learn_profile, AestheticProfile, ForestParams};
use crate::corpus::{read_corpus, stanza_poems, Era, Poem};
use crate::error::{Error, Result};
use crate::framing::{generate_framing, Language, Templates};
use crate::lexres::{split_plain_poems, Resources};
use crate::master::{choose_output, export_pairs, run, write_pairs, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "runo", version, about = "Finnish poem master: learn, generate, frame, like, export-pairs")]
pub struct Cli {
    /// Random seed; overrides `rng_seed` from --config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for scoring; defaults to available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory with embeddings.txt, ngrams.tsv and the lexicons.
    #[arg(long, global = true, default_value = "data/toy")]
    pub resources: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lang {
    Fi,
    En,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn an era profile from a labelled corpus.
    Learn {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        era: Era,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Evolve a corpus poem under a profile.
    Generate {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        /// Theme lemma; a random vocabulary word when omitted.
        #[arg(long)]
        theme: Option<String>,
        /// Stanza-poem id to start from; a random one when omitted.
        #[arg(long)]
        poem_id: Option<String>,
        /// Write the full run (population, statistics) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Frame a poem with the thirteen statements.
    #[command(group = clap::ArgGroup::new("source").required(true).args(["poem", "poem_id"]))]
    Frame {
        /// Plain-text poem, one verse per line.
        #[arg(long)]
        poem: Option<PathBuf>,
        #[arg(long, requires = "corpus")]
        poem_id: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Lang::Fi)]
        lang: Lang,
        /// JSON sidecar with spans, predictions and filler flags.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Liking matrix of poem sets against profiles.
    Like {
        /// Poem sets: `.conllu` corpora or plain text with blank-line separated poems.
        #[arg(long = "poems", required = true, num_args = 1..)]
        poems: Vec<PathBuf>,
        #[arg(long = "profile", required = true, num_args = 1..)]
        profiles: Vec<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the master repeatedly and write verse pairs as JSON lines.
    ExportPairs {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
}

/// Outcome of a successful command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub report: String,
    pub outputs: Vec<PathBuf>,
}

/// Runs `runo` on `args` (program name first), printing the report or error.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(result) => {
            print!("{}", result.report);
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DATA
        }
    }
}

pub fn execute(cli: &Cli) -> Result<CommandResult> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn run_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_json(&read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.rng_seed = seed;
    }
    Ok(cfg)
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}

fn load_corpus(path: &Path, res: &mut Resources) -> Result<Vec<Poem>> {
    let poems = stanza_poems(&read_corpus(path)?)?;
    if poems.is_empty() {
        return Err(Error::invalid(format!("{} contains no poems", path.display())));
    }
    res.pos.observe(&poems);
    Ok(poems)
}

/// Reads a CoNLL-U corpus (by `.conllu` extension) or plain-text poems.
pub fn load_poem_set(path: &Path, res: &Resources) -> Result<Vec<Poem>> {
    if path.extension().is_some_and(|e| e == "conllu") {
        return stanza_poems(&read_corpus(path)?);
    }
    let prefix = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(split_plain_poems(&read_to_string(path)?, &prefix)
        .into_iter()
        .map(|(id, text)| res.annotate_text(&id, &text))
        .collect())
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    let mut res = Resources::load_dir(&cli.resources)?;
    match &cli.command {
        Command::Learn { corpus, era, out } => {
            let poems = load_corpus(corpus, &mut res)?;
            let seed = run_config(cli)?.rng_seed;
            let profile = cmd_learn(&poems, *era, seed, &res)?;
            profile.save(out)?;
            Ok(CommandResult {
                report: format!("{}\nwrote {}\n", describe_profile(&profile), out.display()),
                outputs: vec![out.clone()],
            })
        }
        Command::Generate { corpus, profile, theme, poem_id, json } => {
            let poems = load_corpus(corpus, &mut res)?;
            let profile = AestheticProfile::load(profile)?;
            let cfg = run_config(cli)?;
            let (report, result) = cmd_generate(&poems, &profile, theme.as_deref(), poem_id.as_deref(), &cfg, &res)?;
            let mut outputs = Vec::new();
            if let Some(path) = json {
                write_file(path, serde_json::to_string_pretty(&result)?.as_bytes())?;
                outputs.push(path.clone());
            }
            Ok(CommandResult { report, outputs })
        }
        Command::Frame { poem, poem_id, corpus, lang, json } => {
            let target = match (poem, poem_id, corpus) {
                (Some(path), _, _) => {
                    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    res.annotate_text(&id, &read_to_string(path)?)
                }
                (None, Some(id), Some(corpus)) => find_poem(&load_corpus(corpus, &mut res)?, id)?.clone(),
                _ => return Err(Error::invalid("frame needs --poem or --corpus with --poem-id")),
            };
            let lang = match lang {
                Lang::Fi => Language::Finnish,
                Lang::En => Language::English,
            };
            let seed = run_config(cli)?.rng_seed;
            let (text, sidecar) = cmd_frame(&target, lang, seed, &res)?;
            let mut outputs = Vec::new();
            if let Some(path) = json {
                write_file(path, sidecar.as_bytes())?;
                outputs.push(path.clone());
            }
            Ok(CommandResult { report: text, outputs })
        }
        Command::Like { poems, profiles, json } => {
            let sets = poems
                .iter()
                .map(|p| Ok((p.display().to_string(), load_poem_set(p, &res)?)))
                .collect::<Result<Vec<_>>>()?;
            let profiles = profiles
                .iter()
                .map(|p| Ok((p.display().to_string(), AestheticProfile::load(p)?)))
                .collect::<Result<Vec<_>>>()?;
            let matrix = liking_matrix(&sets, &profiles, &res);
            let mut outputs = Vec::new();
            if let Some(path) = json {
                write_file(path, serde_json::to_string_pretty(&matrix)?.as_bytes())?;
                outputs.push(path.clone());
            }
            Ok(CommandResult { report: matrix.render(), outputs })
        }
        Command::ExportPairs { corpus, profile, runs, out } => {
            let poems = load_corpus(corpus, &mut res)?;
            let profile = AestheticProfile::load(profile)?;
            let cfg = run_config(cli)?;
            let records = cmd_export_pairs(&poems, &profile, *runs, &cfg, &res)?;
            let mut buf = Vec::new();
            write_pairs(&records, &mut buf)?;
            write_file(out, &buf)?;
            Ok(CommandResult {
                report: format!("{} runs, {} verse pairs written to {}\n", runs, records.len(), out.display()),
                outputs: vec![out.clone()],
            })
        }
    }
}

fn find_poem<'a>(poems: &'a [Poem], id: &str) -> Result<&'a Poem> {
    poems
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| Error::invalid(format!("no poem with id {id:?}")))
}

fn describe_profile(p: &AestheticProfile) -> String {
    let mut s = format!("profile for era {}\n", p.era.map_or("-".to_string(), |e| e.to_string()));
    for a in crate::aesthetics::Aesthetic::ALL {
        let g = p.gate(a);
        let _ = writeln!(s, "  {:<22} weight {:.4}  range [{}, {}]", a.name(), g.weight, g.lo, g.hi);
    }
    s
}

/// Learns a profile for `era` against every other labelled era. Unlabelled
/// poems are skipped.
pub fn cmd_learn(poems: &[Poem], era: Era, seed: u64, res: &Resources) -> Result<AestheticProfile> {
    let labelled: Vec<&Poem> = poems.iter().filter(|p| p.era.is_some()).collect();
    if !labelled.iter().any(|p| p.era == Some(era)) {
        return Err(Error::invalid(format!("no poems labelled with era {era}")));
    }
    let samples: Vec<_> = labelled
        .par_iter()
        .map(|p| (evaluate(p, res), p.era == Some(era)))
        .collect();
    learn_profile(&samples, Some(era), seed, ForestParams::default())
}

fn pick_theme(res: &Resources, rng: &mut ChaCha8Rng) -> Result<String> {
    res.embeddings
        .words()
        .choose(rng)
        .cloned()
        .ok_or_else(|| Error::invalid("embedding vocabulary is empty"))
}

/// One master run. Returns a deterministic text report and the full result.
pub fn cmd_generate(
    poems: &[Poem],
    profile: &AestheticProfile,
    theme: Option<&str>,
    poem_id: Option<&str>,
    cfg: &RunConfig,
    res: &Resources,
) -> Result<(String, crate::master::RunResult)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let seed_poem = match poem_id {
        Some(id) => find_poem(poems, id)?,
        None => poems.choose(&mut rng).ok_or_else(|| Error::invalid("empty corpus"))?,
    };
    let theme = match theme {
        Some(t) => t.to_string(),
        None => pick_theme(res, &mut rng)?,
    };
    let result = run(seed_poem, &theme, cfg, profile, res, &mut rng)?;
    let chosen = choose_output(&result.population, &mut rng).expect("population is never empty");
    let f = chosen.fitness;
    let mut report = String::new();
    let _ = writeln!(report, "seed poem {} | theme {} | {} generations", seed_poem.id, theme, cfg.generations);
    let _ = writeln!(report, "\nseed:\n{}\n\noutput:\n{}\n", seed_poem.text(), chosen.individual.poem.text());
    let _ = writeln!(
        report,
        "fitness sonic {:.4} semantic {:.4} imagerial {:.4} metaphorical {:.4} | liked: {}",
        f.sonic,
        f.semantic,
        f.imagerial,
        f.metaphorical,
        if chosen.liked { "yes" } else { "no" }
    );
    let liked = result.population.iter().filter(|s| s.liked).count();
    let _ = writeln!(report, "{liked}/{} of the final population liked", result.population.len());
    Ok((report, result))
}

/// Framing text and its JSON sidecar.
pub fn cmd_frame(poem: &Poem, lang: Language, seed: u64, res: &Resources) -> Result<(String, String)> {
    poem.validate()?;
    let an = analyze(poem, res);
    let doc = generate_framing(poem, &an, &Templates::builtin(lang), &mut ChaCha8Rng::seed_from_u64(seed));
    Ok((doc.render(poem), doc.to_json()?))
}

/// `runs` master runs from random poems and themes, each contributing the
/// verse pairs of its chosen output.
pub fn cmd_export_pairs(
    poems: &[Poem],
    profile: &AestheticProfile,
    runs: usize,
    cfg: &RunConfig,
    res: &Resources,
) -> Result<Vec<crate::master::PairRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut pairs = Vec::with_capacity(runs);
    for i in 0..runs {
        let seed_poem = poems.choose(&mut rng).ok_or_else(|| Error::invalid("empty corpus"))?;
        let theme = pick_theme(res, &mut rng)?;
        log::info!("export run {}/{runs}: {} on {theme}", i + 1, seed_poem.id);
        let result = run(seed_poem, &theme, cfg, profile, res, &mut rng)?;
        let chosen = choose_output(&result.population, &mut rng).expect("population is never empty");
        pairs.push((seed_poem.clone(), chosen.individual.poem.clone()));
    }
    Ok(export_pairs(&pairs, profile.era))
}

/// Liked counts of poem sets (rows) under profiles (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikingMatrix {
    pub profiles: Vec<String>,
    pub rows: Vec<LikingRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikingRow {
    pub source: String,
    pub poems: usize,
    pub liked: Vec<usize>,
}

impl LikingRow {
    /// Liked percentage under profile `j`, `None` for an empty set.
    pub fn percent(&self, j: usize) -> Option<f64> {
        (self.poems > 0).then(|| 100.0 * self.liked[j] as f64 / self.poems as f64)
    }
}

impl LikingMatrix {
    pub fn render(&self) -> String {
        let mut s = String::from("poems");
        for p in &self.profiles {
            let _ = write!(s, "\t{p}");
        }
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.source);
            for (j, liked) in row.liked.iter().enumerate() {
                match row.percent(j) {
                    Some(pct) => {
                        let _ = write!(s, "\t{liked}/{} ({pct:.1}%)", row.poems);
                    }
                    None => s.push_str("\tn/a"),
                }
            }
            s.push('\n');
        }
        s
    }
}

pub fn liking_matrix(sets: &[(String, Vec<Poem>)], profiles: &[(String, AestheticProfile)], res: &Resources) -> LikingMatrix {
    let rows = sets
        .iter()
        .map(|(source, poems)| {
            let reports: Vec<_> = poems.par_iter().map(|p| evaluate(p, res)).collect();
            let liked = profiles
                .iter()
                .map(|(_, prof)| reports.iter().filter(|r| prof.fitness(r).liked()).count())
                .collect();
            LikingRow {
                source: source.clone(),
                poems: poems.len(),
                liked,
            }
        })
        .collect();
    LikingMatrix {
        profiles: profiles.iter().map(|(name, _)| name.clone()).collect(),
        rows,
    }
}
