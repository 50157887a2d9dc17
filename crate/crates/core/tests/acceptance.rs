//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use runomestari::aesthetics::{analyze, gate, learn_profile, Aesthetic, AestheticReport, ForestParams, Group};
use runomestari::corpus::{Era, Poem, Token, Verse};
use runomestari::framing::{generate_framing, score_agreement, FramingDocument, Language, Prediction, Statement, Tally, Templates, FILLER_STATEMENTS};
use runomestari::lexres::EmbeddingStore;
use runomestari::master::{run, RunConfig, RunResult};
use runomestari::moo::{fast_nondominated_sort, select_survivors};
use runomestari::semfields::cluster_poem;
use runomestari::sonic::{alliteration_count, assonance, consonance, full_rhyme};
use runomestari::{AestheticProfile, Resources};

fn within(limit: Duration, start: Instant, what: &str) {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, limit {limit:?}");
}

fn phonology() {
    let start = Instant::now();
    assert!(full_rhyme("heikko", "peikko"), "heikko/peikko");
    assert!(assonance("talo", "sano"), "talo/sano");
    assert!(consonance("sakko", "sokka"), "sakko/sokka");
    assert!(consonance("jo", "ja"), "jo/ja");
    assert!(consonance("en", "on"), "en/on");
    let verse = Verse::new(vec![Token::new("vanha", "vanha", "ADJ"), Token::new("vesi", "vesi", "NOUN")]);
    assert_eq!(alliteration_count(&verse), 1, "vanha vesi");
    within(Duration::from_secs(1), start, "phonology goldens");
}

/// Pareto fronts by peeling off the points no remaining point dominates.
fn peel_fronts(points: &[[f64; 4]]) -> Vec<Vec<usize>> {
    let dom = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).all(|(x, y)| x >= y) && a != b;
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left.iter().copied().filter(|&i| !left.iter().any(|&j| dom(&points[j], &points[i]))).collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

fn nsga2_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    for trial in 0..20 {
        // coarse grid in half the trials so ties and duplicates occur
        let coarse = trial % 2 == 0;
        let mut draw = |n: usize| -> Vec<[f64; 4]> {
            (0..n)
                .map(|_| std::array::from_fn(|_| if coarse { f64::from(rng.gen_range(0u8..5)) } else { rng.gen() }))
                .collect()
        };
        let pts = draw(100);
        assert_eq!(fast_nondominated_sort(&pts), peel_fronts(&pts), "trial {trial}: fronts differ from oracle");

        let pts = draw(200);
        let chosen: BTreeSet<usize> = select_survivors(&pts, 100).into_iter().collect();
        assert_eq!(chosen.len(), 100);
        let front0 = &peel_fronts(&pts)[0];
        if front0.len() <= 100 {
            assert!(front0.iter().all(|i| chosen.contains(i)), "trial {trial}: survivor set misses a non-dominated point");
        }
    }
    within(Duration::from_secs(1), start, "NSGA-II oracle");
}

fn gating_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..1000 {
        let a: f64 = rng.gen_range(-5.0..5.0);
        let b: f64 = rng.gen_range(-5.0..5.0);
        let (lo, hi) = (a.min(b), a.max(b));
        let w: f64 = rng.gen();
        // a third of the values sit exactly on a boundary
        let v = match rng.gen_range(0..3) {
            0 => [lo, hi][rng.gen_range(0..2)],
            _ => rng.gen_range(-6.0..6.0),
        };
        let expected = if v < lo || v > hi { 0.0 } else { w * v };
        assert_eq!(gate(v, lo, hi, w).to_bits(), expected.to_bits(), "gate({v}, {lo}, {hi}, {w})");
    }
}

fn weight_learning() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut wins = 0;
    for trial in 0..100 {
        let separating: Vec<Aesthetic> = Group::ALL
            .iter()
            .map(|g| *g.members().collect::<Vec<_>>().choose(&mut rng).unwrap())
            .collect();
        let samples: Vec<(AestheticReport, bool)> = (0..40)
            .map(|i| {
                let target = i % 2 == 0;
                let report = AestheticReport::from_fn(|a| {
                    let noise: f64 = rng.gen();
                    if separating.contains(&a) {
                        if target { 2.0 + noise } else { noise }
                    } else {
                        noise * 3.0
                    }
                });
                (report, target)
            })
            .collect();
        let profile = learn_profile(&samples, Some(Era(1800)), trial, ForestParams::default()).unwrap();

        let all_win = separating.iter().all(|&s| {
            s.group().members().filter(|&a| a != s).all(|a| profile.gate(s).weight > profile.gate(a).weight)
        });
        wins += usize::from(all_win);

        for a in Aesthetic::ALL {
            let target: Vec<f64> = samples.iter().filter(|s| s.1).map(|s| s.0.get(a)).collect();
            let g = profile.gate(a);
            assert!((g.lo - common::percentile_oracle(&target, 0.25)).abs() < 1e-9, "{} P25", a.name());
            assert!((g.hi - common::percentile_oracle(&target, 0.75)).abs() < 1e-9, "{} P75", a.name());
        }
    }
    assert!(wins >= 95, "separating aesthetic won in only {wins}/100 trials");
}

fn blob_store(rng: &mut ChaCha8Rng, centers: &[Vec<f64>], per: usize, spread: f64) -> (EmbeddingStore, Vec<String>) {
    let mut pairs = Vec::new();
    for (c, center) in centers.iter().enumerate() {
        for i in 0..per {
            let v: Vec<f64> = center.iter().map(|x| x + rng.gen_range(-spread..spread)).collect();
            pairs.push((format!("w{c}x{i}"), v));
        }
    }
    let words = pairs.iter().map(|p| p.0.clone()).collect();
    (EmbeddingStore::from_pairs(pairs).unwrap(), words)
}

fn poem_of(words: &[String]) -> Poem {
    Poem::new("blobs", vec![Verse::new(words.iter().map(|w| Token::new(w, w, "NOUN")).collect())])
}

fn partition(clusters: &[Vec<String>]) -> BTreeSet<BTreeSet<String>> {
    clusters.iter().map(|c| c.iter().cloned().collect()).collect()
}

fn clustering() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let axis = |k: usize| -> Vec<f64> { (0..8).map(|i| if i == k { 1.0 } else { 0.0 }).collect() };
    let (store, words) = blob_store(&mut rng, &[axis(0), axis(5)], 10, 0.15);
    let fields = cluster_poem(&poem_of(&words), &store);
    let expected: BTreeSet<BTreeSet<String>> =
        [words[..10].iter().cloned().collect(), words[10..].iter().cloned().collect()].into_iter().collect();
    assert_eq!(fields.len(), 2, "two blobs");
    assert_eq!(partition(&fields.clusters), expected, "blob membership");

    let same: Vec<(String, Vec<f64>)> = (0..6).map(|i| (format!("s{i}"), vec![0.3, -1.0, 2.0])).collect();
    let names: Vec<String> = same.iter().map(|p| p.0.clone()).collect();
    let store1 = EmbeddingStore::from_pairs(same).unwrap();
    assert_eq!(cluster_poem(&poem_of(&names), &store1).len(), 1, "repeated vector");

    let (store3, words3) = blob_store(&mut rng, &[axis(0), axis(3), axis(6)], 6, 0.3);
    let base = partition(&cluster_poem(&poem_of(&words3), &store3).clusters);
    for i in 0..20 {
        let mut shuffled = words3.clone();
        shuffled.shuffle(&mut rng);
        let got = partition(&cluster_poem(&poem_of(&shuffled), &store3).clusters);
        assert_eq!(got, base, "shuffle {i}");
    }
}

struct ToyRun {
    res: Resources,
    profile: AestheticProfile,
    seed_poem: Poem,
    result: RunResult,
}

fn toy_profile(res: &Resources, poems: &[Poem]) -> AestheticProfile {
    let samples: Vec<_> = poems
        .iter()
        .filter_map(|p| p.era.map(|e| (runomestari::evaluate(p, res), e == Era(1800))))
        .collect();
    learn_profile(&samples, Some(Era(1800)), 0, ForestParams::default()).unwrap()
}

fn end_to_end(slot: &mut Option<ToyRun>) {
    let start = Instant::now();
    let (res, poems) = common::toy();
    assert!(poems.len() >= 20, "toy corpus has {} stanza-poems", poems.len());
    assert!(res.embeddings.len() >= 200, "toy embeddings have {} words", res.embeddings.len());
    let profile = toy_profile(&res, &poems);
    let cfg = RunConfig::default();
    assert_eq!((cfg.population_size, cfg.generations), (100, 50));

    let seed_poem = poems.iter().find(|p| p.id == "runo008-s1").unwrap().clone();
    let go = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run(&seed_poem, "meri", &cfg, &profile, &res, &mut ChaCha8Rng::seed_from_u64(1)).unwrap())
    };
    let result = go(0);
    within(Duration::from_secs(300), start, "default-config toy run");
    let again = go(1);
    assert_eq!(
        serde_json::to_string(&result).unwrap(),
        serde_json::to_string(&again).unwrap(),
        "same seed, different thread counts"
    );

    assert_eq!(result.population.len(), 100);
    for s in &result.population {
        let poem = &s.individual.poem;
        assert_eq!(poem.verses.len(), seed_poem.verses.len(), "verse count");
        for (v, (got, orig)) in poem.verses.iter().zip(&seed_poem.verses).enumerate() {
            assert_eq!(got.tokens.len(), orig.tokens.len(), "verse {v} length");
            for (a, b) in got.tokens.iter().zip(&orig.tokens) {
                assert_eq!(a.pos, b.pos, "POS changed at {} -> {}", b.surface, a.surface);
                if a.lemma != b.lemma {
                    assert!(res.pos.has(&a.lemma, &b.pos), "{} is not a {}", a.lemma, b.pos.as_str());
                }
            }
        }
    }
    *slot = Some(ToyRun { res, profile, seed_poem, result });
}

fn liking_consistency(toy: &ToyRun) {
    let mut checked = 0;
    for s in &toy.result.population {
        let report = runomestari::evaluate(&s.individual.poem, &toy.res);
        let mut sums = [0.0f64; 4];
        for (i, g) in Group::ALL.iter().enumerate() {
            for a in g.members() {
                let p = toy.profile.gate(a);
                let v = report.get(a);
                if p.lo <= v && v <= p.hi {
                    sums[i] += p.weight * v;
                }
            }
        }
        let liked = sums.iter().all(|&x| x > 0.0);
        assert_eq!(s.liked, liked, "liked flag of {:?}", s.individual.poem.text());
        checked += 1;
    }
    assert_eq!(checked, toy.result.population.len());
}

fn doc_with(preds: &[Prediction]) -> FramingDocument {
    FramingDocument {
        poem_id: "hand".into(),
        statements: preds
            .iter()
            .enumerate()
            .map(|(i, &prediction)| Statement { index: i + 1, text: String::new(), highlights: Vec::new(), is_filler: false, prediction })
            .collect(),
    }
}

fn framing(toy: &ToyRun) {
    let (_, poems) = common::toy();
    let templates = Templates::builtin(Language::Finnish);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let generated = toy.result.population.iter().map(|s| &s.individual.poem);
    for poem in poems.iter().chain(generated).chain(std::iter::once(&toy.seed_poem)) {
        let doc = generate_framing(poem, &analyze(poem, &toy.res), &templates, &mut rng);
        assert_eq!(doc.statements.len(), 13, "{}", poem.id);
        for (i, s) in doc.statements.iter().enumerate() {
            assert_eq!(s.index, i + 1);
            for h in &s.highlights {
                assert!(poem.token(*h).is_some(), "{}: statement {} highlight {h:?} missing", poem.id, s.index);
            }
            if s.is_filler {
                assert!(FILLER_STATEMENTS.contains(&s.index), "{}: filler on statement {}", poem.id, s.index);
            }
        }
    }

    use Prediction::*;
    let doc = doc_with(&[Agree, Agree, Disagree, Agree, Disagree, Agree, Agree, Agree, Agree, Agree, Disagree, Disagree, Agree]);
    let t = |i, a, d, k| Tally { statement_index: i, agree: a, disagree: d, dont_know: k };
    let tallies = [
        t(1, 5, 0, 0), // match
        t(2, 1, 3, 1), // miss
        t(3, 0, 4, 1), // match
        t(4, 2, 2, 1), // tie
        t(5, 0, 0, 5), // no opinion
        t(6, 1, 0, 4), // match
    ];
    let a = score_agreement([(&doc, &tallies[..])]);
    assert_eq!(a.majority_decisions, 4);
    assert_eq!(a.accuracy, Some(3.0 / 4.0));
    assert_eq!(a.tie_rate, Some(1.0 / 5.0));
    assert_eq!(a.dont_know_rate, Some(12.0 / 30.0));
}

fn main() {
    let mut failures = 0;
    let mut check = |name: &str, f: &mut dyn FnMut()| {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(()) => println!("PASS  {name} ({:.2?})", start.elapsed()),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  {name}: {msg}");
                failures += 1;
            }
        }
    };
    std::panic::set_hook(Box::new(|_| {}));

    let mut toy = None;
    check("phonology golden suite", &mut phonology);
    check("NSGA-II oracle equivalence", &mut nsga2_oracle);
    check("gating law", &mut gating_law);
    check("weight learning", &mut weight_learning);
    check("clustering", &mut clustering);
    check("end-to-end generate", &mut || end_to_end(&mut toy));
    match &toy {
        Some(t) => {
            check("liking consistency", &mut || liking_consistency(t));
            check("framing", &mut || framing(t));
        }
        None => {
            check("liking consistency", &mut || panic!("no toy run to check"));
            check("framing", &mut || panic!("no toy run to check"));
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
