//! Syllabification, rhyme families and meter of a short poem.
//!
//!     cargo run --example phonology

use runomestari::corpus::{Poem, Token, Verse};
use runomestari::sonic::{self, assonance, consonance, full_rhyme, syllabify};

fn verse(text: &str) -> Verse {
    Verse::new(text.split_whitespace().map(|w| Token::new(w, &w.to_lowercase(), "NOUN")).collect())
}

fn main() {
    for w in ["vanha", "metsässä", "taivaaseen", "kauan", "strategia"] {
        let s = syllabify(w).unwrap();
        let weights: String = s.weights.iter().map(|w| if *w == sonic::Weight::Long { 'L' } else { 'S' }).collect();
        println!("{w:<12} {:<16} {weights}", s.hyphenated());
    }

    println!();
    for (a, b) in [("heikko", "peikko"), ("talo", "sano"), ("sakko", "sokka"), ("talo", "kivi")] {
        println!(
            "{a}/{b}: rhyme {} assonance {} consonance {}",
            full_rhyme(a, b),
            assonance(a, b),
            consonance(a, b)
        );
    }

    let poem = Poem::new("example", vec![verse("Heikko vanha vesi"), verse("peikko sano talo"), verse("sakko sokka")]);
    let report = sonic::analyze(&poem);
    println!("\n{}\n", poem.text());
    println!("inter-verse counts: {:?}", report.counts);
    println!("alliteration pairs: {}", report.alliteration_count);
    println!("syllables per verse: {:?}", report.meter.syllable_counts);
    println!("long-syllable ratio: {:.3}", report.meter.long_ratio);
}
