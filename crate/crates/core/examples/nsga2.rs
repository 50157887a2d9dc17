//! Non-dominated sorting, crowding distance and survivor selection on random
//! four-objective points.
//!
//!     cargo run --example nsga2

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use runomestari::moo::{crowding_distance, fast_nondominated_sort, select_survivors};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let points: Vec<[f64; 4]> = (0..200).map(|_| std::array::from_fn(|_| rng.gen())).collect();

    let fronts = fast_nondominated_sort(&points);
    println!("{} fronts; sizes of the first five: {:?}", fronts.len(), fronts.iter().take(5).map(Vec::len).collect::<Vec<_>>());

    let d = crowding_distance(&points, &fronts[0]);
    let finite: Vec<f64> = d.iter().copied().filter(|x| x.is_finite()).collect();
    println!(
        "front 0: {} boundary points, mean interior crowding {:.3}",
        d.len() - finite.len(),
        finite.iter().sum::<f64>() / finite.len().max(1) as f64
    );

    let survivors = select_survivors(&points, 100);
    let kept_front0 = fronts[0].iter().filter(|i| survivors.contains(i)).count();
    println!("kept 100 of 200; all {kept_front0} non-dominated points survive");
}
