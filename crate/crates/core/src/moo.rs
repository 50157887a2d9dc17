//! NSGA-II selection: Pareto dominance, fast non-dominated sorting, crowding
//! distance and survivor selection. Objectives are maximized. Points are
//! referred to by their index in the input slice.

/// `a` is at least as good as `b` everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strictly = true;
        }
    }
    strictly
}

/// Deb's fast non-dominated sort. Each front lists indices in ascending
/// order; front 0 is the non-dominated set.
pub fn fast_nondominated_sort<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (points[i].as_ref(), points[j].as_ref());
            if dominates(a, b) {
                dominated[i].push(j);
                counts[j] += 1;
            } else if dominates(b, a) {
                dominated[j].push(i);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated[i] {
                counts[j] -= 1;
                if counts[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each member of `front`, aligned with `front`.
/// Extreme points of every objective get infinity; objectives with zero
/// range add nothing to interior points.
pub fn crowding_distance<P: AsRef<[f64]>>(points: &[P], front: &[usize]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let m = points[front[0]].as_ref().len();
    let mut order: Vec<usize> = (0..n).collect();
    for obj in 0..m {
        let value = |k: usize| points[front[k]].as_ref()[obj];
        order.sort_by(|&x, &y| value(x).total_cmp(&value(y)).then(front[x].cmp(&front[y])));
        let (lo, hi) = (value(order[0]), value(order[n - 1]));
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..n.saturating_sub(1) {
            let gap = value(order[w + 1]) - value(order[w - 1]);
            dist[order[w]] += gap / range;
        }
    }
    dist
}

/// Front rank and crowding distance of every point, for crowded-comparison
/// tournaments.
pub fn rank_and_crowding<P: AsRef<[f64]>>(points: &[P]) -> (Vec<usize>, Vec<f64>) {
    let mut rank = vec![0; points.len()];
    let mut crowd = vec![0.0; points.len()];
    for (r, front) in fast_nondominated_sort(points).iter().enumerate() {
        for (&i, d) in front.iter().zip(crowding_distance(points, front)) {
            rank[i] = r;
            crowd[i] = d;
        }
    }
    (rank, crowd)
}

/// `a` wins the crowded comparison against `b`: lower rank, or equal rank and
/// larger crowding distance.
pub fn crowded_better(rank: &[usize], crowd: &[f64], a: usize, b: usize) -> bool {
    rank[a] < rank[b] || (rank[a] == rank[b] && crowd[a] > crowd[b])
}

/// Picks `k` survivors: whole fronts in order, then the most crowding-distant
/// members of the first front that does not fit. Equal distances keep input
/// order.
pub fn select_survivors<P: AsRef<[f64]>>(points: &[P], k: usize) -> Vec<usize> {
    assert!(k <= points.len(), "cannot select {k} of {} points", points.len());
    let mut chosen = Vec::with_capacity(k);
    for front in fast_nondominated_sort(points) {
        let room = k - chosen.len();
        if room == 0 {
            break;
        }
        if front.len() <= room {
            chosen.extend(front);
            continue;
        }
        let dist = crowding_distance(points, &front);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&x, &y| dist[y].total_cmp(&dist[x]).then(front[x].cmp(&front[y])));
        chosen.extend(order[..room].iter().map(|&x| front[x]));
    }
    chosen
}
