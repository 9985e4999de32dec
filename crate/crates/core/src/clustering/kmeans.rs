use rand::Rng as _;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rng::stream_rng;

/// Lloyd's algorithm with k-means++ seeding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    /// Independent seedings; the best objective wins.
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once the objective decreases by at most `tol` relative to its
    /// previous value.
    pub tol: f64,
    /// Restart `r` draws from the stream `mix_seed(seed, r)`.
    pub seed: u64,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        KMeansConfig {
            restarts: 10,
            max_iters: 300,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl KMeansConfig {
    pub fn with_seed(seed: u64) -> Self {
        KMeansConfig {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 || self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::validation(format!(
                "k-means needs restarts >= 1, max_iters >= 1 and tol > 0, got {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    /// Labels relabelled in order of first appearance.
    pub partition: Partition,
    /// Sum of squared distances to the assigned centres.
    pub objective: f64,
}

/// Clusters the rows of `points` into `k` non-empty groups.
pub fn kmeans(points: &[Vec<f64>], k: usize, cfg: &KMeansConfig) -> Result<KMeansResult> {
    cfg.validate()?;
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "k-means needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::validation(
            "k-means points have differing dimensions",
        ));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::validation("k-means points must be finite"));
    }

    let mut best: Option<(Vec<usize>, f64)> = None;
    for restart in 0..cfg.restarts {
        let (labels, objective) = lloyd(points, k, cfg, restart as u64);
        if best.as_ref().is_none_or(|(_, b)| objective < *b) {
            best = Some((labels, objective));
        }
    }
    let (labels, objective) = best.expect("at least one restart");
    let partition = Partition::new(k, labels)?.canonical();
    Ok(KMeansResult {
        partition,
        objective,
    })
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn seed_centres(points: &[Vec<f64>], k: usize, rng: &mut crate::rng::Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut chosen = vec![false; n];
    let first = rng.gen_range(0..n);
    chosen[first] = true;
    let mut centres = vec![points[first].clone()];
    let mut nearest: Vec<f64> = points.iter().map(|p| sq_dist(p, &points[first])).collect();
    while centres.len() < k {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, &d) in nearest.iter().enumerate() {
                acc += d;
                if d > 0.0 && acc > target {
                    pick = Some(i);
                    break;
                }
            }
            // rounding can leave target just above the final sum
            pick.unwrap_or_else(|| nearest.iter().rposition(|&d| d > 0.0).expect("total > 0"))
        } else {
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            free[rng.gen_range(0..free.len())]
        };
        chosen[pick] = true;
        for (d, p) in nearest.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, &points[pick]));
        }
        centres.push(points[pick].clone());
    }
    centres
}

/// One seeded Lloyd run; returns labels and objective.
fn lloyd(points: &[Vec<f64>], k: usize, cfg: &KMeansConfig, restart: u64) -> (Vec<usize>, f64) {
    let n = points.len();
    let dim = points[0].len();
    let mut rng = stream_rng(cfg.seed, restart);
    let mut centres = seed_centres(points, k, &mut rng);
    let mut labels = vec![0; n];
    let mut dist = vec![0.0; n];
    let mut previous = f64::INFINITY;

    for _ in 0..cfg.max_iters {
        for (i, p) in points.iter().enumerate() {
            let (mut bl, mut bd) = (0, f64::INFINITY);
            for (c, centre) in centres.iter().enumerate() {
                let d = sq_dist(p, centre);
                if d < bd {
                    (bl, bd) = (c, d);
                }
            }
            labels[i] = bl;
            dist[i] = bd;
        }
        repair_empty(&mut labels, &mut dist, k);

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &l) in points.iter().zip(&labels) {
            counts[l] += 1;
            sums[l].iter_mut().zip(p).for_each(|(s, x)| *s += x);
        }
        for ((centre, sum), &count) in centres.iter_mut().zip(sums).zip(&counts) {
            *centre = sum.into_iter().map(|s| s / count as f64).collect();
        }
        let objective: f64 = points
            .iter()
            .zip(&labels)
            .map(|(p, &l)| sq_dist(p, &centres[l]))
            .sum();
        let converged = previous.is_finite() && previous - objective <= cfg.tol * previous;
        previous = objective;
        if converged {
            break;
        }
    }
    (labels, previous)
}

/// Moves the point farthest from its centre into each empty cluster, taking
/// points only from clusters that keep at least one member.
fn repair_empty(labels: &mut [usize], dist: &mut [f64], k: usize) {
    let mut counts = vec![0usize; k];
    for &l in labels.iter() {
        counts[l] += 1;
    }
    for empty in 0..k {
        if counts[empty] > 0 {
            continue;
        }
        let donor = (0..labels.len())
            .filter(|&i| counts[labels[i]] > 1)
            .max_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(b.cmp(&a)))
            .expect("k <= n leaves a cluster with two members");
        counts[labels[donor]] -= 1;
        counts[empty] += 1;
        labels[donor] = empty;
        dist[donor] = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_locations_are_recovered_exactly() {
        let locs = [[0.0, 0.0], [5.0, 1.0], [-3.0, 4.0]];
        let points: Vec<Vec<f64>> = (0..12).map(|i| locs[i % 3].to_vec()).collect();
        let r = kmeans(&points, 3, &KMeansConfig::default()).unwrap();
        assert_eq!(r.objective, 0.0);
        let want: Vec<usize> = (0..12).map(|i| i % 3).collect();
        assert_eq!(r.partition.labels(), &want[..]);
    }

    #[test]
    fn single_cluster_objective_is_total_scatter() {
        let points: Vec<Vec<f64>> = [1.0, 2.0, 4.0, 9.0].iter().map(|&x| vec![x]).collect();
        // mean 4: 9 + 4 + 0 + 25
        let r = kmeans(&points, 1, &KMeansConfig::default()).unwrap();
        assert!((r.objective - 38.0).abs() < 1e-12);
        assert_eq!(r.partition.k(), 1);
    }

    #[test]
    fn unit_square_two_clusters() {
        let points = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ];
        let r = kmeans(&points, 2, &KMeansConfig::with_seed(3)).unwrap();
        assert!((r.objective - 1.0).abs() < 1e-12);
        assert_eq!(r.partition.part_sizes(), vec![2, 2]);
    }

    #[test]
    fn k_equals_n_gives_singletons() {
        let points: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let r = kmeans(&points, 6, &KMeansConfig::default()).unwrap();
        assert_eq!(r.objective, 0.0);
        assert_eq!(r.partition.part_sizes(), vec![1; 6]);
    }

    #[test]
    fn fewer_distinct_points_than_k_still_fills_every_cluster() {
        let points = vec![vec![0.0]; 5];
        let r = kmeans(&points, 3, &KMeansConfig::default()).unwrap();
        assert!(!r.partition.is_degenerate());
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn validation() {
        let points = vec![vec![0.0], vec![1.0]];
        assert!(matches!(
            kmeans(&points, 3, &KMeansConfig::default()),
            Err(Error::Domain(_))
        ));
        let bad = KMeansConfig {
            restarts: 0,
            ..KMeansConfig::default()
        };
        assert!(kmeans(&points, 1, &bad).is_err());
        assert!(kmeans(&[vec![f64::NAN], vec![0.0]], 1, &KMeansConfig::default()).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let points: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![((i * 37) % 11) as f64, ((i * 13) % 7) as f64])
            .collect();
        let cfg = KMeansConfig::with_seed(42);
        assert_eq!(
            kmeans(&points, 4, &cfg).unwrap(),
            kmeans(&points, 4, &cfg).unwrap()
        );
    }
}
