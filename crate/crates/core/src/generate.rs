//! Random regular networks, used by the property suites and by the search for
//! networks with a given minimum delay.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::min_delay;
use crate::model::{tracks_overlap, Sign, TrainLine, TrainNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    PositiveOnly,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomNetworkParams {
    pub dimension: usize,
    pub train_length: i64,
    /// Line count is drawn uniformly from `1..=max_lines`.
    pub max_lines: usize,
    /// Departure coordinates are drawn from `-coord_range..=coord_range`.
    pub coord_range: i64,
    pub signs: SignMode,
}

/// Draws lines until the target count is reached, rejecting any line whose
/// track overlaps one already placed. Gives up on a line after 100 tries, so
/// the network may come out smaller than drawn.
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, params: &RandomNetworkParams) -> TrainNetwork {
    let target = rng.gen_range(1..=params.max_lines.max(1));
    let mut lines: Vec<TrainLine> = Vec::with_capacity(target);
    for _ in 0..target {
        for _ in 0..100 {
            let departure = (0..params.dimension)
                .map(|_| rng.gen_range(-params.coord_range..=params.coord_range))
                .collect();
            let axis = rng.gen_range(0..params.dimension);
            let sign = match params.signs {
                SignMode::PositiveOnly => Sign::Positive,
                SignMode::Mixed if rng.gen_bool(0.5) => Sign::Positive,
                SignMode::Mixed => Sign::Negative,
            };
            let line = TrainLine::ray(departure, axis, sign, params.train_length).expect("valid parameters");
            if lines.iter().all(|l| !tracks_overlap(l, &line).unwrap_or(true)) {
                lines.push(line);
                break;
            }
        }
    }
    let labeled = lines.into_iter().enumerate().map(|(i, l)| (format!("L{i}"), l)).collect();
    TrainNetwork::new(params.dimension, labeled).expect("overlap-free by construction")
}

/// A network found by [`search_min_delay`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub network: TrainNetwork,
    pub min_delay: u64,
    pub attempts: usize,
}

/// Samples random networks until one has minimum delay at least `target`.
/// Deterministic for a given seed.
pub fn search_min_delay(params: &RandomNetworkParams, target: u64, attempts: usize, seed: u64) -> Option<SearchHit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=attempts {
        let network = random_network(&mut rng, params);
        let (delay, _) = min_delay(&network).ok()?;
        if delay >= target {
            return Some(SearchHit {
                network,
                min_delay: delay,
                attempts: attempt,
            });
        }
    }
    None
}
