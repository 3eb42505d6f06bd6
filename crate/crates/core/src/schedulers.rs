//! Constant-delay schedulers for regular networks.
//!
//! Each scheduler assigns a delay computed from a line's departure point,
//! axis and sign alone, so the result never depends on the rest of the
//! network. The bound each one guarantees:
//!
//! | scheduler             | applies to                  | max delay |
//! |-----------------------|-----------------------------|-----------|
//! | [`schedule_positive`] | all lines positive          | dℓ − 1    |
//! | [`schedule_2d`]       | d = 2                       | M − 1     |
//! | [`schedule_3d_unit`]  | d = 3, ℓ = 1                | 5         |

use std::fmt;

use num_integer::Integer;

use crate::error::Error;
use crate::exact;
use crate::model::{is_regular, validate_schedule, Schedule, TrainNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchedulerStrategy {
    PositiveLines,
    TwoD,
    ThreeDUnit,
    Auto,
}

impl SchedulerStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SchedulerStrategy::PositiveLines => "positive",
            SchedulerStrategy::TwoD => "2d",
            SchedulerStrategy::ThreeDUnit => "3d-unit",
            SchedulerStrategy::Auto => "auto",
        }
    }
}

/// The scheduler that actually produced a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AppliedStrategy {
    PositiveLines,
    TwoD,
    ThreeDUnit,
    /// Minimum-delay clique search; used where no constant bound is known.
    Exact,
}

impl fmt::Display for AppliedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AppliedStrategy::PositiveLines => "positive",
            AppliedStrategy::TwoD => "2d",
            AppliedStrategy::ThreeDUnit => "3d-unit",
            AppliedStrategy::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DelayBound {
    /// Every network of the class is scheduled within this delay.
    Constant(u64),
    /// No class-wide constant is known.
    Unbounded,
}

impl fmt::Display for DelayBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DelayBound::Constant(b) => write!(f, "{b}"),
            DelayBound::Unbounded => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleOutcome {
    pub schedule: Schedule,
    pub strategy: AppliedStrategy,
    pub bound: DelayBound,
}

/// Period of the planar scheduler for trains of length ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn for_train_length(train_length: u64) -> Modulus {
        Modulus(match train_length {
            1 => 2,
            2 => 8,
            ell => 6 * ell,
        })
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn unsupported(strategy: SchedulerStrategy, reason: impl Into<String>) -> Error {
    Error::Unsupported {
        strategy: strategy.name(),
        reason: reason.into(),
    }
}

fn regular_length(net: &TrainNetwork, strategy: SchedulerStrategy) -> Result<i64, Error> {
    if !is_regular(net) {
        return Err(unsupported(strategy, "network is not regular"));
    }
    // An empty network has no length; any value works for it.
    Ok(net.common_train_length().unwrap_or(1))
}

/// Delay `(ℓ·a + Σ p_i) mod dℓ` for all-positive networks.
pub fn schedule_positive(net: &TrainNetwork) -> Result<Schedule, Error> {
    let strategy = SchedulerStrategy::PositiveLines;
    let ell = regular_length(net, strategy)?;
    if !net.all_positive() {
        return Err(unsupported(strategy, "network has negative lines"));
    }
    let period = net.dimension() as i64 * ell;
    Ok(Schedule::from_integers(net.lines().iter().map(|line| {
        let sum: i64 = line.departure().iter().sum();
        (ell * line.axis() as i64 + sum).mod_floor(&period) as u64
    })))
}

/// Planar scheduler with period [`Modulus`]; signs are unrestricted.
pub fn schedule_2d(net: &TrainNetwork) -> Result<Schedule, Error> {
    let strategy = SchedulerStrategy::TwoD;
    let ell = regular_length(net, strategy)?;
    if net.dimension() != 2 {
        return Err(unsupported(strategy, "network is not 2-dimensional"));
    }
    let modulus = Modulus::for_train_length(ell as u64).get() as i64;
    Ok(Schedule::from_integers(net.lines().iter().map(|line| {
        let (x, y) = (line.departure()[0], line.departure()[1]);
        let phase = if line.axis() == 0 {
            -2 * y.mod_floor(&ell) - ell + 1
        } else {
            -2 * x.mod_floor(&ell) + 2 * ell - 1
        };
        (line.sign().value() * (x + y + phase)).mod_floor(&modulus) as u64
    })))
}

/// Unit-length 3D scheduler: the residue in 0..6 fixed by a mod-3 and a mod-2
/// condition.
pub fn schedule_3d_unit(net: &TrainNetwork) -> Result<Schedule, Error> {
    let strategy = SchedulerStrategy::ThreeDUnit;
    let ell = regular_length(net, strategy)?;
    if net.dimension() != 3 {
        return Err(unsupported(strategy, "network is not 3-dimensional"));
    }
    if ell != 1 {
        return Err(unsupported(strategy, format!("train length is {ell}, not 1")));
    }
    Ok(Schedule::from_integers(net.lines().iter().map(|line| {
        let sum: i64 = line.departure().iter().sum();
        let sigma = line.sign().value();
        let mod3 = (sigma * (sum + line.axis() as i64)).mod_floor(&3);
        let mod2 = (sum + (sigma + 1) / 2).mod_floor(&2);
        // Chinese remainder for moduli 3 and 2: 4 ≡ 1 (mod 3), 3 ≡ 1 (mod 2).
        ((4 * mod3 + 3 * mod2) % 6) as u64
    })))
}

/// Rounds every delay of a valid schedule down; the result stays valid.
pub fn floor_schedule(net: &TrainNetwork, s: &Schedule) -> Result<Schedule, Error> {
    if !is_regular(net) {
        return Err(Error::NotRegular);
    }
    let violations = validate_schedule(net, s)?;
    if !violations.is_empty() {
        return Err(Error::InvalidSchedule(violations.len()));
    }
    Schedule::new(s.delays().iter().map(|d| d.floor()).collect())
}

/// The constant bound the constructive schedulers guarantee for `net`, if any.
pub fn constructive_bound(net: &TrainNetwork) -> Option<(AppliedStrategy, u64)> {
    let ell = net.common_train_length().unwrap_or(1) as u64;
    let d = net.dimension() as u64;
    if net.all_positive() {
        Some((AppliedStrategy::PositiveLines, d * ell - 1))
    } else if d == 2 {
        Some((AppliedStrategy::TwoD, Modulus::for_train_length(ell).get() - 1))
    } else if ell == 1 {
        Some((AppliedStrategy::ThreeDUnit, 5))
    } else {
        None
    }
}

/// Picks the constructive scheduler with a known bound, falling back to the
/// exact minimum-delay search.
pub fn auto_schedule(net: &TrainNetwork) -> Result<ScheduleOutcome, Error> {
    if !is_regular(net) {
        return Err(unsupported(SchedulerStrategy::Auto, "network is not regular"));
    }
    let (strategy, bound) = match constructive_bound(net) {
        Some((strategy, bound)) => {
            let schedule = match strategy {
                AppliedStrategy::PositiveLines => schedule_positive(net)?,
                AppliedStrategy::TwoD => schedule_2d(net)?,
                _ => schedule_3d_unit(net)?,
            };
            return Ok(ScheduleOutcome {
                schedule,
                strategy,
                bound: DelayBound::Constant(bound),
            });
        }
        None => (AppliedStrategy::Exact, DelayBound::Unbounded),
    };
    let (_, schedule) = exact::min_delay(net)?;
    Ok(ScheduleOutcome {
        schedule,
        strategy,
        bound,
    })
}

/// Runs the requested scheduler and reports the bound it guarantees.
pub fn schedule_with(net: &TrainNetwork, strategy: SchedulerStrategy) -> Result<ScheduleOutcome, Error> {
    let d = net.dimension() as u64;
    let ell = net.common_train_length().unwrap_or(1) as u64;
    let (schedule, applied, bound) = match strategy {
        SchedulerStrategy::Auto => return auto_schedule(net),
        SchedulerStrategy::PositiveLines => (schedule_positive(net)?, AppliedStrategy::PositiveLines, d * ell - 1),
        SchedulerStrategy::TwoD => (
            schedule_2d(net)?,
            AppliedStrategy::TwoD,
            Modulus::for_train_length(ell).get() - 1,
        ),
        SchedulerStrategy::ThreeDUnit => (schedule_3d_unit(net)?, AppliedStrategy::ThreeDUnit, 5),
    };
    Ok(ScheduleOutcome {
        schedule,
        strategy: applied,
        bound: DelayBound::Constant(bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Rational, Sign, TrainLine};

    fn net(dimension: usize, lines: Vec<TrainLine>) -> TrainNetwork {
        TrainNetwork::new(
            dimension,
            lines.into_iter().enumerate().map(|(i, l)| (format!("L{i}"), l)).collect(),
        )
        .unwrap()
    }

    fn network1() -> TrainNetwork {
        let l = |x, y, axis| TrainLine::ray(vec![x, y], axis, Sign::Positive, 2).unwrap();
        net(2, vec![l(0, 1, 0), l(0, 2, 0), l(1, 0, 1), l(2, 0, 1)])
    }

    #[test]
    fn modulus_table() {
        let m: Vec<u64> = (1..=5).map(|l| Modulus::for_train_length(l).get()).collect();
        assert_eq!(m, vec![2, 8, 18, 24, 30]);
        for ell in 1..50 {
            let m = Modulus::for_train_length(ell).get();
            assert!(m >= 2 * ell);
            assert_eq!(m % (2 * ell), 0);
        }
    }

    #[test]
    fn positive_on_network1() {
        let net = network1();
        let s = schedule_positive(&net).unwrap();
        assert_eq!(s, Schedule::from_integers([1, 2, 3, 0]));
        assert!(validate_schedule(&net, &s).unwrap().is_empty());
    }

    #[test]
    fn positive_3d_axis_term() {
        let n = net(3, vec![TrainLine::ray(vec![0, 0, 0], 2, Sign::Positive, 1).unwrap()]);
        assert_eq!(schedule_positive(&n).unwrap(), Schedule::from_integers([2]));
    }

    #[test]
    fn positive_rejects_negative_lines() {
        let n = net(2, vec![TrainLine::ray(vec![0, 0], 0, Sign::Negative, 1).unwrap()]);
        assert!(matches!(schedule_positive(&n), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn planar_formula_examples() {
        let n = net(
            2,
            vec![
                TrainLine::ray(vec![0, 0], 0, Sign::Positive, 1).unwrap(),
                TrainLine::ray(vec![0, 0], 1, Sign::Positive, 1).unwrap(),
            ],
        );
        assert_eq!(schedule_2d(&n).unwrap(), Schedule::from_integers([0, 1]));
        let n = net(2, vec![TrainLine::ray(vec![0, 1], 0, Sign::Positive, 2).unwrap()]);
        assert_eq!(schedule_2d(&n).unwrap(), Schedule::from_integers([6]));
    }

    #[test]
    fn planar_rejects_3d() {
        let n = net(3, vec![TrainLine::ray(vec![0, 0, 0], 0, Sign::Positive, 1).unwrap()]);
        assert!(matches!(schedule_2d(&n), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn three_d_residues() {
        let n = net(
            3,
            vec![
                TrainLine::ray(vec![0, 0, 0], 0, Sign::Positive, 1).unwrap(),
                TrainLine::ray(vec![0, 0, 1], 0, Sign::Negative, 1).unwrap(),
            ],
        );
        // Second line: sum 1, σ = −1 → r ≡ 2 (mod 3), r ≡ 1 (mod 2) → 5.
        assert_eq!(schedule_3d_unit(&n).unwrap(), Schedule::from_integers([3, 5]));
        let single = net(3, vec![TrainLine::ray(vec![0, 0, 0], 0, Sign::Negative, 1).unwrap()]);
        assert_eq!(schedule_3d_unit(&single).unwrap(), Schedule::from_integers([0]));
    }

    #[test]
    fn three_d_crt_matches_enumeration() {
        for sum in -8..8i64 {
            for axis in 0..3i64 {
                for sigma in [-1i64, 1] {
                    let expected = (0..6i64)
                        .find(|r| {
                            (r - sigma * (sum + axis)).mod_floor(&3) == 0 && (r - sum - (sigma + 1) / 2).mod_floor(&2) == 0
                        })
                        .unwrap();
                    let sign = Sign::from_value(sigma).unwrap();
                    let n = net(3, vec![TrainLine::ray(vec![sum, 0, 0], axis as usize, sign, 1).unwrap()]);
                    assert_eq!(schedule_3d_unit(&n).unwrap(), Schedule::from_integers([expected as u64]));
                }
            }
        }
    }

    #[test]
    fn three_d_needs_unit_length() {
        let n = net(3, vec![TrainLine::ray(vec![0, 0, 0], 0, Sign::Positive, 2).unwrap()]);
        assert!(matches!(schedule_3d_unit(&n), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn flooring() {
        let n = net(
            2,
            vec![
                TrainLine::ray(vec![0, 0], 0, Sign::Positive, 1).unwrap(),
                TrainLine::ray(vec![0, 1], 0, Sign::Positive, 1).unwrap(),
            ],
        );
        let s = Schedule::new(vec![Rational::new(1, 2), Rational::new(29, 10)]).unwrap();
        assert_eq!(floor_schedule(&n, &s).unwrap(), Schedule::from_integers([0, 2]));
        let ints = Schedule::from_integers([4, 1]);
        assert_eq!(floor_schedule(&n, &ints).unwrap(), ints);
    }

    #[test]
    fn flooring_rejects_invalid_input() {
        let n = network1();
        let zeros = Schedule::from_integers([0, 0, 0, 0]);
        assert_eq!(floor_schedule(&n, &zeros), Err(Error::InvalidSchedule(4)));
    }

    #[test]
    fn auto_dispatch() {
        let out = auto_schedule(&network1()).unwrap();
        assert_eq!(out.strategy, AppliedStrategy::PositiveLines);
        assert_eq!(out.bound, DelayBound::Constant(3));

        let mixed = net(
            2,
            vec![
                TrainLine::ray(vec![0, 1], 0, Sign::Positive, 2).unwrap(),
                TrainLine::ray(vec![3, 0], 1, Sign::Negative, 2).unwrap(),
            ],
        );
        let out = auto_schedule(&mixed).unwrap();
        assert_eq!(out.strategy, AppliedStrategy::TwoD);
        assert_eq!(out.bound, DelayBound::Constant(7));

        let unit3 = net(3, vec![TrainLine::ray(vec![0, 0, 0], 0, Sign::Negative, 1).unwrap()]);
        assert_eq!(auto_schedule(&unit3).unwrap().strategy, AppliedStrategy::ThreeDUnit);

        let open = net(
            3,
            vec![
                TrainLine::ray(vec![0, 1, 1], 0, Sign::Positive, 2).unwrap(),
                TrainLine::ray(vec![1, 3, 1], 1, Sign::Negative, 2).unwrap(),
            ],
        );
        let out = auto_schedule(&open).unwrap();
        assert_eq!(out.strategy, AppliedStrategy::Exact);
        assert_eq!(out.bound, DelayBound::Unbounded);
        assert!(validate_schedule(&open, &out.schedule).unwrap().is_empty());
    }

    #[test]
    fn auto_rejects_irregular() {
        let n = net(
            2,
            vec![
                TrainLine::ray(vec![0, 0], 0, Sign::Positive, 1).unwrap(),
                TrainLine::ray(vec![0, 1], 0, Sign::Positive, 2).unwrap(),
            ],
        );
        assert!(matches!(auto_schedule(&n), Err(Error::Unsupported { .. })));
    }
}
