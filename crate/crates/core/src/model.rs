//! Lines, networks, crossings and the collision predicate.
//!
//! Every scheduler and the exact search are checked against [`collides`] and
//! [`validate_schedule`]. All arithmetic is exact: distances are lattice
//! integers and times are rationals.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// How far a track reaches along its axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extent {
    /// Semi-infinite track starting at the departure point.
    Ray,
    /// Segment ending at this coordinate along the line's axis.
    Finite(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrainLine {
    departure: Vec<i64>,
    axis: usize,
    sign: Sign,
    train_length: i64,
    speed: Rational,
    extent: Extent,
}

impl TrainLine {
    pub fn new(
        departure: Vec<i64>,
        axis: usize,
        sign: Sign,
        train_length: i64,
        speed: Rational,
        extent: Extent,
    ) -> Result<Self, Error> {
        let dimension = departure.len();
        if !(2..=3).contains(&dimension) {
            return Err(Error::InvalidDimension(dimension));
        }
        if axis >= dimension {
            return Err(Error::InvalidAxis { axis, dimension });
        }
        if train_length < 1 {
            return Err(Error::InvalidTrainLength);
        }
        if speed <= Rational::zero() {
            return Err(Error::InvalidSpeed);
        }
        if let Extent::Finite(arrival) = extent {
            let start = departure[axis];
            if (arrival - start).signum() != sign.value() {
                return Err(Error::InvalidExtent {
                    departure: start,
                    arrival,
                    sign: sign.value(),
                });
            }
        }
        Ok(TrainLine {
            departure,
            axis,
            sign,
            train_length,
            speed,
            extent,
        })
    }

    /// Unit-speed line on a semi-infinite track.
    pub fn ray(departure: Vec<i64>, axis: usize, sign: Sign, train_length: i64) -> Result<Self, Error> {
        Self::new(departure, axis, sign, train_length, Rational::one(), Extent::Ray)
    }

    /// Unit-speed line on a segment; the sign follows from the arrival coordinate.
    pub fn segment(departure: Vec<i64>, axis: usize, arrival: i64, train_length: i64) -> Result<Self, Error> {
        let start = departure.get(axis).copied().unwrap_or(arrival);
        let sign = if arrival > start { Sign::Positive } else { Sign::Negative };
        Self::new(
            departure,
            axis,
            sign,
            train_length,
            Rational::one(),
            Extent::Finite(arrival),
        )
    }

    pub fn departure(&self) -> &[i64] {
        &self.departure
    }

    pub fn dimension(&self) -> usize {
        self.departure.len()
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn train_length(&self) -> i64 {
        self.train_length
    }

    pub fn speed(&self) -> Rational {
        self.speed
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    /// Same line with the departure point moved by `offset`.
    pub fn translated(&self, offset: &[i64]) -> TrainLine {
        let mut line = self.clone();
        for (c, o) in line.departure.iter_mut().zip(offset) {
            *c += o;
        }
        if let Extent::Finite(arrival) = &mut line.extent {
            *arrival += offset.get(line.axis).copied().unwrap_or(0);
        }
        line
    }

    /// Drops a zero third coordinate so a planar line becomes 2-dimensional.
    fn reduced_to(mut self, dimension: usize) -> Result<TrainLine, Error> {
        let found = self.dimension();
        if found == dimension {
            return Ok(self);
        }
        if found == 3 && dimension == 2 && self.departure[2] == 0 && self.axis < 2 {
            self.departure.truncate(2);
            return Ok(self);
        }
        Err(Error::DimensionMismatch {
            expected: dimension,
            found,
        })
    }

    /// Closed range covered along the axis; `None` marks an unbounded end.
    fn axis_range(&self) -> (Option<i64>, Option<i64>) {
        let start = self.departure[self.axis];
        match (self.extent, self.sign) {
            (Extent::Ray, Sign::Positive) => (Some(start), None),
            (Extent::Ray, Sign::Negative) => (None, Some(start)),
            (Extent::Finite(end), _) => (Some(start.min(end)), Some(start.max(end))),
        }
    }

    /// Whether a point at distance `delta` ahead of the departure lies on the track.
    fn reaches(&self, delta: i64) -> bool {
        match self.extent {
            Extent::Ray => true,
            Extent::Finite(end) => delta <= (end - self.departure[self.axis]).abs(),
        }
    }
}

/// Whether two tracks share more than a single point.
pub fn tracks_overlap(a: &TrainLine, b: &TrainLine) -> Result<bool, Error> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            found: b.dimension(),
        });
    }
    if a.axis != b.axis {
        return Ok(false);
    }
    let same_row = (0..a.dimension())
        .filter(|&k| k != a.axis)
        .all(|k| a.departure[k] == b.departure[k]);
    if !same_row {
        return Ok(false);
    }
    let (a_lo, a_hi) = a.axis_range();
    let (b_lo, b_hi) = b.axis_range();
    let lo = match (a_lo, b_lo) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    let hi = match (a_hi, b_hi) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    Ok(match (lo, hi) {
        (Some(lo), Some(hi)) => lo < hi,
        _ => true,
    })
}

/// Distances from each departure point to the point where the two tracks
/// cross, or `None` when they do not cross strictly past both departures.
pub fn crossing_of(a: &TrainLine, b: &TrainLine) -> Option<(i64, i64)> {
    if a.dimension() != b.dimension() || a.axis == b.axis {
        return None;
    }
    let aligned = (0..a.dimension())
        .filter(|&k| k != a.axis && k != b.axis)
        .all(|k| a.departure[k] == b.departure[k]);
    if !aligned {
        return None;
    }
    let delta_a = (b.departure[a.axis] - a.departure[a.axis]) * a.sign.value();
    let delta_b = (a.departure[b.axis] - b.departure[b.axis]) * b.sign.value();
    if delta_a <= 0 || delta_b <= 0 || !a.reaches(delta_a) || !b.reaches(delta_b) {
        return None;
    }
    Some((delta_a, delta_b))
}

/// A crossing between lines `i` and `j` of a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub i: usize,
    pub j: usize,
    pub delta_i: i64,
    pub delta_j: i64,
}

impl Crossing {
    pub fn flipped(self) -> Crossing {
        Crossing {
            i: self.j,
            j: self.i,
            delta_i: self.delta_j,
            delta_j: self.delta_i,
        }
    }
}

/// Whether trains on `a` and `b` delayed by `t_a` and `t_b` occupy the
/// crossing point at the same time. `cross.delta_i` belongs to `a`.
pub fn collides(a: &TrainLine, b: &TrainLine, cross: &Crossing, t_a: Rational, t_b: Rational) -> bool {
    let (a_lo, a_hi) = occupancy(a, cross.delta_i, t_a);
    let (b_lo, b_hi) = occupancy(b, cross.delta_j, t_b);
    a_lo < b_hi && b_lo < a_hi
}

/// Open time interval during which the train covers the point `delta` ahead.
fn occupancy(line: &TrainLine, delta: i64, t: Rational) -> (Rational, Rational) {
    let lo = t + Rational::from_integer(delta) / line.speed;
    let hi = t + Rational::from_integer(delta + line.train_length) / line.speed;
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainNetwork {
    dimension: usize,
    labels: Vec<String>,
    lines: Vec<TrainLine>,
}

impl TrainNetwork {
    /// Builds a network, reducing planar 3-coordinate lines when `dimension`
    /// is 2 and rejecting bad labels or overlapping tracks.
    pub fn new(dimension: usize, lines: Vec<(String, TrainLine)>) -> Result<Self, Error> {
        if !(2..=3).contains(&dimension) {
            return Err(Error::InvalidDimension(dimension));
        }
        let mut seen = HashSet::new();
        let mut labels = Vec::with_capacity(lines.len());
        let mut reduced = Vec::with_capacity(lines.len());
        for (label, line) in lines {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLabel(label));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            reduced.push(line.reduced_to(dimension)?);
            labels.push(label);
        }
        let network = TrainNetwork {
            dimension,
            labels,
            lines: reduced,
        };
        if let Some((i, j)) = network.first_overlap() {
            return Err(Error::OverlappingTracks {
                first: network.labels[i].clone(),
                second: network.labels[j].clone(),
            });
        }
        Ok(network)
    }

    fn first_overlap(&self) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(i, j)| tracks_overlap(&self.lines[i], &self.lines[j]).unwrap_or(true))
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.lines.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[TrainLine] {
        &self.lines
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn line(&self, index: usize) -> &TrainLine {
        &self.lines[index]
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TrainLine)> {
        self.labels.iter().map(String::as_str).zip(&self.lines)
    }

    pub fn crossing(&self, i: usize, j: usize) -> Option<Crossing> {
        crossing_of(&self.lines[i], &self.lines[j]).map(|(delta_i, delta_j)| Crossing {
            i,
            j,
            delta_i,
            delta_j,
        })
    }

    /// All crossings with `i < j`, in pair order.
    pub fn crossings(&self) -> Vec<Crossing> {
        self.pairs().filter_map(|(i, j)| self.crossing(i, j)).collect()
    }

    /// The shared train length when all lines agree on one.
    pub fn common_train_length(&self) -> Option<i64> {
        let first = self.lines.first()?.train_length;
        self.lines
            .iter()
            .all(|l| l.train_length == first)
            .then_some(first)
    }

    pub fn all_positive(&self) -> bool {
        self.lines.iter().all(|l| l.sign == Sign::Positive)
    }

    /// Same network with every departure moved by `offset`.
    pub fn translated(&self, offset: &[i64]) -> TrainNetwork {
        TrainNetwork {
            dimension: self.dimension,
            labels: self.labels.clone(),
            lines: self.lines.iter().map(|l| l.translated(offset)).collect(),
        }
    }
}

/// Unit speeds and one common integer train length. Departures and arrivals
/// are lattice points and tracks are axis-parallel by construction.
pub fn is_regular(net: &TrainNetwork) -> bool {
    net.lines.iter().all(|l| l.speed == Rational::one()) && (net.is_empty() || net.common_train_length().is_some())
}

/// Non-negative delay per line, in network order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    delays: Vec<Rational>,
}

impl Schedule {
    pub fn new(delays: Vec<Rational>) -> Result<Self, Error> {
        if let Some((i, d)) = delays.iter().enumerate().find(|(_, d)| **d < Rational::zero()) {
            return Err(Error::NegativeDelay {
                label: format!("#{i}"),
                delay: d.to_string(),
            });
        }
        Ok(Schedule { delays })
    }

    pub fn from_integers(delays: impl IntoIterator<Item = u64>) -> Self {
        Schedule {
            delays: delays
                .into_iter()
                .map(|d| Rational::from_integer(d as i64))
                .collect(),
        }
    }

    /// Orders labeled delays to match `net`; every line needs exactly one entry.
    pub fn from_labeled<S: AsRef<str>>(net: &TrainNetwork, entries: &[(S, Rational)]) -> Result<Self, Error> {
        let mut delays = vec![None; net.len()];
        for (label, delay) in entries {
            let label = label.as_ref();
            let index = net
                .index_of(label)
                .ok_or_else(|| Error::UnknownLine(label.to_string()))?;
            if *delay < Rational::zero() {
                return Err(Error::NegativeDelay {
                    label: label.to_string(),
                    delay: delay.to_string(),
                });
            }
            delays[index] = Some(*delay);
        }
        let delays = delays
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::MissingDelay(net.label(i).to_string())))
            .collect::<Result<_, _>>()?;
        Ok(Schedule { delays })
    }

    pub fn delays(&self) -> &[Rational] {
        &self.delays
    }

    pub fn delay(&self, index: usize) -> Rational {
        self.delays[index]
    }

    pub fn len(&self) -> usize {
        self.delays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delays.is_empty()
    }

    pub fn is_integer(&self) -> bool {
        self.delays.iter().all(Ratio::is_integer)
    }

    /// Largest delay; zero for an empty schedule.
    pub fn max_delay(&self) -> Rational {
        self.delays.iter().copied().max().unwrap_or_else(Rational::zero)
    }

    /// Integer delays, when every delay is an integer.
    pub fn integer_delays(&self) -> Option<Vec<u64>> {
        self.delays
            .iter()
            .map(|d| d.is_integer().then(|| d.to_integer() as u64))
            .collect()
    }
}

/// A crossing at which a schedule makes two trains collide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub first: String,
    pub second: String,
    pub crossing: Crossing,
    pub first_delay: Rational,
    pub second_delay: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "collision {} {} delta {} {} delays {} {}",
            self.first,
            self.second,
            self.crossing.delta_i,
            self.crossing.delta_j,
            self.first_delay,
            self.second_delay
        )
    }
}

/// Every crossing at which `s` causes a collision; empty means `s` is a schedule.
pub fn validate_schedule(net: &TrainNetwork, s: &Schedule) -> Result<Vec<Violation>, Error> {
    if s.len() != net.len() {
        return Err(Error::ScheduleLength {
            expected: net.len(),
            found: s.len(),
        });
    }
    Ok(net
        .crossings()
        .into_iter()
        .filter(|c| collides(&net.lines[c.i], &net.lines[c.j], c, s.delays[c.i], s.delays[c.j]))
        .map(|c| Violation {
            first: net.labels[c.i].clone(),
            second: net.labels[c.j].clone(),
            crossing: c,
            first_delay: s.delays[c.i],
            second_delay: s.delays[c.j],
        })
        .collect())
}
