//! Exact integer minimum delay through a maximum-clique reduction.
//!
//! For a delay budget `D` the compatibility graph has a vertex for every pair
//! (line, delay in 0..=D) and an edge between vertices of distinct lines
//! whenever those two delays cause no collision. A clique touching every line
//! is exactly a collision-free integer schedule with delay at most `D`.

use crate::error::Error;
use crate::model::{collides, is_regular, validate_schedule, Rational, Schedule, Sign, TrainLine, TrainNetwork};
use crate::schedulers::constructive_bound;

/// Fixed-width set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut set = Self::new(len);
        for v in 0..len {
            set.insert(v);
        }
        set
    }

    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

/// Vertices `(line, delay)` numbered `line * (D + 1) + delay`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityGraph {
    n_lines: usize,
    max_delay: u64,
    adjacency: Vec<BitSet>,
}

impl CompatibilityGraph {
    pub fn n_lines(&self) -> usize {
        self.n_lines
    }

    pub fn max_delay(&self) -> u64 {
        self.max_delay
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    fn width(&self) -> usize {
        self.max_delay as usize + 1
    }

    pub fn vertex(&self, line: usize, delay: u64) -> usize {
        line * self.width() + delay as usize
    }

    /// The (line, delay) pair a vertex stands for.
    pub fn decode(&self, vertex: usize) -> (usize, u64) {
        (vertex / self.width(), (vertex % self.width()) as u64)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter()
    }

    /// Edges `(u, v)` with `u < v`, in vertex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| self.adjacency[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    fn line_block(&self, line: usize) -> BitSet {
        let mut set = BitSet::new(self.vertex_count());
        for t in 0..self.width() {
            set.insert(line * self.width() + t);
        }
        set
    }
}

pub(crate) fn ensure_buildable(net: &TrainNetwork) -> Result<(), Error> {
    if !is_regular(net) {
        return Err(Error::NotRegular);
    }
    Ok(())
}

/// Compatibility graph of `net` for delays `0..=max_delay`.
pub fn build_graph(net: &TrainNetwork, max_delay: u64) -> Result<CompatibilityGraph, Error> {
    ensure_buildable(net)?;
    let n = net.len();
    let width = max_delay as usize + 1;
    let total = n * width;
    let mut adjacency = vec![BitSet::new(total); total];
    for i in 0..n {
        for j in i + 1..n {
            let crossing = net.crossing(i, j);
            for t_i in 0..width {
                for t_j in 0..width {
                    let compatible = crossing.is_none_or(|c| {
                        !collides(
                            net.line(i),
                            net.line(j),
                            &c,
                            Rational::from_integer(t_i as i64),
                            Rational::from_integer(t_j as i64),
                        )
                    });
                    if compatible {
                        let (u, v) = (i * width + t_i, j * width + t_j);
                        adjacency[u].insert(v);
                        adjacency[v].insert(u);
                    }
                }
            }
        }
    }
    Ok(CompatibilityGraph {
        n_lines: n,
        max_delay,
        adjacency,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub size: usize,
    /// Clique vertices in increasing order.
    pub members: Vec<usize>,
    /// The schedule the clique encodes, when it covers every line.
    pub decoded: Option<Schedule>,
}

/// Branch-and-bound state. Vertices are tried in a fixed degree order so the
/// witness is reproducible.
struct CliqueSearch<'g> {
    graph: &'g CompatibilityGraph,
    order: Vec<usize>,
    blocks: Vec<BitSet>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch<'_> {
    /// Greedy sequential coloring of `candidates`; returns vertices sorted by
    /// color together with the running color count, an upper bound on the
    /// clique size within each prefix.
    fn color_sort(&self, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored: Vec<usize> = self.order.iter().copied().filter(|&v| candidates.contains(v)).collect();
        let mut sorted = Vec::with_capacity(uncolored.len());
        let mut colors = Vec::with_capacity(uncolored.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut class: Vec<usize> = Vec::new();
            let mut rest = Vec::with_capacity(uncolored.len());
            for v in uncolored {
                if class.iter().all(|&u| !self.graph.has_edge(u, v)) {
                    class.push(v);
                } else {
                    rest.push(v);
                }
            }
            colors.extend(std::iter::repeat_n(color, class.len()));
            sorted.extend(class);
            uncolored = rest;
        }
        (sorted, colors)
    }

    fn lines_present(&self, candidates: &BitSet) -> usize {
        self.blocks.iter().filter(|b| b.intersects(candidates)).count()
    }

    fn expand(&mut self, mut candidates: BitSet) {
        if self.best.len() == self.graph.n_lines {
            return;
        }
        if self.current.len() + self.lines_present(&candidates) <= self.best.len() {
            return;
        }
        let (sorted, colors) = self.color_sort(&candidates);
        for k in (0..sorted.len()).rev() {
            if self.current.len() + colors[k] <= self.best.len() || self.best.len() == self.graph.n_lines {
                return;
            }
            let v = sorted[k];
            self.current.push(v);
            let next = candidates.intersection(&self.graph.adjacency[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

/// A maximum clique of `graph`, found by branch and bound with a greedy
/// coloring bound and a one-vertex-per-line cap.
pub fn max_clique(graph: &CompatibilityGraph) -> CliqueResult {
    let total = graph.vertex_count();
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(graph.adjacency[v].count()));
    let blocks = (0..graph.n_lines).map(|l| graph.line_block(l)).collect();
    let mut search = CliqueSearch {
        graph,
        order,
        blocks,
        best: Vec::new(),
        current: Vec::new(),
    };
    if total > 0 {
        search.expand(BitSet::full(total));
    }
    let mut members = search.best;
    members.sort_unstable();
    let decoded = (members.len() == graph.n_lines).then(|| {
        let mut delays = vec![0; graph.n_lines];
        for &v in &members {
            let (line, delay) = graph.decode(v);
            delays[line] = delay;
        }
        Schedule::from_integers(delays)
    });
    CliqueResult {
        size: members.len(),
        members,
        decoded,
    }
}

/// An integer schedule with every delay at most `max_delay`, if one exists.
pub fn has_schedule_within(net: &TrainNetwork, max_delay: u64) -> Result<Option<Schedule>, Error> {
    let graph = build_graph(net, max_delay)?;
    let result = max_clique(&graph);
    if let Some(schedule) = &result.decoded {
        debug_assert!(validate_schedule(net, schedule).map(|v| v.is_empty()).unwrap_or(false));
    }
    Ok(result.decoded)
}

/// Delay that a greedy line-by-line assignment can always achieve: each
/// crossing rules out at most 2ℓ − 1 delays for the later line.
fn greedy_bound(net: &TrainNetwork) -> u64 {
    let ell = net.common_train_length().unwrap_or(1) as u64;
    let mut degree = vec![0u64; net.len()];
    for c in net.crossings() {
        degree[c.i] += 1;
        degree[c.j] += 1;
    }
    degree.into_iter().max().unwrap_or(0) * (2 * ell - 1)
}

/// Smallest integer delay budget admitting a schedule, with a witness.
pub fn min_delay(net: &TrainNetwork) -> Result<(u64, Schedule), Error> {
    ensure_buildable(net)?;
    let cap = match constructive_bound(net) {
        Some((_, bound)) => bound.min(greedy_bound(net)),
        None => greedy_bound(net),
    };
    for budget in 0..=cap {
        if let Some(schedule) = has_schedule_within(net, budget)? {
            return Ok((budget, schedule));
        }
    }
    unreachable!("a schedule within delay {cap} always exists")
}

/// Spreadsheet-style labels: A..Z, AA, AB, ...
pub(crate) fn letter_label(mut index: usize) -> String {
    let mut label = Vec::new();
    loop {
        label.push(b'A' + (index % 26) as u8);
        if index < 26 {
            break;
        }
        index = index / 26 - 1;
    }
    label.reverse();
    String::from_utf8(label).expect("ASCII letters")
}

/// Positive `ell × ell` grid: horizontal lines from (0, j) and vertical lines
/// from (i, 0) for i, j in 1..=ell, all with train length `ell`.
pub fn generate_grid(ell: u64) -> Result<TrainNetwork, Error> {
    if ell < 1 {
        return Err(Error::InvalidArgument("grid size must be at least 1".into()));
    }
    let ell = ell as i64;
    let horizontal = (1..=ell).map(|j| TrainLine::ray(vec![0, j], 0, Sign::Positive, ell));
    let vertical = (1..=ell).map(|i| TrainLine::ray(vec![i, 0], 1, Sign::Positive, ell));
    let lines = horizontal
        .chain(vertical)
        .enumerate()
        .map(|(k, line)| line.map(|l| (letter_label(k), l)))
        .collect::<Result<Vec<_>, _>>()?;
    TrainNetwork::new(2, lines)
}
