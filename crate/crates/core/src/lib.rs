//! Collision-free scheduling of regular lattice train networks.
//!
//! A train network is a set of axis-parallel lines on the integer lattice, each
//! carrying a train of fixed length that departs after some delay. This crate
//! provides the collision model ([`model`]), constant-delay constructive
//! schedulers ([`schedulers`]), an exact minimum-delay search through a
//! max-clique reduction ([`exact`]), text formats including a Cliquer graph
//! exporter ([`io`]), random network generation ([`generate`]) and the
//! command-line front end ([`cli`]).

pub mod cli;
pub mod error;
pub mod exact;
pub mod generate;
pub mod io;
pub mod model;
pub mod schedulers;

pub use error::{Error, ParseError, ParseErrorKind};
pub use exact::{
    build_graph, generate_grid, has_schedule_within, max_clique, min_delay, CliqueResult,
    CompatibilityGraph,
};
pub use io::{decode_clique_output, export_cliquer, parse_network, write_network};
pub use model::{
    collides, crossing_of, is_regular, tracks_overlap, validate_schedule, Crossing, Extent,
    Rational, Schedule, Sign, TrainLine, TrainNetwork, Violation,
};
pub use schedulers::{
    auto_schedule, floor_schedule, schedule_2d, schedule_3d_unit, schedule_positive,
    AppliedStrategy, DelayBound, Modulus, ScheduleOutcome, SchedulerStrategy,
};
