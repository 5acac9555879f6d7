//! Event-driven core: one replication of the loss (or thinned) system.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::{AdmissionPolicy, SimConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventKind {
    Arrival,
    Departure,
}

/// Future-event-list entry. Ordering is by time with ties broken by insertion
/// order; ties only matter for deterministic service times, where simultaneous
/// events are possible.
#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    seq: u64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed so the BinaryHeap pops the earliest event first.
        other
            .time
            .total_cmp(&self.time)
            .then(other.seq.cmp(&self.seq))
    }
}

/// Raw statistics of a single replication over the window `(warmup, horizon]`.
#[derive(Debug, Clone)]
pub(super) struct Replication {
    /// Time spent in each occupancy state.
    pub state_time: Vec<f64>,
    /// Occupancy seen by each arrival (admitted or not).
    pub seen_counts: Vec<u64>,
    pub arrivals: u64,
    pub admitted: u64,
    /// Sum of `R - c(seen)` over admitted arrivals.
    pub utility_sum: f64,
    pub duration: f64,
}

impl Replication {
    pub fn mean_occupancy(&self) -> f64 {
        let weighted: f64 = self
            .state_time
            .iter()
            .enumerate()
            .map(|(m, t)| m as f64 * t)
            .sum();
        weighted / self.duration
    }

    pub fn joining_rate(&self) -> f64 {
        self.admitted as f64 / self.duration
    }
}

pub(super) fn run_replication<R: Rng + ?Sized>(
    config: &SimConfig,
    cap: usize,
    rng: &mut R,
) -> Replication {
    let (horizon, warmup) = (config.horizon, config.warmup);
    let interarrival = Exp::new(config.params.lambda()).expect("validated arrival rate");
    let reward = config.params.reward();

    let mut heap: BinaryHeap<Event> = BinaryHeap::new();
    let mut seq = 0u64;
    let push = |heap: &mut BinaryHeap<Event>, seq: &mut u64, time: f64, kind: EventKind| {
        heap.push(Event {
            time,
            seq: *seq,
            kind,
        });
        *seq += 1;
    };
    push(
        &mut heap,
        &mut seq,
        interarrival.sample(rng),
        EventKind::Arrival,
    );

    let mut stats = Replication {
        state_time: vec![0.0; cap + 1],
        seen_counts: vec![0; cap + 1],
        arrivals: 0,
        admitted: 0,
        utility_sum: 0.0,
        duration: horizon - warmup,
    };
    let mut occupancy = 0usize;
    let mut clock = 0.0_f64;

    while let Some(event) = heap.pop() {
        let next = event.time.min(horizon);
        let from = clock.max(warmup);
        if next > from {
            stats.state_time[occupancy] += next - from;
        }
        if event.time > horizon {
            break;
        }
        clock = event.time;
        match event.kind {
            EventKind::Arrival => {
                push(
                    &mut heap,
                    &mut seq,
                    clock + interarrival.sample(rng),
                    EventKind::Arrival,
                );
                let joins = match config.policy {
                    AdmissionPolicy::Threshold(n) => occupancy < n,
                    AdmissionPolicy::JoinProbability(q) => {
                        let u: f64 = rng.random();
                        u < q && occupancy < cap
                    }
                };
                if clock > warmup {
                    stats.arrivals += 1;
                    stats.seen_counts[occupancy] += 1;
                    if joins {
                        stats.admitted += 1;
                        stats.utility_sum += reward - config.cost.eval(occupancy as f64);
                    }
                }
                if joins {
                    occupancy += 1;
                    push(
                        &mut heap,
                        &mut seq,
                        clock + config.service.sample(rng),
                        EventKind::Departure,
                    );
                }
            }
            EventKind::Departure => {
                occupancy -= 1;
            }
        }
    }
    stats
}
