use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::{Add, Sub};

/// Logical simulation instant, in microseconds since testbed start.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct SimTime(pub u64);

/// Logical duration, in microseconds.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct SimDuration(pub u64);

impl SimTime {
    pub const ZERO: SimTime = SimTime(0);

    pub fn from_secs(s: u64) -> SimTime {
        SimTime(s * 1_000_000)
    }

    pub fn as_micros(&self) -> u64 {
        self.0
    }

    pub fn as_secs_f64(&self) -> f64 {
        self.0 as f64 / 1e6
    }

    pub fn saturating_sub(&self, other: SimTime) -> SimDuration {
        SimDuration(self.0.saturating_sub(other.0))
    }
}

impl SimDuration {
    pub const ZERO: SimDuration = SimDuration(0);

    pub fn from_secs(s: u64) -> SimDuration {
        SimDuration(s * 1_000_000)
    }

    pub fn from_millis(ms: u64) -> SimDuration {
        SimDuration(ms * 1_000)
    }

    pub fn from_millis_f64(ms: f64) -> SimDuration {
        SimDuration((ms * 1_000.0).round() as u64)
    }

    pub fn as_micros(&self) -> u64 {
        self.0
    }

    pub fn as_secs_f64(&self) -> f64 {
        self.0 as f64 / 1e6
    }
}

impl Add<SimDuration> for SimTime {
    type Output = SimTime;
    fn add(self, rhs: SimDuration) -> SimTime {
        SimTime(self.0 + rhs.0)
    }
}

impl Sub<SimTime> for SimTime {
    type Output = SimDuration;
    fn sub(self, rhs: SimTime) -> SimDuration {
        SimDuration(self.0 - rhs.0)
    }
}

impl Add for SimDuration {
    type Output = SimDuration;
    fn add(self, rhs: SimDuration) -> SimDuration {
        SimDuration(self.0 + rhs.0)
    }
}

impl fmt::Display for SimTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}s", self.as_secs_f64())
    }
}

impl fmt::Display for SimDuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}s", self.as_secs_f64())
    }
}

/// Monotone logical clock plus the scheduled event queue driving a run.
///
/// Due events fire in timestamp order, ties broken by insertion sequence,
/// so delivery order is fully deterministic for a given schedule.
#[derive(Debug)]
pub struct LogicalClock<E> {
    now: SimTime,
    seq: u64,
    queue: BinaryHeap<Reverse<QueueEntry<E>>>,
}

#[derive(Debug)]
struct QueueEntry<E> {
    at: SimTime,
    seq: u64,
    event: E,
}

impl<E> PartialEq for QueueEntry<E> {
    fn eq(&self, other: &Self) -> bool {
        self.at == other.at && self.seq == other.seq
    }
}
impl<E> Eq for QueueEntry<E> {}
impl<E> PartialOrd for QueueEntry<E> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<E> Ord for QueueEntry<E> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.at, self.seq).cmp(&(other.at, other.seq))
    }
}

impl<E> LogicalClock<E> {
    pub fn new() -> Self {
        Self {
            now: SimTime::ZERO,
            seq: 0,
            queue: BinaryHeap::new(),
        }
    }

    pub fn now(&self) -> SimTime {
        self.now
    }

    /// Schedules `event` at `at`; events in the past fire at the current instant.
    pub fn schedule(&mut self, at: SimTime, event: E) {
        let at = at.max(self.now);
        let seq = self.seq;
        self.seq += 1;
        self.queue.push(Reverse(QueueEntry { at, seq, event }));
    }

    pub fn peek_time(&self) -> Option<SimTime> {
        self.queue.peek().map(|Reverse(e)| e.at)
    }

    /// Pops the next due event, advancing the clock to its timestamp.
    pub fn pop(&mut self) -> Option<(SimTime, E)> {
        self.queue.pop().map(|Reverse(e)| {
            debug_assert!(e.at >= self.now);
            self.now = e.at;
            (e.at, e.event)
        })
    }

    /// Advances the clock without firing events (used to settle at a horizon).
    pub fn advance_to(&mut self, t: SimTime) {
        debug_assert!(self.peek_time().map(|p| p >= t).unwrap_or(true));
        if t > self.now {
            self.now = t;
        }
    }

    pub fn pending(&self) -> usize {
        self.queue.len()
    }
}

impl<E> Default for LogicalClock<E> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fires_in_time_order_ties_by_insertion() {
        let mut clock: LogicalClock<&str> = LogicalClock::new();
        clock.schedule(SimTime(10), "b");
        clock.schedule(SimTime(5), "a");
        clock.schedule(SimTime(10), "c");
        clock.schedule(SimTime(10), "d");
        let fired: Vec<_> = std::iter::from_fn(|| clock.pop()).collect();
        assert_eq!(
            fired,
            vec![
                (SimTime(5), "a"),
                (SimTime(10), "b"),
                (SimTime(10), "c"),
                (SimTime(10), "d")
            ]
        );
        assert_eq!(clock.now(), SimTime(10));
    }

    #[test]
    fn never_goes_backwards() {
        let mut clock: LogicalClock<u32> = LogicalClock::new();
        clock.schedule(SimTime(10), 1);
        clock.pop();
        clock.schedule(SimTime(3), 2); // in the past: fires now
        let (at, _) = clock.pop().unwrap();
        assert_eq!(at, SimTime(10));
    }
}
