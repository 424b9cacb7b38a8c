//! Severi degrees from marked floor diagrams.
//!
//! A marked floor diagram of degree `d` and cogenus `δ` is a total order on
//! `d` floors, `d` infinite elevators and the midpoints of `E = d(d-1)/2 - δ`
//! bounded elevators. Read bottom-up, every infinite elevator lies below the
//! floor it ends on and every bounded elevator runs from a lower floor
//! through its midpoint to a higher floor. Each floor satisfies
//! `(weight arriving from below) - (weight leaving upwards) = 1`. The
//! diagram counts with multiplicity `Π w^2` over bounded elevators.
//!
//! The scan below builds the order one element at a time, so each marked
//! diagram is produced exactly once: open elevators are told apart by their
//! position, elevators still waiting for their midpoint only by their lower
//! floor and weight.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Default)]
struct State {
    floors_left: u32,
    midpoints_left: u32,
    ends_left: u32,
    next_floor: u32,
    /// Weights of elevators whose lower end is placed, waiting for a floor.
    open: Vec<u32>,
    /// `(lower floor, weight) -> count` of elevators without a midpoint yet.
    pending: BTreeMap<(u32, u32), u32>,
}

impl State {
    fn pending_total(&self) -> u32 {
        self.pending.values().sum()
    }
}

/// `N(d, δ)` by floor diagrams; zero when `δ > d(d-1)/2`.
pub fn floor_count(d: u32, delta: u32) -> u64 {
    let max_delta = d * d.saturating_sub(1) / 2;
    if d == 0 || delta > max_delta {
        return 0;
    }
    let mut state = State {
        floors_left: d,
        midpoints_left: max_delta - delta,
        ends_left: d,
        ..State::default()
    };
    scan(&mut state)
}

fn scan(s: &mut State) -> u64 {
    if s.floors_left == 0 {
        let done = s.midpoints_left == 0 && s.ends_left == 0 && s.open.is_empty() && s.pending.is_empty();
        return u64::from(done);
    }
    let mut total = 0;

    if s.ends_left > 0 {
        s.ends_left -= 1;
        s.open.push(1);
        total += scan(s);
        s.open.pop();
        s.ends_left += 1;
    }

    if s.midpoints_left > 0 {
        let keys: Vec<(u32, u32)> = s.pending.keys().copied().collect();
        for key in keys {
            let w = key.1;
            take_pending(s, key);
            s.midpoints_left -= 1;
            s.open.push(w);
            total += u64::from(w * w) * scan(s);
            s.open.pop();
            s.midpoints_left += 1;
            *s.pending.entry(key).or_insert(0) += 1;
        }
    }

    // a floor absorbs a nonempty subset of the open elevators
    let n = s.open.len();
    for mask in 1u32..(1 << n) {
        let absorbed: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let weight: u32 = absorbed.iter().map(|&i| s.open[i]).sum();
        let free = s.midpoints_left - s.pending_total();
        let saved_open = s.open.clone();
        s.open = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| saved_open[i]).collect();
        let floor = s.next_floor;
        s.floors_left -= 1;
        s.next_floor += 1;
        for parts in partitions(weight - 1, free) {
            for &w in &parts {
                *s.pending.entry((floor, w)).or_insert(0) += 1;
            }
            total += scan(s);
            for &w in &parts {
                take_pending(s, (floor, w));
            }
        }
        s.next_floor -= 1;
        s.floors_left += 1;
        s.open = saved_open;
    }
    total
}

fn take_pending(s: &mut State, key: (u32, u32)) {
    let c = s.pending.get_mut(&key).expect("pending elevator");
    *c -= 1;
    if *c == 0 {
        s.pending.remove(&key);
    }
}

/// Partitions of `n` into at most `max_parts` positive parts, nonincreasing.
fn partitions(n: u32, max_parts: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, largest: u32, max_parts: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if max_parts == 0 {
            return;
        }
        for p in (1..=largest.min(n)).rev() {
            cur.push(p);
            go(n - p, p, max_parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}
