//! K-nearest-neighbor table and span-based rejection of candidate tuples.

use crate::geometry::Point2;
use crate::recognition::Situation;
use crate::template::SpanBound;

pub const DEFAULT_K: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    /// Index into the situation's object list.
    pub index: usize,
    pub distance: f64,
}

/// For each situation object, its `k` nearest other objects by Euclidean
/// distance, ascending, ties broken by ascending object id.
#[derive(Debug, Clone)]
pub struct KnnTable {
    k: usize,
    locations: Vec<Point2>,
    neighbors: Vec<Vec<Neighbor>>,
}

pub fn build_knn_table(s: &Situation, k: usize) -> KnnTable {
    assert!(k >= 1, "k must be at least 1");
    let locations: Vec<Point2> = s.objects.iter().map(|o| o.location).collect();
    let neighbors = (0..locations.len())
        .map(|i| {
            let mut row: Vec<Neighbor> = (0..locations.len())
                .filter(|&j| j != i)
                .map(|j| Neighbor { index: j, distance: locations[i].distance(locations[j]) })
                .collect();
            row.sort_by(|a, b| {
                a.distance
                    .total_cmp(&b.distance)
                    .then_with(|| s.objects[a.index].id.cmp(&s.objects[b.index].id))
            });
            row.truncate(k);
            row
        })
        .collect();
    KnnTable { k, locations, neighbors }
}

impl KnnTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn location(&self, index: usize) -> Point2 {
        self.locations[index]
    }

    pub fn neighbors(&self, index: usize) -> &[Neighbor] {
        &self.neighbors[index]
    }

    /// Exact distance between two objects, read from the table when present.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        self.neighbors[i]
            .iter()
            .find(|n| n.index == j)
            .map_or_else(|| self.locations[i].distance(self.locations[j]), |n| n.distance)
    }

    /// Whether two objects lie within `bound` of each other. An object
    /// missing from a full neighbor list is at least as far as the last entry.
    pub fn within(&self, i: usize, j: usize, bound: SpanBound) -> bool {
        let SpanBound::Bounded(b) = bound else { return true };
        if i == j {
            return b >= 0.0;
        }
        let row = &self.neighbors[i];
        if let Some(n) = row.iter().find(|n| n.index == j) {
            return n.distance <= b;
        }
        if row.len() == self.k && row.last().is_some_and(|last| last.distance > b) {
            return false;
        }
        self.locations[i].distance(self.locations[j]) <= b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanDecision {
    Keep,
    Reject,
}

/// Rejects a tuple iff some pairwise distance exceeds the bound.
pub fn span_filter(table: &KnnTable, tuple: &[usize], bound: SpanBound) -> SpanDecision {
    for (a, &i) in tuple.iter().enumerate() {
        for &j in &tuple[a + 1..] {
            if !table.within(i, j, bound) {
                return SpanDecision::Reject;
            }
        }
    }
    SpanDecision::Keep
}
