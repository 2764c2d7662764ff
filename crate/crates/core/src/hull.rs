//! Hull assembly from the filter's labels, plus the full-set reference hull.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::filter::{filter_points, FilterOutput, LabelArray, DISCARDED};
use crate::geom::{orientation, strict_convex_cycle, Orientation, Point2D, PointSet};
use crate::par_reduce::ReduceEngine;

/// Surviving point indices per quadrant, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadQueues {
    pub queues: [Vec<usize>; 4],
}

impl QuadQueues {
    /// Queue for quadrant `q` in `1..=4`.
    pub fn get(&self, q: u8) -> &[usize] {
        &self.queues[usize::from(q - 1)]
    }

    pub fn total(&self) -> usize {
        self.queues.iter().map(Vec::len).sum()
    }
}

/// Strictly convex CCW vertex cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct HullPolygon {
    vertices: Vec<Point2D>,
}

impl HullPolygon {
    pub fn from_vertices(vertices: Vec<Point2D>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point2D] {
        &self.vertices
    }

    pub fn h(&self) -> usize {
        self.vertices.len()
    }

    pub fn into_vertices(self) -> Vec<Point2D> {
        self.vertices
    }

    /// True when both polygons list the same cycle, possibly rotated.
    pub fn same_cycle(&self, other: &HullPolygon) -> bool {
        cycle_mismatch(&self.vertices, &other.vertices).is_none()
    }
}

/// Where two vertex cycles first disagree once aligned on the first vertex
/// of `actual`. `None` means they are equal up to rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleMismatch {
    /// Position in `actual` of the first vertex that disagrees.
    pub position: usize,
    pub actual: Option<Point2D>,
    pub expected: Option<Point2D>,
}

pub fn cycle_mismatch(actual: &[Point2D], expected: &[Point2D]) -> Option<CycleMismatch> {
    if actual.is_empty() || expected.is_empty() {
        return if actual.len() == expected.len() {
            None
        } else {
            Some(CycleMismatch {
                position: 0,
                actual: actual.first().copied(),
                expected: expected.first().copied(),
            })
        };
    }
    let offset = expected.iter().position(|&v| v == actual[0]);
    let Some(offset) = offset else {
        return Some(CycleMismatch {
            position: 0,
            actual: Some(actual[0]),
            expected: Some(expected[0]),
        });
    };
    let m = expected.len();
    for (i, &a) in actual.iter().enumerate() {
        let e = if i < m {
            Some(expected[(offset + i) % m])
        } else {
            None
        };
        if e != Some(a) {
            return Some(CycleMismatch {
                position: i,
                actual: Some(a),
                expected: e,
            });
        }
    }
    if actual.len() < m {
        return Some(CycleMismatch {
            position: actual.len(),
            actual: None,
            expected: Some(expected[(offset + actual.len()) % m]),
        });
    }
    None
}

pub fn build_queues(labels: &LabelArray) -> QuadQueues {
    let mut q = QuadQueues::default();
    for (j, &l) in labels.as_slice().iter().enumerate() {
        if l != DISCARDED {
            q.queues[usize::from(l - 1)].push(j);
        }
    }
    q
}

/// Fraction of points the filter discarded.
pub fn filter_rate(labels: &LabelArray) -> f64 {
    if labels.is_empty() {
        return 0.0;
    }
    labels.discarded() as f64 / labels.len() as f64
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("finite coordinates")
}

/// Sweep order for each quadrant, from its entry extreme to its exit extreme.
fn sweep_order(quadrant: u8) -> fn(&Point2D, &Point2D) -> Ordering {
    match quadrant {
        1 => |a, b| cmp_f64(b.x, a.x).then(cmp_f64(a.y, b.y)),
        2 => |a, b| cmp_f64(b.y, a.y).then(cmp_f64(b.x, a.x)),
        3 => |a, b| cmp_f64(a.x, b.x).then(cmp_f64(b.y, a.y)),
        4 => |a, b| cmp_f64(a.y, b.y).then(cmp_f64(a.x, b.x)),
        _ => panic!("quadrant must be in 1..=4, got {quadrant}"),
    }
}

/// Convex chain of one quadrant, CCW from its entry extreme.
///
/// `points` should include the quadrant's entry and exit extremes. The
/// chain keeps strict left turns only and omits the exit point, which the
/// next quadrant starts with. A chain that collapses to a single point
/// keeps it.
pub fn quadrant_hull(points: &[Point2D], quadrant: u8) -> Vec<Point2D> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(sweep_order(quadrant));
    sorted.dedup();
    let mut chain: Vec<Point2D> = Vec::with_capacity(sorted.len());
    for p in sorted {
        while chain.len() >= 2
            && orientation(chain[chain.len() - 2], chain[chain.len() - 1], p)
                != Orientation::CounterClockwise
        {
            chain.pop();
        }
        chain.push(p);
    }
    if chain.len() >= 2 {
        chain.pop();
    }
    chain
}

/// Hull assembly: queues, four chains (run concurrently), CCW concatenation.
pub fn hull_from_filter(
    points: &PointSet,
    filter: &FilterOutput,
    engine: &ReduceEngine,
) -> HullPolygon {
    let queues = build_queues(&filter.labels);
    let pts = points.as_slice();
    let edges = filter.extremes.quad_edges(pts);
    let chains: Vec<Vec<Point2D>> = engine.install(|| {
        (1u8..=4)
            .into_par_iter()
            .map(|q| {
                let (entry, exit) = edges[usize::from(q - 1)];
                let members = queues.get(q);
                let mut local = Vec::with_capacity(members.len() + 2);
                local.push(entry);
                local.extend(members.iter().map(|&j| pts[j]));
                local.push(exit);
                quadrant_hull(&local, q)
            })
            .collect()
    });
    HullPolygon::from_vertices(strict_convex_cycle(chains.concat()))
}

/// Wall-clock split of one pipeline run.
#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimings {
    pub filter: Duration,
    pub hull: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone)]
pub struct HeaphullRun {
    pub hull: HullPolygon,
    pub filter: FilterOutput,
    pub timings: StageTimings,
}

pub fn heaphull_detailed(points: &PointSet, engine: &ReduceEngine) -> HeaphullRun {
    let t0 = Instant::now();
    let filter = filter_points(points, engine);
    let t1 = Instant::now();
    let hull = hull_from_filter(points, &filter, engine);
    let t2 = Instant::now();
    HeaphullRun {
        hull,
        filter,
        timings: StageTimings {
            filter: t1 - t0,
            hull: t2 - t1,
            total: t2 - t0,
        },
    }
}

pub fn heaphull(points: &PointSet, engine: &ReduceEngine) -> HullPolygon {
    heaphull_detailed(points, engine).hull
}

/// Andrew's monotone chain over the whole set; the reference hull.
pub fn oracle_hull(points: &PointSet) -> HullPolygon {
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(|a, b| cmp_f64(a.x, b.x).then(cmp_f64(a.y, b.y)));
    sorted.dedup();
    if sorted.len() <= 2 {
        return HullPolygon::from_vertices(sorted);
    }
    let mut hull: Vec<Point2D> = Vec::with_capacity(2 * sorted.len());
    let lower = sorted.iter();
    let upper = sorted.iter().rev().skip(1);
    let mut floor = 1;
    for (k, &p) in lower.chain(upper).enumerate() {
        if k == sorted.len() {
            floor = hull.len();
        }
        while hull.len() > floor
            && orientation(hull[hull.len() - 2], hull[hull.len() - 1], p)
                != Orientation::CounterClockwise
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    HullPolygon::from_vertices(hull)
}
