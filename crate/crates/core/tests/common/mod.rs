//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use heaphull::geom::{orientation, Orientation};
use heaphull::pointgen::SplitMix64;
use heaphull::{generate, Distribution, GenSpec, Point2D, PointSet};

/// The five corpus families used throughout: four distributions plus the
/// 2% distorted circle.
pub const FAMILIES: [(Distribution, f64); 5] = [
    (Distribution::Normal, 0.0),
    (Distribution::UniformSquare, 0.0),
    (Distribution::UniformDisk, 0.0),
    (Distribution::Circle, 0.0),
    (Distribution::Circle, 2.0),
];

pub fn family_name(d: Distribution, distort: f64) -> String {
    if distort == 0.0 {
        d.name().to_string()
    } else {
        format!("{}+{distort}%", d.name())
    }
}

pub fn corpus(d: Distribution, distort: f64, n: usize, seed: u64) -> PointSet {
    generate(&GenSpec {
        distribution: d,
        n,
        seed,
        distort_pct: distort,
    })
    .expect("valid corpus spec")
}

fn on_closed_segment(a: Point2D, b: Point2D, p: Point2D) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// O(n^3) hull. A directed pair (a, b) is a hull edge when every other point
/// is strictly left of it or on the closed segment; the strict vertices are
/// the edge tails, chained by following each edge to its head.
pub fn brute_force_hull(points: &[Point2D]) -> Vec<Point2D> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() == 1 {
        return pts;
    }
    let m = pts.len();
    let mut next = vec![None; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let (a, b) = (pts[i], pts[j]);
            let edge = pts.iter().all(|&p| match orientation(a, b, p) {
                Orientation::CounterClockwise => true,
                Orientation::Collinear => on_closed_segment(a, b, p),
                Orientation::Clockwise => false,
            });
            if edge {
                assert!(next[i].is_none(), "two hull edges leave {a:?}");
                next[i] = Some(j);
            }
        }
    }
    // pts[0] is the lexicographic minimum, always a strict vertex.
    let mut cycle = vec![pts[0]];
    let mut cur = next[0].expect("lexicographic minimum has an outgoing edge");
    while cur != 0 {
        assert!(cycle.len() <= m, "hull edges do not close");
        cycle.push(pts[cur]);
        cur = next[cur].expect("hull vertex has an outgoing edge");
    }
    cycle
}

/// Random set of up to `max_n` points: either floats in the unit square or
/// a small integer grid, which forces duplicates and collinear runs.
pub fn random_small_set(rng: &mut SplitMix64, max_n: usize) -> Vec<Point2D> {
    let n = 1 + (rng.next_u64() % max_n as u64) as usize;
    let grid = rng.next_u64().is_multiple_of(2);
    let side = 2 + rng.next_u64() % 15;
    (0..n)
        .map(|_| {
            if grid {
                let x = (rng.next_u64() % side) as f64;
                let y = (rng.next_u64() % side) as f64;
                Point2D::new(x, y)
            } else {
                Point2D::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0)
            }
        })
        .collect()
}

pub fn distinct_count(points: &[Point2D]) -> usize {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    pts.len()
}

pub fn bits(points: &[Point2D]) -> Vec<(u64, u64)> {
    points
        .iter()
        .map(|p| (p.x.to_bits(), p.y.to_bits()))
        .collect()
}
