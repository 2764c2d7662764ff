//! Planar primitives shared by the filter, the hull scans and the oracle.
//!
//! Coordinates are `f64`. The orientation test evaluates the plain 2x2
//! determinant with no tolerance, which is exact for integer-valued inputs
//! of moderate magnitude and for well-separated float inputs. Everything
//! that needs a turn decision goes through [`orientation`], so swapping in
//! an adaptive-precision predicate only touches this module.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Point2D {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// Nonempty, finite, index-stable sequence of points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point2D>,
}

impl PointSet {
    pub fn new(points: Vec<Point2D>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| !p.is_finite()) {
            return Err(Error::NonFinite {
                index,
                x: p.x,
                y: p.y,
            });
        }
        Ok(Self { points })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point2D::from).collect())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn as_slice(&self) -> &[Point2D] {
        &self.points
    }

    pub fn into_inner(self) -> Vec<Point2D> {
        self.points
    }
}

impl Deref for PointSet {
    type Target = [Point2D];

    fn deref(&self) -> &[Point2D] {
        &self.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// Twice the signed area of triangle `abc`.
#[inline]
pub fn cross(a: Point2D, b: Point2D, c: Point2D) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Turn direction of `a -> b -> c`. Counter-clockwise is a left turn.
#[inline]
pub fn orientation(a: Point2D, b: Point2D, c: Point2D) -> Orientation {
    let det = cross(a, b, c);
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

#[inline]
pub fn manhattan(a: Point2D, b: Point2D) -> f64 {
    (a.x - b.x).abs() + (a.y - b.y).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Containment {
    StrictlyInside,
    OnBoundary,
    Outside,
}

/// Locates `p` against a strictly convex CCW polygon.
pub fn point_in_convex_polygon(p: Point2D, poly: &[Point2D]) -> Result<Containment> {
    if poly.len() < 3 {
        return Err(Error::DegeneratePolygon(poly.len()));
    }
    Ok(locate_in_convex(p, poly))
}

/// Same as [`point_in_convex_polygon`] without the vertex-count check.
#[inline]
pub(crate) fn locate_in_convex(p: Point2D, poly: &[Point2D]) -> Containment {
    let mut touching = false;
    let mut prev = poly[poly.len() - 1];
    for &v in poly {
        match orientation(prev, v, p) {
            Orientation::Clockwise => return Containment::Outside,
            Orientation::Collinear => touching = true,
            Orientation::CounterClockwise => {}
        }
        prev = v;
    }
    if touching {
        Containment::OnBoundary
    } else {
        Containment::StrictlyInside
    }
}

/// Reduces a cyclic, weakly convex CCW vertex sequence to strict vertices.
///
/// Coincident neighbours collapse to one vertex and any vertex that does not
/// make a strict left turn with its current neighbours is dropped. Runs until
/// no vertex is removed. A result with fewer than three vertices means the
/// input was a point or a segment.
pub fn strict_convex_cycle(mut cycle: Vec<Point2D>) -> Vec<Point2D> {
    cycle.dedup();
    while cycle.len() > 1 && cycle.first() == cycle.last() {
        cycle.pop();
    }
    loop {
        if cycle.len() < 3 {
            return cycle;
        }
        let before = cycle.len();
        let mut kept: Vec<Point2D> = Vec::with_capacity(before);
        for i in 0..before {
            let prev = match kept.last() {
                Some(&p) => p,
                None => cycle[before - 1],
            };
            let cur = cycle[i];
            let next = cycle[(i + 1) % before];
            if cur == prev || orientation(prev, cur, next) != Orientation::CounterClockwise {
                continue;
            }
            kept.push(cur);
        }
        if kept.len() == before {
            return kept;
        }
        if kept.len() < 3 {
            // Everything left is collinear: keep the two ends of the segment.
            return segment_ends(&cycle);
        }
        cycle = kept;
    }
}

/// Lexicographic min and max of a collinear set, or a single point.
fn segment_ends(points: &[Point2D]) -> Vec<Point2D> {
    let lex = |a: &&Point2D, b: &&Point2D| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    };
    let lo = *points.iter().min_by(lex).unwrap();
    let hi = *points.iter().max_by(lex).unwrap();
    if lo == hi {
        vec![lo]
    } else {
        vec![lo, hi]
    }
}
