//! Octagon pre-filter.
//!
//! Two dependent reduction passes find the filtering polygon: the first
//! locates the four axis extremes, the second the point closest (in
//! Manhattan distance) to each corner of the bounding box those extremes
//! span. The eight points, in CCW order, form a convex octagon inscribed in
//! the hull. A parallel map then labels every point: `0` when it lies inside
//! or on the octagon, otherwise the quadrant queue (1..=4) of the first
//! axis-extreme edge it lies strictly to the right of.

use crate::geom::{locate_in_convex, orientation, strict_convex_cycle, Containment, Orientation};
use crate::geom::{manhattan, Point2D, PointSet};
use crate::par_reduce::{ArgReduceKey, ReduceEngine};

/// Label of a point removed by the filter.
pub const DISCARDED: u8 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisExtremes {
    pub east: usize,
    pub north: usize,
    pub west: usize,
    pub south: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerExtremes {
    pub ne: usize,
    pub nw: usize,
    pub sw: usize,
    pub se: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremeSet {
    pub east: usize,
    pub north: usize,
    pub west: usize,
    pub south: usize,
    pub corner_ne: usize,
    pub corner_nw: usize,
    pub corner_sw: usize,
    pub corner_se: usize,
}

impl ExtremeSet {
    pub fn new(axis: AxisExtremes, corners: CornerExtremes) -> Self {
        Self {
            east: axis.east,
            north: axis.north,
            west: axis.west,
            south: axis.south,
            corner_ne: corners.ne,
            corner_nw: corners.nw,
            corner_sw: corners.sw,
            corner_se: corners.se,
        }
    }

    pub fn axis(&self) -> AxisExtremes {
        AxisExtremes {
            east: self.east,
            north: self.north,
            west: self.west,
            south: self.south,
        }
    }

    /// Indices in CCW candidate order, starting at the east extreme.
    pub fn ccw_indices(&self) -> [usize; 8] {
        [
            self.east,
            self.corner_ne,
            self.north,
            self.corner_nw,
            self.west,
            self.corner_sw,
            self.south,
            self.corner_se,
        ]
    }

    /// Queue a carved-out extreme falls back to when it sits on the
    /// axis-extreme quadrilateral. Matches by coordinates so duplicates of
    /// an extreme survive too. First matching role wins.
    fn home_queue(&self, p: Point2D, points: &[Point2D]) -> Option<u8> {
        self.ccw_indices()
            .iter()
            .position(|&e| points[e] == p)
            .map(|pos| (pos / 2) as u8 + 1)
    }

    /// Directed quadrilateral edges `(entry, exit)` for queues 1..=4.
    pub fn quad_edges(&self, points: &[Point2D]) -> [(Point2D, Point2D); 4] {
        let (e, n, w, s) = (
            points[self.east],
            points[self.north],
            points[self.west],
            points[self.south],
        );
        [(e, n), (n, w), (w, s), (s, e)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Octagon {
    vertices: Vec<Point2D>,
}

impl Octagon {
    pub fn vertices(&self) -> &[Point2D] {
        &self.vertices
    }

    /// Fewer than three vertices: there is no interior and nothing is filtered.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }
}

/// One label per input point: 0 for discarded, 1..=4 for a quadrant queue.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelArray(Vec<u8>);

impl LabelArray {
    pub fn new(labels: Vec<u8>) -> Self {
        debug_assert!(labels.iter().all(|&l| l <= 4));
        Self(labels)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn discarded(&self) -> usize {
        self.0.iter().filter(|&&l| l == DISCARDED).count()
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }
}

type Slot = Option<ArgReduceKey>;

fn take_min(slot: Slot, cand: ArgReduceKey) -> Slot {
    Some(slot.map_or(cand, |s| s.min(cand)))
}

fn take_max(slot: Slot, cand: ArgReduceKey) -> Slot {
    Some(slot.map_or(cand, |s| s.max(cand)))
}

fn merge(a: Slot, b: Slot, op: fn(ArgReduceKey, ArgReduceKey) -> ArgReduceKey) -> Slot {
    match (a, b) {
        (Some(a), Some(b)) => Some(op(a, b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// First reduction pass: argmax x, argmax y, argmin x, argmin y in one sweep.
pub fn find_axis_extremes(points: &PointSet, engine: &ReduceEngine) -> AxisExtremes {
    let pts = points.as_slice();
    let [east, north, west, south] = engine.fold_chunks(
        pts.len(),
        || [None; 4],
        |[e, n, w, s]: [Slot; 4], j| {
            let p = pts[j];
            [
                take_max(e, ArgReduceKey::new(p.x, j)),
                take_max(n, ArgReduceKey::new(p.y, j)),
                take_min(w, ArgReduceKey::new(p.x, j)),
                take_min(s, ArgReduceKey::new(p.y, j)),
            ]
        },
        |[e1, n1, w1, s1], [e2, n2, w2, s2]| {
            [
                merge(e1, e2, ArgReduceKey::max),
                merge(n1, n2, ArgReduceKey::max),
                merge(w1, w2, ArgReduceKey::min),
                merge(s1, s2, ArgReduceKey::min),
            ]
        },
    );
    let idx = |s: Slot| s.expect("point set is nonempty").index;
    AxisExtremes {
        east: idx(east),
        north: idx(north),
        west: idx(west),
        south: idx(south),
    }
}

/// Bounding-box corners NE, NW, SW, SE spanned by the axis extremes.
pub fn bounding_corners(points: &[Point2D], axis: AxisExtremes) -> [Point2D; 4] {
    let x_max = points[axis.east].x;
    let y_max = points[axis.north].y;
    let x_min = points[axis.west].x;
    let y_min = points[axis.south].y;
    [
        Point2D::new(x_max, y_max),
        Point2D::new(x_min, y_max),
        Point2D::new(x_min, y_min),
        Point2D::new(x_max, y_min),
    ]
}

/// Second reduction pass: Manhattan-closest point to each bounding-box corner.
pub fn find_corner_extremes(
    points: &PointSet,
    axis: AxisExtremes,
    engine: &ReduceEngine,
) -> CornerExtremes {
    let pts = points.as_slice();
    let corners = bounding_corners(pts, axis);
    let found = engine.fold_chunks(
        pts.len(),
        || [None; 4],
        |mut acc: [Slot; 4], j| {
            let p = pts[j];
            for (slot, &c) in acc.iter_mut().zip(&corners) {
                *slot = take_min(*slot, ArgReduceKey::new(manhattan(p, c), j));
            }
            acc
        },
        |a, b| {
            let mut out = [None; 4];
            for k in 0..4 {
                out[k] = merge(a[k], b[k], ArgReduceKey::min);
            }
            out
        },
    );
    let idx = |s: Slot| s.expect("point set is nonempty").index;
    CornerExtremes {
        ne: idx(found[0]),
        nw: idx(found[1]),
        sw: idx(found[2]),
        se: idx(found[3]),
    }
}

/// Both passes, in order.
pub fn find_extremes(points: &PointSet, engine: &ReduceEngine) -> ExtremeSet {
    let axis = find_axis_extremes(points, engine);
    let corners = find_corner_extremes(points, axis, engine);
    ExtremeSet::new(axis, corners)
}

/// Strictly convex CCW polygon through the eight extremes.
pub fn build_octagon(points: &PointSet, extremes: &ExtremeSet) -> Octagon {
    let candidates = extremes.ccw_indices().iter().map(|&j| points[j]).collect();
    Octagon {
        vertices: strict_convex_cycle(candidates),
    }
}

/// Queue of a point outside the axis-extreme quadrilateral.
///
/// Edges are tested in the fixed order E->N, N->W, W->S, S->E and the first
/// one with `p` strictly on its right wins. Returns `None` when `p` is not
/// strictly outside any edge.
pub fn find_queue(p: Point2D, extremes: &ExtremeSet, points: &[Point2D]) -> Option<u8> {
    extremes
        .quad_edges(points)
        .iter()
        .position(|&(a, b)| orientation(a, b, p) == Orientation::Clockwise)
        .map(|i| i as u8 + 1)
}

fn on_segment(a: Point2D, b: Point2D, p: Point2D) -> bool {
    orientation(a, b, p) == Orientation::Collinear
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Queue for a point that is not strictly outside any quadrilateral edge.
/// Only reached when the octagon is degenerate, i.e. the quadrilateral has
/// collapsed onto a segment.
fn queue_on_quad(p: Point2D, edges: &[(Point2D, Point2D); 4]) -> u8 {
    edges
        .iter()
        .position(|&(a, b)| on_segment(a, b, p))
        .map_or(1, |i| i as u8 + 1)
}

pub fn classify_points(
    points: &PointSet,
    octagon: &Octagon,
    extremes: &ExtremeSet,
    engine: &ReduceEngine,
) -> LabelArray {
    let pts = points.as_slice();
    let edges = extremes.quad_edges(pts);
    let labels = if octagon.is_degenerate() {
        engine.map(pts, |&p| {
            find_queue(p, extremes, pts).unwrap_or_else(|| queue_on_quad(p, &edges))
        })
    } else {
        let poly = octagon.vertices();
        engine.map(pts, |&p| match locate_in_convex(p, poly) {
            Containment::StrictlyInside => DISCARDED,
            Containment::Outside => find_queue(p, extremes, pts).unwrap_or(DISCARDED),
            Containment::OnBoundary => match extremes.home_queue(p, pts) {
                Some(home) => find_queue(p, extremes, pts).unwrap_or(home),
                None => DISCARDED,
            },
        })
    };
    LabelArray::new(labels)
}

/// Everything the filter stage produces.
#[derive(Debug, Clone)]
pub struct FilterOutput {
    pub extremes: ExtremeSet,
    pub octagon: Octagon,
    pub labels: LabelArray,
}

impl FilterOutput {
    pub fn filter_rate(&self) -> f64 {
        crate::hull::filter_rate(&self.labels)
    }
}

pub fn filter_points(points: &PointSet, engine: &ReduceEngine) -> FilterOutput {
    let extremes = find_extremes(points, engine);
    let octagon = build_octagon(points, &extremes);
    let labels = classify_points(points, &octagon, &extremes, engine);
    FilterOutput {
        extremes,
        octagon,
        labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par_reduce::ReduceConfig;

    fn engine() -> ReduceEngine {
        ReduceEngine::new(ReduceConfig::new(2, 2).unwrap()).unwrap()
    }

    fn set(coords: &[(f64, f64)]) -> PointSet {
        PointSet::from_xy(coords).unwrap()
    }

    fn square() -> PointSet {
        set(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    fn square_center() -> PointSet {
        set(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)])
    }

    #[test]
    fn axis_extremes_of_square() {
        let ax = find_axis_extremes(&square(), &engine());
        assert_eq!(
            ax,
            AxisExtremes {
                east: 1,
                north: 2,
                west: 0,
                south: 0
            }
        );
    }

    #[test]
    fn axis_extremes_single_point() {
        let ax = find_axis_extremes(&set(&[(3.0, -1.0)]), &engine());
        assert_eq!(
            ax,
            AxisExtremes {
                east: 0,
                north: 0,
                west: 0,
                south: 0
            }
        );
    }

    #[test]
    fn corners_of_square_with_center() {
        let pts = square_center();
        let e = engine();
        let c = find_corner_extremes(&pts, find_axis_extremes(&pts, &e), &e);
        assert_eq!(c.ne, 2);
        assert_eq!(c.sw, 0);
        assert_eq!(c.nw, 3);
        assert_eq!(c.se, 1);
    }

    #[test]
    fn corners_all_identical() {
        let pts = set(&[(2.0, 2.0); 6]);
        let e = engine();
        let c = find_corner_extremes(&pts, find_axis_extremes(&pts, &e), &e);
        assert_eq!(
            c,
            CornerExtremes {
                ne: 0,
                nw: 0,
                sw: 0,
                se: 0
            }
        );
    }

    #[test]
    fn octagon_of_square_is_the_square() {
        let pts = square_center();
        let ex = find_extremes(&pts, &engine());
        let oct = build_octagon(&pts, &ex);
        assert_eq!(
            oct.vertices(),
            &[
                Point2D::new(1.0, 0.0),
                Point2D::new(1.0, 1.0),
                Point2D::new(0.0, 1.0),
                Point2D::new(0.0, 0.0)
            ]
        );
    }

    #[test]
    fn collinear_octagon_is_degenerate() {
        let pts = set(&[(0.0, 0.0), (3.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let e = engine();
        let ex = find_extremes(&pts, &e);
        let oct = build_octagon(&pts, &ex);
        assert_eq!(oct.vertices().len(), 2);
        assert!(oct.is_degenerate());
        let labels = classify_points(&pts, &oct, &ex, &e);
        assert!(labels.as_slice().iter().all(|&l| l != 0));
    }

    #[test]
    fn octagon_on_sixteen_circle_points() {
        let mut coords = Vec::new();
        for i in 0..16 {
            let t = std::f64::consts::TAU * i as f64 / 16.0 + 0.1;
            coords.push((t.cos(), t.sin()));
        }
        // interior points on a small grid
        for i in 0..10 {
            for k in 0..10 {
                coords.push((i as f64 * 0.1 - 0.45, k as f64 * 0.1 - 0.45));
            }
        }
        let pts = set(&coords);
        let ex = find_extremes(&pts, &engine());
        let oct = build_octagon(&pts, &ex);
        let v = oct.vertices();
        assert_eq!(v.len(), 8);
        for i in 0..8 {
            assert_eq!(
                orientation(v[i], v[(i + 1) % 8], v[(i + 2) % 8]),
                Orientation::CounterClockwise
            );
        }
        let circle = &pts[..16];
        assert!(v.iter().all(|q| circle.contains(q)));
        for j in ex.ccw_indices() {
            assert!(j < 16);
        }
    }

    #[test]
    fn find_queue_examples() {
        let pts = square();
        let ex = find_extremes(&pts, &engine());
        // E=(1,0), N=(1,1), W=(0,0), S=(0,0)
        assert_eq!(find_queue(Point2D::new(2.0, 2.0), &ex, &pts), Some(1));
        // W and S are the same point, so the W->S edge has no outside and
        // the SW point falls through to S->E
        assert_eq!(find_queue(Point2D::new(-2.0, -2.0), &ex, &pts), Some(4));
        assert_eq!(find_queue(Point2D::new(0.5, 0.25), &ex, &pts), None);
    }

    #[test]
    fn find_queue_prefers_first_edge() {
        // Diamond quadrilateral; (2, 0.5) is right of both E->N and S->E.
        let pts = set(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]);
        let ex = find_extremes(&pts, &engine());
        let q = Point2D::new(2.0, 0.5);
        let edges = ex.quad_edges(&pts);
        assert_eq!(
            orientation(edges[0].0, edges[0].1, q),
            Orientation::Clockwise
        );
        assert_eq!(
            orientation(edges[3].0, edges[3].1, q),
            Orientation::Clockwise
        );
        assert_eq!(find_queue(q, &ex, &pts), Some(1));
        assert_eq!(find_queue(Point2D::new(1.0, -1.0), &ex, &pts), Some(4));
        assert_eq!(find_queue(Point2D::new(-1.0, 1.0), &ex, &pts), Some(2));
        assert_eq!(find_queue(Point2D::new(-2.0, -2.0), &ex, &pts), Some(3));
        assert_eq!(find_queue(Point2D::new(0.1, 0.1), &ex, &pts), None);
    }

    #[test]
    fn square_center_labels() {
        let pts = square_center();
        let out = filter_points(&pts, &engine());
        let l = out.labels.as_slice();
        assert_eq!(l[4], 0);
        assert!(l[..4].iter().all(|&x| x != 0));
        assert_eq!(out.labels.discarded(), 1);
    }

    #[test]
    fn points_on_octagon_edge_are_discarded() {
        let pts = set(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 2.0),
            (0.0, 2.0),
            (1.0, 0.0),
            (2.0, 1.0),
        ]);
        let out = filter_points(&pts, &engine());
        assert_eq!(out.labels.as_slice()[4], 0);
        assert_eq!(out.labels.as_slice()[5], 0);
    }

    #[test]
    fn outside_points_get_their_quadrant() {
        // diamond plus one point beyond each edge
        let pts = set(&[
            (4.0, 0.0),
            (0.0, 4.0),
            (-4.0, 0.0),
            (0.0, -4.0),
            (2.9, 2.9),
            (-2.9, 2.9),
            (-2.9, -2.9),
            (2.9, -2.9),
            (2.5, 2.5),
            (0.0, 0.0),
        ]);
        let out = filter_points(&pts, &engine());
        assert_eq!(out.labels.as_slice(), &[1, 2, 3, 4, 1, 2, 3, 4, 0, 0]);
    }
}
