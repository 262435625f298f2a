//! Planar primitives and Delaunay triangulation.
//!
//! The triangulation is built with Bowyer-Watson incremental insertion.
//! Instead of a finite super-triangle, three ghost vertices at infinity
//! bound the construction; circumcircle tests involving ghosts degenerate
//! to half-plane tests, so predicates on real triangles never mix scales.

use thiserror::Error;

/// Absolute tolerance for the collinearity and in-circle predicates,
/// calibrated for unit-scale coordinates.
pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("need at least 3 points, got {got}")]
    TooFewPoints { got: usize },
    #[error("points {first} and {second} are exact duplicates")]
    DuplicatePoint { first: usize, second: usize },
    #[error("all points are collinear")]
    AllCollinear,
    #[error("point {index} has a non-finite coordinate")]
    NonFiniteCoordinate { index: usize },
    #[error("point coincides with the origin of the angle measurement")]
    CoincidentPoint,
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// A triangle as three distinct indices into a point list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triangle {
    pub fn indices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    pub fn shares_vertex(&self, other: &Triangle) -> bool {
        self.indices().iter().any(|&v| other.contains_vertex(v))
    }
}

/// A planar point set with its Delaunay triangle list.
///
/// Values produced by [`delaunay`] satisfy the empty-circumcircle
/// property within the construction tolerance and tile the convex hull;
/// the fields are public so synthetic meshes can be assembled in tests
/// and downstream analyses.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub points: Vec<Point2>,
    pub triangles: Vec<Triangle>,
}

/// Twice the signed area of (a, b, c); positive when counterclockwise.
fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Whether `p` lies strictly inside the circumcircle of (a, b, c),
/// beyond `epsilon`. Orientation of the triangle does not matter.
pub fn in_circumcircle(a: Point2, b: Point2, c: Point2, p: Point2, epsilon: f64) -> bool {
    let (b, c) = if orient2d(a, b, c) < 0.0 { (c, b) } else { (b, c) };
    let ax = a.x - p.x;
    let ay = a.y - p.y;
    let bx = b.x - p.x;
    let by = b.y - p.y;
    let cx = c.x - p.x;
    let cy = c.y - p.y;
    let det = (ax * ax + ay * ay) * (bx * cy - by * cx)
        - (bx * bx + by * by) * (ax * cy - ay * cx)
        + (cx * cx + cy * cy) * (ax * by - ay * bx);
    det > epsilon
}

/// Positive shoelace area of a triangle.
pub fn triangle_area(t: &Triangle, points: &[Point2]) -> f64 {
    orient2d(points[t.a], points[t.b], points[t.c]).abs() / 2.0
}

/// Arithmetic mean of the three triangle vertices.
pub fn centroid(t: &Triangle, points: &[Point2]) -> Point2 {
    Point2::new(
        (points[t.a].x + points[t.b].x + points[t.c].x) / 3.0,
        (points[t.a].y + points[t.b].y + points[t.c].y) / 3.0,
    )
}

/// Full-quadrant angle of `p - origin`, in (-pi, pi].
pub fn orientation_angle(p: Point2, origin: Point2) -> Result<f64, GeometryError> {
    if p == origin {
        return Err(GeometryError::CoincidentPoint);
    }
    let angle = (p.y - origin.y).atan2(p.x - origin.x);
    if angle == -std::f64::consts::PI {
        Ok(std::f64::consts::PI)
    } else {
        Ok(angle)
    }
}

/// Delaunay triangulation with the default tolerance.
pub fn delaunay(points: &[Point2]) -> Result<Triangulation, GeometryError> {
    delaunay_with_epsilon(points, DEFAULT_EPSILON)
}

// Ghost vertices sit at infinity in three fixed directions; a triangle
// with a ghost vertex stands for the unbounded region beyond a hull edge.
const GHOST_DIRS: [(f64, f64); 3] = [
    (0.0, 1.0),
    (-0.866_025_403_784_438_6, -0.5),
    (0.866_025_403_784_438_6, -0.5),
];

/// Bowyer-Watson incremental Delaunay construction.
pub fn delaunay_with_epsilon(
    points: &[Point2],
    epsilon: f64,
) -> Result<Triangulation, GeometryError> {
    let n = points.len();
    if n < 3 {
        return Err(GeometryError::TooFewPoints { got: n });
    }
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(GeometryError::NonFiniteCoordinate { index: i });
        }
    }
    let mut by_coord: Vec<usize> = (0..n).collect();
    by_coord.sort_by(|&i, &j| {
        points[i]
            .x
            .total_cmp(&points[j].x)
            .then(points[i].y.total_cmp(&points[j].y))
    });
    for w in by_coord.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(GeometryError::DuplicatePoint { first, second });
        }
    }
    if !(2..n).any(|i| orient2d(points[0], points[1], points[i]).abs() > epsilon) {
        return Err(GeometryError::AllCollinear);
    }

    // Vertex indices 0..n are real; n..n+3 are ghosts.
    let ghost_base = n;
    let is_ghost = |v: usize| v >= ghost_base;
    let mut triangles: Vec<[usize; 3]> = vec![[ghost_base, ghost_base + 1, ghost_base + 2]];

    let in_circle = |tri: [usize; 3], p: Point2| -> bool {
        let ghosts = tri.iter().filter(|&&v| is_ghost(v)).count();
        match ghosts {
            0 => in_circumcircle(points[tri[0]], points[tri[1]], points[tri[2]], p, epsilon),
            1 => {
                // Rotate the ghost into the last slot, keeping orientation.
                let [u, v, g] = if is_ghost(tri[0]) {
                    [tri[1], tri[2], tri[0]]
                } else if is_ghost(tri[1]) {
                    [tri[2], tri[0], tri[1]]
                } else {
                    tri
                };
                // Limit circle through (u, v, ghost) is the half-plane on
                // the ghost's side of the line through u and v.
                let (du, dv) = (points[u], points[v]);
                let dir = GHOST_DIRS[g - ghost_base];
                let side = (dv.x - du.x) * dir.1 - (dv.y - du.y) * dir.0;
                let o = orient2d(du, dv, p);
                if side > 0.0 {
                    o > epsilon
                } else {
                    o < -epsilon
                }
            }
            2 => {
                // Limit circle through one real point and two ghosts is
                // the half-plane through the real point facing the mean
                // ghost direction.
                let u = *tri.iter().find(|&&v| !is_ghost(v)).unwrap();
                let (mut dx, mut dy) = (0.0, 0.0);
                for &v in tri.iter().filter(|&&v| is_ghost(v)) {
                    dx += GHOST_DIRS[v - ghost_base].0;
                    dy += GHOST_DIRS[v - ghost_base].1;
                }
                (p.x - points[u].x) * dx + (p.y - points[u].y) * dy > epsilon
            }
            _ => true,
        }
    };

    for p_idx in 0..n {
        let p = points[p_idx];
        let mut bad = Vec::new();
        let mut kept = Vec::new();
        for tri in triangles.drain(..) {
            if in_circle(tri, p) {
                bad.push(tri);
            } else {
                kept.push(tri);
            }
        }
        debug_assert!(!bad.is_empty(), "every point falls in some region");
        // Cavity boundary: directed edges of bad triangles whose reverse
        // is not itself a bad-triangle edge.
        let mut directed = std::collections::HashSet::new();
        for t in &bad {
            for e in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                directed.insert(e);
            }
        }
        triangles = kept;
        for &(u, v) in &directed {
            if !directed.contains(&(v, u)) {
                triangles.push([u, v, p_idx]);
            }
        }
    }

    let mut real: Vec<[usize; 3]> = triangles
        .into_iter()
        .filter(|t| t.iter().all(|&v| !is_ghost(v)))
        .collect();
    canonical_flips(points, &mut real, epsilon);
    let mut out: Vec<Triangle> = real
        .into_iter()
        .map(|t| canonical_triangle(points, t))
        .collect();
    out.sort_by_key(|t| (t.a, t.b, t.c));
    Ok(Triangulation {
        points: points.to_vec(),
        triangles: out,
    })
}

/// Canonical orientation: counterclockwise, smallest index first.
fn canonical_triangle(points: &[Point2], t: [usize; 3]) -> Triangle {
    let [a, b, c] = t;
    let (a, b, c) = if orient2d(points[a], points[b], points[c]) < 0.0 {
        (a, c, b)
    } else {
        (a, b, c)
    };
    let (a, b, c) = if a < b && a < c {
        (a, b, c)
    } else if b < a && b < c {
        (b, c, a)
    } else {
        (c, a, b)
    };
    Triangle { a, b, c }
}

/// Resolve cocircular ties deterministically: for every quad of four
/// cocircular points, prefer the diagonal whose lexicographically
/// smallest endpoint (by coordinates) is smallest.
fn canonical_flips(points: &[Point2], triangles: &mut Vec<[usize; 3]>, epsilon: f64) {
    let point_key = |i: usize| (points[i].x, points[i].y);
    let lex_min = |vs: &[usize]| {
        *vs.iter()
            .min_by(|&&i, &&j| {
                let (xi, yi) = point_key(i);
                let (xj, yj) = point_key(j);
                xi.total_cmp(&xj).then(yi.total_cmp(&yj))
            })
            .unwrap()
    };
    // |det| <= epsilon: inside at tolerance -eps but not at +eps.
    let cocircular = |a: usize, b: usize, c: usize, d: usize| {
        !in_circumcircle(points[a], points[b], points[c], points[d], epsilon)
            && in_circumcircle(points[a], points[b], points[c], points[d], -epsilon)
    };

    for _round in 0..triangles.len() + 1 {
        let mut edge_owners: std::collections::HashMap<(usize, usize), Vec<usize>> =
            std::collections::HashMap::new();
        for (idx, t) in triangles.iter().enumerate() {
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                edge_owners.entry((u.min(v), u.max(v))).or_default().push(idx);
            }
        }
        let mut keys: Vec<(usize, usize)> = edge_owners.keys().copied().collect();
        keys.sort();
        let mut flipped = false;
        for key in keys {
            let owners = &edge_owners[&key];
            if owners.len() != 2 {
                continue;
            }
            let (i1, i2) = (owners[0], owners[1]);
            let (u, v) = key;
            let a = *triangles[i1].iter().find(|&&w| w != u && w != v).unwrap();
            let b = *triangles[i2].iter().find(|&&w| w != u && w != v).unwrap();
            if !cocircular(u, v, a, b) {
                continue;
            }
            let overall = lex_min(&[u, v, a, b]);
            if overall == u || overall == v {
                continue; // current diagonal already holds the smallest point
            }
            // Flip to the diagonal (a, b) if both new triangles are valid.
            let o1 = orient2d(points[a], points[u], points[b]);
            let o2 = orient2d(points[b], points[v], points[a]);
            if o1.abs() <= epsilon || o2.abs() <= epsilon || (o1 > 0.0) != (o2 > 0.0) {
                continue;
            }
            triangles[i1] = [a, u, b];
            triangles[i2] = [b, v, a];
            flipped = true;
            break; // edge ownership changed; rebuild the map
        }
        if !flipped {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pts(coords: &[(f64, f64)]) -> Vec<Point2> {
        coords.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    /// Brute-force Delaunay invariant: no input point strictly inside any
    /// triangle's circumcircle.
    fn assert_empty_circumcircles(tri: &Triangulation, epsilon: f64) {
        for t in &tri.triangles {
            for (i, &p) in tri.points.iter().enumerate() {
                if t.contains_vertex(i) {
                    continue;
                }
                assert!(
                    !in_circumcircle(
                        tri.points[t.a],
                        tri.points[t.b],
                        tri.points[t.c],
                        p,
                        epsilon
                    ),
                    "point {i} inside circumcircle of {t:?}"
                );
            }
        }
    }

    /// Shoelace area of the convex hull (monotone chain), the oracle for
    /// area conservation.
    fn hull_area(points: &[Point2]) -> f64 {
        let mut idx: Vec<usize> = (0..points.len()).collect();
        idx.sort_by(|&i, &j| {
            points[i]
                .x
                .total_cmp(&points[j].x)
                .then(points[i].y.total_cmp(&points[j].y))
        });
        let cross = |o: Point2, a: Point2, b: Point2| {
            (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
        };
        let mut hull: Vec<usize> = Vec::new();
        for &i in idx.iter().chain(idx.iter().rev().skip(1)) {
            while hull.len() >= 2
                && cross(
                    points[hull[hull.len() - 2]],
                    points[hull[hull.len() - 1]],
                    points[i],
                ) <= 0.0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
        let mut area = 0.0;
        for k in 0..hull.len() {
            let p = points[hull[k]];
            let q = points[hull[(k + 1) % hull.len()]];
            area += p.x * q.y - q.x * p.y;
        }
        area.abs() / 2.0
    }

    fn random_points(n: usize, seed: u64) -> Vec<Point2> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Point2::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)))
            .collect()
    }

    #[test]
    fn three_points_make_one_triangle() {
        let tri = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(tri.triangles.len(), 1);
        assert_eq!(tri.triangles[0].indices(), [0, 1, 2]);
    }

    #[test]
    fn too_few_points() {
        assert_eq!(
            delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0)])).unwrap_err(),
            GeometryError::TooFewPoints { got: 2 }
        );
    }

    #[test]
    fn duplicates_are_an_error() {
        let err = delaunay(&pts(&[(0.0, 0.0), (1.0, 1.0), (0.0, 0.0), (2.0, 0.5)])).unwrap_err();
        assert_eq!(err, GeometryError::DuplicatePoint { first: 0, second: 2 });
    }

    #[test]
    fn collinear_points_are_an_error() {
        let err = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])).unwrap_err();
        assert_eq!(err, GeometryError::AllCollinear);
    }

    #[test]
    fn non_finite_coordinates_are_an_error() {
        let err = delaunay(&pts(&[(0.0, 0.0), (f64::NAN, 0.0), (0.0, 1.0)])).unwrap_err();
        assert_eq!(err, GeometryError::NonFiniteCoordinate { index: 1 });
    }

    #[test]
    fn random_cloud_satisfies_empty_circumcircle() {
        let points = random_points(20, 42);
        let tri = delaunay(&points).unwrap();
        assert!(!tri.triangles.is_empty());
        assert_empty_circumcircles(&tri, DEFAULT_EPSILON);
    }

    #[test]
    fn triangle_areas_sum_to_hull_area() {
        for seed in [1u64, 2, 3, 4, 5] {
            let points = random_points(25, seed);
            let tri = delaunay(&points).unwrap();
            let total: f64 = tri
                .triangles
                .iter()
                .map(|t| triangle_area(t, &tri.points))
                .sum();
            let hull = hull_area(&points);
            assert!(
                ((total - hull) / hull).abs() < 1e-9,
                "seed {seed}: {total} vs hull {hull}"
            );
        }
    }

    #[test]
    fn result_is_independent_of_insertion_order() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let points = random_points(18, 9);
        let base = delaunay(&points).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..points.len()).collect();
            perm.shuffle(&mut rng);
            let shuffled: Vec<Point2> = perm.iter().map(|&i| points[i]).collect();
            let tri = delaunay(&shuffled).unwrap();
            // Map shuffled indices back to the original numbering.
            let mut mapped: Vec<[usize; 3]> = tri
                .triangles
                .iter()
                .map(|t| {
                    let mut v = [perm[t.a], perm[t.b], perm[t.c]];
                    v.sort();
                    v
                })
                .collect();
            mapped.sort();
            let mut expected: Vec<[usize; 3]> = base
                .triangles
                .iter()
                .map(|t| {
                    let mut v = t.indices();
                    v.sort();
                    v
                })
                .collect();
            expected.sort();
            assert_eq!(mapped, expected);
        }
    }

    #[test]
    fn areas_of_reference_triangles() {
        let points = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 0.0), (0.0, 2.0)]);
        let t1 = Triangle { a: 0, b: 1, c: 2 };
        let t2 = Triangle { a: 0, b: 3, c: 4 };
        assert_eq!(triangle_area(&t1, &points), 0.5);
        assert_eq!(triangle_area(&t2, &points), 2.0);
    }

    #[test]
    fn centroid_of_reference_triangles() {
        let points = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let c = centroid(&Triangle { a: 0, b: 1, c: 2 }, &points);
        assert!((c.x - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.y - 1.0 / 3.0).abs() < 1e-15);

        let shifted: Vec<Point2> = points
            .iter()
            .map(|p| Point2::new(p.x + 5.0, p.y + 7.0))
            .collect();
        let cs = centroid(&Triangle { a: 0, b: 1, c: 2 }, &shifted);
        assert!((cs.x - (c.x + 5.0)).abs() < 1e-12);
        assert!((cs.y - (c.y + 7.0)).abs() < 1e-12);

        let scaled = pts(&[(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)]);
        let cl = centroid(&Triangle { a: 0, b: 1, c: 2 }, &scaled);
        assert_eq!((cl.x, cl.y), (1.0, 1.0));
    }

    #[test]
    fn orientation_angles_on_the_axes() {
        let origin = Point2::new(0.0, 0.0);
        assert_eq!(orientation_angle(Point2::new(1.0, 0.0), origin).unwrap(), 0.0);
        assert_eq!(
            orientation_angle(Point2::new(0.0, 1.0), origin).unwrap(),
            PI / 2.0
        );
        assert_eq!(orientation_angle(Point2::new(-1.0, 0.0), origin).unwrap(), PI);
        assert_eq!(
            orientation_angle(Point2::new(0.0, -1.0), origin).unwrap(),
            -PI / 2.0
        );
        assert_eq!(
            orientation_angle(origin, origin).unwrap_err(),
            GeometryError::CoincidentPoint
        );
    }

    #[test]
    fn orientation_angle_is_scale_invariant() {
        let origin = Point2::new(0.0, 0.0);
        let p = Point2::new(0.3, -0.7);
        let doubled = Point2::new(0.6, -1.4);
        assert_eq!(
            orientation_angle(p, origin).unwrap(),
            orientation_angle(doubled, origin).unwrap()
        );
    }

    /// Exact integer in-circle determinant for grid-aligned points; the
    /// high-precision oracle for the floating predicate.
    fn incircle_exact(a: (i128, i128), b: (i128, i128), c: (i128, i128), p: (i128, i128)) -> i128 {
        let orient = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
        let (b, c) = if orient < 0 { (c, b) } else { (b, c) };
        let (ax, ay) = (a.0 - p.0, a.1 - p.1);
        let (bx, by) = (b.0 - p.0, b.1 - p.1);
        let (cx, cy) = (c.0 - p.0, c.1 - p.1);
        (ax * ax + ay * ay) * (bx * cy - by * cx) - (bx * bx + by * by) * (ax * cy - ay * cx)
            + (cx * cx + cy * cy) * (ax * by - ay * bx)
    }

    #[test]
    fn circumcircle_predicate_agrees_with_exact_arithmetic() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
        let mut checked = 0;
        while checked < 10_000 {
            // Grid-aligned coordinates are exactly representable, so the
            // i128 determinant is exact.
            let mut grid = [(0i128, 0i128); 4];
            let mut float = [Point2::new(0.0, 0.0); 4];
            for slot in 0..4 {
                let gx = rng.random_range(0..=1024i128);
                let gy = rng.random_range(0..=1024i128);
                grid[slot] = (gx, gy);
                float[slot] = Point2::new(gx as f64 / 1024.0, gy as f64 / 1024.0);
            }
            let orient =
                (grid[1].0 - grid[0].0) * (grid[2].1 - grid[0].1)
                    - (grid[1].1 - grid[0].1) * (grid[2].0 - grid[0].0);
            if orient == 0 {
                continue;
            }
            let exact = incircle_exact(grid[0], grid[1], grid[2], grid[3]);
            let approx = in_circumcircle(float[0], float[1], float[2], float[3], 0.0);
            assert_eq!(approx, exact > 0, "grid points {grid:?}");
            checked += 1;
        }
    }

    proptest::proptest! {
        #[test]
        fn delaunay_invariants_on_random_clouds(seed in 0u64..40) {
            let n = 10 + (seed as usize % 15);
            let points = random_points(n, seed.wrapping_mul(0x9e37_79b9
            ));
            let tri = delaunay(&points).unwrap();
            assert_empty_circumcircles(&tri, DEFAULT_EPSILON);
            let total: f64 = tri
                .triangles
                .iter()
                .map(|t| triangle_area(t, &tri.points))
                .sum();
            let hull = hull_area(&points);
            proptest::prop_assert!(((total - hull) / hull).abs() < 1e-9);
        }
    }
}
