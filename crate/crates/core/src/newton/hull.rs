//! Exact convex hulls of lattice points (Andrew's monotone chain).

pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn sorted_unique(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// Lower hull from the leftmost-lowest to the rightmost-lowest point, with
/// collinear interior points dropped.
pub fn lower_hull(points: &[Point]) -> Vec<Point> {
    let pts = sorted_unique(points);
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        // Same abscissa: keep only the lowest point.
        if hull.last().is_some_and(|q| q.0 == p.0) {
            continue;
        }
        hull.push(p);
    }
    hull
}

/// Upper hull, left to right.
pub fn upper_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = sorted_unique(points);
    // Highest point first among equal abscissae.
    pts.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0 {
            hull.pop();
        }
        if hull.last().is_some_and(|q| q.0 == p.0) {
            continue;
        }
        hull.push(p);
    }
    hull
}

/// Full hull in counter-clockwise order starting at the leftmost-lowest
/// point. Degenerate inputs give one or two vertices.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let pts = sorted_unique(points);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Brute-force lower hull: vertex pairs `(p, q)` with `p.0 < q.0` such that
/// every point lies on or above the line through them, reduced to maximal
/// edges. O(n³); used as a test oracle.
pub fn lower_hull_brute(points: &[Point]) -> Vec<Point> {
    let pts = sorted_unique(points);
    let mut edges: Vec<(Point, Point)> = Vec::new();
    for &p in &pts {
        for &q in &pts {
            if p.0 >= q.0 {
                continue;
            }
            if pts.iter().all(|&r| cross(p, q, r) >= 0) {
                let interior = pts.iter().any(|&r| r != p && r != q && cross(p, q, r) == 0 && (r.0 < p.0 || r.0 > q.0));
                if !interior {
                    edges.push((p, q));
                }
            }
        }
    }
    // Keep maximal edges only: drop those strictly contained in a longer one.
    let maximal: Vec<(Point, Point)> = edges
        .iter()
        .copied()
        .filter(|&(p, q)| {
            !edges.iter().any(|&(a, b)| (a, b) != (p, q) && a.0 <= p.0 && b.0 >= q.0 && cross(a, b, p) == 0 && cross(a, b, q) == 0)
        })
        .collect();
    let mut verts: Vec<Point> = maximal.iter().flat_map(|&(p, q)| [p, q]).collect();
    if verts.is_empty() {
        let lowest_left = pts.iter().copied().min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        return lowest_left.into_iter().collect();
    }
    verts.sort_unstable();
    verts.dedup();
    verts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn example_support() {
        let pts = vec![(4, 0), (3, 0), (2, 1), (1, 1), (0, 2), (0, 4)];
        assert_eq!(lower_hull(&pts), vec![(0, 2), (1, 1), (3, 0), (4, 0)]);
        assert_eq!(upper_hull(&pts), vec![(0, 4), (4, 0)]);
        assert_eq!(convex_hull(&pts), vec![(0, 2), (1, 1), (3, 0), (4, 0), (0, 4)]);
    }

    #[test]
    fn collinear_points_are_dropped() {
        assert_eq!(lower_hull(&[(0, 2), (1, 1), (2, 0)]), vec![(0, 2), (2, 0)]);
        assert_eq!(lower_hull(&[(5, 5)]), vec![(5, 5)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn monotone_chain_matches_brute_force(pts in prop::collection::vec((0i64..8, 0i64..8), 1..14)) {
            prop_assert_eq!(lower_hull(&pts), lower_hull_brute(&pts));
        }
    }
}
