//! Brute-force oracles, written independently of the library internals.
//!
//! Conventions mirrored here (and documented on the library side):
//! - Bresenham walks start at the lexicographically smaller endpoint and
//!   round midpoint ties away from the start.
//! - Segment probing snaps unit-spaced positions to the nearest pixel with
//!   half-up rounding in both coordinates and skips endpoint-pixel hits.

use edge_excess::{EdgeMap, Point};

/// floor(p / q) for q > 0.
fn floor_div(p: i64, q: i64) -> i64 {
    p.div_euclid(q)
}

/// ceil(p / q) for q > 0.
fn ceil_div(p: i64, q: i64) -> i64 {
    (p + q - 1).div_euclid(q)
}

/// Nearest integer to num/den (den > 0) with ties pushed in the direction
/// `toward_positive` says.
fn nearest(num: i64, den: i64, toward_positive: bool) -> i64 {
    if toward_positive {
        floor_div(2 * num + den, 2 * den)
    } else {
        ceil_div(2 * num - den, 2 * den)
    }
}

/// Nearest-pixel DDA over the major axis: the reference for `trace_segment`.
pub fn dda_trace(a: Point, b: Point) -> Vec<Point> {
    let flip = (b.x, b.y) < (a.x, a.y);
    let (s, e) = if flip { (b, a) } else { (a, b) };

    let dx = e.x as i64 - s.x as i64; // >= 0 by canonical order
    let dy = e.y as i64 - s.y as i64;
    let steps = dx.max(dy.abs());
    let mut out = Vec::with_capacity(steps as usize + 1);
    if steps == 0 {
        out.push(s);
    } else if dx >= dy.abs() {
        for k in 0..=steps {
            let x = s.x as i64 + k;
            let y = nearest(s.y as i64 * steps + k * dy, steps, dy >= 0);
            out.push(Point::new(x as u32, y as u32));
        }
    } else {
        let sy = if dy >= 0 { 1 } else { -1 };
        for k in 0..=steps {
            let y = s.y as i64 + k * sy;
            let x = nearest(s.x as i64 * steps + k * dx, steps, true);
            out.push(Point::new(x as u32, y as u32));
        }
    }
    if flip {
        out.reverse();
    }
    out
}

/// Number of unit-length steps along a segment of squared length `d2`: the
/// nearest integer to sqrt(d2), derived by pure integer search so no
/// floating sqrt is involved.
fn unit_steps(d2: i64) -> i64 {
    let mut n = 0;
    while (2 * n + 1) * (2 * n + 1) <= 4 * d2 {
        n += 1;
    }
    n
}

/// Reference for `segment_excess`: Euclidean length plus the count of
/// unit-spaced interior probes whose nearest pixel is mask-true, endpoint
/// pixels skipped.
pub fn probe_segment(mask: &EdgeMap, a: Point, b: Point) -> (f64, u64) {
    let dx = b.x as i64 - a.x as i64;
    let dy = b.y as i64 - a.y as i64;
    let d2 = dx * dx + dy * dy;
    if d2 == 0 {
        return (0.0, 0);
    }
    let n = unit_steps(d2);
    let mut hits = 0;
    for k in 1..n {
        let px = nearest(a.x as i64 * n + k * dx, n, true);
        let py = nearest(a.y as i64 * n + k * dy, n, true);
        let p = Point::new(px as u32, py as u32);
        if p == a || p == b {
            continue;
        }
        if mask.is_edge(p.x, p.y) {
            hits += 1;
        }
    }
    ((d2 as f64).sqrt(), hits)
}
