//! Exact segment geometry on integer points.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// A point with rational coordinates `(x/den, y/den)`, kept in lowest terms
/// with `den > 0`, so equal points compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RatPoint {
    pub x: i128,
    pub y: i128,
    pub den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RatPoint {
    pub fn new(x: i128, y: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let s = if den < 0 { -1 } else { 1 };
        let g = gcd(gcd(x, y), den).max(1);
        RatPoint {
            x: s * x / g,
            y: s * y / g,
            den: s * den / g,
        }
    }

    pub fn as_integer(&self) -> Option<Point> {
        (self.den == 1).then(|| Point::new(self.x as i64, self.y as i64))
    }
}

impl From<Point> for RatPoint {
    fn from(p: Point) -> Self {
        RatPoint {
            x: p.x as i128,
            y: p.y as i128,
            den: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet {
    None,
    Point(RatPoint),
    Overlap,
}

fn orient(p: Point, q: Point, r: Point) -> i128 {
    let (px, py) = (p.x as i128, p.y as i128);
    (q.x as i128 - px) * (r.y as i128 - py) - (q.y as i128 - py) * (r.x as i128 - px)
}

/// Intersection of closed segments `ab` and `cd`, both of positive length.
pub fn intersect(a: Point, b: Point, c: Point, d: Point) -> Meet {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if d1 == 0 && d2 == 0 {
        return collinear(a, b, c, d);
    }
    if d1.signum() * d2.signum() > 0 || d3.signum() * d4.signum() > 0 {
        return Meet::None;
    }
    let p = if d1 == 0 {
        a.into()
    } else if d2 == 0 {
        b.into()
    } else if d3 == 0 {
        c.into()
    } else if d4 == 0 {
        d.into()
    } else {
        let den = d1 - d2;
        RatPoint::new(
            a.x as i128 * den + (b.x - a.x) as i128 * d1,
            a.y as i128 * den + (b.y - a.y) as i128 * d1,
            den,
        )
    };
    Meet::Point(p)
}

fn collinear(a: Point, b: Point, c: Point, d: Point) -> Meet {
    // Project on the axis along which `ab` varies.
    let key = |p: Point| if a.x != b.x { (p.x, p.y) } else { (p.y, p.x) };
    let (lo1, hi1) = if key(a) <= key(b) { (a, b) } else { (b, a) };
    let (lo2, hi2) = if key(c) <= key(d) { (c, d) } else { (d, c) };
    let lo = if key(lo1) >= key(lo2) { lo1 } else { lo2 };
    let hi = if key(hi1) <= key(hi2) { hi1 } else { hi2 };
    match key(lo).cmp(&key(hi)) {
        std::cmp::Ordering::Less => Meet::Overlap,
        std::cmp::Ordering::Equal => Meet::Point(lo.into()),
        std::cmp::Ordering::Greater => Meet::None,
    }
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}
