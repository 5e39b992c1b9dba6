//! h-transverse lattice polygons.
//!
//! A lattice polygon is *h-transverse* when every edge of its left or right
//! boundary has a primitive vector of the form `(α, ±1)`. Up to translation
//! such a polygon is determined by the quadruple `(d_l, d_r, d_minus, d_plus)`:
//!
//! * `d_l`: the left directions: `α` repeated `len(e)` times for each left
//!   edge with primitive `±(α,−1)`; stored sorted non-increasing, which is
//!   exactly the bottom-to-top order forced by convexity.
//! * `d_r`: the right directions, stored sorted non-decreasing
//!   (again bottom-to-top order).
//! * `d_minus` / `d_plus`: integer length of the bottom / top horizontal
//!   edge (0 when absent).
//!
//! Walking up the left (resp. right) boundary one lattice row at a time
//! moves by `(−α, 1)` for consecutive `α` in `d_l` (resp. `d_r`); this is
//! how [`HTransversePolygon::reconstruct_vertices`] rebuilds the polygon and
//! why both multisets must have one entry per lattice row. The quadruple is
//! the canonical identity of a polygon; vertex lists are derived views.

use std::fmt;
use std::str::FromStr;

/// A point of the integer lattice Z².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

/// Validation and parse errors for polygon construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolygonError {
    /// The vertex list does not describe a (strictly) convex polygon.
    NotConvex,
    /// The input spans a point or segment, not a 2-dimensional polygon.
    NotTwoDimensional,
    /// Some left/right boundary edge has a primitive vector not of the
    /// form `(α, ±1)`; the offending primitive is reported.
    NotHTransverse { primitive: (i64, i64) },
    /// `d_l` and `d_r` are empty.
    EmptyHeight,
    /// `|d_l| != |d_r|`.
    HeightMismatch { left: usize, right: usize },
    /// `d_plus != d_minus + Σd_l − Σd_r`.
    ClosureViolated { expected_d_plus: i64 },
    /// A horizontal cut strictly between bottom and top has non-positive
    /// width, or the whole polygon is a vertical segment.
    WidthViolated { row: usize, width: i64 },
    /// Malformed polygon text line.
    Parse(String),
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::NotConvex => write!(f, "vertices do not form a strictly convex polygon"),
            PolygonError::NotTwoDimensional => write!(f, "polygon is not 2-dimensional"),
            PolygonError::NotHTransverse { primitive } => write!(
                f,
                "not h-transverse: side edge with primitive vector ({}, {})",
                primitive.0, primitive.1
            ),
            PolygonError::EmptyHeight => write!(f, "empty direction multisets (height 0)"),
            PolygonError::HeightMismatch { left, right } => {
                write!(f, "|d_l| = {left} but |d_r| = {right}")
            }
            PolygonError::ClosureViolated { expected_d_plus } => write!(
                f,
                "closure violated: d_plus must equal d_minus + sum(d_l) - sum(d_r) = {expected_d_plus}"
            ),
            PolygonError::WidthViolated { row, width } => {
                write!(f, "width at lattice row {row} is {width}")
            }
            PolygonError::Parse(msg) => write!(f, "polygon parse error: {msg}"),
        }
    }
}

impl std::error::Error for PolygonError {}

/// An h-transverse lattice polygon in its quadruple encoding.
///
/// Invariants, enforced by every constructor:
/// * `|d_l| == |d_r| >= 1` (the common cardinality is the **height**);
/// * closure: `d_plus == d_minus + Σd_l − Σd_r`;
/// * every horizontal cut strictly between bottom and top has width > 0,
///   and the polygon is 2-dimensional.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HTransversePolygon {
    d_l: Vec<i64>,
    d_r: Vec<i64>,
    d_minus: u64,
    d_plus: u64,
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

impl HTransversePolygon {
    /// Builds a polygon from its vertex list (any traversal order, any
    /// starting vertex; extra collinear boundary points are merged).
    pub fn from_vertices(vertices: &[LatticePoint]) -> Result<Self, PolygonError> {
        // Drop consecutive duplicates, including around the wrap.
        let mut pts: Vec<LatticePoint> = Vec::with_capacity(vertices.len());
        for &p in vertices {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() < 3 {
            return Err(PolygonError::NotTwoDimensional);
        }

        // Normalize to counterclockwise via the shoelace sign.
        let mut area2: i64 = 0;
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            area2 += a.x * b.y - a.y * b.x;
        }
        if area2 == 0 {
            return Err(PolygonError::NotTwoDimensional);
        }
        if area2 < 0 {
            pts.reverse();
        }

        // Merge collinear runs; a zero turn with reversing direction is a
        // spike, which no convex polygon contains.
        let mut merged: Vec<LatticePoint> = Vec::with_capacity(pts.len());
        let n = pts.len();
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let cur = pts[i];
            let next = pts[(i + 1) % n];
            let turn = cross(prev, cur, next);
            if turn == 0 {
                let dot = (cur.x - prev.x) * (next.x - cur.x) + (cur.y - prev.y) * (next.y - cur.y);
                if dot <= 0 {
                    return Err(PolygonError::NotConvex);
                }
                continue; // interior point of an edge
            }
            merged.push(cur);
        }
        if merged.len() < 3 {
            return Err(PolygonError::NotTwoDimensional);
        }
        let n = merged.len();
        for i in 0..n {
            if cross(merged[(i + n - 1) % n], merged[i], merged[(i + 1) % n]) <= 0 {
                return Err(PolygonError::NotConvex);
            }
        }

        // Strict convexity plus a single angular wrap of the edge directions
        // rules out self-overlapping inputs: going around, the edge vectors
        // must lie in the upper half-turn then the lower half-turn once.
        let upper = |dx: i64, dy: i64| dy > 0 || (dy == 0 && dx < 0);
        let mut transitions = 0;
        for i in 0..n {
            let a = merged[i];
            let b = merged[(i + 1) % n];
            let c = merged[(i + 2) % n];
            if upper(b.x - a.x, b.y - a.y) != upper(c.x - b.x, c.y - b.y) {
                transitions += 1;
            }
        }
        if transitions != 2 {
            return Err(PolygonError::NotConvex);
        }

        // Classify edges. Counterclockwise order makes the bottom edge run
        // left-to-right, right-boundary edges run upward, and so on.
        let mut d_l = Vec::new();
        let mut d_r = Vec::new();
        let mut d_minus = 0u64;
        let mut d_plus = 0u64;
        for i in 0..n {
            let a = merged[i];
            let b = merged[(i + 1) % n];
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            let len = gcd(dx.unsigned_abs(), dy.unsigned_abs());
            let (px, py) = (dx / len as i64, dy / len as i64);
            match py {
                0 => {
                    if px > 0 {
                        d_minus = len;
                    } else {
                        d_plus = len;
                    }
                }
                1 => {
                    // Right boundary, climbing: step (−α, 1), so α = −px.
                    for _ in 0..len {
                        d_r.push(-px);
                    }
                }
                -1 => {
                    // Left boundary, descending: edge vector len·(α, −1).
                    for _ in 0..len {
                        d_l.push(px);
                    }
                }
                _ => return Err(PolygonError::NotHTransverse { primitive: (px, py) }),
            }
        }
        Self::from_quadruple(d_l, d_r, d_minus, d_plus)
    }

    /// Builds and validates a polygon from raw direction multisets and
    /// horizontal edge lengths. Input multisets may be in any order.
    pub fn from_quadruple(
        mut d_l: Vec<i64>,
        mut d_r: Vec<i64>,
        d_minus: u64,
        d_plus: u64,
    ) -> Result<Self, PolygonError> {
        if d_l.is_empty() && d_r.is_empty() {
            return Err(PolygonError::EmptyHeight);
        }
        if d_l.len() != d_r.len() {
            return Err(PolygonError::HeightMismatch {
                left: d_l.len(),
                right: d_r.len(),
            });
        }
        d_l.sort_unstable_by(|a, b| b.cmp(a)); // non-increasing
        d_r.sort_unstable(); // non-decreasing

        let sum_l: i64 = d_l.iter().sum();
        let sum_r: i64 = d_r.iter().sum();
        let expected_d_plus = d_minus as i64 + sum_l - sum_r;
        if expected_d_plus != d_plus as i64 {
            return Err(PolygonError::ClosureViolated { expected_d_plus });
        }

        let h = d_l.len();
        // Profiles after k rows; widths must stay positive strictly inside.
        let mut x_left: i64 = 0;
        let mut x_right: i64 = d_minus as i64;
        for k in 1..h {
            x_left -= d_l[k - 1];
            x_right -= d_r[k - 1];
            let width = x_right - x_left;
            if width <= 0 {
                return Err(PolygonError::WidthViolated { row: k, width });
            }
        }
        if h == 1 && d_minus == 0 && d_plus == 0 {
            return Err(PolygonError::WidthViolated { row: 0, width: 0 });
        }

        let polygon = Self {
            d_l,
            d_r,
            d_minus,
            d_plus,
        };
        debug_assert_eq!(polygon.d_l.len(), polygon.d_r.len());
        debug_assert_eq!(
            polygon.boundary_lattice_count(),
            2 * polygon.height() as u64 + polygon.d_minus + polygon.d_plus
        );
        Ok(polygon)
    }

    /// The triangle with vertices `(0,0)`, `(d,0)`, `(0,d)`: Newton polygon
    /// of degree-d plane curves.
    pub fn triangle(d: u64) -> Self {
        assert!(d >= 1, "degree must be at least 1");
        Self::from_quadruple(vec![0; d as usize], vec![1; d as usize], d, 0)
            .expect("triangle quadruple is always valid")
    }

    /// The trapezoid with vertices `(0,0)`, `(na+b,0)`, `(b,a)`, `(0,a)`: the
    /// Newton polygon of curves of class `aB + bF` on the degree-n ruled
    /// surface. Degenerates to a triangle when `b = 0`.
    pub fn hirzebruch(n: u64, a: u64, b: u64) -> Result<Self, PolygonError> {
        let (n, a, b) = (n as i64, a as i64, b as i64);
        Self::from_vertices(&[
            LatticePoint::new(0, 0),
            LatticePoint::new(n * a + b, 0),
            LatticePoint::new(b, a),
            LatticePoint::new(0, a),
        ])
    }

    pub fn d_l(&self) -> &[i64] {
        &self.d_l
    }

    pub fn d_r(&self) -> &[i64] {
        &self.d_r
    }

    pub fn d_minus(&self) -> u64 {
        self.d_minus
    }

    pub fn d_plus(&self) -> u64 {
        self.d_plus
    }

    /// Number of left (equivalently right) directions; every floor diagram
    /// with this Newton polygon has exactly this many floors.
    pub fn height(&self) -> usize {
        self.d_l.len()
    }

    /// Number of lattice points on the boundary: `2·height + d_- + d_+`.
    pub fn boundary_lattice_count(&self) -> u64 {
        2 * self.height() as u64 + self.d_minus + self.d_plus
    }

    /// Size `s` of a generic point configuration for genus `g` curves:
    /// `boundary_lattice_count + g − 1`.
    pub fn configuration_size(&self, genus: u64) -> u64 {
        self.boundary_lattice_count() + genus - 1
    }

    /// Rebuilds the vertex list, counterclockwise, translated so the
    /// bottom-left boundary lattice point is the origin.
    pub fn reconstruct_vertices(&self) -> Vec<LatticePoint> {
        let mut verts = Vec::new();
        let mut cur = LatticePoint::new(0, 0);
        verts.push(cur);
        let push = |verts: &mut Vec<LatticePoint>, p: LatticePoint| {
            if *verts.last().unwrap() != p {
                verts.push(p);
            }
        };

        if self.d_minus > 0 {
            cur = LatticePoint::new(cur.x + self.d_minus as i64, 0);
            push(&mut verts, cur);
        }
        // Right boundary bottom-to-top: groups of equal α become one edge.
        let mut i = 0;
        while i < self.d_r.len() {
            let alpha = self.d_r[i];
            let mut j = i;
            while j < self.d_r.len() && self.d_r[j] == alpha {
                j += 1;
            }
            let c = (j - i) as i64;
            cur = LatticePoint::new(cur.x - alpha * c, cur.y + c);
            push(&mut verts, cur);
            i = j;
        }
        if self.d_plus > 0 {
            cur = LatticePoint::new(cur.x - self.d_plus as i64, cur.y);
            push(&mut verts, cur);
        }
        // Left boundary top-to-bottom: reverse of the bottom-to-top order.
        let mut i = self.d_l.len();
        while i > 0 {
            let alpha = self.d_l[i - 1];
            let mut j = i;
            while j > 0 && self.d_l[j - 1] == alpha {
                j -= 1;
            }
            let c = (i - j) as i64;
            cur = LatticePoint::new(cur.x + alpha * c, cur.y - c);
            push(&mut verts, cur);
            i = j;
        }
        debug_assert_eq!(cur, LatticePoint::new(0, 0), "boundary walk must close");
        if verts.len() > 1 && verts.first() == verts.last() {
            verts.pop();
        }
        verts
    }
}

/// Canonical text form: `polygon dl=0,0,0 dr=1,1,1 dminus=3 dplus=0`.
impl fmt::Display for HTransversePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let csv = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "polygon dl={} dr={} dminus={} dplus={}",
            csv(&self.d_l),
            csv(&self.d_r),
            self.d_minus,
            self.d_plus
        )
    }
}

impl FromStr for HTransversePolygon {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, PolygonError> {
        let mut tokens = s.split_whitespace();
        if tokens.next() != Some("polygon") {
            return Err(PolygonError::Parse(
                "expected line starting with 'polygon'".into(),
            ));
        }
        let mut field = |key: &str| -> Result<String, PolygonError> {
            let tok = tokens
                .next()
                .ok_or_else(|| PolygonError::Parse(format!("missing field {key}")))?;
            tok.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(|| PolygonError::Parse(format!("expected {key}=..., got '{tok}'")))
        };
        let parse_csv = |text: &str, key: &str| -> Result<Vec<i64>, PolygonError> {
            text.split(',')
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| PolygonError::Parse(format!("bad integer '{t}' in {key}")))
                })
                .collect()
        };
        let dl = parse_csv(&field("dl")?, "dl")?;
        let dr = parse_csv(&field("dr")?, "dr")?;
        let dminus = field("dminus")?
            .parse::<u64>()
            .map_err(|_| PolygonError::Parse("bad dminus".into()))?;
        let dplus = field("dplus")?
            .parse::<u64>()
            .map_err(|_| PolygonError::Parse("bad dplus".into()))?;
        if let Some(extra) = tokens.next() {
            return Err(PolygonError::Parse(format!("unexpected token '{extra}'")));
        }
        Self::from_quadruple(dl, dr, dminus, dplus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(coords: &[(i64, i64)]) -> Vec<LatticePoint> {
        coords.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
    }

    /// Independent recount of boundary lattice points: walk the
    /// reconstructed edges and sum their integer lengths.
    fn boundary_recount(p: &HTransversePolygon) -> u64 {
        let verts = p.reconstruct_vertices();
        let n = verts.len();
        (0..n)
            .map(|i| {
                let a = verts[i];
                let b = verts[(i + 1) % n];
                gcd((b.x - a.x).unsigned_abs(), (b.y - a.y).unsigned_abs())
            })
            .sum()
    }

    #[test]
    fn triangle_quadruples() {
        let t3 = HTransversePolygon::triangle(3);
        assert_eq!(t3.d_l(), &[0, 0, 0]);
        assert_eq!(t3.d_r(), &[1, 1, 1]);
        assert_eq!((t3.d_minus(), t3.d_plus()), (3, 0));
        let t1 = HTransversePolygon::triangle(1);
        assert_eq!((t1.d_l(), t1.d_r()), (&[0i64][..], &[1i64][..]));
        let t5 = HTransversePolygon::triangle(5);
        assert_eq!(t5.d_l(), &[0; 5]);
        assert_eq!(t5.d_r(), &[1; 5]);
        assert_eq!((t5.d_minus(), t5.d_plus()), (5, 0));
    }

    #[test]
    fn degree_triangle_from_vertices() {
        let p = HTransversePolygon::from_vertices(&pts(&[(0, 0), (3, 0), (0, 3)])).unwrap();
        assert_eq!(p, HTransversePolygon::triangle(3));
    }

    #[test]
    fn unit_square() {
        let p = HTransversePolygon::from_vertices(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(p.d_l(), &[0]);
        assert_eq!(p.d_r(), &[0]);
        assert_eq!((p.d_minus(), p.d_plus()), (1, 1));
        assert_eq!(HTransversePolygon::hirzebruch(0, 1, 1).unwrap(), p);
    }

    #[test]
    fn steep_side_is_rejected() {
        let err = HTransversePolygon::from_vertices(&pts(&[(0, 0), (2, 0), (1, 2)])).unwrap_err();
        assert!(matches!(err, PolygonError::NotHTransverse { .. }));
    }

    #[test]
    fn clockwise_input_is_normalized() {
        let ccw = HTransversePolygon::from_vertices(&pts(&[(0, 0), (3, 0), (0, 3)])).unwrap();
        let cw = HTransversePolygon::from_vertices(&pts(&[(0, 3), (3, 0), (0, 0)])).unwrap();
        assert_eq!(ccw, cw);
    }

    #[test]
    fn collinear_boundary_points_merge() {
        let p = HTransversePolygon::from_vertices(&pts(&[
            (0, 0),
            (1, 0),
            (3, 0),
            (0, 3),
            (0, 1),
        ]))
        .unwrap();
        assert_eq!(p, HTransversePolygon::triangle(3));
    }

    #[test]
    fn nonconvex_is_rejected() {
        let err =
            HTransversePolygon::from_vertices(&pts(&[(0, 0), (4, 0), (2, 1), (4, 4), (0, 4)]))
                .unwrap_err();
        assert_eq!(err, PolygonError::NotConvex);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert_eq!(
            HTransversePolygon::from_vertices(&pts(&[(0, 0), (2, 2), (4, 4)])).unwrap_err(),
            PolygonError::NotTwoDimensional
        );
        assert_eq!(
            HTransversePolygon::from_vertices(&pts(&[(0, 0), (1, 1)])).unwrap_err(),
            PolygonError::NotTwoDimensional
        );
    }

    #[test]
    fn hexagon_with_negative_directions() {
        let p = HTransversePolygon::from_quadruple(vec![1, 0, 0, -2], vec![-1, -1, 0, 1], 0, 0)
            .unwrap();
        assert_eq!(p.d_l(), &[1, 0, 0, -2]);
        assert_eq!(p.d_r(), &[-1, -1, 0, 1]);
        let verts = p.reconstruct_vertices();
        assert_eq!(
            verts,
            pts(&[(0, 0), (2, 2), (2, 3), (1, 4), (-1, 3), (-1, 1)])
        );
        assert_eq!(HTransversePolygon::from_vertices(&verts).unwrap(), p);
    }

    #[test]
    fn ruled_surface_polygons() {
        let trap121 = HTransversePolygon::hirzebruch(1, 2, 1).unwrap();
        assert_eq!(trap121.d_l(), &[0, 0]);
        assert_eq!(trap121.d_r(), &[1, 1]);
        assert_eq!((trap121.d_minus(), trap121.d_plus()), (3, 1));

        let trap221 = HTransversePolygon::hirzebruch(2, 2, 1).unwrap();
        assert_eq!(trap221.d_l(), &[0, 0]);
        assert_eq!(trap221.d_r(), &[2, 2]);
        assert_eq!((trap221.d_minus(), trap221.d_plus()), (5, 1));

        // b = 0 degenerates to a triangle and must still validate.
        let tri = HTransversePolygon::hirzebruch(3, 2, 0).unwrap();
        assert_eq!(tri.d_l(), &[0, 0]);
        assert_eq!(tri.d_r(), &[3, 3]);
        assert_eq!((tri.d_minus(), tri.d_plus()), (6, 0));
    }

    #[test]
    fn closure_violation() {
        let err =
            HTransversePolygon::from_quadruple(vec![0, 0], vec![1, 1], 3, 3).unwrap_err();
        assert_eq!(err, PolygonError::ClosureViolated { expected_d_plus: 1 });
        // The quadruple ({0,0},{1,1},3,1) satisfies closure (1 = 3+0-2) and
        // is a valid trapezoid and must be accepted.
        assert!(HTransversePolygon::from_quadruple(vec![0, 0], vec![1, 1], 3, 1).is_ok());
    }

    #[test]
    fn width_violations() {
        // Interior width collapses to 0 after one row.
        let err = HTransversePolygon::from_quadruple(vec![1, 1], vec![1, 1], 0, 0).unwrap_err();
        assert!(matches!(err, PolygonError::WidthViolated { row: 1, .. }));
        // Vertical segment.
        let err = HTransversePolygon::from_quadruple(vec![0], vec![0], 0, 0).unwrap_err();
        assert!(matches!(err, PolygonError::WidthViolated { .. }));
        // Parallelogram of height 1 is fine.
        assert!(HTransversePolygon::from_quadruple(vec![1], vec![1], 2, 2).is_ok());
    }

    #[test]
    fn multiset_input_order_is_normalized() {
        let a = HTransversePolygon::from_quadruple(vec![0, 1, -2, 0], vec![1, -1, 0, -1], 0, 0)
            .unwrap();
        let b = HTransversePolygon::from_quadruple(vec![1, 0, 0, -2], vec![-1, -1, 0, 1], 0, 0)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn counting_parameters() {
        let t3 = HTransversePolygon::triangle(3);
        assert_eq!(t3.boundary_lattice_count(), 9);
        assert_eq!(t3.configuration_size(0), 8);
        assert_eq!(t3.configuration_size(1), 9);
        let trap221 = HTransversePolygon::hirzebruch(2, 2, 1).unwrap();
        assert_eq!(trap221.boundary_lattice_count(), 10);
        let t1 = HTransversePolygon::triangle(1);
        assert_eq!(t1.boundary_lattice_count(), 3);
        assert_eq!(t1.configuration_size(0), 2);
    }

    #[test]
    fn boundary_count_matches_edge_walk() {
        for p in [
            HTransversePolygon::triangle(1),
            HTransversePolygon::triangle(4),
            HTransversePolygon::hirzebruch(2, 2, 1).unwrap(),
            HTransversePolygon::hirzebruch(0, 3, 2).unwrap(),
            HTransversePolygon::from_quadruple(vec![1, 0, 0, -2], vec![-1, -1, 0, 1], 0, 0)
                .unwrap(),
        ] {
            assert_eq!(p.boundary_lattice_count(), boundary_recount(&p), "{p}");
        }
    }

    #[test]
    fn text_form_round_trip() {
        for p in [
            HTransversePolygon::triangle(3),
            HTransversePolygon::hirzebruch(2, 2, 1).unwrap(),
            HTransversePolygon::from_quadruple(vec![1, 0, 0, -2], vec![-1, -1, 0, 1], 0, 0)
                .unwrap(),
        ] {
            let line = p.to_string();
            let back: HTransversePolygon = line.parse().unwrap();
            assert_eq!(back, p);
            assert_eq!(back.to_string(), line);
        }
        assert_eq!(
            HTransversePolygon::triangle(3).to_string(),
            "polygon dl=0,0,0 dr=1,1,1 dminus=3 dplus=0"
        );
    }

    #[test]
    fn text_form_rejects_malformed_lines() {
        for bad in [
            "poly dl=0 dr=1 dminus=1 dplus=0",
            "polygon dl=0 dr=1 dminus=1",
            "polygon dl=0 dr=1 dminus=1 dplus=0 extra=9",
            "polygon dl=x dr=1 dminus=1 dplus=0",
            "polygon dr=1 dl=0 dminus=1 dplus=0",
        ] {
            assert!(
                bad.parse::<HTransversePolygon>().is_err(),
                "should reject: {bad}"
            );
        }
    }

    #[test]
    fn vertex_round_trip_samples() {
        for p in [
            HTransversePolygon::triangle(2),
            HTransversePolygon::triangle(6),
            HTransversePolygon::hirzebruch(1, 2, 1).unwrap(),
            HTransversePolygon::hirzebruch(2, 2, 3).unwrap(),
            HTransversePolygon::hirzebruch(3, 2, 0).unwrap(),
            HTransversePolygon::from_quadruple(vec![0, 0, -1, -2, -2], vec![-1; 5], 0, 0)
                .unwrap(),
        ] {
            let verts = p.reconstruct_vertices();
            assert_eq!(HTransversePolygon::from_vertices(&verts).unwrap(), p, "{p}");
        }
    }
}
