//! Exact geometry: rational coordinates extended by a symbolic infinitesimal.
//!
//! The perturbed projection `(x, y, z) -> (x, z - eps*y)` is handled by
//! carrying `eps` as a formal positive infinitesimal instead of a concrete
//! small rational.  Numbers are polynomials `a + b*eps + c*eps^2` compared
//! lexicographically, so every sign test is exact and no "sufficiently
//! small eps" analysis is needed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result, Violation};
use crate::ground::{Ground, Subset};

pub type Rat = Ratio<i128>;

pub fn rat(v: i64) -> Rat {
    Ratio::from_integer(v as i128)
}

/// `a + b*eps + c*eps^2` for a positive infinitesimal `eps`; ordered
/// lexicographically by `(a, b, c)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct EpsNum {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl EpsNum {
    pub const fn new(a: Rat, b: Rat, c: Rat) -> Self {
        EpsNum { a, b, c }
    }

    pub fn from_rat(a: Rat) -> Self {
        EpsNum { a, b: Rat::ZERO, c: Rat::ZERO }
    }

    pub fn from_int(v: i64) -> Self {
        EpsNum::from_rat(rat(v))
    }

    /// `b * eps`.
    pub fn eps_times(b: Rat) -> Self {
        EpsNum { a: Rat::ZERO, b, c: Rat::ZERO }
    }

    pub fn zero() -> Self {
        EpsNum::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        for coeff in [&self.a, &self.b, &self.c] {
            if coeff.is_positive() {
                return 1;
            }
            if coeff.is_negative() {
                return -1;
            }
        }
        0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -*self
        } else {
            *self
        }
    }

    /// Exact division by a nonzero rational.
    pub fn div_rat(&self, d: Rat) -> Self {
        assert!(!d.is_zero());
        EpsNum { a: self.a / d, b: self.b / d, c: self.c / d }
    }

    /// Evaluate at a concrete small `eps` (for rendering only).
    pub fn approx(&self, eps: f64) -> f64 {
        let f = |r: &Rat| *r.numer() as f64 / *r.denom() as f64;
        f(&self.a) + f(&self.b) * eps + f(&self.c) * eps * eps
    }
}

impl Add for EpsNum {
    type Output = EpsNum;
    fn add(self, rhs: EpsNum) -> EpsNum {
        EpsNum { a: self.a + rhs.a, b: self.b + rhs.b, c: self.c + rhs.c }
    }
}

impl Sub for EpsNum {
    type Output = EpsNum;
    fn sub(self, rhs: EpsNum) -> EpsNum {
        EpsNum { a: self.a - rhs.a, b: self.b - rhs.b, c: self.c - rhs.c }
    }
}

impl Neg for EpsNum {
    type Output = EpsNum;
    fn neg(self) -> EpsNum {
        EpsNum { a: -self.a, b: -self.b, c: -self.c }
    }
}

impl Mul for EpsNum {
    type Output = EpsNum;
    fn mul(self, rhs: EpsNum) -> EpsNum {
        // products never exceed eps^2 in this crate: coordinates are at most
        // linear in eps and one factor of every product is eps-free
        let d3 = self.b * rhs.c + self.c * rhs.b;
        let d4 = self.c * rhs.c;
        assert!(d3.is_zero() && d4.is_zero(), "eps-degree overflow in multiplication");
        EpsNum {
            a: self.a * rhs.a,
            b: self.a * rhs.b + self.b * rhs.a,
            c: self.a * rhs.c + self.b * rhs.b + self.c * rhs.a,
        }
    }
}

impl PartialOrd for EpsNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpsNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a, self.b, self.c).cmp(&(other.a, other.b, other.c))
    }
}

impl fmt::Debug for EpsNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        if !self.b.is_zero() {
            write!(f, "{:+}e", self.b)?;
        }
        if !self.c.is_zero() {
            write!(f, "{:+}e2", self.c)?;
        }
        Ok(())
    }
}

/// A point (or vector) of the plane with `EpsNum` coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct P2 {
    pub x: EpsNum,
    pub y: EpsNum,
}

impl P2 {
    pub fn new(x: EpsNum, y: EpsNum) -> Self {
        P2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        P2 { x: EpsNum::from_int(x), y: EpsNum::from_int(y) }
    }

    pub fn midpoint(self, other: P2) -> P2 {
        P2 {
            x: (self.x + other.x).div_rat(rat(2)),
            y: (self.y + other.y).div_rat(rat(2)),
        }
    }
}

impl Add for P2 {
    type Output = P2;
    fn add(self, rhs: P2) -> P2 {
        P2 { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl Sub for P2 {
    type Output = P2;
    fn sub(self, rhs: P2) -> P2 {
        P2 { x: self.x - rhs.x, y: self.y - rhs.y }
    }
}

/// Cross product of vectors `a` and `b`.
pub fn cross(a: P2, b: P2) -> EpsNum {
    a.x * b.y - a.y * b.x
}

/// Orientation of the triple `(o, p, q)`: positive means counterclockwise.
pub fn orient(o: P2, p: P2, q: P2) -> EpsNum {
    cross(p - o, q - o)
}

pub fn dot(a: P2, b: P2) -> EpsNum {
    a.x * b.x + a.y * b.y
}

/// Doubled signed area of a polygon (counterclockwise positive).
pub fn polygon_area2(poly: &[P2]) -> EpsNum {
    let mut sum = EpsNum::zero();
    for (t, p) in poly.iter().enumerate() {
        let q = poly[(t + 1) % poly.len()];
        sum = sum + cross(*p, q);
    }
    sum
}

/// Is every corner of `poly` (counterclockwise) a strict left turn?
pub fn is_strictly_convex_ccw(poly: &[P2]) -> bool {
    let m = poly.len();
    (0..m).all(|t| orient(poly[t], poly[(t + 1) % m], poly[(t + 2) % m]).is_positive())
}

/// Do the interiors of two convex polygons intersect?  Separating-axis test
/// over the edge normals of both polygons.
pub fn convex_interiors_intersect(a: &[P2], b: &[P2]) -> bool {
    let axes = |poly: &[P2]| -> Vec<P2> {
        let m = poly.len();
        (0..m)
            .map(|t| {
                let d = poly[(t + 1) % m] - poly[t];
                P2 { x: -d.y, y: d.x }
            })
            .collect()
    };
    let mut all_axes = axes(a);
    all_axes.extend(axes(b));
    for axis in all_axes {
        let project = |poly: &[P2]| {
            let mut lo = dot(poly[0], axis);
            let mut hi = lo;
            for p in &poly[1..] {
                let v = dot(*p, axis);
                if v < lo {
                    lo = v;
                }
                if v > hi {
                    hi = v;
                }
            }
            (lo, hi)
        };
        let (alo, ahi) = project(a);
        let (blo, bhi) = project(b);
        if ahi <= blo || bhi <= alo {
            return false;
        }
    }
    true
}

/// Even-odd test with a rightward ray; `p` must not lie on the boundary.
pub fn point_in_polygon(p: P2, poly: &[P2]) -> bool {
    let m = poly.len();
    let mut inside = false;
    for t in 0..m {
        let a = poly[t];
        let b = poly[(t + 1) % m];
        if (a.y > p.y) != (b.y > p.y) {
            // ray to +x crosses the supporting line right of p?
            let c = orient(a, b, p);
            let upward = b.y > a.y;
            if upward && c.is_negative() || !upward && c.is_positive() {
                inside = !inside;
            }
        }
    }
    inside
}

/// Point-in-convex-polygon for counterclockwise `poly`.
pub fn point_in_convex(p: P2, poly: &[P2], allow_boundary: bool) -> bool {
    let m = poly.len();
    for t in 0..m {
        let o = orient(poly[t], poly[(t + 1) % m], p);
        if o.is_negative() || (!allow_boundary && o.is_zero()) {
            return false;
        }
    }
    true
}

/// A 3-space vector with rational coordinates.
pub type V3 = (Rat, Rat, Rat);

pub fn sub3(a: V3, b: V3) -> V3 {
    (a.0 - b.0, a.1 - b.1, a.2 - b.2)
}

pub fn add3(a: V3, b: V3) -> V3 {
    (a.0 + b.0, a.1 + b.1, a.2 + b.2)
}

pub fn dot3(a: V3, b: V3) -> Rat {
    a.0 * b.0 + a.1 * b.1 + a.2 * b.2
}

pub fn cross3(a: V3, b: V3) -> V3 {
    (
        a.1 * b.2 - a.2 * b.1,
        a.2 * b.0 - a.0 * b.2,
        a.0 * b.1 - a.1 * b.0,
    )
}

/// Do two parallelepipeds with the given corners and edge vectors have
/// intersecting interiors?  Separating-axis test: 3 face normals each plus
/// the 9 edge-pair cross products.
pub fn boxes_intersect(corner_a: V3, edges_a: [V3; 3], corner_b: V3, edges_b: [V3; 3]) -> bool {
    let mut axes: Vec<V3> = Vec::with_capacity(15);
    for es in [&edges_a, &edges_b] {
        axes.push(cross3(es[0], es[1]));
        axes.push(cross3(es[0], es[2]));
        axes.push(cross3(es[1], es[2]));
    }
    for ea in &edges_a {
        for eb in &edges_b {
            axes.push(cross3(*ea, *eb));
        }
    }
    let zero = Rat::ZERO;
    for axis in axes {
        if axis == (zero, zero, zero) {
            continue;
        }
        let span = |corner: V3, edges: &[V3; 3]| {
            let base = dot3(corner, axis);
            let mut lo = base;
            let mut hi = base;
            for e in edges {
                let d = dot3(*e, axis);
                if d < zero {
                    lo += d;
                } else {
                    hi += d;
                }
            }
            (lo, hi)
        };
        let (alo, ahi) = span(corner_a, &edges_a);
        let (blo, bhi) = span(corner_b, &edges_b);
        if ahi <= blo || bhi <= alo {
            return false;
        }
    }
    true
}

/// Generators of the zonogon `Z(n,2)`: vectors in the upper half-plane,
/// ordered clockwise.  With `strict` set they additionally satisfy the
/// convexity condition required by combined tilings: for `i < j < k`,
/// `xi_j = l*xi_i + l'*xi_k` with `l, l' > 0` and `l + l' > 1`.
#[derive(Clone)]
pub struct Gen2 {
    ground: Ground,
    xi: Vec<P2>,
    strict: bool,
}

impl Gen2 {
    /// `xi_i = (2i - n - 1, 2)`: integer-scaled fan, not strict.
    pub fn standard(ground: Ground) -> Gen2 {
        let n = ground.n() as i64;
        let xi = (1..=n).map(|i| P2::from_ints(2 * i - n - 1, 2)).collect();
        Gen2 { ground, xi, strict: false }
    }

    pub fn custom(ground: Ground, xi: Vec<P2>, strict: bool) -> Result<Gen2> {
        let g = Gen2 { ground, xi, strict };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ground.n() as usize;
        let mut violations = Vec::new();
        if self.xi.len() != n {
            return Err(Error::Invalid(vec![Violation::new("generator count != n")]));
        }
        for (t, v) in self.xi.iter().enumerate() {
            if !v.y.is_positive() {
                violations.push(Violation::new(format!("generator {} not in upper half-plane", t + 1)));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !cross(self.xi[i], self.xi[j]).is_negative() {
                    violations.push(Violation::new(format!(
                        "generators {} and {} not in clockwise order",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if self.strict {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        // xi_j = l*xi_i + l'*xi_k via Cramer; l, l' > 0 and
                        // l + l' > 1 as sign tests against cross(xi_i, xi_k) < 0
                        let d = cross(self.xi[i], self.xi[k]);
                        let nj = cross(self.xi[j], self.xi[k]);
                        let nk = cross(self.xi[i], self.xi[j]);
                        if !(nj.signum() == d.signum()
                            && nk.signum() == d.signum()
                            && (nj + nk - d).signum() == d.signum())
                        {
                            violations.push(Violation::new(format!(
                                "strict convexity fails on colors {} {} {}",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(violations))
        }
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn xi(&self, color: u8) -> P2 {
        self.xi[color as usize - 1]
    }

    /// Embedding of a subset: the sum of its generators.
    pub fn point(&self, s: Subset) -> P2 {
        let mut p = P2::from_ints(0, 0);
        for e in s.elems() {
            p = p + self.xi(e);
        }
        p
    }

    /// Counterclockwise boundary of the zonogon: up the right side, down the
    /// left side.
    pub fn boundary_ccw(&self) -> Vec<P2> {
        self.boundary_ccw_subsets().into_iter().map(|s| self.point(s)).collect()
    }

    /// The boundary vertices as subsets, counterclockwise from the bottom.
    pub fn boundary_ccw_subsets(&self) -> Vec<Subset> {
        let n = self.ground.n();
        let mut out = Vec::with_capacity(2 * n as usize);
        let mut s = Subset::EMPTY;
        out.push(s);
        for i in (1..=n).rev() {
            s = s.insert(i);
            out.push(s);
        }
        let mut s = self.ground.full();
        for i in (1..=n).rev() {
            s = s.remove(i);
            if !s.is_empty() {
                out.push(s);
            }
        }
        out
    }

    /// The boundary edges, each as `(tail subset, head subset, color)` with
    /// `head = tail + color`.
    pub fn boundary_edges(&self) -> Vec<(Subset, Subset, u8)> {
        let n = self.ground.n();
        let mut out = Vec::new();
        let mut left = Subset::EMPTY;
        for i in 1..=n {
            let next = left.insert(i);
            out.push((left, next, i));
            left = next;
        }
        let mut right = Subset::EMPTY;
        for i in (1..=n).rev() {
            let next = right.insert(i);
            out.push((right, next, i));
            right = next;
        }
        out
    }

    /// Doubled area of the zonogon.
    pub fn zonogon_area2(&self) -> EpsNum {
        let n = self.ground.n() as usize;
        let mut sum = EpsNum::zero();
        for i in 0..n {
            for j in i + 1..n {
                sum = sum + cross(self.xi[i], self.xi[j]).abs();
            }
        }
        sum + sum
    }
}

/// Generators of the zonotope `Z(n,3)`: vectors `(x_i, y_i, 1)` with
/// `x_1 < ... < x_n` and the points `(x_i, y_i)` in strictly convex position
/// (every middle point strictly below the chord of any surrounding pair),
/// which makes every `(x_i, y_i)` a vertex of their convex hull.
#[derive(Clone)]
pub struct Gen3 {
    ground: Ground,
    pts: Vec<(Rat, Rat)>,
}

impl Gen3 {
    /// `x_i = 2i - n - 1`, `y_i = x_i^2`: integer points on a parabola.
    pub fn standard(ground: Ground) -> Gen3 {
        let n = ground.n() as i64;
        let pts = (1..=n)
            .map(|i| {
                let x = rat(2 * i - n - 1);
                (x, x * x)
            })
            .collect();
        Gen3 { ground, pts }
    }

    pub fn custom(ground: Ground, pts: Vec<(Rat, Rat)>) -> Result<Gen3> {
        let g = Gen3 { ground, pts };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ground.n() as usize;
        let mut violations = Vec::new();
        if self.pts.len() != n {
            return Err(Error::Invalid(vec![Violation::new("generator count != n")]));
        }
        for i in 1..n {
            if self.pts[i - 1].0 >= self.pts[i].0 {
                violations.push(Violation::new(format!("x_{} >= x_{}", i, i + 1)));
            }
        }
        let p = |t: usize| P2 {
            x: EpsNum::from_rat(self.pts[t].0),
            y: EpsNum::from_rat(self.pts[t].1),
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !orient(p(i), p(j), p(k)).is_positive() {
                        violations.push(Violation::new(format!(
                            "points {} {} {} not in convex position",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(violations))
        }
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn xy(&self, color: u8) -> (Rat, Rat) {
        self.pts[color as usize - 1]
    }

    /// The full generator vector `(x_i, y_i, 1)`.
    pub fn theta(&self, color: u8) -> V3 {
        let (x, y) = self.xy(color);
        (x, y, Rat::ONE)
    }

    pub fn point3(&self, s: Subset) -> (Rat, Rat, Rat) {
        let mut x = Rat::ZERO;
        let mut y = Rat::ZERO;
        for e in s.elems() {
            let (xe, ye) = self.xy(e);
            x += xe;
            y += ye;
        }
        (x, y, rat(s.card() as i64))
    }

    /// Volume of any `ijk`-cube: `det[theta_i; theta_j; theta_k]`, positive
    /// by convex position.
    pub fn cube_volume(&self, i: u8, j: u8, k: u8) -> Rat {
        let (xi, yi) = self.xy(i);
        let (xj, yj) = self.xy(j);
        let (xk, yk) = self.xy(k);
        (xj - xi) * (yk - yi) - (xk - xi) * (yj - yi)
    }

    pub fn zonotope_volume(&self) -> Rat {
        let n = self.ground.n();
        let mut sum = Rat::ZERO;
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    sum += self.cube_volume(i, j, k);
                }
            }
        }
        sum
    }

    /// Plain projection `(x, y, z) -> (x, z)` of a subset point.
    pub fn pi(&self, s: Subset) -> P2 {
        let (x, _, z) = self.point3(s);
        P2 { x: EpsNum::from_rat(x), y: EpsNum::from_rat(z) }
    }

    /// Perturbed projection `(x, y, z) -> (x, z - eps*y)` of a subset point.
    pub fn pi_eps(&self, s: Subset) -> P2 {
        let (x, y, z) = self.point3(s);
        P2 { x: EpsNum::from_rat(x), y: EpsNum::new(z, -y, Rat::ZERO) }
    }

    /// Plain-projection generators `(x_i, 1)` for rhombus tilings.
    pub fn gen2_plain(&self) -> Gen2 {
        let xi = self
            .pts
            .iter()
            .map(|(x, _)| P2 { x: EpsNum::from_rat(*x), y: EpsNum::from_int(1) })
            .collect();
        Gen2 { ground: self.ground, xi, strict: false }
    }

    /// Perturbed-projection generators `(x_i, 1 - eps*y_i)`; these satisfy
    /// the strict convexity condition needed by combined tilings.
    pub fn gen2_eps(&self) -> Gen2 {
        let xi = self
            .pts
            .iter()
            .map(|(x, y)| P2 {
                x: EpsNum::from_rat(*x),
                y: EpsNum::new(Rat::ONE, -*y, Rat::ZERO),
            })
            .collect();
        Gen2 { ground: self.ground, xi, strict: true }
    }

    /// Mirror image: color `i` becomes `n + 1 - i`, `x` is negated.
    pub fn mirror(&self) -> Gen3 {
        let mut pts: Vec<(Rat, Rat)> = self.pts.iter().map(|(x, y)| (-*x, *y)).collect();
        pts.reverse();
        Gen3 { ground: self.ground, pts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_ordering() {
        let one = EpsNum::from_int(1);
        let eps = EpsNum::eps_times(Rat::ONE);
        let million_eps = EpsNum::eps_times(rat(1_000_000));
        assert!(eps.is_positive());
        assert!(eps < one);
        assert!(million_eps < one);
        assert!((one - eps) < one);
        assert!((one - eps) > EpsNum::from_int(0));
        assert_eq!((eps * eps).signum(), 1);
    }

    #[test]
    fn standard_generators_validate() {
        for n in 1..=8 {
            let g = Ground::new(n).unwrap();
            Gen2::standard(g).validate().unwrap();
            Gen3::standard(g).validate().unwrap();
            Gen3::standard(g).gen2_eps().validate().unwrap();
            Gen3::standard(g).gen2_plain().validate().unwrap();
            Gen3::standard(g).mirror().validate().unwrap();
        }
    }

    #[test]
    fn plain_fan_is_not_strict() {
        let g = Ground::new(4).unwrap();
        let std = Gen2::standard(g);
        let strict = Gen2 { ground: g, xi: (1..=4).map(|i| std.xi(i)).collect(), strict: true };
        assert!(strict.validate().is_err());
    }

    #[test]
    fn zonogon_area_matches_boundary() {
        for n in 2..=6 {
            let g = Ground::new(n).unwrap();
            for gens in [Gen2::standard(g), Gen3::standard(g).gen2_eps()] {
                let shoelace = polygon_area2(&gens.boundary_ccw());
                assert_eq!(shoelace, gens.zonogon_area2(), "n={n}");
            }
        }
    }

    #[test]
    fn sat_overlap() {
        let sq = |ox: i64, oy: i64| {
            vec![
                P2::from_ints(ox, oy),
                P2::from_ints(ox + 2, oy),
                P2::from_ints(ox + 2, oy + 2),
                P2::from_ints(ox, oy + 2),
            ]
        };
        assert!(convex_interiors_intersect(&sq(0, 0), &sq(1, 1)));
        assert!(!convex_interiors_intersect(&sq(0, 0), &sq(2, 0))); // share an edge
        assert!(!convex_interiors_intersect(&sq(0, 0), &sq(3, 3)));
    }

    #[test]
    fn point_in_polygon_evenodd() {
        let tri = vec![P2::from_ints(0, 0), P2::from_ints(4, 0), P2::from_ints(0, 4)];
        assert!(point_in_polygon(P2::from_ints(1, 1), &tri));
        assert!(!point_in_polygon(P2::from_ints(3, 3), &tri));
        assert!(point_in_convex(P2::from_ints(1, 1), &tri, false));
        assert!(point_in_convex(P2::from_ints(2, 0), &tri, true));
        assert!(!point_in_convex(P2::from_ints(2, 0), &tri, false));
    }

    #[test]
    fn boundary_subsets_shape() {
        let g = Ground::new(4).unwrap();
        let b = Gen2::standard(g).boundary_ccw_subsets();
        assert_eq!(b.len(), 8);
        assert_eq!(b[0], Subset::EMPTY);
        assert!(b.contains(&g.full()));
    }
}
