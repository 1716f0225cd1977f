//! Tetrahedra built from six edge lengths, and the angles read off them.
//!
//! All symbols share one template: four vectors `J1 + J2 + J4 + J5 = 0` with
//! face diagonals `J12 = J1 + J2` and `J24 = J2 + J4`. The 6j, 12j and 15j
//! callers relabel their own edges onto these slots (see the `EdgeSet`
//! constructors).

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::GeometryError;
use crate::halfint::HalfInt;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Template edge slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    J1,
    J2,
    J4,
    J5,
    J12,
    J24,
}

impl Edge {
    pub const ALL: [Edge; 6] = [Edge::J1, Edge::J2, Edge::J4, Edge::J5, Edge::J12, Edge::J24];

    pub const fn index(self) -> usize {
        self as usize
    }

    /// Vertex pair of the edge, with vertices `P0 = 0`, `P1 = J1`,
    /// `P2 = J12`, `P3 = -J5`.
    const fn ends(self) -> (usize, usize) {
        match self {
            Edge::J1 => (0, 1),
            Edge::J2 => (1, 2),
            Edge::J4 => (2, 3),
            Edge::J5 => (3, 0),
            Edge::J12 => (0, 2),
            Edge::J24 => (1, 3),
        }
    }

    const fn opposite(self) -> (usize, usize) {
        match self {
            Edge::J1 => (2, 3),
            Edge::J2 => (0, 3),
            Edge::J4 => (0, 1),
            Edge::J5 => (1, 2),
            Edge::J12 => (1, 3),
            Edge::J24 => (0, 2),
        }
    }
}

/// Six edge lengths `J = j + 1/2` in template order, with the caller's labels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeSet<T> {
    lengths: [T; 6],
    labels: [&'static str; 6],
}

impl<T: Real> EdgeSet<T> {
    /// Lengths for slots `(J1, J2, J4, J5, J12, J24)`.
    pub fn new(lengths: [T; 6]) -> Result<Self, GeometryError> {
        Self::labelled(lengths, ["1", "2", "4", "5", "12", "24"])
    }

    pub fn labelled(lengths: [T; 6], labels: [&'static str; 6]) -> Result<Self, GeometryError> {
        if let Some(&bad) = lengths.iter().find(|&&l| !(l > T::zero() && l.is_finite())) {
            return Err(GeometryError::NonPositiveLength(bad.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(EdgeSet { lengths, labels })
    }

    /// 9j tetrahedron from `j1, j2, j4, j5, j12, j24`.
    pub fn nine_j(j: [HalfInt; 6]) -> Self {
        Self::labelled(j.map(HalfInt::length), ["1", "2", "4", "5", "12", "24"]).unwrap()
    }

    /// 12j tetrahedron from `j2, j4, j3, j6, j24, j34` (slot order).
    pub fn twelve_j(j: [HalfInt; 6]) -> Self {
        Self::labelled(j.map(HalfInt::length), ["2", "4", "3", "6", "24", "34"]).unwrap()
    }

    /// 15j tetrahedron from `j1, j2, j4, j7, j12, j24`.
    pub fn fifteen_j(j: [HalfInt; 6]) -> Self {
        Self::labelled(j.map(HalfInt::length), ["1", "2", "4", "7", "12", "24"]).unwrap()
    }

    /// 6j tetrahedron of `{j1 j2 j3; j4 j5 j6}`.
    pub fn six_j(j: [HalfInt; 6]) -> Self {
        let [a, b, c, d, e, f] = j.map(HalfInt::length);
        Self::labelled([a, b, d, e, c, f], ["1", "2", "4", "5", "3", "6"]).unwrap()
    }

    pub fn length(&self, e: Edge) -> T {
        self.lengths[e.index()]
    }

    pub fn lengths(&self) -> [T; 6] {
        self.lengths
    }

    pub fn label(&self, e: Edge) -> &'static str {
        self.labels[e.index()]
    }
}

/// Gram matrix of the vectors `(J1, J12, -J5)` meeting at vertex `P0`.
pub fn gram_from_edges<T: Real>(edges: &EdgeSet<T>) -> [[T; 3]; 3] {
    let sq = |e| {
        let l = edges.length(e);
        l * l
    };
    let (j1, j2, j4, j5, j12, j24) = (
        sq(Edge::J1),
        sq(Edge::J2),
        sq(Edge::J4),
        sq(Edge::J5),
        sq(Edge::J12),
        sq(Edge::J24),
    );
    let h = T::half();
    let a = (j1 + j12 - j2) * h;
    let b = (j1 + j5 - j24) * h;
    let c = (j12 + j5 - j4) * h;
    [[j1, a, b], [a, j12, c], [b, c, j5]]
}

pub fn det3<T: Real>(m: &[[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Classically allowed iff `G` is positive definite with `det G > ε (tr G)³`.
///
/// A positive determinant alone is not enough: lengths that break a face's
/// triangle inequality can give two negative eigenvalues.
pub fn is_classically_allowed<T: Real>(edges: &EdgeSet<T>) -> bool {
    let g = gram_from_edges(edges);
    allowed_gram(&g)
}

fn allowed_gram<T: Real>(g: &[[T; 3]; 3]) -> bool {
    let tr = g[0][0] + g[1][1] + g[2][2];
    g[0][0] > T::zero()
        && g[0][0] * g[1][1] - g[0][1] * g[1][0] > T::zero()
        && det3(g) > T::CAUSTIC_EPS * tr * tr * tr
}

/// Vectors realizing an [`EdgeSet`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TetraConfig<T> {
    vectors: [Vec3<T>; 6],
    signed_volume: T,
}

impl<T: Real> TetraConfig<T> {
    pub fn vector(&self, e: Edge) -> Vec3<T> {
        self.vectors[e.index()]
    }

    /// `J1 · (J2 × J4) / 6`; negative for configurations from [`build_tetrahedron`].
    pub fn signed_volume(&self) -> T {
        self.signed_volume
    }

    pub fn volume(&self) -> T {
        self.signed_volume.abs()
    }

    /// Edge lengths measured back from the vectors.
    pub fn measured_lengths(&self) -> [T; 6] {
        self.vectors.map(Vec3::norm)
    }

    /// Applies `f` to every vector, e.g. a rotation or reflection.
    pub fn map(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Self {
        let vectors = self.vectors.map(f);
        let [j1, j2, j4, ..] = vectors;
        TetraConfig {
            vectors,
            signed_volume: j1.dot(j2.cross(j4)) / T::of(6.0),
        }
    }

    fn vertices(&self) -> [Vec3<T>; 4] {
        [
            Vec3::zero(),
            self.vector(Edge::J1),
            self.vector(Edge::J12),
            -self.vector(Edge::J5),
        ]
    }
}

impl<T> Index<Edge> for TetraConfig<T> {
    type Output = Vec3<T>;
    fn index(&self, e: Edge) -> &Vec3<T> {
        &self.vectors[e as usize]
    }
}

/// Realizes the edge set by a Cholesky factorization of its Gram matrix,
/// oriented so the signed volume is negative.
pub fn build_tetrahedron<T: Real>(edges: &EdgeSet<T>) -> Result<TetraConfig<T>, GeometryError> {
    let g = gram_from_edges(edges);
    let det = det3(&g);
    let refuse = || GeometryError::NotClassicallyAllowed {
        det_g: det.to_f64().unwrap_or(f64::NAN),
    };
    if !allowed_gram(&g) {
        return Err(refuse());
    }
    let l00 = g[0][0].sqrt();
    let l10 = g[1][0] / l00;
    let r11 = g[1][1] - l10 * l10;
    if !(r11 > T::zero()) {
        return Err(refuse());
    }
    let l11 = r11.sqrt();
    let l20 = g[2][0] / l00;
    let l21 = (g[2][1] - l20 * l10) / l11;
    let r22 = g[2][2] - l20 * l20 - l21 * l21;
    if !(r22 > T::zero()) {
        return Err(refuse());
    }
    let l22 = r22.sqrt();
    let z = T::zero();
    let j1 = Vec3::new(l00, z, z);
    let j12 = Vec3::new(l10, l11, z);
    let m5 = Vec3::new(l20, l21, -l22);
    let j2 = j12 - j1;
    let j4 = m5 - j12;
    let j5 = -m5;
    let j24 = j2 + j4;
    Ok(TetraConfig {
        vectors: [j1, j2, j4, j5, j12, j24],
        signed_volume: j1.dot(j2.cross(j4)) / T::of(6.0),
    })
}

/// Which symbol's twist angles to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TetraKind {
    SixJ,
    NineJ,
    TwelveJ,
    FifteenJ,
}

/// Symbol-specific angles, all in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Twist<T> {
    None,
    NineJ {
        phi1: T,
        phi4: T,
        theta: T,
    },
    TwelveJ {
        phi2: T,
        phi3: T,
        theta: T,
    },
    FifteenJ {
        phi1p: T,
        phi4p: T,
        theta1: T,
        theta2: T,
        phi1_int: T,
        phi12_int: T,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleBundle<T> {
    pub volume: T,
    /// External dihedral angles, indexed by [`Edge::index`].
    pub psi: [T; 6],
    pub twist: Twist<T>,
}

impl<T: Real> AngleBundle<T> {
    pub fn psi(&self, e: Edge) -> T {
        self.psi[e.index()]
    }

    /// `Σ_r J_r ψ_r` over the six template edges.
    pub fn regge_action(&self, edges: &EdgeSet<T>) -> T {
        Edge::ALL
            .iter()
            .fold(T::zero(), |acc, &e| acc + edges.length(e) * self.psi(e))
    }
}

/// `cos⁻¹` that tolerates rounding just outside `[-1, 1]` and refuses more.
pub fn acos_checked<T: Real>(x: T, what: &'static str) -> Result<T, GeometryError> {
    if x.is_nan() || x.abs() > T::one() + T::ACOS_BAND {
        return Err(GeometryError::DegenerateAngle(what));
    }
    Ok(x.max(-T::one()).min(T::one()).acos())
}

/// Angle between two vectors.
fn angle_between<T: Real>(a: Vec3<T>, b: Vec3<T>, what: &'static str) -> Result<T, GeometryError> {
    let n = a.norm() * b.norm();
    if !(n > T::zero()) {
        return Err(GeometryError::DegenerateAngle(what));
    }
    acos_checked(a.dot(b) / n, what)
}

fn checked_cross<T: Real>(a: Vec3<T>, b: Vec3<T>, what: &'static str) -> Result<Vec3<T>, GeometryError> {
    let c = a.cross(b);
    if !(c.norm() >= T::CROSS_EPS * a.norm() * b.norm()) || c.norm() == T::zero() {
        return Err(GeometryError::DegenerateAngle(what));
    }
    Ok(c)
}

/// `π` minus the angle between the planes `(a, b)` and `(a, c)`.
fn twist_angle<T: Real>(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>, what: &'static str) -> Result<T, GeometryError> {
    let x = checked_cross(a, b, what)?;
    let y = checked_cross(a, c, what)?;
    Ok(T::PI() - acos_checked(x.dot(y) / (x.norm() * y.norm()), what)?)
}

/// Interior dihedral angle at the edge `p[i]p[k]` between the faces through
/// `p[m]` and `p[n]`.
fn interior_dihedral<T: Real>(p: &[Vec3<T>; 4], (i, k): (usize, usize), (m, n): (usize, usize)) -> Result<T, GeometryError> {
    let axis = p[k] - p[i];
    let len = axis.norm();
    let e = axis * (T::one() / len);
    let u = p[m] - p[i];
    let w = p[n] - p[i];
    let u = u - e * u.dot(e);
    let w = w - e * w.dot(e);
    let scale = u.norm() * w.norm();
    if !(scale > T::zero()) {
        return Err(GeometryError::DegenerateAngle("dihedral"));
    }
    Ok(u.cross(w).norm().atan2(u.dot(w)))
}

pub fn angle_bundle<T: Real>(config: &TetraConfig<T>, kind: TetraKind) -> Result<AngleBundle<T>, GeometryError> {
    let p = config.vertices();
    let mut psi = [T::zero(); 6];
    for e in Edge::ALL {
        psi[e.index()] = T::PI() - interior_dihedral(&p, e.ends(), e.opposite())?;
    }
    let j1 = config[Edge::J1];
    let j4 = config[Edge::J4];
    let j5 = config[Edge::J5];
    let first = |tag| twist_angle(j1, j4, j5, tag);
    let second = |tag| twist_angle(j4, j1, j5, tag);
    let twist = match kind {
        TetraKind::SixJ => Twist::None,
        TetraKind::NineJ => Twist::NineJ {
            phi1: first("phi1")?,
            phi4: second("phi4")?,
            theta: angle_between(j1, j4, "theta")?,
        },
        TetraKind::TwelveJ => Twist::TwelveJ {
            phi2: first("phi2")?,
            phi3: second("phi3")?,
            theta: angle_between(j1, j4, "theta")?,
        },
        TetraKind::FifteenJ => Twist::FifteenJ {
            phi1p: first("phi1'")?,
            phi4p: second("phi4'")?,
            theta1: angle_between(j1, j4, "theta1")?,
            theta2: angle_between(j1, config[Edge::J12], "theta2")?,
            phi1_int: T::PI() - psi[Edge::J1.index()],
            phi12_int: T::PI() - psi[Edge::J12.index()],
        },
    };
    Ok(AngleBundle {
        volume: config.volume(),
        psi,
        twist,
    })
}

/// Exterior angle between sides `J1` and `J4` of the triangle `(J1, J4, J5)`.
pub fn triangle_theta<T: Real>(j1: T, j4: T, j5: T) -> Result<T, GeometryError> {
    let ok = j1 > T::zero() && j4 > T::zero() && j5 >= T::zero() && j5 <= j1 + j4 && j5 >= (j1 - j4).abs();
    if !ok {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        return Err(GeometryError::NotATriangle(f(j1), f(j4), f(j5)));
    }
    let c = (j1 * j1 + j4 * j4 - j5 * j5) / (T::of(2.0) * j1 * j4);
    Ok(T::PI() - acos_checked(c, "triangle")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE_EDGES: [f64; 6] = [101.0, 123.0, 88.0, 64.5, 68.5, 92.5];

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gram_of_reference_edges() {
        let e = EdgeSet::new(REFERENCE_EDGES).unwrap();
        let g = gram_from_edges(&e);
        assert_eq!([g[0][0], g[1][1], g[2][2]], [10201.0, 4692.25, 4160.25]);
        // (J1² + J12² - J2²)/2, (J1² + J5² - J24²)/2, (J12² + J5² - J4²)/2
        assert_eq!(g[0][1], (10201.0 + 4692.25 - 15129.0) / 2.0);
        assert_eq!(g[0][2], (10201.0 + 4160.25 - 8556.25) / 2.0);
        assert_eq!(g[1][2], (4692.25 + 4160.25 - 7744.0) / 2.0);
        for i in 0..3 {
            for k in 0..3 {
                assert_eq!(g[i][k], g[k][i]);
            }
        }
    }

    #[test]
    fn reference_tetrahedron() {
        let e = EdgeSet::new(REFERENCE_EDGES).unwrap();
        let t = build_tetrahedron(&e).unwrap();
        assert!(t.signed_volume() < 0.0);
        let det = det3(&gram_from_edges(&e));
        assert!(rel((6.0 * t.signed_volume()).abs(), det.sqrt()) < 1e-9);
        let sum = t[Edge::J1] + t[Edge::J2] + t[Edge::J4] + t[Edge::J5];
        assert!(sum.norm() < 1e-9 * 123.0);
        for (m, l) in t.measured_lengths().iter().zip(REFERENCE_EDGES) {
            assert!(rel(*m, l) < 1e-9);
        }
    }

    #[test]
    fn flat_is_refused() {
        // coplanar: J1 = (1,0,0), J2 = (0,1,0), J4 = (-2,0,0)
        let e = EdgeSet::new([1.0, 1.0, 2.0, 2f64.sqrt(), 2f64.sqrt(), 5f64.sqrt()]).unwrap();
        assert!(det3(&gram_from_edges(&e)).abs() < 1e-12);
        assert!(matches!(
            build_tetrahedron(&e),
            Err(GeometryError::NotClassicallyAllowed { .. })
        ));
    }

    #[test]
    fn positive_determinant_is_not_enough() {
        // det G > 0 here but G has two negative eigenvalues
        let e = EdgeSet::new([15.0, 1.0, 9.0, 2.0, 5.0, 19.0]).unwrap();
        assert!(det3(&gram_from_edges(&e)) > 1e5);
        assert!(!is_classically_allowed(&e));
        assert!(build_tetrahedron(&e).is_err());
    }

    #[test]
    fn broken_face_is_refused() {
        let e = EdgeSet::new([1.0, 1.0, 1.0, 1.0, 5.0, 1.0]).unwrap();
        assert!(build_tetrahedron(&e).is_err());
    }

    #[test]
    fn nonpositive_lengths_rejected() {
        assert!(EdgeSet::new([1.0, 0.0, 1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(EdgeSet::new([1.0, f64::NAN, 1.0, 1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn regular_tetrahedron_dihedrals() {
        let e = EdgeSet::new([3.0; 6]).unwrap();
        let g = gram_from_edges(&e);
        assert_eq!(g[0][1], g[1][0]);
        assert_eq!(g[0][1], 4.5);
        let t = build_tetrahedron(&e).unwrap();
        let b = angle_bundle(&t, TetraKind::SixJ).unwrap();
        let want = std::f64::consts::PI - (1.0f64 / 3.0).acos();
        for p in b.psi {
            assert!((p - want).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_two_ways() {
        let e = EdgeSet::new(REFERENCE_EDGES).unwrap();
        let t = build_tetrahedron(&e).unwrap();
        let b = angle_bundle(&t, TetraKind::NineJ).unwrap();
        let Twist::NineJ { theta, .. } = b.twist else { panic!() };
        let (j1, j4) = (t[Edge::J1], t[Edge::J4]);
        let alt = (t[Edge::J12].dot(j4) - t[Edge::J2].dot(j4)) / (j1.norm() * j4.norm());
        assert!((theta.cos() - alt).abs() < 1e-12);
    }

    #[test]
    fn mirror_invariance() {
        let e = EdgeSet::new(REFERENCE_EDGES).unwrap();
        let t = build_tetrahedron(&e).unwrap();
        let m = t.map(|v| Vec3::new(v.x, -v.y, v.z));
        assert!(m.signed_volume() > 0.0);
        for kind in [TetraKind::NineJ, TetraKind::FifteenJ] {
            let a = angle_bundle(&t, kind).unwrap();
            let b = angle_bundle(&m, kind).unwrap();
            assert!((a.volume - b.volume).abs() < 1e-9);
            for k in 0..6 {
                assert!((a.psi[k] - b.psi[k]).abs() < 1e-12);
            }
            match (a.twist, b.twist) {
                (Twist::NineJ { phi1, phi4, theta }, Twist::NineJ { phi1: p, phi4: q, theta: r }) => {
                    assert!((phi1 - p).abs() < 1e-12 && (phi4 - q).abs() < 1e-12 && (theta - r).abs() < 1e-12);
                }
                (Twist::FifteenJ { theta2, phi12_int, .. }, Twist::FifteenJ { theta2: x, phi12_int: y, .. }) => {
                    assert!((theta2 - x).abs() < 1e-12 && (phi12_int - y).abs() < 1e-12);
                }
                _ => panic!("kind mismatch"),
            }
        }
    }

    #[test]
    fn triangle_theta_examples() {
        let pi = std::f64::consts::PI;
        assert!((triangle_theta(1.0, 1.0, 1.0).unwrap() - 2.0 * pi / 3.0).abs() < 1e-15);
        assert!((triangle_theta(3.0, 4.0, 5.0).unwrap() - pi / 2.0).abs() < 1e-15);
        assert!(matches!(triangle_theta(1.0, 1.0, 3.0), Err(GeometryError::NotATriangle(..))));
        // Appendix-A family mid-range, j5 = 61
        let th = triangle_theta(67.5, 54.5, 61.5).unwrap();
        let c = (67.5f64 * 67.5 + 54.5 * 54.5 - 61.5 * 61.5) / (2.0 * 67.5 * 54.5);
        assert!((th - (pi - c.acos())).abs() < 1e-15);
    }

    #[test]
    fn acos_band() {
        assert_eq!(acos_checked(1.0 + 1e-13, "t").unwrap(), 0.0);
        assert!(acos_checked(1.0 + 1e-9, "t").is_err());
    }

    #[test]
    fn single_precision_build() {
        let e = EdgeSet::new(REFERENCE_EDGES.map(|x| x as f32)).unwrap();
        let t = build_tetrahedron(&e).unwrap();
        let b = angle_bundle(&t, TetraKind::NineJ).unwrap();
        let d = build_tetrahedron(&EdgeSet::new(REFERENCE_EDGES).unwrap()).unwrap();
        assert!((f64::from(b.volume) - d.volume()).abs() / d.volume() < 1e-3);
    }
}
