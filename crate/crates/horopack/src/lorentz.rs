//! Lorentzian linear algebra on R^{1,3} and the projective (Klein) model.
//!
//! Points are homogeneous 4-vectors. Whenever x⁰ ≠ 0 they are stored in the
//! affine chart x⁰ = 1.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for membership in the absolute.
pub const ABSOLUTE_TOL: f64 = 1e-10;

const CHART_EPS: f64 = 1e-14;

/// Sectional curvature. Fixed to −1 (k = 1) throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature {
    k: f64,
}

impl Curvature {
    pub const UNIT: Curvature = Curvature { k: 1.0 };

    pub fn k(self) -> f64 {
        self.k
    }
}

impl Default for Curvature {
    fn default() -> Self {
        Self::UNIT
    }
}

/// Metric tensor diag(−1, 1, 1, 1).
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// ⟨x,y⟩ = −x⁰y⁰ + x¹y¹ + x²y² + x³y³.
#[inline]
pub fn bilinear_form(x: &Vector4<f64>, y: &Vector4<f64>) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    Interior,
    Absolute,
    Outer,
}

/// A point of projective 3-space, stored with x⁰ = 1 when possible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    coords: Vector4<f64>,
}

impl ProjectivePoint {
    pub fn new(coords: Vector4<f64>) -> Result<Self> {
        if !coords.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinates".into()));
        }
        if coords.norm() == 0.0 {
            return Err(Error::InvalidInput("zero vector is not a projective point".into()));
        }
        let scale = coords.norm();
        let coords = if coords[0].abs() > CHART_EPS * scale {
            coords / coords[0]
        } else {
            coords / scale
        };
        Ok(Self { coords })
    }

    pub fn from_array(c: [f64; 4]) -> Result<Self> {
        Self::new(Vector4::from(c))
    }

    /// Point (1, p) of the Klein chart.
    pub fn from_chart(p: &Vector3<f64>) -> Self {
        Self {
            coords: Vector4::new(1.0, p[0], p[1], p[2]),
        }
    }

    pub fn coords(&self) -> &Vector4<f64> {
        &self.coords
    }

    /// Euclidean coordinates in the Klein chart, if the point is affine.
    pub fn chart(&self) -> Option<Vector3<f64>> {
        (self.coords[0] != 0.0).then(|| self.coords.fixed_rows::<3>(1) / self.coords[0])
    }

    pub fn classify(&self, tol: f64) -> PointClass {
        classify_vector(&self.coords, tol)
    }

    pub fn is_interior(&self) -> bool {
        self.classify(ABSOLUTE_TOL) == PointClass::Interior
    }

    pub fn is_absolute(&self) -> bool {
        self.classify(ABSOLUTE_TOL) == PointClass::Absolute
    }

    /// Representative on the upper sheet ⟨x,x⟩ = −1. Interior points only.
    pub fn hyperboloid(&self) -> Result<Vector4<f64>> {
        let q = bilinear_form(&self.coords, &self.coords);
        if !(q < 0.0) || self.classify(ABSOLUTE_TOL) != PointClass::Interior {
            return Err(Error::Domain("point is not interior".into()));
        }
        let v = self.coords / (-q).sqrt();
        Ok(if v[0] < 0.0 { -v } else { v })
    }

    /// Projective equality up to `tol` in the chart.
    pub fn approx_eq(&self, other: &ProjectivePoint, tol: f64) -> bool {
        (self.coords - other.coords).amax() <= tol
            || (self.coords + other.coords).amax() <= tol
    }
}

/// Classification of a raw vector; panics never, returns Outer for NaN.
pub fn classify_vector(x: &Vector4<f64>, tol: f64) -> PointClass {
    let q = bilinear_form(x, x);
    let n2 = x.norm_squared();
    if q < -tol * n2 {
        PointClass::Interior
    } else if q.abs() <= tol * n2 {
        PointClass::Absolute
    } else {
        PointClass::Outer
    }
}

pub fn classify(x: &ProjectivePoint, tol: f64) -> Result<PointClass> {
    Ok(x.classify(tol))
}

/// A hyperplane given by its pole b: the plane is {x : ⟨x,b⟩ = 0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vector4<f64>,
}

impl Hyperplane {
    /// Normalizes to ⟨b,b⟩ = 1 when b is spacelike.
    pub fn new(normal: Vector4<f64>) -> Result<Self> {
        if normal.norm() == 0.0 {
            return Err(Error::InvalidInput("zero normal".into()));
        }
        let q = bilinear_form(&normal, &normal);
        let normal = if q > ABSOLUTE_TOL * normal.norm_squared() {
            normal / q.sqrt()
        } else {
            normal
        };
        Ok(Self { normal })
    }

    /// Plane n·p = offset of the Klein chart.
    pub fn from_chart_plane(n: &Vector3<f64>, offset: f64) -> Result<Self> {
        Self::new(Vector4::new(offset, n[0], n[1], n[2]))
    }

    /// Plane through three projective points.
    pub fn through(p: &Vector4<f64>, q: &Vector4<f64>, r: &Vector4<f64>) -> Result<Self> {
        let f = cross4(p, q, r);
        if f.norm() <= 1e-14 * p.norm() * q.norm() * r.norm() {
            return Err(Error::InvalidInput("points do not span a plane".into()));
        }
        // f is a covector; raise the index to get the pole.
        Self::new(metric() * f)
    }

    pub fn normal(&self) -> &Vector4<f64> {
        &self.normal
    }

    pub fn is_spacelike(&self) -> bool {
        (bilinear_form(&self.normal, &self.normal) - 1.0).abs() < 1e-9
    }

    /// Signed value ⟨x,b⟩.
    pub fn eval(&self, x: &Vector4<f64>) -> f64 {
        bilinear_form(x, &self.normal)
    }

    pub fn flipped(&self) -> Self {
        Self { normal: -self.normal }
    }

    /// Orient so that `inside` evaluates positive.
    pub fn oriented_towards(self, inside: &Vector4<f64>) -> Self {
        if self.eval(inside) < 0.0 {
            self.flipped()
        } else {
            self
        }
    }
}

/// Covector f with f·p = f·q = f·r = 0 (generalized cross product).
pub fn cross4(p: &Vector4<f64>, q: &Vector4<f64>, r: &Vector4<f64>) -> Vector4<f64> {
    let mut f = Vector4::zeros();
    for (i, fi) in f.iter_mut().enumerate() {
        let cols: Vec<usize> = (0..4).filter(|&c| c != i).collect();
        let m = nalgebra::Matrix3::new(
            p[cols[0]], p[cols[1]], p[cols[2]],
            q[cols[0]], q[cols[1]], q[cols[2]],
            r[cols[0]], r[cols[1]], r[cols[2]],
        );
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        *fi = sign * m.determinant();
    }
    f
}

/// Polar plane of x: {y : ⟨x,y⟩ = 0}.
pub fn polar(x: &ProjectivePoint) -> Hyperplane {
    Hyperplane { normal: *x.coords() }
}

impl Hyperplane {
    /// Coefficients c with plane c·y = 0 in plain coordinates.
    pub fn covector(&self) -> Vector4<f64> {
        metric() * self.normal
    }
}

/// Hyperbolic distance between interior points.
pub fn distance(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    let (a, b) = (x.coords(), y.coords());
    for p in [x, y] {
        if p.classify(ABSOLUTE_TOL) != PointClass::Interior {
            return Err(Error::Domain("distance needs interior points".into()));
        }
    }
    let ch = -bilinear_form(a, b) / (bilinear_form(a, a) * bilinear_form(b, b)).sqrt();
    // sinh(d/2)² = (cosh d − 1)/2 computed without cancellation
    let (u, v) = (x.hyperboloid()?, y.hyperboloid()?);
    let diff = u - v;
    let half = bilinear_form(&diff, &diff).max(0.0).sqrt() / 2.0;
    Ok(if ch < 1.5 { 2.0 * half.asinh() } else { ch.acosh() })
}

/// Foot of the perpendicular from p onto the line through a and b.
pub fn foot_on_line(
    p: &ProjectivePoint,
    a: &ProjectivePoint,
    b: &ProjectivePoint,
) -> Result<ProjectivePoint> {
    if !p.is_interior() {
        return Err(Error::Domain("foot_on_line needs an interior point".into()));
    }
    let (a, b, p) = (a.coords(), b.coords(), p.coords());
    let g = Matrix2::new(
        bilinear_form(a, a), bilinear_form(a, b),
        bilinear_form(a, b), bilinear_form(b, b),
    );
    let scale = a.norm_squared() * b.norm_squared();
    if g.determinant().abs() <= 1e-14 * scale {
        return Err(Error::InvalidInput("degenerate line".into()));
    }
    let rhs = Vector2::new(bilinear_form(p, a), bilinear_form(p, b));
    let sol = g
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidInput("degenerate line".into()))?;
    let q = a * sol[0] + b * sol[1];
    if classify_vector(&q, ABSOLUTE_TOL) != PointClass::Interior {
        return Err(Error::Domain("line does not meet the interior".into()));
    }
    ProjectivePoint::new(q)
}

/// Reflection x ↦ x − 2⟨x,b⟩b in a spacelike unit hyperplane.
pub fn reflect(h: &Hyperplane, x: &ProjectivePoint) -> Result<ProjectivePoint> {
    ProjectivePoint::new(reflect_vector(h, x.coords())?)
}

/// Reflection of a raw vector, keeping its scale.
pub fn reflect_vector(h: &Hyperplane, x: &Vector4<f64>) -> Result<Vector4<f64>> {
    if !h.is_spacelike() {
        return Err(Error::InvalidInput("reflection needs a spacelike unit normal".into()));
    }
    let b = h.normal();
    Ok(x - b * (2.0 * bilinear_form(x, b)))
}

/// Matrix of the reflection in h, acting on column vectors.
pub fn reflection_matrix(h: &Hyperplane) -> Result<Matrix4<f64>> {
    if !h.is_spacelike() {
        return Err(Error::InvalidInput("reflection needs a spacelike unit normal".into()));
    }
    let b = h.normal();
    Ok(Matrix4::identity() - (b * b.transpose()) * metric() * 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(c: [f64; 4]) -> ProjectivePoint {
        ProjectivePoint::from_array(c).unwrap()
    }

    #[test]
    fn form_examples() {
        let e3 = Vector4::new(1.0, 0.0, 0.0, 1.0);
        let o = Vector4::new(1.0, 0.0, 0.0, 0.0);
        let e0 = Vector4::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(bilinear_form(&e3, &e3), 0.0);
        assert_eq!(bilinear_form(&o, &o), -1.0);
        assert_eq!(bilinear_form(&e0, &e3), -1.0);
        let g = metric();
        for i in 0..4 {
            let ei = Vector4::ith(i, 1.0);
            assert_eq!(bilinear_form(&ei, &ei), g[(i, i)]);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(pt([1., 0., 0., 0.]).classify(ABSOLUTE_TOL), PointClass::Interior);
        assert_eq!(pt([1., 0., 0., 1.]).classify(ABSOLUTE_TOL), PointClass::Absolute);
        assert_eq!(pt([1., 0., 0., 2.]).classify(ABSOLUTE_TOL), PointClass::Outer);
        assert!(ProjectivePoint::from_array([0.0; 4]).is_err());
    }

    #[test]
    fn polar_examples() {
        let h = polar(&pt([1., 0., 0., 0.]));
        assert_eq!(h.eval(&Vector4::new(0., 1., 0., 0.)), 0.0);
        let e3 = pt([1., 0., 0., 1.]);
        let t = polar(&e3);
        assert_eq!(t.eval(e3.coords()), 0.0);
        // tangent plane x⁰ − x³ = 0
        let c = t.covector();
        let expect = Vector4::new(1.0, 0.0, 0.0, -1.0);
        let r = c[0] / expect[0];
        assert!((c - expect * r).norm() < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let o = pt([1., 0., 0., 0.]);
        assert_eq!(distance(&o, &o).unwrap(), 0.0);
        let d = distance(&o, &pt([1., 0., 0., 0.5])).unwrap();
        assert!((d - 0.5f64.atanh()).abs() < 1e-15);
        assert!((d - (2.0 / 3f64.sqrt()).acosh()).abs() < 1e-14);
        let mut last = -1.0;
        for i in 0..100 {
            let t = i as f64 / 100.0;
            let d = distance(&o, &pt([1., 0., 0., t])).unwrap();
            assert!(d > last);
            last = d;
        }
        assert!(distance(&o, &pt([1., 0., 0., 1.])).is_err());
    }

    #[test]
    fn foot_examples() {
        let o = pt([1., 0., 0., 0.]);
        let a = pt([1., 0., 0., 1.]);
        let b = pt([1., 0., 0., -1.]);
        let f = foot_on_line(&o, &a, &b).unwrap();
        assert!(f.approx_eq(&o, 1e-15));
        let p = pt([1., 0.3, -0.2, 0.1]);
        let a = pt([1., 0., 1., 0.]);
        let f1 = foot_on_line(&p, &a, &b).unwrap();
        let f2 = foot_on_line(&f1, &a, &b).unwrap();
        assert!(f1.approx_eq(&f2, 1e-12));
        // q→p is orthogonal to the line at q
        let q = f1.hyperboloid().unwrap();
        let pv = p.hyperboloid().unwrap();
        let dir = a.coords() - b.coords();
        let tangent = dir + q * bilinear_form(&dir, &q);
        let normal = pv + q * bilinear_form(&pv, &q);
        assert!(bilinear_form(&tangent, &normal).abs() < 1e-12);
        assert!(foot_on_line(&p, &a, &a).is_err());
    }

    #[test]
    fn reflect_needs_spacelike() {
        let h = Hyperplane::new(Vector4::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!(reflect(&h, &pt([1., 0., 0., 0.])).is_err());
    }

    #[test]
    fn plane_through_points() {
        let p = Vector4::new(1.0, 0.0, 0.0, 0.5);
        let q = Vector4::new(1.0, 1.0, 0.0, 0.5);
        let r = Vector4::new(1.0, 0.0, 1.0, 0.5);
        let h = Hyperplane::through(&p, &q, &r).unwrap();
        for v in [p, q, r] {
            assert!(h.eval(&v).abs() < 1e-14);
        }
        assert!(h.is_spacelike());
    }

    fn interior() -> impl Strategy<Value = Vector4<f64>> {
        (-0.55f64..0.55, -0.55f64..0.55, -0.55f64..0.55, 0.2f64..5.0)
            .prop_map(|(x, y, z, l)| Vector4::new(l, l * x, l * y, l * z))
    }

    fn unit_plane() -> impl Strategy<Value = Hyperplane> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -0.5f64..0.5)
            .prop_filter("normal", |(a, b, c, _)| a * a + b * b + c * c > 0.3)
            .prop_map(|(a, b, c, d)| {
                Hyperplane::from_chart_plane(&Vector3::new(a, b, c), d).unwrap()
            })
    }

    proptest! {
        #[test]
        fn scale_invariance(x in interior(), y in interior(), l in 0.1f64..10.0, m in -10.0f64..-0.1) {
            let (p, q) = (ProjectivePoint::new(x).unwrap(), ProjectivePoint::new(y).unwrap());
            let (pl, qm) = (ProjectivePoint::new(x * l).unwrap(), ProjectivePoint::new(y * m).unwrap());
            prop_assert_eq!(p.classify(ABSOLUTE_TOL), pl.classify(ABSOLUTE_TOL));
            let d1 = distance(&p, &q).unwrap();
            let d2 = distance(&pl, &qm).unwrap();
            prop_assert!((d1 - d2).abs() <= 1e-12 * (1.0 + d1));
        }

        #[test]
        fn triangle_inequality(x in interior(), y in interior(), z in interior()) {
            let [p, q, r] = [x, y, z].map(|v| ProjectivePoint::new(v).unwrap());
            let d = |a: &ProjectivePoint, b: &ProjectivePoint| distance(a, b).unwrap();
            prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-12);
        }

        #[test]
        fn reflection_is_isometric_involution(h in unit_plane(), x in interior(), y in interior()) {
            let rx = reflect_vector(&h, &x).unwrap();
            let ry = reflect_vector(&h, &y).unwrap();
            let scale = x.norm() * y.norm();
            prop_assert!((bilinear_form(&rx, &ry) - bilinear_form(&x, &y)).abs() <= 1e-12 * scale);
            let back = reflect_vector(&h, &rx).unwrap();
            prop_assert!((back - x).norm() <= 1e-12 * x.norm());
            let m = reflection_matrix(&h).unwrap();
            prop_assert!((m * x - rx).norm() <= 1e-12 * x.norm());
        }

        #[test]
        fn form_is_symmetric_bilinear(x in interior(), y in interior(), z in interior(), a in -3.0f64..3.0) {
            prop_assert!((bilinear_form(&x, &y) - bilinear_form(&y, &x)).abs() < 1e-12);
            let lhs = bilinear_form(&(x * a + z), &y);
            let rhs = a * bilinear_form(&x, &y) + bilinear_form(&z, &y);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }
    }
}
