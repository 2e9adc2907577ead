//! Horoballs at ideal points, their intersections with cell edges and the
//! volumes of their sectors.
//!
//! A horoball at the ideal point e (e⁰ = 1) is stored as the null vector
//! v = e/c. Its points x (⟨x,x⟩ = −1) satisfy −⟨x,v⟩ ≤ 1. The type
//! parameter s of the canonical chart and the scale c are related by
//! c = √((1−s)/(1+s)).

use nalgebra::{Matrix3, Matrix4, Rotation3, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::coxeter::Cell;
use crate::error::{Error, Result};
use crate::lorentz::{bilinear_form, metric, Curvature, PointClass, ProjectivePoint, ABSOLUTE_TOL};

/// Residual tolerance for "on the horosphere".
pub const SURFACE_TOL: f64 = 1e-9;
/// Relative tolerance on −⟨v,w⟩/2 − 1 for declaring two balls tangent.
pub const TANGENCY_TOL: f64 = 1e-10;

/// Scale c of the type parameter s.
pub fn type_scale(s: f64) -> f64 {
    ((1.0 - s) / (1.0 + s)).sqrt()
}

/// Type parameter s of the scale c.
pub fn type_param(c: f64) -> f64 {
    let c2 = c * c;
    (1.0 - c2) / (1.0 + c2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Horoball {
    center: ProjectivePoint,
    s: f64,
    null: Vector4<f64>,
}

/// Horoball at an ideal `center` with type parameter `s`.
pub fn horoball_at(center: &ProjectivePoint, s: f64) -> Result<Horoball> {
    Horoball::new(center, s)
}

impl Horoball {
    pub fn new(center: &ProjectivePoint, s: f64) -> Result<Self> {
        if center.classify(ABSOLUTE_TOL) != PointClass::Absolute {
            return Err(Error::InvalidInput("horoball center must be ideal".into()));
        }
        if !(s < 1.0 && s > -1.0) {
            return Err(Error::InvalidInput(format!("type parameter s = {s} outside (−1, 1)")));
        }
        let e = center.coords();
        if e[0] == 0.0 {
            return Err(Error::InvalidInput("center at infinity of the chart".into()));
        }
        Ok(Self {
            center: *center,
            s,
            null: e / type_scale(s),
        })
    }

    /// Horoball {−⟨x,v⟩ ≤ 1} of a future null vector v.
    pub fn from_null_vector(v: &Vector4<f64>) -> Result<Self> {
        if !(v[0] > 0.0) {
            return Err(Error::InvalidInput("null vector must be future pointing".into()));
        }
        let center = ProjectivePoint::new(*v)?;
        let c = center.coords()[0] / v[0];
        Self::new(&center, type_param(c))
    }

    pub fn center(&self) -> &ProjectivePoint {
        &self.center
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// c = e⁰/v⁰; larger c means a larger ball.
    pub fn scale(&self) -> f64 {
        type_scale(self.s)
    }

    pub fn null_vector(&self) -> &Vector4<f64> {
        &self.null
    }

    /// Ball whose horosphere moved by hyperbolic distance x toward the
    /// center (x < 0 enlarges).
    pub fn pushed(&self, x: f64) -> Result<Self> {
        Self::from_null_vector(&(self.null * x.exp()))
    }

    /// Quadratic form F with F(x) = 0 on the horosphere and F > 0 inside.
    pub fn form(&self) -> Matrix4<f64> {
        let j = metric();
        let je = j * self.center.coords();
        -(je * je.transpose()) * (1.0 + self.s) - j * (1.0 - self.s)
    }

    pub fn eval_form(&self, x: &Vector4<f64>) -> f64 {
        (x.transpose() * self.form() * x)[0]
    }

    /// Form value at x normalized to the chart, divided by |x|².
    pub fn residual(&self, x: &ProjectivePoint) -> f64 {
        let c = x.coords();
        self.eval_form(c) / c.norm_squared()
    }

    /// Hyperboloid-normalized interior point x lies in the closed ball.
    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        self.residual(x) >= -SURFACE_TOL
    }

    /// Rotation about the chart origin taking (0,0,1) to the center.
    fn frame(&self) -> Matrix3<f64> {
        let e = self.center.chart().expect("affine center");
        let z = Vector3::z();
        match Rotation3::rotation_between(&z, &e) {
            Some(r) => *r.matrix(),
            None => Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)),
        }
    }
}

/// Ellipsoid (p − center)ᵀ shape (p − center) = 1 in the Klein chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsoidForm {
    pub center: Vector3<f64>,
    pub shape: Matrix3<f64>,
}

impl EllipsoidForm {
    pub fn eval(&self, p: &Vector3<f64>) -> f64 {
        let d = p - self.center;
        (d.transpose() * self.shape * d)[0] - 1.0
    }
}

/// Affine form of the horosphere in the chart x⁰ = 1.
pub fn cartesian_form(h: &Horoball) -> Result<EllipsoidForm> {
    let g = -h.form();
    let g3 = g.fixed_view::<3, 3>(1, 1).into_owned();
    let g0 = g.fixed_view::<3, 1>(1, 0).into_owned();
    let inv = g3
        .try_inverse()
        .ok_or_else(|| Error::Domain("degenerate horosphere".into()))?;
    let center = -inv * g0;
    let kappa = -(g[(0, 0)] - (g0.transpose() * inv * g0)[0]);
    if !(kappa > 0.0) {
        return Err(Error::Domain("degenerate horosphere".into()));
    }
    Ok(EllipsoidForm {
        center,
        shape: g3 / kappa,
    })
}

/// Point of the horosphere in polar coordinates about its axis.
pub fn polar_point(h: &Horoball, theta: f64, phi: f64) -> ProjectivePoint {
    let s = h.s;
    let r = ((1.0 - s) / 2.0).sqrt() * theta.sin();
    let local = Vector3::new(
        r * phi.cos(),
        r * phi.sin(),
        (1.0 + s) / 2.0 + (1.0 - s) / 2.0 * theta.cos(),
    );
    ProjectivePoint::from_chart(&(h.frame() * local))
}

/// Intersection of the segment ab with the horosphere nearest the center.
pub fn edge_intersection(
    h: &Horoball,
    a: &ProjectivePoint,
    b: &ProjectivePoint,
) -> Result<Option<ProjectivePoint>> {
    let (pa, pb) = match (a.chart(), b.chart()) {
        (Some(pa), Some(pb)) => (pa, pb),
        _ => return Err(Error::InvalidInput("segment endpoints must be affine".into())),
    };
    if (pa - pb).norm() == 0.0 {
        return Err(Error::InvalidInput("degenerate segment".into()));
    }
    let (xa, xb) = (Vector4::new(1.0, pa[0], pa[1], pa[2]), Vector4::new(1.0, pb[0], pb[1], pb[2]));
    let f = h.form();
    let d = xb - xa;
    // F(xa + t d) = qa t² + qb t + qc
    let qa = (d.transpose() * f * d)[0];
    let qb = 2.0 * (xa.transpose() * f * d)[0];
    let qc = (xa.transpose() * f * xa)[0];
    let scale = qa.abs().max(qb.abs()).max(qc.abs());
    let mut roots = Vec::with_capacity(2);
    if qa.abs() <= 1e-14 * scale {
        if qb.abs() > 0.0 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < -1e-12 * scale * scale {
            return Ok(None);
        }
        let sq = disc.max(0.0).sqrt();
        // stable pair of roots
        let q = -0.5 * (qb + qb.signum() * sq);
        if q != 0.0 {
            roots.push(q / qa);
            roots.push(qc / q);
        } else {
            roots.push(0.0);
        }
    }
    let e = h.center.chart().expect("affine center");
    let mut best: Option<(f64, Vector3<f64>)> = None;
    for t in roots {
        if !(-1e-12..=1.0 + 1e-12).contains(&t) {
            continue;
        }
        let p = pa + (pb - pa) * t.clamp(0.0, 1.0);
        let dist = (p - e).norm();
        if dist <= 1e-9 {
            continue;
        }
        if best.map_or(true, |(bd, _)| dist < bd) {
            best = Some((dist, p));
        }
    }
    Ok(best.map(|(_, p)| ProjectivePoint::from_chart(&p)))
}

/// Intrinsic distance 2 sinh(d/2) of two points on the horosphere.
pub fn horospheric_chord_length(h: &Horoball, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    for x in [p, q] {
        if h.residual(x).abs() > SURFACE_TOL {
            return Err(Error::InvalidInput("point is not on the horosphere".into()));
        }
    }
    let (u, v) = (p.hyperboloid()?, q.hyperboloid()?);
    let d = u - v;
    Ok(bilinear_form(&d, &d).max(0.0).sqrt())
}

/// Arc length l(x) = k sinh(x/k) of a horocycle over a chord of length x.
pub fn bolyai_arc_length(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain("arc length needs x >= 0".into()));
    }
    let k = Curvature::UNIT.k();
    Ok(k * (x / k).sinh())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorosphericTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HorosphericTriangle {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let mut s = [a, b, c];
        if s.iter().any(|x| !(x >= &0.0) || !x.is_finite()) {
            return Err(Error::InvalidInput("side lengths must be finite and >= 0".into()));
        }
        s.sort_by(|x, y| y.total_cmp(x));
        if s[0] > (s[1] + s[2]) * (1.0 + 1e-12) + 1e-15 {
            return Err(Error::InvalidInput(format!("({a}, {b}, {c}) violates the triangle inequality")));
        }
        Ok(Self { a, b, c })
    }
}

/// Heron's formula, in the cancellation-free ordering.
pub fn heron_area(t: &HorosphericTriangle) -> f64 {
    let mut s = [t.a, t.b, t.c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * p.max(0.0).sqrt()
}

/// Volume between a horospherical domain of the given area and its center.
pub fn sector_volume(area: f64) -> f64 {
    Curvature::UNIT.k() * area / 2.0
}

/// Largest scale c a ball at `vertex` may have without crossing a
/// non-adjacent face, with the face attaining it.
pub fn face_limit(cell: &Cell, vertex: usize) -> (f64, usize) {
    let e = cell.vertices[vertex].coords();
    cell.nonadjacent_faces(vertex)
        .map(|(i, f)| (f.plane.eval(e).abs(), i))
        .fold((f64::INFINITY, usize::MAX), |m, x| if x.0 < m.0 { x } else { m })
}

/// Face crossed by h, if any (tangency allowed).
pub fn crossed_face(h: &Horoball, cell: &Cell, vertex: usize) -> Option<usize> {
    cell.nonadjacent_faces(vertex)
        .find(|(_, f)| f.plane.eval(h.null_vector()).abs() < 1.0 - 1e-9)
        .map(|(i, _)| i)
}

/// Volume of h ∩ cell for h centered at `vertex`.
pub fn vertex_sector_volume(h: &Horoball, cell: &Cell, vertex: usize) -> Result<f64> {
    let e = &cell.vertices[vertex];
    if !h.center.approx_eq(e, 1e-9) {
        return Err(Error::InvalidInput(format!("horoball is not centered at vertex {vertex}")));
    }
    if let Some(face) = crossed_face(h, cell, vertex) {
        return Err(Error::FaceOverflow { vertex, face });
    }
    let pts: Vec<ProjectivePoint> = cell
        .neighbors(vertex)
        .iter()
        .map(|&w| {
            edge_intersection(h, e, &cell.vertices[w])?
                .ok_or_else(|| Error::Domain("edge misses the horosphere".into()))
        })
        .collect::<Result<_>>()?;
    let mut area = 0.0;
    for k in 1..pts.len() - 1 {
        let t = HorosphericTriangle::new(
            horospheric_chord_length(h, &pts[0], &pts[k])?,
            horospheric_chord_length(h, &pts[k], &pts[k + 1])?,
            horospheric_chord_length(h, &pts[0], &pts[k + 1])?,
        )?;
        area += heron_area(&t);
    }
    Ok(sector_volume(area))
}

/// Signed gap ln(−⟨v,w⟩/2) between two horoballs: the hyperbolic distance
/// between them when positive, overlap depth when negative.
pub fn horoball_gap(a: &Horoball, b: &Horoball) -> f64 {
    (-bilinear_form(a.null_vector(), b.null_vector()) / 2.0).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contact {
    Disjoint { gap: f64 },
    Tangent { point: ProjectivePoint },
    Overlapping { depth: f64 },
}

pub fn contact(a: &Horoball, b: &Horoball) -> Contact {
    let g = horoball_gap(a, b);
    if g.abs() <= TANGENCY_TOL {
        let p = (a.null_vector() + b.null_vector()) / 2.0;
        Contact::Tangent {
            point: ProjectivePoint::new(p).expect("nonzero"),
        }
    } else if g > 0.0 {
        Contact::Disjoint { gap: g }
    } else {
        Contact::Overlapping { depth: -g }
    }
}

/// The horoball at `center` tangent to `h`.
pub fn tangent_ball(h: &Horoball, center: &ProjectivePoint) -> Result<Horoball> {
    let e = center.coords();
    let m = -bilinear_form(h.null_vector(), e);
    if !(m > 0.0) {
        return Err(Error::InvalidInput("centers coincide".into()));
    }
    Horoball::from_null_vector(&(e * (2.0 / m)))
}
