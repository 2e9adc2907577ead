//! Convex polytopes in the Klein chart: facets, edges and membership.

use nalgebra::{Vector3, Vector4};

use crate::error::{Error, Result};
use crate::lorentz::Hyperplane;

const SIDE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Face {
    /// Vertex indices in cyclic order.
    pub vertices: Vec<usize>,
    /// Outward chart normal, unit length: n·p ≤ offset inside.
    pub normal: Vector3<f64>,
    pub offset: f64,
    /// Same plane as a Lorentz hyperplane, positive on the interior.
    pub plane: Hyperplane,
}

impl Face {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Debug, Clone)]
pub struct ConvexPolytope {
    pub points: Vec<Vector3<f64>>,
    pub faces: Vec<Face>,
    pub edges: Vec<(usize, usize)>,
}

impl ConvexPolytope {
    /// Convex hull of a point set whose points are all extreme.
    ///
    /// Brute force over triples; intended for the handful of points of a
    /// cell, not for large inputs.
    pub fn from_points(points: &[Vector3<f64>]) -> Result<Self> {
        let n = points.len();
        if n < 4 {
            return Err(Error::InvalidInput("need at least four points".into()));
        }
        let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
        let tol = SIDE_TOL * scale;
        let mut faces: Vec<Face> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let nrm = (points[j] - points[i]).cross(&(points[k] - points[i]));
                    if nrm.norm() <= 1e-12 * scale * scale {
                        continue;
                    }
                    let mut nrm = nrm.normalize();
                    let mut off = nrm.dot(&points[i]);
                    let side: Vec<f64> = points.iter().map(|p| nrm.dot(p) - off).collect();
                    let above = side.iter().any(|&d| d > tol);
                    let below = side.iter().any(|&d| d < -tol);
                    if above && below {
                        continue;
                    }
                    if !above && !below {
                        return Err(Error::InvalidInput("points are coplanar".into()));
                    }
                    if above {
                        nrm = -nrm;
                        off = -off;
                    }
                    let mut on: Vec<usize> = (0..n).filter(|&m| side[m].abs() <= tol).collect();
                    on.sort_unstable();
                    if faces.iter().any(|f| {
                        let mut v = f.vertices.clone();
                        v.sort_unstable();
                        v == on
                    }) {
                        continue;
                    }
                    let ordered = cyclic_order(points, &on, &nrm);
                    let plane = Hyperplane::new(Vector4::new(-off, -nrm[0], -nrm[1], -nrm[2]))?;
                    faces.push(Face {
                        vertices: ordered,
                        normal: nrm,
                        offset: off,
                        plane,
                    });
                }
            }
        }
        if faces.len() < 4 {
            return Err(Error::InvalidInput("degenerate hull".into()));
        }
        let mut edges = Vec::new();
        for f in &faces {
            let m = f.vertices.len();
            for t in 0..m {
                let (a, b) = (f.vertices[t], f.vertices[(t + 1) % m]);
                let e = (a.min(b), a.max(b));
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        edges.sort_unstable();
        Ok(Self {
            points: points.to_vec(),
            faces,
            edges,
        })
    }

    pub fn contains(&self, p: &Vector3<f64>) -> bool {
        self.faces.iter().all(|f| f.normal.dot(p) <= f.offset)
    }

    pub fn bounding_box(&self) -> (Vector3<f64>, Vector3<f64>) {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for p in &self.points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (lo, hi)
    }

    /// Neighbours of vertex `v` in cyclic order around it.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        // each face at v contributes the pair (prev, next) around v
        let mut links: Vec<(usize, usize)> = self
            .faces
            .iter()
            .filter_map(|f| {
                let m = f.vertices.len();
                let pos = f.vertices.iter().position(|&u| u == v)?;
                Some((f.vertices[(pos + m - 1) % m], f.vertices[(pos + 1) % m]))
            })
            .collect();
        let mut out = Vec::with_capacity(links.len());
        let Some((first, mut cur)) = links.pop() else {
            return out;
        };
        out.push(first);
        while cur != first {
            out.push(cur);
            let Some(idx) = links.iter().position(|&(a, _)| a == cur) else {
                break;
            };
            cur = links.swap_remove(idx).1;
        }
        out
    }
}

fn cyclic_order(points: &[Vector3<f64>], idx: &[usize], normal: &Vector3<f64>) -> Vec<usize> {
    let c = idx.iter().map(|&i| points[i]).sum::<Vector3<f64>>() / idx.len() as f64;
    let u = (points[idx[0]] - c).normalize();
    let w = normal.cross(&u);
    let mut keyed: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = points[i] - c;
            (d.dot(&w).atan2(d.dot(&u)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}
