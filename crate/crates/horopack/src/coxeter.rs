//! Schläfli symbols, Coxeter–Schläfli matrices, characteristic orthoschemes
//! and the ideal cells of the four fully asymptotic tilings.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{bilinear_form, Hyperplane, PointClass, ProjectivePoint, ABSOLUTE_TOL};
use crate::polytope::{ConvexPolytope, Face};
use crate::volume;

/// Schläfli symbol (p, q, r) of a 3-dimensional honeycomb or orthoscheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchlafliSymbol(pub [u32; 3]);

impl SchlafliSymbol {
    pub const TETRAHEDRAL: Self = Self([3, 3, 6]);
    pub const OCTAHEDRAL: Self = Self([3, 4, 4]);
    pub const CUBIC: Self = Self([4, 3, 6]);
    pub const DODECAHEDRAL: Self = Self([5, 3, 6]);

    /// The four fully asymptotic tilings.
    pub const ASYMPTOTIC: [Self; 4] = [
        Self::TETRAHEDRAL,
        Self::OCTAHEDRAL,
        Self::CUBIC,
        Self::DODECAHEDRAL,
    ];

    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        if p < 2 || q < 2 || r < 2 {
            return Err(Error::InvalidInput(format!("weights must be >= 2: ({p},{q},{r})")));
        }
        Ok(Self([p, q, r]))
    }

    pub fn weights(&self) -> [u32; 3] {
        self.0
    }

    /// The orthoscheme whose multiples make up one cell, with the count.
    pub fn cell_orthoscheme(&self) -> Result<(SchlafliSymbol, u32)> {
        match self.0 {
            [3, 3, 6] => Ok((Self([3, 6, 3]), 6)),
            [3, 4, 4] => Ok((Self([4, 4, 4]), 16)),
            [4, 3, 6] => Ok((Self([4, 3, 6]), 48)),
            [5, 3, 6] => Ok((Self([5, 3, 6]), 120)),
            _ => Err(Error::NotFullyAsymptotic(*self)),
        }
    }
}

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r] = self.0;
        write!(f, "({p},{q},{r})")
    }
}

impl FromStr for SchlafliSymbol {
    type Err = Error;

    /// Accepts "4,3,6", "(4,3,6)" or "436".
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = if t.contains(',') {
            t.split(',').map(str::trim).collect()
        } else {
            t.char_indices().map(|(i, _)| &t[i..i + 1]).collect()
        };
        let bad = || Error::InvalidInput(format!("cannot parse Schläfli symbol `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let w: Vec<u32> = parts
            .iter()
            .map(|p| p.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Self::new(w[0], w[1], w[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TilingClass {
    ProperCentersAndVertices,
    FullyAsymptotic,
    InfiniteCenters,
    Unsupported,
}

/// Row of the classification table of 3-dimensional Coxeter tilings.
pub fn classify_tiling(s: SchlafliSymbol) -> TilingClass {
    use TilingClass::*;
    match s.0 {
        [3, 5, 3] | [4, 3, 5] | [5, 3, 4] | [5, 3, 5] => ProperCentersAndVertices,
        [3, 3, 6] | [3, 4, 4] | [4, 3, 6] | [5, 3, 6] => FullyAsymptotic,
        [3, 6, 3] | [4, 4, 4] | [6, 3, 6] | [4, 4, 3] | [6, 3, 3] | [6, 3, 4] | [6, 3, 5] => {
            InfiniteCenters
        }
        _ => Unsupported,
    }
}

/// Gram matrix b of the unit inward facet normals and its inverse a.
#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterMatrix {
    pub b: Matrix4<f64>,
    pub a: Matrix4<f64>,
    /// Eigenvalues of b, ascending.
    pub eigenvalues: [f64; 4],
    /// Ratio of largest to smallest eigenvalue magnitude.
    pub condition: f64,
}

impl CoxeterMatrix {
    /// Exactly one negative eigenvalue and none near zero.
    pub fn is_hyperbolic(&self) -> bool {
        let neg = self.eigenvalues.iter().filter(|&&l| l < -1e-12).count();
        let zero = self.eigenvalues.iter().filter(|&&l| l.abs() <= 1e-12).count();
        neg == 1 && zero == 0
    }

    /// Vertex A_i is ideal when a_ii vanishes.
    pub fn is_ideal_vertex(&self, i: usize) -> bool {
        self.a[(i, i)].abs() <= 1e-10
    }
}

pub fn coxeter_matrix(s: SchlafliSymbol) -> CoxeterMatrix {
    let mut b = Matrix4::identity();
    for (k, &n) in s.0.iter().enumerate() {
        let c = -(std::f64::consts::PI / n as f64).cos();
        b[(k, k + 1)] = c;
        b[(k + 1, k)] = c;
    }
    let eig = b.symmetric_eigen();
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let amax = ev.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let amin = ev.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    let a = b.try_inverse().unwrap_or_else(|| Matrix4::repeat(f64::NAN));
    CoxeterMatrix {
        b,
        a,
        eigenvalues: [ev[0], ev[1], ev[2], ev[3]],
        condition: amax / amin,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum VertexDistance {
    Finite(f64),
    Infinite,
}

impl VertexDistance {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(d) => Some(d),
            Self::Infinite => None,
        }
    }
}

/// Distance between orthoscheme vertices A_i and A_j from the inverse Gram
/// matrix. With b_ii = 1 a proper vertex has a_ii < 0.
pub fn vertex_distance(m: &CoxeterMatrix, i: usize, j: usize) -> VertexDistance {
    let (aii, ajj) = (m.a[(i, i)], m.a[(j, j)]);
    if aii >= -1e-10 || ajj >= -1e-10 {
        return VertexDistance::Infinite;
    }
    let ch = -m.a[(i, j)] / (aii * ajj).sqrt();
    VertexDistance::Finite(ch.max(1.0).acosh())
}

#[derive(Debug, Clone)]
pub struct Orthoscheme {
    pub schlafli: SchlafliSymbol,
    pub vertices: [ProjectivePoint; 4],
    /// Facet H^i is opposite A_i, with inward unit normal.
    pub facets: [Hyperplane; 4],
    pub matrix: CoxeterMatrix,
    pub volume: f64,
}

impl Orthoscheme {
    /// Gram matrix ⟨b^i, b^j⟩ of the constructed facet normals.
    pub fn facet_gram(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| bilinear_form(self.facets[i].normal(), self.facets[j].normal()))
    }
}

fn chart_point(x: f64, y: f64, z: f64) -> ProjectivePoint {
    ProjectivePoint::from_chart(&Vector3::new(x, y, z))
}

/// Characteristic orthoscheme of one of the four asymptotic cells.
pub fn build_orthoscheme(s: SchlafliSymbol) -> Result<Orthoscheme> {
    let h = 3f64.sqrt();
    let vertices = match s.0 {
        [3, 6, 3] => [
            chart_point(0.0, 1.0, 0.0),
            chart_point(h / 4.0, 0.25, 0.0),
            chart_point(0.0, 0.0, 0.0),
            chart_point(0.0, 0.0, 1.0),
        ],
        [4, 4, 4] => [
            chart_point(0.0, 1.0, 0.0),
            chart_point(0.5, 0.5, 0.0),
            chart_point(0.0, 0.0, 0.0),
            chart_point(0.0, 0.0, 1.0),
        ],
        [4, 3, 6] | [5, 3, 6] => {
            let cell = build_cell(s)?;
            let poly = cell.polytope();
            let v = 3;
            let w = cell.neighbors(v)[0];
            let face = poly
                .faces
                .iter()
                .find(|f| f.contains_vertex(v) && f.contains_vertex(w))
                .ok_or_else(|| Error::InvalidInput("edge without face".into()))?;
            let mid = (poly.points[v] + poly.points[w]) / 2.0;
            let fc = face.vertices.iter().map(|&i| poly.points[i]).sum::<Vector3<f64>>()
                / face.vertices.len() as f64;
            [
                cell.vertices[v],
                ProjectivePoint::from_chart(&mid),
                ProjectivePoint::from_chart(&fc),
                chart_point(0.0, 0.0, 0.0),
            ]
        }
        _ => return Err(Error::UnsupportedSymbol(s)),
    };
    let c = vertices.map(|p| *p.coords());
    let inside: Vector4<f64> = c.iter().sum::<Vector4<f64>>() / 4.0;
    let mut facets = Vec::with_capacity(4);
    for i in 0..4 {
        let o: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let plane = Hyperplane::through(&c[o[0]], &c[o[1]], &c[o[2]])?.oriented_towards(&inside);
        facets.push(plane);
    }
    let facets = [facets[0], facets[1], facets[2], facets[3]];
    let matrix = coxeter_matrix(s);
    let volume = volume::orthoscheme_volume(s)?.value;
    Ok(Orthoscheme {
        schlafli: s,
        vertices,
        facets,
        matrix,
        volume,
    })
}

/// An ideal regular cell of a fully asymptotic tiling.
#[derive(Debug, Clone)]
pub struct Cell {
    pub schlafli: SchlafliSymbol,
    pub vertices: Vec<ProjectivePoint>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
    pub orthoschemes_per_cell: u32,
    pub volume: f64,
    neighbors: Vec<Vec<usize>>,
    polytope: ConvexPolytope,
}

impl Cell {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Edge neighbours of vertex v in cyclic order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn polytope(&self) -> &ConvexPolytope {
        &self.polytope
    }

    /// Faces not containing vertex v.
    pub fn nonadjacent_faces(&self, v: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| !f.contains_vertex(v))
    }

    /// Point equidistant from all face planes.
    pub fn center(&self) -> ProjectivePoint {
        let n0 = self.faces[0].plane.covector();
        let mut rows: Vec<Vector4<f64>> = self.faces[1..]
            .iter()
            .map(|f| f.plane.covector() - n0)
            .collect();
        // pad so the decomposition returns a full right basis
        while rows.len() < 4 {
            rows.push(Vector4::zeros());
        }
        let m = nalgebra::DMatrix::from_fn(rows.len(), 4, |r, c| rows[r][c]);
        let svd = m.svd(false, true);
        let vt = svd.v_t.expect("requested v_t");
        let k = (0..svd.singular_values.len())
            .min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]))
            .unwrap_or(0);
        let null = Vector4::from_fn(|i, _| vt[(k, i)]);
        ProjectivePoint::new(null).expect("nonzero null vector")
    }

    /// ⟨E_i, E_j⟩ with both vertices in the x⁰ = 1 chart.
    pub fn vertex_product(&self, i: usize, j: usize) -> f64 {
        bilinear_form(self.vertices[i].coords(), self.vertices[j].coords())
    }
}

fn tetrahedron() -> Vec<Vector3<f64>> {
    let h = 3f64.sqrt() / 2.0;
    vec![
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(h, -0.5, 0.0),
        Vector3::new(-h, -0.5, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ]
}

fn octahedron() -> Vec<Vector3<f64>> {
    vec![
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(0.0, -1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
        Vector3::new(-1.0, 0.0, 0.0),
        Vector3::new(0.0, 0.0, -1.0),
    ]
}

/// E0..E4 as printed, completed by central inversion.
fn cube() -> Vec<Vector3<f64>> {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let e0 = Vector3::new(-r2 / r3, r2 / 3.0, 1.0 / 3.0);
    let e1 = Vector3::new(-r2 / r3, -r2 / 3.0, -1.0 / 3.0);
    let e2 = Vector3::new(0.0, 2.0 * r2 / 3.0, -1.0 / 3.0);
    let e3 = Vector3::new(0.0, 0.0, 1.0);
    let e4 = Vector3::new(r2 / r3, -r2 / 3.0, -1.0 / 3.0);
    vec![e0, e1, e2, e3, e4, -e1, -e2, -e3]
}

/// Cube sublattice first (indices 0..8 as in `cube`), then the 12 others.
fn dodecahedron() -> Vec<Vector3<f64>> {
    let cube = cube();
    let r3 = 3f64.sqrt();
    // orthogonal map sending the standard cube (±1,±1,±1)/√3 onto `cube`
    let src = Matrix3::from_columns(&[
        Vector3::new(1.0, 1.0, 1.0) / r3,
        Vector3::new(-1.0, 1.0, 1.0) / r3,
        Vector3::new(1.0, -1.0, 1.0) / r3,
    ]);
    let dst = Matrix3::from_columns(&[cube[3], cube[0], cube[5]]);
    let rot = dst * src.try_inverse().expect("independent cube vertices");
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let ip = 1.0 / phi;
    let mut out = cube;
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            for v in [
                Vector3::new(0.0, a * ip, b * phi),
                Vector3::new(a * ip, b * phi, 0.0),
                Vector3::new(a * phi, 0.0, b * ip),
            ] {
                out.push(rot * v / r3);
            }
        }
    }
    out
}

/// The ideal cell of a fully asymptotic tiling.
pub fn build_cell(s: SchlafliSymbol) -> Result<Cell> {
    let pts = match s.0 {
        [3, 3, 6] => tetrahedron(),
        [3, 4, 4] => octahedron(),
        [4, 3, 6] => cube(),
        [5, 3, 6] => dodecahedron(),
        _ => return Err(Error::UnsupportedSymbol(s)),
    };
    let (_, count) = s.cell_orthoscheme()?;
    let polytope = ConvexPolytope::from_points(&pts)?;
    let vertices: Vec<ProjectivePoint> = pts.iter().map(ProjectivePoint::from_chart).collect();
    for v in &vertices {
        if v.classify(ABSOLUTE_TOL) != PointClass::Absolute {
            return Err(Error::InvalidInput("cell vertex off the absolute".into()));
        }
    }
    let neighbors = (0..pts.len()).map(|v| polytope.neighbors(v)).collect();
    Ok(Cell {
        schlafli: s,
        edges: polytope.edges.clone(),
        faces: polytope.faces.clone(),
        orthoschemes_per_cell: count,
        volume: volume::cell_volume_of(s)?.value,
        vertices,
        neighbors,
        polytope,
    })
}
