#![allow(dead_code)]

use horopack::coxeter::Cell;
use horopack::horoball::Horoball;
use horopack::lorentz::{bilinear_form, reflection_matrix, Hyperplane};
use horopack::packing::PackingConfiguration;
use nalgebra::{Matrix4, Vector3, Vector4};

/// Gauss-Legendre nodes and weights on [0, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

/// Volume of h inside the cone at vertex v spanned by its edges, by
/// integrating the Klein density over rays from the ideal center.
///
/// Along x = e + t(y − e) with β = −⟨Y,v⟩, 1 − |x|² = t(A − Bt) and the
/// ball is tβ ≤ √(t(A − Bt)), so it ends at T = A/(β² + B). The radial
/// integral ∫₀ᵀ dt/(A − Bt)² is then 1/(Aβ²).
pub fn sector_by_quadrature(h: &Horoball, cell: &Cell, v: usize, n: usize) -> f64 {
    let e = cell.vertices[v].chart().unwrap();
    let null = h.null_vector();
    let nb = cell.neighbors(v);
    let pts: Vec<Vector3<f64>> = nb.iter().map(|&w| cell.vertices[w].chart().unwrap()).collect();
    let gl = gauss_legendre(n);
    let mut total = 0.0;
    for k in 1..pts.len() - 1 {
        let (a, b, c) = (pts[0], pts[k], pts[k + 1]);
        let jac = (a - e).dot(&(b - a).cross(&(c - a))).abs();
        for &(xi, wx) in &gl {
            for &(eta, we) in &gl {
                let (u, w) = (xi, (1.0 - xi) * eta);
                let y = a + u * (b - a) + w * (c - a);
                let yy = Vector4::new(1.0, y[0], y[1], y[2]);
                let beta = -bilinear_form(&yy, null);
                let aa = 2.0 * (1.0 - e.dot(&y));
                total += wx * we * (1.0 - xi) * jac / (aa * beta * beta);
            }
        }
    }
    total
}

/// Mirrors through the cell center swapping two vertices that map the
/// vertex set onto itself, with the induced permutation.
pub fn cell_mirrors(cell: &Cell) -> Vec<(Matrix4<f64>, Vec<usize>)> {
    let o = cell.center();
    let norm: Vec<Vector4<f64>> = cell
        .vertices
        .iter()
        .map(|p| p.coords() / -bilinear_form(p.coords(), o.coords()))
        .collect();
    let mut out = Vec::new();
    for i in 0..cell.n() {
        for j in i + 1..cell.n() {
            let Ok(h) = Hyperplane::new(norm[i] - norm[j]) else {
                continue;
            };
            let r = reflection_matrix(&h).unwrap();
            let perm: Option<Vec<usize>> = cell
                .vertices
                .iter()
                .map(|p| {
                    let q = r * p.coords();
                    let q = q / q[0];
                    cell.vertices.iter().position(|w| (w.coords() - q).norm() < 1e-9)
                })
                .collect();
            if let Some(p) = perm {
                out.push((r, p));
            }
        }
    }
    out
}

/// Image of a configuration under a cell symmetry, built from the
/// reflected null vectors rather than from the assignment.
pub fn reflect_configuration(c: &PackingConfiguration, r: &Matrix4<f64>, perm: &[usize]) -> PackingConfiguration {
    let balls = c.horoballs().unwrap();
    let mut scales = vec![0.0; balls.len()];
    for (i, b) in balls.iter().enumerate() {
        let v = r * b.null_vector();
        let img = Horoball::from_null_vector(&v).unwrap();
        scales[perm[i]] = img.scale();
    }
    PackingConfiguration::from_scales(c.tiling, c.label.clone(), &scales).unwrap()
}
