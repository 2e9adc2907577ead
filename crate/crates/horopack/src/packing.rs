//! Horoball configurations in the asymptotic cells, their densities, the
//! cosh law for sliding tangencies and one-parameter families.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coxeter::{build_cell, Cell, SchlafliSymbol};
use crate::error::{Error, Result};
use crate::horoball::{
    contact, crossed_face, face_limit, horoball_gap, type_param, type_scale, vertex_sector_volume,
    Contact, Horoball, TANGENCY_TOL,
};
use crate::lorentz::{bilinear_form, ProjectivePoint};

/// Densities closer than this are joint optima.
pub const TIE_TOL: f64 = 1e-6;

/// Cached cell of an asymptotic tiling.
pub fn cell(tiling: SchlafliSymbol) -> Result<&'static Cell> {
    static CELLS: OnceLock<Vec<Cell>> = OnceLock::new();
    let cells = CELLS.get_or_init(|| {
        SchlafliSymbol::ASYMPTOTIC
            .iter()
            .map(|&s| build_cell(s).expect("asymptotic cells build"))
            .collect()
    });
    SchlafliSymbol::ASYMPTOTIC
        .iter()
        .position(|&s| s == tiling)
        .map(|i| &cells[i])
        .ok_or(Error::NotFullyAsymptotic(tiling))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tangency {
    pub pair: (usize, usize),
    pub contact: ProjectivePoint,
}

/// One horoball per ideal vertex, given by canonical type parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingConfiguration {
    pub tiling: SchlafliSymbol,
    pub label: String,
    pub assignment: Vec<f64>,
    pub tangencies: Vec<Tangency>,
}

impl PackingConfiguration {
    pub fn new(tiling: SchlafliSymbol, label: impl Into<String>, assignment: Vec<f64>) -> Result<Self> {
        let cell = cell(tiling)?;
        if assignment.len() != cell.n() {
            return Err(Error::InvalidInput(format!(
                "{tiling} needs {} type parameters, got {}",
                cell.n(),
                assignment.len()
            )));
        }
        let mut c = Self {
            tiling,
            label: label.into(),
            assignment,
            tangencies: Vec::new(),
        };
        let balls = c.horoballs()?;
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if let Contact::Tangent { point } = contact(&balls[i], &balls[j]) {
                    c.tangencies.push(Tangency {
                        pair: (i, j),
                        contact: point,
                    });
                }
            }
        }
        Ok(c)
    }

    pub fn from_scales(tiling: SchlafliSymbol, label: impl Into<String>, scales: &[f64]) -> Result<Self> {
        Self::new(tiling, label, scales.iter().map(|&c| type_param(c)).collect())
    }

    pub fn cell(&self) -> &'static Cell {
        cell(self.tiling).expect("checked on construction")
    }

    pub fn horoballs(&self) -> Result<Vec<Horoball>> {
        let cell = cell(self.tiling)?;
        cell.vertices
            .iter()
            .zip(&self.assignment)
            .map(|(v, &s)| Horoball::new(v, s))
            .collect()
    }

    pub fn scales(&self) -> Vec<f64> {
        self.assignment.iter().map(|&s| type_scale(s)).collect()
    }

    /// Number of distinct horoball types.
    pub fn type_count(&self) -> usize {
        let mut v = self.assignment.clone();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        v.len()
    }

    /// Configuration with assignment permuted: new[perm[i]] = old[i].
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut s = vec![0.0; self.assignment.len()];
        for (i, &p) in perm.iter().enumerate() {
            s[p] = self.assignment[i];
        }
        Self::new(self.tiling, self.label.clone(), s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    /// Balls on a common edge overlap.
    Pair { pair: (usize, usize), depth: f64 },
    /// Ball crosses a face not containing its center.
    Face { vertex: usize, face: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Validity {
    Valid,
    Invalid(Violation),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Edge pairs may touch but not overlap; no ball crosses a non-adjacent face.
pub fn validate_packing(c: &PackingConfiguration) -> Validity {
    let cell = c.cell();
    let balls = c.horoballs().expect("checked on construction");
    for &(i, j) in &cell.edges {
        let g = horoball_gap(&balls[i], &balls[j]);
        if g < -TANGENCY_TOL {
            return Validity::Invalid(Violation::Pair { pair: (i, j), depth: -g });
        }
    }
    for (v, h) in balls.iter().enumerate() {
        if let Some(face) = crossed_face(h, cell, v) {
            return Validity::Invalid(Violation::Face { vertex: v, face });
        }
    }
    Validity::Valid
}

/// Overlapping pairs that do not share an edge, with overlap depth.
pub fn non_edge_overlaps(c: &PackingConfiguration) -> Result<Vec<((usize, usize), f64)>> {
    let cell = c.cell();
    let balls = c.horoballs()?;
    let mut out = Vec::new();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let g = horoball_gap(&balls[i], &balls[j]);
            if !cell.is_edge(i, j) && g < -TANGENCY_TOL {
                out.push(((i, j), -g));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub density: f64,
    pub sector_volumes: Vec<f64>,
    pub cell_volume: f64,
    pub config: PackingConfiguration,
    /// Overlapping balls not joined by an edge; empty for strict packings.
    pub non_edge_overlaps: Vec<(usize, usize)>,
}

/// Total sector volume in the cell over the cell volume.
pub fn density(c: &PackingConfiguration) -> Result<DensityReport> {
    if let Validity::Invalid(v) = validate_packing(c) {
        return Err(Error::InvalidPacking(format!("{}: {v:?}", c.label)));
    }
    let cell = c.cell();
    let balls = c.horoballs()?;
    let sector_volumes: Vec<f64> = balls
        .iter()
        .enumerate()
        .map(|(v, h)| vertex_sector_volume(h, cell, v))
        .collect::<Result<_>>()?;
    let total: f64 = sector_volumes.iter().sum();
    Ok(DensityReport {
        density: total / cell.volume,
        sector_volumes,
        cell_volume: cell.volume,
        config: c.clone(),
        non_edge_overlaps: non_edge_overlaps(c)?.into_iter().map(|(p, _)| p).collect(),
    })
}

/// A tangent pair slid along its common line, balanced at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlidingPair {
    pub pair: (usize, usize),
    /// Balls at the balanced contact point I(0).
    pub balanced: (Horoball, Horoball),
    /// V(0) = sum of both sectors at the balanced point.
    pub v0: f64,
    /// Admissible x range; x > 0 grows the first ball.
    pub interval: (f64, f64),
}

impl SlidingPair {
    pub fn new(c: &PackingConfiguration, pair: (usize, usize)) -> Result<Self> {
        let (i, j) = pair;
        let cell = c.cell();
        let balls = c.horoballs()?;
        if i == j || i >= balls.len() || j >= balls.len() {
            return Err(Error::InvalidInput(format!("bad vertex pair {pair:?}")));
        }
        if horoball_gap(&balls[i], &balls[j]).abs() > TANGENCY_TOL {
            return Err(Error::InvalidInput(format!("balls {i} and {j} are not tangent")));
        }
        let si = vertex_sector_volume(&balls[i], cell, i)?;
        let sj = vertex_sector_volume(&balls[j], cell, j)?;
        // sectors scale as |v|⁻²; λ⁴ = Si/Sj equalizes them
        let lam = (si / sj).powf(0.25);
        let bi = Horoball::from_null_vector(&(balls[i].null_vector() * lam))?;
        let bj = Horoball::from_null_vector(&(balls[j].null_vector() / lam))?;
        let v0 = vertex_sector_volume(&bi, cell, i)? + vertex_sector_volume(&bj, cell, j)?;
        let hi = (face_limit(cell, i).0 / bi.scale()).ln();
        let lo = -(face_limit(cell, j).0 / bj.scale()).ln();
        Ok(Self {
            pair,
            balanced: (bi, bj),
            v0,
            interval: (lo, hi),
        })
    }

    /// The two balls with the contact point slid by x toward the second.
    pub fn balls_at(&self, x: f64) -> Result<(Horoball, Horoball)> {
        let (lo, hi) = self.interval;
        let slack = 1e-12;
        if !(x >= lo - slack && x <= hi + slack) {
            return Err(Error::OutsideInterval { x, lo, hi });
        }
        Ok((self.balanced.0.pushed(-x)?, self.balanced.1.pushed(x)?))
    }

    pub fn value(&self, c: &PackingConfiguration, x: f64) -> Result<f64> {
        let cell = c.cell();
        let (bi, bj) = self.balls_at(x)?;
        Ok(vertex_sector_volume(&bi, cell, self.pair.0)? + vertex_sector_volume(&bj, cell, self.pair.1)?)
    }
}

/// V(x): summed sectors of a tangent pair after sliding the contact by x.
pub fn volume_function(c: &PackingConfiguration, edge: (usize, usize), x: f64) -> Result<f64> {
    SlidingPair::new(c, edge)?.value(c, x)
}

/// Placement of balls vertex by vertex.
struct Builder {
    cell: &'static Cell,
    scales: Vec<Option<f64>>,
}

impl Builder {
    fn new(tiling: SchlafliSymbol) -> Result<Self> {
        let cell = cell(tiling)?;
        Ok(Self {
            cell,
            scales: vec![None; cell.n()],
        })
    }

    fn set(&mut self, v: usize, c: f64) {
        self.scales[v] = Some(c);
    }

    fn null(&self, u: usize) -> nalgebra::Vector4<f64> {
        self.cell.vertices[u].coords() / self.scales[u].expect("placed")
    }

    /// Scale of the ball at v tangent to the placed ball at u.
    fn tangent_limit(&self, v: usize, u: usize) -> f64 {
        -bilinear_form(&self.null(u), self.cell.vertices[v].coords()) / 2.0
    }

    fn tangent(&mut self, v: usize, u: usize) {
        self.scales[v] = Some(self.tangent_limit(v, u));
    }

    /// Largest ball at v touching but not overlapping the listed placed
    /// balls, optionally also bounded by the faces.
    fn maximal(&mut self, v: usize, against: &[usize], faces: bool) {
        let mut c = against
            .iter()
            .filter(|&&u| self.scales[u].is_some())
            .map(|&u| self.tangent_limit(v, u))
            .fold(f64::INFINITY, f64::min);
        if faces {
            c = c.min(face_limit(self.cell, v).0);
        }
        self.scales[v] = Some(c);
    }

    fn finish(self, tiling: SchlafliSymbol, label: &str) -> Result<PackingConfiguration> {
        let scales: Vec<f64> = self
            .scales
            .iter()
            .map(|c| c.ok_or_else(|| Error::InvalidInput("unplaced vertex".into())))
            .collect::<Result<_>>()?;
        PackingConfiguration::from_scales(tiling, label, &scales)
    }
}

/// Cube sublattice adjacency, for the cube and the dodecahedron.
fn cube_neighbors(v: usize) -> Vec<usize> {
    let cube = cell(SchlafliSymbol::CUBIC).expect("cube");
    cube.neighbors(v).to_vec()
}

const ANCHOR: usize = 3;
const ANTIPODE_OF_ANCHOR_OCT: usize = 5;
const ANTIPODE_OF_ANCHOR_CUBE: usize = 7;

/// Shared edge product −⟨E_i,E_j⟩ of the dodecahedron.
fn dodeca_edge_product() -> f64 {
    1.0 - 5f64.sqrt() / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Anchor ball at E3, all others tangent to it.
    Anchor,
    /// Anchor and its antipode equal or tangent, the rest tangent to them.
    Axial,
    /// Two alternating classes of the cube sublattice.
    Alternating,
    /// Cube sublattice uniform, the rest tangent to it.
    Uniform,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Anchor => "anchor",
            Self::Axial => "axial",
            Self::Alternating => "alternating",
            Self::Uniform => "uniform",
        }
    }
}

/// A one-parameter family driven by the type parameter s of the ball at E3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub tiling: SchlafliSymbol,
    pub kind: FamilyKind,
    /// Consecutive s-intervals on which the tangency pattern is fixed.
    pub segments: Vec<(f64, f64)>,
    /// Anchor scale at x = 0.
    pub reference_scale: f64,
}

impl Family {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.segments[0].0, self.segments[self.segments.len() - 1].1)
    }

    /// Endpoints of all segments, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.segments.iter().map(|s| s.0).collect();
        b.push(self.range().1);
        b
    }

    /// Log-scale displacement of the anchor ball from the reference.
    pub fn x_of(&self, s: f64) -> f64 {
        (type_scale(s) / self.reference_scale).ln()
    }

    pub fn configuration(&self, s: f64) -> Result<PackingConfiguration> {
        let (lo, hi) = self.range();
        if !(s >= lo - 1e-12 && s <= hi + 1e-12) {
            return Err(Error::InvalidInput(format!(
                "s = {s} outside the {} family range [{lo}, {hi}]",
                self.name()
            )));
        }
        let s = s.clamp(lo, hi);
        let t = self.tiling;
        let mut b = Builder::new(t)?;
        b.set(ANCHOR, type_scale(s));
        let label = format!("{}(s={s})", self.name());
        match (t.0, self.kind) {
            ([3, 3, 6], FamilyKind::Anchor) => {
                for v in [0, 1, 2] {
                    b.tangent(v, ANCHOR);
                }
            }
            ([3, 4, 4], FamilyKind::Axial) => {
                if s >= 0.0 {
                    b.set(ANTIPODE_OF_ANCHOR_OCT, type_scale(s));
                } else {
                    b.tangent(ANTIPODE_OF_ANCHOR_OCT, ANCHOR);
                }
                for v in [0, 1, 2, 4] {
                    b.tangent(v, ANCHOR);
                }
            }
            ([4, 3, 6] | [5, 3, 6], FamilyKind::Axial) => {
                cube_axial(&mut b, s);
            }
            ([4, 3, 6] | [5, 3, 6], FamilyKind::Alternating) => {
                cube_alternating(&mut b, s);
            }
            ([5, 3, 6], FamilyKind::Uniform) => {
                for v in 0..8 {
                    b.set(v, type_scale(s));
                }
            }
            _ => {
                return Err(Error::UnknownFamily {
                    tiling: t,
                    family: self.name().into(),
                    available: family_names(t).join(", "),
                })
            }
        }
        if t == SchlafliSymbol::DODECAHEDRAL {
            fill_dodecahedron(&mut b);
        }
        b.finish(t, &label)
    }
}

fn cube_axial(b: &mut Builder, s: f64) {
    let a = ANTIPODE_OF_ANCHOR_CUBE;
    if s >= 0.0 {
        b.set(a, type_scale(s));
    } else {
        b.tangent(a, ANCHOR);
    }
    for v in cube_neighbors(ANCHOR) {
        b.tangent(v, ANCHOR);
    }
    for v in cube_neighbors(a) {
        b.tangent(v, a);
    }
}

fn cube_alternating(b: &mut Builder, s: f64) {
    let near = cube_neighbors(ANCHOR);
    let large: Vec<usize> = (0..8)
        .filter(|&v| v == ANCHOR || (v != ANTIPODE_OF_ANCHOR_CUBE && !near.contains(&v)))
        .collect();
    for &v in &large {
        b.set(v, type_scale(s));
    }
    for v in (0..8).filter(|v| !large.contains(v)) {
        b.maximal(v, &large, false);
    }
}

/// Balls off the cube sublattice: largest allowed by their edge neighbours.
fn fill_dodecahedron(b: &mut Builder) {
    let order = by_distance_from_anchor(b.cell, 8..20);
    for v in order {
        let nb = b.cell.neighbors(v).to_vec();
        b.maximal(v, &nb, false);
    }
}

fn by_distance_from_anchor(cell: &Cell, range: std::ops::Range<usize>) -> Vec<usize> {
    let mut v: Vec<usize> = range.collect();
    v.sort_by(|&i, &j| {
        let di = -cell.vertex_product(ANCHOR, i);
        let dj = -cell.vertex_product(ANCHOR, j);
        di.total_cmp(&dj).then(i.cmp(&j))
    });
    v
}

/// The dodecahedral arrangement grown greedily from a maximal ball at E3.
fn dodeca_greedy() -> Result<PackingConfiguration> {
    let t = SchlafliSymbol::DODECAHEDRAL;
    let mut b = Builder::new(t)?;
    b.set(ANCHOR, face_limit(b.cell, ANCHOR).0);
    let mut placed = vec![ANCHOR];
    for v in by_distance_from_anchor(b.cell, 0..8) {
        if v == ANCHOR {
            continue;
        }
        b.maximal(v, &placed, true);
        placed.push(v);
    }
    fill_dodecahedron(&mut b);
    b.finish(t, "B5")
}

pub fn families(tiling: SchlafliSymbol) -> Result<Vec<Family>> {
    let r3 = 1.0 / 3f64.sqrt();
    let f = |kind, segments: Vec<(f64, f64)>, reference_scale| Family {
        tiling,
        kind,
        segments,
        reference_scale,
    };
    Ok(match tiling.0 {
        [3, 3, 6] => vec![f(FamilyKind::Anchor, vec![(0.0, 0.5)], r3)],
        [3, 4, 4] => vec![f(
            FamilyKind::Axial,
            vec![(-1.0 / 3.0, 0.0), (0.0, 1.0 / 3.0)],
            0.5f64.sqrt(),
        )],
        [4, 3, 6] => vec![
            f(FamilyKind::Axial, vec![(-1.0 / 3.0, 0.0), (0.0, 0.5)], r3),
            f(FamilyKind::Alternating, vec![(0.2, 0.5)], r3),
        ],
        [5, 3, 6] => {
            let c1 = (dodeca_edge_product() / 2.0).sqrt();
            vec![
                f(FamilyKind::Uniform, vec![(0.5, type_param(c1))], c1),
                f(FamilyKind::Axial, vec![(0.0, 0.5)], r3),
                f(FamilyKind::Alternating, vec![(0.2, 0.5)], r3),
            ]
        }
        _ => return Err(Error::NotFullyAsymptotic(tiling)),
    })
}

fn family_names(tiling: SchlafliSymbol) -> Vec<&'static str> {
    families(tiling)
        .map(|v| v.iter().map(|f| f.name()).collect())
        .unwrap_or_default()
}

pub fn family(tiling: SchlafliSymbol, name: &str) -> Result<Family> {
    families(tiling)?
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::UnknownFamily {
            tiling,
            family: name.into(),
            available: family_names(tiling).join(", "),
        })
}

fn labeled(mut c: PackingConfiguration, label: &str) -> PackingConfiguration {
    c.label = label.into();
    c
}

/// The named arrangements of each asymptotic tiling, labelled B1, B2, ...
pub fn catalog(tiling: SchlafliSymbol) -> Result<Vec<PackingConfiguration>> {
    let at = |name: &str, s: f64, label: &str| -> Result<PackingConfiguration> {
        Ok(labeled(family(tiling, name)?.configuration(s)?, label))
    };
    match tiling.0 {
        [3, 3, 6] => Ok(vec![at("anchor", 0.5, "B1")?, at("anchor", 0.0, "B2")?]),
        [3, 4, 4] => Ok(vec![
            at("axial", 1.0 / 3.0, "B1")?,
            at("axial", 0.0, "B2")?,
            at("axial", -1.0 / 3.0, "B3")?,
        ]),
        [4, 3, 6] => Ok(vec![
            at("axial", 0.5, "B1")?,
            at("axial", 0.0, "B2")?,
            at("alternating", 0.2, "B3")?,
            at("axial", -1.0 / 3.0, "B4")?,
        ]),
        [5, 3, 6] => {
            let uniform = family(tiling, "uniform")?;
            Ok(vec![
                at("uniform", uniform.range().1, "B1")?,
                at("uniform", 0.5, "B2")?,
                at("axial", 0.0, "B3")?,
                at("alternating", 0.2, "B4")?,
                dodeca_greedy()?,
            ])
        }
        _ => Err(Error::NotFullyAsymptotic(tiling)),
    }
}

/// Catalog entry by label ("B3", "b3" or "3").
pub fn configuration(tiling: SchlafliSymbol, label: &str) -> Result<PackingConfiguration> {
    let all = catalog(tiling)?;
    let want = label.trim().trim_start_matches(['B', 'b']);
    all.iter()
        .find(|c| !want.is_empty() && c.label.trim_start_matches('B') == want)
        .cloned()
        .ok_or_else(|| Error::UnknownConfiguration {
            tiling,
            label: label.into(),
            available: all.iter().map(|c| c.label.clone()).collect::<Vec<_>>().join(", "),
        })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub s: f64,
    pub x: f64,
    pub report: DensityReport,
}

/// Densities along a family at the given anchor parameters.
pub fn sweep(tiling: SchlafliSymbol, family_name: &str, grid: &[f64]) -> Result<Vec<SweepPoint>> {
    let fam = family(tiling, family_name)?;
    grid.iter()
        .map(|&s| {
            let c = fam.configuration(s)?;
            Ok(SweepPoint {
                s,
                x: fam.x_of(s),
                report: density(&c)?,
            })
        })
        .collect()
}

/// n evenly spaced points from lo to hi inclusive (n = 1 gives lo).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub tiling: SchlafliSymbol,
    /// Maximal-density reports, ties within TIE_TOL.
    pub optima: Vec<DensityReport>,
    /// Every evaluated candidate, catalog first.
    pub candidates: Vec<DensityReport>,
    /// Tangent pairs whose cosh-law maximum is not at an interval end.
    pub interior_maxima: Vec<(String, (usize, usize))>,
}

/// Densest arrangements among the catalog and family endpoints.
pub fn certify_optimum(tiling: SchlafliSymbol) -> Result<Certificate> {
    let mut candidates: Vec<DensityReport> = catalog(tiling)?
        .iter()
        .map(density)
        .collect::<Result<_>>()?;
    for fam in families(tiling)? {
        for s in fam.breakpoints() {
            let c = fam.configuration(s)?;
            let dup = candidates.iter().any(|r| {
                r.config
                    .assignment
                    .iter()
                    .zip(&c.assignment)
                    .all(|(a, b)| (a - b).abs() < 1e-9)
            });
            if !dup {
                candidates.push(density(&c)?);
            }
        }
    }
    let mut interior_maxima = Vec::new();
    for r in &candidates {
        for t in &r.config.tangencies {
            let sp = SlidingPair::new(&r.config, t.pair)?;
            let (lo, hi) = sp.interval;
            let ends = sp.value(&r.config, lo)?.max(sp.value(&r.config, hi)?);
            if lo < 0.0 && hi > 0.0 && sp.v0 > ends + 1e-12 {
                interior_maxima.push((r.config.label.clone(), t.pair));
            }
        }
    }
    let best = candidates.iter().map(|r| r.density).fold(f64::NEG_INFINITY, f64::max);
    let optima = candidates
        .iter()
        .filter(|r| r.density >= best - TIE_TOL && r.config.label.starts_with('B'))
        .cloned()
        .collect();
    Ok(Certificate {
        tiling,
        optima,
        candidates,
        interior_maxima,
    })
}
