//! Lobachevsky function, orthoscheme and cell volumes, the Böröczky–Florian
//! constant and a Monte Carlo volume oracle in the Klein chart.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coxeter::{coxeter_matrix, Cell, SchlafliSymbol};
use crate::error::{Error, Result};
use crate::polytope::ConvexPolytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VolumeMethod {
    ClosedForm,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: f64,
    pub method: VolumeMethod,
    /// Zero for closed forms.
    pub stderr: f64,
}

impl VolumeResult {
    fn closed(value: f64) -> Self {
        Self {
            value,
            method: VolumeMethod::ClosedForm,
            stderr: 0.0,
        }
    }
}

const ZETA_TERMS: usize = 40;

/// ζ(2k) for k = 0..ZETA_TERMS, Euler–Maclaurin with N = 16.
fn zeta_even() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut z = [0.0; ZETA_TERMS];
        z[0] = -0.5;
        z[1] = PI * PI / 6.0;
        let n = 16.0f64;
        for (k, zk) in z.iter_mut().enumerate().skip(2) {
            let s = 2.0 * k as f64;
            let head: f64 = (1..16).rev().map(|m| (m as f64).powf(-s)).sum();
            let ns = n.powf(-s);
            let tail = n * ns / (s - 1.0) + ns / 2.0 + s * ns / n / 12.0
                - s * (s + 1.0) * (s + 2.0) * ns / n.powi(3) / 720.0
                + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ns / n.powi(5) / 30240.0;
            *zk = head + tail;
        }
        z
    })
}

/// Clausen function Cl₂(φ) for φ ∈ [−π, π].
fn clausen2(phi: f64) -> f64 {
    if phi == 0.0 {
        return 0.0;
    }
    let a = phi.abs();
    let r = (a / (2.0 * PI)).powi(2);
    let z = zeta_even();
    let mut sum = 0.0;
    let mut pw = 1.0;
    for (k, zk) in z.iter().enumerate().skip(1) {
        pw *= r;
        let kf = k as f64;
        let term = zk * pw / (kf * (2.0 * kf + 1.0));
        sum += term;
        // remaining terms shrink by at least r ≤ 1/4 each
        if term < 1e-18 * sum {
            break;
        }
    }
    phi.signum() * (a - a * a.ln() + a * sum)
}

/// Λ(θ) = −∫₀^θ log|2 sin t| dt.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let mut t = theta.rem_euclid(PI);
    if t > PI / 2.0 {
        t -= PI;
    }
    clausen2(2.0 * t) / 2.0
}

/// Volume of the orthoscheme with Coxeter diagram (p, q, r).
///
/// Requires a hyperbolic diagram whose vertices are proper or ideal.
pub fn orthoscheme_volume(s: SchlafliSymbol) -> Result<VolumeResult> {
    let m = coxeter_matrix(s);
    if !m.is_hyperbolic() || (0..4).any(|i| m.a[(i, i)] > 1e-10) {
        return Err(Error::UnsupportedSymbol(s));
    }
    let [p, q, r] = s.0.map(|n| PI / n as f64);
    let disc = q.cos().powi(2) - (p.sin() * r.sin()).powi(2);
    if disc <= 0.0 {
        return Err(Error::UnsupportedSymbol(s));
    }
    let d = (disc.sqrt() / (p.cos() * r.cos())).atan();
    let l = lobachevsky;
    let v = 0.25
        * (l(p + d) - l(p - d) + l(r + d) - l(r - d) - l(PI / 2.0 - q + d) + l(PI / 2.0 - q - d)
            + 2.0 * l(PI / 2.0 - d));
    Ok(VolumeResult::closed(v))
}

/// Cell volume of a fully asymptotic tiling from its orthoscheme count.
pub fn cell_volume_of(s: SchlafliSymbol) -> Result<VolumeResult> {
    let (o, count) = s.cell_orthoscheme()?;
    let v = orthoscheme_volume(o)?;
    Ok(VolumeResult::closed(count as f64 * v.value))
}

pub fn cell_volume(c: &Cell) -> VolumeResult {
    let (o, _) = c.schlafli.cell_orthoscheme().expect("cells are asymptotic");
    let v = orthoscheme_volume(o).expect("cell orthoschemes are supported");
    VolumeResult::closed(c.orthoschemes_per_cell as f64 * v.value)
}

/// Partial evaluation of the Böröczky–Florian series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BfSeries {
    /// Reciprocal of the series sum.
    pub value: f64,
    pub sum: f64,
    pub periods: u64,
    /// Bound on the neglected tail of the sum.
    pub sum_bound: f64,
    /// Induced bound on the reciprocal.
    pub value_bound: f64,
}

pub const BF_PERIODS: u64 = 1_000_000;

/// Sum of ±1/n² over n not divisible by 3, signs + + − − repeating.
pub fn bf_series(periods: u64) -> BfSeries {
    let mut sum = 0.0;
    // smallest terms first
    for m in (0..periods).rev() {
        let b = 6.0 * m as f64;
        let t = 1.0 / ((b + 1.0) * (b + 1.0)) + 1.0 / ((b + 2.0) * (b + 2.0))
            - 1.0 / ((b + 4.0) * (b + 4.0))
            - 1.0 / ((b + 5.0) * (b + 5.0));
        sum += t;
    }
    // each period term is at most 12/(6m+1)³; integrate the bound
    let sum_bound = if periods == 0 {
        f64::INFINITY
    } else {
        1.0 / (6.0 * periods as f64 - 5.0).powi(2)
    };
    let value = 1.0 / sum;
    BfSeries {
        value,
        sum,
        periods,
        sum_bound,
        value_bound: sum_bound / (sum * (sum - sum_bound)),
    }
}

/// First `terms` terms of the series, one term per admissible n.
pub fn bf_partial_sum(terms: usize) -> f64 {
    (1u64..)
        .filter(|n| n % 3 != 0)
        .take(terms)
        .map(|n| {
            let sign = if n % 6 == 1 || n % 6 == 2 { 1.0 } else { -1.0 };
            sign / (n * n) as f64
        })
        .sum()
}

/// The Böröczky–Florian density bound for horoball packings.
pub fn bf_constant() -> f64 {
    bf_series(BF_PERIODS).value
}

/// A region of the Klein chart with a membership test.
pub trait KleinRegion: Sync {
    fn contains(&self, p: &Vector3<f64>) -> bool;
    fn bounding_box(&self) -> (Vector3<f64>, Vector3<f64>);
    /// Points of the unit sphere where the region touches the absolute.
    fn ideal_points(&self) -> Vec<Vector3<f64>> {
        Vec::new()
    }
}

impl KleinRegion for ConvexPolytope {
    fn contains(&self, p: &Vector3<f64>) -> bool {
        ConvexPolytope::contains(self, p)
    }

    fn bounding_box(&self) -> (Vector3<f64>, Vector3<f64>) {
        ConvexPolytope::bounding_box(self)
    }

    fn ideal_points(&self) -> Vec<Vector3<f64>> {
        self.points
            .iter()
            .filter(|p| p.norm() > 1.0 - 1e-9)
            .copied()
            .collect()
    }
}

/// Euclidean ball of the Klein chart centred at the origin.
#[derive(Debug, Clone, Copy)]
pub struct KleinBall {
    pub radius: f64,
}

impl KleinBall {
    /// Hyperbolic volume π(sinh 2ρ − 2ρ), ρ = artanh r.
    pub fn exact_volume(&self) -> f64 {
        let rho = self.radius.atanh();
        PI * ((2.0 * rho).sinh() - 2.0 * rho)
    }
}

impl KleinRegion for KleinBall {
    fn contains(&self, p: &Vector3<f64>) -> bool {
        p.norm_squared() <= self.radius * self.radius
    }

    fn bounding_box(&self) -> (Vector3<f64>, Vector3<f64>) {
        (Vector3::repeat(-self.radius), Vector3::repeat(self.radius))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: u64,
    pub seed: u64,
    /// Independent ChaCha8 streams; partition i uses stream i.
    pub partitions: u32,
}

impl MonteCarloConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            partitions: 8,
        }
    }
}

const HOT_RADIUS: f64 = 0.5;
const BOX_WEIGHT: f64 = 0.5;

struct Sampler<'a> {
    lo: Vector3<f64>,
    span: Vector3<f64>,
    box_density: f64,
    hot: &'a [Vector3<f64>],
    p_box: f64,
}

impl Sampler<'_> {
    fn draw(&self, rng: &mut ChaCha8Rng) -> Vector3<f64> {
        if self.hot.is_empty() || rng.gen::<f64>() < self.p_box {
            return self.lo + self.span.component_mul(&Vector3::from_fn(|_, _| rng.gen::<f64>()));
        }
        let e = self.hot[rng.gen_range(0..self.hot.len())];
        let u = loop {
            let v = Vector3::from_fn(|_, _| 2.0 * rng.gen::<f64>() - 1.0);
            let n = v.norm_squared();
            if n > 1e-12 && n <= 1.0 {
                break v / n.sqrt();
            }
        };
        e + u * (HOT_RADIUS * rng.gen::<f64>())
    }

    /// Mixture density at p.
    fn density(&self, p: &Vector3<f64>) -> f64 {
        let inside_box = (0..3).all(|i| p[i] >= self.lo[i] && p[i] <= self.lo[i] + self.span[i]);
        let mut q = if inside_box { self.p_box * self.box_density } else { 0.0 };
        if !self.hot.is_empty() {
            let k = (1.0 - self.p_box) / self.hot.len() as f64 / (4.0 * PI * HOT_RADIUS);
            for e in self.hot {
                let d2 = (p - e).norm_squared();
                if d2 < HOT_RADIUS * HOT_RADIUS {
                    q += k / d2;
                }
            }
        }
        q
    }
}

/// Hyperbolic volume of a Klein-chart region by importance sampling.
///
/// Samples come from a mixture of the bounding box and 1/|x−e|² shells
/// around the region's ideal points, which keeps the variance finite where
/// the volume element 1/(1−|x|²)² blows up.
pub fn monte_carlo_volume_with(region: &dyn KleinRegion, cfg: &MonteCarloConfig) -> Result<VolumeResult> {
    if cfg.samples < 10_000 {
        return Err(Error::InvalidInput("need at least 10^4 samples".into()));
    }
    if cfg.partitions == 0 {
        return Err(Error::InvalidInput("need at least one partition".into()));
    }
    let (lo, hi) = region.bounding_box();
    let span = hi - lo;
    if span.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InvalidInput("degenerate bounding box".into()));
    }
    let hot = region.ideal_points();
    let sampler = Sampler {
        lo,
        span,
        box_density: 1.0 / span.product(),
        p_box: if hot.is_empty() { 1.0 } else { BOX_WEIGHT },
        hot: &hot,
    };
    let parts = cfg.partitions as u64;
    let counts: Vec<u64> = (0..parts)
        .map(|i| cfg.samples / parts + u64::from(i < cfg.samples % parts))
        .collect();
    let sums: Vec<(f64, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = counts
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let sampler = &sampler;
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    rng.set_stream(i as u64);
                    let (mut s1, mut s2) = (0.0, 0.0);
                    for _ in 0..n {
                        let p = sampler.draw(&mut rng);
                        let r2 = p.norm_squared();
                        if r2 >= 1.0 || !region.contains(&p) {
                            continue;
                        }
                        let w = 1.0 / ((1.0 - r2) * (1.0 - r2)) / sampler.density(&p);
                        s1 += w;
                        s2 += w * w;
                    }
                    (s1, s2)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampler thread")).collect()
    });
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = cfg.samples as f64;
    let mean = s1 / n;
    let var = (s2 / n - mean * mean).max(0.0);
    Ok(VolumeResult {
        value: mean,
        method: VolumeMethod::MonteCarlo,
        stderr: (var / (n - 1.0)).sqrt(),
    })
}

/// Monte Carlo volume of the convex hull of Klein-chart points.
pub fn monte_carlo_volume(points: &[Vector3<f64>], samples: u64, seed: u64) -> Result<VolumeResult> {
    let hull = ConvexPolytope::from_points(points)?;
    monte_carlo_volume_with(&hull, &MonteCarloConfig::new(samples, seed))
}
