//! Monte Carlo evaluation of the Feynman tree integrals defining Hodge correlators.
//!
//! For a tree `T` with edges `e_0, …, e_{2n-2}` (in the tree's canonical
//! order) and internal vertices `x_v ∈ ℂ`, the integrand
//! `Σ_j (-1)^j log|e_j| · det(d arg e_i)_{i ≠ j}` is the determinant of the
//! `(2n-1) × (2n-1)` matrix whose first column holds `log|e_j|` and whose other
//! columns are the real and imaginary derivatives of `arg e_j`. The
//! normalized correlator is
//! `(-1)^n (2/π)^{n-1} binom(2n-2, n-1)^{-1} (2n-1)^{-1} Σ_T ∫ det`.
//!
//! Internal vertices are drawn one at a time in preorder from an equal mixture
//! of heavy-tailed radial kernels centered at their already placed neighbors,
//! with radial density `S/(2π r (r+S)^2)`. The kernel cancels the `1/r` poles
//! of `d arg` and decays like the integrand, which keeps the variance finite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{NumError, Result};
use crate::trees::{enumerate_plane_trees, PlaneTree, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Estimator {
    MeanOfMeans,
    MedianOfMeans,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrationConfig {
    pub samples: u64,
    pub seed: u64,
    /// Kernel scale as a multiple of the largest distance between the points.
    pub domain_radius: f64,
    pub estimator: Estimator,
    pub batches: u32,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            samples: 1_000_000,
            seed: 0,
            domain_radius: 0.5,
            estimator: Estimator::MedianOfMeans,
            batches: 32,
        }
    }
}

impl IntegrationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batches == 0 || self.samples < self.batches as u64 {
            return Err(NumError::Config(format!(
                "need samples ≥ batches ≥ 1, got samples={} batches={}",
                self.samples, self.batches
            )));
        }
        if !(self.domain_radius > 0.0 && self.domain_radius.is_finite()) {
            return Err(NumError::Config(format!("domain_radius must be positive, got {}", self.domain_radius)));
        }
        Ok(())
    }
}

/// A Monte Carlo estimate with its one-sigma error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub sigma: f64,
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `(-1)^n (2/π)^{n-1} / (binom(2n-2, n-1) (2n-1))`.
fn normalization(n: usize) -> f64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * (2.0 / PI).powi(n as i32 - 1) / binom(2 * n as u64 - 2, n as u64 - 1) / (2 * n - 1) as f64
}

fn det(m: &mut [f64], size: usize) -> f64 {
    let mut d = 1.0;
    for col in 0..size {
        let mut piv = col;
        for row in col + 1..size {
            if m[row * size + col].abs() > m[piv * size + col].abs() {
                piv = row;
            }
        }
        if m[piv * size + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for k in 0..size {
                m.swap(piv * size + k, col * size + k);
            }
            d = -d;
        }
        let p = m[col * size + col];
        d *= p;
        for row in col + 1..size {
            let f = m[row * size + col] / p;
            if f != 0.0 {
                for k in col..size {
                    m[row * size + k] -= f * m[col * size + k];
                }
            }
        }
    }
    d
}

struct Prepared {
    tree: PlaneTree,
    /// Already placed neighbors of each internal vertex, in preorder.
    centers: Vec<Vec<Vertex>>,
}

fn prepare(tree: PlaneTree) -> Prepared {
    let centers = (0..tree.internal_count())
        .map(|k| {
            tree.adjacent(k)
                .into_iter()
                .filter(|v| match v {
                    Vertex::Leaf(_) => true,
                    Vertex::Internal(j) => *j < k,
                })
                .collect()
        })
        .collect();
    Prepared { tree, centers }
}

fn position(v: Vertex, zs: &[Complex64], xs: &[Complex64]) -> Complex64 {
    match v {
        Vertex::Leaf(i) => zs[i],
        Vertex::Internal(k) => xs[k],
    }
}

fn kernel_density(x: Complex64, c: Complex64, s: f64) -> f64 {
    let r = (x - c).norm();
    s / (2.0 * PI * r * (r + s) * (r + s))
}

/// One importance-weighted sample of the unnormalized tree integrand.
fn sample_tree(p: &Prepared, zs: &[Complex64], s: f64, rng: &mut ChaCha8Rng, xs: &mut [Complex64], m: &mut [f64]) -> f64 {
    let nint = p.tree.internal_count();
    let mut density = 1.0;
    for k in 0..nint {
        let cs = &p.centers[k];
        let pick = cs[rng.gen_range(0..cs.len())];
        let c = position(pick, zs, xs);
        let u: f64 = rng.gen();
        let theta: f64 = rng.gen::<f64>() * 2.0 * PI;
        let r = s * u / (1.0 - u);
        let x = c + Complex64::from_polar(r, theta);
        xs[k] = x;
        let mix: f64 = cs.iter().map(|&v| kernel_density(x, position(v, zs, xs), s)).sum::<f64>() / cs.len() as f64;
        density *= mix;
    }
    let size = 2 * nint + 1;
    m.iter_mut().for_each(|e| *e = 0.0);
    for (j, &(a, b)) in p.tree.edges.iter().enumerate() {
        let u = position(a, zs, xs) - position(b, zs, xs);
        let r2 = u.norm_sqr();
        let row = &mut m[j * size..(j + 1) * size];
        row[0] = 0.5 * r2.ln();
        let (cx, cy) = (-u.im / r2, u.re / r2);
        for (v, sign) in [(a, 1.0), (b, -1.0)] {
            if let Vertex::Internal(k) = v {
                row[1 + 2 * k] += sign * cx;
                row[2 + 2 * k] += sign * cy;
            }
        }
    }
    let value = det(m, size) / density;
    if value.is_finite() {
        value
    } else {
        0.0
    }
}

fn batch_mean(trees: &[Prepared], zs: &[Complex64], s: f64, seed: u64, batch: u64, count: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let nint = trees[0].tree.internal_count();
    let size = 2 * nint + 1;
    let mut xs = vec![Complex64::new(0.0, 0.0); nint];
    let mut m = vec![0.0; size * size];
    let mut sum = 0.0;
    for _ in 0..count {
        for t in trees {
            sum += sample_tree(t, zs, s, &mut rng, &mut xs, &mut m);
        }
    }
    sum / count as f64
}

/// `Cor(z_0, …, z_n)` divided by `(2πi)^{-n}`, by direct integration.
pub fn feynman_correlator(zs: &[Complex64], cfg: &IntegrationConfig) -> Result<Estimate> {
    cfg.validate()?;
    if zs.len() < 2 {
        return Err(NumError::Domain("a correlator needs at least two points".into()));
    }
    if zs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(NumError::Range("non-finite point".into()));
    }
    if zs.iter().all(|z| *z == zs[0]) {
        return Err(NumError::Domain("all points coincide".into()));
    }
    let n = zs.len() - 1;
    if n == 1 {
        return Ok(Estimate { value: (zs[0] - zs[1]).norm().ln(), sigma: 0.0 });
    }
    if n > 3 {
        return Err(NumError::Unsupported(format!("Feynman integration is limited to weight ≤ 3, got {n}")));
    }
    let mut diameter: f64 = 0.0;
    for a in zs {
        for b in zs {
            diameter = diameter.max((a - b).norm());
        }
    }
    let s = cfg.domain_radius * diameter;
    let trees: Vec<Prepared> = enumerate_plane_trees(n + 1).into_iter().map(prepare).collect();
    let b = cfg.batches as u64;
    let per = cfg.samples / b;
    let extra = cfg.samples % b;
    let means: Vec<f64> = (0..b)
        .into_par_iter()
        .map(|k| batch_mean(&trees, zs, s, cfg.seed, k, per + u64::from(k < extra)))
        .collect();
    let norm = normalization(n);
    let means: Vec<f64> = means.into_iter().map(|x| x * norm).collect();
    Ok(combine(&means, cfg.estimator))
}

fn combine(means: &[f64], estimator: Estimator) -> Estimate {
    let b = means.len() as f64;
    let mean = means.iter().sum::<f64>() / b;
    let sd = if means.len() > 1 {
        (means.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (b - 1.0)).sqrt()
    } else {
        f64::INFINITY
    };
    match estimator {
        Estimator::MeanOfMeans => Estimate { value: mean, sigma: sd / b.sqrt() },
        Estimator::MedianOfMeans => {
            let mut sorted = means.to_vec();
            sorted.sort_by(f64::total_cmp);
            let mid = sorted.len() / 2;
            let median = if sorted.len() % 2 == 1 { sorted[mid] } else { 0.5 * (sorted[mid - 1] + sorted[mid]) };
            Estimate { value: median, sigma: (PI / 2.0).sqrt() * sd / b.sqrt() }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let mut m = vec![2.0, 1.0, 3.0, 0.0, -1.0, 4.0, 5.0, 2.0, 1.0];
        // 2(-1-8) - 1(0-20) + 3(0+5) = -18 + 20 + 15
        assert!((det(&mut m, 3) - 17.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_in_low_weight() {
        assert!((normalization(2) - 1.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((normalization(3) + 4.0 / (PI * PI * 6.0 * 5.0)).abs() < 1e-15);
    }
}
