//! Pairwise, triplet and quadruple error probabilities over AWGN.
//!
//! Every quantity is the probability that a Gaussian noise vector leaves the
//! intersection of up to three half-spaces `⟨n_k, ξ⟩ < b_k`. With unit
//! normals the projections are standard normals after scaling by `σ`, so
//! the leaving probability is the union of upper tails, evaluated by
//! inclusion–exclusion over bivariate and trivariate upper orthants. This
//! keeps small probabilities accurate to their own scale.

use crate::error::{Error, Result};
use crate::geometry::{embed, tetra_angles, triangle_cosine, TetrahedronConfig, TriangleConfig};
use crate::normal::{
    bvn_upper, integrate, normal_cdf, normal_pdf, q_function, tvn_upper, RHO_EDGE,
};
use crate::par::{map_range, Execution};
use crate::stream::{stream, DOMAIN_ORTHANT};
use rand::Rng;
use rand_distr::StandardNormal;

/// Monte Carlo samples per independently seeded block.
pub const MC_BLOCK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    sigma: f64,
}

impl NoiseModel {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma.is_finite() && sigma > 0.0 {
            Ok(NoiseModel { sigma })
        } else {
            Err(Error::InvalidArgument(format!(
                "noise deviation {sigma} must be positive and finite"
            )))
        }
    }

    /// Noise level at which unit-energy BPSK on an `[n, k]` code has the given
    /// `Eb/N0` in dB, with `Eb/N0 = n / (2kσ²)`.
    pub fn from_ebn0_db(ebn0_db: f64, n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument(
                "code dimensions must be positive".into(),
            ));
        }
        let ratio = 10f64.powf(ebn0_db / 10.0);
        NoiseModel::new((n as f64 / (2.0 * k as f64 * ratio)).sqrt())
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn ebn0_db(&self, n: usize, k: usize) -> f64 {
        10.0 * (n as f64 / (2.0 * k as f64 * self.sigma * self.sigma)).log10()
    }
}

/// Up to three constraints `⟨normal, ξ⟩ < offset` on a point of `R³`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpaceSystem {
    normals: Vec<[f64; 3]>,
    offsets: Vec<f64>,
}

impl HalfSpaceSystem {
    pub fn new(normals: Vec<[f64; 3]>, offsets: Vec<f64>) -> Result<Self> {
        if normals.is_empty() || normals.len() > 3 || normals.len() != offsets.len() {
            return Err(Error::InvalidArgument(format!(
                "need 1 to 3 constraints with one offset each, got {} normals and {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        for n in &normals {
            let norm: f64 = n.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "normal {n:?} is not unit length"
                )));
            }
        }
        if offsets.iter().any(|b| b.is_nan()) {
            return Err(Error::InvalidArgument("offset is NaN".into()));
        }
        Ok(HalfSpaceSystem { normals, offsets })
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[[f64; 3]] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn correlation(&self, a: usize, b: usize) -> f64 {
        dot(&self.normals[a], &self.normals[b])
    }

    fn holds(&self, xi: &[f64; 3]) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, &b)| dot(n, xi) < b)
    }

    /// Standardized thresholds and correlations, with constraints sharing a
    /// direction merged into the tightest one.
    fn standardized(&self, noise: NoiseModel) -> (Vec<f64>, Vec<[f64; 3]>) {
        let mut keep: Vec<(f64, [f64; 3])> = Vec::new();
        for (n, &b) in self.normals.iter().zip(&self.offsets) {
            let t = b / noise.sigma();
            match keep.iter_mut().find(|(_, m)| dot(m, n) >= 1.0 - RHO_EDGE) {
                Some(slot) => slot.0 = slot.0.min(t),
                None => keep.push((t, *n)),
            }
        }
        keep.into_iter().unzip()
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Probability that at least one constraint is violated.
fn violation_prob(sys: &HalfSpaceSystem, noise: NoiseModel) -> f64 {
    let (t, n) = sys.standardized(noise);
    let r = |a: usize, b: usize| dot(&n[a], &n[b]).clamp(-1.0, 1.0);
    let p = match t.len() {
        1 => q_function(t[0]),
        2 => q_function(t[0]) + q_function(t[1]) - bvn_upper(t[0], t[1], r(0, 1)),
        _ => {
            q_function(t[0]) + q_function(t[1]) + q_function(t[2])
                - bvn_upper(t[0], t[1], r(0, 1))
                - bvn_upper(t[0], t[2], r(0, 2))
                - bvn_upper(t[1], t[2], r(1, 2))
                + tvn_upper([t[0], t[1], t[2]], &[r(0, 1), r(0, 2), r(1, 2)])
        }
    };
    p.clamp(0.0, 1.0)
}

/// Probability that all constraints hold under iid `N(0, σ²)` coordinates.
pub fn mvn_halfspace_prob(sys: &HalfSpaceSystem, noise: NoiseModel) -> f64 {
    1.0 - violation_prob(sys, noise)
}

/// `Q(√i/σ)`.
pub fn pairwise_error_prob(i: usize, noise: NoiseModel) -> Result<f64> {
    if i == 0 {
        return Err(Error::InvalidArgument(
            "pairwise error needs distance >= 1".into(),
        ));
    }
    Ok(q_function((i as f64).sqrt() / noise.sigma()))
}

fn check_triangle(d1: usize, i: usize, j: usize) -> Result<TriangleConfig> {
    let cfg = TriangleConfig::new(d1, i, j);
    if d1 == 0 || i == 0 {
        return Err(Error::InvalidArgument("d1 and i must be at least 1".into()));
    }
    if !cfg.is_realizable() || (j == 0 && i != d1) {
        return Err(Error::NonRealizable(format!("triangle {cfg:?}")));
    }
    Ok(cfg)
}

/// Probability that the origin codeword loses to `c1` or to `c`.
pub fn triplet_error_prob(d1: usize, i: usize, j: usize, noise: NoiseModel) -> Result<f64> {
    check_triangle(d1, i, j)?;
    if j == 0 {
        return pairwise_error_prob(d1, noise);
    }
    Ok(violation_prob(&triangle_system(d1, i, j)?, noise))
}

/// The two unit normals and offsets of a triangle configuration.
pub fn triangle_system(d1: usize, i: usize, j: usize) -> Result<HalfSpaceSystem> {
    let cfg = check_triangle(d1, i, j)?;
    let c = if j == 0 { 1.0 } else { triangle_cosine(&cfg)? };
    let s = (1.0 - c * c).max(0.0).sqrt();
    HalfSpaceSystem::new(
        vec![[1.0, 0.0, 0.0], [c, s, 0.0]],
        vec![(d1 as f64).sqrt(), (i as f64).sqrt()],
    )
}

/// The three unit normals and offsets of a tetrahedron configuration.
pub fn tetrahedron_system(cfg: &TetrahedronConfig) -> Result<HalfSpaceSystem> {
    let normals = tetra_angles(cfg)?.normals();
    HalfSpaceSystem::new(
        normals.to_vec(),
        [cfg.d1, cfg.d2, cfg.i]
            .iter()
            .map(|&d| (d as f64).sqrt())
            .collect(),
    )
}

/// Probability that the origin codeword loses to `c1`, `c2` or `c`.
pub fn quadruple_error_prob(cfg: &TetrahedronConfig, noise: NoiseModel) -> Result<f64> {
    Ok(violation_prob(&tetrahedron_system(cfg)?, noise))
}

/// Monte Carlo estimate of [`mvn_halfspace_prob`] with its binomial
/// standard error.
pub fn mc_event_prob(
    sys: &HalfSpaceSystem,
    noise: NoiseModel,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    mc_event_prob_with(sys, noise, samples, seed, Execution::default())
}

/// As [`mc_event_prob`]. Sample block `b` always uses stream `b`, so the
/// estimate is the same under any execution mode or thread count.
pub fn mc_event_prob_with(
    sys: &HalfSpaceSystem,
    noise: NoiseModel,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<(f64, f64)> {
    if samples < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "need at least 10^4 samples, got {samples}"
        )));
    }
    let dims = sys
        .normals
        .iter()
        .map(|n| n.iter().rposition(|&x| x != 0.0).map_or(0, |p| p + 1))
        .max()
        .unwrap_or(1);
    let sigma = noise.sigma();
    let blocks = samples.div_ceil(MC_BLOCK);
    let counts = map_range(exec, 0..blocks, |b| {
        let mut rng = stream(seed, DOMAIN_ORTHANT, 0, b);
        let size = MC_BLOCK.min(samples - b * MC_BLOCK);
        let mut hits = 0u64;
        for _ in 0..size {
            let mut xi = [0.0; 3];
            for x in xi.iter_mut().take(dims) {
                *x = sigma * rng.sample::<f64, _>(StandardNormal);
            }
            hits += sys.holds(&xi) as u64;
        }
        hits
    });
    let hits: u64 = counts.iter().sum();
    let p = hits as f64 / samples as f64;
    Ok((p, (p * (1.0 - p) / samples as f64).sqrt()))
}

/// The triplet probability as the literal repeated integral over the
/// decision region. Slow; used to cross-check [`triplet_error_prob`].
pub fn triplet_error_prob_literal(d1: usize, i: usize, j: usize, noise: NoiseModel) -> Result<f64> {
    let cfg = check_triangle(d1, i, j)?;
    let c = triangle_cosine(&cfg)?;
    let s = (1.0 - c * c).max(0.0).sqrt();
    let b = [(d1 as f64).sqrt(), (i as f64).sqrt()].map(|x| x / noise.sigma());
    Ok(1.0 - nested_region_prob(&[[1.0, 0.0, 0.0], [c, s, 0.0]], &b))
}

/// The quadruple probability as the literal repeated integral over the
/// decision region. Slow; used to cross-check [`quadruple_error_prob`].
pub fn quadruple_error_prob_literal(cfg: &TetrahedronConfig, noise: NoiseModel) -> Result<f64> {
    let e = embed(cfg)?;
    let unit = |v: [f64; 3]| {
        let n = dot(&v, &v).sqrt();
        [v[0] / n, v[1] / n, v[2] / n]
    };
    let normals = [unit(e.v1), unit(e.v2), unit(e.v)];
    let b = [cfg.d1, cfg.d2, cfg.i].map(|d| (d as f64).sqrt() / noise.sigma());
    Ok(1.0 - nested_region_prob(&normals, &b))
}

/// `∫ f(ξ1) ∫ f(ξ2) ∫ f(ξ3) dξ` over `{⟨n_k, ξ⟩ < b_k}` for standard normal
/// coordinates, with normals in lower-triangular form (only the last may
/// have a third component, and it must be non-negative).
fn nested_region_prob(normals: &[[f64; 3]], b: &[f64]) -> f64 {
    const EPS: f64 = 1e-12;
    const SPAN: f64 = 12.0;
    // interval of `coef·x < rhs` intersected with (lo, hi)
    fn clip(lo: &mut f64, hi: &mut f64, coef: f64, rhs: f64) {
        if coef > EPS {
            *hi = hi.min(rhs / coef);
        } else if coef < -EPS {
            *lo = lo.max(rhs / coef);
        } else if rhs <= 0.0 {
            *hi = *lo;
        }
    }
    let (mut lo1, mut hi1) = (-SPAN, SPAN);
    for (n, &t) in normals.iter().zip(b) {
        if n[1].abs() <= EPS && n[2].abs() <= EPS {
            clip(&mut lo1, &mut hi1, n[0], t);
        }
    }
    if lo1 >= hi1 {
        return 0.0;
    }
    let inner = |x1: f64| {
        let (mut lo2, mut hi2) = (-SPAN, SPAN);
        for (n, &t) in normals.iter().zip(b) {
            if n[1].abs() > EPS && n[2].abs() <= EPS {
                clip(&mut lo2, &mut hi2, n[1], t - n[0] * x1);
            }
        }
        if lo2 >= hi2 {
            return 0.0;
        }
        let solid: Vec<(&[f64; 3], f64)> = normals
            .iter()
            .zip(b)
            .filter(|(n, _)| n[2] > EPS)
            .map(|(n, &t)| (n, t))
            .collect();
        let mass = if solid.is_empty() {
            normal_cdf(hi2) - normal_cdf(lo2)
        } else {
            integrate(
                |x2| {
                    normal_pdf(x2)
                        * solid
                            .iter()
                            .map(|(n, t)| normal_cdf((t - n[0] * x1 - n[1] * x2) / n[2]))
                            .product::<f64>()
                },
                lo2,
                hi2,
                1e-15,
                1e-12,
            )
        };
        normal_pdf(x1) * mass
    };
    integrate(inner, lo1, hi1, 1e-14, 1e-12)
}
