//! BPSK images of binary codewords and the Euclidean shape of codeword
//! triangles and tetrahedra.
//!
//! Coordinates are expressed in half-distance units: the vector from the
//! origin codeword to a codeword at Hamming distance `d` has length `√d`,
//! half of the true Euclidean distance `2√d`. In these units the decision
//! threshold of the pairwise test is the vector length itself.

use crate::code::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::par::{map_range, Execution};
use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;

/// Relative eigenvalue threshold separating coplanar from solid configurations.
pub const COPLANAR_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct BipolarWord {
    pub signals: Vec<f64>,
}

impl BipolarWord {
    pub fn len(&self) -> usize {
        self.signals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signals.is_empty()
    }

    pub fn squared_norm(&self) -> f64 {
        self.signals.iter().map(|s| s * s).sum()
    }
}

/// `0 → +1`, `1 → −1`.
pub fn bpsk_modulate(c: &Codeword) -> Result<BipolarWord> {
    let signals = c
        .symbols
        .iter()
        .map(|&s| match s {
            0 => Ok(1.0),
            1 => Ok(-1.0),
            _ => Err(Error::InvalidArgument(format!("symbol {s} is not binary"))),
        })
        .collect::<Result<_>>()?;
    Ok(BipolarWord { signals })
}

/// Euclidean distance between BPSK images at Hamming distance `d`.
pub fn euclid_from_hamming(d: usize) -> f64 {
    2.0 * (d as f64).sqrt()
}

/// Hamming distances among an origin codeword, a reference `c1` and a third
/// codeword `c`: `d1 = d(c0, c1)`, `i = d(c0, c)`, `j = d(c1, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriangleConfig {
    pub d1: usize,
    pub i: usize,
    pub j: usize,
}

impl TriangleConfig {
    pub fn new(d1: usize, i: usize, j: usize) -> Self {
        TriangleConfig { d1, i, j }
    }

    /// Configuration of three codewords with `c0` as origin.
    pub fn from_points(c0: &Codeword, c1: &Codeword, c: &Codeword) -> Result<Self> {
        Ok(TriangleConfig {
            d1: c0.distance(c1)?,
            i: c0.distance(c)?,
            j: c1.distance(c)?,
        })
    }

    /// Whether side lengths `2√d1, 2√i, 2√j` obey the (possibly degenerate)
    /// triangle inequality.
    pub fn is_realizable(&self) -> bool {
        let [a, b, c] = [self.d1, self.i, self.j].map(|d| (d as f64).sqrt());
        let slack = 1e-12 * (a + b + c).max(1.0);
        a <= b + c + slack && b <= a + c + slack && c <= a + b + slack
    }

    /// Cosine of the angle at the origin between the directions to `c1` and `c`.
    pub fn cosine(&self) -> Result<f64> {
        triangle_cosine(self)
    }

    /// Swaps the roles of `c1` and `c`.
    pub fn swapped(&self) -> Self {
        TriangleConfig {
            d1: self.i,
            i: self.d1,
            j: self.j,
        }
    }
}

pub fn triangle_cosine(cfg: &TriangleConfig) -> Result<f64> {
    if cfg.d1 == 0 || cfg.i == 0 {
        return Err(Error::InvalidArgument(
            "angle undefined for a zero-length side".into(),
        ));
    }
    let num = cfg.d1 as f64 + cfg.i as f64 - cfg.j as f64;
    Ok((num / (2.0 * ((cfg.d1 * cfg.i) as f64).sqrt())).clamp(-1.0, 1.0))
}

/// No angle of the triangle exceeds π/2.
pub fn is_non_obtuse(cfg: &TriangleConfig) -> bool {
    let TriangleConfig { d1, i, j } = *cfg;
    d1 + i >= j && d1 + j >= i && i + j >= d1
}

/// Hamming distances among an origin `c0`, references `c1`, `c2` and a
/// fourth codeword `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TetrahedronConfig {
    pub d1: usize,
    pub d2: usize,
    pub d12: usize,
    pub i: usize,
    pub j: usize,
    pub h: usize,
}

impl TetrahedronConfig {
    pub fn new(d1: usize, d2: usize, d12: usize, i: usize, j: usize, h: usize) -> Self {
        TetrahedronConfig {
            d1,
            d2,
            d12,
            i,
            j,
            h,
        }
    }

    pub fn from_points(c0: &Codeword, c1: &Codeword, c2: &Codeword, c: &Codeword) -> Result<Self> {
        Ok(TetrahedronConfig {
            d1: c0.distance(c1)?,
            d2: c0.distance(c2)?,
            d12: c1.distance(c2)?,
            i: c0.distance(c)?,
            j: c1.distance(c)?,
            h: c2.distance(c)?,
        })
    }

    fn distance_table(&self) -> [[usize; 4]; 4] {
        let TetrahedronConfig {
            d1,
            d2,
            d12,
            i,
            j,
            h,
        } = *self;
        [
            [0, d1, d2, i],
            [d1, 0, d12, j],
            [d2, d12, 0, h],
            [i, j, h, 0],
        ]
    }

    /// Relabels the three non-origin points: point `k` of the result is
    /// point `perm[k]` of `self` (points numbered 1 = `c1`, 2 = `c2`, 3 = `c`).
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let t = self.distance_table();
        let p = [0, perm[0], perm[1], perm[2]];
        TetrahedronConfig {
            d1: t[0][p[1]],
            d2: t[0][p[2]],
            i: t[0][p[3]],
            d12: t[p[1]][p[2]],
            j: t[p[1]][p[3]],
            h: t[p[2]][p[3]],
        }
    }

    /// Gram matrix of the three half-distance difference vectors.
    pub fn gram(&self) -> Matrix3<f64> {
        let t = self.distance_table();
        Matrix3::from_fn(|a, b| {
            let (a, b) = (a + 1, b + 1);
            (t[0][a] as f64 + t[0][b] as f64 - t[a][b] as f64) / 2.0
        })
    }

    fn gram_eigenvalues(&self) -> [f64; 3] {
        let e = SymmetricEigen::new(self.gram()).eigenvalues;
        let mut v = [e[0], e[1], e[2]];
        v.sort_by(f64::total_cmp);
        v
    }

    /// Gram matrix positive semidefinite to [`COPLANAR_TOL`] relative to its
    /// largest eigenvalue.
    pub fn is_realizable(&self) -> bool {
        let [lo, _, hi] = self.gram_eigenvalues();
        lo >= -COPLANAR_TOL * hi.max(1.0)
    }

    /// Realizable with the four points in one plane.
    pub fn is_coplanar(&self) -> bool {
        let [lo, _, hi] = self.gram_eigenvalues();
        lo.abs() <= COPLANAR_TOL * hi.max(1.0)
    }

    pub fn faces(&self) -> [TriangleConfig; 4] {
        let TetrahedronConfig {
            d1,
            d2,
            d12,
            i,
            j,
            h,
        } = *self;
        [
            TriangleConfig::new(d1, d2, d12),
            TriangleConfig::new(d1, i, j),
            TriangleConfig::new(d2, i, h),
            TriangleConfig::new(d12, j, h),
        ]
    }
}

/// Coordinates of the three difference vectors: `v1` on the first axis,
/// `v2` in the first two axes with non-negative second coordinate, and `v`
/// with non-negative third coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Embedding {
    pub v1: [f64; 3],
    pub v2: [f64; 3],
    pub v: [f64; 3],
}

impl Embedding {
    /// Squared lengths `(d1, d2, d12, i, j, h)` recovered from the coordinates.
    pub fn distances(&self) -> [f64; 6] {
        let sq = |a: [f64; 3], b: [f64; 3]| (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>();
        let o = [0.0; 3];
        [
            sq(self.v1, o),
            sq(self.v2, o),
            sq(self.v1, self.v2),
            sq(self.v, o),
            sq(self.v1, self.v),
            sq(self.v2, self.v),
        ]
    }
}

/// Places the configuration in coordinates by a semidefinite Cholesky
/// factorization of its Gram matrix.
pub fn embed(cfg: &TetrahedronConfig) -> Result<Embedding> {
    if cfg.d1 == 0 || cfg.d2 == 0 || cfg.i == 0 {
        return Err(Error::InvalidArgument(
            "d1, d2 and i must be at least 1".into(),
        ));
    }
    if !cfg.is_realizable() {
        return Err(Error::NonRealizable(format!(
            "{cfg:?} has an indefinite Gram matrix"
        )));
    }
    let g = cfg.gram();
    let l11 = g[(0, 0)].sqrt();
    let x2 = g[(0, 1)] / l11;
    let y2 = (g[(1, 1)] - x2 * x2).max(0.0).sqrt();
    let x = g[(0, 2)] / l11;
    let (y, z) = if y2 > 1e-9 * l11 {
        let y = (g[(1, 2)] - x2 * x) / y2;
        let z = if cfg.is_coplanar() {
            0.0
        } else {
            (g[(2, 2)] - x * x - y * y).max(0.0).sqrt()
        };
        (y, z)
    } else {
        // v2 is collinear with v1; the rest of v lies in the second axis
        ((g[(2, 2)] - x * x).max(0.0).sqrt(), 0.0)
    };
    Ok(Embedding {
        v1: [l11, 0.0, 0.0],
        v2: [x2, y2, 0.0],
        v: [x, y, z],
    })
}

/// Azimuth `theta` of `v2`, azimuth `alpha` and colatitude `phi` of `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleSet {
    pub theta: f64,
    pub alpha: f64,
    pub phi: f64,
}

impl AngleSet {
    pub fn normals(&self) -> [[f64; 3]; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sa, ca) = self.alpha.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [[1.0, 0.0, 0.0], [ct, st, 0.0], [sp * ca, sp * sa, cp]]
    }
}

pub fn tetra_angles(cfg: &TetrahedronConfig) -> Result<AngleSet> {
    let e = embed(cfg)?;
    Ok(AngleSet {
        theta: e.v2[1].atan2(e.v2[0]),
        alpha: e.v[1].atan2(e.v[0]),
        phi: e.v[0].hypot(e.v[1]).atan2(e.v[2]),
    })
}

/// The closed-form angle expressions obtained from the law of cosines.
///
/// The `alpha` expression only determines `|alpha|`, and the `phi`
/// expression yields the elevation of `v` above the first two axes, which is
/// converted here to the colatitude. Returns `None` where the expressions
/// divide by zero (`sin θ = 0` or a right angle between `v1` and `v`).
pub fn closed_form_angles(cfg: &TetrahedronConfig) -> Option<AngleSet> {
    let TetrahedronConfig {
        d1,
        d2,
        d12,
        i,
        j,
        h,
    } = *cfg;
    let (d1, d2, d12, i, j, h) = (
        d1 as f64, d2 as f64, d12 as f64, i as f64, j as f64, h as f64,
    );
    if d1 <= 0.0 || d2 <= 0.0 || i <= 0.0 {
        return None;
    }
    let ct = ((d1 + d2 - d12) / (2.0 * (d1 * d2).sqrt())).clamp(-1.0, 1.0);
    let st = (1.0 - ct * ct).sqrt();
    let p = i + d1 - j;
    let q = i + d2 - h;
    if st < 1e-12 || p.abs() < 1e-12 {
        return None;
    }
    let alpha_num = (p * p * ct * ct + d1 * q * q / d2 - 2.0 * d1.sqrt() * ct * p * q / d2.sqrt())
        .max(0.0)
        .sqrt();
    let alpha = (alpha_num / (p * st)).atan();
    let elev_num = (4.0 * i * st * st - p * p / d1 - q * q / d2
        + 2.0 * ct * p * q / (d1 * d2).sqrt())
    .max(0.0)
    .sqrt();
    let elevation = (elev_num / (2.0 * i.sqrt() * st)).clamp(-1.0, 1.0).asin();
    Some(AngleSet {
        theta: ct.acos(),
        alpha,
        phi: FRAC_PI_2 - elevation,
    })
}

/// The fourth corner `c1 + c` of the rectangle spanned at the origin by two
/// binary codewords with disjoint supports, or `None` if they overlap, are
/// equal, or either is zero.
pub fn complete_rectangle(c1: &Codeword, c: &Codeword) -> Option<Codeword> {
    if c1.len() != c.len() || c1.is_zero() || c.is_zero() || c1.symbols == c.symbols {
        return None;
    }
    if c1.symbols.iter().chain(&c.symbols).any(|&s| s > 1) {
        return None;
    }
    let sum: Vec<u8> = c1
        .symbols
        .iter()
        .zip(&c.symbols)
        .map(|(a, b)| a ^ b)
        .collect();
    let corner = Codeword::new(sum);
    (c1.weight() + c.weight() == corner.weight()).then_some(corner)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuadrupleShape {
    Tetrahedron,
    Rectangle,
}

/// Shape of four distinct binary codewords: a solid tetrahedron, or, when
/// they are coplanar, a rectangle. A coplanar set that is not a rectangle
/// is reported as a consistency error.
pub fn classify_quadruple(
    c0: &Codeword,
    c1: &Codeword,
    c2: &Codeword,
    c3: &Codeword,
) -> Result<QuadrupleShape> {
    let pts = [c0, c1, c2, c3];
    for a in 0..4 {
        for b in a + 1..4 {
            if pts[a].symbols == pts[b].symbols {
                return Err(Error::InvalidArgument("codewords must be distinct".into()));
            }
        }
    }
    classify_config(&TetrahedronConfig::from_points(c0, c1, c2, c3)?)
}

/// Shape of four points given by their pairwise distances, with the same
/// rules as [`classify_quadruple`].
pub fn classify_config(cfg: &TetrahedronConfig) -> Result<QuadrupleShape> {
    if !cfg.is_realizable() {
        return Err(Error::NonRealizable(format!(
            "{cfg:?} has an indefinite Gram matrix"
        )));
    }
    if !cfg.is_coplanar() {
        return Ok(QuadrupleShape::Tetrahedron);
    }
    let t = cfg.distance_table();
    // the three ways to split six edges into opposite pairs
    let pairs = [(t[0][1], t[2][3]), (t[0][2], t[1][3]), (t[0][3], t[1][2])];
    for diag in 0..3 {
        let (s1, s2) = match diag {
            0 => (pairs[1], pairs[2]),
            1 => (pairs[0], pairs[2]),
            _ => (pairs[0], pairs[1]),
        };
        let (e1, e2) = pairs[diag];
        if s1.0 == s1.1 && s2.0 == s2.1 && e1 == e2 && e1 == s1.0 + s2.0 {
            return Ok(QuadrupleShape::Rectangle);
        }
    }
    Err(Error::Consistency(format!(
        "coplanar codewords with distances {cfg:?} do not form a rectangle"
    )))
}

/// Largest code [`audit_code`] will walk through.
pub const AUDIT_CAP: u64 = 1 << 7;

/// Counts from an exhaustive walk over the codeword triples and quadruples
/// of a binary code.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GeometryAudit {
    pub codewords: u64,
    /// Vertex angles checked, three per unordered triple.
    pub angles: u64,
    pub obtuse: u64,
    pub right_angles: u64,
    pub incomplete_rectangles: u64,
    pub quadruples: u64,
    pub tetrahedra: u64,
    pub rectangles: u64,
    pub inconsistent: u64,
}

impl GeometryAudit {
    pub fn passed(&self) -> bool {
        self.obtuse == 0 && self.incomplete_rectangles == 0 && self.inconsistent == 0
    }

    fn merge(mut self, other: GeometryAudit) -> Self {
        self.angles += other.angles;
        self.obtuse += other.obtuse;
        self.right_angles += other.right_angles;
        self.incomplete_rectangles += other.incomplete_rectangles;
        self.quadruples += other.quadruples;
        self.tetrahedra += other.tetrahedra;
        self.rectangles += other.rectangles;
        self.inconsistent += other.inconsistent;
        self
    }
}

/// Checks every codeword triple for non-obtuseness (and rectangle completion
/// at right angles) and classifies every codeword quadruple.
pub fn audit_code(code: &LinearCode, exec: Execution) -> Result<GeometryAudit> {
    if !code.is_binary() {
        return Err(Error::NonBinary(code.q()));
    }
    let words = code.enumerate_codewords_capped(AUDIT_CAP)?;
    let m = words.len();
    let mut dist = vec![0usize; m * m];
    for a in 0..m {
        for b in 0..m {
            dist[a * m + b] = words[a].distance(&words[b])?;
        }
    }
    let d = |a: usize, b: usize| dist[a * m + b];
    let parts = map_range(exec, 0..m as u64, |a| {
        let a = a as usize;
        let mut audit = GeometryAudit::default();
        let mut shapes: HashMap<[usize; 6], Option<QuadrupleShape>> = HashMap::new();
        for b in a + 1..m {
            for c in b + 1..m {
                for (o, p, q) in [(a, b, c), (b, a, c), (c, a, b)] {
                    audit.angles += 1;
                    let cfg = TriangleConfig::new(d(o, p), d(o, q), d(p, q));
                    if !is_non_obtuse(&cfg) {
                        audit.obtuse += 1;
                    } else if cfg.d1 + cfg.i == cfg.j {
                        audit.right_angles += 1;
                        let corner = code
                            .sub(&words[p], &words[o])
                            .ok()
                            .zip(code.sub(&words[q], &words[o]).ok())
                            .and_then(|(u, v)| complete_rectangle(&u, &v))
                            .and_then(|r| code.add(&r, &words[o]).ok());
                        if !corner.is_some_and(|w| code.contains(&w.symbols)) {
                            audit.incomplete_rectangles += 1;
                        }
                    }
                }
                for e in c + 1..m {
                    audit.quadruples += 1;
                    let key = [d(a, b), d(a, c), d(b, c), d(a, e), d(b, e), d(c, e)];
                    let shape = *shapes.entry(key).or_insert_with(|| {
                        let cfg =
                            TetrahedronConfig::new(key[0], key[1], key[2], key[3], key[4], key[5]);
                        classify_config(&cfg).ok()
                    });
                    match shape {
                        Some(QuadrupleShape::Tetrahedron) => audit.tetrahedra += 1,
                        Some(QuadrupleShape::Rectangle) => audit.rectangles += 1,
                        None => audit.inconsistent += 1,
                    }
                }
            }
        }
        audit
    });
    let mut total = parts
        .into_iter()
        .fold(GeometryAudit::default(), GeometryAudit::merge);
    total.codewords = m as u64;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> Codeword {
        Codeword::new(s.bytes().map(|b| b - b'0').collect())
    }

    #[test]
    fn modulation() {
        assert_eq!(
            bpsk_modulate(&cw("1010")).unwrap().signals,
            vec![-1.0, 1.0, -1.0, 1.0]
        );
        assert_eq!(bpsk_modulate(&cw("0000000")).unwrap().squared_norm(), 7.0);
        assert!(bpsk_modulate(&cw("0120")).is_err());
        assert_eq!(euclid_from_hamming(4), 4.0);
        assert!((euclid_from_hamming(3) - 3.4641016151377544).abs() < 1e-15);
    }

    #[test]
    fn triangle_cosines() {
        assert!(
            (triangle_cosine(&TriangleConfig::new(3, 3, 4)).unwrap() - 1.0 / 3.0).abs() < 1e-15
        );
        assert_eq!(triangle_cosine(&TriangleConfig::new(3, 4, 7)).unwrap(), 0.0);
        assert_eq!(triangle_cosine(&TriangleConfig::new(4, 4, 0)).unwrap(), 1.0);
        assert!(triangle_cosine(&TriangleConfig::new(0, 4, 4)).is_err());
        assert!(is_non_obtuse(&TriangleConfig::new(3, 4, 7)));
        assert!(!is_non_obtuse(&TriangleConfig::new(1, 1, 5)));
        assert!(!TriangleConfig::new(1, 1, 5).is_realizable());
    }

    #[test]
    fn regular_tetrahedron() {
        let a = tetra_angles(&TetrahedronConfig::new(2, 2, 2, 2, 2, 2)).unwrap();
        assert!((a.theta - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
        for v in a.normals() {
            let norm: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reconstruction() {
        let cfg = TetrahedronConfig::new(3, 3, 4, 3, 4, 4);
        let e = embed(&cfg).unwrap();
        let want = [3.0, 3.0, 4.0, 3.0, 4.0, 4.0];
        for (g, w) in e.distances().iter().zip(want) {
            assert!((g - w).abs() < 1e-9 * w);
        }
        assert!(e.v[2] > 0.0);
        let nonrealizable = TetrahedronConfig::new(1, 1, 1, 1, 4, 4);
        assert!(matches!(
            embed(&nonrealizable),
            Err(Error::NonRealizable(_))
        ));
    }

    #[test]
    fn rectangle_angles() {
        // c1 = 1100, c = 0011, c2 = 1111
        let cfg = TetrahedronConfig::new(2, 4, 2, 2, 4, 2);
        assert!(cfg.is_coplanar());
        let a = tetra_angles(&cfg).unwrap();
        assert!((a.phi - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_embedding_off_boundary() {
        let cfg = TetrahedronConfig::new(3, 3, 4, 3, 4, 4);
        let a = tetra_angles(&cfg).unwrap();
        let r = closed_form_angles(&cfg).unwrap();
        assert!((a.theta - r.theta).abs() < 1e-12);
        assert!((a.alpha.abs() - r.alpha).abs() < 1e-12);
        assert!((a.phi - r.phi).abs() < 1e-9);
    }

    #[test]
    fn rectangles() {
        assert_eq!(
            complete_rectangle(&cw("1100"), &cw("0011")),
            Some(cw("1111"))
        );
        assert_eq!(complete_rectangle(&cw("1100"), &cw("0110")), None);
        let shape = classify_quadruple(&cw("0000"), &cw("1100"), &cw("0011"), &cw("1111")).unwrap();
        assert_eq!(shape, QuadrupleShape::Rectangle);
        let shape = classify_quadruple(
            &cw("0000000"),
            &cw("1000110"),
            &cw("0100011"),
            &cw("0010111"),
        )
        .unwrap();
        assert_eq!(shape, QuadrupleShape::Tetrahedron);
        let square = classify_quadruple(&cw("00"), &cw("10"), &cw("11"), &cw("01"));
        assert_eq!(square.unwrap(), QuadrupleShape::Rectangle);
        // planar parallelogram with a 60 degree corner
        let rhombus = TetrahedronConfig::new(1, 1, 1, 3, 1, 1);
        assert!(matches!(
            classify_config(&rhombus),
            Err(Error::Consistency(_))
        ));
        assert!(classify_quadruple(&cw("00"), &cw("00"), &cw("11"), &cw("01")).is_err());
    }

    #[test]
    fn permutation_preserves_distances() {
        let cfg = TetrahedronConfig::new(3, 4, 7, 3, 6, 4);
        assert_eq!(cfg.permuted([1, 2, 3]), cfg);
        let p = cfg.permuted([2, 1, 3]);
        assert_eq!((p.d1, p.d2, p.j, p.h), (cfg.d2, cfg.d1, cfg.h, cfg.j));
        assert_eq!(p.permuted([2, 1, 3]), cfg);
    }

    #[test]
    fn hamming_audit_is_clean() {
        let code = LinearCode::builtin("hamming74").unwrap();
        let seq = audit_code(&code, Execution::Sequential).unwrap();
        assert!(seq.passed());
        assert_eq!(
            (seq.codewords, seq.angles, seq.quadruples),
            (16, 1680, 1820)
        );
        assert_eq!(seq.tetrahedra + seq.rectangles, 1820);
        assert!(seq.rectangles > 0 && seq.right_angles > 0);
        assert_eq!(audit_code(&code, Execution::Parallel).unwrap(), seq);
        let ternary = LinearCode::parse("t", "3 2 1\n1 2").unwrap();
        assert!(audit_code(&ternary, Execution::Sequential).is_err());
    }
}
