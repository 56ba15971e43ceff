//! Union-type upper bounds on the ML frame-error probability of binary codes
//! over BPSK-AWGN: the conventional union bound and the second- and
//! third-order Bonferroni bounds driven by the triangle and tetrahedron
//! spectra.

use crate::code::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::error_prob::{
    pairwise_error_prob, quadruple_error_prob, triplet_error_prob, NoiseModel,
};
use crate::geometry::TetrahedronConfig;
use crate::par::{map_slice, Execution};
use crate::spectra::{teef, tref, wef, TetrahedronSpectrum, TriangleSpectrum, WeightSpectrum};
use crate::trellis::Trellis;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// Largest code for which every reference choice is tried.
pub const EXHAUSTIVE_CAP: u128 = 1 << 12;

fn require_binary(q: u32) -> Result<()> {
    if q == 2 {
        Ok(())
    } else {
        Err(Error::NonBinary(q))
    }
}

/// `Σ_{i≥1} A_i Q(√i/σ)`.
pub fn union_bound(ws: &WeightSpectrum, noise: NoiseModel) -> Result<f64> {
    require_binary(ws.q)?;
    let mut total = 0.0;
    for (e, &a) in ws.poly.terms() {
        if e[0] >= 1 {
            total += a as f64 * pairwise_error_prob(e[0] as usize, noise)?;
        }
    }
    Ok(total)
}

/// `−(2^k − 3) Q(√d1/σ) + Σ_{i,j≥1} B_{i,j} p3(d1, i, j)`.
pub fn triangle_bound(ts: &TriangleSpectrum, noise: NoiseModel) -> Result<f64> {
    require_binary(ts.q)?;
    if ts.d1 == 0 {
        return Err(Error::InvalidReference("d1 must be at least 1".into()));
    }
    if ts.poly.is_empty() {
        return Err(Error::InvalidArgument("empty triangle spectrum".into()));
    }
    let mut total = -(2f64.powi(ts.k as i32) - 3.0) * pairwise_error_prob(ts.d1, noise)?;
    for (e, &b) in ts.poly.terms() {
        if e[0] >= 1 && e[1] >= 1 {
            total += b as f64 * triplet_error_prob(ts.d1, e[0] as usize, e[1] as usize, noise)?;
        }
    }
    Ok(total)
}

/// `−(2^k − 4) p3(d1, d2, d12) + Σ_{i,j,h≥1} C_{i,j,h} p4(d1, d2, d12, i, j, h)`.
pub fn tetrahedron_bound(tes: &TetrahedronSpectrum, noise: NoiseModel) -> Result<f64> {
    require_binary(tes.q)?;
    if tes.d1 == 0 || tes.d2 == 0 || tes.d12 == 0 {
        return Err(Error::InvalidReference(
            "d1, d2 and d12 must be at least 1".into(),
        ));
    }
    if tes.poly.is_empty() {
        return Err(Error::InvalidArgument("empty tetrahedron spectrum".into()));
    }
    let mut total =
        -(2f64.powi(tes.k as i32) - 4.0) * triplet_error_prob(tes.d1, tes.d2, tes.d12, noise)?;
    for (e, &c) in tes.poly.terms() {
        if e.iter().all(|&x| x >= 1) {
            let cfg = TetrahedronConfig::new(
                tes.d1,
                tes.d2,
                tes.d12,
                e[0] as usize,
                e[1] as usize,
                e[2] as usize,
            );
            total += c as f64 * quadruple_error_prob(&cfg, noise)?;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BoundKind {
    Union,
    Triangle,
    Tetrahedron,
    Simulation,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Union => "union",
            BoundKind::Triangle => "triangle",
            BoundKind::Tetrahedron => "tetra",
            BoundKind::Simulation => "simulation",
        }
    }

    /// Number of reference codewords the bound needs.
    pub fn reference_count(self) -> usize {
        match self {
            BoundKind::Triangle => 1,
            BoundKind::Tetrahedron => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(BoundKind::Union),
            "triangle" => Ok(BoundKind::Triangle),
            "tetra" | "tetrahedron" => Ok(BoundKind::Tetrahedron),
            "simulation" => Ok(BoundKind::Simulation),
            _ => Err(Error::Parse(format!("unknown bound kind `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReferenceStrategy {
    /// Lowest-weight nonzero codewords, ties broken lexicographically.
    MinWeight,
    /// Caller-supplied codewords.
    Explicit(Vec<Codeword>),
    /// The choice minimizing the bound at the given noise level.
    ExhaustiveBest(NoiseModel),
}

impl ReferenceStrategy {
    pub fn tag(&self) -> &'static str {
        match self {
            ReferenceStrategy::MinWeight => "min-weight",
            ReferenceStrategy::Explicit(_) => "explicit",
            ReferenceStrategy::ExhaustiveBest(_) => "exhaustive-best",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceChoice {
    pub strategy: &'static str,
    #[serde(serialize_with = "serialize_words")]
    pub refs: Vec<Codeword>,
    pub d1: usize,
    pub d2: Option<usize>,
    pub d12: Option<usize>,
}

fn serialize_words<S: serde::Serializer>(
    words: &[Codeword],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(words.iter().map(|w| w.to_string()))
}

impl ReferenceChoice {
    fn from_refs(strategy: &'static str, refs: Vec<Codeword>) -> Result<Self> {
        let d1 = refs[0].weight();
        let (d2, d12) = match refs.get(1) {
            Some(c2) => (Some(c2.weight()), Some(refs[0].distance(c2)?)),
            None => (None, None),
        };
        Ok(ReferenceChoice {
            strategy,
            refs,
            d1,
            d2,
            d12,
        })
    }
}

fn nonzero_by_weight(code: &LinearCode) -> Result<Vec<Codeword>> {
    let mut words: Vec<Codeword> = code
        .enumerate_codewords()?
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    words.sort_by(|a, b| {
        a.weight()
            .cmp(&b.weight())
            .then_with(|| a.symbols.cmp(&b.symbols))
    });
    Ok(words)
}

fn validate_explicit(code: &LinearCode, refs: &[Codeword]) -> Result<()> {
    for r in refs {
        if r.len() != code.n() {
            return Err(Error::LengthMismatch {
                expected: code.n(),
                got: r.len(),
            });
        }
        if !code.contains(&r.symbols) {
            return Err(Error::NotACodeword);
        }
        if r.is_zero() {
            return Err(Error::InvalidReference(
                "reference codewords must be nonzero".into(),
            ));
        }
    }
    if refs.len() == 2 && refs[0].symbols == refs[1].symbols {
        return Err(Error::InvalidReference(
            "reference codewords must be distinct".into(),
        ));
    }
    Ok(())
}

/// Picks one (`count = 1`) or two (`count = 2`) reference codewords.
pub fn select_references(
    code: &LinearCode,
    count: usize,
    strategy: &ReferenceStrategy,
) -> Result<ReferenceChoice> {
    if !(1..=2).contains(&count) {
        return Err(Error::InvalidArgument(format!(
            "reference count must be 1 or 2, got {count}"
        )));
    }
    match strategy {
        ReferenceStrategy::Explicit(refs) => {
            if refs.len() != count {
                return Err(Error::InvalidReference(format!(
                    "expected {count} reference codewords, got {}",
                    refs.len()
                )));
            }
            validate_explicit(code, refs)?;
            ReferenceChoice::from_refs(strategy.tag(), refs.clone())
        }
        ReferenceStrategy::MinWeight => {
            let words = nonzero_by_weight(code)?;
            if words.len() < count + 1 {
                return Err(unsatisfiable(code, count));
            }
            ReferenceChoice::from_refs(strategy.tag(), words[..count].to_vec())
        }
        ReferenceStrategy::ExhaustiveBest(noise) => {
            require_binary(code.q())?;
            if code.size() > EXHAUSTIVE_CAP {
                return Err(Error::EnumerationCap {
                    count: code.size(),
                    cap: EXHAUSTIVE_CAP as u64,
                });
            }
            let words = nonzero_by_weight(code)?;
            if words.len() < count + 1 {
                return Err(unsatisfiable(code, count));
            }
            let trellis = Trellis::build(code);
            let mut best: Option<(f64, Vec<Codeword>)> = None;
            let mut consider = |refs: Vec<Codeword>, value: f64| {
                if best.as_ref().is_none_or(|(b, _)| value < *b) {
                    best = Some((value, refs));
                }
            };
            if count == 1 {
                for c1 in &words {
                    let v = triangle_bound(&tref(&trellis, c1)?, *noise)?;
                    consider(vec![c1.clone()], v);
                }
            } else {
                for (a, c1) in words.iter().enumerate() {
                    for c2 in &words[a + 1..] {
                        let v = tetrahedron_bound(&teef(&trellis, c1, c2)?, *noise)?;
                        consider(vec![c1.clone(), c2.clone()], v);
                    }
                }
            }
            let (_, refs) = best.expect("at least one candidate");
            ReferenceChoice::from_refs(strategy.tag(), refs)
        }
    }
}

fn unsatisfiable(code: &LinearCode, count: usize) -> Error {
    Error::InvalidReference(format!(
        "{} has too few nonzero codewords for a {} bound",
        code.name(),
        if count == 1 {
            "triangle"
        } else {
            "tetrahedron"
        }
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GridUnit {
    EbN0Db,
    Sigma,
}

impl FromStr for GridUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ebn0-db" => Ok(GridUnit::EbN0Db),
            "sigma" => Ok(GridUnit::Sigma),
            _ => Err(Error::Parse(format!("unknown grid unit `{s}`"))),
        }
    }
}

impl GridUnit {
    pub fn noise(self, value: f64, n: usize, k: usize) -> Result<NoiseModel> {
        match self {
            GridUnit::EbN0Db => NoiseModel::from_ebn0_db(value, n, k),
            GridUnit::Sigma => NoiseModel::new(value),
        }
    }
}

/// Parses `start:stop:step` into the inclusive grid `start, start + step, …`
/// (a bare number is a one-point grid).
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad grid `{text}`")))
        })
        .collect::<Result<_>>()?;
    if parts.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parse(format!("bad grid `{text}`")));
    }
    match parts[..] {
        [x] => Ok(vec![x]),
        [start, stop, step] => {
            if step <= 0.0 || stop < start {
                return Err(Error::InvalidArgument(format!(
                    "grid `{text}` needs step > 0 and stop >= start"
                )));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(Error::InvalidArgument(format!(
                    "grid `{text}` has too many points"
                )));
            }
            Ok((0..count).map(|k| start + k as f64 * step).collect())
        }
        _ => Err(Error::Parse(format!(
            "grid `{text}` must be start:stop:step"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundPoint {
    pub sigma: f64,
    pub ebn0_db: f64,
    pub value_raw: f64,
    pub value_clamped: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCurve {
    pub kind: BoundKind,
    pub code_id: String,
    pub references: Option<ReferenceChoice>,
    pub points: Vec<BoundPoint>,
}

#[derive(Serialize)]
struct CurveRow<'a> {
    kind: &'a str,
    sigma: f64,
    ebn0_db: f64,
    value_raw: f64,
    value_clamped: f64,
    ref_d1: Option<usize>,
    ref_d2: Option<usize>,
    ref_d12: Option<usize>,
}

impl BoundCurve {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value_raw).collect()
    }

    /// CSV with columns `kind, sigma, ebn0_db, value_raw, value_clamped,
    /// ref_d1, ref_d2, ref_d12` (empty for unused references).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let r = self.references.as_ref();
        for p in &self.points {
            w.serialize(CurveRow {
                kind: self.kind.name(),
                sigma: p.sigma,
                ebn0_db: p.ebn0_db,
                value_raw: p.value_raw,
                value_clamped: p.value_clamped,
                ref_d1: r.map(|r| r.d1),
                ref_d2: r.and_then(|r| r.d2),
                ref_d12: r.and_then(|r| r.d12),
            })
            .map_err(csv_error)?;
        }
        if self.points.is_empty() {
            w.write_record([
                "kind",
                "sigma",
                "ebn0_db",
                "value_raw",
                "value_clamped",
                "ref_d1",
                "ref_d2",
                "ref_d12",
            ])
            .map_err(csv_error)?;
        }
        w.flush().map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

/// Side-by-side comparison of curves on the same grid: `sigma, ebn0_db`
/// followed by one raw-value column per curve, named by its kind.
pub fn write_merged_csv<W: Write>(curves: &[BoundCurve], out: W) -> Result<()> {
    let Some(first) = curves.first() else {
        return Err(Error::InvalidArgument("no curves to merge".into()));
    };
    if curves.iter().any(|c| c.points.len() != first.points.len()) {
        return Err(Error::InvalidArgument("curves have different grids".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["sigma".to_string(), "ebn0_db".to_string()];
    header.extend(curves.iter().map(|c| c.kind.name().to_string()));
    w.write_record(&header).map_err(csv_error)?;
    for (k, p) in first.points.iter().enumerate() {
        let mut row = vec![p.sigma.to_string(), p.ebn0_db.to_string()];
        row.extend(curves.iter().map(|c| c.points[k].value_raw.to_string()));
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv output failed: {e}"))
}

/// The bound of the given kind at every grid point.
pub fn bound_curve(
    code: &LinearCode,
    kind: BoundKind,
    references: Option<&ReferenceChoice>,
    grid: &[f64],
    unit: GridUnit,
) -> Result<BoundCurve> {
    bound_curve_with(code, kind, references, grid, unit, Execution::default())
}

pub fn bound_curve_with(
    code: &LinearCode,
    kind: BoundKind,
    references: Option<&ReferenceChoice>,
    grid: &[f64],
    unit: GridUnit,
    exec: Execution,
) -> Result<BoundCurve> {
    require_binary(code.q())?;
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let (n, k) = (code.n(), code.k());
    let noises: Vec<NoiseModel> = grid
        .iter()
        .map(|&g| unit.noise(g, n, k))
        .collect::<Result<_>>()?;
    let trellis = Trellis::build(code);
    let refs = match kind {
        BoundKind::Union => None,
        BoundKind::Triangle | BoundKind::Tetrahedron => Some(match references {
            Some(r) => r.clone(),
            None => select_references(code, kind.reference_count(), &ReferenceStrategy::MinWeight)?,
        }),
        BoundKind::Simulation => {
            return Err(Error::InvalidArgument(
                "simulation curves come from the simulator".into(),
            ))
        }
    };
    if let Some(r) = &refs {
        if r.refs.len() != kind.reference_count() {
            return Err(Error::InvalidReference(format!(
                "{kind} bound needs {} references, got {}",
                kind.reference_count(),
                r.refs.len()
            )));
        }
    }
    let evaluate: Box<dyn Fn(NoiseModel) -> Result<f64> + Sync + Send> = match kind {
        BoundKind::Union => {
            let ws = wef(&trellis)?;
            Box::new(move |nm| union_bound(&ws, nm))
        }
        BoundKind::Triangle => {
            let ts = tref(&trellis, &refs.as_ref().unwrap().refs[0])?;
            Box::new(move |nm| triangle_bound(&ts, nm))
        }
        _ => {
            let r = &refs.as_ref().unwrap().refs;
            let tes = teef(&trellis, &r[0], &r[1])?;
            Box::new(move |nm| tetrahedron_bound(&tes, nm))
        }
    };
    let points = map_slice(exec, &noises, |nm| {
        evaluate(*nm).map(|v| BoundPoint {
            sigma: nm.sigma(),
            ebn0_db: nm.ebn0_db(n, k),
            value_raw: v,
            value_clamped: v.clamp(0.0, 1.0),
        })
    })
    .into_iter()
    .collect::<Result<_>>()?;
    Ok(BoundCurve {
        kind,
        code_id: code.name().to_string(),
        references: refs,
        points,
    })
}
