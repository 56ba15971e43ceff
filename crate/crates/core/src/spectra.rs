//! Weight, triangle and tetrahedron enumerating functions.
//!
//! All three are computed by one forward recursion over the trellis: the
//! polynomial at state `s` of stage `t + 1` is the sum over incoming branches
//! `b` of the polynomial at the branch origin times the branch monomial
//! `X^i Y^j Z^h`, where `i`, `j`, `h` are the Hamming weights of the branch
//! label minus the zero, first-reference and second-reference labels at that
//! stage. The enumerating function is the polynomial at the final zero state.

use crate::code::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::par::{map_range, Execution};
use crate::poly::{CountingPolynomial, Exponent, Var};
use crate::trellis::{Trellis, TrellisProfile};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrum {
    pub code_id: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub poly: CountingPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSpectrum {
    pub code_id: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub ref1: Codeword,
    pub d1: usize,
    pub poly: CountingPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetrahedronSpectrum {
    pub code_id: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub ref1: Codeword,
    pub ref2: Codeword,
    pub d1: usize,
    pub d2: usize,
    pub d12: usize,
    pub poly: CountingPolynomial,
}

impl WeightSpectrum {
    /// `A_i`.
    pub fn count(&self, i: usize) -> u128 {
        self.poly.coefficient(&[i as u16, 0, 0])
    }
}

impl TriangleSpectrum {
    /// `B_{i,j}`.
    pub fn count(&self, i: usize, j: usize) -> u128 {
        self.poly.coefficient(&[i as u16, j as u16, 0])
    }
}

impl TetrahedronSpectrum {
    /// `C_{i,j,h}`.
    pub fn count(&self, i: usize, j: usize, h: usize) -> u128 {
        self.poly.coefficient(&[i as u16, j as u16, h as u16])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spectrum {
    Weight(WeightSpectrum),
    Triangle(TriangleSpectrum),
    Tetrahedron(TetrahedronSpectrum),
}

impl From<WeightSpectrum> for Spectrum {
    fn from(s: WeightSpectrum) -> Self {
        Spectrum::Weight(s)
    }
}

impl From<TriangleSpectrum> for Spectrum {
    fn from(s: TriangleSpectrum) -> Self {
        Spectrum::Triangle(s)
    }
}

impl From<TetrahedronSpectrum> for Spectrum {
    fn from(s: TetrahedronSpectrum) -> Self {
        Spectrum::Tetrahedron(s)
    }
}

fn validate_refs(code: &LinearCode, refs: &[Codeword]) -> Result<()> {
    if refs.len() > 2 {
        return Err(Error::InvalidReference(format!(
            "at most two reference codewords, got {}",
            refs.len()
        )));
    }
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
    if let [a, b] = refs {
        if a.symbols == b.symbols {
            return Err(Error::InvalidReference(
                "reference codewords must be distinct".into(),
            ));
        }
    }
    Ok(())
}

/// The enumerating function selected by the number of references (0, 1 or 2).
pub fn forward_spectrum(trellis: &Trellis, refs: &[Codeword]) -> Result<CountingPolynomial> {
    forward_spectrum_with(trellis, refs, Execution::default())
}

/// As [`forward_spectrum`], with explicit control over per-stage parallelism.
/// The result does not depend on `exec`.
pub fn forward_spectrum_with(
    trellis: &Trellis,
    refs: &[Codeword],
    exec: Execution,
) -> Result<CountingPolynomial> {
    let code = trellis.code();
    validate_refs(code, refs)?;
    let labels: Vec<Vec<u8>> = refs
        .iter()
        .map(|r| trellis.codeword_labels(r))
        .collect::<Result<_>>()?;
    let arity = refs.len() + 1;

    let mut alpha = vec![CountingPolynomial::one(arity)];
    for (t, section) in trellis.sections().iter().enumerate() {
        let reference: Vec<u8> = labels.iter().map(|l| l[t]).collect();
        let next = map_range(exec, 0..trellis.state_count(t + 1) as u64, |s| {
            let mut acc = CountingPolynomial::zero(arity);
            for b in section.incoming(s as u32) {
                let mut gamma: Exponent = [(b.label != 0) as u16, 0, 0];
                for (slot, &r) in reference.iter().enumerate() {
                    gamma[slot + 1] = (b.label != r) as u16;
                }
                acc.add_shifted(&alpha[b.from as usize], gamma)?;
            }
            Ok(acc)
        });
        alpha = next.into_iter().collect::<Result<_>>()?;
    }
    Ok(alpha.swap_remove(0))
}

/// Independent oracle: histogram of `(W(c), W(c − c1), W(c − c2))` over all codewords.
pub fn brute_force_spectrum(code: &LinearCode, refs: &[Codeword]) -> Result<CountingPolynomial> {
    if refs.len() > 2 {
        return Err(Error::InvalidReference("at most two references".into()));
    }
    if refs.iter().any(|r| !code.contains(&r.symbols)) {
        return Err(Error::NotACodeword);
    }
    let words = code.enumerate_codewords()?;
    let mut poly = CountingPolynomial::zero(refs.len() + 1);
    for c in &words {
        let mut e: Exponent = [c.weight() as u16, 0, 0];
        for (slot, r) in refs.iter().enumerate() {
            e[slot + 1] = c.distance(r)? as u16;
        }
        poly.add_term(e, 1)?;
    }
    Ok(poly)
}

pub fn wef(trellis: &Trellis) -> Result<WeightSpectrum> {
    let code = trellis.code();
    Ok(WeightSpectrum {
        code_id: code.name().to_string(),
        q: code.q(),
        n: code.n(),
        k: code.k(),
        poly: forward_spectrum(trellis, &[])?,
    })
}

pub fn tref(trellis: &Trellis, c1: &Codeword) -> Result<TriangleSpectrum> {
    let code = trellis.code();
    let poly = forward_spectrum(trellis, std::slice::from_ref(c1))?;
    Ok(TriangleSpectrum {
        code_id: code.name().to_string(),
        q: code.q(),
        n: code.n(),
        k: code.k(),
        ref1: c1.clone(),
        d1: c1.weight(),
        poly,
    })
}

pub fn teef(trellis: &Trellis, c1: &Codeword, c2: &Codeword) -> Result<TetrahedronSpectrum> {
    let code = trellis.code();
    let poly = forward_spectrum(trellis, &[c1.clone(), c2.clone()])?;
    Ok(TetrahedronSpectrum {
        code_id: code.name().to_string(),
        q: code.q(),
        n: code.n(),
        k: code.k(),
        ref1: c1.clone(),
        ref2: c2.clone(),
        d1: c1.weight(),
        d2: c2.weight(),
        d12: c1.distance(c2)?,
        poly,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn code_size(q: u32, k: usize) -> Option<u128> {
    (q as u128).checked_pow(k as u32)
}

fn check_weight(
    report: &mut IdentityReport,
    poly: &CountingPolynomial,
    q: u32,
    n: usize,
    k: usize,
    tag: &str,
) {
    let size = code_size(q, k);
    let a0 = poly.coefficient(&[0, 0, 0]);
    report.push(&format!("{tag}A_0 = 1"), a0 == 1, format!("A_0 = {a0}"));
    let interior = poly.interior_mass().ok();
    report.push(
        &format!("{tag}sum A_i = q^k - 1"),
        interior.is_some() && interior == size.map(|s| s - 1),
        format!("sum = {interior:?}, q^k = {size:?}"),
    );
    if q == 2 && poly.coefficient(&[n as u16, 0, 0]) == 1 {
        let asym: Vec<usize> = (0..=n)
            .filter(|&i| {
                poly.coefficient(&[i as u16, 0, 0]) != poly.coefficient(&[(n - i) as u16, 0, 0])
            })
            .collect();
        report.push(
            &format!("{tag}A_i = A_(n-i)"),
            asym.is_empty(),
            format!("asymmetric weights: {asym:?}"),
        );
    }
}

fn check_triangle(
    report: &mut IdentityReport,
    poly: &CountingPolynomial,
    q: u32,
    n: usize,
    k: usize,
    d1: usize,
    tag: &str,
) {
    let size = code_size(q, k);
    let interior = poly.interior_mass().ok();
    report.push(
        &format!("{tag}sum B_ij = q^k - 2"),
        interior.is_some() && interior == size.map(|s| s - 2),
        format!("sum = {interior:?}, q^k = {size:?}"),
    );
    let zero_term = poly.coefficient(&[0, d1 as u16, 0]);
    let ref_term = poly.coefficient(&[d1 as u16, 0, 0]);
    report.push(
        &format!("{tag}boundary terms Y^d1 and X^d1"),
        zero_term == 1 && ref_term == 1,
        format!("B_(0,d1) = {zero_term}, B_(d1,0) = {ref_term}"),
    );
    if let Ok(w) = poly.marginalize(Var::Y) {
        check_weight(report, &w, q, n, k, &format!("{tag}Y:=1 "));
        if q == 2 && d1 == n {
            // all-one reference: c is at distance n - i from it
            let bad: Vec<(u16, u16)> = poly
                .terms()
                .filter(|(e, &c)| {
                    e[0] as usize + e[1] as usize != n || c != w.coefficient(&[e[0], 0, 0])
                })
                .map(|(e, _)| (e[0], e[1]))
                .collect();
            report.push(
                &format!("{tag}all-one reference: B_ij = A_i iff i + j = n"),
                bad.is_empty(),
                format!("offending terms: {bad:?}"),
            );
        }
    }
}

/// Verifies the sum identities and the structural identities that apply to
/// the spectrum's code and references. Never fails; violations are reported.
pub fn check_identities(spectrum: &Spectrum) -> IdentityReport {
    let mut report = IdentityReport::default();
    match spectrum {
        Spectrum::Weight(s) => check_weight(&mut report, &s.poly, s.q, s.n, s.k, ""),
        Spectrum::Triangle(s) => check_triangle(&mut report, &s.poly, s.q, s.n, s.k, s.d1, ""),
        Spectrum::Tetrahedron(s) => {
            let size = code_size(s.q, s.k);
            let interior = s.poly.interior_mass().ok();
            report.push(
                "sum C_ijh = q^k - 3",
                interior.is_some() && interior == size.map(|x| x - 3),
                format!("sum = {interior:?}, q^k = {size:?}"),
            );
            report.push(
                "reference distances >= 1",
                s.d1 >= 1 && s.d2 >= 1 && s.d12 >= 1,
                format!("(d1, d2, d12) = ({}, {}, {})", s.d1, s.d2, s.d12),
            );
            if let Ok(tr) = s.poly.marginalize(Var::Z) {
                check_triangle(&mut report, &tr, s.q, s.n, s.k, s.d1, "Z:=1 ");
            }
        }
    }
    report
}

#[derive(Serialize)]
struct RefJson {
    weight: usize,
}

#[derive(Serialize)]
struct TermJson {
    e: Vec<u16>,
    c: String,
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    kind: &'static str,
    q: u32,
    n: usize,
    k: usize,
    refs: Vec<RefJson>,
    d12: Option<usize>,
    terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<&'a TrellisProfile>,
}

impl Spectrum {
    pub fn poly(&self) -> &CountingPolynomial {
        match self {
            Spectrum::Weight(s) => &s.poly,
            Spectrum::Triangle(s) => &s.poly,
            Spectrum::Tetrahedron(s) => &s.poly,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Spectrum::Weight(_) => "wef",
            Spectrum::Triangle(_) => "tref",
            Spectrum::Tetrahedron(_) => "teef",
        }
    }

    /// JSON document with terms in lexicographic exponent order and
    /// coefficients as decimal strings.
    pub fn to_json(&self, profile: Option<&TrellisProfile>) -> serde_json::Value {
        let (q, n, k, refs, d12) = match self {
            Spectrum::Weight(s) => (s.q, s.n, s.k, vec![], None),
            Spectrum::Triangle(s) => (s.q, s.n, s.k, vec![s.d1], None),
            Spectrum::Tetrahedron(s) => (s.q, s.n, s.k, vec![s.d1, s.d2], Some(s.d12)),
        };
        let poly = self.poly();
        let doc = SpectrumJson {
            kind: self.kind(),
            q,
            n,
            k,
            refs: refs.into_iter().map(|weight| RefJson { weight }).collect(),
            d12,
            terms: poly
                .terms()
                .map(|(e, c)| TermJson {
                    e: e[..poly.arity()].to_vec(),
                    c: c.to_string(),
                })
                .collect(),
            profile,
        };
        serde_json::to_value(doc).expect("spectrum serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> (LinearCode, Trellis, Vec<Codeword>) {
        let code = LinearCode::builtin("hamming74").unwrap();
        let t = Trellis::build(&code);
        let words = code.enumerate_codewords().unwrap();
        (code, t, words)
    }

    fn poly(s: &str, arity: usize) -> CountingPolynomial {
        CountingPolynomial::parse(s, arity).unwrap()
    }

    #[test]
    fn hamming_wef() {
        let (_, t, _) = hamming();
        let w = wef(&t).unwrap();
        assert_eq!(w.poly, poly("1 + 7X^3 + 7X^4 + X^7", 1));
        assert_eq!(w.count(3), 7);
        assert!(check_identities(&w.into()).all_passed());
    }

    #[test]
    fn repetition_tref() {
        let code = LinearCode::builtin("rep3").unwrap();
        let t = Trellis::build(&code);
        let ones = code.codeword_at(1).unwrap();
        assert_eq!(forward_spectrum(&t, &[ones]).unwrap(), poly("Y^3 + X^3", 2));
    }

    #[test]
    fn reference_validation() {
        let (_, t, words) = hamming();
        let zero = words[0].clone();
        let w = words[1].clone();
        assert!(matches!(
            forward_spectrum(&t, &[zero]),
            Err(Error::InvalidReference(_))
        ));
        assert!(matches!(
            forward_spectrum(&t, &[w.clone(), w.clone()]),
            Err(Error::InvalidReference(_))
        ));
        let mut bad = w.clone();
        bad.symbols[0] ^= 1;
        assert_eq!(forward_spectrum(&t, &[bad]), Err(Error::NotACodeword));
        assert!(forward_spectrum(&t, &[w.clone(), words[2].clone(), words[3].clone()]).is_err());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let (_, t, words) = hamming();
        let refs = [words[5].clone(), words[9].clone()];
        assert_eq!(
            forward_spectrum_with(&t, &refs, Execution::Sequential).unwrap(),
            forward_spectrum_with(&t, &refs, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn json_layout() {
        let (_, t, _) = hamming();
        let json = Spectrum::from(wef(&t).unwrap()).to_json(None);
        assert_eq!(json["kind"], "wef");
        assert_eq!(json["d12"], serde_json::Value::Null);
        let terms = json["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(terms[1]["e"], serde_json::json!([3]));
        assert_eq!(terms[1]["c"], "7");
    }

    #[test]
    fn identity_report_flags_violations() {
        let bogus = WeightSpectrum {
            code_id: "x".into(),
            q: 2,
            n: 3,
            k: 1,
            poly: poly("1 + 2X^3", 1),
        };
        let report = check_identities(&bogus.into());
        assert!(!report.all_passed());
        assert_eq!(report.violations().count(), 1);
    }
}
