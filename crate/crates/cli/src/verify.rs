//! Oracle cross-checks behind `geospectra verify`.

use crate::{CliResult, VerifyArgs};
use geospectra::error_prob::{tetrahedron_system, triangle_system};
use geospectra::geometry::{audit_code, AUDIT_CAP};
use geospectra::spectra::IdentityReport;
use geospectra::stream::stream;
use geospectra::{
    brute_force_spectrum, check_identities, forward_spectrum, mc_event_prob, quadruple_error_prob,
    teef, tref, triplet_error_prob, wef, Codeword, Execution, LinearCode, NoiseModel, PrimeField,
    Spectrum, TetrahedronConfig, Trellis, Var,
};
use rand::Rng;
use serde::Serialize;

const DOMAIN_VERIFY: u64 = 0x7665_7269;
const BRUTE_CAP: u128 = 1 << 16;
const MC_SIGMA: f64 = 1.0;
const MC_SE_MULTIPLE: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CodeReport {
    pub code: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub passed: bool,
    pub seed: u64,
    pub trials: usize,
    pub mc_samples: u64,
    pub summary: Summary,
    pub codes: Vec<CodeReport>,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, ok: bool, detail: String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.0.push(Check {
            name: name.into(),
            status,
            detail,
        });
    }

    fn skip(&mut self, name: &str, detail: String) {
        self.0.push(Check {
            name: name.into(),
            status: Status::Skip,
            detail,
        });
    }
}

fn random_nonzero<R: Rng>(
    code: &LinearCode,
    rng: &mut R,
    avoid: &[&Codeword],
) -> CliResult<Codeword> {
    let size = code.size() as u64;
    loop {
        let c = code.codeword_at(rng.random_range(1..size))?;
        if !avoid.contains(&&c) {
            return Ok(c);
        }
    }
}

fn identity_failures(report: &IdentityReport, tag: &str, out: &mut Vec<String>) {
    out.extend(
        report
            .violations()
            .map(|v| format!("{tag}: {} ({})", v.name, v.detail)),
    );
}

fn spectra_checks<R: Rng>(
    code: &LinearCode,
    trellis: &Trellis,
    trials: usize,
    rng: &mut R,
    checks: &mut Checks,
) -> CliResult<()> {
    checks.push(
        "trellis path count equals q^k",
        trellis.path_count() == code.size(),
        format!("{} paths", trellis.path_count()),
    );
    let brute = code.size() <= BRUTE_CAP;
    let mut mismatches = Vec::new();
    let mut compared = 0;
    let mut compare = |refs: &[Codeword], poly: &geospectra::CountingPolynomial| -> CliResult<()> {
        if brute {
            compared += 1;
            if brute_force_spectrum(code, refs)? != *poly {
                mismatches.push(
                    refs.iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(" / "),
                );
            }
        }
        Ok(())
    };
    let mut failures = Vec::new();
    let mut chain = Vec::new();
    let w = wef(trellis)?;
    compare(&[], &w.poly)?;
    identity_failures(
        &check_identities(&Spectrum::from(w.clone())),
        "wef",
        &mut failures,
    );
    let size = code.size();
    let mut singles: Vec<Codeword> = Vec::new();
    if code.is_binary() && code.contains(&vec![1; code.n()]) {
        singles.push(Codeword::new(vec![1; code.n()]));
    }
    if size >= 2 {
        while singles.len() < trials + usize::from(!singles.is_empty()) {
            singles.push(random_nonzero(code, rng, &[])?);
        }
    }
    for c1 in &singles {
        let tr = tref(trellis, c1)?;
        compare(std::slice::from_ref(c1), &tr.poly)?;
        identity_failures(
            &check_identities(&tr.clone().into()),
            &format!("tref {c1}"),
            &mut failures,
        );
        if tr.poly.marginalize(Var::Y)? != w.poly {
            chain.push(format!("tref {c1} -> wef"));
        }
        if size >= 3 {
            let c2 = random_nonzero(code, rng, &[c1])?;
            let te = teef(trellis, c1, &c2)?;
            compare(&[c1.clone(), c2.clone()], &te.poly)?;
            identity_failures(
                &check_identities(&te.clone().into()),
                &format!("teef {c1} {c2}"),
                &mut failures,
            );
            if te.poly.marginalize(Var::Z)? != tr.poly {
                chain.push(format!("teef {c1} {c2} -> tref"));
            }
        }
    }
    if code.is_binary() && singles.first().is_some_and(|c| c.weight() == code.n()) {
        let tr = tref(trellis, &singles[0])?;
        let n = code.n();
        let mirrored = (0..=n)
            .all(|i| (0..=n).all(|j| tr.count(i, j) == if i + j == n { w.count(i) } else { 0 }));
        let symmetric = (0..=n).all(|i| w.count(i) == w.count(n - i));
        checks.push(
            "all-one reference mirrors the weight enumerator",
            mirrored && symmetric,
            format!("B_ij = A_i on i + j = {n}: {mirrored}; A_i = A_(n-i): {symmetric}"),
        );
    }
    let name = "trellis recursion equals brute-force enumeration";
    if brute {
        checks.push(
            name,
            mismatches.is_empty(),
            format!("{compared} spectra compared; mismatches: {mismatches:?}"),
        );
    } else {
        checks.skip(
            name,
            format!("{size} codewords exceed the brute-force cap of {BRUTE_CAP}"),
        );
    }
    checks.push(
        "spectrum identities",
        failures.is_empty(),
        format!("violations: {failures:?}"),
    );
    checks.push(
        "marginalization chain",
        chain.is_empty(),
        format!("violations: {chain:?}"),
    );
    // forward_spectrum is the shared entry point; make sure it agrees with the typed helpers
    let direct = forward_spectrum(trellis, &[])?;
    checks.push(
        "forward spectrum without references is the weight enumerator",
        direct == w.poly,
        String::new(),
    );
    Ok(())
}

fn geometry_checks(code: &LinearCode, checks: &mut Checks) -> CliResult<()> {
    let name = "codeword triples and quadruples";
    if code.size() > u128::from(AUDIT_CAP) {
        checks.skip(
            name,
            format!(
                "{} codewords exceed the audit cap of {AUDIT_CAP}",
                code.size()
            ),
        );
        return Ok(());
    }
    let audit = audit_code(code, Execution::default())?;
    checks.push(
        name,
        audit.passed(),
        format!(
            "{} angles, {} obtuse, {} right angles, {} incomplete rectangles, {} quadruples ({} tetrahedra, {} rectangles, {} inconsistent)",
            audit.angles,
            audit.obtuse,
            audit.right_angles,
            audit.incomplete_rectangles,
            audit.quadruples,
            audit.tetrahedra,
            audit.rectangles,
            audit.inconsistent
        ),
    );
    Ok(())
}

fn probability_checks<R: Rng>(
    code: &LinearCode,
    args: &VerifyArgs,
    rng: &mut R,
    mc_seed: u64,
    checks: &mut Checks,
) -> CliResult<()> {
    let noise = NoiseModel::new(MC_SIGMA)?;
    let agree = |exact_hold: f64, est: (f64, f64)| {
        (exact_hold - est.0).abs() <= MC_SE_MULTIPLE * est.1 + 1e-12
    };
    if code.size() >= 3 {
        let mut bad = Vec::new();
        for t in 0..args.trials {
            let c1 = random_nonzero(code, rng, &[])?;
            let c = random_nonzero(code, rng, &[&c1])?;
            let (d1, i, j) = (c1.weight(), c.weight(), c1.distance(&c)?);
            let exact = triplet_error_prob(d1, i, j, noise)?;
            let est = mc_event_prob(
                &triangle_system(d1, i, j)?,
                noise,
                args.mc_samples,
                mc_seed.wrapping_add(t as u64),
            )?;
            if !agree(1.0 - exact, est) {
                bad.push(format!(
                    "({d1},{i},{j}): {exact} vs {} ± {}",
                    1.0 - est.0,
                    est.1
                ));
            }
        }
        checks.push(
            "triplet probability matches Monte Carlo",
            bad.is_empty(),
            format!("{} configurations; disagreements: {bad:?}", args.trials),
        );
    }
    if code.size() >= 4 {
        let mut bad = Vec::new();
        for t in 0..args.trials {
            let c1 = random_nonzero(code, rng, &[])?;
            let c2 = random_nonzero(code, rng, &[&c1])?;
            let c = random_nonzero(code, rng, &[&c1, &c2])?;
            let cfg = TetrahedronConfig::new(
                c1.weight(),
                c2.weight(),
                c1.distance(&c2)?,
                c.weight(),
                c1.distance(&c)?,
                c2.distance(&c)?,
            );
            let exact = quadruple_error_prob(&cfg, noise)?;
            let seed = mc_seed.wrapping_add((args.trials + t) as u64);
            let est = mc_event_prob(&tetrahedron_system(&cfg)?, noise, args.mc_samples, seed)?;
            if !agree(1.0 - exact, est) {
                bad.push(format!("{cfg:?}: {exact} vs {} ± {}", 1.0 - est.0, est.1));
            }
        }
        checks.push(
            "quadruple probability matches Monte Carlo",
            bad.is_empty(),
            format!("{} configurations; disagreements: {bad:?}", args.trials),
        );
    }
    Ok(())
}

fn check_code(code: &LinearCode, index: u64, args: &VerifyArgs) -> CliResult<CodeReport> {
    let mut rng = stream(args.seed, DOMAIN_VERIFY, index, 1);
    let mut checks = Checks(Vec::new());
    let trellis = Trellis::build(code);
    spectra_checks(code, &trellis, args.trials, &mut rng, &mut checks)?;
    if code.is_binary() {
        geometry_checks(code, &mut checks)?;
        probability_checks(code, args, &mut rng, args.seed ^ (index << 32), &mut checks)?;
    }
    Ok(CodeReport {
        code: code.name().to_string(),
        q: code.q(),
        n: code.n(),
        k: code.k(),
        checks: checks.0,
    })
}

/// Random code number `index`: fields cycle through GF(2), GF(3), GF(5),
/// with dimension capped at 6, 4 and 3 respectively.
pub fn random_code(seed: u64, index: u64) -> CliResult<LinearCode> {
    let mut rng = stream(seed, DOMAIN_VERIFY, index, 0);
    let (q, kmax) = [(2, 6), (3, 4), (5, 3)][(index % 3) as usize];
    let n = rng.random_range(4..=12usize);
    let k = rng.random_range(1..=kmax.min(n));
    Ok(LinearCode::random(PrimeField::new(q)?, n, k, &mut rng)?)
}

pub fn run(code: Option<&LinearCode>, args: &VerifyArgs) -> CliResult<Report> {
    let mut codes = Vec::new();
    if let Some(code) = code {
        codes.push(check_code(code, 0, args)?);
    }
    for r in 0..args.random_codes as u64 {
        let code = random_code(args.seed, r + 1)?;
        let mut report = check_code(&code, r + 1, args)?;
        report.code = format!("random-{}", r + 1);
        codes.push(report);
    }
    let mut summary = Summary::default();
    for c in codes.iter().flat_map(|c| &c.checks) {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skip => summary.skip += 1,
        }
    }
    Ok(Report {
        passed: summary.fail == 0,
        seed: args.seed,
        trials: args.trials,
        mc_samples: args.mc_samples,
        summary,
        codes,
    })
}
