use geospectra::code::Codeword;
use geospectra::par::Execution;
use geospectra::spectra::forward_spectrum_with;
use geospectra::{
    brute_force_spectrum, check_identities, forward_spectrum, teef, tref, wef, CountingPolynomial,
    LinearCode, PrimeField, Spectrum, Trellis, Var,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hamming() -> (LinearCode, Trellis, Vec<Codeword>) {
    let code = LinearCode::builtin("hamming74").unwrap();
    let trellis = Trellis::build(&code);
    let words = code.enumerate_codewords().unwrap();
    (code, trellis, words)
}

fn poly(s: &str, arity: usize) -> CountingPolynomial {
    CountingPolynomial::parse(s, arity).unwrap()
}

#[test]
fn hamming_weight_enumerator() {
    let (_, t, _) = hamming();
    assert_eq!(wef(&t).unwrap().poly, poly("1 + 7X^3 + 7X^4 + X^7", 1));
}

#[test]
fn hamming_triangle_enumerators_by_reference_weight() {
    let (_, t, words) = hamming();
    let cases = [
        (7, "Y^7 + 7X^3Y^4 + 7X^4Y^3 + X^7"),
        (4, "Y^4 + X^4 + 6X^3Y^3 + X^3Y^7 + 6X^4Y^4 + X^7Y^3"),
        (3, "Y^3 + X^3 + 6X^3Y^4 + 6X^4Y^3 + X^4Y^7 + X^7Y^4"),
    ];
    for (weight, expected) in cases {
        let expected = poly(expected, 2);
        let refs: Vec<&Codeword> = words.iter().filter(|c| c.weight() == weight).collect();
        assert!(!refs.is_empty());
        for c1 in refs {
            assert_eq!(tref(&t, c1).unwrap().poly, expected, "reference {c1}");
        }
    }
}

#[test]
fn hamming_tetrahedron_enumerators_by_signature() {
    let (_, t, words) = hamming();
    let cases = [
        ((3, 3, 4), "Y^3Z^3 + X^3Y^4 + X^3Z^4 + 5X^3Y^4Z^4 + 5X^4Y^3Z^3 + X^4Y^3Z^7 + X^4Y^7Z^3 + X^7Y^4Z^4"),
        ((3, 4, 3), "Y^3Z^4 + X^3Z^3 + X^4Y^3 + 5X^3Y^4Z^3 + X^3Y^4Z^7 + 5X^4Y^3Z^4 + X^4Y^7Z^4 + X^7Y^4Z^3"),
        ((3, 4, 7), "Y^3Z^4 + X^3Z^7 + X^4Y^7 + 6X^3Y^4Z^3 + 6X^4Y^3Z^4 + X^7Y^4Z^3"),
        ((3, 7, 4), "Y^3Z^7 + X^3Z^4 + X^7Y^4 + 6X^3Y^4Z^4 + 6X^4Y^3Z^3 + X^4Y^7Z^3"),
        ((4, 4, 4), "Y^4Z^4 + X^4Z^4 + X^4Y^4 + 5X^3Y^3Z^3 + X^3Y^3Z^7 + X^3Y^7Z^3 + 5X^4Y^4Z^4 + X^7Y^3Z^3"),
        ((4, 7, 3), "Y^4Z^7 + X^4Z^3 + X^7Y^3 + 6X^3Y^3Z^4 + X^3Y^7Z^4 + 6X^4Y^4Z^3"),
    ];
    for ((d1, d2, d12), expected) in cases {
        let expected = poly(expected, 3);
        let mut matched = 0;
        for c1 in words.iter().filter(|c| c.weight() == d1) {
            for c2 in words.iter().filter(|c| c.weight() == d2 && *c != c1) {
                if c1.distance(c2).unwrap() != d12 {
                    continue;
                }
                assert_eq!(
                    teef(&t, c1, c2).unwrap().poly,
                    expected,
                    "references {c1}, {c2}"
                );
                matched += 1;
            }
        }
        assert!(
            matched > 0,
            "no reference pair with signature ({d1}, {d2}, {d12})"
        );
    }
}

#[test]
fn all_one_reference_mirrors_the_weight_enumerator() {
    let (code, t, words) = hamming();
    let ones = words.iter().find(|c| c.weight() == code.n()).unwrap();
    let w = wef(&t).unwrap();
    let tr = tref(&t, ones).unwrap();
    for i in 0..=code.n() {
        for j in 0..=code.n() {
            let want = if i + j == code.n() { w.count(i) } else { 0 };
            assert_eq!(tr.count(i, j), want, "B_({i},{j})");
        }
    }
    assert!(check_identities(&tr.into()).all_passed());
}

#[test]
fn identities_on_every_hamming_spectrum() {
    let (_, t, words) = hamming();
    assert!(check_identities(&wef(&t).unwrap().into()).all_passed());
    for (a, c1) in words.iter().enumerate().skip(1) {
        let tr = tref(&t, c1).unwrap();
        let report = check_identities(&tr.clone().into());
        assert!(
            report.all_passed(),
            "{:?}",
            report.violations().collect::<Vec<_>>()
        );
        for c2 in words.iter().skip(a + 1) {
            let te = teef(&t, c1, c2).unwrap();
            assert_eq!(te.poly.marginalize(Var::Z).unwrap(), tr.poly);
            assert!(check_identities(&te.into()).all_passed());
        }
    }
}

#[test]
fn spectrum_json_round_trip_of_terms() {
    let (_, t, words) = hamming();
    let te: Spectrum = teef(&t, &words[1], &words[2]).unwrap().into();
    let json = te.to_json(Some(&t.profile()));
    assert_eq!(json["kind"], "teef");
    assert_eq!(json["refs"].as_array().unwrap().len(), 2);
    assert!(json["profile"]["max_states"].as_u64().unwrap() <= 8);
    let total: u128 = json["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["c"].as_str().unwrap().parse::<u128>().unwrap())
        .sum();
    assert_eq!(total, 16);
}

fn random_code(seed: u64, q: u32, n: usize, k: usize) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LinearCode::random(PrimeField::new(q).unwrap(), n, k, &mut rng).unwrap()
}

fn random_refs(code: &LinearCode, seed: u64, count: usize) -> Vec<Codeword> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let size = code.size() as u64;
    let mut picked: Vec<Codeword> = Vec::new();
    while picked.len() < count {
        let c = code.codeword_at(rng.random_range(1..size)).unwrap();
        if !picked.contains(&c) {
            picked.push(c);
        }
    }
    picked
}

fn code_params() -> impl Strategy<Value = (u64, u32, usize, usize)> {
    prop_oneof![Just(2u32), Just(3u32), Just(5u32)].prop_flat_map(|q| {
        let kmax = match q {
            2 => 6,
            3 => 4,
            _ => 3,
        };
        (1usize..=kmax).prop_flat_map(move |k| (any::<u64>(), Just(q), (k..=12usize), Just(k)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trellis_recursion_matches_enumeration((seed, q, n, k) in code_params(), arity in 0usize..=2) {
        let code = random_code(seed, q, n, k);
        let t = Trellis::build(&code);
        prop_assert_eq!(t.path_count(), code.size());
        let usable = arity.min(code.size() as usize - 1);
        let refs = random_refs(&code, seed, usable);
        let fast = forward_spectrum(&t, &refs).unwrap();
        let slow = brute_force_spectrum(&code, &refs).unwrap();
        prop_assert_eq!(&fast, &slow);
        prop_assert_eq!(fast.mass().unwrap(), code.size());
        prop_assert_eq!(forward_spectrum_with(&t, &refs, Execution::Sequential).unwrap(), fast);
    }

    #[test]
    fn identities_hold_on_random_codes((seed, q, n, k) in code_params()) {
        let code = random_code(seed, q, n, k);
        prop_assume!(code.size() >= 3);
        let t = Trellis::build(&code);
        let refs = random_refs(&code, seed, 2);
        let w = wef(&t).unwrap();
        let tr = tref(&t, &refs[0]).unwrap();
        let te = teef(&t, &refs[0], &refs[1]).unwrap();
        prop_assert_eq!(te.poly.marginalize(Var::Z).unwrap(), tr.poly.clone());
        prop_assert_eq!(tr.poly.marginalize(Var::Y).unwrap(), w.poly.clone());
        for s in [Spectrum::from(w), tr.into(), te.into()] {
            let report = check_identities(&s);
            prop_assert!(report.all_passed(), "{:?}", report.violations().collect::<Vec<_>>());
        }
    }

    #[test]
    fn codes_with_the_all_one_word_have_symmetric_spectra(seed in any::<u64>(), n in 2usize..=12, k in 1usize..=5) {
        // random rows plus the all-one row
        let base = random_code(seed, 2, n, k.min(n - 1));
        let mut rows: Vec<Vec<u8>> = (0..base.k()).map(|r| base.generator().row(r).to_vec()).collect();
        rows.push(vec![1; n]);
        let g = geospectra::FieldMatrix::from_rows(PrimeField::binary(), &rows).unwrap();
        prop_assume!(geospectra::field::rank(&g) == rows.len());
        let code = LinearCode::new("with-ones", g).unwrap();
        let t = Trellis::build(&code);
        let w = wef(&t).unwrap();
        for i in 0..=n {
            prop_assert_eq!(w.count(i), w.count(n - i));
        }
        let ones = Codeword::new(vec![1; n]);
        let report = check_identities(&tref(&t, &ones).unwrap().into());
        prop_assert!(report.all_passed());
    }
}
