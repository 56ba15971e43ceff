//! Linear block codes over prime fields.

use crate::error::{Error, Result};
use crate::field::{parity_from_generator, rank, FieldMatrix, PrimeField};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Default limit on brute-force codeword enumeration.
pub const ENUMERATION_CAP: u64 = 1 << 24;

/// A codeword, optionally tagged with its enumeration index.
///
/// Index 0 is always the all-zero codeword.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    pub symbols: Vec<u8>,
    pub index: Option<u64>,
}

impl Codeword {
    pub fn new(symbols: Vec<u8>) -> Self {
        Codeword {
            symbols,
            index: None,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn weight(&self) -> usize {
        hamming_weight(&self.symbols)
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().all(|&s| s == 0)
    }

    pub fn distance(&self, other: &Codeword) -> Result<usize> {
        hamming_distance(&self.symbols, &other.symbols)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.symbols.iter().any(|&s| s > 9);
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        if wide {
            write!(f, "{}", parts.join(","))
        } else {
            write!(f, "{}", parts.concat())
        }
    }
}

/// Number of nonzero positions.
pub fn hamming_weight(v: &[u8]) -> usize {
    v.iter().filter(|&&s| s != 0).count()
}

/// Number of positions where `u` and `v` differ, i.e. the weight of `u − v`.
pub fn hamming_distance(u: &[u8], v: &[u8]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

/// A `q`-ary `[n, k]` linear code.
///
/// The generator is kept exactly as supplied (column order matters for the
/// trellis); its row space is validated and a parity-check matrix derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    name: String,
    field: PrimeField,
    n: usize,
    k: usize,
    generator: FieldMatrix,
    parity: FieldMatrix,
}

impl LinearCode {
    pub fn new(name: impl Into<String>, generator: FieldMatrix) -> Result<Self> {
        let k = generator.rows();
        let n = generator.cols();
        if k == 0 || k > n {
            return Err(Error::BadDimensions {
                rows: k,
                cols: n,
                reason: "need 1 <= k <= n",
            });
        }
        let r = rank(&generator);
        if r != k {
            return Err(Error::RankDeficient { rank: r, k });
        }
        let parity = parity_from_generator(&generator)?;
        debug_assert!(generator.mul(&parity.transpose())?.is_zero());
        Ok(LinearCode {
            name: name.into(),
            field: generator.field(),
            n,
            k,
            generator,
            parity,
        })
    }

    /// Looks up a built-in code: `hamming74`, `simplex73`, or `rep<n>`.
    pub fn builtin(name: &str) -> Result<Self> {
        let f = PrimeField::binary();
        match name {
            "hamming74" => LinearCode::new(
                name,
                FieldMatrix::from_rows(
                    f,
                    &[
                        vec![1, 0, 0, 0, 1, 1, 0],
                        vec![0, 1, 0, 0, 0, 1, 1],
                        vec![0, 0, 1, 0, 1, 1, 1],
                        vec![0, 0, 0, 1, 1, 0, 1],
                    ],
                )?,
            ),
            "simplex73" => {
                // columns are the seven nonzero vectors of GF(2)^3
                let rows: Vec<Vec<u8>> = (0..3)
                    .map(|bit| (1u8..8).map(|c| (c >> bit) & 1).collect())
                    .collect();
                LinearCode::new(name, FieldMatrix::from_rows(f, &rows)?)
            }
            _ => {
                let n: usize = name
                    .strip_prefix("rep")
                    .and_then(|s| s.parse().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown built-in code `{name}`")))?;
                LinearCode::new(name, FieldMatrix::new(f, 1, n, vec![1; n])?)
            }
        }
    }

    /// Parses the text format: a header line `q n k` followed by `k` lines of
    /// `n` whitespace-separated integers.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let nums: Vec<u32> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header token `{t}`")))
            })
            .collect::<Result<_>>()?;
        let [q, n, k] = nums[..] else {
            return Err(Error::Parse("header must be `q n k`".into()));
        };
        let field = PrimeField::new(q)?;
        let (n, k) = (n as usize, k as usize);
        let mut rows = Vec::with_capacity(k);
        for line in lines.by_ref().take(k) {
            let row: Vec<u8> = line
                .split_whitespace()
                .map(|t| {
                    let v: u32 = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad matrix entry `{t}`")))?;
                    if !field.contains(v) {
                        return Err(Error::BadEntry { value: v, p: q });
                    }
                    Ok(v as u8)
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row has {} entries, expected {n}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::Parse(format!(
                "expected {k} rows, found {}",
                rows.len()
            )));
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows after the generator".into()));
        }
        if n == 0 {
            return Err(Error::Parse("block length must be positive".into()));
        }
        LinearCode::new(name, FieldMatrix::from_rows(field, &rows)?)
    }

    /// Serializes the generator in the text format accepted by [`LinearCode::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.order(), self.n, self.k);
        for r in 0..self.k {
            let row: Vec<String> = self.generator.row(r).iter().map(u8::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Random full-rank code, retrying until the sampled generator has rank `k`.
    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::BadDimensions {
                rows: k,
                cols: n,
                reason: "need 1 <= k <= n",
            });
        }
        loop {
            let entries = (0..n * k)
                .map(|_| rng.random_range(0..field.order()) as u8)
                .collect();
            let g = FieldMatrix::new(field, k, n, entries)?;
            if rank(&g) == k {
                return LinearCode::new(format!("random-gf{}-{n}-{k}", field.order()), g);
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn parity(&self) -> &FieldMatrix {
        &self.parity
    }

    pub fn is_binary(&self) -> bool {
        self.field.is_binary()
    }

    /// `q^k`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.q() as u128)
            .checked_pow(self.k as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn encode(&self, message: &[u8]) -> Result<Codeword> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        if let Some(&bad) = message.iter().find(|&&m| !self.field.contains(m as u32)) {
            return Err(Error::BadEntry {
                value: bad as u32,
                p: self.q(),
            });
        }
        Ok(Codeword::new(self.generator.left_mul_vec(message)?))
    }

    /// Message for an enumeration index: base-`q` digits, most significant first.
    pub fn message_of(&self, index: u64) -> Result<Vec<u8>> {
        if (index as u128) >= self.size() {
            return Err(Error::InvalidArgument(format!(
                "codeword index {index} out of range (code has {} codewords)",
                self.size()
            )));
        }
        let q = self.q() as u64;
        let mut msg = vec![0u8; self.k];
        let mut rest = index;
        for slot in msg.iter_mut().rev() {
            *slot = (rest % q) as u8;
            rest /= q;
        }
        Ok(msg)
    }

    pub fn codeword_at(&self, index: u64) -> Result<Codeword> {
        let mut c = self.encode(&self.message_of(index)?)?;
        c.index = Some(index);
        Ok(c)
    }

    pub fn syndrome(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        if self.parity.rows() == 0 {
            return Ok(Vec::new());
        }
        self.parity.mul_vec(v)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        v.len() == self.n
            && v.iter().all(|&s| self.field.contains(s as u32))
            && self.syndrome(v).is_ok_and(|s| s.iter().all(|&x| x == 0))
    }

    /// All `q^k` codewords in message-lexicographic order, under the default cap.
    pub fn enumerate_codewords(&self) -> Result<Vec<Codeword>> {
        self.enumerate_codewords_capped(ENUMERATION_CAP)
    }

    pub fn enumerate_codewords_capped(&self, cap: u64) -> Result<Vec<Codeword>> {
        let count = self.size();
        if count > cap as u128 {
            return Err(Error::EnumerationCap { count, cap });
        }
        let q = self.q() as usize;
        let mut msg = vec![0u8; self.k];
        let mut out = Vec::with_capacity(count as usize);
        for index in 0..count as u64 {
            let mut c = Codeword::new(self.generator.left_mul_vec(&msg)?);
            c.index = Some(index);
            out.push(c);
            // odometer increment, last digit fastest
            for d in msg.iter_mut().rev() {
                *d += 1;
                if (*d as usize) < q {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    /// Adds two codewords symbol-wise.
    pub fn add(&self, a: &Codeword, b: &Codeword) -> Result<Codeword> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(Codeword::new(
            a.symbols
                .iter()
                .zip(&b.symbols)
                .map(|(&x, &y)| self.field.add(x, y))
                .collect(),
        ))
    }

    pub fn sub(&self, a: &Codeword, b: &Codeword) -> Result<Codeword> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(Codeword::new(
            a.symbols
                .iter()
                .zip(&b.symbols)
                .map(|(&x, &y)| self.field.sub(x, y))
                .collect(),
        ))
    }
}

impl FromStr for LinearCode {
    type Err = Error;

    /// Accepts either a built-in code name or the matrix text format.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().lines().count() <= 1 {
            LinearCode::builtin(s.trim())
        } else {
            LinearCode::parse("custom", s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::collections::BTreeSet;

    fn hamming() -> LinearCode {
        LinearCode::builtin("hamming74").unwrap()
    }

    #[test]
    fn zero_message_encodes_to_zero() {
        let c = hamming().encode(&[0, 0, 0, 0]).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.weight(), 0);
    }

    #[test]
    fn unit_messages_give_generator_rows() {
        let code = hamming();
        for i in 0..4 {
            let mut m = vec![0; 4];
            m[i] = 1;
            assert_eq!(code.encode(&m).unwrap().symbols, code.generator().row(i));
        }
    }

    #[test]
    fn ternary_encoding_by_hand() {
        let f = PrimeField::new(3).unwrap();
        let g = FieldMatrix::from_rows(f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 1]]).unwrap();
        let code = LinearCode::new("t42", g).unwrap();
        // row0 + 2*row1 = (1, 2, 1+2, 2+2) mod 3 = (1, 2, 0, 1)
        assert_eq!(code.encode(&[1, 2]).unwrap().symbols, vec![1, 2, 0, 1]);
        assert!(code.encode(&[1]).is_err());
    }

    #[test]
    fn repetition_code_codewords() {
        let code = LinearCode::builtin("rep3").unwrap();
        let words: Vec<Vec<u8>> = code
            .enumerate_codewords()
            .unwrap()
            .into_iter()
            .map(|c| c.symbols)
            .collect();
        assert_eq!(words, vec![vec![0, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn hamming_weight_multiset() {
        let words = hamming().enumerate_codewords().unwrap();
        assert_eq!(words.len(), 16);
        let mut hist = [0usize; 8];
        for w in &words {
            hist[w.weight()] += 1;
        }
        assert_eq!(hist, [1, 0, 0, 7, 7, 0, 0, 1]);
        let min = words.iter().map(Codeword::weight).filter(|&w| w > 0).min();
        assert_eq!(min, Some(3));
        assert_eq!(words[0].index, Some(0));
        assert!(words[0].is_zero());
    }

    #[test]
    fn ternary_enumeration_is_distinct() {
        let f = PrimeField::new(3).unwrap();
        let g = FieldMatrix::from_rows(f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 1]]).unwrap();
        let code = LinearCode::new("t42", g).unwrap();
        let words = code.enumerate_codewords().unwrap();
        let set: BTreeSet<_> = words.iter().map(|c| c.symbols.clone()).collect();
        assert_eq!(set.len(), 9);
        assert!(words.iter().all(|c| code.contains(&c.symbols)));
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_weight(&[0; 7]), 0);
        assert_eq!(hamming_distance(&[1, 2, 0], &[1, 0, 0]), Ok(1));
        assert!(hamming_distance(&[1, 2], &[1]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let err = hamming().enumerate_codewords_capped(8).unwrap_err();
        assert_eq!(err, Error::EnumerationCap { count: 16, cap: 8 });
    }

    #[test]
    fn parse_text_format() {
        let code = LinearCode::parse(
            "f",
            "2 7 4\n1 0 0 0 1 1 0\n0 1 0 0 0 1 1\n0 0 1 0 1 1 1\n0 0 0 1 1 0 1\n",
        )
        .unwrap();
        assert_eq!(code.generator(), hamming().generator());
        assert_eq!(LinearCode::parse("f", &code.to_text()).unwrap(), code);
        assert!(matches!(
            LinearCode::parse("f", "4 2 1\n1 1\n"),
            Err(Error::ExtensionField(4))
        ));
        assert!(matches!(
            LinearCode::parse("f", "2 3 2\n1 1 0\n1 1 0\n"),
            Err(Error::RankDeficient { .. })
        ));
        assert!(matches!(
            LinearCode::parse("f", "2 3 1\n1 2 0\n"),
            Err(Error::BadEntry { .. })
        ));
        assert!(matches!(
            LinearCode::parse("f", "2 3 2\n1 1 0\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn builtins() {
        let s = LinearCode::builtin("simplex73").unwrap();
        assert_eq!((s.n(), s.k()), (7, 3));
        // every nonzero simplex codeword has weight 4
        assert!(s
            .enumerate_codewords()
            .unwrap()
            .iter()
            .skip(1)
            .all(|c| c.weight() == 4));
        let r = LinearCode::builtin("rep5").unwrap();
        assert_eq!((r.n(), r.k()), (5, 1));
        assert!(LinearCode::builtin("golay").is_err());
        assert!(LinearCode::builtin("rep0").is_err());
    }

    #[test]
    fn random_codes_are_linear() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let code = LinearCode::random(PrimeField::new(3).unwrap(), 6, 3, &mut rng).unwrap();
            let words = code.enumerate_codewords().unwrap();
            let set: BTreeSet<_> = words.iter().map(|c| c.symbols.clone()).collect();
            assert_eq!(set.len(), 27);
            for _ in 0..20 {
                let a = &words[rng.random_range(0..27)];
                let b = &words[rng.random_range(0..27)];
                assert!(set.contains(&code.add(a, b).unwrap().symbols));
                let d = a.distance(b).unwrap();
                assert_eq!(d, code.sub(a, b).unwrap().weight());
            }
            assert!(code
                .generator()
                .mul(&code.parity().transpose())
                .unwrap()
                .is_zero());
        }
    }
}
