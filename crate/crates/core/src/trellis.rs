//! Syndrome trellis with one code symbol per stage.
//!
//! The states at stage `t` are the partial syndromes `Σ_{u<t} c_u·h_u` of
//! codeword prefixes, where `h_u` is column `u` of the parity-check matrix.
//! A partial syndrome is kept only if it is also reachable backwards from the
//! zero syndrome at stage `n`, so every start-to-end path spells a codeword and
//! every codeword spells exactly one path.

use crate::code::{Codeword, LinearCode};
use crate::error::{Error, Result};
use crate::field::Subspace;
use serde::Serialize;
use std::collections::HashMap;
use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub from: u32,
    pub label: u8,
    pub to: u32,
}

/// Branches between stage `t` and `t + 1`, sorted by `(to, from, label)`.
#[derive(Clone, Debug)]
pub struct TrellisSection {
    pub stage: usize,
    pub branches: Vec<Branch>,
    incoming: Vec<Range<usize>>,
}

impl TrellisSection {
    /// Branches ending in state `to` of stage `t + 1`.
    pub fn incoming(&self, to: u32) -> &[Branch] {
        &self.branches[self.incoming[to as usize].clone()]
    }
}

#[derive(Clone, Debug)]
pub struct Trellis {
    code: LinearCode,
    sections: Vec<TrellisSection>,
    state_spaces: Vec<Vec<Vec<u8>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrellisProfile {
    pub states: Vec<usize>,
    pub branches: Vec<usize>,
    pub total_branches: usize,
    pub max_states: usize,
}

impl Trellis {
    pub fn build(code: &LinearCode) -> Trellis {
        let f = code.field();
        let n = code.n();
        let r = code.n() - code.k();
        let h = code.parity();
        let columns: Vec<Vec<u8>> = (0..n)
            .map(|t| if r == 0 { Vec::new() } else { h.column(t) })
            .collect();
        // future[t] = span(h_t, ..., h_{n-1}); a state at stage t must lie in it
        let future: Vec<Subspace> = (0..=n)
            .map(|t| Subspace::span(f, r, &columns[t..]))
            .collect();

        let mut state_spaces: Vec<Vec<Vec<u8>>> = vec![vec![vec![0u8; r]]];
        let mut sections = Vec::with_capacity(n);
        for t in 0..n {
            let mut ids: HashMap<Vec<u8>, u32> = HashMap::new();
            let mut next: Vec<Vec<u8>> = Vec::new();
            let mut branches = Vec::new();
            for (from, s) in state_spaces[t].iter().enumerate() {
                for a in 0..f.order() as u8 {
                    let s2: Vec<u8> = s
                        .iter()
                        .zip(&columns[t])
                        .map(|(&x, &hx)| f.add(x, f.mul(a, hx)))
                        .collect();
                    if !future[t + 1].contains(&s2) {
                        continue;
                    }
                    let to = *ids.entry(s2.clone()).or_insert_with(|| {
                        next.push(s2);
                        (next.len() - 1) as u32
                    });
                    branches.push(Branch {
                        from: from as u32,
                        label: a,
                        to,
                    });
                }
            }
            branches.sort_by_key(|b| (b.to, b.from, b.label));
            let mut incoming = vec![0..0; next.len()];
            let mut start = 0;
            for (i, b) in branches.iter().enumerate() {
                if i + 1 == branches.len() || branches[i + 1].to != b.to {
                    incoming[b.to as usize] = start..i + 1;
                    start = i + 1;
                }
            }
            sections.push(TrellisSection {
                stage: t,
                branches,
                incoming,
            });
            state_spaces.push(next);
        }
        debug_assert_eq!(state_spaces[n].len(), 1);
        Trellis {
            code: code.clone(),
            sections,
            state_spaces,
        }
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Number of stages `N` (equal to `n`).
    pub fn stages(&self) -> usize {
        self.sections.len()
    }

    pub fn sections(&self) -> &[TrellisSection] {
        &self.sections
    }

    pub fn section(&self, t: usize) -> &TrellisSection {
        &self.sections[t]
    }

    pub fn state_count(&self, t: usize) -> usize {
        self.state_spaces[t].len()
    }

    /// Syndrome vector of state `id` at stage `t`.
    pub fn state(&self, t: usize, id: u32) -> &[u8] {
        &self.state_spaces[t][id as usize]
    }

    pub fn profile(&self) -> TrellisProfile {
        let states: Vec<usize> = self.state_spaces.iter().map(Vec::len).collect();
        let branches: Vec<usize> = self.sections.iter().map(|s| s.branches.len()).collect();
        TrellisProfile {
            max_states: states.iter().copied().max().unwrap_or(1),
            total_branches: branches.iter().sum(),
            states,
            branches,
        }
    }

    /// Number of start-to-end paths, by forward dynamic programming.
    pub fn path_count(&self) -> u128 {
        let mut counts = vec![1u128];
        for (t, sec) in self.sections.iter().enumerate() {
            counts = (0..self.state_count(t + 1) as u32)
                .map(|s| {
                    sec.incoming(s)
                        .iter()
                        .map(|b| counts[b.from as usize])
                        .sum()
                })
                .collect();
        }
        counts[0]
    }

    /// Branch labels of the path of a codeword. With one symbol per stage
    /// these are the codeword symbols themselves.
    pub fn codeword_labels(&self, c: &Codeword) -> Result<Vec<u8>> {
        if !self.code.contains(&c.symbols) {
            return Err(Error::NotACodeword);
        }
        Ok(c.symbols.clone())
    }

    /// Follows `labels` through the trellis and returns the visited state ids,
    /// or `None` if some branch is missing or the path does not end in state 0.
    pub fn trace(&self, labels: &[u8]) -> Option<Vec<u32>> {
        if labels.len() != self.stages() {
            return None;
        }
        let mut path = vec![0u32];
        let mut state = 0u32;
        for (sec, &a) in self.sections.iter().zip(labels) {
            let b = sec
                .branches
                .iter()
                .find(|b| b.from == state && b.label == a)?;
            state = b.to;
            path.push(state);
        }
        (state == 0).then_some(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldMatrix, PrimeField};

    #[test]
    fn repetition_trellis() {
        let t = Trellis::build(&LinearCode::builtin("rep3").unwrap());
        assert_eq!(t.path_count(), 2);
        assert_eq!(t.profile().states, vec![1, 2, 2, 1]);
        assert_eq!(t.profile().branches, vec![2, 2, 2]);
    }

    #[test]
    fn hamming_trellis() {
        let t = Trellis::build(&LinearCode::builtin("hamming74").unwrap());
        assert_eq!(t.path_count(), 16);
        let p = t.profile();
        assert!(p.max_states <= 8);
        assert_eq!((p.states[0], p.states[7]), (1, 1));
        assert_eq!(p.total_branches, p.branches.iter().sum::<usize>());
    }

    #[test]
    fn identity_code_has_single_states() {
        let code =
            LinearCode::new("id", FieldMatrix::identity(PrimeField::new(5).unwrap(), 3)).unwrap();
        let t = Trellis::build(&code);
        assert_eq!(t.profile().states, vec![1, 1, 1, 1]);
        assert_eq!(t.profile().branches, vec![5, 5, 5]);
        assert_eq!(t.path_count(), 125);
    }

    #[test]
    fn labels_of_codewords() {
        let code = LinearCode::builtin("hamming74").unwrap();
        let t = Trellis::build(&code);
        let zero = code.codeword_at(0).unwrap();
        assert_eq!(t.codeword_labels(&zero).unwrap(), vec![0; 7]);
        let w3 = code
            .enumerate_codewords()
            .unwrap()
            .into_iter()
            .find(|c| c.weight() == 3)
            .unwrap();
        assert_eq!(t.codeword_labels(&w3).unwrap(), w3.symbols);
        let bogus = Codeword::new(vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(t.codeword_labels(&bogus), Err(Error::NotACodeword));
        assert!(t.trace(&bogus.symbols).is_none());
    }
}
