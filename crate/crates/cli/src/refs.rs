//! Reference codeword specifications: `min-weight`, `index:N`, `symbols:…`.

use crate::{CliError, CliResult};
use geospectra::{Codeword, LinearCode};

fn by_weight(code: &LinearCode) -> CliResult<Vec<Codeword>> {
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

fn parse_symbols(body: &str, n: usize) -> CliResult<Vec<u8>> {
    let bad = || CliError::Input(format!("bad symbol list `{body}`"));
    let symbols: Vec<u8> = if body.contains(',') {
        body.split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<CliResult<_>>()?
    } else {
        body.chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<CliResult<_>>()?
    };
    if symbols.len() != n {
        return Err(CliError::Input(format!(
            "reference has {} symbols, code length is {n}",
            symbols.len()
        )));
    }
    Ok(symbols)
}

/// Resolves each form in order. `min-weight` picks the lightest nonzero
/// codeword not already chosen (ties broken lexicographically).
pub fn resolve(code: &LinearCode, forms: &[Option<&str>]) -> CliResult<Vec<Codeword>> {
    let mut chosen: Vec<Codeword> = Vec::new();
    let mut ranked: Option<Vec<Codeword>> = None;
    for form in forms {
        let form = form.unwrap_or("min-weight");
        let word = if form == "min-weight" {
            if ranked.is_none() {
                ranked = Some(by_weight(code)?);
            }
            ranked
                .as_ref()
                .and_then(|r| r.iter().find(|c| !chosen.contains(c)).cloned())
                .ok_or_else(|| {
                    CliError::Input(format!("{} has too few nonzero codewords", code.name()))
                })?
        } else if let Some(idx) = form.strip_prefix("index:") {
            let idx: u64 = idx
                .parse()
                .map_err(|_| CliError::Input(format!("bad index `{idx}`")))?;
            if u128::from(idx) >= code.size() {
                return Err(CliError::Input(format!(
                    "index {idx} is out of range for {} codewords",
                    code.size()
                )));
            }
            code.codeword_at(idx)?
        } else if let Some(body) = form.strip_prefix("symbols:") {
            let symbols = parse_symbols(body, code.n())?;
            if !code.contains(&symbols) {
                return Err(CliError::Input(format!("`{body}` is not a codeword")));
            }
            Codeword::new(symbols)
        } else {
            return Err(CliError::Input(format!("unknown reference `{form}`")));
        };
        chosen.push(word);
    }
    Ok(chosen)
}
