//! Text listings of ranked sets and the vector-cost CSV.

use std::fmt::Write as _;
use std::io::Write;

use enumcode::analysis::naive_vs_enumerated;
use enumcode::composition::{enumerate_all, vector_to_index_traced};
use enumcode::permutation::enumerate_perms;
use enumcode::{CombinatoricsContext, FrequencyVector};

use crate::error::{CliError, Result};

pub const DEFAULT_GUARD: usize = 100_000;

/// Symbols used to print permutations when none are given: `acgt` for four
/// dimensions, otherwise consecutive letters from `a`.
pub fn default_letters(sigma: usize) -> Vec<u8> {
    if sigma == 4 {
        b"acgt".to_vec()
    } else {
        (0..sigma).map(|i| b'a'.wrapping_add(i as u8)).collect()
    }
}

pub fn parse_counts(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("bad count {p:?}: {e}")))
        .collect()
}

/// `rank<TAB><c1,...,cs>` for every vector, one per line.
pub fn compositions_table(ell: u64, sigma: usize, guard: usize) -> Result<String> {
    if sigma == 0 {
        return Err(CliError::Usage("sigma must be at least 1".into()));
    }
    let mut ctx = CombinatoricsContext::new();
    let all = enumerate_all(ell, sigma, guard, &mut ctx)
        .map_err(|e| CliError::Usage(format!("compositions: {e}")))?;
    let mut out = String::new();
    for (rank, v) in all.iter().enumerate() {
        writeln!(out, "{rank}\t{v}").unwrap();
    }
    Ok(out)
}

/// `rank<TAB>sequence` for every arrangement of `counts`.
pub fn perms_table(counts: &[u64], letters: Option<&[u8]>, guard: usize) -> Result<String> {
    let letters = letters.map(<[u8]>::to_vec).unwrap_or_else(|| default_letters(counts.len()));
    if letters.len() != counts.len() {
        return Err(CliError::Usage(format!(
            "alphabet has {} symbols but the frequency vector has {}",
            letters.len(),
            counts.len()
        )));
    }
    let freq = FrequencyVector::new(counts.to_vec());
    let perms = enumerate_perms(&freq, guard).map_err(|e| CliError::Usage(format!("perms: {e}")))?;
    let mut out = String::new();
    for (rank, p) in perms.iter().enumerate() {
        let text: String = p.iter().map(|&i| letters[i as usize] as char).collect();
        writeln!(out, "{rank}\t{text}").unwrap();
    }
    Ok(out)
}

/// Rank of one vector, optionally listing each addend.
pub fn rank_report(counts: &[u64], trace: bool) -> String {
    let mut ctx = CombinatoricsContext::new();
    let v = FrequencyVector::new(counts.to_vec());
    let (rank, addends) = vector_to_index_traced(&v, &mut ctx);
    let mut out = format!("{v}\trank {rank}\n");
    if trace {
        let terms: Vec<String> = addends.iter().map(|a| a.to_string()).collect();
        let sum = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        writeln!(out, "addends\t{sum}={rank}").unwrap();
    }
    out
}

/// CSV with header `n,naive_bits,enum_bits,gap`.
pub fn write_figure1<W: Write>(sigma: usize, n_max: u64, out: W) -> Result<()> {
    if sigma < 2 {
        return Err(CliError::Usage("figure1 needs --sigma >= 2".into()));
    }
    let mut ctx = CombinatoricsContext::new();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "naive_bits", "enum_bits", "gap"])?;
    for row in naive_vs_enumerated(sigma, n_max, &mut ctx) {
        w.write_record([
            row.n.to_string(),
            format!("{:.6}", row.naive_bits),
            format!("{:.6}", row.enum_bits),
            format!("{:.6}", row.gap()),
        ])?;
    }
    w.flush().map_err(|e| CliError::io("<figure1 output>", e))?;
    Ok(())
}
