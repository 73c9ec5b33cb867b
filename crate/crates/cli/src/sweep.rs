//! Parameter sweep over a corpus.
//!
//! For each file every `(designated symbol, r)` pair is factorized in a first
//! pass and its block fields are accounted in a second; every fixed block
//! length likewise. Results are reported in bits per symbol.

use std::io::Write;
use std::path::{Path, PathBuf};

use enumcode::analysis::{finite_set_h0_per_symbol, EntropyReport};
use enumcode::block::{accounted_bits, factorize, BitAccount, Header};
use enumcode::{Alphabet, CodecParams, CombinatoricsContext, FrequencyVector, Mode};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::input::{read_sequence, ReadOptions};

pub const DEFAULT_R: [u32; 6] = [4, 8, 16, 32, 64, 128];

/// `4, 8, ..., 2048`.
pub fn default_block_lens() -> Vec<u32> {
    (2..=11).map(|p| 1u32 << p).collect()
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub inputs: Vec<PathBuf>,
    /// Designated-symbol candidates as bytes; empty means every alphabet symbol.
    pub alphas: Vec<u8>,
    pub r_values: Vec<u32>,
    pub block_lens: Vec<u32>,
    pub alphabet: Option<String>,
    pub read: ReadOptions,
}

impl SweepConfig {
    pub fn new(inputs: Vec<PathBuf>) -> Self {
        SweepConfig {
            inputs,
            alphas: Vec::new(),
            r_values: DEFAULT_R.to_vec(),
            block_lens: default_block_lens(),
            alphabet: None,
            read: ReadOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(CliError::Usage("sweep needs at least one input".into()));
        }
        if self.r_values.is_empty() || self.block_lens.is_empty() {
            return Err(CliError::Usage("sweep needs at least one r and one block length".into()));
        }
        if self.r_values.contains(&0) || self.block_lens.contains(&0) {
            return Err(CliError::Usage("r and block lengths must be at least 1".into()));
        }
        Ok(())
    }
}

/// Accounting for one file at one parameter point.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub file: usize,
    pub mode: Mode,
    pub account: BitAccount,
    pub n: u64,
    pub header_bits: u64,
}

impl PointResult {
    fn per_base(&self, bits: f64) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            bits / self.n as f64
        }
    }

    /// Ceiling accounting per symbol; the figure used for best-point selection.
    pub fn bits_per_base(&self) -> f64 {
        self.per_base(self.account.ceil_total() as f64)
    }

    pub fn real_bits_per_base(&self) -> f64 {
        self.per_base(self.account.real_total())
    }

    /// Full container (header, payload, byte padding) per symbol.
    pub fn container_bits_per_base(&self) -> f64 {
        let bits = (self.header_bits + self.account.payload_bits()).div_ceil(8) * 8;
        self.per_base(bits as f64)
    }

    // Tie order: smaller r, then lower designated-symbol index; smaller L.
    fn sort_key(&self) -> (u8, u64, u64) {
        match self.mode {
            Mode::Variable { alpha, r } => (0, r as u64, alpha as u64),
            Mode::Fixed { block_len } => (1, block_len as u64, 0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FileResult {
    pub path: PathBuf,
    pub alphabet: Alphabet,
    pub freq: FrequencyVector,
    pub h0_bits_per_base: f64,
    pub points: Vec<PointResult>,
    pub best_variable: Option<usize>,
    pub best_fixed: Option<usize>,
    /// Best designated symbol with the largest r on the grid.
    pub best_at_max_r: Option<usize>,
}

impl FileResult {
    pub fn report(&self) -> EntropyReport {
        let var = self.best_variable.map(|i| &self.points[i]);
        let fix = self.best_fixed.map(|i| &self.points[i]);
        let (alpha, r) = match var.map(|p| p.mode) {
            Some(Mode::Variable { alpha, r }) => (self.alphabet.symbol(alpha).unwrap_or(0), r),
            _ => (0, 0),
        };
        let fixed_len = match fix.map(|p| p.mode) {
            Some(Mode::Fixed { block_len }) => block_len,
            _ => 0,
        };
        EntropyReport {
            file_id: file_id(&self.path),
            n: self.freq.inner_sum(),
            counts: self.freq.counts().to_vec(),
            finite_set_h0_bits_per_base: self.h0_bits_per_base,
            fixed_len_bits_per_base: fix.map_or(0.0, PointResult::bits_per_base),
            variable_len_bits_per_base: var.map_or(0.0, PointResult::bits_per_base),
            alpha,
            r,
            fixed_len,
            avg_block_len: var.map_or(0.0, |p| p.account.avg_block_len()),
        }
    }
}

pub fn file_id(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub files: Vec<FileResult>,
    pub failures: Vec<(PathBuf, String)>,
}

impl SweepOutcome {
    /// Mean of (finite-set H0, best fixed, best variable) over the files.
    pub fn averages(&self) -> (f64, f64, f64) {
        let reports: Vec<EntropyReport> = self.files.iter().map(FileResult::report).collect();
        let k = reports.len().max(1) as f64;
        let mean = |f: fn(&EntropyReport) -> f64| reports.iter().map(f).sum::<f64>() / k;
        (
            mean(|r| r.finite_set_h0_bits_per_base),
            mean(|r| r.fixed_len_bits_per_base),
            mean(|r| r.variable_len_bits_per_base),
        )
    }
}

/// Every parameter point of the grid for an alphabet.
pub fn grid(config: &SweepConfig, alphabet: &Alphabet) -> Result<Vec<Mode>> {
    let alphas: Vec<usize> = if config.alphas.is_empty() {
        (0..alphabet.len()).collect()
    } else {
        config
            .alphas
            .iter()
            .map(|&b| {
                alphabet.index_of(b).ok_or_else(|| {
                    CliError::Usage(format!("designated symbol {:?} is not in the alphabet", b as char))
                })
            })
            .collect::<Result<_>>()?
    };
    let mut modes = Vec::new();
    for &alpha in &alphas {
        for &r in &config.r_values {
            modes.push(Mode::Variable { alpha, r });
        }
    }
    for &block_len in &config.block_lens {
        modes.push(Mode::Fixed { block_len });
    }
    Ok(modes)
}

/// Accounts one parameter point for an already mapped sequence.
pub fn evaluate_point(
    symbols: &[u8],
    alphabet: &Alphabet,
    mode: Mode,
    ctx: &mut CombinatoricsContext,
) -> enumcode::Result<(BitAccount, u64)> {
    let params = CodecParams { alphabet: alphabet.clone(), mode };
    params.validate()?;
    let blocks = factorize(symbols, &params)?;
    let account = accounted_bits(&blocks, mode, ctx);
    let header_bits = Header { params, n: symbols.len() as u64 }.to_bytes().len() as u64 * 8;
    Ok((account, header_bits))
}

pub fn run(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let mut loaded = Vec::new();
    let mut failures = Vec::new();
    for path in &config.inputs {
        match load(path, config) {
            Ok(x) => loaded.push(x),
            Err(e) => {
                log::error!("skipping {}: {e}", path.display());
                failures.push((path.clone(), e.to_string()));
            }
        }
    }

    let mut jobs = Vec::new();
    for (file, (_, alphabet, _)) in loaded.iter().enumerate() {
        for mode in grid(config, alphabet)? {
            jobs.push((file, mode));
        }
    }
    let mut points: Vec<PointResult> = jobs
        .par_iter()
        .map_init(CombinatoricsContext::new, |ctx, &(file, mode)| {
            let (_, alphabet, symbols) = &loaded[file];
            let (account, header_bits) =
                evaluate_point(symbols, alphabet, mode, ctx).expect("grid points are validated");
            PointResult { file, mode, account, n: symbols.len() as u64, header_bits }
        })
        .collect();
    points.sort_by_key(|p| (p.file, p.sort_key()));

    let mut files: Vec<FileResult> = loaded
        .into_iter()
        .map(|(path, alphabet, symbols)| {
            let freq = FrequencyVector::of_symbols(&symbols, alphabet.len()).expect("mapped symbols");
            FileResult {
                path,
                h0_bits_per_base: finite_set_h0_per_symbol(&freq),
                freq,
                alphabet,
                points: Vec::new(),
                best_variable: None,
                best_fixed: None,
                best_at_max_r: None,
            }
        })
        .collect();
    for p in points {
        files[p.file].points.push(p);
    }
    let max_r = config.r_values.iter().copied().max().unwrap_or(0);
    for f in &mut files {
        f.best_variable = best(&f.points, |m| matches!(m, Mode::Variable { .. }));
        f.best_fixed = best(&f.points, |m| matches!(m, Mode::Fixed { .. }));
        f.best_at_max_r = best(&f.points, |m| matches!(m, Mode::Variable { r, .. } if r == max_r));
    }
    Ok(SweepOutcome { files, failures })
}

// Points are pre-sorted by the tie order, so the first minimum wins.
fn best(points: &[PointResult], keep: impl Fn(Mode) -> bool) -> Option<usize> {
    let mut winner: Option<usize> = None;
    for (i, p) in points.iter().enumerate() {
        if !keep(p.mode) {
            continue;
        }
        if winner.is_none_or(|w| p.account.ceil_total() < points[w].account.ceil_total()) {
            winner = Some(i);
        }
    }
    winner
}

fn load(path: &Path, config: &SweepConfig) -> Result<(PathBuf, Alphabet, Vec<u8>)> {
    let data = read_sequence(path, config.read)?;
    let alphabet = crate::input::resolve_alphabet(
        config.alphabet.as_deref(),
        config.read.fasta,
        &data,
        config.alphas.first().copied().unwrap_or(b'A'),
    )?;
    let symbols = alphabet.to_indices(&data).map_err(|e| CliError::codec(path, e))?;
    Ok((path.to_path_buf(), alphabet, symbols))
}

fn fmt3(x: f64) -> String {
    format!("{x:.3}")
}

fn sym(alphabet: &Alphabet, alpha: usize) -> String {
    alphabet.symbol(alpha).map_or_else(String::new, |b| (b as char).to_string())
}

/// Summary table: one row per file plus an `average` row.
///
/// Count columns follow the first file's alphabet when every file shares it,
/// otherwise a single `counts` column lists `symbol:count` pairs.
pub fn write_summary<W: Write>(outcome: &SweepOutcome, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let shared = outcome
        .files
        .first()
        .map(|f| f.alphabet.clone())
        .filter(|a| outcome.files.iter().all(|f| f.alphabet == *a));
    let mut header = vec!["file".to_string(), "size".to_string()];
    match &shared {
        Some(a) => header.extend(a.symbols().iter().map(|&b| (b as char).to_string())),
        None => header.push("counts".into()),
    }
    header.extend(
        [
            "finite_set_h0",
            "fixed_len",
            "variable_len",
            "alpha",
            "r",
            "L",
            "avg_block_len",
            "variable_len_max_r",
            "alpha_max_r",
            "variable_real",
            "variable_container",
        ]
        .map(String::from),
    );
    w.write_record(&header)?;
    for f in &outcome.files {
        let rep = f.report();
        let mut row = vec![rep.file_id.clone(), rep.n.to_string()];
        match &shared {
            Some(_) => row.extend(rep.counts.iter().map(u64::to_string)),
            None => row.push(
                f.alphabet
                    .symbols()
                    .iter()
                    .zip(&rep.counts)
                    .map(|(&b, c)| format!("{}:{c}", b as char))
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
        }
        let var = f.best_variable.map(|i| &f.points[i]);
        let at_max = f.best_at_max_r.map(|i| &f.points[i]);
        let alpha_at_max = match at_max.map(|p| p.mode) {
            Some(Mode::Variable { alpha, .. }) => sym(&f.alphabet, alpha),
            _ => String::new(),
        };
        row.extend([
            fmt3(rep.finite_set_h0_bits_per_base),
            fmt3(rep.fixed_len_bits_per_base),
            fmt3(rep.variable_len_bits_per_base),
            if rep.r == 0 { String::new() } else { (rep.alpha as char).to_string() },
            rep.r.to_string(),
            rep.fixed_len.to_string(),
            format!("{:.0}", rep.avg_block_len),
            at_max.map_or_else(String::new, |p| fmt3(p.bits_per_base())),
            alpha_at_max,
            var.map_or_else(String::new, |p| fmt3(p.real_bits_per_base())),
            var.map_or_else(String::new, |p| fmt3(p.container_bits_per_base())),
        ]);
        w.write_record(&row)?;
    }
    let (h0, fixed, variable) = outcome.averages();
    let count_cols = shared.as_ref().map_or(1, Alphabet::len);
    let mut row = vec!["average".to_string(), String::new()];
    row.extend(std::iter::repeat_n(String::new(), count_cols));
    row.extend([fmt3(h0), fmt3(fixed), fmt3(variable)]);
    row.extend(std::iter::repeat_n(String::new(), 8));
    w.write_record(&row)?;
    w.flush().map_err(|e| CliError::io("<summary output>", e))?;
    Ok(())
}

/// Every grid point with its accounting and best-point marks.
pub fn write_points<W: Write>(outcome: &SweepOutcome, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "file",
        "mode",
        "alpha",
        "r",
        "L",
        "blocks",
        "avg_block_len",
        "length_bits",
        "freq_bits",
        "perm_bits",
        "ceil_bits",
        "real_bits",
        "container_bits",
        "bits_per_base",
        "real_bits_per_base",
        "container_bits_per_base",
        "best",
    ])?;
    for f in &outcome.files {
        let id = file_id(&f.path);
        for (i, p) in f.points.iter().enumerate() {
            let (mode, alpha, r, l) = match p.mode {
                Mode::Variable { alpha, r } => ("variable", sym(&f.alphabet, alpha), r.to_string(), String::new()),
                Mode::Fixed { block_len } => ("fixed", String::new(), String::new(), block_len.to_string()),
            };
            let best = Some(i) == f.best_variable || Some(i) == f.best_fixed;
            let a = &p.account;
            w.write_record([
                id.clone(),
                mode.to_string(),
                alpha,
                r,
                l,
                a.blocks.to_string(),
                format!("{:.1}", a.avg_block_len()),
                a.length_bits.to_string(),
                a.freq_bits.to_string(),
                a.perm_bits.to_string(),
                a.ceil_total().to_string(),
                format!("{:.3}", a.real_total()),
                (p.header_bits + a.payload_bits()).to_string(),
                format!("{:.6}", p.bits_per_base()),
                format!("{:.6}", p.real_bits_per_base()),
                format!("{:.6}", p.container_bits_per_base()),
                if best { "1".into() } else { "0".into() },
            ])?;
        }
    }
    w.flush().map_err(|e| CliError::io("<points output>", e))?;
    Ok(())
}
