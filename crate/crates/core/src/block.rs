//! Block factorization and the container format.
//!
//! Variable mode cuts the input so that every block holds exactly `r`
//! copies of a designated symbol. The symbol occurrence right after a block is
//! always that designated symbol, so it acts as an implicit delimiter and is
//! never stored. The last block is padded with designated symbols up to `r`;
//! the decoder strips them using the stored length `n`. A sequence that ends
//! exactly on a delimiter has no final block at all.
//!
//! Fixed mode cuts the input into blocks of `L` symbols, the last one
//! possibly shorter.
//!
//! Container layout, all integers big-endian:
//!
//! ```text
//! "ENUM" | version u8 = 1 | mode u8 (0 fixed, 1 variable) | sigma u16
//!        | alphabet: sigma bytes | n u64
//!        | variable: alpha_index u16 (1-based), r u32  /  fixed: L u32
//!        | payload bits | zero padding to a byte boundary
//! ```
//!
//! Each block in the payload is, MSB first:
//!
//! 1. variable mode only: Elias delta codeword of `length + 1`;
//! 2. frequency-vector rank in `ceil(log2 K(d, s))` bits, where variable mode
//!    ranks the `sigma - 1` non-designated counts (`s = length - r`) and fixed
//!    mode ranks all `sigma` counts (`s = length`);
//! 3. permutation rank in `ceil(log2 M)` bits with `M` the multinomial of the
//!    block's counts. Absent when `M = 1`, which covers every block made of a
//!    single repeated symbol.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::alphabet::Alphabet;
use crate::analysis::log2_big;
use crate::bits::{delta_len, BitReader, BitWriter};
use crate::combinatorics::{field_width, multinomial, CombinatoricsContext};
use crate::composition::{index_to_vector, vector_to_index, FrequencyVector, RankIndex};
use crate::error::{Error, Field, Result};
use crate::permutation::{rank_with_counts, unrank_with_total};

pub const MAGIC: &[u8; 4] = b"ENUM";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Blocks hold exactly `r` copies of the symbol at index `alpha`.
    Variable { alpha: usize, r: u32 },
    /// Blocks of `block_len` symbols.
    Fixed { block_len: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodecParams {
    pub alphabet: Alphabet,
    pub mode: Mode,
}

impl CodecParams {
    pub fn variable(alphabet: Alphabet, alpha: usize, r: u32) -> Result<Self> {
        let p = CodecParams { alphabet, mode: Mode::Variable { alpha, r } };
        p.validate()?;
        Ok(p)
    }

    pub fn fixed(alphabet: Alphabet, block_len: u32) -> Result<Self> {
        let p = CodecParams { alphabet, mode: Mode::Fixed { block_len } };
        p.validate()?;
        Ok(p)
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            Mode::Variable { alpha, r } => {
                if alpha >= self.sigma() {
                    return Err(Error::InvalidParams("designated symbol is not in the alphabet"));
                }
                if r == 0 {
                    return Err(Error::InvalidParams("r must be at least 1"));
                }
            }
            Mode::Fixed { block_len } => {
                if block_len == 0 {
                    return Err(Error::InvalidParams("block length must be at least 1"));
                }
            }
        }
        Ok(())
    }
}

/// One factor of the input together with its counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Symbol indices, padding included.
    pub content: Vec<u8>,
    /// Counts over the full alphabet, padding included.
    pub freq: FrequencyVector,
    /// Designated symbols appended to complete the final block.
    pub pad_count: u64,
}

impl Block {
    fn from_content(content: Vec<u8>, sigma: usize, pad_count: u64) -> Self {
        let freq = FrequencyVector::of_symbols(&content, sigma).expect("symbols were range checked");
        Block { content, freq, pad_count }
    }

    pub fn len(&self) -> u64 {
        self.content.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.content.is_empty()
    }

    /// Counts without the designated symbol's dimension.
    pub fn reduced_freq(&self, alpha: usize) -> FrequencyVector {
        self.freq.without(alpha)
    }

    /// Number of arrangements of this block's counts.
    pub fn perm_cardinality(&self) -> BigUint {
        multinomial(self.freq.counts())
    }

    /// Lexicographic rank of the content among those arrangements.
    pub fn perm_rank(&self) -> RankIndex {
        rank_with_counts(&self.content, &self.freq)
    }
}

fn check_symbols(symbols: &[u8], sigma: usize) -> Result<()> {
    match symbols.iter().find(|&&s| s as usize >= sigma) {
        Some(&s) => Err(Error::SymbolOutOfRange { index: s as usize, sigma }),
        None => Ok(()),
    }
}

/// Splits `symbols` so each block holds exactly `r` copies of `alpha`.
pub fn factorize_variable(symbols: &[u8], sigma: usize, alpha: usize, r: u32) -> Result<Vec<Block>> {
    check_symbols(symbols, sigma)?;
    if alpha >= sigma || r == 0 {
        return Err(Error::InvalidParams("variable mode needs alpha < sigma and r >= 1"));
    }
    let alpha_sym = alpha as u8;
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    let mut seen = 0u32;
    for &s in symbols {
        if s == alpha_sym {
            if seen == r {
                // the (r+1)-th occurrence closes the block and is not stored
                blocks.push(Block::from_content(core::mem::take(&mut current), sigma, 0));
                seen = 0;
                continue;
            }
            seen += 1;
        }
        current.push(s);
    }
    if !current.is_empty() {
        let pad = r - seen;
        current.extend(core::iter::repeat_n(alpha_sym, pad as usize));
        blocks.push(Block::from_content(current, sigma, pad as u64));
    }
    Ok(blocks)
}

/// Splits `symbols` into runs of `block_len`, the last one possibly shorter.
pub fn factorize_fixed(symbols: &[u8], sigma: usize, block_len: u32) -> Result<Vec<Block>> {
    check_symbols(symbols, sigma)?;
    if block_len == 0 {
        return Err(Error::InvalidParams("block length must be at least 1"));
    }
    Ok(symbols
        .chunks(block_len as usize)
        .map(|c| Block::from_content(c.to_vec(), sigma, 0))
        .collect())
}

pub fn factorize(symbols: &[u8], params: &CodecParams) -> Result<Vec<Block>> {
    match params.mode {
        Mode::Variable { alpha, r } => factorize_variable(symbols, params.sigma(), alpha, r),
        Mode::Fixed { block_len } => factorize_fixed(symbols, params.sigma(), block_len),
    }
}

/// Cardinality of the frequency-vector field for a block.
fn freq_cardinality(
    mode: Mode,
    sigma: usize,
    block_len: u64,
    ctx: &mut CombinatoricsContext,
) -> BigUint {
    match mode {
        Mode::Variable { r, .. } => {
            let reduced_sum = block_len - r as u64;
            if sigma == 1 {
                // no free dimension: only the empty vector with sum zero exists
                return BigUint::from((reduced_sum == 0) as u32);
            }
            ctx.k_count(sigma - 1, reduced_sum).clone()
        }
        Mode::Fixed { .. } => ctx.k_count(sigma, block_len).clone(),
    }
}

/// Bit totals of a factorization, both as stored and as real-valued ideals.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BitAccount {
    pub blocks: u64,
    /// Symbols in all blocks, padding included.
    pub block_symbols: u64,
    /// Elias delta length fields as written (variable mode).
    pub length_bits: u64,
    /// `sum ceil(log2 |b|)` (variable mode).
    pub length_bits_ceil: u64,
    /// `sum log2 |b|` (variable mode).
    pub length_bits_real: f64,
    /// `sum ceil(log2 K)`.
    pub freq_bits: u64,
    pub freq_bits_real: f64,
    /// `sum ceil(log2 M)`; zero for single-arrangement blocks.
    pub perm_bits: u64,
    pub perm_bits_real: f64,
}

impl BitAccount {
    /// Ceiling accounting: `ceil(log2 |b|) + ceil(log2 K) + ceil(log2 M)` summed over blocks.
    pub fn ceil_total(&self) -> u64 {
        self.length_bits_ceil + self.freq_bits + self.perm_bits
    }

    /// The same sum without ceilings.
    pub fn real_total(&self) -> f64 {
        self.length_bits_real + self.freq_bits_real + self.perm_bits_real
    }

    /// Exact payload size of the container.
    pub fn payload_bits(&self) -> u64 {
        self.length_bits + self.freq_bits + self.perm_bits
    }

    pub fn avg_block_len(&self) -> f64 {
        if self.blocks == 0 {
            0.0
        } else {
            self.block_symbols as f64 / self.blocks as f64
        }
    }
}

/// Sums the per-block field widths of a factorization made under `mode`.
pub fn accounted_bits(blocks: &[Block], mode: Mode, ctx: &mut CombinatoricsContext) -> BitAccount {
    let mut acc = BitAccount::default();
    for b in blocks {
        let len = b.len();
        let sigma = b.freq.sigma();
        acc.blocks += 1;
        acc.block_symbols += len;
        if let Mode::Variable { .. } = mode {
            acc.length_bits += delta_len(len + 1);
            acc.length_bits_ceil += 64 - (len - 1).leading_zeros() as u64;
            acc.length_bits_real += libm::log2(len as f64);
        }
        let k = freq_cardinality(mode, sigma, len, ctx);
        acc.freq_bits += field_width(&k);
        acc.freq_bits_real += log2_big(&k);
        let m = b.perm_cardinality();
        acc.perm_bits += field_width(&m);
        acc.perm_bits_real += log2_big(&m);
    }
    acc
}

/// Parsed fixed-size container header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub params: CodecParams,
    pub n: u64,
}

impl Header {
    pub fn to_bytes(&self) -> Vec<u8> {
        let sigma = self.params.sigma();
        let mut out = Vec::with_capacity(4 + 1 + 1 + 2 + sigma + 8 + 6);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(match self.params.mode {
            Mode::Fixed { .. } => 0,
            Mode::Variable { .. } => 1,
        });
        out.extend_from_slice(&(sigma as u16).to_be_bytes());
        out.extend_from_slice(self.params.alphabet.symbols());
        out.extend_from_slice(&self.n.to_be_bytes());
        match self.params.mode {
            Mode::Variable { alpha, r } => {
                out.extend_from_slice(&(alpha as u16 + 1).to_be_bytes());
                out.extend_from_slice(&r.to_be_bytes());
            }
            Mode::Fixed { block_len } => out.extend_from_slice(&block_len.to_be_bytes()),
        }
        out
    }

    /// Parses a header and returns it with its length in bytes.
    pub fn parse(bytes: &[u8]) -> Result<(Header, usize)> {
        let mut cur = Cursor { bytes, pos: 0 };
        if cur.take(4).map_err(|_| Error::BadMagic)? != MAGIC {
            return Err(Error::BadMagic);
        }
        let version = cur.u8()?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let mode_tag = cur.u8()?;
        let sigma = u16::from_be_bytes(cur.array()?) as usize;
        let alphabet = Alphabet::new(cur.take(sigma)?)
            .map_err(|_| Error::BadHeader("alphabet is empty, too long or has duplicates"))?;
        let n = u64::from_be_bytes(cur.array()?);
        let mode = match mode_tag {
            0 => Mode::Fixed { block_len: u32::from_be_bytes(cur.array()?) },
            1 => {
                let alpha = u16::from_be_bytes(cur.array()?) as usize;
                let r = u32::from_be_bytes(cur.array()?);
                if alpha == 0 {
                    return Err(Error::BadHeader("designated symbol index is 1-based"));
                }
                Mode::Variable { alpha: alpha - 1, r }
            }
            _ => return Err(Error::BadHeader("unknown mode")),
        };
        let params = CodecParams { alphabet, mode };
        params.validate().map_err(|_| Error::BadHeader("invalid codec parameters"))?;
        Ok((Header { params, n }, cur.pos))
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or(Error::BadHeader("header is truncated"))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }
}

/// An encoded container plus what went into it.
#[derive(Debug, Clone)]
pub struct Encoded {
    pub bytes: Vec<u8>,
    pub header_bits: u64,
    pub payload_bits: u64,
    pub blocks: Vec<Block>,
    pub account: BitAccount,
}

/// Encodes raw bytes; every byte must belong to `params.alphabet`.
pub fn encode(data: &[u8], params: &CodecParams, ctx: &mut CombinatoricsContext) -> Result<Encoded> {
    let symbols = params.alphabet.to_indices(data)?;
    encode_symbols(&symbols, params, ctx)
}

/// Encodes a sequence of symbol indices.
pub fn encode_symbols(
    symbols: &[u8],
    params: &CodecParams,
    ctx: &mut CombinatoricsContext,
) -> Result<Encoded> {
    params.validate()?;
    let blocks = factorize(symbols, params)?;
    let header = Header { params: params.clone(), n: symbols.len() as u64 };
    let head = header.to_bytes();
    let header_bits = head.len() as u64 * 8;
    let mut w = BitWriter::with_prefix(head);
    let sigma = params.sigma();
    for b in &blocks {
        let len = b.len();
        let freq_rank = match params.mode {
            Mode::Variable { alpha, .. } => {
                w.write_delta(len + 1);
                if sigma == 1 {
                    BigUint::zero()
                } else {
                    vector_to_index(&b.reduced_freq(alpha), ctx)
                }
            }
            Mode::Fixed { .. } => vector_to_index(&b.freq, ctx),
        };
        let k = freq_cardinality(params.mode, sigma, len, ctx);
        w.write_big(&freq_rank, field_width(&k));
        let m = b.perm_cardinality();
        let width = field_width(&m);
        if width > 0 {
            w.write_big(&b.perm_rank(), width);
        }
    }
    let payload_bits = w.bit_len() - header_bits;
    let account = accounted_bits(&blocks, params.mode, ctx);
    debug_assert_eq!(account.payload_bits(), payload_bits);
    Ok(Encoded { bytes: w.finish(), header_bits, payload_bits, blocks, account })
}

/// A decoded container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub header: Header,
    /// Symbol indices of the original sequence.
    pub symbols: Vec<u8>,
    pub blocks: u64,
    /// Payload bits consumed by the block fields.
    pub payload_bits: u64,
}

/// Decodes a container back to the original bytes.
pub fn decode(container: &[u8], ctx: &mut CombinatoricsContext) -> Result<Vec<u8>> {
    let d = decode_container(container, ctx)?;
    d.header.params.alphabet.to_bytes(&d.symbols)
}

pub fn decode_container(container: &[u8], ctx: &mut CombinatoricsContext) -> Result<Decoded> {
    let (header, header_len) = Header::parse(container)?;
    let mut reader = BitReader::new(&container[header_len..]);
    let n = header.n;
    let params = &header.params;
    let sigma = params.sigma();
    let mut out: Vec<u8> = Vec::new();
    let mut block = 0u64;

    while (out.len() as u64) < n {
        let index = block;
        let truncated = |_| Error::Truncated { block: index };
        let corrupt = |field| Error::CorruptField { block: index, field };
        let written = out.len() as u64;
        let len = match params.mode {
            Mode::Variable { r, .. } => {
                let len = reader.read_delta().map_err(truncated)? - 1;
                // a block holds r designated symbols and at most r of padding
                if len < r as u64 || len > n - written + r as u64 {
                    return Err(corrupt(Field::Length));
                }
                len
            }
            Mode::Fixed { block_len } => (block_len as u64).min(n - written),
        };

        let k = freq_cardinality(params.mode, sigma, len, ctx);
        let rank = reader.read_big(field_width(&k)).map_err(truncated)?;
        if rank >= k {
            return Err(corrupt(Field::FrequencyRank));
        }
        let freq = match params.mode {
            Mode::Variable { alpha, r } => {
                let reduced = if sigma == 1 {
                    FrequencyVector::new(Vec::new())
                } else {
                    index_to_vector(&rank, len - r as u64, sigma - 1, ctx)?
                };
                reduced.with_inserted(alpha, r as u64)
            }
            Mode::Fixed { .. } => index_to_vector(&rank, len, sigma, ctx)?,
        };

        let m = multinomial(freq.counts());
        let pid = reader.read_big(field_width(&m)).map_err(truncated)?;
        if pid >= m {
            return Err(corrupt(Field::PermutationRank));
        }
        let content = unrank_with_total(&pid, &freq, m)?;
        out.extend_from_slice(&content);
        block += 1;

        if let Mode::Variable { alpha, .. } = params.mode {
            let written = out.len() as u64;
            if written < n {
                out.push(alpha as u8);
            } else if out[n as usize..].iter().any(|&s| s as usize != alpha) {
                // padding is always the designated symbol
                return Err(corrupt(Field::PermutationRank));
            }
        }
    }
    out.truncate(n as usize);

    let payload_bits = reader.position();
    let rest = reader.remaining();
    let padding_is_clean = rest < 8 && (0..rest).all(|_| reader.read_bit() == Ok(false));
    if !padding_is_clean {
        return Err(Error::TrailingData { last_block: block });
    }
    Ok(Decoded { header, symbols: out, blocks: block, payload_bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;
    use proptest::prelude::*;

    const FIG_T: &[u8] = b"ttgaacgagaagccgtatgaaatgaaaatatcac";

    fn dna() -> Alphabet {
        Alphabet::new(b"acgt").unwrap()
    }

    fn text(b: &Block) -> String {
        b.content.iter().map(|&i| b"acgt"[i as usize] as char).collect()
    }

    #[test]
    fn sample_factorization() {
        let symbols = dna().to_indices(FIG_T).unwrap();
        let blocks = factorize_variable(&symbols, 4, 0, 2).unwrap();
        let lens: Vec<u64> = blocks.iter().map(Block::len).collect();
        assert_eq!(lens, [7, 8, 4, 4, 5, 3]);
        let contents: Vec<String> = blocks.iter().map(text).collect();
        assert_eq!(contents, ["ttgaacg", "gaagccgt", "tgaa", "tgaa", "atatc", "caa"]);
        let freqs: Vec<&[u64]> = blocks.iter().map(|b| b.freq.counts()).collect();
        assert_eq!(
            freqs,
            [&[2, 1, 2, 2][..], &[2, 2, 3, 1], &[2, 0, 1, 1], &[2, 0, 1, 1], &[2, 1, 0, 2], &[2, 1, 0, 0]]
        );
        let ranks: Vec<BigUint> = blocks.iter().map(Block::perm_rank).collect();
        let expected: Vec<BigUint> = [618u32, 852, 11, 11, 7, 2].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(ranks, expected);
        let pads: Vec<u64> = blocks.iter().map(|b| b.pad_count).collect();
        assert_eq!(pads, [0, 0, 0, 0, 0, 2]);

        // reduced vector of the first block and its field width
        let mut ctx = CombinatoricsContext::new();
        assert_eq!(blocks[0].reduced_freq(0).counts(), &[1, 2, 2]);
        let k = freq_cardinality(Mode::Variable { alpha: 0, r: 2 }, 4, 7, &mut ctx);
        assert_eq!(k, BigUint::from(21u32));
        assert_eq!(field_width(&k), 5);
    }

    #[test]
    fn block_count_formula() {
        let symbols = dna().to_indices(FIG_T).unwrap();
        let c_alpha = symbols.iter().filter(|&&s| s == 0).count() as u64;
        let blocks = factorize_variable(&symbols, 4, 0, 2).unwrap();
        assert_eq!(blocks.len() as u64, c_alpha / 3 + 1);
    }

    #[test]
    fn boundary_cases() {
        // block boundary at the very end, no delimiter
        let b = factorize_variable(&[0, 0], 4, 0, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].content, [0, 0]);
        assert_eq!(b[0].pad_count, 0);
        // ends exactly on a delimiter: no trailing block
        let b = factorize_variable(&[0, 0, 0], 4, 0, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert!(factorize_variable(&[], 4, 0, 2).unwrap().is_empty());
        assert_eq!(
            factorize_variable(&[0, 9], 4, 0, 2),
            Err(Error::SymbolOutOfRange { index: 9, sigma: 4 })
        );
    }

    #[test]
    fn fixed_partition() {
        let syms = vec![1u8; 10];
        let lens: Vec<u64> = factorize_fixed(&syms, 4, 4).unwrap().iter().map(Block::len).collect();
        assert_eq!(lens, [4, 4, 2]);
        let t = dna().to_indices(b"aacgaacg").unwrap();
        let blocks = factorize_fixed(&t, 4, 4).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0], blocks[1]);
        assert_eq!(blocks[0].freq.counts(), &[2, 1, 1, 0]);
        assert_eq!(factorize_fixed(&[0, 1, 2, 3], 4, 4).unwrap().len(), 1);
    }

    #[test]
    fn sample_round_trip_and_widths() {
        let mut ctx = CombinatoricsContext::new();
        let params = CodecParams::variable(dna(), 0, 2).unwrap();
        let enc = encode(FIG_T, &params, &mut ctx).unwrap();
        assert_eq!(enc.blocks.len(), 6);
        assert_eq!(decode(&enc.bytes, &mut ctx).unwrap(), FIG_T);
        // perm widths: ceil(log2 630) = 10, ...
        assert_eq!(field_width(&enc.blocks[0].perm_cardinality()), 10);
        assert_eq!(enc.blocks[1].perm_cardinality(), BigUint::from(1680u32));
        let d = decode_container(&enc.bytes, &mut ctx).unwrap();
        assert_eq!(d.payload_bits, enc.payload_bits);
        assert_eq!(d.blocks, 6);
        assert_eq!(enc.bytes.len() as u64, (enc.header_bits + enc.payload_bits).div_ceil(8));
    }

    #[test]
    fn skip_rule() {
        let mut ctx = CombinatoricsContext::new();
        let params = CodecParams::variable(dna(), 0, 2).unwrap();
        let enc = encode(b"aaaa", &params, &mut ctx).unwrap();
        assert_eq!(enc.account.perm_bits, 0);
        assert!(enc.blocks.iter().all(|b| b.perm_cardinality() == BigUint::from(1u32)));
        assert_eq!(decode(&enc.bytes, &mut ctx).unwrap(), b"aaaa");
        let acc = accounted_bits(&enc.blocks, params.mode, &mut ctx);
        assert_eq!(acc.perm_bits_real, 0.0);
    }

    #[test]
    fn empty_input_is_header_only() {
        let mut ctx = CombinatoricsContext::new();
        for params in [CodecParams::variable(dna(), 2, 3).unwrap(), CodecParams::fixed(dna(), 8).unwrap()] {
            let enc = encode(b"", &params, &mut ctx).unwrap();
            assert_eq!(enc.payload_bits, 0);
            assert_eq!(enc.bytes, Header { params, n: 0 }.to_bytes());
            assert_eq!(decode(&enc.bytes, &mut ctx).unwrap(), b"");
        }
    }

    #[test]
    fn header_layout_is_stable() {
        let h = Header { params: CodecParams::variable(dna(), 2, 128).unwrap(), n: 33 };
        let bytes = h.to_bytes();
        let expected: Vec<u8> = [
            &b"ENUM"[..],
            &[1, 1, 0, 4],
            b"acgt",
            &33u64.to_be_bytes(),
            &[0, 3],
            &128u32.to_be_bytes(),
        ]
        .concat();
        assert_eq!(bytes, expected);
        assert_eq!(Header::parse(&bytes).unwrap(), (h, bytes.len()));
        let f = Header { params: CodecParams::fixed(dna(), 2048).unwrap(), n: 7 };
        let fb = f.to_bytes();
        assert_eq!(fb[5], 0);
        assert_eq!(&fb[fb.len() - 4..], &2048u32.to_be_bytes());
    }

    #[test]
    fn header_errors() {
        let good = Header { params: CodecParams::fixed(dna(), 4).unwrap(), n: 0 }.to_bytes();
        let mut bad = good.clone();
        bad[0] = b'X';
        assert_eq!(Header::parse(&bad), Err(Error::BadMagic));
        let mut bad = good.clone();
        bad[4] = 2;
        assert_eq!(Header::parse(&bad), Err(Error::UnsupportedVersion(2)));
        let mut bad = good.clone();
        bad[5] = 7;
        assert!(matches!(Header::parse(&bad), Err(Error::BadHeader(_))));
        assert!(matches!(Header::parse(&good[..good.len() - 1]), Err(Error::BadHeader(_))));
        assert_eq!(Header::parse(b"EN"), Err(Error::BadMagic));
    }

    #[test]
    fn corruption_is_detected() {
        let mut ctx = CombinatoricsContext::new();
        let params = CodecParams::variable(dna(), 0, 2).unwrap();
        let enc = encode(FIG_T, &params, &mut ctx).unwrap();

        let cut = &enc.bytes[..enc.bytes.len() - 3];
        assert!(matches!(decode(cut, &mut ctx), Err(Error::Truncated { .. })));

        let mut extra = enc.bytes.clone();
        extra.push(0);
        assert_eq!(decode(&extra, &mut ctx), Err(Error::TrailingData { last_block: 6 }));

        // ask for fewer symbols than the payload holds
        let mut short = enc.bytes.clone();
        let n_at = 4 + 1 + 1 + 2 + 4;
        short[n_at..n_at + 8].copy_from_slice(&20u64.to_be_bytes());
        assert!(decode(&short, &mut ctx).is_err());
    }

    #[test]
    fn out_of_range_ranks_are_reported() {
        let mut ctx = CombinatoricsContext::new();
        // one fixed block of 3 symbols over {a, b}: K(2, 3) = 4 fits 2 bits exactly,
        // so use sigma = 3: K(3, 3) = 10 in 4 bits, write rank 15.
        let params = CodecParams::fixed(Alphabet::new(b"abc").unwrap(), 3).unwrap();
        let mut w = BitWriter::with_prefix(Header { params: params.clone(), n: 3 }.to_bytes());
        w.write_bits(15, 4);
        let bytes = w.finish();
        assert_eq!(
            decode(&bytes, &mut ctx),
            Err(Error::CorruptField { block: 0, field: Field::FrequencyRank })
        );
        // valid frequency <1,1,1> (rank of <1,1,1> among sum-3 vectors), perm rank 7 of 6
        let f = FrequencyVector::new(vec![1, 1, 1]);
        let rank = vector_to_index(&f, &mut ctx);
        let mut w = BitWriter::with_prefix(Header { params, n: 3 }.to_bytes());
        w.write_big(&rank, 4);
        w.write_bits(7, 3);
        assert_eq!(
            decode(&w.finish(), &mut ctx),
            Err(Error::CorruptField { block: 0, field: Field::PermutationRank })
        );
    }

    #[test]
    fn single_symbol_alphabet() {
        let mut ctx = CombinatoricsContext::new();
        let a = Alphabet::new(b"x").unwrap();
        for n in 0..20usize {
            let data = vec![b'x'; n];
            for params in [CodecParams::variable(a.clone(), 0, 3).unwrap(), CodecParams::fixed(a.clone(), 4).unwrap()] {
                let enc = encode(&data, &params, &mut ctx).unwrap();
                assert_eq!(enc.account.freq_bits + enc.account.perm_bits, 0);
                assert_eq!(decode(&enc.bytes, &mut ctx).unwrap(), data);
            }
        }
    }

    fn params_strategy() -> impl Strategy<Value = (Vec<u8>, CodecParams)> {
        (1usize..=6, any::<bool>(), 1u32..=5, 1u32..=9, 0usize..6)
            .prop_flat_map(|(sigma, variable, r, l, alpha)| {
                let alphabet = Alphabet::new(&b"acgtnx"[..sigma]).unwrap();
                let params = if variable {
                    CodecParams::variable(alphabet, alpha % sigma, r).unwrap()
                } else {
                    CodecParams::fixed(alphabet, l).unwrap()
                };
                (proptest::collection::vec(0..sigma as u8, 0..200), Just(params))
            })
    }

    proptest! {
        #[test]
        fn round_trip((symbols, params) in params_strategy()) {
            let mut ctx = CombinatoricsContext::new();
            let enc = encode_symbols(&symbols, &params, &mut ctx).unwrap();
            let dec = decode_container(&enc.bytes, &mut ctx).unwrap();
            prop_assert_eq!(&dec.symbols, &symbols);
            prop_assert_eq!(dec.payload_bits, enc.account.payload_bits());
            if let Mode::Variable { alpha, r } = params.mode {
                let pads: u64 = enc.blocks.iter().map(|b| b.pad_count).sum();
                let lens: u64 = enc.blocks.iter().map(Block::len).sum();
                let c_alpha = symbols.iter().filter(|&&s| s as usize == alpha).count() as u64;
                let delimiters = c_alpha / (r as u64 + 1);
                prop_assert_eq!(lens + delimiters - pads, symbols.len() as u64);
                let b = enc.blocks.len() as u64;
                let ends_on_delimiter = lens - pads + delimiters == symbols.len() as u64
                    && enc.blocks.last().is_none_or(|l| l.pad_count == 0)
                    && b == delimiters;
                prop_assert!(ends_on_delimiter || b == delimiters + 1);
                for (i, blk) in enc.blocks.iter().enumerate() {
                    prop_assert_eq!(blk.freq.counts()[alpha], r as u64);
                    prop_assert!(blk.pad_count <= r as u64);
                    if i + 1 < enc.blocks.len() {
                        prop_assert_eq!(blk.pad_count, 0);
                    }
                }
            }
        }
    }
}
