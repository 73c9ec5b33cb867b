//! MSB-first bit packing plus Elias delta codes.

use alloc::vec::Vec;

use num_bigint::BigUint;

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    bytes: Vec<u8>,
    // bits used in the last byte, 0 means byte-aligned
    fill: u8,
    len: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Continues after an existing byte prefix (e.g. a container header).
    pub fn with_prefix(bytes: Vec<u8>) -> Self {
        let len = bytes.len() as u64 * 8;
        BitWriter { bytes, fill: 0, len }
    }

    pub fn bit_len(&self) -> u64 {
        self.len
    }

    pub fn write_bit(&mut self, bit: bool) {
        if self.fill == 0 {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> self.fill;
        }
        self.fill = (self.fill + 1) % 8;
        self.len += 1;
    }

    /// Writes the low `width` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value >> width == 0);
        for i in (0..width).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    /// Writes `value` in exactly `width` bits, most significant first.
    pub fn write_big(&mut self, value: &BigUint, width: u64) {
        debug_assert!(value.bits() <= width);
        for i in (0..width).rev() {
            self.write_bit(value.bit(i));
        }
    }

    /// Elias delta codeword for `value >= 1`.
    pub fn write_delta(&mut self, value: u64) {
        assert!(value >= 1, "Elias delta codes start at 1");
        let n = 63 - value.leading_zeros();
        let len = n + 1;
        let len_bits = 31 - len.leading_zeros();
        for _ in 0..len_bits {
            self.write_bit(false);
        }
        self.write_bits(len as u64, len_bits + 1);
        self.write_bits(value & low_mask(n), n);
    }

    /// Pads to a byte boundary with zeros and returns the bytes.
    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Bit length of the Elias delta codeword for `value >= 1`.
pub fn delta_len(value: u64) -> u64 {
    let n = 63 - value.leading_zeros() as u64;
    let len_bits = 63 - (n + 1).leading_zeros() as u64;
    2 * len_bits + 1 + n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutOfBits;

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.bytes.len() as u64 * 8 - self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool, OutOfBits> {
        let byte = *self.bytes.get((self.pos / 8) as usize).ok_or(OutOfBits)?;
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64, OutOfBits> {
        debug_assert!(width <= 64);
        if self.remaining() < width as u64 {
            return Err(OutOfBits);
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Ok(v)
    }

    pub fn read_big(&mut self, width: u64) -> Result<BigUint, OutOfBits> {
        if self.remaining() < width {
            return Err(OutOfBits);
        }
        let mut digits = alloc::vec![0u64; width.div_ceil(64) as usize];
        for i in (0..width).rev() {
            if self.read_bit()? {
                digits[(i / 64) as usize] |= 1 << (i % 64);
            }
        }
        Ok(from_u64_digits(&digits))
    }

    pub fn read_delta(&mut self) -> Result<u64, OutOfBits> {
        let mut zeros = 0u32;
        while !self.read_bit()? {
            zeros += 1;
            // the length of a u64 needs at most 7 bits, so 6 leading zeros
            if zeros > 6 {
                return Err(OutOfBits);
            }
        }
        let len = (1u64 << zeros) | self.read_bits(zeros)?;
        if len == 0 || len > 64 {
            return Err(OutOfBits);
        }
        let n = (len - 1) as u32;
        Ok((1u64 << n) | self.read_bits(n)?)
    }
}

fn from_u64_digits(digits: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(digits.len() * 8);
    for d in digits {
        bytes.extend_from_slice(&d.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn delta_codewords() {
        // 1 -> "1", 2 -> "0100", 3 -> "0101", 4 -> "01100", 17 -> "001010001"
        let cases: [(u64, &str); 5] =
            [(1, "1"), (2, "0100"), (3, "0101"), (4, "01100"), (17, "001010001")];
        for (value, code) in cases {
            let mut w = BitWriter::new();
            w.write_delta(value);
            assert_eq!(w.bit_len(), code.len() as u64, "value {value}");
            assert_eq!(delta_len(value), code.len() as u64);
            let bytes = w.finish();
            let mut r = BitReader::new(&bytes);
            let got: alloc::string::String = (0..code.len())
                .map(|_| if r.read_bit().unwrap() { '1' } else { '0' })
                .collect();
            assert_eq!(got, code);
        }
    }

    #[test]
    fn msb_first_packing() {
        let mut w = BitWriter::new();
        w.write_bits(0b101, 3);
        w.write_big(&BigUint::from(0x1fu32), 5);
        w.write_bit(true);
        assert_eq!(w.bit_len(), 9);
        assert_eq!(w.finish(), alloc::vec![0b1011_1111, 0b1000_0000]);
    }

    #[test]
    fn truncated_reads() {
        let mut r = BitReader::new(&[0xff]);
        assert_eq!(r.read_bits(9), Err(OutOfBits));
        assert_eq!(r.read_big(9), Err(OutOfBits));
        let mut r = BitReader::new(&[0x00, 0x00]);
        assert_eq!(r.read_delta(), Err(OutOfBits));
    }

    proptest! {
        #[test]
        fn fields_round_trip(values in proptest::collection::vec((any::<u64>(), 0u32..=64, 1u64..u64::MAX, any::<[u64; 3]>()), 1..20)) {
            let mut w = BitWriter::new();
            let mut expected_len = 0;
            for (v, width, d, limbs) in &values {
                let masked = v & low_mask(*width);
                w.write_bits(masked, *width);
                w.write_delta(*d);
                let big = from_u64_digits(limbs);
                w.write_big(&big, 192);
                expected_len += *width as u64 + delta_len(*d) + 192;
            }
            prop_assert_eq!(w.bit_len(), expected_len);
            let bytes = w.finish();
            let mut r = BitReader::new(&bytes);
            for (v, width, d, limbs) in &values {
                prop_assert_eq!(r.read_bits(*width).unwrap(), v & low_mask(*width));
                prop_assert_eq!(r.read_delta().unwrap(), *d);
                prop_assert_eq!(r.read_big(192).unwrap(), from_u64_digits(limbs));
            }
            prop_assert!(r.remaining() < 8);
        }
    }
}
