//! Codeword arithmetic: fixed-width binary and reflected Gray representations.
//!
//! Items are numbered from 1 while codewords encode the value `index - 1`, so
//! [`vec2int`] adds one when converting a codeword back to an item index.
//! All textual forms are MSB first: the string `011` encodes the value 3.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widths are capped so that `value + 1` in [`vec2int`] cannot overflow a u64.
pub const MAX_WIDTH: u32 = 63;

/// Fixed-width bit string, MSB first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    value: u64,
    width: u32,
}

impl Codeword {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Domain(format!(
                "codeword width must be in 1..={MAX_WIDTH}, got {width}"
            )));
        }
        if value >> width != 0 {
            return Err(Error::Domain(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Codeword { value, width })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Bit `i` counting from 0 at the MSB.
    #[inline]
    pub fn bit(&self, i: u32) -> bool {
        assert!(i < self.width, "bit index out of range");
        (self.value >> (self.width - 1 - i)) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| self.bit(i))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let width = s.len() as u32;
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Parse(format!(
                "codeword string length must be in 1..={MAX_WIDTH}"
            )));
        }
        let mut value = 0u64;
        for c in s.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
                };
        }
        Codeword::new(value, width)
    }
}

/// MSB-first binary representation of `v`, padded to `width` bits.
pub fn int_to_binary(v: u64, width: u32) -> Result<Codeword> {
    Codeword::new(v, width)
}

/// Decimal value of the codeword plus one: the index of the item it names.
pub fn vec2int(c: Codeword) -> u64 {
    c.value + 1
}

/// Bitwise complement at the same width.
pub fn complement(c: Codeword) -> Codeword {
    let mask = if c.width == 64 {
        u64::MAX
    } else {
        (1u64 << c.width) - 1
    };
    Codeword {
        value: !c.value & mask,
        width: c.width,
    }
}

/// Reflected Gray codeword of rank `v`: `g = b ^ (b >> 1)`.
///
/// Consecutive ranks differ in exactly one bit position.
pub fn int_to_gray(v: u64, width: u32) -> Result<Codeword> {
    let c = Codeword::new(v, width)?;
    Ok(Codeword {
        value: c.value ^ (c.value >> 1),
        width,
    })
}

/// Rank of a reflected Gray codeword; inverse of [`int_to_gray`].
///
/// Runs in time linear in the width (one XOR fold per bit).
pub fn gray_to_int(c: Codeword) -> u64 {
    let mut value = 0u64;
    let mut acc = false;
    for i in 0..c.width {
        acc ^= c.bit(i);
        value = (value << 1) | acc as u64;
    }
    value
}
