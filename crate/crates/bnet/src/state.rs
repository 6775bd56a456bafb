//! Gene identifiers and bit-packed configurations.
//!
//! A [`Configuration`] assigns one bit per gene, packed into a `u64` with gene
//! 0 at the least significant bit. Rendering and ordering instead put gene 0
//! leftmost (most significant), so configurations sort exactly like their
//! printed bitstrings.

use std::fmt;

/// Index of a gene within a network; ordering follows declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneId(pub usize);

impl fmt::Display for GeneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// Largest supported network: one bit per gene in a `u64`.
pub const MAX_GENES: usize = 64;

/// A complete truth assignment over a network's genes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    bits: u64,
    width: usize,
}

impl Configuration {
    /// All-zero configuration of the given width.
    pub fn zero(width: usize) -> Self {
        assert!((1..=MAX_GENES).contains(&width), "width out of range");
        Configuration { bits: 0, width }
    }

    /// Build from raw bits; gene `i` lives at bit `i`.
    pub fn from_bits(bits: u64, width: usize) -> Self {
        let mut c = Configuration::zero(width);
        c.bits = if width == MAX_GENES {
            bits
        } else {
            bits & ((1u64 << width) - 1)
        };
        c
    }

    /// Inverse of [`Configuration::ordinal`]: build the `ord`-th configuration
    /// in rendered (gene-0-leftmost) order.
    pub fn from_ordinal(ord: u64, width: usize) -> Self {
        let c = Configuration::from_bits(ord, width);
        Configuration {
            bits: c.bits.reverse_bits() >> (MAX_GENES - width),
            width: c.width,
        }
    }

    /// Parse a bitstring such as `"010"`, gene 0 leftmost.
    pub fn parse(s: &str) -> Option<Self> {
        if s.is_empty() || s.len() > MAX_GENES {
            return None;
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(Configuration { bits, width: s.len() })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Raw packed bits (gene `i` at bit `i`); doubles as a dense array index.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Position in rendered order: the bitstring read as a binary number.
    pub fn ordinal(&self) -> u64 {
        self.bits.reverse_bits() >> (MAX_GENES - self.width)
    }

    pub fn get(&self, gene: GeneId) -> bool {
        assert!(gene.0 < self.width, "gene {} out of range", gene.0);
        self.bits >> gene.0 & 1 == 1
    }

    /// Copy with one gene set to `value`.
    pub fn with_gene(&self, gene: GeneId, value: bool) -> Self {
        assert!(gene.0 < self.width, "gene {} out of range", gene.0);
        let mask = 1u64 << gene.0;
        Configuration {
            bits: if value { self.bits | mask } else { self.bits & !mask },
            width: self.width,
        }
    }

    /// Copy with one gene flipped.
    pub fn flipped(&self, gene: GeneId) -> Self {
        assert!(gene.0 < self.width, "gene {} out of range", gene.0);
        Configuration {
            bits: self.bits ^ (1u64 << gene.0),
            width: self.width,
        }
    }

    /// Iterate every configuration of `width` genes in rendered order.
    pub fn all(width: usize) -> impl Iterator<Item = Configuration> {
        assert!((1..=MAX_GENES).contains(&width), "width out of range");
        (0..(1u128 << width)).map(move |v| Configuration::from_ordinal(v as u64, width))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.width
            .cmp(&other.width)
            .then(self.ordinal().cmp(&other.ordinal()))
    }
}
