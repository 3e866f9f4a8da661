use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A Bell state identified by its bit-flip bit `a` and phase-flip bit `b`:
/// `|B(a, b)⟩ ∝ Σ_x (-1)^(b·x) |x, x ⊕ a⟩`.
///
/// B1 = (0,0), B2 = (0,1), B3 = (1,0), B4 = (1,1). The derived ordering is
/// lexicographic on `(a, b)`, i.e. B1 < B2 < B3 < B4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BellLabel {
    a: bool,
    b: bool,
}

impl BellLabel {
    pub const B1: BellLabel = BellLabel { a: false, b: false };
    pub const B2: BellLabel = BellLabel { a: false, b: true };
    pub const B3: BellLabel = BellLabel { a: true, b: false };
    pub const B4: BellLabel = BellLabel { a: true, b: true };
    pub const ALL: [BellLabel; 4] = [Self::B1, Self::B2, Self::B3, Self::B4];

    pub const fn new(a: bool, b: bool) -> Self {
        Self { a, b }
    }

    pub const fn a(self) -> bool {
        self.a
    }

    pub const fn b(self) -> bool {
        self.b
    }

    /// `(a << 1) | b`, in `0..4`.
    pub const fn bits(self) -> usize {
        ((self.a as usize) << 1) | self.b as usize
    }

    pub fn from_bits(bits: usize) -> Self {
        Self::new(bits & 0b10 != 0, bits & 0b01 != 0)
    }

    /// The conventional 1-based index, B1..B4.
    pub const fn index(self) -> usize {
        self.bits() + 1
    }

    pub fn from_index(index: usize) -> Option<Self> {
        (1..=4).contains(&index).then(|| Self::from_bits(index - 1))
    }

    /// XOR of the bit pairs; the label reached by applying the Pauli
    /// flips encoded in `other`.
    pub fn xor(self, other: BellLabel) -> BellLabel {
        BellLabel::new(self.a ^ other.a, self.b ^ other.b)
    }

    /// The two-character bit form `"ab"` used by the text format.
    pub fn bit_string(self) -> String {
        format!("{}{}", self.a as u8, self.b as u8)
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.index())
    }
}

/// Accepts `B1`..`B4` (any case) or the bit form `00`..`11`.
impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parsed = match t.as_bytes() {
            [b'B' | b'b', d] => (*d as char)
                .to_digit(10)
                .and_then(|d| Self::from_index(d as usize)),
            [x @ (b'0' | b'1'), y @ (b'0' | b'1')] => Some(Self::new(*x == b'1', *y == b'1')),
            _ => None,
        };
        parsed.ok_or_else(|| Error::Parse(format!("not a Bell label: {s:?}")))
    }
}
