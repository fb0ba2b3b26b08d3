use std::collections::BTreeMap;

use crate::algebra::poly::BivarPoly;
use crate::sequences::BitSeq;

/// A power series over 𝔽₂ truncated modulo `x^N`, bit-packed into words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    len: usize,
    words: Vec<u64>,
}

impl TruncSeries {
    pub fn zero(len: usize) -> Self {
        TruncSeries {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn one(len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.set(0, true);
        }
        s
    }

    /// The generating series `Σ s_n x^n` of a prefix.
    pub fn from_seq(s: &BitSeq) -> Self {
        Self::from_bits(s.bits())
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut out = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|wi| wi * 64 + self.words[wi].trailing_zeros() as usize)
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn xor_assign(&mut self, other: &TruncSeries) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// `self += x^shift · other (mod x^N)`.
    pub fn xor_shifted(&mut self, other: &TruncSeries, shift: usize) {
        if shift >= self.len {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let n = self.words.len();
        for i in (ws..n).rev() {
            let src = i - ws;
            let mut v = other.words[src] << bs;
            if bs != 0 && src > 0 {
                v |= other.words[src - 1] >> (64 - bs);
            }
            self.words[i] ^= v;
        }
        self.clear_tail();
    }

    /// Truncated schoolbook product.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        debug_assert_eq!(self.len, other.len);
        let mut out = TruncSeries::zero(self.len);
        for i in 0..self.len {
            if self.get(i) {
                out.xor_shifted(other, i);
            }
        }
        out
    }

    /// `G(x)² = G(x²)` over 𝔽₂: coefficient `n` moves to `2n`.
    pub fn frobenius(&self) -> TruncSeries {
        let mut out = TruncSeries::zero(self.len);
        for i in 0..self.len.div_ceil(2) {
            if self.get(i) {
                out.set(2 * i, true);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut result = TruncSeries::one(self.len);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.frobenius();
            }
        }
        result
    }
}

/// The coefficients of `h(x, G(x)) mod x^N` for the generating series `G`
/// of `s`.
pub fn series_residue(h: &BivarPoly, s: &BitSeq) -> TruncSeries {
    let n = s.len();
    let g = TruncSeries::from_seq(s);
    let mut by_y: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (i, j) in h.monomials() {
        by_y.entry(j).or_default().push(i);
    }
    let mut out = TruncSeries::zero(n);
    for (j, xs) in by_y {
        let gj = g.pow(j);
        for i in xs {
            out.xor_shifted(&gj, i as usize);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Ok,
    /// The least index with a nonzero residue coefficient.
    Mismatch {
        first_nonzero: usize,
    },
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verification::Ok)
    }
}

/// Checks `h(x, G(x)) ≡ 0 (mod x^N)`.
pub fn verify_functional(h: &BivarPoly, s: &BitSeq) -> Verification {
    match series_residue(h, s).first_nonzero() {
        None => Verification::Ok,
        Some(first_nonzero) => Verification::Mismatch { first_nonzero },
    }
}
