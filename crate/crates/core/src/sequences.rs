//! The built-in sequence zoo over 𝔽₂.

use std::fmt;
use std::str::FromStr;

use crate::automaton::Dfao;
use crate::error::{Error, Result};

/// A finite prefix `s_0 … s_{N-1}` over 𝔽₂ with a provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSeq {
    bits: Vec<u8>,
    provenance: String,
}

impl BitSeq {
    pub fn new(bits: Vec<u8>, provenance: impl Into<String>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidLength(0, "sequence must be non-empty"));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidLength(bits.len(), "elements must be 0 or 1"));
        }
        Ok(BitSeq {
            bits,
            provenance: provenance.into(),
        })
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse {
                    pos,
                    msg: format!("expected 0 or 1, found `{c}`"),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitSeq::new(bits, "literal")
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn get(&self, i: usize) -> u8 {
        self.bits[i]
    }

    /// The first `n` terms (`1 ≤ n ≤ len`).
    pub fn prefix(&self, n: usize) -> Result<BitSeq> {
        if n == 0 || n > self.len() {
            return Err(Error::InvalidLength(n, "prefix length out of range"));
        }
        Ok(BitSeq {
            bits: self.bits[..n].to_vec(),
            provenance: self.provenance.clone(),
        })
    }

    pub fn complement(&self) -> BitSeq {
        BitSeq {
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
            provenance: format!("complement({})", self.provenance),
        }
    }

    pub fn to_bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidLength(0, "length must be at least 1"))
    } else {
        Ok(())
    }
}

/// A binary pattern `P` of length `ell`, identified with `0 < a < 2^ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    ell: u32,
    a: u64,
}

impl PatternSpec {
    pub fn new(ell: u32, a: u64) -> Result<Self> {
        if ell == 0 || ell > 62 {
            return Err(Error::InvalidPattern {
                ell,
                a,
                reason: "ell must lie in 1..=62",
            });
        }
        if a == 0 || a >= 1 << ell {
            return Err(Error::InvalidPattern {
                ell,
                a,
                reason: "a must satisfy 0 < a < 2^ell",
            });
        }
        Ok(PatternSpec { ell, a })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn has_leading_one(&self) -> bool {
        self.a >> (self.ell - 1) == 1
    }
}

pub fn thue_morse(n: usize) -> Result<BitSeq> {
    check_len(n)?;
    let mut t = vec![0u8; n];
    for i in 1..n {
        t[i] = t[i / 2] ^ (i as u8 & 1);
    }
    BitSeq::new(t, "thue-morse")
}

pub fn rudin_shapiro(n: usize) -> Result<BitSeq> {
    let mut s = pattern_by_recurrence(PatternSpec::new(2, 3)?, n)?;
    s.provenance = "rudin-shapiro".into();
    Ok(s)
}

/// Baum-Sweet via `b_{4^k m} = 0` for even `m`, `b_{(m-1)/2}` for odd `m`.
pub fn baum_sweet(n: usize) -> Result<BitSeq> {
    check_len(n)?;
    let mut b = vec![0u8; n];
    b[0] = 1;
    for i in 1..n {
        let mut m = i;
        while m % 4 == 0 {
            m /= 4;
        }
        b[i] = if m % 2 == 0 { 0 } else { b[(m - 1) / 2] };
    }
    BitSeq::new(b, "baum-sweet")
}

/// Baum-Sweet via the block rule: 1 iff no maximal run of zeros in the
/// binary expansion has odd length.
pub fn baum_sweet_by_blocks(n: usize) -> Result<BitSeq> {
    check_len(n)?;
    let bits = (0..n as u64)
        .map(|i| {
            if i == 0 {
                return 1;
            }
            let mut m = i;
            while m > 0 {
                let zeros = m.trailing_zeros();
                if zeros % 2 == 1 {
                    return 0;
                }
                m >>= zeros;
                m >>= m.trailing_ones();
            }
            1
        })
        .collect();
    BitSeq::new(bits, "baum-sweet")
}

/// Characteristic sequence of sums of three squares: 0 iff `n = 4^a(8k+7)`.
pub fn three_squares(n: usize) -> Result<BitSeq> {
    check_len(n)?;
    let bits = (0..n)
        .map(|i| {
            if i == 0 {
                return 1;
            }
            let mut m = i;
            while m % 4 == 0 {
                m /= 4;
            }
            u8::from(m % 8 != 7)
        })
        .collect();
    BitSeq::new(bits, "three-squares")
}

/// Regular paperfolding: for `n = m·2^k` with `m` odd, 1 iff `m ≡ 1 (mod 4)`.
pub fn paperfolding(n: usize, v0: u8) -> Result<BitSeq> {
    check_len(n)?;
    if v0 > 1 {
        return Err(Error::InvalidLength(v0 as usize, "v0 must be 0 or 1"));
    }
    let bits = (0..n)
        .map(|i| {
            if i == 0 {
                return v0;
            }
            let m = i >> i.trailing_zeros();
            u8::from(m % 4 == 1)
        })
        .collect();
    BitSeq::new(bits, format!("paperfolding:{v0}"))
}

/// `r_0 = 0`, `r_n = r_{⌊n/2⌋} + [n ≡ a mod 2^ell]`.
pub fn pattern_by_recurrence(spec: PatternSpec, n: usize) -> Result<BitSeq> {
    check_len(n)?;
    let mask = (1u64 << spec.ell) - 1;
    let mut r = vec![0u8; n];
    for i in 1..n {
        r[i] = r[i / 2] ^ u8::from(i as u64 & mask == spec.a);
    }
    BitSeq::new(r, format!("pattern:{}:{}", spec.ell, spec.a))
}

/// Parity of the number of (overlapping) occurrences of the pattern in the
/// canonical binary expansion of `n`. Only patterns with a leading 1.
pub fn pattern_by_count(spec: PatternSpec, n: usize) -> Result<BitSeq> {
    check_len(n)?;
    if !spec.has_leading_one() {
        return Err(Error::InvalidPattern {
            ell: spec.ell,
            a: spec.a,
            reason: "occurrence counting requires a pattern with leading bit 1",
        });
    }
    let pattern: String = format!("{:0width$b}", spec.a, width = spec.ell as usize);
    let bits = (0..n)
        .map(|i| {
            let text = if i == 0 {
                String::new()
            } else {
                format!("{i:b}")
            };
            let hits = (0..text.len())
                .filter(|&start| text[start..].starts_with(&pattern))
                .count();
            (hits % 2) as u8
        })
        .collect();
    BitSeq::new(bits, format!("pattern:{}:{}", spec.ell, spec.a))
}

/// `w_{2n} = 1`, `w_{2n+1} = w_n + 1`.
pub fn perfect_profile_w(n: usize) -> Result<BitSeq> {
    check_len(n)?;
    let mut w = vec![0u8; n];
    for i in 0..n {
        w[i] = if i % 2 == 0 { 1 } else { w[i / 2] ^ 1 };
    }
    BitSeq::new(w, "perfect-w")
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Jacobi symbol `(a / m)` for odd `m`; equals the Legendre symbol when `m`
/// is prime.
pub fn jacobi(a: u64, m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    let mut a = a % m;
    let mut m = m;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// `l_n = 0` iff `(n / p) = 1`; in particular `l_0 = 1`.
pub fn legendre(p: u64, n: usize) -> Result<BitSeq> {
    check_len(n)?;
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n as u64 > p {
        return Err(Error::LengthExceedsPrime { n, p });
    }
    let bits = (0..n as u64).map(|i| u8::from(jacobi(i, p) != 1)).collect();
    BitSeq::new(bits, format!("legendre:{p}"))
}

/// The automata of the two figures: `thue-morse` (2 states) and
/// `rudin-shapiro` (4 states).
pub fn builtin_dfao(name: &str) -> Result<Dfao> {
    let names = |ns: &[&str]| ns.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match name {
        "thue-morse" => Dfao::new(
            2,
            names(&["A", "B"]),
            vec![vec![0, 1], vec![1, 0]],
            0,
            vec![0, 1],
        ),
        // A/0 B/0 C/1 D/1: A-0->A A-1->B B-0->A B-1->C C-0->D C-1->B D-0->D D-1->C
        "rudin-shapiro" => Dfao::new(
            2,
            names(&["A", "B", "C", "D"]),
            vec![vec![0, 1], vec![0, 2], vec![3, 1], vec![3, 2]],
            0,
            vec![0, 0, 1, 1],
        ),
        _ => Err(Error::UnknownAutomaton(name.to_string())),
    }
}

/// A sequence named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceDescriptor {
    ThueMorse,
    RudinShapiro,
    BaumSweet,
    Paperfolding { v0: u8 },
    Pattern(PatternSpec),
    ThreeSquares,
    PerfectW,
    Legendre { p: u64 },
}

impl SequenceDescriptor {
    pub fn generate(&self, n: usize) -> Result<BitSeq> {
        match *self {
            SequenceDescriptor::ThueMorse => thue_morse(n),
            SequenceDescriptor::RudinShapiro => rudin_shapiro(n),
            SequenceDescriptor::BaumSweet => baum_sweet(n),
            SequenceDescriptor::Paperfolding { v0 } => paperfolding(n, v0),
            SequenceDescriptor::Pattern(spec) => pattern_by_recurrence(spec, n),
            SequenceDescriptor::ThreeSquares => three_squares(n),
            SequenceDescriptor::PerfectW => perfect_profile_w(n),
            SequenceDescriptor::Legendre { p } => legendre(p, n),
        }
    }

    /// Built-in automaton for this sequence, when one of the figures covers it.
    pub fn automaton(&self) -> Option<Dfao> {
        match self {
            SequenceDescriptor::ThueMorse => builtin_dfao("thue-morse").ok(),
            SequenceDescriptor::RudinShapiro => builtin_dfao("rudin-shapiro").ok(),
            _ => None,
        }
    }
}

impl FromStr for SequenceDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSequence(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| unknown());
        match parts.as_slice() {
            ["thue-morse"] => Ok(SequenceDescriptor::ThueMorse),
            ["rudin-shapiro"] => Ok(SequenceDescriptor::RudinShapiro),
            ["baum-sweet"] => Ok(SequenceDescriptor::BaumSweet),
            ["three-squares"] => Ok(SequenceDescriptor::ThreeSquares),
            ["perfect-w"] => Ok(SequenceDescriptor::PerfectW),
            ["paperfolding"] => Ok(SequenceDescriptor::Paperfolding { v0: 0 }),
            ["paperfolding", v0] => match *v0 {
                "0" => Ok(SequenceDescriptor::Paperfolding { v0: 0 }),
                "1" => Ok(SequenceDescriptor::Paperfolding { v0: 1 }),
                _ => Err(unknown()),
            },
            ["pattern", ell, a] => {
                let ell = u32::try_from(num(ell)?).map_err(|_| unknown())?;
                Ok(SequenceDescriptor::Pattern(PatternSpec::new(ell, num(a)?)?))
            }
            ["legendre", p] => {
                let p = num(p)?;
                if p < 3 || !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(SequenceDescriptor::Legendre { p })
            }
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for SequenceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceDescriptor::ThueMorse => write!(f, "thue-morse"),
            SequenceDescriptor::RudinShapiro => write!(f, "rudin-shapiro"),
            SequenceDescriptor::BaumSweet => write!(f, "baum-sweet"),
            SequenceDescriptor::Paperfolding { v0 } => write!(f, "paperfolding:{v0}"),
            SequenceDescriptor::Pattern(spec) => write!(f, "pattern:{}:{}", spec.ell, spec.a),
            SequenceDescriptor::ThreeSquares => write!(f, "three-squares"),
            SequenceDescriptor::PerfectW => write!(f, "perfect-w"),
            SequenceDescriptor::Legendre { p } => write!(f, "legendre:{p}"),
        }
    }
}
