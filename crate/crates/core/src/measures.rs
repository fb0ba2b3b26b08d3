//! Exact pseudorandomness measures of finite binary sequences.
//!
//! * `U(s, t, a, b) = Σ_{j<t} (−1)^{s_{a+jb}}` and the well-distribution
//!   measure `W(s, N) = max |U|` over `0 ≤ a ≤ a + (t−1)b < N`;
//! * `V(s, M, D) = Σ_{n<M} (−1)^{s_{n+d₁}+…+s_{n+d_k}}` and the correlation
//!   measure `C_k(s, N) = max |V|` over lags `d₁ < … < d_k` with
//!   `M + d_k ≤ N`;
//! * the linear complexity profile `L(s, 1), …, L(s, N)`.
//!
//! `W` and `C₂` have `O(N²)` kernels: for each difference (resp. gap) the
//! best window over a ±1 chain is the spread between the largest and the
//! smallest prefix sum. Each kernel has an independent brute-force oracle.
//! Witnesses are the lexicographically smallest `(b, a, t)` resp.
//! `(g, d₁, M)` attaining the maximum.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::BitSeq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ApWitness {
    pub a: usize,
    pub b: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagWitness {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "D")]
    pub lags: Vec<usize>,
}

impl LagWitness {
    pub fn pair(m: usize, d1: usize, d2: usize) -> Self {
        LagWitness {
            m,
            lags: vec![d1, d2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Ap(ApWitness),
    Lag(LagWitness),
}

impl Witness {
    /// Re-evaluates the defining sum at this witness.
    pub fn evaluate(&self, s: &BitSeq) -> Result<i64> {
        match self {
            Witness::Ap(w) => ap_sum(s, w),
            Witness::Lag(w) => corr_sum(s, w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Optimized,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureResult {
    pub value: u64,
    pub witness: Witness,
    pub method: Method,
}

/// Size limits for the brute-force oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Largest `N` accepted by [`wd_oracle`].
    pub wd_max_len: usize,
    /// Largest `C(N, k)·N` accepted by [`corrk_oracle`].
    pub corrk_budget: u64,
    /// Largest `N` accepted by [`lincomp_oracle`] (at most 127).
    pub lincomp_max_len: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            wd_max_len: 512,
            // C(128, 3) · 128
            corrk_budget: 43_696_128,
            lincomp_max_len: 48,
        }
    }
}

impl OracleCaps {
    /// Reads overrides from `AUTOSEQ_ORACLE_CAP`: either a bare integer (the
    /// `wd` length cap) or a comma list `wd=512,corrk=43696128,lincomp=48`.
    pub fn from_env() -> Result<Self> {
        match std::env::var("AUTOSEQ_ORACLE_CAP") {
            Ok(text) => Self::parse(&text),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut caps = Self::default();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid oracle cap `{text}`"),
        };
        let text = text.trim();
        if let Ok(n) = text.parse::<usize>() {
            caps.wd_max_len = n;
            return Ok(caps);
        }
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "wd" => caps.wd_max_len = value as usize,
                "corrk" => caps.corrk_budget = value,
                "lincomp" => caps.lincomp_max_len = (value as usize).min(127),
                _ => return Err(bad()),
            }
        }
        Ok(caps)
    }
}

#[inline]
fn sign(bit: u8) -> i64 {
    1 - 2 * bit as i64
}

pub fn ap_sum(s: &BitSeq, w: &ApWitness) -> Result<i64> {
    let n = s.len();
    let valid = w.b >= 1
        && w.t >= 1
        && w.t
            .checked_sub(1)
            .and_then(|t1| t1.checked_mul(w.b))
            .and_then(|x| x.checked_add(w.a))
            .is_some_and(|last| last < n);
    if !valid {
        return Err(Error::WitnessOutOfRange(n));
    }
    Ok((0..w.t).map(|j| sign(s.get(w.a + j * w.b))).sum())
}

pub fn corr_sum(s: &BitSeq, w: &LagWitness) -> Result<i64> {
    let n = s.len();
    let increasing = w.lags.windows(2).all(|p| p[0] < p[1]);
    let fits = w
        .lags
        .last()
        .and_then(|&dk| dk.checked_add(w.m))
        .is_some_and(|end| end <= n);
    if w.m == 0 || w.lags.is_empty() || !increasing || !fits {
        return Err(Error::WitnessOutOfRange(n));
    }
    Ok((0..w.m)
        .map(|i| {
            let x = w.lags.iter().fold(0u8, |acc, &d| acc ^ s.get(i + d));
            sign(x)
        })
        .sum())
}

/// Largest `|P_q − P_p|` over prefix sums of a ±1 chain.
fn chain_spread(values: impl Iterator<Item = i64>) -> i64 {
    let (mut p, mut hi, mut lo) = (0i64, 0i64, 0i64);
    for v in values {
        p += v;
        hi = hi.max(p);
        lo = lo.min(p);
    }
    hi - lo
}

/// The smallest `(p, q)`, `p < q`, with `|P_q − P_p| = target`, where
/// `prefix[0] = 0` and `prefix[i]` is the sum of the first `i` chain
/// values. `target` must be at least the chain's spread.
fn first_window(prefix: &[i64], target: i64) -> Option<(usize, usize)> {
    let len = prefix.len();
    if len < 2 {
        return None;
    }
    // suffix extrema over prefix[i..]
    let mut suf_hi = vec![i64::MIN; len + 1];
    let mut suf_lo = vec![i64::MAX; len + 1];
    for i in (0..len).rev() {
        suf_hi[i] = suf_hi[i + 1].max(prefix[i]);
        suf_lo[i] = suf_lo[i + 1].min(prefix[i]);
    }
    let p = (0..len - 1)
        .find(|&p| suf_hi[p + 1] == prefix[p] + target || suf_lo[p + 1] == prefix[p] - target)?;
    let q = (p + 1..len).find(|&q| (prefix[q] - prefix[p]).abs() == target)?;
    Some((p, q))
}

fn prefix_sums(values: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut out = vec![0i64];
    let mut acc = 0;
    for v in values {
        acc += v;
        out.push(acc);
    }
    out
}

/// `W(s, N)` in `O(N²)`.
pub fn wd_measure(s: &BitSeq) -> MeasureResult {
    let n = s.len();
    let bits = s.bits();
    let max_b = (n - 1).max(1);
    let per_b: Vec<i64> = (1..=max_b)
        .into_par_iter()
        .map(|b| {
            (0..b.min(n))
                .map(|r| chain_spread((r..n).step_by(b).map(|i| sign(bits[i]))))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let best = *per_b.iter().max().expect("at least one difference");
    let b = per_b.iter().position(|&v| v == best).unwrap() + 1;
    let (a, t) = (0..b.min(n))
        .filter_map(|r| {
            let prefix = prefix_sums((r..n).step_by(b).map(|i| sign(bits[i])));
            first_window(&prefix, best).map(|(p, q)| (r + p * b, q - p))
        })
        .min()
        .expect("the maximising difference has a window");
    MeasureResult {
        value: best as u64,
        witness: Witness::Ap(ApWitness { a, b, t }),
        method: Method::Optimized,
    }
}

/// `W(s, N)` by the triple loop over `(b, a, t)`.
pub fn wd_oracle(s: &BitSeq, caps: &OracleCaps) -> Result<MeasureResult> {
    let n = s.len();
    if n > caps.wd_max_len {
        return Err(Error::OracleCapExceeded(format!(
            "well-distribution oracle limited to N <= {}",
            caps.wd_max_len
        )));
    }
    let mut best = (0i64, ApWitness { a: 0, b: 1, t: 1 });
    for b in 1..=(n - 1).max(1) {
        for a in 0..n {
            let mut sum = 0i64;
            let mut t = 0;
            while a + t * b < n {
                sum += sign(s.get(a + t * b));
                t += 1;
                if sum.abs() > best.0 {
                    best = (sum.abs(), ApWitness { a, b, t });
                }
            }
        }
    }
    Ok(MeasureResult {
        value: best.0 as u64,
        witness: Witness::Ap(best.1),
        method: Method::Oracle,
    })
}

/// `C₂(s, N)` in `O(N²)`.
pub fn corr2_measure(s: &BitSeq) -> Result<MeasureResult> {
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidLength(
            n,
            "correlation of order 2 needs N >= 2",
        ));
    }
    let bits = s.bits();
    let chain = |g: usize| (0..n - g).map(move |m| sign(bits[m] ^ bits[m + g]));
    let per_gap: Vec<i64> = (1..n)
        .into_par_iter()
        .map(|g| chain_spread(chain(g)))
        .collect();
    let best = *per_gap.iter().max().unwrap();
    let g = per_gap.iter().position(|&v| v == best).unwrap() + 1;
    let (d1, q) = first_window(&prefix_sums(chain(g)), best).expect("window exists");
    Ok(MeasureResult {
        value: best as u64,
        witness: Witness::Lag(LagWitness::pair(q - d1, d1, d1 + g)),
        method: Method::Optimized,
    })
}

/// `C₂(s↾n, n)` for every `n = 1..=N` in one `O(N²)` pass; entry `n − 1`
/// holds the value for the prefix of length `n` (0 for `n = 1`).
pub fn corr2_profile(s: &BitSeq) -> Vec<u64> {
    let n = s.len();
    let bits = s.bits();
    let best = (1..n)
        .into_par_iter()
        .fold(
            || vec![0i64; n + 1],
            |mut acc, g| {
                let (mut p, mut hi, mut lo) = (0i64, 0i64, 0i64);
                for m in 0..n - g {
                    p += sign(bits[m] ^ bits[m + g]);
                    hi = hi.max(p);
                    lo = lo.min(p);
                    let len = m + 1 + g;
                    acc[len] = acc[len].max(hi - lo);
                }
                acc
            },
        )
        .reduce(
            || vec![0i64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = (*x).max(y);
                }
                a
            },
        );
    let mut running = 0i64;
    best[1..]
        .iter()
        .map(|&v| {
            running = running.max(v);
            running as u64
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// `C_k(s, N)` by enumerating every lag tuple and run length.
pub fn corrk_oracle(s: &BitSeq, k: usize, caps: &OracleCaps) -> Result<MeasureResult> {
    let n = s.len();
    if k < 2 {
        return Err(Error::Precondition(format!(
            "order k = {k} must be at least 2"
        )));
    }
    if k > n {
        return Err(Error::Precondition(format!(
            "order k = {k} exceeds sequence length {n}"
        )));
    }
    let work = binomial(n as u64, k as u64).saturating_mul(n as u128);
    if work > caps.corrk_budget as u128 {
        return Err(Error::OracleCapExceeded(format!(
            "C(N, k)·N = {work} exceeds the correlation oracle budget {}",
            caps.corrk_budget
        )));
    }
    let bits = s.bits();
    let mut lags: Vec<usize> = (0..k).collect();
    let mut best: Option<(i64, LagWitness)> = None;
    loop {
        let dk = lags[k - 1];
        let mut sum = 0i64;
        for m in 0..n - dk {
            let x = lags.iter().fold(0u8, |acc, &d| acc ^ bits[m + d]);
            sum += sign(x);
            if best.as_ref().is_none_or(|(v, _)| sum.abs() > *v) {
                best = Some((
                    sum.abs(),
                    LagWitness {
                        m: m + 1,
                        lags: lags.clone(),
                    },
                ));
            }
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| lags[i] < n - k + i) else {
            break;
        };
        lags[i] += 1;
        for j in i + 1..k {
            lags[j] = lags[j - 1] + 1;
        }
    }
    let (value, witness) = best.expect("k <= N gives at least one tuple");
    Ok(MeasureResult {
        value: value as u64,
        witness: Witness::Lag(witness),
        method: Method::Oracle,
    })
}

/// Linear complexity profile `L(s, 1), …, L(s, N)` by Berlekamp-Massey
/// over 𝔽₂.
pub fn bm_profile(s: &BitSeq) -> Vec<usize> {
    let bits = s.bits();
    let n = bits.len();
    // connection polynomials, coefficient i at index i
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut profile = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = bits[i];
        for j in 1..=l {
            d ^= c[j] & bits[i - j];
        }
        if d == 0 {
            shift += 1;
        } else if 2 * l <= i {
            let prev = c.clone();
            for j in 0..=n - shift {
                c[j + shift] ^= b[j];
            }
            l = i + 1 - l;
            b = prev;
            shift = 1;
        } else {
            for j in 0..=n - shift {
                c[j + shift] ^= b[j];
            }
            shift += 1;
        }
        profile.push(l);
    }
    profile
}

/// `L(s, N)` by searching `L = 0, 1, …` for a consistent recurrence via
/// Gaussian elimination over 𝔽₂.
pub fn lincomp_oracle(s: &BitSeq, caps: &OracleCaps) -> Result<usize> {
    let n = s.len();
    if n > caps.lincomp_max_len.min(127) {
        return Err(Error::OracleCapExceeded(format!(
            "linear complexity oracle limited to N <= {}",
            caps.lincomp_max_len.min(127)
        )));
    }
    let bits = s.bits();
    'len: for l in 0..n {
        // pivots[bit] = (row, rhs) with highest set bit `bit`
        let mut pivots: Vec<Option<(u128, u8)>> = vec![None; l];
        for start in 0..n - l {
            let mut row: u128 = 0;
            for i in 0..l {
                row |= (bits[start + i] as u128) << i;
            }
            let mut rhs = bits[start + l];
            while row != 0 {
                let top = 127 - row.leading_zeros() as usize;
                match pivots[top] {
                    Some((prow, prhs)) => {
                        row ^= prow;
                        rhs ^= prhs;
                    }
                    None => {
                        pivots[top] = Some((row, rhs));
                        break;
                    }
                }
            }
            if row == 0 && rhs == 1 {
                continue 'len;
            }
        }
        return Ok(l);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{baum_sweet, perfect_profile_w, three_squares, thue_morse};
    use proptest::prelude::*;

    fn zeros(n: usize) -> BitSeq {
        BitSeq::new(vec![0; n], "zeros").unwrap()
    }

    fn seq(text: &str) -> BitSeq {
        BitSeq::from_bit_str(text).unwrap()
    }

    #[test]
    fn ap_sums() {
        let bs = baum_sweet(64).unwrap();
        let t = (64 + 1) / 4;
        assert_eq!(ap_sum(&bs, &ApWitness { a: 2, b: 4, t }).unwrap(), t as i64);
        assert_eq!(
            ap_sum(&zeros(9), &ApWitness { a: 1, b: 3, t: 3 }).unwrap(),
            3
        );
        let tm = thue_morse(8).unwrap();
        assert_eq!(ap_sum(&tm, &ApWitness { a: 0, b: 1, t: 8 }).unwrap(), 0);
        assert!(ap_sum(&tm, &ApWitness { a: 0, b: 4, t: 3 }).is_err());
        assert!(ap_sum(&tm, &ApWitness { a: 0, b: 0, t: 3 }).is_err());
        assert!(ap_sum(&tm, &ApWitness { a: 0, b: 1, t: 0 }).is_err());
    }

    #[test]
    fn wd_small_cases() {
        let r = wd_measure(&zeros(10));
        assert_eq!(r.value, 10);
        assert_eq!(r.witness, Witness::Ap(ApWitness { a: 0, b: 1, t: 10 }));
        let caps = OracleCaps::default();
        assert_eq!(wd_oracle(&seq("11111"), &caps).unwrap().value, 5);
        assert_eq!(wd_oracle(&seq("1"), &caps).unwrap().value, 1);
        assert_eq!(wd_measure(&seq("1")).value, 1);
        assert!(wd_oracle(&zeros(513), &caps).is_err());
    }

    #[test]
    fn wd_known_lower_bounds() {
        for n in 1..=2048usize {
            let bs = baum_sweet(n).unwrap();
            if n % 97 == 0 || n < 40 {
                assert!(wd_measure(&bs).value >= ((n + 1) / 4) as u64);
                assert!(wd_measure(&three_squares(n).unwrap()).value >= (n / 8) as u64);
            }
        }
    }

    #[test]
    fn corr_sums() {
        let tm = thue_morse(6).unwrap();
        assert_eq!(corr_sum(&tm, &LagWitness::pair(5, 0, 1)).unwrap(), -3);
        assert_eq!(corr_sum(&zeros(7), &LagWitness::pair(4, 1, 3)).unwrap(), 4);
        let s = seq("0110100110010110");
        let c = s.complement();
        for (m, d1, d2) in [(3, 0, 5), (10, 2, 6), (1, 0, 15)] {
            let w = LagWitness::pair(m, d1, d2);
            assert_eq!(corr_sum(&s, &w).unwrap(), corr_sum(&c, &w).unwrap());
        }
        assert!(corr_sum(&tm, &LagWitness::pair(3, 1, 4)).is_err());
        assert!(corr_sum(&tm, &LagWitness::pair(1, 2, 2)).is_err());
        assert!(corr_sum(&tm, &LagWitness::pair(0, 0, 1)).is_err());
    }

    #[test]
    fn corr2_small_cases() {
        let r = corr2_measure(&zeros(9)).unwrap();
        assert_eq!(r.value, 8);
        assert_eq!(r.witness, Witness::Lag(LagWitness::pair(8, 0, 1)));
        assert!(corr2_measure(&zeros(1)).is_err());
        let caps = OracleCaps::default();
        assert_eq!(corrk_oracle(&zeros(4), 2, &caps).unwrap().value, 3);
        let r3 = corrk_oracle(&zeros(5), 3, &caps).unwrap();
        assert_eq!(r3.value, 3);
        assert_eq!(
            r3.witness,
            Witness::Lag(LagWitness {
                m: 3,
                lags: vec![0, 1, 2]
            })
        );
        assert!(corrk_oracle(&zeros(129), 3, &caps).is_err());
        assert!(corrk_oracle(&zeros(5), 1, &caps).is_err());
    }

    #[test]
    fn corr2_known_lower_bounds() {
        for n in [6usize, 7, 50, 333, 1000] {
            let v = corr2_measure(&thue_morse(n).unwrap()).unwrap().value;
            assert!(6 * v >= n as u64, "N = {n}");
            let w = corr2_measure(&perfect_profile_w(n).unwrap()).unwrap().value;
            assert!(3 * w as i64 > n as i64 - 6, "N = {n}");
        }
    }

    #[test]
    fn profile_matches_prefix_measures() {
        let s = three_squares(300).unwrap();
        let profile = corr2_profile(&s);
        assert_eq!(profile[0], 0);
        for n in 2..=300 {
            let direct = corr2_measure(&s.prefix(n).unwrap()).unwrap().value;
            assert_eq!(profile[n - 1], direct, "N = {n}");
        }
    }

    #[test]
    fn bm_examples() {
        let tm = bm_profile(&thue_morse(4096).unwrap());
        for (i, &l) in tm.iter().enumerate() {
            let n = i + 1;
            assert_eq!(l, 2 * ((n + 2) / 4), "N = {n}");
        }
        assert_eq!(bm_profile(&zeros(5)), vec![0; 5]);
        assert_eq!(bm_profile(&seq("0001")), vec![0, 0, 0, 4]);
        let w = bm_profile(&perfect_profile_w(2048).unwrap());
        assert!(w.iter().enumerate().all(|(i, &l)| l == (i + 2) / 2));
    }

    #[test]
    fn lincomp_oracle_examples() {
        let caps = OracleCaps::default();
        assert_eq!(lincomp_oracle(&seq("0001"), &caps).unwrap(), 4);
        assert_eq!(lincomp_oracle(&seq("1111"), &caps).unwrap(), 1);
        assert_eq!(lincomp_oracle(&zeros(6), &caps).unwrap(), 0);
        assert_eq!(lincomp_oracle(&seq("1"), &caps).unwrap(), 1);
        assert_eq!(lincomp_oracle(&seq("011011011011"), &caps).unwrap(), 2);
        assert!(lincomp_oracle(&zeros(49), &caps).is_err());
    }

    #[test]
    fn cap_parsing() {
        assert_eq!(OracleCaps::parse("1024").unwrap().wd_max_len, 1024);
        let c = OracleCaps::parse("corrk=10, lincomp=200").unwrap();
        assert_eq!(c.corrk_budget, 10);
        assert_eq!(c.lincomp_max_len, 127);
        assert_eq!(c.wd_max_len, 512);
        assert!(OracleCaps::parse("speed=3").is_err());
    }

    fn arb_seq(max: usize) -> impl Strategy<Value = BitSeq> {
        (2usize..max)
            .prop_flat_map(|n| proptest::collection::vec(0u8..2, n))
            .prop_map(|bits| BitSeq::new(bits, "random").unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn kernels_match_oracles(s in arb_seq(48)) {
            let caps = OracleCaps::default();
            let wd = wd_measure(&s);
            let wd_o = wd_oracle(&s, &caps).unwrap();
            prop_assert_eq!(wd.value, wd_o.value);
            prop_assert_eq!(&wd.witness, &wd_o.witness);
            prop_assert_eq!(wd.witness.evaluate(&s).unwrap().unsigned_abs(), wd.value);

            let c2 = corr2_measure(&s).unwrap();
            let c2_o = corrk_oracle(&s, 2, &caps).unwrap();
            prop_assert_eq!(c2.value, c2_o.value);
            prop_assert_eq!(c2.witness.evaluate(&s).unwrap().unsigned_abs(), c2.value);
            prop_assert_eq!(c2_o.witness.evaluate(&s).unwrap().unsigned_abs(), c2.value);

            let c3 = corrk_oracle(&s, 3.min(s.len()), &caps).unwrap();
            prop_assert_eq!(c3.witness.evaluate(&s).unwrap().unsigned_abs(), c3.value);
        }

        #[test]
        fn complement_invariance(s in arb_seq(64)) {
            let c = s.complement();
            prop_assert_eq!(wd_measure(&s).value, wd_measure(&c).value);
            prop_assert_eq!(corr2_measure(&s).unwrap(), corr2_measure(&c).unwrap());
        }

        #[test]
        fn bm_matches_oracle_and_jump_rule(s in arb_seq(40)) {
            let caps = OracleCaps::default();
            let profile = bm_profile(&s);
            for n in 1..=s.len() {
                let prefix = s.prefix(n).unwrap();
                prop_assert_eq!(profile[n - 1], lincomp_oracle(&prefix, &caps).unwrap());
            }
            for n in 1..s.len() {
                let (a, b) = (profile[n - 1], profile[n]);
                prop_assert!(b == a || b == n + 1 - a);
            }
        }

        #[test]
        fn measures_are_monotone(s in arb_seq(96)) {
            let mut prev_w = 0;
            let mut prev_c = 0;
            for n in 2..=s.len() {
                let p = s.prefix(n).unwrap();
                let w = wd_measure(&p).value;
                let c = corr2_measure(&p).unwrap().value;
                prop_assert!(w >= prev_w && c >= prev_c);
                prev_w = w;
                prev_c = c;
            }
        }
    }
}
