//! Upper and lower bounds on the state complexity `SC_k(s, N)`: the fewest
//! states of a `k`-DFAO whose first `N` outputs are `s`.
//!
//! The exact value is a minimum-consistent-automaton problem, so only
//! bounds are computed. Nodes are canonical msd-first prefixes `u`; the
//! node of `u` carries every defined term `s(val(u)·k^e + y)`, `y < k^e`,
//! i.e. everything an automaton must still be able to output after reading
//! `u`.
//!
//! * [`synthesize_upper`] merges nodes greedily in breadth-first order and
//!   returns a consistent automaton.
//! * [`conflict_lower`] grows a clique of pairwise-distinguishable nodes.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;

use crate::automaton::{digits, Dfao};
use crate::bounds::{sc_lower_bound, RatioValue};
use crate::error::{Error, Result};
use crate::measures::{corr2_measure, Witness};
use crate::sequences::BitSeq;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelNode {
    /// Canonical word `u` (no leading zeros, empty for the root).
    pub word: Vec<usize>,
    /// `val(u)`.
    pub base: usize,
    /// `values[e][y] = s(base·k^e + y)` for the defined `y`.
    pub values: Vec<Vec<u8>>,
}

impl KernelNode {
    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn value_at(&self, e: usize, y: usize) -> Option<u8> {
        self.values.get(e).and_then(|level| level.get(y)).copied()
    }
}

fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "ε".to_string()
    } else {
        word.iter()
            .map(|d| std::char::from_digit(*d as u32, 36).unwrap_or('?'))
            .collect()
    }
}

fn check_arity(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidArity(k))
    } else {
        Ok(())
    }
}

/// Iterates the levels `(start, len)` of the node with base index `base`.
fn levels(base: usize, k: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    let mut width = 1usize;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let start = base.checked_mul(width)?;
        if start >= n {
            return None;
        }
        let len = width.min(n - start);
        match width.checked_mul(k) {
            Some(w) if start + width < n => width = w,
            _ => done = true,
        }
        Some((start, len))
    })
}

/// All nodes with a nonempty domain and at most `depth_cap` digits, in
/// breadth-first (equivalently numeric) order.
pub fn kernel_nodes(s: &BitSeq, k: usize, depth_cap: Option<usize>) -> Result<Vec<KernelNode>> {
    check_arity(k)?;
    let n = s.len();
    let bits = s.bits();
    let mut out = Vec::new();
    for base in 0..n {
        let word = digits(base as u64, k)?.digits().to_vec();
        if depth_cap.is_some_and(|cap| word.len() > cap) {
            break;
        }
        let values = levels(base, k, n)
            .map(|(start, len)| bits[start..start + len].to_vec())
            .collect();
        out.push(KernelNode { word, base, values });
    }
    Ok(out)
}

/// Whether every term defined below both `lo` and `hi` agrees; `lo < hi`
/// so the domain of `hi` is contained in that of `lo`.
fn compatible(bits: &[u8], k: usize, lo: usize, hi: usize) -> bool {
    let n = bits.len();
    let mut width = 1usize;
    loop {
        let Some(start_hi) = hi.checked_mul(width) else {
            return true;
        };
        if start_hi >= n {
            return true;
        }
        let len = width.min(n - start_hi);
        let start_lo = lo * width;
        if bits[start_lo..start_lo + len] != bits[start_hi..start_hi + len] {
            return false;
        }
        match width.checked_mul(k) {
            Some(w) => width = w,
            None => return true,
        }
    }
}

/// Whether some suffix read canonically from both nodes yields different
/// outputs. From the root only suffixes without a leading zero count.
fn conflicting(bits: &[u8], k: usize, u: usize, v: usize) -> bool {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    if lo != 0 {
        return !compatible(bits, k, lo, hi);
    }
    let n = bits.len();
    let mut width = 1usize;
    loop {
        let Some(start_hi) = hi.checked_mul(width) else {
            return false;
        };
        if start_hi >= n {
            return false;
        }
        let len = width.min(n - start_hi);
        // y with a nonzero leading digit: y >= width / k (all y when width = 1)
        let from = if width == 1 { 0 } else { width / k };
        if from < len && bits[from..len] != bits[start_hi + from..start_hi + len] {
            return true;
        }
        match width.checked_mul(k) {
            Some(w) => width = w,
            None => return false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Synthesis {
    pub dfao: Dfao,
    pub states: usize,
    /// Access words of the states, in creation order.
    pub representatives: Vec<String>,
}

/// Greedy breadth-first merge; the returned automaton is normalized and
/// reproduces `s` (checked before returning).
pub fn synthesize_upper(s: &BitSeq, k: usize) -> Result<Synthesis> {
    check_arity(k)?;
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidLength(n, "state complexity needs N >= 2"));
    }
    let bits = s.bits();
    let mut reps: Vec<usize> = vec![0];
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let base = reps[id];
        let mut row = Vec::with_capacity(k);
        for d in 0..k {
            let child = base * k + d;
            let target = if child == 0 || child >= n {
                0
            } else if let Some(t) = reps.iter().position(|&r| compatible(bits, k, r, child)) {
                t
            } else {
                reps.push(child);
                queue.push_back(reps.len() - 1);
                reps.len() - 1
            };
            row.push(target);
        }
        if transitions.len() <= id {
            transitions.resize(id + 1, Vec::new());
        }
        transitions[id] = row;
    }
    let names: Vec<String> = (0..reps.len()).map(|i| format!("q{i}")).collect();
    let outputs = reps.iter().map(|&r| bits[r]).collect();
    let dfao = Dfao::new(k, names, transitions, 0, outputs)?;
    if dfao.num_states() != reps.len() {
        return Err(Error::Consistency(
            "synthesized automaton has unreachable states".into(),
        ));
    }
    if dfao.generate(n)?.bits() != bits {
        return Err(Error::Consistency(
            "synthesized automaton does not reproduce the sequence".into(),
        ));
    }
    let representatives = reps
        .iter()
        .map(|&r| Ok(word_label(digits(r as u64, k)?.digits())))
        .collect::<Result<_>>()?;
    Ok(Synthesis {
        states: reps.len(),
        dfao,
        representatives,
    })
}

/// A greedily grown clique of pairwise-conflicting nodes, as access words.
pub fn conflict_clique(s: &BitSeq, k: usize) -> Result<Vec<String>> {
    check_arity(k)?;
    let bits = s.bits();
    let mut clique: Vec<usize> = Vec::new();
    for node in 0..bits.len() {
        if clique.iter().all(|&c| conflicting(bits, k, c, node)) {
            clique.push(node);
        }
    }
    clique
        .iter()
        .map(|&c| Ok(word_label(digits(c as u64, k)?.digits())))
        .collect()
}

/// Size of [`conflict_clique`]: a lower bound on `SC_k(s, N)`.
pub fn conflict_lower(s: &BitSeq, k: usize) -> Result<usize> {
    Ok(conflict_clique(s, k)?.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct StateComplexityReport {
    pub sequence: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub upper: usize,
    pub lower_conflict: usize,
    /// `N/(k·C₂) − 1`.
    pub lower_cor41: RatioValue,
    pub lower_cor41_ceil: i64,
    pub witnesses: StateComplexityWitnesses,
}

#[derive(Clone, Debug, Serialize)]
pub struct StateComplexityWitnesses {
    pub representatives: Vec<String>,
    pub clique: Vec<String>,
    pub c2: u64,
    pub c2_witness: Witness,
}

impl StateComplexityReport {
    /// `max(lower_conflict, ⌈lower_cor41⌉) ≤ upper`.
    pub fn bracket_holds(&self) -> bool {
        (self.lower_conflict as i64).max(self.lower_cor41_ceil) <= self.upper as i64
    }
}

pub fn state_complexity_report(s: &BitSeq, k: usize) -> Result<(StateComplexityReport, Dfao)> {
    let n = s.len();
    if n < 3 {
        return Err(Error::InvalidLength(
            n,
            "state complexity bounds need N >= 3",
        ));
    }
    let synth = synthesize_upper(s, k)?;
    let clique = conflict_clique(s, k)?;
    let c2 = corr2_measure(s)?;
    let bound: Ratio<i64> = sc_lower_bound(c2.value, n, k)?;
    let report = StateComplexityReport {
        sequence: s.provenance().to_string(),
        n,
        k,
        upper: synth.states,
        lower_conflict: clique.len(),
        lower_cor41: RatioValue(bound),
        lower_cor41_ceil: bound.ceil().to_integer(),
        witnesses: StateComplexityWitnesses {
            representatives: synth.representatives,
            clique,
            c2: c2.value,
            c2_witness: c2.witness,
        },
    };
    Ok((report, synth.dfao))
}
