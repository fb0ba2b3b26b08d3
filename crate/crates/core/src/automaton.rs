//! Deterministic finite automata with output (DFAO) reading base-k digits
//! most-significant digit first.
//!
//! A [`Dfao`] is the 6-tuple `(Q, Σ_k, δ, q₀, Δ, τ)` with `Δ = {0, 1}`.
//! States are dense indices `0..|Q|`; names are kept only for I/O.
//! Construction prunes unreachable states, since `|Q|` enters the
//! correlation lower bounds.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::BitSeq;

pub type StateId = usize;

/// A word over `Σ_k = {0, …, k-1}`, most-significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    k: usize,
    digits: Vec<usize>,
}

impl DigitWord {
    pub fn new(digits: Vec<usize>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArity(k));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= k) {
            return Err(Error::InvalidDigit { digit, k });
        }
        Ok(DigitWord { k, digits })
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// No leading zeros (the empty word is canonical).
    pub fn is_canonical(&self) -> bool {
        self.digits.first().is_none_or(|&d| d != 0)
    }

    /// The integer this word denotes, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.digits.iter().try_fold(0u64, |acc, &d| {
            acc.checked_mul(self.k as u64)?.checked_add(d as u64)
        })
    }
}

/// Canonical msd-first base-`k` expansion of `n`; `digits(0, k)` is empty.
pub fn digits(n: u64, k: usize) -> Result<DigitWord> {
    if k < 2 {
        return Err(Error::InvalidArity(k));
    }
    let mut out = Vec::new();
    let mut m = n;
    let k64 = k as u64;
    while m > 0 {
        out.push((m % k64) as usize);
        m /= k64;
    }
    out.reverse();
    Ok(DigitWord { k, digits: out })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    k: usize,
    names: Vec<String>,
    // row-major: delta[q * k + d]
    delta: Vec<StateId>,
    initial: StateId,
    outputs: Vec<u8>,
}

impl Dfao {
    /// Builds an automaton from per-state transition rows.
    ///
    /// `transitions[q][d]` is `δ(q, d)`. Validates totality and the binary
    /// output alphabet, then drops states unreachable from `initial`.
    pub fn new(
        k: usize,
        names: Vec<String>,
        transitions: Vec<Vec<StateId>>,
        initial: StateId,
        outputs: Vec<u8>,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArity(k));
        }
        let q = names.len();
        if q == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        let unique: HashSet<&String> = names.iter().collect();
        if unique.len() != q {
            return Err(Error::InvalidAutomaton("duplicate state names".into()));
        }
        if transitions.len() != q || outputs.len() != q {
            return Err(Error::InvalidAutomaton(
                "transition and output tables must cover every state".into(),
            ));
        }
        if initial >= q {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        let mut delta = Vec::with_capacity(q * k);
        for (state, row) in transitions.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidAutomaton(format!(
                    "state `{}` has {} transitions, expected {}",
                    names[state],
                    row.len(),
                    k
                )));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= q) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition target {bad} out of range"
                )));
            }
            delta.extend_from_slice(row);
        }
        if let Some(&bad) = outputs.iter().find(|&&o| o > 1) {
            return Err(Error::InvalidAutomaton(format!(
                "output {bad} is not in {{0, 1}}"
            )));
        }
        let a = Dfao {
            k,
            names,
            delta,
            initial,
            outputs,
        };
        Ok(a.prune_unreachable())
    }

    fn prune_unreachable(self) -> Self {
        let q = self.names.len();
        let mut seen = vec![false; q];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            for d in 0..self.k {
                let t = self.delta[s * self.k + d];
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        if seen.iter().all(|&b| b) {
            return self;
        }
        let mut remap = vec![usize::MAX; q];
        let mut next = 0;
        for (old, &keep) in seen.iter().enumerate() {
            if keep {
                remap[old] = next;
                next += 1;
            } else {
                log::warn!("pruning unreachable state `{}`", self.names[old]);
            }
        }
        let mut names = Vec::with_capacity(next);
        let mut delta = Vec::with_capacity(next * self.k);
        let mut outputs = Vec::with_capacity(next);
        for old in (0..q).filter(|&s| seen[s]) {
            names.push(self.names[old].clone());
            outputs.push(self.outputs[old]);
            delta.extend(
                self.delta[old * self.k..(old + 1) * self.k]
                    .iter()
                    .map(|&t| remap[t]),
            );
        }
        Dfao {
            k: self.k,
            names,
            delta,
            initial: remap[self.initial],
            outputs,
        }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn output(&self, q: StateId) -> u8 {
        self.outputs[q]
    }

    #[inline]
    pub fn step(&self, q: StateId, d: usize) -> StateId {
        self.delta[q * self.k + d]
    }

    /// `δ(q₀, 0) = q₀`.
    pub fn is_normalized(&self) -> bool {
        self.step(self.initial, 0) == self.initial
    }

    /// Left fold of `δ` over `w` from `q₀`.
    pub fn run(&self, w: &DigitWord) -> Result<StateId> {
        w.digits().iter().try_fold(self.initial, |q, &d| {
            if d >= self.k {
                Err(Error::InvalidDigit {
                    digit: d,
                    k: self.k,
                })
            } else {
                Ok(self.step(q, d))
            }
        })
    }

    /// `τ(δ(q₀, (n)_k))`.
    pub fn term(&self, n: u64) -> Result<u8> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(self.output(self.run(&digits(n, self.k)?)?))
    }

    /// The state word `w_0 … w_{N-1}` with `w_n = δ(q₀, (n)_k)`, built by
    /// the fixed-point recursion `w_{kn+d} = δ(w_n, d)`.
    pub fn fixed_point_word(&self, n: usize) -> Result<Vec<StateId>> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if n == 0 {
            return Err(Error::InvalidLength(0, "length must be at least 1"));
        }
        let mut w = Vec::with_capacity(n);
        w.push(self.initial);
        let mut parent = 0;
        while w.len() < n {
            let base = parent * self.k;
            for d in 0..self.k {
                let idx = base + d;
                if idx == 0 {
                    continue;
                }
                if idx >= n {
                    break;
                }
                debug_assert_eq!(idx, w.len());
                w.push(self.step(w[parent], d));
            }
            parent += 1;
        }
        Ok(w)
    }

    /// The first `n` outputs, in `O(n·k)`.
    pub fn generate(&self, n: usize) -> Result<BitSeq> {
        let w = self.fixed_point_word(n)?;
        let bits = w.into_iter().map(|q| self.outputs[q]).collect();
        Ok(BitSeq::new(
            bits,
            format!("automaton[k={},|Q|={}]", self.k, self.num_states()),
        )
        .expect("n >= 1 and outputs are bits"))
    }

    /// Returns an equivalent automaton with `δ(q₀, 0) = q₀`.
    ///
    /// A fresh initial state copies `q₀`'s output and non-zero transitions
    /// and loops to itself on 0. Already-invariant automata are returned
    /// unchanged.
    pub fn normalize_leading_zeros(&self) -> Dfao {
        if self.is_normalized() {
            return self.clone();
        }
        let mut name = format!("{}'", self.names[self.initial]);
        while self.names.contains(&name) {
            name.push('\'');
        }
        let fresh = self.num_states();
        let mut names = self.names.clone();
        names.push(name);
        let mut delta = self.delta.clone();
        delta.push(fresh);
        for d in 1..self.k {
            delta.push(self.step(self.initial, d));
        }
        let mut outputs = self.outputs.clone();
        outputs.push(self.outputs[self.initial]);
        Dfao {
            k: self.k,
            names,
            delta,
            initial: fresh,
            outputs,
        }
        .prune_unreachable()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AutomatonFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;
        file.into_dfao()
    }

    pub fn to_file(&self) -> AutomatonFile {
        let mut transitions = BTreeMap::new();
        let mut outputs = BTreeMap::new();
        for q in 0..self.num_states() {
            transitions.insert(
                self.names[q].clone(),
                (0..self.k)
                    .map(|d| self.names[self.step(q, d)].clone())
                    .collect(),
            );
            outputs.insert(self.names[q].clone(), self.outputs[q]);
        }
        AutomatonFile {
            k: self.k,
            states: self.names.clone(),
            initial: self.names[self.initial].clone(),
            transitions,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("automaton serializes")
    }
}

/// On-disk automaton format.
///
/// ```json
/// {"k": 2, "states": ["A", "B"], "initial": "A",
///  "transitions": {"A": ["A", "B"], "B": ["B", "A"]},
///  "outputs": {"A": 0, "B": 1}}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub k: usize,
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: BTreeMap<String, Vec<String>>,
    pub outputs: BTreeMap<String, u8>,
}

impl AutomatonFile {
    pub fn into_dfao(self) -> Result<Dfao> {
        let index = |name: &str| -> Result<StateId> {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{name}`")))
        };
        for key in self.transitions.keys().chain(self.outputs.keys()) {
            index(key)?;
        }
        let mut rows = Vec::with_capacity(self.states.len());
        let mut outs = Vec::with_capacity(self.states.len());
        for s in &self.states {
            let row = self
                .transitions
                .get(s)
                .ok_or_else(|| Error::InvalidAutomaton(format!("no transitions for `{s}`")))?;
            rows.push(row.iter().map(|t| index(t)).collect::<Result<Vec<_>>>()?);
            outs.push(
                *self
                    .outputs
                    .get(s)
                    .ok_or_else(|| Error::InvalidAutomaton(format!("no output for `{s}`")))?,
            );
        }
        let initial = index(&self.initial)?;
        Dfao::new(self.k, self.states.clone(), rows, initial, outs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::builtin_dfao;
    use proptest::prelude::*;

    fn word(ds: &[usize]) -> DigitWord {
        DigitWord::new(ds.to_vec(), 2).unwrap()
    }

    fn names(w: &[StateId], a: &Dfao) -> Vec<String> {
        w.iter().map(|&q| a.state_name(q).to_string()).collect()
    }

    #[test]
    fn digit_expansions() {
        assert_eq!(digits(6, 2).unwrap().digits(), &[1, 1, 0]);
        assert!(digits(0, 2).unwrap().is_empty());
        assert_eq!(digits(11, 3).unwrap().digits(), &[1, 0, 2]);
        assert_eq!(digits(5, 1), Err(Error::InvalidArity(1)));
    }

    #[test]
    fn run_figure_automata() {
        let tm = builtin_dfao("thue-morse").unwrap();
        let rs = builtin_dfao("rudin-shapiro").unwrap();
        assert_eq!(tm.state_name(tm.run(&word(&[1, 1])).unwrap()), "A");
        assert_eq!(rs.state_name(rs.run(&word(&[1, 1])).unwrap()), "C");
        assert_eq!(tm.run(&word(&[])).unwrap(), tm.initial());
        let bad = DigitWord::new(vec![2], 3).unwrap();
        assert_eq!(tm.run(&bad), Err(Error::InvalidDigit { digit: 2, k: 2 }));
    }

    #[test]
    fn terms_and_prefixes() {
        let tm = builtin_dfao("thue-morse").unwrap();
        let rs = builtin_dfao("rudin-shapiro").unwrap();
        assert_eq!(tm.term(3).unwrap(), 0);
        assert_eq!(tm.term(0).unwrap(), 0);
        assert_eq!(rs.term(7).unwrap(), 0);
        assert_eq!(tm.generate(8).unwrap().bits(), &[0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(rs.generate(8).unwrap().bits(), &[0, 0, 0, 1, 0, 0, 1, 0]);
        assert_eq!(tm.generate(1).unwrap().bits(), &[0]);
    }

    #[test]
    fn fixed_point_words() {
        let tm = builtin_dfao("thue-morse").unwrap();
        let rs = builtin_dfao("rudin-shapiro").unwrap();
        assert_eq!(
            names(&tm.fixed_point_word(4).unwrap(), &tm),
            ["A", "B", "B", "A"]
        );
        assert_eq!(tm.fixed_point_word(1).unwrap(), vec![tm.initial()]);
        // B --0--> A, so (10)_2 and (100)_2 land in A.
        assert_eq!(
            names(&rs.fixed_point_word(5).unwrap(), &rs),
            ["A", "B", "A", "C", "A"]
        );
    }

    fn shifted() -> Dfao {
        // δ(q0, 0) = q1 ≠ q0
        Dfao::new(
            2,
            vec!["q0".into(), "q1".into()],
            vec![vec![1, 0], vec![0, 0]],
            0,
            vec![0, 1],
        )
        .unwrap()
    }

    #[test]
    fn normalization() {
        let tm = builtin_dfao("thue-morse").unwrap();
        assert_eq!(tm.normalize_leading_zeros(), tm);
        let rs = builtin_dfao("rudin-shapiro").unwrap();
        assert_eq!(rs.normalize_leading_zeros(), rs);

        let a = shifted();
        assert!(!a.is_normalized());
        assert_eq!(a.term(1), Err(Error::NotNormalized));
        let b = a.normalize_leading_zeros();
        assert!(b.is_normalized());
        assert_eq!(b.num_states(), a.num_states() + 1);
        for n in 0..200u64 {
            let expected = a.output(a.run(&digits(n, 2).unwrap()).unwrap());
            assert_eq!(b.term(n).unwrap(), expected, "n = {n}");
        }
        assert_eq!(b.normalize_leading_zeros(), b);
    }

    #[test]
    fn load_prunes_unreachable_and_validates() {
        let a = Dfao::new(
            2,
            vec!["A".into(), "B".into(), "Z".into()],
            vec![vec![0, 1], vec![1, 0], vec![2, 2]],
            0,
            vec![0, 1, 1],
        )
        .unwrap();
        assert_eq!(a.num_states(), 2);
        assert!(a.state_by_name("Z").is_none());

        let missing = r#"{"k":2,"states":["A","B"],"initial":"A",
            "transitions":{"A":["A","B"]},"outputs":{"A":0,"B":1}}"#;
        assert!(matches!(
            Dfao::from_json(missing),
            Err(Error::InvalidAutomaton(_))
        ));
        let short = r#"{"k":2,"states":["A"],"initial":"A",
            "transitions":{"A":["A"]},"outputs":{"A":0}}"#;
        assert!(matches!(
            Dfao::from_json(short),
            Err(Error::InvalidAutomaton(_))
        ));
        let badout = r#"{"k":2,"states":["A"],"initial":"A",
            "transitions":{"A":["A","A"]},"outputs":{"A":2}}"#;
        assert!(matches!(
            Dfao::from_json(badout),
            Err(Error::InvalidAutomaton(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let rs = builtin_dfao("rudin-shapiro").unwrap();
        assert_eq!(Dfao::from_json(&rs.to_json()).unwrap(), rs);
    }

    #[test]
    fn fast_path_matches_definition() {
        for name in ["thue-morse", "rudin-shapiro"] {
            let a = builtin_dfao(name).unwrap();
            let s = a.generate(10_000).unwrap();
            let w = a.fixed_point_word(10_000).unwrap();
            for n in 0..10_000usize {
                let q = a.run(&digits(n as u64, 2).unwrap()).unwrap();
                assert_eq!(w[n], q);
                assert_eq!(s.bits()[n], a.output(q));
                for d in 0..2 {
                    if 2 * n + d < w.len() && 2 * n + d > 0 {
                        assert_eq!(w[2 * n + d], a.step(w[n], d));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn value_inverts_digits(n in any::<u64>(), k in 2usize..17) {
            let w = digits(n, k).unwrap();
            prop_assert!(w.is_canonical());
            prop_assert_eq!(w.value(), Some(n));
        }

        #[test]
        fn ternary_fixed_point_identity(
            rows in proptest::collection::vec(proptest::collection::vec(0usize..4, 3), 4),
            outs in proptest::collection::vec(0u8..2, 4),
        ) {
            let names = (0..4).map(|i| format!("s{i}")).collect();
            let a = Dfao::new(3, names, rows, 0, outs).unwrap().normalize_leading_zeros();
            let w = a.fixed_point_word(300).unwrap();
            for n in 0..300u64 {
                prop_assert_eq!(w[n as usize], a.run(&digits(n, 3).unwrap()).unwrap());
            }
        }
    }
}
