//! Recognizers for the polynomial shapes that force large measures.
//!
//! * `f₂(y^{2^ℓ}) + x·f₁(y²) + y + f₀(x)`, `ℓ ≥ 2`, `deg f₀ ≤ 2^ℓ − 3`
//!   (large well-distribution measure, witness `a = 2^ℓ − 2`);
//! * `f₁(x², y²) + (x^{2^ℓ} + 1)·y + f₀(x)`, `ℓ ≥ 1`, `deg f₀ ≤ 2^ℓ − 2`
//!   (large well-distribution measure, witness `a = 2^ℓ − 1`);
//! * `(x+1)^{2^ℓ}·((a₁x + a₀)·y² + y) + f(x)`, `ℓ ≥ 0`, `deg f ≤ 2^ℓ − 1`,
//!   `(a₁, a₀) ≠ (0, 0)` (large correlation measure of order 2).

use serde::Serialize;

use crate::algebra::poly::BivarPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum PolyForm {
    /// `f2`, `f1` list the exponents of their variable `z`; `f0` lists
    /// exponents of `x`.
    #[serde(rename = "Thm1-form7")]
    Thm1Form7 {
        ell: u32,
        f2: Vec<u32>,
        f1: Vec<u32>,
        f0: Vec<u32>,
    },
    /// `f1` lists `(p, q)` for monomials `X^p Y^q` with `X = x²`, `Y = y²`.
    #[serde(rename = "Thm1-form8")]
    Thm1Form8 {
        ell: u32,
        f1: Vec<(u32, u32)>,
        f0: Vec<u32>,
    },
    #[serde(rename = "Thm2")]
    Thm2 {
        ell: u32,
        a0: u8,
        a1: u8,
        f: Vec<u32>,
    },
    #[serde(rename = "none")]
    None,
}

impl PolyForm {
    pub fn ell(&self) -> Option<u32> {
        match self {
            PolyForm::Thm1Form7 { ell, .. }
            | PolyForm::Thm1Form8 { ell, .. }
            | PolyForm::Thm2 { ell, .. } => Some(*ell),
            PolyForm::None => None,
        }
    }

    /// Rebuilds `h` from the extracted parameters.
    pub fn recombine(&self) -> Option<BivarPoly> {
        let p = |ell: u32| 1u32 << ell;
        let h = match self {
            PolyForm::Thm1Form7 { ell, f2, f1, f0 } => BivarPoly::from_monomials(
                f2.iter()
                    .map(|&e| (0, e * p(*ell)))
                    .chain(f1.iter().map(|&e| (1, 2 * e)))
                    .chain(std::iter::once((0, 1)))
                    .chain(f0.iter().map(|&i| (i, 0))),
            ),
            PolyForm::Thm1Form8 { ell, f1, f0 } => BivarPoly::from_monomials(
                f1.iter()
                    .map(|&(a, b)| (2 * a, 2 * b))
                    .chain([(p(*ell), 1), (0, 1)])
                    .chain(f0.iter().map(|&i| (i, 0))),
            ),
            PolyForm::Thm2 { ell, a0, a1, f } => {
                let shift = BivarPoly::from_x_exponents([p(*ell), 0]);
                let mut inner = BivarPoly::y();
                if *a1 == 1 {
                    inner = &inner + &BivarPoly::monomial(1, 2);
                }
                if *a0 == 1 {
                    inner = &inner + &BivarPoly::monomial(0, 2);
                }
                &(&shift * &inner) + &BivarPoly::from_x_exponents(f.iter().copied())
            }
            PolyForm::None => return None,
        };
        Some(h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormClassification {
    pub form: PolyForm,
    /// Every other decomposition found; the first match is not claimed to
    /// be unique.
    pub alternatives: Vec<PolyForm>,
}

fn ell_limit(h: &BivarPoly) -> u32 {
    let dx = h.degree_x().unwrap_or(0) as u64;
    let dy = h.degree_y().unwrap_or(0) as u64;
    let need = (dx + 3).max(dy).max(4);
    let mut ell = 0;
    while (1u64 << ell) < need && ell < 31 {
        ell += 1;
    }
    ell
}

fn match_form7(h: &BivarPoly, ell: u32) -> Option<PolyForm> {
    if ell < 2 {
        return None;
    }
    let p = 1u64 << ell;
    let (mut f2, mut f1, mut f0) = (Vec::new(), Vec::new(), Vec::new());
    let mut has_y = false;
    for (i, j) in h.monomials() {
        if (i, j) == (0, 1) {
            has_y = true;
        } else if j == 0 {
            if i as u64 + 3 > p {
                return None;
            }
            f0.push(i);
        } else if i == 0 && (j as u64).is_multiple_of(p) {
            f2.push((j as u64 / p) as u32);
        } else if i == 1 && j % 2 == 0 {
            f1.push(j / 2);
        } else {
            return None;
        }
    }
    has_y.then_some(PolyForm::Thm1Form7 { ell, f2, f1, f0 })
}

fn y_coefficient_is_shift(h: &BivarPoly, ell: u32) -> bool {
    let c = h.y_coefficient(1);
    let p = 1u32 << ell;
    c.len() == 2 && c.contains(&0) && c.contains(&p)
}

fn match_form8(h: &BivarPoly, ell: u32) -> Option<PolyForm> {
    if ell < 1 || !y_coefficient_is_shift(h, ell) {
        return None;
    }
    let p = 1u64 << ell;
    let (mut f1, mut f0) = (Vec::new(), Vec::new());
    for (i, j) in h.monomials().filter(|m| m.1 != 1) {
        if j == 0 && i as u64 + 2 <= p {
            f0.push(i);
        } else if i % 2 == 0 && j % 2 == 0 {
            f1.push((i / 2, j / 2));
        } else {
            return None;
        }
    }
    Some(PolyForm::Thm1Form8 { ell, f1, f0 })
}

fn match_thm2(h: &BivarPoly, ell: u32) -> Option<PolyForm> {
    if h.degree_y()? > 2 || !y_coefficient_is_shift(h, ell) {
        return None;
    }
    let p = 1u32 << ell;
    let f = h.y_coefficient(0);
    if f.iter().any(|&i| i >= p) {
        return None;
    }
    let f: Vec<u32> = f.into_iter().collect();
    let quad = h.y_coefficient(2);
    [(1u8, 0u8), (0, 1), (1, 1)]
        .into_iter()
        .find_map(|(a0, a1)| {
            let candidate = PolyForm::Thm2 {
                ell,
                a0,
                a1,
                f: f.clone(),
            };
            let rebuilt = candidate.recombine()?;
            (rebuilt.y_coefficient(2) == quad).then_some(candidate)
        })
}

/// Tries `ℓ = 0, 1, …` and, for each, the correlation shape followed by the
/// two well-distribution shapes; returns the first match and lists the rest.
pub fn classify_form(h: &BivarPoly) -> FormClassification {
    let mut found = Vec::new();
    if !h.is_zero() {
        for ell in 0..=ell_limit(h) {
            for matcher in [match_thm2, match_form7, match_form8] {
                if let Some(form) = matcher(h, ell) {
                    debug_assert_eq!(form.recombine().as_ref(), Some(h));
                    found.push(form);
                }
            }
        }
    }
    let mut it = found.into_iter();
    FormClassification {
        form: it.next().unwrap_or(PolyForm::None),
        alternatives: it.collect(),
    }
}

/// `(x+1)^{2^ℓ+1}·y² + (x+1)^{2^ℓ}·y + x^a`, the polynomial of the pattern
/// sequence with pattern value `a`.
pub fn pattern_polynomial(ell: u32, a: u64) -> BivarPoly {
    let p = 1u32 << ell;
    BivarPoly::from_monomials([
        (p + 1, 2),
        (p, 2),
        (1, 2),
        (0, 2),
        (p, 1),
        (0, 1),
        (a as u32, 0),
    ])
}
