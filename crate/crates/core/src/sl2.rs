//! ε-characters for `sl_2` at a root of unity with `ε²` of order `l`.
//!
//! The character ring lives in `Z[Y_0^±, Y_2^±, …, Y_{2l-2}^±]`. Table
//! position `j` holds `Y_{2j}`, and indices are read modulo `2l`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Mono, VarTable};
use crate::typec::{crossing, Orbit};

/// The variable table `Y0, Y2, …, Y{2l-2}`.
pub fn y_table(l: usize) -> Result<Arc<VarTable>> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "level l = {l} must be at least 2"
        )));
    }
    VarTable::new((0..l).map(|j| format!("Y{}", 2 * j)))
}

/// A Kirillov–Reshetikhin string `Y_{2d} Y_{2d+2} … Y_{2(d+k-1)}` with
/// `k` factors; `d` is taken modulo `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KRString {
    pub d: usize,
    pub k: usize,
}

impl KRString {
    pub fn new(l: usize, d: usize, k: usize) -> Self {
        Self { d: d % l, k }
    }

    /// The diagonal orbit `[2d-2, 2d+2k]` of the `2l`-gon.
    pub fn orbit(&self, l: usize) -> Orbit {
        let n = l - 1;
        Orbit::from_positions(n, self.d + 2 * l - 1, self.d + self.k)
    }

    /// The string attached to a diagonal orbit (sides give the empty string).
    pub fn from_orbit(l: usize, o: &Orbit) -> Self {
        Self::new(l, o.start + 1, o.span - 1)
    }

    pub fn monomial(&self, l: usize) -> Mono {
        Mono::from_pairs((0..self.k).map(|j| ((self.d + j) % l, 1)))
    }
}

/// The `k + 1` term ladder `Σ_t Y_{2d}…Y_{2(d+k-t-1)} · Y_{2(d+k-t+1)}^{-1}…Y_{2(d+k)}^{-1}`
/// with no restriction on `k`.
pub fn ladder_character(table: &Arc<VarTable>, l: usize, d: usize, k: usize) -> LaurentPoly {
    let terms = (0..=k).map(|t| {
        let pos = (0..k - t).map(|j| ((d + j) % l, 1));
        let neg = (k - t + 1..=k).map(|j| ((d + j) % l, -1));
        (Mono::from_pairs(pos.chain(neg)), BigInt::one())
    });
    LaurentPoly::from_terms(table, terms)
}

/// Character of the simple KR module of a string; requires `k < l`.
pub fn kr_character(table: &Arc<VarTable>, l: usize, s: &KRString) -> Result<LaurentPoly> {
    if s.k >= l {
        return Err(Error::InvalidArgument(format!(
            "string length {} is not below l = {l}",
            s.k
        )));
    }
    Ok(ladder_character(table, l, s.d, s.k))
}

/// `Y_0 Y_2 … Y_{2l-2} + (Y_0 Y_2 … Y_{2l-2})^{-1}`.
pub fn z_character(table: &Arc<VarTable>, l: usize) -> LaurentPoly {
    let full = Mono::from_pairs((0..l).map(|j| (j, 1)));
    LaurentPoly::from_terms(table, [(full.inv(), BigInt::one()), (full, BigInt::one())])
}

/// `Σ_{j=0}^{a} Y^{a-2j}` for the full cycle `Y = Y_0 … Y_{2l-2}`.
pub fn frobenius_character(table: &Arc<VarTable>, l: usize, a: usize) -> LaurentPoly {
    let full = Mono::from_pairs((0..l).map(|j| (j, 1)));
    LaurentPoly::from_terms(
        table,
        (0..=a).map(|j| (full.pow(a as i32 - 2 * j as i32), BigInt::one())),
    )
}

/// A simple module label: non-crossing KR strings with multiplicities and a
/// Frobenius power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleLabelA1 {
    pub strings: BTreeMap<KRString, u32>,
    pub frobenius: u32,
}

impl SimpleLabelA1 {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn string(l: usize, d: usize, k: usize) -> Self {
        let mut strings = BTreeMap::new();
        if k > 0 {
            strings.insert(KRString::new(l, d, k), 1);
        }
        Self {
            strings,
            frobenius: 0,
        }
    }

    pub fn frobenius(a: u32) -> Self {
        Self {
            strings: BTreeMap::new(),
            frobenius: a,
        }
    }

    /// Checks string lengths and pairwise compatibility of the diagonals.
    pub fn validate(&self, l: usize) -> Result<()> {
        for s in self.strings.keys() {
            if s.k == 0 || s.k >= l {
                return Err(Error::InvalidArgument(format!(
                    "string length {} must be in 1..{l}",
                    s.k
                )));
            }
        }
        let orbits: Vec<Orbit> = self.strings.keys().map(|s| s.orbit(l)).collect();
        for (i, a) in orbits.iter().enumerate() {
            for b in &orbits[i + 1..] {
                if crossing(a, b) {
                    return Err(Error::InvalidArgument(format!(
                        "strings with diagonals {a} and {b} cross"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Highest monomial `∏ strings · (Y_0…Y_{2l-2})^a`.
    pub fn dominant_monomial(&self, l: usize) -> Mono {
        let mut m = Mono::from_pairs((0..l).map(|j| (j, self.frobenius as i32)));
        for (s, &mult) in &self.strings {
            m = &m * &s.monomial(l).pow(mult as i32);
        }
        m
    }

    pub fn to_json(&self, l: usize) -> LabelJson {
        LabelJson {
            l,
            strings: self
                .strings
                .iter()
                .map(|(s, &mult)| StringJson {
                    d: s.d,
                    k: s.k,
                    mult,
                })
                .collect(),
            frobenius: self.frobenius,
        }
    }

    pub fn from_json(json: &LabelJson) -> Result<Self> {
        let mut strings = BTreeMap::new();
        for s in &json.strings {
            if s.k > 0 && s.mult > 0 {
                *strings.entry(KRString::new(json.l, s.d, s.k)).or_insert(0) += s.mult;
            }
        }
        let lab = Self {
            strings,
            frobenius: json.frobenius,
        };
        lab.validate(json.l)?;
        Ok(lab)
    }
}

impl fmt::Display for SimpleLabelA1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .strings
            .iter()
            .map(|(s, &m)| {
                let base = format!("W({},{})", s.k, s.d);
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        if self.frobenius > 0 {
            parts.push(format!("Fr^{}", self.frobenius));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringJson {
    pub d: usize,
    pub k: usize,
    #[serde(default = "one_u32")]
    pub mult: u32,
}

fn one_u32() -> u32 {
    1
}

/// `{"l": int, "strings": [{"d", "k", "mult"}…], "frobenius": int}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub l: usize,
    #[serde(default)]
    pub strings: Vec<StringJson>,
    #[serde(default)]
    pub frobenius: u32,
}

/// Splits a dominant monomial into its Frobenius part and non-crossing KR
/// strings. The full-cycle power is stripped first; the rest is cut into
/// level sets `{j : e_j ≥ t}`, whose maximal cyclic runs are the strings.
pub fn factor_dominant(l: usize, m: &Mono) -> Result<SimpleLabelA1> {
    if m.iter().any(|(p, _)| p >= l) {
        return Err(Error::InvalidArgument(
            "monomial outside the Y table".into(),
        ));
    }
    let exps = m.to_dense(l);
    if exps.iter().any(|&e| e < 0) {
        return Err(Error::InvalidArgument("monomial is not dominant".into()));
    }
    let a = *exps.iter().min().unwrap();
    let rest: Vec<i32> = exps.iter().map(|e| e - a).collect();
    let mut lab = SimpleLabelA1::frobenius(a as u32);
    let top = *rest.iter().max().unwrap();
    if top > 0 {
        let zero = rest.iter().position(|&e| e == 0).unwrap();
        for t in 1..=top {
            let mut run: Option<usize> = None;
            for step in 1..=l {
                let j = (zero + step) % l;
                let inside = step < l && rest[j] >= t;
                match (inside, run) {
                    (true, None) => run = Some(step),
                    (false, Some(st)) => {
                        let s = KRString::new(l, zero + st, step - st);
                        *lab.strings.entry(s).or_insert(0) += 1;
                        run = None;
                    }
                    _ => {}
                }
            }
        }
    }
    lab.validate(l)
        .map_err(|e| Error::Invariant(format!("factorization produced crossing strings: {e}")))?;
    Ok(lab)
}

/// Product of the KR characters (with multiplicity) and the Frobenius
/// character.
pub fn simple_character(
    table: &Arc<VarTable>,
    l: usize,
    lab: &SimpleLabelA1,
) -> Result<LaurentPoly> {
    let mut acc = frobenius_character(table, l, lab.frobenius as usize);
    for (s, &mult) in &lab.strings {
        acc = &acc * &kr_character(table, l, s)?.pow(mult);
    }
    Ok(acc)
}

/// Decomposes a character into simple classes by repeatedly removing the
/// simple character of its graded-lex largest dominant monomial.
pub fn decompose_character(
    table: &Arc<VarTable>,
    l: usize,
    chi: &LaurentPoly,
) -> Result<BTreeMap<SimpleLabelA1, BigInt>> {
    let mut rest = chi.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let (m, c) = rest.leading_dominant_term().ok_or_else(|| {
            Error::Invariant("remaining character has no dominant monomial".into())
        })?;
        if !c.is_positive() {
            return Err(Error::Invariant(format!(
                "dominant monomial {} has coefficient {c}",
                rest.format_monomial(&m)
            )));
        }
        let lab = factor_dominant(l, &m)?;
        let sc = simple_character(table, l, &lab)?;
        rest = &rest - &sc.scale(&c);
        *out.entry(lab).or_insert_with(BigInt::zero) += c;
    }
    Ok(out)
}

/// Decomposes the tensor product of the given simple modules.
pub fn decompose(l: usize, labels: &[SimpleLabelA1]) -> Result<BTreeMap<SimpleLabelA1, BigInt>> {
    let table = y_table(l)?;
    let mut chi = LaurentPoly::one(&table);
    for lab in labels {
        lab.validate(l)?;
        chi = &chi * &simple_character(&table, l, lab)?;
    }
    decompose_character(&table, l, &chi)
}

/// Rotates all indices by `2t`.
pub fn shift_character(p: &LaurentPoly, l: usize, t: usize) -> LaurentPoly {
    p.map_monomials(|m| m.remap(|j| (j + t) % l))
}

pub fn shift_label(l: usize, lab: &SimpleLabelA1, t: usize) -> SimpleLabelA1 {
    SimpleLabelA1 {
        strings: lab
            .strings
            .iter()
            .map(|(s, &m)| (KRString::new(l, s.d + t, s.k), m))
            .collect(),
        frobenius: lab.frobenius,
    }
}

/// The T-system identity
/// `χ(d, k+1)·χ(d+1, k+1) = χ(d+1, k)·χ(d, k+2) + 1`, evaluated with the
/// ladder formula so that it also makes sense when `k + 2 = l`.
pub fn t_system_holds(l: usize, d: usize, k: usize) -> Result<bool> {
    let t = y_table(l)?;
    let lhs = &ladder_character(&t, l, d, k + 1) * &ladder_character(&t, l, d + 1, k + 1);
    let rhs = &(&ladder_character(&t, l, d + 1, k) * &ladder_character(&t, l, d, k + 2))
        + &LaurentPoly::one(&t);
    Ok(lhs == rhs)
}

/// The deformed last T-system equation
/// `χ(d, l-1)·χ(d+1, l-1) = χ(d+1, l-2)·χ(z) + 1 + χ(d+1, l-2)²`.
pub fn last_t_system_holds(l: usize, d: usize) -> Result<bool> {
    let t = y_table(l)?;
    let kr = |d: usize, k: usize| kr_character(&t, l, &KRString::new(l, d, k));
    let mid = kr(d + 1, l - 2)?;
    let lhs = &kr(d, l - 1)? * &kr(d + 1, l - 1)?;
    let rhs = &(&(&mid * &z_character(&t, l)) + &LaurentPoly::one(&t)) + &(&mid * &mid);
    Ok(lhs == rhs)
}
