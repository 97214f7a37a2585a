//! The `sl_3` side: classical characters, ε-characters at `l = 2`, the
//! simple-module classification at `l = 2`, and the `G_2` and rank `2l-2`
//! generalized seeds.
//!
//! At `l = 2` the ε-character ring uses the table `Y10, Y12, Y21, Y23`,
//! where `Yin` stands for `Y_{i,ε^n}` with `n` read modulo 4.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gca::{unit_tuple, CoeffTuple, ExchangeMatrix, GenSeed, TropMonomial};
use crate::laurent::{LaurentPoly, Mono, VarTable};

const Y10: usize = 0;
const Y12: usize = 1;
const Y21: usize = 2;
const Y23: usize = 3;

/// The ε-character table `Y10, Y12, Y21, Y23` at `l = 2`.
pub fn eps_table() -> &'static Arc<VarTable> {
    static T: OnceLock<Arc<VarTable>> = OnceLock::new();
    T.get_or_init(|| VarTable::new(["Y10", "Y12", "Y21", "Y23"]).unwrap())
}

/// The classical weight table `y1, y2` (fundamental-weight coordinates).
pub fn weight_table() -> &'static Arc<VarTable> {
    static T: OnceLock<Arc<VarTable>> = OnceLock::new();
    T.get_or_init(|| VarTable::new(["y1", "y2"]).unwrap())
}

/// Table `e1, e2` for polynomials in the two fundamental classes.
pub fn fundamental_table() -> &'static Arc<VarTable> {
    static T: OnceLock<Arc<VarTable>> = OnceLock::new();
    T.get_or_init(|| VarTable::new(["e1", "e2"]).unwrap())
}

/// The spectral shift `n ↦ n + 2`.
pub fn rotate_position(p: usize) -> usize {
    [Y12, Y10, Y23, Y21][p]
}

/// The diagram swap `Y_{1,n} ↦ Y_{2,n+1}`, `Y_{2,n} ↦ Y_{1,n+1}`.
pub fn swap_position(p: usize) -> usize {
    [Y21, Y23, Y12, Y10][p]
}

pub fn rotate(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(|m| m.remap(rotate_position))
}

pub fn swap(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(|m| m.remap(swap_position))
}

/// The ten fundamental-type simple modules at `l = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FundamentalL2 {
    Y10,
    Y12,
    Y21,
    Y23,
    Y10Y21,
    Y10Y23,
    Y12Y21,
    Y12Y23,
    Bold1,
    Bold2,
}

impl FundamentalL2 {
    pub const ALL: [FundamentalL2; 10] = [
        Self::Y10,
        Self::Y12,
        Self::Y21,
        Self::Y23,
        Self::Y10Y21,
        Self::Y10Y23,
        Self::Y12Y21,
        Self::Y12Y23,
        Self::Bold1,
        Self::Bold2,
    ];

    pub fn monomial(&self) -> Mono {
        let pairs: &[usize] = match self {
            Self::Y10 => &[Y10],
            Self::Y12 => &[Y12],
            Self::Y21 => &[Y21],
            Self::Y23 => &[Y23],
            Self::Y10Y21 => &[Y10, Y21],
            Self::Y10Y23 => &[Y10, Y23],
            Self::Y12Y21 => &[Y12, Y21],
            Self::Y12Y23 => &[Y12, Y23],
            Self::Bold1 => &[Y10, Y12],
            Self::Bold2 => &[Y21, Y23],
        };
        Mono::from_pairs(pairs.iter().map(|&p| (p, 1)))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Y10 => "Y10",
            Self::Y12 => "Y12",
            Self::Y21 => "Y21",
            Self::Y23 => "Y23",
            Self::Y10Y21 => "Y10Y21",
            Self::Y10Y23 => "Y10Y23",
            Self::Y12Y21 => "Y12Y21",
            Self::Y12Y23 => "Y12Y23",
            Self::Bold1 => "Y1",
            Self::Bold2 => "Y2",
        }
    }

    pub fn from_single(p: usize) -> Self {
        [Self::Y10, Self::Y12, Self::Y21, Self::Y23][p]
    }

    pub fn from_pair(i: usize, j: usize) -> Self {
        match (i, j) {
            (Y10, Y21) => Self::Y10Y21,
            (Y10, Y23) => Self::Y10Y23,
            (Y12, Y21) => Self::Y12Y21,
            _ => Self::Y12Y23,
        }
    }
}

fn printed(text: &str) -> LaurentPoly {
    LaurentPoly::parse(eps_table(), text).expect("printed character parses")
}

fn fundamental_cache() -> &'static BTreeMap<FundamentalL2, LaurentPoly> {
    static C: OnceLock<BTreeMap<FundamentalL2, LaurentPoly>> = OnceLock::new();
    C.get_or_init(|| {
        use FundamentalL2::*;
        let y10 = printed("Y10 + Y21*Y12^-1 + Y23^-1");
        let y10y21 = printed(
            "Y10*Y21 + Y10*Y12*Y23^-1 + Y21^2*Y12^-1 + 2*Y21*Y23^-1 \
             + Y21*Y10^-1*Y12^-1 + Y12*Y23^-2 + Y10^-1*Y23^-1",
        );
        let y21 = printed("Y21 + Y12*Y23^-1 + Y10^-1");
        let bold1 = printed("Y10*Y12 + Y21*Y23*Y10^-1*Y12^-1 + Y21^-1*Y23^-1");
        let bold2 = printed("Y21*Y23 + Y10*Y12*Y21^-1*Y23^-1 + Y10^-1*Y12^-1");
        let y12y21 = swap(&y10y21);
        let mut m = BTreeMap::new();
        m.insert(Y12, rotate(&y10));
        m.insert(Y23, rotate(&y21));
        m.insert(Y12Y23, rotate(&y10y21));
        m.insert(Y10Y23, rotate(&y12y21));
        m.insert(Y10, y10);
        m.insert(Y21, y21);
        m.insert(Y10Y21, y10y21);
        m.insert(Y12Y21, y12y21);
        m.insert(Bold1, bold1);
        m.insert(Bold2, bold2);
        m
    })
}

/// ε-character of a fundamental-type simple module at `l = 2`.
pub fn fundamental_character_l2(f: FundamentalL2) -> LaurentPoly {
    fundamental_cache()[&f].clone()
}

pub fn fundamental_characters_l2() -> Vec<(FundamentalL2, LaurentPoly)> {
    fundamental_cache()
        .iter()
        .map(|(f, c)| (*f, c.clone()))
        .collect()
}

/// Highest weight `a1 ϖ1 + a2 ϖ2` of `sl_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sl3Weight {
    pub a1: u32,
    pub a2: u32,
}

impl Sl3Weight {
    pub fn new(a1: u32, a2: u32) -> Self {
        Self { a1, a2 }
    }

    pub fn dimension(&self) -> u64 {
        let (a, b) = (self.a1 as u64, self.a2 as u64);
        (a + 1) * (b + 1) * (a + b + 2) / 2
    }
}

/// Character of `V(a1 ϖ1 + a2 ϖ2)` in `y1, y2` by Gelfand–Tsetlin patterns.
///
/// The top row is `(a1 + a2, a2, 0)`; a pattern with middle row `(m1, m2)`
/// and bottom entry `t` has `gl_3` weight `(t, m1 + m2 - t, top - m1 - m2)`.
pub fn sl3_character(w: Sl3Weight) -> LaurentPoly {
    let (l1, l2) = (w.a1 as i32 + w.a2 as i32, w.a2 as i32);
    let mut terms = Vec::new();
    for m1 in l2..=l1 {
        for m2 in 0..=l2 {
            for t in m2..=m1 {
                let g = [t, m1 + m2 - t, l1 + l2 - m1 - m2];
                let mono = Mono::from_pairs([(0, g[0] - g[1]), (1, g[1] - g[2])]);
                terms.push((mono, BigInt::one()));
            }
        }
    }
    LaurentPoly::from_terms(weight_table(), terms)
}

/// The polynomial `S_{a1,a2}(e1, e2)` expressing `[V(a1 ϖ1 + a2 ϖ2)]` in the
/// two fundamental classes, obtained by peeling highest weights.
pub fn sl3_polynomial(w: Sl3Weight) -> Result<LaurentPoly> {
    let e1 = sl3_character(Sl3Weight::new(1, 0));
    let e2 = sl3_character(Sl3Weight::new(0, 1));
    let ft = fundamental_table();
    let mut rest = sl3_character(w);
    let mut out = LaurentPoly::zero(ft);
    while !rest.is_zero() {
        let (m, c) = rest.leading_dominant_term().ok_or_else(|| {
            Error::Invariant("classical character lost its dominant weight".into())
        })?;
        let (a, b) = (m.exp(0) as u32, m.exp(1) as u32);
        let prod = &e1.pow(a) * &e2.pow(b);
        rest = &rest - &prod.scale(&c);
        out =
            &out + &LaurentPoly::monomial(ft, Mono::from_pairs([(0, a as i32), (1, b as i32)]), c);
    }
    Ok(out)
}

/// `Fr^*[V(k ϖ1 + ℓ ϖ2)]`: the classical character with `y1 ↦ Y10 Y12` and
/// `y2 ↦ Y21 Y23`.
pub fn frobenius_character_sl3(k: u32, ell: u32) -> LaurentPoly {
    let classical = sl3_character(Sl3Weight::new(k, ell));
    let terms = classical.terms().map(|(m, c)| {
        let (a, b) = (m.exp(0), m.exp(1));
        (
            Mono::from_pairs([(Y10, a), (Y12, a), (Y21, b), (Y23, b)]),
            c.clone(),
        )
    });
    LaurentPoly::from_terms(eps_table(), terms)
}

/// The eight tensor-product patterns of simple modules with `l`-acyclic
/// highest monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DecGCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl DecGCase {
    pub const ALL: [DecGCase; 8] = [
        Self::I,
        Self::II,
        Self::III,
        Self::IV,
        Self::V,
        Self::VI,
        Self::VII,
        Self::VIII,
    ];

    /// `(i, j, single_is_type_one)`: the pair `Y_{1,i} Y_{2,j}` and whether
    /// the single factor is `Y_{1,i}` or `Y_{2,j}` (as table positions).
    fn shape(&self) -> (usize, usize, bool) {
        match self {
            Self::I => (Y10, Y21, true),
            Self::II => (Y10, Y21, false),
            Self::III => (Y10, Y23, true),
            Self::IV => (Y10, Y23, false),
            Self::V => (Y12, Y21, true),
            Self::VI => (Y12, Y21, false),
            Self::VII => (Y12, Y23, true),
            Self::VIII => (Y12, Y23, false),
        }
    }

    fn from_shape(i: usize, j: usize, first: bool) -> Self {
        *Self::ALL
            .iter()
            .find(|c| c.shape() == (i, j, first))
            .expect("shape in table")
    }

    /// The single and the pair module of the pattern.
    pub fn generators(&self) -> (FundamentalL2, FundamentalL2) {
        let (i, j, first) = self.shape();
        let single = FundamentalL2::from_single(if first { i } else { j });
        (single, FundamentalL2::from_pair(i, j))
    }

    pub fn roman(&self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"][*self as usize]
    }

    pub fn from_roman(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.roman() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown pattern `{s}`")))
    }
}

/// A simple module at `l = 2`: `single^a ⊗ pair^b ⊗ Fr^*V(k ϖ1 + ℓ ϖ2)`.
///
/// Labels are kept in a canonical form determined by the highest monomial,
/// so equal modules have equal labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleLabelA2L2 {
    pub case: DecGCase,
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub ell: u32,
}

impl SimpleLabelA2L2 {
    pub fn trivial() -> Self {
        Self::from_monomial(&Mono::one()).unwrap()
    }

    pub fn new(case: DecGCase, a: u32, b: u32, k: u32, ell: u32) -> Self {
        let raw = Self { case, a, b, k, ell };
        Self::from_monomial(&raw.dominant_monomial()).unwrap()
    }

    pub fn fundamental(f: FundamentalL2) -> Self {
        Self::from_monomial(&f.monomial()).unwrap()
    }

    /// Highest monomial `single^a · pair^b · (Y10 Y12)^k · (Y21 Y23)^ℓ`.
    pub fn dominant_monomial(&self) -> Mono {
        let (single, pair) = self.case.generators();
        let frob = Mono::from_pairs([
            (Y10, self.k as i32),
            (Y12, self.k as i32),
            (Y21, self.ell as i32),
            (Y23, self.ell as i32),
        ]);
        &(&single.monomial().pow(self.a as i32) * &pair.monomial().pow(self.b as i32)) * &frob
    }

    /// Canonical label of the simple module with highest monomial `m`.
    pub fn from_monomial(m: &Mono) -> Result<Self> {
        if m.iter().any(|(p, e)| p > Y23 || e < 0) {
            return Err(Error::InvalidArgument(
                "monomial is not dominant in the l = 2 table".into(),
            ));
        }
        let e = m.to_dense(4);
        let k = e[Y10].min(e[Y12]);
        let ell = e[Y21].min(e[Y23]);
        let r: Vec<i32> = vec![e[Y10] - k, e[Y12] - k, e[Y21] - ell, e[Y23] - ell];
        if r[Y10] * r[Y12] != 0 || r[Y21] * r[Y23] != 0 {
            return Err(Error::Invariant("remainder is not l-acyclic".into()));
        }
        let i = if r[Y12] == 0 { Y10 } else { Y12 };
        let j = if r[Y23] == 0 { Y21 } else { Y23 };
        let (a, b, first) = if r[i] >= r[j] {
            (r[i] - r[j], r[j], true)
        } else {
            (r[j] - r[i], r[i], false)
        };
        Ok(Self {
            case: DecGCase::from_shape(i, j, first),
            a: a as u32,
            b: b as u32,
            k: k as u32,
            ell: ell as u32,
        })
    }

    pub fn rotate(&self) -> Self {
        Self::from_monomial(&self.dominant_monomial().remap(rotate_position)).unwrap()
    }

    pub fn swap(&self) -> Self {
        Self::from_monomial(&self.dominant_monomial().remap(swap_position)).unwrap()
    }

    pub fn to_json(&self) -> LabelL2Json {
        LabelL2Json {
            case: self.case.roman().into(),
            a: self.a,
            b: self.b,
            k: self.k,
            l: self.ell,
        }
    }

    pub fn from_json(j: &LabelL2Json) -> Result<Self> {
        Ok(Self::new(
            DecGCase::from_roman(&j.case)?,
            j.a,
            j.b,
            j.k,
            j.l,
        ))
    }
}

impl fmt::Display for SimpleLabelA2L2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (single, pair) = self.case.generators();
        let mut parts = Vec::new();
        for (g, e) in [(single, self.a), (pair, self.b)] {
            match e {
                0 => {}
                1 => parts.push(format!("L({})", g.name())),
                _ => parts.push(format!("L({})^{e}", g.name())),
            }
        }
        if self.k > 0 || self.ell > 0 {
            parts.push(format!("L(Y1^{} Y2^{})", self.k, self.ell));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "({}) {}", self.case.roman(), parts.join(" x "))
        }
    }
}

/// `{"case": "i".."viii", "a", "b", "k", "l"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelL2Json {
    pub case: String,
    #[serde(default)]
    pub a: u32,
    #[serde(default)]
    pub b: u32,
    #[serde(default)]
    pub k: u32,
    #[serde(default)]
    pub l: u32,
}

pub fn simple_character_l2(lab: &SimpleLabelA2L2) -> LaurentPoly {
    let (single, pair) = lab.case.generators();
    let base =
        &fundamental_character_l2(single).pow(lab.a) * &fundamental_character_l2(pair).pow(lab.b);
    &base * &frobenius_character_sl3(lab.k, lab.ell)
}

/// Decomposes an ε-character at `l = 2` into simple classes by peeling the
/// graded-lex largest dominant monomial.
pub fn decompose_character_l2(chi: &LaurentPoly) -> Result<BTreeMap<SimpleLabelA2L2, BigInt>> {
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
        let lab = SimpleLabelA2L2::from_monomial(&m)?;
        rest = &rest - &simple_character_l2(&lab).scale(&c);
        *out.entry(lab).or_insert_with(BigInt::zero) += c;
    }
    Ok(out)
}

pub fn decompose_l2(labels: &[SimpleLabelA2L2]) -> Result<BTreeMap<SimpleLabelA2L2, BigInt>> {
    let mut chi = LaurentPoly::one(eps_table());
    for lab in labels {
        chi = &chi * &simple_character_l2(lab);
    }
    decompose_character_l2(&chi)
}

/// One exact identity among ε-characters, with both sides.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The three families of product identities among fundamental-type
/// characters at `l = 2`, for `i ∈ {0, 2}` and `j ∈ {1, 3}`.
pub fn product_identities_l2() -> Vec<Identity> {
    let ch = fundamental_character_l2;
    let one = LaurentPoly::one(eps_table());
    let b1 = ch(FundamentalL2::Bold1);
    let b2 = ch(FundamentalL2::Bold2);
    let name = |p: usize| FundamentalL2::from_single(p).name();
    let mut out = Vec::new();
    for i in [Y10, Y12] {
        for j in [Y21, Y23] {
            out.push(Identity {
                name: format!(
                    "L({})L({}) = L({}{}) + 1",
                    name(i),
                    name(j),
                    name(i),
                    name(j)
                ),
                lhs: &ch(FundamentalL2::from_single(i)) * &ch(FundamentalL2::from_single(j)),
                rhs: &ch(FundamentalL2::from_pair(i, j)) + &one,
            });
        }
    }
    let cubic = |s: &LaurentPoly, first: &LaurentPoly, second: &LaurentPoly| {
        let s2 = s * s;
        &(&(&(&s2 * s) + &(&s2 * first)) + &(s * second)) + &one
    };
    for i in [Y10, Y12] {
        let s = ch(FundamentalL2::from_single(i));
        out.push(Identity {
            name: format!("L({0}Y21)L({0}Y23) = cubic in L({0})", name(i)),
            lhs: &ch(FundamentalL2::from_pair(i, Y21)) * &ch(FundamentalL2::from_pair(i, Y23)),
            rhs: cubic(&s, &b2, &b1),
        });
    }
    for j in [Y21, Y23] {
        let s = ch(FundamentalL2::from_single(j));
        out.push(Identity {
            name: format!("L(Y10{0})L(Y12{0}) = cubic in L({0})", name(j)),
            lhs: &ch(FundamentalL2::from_pair(Y10, j)) * &ch(FundamentalL2::from_pair(Y12, j)),
            rhs: cubic(&s, &b1, &b2),
        });
    }
    out
}

/// Whether `χ(L(Y10))^k χ(L(Y10 Y21))^ℓ` has exactly one dominant monomial,
/// namely `Y10^{k+ℓ} Y21^ℓ` with coefficient 1.
pub fn single_dominant_holds(k: u32, ell: u32) -> bool {
    let p = &fundamental_character_l2(FundamentalL2::Y10).pow(k)
        * &fundamental_character_l2(FundamentalL2::Y10Y21).pow(ell);
    let dom: Vec<_> = p.dominant_terms().collect();
    let expected = Mono::from_pairs([(Y10, (k + ell) as i32), (Y21, ell as i32)]);
    dom.len() == 1 && *dom[0].0 == expected && dom[0].1.is_one()
}

fn g2_coeffs(rank: usize) -> CoeffTuple {
    let mut coeffs: Vec<Vec<TropMonomial>> = (0..rank - 1).map(|_| unit_tuple(1, 2)).collect();
    coeffs.push(vec![
        TropMonomial::one(2),
        TropMonomial::generator(2, 0),
        TropMonomial::generator(2, 1),
        TropMonomial::one(2),
    ]);
    CoeffTuple(coeffs)
}

fn lambda_names() -> Vec<String> {
    vec!["lambda1".into(), "lambda2".into()]
}

/// Rank 2 seed with `B = [[0, 3], [-1, 0]]`, `d = (1, 3)` and exchange
/// coefficients `(1, 1)` and `(1, λ1, λ2, 1)`.
pub fn g2_initial_seed() -> Result<GenSeed> {
    let b = ExchangeMatrix::new(vec![vec![0, 3], vec![-1, 0]], vec![1, 3])?;
    GenSeed::initial(
        b,
        g2_coeffs(2),
        vec!["x1".into(), "x2".into()],
        lambda_names(),
    )
}

/// Exchange matrix of the rank `2l - 2` seed.
///
/// Rows follow the band `b_{i,i+1} = -1`, `b_{i,i+2} = 1` (and the
/// skew-symmetric entries below the diagonal), except that the last three
/// rows and columns carry the block
/// `[[0, -2, 3], [2, 0, -3], [-1, 1, 0]]`. At `l = 2` the matrix is the
/// `G_2` matrix.
pub fn conjecture_matrix(l: usize) -> Result<ExchangeMatrix> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "level l = {l} must be at least 2"
        )));
    }
    if l == 2 {
        return ExchangeMatrix::new(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]);
    }
    let n = 2 * l - 2;
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        if i + 1 < n {
            b[i][i + 1] = -1;
            b[i + 1][i] = 1;
        }
        if i + 2 < n {
            b[i][i + 2] = 1;
            b[i + 2][i] = -1;
        }
    }
    let t = n - 3;
    let block = [[0, -2, 3], [2, 0, -3], [-1, 1, 0]];
    for (r, row) in block.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            b[t + r][t + c] = v;
        }
    }
    let mut d = vec![1i64; n];
    d[n - 1] = 3;
    ExchangeMatrix::new(b, d)
}

/// The rank `2l - 2` seed with `θ_r = u + v` for `r < 2l - 2` and the cubic
/// `(1, λ1, λ2, 1)` in the last direction.
pub fn conjecture_seed(l: usize) -> Result<GenSeed> {
    conjecture_seed_with(conjecture_matrix(l)?)
}

/// Same coefficients as [`conjecture_seed`] over a user-supplied matrix.
pub fn conjecture_seed_with(matrix: ExchangeMatrix) -> Result<GenSeed> {
    let n = matrix.rank();
    if n < 2 || matrix.d[n - 1] != 3 || matrix.d[..n - 1].iter().any(|&d| d != 1) {
        return Err(Error::InvalidSeed(
            "the matrix must have rank at least 2 and d = (1, …, 1, 3)".into(),
        ));
    }
    let report = matrix.validate();
    if !report.valid {
        return Err(Error::InvalidSeed(report.diagnostics.join("; ")));
    }
    GenSeed::initial(
        matrix,
        g2_coeffs(n),
        (1..=n).map(|k| format!("x{k}")).collect(),
        lambda_names(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{enumerate, Limits};

    /// Weyl character formula, as an independent oracle for the pattern
    /// enumeration.
    fn weyl_character(w: Sl3Weight) -> LaurentPoly {
        let t = weight_table();
        let s1 = |(a, b): (i32, i32)| (-a, a + b);
        let s2 = |(a, b): (i32, i32)| (a + b, -b);
        let alt = |v: (i32, i32)| {
            let orbit = [
                (v, 1),
                (s1(v), -1),
                (s2(v), -1),
                (s1(s2(v)), 1),
                (s2(s1(v)), 1),
                (s1(s2(s1(v))), -1),
            ];
            LaurentPoly::from_terms(
                t,
                orbit
                    .iter()
                    .map(|&((a, b), s)| (Mono::from_pairs([(0, a), (1, b)]), BigInt::from(s))),
            )
        };
        let num = alt((w.a1 as i32 + 1, w.a2 as i32 + 1));
        num.divide_exact(&alt((1, 1))).unwrap()
    }

    #[test]
    fn printed_characters() {
        let ch = fundamental_character_l2;
        assert_eq!(ch(FundamentalL2::Y10).len(), 3);
        let c = ch(FundamentalL2::Y10Y21);
        assert_eq!(c.len(), 7);
        assert_eq!(c.terms().filter(|(_, c)| **c == BigInt::from(2)).count(), 1);
        assert_eq!(
            c.coeff(&Mono::from_pairs([(Y21, 1), (Y23, -1)])),
            BigInt::from(2)
        );
    }

    #[test]
    fn symmetry_images_agree() {
        let ch = fundamental_character_l2;
        use FundamentalL2::*;
        assert_eq!(swap(&ch(Y21)), ch(Y12));
        assert_eq!(swap(&ch(Y10)), ch(Y21));
        assert_eq!(swap(&ch(Bold2)), ch(Bold1));
        assert_eq!(swap(&ch(Bold1)), ch(Bold2));
        assert_eq!(rotate(&ch(Bold1)), ch(Bold1));
        assert_eq!(swap(&ch(Y12Y23)), ch(Y10Y23));
        for f in FundamentalL2::ALL {
            let c = ch(f);
            let dom: Vec<_> = c.dominant_terms().collect();
            assert_eq!(dom.len(), 1, "{f:?}");
            assert_eq!(*dom[0].0, f.monomial());
            assert!(dom[0].1.is_one());
        }
    }

    #[test]
    fn classical_characters() {
        let t = weight_table();
        assert_eq!(
            sl3_character(Sl3Weight::new(1, 0)),
            LaurentPoly::parse(t, "y1 + y2*y1^-1 + y2^-1").unwrap()
        );
        assert!(sl3_character(Sl3Weight::new(0, 0)).is_one());
        let adj = sl3_character(Sl3Weight::new(1, 1));
        assert_eq!(adj.len(), 7);
        assert_eq!(adj.constant_term(), BigInt::from(2));
        for a in 0..5 {
            for b in 0..5 {
                let w = Sl3Weight::new(a, b);
                let chi = sl3_character(w);
                assert_eq!(chi, weyl_character(w), "{w:?}");
                let dim: BigInt = chi.terms().map(|(_, c)| c.clone()).sum();
                assert_eq!(dim, BigInt::from(w.dimension()));
                let reflected = chi.map_monomials(|m| {
                    let (x, y) = (m.exp(0), m.exp(1));
                    Mono::from_pairs([(0, -x), (1, x + y)])
                });
                assert_eq!(reflected, chi);
            }
        }
    }

    #[test]
    fn frobenius_pullbacks() {
        use FundamentalL2::*;
        let ch = fundamental_character_l2;
        assert_eq!(frobenius_character_sl3(1, 0), ch(Bold1));
        assert_eq!(frobenius_character_sl3(0, 1), ch(Bold2));
        assert!(frobenius_character_sl3(0, 0).is_one());
        assert_eq!(
            frobenius_character_sl3(1, 1),
            &(&ch(Bold1) * &ch(Bold2)) - &LaurentPoly::one(eps_table())
        );
        for k in 0..4 {
            for l in 0..4 {
                let s = sl3_polynomial(Sl3Weight::new(k, l)).unwrap();
                let mut b = std::collections::HashMap::new();
                b.insert("e1".to_string(), ch(Bold1));
                b.insert("e2".to_string(), ch(Bold2));
                let via_s = s.substitute_into(&b, eps_table()).unwrap();
                assert_eq!(via_s, frobenius_character_sl3(k, l), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn identities_hold() {
        let ids = product_identities_l2();
        assert_eq!(ids.len(), 8);
        for id in ids {
            assert!(id.holds(), "{}", id.name);
        }
        for k in 0..=4 {
            for l in 0..=4 - k {
                assert!(single_dominant_holds(k, l), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn labels_and_decomposition() {
        use FundamentalL2::*;
        let lab = SimpleLabelA2L2::new(DecGCase::I, 1, 1, 0, 0);
        assert_eq!(
            simple_character_l2(&lab),
            &fundamental_character_l2(Y10) * &fundamental_character_l2(Y10Y21)
        );
        assert!(simple_character_l2(&SimpleLabelA2L2::trivial()).is_one());
        let a = SimpleLabelA2L2::new(DecGCase::I, 1, 2, 0, 0);
        let b = SimpleLabelA2L2::new(DecGCase::II, 1, 2, 0, 0);
        assert_ne!(simple_character_l2(&a), simple_character_l2(&b));

        let f = SimpleLabelA2L2::fundamental;
        let d = decompose_l2(&[f(Y10), f(Y21)]).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d[&f(Y10Y21)].is_one());
        assert!(d[&SimpleLabelA2L2::trivial()].is_one());

        let d = decompose_l2(&[f(Y10Y21), f(Y10Y23)]).unwrap();
        let expect = [
            SimpleLabelA2L2::new(DecGCase::I, 3, 0, 0, 0),
            SimpleLabelA2L2::new(DecGCase::I, 2, 0, 0, 1),
            SimpleLabelA2L2::new(DecGCase::I, 1, 0, 1, 0),
            SimpleLabelA2L2::trivial(),
        ];
        assert_eq!(d.len(), 4);
        for e in expect {
            assert!(d[&e].is_one(), "{e}");
        }

        for case in DecGCase::ALL {
            let lab = SimpleLabelA2L2::new(case, 2, 1, 1, 0);
            assert_eq!(lab.case, case);
            let d = decompose_l2(&[lab]).unwrap();
            assert_eq!(d.len(), 1);
            assert!(d[&lab].is_one());
            assert_eq!(
                simple_character_l2(&lab.rotate()),
                rotate(&simple_character_l2(&lab))
            );
            assert_eq!(
                simple_character_l2(&lab.swap()),
                swap(&simple_character_l2(&lab))
            );
            let json = serde_json::to_string(&lab.to_json()).unwrap();
            let back = SimpleLabelA2L2::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
            assert_eq!(back, lab);
        }
    }

    #[test]
    fn g2_seed_closure() {
        let g = enumerate(&g2_initial_seed().unwrap(), Limits::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.variables().len(), 8);
        assert!(g.is_regular(2));
        let s = g2_initial_seed().unwrap();
        let back = s.mutate_sequence(&[0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(back.key(), s.key());
    }

    #[test]
    fn g2_cubic_tuple_follows_mutation_parity() {
        let s = g2_initial_seed().unwrap();
        let p0 = s.coeffs.0.clone();
        let mut reversed = p0[1].clone();
        reversed.reverse();
        let mut cur = s.clone();
        let mut flips = 0;
        for (step, k) in [1, 0, 1, 0, 1, 0, 1, 0, 0, 1].into_iter().enumerate() {
            cur = cur.mutate(k).unwrap();
            flips += usize::from(k == 1);
            assert_eq!(cur.coeffs.0[0], p0[0], "step {step}");
            let expected = if flips % 2 == 1 { &reversed } else { &p0[1] };
            assert_eq!(&cur.coeffs.0[1], expected, "step {step}");
        }
    }

    #[test]
    fn conjecture_matrices_validate() {
        for l in 2..=6 {
            let m = conjecture_matrix(l).unwrap();
            assert_eq!(m.rank(), 2 * l - 2);
            assert!(m.validate().valid, "l={l}");
            conjecture_seed(l).unwrap();
        }
        let m = conjecture_matrix(3).unwrap();
        assert_eq!(
            m.b,
            vec![
                vec![0, -1, 1, 0],
                vec![1, 0, -2, 3],
                vec![-1, 2, 0, -3],
                vec![0, -1, 1, 0]
            ]
        );
        let g = enumerate(&conjecture_seed(2).unwrap(), Limits::default()).unwrap();
        let h = enumerate(&g2_initial_seed().unwrap(), Limits::default()).unwrap();
        assert_eq!(g.variables(), h.variables());
    }
}
