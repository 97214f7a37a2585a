//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every value in the crate (cluster variables, characters, basis elements)
//! lives in a ring `Z[t_1^±, ..., t_m^±]` whose variables are named by a
//! shared [`VarTable`]. Terms are kept in a `BTreeMap` keyed by [`Mono`],
//! whose `Ord` is the graded-lexicographic order, so the last entry is always
//! the leading term and serialization order is fixed.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

mod packed;

/// Ordered list of distinct variable names.
#[derive(Debug, Clone)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Self { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, pos: usize) -> &str {
        &self.names[pos]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarTable {}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// A Laurent monomial: sorted `(position, exponent)` pairs, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mono(SmallVec<[(u32, i32); 4]>);

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(pos: usize, exp: i32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut v = SmallVec::new();
        v.push((pos as u32, exp));
        Self(v)
    }

    /// Builds a monomial from arbitrary `(position, exponent)` pairs,
    /// merging repeated positions.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<u32, i32> = BTreeMap::new();
        for (p, e) in pairs {
            *acc.entry(p as u32).or_insert(0) += e;
        }
        Self(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn from_dense(exps: &[i32]) -> Self {
        Self(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(p, &e)| (p as u32, e))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<i32> {
        let mut out = vec![0; len];
        for &(p, e) in &self.0 {
            out[p as usize] = e;
        }
        out
    }

    pub fn exp(&self, pos: usize) -> i32 {
        self.0
            .iter()
            .find(|&&(p, _)| p as usize == pos)
            .map_or(0, |&(_, e)| e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().map(|&(p, e)| (p as usize, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    /// True when no exponent is negative ("dominant" in the character rings).
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    pub fn inv(&self) -> Self {
        Self(self.0.iter().map(|&(p, e)| (p, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self(self.0.iter().map(|&(p, e)| (p, e * k)).collect())
    }

    /// Componentwise minimum with zero, i.e. the "denominator" part.
    pub fn negative_part(&self) -> Self {
        Self(self.0.iter().filter(|&&(_, e)| e < 0).copied().collect())
    }

    /// Componentwise minimum of two monomials.
    pub fn meet(&self, other: &Self) -> Self {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), b.get(j)) {
                (Some(&(pa, ea)), Some(&(pb, eb))) => match pa.cmp(&pb) {
                    Ordering::Less => {
                        i += 1;
                        (pa, ea.min(0))
                    }
                    Ordering::Greater => {
                        j += 1;
                        (pb, eb.min(0))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (pa, ea.min(eb))
                    }
                },
                (Some(&(pa, ea)), None) => {
                    i += 1;
                    (pa, ea.min(0))
                }
                (None, Some(&(pb, eb))) => {
                    j += 1;
                    (pb, eb.min(0))
                }
                (None, None) => unreachable!(),
            };
            if take.1 != 0 {
                out.push(take);
            }
        }
        Self(out)
    }

    /// Applies a position map; positions mapped to the same target merge.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.iter().map(|(p, e)| (f(p), e)))
    }
}

impl Mul for &Mono {
    type Output = Mono;

    fn mul(self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (pa, ea) = a[i];
            let (pb, eb) = b[j];
            match pa.cmp(&pb) {
                Ordering::Less => {
                    out.push((pa, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((pb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = ea + eb;
                    if e != 0 {
                        out.push((pa, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }
}

impl Ord for Mono {
    /// Graded lexicographic: total degree first, then the first position
    /// (in table order) where the exponents differ decides.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(pa, ea)), Some(&(pb, eb))) => match pa.cmp(&pb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial orders accepted by [`LaurentPoly::leading_term_by`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Total degree, ties broken lexicographically by table position.
    #[default]
    GradedLex,
    /// Pure lexicographic by table position.
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::GradedLex => a.cmp(b),
            MonomialOrder::Lex => {
                let n = a
                    .iter()
                    .chain(b.iter())
                    .map(|(p, _)| p + 1)
                    .max()
                    .unwrap_or(0);
                a.to_dense(n).cmp(&b.to_dense(n))
            }
        }
    }
}

/// Ring operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A Laurent polynomial over the integers in the variables of a [`VarTable`].
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Mono, BigInt>,
}

pub fn arith(op: ArithOp, p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

impl LaurentPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Self {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, 1)
    }

    pub fn constant(table: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        Self::monomial(table, Mono::one(), c)
    }

    pub fn monomial(table: &Arc<VarTable>, mono: Mono, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self {
            table: table.clone(),
            terms,
        }
    }

    pub fn var(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        let pos = table
            .position(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(table, Mono::var(pos, 1), 1))
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(table: &Arc<VarTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, BigInt)>,
    {
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_hash(table, acc)
    }

    fn from_hash(table: &Arc<VarTable>, acc: HashMap<Mono, BigInt>) -> Self {
        Self {
            table: table.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Mono, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::one()).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, mono: &Mono) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Returns the single term if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Mono, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Mono::one())
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::IncompatibleTables)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m, c);
        }
        Ok(Self {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m, &-c);
        }
        Ok(Self {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.table));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return Ok(large.mul_term(m, c));
        }
        if let Some(terms) = packed::mul(&small.terms, &large.terms) {
            return Ok(Self {
                table: self.table.clone(),
                terms,
            });
        }
        let cap = (self.len() * other.len()).min(4 * (self.len() + other.len()));
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(cap);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma * mb;
                match acc.get_mut(&m) {
                    Some(c) => *c += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        Ok(Self::from_hash(&self.table, acc))
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Self {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, v)| (k * m, v * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&Mono::one(), c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power that allows negative exponents for monomials.
    pub fn powi(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        match self.as_monomial() {
            Some((m, c)) if c.abs().is_one() => {
                let sign = if c.is_negative() && k % 2 != 0 { -1 } else { 1 };
                Ok(Self::monomial(&self.table, m.pow(k), sign))
            }
            _ => Err(Error::NotDivisible),
        }
    }

    /// Returns `r` with `r * q == self`, failing when no Laurent polynomial
    /// quotient exists.
    pub fn divide_exact(&self, q: &Self) -> Result<Self> {
        self.check_table(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.table));
        }
        if let Some((qm, qc)) = q.as_monomial() {
            let inv = qm.inv();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let (quot, rem) = c.div_rem(qc);
                if !rem.is_zero() {
                    return Err(Error::NotDivisible);
                }
                terms.insert(m * &inv, quot);
            }
            return Ok(Self {
                table: self.table.clone(),
                terms,
            });
        }
        match packed::divide(&self.terms, &q.terms) {
            packed::Division::Exact(terms) => {
                return Ok(Self {
                    table: self.table.clone(),
                    terms,
                })
            }
            packed::Division::NotDivisible => return Err(Error::NotDivisible),
            packed::Division::Unsupported => {}
        }
        // Shift both operands into the polynomial ring. The divisor then has
        // no monomial factor, so any Laurent quotient of the shifted
        // dividend is a genuine polynomial and ordinary leading-term
        // division decides exactness.
        let p_shift = self.monomial_gcd().inv();
        let q_shift = q.monomial_gcd().inv();
        let divisor: Vec<(Mono, BigInt)> = q
            .terms
            .iter()
            .map(|(m, c)| (m * &q_shift, c.clone()))
            .collect();
        let (lead_m, lead_c) = divisor.last().cloned().unwrap();
        let mut rem: BTreeMap<Mono, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (m * &p_shift, c.clone()))
            .collect();
        let mut quotient: HashMap<Mono, BigInt> = HashMap::new();
        while let Some((m, c)) = rem.pop_last() {
            let t = &m * &lead_m.inv();
            if !t.is_nonnegative() && !t.is_one() {
                return Err(Error::NotDivisible);
            }
            let (tc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (dm, dc) in divisor.iter().rev().skip(1) {
                let mm = &t * dm;
                add_term(&mut rem, &mm, &-(&tc * dc));
            }
            quotient.insert(t, tc);
        }
        let back = &q_shift * &p_shift.inv();
        Ok(Self {
            table: self.table.clone(),
            terms: quotient.into_iter().map(|(m, c)| (&m * &back, c)).collect(),
        })
    }

    /// Componentwise minimum exponent over all terms (absent variables
    /// count as exponent 0), i.e. the largest monomial dividing `self`.
    fn monomial_gcd(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, m| acc.meet(m))
    }

    /// Componentwise minimum exponent over all terms, capped at zero.
    pub fn min_exponents(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.negative_part().meet(m),
            None => return Mono::one(),
        };
        let mut acc = first;
        for m in it {
            acc = acc.meet(m);
        }
        acc
    }

    pub fn leading_term(&self) -> Result<(Mono, BigInt)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term_by(&self, order: MonomialOrder) -> Result<(Mono, BigInt)> {
        if order == MonomialOrder::GradedLex {
            return self.leading_term();
        }
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// The graded-lex largest term whose monomial has no negative exponent.
    pub fn leading_dominant_term(&self) -> Option<(Mono, BigInt)> {
        self.terms
            .iter()
            .rev()
            .find(|(m, _)| m.is_nonnegative() || m.is_one())
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    pub fn dominant_terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_nonnegative() || m.is_one())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Applies a monomial map term by term (e.g. an index rotation). The
    /// map must be injective on the support for the result to be meaningful.
    pub fn map_monomials(&self, f: impl Fn(&Mono) -> Mono) -> Self {
        Self::from_terms(
            &self.table,
            self.terms.iter().map(|(m, c)| (f(m), c.clone())),
        )
    }

    /// Re-expresses the polynomial over another table that contains all of
    /// its variables (by name).
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<Self> {
        if same_table(&self.table, target) {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .table
            .names()
            .iter()
            .map(|n| {
                target
                    .position(n)
                    .ok_or_else(|| Error::UnknownVariable(n.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            table: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.remap(|p| map[p]), c.clone()))
                .collect(),
        })
    }

    /// Substitutes variables (by name) and expands. Unbound variables are
    /// carried over by name into `target`. Negative powers of non-monomial
    /// bindings are cleared by a common denominator and a final exact
    /// division, which fails when the image is not a Laurent polynomial.
    pub fn substitute_into(
        &self,
        bindings: &HashMap<String, LaurentPoly>,
        target: &Arc<VarTable>,
    ) -> Result<Self> {
        let nvars = self.table.len();
        let mut images: Vec<LaurentPoly> = Vec::with_capacity(nvars);
        for name in self.table.names() {
            match bindings.get(name) {
                Some(b) => {
                    if !same_table(b.table(), target) {
                        return Err(Error::IncompatibleTables);
                    }
                    images.push(b.clone());
                }
                None => images.push(LaurentPoly::var(target, name)?),
            }
        }
        // Largest negative exponent per variable whose image is not a unit
        // monomial.
        let mut denom_exp = vec![0i32; nvars];
        for m in self.terms.keys() {
            for (p, e) in m.iter() {
                if e < 0 && !is_unit_monomial(&images[p]) {
                    denom_exp[p] = denom_exp[p].max(-e);
                }
            }
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut power = |p: usize, e: i32| -> Result<LaurentPoly> {
            if let Some(v) = cache.get(&(p, e)) {
                return Ok(v.clone());
            }
            let v = images[p].powi(e)?;
            cache.insert((p, e), v.clone());
            Ok(v)
        };
        let mut numerator = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (p, &d) in denom_exp.iter().enumerate() {
                let e = m.exp(p) + d;
                if e != 0 {
                    term = &term * &power(p, e)?;
                }
            }
            numerator = &numerator + &term;
        }
        if denom_exp.iter().all(|&e| e == 0) {
            return Ok(numerator);
        }
        let mut denominator = LaurentPoly::one(target);
        for (p, &e) in denom_exp.iter().enumerate() {
            if e > 0 {
                denominator = &denominator * &power(p, e)?;
            }
        }
        numerator
            .divide_exact(&denominator)
            .map_err(|_| Error::NonLaurentSubstitution)
    }

    /// [`substitute_into`](Self::substitute_into) with the target table
    /// taken from the bindings (or `self` when there are none).
    pub fn substitute(&self, bindings: &HashMap<String, LaurentPoly>) -> Result<Self> {
        let target = bindings
            .values()
            .next()
            .map(|b| b.table().clone())
            .unwrap_or_else(|| self.table.clone());
        self.substitute_into(bindings, &target)
    }

    /// Parses expressions such as `2*x1^2*x2^-1 - x3 + 1`.
    pub fn parse(table: &Arc<VarTable>, text: &str) -> Result<Self> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            table,
        }
        .parse()
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.table.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exps: m
                        .iter()
                        .map(|(p, e)| (self.table.name(p).to_string(), e as i64))
                        .collect(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let table = VarTable::new(json.vars.iter().cloned())?;
        Self::from_json_with(json, &table)
    }

    pub fn from_json_with(json: &PolyJson, table: &Arc<VarTable>) -> Result<Self> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let mut pairs = Vec::with_capacity(t.exps.len());
            for (name, &e) in &t.exps {
                let p = table
                    .position(name)
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                let e = i32::try_from(e)
                    .map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))?;
                pairs.push((p, e));
            }
            let coef: BigInt = t.coef.parse().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("bad coefficient `{}`", t.coef),
            })?;
            terms.push((Mono::from_pairs(pairs), coef));
        }
        Ok(Self::from_terms(table, terms))
    }

    pub fn format_monomial(&self, m: &Mono) -> String {
        format_mono(&self.table, m)
    }
}

fn is_unit_monomial(p: &LaurentPoly) -> bool {
    p.as_monomial().is_some_and(|(_, c)| c.abs().is_one())
}

fn add_term(terms: &mut BTreeMap<Mono, BigInt>, m: &Mono, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                terms.remove(m);
            }
        }
        None => {
            terms.insert(m.clone(), c.clone());
        }
    }
}

fn format_mono(table: &VarTable, m: &Mono) -> String {
    m.iter()
        .map(|(p, e)| {
            if e == 1 {
                table.name(p).to_string()
            } else {
                format!("{}^{}", table.name(p), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl Hash for LaurentPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .iter()
            .rev()
            .cmp(other.terms.iter().rev())
            .then_with(|| self.table.names.cmp(&other.table.names))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", format_mono(&self.table, m))?;
            } else {
                write!(f, "{abs}*{}", format_mono(&self.table, m))?;
            }
        }
        Ok(())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;

            /// # Panics
            /// Panics when the operands live over different variable tables.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("incompatible variable tables")
            }
        }

        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Serialized form: `{"vars": [...], "terms": [{"exps": {...}, "coef": "..."}]}`
/// with terms in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: BTreeMap<String, i64>,
    pub coef: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<VarTable>,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        let mut sign = 1i32;
        if let Some(b'-') = self.peek() {
            sign = -1;
            self.pos += 1;
        } else if let Some(b'+') = self.peek() {
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * sign));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return Err(self.err(format!("unexpected `{}`", ch as char))),
            }
            self.pos += 1;
        }
        Ok(LaurentPoly::from_terms(self.table, terms))
    }

    fn term(&mut self) -> Result<(Mono, BigInt)> {
        let mut coef = BigInt::one();
        let mut pairs = Vec::new();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => coef *= self.integer()?,
                Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                    let name = self.ident();
                    let pos = self
                        .table
                        .position(&name)
                        .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    let mut e = 1i32;
                    if let Some(b'^') = self.peek() {
                        self.pos += 1;
                        e = self.exponent()?;
                    }
                    pairs.push((pos, e));
                }
                _ => return Err(self.err("expected a factor")),
            }
            if let Some(b'*') = self.peek() {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Mono::from_pairs(pairs), coef))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let v = self.integer()?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
        }
        let v = i32::try_from(v).map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> Arc<VarTable> {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn p(t: &Arc<VarTable>, s: &str) -> LaurentPoly {
        LaurentPoly::parse(t, s).unwrap()
    }

    #[test]
    fn additive_inverse_is_empty() {
        let t = table(&["x1", "x2"]);
        let x = p(&t, "x1");
        let z = arith(ArithOp::Add, &x, &-&x).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.term_map().len(), 0);
    }

    #[test]
    fn distributivity_example() {
        let t = table(&["x1", "x2"]);
        let r = arith(ArithOp::Mul, &p(&t, "x1 + x2^-1"), &p(&t, "x2")).unwrap();
        assert_eq!(r, p(&t, "x1*x2 + 1"));
    }

    #[test]
    fn l2_fundamental_product() {
        let t = table(&["Y0", "Y2"]);
        let r = &p(&t, "Y0 + Y2^-1") * &p(&t, "Y2 + Y0^-1");
        assert_eq!(r, p(&t, "Y0*Y2 + 2 + Y0^-1*Y2^-1"));
    }

    #[test]
    fn mismatched_tables() {
        let a = table(&["x1"]);
        let b = table(&["y1"]);
        let err = arith(ArithOp::Add, &p(&a, "x1"), &p(&b, "y1")).unwrap_err();
        assert_eq!(err.to_string(), "incompatible variable tables");
        // Structurally equal tables are compatible.
        let c = table(&["x1"]);
        assert!(p(&a, "x1").checked_mul(&p(&c, "x1")).is_ok());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(matches!(
            VarTable::new(["a", "b", "a"]),
            Err(Error::DuplicateVariable(_))
        ));
    }

    #[test]
    fn divide_by_monomial() {
        let t = table(&["x1", "x2"]);
        let r = p(&t, "x1*x2 + x2").divide_exact(&p(&t, "x2")).unwrap();
        assert_eq!(r, p(&t, "x1 + 1"));
    }

    #[test]
    fn divide_rejects_missing_variable() {
        let t = table(&["x1", "x2", "lambda"]);
        let err = p(&t, "x1^2 + lambda*x1 + 1")
            .divide_exact(&p(&t, "x2 + 1"))
            .unwrap_err();
        assert_eq!(err.to_string(), "not Laurent-divisible");
    }

    #[test]
    fn divide_laurent_quotient() {
        let t = table(&["x1", "x2"]);
        let num = &p(&t, "x1^-1 + x1^-1*x2") * &p(&t, "1 + x2");
        let r = num.divide_exact(&p(&t, "1 + x2")).unwrap();
        assert_eq!(r, p(&t, "x1^-1 + x1^-1*x2"));
        assert_eq!(&r * &p(&t, "1 + x2"), num);
    }

    #[test]
    fn divide_by_divisor_with_monomial_factor() {
        let t = table(&["a", "b"]);
        let r = p(&t, "1 + a*b").divide_exact(&p(&t, "a + a^2*b")).unwrap();
        assert_eq!(r, p(&t, "a^-1"));
    }

    #[test]
    fn divide_by_zero() {
        let t = table(&["x"]);
        assert_eq!(
            p(&t, "x").divide_exact(&LaurentPoly::zero(&t)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn coefficient_divisibility_matters() {
        let t = table(&["x"]);
        assert!(p(&t, "x + 1").divide_exact(&p(&t, "2*x + 2")).is_err());
        assert!(p(&t, "3*x").divide_exact(&p(&t, "2")).is_err());
        assert_eq!(
            p(&t, "4*x + 4").divide_exact(&p(&t, "2*x + 2")).unwrap(),
            p(&t, "2")
        );
    }

    #[test]
    fn substitute_identity_binding() {
        let t = table(&["x1", "x2"]);
        let mut b = HashMap::new();
        b.insert("x1".to_string(), LaurentPoly::one(&t));
        assert_eq!(p(&t, "x1*x2").substitute(&b).unwrap(), p(&t, "x2"));
    }

    #[test]
    fn substitute_monomial_binding() {
        let src = table(&["x1"]);
        let dst = table(&["Y0", "Y2"]);
        let mut b = HashMap::new();
        b.insert("x1".to_string(), p(&dst, "Y0*Y2"));
        let r = p(&src, "x1 + x1^-1").substitute(&b).unwrap();
        assert_eq!(r, p(&dst, "Y0*Y2 + Y0^-1*Y2^-1"));
    }

    #[test]
    fn substitute_with_polynomial_denominator() {
        let src = table(&["x", "y"]);
        let dst = table(&["u"]);
        let mut b = HashMap::new();
        b.insert("x".to_string(), p(&dst, "u + 1"));
        b.insert("y".to_string(), p(&dst, "u^2 - 1"));
        // y / x = u - 1
        assert_eq!(p(&src, "y*x^-1").substitute(&b).unwrap(), p(&dst, "u - 1"));
        // x / y is not Laurent
        assert_eq!(
            p(&src, "x*y^-1").substitute(&b).unwrap_err(),
            Error::NonLaurentSubstitution
        );
    }

    #[test]
    fn leading_terms() {
        let t = table(&["Y0", "Y2"]);
        let (m, c) = p(&t, "Y0*Y2 + 2 + Y0^-1*Y2^-1").leading_term().unwrap();
        assert_eq!(m, Mono::from_dense(&[1, 1]));
        assert_eq!(c, BigInt::one());
        let (m, c) = p(&t, "3").leading_term().unwrap();
        assert!(m.is_one());
        assert_eq!(c, BigInt::from(3));
        assert_eq!(
            LaurentPoly::zero(&t)
                .leading_term()
                .unwrap_err()
                .to_string(),
            "zero polynomial"
        );
        // Ties in total degree go to the earlier variable.
        let (m, _) = p(&t, "Y2 + Y0").leading_term().unwrap();
        assert_eq!(m, Mono::var(0, 1));
        let (m, _) = p(&t, "Y2^3*Y0^-1 + Y0")
            .leading_term_by(MonomialOrder::Lex)
            .unwrap();
        assert_eq!(m, Mono::var(0, 1));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let t = table(&["x1", "x2", "lambda"]);
        let q = p(&t, "-2*x1^2*x2^-1 + lambda - 7 + x2^(-3)");
        let again = p(&t, &q.to_string());
        assert_eq!(q, again);
        assert_eq!(LaurentPoly::zero(&t).to_string(), "0");
    }

    #[test]
    fn json_golden() {
        let t = table(&["Y0", "Y2"]);
        let q = p(&t, "Y0*Y2 + 2 + Y0^-1*Y2^-1");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"vars":["Y0","Y2"],"terms":[{"exps":{"Y0":1,"Y2":1},"coef":"1"},{"exps":{},"coef":"2"},{"exps":{"Y0":-1,"Y2":-1},"coef":"1"}]}"#
        );
        let back = LaurentPoly::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let t = table(&["x"]);
        let q = p(&t, "x + 1").pow(200);
        let c = q.coeff(&Mono::var(0, 100));
        assert!(c.bits() > 190);
        assert_eq!(
            q.divide_exact(&p(&t, "x + 1").pow(199)).unwrap(),
            p(&t, "x + 1")
        );
    }
}
