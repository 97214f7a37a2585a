//! The bases of the type-C_n algebra: monomials in the small variables,
//! cluster monomials times powers of `λ`, and the Chebyshev-twisted
//! cluster monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Mono};

use super::algebra::TypeC;
use super::polygon::{all_orbits, crossing, Orbit};

/// `λ^lambda · ∏ x_o^{m_o}` with pairwise compatible orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ClusterMonomial {
    pub lambda: u32,
    pub orbits: BTreeMap<Orbit, u32>,
}

impl ClusterMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_orbits<I: IntoIterator<Item = Orbit>>(lambda: u32, orbits: I) -> Self {
        let mut m = BTreeMap::new();
        for o in orbits {
            if !o.is_side() {
                *m.entry(o).or_insert(0) += 1;
            }
        }
        Self { lambda, orbits: m }
    }

    /// Degree `(n+1)·e + Σ m_o · |O_o|`.
    pub fn degree(&self, n: usize) -> usize {
        (n + 1) * self.lambda as usize
            + self
                .orbits
                .iter()
                .map(|(o, &m)| o.card() * m as usize)
                .sum::<usize>()
    }

    pub fn is_compatible(&self) -> bool {
        let v: Vec<&Orbit> = self.orbits.keys().collect();
        v.iter()
            .enumerate()
            .all(|(i, a)| v[i + 1..].iter().all(|b| !crossing(a, b)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut orbits = self.orbits.clone();
        for (o, m) in &other.orbits {
            *orbits.entry(*o).or_insert(0) += m;
        }
        Self {
            lambda: self.lambda + other.lambda,
            orbits,
        }
    }

    /// Parses the text form produced by `Display`, e.g.
    /// `lambda^2*x:0,4*(x:2,6)^3`. Factors may repeat.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut out = Self::one();
        if text == "1" {
            return Ok(out);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.rsplit_once('^') {
                Some((b, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad exponent in `{factor}`"))
                    })?;
                    (b.trim(), e)
                }
                None => (factor, 1),
            };
            let base = base
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(base);
            if base == "lambda" {
                out.lambda += exp;
            } else {
                let o = Orbit::parse(n, base)?;
                if o.is_side() {
                    return Err(Error::InvalidArgument(format!(
                        "`{base}` is a side, not a variable"
                    )));
                }
                *out.orbits.entry(o).or_insert(0) += exp;
            }
        }
        out.orbits.retain(|_, m| *m > 0);
        Ok(out)
    }

    /// Canonical tie-break key: degree, then the exponent vector over all
    /// orbits in canonical order, then the `λ` exponent.
    pub fn order_key(&self, n: usize) -> (usize, Vec<u32>, u32) {
        let v = all_orbits(n)
            .iter()
            .map(|o| self.orbits.get(o).copied().unwrap_or(0))
            .collect();
        (self.degree(n), v, self.lambda)
    }
}

impl fmt::Display for ClusterMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.lambda {
            0 => {}
            1 => parts.push("lambda".to_string()),
            e => parts.push(format!("lambda^{e}")),
        }
        for (o, &m) in &self.orbits {
            if m == 1 {
                parts.push(o.label());
            } else {
                parts.push(format!("({})^{m}", o.label()));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for ClusterMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exponents `a_0..a_n` of a monomial in the small variables `s_j`.
pub type SmallMonomial = Vec<u32>;

pub fn small_degree(s: &SmallMonomial) -> usize {
    s.iter().map(|&a| a as usize).sum()
}

/// `Φ`: every orbit contributes the small variables of its vertex orbits,
/// and `λ` contributes all of them.
pub fn phi(n: usize, m: &ClusterMonomial) -> Result<SmallMonomial> {
    if !m.is_compatible() {
        return Err(Error::InvalidArgument(format!(
            "{m} is not a cluster monomial (crossing orbits)"
        )));
    }
    let mut out = vec![m.lambda; n + 1];
    for (o, &mult) in &m.orbits {
        for j in o.interior() {
            out[j] += mult;
        }
    }
    Ok(out)
}

/// `Ψ`: strips full cycles as powers of `λ`, then reads the remaining
/// multiset layer by layer. The level set `{j : a_j ≥ t}` splits into
/// maximal cyclic runs; each run is the vertex set of exactly one orbit.
pub fn psi(n: usize, s: &SmallMonomial) -> Result<ClusterMonomial> {
    let h = n + 1;
    if s.len() != h {
        return Err(Error::InvalidArgument(format!(
            "expected {h} small exponents, got {}",
            s.len()
        )));
    }
    let r = *s.iter().min().unwrap();
    let rest: Vec<u32> = s.iter().map(|a| a - r).collect();
    let top = *rest.iter().max().unwrap();
    let mut out = ClusterMonomial {
        lambda: r,
        orbits: BTreeMap::new(),
    };
    if top == 0 {
        return Ok(out);
    }
    // Some residue has exponent zero, so runs never wrap all the way round.
    let zero = rest.iter().position(|&a| a == 0).unwrap();
    for t in 1..=top {
        let mut run_start: Option<usize> = None;
        for step in 1..=h {
            let j = (zero + step) % h;
            let inside = step < h && rest[j] >= t;
            match (inside, run_start) {
                (true, None) => run_start = Some(step),
                (false, Some(st)) => {
                    let first = (zero + st) % h;
                    let len = step - st;
                    *out.orbits
                        .entry(Orbit::new(n, first + h - 1, len + 1))
                        .or_insert(0) += 1;
                    run_start = None;
                }
                _ => {}
            }
        }
    }
    Ok(out)
}

/// Coefficients of the Chebyshev polynomial `S_k` of the second kind,
/// lowest degree first.
pub fn chebyshev_s(k: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![];
    let mut cur: Vec<BigInt> = vec![BigInt::from(1)];
    for _ in 0..k {
        let mut next = vec![BigInt::from(0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `S_k(u)` evaluated at a Laurent polynomial.
pub fn chebyshev_eval(k: usize, u: &LaurentPoly) -> LaurentPoly {
    let table = u.table();
    let mut prev = LaurentPoly::zero(table);
    let mut cur = LaurentPoly::one(table);
    for _ in 0..k {
        let next = &(u * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All cluster monomials (pairwise compatible orbit multisets, no `λ`) of
/// degree at most `bound`, sorted by [`ClusterMonomial::order_key`].
pub fn cluster_monomials(n: usize, bound: usize) -> Vec<ClusterMonomial> {
    let orbits = all_orbits(n);
    let mut out = Vec::new();
    let mut current: Vec<(Orbit, u32)> = Vec::new();
    fn rec(
        orbits: &[Orbit],
        idx: usize,
        budget: usize,
        current: &mut Vec<(Orbit, u32)>,
        out: &mut Vec<ClusterMonomial>,
    ) {
        if idx == orbits.len() {
            out.push(ClusterMonomial {
                lambda: 0,
                orbits: current.iter().copied().collect(),
            });
            return;
        }
        rec(orbits, idx + 1, budget, current, out);
        let o = orbits[idx];
        if current.iter().any(|(c, _)| crossing(c, &o)) {
            return;
        }
        let c = o.card();
        let mut m = 1;
        while m * c <= budget {
            current.push((o, m as u32));
            rec(orbits, idx + 1, budget - m * c, current, out);
            current.pop();
            m += 1;
        }
    }
    rec(&orbits, 0, bound, &mut current, &mut out);
    out.sort_by_key(|m| m.order_key(n));
    out
}

/// Cluster monomials times powers of `λ`, degree at most `bound`.
pub fn lambda_cluster_monomials(n: usize, bound: usize) -> Vec<ClusterMonomial> {
    let mut out = Vec::new();
    let mut e = 0;
    while (n + 1) * e <= bound {
        for m in cluster_monomials(n, bound - (n + 1) * e) {
            out.push(ClusterMonomial {
                lambda: e as u32,
                ..m
            });
        }
        e += 1;
    }
    out.sort_by_key(|m| m.order_key(n));
    out
}

/// All small monomials of degree at most `bound`.
pub fn small_monomials(n: usize, bound: usize) -> Vec<SmallMonomial> {
    fn rec(h: usize, budget: usize, cur: &mut Vec<u32>, out: &mut Vec<SmallMonomial>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for a in 0..=budget {
            cur.push(a as u32);
            rec(h, budget - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, bound, &mut Vec::new(), &mut out);
    out
}

/// Element `S_k(λ)·m` of the Chebyshev basis.
#[derive(Clone, Debug, Serialize)]
pub struct BasisElement {
    pub chebyshev: usize,
    pub monomial: ClusterMonomial,
    pub degree: usize,
    #[serde(skip)]
    pub value: LaurentPoly,
}

/// The Chebyshev basis elements of degree at most `bound`, expanded in the
/// initial cluster.
pub fn basis_b(alg: &TypeC, bound: usize) -> Vec<BasisElement> {
    let n = alg.n;
    let lambda = alg.lambda();
    let mut out = Vec::new();
    for m in lambda_cluster_monomials(n, bound) {
        let k = m.lambda as usize;
        let base = ClusterMonomial {
            lambda: 0,
            orbits: m.orbits.clone(),
        };
        let value = &chebyshev_eval(k, &lambda) * &alg.monomial_value(0, &base.orbits);
        out.push(BasisElement {
            chebyshev: k,
            degree: m.degree(n),
            monomial: base,
            value,
        });
    }
    out
}

/// One row of the transition matrix from cluster-times-`λ` monomials to
/// small monomials.
#[derive(Clone, Debug, Serialize)]
pub struct URow {
    pub monomial: ClusterMonomial,
    pub phi: SmallMonomial,
    pub diagonal: String,
    pub off_diagonal_terms: usize,
    pub unitriangular: bool,
}

/// Expands each monomial of degree at most `bound` in the small variables
/// and checks that the `Φ(m)` coefficient is 1 and every other term has
/// strictly smaller degree. This makes the matrix lower unitriangular in
/// any order that refines degree.
pub fn u_matrix(alg: &TypeC, bound: usize) -> Vec<URow> {
    let n = alg.n;
    let smalls: BTreeMap<Orbit, LaurentPoly> = all_orbits(n)
        .into_iter()
        .map(|o| (o, alg.express_in_small(&o)))
        .collect();
    let lam = alg.lambda_in_small();
    lambda_cluster_monomials(n, bound)
        .into_iter()
        .map(|m| {
            let mut p = lam.pow(m.lambda);
            for (o, &e) in &m.orbits {
                p = &p * &smalls[o].pow(e);
            }
            let phi_m = phi(n, &m).expect("enumerated monomials are compatible");
            let target = Mono::from_dense(&phi_m.iter().map(|&a| a as i32).collect::<Vec<_>>());
            let diag = p.coeff(&target);
            let deg = m.degree(n) as i64;
            let off: Vec<_> = p.terms().filter(|(mono, _)| **mono != target).collect();
            let polynomial = p
                .terms()
                .all(|(mono, _)| mono.is_one() || mono.is_nonnegative());
            let lower = off.iter().all(|(mono, _)| mono.degree() < deg);
            URow {
                phi: phi_m,
                diagonal: diag.to_string(),
                off_diagonal_terms: off.len(),
                unitriangular: diag == BigInt::from(1) && lower && polynomial,
                monomial: m,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_monomial_text_round_trip() {
        for n in 2..=4 {
            for m in lambda_cluster_monomials(n, 5) {
                assert_eq!(ClusterMonomial::parse(n, &m.to_string()).unwrap(), m);
            }
        }
        let m = ClusterMonomial::parse(3, "lambda*x:0,4*x:0,4").unwrap();
        assert_eq!(m.lambda, 1);
        assert_eq!(m.orbits.values().copied().collect::<Vec<_>>(), vec![2]);
        assert!(ClusterMonomial::parse(3, "x:0,2").is_err());
        assert!(ClusterMonomial::parse(3, "lambda^x").is_err());
    }

    #[test]
    fn chebyshev_small_cases() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(chebyshev_s(0), b(&[1]));
        assert_eq!(chebyshev_s(1), b(&[0, 1]));
        assert_eq!(chebyshev_s(2), b(&[-1, 0, 1]));
        assert_eq!(chebyshev_s(3), b(&[0, -2, 0, 1]));
    }

    #[test]
    fn phi_examples_octagon() {
        let n = 3;
        let o = |s: &str| Orbit::parse(n, s).unwrap();
        let x04 = o("x:0,4");
        assert_eq!(
            phi(n, &ClusterMonomial::from_orbits(0, [x04])).unwrap(),
            vec![0, 1, 0, 0]
        );
        assert_eq!(
            phi(n, &ClusterMonomial::from_orbits(1, [])).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            phi(n, &ClusterMonomial::from_orbits(0, [o("x:0,6")])).unwrap(),
            vec![0, 1, 1, 0]
        );
        assert!(phi(
            n,
            &ClusterMonomial::from_orbits(0, [o("x:0,0~"), o("x:2,2~")])
        )
        .is_err());
    }

    #[test]
    fn psi_examples_octagon() {
        let n = 3;
        let o = |s: &str| Orbit::parse(n, s).unwrap();
        assert_eq!(psi(n, &vec![0, 0, 0, 0]).unwrap(), ClusterMonomial::one());
        assert_eq!(
            psi(n, &vec![0, 2, 1, 0]).unwrap(),
            ClusterMonomial::from_orbits(0, [o("x:0,6"), o("x:0,4")])
        );
        assert_eq!(
            psi(n, &vec![1, 1, 1, 1]).unwrap(),
            ClusterMonomial::from_orbits(1, [])
        );
    }

    #[test]
    fn m0_count_matches_brute_force() {
        // Oracle: every orbit multiset with at most `bound` elements, kept
        // when its degree fits and its orbits are pairwise compatible.
        fn multisets(
            items: &[Orbit],
            size: usize,
            from: usize,
            cur: &mut Vec<Orbit>,
            out: &mut Vec<Vec<Orbit>>,
        ) {
            out.push(cur.clone());
            if cur.len() == size {
                return;
            }
            for i in from..items.len() {
                cur.push(items[i]);
                multisets(items, size, i, cur, out);
                cur.pop();
            }
        }
        for (n, bound) in [(2, 2), (2, 4), (3, 3)] {
            let orbits = all_orbits(n);
            let mut all = Vec::new();
            multisets(&orbits, bound, 0, &mut Vec::new(), &mut all);
            let brute = all
                .into_iter()
                .map(|v| ClusterMonomial::from_orbits(0, v))
                .filter(|m| m.degree(n) <= bound && m.is_compatible())
                .count();
            assert_eq!(
                cluster_monomials(n, bound).len(),
                brute,
                "n={n} bound={bound}"
            );
        }
    }

    #[test]
    fn phi_psi_inverse() {
        for n in 1..=4 {
            for m in lambda_cluster_monomials(n, 6) {
                let s = phi(n, &m).unwrap();
                assert_eq!(small_degree(&s), m.degree(n));
                assert_eq!(psi(n, &s).unwrap(), m, "n={n}");
            }
            for s in small_monomials(n, 6) {
                assert_eq!(phi(n, &psi(n, &s).unwrap()).unwrap(), s);
            }
        }
    }

    #[test]
    fn u_is_unitriangular() {
        for n in [2, 3] {
            let alg = TypeC::new(n).unwrap();
            let rows = u_matrix(&alg, 6);
            assert_eq!(rows.len(), small_monomials(n, 6).len());
            assert!(rows.iter().all(|r| r.unitriangular));
        }
    }
}
