//! Generalized seeds, their three-part mutation and exchange-graph
//! enumeration.
//!
//! Indices are 0-based throughout the library; the CLI converts from the
//! 1-based convention used on the command line.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Mono, VarTable};

/// Exchange matrix together with the divisor vector `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    pub b: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

/// Outcome of [`ExchangeMatrix::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Smallest positive integer diagonal `D` with `D·B` skew-symmetric.
    pub symmetrizer: Option<Vec<i64>>,
    pub column_divisible: bool,
    pub diagnostics: Vec<String>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let n = b.len();
        if b.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSeed("exchange matrix is not square".into()));
        }
        if d.len() != n {
            return Err(Error::InvalidSeed(format!(
                "divisor vector has length {} but rank is {n}",
                d.len()
            )));
        }
        if d.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidSeed("divisors must be positive".into()));
        }
        Ok(Self { b, d })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    /// `b_jk / d_k`.
    pub fn beta(&self, j: usize, k: usize) -> i64 {
        self.b[j][k] / self.d[k]
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let mut diagnostics = Vec::new();
        let mut column_divisible = true;
        for k in 0..n {
            for j in 0..n {
                if self.b[j][k] % self.d[k] != 0 {
                    column_divisible = false;
                    diagnostics.push(format!(
                        "column {}: d = {} does not divide b[{}][{}] = {}",
                        k + 1,
                        self.d[k],
                        j + 1,
                        k + 1,
                        self.b[j][k]
                    ));
                }
            }
        }
        let symmetrizer = self.symmetrizer(&mut diagnostics);
        ValidationReport {
            valid: column_divisible && symmetrizer.is_some(),
            symmetrizer,
            column_divisible,
            diagnostics,
        }
    }

    /// Solves `s_i b_ij = -s_j b_ji` over the positive rationals by
    /// propagation along the nonzero pattern, then clears denominators.
    fn symmetrizer(&self, diagnostics: &mut Vec<String>) -> Option<Vec<i64>> {
        let n = self.rank();
        for i in 0..n {
            if self.b[i][i] != 0 {
                diagnostics.push(format!("diagonal entry b[{0}][{0}] is nonzero", i + 1));
                return None;
            }
            for j in 0..n {
                let (a, c) = (self.b[i][j], self.b[j][i]);
                if (a == 0) != (c == 0) || (a != 0 && a.signum() == c.signum()) {
                    diagnostics.push(format!(
                        "entries b[{}][{}] = {a} and b[{}][{}] = {c} are not sign-skew",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    ));
                    return None;
                }
            }
        }
        // s as (numerator, denominator) pairs.
        let mut s: Vec<Option<(i64, i64)>> = vec![None; n];
        for root in 0..n {
            if s[root].is_some() {
                continue;
            }
            s[root] = Some((1, 1));
            let mut queue = vec![root];
            while let Some(i) = queue.pop() {
                let (pn, pd) = s[i].unwrap();
                for (j, &bij) in self.b[i].iter().enumerate() {
                    if bij == 0 {
                        continue;
                    }
                    // s_j = s_i * b_ij / (-b_ji)
                    let num = pn * bij;
                    let den = pd * -self.b[j][i];
                    let g = num.gcd(&den) * den.signum();
                    let cand = (num / g, den / g);
                    match s[j] {
                        None => {
                            s[j] = Some(cand);
                            queue.push(j);
                        }
                        Some(prev) if prev != cand => {
                            diagnostics.push(format!(
                                "no symmetrizer: inconsistent cycle through rows {} and {}",
                                i + 1,
                                j + 1
                            ));
                            return None;
                        }
                        _ => {}
                    }
                }
            }
        }
        let s: Vec<(i64, i64)> = s.into_iter().map(Option::unwrap).collect();
        let lcm = s.iter().fold(1i64, |acc, &(_, d)| acc.lcm(&d));
        let ints: Vec<i64> = s.iter().map(|&(n, d)| n * (lcm / d)).collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        Some(ints.into_iter().map(|x| x / g).collect())
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, rank: n });
        }
        let b = &self.b;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(Self {
            b: out,
            d: self.d.clone(),
        })
    }
}

/// Element of the tropical semifield: an exponent vector over the
/// generators `λ_1..λ_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropMonomial(pub Vec<i64>);

impl TropMonomial {
    pub fn one(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn generator(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        Self(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, e: i64) -> Self {
        Self(self.0.iter().map(|a| a * e).collect())
    }

    /// Tropical sum: componentwise minimum.
    pub fn oplus(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Coefficient tuple: for each direction `i`, the `d_i + 1` tropical
/// coefficients of the exchange polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffTuple(pub Vec<Vec<TropMonomial>>);

impl CoeffTuple {
    pub fn check(&self, matrix: &ExchangeMatrix, lambda_count: usize) -> Result<()> {
        if self.0.len() != matrix.rank() {
            return Err(Error::InvalidSeed(format!(
                "{} coefficient tuples for rank {}",
                self.0.len(),
                matrix.rank()
            )));
        }
        for (i, p) in self.0.iter().enumerate() {
            if p.len() as i64 != matrix.d[i] + 1 {
                return Err(Error::InvalidSeed(format!(
                    "coefficient tuple {} has length {}, expected d+1 = {}",
                    i + 1,
                    p.len(),
                    matrix.d[i] + 1
                )));
            }
            if p.iter().any(|t| t.0.len() != lambda_count) {
                return Err(Error::InvalidSeed(format!(
                    "coefficient tuple {} has a monomial of the wrong arity",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Coefficient mutation in direction `k`. For `i != k` the ratios
    /// `p_{i,r}/p_{i,r-1}` pick up the factor `p_{k,d_k}^β` or `p_{k,0}^β`
    /// (`β = b_ki / d_i`), and the tuple is then normalized so that its
    /// tropical sum is 1.
    pub fn mutate(&self, matrix: &ExchangeMatrix, k: usize) -> Result<Self> {
        let n = matrix.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, rank: n });
        }
        let mut out = Vec::with_capacity(n);
        for (i, p) in self.0.iter().enumerate() {
            if i == k {
                out.push(p.iter().rev().cloned().collect());
                continue;
            }
            let bki = matrix.b[k][i];
            if bki == 0 {
                out.push(p.clone());
                continue;
            }
            let beta = bki / matrix.d[i];
            let pk = &self.0[k];
            let base = if bki > 0 { pk.last().unwrap() } else { &pk[0] };
            let step = base.pow(beta);
            let raw: Vec<TropMonomial> = p
                .iter()
                .enumerate()
                .map(|(r, c)| c.mul(&step.pow(r as i64)))
                .collect();
            out.push(normalize(raw));
        }
        Ok(Self(out))
    }
}

fn normalize(tuple: Vec<TropMonomial>) -> Vec<TropMonomial> {
    let sum = tuple
        .iter()
        .skip(1)
        .fold(tuple[0].clone(), |acc, t| acc.oplus(t));
    let inv = sum.pow(-1);
    tuple.iter().map(|t| t.mul(&inv)).collect()
}

/// A generalized seed whose cluster variables are Laurent polynomials in
/// the initial variables, with the tropical generators adjoined to the same
/// variable table.
#[derive(Clone, Debug)]
pub struct GenSeed {
    pub x: Vec<LaurentPoly>,
    pub matrix: ExchangeMatrix,
    pub coeffs: CoeffTuple,
    table: Arc<VarTable>,
    x_vars: Vec<String>,
    lambda_vars: Vec<String>,
}

impl GenSeed {
    /// Builds the initial seed `x_i = t_i` over a table `x_vars ++ lambda_vars`.
    pub fn initial(
        matrix: ExchangeMatrix,
        coeffs: CoeffTuple,
        x_vars: Vec<String>,
        lambda_vars: Vec<String>,
    ) -> Result<Self> {
        let report = matrix.validate();
        if !report.valid {
            return Err(Error::InvalidSeed(report.diagnostics.join("; ")));
        }
        if x_vars.len() != matrix.rank() {
            return Err(Error::InvalidSeed(format!(
                "{} cluster variable names for rank {}",
                x_vars.len(),
                matrix.rank()
            )));
        }
        coeffs.check(&matrix, lambda_vars.len())?;
        let table = VarTable::new(x_vars.iter().chain(&lambda_vars).cloned())?;
        let x = (0..matrix.rank())
            .map(|i| LaurentPoly::monomial(&table, Mono::var(i, 1), 1))
            .collect();
        Ok(Self {
            x,
            matrix,
            coeffs,
            table,
            x_vars,
            lambda_vars,
        })
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn lambda_vars(&self) -> &[String] {
        &self.lambda_vars
    }

    /// The coefficient `λ^e` as an element of the ambient table.
    pub fn trop_to_poly(&self, t: &TropMonomial) -> LaurentPoly {
        let off = self.x_vars.len();
        let mono = Mono::from_pairs(t.0.iter().enumerate().map(|(i, &e)| (off + i, e as i32)));
        LaurentPoly::monomial(&self.table, mono, 1)
    }

    /// `θ_k[p_k](u, v)` evaluated at Laurent polynomials.
    pub fn exchange_polynomial(&self, k: usize, u: &LaurentPoly, v: &LaurentPoly) -> LaurentPoly {
        let p = &self.coeffs.0[k];
        let d = p.len() - 1;
        let mut u_pows = vec![LaurentPoly::one(&self.table)];
        let mut v_pows = vec![LaurentPoly::one(&self.table)];
        for i in 0..d {
            u_pows.push(&u_pows[i] * u);
            v_pows.push(&v_pows[i] * v);
        }
        let mut acc = LaurentPoly::zero(&self.table);
        for (r, c) in p.iter().enumerate() {
            let term = &(&u_pows[r] * &v_pows[d - r]) * &self.trop_to_poly(c);
            acc = &acc + &term;
        }
        acc
    }

    /// The monomials `u_k^+` and `u_k^-` of the current cluster.
    pub fn exchange_monomials(&self, k: usize) -> (LaurentPoly, LaurentPoly) {
        let mut plus = LaurentPoly::one(&self.table);
        let mut minus = LaurentPoly::one(&self.table);
        for j in 0..self.rank() {
            let beta = self.matrix.beta(j, k);
            if beta > 0 {
                plus = &plus * &self.x[j].pow(beta as u32);
            } else if beta < 0 {
                minus = &minus * &self.x[j].pow((-beta) as u32);
            }
        }
        (plus, minus)
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, rank: n });
        }
        let (plus, minus) = self.exchange_monomials(k);
        let theta = self.exchange_polynomial(k, &plus, &minus);
        let new_x = theta.divide_exact(&self.x[k])?;
        let mut x = self.x.clone();
        x[k] = new_x;
        Ok(Self {
            x,
            matrix: self.matrix.mutate(k)?,
            coeffs: self.coeffs.mutate(&self.matrix, k)?,
            table: self.table.clone(),
            x_vars: self.x_vars.clone(),
            lambda_vars: self.lambda_vars.clone(),
        })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    pub fn key(&self) -> ClusterKey {
        ClusterKey::new(&self.x)
    }

    /// Structural equality of the full seed (ordered cluster, matrix and
    /// coefficients).
    pub fn same_seed(&self, other: &Self) -> bool {
        self.x == other.x && self.matrix == other.matrix && self.coeffs == other.coeffs
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            rank: self.rank(),
            b: self.matrix.b.clone(),
            d: self.matrix.d.clone(),
            coeffs: self
                .coeffs
                .0
                .iter()
                .map(|p| p.iter().map(|t| t.0.clone()).collect())
                .collect(),
            lambda_vars: self.lambda_vars.clone(),
            x_vars: Some(self.x_vars.clone()),
        }
    }

    pub fn from_json(json: &SeedJson) -> Result<Self> {
        let matrix = ExchangeMatrix::new(json.b.clone(), json.d.clone())?;
        if matrix.rank() != json.rank {
            return Err(Error::InvalidSeed(format!(
                "rank {} does not match a {}x{} matrix",
                json.rank,
                matrix.rank(),
                matrix.rank()
            )));
        }
        let coeffs = CoeffTuple(
            json.coeffs
                .iter()
                .map(|p| p.iter().map(|t| TropMonomial(t.clone())).collect())
                .collect(),
        );
        let x_vars = json
            .x_vars
            .clone()
            .unwrap_or_else(|| (1..=json.rank).map(|i| format!("x{i}")).collect());
        Self::initial(matrix, coeffs, x_vars, json.lambda_vars.clone())
    }
}

/// On-disk seed description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub rank: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub coeffs: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub lambda_vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_vars: Option<Vec<String>>,
}

/// Identity of a cluster as an unordered set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterKey(Vec<LaurentPoly>);

impl ClusterKey {
    pub fn new(vars: &[LaurentPoly]) -> Self {
        let mut v = vars.to_vec();
        v.sort();
        Self(v)
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.0
    }

    /// Stable 64-bit FNV-1a digest of the canonical JSON form.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for p in &self.0 {
            let s = serde_json::to_string(p).expect("polynomials serialize");
            for b in s.bytes().chain(std::iter::once(0u8)) {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }
}

/// Bounds for [`enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_nodes: 100_000,
            max_depth: 64,
        }
    }
}

/// Result of breadth-first mutation closure.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    /// Seeds in discovery order; index 0 is the initial seed.
    pub nodes: Vec<GenSeed>,
    pub keys: Vec<ClusterKey>,
    /// `adjacency[i][k]` is the node reached from node `i` by mutation `k`,
    /// when that node was materialized.
    pub adjacency: Vec<Vec<Option<usize>>>,
    pub depth: Vec<usize>,
    pub complete: bool,
}

/// Breadth-first closure under mutation, deduplicating clusters as
/// unordered sets. Each BFS layer is mutated in parallel; insertion happens
/// in a fixed order so the result does not depend on scheduling.
pub fn enumerate(seed: &GenSeed, limits: Limits) -> Result<ExchangeGraph> {
    let n = seed.rank();
    let mut index: HashMap<ClusterKey, usize> = HashMap::new();
    let mut g = ExchangeGraph {
        nodes: vec![seed.clone()],
        keys: vec![seed.key()],
        adjacency: vec![vec![None; n]],
        depth: vec![0],
        complete: true,
    };
    index.insert(g.keys[0].clone(), 0);
    let mut frontier = vec![0usize];
    let mut level = 0;
    while !frontier.is_empty() {
        if level >= limits.max_depth {
            g.complete = false;
            break;
        }
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&i| (0..n).map(move |k| (i, k)))
            .filter(|&(i, k)| g.adjacency[i][k].is_none())
            .collect();
        let results: Vec<Result<(GenSeed, ClusterKey)>> = jobs
            .par_iter()
            .map(|&(i, k)| {
                let s = g.nodes[i].mutate(k)?;
                let key = s.key();
                Ok((s, key))
            })
            .collect();
        let mut next = Vec::new();
        for (&(i, k), res) in jobs.iter().zip(results) {
            let (s, key) = res?;
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if g.nodes.len() >= limits.max_nodes {
                        g.complete = false;
                        continue;
                    }
                    let j = g.nodes.len();
                    g.nodes.push(s);
                    g.keys.push(key.clone());
                    g.adjacency.push(vec![None; n]);
                    g.depth.push(level + 1);
                    index.insert(key, j);
                    next.push(j);
                    j
                }
            };
            g.adjacency[i][k] = Some(j);
            // Mutation is an involution, so the reverse edge is known.
            if let Some(kk) = (0..n).find(|&kk| g.nodes[j].x[kk] == g.nodes[i].x[k]) {
                if g.adjacency[j][kk].is_none() {
                    g.adjacency[j][kk] = Some(i);
                }
            }
        }
        frontier = next;
        level += 1;
    }
    Ok(g)
}

impl ExchangeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Undirected edges `(i, k, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut set = BTreeSet::new();
        for (i, row) in self.adjacency.iter().enumerate() {
            for (k, j) in row.iter().enumerate() {
                if let Some(j) = *j {
                    if i < j {
                        set.insert((i, k, j));
                    } else if j < i {
                        // Report from the lower endpoint, in that node's
                        // direction numbering.
                        let kk = self.adjacency[j].iter().position(|&t| t == Some(i));
                        set.insert((j, kk.unwrap_or(k), i));
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Distinct neighbours of node `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i]
            .iter()
            .flatten()
            .filter(|&&j| j != i)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn is_regular(&self, deg: usize) -> bool {
        (0..self.node_count()).all(|i| self.degree(i) == deg)
    }

    /// All distinct cluster variables, sorted canonically.
    pub fn variables(&self) -> Vec<LaurentPoly> {
        let set: BTreeSet<&LaurentPoly> = self.keys.iter().flat_map(|k| k.vars()).collect();
        set.into_iter().cloned().collect()
    }

    /// Names the distinct variables: initial ones keep their table names,
    /// the rest are numbered after them in order of discovery.
    pub fn variable_names(&self) -> Vec<(String, LaurentPoly)> {
        let first = &self.nodes[0];
        let mut names: Vec<(String, LaurentPoly)> = first
            .x
            .iter()
            .zip(first.x_vars())
            .map(|(p, n)| (n.clone(), p.clone()))
            .collect();
        let mut seen: BTreeSet<LaurentPoly> = first.x.iter().cloned().collect();
        let mut next = first.rank() + 1;
        for node in &self.nodes {
            for p in &node.x {
                if seen.insert(p.clone()) {
                    names.push((format!("x{next}"), p.clone()));
                    next += 1;
                }
            }
        }
        names
    }

    fn node_labels(&self) -> Vec<Vec<String>> {
        let names = self.variable_names();
        let lookup: HashMap<&LaurentPoly, &str> =
            names.iter().map(|(n, p)| (p, n.as_str())).collect();
        self.nodes
            .iter()
            .map(|s| {
                let mut v: Vec<String> = s.x.iter().map(|p| lookup[p].to_string()).collect();
                v.sort_by_key(|name| (name.len(), name.clone()));
                v
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let labels = self.node_labels();
        let mut out = String::from("graph exchange {\n");
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{{{}}}\"];", l.join(","));
        }
        for (i, k, j) in self.edges() {
            let _ = writeln!(out, "  n{i} -- n{j} [label=\"{}\"];", k + 1);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels = self.node_labels();
        let names = self.variable_names();
        serde_json::json!({
            "complete": self.complete,
            "node_count": self.node_count(),
            "variable_count": names.len(),
            "variables": names.iter().map(|(n, p)| serde_json::json!({
                "name": n,
                "expansion": p,
            })).collect::<Vec<_>>(),
            "nodes": labels.iter().enumerate().map(|(i, l)| serde_json::json!({
                "id": i,
                "depth": self.depth[i],
                "fingerprint": format!("{:016x}", self.keys[i].fingerprint()),
                "cluster": l,
                "B": self.nodes[i].matrix.b,
            })).collect::<Vec<_>>(),
            "edges": self.edges().iter().map(|&(i, k, j)| serde_json::json!({
                "from": i, "to": j, "direction": k + 1,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Per-step record of [`check_laurent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentStep {
    pub direction: usize,
    pub support: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    pub sequence: Vec<usize>,
    pub exact: bool,
    pub steps: Vec<LaurentStep>,
    pub failure: Option<String>,
}

/// Applies a mutation sequence, recording whether every division was exact.
pub fn check_laurent(seed: &GenSeed, sequence: &[usize]) -> LaurentReport {
    let mut s = seed.clone();
    let mut steps = Vec::with_capacity(sequence.len());
    for &k in sequence {
        match s.mutate(k) {
            Ok(next) => {
                steps.push(LaurentStep {
                    direction: k,
                    support: next.x[k].len(),
                });
                s = next;
            }
            Err(e) => {
                return LaurentReport {
                    sequence: sequence.to_vec(),
                    exact: false,
                    steps,
                    failure: Some(format!("direction {}: {e}", k + 1)),
                };
            }
        }
    }
    LaurentReport {
        sequence: sequence.to_vec(),
        exact: true,
        steps,
        failure: None,
    }
}

/// Summary of randomized Laurent-phenomenon trials.
#[derive(Clone, Debug, Serialize)]
pub struct LaurentTrials {
    pub rng_seed: u64,
    pub trials: usize,
    pub max_len: usize,
    pub exact: usize,
    pub max_support: usize,
    pub failures: Vec<LaurentReport>,
}

/// Draws a random mutation sequence of length `1..=max_len` with no
/// immediate repeats (a repeat would just undo the previous step).
pub fn random_sequence<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut seq: Vec<usize> = Vec::with_capacity(len);
    let dirs: Vec<usize> = (0..rank).collect();
    for _ in 0..len {
        let choices: Vec<usize> = dirs
            .iter()
            .copied()
            .filter(|&k| rank == 1 || seq.last() != Some(&k))
            .collect();
        seq.push(*choices.choose(rng).unwrap());
    }
    seq
}

pub fn random_laurent_trials(
    seed: &GenSeed,
    trials: usize,
    max_len: usize,
    rng_seed: u64,
) -> LaurentTrials {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let seqs: Vec<Vec<usize>> = (0..trials)
        .map(|_| random_sequence(&mut rng, seed.rank(), max_len))
        .collect();
    let reports: Vec<LaurentReport> = seqs.par_iter().map(|s| check_laurent(seed, s)).collect();
    LaurentTrials {
        rng_seed,
        trials,
        max_len,
        exact: reports.iter().filter(|r| r.exact).count(),
        max_support: reports
            .iter()
            .flat_map(|r| r.steps.iter().map(|s| s.support))
            .max()
            .unwrap_or(0),
        failures: reports.into_iter().filter(|r| !r.exact).collect(),
    }
}

/// Convenience for building tropical coefficient tuples with all entries 1
/// except for chosen generators.
pub fn unit_tuple(d: i64, m: usize) -> Vec<TropMonomial> {
    (0..=d).map(|_| TropMonomial::one(m)).collect()
}

/// Sum of the coefficients of `θ_k`, i.e. `θ_k(1,1)`, as a polynomial in the
/// tropical generators. Used for rank-1 checks.
pub fn theta_at_one(seed: &GenSeed, k: usize) -> LaurentPoly {
    let one = LaurentPoly::one(seed.table());
    seed.exchange_polynomial(k, &one, &one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_seed() -> GenSeed {
        let m = ExchangeMatrix::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let lam = TropMonomial::generator(1, 0);
        let coeffs = CoeffTuple(vec![
            unit_tuple(1, 1),
            vec![TropMonomial::one(1), lam, TropMonomial::one(1)],
        ]);
        GenSeed::initial(
            m,
            coeffs,
            vec!["x1".into(), "x2".into()],
            vec!["lambda".into()],
        )
        .unwrap()
    }

    fn poly(seed: &GenSeed, s: &str) -> LaurentPoly {
        LaurentPoly::parse(seed.table(), s).unwrap()
    }

    #[test]
    fn validate_examples() {
        let c3 = ExchangeMatrix::new(
            vec![vec![0, 1, 0], vec![-1, 0, 2], vec![0, -1, 0]],
            vec![1, 1, 2],
        )
        .unwrap();
        let r = c3.validate();
        assert!(r.valid);
        assert_eq!(r.symmetrizer, Some(vec![1, 1, 2]));

        let g2 = ExchangeMatrix::new(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]).unwrap();
        let r = g2.validate();
        assert!(r.valid);
        assert_eq!(r.symmetrizer, Some(vec![1, 3]));

        let sym = ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]], vec![1, 1]).unwrap();
        assert!(!sym.validate().valid);

        let bad_div = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 2]).unwrap();
        let r = bad_div.validate();
        assert!(!r.valid && !r.column_divisible && r.symmetrizer.is_some());
    }

    #[test]
    fn matrix_mutation_examples() {
        let c3 = ExchangeMatrix::new(
            vec![vec![0, 1, 0], vec![-1, 0, 2], vec![0, -1, 0]],
            vec![1, 1, 2],
        )
        .unwrap();
        assert_eq!(
            c3.mutate(0).unwrap().b,
            vec![vec![0, -1, 0], vec![1, 0, 2], vec![0, -1, 0]]
        );
        let g2 = ExchangeMatrix::new(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]).unwrap();
        assert_eq!(g2.mutate(1).unwrap().b, vec![vec![0, -3], vec![1, 0]]);
        assert!(matches!(c3.mutate(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn c2_cluster_mutations() {
        let s = c2_seed();
        let m2 = s.mutate(1).unwrap();
        let expected = poly(&s, "x1^2*x2^-1 + lambda*x1*x2^-1 + x2^-1");
        assert_eq!(m2.x[1], expected);
        let m1 = s.mutate(0).unwrap();
        assert_eq!(m1.x[0], poly(&s, "x1^-1 + x1^-1*x2"));
        assert!(m1.mutate(0).unwrap().same_seed(&s));
        assert!(m2.mutate(1).unwrap().same_seed(&s));
    }

    #[test]
    fn c2_graph() {
        let g = enumerate(&c2_seed(), Limits::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.variables().len(), 6);
        assert!(g.is_regular(2));
        assert_eq!(g.edges().len(), 6);
    }

    #[test]
    fn coefficient_reversal_and_renormalization() {
        let m = ExchangeMatrix::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        // Nontrivial extremes on θ_2 so the other tuple actually moves.
        let p = CoeffTuple(vec![
            vec![TropMonomial(vec![0]), TropMonomial(vec![0])],
            vec![
                TropMonomial(vec![1]),
                TropMonomial(vec![0]),
                TropMonomial(vec![0]),
            ],
        ]);
        let q = p.mutate(&m, 1).unwrap();
        assert_eq!(
            q.0[1],
            vec![
                TropMonomial(vec![0]),
                TropMonomial(vec![0]),
                TropMonomial(vec![1])
            ]
        );
        // b_21 = -1 < 0, β = -1: ratio multiplied by p_{2,0}^{-1} = λ^{-1};
        // (1, λ^{-1}) normalizes to (λ, 1).
        assert_eq!(q.0[0], vec![TropMonomial(vec![1]), TropMonomial(vec![0])]);
        let back = q.mutate(&m.mutate(1).unwrap(), 1).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rank_one_convention() {
        let m = ExchangeMatrix::new(vec![vec![0]], vec![2]).unwrap();
        let coeffs = CoeffTuple(vec![vec![
            TropMonomial::one(1),
            TropMonomial::generator(1, 0),
            TropMonomial::one(1),
        ]]);
        let s = GenSeed::initial(m, coeffs, vec!["x1".into()], vec!["lambda".into()]).unwrap();
        let t = s.mutate(0).unwrap();
        assert_eq!(&t.x[0] * &s.x[0], poly(&s, "2 + lambda"));
        let g = enumerate(&s, Limits::default()).unwrap();
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn seed_json_round_trip() {
        let s = c2_seed();
        let json = serde_json::to_string(&s.to_json()).unwrap();
        let back = GenSeed::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(back.same_seed(&s));
    }

    #[test]
    fn truncation_is_reported() {
        let g = enumerate(
            &c2_seed(),
            Limits {
                max_nodes: 3,
                max_depth: 64,
            },
        )
        .unwrap();
        assert!(!g.complete);
        assert_eq!(g.node_count(), 3);
    }
}
