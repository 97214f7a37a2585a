//! The type-C_n generalized cluster algebra: initial seed, the dictionary
//! from orbits to Laurent expansions, exchange relations and expressions
//! in the small variables.

use std::collections::{hash_map::Entry, BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gca::{CoeffTuple, ExchangeMatrix, GenSeed, TropMonomial};
use crate::laurent::{LaurentPoly, Mono, VarTable};

use super::polygon::{all_orbits, vertex_count, Orbit};
use super::triangulation::CSTriangulation;

/// Initial seed of rank `n`: tridiagonal exchange matrix with a `2` in the
/// last column, `d = (1,…,1,2)`, `θ_i = u + v` for `i < n` and
/// `θ_n = u² + λuv + v²`. Rank 1 uses `B = [0]`.
pub fn initial_seed(n: usize) -> Result<GenSeed> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n.saturating_sub(1) {
        b[i][i + 1] = 1;
        b[i + 1][i] = -1;
    }
    if n >= 2 {
        b[n - 2][n - 1] = 2;
    }
    let mut d = vec![1i64; n];
    d[n - 1] = 2;
    let one = TropMonomial::one(1);
    let mut coeffs: Vec<Vec<TropMonomial>> =
        (0..n - 1).map(|_| vec![one.clone(), one.clone()]).collect();
    coeffs.push(vec![one.clone(), TropMonomial::generator(1, 0), one]);
    GenSeed::initial(
        ExchangeMatrix::new(b, d)?,
        CoeffTuple(coeffs),
        (1..=n).map(|k| format!("x{k}")).collect(),
        vec!["lambda".into()],
    )
}

/// One term `λ^e · ∏ x_o` of a relation. Sides in `orbits` evaluate to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelTerm {
    pub lambda: u32,
    pub orbits: Vec<Orbit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelationFamily {
    /// Ptolemy relation in a quadrilateral inside a closed half circle.
    Ptolemy,
    /// Product of two diameters.
    Diameters,
    /// A diagonal times a diameter that crosses it.
    DiagonalDiameter,
}

/// A symbolic identity `∏ lhs = Σ rhs` among orbit variables and `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub family: RelationFamily,
    pub lhs: Vec<Orbit>,
    pub rhs: Vec<RelTerm>,
}

impl Relation {
    /// Evaluates both sides under an assignment of orbit values and `λ`.
    pub fn evaluate<F>(&self, value: F, lambda: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)>
    where
        F: Fn(&Orbit) -> Result<LaurentPoly>,
    {
        let table = lambda.table();
        let prod = |orbits: &[Orbit]| -> Result<LaurentPoly> {
            let mut acc = LaurentPoly::one(table);
            for o in orbits.iter().filter(|o| !o.is_side()) {
                acc = acc.checked_mul(&value(o)?)?;
            }
            Ok(acc)
        };
        let lhs = prod(&self.lhs)?;
        let mut rhs = LaurentPoly::zero(table);
        for t in &self.rhs {
            let term = prod(&t.orbits)?.checked_mul(&lambda.pow(t.lambda))?;
            rhs = rhs.checked_add(&term)?;
        }
        Ok((lhs, rhs))
    }

    pub fn describe(&self) -> String {
        let side = |os: &[Orbit]| {
            let v: Vec<String> = os
                .iter()
                .filter(|o| !o.is_side())
                .map(|o| o.label())
                .collect();
            if v.is_empty() {
                "1".to_string()
            } else {
                v.join("*")
            }
        };
        let rhs: Vec<String> = self
            .rhs
            .iter()
            .map(|t| match t.lambda {
                0 => side(&t.orbits),
                1 => format!("lambda*{}", side(&t.orbits)),
                e => format!("lambda^{e}*{}", side(&t.orbits)),
            })
            .collect();
        format!("{} = {}", side(&self.lhs), rhs.join(" + "))
    }
}

/// Every instance of the three relation families for rank `n`.
pub fn relation_instances(n: usize) -> Vec<Relation> {
    let nv = vertex_count(n);
    let h = n + 1;
    let x = |p: usize, q: usize| Orbit::from_positions(n, p, q);
    let mut out = Vec::new();
    for p1 in 0..nv {
        for o2 in 1..=h {
            for o3 in o2 + 1..=h {
                for o4 in o3 + 1..=h {
                    let (p2, p3, p4) = (p1 + o2, p1 + o3, p1 + o4);
                    out.push(Relation {
                        family: RelationFamily::Ptolemy,
                        lhs: vec![x(p1, p3), x(p2, p4)],
                        rhs: vec![
                            RelTerm {
                                lambda: 0,
                                orbits: vec![x(p1, p2), x(p3, p4)],
                            },
                            RelTerm {
                                lambda: 0,
                                orbits: vec![x(p1, p4), x(p2, p3)],
                            },
                        ],
                    });
                }
            }
        }
    }
    for a in 0..nv {
        for c in 0..nv {
            if c == a || c == (a + h) % nv {
                continue;
            }
            let (ac, acb) = (x(a, c), x(a, c + h));
            out.push(Relation {
                family: RelationFamily::Diameters,
                lhs: vec![Orbit::diameter(n, a), Orbit::diameter(n, c)],
                rhs: vec![
                    RelTerm {
                        lambda: 0,
                        orbits: vec![ac, ac],
                    },
                    RelTerm {
                        lambda: 0,
                        orbits: vec![acb, acb],
                    },
                    RelTerm {
                        lambda: 1,
                        orbits: vec![ac, acb],
                    },
                ],
            });
        }
    }
    for a in 0..nv {
        for span in 2..=n {
            let b = a + span;
            for d in a + 1..b {
                out.push(Relation {
                    family: RelationFamily::DiagonalDiameter,
                    lhs: vec![x(a, b), Orbit::diameter(n, d)],
                    rhs: vec![
                        RelTerm {
                            lambda: 1,
                            orbits: vec![x(a, d), x(d, b)],
                        },
                        RelTerm {
                            lambda: 0,
                            orbits: vec![x(a, d), x(b, d + h)],
                        },
                        RelTerm {
                            lambda: 0,
                            orbits: vec![x(d, b), x(d + h, a)],
                        },
                    ],
                });
            }
        }
    }
    out
}

/// The algebra of rank `n` with every cluster variable expanded in the
/// initial cluster.
#[derive(Clone, Debug)]
pub struct TypeC {
    pub n: usize,
    seed: GenSeed,
    values: BTreeMap<Orbit, LaurentPoly>,
    clusters: Vec<CSTriangulation>,
    small_table: Arc<VarTable>,
}

impl TypeC {
    /// Runs mutation and flips side by side from the initial seed. Every
    /// mutation of a seed is matched with the flip of the corresponding
    /// orbit, and each orbit must always receive the same expansion.
    pub fn new(n: usize) -> Result<Self> {
        let seed = initial_seed(n)?;
        let tri = CSTriangulation::initial(n);
        let mut values: BTreeMap<Orbit, LaurentPoly> = BTreeMap::new();
        for (o, x) in tri.orbits.iter().zip(&seed.x) {
            values.insert(*o, x.clone());
        }
        let mut seen: HashMap<Vec<Orbit>, usize> = HashMap::new();
        seen.insert(tri.key(), 0);
        let mut nodes = vec![(seed.clone(), tri)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for k in 0..n {
                let (s, t) = &nodes[i];
                let t2 = t.flip_at(k)?;
                let s2 = s.mutate(k)?;
                let o = t2.orbits[k];
                match values.get(&o) {
                    Some(v) if *v != s2.x[k] => {
                        return Err(Error::Invariant(format!(
                            "orbit {o} reached with two different expansions"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        values.insert(o, s2.x[k].clone());
                    }
                }
                if let Entry::Vacant(e) = seen.entry(t2.key()) {
                    e.insert(nodes.len());
                    queue.push_back(nodes.len());
                    nodes.push((s2, t2));
                }
            }
        }
        if values.len() != all_orbits(n).len() {
            return Err(Error::Invariant(format!(
                "{} orbits reached, expected {}",
                values.len(),
                all_orbits(n).len()
            )));
        }
        let small_table = VarTable::new((0..=n).map(|j| format!("s{j}")))?;
        Ok(Self {
            n,
            seed,
            values,
            clusters: nodes.into_iter().map(|(_, t)| t).collect(),
            small_table,
        })
    }

    pub fn seed(&self) -> &GenSeed {
        &self.seed
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.seed.table()
    }

    /// Triangulations in the order they were discovered.
    pub fn clusters(&self) -> &[CSTriangulation] {
        &self.clusters
    }

    pub fn orbits(&self) -> Vec<Orbit> {
        self.values.keys().copied().collect()
    }

    /// Expansion of an orbit variable; sides give 1.
    pub fn value(&self, o: &Orbit) -> LaurentPoly {
        if o.is_side() {
            return LaurentPoly::one(self.table());
        }
        self.values[o].clone()
    }

    /// `x_{pq}` for positions `p`, `q`.
    pub fn x(&self, p: usize, q: usize) -> LaurentPoly {
        self.value(&Orbit::from_positions(self.n, p, q))
    }

    pub fn lambda(&self) -> LaurentPoly {
        LaurentPoly::var(self.table(), "lambda").expect("lambda is in the table")
    }

    /// Table of the small variables `s0..sn`, where `s_j` is the orbit
    /// `[j-1, j+1]`.
    pub fn small_table(&self) -> &Arc<VarTable> {
        &self.small_table
    }

    /// Bindings `s_j ↦ expansion` for substituting small-variable
    /// expressions back into the initial cluster.
    pub fn small_bindings(&self) -> HashMap<String, LaurentPoly> {
        (0..=self.n)
            .map(|j| (format!("s{j}"), self.value(&Orbit::small(self.n, j))))
            .collect()
    }

    fn s(&self, j: usize) -> LaurentPoly {
        LaurentPoly::monomial(&self.small_table, Mono::var(j % (self.n + 1), 1), 1)
    }

    /// An orbit variable as a polynomial in the small variables, via the
    /// three-term recurrence `X(p, L+1) = s_{p+L}·X(p, L) − X(p, L−1)`.
    pub fn express_in_small(&self, o: &Orbit) -> LaurentPoly {
        let one = LaurentPoly::one(&self.small_table);
        let (mut prev, mut cur) = (LaurentPoly::zero(&self.small_table), one);
        for len in 1..o.span {
            let next = &(&self.s(o.start + len) * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `λ` in the small variables, from the diagonal/diameter relation at
    /// `[2n~, 2n]` and `[2n-2, 0~]`.
    pub fn lambda_in_small(&self) -> LaurentPoly {
        let n = self.n;
        let nv = vertex_count(n);
        let e = |p: usize, q: usize| self.express_in_small(&Orbit::from_positions(n, p, q));
        if n == 1 {
            // x·x' = 2 + λ for the two diameters, which are the small variables.
            return &(&e(nv - 1, 1) * &e(0, 2)) - &LaurentPoly::constant(&self.small_table, 2);
        }
        let lhs = &e(nv - 1, n) * &e(n - 1, n + 1);
        &(&lhs - &e(n + 1, nv - 1)) - &e(nv - 1, n - 1)
    }

    /// Substitutes small-variable expansions into a polynomial over the
    /// small table.
    pub fn from_small(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        p.substitute_into(&self.small_bindings(), self.table())
    }

    /// Checks every relation instance as an identity of Laurent
    /// polynomials; returns the failures.
    pub fn check_relations(&self) -> Result<Vec<Relation>> {
        let lambda = self.lambda();
        let mut bad = Vec::new();
        for r in relation_instances(self.n) {
            let (l, rr) = r.evaluate(|o| Ok(self.value(o)), &lambda)?;
            if l != rr {
                bad.push(r);
            }
        }
        Ok(bad)
    }

    /// Product `λ^e ∏ x_o^{m_o}` in the initial cluster.
    pub fn monomial_value(&self, lambda_exp: u32, orbits: &BTreeMap<Orbit, u32>) -> LaurentPoly {
        let mut acc = self.lambda().pow(lambda_exp);
        for (o, &m) in orbits {
            acc = &acc * &self.value(o).pow(m);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_matrices() {
        assert_eq!(
            initial_seed(3).unwrap().matrix.b,
            vec![vec![0, 1, 0], vec![-1, 0, 2], vec![0, -1, 0]]
        );
        let s2 = initial_seed(2).unwrap();
        assert_eq!(s2.matrix.b, vec![vec![0, 2], vec![-1, 0]]);
        assert_eq!(s2.matrix.d, vec![1, 2]);
        let s1 = initial_seed(1).unwrap();
        assert_eq!(s1.matrix.b, vec![vec![0]]);
        assert_eq!(s1.matrix.d, vec![2]);
        assert!(initial_seed(0).is_err());
    }

    #[test]
    fn dictionary_sizes() {
        for (n, count) in [(1, 2), (2, 6), (3, 12), (4, 20)] {
            let a = TypeC::new(n).unwrap();
            assert_eq!(a.orbits().len(), count);
        }
    }

    #[test]
    fn c2_expansion_of_x04() {
        let a = TypeC::new(2).unwrap();
        let o = Orbit::parse(2, "x:0,4").unwrap();
        let expected = LaurentPoly::parse(a.table(), "x1^-1 + x1^-1*x2").unwrap();
        assert_eq!(a.value(&o), expected);
    }

    #[test]
    fn diameter_relation_in_initial_cluster() {
        let a = TypeC::new(2).unwrap();
        let x = |s: &str| a.value(&Orbit::parse(2, s).unwrap());
        let lhs = &x("x:4~,4") * &x("x:2~,2");
        let x42 = x("x:4~,2");
        let rhs = &(&(&x42 * &x42) + &(&a.lambda() * &x42)) + &LaurentPoly::one(a.table());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_hold() {
        for n in 1..=4 {
            let a = TypeC::new(n).unwrap();
            let bad = a.check_relations().unwrap();
            assert!(bad.is_empty(), "n={n}: {}", bad[0].describe());
        }
    }

    #[test]
    fn small_expressions_round_trip() {
        for n in 1..=4 {
            let a = TypeC::new(n).unwrap();
            for o in a.orbits() {
                let back = a.from_small(&a.express_in_small(&o)).unwrap();
                assert_eq!(back, a.value(&o), "n={n} {o}");
            }
            assert_eq!(
                a.from_small(&a.lambda_in_small()).unwrap(),
                a.lambda(),
                "n={n}"
            );
        }
    }

    #[test]
    fn octagon_long_diagonal() {
        let a = TypeC::new(3).unwrap();
        for k in 0..4 {
            let o = Orbit::new(3, k, 3);
            let want = &(&a.value(&Orbit::new(3, k, 2)) * &a.value(&Orbit::new(3, k + 1, 2)))
                - &LaurentPoly::one(a.table());
            assert_eq!(a.value(&o), want);
        }
    }
}
