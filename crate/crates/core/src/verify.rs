//! Checks that the cluster algebras match the Grothendieck rings: the type
//! `C_{l-1}` algebra against `sl_2` ε-characters (the map `φ`), and the
//! `G_2` algebra against `sl_3` ε-characters at `l = 2` (the map `η`).
//!
//! A map is fixed on an initial cluster and extended by substitution; every
//! other statement is then checked on explicit Laurent polynomials up to a
//! degree bound.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gca::{enumerate, ExchangeGraph, GenSeed, Limits};
use crate::laurent::{LaurentPoly, Mono, VarTable};
use crate::sl2::{self, KRString, SimpleLabelA1};
use crate::sl3::{self, DecGCase, FundamentalL2, SimpleLabelA2L2};
use crate::typec::{basis_b, relation_instances, small_monomials, CSTriangulation, Orbit, TypeC};

/// Fixed default for randomized checks, recorded in every report.
pub const DEFAULT_RNG_SEED: u64 = 0x6765_6e63_6c75_7374;

/// Number of random product pairs used for the homomorphism check.
pub const DEFAULT_PRODUCT_TRIALS: usize = 24;

/// Name, verdict, detail, label and image of one basis check.
type Checked<L> = (String, bool, Option<String>, L, Option<LaurentPoly>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub category: String,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CategorySummary {
    pub total: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub level: usize,
    pub degree_bound: usize,
    pub rng_seed: u64,
    pub passed: bool,
    pub summary: BTreeMap<String, CategorySummary>,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    fn new(target: &str, level: usize, degree_bound: usize, rng_seed: u64) -> Self {
        Self {
            target: target.into(),
            level,
            degree_bound,
            rng_seed,
            passed: true,
            summary: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn push(
        &mut self,
        category: &str,
        name: impl Into<String>,
        passed: bool,
        detail: Option<String>,
    ) {
        let s = self.summary.entry(category.into()).or_default();
        s.total += 1;
        if passed {
            s.passed += 1;
        } else {
            self.passed = false;
        }
        self.checks.push(CheckRecord {
            category: category.into(),
            name: name.into(),
            passed,
            detail,
        });
    }

    fn extend(&mut self, category: &str, records: Vec<(String, bool, Option<String>)>) {
        for (name, ok, detail) in records {
            self.push(category, name, ok, detail);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> (bool, Option<String>) {
    if ok {
        (true, None)
    } else {
        (false, Some(detail()))
    }
}

/// All dominant monomials in `vars` variables of total degree at most
/// `bound`.
fn dominant_monomials(vars: usize, bound: usize) -> Vec<Mono> {
    fn rec(vars: usize, budget: usize, cur: &mut Vec<i32>, out: &mut Vec<Mono>) {
        if cur.len() == vars {
            out.push(Mono::from_dense(cur));
            return;
        }
        for a in 0..=budget {
            cur.push(a as i32);
            rec(vars, budget - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, bound, &mut Vec::new(), &mut out);
    out
}

/// The map `φ` from the type `C_{l-1}` algebra to `sl_2` ε-characters.
pub struct PhiMap {
    pub l: usize,
    pub algebra: TypeC,
    pub y: Arc<VarTable>,
    bindings: HashMap<String, LaurentPoly>,
}

impl PhiMap {
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidArgument(format!(
                "level l = {l} must be at least 2"
            )));
        }
        let algebra = TypeC::new(l - 1)?;
        let y = sl2::y_table(l)?;
        let initial = CSTriangulation::initial(l - 1);
        let mut bindings = HashMap::new();
        for (o, name) in initial.orbits.iter().zip(algebra.seed().x_vars()) {
            bindings.insert(
                name.clone(),
                sl2::kr_character(&y, l, &KRString::from_orbit(l, o))?,
            );
        }
        bindings.insert("lambda".into(), sl2::z_character(&y, l));
        Ok(Self {
            l,
            algebra,
            y,
            bindings,
        })
    }

    /// Image of a Laurent polynomial in the initial cluster.
    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        p.substitute_into(&self.bindings, &self.y)
    }

    /// The class an orbit is expected to map to.
    pub fn orbit_class(&self, o: &Orbit) -> Result<LaurentPoly> {
        sl2::kr_character(&self.y, self.l, &KRString::from_orbit(self.l, o))
    }

    pub fn label_of(&self, chebyshev: usize, orbits: &BTreeMap<Orbit, u32>) -> SimpleLabelA1 {
        let mut lab = SimpleLabelA1::frobenius(chebyshev as u32);
        for (o, &m) in orbits {
            if !o.is_side() {
                *lab.strings
                    .entry(KRString::from_orbit(self.l, o))
                    .or_insert(0) += m;
            }
        }
        lab
    }
}

/// Checks the `sl_2` correspondence at level `l` up to `degree_bound`.
pub fn verify_phi(l: usize, degree_bound: usize, rng_seed: u64) -> Result<VerifyReport> {
    let phi = PhiMap::new(l)?;
    let n = l - 1;
    let alg = &phi.algebra;
    let mut report = VerifyReport::new("phi", l, degree_bound, rng_seed);

    // Cluster variables go to KR classes.
    let orbits = alg.orbits();
    let records: Vec<_> = orbits
        .par_iter()
        .map(|o| {
            let s = KRString::from_orbit(l, o);
            let res = phi
                .apply(&alg.value(o))
                .and_then(|img| Ok((img, phi.orbit_class(o)?)));
            let (ok, detail) = match res {
                Ok((img, want)) => verdict(img == want, || format!("image {img}, expected {want}")),
                Err(e) => (false, Some(e.to_string())),
            };
            (format!("{o} -> W(k={}, d={})", s.k, s.d), ok, detail)
        })
        .collect();
    report.extend("cluster-variables", records);
    let lam = phi.apply(&alg.lambda())?;
    let z = sl2::z_character(&phi.y, l);
    report.push("cluster-variables", "lambda -> z", lam == z, None);

    // Clusters go to tensor products that stay simple.
    let records: Vec<_> = alg
        .clusters()
        .par_iter()
        .map(|t| {
            let lab = phi.label_of(0, &t.orbits.iter().map(|o| (*o, 1)).collect());
            let res = (|| {
                let mut prod = LaurentPoly::one(&phi.y);
                for o in &t.orbits {
                    prod = &prod * &phi.orbit_class(o)?;
                }
                let d = sl2::decompose_character(&phi.y, l, &prod)?;
                Ok::<_, Error>((d, prod, sl2::simple_character(&phi.y, l, &lab)?))
            })();
            let name = t
                .key()
                .iter()
                .map(|o| o.label())
                .collect::<Vec<_>>()
                .join(" ");
            let (ok, detail) = match res {
                Ok((d, prod, simple)) => verdict(
                    lab.validate(l).is_ok() && d.len() == 1 && prod == simple,
                    || format!("label {lab} does not give a simple product"),
                ),
                Err(e) => (false, Some(e.to_string())),
            };
            (name, ok, detail)
        })
        .collect();
    report.extend("clusters", records);

    // Exchange relations go to identities between characters.
    let records: Vec<_> = relation_instances(n)
        .par_iter()
        .map(|r| {
            let res = r.evaluate(|o| phi.orbit_class(o), &z);
            let (ok, detail) = match res {
                Ok((a, b)) => verdict(a == b, || format!("{a} != {b}")),
                Err(e) => (false, Some(e.to_string())),
            };
            (format!("{:?}: {}", r.family, r.describe()), ok, detail)
        })
        .collect();
    report.extend("relations", records);
    for d in 0..l {
        for k in 0..=l - 2 {
            let ok = sl2::t_system_holds(l, d, k)?;
            report.push("relations", format!("T-system d={d} k={k}"), ok, None);
        }
        let ok = sl2::last_t_system_holds(l, d)?;
        report.push("relations", format!("deformed T-system d={d}"), ok, None);
    }

    // Small monomials go to standard classes.
    let fundamentals: Vec<LaurentPoly> = (0..l)
        .map(|j| phi.apply(&alg.value(&Orbit::small(n, j))))
        .collect::<Result<_>>()?;
    for (j, f) in fundamentals.iter().enumerate() {
        let want = sl2::kr_character(&phi.y, l, &KRString::new(l, j, 1))?;
        report.push(
            "standard",
            format!("s{j} -> L(Y{})", 2 * j),
            *f == want,
            None,
        );
    }
    let smalls = small_monomials(n, degree_bound);
    let highest: Vec<Option<Mono>> = smalls
        .par_iter()
        .map(|e| {
            let mut p = LaurentPoly::one(&phi.y);
            for (j, &a) in e.iter().enumerate() {
                p = &p * &fundamentals[j].pow(a);
            }
            let m = Mono::from_pairs(e.iter().enumerate().map(|(j, &a)| (j, a as i32)));
            let dom: Vec<_> = p.dominant_terms().collect();
            let top = p.leading_dominant_term();
            match top {
                Some((t, c))
                    if t == m
                        && c == 1.into()
                        && dom.iter().all(|(d, _)| d.degree() <= m.degree()) =>
                {
                    Some(m)
                }
                _ => None,
            }
        })
        .collect();
    let distinct: HashSet<&Mono> = highest.iter().flatten().collect();
    let all_dominant = dominant_monomials(l, degree_bound).len();
    report.push(
        "standard",
        format!(
            "{} small monomials have standard highest monomials",
            smalls.len()
        ),
        highest.iter().all(Option::is_some),
        None,
    );
    report.push(
        "standard",
        format!("bijection with the {all_dominant} dominant monomials"),
        distinct.len() == all_dominant && smalls.len() == all_dominant,
        None,
    );

    // Chebyshev-twisted cluster monomials go to simple classes.
    let basis = basis_b(alg, degree_bound);
    let checked: Vec<Checked<Option<SimpleLabelA1>>> = basis
        .par_iter()
        .map(|b| {
            let lab = phi.label_of(b.chebyshev, &b.monomial.orbits);
            let name = format!("S_{}(lambda)*{} -> {lab}", b.chebyshev, b.monomial);
            let res = phi
                .apply(&b.value)
                .and_then(|img| Ok((img, sl2::simple_character(&phi.y, l, &lab)?)));
            match res {
                Ok((img, want)) => {
                    let ok = lab.validate(l).is_ok() && img == want;
                    let detail = (!ok).then(|| format!("image {img}, expected {want}"));
                    (name, ok, detail, Some(lab), Some(img))
                }
                Err(e) => (name, false, Some(e.to_string()), None, None),
            }
        })
        .collect();
    let labels: BTreeSet<SimpleLabelA1> = checked.iter().filter_map(|c| c.3.clone()).collect();
    let images = checked
        .iter()
        .filter_map(|c| c.4.as_ref())
        .collect::<HashSet<&LaurentPoly>>()
        .len();
    let count = checked.len();
    report.extend(
        "simple",
        checked
            .into_iter()
            .map(|(a, b, c, _, _)| (a, b, c))
            .collect(),
    );
    let targets: BTreeSet<SimpleLabelA1> = dominant_monomials(l, degree_bound)
        .iter()
        .map(|m| sl2::factor_dominant(l, m))
        .collect::<Result<_>>()?;
    report.push(
        "simple",
        format!("{count} basis elements have distinct images"),
        images == count && labels.len() == count,
        None,
    );
    report.push(
        "simple",
        format!(
            "labels are exactly the {} simple classes up to degree {degree_bound}",
            targets.len()
        ),
        labels == targets,
        None,
    );

    // Products of basis elements.
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let pairs: Vec<(usize, usize)> = (0..DEFAULT_PRODUCT_TRIALS)
        .map(|_| {
            let idx: Vec<usize> = (0..basis.len()).collect();
            (
                *idx.choose(&mut rng).unwrap(),
                *idx.choose(&mut rng).unwrap(),
            )
        })
        .collect();
    let records: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p, q) = (&basis[i].value, &basis[j].value);
            let res = phi
                .apply(&(p * q))
                .and_then(|pq| Ok((pq, &phi.apply(p)? * &phi.apply(q)?)));
            let (ok, detail) = match res {
                Ok((a, b)) => verdict(a == b, || "product images differ".into()),
                Err(e) => (false, Some(e.to_string())),
            };
            (format!("phi(b{i} * b{j})"), ok, detail)
        })
        .collect();
    report.extend("homomorphism", records);
    Ok(report)
}

/// Identification of the eight `G_2` cluster variables by mutation paths.
pub struct G2Dictionary {
    pub seed: GenSeed,
    pub graph: ExchangeGraph,
    /// `vars[i]` is `x_{i+1}` as a Laurent polynomial in `x1, x2`.
    pub vars: Vec<LaurentPoly>,
    pub classes: Vec<FundamentalL2>,
    bindings: HashMap<String, LaurentPoly>,
}

impl G2Dictionary {
    pub fn new() -> Result<Self> {
        use FundamentalL2::*;
        let seed = sl3::g2_initial_seed()?;
        let graph = enumerate(&seed, Limits::default())?;
        let mut vars = vec![seed.x[0].clone(), seed.x[1].clone()];
        let mut s = seed.clone();
        for step in 0..6 {
            let k = step % 2;
            s = s.mutate(k)?;
            vars.push(s.x[k].clone());
        }
        let classes = vec![Y10, Y10Y23, Y23, Y12Y23, Y12, Y12Y21, Y21, Y10Y21];
        let mut bindings = HashMap::new();
        bindings.insert("x1".into(), sl3::fundamental_character_l2(Y10));
        bindings.insert("x2".into(), sl3::fundamental_character_l2(Y10Y23));
        bindings.insert("lambda1".into(), sl3::fundamental_character_l2(Bold1));
        bindings.insert("lambda2".into(), sl3::fundamental_character_l2(Bold2));
        Ok(Self {
            seed,
            graph,
            vars,
            classes,
            bindings,
        })
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        p.substitute_into(&self.bindings, sl3::eps_table())
    }

    pub fn index_of(&self, p: &LaurentPoly) -> Option<usize> {
        self.vars.iter().position(|v| v == p)
    }
}

/// Checks the `sl_3`, `l = 2` correspondence up to `degree_bound`.
pub fn verify_eta(degree_bound: usize, rng_seed: u64) -> Result<VerifyReport> {
    let dict = G2Dictionary::new()?;
    let mut report = VerifyReport::new("eta", 2, degree_bound, rng_seed);
    let ch = sl3::fundamental_character_l2;

    report.push(
        "cluster-variables",
        "eight distinct variables along the alternating cycle",
        dict.vars.iter().collect::<HashSet<_>>().len() == 8
            && dict.graph.variables().len() == 8
            && dict.graph.node_count() == 8
            && dict.graph.complete,
        None,
    );
    for (i, (v, f)) in dict.vars.iter().zip(&dict.classes).enumerate() {
        let img = dict.apply(v)?;
        let want = ch(*f);
        let (ok, detail) = verdict(img == want, || format!("image {img}"));
        report.push(
            "cluster-variables",
            format!("x{} -> L({})", i + 1, f.name()),
            ok,
            detail,
        );
    }
    for (name, var, f) in [
        ("lambda1 -> L(Y1)", "lambda1", FundamentalL2::Bold1),
        ("lambda2 -> L(Y2)", "lambda2", FundamentalL2::Bold2),
    ] {
        let v = LaurentPoly::var(dict.seed.table(), var)?;
        report.push("cluster-variables", name, dict.apply(&v)? == ch(f), None);
    }

    // Clusters and the eight patterns.
    let mut cases_hit = BTreeMap::new();
    for node in &dict.graph.nodes {
        let idx: Vec<Option<usize>> = node.x.iter().map(|x| dict.index_of(x)).collect();
        let name = idx
            .iter()
            .map(|i| i.map_or("?".to_string(), |i| format!("x{}", i + 1)))
            .collect::<Vec<_>>()
            .join(",");
        let classes: BTreeSet<FundamentalL2> =
            idx.iter().flatten().map(|&i| dict.classes[i]).collect();
        let case = DecGCase::ALL.iter().find(|c| {
            let (a, b) = c.generators();
            classes == BTreeSet::from([a, b])
        });
        if let Some(c) = case {
            *cases_hit.entry(*c).or_insert(0) += 1;
        }
        report.push(
            "clusters",
            format!("({name}) -> pattern {}", case.map_or("none", |c| c.roman())),
            case.is_some(),
            None,
        );
    }
    report.push(
        "clusters",
        "each of the eight patterns occurs exactly once",
        cases_hit.len() == 8 && cases_hit.values().all(|&v| v == 1),
        None,
    );

    // Exchange relations, with each cluster variable replaced by its class.
    let lam_images = [ch(FundamentalL2::Bold1), ch(FundamentalL2::Bold2)];
    for (i, node) in dict.graph.nodes.iter().enumerate() {
        for k in 0..2 {
            let Some(j) = dict.graph.adjacency[i][k] else {
                continue;
            };
            if j < i {
                continue;
            }
            let class = |x: &LaurentPoly| dict.index_of(x).map(|t| ch(dict.classes[t]));
            let (Some(a), Some(b)) = (class(&node.x[k]), class(&dict.graph.nodes[j].x[k])) else {
                report.push(
                    "relations",
                    format!("node {i} direction {}", k + 1),
                    false,
                    None,
                );
                continue;
            };
            let rhs = exchange_image(node, k, &class, &lam_images)?;
            let (ok, detail) = verdict(&a * &b == rhs, || "relation image fails".into());
            report.push(
                "relations",
                format!("node {i} direction {}", k + 1),
                ok,
                detail,
            );
        }
    }
    for id in sl3::product_identities_l2() {
        let ok = id.holds();
        report.push("relations", id.name, ok, None);
    }

    // Standard classes: monomials in x1, x3, x5, x7.
    let standard_vars = [0usize, 2, 4, 6];
    let gens: Vec<LaurentPoly> = standard_vars
        .iter()
        .map(|&i| dict.apply(&dict.vars[i]))
        .collect::<Result<_>>()?;
    let singles = [
        FundamentalL2::Y10,
        FundamentalL2::Y23,
        FundamentalL2::Y12,
        FundamentalL2::Y21,
    ];
    for (g, f) in gens.iter().zip(singles) {
        report.push(
            "standard",
            format!("{} is an image", f.name()),
            *g == ch(f),
            None,
        );
    }
    let mut tops = HashSet::new();
    let mut all_ok = true;
    let monos = dominant_monomials(4, degree_bound);
    for e in &monos {
        let exps = e.to_dense(4);
        let mut p = LaurentPoly::one(sl3::eps_table());
        let mut m = Mono::one();
        for (t, &a) in exps.iter().enumerate() {
            p = &p * &gens[t].pow(a as u32);
            m = &m * &singles[t].monomial().pow(a);
        }
        match p.leading_dominant_term() {
            Some((top, c)) if top == m && c == 1.into() => {
                tops.insert(top);
            }
            _ => all_ok = false,
        }
    }
    report.push(
        "standard",
        format!(
            "{} monomials in x1, x3, x5, x7 have standard highest monomials",
            monos.len()
        ),
        all_ok,
        None,
    );
    report.push(
        "standard",
        "bijection with dominant monomials",
        tops.len() == monos.len(),
        None,
    );

    // Simple classes: S_{a1,a2}(λ1, λ2) times cluster monomials.
    let elements = g2_basis(&dict, degree_bound)?;
    let checked: Vec<Checked<SimpleLabelA2L2>> = elements
        .par_iter()
        .map(|(name, value, lab)| match dict.apply(value) {
            Ok(img) => {
                let want = sl3::simple_character_l2(lab);
                let ok = img == want;
                let detail = (!ok).then(|| format!("image differs from {lab}"));
                (format!("{name} -> {lab}"), ok, detail, *lab, Some(img))
            }
            Err(e) => (name.clone(), false, Some(e.to_string()), *lab, None),
        })
        .collect();
    let labels: BTreeSet<SimpleLabelA2L2> = checked.iter().map(|c| c.3).collect();
    let images = checked
        .iter()
        .filter_map(|c| c.4.as_ref())
        .collect::<HashSet<&LaurentPoly>>()
        .len();
    let count = checked.len();
    report.extend(
        "simple",
        checked
            .into_iter()
            .map(|(a, b, c, _, _)| (a, b, c))
            .collect(),
    );
    let targets: BTreeSet<SimpleLabelA2L2> = dominant_monomials(4, degree_bound)
        .iter()
        .map(SimpleLabelA2L2::from_monomial)
        .collect::<Result<_>>()?;
    report.push(
        "simple",
        format!("{count} basis elements have distinct images"),
        images == count && labels.len() == count,
        None,
    );
    report.push(
        "simple",
        format!(
            "labels are exactly the {} simple classes up to degree {degree_bound}",
            targets.len()
        ),
        labels == targets,
        None,
    );

    // Products of basis elements.
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let idx: Vec<usize> = (0..elements.len()).collect();
    let pairs: Vec<(usize, usize)> = (0..DEFAULT_PRODUCT_TRIALS)
        .map(|_| {
            (
                *idx.choose(&mut rng).unwrap(),
                *idx.choose(&mut rng).unwrap(),
            )
        })
        .collect();
    let records: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p, q) = (&elements[i].1, &elements[j].1);
            let res = dict
                .apply(&(p * q))
                .and_then(|pq| Ok((pq, &dict.apply(p)? * &dict.apply(q)?)));
            let (ok, detail) = match res {
                Ok((a, b)) => verdict(a == b, || "product images differ".into()),
                Err(e) => (false, Some(e.to_string())),
            };
            (format!("eta(h{i} * h{j})"), ok, detail)
        })
        .collect();
    report.extend("homomorphism", records);
    Ok(report)
}

/// `θ_k[p_k](u^+, u^-)` with cluster variables replaced through `class`
/// and the tropical generators by `lambdas`.
fn exchange_image(
    seed: &GenSeed,
    k: usize,
    class: &dyn Fn(&LaurentPoly) -> Option<LaurentPoly>,
    lambdas: &[LaurentPoly],
) -> Result<LaurentPoly> {
    let table = lambdas[0].table().clone();
    let mut plus = LaurentPoly::one(&table);
    let mut minus = LaurentPoly::one(&table);
    for j in 0..seed.rank() {
        let beta = seed.matrix.beta(j, k);
        if beta == 0 {
            continue;
        }
        let c =
            class(&seed.x[j]).ok_or_else(|| Error::Invariant("unknown cluster variable".into()))?;
        if beta > 0 {
            plus = &plus * &c.pow(beta as u32);
        } else {
            minus = &minus * &c.pow((-beta) as u32);
        }
    }
    let p = &seed.coeffs.0[k];
    let d = p.len() - 1;
    let mut acc = LaurentPoly::zero(&table);
    for (r, t) in p.iter().enumerate() {
        let mut coef = LaurentPoly::one(&table);
        for (g, &e) in t.0.iter().enumerate() {
            if e < 0 {
                return Err(Error::Invariant("negative tropical exponent".into()));
            }
            coef = &coef * &lambdas[g].pow(e as u32);
        }
        acc = &acc + &(&(&coef * &plus.pow(r as u32)) * &minus.pow((d - r) as u32));
    }
    Ok(acc)
}

/// Elements `S_{a1,a2}(λ1, λ2)·x_i^p x_j^q` of highest-monomial degree at
/// most `bound`, with their Laurent expansions and expected labels.
fn g2_basis(
    dict: &G2Dictionary,
    bound: usize,
) -> Result<Vec<(String, LaurentPoly, SimpleLabelA2L2)>> {
    let t = dict.seed.table();
    let deg = |i: usize| dict.classes[i].monomial().degree() as usize;
    let mut monomials: BTreeSet<BTreeMap<usize, u32>> = BTreeSet::new();
    for node in &dict.graph.nodes {
        let idx: Vec<usize> = node
            .x
            .iter()
            .map(|x| {
                dict.index_of(x)
                    .ok_or_else(|| Error::Invariant("unknown cluster variable".into()))
            })
            .collect::<Result<_>>()?;
        let (i, j) = (idx[0], idx[1]);
        for p in 0..=bound / deg(i) {
            for q in 0..=(bound - p * deg(i)) / deg(j) {
                let mut m = BTreeMap::new();
                if p > 0 {
                    m.insert(i, p as u32);
                }
                if q > 0 {
                    m.insert(j, q as u32);
                }
                monomials.insert(m);
            }
        }
    }
    let fundamental = crate::sl3::fundamental_table();
    let lam_bindings: HashMap<String, LaurentPoly> = HashMap::from([
        ("e1".to_string(), LaurentPoly::var(t, "lambda1")?),
        ("e2".to_string(), LaurentPoly::var(t, "lambda2")?),
    ]);
    let mut out = Vec::new();
    for m in &monomials {
        let mdeg: usize = m.iter().map(|(&i, &e)| deg(i) * e as usize).sum();
        let mut value = LaurentPoly::one(t);
        let mut top = Mono::one();
        for (&i, &e) in m {
            value = &value * &dict.vars[i].pow(e);
            top = &top * &dict.classes[i].monomial().pow(e as i32);
        }
        for a1 in 0..=(bound - mdeg) / 2 {
            for a2 in 0..=(bound - mdeg - 2 * a1) / 2 {
                let s = sl3::sl3_polynomial(sl3::Sl3Weight::new(a1 as u32, a2 as u32))?;
                debug_assert!(Arc::ptr_eq(s.table(), fundamental));
                let s = s.substitute_into(&lam_bindings, t)?;
                let frob = Mono::from_pairs([
                    (0, a1 as i32),
                    (1, a1 as i32),
                    (2, a2 as i32),
                    (3, a2 as i32),
                ]);
                let lab = SimpleLabelA2L2::from_monomial(&(&top * &frob))?;
                let name = {
                    let xs: Vec<String> = m
                        .iter()
                        .map(|(&i, &e)| {
                            if e == 1 {
                                format!("x{}", i + 1)
                            } else {
                                format!("x{}^{e}", i + 1)
                            }
                        })
                        .collect();
                    let xs = if xs.is_empty() {
                        "1".to_string()
                    } else {
                        xs.join("*")
                    };
                    format!("S_({a1},{a2})*{xs}")
                };
                out.push((name, &s * &value, lab));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small_levels() {
        for l in 2..=3 {
            let r = verify_phi(l, 4, DEFAULT_RNG_SEED).unwrap();
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "l={l}: {bad:?}");
        }
    }

    #[test]
    fn phi_rank_one_relation() {
        let phi = PhiMap::new(2).unwrap();
        let rels = relation_instances(1);
        assert!(!rels.is_empty());
        let y = &phi.y;
        let lhs = &sl2::kr_character(y, 2, &KRString::new(2, 0, 1)).unwrap()
            * &sl2::kr_character(y, 2, &KRString::new(2, 1, 1)).unwrap();
        let rhs = &LaurentPoly::constant(y, 2) + &sl2::z_character(y, 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_small_bound() {
        let r = verify_eta(4, DEFAULT_RNG_SEED).unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(r.summary["clusters"].total, 9);
    }

    #[test]
    fn report_serializes_with_seed() {
        let r = verify_eta(2, 7).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["rng_seed"], 7);
        assert!(v["checks"].as_array().unwrap().len() > 10);
    }
}
