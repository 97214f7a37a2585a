//! Acceptance suite. Runs every criterion at its stated size, prints one
//! line per criterion and exits non-zero if any criterion fails or exceeds
//! its time budget.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gencluster::gca::{enumerate, random_laurent_trials, ExchangeGraph, GenSeed, Limits};
use gencluster::sl2::{self, SimpleLabelA1};
use gencluster::sl3::{self, SimpleLabelA2L2};
use gencluster::typec::{
    chebyshev_eval, flip_closure, initial_seed, lambda_cluster_monomials, phi, psi,
    small_monomials, u_matrix, TypeC,
};
use gencluster::verify::{verify_eta, verify_phi, DEFAULT_RNG_SEED};
use gencluster::{LaurentPoly, Mono, VarTable};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn graph(seed: &GenSeed) -> Result<ExchangeGraph, String> {
    enumerate(seed, Limits::default()).map_err(|e| e.to_string())
}

fn c3_counts() -> Outcome {
    let g = graph(&initial_seed(3).map_err(|e| e.to_string())?)?;
    let vars = g.variables().len();
    ensure(g.complete, "enumeration truncated")?;
    ensure(vars == 12, format!("{vars} cluster variables"))?;
    ensure(g.node_count() == 20, format!("{} clusters", g.node_count()))?;
    ensure(g.is_regular(3), "graph is not 3-regular")?;
    Ok("12 variables, 20 clusters, 3-regular".into())
}

fn g2_cycle() -> Outcome {
    let g = graph(&sl3::g2_initial_seed().map_err(|e| e.to_string())?)?;
    ensure(
        g.complete && g.node_count() == 8,
        format!("{} clusters", g.node_count()),
    )?;
    ensure(
        g.variables().len() == 8,
        format!("{} variables", g.variables().len()),
    )?;
    ensure(g.is_regular(2), "graph is not 2-regular")?;
    let mut seen = BTreeSet::new();
    let mut at = 0;
    for step in 0..8 {
        seen.insert(at);
        at = g.adjacency[at][step % 2].ok_or("missing edge")?;
    }
    ensure(
        at == 0 && seen.len() == 8,
        "alternating walk is not a single 8-cycle",
    )?;
    Ok("8 variables, 8 clusters, one alternating 8-cycle".into())
}

fn two_oracle_counts() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let g = graph(&initial_seed(n).map_err(|e| e.to_string())?)?;
        let flips = flip_closure(n).map_err(|e| e.to_string())?.len();
        ensure(
            g.complete && g.node_count() == flips,
            format!("n={n}: mutation {} vs flips {flips}", g.node_count()),
        )?;
        parts.push(format!("C{n}: {flips}"));
    }
    Ok(parts.join(", "))
}

/// 1000 sequences in total, drawn evenly from the four seeds.
const LAURENT_SEQUENCES: usize = 1000;

fn laurent_trials() -> Outcome {
    let seeds = [
        ("C2", initial_seed(2)),
        ("C3", initial_seed(3)),
        ("G2", sl3::g2_initial_seed()),
        ("conjecture l=3", sl3::conjecture_seed(3)),
    ];
    let per_seed = LAURENT_SEQUENCES / seeds.len();
    let mut parts = Vec::new();
    for (name, seed) in seeds {
        let seed = seed.map_err(|e| e.to_string())?;
        let t = random_laurent_trials(&seed, per_seed, 12, DEFAULT_RNG_SEED);
        ensure(
            t.exact == per_seed,
            format!(
                "{name}: {} of {per_seed} exact, first failure {:?}",
                t.exact,
                t.failures.first()
            ),
        )?;
        parts.push(format!(
            "{name} {per_seed}/{per_seed} (max support {})",
            t.max_support
        ));
    }
    Ok(parts.join("; "))
}

fn coefficient_invariance() -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=4 {
        let seed = initial_seed(n).map_err(|e| e.to_string())?;
        let g = graph(&seed)?;
        ensure(g.complete, format!("C{n}: enumeration truncated"))?;
        for node in &g.nodes {
            ensure(
                node.coeffs == seed.coeffs,
                format!("C{n}: coefficients changed"),
            )?;
        }
        parts.push(format!("C{n} ({} seeds)", g.node_count()));
    }
    let seed = sl3::g2_initial_seed().map_err(|e| e.to_string())?;
    let g = graph(&seed)?;
    ensure(g.complete, "G2: enumeration truncated")?;
    let reversed: Vec<Vec<_>> = seed
        .coeffs
        .0
        .iter()
        .map(|p| p.iter().rev().cloned().collect())
        .collect();
    let mut changed = 0;
    for node in &g.nodes {
        if node.coeffs == seed.coeffs {
            continue;
        }
        changed += 1;
        let up_to_reversal = node
            .coeffs
            .0
            .iter()
            .zip(seed.coeffs.0.iter().zip(&reversed))
            .all(|(p, (p0, r0))| p == p0 || p == r0);
        ensure(
            up_to_reversal,
            "G2: a coefficient tuple is not the initial one up to reversal",
        )?;
    }
    ensure(
        changed == 0,
        format!(
            "{}; G2: coefficient tuples differ from the initial ones at {changed} of {} seeds \
             (the tuple of the cubic polynomial is reversed by every mutation in its own \
             direction, and (1, lambda1, lambda2, 1) is not palindromic); each tuple equals \
             the initial one up to reversal",
            parts.join(", "),
            g.node_count()
        ),
    )?;
    parts.push(format!("G2 ({} seeds)", g.node_count()));
    Ok(parts.join(", "))
}

fn character_identities() -> Outcome {
    let mut count = 0;
    for l in 2..=6 {
        for d in 0..l {
            for k in 0..=l - 2 {
                ensure(
                    sl2::t_system_holds(l, d, k).map_err(|e| e.to_string())?,
                    format!("T-system l={l} d={d} k={k}"),
                )?;
                count += 1;
            }
            ensure(
                sl2::last_t_system_holds(l, d).map_err(|e| e.to_string())?,
                format!("deformed T-system l={l} d={d}"),
            )?;
            count += 1;
        }
    }
    for id in sl3::product_identities_l2() {
        ensure(id.holds(), format!("sl3 identity {}", id.name))?;
        count += 1;
    }
    for k in 0..=4 {
        for l in 0..=4 - k {
            ensure(
                sl3::single_dominant_holds(k, l),
                format!("single dominant k={k} l={l}"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} identities"))
}

fn phi_levels() -> Outcome {
    let mut parts = Vec::new();
    for l in 2..=5 {
        let r = verify_phi(l, 6, DEFAULT_RNG_SEED).map_err(|e| e.to_string())?;
        if let Some(f) = r.failures().next() {
            return Err(format!("l={l}: {} {} {:?}", f.category, f.name, f.detail));
        }
        parts.push(format!("l={l}: {} checks", r.checks.len()));
    }
    Ok(parts.join(", "))
}

fn eta_check() -> Outcome {
    let r = verify_eta(6, DEFAULT_RNG_SEED).map_err(|e| e.to_string())?;
    if let Some(f) = r.failures().next() {
        return Err(format!("{} {} {:?}", f.category, f.name, f.detail));
    }
    Ok(format!("{} checks", r.checks.len()))
}

fn basis_machinery() -> Outcome {
    for n in 1..=4 {
        let ms = lambda_cluster_monomials(n, 6);
        let ss = small_monomials(n, 6);
        ensure(
            ms.len() == ss.len(),
            format!("n={n}: {} vs {} elements", ms.len(), ss.len()),
        )?;
        for m in &ms {
            let s = phi(n, m).map_err(|e| e.to_string())?;
            ensure(
                psi(n, &s).map_err(|e| e.to_string())? == *m,
                format!("n={n}: psi(phi({m})) differs"),
            )?;
        }
        for s in &ss {
            let m = psi(n, s).map_err(|e| e.to_string())?;
            ensure(
                phi(n, &m).map_err(|e| e.to_string())? == *s,
                format!("n={n}: phi(psi({s:?})) differs"),
            )?;
        }
    }
    for n in 2..=3 {
        let alg = TypeC::new(n).map_err(|e| e.to_string())?;
        for row in u_matrix(&alg, 6) {
            ensure(
                row.unitriangular,
                format!("n={n}: row {} is not unitriangular", row.monomial),
            )?;
        }
    }
    let t = VarTable::new(["u"]).map_err(|e| e.to_string())?;
    let u = LaurentPoly::var(&t, "u").map_err(|e| e.to_string())?;
    for k in 1..=8 {
        let s = |j| chebyshev_eval(j, &u);
        let lhs = &s(k) * &s(k);
        let rhs = &(&s(k - 1) * &s(k + 1)) + &LaurentPoly::one(&t);
        ensure(lhs == rhs, format!("Chebyshev relation at k={k}"))?;
    }
    Ok("Phi/Psi inverse for n<=4, U unitriangular for n=2,3, Chebyshev k<=8".into())
}

fn random_sl2_label<R: Rng>(rng: &mut R, l: usize) -> SimpleLabelA1 {
    let e: Vec<i32> = (0..l).map(|_| rng.gen_range(0..=2)).collect();
    sl2::factor_dominant(l, &Mono::from_dense(&e)).unwrap()
}

fn random_sl3_label<R: Rng>(rng: &mut R) -> SimpleLabelA2L2 {
    let e: Vec<i32> = (0..4).map(|_| rng.gen_range(0..=2)).collect();
    SimpleLabelA2L2::from_monomial(&Mono::from_dense(&e)).unwrap()
}

fn conservativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_RNG_SEED);
    let positive = |c: &BigInt| *c > BigInt::from(0);
    for trial in 0..1000 {
        let l = 2 + trial % 3;
        let count = rng.gen_range(2..=3);
        let labels: Vec<_> = (0..count).map(|_| random_sl2_label(&mut rng, l)).collect();
        let t = sl2::y_table(l).map_err(|e| e.to_string())?;
        let mut chi = LaurentPoly::one(&t);
        for lab in &labels {
            chi = &chi * &sl2::simple_character(&t, l, lab).map_err(|e| e.to_string())?;
        }
        let parts = sl2::decompose(l, &labels).map_err(|e| e.to_string())?;
        let mut sum = LaurentPoly::zero(&t);
        for (lab, c) in &parts {
            ensure(positive(c), format!("sl2 trial {trial}: multiplicity {c}"))?;
            sum = &sum
                + &sl2::simple_character(&t, l, lab)
                    .map_err(|e| e.to_string())?
                    .scale(c);
        }
        ensure(
            sum == chi,
            format!("sl2 trial {trial}: sum differs from the product"),
        )?;
    }
    for trial in 0..1000 {
        let count = rng.gen_range(2..=3);
        let labels: Vec<_> = (0..count).map(|_| random_sl3_label(&mut rng)).collect();
        let mut chi = LaurentPoly::one(sl3::eps_table());
        for lab in &labels {
            chi = &chi * &sl3::simple_character_l2(lab);
        }
        let parts = sl3::decompose_l2(&labels).map_err(|e| e.to_string())?;
        let mut sum = LaurentPoly::zero(sl3::eps_table());
        for (lab, c) in &parts {
            ensure(positive(c), format!("sl3 trial {trial}: multiplicity {c}"))?;
            sum = &sum + &sl3::simple_character_l2(lab).scale(c);
        }
        ensure(
            sum == chi,
            format!("sl3 trial {trial}: sum differs from the product"),
        )?;
    }
    Ok("1000 sl2 products (l=2..4), 1000 sl3 products (l=2)".into())
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C3 enumeration counts", Duration::from_secs(1), c3_counts),
        (
            "G2 enumeration and 8-cycle",
            Duration::from_secs(1),
            g2_cycle,
        ),
        (
            "C2..C4 mutation vs flip counts",
            Duration::from_secs(30),
            two_oracle_counts,
        ),
        (
            "Laurent phenomenon trials",
            Duration::from_secs(120),
            laurent_trials,
        ),
        (
            "exchange-polynomial invariance",
            Duration::from_secs(60),
            coefficient_invariance,
        ),
        (
            "character identities",
            Duration::from_secs(30),
            character_identities,
        ),
        (
            "phi verification l=2..5",
            Duration::from_secs(300),
            phi_levels,
        ),
        ("eta verification", Duration::from_secs(120), eta_check),
        ("basis machinery", Duration::from_secs(60), basis_machinery),
        (
            "decomposition conservativity",
            Duration::from_secs(120),
            conservativity,
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget:?} budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} [{status}] {name} ({took:.2?}, budget {budget:?}): {detail}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
