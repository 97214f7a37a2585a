use std::collections::BTreeMap;

use gencluster::typec::{
    basis_b, lambda_cluster_monomials, phi, psi, small_monomials, ClusterMonomial, Orbit,
    SmallMonomial, TypeC,
};
use gencluster::LaurentPoly;
use serde::Serialize;

use crate::args::{BasisKind, TypecArgs};
use crate::output::{bad_input, CmdResult, Failure, Output};

#[derive(Debug, Default, Serialize)]
struct TypecReport {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    clusters: Option<Vec<Vec<Orbit>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variables: Option<BTreeMap<String, LaurentPoly>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    express_small: Vec<Expressed>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    phi: Vec<PhiRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    psi: Vec<PhiRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<BasisReport>,
}

#[derive(Debug, Serialize)]
struct Expressed {
    orbit: Orbit,
    small: LaurentPoly,
}

#[derive(Debug, Serialize)]
struct PhiRow {
    monomial: ClusterMonomial,
    small: SmallMonomial,
}

#[derive(Debug, Serialize)]
struct BasisReport {
    kind: String,
    bound: usize,
    elements: Vec<String>,
}

fn small_text(s: &SmallMonomial) -> String {
    let parts: Vec<String> = s
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(j, &a)| {
            if a == 1 {
                format!("s{j}")
            } else {
                format!("s{j}^{a}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn parse_exponents(text: &str) -> Result<SmallMonomial, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Failure::usage(format!("bad exponent `{t}` in `{text}`")))
        })
        .collect()
}

pub fn run(out: &Output, a: TypecArgs) -> CmdResult {
    let requested = a.enumerate
        || !a.express_small.is_empty()
        || !a.phi.is_empty()
        || !a.psi.is_empty()
        || a.basis.is_some();
    if !requested {
        return Err(Failure::usage(
            "typec needs one of --enumerate, --express-small, --phi, --psi, --basis",
        ));
    }
    if a.n == 0 {
        return Err(Failure::usage("typec needs --n at least 1"));
    }
    let n = a.n;
    let alg = TypeC::new(n)?;
    let mut report = TypecReport {
        n,
        ..Default::default()
    };

    if a.enumerate {
        let clusters: Vec<Vec<Orbit>> = alg.clusters().iter().map(|t| t.key()).collect();
        let variables: BTreeMap<String, LaurentPoly> = alg
            .orbits()
            .iter()
            .map(|o| (o.label(), alg.value(o)))
            .collect();
        out.line(format!(
            "C_{n}: {} clusters, {} cluster variables",
            clusters.len(),
            variables.len()
        ));
        for c in &clusters {
            let names: Vec<String> = c.iter().map(Orbit::label).collect();
            out.line(format!("  {{{}}}", names.join(", ")));
        }
        for (name, p) in &variables {
            out.line(format!("  {name} = {p}"));
        }
        report.clusters = Some(clusters);
        report.variables = Some(variables);
    }

    for text in &a.express_small {
        let orbit = bad_input(Orbit::parse(n, text), "--express-small")?;
        let small = alg.express_in_small(&orbit);
        out.line(format!("{orbit} = {small}"));
        report.express_small.push(Expressed { orbit, small });
    }

    for text in &a.phi {
        let monomial = bad_input(ClusterMonomial::parse(n, text), "--phi")?;
        let small = bad_input(phi(n, &monomial), "--phi")?;
        out.line(format!("Phi({monomial}) = {}", small_text(&small)));
        report.phi.push(PhiRow { monomial, small });
    }

    for text in &a.psi {
        let small = parse_exponents(text)?;
        let monomial = bad_input(psi(n, &small), "--psi")?;
        out.line(format!("Psi({}) = {monomial}", small_text(&small)));
        report.psi.push(PhiRow { monomial, small });
    }

    if let Some(kind) = a.basis {
        let (name, elements): (&str, Vec<String>) = match kind {
            BasisKind::S => (
                "S",
                small_monomials(n, a.bound).iter().map(small_text).collect(),
            ),
            BasisKind::M => (
                "M",
                lambda_cluster_monomials(n, a.bound)
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            ),
            BasisKind::B => (
                "B",
                basis_b(&alg, a.bound)
                    .iter()
                    .map(|e| match (e.chebyshev, e.monomial.orbits.is_empty()) {
                        (0, _) => e.monomial.to_string(),
                        (k, true) => format!("S_{k}(lambda)"),
                        (k, false) => format!("S_{k}(lambda)*{}", e.monomial),
                    })
                    .collect(),
            ),
        };
        out.line(format!(
            "basis {name} up to degree {}: {} elements",
            a.bound,
            elements.len()
        ));
        for e in &elements {
            out.line(format!("  {e}"));
        }
        report.basis = Some(BasisReport {
            kind: name.into(),
            bound: a.bound,
            elements,
        });
    }

    if let Some(path) = &a.json {
        out.write_json(path, &report)?;
    }
    Ok(())
}
