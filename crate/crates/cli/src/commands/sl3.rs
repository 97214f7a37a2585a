use gencluster::gca::{random_laurent_trials, ExchangeMatrix, GenSeed};
use gencluster::sl3::{
    conjecture_seed, conjecture_seed_with, decompose_l2, fundamental_characters_l2,
    g2_initial_seed, LabelL2Json, SimpleLabelA2L2,
};
use serde::{Deserialize, Serialize};

use crate::args::{G2Action, Sl3Args};
use crate::commands::seed::enumerate_seed;
use crate::output::{bad_input, read_json, CmdResult, Failure, Output};

#[derive(Debug, Deserialize)]
struct MatrixJson {
    #[serde(rename = "B")]
    b: Vec<Vec<i64>>,
    d: Vec<i64>,
}

#[derive(Debug, Serialize)]
struct CharRow {
    name: &'static str,
    character: gencluster::LaurentPoly,
}

#[derive(Debug, Serialize)]
struct Summand {
    label: LabelL2Json,
    name: String,
    multiplicity: String,
}

pub fn run(out: &Output, a: Sl3Args) -> CmdResult {
    let modes = [a.chars, a.decompose.is_some(), a.g2.is_some(), a.conjecture];
    match modes.iter().filter(|&&m| m).count() {
        1 => {}
        0 => {
            return Err(Failure::usage(
                "sl3 needs one of --chars, --decompose, --g2, --conjecture",
            ))
        }
        _ => {
            return Err(Failure::usage(
                "--chars, --decompose, --g2 and --conjecture are mutually exclusive",
            ))
        }
    }
    let json = a.graph.json.clone();
    if a.chars {
        let rows: Vec<CharRow> = fundamental_characters_l2()
            .into_iter()
            .map(|(f, character)| CharRow {
                name: f.name(),
                character,
            })
            .collect();
        for r in &rows {
            out.line(format!("{}: {}", r.name, r.character));
        }
        if let Some(path) = &json {
            out.write_json(path, &rows)?;
        }
    } else if let Some(path) = &a.decompose {
        let jsons: Vec<LabelL2Json> = read_json(path)?;
        let labels = jsons
            .iter()
            .map(|j| bad_input(SimpleLabelA2L2::from_json(j), "invalid label"))
            .collect::<Result<Vec<_>, _>>()?;
        let parts = decompose_l2(&labels)?;
        let factors: Vec<String> = labels.iter().map(ToString::to_string).collect();
        out.line(format!(
            "{} =",
            if factors.is_empty() {
                "1".into()
            } else {
                factors.join(" * ")
            }
        ));
        let mut summands = Vec::new();
        for (lab, mult) in parts.iter().rev() {
            out.line(format!("  {mult} {lab}"));
            summands.push(Summand {
                label: lab.to_json(),
                name: lab.to_string(),
                multiplicity: mult.to_string(),
            });
        }
        if let Some(path) = &json {
            out.write_json(path, &summands)?;
        }
    } else if let Some(G2Action::Enumerate) = a.g2 {
        enumerate_seed(out, &g2_initial_seed()?, &a.graph)?;
    } else {
        conjecture(out, &a)?;
    }
    Ok(())
}

fn conjecture(out: &Output, a: &Sl3Args) -> CmdResult {
    if a.l < 2 {
        return Err(Failure::usage("--l must be at least 2"));
    }
    if a.max_len == 0 {
        return Err(Failure::usage("--max-len must be at least 1"));
    }
    let seed: GenSeed = match &a.matrix {
        Some(path) => {
            let m: MatrixJson = read_json(path)?;
            let matrix = bad_input(ExchangeMatrix::new(m.b, m.d), "invalid matrix")?;
            bad_input(conjecture_seed_with(matrix), "invalid matrix")?
        }
        None => conjecture_seed(a.l)?,
    };
    out.line(format!(
        "rank {} seed, {} sequences of length at most {}, rng seed {:#x}",
        seed.rank(),
        a.laurent_trials,
        a.max_len,
        a.rng_seed
    ));
    let trials = random_laurent_trials(&seed, a.laurent_trials, a.max_len, a.rng_seed);
    out.line(format!(
        "exact: {}/{} (largest support {})",
        trials.exact, trials.trials, trials.max_support
    ));
    for f in &trials.failures {
        let seq: Vec<String> = f.sequence.iter().map(|k| (k + 1).to_string()).collect();
        out.line(format!(
            "  not Laurent along {}: {}",
            seq.join(","),
            f.failure.as_deref().unwrap_or("")
        ));
    }
    if let Some(path) = &a.graph.json {
        out.write_json(path, &trials)?;
    }
    if trials.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::failed(format!(
            "{} of {} sequences left the Laurent ring",
            trials.failures.len(),
            trials.trials
        )))
    }
}
