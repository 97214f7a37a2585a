use gencluster::sl2::{
    decompose, frobenius_character, kr_character, simple_character, y_table, z_character, KRString,
    LabelJson, SimpleLabelA1,
};
use gencluster::LaurentPoly;
use serde::Serialize;

use crate::args::{Sl2Action, Sl2Args, Sl2CharArgs};
use crate::output::{bad_input, read_json, CmdResult, Failure, Output};

#[derive(Debug, Serialize)]
struct CharReport {
    l: usize,
    module: String,
    character: LaurentPoly,
}

#[derive(Debug, Serialize)]
struct Summand {
    label: LabelJson,
    name: String,
    multiplicity: String,
}

#[derive(Debug, Serialize)]
struct DecomposeReport {
    l: usize,
    factors: Vec<String>,
    summands: Vec<Summand>,
}

fn label_from_json(l: usize, json: &LabelJson) -> Result<SimpleLabelA1, Failure> {
    if json.l != l {
        return Err(Failure::usage(format!(
            "label has l = {} but --l is {l}",
            json.l
        )));
    }
    let lab = bad_input(SimpleLabelA1::from_json(json), "invalid label")?;
    bad_input(lab.validate(l), "invalid label")?;
    Ok(lab)
}

fn parse_string(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("--string expects `d,k`, got `{text}`"));
    let (d, k) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        d.trim().parse().map_err(|_| bad())?,
        k.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn run(out: &Output, a: Sl2Args) -> CmdResult {
    let l = a.l;
    if l < 2 {
        return Err(Failure::usage("sl2 needs --l at least 2"));
    }
    let table = bad_input(y_table(l), "--l")?;
    match a.action {
        Sl2Action::Char(c) => {
            let (module, character) = character(&table, l, c)?;
            out.line(format!("{module}: {character}"));
            if let Some(path) = &a.json {
                out.write_json(
                    path,
                    &CharReport {
                        l,
                        module,
                        character,
                    },
                )?;
            }
        }
        Sl2Action::Decompose { labels } => {
            let jsons: Vec<LabelJson> = read_json(&labels)?;
            let labs = jsons
                .iter()
                .map(|j| label_from_json(l, j))
                .collect::<Result<Vec<_>, _>>()?;
            let parts = decompose(l, &labs)?;
            let factors: Vec<String> = labs.iter().map(ToString::to_string).collect();
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
                out.line(format!("  {mult} L({lab})"));
                summands.push(Summand {
                    label: lab.to_json(l),
                    name: lab.to_string(),
                    multiplicity: mult.to_string(),
                });
            }
            if let Some(path) = &a.json {
                out.write_json(
                    path,
                    &DecomposeReport {
                        l,
                        factors,
                        summands,
                    },
                )?;
            }
        }
    }
    Ok(())
}

fn character(
    table: &std::sync::Arc<gencluster::VarTable>,
    l: usize,
    c: Sl2CharArgs,
) -> Result<(String, LaurentPoly), Failure> {
    if let Some(text) = &c.string {
        let (d, k) = parse_string(text)?;
        let s = KRString::new(l, d, k);
        let chi = bad_input(kr_character(table, l, &s), "--string")?;
        return Ok((format!("W(d={}, k={})", s.d, s.k), chi));
    }
    if c.z {
        return Ok(("Z".into(), z_character(table, l)));
    }
    if let Some(a) = c.frobenius {
        return Ok((
            format!("Fr(L({a}))"),
            frobenius_character(table, l, a as usize),
        ));
    }
    let path = c.label.expect("clap enforces one character source");
    let lab = label_from_json(l, &read_json(&path)?)?;
    let chi = simple_character(table, l, &lab)?;
    Ok((format!("L({lab})"), chi))
}
