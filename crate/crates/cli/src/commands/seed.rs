use gencluster::gca::{self, ExchangeGraph, GenSeed, Limits, SeedJson};

use crate::args::{EnumerateArgs, GraphOutput, MutateArgs};
use crate::output::{bad_input, read_json, CmdResult, Failure, Output};

fn load_seed(path: &std::path::Path) -> Result<GenSeed, Failure> {
    let json: SeedJson = read_json(path)?;
    bad_input(
        GenSeed::from_json(&json),
        &format!("invalid seed in {}", path.display()),
    )
}

pub fn mutate(out: &Output, a: MutateArgs) -> CmdResult {
    let seed = load_seed(&a.seed)?;
    let rank = seed.rank();
    let seq = a
        .sequence
        .iter()
        .map(|&k| {
            if (1..=rank).contains(&k) {
                Ok(k - 1)
            } else {
                Err(Failure::usage(format!(
                    "direction {k} is outside 1..={rank}"
                )))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let result = seed.mutate_sequence(&seq)?;
    for (name, x) in result.x_vars().iter().zip(&result.x) {
        out.line(format!("{name}' = {x}"));
    }
    out.line(format!("B = {:?}", result.matrix.b));
    if let Some(path) = &a.json {
        out.write_json(path, &result.to_json())?;
    }
    Ok(())
}

pub fn enumerate(out: &Output, a: EnumerateArgs) -> CmdResult {
    let seed = load_seed(&a.seed)?;
    enumerate_seed(out, &seed, &a.graph)
}

/// Shared by `enumerate` and `sl3 --g2 enumerate`.
pub fn enumerate_seed(out: &Output, seed: &GenSeed, g: &GraphOutput) -> CmdResult {
    let graph = gca::enumerate(
        seed,
        Limits {
            max_nodes: g.max_nodes,
            max_depth: g.max_depth,
        },
    )?;
    report_graph(out, &graph);
    if let Some(path) = &g.dot {
        out.write_text(path, &graph.to_dot())?;
    }
    if let Some(path) = &g.json {
        out.write_json(path, &graph.to_json())?;
    }
    if !graph.complete {
        return Err(Failure::failed(format!(
            "enumeration stopped at the limits after {} seeds",
            graph.node_count()
        )));
    }
    Ok(())
}

fn report_graph(out: &Output, graph: &ExchangeGraph) {
    let names = graph.variable_names();
    out.line(format!("seeds: {}", graph.node_count()));
    out.line(format!("edges: {}", graph.edges().len()));
    out.line(format!("cluster variables: {}", names.len()));
    out.line(format!("complete: {}", graph.complete));
    for (name, p) in &names {
        out.line(format!("  {name} = {p}"));
    }
}
