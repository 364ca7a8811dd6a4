//! `gen`: write graph/code files and print measured parameters.

use crate::{specs, Cli};
use clap::Args;
use listdec_core::tanner::build_tanner;
use listdec_core::{Error, Result};

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Graph spec: random:n=..,d=..,seed=.. or file:PATH.
    #[arg(long)]
    pub graph: Option<String>,
    /// Local code spec: gv:..., rep:q=..,d=.., or file:PATH.
    #[arg(long)]
    pub code: Option<String>,
    /// Output path for the graph file.
    #[arg(long = "out-graph")]
    pub out_graph: Option<String>,
    /// Output path for the code file.
    #[arg(long = "out-code")]
    pub out_code: Option<String>,
}

fn write(path: &str, body: &str) -> Result<()> {
    std::fs::write(path, body)
        .map_err(|e| Error::InvalidParameter(format!("cannot write '{path}': {e}")))
}

pub fn run(_cli: &Cli, args: &GenArgs) -> Result<i32> {
    if args.graph.is_none() && args.code.is_none() {
        return Err(Error::InvalidParameter(
            "gen requires --graph and/or --code".into(),
        ));
    }
    let graph = args.graph.as_deref().map(specs::build_graph).transpose()?;
    let code = args
        .code
        .as_deref()
        .map(specs::build_local_code)
        .transpose()?;
    if let Some(g) = &graph {
        println!("n={} d={}", g.n(), g.d());
        println!("lambda={:.6}", g.lambda());
        if let Some(path) = &args.out_graph {
            write(path, &g.to_text())?;
        }
    }
    if let Some(c) = &code {
        println!(
            "q={} block_len={} dim={} min_dist={}",
            c.q(),
            c.block_len(),
            c.dim(),
            c.min_dist()
        );
        println!("delta0={:.6}", c.delta());
        if let Some(path) = &args.out_code {
            write(path, &c.to_text())?;
        }
    }
    if let (Some(g), Some(c)) = (graph, code) {
        let t = build_tanner(g, c)?;
        println!("design_distance={:.6}", t.design_distance());
    }
    Ok(0)
}
