//! Parsing of `kind:key=value,...` specs for graphs and codes.

use listdec_core::codes::{self, LocalCode, RSCode};
use listdec_core::graphs::{self, BipartiteExpander};
use listdec_core::{Error, Result};
use std::collections::HashMap;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Splits "kind:rest" and parses "k=v,k=v" payloads into a map.
fn split_spec(spec: &str) -> Result<(&str, HashMap<&str, &str>)> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut map = HashMap::new();
    if kind == "file" {
        map.insert("path", rest);
        return Ok((kind, map));
    }
    for part in rest.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value in spec, got '{part}'")))?;
        map.insert(k, v);
    }
    Ok((kind, map))
}

fn get<T: std::str::FromStr>(map: &HashMap<&str, &str>, key: &str, spec: &str) -> Result<T> {
    let raw = map
        .get(key)
        .ok_or_else(|| usage(format!("spec '{spec}' is missing '{key}'")))?;
    raw.parse()
        .map_err(|_| usage(format!("cannot parse '{key}={raw}' in spec '{spec}'")))
}

fn get_or<T: std::str::FromStr>(
    map: &HashMap<&str, &str>,
    key: &str,
    spec: &str,
    default: T,
) -> Result<T> {
    if map.contains_key(key) {
        get(map, key, spec)
    } else {
        Ok(default)
    }
}

/// `random:n=..,d=..,seed=..` or `file:PATH`.
pub fn build_graph(spec: &str) -> Result<BipartiteExpander> {
    let (kind, map) = split_spec(spec)?;
    match kind {
        "random" => {
            let n = get(&map, "n", spec)?;
            let d = get(&map, "d", spec)?;
            let seed = get_or(&map, "seed", spec, 0)?;
            graphs::random_regular_bipartite(n, d, seed)
        }
        "file" => {
            let path = map["path"];
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read graph file '{path}': {e}")))?;
            BipartiteExpander::from_text(&text)
        }
        other => Err(usage(format!("unknown graph spec kind '{other}'"))),
    }
}

/// `gv:q=..,d=..,delta0=..,ell=..,seed=..[,trials=..]`, `rep:q=..,d=..`, or
/// `file:PATH`.
pub fn build_local_code(spec: &str) -> Result<LocalCode> {
    let (kind, map) = split_spec(spec)?;
    match kind {
        "gv" => {
            let q = get(&map, "q", spec)?;
            let d = get(&map, "d", spec)?;
            let delta0 = get(&map, "delta0", spec)?;
            let ell = get(&map, "ell", spec)?;
            let seed = get_or(&map, "seed", spec, 0)?;
            let trials = get_or(&map, "trials", spec, 2000)?;
            codes::gv_search(q, d, delta0, ell, trials, seed)
        }
        "rep" => {
            let q: u32 = get(&map, "q", spec)?;
            let d: usize = get(&map, "d", spec)?;
            codes::make_linear_code(q, &[vec![1; d]])
        }
        "file" => {
            let path = map["path"];
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read code file '{path}': {e}")))?;
            LocalCode::from_text(&text)
        }
        other => Err(usage(format!("unknown code spec kind '{other}'"))),
    }
}

/// `rs:q=..,n=..,k=..` or `file:PATH`.
pub fn build_outer_code(spec: &str) -> Result<RSCode> {
    let (kind, map) = split_spec(spec)?;
    match kind {
        "rs" => {
            let q = get(&map, "q", spec)?;
            let n = get(&map, "n", spec)?;
            let k = get(&map, "k", spec)?;
            codes::make_rs_code(q, n, k)
        }
        "file" => {
            let path = map["path"];
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read code file '{path}': {e}")))?;
            RSCode::from_text(&text)
        }
        other => Err(usage(format!("unknown outer code spec kind '{other}'"))),
    }
}

/// Comma-separated integer list, e.g. "0,1,2".
pub fn parse_usize_list(raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| usage(format!("cannot parse '{p}' as an integer")))
        })
        .collect()
}
