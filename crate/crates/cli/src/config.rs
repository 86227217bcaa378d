//! Turning flag values into library inputs.
//!
//! `--graph` accepts a family name (`ray`), inline JSON (`{"family":"ray"}`)
//! or a path to a JSON file. A graph file may carry a `"weights"` key next to
//! the graph fields; an explicit `--weights` flag overrides it.

use std::fs;
use std::path::Path;

use omegalap::{
    build_laplacian_in, Family, Field, GraphSpec, OperatorDescriptor, QuasiadjacencyPair, Scalar,
    WeightScheme,
};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

/// Inline JSON, or the contents of the named file.
fn json_argument(arg: &str) -> CliResult<Value> {
    let text = if arg.trim_start().starts_with(['{', '"']) {
        arg.to_string()
    } else {
        read_file(arg)?
    };
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{arg}: {e}")))
}

fn family_by_name(name: &str) -> Option<Family> {
    serde_json::from_value(Value::String(name.to_string())).ok()
}

/// The graph and, if the graph document names one, its weight scheme.
pub fn load_graph(arg: &str) -> CliResult<(GraphSpec, Option<WeightScheme>)> {
    if let Some(f) = family_by_name(arg) {
        return Ok((GraphSpec::family(f), None));
    }
    if !arg.contains('{') && !Path::new(arg).exists() {
        return Err(CliError::config(format!(
            "unknown graph {arg:?}: expected a family name, inline JSON or a JSON file"
        )));
    }
    let mut doc = json_argument(arg)?;
    let weights = match doc.as_object_mut().and_then(|o| o.remove("weights")) {
        Some(w) => Some(
            serde_json::from_value(w)
                .map_err(|e| CliError::config(format!("{arg}: weights: {e}")))?,
        ),
        None => None,
    };
    let spec = serde_json::from_value(doc).map_err(|e| CliError::config(format!("{arg}: {e}")))?;
    Ok((spec, weights))
}

pub fn load_weights(arg: &str) -> CliResult<WeightScheme> {
    match arg {
        "uniform" => Ok(WeightScheme::Uniform),
        "normalized" => Ok(WeightScheme::Normalized),
        _ => serde_json::from_value(json_argument(arg)?)
            .map_err(|e| CliError::config(format!("{arg}: {e}"))),
    }
}

pub fn parse_scalar(what: &str, s: &str) -> CliResult<Scalar> {
    s.parse()
        .map_err(|e| CliError::config(format!("--{what}: {e}")))
}

/// `a..b` (inclusive), `a..=b`, or a comma separated list.
pub fn parse_m_range(s: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::config(format!("--m: cannot read {s:?}; use 1..8 or 1,2,5"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let out: Vec<u64> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<CliResult<_>>()?
    };
    if out.contains(&0) {
        return Err(CliError::config("--m: depths start at 1"));
    }
    Ok(out)
}

pub fn parse_list(what: &str, s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::config(format!("--{what}: cannot read {t:?}")))
        })
        .collect()
}

/// Everything needed to build `alpha·Id + beta·Δ_G`.
#[derive(Debug, Clone)]
pub struct OperatorConfig {
    pub descriptor: OperatorDescriptor,
    pub field: Option<Field>,
}

impl OperatorConfig {
    pub fn new(
        graph: &str,
        weights: Option<&str>,
        field: Option<&str>,
        alpha: &str,
        beta: &str,
    ) -> CliResult<Self> {
        let (spec, file_weights) = load_graph(graph)?;
        let weights = match weights {
            Some(w) => load_weights(w)?,
            None => file_weights.unwrap_or_default(),
        };
        let alpha = parse_scalar("alpha", alpha)?;
        let beta = parse_scalar("beta", beta)?;
        let field = match field {
            Some(f) => {
                let f: Field = f
                    .parse()
                    .map_err(|e| CliError::config(format!("--field: {e}")))?;
                f.admit(&alpha)?;
                f.admit(&beta)?;
                Some(f)
            }
            None => None,
        };
        Ok(OperatorConfig {
            descriptor: OperatorDescriptor {
                graph: spec,
                weights,
                alpha,
                beta,
            },
            field,
        })
    }

    pub fn field(&self) -> Field {
        self.field
            .unwrap_or_else(|| Field::of([&self.descriptor.alpha, &self.descriptor.beta]))
    }

    /// `D' - B'` for `alpha·Id + beta·Δ_G`; needs `beta ≠ 0`.
    pub fn build(&self) -> CliResult<QuasiadjacencyPair> {
        Ok(self.descriptor.build(self.field)?)
    }

    /// `Δ_G` itself in the configured field, ignoring `alpha` and `beta`.
    pub fn laplacian(&self) -> CliResult<QuasiadjacencyPair> {
        let g = self.descriptor.graph.build()?;
        Ok(build_laplacian_in(&g, &self.descriptor.weights, self.field())?.1)
    }
}
