//! Model resolution: built-in registry names or JSON files.

use std::collections::BTreeMap;
use std::path::Path;

use bloch_topo::presets;
use bloch_topo::{Error, HoppingModel, Result, TimeReversalDatum};

pub const REGISTRY: [&str; 4] = ["trivial_atomic", "chain_1d", "qwz", "doubled_qwz"];

fn take_param(
    params: &BTreeMap<String, f64>,
    model: &str,
    key: &str,
    default: f64,
) -> Result<f64> {
    for name in params.keys() {
        if name != key {
            return Err(Error::InvalidInput(format!(
                "model \"{model}\" does not take parameter \"{name}\" (expected only \"{key}\")"
            )));
        }
    }
    Ok(params.get(key).copied().unwrap_or(default))
}

/// Resolves a registry name or a JSON path to a model plus an optional
/// time-reversal datum carried by the model itself.
pub fn resolve_model(
    spec: &str,
    params: &BTreeMap<String, f64>,
    bands: Option<usize>,
) -> Result<(HoppingModel, Option<TimeReversalDatum>)> {
    if bands.is_some() && spec != "trivial_atomic" {
        return Err(Error::InvalidInput(
            "--bands only applies to the trivial_atomic model".into(),
        ));
    }
    match spec {
        "trivial_atomic" => {
            if let Some(name) = params.keys().next() {
                return Err(Error::InvalidInput(format!(
                    "model \"trivial_atomic\" takes no --param (got \"{name}\"); use --bands"
                )));
            }
            Ok((presets::trivial_atomic(bands.unwrap_or(2)), None))
        }
        "chain_1d" => {
            let t = take_param(params, spec, "t", 0.5)?;
            Ok((presets::chain_1d(t), None))
        }
        "qwz" => {
            let m = take_param(params, spec, "m", 1.0)?;
            Ok((presets::qwz(m), None))
        }
        "doubled_qwz" => {
            let m = take_param(params, spec, "m", 1.0)?;
            let (model, datum) = presets::doubled_qwz(m);
            Ok((model, Some(datum)))
        }
        path => {
            if !params.is_empty() {
                return Err(Error::InvalidInput(
                    "--param applies only to registry models, not JSON files".into(),
                ));
            }
            let file = Path::new(path);
            if !file.exists() {
                return Err(Error::InvalidInput(format!(
                    "unknown model \"{path}\": not a registry name ({}) and no such file",
                    REGISTRY.join(", ")
                )));
            }
            bloch_topo::io::load_model(file)
        }
    }
}

/// Default time-reversal datum for registry models that have one: real
/// models get the identity, the doubled model carries its block datum.
pub fn default_datum(spec: &str, model: &HoppingModel) -> Option<TimeReversalDatum> {
    match spec {
        "trivial_atomic" | "chain_1d" => bloch_topo::classify_datum(
            &bloch_topo::CMatrix::identity(model.bands(), model.bands()),
        )
        .ok(),
        _ => None,
    }
}
