//! Subcommand implementations. Each returns the process exit code:
//! 0 for a resolved analysis, 2 when a report was produced but the
//! numerics stayed unresolved; input failures surface as Err and exit 1.

use std::collections::BTreeMap;

use bloch_topo::boundary::{self, Edge, LEFT_FLOW_SIGN};
use bloch_topo::stability::SymmetryClass;
use bloch_topo::symmetry::TimeReversalDatum;
use bloch_topo::{
    bloch_transform, chern_number_at, chern_vector, classify_datum, flatten, kramers_check,
    spectral_gap, stably_trivial, torus_shape, triviality_verdict, verify_bundle_involution,
    CMatrix, Error, HoppingModel, MomentumGrid, Result, StableVerdict,
};

use crate::registry::{default_datum, resolve_model};
use crate::report::{
    emit, AnalyzeReport, ChernReport, ConfigEcho, EdgeReport, StableSummary, SweepEntry,
    SymmetryReport, ThresholdReport, VerdictSummary,
};
use crate::{GridArgs, ModelArgs};

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut params = BTreeMap::new();
    for entry in raw {
        let (key, value) = entry.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("--param expects key=value, got \"{entry}\""))
        })?;
        let value: f64 = value.parse().map_err(|_| {
            Error::InvalidInput(format!("--param {key}: \"{value}\" is not a number"))
        })?;
        params.insert(key.to_string(), value);
    }
    Ok(params)
}

struct Resolved {
    model: HoppingModel,
    datum: Option<TimeReversalDatum>,
    config: ConfigEcho,
}

fn resolve(
    margs: &ModelArgs,
    gargs: &GridArgs,
    width: usize,
    parallel_points: usize,
) -> Result<Resolved> {
    let params = parse_params(&margs.params)?;
    let (model, datum) = resolve_model(&margs.model, &params, margs.bands)?;
    let datum = datum.or_else(|| default_datum(&margs.model, &model));
    let config = ConfigEcho {
        model: margs.model.clone(),
        params,
        bands: margs.bands,
        grid_n: gargs.grid_n,
        ribbon_width: width,
        parallel_points,
        gap_tol: gargs.gap_tol,
        trs: None,
        output: gargs.output.clone(),
    };
    Ok(Resolved {
        model,
        datum,
        config,
    })
}

/// Symmetry class of the model under its datum (if any): violated or
/// missing symmetry falls back to the complex class.
fn classify_model(
    model: &HoppingModel,
    datum: Option<&TimeReversalDatum>,
) -> (SymmetryClass, Option<String>) {
    match datum {
        None => (SymmetryClass::Complex, None),
        Some(datum) => match bloch_topo::check_model_symmetry(model, datum) {
            Err(e) => (SymmetryClass::Complex, Some(format!("datum rejected: {e}"))),
            Ok(check) if !check.holds => (
                SymmetryClass::Complex,
                Some(format!(
                    "time-reversal violated (max violation {:.3e}); classified as complex",
                    check.max_violation
                )),
            ),
            Ok(_) => match datum.sign {
                1 => (SymmetryClass::Real, None),
                _ => (SymmetryClass::Quaternionic, None),
            },
        },
    }
}

pub fn analyze(margs: &ModelArgs, gargs: &GridArgs) -> Result<i32> {
    let resolved = resolve(margs, gargs, 40, 401)?;
    let model = &resolved.model;
    let grid = MomentumGrid::new(model.dim(), gargs.grid_n)?;
    let sample = bloch_transform(model, &grid)?;
    let gap = spectral_gap(&sample);
    let field = flatten(&sample, gargs.gap_tol)?;

    let stable = stably_trivial(&field);
    let (class, note) = classify_model(model, resolved.datum.as_ref());
    let shape = torus_shape(model.dim() as u32);
    let verdict = triviality_verdict(field.rank, class, shape, &stable);

    let exit = if stable.verdict == StableVerdict::Unresolved {
        2
    } else {
        0
    };
    let report = AnalyzeReport {
        config: resolved.config,
        spectral_gap: gap,
        projector_rank: field.rank,
        symmetry_class: class,
        symmetry_note: note,
        chern: stable.evidence.clone(),
        stable_triviality: StableSummary {
            verdict: stable.verdict,
            necessary_only: stable.necessary_only,
            detail: stable.detail.clone(),
        },
        shape,
        thresholds: verdict.thresholds.clone(),
        verdict: VerdictSummary {
            verdict: verdict.verdict,
            statement: verdict.statement.clone(),
            necessary_only: verdict.necessary_only,
        },
    };
    emit(&report, gargs.output.as_deref())?;
    Ok(exit)
}

pub fn chern(
    margs: &ModelArgs,
    gargs: &GridArgs,
    plane: Option<&[usize]>,
    sweep: bool,
) -> Result<i32> {
    let resolved = resolve(margs, gargs, 40, 401)?;
    let model = &resolved.model;
    let grid = MomentumGrid::new(model.dim(), gargs.grid_n)?;
    let field = flatten(&bloch_transform(model, &grid)?, gargs.gap_tol)?;

    let planes: Vec<[usize; 2]> = match plane {
        Some(pair) => {
            if pair.len() != 2 {
                return Err(Error::InvalidInput(
                    "--plane expects exactly two comma-separated axes, e.g. 0,1".into(),
                ));
            }
            vec![[pair[0], pair[1]]]
        }
        None => {
            let dim = model.dim();
            let mut all = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    all.push([i, j]);
                }
            }
            all
        }
    };

    let mut results = Vec::new();
    for p in &planes {
        results.push(bloch_topo::chern_number(&field, *p)?);
    }

    let (sweep_entries, slice_independent) = if sweep && model.dim() > 2 {
        let n = grid.points_per_axis();
        let transverse_axes = model.dim() - 2;
        let mut entries = Vec::new();
        let mut independent = true;
        for (p, fixed) in planes.iter().zip(&results) {
            let reference = fixed.value;
            let mut transverse = vec![0usize; transverse_axes];
            loop {
                let at = chern_number_at(&field, *p, &transverse)?;
                if at.value != reference {
                    independent = false;
                }
                entries.push(SweepEntry {
                    plane: *p,
                    transverse: transverse.clone(),
                    value: at.value,
                    residual: at.residual,
                });
                // Odometer increment over the transverse indices.
                let mut axis = 0;
                loop {
                    if axis == transverse_axes {
                        break;
                    }
                    transverse[axis] += 1;
                    if transverse[axis] < n {
                        break;
                    }
                    transverse[axis] = 0;
                    axis += 1;
                }
                if axis == transverse_axes {
                    break;
                }
            }
        }
        (Some(entries), Some(independent))
    } else {
        (None, None)
    };

    let report = ChernReport {
        config: resolved.config,
        results,
        sweep: sweep_entries,
        slice_independent,
    };
    emit(&report, gargs.output.as_deref())?;
    Ok(0)
}

pub fn edge(
    margs: &ModelArgs,
    gargs: &GridArgs,
    width: usize,
    parallel_points: usize,
    csv: Option<&str>,
) -> Result<i32> {
    let resolved = resolve(margs, gargs, width, parallel_points)?;
    let model = &resolved.model;
    let grid = MomentumGrid::new(model.dim(), gargs.grid_n)?;
    let sample = bloch_transform(model, &grid)?;
    let bulk_gap = spectral_gap(&sample);
    let field = flatten(&sample, gargs.gap_tol)?;
    let chern = bloch_topo::chern_number(&field, [0, 1])?;

    let spectrum = boundary::ribbon_spectrum(model, width, parallel_points)?;
    if let Some(path) = csv {
        let file = std::fs::File::create(path)?;
        boundary::write_ribbon_csv(&spectrum, std::io::BufWriter::new(file))?;
    }
    let flow_left = boundary::edge_spectral_flow(&spectrum, bulk_gap, Edge::Left)?;
    let flow_right = boundary::edge_spectral_flow(&spectrum, bulk_gap, Edge::Right)?;
    let passed = flow_left == LEFT_FLOW_SIGN * chern.value && flow_right == -flow_left;

    let report = EdgeReport {
        config: resolved.config,
        bulk_gap,
        chern,
        flow_left,
        flow_right,
        passed,
        csv: csv.map(str::to_string),
    };
    emit(&report, gargs.output.as_deref())?;
    Ok(0)
}

fn resolve_trs(spec: &str, bands: usize) -> Result<TimeReversalDatum> {
    use bloch_topo::linalg::cplx;
    match spec {
        "identity" => classify_datum(&CMatrix::identity(bands, bands)),
        "isigma2" => {
            if bands != 2 {
                return Err(Error::InvalidInput(format!(
                    "--trs isigma2 needs a two-band model, got {bands} bands"
                )));
            }
            let mut u = CMatrix::zeros(2, 2);
            u[(0, 1)] = cplx(1.0, 0.0);
            u[(1, 0)] = cplx(-1.0, 0.0);
            classify_datum(&u)
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidInput(format!(
                    "--trs must be \"identity\", \"isigma2\", or a JSON file: {path}: {e}"
                ))
            })?;
            let entry: bloch_topo::io::TrsEntry =
                serde_json::from_str(&text).map_err(bloch_topo::Error::Json)?;
            let rows = entry.u_re.len();
            let cols = entry.u_re.first().map_or(0, Vec::len);
            if entry.u_re.iter().any(|row| row.len() != cols)
                || entry
                    .u_im
                    .as_ref()
                    .is_some_and(|im| im.len() != rows || im.iter().any(|row| row.len() != cols))
            {
                return Err(Error::InvalidInput(format!("--trs {path}: ragged matrix")));
            }
            let u = CMatrix::from_fn(rows, cols, |i, j| {
                cplx(
                    entry.u_re[i][j],
                    entry.u_im.as_ref().map_or(0.0, |im| im[i][j]),
                )
            });
            classify_datum(&u)
        }
    }
}

pub fn symmetry(margs: &ModelArgs, gargs: &GridArgs, trs: Option<&str>) -> Result<i32> {
    let mut resolved = resolve(margs, gargs, 40, 401)?;
    resolved.config.trs = trs.map(str::to_string);
    let model = &resolved.model;

    let datum = match trs {
        Some(spec) => Some(resolve_trs(spec, model.bands())?),
        None => resolved.datum.clone(),
    };

    let Some(datum) = datum else {
        let report = SymmetryReport {
            config: resolved.config,
            class: "none (complex)".into(),
            sign: None,
            model_symmetry: None,
            bundle_involution: None,
            kramers: None,
            chern_total: None,
            notes: vec!["no time-reversal datum supplied or implied by the model".into()],
        };
        emit(&report, gargs.output.as_deref())?;
        return Ok(0);
    };

    let check = bloch_topo::check_model_symmetry(model, &datum)?;
    let mut notes = Vec::new();
    let class = if !check.holds {
        "symmetry violated".to_string()
    } else if datum.sign == 1 {
        "real".to_string()
    } else {
        "quaternionic".to_string()
    };

    let mut bundle_involution = None;
    let mut kramers = None;
    let mut chern_total = None;
    if check.holds {
        let grid = MomentumGrid::new(model.dim(), gargs.grid_n)?;
        let sample = bloch_transform(model, &grid)?;
        match flatten(&sample, gargs.gap_tol) {
            Err(e) => notes.push(format!("projector checks skipped: {e}")),
            Ok(field) => {
                bundle_involution = Some(verify_bundle_involution(&field, &datum)?);
                if model.dim() >= 2 {
                    match chern_vector(&field) {
                        Ok(results) => {
                            chern_total = Some(results.iter().map(|r| r.value).sum());
                        }
                        Err(e) => notes.push(format!("Chern evidence unresolved: {e}")),
                    }
                }
            }
        }
        if datum.sign == -1 {
            kramers = Some(kramers_check(&sample, &datum)?);
        }
    }

    let report = SymmetryReport {
        config: resolved.config,
        class,
        sign: Some(datum.sign),
        model_symmetry: Some(check),
        bundle_involution,
        kramers,
        chern_total,
        notes,
    };
    emit(&report, gargs.output.as_deref())?;
    Ok(0)
}

pub fn thresholds(
    class: &str,
    d0: Option<u32>,
    d1: Option<u32>,
    torus: Option<u32>,
    output: Option<&str>,
) -> Result<i32> {
    let class = match class {
        "complex" => SymmetryClass::Complex,
        "real" => SymmetryClass::Real,
        "quaternionic" => SymmetryClass::Quaternionic,
        other => {
            return Err(Error::InvalidInput(format!(
                "--class must be complex, real, or quaternionic, got \"{other}\""
            )))
        }
    };
    let (shape, torus_dim) = match (torus, d0, d1) {
        (Some(d), None, None) => (torus_shape(d), Some(d)),
        (None, Some(d0), Some(d1)) => (bloch_topo::CWShape { d0, d1 }, None),
        _ => {
            return Err(Error::InvalidInput(
                "provide either --torus D or both --d0 and --d1".into(),
            ))
        }
    };
    let thresholds = bloch_topo::thresholds_for(class, shape);
    let report = ThresholdReport {
        class,
        shape: if torus_dim.is_none() { Some(shape) } else { None },
        torus_dim,
        thresholds,
    };
    emit(&report, output)?;
    Ok(0)
}
