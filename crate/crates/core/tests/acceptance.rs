//! Acceptance suite. Each test prints one pass/fail line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

mod common;

use bloch_topo::boundary::{edge_spectral_flow, ribbon_spectrum, Edge};
use bloch_topo::presets::{chain_1d, doubled_qwz, qwz, trivial_atomic};
use bloch_topo::stability::{thresholds_quaternionic, thresholds_real, CWShape};
use bloch_topo::symmetry::{check_model_symmetry, kramers_check, verify_bundle_involution};
use bloch_topo::{
    bloch_transform, chern_number, flatten, spectral_gap, thresholds_complex, CMatrix,
    HoppingModel, MomentumGrid, DEFAULT_GAP_TOL,
};
use common::berry_riemann_qwz;

fn report(criterion: u32, description: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("[PASS] criterion {criterion}: {description}"),
        Err(reason) => {
            println!("[FAIL] criterion {criterion}: {description}: {reason}");
            panic!("criterion {criterion} failed: {reason}");
        }
    }
}

fn ensure(condition: bool, message: String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message)
    }
}

fn chern_of(model: &HoppingModel, grid_n: usize) -> Result<(i64, f64), String> {
    let grid = MomentumGrid::new(model.dim(), grid_n).map_err(|e| e.to_string())?;
    let sample = bloch_transform(model, &grid).map_err(|e| e.to_string())?;
    let field = flatten(&sample, DEFAULT_GAP_TOL).map_err(|e| e.to_string())?;
    let result = chern_number(&field, [0, 1]).map_err(|e| e.to_string())?;
    Ok((result.value, result.residual))
}

#[test]
fn criterion_1_chern_quantization_and_phase_diagram() {
    let run = || -> Result<(), String> {
        let chern_at = |m: f64, n: usize| -> Result<i64, String> {
            let (value, residual) = chern_of(&qwz(m), n)?;
            ensure(
                residual < 0.01,
                format!("residual {residual:.4} at m = {m}, N = {n}"),
            )?;
            let oracle = berry_riemann_qwz(m, 512);
            ensure(
                (oracle - value as f64).abs() < 0.01,
                format!("oracle {oracle:.5} vs integer {value} at m = {m}"),
            )?;
            Ok(value)
        };
        for m in [0.5, 1.0, 1.5] {
            let c16 = chern_at(m, 16)?;
            let c32 = chern_at(m, 32)?;
            ensure(c16 == c32, format!("N-dependence at m = {m}: {c16} vs {c32}"))?;
            ensure(c16.abs() == 1, format!("|C| != 1 at m = {m}: {c16}"))?;
        }
        for m in [3.0, -3.0] {
            let c = chern_at(m, 16)?;
            ensure(c == 0, format!("C != 0 at m = {m}: {c}"))?;
        }
        let plus = chern_at(1.0, 16)?;
        let minus = chern_at(-1.0, 16)?;
        ensure(plus == -minus, format!("C(1) = {plus} vs C(-1) = {minus}"))?;
        Ok(())
    };
    report(
        1,
        "qwz Chern phase diagram, quantization across grids, Berry oracle",
        run(),
    );
}

#[test]
fn criterion_2_exact_gap() {
    let run = || -> Result<(), String> {
        let grid = MomentumGrid::new(2, 64).map_err(|e| e.to_string())?;
        let sample = bloch_transform(&qwz(1.0), &grid).map_err(|e| e.to_string())?;
        let gap = spectral_gap(&sample);
        ensure((gap - 1.0).abs() < 1e-9, format!("gap = {gap:.12}"))
    };
    report(2, "spectral_gap(qwz, m=1, grid_n=64) = 1.0 within 1e-9", run());
}

#[test]
fn criterion_3_bulk_boundary_correspondence() {
    let run = || -> Result<(), String> {
        let cases: [(&str, HoppingModel, i64); 3] = [
            ("qwz(1)", qwz(1.0), 1),
            ("qwz(3)", qwz(3.0), 0),
            ("qwz(1)+qwz(1)", qwz(1.0).direct_sum(&qwz(1.0)).unwrap(), 2),
        ];
        for (name, model, magnitude) in cases {
            let grid = MomentumGrid::new(2, 24).map_err(|e| e.to_string())?;
            let sample = bloch_transform(&model, &grid).map_err(|e| e.to_string())?;
            let gap = spectral_gap(&sample);
            let field = flatten(&sample, DEFAULT_GAP_TOL).map_err(|e| e.to_string())?;
            let chern = chern_number(&field, [0, 1]).map_err(|e| e.to_string())?;

            let spectrum = ribbon_spectrum(&model, 40, 401).map_err(|e| e.to_string())?;
            let left = edge_spectral_flow(&spectrum, gap, Edge::Left).map_err(|e| e.to_string())?;
            let right =
                edge_spectral_flow(&spectrum, gap, Edge::Right).map_err(|e| e.to_string())?;

            ensure(
                left.abs() == chern.value.abs() && left.abs() == magnitude,
                format!("{name}: |flow| = {} vs |C| = {} (expected {magnitude})", left.abs(), chern.value.abs()),
            )?;
            if magnitude == 1 {
                ensure(left == -right, format!("{name}: left {left} vs right {right}"))?;
            }
        }
        Ok(())
    };
    report(
        3,
        "|edge spectral flow| = |Chern| for qwz(1), qwz(3), qwz(1)+qwz(1); opposite edges",
        run(),
    );
}

#[test]
fn criterion_4_projector_algebra_over_the_registry() {
    let run = || -> Result<(), String> {
        let registry: [(&str, HoppingModel); 4] = [
            ("trivial_atomic", trivial_atomic(2)),
            ("chain_1d", chain_1d(0.5)),
            ("qwz", qwz(1.0)),
            ("doubled_qwz", doubled_qwz(1.0).0),
        ];
        for (name, model) in registry {
            let grid = MomentumGrid::new(model.dim(), 24).map_err(|e| e.to_string())?;
            let sample = bloch_transform(&model, &grid).map_err(|e| e.to_string())?;
            let field = flatten(&sample, DEFAULT_GAP_TOL).map_err(|e| e.to_string())?;
            let bands = model.bands();
            for p in &field.projectors {
                let idem = (p * p - p).iter().fold(0.0f64, |a, z| a.max(z.norm()));
                let herm = (p - &p.adjoint()).iter().fold(0.0f64, |a, z| a.max(z.norm()));
                ensure(idem < 1e-10, format!("{name}: |p^2 - p| = {idem:.2e}"))?;
                ensure(herm < 1e-10, format!("{name}: |p - p†| = {herm:.2e}"))?;
                let trace: f64 = (0..bands).map(|i| p[(i, i)].re).sum();
                ensure(
                    (trace - field.rank as f64).abs() < 1e-8,
                    format!("{name}: trace {trace} vs rank {}", field.rank),
                )?;
            }
        }
        Ok(())
    };
    report(
        4,
        "projector algebra (idempotent, Hermitian, constant rank) over the registry at grid_n 24",
        run(),
    );
}

#[test]
fn criterion_5_symmetry_suite() {
    let run = || -> Result<(), String> {
        let (model, datum) = doubled_qwz(1.0);
        let symmetry = check_model_symmetry(&model, &datum).map_err(|e| e.to_string())?;
        ensure(
            symmetry.holds,
            format!("model symmetry violated at {:.2e}", symmetry.max_violation),
        )?;
        ensure(datum.sign == -1, format!("sign = {}", datum.sign))?;

        let grid = MomentumGrid::new(2, 24).map_err(|e| e.to_string())?;
        let sample = bloch_transform(&model, &grid).map_err(|e| e.to_string())?;
        let kramers = kramers_check(&sample, &datum).map_err(|e| e.to_string())?;
        ensure(
            kramers.holds && kramers.worst_defect < 1e-9,
            format!("Kramers defect {:.2e}", kramers.worst_defect),
        )?;

        let field = flatten(&sample, DEFAULT_GAP_TOL).map_err(|e| e.to_string())?;
        let chern = chern_number(&field, [0, 1]).map_err(|e| e.to_string())?;
        ensure(chern.value == 0, format!("total Chern = {}", chern.value))?;

        let chain = chain_1d(0.5);
        let grid = MomentumGrid::new(1, 24).map_err(|e| e.to_string())?;
        let field = flatten(
            &bloch_transform(&chain, &grid).map_err(|e| e.to_string())?,
            DEFAULT_GAP_TOL,
        )
        .map_err(|e| e.to_string())?;
        let identity = bloch_topo::classify_datum(&CMatrix::identity(2, 2))
            .map_err(|e| e.to_string())?;
        let involution = verify_bundle_involution(&field, &identity).map_err(|e| e.to_string())?;
        ensure(
            involution.max_violation < 1e-10,
            format!("chain involution violation {:.2e}", involution.max_violation),
        )?;
        Ok(())
    };
    report(
        5,
        "doubled_qwz quaternionic suite (symmetry, Kramers, zero Chern); chain_1d real involution",
        run(),
    );
}

#[test]
fn criterion_6_theorem_tables() {
    // Hand-computed 7x7 tables for 0 <= d0, d1 <= 6, laid out as
    // table[d0][d1]; no cell is clamped on these inputs.
    #[rustfmt::skip]
    const REAL_K0: [[i64; 7]; 7] = [
        [0, 0, 1, 1, 2, 2, 3],
        [1, 1, 1, 1, 2, 2, 3],
        [2, 2, 2, 2, 2, 2, 3],
        [3, 3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4, 4],
        [5, 5, 5, 5, 5, 5, 5],
        [6, 6, 6, 6, 6, 6, 6],
    ];
    #[rustfmt::skip]
    const REAL_K1: [[i64; 7]; 7] = [
        [1, 1, 1, 2, 2, 3, 3],
        [2, 2, 2, 2, 2, 3, 3],
        [3, 3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4, 4],
        [5, 5, 5, 5, 5, 5, 5],
        [6, 6, 6, 6, 6, 6, 6],
        [7, 7, 7, 7, 7, 7, 7],
    ];
    #[rustfmt::skip]
    const QUAT_K0: [[i64; 7]; 7] = [
        [0, 0, 1, 1, 2, 2, 3],
        [0, 0, 1, 1, 2, 2, 3],
        [0, 0, 1, 1, 2, 2, 3],
        [0, 0, 1, 1, 2, 2, 3],
        [1, 1, 1, 1, 2, 2, 3],
        [1, 1, 1, 1, 2, 2, 3],
        [2, 2, 2, 2, 2, 2, 3],
    ];
    #[rustfmt::skip]
    const QUAT_K1: [[i64; 7]; 7] = [
        [0, 1, 1, 2, 2, 3, 3],
        [0, 1, 1, 2, 2, 3, 3],
        [0, 1, 1, 2, 2, 3, 3],
        [1, 1, 1, 2, 2, 3, 3],
        [1, 1, 1, 2, 2, 3, 3],
        [2, 2, 2, 2, 2, 3, 3],
        [2, 2, 2, 2, 2, 3, 3],
    ];

    let run = || -> Result<(), String> {
        for d0 in 0..7u32 {
            for d1 in 0..7u32 {
                let shape = CWShape { d0, d1 };
                let real = thresholds_real(shape);
                ensure(
                    real.k0 == REAL_K0[d0 as usize][d1 as usize]
                        && real.k1 == REAL_K1[d0 as usize][d1 as usize]
                        && !real.clamped,
                    format!(
                        "real ({d0},{d1}): got ({}, {}, clamped {})",
                        real.k0, real.k1, real.clamped
                    ),
                )?;
                let quat = thresholds_quaternionic(shape);
                ensure(
                    quat.k0 == QUAT_K0[d0 as usize][d1 as usize]
                        && quat.k1 == QUAT_K1[d0 as usize][d1 as usize]
                        && !quat.clamped,
                    format!(
                        "quaternionic ({d0},{d1}): got ({}, {}, clamped {})",
                        quat.k0, quat.k1, quat.clamped
                    ),
                )?;
            }
        }

        // The nine example rows: three per class.
        let rows_real = [((0, 2), (1, 1)), ((0, 0), (0, 1)), ((2, 5), (2, 3))];
        for ((d0, d1), (k0, k1)) in rows_real {
            let t = thresholds_real(CWShape { d0, d1 });
            ensure(
                (t.k0, t.k1) == (k0, k1),
                format!("real example ({d0},{d1}): got ({}, {})", t.k0, t.k1),
            )?;
        }
        let rows_quat = [((0, 2), (1, 1)), ((0, 4), (2, 2)), ((3, 0), (0, 1))];
        for ((d0, d1), (k0, k1)) in rows_quat {
            let t = thresholds_quaternionic(CWShape { d0, d1 });
            ensure(
                (t.k0, t.k1) == (k0, k1),
                format!("quaternionic example ({d0},{d1}): got ({}, {})", t.k0, t.k1),
            )?;
        }
        let rows_complex = [(2, (1, 1)), (0, (0, 0)), (3, (1, 2))];
        for (dim, (k0, k1)) in rows_complex {
            let t = thresholds_complex(dim);
            ensure(
                (t.k0, t.k1) == (k0, k1),
                format!("complex example {dim}: got ({}, {})", t.k0, t.k1),
            )?;
        }
        Ok(())
    };
    report(
        6,
        "threshold formulas match the hand-coded 7x7 tables and the nine example rows",
        run(),
    );
}

#[test]
fn criterion_7_additivity_and_conjugation() {
    let run = || -> Result<(), String> {
        let (single, _) = chern_of(&qwz(1.0), 24)?;
        let (double, _) = chern_of(&qwz(1.0).direct_sum(&qwz(1.0)).unwrap(), 24)?;
        ensure(double == 2 * single, format!("C(sum) = {double}, C = {single}"))?;
        let (conjugated, _) = chern_of(&qwz(1.0).conjugated(), 24)?;
        ensure(
            conjugated == -single,
            format!("C(conj) = {conjugated}, C = {single}"),
        )?;
        Ok(())
    };
    report(
        7,
        "C(qwz ⊕ qwz) = 2·C(qwz); entrywise conjugation negates C (exact integers)",
        run(),
    );
}
