//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line, written
//! straight to stdout so it shows up without `--nocapture`.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use cmm_core::negativity::{nu_closed_form, nu_partial_transpose_spectrum};
use cmm_core::{
    contrast_ratio, entangle_all, figure_preset, log_negativity, run_sweep, solve_lyapunov,
    DiffusionMatrix, DriftMatrix, FigureId, PointStatus, Quantity, SweepResult, SystemParams,
};
use nalgebra::{Matrix4, Matrix6, Vector6};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(name: &str, failures: &[String], elapsed: Duration) {
    let mut out = std::io::stdout().lock();
    if failures.is_empty() {
        let _ = writeln!(out, "PASS {name} ({:.2?})", elapsed);
    } else {
        let _ = writeln!(
            out,
            "FAIL {name} ({:.2?}): {}",
            elapsed,
            failures.join("; ")
        );
    }
    let _ = out.flush();
    assert!(failures.is_empty(), "{name}: {}", failures.join("; "));
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn sweep(id: FigureId) -> SweepResult {
    run_sweep(&figure_preset(id)).unwrap_or_else(|e| panic!("{id}: {e}"))
}

/// (index, value) of the largest finite entry.
fn argmax(values: &[Option<f64>]) -> (usize, f64) {
    values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
}

#[test]
fn analytic_gaussian_oracles() {
    let t = Instant::now();
    let mut f = Vec::new();
    let vacuum = Matrix4::<f64>::identity() * 0.5;
    let e = log_negativity(&vacuum).unwrap().e;
    check(&mut f, e == 0.0 && e.is_sign_positive(), || {
        format!("vacuum E = {e:e}")
    });
    for r in [0.25, 0.5, 1.0] {
        let e = log_negativity(&common::tmsv(r)).unwrap().e;
        check(&mut f, (e - 2.0 * r).abs() < 1e-10, || {
            format!("TMSV r={r}: E = {e}")
        });
    }
    let elapsed = t.elapsed();
    check(&mut f, elapsed < Duration::from_secs(1), || {
        format!("runtime {elapsed:?}")
    });
    report("analytic-gaussian-oracles", &f, elapsed);
}

#[test]
fn lyapunov_correctness() {
    let t = Instant::now();
    let mut f = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x17a9);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = DriftMatrix(common::random_stable(&mut rng));
        let d = DiffusionMatrix(Vector6::from_fn(|_, _| rng.random_range(0.0..2.0)));
        let v = solve_lyapunov(&a, &d).unwrap();
        worst = worst.max(v.lyapunov_residual(&a, &d));
    }
    check(&mut f, worst < 1e-9, || format!("worst residual {worst:e}"));

    let mut worst_diag = 0.0f64;
    for _ in 0..1000 {
        let diag = Vector6::from_fn(|_, _| -rng.random_range(0.01..10.0));
        let d = Vector6::from_fn(|_, _| rng.random_range(0.0..5.0));
        let v = solve_lyapunov(
            &DriftMatrix(Matrix6::from_diagonal(&diag)),
            &DiffusionMatrix(d),
        )
        .unwrap();
        let v = v.as_matrix();
        for r in 0..6 {
            for c in 0..6 {
                let expected = if r == c {
                    d[r] / (2.0 * diag[r].abs())
                } else {
                    0.0
                };
                let err = (v[(r, c)] - expected).abs() / expected.abs().max(1.0);
                worst_diag = worst_diag.max(err);
            }
        }
    }
    check(&mut f, worst_diag < 1e-12, || {
        format!("diagonal case error {worst_diag:e}")
    });
    let elapsed = t.elapsed();
    check(&mut f, elapsed < Duration::from_secs(10), || {
        format!("runtime {elapsed:?}")
    });
    report("lyapunov-correctness", &f, elapsed);
}

#[test]
fn dual_route_agreement() {
    let t = Instant::now();
    let mut f = Vec::new();
    let mut rng = StdRng::seed_from_u64(41);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let v = common::random_physical_cm4(&mut rng);
        let a = nu_closed_form(&v).unwrap();
        let b = nu_partial_transpose_spectrum(&v).unwrap();
        worst = worst.max((a - b).abs());
    }
    check(&mut f, worst < 1e-8, || {
        format!("worst disagreement {worst:e}")
    });
    report("dual-route-agreement", &f, t.elapsed());
}

#[test]
fn figure_regression() {
    let t = Instant::now();
    let mut f = Vec::new();

    let fig1a = sweep(FigureId::Fig1a);
    let (i_nm, e_nm) = argmax(&fig1a.column(Quantity::ENm));
    let (_, e_nb) = argmax(&fig1a.column(Quantity::ENb));
    let e_mb_at = fig1a.rows[i_nm].value(Quantity::EMb).unwrap_or(f64::NAN);
    check(&mut f, (e_nm - 0.26).abs() <= 0.08, || {
        format!("fig1a peak E_nm {e_nm:.4}")
    });
    check(&mut f, (e_nb - 0.22).abs() <= 0.08, || {
        format!("fig1a peak E_nb {e_nb:.4}")
    });
    check(&mut f, e_mb_at < 0.02, || {
        format!("fig1a E_mb at E_nm peak {e_mb_at:.4}")
    });

    let mut p = SystemParams::reference();
    p.delta_n = -1.3 * p.omega_b;
    p.delta_b = 0.0;
    let r = entangle_all(&p).unwrap();
    check(&mut f, (r.e_nm - 0.09).abs() <= 0.04, || {
        format!("point E_nm {:.4}", r.e_nm)
    });
    check(&mut f, (r.e_nb - 0.15).abs() <= 0.05, || {
        format!("point E_nb {:.4}", r.e_nb)
    });

    let fig2b = sweep(FigureId::Fig2b);
    for (q, target) in [(Quantity::ENm, 0.16), (Quantity::ENb, 0.18)] {
        let (i, e) = argmax(&fig2b.column(q));
        let at = fig2b.rows[i].axis1;
        check(&mut f, (e - target).abs() <= 0.05 && at != 0.0, || {
            format!(
                "fig2b peak {} {e:.4} at delta_B {:.3} wb",
                q.name(),
                at / p.omega_b
            )
        });
    }
    let elapsed = t.elapsed();
    check(&mut f, elapsed < Duration::from_secs(60), || {
        format!("runtime {elapsed:?}")
    });
    report("figure-regression", &f, elapsed);
}

/// Means over `bins` contiguous blocks must not decrease and the last must
/// exceed the first.
fn binned_trend_increasing(values: &[f64], bins: usize) -> Result<(), Vec<f64>> {
    let means: Vec<f64> = (0..bins)
        .map(|b| {
            let lo = b * values.len() / bins;
            let hi = (b + 1) * values.len() / bins;
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    let ok = means.windows(2).all(|w| w[1] >= w[0]) && means[bins - 1] > means[0];
    if ok {
        Ok(())
    } else {
        Err(means)
    }
}

#[test]
fn nonreciprocity_fig2c_trend() {
    let t = Instant::now();
    let mut f = Vec::new();
    let fig2c = sweep(FigureId::Fig2c);
    for q in [Quantity::NMb, Quantity::NNb] {
        let col: Vec<f64> = fig2c
            .column(q)
            .into_iter()
            .map(|v| v.unwrap_or(f64::NAN))
            .collect();
        if let Err(means) = binned_trend_increasing(&col, 5) {
            f.push(format!("{} smoothed {:?}", q.name(), means));
        }
    }
    report("nonreciprocity/fig2c-increasing-in-chi", &f, t.elapsed());
}

#[test]
fn nonreciprocity_fig2d_beta_pi() {
    let t = Instant::now();
    let mut f = Vec::new();
    let fig2d = sweep(FigureId::Fig2d);
    let i_pi = fig2d
        .axis1_values
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - PI).abs().total_cmp(&(b.1 - PI).abs()))
        .map(|(i, _)| i)
        .unwrap();
    for q in Quantity::NONRECIPROCITY {
        let (i, n) = argmax(&fig2d.column(q));
        check(&mut f, i.abs_diff(i_pi) <= 1, || {
            format!(
                "{} max {n:.3} at beta = {:.3} pi",
                q.name(),
                fig2d.axis1_values[i] / PI
            )
        });
    }
    report("nonreciprocity/fig2d-max-at-beta-pi", &f, t.elapsed());
}

#[test]
fn nonreciprocity_fig4_perfect() {
    let t = Instant::now();
    let mut f = Vec::new();
    let mut best = 0.0f64;
    for id in [FigureId::Fig4a, FigureId::Fig4b, FigureId::Fig4c] {
        let spec = figure_preset(id);
        let res = run_sweep(&spec).unwrap();
        for q in spec.output_quantities() {
            best = best.max(argmax(&res.column(q)).1);
        }
    }
    check(&mut f, best > 0.99, || {
        format!("largest contrast {best:.4}")
    });
    report("nonreciprocity/fig4-perfect", &f, t.elapsed());
}

#[test]
fn thermal_robustness() {
    let t = Instant::now();
    let mut f = Vec::new();
    let base = figure_preset(FigureId::Fig6a).base;
    assert_eq!(base.chi, 0.6 * base.kappa_n);
    let wb = base.omega_b;

    let mut any = false;
    for db in [-0.2, 0.0, 0.2] {
        let p = SystemParams {
            temperature: 1.5,
            delta_b: db * wb,
            ..base
        };
        let r = entangle_all(&p).unwrap();
        any |= r.e_nm > 0.0 || r.e_mb > 0.0 || r.e_nb > 0.0;
    }
    check(&mut f, any, || "no entanglement left at T = 1.5 K".into());

    for id in [FigureId::Fig6a, FigureId::Fig6b, FigureId::Fig6c] {
        let spec = figure_preset(id);
        let q = spec.output_quantities()[0];
        let res = run_sweep(&spec).unwrap();
        let n2 = res.axis2_values.as_ref().map_or(1, Vec::len);
        for i2 in 0..n2 {
            let curve: Vec<(f64, f64)> = res
                .curve(i2)
                .iter()
                .filter(|r| r.axis1 > 0.1)
                .map(|r| (r.axis1, r.value(q).unwrap_or(f64::NAN)))
                .collect();
            for w in curve.windows(2) {
                check(&mut f, w[1].1 <= w[0].1 + 1e-12, || {
                    format!(
                        "{id} {} rises between T = {:.3} and {:.3} K",
                        q.name(),
                        w[0].0,
                        w[1].0
                    )
                });
            }
        }
    }
    report("thermal-robustness", &f, t.elapsed());
}

#[test]
fn structural_invariants() {
    let t = Instant::now();
    let mut f = Vec::new();

    // Barnett shift folded into the magnon detuning, along the fig2b grid.
    let spec = figure_preset(FigureId::Fig2b);
    for db in spec.axis1.values().into_iter().step_by(20) {
        let p = SystemParams {
            delta_b: db,
            ..spec.base
        };
        let q = SystemParams {
            delta_b: 0.0,
            delta_m_eff: spec.base.delta_m_eff + db,
            ..spec.base
        };
        let (a, b) = (entangle_all(&p).unwrap(), entangle_all(&q).unwrap());
        let err = (a.e_nm - b.e_nm)
            .abs()
            .max((a.e_mb - b.e_mb).abs())
            .max((a.e_nb - b.e_nb).abs());
        check(&mut f, err < 1e-10, || {
            format!("shift equivalence off by {err:e}")
        });
    }

    // No parametric drive: β is irrelevant.
    let mut spec = figure_preset(FigureId::Fig2a);
    spec.base.chi = 0.0;
    let res = run_sweep(&spec).unwrap();
    let first = res.rows[0].entanglement.unwrap();
    for r in &res.rows {
        let e = r.entanglement.unwrap();
        let err = (e.e_nm - first.e_nm)
            .abs()
            .max((e.e_mb - first.e_mb).abs())
            .max((e.e_nb - first.e_nb).abs());
        check(&mut f, err < 1e-10, || {
            format!("chi=0 beta dependence {err:e}")
        });
    }

    // Every preset: physical CMs (checked inside each evaluation), contrast
    // ratios bounded and symmetric under branch exchange.
    for &id in FigureId::ALL {
        let res = match run_sweep(&figure_preset(id)) {
            Ok(r) => r,
            Err(e) => {
                f.push(format!("{id}: {e}"));
                continue;
            }
        };
        let ok_rows = res
            .rows
            .iter()
            .filter(|r| r.status == PointStatus::Ok)
            .count();
        check(&mut f, ok_rows > 0, || format!("{id}: no stable points"));
        for r in res.rows.iter().filter_map(|r| r.nonrecip) {
            for pair in cmm_core::PairSelector::ALL {
                let n = r.n(pair);
                let swapped = contrast_ratio(r.minus.e(pair), r.plus.e(pair));
                check(&mut f, (0.0..=1.0).contains(&n) && n == swapped, || {
                    format!("{id}: contrast {n} vs swapped {swapped}")
                });
            }
        }
    }
    f.dedup();
    report("structural-invariants", &f, t.elapsed());
}
