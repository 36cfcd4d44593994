//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dispersion_core::asymptotics::{
    local_log_slope, mirror_table, pair_table, verify_tables, Fixtures,
};
use dispersion_core::green::{self, dyadic, PlateKind};
use dispersion_core::potentials::{Channel, Engine, Regime, ResponseKind};
use dispersion_core::quad::{integrate_semiinf, QuadratureSpec};
use dispersion_core::response::{AtomModel, DiamagneticSpec, Transition};
use dispersion_core::selftest::run_selftest;
use dispersion_core::units::UnitSystem;

use ResponseKind::{Diamagnetic as D, Electric as E, Paramagnetic as P};

const PLATES: [PlateKind; 2] = [
    PlateKind::PerfectlyConducting,
    PlateKind::InfinitelyPermeable,
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn natural() -> Engine {
    Engine::new(UnitSystem::Natural)
}

fn fixtures() -> Fixtures {
    Fixtures::standard(1.0).expect("standard fixtures")
}

fn geometric(min: f64, max: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| min * (max / min).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn stencil(center: f64) -> Vec<f64> {
    (-2..=2).map(|k| center * 1.01f64.powi(k)).collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail.push_str(&format!(
        "; {:.3} s (limit {} s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    ));
    out.pass &= elapsed < limit;
    out
}

fn mirror_diamagnetic() -> Outcome {
    let engine = natural();
    let atom = AtomModel::diamagnetic("d", -1.0).unwrap();
    let mut worst: f64 = 0.0;
    for plate in PLATES {
        for z in [0.5, 1.0, 2.0, 5.0] {
            let quad = engine.cp_mirror_channel(&atom, D, z, plate).unwrap();
            // beta_d = -1 and natural units.
            let closed = -plate.sign() * 3.0 / (32.0 * PI * PI * z.powi(4));
            worst = worst.max(rel(quad, closed));
        }
    }
    let report = run_selftest(&engine).unwrap();
    let verdict = &report.prefactor;
    let single_pi_off = (verdict.ratio_to_single_pi * PI - 1.0).abs() < 1e-9;
    Outcome {
        pass: worst <= 1e-9 && verdict.pi_squared_supported && single_pi_off,
        detail: format!(
            "max rel err {worst:.2e} (tol 1e-9); verdict '{}'; quadrature / 32π form = {:.9}",
            verdict.verdict, verdict.ratio_to_single_pi
        ),
    }
}

fn dd_exactness() -> Outcome {
    let engine = natural();
    let a = AtomModel::diamagnetic("A", -1.0).unwrap();
    let b = AtomModel::diamagnetic("B", -0.4).unwrap();
    let mut worst: f64 = 0.0;
    for l in geometric(0.1, 100.0, 20) {
        let u = engine.vdw_pair(&a, &b, l).unwrap();
        let closed = -23.0 * (-1.0) * (-0.4) / (64.0 * PI.powi(3) * l.powi(7));
        worst = worst
            .max(rel(u.get(D, D), closed))
            .max(rel(u.total, closed));
    }
    let spot = engine.vdw_pair(&a, &a, 1.0).unwrap().total;
    let spot_ok = (spot - -1.1590e-2).abs() < 5e-7;
    Outcome {
        pass: worst <= 1e-9 && spot_ok,
        detail: format!("max rel err {worst:.2e} (tol 1e-9); U(l=1) = {spot:.4e}"),
    }
}

/// Slope and asymptote check of the `d`-`kind` channel in both deep regimes.
fn diamagnetic_asymptotes(kind: ResponseKind, powers: (f64, f64)) -> Outcome {
    let engine = natural();
    let fx = fixtures();
    let partner = fx.atom(kind);
    let channel = Channel::Pair(D, kind);
    let mut pass = true;
    let mut detail = Vec::new();
    for (regime, l, power) in [
        (Regime::Nonretarded, 1e-3, powers.0),
        (Regime::Retarded, 1e3, powers.1),
    ] {
        let curve = engine
            .pair_curve(&fx.diamagnetic, partner, &stencil(l))
            .unwrap();
        let profile = local_log_slope(&curve, Some(channel)).unwrap();
        let slope = profile.exponent[profile.distances.iter().position(|&d| d == l).unwrap()];
        let quad = engine
            .vdw_channel(&fx.diamagnetic, partner, D, kind, l)
            .unwrap();
        let closed = engine
            .vdw_asymptote(channel, &fx.diamagnetic, partner, l, regime)
            .unwrap();
        let err = rel(quad, closed);
        pass &= (slope - power).abs() <= 0.02 && err <= 1e-2;
        detail.push(format!(
            "{regime} l={l:e}: slope {slope:.4} (want {power}), asymptote rel err {err:.2e}"
        ));
    }
    Outcome {
        pass,
        detail: detail.join("; "),
    }
}

fn tables() -> Outcome {
    let report = verify_tables(&natural(), &fixtures()).unwrap();
    let mut claims: Vec<_> = mirror_table()
        .iter()
        .map(|e| (e.channel, e.geometry))
        .collect();
    claims.dedup();
    let failed: Vec<String> = report
        .failures()
        .map(|c| {
            format!(
                "{} {} {}",
                c.entry.geometry, c.entry.channel, c.entry.regime
            )
        })
        .collect();
    Outcome {
        pass: failed.is_empty() && claims.len() == 6 && pair_table().len() == 17,
        detail: format!(
            "{} mirror claims ({} cells), {} pair cells, {} probes, failures: {:?}",
            claims.len(),
            mirror_table().len(),
            pair_table().len(),
            report.cells.len(),
            failed
        ),
    }
}

fn oracle_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut kernel_err: f64 = 0.0;
    for _ in 0..100 {
        let x: f64 = rng.random_range(0.0..10.0);
        let (f, g) = green::fg(x);
        let h1 = 0.5 * (3.0 * f * f - 2.0 * f * g + g * g) * (-2.0 * x).exp();
        let h2 = (1.0 + x).powi(2) * (-2.0 * x).exp();
        kernel_err = kernel_err
            .max(rel(green::h1(x), h1))
            .max(rel(green::h2(x), h2));
    }
    let mut trace_err: f64 = 0.0;
    for _ in 0..100 {
        let a: [f64; 3] = [
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        ];
        let b: [f64; 3] = [
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        ];
        let l = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        let xi: f64 = rng.random_range(0.01..5.0);
        let mm = green::trace_gmm_gmm_free(l, xi, 1.0).unwrap();
        let em = green::trace_gme_gem_free(l, xi, 1.0).unwrap();
        trace_err = trace_err
            .max(rel(dyadic::brute_trace_gmm_gmm(&a, &b, xi, 1.0), mm))
            .max(rel(dyadic::brute_trace_gem_gme(&a, &b, xi, 1.0), em));
    }
    let spec = QuadratureSpec::default().with_decay_scale(0.5);
    let mut int_err: f64 = 0.0;
    type Case = (fn(f64) -> f64, f64);
    let cases: [Case; 3] = [
        (green::h1, 23.0 / 4.0),
        (green::h2, 5.0 / 4.0),
        (|x| x * x * green::h2(x), 7.0 / 4.0),
    ];
    for (f, exact) in cases {
        let r = integrate_semiinf(f, &spec).unwrap();
        int_err = int_err.max(rel(r.value, exact));
    }
    Outcome {
        pass: kernel_err <= 1e-12 && trace_err <= 1e-12 && int_err <= spec.rel_tol,
        detail: format!(
            "(a) {kernel_err:.2e} (b) {trace_err:.2e} (tol 1e-12); (c) {int_err:.2e} (tol {:e})",
            spec.rel_tol
        ),
    }
}

fn composite(label: &str, we: f64, wm: f64, beta_d: f64) -> AtomModel {
    AtomModel::new(
        label,
        vec![
            Transition::electric(we, 1.5).unwrap(),
            Transition::electric(3.0 * we, 0.4).unwrap(),
        ],
        vec![Transition::magnetic(wm, 0.9).unwrap()],
        DiamagneticSpec::Direct(beta_d),
    )
    .unwrap()
}

fn structural() -> Outcome {
    let engine = natural().with_rel_tol(1e-13).unwrap();
    let a = composite("A", 1.0, 0.3, -0.8);
    let b = composite("B", 0.6, 2.0, -1.3);
    let grid = geometric(1e-2, 1e2, 25);

    let ab = engine.pair_curve(&a, &b, &grid).unwrap();
    let ba = engine.pair_curve(&b, &a, &grid).unwrap();
    let symmetric = ab.channels().all(|ch| {
        let x = ab.channel(ch).unwrap();
        let y = ba.channel(ch.swapped()).unwrap();
        x.iter().zip(y).all(|(p, q)| p.to_bits() == q.to_bits())
    }) && ab
        .total
        .iter()
        .zip(&ba.total)
        .all(|(p, q)| p.to_bits() == q.to_bits());

    let fx = fixtures();
    let mut lenz = true;
    for partner in [&fx.electric, &fx.paramagnetic, &fx.diamagnetic, &a] {
        let with_p = engine.pair_curve(partner, &fx.paramagnetic, &grid).unwrap();
        let with_d = engine.pair_curve(partner, &fx.diamagnetic, &grid).unwrap();
        for k in ResponseKind::ALL {
            let p = with_p.channel(Channel::Pair(k, P)).unwrap();
            let d = with_d.channel(Channel::Pair(k, D)).unwrap();
            let present = p.iter().any(|v| *v != 0.0);
            if present {
                lenz &= p.iter().zip(d).all(|(x, y)| x * y < 0.0);
            }
        }
    }

    let mut additivity: f64 = 0.0;
    for &l in &grid {
        let split = engine.vdw_pair(&a, &b, l).unwrap();
        let direct = engine.vdw_free_total(&a, &b, l).unwrap();
        additivity = additivity.max(rel(split.total, direct));
    }

    let spec = QuadratureSpec::default();
    let mut oracle: f64 = 0.0;
    for depth in geometric(0.01, 10.0, 16) {
        for plate in PLATES {
            let closed = green::mirror_gmm_trace(1.0, depth, plate, 1.0).unwrap();
            let q = green::mirror_gmm_trace_via_q_integral(1.0, depth, plate, 1.0, &spec).unwrap();
            oracle = oracle.max(rel(q, closed));
        }
    }
    Outcome {
        pass: symmetric && lenz && additivity <= 1e-12 && oracle <= 1e-8,
        detail: format!(
            "A<->B bitwise {symmetric}; Lenz flip {lenz}; additivity {additivity:.2e} (tol 1e-12); q-integral {oracle:.2e} (tol 1e-8)"
        ),
    }
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "1 mirror diamagnetic closed form",
            Box::new(|| timed(Duration::from_secs(1), mirror_diamagnetic)),
        ),
        (
            "2 dd channel exactness",
            Box::new(|| timed(Duration::from_secs(1), dd_exactness)),
        ),
        (
            "3 de asymptotes",
            Box::new(|| {
                timed(Duration::from_secs(5), || {
                    diamagnetic_asymptotes(E, (-5.0, -7.0))
                })
            }),
        ),
        (
            "4 dp asymptotes",
            Box::new(|| {
                timed(Duration::from_secs(5), || {
                    diamagnetic_asymptotes(P, (-6.0, -7.0))
                })
            }),
        ),
        (
            "5 table reproduction",
            Box::new(|| timed(Duration::from_secs(30), tables)),
        ),
        ("6 oracle identities", Box::new(oracle_identities)),
        ("7 structural properties", Box::new(structural)),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let out = check();
        if !out.pass {
            failures += 1;
        }
        println!(
            "criterion {name}: {} ({})",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
