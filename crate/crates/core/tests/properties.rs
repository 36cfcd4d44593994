use approx::assert_relative_eq;
use proptest::prelude::*;

use dispersion_core::asymptotics::log_slopes;
use dispersion_core::green::{self, dyadic, PlateKind};
use dispersion_core::potentials::{force_on_grid, Channel, Engine, ResponseKind};
use dispersion_core::quad::{integrate_semiinf, QuadratureSpec};
use dispersion_core::response::{
    alpha_iso, beta_para_iso, beta_total, AtomModel, DiamagneticSpec, Transition,
};
use dispersion_core::units::UnitSystem;

use ResponseKind::{Diamagnetic as D, Electric as E, Paramagnetic as P};

fn natural() -> Engine {
    Engine::new(UnitSystem::Natural)
}

fn transitions() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.05f64..20.0, 0.01f64..5.0), 1..4)
}

fn atom_from(electric: &[(f64, f64)], magnetic: &[(f64, f64)], beta_d: f64) -> AtomModel {
    AtomModel::new(
        "prop",
        electric
            .iter()
            .map(|&(w, s)| Transition::electric(w, s).unwrap())
            .collect(),
        magnetic
            .iter()
            .map(|&(w, s)| Transition::magnetic(w, s).unwrap())
            .collect(),
        DiamagneticSpec::Direct(beta_d),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn responses_are_positive_and_monotone(ts in transitions(), xi1 in 0.0f64..50.0, dxi in 1e-3f64..50.0) {
        let atom = atom_from(&ts, &ts, -0.5);
        let (a1, a2) = (alpha_iso(&atom, xi1, 1.0).unwrap(), alpha_iso(&atom, xi1 + dxi, 1.0).unwrap());
        prop_assert!(a1 > 0.0 && a2 > 0.0 && a2 < a1);
        let (b1, b2) = (beta_para_iso(&atom, xi1, 1.0).unwrap(), beta_para_iso(&atom, xi1 + dxi, 1.0).unwrap());
        prop_assert!(b2 < b1);
        prop_assert_eq!(beta_total(&atom, xi1, 1.0).unwrap() - b1, -0.5);
    }

    #[test]
    fn responses_scale_linearly(ts in transitions(), s in 0.1f64..10.0, xi in 0.0f64..10.0) {
        let scaled: Vec<(f64, f64)> = ts.iter().map(|&(w, d)| (w, s * d)).collect();
        let a = alpha_iso(&atom_from(&ts, &[], 0.0), xi, 1.0).unwrap();
        let b = alpha_iso(&atom_from(&scaled, &[], 0.0), xi, 1.0).unwrap();
        assert_relative_eq!(b, s * a, max_relative = 1e-14);
    }

    #[test]
    fn kernel_identities(x in 0.0f64..10.0) {
        let (f, g) = green::fg(x);
        let expanded = 0.5 * (3.0 * f * f - 2.0 * f * g + g * g);
        let poly = 3.0 + 6.0 * x + 5.0 * x * x + 2.0 * x.powi(3) + x.powi(4);
        assert_relative_eq!(expanded, poly, max_relative = 1e-12);
        assert_relative_eq!(green::h2(x), (1.0 + 2.0 * x + x * x) * (-2.0 * x).exp(), max_relative = 1e-12);
        prop_assert!(green::h1(x) <= 3.0 * (1.0 + x).powi(4) * (-2.0 * x).exp());
    }

    #[test]
    fn traces_match_tensors_and_are_reciprocal(
        a in prop::array::uniform3(-3.0f64..3.0),
        b in prop::array::uniform3(-3.0f64..3.0),
        xi in 0.0f64..5.0,
    ) {
        let l = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        prop_assume!(l > 1e-3);
        let mm = green::trace_gmm_gmm_free(l, xi, 1.0).unwrap();
        assert_relative_eq!(dyadic::brute_trace_gmm_gmm(&a, &b, xi, 1.0), mm, max_relative = 1e-12);
        assert_relative_eq!(dyadic::brute_trace_gmm_gmm(&b, &a, xi, 1.0), mm, max_relative = 1e-12);
        let em = green::trace_gme_gem_free(l, xi, 1.0).unwrap();
        let brute = dyadic::brute_trace_gem_gme(&a, &b, xi, 1.0);
        prop_assert!((brute - em).abs() <= 1e-12 * em.abs().max(1e-300));
    }

    #[test]
    fn mirror_traces_flip_with_plate(z in 0.01f64..10.0, xi in 0.0f64..10.0) {
        let cond = green::mirror_gmm_trace(z, xi, PlateKind::PerfectlyConducting, 1.0).unwrap();
        let perm = green::mirror_gmm_trace(z, xi, PlateKind::InfinitelyPermeable, 1.0).unwrap();
        prop_assert_eq!(cond, -perm);
        prop_assert!(cond >= 0.0);
        let gee = green::mirror_gee_trace(z, xi, PlateKind::PerfectlyConducting, 1.0).unwrap();
        prop_assert_eq!(gee + cond, 0.0);
    }

    #[test]
    fn quadrature_is_linear(a in -5.0f64..5.0, b in -5.0f64..5.0, k in 0.2f64..3.0) {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (-k * x).exp() * (1.0 + x);
        let g = |x: f64| green::h1(x);
        let rf = integrate_semiinf(f, &spec).unwrap();
        let rg = integrate_semiinf(g, &spec).unwrap();
        let rs = integrate_semiinf(|x| a * f(x) + b * g(x), &spec).unwrap();
        let bound = 2.0 * (a.abs() * rf.error_estimate + b.abs() * rg.error_estimate + rs.error_estimate);
        prop_assert!((rs.value - (a * rf.value + b * rg.value)).abs() <= bound.max(1e-15));
    }

    #[test]
    fn tightening_tolerance_stays_in_interval(k in 0.3f64..3.0, w in 0.01f64..5.0) {
        let f = |x: f64| x * x * green::h2(k * x) * w / (w * w + x * x);
        let loose = integrate_semiinf(f, &QuadratureSpec::default().with_rel_tol(1e-5)).unwrap();
        let tight = integrate_semiinf(f, &QuadratureSpec::default().with_rel_tol(1e-12)).unwrap();
        prop_assert!((tight.value - loose.value).abs() <= loose.error_estimate);
    }

    #[test]
    fn slope_estimator_exact_on_power_laws(n in -10.0f64..0.0, amp in -5.0f64..5.0, start in 1e-3f64..1e3) {
        prop_assume!(amp.abs() > 1e-3);
        let d: Vec<f64> = (0..8).map(|i| start * 1.01f64.powi(i)).collect();
        let v: Vec<f64> = d.iter().map(|x| amp * x.powf(n)).collect();
        let p = log_slopes(&d, &v).unwrap();
        prop_assert_eq!(p.exponent.len(), 6);
        for s in &p.exponent {
            prop_assert!((s - n).abs() < 1e-6);
        }
    }

    #[test]
    fn lenz_rule_flips_mixed_channels(w in 0.1f64..10.0, m in 0.1f64..5.0, beta in 0.1f64..5.0, l in 1e-2f64..1e2) {
        let engine = natural();
        let para = AtomModel::paramagnetic("p", w, m).unwrap();
        let dia = AtomModel::diamagnetic("d", -beta).unwrap();
        let partner = atom_from(&[(1.0, 1.5)], &[(0.7, 0.4)], -0.3);
        for k in ResponseKind::ALL {
            let up = engine.vdw_channel(&partner, &para, k, P, l).unwrap();
            let ud = engine.vdw_channel(&partner, &dia, k, D, l).unwrap();
            prop_assert!(up * ud < 0.0, "{:?}: {} vs {}", k, up, ud);
        }
    }

    #[test]
    fn diamagnetic_channels_share_electric_signs(w in 0.1f64..10.0, l in 1e-2f64..1e2) {
        let engine = natural();
        let e = AtomModel::electric("e", w, 1.5).unwrap();
        let p = AtomModel::paramagnetic("p", w, 1.5).unwrap();
        let d = AtomModel::diamagnetic("d", -1.0).unwrap();
        let ee = engine.vdw_channel(&e, &e, E, E, l).unwrap();
        let ed = engine.vdw_channel(&e, &d, E, D, l).unwrap();
        let dd = engine.vdw_channel(&d, &d, D, D, l).unwrap();
        let pe = engine.vdw_channel(&p, &e, P, E, l).unwrap();
        let dp = engine.vdw_channel(&d, &p, D, P, l).unwrap();
        prop_assert!(ee < 0.0 && ed < 0.0 && dd < 0.0);
        prop_assert!(pe > 0.0 && dp > 0.0);
    }

    #[test]
    fn pair_symmetry_is_bitwise(l in 1e-2f64..1e2) {
        let engine = natural();
        let a = atom_from(&[(1.0, 1.5), (2.5, 0.3)], &[(0.4, 0.8)], -0.6);
        let b = atom_from(&[(0.3, 0.9)], &[(3.0, 1.1)], -1.7);
        let ab = engine.vdw_pair(&a, &b, l).unwrap();
        let ba = engine.vdw_pair(&b, &a, l).unwrap();
        for x in ResponseKind::ALL {
            for y in ResponseKind::ALL {
                prop_assert_eq!(ab.get(x, y).to_bits(), ba.get(y, x).to_bits());
            }
        }
        prop_assert_eq!(ab.total.to_bits(), ba.total.to_bits());
    }
}

#[test]
fn quadrature_scale_invariance() {
    let spec = QuadratureSpec::default();
    let base = integrate_semiinf(green::h1, &spec.clone().with_decay_scale(0.5)).unwrap();
    for s in [0.1, 10.0] {
        let r = integrate_semiinf(
            |x| green::h1(x / s) / s,
            &spec.clone().with_decay_scale(0.5 * s),
        )
        .unwrap();
        assert_relative_eq!(r.value, base.value, max_relative = 1e-10);
    }
}

#[test]
fn dd_is_monotone_attraction() {
    let engine = natural();
    let a = AtomModel::diamagnetic("a", -1.0).unwrap();
    let grid: Vec<f64> = (0..40).map(|i| 0.05 * 1.3f64.powi(i)).collect();
    let curve = engine.pair_curve(&a, &a, &grid).unwrap();
    let dd = curve.channel(Channel::Pair(D, D)).unwrap();
    assert!(dd.iter().all(|v| *v < 0.0));
    assert!(dd.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn dd_force_ratio() {
    let engine = natural();
    let a = AtomModel::diamagnetic("a", -1.0).unwrap();
    let grid: Vec<f64> = (0..30).map(|i| 0.2 * 1.02f64.powi(i)).collect();
    let curve = engine.pair_curve(&a, &a, &grid).unwrap();
    let u = curve.channel(Channel::Pair(D, D)).unwrap();
    let f = force_on_grid(&grid, u).unwrap();
    for i in 1..grid.len() - 1 {
        assert_relative_eq!(f[i] / u[i], 7.0 / grid[i], max_relative = 1e-2);
    }
}

#[test]
fn quartic_force() {
    let grid: Vec<f64> = (0..50).map(|i| 1.0 + 0.01 * i as f64).collect();
    let u: Vec<f64> = grid.iter().map(|z| -2.0 / z.powi(4)).collect();
    let f = force_on_grid(&grid, &u).unwrap();
    for i in 1..grid.len() - 1 {
        assert_relative_eq!(f[i], -8.0 / grid[i].powi(5), max_relative = 1e-3);
    }
    assert!(force_on_grid(&grid, &[0.0; 50])
        .unwrap()
        .iter()
        .all(|v| *v == 0.0));
    assert!(force_on_grid(&grid[..2], &u[..2]).is_err());
}
