use nsk_core::diagnostics::{fit_decay, kanel_functionals, HeatKernelPair};
use nsk_core::model::{
    effective_heat_capacity, phi_entropy, CoefficientModel, Family, ThetaWindow, ThermoParams,
};
use nsk_core::waves::{curve_velocity, solve_middle_states, Burgers, EndStates, WaveState};
use nsk_core::Grid;
use proptest::prelude::*;

fn thermo_strategy() -> impl Strategy<Value = ThermoParams> {
    (0.3..3.0f64, 1.05..1.8f64, 0.2..5.0f64).prop_map(|(r, g, a)| ThermoParams::new(r, g, a).unwrap())
}

fn default_strategy() -> impl Strategy<Value = CoefficientModel> {
    (0.1..3.0f64, 0.01..2.0f64, 0.1..3.0f64, 0.0..0.05f64).prop_map(|(mu0, kappa0, alpha0, eps)| {
        CoefficientModel::Default {
            mu0,
            kappa0,
            alpha0,
            eps,
            k1: 1.0,
        }
    })
}

fn model_strategy() -> impl Strategy<Value = CoefficientModel> {
    prop_oneof![
        default_strategy(),
        (0.1..3.0f64, 0.01..2.0f64, 0.1..3.0f64)
            .prop_map(|(mu, kappa, alpha)| CoefficientModel::Constant { mu, kappa, alpha }),
        (0.1..3.0f64, 0.0..2.0f64, 0.01..2.0f64, 0.0..3.0f64, 0.1..3.0f64).prop_map(
            |(mu0, mu_exp, kappa0, kappa_exp, alpha0)| CoefficientModel::PowerLaw {
                mu0,
                mu_exp,
                kappa0,
                kappa_exp,
                alpha0,
            }
        ),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn entropy_roundtrip(th in thermo_strategy(), v in 0.05..20.0f64, theta in 0.05..20.0f64) {
        let s = th.entropy(v, theta).unwrap();
        prop_assert!(rel(th.temp_from_entropy(v, s).unwrap(), theta) < 1e-12);
        prop_assert!(rel(th.pressure_from_entropy(v, s).unwrap(), th.pressure(v, theta).unwrap()) < 1e-12);
    }

    #[test]
    fn entropy_function_is_nonnegative(s in 1e-3..1e3f64) {
        prop_assert!(phi_entropy(s).unwrap() >= 0.0);
    }

    #[test]
    fn burgers_bounded_monotone_and_solved(
        wm in -2.0..2.0f64,
        span in 0.01..3.0f64,
        x in -100.0..100.0f64,
        dx in 1e-3..5.0f64,
        t in 0.0..200.0f64,
    ) {
        let b = Burgers::new(wm, wm + span).unwrap();
        let w1 = b.eval(x, t);
        let w2 = b.eval(x + dx, t);
        prop_assert!(w1 >= wm && w1 <= wm + span);
        prop_assert!(w2 >= w1 - 1e-13);
        prop_assert!(b.implicit_residual(w1, x, t).abs() < 1e-12);
    }

    #[test]
    fn middle_states_satisfy_contact_conditions(
        dv in 0.0..0.15f64,
        du in 0.0..0.1f64,
        dth in -0.02..0.02f64,
        th in 0.5..2.0f64,
    ) {
        let thermo = ThermoParams::new(1.0, 1.4, 1.0).unwrap();
        // Pushing the right state apart from the left keeps both waves expansive.
        let ends = EndStates::new([1.0, 0.0, th], [1.0 + dv, du + dv, th + dth]);
        let m = match solve_middle_states(&ends, &thermo) {
            Ok(m) => m,
            Err(_) => return Ok(()),
        };
        let pm = thermo.pressure(m.v_minus, m.theta_minus).unwrap();
        let pp = thermo.pressure(m.v_plus, m.theta_plus).unwrap();
        prop_assert!(rel(pm, m.p) < 1e-10 && rel(pp, m.p) < 1e-10);
        let sl = thermo.entropy(ends.v_minus, ends.theta_minus).unwrap();
        let sr = thermo.entropy(ends.v_plus, ends.theta_plus).unwrap();
        prop_assert!(rel(thermo.entropy(m.v_minus, m.theta_minus).unwrap(), sl) < 1e-10);
        prop_assert!(rel(thermo.entropy(m.v_plus, m.theta_plus).unwrap(), sr) < 1e-10);
        let ul = curve_velocity(&thermo, Family::Minus, ends.v_minus, ends.u_minus, sl, m.v_minus).unwrap();
        let ur = curve_velocity(&thermo, Family::Plus, ends.v_plus, ends.u_plus, sr, m.v_plus).unwrap();
        prop_assert!((ul - m.u).abs() < 1e-10 && (ur - m.u).abs() < 1e-10);
        prop_assert!(m.p <= thermo.pressure(ends.v_minus, ends.theta_minus).unwrap());
        prop_assert!(m.p <= thermo.pressure(ends.v_plus, ends.theta_plus).unwrap());
    }

    #[test]
    fn coefficient_partials_match_differences(m in model_strategy(), v in 0.3..3.0f64, th in 0.3..3.0f64) {
        let h = 1e-6;
        let p = m.eval(v, th);
        let dv = |f: &dyn Fn(f64, f64) -> f64| (f(v + h, th) - f(v - h, th)) / (2.0 * h);
        let dt = |f: &dyn Fn(f64, f64) -> f64| (f(v, th + h) - f(v, th - h)) / (2.0 * h);
        prop_assert!(rel(p.mu_v, dv(&|a, b| m.mu(a, b))) < 1e-6);
        prop_assert!(rel(p.mu_theta, dt(&|a, b| m.mu(a, b))) < 1e-6);
        prop_assert!(rel(p.kappa_v, dv(&|a, b| m.kappa(a, b))) < 1e-6);
        prop_assert!(rel(p.kappa_theta, dt(&|a, b| m.kappa(a, b))) < 1e-6);
        prop_assert!(rel(p.kappa_thetatheta, dt(&|a, b| m.eval(a, b).kappa_theta)) < 1e-6);
        prop_assert!(rel(p.kappa_vtheta, dv(&|a, b| m.eval(a, b).kappa_theta)) < 1e-6);
        prop_assert!(rel(p.alpha_v, dv(&|a, b| m.alpha_tilde(a, b))) < 1e-6);
        prop_assert!(rel(p.alpha_theta, dt(&|a, b| m.alpha_tilde(a, b))) < 1e-6);
    }

    #[test]
    fn default_family_has_no_coupling(m in default_strategy(), v in 0.05..10.0f64, th in 0.1..3.0f64) {
        let scale = m.kappa(v, th).abs() * m.mu(v, th);
        prop_assert!(m.g_coupling(v, th).abs() <= 1e-13 * (1.0 + scale));
    }

    #[test]
    fn effective_heat_capacity_exceeds_cv(
        thermo in thermo_strategy(),
        m in default_strategy(),
        v in 0.2..5.0f64,
        th in 0.2..3.0f64,
        v_x in -5.0..5.0f64,
    ) {
        prop_assert!(effective_heat_capacity(&thermo, &m, v, th, v_x).unwrap() >= thermo.cv());
    }

    #[test]
    fn kanel_cauchy_schwarz(
        m in default_strategy(),
        amp in -0.5..0.8f64,
        k in 0.2..3.0f64,
        w in 0.5..3.0f64,
    ) {
        let grid = Grid::new(10.0, 401).unwrap();
        let big_v = grid.sample(|x| 1.0 + 0.1 * x.tanh());
        let v: Vec<f64> = grid
            .nodes()
            .iter()
            .zip(&big_v)
            .map(|(&x, bv)| bv * (1.0 + amp * (-(x / w).powi(2)).exp() * (k * x).cos()))
            .collect();
        let r = kanel_functionals(&v, &big_v, &m, ThetaWindow::from_bounds(0.9, 1.1), &grid).unwrap();
        prop_assert!(r.bound_holds());
    }

    #[test]
    fn fit_recovers_power_laws(a in 0.01..100.0f64, k in -3.0..1.0f64) {
        let t: Vec<f64> = (0..20).map(|i| 5.0 * i as f64).collect();
        let y: Vec<f64> = t.iter().map(|&t| a * (1.0 + t).powf(k)).collect();
        let fit = fit_decay(&t, &y).unwrap();
        prop_assert!((fit.slope - k).abs() < 1e-10);
        prop_assert!(rel(fit.amplitude(), a) < 1e-9);
    }

    #[test]
    fn heat_kernel_identity(alpha in 0.01..10.0f64, delta in 0.01..1.0f64, x in -50.0..50.0f64, t in 0.0..1e3f64) {
        let p = HeatKernelPair::new(alpha, delta).unwrap();
        prop_assert!((4.0 * alpha * p.g_t(t, x) - delta * p.w_x(t, x)).abs() < 1e-12);
        prop_assert!(p.g(t, x) >= 0.0 && p.g(t, x) <= p.g_sup() * (1.0 + 1e-15));
    }

    #[test]
    fn wave_state_sum_and_difference(a in prop::array::uniform3(-5.0..5.0f64), b in prop::array::uniform3(-5.0..5.0f64)) {
        let x = WaveState::constant(a[0], a[1], a[2]);
        let y = WaveState::constant(b[0], b[1], b[2]);
        let z = (x + y) - y;
        prop_assert!((z.v - x.v).abs() < 1e-14 && (z.u - x.u).abs() < 1e-14 && (z.theta - x.theta).abs() < 1e-14);
        prop_assert_eq!((x - x).v, 0.0);
    }
}
