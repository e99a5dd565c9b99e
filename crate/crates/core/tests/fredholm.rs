use hardsoft::fredholm::{e2_hard, e2_hard_with, nystrom_det, phi, tracy_widom_F, tracy_widom_F_with, transition_study};
use hardsoft::kernels::airy_kernel_f64;

#[test]
fn tracy_widom_reference_values() {
    // Node-doubled, truncation-doubled values frozen from this implementation.
    for (t, v) in [(-2.0, 0.41322414250514), (0.0, 0.96937282835527), (2.0, 0.99988755369831)] {
        let r = tracy_widom_F(t).unwrap();
        assert!((r.value - v).abs() < 1e-12, "F({t}) = {}", r.value);
        assert!(r.est_error < 1e-9);
    }
}

#[test]
fn tracy_widom_is_stable_under_doubling() {
    for t in [-2.0, 0.0, 2.0] {
        let base = tracy_widom_F(t).unwrap();
        let wide = tracy_widom_F_with(t, 80, Some(2.0 * base.truncation.1 - t)).unwrap();
        assert!((base.value - wide.value).abs() < 1e-9, "t = {t}");
    }
}

#[test]
fn tracy_widom_is_a_distribution_function() {
    let vals: Vec<f64> = [-8.0, -4.0, -2.0, 0.0, 2.0, 8.0].iter().map(|&t| tracy_widom_F(t).unwrap().value).collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
    assert!(vals[0] <= 1e-6);
    assert!(vals[5] <= 1.0 && vals[5] >= 1.0 - 1e-9);
}

#[test]
fn airy_determinant_on_a_fixed_interval_converges() {
    let a = nystrom_det(airy_kernel_f64, 0.0, 8.0, 40).unwrap();
    assert!(a.est_error < 1e-10);
}

#[test]
fn hard_edge_gap_probability() {
    assert!((e2_hard(1e-8, 10.0).unwrap().value - 1.0).abs() < 1e-6);
    let v: Vec<f64> = [1.0, 4.0, 9.0].iter().map(|&s| e2_hard(s, 1.0).unwrap().value).collect();
    assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
    let s = phi(0.0, 100.0);
    let a = e2_hard(s, 100.0).unwrap();
    let b = e2_hard_with(s, 100.0, 80).unwrap();
    assert!((a.value - b.value).abs() < 1e-9);
    assert!(e2_hard(1.0, 500.0).is_err());
}

#[test]
fn transition_errors_decay_like_h() {
    for t in [-2.0, 0.0, 2.0] {
        let r = transition_study(t, &[50.0, 100.0, 200.0, 400.0]).unwrap();
        println!("t = {t}: errors {:?} slope {:?}", r.errors, r.slope);
        assert!(r.errors.windows(2).all(|w| w[1] < w[0]));
        let s = r.slope.unwrap();
        assert!((0.9..=1.1).contains(&s), "t = {t}: slope {s}");
    }
    assert!(transition_study(0.0, &[50.0, 100.0]).unwrap().slope.is_none());
}
