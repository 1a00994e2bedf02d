//! Real-axis crossing of a core pole in the parity model: the amplitudes
//! diverge at the crossing while the nontrivial S-matrix eigenvalue stays finite.

use smx_core::amplitudes::{amplitudes, s_eigenvalues};
use smx_core::models::{make_model, ModelKind, SeparableModel};
use smx_core::poles::find_poles;
use smx_core::units::ComplexMomentum;

fn parity(b: f64) -> SeparableModel {
    make_model(ModelKind::ParityPseudoHermitian, 1.0, 0.5, b).unwrap()
}

/// Signed height of the right-half-plane pole closest to the real axis.
fn nearest_height(b: f64) -> (f64, f64) {
    let q = find_poles(&parity(b))
        .unwrap()
        .into_iter()
        .map(|p| p.q.value())
        .filter(|q| q.re > 1e-6)
        .min_by(|x, y| x.im.abs().total_cmp(&y.im.abs()))
        .expect("a pole with positive real part");
    (q.im, q.re)
}

fn crossing() -> (f64, f64) {
    let (mut lo, mut hi) = (1.4, 1.6);
    let below = nearest_height(lo).0 < 0.0;
    assert_ne!(below, nearest_height(hi).0 < 0.0, "no sign change in the bracket");
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (nearest_height(mid).0 < 0.0) == below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = 0.5 * (lo + hi);
    (b, nearest_height(b).1)
}

fn largest_amplitude(m: &SeparableModel, p: f64) -> f64 {
    let a = amplitudes(m, ComplexMomentum::real(p).unwrap(), false).unwrap();
    [a.tl, a.tr, a.rl, a.rr].iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn pole_crosses_real_axis_in_b_sweep() {
    let (b, p) = crossing();
    assert!((1.4..1.6).contains(&b), "{b}");
    assert!(p > 0.0);
    assert!(nearest_height(b).0.abs() < 1e-10);
}

#[test]
fn amplitudes_diverge_but_eigenvalue_stays_finite_at_crossing() {
    let (b, p) = crossing();
    let m = parity(b);
    let far = largest_amplitude(&m, p - 1e-2);
    let near = largest_amplitude(&m, p - 1e-6);
    assert!(near > 1e3 * far, "amplitudes {far} -> {near}");
    let s1 = |x: f64| s_eigenvalues(&amplitudes(&m, ComplexMomentum::real(x).unwrap(), false).unwrap()).unwrap().s1;
    let (coarse, fine) = (s1(p - 1e-2), s1(p - 1e-6));
    assert!(fine.norm() < 10.0, "{fine}");
    assert!((fine - coarse).norm() < 0.1, "{coarse} -> {fine}");
}
