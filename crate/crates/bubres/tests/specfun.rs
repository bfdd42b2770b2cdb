use bubres::specfun::{bessel_j, bessel_j_deriv, bessel_y, hankel1, hankel1_deriv, MAX_ARG, MAX_ORDER};
use bubres::{Error, C64};
use proptest::prelude::*;
use std::f64::consts::PI;

fn arg() -> impl Strategy<Value = C64> {
    (0.01f64..20.0, -0.74 * PI..0.74 * PI).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #[test]
    fn wronskian(z in arg(), n in 0u32..=10) {
        let (j, dj) = (bessel_j(n, z).unwrap(), bessel_j_deriv(n, z).unwrap());
        let (h, dh) = (hankel1(n, z).unwrap(), hankel1_deriv(n, z).unwrap());
        let exact = C64::new(0.0, 2.0) / (PI * z);
        let scale = exact.norm().max((j * dh).norm() + (dj * h).norm());
        prop_assert!((j * dh - dj * h - exact).norm() <= 1e-10 * scale);
    }

    #[test]
    fn three_term_recurrence(z in arg(), n in 1u32..10) {
        let nf = f64::from(n);
        let j = |m| bessel_j(m, z).unwrap();
        let h = |m| hankel1(m, z).unwrap();
        let sj = j(n - 1) + j(n + 1);
        prop_assert!((sj - j(n) * 2.0 * nf / z).norm() <= 1e-9 * (sj.norm() + j(n).norm() * 2.0 * nf / z.norm()));
        let sh = h(n - 1) + h(n + 1);
        prop_assert!((sh - h(n) * 2.0 * nf / z).norm() <= 1e-9 * (sh.norm() + h(n).norm() * 2.0 * nf / z.norm()));
    }

    #[test]
    fn conjugate_symmetry(z in arg(), n in 0u32..=10) {
        let a = bessel_j(n, z.conj()).unwrap();
        let b = bessel_j(n, z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1e-300));
        if z.im != 0.0 {
            let ya = bessel_y(n, z.conj()).unwrap();
            let yb = bessel_y(n, z).unwrap().conj();
            prop_assert!((ya - yb).norm() <= 1e-10 * yb.norm());
        }
    }
}

#[test]
fn reference_values() {
    // J0, Y0, J1, Y1 at real arguments from an independent double-precision library
    let cases = [
        (1.0, 0.7651976865579665, 0.08825696421567697, 0.44005058574493355, -0.7812128213002888),
        (5.0, -0.1775967713143383, -0.30851762524903303, -0.3275791375914653, 0.14786314339122691),
        (10.0, -0.24593576445134832, 0.05567116728359961, 0.04347274616886141, 0.24901542420695388),
    ];
    for (x, j0, y0, j1, y1) in cases {
        let z = C64::new(x, 0.0);
        for (got, want) in [
            (bessel_j(0, z).unwrap(), j0),
            (bessel_y(0, z).unwrap(), y0),
            (bessel_j(1, z).unwrap(), j1),
            (bessel_y(1, z).unwrap(), y1),
        ] {
            assert!((got.re - want).abs() < 1e-14 * want.abs().max(1.0), "{x}: {got} vs {want}");
        }
    }
}

#[test]
fn domain_guard() {
    let z = C64::new(1.0, 0.0);
    assert!(matches!(bessel_j(MAX_ORDER + 1, z), Err(Error::Domain { .. })));
    assert!(bessel_j(0, C64::new(MAX_ARG, 0.0)).is_err());
    assert!(bessel_y(0, C64::new(0.0, 0.0)).is_err());
    assert!(hankel1(1, C64::new(-2.0, 0.0)).is_err());
    assert!(bessel_j(0, C64::new(-2.0, 0.0)).is_ok());
    assert!(hankel1(0, C64::new(f64::NAN, 0.0)).is_err());
}
