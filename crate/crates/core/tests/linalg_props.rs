mod common;

use common::*;
use opineq::linalg::{hermitian_eigenvalues, operator_norm_squared, psd_sqrt};
use opineq::{
    abs_operator, adjoint, hermitian_eigen, imag_part, operator_norm, real_part, singular_values, ComplexMatrix,
    ToleranceConfig, C64,
};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn det(a: &ComplexMatrix) -> C64 {
    let n = a.rows();
    if n == 1 {
        return a.get(0, 0);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<C64> = (1..n)
                .flat_map(|i| (0..n).filter(move |&k| k != j).map(move |k| (i, k)))
                .map(|(i, k)| a.get(i, k))
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            a.get(0, j) * sign * det(&ComplexMatrix::new(n - 1, n - 1, minor).unwrap())
        })
        .sum()
}

#[test]
fn adjoint_examples() {
    let i = ComplexMatrix::new(1, 1, vec![C64::new(0.0, 1.0)]).unwrap();
    assert_eq!(adjoint(&i).get(0, 0), C64::new(0.0, -1.0));
    assert_eq!(adjoint(&ComplexMatrix::identity(2)), ComplexMatrix::identity(2));
    assert_eq!(
        adjoint(&real(&[&[3.0, 3.0], &[-3.0, 2.0]])),
        real(&[&[3.0, -3.0], &[3.0, 2.0]])
    );
}

#[test]
fn cartesian_examples() {
    let a = real(&[&[3.0, 2.0], &[-2.0, -3.0]]);
    assert_eq!(real_part(&a).unwrap(), real(&[&[3.0, 0.0], &[0.0, -3.0]]));
    let im = imag_part(&a).unwrap();
    assert_eq!(im.get(0, 1), C64::new(0.0, -2.0));
    assert_eq!(im.get(1, 0), C64::new(0.0, 2.0));
    let b = real(&[&[-1.0, 3.0], &[-3.0, -2.0]]);
    assert_eq!(real_part(&b).unwrap(), real(&[&[-1.0, 0.0], &[0.0, -2.0]]));
    let h = real(&[&[1.0, 2.0], &[2.0, 5.0]]);
    assert_eq!(real_part(&h).unwrap(), h);
    assert!(imag_part(&h).unwrap().is_zero());
    assert!(real_part(&ComplexMatrix::zeros(2, 3)).is_err());
}

#[test]
fn spectral_examples() {
    let e = hermitian_eigen(&real(&[&[13.0, 12.0], &[12.0, 13.0]]), &cfg()).unwrap();
    assert!((e.eigenvalues[0] - 25.0).abs() < 1e-12 && (e.eigenvalues[1] - 1.0).abs() < 1e-12);
    let sv = singular_values(&real(&[&[2.0, 3.0], &[-6.0, 1.0]]));
    assert!((sv[0] - 40f64.sqrt()).abs() < 1e-12 && (sv[1] - 10f64.sqrt()).abs() < 1e-12);
    assert!(singular_values(&ComplexMatrix::zeros(3, 2)).iter().all(|&s| s == 0.0));
    assert_eq!(operator_norm(&ComplexMatrix::from_real_diagonal(&[3.0, -1.0])), 3.0);
    let t1 = real(&[&[3.0, 3.0], &[-3.0, 2.0]]);
    let t2 = real(&[&[-1.0, 0.0], &[-3.0, -1.0]]);
    assert!((operator_norm(&(&t1 + &t2)) - 40f64.sqrt()).abs() < 1e-12);
    assert!((operator_norm(&t1) - ((31.0 + 61f64.sqrt()) / 2.0).sqrt()).abs() < 1e-12);
    let abs = abs_operator(&ComplexMatrix::from_real_diagonal(&[-4.0, 2.0]), &cfg()).unwrap();
    assert!(abs.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[4.0, 2.0])) < 1e-14);
    let c = real(&[&[-2.0, 1.0], &[0.0, -2.0]]);
    let a = abs_operator(&c, &cfg()).unwrap();
    assert!((&a * &a).max_abs_diff(&real(&[&[4.0, -2.0], &[-2.0, 5.0]])) < 1e-12);
    let p = real(&[&[2.0, 1.0], &[1.0, 2.0]]);
    assert!(psd_sqrt(&p, &cfg())
        .map(|r| (&r * &r).max_abs_diff(&p) < 1e-13)
        .unwrap());
    assert!(psd_sqrt(&real(&[&[1.0, 0.0], &[0.0, -1.0]]), &cfg()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_of_gram(a in square_in(1..=6)) {
        let n2 = operator_norm(&a).powi(2);
        let g = operator_norm(&a.gram());
        prop_assert!((n2 - g).abs() <= 1e-9 * g.max(1e-300));
        prop_assert!((operator_norm_squared(&a) - g).abs() <= 1e-9 * g.max(1e-300));
        prop_assert!((operator_norm(&a.adjoint()) - operator_norm(&a)).abs() <= 1e-12 * (1.0 + n2));
    }

    #[test]
    fn cartesian_decomposition(a in square_in(1..=6)) {
        let re = real_part(&a).unwrap();
        let im = imag_part(&a).unwrap();
        prop_assert!(re.hermitian_deviation() <= 1e-12);
        prop_assert!(im.hermitian_deviation() <= 1e-12);
        let back = &re + &im.scale(C64::new(0.0, 1.0));
        prop_assert!(back.max_abs_diff(&a) <= 1e-15 * (1.0 + a.max_abs()));
        prop_assert_eq!(adjoint(&adjoint(&a)), a);
    }

    #[test]
    fn singular_values_of_adjoint(a in rect_in(1..=6)) {
        let s = singular_values(&a);
        let t = singular_values(&a.adjoint());
        prop_assert_eq!(s.len(), a.rows().min(a.cols()));
        prop_assert_eq!(s.len(), t.len());
        for (x, y) in s.iter().zip(&t) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + s[0]));
        }
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]) && s.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn abs_squared_is_gram(a in square_in(1..=8)) {
        let m = abs_operator(&a, &cfg()).unwrap();
        prop_assert!(m.hermitian_deviation() <= 1e-12 * (1.0 + m.frobenius_norm()));
        let g = a.gram();
        prop_assert!((&m * &m).max_abs_diff(&g) <= 1e-8 * (1.0 + g.max_abs()));
        let ev = hermitian_eigenvalues(&m, &cfg()).unwrap();
        prop_assert!(*ev.last().unwrap() >= -1e-10 * (1.0 + ev[0]));
    }

    #[test]
    fn eigen_invariants(a in square_in(1..=4)) {
        let h = real_part(&a).unwrap();
        let e = hermitian_eigen(&h, &cfg()).unwrap();
        let n = h.rows();
        let scale = 1.0 + operator_norm(&h);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let trace = h.trace().re;
        let sum: f64 = e.eigenvalues.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-10 * scale * n as f64);
        let d = det(&h);
        let prod: f64 = e.eigenvalues.iter().product();
        prop_assert!((d.re - prod).abs() <= 1e-8 * scale.powi(n as i32));
        prop_assert!(d.im.abs() <= 1e-8 * scale.powi(n as i32));
        let v = &e.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        for k in 0..n {
            let x = e.eigenvector(k);
            for i in 0..n {
                let hx: C64 = (0..n).map(|j| h.get(i, j) * x[j]).sum();
                prop_assert!((hx - x[i] * e.eigenvalues[k]).norm() <= 1e-10 * scale);
            }
        }
    }
}
