#![allow(dead_code)]

use opineq::{ComplexMatrix, C64};
use proptest::collection::vec;
use proptest::prelude::*;

pub fn entry() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| C64::new(re, im))
}

pub fn square(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    vec(entry(), dim * dim).prop_map(move |d| ComplexMatrix::new(dim, dim, d).unwrap())
}

pub fn square_in(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ComplexMatrix> {
    dims.prop_flat_map(square)
}

pub fn rect_in(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ComplexMatrix> {
    (dims.clone(), dims)
        .prop_flat_map(|(r, c)| vec(entry(), r * c).prop_map(move |d| ComplexMatrix::new(r, c, d).unwrap()))
}

/// `count` square matrices of one common dimension.
pub fn tuple_in(
    dims: std::ops::RangeInclusive<usize>,
    count: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<ComplexMatrix>> {
    (dims, count).prop_flat_map(|(d, n)| vec(square(d), n))
}

pub fn pair_in(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (ComplexMatrix, ComplexMatrix)> {
    dims.prop_flat_map(|d| (square(d), square(d)))
}

/// Unitary matrix built as a product of complex Givens rotations.
pub fn unitary(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    vec((0..dim, 0..dim, 0.0f64..6.3, 0.0f64..6.3), 3 * dim).prop_map(move |rots| {
        let mut u = ComplexMatrix::identity(dim);
        for (p, q, angle, phase) in rots {
            if p == q {
                continue;
            }
            let mut g = ComplexMatrix::identity(dim).into_entries();
            let (c, s) = (angle.cos(), angle.sin());
            let e = C64::from_polar(1.0, phase);
            g[p * dim + p] = C64::new(c, 0.0);
            g[q * dim + q] = C64::new(c, 0.0);
            g[p * dim + q] = -e.conj() * s;
            g[q * dim + p] = e * s;
            u = &u * &ComplexMatrix::new(dim, dim, g).unwrap();
        }
        u
    })
}

pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).unwrap()
}
