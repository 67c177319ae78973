//! Fixtures shared by the benchmarks.

use osserman_core::{
    constant_curvature_tensor, gram_tensor, model_curvature, model_inner_product, CurvatureTensor,
    InnerProduct, RatMatrix, Rational,
};

/// Model tensor with a nontrivial UUUU block and a generic `g_ab`.
pub fn model(s: usize) -> (CurvatureTensor, InnerProduct) {
    let phi = RatMatrix::from_fn(s, s, |i, j| Rational::from(((i + 2 * j + i * j) % 5) as i64 - 2));
    let phi = phi.add(&phi.transpose()).expect("square");
    let r1 = gram_tensor(&phi).expect("symmetric");
    let r = model_curvature(&r1, &constant_curvature_tensor(s)).expect("valid inputs");
    let g_ab = RatMatrix::from_fn(s, s, |i, j| Rational::from((i + j) as i64 % 3 - 1));
    (r, model_inner_product(s, &g_ab).expect("symmetric"))
}

pub fn direction(dim: usize) -> Vec<Rational> {
    (0..dim).map(|i| Rational::from((i as i64 * 7 + 3) % 11 - 5)).collect()
}
