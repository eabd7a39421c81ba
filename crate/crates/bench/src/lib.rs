//! Deterministic inputs for the benchmarks.

use lagrel::lagrangian as lag;
use lagrel::scalar::q;
use lagrel::{Calculus, Diagram, Field, LagRel, Matrix, C};

/// A dense `n × n` Gaussian-rational matrix with small, varied entries.
pub fn dense(n: usize) -> Matrix<C> {
    Matrix::from_fn(n, n, |i, j| {
        let k = (i * 7 + j * 3 + 1) as i64;
        C::new(q(k % 11 - 5, k % 4 + 1), q(k % 5 - 2, 3))
    })
}

/// A chain of `len` one-mode symplectic graphs, alternating shears and squeezes.
pub fn chain(len: usize) -> Vec<LagRel> {
    (0..len)
        .map(|k| {
            let a = C::int(k as i64 % 3 + 2);
            if k % 2 == 0 {
                lag::squeeze(&a)
            } else {
                lag::grey_spider(1, 1, &C::zero(), &a)
            }
        })
        .collect()
}

/// A correlated `n`-mode state from a dense symmetric phase matrix.
pub fn state(n: usize) -> LagRel {
    let phi = Matrix::from_fn(n, n, |i, j| C::new(q((i + j) as i64 % 3 - 1, 2), q(if i == j { 2 } else { 0 }, 1)));
    let s = Matrix::hstack(&[&Matrix::identity(n), &phi.neg()]).unwrap();
    LagRel::from_constraints(0, n, &s, &vec![C::int(1); n]).unwrap()
}

/// The synthesized normal form of [`state`].
pub fn diagram(n: usize) -> Diagram {
    lagrel::diagram::synth::synthesize_normal_form(&state(n), Calculus::Gsa).unwrap()
}
