//! Deterministic generation of small random rational functions for
//! randomized identity sweeps (commutation, linearity, ring laws).

use crate::poly::Polynomial;
use crate::ratfun::RatFun;
use crate::var::x;
use crate::Rat;

/// Tiny xorshift generator; keeps the exact crate free of RNG deps while
/// making every randomized sweep reproducible from a stated seed.
#[derive(Clone, Debug)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64 {
            state: seed.max(1),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut s = self.state;
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        self.state = s;
        s
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// nonzero integer in [-4, 4]
    fn small_int(&mut self) -> i64 {
        let v = self.below(8) as i64 - 4;
        if v >= 0 {
            v + 1
        } else {
            v
        }
    }
}

/// A random rational function in `x_1..x_n` with small integer
/// coefficients and a denominator built from poles at the origin and at
/// coincident points.
pub fn random_ratfun(rng: &mut XorShift64, n_vars: usize) -> RatFun {
    assert!(n_vars >= 1);
    // numerator: 1-3 small terms
    let mut num = Polynomial::zero();
    for _ in 0..=rng.below(2) {
        let mut term = Polynomial::constant(Rat::from_integer(rng.small_int().into()));
        for j in 1..=n_vars {
            let e = rng.below(3) as u32;
            term = &term * &Polynomial::var_pow(x(j), e);
        }
        num = &num + &term;
    }
    if num.is_zero() {
        num = Polynomial::one();
    }
    // denominator: product of up to 3 linear factors x_j or x_i - x_j
    let mut den = Polynomial::one();
    for _ in 0..=rng.below(3) {
        let j = 1 + rng.below(n_vars as u64) as usize;
        let f = if n_vars >= 2 && rng.below(2) == 0 {
            let mut i = 1 + rng.below(n_vars as u64) as usize;
            if i == j {
                i = if j == 1 { 2 } else { j - 1 };
            }
            &Polynomial::var(x(j)) - &Polynomial::var(x(i))
        } else {
            Polynomial::var(x(j))
        };
        let e = 1 + rng.below(2) as u32;
        den = &den * &f.pow(e);
    }
    RatFun::new(num, den)
}
