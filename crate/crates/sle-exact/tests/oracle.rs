// Independent cross-check of the symbolic defects: everything here is
// spelled out from the closed forms of the first two correlation levels,
// on purpose without going through the tower or operator modules.

use sle_exact::{x, Rat, RatFun, VAR_A, VAR_K};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn b1_closed_form() -> RatFun {
    // a / x1^2
    RatFun::var(VAR_A)
        .div(&RatFun::var_ipow(x(1), 2))
        .unwrap()
}

fn b2_closed_form() -> RatFun {
    // a^2/(x1^2 x2^2) + 2a/(x1 x2 (x2 - x1)^2)
    let a = RatFun::var(VAR_A);
    let x1 = RatFun::var(x(1));
    let x2 = RatFun::var(x(2));
    let t1 = (&a * &a)
        .div(&(&(&x1 * &x1) * &(&x2 * &x2)))
        .unwrap();
    let gap = &x2 - &x1;
    let t2 = a
        .scale(&rat(2, 1))
        .div(&(&(&x1 * &x2) * &(&gap * &gap)))
        .unwrap();
    &t1 + &t2
}

/// Generator of the driven evolution at criticality, written out term by
/// term: sum_j [ -4/x_j^2 + (2/x_j) d_j ] + (k/2) (sum_j d_j)^2.
fn evolution_operator(f: &RatFun, n: usize) -> RatFun {
    let mut out = RatFun::zero();
    for j in 1..=n {
        out = &out + &(&RatFun::var_ipow(x(j), -2).scale(&rat(-4, 1)) * f);
        out = &out
            + &(&RatFun::var_ipow(x(j), -1).scale(&rat(2, 1)) * &f.diff(x(j)));
    }
    let mut grad = RatFun::zero();
    for j in 1..=n {
        grad = &grad + &f.diff(x(j));
    }
    let mut hess = RatFun::zero();
    for j in 1..=n {
        hess = &hess + &grad.diff(x(j));
    }
    &out + &(&RatFun::var(VAR_K).scale(&rat(1, 2)) * &hess)
}

/// Weight-2 lowering operators, again written out directly.
fn l_minus_1(f: &RatFun, n: usize) -> RatFun {
    let mut out = RatFun::zero();
    for j in 1..=n {
        out = &out - &f.diff(x(j));
    }
    out
}

fn l_minus_2(f: &RatFun, n: usize) -> RatFun {
    let mut out = RatFun::zero();
    for j in 1..=n {
        out = &out - &(&RatFun::var_ipow(x(j), -1) * &f.diff(x(j)));
        out = &out + &(&RatFun::var_ipow(x(j), -2).scale(&rat(2, 1)) * f);
    }
    out
}

fn degeneracy(f: &RatFun, n: usize, kappa: &RatFun) -> RatFun {
    let l1l1 = l_minus_1(&l_minus_1(f, n), n);
    let l2 = l_minus_2(f, n);
    &(&kappa.scale(&rat(1, 2)) * &l1l1) - &l2.scale(&rat(2, 1))
}

fn swap12(f: &RatFun) -> RatFun {
    f.rename(|v| {
        if v == x(1) {
            x(2)
        } else if v == x(2) {
            x(1)
        } else {
            v
        }
    })
}

#[test]
fn level1_evolution_defect_closed_form() {
    // a (3k - 8) / x1^4
    let d = evolution_operator(&b1_closed_form(), 1);
    let a = RatFun::var(VAR_A);
    let k = RatFun::var(VAR_K);
    let expect = (&a * &(&k.scale(&rat(3, 1)) - &RatFun::constant(rat(8, 1))))
        .div(&RatFun::var_ipow(x(1), 4))
        .unwrap();
    assert!((&d - &expect).is_zero(), "got {d}");
}

#[test]
fn level2_evolution_defect_closed_form_at_k_8_3() {
    // with k = 8/3: (4a/3)(8a - 5) / (x1^3 x2^3), symmetrized over the
    // two pole orderings -- the closed form quoted is for x1 < x2
    let d = evolution_operator(&b2_closed_form(), 2)
        .subst(VAR_K, &rat(8, 3))
        .unwrap();
    let a = RatFun::var(VAR_A);
    let expect = (&a.scale(&rat(4, 3))
        * &(&a.scale(&rat(8, 1)) - &RatFun::constant(rat(5, 1))))
        .div(&(&RatFun::var_ipow(x(1), 3) * &RatFun::var_ipow(x(2), 3)))
        .unwrap();
    assert!((&d - &expect).is_zero(), "got {d}");
    // and the defect is symmetric, as the tower is
    assert!((&swap12(&d) - &d).is_zero());
}

#[test]
fn degeneracy_vanishes_exactly_at_8_3_and_5_8() {
    let kap = RatFun::constant(rat(8, 3));
    for (f, n) in [(b1_closed_form(), 1usize), (b2_closed_form(), 2)] {
        let fixed = f.subst(VAR_A, &rat(5, 8)).unwrap();
        let d = degeneracy(&fixed, n, &kap);
        assert!(d.is_zero(), "level {n}: {d}");
        // generic weight does not vanish
        let generic = degeneracy(&f.subst(VAR_A, &rat(1, 2)).unwrap(), n, &kap);
        if n == 2 {
            assert!(!generic.is_zero());
        }
    }
}

#[test]
fn level1_degeneracy_defect_symbolic() {
    // ((k/2) L_{-1}^2 - 2 L_{-2}) B1 = a (3k - 8) / x1^4
    let d = degeneracy(&b1_closed_form(), 1, &RatFun::var(VAR_K));
    let a = RatFun::var(VAR_A);
    let k = RatFun::var(VAR_K);
    let expect = (&a * &(&k.scale(&rat(3, 1)) - &RatFun::constant(rat(8, 1))))
        .div(&RatFun::var_ipow(x(1), 4))
        .unwrap();
    assert!((&d - &expect).is_zero(), "got {d}");
}
