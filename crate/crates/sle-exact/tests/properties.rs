// Field-axiom and calculus properties of the rational-function kernel,
// plus structural invariants of the correlation tower.

use proptest::prelude::*;
use sle_exact::poly::Polynomial;
use sle_exact::sampling::{random_ratfun, XorShift64};
use sle_exact::ward::evolution_defect_level;
use sle_exact::{
    apply_l, commutator_defect, degeneracy_apply, x, AlphaSpec, CorrelationFamily, Rat, RatFun,
};

fn three(seed: u64) -> (RatFun, RatFun, RatFun) {
    let mut rng = XorShift64::new(seed);
    (
        random_ratfun(&mut rng, 3),
        random_ratfun(&mut rng, 3),
        random_ratfun(&mut rng, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn addition_associative_and_commutative(seed in 1u64..u64::MAX) {
        let (f, g, h) = three(seed);
        prop_assert!(( &(&f + &g) + &h == &f + &(&g + &h)));
        prop_assert!(&f + &g == &g + &f);
    }

    #[test]
    fn multiplication_distributes(seed in 1u64..u64::MAX) {
        let (f, g, h) = three(seed);
        let lhs = &f * &(&g + &h);
        let rhs = &(&f * &g) + &(&f * &h);
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn additive_and_multiplicative_inverses(seed in 1u64..u64::MAX) {
        let (f, _, _) = three(seed);
        prop_assert!((&f - &f).is_zero());
        if !f.is_zero() {
            let q = f.div(&f).unwrap();
            prop_assert!(q.is_one());
        }
    }

    #[test]
    fn derivative_product_rule(seed in 1u64..u64::MAX) {
        let (f, g, _) = three(seed);
        let v = x(1);
        let lhs = (&f * &g).diff(v);
        let rhs = &(&f.diff(v) * &g) + &(&f * &g.diff(v));
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn mixed_partials_commute(seed in 1u64..u64::MAX) {
        let (f, _, _) = three(seed);
        let a = f.diff(x(1)).diff(x(2));
        let b = f.diff(x(2)).diff(x(1));
        prop_assert!((&a - &b).is_zero());
    }

    #[test]
    fn commutator_identity_random_modes(
        seed in 1u64..u64::MAX,
        m in -3i64..=3,
        n in -3i64..=3,
    ) {
        let (f, _, _) = three(seed);
        let d = commutator_defect(m, n, &Rat::from_integer(2.into()), 3, &f);
        prop_assert!(d.is_zero(), "[{m},{n}] defect {d}");
    }
}

fn fixed_family(height: usize) -> CorrelationFamily {
    let mut fam = CorrelationFamily::seed(AlphaSpec::Fixed(Rat::new(5.into(), 8.into())));
    fam.extend_to(height);
    fam
}

#[test]
fn tower_build_is_deterministic() {
    let a = fixed_family(4);
    let b = fixed_family(4);
    for n in 0..=4 {
        assert_eq!(a.level(n), b.level(n));
    }
}

#[test]
fn tower_levels_are_permutation_symmetric() {
    let fam = fixed_family(4);
    // B3 under all transpositions of x1..x3, B4 under adjacent ones
    let swaps3 = [(1usize, 2usize), (1, 3), (2, 3)];
    for (i, j) in swaps3 {
        let swapped = fam.level(3).rename(|v| {
            if v == x(i) {
                x(j)
            } else if v == x(j) {
                x(i)
            } else {
                v
            }
        });
        assert!((&swapped - fam.level(3)).is_zero(), "B3 swap {i}<->{j}");
    }
    for (i, j) in [(1usize, 2usize), (2, 3), (3, 4)] {
        let swapped = fam.level(4).rename(|v| {
            if v == x(i) {
                x(j)
            } else if v == x(j) {
                x(i)
            } else {
                v
            }
        });
        assert!((&swapped - fam.level(4)).is_zero(), "B4 swap {i}<->{j}");
    }
}

#[test]
fn poles_have_order_at_most_two() {
    let fam = fixed_family(4);
    for n in 1..=4usize {
        let den = fam.level(n).den();
        for j in 1..=n {
            // pole at x_j = 0: power of x_j dividing the denominator
            assert!(den.min_degree_in(x(j)) <= 2, "B{n} pole at x{j}=0");
            // pole at x_i = x_j: multiplicity of the difference factor
            for i in 1..j {
                let factor = &Polynomial::var(x(i)) - &Polynomial::var(x(j));
                let mut rem = den.clone();
                let mut mult = 0;
                while let Some(q) = rem.exact_div(&factor) {
                    rem = q;
                    mult += 1;
                }
                assert!(mult <= 2, "B{n} pole at x{i}=x{j} has order {mult}");
            }
        }
    }
}

#[test]
fn zero_mode_annihilates_all_levels() {
    // L_0 B_n = 0: each B_n is x-homogeneous of degree -2n with weight 2
    let fam = fixed_family(4);
    for n in 1..=4 {
        assert!(apply_l(0, n, fam.level(n)).is_zero(), "L_0 B{n}");
    }
}

#[test]
fn degeneracy_and_evolution_vanish_at_the_derived_constants() {
    let fam = fixed_family(4);
    let kappa = RatFun::constant(Rat::new(8.into(), 3.into()));
    let s = Rat::from_integer(2.into());
    for n in 1..=4 {
        assert!(
            evolution_defect_level(fam.level(n), n, &kappa, &s).is_zero(),
            "evolution level {n}"
        );
        assert!(degeneracy_apply(&kappa, n, fam.level(n)).is_zero(), "degeneracy level {n}");
    }
}
