use std::collections::BTreeMap;

use crate::error::ExactError;
use crate::poly::Polynomial;
use crate::ratfun::RatFun;
use crate::var::Var;

/// Finite window of a Laurent expansion around `var = 0`; coefficients are
/// exact rational functions of the remaining variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub var: Var,
    pub min_order: i64,
    pub max_order: i64,
    coeffs: BTreeMap<i64, RatFun>,
}

impl LaurentSeries {
    pub fn coeff(&self, order: i64) -> RatFun {
        self.coeffs.get(&order).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn nonzero_orders(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    /// The truncated sum as a rational function, for round-trip checks.
    pub fn reconstruct(&self) -> RatFun {
        let mut acc = RatFun::zero();
        for (&o, c) in &self.coeffs {
            acc = &acc + &(c * &RatFun::var_ipow(self.var, o));
        }
        acc
    }
}

/// Expand `f` around `var = 0` and report the exact coefficients of every
/// order in `[k_min, k_max]`.
///
/// Works whenever `f` has at most a finite-order pole at `var = 0`, i.e.
/// its denominator is `var^p * q` with `q(var=0)` not identically zero.
pub fn laurent_expand(
    f: &RatFun,
    var: Var,
    k_min: i64,
    k_max: i64,
) -> Result<LaurentSeries, ExactError> {
    assert!(k_min <= k_max);
    let mut coeffs = BTreeMap::new();
    if f.is_zero() {
        return Ok(LaurentSeries {
            var,
            min_order: k_min,
            max_order: k_max,
            coeffs,
        });
    }
    let p = f.den().min_degree_in(var) as i64;
    let q = f
        .den()
        .exact_div(&Polynomial::var_pow(var, p as u32))
        .expect("var^p divides denominator");
    let q0 = q.subst(var, &crate::Rat::from_integer(0.into()));
    if q0.is_zero() {
        // cannot happen for a reduced denominator after factoring var^p,
        // but keep the contract explicit
        return Err(ExactError::EssentialSingularity(
            f.to_string(),
            var.to_string(),
        ));
    }

    // power-series division num / q up to order k_max + p
    let top = k_max + p;
    if top >= 0 {
        let num_c = f.num().coeffs_in(var);
        let q_c = q.coeffs_in(var);
        let q0_r = RatFun::from_poly(q_c[0].clone());
        let mut series: Vec<RatFun> = Vec::with_capacity(top as usize + 1);
        for m in 0..=(top as usize) {
            let mut acc = num_c
                .get(m)
                .map(|p| RatFun::from_poly(p.clone()))
                .unwrap_or_else(RatFun::zero);
            for i in 1..=m.min(q_c.len() - 1) {
                if q_c[i].is_zero() || series[m - i].is_zero() {
                    continue;
                }
                acc = &acc - &(&RatFun::from_poly(q_c[i].clone()) * &series[m - i]);
            }
            series.push(acc.div(&q0_r).expect("q(0) nonzero"));
        }
        for order in k_min..=k_max {
            let m = order + p;
            if m < 0 {
                continue;
            }
            let c = &series[m as usize];
            if !c.is_zero() {
                coeffs.insert(order, c.clone());
            }
        }
    }
    Ok(LaurentSeries {
        var,
        min_order: k_min,
        max_order: k_max,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::{x, VAR_A};
    use crate::Rat;

    fn xr(i: usize) -> RatFun {
        RatFun::var(x(i))
    }

    #[test]
    fn geometric_series() {
        // 1/(x*(x1-x)) with x := x2 as expansion variable
        let xx = xr(2);
        let f = RatFun::one().div(&(&xx * &(&xr(1) - &xx))).unwrap();
        let s = laurent_expand(&f, x(2), -2, 1).unwrap();
        assert!(s.coeff(-2).is_zero());
        assert_eq!(s.coeff(-1), xr(1).inverse().unwrap());
        assert_eq!(s.coeff(0), xr(1).pow(2).unwrap().inverse().unwrap());
        assert_eq!(s.coeff(1), xr(1).pow(3).unwrap().inverse().unwrap());
    }

    #[test]
    fn pure_pole() {
        // a/x^2: only order -2 present
        let f = RatFun::var(VAR_A).div(&xr(1).pow(2).unwrap()).unwrap();
        let s = laurent_expand(&f, x(1), -3, 0).unwrap();
        assert_eq!(s.coeff(-2), RatFun::var(VAR_A));
        assert!(s.coeff(-3).is_zero());
        assert!(s.coeff(-1).is_zero());
        assert!(s.coeff(0).is_zero());
    }

    #[test]
    fn b2_coefficients() {
        // B2(x, x1) = a^2/(x^2 x1^2) + 2a/(x*x1*(x1-x)^2), x := x2... but the
        // expansion variable must be the first argument, so take x := x1 and
        // the spectator x1 := x2.
        let a = RatFun::var(VAR_A);
        let xx = xr(1);
        let x1 = xr(2);
        let t1 = (&a * &a)
            .div(&(&xx.pow(2).unwrap() * &x1.pow(2).unwrap()))
            .unwrap();
        let t2 = a
            .scale(&Rat::from_integer(2.into()))
            .div(&(&(&xx * &x1) * &(&x1 - &xx).pow(2).unwrap()))
            .unwrap();
        let b2 = &t1 + &t2;
        let s = laurent_expand(&b2, x(1), -3, 0).unwrap();
        assert!(s.coeff(-3).is_zero());
        // alpha * B1(x1)
        assert_eq!(s.coeff(-2), (&a * &a).div(&x1.pow(2).unwrap()).unwrap());
        assert_eq!(
            s.coeff(-1),
            a.scale(&Rat::from_integer(2.into()))
                .div(&x1.pow(3).unwrap())
                .unwrap()
        );
        assert_eq!(
            s.coeff(0),
            a.scale(&Rat::from_integer(4.into()))
                .div(&x1.pow(4).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn round_trip_divisibility() {
        // f - truncation has var-valuation > max_order
        let f = RatFun::one()
            .div(&(&xr(2) * &(&xr(1) - &xr(2))))
            .unwrap();
        let s = laurent_expand(&f, x(2), -1, 4).unwrap();
        let diff = &f - &s.reconstruct();
        let val = diff.num().min_degree_in(x(2)) as i64 - diff.den().min_degree_in(x(2)) as i64;
        assert!(val >= 5, "valuation {} too small", val);
    }
}
