use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::ExactError;
use crate::gcd::{gcd, monic};
use crate::poly::Polynomial;
use crate::var::Var;
use crate::Rat;

/// Reduced rational function over Q in the global variables.
///
/// Canonical form: gcd(num, den) = 1 and den is monic under grlex, so two
/// `RatFun` represent the same function iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl RatFun {
    pub fn new(num: Polynomial, den: Polynomial) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun {
                num,
                den: Polynomial::one(),
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn zero() -> RatFun {
        RatFun::from_poly(Polynomial::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> RatFun {
        RatFun {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rat) -> RatFun {
        RatFun::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun::from_poly(Polynomial::from_int(n))
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::from_poly(Polynomial::var(v))
    }

    /// `v^e` with any integer exponent.
    pub fn var_ipow(v: Var, e: i64) -> RatFun {
        if e >= 0 {
            RatFun::from_poly(Polynomial::var_pow(v, e as u32))
        } else {
            RatFun {
                num: Polynomial::one(),
                den: Polynomial::var_pow(v, (-e) as u32),
            }
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Variables occurring in numerator or denominator, ascending.
    pub fn support(&self) -> Vec<Var> {
        let mut vars = self.num.support();
        for v in self.den.support() {
            if let Err(pos) = vars.binary_search(&v) {
                vars.insert(pos, v);
            }
        }
        vars
    }

    pub fn inverse(&self) -> Result<RatFun, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFun::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun, ExactError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<RatFun, ExactError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact quotient-rule derivative, reduced.
    pub fn diff(&self, v: Var) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        let dn = self.num.diff(v);
        let dd = self.den.diff(v);
        if dd.is_zero() {
            return RatFun::new(dn, self.den.clone());
        }
        // split off the repeated part of the denominator first:
        // den = g*u with g = gcd(den, den'), so f' = (n'*u - n*(den'/g)) / (den*u)
        let g = gcd(&self.den, &dd);
        let u = self.den.exact_div(&g).expect("gcd divides");
        let w = dd.exact_div(&g).expect("gcd divides");
        let p = &(&dn * &u) - &(&self.num * &w);
        RatFun::new(p, &self.den * &u)
    }

    /// Substitute a rational constant for `v`; errors when the denominator
    /// vanishes identically under the substitution.
    pub fn subst(&self, v: Var, val: &Rat) -> Result<RatFun, ExactError> {
        let den = self.den.subst(v, val);
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFun::new(self.num.subst(v, val), den))
    }

    /// Rename variables; `f` must be injective on the support.
    pub fn rename<F: Fn(Var) -> Var + Copy>(&self, f: F) -> RatFun {
        // renaming permutes monomial order, so renormalize
        RatFun::new(self.num.rename(f), self.den.rename(f))
    }

    /// Evaluate at rational points given as `(var, value)` pairs covering
    /// the whole support; used by the numeric side and by test oracles.
    pub fn eval(&self, point: &[(Var, Rat)]) -> Result<Rat, ExactError> {
        let mut r = self.clone();
        for (v, val) in point {
            r = r.subst(*v, val)?;
        }
        r.as_constant().ok_or(ExactError::DivisionByZero)
    }

    /// `f` is homogeneous of degree `d` in its x-variables when every
    /// numerator/denominator term pair scales the same way.
    pub fn x_homogeneity_degree(&self) -> Option<i64> {
        fn xdeg(p: &Polynomial) -> Option<i64> {
            let mut degs = p.terms().map(|(m, _)| {
                m.exps()
                    .iter()
                    .filter(|(v, _)| v.x_index().is_some())
                    .map(|&(_, e)| e as i64)
                    .sum::<i64>()
            });
            let d0 = degs.next()?;
            degs.all(|d| d == d0).then_some(d0)
        }
        Some(xdeg(&self.num)? - xdeg(&self.den)?)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let d = gcd(&self.den, &rhs.den);
        let (qa, qb) = if d.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (
                rhs.den.exact_div(&d).expect("gcd divides"),
                self.den.exact_div(&d).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &qa) + &(&rhs.num * &qb);
        let den = &self.den * &qa;
        RatFun::new(num, den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // cross-reduce so the final pair is already coprime
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let mut den = &d1 * &d2;
        let lc = den.leading_coeff();
        let num = if lc.is_one() {
            num
        } else {
            den = monic(&den);
            num.scale(&(Rat::one() / lc))
        };
        RatFun { num, den }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::{x, VAR_A};

    fn xr(i: usize) -> RatFun {
        RatFun::var(x(i))
    }

    fn a() -> RatFun {
        RatFun::var(VAR_A)
    }

    #[test]
    fn additive_inverse() {
        // 1/x + (-1/x) = 0
        let f = RatFun::var_ipow(x(1), -1);
        assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn multiplicative_inverse() {
        // (a/x^2) * (x^2/a) = 1
        let f = a().div(&xr(1).pow(2).unwrap()).unwrap();
        assert!((&f * &f.inverse().unwrap()).is_one());
    }

    #[test]
    fn cross_multiply_reduce() {
        // 1/(x1-x) + 1/x = x1/(x*(x1-x)), with x := x2 here
        let x1 = xr(1);
        let xx = xr(2);
        let lhs = &(&x1 - &xx).inverse().unwrap() + &xx.inverse().unwrap();
        let rhs = x1.div(&(&xx * &(&x1 - &xx))).unwrap();
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn quotient_rule() {
        // d/dx (a/x^2) = -2a/x^3
        let f = a().div(&xr(1).pow(2).unwrap()).unwrap();
        let df = f.diff(x(1));
        let expect = a().scale(&Rat::from_integer((-2).into()))
            .div(&xr(1).pow(3).unwrap())
            .unwrap();
        assert!((&df - &expect).is_zero());
    }

    #[test]
    fn diff_constant_and_chain() {
        assert!(RatFun::constant(Rat::new(5.into(), 8.into())).diff(x(1)).is_zero());
        // d/dx1 1/(x1-x2) = -1/(x1-x2)^2
        let f = (&xr(1) - &xr(2)).inverse().unwrap();
        let expect = -&(&xr(1) - &xr(2)).pow(2).unwrap().inverse().unwrap();
        assert!((&f.diff(x(1)) - &expect).is_zero());
    }

    #[test]
    fn factorization_identity_is_zero() {
        // (x1^2 - x2^2)/((x1-x2)(x1+x2)) - 1 = 0
        let n = &(&xr(1) * &xr(1)) - &(&xr(2) * &xr(2));
        let d = &(&xr(1) - &xr(2)) * &(&xr(1) + &xr(2));
        let f = &n.div(&d).unwrap() - &RatFun::one();
        assert!(f.is_zero());
        // while a/x^2 with symbolic a is not
        assert!(!a().div(&xr(1).pow(2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            RatFun::one().div(&RatFun::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_display() {
        let f = a()
            .scale(&Rat::new(5.into(), 8.into()))
            .div(&xr(1).pow(2).unwrap())
            .unwrap();
        assert_eq!(f.to_string(), "((5/8)*a)/(x1^2)");
    }

    #[test]
    fn homogeneity_degree() {
        let b1 = a().div(&xr(1).pow(2).unwrap()).unwrap();
        assert_eq!(b1.x_homogeneity_degree(), Some(-2));
        let f = &b1 + &xr(1);
        assert_eq!(f.x_homogeneity_degree(), None);
    }
}
