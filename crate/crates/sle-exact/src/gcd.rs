//! Multivariate gcd over Q by content extraction and a subresultant
//! polynomial remainder sequence in the lowest present variable.

use crate::poly::Polynomial;
use crate::var::Var;
use crate::Rat;
use num_traits::One;

/// Monic (leading coefficient 1 under grlex) associate.
pub fn monic(f: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return Polynomial::zero();
    }
    let lc = f.leading_coeff();
    f.scale(&(Rat::one() / lc))
}

pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return monic(g);
    }
    if g.is_zero() {
        return monic(f);
    }
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return Polynomial::one();
    }
    // cheap outs: equal or divides
    if f == g {
        return monic(f);
    }
    if f.exact_div(g).is_some() {
        return monic(g);
    }
    if g.exact_div(f).is_some() {
        return monic(f);
    }

    // fast path for this problem domain: denominators are products of
    // linear forms x_j and x_i - x_j, so one side usually factors fully
    // into linears and the gcd reduces to trial division
    let (first, second) = if f.num_terms() <= g.num_terms() {
        (f, g)
    } else {
        (g, f)
    };
    if let Some(d) = linear_factor_gcd(first, second).or_else(|| linear_factor_gcd(second, first))
    {
        return d;
    }

    let v = main_var(f, g);
    if !f.contains_var(v) {
        return gcd(f, &content(g, v));
    }
    if !g.contains_var(v) {
        return gcd(&content(f, v), g);
    }

    let cf = content(f, v);
    let cg = content(g, v);
    let ppf = f.exact_div(&cf).expect("content divides");
    let ppg = g.exact_div(&cg).expect("content divides");
    let cd = gcd(&cf, &cg);
    let pp = subresultant_gcd(&ppf, &ppg, v);
    monic(&(&cd * &pp))
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Polynomial {
    let mut acc = Polynomial::zero();
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Try to factor `p` completely as `c * prod(linear^e)` over the candidate
/// forms `v` and `u - v` (and `u + v`) drawn from its support.
fn factor_linears(p: &Polynomial) -> Option<(Vec<(Polynomial, u32)>, Rat)> {
    let vars = p.support();
    let mut candidates: Vec<Polynomial> = Vec::new();
    for (i, &u) in vars.iter().enumerate() {
        candidates.push(Polynomial::var(u));
        for &v in &vars[i + 1..] {
            candidates.push(&Polynomial::var(u) - &Polynomial::var(v));
            candidates.push(&Polynomial::var(u) + &Polynomial::var(v));
        }
    }
    let mut rem = p.clone();
    let mut factors = Vec::new();
    for c in candidates {
        let mut e = 0u32;
        while let Some(q) = rem.exact_div(&c) {
            rem = q;
            e += 1;
        }
        if e > 0 {
            factors.push((c, e));
        }
        if rem.as_constant().is_some() {
            break;
        }
    }
    rem.as_constant().map(|c| (factors, c))
}

/// gcd when `f` factors fully into candidate linears: trial-divide `g`.
fn linear_factor_gcd(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let (factors, _) = factor_linears(f)?;
    let mut out = Polynomial::one();
    let mut g = g.clone();
    for (c, ef) in factors {
        let mut e = 0u32;
        while e < ef {
            match g.exact_div(&c) {
                Some(q) => {
                    g = q;
                    e += 1;
                }
                None => break,
            }
        }
        for _ in 0..e {
            out = &out * &c;
        }
    }
    Some(monic(&out))
}

/// gcd of the univariate-in-`v` coefficients (a polynomial free of `v`).
pub fn content(f: &Polynomial, v: Var) -> Polynomial {
    gcd_many(f.coeffs_in(v).iter().filter(|p| !p.is_zero()))
}

fn main_var(f: &Polynomial, g: &Polynomial) -> Var {
    let sf = f.support();
    let sg = g.support();
    *sf.iter().chain(sg.iter()).min().expect("nonconstant input")
}

// dense univariate over Polynomial coefficients
type UPoly = Vec<Polynomial>;

fn to_upoly(f: &Polynomial, v: Var) -> UPoly {
    f.coeffs_in(v)
}

fn trim(mut u: UPoly) -> UPoly {
    while u.last().is_some_and(|p| p.is_zero()) {
        u.pop();
    }
    u
}

fn udeg(u: &UPoly) -> usize {
    u.len().saturating_sub(1)
}

fn uscale(u: &UPoly, c: &Polynomial) -> UPoly {
    u.iter().map(|p| p * c).collect()
}

fn usub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let zero = Polynomial::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let pa = a.get(i).unwrap_or(&zero);
        let pb = b.get(i).unwrap_or(&zero);
        out.push(pa - pb);
    }
    trim(out)
}

fn ushift(u: &UPoly, k: usize) -> UPoly {
    let mut out = vec![Polynomial::zero(); k];
    out.extend(u.iter().cloned());
    out
}

fn udiv_coeffs(u: &UPoly, d: &Polynomial) -> UPoly {
    u.iter()
        .map(|p| p.exact_div(d).expect("subresultant division is exact"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` premultiplied by `lc(b)^(deg a - deg b + 1)`.
fn pseudo_rem(a: &UPoly, b: &UPoly, _v: Var) -> UPoly {
    let db = udeg(b);
    let lcb = b[db].clone();
    let mut r = a.clone();
    let mut e = udeg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && udeg(&r) >= db {
        let dr = udeg(&r);
        let lr = r[dr].clone();
        let sub = uscale(&ushift(b, dr - db), &lr);
        r = usub(&uscale(&r, &lcb), &sub);
        e -= 1;
    }
    let mut mult = Polynomial::one();
    for _ in 0..e.max(0) {
        mult = &mult * &lcb;
    }
    uscale(&r, &mult)
}

/// gcd of two `v`-primitive polynomials via the subresultant PRS.
fn subresultant_gcd(f: &Polynomial, g: &Polynomial, v: Var) -> Polynomial {
    let mut a = to_upoly(f, v);
    let mut b = to_upoly(g, v);
    if udeg(&a) < udeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut gg = Polynomial::one();
    let mut hh = Polynomial::one();
    loop {
        let delta = udeg(&a) - udeg(&b);
        let r = pseudo_rem(&a, &b, v);
        if r.is_empty() {
            let bp = Polynomial::from_coeffs_in(v, &b);
            let c = content(&bp, v);
            return bp.exact_div(&c).expect("content divides");
        }
        if udeg(&r) == 0 {
            // coprime primitive parts
            return Polynomial::one();
        }
        a = b;
        let mut div = gg.clone();
        for _ in 0..delta {
            div = &div * &hh;
        }
        b = udiv_coeffs(&r, &div);
        gg = a[udeg(&a)].clone();
        if delta > 0 {
            let mut gp = Polynomial::one();
            for _ in 0..delta {
                gp = &gp * &gg;
            }
            let mut hp = Polynomial::one();
            for _ in 0..delta.saturating_sub(1) {
                hp = &hp * &hh;
            }
            hh = gp.exact_div(&hp).expect("subresultant h-division is exact");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::x;

    fn xv(i: usize) -> Polynomial {
        Polynomial::var(x(i))
    }

    #[test]
    fn gcd_univariate() {
        // (x1-1)^2 (x1+2) vs (x1-1)(x1+3)
        let a = &(&xv(1) - &Polynomial::one()).pow(2) * &(&xv(1) + &Polynomial::from_int(2));
        let b = &(&xv(1) - &Polynomial::one()) * &(&xv(1) + &Polynomial::from_int(3));
        let d = gcd(&a, &b);
        let expect = &xv(1) - &Polynomial::one();
        assert!((&d - &expect).is_zero());
    }

    #[test]
    fn gcd_multivariate() {
        // common factor (x1 - x2)^2
        let f = &(&xv(1) - &xv(2)).pow(2) * &xv(1).pow(3);
        let g = &(&xv(1) - &xv(2)).pow(3) * &xv(2);
        let d = gcd(&f, &g);
        let expect = (&xv(1) - &xv(2)).pow(2);
        assert!((&d - &expect).is_zero());
    }

    #[test]
    fn gcd_coprime() {
        let f = &xv(1).pow(2) + &xv(2);
        let g = &xv(1) + &xv(2).pow(2);
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_with_zero_and_constants() {
        let f = xv(1).pow(2);
        assert!((&gcd(&f, &Polynomial::zero()) - &f).is_zero());
        assert!(gcd(&f, &Polynomial::from_int(7)).is_one());
    }

    #[test]
    fn gcd_three_vars() {
        let c = &(&xv(1) - &xv(2)) * &(&xv(2) - &xv(3));
        let f = &c * &(&xv(1) + &xv(3)).pow(2);
        let g = &c * &(&xv(1) - &xv(3));
        let d = gcd(&f, &g);
        assert!((&d - &monic(&c)).is_zero());
    }
}
