//! First-order weighted vector-field operators acting on rational functions
//! of the boundary points, with the Witt commutation relation.

use num_traits::Zero;

use crate::ratfun::RatFun;
use crate::var::x;
use crate::Rat;

/// The mode-`m` operator acting on functions of `x_1..x_arity`:
///
/// `L_m f = sum_j [ -x_j^{m+1} d_j f - weight*(m+1)*x_j^m f ]`
///
/// For `m = -N` this is `sum_j { -x_j^{1-N} d_j + weight*(N-1) x_j^{-N} }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroOp {
    pub mode: i64,
    pub weight: Rat,
    pub arity: usize,
}

impl VirasoroOp {
    /// Weight-2 operator, the value forced by the restriction property.
    pub fn weight2(mode: i64, arity: usize) -> Self {
        VirasoroOp {
            mode,
            weight: Rat::from_integer(2.into()),
            arity,
        }
    }

    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut out = RatFun::zero();
        if f.is_zero() {
            return out;
        }
        let mult = -(&self.weight * Rat::from_integer((self.mode + 1).into()));
        for j in 1..=self.arity {
            let xj = x(j);
            let t1 = &(-&RatFun::var_ipow(xj, self.mode + 1)) * &f.diff(xj);
            out = &out + &t1;
            if !mult.is_zero() {
                let t2 = &RatFun::var_ipow(xj, self.mode).scale(&mult) * f;
                out = &out + &t2;
            }
        }
        out
    }
}

/// Weight-2 action, the form used throughout the tower.
pub fn apply_l(mode: i64, arity: usize, f: &RatFun) -> RatFun {
    VirasoroOp::weight2(mode, arity).apply(f)
}

/// `[L_m, L_n] f - (m - n) L_{m+n} f`; exactly zero for every f and weight.
pub fn commutator_defect(m: i64, n: i64, weight: &Rat, arity: usize, f: &RatFun) -> RatFun {
    let lm = VirasoroOp {
        mode: m,
        weight: weight.clone(),
        arity,
    };
    let ln = VirasoroOp {
        mode: n,
        weight: weight.clone(),
        arity,
    };
    let lmn = VirasoroOp {
        mode: m + n,
        weight: weight.clone(),
        arity,
    };
    let bracket = &lm.apply(&ln.apply(f)) - &ln.apply(&lm.apply(f));
    &bracket - &lmn.apply(f).scale(&Rat::from_integer((m - n).into()))
}

/// The level-2 degeneracy combination `(kappa/2) L_{-1}^2 f - 2 L_{-2} f`
/// with weight 2; `kappa` may be the symbol `k` or a constant.
pub fn degeneracy_apply(kappa: &RatFun, arity: usize, f: &RatFun) -> RatFun {
    let l1sq = apply_l(-1, arity, &apply_l(-1, arity, f));
    let l2 = apply_l(-2, arity, f);
    let half = Rat::new(1.into(), 2.into());
    &(&kappa.scale(&half) * &l1sq) - &l2.scale(&Rat::from_integer(2.into()))
}
