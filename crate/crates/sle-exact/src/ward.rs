//! The correlation tower `B_0, B_1, ...` built by the Ward recursion, the
//! mode operators defined through Laurent extraction, and the derivation of
//! the constants (kappa, alpha) = (8/3, 5/8).

use num_traits::Signed;

use crate::error::ExactError;
use crate::laurent::laurent_expand;
use crate::ratfun::RatFun;
use crate::report::CheckRecord;
use crate::var::{x, Var, VAR_A};
use crate::virasoro::{apply_l, degeneracy_apply};
use crate::Rat;

/// The restriction exponent as either the ring symbol `a` or a fixed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaSpec {
    Symbolic,
    Fixed(Rat),
}

impl AlphaSpec {
    fn to_ratfun(&self) -> RatFun {
        match self {
            AlphaSpec::Symbolic => RatFun::var(VAR_A),
            AlphaSpec::Fixed(q) => RatFun::constant(q.clone()),
        }
    }
}

/// The tower `(B_0, ..., B_m)`, `B_n` a rational function of `x_1..x_n`.
#[derive(Clone, Debug)]
pub struct CorrelationFamily {
    levels: Vec<RatFun>,
    alpha: RatFun,
    provenance: Vec<String>,
}

// scratch variable for the freshly inserted boundary point
const FRESH: Var = Var(1_000_000);

/// Rename `x_{j+1} -> x_j` (used after extracting the first argument).
fn shift_x_down(f: &RatFun) -> RatFun {
    f.rename(|v| match v.x_index() {
        Some(i) if i >= 2 => x(i - 1),
        _ => v,
    })
}

impl CorrelationFamily {
    /// `(B_0, B_1) = (1, alpha/x1^2)`.
    pub fn seed(alpha: AlphaSpec) -> CorrelationFamily {
        let a = alpha.to_ratfun();
        let b1 = a.div(&RatFun::var_ipow(x(1), 2)).expect("x1^2 nonzero");
        let mut provenance = vec!["seed: B0 = 1".into(), format!("seed: B1 = {}", b1)];
        if a.is_zero() {
            provenance.push("warning: degenerate alpha = 0".into());
        }
        CorrelationFamily {
            levels: vec![RatFun::one(), b1],
            alpha: a,
            provenance,
        }
    }

    pub fn alpha(&self) -> &RatFun {
        &self.alpha
    }

    /// Highest built level index `m`.
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &RatFun {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[RatFun] {
        &self.levels
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// Append `B_{m+1}` by the Ward recursion:
    ///
    /// `B_{n+1}(x, x1..xn) = (alpha/x^2) B_n
    ///    - sum_j { (1/(xj-x) + 1/x) d_j - 2/(xj-x)^2 } B_n`
    ///
    /// with the fresh argument then renamed to `x_1` and the old `x_j`
    /// shifted to `x_{j+1}`.
    pub fn ward_extend(&mut self) {
        let n = self.height();
        let bn = self.levels[n].clone();
        let xx = RatFun::var(FRESH);
        let mut next = &self.alpha.div(&(&xx * &xx)).expect("x^2 nonzero") * &bn;
        for j in 1..=n {
            let xj = RatFun::var(x(j));
            let gap = &xj - &xx;
            let coef = &gap.inverse().expect("xj - x nonzero") + &xx.inverse().unwrap();
            let t1 = &coef * &bn.diff(x(j));
            let t2 = &(&gap * &gap).inverse().unwrap().scale(&Rat::from_integer(2.into())) * &bn;
            next = &next - &(&t1 - &t2);
        }
        // prepend convention: fresh point becomes x1, everything else shifts
        let next = next.rename(|v| {
            if v == FRESH {
                x(1)
            } else {
                match v.x_index() {
                    Some(i) => x(i + 1),
                    None => v,
                }
            }
        });
        self.levels.push(next);
        self.provenance
            .push(format!("ward_extend: built B{}", n + 1));
    }

    pub fn extend_to(&mut self, height: usize) {
        while self.height() < height {
            self.ward_extend();
        }
    }
}

/// Left-hand side of the evolution equation per level:
///
/// `-2s (sum 1/xj^2) B_n + (sum (2/xj) d_j) B_n + (kappa/2)(sum d_j)^2 B_n`
///
/// Exactly zero for consistent `(kappa, s, alpha)`.
pub fn evolution_defect(fam: &CorrelationFamily, kappa: &RatFun, s: &Rat) -> Vec<RatFun> {
    fam.levels()
        .iter()
        .enumerate()
        .map(|(n, bn)| evolution_defect_level(bn, n, kappa, s))
        .collect()
}

pub fn evolution_defect_level(bn: &RatFun, n: usize, kappa: &RatFun, s: &Rat) -> RatFun {
    let mut out = RatFun::zero();
    let minus2s = -(s * Rat::from_integer(2.into()));
    let mut grad = RatFun::zero();
    for j in 1..=n {
        let xj = x(j);
        out = &out + &(&RatFun::var_ipow(xj, -2).scale(&minus2s) * bn);
        out = &out + &(&RatFun::var_ipow(xj, -1).scale(&Rat::from_integer(2.into())) * &bn.diff(xj));
        grad = &grad + &bn.diff(xj);
    }
    let mut lap = RatFun::zero();
    for j in 1..=n {
        lap = &lap + &grad.diff(x(j));
    }
    let half = Rat::new(1.into(), 2.into());
    &out + &(&kappa.scale(&half) * &lap)
}

/// Result of the exact derivation of the constants.
#[derive(Clone, Debug)]
pub struct DerivedConstants {
    pub kappa: Rat,
    pub alpha: Rat,
    /// evolution defect at level 1, symbolic in `a` and `k`
    pub level1_defect: RatFun,
    /// evolution defect at level 2 with `k` fixed to the level-1 root
    pub level2_defect: RatFun,
}

/// Build `(B_0, B_1, B_2)` with symbolic `a`, collect the evolution-defect
/// constraints, and solve them: level 1 fixes `kappa`, level 2 then fixes
/// `alpha` as the unique positive root.
pub fn derive_constants() -> Result<DerivedConstants, ExactError> {
    let mut fam = CorrelationFamily::seed(AlphaSpec::Symbolic);
    fam.extend_to(2);
    let s2 = Rat::from_integer(2.into());

    let d1 = evolution_defect_level(fam.level(1), 1, &RatFun::var(crate::var::VAR_K), &s2);
    // numerator is a * (3k - 8): linear in k with a constant ratio
    let kc = d1.num().coeffs_in(crate::var::VAR_K);
    if kc.len() != 2 {
        return Err(ExactError::Derivation(format!(
            "level-1 constraint not linear in k: {}",
            d1
        )));
    }
    let kappa = RatFun::new(-&kc[0], kc[1].clone())
        .as_constant()
        .ok_or_else(|| {
            ExactError::Derivation("level-1 root for k is not a constant".into())
        })?;
    if !kappa.is_positive() {
        return Err(ExactError::Derivation(format!(
            "level-1 root k = {} is not positive",
            kappa
        )));
    }

    let d2 = evolution_defect_level(fam.level(2), 2, &RatFun::constant(kappa.clone()), &s2);
    // numerator proportional to a * (c2*a + c1): roots 0 and -c1/c2
    let ac = d2.num().coeffs_in(VAR_A);
    if ac.len() != 3 || !ac[0].is_zero() {
        return Err(ExactError::Derivation(format!(
            "level-2 constraint not of the form a*(linear in a): {}",
            d2
        )));
    }
    let alpha = RatFun::new(-&ac[1], ac[2].clone())
        .as_constant()
        .ok_or_else(|| {
            ExactError::Derivation("level-2 root for a is not a constant".into())
        })?;
    if !alpha.is_positive() {
        return Err(ExactError::Derivation(format!(
            "no positive root for alpha (got {})",
            alpha
        )));
    }

    // cross-check: the level-2 degeneracy operator annihilates B1 and B2
    let mut fixed = CorrelationFamily::seed(AlphaSpec::Fixed(alpha.clone()));
    fixed.extend_to(2);
    let kap = RatFun::constant(kappa.clone());
    for n in 1..=2 {
        let d = degeneracy_apply(&kap, n, fixed.level(n));
        if !d.is_zero() {
            return Err(ExactError::Derivation(format!(
                "degeneracy cross-check failed at level {}: {}",
                n, d
            )));
        }
    }

    Ok(DerivedConstants {
        kappa,
        alpha,
        level1_defect: d1,
        level2_defect: d2,
    })
}

/// Highest-weight structure of the expansion of `B_{n+1}` in its first
/// argument: no order below -2, order -2 equals `alpha * B_n`, and order
/// `N-2` equals `L_{-N} B_n` for `1 <= N <= n_max_mode`.
pub fn mode_expand_check(
    fam: &CorrelationFamily,
    n_max_mode: u32,
) -> Result<Vec<CheckRecord>, ExactError> {
    let mut records = Vec::new();
    let nm = n_max_mode as i64;
    for n in 0..fam.height() {
        let s = laurent_expand(fam.level(n + 1), x(1), -2 - nm, nm - 2)?;
        for o in (-2 - nm)..-2 {
            let c = shift_x_down(&s.coeff(o));
            records.push(CheckRecord::from_defect(
                n,
                format!("mode-expand: B{} order {} vanishes", n + 1, o),
                &c,
            ));
        }
        let c2 = shift_x_down(&s.coeff(-2));
        let d = &c2 - &(fam.alpha() * fam.level(n));
        records.push(CheckRecord::from_defect(
            n,
            format!("mode-expand: B{} order -2 = alpha*B{}", n + 1, n),
            &d,
        ));
        for big_n in 1..=nm {
            let c = shift_x_down(&s.coeff(big_n - 2));
            let d = &c - &apply_l(-big_n, n, fam.level(n));
            records.push(CheckRecord::from_defect(
                n,
                format!("mode-expand: B{} order {} = L_{{-{}}}B{}", n + 1, big_n - 2, big_n, n),
                &d,
            ));
        }
    }
    Ok(records)
}

/// A finite vector `(w_0, ..., w_m)` with `w_n` a function of `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVector {
    levels: Vec<RatFun>,
}

impl FamilyVector {
    pub fn from_family(fam: &CorrelationFamily) -> FamilyVector {
        FamilyVector {
            levels: fam.levels().to_vec(),
        }
    }

    pub fn levels(&self) -> &[RatFun] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    fn zero(len: usize) -> FamilyVector {
        FamilyVector {
            levels: vec![RatFun::zero(); len],
        }
    }

    fn scale_rat(&self, c: &Rat) -> FamilyVector {
        FamilyVector {
            levels: self.levels.iter().map(|f| f.scale(c)).collect(),
        }
    }

    fn mul_ratfun(&self, c: &RatFun) -> FamilyVector {
        FamilyVector {
            levels: self.levels.iter().map(|f| c * f).collect(),
        }
    }

    fn add(&self, other: &FamilyVector) -> FamilyVector {
        let len = self.len().min(other.len());
        FamilyVector {
            levels: (0..len)
                .map(|i| &self.levels[i] + &other.levels[i])
                .collect(),
        }
    }

    /// `l_M` by its definition: `(l_M w)_n` is the coefficient of
    /// `x^{-M-2}` in the first-argument Laurent expansion of `w_{n+1}`.
    pub fn l_laurent(&self, mode: i64) -> Result<FamilyVector, ExactError> {
        if self.len() < 2 {
            return Err(ExactError::TowerTooShort {
                needed: 2,
                have: self.len(),
            });
        }
        let o = -mode - 2;
        let mut levels = Vec::with_capacity(self.len() - 1);
        for n in 0..self.len() - 1 {
            let s = laurent_expand(&self.levels[n + 1], x(1), o, o)?;
            levels.push(shift_x_down(&s.coeff(o)));
        }
        Ok(FamilyVector { levels })
    }

    /// The differential route: `(L_M w)_n = L_M w_n` componentwise, with the
    /// top level dropped to mirror one `l`-application.
    pub fn l_differential(&self, mode: i64) -> FamilyVector {
        let len = self.len().saturating_sub(1);
        FamilyVector {
            levels: (0..len)
                .map(|n| apply_l(mode, n, &self.levels[n]))
                .collect(),
        }
    }
}

/// Apply `l_{N_1} ... l_{N_r}` (rightmost first) via Laurent extraction and
/// assert componentwise equality with the `L`-operator composition.
pub fn lowering_compose(
    fam: &CorrelationFamily,
    modes: &[i64],
) -> Result<FamilyVector, ExactError> {
    assert!(modes.iter().all(|&m| m < 0), "modes must be negative");
    if modes.len() > fam.height() {
        return Err(ExactError::TowerTooShort {
            needed: modes.len() + 1,
            have: fam.height() + 1,
        });
    }
    let mut w = FamilyVector::from_family(fam);
    let mut d = FamilyVector::from_family(fam);
    for &m in modes.iter().rev() {
        w = w.l_laurent(m)?;
        d = d.l_differential(m);
    }
    for (n, (a, b)) in w.levels().iter().zip(d.levels()).enumerate() {
        let defect = a - b;
        if !defect.is_zero() {
            return Err(ExactError::LoweringMismatch {
                level: n,
                defect: defect.to_string(),
            });
        }
    }
    Ok(w)
}

/// Algebraic prediction for `l_m l_{N_1} ... l_{N_r} (B)` (`N_i < 0`) using
/// only the commutation relation and the highest-weight relations, never
/// Laurent extraction. The independent side of the stability check.
fn predict(fam: &CorrelationFamily, m: i64, modes: &[i64]) -> FamilyVector {
    let base = FamilyVector::from_family(fam);
    match modes.split_first() {
        None => {
            if m > 0 {
                FamilyVector::zero(base.len())
            } else if m == 0 {
                base.mul_ratfun(fam.alpha())
            } else {
                base.l_differential(m)
            }
        }
        Some((&n1, rest)) => {
            // l_m l_{n1} = l_{n1} l_m + (m - n1) l_{m+n1}
            let t1 = predict(fam, m, rest).l_differential(n1);
            let sum = m + n1;
            let inner = if sum >= 0 {
                predict(fam, sum, rest)
            } else {
                let mut w = FamilyVector::from_family(fam);
                for &r in rest.iter().rev() {
                    w = w.l_differential(r);
                }
                w.l_differential(sum)
            };
            t1.add(&inner.scale_rat(&Rat::from_integer((m - n1).into())))
        }
    }
}

/// Two-route check of stability under a positive mode: Laurent extraction
/// versus the commutation/highest-weight prediction.
pub fn stability_check(
    fam: &CorrelationFamily,
    raise_mode: i64,
    modes: &[i64],
) -> Result<Vec<CheckRecord>, ExactError> {
    assert!(raise_mode > 0, "raise_mode must be positive");
    assert!(modes.iter().all(|&m| m < 0), "lowering modes must be negative");
    let mut w = FamilyVector::from_family(fam);
    for &m in modes.iter().rev() {
        w = w.l_laurent(m)?;
    }
    let extracted = w.l_laurent(raise_mode)?;
    let predicted = predict(fam, raise_mode, modes);
    let len = extracted.len().min(predicted.len());
    let name = format!(
        "stability: l_{{{}}} after {:?} extraction vs commutation",
        raise_mode, modes
    );
    Ok((0..len)
        .map(|n| {
            let d = &extracted.levels()[n] - &predicted.levels()[n];
            CheckRecord::from_defect(n, name.clone(), &d)
        })
        .collect())
}
