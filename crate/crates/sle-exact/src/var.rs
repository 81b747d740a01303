use std::fmt;

/// Identifier into the fixed global variable order `a < k < x1 < x2 < ...`.
///
/// The two parameters of the theory are ordinary ring variables: `a` is the
/// restriction exponent and `k` the diffusivity. Fixing them to rational
/// values is substitution, not a different engine.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

pub const VAR_A: Var = Var(0);
pub const VAR_K: Var = Var(1);

/// The boundary-point variable `x_i` (1-based).
pub fn x(i: usize) -> Var {
    assert!(i >= 1, "x-variables are 1-based");
    Var(1 + i as u32)
}

impl Var {
    /// Index `i` if this is `x_i`.
    pub fn x_index(self) -> Option<usize> {
        if self.0 >= 2 {
            Some((self.0 - 1) as usize)
        } else {
            None
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "a"),
            1 => write!(f, "k"),
            n => write!(f, "x{}", n - 1),
        }
    }
}
