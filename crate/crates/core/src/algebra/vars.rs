//! Fixed variable layout shared by every symbolic computation on `[n]`.

use super::poly::{Polynomial, Var, VarArena};

/// One of the six coordinate rows `x, X, y, Y, p, P` of the 2×n matrices
/// that parametrize points of Gr(2, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    LowerX,
    UpperX,
    LowerY,
    UpperY,
    LowerP,
    UpperP,
}

impl Family {
    fn offset(self) -> usize {
        match self {
            Family::LowerX => 0,
            Family::UpperX => 1,
            Family::LowerY => 2,
            Family::UpperY => 3,
            Family::LowerP => 4,
            Family::UpperP => 5,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::LowerX => "x",
            Family::UpperX => "X",
            Family::LowerY => "y",
            Family::UpperY => "Y",
            Family::LowerP => "p",
            Family::UpperP => "P",
        }
    }
}

/// Variable arena for a ground set `[n]`: the six coordinate rows, the
/// generic skew entries `z_{i,j}`, a deformation parameter `eps` and a
/// direction vector `v_i`.
#[derive(Clone, Debug)]
pub struct Vars {
    n: usize,
    arena: VarArena,
}

impl Vars {
    pub fn new(n: usize) -> Self {
        let mut arena = VarArena::new();
        for fam in [
            Family::LowerX,
            Family::UpperX,
            Family::LowerY,
            Family::UpperY,
            Family::LowerP,
            Family::UpperP,
        ] {
            for i in 1..=n {
                arena.intern(&format!("{}{}", fam.prefix(), i));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                arena.intern(&format!("z_{{{i},{j}}}"));
            }
        }
        arena.intern("eps");
        for i in 1..=n {
            arena.intern(&format!("v{i}"));
        }
        Vars { n, arena }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arena(&self) -> &VarArena {
        &self.arena
    }

    /// Variable `i` (1-based) of the given row.
    pub fn row(&self, fam: Family, i: usize) -> Var {
        assert!((1..=self.n).contains(&i), "index {i} outside [1, {}]", self.n);
        Var((fam.offset() * self.n + i - 1) as u32)
    }

    pub fn x(&self, i: usize) -> Var {
        self.row(Family::LowerX, i)
    }

    pub fn cap_x(&self, i: usize) -> Var {
        self.row(Family::UpperX, i)
    }

    /// `z_{i,j}` for `i < j`.
    pub fn z(&self, i: usize, j: usize) -> Var {
        assert!(i < j && j <= self.n);
        let n = self.n;
        // pairs (a, b) with a < i come first
        let before: usize = (1..i).map(|a| n - a).sum();
        Var((6 * n + before + (j - i - 1)) as u32)
    }

    pub fn eps(&self) -> Var {
        Var((6 * self.n + self.n * (self.n - 1) / 2) as u32)
    }

    pub fn v(&self, i: usize) -> Var {
        assert!((1..=self.n).contains(&i));
        Var(self.eps().0 + i as u32)
    }

    pub fn poly(&self, v: Var) -> Polynomial {
        Polynomial::var(v)
    }

    /// The 2×2 minor `U_i u_j - U_j u_i` of a symbolic pair of rows.
    pub fn minor(&self, upper: Family, lower: Family, i: usize, j: usize) -> Polynomial {
        let ui = self.poly(self.row(upper, i));
        let uj = self.poly(self.row(upper, j));
        let li = self.poly(self.row(lower, i));
        let lj = self.poly(self.row(lower, j));
        &(&ui * &lj) - &(&uj * &li)
    }

    /// `x_{ij} = X_i x_j - X_j x_i`.
    pub fn plucker_x(&self, i: usize, j: usize) -> Polynomial {
        self.minor(Family::UpperX, Family::LowerX, i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_layout() {
        let v = Vars::new(6);
        let a = v.arena();
        assert_eq!(a.name(v.x(3)), "x3");
        assert_eq!(a.name(v.cap_x(6)), "X6");
        assert_eq!(a.name(v.row(Family::UpperP, 2)), "P2");
        assert_eq!(a.name(v.z(1, 2)), "z_{1,2}");
        assert_eq!(a.name(v.z(2, 5)), "z_{2,5}");
        assert_eq!(a.name(v.z(5, 6)), "z_{5,6}");
        assert_eq!(a.name(v.eps()), "eps");
        assert_eq!(a.name(v.v(6)), "v6");
        assert_eq!(a.len(), 6 * 6 + 15 + 1 + 6);
    }
}
