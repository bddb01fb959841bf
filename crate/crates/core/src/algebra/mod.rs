//! Exact scalars, sparse polynomials and linear algebra over Q.

pub mod matrix;
pub mod packed;
pub mod poly;
pub mod rational;
pub mod vars;

pub use matrix::{det_laplace, span_rank, KernelResult, PivotRule, RationalMatrix, Ring};
pub use poly::{Monomial, Order, PolyError, Polynomial, Var, VarArena};
pub use rational::Rational;
pub use vars::{Family, Vars};

/// Minimum exponent of `var` over the terms of `p` (`Order::Infinite` for 0).
pub fn epsilon_order(p: &Polynomial, var: Var) -> Order {
    p.order_in(var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    const NV: u32 = 4;

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, NV as usize), -4i64..5, 1i64..3),
            0..5,
        )
        .prop_map(|terms| {
            Polynomial::from_terms(terms.into_iter().map(|(exps, a, b)| {
                let m = Monomial::from_pairs(exps.into_iter().enumerate().map(|(i, e)| (Var(i as u32), e)));
                (m, rational::ratio(a, b))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero_poly());
        }

        #[test]
        fn substitution_composes(p in small_poly(), s0 in small_poly(), t2 in small_poly()) {
            // sigma binds var 0 to a polynomial in vars 2, 3; tau binds var 2 to one in var 3.
            let only = |q: &Polynomial, keep: &[u32]| {
                let drop: BTreeMap<Var, Rational> = (0..NV)
                    .filter(|v| !keep.contains(v))
                    .map(|v| (Var(v), rational::rat(1)))
                    .collect();
                q.evaluate_partial(&drop)
            };
            let s0 = only(&s0, &[2, 3]);
            let t2 = only(&t2, &[3]);
            let sigma: BTreeMap<Var, Polynomial> = [(Var(0), s0.clone())].into();
            let tau: BTreeMap<Var, Polynomial> = [(Var(2), t2.clone())].into();
            let composed: BTreeMap<Var, Polynomial> =
                [(Var(0), s0.substitute(&tau).unwrap()), (Var(2), t2)].into();
            let lhs = p.substitute(&sigma).unwrap().substitute(&tau).unwrap();
            prop_assert_eq!(lhs, p.substitute(&composed).unwrap());
        }
    }

    trait IsZero {
        fn is_zero_poly(&self) -> bool;
    }
    impl IsZero for Polynomial {
        fn is_zero_poly(&self) -> bool {
            num_traits::Zero::is_zero(self)
        }
    }
}
