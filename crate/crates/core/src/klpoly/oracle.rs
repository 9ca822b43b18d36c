//! Independent computation of `P_{y,w}` from the bar involution.
//!
//! Works in the Hecke algebra with standard basis `H_x` and
//! `H_s^2 = (v^-1 - v) H_s + 1`. First `bar(H_y) = sum_x r_{x,y} H_x` is built
//! for every `y` by right multiplication with `bar(H_s) = H_s + v - v^-1`.
//! The canonical basis element `C_w = sum_x h_{x,w} H_x` is then solved for
//! top-down: bar invariance forces
//! `h_{x,w} - bar(h_{x,w}) = sum_{y > x} r_{x,y} bar(h_{y,w})`, and the
//! degree condition `h_{x,w} in vZ[v]` picks out the positive part of the
//! right-hand side. Finally `P_{x,w}(q)` is read from
//! `h_{x,w} = v^{l(w)-l(x)} P_{x,w}(v^-2)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::KlError;
use crate::coxeter::{CoxeterSystem, Element};
use crate::poly::{IntPolynomial, LaurentPolynomial};

pub const DEFAULT_ORACLE_CAP: usize = 1_000;

pub struct BarInvarianceOracle<'a> {
    system: &'a CoxeterSystem,
    /// `rbar[y][x] = r_{x,y}`.
    rbar: Vec<Vec<LaurentPolynomial>>,
}

impl<'a> BarInvarianceOracle<'a> {
    pub fn new(system: &'a CoxeterSystem) -> Result<Self, KlError> {
        Self::with_cap(system, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(system: &'a CoxeterSystem, cap: usize) -> Result<Self, KlError> {
        let n = system.order();
        if n > cap {
            return Err(KlError::OracleCapExceeded { order: n, cap });
        }
        let v_minus_vinv = LaurentPolynomial::from_terms([(1, 1), (-1, -1)]);
        let mut rbar: Vec<Vec<LaurentPolynomial>> = Vec::with_capacity(n);
        let mut e = vec![LaurentPolynomial::zero(); n];
        e[0] = LaurentPolynomial::one();
        rbar.push(e);
        for y in 1..n {
            let word = system.word_at(y);
            let s = *word.last().unwrap() as usize;
            let prev = system.right_mul_at(y, s);
            let mut out = vec![LaurentPolynomial::zero(); n];
            for (x, c) in rbar[prev].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let xs = system.right_mul_at(x, s);
                // H_x bar(H_s) = H_{xs} if xs < x, else H_{xs} + (v - v^-1) H_x
                out[xs] += c;
                if system.length_at(xs) > system.length_at(x) {
                    out[x] += &(c * &v_minus_vinv);
                }
            }
            rbar.push(out);
        }
        Ok(BarInvarianceOracle { system, rbar })
    }

    /// `h_{x,w}` for all `x`: coefficients of the canonical basis element `C_w`.
    pub fn canonical_basis_column(&self, w: Element) -> Vec<LaurentPolynomial> {
        assert!(self.system.owns(w));
        let w = w.index();
        let n = self.system.order();
        let mut h = vec![LaurentPolynomial::zero(); n];
        h[w] = LaurentPolynomial::one();
        let mut support: Vec<usize> = vec![w];
        for x in (0..w).rev() {
            let mut rhs = LaurentPolynomial::zero();
            for &y in &support {
                let r = &self.rbar[y][x];
                if !r.is_zero() {
                    rhs += &(r * &h[y].bar());
                }
            }
            if rhs.is_zero() {
                continue;
            }
            debug_assert!(rhs.coeff(0).is_zero(), "non-antisymmetric right-hand side");
            debug_assert_eq!(rhs.bar(), -&rhs);
            let hx = rhs.positive_part();
            if !hx.is_zero() {
                h[x] = hx;
                support.push(x);
            }
        }
        h
    }

    /// `P_{x,w}` for every `x`, indexed by element index.
    pub fn kl_column(&self, w: Element) -> Vec<IntPolynomial> {
        let lw = self.system.length(w) as i32;
        self.canonical_basis_column(w)
            .into_iter()
            .enumerate()
            .map(|(x, h)| {
                if h.is_zero() {
                    return IntPolynomial::zero();
                }
                let gap = lw - self.system.length_at(x) as i32;
                let top = (gap / 2) as usize;
                let coeffs: Vec<BigInt> = (0..=top).map(|k| h.coeff(gap - 2 * k as i32)).collect();
                IntPolynomial::from_coeffs(coeffs)
            })
            .collect()
    }

    pub fn kl_polynomial(&self, y: Element, w: Element) -> IntPolynomial {
        assert!(self.system.owns(y));
        self.kl_column(w).swap_remove(y.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;

    #[test]
    fn small_values() {
        let w = CoxeterSystem::build(CartanType::A, 3).unwrap();
        let oracle = BarInvarianceOracle::new(&w).unwrap();
        let s = w.generator(0);
        assert!(oracle.kl_polynomial(w.identity(), s).is_one());
        let y = w.parse_element("1324").unwrap();
        let x = w.parse_element("3412").unwrap();
        assert_eq!(oracle.kl_polynomial(y, x).to_string(), "1 + q");
        assert!(oracle.kl_polynomial(x, y).is_zero());
    }

    #[test]
    fn cap() {
        let w = CoxeterSystem::build(CartanType::A, 4).unwrap();
        assert!(matches!(BarInvarianceOracle::with_cap(&w, 100), Err(KlError::OracleCapExceeded { order: 120, cap: 100 })));
    }
}
