//! The Hecke algebra of `W` over `Z[v, v^-1]` with standard basis `H_x`,
//! `H_s^2 = (v^-1 - v) H_s + H_e`, and Kazhdan–Lusztig basis
//! `C_w = sum_{y <= w} v^{l(w)-l(y)} P_{y,w}(v^-2) H_y`, so `C_s = H_s + v`.
//!
//! Projective functors `θ_w` are modeled by `C_w`; ungraded multiplicities of
//! a composition are the KL-basis coefficients of the product at `v = 1`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element};
use crate::klpoly::KlTable;
use crate::poly::LaurentPolynomial;

/// A finite linear combination of standard basis elements.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeckeElement {
    terms: BTreeMap<Element, LaurentPolynomial>,
}

/// Decomposition of a composition of projective functors: `(index, multiplicity)`.
pub type Multiset = Vec<(Element, u64)>;

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The standard basis element `H_x`.
    pub fn standard(x: Element) -> Self {
        Self::from_terms([(x, LaurentPolynomial::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Element, LaurentPolynomial)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (x, c) in terms {
            out.add_term(x, &c);
        }
        out
    }

    pub fn add_term(&mut self, x: Element, c: &LaurentPolynomial) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(x).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: Element) -> LaurentPolynomial {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Element, &LaurentPolynomial)> {
        self.terms.iter().map(|(&x, c)| (x, c))
    }

    pub fn scaled(&self, c: &LaurentPolynomial) -> Self {
        Self::from_terms(self.terms().map(|(x, a)| (x, a * c)))
    }

    pub fn add(&self, other: &HeckeElement) -> Self {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> Self {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, &-c);
        }
        out
    }

    /// Serializable form: ShortLex words with exponent -> coefficient maps.
    pub fn export(&self, system: &CoxeterSystem) -> Vec<HeckeTermExport> {
        self.terms()
            .map(|(x, c)| HeckeTermExport { word: system.word_one_based(x), coeff: c.terms().map(|(e, a)| (e, a.to_string())).collect() })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct HeckeTermExport {
    pub word: Vec<usize>,
    /// Exponent of `v` to decimal coefficient.
    pub coeff: BTreeMap<i32, String>,
}

/// Hecke algebra operations for one system; KL-basis operations read `P_{y,w}`
/// from the table.
pub struct HeckeAlgebra<'a> {
    kl: &'a KlTable,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(kl: &'a KlTable) -> Self {
        HeckeAlgebra { kl }
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.kl.system()
    }

    /// `a * H_s`.
    pub fn mul_generator_right(&self, a: &HeckeElement, s: usize) -> HeckeElement {
        let sys = self.system();
        let quad = LaurentPolynomial::from_terms([(-1, 1), (1, -1)]);
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            let xs = sys.right_mul(x, s);
            out.add_term(xs, c);
            if sys.length(xs) < sys.length(x) {
                // H_x H_s = H_{xs} + (v^-1 - v) H_x
                out.add_term(x, &(c * &quad));
            }
        }
        out
    }

    /// `H_s * a`.
    pub fn mul_generator_left(&self, s: usize, a: &HeckeElement) -> HeckeElement {
        let sys = self.system();
        let quad = LaurentPolynomial::from_terms([(-1, 1), (1, -1)]);
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            let sx = sys.left_mul(s, x);
            out.add_term(sx, c);
            if sys.length(sx) < sys.length(x) {
                out.add_term(x, &(c * &quad));
            }
        }
        out
    }

    /// Bilinear product, expanding each `H_y` of `b` along its reduced word.
    pub fn multiply_standard(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let sys = self.system();
        let mut out = HeckeElement::zero();
        for (y, c) in b.terms() {
            let mut acc = a.scaled(c);
            for &s in sys.word(y) {
                acc = self.mul_generator_right(&acc, s as usize);
            }
            out = out.add(&acc);
        }
        out
    }

    /// The canonical basis element `C_w`.
    pub fn kl_basis(&self, w: Element) -> HeckeElement {
        let sys = self.system();
        let lw = sys.length(w) as i32;
        let mut out = HeckeElement::zero();
        for y in 0..=w.index() {
            let p = self.kl.poly_at(y, w.index());
            if p.is_zero() {
                continue;
            }
            let gap = lw - sys.length_at(y) as i32;
            let c = LaurentPolynomial::from_terms(p.coeffs().iter().enumerate().map(|(k, a)| (gap - 2 * k as i32, a.clone())));
            out.add_term(sys.element(y), &c);
        }
        out
    }

    /// Coefficients of `a` in the canonical basis, by triangular elimination
    /// from the longest term down.
    pub fn to_kl_basis(&self, a: &HeckeElement) -> BTreeMap<Element, LaurentPolynomial> {
        let mut rest = a.clone();
        let mut out = BTreeMap::new();
        while let Some((&top, c)) = rest.terms.iter().next_back() {
            let c = c.clone();
            rest = rest.sub(&self.kl_basis(top).scaled(&c));
            out.insert(top, c);
        }
        out
    }

    /// The bar involution: `v -> v^-1`, `H_x -> H_{x^-1}^{-1}`.
    pub fn bar(&self, a: &HeckeElement) -> HeckeElement {
        let sys = self.system();
        let inv_gen = LaurentPolynomial::from_terms([(1, 1), (-1, -1)]);
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            // bar(H_x) = prod over the word of (H_s + v - v^-1)
            let mut acc = HeckeElement::from_terms([(sys.identity(), c.bar())]);
            for &s in sys.word(x) {
                let shifted = acc.scaled(&inv_gen);
                acc = self.mul_generator_right(&acc, s as usize).add(&shifted);
            }
            out = out.add(&acc);
        }
        out
    }

    /// The antiautomorphism fixing every `H_s`: `H_w -> H_{w^-1}`.
    pub fn sigma(&self, a: &HeckeElement) -> HeckeElement {
        let sys = self.system();
        HeckeElement::from_terms(a.terms().map(|(x, c)| (sys.inverse(x), c.clone())))
    }

    /// `θ_s θ_w` as the canonical-basis expansion of `C_w C_s` at `v = 1`.
    pub fn theta_composition_right(&self, w: Element, s: usize) -> Multiset {
        let product = self.mul_generator_right(&self.kl_basis(w), s);
        let cs_tail = self.kl_basis(w).scaled(&LaurentPolynomial::monomial(1, 1));
        self.multiplicities(&product.add(&cs_tail))
    }

    /// `θ_w θ_s` as the canonical-basis expansion of `C_s C_w` at `v = 1`.
    pub fn theta_composition_left(&self, w: Element, s: usize) -> Multiset {
        let product = self.mul_generator_left(s, &self.kl_basis(w));
        let cs_tail = self.kl_basis(w).scaled(&LaurentPolynomial::monomial(1, 1));
        self.multiplicities(&product.add(&cs_tail))
    }

    /// The closed form read from `μ`: `{(w,2)}` if `ws < w`, otherwise
    /// `{(ws,1)}` plus `μ(y,w)` copies of each `y < w` with `ys < y`.
    pub fn theta_right_from_mu(&self, w: Element, s: usize) -> Multiset {
        let sys = self.system();
        let ws = sys.right_mul(w, s);
        if sys.length(ws) < sys.length(w) {
            return vec![(w, 2)];
        }
        let mut out: Multiset = vec![(ws, 1)];
        for &(y, mu) in self.kl.mu_list_at(w.index()) {
            let y = sys.element(y as usize);
            if sys.length(sys.right_mul(y, s)) < sys.length(y) {
                out.push((y, mu as u64));
            }
        }
        out.sort();
        out
    }

    /// Left-handed version: `{(w,2)}` if `sw < w`, otherwise `{(sw,1)}` plus
    /// `μ(y,w)` copies of each `y < w` with `sy < y`.
    pub fn theta_left_from_mu(&self, w: Element, s: usize) -> Multiset {
        let sys = self.system();
        let sw = sys.left_mul(s, w);
        if sys.length(sw) < sys.length(w) {
            return vec![(w, 2)];
        }
        let mut out: Multiset = vec![(sw, 1)];
        for &(y, mu) in self.kl.mu_list_at(w.index()) {
            let y = sys.element(y as usize);
            if sys.length(sys.left_mul(s, y)) < sys.length(y) {
                out.push((y, mu as u64));
            }
        }
        out.sort();
        out
    }

    fn multiplicities(&self, a: &HeckeElement) -> Multiset {
        self.to_kl_basis(a)
            .into_iter()
            .map(|(x, c)| {
                let m = c.eval_at_one();
                (x, m.to_u64().expect("functor multiplicity must be a nonnegative integer"))
            })
            .filter(|(_, m)| *m != 0)
            .collect()
    }
}

/// Applies `σ` to a decomposition `{(x, m)}`: `C_x -> C_{x^-1}`.
pub fn sigma_multiset(system: &CoxeterSystem, m: &Multiset) -> Multiset {
    let mut out: Multiset = m.iter().map(|&(x, k)| (system.inverse(x), k)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use std::sync::Arc;

    fn kl(label: CartanType, rank: usize) -> KlTable {
        KlTable::build(Arc::new(CoxeterSystem::build(label, rank).unwrap())).unwrap()
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn standard_relations() {
        let t = kl(CartanType::A, 2);
        let h = HeckeAlgebra::new(&t);
        let sys = t.system();
        let (s, tt) = (sys.generator(0), sys.generator(1));
        let hs = HeckeElement::standard(s);
        let expected = HeckeElement::from_terms([(s, lp(&[(-1, 1), (1, -1)])), (sys.identity(), lp(&[(0, 1)]))]);
        assert_eq!(h.multiply_standard(&hs, &hs), expected);
        assert_eq!(h.multiply_standard(&hs, &HeckeElement::standard(tt)), HeckeElement::standard(sys.multiply(s, tt).unwrap()));
        let a = HeckeElement::from_terms([(s, lp(&[(2, 3)])), (sys.w0(), lp(&[(-1, 1)]))]);
        assert_eq!(h.multiply_standard(&HeckeElement::standard(sys.identity()), &a), a);
    }

    #[test]
    fn kl_basis_examples() {
        let t = kl(CartanType::A, 2);
        let h = HeckeAlgebra::new(&t);
        let sys = t.system();
        assert_eq!(h.kl_basis(sys.identity()), HeckeElement::standard(sys.identity()));
        let s = sys.generator(0);
        let cs = HeckeElement::from_terms([(s, lp(&[(0, 1)])), (sys.identity(), lp(&[(1, 1)]))]);
        assert_eq!(h.kl_basis(s), cs);
        let w0 = sys.w0();
        let expected = HeckeElement::from_terms(sys.elements().map(|y| (y, LaurentPolynomial::monomial(1, 3 - sys.length(y) as i32))));
        assert_eq!(h.kl_basis(w0), expected);
    }

    #[test]
    fn kl_basis_is_bar_invariant_and_unitriangular() {
        let t = kl(CartanType::A, 3);
        let h = HeckeAlgebra::new(&t);
        for w in t.system().elements() {
            let c = h.kl_basis(w);
            assert_eq!(h.bar(&c), c);
            assert_eq!(c.coeff(w), LaurentPolynomial::one());
        }
    }

    #[test]
    fn sigma_examples() {
        let t = kl(CartanType::A, 3);
        let h = HeckeAlgebra::new(&t);
        let sys = t.system();
        let st = sys.product(&[0, 1]).unwrap();
        let ts = sys.product(&[1, 0]).unwrap();
        assert_eq!(h.sigma(&HeckeElement::standard(st)), HeckeElement::standard(ts));
        for w in sys.elements() {
            let c = h.kl_basis(w);
            assert_eq!(h.sigma(&c), h.kl_basis(sys.inverse(w)));
            assert_eq!(h.sigma(&h.sigma(&c)), c);
        }
    }

    #[test]
    fn sigma_is_an_antiautomorphism_on_a2() {
        let t = kl(CartanType::A, 2);
        let h = HeckeAlgebra::new(&t);
        let sys = t.system();
        for x in sys.elements() {
            for y in sys.elements() {
                for (a, b) in [(HeckeElement::standard(x), HeckeElement::standard(y)), (h.kl_basis(x), h.kl_basis(y))] {
                    let lhs = h.sigma(&h.multiply_standard(&a, &b));
                    let rhs = h.multiply_standard(&h.sigma(&b), &h.sigma(&a));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn theta_examples_in_a2() {
        let t = kl(CartanType::A, 2);
        let h = HeckeAlgebra::new(&t);
        let sys = t.system();
        let s = sys.generator(0);
        let st = sys.product(&[0, 1]).unwrap();
        let ts = sys.product(&[1, 0]).unwrap();
        assert_eq!(h.theta_composition_right(s, 0), vec![(s, 2)]);
        assert_eq!(h.theta_composition_right(st, 1), vec![(st, 2)]);
        assert_eq!(h.theta_composition_right(s, 1), vec![(st, 1)]);
        assert_eq!(h.theta_composition_left(s, 0), vec![(s, 2)]);
        assert_eq!(h.theta_composition_left(ts, 1), vec![(ts, 2)]);
        assert_eq!(h.theta_composition_left(s, 1), vec![(ts, 1)]);
    }

    #[test]
    fn product_with_generator_matches_mu_formula() {
        for (label, rank) in [(CartanType::A, 3), (CartanType::B, 3)] {
            let t = kl(label, rank);
            let h = HeckeAlgebra::new(&t);
            let sys = t.system();
            for w in sys.elements() {
                for s in 0..sys.rank() {
                    let cs = h.kl_basis(sys.generator(s));
                    let expansion = h.to_kl_basis(&h.multiply_standard(&h.kl_basis(w), &cs));
                    if sys.length(sys.right_mul(w, s)) < sys.length(w) {
                        let expected = BTreeMap::from([(w, LaurentPolynomial::quantum_two())]);
                        assert_eq!(expansion, expected);
                    } else {
                        assert!(expansion.values().all(|c| c.bar() == *c));
                    }
                    assert_eq!(h.theta_composition_right(w, s), h.theta_right_from_mu(w, s));
                    assert_eq!(h.theta_composition_left(w, s), h.theta_left_from_mu(w, s));
                }
            }
        }
    }

    #[test]
    fn export_shape() {
        let t = kl(CartanType::A, 2);
        let h = HeckeAlgebra::new(&t);
        let sys = t.system();
        let cs = h.kl_basis(sys.generator(1));
        let ex = cs.export(sys);
        assert_eq!(ex.len(), 2);
        assert_eq!(ex[0].word, Vec::<usize>::new());
        assert_eq!(ex[0].coeff, BTreeMap::from([(1, "1".to_string())]));
        assert_eq!(ex[1].word, vec![2]);
    }
}
