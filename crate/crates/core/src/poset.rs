//! Bruhat intervals, the Möbius function and reflection arrows.

use std::sync::OnceLock;

use serde::Serialize;

use crate::coxeter::{CoxeterError, CoxeterSystem, Element};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("{0} is not below {1} in the Bruhat order")]
    NotBelow(String, String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// Möbius function of the Bruhat order, memoized one lower endpoint at a time.
pub struct Mobius<'a> {
    system: &'a CoxeterSystem,
    rows: Vec<OnceLock<Vec<i64>>>,
}

impl<'a> Mobius<'a> {
    pub fn new(system: &'a CoxeterSystem) -> Self {
        Mobius { system, rows: (0..system.order()).map(|_| OnceLock::new()).collect() }
    }

    /// `μ(x, y)` for `x <= y`.
    pub fn mobius(&self, x: Element, y: Element) -> Result<i64, PosetError> {
        if !self.system.bruhat_leq(x, y)? {
            return Err(PosetError::NotBelow(self.system.format_element(x), self.system.format_element(y)));
        }
        Ok(self.row(x.index())[y.index()])
    }

    /// `μ(x, ·)`, zero off the upper set of `x`.
    fn row(&self, x: usize) -> &[i64] {
        self.rows[x].get_or_init(|| {
            let sys = self.system;
            let n = sys.order();
            let above: Vec<usize> = (x..n).filter(|&z| sys.bruhat_leq_at(x, z)).collect();
            let mut mu = vec![0i64; n];
            mu[x] = 1;
            for (k, &y) in above.iter().enumerate().skip(1) {
                mu[y] = -above[..k].iter().filter(|&&z| sys.bruhat_leq_at(z, y)).map(|&z| mu[z]).sum::<i64>();
            }
            mu
        })
    }
}

/// Möbius function of the reversed order `(W, >=)`: `μ'(y, x)` for `y >= x`.
pub fn dual_mobius(system: &CoxeterSystem, y: Element, x: Element) -> i64 {
    let (y, x) = (y.index(), x.index());
    if !system.bruhat_leq_at(x, y) {
        return 0;
    }
    let below: Vec<usize> = (x..=y).rev().filter(|&z| system.bruhat_leq_at(x, z) && system.bruhat_leq_at(z, y)).collect();
    let mut mu = vec![0i64; below.len()];
    mu[0] = 1;
    for k in 1..below.len() {
        mu[k] = -(0..k).filter(|&j| system.bruhat_leq_at(below[k], below[j])).map(|j| mu[j]).sum::<i64>();
    }
    mu[below.len() - 1]
}

/// A Bruhat pair where `μ(x, y) != (-1)^{l(y)-l(x)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusCounterexample {
    pub x: Element,
    pub y: Element,
    pub mobius: i64,
}

/// Checks the sign formula on every comparable pair.
pub fn verify_verma_mobius(system: &CoxeterSystem) -> Result<(), MobiusCounterexample> {
    let m = Mobius::new(system);
    for x in system.elements() {
        let row = m.row(x.index());
        for y in system.elements() {
            if system.bruhat_leq_at(x.index(), y.index()) {
                let expected = if (system.length(y) - system.length(x)).is_multiple_of(2) { 1 } else { -1 };
                if row[y.index()] != expected {
                    return Err(MobiusCounterexample { x, y, mobius: row[y.index()] });
                }
            }
        }
    }
    Ok(())
}

/// Number of pairs `x <= y`.
pub fn incidence_dimension(system: &CoxeterSystem) -> usize {
    let n = system.order();
    (0..n).map(|y| (0..=y).filter(|&x| system.bruhat_leq_at(x, y)).count()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub from: Element,
    pub to: Element,
}

/// Pairs `x > y` with `x = t y` for a reflection `t`, sorted by `(x, y)` index.
pub fn end_delta_quiver(system: &CoxeterSystem) -> Vec<Arrow> {
    let reflections = system.reflections();
    let mut arrows = Vec::new();
    for x in system.elements() {
        let mut targets: Vec<Element> = reflections
            .iter()
            .map(|&t| system.multiply(t, x).expect("same system"))
            .filter(|&y| system.length(y) < system.length(x))
            .collect();
        targets.sort_by_key(|y| y.index());
        arrows.extend(targets.into_iter().map(|to| Arrow { from: x, to }));
    }
    arrows
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrowExport {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

pub fn export_arrows(system: &CoxeterSystem, arrows: &[Arrow]) -> Vec<ArrowExport> {
    arrows.iter().map(|a| ArrowExport { from: system.word_one_based(a.from), to: system.word_one_based(a.to) }).collect()
}

/// The interval `[x, y]` with its covering relations.
#[derive(Debug, Clone)]
pub struct BruhatInterval {
    pub bottom: Element,
    pub top: Element,
    /// Members in canonical order.
    pub elements: Vec<Element>,
    /// `(lower, upper)` covering pairs.
    pub hasse: Vec<(Element, Element)>,
}

impl BruhatInterval {
    pub fn new(system: &CoxeterSystem, x: Element, y: Element) -> Result<Self, PosetError> {
        if !system.bruhat_leq(x, y)? {
            return Err(PosetError::NotBelow(system.format_element(x), system.format_element(y)));
        }
        let elements: Vec<Element> = (x.index()..=y.index())
            .filter(|&z| system.bruhat_leq_at(x.index(), z) && system.bruhat_leq_at(z, y.index()))
            .map(|z| system.element(z))
            .collect();
        let mut hasse = Vec::new();
        for &a in &elements {
            for &b in &elements {
                if system.length(b) == system.length(a) + 1 && system.bruhat_leq_at(a.index(), b.index()) {
                    hasse.push((a, b));
                }
            }
        }
        Ok(BruhatInterval { bottom: x, top: y, elements, hasse })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Lengths of all maximal chains, ascending and deduplicated.
    pub fn maximal_chain_lengths(&self) -> Vec<usize> {
        let pos = |e: Element| self.elements.iter().position(|&z| z == e).unwrap();
        let mut lengths: Vec<Vec<usize>> = vec![Vec::new(); self.elements.len()];
        lengths[0].push(0);
        for (k, &z) in self.elements.iter().enumerate().skip(1) {
            let mut here: Vec<usize> =
                self.hasse.iter().filter(|&&(_, b)| b == z).flat_map(|&(a, _)| lengths[pos(a)].iter().map(|l| l + 1)).collect();
            here.sort_unstable();
            here.dedup();
            lengths[k] = here;
        }
        lengths.pop().unwrap_or_default()
    }
}

/// Every length-two interval has exactly two middle elements.
pub fn check_diamond_property(system: &CoxeterSystem) -> bool {
    for x in 0..system.order() {
        for y in x..system.order() {
            if system.length_at(y) == system.length_at(x) + 2 && system.bruhat_leq_at(x, y) {
                let middle = (x + 1..y).filter(|&z| system.bruhat_leq_at(x, z) && system.bruhat_leq_at(z, y)).count();
                if middle != 2 {
                    return false;
                }
            }
        }
    }
    true
}
