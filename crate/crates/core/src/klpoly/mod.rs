//! Kazhdan–Lusztig polynomials `P_{y,w}`, the `μ`-function and `δ(w) = deg P_{e,w}`.
//!
//! [`KlTable`] fills the whole table with the classical recursion, one length
//! stratum at a time. Rows of a stratum only read rows of shorter elements, so
//! a stratum can be computed by several workers and merged in index order; the
//! result does not depend on the number of workers.
//!
//! [`BarInvarianceOracle`] recomputes the same polynomials from scratch by
//! solving for the bar-invariant canonical basis and is used to check the table.

mod cache;
mod oracle;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coxeter::{CoxeterSystem, Element};
use crate::poly::IntPolynomial;

pub use cache::{cache_file_name, CACHE_FORMAT_VERSION};
pub use oracle::{BarInvarianceOracle, DEFAULT_ORACLE_CAP};

/// Default bound on |W| for building a full table.
pub const DEFAULT_KL_CAP: usize = 2_000;

#[derive(Debug, thiserror::Error)]
pub enum KlError {
    #[error("|W| = {order} exceeds the KL table cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("|W| = {order} exceeds the bar-invariance oracle cap of {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("malformed KL cache: {0}")]
    Cache(String),
    #[error("KL cache was written for {found}, expected {expected}")]
    CacheMismatch { expected: String, found: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Memoized `P_{y,w}` for every pair of a finite Weyl group.
pub struct KlTable {
    system: Arc<CoxeterSystem>,
    /// `rows[w][y] = P_{y,w}` (zero when `y` is not below `w`).
    rows: Vec<Vec<IntPolynomial>>,
    /// For each `w`, the `y < w` with `μ(y,w) != 0`, ascending.
    mu_lists: Vec<Vec<(u32, i64)>>,
}

static ZERO: IntPolynomial = IntPolynomial::zero();

/// A column of `P_{y,w}` with its `μ` list.
type Row = (Vec<IntPolynomial>, Vec<(u32, i64)>);

impl KlTable {
    pub fn build(system: Arc<CoxeterSystem>) -> Result<Self, KlError> {
        Self::build_with(system, 1, DEFAULT_KL_CAP)
    }

    /// Builds the table using `threads` workers (1 = single-threaded).
    pub fn build_with(system: Arc<CoxeterSystem>, threads: usize, cap: usize) -> Result<Self, KlError> {
        let n = system.order();
        if n > cap {
            return Err(KlError::TooLarge { order: n, cap });
        }
        let pool = if threads > 1 {
            Some(rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("failed to start worker pool"))
        } else {
            None
        };

        let mut rows: Vec<Vec<IntPolynomial>> = Vec::with_capacity(n);
        let mut mu_lists: Vec<Vec<(u32, i64)>> = Vec::with_capacity(n);
        let mut start = 0;
        while start < n {
            let len = system.length_at(start);
            let end = (start..n).find(|&i| system.length_at(i) != len).unwrap_or(n);
            let sys = &*system;
            let (done_rows, done_mu) = (&rows[..], &mu_lists[..]);
            let compute = |w: usize| compute_row(sys, w, done_rows, done_mu);
            let stratum: Vec<Row> = match &pool {
                Some(pool) => pool.install(|| (start..end).into_par_iter().map(compute).collect()),
                None => (start..end).map(compute).collect(),
            };
            for (row, mu) in stratum {
                rows.push(row);
                mu_lists.push(mu);
            }
            start = end;
        }
        Ok(KlTable { system, rows, mu_lists })
    }

    pub(crate) fn from_rows(system: Arc<CoxeterSystem>, rows: Vec<Vec<IntPolynomial>>) -> Self {
        let mu_lists = (0..rows.len()).map(|w| mu_list(&system, w, &rows[w])).collect();
        KlTable { system, rows, mu_lists }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    /// `P_{y,w}`; zero unless `y <= w`.
    pub fn kl_polynomial(&self, y: Element, w: Element) -> &IntPolynomial {
        assert!(self.system.owns(y) && self.system.owns(w), "element from a different system");
        self.poly_at(y.index(), w.index())
    }

    #[inline]
    pub fn poly_at(&self, y: usize, w: usize) -> &IntPolynomial {
        if y > w {
            return &ZERO;
        }
        &self.rows[w][y]
    }

    /// `μ(y,w)`: the coefficient of `q^{(l(w)-l(y)-1)/2}` in `P_{y,w}`, zero on
    /// parity failure or unless `y < w`.
    pub fn mu(&self, y: Element, w: Element) -> i64 {
        assert!(self.system.owns(y) && self.system.owns(w), "element from a different system");
        self.mu_at(y.index(), w.index())
    }

    pub fn mu_at(&self, y: usize, w: usize) -> i64 {
        if y >= w {
            return 0;
        }
        self.mu_lists[w].binary_search_by_key(&(y as u32), |&(z, _)| z).map(|k| self.mu_lists[w][k].1).unwrap_or(0)
    }

    /// `μ` read in whichever order makes the first argument the smaller one;
    /// the W-graph edge weight.
    pub fn mu_symmetric(&self, x: Element, y: Element) -> i64 {
        let (a, b) = (x.index(), y.index());
        if a < b {
            self.mu_at(a, b)
        } else {
            self.mu_at(b, a)
        }
    }

    /// Nonzero `μ(y,w)` with `y < w`, ascending in `y`.
    pub fn mu_list_at(&self, w: usize) -> &[(u32, i64)] {
        &self.mu_lists[w]
    }

    /// `δ(w) = deg P_{e,w}`.
    pub fn delta(&self, w: Element) -> usize {
        self.delta_at(w.index())
    }

    pub fn delta_at(&self, w: usize) -> usize {
        self.rows[w][0].degree().expect("P_{e,w} is nonzero")
    }

    /// Number of stored nonzero polynomials (pairs `y <= w`).
    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(|r| r.iter().filter(|p| !p.is_zero()).count()).sum()
    }
}

fn compute_row(
    sys: &CoxeterSystem,
    w: usize,
    rows: &[Vec<IntPolynomial>],
    mu_lists: &[Vec<(u32, i64)>],
) -> (Vec<IntPolynomial>, Vec<(u32, i64)>) {
    let n = sys.order();
    let mut row = vec![IntPolynomial::zero(); n];
    row[w] = IntPolynomial::one();
    if w == 0 {
        return (row, Vec::new());
    }
    // w = s v with s the first ShortLex letter (a left descent)
    let s = sys.word_at(w)[0] as usize;
    let v = sys.left_mul_at(s, w);
    let lw = sys.length_at(w);
    let corrections: Vec<(usize, BigInt, usize)> = mu_lists[v]
        .iter()
        .map(|&(z, mu)| (z as usize, mu))
        .filter(|&(z, _)| sys.length_at(sys.left_mul_at(s, z)) < sys.length_at(z))
        .map(|(z, mu)| (z, BigInt::from(mu), (lw - sys.length_at(z)) / 2))
        .collect();
    let minus_one = BigInt::from(-1);
    let one = BigInt::from(1);

    for x in (0..w).rev() {
        if !sys.bruhat_leq_at(x, w) {
            continue;
        }
        let sx = sys.left_mul_at(s, x);
        if sys.length_at(sx) > sys.length_at(x) {
            // P_{x,w} = P_{sx,w} for s in the left descent set of w
            row[x] = row[sx].clone();
            continue;
        }
        // sx < x: P_{x,w} = P_{sx,v} + q P_{x,v} - sum_z mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}
        let mut p = rows[v][sx].clone();
        p.add_scaled_shifted(&rows[v][x], &one, 1);
        for (z, mu, shift) in &corrections {
            if *z >= x {
                let pxz = &rows[*z][x];
                if !pxz.is_zero() {
                    p.add_scaled_shifted(pxz, &(mu * &minus_one), *shift);
                }
            }
        }
        row[x] = p;
    }
    let mu = mu_list(sys, w, &row);
    (row, mu)
}

fn mu_list(sys: &CoxeterSystem, w: usize, row: &[IntPolynomial]) -> Vec<(u32, i64)> {
    let lw = sys.length_at(w);
    let mut out = Vec::new();
    for (y, p) in row.iter().enumerate().take(w) {
        let gap = lw - sys.length_at(y);
        if p.is_zero() || gap.is_multiple_of(2) {
            continue;
        }
        let c = p.coeff((gap - 1) / 2);
        if !c.is_zero() {
            out.push((y as u32, c.to_i64().expect("mu value exceeds i64")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;

    fn table(label: CartanType, rank: usize) -> KlTable {
        KlTable::build(Arc::new(CoxeterSystem::build(label, rank).unwrap())).unwrap()
    }

    #[test]
    fn a2_polynomials_are_all_one() {
        let t = table(CartanType::A, 2);
        let w = t.system().clone();
        for x in w.elements() {
            for y in w.elements() {
                let p = t.kl_polynomial(x, y);
                if w.bruhat_leq(x, y).unwrap() {
                    assert!(p.is_one());
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        let sts = w.w0();
        assert_eq!(t.mu(w.identity(), sts), 0);
        assert_eq!(t.delta(sts), 0);
        assert_eq!(t.delta(w.identity()), 0);
    }

    #[test]
    fn first_nonconstant_polynomial_in_s4() {
        let t = table(CartanType::A, 3);
        let w = t.system().clone();
        let y = w.parse_element("1324").unwrap();
        let x = w.parse_element("3412").unwrap();
        assert_eq!(t.kl_polynomial(y, x).to_string(), "1 + q");
        assert_eq!(t.mu(y, x), 1);
        assert_eq!(t.kl_polynomial(w.identity(), x).to_string(), "1 + q");
        assert_eq!(t.delta(x), 1);
    }

    #[test]
    fn table_invariants() {
        for (label, rank) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::D, 4)] {
            let t = table(label, rank);
            let w = t.system().clone();
            for y in w.elements() {
                for x in w.elements() {
                    let p = t.kl_polynomial(y, x);
                    if !w.bruhat_leq(y, x).unwrap() {
                        assert!(p.is_zero());
                        continue;
                    }
                    assert_eq!(p.coeff(0), BigInt::from(1));
                    assert!(p.has_nonnegative_coeffs());
                    let gap = w.length(x) - w.length(y);
                    if y != x {
                        assert!(2 * p.degree().unwrap() < gap);
                    }
                    if gap <= 2 {
                        assert!(p.is_one());
                    }
                    let expected_mu = if y != x && gap % 2 == 1 { p.coeff((gap - 1) / 2) } else { BigInt::zero() };
                    assert_eq!(BigInt::from(t.mu(y, x)), expected_mu);
                    assert_eq!(p, t.kl_polynomial(w.inverse(y), w.inverse(x)));
                }
                assert!(t.kl_polynomial(y, y).is_one());
            }
        }
    }

    #[test]
    fn covering_pairs_have_mu_one() {
        let t = table(CartanType::B, 3);
        let w = t.system().clone();
        for y in w.elements() {
            for x in w.elements() {
                if w.length(x) == w.length(y) + 1 && w.bruhat_leq(y, x).unwrap() {
                    assert_eq!(t.mu(y, x), 1);
                }
            }
        }
    }

    #[test]
    fn parallel_build_is_identical() {
        let sys = Arc::new(CoxeterSystem::build(CartanType::A, 4).unwrap());
        let a = KlTable::build_with(sys.clone(), 1, DEFAULT_KL_CAP).unwrap();
        let b = KlTable::build_with(sys, 4, DEFAULT_KL_CAP).unwrap();
        assert!(a.rows == b.rows);
        assert!(a.mu_lists == b.mu_lists);
    }

    #[test]
    fn cap_is_enforced() {
        let sys = Arc::new(CoxeterSystem::build(CartanType::A, 4).unwrap());
        assert!(matches!(KlTable::build_with(sys, 1, 100), Err(KlError::TooLarge { order: 120, cap: 100 })));
    }
}

#[cfg(test)]
mod oracle_agreement {
    use super::*;
    use crate::coxeter::CartanType;

    fn agree_everywhere(label: CartanType, rank: usize) {
        let sys = Arc::new(CoxeterSystem::build(label, rank).unwrap());
        let table = KlTable::build(sys.clone()).unwrap();
        let oracle = BarInvarianceOracle::new(&sys).unwrap();
        for w in sys.elements() {
            let column = oracle.kl_column(w);
            for y in sys.elements() {
                assert_eq!(table.kl_polynomial(y, w), &column[y.index()], "P_{{{y:?},{w:?}}}");
            }
        }
    }

    #[test]
    fn recursion_matches_oracle_on_a3_b3_g2() {
        agree_everywhere(CartanType::A, 2);
        agree_everywhere(CartanType::A, 3);
        agree_everywhere(CartanType::B, 3);
        let g2 = Arc::new(CoxeterSystem::from_coxeter_matrix(&[vec![1, 6], vec![6, 1]], 100).unwrap());
        let table = KlTable::build(g2.clone()).unwrap();
        let oracle = BarInvarianceOracle::new(&g2).unwrap();
        for w in g2.elements() {
            let column = oracle.kl_column(w);
            for y in g2.elements() {
                assert_eq!(table.kl_polynomial(y, w), &column[y.index()]);
            }
        }
    }
}
