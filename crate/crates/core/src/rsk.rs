//! Robinson–Schensted row insertion for symmetric groups.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coxeter::{CartanType, CoxeterError, CoxeterSystem, Element};

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|c| self.0.iter().take_while(|&&p| p > c).count()).collect())
    }

    /// Number of standard tableaux of this shape (hook length formula).
    pub fn standard_tableaux_count(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        let mut k = 0u128;
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                k += 1;
                num *= k;
                den *= ((len - c - 1) + (conj.0[c] - r - 1) + 1) as u128;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
        num / den
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rows of a tableau, top to bottom.
pub type Tableau = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauPair {
    pub insertion: Tableau,
    pub recording: Tableau,
}

impl TableauPair {
    pub fn shape(&self) -> Partition {
        Partition(self.insertion.iter().map(Vec::len).collect())
    }
}

/// Row insertion of a one-line permutation `w(1) ... w(n)`.
pub fn rsk_permutation(perm: &[usize]) -> TableauPair {
    let mut p: Tableau = Vec::new();
    let mut q: Tableau = Vec::new();
    for (step, &value) in perm.iter().enumerate() {
        let mut x = value;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            let r = &mut p[row];
            match r.iter().position(|&y| y > x) {
                Some(pos) => {
                    x = std::mem::replace(&mut r[pos], x);
                    row += 1;
                }
                None => {
                    r.push(x);
                    q[row].push(step + 1);
                    break;
                }
            }
        }
    }
    TableauPair { insertion: p, recording: q }
}

pub fn rsk(system: &CoxeterSystem, w: Element) -> Result<TableauPair, CoxeterError> {
    Ok(rsk_permutation(&system.to_permutation(w)?))
}

pub fn shape(system: &CoxeterSystem, w: Element) -> Result<Partition, CoxeterError> {
    rsk(system, w).map(|t| t.shape())
}

/// Elements grouped by RS shape; members ascending by index.
pub fn shape_fibers(system: &CoxeterSystem) -> Result<BTreeMap<Partition, Vec<Element>>, CoxeterError> {
    let mut fibers: BTreeMap<Partition, Vec<Element>> = BTreeMap::new();
    for w in system.elements() {
        fibers.entry(shape(system, w)?).or_default().push(w);
    }
    Ok(fibers)
}

/// Composition type of the parabolic subgroup generated by `subset`: a run of
/// `k` consecutive generators contributes a part `k + 1`.
pub fn parabolic_type(system: &CoxeterSystem, subset: &[usize]) -> Result<Partition, CoxeterError> {
    if system.label() != CartanType::A {
        return Err(CoxeterError::NotTypeA);
    }
    let n = system.rank() + 1;
    let mut parts = Vec::new();
    let mut run = 1;
    for i in 0..n - 1 {
        if subset.contains(&i) {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts.push(run);
    Ok(Partition::new(parts))
}

/// `shape(w_0^S) == λ(S)'`.
pub fn check_w0s_shape(system: &CoxeterSystem, subset: &[usize]) -> Result<bool, CoxeterError> {
    let w = system.parabolic_longest(subset)?;
    Ok(shape(system, w)? == parabolic_type(system, subset)?.conjugate())
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> CoxeterSystem {
        CoxeterSystem::build(CartanType::A, n - 1).unwrap()
    }

    #[test]
    fn small_shapes() {
        assert_eq!(rsk_permutation(&[1, 2, 3]).shape(), Partition::new(vec![3]));
        assert_eq!(rsk_permutation(&[3, 2, 1]).shape(), Partition::new(vec![1, 1, 1]));
        let t = rsk_permutation(&[2, 1, 3]);
        assert_eq!(t.shape(), Partition::new(vec![2, 1]));
        assert_eq!(t.insertion, vec![vec![1, 3], vec![2]]);
        assert_eq!(t.recording, vec![vec![1, 3], vec![2]]);
    }

    #[test]
    fn conjugation() {
        assert_eq!(Partition::new(vec![3]).conjugate(), Partition::new(vec![1, 1, 1]));
        assert_eq!(Partition::new(vec![2, 1]).conjugate(), Partition::new(vec![2, 1]));
        assert_eq!(Partition::new(vec![2, 2]).conjugate(), Partition::new(vec![2, 2]));
        assert_eq!(Partition::new(vec![4, 2, 1]).conjugate(), Partition::new(vec![3, 2, 1, 1]));
        for p in partitions(7) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().weight(), 7);
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn fibers_of_s3_and_s4() {
        let s3 = sym(3);
        let sizes: Vec<usize> = shape_fibers(&s3).unwrap().values().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 4, 1]);
        let s4 = sym(4);
        let fibers = shape_fibers(&s4).unwrap();
        assert_eq!(fibers.len(), 5);
        assert_eq!(fibers[&Partition::new(vec![4])], vec![s4.identity()]);
        assert_eq!(fibers[&Partition::new(vec![1, 1, 1, 1])], vec![s4.w0()]);
    }

    #[test]
    fn schutzenberger_symmetry_on_s4() {
        let s4 = sym(4);
        for w in s4.elements() {
            let t = rsk(&s4, w).unwrap();
            let u = rsk(&s4, s4.inverse(w)).unwrap();
            assert_eq!(u.insertion, t.recording);
            assert_eq!(u.recording, t.insertion);
        }
    }

    #[test]
    fn bijection_and_hook_lengths() {
        for n in [4, 5] {
            let sys = sym(n);
            let fibers = shape_fibers(&sys).unwrap();
            let mut total = 0u128;
            for (shape, members) in &fibers {
                let f = shape.standard_tableaux_count();
                assert_eq!(members.len() as u128, f * f);
                total += f * f;
            }
            assert_eq!(total as usize, sys.order());
            let pairs: std::collections::BTreeSet<(Tableau, Tableau)> = sys
                .elements()
                .map(|w| {
                    let t = rsk(&sys, w).unwrap();
                    (t.insertion, t.recording)
                })
                .collect();
            assert_eq!(pairs.len(), sys.order());
        }
    }

    #[test]
    fn w0s_shapes() {
        let s3 = sym(3);
        assert_eq!(parabolic_type(&s3, &[0]).unwrap(), Partition::new(vec![2, 1]));
        assert_eq!(parabolic_type(&s3, &[]).unwrap(), Partition::new(vec![1, 1, 1]));
        for sys in [sym(3), sym(4), sym(5)] {
            let r = sys.rank();
            for mask in 0u32..1 << r {
                let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
                assert!(check_w0s_shape(&sys, &subset).unwrap(), "{subset:?}");
            }
        }
    }

    #[test]
    fn rejects_other_types() {
        let b = CoxeterSystem::build(CartanType::B, 2).unwrap();
        assert!(matches!(rsk(&b, b.w0()), Err(CoxeterError::NotTypeA)));
    }
}
