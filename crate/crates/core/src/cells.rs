//! Left, right and two-sided Kazhdan–Lusztig cells, and Lusztig's `a`-function.
//!
//! Two elements are joined in the W-graph when `μ` is nonzero in either order.
//! For a joined pair `{x, y}`, `x ≤_L y` when the left descent set of `x` is not
//! contained in that of `y` (right descents for `≤_R`; the union of both
//! relations for `≤_LR`). Cells are the strongly connected components of the
//! resulting directed graph; the preorder on cells is reachability in its
//! condensation. With this orientation `e` is the unique maximal cell.
//!
//! The `a`-function is read off from involutions: on a distinguished involution
//! `d`, `a(d) = l(d) - 2δ(d)`, and for every element `l(z) - 2δ(z) >= a(z)`.
//! Since every two-sided cell contains a distinguished involution, `a` of a
//! cell is the minimum of `l(u) - 2δ(u)` over its involutions. In type A every
//! involution is distinguished, so all involutions of a cell agree; in other
//! types they need not, and [`CellDecomposition::involution_consistency`]
//! reports the first disagreement.

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Side};
use crate::klpoly::KlTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellSide {
    Left,
    Right,
    #[serde(rename = "twosided")]
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("two-sided cell {cell} contains no involution")]
    NoInvolution { cell: usize },
    #[error("a-function is only defined on a two-sided decomposition")]
    NotTwoSided,
}

/// Two involutions of one two-sided cell with different `l(u) - 2δ(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionMismatch {
    pub cell: usize,
    pub first: (Element, usize),
    pub second: (Element, usize),
}

#[derive(Debug, Clone)]
pub struct CellDecomposition {
    side: CellSide,
    system_id: u32,
    cell_of: Vec<u32>,
    cells: Vec<Vec<u32>>,
    /// `reach[c][d]`: cell `c` is below or equal to cell `d`.
    reach: Vec<Vec<bool>>,
    /// Two-sided only: per cell, `(involution, l(u) - 2δ(u))`.
    involution_values: Option<Vec<Vec<(u32, usize)>>>,
    a_values: Option<Vec<usize>>,
}

impl CellDecomposition {
    pub fn build(kl: &KlTable, side: CellSide) -> Result<Self, CellError> {
        let sys = kl.system();
        let n = sys.order();
        let left: Vec<u64> = (0..n).map(|i| sys.descent_mask_at(i, Side::Left)).collect();
        let right: Vec<u64> = (0..n).map(|i| sys.descent_mask_at(i, Side::Right)).collect();
        let not_subset = |a: u64, b: u64| a & !b != 0;

        // arcs x -> y meaning x <= y
        let mut arcs: Vec<Vec<u32>> = vec![Vec::new(); n];
        for w in 0..n {
            for &(y, _) in kl.mu_list_at(w) {
                let y = y as usize;
                for (a, b) in [(y, w), (w, y)] {
                    let by_left = not_subset(left[a], left[b]);
                    let by_right = not_subset(right[a], right[b]);
                    let related = match side {
                        CellSide::Left => by_left,
                        CellSide::Right => by_right,
                        CellSide::TwoSided => by_left || by_right,
                    };
                    if related {
                        arcs[a].push(b as u32);
                    }
                }
            }
        }

        let components = tarjan_scc(&arcs);
        let mut cells: Vec<Vec<u32>> = components
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        cells.sort_by_key(|c| c[0]);
        let mut cell_of = vec![0u32; n];
        for (id, cell) in cells.iter().enumerate() {
            for &x in cell {
                cell_of[x as usize] = id as u32;
            }
        }

        let k = cells.len();
        let mut cell_arcs: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (x, targets) in arcs.iter().enumerate() {
            for &y in targets {
                let (c, d) = (cell_of[x] as usize, cell_of[y as usize] as usize);
                if c != d {
                    cell_arcs[c].push(d);
                }
            }
        }
        let mut reach = vec![vec![false; k]; k];
        for (c, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![c];
            row[c] = true;
            while let Some(u) = stack.pop() {
                for &d in &cell_arcs[u] {
                    if !row[d] {
                        row[d] = true;
                        stack.push(d);
                    }
                }
            }
        }

        let mut decomposition =
            CellDecomposition { side, system_id: sys.id(), cell_of, cells, reach, involution_values: None, a_values: None };
        if side == CellSide::TwoSided {
            decomposition.attach_a_function(kl)?;
        }
        Ok(decomposition)
    }

    fn attach_a_function(&mut self, kl: &KlTable) -> Result<(), CellError> {
        let sys = kl.system();
        let mut values = Vec::with_capacity(self.cells.len());
        let mut a_values = Vec::with_capacity(self.cells.len());
        for (id, cell) in self.cells.iter().enumerate() {
            let invs: Vec<(u32, usize)> = cell
                .iter()
                .filter(|&&x| sys.inverse_at(x as usize) == x as usize)
                .map(|&u| (u, sys.length_at(u as usize) - 2 * kl.delta_at(u as usize)))
                .collect();
            let a = invs.iter().map(|&(_, a)| a).min().ok_or(CellError::NoInvolution { cell: id })?;
            values.push(invs);
            a_values.push(a);
        }
        self.involution_values = Some(values);
        self.a_values = Some(a_values);
        Ok(())
    }

    pub fn side(&self) -> CellSide {
        self.side
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_id(&self, x: Element) -> usize {
        assert_eq!(x.system_id(), self.system_id, "element from a different system");
        self.cell_of[x.index()] as usize
    }

    pub fn cell_id_at(&self, x: usize) -> usize {
        self.cell_of[x] as usize
    }

    /// Element indices of cell `id`, ascending.
    pub fn cell_members(&self, id: usize) -> &[u32] {
        &self.cells[id]
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    /// Cell `c` lies below or equals cell `d` in the cell preorder.
    pub fn cell_leq(&self, c: usize, d: usize) -> bool {
        self.reach[c][d]
    }

    /// `x ≤ y` in the preorder of this side.
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.reach[self.cell_id(x)][self.cell_id(y)]
    }

    pub fn same_cell(&self, x: Element, y: Element) -> bool {
        self.cell_id(x) == self.cell_id(y)
    }

    /// `a` of a two-sided cell.
    pub fn a_value(&self, cell: usize) -> Result<usize, CellError> {
        self.a_values.as_ref().map(|a| a[cell]).ok_or(CellError::NotTwoSided)
    }

    /// Lusztig's `a(w)`.
    pub fn a_function(&self, w: Element) -> Result<usize, CellError> {
        self.a_value(self.cell_id(w))
    }

    pub fn a_function_at(&self, w: usize) -> Result<usize, CellError> {
        self.a_value(self.cell_of[w] as usize)
    }

    /// `(involution, l(u) - 2δ(u))` for every involution of a two-sided cell.
    pub fn involution_values(&self, cell: usize) -> Result<&[(u32, usize)], CellError> {
        self.involution_values.as_ref().map(|v| v[cell].as_slice()).ok_or(CellError::NotTwoSided)
    }

    /// Checks that all involutions of each two-sided cell give the same
    /// `l(u) - 2δ(u)`.
    pub fn involution_consistency(&self, sys: &CoxeterSystem) -> Result<Result<(), InvolutionMismatch>, CellError> {
        let values = self.involution_values.as_ref().ok_or(CellError::NotTwoSided)?;
        for (cell, invs) in values.iter().enumerate() {
            if let Some(&(u, a)) = invs.first() {
                if let Some(&(u2, a2)) = invs.iter().find(|&&(_, b)| b != a) {
                    return Ok(Err(InvolutionMismatch {
                        cell,
                        first: (sys.element(u as usize), a),
                        second: (sys.element(u2 as usize), a2),
                    }));
                }
            }
        }
        Ok(Ok(()))
    }

    /// `a(w_0^S) == l(w_0^S)` for the parabolic subgroup generated by `subset`.
    pub fn check_a_parabolic(&self, sys: &CoxeterSystem, subset: &[usize]) -> Result<bool, CellError> {
        let w = sys.parabolic_longest(subset).map_err(|_| CellError::NotTwoSided)?;
        Ok(self.a_function(w)? == sys.length(w))
    }

    /// Serializable cell list: ShortLex words (1-based) and `a`-values.
    pub fn export(&self, sys: &CoxeterSystem) -> CellsExport {
        CellsExport {
            side: self.side,
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(id, cell)| CellExport {
                    id,
                    a: self.a_values.as_ref().map(|a| a[id]),
                    elements: cell.iter().map(|&x| sys.word_one_based(sys.element(x as usize))).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellsExport {
    pub side: CellSide,
    pub cells: Vec<CellExport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellExport {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    pub elements: Vec<Vec<usize>>,
}

/// Iterative Tarjan; components come out in reverse topological order.
fn tarjan_scc(arcs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    const UNVISITED: u32 = u32::MAX;
    let n = arcs.len();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut components = Vec::new();
    let mut next = 0u32;
    let mut call: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            let vi = v as usize;
            if *edge == 0 && index[vi] == UNVISITED {
                index[vi] = next;
                lowlink[vi] = next;
                next += 1;
                stack.push(v);
                on_stack[vi] = true;
            }
            if let Some(&u) = arcs[vi].get(*edge) {
                *edge += 1;
                let ui = u as usize;
                if index[ui] == UNVISITED {
                    call.push((u, 0));
                } else if on_stack[ui] {
                    lowlink[vi] = lowlink[vi].min(index[ui]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let p = parent as usize;
                lowlink[p] = lowlink[p].min(lowlink[vi]);
            }
            if lowlink[vi] == index[vi] {
                let mut component = Vec::new();
                loop {
                    let x = stack.pop().unwrap();
                    on_stack[x as usize] = false;
                    component.push(x);
                    if x == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn kl(label: CartanType, rank: usize) -> KlTable {
        KlTable::build(Arc::new(CoxeterSystem::build(label, rank).unwrap())).unwrap()
    }

    #[test]
    fn tarjan_small_graphs() {
        let arcs = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let mut comps: Vec<BTreeSet<u32>> = tarjan_scc(&arcs).into_iter().map(|c| c.into_iter().collect()).collect();
        comps.sort();
        assert_eq!(comps, vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([3])]);
        assert_eq!(tarjan_scc(&[vec![], vec![]]).len(), 2);
    }

    #[test]
    fn a2_two_sided_cells() {
        let t = kl(CartanType::A, 2);
        let sys = t.system();
        let cells = CellDecomposition::build(&t, CellSide::TwoSided).unwrap();
        assert_eq!(cells.cell_count(), 3);
        assert_eq!(cells.cell_members(0), &[0]);
        assert_eq!(cells.cell_members(1), &[1, 2, 3, 4]);
        assert_eq!(cells.cell_members(2), &[5]);
        assert_eq!(cells.a_function(sys.identity()).unwrap(), 0);
        assert_eq!(cells.a_function(sys.generator(0)).unwrap(), 1);
        assert_eq!(cells.a_function(sys.w0()).unwrap(), 3);
        // e is on top, w0 at the bottom
        assert!(cells.leq(sys.w0(), sys.generator(0)));
        assert!(cells.leq(sys.generator(0), sys.identity()));
        assert!(!cells.leq(sys.identity(), sys.w0()));
    }

    #[test]
    fn one_sided_cells_in_a2() {
        let t = kl(CartanType::A, 2);
        let left = CellDecomposition::build(&t, CellSide::Left).unwrap();
        let right = CellDecomposition::build(&t, CellSide::Right).unwrap();
        assert_eq!(left.cell_count(), 4);
        assert_eq!(right.cell_count(), 4);
        assert!(matches!(left.a_function(t.system().identity()), Err(CellError::NotTwoSided)));
    }

    #[test]
    fn extremes_are_singletons() {
        for (label, rank) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::D, 4)] {
            let t = kl(label, rank);
            let sys = t.system();
            let cells = CellDecomposition::build(&t, CellSide::TwoSided).unwrap();
            assert_eq!(cells.cell_members(cells.cell_id(sys.identity())).len(), 1);
            assert_eq!(cells.cell_members(cells.cell_id(sys.w0())).len(), 1);
            assert_eq!(cells.a_function(sys.w0()).unwrap(), sys.max_length());
            for x in sys.elements() {
                let a = cells.a_function(x).unwrap();
                assert!(a <= sys.max_length());
                assert_eq!(a == 0, x == sys.identity());
            }
        }
    }

    #[test]
    fn preorder_is_antisymmetric_on_cells_and_a_is_monotone() {
        let t = kl(CartanType::B, 3);
        let cells = CellDecomposition::build(&t, CellSide::TwoSided).unwrap();
        for c in 0..cells.cell_count() {
            for d in 0..cells.cell_count() {
                if c != d {
                    assert!(!(cells.cell_leq(c, d) && cells.cell_leq(d, c)));
                }
                if cells.cell_leq(c, d) {
                    assert!(cells.a_value(c).unwrap() >= cells.a_value(d).unwrap());
                }
            }
        }
    }

    #[test]
    fn left_and_right_cells_correspond_under_inversion() {
        let t = kl(CartanType::A, 3);
        let sys = t.system();
        let left = CellDecomposition::build(&t, CellSide::Left).unwrap();
        let right = CellDecomposition::build(&t, CellSide::Right).unwrap();
        for x in sys.elements() {
            for y in sys.elements() {
                assert_eq!(left.same_cell(x, y), right.same_cell(sys.inverse(x), sys.inverse(y)));
            }
        }
    }

    #[test]
    fn left_multiplication_by_w0_permutes_right_cells() {
        let t = kl(CartanType::A, 3);
        let sys = t.system();
        let right = CellDecomposition::build(&t, CellSide::Right).unwrap();
        let image: BTreeSet<Vec<u32>> = right
            .cells()
            .iter()
            .map(|cell| {
                let mut c: Vec<u32> =
                    cell.iter().map(|&x| sys.multiply(sys.w0(), sys.element(x as usize)).unwrap().index() as u32).collect();
                c.sort_unstable();
                c
            })
            .collect();
        let original: BTreeSet<Vec<u32>> = right.cells().iter().cloned().collect();
        assert_eq!(image, original);
    }

    #[test]
    fn parabolic_longest_elements_in_a3() {
        let t = kl(CartanType::A, 3);
        let sys = t.system();
        let cells = CellDecomposition::build(&t, CellSide::TwoSided).unwrap();
        for mask in 0u32..8 {
            let subset: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            assert!(cells.check_a_parabolic(sys, &subset).unwrap());
        }
    }

    #[test]
    fn involutions_disagree_in_type_b() {
        // the middle cell of B2 holds both s (value 1) and sts (value 3)
        let t = kl(CartanType::B, 2);
        let sys = t.system();
        let cells = CellDecomposition::build(&t, CellSide::TwoSided).unwrap();
        assert_eq!(cells.cell_count(), 3);
        let mismatch = cells.involution_consistency(sys).unwrap().unwrap_err();
        assert_eq!(mismatch.first.1, 1);
        assert_eq!(mismatch.second.1, 3);
        assert_eq!(cells.a_function(sys.generator(0)).unwrap(), 1);
        let a3 = kl(CartanType::A, 3);
        let c3 = CellDecomposition::build(&a3, CellSide::TwoSided).unwrap();
        assert_eq!(c3.involution_consistency(a3.system()).unwrap(), Ok(()));
    }
}
