//! Named consistency checks over a [`Workbench`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cells::CellDecomposition;
use crate::coxeter::{CartanType, CoxeterSystem, Element};
use crate::hecke::{sigma_multiset, HeckeAlgebra};
use crate::homology::simple_simple_validation;
use crate::klpoly::{BarInvarianceOracle, DEFAULT_ORACLE_CAP};
use crate::poly::LaurentPolynomial;
use crate::workbench::Workbench;
use crate::{poset, rsk};

/// Above these orders the corresponding checks are skipped.
pub const HECKE_CHECK_CAP: usize = 200;
pub const SIMPLE_SIMPLE_CHECK_CAP: usize = 24;
pub const POSET_CHECK_CAP: usize = 1_200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    #[serde(rename = "ref")]
    pub reference: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

pub struct Check {
    pub name: &'static str,
    pub reference: &'static str,
    run: fn(&Workbench) -> Result<String, Verdict>,
}

pub enum Verdict {
    Fail(String),
    Skip(String),
}

fn fail<T>(msg: impl Into<String>) -> Result<T, Verdict> {
    Err(Verdict::Fail(msg.into()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Verdict> {
    if cond {
        Ok(())
    } else {
        Err(Verdict::Fail(msg()))
    }
}

pub const CHECKS: &[Check] = &[
    Check { name: "example10", reference: "A2 table: t = (0,1,1,1,1,3), i = (6,2,2,2,2,0), cells {e} {s,t,st,ts} {sts}", run: example10 },
    Check {
        name: "kl-basics",
        reference: "P_{w,w} = 1, P_{y,w} = 0 unless y <= w, deg P_{y,w} <= (l(w)-l(y)-1)/2, P_{y,w}(0) = 1",
        run: kl_basics,
    },
    Check { name: "kl-oracle", reference: "KL recursion agrees with the bar-invariant basis on every pair", run: kl_oracle },
    Check {
        name: "hecke-theta",
        reference: "theta_w theta_s = sigma-image of theta_s theta_{w^-1}; C_s C_s = (v + v^-1) C_s",
        run: hecke_theta,
    },
    Check { name: "cells", reference: "a(e) = 0, a(w0) = l(w0), a(w0^S) = l(w0^S), a monotone along the cell order", run: cells_check },
    Check {
        name: "a-involutions",
        reference: "l(u) - 2 deg P_{e,u} is the same for all involutions u of a two-sided cell",
        run: a_involutions,
    },
    Check { name: "rsk", reference: "type A: two-sided cells = RS shape fibers, shape(w0^S) = conjugate of lambda(S)", run: rsk_check },
    Check {
        name: "pd-formulas",
        reference: "pd D(w) = l(w), pd L(w) = pd N(w) = 2l(w0) - l(w), gl.dim = 2l(w0), pd D(x,y) = l(x) + l(y)",
        run: pd_formulas,
    },
    Check { name: "tilting-injective", reference: "t(w) = a(w), i(w) = 2a(w0 w), constant on two-sided cells", run: tilting_injective },
    Check { name: "std-simple-oracle", reference: "max i with Ext^i(D(w), L(y)) != 0 is l(w), attained at y = e", run: std_simple_oracle },
    Check { name: "simple-simple-oracle", reference: "max n with Ext^n(L(w), L(y)) != 0 is 2l(w0) - l(w)", run: simple_simple_oracle },
    Check {
        name: "linear-ext",
        reference: "Ext^i(D(x), D(y)<-i>) = 1 iff x >= y, l(x) - l(y) = i; Ext^{l(x)-l(y)}(D(x), D(y)) = 1 iff x >= y",
        run: linear_ext,
    },
    Check {
        name: "duality",
        reference: "(x,y,i,j) -> (w0x^-1w0, w0y^-1w0, i+j, -j) is an involution carrying linear Ext to graded Hom",
        run: duality,
    },
    Check {
        name: "ext1-dominant",
        reference: "Ext^1(D(x), D(e)<j>) has dimension |supp x| at j = l(x) - 2; at w0 this is the rank",
        run: ext1_dominant,
    },
    Check { name: "mobius", reference: "Bruhat Mobius function mu(x,y) = (-1)^{l(y)-l(x)}; length-2 intervals are diamonds", run: mobius },
    Check { name: "quiver", reference: "Hasse edges are reflection arrows x = t y", run: quiver },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

pub fn find_check(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

impl Check {
    pub fn run(&self, wb: &Workbench) -> CheckReport {
        let (outcome, detail) = match (self.run)(wb) {
            Ok(detail) => (Outcome::Pass, detail),
            Err(Verdict::Fail(d)) => (Outcome::Fail, d),
            Err(Verdict::Skip(d)) => (Outcome::Skip, d),
        };
        CheckReport { name: self.name, reference: self.reference, outcome, detail }
    }
}

/// Runs every check in order.
pub fn run_all(wb: &Workbench) -> Vec<CheckReport> {
    CHECKS.iter().map(|c| c.run(wb)).collect()
}

fn fmt(sys: &CoxeterSystem, x: Element) -> String {
    sys.format_element(x)
}

fn example10(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.label() != CartanType::A || sys.rank() != 2 {
        return Err(Verdict::Skip("only defined for A2".into()));
    }
    let h = wb.homology();
    let names = ["e", "s", "t", "st", "ts", "sts"];
    let mut t = Vec::new();
    let mut i = Vec::new();
    for name in names {
        let w = sys.parse_element(name).expect("valid word");
        t.push(h.pd_tilting(w).map_err(|e| Verdict::Fail(e.to_string()))?.value);
        i.push(h.pd_injective(w).map_err(|e| Verdict::Fail(e.to_string()))?.value);
    }
    ensure(t == [0, 1, 1, 1, 1, 3], || format!("t = {t:?}"))?;
    ensure(i == [6, 2, 2, 2, 2, 0], || format!("i = {i:?}"))?;
    let cells: BTreeSet<BTreeSet<String>> =
        wb.cells.cells().iter().map(|c| c.iter().map(|&x| fmt(sys, sys.element(x as usize))).collect()).collect();
    let expected: BTreeSet<BTreeSet<String>> =
        [vec!["e"], vec!["1", "2", "12", "21"], vec!["121"]].iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect();
    ensure(cells == expected, || format!("cells = {cells:?}"))?;
    Ok("t, i and cells reproduced".into())
}

fn kl_basics(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    for w in 0..sys.order() {
        for y in 0..sys.order() {
            let p = wb.kl.poly_at(y, w);
            let below = sys.bruhat_leq_at(y, w);
            if !below {
                ensure(p.is_zero(), || format!("P nonzero for {} not below {}", fmt(sys, sys.element(y)), fmt(sys, sys.element(w))))?;
                continue;
            }
            let pair = || format!("({}, {})", fmt(sys, sys.element(y)), fmt(sys, sys.element(w)));
            if y == w {
                ensure(p.is_one(), || format!("P_ww != 1 at {}", pair()))?;
                continue;
            }
            let gap = sys.length_at(w) - sys.length_at(y);
            ensure(p.degree().is_some_and(|d| 2 * d < gap), || format!("degree bound fails at {}", pair()))?;
            ensure(p.coeff(0) == 1.into(), || format!("constant term != 1 at {}", pair()))?;
            ensure(p.has_nonnegative_coeffs(), || format!("negative coefficient at {}", pair()))?;
        }
    }
    Ok(format!("{} nonzero polynomials", wb.kl.nonzero_count()))
}

fn kl_oracle(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.order() > DEFAULT_ORACLE_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds oracle cap {DEFAULT_ORACLE_CAP}", sys.order())));
    }
    let oracle = BarInvarianceOracle::new(sys).map_err(|e| Verdict::Fail(e.to_string()))?;
    for w in sys.elements() {
        let column = oracle.kl_column(w);
        for (y, p) in column.iter().enumerate() {
            ensure(p == wb.kl.poly_at(y, w.index()), || {
                format!("({}, {}): recursion {} vs oracle {}", fmt(sys, sys.element(y)), fmt(sys, w), wb.kl.poly_at(y, w.index()), p)
            })?;
        }
    }
    Ok(format!("{} pairs agree", sys.order() * sys.order()))
}

fn hecke_theta(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.order() > HECKE_CHECK_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds {HECKE_CHECK_CAP}", sys.order())));
    }
    let h = HeckeAlgebra::new(&wb.kl);
    let quantum = LaurentPolynomial::quantum_two();
    for s in 0..sys.rank() {
        let cs = h.kl_basis(sys.generator(s));
        ensure(h.multiply_standard(&cs, &cs) == cs.scaled(&quantum), || format!("C_s^2 fails for s = {}", s + 1))?;
    }
    for w in sys.elements() {
        for s in 0..sys.rank() {
            let left = h.theta_composition_left(w, s);
            let mirrored = sigma_multiset(sys, &h.theta_composition_right(sys.inverse(w), s));
            ensure(left == mirrored, || format!("left/right mismatch at ({}, {})", fmt(sys, w), s + 1))?;
            ensure(left == h.theta_left_from_mu(w, s), || format!("mu formula mismatch at ({}, {})", fmt(sys, w), s + 1))?;
        }
    }
    Ok(format!("{} compositions", sys.order() * sys.rank()))
}

fn cell_error(e: impl ToString) -> Verdict {
    Verdict::Fail(e.to_string())
}

fn cells_check(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    let cells: &CellDecomposition = &wb.cells;
    ensure(cells.a_function(sys.identity()).map_err(cell_error)? == 0, || "a(e) != 0".into())?;
    ensure(cells.a_function(sys.w0()).map_err(cell_error)? == sys.max_length(), || "a(w0) != l(w0)".into())?;
    for mask in 0u64..1 << sys.rank() {
        let subset: Vec<usize> = (0..sys.rank()).filter(|i| mask >> i & 1 == 1).collect();
        ensure(cells.check_a_parabolic(sys, &subset).map_err(cell_error)?, || format!("a(w0^S) != l(w0^S) for S = {subset:?}"))?;
    }
    for c in 0..cells.cell_count() {
        for d in 0..cells.cell_count() {
            if cells.cell_leq(c, d) {
                ensure(cells.a_value(c).map_err(cell_error)? >= cells.a_value(d).map_err(cell_error)?, || {
                    format!("a increases from cell {c} to cell {d}")
                })?;
            }
        }
    }
    Ok(format!("{} two-sided cells", cells.cell_count()))
}

fn a_involutions(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    match wb.cells.involution_consistency(sys).map_err(cell_error)? {
        Ok(()) => Ok("consistent on every cell".into()),
        Err(m) => fail(format!(
            "cell {}: l - 2 delta is {} at {} but {} at {}",
            m.cell,
            m.first.1,
            fmt(sys, m.first.0),
            m.second.1,
            fmt(sys, m.second.0)
        )),
    }
}

fn rsk_check(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.label() != CartanType::A {
        return Err(Verdict::Skip("type A only".into()));
    }
    let err = |e: crate::coxeter::CoxeterError| Verdict::Fail(e.to_string());
    let fibers = rsk::shape_fibers(sys).map_err(err)?;
    let fiber_sets: BTreeSet<Vec<u32>> = fibers.values().map(|f| f.iter().map(|x| x.index() as u32).collect()).collect();
    let cell_sets: BTreeSet<Vec<u32>> = wb.cells.cells().iter().cloned().collect();
    ensure(fiber_sets == cell_sets, || "shape fibers differ from two-sided cells".into())?;
    let n = sys.rank() + 1;
    ensure(fibers.len() == rsk::partitions(n).len(), || format!("{} fibers for n = {n}", fibers.len()))?;
    for mask in 0u64..1 << sys.rank() {
        let subset: Vec<usize> = (0..sys.rank()).filter(|i| mask >> i & 1 == 1).collect();
        ensure(rsk::check_w0s_shape(sys, &subset).map_err(err)?, || format!("shape(w0^S) fails for S = {subset:?}"))?;
    }
    Ok(format!("{} cells = {} shapes", cell_sets.len(), fibers.len()))
}

fn pd_formulas(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    let h = wb.homology();
    let gd = h.global_dimension();
    ensure(gd == 2 * sys.max_length(), || "global dimension".into())?;
    for w in sys.elements() {
        let l = sys.length(w);
        ensure(h.pd_standard(w) == l, || format!("pd standard at {}", fmt(sys, w)))?;
        ensure(h.pd_simple(w) + l == gd && h.pd_costandard(w) == h.pd_simple(w), || format!("pd simple at {}", fmt(sys, w)))?;
        ensure(h.pd_shuffled(sys.identity(), w) == h.pd_standard(w), || format!("pd D(e,w) at {}", fmt(sys, w)))?;
        let ww0 = sys.multiply(w, sys.w0()).expect("same system");
        let w0w = sys.multiply(sys.w0(), w).expect("same system");
        ensure(h.pd_shuffled(w, sys.w0()) == h.pd_costandard(ww0), || format!("pd D(w,w0) at {}", fmt(sys, w)))?;
        ensure(h.pd_shuffled(sys.w0(), w) == h.pd_costandard(w0w), || format!("pd D(w0,w) at {}", fmt(sys, w)))?;
    }
    Ok(format!("gl.dim = {gd}"))
}

fn tilting_injective(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    let h = wb.homology();
    let table = h.table().map_err(cell_error)?;
    for cell in wb.cells.cells() {
        let first = &table.rows[cell[0] as usize];
        for &x in cell {
            let row = &table.rows[x as usize];
            ensure(row.pd_tilting == first.pd_tilting && row.pd_injective == first.pd_injective, || {
                format!("not constant on the cell of {}", fmt(sys, sys.element(x as usize)))
            })?;
        }
    }
    for (w, row) in sys.elements().zip(&table.rows) {
        let w0w = sys.multiply(sys.w0(), w).expect("same system");
        ensure(row.pd_tilting.value == row.a && row.pd_injective.value == 2 * table.rows[w0w.index()].a, || {
            format!("t/i mismatch at {}", fmt(sys, w))
        })?;
        ensure(row.pd_tilting.value <= table.global_dimension && row.pd_injective.value <= table.global_dimension, || {
            format!("exceeds gl.dim at {}", fmt(sys, w))
        })?;
    }
    Ok(format!("status {}", table.rows[0].pd_tilting.status.as_str()))
}

fn max_nonzero_degree(top: i64, mut f: impl FnMut(i64) -> bool) -> Option<i64> {
    (0..=top).rev().find(|&i| f(i))
}

fn std_simple_oracle(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    let h = wb.homology();
    h.validate_std_simple().map_err(Verdict::Fail)?;
    let top = h.global_dimension() as i64;
    for w in sys.elements() {
        let m = max_nonzero_degree(top, |i| sys.elements().any(|y| h.ext_std_simple_dim(w, y, i) != 0));
        ensure(m == Some(h.pd_standard(w) as i64), || format!("max degree {m:?} at {}", fmt(sys, w)))?;
        ensure(h.ext_std_simple_dim(w, sys.identity(), sys.length(w) as i64) >= 1, || format!("no witness at {}", fmt(sys, w)))?;
    }
    Ok("head identity and top degree hold".into())
}

fn simple_simple_oracle(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if let Err(e) = simple_simple_validation() {
        return Err(Verdict::Skip(e.to_string()));
    }
    if sys.order() > SIMPLE_SIMPLE_CHECK_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds {SIMPLE_SIMPLE_CHECK_CAP}", sys.order())));
    }
    let h = wb.homology();
    let top = h.global_dimension() as i64;
    for w in sys.elements() {
        let m = max_nonzero_degree(top + 2, |n| sys.elements().any(|y| h.ext_simple_simple_dim(w, y, n).unwrap_or(0) != 0));
        ensure(m == Some(h.pd_simple(w) as i64), || format!("max degree {m:?} at {}", fmt(sys, w)))?;
    }
    let e = sys.identity();
    ensure(h.ext_simple_simple_dim(e, e, top).unwrap_or(0) != 0, || "Ext^{gl.dim}(L(e), L(e)) = 0".into())?;
    Ok("top degrees match pd L".into())
}

fn linear_ext(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.order() > POSET_CHECK_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds {POSET_CHECK_CAP}", sys.order())));
    }
    let h = wb.homology();
    let mut count = 0;
    for x in sys.elements() {
        for y in sys.elements() {
            let geq = sys.bruhat_leq_at(y.index(), x.index());
            let gap = sys.length(x) as i64 - sys.length(y) as i64;
            let c = h.carlin_dim(x, y);
            ensure(c.i == gap && c.dim == u64::from(geq), || format!("carlin at ({}, {})", fmt(sys, x), fmt(sys, y)))?;
            ensure(h.linear_ext_dim(x, y, gap) == u64::from(geq), || format!("linear at ({}, {})", fmt(sys, x), fmt(sys, y)))?;
            ensure(h.linear_ext_dim(x, y, gap + 1) == 0, || format!("off-degree at ({}, {})", fmt(sys, x), fmt(sys, y)))?;
            count += usize::from(geq);
        }
    }
    Ok(format!("{count} nonzero linear entries"))
}

fn duality(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.order() > POSET_CHECK_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds {POSET_CHECK_CAP}", sys.order())));
    }
    let h = wb.homology();
    let top = sys.max_length() as i64;
    for x in sys.elements() {
        for y in sys.elements() {
            for i in 0..=top {
                let (a, b, i2, j2) = h.duality_image(x, y, i, -i);
                ensure(h.duality_image(a, b, i2, j2) == (x, y, i, -i), || "not an involution".into())?;
                ensure(i2 == 0 && h.linear_ext_dim(x, y, i) == h.hom_dim(a, b, j2), || {
                    format!("membership changes at ({}, {}, {i})", fmt(sys, x), fmt(sys, y))
                })?;
            }
        }
    }
    Ok("linear family maps onto graded Hom".into())
}

fn ext1_dominant(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    let h = wb.homology();
    let w0 = sys.w0();
    let d = h.ext1_to_dominant(w0, sys.max_length() as i64 - 2);
    ensure(d == sys.rank() as u64, || format!("dimension {d} at w0, rank {}", sys.rank()))?;
    for x in sys.elements() {
        let l = sys.length(x) as i64;
        ensure(h.ext1_to_dominant(x, l - 2) == sys.support_size(x) as u64, || format!("support at {}", fmt(sys, x)))?;
        ensure(h.ext1_to_dominant(x, l - 1) == 0, || format!("off-degree at {}", fmt(sys, x)))?;
    }
    Ok(format!("dimension {d} at w0"))
}

fn mobius(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.order() > POSET_CHECK_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds {POSET_CHECK_CAP}", sys.order())));
    }
    if let Err(c) = poset::verify_verma_mobius(sys) {
        return fail(format!("mu({}, {}) = {}", fmt(sys, c.x), fmt(sys, c.y), c.mobius));
    }
    ensure(poset::check_diamond_property(sys), || "a length-2 interval is not a diamond".into())?;
    Ok(format!("incidence dimension {}", poset::incidence_dimension(sys)))
}

fn quiver(wb: &Workbench) -> Result<String, Verdict> {
    let sys = &wb.system;
    if sys.order() > POSET_CHECK_CAP {
        return Err(Verdict::Skip(format!("|W| = {} exceeds {POSET_CHECK_CAP}", sys.order())));
    }
    let arrows: BTreeSet<(usize, usize)> = poset::end_delta_quiver(sys).iter().map(|a| (a.from.index(), a.to.index())).collect();
    for y in 0..sys.order() {
        for x in 0..sys.order() {
            if sys.length_at(y) == sys.length_at(x) + 1 && sys.bruhat_leq_at(x, y) {
                ensure(arrows.contains(&(y, x)), || {
                    format!("covering {} < {} is not an arrow", fmt(sys, sys.element(x)), fmt(sys, sys.element(y)))
                })?;
            }
        }
    }
    Ok(format!("{} arrows", arrows.len()))
}
