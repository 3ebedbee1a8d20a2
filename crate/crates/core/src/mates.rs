//! Adjunctions inside a finite 2-category and the mate correspondence.
//!
//! Composition is diagrammatic: `l;r` is `l` followed by `r`, so a unit of
//! `l -| r` with `l: A -> B` is a 2-cell `id_A => l;r`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{from_poset, functor_category, FinCat, FinFunctor, FunctorCategory};
use crate::poset::FinPoset;
use crate::twocat::{SearchError, TwoCat, DEFAULT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MateError {
    #[error("square boundary does not match the adjunctions: {0}")]
    Boundary(String),
    #[error("filler is not invertible")]
    NotInvertible,
    #[error("cell composite undefined: {0}")]
    Undefined(&'static str),
}

/// The 2-category of the given posets, monotone maps, and pointwise order.
pub fn pos_twocat(ps: &[FinPoset]) -> TwoCat {
    let n = ps.len();
    let maps: Vec<Vec<Vec<usize>>> = (0..n * n).map(|i| ps[i / n].monotone_maps(&ps[i % n])).collect();
    let index: Vec<HashMap<&[usize], usize>> =
        maps.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect()).collect();
    let homs = (0..n * n)
        .map(|i| {
            let (p, q) = (&ps[i / n], &ps[i % n]);
            let labels: Vec<String> = maps[i].iter().map(|m| format!("{m:?}")).collect();
            let le = |f: usize, g: usize| (0..p.len()).all(|x| q.leq(maps[i][f][x], maps[i][g][x]));
            from_poset(&FinPoset::from_fn(labels, le))
        })
        .collect();
    let id1 = (0..n).map(|x| index[x * n + x][(0..ps[x].len()).collect::<Vec<_>>().as_slice()]).collect();
    let objects = (0..n).map(|x| format!("P{x}")).collect();
    TwoCat::build_posetal_unchecked(objects, homs, id1, |x, y, z, u, v| {
        let (f, g) = (&maps[x * n + y][u], &maps[y * n + z][v]);
        let h: Vec<usize> = f.iter().map(|&a| g[a]).collect();
        index[x * n + z][h.as_slice()]
    })
}

/// The 2-category of the given categories, functors, and natural transformations.
pub fn cat_twocat(cs: &[FinCat]) -> TwoCat {
    let n = cs.len();
    let fcs: Vec<FunctorCategory> = (0..n * n).map(|i| functor_category(&cs[i / n], &cs[i % n])).collect();
    let homs = fcs.iter().map(|f| f.cat.clone()).collect();
    let id1 = (0..n).map(|x| fcs[x * n + x].functor_id(&FinFunctor::identity(&cs[x])).unwrap()).collect();
    let objects = (0..n).map(|x| format!("C{x}")).collect();
    let c1 = |x: usize, y: usize, z: usize, u: usize, v: usize| {
        let f = fcs[x * n + y].functors[u].then(&fcs[y * n + z].functors[v]);
        fcs[x * n + z].functor_id(&f).expect("composite functor is listed")
    };
    // Godement product: (a*b)_c = G(a_c) ; b_{F'c}
    let c2 = |x: usize, y: usize, z: usize, a: usize, b: usize| {
        let (fxy, fyz) = (&fcs[x * n + y], &fcs[y * n + z]);
        let (f, f2) = (fxy.cat.src(a), fxy.cat.tgt(a));
        let (g, g2) = (fyz.cat.src(b), fyz.cat.tgt(b));
        let gf = &fyz.functors[g];
        let comps: Vec<usize> = (0..cs[x].n_objects())
            .map(|c| {
                let left = gf.mor[fxy.transformations[a][c]];
                let right = fyz.transformations[b][fxy.functors[f2].obj[c]];
                cs[z].compose(left, right).expect("whiskered components compose")
            })
            .collect();
        fcs[x * n + z].transformation_id(c1(x, y, z, f, g), c1(x, y, z, f2, g2), &comps).expect("Godement product is natural")
    };
    TwoCat::build_unchecked(objects, homs, id1, c1, c2)
}

/// One object with an idempotent endomorphism `e`.
pub fn idempotent_cat() -> FinCat {
    let mor = |label: &str| crate::fincat::Morphism { label: label.into(), src: 0, tgt: 0 };
    FinCat::new(vec!["*".into()], vec![mor("1"), mor("e")], vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
        .expect("idempotent monoid")
}

/// A non-posetal ambient: categories `[0]`, `[1]` and the idempotent monoid.
pub fn nonposetal_bed() -> TwoCat {
    let arrow = from_poset(&crate::poset::ordinal_poset(1));
    cat_twocat(&[FinCat::terminal(), arrow, idempotent_cat()])
}

/// `l -| r` with `l: a -> b`, `unit: id_a => l;r`, `counit: r;l => id_b`. Ids are global.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdjunctionData {
    pub a: usize,
    pub b: usize,
    pub l: usize,
    pub r: usize,
    pub unit: usize,
    pub counit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `left;bottom => top;right`, horizontals are left adjoints.
    Colax,
    /// `top;right => left;bottom`, horizontals are right adjoints.
    Lax,
}

/// A square of 1-cells with a 2-cell filler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square2 {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub filler: usize,
    pub direction: Direction,
}

impl Square2 {
    /// Expected source and target of the filler.
    pub fn boundary(&self, x: &TwoCat) -> Option<(usize, usize)> {
        Some(match self.direction {
            Direction::Colax => (x.comp1(self.left, self.bottom)?, x.comp1(self.top, self.right)?),
            Direction::Lax => (x.comp1(self.top, self.right)?, x.comp1(self.left, self.bottom)?),
        })
    }

    pub fn is_well_formed(&self, x: &TwoCat) -> bool {
        let c = x.two_cell(self.filler);
        self.boundary(x) == Some((c.dom, c.cod))
    }
}

/// Which triangle identity fails, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriangleFailure {
    Left,
    Right,
    Malformed,
}

pub fn triangle_failure(x: &TwoCat, adj: &AdjunctionData) -> Option<TriangleFailure> {
    let tri = || -> Option<(bool, bool)> {
        let (l, r) = (adj.l, adj.r);
        let (id2l, id2r) = (x.id2(l), x.id2(r));
        let left = x.vcomp(x.comp2(adj.unit, id2l)?, x.comp2(id2l, adj.counit)?)?;
        let right = x.vcomp(x.comp2(id2r, adj.unit)?, x.comp2(adj.counit, id2r)?)?;
        Some((left == id2l, right == id2r))
    };
    let ok_shape = {
        let (l, r) = (x.one_cell(adj.l), x.one_cell(adj.r));
        let (u, c) = (x.two_cell(adj.unit), x.two_cell(adj.counit));
        l.src == adj.a
            && l.tgt == adj.b
            && r.src == adj.b
            && r.tgt == adj.a
            && Some(u.cod) == x.comp1(adj.l, adj.r)
            && u.dom == x.id1(adj.a)
            && Some(c.dom) == x.comp1(adj.r, adj.l)
            && c.cod == x.id1(adj.b)
    };
    if !ok_shape {
        return Some(TriangleFailure::Malformed);
    }
    match tri() {
        None => Some(TriangleFailure::Malformed),
        Some((true, true)) => None,
        Some((false, _)) => Some(TriangleFailure::Left),
        Some((true, false)) => Some(TriangleFailure::Right),
    }
}

pub fn check_triangle(x: &TwoCat, adj: &AdjunctionData) -> bool {
    triangle_failure(x, adj).is_none()
}

/// All adjunctions in `x`, sorted. Fails once more than `budget` candidates are examined.
pub fn find_adjunctions(x: &TwoCat, budget: u64) -> Result<Vec<AdjunctionData>, SearchError> {
    let n = x.n_objects();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for l in x.one_cells_between(a, b) {
                for r in x.one_cells_between(b, a) {
                    pairs.push((a, b, l, r));
                }
            }
        }
    }
    let candidates: u64 = pairs
        .iter()
        .map(|&(a, b, l, r)| {
            let (lr, rl) = (x.comp1(l, r).unwrap(), x.comp1(r, l).unwrap());
            (x.two_cells_between(x.id1(a), lr).len() * x.two_cells_between(rl, x.id1(b)).len()) as u64
        })
        .sum();
    if candidates > budget {
        return Err(SearchError::BudgetExceeded(budget));
    }
    let mut out: Vec<AdjunctionData> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b, l, r)| {
            let lr = x.comp1(l, r).unwrap();
            let rl = x.comp1(r, l).unwrap();
            let units = x.two_cells_between(x.id1(a), lr);
            let counits = x.two_cells_between(rl, x.id1(b));
            let mut found = Vec::new();
            for &unit in &units {
                for &counit in &counits {
                    let adj = AdjunctionData { a, b, l, r, unit, counit };
                    if check_triangle(x, &adj) {
                        found.push(adj);
                    }
                }
            }
            found
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

pub fn find_adjunctions_default(x: &TwoCat) -> Vec<AdjunctionData> {
    find_adjunctions(x, DEFAULT_BUDGET).expect("default budget suffices for small ambients")
}

/// The identity adjunction on an object.
pub fn identity_adjunction(x: &TwoCat, a: usize) -> AdjunctionData {
    let i = x.id1(a);
    AdjunctionData { a, b: a, l: i, r: i, unit: x.id2(i), counit: x.id2(i) }
}

/// Replaces the counit by another parallel 2-cell; `None` if the counit is the only one.
pub fn perturb_counit(x: &TwoCat, adj: &AdjunctionData) -> Option<AdjunctionData> {
    let c = x.two_cell(adj.counit);
    x.two_cells_between(c.dom, c.cod)
        .into_iter()
        .find(|&e| e != adj.counit)
        .map(|counit| AdjunctionData { counit, ..*adj })
}

/// `l;l'` -| `r';r` for `l: A -> B`, `l': B -> C`.
pub fn compose_adjunctions(x: &TwoCat, first: &AdjunctionData, second: &AdjunctionData) -> Option<AdjunctionData> {
    if first.b != second.a {
        return None;
    }
    let l = x.comp1(first.l, second.l)?;
    let r = x.comp1(second.r, first.r)?;
    let unit = x.vcomp(first.unit, x.whisker(Some(first.l), second.unit, Some(first.r))?)?;
    let counit = x.vcomp(x.whisker(Some(second.r), first.counit, Some(second.l))?, second.counit)?;
    Some(AdjunctionData { a: first.a, b: second.b, l, r, unit, counit })
}

fn check_boundary(x: &TwoCat, sq: &Square2, top: &AdjunctionData, bottom: &AdjunctionData) -> Result<(), MateError> {
    let (t, bo) = match sq.direction {
        Direction::Colax => (top.l, bottom.l),
        Direction::Lax => (top.r, bottom.r),
    };
    if sq.top != t || sq.bottom != bo {
        return Err(MateError::Boundary("horizontal edges are not the adjoints".into()));
    }
    let (l, r) = (x.one_cell(sq.left), x.one_cell(sq.right));
    let ok = match sq.direction {
        Direction::Colax => l.src == top.a && l.tgt == bottom.a && r.src == top.b && r.tgt == bottom.b,
        Direction::Lax => l.src == top.b && l.tgt == bottom.b && r.src == top.a && r.tgt == bottom.a,
    };
    if !ok || !sq.is_well_formed(x) {
        return Err(MateError::Boundary("vertical edges or filler do not fit".into()));
    }
    Ok(())
}

/// The mate of `sq` with respect to `top` (upper horizontal) and `bottom` (lower horizontal).
pub fn mate(x: &TwoCat, sq: &Square2, top: &AdjunctionData, bottom: &AdjunctionData) -> Result<Square2, MateError> {
    check_boundary(x, sq, top, bottom)?;
    let u = MateError::Undefined;
    match sq.direction {
        Direction::Colax => {
            let (a, b) = (sq.left, sq.right);
            let ra = x.comp1(top.r, a).ok_or(u("r;a"))?;
            let br = x.comp1(b, bottom.r).ok_or(u("b;r'"))?;
            let steps = [
                x.comp2(x.id2(ra), bottom.unit).ok_or(u("r;a;unit'"))?,
                x.whisker(Some(top.r), sq.filler, Some(bottom.r)).ok_or(u("r;filler;r'"))?,
                x.whisker(None, top.counit, Some(br)).ok_or(u("counit;b;r'"))?,
            ];
            let filler = x.vcomp_path(&steps).ok_or(u("colax mate"))?;
            Ok(Square2 { top: top.r, bottom: bottom.r, left: b, right: a, filler, direction: Direction::Lax })
        }
        Direction::Lax => {
            let (b, a) = (sq.left, sq.right);
            let al = x.comp1(a, bottom.l).ok_or(u("a;l'"))?;
            let lb = x.comp1(top.l, b).ok_or(u("l;b"))?;
            let steps = [
                x.whisker(None, top.unit, Some(al)).ok_or(u("unit;a;l'"))?,
                x.whisker(Some(top.l), sq.filler, Some(bottom.l)).ok_or(u("l;filler;l'"))?,
                x.whisker(Some(lb), bottom.counit, None).ok_or(u("l;b;counit'"))?,
            ];
            let filler = x.vcomp_path(&steps).ok_or(u("lax mate"))?;
            Ok(Square2 { top: top.l, bottom: bottom.l, left: a, right: b, filler, direction: Direction::Colax })
        }
    }
}

/// Horizontal pasting: `first` on the left, `second` on the right.
pub fn paste_colax(x: &TwoCat, first: &Square2, second: &Square2) -> Option<Square2> {
    if first.direction != Direction::Colax || second.direction != Direction::Colax || first.right != second.left {
        return None;
    }
    let filler = x.vcomp(
        x.whisker(None, first.filler, Some(second.bottom))?,
        x.whisker(Some(first.top), second.filler, None)?,
    )?;
    Some(Square2 {
        top: x.comp1(first.top, second.top)?,
        bottom: x.comp1(first.bottom, second.bottom)?,
        left: first.left,
        right: second.right,
        filler,
        direction: Direction::Colax,
    })
}

/// Pasting of lax squares whose right adjoints run `second` then `first`.
pub fn paste_lax(x: &TwoCat, first: &Square2, second: &Square2) -> Option<Square2> {
    if first.direction != Direction::Lax || second.direction != Direction::Lax || first.left != second.right {
        return None;
    }
    let filler = x.vcomp(
        x.whisker(Some(second.top), first.filler, None)?,
        x.whisker(None, second.filler, Some(first.bottom))?,
    )?;
    Some(Square2 {
        top: x.comp1(second.top, first.top)?,
        bottom: x.comp1(second.bottom, first.bottom)?,
        left: second.left,
        right: first.right,
        filler,
        direction: Direction::Lax,
    })
}

/// Unit and counit coherence for a square of left adjoints with invertible filler.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaxFunAdjReport {
    pub mate: Square2,
    /// `unit;a` followed by `l;mate` and `inverse;r'`.
    pub unit_cell: usize,
    /// `r;inverse` followed by `mate;l'` and `b;counit'`.
    pub counit_cell: usize,
    pub unit_ok: bool,
    pub counit_ok: bool,
}

impl LaxFunAdjReport {
    pub fn passed(&self) -> bool {
        self.unit_ok && self.counit_ok
    }
}

pub fn laxfunadj_unit_counit(
    x: &TwoCat,
    sq: &Square2,
    top: &AdjunctionData,
    bottom: &AdjunctionData,
) -> Result<LaxFunAdjReport, MateError> {
    if sq.direction != Direction::Colax {
        return Err(MateError::Boundary("expected a square of left adjoints".into()));
    }
    let inv = x.inverse_two_cell(sq.filler).ok_or(MateError::NotInvertible)?;
    let m = mate(x, sq, top, bottom)?;
    let (a, b, u) = (sq.left, sq.right, MateError::Undefined);
    let unit_cell = x
        .vcomp_path(&[
            x.whisker(None, top.unit, Some(a)).ok_or(u("unit;a"))?,
            x.whisker(Some(top.l), m.filler, None).ok_or(u("l;mate"))?,
            x.whisker(None, inv, Some(bottom.r)).ok_or(u("inverse;r'"))?,
        ])
        .ok_or(u("unit composite"))?;
    let counit_cell = x
        .vcomp_path(&[
            x.whisker(Some(top.r), inv, None).ok_or(u("r;inverse"))?,
            x.whisker(None, m.filler, Some(bottom.l)).ok_or(u("mate;l'"))?,
            x.whisker(Some(b), bottom.counit, None).ok_or(u("b;counit'"))?,
        ])
        .ok_or(u("counit composite"))?;
    let unit_ok = Some(unit_cell) == x.whisker(Some(a), bottom.unit, None);
    let counit_ok = Some(counit_cell) == x.whisker(None, top.counit, Some(b));
    Ok(LaxFunAdjReport { mate: m, unit_cell, counit_cell, unit_ok, counit_ok })
}

/// Every colax square with horizontals `top.l`, `bottom.l`.
pub fn colax_squares(x: &TwoCat, top: &AdjunctionData, bottom: &AdjunctionData) -> Vec<Square2> {
    let mut out = Vec::new();
    for left in x.one_cells_between(top.a, bottom.a) {
        for right in x.one_cells_between(top.b, bottom.b) {
            let (s, t) = (x.comp1(left, bottom.l).unwrap(), x.comp1(top.l, right).unwrap());
            for filler in x.two_cells_between(s, t) {
                out.push(Square2 { top: top.l, bottom: bottom.l, left, right, filler, direction: Direction::Colax });
            }
        }
    }
    out
}

/// Every lax square with horizontals `top.r`, `bottom.r`.
pub fn lax_squares(x: &TwoCat, top: &AdjunctionData, bottom: &AdjunctionData) -> Vec<Square2> {
    let mut out = Vec::new();
    for left in x.one_cells_between(top.b, bottom.b) {
        for right in x.one_cells_between(top.a, bottom.a) {
            let (s, t) = (x.comp1(top.r, right).unwrap(), x.comp1(left, bottom.r).unwrap());
            for filler in x.two_cells_between(s, t) {
                out.push(Square2 { top: top.r, bottom: bottom.r, left, right, filler, direction: Direction::Lax });
            }
        }
    }
    out
}

/// Summary of the mate checks over one ambient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MateCheck {
    pub adjunctions: usize,
    pub triangles_checked: usize,
    pub squares_checked: u64,
    pub pastings_checked: u64,
    pub laxfunadj_checked: u64,
    pub failures: Vec<String>,
}

impl MateCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe_adj(x: &TwoCat, a: &AdjunctionData) -> String {
    format!("{} -| {} ({} -> {})", x.one_cell_label(a.l), x.one_cell_label(a.r), x.object_label(a.a), x.object_label(a.b))
}

fn describe_square(x: &TwoCat, s: &Square2) -> String {
    format!(
        "{:?} square top={} bottom={} left={} right={} filler={}",
        s.direction,
        x.one_cell_label(s.top),
        x.one_cell_label(s.bottom),
        x.one_cell_label(s.left),
        x.one_cell_label(s.right),
        x.two_cell_label(s.filler)
    )
}

/// Triangle identities, mate involution in both directions, and the
/// unit/counit coherence for invertible fillers, over every adjunction pair.
pub fn check_mates(x: &TwoCat, adjs: &[AdjunctionData]) -> MateCheck {
    let mut report = MateCheck { adjunctions: adjs.len(), triangles_checked: adjs.len(), ..Default::default() };
    for a in adjs {
        if let Some(f) = triangle_failure(x, a) {
            report.failures.push(format!("triangle {f:?} fails for {}", describe_adj(x, a)));
        }
    }
    let pairs: Vec<(&AdjunctionData, &AdjunctionData)> = adjs.iter().flat_map(|t| adjs.iter().map(move |b| (t, b))).collect();
    let results: Vec<(u64, u64, Vec<String>)> = pairs
        .par_iter()
        .map(|&(top, bottom)| {
            let mut fails = Vec::new();
            let (mut squares, mut lfa) = (0u64, 0u64);
            for sq in colax_squares(x, top, bottom) {
                squares += 1;
                let back = mate(x, &sq, top, bottom).and_then(|m| mate(x, &m, top, bottom));
                if back.as_ref() != Ok(&sq) {
                    fails.push(format!("mate twice differs on {}: {back:?}", describe_square(x, &sq)));
                }
                if x.is_invertible_two_cell(sq.filler) {
                    lfa += 1;
                    match laxfunadj_unit_counit(x, &sq, top, bottom) {
                        Ok(r) if r.passed() => {}
                        other => fails.push(format!("unit/counit coherence fails on {}: {other:?}", describe_square(x, &sq))),
                    }
                }
            }
            for sq in lax_squares(x, top, bottom) {
                squares += 1;
                let back = mate(x, &sq, top, bottom).and_then(|m| mate(x, &m, top, bottom));
                if back.as_ref() != Ok(&sq) {
                    fails.push(format!("mate twice differs on {}: {back:?}", describe_square(x, &sq)));
                }
            }
            (squares, lfa, fails)
        })
        .collect();
    for (s, l, f) in results {
        report.squares_checked += s;
        report.laxfunadj_checked += l;
        report.failures.extend(f);
    }
    report
}

/// `mate(paste(s1, s2)) = paste(mate s1, mate s2)` for all horizontally composable pairs.
pub fn check_pasting(x: &TwoCat, adjs: &[AdjunctionData]) -> MateCheck {
    let mut by_src: HashMap<usize, Vec<&AdjunctionData>> = HashMap::new();
    for a in adjs {
        by_src.entry(a.a).or_default().push(a);
    }
    let chains: Vec<(&AdjunctionData, &AdjunctionData)> = adjs
        .iter()
        .flat_map(|f| by_src.get(&f.b).into_iter().flatten().map(move |g| (f, *g)))
        .collect();
    let quads: Vec<_> = chains.iter().flat_map(|&t| chains.iter().map(move |&b| (t, b))).collect();
    let results: Vec<(u64, Vec<String>)> = quads
        .par_iter()
        .map(|&((t1, t2), (b1, b2))| {
            let mut fails = Vec::new();
            let mut n = 0u64;
            let (tc, bc) = (compose_adjunctions(x, t1, t2).unwrap(), compose_adjunctions(x, b1, b2).unwrap());
            let rights: Vec<Square2> = colax_squares(x, t2, b2);
            for s1 in colax_squares(x, t1, b1) {
                for s2 in rights.iter().filter(|s| s.left == s1.right) {
                    n += 1;
                    let whole = paste_colax(x, &s1, s2).and_then(|p| mate(x, &p, &tc, &bc).ok());
                    let parts = match (mate(x, &s1, t1, b1), mate(x, s2, t2, b2)) {
                        (Ok(m1), Ok(m2)) => paste_lax(x, &m1, &m2),
                        _ => None,
                    };
                    if whole.is_none() || whole != parts {
                        fails.push(format!(
                            "pasting then mate differs from mates then pasting: {} | {}",
                            describe_square(x, &s1),
                            describe_square(x, s2)
                        ));
                    }
                }
            }
            (n, fails)
        })
        .collect();
    let mut report = MateCheck { adjunctions: adjs.len(), ..Default::default() };
    for (n, f) in results {
        report.pastings_checked += n;
        report.failures.extend(f);
    }
    report
}

/// Galois connection test used as an independent oracle: `l(x) <= y iff x <= r(y)`.
pub fn is_galois(p: &FinPoset, q: &FinPoset, l: &[usize], r: &[usize]) -> bool {
    (0..p.len()).all(|x| (0..q.len()).all(|y| q.leq(l[x], y) == p.leq(x, r[y])))
}

/// Compares the adjunctions of `pos_twocat(ps)` with the Galois connections
/// computed directly, and checks that right adjoints are unique.
pub fn check_galois_oracle(ps: &[FinPoset], x: &TwoCat, adjs: &[AdjunctionData]) -> MateCheck {
    let n = ps.len();
    let found: std::collections::BTreeSet<(usize, usize, usize, usize)> =
        adjs.iter().map(|a| (a.a, a.b, x.one_cell(a.l).local, x.one_cell(a.r).local)).collect();
    let mut expected = std::collections::BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            let (ls, rs) = (ps[a].monotone_maps(&ps[b]), ps[b].monotone_maps(&ps[a]));
            for (i, l) in ls.iter().enumerate() {
                for (j, r) in rs.iter().enumerate() {
                    if is_galois(&ps[a], &ps[b], l, r) {
                        expected.insert((a, b, i, j));
                    }
                }
            }
        }
    }
    let mut report = MateCheck { adjunctions: adjs.len(), ..Default::default() };
    if let Some(&(a, b, i, j)) = expected.symmetric_difference(&found).next() {
        report.failures.push(format!(
            "search and Galois oracle disagree on {} -| {} between P{a} and P{b}",
            x.one_cell_label(x.one_id(a, b, i)),
            x.one_cell_label(x.one_id(b, a, j))
        ));
    }
    let mut right: HashMap<usize, usize> = HashMap::new();
    for a in adjs {
        if *right.entry(a.l).or_insert(a.r) != a.r {
            report.failures.push(format!("{} has two right adjoints", x.one_cell_label(a.l)));
        }
    }
    report
}
