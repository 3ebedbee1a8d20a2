//! Finite strict 2-categories and strict 2-functors.
//!
//! Cells carry global ids. 1-cells are numbered hom by hom, with homs taken
//! in `(x, y)` order; within a hom they follow the hom category's object
//! order. 2-cells are numbered the same way using hom morphisms. Horizontal
//! composition is diagrammatic: `comp1(f, g)` is `f` followed by `g`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{functor_category, pi0, product_all, CatError, FinCat, FinFunctor};
use crate::poset::ordinal_poset;
use crate::theta2::{Theta2Mor, Theta2Obj};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoCatError {
    #[error("expected {expected} hom categories, got {got}")]
    HomCount { expected: usize, got: usize },
    #[error("hom({0},{1}): {2}")]
    Hom(usize, usize, CatError),
    #[error("identity 1-cell of object {0} is missing")]
    Identity(usize),
    #[error("composition table for ({0},{1},{2}) is malformed: {3}")]
    Table(usize, usize, usize, String),
    #[error("horizontal composition ({0},{1},{2}) is not a functor: {3}")]
    NotFunctor(usize, usize, usize, String),
    #[error("unit law fails at {0}")]
    Unit(String),
    #[error("associativity fails at {0}")]
    Associativity(String),
    #[error("hom({0},{1}) is not a poset")]
    NotPosetal(usize, usize),
    #[error("2-functor: {0}")]
    Functor(String),
}

/// Position of a 1-cell: it lives in `hom(src, tgt)` as object `local`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OneCell {
    pub src: usize,
    pub tgt: usize,
    pub local: usize,
}

/// Position of a 2-cell: morphism `local` of `hom(src, tgt)`, from 1-cell `dom` to 1-cell `cod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoCell {
    pub src: usize,
    pub tgt: usize,
    pub local: usize,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Debug, Clone)]
pub struct TwoCat {
    objects: Vec<String>,
    homs: Vec<FinCat>,
    id1: Vec<usize>,
    off1: Vec<usize>,
    off2: Vec<usize>,
    cells1: Vec<OneCell>,
    cells2: Vec<TwoCell>,
    comp1: Vec<Vec<u32>>,
    comp2: Vec<Vec<u32>>,
}

impl PartialEq for TwoCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.homs == other.homs
            && self.id1 == other.id1
            && self.comp1 == other.comp1
            && self.comp2 == other.comp2
    }
}

impl Eq for TwoCat {}

impl TwoCat {
    /// Builds from hom categories, local identity 1-cells and local composition
    /// functions `(x, y, z, a, b) -> a;b`, then validates every axiom.
    pub fn build(
        objects: Vec<String>,
        homs: Vec<FinCat>,
        id1_local: Vec<usize>,
        comp1: impl Fn(usize, usize, usize, usize, usize) -> usize,
        comp2: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self, TwoCatError> {
        let n = objects.len();
        if homs.len() != n * n {
            return Err(TwoCatError::HomCount { expected: n * n, got: homs.len() });
        }
        if id1_local.len() != n || (0..n).any(|x| id1_local[x] >= homs[x * n + x].n_objects()) {
            return Err(TwoCatError::Identity(id1_local.len().min(n)));
        }
        let c = TwoCat::build_unchecked(objects, homs, id1_local, comp1, comp2);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn build_unchecked(
        objects: Vec<String>,
        homs: Vec<FinCat>,
        id1_local: Vec<usize>,
        comp1: impl Fn(usize, usize, usize, usize, usize) -> usize,
        comp2: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Self {
        let n = objects.len();
        let mut off1 = vec![0; n * n + 1];
        let mut off2 = vec![0; n * n + 1];
        let mut cells1 = Vec::new();
        let mut cells2 = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let h = &homs[x * n + y];
                let base1 = cells1.len();
                for local in 0..h.n_objects() {
                    cells1.push(OneCell { src: x, tgt: y, local });
                }
                for local in 0..h.n_morphisms() {
                    let m = h.morphism(local);
                    cells2.push(TwoCell { src: x, tgt: y, local, dom: base1 + m.src, cod: base1 + m.tgt });
                }
                off1[x * n + y + 1] = cells1.len();
                off2[x * n + y + 1] = cells2.len();
            }
        }
        let mut t1 = vec![Vec::new(); n * n * n];
        let mut t2 = vec![Vec::new(); n * n * n];
        for x in 0..n {
            for y in 0..n {
                let hxy = &homs[x * n + y];
                if hxy.n_objects() == 0 {
                    continue;
                }
                for z in 0..n {
                    let hyz = &homs[y * n + z];
                    if hyz.n_objects() == 0 {
                        continue;
                    }
                    let t = (x * n + y) * n + z;
                    let mut v1 = Vec::with_capacity(hxy.n_objects() * hyz.n_objects());
                    for a in 0..hxy.n_objects() {
                        for b in 0..hyz.n_objects() {
                            v1.push(comp1(x, y, z, a, b) as u32);
                        }
                    }
                    let mut v2 = Vec::with_capacity(hxy.n_morphisms() * hyz.n_morphisms());
                    for a in 0..hxy.n_morphisms() {
                        for b in 0..hyz.n_morphisms() {
                            v2.push(comp2(x, y, z, a, b) as u32);
                        }
                    }
                    t1[t] = v1;
                    t2[t] = v2;
                }
            }
        }
        let id1 = (0..n).map(|x| off1[x * n + x] + id1_local[x]).collect();
        TwoCat { objects, homs, id1, off1, off2, cells1, cells2, comp1: t1, comp2: t2 }
    }

    /// Like [`TwoCat::build_unchecked`] for posetal homs: horizontal composition
    /// of 2-cells is the unique cell between the composites.
    pub(crate) fn build_posetal_unchecked(
        objects: Vec<String>,
        homs: Vec<FinCat>,
        id1_local: Vec<usize>,
        comp1: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Self {
        let n = objects.len();
        let comp2 = |x: usize, y: usize, z: usize, a: usize, b: usize| {
            let (hxy, hyz, hxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
            let (ma, mb) = (hxy.morphism(a), hyz.morphism(b));
            let s = comp1(x, y, z, ma.src, mb.src);
            let t = comp1(x, y, z, ma.tgt, mb.tgt);
            *hxz.hom(s, t).first().expect("posetal composite must exist")
        };
        TwoCat::build_unchecked(objects.clone(), homs.clone(), id1_local, &comp1, comp2)
    }

    pub fn validate(&self) -> Result<(), TwoCatError> {
        let n = self.n_objects();
        for x in 0..n {
            for y in 0..n {
                self.hom(x, y).validate().map_err(|e| TwoCatError::Hom(x, y, e))?;
            }
        }
        for x in 0..n {
            let id = self.cells1[self.id1[x]];
            if id.src != x || id.tgt != x {
                return Err(TwoCatError::Identity(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let hxy = self.hom(x, y);
                if hxy.n_objects() == 0 {
                    continue;
                }
                for z in 0..n {
                    let hyz = self.hom(y, z);
                    if hyz.n_objects() == 0 {
                        continue;
                    }
                    let hxz = self.hom(x, z);
                    let t = (x * n + y) * n + z;
                    let bad = |m: &str| TwoCatError::Table(x, y, z, m.to_string());
                    if self.comp1[t].len() != hxy.n_objects() * hyz.n_objects()
                        || self.comp2[t].len() != hxy.n_morphisms() * hyz.n_morphisms()
                    {
                        return Err(bad("wrong size"));
                    }
                    if self.comp1[t].iter().any(|&v| v as usize >= hxz.n_objects())
                        || self.comp2[t].iter().any(|&v| v as usize >= hxz.n_morphisms())
                    {
                        return Err(bad("value out of range"));
                    }
                    let c1 = |a: usize, b: usize| self.comp1[t][a * hyz.n_objects() + b] as usize;
                    let c2 = |a: usize, b: usize| self.comp2[t][a * hyz.n_morphisms() + b] as usize;
                    let nf = |m: String| TwoCatError::NotFunctor(x, y, z, m);
                    for a in 0..hxy.n_morphisms() {
                        for b in 0..hyz.n_morphisms() {
                            let g = c2(a, b);
                            if hxz.src(g) != c1(hxy.src(a), hyz.src(b)) || hxz.tgt(g) != c1(hxy.tgt(a), hyz.tgt(b)) {
                                return Err(nf(format!("cells ({a},{b}) land on wrong endpoints")));
                            }
                        }
                    }
                    for a in 0..hxy.n_objects() {
                        for b in 0..hyz.n_objects() {
                            if c2(hxy.identity(a), hyz.identity(b)) != hxz.identity(c1(a, b)) {
                                return Err(nf(format!("identity of ({a},{b}) not preserved")));
                            }
                        }
                    }
                    let ta = hxy.composition_table();
                    let tb = hyz.composition_table();
                    for &(a, a2, aa) in &ta {
                        for &(b, b2, bb) in &tb {
                            if hxz.compose(c2(a, b), c2(a2, b2)) != Some(c2(aa, bb)) {
                                return Err(nf(format!("interchange fails at ({a},{a2};{b},{b2})")));
                            }
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for f in self.one_cells_between(x, y) {
                    if self.comp1(self.id1[x], f) != Some(f) || self.comp1(f, self.id1[y]) != Some(f) {
                        return Err(TwoCatError::Unit(format!("1-cell {f}")));
                    }
                }
                for a in self.two_cells_in(x, y) {
                    let (ix, iy) = (self.id2(self.id1[x]), self.id2(self.id1[y]));
                    if self.comp2(ix, a) != Some(a) || self.comp2(a, iy) != Some(a) {
                        return Err(TwoCatError::Unit(format!("2-cell {a}")));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for a in self.two_cells_in(w, x) {
                            for b in self.two_cells_in(x, y) {
                                let ab = self.comp2(a, b).unwrap();
                                for c in self.two_cells_in(y, z) {
                                    let bc = self.comp2(b, c).unwrap();
                                    if self.comp2(ab, c) != self.comp2(a, bc) {
                                        return Err(TwoCatError::Associativity(format!("2-cells ({a},{b},{c})")));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> &FinCat {
        &self.homs[x * self.n_objects() + y]
    }

    pub fn n_one_cells(&self) -> usize {
        self.cells1.len()
    }

    pub fn n_two_cells(&self) -> usize {
        self.cells2.len()
    }

    pub fn one_cell(&self, f: usize) -> OneCell {
        self.cells1[f]
    }

    pub fn two_cell(&self, a: usize) -> TwoCell {
        self.cells2[a]
    }

    pub fn one_id(&self, x: usize, y: usize, local: usize) -> usize {
        self.off1[x * self.n_objects() + y] + local
    }

    pub fn two_id(&self, x: usize, y: usize, local: usize) -> usize {
        self.off2[x * self.n_objects() + y] + local
    }

    pub fn one_cells_between(&self, x: usize, y: usize) -> std::ops::Range<usize> {
        let i = x * self.n_objects() + y;
        self.off1[i]..self.off1[i + 1]
    }

    pub fn two_cells_in(&self, x: usize, y: usize) -> std::ops::Range<usize> {
        let i = x * self.n_objects() + y;
        self.off2[i]..self.off2[i + 1]
    }

    pub fn one_cell_label(&self, f: usize) -> &str {
        let c = self.cells1[f];
        self.hom(c.src, c.tgt).object_label(c.local)
    }

    pub fn two_cell_label(&self, a: usize) -> &str {
        let c = self.cells2[a];
        &self.hom(c.src, c.tgt).morphism(c.local).label
    }

    /// Identity 1-cell of `x`.
    pub fn id1(&self, x: usize) -> usize {
        self.id1[x]
    }

    /// Identity 2-cell of the 1-cell `f`.
    pub fn id2(&self, f: usize) -> usize {
        let c = self.cells1[f];
        self.two_id(c.src, c.tgt, self.hom(c.src, c.tgt).identity(c.local))
    }

    pub fn is_identity_two_cell(&self, a: usize) -> bool {
        let c = self.cells2[a];
        self.hom(c.src, c.tgt).is_identity(c.local)
    }

    #[inline]
    fn comp1_local(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> usize {
        let n = self.n_objects();
        self.comp1[(x * n + y) * n + z][a * self.homs[y * n + z].n_objects() + b] as usize
    }

    #[inline]
    fn comp2_local(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> usize {
        let n = self.n_objects();
        self.comp2[(x * n + y) * n + z][a * self.homs[y * n + z].n_morphisms() + b] as usize
    }

    /// Horizontal composite of 1-cells, `f` then `g`.
    #[inline]
    pub fn comp1(&self, f: usize, g: usize) -> Option<usize> {
        let (cf, cg) = (self.cells1[f], self.cells1[g]);
        if cf.tgt != cg.src {
            return None;
        }
        Some(self.one_id(cf.src, cg.tgt, self.comp1_local(cf.src, cf.tgt, cg.tgt, cf.local, cg.local)))
    }

    /// Horizontal composite of 2-cells, `a` then `b`.
    #[inline]
    pub fn comp2(&self, a: usize, b: usize) -> Option<usize> {
        let (ca, cb) = (self.cells2[a], self.cells2[b]);
        if ca.tgt != cb.src {
            return None;
        }
        Some(self.two_id(ca.src, cb.tgt, self.comp2_local(ca.src, ca.tgt, cb.tgt, ca.local, cb.local)))
    }

    /// Vertical composite, `a` then `b`.
    #[inline]
    pub fn vcomp(&self, a: usize, b: usize) -> Option<usize> {
        let (ca, cb) = (self.cells2[a], self.cells2[b]);
        if ca.src != cb.src || ca.tgt != cb.tgt {
            return None;
        }
        self.hom(ca.src, ca.tgt).compose(ca.local, cb.local).map(|l| self.two_id(ca.src, ca.tgt, l))
    }

    /// Composite of a path of 1-cells; `None` on an empty or broken path.
    pub fn comp1_path(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.comp1(acc, g))
    }

    /// Vertical composite of a sequence of 2-cells.
    pub fn vcomp_path(&self, cells: &[usize]) -> Option<usize> {
        let (&first, rest) = cells.split_first()?;
        rest.iter().try_fold(first, |acc, &b| self.vcomp(acc, b))
    }

    /// `pre ; a ; post` with optional 1-cell whiskers.
    pub fn whisker(&self, pre: Option<usize>, a: usize, post: Option<usize>) -> Option<usize> {
        let mut out = a;
        if let Some(p) = pre {
            out = self.comp2(self.id2(p), out)?;
        }
        if let Some(q) = post {
            out = self.comp2(out, self.id2(q))?;
        }
        Some(out)
    }

    /// 2-cells `f => g`.
    pub fn two_cells_between(&self, f: usize, g: usize) -> Vec<usize> {
        let (cf, cg) = (self.cells1[f], self.cells1[g]);
        if cf.src != cg.src || cf.tgt != cg.tgt {
            return Vec::new();
        }
        self.hom(cf.src, cf.tgt).hom(cf.local, cg.local).iter().map(|&l| self.two_id(cf.src, cf.tgt, l)).collect()
    }

    pub fn has_two_cell(&self, f: usize, g: usize) -> bool {
        let (cf, cg) = (self.cells1[f], self.cells1[g]);
        cf.src == cg.src && cf.tgt == cg.tgt && !self.hom(cf.src, cf.tgt).hom(cf.local, cg.local).is_empty()
    }

    pub fn is_invertible_two_cell(&self, a: usize) -> bool {
        let c = self.cells2[a];
        self.hom(c.src, c.tgt).is_iso(c.local)
    }

    pub fn inverse_two_cell(&self, a: usize) -> Option<usize> {
        let c = self.cells2[a];
        self.hom(c.src, c.tgt).inverse(c.local).map(|l| self.two_id(c.src, c.tgt, l))
    }

    /// Every hom category is a poset.
    pub fn is_posetal(&self) -> bool {
        self.homs.iter().all(FinCat::is_posetal)
    }

    pub fn is_locally_discrete(&self) -> bool {
        self.homs.iter().all(FinCat::is_discrete)
    }

    /// `(objects, 1-cells, 2-cells)`
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n_objects(), self.n_one_cells(), self.n_two_cells())
    }

    pub fn with_object_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.objects.len());
        self.objects = labels;
        self
    }

    /// New object `i` is old object `perm[i]`.
    pub fn permute_objects(&self, perm: &[usize]) -> TwoCat {
        let n = self.n_objects();
        let homs = (0..n * n).map(|i| self.hom(perm[i / n], perm[i % n]).clone()).collect();
        let id1 = (0..n).map(|x| self.cells1[self.id1[perm[x]]].local).collect();
        TwoCat::build_unchecked(
            perm.iter().map(|&p| self.objects[p].clone()).collect(),
            homs,
            id1,
            |x, y, z, a, b| self.comp1_local(perm[x], perm[y], perm[z], a, b),
            |x, y, z, a, b| self.comp2_local(perm[x], perm[y], perm[z], a, b),
        )
    }
}

/// A strict 2-functor, as maps on objects and on global 1-cell and 2-cell ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoFunctor {
    pub obj: Vec<usize>,
    pub one: Vec<usize>,
    pub two: Vec<usize>,
}

impl TwoFunctor {
    pub fn identity(c: &TwoCat) -> Self {
        TwoFunctor {
            obj: (0..c.n_objects()).collect(),
            one: (0..c.n_one_cells()).collect(),
            two: (0..c.n_two_cells()).collect(),
        }
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &TwoFunctor) -> TwoFunctor {
        TwoFunctor {
            obj: self.obj.iter().map(|&x| g.obj[x]).collect(),
            one: self.one.iter().map(|&f| g.one[f]).collect(),
            two: self.two.iter().map(|&a| g.two[a]).collect(),
        }
    }

    /// Extends a 1-cell map to 2-cells when every needed target hom is posetal.
    pub fn from_one_cell_map(src: &TwoCat, tgt: &TwoCat, obj: Vec<usize>, one: Vec<usize>) -> Result<Self, TwoCatError> {
        if one.len() != src.n_one_cells() {
            return Err(TwoCatError::Functor("1-cell map has the wrong length".into()));
        }
        let mut two = Vec::with_capacity(src.n_two_cells());
        for a in 0..src.n_two_cells() {
            let c = src.two_cell(a);
            let cands = tgt.two_cells_between(one[c.dom], one[c.cod]);
            match cands.as_slice() {
                [single] => two.push(*single),
                [] => return Err(TwoCatError::Functor(format!("no image for 2-cell {a}"))),
                _ => return Err(TwoCatError::Functor(format!("2-cell {a} has several candidate images"))),
            }
        }
        let f = TwoFunctor { obj, one, two };
        f.validate(src, tgt)?;
        Ok(f)
    }

    /// Like [`TwoFunctor::from_one_cell_map`], with 1-cells given hom-locally:
    /// `local(x, y, a)` is the image of object `a` of `src.hom(x, y)` inside
    /// `tgt.hom(obj[x], obj[y])`.
    pub fn from_local_map(
        src: &TwoCat,
        tgt: &TwoCat,
        obj: Vec<usize>,
        local: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self, TwoCatError> {
        let one = (0..src.n_one_cells())
            .map(|f| {
                let c = src.one_cell(f);
                tgt.one_id(obj[c.src], obj[c.tgt], local(c.src, c.tgt, c.local))
            })
            .collect();
        TwoFunctor::from_one_cell_map(src, tgt, obj, one)
    }

    pub fn validate(&self, src: &TwoCat, tgt: &TwoCat) -> Result<(), TwoCatError> {
        let err = |m: String| Err(TwoCatError::Functor(m));
        if self.obj.len() != src.n_objects() || self.one.len() != src.n_one_cells() || self.two.len() != src.n_two_cells() {
            return err("map sizes do not match the source".into());
        }
        if self.obj.iter().any(|&x| x >= tgt.n_objects())
            || self.one.iter().any(|&f| f >= tgt.n_one_cells())
            || self.two.iter().any(|&a| a >= tgt.n_two_cells())
        {
            return err("image out of range".into());
        }
        for f in 0..src.n_one_cells() {
            let (c, d) = (src.one_cell(f), tgt.one_cell(self.one[f]));
            if d.src != self.obj[c.src] || d.tgt != self.obj[c.tgt] {
                return err(format!("1-cell {f} lands in the wrong hom"));
            }
        }
        for a in 0..src.n_two_cells() {
            let (c, d) = (src.two_cell(a), tgt.two_cell(self.two[a]));
            if d.dom != self.one[c.dom] || d.cod != self.one[c.cod] {
                return err(format!("2-cell {a} lands on the wrong boundary"));
            }
        }
        for x in 0..src.n_objects() {
            if self.one[src.id1(x)] != tgt.id1(self.obj[x]) {
                return err(format!("identity 1-cell of {x} not preserved"));
            }
        }
        for f in 0..src.n_one_cells() {
            if self.two[src.id2(f)] != tgt.id2(self.one[f]) {
                return err(format!("identity 2-cell of {f} not preserved"));
            }
        }
        for x in 0..src.n_objects() {
            for y in 0..src.n_objects() {
                let h = src.hom(x, y);
                for (a, b, c) in h.composition_table() {
                    let (ga, gb, gc) = (src.two_id(x, y, a), src.two_id(x, y, b), src.two_id(x, y, c));
                    if tgt.vcomp(self.two[ga], self.two[gb]) != Some(self.two[gc]) {
                        return err(format!("vertical composite ({ga},{gb}) not preserved"));
                    }
                }
                for z in 0..src.n_objects() {
                    for a in src.two_cells_in(x, y) {
                        for b in src.two_cells_in(y, z) {
                            let c = src.comp2(a, b).unwrap();
                            if tgt.comp2(self.two[a], self.two[b]) != Some(self.two[c]) {
                                return err(format!("horizontal composite ({a},{b}) not preserved"));
                            }
                        }
                    }
                    for f in src.one_cells_between(x, y) {
                        for g in src.one_cells_between(y, z) {
                            let h = src.comp1(f, g).unwrap();
                            if tgt.comp1(self.one[f], self.one[g]) != Some(self.one[h]) {
                                return err(format!("1-cell composite ({f},{g}) not preserved"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The functor `src.hom(x, y) -> tgt.hom(F x, F y)` in local indices.
    pub fn hom_functor(&self, src: &TwoCat, tgt: &TwoCat, x: usize, y: usize) -> FinFunctor {
        FinFunctor {
            obj: src.one_cells_between(x, y).map(|f| tgt.one_cell(self.one[f]).local).collect(),
            mor: src.two_cells_in(x, y).map(|a| tgt.two_cell(self.two[a]).local).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        fn inj(v: &[usize]) -> bool {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        }
        inj(&self.obj) && inj(&self.one) && inj(&self.two)
    }

    /// Inverse of a bijective functor.
    pub fn inverse(&self) -> Option<TwoFunctor> {
        fn inv(v: &[usize]) -> Option<Vec<usize>> {
            let mut out = vec![usize::MAX; v.len()];
            for (i, &x) in v.iter().enumerate() {
                if x >= v.len() || out[x] != usize::MAX {
                    return None;
                }
                out[x] = i;
            }
            Some(out)
        }
        Some(TwoFunctor { obj: inv(&self.obj)?, one: inv(&self.one)?, two: inv(&self.two)? })
    }

    /// Short human-readable description used in witnesses.
    pub fn describe(&self, src: &TwoCat, tgt: &TwoCat) -> String {
        let objs: Vec<String> =
            (0..src.n_objects()).map(|x| format!("{}->{}", src.object_label(x), tgt.object_label(self.obj[x]))).collect();
        let cells: Vec<String> = (0..src.n_one_cells())
            .filter(|&f| {
                let c = src.one_cell(f);
                c.src != c.tgt || f != src.id1(c.src)
            })
            .map(|f| format!("{}->{}", src.one_cell_label(f), tgt.one_cell_label(self.one[f])))
            .collect();
        format!("objects {{{}}} 1-cells {{{}}}", objs.join(", "), cells.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Enumeration of strict 2-functors.

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes per call.
    pub budget: u64,
    /// Only maps injective on objects, 1-cells and 2-cells.
    pub injective: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, injective: false, parallel: true }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

const UNSET: u32 = u32::MAX;

/// Constraint pairs with flags (vertical, cell is the first factor).
type ConstraintList<'a> = (&'a [(u32, u32)], bool, bool);

/// Precomputed constraint structure of a source 2-category, reusable across targets.
pub struct FunctorSearch<'a> {
    src: &'a TwoCat,
    order1: Vec<usize>,
    order2: Vec<usize>,
    right1: Vec<Vec<(u32, u32)>>,
    left1: Vec<Vec<(u32, u32)>>,
    right2: Vec<Vec<(u32, u32)>>,
    left2: Vec<Vec<(u32, u32)>>,
    right_v: Vec<Vec<(u32, u32)>>,
    left_v: Vec<Vec<(u32, u32)>>,
    needs2: Vec<Vec<(u32, bool)>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(src: &'a TwoCat) -> Self {
        let n1 = src.n_one_cells();
        let n2 = src.n_two_cells();
        let mut right1 = vec![Vec::new(); n1];
        let mut left1 = vec![Vec::new(); n1];
        let mut decomposable = vec![false; n1];
        let is_id1 = |f: usize| {
            let c = src.one_cell(f);
            c.src == c.tgt && src.id1(c.src) == f
        };
        let n = src.n_objects();
        let mut right2 = vec![Vec::new(); n2];
        let mut left2 = vec![Vec::new(); n2];
        let mut right_v = vec![Vec::new(); n2];
        let mut left_v = vec![Vec::new(); n2];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in src.one_cells_between(x, y) {
                        for g in src.one_cells_between(y, z) {
                            let h = src.comp1(f, g).unwrap();
                            right1[f].push((g as u32, h as u32));
                            left1[g].push((f as u32, h as u32));
                            if !is_id1(f) && !is_id1(g) {
                                decomposable[h] = true;
                            }
                        }
                    }
                    for a in src.two_cells_in(x, y) {
                        for b in src.two_cells_in(y, z) {
                            let c = src.comp2(a, b).unwrap();
                            right2[a].push((b as u32, c as u32));
                            left2[b].push((a as u32, c as u32));
                        }
                    }
                }
                let h = src.hom(x, y);
                for (a, b, c) in h.composition_table() {
                    let (a, b, c) = (src.two_id(x, y, a), src.two_id(x, y, b), src.two_id(x, y, c));
                    right_v[a].push((b as u32, c as u32));
                    left_v[b].push((a as u32, c as u32));
                }
            }
        }
        let mut needs2 = vec![Vec::new(); n1];
        for a in 0..n2 {
            let c = src.two_cell(a);
            if c.dom != c.cod {
                needs2[c.dom].push((c.cod as u32, true));
                needs2[c.cod].push((c.dom as u32, false));
            }
        }
        for v in needs2.iter_mut() {
            v.sort_unstable();
            v.dedup();
        }
        let mut order1: Vec<usize> = (0..n1).filter(|&f| !is_id1(f)).collect();
        order1.sort_by_key(|&f| (decomposable[f], f));
        let order2: Vec<usize> = (0..n2).filter(|&a| !src.is_identity_two_cell(a)).collect();
        FunctorSearch { src, order1, order2, right1, left1, right2, left2, right_v, left_v, needs2 }
    }

    pub fn src(&self) -> &TwoCat {
        self.src
    }

    fn object_maps(&self, tgt: &TwoCat, opts: &SearchOptions, nodes: &mut u64) -> Result<Vec<Vec<usize>>, SearchError> {
        let src = self.src;
        let n = src.n_objects();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; tgt.n_objects()];
        #[allow(clippy::too_many_arguments)]
        fn go(
            src: &TwoCat,
            tgt: &TwoCat,
            opts: &SearchOptions,
            cur: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Vec<usize>>,
            nodes: &mut u64,
        ) -> Result<(), SearchError> {
            let i = cur.len();
            if i == src.n_objects() {
                out.push(cur.clone());
                return Ok(());
            }
            for c in 0..tgt.n_objects() {
                *nodes += 1;
                if *nodes > opts.budget {
                    return Err(SearchError::BudgetExceeded(opts.budget));
                }
                if opts.injective && used[c] {
                    continue;
                }
                let fits = |x: usize, y: usize, fx: usize, fy: usize| {
                    let (hs, ht) = (src.hom(x, y), tgt.hom(fx, fy));
                    if opts.injective {
                        hs.n_objects() <= ht.n_objects() && hs.n_morphisms() <= ht.n_morphisms()
                    } else {
                        hs.n_objects() == 0 || ht.n_objects() > 0
                    }
                };
                if !fits(i, i, c, c) || !(0..i).all(|j| fits(j, i, cur[j], c) && fits(i, j, c, cur[j])) {
                    continue;
                }
                cur.push(c);
                used[c] = true;
                go(src, tgt, opts, cur, used, out, nodes)?;
                used[c] = false;
                cur.pop();
            }
            Ok(())
        }
        go(src, tgt, opts, &mut cur, &mut used, &mut out, nodes)?;
        Ok(out)
    }

    /// Runs the search, calling `visit` on each complete functor. `visit`
    /// returns `false` to stop early.
    fn run(
        &self,
        tgt: &TwoCat,
        opts: &SearchOptions,
        mut visit: impl FnMut(&[usize], &[u32], &[u32]) -> bool,
    ) -> Result<(), SearchError> {
        let mut nodes = 0u64;
        let maps = self.object_maps(tgt, opts, &mut nodes)?;
        let mut st = State::new(self, tgt, opts);
        st.nodes = nodes;
        for obj in maps {
            if !st.start(obj, &mut visit)? {
                break;
            }
        }
        Ok(())
    }

    fn run_parallel<T: Send>(
        &self,
        tgt: &TwoCat,
        opts: &SearchOptions,
        make: impl Fn(&[usize], &[u32], &[u32]) -> T + Sync,
    ) -> Result<Vec<T>, SearchError> {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicU64, Ordering};
        let mut nodes = 0u64;
        let maps = self.object_maps(tgt, opts, &mut nodes)?;
        let spent = AtomicU64::new(nodes);
        let chunks: Result<Vec<Vec<T>>, SearchError> = maps
            .into_par_iter()
            .map(|obj| {
                let mut st = State::new(self, tgt, opts);
                st.shared = Some(&spent);
                let mut local = Vec::new();
                st.start(obj, &mut |o: &[usize], a: &[u32], b: &[u32]| {
                    local.push(make(o, a, b));
                    true
                })?;
                st.flush();
                if spent.load(Ordering::Relaxed) > opts.budget {
                    return Err(SearchError::BudgetExceeded(opts.budget));
                }
                Ok(local)
            })
            .collect();
        Ok(chunks?.into_iter().flatten().collect())
    }

    /// Maps every functor through `make`; parallel when requested. Output order
    /// is deterministic but not canonical.
    pub fn map_collect<T: Send>(
        &self,
        tgt: &TwoCat,
        opts: &SearchOptions,
        make: impl Fn(&[usize], &[u32], &[u32]) -> T + Sync,
    ) -> Result<Vec<T>, SearchError> {
        if opts.parallel {
            self.run_parallel(tgt, opts, make)
        } else {
            let mut v = Vec::new();
            self.run(tgt, opts, |o, a, b| {
                v.push(make(o, a, b));
                true
            })?;
            Ok(v)
        }
    }

    /// Sequential visit of every functor as raw `(objects, 1-cells, 2-cells)`
    /// slices; the visitor returns `false` to stop.
    pub fn for_each(
        &self,
        tgt: &TwoCat,
        opts: &SearchOptions,
        visit: impl FnMut(&[usize], &[u32], &[u32]) -> bool,
    ) -> Result<(), SearchError> {
        self.run(tgt, opts, visit)
    }

    /// All strict 2-functors `src -> tgt` in canonical order.
    pub fn enumerate(&self, tgt: &TwoCat, opts: &SearchOptions) -> Result<Vec<TwoFunctor>, SearchError> {
        let make = |o: &[usize], a: &[u32], b: &[u32]| TwoFunctor {
            obj: o.to_vec(),
            one: a.iter().map(|&v| v as usize).collect(),
            two: b.iter().map(|&v| v as usize).collect(),
        };
        let mut out = if opts.parallel {
            self.run_parallel(tgt, opts, make)?
        } else {
            let mut v = Vec::new();
            self.run(tgt, opts, |o, a, b| {
                v.push(make(o, a, b));
                true
            })?;
            v
        };
        out.sort();
        Ok(out)
    }

    pub fn count(&self, tgt: &TwoCat, opts: &SearchOptions) -> Result<u64, SearchError> {
        if opts.parallel {
            Ok(self.run_parallel(tgt, opts, |_, _, _| ())?.len() as u64)
        } else {
            let mut c = 0u64;
            self.run(tgt, opts, |_, _, _| {
                c += 1;
                true
            })?;
            Ok(c)
        }
    }

    /// The first functor found by the sequential search.
    pub fn first(&self, tgt: &TwoCat, opts: &SearchOptions) -> Result<Option<TwoFunctor>, SearchError> {
        let mut found = None;
        self.run(tgt, opts, |o, a, b| {
            found = Some(TwoFunctor {
                obj: o.to_vec(),
                one: a.iter().map(|&v| v as usize).collect(),
                two: b.iter().map(|&v| v as usize).collect(),
            });
            false
        })?;
        Ok(found)
    }
}

struct State<'s, 'a> {
    fs: &'s FunctorSearch<'a>,
    tgt: &'s TwoCat,
    opts: &'s SearchOptions,
    obj: Vec<usize>,
    m1: Vec<u32>,
    m2: Vec<u32>,
    used1: Vec<bool>,
    used2: Vec<bool>,
    trail1: Vec<u32>,
    trail2: Vec<u32>,
    queue: Vec<(u32, u32)>,
    nodes: u64,
    shared: Option<&'s std::sync::atomic::AtomicU64>,
    pending: u64,
}

impl<'s, 'a> State<'s, 'a> {
    fn new(fs: &'s FunctorSearch<'a>, tgt: &'s TwoCat, opts: &'s SearchOptions) -> Self {
        State {
            fs,
            tgt,
            opts,
            obj: Vec::new(),
            m1: vec![UNSET; fs.src.n_one_cells()],
            m2: vec![UNSET; fs.src.n_two_cells()],
            used1: vec![false; if opts.injective { tgt.n_one_cells() } else { 0 }],
            used2: vec![false; if opts.injective { tgt.n_two_cells() } else { 0 }],
            trail1: Vec::new(),
            trail2: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            shared: None,
            pending: 0,
        }
    }

    fn flush(&mut self) {
        if let Some(s) = self.shared {
            let total = s.fetch_add(self.pending, std::sync::atomic::Ordering::Relaxed) + self.pending;
            self.nodes = total;
            self.pending = 0;
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), SearchError> {
        if self.shared.is_some() {
            self.pending += 1;
            if self.pending >= 1024 {
                self.flush();
            } else {
                return Ok(());
            }
        } else {
            self.nodes += 1;
        }
        if self.nodes > self.opts.budget {
            return Err(SearchError::BudgetExceeded(self.opts.budget));
        }
        Ok(())
    }

    fn start(
        &mut self,
        obj: Vec<usize>,
        visit: &mut impl FnMut(&[usize], &[u32], &[u32]) -> bool,
    ) -> Result<bool, SearchError> {
        self.obj = obj;
        let src = self.fs.src;
        let mark = self.trail1.len();
        let mut ok = true;
        for x in 0..src.n_objects() {
            if !self.assign1(src.id1(x) as u32, self.tgt.id1(self.obj[x]) as u32) {
                ok = false;
                break;
            }
        }
        let r = if ok { self.ones(0, visit) } else { Ok(true) };
        self.undo1(mark);
        r
    }

    fn assign1(&mut self, f: u32, v: u32) -> bool {
        let tgt = self.tgt;
        self.queue.clear();
        self.queue.push((f, v));
        while let Some((f, v)) = self.queue.pop() {
            let fu = f as usize;
            if self.m1[fu] != UNSET {
                if self.m1[fu] != v {
                    return false;
                }
                continue;
            }
            if self.opts.injective {
                if self.used1[v as usize] {
                    return false;
                }
                self.used1[v as usize] = true;
            }
            self.m1[fu] = v;
            self.trail1.push(f);
            for &(g, dom) in &self.fs.needs2[fu] {
                let w = self.m1[g as usize];
                if w != UNSET {
                    let ok = if dom { tgt.has_two_cell(v as usize, w as usize) } else { tgt.has_two_cell(w as usize, v as usize) };
                    if !ok {
                        return false;
                    }
                }
            }
            for &(g, h) in &self.fs.right1[fu] {
                let w = self.m1[g as usize];
                if w != UNSET {
                    match tgt.comp1(v as usize, w as usize) {
                        Some(x) => self.queue.push((h, x as u32)),
                        None => return false,
                    }
                }
            }
            for &(g, h) in &self.fs.left1[fu] {
                let w = self.m1[g as usize];
                if w != UNSET {
                    match tgt.comp1(w as usize, v as usize) {
                        Some(x) => self.queue.push((h, x as u32)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn undo1(&mut self, mark: usize) {
        while self.trail1.len() > mark {
            let f = self.trail1.pop().unwrap() as usize;
            if self.opts.injective {
                self.used1[self.m1[f] as usize] = false;
            }
            self.m1[f] = UNSET;
        }
    }

    fn assign2(&mut self, a: u32, v: u32) -> bool {
        let tgt = self.tgt;
        self.queue.clear();
        self.queue.push((a, v));
        while let Some((a, v)) = self.queue.pop() {
            let au = a as usize;
            if self.m2[au] != UNSET {
                if self.m2[au] != v {
                    return false;
                }
                continue;
            }
            if self.opts.injective {
                if self.used2[v as usize] {
                    return false;
                }
                self.used2[v as usize] = true;
            }
            self.m2[au] = v;
            self.trail2.push(a);
            let lists: [ConstraintList; 4] = [
                (&self.fs.right2[au], false, true),
                (&self.fs.left2[au], false, false),
                (&self.fs.right_v[au], true, true),
                (&self.fs.left_v[au], true, false),
            ];
            for (list, vertical, first) in lists {
                for &(b, c) in list {
                    let w = self.m2[b as usize];
                    if w == UNSET {
                        continue;
                    }
                    let (p, q) = if first { (v as usize, w as usize) } else { (w as usize, v as usize) };
                    let r = if vertical { tgt.vcomp(p, q) } else { tgt.comp2(p, q) };
                    match r {
                        Some(x) => self.queue.push((c, x as u32)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn undo2(&mut self, mark: usize) {
        while self.trail2.len() > mark {
            let a = self.trail2.pop().unwrap() as usize;
            if self.opts.injective {
                self.used2[self.m2[a] as usize] = false;
            }
            self.m2[a] = UNSET;
        }
    }

    fn ones(&mut self, i: usize, visit: &mut impl FnMut(&[usize], &[u32], &[u32]) -> bool) -> Result<bool, SearchError> {
        if i == self.fs.order1.len() {
            return self.twos_start(visit);
        }
        let f = self.fs.order1[i];
        if self.m1[f] != UNSET {
            return self.ones(i + 1, visit);
        }
        let c = self.fs.src.one_cell(f);
        let range = self.tgt.one_cells_between(self.obj[c.src], self.obj[c.tgt]);
        for v in range {
            self.tick()?;
            let mark = self.trail1.len();
            if self.assign1(f as u32, v as u32) && !self.ones(i + 1, visit)? {
                self.undo1(mark);
                return Ok(false);
            }
            self.undo1(mark);
        }
        Ok(true)
    }

    fn twos_start(&mut self, visit: &mut impl FnMut(&[usize], &[u32], &[u32]) -> bool) -> Result<bool, SearchError> {
        let src = self.fs.src;
        let mark = self.trail2.len();
        let mut ok = true;
        for f in 0..src.n_one_cells() {
            let v = self.tgt.id2(self.m1[f] as usize);
            if !self.assign2(src.id2(f) as u32, v as u32) {
                ok = false;
                break;
            }
        }
        let r = if ok { self.twos(0, visit) } else { Ok(true) };
        self.undo2(mark);
        r
    }

    fn twos(&mut self, i: usize, visit: &mut impl FnMut(&[usize], &[u32], &[u32]) -> bool) -> Result<bool, SearchError> {
        if i == self.fs.order2.len() {
            return Ok(visit(&self.obj, &self.m1, &self.m2));
        }
        let a = self.fs.order2[i];
        if self.m2[a] != UNSET {
            return self.twos(i + 1, visit);
        }
        let c = self.fs.src.two_cell(a);
        let cands = self.tgt.two_cells_between(self.m1[c.dom] as usize, self.m1[c.cod] as usize);
        for v in cands {
            self.tick()?;
            let mark = self.trail2.len();
            if self.assign2(a as u32, v as u32) && !self.twos(i + 1, visit)? {
                self.undo2(mark);
                return Ok(false);
            }
            self.undo2(mark);
        }
        Ok(true)
    }
}

/// All strict 2-functors `src -> tgt`, canonically ordered.
pub fn enumerate_two_functors(src: &TwoCat, tgt: &TwoCat, opts: &SearchOptions) -> Result<Vec<TwoFunctor>, SearchError> {
    FunctorSearch::new(src).enumerate(tgt, opts)
}

fn hom_signature(c: &TwoCat) -> Vec<(usize, usize)> {
    let n = c.n_objects();
    let mut v: Vec<(usize, usize)> = (0..n * n).map(|i| (c.homs[i].n_objects(), c.homs[i].n_morphisms())).collect();
    v.sort_unstable();
    v
}

/// A strict isomorphism and its inverse, if one exists.
pub fn iso_two_cats(x: &TwoCat, y: &TwoCat, budget: u64) -> Result<Option<(TwoFunctor, TwoFunctor)>, SearchError> {
    if x.counts() != y.counts() || hom_signature(x) != hom_signature(y) {
        return Ok(None);
    }
    let opts = SearchOptions { budget, injective: true, parallel: false };
    let f = FunctorSearch::new(x).first(y, &opts)?;
    Ok(f.map(|f| {
        let g = f.inverse().expect("injective map between equal-size sets is bijective");
        (f, g)
    }))
}

// ---------------------------------------------------------------------------
// Constructions.

/// A linear graph `0 - 1 - ... - n` with a category on each edge.
#[derive(Debug, Clone)]
pub struct CatGraph {
    pub labels: Vec<FinCat>,
}

/// `[n](C_1,...,C_n)`: hom(i,j) is `C_{i+1} x ... x C_j`, composition concatenates tuples.
pub fn free_linear(g: &CatGraph) -> TwoCat {
    let n = g.labels.len() + 1;
    let mut homs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i <= j {
                let factors: Vec<&FinCat> = g.labels[i..j].iter().collect();
                homs.push(product_all(&factors).0);
            } else {
                homs.push(FinCat::discrete(0));
            }
        }
    }
    let sizes: Vec<(usize, usize)> = homs.iter().map(|h| (h.n_objects(), h.n_morphisms())).collect();
    TwoCat::build_unchecked(
        (0..n).map(|i| i.to_string()).collect(),
        homs,
        vec![0; n],
        |_, y, z, a, b| a * sizes[y * n + z].0 + b,
        |_, y, z, a, b| a * sizes[y * n + z].1 + b,
    )
}

/// The 2-category with objects `0..k` and `hom(i,j) = [n_{i+1}] x ... x [n_j]`.
pub fn realize(obj: &Theta2Obj) -> TwoCat {
    let labels = obj.ns().iter().map(|&n| crate::fincat::from_poset(&ordinal_poset(n))).collect();
    free_linear(&CatGraph { labels })
}

/// Digits `(c_{i+1}, ..., c_j)` of 1-cell `local` of `realize(obj).hom(i, j)`.
pub fn realize_digits(obj: &Theta2Obj, i: usize, j: usize, mut local: usize) -> Vec<usize> {
    let mut out = vec![0; j - i];
    for t in (0..j - i).rev() {
        let r = obj.n(i + 1 + t) + 1;
        out[t] = local % r;
        local /= r;
    }
    out
}

pub fn realize_encode(obj: &Theta2Obj, i: usize, digits: &[usize]) -> usize {
    digits.iter().enumerate().fold(0, |acc, (t, &d)| acc * (obj.n(i + 1 + t) + 1) + d)
}

/// The 2-functor `realize(src f) -> realize(tgt f)`.
pub fn realize_mor(f: &Theta2Mor) -> TwoFunctor {
    let (a, b) = (f.src(), f.tgt());
    let (ra, rb) = (realize(a), realize(b));
    let phi = f.phi();
    let obj: Vec<usize> = (0..=a.k()).map(|i| phi.apply(i)).collect();
    let mut one = Vec::with_capacity(ra.n_one_cells());
    for g in 0..ra.n_one_cells() {
        let c = ra.one_cell(g);
        let digits = realize_digits(a, c.src, c.tgt, c.local);
        let (p, q) = (phi.apply(c.src), phi.apply(c.tgt));
        let image: Vec<usize> = (p + 1..=q)
            .map(|t| {
                let r = f.preimage(t).unwrap();
                f.psi(r, t).unwrap().apply(digits[r - c.src - 1])
            })
            .collect();
        one.push(rb.one_id(p, q, realize_encode(b, p, &image)));
    }
    TwoFunctor::from_one_cell_map(&ra, &rb, obj, one).expect("realization of a Θ₂ morphism is a 2-functor")
}

/// The discrete 2-category on the given object labels.
pub fn discrete_twocat(labels: Vec<String>) -> TwoCat {
    let n = labels.len();
    let homs = (0..n * n).map(|i| if i / n == i % n { FinCat::terminal() } else { FinCat::discrete(0) }).collect();
    TwoCat::build_unchecked(labels, homs, vec![0; n], |_, _, _, _, _| 0, |_, _, _, _, _| 0)
}

/// Product 2-category; object `(x, y)` has index `x * |Y| + y`.
pub fn product_twocat(x: &TwoCat, y: &TwoCat) -> TwoCat {
    let (nx, ny) = (x.n_objects(), y.n_objects());
    let n = nx * ny;
    let mut homs = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            homs.push(product_all(&[x.hom(p / ny, q / ny), y.hom(p % ny, q % ny)]).0);
        }
    }
    let labels = (0..n).map(|p| format!("({},{})", x.object_label(p / ny), y.object_label(p % ny))).collect();
    let id1 = (0..n)
        .map(|p| {
            let (a, b) = (p / ny, p % ny);
            x.one_cell(x.id1(a)).local * y.hom(b, b).n_objects() + y.one_cell(y.id1(b)).local
        })
        .collect();
    let c1 = |p: usize, q: usize, r: usize, a: usize, b: usize| {
        let (ya, yb) = (y.hom(p % ny, q % ny).n_objects(), y.hom(q % ny, r % ny).n_objects());
        let yc = y.hom(p % ny, r % ny).n_objects();
        let xs = x.comp1_local(p / ny, q / ny, r / ny, a / ya, b / yb);
        let ys = y.comp1_local(p % ny, q % ny, r % ny, a % ya, b % yb);
        xs * yc + ys
    };
    let c2 = |p: usize, q: usize, r: usize, a: usize, b: usize| {
        let (ya, yb) = (y.hom(p % ny, q % ny).n_morphisms(), y.hom(q % ny, r % ny).n_morphisms());
        let yc = y.hom(p % ny, r % ny).n_morphisms();
        let xs = x.comp2_local(p / ny, q / ny, r / ny, a / ya, b / yb);
        let ys = y.comp2_local(p % ny, q % ny, r % ny, a % ya, b % yb);
        xs * yc + ys
    };
    TwoCat::build_unchecked(labels, homs, id1, c1, c2)
}

/// Disjoint union; objects of `y` follow those of `x`. Returns the two inclusions.
pub fn coproduct_twocat(x: &TwoCat, y: &TwoCat) -> (TwoCat, TwoFunctor, TwoFunctor) {
    let (nx, ny) = (x.n_objects(), y.n_objects());
    let n = nx + ny;
    let side = |p: usize| if p < nx { (0, p) } else { (1, p - nx) };
    let hom = |p: usize, q: usize| -> FinCat {
        match (side(p), side(q)) {
            ((0, a), (0, b)) => x.hom(a, b).clone(),
            ((1, a), (1, b)) => y.hom(a, b).clone(),
            _ => FinCat::discrete(0),
        }
    };
    let homs = (0..n * n).map(|i| hom(i / n, i % n)).collect();
    let id1 = (0..n)
        .map(|p| match side(p) {
            (0, a) => x.one_cell(x.id1(a)).local,
            (_, b) => y.one_cell(y.id1(b)).local,
        })
        .collect();
    let labels = x.objects().iter().chain(y.objects()).cloned().collect();
    let c = TwoCat::build_unchecked(
        labels,
        homs,
        id1,
        |p, q, r, a, b| if p < nx { x.comp1_local(p, q, r, a, b) } else { y.comp1_local(p - nx, q - nx, r - nx, a, b) },
        |p, q, r, a, b| if p < nx { x.comp2_local(p, q, r, a, b) } else { y.comp2_local(p - nx, q - nx, r - nx, a, b) },
    );
    let inc = |src: &TwoCat, shift: usize| TwoFunctor {
        obj: (0..src.n_objects()).map(|p| p + shift).collect(),
        one: (0..src.n_one_cells())
            .map(|f| {
                let k = src.one_cell(f);
                c.one_id(k.src + shift, k.tgt + shift, k.local)
            })
            .collect(),
        two: (0..src.n_two_cells())
            .map(|a| {
                let k = src.two_cell(a);
                c.two_id(k.src + shift, k.tgt + shift, k.local)
            })
            .collect(),
    };
    let (ix, iy) = (inc(x, 0), inc(y, nx));
    (c, ix, iy)
}

/// A cotensor together with the functor categories forming its homs.
#[derive(Debug, Clone)]
pub struct Cotensor {
    pub cat: TwoCat,
    pub n: usize,
    pub homs: Vec<crate::fincat::FunctorCategory>,
}

impl Cotensor {
    /// Global id of the 1-cell given by a functor `[n] -> X(x,y)`.
    pub fn one_cell_of(&self, x: usize, y: usize, f: &FinFunctor) -> Option<usize> {
        let no = self.cat.n_objects();
        self.homs[x * no + y].functor_id(f).map(|l| self.cat.one_id(x, y, l))
    }

    pub fn functor_of(&self, f: usize) -> &FinFunctor {
        let c = self.cat.one_cell(f);
        &self.homs[c.src * self.cat.n_objects() + c.tgt].functors[c.local]
    }
}

/// The cotensor `X^[n]`: same objects, hom(x,y) is the category of functors `[n] -> X(x,y)`.
pub fn cotensor(x: &TwoCat, n: usize) -> TwoCat {
    cotensor_data(x, n).cat
}

pub fn cotensor_data(x: &TwoCat, n: usize) -> Cotensor {
    let shape = crate::fincat::from_poset(&ordinal_poset(n));
    let no = x.n_objects();
    let fcs: Vec<_> = (0..no * no).map(|i| functor_category(&shape, x.hom(i / no, i % no))).collect();
    let homs: Vec<FinCat> = fcs.iter().map(|f| f.cat.clone()).collect();
    let id1 = (0..no)
        .map(|p| {
            let fc = &fcs[p * no + p];
            let h = x.hom(p, p);
            let idl = x.one_cell(x.id1(p)).local;
            let f = FinFunctor { obj: vec![idl; n + 1], mor: vec![h.identity(idl); shape.n_morphisms()] };
            fc.functor_id(&f).expect("constant functor exists")
        })
        .collect();
    let c1 = |p: usize, q: usize, r: usize, a: usize, b: usize| {
        let (fa, fb) = (&fcs[p * no + q].functors[a], &fcs[q * no + r].functors[b]);
        let f = FinFunctor {
            obj: fa.obj.iter().zip(&fb.obj).map(|(&u, &v)| x.comp1_local(p, q, r, u, v)).collect(),
            mor: fa.mor.iter().zip(&fb.mor).map(|(&u, &v)| x.comp2_local(p, q, r, u, v)).collect(),
        };
        fcs[p * no + r].functor_id(&f).expect("pointwise composite is a functor")
    };
    let c2 = |p: usize, q: usize, r: usize, a: usize, b: usize| {
        let (fa, fb) = (&fcs[p * no + q], &fcs[q * no + r]);
        let s = c1(p, q, r, fa.cat.src(a), fb.cat.src(b));
        let t = c1(p, q, r, fa.cat.tgt(a), fb.cat.tgt(b));
        let comps: Vec<usize> = fa.transformations[a]
            .iter()
            .zip(&fb.transformations[b])
            .map(|(&u, &v)| x.comp2_local(p, q, r, u, v))
            .collect();
        fcs[p * no + r].transformation_id(s, t, &comps).expect("pointwise composite is natural")
    };
    let cat = TwoCat::build_unchecked(x.objects().to_vec(), homs, id1, c1, c2);
    Cotensor { cat, n, homs: fcs }
}

/// Evaluation `X^[n] -> X` at vertex `t`.
pub fn cotensor_eval(x: &TwoCat, n: usize, t: usize) -> TwoFunctor {
    let data = cotensor_data(x, n);
    let c = &data.cat;
    let no = x.n_objects();
    let mut one = vec![0; c.n_one_cells()];
    let mut two = vec![0; c.n_two_cells()];
    for p in 0..no {
        for q in 0..no {
            let fc = &data.homs[p * no + q];
            for f in c.one_cells_between(p, q) {
                one[f] = x.one_id(p, q, fc.functors[c.one_cell(f).local].obj[t]);
            }
            for a in c.two_cells_in(p, q) {
                two[a] = x.two_id(p, q, fc.transformations[c.two_cell(a).local][t]);
            }
        }
    }
    TwoFunctor { obj: (0..no).collect(), one, two }
}

/// Reverses 2-cells: every hom is replaced by its opposite.
pub fn two_op(x: &TwoCat) -> TwoCat {
    let n = x.n_objects();
    let homs = x.homs.iter().map(crate::fincat::opposite).collect();
    let id1 = (0..n).map(|p| x.one_cell(x.id1(p)).local).collect();
    TwoCat::build_unchecked(x.objects().to_vec(), homs, id1, |p, q, r, a, b| x.comp1_local(p, q, r, a, b), |p, q, r, a, b| {
        x.comp2_local(p, q, r, a, b)
    })
}

/// Reverses 1-cells: `hom'(x,y) = hom(y,x)` and composition order flips.
pub fn one_op(x: &TwoCat) -> TwoCat {
    let n = x.n_objects();
    let homs = (0..n * n).map(|i| x.hom(i % n, i / n).clone()).collect();
    let id1 = (0..n).map(|p| x.one_cell(x.id1(p)).local).collect();
    TwoCat::build_unchecked(x.objects().to_vec(), homs, id1, |p, q, r, a, b| x.comp1_local(r, q, p, b, a), |p, q, r, a, b| {
        x.comp2_local(r, q, p, b, a)
    })
}

fn pi0_reps(h: &FinCat) -> (Vec<usize>, Vec<usize>) {
    let (comp, count) = pi0(h);
    let mut reps = vec![usize::MAX; count];
    for (o, &c) in comp.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = o;
        }
    }
    (comp, reps)
}

/// The 1-category obtained by inverting all 2-cells. Requires posetal homs.
pub fn localize_2morphisms(x: &TwoCat) -> Result<FinCat, TwoCatError> {
    let n = x.n_objects();
    for p in 0..n {
        for q in 0..n {
            if !x.hom(p, q).is_posetal() {
                return Err(TwoCatError::NotPosetal(p, q));
            }
        }
    }
    let data: Vec<(Vec<usize>, Vec<usize>)> = x.homs.iter().map(pi0_reps).collect();
    let mut base = vec![0usize; n * n + 1];
    let mut morphisms = Vec::new();
    for i in 0..n * n {
        for &r in &data[i].1 {
            morphisms.push(crate::fincat::Morphism {
                label: x.homs[i].object_label(r).to_string(),
                src: i / n,
                tgt: i % n,
            });
        }
        base[i + 1] = morphisms.len();
    }
    let identities = (0..n).map(|p| base[p * n + p] + data[p * n + p].0[x.one_cell(x.id1(p)).local]).collect();
    let mut comp = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for (ca, &ra) in data[p * n + q].1.iter().enumerate() {
                for r in 0..n {
                    for (cb, &rb) in data[q * n + r].1.iter().enumerate() {
                        let h = x.comp1_local(p, q, r, ra, rb);
                        comp.push((base[p * n + q] + ca, base[q * n + r] + cb, base[p * n + r] + data[p * n + r].0[h]));
                    }
                }
            }
        }
    }
    FinCat::new(x.objects().to_vec(), morphisms, identities, &comp)
        .map_err(|e| TwoCatError::Functor(format!("localization is not a category: {e}")))
}

/// The locally discrete quotient identifying 1-cells joined by 2-cells,
/// with the quotient 2-functor.
pub fn locally_pi0(x: &TwoCat) -> (TwoCat, TwoFunctor) {
    let n = x.n_objects();
    let data: Vec<(Vec<usize>, Vec<usize>)> = x.homs.iter().map(pi0_reps).collect();
    let homs = (0..n * n)
        .map(|i| {
            FinCat::discrete_labelled(data[i].1.iter().map(|&r| x.homs[i].object_label(r).to_string()).collect())
        })
        .collect();
    let id1 = (0..n).map(|p| data[p * n + p].0[x.one_cell(x.id1(p)).local]).collect();
    let c1 = |p: usize, q: usize, r: usize, a: usize, b: usize| {
        data[p * n + r].0[x.comp1_local(p, q, r, data[p * n + q].1[a], data[q * n + r].1[b])]
    };
    let q = TwoCat::build_unchecked(x.objects().to_vec(), homs, id1, c1, c1);
    let one = (0..x.n_one_cells())
        .map(|f| {
            let c = x.one_cell(f);
            q.one_id(c.src, c.tgt, data[c.src * n + c.tgt].0[c.local])
        })
        .collect::<Vec<_>>();
    let two = (0..x.n_two_cells())
        .map(|a| {
            let c = x.two_cell(a);
            q.id2(one[c.dom])
        })
        .collect();
    let f = TwoFunctor { obj: (0..n).collect(), one, two };
    (q, f)
}

// ---------------------------------------------------------------------------
// Colimit verification against probes.

#[derive(Debug, Clone)]
pub struct DiagramArrow {
    pub src: usize,
    pub tgt: usize,
    pub functor: TwoFunctor,
}

/// A diagram whose arrows go from "source" vertices to "sink" vertices.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub vertices: Vec<(String, TwoCat)>,
    pub arrows: Vec<DiagramArrow>,
}

#[derive(Debug, Clone)]
pub struct Cocone {
    pub apex: TwoCat,
    pub legs: Vec<TwoFunctor>,
}

#[derive(Debug, Clone)]
pub struct Probe {
    pub name: String,
    pub cat: TwoCat,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("diagram does not commute: {0}")]
    NonCommuting(String),
    #[error("malformed diagram: {0}")]
    BadDiagram(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    pub apex_maps: usize,
    pub limit_size: u64,
    pub vertex_maps: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
    pub witness: Option<String>,
}

impl ProbeResult {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitReport {
    pub scope: &'static str,
    pub probes: Vec<ProbeResult>,
}

impl ColimitReport {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(ProbeResult::passed)
    }

    pub fn first_failure(&self) -> Option<&ProbeResult> {
        self.probes.iter().find(|p| !p.passed())
    }
}

pub const PROBE_SCOPE: &str = "verified against probe family";

/// Checks that `Map(apex, X) -> lim_v Map(D_v, X)` is a bijection for every probe `X`.
pub fn verify_colimit(
    diagram: &Diagram,
    cocone: &Cocone,
    probes: &[Probe],
    opts: &SearchOptions,
) -> Result<ColimitReport, VerifyError> {
    let nv = diagram.vertices.len();
    if cocone.legs.len() != nv {
        return Err(VerifyError::BadDiagram(format!("{} legs for {} vertices", cocone.legs.len(), nv)));
    }
    for (v, leg) in cocone.legs.iter().enumerate() {
        leg.validate(&diagram.vertices[v].1, &cocone.apex)
            .map_err(|e| VerifyError::BadDiagram(format!("leg {}: {e}", diagram.vertices[v].0)))?;
    }
    let mut is_source = vec![false; nv];
    for (i, a) in diagram.arrows.iter().enumerate() {
        a.functor
            .validate(&diagram.vertices[a.src].1, &diagram.vertices[a.tgt].1)
            .map_err(|e| VerifyError::BadDiagram(format!("arrow {i}: {e}")))?;
        is_source[a.src] = true;
        if a.functor.then(&cocone.legs[a.tgt]) != cocone.legs[a.src] {
            return Err(VerifyError::NonCommuting(format!(
                "leg at {} differs from the composite through {}",
                diagram.vertices[a.src].0, diagram.vertices[a.tgt].0
            )));
        }
    }
    for a in &diagram.arrows {
        if is_source[a.tgt] {
            return Err(VerifyError::BadDiagram("arrows must go from source vertices to sink vertices".into()));
        }
    }
    let sinks: Vec<usize> = (0..nv).filter(|&v| !is_source[v]).collect();
    let searches: Vec<FunctorSearch> = diagram.vertices.iter().map(|(_, c)| FunctorSearch::new(c)).collect();
    let apex_search = FunctorSearch::new(&cocone.apex);
    let mut results = Vec::new();
    for probe in probes {
        results.push(check_probe(diagram, cocone, &sinks, &searches, &apex_search, probe, opts)?);
    }
    Ok(ColimitReport { scope: PROBE_SCOPE, probes: results })
}

#[allow(clippy::too_many_arguments)]
fn check_probe(
    diagram: &Diagram,
    cocone: &Cocone,
    sinks: &[usize],
    searches: &[FunctorSearch],
    apex_search: &FunctorSearch,
    probe: &Probe,
    opts: &SearchOptions,
) -> Result<ProbeResult, VerifyError> {
    let x = &probe.cat;
    let maps: Vec<Vec<TwoFunctor>> = searches.iter().map(|s| s.enumerate(x, opts)).collect::<Result<_, _>>()?;
    let index: Vec<HashMap<TwoFunctor, usize>> =
        maps.iter().map(|m| m.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    // restriction of each sink functor along each arrow
    let restrict: Vec<Vec<usize>> = diagram
        .arrows
        .iter()
        .map(|a| {
            maps[a.tgt]
                .iter()
                .map(|f| index[a.src][&a.functor.then(f)])
                .collect()
        })
        .collect();
    let limit = LimitSearch::new(diagram, sinks, &maps, &restrict);
    let limit_size = limit.count();
    let key_of = |o: &[usize], a: &[u32], b: &[u32]| -> Vec<u32> {
        sinks
            .iter()
            .map(|&s| {
                let r = restrict_raw(&cocone.legs[s], o, a, b);
                *index[s].get(&r).expect("restriction of a 2-functor is a 2-functor") as u32
            })
            .collect()
    };
    let mut keys = apex_search.map_collect(x, opts, key_of)?;
    let apex_maps = keys.len();
    keys.sort_unstable();
    let dup = keys.windows(2).find(|w| w[0] == w[1]).map(|w| w[0].clone());
    keys.dedup();
    let injective = dup.is_none();
    let mut witness = None;
    if let Some(key) = dup {
        let mut hits: Vec<TwoFunctor> = Vec::new();
        apex_search.for_each(x, &SearchOptions { parallel: false, ..*opts }, |o, a, b| {
            if key_of(o, a, b) == key {
                hits.push(raw_functor(o, a, b));
            }
            hits.len() < 2
        })?;
        witness = Some(format!(
            "probe {}: distinct maps out of the apex restrict equally: [{}] and [{}]",
            probe.name,
            hits[0].describe(&cocone.apex, x),
            hits[1].describe(&cocone.apex, x)
        ));
    }
    let surjective = keys.len() as u64 == limit_size;
    if !surjective && witness.is_none() {
        let seen: std::collections::HashSet<Vec<u32>> = keys.into_iter().collect();
        if let Some(miss) = limit.find(|t| !seen.contains(&t.iter().map(|&v| v as u32).collect::<Vec<_>>())) {
            let parts: Vec<String> = sinks
                .iter()
                .zip(&miss)
                .map(|(&s, &i)| format!("{}: [{}]", diagram.vertices[s].0, maps[s][i].describe(&diagram.vertices[s].1, x)))
                .collect();
            witness = Some(format!("probe {}: compatible family not in the image: {}", probe.name, parts.join("; ")));
        }
    }
    Ok(ProbeResult {
        probe: probe.name.clone(),
        apex_maps,
        limit_size,
        vertex_maps: maps.iter().map(Vec::len).collect(),
        injective,
        surjective,
        witness,
    })
}

fn raw_functor(o: &[usize], a: &[u32], b: &[u32]) -> TwoFunctor {
    TwoFunctor {
        obj: o.to_vec(),
        one: a.iter().map(|&v| v as usize).collect(),
        two: b.iter().map(|&v| v as usize).collect(),
    }
}

/// `leg` followed by the functor given as raw slices.
fn restrict_raw(leg: &TwoFunctor, o: &[usize], a: &[u32], b: &[u32]) -> TwoFunctor {
    TwoFunctor {
        obj: leg.obj.iter().map(|&x| o[x]).collect(),
        one: leg.one.iter().map(|&f| a[f] as usize).collect(),
        two: leg.two.iter().map(|&c| b[c] as usize).collect(),
    }
}

/// Compatible families over sink vertices, indexed by restrictions at source vertices.
struct LimitSearch<'d> {
    sinks: Vec<usize>,
    nv: usize,
    sizes: Vec<usize>,
    /// per sink position: arrows into it as (source vertex, restriction table)
    incoming: Vec<Vec<(usize, &'d [usize])>>,
}

impl<'d> LimitSearch<'d> {
    fn new(diagram: &Diagram, sinks: &[usize], maps: &[Vec<TwoFunctor>], restrict: &'d [Vec<usize>]) -> Self {
        let incoming = sinks
            .iter()
            .map(|&s| {
                diagram
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.tgt == s)
                    .map(|(i, a)| (a.src, restrict[i].as_slice()))
                    .collect()
            })
            .collect();
        LimitSearch {
            sinks: sinks.to_vec(),
            nv: diagram.vertices.len(),
            sizes: sinks.iter().map(|&s| maps[s].len()).collect(),
            incoming,
        }
    }

    fn walk(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        // bucket each sink's candidates by the values forced at already-met sources
        let mut met = vec![false; self.nv];
        let mut plans = Vec::new();
        for (p, inc) in self.incoming.iter().enumerate() {
            let keyed: Vec<usize> = (0..inc.len()).filter(|&k| met[inc[k].0]).collect();
            let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for c in 0..self.sizes[p] {
                let key: Vec<usize> = keyed.iter().map(|&k| inc[k].1[c]).collect();
                buckets.entry(key).or_default().push(c);
            }
            for &(u, _) in inc {
                met[u] = true;
            }
            plans.push((keyed, buckets));
        }
        let mut value = vec![usize::MAX; self.nv];
        let mut tuple = Vec::with_capacity(self.sinks.len());
        self.rec(0, &plans, &mut value, &mut tuple, visit);
    }

    #[allow(clippy::type_complexity)]
    fn rec(
        &self,
        p: usize,
        plans: &[(Vec<usize>, HashMap<Vec<usize>, Vec<usize>>)],
        value: &mut Vec<usize>,
        tuple: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if p == self.sinks.len() {
            return visit(tuple);
        }
        let inc = &self.incoming[p];
        let (keyed, buckets) = &plans[p];
        let key: Vec<usize> = keyed.iter().map(|&k| value[inc[k].0]).collect();
        let Some(cands) = buckets.get(&key) else { return true };
        for &c in cands {
            let mut set = Vec::new();
            let mut ok = true;
            for &(u, table) in inc {
                let r = table[c];
                if value[u] == usize::MAX {
                    value[u] = r;
                    set.push(u);
                } else if value[u] != r {
                    ok = false;
                    break;
                }
            }
            if ok {
                tuple.push(c);
                let go_on = self.rec(p + 1, plans, value, tuple, visit);
                tuple.pop();
                if !go_on {
                    for u in set {
                        value[u] = usize::MAX;
                    }
                    return false;
                }
            }
            for u in set {
                value[u] = usize::MAX;
            }
        }
        true
    }

    fn count(&self) -> u64 {
        let mut n = 0u64;
        self.walk(&mut |_| {
            n += 1;
            true
        });
        n
    }

    fn find(&self, pred: impl Fn(&Vec<usize>) -> bool) -> Option<Vec<usize>> {
        let mut out = None;
        self.walk(&mut |t| {
            let v = t.to_vec();
            if pred(&v) {
                out = Some(v);
                false
            } else {
                true
            }
        });
        out
    }
}

/// Ways to corrupt a cocone for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Corruption {
    /// Add a disjoint point to the apex.
    ExtraObject,
    /// Post-compose every leg with the quotient collapsing 2-cells.
    Collapse2Cells,
}

pub fn corrupt_cocone(c: &Cocone, how: Corruption) -> Cocone {
    match how {
        Corruption::ExtraObject => {
            let (apex, inc, _) = coproduct_twocat(&c.apex, &discrete_twocat(vec!["*".into()]));
            Cocone { apex, legs: c.legs.iter().map(|l| l.then(&inc)).collect() }
        }
        Corruption::Collapse2Cells => {
            let (apex, q) = locally_pi0(&c.apex);
            Cocone { apex, legs: c.legs.iter().map(|l| l.then(&q)).collect() }
        }
    }
}

// ---------------------------------------------------------------------------
// Serialization.

#[derive(Serialize, Deserialize)]
struct HomJson {
    src: usize,
    tgt: usize,
    category: FinCat,
}

#[derive(Serialize, Deserialize)]
struct CompJson {
    x: usize,
    y: usize,
    z: usize,
    one: Vec<[usize; 3]>,
    two: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct TwoCatJson {
    objects: Vec<String>,
    homs: Vec<HomJson>,
    identities: Vec<usize>,
    hcomp: Vec<CompJson>,
}

impl Serialize for TwoCat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.n_objects();
        let mut homs = Vec::new();
        let mut hcomp = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let h = self.hom(x, y);
                if h.n_objects() > 0 {
                    homs.push(HomJson { src: x, tgt: y, category: h.clone() });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz) = (self.hom(x, y), self.hom(y, z));
                    if hxy.n_objects() == 0 || hyz.n_objects() == 0 {
                        continue;
                    }
                    let mut one = Vec::new();
                    for a in 0..hxy.n_objects() {
                        for b in 0..hyz.n_objects() {
                            one.push([a, b, self.comp1_local(x, y, z, a, b)]);
                        }
                    }
                    let mut two = Vec::new();
                    for a in 0..hxy.n_morphisms() {
                        for b in 0..hyz.n_morphisms() {
                            two.push([a, b, self.comp2_local(x, y, z, a, b)]);
                        }
                    }
                    hcomp.push(CompJson { x, y, z, one, two });
                }
            }
        }
        TwoCatJson {
            objects: self.objects.clone(),
            homs,
            identities: (0..n).map(|x| self.one_cell(self.id1(x)).local).collect(),
            hcomp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoCat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = TwoCatJson::deserialize(d)?;
        let n = j.objects.len();
        let mut homs = vec![FinCat::discrete(0); n * n];
        for h in j.homs {
            if h.src >= n || h.tgt >= n {
                return Err(D::Error::custom("hom endpoint out of range"));
            }
            homs[h.src * n + h.tgt] = h.category;
        }
        let mut t1: HashMap<(usize, usize, usize, usize, usize), usize> = HashMap::new();
        let mut t2: HashMap<(usize, usize, usize, usize, usize), usize> = HashMap::new();
        for c in &j.hcomp {
            for &[a, b, r] in &c.one {
                t1.insert((c.x, c.y, c.z, a, b), r);
            }
            for &[a, b, r] in &c.two {
                t2.insert((c.x, c.y, c.z, a, b), r);
            }
        }
        // a missing entry maps out of range and is caught by validation
        let missing = usize::MAX >> 33;
        if j.identities.len() != n || (0..n).any(|x| j.identities[x] >= homs[x * n + x].n_objects()) {
            return Err(D::Error::custom("identity 1-cells missing or out of range"));
        }
        TwoCat::build(
            j.objects,
            homs,
            j.identities,
            |x, y, z, a, b| t1.get(&(x, y, z, a, b)).copied().unwrap_or(missing),
            |x, y, z, a, b| t2.get(&(x, y, z, a, b)).copied().unwrap_or(missing),
        )
        .map_err(D::Error::custom)
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per object, one edge per non-identity 1-cell,
/// annotated with the number of non-identity 2-cells leaving it.
pub fn to_dot(c: &TwoCat) -> String {
    let mut s = String::from("digraph twocat {\n  rankdir=LR;\n");
    for (x, l) in c.objects().iter().enumerate() {
        let _ = writeln!(s, "  n{x} [label=\"{}\"];", dot_escape(l));
    }
    for f in 0..c.n_one_cells() {
        let k = c.one_cell(f);
        if k.src == k.tgt && c.id1(k.src) == f {
            continue;
        }
        let out = (0..c.n_two_cells())
            .filter(|&a| c.two_cell(a).dom == f && !c.is_identity_two_cell(a))
            .count();
        let _ = writeln!(
            s,
            "  n{} -> n{} [label=\"{} ({} 2-cells)\"];",
            k.src,
            k.tgt,
            dot_escape(c.one_cell_label(f)),
            out
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{from_poset, functors, product_cat};
    use crate::theta2::DeltaMor;
    use std::collections::BTreeMap;

    fn obj(s: &str) -> Theta2Obj {
        s.parse().unwrap()
    }

    fn seq() -> SearchOptions {
        SearchOptions { parallel: false, ..Default::default() }
    }

    #[test]
    fn realize_examples() {
        let c2 = realize(&Theta2Obj::two_cell());
        assert!(c2.validate().is_ok());
        assert_eq!(c2.n_objects(), 2);
        assert_eq!((c2.hom(0, 1).n_objects(), c2.hom(0, 1).n_morphisms()), (2, 3));
        assert_eq!(c2.hom(1, 0).n_objects(), 0);
        let c0 = realize(&Theta2Obj::point());
        assert_eq!(c0.counts(), (1, 1, 1));
        let r = realize(&obj("[2](1,0)"));
        assert!(r.validate().is_ok());
        assert_eq!(r.hom(0, 2).n_objects(), 2);
        assert!(crate::fincat::cat_iso(r.hom(0, 2), &from_poset(&ordinal_poset(1))).is_some());
    }

    #[test]
    fn free_linear_examples() {
        let a = from_poset(&ordinal_poset(1));
        let f = free_linear(&CatGraph { labels: vec![a.clone(), a.clone()] });
        assert!(f.validate().is_ok());
        assert_eq!(f.hom(0, 2).n_morphisms(), 9);
        let t = free_linear(&CatGraph { labels: vec![FinCat::terminal(); 3] });
        assert!(iso_two_cats(&t, &realize(&obj("[3](0,0,0)")), DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn functor_counts() {
        let c0 = realize(&Theta2Obj::point());
        let c1 = realize(&Theta2Obj::arrow());
        let c2 = realize(&Theta2Obj::two_cell());
        assert_eq!(enumerate_two_functors(&c0, &c2, &seq()).unwrap().len(), 2);
        let fs = enumerate_two_functors(&c1, &c2, &seq()).unwrap();
        assert_eq!(fs.len(), 4);
        // oracle: object maps times functors between the relevant homs
        let mut brute = 0;
        for x in 0..2 {
            for y in 0..2 {
                if c2.hom(x, y).n_objects() == 0 {
                    continue;
                }
                for f in functors(c2.hom(0, 1), c2.hom(x, y)) {
                    let one = {
                        let mut v = vec![usize::MAX; c2.n_one_cells()];
                        v[c2.id1(0)] = c2.id1(x);
                        v[c2.id1(1)] = c2.id1(y);
                        for (l, &t) in f.obj.iter().enumerate() {
                            v[c2.one_id(0, 1, l)] = c2.one_id(x, y, t);
                        }
                        v
                    };
                    if TwoFunctor::from_one_cell_map(&c2, &c2, vec![x, y], one).is_ok() {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(enumerate_two_functors(&c2, &c2, &seq()).unwrap().len(), brute);
        for f in &fs {
            f.validate(&c1, &c2).unwrap();
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let src = realize(&obj("[2](1,0)"));
        let tgt = cotensor(&realize(&Theta2Obj::two_cell()), 1);
        let a = enumerate_two_functors(&src, &tgt, &seq()).unwrap();
        let b = enumerate_two_functors(&src, &tgt, &SearchOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn budget_is_reported() {
        let src = realize(&obj("[2](1,1)"));
        let tgt = realize(&obj("[2](1,1)"));
        let opts = SearchOptions { budget: 5, injective: false, parallel: false };
        assert_eq!(enumerate_two_functors(&src, &tgt, &opts), Err(SearchError::BudgetExceeded(5)));
        let none = enumerate_two_functors(&realize(&Theta2Obj::arrow()), &discrete_twocat(vec![]), &seq());
        assert_eq!(none.unwrap().len(), 0);
        let consts = enumerate_two_functors(&realize(&Theta2Obj::arrow()), &discrete_twocat(vec!["a".into(), "b".into()]), &seq());
        assert_eq!(consts.unwrap().len(), 2);
    }

    #[test]
    fn realize_mor_examples() {
        let a = obj("[1](1)");
        let id = realize_mor(&Theta2Mor::identity(&a));
        assert_eq!(id, TwoFunctor::identity(&realize(&a)));
        // inert [1](1) -> [2](1,0) as the first edge
        let mut psis = BTreeMap::new();
        psis.insert((1, 1), DeltaMor::identity(1));
        let f = Theta2Mor::new(a.clone(), obj("[2](1,0)"), DeltaMor::new(1, 2, vec![0, 1]).unwrap(), psis).unwrap();
        let rf = realize_mor(&f);
        assert!(rf.is_injective());
        let b = obj("[2](1,2)");
        let c = obj("[2](2,1)");
        let fs = Theta2Mor::all(&a, &b);
        let gs = Theta2Mor::all(&b, &c);
        for f in fs.iter().step_by(7) {
            for g in gs.iter().step_by(11) {
                let gf = Theta2Mor::compose(g, f).unwrap();
                assert_eq!(realize_mor(&gf), realize_mor(f).then(&realize_mor(g)));
            }
        }
    }

    #[test]
    fn cotensor_examples() {
        let c2 = realize(&Theta2Obj::two_cell());
        assert!(iso_two_cats(&cotensor(&c2, 0), &c2, DEFAULT_BUDGET).unwrap().is_some());
        let t = cotensor(&c2, 1);
        assert!(t.validate().is_ok());
        assert_eq!(t.hom(0, 1).n_objects(), 3);
        // maps C₁ -> X^[1] correspond to 2-cells of X
        let c1 = realize(&Theta2Obj::arrow());
        for x in [c2.clone(), realize(&obj("[2](1,1)")), t.clone()] {
            let n = enumerate_two_functors(&c1, &cotensor(&x, 1), &seq()).unwrap().len();
            assert_eq!(n, x.n_two_cells());
        }
        let ev = cotensor_eval(&c2, 1, 0);
        ev.validate(&t, &c2).unwrap();
    }

    #[test]
    fn duals() {
        let x = realize(&obj("[2](1,0)"));
        assert_eq!(two_op(&two_op(&x)), x);
        assert_eq!(one_op(&one_op(&x)), x);
        assert!(two_op(&x).validate().is_ok());
        assert!(one_op(&x).validate().is_ok());
        assert!(iso_two_cats(&one_op(&x), &realize(&obj("[2](0,1)")), DEFAULT_BUDGET).unwrap().is_some());
        let c2 = realize(&Theta2Obj::two_cell());
        assert!(iso_two_cats(&two_op(&c2), &c2, DEFAULT_BUDGET).unwrap().is_some());
        assert!(iso_two_cats(&realize(&Theta2Obj::arrow()), &c2, DEFAULT_BUDGET).unwrap().is_none());
        let (f, g) = iso_two_cats(&c2, &c2, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(f.then(&g), TwoFunctor::identity(&c2));
    }

    #[test]
    fn localization() {
        let c2 = realize(&Theta2Obj::two_cell());
        let l = localize_2morphisms(&c2).unwrap();
        assert!(crate::fincat::cat_iso(&l, &from_poset(&ordinal_poset(1))).is_some());
        let sq = realize(&obj("[2](0,0)"));
        let l2 = localize_2morphisms(&sq).unwrap();
        assert_eq!(l2.n_morphisms(), 6);
        let (q, f) = locally_pi0(&realize(&obj("[2](1,1)")));
        assert!(q.validate().is_ok());
        assert!(q.is_locally_discrete());
        f.validate(&realize(&obj("[2](1,1)")), &q).unwrap();
    }

    #[test]
    fn products_and_coproducts() {
        let c1 = realize(&Theta2Obj::arrow());
        let p = product_twocat(&c1, &c1);
        assert!(p.validate().is_ok());
        assert_eq!(p.n_objects(), 4);
        let l = localize_2morphisms(&p).unwrap();
        let sq = product_cat(&from_poset(&ordinal_poset(1)), &from_poset(&ordinal_poset(1)));
        assert!(crate::fincat::cat_iso(&l, &sq).is_some());
        let (u, i, j) = coproduct_twocat(&c1, &realize(&Theta2Obj::two_cell()));
        assert!(u.validate().is_ok());
        i.validate(&c1, &u).unwrap();
        j.validate(&realize(&Theta2Obj::two_cell()), &u).unwrap();
    }

    #[test]
    fn trivial_pushout_and_negative_control() {
        // X <- C₀ -> C₀ with apex X
        let x = realize(&Theta2Obj::two_cell());
        let p = realize(&Theta2Obj::point());
        let to_x = TwoFunctor { obj: vec![0], one: vec![x.id1(0)], two: vec![x.id2(x.id1(0))] };
        let id_p = TwoFunctor::identity(&p);
        let diagram = Diagram {
            vertices: vec![("C0".into(), p.clone()), ("X".into(), x.clone()), ("C0'".into(), p.clone())],
            arrows: vec![
                DiagramArrow { src: 0, tgt: 1, functor: to_x.clone() },
                DiagramArrow { src: 0, tgt: 2, functor: id_p.clone() },
            ],
        };
        let cocone = Cocone { apex: x.clone(), legs: vec![to_x.clone(), TwoFunctor::identity(&x), to_x.clone()] };
        let probes = vec![
            Probe { name: "C1".into(), cat: realize(&Theta2Obj::arrow()) },
            Probe { name: "C2".into(), cat: x.clone() },
        ];
        let rep = verify_colimit(&diagram, &cocone, &probes, &seq()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let bad = corrupt_cocone(&cocone, Corruption::ExtraObject);
        let rep = verify_colimit(&diagram, &bad, &probes, &seq()).unwrap();
        assert!(!rep.passed());
        assert!(rep.first_failure().unwrap().witness.is_some());
        let bad = corrupt_cocone(&cocone, Corruption::Collapse2Cells);
        let rep = verify_colimit(&diagram, &bad, &probes, &seq()).unwrap();
        assert!(!rep.passed());
        // non-commuting input
        let mut wrong = cocone.clone();
        wrong.legs[0] = TwoFunctor { obj: vec![1], one: vec![x.id1(1)], two: vec![x.id2(x.id1(1))] };
        assert!(matches!(verify_colimit(&diagram, &wrong, &probes, &seq()), Err(VerifyError::NonCommuting(_))));
    }

    #[test]
    fn json_roundtrip() {
        let x = cotensor(&realize(&Theta2Obj::two_cell()), 1);
        let s = serde_json::to_string(&x).unwrap();
        let back: TwoCat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v["hcomp"][0]["one"].as_array_mut().unwrap().pop();
        assert!(serde_json::from_value::<TwoCat>(v).is_err());
    }

    #[test]
    fn dot_output() {
        let d = to_dot(&realize(&Theta2Obj::two_cell()));
        assert!(d.starts_with("digraph"));
        assert_eq!(d.matches("->").count(), 2);
        assert!(d.contains("(1 2-cells)"));
    }
}
