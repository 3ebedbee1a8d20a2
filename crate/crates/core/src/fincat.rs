//! Finite categories given by explicit composition tables.
//!
//! Composition is written in diagrammatic order throughout: `compose(f, g)`
//! is "first `f`, then `g`" and is defined when `tgt(f) == src(g)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::FinPoset;
use crate::radix::MixedRadix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("morphism {0} has an endpoint outside the object list")]
    BadEndpoint(usize),
    #[error("identity of object {0} is missing or has the wrong endpoints")]
    BadIdentity(usize),
    #[error("composite of {0} and {1} is missing")]
    MissingComposite(usize, usize),
    #[error("composite of {0} and {1} is defined but they are not composable")]
    SpuriousComposite(usize, usize),
    #[error("composite of {0} and {1} has the wrong endpoints")]
    CompositeEndpoints(usize, usize),
    #[error("unit law fails for morphism {0}")]
    Unit(usize),
    #[error("associativity fails on ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("functor {0}")]
    Functor(String),
    #[error("reference to morphism {0} out of range")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    #[serde(rename = "name")]
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
    between: HashMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Builds and validates a category. `composition` lists `(f, g, f;g)`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: &[(usize, usize, usize)],
    ) -> Result<Self, CatError> {
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return Err(CatError::BadEndpoint(i));
            }
        }
        for &(f, g, h) in composition {
            let n = morphisms.len();
            if f >= n || g >= n || h >= n {
                return Err(CatError::OutOfRange(f.max(g).max(h)));
            }
        }
        if identities.len() != objects.len() || identities.iter().any(|&i| i >= morphisms.len()) {
            return Err(CatError::BadIdentity(identities.len().min(objects.len())));
        }
        let comp = composition.iter().map(|&(f, g, h)| ((f, g), h)).collect();
        let c = FinCat::from_parts(objects, morphisms, identities, comp);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        comp: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            between.entry((m.src, m.tgt)).or_default().push(i);
        }
        FinCat { objects, morphisms, identities, comp, between }
    }

    /// Checks endpoints, identities, unit laws and associativity on the full table.
    pub fn validate(&self) -> Result<(), CatError> {
        let n = self.morphisms.len();
        for (o, &id) in self.identities.iter().enumerate() {
            let m = &self.morphisms[id];
            if m.src != o || m.tgt != o {
                return Err(CatError::BadIdentity(o));
            }
        }
        for (&(f, g), &h) in &self.comp {
            if self.tgt(f) != self.src(g) {
                return Err(CatError::SpuriousComposite(f, g));
            }
            if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                return Err(CatError::CompositeEndpoints(f, g));
            }
        }
        for f in 0..n {
            for &g in self.out_of(self.tgt(f)) {
                if !self.comp.contains_key(&(f, g)) {
                    return Err(CatError::MissingComposite(f, g));
                }
            }
            let (s, t) = (self.src(f), self.tgt(f));
            if self.compose(self.identities[s], f) != Some(f) || self.compose(f, self.identities[t]) != Some(f) {
                return Err(CatError::Unit(f));
            }
        }
        for f in 0..n {
            for &g in self.out_of(self.tgt(f)) {
                let fg = self.comp[&(f, g)];
                for &h in self.out_of(self.tgt(g)) {
                    let gh = self.comp[&(g, h)];
                    if self.comp.get(&(fg, h)) != self.comp.get(&(f, gh)) {
                        return Err(CatError::Associativity(f, g, h));
                    }
                }
            }
        }
        Ok(())
    }

    fn out_of(&self, o: usize) -> impl Iterator<Item = &usize> {
        (0..self.objects.len()).flat_map(move |t| self.hom(o, t).iter())
    }

    pub fn terminal() -> Self {
        FinCat::discrete(1)
    }

    /// Discrete category on `n` objects labelled `0..n`.
    pub fn discrete(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FinCat::discrete_labelled(objects)
    }

    pub fn discrete_labelled(objects: Vec<String>) -> Self {
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, l)| Morphism { label: format!("id_{l}"), src: i, tgt: i })
            .collect();
        let identities = (0..objects.len()).collect();
        let comp = (0..objects.len()).map(|i| ((i, i), i)).collect();
        FinCat::from_parts(objects, morphisms, identities, comp)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    #[inline]
    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    #[inline]
    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    #[inline]
    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `f` then `g`.
    #[inline]
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }

    /// Morphisms `a -> b`.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.between.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Composition triples `(f, g, f;g)` in sorted order.
    pub fn composition_table(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.comp.iter().map(|(&(f, g), &h)| (f, g, h)).collect();
        v.sort_unstable();
        v
    }

    /// At most one morphism between any two objects.
    pub fn is_posetal(&self) -> bool {
        self.between.values().all(|v| v.len() <= 1)
    }

    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.hom(self.tgt(f), self.src(f)).iter().any(|&g| {
            self.compose(f, g) == Some(self.identity(self.src(f)))
                && self.compose(g, f) == Some(self.identity(self.tgt(f)))
        })
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.hom(self.tgt(f), self.src(f)).iter().copied().find(|&g| {
            self.compose(f, g) == Some(self.identity(self.src(f)))
                && self.compose(g, f) == Some(self.identity(self.tgt(f)))
        })
    }

    /// Relabels objects (morphism labels are kept).
    pub fn with_object_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.objects.len());
        self.objects = labels;
        self
    }
}

/// The category of a poset: one morphism `a -> b` iff `a <= b`.
pub fn from_poset(p: &FinPoset) -> FinCat {
    let n = p.len();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for (a, b) in p.leq_pairs() {
        index.insert((a, b), morphisms.len());
        let label = if a == b {
            format!("id_{}", p.label(a))
        } else {
            format!("{}<={}", p.label(a), p.label(b))
        };
        morphisms.push(Morphism { label, src: a, tgt: b });
    }
    let identities = (0..n).map(|a| index[&(a, a)]).collect();
    let mut comp = HashMap::new();
    for (&(a, b), &f) in &index {
        for c in 0..n {
            if let Some(&g) = index.get(&(b, c)) {
                comp.insert((f, g), index[&(a, c)]);
            }
        }
    }
    FinCat::from_parts(p.labels().to_vec(), morphisms, identities, comp)
}

/// The underlying poset of a posetal category (`a <= b` iff a morphism exists).
pub fn to_poset(c: &FinCat) -> Option<FinPoset> {
    if !c.is_posetal() {
        return None;
    }
    let p = FinPoset::from_fn(c.objects().to_vec(), |a, b| !c.hom(a, b).is_empty());
    p.validate().ok().map(|_| p)
}

/// Tuple indexing for an n-ary product of categories.
#[derive(Debug, Clone)]
pub struct ProductIndex {
    pub objects: MixedRadix,
    pub morphisms: MixedRadix,
}

/// n-ary product. Objects and morphisms are tuples encoded in mixed radix,
/// first factor most significant. The empty product is the terminal category.
pub fn product_all(factors: &[&FinCat]) -> (FinCat, ProductIndex) {
    let obj_ix = MixedRadix::new(factors.iter().map(|c| c.n_objects()).collect());
    let mor_ix = MixedRadix::new(factors.iter().map(|c| c.n_morphisms()).collect());
    let objects: Vec<String> = (0..obj_ix.size())
        .map(|x| {
            let t = obj_ix.decode(x);
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&o, c)| c.object_label(o)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let morphisms: Vec<Morphism> = (0..mor_ix.size())
        .map(|x| {
            let t = mor_ix.decode(x);
            let src: Vec<usize> = t.iter().zip(factors).map(|(&f, c)| c.src(f)).collect();
            let tgt: Vec<usize> = t.iter().zip(factors).map(|(&f, c)| c.tgt(f)).collect();
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&f, c)| c.morphism(f).label.as_str()).collect();
            Morphism { label: format!("({})", parts.join(",")), src: obj_ix.encode(&src), tgt: obj_ix.encode(&tgt) }
        })
        .collect();
    let identities = (0..obj_ix.size())
        .map(|x| {
            let t = obj_ix.decode(x);
            let ids: Vec<usize> = t.iter().zip(factors).map(|(&o, c)| c.identity(o)).collect();
            mor_ix.encode(&ids)
        })
        .collect();
    let mut comp = HashMap::new();
    // composable pairs factor by factor
    let per_factor: Vec<Vec<(usize, usize, usize)>> = factors.iter().map(|c| c.composition_table()).collect();
    let mut choice = vec![0usize; factors.len()];
    fn rec(
        i: usize,
        per_factor: &[Vec<(usize, usize, usize)>],
        choice: &mut Vec<usize>,
        mor_ix: &MixedRadix,
        comp: &mut HashMap<(usize, usize), usize>,
    ) {
        if i == per_factor.len() {
            let f: Vec<usize> = choice.iter().enumerate().map(|(k, &c)| per_factor[k][c].0).collect();
            let g: Vec<usize> = choice.iter().enumerate().map(|(k, &c)| per_factor[k][c].1).collect();
            let h: Vec<usize> = choice.iter().enumerate().map(|(k, &c)| per_factor[k][c].2).collect();
            comp.insert((mor_ix.encode(&f), mor_ix.encode(&g)), mor_ix.encode(&h));
            return;
        }
        for c in 0..per_factor[i].len() {
            choice[i] = c;
            rec(i + 1, per_factor, choice, mor_ix, comp);
        }
    }
    rec(0, &per_factor, &mut choice, &mor_ix, &mut comp);
    let cat = FinCat::from_parts(objects, morphisms, identities, comp);
    (cat, ProductIndex { objects: obj_ix, morphisms: mor_ix })
}

pub fn product_cat(c: &FinCat, d: &FinCat) -> FinCat {
    product_all(&[c, d]).0
}

pub fn opposite(c: &FinCat) -> FinCat {
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| Morphism { label: m.label.clone(), src: m.tgt, tgt: m.src })
        .collect();
    let comp = c.comp.iter().map(|(&(f, g), &h)| ((g, f), h)).collect();
    FinCat::from_parts(c.objects.clone(), morphisms, c.identities.clone(), comp)
}

/// Connected components: returns the component index of each object
/// (numbered by first appearance) and the number of components.
pub fn pi0(c: &FinCat) -> (Vec<usize>, usize) {
    let n = c.n_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for m in c.morphisms() {
        let a = find(&mut parent, m.src);
        let b = find(&mut parent, m.tgt);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = HashMap::new();
    let mut out = Vec::with_capacity(n);
    for o in 0..n {
        let r = find(&mut parent, o);
        let next = label.len();
        out.push(*label.entry(r).or_insert(next));
    }
    let count = label.len();
    (out, count)
}

/// A functor between finite categories, as object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinFunctor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FinFunctor {
    pub fn identity(c: &FinCat) -> Self {
        FinFunctor { obj: (0..c.n_objects()).collect(), mor: (0..c.n_morphisms()).collect() }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &FinFunctor) -> FinFunctor {
        FinFunctor {
            obj: self.obj.iter().map(|&o| other.obj[o]).collect(),
            mor: self.mor.iter().map(|&f| other.mor[f]).collect(),
        }
    }

    pub fn validate(&self, src: &FinCat, tgt: &FinCat) -> Result<(), CatError> {
        if self.obj.len() != src.n_objects() || self.mor.len() != src.n_morphisms() {
            return Err(CatError::Functor("map sizes do not match the source".into()));
        }
        if self.obj.iter().any(|&o| o >= tgt.n_objects()) || self.mor.iter().any(|&f| f >= tgt.n_morphisms()) {
            return Err(CatError::Functor("image out of range".into()));
        }
        for f in 0..src.n_morphisms() {
            let g = self.mor[f];
            if tgt.src(g) != self.obj[src.src(f)] || tgt.tgt(g) != self.obj[src.tgt(f)] {
                return Err(CatError::Functor(format!("morphism {f} lands on the wrong endpoints")));
            }
        }
        for o in 0..src.n_objects() {
            if self.mor[src.identity(o)] != tgt.identity(self.obj[o]) {
                return Err(CatError::Functor(format!("identity of object {o} not preserved")));
            }
        }
        for (f, g, h) in src.composition_table() {
            if tgt.compose(self.mor[f], self.mor[g]) != Some(self.mor[h]) {
                return Err(CatError::Functor(format!("composite ({f}, {g}) not preserved")));
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut o = self.obj.clone();
        o.sort_unstable();
        o.dedup();
        let mut m = self.mor.clone();
        m.sort_unstable();
        m.dedup();
        o.len() == self.obj.len() && m.len() == self.mor.len()
    }
}

struct FunctorSearch<'a> {
    src: &'a FinCat,
    tgt: &'a FinCat,
    bijective: bool,
    order: Vec<usize>,
    right: Vec<Vec<(usize, usize)>>,
    left: Vec<Vec<(usize, usize)>>,
    obj: Vec<usize>,
    mor: Vec<usize>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
    trail: Vec<usize>,
    stop_at_first: bool,
    out: Vec<FinFunctor>,
}

const UNSET: usize = usize::MAX;

impl<'a> FunctorSearch<'a> {
    fn new(src: &'a FinCat, tgt: &'a FinCat, bijective: bool, stop_at_first: bool) -> Self {
        let n = src.n_morphisms();
        let mut right = vec![Vec::new(); n];
        let mut left = vec![Vec::new(); n];
        for (f, g, h) in src.composition_table() {
            right[f].push((g, h));
            left[g].push((f, h));
        }
        // non-identity morphisms, indecomposable ones first
        let decomposable: Vec<bool> = (0..n)
            .map(|h| {
                src.composition_table()
                    .iter()
                    .any(|&(f, g, hh)| hh == h && !src.is_identity(f) && !src.is_identity(g))
            })
            .collect();
        let mut order: Vec<usize> = (0..n).filter(|&f| !src.is_identity(f)).collect();
        order.sort_by_key(|&f| (decomposable[f], f));
        FunctorSearch {
            src,
            tgt,
            bijective,
            order,
            right,
            left,
            obj: vec![UNSET; src.n_objects()],
            mor: vec![UNSET; n],
            used_obj: vec![false; tgt.n_objects()],
            used_mor: vec![false; tgt.n_morphisms()],
            trail: Vec::new(),
            stop_at_first,
            out: Vec::new(),
        }
    }

    fn assign(&mut self, f: usize, v: usize) -> bool {
        let mut queue = vec![(f, v)];
        while let Some((f, v)) = queue.pop() {
            if self.mor[f] != UNSET {
                if self.mor[f] != v {
                    return false;
                }
                continue;
            }
            if self.bijective && self.used_mor[v] {
                return false;
            }
            self.mor[f] = v;
            if self.bijective {
                self.used_mor[v] = true;
            }
            self.trail.push(f);
            for &(g, h) in &self.right[f] {
                if self.mor[g] != UNSET {
                    match self.tgt.compose(v, self.mor[g]) {
                        Some(x) => queue.push((h, x)),
                        None => return false,
                    }
                }
            }
            for &(g, h) in &self.left[f] {
                if self.mor[g] != UNSET {
                    match self.tgt.compose(self.mor[g], v) {
                        Some(x) => queue.push((h, x)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().unwrap();
            if self.bijective {
                self.used_mor[self.mor[f]] = false;
            }
            self.mor[f] = UNSET;
        }
    }

    fn objects(&mut self, i: usize) -> bool {
        if i == self.src.n_objects() {
            let mark = self.trail.len();
            let mut ok = true;
            for o in 0..self.src.n_objects() {
                if !self.assign(self.src.identity(o), self.tgt.identity(self.obj[o])) {
                    ok = false;
                    break;
                }
            }
            let done = ok && self.morphisms(0);
            self.undo(mark);
            return done;
        }
        for c in 0..self.tgt.n_objects() {
            if self.bijective && self.used_obj[c] {
                continue;
            }
            let ok = (0..i).all(|j| {
                let need_ij = !self.src.hom(j, i).is_empty();
                let need_ji = !self.src.hom(i, j).is_empty();
                let have_ij = self.tgt.hom(self.obj[j], c).len();
                let have_ji = self.tgt.hom(c, self.obj[j]).len();
                if self.bijective {
                    have_ij == self.src.hom(j, i).len() && have_ji == self.src.hom(i, j).len()
                } else {
                    (!need_ij || have_ij > 0) && (!need_ji || have_ji > 0)
                }
            });
            if !ok {
                continue;
            }
            self.obj[i] = c;
            self.used_obj[c] = true;
            let done = self.objects(i + 1);
            self.used_obj[c] = false;
            self.obj[i] = UNSET;
            if done {
                return true;
            }
        }
        false
    }

    fn morphisms(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            self.out.push(FinFunctor { obj: self.obj.clone(), mor: self.mor.clone() });
            return self.stop_at_first;
        }
        let f = self.order[i];
        if self.mor[f] != UNSET {
            return self.morphisms(i + 1);
        }
        let (s, t) = (self.obj[self.src.src(f)], self.obj[self.src.tgt(f)]);
        let cands: Vec<usize> = self.tgt.hom(s, t).to_vec();
        for v in cands {
            let mark = self.trail.len();
            if self.assign(f, v) && self.morphisms(i + 1) {
                self.undo(mark);
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// All functors `src -> tgt`, sorted by `(object map, morphism map)`.
pub fn functors(src: &FinCat, tgt: &FinCat) -> Vec<FinFunctor> {
    let mut s = FunctorSearch::new(src, tgt, false, false);
    s.objects(0);
    let mut out = s.out;
    out.sort();
    out
}

/// An isomorphism `c -> d` if one exists.
pub fn cat_iso(c: &FinCat, d: &FinCat) -> Option<FinFunctor> {
    if c.n_objects() != d.n_objects() || c.n_morphisms() != d.n_morphisms() {
        return None;
    }
    let mut s = FunctorSearch::new(c, d, true, true);
    s.objects(0);
    s.out.into_iter().next()
}

/// A functor category together with the functors and transformations its
/// objects and morphisms stand for.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: FinCat,
    pub functors: Vec<FinFunctor>,
    /// Components of each natural transformation, indexed by source objects.
    pub transformations: Vec<Vec<usize>>,
    functor_index: HashMap<FinFunctor, usize>,
    transformation_index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl FunctorCategory {
    pub fn functor_id(&self, f: &FinFunctor) -> Option<usize> {
        self.functor_index.get(f).copied()
    }

    pub fn transformation_id(&self, from: usize, to: usize, components: &[usize]) -> Option<usize> {
        self.transformation_index.get(&(from, to, components.to_vec())).copied()
    }
}

/// Natural transformations `f => g` between functors `c -> d`.
pub fn natural_transformations(c: &FinCat, d: &FinCat, f: &FinFunctor, g: &FinFunctor) -> Vec<Vec<usize>> {
    let n = c.n_objects();
    let mut out = Vec::new();
    let mut comps = Vec::with_capacity(n);
    fn go(
        c: &FinCat,
        d: &FinCat,
        f: &FinFunctor,
        g: &FinFunctor,
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = comps.len();
        if i == c.n_objects() {
            out.push(comps.clone());
            return;
        }
        for &a in d.hom(f.obj[i], g.obj[i]) {
            comps.push(a);
            // naturality squares whose endpoints are both assigned
            let ok = c.morphisms().iter().enumerate().all(|(m, mm)| {
                if mm.src > i || mm.tgt > i {
                    return true;
                }
                let lhs = d.compose(f.mor[m], comps[mm.tgt]);
                let rhs = d.compose(comps[mm.src], g.mor[m]);
                lhs.is_some() && lhs == rhs
            });
            if ok {
                go(c, d, f, g, comps, out);
            }
            comps.pop();
        }
    }
    go(c, d, f, g, &mut comps, &mut out);
    out
}

/// The functor category `[c, d]`: functors as objects, natural transformations
/// as morphisms, vertical composition.
pub fn functor_category(c: &FinCat, d: &FinCat) -> FunctorCategory {
    let fs = functors(c, d);
    let labels: Vec<String> = {
        let base: Vec<String> = fs
            .iter()
            .map(|f| {
                let parts: Vec<&str> = f.obj.iter().map(|&o| d.object_label(o)).collect();
                format!("<{}>", parts.join(","))
            })
            .collect();
        let mut counts: BTreeMap<&String, usize> = BTreeMap::new();
        for b in &base {
            *counts.entry(b).or_default() += 1;
        }
        base.iter()
            .enumerate()
            .map(|(i, b)| if counts[b] > 1 { format!("{b}#{i}") } else { b.clone() })
            .collect()
    };
    let mut morphisms = Vec::new();
    let mut transformations = Vec::new();
    let mut transformation_index = HashMap::new();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in fs.iter().enumerate() {
            for comps in natural_transformations(c, d, f, g) {
                let id = morphisms.len();
                let parts: Vec<&str> = comps.iter().map(|&a| d.morphism(a).label.as_str()).collect();
                morphisms.push(Morphism { label: format!("[{}]", parts.join(",")), src: i, tgt: j });
                transformation_index.insert((i, j, comps.clone()), id);
                by_pair.entry((i, j)).or_default().push(id);
                transformations.push(comps);
            }
        }
    }
    let identities: Vec<usize> = fs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let comps: Vec<usize> = f.obj.iter().map(|&o| d.identity(o)).collect();
            transformation_index[&(i, i, comps)]
        })
        .collect();
    let mut comp = HashMap::new();
    for (a, ta) in transformations.iter().enumerate() {
        let (i, j) = (morphisms[a].src, morphisms[a].tgt);
        for k in 0..fs.len() {
            for &b in by_pair.get(&(j, k)).map(Vec::as_slice).unwrap_or(&[]) {
                let tb = &transformations[b];
                let comps: Vec<usize> = ta.iter().zip(tb).map(|(&x, &y)| d.compose(x, y).unwrap()).collect();
                comp.insert((a, b), transformation_index[&(i, k, comps)]);
            }
        }
    }
    let functor_index = fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    FunctorCategory {
        cat: FinCat::from_parts(labels, morphisms, identities, comp),
        functors: fs,
        transformations,
        functor_index,
        transformation_index,
    }
}

pub fn functor_cat(c: &FinCat, d: &FinCat) -> FinCat {
    functor_category(c, d).cat
}

#[derive(Serialize, Deserialize)]
struct CatJson {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composition: Vec<[usize; 3]>,
}

impl Serialize for FinCat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CatJson {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            composition: self.composition_table().into_iter().map(|(f, g, h)| [f, g, h]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinCat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CatJson::deserialize(d)?;
        let comp: Vec<_> = j.composition.iter().map(|t| (t[0], t[1], t[2])).collect();
        FinCat::new(j.objects, j.morphisms, j.identities, &comp).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{max_chain_poset, ordinal_poset, FinPoset};

    fn arrow() -> FinCat {
        from_poset(&ordinal_poset(1))
    }

    /// Two objects with two parallel arrows.
    fn parallel_pair() -> FinCat {
        let m = |l: &str, s, t| Morphism { label: l.into(), src: s, tgt: t };
        FinCat::new(
            vec!["a".into(), "b".into()],
            vec![m("id_a", 0, 0), m("id_b", 1, 1), m("u", 0, 1), m("v", 0, 1)],
            vec![0, 1],
            &[(0, 0, 0), (1, 1, 1), (0, 2, 2), (0, 3, 3), (2, 1, 2), (3, 1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn from_poset_examples() {
        let t = from_poset(&ordinal_poset(0));
        assert_eq!((t.n_objects(), t.n_morphisms()), (1, 1));
        let a = arrow();
        assert_eq!((a.n_objects(), a.n_morphisms()), (2, 3));
        let m = from_poset(&max_chain_poset(2, 1));
        assert_eq!(m.n_objects(), 3);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn product_examples() {
        let a = arrow();
        assert!(cat_iso(&product_cat(&FinCat::terminal(), &a), &a).is_some());
        let sq = product_cat(&a, &a);
        assert_eq!(sq.n_morphisms(), 9);
        assert!(sq.validate().is_ok());
        let cube = product_cat(&sq, &a);
        assert_eq!(cube.n_morphisms(), 27);
        let (empty, _) = product_all(&[]);
        assert_eq!((empty.n_objects(), empty.n_morphisms()), (1, 1));
    }

    #[test]
    fn functor_cat_examples() {
        let a = arrow();
        let d = parallel_pair();
        assert!(cat_iso(&functor_cat(&FinCat::terminal(), &d), &d).is_some());
        let fa = functor_cat(&a, &a);
        assert_eq!(fa.n_objects(), 3);
        assert!(fa.is_posetal());
        assert!(fa.validate().is_ok());
        let p = to_poset(&fa).unwrap();
        assert!(p.iso(&ordinal_poset(2)).is_some());
        let disc = functor_cat(&a, &FinCat::discrete(2));
        assert_eq!((disc.n_objects(), disc.n_morphisms()), (2, 2));
    }

    #[test]
    fn functor_enumeration_counts() {
        // functors [1] -> [2] are monotone maps: 6
        assert_eq!(functors(&arrow(), &from_poset(&ordinal_poset(2))).len(), 6);
        // functors [1] -> parallel pair: constants (2) plus u and v
        assert_eq!(functors(&arrow(), &parallel_pair()).len(), 4);
        for f in functors(&parallel_pair(), &parallel_pair()) {
            f.validate(&parallel_pair(), &parallel_pair()).unwrap();
        }
    }

    #[test]
    fn pi0_examples() {
        assert_eq!(pi0(&FinCat::discrete(4)).1, 4);
        assert_eq!(pi0(&arrow()).1, 1);
        assert_eq!(pi0(&from_poset(&max_chain_poset(2, 2))).1, 1);
        let two = FinPoset::new(vec!["x".into(), "y".into(), "z".into()], &[(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
        assert_eq!(pi0(&from_poset(&two)), (vec![0, 0, 1], 2));
    }

    #[test]
    fn opposite_examples() {
        let a = arrow();
        assert_eq!(opposite(&opposite(&a)), a);
        let rev = from_poset(&ordinal_poset(1).dual());
        assert!(cat_iso(&opposite(&a), &rev).is_some());
        let sq = product_cat(&a, &a);
        assert!(cat_iso(&opposite(&sq), &sq).is_some());
        assert!(opposite(&parallel_pair()).validate().is_ok());
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let m = |l: &str, s, t| Morphism { label: l.into(), src: s, tgt: t };
        let objs = vec!["a".to_string(), "b".to_string()];
        let mors = vec![m("id_a", 0, 0), m("id_b", 1, 1), m("f", 0, 1)];
        // missing (id_a, f)
        assert!(matches!(
            FinCat::new(objs.clone(), mors.clone(), vec![0, 1], &[(0, 0, 0), (1, 1, 1), (2, 1, 2)]),
            Err(CatError::MissingComposite(0, 2))
        ));
        // wrong unit
        let err = FinCat::new(
            objs.clone(),
            vec![m("id_a", 0, 0), m("id_b", 1, 1), m("f", 0, 1), m("g", 0, 1)],
            vec![0, 1],
            &[(0, 0, 0), (1, 1, 1), (0, 2, 3), (0, 3, 3), (2, 1, 2), (3, 1, 3)],
        );
        assert!(matches!(err, Err(CatError::Unit(2))));
        // spurious composite
        assert!(matches!(
            FinCat::new(objs.clone(), mors.clone(), vec![0, 1], &[(0, 0, 0), (1, 1, 1), (0, 2, 2), (2, 1, 2), (2, 2, 2)]),
            Err(CatError::SpuriousComposite(2, 2))
        ));
        // non-associative monoid on one object: e, x with x;x = e but table broken
        let one = vec!["*".to_string()];
        let mm = vec![m("e", 0, 0), m("x", 0, 0), m("y", 0, 0)];
        let err = FinCat::new(
            one,
            mm,
            vec![0],
            &[
                (0, 0, 0),
                (0, 1, 1),
                (1, 0, 1),
                (0, 2, 2),
                (2, 0, 2),
                (1, 1, 2),
                (1, 2, 0),
                (2, 1, 1),
                (2, 2, 2),
            ],
        );
        assert!(matches!(err, Err(CatError::Associativity(..))));
    }

    #[test]
    fn json_roundtrip_validates() {
        let c = parallel_pair();
        let s = serde_json::to_string(&c).unwrap();
        let back: FinCat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v["composition"].as_array_mut().unwrap().pop();
        assert!(serde_json::from_value::<FinCat>(v).is_err());
    }
}
