//! Objects `[k](n1,...,nk)` and morphisms of Θ₂, with inert/active classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("map is not monotone or leaves its target range")]
    NotMonotone,
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("inner maps are indexed by {expected:?}, got {got:?}")]
    WrongIndexSet { expected: Vec<(usize, usize)>, got: Vec<(usize, usize)> },
    #[error("inner map ({0},{1}) has the wrong source or target")]
    InnerShape(usize, usize),
    #[error("cannot compose: target {0} does not match source {1}")]
    Mismatch(String, String),
    #[error("cannot parse '{0}' as [k](n1,...,nk)")]
    Parse(String),
}

/// A monotone map `[src] -> [tgt]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMor {
    src: usize,
    tgt: usize,
    values: Vec<usize>,
}

impl DeltaMor {
    pub fn new(src: usize, tgt: usize, values: Vec<usize>) -> Result<Self, ThetaError> {
        if values.len() != src + 1 {
            return Err(ThetaError::WrongLength { expected: src + 1, got: values.len() });
        }
        if values.iter().any(|&v| v > tgt) || values.windows(2).any(|w| w[0] > w[1]) {
            return Err(ThetaError::NotMonotone);
        }
        Ok(DeltaMor { src, tgt, values })
    }

    pub fn identity(n: usize) -> Self {
        DeltaMor { src: n, tgt: n, values: (0..=n).collect() }
    }

    /// Constant map `[src] -> [tgt]` with value `v`.
    pub fn constant(src: usize, tgt: usize, v: usize) -> Self {
        assert!(v <= tgt);
        DeltaMor { src, tgt, values: vec![v; src + 1] }
    }

    /// Inclusion of the subinterval `[start, start+src]` of `[tgt]`.
    pub fn shift(src: usize, tgt: usize, start: usize) -> Self {
        assert!(start + src <= tgt);
        DeltaMor { src, tgt, values: (start..=start + src).collect() }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `g ∘ f`.
    pub fn compose(g: &DeltaMor, f: &DeltaMor) -> Result<DeltaMor, ThetaError> {
        if f.tgt != g.src {
            return Err(ThetaError::Mismatch(format!("[{}]", f.tgt), format!("[{}]", g.src)));
        }
        Ok(DeltaMor { src: f.src, tgt: g.tgt, values: f.values.iter().map(|&v| g.values[v]).collect() })
    }

    pub fn is_inert(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == self.values[0] + i)
    }

    pub fn is_active(&self) -> bool {
        self.values[0] == 0 && self.values[self.src] == self.tgt
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.is_inert() && self.values[0] == 0
    }

    /// All monotone maps `[m] -> [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<DeltaMor> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<DeltaMor>) {
            if cur.len() == m + 1 {
                out.push(DeltaMor { src: m, tgt: n, values: cur.clone() });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                go(m, n, v, cur, out);
                cur.pop();
            }
        }
        go(m, n, 0, &mut cur, &mut out);
        out
    }

    /// `(active, inert)` with `self = inert ∘ active`.
    pub fn factorize(&self) -> (DeltaMor, DeltaMor) {
        let lo = self.values[0];
        let hi = self.values[self.src];
        let active = DeltaMor { src: self.src, tgt: hi - lo, values: self.values.iter().map(|&v| v - lo).collect() };
        (active, DeltaMor::shift(hi - lo, self.tgt, lo))
    }
}

impl fmt::Display for DeltaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]->[{}]:({})", self.src, self.tgt, parts.join(","))
    }
}

/// The object `[k](n1,...,nk)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theta2Obj {
    ns: Vec<usize>,
}

impl Theta2Obj {
    pub fn new(ns: Vec<usize>) -> Self {
        Theta2Obj { ns }
    }

    /// `C₀ = [0]()`
    pub fn point() -> Self {
        Theta2Obj { ns: vec![] }
    }

    /// `C₁ = [1](0)`
    pub fn arrow() -> Self {
        Theta2Obj { ns: vec![0] }
    }

    /// `C₂ = [1](1)`
    pub fn two_cell() -> Self {
        Theta2Obj { ns: vec![1] }
    }

    pub fn k(&self) -> usize {
        self.ns.len()
    }

    pub fn ns(&self) -> &[usize] {
        &self.ns
    }

    /// Inner ordinal `n_i`, 1-based.
    pub fn n(&self, i: usize) -> usize {
        self.ns[i - 1]
    }

    /// Every inner ordinal is `[0]`, i.e. the object is a 1-category.
    pub fn is_one_categorical(&self) -> bool {
        self.ns.iter().all(|&n| n == 0)
    }

    /// All objects with `k <= max_k` and every `n_i <= max_n`, ordered by `k` then lexicographically.
    pub fn bounded(max_k: usize, max_n: usize) -> Vec<Theta2Obj> {
        let mut out = Vec::new();
        for k in 0..=max_k {
            let total = (max_n + 1).pow(k as u32);
            for x in 0..total {
                let mut ns = vec![0; k];
                let mut y = x;
                for slot in ns.iter_mut().rev() {
                    *slot = y % (max_n + 1);
                    y /= max_n + 1;
                }
                out.push(Theta2Obj { ns });
            }
        }
        out
    }
}

impl fmt::Display for Theta2Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ns.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]({})", self.ns.len(), parts.join(","))
    }
}

impl FromStr for Theta2Obj {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ThetaError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = t.strip_prefix('[').ok_or_else(err)?;
        let close = rest.find(']').ok_or_else(err)?;
        let k: usize = rest[..close].parse().map_err(|_| err())?;
        let tail = &rest[close + 1..];
        let ns: Vec<usize> = if tail.is_empty() && k == 0 {
            vec![]
        } else {
            let inner = tail.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(err)?;
            if inner.is_empty() {
                vec![]
            } else {
                inner.split(',').map(|p| p.parse::<usize>().map_err(|_| err())).collect::<Result<_, _>>()?
            }
        };
        if ns.len() != k {
            return Err(err());
        }
        Ok(Theta2Obj { ns })
    }
}

impl Serialize for Theta2Obj {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Theta2Obj {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inert/active flags; identities carry both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub inert: bool,
    pub active: bool,
}

/// A morphism `(φ, ψ)` of Θ₂. Indices of `ψ` are 1-based `(i, j)` with `φ(i-1) < j <= φ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theta2Mor {
    src: Theta2Obj,
    tgt: Theta2Obj,
    phi: DeltaMor,
    psis: BTreeMap<(usize, usize), DeltaMor>,
}

fn index_set(phi: &DeltaMor) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=phi.src() {
        for j in phi.apply(i - 1) + 1..=phi.apply(i) {
            out.push((i, j));
        }
    }
    out
}

impl Theta2Mor {
    pub fn new(
        src: Theta2Obj,
        tgt: Theta2Obj,
        phi: DeltaMor,
        psis: BTreeMap<(usize, usize), DeltaMor>,
    ) -> Result<Self, ThetaError> {
        if phi.src() != src.k() || phi.tgt() != tgt.k() {
            return Err(ThetaError::Mismatch(format!("{src} -> {tgt}"), phi.to_string()));
        }
        let expected = index_set(&phi);
        let got: Vec<_> = psis.keys().copied().collect();
        if expected != got {
            return Err(ThetaError::WrongIndexSet { expected, got });
        }
        for (&(i, j), psi) in &psis {
            if psi.src() != src.n(i) || psi.tgt() != tgt.n(j) {
                return Err(ThetaError::InnerShape(i, j));
            }
        }
        Ok(Theta2Mor { src, tgt, phi, psis })
    }

    pub fn identity(obj: &Theta2Obj) -> Self {
        let psis = (1..=obj.k()).map(|i| ((i, i), DeltaMor::identity(obj.n(i)))).collect();
        Theta2Mor { src: obj.clone(), tgt: obj.clone(), phi: DeltaMor::identity(obj.k()), psis }
    }

    pub fn src(&self) -> &Theta2Obj {
        &self.src
    }

    pub fn tgt(&self) -> &Theta2Obj {
        &self.tgt
    }

    pub fn phi(&self) -> &DeltaMor {
        &self.phi
    }

    pub fn psis(&self) -> &BTreeMap<(usize, usize), DeltaMor> {
        &self.psis
    }

    pub fn psi(&self, i: usize, j: usize) -> Option<&DeltaMor> {
        self.psis.get(&(i, j))
    }

    /// The unique source index `i` whose outer interval covers target index `j`.
    pub fn preimage(&self, j: usize) -> Option<usize> {
        (1..=self.src.k()).find(|&i| self.phi.apply(i - 1) < j && j <= self.phi.apply(i))
    }

    /// `g ∘ f`.
    pub fn compose(g: &Theta2Mor, f: &Theta2Mor) -> Result<Theta2Mor, ThetaError> {
        if f.tgt != g.src {
            return Err(ThetaError::Mismatch(f.tgt.to_string(), g.src.to_string()));
        }
        let phi = DeltaMor::compose(&g.phi, &f.phi)?;
        let mut psis = BTreeMap::new();
        for (i, t) in index_set(&phi) {
            let j = g.preimage(t).expect("outer composite covers t");
            let inner = DeltaMor::compose(&g.psis[&(j, t)], &f.psis[&(i, j)])?;
            psis.insert((i, t), inner);
        }
        Ok(Theta2Mor { src: f.src.clone(), tgt: g.tgt.clone(), phi, psis })
    }

    pub fn is_inert(&self) -> bool {
        self.phi.is_inert() && self.psis.values().all(DeltaMor::is_inert)
    }

    pub fn is_active(&self) -> bool {
        self.phi.is_active() && self.psis.values().all(DeltaMor::is_active)
    }

    pub fn classify(&self) -> Classification {
        Classification { inert: self.is_inert(), active: self.is_active() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Theta2Mor::identity(&self.src)
    }

    /// `(active, inert)` with `self = inert ∘ active`.
    pub fn factorize_inert_active(&self) -> (Theta2Mor, Theta2Mor) {
        let lo = self.phi.apply(0);
        let hi = self.phi.apply(self.src.k());
        let mid_ns: Vec<usize> = (lo + 1..=hi)
            .map(|j| {
                let i = self.preimage(j).unwrap();
                let psi = &self.psis[&(i, j)];
                psi.apply(psi.src()) - psi.apply(0)
            })
            .collect();
        let mid = Theta2Obj::new(mid_ns);
        let mut a_psis = BTreeMap::new();
        let mut in_psis = BTreeMap::new();
        for (&(i, j), psi) in &self.psis {
            let (a, inert) = psi.factorize();
            a_psis.insert((i, j - lo), a);
            in_psis.insert((j - lo, j), inert);
        }
        let (a_phi, in_phi) = self.phi.factorize();
        let active = Theta2Mor { src: self.src.clone(), tgt: mid.clone(), phi: a_phi, psis: a_psis };
        let inert = Theta2Mor { src: mid, tgt: self.tgt.clone(), phi: in_phi, psis: in_psis };
        (active, inert)
    }

    /// All morphisms `src -> tgt`, ordered by `φ` then the `ψ` family.
    pub fn all(src: &Theta2Obj, tgt: &Theta2Obj) -> Vec<Theta2Mor> {
        Theta2Mor::all_filtered(src, tgt, |_| true)
    }

    pub fn all_inert(src: &Theta2Obj, tgt: &Theta2Obj) -> Vec<Theta2Mor> {
        Theta2Mor::all_filtered(src, tgt, DeltaMor::is_inert)
    }

    pub fn all_active(src: &Theta2Obj, tgt: &Theta2Obj) -> Vec<Theta2Mor> {
        Theta2Mor::all_filtered(src, tgt, DeltaMor::is_active)
    }

    fn all_filtered(src: &Theta2Obj, tgt: &Theta2Obj, keep: impl Fn(&DeltaMor) -> bool) -> Vec<Theta2Mor> {
        let mut out = Vec::new();
        for phi in DeltaMor::all(src.k(), tgt.k()).into_iter().filter(&keep) {
            let idx = index_set(&phi);
            let choices: Vec<Vec<DeltaMor>> = idx
                .iter()
                .map(|&(i, j)| DeltaMor::all(src.n(i), tgt.n(j)).into_iter().filter(&keep).collect())
                .collect();
            let mut pick = vec![0usize; idx.len()];
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            loop {
                let psis = idx.iter().zip(&pick).zip(&choices).map(|((&ij, &p), c)| (ij, c[p].clone())).collect();
                out.push(Theta2Mor { src: src.clone(), tgt: tgt.clone(), phi: phi.clone(), psis });
                let mut pos = idx.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    pick[pos] += 1;
                    if pick[pos] < choices[pos].len() {
                        break;
                    }
                    pick[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if idx.is_empty() || pos == usize::MAX {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Display for Theta2Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} phi={:?}", self.src, self.tgt, self.phi.values())?;
        for ((i, j), psi) in &self.psis {
            write!(f, " psi{i}{j}={:?}", psi.values())?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MorJson {
    source: Theta2Obj,
    target: Theta2Obj,
    phi: Vec<usize>,
    psis: BTreeMap<String, Vec<usize>>,
}

impl Serialize for Theta2Mor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MorJson {
            source: self.src.clone(),
            target: self.tgt.clone(),
            phi: self.phi.values.clone(),
            psis: self.psis.iter().map(|(&(i, j), p)| (format!("{i},{j}"), p.values.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Theta2Mor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = MorJson::deserialize(d)?;
        let phi = DeltaMor::new(j.source.k(), j.target.k(), j.phi).map_err(D::Error::custom)?;
        let mut psis = BTreeMap::new();
        for (key, vals) in j.psis {
            let (a, b) = key.split_once(',').ok_or_else(|| D::Error::custom(format!("bad psi key {key}")))?;
            let i: usize = a.trim().parse().map_err(D::Error::custom)?;
            let jj: usize = b.trim().parse().map_err(D::Error::custom)?;
            if i == 0 || i > j.source.k() || jj == 0 || jj > j.target.k() {
                return Err(D::Error::custom(format!("psi index {key} out of range")));
            }
            let psi = DeltaMor::new(j.source.n(i), j.target.n(jj), vals).map_err(D::Error::custom)?;
            psis.insert((i, jj), psi);
        }
        Theta2Mor::new(j.source, j.target, phi, psis).map_err(D::Error::custom)
    }
}

/// `[k](n,...,n)`
pub fn tau(k: usize, n: usize) -> Theta2Obj {
    Theta2Obj::new(vec![n; k])
}

/// The morphism `τ(outer, inner)`: every inner component equals `inner`.
pub fn tau_mor(outer: &DeltaMor, inner: &DeltaMor) -> Theta2Mor {
    let src = tau(outer.src(), inner.src());
    let tgt = tau(outer.tgt(), inner.tgt());
    let psis = index_set(outer).into_iter().map(|ij| (ij, inner.clone())).collect();
    Theta2Mor { src, tgt, phi: outer.clone(), psis }
}

/// The same object together with the order-reversing bijection `c ↦ n_i - c` on each inner ordinal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoOpData {
    pub obj: Theta2Obj,
    pub reversals: Vec<Vec<usize>>,
}

pub fn two_op_obj(obj: &Theta2Obj) -> TwoOpData {
    TwoOpData { obj: obj.clone(), reversals: obj.ns().iter().map(|&n| (0..=n).rev().collect()).collect() }
}

/// `[k](n_1,...,n_k) ↦ [k](n_k,...,n_1)`
pub fn one_op_obj(obj: &Theta2Obj) -> Theta2Obj {
    Theta2Obj::new(obj.ns().iter().rev().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(s: &str) -> Theta2Obj {
        s.parse().unwrap()
    }

    #[test]
    fn notation_roundtrip() {
        for s in ["[0]()", "[1](0)", "[1](1)", "[2](1,0)", "[3](2,0,1)"] {
            assert_eq!(obj(s).to_string(), s);
        }
        assert_eq!(obj(" [2] ( 1 , 0 ) "), Theta2Obj::new(vec![1, 0]));
        assert_eq!(obj("[0]"), Theta2Obj::point());
        assert!("[2](1)".parse::<Theta2Obj>().is_err());
        assert!("[1](x)".parse::<Theta2Obj>().is_err());
        assert!("2(1,0)".parse::<Theta2Obj>().is_err());
    }

    #[test]
    fn delta_basics() {
        assert_eq!(DeltaMor::all(1, 2).len(), 6);
        assert_eq!(DeltaMor::all(2, 2).len(), 10);
        assert!(DeltaMor::new(1, 1, vec![1, 0]).is_err());
        let d0 = DeltaMor::new(0, 1, vec![1]).unwrap();
        let d1 = DeltaMor::new(0, 1, vec![0]).unwrap();
        assert!(d0.is_inert() && d1.is_inert());
        assert!(!d0.is_active());
        let s = DeltaMor::new(2, 1, vec![0, 0, 1]).unwrap();
        assert!(s.is_active() && !s.is_inert());
        for f in DeltaMor::all(2, 3) {
            let (a, i) = f.factorize();
            assert!(a.is_active() && i.is_inert());
            assert_eq!(DeltaMor::compose(&i, &a).unwrap(), f);
        }
    }

    #[test]
    fn classify_examples() {
        let id = Theta2Mor::identity(&obj("[2](1,0)"));
        assert_eq!(id.classify(), Classification { inert: true, active: true });
        // d0 lifted to C₀ -> C₁
        let d0 = Theta2Mor::new(
            Theta2Obj::point(),
            Theta2Obj::arrow(),
            DeltaMor::new(0, 1, vec![1]).unwrap(),
            BTreeMap::new(),
        )
        .unwrap();
        assert!(d0.is_inert() && !d0.is_active());
        // surjection [2] -> [1] on [2](0,0) -> [1](0)
        let mut psis = BTreeMap::new();
        psis.insert((2, 1), DeltaMor::identity(0));
        let s = Theta2Mor::new(obj("[2](0,0)"), obj("[1](0)"), DeltaMor::new(2, 1, vec![0, 0, 1]).unwrap(), psis)
            .unwrap();
        assert!(s.is_active() && !s.is_inert());
    }

    #[test]
    fn index_set_is_enforced() {
        let mut psis = BTreeMap::new();
        psis.insert((1, 1), DeltaMor::identity(0));
        let phi = DeltaMor::new(1, 1, vec![0, 1]).unwrap();
        assert!(Theta2Mor::new(obj("[1](0)"), obj("[1](0)"), phi.clone(), psis.clone()).is_ok());
        psis.insert((1, 2), DeltaMor::identity(0));
        assert!(matches!(
            Theta2Mor::new(obj("[1](0)"), obj("[1](0)"), phi.clone(), psis),
            Err(ThetaError::WrongIndexSet { .. })
        ));
        let mut bad = BTreeMap::new();
        bad.insert((1, 1), DeltaMor::identity(1));
        assert!(matches!(Theta2Mor::new(obj("[1](0)"), obj("[1](0)"), phi, bad), Err(ThetaError::InnerShape(1, 1))));
    }

    #[test]
    fn factorization_examples() {
        let a = obj("[1](1)");
        let b = obj("[2](1,2)");
        for f in Theta2Mor::all(&a, &b) {
            let (act, ine) = f.factorize_inert_active();
            assert!(act.is_active(), "{f}");
            assert!(ine.is_inert(), "{f}");
            assert_eq!(Theta2Mor::compose(&ine, &act).unwrap(), f);
            if f.is_inert() {
                assert!(act.is_identity());
                assert_eq!(ine, f);
            }
            if f.is_active() {
                assert!(ine.is_identity());
                assert_eq!(act, f);
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(1, 0), Theta2Obj::arrow());
        assert_eq!(tau(1, 1), Theta2Obj::two_cell());
        let a1 = DeltaMor::new(1, 2, vec![0, 2]).unwrap();
        let a2 = DeltaMor::new(2, 2, vec![0, 1, 1]).unwrap();
        let b1 = DeltaMor::new(1, 1, vec![1, 1]).unwrap();
        let b2 = DeltaMor::new(1, 2, vec![0, 2]).unwrap();
        let lhs = tau_mor(&DeltaMor::compose(&a2, &a1).unwrap(), &DeltaMor::compose(&b2, &b1).unwrap());
        let rhs = Theta2Mor::compose(&tau_mor(&a2, &b2), &tau_mor(&a1, &b1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn duals() {
        assert_eq!(two_op_obj(&Theta2Obj::two_cell()).reversals, vec![vec![1, 0]]);
        assert_eq!(two_op_obj(&Theta2Obj::arrow()).reversals, vec![vec![0]]);
        assert_eq!(two_op_obj(&obj("[2](1,2)")).obj, obj("[2](1,2)"));
        assert_eq!(one_op_obj(&obj("[2](1,0)")), obj("[2](0,1)"));
        assert_eq!(one_op_obj(&one_op_obj(&obj("[3](2,0,1)"))), obj("[3](2,0,1)"));
        assert_eq!(one_op_obj(&Theta2Obj::two_cell()), Theta2Obj::two_cell());
    }

    #[test]
    fn bounded_universe_size() {
        assert_eq!(Theta2Obj::bounded(3, 2).len(), 40);
        assert_eq!(Theta2Obj::bounded(2, 1).len(), 7);
    }

    #[test]
    fn json_roundtrip() {
        let f = Theta2Mor::all(&obj("[1](1)"), &obj("[2](1,2)")).into_iter().find(|f| f.phi().values() == [0, 2]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"psis\":{\"1,1\""));
        let back: Theta2Mor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let bad = s.replace("\"phi\":[0,2]", "\"phi\":[2,0]");
        assert!(serde_json::from_str::<Theta2Mor>(&bad).is_err());
    }
}
