//! Finite posets, lattice paths and the shuffle posets `MaxCh([k] x [m])`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),
    #[error("relation pair ({0}, {1}) refers to a missing element")]
    OutOfRange(usize, usize),
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive on ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("path endpoints do not match: {0:?} vs {1:?}")]
    EndpointMismatch((usize, usize), (usize, usize)),
    #[error("invalid path step `{0}` (expected H or V)")]
    BadStep(char),
}

/// Which end of a shuffle poset the all-H path sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShuffleOrientation {
    /// `HV <= VH`: H-first paths are smaller, the all-H-then-all-V path is least.
    HFirstLeast,
    /// The dual convention.
    VFirstLeast,
}

/// Orientation used by every shuffle poset in the crate. The comparison
/// functors (`nu` in particular) are only monotone for `HFirstLeast`.
pub const SHUFFLE_ORIENTATION: ShuffleOrientation = ShuffleOrientation::HFirstLeast;

/// A finite poset on elements `0..len()`, with a label per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl FinPoset {
    /// Builds a poset from labels and the full `<=` relation. The relation must
    /// already be reflexive, antisymmetric and transitive.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(l.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::OutOfRange(a, b));
            }
            leq[a * n + b] = true;
        }
        let p = FinPoset { labels, leq };
        p.validate()?;
        Ok(p)
    }

    /// Builds a poset from a generating relation by reflexive-transitive closure.
    /// Fails if the closure is not antisymmetric.
    pub fn from_generators(labels: Vec<String>, gens: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in gens {
            if a >= n || b >= n {
                return Err(PosetError::OutOfRange(a, b));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let pairs: Vec<_> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| leq[a * n + b])
            .collect();
        FinPoset::new(labels, &pairs)
    }

    pub(crate) fn from_fn(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = le(a, b);
            }
        }
        FinPoset { labels, leq }
    }

    pub fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(PosetError::NotReflexive(a));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(PosetError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// All pairs `(a, b)` with `a <= b`, reflexive pairs included.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.leq_pairs().into_iter().filter(|(a, b)| a != b).collect()
    }

    /// Cover relations `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)))
            .collect()
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.leq(a, b)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.leq(b, a)))
    }

    pub fn dual(&self) -> FinPoset {
        FinPoset::from_fn(self.labels.clone(), |a, b| self.leq(b, a))
    }

    /// Looks for an order isomorphism `self -> other`; returns the element map.
    /// The first isomorphism in lexicographic order of images is returned.
    pub fn iso(&self, other: &FinPoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &FinPoset, a: usize| {
            let up = (0..p.len()).filter(|&b| p.leq(a, b)).count();
            let down = (0..p.len()).filter(|&b| p.leq(b, a)).count();
            (up, down)
        };
        let mine: Vec<_> = (0..n).map(|a| sig(self, a)).collect();
        let theirs: Vec<_> = (0..n).map(|a| sig(other, a)).collect();
        let mut a_sorted = mine.clone();
        let mut b_sorted = theirs.clone();
        a_sorted.sort_unstable();
        b_sorted.sort_unstable();
        if a_sorted != b_sorted {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            p: &FinPoset,
            q: &FinPoset,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            mine: &[(usize, usize)],
            theirs: &[(usize, usize)],
        ) -> bool {
            if i == p.len() {
                return true;
            }
            for c in 0..q.len() {
                if used[c] || mine[i] != theirs[c] {
                    continue;
                }
                let ok = (0..i).all(|j| p.leq(j, i) == q.leq(map[j], c) && p.leq(i, j) == q.leq(c, map[j]));
                if !ok {
                    continue;
                }
                map[i] = c;
                used[c] = true;
                if go(p, q, i + 1, map, used, mine, theirs) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        if go(self, other, 0, &mut map, &mut used, &mine, &theirs) {
            Some(map)
        } else {
            None
        }
    }

    /// Whether `f` (an element map `self -> other`) is monotone.
    pub fn is_monotone_map(&self, other: &FinPoset, f: &[usize]) -> bool {
        self.leq_pairs().iter().all(|&(a, b)| other.leq(f[a], f[b]))
    }

    /// All monotone maps `self -> other`, in lexicographic order.
    pub fn monotone_maps(&self, other: &FinPoset) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn go(p: &FinPoset, q: &FinPoset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let i = cur.len();
            if i == p.len() {
                out.push(cur.clone());
                return;
            }
            for c in 0..q.len() {
                if (0..i).all(|j| (!p.leq(j, i) || q.leq(cur[j], c)) && (!p.leq(i, j) || q.leq(c, cur[j]))) {
                    cur.push(c);
                    go(p, q, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, other, &mut cur, &mut out);
        out
    }
}

/// One representative of each isomorphism class of posets with `n` elements.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    let strict: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut reps: Vec<FinPoset> = Vec::new();
    for mask in 0u64..(1 << strict.len()) {
        let rel = |a: usize, b: usize| a == b || strict.iter().position(|&p| p == (a, b)).is_some_and(|i| mask >> i & 1 == 1);
        let p = FinPoset::from_fn(labels.clone(), rel);
        if p.validate().is_ok() && reps.iter().all(|q| q.iso(&p).is_none()) {
            reps.push(p);
        }
    }
    reps
}

/// The linear order `[n] = {0 < 1 < ... < n}`.
pub fn ordinal_poset(n: usize) -> FinPoset {
    interval_poset(0, n as i64)
}

/// The chain `{i < i+1 < ... < j}`, empty when `i > j`.
pub fn interval_poset(i: i64, j: i64) -> FinPoset {
    if i > j {
        return FinPoset::from_fn(Vec::new(), |_, _| false);
    }
    let labels = (i..=j).map(|x| x.to_string()).collect();
    FinPoset::from_fn(labels, |a, b| a <= b)
}

/// Product poset with the componentwise order. Element `(a, b)` has index
/// `a * q.len() + b`.
pub fn product(p: &FinPoset, q: &FinPoset) -> FinPoset {
    let m = q.len();
    let labels = (0..p.len())
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", p.label(a), q.label(b)))
        .collect();
    FinPoset::from_fn(labels, |x, y| p.leq(x / m, y / m) && q.leq(x % m, y % m))
}

/// A step of a lattice path: `H` moves the first coordinate, `V` the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    H,
    V,
}

/// A monotone lattice path in a grid, starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    start: (usize, usize),
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: (usize, usize), steps: Vec<Step>) -> Self {
        LatticePath { start, steps }
    }

    pub fn from_origin(steps: Vec<Step>) -> Self {
        LatticePath::new((0, 0), steps)
    }

    pub fn empty_at(start: (usize, usize)) -> Self {
        LatticePath::new(start, Vec::new())
    }

    pub fn start(&self) -> (usize, usize) {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn h_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::H).count()
    }

    pub fn v_count(&self) -> usize {
        self.steps.len() - self.h_count()
    }

    pub fn end(&self) -> (usize, usize) {
        (self.start.0 + self.h_count(), self.start.1 + self.v_count())
    }

    /// Every grid point visited, endpoints included.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut cur = self.start;
        let mut out = vec![cur];
        for s in &self.steps {
            match s {
                Step::H => cur.0 += 1,
                Step::V => cur.1 += 1,
            }
            out.push(cur);
        }
        out
    }

    pub fn passes_through(&self, pt: (usize, usize)) -> bool {
        self.points().contains(&pt)
    }

    /// Second coordinate at which each H step is taken, in order.
    pub fn h_step_columns(&self) -> Vec<usize> {
        let mut col = self.start.1;
        let mut out = Vec::with_capacity(self.h_count());
        for s in &self.steps {
            match s {
                Step::H => out.push(col),
                Step::V => col += 1,
            }
        }
        out
    }

    /// The same steps read as a path from the origin.
    pub fn shape(&self) -> LatticePath {
        LatticePath::from_origin(self.steps.clone())
    }

    /// Transposed path: H and V exchanged, coordinates swapped.
    pub fn transpose(&self) -> LatticePath {
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                Step::H => Step::V,
                Step::V => Step::H,
            })
            .collect();
        LatticePath::new((self.start.1, self.start.0), steps)
    }

    pub fn step_string(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::H => 'H',
                Step::V => 'V',
            })
            .collect()
    }

    /// Shuffle-order comparison of two paths with the same endpoints.
    pub fn shuffle_leq(&self, other: &LatticePath) -> bool {
        // Dominance: prefix V-counts of the smaller path never exceed the larger's.
        let (lo, hi) = match SHUFFLE_ORIENTATION {
            ShuffleOrientation::HFirstLeast => (self, other),
            ShuffleOrientation::VFirstLeast => (other, self),
        };
        let mut a = 0usize;
        let mut b = 0usize;
        for (x, y) in lo.steps.iter().zip(&hi.steps) {
            if *x == Step::V {
                a += 1;
            }
            if *y == Step::V {
                b += 1;
            }
            if a > b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.step_string())
    }
}

impl FromStr for LatticePath {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'H' | 'h' => Ok(Step::H),
                'V' | 'v' => Ok(Step::V),
                other => Err(PosetError::BadStep(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(LatticePath::from_origin(steps))
    }
}

/// Concatenation of a path ending where the second one starts.
pub fn concat_paths(p: &LatticePath, q: &LatticePath) -> Result<LatticePath, PosetError> {
    if p.end() != q.start() {
        return Err(PosetError::EndpointMismatch(p.end(), q.start()));
    }
    let mut steps = p.steps.clone();
    steps.extend_from_slice(&q.steps);
    Ok(LatticePath::new(p.start, steps))
}

/// All paths from the origin with `k` H-steps and `m` V-steps, in
/// lexicographic order of step sequences (`H < V`).
pub fn shuffles(k: usize, m: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + m);
    fn go(h: usize, v: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if h == 0 && v == 0 {
            out.push(LatticePath::from_origin(cur.clone()));
            return;
        }
        if h > 0 {
            cur.push(Step::H);
            go(h - 1, v, cur, out);
            cur.pop();
        }
        if v > 0 {
            cur.push(Step::V);
            go(h, v - 1, cur, out);
            cur.pop();
        }
    }
    go(k, m, &mut cur, &mut out);
    out
}

/// The shuffle poset `MaxCh([k] x [m])` together with its paths.
#[derive(Debug, Clone)]
pub struct MaxChain {
    pub k: usize,
    pub m: usize,
    pub paths: Vec<LatticePath>,
    pub poset: FinPoset,
    index: HashMap<Vec<Step>, usize>,
}

impl MaxChain {
    pub fn new(k: usize, m: usize) -> Self {
        let paths = shuffles(k, m);
        let labels = paths.iter().map(|p| p.step_string()).collect();
        let poset = FinPoset::from_fn(labels, |a, b| paths[a].shuffle_leq(&paths[b]));
        let index = paths.iter().enumerate().map(|(i, p)| (p.steps.clone(), i)).collect();
        MaxChain { k, m, paths, poset, index }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Index of a path with these steps, if it has the right shape.
    pub fn index_of(&self, steps: &[Step]) -> Option<usize> {
        self.index.get(steps).copied()
    }
}

/// `MaxCh([k] x [m])` as a poset, elements labelled by `HV` step strings.
pub fn max_chain_poset(k: usize, m: usize) -> FinPoset {
    MaxChain::new(k, m).poset
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    leq: Vec<[usize; 2]>,
}

impl Serialize for FinPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PosetJson {
            elements: self.labels.clone(),
            leq: self.leq_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PosetJson::deserialize(d)?;
        let pairs: Vec<_> = j.leq.iter().map(|p| (p[0], p[1])).collect();
        FinPoset::new(j.elements, &pairs).map_err(serde::de::Error::custom)
    }
}
