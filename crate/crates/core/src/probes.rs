//! The default probe family and the Segal decomposition of free linear 2-categories.

use std::fmt;
use std::str::FromStr;

use crate::fincat::{from_poset, product_cat, FinCat};
use crate::mates::pos_twocat;
use crate::poset::ordinal_poset;
use crate::theta2::Theta2Obj;
use crate::twocat::{
    corrupt_cocone, cotensor, free_linear, realize, verify_colimit, CatGraph, Cocone, ColimitReport, Corruption,
    Diagram, DiagramArrow, Probe, SearchOptions, TwoCat, TwoFunctor, VerifyError,
};

/// Realizations with at most two objects of length one, the 1-cotensor of `C₂`, and
/// the poset-enriched 2-category on `[0]` and `[1]`.
pub fn default_probes() -> Vec<Probe> {
    let mut out: Vec<Probe> = Theta2Obj::bounded(2, 1)
        .into_iter()
        .map(|o| Probe { name: o.to_string(), cat: realize(&o) })
        .collect();
    out.push(Probe { name: "[1](1)^[1]".into(), cat: cotensor(&realize(&Theta2Obj::two_cell()), 1) });
    out.push(Probe { name: "Pos{[0],[1]}".into(), cat: pos_twocat(&[ordinal_poset(0), ordinal_poset(1)]) });
    out
}

/// One entry of a `--probes` list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeSpec {
    Default,
    Realize(Theta2Obj),
    Cotensor(Theta2Obj, usize),
}

impl FromStr for ProbeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "default" {
            return Ok(ProbeSpec::Default);
        }
        if let Some((obj, n)) = s.rsplit_once('^') {
            let obj = obj.parse::<Theta2Obj>().map_err(|e| e.to_string())?;
            let n = n.trim().parse::<usize>().map_err(|e| format!("bad cotensor exponent: {e}"))?;
            return Ok(ProbeSpec::Cotensor(obj, n));
        }
        s.parse::<Theta2Obj>().map(ProbeSpec::Realize).map_err(|e| e.to_string())
    }
}

/// Parses `default`, `[2](1,0)` or `[1](1)^1` entries separated by `;`.
pub fn parse_probes(s: &str) -> Result<Vec<Probe>, String> {
    let mut out = Vec::new();
    for part in s.split(';').filter(|p| !p.trim().is_empty()) {
        match part.parse::<ProbeSpec>()? {
            ProbeSpec::Default => out.extend(default_probes()),
            ProbeSpec::Realize(o) => out.push(Probe { name: o.to_string(), cat: realize(&o) }),
            ProbeSpec::Cotensor(o, n) => out.push(Probe { name: format!("{o}^[{n}]"), cat: cotensor(&realize(&o), n) }),
        }
    }
    if out.is_empty() {
        return Err("empty probe list".into());
    }
    Ok(out)
}

/// Edge labels for Segal decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Point,
    Arrow,
    Square,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 3] = [EdgeLabel::Point, EdgeLabel::Arrow, EdgeLabel::Square];

    pub fn category(self) -> FinCat {
        let arrow = from_poset(&ordinal_poset(1));
        match self {
            EdgeLabel::Point => FinCat::terminal(),
            EdgeLabel::Arrow => arrow,
            EdgeLabel::Square => product_cat(&arrow, &arrow),
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::Point => "[0]",
            EdgeLabel::Arrow => "[1]",
            EdgeLabel::Square => "[1]x[1]",
        })
    }
}

/// All label words of length `1..=max_len`, shortest first.
pub fn label_words(max_len: usize) -> Vec<Vec<EdgeLabel>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<EdgeLabel>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| EdgeLabel::ALL.iter().map(move |&l| [w.clone(), vec![l]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `[n](C_1, ..., C_n)` as the gluing of the one-edge pieces `[1](C_i)` along their shared endpoints.
pub fn segal_diagram(names: &[String], labels: &[FinCat]) -> (Diagram, Cocone) {
    let n = labels.len();
    let apex = free_linear(&CatGraph { labels: labels.to_vec() });
    let point = free_linear(&CatGraph { labels: vec![] });
    let mut vertices = Vec::new();
    let mut legs = Vec::new();
    for i in 1..n {
        vertices.push((format!("vertex {i}"), point.clone()));
        legs.push(TwoFunctor { obj: vec![i], one: vec![apex.id1(i)], two: vec![apex.id2(apex.id1(i))] });
    }
    let sources = vertices.len();
    for (i, label) in labels.iter().enumerate() {
        let piece = free_linear(&CatGraph { labels: vec![label.clone()] });
        let leg = edge_leg(&piece, &apex, i).expect("edge inclusion is a 2-functor");
        vertices.push((format!("[1]({})", names[i]), piece));
        legs.push(leg);
    }
    let mut arrows = Vec::new();
    for i in 1..n {
        let endpoint = |sink: usize, obj: usize| {
            let c = &vertices[sources + sink].1;
            TwoFunctor { obj: vec![obj], one: vec![c.id1(obj)], two: vec![c.id2(c.id1(obj))] }
        };
        arrows.push(DiagramArrow { src: i - 1, tgt: sources + i - 1, functor: endpoint(i - 1, 1) });
        arrows.push(DiagramArrow { src: i - 1, tgt: sources + i, functor: endpoint(i, 0) });
    }
    (Diagram { vertices, arrows }, Cocone { apex, legs })
}

/// Inclusion of `[1](C_i)` as the edge `i -> i+1`; local indices agree on both sides.
fn edge_leg(piece: &TwoCat, apex: &TwoCat, i: usize) -> Result<TwoFunctor, crate::twocat::TwoCatError> {
    let obj = vec![i, i + 1];
    let one = (0..piece.n_one_cells())
        .map(|f| {
            let c = piece.one_cell(f);
            apex.one_id(obj[c.src], obj[c.tgt], c.local)
        })
        .collect();
    let two = (0..piece.n_two_cells())
        .map(|a| {
            let c = piece.two_cell(a);
            apex.two_id(obj[c.src], obj[c.tgt], c.local)
        })
        .collect();
    let f = TwoFunctor { obj, one, two };
    f.validate(piece, apex)?;
    Ok(f)
}

pub fn check_segal(
    labels: &[EdgeLabel],
    probes: &[Probe],
    opts: &SearchOptions,
    corrupt: Option<Corruption>,
) -> Result<ColimitReport, VerifyError> {
    let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    let cats: Vec<FinCat> = labels.iter().map(|l| l.category()).collect();
    let (d, c) = segal_diagram(&names, &cats);
    let c = match corrupt {
        Some(how) => corrupt_cocone(&c, how),
        None => c,
    };
    verify_colimit(&d, &c, probes, opts)
}

/// Segal decomposition of `realize(obj)`.
pub fn check_segal_obj(
    obj: &Theta2Obj,
    probes: &[Probe],
    opts: &SearchOptions,
    corrupt: Option<Corruption>,
) -> Result<ColimitReport, VerifyError> {
    let names: Vec<String> = obj.ns().iter().map(|n| format!("[{n}]")).collect();
    let cats: Vec<FinCat> = obj.ns().iter().map(|&n| from_poset(&ordinal_poset(n))).collect();
    let (d, c) = segal_diagram(&names, &cats);
    let c = match corrupt {
        Some(how) => corrupt_cocone(&c, how),
        None => c,
    };
    verify_colimit(&d, &c, probes, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_family_is_posetal() {
        let ps = default_probes();
        assert_eq!(ps.len(), 9);
        for p in &ps {
            assert!(p.cat.is_posetal(), "{}", p.name);
            assert!(p.cat.validate().is_ok(), "{}", p.name);
        }
    }

    #[test]
    fn parse_probe_lists() {
        assert_eq!(parse_probes("default").unwrap().len(), 9);
        let ps = parse_probes("[1](0); [1](1)^1").unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[1].cat.n_objects(), 2);
        assert!(parse_probes("").is_err());
        assert!(parse_probes("[1](x)").is_err());
    }

    #[test]
    fn word_counts() {
        assert_eq!(label_words(3).len(), 39);
        assert_eq!(label_words(1).len(), 3);
    }

    #[test]
    fn two_edges_glue() {
        let probes: Vec<Probe> = default_probes().into_iter().take(4).collect();
        let r = check_segal(&[EdgeLabel::Arrow, EdgeLabel::Square], &probes, &SearchOptions::default(), None).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        let bad = check_segal(
            &[EdgeLabel::Arrow, EdgeLabel::Arrow],
            &probes,
            &SearchOptions::default(),
            Some(Corruption::ExtraObject),
        )
        .unwrap();
        assert!(!bad.passed());
        assert!(bad.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn realization_decomposes() {
        let probes: Vec<Probe> = default_probes().into_iter().take(5).collect();
        let r = check_segal_obj(&"[2](1,0)".parse().unwrap(), &probes, &SearchOptions::default(), None).unwrap();
        assert!(r.passed());
    }
}
