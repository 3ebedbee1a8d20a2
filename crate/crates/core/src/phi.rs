//! `Φ(I, [m]) = [k]([n_1] x [m], ..., [n_k] x [m])`, the comparison maps out of
//! `gray(I, [m])` and into the cotensor, and the pushout square relating them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fincat::{from_poset, product_cat, FinCat, FinFunctor};
use crate::gray::{gray_colax_mor_cells, GrayProduct};
use crate::poset::ordinal_poset;
use crate::probes::segal_diagram;
use crate::theta2::{tau, tau_mor, DeltaMor, Theta2Mor, Theta2Obj};
use crate::twocat::{
    coproduct_twocat, corrupt_cocone, cotensor_data, cotensor_eval, discrete_twocat, locally_pi0, free_linear, iso_two_cats, product_twocat, realize,
    verify_colimit, CatGraph, Cocone, ColimitReport, Corruption, Cotensor, Diagram, DiagramArrow, Probe,
    SearchError, SearchOptions, TwoCat, TwoFunctor, VerifyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSpec {
    pub obj: Theta2Obj,
    pub m: usize,
}

fn edge_label(n: usize, m: usize) -> FinCat {
    product_cat(&from_poset(&ordinal_poset(n)), &from_poset(&ordinal_poset(m)))
}

pub fn phi_obj(obj: &Theta2Obj, m: usize) -> TwoCat {
    free_linear(&CatGraph { labels: obj.ns().iter().map(|&n| edge_label(n, m)).collect() })
}

/// `(cell, column)` pairs of 1-cell `local` of `Φ(obj, m).hom(i, j)`.
pub fn phi_digits(obj: &Theta2Obj, m: usize, i: usize, j: usize, mut local: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0); j - i];
    for t in (0..j - i).rev() {
        let r = (obj.n(i + 1 + t) + 1) * (m + 1);
        let d = local % r;
        out[t] = (d / (m + 1), d % (m + 1));
        local /= r;
    }
    out
}

pub fn phi_encode(obj: &Theta2Obj, m: usize, i: usize, digits: &[(usize, usize)]) -> usize {
    digits
        .iter()
        .enumerate()
        .fold(0, |acc, (t, &(c, col))| acc * (obj.n(i + 1 + t) + 1) * (m + 1) + c * (m + 1) + col)
}

/// Object and 1-cell maps of `phi_mor(f, mu)`.
pub fn phi_mor_cells(f: &Theta2Mor, mu: &DeltaMor, src: &TwoCat) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (f.src(), f.tgt());
    let (m, m2) = (mu.src(), mu.tgt());
    let phi = f.phi();
    let obj: Vec<usize> = (0..=a.k()).map(|i| phi.apply(i)).collect();
    let tgt_sizes = hom_offsets(b, m2);
    let one = (0..src.n_one_cells())
        .map(|g| {
            let c = src.one_cell(g);
            let d = phi_digits(a, m, c.src, c.tgt, c.local);
            let (p, q) = (phi.apply(c.src), phi.apply(c.tgt));
            // each target edge copies the column of the source edge above it
            let image: Vec<(usize, usize)> = (p + 1..=q)
                .map(|t| {
                    let r = f.preimage(t).expect("preimage");
                    let (cell, col) = d[r - c.src - 1];
                    (f.psi(r, t).expect("component").apply(cell), mu.apply(col))
                })
                .collect();
            tgt_sizes[p * (b.k() + 1) + q] + phi_encode(b, m2, p, &image)
        })
        .collect();
    (obj, one)
}

/// Global id offsets of the 1-cells of each hom of `phi_obj(obj, m)`.
fn hom_offsets(obj: &Theta2Obj, m: usize) -> Vec<usize> {
    let n = obj.k() + 1;
    let mut out = vec![0; n * n];
    let mut acc = 0;
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = acc;
            if i <= j {
                acc += (i + 1..=j).map(|s| (obj.n(s) + 1) * (m + 1)).product::<usize>();
            }
        }
    }
    out
}

pub fn phi_mor(f: &Theta2Mor, mu: &DeltaMor) -> TwoFunctor {
    let src = phi_obj(f.src(), mu.src());
    let tgt = phi_obj(f.tgt(), mu.tgt());
    let (obj, one) = phi_mor_cells(f, mu, &src);
    TwoFunctor::from_one_cell_map(&src, &tgt, obj, one).expect("Φ is functorial")
}

/// Object and 1-cell maps of `nu`: a cell keeps its I-part and records the column of each I-step.
pub fn nu_cells(g: &GrayProduct, m: usize) -> (Vec<usize>, Vec<usize>) {
    let obj = &g.left;
    let offsets = hom_offsets(obj, m);
    let objs = (0..g.cat.n_objects()).map(|x| g.coords(x).0).collect();
    let one = (0..g.cat.n_one_cells())
        .map(|c| {
            let cell = g.decode(c);
            let cols = cell.path.h_step_columns();
            let digits: Vec<(usize, usize)> = cell.icell.iter().copied().zip(cols).collect();
            offsets[cell.from.0 * (obj.k() + 1) + cell.to.0] + phi_encode(obj, m, cell.from.0, &digits)
        })
        .collect();
    (objs, one)
}

/// `gray(I, [m]) -> Φ(I, [m])`.
pub fn nu(obj: &Theta2Obj, m: usize) -> (GrayProduct, TwoCat, TwoFunctor) {
    let g = GrayProduct::new(obj, &tau(m, 0));
    let target = phi_obj(obj, m);
    let (o, one) = nu_cells(&g, m);
    let f = TwoFunctor::from_one_cell_map(&g.cat, &target, o, one).expect("nu is a 2-functor");
    (g, target, f)
}

/// The functor between poset categories determined by an object map.
fn poset_functor(src: &FinCat, tgt: &FinCat, obj: Vec<usize>) -> FinFunctor {
    let mor = src
        .morphisms()
        .iter()
        .map(|f| *tgt.hom(obj[f.src], obj[f.tgt]).first().expect("monotone object map"))
        .collect();
    FinFunctor { obj, mor }
}

/// `realize(I) -> Φ(I, [m])^[m]`: a cell goes to the path `t -> (cell, t)` in its hom.
pub fn eta_prime(obj: &Theta2Obj, m: usize) -> (Cotensor, TwoFunctor) {
    let src = realize(obj);
    let phi = phi_obj(obj, m);
    let data = cotensor_data(&phi, m);
    let shape = from_poset(&ordinal_poset(m));
    let one = (0..src.n_one_cells())
        .map(|f| {
            let c = src.one_cell(f);
            let digits = crate::twocat::realize_digits(obj, c.src, c.tgt, c.local);
            let objs: Vec<usize> = (0..=m)
                .map(|t| {
                    let d: Vec<(usize, usize)> = digits.iter().map(|&x| (x, t)).collect();
                    phi_encode(obj, m, c.src, &d)
                })
                .collect();
            let func = poset_functor(&shape, phi.hom(c.src, c.tgt), objs);
            data.one_cell_of(c.src, c.tgt, &func).expect("diagonal path is a functor")
        })
        .collect();
    let f = TwoFunctor::from_one_cell_map(&src, &data.cat, (0..=obj.k()).collect(), one).expect("eta' is a 2-functor");
    (data, f)
}

/// `eta'` followed by evaluation at 0 equals the comparison `realize(I) = Φ(I, [0]) -> Φ(I, [m])`.
pub fn eta_prime_restricts(obj: &Theta2Obj, m: usize) -> bool {
    let (_, eta) = eta_prime(obj, m);
    let eval = cotensor_eval(&phi_obj(obj, m), m, 0);
    let lhs = eta.then(&eval);
    let r = realize(obj);
    let p0 = phi_obj(obj, 0);
    let Ok(iso) = TwoFunctor::from_local_map(&r, &p0, (0..=obj.k()).collect(), |_, _, l| l) else {
        return false;
    };
    let rhs = iso.then(&phi_mor(&Theta2Mor::identity(obj), &DeltaMor::constant(0, m, 0)));
    lhs == rhs
}

/// The square `ι₀I x [m] -> gray(I, [m])`, `ι₀I x [m] -> ι₀I` with apex `Φ(I, [m])`.
pub fn odot_diagram(obj: &Theta2Obj, m: usize) -> (Diagram, Cocone) {
    let k = obj.k();
    let (g, phi, nu_f) = nu(obj, m);
    let labels: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
    let points = discrete_twocat(labels);
    let strip = product_twocat(&points, &realize(&tau(m, 0)));
    let into_gray =
        TwoFunctor::from_local_map(&strip, &g.cat, (0..strip.n_objects()).collect(), |_, _, _| 0).expect("V-paths");
    let collapse =
        TwoFunctor::from_local_map(&strip, &points, (0..strip.n_objects()).map(|x| x / (m + 1)).collect(), |_, _, _| 0)
            .expect("collapse");
    let inc = TwoFunctor::from_local_map(&points, &phi, (0..=k).collect(), |_, _, _| 0).expect("object inclusion");
    let diagram = Diagram {
        vertices: vec![
            ("ob(I) x [m]".into(), strip),
            (format!("gray({obj}, [{m}])"), g.cat.clone()),
            ("ob(I)".into(), points),
        ],
        arrows: vec![
            DiagramArrow { src: 0, tgt: 1, functor: into_gray.clone() },
            DiagramArrow { src: 0, tgt: 2, functor: collapse },
        ],
    };
    let legs = vec![into_gray.then(&nu_f), nu_f, inc];
    (diagram, Cocone { apex: phi, legs })
}

pub fn check_odot_pushout(
    obj: &Theta2Obj,
    m: usize,
    probes: &[Probe],
    opts: &SearchOptions,
    corrupt: Option<Corruption>,
) -> Result<ColimitReport, VerifyError> {
    let (d, c) = odot_diagram(obj, m);
    verify_colimit(&d, &maybe_corrupt(c, corrupt), probes, opts)
}

/// `Φ(I, [m])` glued from `Φ([1](n_s), [m])` along its objects.
pub fn check_phi_outer_cosegal(
    obj: &Theta2Obj,
    m: usize,
    probes: &[Probe],
    opts: &SearchOptions,
    corrupt: Option<Corruption>,
) -> Result<ColimitReport, VerifyError> {
    let names: Vec<String> = obj.ns().iter().map(|n| format!("[{n}]x[{m}]")).collect();
    let labels: Vec<FinCat> = obj.ns().iter().map(|&n| edge_label(n, m)).collect();
    let (d, c) = segal_diagram(&names, &labels);
    verify_colimit(&d, &maybe_corrupt(c, corrupt), probes, opts)
}

/// `[1](C) -> [1](D)` induced by a functor `C -> D`.
fn suspend(src: &TwoCat, tgt: &TwoCat, f: &FinFunctor) -> TwoFunctor {
    let mut one = Vec::with_capacity(src.n_one_cells());
    for x in 0..src.n_one_cells() {
        let c = src.one_cell(x);
        one.push(if c.src == c.tgt { tgt.id1(c.src) } else { tgt.one_id(0, 1, f.obj[c.local]) });
    }
    let mut two = Vec::with_capacity(src.n_two_cells());
    for a in 0..src.n_two_cells() {
        let c = src.two_cell(a);
        two.push(if c.src == c.tgt { tgt.id2(tgt.id1(c.src)) } else { tgt.two_id(0, 1, f.mor[c.local]) });
    }
    TwoFunctor { obj: vec![0, 1], one, two }
}

/// `Φ([1](n), [m])` glued from `n` copies of `Φ([1](1), [m])` along `Φ([1](0), [m])`.
pub fn phi_inner_cosegal_diagram(n: usize, m: usize) -> (Diagram, Cocone) {
    let one_edge = |c: FinCat| free_linear(&CatGraph { labels: vec![c] });
    let (whole_c, piece_c, joint_c) = (edge_label(n, m), edge_label(1, m), edge_label(0, m));
    let (whole, piece, joint) = (one_edge(whole_c.clone()), one_edge(piece_c.clone()), one_edge(joint_c.clone()));
    let mut vertices = Vec::new();
    let mut legs = Vec::new();
    for t in 1..n {
        vertices.push((format!("[1]([0]x[{m}]) at {t}"), joint.clone()));
        let f = poset_functor(&joint_c, &whole_c, (0..=m).map(|col| t * (m + 1) + col).collect());
        legs.push(suspend(&joint, &whole, &f));
    }
    let sources = vertices.len();
    for t in 1..=n {
        vertices.push((format!("[1]([1]x[{m}]) at {t}"), piece.clone()));
        let obj = (0..2 * (m + 1)).map(|x| (t - 1 + x / (m + 1)) * (m + 1) + x % (m + 1)).collect();
        legs.push(suspend(&piece, &whole, &poset_functor(&piece_c, &whole_c, obj)));
    }
    let mut arrows = Vec::new();
    for t in 1..n {
        let end = |e: usize| suspend(&joint, &piece, &poset_functor(&joint_c, &piece_c, (0..=m).map(|c| e * (m + 1) + c).collect()));
        arrows.push(DiagramArrow { src: t - 1, tgt: sources + t - 1, functor: end(1) });
        arrows.push(DiagramArrow { src: t - 1, tgt: sources + t, functor: end(0) });
    }
    (Diagram { vertices, arrows }, Cocone { apex: whole, legs })
}

pub fn check_phi_inner_cosegal(
    n: usize,
    m: usize,
    probes: &[Probe],
    opts: &SearchOptions,
    corrupt: Option<Corruption>,
) -> Result<ColimitReport, VerifyError> {
    let (d, c) = phi_inner_cosegal_diagram(n, m);
    verify_colimit(&d, &maybe_corrupt(c, corrupt), probes, opts)
}

fn maybe_corrupt(c: Cocone, how: Option<Corruption>) -> Cocone {
    match how {
        Some(h) => corrupt_cocone(&c, h),
        None => c,
    }
}

/// Outcome of an exhaustive naturality sweep for `nu`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub functors_validated: usize,
    pub squares_checked: u64,
    pub failures: Vec<String>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Validates `nu(I, m)` and its naturality in every `(F, mu)` within the bounds.
pub fn check_nu_naturality(max_k: usize, max_n: usize, max_m: usize) -> NaturalityReport {
    let objs = Theta2Obj::bounded(max_k, max_n);
    let keys: Vec<(usize, usize)> = (0..objs.len()).flat_map(|i| (0..=max_m).map(move |m| (i, m))).collect();
    struct Entry {
        g: GrayProduct,
        phi: TwoCat,
        nu: (Vec<usize>, Vec<usize>),
        ok: Result<(), String>,
    }
    let entries: Vec<Entry> = keys
        .par_iter()
        .map(|&(i, m)| {
            let g = GrayProduct::new(&objs[i], &tau(m, 0));
            let phi = phi_obj(&objs[i], m);
            let nu = nu_cells(&g, m);
            let ok = TwoFunctor::from_one_cell_map(&g.cat, &phi, nu.0.clone(), nu.1.clone())
                .map(|_| ())
                .map_err(|e| format!("nu({}, {m}) is not a 2-functor: {e}", objs[i]));
            Entry { g, phi, nu, ok }
        })
        .collect();
    let at = |i: usize, m: usize| &entries[i * (max_m + 1) + m];
    let mut report = NaturalityReport { functors_validated: entries.len(), ..Default::default() };
    report.failures.extend(entries.iter().filter_map(|e| e.ok.clone().err()));
    let jobs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|a| (0..objs.len()).map(move |b| (a, b))).collect();
    let results: Vec<(u64, Vec<String>)> = jobs
        .par_iter()
        .map(|&(a, b)| {
            let mut n = 0u64;
            let mut fails = Vec::new();
            let fs = Theta2Mor::all(&objs[a], &objs[b]);
            for m in 0..=max_m {
                for m2 in 0..=max_m {
                    let (src, tgt) = (at(a, m), at(b, m2));
                    for mu in DeltaMor::all(m, m2) {
                        let g_mor = tau_mor(&mu, &DeltaMor::identity(0));
                        for f in &fs {
                            n += 1;
                            let (gobj, gone) = gray_colax_mor_cells(&src.g, &tgt.g, f, &g_mor);
                            let (pobj, pone) = phi_mor_cells(f, &mu, &src.phi);
                            let obj_ok = (0..gobj.len()).all(|x| tgt.nu.0[gobj[x]] == pobj[src.nu.0[x]]);
                            let one_ok = (0..gone.len()).all(|c| tgt.nu.1[gone[c]] == pone[src.nu.1[c]]);
                            if !(obj_ok && one_ok) && fails.len() < 5 {
                                fails.push(format!(
                                    "naturality square fails for F: {} -> {} (phi {:?}), mu {:?}",
                                    objs[a],
                                    objs[b],
                                    f.phi().values(),
                                    mu.values()
                                ));
                            }
                        }
                    }
                }
            }
            (n, fails)
        })
        .collect();
    for (n, f) in results {
        report.squares_checked += n;
        report.failures.extend(f);
    }
    report
}

/// Generator identifications and the restriction property of `eta'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiEqReport {
    pub arrow_is_two_cell: bool,
    pub two_cell_is_square: bool,
    pub eta_restricts: Vec<(String, usize, bool)>,
    pub eta_picks_generators: bool,
    pub witness: Option<String>,
}

impl PhiEqReport {
    pub fn passed(&self) -> bool {
        self.arrow_is_two_cell
            && self.two_cell_is_square
            && self.eta_picks_generators
            && self.eta_restricts.iter().all(|r| r.2)
    }
}

fn damage(x: TwoCat, how: Option<Corruption>) -> TwoCat {
    match how {
        None => x,
        Some(Corruption::ExtraObject) => coproduct_twocat(&x, &discrete_twocat(vec!["*".into()])).0,
        Some(Corruption::Collapse2Cells) => locally_pi0(&x).0,
    }
}

/// `corrupt` damages the Φ side of the two generator comparisons.
pub fn check_phieq(budget: u64, corrupt: Option<Corruption>) -> Result<PhiEqReport, SearchError> {
    let mut witness = None;
    let mut compare = |name: &str, lhs: TwoCat, rhs: TwoCat, rname: &str| -> Result<bool, SearchError> {
        let ok = iso_two_cats(&lhs, &rhs, budget)?.is_some();
        if !ok && witness.is_none() {
            witness = Some(format!(
                "{name} has (objects, 1-cells, 2-cells) = {:?} but {rname} has {:?}",
                lhs.counts(),
                rhs.counts()
            ));
        }
        Ok(ok)
    };
    let arrow_is_two_cell = compare(
        "Φ([1](0), [1])",
        damage(phi_obj(&Theta2Obj::arrow(), 1), corrupt),
        realize(&Theta2Obj::two_cell()),
        "[1](1)",
    )?;
    let square = free_linear(&CatGraph { labels: vec![edge_label(1, 1)] });
    let two_cell_is_square =
        compare("Φ([1](1), [1])", damage(phi_obj(&Theta2Obj::two_cell(), 1), corrupt), square, "[1]([1]x[1])")?;
    let mut eta_restricts = Vec::new();
    for obj in Theta2Obj::bounded(2, 1) {
        for m in 0..=1 {
            eta_restricts.push((obj.to_string(), m, eta_prime_restricts(&obj, m)));
        }
    }
    // the generating 1-cell lands on a non-constant path, i.e. a non-identity 2-cell of Φ
    let eta_picks_generators = [Theta2Obj::arrow(), Theta2Obj::two_cell()].iter().all(|obj| {
        let (data, eta) = eta_prime(obj, 1);
        let top = realize(obj).one_cells_between(0, 1).last().expect("nonempty hom");
        let f = data.functor_of(eta.one[top]);
        f.obj[0] != f.obj[1]
    });
    if witness.is_none() {
        if let Some((o, m, _)) = eta_restricts.iter().find(|r| !r.2) {
            witness = Some(format!("eta' at ({o}, {m}) does not restrict to the vertex-0 comparison"));
        }
    }
    Ok(PhiEqReport { arrow_is_two_cell, two_cell_is_square, eta_restricts, eta_picks_generators, witness })
}
