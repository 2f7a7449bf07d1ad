//! The homotopy 2-categories of quasicategories and of complete Segal
//! spaces: hom-categories are fundamental categories of exponentials, and
//! 2-cells are classes of their edges.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bisset::{
    box_product_in, determining_bidegrees, exponential_bisset, for_each_bimap, is_dk_equivalence,
    product as biproduct, tau1_bisset, BiSSetMap, Dir, DkFailure, TruncBiSSet, Window,
};
use crate::error::{Error, Result};
use crate::fincat::{is_isomorphic, product_category, FinCat, Functor};
use crate::sset::{
    exponential, for_each_map, product, standard_simplex, tau1, vertex_sequences, SSetMap,
    TruncSSet,
};
use crate::totalize::build_upper;
use crate::Verdict;

/// Which 2-category a hom-category lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Qcat,
    Css,
}

/// Maps and edges are stored as tables of cell images, one row per level
/// (simplicial side) or per bidegree slot of the window of total degree 2
/// (bisimplicial side).
type Levels = Vec<Vec<u32>>;

#[derive(Clone, Debug)]
struct Edges {
    /// Each edge as a map `shape × X → Y`.
    maps: Vec<Levels>,
    index: HashMap<Levels, u32>,
    /// Carrier morphism named by each edge.
    morphism: Vec<usize>,
    /// Cells of the shape (`Δ¹`, `Δ¹ ⊠ Δ⁰` or `Δ⁰ ⊠ Δ¹`) per row.
    shape_counts: Vec<usize>,
}

/// A hom-category `τ₁⟨X, Y⟩`: objects are the maps `X → Y`, morphisms are
/// classes of homotopies.
#[derive(Clone, Debug)]
pub struct HomCat2 {
    pub side: Side,
    pub carrier: FinCat,
    /// Every map `X → Y`, in the order of the exponential's vertices.
    pub maps: Vec<Levels>,
    /// Carrier object of each map.
    pub object: Vec<usize>,
    /// Window the exponential was computed on.
    pub window: String,
    map_of_object: Vec<usize>,
    map_index: HashMap<Levels, usize>,
    edges: Vec<Edges>,
    // per carrier morphism: path of (edge kind, edge, traversed backwards)
    reps: Vec<Vec<(usize, u32, bool)>>,
    source_counts: Vec<usize>,
    target_counts: Vec<usize>,
}

impl HomCat2 {
    /// Index in `maps` of the map with the given cell images.
    pub fn map_index(&self, levels: &[Vec<u32>]) -> Option<usize> {
        self.map_index.get(levels).copied()
    }

    /// Carrier object of the identity, for an endo-hom-category.
    pub fn identity_map(&self) -> Levels {
        self.source_counts.iter().map(|&n| (0..n as u32).collect()).collect()
    }

    pub fn map_of_object(&self, o: usize) -> usize {
        self.map_of_object[o]
    }

    /// Whether maps `a` and `b` are isomorphic objects of the carrier,
    /// with an isomorphism `a → b` when they are.
    pub fn isomorphism(&self, a: usize, b: usize) -> Option<usize> {
        let c = &self.carrier;
        c.hom(self.object[a], self.object[b])
            .iter()
            .copied()
            .find(|&m| c.inverse(m).is_some())
    }

    fn new(
        side: Side,
        carrier: FinCat,
        maps: Vec<Levels>,
        object: Vec<usize>,
        window: String,
        edges: Vec<Edges>,
        reps: Vec<Vec<(usize, u32, bool)>>,
        source_counts: Vec<usize>,
        target_counts: Vec<usize>,
    ) -> HomCat2 {
        let mut map_of_object = vec![0; carrier.num_objects()];
        for (i, &o) in object.iter().enumerate() {
            map_of_object[o] = i;
        }
        let map_index = maps.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        HomCat2 {
            side,
            carrier,
            maps,
            object,
            window,
            map_of_object,
            map_index,
            edges,
            reps,
            source_counts,
            target_counts,
        }
    }
}

/// The simplicial set at level 2, the level every hom-category works at.
fn at_level2(x: &TruncSSet) -> Result<TruncSSet> {
    if x.dim() >= 2 {
        Ok(x.truncate(2))
    } else {
        x.resize(2)
    }
}

fn on_total2(x: &TruncBiSSet) -> Result<TruncBiSSet> {
    x.rewindow(Window::total2())
}

fn sorted_maps(source: &TruncSSet, target: &TruncSSet) -> Result<Vec<Levels>> {
    let mut out = Vec::new();
    for_each_map(source, target, &mut |levels| {
        out.push(levels.to_vec());
        true
    })?;
    out.sort();
    Ok(out)
}

/// Bisimplicial maps in the order of the exponential's cells: by their
/// images at the bidegrees that determine maps into `target`.
fn sorted_bimaps(source: &TruncBiSSet, target: &TruncBiSSet) -> Result<Vec<Levels>> {
    let w = Window::total2();
    let det = determining_bidegrees(target, w);
    let mut out: Vec<(Vec<u32>, Levels)> = Vec::new();
    for_each_bimap(source, target, &mut |levels| {
        let key = det.iter().flat_map(|&(k, l)| levels[w.slot(k, l)].iter().copied()).collect();
        out.push((key, levels.to_vec()));
        true
    })?;
    out.sort();
    Ok(out.into_iter().map(|(_, l)| l).collect())
}

fn edges_from(maps: Vec<Levels>, morphism: Vec<usize>, shape_counts: Vec<usize>) -> Edges {
    let index = maps.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
    Edges {
        maps,
        index,
        morphism,
        shape_counts,
    }
}

fn mismatch(what: &str) -> Error {
    Error::NotWellDefined(format!("{what} do not match the cells of the exponential"))
}

/// `τ₁⟨X, Y⟩` for quasicategories, from the exponential at level 2.
pub fn hom_category_qcat(x: &TruncSSet, y: &TruncSSet) -> Result<HomCat2> {
    let (xw, yw) = (at_level2(x)?, at_level2(y)?);
    if !yw.is_coskeletal() {
        return Err(Error::Uncertified(
            "hom-categories need a target determined by its 2-skeleton".into(),
        ));
    }
    let e = exponential(&xw, &yw, 2)?;
    let t = tau1(&e)?;
    let maps = sorted_maps(&xw, &yw)?;
    let d1 = standard_simplex(1, 2);
    let edge_maps = sorted_maps(&product(&d1, &xw)?, &yw)?;
    if maps.len() != e.count(0) {
        return Err(mismatch("maps"));
    }
    if edge_maps.len() != e.count(1) {
        return Err(mismatch("homotopies"));
    }
    let reps = (0..t.cat.num_morphisms())
        .map(|m| t.representative(m).into_iter().map(|e| (0, e, false)).collect())
        .collect();
    let edges = edges_from(edge_maps, t.edge.clone(), d1.counts());
    Ok(HomCat2::new(
        Side::Qcat,
        t.cat.clone(),
        maps,
        t.object.clone(),
        "level 2".into(),
        vec![edges],
        reps,
        xw.counts(),
        yw.counts(),
    ))
}

fn slot_counts(x: &TruncBiSSet) -> Vec<usize> {
    let w = x.window();
    let mut out = vec![0; (w.p + 1) * (w.q + 1)];
    for (n, m) in w.bidegrees() {
        out[w.slot(n, m)] = x.count(n, m);
    }
    out
}

/// `τ₁⟨X, Y⟩` for complete Segal spaces, from the bisimplicial exponential.
pub fn hom_category_css(x: &TruncBiSSet, y: &TruncBiSSet, window: Window) -> Result<HomCat2> {
    let w2 = Window::total2();
    let (xw, yw) = (on_total2(x)?, on_total2(y)?);
    let e = exponential_bisset(&xw, &yw, window)?;
    let t = tau1_bisset(&e)?;
    let maps = sorted_bimaps(&xw, &yw)?;
    if maps.len() != e.count(0, 0) {
        return Err(mismatch("maps"));
    }
    let mut edges = Vec::new();
    for (dir, (n, m), morphism) in [(Dir::H, (1, 0), &t.hedge), (Dir::V, (0, 1), &t.vedge)] {
        let shape = box_product_in(&standard_simplex(n, 2), &standard_simplex(m, 2), w2)?;
        let found = sorted_bimaps(&biproduct(&shape, &xw)?, &yw)?;
        if found.len() != e.count(n, m) {
            return Err(mismatch(match dir {
                Dir::H => "horizontal homotopies",
                Dir::V => "vertical homotopies",
            }));
        }
        edges.push(edges_from(found, morphism.clone(), slot_counts(&shape)));
    }
    let reps = (0..t.cat.num_morphisms())
        .map(|m| {
            t.representative(m)
                .into_iter()
                .map(|(d, e, inv)| (if d == Dir::H { 0 } else { 1 }, e, inv))
                .collect()
        })
        .collect();
    Ok(HomCat2::new(
        Side::Css,
        t.cat.clone(),
        maps,
        t.object.clone(),
        window.to_string(),
        edges,
        reps,
        slot_counts(&xw),
        slot_counts(&yw),
    ))
}

/// `g ∘ f` on cell tables.
fn compose(f: &[Vec<u32>], g: &[Vec<u32>]) -> Levels {
    f.iter()
        .zip(g)
        .map(|(fl, gl)| fl.iter().map(|&c| gl[c as usize]).collect())
        .collect()
}

/// Homotopy `L` followed by `g`.
fn post(edge: &[Vec<u32>], g: &[Vec<u32>]) -> Levels {
    compose(edge, g)
}

/// Homotopy `L` of maps out of `Y`, precomposed with `f : X → Y`.
fn pre(edge: &[Vec<u32>], f: &[Vec<u32>], shape: &[usize], x: &[usize], y: &[usize]) -> Levels {
    (0..edge.len())
        .map(|l| {
            let mut row = Vec::with_capacity(shape[l] * x[l]);
            for a in 0..shape[l] {
                for c in 0..x[l] {
                    row.push(edge[l][a * y[l] + f[l][c] as usize]);
                }
            }
            row
        })
        .collect()
}

/// The functor `from.carrier → to.carrier` acting on maps by `on_map` and on
/// edges by `on_edge`.
fn induced(
    from: &HomCat2,
    to: &HomCat2,
    on_map: &dyn Fn(&[Vec<u32>]) -> Levels,
    on_edge: &dyn Fn(usize, &[Vec<u32>]) -> Levels,
) -> Result<Functor> {
    let object_map = (0..from.carrier.num_objects())
        .map(|o| {
            let img = on_map(&from.maps[from.map_of_object[o]]);
            to.map_index(&img)
                .map(|i| to.object[i])
                .ok_or_else(|| Error::NotAMap("composite map is missing from the hom-category".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let c = &to.carrier;
    let morphism_map = (0..from.carrier.num_morphisms())
        .map(|m| {
            let mut acc = c.identity(object_map[from.carrier.src(m)]);
            for &(kind, e, inv) in &from.reps[m] {
                let img = on_edge(kind, &from.edges[kind].maps[e as usize]);
                let k = to.edges[kind]
                    .index
                    .get(&img)
                    .ok_or_else(|| Error::NotAMap("whiskered homotopy is missing".into()))?;
                let mut step = to.edges[kind].morphism[*k as usize];
                if inv {
                    step = c
                        .inverse(step)
                        .ok_or_else(|| Error::NotWellDefined("vertical edge is not invertible".into()))?;
                }
                acc = c
                    .compose(step, acc)
                    .ok_or_else(|| Error::NotWellDefined("representative path does not compose".into()))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<usize>>>()?;
    Functor::new(
        Arc::new(from.carrier.clone()),
        Arc::new(to.carrier.clone()),
        object_map,
        morphism_map,
    )
}

fn check_middle(h1: &HomCat2, h2: &HomCat2, h3: &HomCat2) -> Result<()> {
    if h1.side != h2.side
        || h2.side != h3.side
        || h1.target_counts != h2.source_counts
        || h1.source_counts != h3.source_counts
        || h2.target_counts != h3.target_counts
    {
        return Err(Error::DimMismatch("hom-categories are not composable".into()));
    }
    Ok(())
}

/// Whiskering `Hom(X, Y) → Hom(X, Z)` by the map `g` (an index into
/// `h2.maps`).
pub fn post_whisker(h1: &HomCat2, g: usize, h2: &HomCat2, h3: &HomCat2) -> Result<Functor> {
    check_middle(h1, h2, h3)?;
    let gl = &h2.maps[g];
    induced(h1, h3, &|f| compose(f, gl), &|_, e| post(e, gl))
}

/// Whiskering `Hom(Y, Z) → Hom(X, Z)` by the map `f` (an index into
/// `h1.maps`).
pub fn pre_whisker(h1: &HomCat2, f: usize, h2: &HomCat2, h3: &HomCat2) -> Result<Functor> {
    check_middle(h1, h2, h3)?;
    let fl = &h1.maps[f];
    let (xs, ys) = (&h1.source_counts, &h1.target_counts);
    induced(h2, h3, &|g| compose(fl, g), &|kind, e| {
        pre(e, fl, &h2.edges[kind].shape_counts, xs, ys)
    })
}

/// Horizontal composition `Hom(X, Y) × Hom(Y, Z) → Hom(X, Z)`, with
/// `(α, β) ↦ (β f') ∘ (g α)` for `α : f ⇒ f'` and `β : g ⇒ g'`.
#[derive(Clone, Debug)]
pub struct HorizontalComposition {
    /// Functor out of the product category.
    pub functor: Functor,
    /// Composite of morphisms `(α, β)`, indexed `[α][β]`.
    pub table: Vec<Vec<usize>>,
    pub post: Vec<Functor>,
    pub pre: Vec<Functor>,
}

impl HorizontalComposition {
    pub fn apply(&self, alpha: usize, beta: usize) -> usize {
        self.table[alpha][beta]
    }
}

pub fn horizontal_compose(h1: &HomCat2, h2: &HomCat2, h3: &HomCat2) -> Result<HorizontalComposition> {
    check_middle(h1, h2, h3)?;
    let post_by: Vec<Functor> = (0..h2.maps.len())
        .map(|g| post_whisker(h1, g, h2, h3))
        .collect::<Result<_>>()?;
    let pre_by: Vec<Functor> = (0..h1.maps.len())
        .map(|f| pre_whisker(h1, f, h2, h3))
        .collect::<Result<_>>()?;
    let (c1, c2, c3) = (&h1.carrier, &h2.carrier, &h3.carrier);
    let table: Vec<Vec<usize>> = (0..c1.num_morphisms())
        .map(|a| {
            let f2 = h1.map_of_object[c1.tgt(a)];
            (0..c2.num_morphisms())
                .map(|b| {
                    let g = h2.map_of_object[c2.src(b)];
                    c3.comp(pre_by[f2].morphism_map[b], post_by[g].morphism_map[a])
                })
                .collect()
        })
        .collect();
    let prod = product_category(c1, c2);
    let name_obj = |a: usize, b: usize| format!("({},{})", c1.objects()[a], c2.objects()[b]);
    let object_map = (0..prod.num_objects())
        .map(|_| 0)
        .collect::<Vec<_>>();
    let mut object_map = object_map;
    for a in 0..c1.num_objects() {
        for b in 0..c2.num_objects() {
            let o = prod.object_index(&name_obj(a, b)).expect("product object");
            let comp = compose(&h1.maps[h1.map_of_object[a]], &h2.maps[h2.map_of_object[b]]);
            object_map[o] = h3.object[h3
                .map_index(&comp)
                .ok_or_else(|| Error::NotAMap("composite map is missing".into()))?];
        }
    }
    let mut morphism_map = vec![0; prod.num_morphisms()];
    for a in 0..c1.num_morphisms() {
        for b in 0..c2.num_morphisms() {
            let name = format!("({},{})", c1.morphism_name(a), c2.morphism_name(b));
            morphism_map[prod.morphism_index(&name).expect("product morphism")] = table[a][b];
        }
    }
    let functor = Functor::new(Arc::new(prod), Arc::new(c3.clone()), object_map, morphism_map)?;
    Ok(HorizontalComposition {
        functor,
        table,
        post: post_by,
        pre: pre_by,
    })
}

/// A failed 2-category axiom, with the morphisms involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomFailure {
    LeftUnit { hom: (usize, usize), alpha: String },
    RightUnit { hom: (usize, usize), alpha: String },
    Associativity { objects: Vec<usize>, cells: Vec<String> },
    Interchange { objects: Vec<usize>, cells: Vec<String> },
    Whiskering { objects: Vec<usize>, cells: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub side: Side,
    pub objects: usize,
    /// Number of individual equations checked.
    pub checked: usize,
    pub verdict: Verdict<AxiomFailure>,
}

/// Hom-categories between all pairs of a list of objects.
pub struct HomTable {
    pub homs: Vec<Vec<HomCat2>>,
}

impl HomTable {
    pub fn qcat(objects: &[TruncSSet]) -> Result<HomTable> {
        let homs = objects
            .iter()
            .map(|x| objects.iter().map(|y| hom_category_qcat(x, y)).collect())
            .collect::<Result<_>>()?;
        Ok(HomTable { homs })
    }

    pub fn css(objects: &[TruncBiSSet], window: Window) -> Result<HomTable> {
        let homs = objects
            .iter()
            .map(|x| objects.iter().map(|y| hom_category_css(x, y, window)).collect())
            .collect::<Result<_>>()?;
        Ok(HomTable { homs })
    }

    pub fn hom(&self, i: usize, j: usize) -> &HomCat2 {
        &self.homs[i][j]
    }
}

/// Exhaustive check of the unit, associativity and interchange laws of
/// horizontal composition, and of the two ways of composing a square of
/// whiskerings.
pub fn check_2category(table: &HomTable) -> Result<AxiomReport> {
    let k = table.homs.len();
    let side = table.homs.first().map_or(Side::Qcat, |r| r[0].side);
    let mut checked = 0;
    let mut comps: HashMap<(usize, usize, usize), HorizontalComposition> = HashMap::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                comps.insert((i, j, l), horizontal_compose(table.hom(i, j), table.hom(j, l), table.hom(i, l))?);
            }
        }
    }
    let report = |verdict, checked| AxiomReport {
        side,
        objects: k,
        checked,
        verdict,
    };
    // units
    for i in 0..k {
        for j in 0..k {
            let h = table.hom(i, j);
            let (hi, hj) = (table.hom(i, i), table.hom(j, j));
            let id_i = hi.carrier.identity(hi.object[hi.map_index(&hi.identity_map()).expect("identity map")]);
            let id_j = hj.carrier.identity(hj.object[hj.map_index(&hj.identity_map()).expect("identity map")]);
            for a in 0..h.carrier.num_morphisms() {
                checked += 2;
                let name = || h.carrier.morphism_name(a).to_string();
                if comps[&(i, i, j)].apply(id_i, a) != a {
                    return Ok(report(Verdict::Fails(AxiomFailure::LeftUnit { hom: (i, j), alpha: name() }), checked));
                }
                if comps[&(i, j, j)].apply(a, id_j) != a {
                    return Ok(report(Verdict::Fails(AxiomFailure::RightUnit { hom: (i, j), alpha: name() }), checked));
                }
            }
        }
    }
    // associativity
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for o in 0..k {
                    let (a_n, b_n, c_n) = (
                        table.hom(i, j).carrier.num_morphisms(),
                        table.hom(j, l).carrier.num_morphisms(),
                        table.hom(l, o).carrier.num_morphisms(),
                    );
                    for a in 0..a_n {
                        for b in 0..b_n {
                            let ab = comps[&(i, j, l)].apply(a, b);
                            for c in 0..c_n {
                                checked += 1;
                                let left = comps[&(i, l, o)].apply(ab, c);
                                let right = comps[&(i, j, o)].apply(a, comps[&(j, l, o)].apply(b, c));
                                if left != right {
                                    let cells = vec![
                                        table.hom(i, j).carrier.morphism_name(a).to_string(),
                                        table.hom(j, l).carrier.morphism_name(b).to_string(),
                                        table.hom(l, o).carrier.morphism_name(c).to_string(),
                                    ];
                                    return Ok(report(
                                        Verdict::Fails(AxiomFailure::Associativity {
                                            objects: vec![i, j, l, o],
                                            cells,
                                        }),
                                        checked,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // interchange and whiskering squares
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let (h1, h2, h3) = (table.hom(i, j), table.hom(j, l), table.hom(i, l));
                let comp = &comps[&(i, j, l)];
                let (c1, c2, c3) = (&h1.carrier, &h2.carrier, &h3.carrier);
                for a in 0..c1.num_morphisms() {
                    for b in 0..c2.num_morphisms() {
                        checked += 1;
                        let f = h1.map_of_object[c1.src(a)];
                        let g2 = h2.map_of_object[c2.tgt(b)];
                        let other = c3.comp(comp.post[g2].morphism_map[a], comp.pre[f].morphism_map[b]);
                        if other != comp.apply(a, b) {
                            return Ok(report(
                                Verdict::Fails(AxiomFailure::Whiskering {
                                    objects: vec![i, j, l],
                                    cells: vec![c1.morphism_name(a).into(), c2.morphism_name(b).into()],
                                }),
                                checked,
                            ));
                        }
                    }
                }
                for a in 0..c1.num_morphisms() {
                    for a2 in (0..c1.num_morphisms()).filter(|&m| c1.src(m) == c1.tgt(a)) {
                        let aa = c1.comp(a2, a);
                        for b in 0..c2.num_morphisms() {
                            for b2 in (0..c2.num_morphisms()).filter(|&m| c2.src(m) == c2.tgt(b)) {
                                checked += 1;
                                let bb = c2.comp(b2, b);
                                let lhs = comp.apply(aa, bb);
                                let rhs = c3.comp(comp.apply(a2, b2), comp.apply(a, b));
                                if lhs != rhs {
                                    return Ok(report(
                                        Verdict::Fails(AxiomFailure::Interchange {
                                            objects: vec![i, j, l],
                                            cells: [a, a2]
                                                .iter()
                                                .map(|&m| c1.morphism_name(m).to_string())
                                                .chain([b, b2].iter().map(|&m| c2.morphism_name(m).to_string()))
                                                .collect(),
                                        }),
                                        checked,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report(Verdict::Holds, checked))
}

/// A quasi-inverse with the invertible 2-cells exhibiting it.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiInverse {
    /// Index of `g` among the maps `Y → X`.
    pub index: usize,
    /// `id_X ≅ g ∘ f` in `Hom(X, X)`.
    pub unit: String,
    /// `f ∘ g ≅ id_Y` in `Hom(Y, Y)`.
    pub counit: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub side: Side,
    pub window: String,
    /// Candidates for `g` that were examined.
    pub candidates: usize,
    pub inverse: Option<QuasiInverse>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.inverse.is_some()
    }
}

/// Searches the maps `Y → X` in order for a quasi-inverse of map `f` (an
/// index into `hxy.maps`). The first one found is returned.
pub fn equivalence_search(
    hxy: &HomCat2,
    hyx: &HomCat2,
    hxx: &HomCat2,
    hyy: &HomCat2,
    f: usize,
) -> Result<EquivalenceReport> {
    check_middle(hxy, hyx, hxx)?;
    check_middle(hyx, hxy, hyy)?;
    let id_x = hxx.map_index(&hxx.identity_map()).expect("identity map");
    let id_y = hyy.map_index(&hyy.identity_map()).expect("identity map");
    let fl = &hxy.maps[f];
    let mut candidates = 0;
    for (g, gl) in hyx.maps.iter().enumerate() {
        candidates += 1;
        let gf = hxx.map_index(&compose(fl, gl)).ok_or_else(|| mismatch("composites"))?;
        let fg = hyy.map_index(&compose(gl, fl)).ok_or_else(|| mismatch("composites"))?;
        if let (Some(u), Some(c)) = (hxx.isomorphism(id_x, gf), hyy.isomorphism(fg, id_y)) {
            return Ok(EquivalenceReport {
                side: hxy.side,
                window: hxy.window.clone(),
                candidates,
                inverse: Some(QuasiInverse {
                    index: g,
                    unit: hxx.carrier.morphism_name(u).to_string(),
                    counit: hyy.carrier.morphism_name(c).to_string(),
                }),
            });
        }
    }
    Ok(EquivalenceReport {
        side: hxy.side,
        window: hxy.window.clone(),
        candidates,
        inverse: None,
    })
}

/// Whether a map of quasicategories is an equivalence in the homotopy
/// 2-category.
pub fn is_equivalence_qcat(f: &SSetMap) -> Result<EquivalenceReport> {
    let (x, y) = (&*f.source, &*f.target);
    let hxy = hom_category_qcat(x, y)?;
    let levels: Levels = (0..=2).map(|k| f.level(k).to_vec()).collect();
    let index = hxy.map_index(&levels).ok_or_else(|| mismatch("the map's cells"))?;
    equivalence_search(
        &hxy,
        &hom_category_qcat(y, x)?,
        &hom_category_qcat(x, x)?,
        &hom_category_qcat(y, y)?,
        index,
    )
}

/// Whether a map of complete Segal spaces is an equivalence in the
/// homotopy 2-category.
pub fn is_equivalence_css(f: &BiSSetMap) -> Result<EquivalenceReport> {
    let (x, y) = (&*f.source, &*f.target);
    let window = Window::total2();
    let hxy = hom_category_css(x, y, window)?;
    let mut levels = vec![Vec::new(); 9];
    for (n, m) in window.bidegrees() {
        levels[window.slot(n, m)] = f.level(n, m).to_vec();
    }
    let index = hxy.map_index(&levels).ok_or_else(|| mismatch("the map's cells"))?;
    equivalence_search(
        &hxy,
        &hom_category_css(y, x, window)?,
        &hom_category_css(x, x, window)?,
        &hom_category_css(y, y, window)?,
        index,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub window: Window,
    /// The comparison map is an isomorphism of bisimplicial sets.
    pub isomorphism: bool,
    pub dk: Verdict<DkFailure>,
    /// `τ₁⟨X, Y⟩ ≅ τ₁⟨t^! X, t^! Y⟩`.
    pub hom_level: bool,
}

/// The canonical map `t^!⟨X, Y⟩ → ⟨t^! X, t^! Y⟩`, sending
/// `φ : Δⁿ × Jᵐ × X → Y` to `(a, b, s) ↦ φ ∘ (a × b, s)`.
pub fn bridge_map(x: &TruncSSet, y: &TruncSSet, window: Window) -> Result<BiSSetMap> {
    let w2 = Window::total2();
    let (xw, yw) = (at_level2(x)?, at_level2(y)?);
    let e = exponential(&xw, &yw, 2)?;
    let source = build_upper(&e, window)?;
    let tx = build_upper(&xw, w2)?;
    let ty = build_upper(&yw, w2)?;
    if ty.key_level > 1 {
        return Err(Error::WindowInsufficient {
            what: "comparison map".into(),
            required: "a target determined by its edges".into(),
        });
    }
    // cells of the exponential at levels 0 and 1, as maps Δᵏ × X → Y
    let emaps: Vec<Vec<Levels>> = (0..=1)
        .map(|k| sorted_maps(&product(&standard_simplex(k, 2), &xw)?, &yw))
        .collect::<Result<_>>()?;
    for (k, l) in emaps.iter().enumerate() {
        if l.len() != e.count(k) {
            return Err(mismatch("maps"));
        }
    }
    // the top simplex of Δᵏ
    let top: Vec<usize> = (0..=1)
        .map(|k| {
            let d = standard_simplex(k, 2);
            vertex_sequences(&d, k)[k]
                .iter()
                .position(|s| s.iter().enumerate().all(|(i, &v)| v == i as u32))
                .expect("top simplex")
        })
        .collect();
    let target = exponential_bisset(&tx.x, &ty.x, window)?;
    let txw = tx.x.rewindow(w2)?;
    let det = determining_bidegrees(&ty.x, w2);
    let mut levels = HashMap::new();
    for (n, m) in window.bidegrees() {
        let shape = box_product_in(&standard_simplex(n, 2), &standard_simplex(m, 2), w2)?;
        let found = sorted_bimaps(&biproduct(&shape, &txw)?, &ty.x)?;
        if found.len() != target.count(n, m) {
            return Err(mismatch("maps"));
        }
        let index: HashMap<Vec<u32>, u32> = found
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let key = det.iter().flat_map(|&(k, l2)| l[w2.slot(k, l2)].iter().copied()).collect();
                (key, i as u32)
            })
            .collect();
        let hseq = vertex_sequences(&standard_simplex(n, 2), 2);
        let vseq = vertex_sequences(&standard_simplex(m, 2), 2);
        let mut row = Vec::with_capacity(source.x.count(n, m));
        for c in 0..source.x.count(n, m) as u32 {
            let mut key = Vec::new();
            for &(k, l) in &det {
                let vcount = vseq[l].len();
                for sc in 0..shape.count(k, l) {
                    let (a, b) = (&hseq[k][sc / vcount], &vseq[l][sc % vcount]);
                    for s in 0..txw.count(k, l) as u32 {
                        let err = RefCell::new(None);
                        let image = ty.lookup(k, l, |kk, hs, js| {
                            let ha: Vec<u32> = hs.iter().map(|&v| a[v as usize]).collect();
                            let jb: Vec<u32> = js.iter().map(|&v| b[v as usize]).collect();
                            let cell = source.evaluate(n, m, c, &ha, &jb).and_then(|ec| {
                                let xs = tx.evaluate(k, l, s, hs, js)?;
                                let xcount = xw.count(kk);
                                Ok(emaps[kk][ec as usize][kk][top[kk] * xcount + xs as usize])
                            });
                            cell.unwrap_or_else(|e| {
                                *err.borrow_mut() = Some(e);
                                u32::MAX
                            })
                        });
                        if let Some(e) = err.into_inner() {
                            return Err(e);
                        }
                        key.push(image.ok_or_else(|| Error::NotAMap("comparison image is missing".into()))?);
                    }
                }
            }
            row.push(*index.get(&key).ok_or_else(|| Error::NotAMap("comparison cell is missing".into()))?);
        }
        levels.insert((n, m), row);
    }
    BiSSetMap::new(Arc::new(source.x), Arc::new(target), levels)
}

/// Runs the Dwyer–Kan check on the comparison map and compares the
/// hom-categories on both sides.
pub fn bridge_check(x: &TruncSSet, y: &TruncSSet, window: Window) -> Result<BridgeReport> {
    let f = bridge_map(x, y, window)?;
    let dk = is_dk_equivalence(&f)?;
    let w2 = Window::total2();
    let qc = hom_category_qcat(x, y)?;
    let (tx, ty) = (build_upper(&at_level2(x)?, w2)?, build_upper(&at_level2(y)?, w2)?);
    let css = hom_category_css(&tx.x, &ty.x, w2)?;
    Ok(BridgeReport {
        window,
        isomorphism: f.is_isomorphism(),
        dk,
        hom_level: is_isomorphic(&qc.carrier, &css.carrier),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, classifying_diagram, classifying_map, terminal};
    use crate::fincat::{
        functor_category, groupoid_interval, interval_category, terminal as point_cat, walking_idempotent,
        Functor,
    };
    use crate::sset::{nerve, nerve_map, point};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn qcat_hom_categories() {
        let y = nerve(&walking_idempotent(), 3);
        let h = hom_category_qcat(&point(2), &y).unwrap();
        assert!(is_isomorphic(&h.carrier, &walking_idempotent()));
        let h = hom_category_qcat(&standard_simplex(1, 2), &nerve(&interval_category(1), 3)).unwrap();
        assert_eq!((h.carrier.num_objects(), h.carrier.num_morphisms()), (3, 6));
        let h = hom_category_qcat(&nerve(&groupoid_interval(1), 3), &point(2)).unwrap();
        assert!(is_isomorphic(&h.carrier, &point_cat()));
    }

    #[test]
    fn css_hom_categories() {
        let w = Window::total2();
        let c1 = classifying_diagram(&interval_category(1), Window::new(2, 2));
        let h = hom_category_css(&c1, &c1, w).unwrap();
        let fun = functor_category(&arc(interval_category(1)), &arc(interval_category(1)));
        assert!(is_isomorphic(&h.carrier, &fun));
        let iso = classifying_diagram(&groupoid_interval(1), Window::new(2, 2));
        let h = hom_category_css(&terminal(w), &iso, w).unwrap();
        assert!(is_isomorphic(&h.carrier, &groupoid_interval(1)));
        let b = box_product(&standard_simplex(1, 2), &point(2));
        let h = hom_category_css(&b, &iso, w).unwrap();
        let fun = functor_category(&arc(interval_category(1)), &arc(groupoid_interval(1)));
        assert!(is_isomorphic(&h.carrier, &fun));
    }

    #[test]
    fn axioms_on_small_triples() {
        let objs = [
            point(2),
            nerve(&interval_category(1), 2),
            nerve(&groupoid_interval(1), 2),
        ];
        let r = check_2category(&HomTable::qcat(&objs).unwrap()).unwrap();
        assert!(r.verdict.holds(), "{:?}", r.verdict);
        let w = Window::new(2, 2);
        let objs = [
            classifying_diagram(&point_cat(), w),
            classifying_diagram(&interval_category(1), w),
            classifying_diagram(&groupoid_interval(1), w),
        ];
        let r = check_2category(&HomTable::css(&objs, Window::total2()).unwrap()).unwrap();
        assert!(r.verdict.holds(), "{:?}", r.verdict);
    }

    #[test]
    fn equivalences_of_quasicategories() {
        let i1 = arc(groupoid_interval(1));
        let pt = arc(point_cat());
        let to_point = Functor::new(i1.clone(), pt.clone(), vec![0, 0], vec![0; 4]).unwrap();
        let r = is_equivalence_qcat(&nerve_map(&to_point, 2).unwrap()).unwrap();
        assert!(r.holds());
        let c1 = arc(interval_category(1));
        let id0 = c1.identity(0);
        let vertex = Functor::new(pt, c1, vec![0], vec![id0]).unwrap();
        let r = is_equivalence_qcat(&nerve_map(&vertex, 2).unwrap()).unwrap();
        assert!(!r.holds());
        assert_eq!(r.candidates, 1);
    }

    #[test]
    fn equivalences_of_segal_spaces() {
        let w = Window::new(2, 2);
        let i1 = arc(groupoid_interval(1));
        let pt = arc(point_cat());
        let to_point = Functor::new(i1, pt.clone(), vec![0, 0], vec![0; 4]).unwrap();
        let f = classifying_map(&to_point, w).unwrap();
        assert!(is_equivalence_css(&f).unwrap().holds());
        assert!(is_dk_equivalence(&f).unwrap().holds());
        let c1 = arc(interval_category(1));
        let id0 = c1.identity(0);
        let vertex = Functor::new(pt, c1, vec![0], vec![id0]).unwrap();
        let f = classifying_map(&vertex, w).unwrap();
        assert!(!is_equivalence_css(&f).unwrap().holds());
        assert!(!is_dk_equivalence(&f).unwrap().holds());
    }

    #[test]
    fn bridge_examples() {
        let n1 = nerve(&interval_category(1), 2);
        let r = bridge_check(&point(2), &n1, Window::new(2, 2)).unwrap();
        assert!(r.isomorphism && r.dk.holds() && r.hom_level);
        let r = bridge_check(&n1, &n1, Window::new(2, 2)).unwrap();
        assert!(r.dk.holds() && r.hom_level);
    }
}
