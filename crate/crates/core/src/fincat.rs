//! Finite categories with total composition tables, functors, natural
//! transformations, and the decision procedures built on them.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category. Objects and morphisms are kept sorted by identifier,
/// which fixes every enumeration order downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    // compose[g * n + f] = g ∘ f
    compose: Vec<Option<usize>>,
    hom: Vec<Vec<usize>>,
    is_identity: Vec<bool>,
}

impl FinCat {
    /// Validates raw data and canonicalizes the order by identifier.
    pub fn from_raw(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Result<FinCat> {
        let no = objects.len();
        let nm = morphisms.len();
        if identity.len() != no || compose.len() != nm * nm {
            return Err(Error::InvalidIndex("table sizes do not match".into()));
        }
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.as_str()) {
                return Err(Error::Duplicate(o.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for m in &morphisms {
            if !seen.insert(m.name.as_str()) {
                return Err(Error::Duplicate(m.name.clone()));
            }
            if m.src >= no || m.tgt >= no {
                return Err(Error::InvalidIndex(format!("endpoint of `{}`", m.name)));
            }
        }

        let mut obj_order: Vec<usize> = (0..no).collect();
        obj_order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        let mut obj_new = vec![0; no];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut mor_order: Vec<usize> = (0..nm).collect();
        mor_order.sort_by(|&a, &b| morphisms[a].name.cmp(&morphisms[b].name));
        let mut mor_new = vec![0; nm];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }

        let objects_s: Vec<String> = obj_order.iter().map(|&o| objects[o].clone()).collect();
        let morphisms_s: Vec<Morphism> = mor_order
            .iter()
            .map(|&m| Morphism {
                name: morphisms[m].name.clone(),
                src: obj_new[morphisms[m].src],
                tgt: obj_new[morphisms[m].tgt],
            })
            .collect();
        let identity_s: Vec<usize> = obj_order.iter().map(|&o| mor_new[identity[o]]).collect();
        let mut compose_s = vec![None; nm * nm];
        for g in 0..nm {
            for f in 0..nm {
                if let Some(h) = compose[g * nm + f] {
                    if h >= nm {
                        return Err(Error::InvalidIndex(format!("composite index {h}")));
                    }
                    compose_s[mor_new[g] * nm + mor_new[f]] = Some(mor_new[h]);
                }
            }
        }
        let cat = FinCat::assemble(objects_s, morphisms_s, identity_s, compose_s);
        cat.validate()?;
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> FinCat {
        let no = objects.len();
        let mut hom = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src * no + m.tgt].push(i);
        }
        let mut is_identity = vec![false; morphisms.len()];
        for &i in &identity {
            is_identity[i] = true;
        }
        FinCat {
            objects,
            morphisms,
            identity,
            compose,
            hom,
            is_identity,
        }
    }

    fn validate(&self) -> Result<()> {
        let nm = self.morphisms.len();
        let name = |m: usize| self.morphisms[m].name.clone();
        for (o, &id) in self.identity.iter().enumerate() {
            let m = &self.morphisms[id];
            if m.src != o || m.tgt != o {
                return Err(Error::UnitLaw {
                    morphism: m.name.clone(),
                    identity: m.name.clone(),
                });
            }
        }
        for g in 0..nm {
            for f in 0..nm {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                match (composable, self.compose[g * nm + f]) {
                    (true, None) => {
                        return Err(Error::MissingComposite { g: name(g), f: name(f) })
                    }
                    (false, Some(h)) => {
                        return Err(Error::CompositeEndpoints {
                            g: name(g),
                            f: name(f),
                            h: name(h),
                        })
                    }
                    (true, Some(h)) => {
                        let hm = &self.morphisms[h];
                        if hm.src != self.morphisms[f].src || hm.tgt != self.morphisms[g].tgt {
                            return Err(Error::CompositeEndpoints {
                                g: name(g),
                                f: name(f),
                                h: name(h),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..nm {
            let m = &self.morphisms[f];
            let (ids, idt) = (self.identity[m.src], self.identity[m.tgt]);
            if self.comp(idt, f) != f {
                return Err(Error::UnitLaw {
                    morphism: name(f),
                    identity: name(idt),
                });
            }
            if self.comp(f, ids) != f {
                return Err(Error::UnitLaw {
                    morphism: name(f),
                    identity: name(ids),
                });
            }
        }
        for f in 0..nm {
            let b = self.morphisms[f].tgt;
            for c in 0..self.objects.len() {
                for &g in self.hom(b, c) {
                    let gf = self.comp(g, f);
                    for d in 0..self.objects.len() {
                        for &h in self.hom(c, d) {
                            if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                                return Err(Error::Associativity {
                                    h: name(h),
                                    g: name(g),
                                    f: name(f),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.is_identity[m]
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g * self.morphisms.len() + f].expect("composable pair")
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects.len() + b]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.binary_search_by(|o| o.as_str().cmp(name)).ok()
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms
            .binary_search_by(|m| m.name.as_str().cmp(name))
            .ok()
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.morphisms[m].name
    }

    /// A two-sided inverse of `m`, if one exists.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a).iter().copied().find(|&g| {
            self.comp(g, m) == self.identity[a] && self.comp(m, g) == self.identity[b]
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|m| self.inverse(m).is_some())
    }

    /// Builds a category from generated data whose composition is given by a
    /// function; used by all internal constructions.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<FinCat> {
        let nm = morphisms.len();
        let mut table = vec![None; nm * nm];
        for g in 0..nm {
            for f in 0..nm {
                if morphisms[f].tgt == morphisms[g].src {
                    table[g * nm + f] = Some(compose(g, f));
                }
            }
        }
        FinCat::from_raw(objects, morphisms, identity, table)
    }
}

/// Textual description of a category: objects, non-identity morphisms, and
/// composites. Identities are implicit as `id_<obj>`.
#[derive(Debug, Clone, Default)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub composites: Vec<(String, String, String)>,
}

impl CategorySpec {
    pub fn object(mut self, o: &str) -> Self {
        self.objects.push(o.to_string());
        self
    }

    pub fn morphism(mut self, name: &str, src: &str, tgt: &str) -> Self {
        self.morphisms
            .push((name.to_string(), src.to_string(), tgt.to_string()));
        self
    }

    pub fn composite(mut self, g: &str, f: &str, h: &str) -> Self {
        self.composites
            .push((g.to_string(), f.to_string(), h.to_string()));
        self
    }
}

pub fn make_category(spec: &CategorySpec) -> Result<FinCat> {
    let mut obj_ix = HashMap::new();
    for (i, o) in spec.objects.iter().enumerate() {
        if obj_ix.insert(o.clone(), i).is_some() {
            return Err(Error::Duplicate(o.clone()));
        }
    }
    let mut morphisms = Vec::new();
    let mut identity = Vec::new();
    for (i, o) in spec.objects.iter().enumerate() {
        identity.push(morphisms.len());
        morphisms.push(Morphism {
            name: format!("id_{o}"),
            src: i,
            tgt: i,
        });
    }
    for (name, s, t) in &spec.morphisms {
        let end = |o: &String, end: &'static str| {
            obj_ix.get(o).copied().ok_or_else(|| Error::Dangling {
                morphism: name.clone(),
                end,
                object: o.clone(),
            })
        };
        let (src, tgt) = (end(s, "source")?, end(t, "target")?);
        morphisms.push(Morphism {
            name: name.clone(),
            src,
            tgt,
        });
    }
    let mut mor_ix = HashMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        if mor_ix.insert(m.name.clone(), i).is_some() {
            return Err(Error::Duplicate(m.name.clone()));
        }
    }
    let nm = morphisms.len();
    let mut table: Vec<Option<usize>> = vec![None; nm * nm];
    for f in 0..nm {
        table[identity[morphisms[f].tgt] * nm + f] = Some(f);
        table[f * nm + identity[morphisms[f].src]] = Some(f);
    }
    let lookup = |n: &String| {
        mor_ix
            .get(n)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(n.clone()))
    };
    for (g, f, h) in &spec.composites {
        let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(h)?);
        let (gm, fm, hm) = (&morphisms[gi], &morphisms[fi], &morphisms[hi]);
        if fm.tgt != gm.src || hm.src != fm.src || hm.tgt != gm.tgt {
            return Err(Error::CompositeEndpoints {
                g: g.clone(),
                f: f.clone(),
                h: h.clone(),
            });
        }
        match table[gi * nm + fi] {
            Some(prev) if prev != hi => {
                let is_unit = identity.contains(&gi) || identity.contains(&fi);
                if is_unit {
                    return Err(Error::UnitLaw {
                        morphism: h.clone(),
                        identity: if identity.contains(&gi) { g.clone() } else { f.clone() },
                    });
                }
                return Err(Error::ConflictingComposite {
                    g: g.clone(),
                    f: f.clone(),
                    first: morphisms[prev].name.clone(),
                    second: h.clone(),
                });
            }
            _ => table[gi * nm + fi] = Some(hi),
        }
    }
    FinCat::from_raw(spec.objects.clone(), morphisms, identity, table)
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn terminal() -> FinCat {
    interval_category(0)
}

/// The poset `[n]`.
pub fn interval_category(n: usize) -> FinCat {
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    let mut identity = vec![0; n + 1];
    for i in 0..=n {
        for j in i..=n {
            index.insert((i, j), morphisms.len());
            if i == j {
                identity[i] = morphisms.len();
            }
            morphisms.push(Morphism {
                name: if i == j { format!("id_{i}") } else { format!("{i}_{j}") },
                src: i,
                tgt: j,
            });
        }
    }
    let ms = morphisms.clone();
    FinCat::from_fn(numbered(n + 1), morphisms, identity, |g, f| {
        index[&(ms[f].src, ms[g].tgt)]
    })
    .expect("interval category is valid")
}

/// The chaotic groupoid `I[m]` on `m + 1` objects, i.e. `[m]` with every
/// morphism freely inverted.
pub fn groupoid_interval(m: usize) -> FinCat {
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    let mut identity = vec![0; m + 1];
    for i in 0..=m {
        for j in 0..=m {
            index.insert((i, j), morphisms.len());
            if i == j {
                identity[i] = morphisms.len();
            }
            morphisms.push(Morphism {
                name: if i == j { format!("id_{i}") } else { format!("{i}_{j}") },
                src: i,
                tgt: j,
            });
        }
    }
    let ms = morphisms.clone();
    FinCat::from_fn(numbered(m + 1), morphisms, identity, |g, f| {
        index[&(ms[f].src, ms[g].tgt)]
    })
    .expect("chaotic groupoid is valid")
}

/// One object with an idempotent `e`.
pub fn walking_idempotent() -> FinCat {
    make_category(
        &CategorySpec::default()
            .object("*")
            .morphism("e", "*", "*")
            .composite("e", "e", "e"),
    )
    .expect("walking idempotent is valid")
}

pub fn product_category(c: &FinCat, d: &FinCat) -> FinCat {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let (mc, md) = (c.num_morphisms(), d.num_morphisms());
    let mut objects = Vec::with_capacity(nc * nd);
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut morphisms = Vec::with_capacity(mc * md);
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                src: f.src * nd + g.src,
                tgt: f.tgt * nd + g.tgt,
            });
        }
    }
    let identity = (0..nc * nd)
        .map(|o| c.identity(o / nd) * md + d.identity(o % nd))
        .collect();
    FinCat::from_fn(objects, morphisms, identity, |g, f| {
        c.comp(g / md, f / md) * md + d.comp(g % md, f % md)
    })
    .expect("product of categories is valid")
}

/// The maximal subgroupoid.
pub fn iso_subcategory(c: &FinCat) -> FinCat {
    let keep: Vec<usize> = (0..c.num_morphisms())
        .filter(|&m| c.inverse(m).is_some())
        .collect();
    let mut new_ix = vec![usize::MAX; c.num_morphisms()];
    for (i, &m) in keep.iter().enumerate() {
        new_ix[m] = i;
    }
    let morphisms = keep.iter().map(|&m| c.morphisms()[m].clone()).collect();
    let identity = (0..c.num_objects()).map(|o| new_ix[c.identity(o)]).collect();
    FinCat::from_fn(c.objects().to_vec(), morphisms, identity, |g, f| {
        new_ix[c.comp(keep[g], keep[f])]
    })
    .expect("maximal subgroupoid is valid")
}

/// Isomorphism classes of objects, each sorted, ordered by least element.
pub fn tau0(c: &FinCat) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(c.num_objects());
    for m in 0..c.num_morphisms() {
        if c.src(m) != c.tgt(m) && c.inverse(m).is_some() {
            uf.union(c.src(m), c.tgt(m));
        }
    }
    uf.classes()
}

#[derive(Clone, Debug)]
pub struct Functor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map && self.morphism_map == other.morphism_map
    }
}

impl Functor {
    /// Checks every functor law exhaustively.
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Functor> {
        if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms()
        {
            return Err(Error::NotAMap("functor data has the wrong size".into()));
        }
        let f = Functor {
            source,
            target,
            object_map,
            morphism_map,
        };
        let (c, d) = (&*f.source, &*f.target);
        for m in 0..c.num_morphisms() {
            let im = f.morphism_map[m];
            if im >= d.num_morphisms()
                || d.src(im) != f.object_map[c.src(m)]
                || d.tgt(im) != f.object_map[c.tgt(m)]
            {
                return Err(Error::NotAMap(format!(
                    "endpoints of `{}`",
                    c.morphism_name(m)
                )));
            }
        }
        for o in 0..c.num_objects() {
            if f.morphism_map[c.identity(o)] != d.identity(f.object_map[o]) {
                return Err(Error::NotAMap(format!("identity at `{}`", c.objects()[o])));
            }
        }
        for g in 0..c.num_morphisms() {
            for fm in 0..c.num_morphisms() {
                if let Some(h) = c.compose(g, fm) {
                    if f.morphism_map[h] != d.comp(f.morphism_map[g], f.morphism_map[fm]) {
                        return Err(Error::NotAMap(format!(
                            "composite {} . {}",
                            c.morphism_name(g),
                            c.morphism_name(fm)
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn identity(c: &Arc<FinCat>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self.object_map.iter().map(|&o| other.object_map[o]).collect(),
            morphism_map: self
                .morphism_map
                .iter()
                .map(|&m| other.morphism_map[m])
                .collect(),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        let bij = |v: &[usize], n: usize| {
            v.len() == n && v.iter().copied().collect::<BTreeSet<_>>().len() == n
        };
        bij(&self.object_map, self.target.num_objects())
            && bij(&self.morphism_map, self.target.num_morphisms())
    }

    fn name(&self) -> String {
        let (c, d) = (&*self.source, &*self.target);
        let objs: Vec<&str> = self.object_map.iter().map(|&o| d.objects()[o].as_str()).collect();
        let mors: Vec<&str> = (0..c.num_morphisms())
            .filter(|&m| !c.is_identity(m))
            .map(|m| d.morphism_name(self.morphism_map[m]))
            .collect();
        format!("<{}|{}>", objs.join(","), mors.join(","))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NatTrans {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<usize>,
}

fn invalid_pair(c: &FinCat, d: &FinCat) -> bool {
    c.num_objects() > 0 && d.num_objects() == 0
}

/// Backtracking over object images, then non-identity morphism images, in
/// index order; `visit` returns false to stop early.
fn search_functors(
    c: &FinCat,
    d: &FinCat,
    injective: bool,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
) {
    if invalid_pair(c, d) {
        return;
    }
    if injective
        && (c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms())
    {
        return;
    }
    let nonid: Vec<usize> = (0..c.num_morphisms()).filter(|&m| !c.is_identity(m)).collect();
    let mut pos = vec![usize::MAX; c.num_morphisms()];
    for (p, &m) in nonid.iter().enumerate() {
        pos[m] = p;
    }
    // Composition constraints, bucketed by the last position they mention.
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); nonid.len()];
    for &g in &nonid {
        for &f in &nonid {
            if let Some(h) = c.compose(g, f) {
                let mut last = pos[g].max(pos[f]);
                if pos[h] != usize::MAX {
                    last = last.max(pos[h]);
                }
                checks[last].push((g, f, h));
            }
        }
    }

    struct St<'a> {
        c: &'a FinCat,
        d: &'a FinCat,
        injective: bool,
        nonid: Vec<usize>,
        checks: Vec<Vec<(usize, usize, usize)>>,
        obj: Vec<usize>,
        mor: Vec<usize>,
        used_obj: Vec<bool>,
        used_mor: Vec<bool>,
    }

    fn objects(st: &mut St, i: usize, visit: &mut dyn FnMut(&[usize], &[usize]) -> bool) -> bool {
        if i == st.c.num_objects() {
            for o in 0..st.c.num_objects() {
                let id = st.d.identity(st.obj[o]);
                st.mor[st.c.identity(o)] = id;
                if st.injective {
                    st.used_mor[id] = true;
                }
            }
            let go = morphisms(st, 0, visit);
            if st.injective {
                for o in 0..st.c.num_objects() {
                    st.used_mor[st.d.identity(st.obj[o])] = false;
                }
            }
            return go;
        }
        for x in 0..st.d.num_objects() {
            if st.injective {
                if st.used_obj[x] {
                    continue;
                }
                let ok = (0..i).chain(std::iter::once(i)).all(|b| {
                    let yb = if b == i { x } else { st.obj[b] };
                    st.c.hom(i, b).len() == st.d.hom(x, yb).len()
                        && st.c.hom(b, i).len() == st.d.hom(yb, x).len()
                });
                if !ok {
                    continue;
                }
                st.used_obj[x] = true;
            }
            st.obj[i] = x;
            let go = objects(st, i + 1, visit);
            if st.injective {
                st.used_obj[x] = false;
            }
            if !go {
                return false;
            }
        }
        true
    }

    fn morphisms(
        st: &mut St,
        p: usize,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        if p == st.nonid.len() {
            return visit(&st.obj, &st.mor);
        }
        let m = st.nonid[p];
        let (a, b) = (st.obj[st.c.src(m)], st.obj[st.c.tgt(m)]);
        let cands: Vec<usize> = st.d.hom(a, b).to_vec();
        for y in cands {
            if st.injective && st.used_mor[y] {
                continue;
            }
            st.mor[m] = y;
            let ok = st.checks[p]
                .iter()
                .all(|&(g, f, h)| st.mor[h] == st.d.comp(st.mor[g], st.mor[f]));
            if !ok {
                continue;
            }
            if st.injective {
                st.used_mor[y] = true;
            }
            let go = morphisms(st, p + 1, visit);
            if st.injective {
                st.used_mor[y] = false;
            }
            if !go {
                return false;
            }
        }
        true
    }

    let mut st = St {
        c,
        d,
        injective,
        nonid,
        checks,
        obj: vec![usize::MAX; c.num_objects()],
        mor: vec![usize::MAX; c.num_morphisms()],
        used_obj: vec![false; d.num_objects()],
        used_mor: vec![false; d.num_morphisms()],
    };
    objects(&mut st, 0, visit);
}

/// All functors `C → D`, lexicographically ordered by (object images,
/// morphism images).
pub fn enumerate_functors(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Vec<Functor> {
    let mut out = Vec::new();
    search_functors(c, d, false, &mut |o, m| {
        out.push(Functor {
            source: c.clone(),
            target: d.clone(),
            object_map: o.to_vec(),
            morphism_map: m.to_vec(),
        });
        true
    });
    out
}

pub fn count_functors(c: &FinCat, d: &FinCat) -> usize {
    let mut n = 0;
    search_functors(c, d, false, &mut |_, _| {
        n += 1;
        true
    });
    n
}

/// An isomorphism of categories, if one exists.
pub fn find_isomorphism(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Option<Functor> {
    let mut out = None;
    search_functors(c, d, true, &mut |o, m| {
        out = Some(Functor {
            source: c.clone(),
            target: d.clone(),
            object_map: o.to_vec(),
            morphism_map: m.to_vec(),
        });
        false
    });
    out
}

pub fn is_isomorphic(c: &FinCat, d: &FinCat) -> bool {
    let mut found = false;
    search_functors(c, d, true, &mut |_, _| {
        found = true;
        false
    });
    found
}

/// All natural transformations `F ⇒ G`, ordered lexicographically by
/// components.
pub fn enumerate_nat_trans(f: &Functor, g: &Functor) -> Vec<NatTrans> {
    let c = &*f.source;
    let d = &*f.target;
    let n = c.num_objects();
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in 0..c.num_morphisms() {
        if !c.is_identity(m) {
            checks[c.src(m).max(c.tgt(m))].push(m);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    fn rec(
        i: usize,
        c: &FinCat,
        d: &FinCat,
        f: &Functor,
        g: &Functor,
        checks: &[Vec<usize>],
        comp: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == c.num_objects() {
            out.push(comp.clone());
            return;
        }
        for &a in d.hom(f.object_map[i], g.object_map[i]) {
            comp[i] = a;
            let ok = checks[i].iter().all(|&m| {
                d.comp(g.morphism_map[m], comp[c.src(m)]) == d.comp(comp[c.tgt(m)], f.morphism_map[m])
            });
            if ok {
                rec(i + 1, c, d, f, g, checks, comp, out);
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, c, d, f, g, &checks, &mut comp, &mut raw);
    for components in raw {
        out.push(NatTrans {
            source: f.clone(),
            target: g.clone(),
            components,
        });
    }
    out
}

/// `Fun(C, D)` together with the functors and transformations behind its
/// objects and morphisms.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub cat: FinCat,
    pub functors: Vec<Functor>,
    pub transformations: Vec<NatTrans>,
    /// functors[i] is object object_of[i] of `cat`
    pub object_of: Vec<usize>,
    pub morphism_of: Vec<usize>,
}

impl FunctorCategory {
    pub fn new(c: &Arc<FinCat>, d: &Arc<FinCat>) -> FunctorCategory {
        let functors = enumerate_functors(c, d);
        let names: Vec<String> = functors.iter().map(|f| f.name()).collect();
        let mut transformations = Vec::new();
        let mut morphisms = Vec::new();
        let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let mut identity = vec![0; functors.len()];
        for (i, fi) in functors.iter().enumerate() {
            for (j, gj) in functors.iter().enumerate() {
                for t in enumerate_nat_trans(fi, gj) {
                    let comps: Vec<&str> =
                        t.components.iter().map(|&m| d.morphism_name(m)).collect();
                    let k = morphisms.len();
                    if i == j && t.components.iter().all(|&m| d.is_identity(m)) {
                        identity[i] = k;
                    }
                    morphisms.push(Morphism {
                        name: format!("{}=>{}:[{}]", names[i], names[j], comps.join(",")),
                        src: i,
                        tgt: j,
                    });
                    index.insert((i, j, t.components.clone()), k);
                    transformations.push(t);
                }
            }
        }
        let tr = &transformations;
        let cat = FinCat::from_fn(names.clone(), morphisms.clone(), identity, |g, f| {
            let comps: Vec<usize> = tr[g]
                .components
                .iter()
                .zip(&tr[f].components)
                .map(|(&b, &a)| d.comp(b, a))
                .collect();
            index[&(morphisms[f].src, morphisms[g].tgt, comps)]
        })
        .expect("functor category is valid");
        let object_of = names.iter().map(|n| cat.object_index(n).unwrap()).collect();
        let morphism_of = morphisms
            .iter()
            .map(|m| cat.morphism_index(&m.name).unwrap())
            .collect();
        FunctorCategory {
            cat,
            functors,
            transformations,
            object_of,
            morphism_of,
        }
    }
}

pub fn functor_category(c: &Arc<FinCat>, d: &Arc<FinCat>) -> FinCat {
    FunctorCategory::new(c, d).cat
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EquivalenceFailure {
    NotFaithful { source: String, target: String },
    NotFull { source: String, target: String },
    NotEssentiallySurjective { object: String },
}

pub fn is_categorical_equivalence(f: &Functor) -> Verdict<EquivalenceFailure> {
    let (c, d) = (&*f.source, &*f.target);
    for a in 0..c.num_objects() {
        for b in 0..c.num_objects() {
            let images: BTreeSet<usize> =
                c.hom(a, b).iter().map(|&m| f.morphism_map[m]).collect();
            let names = || (c.objects()[a].clone(), c.objects()[b].clone());
            if images.len() != c.hom(a, b).len() {
                let (source, target) = names();
                return Verdict::Fails(EquivalenceFailure::NotFaithful { source, target });
            }
            if images.len() != d.hom(f.object_map[a], f.object_map[b]).len() {
                let (source, target) = names();
                return Verdict::Fails(EquivalenceFailure::NotFull { source, target });
            }
        }
    }
    let classes = tau0(d);
    let mut class_of = vec![0; d.num_objects()];
    for (k, cl) in classes.iter().enumerate() {
        for &o in cl {
            class_of[o] = k;
        }
    }
    let hit: BTreeSet<usize> = f.object_map.iter().map(|&o| class_of[o]).collect();
    for o in 0..d.num_objects() {
        if !hit.contains(&class_of[o]) {
            return Verdict::Fails(EquivalenceFailure::NotEssentiallySurjective {
                object: d.objects()[o].clone(),
            });
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnliftableIso {
    pub object: String,
    pub iso: String,
}

pub fn is_isofibration(f: &Functor) -> Verdict<UnliftableIso> {
    let (c, d) = (&*f.source, &*f.target);
    for x in 0..c.num_objects() {
        let fx = f.object_map[x];
        for y in 0..d.num_objects() {
            for &iso in d.hom(fx, y) {
                if d.inverse(iso).is_none() {
                    continue;
                }
                let lifted = (0..c.num_objects()).any(|x2| {
                    c.hom(x, x2)
                        .iter()
                        .any(|&g| f.morphism_map[g] == iso && c.inverse(g).is_some())
                });
                if !lifted {
                    return Verdict::Fails(UnliftableIso {
                        object: c.objects()[x].clone(),
                        iso: d.morphism_name(iso).to_string(),
                    });
                }
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn interval_counts() {
        for (n, m) in [(0, 1), (1, 3), (2, 6), (3, 10)] {
            let c = interval_category(n);
            assert_eq!(c.num_objects(), n + 1);
            assert_eq!(c.num_morphisms(), m);
            assert_eq!(m, (n + 1) * (n + 2) / 2);
        }
    }

    #[test]
    fn groupoid_counts() {
        for m in 0..4 {
            let c = groupoid_interval(m);
            assert_eq!(c.num_morphisms(), (m + 1) * (m + 1));
            assert!(c.is_groupoid());
        }
    }

    #[test]
    fn make_category_examples() {
        let t = make_category(&CategorySpec::default().object("x")).unwrap();
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
        let two = make_category(
            &CategorySpec::default()
                .object("0")
                .object("1")
                .object("2")
                .morphism("a", "0", "1")
                .morphism("b", "1", "2")
                .morphism("c", "0", "2")
                .composite("b", "a", "c"),
        )
        .unwrap();
        assert_eq!((two.num_objects(), two.num_morphisms()), (3, 6));
        assert!(is_isomorphic(&two, &interval_category(2)));
    }

    #[test]
    fn make_category_reports_associativity_triple() {
        // one object, e∘e = f, f∘e = e, e∘f = f, f∘f = f:
        // (e∘e)∘e = f∘e = e but e∘(e∘e) = e∘f = f
        let spec = CategorySpec::default()
            .object("*")
            .morphism("e", "*", "*")
            .morphism("f", "*", "*")
            .composite("e", "e", "f")
            .composite("f", "e", "e")
            .composite("e", "f", "f")
            .composite("f", "f", "f");
        match make_category(&spec) {
            Err(Error::Associativity { .. }) => {}
            other => panic!("expected associativity error, got {other:?}"),
        }
    }

    #[test]
    fn make_category_reports_missing_and_dangling() {
        let missing = CategorySpec::default()
            .object("0")
            .object("1")
            .object("2")
            .morphism("a", "0", "1")
            .morphism("b", "1", "2");
        assert_eq!(
            make_category(&missing),
            Err(Error::MissingComposite {
                g: "b".into(),
                f: "a".into()
            })
        );
        let dangling = CategorySpec::default().object("0").morphism("a", "0", "9");
        assert!(matches!(make_category(&dangling), Err(Error::Dangling { .. })));
    }

    #[test]
    fn iso_subcategory_examples() {
        let i2 = iso_subcategory(&interval_category(2));
        assert_eq!((i2.num_objects(), i2.num_morphisms()), (3, 3));
        let g = groupoid_interval(1);
        assert!(is_isomorphic(&iso_subcategory(&g), &g));
        let e = iso_subcategory(&walking_idempotent());
        assert!(is_isomorphic(&e, &terminal()));
    }

    #[test]
    fn functor_category_examples() {
        let d = arc(interval_category(2));
        let f0 = functor_category(&arc(terminal()), &d);
        assert!(is_isomorphic(&f0, &d));
        let f11 = functor_category(&arc(interval_category(1)), &arc(interval_category(1)));
        assert_eq!((f11.num_objects(), f11.num_morphisms()), (3, 6));
        let src = arc(product_category(&interval_category(1), &groupoid_interval(1)));
        let f = functor_category(&src, &arc(groupoid_interval(1)));
        assert_eq!(f.num_objects(), 16);
    }

    #[test]
    fn tau0_examples() {
        assert_eq!(tau0(&groupoid_interval(1)).len(), 1);
        assert_eq!(tau0(&interval_category(2)).len(), 3);
        assert_eq!(
            tau0(&product_category(&interval_category(1), &groupoid_interval(1))).len(),
            2
        );
    }

    #[test]
    fn equivalence_examples() {
        let two = arc(interval_category(2));
        assert!(is_categorical_equivalence(&Functor::identity(&two)).holds());
        let i1 = arc(groupoid_interval(1));
        let pt = arc(terminal());
        let bang = enumerate_functors(&i1, &pt).remove(0);
        assert!(is_categorical_equivalence(&bang).holds());
        let one = arc(interval_category(1));
        let incl = enumerate_functors(&pt, &one).remove(0);
        assert_eq!(
            is_categorical_equivalence(&incl),
            Verdict::Fails(EquivalenceFailure::NotEssentiallySurjective {
                object: "1".into()
            })
        );
    }

    #[test]
    fn isofibration_examples() {
        let i1 = arc(groupoid_interval(1));
        let pt = arc(terminal());
        for f in enumerate_functors(&i1, &arc(interval_category(2))) {
            assert!(is_isofibration(&f).holds());
        }
        assert!(is_isofibration(&enumerate_functors(&i1, &pt)[0]).holds());
        let incl = enumerate_functors(&pt, &i1).remove(0);
        assert_eq!(
            is_isofibration(&incl),
            Verdict::Fails(UnliftableIso {
                object: "0".into(),
                iso: "0_1".into()
            })
        );
    }

    #[test]
    fn enumeration_examples() {
        let d = arc(walking_idempotent());
        assert_eq!(enumerate_functors(&arc(terminal()), &d).len(), d.num_objects());
        assert_eq!(
            enumerate_functors(&arc(interval_category(1)), &arc(interval_category(2))).len(),
            6
        );
        let one = arc(interval_category(1));
        let fs = enumerate_functors(&one, &one);
        let const0 = fs.iter().find(|f| f.object_map == vec![0, 0]).unwrap();
        let const1 = fs.iter().find(|f| f.object_map == vec![1, 1]).unwrap();
        assert_eq!(enumerate_nat_trans(const0, const1).len(), 1);
    }
}
