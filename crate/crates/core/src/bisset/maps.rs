use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{TruncBiSSet, Window};

/// A bisimplicial map, stored on every bidegree of `domain`, the part of
/// the source window also present in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSSetMap {
    pub source: Arc<TruncBiSSet>,
    pub target: Arc<TruncBiSSet>,
    domain: Window,
    // indexed by slot in the source window
    levels: Vec<Vec<u32>>,
}

fn common(x: &TruncBiSSet, y: &TruncBiSSet) -> Window {
    x.window().meet(&y.window())
}

impl BiSSetMap {
    /// Checks that the level maps commute with every face and degeneracy.
    pub fn new(
        source: Arc<TruncBiSSet>,
        target: Arc<TruncBiSSet>,
        levels: HashMap<(usize, usize), Vec<u32>>,
    ) -> Result<BiSSetMap> {
        let domain = common(&source, &target);
        let w = source.window();
        let mut slots = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        for (n, m) in domain.bidegrees() {
            let l = levels
                .get(&(n, m))
                .ok_or_else(|| Error::NotAMap(format!("no level map at ({n},{m})")))?;
            if l.len() != source.count(n, m) || l.iter().any(|&c| c as usize >= target.count(n, m)) {
                return Err(Error::NotAMap(format!("level ({n},{m}) has the wrong shape")));
            }
            slots[w.slot(n, m)] = l.clone();
        }
        let f = BiSSetMap {
            source,
            target,
            domain,
            levels: slots,
        };
        f.check()?;
        Ok(f)
    }

    /// Builds a map from generator images (by slot of the source window),
    /// extending to the bidegrees outside the search's free ones by unique
    /// fillers. Images given there must agree with the fillers.
    pub fn from_generator_images(
        source: Arc<TruncBiSSet>,
        target: Arc<TruncBiSSet>,
        gens: &[Vec<u32>],
    ) -> Result<BiSSetMap> {
        let search = BiMapSearch::new(&source, &target, false)?;
        let w = source.window();
        let mut padded = gens.to_vec();
        padded.resize((w.p + 1) * (w.q + 1), Vec::new());
        for &(n, m) in &search.free {
            if padded[w.slot(n, m)].len() != source.generators(n, m).len() {
                return Err(Error::NotAMap(format!("missing generator images at ({n},{m})")));
            }
        }
        let levels = search
            .extend(&padded)?
            .ok_or_else(|| Error::NotAMap("generator images admit no extension".into()))?;
        for (n, m) in search.domain.bidegrees() {
            let given = &padded[w.slot(n, m)];
            for (j, &c) in source.generators(n, m).iter().enumerate() {
                if let Some(&img) = given.get(j) {
                    if levels[w.slot(n, m)][c as usize] != img {
                        return Err(Error::NotAMap(format!(
                            "image of {} disagrees with its faces",
                            source.cell_name(n, m, c)
                        )));
                    }
                }
            }
        }
        let f = BiSSetMap::from_slots_unchecked(source, target, levels);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn from_slots_unchecked(
        source: Arc<TruncBiSSet>,
        target: Arc<TruncBiSSet>,
        levels: Vec<Vec<u32>>,
    ) -> BiSSetMap {
        let domain = common(&source, &target);
        BiSSetMap {
            source,
            target,
            domain,
            levels,
        }
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        for (n, m) in self.domain.bidegrees() {
            for c in 0..x.count(n, m) as u32 {
                let fc = self.image(n, m, c);
                let bad = |what: &str| {
                    Error::NotAMap(format!("{what} of {} not preserved", x.cell_name(n, m, c)))
                };
                for i in 0..=n {
                    if n >= 1 && self.image(n - 1, m, x.hface(n, m, c, i)) != y.hface(n, m, fc, i) {
                        return Err(bad(&format!("dh{i}")));
                    }
                    if self.domain.contains(n + 1, m)
                        && self.image(n + 1, m, x.hdegen(n, m, c, i)) != y.hdegen(n, m, fc, i)
                    {
                        return Err(bad(&format!("sh{i}")));
                    }
                }
                for j in 0..=m {
                    if m >= 1 && self.image(n, m - 1, x.vface(n, m, c, j)) != y.vface(n, m, fc, j) {
                        return Err(bad(&format!("dv{j}")));
                    }
                    if self.domain.contains(n, m + 1)
                        && self.image(n, m + 1, x.vdegen(n, m, c, j)) != y.vdegen(n, m, fc, j)
                    {
                        return Err(bad(&format!("sv{j}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &Arc<TruncBiSSet>) -> BiSSetMap {
        let w = x.window();
        let mut levels = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        for (n, m) in w.bidegrees() {
            levels[w.slot(n, m)] = (0..x.count(n, m) as u32).collect();
        }
        BiSSetMap::from_slots_unchecked(x.clone(), x.clone(), levels)
    }

    pub fn domain(&self) -> Window {
        self.domain
    }

    pub fn image(&self, n: usize, m: usize, c: u32) -> u32 {
        self.levels[self.source.window().slot(n, m)][c as usize]
    }

    pub fn level(&self, n: usize, m: usize) -> &[u32] {
        &self.levels[self.source.window().slot(n, m)]
    }

    /// Images of the generators of bidegree `(n, m)`.
    pub fn generator_images(&self, n: usize, m: usize) -> Vec<u32> {
        self.source
            .generators(n, m)
            .iter()
            .map(|&c| self.image(n, m, c))
            .collect()
    }

    /// `other ∘ self`, on the bidegrees where both are defined.
    pub fn then(&self, other: &BiSSetMap) -> BiSSetMap {
        let w = self.source.window();
        let d = self.domain.meet(&other.domain);
        let mut levels = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        for (n, m) in d.bidegrees() {
            levels[w.slot(n, m)] = self
                .level(n, m)
                .iter()
                .map(|&c| other.image(n, m, c))
                .collect();
        }
        let mut f = BiSSetMap::from_slots_unchecked(self.source.clone(), other.target.clone(), levels);
        f.domain = d;
        f
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.window() == self.target.window()
            && self.domain.bidegrees().into_iter().all(|(n, m)| {
                let mut seen = vec![false; self.target.count(n, m)];
                self.level(n, m).len() == seen.len()
                    && self
                        .level(n, m)
                        .iter()
                        .all(|&c| !std::mem::replace(&mut seen[c as usize], true))
            })
    }

    /// `generator ↦ image` lines for every generator in the domain.
    pub fn describe(&self) -> Vec<String> {
        let (x, y) = (&self.source, &self.target);
        self.domain
            .bidegrees()
            .into_iter()
            .flat_map(|(n, m)| {
                x.generators(n, m)
                    .iter()
                    .map(move |&c| {
                        format!(
                            "{} ↦ {}",
                            x.cell_name(n, m, c),
                            y.cell_name(n, m, self.image(n, m, c))
                        )
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// Backtracking search over generator images, bidegree by bidegree.
pub(crate) struct BiMapSearch<'a> {
    source: &'a TruncBiSSet,
    target: &'a TruncBiSSet,
    /// Bidegrees whose generators are chosen freely.
    free: Vec<(usize, usize)>,
    domain: Window,
    iso: bool,
    index: HashMap<(usize, usize), HashMap<Vec<u32>, Vec<u32>>>,
}

fn face_key(x: &TruncBiSSet, n: usize, m: usize, c: u32) -> Vec<u32> {
    let mut key = Vec::with_capacity(n + m + 2);
    if n >= 1 {
        key.extend_from_slice(x.faces(super::Dir::H, (n, m), c));
    }
    if m >= 1 {
        key.extend_from_slice(x.faces(super::Dir::V, (n, m), c));
    }
    key
}

impl<'a> BiMapSearch<'a> {
    pub fn new(source: &'a TruncBiSSet, target: &'a TruncBiSSet, iso: bool) -> Result<Self> {
        let domain = common(source, target);
        let gen_bidegrees: Vec<(usize, usize)> = source
            .generator_counts()
            .into_iter()
            .filter(|&(_, g)| g > 0)
            .map(|(d, _)| d)
            .collect();
        let free_window = if iso {
            if source.window() != target.window() {
                return Err(Error::DimMismatch("isomorphism search needs equal windows".into()));
            }
            source.window()
        } else if target.is_coskeletal() && source.window().covers(&Window::total2()) {
            Window::total2()
        } else if source.is_skeletal()
            && gen_bidegrees.iter().all(|&(n, m)| target.window().contains(n, m))
        {
            domain
        } else {
            return Err(Error::WindowInsufficient {
                what: "maps into a truncated bisimplicial set".into(),
                required: format!(
                    "a skeletal source with generators inside {} or a nerve-like target",
                    target.window()
                ),
            });
        };
        let free = free_window.bidegrees();
        let mut index = HashMap::new();
        for (n, m) in domain.bidegrees() {
            if n + m == 0 {
                continue;
            }
            let mut ix: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for c in 0..target.count(n, m) as u32 {
                if iso && target.is_degenerate(n, m, c) {
                    continue;
                }
                ix.entry(face_key(target, n, m, c)).or_default().push(c);
            }
            index.insert((n, m), ix);
        }
        Ok(BiMapSearch {
            source,
            target,
            free,
            domain,
            iso,
            index,
        })
    }

    fn slot(&self, n: usize, m: usize) -> usize {
        self.source.window().slot(n, m)
    }

    /// Image of a simplex given generator images at its base bidegree.
    pub fn cell_image(&self, gens: &[Vec<u32>], n: usize, m: usize, c: u32) -> u32 {
        let e = self.source.ez(n, m, c);
        let (l, lv) = (n - e.h.len(), m - e.v.len());
        let img = gens[self.slot(l, lv)][e.base as usize];
        self.target.degenerate(l, lv, img, &e.h, &e.v)
    }

    fn image_key(&self, gens: &[Vec<u32>], n: usize, m: usize, c: u32) -> Vec<u32> {
        face_key(self.source, n, m, c)
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                if n >= 1 && i <= n {
                    self.cell_image(gens, n - 1, m, f)
                } else {
                    self.cell_image(gens, n, m - 1, f)
                }
            })
            .collect()
    }

    /// Full level maps (by slot) from free generator images; `None` when
    /// some generator outside the free bidegrees has no filler.
    pub fn extend(&self, gens: &[Vec<u32>]) -> Result<Option<Vec<Vec<u32>>>> {
        let mut gens = gens.to_vec();
        for (n, m) in self.domain.bidegrees() {
            if self.free.contains(&(n, m)) {
                continue;
            }
            let mut row = Vec::new();
            for &c in self.source.generators(n, m) {
                let key = self.image_key(&gens, n, m, c);
                match self.index[&(n, m)].get(&key).map(|v| v.as_slice()) {
                    Some([one]) => row.push(*one),
                    None | Some([]) => return Ok(None),
                    Some(_) => {
                        return Err(Error::NotWellDefined(format!(
                            "no unique filler for {}",
                            self.source.cell_name(n, m, c)
                        )))
                    }
                }
            }
            let s = self.slot(n, m);
            gens[s] = row;
        }
        let w = self.source.window();
        let mut levels = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        for (n, m) in self.domain.bidegrees() {
            levels[self.slot(n, m)] = (0..self.source.count(n, m) as u32)
                .map(|c| self.cell_image(&gens, n, m, c))
                .collect();
        }
        Ok(Some(levels))
    }

    /// Calls `visit` with the generator images (by slot) of every choice
    /// on the free bidegrees, in lexicographic order; stops when `visit`
    /// returns false.
    pub fn run(&self, visit: &mut dyn FnMut(&[Vec<u32>]) -> bool) {
        if self.iso
            && (self.source.counts() != self.target.counts()
                || self.source.generator_counts() != self.target.generator_counts())
        {
            return;
        }
        let w = self.source.window();
        let mut gens: Vec<Vec<u32>> = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        let mut used: Vec<Vec<bool>> = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        for &(n, m) in &self.free {
            gens[self.slot(n, m)] = vec![u32::MAX; self.source.generators(n, m).len()];
            if self.iso {
                used[self.slot(n, m)] = vec![false; self.target.count(n, m)];
            }
        }
        self.assign(0, 0, &mut gens, &mut used, visit);
    }

    fn assign(
        &self,
        d: usize,
        j: usize,
        gens: &mut Vec<Vec<u32>>,
        used: &mut Vec<Vec<bool>>,
        visit: &mut dyn FnMut(&[Vec<u32>]) -> bool,
    ) -> bool {
        if d == self.free.len() {
            return visit(gens);
        }
        let (n, m) = self.free[d];
        if j == self.source.generators(n, m).len() {
            return self.assign(d + 1, 0, gens, used, visit);
        }
        let s = self.slot(n, m);
        let c = self.source.generators(n, m)[j];
        let all: Vec<u32>;
        let cands: &[u32] = if n + m == 0 {
            all = if self.iso {
                self.target.generators(0, 0).to_vec()
            } else {
                (0..self.target.count(0, 0) as u32).collect()
            };
            &all
        } else {
            let key = self.image_key(gens, n, m, c);
            match self.index[&(n, m)].get(&key) {
                Some(v) => v,
                None => return true,
            }
        };
        for &y in cands {
            if self.iso {
                if used[s][y as usize] {
                    continue;
                }
                used[s][y as usize] = true;
            }
            gens[s][j] = y;
            let go = self.assign(d, j + 1, gens, used, visit);
            if self.iso {
                used[s][y as usize] = false;
            }
            if !go {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` on every map `source → target` (as level maps by slot of
/// the source window); stops early when `visit` returns false.
pub fn for_each_bimap(
    source: &TruncBiSSet,
    target: &TruncBiSSet,
    visit: &mut dyn FnMut(&[Vec<u32>]) -> bool,
) -> Result<()> {
    let search = BiMapSearch::new(source, target, false)?;
    let mut err = None;
    search.run(&mut |gens| match search.extend(gens) {
        Ok(Some(levels)) => visit(&levels),
        Ok(None) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    });
    err.map_or(Ok(()), Err)
}

pub fn enumerate_bimaps(
    source: &Arc<TruncBiSSet>,
    target: &Arc<TruncBiSSet>,
) -> Result<Vec<BiSSetMap>> {
    let mut out = Vec::new();
    for_each_bimap(source, target, &mut |levels| {
        out.push(BiSSetMap::from_slots_unchecked(
            source.clone(),
            target.clone(),
            levels.to_vec(),
        ));
        true
    })?;
    Ok(out)
}

pub fn count_bimaps(source: &TruncBiSSet, target: &TruncBiSSet) -> Result<usize> {
    let mut n = 0;
    for_each_bimap(source, target, &mut |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// The lexicographically first isomorphism, if any.
pub fn find_bi_isomorphism(x: &Arc<TruncBiSSet>, y: &Arc<TruncBiSSet>) -> Option<BiSSetMap> {
    let search = BiMapSearch::new(x, y, true).ok()?;
    let mut found = None;
    search.run(&mut |gens| {
        if let Ok(Some(levels)) = search.extend(gens) {
            let f = BiSSetMap::from_slots_unchecked(x.clone(), y.clone(), levels);
            if f.is_isomorphism() && f.check().is_ok() {
                found = Some(f);
                return false;
            }
        }
        true
    });
    found
}

pub fn is_bi_isomorphic(x: &TruncBiSSet, y: &TruncBiSSet) -> bool {
    find_bi_isomorphism(&Arc::new(x.clone()), &Arc::new(y.clone())).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, terminal};
    use crate::sset::{boundary, standard_simplex};

    #[test]
    fn maps_between_boxes() {
        let d1 = standard_simplex(1, 2);
        let b = Arc::new(box_product(&d1, &d1));
        let t = Arc::new(terminal(b.window()));
        assert_eq!(count_bimaps(&b, &t).unwrap(), 1);
        // box of Δ¹ is skeletal, maps into itself are pairs of maps Δ¹ → Δ¹
        assert_eq!(count_bimaps(&b, &b).unwrap(), 9);
        assert!(find_bi_isomorphism(&b, &b).unwrap().is_isomorphism());
    }

    #[test]
    fn non_isomorphic_boxes() {
        let d1 = standard_simplex(1, 1);
        let s = boundary(1, 1);
        assert!(!is_bi_isomorphic(&box_product(&d1, &d1), &box_product(&s, &d1)));
    }

    #[test]
    fn map_validation_rejects_bad_levels() {
        let d1 = Arc::new(box_product(&standard_simplex(1, 1), &standard_simplex(0, 1)));
        let mut levels: HashMap<(usize, usize), Vec<u32>> = d1
            .window()
            .bidegrees()
            .into_iter()
            .map(|(n, m)| ((n, m), (0..d1.count(n, m) as u32).collect()))
            .collect();
        assert!(BiSSetMap::new(d1.clone(), d1.clone(), levels.clone()).is_ok());
        levels.get_mut(&(0, 0)).unwrap().swap(0, 1);
        assert!(BiSSetMap::new(d1.clone(), d1, levels).is_err());
    }
}
