use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::TruncSSet;

/// A map of truncated simplicial sets, stored as the image of every simplex
/// up to the smaller of the two truncation levels.
#[derive(Clone, Debug)]
pub struct SSetMap {
    pub source: Arc<TruncSSet>,
    pub target: Arc<TruncSSet>,
    levels: Vec<Vec<u32>>,
}

impl PartialEq for SSetMap {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl SSetMap {
    /// Checks that the level maps commute with faces and degeneracies.
    pub fn new(
        source: Arc<TruncSSet>,
        target: Arc<TruncSSet>,
        levels: Vec<Vec<u32>>,
    ) -> Result<SSetMap> {
        let top = source.dim().min(target.dim());
        if levels.len() != top + 1 {
            return Err(Error::NotAMap(format!("expected {} levels", top + 1)));
        }
        for (k, l) in levels.iter().enumerate() {
            if l.len() != source.count(k) || l.iter().any(|&v| v as usize >= target.count(k)) {
                return Err(Error::NotAMap(format!("level {k} has the wrong shape")));
            }
            for c in 0..source.count(k) as u32 {
                let img = l[c as usize];
                if k >= 1 {
                    for i in 0..=k {
                        if levels[k - 1][source.face(k, c, i) as usize] != target.face(k, img, i) {
                            return Err(Error::NotAMap(format!(
                                "face {i} of {}",
                                source.cell_name(k, c)
                            )));
                        }
                    }
                }
                if k < top {
                    for i in 0..=k {
                        if levels[k + 1][source.degen(k, c, i) as usize]
                            != target.degen(k, img, i)
                        {
                            return Err(Error::NotAMap(format!(
                                "degeneracy {i} of {}",
                                source.cell_name(k, c)
                            )));
                        }
                    }
                }
            }
        }
        Ok(SSetMap {
            source,
            target,
            levels,
        })
    }

    pub(crate) fn from_levels_unchecked(
        source: Arc<TruncSSet>,
        target: Arc<TruncSSet>,
        levels: Vec<Vec<u32>>,
    ) -> SSetMap {
        SSetMap {
            source,
            target,
            levels,
        }
    }

    /// Builds a map from the images of the generators of each level, extending
    /// along degeneracies and, for coskeletal targets, along faces.
    pub fn from_generator_images(
        source: Arc<TruncSSet>,
        target: Arc<TruncSSet>,
        images: &[Vec<u32>],
    ) -> Result<SSetMap> {
        let search = MapSearch::new(&source, &target, false)?;
        if images.len() <= search.level {
            return Err(Error::NotAMap("missing generator images".into()));
        }
        let levels = search.extend(images)?;
        SSetMap::new(source, target, levels)
    }

    pub fn identity(x: &Arc<TruncSSet>) -> SSetMap {
        let levels = (0..=x.dim()).map(|k| (0..x.count(k) as u32).collect()).collect();
        SSetMap {
            source: x.clone(),
            target: x.clone(),
            levels,
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn image(&self, k: usize, c: u32) -> u32 {
        self.levels[k][c as usize]
    }

    pub fn level(&self, k: usize) -> &[u32] {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    /// Images of the generators of level `k`.
    pub fn generator_images(&self, k: usize) -> Vec<u32> {
        self.source.generators(k).iter().map(|&c| self.image(k, c)).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SSetMap) -> SSetMap {
        let top = self.top().min(other.top());
        let levels = (0..=top)
            .map(|k| self.levels[k].iter().map(|&c| other.image(k, c)).collect())
            .collect();
        SSetMap {
            source: self.source.clone(),
            target: other.target.clone(),
            levels,
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim()
            && self.levels.iter().enumerate().all(|(k, l)| {
                let mut seen = vec![false; self.target.count(k)];
                l.len() == seen.len()
                    && l.iter().all(|&c| !std::mem::replace(&mut seen[c as usize], true))
            })
    }

    /// Renders the images of the generators as `name ↦ image` pairs.
    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        for k in 0..=self.top() {
            for (j, &c) in self.source.generators(k).iter().enumerate() {
                out.push(format!(
                    "{} ↦ {}",
                    self.source.generator_name(k, j),
                    self.target.cell_name(k, self.image(k, c))
                ));
            }
        }
        out
    }
}

/// Backtracking search over generator images.
pub(crate) struct MapSearch<'a> {
    source: &'a TruncSSet,
    target: &'a TruncSSet,
    /// Levels whose generators are chosen freely; higher levels follow.
    pub level: usize,
    top: usize,
    iso: bool,
    // index[k]: face tuple -> simplices of the target at level k
    index: Vec<HashMap<Vec<u32>, Vec<u32>>>,
    up_degree: Option<(Vec<Vec<u32>>, Vec<Vec<u32>>)>,
    // generators (level, ordinal) in the order they are chosen
    schedule: Vec<(usize, usize)>,
}

/// Orders generators up to `level` so that each comes right after the last
/// generator its faces depend on, which lets face constraints prune early.
fn schedule(x: &TruncSSet, level: usize) -> Vec<(usize, usize)> {
    let deps: Vec<Vec<Vec<(usize, usize)>>> = (0..=level)
        .map(|k| {
            x.generators(k)
                .iter()
                .map(|&c| {
                    if k == 0 {
                        return Vec::new();
                    }
                    x.faces(k, c)
                        .iter()
                        .map(|&f| {
                            let e = x.ez(k - 1, f);
                            let l = k - 1 - e.word.len();
                            (l, e.base as usize)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut placed: Vec<Vec<bool>> = (0..=level).map(|k| vec![false; x.generators(k).len()]).collect();
    let mut order = Vec::new();
    for j in 0..x.generators(0).len() {
        placed[0][j] = true;
        order.push((0, j));
        loop {
            let mut progress = false;
            for k in 1..=level {
                for j2 in 0..placed[k].len() {
                    if !placed[k][j2] && deps[k][j2].iter().all(|&(l, i)| placed[l][i]) {
                        placed[k][j2] = true;
                        order.push((k, j2));
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
    }
    order
}

fn face_index(y: &TruncSSet, k: usize, nondegenerate: bool) -> HashMap<Vec<u32>, Vec<u32>> {
    let mut ix: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    if k == 0 {
        return ix;
    }
    for c in 0..y.count(k) as u32 {
        if nondegenerate && y.is_degenerate(k, c) {
            continue;
        }
        ix.entry(y.faces(k, c).to_vec()).or_default().push(c);
    }
    ix
}

/// Number of times each generator appears as a face of a generator one
/// level up.
fn up_degrees(x: &TruncSSet) -> Vec<Vec<u32>> {
    (0..=x.dim())
        .map(|k| {
            let mut deg = vec![0u32; x.count(k)];
            if k < x.dim() {
                for &c in x.generators(k + 1) {
                    for &f in x.faces(k + 1, c) {
                        deg[f as usize] += 1;
                    }
                }
            }
            x.generators(k).iter().map(|&c| deg[c as usize]).collect()
        })
        .collect()
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a TruncSSet, target: &'a TruncSSet, iso: bool) -> Result<Self> {
        let top = source.dim().min(target.dim());
        let level = if iso {
            source.dim()
        } else {
            let mut best = None;
            if let Some(sk) = source.skeletal_dim() {
                if sk <= target.dim() {
                    best = Some(sk);
                }
            }
            if target.is_coskeletal() && source.dim() >= 2 {
                best = Some(best.map_or(2, |b: usize| b.min(2)));
            }
            best.ok_or_else(|| Error::WindowInsufficient {
                what: "maps into a truncated simplicial set".into(),
                required: format!(
                    "a skeletal source within level {} or a coskeletal target",
                    target.dim()
                ),
            })?
        };
        let index = (0..=top).map(|k| face_index(target, k, iso)).collect();
        let up_degree = iso.then(|| (up_degrees(source), up_degrees(target)));
        let schedule = schedule(source, level);
        Ok(MapSearch {
            source,
            target,
            level,
            top,
            iso,
            index,
            up_degree,
            schedule,
        })
    }

    /// Image of simplex `c` of level `k`, given generator images up to its
    /// base level.
    pub fn cell_image(&self, images: &[Vec<u32>], k: usize, c: u32) -> u32 {
        let s = self.source.ez(k, c);
        let l = k - s.word.len();
        self.target
            .degenerate(l, images[l][s.base as usize], &s.word)
    }

    /// Full level maps from generator images at levels up to `self.level`.
    pub fn extend(&self, images: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
        let mut imgs: Vec<Vec<u32>> = images[..=self.level.min(self.top)].to_vec();
        for k in self.level + 1..=self.top {
            let mut row = Vec::with_capacity(self.source.generators(k).len());
            for &c in self.source.generators(k) {
                let faces: Vec<u32> = self
                    .source
                    .faces(k, c)
                    .iter()
                    .map(|&f| self.cell_image(&imgs, k - 1, f))
                    .collect();
                match self.index[k].get(&faces).map(|v| v.as_slice()) {
                    Some([one]) => row.push(*one),
                    _ => {
                        return Err(Error::NotWellDefined(format!(
                            "no unique filler for {}",
                            self.source.cell_name(k, c)
                        )))
                    }
                }
            }
            imgs.push(row);
        }
        Ok((0..=self.top)
            .map(|k| {
                (0..self.source.count(k) as u32)
                    .map(|c| self.cell_image(&imgs, k, c))
                    .collect()
            })
            .collect())
    }

    /// Calls `visit` with the generator images of every map; stops when
    /// `visit` returns false.
    pub fn run(&self, visit: &mut dyn FnMut(&[Vec<u32>]) -> bool) {
        if self.iso {
            if self.source.dim() != self.target.dim()
                || self.source.counts() != self.target.counts()
                || self.source.generator_counts() != self.target.generator_counts()
            {
                return;
            }
        }
        let mut images: Vec<Vec<u32>> = (0..=self.level)
            .map(|k| vec![u32::MAX; self.source.generators(k).len()])
            .collect();
        let mut used: Vec<Vec<bool>> = (0..=self.level)
            .map(|k| vec![false; if self.iso { self.target.count(k) } else { 0 }])
            .collect();
        self.assign(0, &mut images, &mut used, visit);
    }

    fn assign(
        &self,
        step: usize,
        images: &mut Vec<Vec<u32>>,
        used: &mut Vec<Vec<bool>>,
        visit: &mut dyn FnMut(&[Vec<u32>]) -> bool,
    ) -> bool {
        let Some(&(k, j)) = self.schedule.get(step) else {
            return visit(images);
        };
        let c = self.source.generators(k)[j];
        let all: Vec<u32>;
        let cands: &[u32] = if k == 0 {
            all = if self.iso {
                self.target.generators(0).to_vec()
            } else {
                (0..self.target.count(0) as u32).collect()
            };
            &all
        } else {
            let faces: Vec<u32> = self
                .source
                .faces(k, c)
                .iter()
                .map(|&f| self.cell_image(images, k - 1, f))
                .collect();
            match self.index[k].get(&faces) {
                Some(v) => v,
                None => return true,
            }
        };
        for &y in cands {
            if self.iso {
                if used[k][y as usize] {
                    continue;
                }
                let (ds, dt) = self.up_degree.as_ref().unwrap();
                let ty = self.target.ez(k, y).base as usize;
                if ds[k][j] != dt[k][ty] {
                    continue;
                }
                used[k][y as usize] = true;
            }
            images[k][j] = y;
            let go = self.assign(step + 1, images, used, visit);
            if self.iso {
                used[k][y as usize] = false;
            }
            if !go {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` on every map `source → target` (as full level maps).
pub fn for_each_map(
    source: &TruncSSet,
    target: &TruncSSet,
    visit: &mut dyn FnMut(&[Vec<u32>]) -> bool,
) -> Result<()> {
    let search = MapSearch::new(source, target, false)?;
    let mut err = None;
    search.run(&mut |imgs| match search.extend(imgs) {
        Ok(levels) => visit(&levels),
        Err(e) => {
            err = Some(e);
            false
        }
    });
    err.map_or(Ok(()), Err)
}

/// Every map `source → target`, in lexicographic order of generator images.
///
/// The answer is exact when the source is skeletal within the target's
/// level or the target is coskeletal; otherwise the window is reported
/// insufficient.
pub fn enumerate_maps(source: &Arc<TruncSSet>, target: &Arc<TruncSSet>) -> Result<Vec<SSetMap>> {
    let mut out = Vec::new();
    for_each_map(source, target, &mut |levels| {
        out.push(levels.to_vec());
        true
    })?;
    out.sort();
    Ok(out
        .into_iter()
        .map(|levels| SSetMap::from_levels_unchecked(source.clone(), target.clone(), levels))
        .collect())
}

pub fn count_maps(source: &TruncSSet, target: &TruncSSet) -> Result<usize> {
    let search = MapSearch::new(source, target, false)?;
    let mut n = 0;
    if search.level >= search.top {
        search.run(&mut |_| {
            n += 1;
            true
        });
        return Ok(n);
    }
    let mut err = None;
    search.run(&mut |imgs| match search.extend(imgs) {
        Ok(_) => {
            n += 1;
            true
        }
        Err(e) => {
            err = Some(e);
            false
        }
    });
    err.map_or(Ok(n), Err)
}

/// An isomorphism of truncated simplicial sets, found by searching
/// generator bijections.
pub fn find_isomorphism(x: &Arc<TruncSSet>, y: &Arc<TruncSSet>) -> Option<SSetMap> {
    let search = MapSearch::new(x, y, true).ok()?;
    let mut found = None;
    search.run(&mut |imgs| {
        found = search.extend(imgs).ok();
        found.is_none()
    });
    found.map(|levels| SSetMap::from_levels_unchecked(x.clone(), y.clone(), levels))
}

pub fn is_isomorphic(x: &TruncSSet, y: &TruncSSet) -> bool {
    let Ok(search) = MapSearch::new(x, y, true) else {
        return false;
    };
    let mut found = false;
    search.run(&mut |_| {
        found = true;
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::interval_category;
    use crate::sset::{boundary, j_space, nerve, point, spine, standard_simplex};

    fn arc(x: TruncSSet) -> Arc<TruncSSet> {
        Arc::new(x)
    }

    #[test]
    fn points_pick_vertices() {
        let x = arc(j_space(2, 2));
        assert_eq!(enumerate_maps(&arc(point(2)), &x).unwrap().len(), 3);
    }

    #[test]
    fn edges_of_j1() {
        let n = count_maps(&standard_simplex(1, 1), &j_space(1, 1)).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn spine_into_nerve() {
        let n = count_maps(&spine(2, 2), &nerve(&interval_category(1), 2)).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn coskeletal_targets_extend_maps() {
        // 3-simplices of a nerve are determined by their 2-skeleton
        let x = arc(standard_simplex(3, 3));
        let y = arc(nerve(&interval_category(2), 3));
        let maps = enumerate_maps(&x, &y).unwrap();
        assert_eq!(maps.len(), 15);
        for m in &maps {
            SSetMap::new(x.clone(), y.clone(), m.levels().to_vec()).unwrap();
        }
    }

    #[test]
    fn insufficient_window_is_reported() {
        let x = boundary(3, 2);
        let y = boundary(2, 1);
        assert!(matches!(
            count_maps(&x, &y),
            Err(Error::WindowInsufficient { .. })
        ));
    }

    #[test]
    fn isomorphism_is_a_bijection() {
        let x = arc(nerve(&interval_category(2), 2));
        let y = arc(standard_simplex(2, 2));
        let f = find_isomorphism(&x, &y).unwrap();
        assert!(f.is_isomorphism());
        assert!(find_isomorphism(&y, &arc(spine(2, 2))).is_none());
    }
}
