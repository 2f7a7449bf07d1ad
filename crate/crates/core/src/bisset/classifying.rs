use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{interval_category, iso_subcategory, FinCat, Functor, FunctorCategory};
use crate::sset::{composable_strings, nerve, SSetMap};

use super::{BiSSetMap, Tables, TruncBiSSet, Window};

/// A functor `[n] × I[m] → C`, recorded by its bottom row (a string of `n`
/// morphisms, or the object when `n = 0`) and, for each column, the string
/// of `m` isomorphisms going up. The other horizontal arrows are forced by
/// commutativity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Key {
    row: Vec<u32>,
    cols: Vec<Vec<u32>>,
}

impl Key {
    /// The object at `(a, b)` of `[n] × I[m]`.
    pub(crate) fn object(&self, c: &FinCat, n: usize, (a, b): (usize, usize)) -> usize {
        if b == 0 {
            row_object(c, n, &self.row, a)
        } else {
            c.tgt(self.cols[a][b - 1] as usize)
        }
    }

    /// The image of the arrow `(a, b) → (a2, b2)`, `a <= a2`: down column
    /// `a`, along the bottom row, then up column `a2`.
    pub(crate) fn arrow(&self, c: &FinCat, n: usize, (a, b): (usize, usize), (a2, b2): (usize, usize)) -> usize {
        let mut f = c.identity(self.object(c, n, (a, b)));
        for t in (0..b).rev() {
            let inv = c.inverse(self.cols[a][t] as usize).expect("columns are isomorphisms");
            f = c.comp(inv, f);
        }
        for i in a..a2 {
            f = c.comp(self.row[i] as usize, f);
        }
        for t in 0..b2 {
            f = c.comp(self.cols[a2][t] as usize, f);
        }
        f
    }
}

fn row_object(c: &FinCat, n: usize, row: &[u32], i: usize) -> usize {
    if n == 0 {
        row[0] as usize
    } else if i < n {
        c.src(row[i] as usize)
    } else {
        c.tgt(row[n - 1] as usize)
    }
}

fn strings(c: &FinCat, len: usize, start: Option<usize>, iso: bool) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = match start {
        Some(_) if len == 0 => return vec![Vec::new()],
        Some(o) => (0..c.num_morphisms())
            .filter(|&f| c.src(f) == o && (!iso || c.inverse(f).is_some()))
            .map(|f| vec![f as u32])
            .collect(),
        None if len == 0 => return (0..c.num_objects() as u32).map(|o| vec![o]).collect(),
        None => (0..c.num_morphisms() as u32).map(|f| vec![f]).collect(),
    };
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                let end = c.tgt(*s.last().unwrap() as usize);
                (0..c.num_morphisms())
                    .filter(move |&f| c.src(f) == end && (!iso || c.inverse(f).is_some()))
                    .map(move |f| {
                        let mut t = s.clone();
                        t.push(f as u32);
                        t
                    })
            })
            .collect();
    }
    out
}

fn enumerate(c: &FinCat, n: usize, m: usize) -> Vec<Key> {
    let mut out = Vec::new();
    for row in strings(c, n, None, false) {
        let mut partial: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for i in 0..=n {
            let o = row_object(c, n, &row, i);
            let choices = strings(c, m, Some(o), true);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(s.clone());
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|cols| Key {
            row: row.clone(),
            cols,
        }));
    }
    out.sort();
    out
}

/// Nerve face `k` of a string of length `len >= 1`.
fn string_face(c: &FinCat, s: &[u32], k: usize, as_object: bool) -> Vec<u32> {
    let len = s.len();
    if len == 1 && as_object {
        let f = s[0] as usize;
        return vec![if k == 0 { c.tgt(f) } else { c.src(f) } as u32];
    }
    if k == 0 {
        s[1..].to_vec()
    } else if k == len {
        s[..len - 1].to_vec()
    } else {
        let mut t = s[..k - 1].to_vec();
        t.push(c.comp(s[k] as usize, s[k - 1] as usize) as u32);
        t.extend_from_slice(&s[k + 1..]);
        t
    }
}

/// Nerve degeneracy `k` of a string starting at `start`.
fn string_degen(c: &FinCat, s: &[u32], start: usize, k: usize) -> Vec<u32> {
    let o = if k == 0 { start } else { c.tgt(s[k - 1] as usize) };
    let mut t = s.to_vec();
    t.insert(k, c.identity(o) as u32);
    t
}

fn hface(c: &FinCat, key: &Key, k: usize) -> Key {
    let mut cols = key.cols.clone();
    cols.remove(k);
    Key {
        row: string_face(c, &key.row, k, true),
        cols,
    }
}

fn vface(c: &FinCat, n: usize, m: usize, key: &Key, k: usize) -> Key {
    let row = if k > 0 {
        key.row.clone()
    } else if n == 0 {
        vec![c.tgt(key.cols[0][0] as usize) as u32]
    } else {
        (0..n)
            .map(|i| {
                let up = key.cols[i][0] as usize;
                let inv = c.inverse(up).expect("columns are isomorphisms");
                let h = c.comp(key.row[i] as usize, inv);
                c.comp(key.cols[i + 1][0] as usize, h) as u32
            })
            .collect()
    };
    let cols = key
        .cols
        .iter()
        .map(|s| if m == 1 { Vec::new() } else { string_face(c, s, k, false) })
        .collect();
    Key { row, cols }
}

fn hdegen(c: &FinCat, n: usize, key: &Key, k: usize) -> Key {
    let row = if n == 0 {
        vec![c.identity(key.row[0] as usize) as u32]
    } else {
        string_degen(c, &key.row, c.src(key.row[0] as usize), k)
    };
    let mut cols = key.cols.clone();
    cols.insert(k, key.cols[k].clone());
    Key { row, cols }
}

fn vdegen(c: &FinCat, n: usize, key: &Key, k: usize) -> Key {
    let cols = key
        .cols
        .iter()
        .enumerate()
        .map(|(i, s)| string_degen(c, s, row_object(c, n, &key.row, i), k))
        .collect();
    Key {
        row: key.row.clone(),
        cols,
    }
}

fn name(c: &FinCat, n: usize, m: usize, key: &Key) -> String {
    let row = if n == 0 {
        c.objects()[key.row[0] as usize].clone()
    } else {
        key.row
            .iter()
            .map(|&f| c.morphism_name(f as usize))
            .collect::<Vec<_>>()
            .join(",")
    };
    if m == 0 {
        return row;
    }
    let cols: Vec<String> = key
        .cols
        .iter()
        .map(|s| {
            s.iter()
                .map(|&f| c.morphism_name(f as usize))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("{row}[{}]", cols.join(";"))
}

/// Longest string of composable non-identity morphisms.
fn longest_chain(c: &FinCat, cap: usize) -> usize {
    let mut best = vec![0usize; c.num_objects()];
    for len in 1..=cap + 1 {
        let mut next = vec![0usize; c.num_objects()];
        for f in 0..c.num_morphisms() {
            if !c.is_identity(f) && best[c.src(f)] + 1 >= len {
                next[c.tgt(f)] = len;
            }
        }
        if next.iter().all(|&l| l < len) {
            return len - 1;
        }
        for (b, n) in best.iter_mut().zip(next) {
            *b = (*b).max(n);
        }
    }
    cap + 1
}

pub(crate) struct Built {
    pub x: TruncBiSSet,
    /// Functor of each simplex, by slot.
    pub keys: Vec<Vec<Key>>,
}

pub(crate) fn build(c: &FinCat, window: Window) -> Result<Built> {
    let w = window;
    let size = (w.p + 1) * (w.q + 1);
    let mut keys: Vec<Vec<Key>> = vec![Vec::new(); size];
    let mut index: Vec<HashMap<Key, u32>> = vec![HashMap::new(); size];
    for (n, m) in w.bidegrees() {
        let ks = enumerate(c, n, m);
        index[w.slot(n, m)] = ks.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        keys[w.slot(n, m)] = ks;
    }
    let look = |n: usize, m: usize, k: &Key| index[w.slot(n, m)][k];
    let tables: Vec<Tables> = w
        .bidegrees()
        .into_iter()
        .map(|(n, m)| {
            let ks = &keys[w.slot(n, m)];
            let mut t = Tables {
                count: ks.len(),
                ..Tables::default()
            };
            for key in ks {
                if n >= 1 {
                    t.hface.extend((0..=n).map(|k| look(n - 1, m, &hface(c, key, k))));
                }
                if m >= 1 {
                    t.vface.extend((0..=m).map(|k| look(n, m - 1, &vface(c, n, m, key, k))));
                }
                if w.contains(n + 1, m) {
                    t.hdegen.extend((0..=n).map(|k| look(n + 1, m, &hdegen(c, n, key, k))));
                }
                if w.contains(n, m + 1) {
                    t.vdegen.extend((0..=m).map(|k| look(n, m + 1, &vdegen(c, n, key, k))));
                }
            }
            t
        })
        .collect();
    let x = TruncBiSSet::from_tables(w, tables, |(n, m), i| name(c, n, m, &keys[w.slot(n, m)][i]))?;
    let isos_trivial = (0..c.num_morphisms()).all(|f| c.is_identity(f) || c.inverse(f).is_none());
    let skeletal = isos_trivial
        && w.row_top(0)
            .is_some_and(|top| longest_chain(c, top) <= top);
    Ok(Built {
        x: x.with_flags(skeletal, true),
        keys,
    })
}

/// The classifying diagram: simplices of bidegree `(n, m)` are the functors
/// `[n] × I[m] → C`.
pub fn classifying_diagram(c: &FinCat, window: Window) -> TruncBiSSet {
    build(c, window).expect("classifying diagrams are valid").x
}

/// The map of classifying diagrams induced by a functor.
pub fn classifying_map(f: &Functor, window: Window) -> Result<BiSSetMap> {
    let (c, d) = (&f.source, &f.target);
    let src = build(c, window)?;
    let tgt = build(d, window)?;
    let w = window;
    let mut levels = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
    for (n, m) in w.bidegrees() {
        let s = w.slot(n, m);
        let index: HashMap<&Key, u32> = tgt.keys[s].iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        levels[s] = src.keys[s]
            .iter()
            .map(|k| {
                let row = if n == 0 {
                    vec![f.object_map[k.row[0] as usize] as u32]
                } else {
                    k.row.iter().map(|&g| f.morphism_map[g as usize] as u32).collect()
                };
                let cols = k
                    .cols
                    .iter()
                    .map(|s| s.iter().map(|&g| f.morphism_map[g as usize] as u32).collect())
                    .collect();
                index
                    .get(&Key { row, cols })
                    .copied()
                    .ok_or_else(|| Error::NotAMap("functor image outside the diagram".into()))
            })
            .collect::<Result<_>>()?;
    }
    Ok(BiSSetMap::from_slots_unchecked(
        Arc::new(src.x),
        Arc::new(tgt.x),
        levels,
    ))
}

/// The comparison from column `n` of the classifying diagram to the nerve
/// of the maximal subgroupoid of `Fun([n], C)`: a functor `[n] × I[m] → C`
/// is read as the string of natural isomorphisms between its rows.
pub fn column_comparison(c: &FinCat, window: Window, n: usize) -> Result<SSetMap> {
    compare_column(&build(c, window)?, c, window, n)
}

/// [`column_comparison`] for every column of the window.
pub fn column_comparisons(c: &FinCat, window: Window) -> Result<Vec<SSetMap>> {
    let built = build(c, window)?;
    (0..=window.p)
        .filter(|&n| window.column_top(n).is_some())
        .map(|n| compare_column(&built, c, window, n))
        .collect()
}

fn compare_column(built: &Built, c: &FinCat, window: Window, n: usize) -> Result<SSetMap> {
    let column = Arc::new(built.x.column(n)?);
    let top = column.dim();
    let shape = Arc::new(interval_category(n));
    let fc = FunctorCategory::new(&shape, &Arc::new(c.clone()));
    let iso = iso_subcategory(&fc.cat);
    let object: HashMap<&[usize], usize> = fc
        .functors
        .iter()
        .zip(&fc.object_of)
        .map(|(f, &o)| (f.morphism_map.as_slice(), o))
        .collect();
    let arrow: HashMap<(usize, usize, &[usize]), usize> = fc
        .transformations
        .iter()
        .zip(&fc.morphism_of)
        .filter_map(|(t, &m)| {
            let i = iso.morphism_index(fc.cat.morphism_name(m))?;
            Some(((fc.cat.src(m), fc.cat.tgt(m), t.components.as_slice()), i))
        })
        .collect();
    let strings = composable_strings(&iso, top);
    let missing = || Error::NotAMap("column cell without a counterpart in the nerve".into());
    let mut levels = Vec::with_capacity(top + 1);
    for (m, level) in strings.iter().enumerate() {
        let index: HashMap<&[u32], u32> = level.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();
        let cells = built.keys[window.slot(n, m)]
            .iter()
            .map(|key| {
                let row = |b: usize| -> Result<usize> {
                    let map: Vec<usize> = shape
                        .morphisms()
                        .iter()
                        .map(|mu| key.arrow(c, n, (mu.src, b), (mu.tgt, b)))
                        .collect();
                    object.get(map.as_slice()).copied().ok_or_else(missing)
                };
                let string: Vec<u32> = if m == 0 {
                    vec![row(0)? as u32]
                } else {
                    (1..=m)
                        .map(|k| {
                            let comps: Vec<usize> = (0..=n).map(|a| key.arrow(c, n, (a, k - 1), (a, k))).collect();
                            arrow
                                .get(&(row(k - 1)?, row(k)?, comps.as_slice()))
                                .map(|&i| i as u32)
                                .ok_or_else(missing)
                        })
                        .collect::<Result<_>>()?
                };
                index.get(string.as_slice()).copied().ok_or_else(missing)
            })
            .collect::<Result<Vec<u32>>>()?;
        levels.push(cells);
    }
    SSetMap::new(column, Arc::new(nerve(&iso, top)), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        enumerate_functors, groupoid_interval, interval_category, product_category, terminal,
        walking_idempotent,
    };
    use crate::sset::{is_isomorphic, nerve};

    #[test]
    fn counts_are_functor_counts() {
        let w = Window::new(2, 2);
        for c in [interval_category(1), groupoid_interval(1), walking_idempotent()] {
            let x = classifying_diagram(&c, w);
            let c = Arc::new(c);
            for (n, m) in w.bidegrees() {
                let shape = Arc::new(product_category(&interval_category(n), &groupoid_interval(m)));
                assert_eq!(x.count(n, m), enumerate_functors(&shape, &c).len(), "({n},{m})");
            }
        }
    }

    #[test]
    fn chaotic_counts() {
        let x = classifying_diagram(&groupoid_interval(1), Window::new(1, 1));
        assert_eq!(x.count(1, 1), 16);
        let t = classifying_diagram(&terminal(), Window::new(3, 3));
        assert!(t.counts().iter().all(|&(_, k)| k == 1));
    }

    #[test]
    fn columns_are_nerves_of_isomorphism_groupoids() {
        for c in [interval_category(1), groupoid_interval(1), walking_idempotent()] {
            for n in 0..=2 {
                let f = column_comparison(&c, Window::new(2, 2), n).unwrap();
                assert!(f.is_isomorphism(), "n = {n}");
            }
        }
    }

    #[test]
    fn row_zero_is_the_nerve() {
        for c in [interval_category(2), walking_idempotent(), groupoid_interval(1)] {
            let x = classifying_diagram(&c, Window::new(2, 2));
            assert!(is_isomorphic(&x.row(0).unwrap(), &nerve(&c, 2)));
        }
    }

    #[test]
    fn skeletal_flag() {
        assert!(classifying_diagram(&interval_category(1), Window::new(2, 2)).is_skeletal());
        assert!(!classifying_diagram(&interval_category(2), Window::new(1, 2)).is_skeletal());
        assert!(!classifying_diagram(&groupoid_interval(1), Window::new(2, 2)).is_skeletal());
    }

    #[test]
    fn induced_maps_are_maps() {
        let c = Arc::new(groupoid_interval(1));
        let d = Arc::new(interval_category(0));
        let f = enumerate_functors(&c, &d).remove(0);
        let g = classifying_map(&f, Window::new(2, 2)).unwrap();
        let levels = g
            .domain()
            .bidegrees()
            .into_iter()
            .map(|(n, m)| ((n, m), g.level(n, m).to_vec()))
            .collect();
        assert!(BiSSetMap::new(g.source.clone(), g.target.clone(), levels).is_ok());
    }
}
