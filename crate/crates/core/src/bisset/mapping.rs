use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::sset::{
    for_each_map, induced_cell_maps, standard_simplex, vertex_sequences, MapSearch, TruncSSet,
};

use super::maps::for_each_bimap;
use super::{box_product_in, product, Dir, TruncBiSSet, Window};

/// Maps `A → Z_{•,m}` (for `along = H`) or `A → Z_{n,•}` (for `along = V`),
/// assembled into a simplicial set by the operators in the other direction.
fn line_maps(a: &TruncSSet, z: &TruncBiSSet, along: Dir) -> Result<TruncSSet> {
    let across = along.other();
    let line = |i: usize| match along {
        Dir::H => z.row(i),
        Dir::V => z.column(i),
    };
    let at = |k: usize, i: usize| match along {
        Dir::H => (k, i),
        Dir::V => (i, k),
    };
    let lines_available = match across {
        Dir::V => z.window().q,
        Dir::H => z.window().p,
    };

    // keys[i]: maps into line i, by their images on levels 0..=key_level
    let key_level = MapSearch::new(a, &line(0)?, false)?.level;
    let mut keys: Vec<Vec<Vec<u32>>> = Vec::new();
    for i in 0..=lines_available {
        let target = line(i)?;
        if target.dim() < key_level || MapSearch::new(a, &target, false).is_err() {
            break;
        }
        let mut found = Vec::new();
        for_each_map(a, &target, &mut |levels| {
            found.push(levels[..=key_level].concat());
            true
        })?;
        found.sort();
        keys.push(found);
    }
    let top = keys.len() - 1;
    let counts: Vec<usize> = (0..=key_level).map(|k| a.count(k)).collect();
    let index: Vec<HashMap<&[u32], u32>> = keys
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, k)| (k.as_slice(), i as u32)).collect())
        .collect();
    let apply = |key: &[u32], i: usize, op: &dyn Fn((usize, usize), u32) -> u32| -> Vec<u32> {
        let mut out = Vec::with_capacity(key.len());
        let mut off = 0;
        for (k, &ck) in counts.iter().enumerate() {
            out.extend(key[off..off + ck].iter().map(|&c| op(at(k, i), c)));
            off += ck;
        }
        out
    };
    let mut face = vec![Vec::new(); top + 1];
    let mut degen = vec![Vec::new(); top + 1];
    for i in 0..=top {
        for key in &keys[i] {
            if i >= 1 {
                for j in 0..=i {
                    let f = apply(key, i, &|b, c| z.face(across, b, c, j));
                    face[i].push(*index[i - 1].get(f.as_slice()).ok_or_else(|| {
                        Error::NotWellDefined("face of a map leaves the enumerated set".into())
                    })?);
                }
            }
            if i < top {
                for j in 0..=i {
                    let s = apply(key, i, &|b, c| z.degen(across, b, c, j));
                    degen[i].push(index[i + 1][s.as_slice()]);
                }
            }
        }
    }
    let gen_offsets: Vec<(usize, Vec<u32>)> = {
        let mut off = 0;
        let mut out = Vec::new();
        for (k, &ck) in counts.iter().enumerate() {
            out.push((off, a.generators(k).to_vec()));
            off += ck;
        }
        out
    };
    let x = TruncSSet::from_tables(top, keys.iter().map(|l| l.len()).collect(), face, degen, |i, c| {
        let key = &keys[i][c];
        let imgs: Vec<String> = gen_offsets
            .iter()
            .enumerate()
            .flat_map(|(k, (off, gens))| {
                gens.iter()
                    .map(move |&g| {
                        let (n, m) = at(k, i);
                        z.cell_name(n, m, key[off + g as usize])
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        format!("<{}>", imgs.join(";"))
    })?;
    Ok(x.with_flags(false, z.is_coskeletal()))
}

/// `M_v(A, Z)`: level `m` is the set of maps `A → Z_{•,m}`, with faces and
/// degeneracies from the vertical operators of `Z`.
pub fn mv(a: &TruncSSet, z: &TruncBiSSet) -> Result<TruncSSet> {
    line_maps(a, z, Dir::H)
}

/// `M_h(B, Z)`: level `n` is the set of maps `B → Z_{n,•}`.
pub fn mh(b: &TruncSSet, z: &TruncBiSSet) -> Result<TruncSSet> {
    line_maps(b, z, Dir::V)
}

/// Bidegrees inside `w` where simplices of `y` are not determined by their
/// faces, together with `(0, 0)`.
pub(crate) fn determining_bidegrees(y: &TruncBiSSet, w: Window) -> Vec<(usize, usize)> {
    w.bidegrees()
        .into_iter()
        .filter(|&(n, m)| {
            if n + m == 0 {
                return true;
            }
            let mut seen = HashSet::new();
            (0..y.count(n, m) as u32).any(|c| {
                let mut key = Vec::new();
                if n >= 1 {
                    key.extend_from_slice(y.faces(Dir::H, (n, m), c));
                }
                if m >= 1 {
                    key.extend_from_slice(y.faces(Dir::V, (n, m), c));
                }
                !seen.insert(key)
            })
        })
        .collect()
}

/// The exponential `Y^X` on `window`: simplices of bidegree `(n, m)` are the
/// maps `(Δⁿ ⊠ Δᵐ) × X → Y`. The target must be nerve-like, so that all maps
/// are computed on the bidegrees of total degree at most 2.
pub fn exponential_bisset(x: &TruncBiSSet, y: &TruncBiSSet, window: Window) -> Result<TruncBiSSet> {
    let work = Window::total2();
    if !y.is_coskeletal() {
        return Err(Error::WindowInsufficient {
            what: "bisimplicial exponential into a target that is not nerve-like".into(),
            required: "a target determined by total degree 2".into(),
        });
    }
    let xw = x.rewindow(work)?;
    let det = determining_bidegrees(y, work);
    let top_h = det.iter().map(|d| d.0).max().unwrap_or(0);
    let top_v = det.iter().map(|d| d.1).max().unwrap_or(0);

    let hn = window.p + 1;
    let vn = window.q + 1;
    let hsimp: Vec<TruncSSet> = (0..=hn).map(|n| standard_simplex(n, work.p)).collect();
    let vsimp: Vec<TruncSSet> = (0..=vn).map(|m| standard_simplex(m, work.q)).collect();
    let hseq: Vec<_> = hsimp.iter().map(|d| vertex_sequences(d, top_h)).collect();
    let vseq: Vec<_> = vsimp.iter().map(|d| vertex_sequences(d, top_v)).collect();

    // offsets of the determining bidegrees inside a key, per (n, m)
    let offsets = |n: usize, m: usize| -> Vec<usize> {
        let mut off = vec![0];
        for &(k, l) in &det {
            let size = hsimp[n].count(k) * vsimp[m].count(l) * xw.count(k, l);
            off.push(off.last().unwrap() + size);
        }
        off
    };

    let size = (window.p + 1) * (window.q + 1);
    let mut keys: Vec<Vec<Vec<u32>>> = vec![Vec::new(); size];
    let mut names: Vec<Vec<String>> = vec![Vec::new(); size];
    for (n, m) in window.bidegrees() {
        let shape = box_product_in(&hsimp[n], &vsimp[m], work)?;
        let source = product(&shape, &xw)?;
        let sw = source.window();
        let mut level = Vec::new();
        for_each_bimap(&source, y, &mut |levels| {
            level.push(det.iter().flat_map(|&(k, l)| levels[sw.slot(k, l)].iter().copied()).collect::<Vec<u32>>());
            true
        })?;
        level.sort();
        let off = offsets(n, m);
        names[window.slot(n, m)] = level
            .iter()
            .map(|key| {
                let imgs: Vec<String> = det
                    .iter()
                    .enumerate()
                    .flat_map(|(d, &(k, l))| {
                        source
                            .generators(k, l)
                            .iter()
                            .map(|&g| y.cell_name(k, l, key[off[d] + g as usize]))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                format!("<{}>", imgs.join(";"))
            })
            .collect();
        keys[window.slot(n, m)] = level;
    }
    let index: Vec<HashMap<&[u32], u32>> = keys
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, k)| (k.as_slice(), i as u32)).collect())
        .collect();

    // transport a key along vertex maps of the horizontal and vertical simplices
    let pull = |key: &[u32], from: (usize, usize), to: (usize, usize), hmap: &dyn Fn(u32) -> u32, vmap: &dyn Fn(u32) -> u32| -> Vec<u32> {
        let hcells = induced_cell_maps(&hseq[to.0], &hseq[from.0], hmap);
        let vcells = induced_cell_maps(&vseq[to.1], &vseq[from.1], vmap);
        let off = offsets(from.0, from.1);
        let mut out = Vec::new();
        for (d, &(k, l)) in det.iter().enumerate() {
            let xs = xw.count(k, l);
            let vcount = vsimp[from.1].count(l);
            for &a in &hcells[k] {
                for &b in &vcells[l] {
                    let base = off[d] + (a as usize * vcount + b as usize) * xs;
                    out.extend_from_slice(&key[base..base + xs]);
                }
            }
        }
        out
    };
    let face_map = |i: u32| move |v: u32| if v < i { v } else { v + 1 };
    let degen_map = |i: u32| move |v: u32| if v <= i { v } else { v - 1 };
    let ident = |v: u32| v;

    let mut tables = Vec::new();
    for (n, m) in window.bidegrees() {
        let s = window.slot(n, m);
        let mut t = super::Tables {
            count: keys[s].len(),
            ..Default::default()
        };
        for key in &keys[s] {
            if n >= 1 {
                for i in 0..=n as u32 {
                    let f = pull(key, (n, m), (n - 1, m), &face_map(i), &ident);
                    t.hface.push(index[window.slot(n - 1, m)][f.as_slice()]);
                }
            }
            if m >= 1 {
                for j in 0..=m as u32 {
                    let f = pull(key, (n, m), (n, m - 1), &ident, &face_map(j));
                    t.vface.push(index[window.slot(n, m - 1)][f.as_slice()]);
                }
            }
            if window.contains(n + 1, m) {
                for i in 0..=n as u32 {
                    let f = pull(key, (n, m), (n + 1, m), &degen_map(i), &ident);
                    t.hdegen.push(index[window.slot(n + 1, m)][f.as_slice()]);
                }
            }
            if window.contains(n, m + 1) {
                for j in 0..=m as u32 {
                    let f = pull(key, (n, m), (n, m + 1), &ident, &degen_map(j));
                    t.vdegen.push(index[window.slot(n, m + 1)][f.as_slice()]);
                }
            }
        }
        tables.push(t);
    }
    let e = TruncBiSSet::from_tables(window, tables, |(n, m), c| names[window.slot(n, m)][c].clone())?;
    Ok(e.with_flags(false, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, classifying_diagram, is_bi_isomorphic, terminal};
    use crate::fincat::{functor_category, interval_category, walking_idempotent};
    use crate::sset::{is_isomorphic, point, spine};
    use std::sync::Arc;

    #[test]
    fn mv_of_simplices_gives_columns() {
        let z = classifying_diagram(&walking_idempotent(), Window::new(2, 2));
        for n in 0..=2 {
            let col = z.column(n).unwrap();
            let m = mv(&standard_simplex(n, n), &z).unwrap();
            assert!(is_isomorphic(&m, &col), "n = {n}");
        }
    }

    #[test]
    fn mv_of_spine_counts_composable_pairs() {
        let z = classifying_diagram(&interval_category(2), Window::new(2, 2));
        let m = mv(&spine(2, 2), &z).unwrap();
        assert_eq!(m.count(0), 10);
    }

    #[test]
    fn mh_of_point_is_row_zero() {
        let z = classifying_diagram(&interval_category(1), Window::new(2, 2));
        let r = mh(&point(0), &z).unwrap();
        assert!(is_isomorphic(&r, &z.row(0).unwrap()));
    }

    #[test]
    fn exponential_from_terminal() {
        let y = classifying_diagram(&walking_idempotent(), Window::new(2, 2));
        let e = exponential_bisset(&terminal(Window::new(2, 2)), &y, Window::new(2, 2)).unwrap();
        assert!(is_bi_isomorphic(&e, &y));
    }

    #[test]
    fn exponential_of_classifying_diagrams() {
        let c = Arc::new(interval_category(1));
        let w = Window::new(1, 1);
        let y = classifying_diagram(&c, Window::new(2, 2));
        let x = box_product(&standard_simplex(1, 2), &point(2));
        let e = exponential_bisset(&x, &y, w).unwrap();
        let fun = functor_category(&c, &c);
        assert!(is_bi_isomorphic(&e, &classifying_diagram(&fun, w)));
    }
}
