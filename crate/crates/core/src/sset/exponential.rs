use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

use super::{for_each_map, product, standard_simplex, TruncSSet};

/// Highest level `k <= top` at which simplices of `y` are not determined by
/// their faces. Maps into `y` are determined by their images up to it.
pub(crate) fn determining_level(y: &TruncSSet, top: usize) -> usize {
    (1..=top.min(y.dim()))
        .rev()
        .find(|&k| {
            let mut seen = HashSet::new();
            (0..y.count(k) as u32).any(|c| !seen.insert(y.faces(k, c)))
        })
        .unwrap_or(0)
}

/// Vertex labels of every simplex of `Δⁿ` up to level `top`.
pub(crate) fn vertex_sequences(delta: &TruncSSet, top: usize) -> Vec<Vec<Vec<u32>>> {
    let label: Vec<u32> = (0..delta.count(0) as u32)
        .map(|v| delta.cell_name(0, v).parse().expect("simplex vertices are numbered"))
        .collect();
    (0..=top)
        .map(|k| {
            (0..delta.count(k) as u32)
                .map(|a| (0..=k).map(|j| label[delta.vertex(k, a, j) as usize]).collect())
                .collect()
        })
        .collect()
}

/// Cell maps `Δᵐ_k → Δⁿ_k` induced by a vertex map, for `k <= top`.
pub(crate) fn induced_cell_maps(
    from: &[Vec<Vec<u32>>],
    to: &[Vec<Vec<u32>>],
    vertex: impl Fn(u32) -> u32,
) -> Vec<Vec<u32>> {
    from.iter()
        .zip(to)
        .map(|(fk, tk)| {
            let ix: HashMap<&[u32], u32> = tk
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i as u32))
                .collect();
            fk.iter()
                .map(|s| {
                    let t: Vec<u32> = s.iter().map(|&v| vertex(v)).collect();
                    ix[t.as_slice()]
                })
                .collect()
        })
        .collect()
}

/// The exponential `Y^X` truncated at `out_dim`: level-`n` simplices are the
/// maps `Δⁿ × X → Y`, with faces and degeneracies by precomposition.
///
/// For a coskeletal target all maps are computed on 2-skeleta and the result
/// is again coskeletal. Otherwise `X` must be skeletal and `Y` stored up to
/// `out_dim + dim X`.
pub fn exponential(x: &TruncSSet, y: &TruncSSet, out_dim: usize) -> Result<TruncSSet> {
    let work = if y.is_coskeletal() {
        2
    } else {
        match x.skeletal_dim() {
            Some(sx) if y.dim() >= out_dim + sx => out_dim + sx,
            _ => {
                return Err(Error::WindowInsufficient {
                    what: "exponential into a non-coskeletal target".into(),
                    required: format!(
                        "skeletal exponent and target level >= {} + exponent level",
                        out_dim
                    ),
                })
            }
        }
    };
    let xw = x.resize(work)?;
    let top = work.min(y.dim());
    let key_level = determining_level(y, top);

    let deltas: Vec<TruncSSet> = (0..=out_dim + 1).map(|n| standard_simplex(n, work)).collect();
    let vseq: Vec<Vec<Vec<Vec<u32>>>> = deltas
        .iter()
        .map(|d| vertex_sequences(d, key_level))
        .collect();
    // offsets of each level inside a key, per n
    let offsets: Vec<Vec<usize>> = deltas
        .iter()
        .map(|d| {
            let mut off = vec![0];
            for k in 0..=key_level {
                off.push(off[k] + d.count(k) * xw.count(k));
            }
            off
        })
        .collect();

    let mut keys: Vec<Vec<Vec<u32>>> = Vec::with_capacity(out_dim + 1);
    let mut gen_images: Vec<Vec<Vec<u32>>> = Vec::with_capacity(out_dim + 1);
    let mut gen_counts: Vec<Vec<usize>> = Vec::with_capacity(out_dim + 1);
    for n in 0..=out_dim {
        let p = product(&deltas[n], &xw)?;
        let mut level = Vec::new();
        for_each_map(&p, y, &mut |levels| {
            level.push(levels[..=key_level].concat());
            true
        })?;
        level.sort();
        let renders: Vec<Vec<u32>> = level
            .iter()
            .map(|key| {
                let mut out = Vec::new();
                for k in 0..=key_level {
                    for &g in p.generators(k) {
                        out.push(key[offsets[n][k] + g as usize]);
                    }
                }
                out
            })
            .collect();
        keys.push(level);
        gen_images.push(renders);
        gen_counts.push((0..=key_level).map(|k| p.generators(k).len()).collect());
    }
    let index: Vec<HashMap<&[u32], u32>> = keys
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, k)| (k.as_slice(), i as u32)).collect())
        .collect();

    let xc: Vec<usize> = (0..=key_level).map(|k| xw.count(k)).collect();
    // transport a key at level n along cell maps Δᵐ_k → Δⁿ_k
    let pull = |key: &[u32], n: usize, m: usize, cells: &[Vec<u32>]| -> Vec<u32> {
        let mut out = Vec::with_capacity(offsets[m][key_level + 1]);
        for k in 0..=key_level {
            for &a in &cells[k] {
                let base = offsets[n][k] + a as usize * xc[k];
                out.extend_from_slice(&key[base..base + xc[k]]);
            }
        }
        out
    };

    let mut face = vec![Vec::new(); out_dim + 1];
    let mut degen = vec![Vec::new(); out_dim + 1];
    for n in 0..=out_dim {
        if n >= 1 {
            let maps: Vec<Vec<Vec<u32>>> = (0..=n)
                .map(|i| {
                    let i = i as u32;
                    induced_cell_maps(&vseq[n - 1], &vseq[n], |v| if v < i { v } else { v + 1 })
                })
                .collect();
            for key in &keys[n] {
                for cells in &maps {
                    face[n].push(index[n - 1][pull(key, n, n - 1, cells).as_slice()]);
                }
            }
        }
        if n < out_dim {
            let maps: Vec<Vec<Vec<u32>>> = (0..=n)
                .map(|i| {
                    let i = i as u32;
                    induced_cell_maps(&vseq[n + 1], &vseq[n], |v| if v <= i { v } else { v - 1 })
                })
                .collect();
            for key in &keys[n] {
                for cells in &maps {
                    degen[n].push(index[n + 1][pull(key, n, n + 1, cells).as_slice()]);
                }
            }
        }
    }
    let counts = keys.iter().map(|l| l.len()).collect();
    let e = TruncSSet::from_tables(out_dim, counts, face, degen, |n, c| {
        let imgs = &gen_images[n][c];
        let mut t = 0;
        let levels: Vec<String> = (0..=key_level)
            .map(|k| {
                let row: Vec<String> = (0..gen_counts[n][k])
                    .map(|_| {
                        t += 1;
                        y.cell_name(k, imgs[t - 1])
                    })
                    .collect();
                row.join(",")
            })
            .collect();
        format!("<{}>", levels.join(";"))
    })?;
    Ok(e.with_flags(false, y.is_coskeletal()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{interval_category, walking_idempotent};
    use crate::sset::{is_isomorphic, nerve, point, tau1};

    #[test]
    fn exponent_point_is_identity() {
        let y = nerve(&walking_idempotent(), 3);
        let e = exponential(&point(2), &y, 2).unwrap();
        assert!(is_isomorphic(&e, &y.truncate(2)));
    }

    #[test]
    fn arrows_in_an_interval() {
        let y = nerve(&interval_category(1), 3);
        let e = exponential(&standard_simplex(1, 1), &y, 1).unwrap();
        assert_eq!(e.count(0), 3);
    }

    #[test]
    fn fundamental_category_of_arrow_object() {
        let y = nerve(&interval_category(1), 4);
        let e = exponential(&standard_simplex(1, 1), &y, 2).unwrap();
        let c = tau1(&e).unwrap().cat;
        assert_eq!((c.num_objects(), c.num_morphisms()), (3, 6));
    }

    #[test]
    fn non_coskeletal_target_needs_room() {
        let y = crate::sset::boundary(2, 2);
        assert!(exponential(&standard_simplex(1, 1), &y, 1).is_ok());
        assert!(exponential(&standard_simplex(1, 1), &y, 2).is_err());
    }
}
