use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{groupoid_interval, FinCat, Functor};

use super::{SSetMap, Simplex, TruncSSet};

fn subset_name(s: &[usize], n: usize) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    parts.join(if n < 10 { "" } else { "," })
}

/// The simplicial subset of `Δⁿ` generated by the vertex subsets accepted by
/// `keep`, truncated at `d`. `keep` must be closed under taking faces.
fn simplicial_subset(n: usize, d: usize, keep: impl Fn(&[usize]) -> bool) -> TruncSSet {
    let mut by_level: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    for mask in 1u32..(1 << (n + 1)) {
        let s: Vec<usize> = (0..=n).filter(|&v| mask & (1 << v) != 0).collect();
        if keep(&s) {
            by_level[s.len() - 1].push(s);
        }
    }
    for l in &mut by_level {
        l.sort();
    }
    let index: Vec<HashMap<Vec<usize>, u32>> = by_level
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
        .collect();
    let names = by_level
        .iter()
        .map(|l| l.iter().map(|s| subset_name(s, n)).collect())
        .collect();
    let faces = by_level
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.iter()
                .map(|s| {
                    if k == 0 {
                        return Vec::new();
                    }
                    (0..=k)
                        .map(|i| {
                            let mut t = s.clone();
                            t.remove(i);
                            Simplex::generator(index[k - 1][&t])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncSSet::from_generators(d, names, faces).expect("simplicial subsets of a simplex are valid")
}

pub fn standard_simplex(n: usize, d: usize) -> TruncSSet {
    let x = simplicial_subset(n, d, |_| true);
    let skeletal = x.is_skeletal();
    x.with_flags(skeletal, true)
}

pub fn point(d: usize) -> TruncSSet {
    standard_simplex(0, d)
}

pub fn boundary(n: usize, d: usize) -> TruncSSet {
    simplicial_subset(n, d, |s| s.len() <= n)
}

/// The horn `Λⁿᵢ`: every face of `Δⁿ` except the top one and the one
/// opposite vertex `i`.
pub fn horn(n: usize, i: usize, d: usize) -> TruncSSet {
    assert!(i <= n, "horn index out of range");
    simplicial_subset(n, d, |s| {
        s.len() <= n && !(s.len() == n && !s.contains(&i))
    })
}

/// The spine `Gⁿ`: vertices and the principal edges `{j, j+1}`.
pub fn spine(n: usize, d: usize) -> TruncSSet {
    simplicial_subset(n, d, |s| s.len() == 1 || (s.len() == 2 && s[1] == s[0] + 1))
}

/// The nerve of `C` truncated at `d`. Simplices of level `k` are composable
/// strings of `k` morphisms, in lexicographic order of morphism indices.
pub fn nerve(c: &FinCat, d: usize) -> TruncSSet {
    let strings = composable_strings(c, d);
    let index: Vec<HashMap<&[u32], u32>> = strings
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect())
        .collect();
    let vertex = |s: &[u32], k: usize, j: usize| -> usize {
        if k == 0 {
            s[0] as usize
        } else if j < k {
            c.src(s[j] as usize)
        } else {
            c.tgt(s[k - 1] as usize)
        }
    };
    let mut face = vec![Vec::new(); d + 1];
    let mut degen = vec![Vec::new(); d + 1];
    for k in 0..=d {
        for s in &strings[k] {
            if k == 1 {
                let m = s[0] as usize;
                face[1].push(c.tgt(m) as u32);
                face[1].push(c.src(m) as u32);
            } else if k >= 2 {
                for i in 0..=k {
                    let t: Vec<u32> = if i == 0 {
                        s[1..].to_vec()
                    } else if i == k {
                        s[..k - 1].to_vec()
                    } else {
                        let mut t = s[..i - 1].to_vec();
                        t.push(c.comp(s[i] as usize, s[i - 1] as usize) as u32);
                        t.extend_from_slice(&s[i + 1..]);
                        t
                    };
                    face[k].push(index[k - 1][t.as_slice()]);
                }
            }
            if k < d {
                for i in 0..=k {
                    let id = c.identity(vertex(s, k, i)) as u32;
                    let t: Vec<u32> = if k == 0 {
                        vec![id]
                    } else {
                        let mut t = s[..i].to_vec();
                        t.push(id);
                        t.extend_from_slice(&s[i..]);
                        t
                    };
                    degen[k].push(index[k + 1][t.as_slice()]);
                }
            }
        }
    }
    let counts = strings.iter().map(|l| l.len()).collect();
    let x = TruncSSet::from_tables(d, counts, face, degen, |k, i| {
        let s = &strings[k][i];
        if k == 0 {
            c.objects()[s[0] as usize].clone()
        } else {
            let names: Vec<&str> = s.iter().map(|&m| c.morphism_name(m as usize)).collect();
            names.join(",")
        }
    })
    .expect("nerves are simplicial sets");
    let skeletal = !has_nondegenerate_string(c, d + 1);
    x.with_flags(skeletal, true)
}

/// Composable strings of `k` morphisms for `k <= d` (objects at `k = 0`),
/// sorted.
pub(crate) fn composable_strings(c: &FinCat, d: usize) -> Vec<Vec<Vec<u32>>> {
    let mut strings: Vec<Vec<Vec<u32>>> = Vec::with_capacity(d + 1);
    strings.push((0..c.num_objects() as u32).map(|o| vec![o]).collect());
    if d >= 1 {
        strings.push((0..c.num_morphisms() as u32).map(|m| vec![m]).collect());
    }
    for k in 2..=d {
        let mut next = Vec::new();
        for s in &strings[k - 1] {
            let end = c.tgt(*s.last().unwrap() as usize);
            for b in 0..c.num_objects() {
                for &m in c.hom(end, b) {
                    let mut t = s.clone();
                    t.push(m as u32);
                    next.push(t);
                }
            }
        }
        next.sort();
        strings.push(next);
    }
    strings
}

/// The nerve of a functor, as a map of nerves truncated at `d`.
pub fn nerve_map(f: &Functor, d: usize) -> Result<SSetMap> {
    let from = composable_strings(&f.source, d);
    let to = composable_strings(&f.target, d);
    let levels = from
        .iter()
        .zip(&to)
        .enumerate()
        .map(|(k, (fl, tl))| {
            let index: HashMap<&[u32], u32> =
                tl.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();
            fl.iter()
                .map(|s| {
                    let t: Vec<u32> = if k == 0 {
                        vec![f.object_map[s[0] as usize] as u32]
                    } else {
                        s.iter().map(|&m| f.morphism_map[m as usize] as u32).collect()
                    };
                    index[t.as_slice()]
                })
                .collect()
        })
        .collect();
    SSetMap::new(
        Arc::new(nerve(&f.source, d)),
        Arc::new(nerve(&f.target, d)),
        levels,
    )
}

fn has_nondegenerate_string(c: &FinCat, len: usize) -> bool {
    // longest string of non-identity morphisms ending at each object,
    // capped at `len`
    let nonid: Vec<usize> = (0..c.num_morphisms()).filter(|&m| !c.is_identity(m)).collect();
    let mut best = vec![0usize; c.num_objects()];
    for _ in 0..len {
        let mut next = best.clone();
        for &m in &nonid {
            let v = (best[c.src(m)] + 1).min(len);
            if v > next[c.tgt(m)] {
                next[c.tgt(m)] = v;
            }
        }
        best = next;
    }
    best.iter().any(|&b| b >= len)
}

/// `Jᵐ`, the nerve of the chaotic groupoid on `m + 1` objects.
pub fn j_space(m: usize, d: usize) -> TruncSSet {
    nerve(&groupoid_interval(m), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{interval_category, terminal};
    use crate::sset::is_isomorphic;

    #[test]
    fn nerve_of_point_is_point() {
        assert_eq!(nerve(&terminal(), 3).counts(), vec![1, 1, 1, 1]);
        assert!(is_isomorphic(&nerve(&terminal(), 3), &point(3)));
    }

    #[test]
    fn nerve_of_interval_is_simplex() {
        assert!(is_isomorphic(&nerve(&interval_category(2), 2), &standard_simplex(2, 2)));
        assert!(nerve(&interval_category(2), 3).is_skeletal());
        assert!(!nerve(&groupoid_interval(1), 3).is_skeletal());
    }

    #[test]
    fn j_space_counts() {
        assert_eq!(j_space(1, 1).generator_counts(), vec![2, 2]);
        assert_eq!(j_space(1, 2).generator_counts(), vec![2, 2, 2]);
        assert_eq!(j_space(1, 2).counts(), vec![2, 4, 8]);
        assert_eq!(nerve(&groupoid_interval(1), 3).generator_counts(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn horn_generators() {
        assert_eq!(horn(3, 1, 3).generator_counts(), vec![4, 6, 3, 0]);
        assert_eq!(spine(3, 3).generator_counts(), vec![4, 3, 0, 0]);
    }
}
