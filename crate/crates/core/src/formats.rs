//! Plain-text formats.
//!
//! `.fincat`:
//! ```text
//! obj a b
//! mor f: a -> b
//! comp g . f = h
//! ```
//! Identities are implicit as `id_<obj>`.
//!
//! `.sset`:
//! ```text
//! dim 2
//! gen 0 a b
//! gen 1 f
//! face f 0 = b
//! face f 1 = a
//! face t 2 = s0 a
//! ```
//! A face is a degeneracy word (outermost first) applied to a generator.
//!
//! `.bisset` uses `window <p> <q> [total <t>]`, `gen <n> <m> <id>...`, and
//! `hface` / `vface` lines whose words use `sh<i>` and `sv<j>`.
//!
//! Map files list one generator image per line, `map <gen> = <expression>`,
//! where the expression has the face-line syntax of the target format.
//! Everything after `#` on a line is a comment.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bisset::{BiSSetMap, BiSimplex, TruncBiSSet, Window};
use crate::error::{Error, Result};
use crate::ez;
use crate::fincat::{make_category, CategorySpec, FinCat};
use crate::sset::{SSetMap, Simplex, TruncSSet};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

pub fn parse_fincat(text: &str) -> Result<FinCat> {
    let mut spec = CategorySpec::default();
    for (line, toks) in lines(text) {
        match toks[0] {
            "obj" => {
                if toks.len() < 2 {
                    return Err(parse_err(line, "`obj` needs at least one identifier"));
                }
                for o in &toks[1..] {
                    spec = spec.object(o);
                }
            }
            "mor" => match toks.as_slice() {
                [_, name, src, "->", tgt] if name.ends_with(':') => {
                    spec = spec.morphism(name.trim_end_matches(':'), src, tgt);
                }
                [_, name, ":", src, "->", tgt] => spec = spec.morphism(name, src, tgt),
                _ => return Err(parse_err(line, "expected `mor <id>: <src> -> <tgt>`")),
            },
            "comp" => match toks.as_slice() {
                [_, g, ".", f, "=", h] => spec = spec.composite(g, f, h),
                _ => return Err(parse_err(line, "expected `comp <g> . <f> = <h>`")),
            },
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    make_category(&spec)
}

/// Parses a degeneracy word followed by an identifier. `letters` are the
/// accepted operator prefixes, longest first.
fn expression<'a>(line: usize, toks: &[&'a str], letters: &[&str]) -> Result<(Vec<Vec<u8>>, &'a str)> {
    let (id, ops) = toks
        .split_last()
        .ok_or_else(|| parse_err(line, "empty expression"))?;
    let mut words = vec![Vec::new(); letters.len()];
    for op in ops {
        let (slot, idx) = letters
            .iter()
            .enumerate()
            .find_map(|(s, l)| op.strip_prefix(l).and_then(|i| i.parse::<u8>().ok()).map(|i| (s, i)))
            .ok_or_else(|| parse_err(line, format!("bad degeneracy operator `{op}`")))?;
        words[slot].push(idx);
    }
    Ok((words.into_iter().map(|w| ez::normalize(&w)).collect(), id))
}

pub fn parse_sset(text: &str) -> Result<TruncSSet> {
    let mut dim = None;
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut where_is: HashMap<String, (usize, usize)> = HashMap::new();
    let mut face_lines = Vec::new();
    for (line, toks) in lines(text) {
        match toks[0] {
            "dim" if toks.len() == 2 => dim = Some(number(line, toks[1])?),
            "gen" if toks.len() >= 3 => {
                let k = number(line, toks[1])?;
                if names.len() <= k {
                    names.resize(k + 1, Vec::new());
                }
                for id in &toks[2..] {
                    if where_is.insert(id.to_string(), (k, names[k].len())).is_some() {
                        return Err(parse_err(line, format!("duplicate generator `{id}`")));
                    }
                    names[k].push(id.to_string());
                }
            }
            "face" => face_lines.push((line, toks)),
            other => return Err(parse_err(line, format!("malformed `{other}` line"))),
        }
    }
    let dim = dim.ok_or_else(|| parse_err(1, "missing `dim` line"))?;
    let mut faces: Vec<Vec<Vec<Option<Simplex>>>> = names
        .iter()
        .enumerate()
        .map(|(k, g)| vec![vec![None; if k == 0 { 0 } else { k + 1 }]; g.len()])
        .collect();
    for (line, toks) in face_lines {
        let [_, id, i, "=", rest @ ..] = toks.as_slice() else {
            return Err(parse_err(line, "expected `face <id> <i> = [s<j> ...] <id>`"));
        };
        let &(k, j) = where_is
            .get(*id)
            .ok_or_else(|| parse_err(line, format!("unknown generator `{id}`")))?;
        let i = number(line, i)?;
        if k == 0 || i > k {
            return Err(parse_err(line, format!("`{id}` has no face {i}")));
        }
        let (words, base) = expression(line, rest, &["s"])?;
        let &(l, b) = where_is
            .get(base)
            .ok_or_else(|| parse_err(line, format!("unknown generator `{base}`")))?;
        let word = words.into_iter().next().unwrap_or_default();
        if l + word.len() != k - 1 {
            return Err(parse_err(line, format!("face {i} of `{id}` has the wrong level")));
        }
        if word.iter().any(|&s| s as usize > l + word.len() - 1) {
            return Err(parse_err(line, "degeneracy index out of range"));
        }
        faces[k][j][i] = Some(Simplex {
            word,
            base: b as u32,
        });
    }
    let mut complete = Vec::with_capacity(faces.len());
    for (k, level) in faces.into_iter().enumerate() {
        let mut out = Vec::with_capacity(level.len());
        for (j, fs) in level.into_iter().enumerate() {
            let fs = fs
                .into_iter()
                .enumerate()
                .map(|(i, f)| {
                    f.ok_or_else(|| Error::MissingFace {
                        generator: names[k][j].clone(),
                        index: i,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(fs);
        }
        complete.push(out);
    }
    TruncSSet::from_generators(dim, names, complete)
}

pub fn parse_bisset(text: &str) -> Result<TruncBiSSet> {
    let mut window = None;
    let mut gens: Vec<((usize, usize), Vec<String>)> = Vec::new();
    let mut where_is: HashMap<String, ((usize, usize), usize)> = HashMap::new();
    let mut face_lines = Vec::new();
    for (line, toks) in lines(text) {
        match toks.as_slice() {
            ["window", p, q] => window = Some(Window::new(number(line, p)?, number(line, q)?)),
            ["window", p, q, "total", t] => {
                window = Some(Window::with_total(number(line, p)?, number(line, q)?, number(line, t)?))
            }
            ["gen", n, m, ids @ ..] if !ids.is_empty() => {
                let at = (number(line, n)?, number(line, m)?);
                let pos = match gens.iter().position(|(b, _)| *b == at) {
                    Some(p) => p,
                    None => {
                        gens.push((at, Vec::new()));
                        gens.len() - 1
                    }
                };
                for id in ids {
                    if where_is.insert(id.to_string(), (at, gens[pos].1.len())).is_some() {
                        return Err(parse_err(line, format!("duplicate generator `{id}`")));
                    }
                    gens[pos].1.push(id.to_string());
                }
            }
            [op, ..] if *op == "hface" || *op == "vface" => face_lines.push((line, toks)),
            [other, ..] => return Err(parse_err(line, format!("malformed `{other}` line"))),
            [] => {}
        }
    }
    let window = window.ok_or_else(|| parse_err(1, "missing `window` line"))?;
    let slots: Vec<(usize, usize)> = gens.iter().map(|(b, _)| *b).collect();
    let mut hfaces: Vec<Vec<Vec<Option<BiSimplex>>>> = gens
        .iter()
        .map(|((n, _), g)| vec![vec![None; if *n == 0 { 0 } else { n + 1 }]; g.len()])
        .collect();
    let mut vfaces: Vec<Vec<Vec<Option<BiSimplex>>>> = gens
        .iter()
        .map(|((_, m), g)| vec![vec![None; if *m == 0 { 0 } else { m + 1 }]; g.len()])
        .collect();
    for (line, toks) in face_lines {
        let [op, id, i, "=", rest @ ..] = toks.as_slice() else {
            return Err(parse_err(line, "expected `hface|vface <id> <i> = ... <id>`"));
        };
        let &((n, m), j) = where_is
            .get(*id)
            .ok_or_else(|| parse_err(line, format!("unknown generator `{id}`")))?;
        let i = number(line, i)?;
        let horizontal = *op == "hface";
        let deg = if horizontal { n } else { m };
        if deg == 0 || i > deg {
            return Err(parse_err(line, format!("`{id}` has no {op} {i}")));
        }
        let (words, base) = expression(line, rest, &["sh", "sv"])?;
        let &((bn, bm), b) = where_is
            .get(base)
            .ok_or_else(|| parse_err(line, format!("unknown generator `{base}`")))?;
        let (h, v) = (words[0].clone(), words[1].clone());
        let (fn_, fm) = if horizontal { (n - 1, m) } else { (n, m - 1) };
        if bn + h.len() != fn_ || bm + v.len() != fm {
            return Err(parse_err(line, format!("{op} {i} of `{id}` has the wrong bidegree")));
        }
        let cell = BiSimplex {
            h,
            v,
            base: b as u32,
        };
        let pos = slots.iter().position(|&s| s == (n, m)).expect("declared bidegree");
        let table = if horizontal { &mut hfaces } else { &mut vfaces };
        table[pos][j][i] = Some(cell);
    }
    let complete = |table: Vec<Vec<Vec<Option<BiSimplex>>>>| -> Result<Vec<Vec<Vec<BiSimplex>>>> {
        table
            .into_iter()
            .enumerate()
            .map(|(pos, level)| {
                level
                    .into_iter()
                    .enumerate()
                    .map(|(j, fs)| {
                        fs.into_iter()
                            .enumerate()
                            .map(|(i, f)| {
                                f.ok_or_else(|| Error::MissingFace {
                                    generator: gens[pos].1[j].clone(),
                                    index: i,
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let h = complete(hfaces)?;
    let v = complete(vfaces)?;
    TruncBiSSet::from_generators(window, gens.clone(), h, v)
}

fn map_lines(text: &str) -> Result<Vec<(usize, String, Vec<String>)>> {
    lines(text)
        .map(|(line, toks)| match toks.as_slice() {
            ["map", gen, "=", rest @ ..] if !rest.is_empty() => Ok((
                line,
                gen.to_string(),
                rest.iter().map(|s| s.to_string()).collect(),
            )),
            _ => Err(parse_err(line, "expected `map <gen> = <expression>`")),
        })
        .collect()
}

/// A simplicial map from generator images.
pub fn parse_sset_map(text: &str, source: Arc<TruncSSet>, target: Arc<TruncSSet>) -> Result<SSetMap> {
    let mut images: Vec<Vec<Option<u32>>> =
        (0..=source.dim()).map(|k| vec![None; source.generators(k).len()]).collect();
    for (line, gen, rest) in map_lines(text)? {
        let (k, j) = source
            .find_generator(&gen)
            .ok_or_else(|| parse_err(line, format!("unknown source generator `{gen}`")))?;
        let toks: Vec<&str> = rest.iter().map(String::as_str).collect();
        let (words, base) = expression(line, &toks, &["s"])?;
        let (l, b) = target
            .find_generator(base)
            .ok_or_else(|| parse_err(line, format!("unknown target generator `{base}`")))?;
        let word = &words[0];
        if l + word.len() != k {
            return Err(parse_err(line, format!("image of `{gen}` has the wrong level")));
        }
        images[k][j] = Some(target.degenerate(l, target.generators(l)[b], word));
    }
    // images are needed up to the first level with missing entries
    let known: Vec<Vec<u32>> = images
        .iter()
        .take_while(|l| l.iter().all(Option::is_some))
        .map(|l| l.iter().map(|i| i.unwrap()).collect())
        .collect();
    let f = SSetMap::from_generator_images(source.clone(), target, &known)?;
    for (k, level) in images.iter().enumerate() {
        for (j, img) in level.iter().enumerate() {
            if let Some(img) = img {
                if k <= f.top() && f.image(k, source.generators(k)[j]) != *img {
                    return Err(Error::NotAMap(format!(
                        "image of `{}` disagrees with its faces",
                        source.generator_name(k, j)
                    )));
                }
            }
        }
    }
    Ok(f)
}

/// A bisimplicial map from generator images.
pub fn parse_bisset_map(
    text: &str,
    source: Arc<TruncBiSSet>,
    target: Arc<TruncBiSSet>,
) -> Result<BiSSetMap> {
    let w = source.window();
    let mut gens: Vec<Vec<Option<u32>>> = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
    for (n, m) in w.bidegrees() {
        gens[w.slot(n, m)] = vec![None; source.generators(n, m).len()];
    }
    let mut names: HashMap<String, ((usize, usize), usize)> = HashMap::new();
    for (n, m) in w.bidegrees() {
        for j in 0..source.generators(n, m).len() {
            names.insert(source.generator_name(n, m, j).to_string(), ((n, m), j));
        }
    }
    for (line, gen, rest) in map_lines(text)? {
        let &((n, m), j) = names
            .get(&gen)
            .ok_or_else(|| parse_err(line, format!("unknown source generator `{gen}`")))?;
        let toks: Vec<&str> = rest.iter().map(String::as_str).collect();
        let (words, base) = expression(line, &toks, &["sh", "sv"])?;
        let tw = target.window();
        let ((bn, bm), bc) = tw
            .bidegrees()
            .into_iter()
            .find_map(|(a, b)| {
                (0..target.generators(a, b).len())
                    .find(|&j| target.generator_name(a, b, j) == base)
                    .map(|j| ((a, b), target.generators(a, b)[j]))
            })
            .ok_or_else(|| parse_err(line, format!("unknown target generator `{base}`")))?;
        if bn + words[0].len() != n || bm + words[1].len() != m {
            return Err(parse_err(line, format!("image of `{gen}` has the wrong bidegree")));
        }
        gens[w.slot(n, m)][j] = Some(target.degenerate(bn, bm, bc, &words[0], &words[1]));
    }
    let given: Vec<Vec<u32>> = gens
        .iter()
        .map(|l| {
            if l.iter().all(Option::is_some) {
                l.iter().map(|i| i.unwrap()).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    BiSSetMap::from_generator_images(source, target, &given)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{interval_category, is_isomorphic};
    use crate::sset::{is_isomorphic as sset_iso, standard_simplex};

    #[test]
    fn fincat_of_interval() {
        let c = parse_fincat("# [1]\nobj 0 1\nmor f: 0 -> 1\n").unwrap();
        assert_eq!(c.num_objects(), 2);
        assert!(is_isomorphic(&c, &interval_category(1)));
        let e = parse_fincat("obj 0\nmorph f 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn sset_round_trip_and_missing_face() {
        let text = "dim 2\ngen 0 a b\ngen 1 f\nface f 0 = b\nface f 1 = a\n";
        let x = parse_sset(text).unwrap();
        assert!(sset_iso(&x, &standard_simplex(1, 2)));
        let e = parse_sset("dim 1\ngen 0 a b\ngen 1 f\nface f 0 = b\n").unwrap_err();
        assert_eq!(
            e,
            Error::MissingFace {
                generator: "f".into(),
                index: 1
            }
        );
        let degenerate = "dim 2\ngen 0 a\ngen 2 t\nface t 0 = s0 a\nface t 1 = s0 a\nface t 2 = s0 a\n";
        assert_eq!(parse_sset(degenerate).unwrap().generators(2).len(), 1);
    }

    #[test]
    fn bisset_mixed_identity() {
        let good = "window 1 1\ngen 0 0 a b\ngen 1 0 f\ngen 0 1 u\ngen 1 1 q\n\
                    hface f 0 = b\nhface f 1 = a\nvface u 0 = a\nvface u 1 = a\n\
                    hface q 0 = sv0 b\nhface q 1 = u\nvface q 0 = f\nvface q 1 = f\n";
        let x = parse_bisset(good).unwrap();
        assert_eq!(x.count(1, 1), 5);
        let bad = good.replace("hface q 0 = sv0 b", "hface q 0 = sv0 a");
        let e = parse_bisset(&bad).unwrap_err().to_string();
        assert!(e.contains("dh") && e.contains("dv"), "{e}");
    }

    #[test]
    fn map_files() {
        let d1 = Arc::new(standard_simplex(1, 2));
        let pt = Arc::new(crate::sset::point(2));
        let f = parse_sset_map("map 0 = 0\nmap 1 = 0\nmap 01 = s0 0\n", d1.clone(), pt.clone()).unwrap();
        assert_eq!(f.level(1).len(), d1.count(1));
        assert!(parse_sset_map("map 0 = nope\n", d1, pt).is_err());
    }
}
