//! The bundled examples: small categories, simplicial sets and the
//! bisimplicial sets built from them, each under a short identifier.

use crate::bisset::{box_product, classifying_diagram, terminal, TruncBiSSet, Window};
use crate::error::{Error, Result};
use std::sync::Arc;

use crate::fincat::{
    groupoid_interval, interval_category, product_category, walking_idempotent, FinCat, Functor,
};
use crate::sset::{horn, j_space, nerve, point, product, spine, standard_simplex, TruncSSet};

/// Identifiers of the bundled categories.
pub const CATEGORIES: [&str; 7] = ["[0]", "[1]", "[2]", "I[1]", "I[2]", "idem", "[1]xI[1]"];

pub fn category(id: &str) -> Option<FinCat> {
    Some(match id {
        "[0]" => interval_category(0),
        "[1]" => interval_category(1),
        "[2]" => interval_category(2),
        "I[1]" => groupoid_interval(1),
        "I[2]" => groupoid_interval(2),
        "idem" => walking_idempotent(),
        "[1]xI[1]" => product_category(&interval_category(1), &groupoid_interval(1)),
        _ => return None,
    })
}

pub fn categories() -> Vec<(&'static str, FinCat)> {
    CATEGORIES.iter().map(|&id| (id, category(id).expect("bundled"))).collect()
}

/// The window the classifying diagram of a bundled category is kept on.
/// `I[2]` is capped at total degree 4: its full `(3,3)` entry alone has
/// `3^16` simplices.
pub fn window_for(id: &str) -> Window {
    match id {
        "I[2]" => Window::with_total(3, 3, 4),
        _ => Window::new(3, 3),
    }
}

/// Identifiers of the bundled functors, written `<source>><target>`. Each
/// target is thin, so the object assignment determines the functor.
pub const FUNCTORS: [(&str, &[usize]); 6] = [
    ("I[1]>[0]", &[0, 0]),
    ("[0]>I[1]", &[0]),
    ("I[2]>I[1]", &[0, 0, 1]),
    ("[0]>[1]", &[0]),
    ("[1]>I[1]", &[0, 1]),
    ("idem>[0]", &[0]),
];

pub fn functor(id: &str) -> Option<Functor> {
    let (_, objects) = FUNCTORS.iter().find(|(f, _)| *f == id)?;
    let (s, t) = id.split_once('>')?;
    let (c, d) = (Arc::new(category(s)?), Arc::new(category(t)?));
    let morphisms = (0..c.num_morphisms())
        .map(|m| d.hom(objects[c.src(m)], objects[c.tgt(m)]).first().copied())
        .collect::<Option<Vec<_>>>()?;
    Functor::new(c, d, objects.to_vec(), morphisms).ok()
}

/// Identifiers of the bundled simplicial sets, stored at level 3.
pub const SIMPLICIAL: [&str; 8] = ["D0", "D1", "D2", "L2_1", "G3", "J1", "D1xD1", "dD2"];

/// A simplicial set by identifier: one of [`SIMPLICIAL`], or `N<cat>` for
/// the nerve of a bundled category, stored at level `d`.
pub fn simplicial(id: &str, d: usize) -> Option<TruncSSet> {
    if let Some(c) = id.strip_prefix('N') {
        return category(c).map(|c| nerve(&c, d));
    }
    Some(match id {
        "D0" => point(d),
        "D1" => standard_simplex(1, d),
        "D2" => standard_simplex(2, d),
        "L2_1" => horn(2, 1, d),
        "G3" => spine(3, d),
        "J1" => j_space(1, d),
        "D1xD1" => product(&standard_simplex(1, d), &standard_simplex(1, d)).ok()?,
        "dD2" => crate::sset::boundary(2, d),
        _ => return None,
    })
}

/// A bisimplicial set by identifier: `C<cat>` for a classifying diagram on
/// its bundled window, `box:<a>:<b>` for a box product of simplicial sets,
/// or `terminal`.
pub fn bisimplicial(id: &str, window: Option<Window>) -> Result<TruncBiSSet> {
    let unknown = || Error::Config(format!("unknown corpus entry `{id}`"));
    if let Some(c) = id.strip_prefix('C') {
        let cat = category(c).ok_or_else(unknown)?;
        return Ok(classifying_diagram(&cat, window.unwrap_or_else(|| window_for(c))));
    }
    if let Some(rest) = id.strip_prefix("box:") {
        let (a, b) = rest.split_once(':').ok_or_else(unknown)?;
        let w = window.unwrap_or(Window::new(3, 3));
        let x = simplicial(a, w.p.max(1)).ok_or_else(unknown)?;
        let y = simplicial(b, w.q.max(1)).ok_or_else(unknown)?;
        let b = box_product(&x, &y);
        return if b.window() == w { Ok(b) } else { b.rewindow(w) };
    }
    if id == "terminal" {
        return Ok(terminal(window.unwrap_or(Window::new(3, 3))));
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identifier_resolves() {
        for (id, c) in categories() {
            assert!(c.num_objects() >= 1, "{id}");
            assert!(simplicial(&format!("N{id}"), 3).is_some());
        }
        for id in SIMPLICIAL {
            assert_eq!(simplicial(id, 3).unwrap().dim(), 3);
        }
        assert!(bisimplicial("box:D1:D0", None).is_ok());
        assert!(bisimplicial("C[1]", Some(Window::new(2, 2))).is_ok());
        assert!(bisimplicial("Cnope", None).is_err());
        for (id, _) in FUNCTORS {
            assert!(functor(id).is_some(), "{id}");
        }
    }
}
