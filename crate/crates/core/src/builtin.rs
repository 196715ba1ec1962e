//! Built-in reference triangulations.
//!
//! `s3` is the two-tetrahedron sphere. `rp3` is the eight-tetrahedron
//! projective space whose edges come in six pairs `{b,b'}`, `{c,c'}`,
//! `{d,d'}`, `{f,f'}`, `{g,g'}`, `{h,h'}`, each pair joining the same two
//! vertex classes.

use std::collections::HashMap;

use crate::triangulation::{Triangulation, TriangulationError};

pub const S3_TEXT: &str = include_str!("../data/s3.tri");
pub const RP3_TEXT: &str = include_str!("../data/rp3.tri");

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 2] = ["s3", "rp3"];

pub fn s3() -> Triangulation {
    Triangulation::parse(S3_TEXT).expect("built-in s3 is valid")
}

pub fn rp3() -> Triangulation {
    let t = Triangulation::parse(RP3_TEXT).expect("built-in rp3 is valid");
    check_rp3(&t).expect("built-in rp3 passes its load checks");
    t
}

pub fn by_name(name: &str) -> Option<Triangulation> {
    match name {
        "s3" => Some(s3()),
        "rp3" => Some(rp3()),
        _ => None,
    }
}

/// Load-time checks for the projective-space table: f-vector `(4,12,16,8)`
/// and every pair of vertex classes joined by exactly two edge classes.
pub fn check_rp3(t: &Triangulation) -> Result<(), String> {
    if t.f_vector().as_tuple() != (4, 12, 16, 8) {
        return Err(format!("rp3 f-vector is {}", t.f_vector()));
    }
    let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
    for e in t.edges() {
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        *pairs.entry(key).or_default() += 1;
    }
    if pairs.len() != 6 || pairs.values().any(|&n| n != 2) {
        return Err(format!("rp3 edge classes do not pair up: {pairs:?}"));
    }
    Ok(())
}

/// Edge class of the named projective-space edge (`"b"`, `"b'"`, ...,
/// `"h'"`). Unprimed interior edges run from A to the positive end of an
/// axis; unprimed boundary edges join ends of opposite sign.
pub fn rp3_edge(t: &Triangulation, name: &str) -> Option<usize> {
    // (tetrahedron, slot, slot) of a representative occurrence.
    let (tet, a, b) = match name {
        "b" => (0, 0, 1),
        "b'" => (1, 0, 1),
        "c" => (0, 0, 2),
        "c'" => (2, 0, 2),
        "d" => (0, 0, 3),
        "d'" => (4, 0, 3),
        "f" => (2, 2, 3),
        "f'" => (0, 2, 3),
        "g" => (1, 1, 3),
        "g'" => (0, 1, 3),
        "h" => (2, 1, 2),
        "h'" => (0, 1, 2),
        _ => return None,
    };
    Some(t.edge_of(tet, a, b).0)
}

pub const RP3_EDGE_NAMES: [&str; 12] = [
    "b", "c", "d", "f", "g", "h", "b'", "c'", "d'", "f'", "g'", "h'",
];

/// Convenience for callers holding a name that may not be built in.
pub fn load(name: &str) -> Result<Triangulation, TriangulationError> {
    by_name(name).ok_or_else(|| TriangulationError::Parse {
        line: 0,
        message: format!("unknown built-in `{name}` (known: {})", NAMES.join(", ")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rp3_edge_names_are_distinct_classes() {
        let t = rp3();
        let mut ids: Vec<usize> = RP3_EDGE_NAMES.iter().map(|n| rp3_edge(&t, n).unwrap()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 12);
    }

    #[test]
    fn primed_pairs_share_endpoints() {
        let t = rp3();
        for n in ["b", "c", "d", "f", "g", "h"] {
            let u = &t.edges()[rp3_edge(&t, n).unwrap()];
            let p = &t.edges()[rp3_edge(&t, &format!("{n}'")).unwrap()];
            let key = |e: &crate::triangulation::EdgeClass| (e.tail.min(e.head), e.tail.max(e.head));
            assert_eq!(key(u), key(p), "edge {n}");
        }
    }

    #[test]
    fn unknown_builtin() {
        assert!(load("lens").is_err());
        assert!(load("s3").is_ok());
    }
}
