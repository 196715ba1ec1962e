//! Bistellar moves on glued triangulations, a seeded random walk over them,
//! and a canonical form for isomorphism checks.
//!
//! Every move is a retriangulation of a ball: some tetrahedra are removed,
//! each with its slots named by ball-vertex symbols, and new tetrahedra are
//! listed as symbol quadruples. Faces of new tetrahedra are glued to each
//! other when their symbol sets agree and otherwise inherit the gluing of
//! the removed face carrying the same symbols.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::triangulation::{Gluing, Perm, Triangulation, TriangulationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    TwoThree,
    ThreeTwo,
    OneFour,
    FourOne,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [MoveKind::TwoThree, MoveKind::ThreeTwo, MoveKind::OneFour, MoveKind::FourOne];

    pub fn shrinks(self) -> bool {
        matches!(self, MoveKind::ThreeTwo | MoveKind::FourOne)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
        })
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "2-3" | "23" => Ok(MoveKind::TwoThree),
            "3-2" | "32" => Ok(MoveKind::ThreeTwo),
            "1-4" | "14" => Ok(MoveKind::OneFour),
            "4-1" | "41" => Ok(MoveKind::FourOne),
            _ => Err(format!("unknown move `{s}` (expected 2-3, 3-2, 1-4 or 4-1)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// Face opposite slot `face` of `tet`, shared with a different
    /// tetrahedron.
    TwoThree { tet: usize, face: usize },
    /// Edge class of degree 3 around three distinct tetrahedra.
    ThreeTwo { edge: usize },
    OneFour { tet: usize },
    /// Vertex class whose star is four distinct tetrahedra forming a ball.
    FourOne { vertex: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::TwoThree { .. } => MoveKind::TwoThree,
            MoveSite::ThreeTwo { .. } => MoveKind::ThreeTwo,
            MoveSite::OneFour { .. } => MoveKind::OneFour,
            MoveSite::FourOne { .. } => MoveKind::FourOne,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSite::TwoThree { tet, face } => write!(f, "2-3 tet {tet} face {face}"),
            MoveSite::ThreeTwo { edge } => write!(f, "3-2 edge {edge}"),
            MoveSite::OneFour { tet } => write!(f, "1-4 tet {tet}"),
            MoveSite::FourOne { vertex } => write!(f, "4-1 vertex {vertex}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PachnerError {
    #[error("invalid site {site}: {reason}")]
    InvalidSite { site: MoveSite, reason: String },
    #[error("move produced an invalid triangulation: {0}")]
    Rebuild(#[from] TriangulationError),
}

type Symbols = [usize; 4];

/// Removed tetrahedra with slot symbols, and new tetrahedra as symbols.
struct Retriangulation {
    removed: Vec<(usize, Symbols)>,
    added: Vec<Symbols>,
}

fn face_symbols(s: &Symbols, face: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for (i, &v) in s.iter().enumerate() {
        if i != face {
            out[n] = v;
            n += 1;
        }
    }
    out.sort_unstable();
    out
}

fn slot_of(s: &Symbols, symbol: usize) -> usize {
    s.iter().position(|&v| v == symbol).expect("symbol present")
}

impl Retriangulation {
    fn apply(&self, t: &Triangulation) -> Result<Triangulation, TriangulationError> {
        let old = t.gluings();
        let mut removed_at: Vec<Option<usize>> = vec![None; old.len()];
        for (i, &(tet, _)) in self.removed.iter().enumerate() {
            removed_at[tet] = Some(i);
        }
        let mut new_index = vec![usize::MAX; old.len()];
        let mut kept = Vec::new();
        for (tet, slot) in new_index.iter_mut().enumerate() {
            if removed_at[tet].is_none() {
                *slot = kept.len();
                kept.push(tet);
            }
        }
        let first_new = kept.len();

        let mut table: Vec<[Gluing; 4]> = kept
            .iter()
            .map(|&tet| {
                old[tet].map(|g| Gluing::new(new_index[g.neighbor], g.perm))
            })
            .collect();
        table.resize(first_new + self.added.len(), [Gluing::new(0, Perm::IDENTITY); 4]);

        for (j, sym) in self.added.iter().enumerate() {
            for f in 0..4 {
                let key = face_symbols(sym, f);
                let internal = self.added.iter().enumerate().find_map(|(j2, s2)| {
                    (0..4).find(|&f2| (j2, f2) != (j, f) && face_symbols(s2, f2) == key).map(|f2| (j2, f2))
                });
                let gluing = match internal {
                    Some((j2, f2)) => Gluing::new(first_new + j2, internal_perm(sym, f, &self.added[j2], f2)),
                    None => self.external(t, &removed_at, &new_index, first_new, sym, f, key),
                };
                table[first_new + j][f] = gluing;
            }
        }

        // Kept tetrahedra whose neighbour was removed point at the new one.
        for (k, &tet) in kept.iter().enumerate() {
            for f in 0..4 {
                let g = old[tet][f];
                if removed_at[g.neighbor].is_some() {
                    let (j, _, perm) = self.locate_removed_face(&removed_at, g.neighbor, g.perm.apply(f));
                    // Slot map kept -> new: through the removed tet's symbols.
                    let new_perm = Perm::new(std::array::from_fn(|i| perm.apply(g.perm.apply(i))))
                        .expect("composition of permutations");
                    table[k][f] = Gluing::new(first_new + j, new_perm);
                }
            }
        }
        Triangulation::build(table)
    }

    /// New tetrahedron and face carrying the face of removed `tet` opposite
    /// `slot`, with the slot map removed -> new.
    fn locate_removed_face(&self, removed_at: &[Option<usize>], tet: usize, slot: usize) -> (usize, usize, Perm) {
        let sym = &self.removed[removed_at[tet].expect("removed")].1;
        let key = face_symbols(sym, slot);
        for (j, s2) in self.added.iter().enumerate() {
            for f2 in 0..4 {
                if face_symbols(s2, f2) == key {
                    let perm = Perm::new(std::array::from_fn(|i| {
                        if i == slot {
                            f2
                        } else {
                            slot_of(s2, sym[i])
                        }
                    }))
                    .expect("symbol map is a permutation");
                    return (j, f2, perm);
                }
            }
        }
        panic!("boundary face of the ball has no replacement");
    }

    /// Gluing of new face `f` of a tetrahedron with symbols `sym`, lying on
    /// the boundary of the ball.
    #[allow(clippy::too_many_arguments)]
    fn external(
        &self,
        t: &Triangulation,
        removed_at: &[Option<usize>],
        new_index: &[usize],
        first_new: usize,
        sym: &Symbols,
        f: usize,
        key: [usize; 3],
    ) -> Gluing {
        let (r, rsym, rf) = self
            .removed
            .iter()
            .find_map(|(tet, s)| (0..4).find(|&g| face_symbols(s, g) == key).map(|g| (*tet, s, g)))
            .expect("boundary face belongs to a removed tetrahedron");
        // new slot -> removed slot.
        let to_removed = Perm::new(std::array::from_fn(|i| if i == f { rf } else { slot_of(rsym, sym[i]) }))
            .expect("symbol map is a permutation");
        let g = t.gluing(r, rf);
        let through = g.perm.compose(to_removed);
        if removed_at[g.neighbor].is_none() {
            Gluing::new(new_index[g.neighbor], through)
        } else {
            let (j2, _, perm) = self.locate_removed_face(removed_at, g.neighbor, g.perm.apply(rf));
            Gluing::new(first_new + j2, perm.compose(through))
        }
    }
}

fn internal_perm(sym: &Symbols, f: usize, partner: &Symbols, pf: usize) -> Perm {
    Perm::new(std::array::from_fn(|i| if i == f { pf } else { slot_of(partner, sym[i]) })).expect("symbol map is a permutation")
}

fn invalid(site: MoveSite, reason: impl Into<String>) -> PachnerError {
    PachnerError::InvalidSite {
        site,
        reason: reason.into(),
    }
}

fn two_three(t: &Triangulation, site: MoveSite, tet: usize, face: usize) -> Result<Retriangulation, PachnerError> {
    if tet >= t.tet_count() || face >= 4 {
        return Err(invalid(site, "no such face"));
    }
    let g = t.gluing(tet, face);
    if g.neighbor == tet {
        return Err(invalid(site, "the face is glued to its own tetrahedron"));
    }
    // Symbols: face slots keep their index 0..3 minus `face`; apexes are
    // 4 (in `tet`) and 5 (in the neighbour); the shared face carries three
    // of 0..3.
    let mut s0 = [0; 4];
    let mut s1 = [0; 4];
    for i in 0..4 {
        if i == face {
            s0[i] = 4;
            s1[g.perm.apply(i)] = 5;
        } else {
            s0[i] = i;
            s1[g.perm.apply(i)] = i;
        }
    }
    let shared: Vec<usize> = (0..4).filter(|&i| i != face).collect();
    let (a, b, c) = (shared[0], shared[1], shared[2]);
    // Orientation of new tetrahedra is fixed later by the rebuild.
    let added = vec![[a, b, 5, 4], [b, c, 5, 4], [c, a, 5, 4]];
    Ok(Retriangulation {
        removed: vec![(tet, s0), (g.neighbor, s1)],
        added,
    })
}

fn three_two(t: &Triangulation, site: MoveSite, edge: usize) -> Result<Retriangulation, PachnerError> {
    let class = t.edges().get(edge).ok_or_else(|| invalid(site, "no such edge"))?;
    if class.degree() != 3 {
        return Err(invalid(site, format!("edge has degree {}", class.degree())));
    }
    let mut tets: Vec<usize> = class.members.iter().map(|m| m.tet).collect();
    tets.sort_unstable();
    tets.dedup();
    if tets.len() != 3 {
        return Err(invalid(site, "tetrahedra around the edge are not distinct"));
    }
    // Symbols: 0 = tail, 1 = head, 2..5 = X0, X1, X2.
    let m = class.members[0];
    let others: Vec<usize> = (0..4).filter(|&i| i != m.tail && i != m.head).collect();
    let mut syms: Vec<(usize, Symbols)> = Vec::new();
    let mut cur = m.tet;
    let mut s = [0; 4];
    s[m.tail] = 0;
    s[m.head] = 1;
    s[others[0]] = 2;
    s[others[1]] = 3;
    // Cross the face holding the edge and X1, then X2, then X0; the slot
    // across each face receives X2, X0, X1 in turn.
    let opposite_sym = [2, 3, 4];
    let fresh_sym = [4, 2, 3];
    for step in 0..3 {
        syms.push((cur, s));
        let opposite = slot_of(&s, opposite_sym[step]);
        let g = t.gluing(cur, opposite);
        let mut next = [usize::MAX; 4];
        for i in 0..4 {
            if i != opposite {
                next[g.perm.apply(i)] = s[i];
            }
        }
        next[g.perm.apply(opposite)] = fresh_sym[step];
        if step == 2 {
            if g.neighbor != m.tet || next != syms[0].1 {
                return Err(invalid(site, "star of the edge does not close up consistently"));
            }
        } else {
            cur = g.neighbor;
            s = next;
        }
    }
    // X symbols are 2, 3, 4.
    Ok(Retriangulation {
        removed: syms,
        added: vec![[2, 3, 4, 0], [2, 3, 4, 1]],
    })
}

fn one_four(t: &Triangulation, site: MoveSite, tet: usize) -> Result<Retriangulation, PachnerError> {
    if tet >= t.tet_count() {
        return Err(invalid(site, "no such tetrahedron"));
    }
    let added = (0..4)
        .map(|i| {
            let mut s = [0, 1, 2, 3];
            s[i] = 4;
            s
        })
        .collect();
    Ok(Retriangulation {
        removed: vec![(tet, [0, 1, 2, 3])],
        added,
    })
}

fn four_one(t: &Triangulation, site: MoveSite, vertex: usize) -> Result<Retriangulation, PachnerError> {
    let class = t.vertices().get(vertex).ok_or_else(|| invalid(site, "no such vertex"))?;
    if class.members.len() != 4 {
        return Err(invalid(site, format!("vertex has degree {}", class.members.len())));
    }
    let mut tets: Vec<usize> = class.members.iter().map(|&(tet, _)| tet).collect();
    tets.sort_unstable();
    tets.dedup();
    if tets.len() != 4 {
        return Err(invalid(site, "tetrahedra around the vertex are not distinct"));
    }
    // Outer vertices are 0..3; the centre is 4.
    let (t0, v0) = class.members[0];
    let mut s0 = [0, 1, 2, 3];
    s0[v0] = 4;
    let mut syms: Vec<(usize, Symbols)> = vec![(t0, s0)];
    for j in (0..4).filter(|&j| j != v0) {
        let g = t.gluing(t0, j);
        let mut s = [0; 4];
        for i in 0..4 {
            s[g.perm.apply(i)] = if i == j { v0 } else { s0[i] };
        }
        if !tets.contains(&g.neighbor) || syms.iter().any(|&(tet, _)| tet == g.neighbor) {
            return Err(invalid(site, "star of the vertex is not four tetrahedra around a point"));
        }
        syms.push((g.neighbor, s));
    }
    // Every face through the centre must be glued inside the star with
    // matching symbols.
    for &(tet, s) in &syms {
        for f in 0..4 {
            if s[f] == 4 {
                continue;
            }
            let g = t.gluing(tet, f);
            let partner = syms.iter().find(|&&(n, _)| n == g.neighbor);
            let ok = partner.is_some_and(|&(_, ps)| {
                (0..4).filter(|&i| i != f).all(|i| ps[g.perm.apply(i)] == s[i])
            });
            if !ok {
                return Err(invalid(site, "star of the vertex is not a ball"));
            }
        }
    }
    Ok(Retriangulation {
        removed: syms,
        added: vec![[0, 1, 2, 3]],
    })
}

/// Applies a move, returning the new triangulation.
pub fn apply_move(t: &Triangulation, site: MoveSite) -> Result<Triangulation, PachnerError> {
    let r = match site {
        MoveSite::TwoThree { tet, face } => two_three(t, site, tet, face)?,
        MoveSite::ThreeTwo { edge } => three_two(t, site, edge)?,
        MoveSite::OneFour { tet } => one_four(t, site, tet)?,
        MoveSite::FourOne { vertex } => four_one(t, site, vertex)?,
    };
    Ok(r.apply(t)?)
}

/// All valid sites of a kind, in a deterministic order.
pub fn enumerate_sites(t: &Triangulation, kind: MoveKind) -> Vec<MoveSite> {
    match kind {
        MoveKind::TwoThree => t
            .faces()
            .iter()
            .filter_map(|f| {
                let (tet, face) = f.members[0];
                (t.gluing(tet, face).neighbor != tet).then_some(MoveSite::TwoThree { tet, face })
            })
            .collect(),
        MoveKind::ThreeTwo => (0..t.edges().len())
            .map(|edge| MoveSite::ThreeTwo { edge })
            .filter(|&s| matches!(s, MoveSite::ThreeTwo { edge } if three_two(t, s, edge).is_ok()))
            .collect(),
        MoveKind::OneFour => (0..t.tet_count()).map(|tet| MoveSite::OneFour { tet }).collect(),
        MoveKind::FourOne => (0..t.vertices().len())
            .map(|vertex| MoveSite::FourOne { vertex })
            .filter(|&s| matches!(s, MoveSite::FourOne { vertex } if four_one(t, s, vertex).is_ok()))
            .collect(),
    }
}

/// A 2→3 site whose two apexes lie in the same vertex class would create a
/// loop edge, on which every face circulation through it vanishes.
pub fn creates_loop(t: &Triangulation, site: MoveSite) -> bool {
    match site {
        MoveSite::TwoThree { tet, face } => {
            let g = t.gluing(tet, face);
            t.vertex_of(tet, face) == t.vertex_of(g.neighbor, g.perm.apply(face))
        }
        _ => false,
    }
}

/// Result of [`random_walk_traced`].
#[derive(Debug, Clone)]
pub struct Walk {
    pub triangulation: Triangulation,
    pub moves: Vec<MoveSite>,
}

/// Applies `steps` random moves. Each step picks a kind uniformly among
/// kinds with sites (only shrinking kinds, when available, while the
/// triangulation has more than `max_tets` tetrahedra), then a site
/// uniformly. 2→3 sites that would create a loop edge are skipped.
pub fn random_walk_traced(t: &Triangulation, steps: usize, seed: u64, max_tets: usize) -> Walk {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = t.clone();
    let mut moves = Vec::with_capacity(steps);
    while moves.len() < steps {
        let mut options: Vec<(MoveKind, Vec<MoveSite>)> = MoveKind::ALL
            .iter()
            .map(|&k| {
                let sites: Vec<MoveSite> = enumerate_sites(&cur, k)
                    .into_iter()
                    .filter(|&s| !creates_loop(&cur, s))
                    .collect();
                (k, sites)
            })
            .filter(|(_, s)| !s.is_empty())
            .collect();
        if cur.tet_count() > max_tets && options.iter().any(|(k, _)| k.shrinks()) {
            options.retain(|(k, _)| k.shrinks());
        }
        let (_, sites) = options.choose(&mut rng).expect("1-4 always applies");
        let site = sites[rng.gen_range(0..sites.len())];
        match apply_move(&cur, site) {
            Ok(next) => {
                cur = next;
                moves.push(site);
            }
            // Enumerated sites are valid; a rebuild failure here would be a
            // bug, so surface it loudly in debug builds.
            Err(e) => panic!("enumerated site {site} failed: {e}"),
        }
    }
    Walk {
        triangulation: cur,
        moves,
    }
}

pub fn random_walk(t: &Triangulation, steps: usize, seed: u64, max_tets: usize) -> Triangulation {
    random_walk_traced(t, steps, seed, max_tets).triangulation
}

/// Gluing rows as `(neighbour, permutation images)` per face.
pub type CanonicalTable = Vec<[(usize, [u8; 4]); 4]>;

/// Gluing table relabeled by breadth-first search from every tetrahedron
/// and slot ordering; the lexicographically least table.
pub fn canonical_form(t: &Triangulation) -> CanonicalTable {
    let n = t.tet_count();
    let mut best: Option<CanonicalTable> = None;
    for start in 0..n {
        for p in all_perms() {
            let table = relabel_from(t, start, p);
            if best.as_ref().map_or(true, |b| table < *b) {
                best = Some(table);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    a.tet_count() == b.tet_count() && a.f_vector() == b.f_vector() && canonical_form(a) == canonical_form(b)
}

fn all_perms() -> Vec<Perm> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if let Some(p) = Perm::new([a, b, c, d]) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// `phi` maps new slots to old slots of `start`.
fn relabel_from(t: &Triangulation, start: usize, phi: Perm) -> CanonicalTable {
    let n = t.tet_count();
    let mut label: Vec<Option<(usize, Perm)>> = vec![None; n];
    let mut order = vec![start];
    label[start] = Some((0, phi));
    let mut table = Vec::with_capacity(n);
    let mut head = 0;
    while head < order.len() {
        let old = order[head];
        let (_, phi) = label[old].expect("labeled");
        let mut row = [(0usize, [0u8; 4]); 4];
        for (k, entry) in row.iter_mut().enumerate() {
            let g = t.gluing(old, phi.apply(k));
            let induced = g.perm.compose(phi);
            let (idx, phi_n) = match label[g.neighbor] {
                Some(l) => l,
                None => {
                    let l = (order.len(), induced);
                    label[g.neighbor] = Some(l);
                    order.push(g.neighbor);
                    l
                }
            };
            let p = phi_n.inverse().compose(induced);
            let imgs = p.images();
            *entry = (idx, imgs.map(|v| v as u8));
        }
        table.push(row);
        head += 1;
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn fv(t: &Triangulation) -> (usize, usize, usize, usize) {
        t.f_vector().as_tuple()
    }

    #[test]
    fn sphere_one_four() {
        let t = builtin::s3();
        assert_eq!(enumerate_sites(&t, MoveKind::OneFour).len(), 2);
        let u = apply_move(&t, MoveSite::OneFour { tet: 0 }).unwrap();
        assert_eq!(fv(&u), (5, 10, 10, 5));
        // New tetrahedra follow the kept one; slot 0 of the first is the new vertex.
        let centre = u.vertex_of(1, 0);
        let back: Vec<MoveSite> = enumerate_sites(&u, MoveKind::FourOne)
            .into_iter()
            .filter(|s| *s == MoveSite::FourOne { vertex: centre })
            .collect();
        assert_eq!(back.len(), 1);
        let w = apply_move(&u, back[0]).unwrap();
        assert!(isomorphic(&w, &t));
        // The old vertices now have degree 4 too, and their stars are balls.
        for site in enumerate_sites(&u, MoveKind::FourOne) {
            assert_eq!(fv(&apply_move(&u, site).unwrap()), (4, 6, 4, 2));
        }
    }

    #[test]
    fn sphere_two_three_round_trip() {
        let t = builtin::s3();
        let sites = enumerate_sites(&t, MoveKind::TwoThree);
        assert_eq!(sites.len(), 4);
        for site in sites {
            let u = apply_move(&t, site).unwrap();
            assert_eq!(fv(&u), (4, 7, 6, 3));
            let threes = enumerate_sites(&u, MoveKind::ThreeTwo);
            assert!(!threes.is_empty());
            let back = threes
                .iter()
                .map(|&s| apply_move(&u, s).unwrap())
                .any(|w| isomorphic(&w, &t));
            assert!(back, "no 3-2 move undoes {site}");
        }
    }

    #[test]
    fn projective_moves_keep_euler_characteristic() {
        let t = builtin::rp3();
        for kind in MoveKind::ALL {
            for site in enumerate_sites(&t, kind) {
                let u = apply_move(&t, site).unwrap();
                assert_eq!(u.f_vector().euler_characteristic(), 0, "{site}");
            }
        }
    }

    #[test]
    fn distinct_tetrahedra_required() {
        let t = builtin::s3();
        for e in 0..t.edges().len() {
            // S³ edges have degree 2.
            assert!(apply_move(&t, MoveSite::ThreeTwo { edge: e }).is_err());
        }
        // S³ vertices have degree 2.
        assert!(apply_move(&t, MoveSite::FourOne { vertex: 0 }).is_err());
        assert!(apply_move(&t, MoveSite::TwoThree { tet: 0, face: 7 }).is_err());
    }

    #[test]
    fn isomorphism_ignores_relabeling() {
        let t = builtin::rp3();
        let text = t.to_text();
        // Swap tetrahedra 0 and 1 in the table.
        let mut g: Vec<[Gluing; 4]> = t.gluings().to_vec();
        g.swap(0, 1);
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                x.neighbor = match x.neighbor {
                    0 => 1,
                    1 => 0,
                    n => n,
                };
            }
        }
        let u = Triangulation::build(g).unwrap();
        assert_ne!(u.to_text(), text);
        assert!(isomorphic(&t, &u));
        assert!(!isomorphic(&t, &builtin::s3()));
    }

    #[test]
    fn walk_is_deterministic() {
        let t = builtin::s3();
        let a = random_walk(&t, 15, 9, 12);
        let b = random_walk(&t, 15, 9, 12);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(random_walk(&t, 0, 9, 12), t);
    }

    #[test]
    fn walks_avoid_loop_edges() {
        for seed in 0..10 {
            let w = random_walk(&builtin::s3(), 20, seed, 10);
            assert!(!w.has_repeated_vertices());
            assert_eq!(w.f_vector().euler_characteristic(), 0);
        }
    }
}
