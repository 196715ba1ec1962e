//! Closed oriented 3-pseudo-manifolds given by tetrahedra and face gluings.
//!
//! Each tetrahedron has four local vertex slots `0..4`; face `k` is the face
//! opposite slot `k`. A [`Gluing`] on face `k` names the neighbouring
//! tetrahedron and the permutation carrying this tetrahedron's slots to the
//! neighbour's, so face `k` is glued to face `perm(k)` of the neighbour.
//!
//! Vertices, edges and faces of the manifold are the orbits of slot
//! occurrences under the gluings. Two different edge classes may join the
//! same pair of vertex classes, which is why everything downstream is indexed
//! by class rather than by vertex pair.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

/// Local edges of a tetrahedron as slot pairs, in a fixed order.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`TET_EDGES`] of the edge joining slots `a` and `b`.
pub fn tet_edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no tetrahedron edge between slots {a} and {b}"),
    }
}

/// Permutation of the four slots `{0,1,2,3}`, stored as the image of each slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm([u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn new(images: [usize; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images.map(|i| i as u8)))
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(self) -> [usize; 4] {
        self.0.map(usize::from)
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(self, other: Perm) -> Perm {
        Perm(other.0.map(|i| self.0[i as usize]))
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(self) -> i8 {
        permutation_sign(&self.images())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| format!("`{s}` is not a slot permutation"))?;
        let arr: [usize; 4] = digits
            .try_into()
            .map_err(|_| format!("`{s}` must have four digits"))?;
        Perm::new(arr).ok_or_else(|| format!("`{s}` is not a permutation of 0123"))
    }
}

/// Sign of an arbitrary permutation given as a list of distinct values,
/// relative to their sorted order.
pub fn permutation_sign(values: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub neighbor: usize,
    pub perm: Perm,
}

impl Gluing {
    pub fn new(neighbor: usize, perm: Perm) -> Self {
        Gluing { neighbor, perm }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tetrahedron {tet} face {face}: neighbour {neighbor} out of range")]
    NeighborOutOfRange {
        tet: usize,
        face: usize,
        neighbor: usize,
    },
    #[error("tetrahedron {tet} face {face} is glued to itself")]
    FaceGluedToItself { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face}: gluing is not involutive")]
    NonInvolutive { tet: usize, face: usize },
    #[error("orientation incoherent across tetrahedron {tet} face {face} (non-orientable input)")]
    NonOrientable { tet: usize, face: usize },
    #[error("triangulation is disconnected: tetrahedron {tet} unreachable from tetrahedron 0")]
    Disconnected { tet: usize },
    #[error("edge of tetrahedron {tet} (slots {a},{b}) is identified with its own reverse")]
    EdgeSelfReversed { tet: usize, a: usize, b: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl TriangulationError {
    pub fn is_parse(&self) -> bool {
        matches!(self, TriangulationError::Parse { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    /// `(tetrahedron, slot)` occurrences.
    pub members: Vec<(usize, usize)>,
}

/// One occurrence of an edge class inside a tetrahedron, written in the
/// class's canonical direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeOccurrence {
    pub tet: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    /// Vertex class at the tail of the canonical direction.
    pub tail: usize,
    /// Vertex class at the head of the canonical direction.
    pub head: usize,
    /// Canonical direction is taken from `members[0]`, the lowest-indexed
    /// occurrence, going from its lower slot to its higher slot.
    pub members: Vec<EdgeOccurrence>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClass {
    /// `(tetrahedron, opposite slot)` occurrences.
    pub members: Vec<(usize, usize)>,
}

impl FaceClass {
    /// Tetrahedron and slot triple fixing the face's boundary orientation:
    /// the first occurrence with its slots in increasing order.
    pub fn boundary(&self) -> (usize, [usize; 3]) {
        let (t, k) = self.members[0];
        let mut slots = [0; 3];
        let mut n = 0;
        for s in 0..4 {
            if s != k {
                slots[n] = s;
                n += 1;
            }
        }
        (t, slots)
    }
}

/// One tetrahedron's contribution to the star of an edge class: the slots
/// `(p, q, e, d)` form an even permutation of the tetrahedron's positive
/// vertex order, with `e -> d` the edge in its canonical direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarContribution {
    pub tet: usize,
    pub p: usize,
    pub q: usize,
    pub e: usize,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStar {
    pub edge: usize,
    pub contributions: Vec<StarContribution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FVector {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub tetrahedra: usize,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.tetrahedra as i64
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.vertices, self.edges, self.faces, self.tetrahedra)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.vertices, self.edges, self.faces, self.tetrahedra
        )
    }
}

/// Validated closed oriented triangulation with its quotient classes.
///
/// Immutable; moves produce new values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
    signs: Vec<i8>,
    vertices: Vec<VertexClass>,
    edges: Vec<EdgeClass>,
    faces: Vec<FaceClass>,
    vertex_of: Vec<[usize; 4]>,
    /// Per tetrahedron and local edge: (edge class, +1 if lower->higher slot
    /// is the canonical direction, else -1).
    edge_of: Vec<[(usize, i8); 6]>,
    face_of: Vec<[usize; 4]>,
}

impl Triangulation {
    /// Validates a gluing table and derives orientation signs and classes.
    pub fn build(gluings: Vec<[Gluing; 4]>) -> Result<Triangulation, TriangulationError> {
        let n = gluings.len();
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (k, g) in faces.iter().enumerate() {
                if g.neighbor >= n {
                    return Err(TriangulationError::NeighborOutOfRange {
                        tet: t,
                        face: k,
                        neighbor: g.neighbor,
                    });
                }
                let k2 = g.perm.apply(k);
                if g.neighbor == t && k2 == k {
                    return Err(TriangulationError::FaceGluedToItself { tet: t, face: k });
                }
                let back = gluings[g.neighbor][k2];
                if back.neighbor != t || back.perm != g.perm.inverse() {
                    return Err(TriangulationError::NonInvolutive { tet: t, face: k });
                }
            }
        }

        let signs = orientation_signs(&gluings)?;
        let (vertices, vertex_of) = vertex_classes(&gluings);
        let (edges, edge_of) = edge_classes(&gluings, &vertex_of)?;
        let (faces, face_of) = face_classes(&gluings);

        Ok(Triangulation {
            gluings,
            signs,
            vertices,
            edges,
            faces,
            vertex_of,
            edge_of,
            face_of,
        })
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    /// Orientation sign of a tetrahedron; tetrahedron 0 is always +1.
    pub fn sign(&self, tet: usize) -> i8 {
        self.signs[tet]
    }

    /// Slots in positively oriented order: stored order for sign +1, first
    /// two swapped for sign -1.
    pub fn positive_order(&self, tet: usize) -> [usize; 4] {
        if self.signs[tet] > 0 {
            [0, 1, 2, 3]
        } else {
            [1, 0, 2, 3]
        }
    }

    pub fn vertices(&self) -> &[VertexClass] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn faces(&self) -> &[FaceClass] {
        &self.faces
    }

    pub fn vertex_of(&self, tet: usize, slot: usize) -> usize {
        self.vertex_of[tet][slot]
    }

    /// Edge class of the edge from slot `a` to slot `b` of `tet`, with +1 if
    /// `a -> b` is the class's canonical direction and -1 otherwise.
    pub fn edge_of(&self, tet: usize, a: usize, b: usize) -> (usize, i8) {
        let (class, sign) = self.edge_of[tet][tet_edge_index(a, b)];
        if a < b {
            (class, sign)
        } else {
            (class, -sign)
        }
    }

    pub fn face_of(&self, tet: usize, opposite: usize) -> usize {
        self.face_of[tet][opposite]
    }

    pub fn f_vector(&self) -> FVector {
        FVector {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
            tetrahedra: self.gluings.len(),
        }
    }

    /// True if some tetrahedron meets the same vertex class twice.
    pub fn has_repeated_vertices(&self) -> bool {
        self.vertex_of.iter().any(|v| {
            (0..4).any(|i| (i + 1..4).any(|j| v[i] == v[j]))
        })
    }

    /// Tetrahedra around an edge class with the `(P, Q)` ordering rule
    /// applied.
    pub fn edge_star(&self, edge: usize) -> EdgeStar {
        let contributions = self.edges[edge]
            .members
            .iter()
            .map(|occ| {
                let mut rest = (0..4).filter(|&s| s != occ.tail && s != occ.head);
                let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
                let parity = permutation_sign(&[u, v, occ.tail, occ.head]) * self.signs[occ.tet];
                let (p, q) = if parity > 0 { (u, v) } else { (v, u) };
                StarContribution {
                    tet: occ.tet,
                    p,
                    q,
                    e: occ.tail,
                    d: occ.head,
                }
            })
            .collect();
        EdgeStar { edge, contributions }
    }

    /// Serializes to the `pentachain-tri v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("pentachain-tri v1\n");
        let _ = writeln!(out, "tetrahedra {}", self.tet_count());
        for (t, faces) in self.gluings.iter().enumerate() {
            let _ = write!(out, "tet {t}:");
            for g in faces {
                let _ = write!(out, " {}:{}", g.neighbor, g.perm);
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `pentachain-tri v1` text format and validates the result.
    pub fn parse(text: &str) -> Result<Triangulation, TriangulationError> {
        Triangulation::build(parse_gluings(text)?)
    }
}

impl FromStr for Triangulation {
    type Err = TriangulationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Triangulation::parse(s)
    }
}

/// Parses the gluing table without validating it.
pub fn parse_gluings(text: &str) -> Result<Vec<[Gluing; 4]>, TriangulationError> {
    let err = |line: usize, message: String| TriangulationError::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "pentachain-tri v1")) => {}
        Some((n, other)) => return Err(err(n, format!("expected header `pentachain-tri v1`, got `{other}`"))),
        None => return Err(err(0, "empty input".into())),
    }
    let count = match lines.next() {
        Some((n, l)) => {
            let rest = l
                .strip_prefix("tetrahedra")
                .ok_or_else(|| err(n, format!("expected `tetrahedra <N>`, got `{l}`")))?;
            rest.trim()
                .parse::<usize>()
                .map_err(|_| err(n, format!("bad tetrahedron count `{}`", rest.trim())))?
        }
        None => return Err(err(0, "missing `tetrahedra <N>` line".into())),
    };

    let mut table: Vec<Option<[Gluing; 4]>> = vec![None; count];
    for (n, l) in lines {
        let rest = l
            .strip_prefix("tet")
            .ok_or_else(|| err(n, format!("expected `tet <i>: ...`, got `{l}`")))?;
        let (idx, entries) = rest
            .split_once(':')
            .ok_or_else(|| err(n, "missing `:` after tetrahedron index".into()))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| err(n, format!("bad tetrahedron index `{}`", idx.trim())))?;
        if idx >= count {
            return Err(err(n, format!("tetrahedron index {idx} out of range")));
        }
        if table[idx].is_some() {
            return Err(err(n, format!("tetrahedron {idx} listed twice")));
        }
        let parts: Vec<&str> = entries.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(err(n, format!("expected 4 gluings, got {}", parts.len())));
        }
        let mut faces = [Gluing::new(0, Perm::IDENTITY); 4];
        for (k, p) in parts.iter().enumerate() {
            let (nb, perm) = p
                .split_once(':')
                .ok_or_else(|| err(n, format!("gluing `{p}` is not `<tet>:<perm>`")))?;
            let nb: usize = nb
                .parse()
                .map_err(|_| err(n, format!("bad neighbour `{nb}`")))?;
            let perm: Perm = perm.parse().map_err(|m| err(n, m))?;
            faces[k] = Gluing::new(nb, perm);
        }
        table[idx] = Some(faces);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| err(0, format!("tetrahedron {i} missing"))))
        .collect()
}

fn orientation_signs(gluings: &[[Gluing; 4]]) -> Result<Vec<i8>, TriangulationError> {
    let mut signs = vec![0i8; gluings.len()];
    signs[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for (k, g) in gluings[t].iter().enumerate() {
            // Across a gluing the induced face orientations must be opposite:
            // s_t * s_n * sign(perm) = -1.
            let want = -signs[t] * g.perm.sign();
            match signs[g.neighbor] {
                0 => {
                    signs[g.neighbor] = want;
                    queue.push_back(g.neighbor);
                }
                s if s != want => return Err(TriangulationError::NonOrientable { tet: t, face: k }),
                _ => {}
            }
        }
    }
    if let Some(t) = signs.iter().position(|&s| s == 0) {
        return Err(TriangulationError::Disconnected { tet: t });
    }
    Ok(signs)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Numbers union-find roots in order of first occurrence.
fn number_classes(uf: &mut UnionFind, n: usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    let class_of = (0..n)
        .map(|x| {
            let r = uf.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            id[r]
        })
        .collect();
    (class_of, next)
}

fn vertex_classes(gluings: &[[Gluing; 4]]) -> (Vec<VertexClass>, Vec<[usize; 4]>) {
    let n = gluings.len();
    let mut uf = UnionFind::new(4 * n);
    for (t, faces) in gluings.iter().enumerate() {
        for (k, g) in faces.iter().enumerate() {
            for v in (0..4).filter(|&v| v != k) {
                uf.union(4 * t + v, 4 * g.neighbor + g.perm.apply(v));
            }
        }
    }
    let (class_of, count) = number_classes(&mut uf, 4 * n);
    let mut classes = vec![VertexClass { members: vec![] }; count];
    let mut vertex_of = vec![[0; 4]; n];
    for t in 0..n {
        for v in 0..4 {
            let c = class_of[4 * t + v];
            classes[c].members.push((t, v));
            vertex_of[t][v] = c;
        }
    }
    (classes, vertex_of)
}

type EdgeTable = (Vec<EdgeClass>, Vec<[(usize, i8); 6]>);

fn edge_classes(
    gluings: &[[Gluing; 4]],
    vertex_of: &[[usize; 4]],
) -> Result<EdgeTable, TriangulationError> {
    let n = gluings.len();
    // Occurrence (t, e) identified with (t', e') plus whether the gluing
    // reverses the lower->higher slot direction.
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); 6 * n];
    for (t, faces) in gluings.iter().enumerate() {
        for (k, g) in faces.iter().enumerate() {
            for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
                if a == k || b == k {
                    continue;
                }
                let (a2, b2) = (g.perm.apply(a), g.perm.apply(b));
                adj[6 * t + e].push((6 * g.neighbor + tet_edge_index(a2, b2), a2 > b2));
            }
        }
    }

    let mut orient = vec![0i8; 6 * n];
    let mut class_of = vec![usize::MAX; 6 * n];
    let mut classes: Vec<EdgeClass> = Vec::new();
    for start in 0..6 * n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        class_of[start] = id;
        orient[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for &(y, flip) in &adj[x] {
                let want = if flip { -orient[x] } else { orient[x] };
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    orient[y] = want;
                    queue.push_back(y);
                } else if orient[y] != want {
                    let (a, b) = TET_EDGES[y % 6];
                    return Err(TriangulationError::EdgeSelfReversed { tet: y / 6, a, b });
                }
            }
        }
        members.sort_unstable();
        let occurrences: Vec<EdgeOccurrence> = members
            .iter()
            .map(|&x| {
                let (a, b) = TET_EDGES[x % 6];
                let (tail, head) = if orient[x] > 0 { (a, b) } else { (b, a) };
                EdgeOccurrence { tet: x / 6, tail, head }
            })
            .collect();
        let first = occurrences[0];
        classes.push(EdgeClass {
            tail: vertex_of[first.tet][first.tail],
            head: vertex_of[first.tet][first.head],
            members: occurrences,
        });
    }

    let mut edge_of = vec![[(0usize, 1i8); 6]; n];
    for t in 0..n {
        for e in 0..6 {
            edge_of[t][e] = (class_of[6 * t + e], orient[6 * t + e]);
        }
    }
    Ok((classes, edge_of))
}

fn face_classes(gluings: &[[Gluing; 4]]) -> (Vec<FaceClass>, Vec<[usize; 4]>) {
    let n = gluings.len();
    let mut uf = UnionFind::new(4 * n);
    for (t, faces) in gluings.iter().enumerate() {
        for (k, g) in faces.iter().enumerate() {
            uf.union(4 * t + k, 4 * g.neighbor + g.perm.apply(k));
        }
    }
    let (class_of, count) = number_classes(&mut uf, 4 * n);
    let mut classes = vec![FaceClass { members: vec![] }; count];
    let mut face_of = vec![[0; 4]; n];
    for t in 0..n {
        for k in 0..4 {
            let c = class_of[4 * t + k];
            classes[c].members.push((t, k));
            face_of[t][k] = c;
        }
    }
    (classes, face_of)
}
