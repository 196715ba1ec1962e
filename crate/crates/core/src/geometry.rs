//! Plane coordinates on vertex classes and the scalar fields derived from
//! them: edge values, face circulations, dihedral-angle values, curvatures
//! around edges and their derivatives, and the sl(2) holonomy generators.
//!
//! Edge values are the independent variables. Every face circulation is a
//! linear form in them with small integer coefficients, so each angle value
//! is `½·N/(L·R)` with `N`, `L`, `R` linear; derivatives follow from the
//! quotient rule without any symbolic machinery. The same [`AngleTerm`]
//! engine serves the local five-point checks in [`crate::pentagon`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{int, parse_rational, rat, Rational};
use crate::triangulation::{StarContribution, Triangulation};

/// Sampled numerators lie in `[-NUMERATOR_RANGE, NUMERATOR_RANGE]`.
pub const NUMERATOR_RANGE: i64 = 64;
/// Sampled denominators lie in `[1, DENOMINATOR_RANGE]`.
pub const DENOMINATOR_RANGE: i64 = 16;
pub const DEFAULT_RETRIES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("face circulation vanishes: {0}")]
    ZeroCirculation(String),
    #[error(
        "no nondegenerate coordinates after {attempts} attempts (face class {face} keeps \
         vanishing); the triangulation probably has a tetrahedron with a repeated vertex \
         class, subdivide it with 1->4 moves"
    )]
    Degenerate { attempts: usize, face: usize },
    #[error("geometry has {got} vertex entries, triangulation has {want} vertex classes")]
    VertexCount { got: usize, want: usize },
    #[error("geometry line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Sparse linear form `Σ c_i·λ_i` with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearForm {
    terms: Vec<(usize, i32)>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(v: usize, coeff: i32) -> Self {
        let mut f = LinearForm::zero();
        f.add_term(v, coeff);
        f
    }

    pub fn add_term(&mut self, v: usize, coeff: i32) {
        match self.terms.binary_search_by_key(&v, |&(u, _)| u) {
            Ok(i) => {
                self.terms[i].1 += coeff;
                if self.terms[i].1 == 0 {
                    self.terms.remove(i);
                }
            }
            Err(i) if coeff != 0 => self.terms.insert(i, (v, coeff)),
            Err(_) => {}
        }
    }

    pub fn plus(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for &(v, c) in &other.terms {
            out.add_term(v, c);
        }
        out
    }

    pub fn coeff(&self, v: usize) -> i32 {
        self.terms
            .binary_search_by_key(&v, |&(u, _)| u)
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn terms(&self) -> &[(usize, i32)] {
        &self.terms
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for &(v, c) in &self.terms {
            acc += &values[v] * int(c as i64);
        }
        acc
    }
}

/// Circulation `λ_ab + λ_bc + λ_ca` for an edge-variable lookup that returns
/// `(variable, ±1)` for the directed edge `a -> b`.
pub fn circulation(edge: &impl Fn(usize, usize) -> (usize, i32), a: usize, b: usize, c: usize) -> LinearForm {
    let mut f = LinearForm::zero();
    for (u, v) in [(a, b), (b, c), (c, a)] {
        let (var, s) = edge(u, v);
        f.add_term(var, s);
    }
    f
}

/// Dihedral-angle value of a positively ordered tetrahedron `(P, Q, E, D)`
/// at its edge `E -> D`:
///
/// `α = ½ (S_PDQ + S_PEQ) / (S_PDE · S_QDE)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleTerm {
    pub numerator: LinearForm,
    pub left: LinearForm,
    pub right: LinearForm,
    /// Vertex labels `(P, Q, E, D)` in the caller's numbering, for messages.
    pub labels: [usize; 4],
    pub tet: Option<usize>,
}

impl AngleTerm {
    pub fn new(
        p: usize,
        q: usize,
        e: usize,
        d: usize,
        edge: impl Fn(usize, usize) -> (usize, i32),
    ) -> Self {
        let numerator = circulation(&edge, p, d, q).plus(&circulation(&edge, p, e, q));
        AngleTerm {
            numerator,
            left: circulation(&edge, p, d, e),
            right: circulation(&edge, q, d, e),
            labels: [p, q, e, d],
            tet: None,
        }
    }

    fn denominators(&self, values: &[Rational]) -> Result<(Rational, Rational), GeometryError> {
        let l = self.left.eval(values);
        let r = self.right.eval(values);
        let [p, q, e, d] = self.labels;
        let place = match self.tet {
            Some(t) => format!("tetrahedron {t}, "),
            None => String::new(),
        };
        if l.is_zero() {
            return Err(GeometryError::ZeroCirculation(format!("{place}face ({p},{d},{e})")));
        }
        if r.is_zero() {
            return Err(GeometryError::ZeroCirculation(format!("{place}face ({q},{d},{e})")));
        }
        Ok((l, r))
    }

    pub fn value(&self, values: &[Rational]) -> Result<Rational, GeometryError> {
        let (l, r) = self.denominators(values)?;
        Ok(self.numerator.eval(values) / (l * r * int(2)))
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, values: &[Rational], v: usize) -> Result<Rational, GeometryError> {
        let (l, r) = self.denominators(values)?;
        let dn = int(self.numerator.coeff(v) as i64);
        let dl = int(self.left.coeff(v) as i64);
        let dr = int(self.right.coeff(v) as i64);
        if dn.is_zero() && dl.is_zero() && dr.is_zero() {
            return Ok(Rational::zero());
        }
        let n = self.numerator.eval(values);
        let lr = &l * &r;
        let num = dn * &lr - n * (dl * &r + &l * dr);
        Ok(num / (lr.clone() * lr * int(2)))
    }

    /// Every variable the term depends on.
    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.numerator
            .terms()
            .iter()
            .chain(self.left.terms())
            .chain(self.right.terms())
            .map(|&(v, _)| v)
    }
}

/// Edge value per edge class, in the class's canonical direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeValues(pub Vec<Rational>);

impl EdgeValues {
    pub fn get(&self, edge: usize) -> &Rational {
        &self.0[edge]
    }

    /// Value of the edge traversed in the direction given by `sign`.
    pub fn oriented(&self, edge: usize, sign: i8) -> Rational {
        if sign > 0 {
            self.0[edge].clone()
        } else {
            -self.0[edge].clone()
        }
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

/// Numerator uniform in `[-64, 64]`, denominator uniform in `[1, 16]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-NUMERATOR_RANGE..=NUMERATOR_RANGE);
    let d = rng.gen_range(1..=DENOMINATOR_RANGE);
    rat(n, d)
}

/// Plane coordinates and κ per vertex class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryAssignment {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub kappa: Vec<Rational>,
    /// Seed the assignment was sampled from, if any.
    pub seed: Option<u64>,
}

impl GeometryAssignment {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, kappa: Vec<Rational>) -> Self {
        assert!(x.len() == y.len() && y.len() == kappa.len());
        GeometryAssignment {
            x,
            y,
            kappa,
            seed: None,
        }
    }

    /// Integer points with κ ≡ 0.
    pub fn from_points(points: &[(i64, i64)]) -> Self {
        GeometryAssignment::new(
            points.iter().map(|&(x, _)| int(x)).collect(),
            points.iter().map(|&(_, y)| int(y)).collect(),
            vec![Rational::zero(); points.len()],
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.x.len()
    }

    /// `λ_AB = S_OAB + κ_B − κ_A` with `O` the coordinate origin.
    pub fn lambda(&self, a: usize, b: usize) -> Rational {
        let area = (&self.x[a] * &self.y[b] - &self.x[b] * &self.y[a]) / int(2);
        area + &self.kappa[b] - &self.kappa[a]
    }

    /// Edge vector `(x_B − x_A, y_B − y_A)`.
    pub fn edge_vector(&self, a: usize, b: usize) -> (Rational, Rational) {
        (&self.x[b] - &self.x[a], &self.y[b] - &self.y[a])
    }

    /// Oriented plane area of the triangle `abc`.
    pub fn area(&self, a: usize, b: usize, c: usize) -> Rational {
        let (ux, uy) = self.edge_vector(a, b);
        let (vx, vy) = self.edge_vector(a, c);
        (ux * vy - uy * vx) / int(2)
    }

    /// Flat edge values for every edge class.
    pub fn edge_values(&self, tri: &Triangulation) -> EdgeValues {
        EdgeValues(tri.edges().iter().map(|e| self.lambda(e.tail, e.head)).collect())
    }

    /// Draws coordinates and κ for `vertices` classes.
    pub fn sample(vertices: usize, rng: &mut impl Rng) -> Self {
        let mut draw = || random_rational(rng);
        let mut x = Vec::with_capacity(vertices);
        let mut y = Vec::with_capacity(vertices);
        let mut kappa = Vec::with_capacity(vertices);
        for _ in 0..vertices {
            x.push(draw());
            y.push(draw());
            kappa.push(draw());
        }
        GeometryAssignment::new(x, y, kappa)
    }

    /// First face class whose circulation vanishes, if any.
    pub fn degenerate_face(&self, tri: &Triangulation) -> Option<usize> {
        let lam = self.edge_values(tri);
        (0..tri.faces().len()).find(|&f| s_of_face(tri, &lam, f).is_zero())
    }

    /// Parses `vertex <class-id> <x> <y> <kappa>` lines; every class in
    /// `0..vertices` must appear exactly once.
    pub fn parse(text: &str, vertices: usize) -> Result<Self, GeometryError> {
        let err = |line: usize, message: String| GeometryError::Parse { line, message };
        let mut slots: Vec<Option<(Rational, Rational, Rational)>> = vec![None; vertices];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 || parts[0] != "vertex" {
                return Err(err(i + 1, format!("expected `vertex <id> <x> <y> <kappa>`, got `{line}`")));
            }
            let id: usize = parts[1]
                .parse()
                .map_err(|_| err(i + 1, format!("bad vertex id `{}`", parts[1])))?;
            if id >= vertices {
                return Err(GeometryError::VertexCount { got: id + 1, want: vertices });
            }
            if slots[id].is_some() {
                return Err(err(i + 1, format!("vertex {id} given twice")));
            }
            let num = |s: &str| parse_rational(s).map_err(|e| err(i + 1, e.to_string()));
            slots[id] = Some((num(parts[2])?, num(parts[3])?, num(parts[4])?));
        }
        let got = slots.iter().filter(|s| s.is_some()).count();
        if got != vertices {
            return Err(GeometryError::VertexCount { got, want: vertices });
        }
        let mut g = GeometryAssignment::new(vec![], vec![], vec![]);
        for (x, y, k) in slots.into_iter().flatten() {
            g.x.push(x);
            g.y.push(y);
            g.kappa.push(k);
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        (0..self.vertex_count())
            .map(|v| format!("vertex {v} {} {} {}\n", self.x[v], self.y[v], self.kappa[v]))
            .collect()
    }
}

/// Samples coordinates from `seed`, retrying until every face circulation
/// is nonzero. Attempt `i` draws from a stream derived from `(seed, i)`.
pub fn assign_geometry(
    tri: &Triangulation,
    seed: u64,
    max_retries: usize,
) -> Result<GeometryAssignment, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_face = 0;
    for _ in 0..max_retries.max(1) {
        let mut g = GeometryAssignment::sample(tri.vertices().len(), &mut rng);
        match g.degenerate_face(tri) {
            None => {
                g.seed = Some(seed);
                return Ok(g);
            }
            Some(f) => last_face = f,
        }
    }
    Err(GeometryError::Degenerate {
        attempts: max_retries.max(1),
        face: last_face,
    })
}

/// Checks an externally supplied assignment against a triangulation.
pub fn check_geometry(tri: &Triangulation, g: &GeometryAssignment) -> Result<(), GeometryError> {
    if g.vertex_count() != tri.vertices().len() {
        return Err(GeometryError::VertexCount {
            got: g.vertex_count(),
            want: tri.vertices().len(),
        });
    }
    match g.degenerate_face(tri) {
        Some(f) => Err(GeometryError::ZeroCirculation(format!("face class {f}"))),
        None => Ok(()),
    }
}

/// Alias for [`GeometryAssignment::lambda`].
pub fn lambda_of(g: &GeometryAssignment, a: usize, b: usize) -> Rational {
    g.lambda(a, b)
}

fn tet_edge_lookup(tri: &Triangulation, tet: usize) -> impl Fn(usize, usize) -> (usize, i32) + '_ {
    move |a, b| {
        let (class, s) = tri.edge_of(tet, a, b);
        (class, s as i32)
    }
}

/// Circulation of the slot triangle `(a, b, c)` of `tet` as a linear form
/// over edge classes.
pub fn face_form(tri: &Triangulation, tet: usize, [a, b, c]: [usize; 3]) -> LinearForm {
    circulation(&tet_edge_lookup(tri, tet), a, b, c)
}

/// Face circulation of a face class in its chosen boundary orientation.
pub fn s_of_face(tri: &Triangulation, lam: &EdgeValues, face: usize) -> Rational {
    let (tet, slots) = tri.faces()[face].boundary();
    face_form(tri, tet, slots).eval(lam.as_slice())
}

pub fn face_circulations(tri: &Triangulation, lam: &EdgeValues) -> Vec<Rational> {
    (0..tri.faces().len()).map(|f| s_of_face(tri, lam, f)).collect()
}

pub fn angle_term(tri: &Triangulation, c: &StarContribution) -> AngleTerm {
    let mut term = AngleTerm::new(c.p, c.q, c.e, c.d, tet_edge_lookup(tri, c.tet));
    term.tet = Some(c.tet);
    term
}

pub fn angle(tri: &Triangulation, lam: &EdgeValues, c: &StarContribution) -> Result<Rational, GeometryError> {
    angle_term(tri, c).value(lam.as_slice())
}

/// Curvature around an edge class in its canonical direction.
pub fn omega(tri: &Triangulation, lam: &EdgeValues, edge: usize) -> Result<Rational, GeometryError> {
    let mut sum = Rational::zero();
    for c in &tri.edge_star(edge).contributions {
        sum += angle(tri, lam, c)?;
    }
    Ok(sum)
}

/// `∂ω_a / ∂λ_b`.
pub fn domega_dlambda(
    tri: &Triangulation,
    lam: &EdgeValues,
    a: usize,
    b: usize,
) -> Result<Rational, GeometryError> {
    let mut sum = Rational::zero();
    for c in &tri.edge_star(a).contributions {
        sum += angle_term(tri, c).derivative(lam.as_slice(), b)?;
    }
    Ok(sum)
}

/// Nonzero entries of the row `b -> ∂ω_a/∂λ_b`.
pub fn omega_gradient(
    tri: &Triangulation,
    lam: &EdgeValues,
    a: usize,
) -> Result<BTreeMap<usize, Rational>, GeometryError> {
    let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
    for c in &tri.edge_star(a).contributions {
        let term = angle_term(tri, c);
        let mut vars: Vec<usize> = term.variables().collect();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            let d = term.derivative(lam.as_slice(), v)?;
            *row.entry(v).or_insert_with(Rational::zero) += d;
        }
    }
    row.retain(|_, v| !v.is_zero());
    Ok(row)
}

/// Element of sl(2) generated by going around an edge with vector
/// `(x, y)` and curvature increment `dω`:
/// `½·dω·[[−xy, x²], [−y², xy]]`.
#[derive(Clone, PartialEq, Eq)]
pub struct HolonomyGenerator {
    pub matrix: [[Rational; 2]; 2],
}

impl HolonomyGenerator {
    /// Column form `(x², xy, y²)·dω/2`, matching the `(dγ)₁,₂,₃` components.
    pub fn column(&self) -> [Rational; 3] {
        [
            self.matrix[0][1].clone(),
            self.matrix[1][1].clone(),
            -self.matrix[1][0].clone(),
        ]
    }

    pub fn trace(&self) -> Rational {
        &self.matrix[0][0] + &self.matrix[1][1]
    }

    pub fn det(&self) -> Rational {
        &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0]
    }

    /// `I + generator`.
    pub fn exp_first_order(&self) -> [[Rational; 2]; 2] {
        let mut m = self.matrix.clone();
        m[0][0] += Rational::one();
        m[1][1] += Rational::one();
        m
    }
}

impl fmt::Debug for HolonomyGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

pub fn holonomy_generator(x: &Rational, y: &Rational, domega: &Rational) -> HolonomyGenerator {
    let h = domega / int(2);
    let xy = x * y;
    HolonomyGenerator {
        matrix: [
            [-&h * &xy, &h * x * x],
            [-&h * y * y, &h * xy],
        ],
    }
}
