//! The five-map complex
//!
//! `C0 (6) -f1-> C1 (3V) -f2-> C2 (E) -f3-> C3 (E) -f4-> C4 (3V) -f5-> C5 (6)`
//!
//! assembled at the flat point of a geometry assignment. Each map is a
//! [`RatMatrix`] whose rows are labeled by the target basis and columns by
//! the source basis, so `f_{k+1}·f_k` is an ordinary matrix product.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::exact::{fraction_string, int, RatMatrix, Rational};
use crate::geometry::{omega_gradient, GeometryAssignment, GeometryError};
use crate::triangulation::Triangulation;

pub const C0_LABELS: [&str; 6] = ["dt1", "dt2", "dt3", "dx", "dy", "dk"];
pub const C5_LABELS: [&str; 6] = ["dbeta1", "dbeta2", "dbeta3", "dbeta4", "dbeta5", "dbeta6"];

pub fn dx(v: usize) -> String {
    format!("dx[{v}]")
}
pub fn dy(v: usize) -> String {
    format!("dy[{v}]")
}
pub fn dk(v: usize) -> String {
    format!("dk[{v}]")
}
pub fn dlambda(e: usize) -> String {
    format!("dlambda[{e}]")
}
pub fn domega(e: usize) -> String {
    format!("domega[{e}]")
}
/// `i` in `1..=3`.
pub fn dgamma(i: usize, v: usize) -> String {
    format!("dgamma{i}[{v}]")
}

/// Basis labels of the six spaces.
pub fn space_labels(vertices: usize, edges: usize) -> [Vec<String>; 6] {
    let c1 = (0..vertices).flat_map(|v| [dx(v), dy(v), dk(v)]).collect();
    let c4 = (0..vertices)
        .flat_map(|v| [dgamma(1, v), dgamma(2, v), dgamma(3, v)])
        .collect();
    [
        C0_LABELS.iter().map(|s| s.to_string()).collect(),
        c1,
        (0..edges).map(dlambda).collect(),
        (0..edges).map(domega).collect(),
        c4,
        C5_LABELS.iter().map(|s| s.to_string()).collect(),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `maps[k]` is `f_{k+1}`.
    pub maps: [RatMatrix; 5],
}

/// First nonzero entry of a composite `f_{k+1}·f_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDefect {
    /// `k` of the composite `f_{k+1}·f_k`.
    pub k: usize,
    pub row: String,
    pub col: String,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Acyclicity {
    pub acyclic: bool,
    pub ranks: [usize; 5],
    pub expected: [usize; 5],
}

impl ChainComplex {
    /// `f_k` for `k` in `1..=5`.
    pub fn f(&self, k: usize) -> &RatMatrix {
        &self.maps[k - 1]
    }

    pub fn f_mut(&mut self, k: usize) -> &mut RatMatrix {
        &mut self.maps[k - 1]
    }

    pub fn dims(&self) -> [usize; 6] {
        let (v, e) = (self.vertex_count, self.edge_count);
        [6, 3 * v, e, e, 3 * v, 6]
    }

    /// Basis labels of `C_k`, `k` in `0..=5`.
    pub fn labels(&self, k: usize) -> &[String] {
        if k == 0 {
            self.maps[0].col_labels()
        } else {
            self.maps[k - 1].row_labels()
        }
    }

    /// Ranks required for acyclicity.
    pub fn expected_ranks(&self) -> [usize; 5] {
        let (v, e) = (self.vertex_count as isize, self.edge_count as isize);
        [6, 3 * v - 6, e - 3 * v + 6, 3 * v - 6, 6].map(|r| r.max(0) as usize)
    }

    /// `Ok` iff every composite vanishes; otherwise the first nonzero entry.
    pub fn verify_chain(&self) -> Result<(), ChainDefect> {
        for k in 1..5 {
            let product = self.f(k + 1).mul(self.f(k)).expect("adjacent maps compose");
            if let Some((i, j)) = product.first_nonzero() {
                return Err(ChainDefect {
                    k,
                    row: product.row_labels()[i].clone(),
                    col: product.col_labels()[j].clone(),
                    value: product.get(i, j).clone(),
                });
            }
        }
        Ok(())
    }

    pub fn ranks(&self) -> [usize; 5] {
        std::array::from_fn(|k| self.maps[k].rank())
    }

    pub fn check_acyclic(&self) -> Acyclicity {
        let ranks = self.ranks();
        let expected = self.expected_ranks();
        let v = self.vertex_count as isize;
        let e = self.edge_count as isize;
        Acyclicity {
            acyclic: ranks == expected && e - 3 * v + 6 >= 0 && v >= 2,
            ranks,
            expected,
        }
    }

    /// One line per nonzero entry, `f<k> <row> <col> <p/q>`, after a header.
    pub fn dump(&self) -> String {
        let d = self.dims();
        let mut out = format!(
            "# pentachain chain V={} E={} dims {} {} {} {} {} {}\n",
            self.vertex_count, self.edge_count, d[0], d[1], d[2], d[3], d[4], d[5]
        );
        for (k, m) in self.maps.iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = m.get(i, j);
                    if !v.is_zero() {
                        let _ = writeln!(
                            out,
                            "f{} {} {} {}",
                            k + 1,
                            m.row_labels()[i],
                            m.col_labels()[j],
                            fraction_string(v)
                        );
                    }
                }
            }
        }
        out
    }
}

/// Assembles all five maps at the flat point of `g`.
pub fn build_chain(tri: &Triangulation, g: &GeometryAssignment) -> Result<ChainComplex, GeometryError> {
    let vertices = tri.vertices().len();
    let edges = tri.edges().len();
    if g.vertex_count() != vertices {
        return Err(GeometryError::VertexCount {
            got: g.vertex_count(),
            want: vertices,
        });
    }
    let [c0, c1, c2, c3, c4, c5] = space_labels(vertices, edges);
    let half = int(1) / int(2);
    let zeros = |rows: &Vec<String>, cols: &Vec<String>| {
        RatMatrix::zeros(rows.clone(), cols.clone()).expect("labels are unique")
    };

    // f1: C0 -> C1.
    let mut f1 = zeros(&c1, &c0);
    for v in 0..vertices {
        let (x, y) = (&g.x[v], &g.y[v]);
        let (rx, ry, rk) = (3 * v, 3 * v + 1, 3 * v + 2);
        f1.set(rx, 0, y.clone());
        f1.set(rx, 2, x.clone());
        f1.set(rx, 3, int(1));
        f1.set(ry, 1, x.clone());
        f1.set(ry, 2, -y.clone());
        f1.set(ry, 4, int(1));
        f1.set(rk, 3, -y * &half);
        f1.set(rk, 4, x * &half);
        f1.set(rk, 5, int(1));
    }

    // f2: C1 -> C2, differential of λ_AB = S_OAB + κ_B − κ_A.
    let mut f2 = zeros(&c2, &c1);
    for (e, class) in tri.edges().iter().enumerate() {
        let (a, b) = (class.tail, class.head);
        f2.add_to(e, 3 * a, &(&g.y[b] * &half));
        f2.add_to(e, 3 * a + 1, &(-&g.x[b] * &half));
        f2.add_to(e, 3 * a + 2, &int(-1));
        f2.add_to(e, 3 * b, &(-&g.y[a] * &half));
        f2.add_to(e, 3 * b + 1, &(&g.x[a] * &half));
        f2.add_to(e, 3 * b + 2, &int(1));
    }

    // f3: C2 -> C3, Jacobian of curvatures.
    let lam = g.edge_values(tri);
    let mut f3 = zeros(&c3, &c2);
    for a in 0..edges {
        for (b, v) in omega_gradient(tri, &lam, a)? {
            f3.set(a, b, v);
        }
    }

    // f4: C3 -> C4, holonomy columns at both ends of each edge.
    let mut f4 = zeros(&c4, &c3);
    for (e, class) in tri.edges().iter().enumerate() {
        let (x, y) = g.edge_vector(class.tail, class.head);
        let triple = [&x * &x * &half, &x * &y * &half, &y * &y * &half];
        for (i, t) in triple.iter().enumerate() {
            f4.add_to(3 * class.tail + i, e, t);
            f4.add_to(3 * class.head + i, e, &-t.clone());
        }
    }

    // f5: C4 -> C5.
    let mut f5 = zeros(&c5, &c4);
    for v in 0..vertices {
        let (x, y) = (&g.x[v], &g.y[v]);
        let (g1, g2, g3) = (3 * v, 3 * v + 1, 3 * v + 2);
        f5.set(0, g1, int(1));
        f5.set(1, g2, int(1));
        f5.set(2, g3, int(1));
        f5.set(3, g1, y.clone());
        f5.set(3, g2, -x.clone());
        f5.set(4, g2, y.clone());
        f5.set(4, g3, -x.clone());
        f5.set(5, g1, y * y);
        f5.set(5, g2, -(x * y * int(2)));
        f5.set(5, g3, x * x);
    }

    Ok(ChainComplex {
        vertex_count: vertices,
        edge_count: edges,
        maps: [f1, f2, f3, f4, f5],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::geometry::{assign_geometry, DEFAULT_RETRIES};
    use proptest::prelude::*;

    fn square() -> GeometryAssignment {
        GeometryAssignment::from_points(&[(0, 0), (1, 0), (0, 1), (1, 1)])
    }

    #[test]
    fn sphere_complex() {
        let t = builtin::s3();
        let c = build_chain(&t, &square()).unwrap();
        assert_eq!(c.dims(), [6, 12, 6, 6, 12, 6]);
        assert!(c.f(3).is_zero());
        assert!(c.verify_chain().is_ok());
        let acyc = c.check_acyclic();
        assert_eq!(acyc.ranks, [6, 6, 0, 6, 6]);
        assert!(acyc.acyclic);
    }

    #[test]
    fn projective_complex() {
        let t = builtin::rp3();
        let g = assign_geometry(&t, 0, DEFAULT_RETRIES).unwrap();
        let c = build_chain(&t, &g).unwrap();
        assert!(c.verify_chain().is_ok());
        let acyc = c.check_acyclic();
        assert_eq!(acyc.ranks, [6, 6, 6, 6, 6]);
        assert!(acyc.acyclic);
    }

    #[test]
    fn zeroed_f3_is_not_acyclic() {
        let t = builtin::rp3();
        let g = assign_geometry(&t, 0, DEFAULT_RETRIES).unwrap();
        let mut c = build_chain(&t, &g).unwrap();
        let f3 = c.f_mut(3);
        for i in 0..f3.rows() {
            for j in 0..f3.cols() {
                f3.set(i, j, Rational::zero());
            }
        }
        assert!(c.verify_chain().is_ok());
        assert!(!c.check_acyclic().acyclic);
    }

    #[test]
    fn perturbed_entry_is_located() {
        let t = builtin::s3();
        let mut c = build_chain(&t, &square()).unwrap();
        let col = c.f(2).col_position("dy[2]").unwrap();
        let row = c.f(2).row_position("dlambda[1]").unwrap();
        c.f_mut(2).add_to(row, col, &int(1));
        let defect = c.verify_chain().unwrap_err();
        assert_eq!(defect.k, 1);
        assert_eq!(defect.row, "dlambda[1]");
        // f2·f1 picks up the f1 row dy[2] = x·dt2 − y·dt3 + dy; x = 0, y = 1.
        assert_eq!(defect.col, "dt3");
    }

    #[test]
    fn every_symbol_is_one_label() {
        let t = builtin::rp3();
        let g = assign_geometry(&t, 1, DEFAULT_RETRIES).unwrap();
        let c = build_chain(&t, &g).unwrap();
        let mut all: Vec<&String> = (0..6).flat_map(|k| c.labels(k)).collect();
        let n = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n);
        assert_eq!(n, 6 + 12 + 12 + 12 + 12 + 6);
    }

    #[test]
    fn dump_lists_nonzero_entries() {
        let t = builtin::s3();
        let c = build_chain(&t, &square()).unwrap();
        let dump = c.dump();
        assert!(dump.starts_with("# pentachain chain V=4 E=6 dims 6 12 6 6 12 6\n"));
        assert!(dump.contains("\nf1 dx[0] dx 1/1\n"));
        assert!(!dump.lines().any(|l| l.starts_with("f3 ")));
        assert!(!dump.contains(" 0/1"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn composites_vanish(seed in any::<u64>()) {
            for t in [builtin::s3(), builtin::rp3()] {
                let g = assign_geometry(&t, seed, DEFAULT_RETRIES).unwrap();
                let c = build_chain(&t, &g).unwrap();
                prop_assert_eq!(c.verify_chain(), Ok(()));
                // The first three rows of f5 kill f4 column by column.
                let f4 = c.f(4);
                for j in 0..f4.cols() {
                    for i in 0..3 {
                        let mut sum = Rational::zero();
                        for v in 0..c.vertex_count {
                            sum += f4.get(3 * v + i, j);
                        }
                        prop_assert!(sum.is_zero());
                    }
                }
            }
        }
    }
}
