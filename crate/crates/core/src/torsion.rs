//! Torsion of the based acyclic complex and the normalized invariant
//! `I = τ · ∏_faces S · 2^(−V−1)`.
//!
//! A partition chooses, in each middle space `C_k`, the basis vectors that
//! index rows of the minor of `f_k`; the rest index columns of the minor of
//! `f_{k+1}`. `τ = m1·m3·m5 / (m2·m4)`.
//!
//! Choosing the rows greedily from left to right never gets stuck: if the
//! rows `R_k` give a nonsingular minor of `f_k`, then `im f_k` and the
//! coordinate span of the complementary labels together fill `C_k`, so
//! `f_{k+1}` restricted to those labels has full rank `r_{k+1}`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chain::{build_chain, Acyclicity, ChainComplex, ChainDefect};
use crate::exact::{ExactError, RatMatrix, Rational};
use crate::geometry::{assign_geometry, face_circulations, GeometryAssignment, GeometryError};
use crate::triangulation::{FVector, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("complex is not acyclic: ranks {:?}, expected {:?}", .0.ranks, .0.expected)]
    NotAcyclic(Acyclicity),
    #[error("requested rows of f{k} are linearly dependent: {labels:?}")]
    DependentRows { k: usize, labels: Vec<String> },
    #[error("minor of f{k} vanishes")]
    ZeroMinor { k: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Label(#[from] ExactError),
}

/// For `k = 1..=4`, `rows[k-1]` lists the `C_k` labels used as rows of the
/// minor of `f_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasisPartition {
    pub rows: [Vec<String>; 4],
}

impl BasisPartition {
    /// Labels of `C_{k-1}` that index columns of the minor of `f_k`.
    pub fn cols(&self, c: &ChainComplex, k: usize) -> Vec<String> {
        let source = c.labels(k - 1);
        if k == 1 {
            return source.to_vec();
        }
        let used: HashSet<&String> = self.rows[k - 2].iter().collect();
        source.iter().filter(|l| !used.contains(l)).cloned().collect()
    }

    /// Labels of `C_k` that index rows of the minor of `f_k`.
    pub fn rows_of(&self, c: &ChainComplex, k: usize) -> Vec<String> {
        if k == 5 {
            c.labels(5).to_vec()
        } else {
            self.rows[k - 1].clone()
        }
    }
}

/// Minors of a partition and the torsion they give.
#[derive(Clone, PartialEq, Eq)]
pub struct Torsion {
    pub minors: [Rational; 5],
    pub tau: Rational,
}

impl fmt::Debug for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.minors.iter().map(|m| m.to_string()).collect();
        write!(f, "Torsion {{ minors: [{}], tau: {} }}", m.join(", "), self.tau)
    }
}

/// Picks rows of `m` (restricted to `cols`) spanning its row space, fixed
/// rows first and the rest in `order`.
fn choose_rows(
    m: &RatMatrix,
    k: usize,
    cols: &[String],
    fixed: &[String],
    order: &[usize],
) -> Result<Vec<String>, TorsionError> {
    let ci = m.col_positions(cols)?;
    let fixed_idx = m.row_positions(fixed)?;
    let all: Vec<usize> = (0..m.rows()).collect();
    let sub = m.submatrix(&all, &ci);
    let target = cols.len();

    let fixed_set: HashSet<usize> = fixed_idx.iter().copied().collect();
    let mut preferred = fixed_idx.clone();
    preferred.extend(order.iter().filter(|i| !fixed_set.contains(i)));
    let red = sub.row_reduce_with_order(&preferred);
    if red.rank != target {
        return Err(TorsionError::Inconsistent(format!(
            "f{k} restricted to {target} columns has rank {}",
            red.rank
        )));
    }
    let mut chosen = red.pivot_rows.clone();
    if !fixed_set.iter().all(|i| chosen.contains(i)) {
        // Pivoting skipped a fixed row; grow the fixed set one row at a time.
        if sub.submatrix(&fixed_idx, &(0..target).collect::<Vec<_>>()).rank() != fixed_idx.len() {
            return Err(TorsionError::DependentRows {
                k,
                labels: fixed.to_vec(),
            });
        }
        chosen = fixed_idx.clone();
        let every_col: Vec<usize> = (0..target).collect();
        for &r in &preferred[fixed_idx.len()..] {
            if chosen.len() == target {
                break;
            }
            chosen.push(r);
            if sub.submatrix(&chosen, &every_col).rank() != chosen.len() {
                chosen.pop();
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen.into_iter().map(|i| m.row_labels()[i].clone()).collect())
}

/// Completes a partition from left to right. `fixed[k-1]` lists `C_k`
/// labels that must be rows of the minor of `f_k`; other rows are taken in
/// index order, or in an order shuffled by `seed`.
pub fn complete_partition(
    c: &ChainComplex,
    fixed: &[Vec<String>; 4],
    seed: Option<u64>,
) -> Result<BasisPartition, TorsionError> {
    let acyc = c.check_acyclic();
    if !acyc.acyclic {
        return Err(TorsionError::NotAcyclic(acyc));
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut p = BasisPartition::default();
    for k in 1..=4 {
        let m = c.f(k);
        let mut order: Vec<usize> = (0..m.rows()).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let cols = p.cols(c, k);
        p.rows[k - 1] = choose_rows(m, k, &cols, &fixed[k - 1], &order)?;
    }
    Ok(p)
}

/// Greedy partition with no fixed rows.
pub fn select_partition(c: &ChainComplex, seed: Option<u64>) -> Result<BasisPartition, TorsionError> {
    complete_partition(c, &Default::default(), seed)
}

pub fn minors(c: &ChainComplex, p: &BasisPartition) -> Result<[Rational; 5], TorsionError> {
    let mut out: [Rational; 5] = Default::default();
    for k in 1..=5 {
        let m = c.f(k).minor(&p.rows_of(c, k), &p.cols(c, k))?;
        if m.is_zero() {
            return Err(TorsionError::ZeroMinor { k });
        }
        out[k - 1] = m;
    }
    Ok(out)
}

/// `τ = m1·m3·m5 / (m2·m4)`.
pub fn tau(c: &ChainComplex, p: &BasisPartition) -> Result<Torsion, TorsionError> {
    let minors = minors(c, p)?;
    let tau = &minors[0] * &minors[2] * &minors[4] / (&minors[1] * &minors[3]);
    Ok(Torsion { minors, tau })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("chain property fails: f{}·f{} has {} at ({}, {})", .0.k + 1, .0.k, .0.value, .0.row, .0.col)]
    Chain(ChainDefect),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
}

impl InvariantError {
    pub fn is_not_acyclic(&self) -> bool {
        matches!(self, InvariantError::Torsion(TorsionError::NotAcyclic(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub tau: Rational,
    pub minors: [Rational; 5],
    /// Product of `S` over face classes in their chosen orientations.
    pub face_product: Rational,
    pub vertex_count: usize,
    pub invariant: Rational,
    pub abs_invariant: Rational,
    pub ranks: [usize; 5],
    pub f_vector: FVector,
    /// Geometry seed, if the coordinates were sampled.
    pub seed: Option<u64>,
}

/// `τ · face_product · 2^(−V−1)`.
pub fn normalize(tau: &Rational, face_product: &Rational, vertex_count: usize) -> Rational {
    let two_power = BigInt::one() << (vertex_count + 1);
    tau * face_product / Rational::from_integer(two_power)
}

/// Full pipeline on given coordinates, with a partition completed from
/// `fixed` rows and shuffled by `partition_seed`.
pub fn invariant_with_partition(
    tri: &Triangulation,
    g: &GeometryAssignment,
    fixed: &[Vec<String>; 4],
    partition_seed: Option<u64>,
) -> Result<InvariantResult, InvariantError> {
    let c = build_chain(tri, g)?;
    c.verify_chain().map_err(InvariantError::Chain)?;
    let p = complete_partition(&c, fixed, partition_seed)?;
    let t = tau(&c, &p)?;
    let face_product = face_circulations(tri, &g.edge_values(tri))
        .into_iter()
        .fold(Rational::one(), |acc, s| acc * s);
    let vertex_count = tri.vertices().len();
    let invariant = normalize(&t.tau, &face_product, vertex_count);
    Ok(InvariantResult {
        abs_invariant: invariant.abs(),
        invariant,
        tau: t.tau,
        minors: t.minors,
        face_product,
        vertex_count,
        ranks: c.ranks(),
        f_vector: tri.f_vector(),
        seed: g.seed,
    })
}

pub fn invariant_with_geometry(
    tri: &Triangulation,
    g: &GeometryAssignment,
    partition_seed: Option<u64>,
) -> Result<InvariantResult, InvariantError> {
    invariant_with_partition(tri, g, &Default::default(), partition_seed)
}

/// Samples coordinates from `seed` and runs the pipeline with the
/// deterministic partition.
pub fn invariant(tri: &Triangulation, seed: u64, retries: usize) -> Result<InvariantResult, InvariantError> {
    let g = assign_geometry(tri, seed, retries)?;
    invariant_with_geometry(tri, &g, None)
}

/// Rows named in the worked examples: `{dx, dy, dk}` of vertex 0, `{dx, dy}`
/// of vertex 1 and `dx` of vertex 2 for `f1`.
pub fn reference_f1_rows() -> Vec<String> {
    use crate::chain::{dk, dx, dy};
    vec![dx(0), dy(0), dk(0), dx(1), dy(1), dx(2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::chain::{dlambda, domega};
    use crate::exact::{int, rat};
    use crate::geometry::DEFAULT_RETRIES;

    fn square() -> GeometryAssignment {
        GeometryAssignment::from_points(&[(0, 0), (1, 0), (0, 1), (1, 1)])
    }

    #[test]
    fn sphere_reference_values() {
        let t = builtin::s3();
        let c = build_chain(&t, &square()).unwrap();
        let fixed = [reference_f1_rows(), vec![], vec![], vec![]];
        let p = complete_partition(&c, &fixed, None).unwrap();
        assert_eq!(p.rows[0], reference_f1_rows());
        assert_eq!(p.rows[1].len(), 6);
        assert!(p.rows[2].is_empty());
        let tr = tau(&c, &p).unwrap();
        assert_eq!((&tr.minors[0] / &tr.minors[1]).abs(), int(8));
        assert_eq!(tr.minors[2], int(1));
        // 4 / (1/2)^4.
        assert_eq!((&tr.minors[4] / &tr.minors[3]).abs(), int(64));
        assert_eq!(tr.tau.abs(), int(512));
        let r = invariant_with_geometry(&t, &square(), None).unwrap();
        assert_eq!(r.abs_invariant, int(1));
        assert_eq!(r.face_product.abs(), rat(1, 16));
    }

    #[test]
    fn partition_seeds_agree_up_to_sign() {
        let t = builtin::rp3();
        let g = assign_geometry(&t, 3, DEFAULT_RETRIES).unwrap();
        let c = build_chain(&t, &g).unwrap();
        let base = tau(&c, &select_partition(&c, None).unwrap()).unwrap().tau;
        for seed in 0..6 {
            let p = select_partition(&c, Some(seed)).unwrap();
            assert_eq!(tau(&c, &p).unwrap().tau.abs(), base.abs());
        }
    }

    #[test]
    fn projective_space_is_64() {
        let t = builtin::rp3();
        for seed in [0, 1, 2] {
            assert_eq!(invariant(&t, seed, DEFAULT_RETRIES).unwrap().abs_invariant, int(64));
        }
    }

    #[test]
    fn primed_rows_are_a_valid_partition() {
        let t = builtin::rp3();
        let g = assign_geometry(&t, 5, DEFAULT_RETRIES).unwrap();
        let c = build_chain(&t, &g).unwrap();
        let edge = |n: &str| builtin::rp3_edge(&t, n).unwrap();
        let primed: Vec<String> = ["b'", "c'", "d'", "f'", "g'", "h'"].iter().map(|n| dlambda(edge(n))).collect();
        let unprimed: Vec<String> = ["b", "c", "d", "f", "g", "h"].iter().map(|n| domega(edge(n))).collect();
        let fixed = [reference_f1_rows(), primed.clone(), unprimed.clone(), vec![]];
        let p = complete_partition(&c, &fixed, None).unwrap();
        let mut want = primed;
        want.sort();
        let mut got = p.rows[1].clone();
        got.sort();
        assert_eq!(got, want);
        let tr = tau(&c, &p).unwrap();
        let s = |a, b, cc| g.area(a, b, cc);
        let prod = s(0, 1, 2) * s(0, 1, 3) * s(0, 2, 3) * s(1, 2, 3);
        assert_eq!(tr.minors[2].abs(), (int(64) / (prod.clone() * &prod * &prod)).abs());
    }

    #[test]
    fn dependent_fixed_rows_are_rejected() {
        let t = builtin::s3();
        let c = build_chain(&t, &square()).unwrap();
        // dk rows of f1 only involve dx, dy, dk columns: four of them are dependent.
        use crate::chain::dk;
        let fixed = [vec![dk(0), dk(1), dk(2), dk(3)], vec![], vec![], vec![]];
        assert!(matches!(
            complete_partition(&c, &fixed, None),
            Err(TorsionError::DependentRows { k: 1, .. })
        ));
    }

    #[test]
    fn zeroed_f3_reports_not_acyclic() {
        let t = builtin::rp3();
        let g = assign_geometry(&t, 0, DEFAULT_RETRIES).unwrap();
        let mut c = build_chain(&t, &g).unwrap();
        let f3 = c.f_mut(3);
        for i in 0..f3.rows() {
            for j in 0..f3.cols() {
                f3.set(i, j, Rational::zero());
            }
        }
        assert!(matches!(select_partition(&c, None), Err(TorsionError::NotAcyclic(_))));
    }

    #[test]
    fn normalization_power_of_two() {
        assert_eq!(normalize(&int(512), &rat(1, 16), 4), int(1));
        assert_eq!(normalize(&int(3), &int(1), 0), rat(3, 2));
    }
}
