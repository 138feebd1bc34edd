//! The twisted squaring map at the matrix level, the twist solver, and the
//! local parity cross-validation.
//!
//! Over the 105-divisor basis `S`, the squaring pairing is
//!
//! ```text
//! Q[d1][d2] = T(d1, d1, d2)
//! ```
//!
//! and a twist class `L = Σ ε_d·d` shifts it to
//!
//! ```text
//! Q_L[d1][d2] = T(d1, d1, d2) + Σ_d ε_d·T(d, d1, d2),
//! ```
//!
//! the matrix of `D ↦ D² + DL` paired against the generators. Because the
//! generators span the mod-2 second cohomology and the triple pairing is
//! perfect on the torsion-free mod-2 cohomology, the rank of `Q_L` equals
//! the rank of the twisted squaring map itself.
//!
//! A twist is maximally degenerate when `Q_L = 0`; `solve_m2_twists` finds
//! the full affine coset of such classes by solving `M·ε = vec(Q)`, where
//! row `(d1, d2)` of `M` holds `T(d, d1, d2)`. All ordered pairs are kept as
//! equations; the redundancy doubles as a symmetry certificate.
//!
//! `local_validate` re-derives the same condition pair by pair from the
//! local configurations of the triple table (the seven cases below), so a
//! solution can be cross-checked against an independently organized
//! computation.

use crate::gf2::{BitMatrix, BitVec};
use crate::ids::DivisorId;
use crate::intersection::TripleTable;
use crate::lattice::{two_faces, Geometry, DIVISOR_COUNT};
use crate::par;
use crate::rng::SplitMix64;
use std::fmt;

/// A GF(2) combination of the 105 basis divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistClass {
    pub eps: BitVec,
}

impl TwistClass {
    #[must_use]
    pub fn zero() -> Self {
        Self {
            eps: BitVec::zeros(DIVISOR_COUNT),
        }
    }

    #[must_use]
    pub fn from_eps(eps: BitVec) -> Self {
        assert_eq!(eps.len(), DIVISOR_COUNT, "twist class has 105 coordinates");
        Self { eps }
    }

    /// Builds a class from divisor ids.
    pub fn from_ids(table: &TripleTable, ids: &[DivisorId]) -> Result<Self, TwistError> {
        let mut eps = BitVec::zeros(DIVISOR_COUNT);
        for id in ids {
            let pos = table
                .basis
                .iter()
                .position(|b| b == id)
                .ok_or(TwistError::NotInBasis { id: *id })?;
            eps.flip(pos);
        }
        Ok(Self { eps })
    }

    /// A seeded random class (sampling only; no core computation is random).
    #[must_use]
    pub fn random(rng: &mut SplitMix64) -> Self {
        let mut eps = BitVec::zeros(DIVISOR_COUNT);
        for i in 0..DIVISOR_COUNT {
            if rng.next_bool() {
                eps.set(i, true);
            }
        }
        Self { eps }
    }

    /// The supporting divisors, in canonical order.
    #[must_use]
    pub fn support(&self, table: &TripleTable) -> Vec<DivisorId> {
        self.eps.ones().map(|i| table.basis[i]).collect()
    }

    /// A witness pair `(d1, d2)` with `L·d1·d2 = 1`, certifying the class is
    /// nonzero in cohomology (the triple pairing is perfect on the span of
    /// the generators).
    #[must_use]
    pub fn nonzero_witness(&self, table: &TripleTable) -> Option<(DivisorId, DivisorId)> {
        for d1 in 0..DIVISOR_COUNT {
            for d2 in d1..DIVISOR_COUNT {
                let pairing = table
                    .thirds(d1, d2)
                    .iter()
                    .filter(|&&d| self.eps.get(d as usize))
                    .count()
                    % 2
                    == 1;
                if pairing {
                    return Some((table.basis[d1], table.basis[d2]));
                }
            }
        }
        None
    }
}

/// Errors from the twist machinery.
#[derive(Clone, Debug)]
pub enum TwistError {
    /// The linear system `M·ε = vec(Q)` is inconsistent: no twist kills the
    /// squaring map on this table.
    NoSolution { rank_q: usize, rank_action: usize },
    /// A solution came back zero in cohomology (cannot happen while `Q ≠ 0`;
    /// kept as a guarded invariant).
    SolutionZeroInCohomology,
    /// An id outside the hypersurface basis.
    NotInBasis { id: DivisorId },
}

impl fmt::Display for TwistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistError::NoSolution {
                rank_q,
                rank_action,
            } => write!(
                f,
                "twist system inconsistent (rank Q = {rank_q}, rank M = {rank_action}): \
                 no class satisfies D² + DL = 0 for all D"
            ),
            TwistError::SolutionZeroInCohomology => {
                write!(f, "solver returned a class that is zero in cohomology")
            }
            TwistError::NotInBasis { id } => {
                write!(f, "divisor {id} is not in the hypersurface basis")
            }
        }
    }
}

impl std::error::Error for TwistError {}

/// The squaring pairing `Q` and the trilinear action matrix `M`.
pub struct PairingMatrices {
    /// `105 × 105`; `q[d1][d2] = T(d1, d1, d2)`.
    pub q: BitMatrix,
    /// `(105·105) × 105`; row `d1·105 + d2`, column `d`, holds `T(d, d1, d2)`.
    pub action: BitMatrix,
}

impl PairingMatrices {
    /// `vec(Q)` with the same row indexing as `action`.
    #[must_use]
    pub fn q_vector(&self) -> BitVec {
        let n = DIVISOR_COUNT;
        let mut v = BitVec::zeros(n * n);
        for d1 in 0..n {
            for d2 in 0..n {
                if self.q.get(d1, d2) {
                    v.set(d1 * n + d2, true);
                }
            }
        }
        v
    }
}

/// Builds `Q` and `M` from the triple table.
#[must_use]
pub fn build_pairings(table: &TripleTable) -> PairingMatrices {
    let n = DIVISOR_COUNT;
    let mut q = BitMatrix::zeros(n, n);
    let mut action = BitMatrix::zeros(n * n, n);
    for d1 in 0..n {
        for d2 in 0..n {
            if table.t2(d1, d1, d2) {
                q.set(d1, d2, true);
            }
            for &d in table.thirds(d1, d2) {
                action.set(d1 * n + d2, d as usize, true);
            }
        }
    }
    PairingMatrices { q, action }
}

/// `Q_L`: the twisted squaring pairing for the class `l`.
#[must_use]
pub fn twisted_matrix(pairings: &PairingMatrices, l: &TwistClass) -> BitMatrix {
    let n = DIVISOR_COUNT;
    let shift = pairings
        .action
        .mul_vec(&l.eps)
        .expect("twist class has matching length");
    let mut out = pairings.q.clone();
    for d1 in 0..n {
        for d2 in 0..n {
            if shift.get(d1 * n + d2) {
                let cur = out.get(d1, d2);
                out.set(d1, d2, !cur);
            }
        }
    }
    out
}

/// Rank of the twisted squaring pairing `Q_L` over GF(2).
#[must_use]
pub fn twisted_rank(pairings: &PairingMatrices, l: &TwistClass) -> usize {
    twisted_matrix(pairings, l).rank()
}

/// The affine coset of twist classes with `Q_L = 0`.
#[derive(Clone, Debug)]
pub struct TwistCoset {
    pub particular: TwistClass,
    pub kernel: Vec<BitVec>,
    /// `105 - rank(M)`, the dimension of the coset.
    pub coset_dim: usize,
    /// Rank of the action matrix `M`.
    pub action_rank: usize,
}

impl TwistCoset {
    /// Enumerates all `2^coset_dim` members (intended for small cosets).
    #[must_use]
    pub fn members(&self) -> Vec<TwistClass> {
        assert!(self.coset_dim <= 20, "coset too large to enumerate");
        let mut out = Vec::with_capacity(1 << self.coset_dim);
        for mask in 0u32..(1 << self.coset_dim) {
            let mut eps = self.particular.eps.clone();
            for (i, k) in self.kernel.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    eps.xor_assign(k);
                }
            }
            out.push(TwistClass { eps });
        }
        out
    }

    /// A seeded random member of the coset.
    #[must_use]
    pub fn sample(&self, rng: &mut SplitMix64) -> TwistClass {
        let mut eps = self.particular.eps.clone();
        for k in &self.kernel {
            if rng.next_bool() {
                eps.xor_assign(k);
            }
        }
        TwistClass { eps }
    }
}

/// Solves `M·ε = vec(Q)` and certifies the result: the coset is nonempty,
/// every returned representative has `Q_L = 0`, and the particular solution
/// is nonzero in cohomology.
pub fn solve_m2_twists(
    table: &TripleTable,
    pairings: &PairingMatrices,
) -> Result<TwistCoset, TwistError> {
    let rhs = pairings.q_vector();
    let solution = pairings
        .action
        .solve_affine(&rhs)
        .expect("shapes are consistent by construction");
    let Some(solution) = solution else {
        return Err(TwistError::NoSolution {
            rank_q: pairings.q.rank(),
            rank_action: pairings.action.rank(),
        });
    };
    let action_rank = pairings.action.rank();
    let coset = TwistCoset {
        particular: TwistClass {
            eps: solution.particular,
        },
        kernel: solution.kernel,
        coset_dim: DIVISOR_COUNT - action_rank,
        action_rank,
    };
    debug_assert_eq!(coset.coset_dim, coset.kernel.len());

    // Guaranteed checks on return.
    let mut representatives = vec![coset.particular.clone()];
    for k in &coset.kernel {
        representatives.push(TwistClass {
            eps: coset.particular.eps.xor(k),
        });
    }
    for rep in &representatives {
        assert_eq!(
            twisted_rank(pairings, rep),
            0,
            "coset member must annihilate the twisted squaring map"
        );
    }
    if coset.particular.nonzero_witness(table).is_none() {
        return Err(TwistError::SolutionZeroInCohomology);
    }
    Ok(coset)
}

/// Structural breach while classifying a pair: the pair's table data does
/// not fit the shape of the case it belongs to.
#[derive(Clone, Debug)]
pub struct ClassificationError {
    pub witnesses: Vec<String>,
}

impl fmt::Display for ClassificationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair classification breached in {} place(s): {}",
            self.witnesses.len(),
            self.witnesses.first().map_or("", String::as_str)
        )
    }
}

impl std::error::Error for ClassificationError {}

/// Tally for one local case.
#[derive(Clone, Debug, Default)]
pub struct CaseStat {
    pub checked: usize,
    pub failed: usize,
    /// First few failing pairs.
    pub witnesses: Vec<String>,
}

impl CaseStat {
    fn record(&mut self, pass: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !pass {
            self.failed += 1;
            if self.witnesses.len() < 8 {
                self.witnesses.push(witness());
            }
        }
    }
}

/// Per-case validation tallies for one twist class.
#[derive(Clone, Debug, Default)]
pub struct CaseReport {
    /// Pairs with no common 2-face (no constraint; both sides verified 0).
    pub no_common_face: CaseStat,
    /// Same 2-face, distinct, triangulation-adjacent, not co-edge:
    /// odd parity on the pair plus the two opposite apexes.
    pub c11: CaseStat,
    /// Same 2-face, distinct, non-adjacent: both sides 0.
    pub c12: CaseStat,
    /// Equal, interior to a 2-face: even parity on the six neighbors.
    pub c13: CaseStat,
    /// Equal, on an edge of `P`: odd parity on `S_D`.
    pub c21: CaseStat,
    /// Distinct co-edge pair with `T(D1,D1,D2) = 1`: odd parity on the
    /// five-element set (pair plus the three triangle apexes).
    pub c22: CaseStat,
    /// Distinct co-edge pair with `T(D1,D1,D2) = 0`: even parity on the
    /// 0- or 3-element apex set.
    pub c23: CaseStat,
}

impl CaseReport {
    #[must_use]
    pub fn entries(&self) -> [(&'static str, &CaseStat); 7] {
        [
            ("no-common-2-face", &self.no_common_face),
            ("1.1 adjacent in a 2-face", &self.c11),
            ("1.2 same 2-face, non-adjacent", &self.c12),
            ("1.3 interior point squared", &self.c13),
            ("2.1 edge point squared", &self.c21),
            ("2.2 co-edge, squaring-connected", &self.c22),
            ("2.3 co-edge, not connected", &self.c23),
        ]
    }

    #[must_use]
    pub fn total_checked(&self) -> usize {
        self.entries().iter().map(|(_, s)| s.checked).sum()
    }

    #[must_use]
    pub fn total_failed(&self) -> usize {
        self.entries().iter().map(|(_, s)| s.failed).sum()
    }

    #[must_use]
    pub fn pass_all(&self) -> bool {
        self.total_failed() == 0
    }
}

/// Classifies every unordered basis pair into exactly one local case and
/// checks the corresponding parity condition on `l`. Passing all cases is
/// equivalent to `Q_L = 0`.
pub fn local_validate(
    table: &TripleTable,
    geometry: &Geometry,
    l: &TwistClass,
) -> Result<CaseReport, ClassificationError> {
    let points = &geometry.points;
    let tri = &geometry.triangulation;
    let mut report = CaseReport::default();
    let mut anomalies: Vec<String> = Vec::new();

    let parity =
        |set: &[u8]| -> bool { set.iter().filter(|&&d| l.eps.get(d as usize)).count() % 2 == 1 };
    let name = |d: usize| points.id(d);

    for a in 0..DIVISOR_COUNT {
        for b in a..DIVISOR_COUNT {
            let thirds = table.thirds(a, b);
            let pairing = parity(thirds);
            let lhs_ab = table.t2(a, a, b);
            let lhs_ba = table.t2(b, b, a);
            let pass = lhs_ab == pairing && lhs_ba == pairing;
            let union = points.points[a].carrier.union(points.points[b].carrier);

            if a == b {
                if points.points[a].carrier.len() <= 2 {
                    // Case 2.1: D on an edge of P (vertex or edge-interior).
                    let expected_size = if points.points[a].carrier.len() == 1 {
                        5
                    } else {
                        8
                    };
                    if thirds.len() != expected_size || !lhs_ab {
                        anomalies.push(format!(
                            "case 2.1 shape breach at {}: |S_D| = {}, cube = {}",
                            name(a),
                            thirds.len(),
                            u8::from(lhs_ab)
                        ));
                    }
                    report
                        .c21
                        .record(pass, || format!("{}: |L ∩ S_D| must be odd", name(a)));
                } else {
                    // Case 1.3: D interior to a 2-face.
                    let face: [u8; 3] = points.points[a].carrier.indices().try_into().unwrap();
                    let neighbors = tri.face_neighbors(face, a);
                    let thirds_usize: Vec<usize> = thirds.iter().map(|&d| d as usize).collect();
                    if lhs_ab || thirds_usize != neighbors {
                        anomalies.push(format!(
                            "case 1.3 shape breach at {}: S_D ≠ six triangulation neighbors",
                            name(a)
                        ));
                    }
                    report.c13.record(pass, || {
                        format!("{}: |L ∩ neighbors| must be even", name(a))
                    });
                }
                continue;
            }

            if union.len() > 3 {
                // No common 2-face: verify both sides vanish.
                if !thirds.is_empty() || lhs_ab || lhs_ba {
                    anomalies.push(format!("locality breach at ({}, {})", name(a), name(b)));
                }
                report.no_common_face.record(pass, || {
                    format!("({}, {}): both sides must vanish", name(a), name(b))
                });
                continue;
            }

            if union.len() == 2 {
                // Co-edge pair.
                if lhs_ab != lhs_ba {
                    anomalies.push(format!(
                        "asymmetric squaring relation at ({}, {})",
                        name(a),
                        name(b)
                    ));
                }
                if lhs_ab {
                    // Case 2.2: five-element set {D1, D2, apexes}.
                    if thirds.len() != 5
                        || !thirds.contains(&(a as u8))
                        || !thirds.contains(&(b as u8))
                    {
                        anomalies.push(format!(
                            "case 2.2 shape breach at ({}, {}): S = {:?}",
                            name(a),
                            name(b),
                            thirds
                        ));
                    }
                    report.c22.record(pass, || {
                        format!("({}, {}): |L ∩ S| must be odd", name(a), name(b))
                    });
                } else {
                    // Case 2.3: apex set of size 0 (non-adjacent) or 3.
                    if !(thirds.is_empty() || thirds.len() == 3)
                        || thirds.contains(&(a as u8))
                        || thirds.contains(&(b as u8))
                    {
                        anomalies.push(format!(
                            "case 2.3 shape breach at ({}, {}): S = {:?}",
                            name(a),
                            name(b),
                            thirds
                        ));
                    }
                    report.c23.record(pass, || {
                        format!("({}, {}): |L ∩ S| must be even", name(a), name(b))
                    });
                }
                continue;
            }

            // Same 2-face, not co-edge: the common face is unique.
            let face: [u8; 3] = union.indices().try_into().unwrap();
            if tri.adjacent_in_face(face, a, b) {
                // Case 1.1: odd parity on {D1, D2, apex, apex}.
                let apexes = tri.apexes(face, a, b);
                let expected: Vec<u8> = {
                    let mut v: Vec<u8> = vec![a as u8, b as u8];
                    v.extend(apexes.iter().map(|&p| p as u8));
                    v.sort_unstable();
                    v
                };
                if apexes.len() != 2 || !lhs_ab || !lhs_ba || thirds != expected.as_slice() {
                    anomalies.push(format!(
                        "case 1.1 shape breach at ({}, {})",
                        name(a),
                        name(b)
                    ));
                }
                report.c11.record(pass, || {
                    format!(
                        "({}, {}): odd parity required on the pair and its apexes",
                        name(a),
                        name(b)
                    )
                });
            } else {
                // Case 1.2: both sides vanish.
                if lhs_ab || lhs_ba || !thirds.is_empty() {
                    anomalies.push(format!(
                        "case 1.2 shape breach at ({}, {})",
                        name(a),
                        name(b)
                    ));
                }
                report.c12.record(pass, || {
                    format!("({}, {}): both sides must vanish", name(a), name(b))
                });
            }
        }
    }

    if anomalies.is_empty() {
        Ok(report)
    } else {
        Err(ClassificationError {
            witnesses: anomalies,
        })
    }
}

/// `L`'s restriction to one 2-face: a 21-bit mask over the fixed point order
/// `V_i, V_j, V_k, E_ij:1..4, E_ik:1..4, E_jk:1..4, F:1..6`, plus its
/// canonical form under the 6-element symmetry group of the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePattern {
    pub face: [u8; 3],
    pub mask: u32,
    pub canonical: u32,
}

/// Pattern classes of a twist over the ten 2-faces.
#[derive(Clone, Debug)]
pub struct FacePatternReport {
    pub per_face: Vec<FacePattern>,
    /// `(canonical form, multiplicity)`, most frequent first.
    pub classes: Vec<(u32, usize)>,
}

impl FacePatternReport {
    #[must_use]
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// The 21 incident points of a face, in the fixed mask order.
#[must_use]
pub fn face_point_order(geometry: &Geometry, face: [u8; 3]) -> Vec<usize> {
    let [i, j, k] = face;
    let at = |id: DivisorId| geometry.points.index_of_id(id).expect("face point exists");
    let mut out = Vec::with_capacity(21);
    out.push(at(DivisorId::Vertex { i }));
    out.push(at(DivisorId::Vertex { i: j }));
    out.push(at(DivisorId::Vertex { i: k }));
    for (x, y) in [(i, j), (i, k), (j, k)] {
        for l in 1..=4 {
            out.push(at(DivisorId::Edge { i: x, j: y, l }));
        }
    }
    for l in 1..=6 {
        out.push(at(DivisorId::Face { i, j, k, l }));
    }
    out
}

fn face_mask(geometry: &Geometry, face: [u8; 3], l: &TwistClass) -> u32 {
    let mut mask = 0u32;
    for (bit, &p) in face_point_order(geometry, face).iter().enumerate() {
        if p < DIVISOR_COUNT && l.eps.get(p) {
            mask |= 1 << bit;
        }
    }
    mask
}

fn canonical_mask(geometry: &Geometry, face: [u8; 3], mask: u32) -> u32 {
    let order = face_point_order(geometry, face);
    let pos_of: std::collections::HashMap<usize, usize> =
        order.iter().enumerate().map(|(bit, &p)| (p, bit)).collect();
    let [i, j, k] = face;
    let mut best = u32::MAX;
    // All six permutations of the face's vertex labels, extended by the
    // identity on the other two vertices.
    for perm in [
        [i, j, k],
        [i, k, j],
        [j, i, k],
        [j, k, i],
        [k, i, j],
        [k, j, i],
    ] {
        let mut sigma = [0u8, 1, 2, 3, 4];
        sigma[i as usize] = perm[0];
        sigma[j as usize] = perm[1];
        sigma[k as usize] = perm[2];
        let mut image = 0u32;
        for (bit, &p) in order.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                let q = geometry.points.permute(p, &sigma);
                image |= 1 << pos_of[&q];
            }
        }
        best = best.min(image);
    }
    best
}

/// Extracts and canonicalizes `L`'s pattern on each of the ten 2-faces.
#[must_use]
pub fn face_patterns(geometry: &Geometry, l: &TwistClass) -> FacePatternReport {
    let mut per_face = Vec::with_capacity(10);
    for face in two_faces() {
        let mask = face_mask(geometry, face, l);
        let canonical = canonical_mask(geometry, face, mask);
        per_face.push(FacePattern {
            face,
            mask,
            canonical,
        });
    }
    let mut counts: std::collections::BTreeMap<u32, usize> = Default::default();
    for p in &per_face {
        *counts.entry(p.canonical).or_insert(0) += 1;
    }
    let mut classes: Vec<(u32, usize)> = counts.into_iter().collect();
    classes.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    FacePatternReport { per_face, classes }
}

/// Searches the solution coset for the member with the fewest distinct
/// pattern classes (ties broken by the lexicographically smallest ε).
/// Returns `None` when the coset is too large to enumerate.
#[must_use]
pub fn minimize_pattern_classes(
    geometry: &Geometry,
    coset: &TwistCoset,
    max_dim: usize,
) -> Option<(TwistClass, FacePatternReport)> {
    if coset.coset_dim > max_dim {
        return None;
    }
    let members = coset.members();
    let reports = par::map_collect(&members, |m| face_patterns(geometry, m));
    members.into_iter().zip(reports).min_by_key(|(m, r)| {
        let bits: Vec<usize> = m.eps.ones().collect();
        (r.class_count(), bits)
    })
}

/// Evaluates `rank Q_L` for a batch of twists (used by the equivalence
/// sweep); parallel by default with a sequential twin for benchmarks.
#[must_use]
pub fn batch_twisted_ranks(pairings: &PairingMatrices, twists: &[TwistClass]) -> Vec<usize> {
    par::map_collect(twists, |l| twisted_rank(pairings, l))
}

/// Sequential twin of [`batch_twisted_ranks`].
#[must_use]
pub fn batch_twisted_ranks_seq(pairings: &PairingMatrices, twists: &[TwistClass]) -> Vec<usize> {
    par::map_collect_seq(twists, |l| twisted_rank(pairings, l))
}
