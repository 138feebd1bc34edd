//! Quadruple intersection numbers on the smooth toric 4-fold and the mod-2
//! triple table on the anticanonical hypersurface.
//!
//! `quad_product` evaluates `D_a·D_b·D_c·D_d ∈ ℤ` by the standard reduction
//! on a smooth complete fan: four distinct rays spanning a maximal cone meet
//! transversally in a point; a repeated ray is traded for a linear
//! combination of the others using a dual vector supported on the containing
//! cone, which strictly enlarges the support, so the recursion terminates in
//! at most three steps.
//!
//! The triple table restricts to the hypersurface by multiplying with the
//! anticanonical class `Σ_w D_w`:
//!
//! ```text
//! T(a, b, c) = Σ_w quad_product(a, b, c, w)   reduced mod 2.
//! ```
//!
//! Facet-interior divisors miss the hypersurface; the builder verifies that
//! all their triples vanish and drops them, leaving the 105-element basis
//! `S`. It also verifies locality: a triple of basis divisors with no common
//! 2-face always vanishes.

use crate::fan::{dot, SimplicialFan};
use crate::ids::DivisorId;
use crate::lattice::{two_faces, Carrier, Geometry, DIVISOR_COUNT};
use crate::par;
use crate::report::CheckItem;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Errors from the intersection computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionError {
    /// The dual-vector system was unsolvable: a non-unimodular cone slipped
    /// through certification.
    NotSmooth { cone: [usize; 4] },
    /// A triple involving a facet-interior divisor was nonzero, contradicting
    /// the claim that those divisors miss the hypersurface.
    FacetDivisorNonzero { triple: [DivisorId; 3], value: i64 },
    /// A triple of basis divisors with no common 2-face was odd.
    LocalityViolation { triple: [DivisorId; 3], value: i64 },
}

impl fmt::Display for IntersectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionError::NotSmooth { cone } => {
                write!(f, "dual vector unsolvable on cone {cone:?}")
            }
            IntersectionError::FacetDivisorNonzero { triple, value } => write!(
                f,
                "facet-interior triple {triple:?} has value {value}, expected 0"
            ),
            IntersectionError::LocalityViolation { triple, value } => write!(
                f,
                "triple {triple:?} has no common 2-face but value {value}"
            ),
        }
    }
}

impl std::error::Error for IntersectionError {}

/// Which containing maximal cone supplies the dual vector during reduction.
/// The result is independent of the choice; `Last` exists so tests can
/// verify that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConeChoice {
    #[default]
    First,
    Last,
}

/// Memoizing evaluator for quadruple products on one fan.
pub struct QuadEvaluator<'a> {
    fan: &'a SimplicialFan,
    memo: HashMap<[u8; 4], i64>,
    choice: ConeChoice,
}

impl<'a> QuadEvaluator<'a> {
    #[must_use]
    pub fn new(fan: &'a SimplicialFan) -> Self {
        Self::with_choice(fan, ConeChoice::First)
    }

    #[must_use]
    pub fn with_choice(fan: &'a SimplicialFan, choice: ConeChoice) -> Self {
        Self {
            fan,
            memo: HashMap::new(),
            choice,
        }
    }

    /// `D_a·D_b·D_c·D_d` for the multiset of ray indices `m`.
    pub fn quad(&mut self, m: [usize; 4]) -> i64 {
        let mut key = [0u8; 4];
        for (slot, &r) in key.iter_mut().zip(&m) {
            assert!(r < self.fan.ray_count(), "ray index {r} out of range");
            *slot = r as u8;
        }
        key.sort_unstable();
        self.quad_sorted(key)
    }

    fn quad_sorted(&mut self, key: [u8; 4]) -> i64 {
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut support = [0u8; 4];
        let mut n = 0;
        for &r in &key {
            if n == 0 || support[n - 1] != r {
                support[n] = r;
                n += 1;
            }
        }
        let support = &support[..n];
        let value = if !self.fan.spans_cone(support) {
            0
        } else if n == 4 {
            // Four distinct rays spanning a cone span a maximal cone:
            // a transverse point on a smooth fan.
            1
        } else {
            let repeated = (0..3)
                .find(|&i| key[i] == key[i + 1])
                .map(|i| key[i])
                .expect("multiset with small support has a repeat");
            let cone = match self.choice {
                ConeChoice::First => self.fan.containing_max_cone(support),
                ConeChoice::Last => self.fan.containing_max_cone_last(support),
            }
            .expect("support spans a cone");
            let m = self.fan.dual_vector(cone, repeated as usize);
            // Remove one occurrence of the repeated ray.
            let pos = key.iter().position(|&r| r == repeated).unwrap();
            let mut rest = [0u8; 3];
            let mut w = 0;
            for (i, &r) in key.iter().enumerate() {
                if i != pos {
                    rest[w] = r;
                    w += 1;
                }
            }
            // Substitute D_v = -Σ_{u≠v} ⟨m,u⟩ D_u. Rays in the support other
            // than v pair to zero with m by construction.
            let mut acc = 0i64;
            for u in 0..self.fan.ray_count() {
                let u8u = u as u8;
                if support.contains(&u8u) {
                    continue;
                }
                let coeff = dot(m, self.fan.rays[u]);
                if coeff == 0 {
                    continue;
                }
                let mut next = [rest[0], rest[1], rest[2], u8u];
                next.sort_unstable();
                acc -= coeff * self.quad_sorted(next);
            }
            acc
        };
        self.memo.insert(key, value);
        value
    }
}

/// Symmetric mod-2 triple intersection table over the hypersurface basis,
/// with the integer values retained for diagnostics.
pub struct TripleTable {
    /// The 105 divisor ids of `S`, canonical order.
    pub basis: Vec<DivisorId>,
    /// Sorted basis-index triples with odd intersection number.
    nonzero2: BTreeSet<[u8; 3]>,
    /// Nonzero integer values over basis triples.
    integer: BTreeMap<[u8; 3], i64>,
    /// For each sorted basis pair `(a ≤ b)`: sorted list of `d` with
    /// `T(d, a, b) = 1`.
    pair_thirds: Vec<Vec<u8>>,
    /// Fingerprint of the fan the table was computed from.
    pub provenance: u64,
    /// Triangulation variant name.
    pub variant: &'static str,
}

fn pair_slot(a: usize, b: usize) -> usize {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    hi * (hi + 1) / 2 + lo
}

impl TripleTable {
    /// Mod-2 triple intersection number, symmetric in its arguments.
    #[must_use]
    pub fn t2(&self, a: usize, b: usize, c: usize) -> bool {
        let mut key = [a as u8, b as u8, c as u8];
        key.sort_unstable();
        self.nonzero2.contains(&key)
    }

    /// Integer triple intersection number.
    #[must_use]
    pub fn tz(&self, a: usize, b: usize, c: usize) -> i64 {
        let mut key = [a as u8, b as u8, c as u8];
        key.sort_unstable();
        self.integer.get(&key).copied().unwrap_or(0)
    }

    /// The divisors `d` with `T(d, a, b) = 1`.
    #[must_use]
    pub fn thirds(&self, a: usize, b: usize) -> &[u8] {
        &self.pair_thirds[pair_slot(a, b)]
    }

    /// `S_D = { d : T(D, D, d) = 1 }` (contains `D` itself when `D³ = 1`).
    #[must_use]
    pub fn squaring_partners(&self, d: usize) -> &[u8] {
        self.thirds(d, d)
    }

    /// All odd triples, sorted.
    pub fn nonzero_triples(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.nonzero2.iter().copied()
    }

    /// All nonzero integer triples, sorted.
    pub fn integer_triples(&self) -> impl Iterator<Item = ([u8; 3], i64)> + '_ {
        self.integer.iter().map(|(&k, &v)| (k, v))
    }
}

/// All size-3 multisets of ray indices whose support spans a cone; every
/// other triple has product zero with anything.
fn candidate_triples(fan: &SimplicialFan) -> Vec<[u8; 3]> {
    let mut set: BTreeSet<[u8; 3]> = BTreeSet::new();
    for cone in &fan.max_cones {
        let c: Vec<u8> = cone.iter().map(|&g| g as u8).collect();
        for i in 0..4 {
            set.insert([c[i], c[i], c[i]]);
            for j in i + 1..4 {
                set.insert([c[i], c[i], c[j]]);
                set.insert([c[i], c[j], c[j]]);
                for k in j + 1..4 {
                    set.insert([c[i], c[j], c[k]]);
                }
            }
        }
    }
    set.into_iter().collect()
}

fn compute_triples(geometry: &Geometry, sequential: bool) -> Vec<([u8; 3], i64)> {
    let candidates = candidate_triples(&geometry.fan);
    let fan = &geometry.fan;
    let eval_one = |ev: &mut QuadEvaluator, trip: &[u8; 3]| -> ([u8; 3], i64) {
        let mut total = 0i64;
        for w in 0..fan.ray_count() {
            let mut key = [trip[0], trip[1], trip[2], w as u8];
            key.sort_unstable();
            total += ev.quad_sorted(key);
        }
        (*trip, total)
    };
    if sequential {
        par::map_chunks_seq(&candidates, 128, || QuadEvaluator::new(fan), eval_one)
    } else {
        par::map_chunks(&candidates, 128, || QuadEvaluator::new(fan), eval_one)
    }
}

/// Builds the triple table on the hypersurface (default parallelism).
pub fn build_triple_table(geometry: &Geometry) -> Result<TripleTable, IntersectionError> {
    assemble(geometry, compute_triples(geometry, false))
}

/// Sequential variant of [`build_triple_table`]; bit-identical output.
pub fn build_triple_table_seq(geometry: &Geometry) -> Result<TripleTable, IntersectionError> {
    assemble(geometry, compute_triples(geometry, true))
}

fn assemble(
    geometry: &Geometry,
    computed: Vec<([u8; 3], i64)>,
) -> Result<TripleTable, IntersectionError> {
    let points = &geometry.points;
    let ids = |trip: [u8; 3]| trip.map(|p| points.id(p as usize));
    let mut nonzero2 = BTreeSet::new();
    let mut integer = BTreeMap::new();
    for (trip, value) in computed {
        if trip[2] as usize >= DIVISOR_COUNT {
            // Triple touches a facet-interior divisor: that divisor misses
            // the hypersurface, so the product must vanish outright.
            if value != 0 {
                return Err(IntersectionError::FacetDivisorNonzero {
                    triple: ids(trip),
                    value,
                });
            }
            continue;
        }
        if value % 2 != 0 {
            let union = trip.iter().fold(Carrier::empty(), |acc, &p| {
                acc.union(points.points[p as usize].carrier)
            });
            if union.len() > 3 {
                return Err(IntersectionError::LocalityViolation {
                    triple: ids(trip),
                    value,
                });
            }
            nonzero2.insert(trip);
        }
        if value != 0 {
            integer.insert(trip, value);
        }
    }

    let mut pair_thirds = vec![Vec::new(); pair_slot(0, DIVISOR_COUNT)];
    for trip in &nonzero2 {
        let [a, b, c] = trip.map(usize::from);
        let mut push = |x: usize, y: usize, d: u8| {
            let list: &mut Vec<u8> = &mut pair_thirds[pair_slot(x, y)];
            if !list.contains(&d) {
                list.push(d);
            }
        };
        push(a, b, c as u8);
        push(a, c, b as u8);
        push(b, c, a as u8);
    }
    for list in &mut pair_thirds {
        list.sort_unstable();
    }

    Ok(TripleTable {
        basis: (0..DIVISOR_COUNT).map(|i| points.id(i)).collect(),
        nonzero2,
        integer,
        pair_thirds,
        provenance: geometry.fingerprint(),
        variant: geometry.triangulation.variant.name(),
    })
}

/// Orientation of the edge-point numbering that matches the spot checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrientation {
    /// `E<ij>:<l>` counted from `V<i>`, as built.
    Forward,
    /// Matches only after relabelling `l ↦ 5-l`.
    Reversed,
}

/// Verification report for the triple-intersection structure.
#[derive(Clone, Debug)]
pub struct Prop42Report {
    /// All 45 V/E cubes are 1 and all 60 F cubes are 0.
    pub cubes: CheckItem,
    /// `|S_V| = 5` and `|S_E| = 8`.
    pub squaring_sets: CheckItem,
    /// Distinct same-face triples are 1 exactly on triangulation triangles.
    pub triangles: CheckItem,
    /// Edge numbering spot checks under the chosen orientation.
    pub numbering: CheckItem,
    /// Orientation that satisfied the spot checks, if any.
    pub orientation: Option<EdgeOrientation>,
    /// Same-2-face pairs where `T(a,a,b) ≠ T(b,b,a)`; reported, not asserted.
    pub asymmetric_pairs: Vec<(DivisorId, DivisorId)>,
    /// Total same-2-face pairs inspected for the symmetry statistic.
    pub symmetry_pairs_checked: usize,
}

impl Prop42Report {
    #[must_use]
    pub fn all_pass(&self) -> bool {
        self.cubes.passed()
            && self.squaring_sets.passed()
            && self.triangles.passed()
            && self.numbering.passed()
            && self.orientation.is_some()
    }

    /// The four check items, for rendering.
    #[must_use]
    pub fn items(&self) -> [&CheckItem; 4] {
        [
            &self.cubes,
            &self.squaring_sets,
            &self.triangles,
            &self.numbering,
        ]
    }
}

/// Checks the triple table against the known structure of the intersection
/// numbers: cube values, squaring-partner counts, the triangle criterion for
/// distinct triples, and the edge-numbering spot checks (trying both
/// orientations of the `E` labelling and fixing the one that matches).
#[must_use]
pub fn verify_prop42(table: &TripleTable, geometry: &Geometry) -> Prop42Report {
    let points = &geometry.points;
    let tri = &geometry.triangulation;

    let mut cubes = CheckItem::new("V/E cubes = 1, F cubes = 0");
    for d in 0..DIVISOR_COUNT {
        let id = points.id(d);
        let expected = match id {
            DivisorId::Vertex { .. } | DivisorId::Edge { .. } => true,
            DivisorId::Face { .. } => false,
            DivisorId::FacetInterior { .. } => unreachable!("not in basis"),
        };
        cubes.run(table.t2(d, d, d) == expected, || {
            format!(
                "({id})³ = {}, expected {}",
                u8::from(!expected),
                u8::from(expected)
            )
        });
    }

    let mut squaring_sets = CheckItem::new("|S_V| = 5 and |S_E| = 8");
    for d in 0..DIVISOR_COUNT {
        let id = points.id(d);
        let expected = match id {
            DivisorId::Vertex { .. } => 5,
            DivisorId::Edge { .. } => 8,
            _ => continue,
        };
        let got = table.squaring_partners(d).len();
        squaring_sets.run(got == expected, || {
            format!("|S_{id}| = {got}, expected {expected}")
        });
    }

    let mut triangles = CheckItem::new("distinct same-face triples = 1 exactly on triangles");
    for face in two_faces() {
        let carrier = Carrier::from_indices(face);
        let members: Vec<usize> = (0..DIVISOR_COUNT)
            .filter(|&d| points.points[d].carrier.union(carrier).len() == 3)
            .collect();
        debug_assert_eq!(members.len(), 21);
        let tri_set: BTreeSet<[usize; 3]> = tri.triangles_of_face(face).iter().copied().collect();
        for x in 0..members.len() {
            for y in x + 1..members.len() {
                for z in y + 1..members.len() {
                    let (a, b, c) = (members[x], members[y], members[z]);
                    let expected = tri_set.contains(&[a, b, c]);
                    triangles.run(table.t2(a, b, c) == expected, || {
                        format!(
                            "T({}, {}, {}) = {}, expected {}",
                            points.id(a),
                            points.id(b),
                            points.id(c),
                            u8::from(!expected),
                            u8::from(expected)
                        )
                    });
                }
            }
        }
    }

    // Numbering spot checks: T(E², E², E³) = 1 and T(E¹, E¹, E²) = 0 on
    // every edge, for one orientation of the labelling.
    let edge_index = |i: u8, j: u8, l: u8| {
        points
            .index_of_id(DivisorId::Edge { i, j, l })
            .expect("edge point exists")
    };
    let orientation_ok = |reversed: bool| {
        crate::lattice::p_edges().into_iter().all(|[i, j]| {
            let e = |l: u8| edge_index(i, j, if reversed { 5 - l } else { l });
            table.t2(e(2), e(2), e(3)) && !table.t2(e(1), e(1), e(2))
        })
    };
    let orientation = if orientation_ok(false) {
        Some(EdgeOrientation::Forward)
    } else if orientation_ok(true) {
        Some(EdgeOrientation::Reversed)
    } else {
        None
    };
    let mut numbering = CheckItem::new("edge numbering spot checks");
    match orientation {
        Some(orient) => {
            let reversed = orient == EdgeOrientation::Reversed;
            for [i, j] in crate::lattice::p_edges() {
                let e = |l: u8| edge_index(i, j, if reversed { 5 - l } else { l });
                numbering.run(table.t2(e(2), e(2), e(3)), || {
                    format!("T(E{i}{j}:2, E{i}{j}:2, E{i}{j}:3) ≠ 1")
                });
                numbering.run(!table.t2(e(1), e(1), e(2)), || {
                    format!("T(E{i}{j}:1, E{i}{j}:1, E{i}{j}:2) ≠ 0")
                });
            }
        }
        None => {
            numbering.fail("no orientation of the edge numbering satisfies the spot checks");
        }
    }

    // Symmetry statistic over same-2-face pairs.
    let mut asymmetric_pairs = Vec::new();
    let mut symmetry_pairs_checked = 0;
    for a in 0..DIVISOR_COUNT {
        for b in a + 1..DIVISOR_COUNT {
            let union = points.points[a].carrier.union(points.points[b].carrier);
            if union.len() <= 3 {
                symmetry_pairs_checked += 1;
                if table.t2(a, a, b) != table.t2(b, b, a) {
                    asymmetric_pairs.push((points.id(a), points.id(b)));
                }
            }
        }
    }

    Prop42Report {
        cubes,
        squaring_sets,
        triangles,
        numbering,
        orientation,
        asymmetric_pairs,
        symmetry_pairs_checked,
    }
}
