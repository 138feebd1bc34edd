//! The dilated simplex `P`, its boundary lattice points, and staircase
//! triangulations of `∂P`.
//!
//! `P ⊂ ℝ⁴` is the simplex with vertices
//!
//! ```text
//! V0 = (-1,-1,-1,-1)   V1 = (4,-1,-1,-1)   V2 = (-1,4,-1,-1)
//! V3 = (-1,-1,4,-1)    V4 = (-1,-1,-1,4)
//! ```
//!
//! It is reflexive with the origin as its unique interior lattice point.
//! A lattice point is recorded by its barycentric coordinates `bary`
//! (five non-negative integers summing to 5, so `ambient = Σ bary[i]·V[i]/5`
//! is integral) and by its carrier, the set of vertices with positive
//! barycentric coordinate. The 125 boundary points split into 5 vertices,
//! 40 edge-interior, 60 face-interior and 20 facet-interior points.
//!
//! Each facet (a side-5 tetrahedron) is triangulated by the staircase
//! triangulation taken in the facet's barycentric lattice with respect to a
//! fixed ordering of its vertices. In two dimensions the staircase
//! triangulation is order-independent (the uniform 25-triangle subdivision),
//! so the per-facet triangulations agree on shared 2-faces; the constructor
//! verifies this, along with unimodularity of every cell.

use crate::fan::SimplicialFan;
use crate::ids::DivisorId;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Dilation factor of the simplex: `P = 5·Δ⁴` up to translation.
pub const SIDE: i64 = 5;

/// Vertices of `P`.
pub const VERTICES: [[i64; 4]; 5] = [
    [-1, -1, -1, -1],
    [4, -1, -1, -1],
    [-1, 4, -1, -1],
    [-1, -1, 4, -1],
    [-1, -1, -1, 4],
];

/// Number of boundary lattice points (fan rays).
pub const RAY_COUNT: usize = 125;

/// Number of divisors meeting the anticanonical hypersurface (the set `S`).
pub const DIVISOR_COUNT: usize = 105;

/// A subset of the vertex indices `{0..4}`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Carrier(u8);

impl Carrier {
    #[must_use]
    pub const fn empty() -> Self {
        Carrier(0)
    }

    #[must_use]
    pub fn from_indices(indices: impl IntoIterator<Item = u8>) -> Self {
        let mut mask = 0u8;
        for i in indices {
            debug_assert!(i < 5);
            mask |= 1 << i;
        }
        Carrier(mask)
    }

    #[must_use]
    pub fn contains(self, i: u8) -> bool {
        self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[must_use]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        Carrier(self.0 | other.0)
    }

    /// Sorted member indices.
    #[must_use]
    pub fn indices(self) -> Vec<u8> {
        (0..5).filter(|&i| self.contains(i)).collect()
    }
}

impl std::fmt::Debug for Carrier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

impl Serialize for Carrier {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(serializer)
    }
}

/// A boundary lattice point of `P`.
#[derive(Clone, Debug, Serialize)]
pub struct LatticePoint {
    pub id: DivisorId,
    pub bary: [u8; 5],
    pub ambient: [i64; 4],
    pub carrier: Carrier,
}

/// The 125 boundary lattice points in canonical order: `V`, then `E`, then
/// `F`, then `G` blocks, each ordered as in [`DivisorId`]'s grammar. The
/// first [`DIVISOR_COUNT`] entries are exactly the hypersurface basis `S`.
pub struct PointSet {
    pub points: Vec<LatticePoint>,
    by_bary: HashMap<[u8; 5], usize>,
    by_id: HashMap<DivisorId, usize>,
}

impl PointSet {
    #[must_use]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[must_use]
    pub fn index_of_bary(&self, bary: &[u8; 5]) -> Option<usize> {
        self.by_bary.get(bary).copied()
    }

    #[must_use]
    pub fn index_of_id(&self, id: DivisorId) -> Option<usize> {
        self.by_id.get(&id).copied()
    }

    #[must_use]
    pub fn id(&self, index: usize) -> DivisorId {
        self.points[index].id
    }

    /// Applies a permutation of the vertex labels `V0..V4` to a point:
    /// the point with barycentric mass `bary[i]` at vertex `i` is sent to
    /// the point with that mass at vertex `sigma[i]`.
    #[must_use]
    pub fn permute(&self, index: usize, sigma: &[u8; 5]) -> usize {
        let bary = self.points[index].bary;
        let mut out = [0u8; 5];
        for i in 0..5 {
            out[sigma[i] as usize] = bary[i];
        }
        self.index_of_bary(&out)
            .expect("permuted boundary point stays a boundary point")
    }
}

/// All sorted vertex triples: the ten 2-faces of `P`.
#[must_use]
pub fn two_faces() -> Vec<[u8; 3]> {
    let mut out = Vec::with_capacity(10);
    for i in 0..5u8 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// All sorted vertex pairs: the ten edges of `P`.
#[must_use]
pub fn p_edges() -> Vec<[u8; 2]> {
    let mut out = Vec::with_capacity(10);
    for i in 0..5u8 {
        for j in i + 1..5 {
            out.push([i, j]);
        }
    }
    out
}

/// Enumerates and classifies the boundary lattice points.
#[must_use]
pub fn enumerate_boundary_points() -> PointSet {
    let mut points = Vec::with_capacity(RAY_COUNT);
    // All barycentric vectors: five non-negative integers summing to 5.
    for b0 in 0..=5u8 {
        for b1 in 0..=5 - b0 {
            for b2 in 0..=5 - b0 - b1 {
                for b3 in 0..=5 - b0 - b1 - b2 {
                    let b4 = 5 - b0 - b1 - b2 - b3;
                    let bary = [b0, b1, b2, b3, b4];
                    if bary.iter().all(|&b| b > 0) {
                        continue; // the unique interior point, the origin
                    }
                    points.push(classify(bary));
                }
            }
        }
    }
    assert_eq!(points.len(), RAY_COUNT, "boundary point count");
    points.sort_by_key(|p| p.id);
    let by_bary = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.bary, i))
        .collect();
    let by_id = points.iter().enumerate().map(|(i, p)| (p.id, i)).collect();
    PointSet {
        points,
        by_bary,
        by_id,
    }
}

fn classify(bary: [u8; 5]) -> LatticePoint {
    let carrier = Carrier::from_indices((0..5u8).filter(|&i| bary[i as usize] > 0));
    let support = carrier.indices();
    let id = match support.as_slice() {
        [i] => DivisorId::Vertex { i: *i },
        [i, j] => DivisorId::Edge {
            i: *i,
            j: *j,
            l: bary[*j as usize],
        },
        [i, j, k] => {
            let triple = [bary[*i as usize], bary[*j as usize], bary[*k as usize]];
            DivisorId::Face {
                i: *i,
                j: *j,
                k: *k,
                l: composition_rank(&triple),
            }
        }
        [a, b, c, d] => {
            let omitted = (0..5u8).find(|v| !support.contains(v)).unwrap();
            let quad = [
                bary[*a as usize],
                bary[*b as usize],
                bary[*c as usize],
                bary[*d as usize],
            ];
            DivisorId::FacetInterior {
                f: omitted,
                l: composition_rank(&quad),
            }
        }
        _ => unreachable!("boundary point has 1..=4 positive coordinates"),
    };
    let mut ambient = [0i64; 4];
    for m in 0..4 {
        ambient[m] = i64::from(bary[m + 1]) - 1;
    }
    LatticePoint {
        id,
        bary,
        ambient,
        carrier,
    }
}

/// 1-based rank of a positive composition of 5 among all compositions of the
/// same length, ordered lexicographically decreasing.
fn composition_rank(parts: &[u8]) -> u8 {
    let mut all = compositions_of_five(parts.len());
    all.sort_by(|a, b| b.cmp(a));
    let pos = all
        .iter()
        .position(|c| c.as_slice() == parts)
        .expect("composition present");
    (pos + 1) as u8
}

fn compositions_of_five(len: usize) -> Vec<Vec<u8>> {
    fn rec(len: usize, total: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if len == 1 {
            if total >= 1 {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for v in 1..=total.saturating_sub(len as u8 - 1) {
            prefix.push(v);
            rec(len - 1, total - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 5, &mut Vec::new(), &mut out);
    out
}

/// Which staircase triangulation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TriangulationVariant {
    /// Staircase in each facet's vertex order `(w0, w1, w2, w3)` (ascending).
    Default,
    /// Staircase after swapping the last two facet vertices,
    /// `(w0, w1, w3, w2)`. Differs from `Default` only in facet interiors:
    /// the induced subdivision of every 2-face is the same uniform one.
    Alternate,
}

impl TriangulationVariant {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            TriangulationVariant::Default => "default",
            TriangulationVariant::Alternate => "alternate",
        }
    }
}

/// A unimodular triangulation of `∂P`, with the structures induced on the
/// 2-faces and edges of `P`.
pub struct Triangulation {
    pub variant: TriangulationVariant,
    /// 625 cells; each is a sorted 4-tuple of point indices; list sorted.
    pub cells: Vec<[usize; 4]>,
    /// Omitted vertex of the facet each cell lives in.
    pub facet_of_cell: Vec<u8>,
    /// Per 2-face: the 25 induced triangles (sorted index triples).
    face_triangles: BTreeMap<[u8; 3], Vec<[usize; 3]>>,
    /// Per 2-face: edges of the induced triangulation.
    face_edges: BTreeMap<[u8; 3], BTreeSet<[usize; 2]>>,
    /// Per edge of `P`: the 5 induced segments.
    edge_segments: BTreeMap<[u8; 2], Vec<[usize; 2]>>,
}

impl Triangulation {
    #[must_use]
    pub fn triangles_of_face(&self, face: [u8; 3]) -> &[[usize; 3]] {
        &self.face_triangles[&face]
    }

    #[must_use]
    pub fn edges_of_face(&self, face: [u8; 3]) -> &BTreeSet<[usize; 2]> {
        &self.face_edges[&face]
    }

    #[must_use]
    pub fn segments_of_edge(&self, edge: [u8; 2]) -> &[[usize; 2]] {
        &self.edge_segments[&edge]
    }

    /// Whether two distinct points are joined by an edge of the induced
    /// triangulation of the given 2-face.
    #[must_use]
    pub fn adjacent_in_face(&self, face: [u8; 3], a: usize, b: usize) -> bool {
        let key = if a < b { [a, b] } else { [b, a] };
        self.face_edges[&face].contains(&key)
    }

    /// Neighbors of a point inside one 2-face's triangulation.
    #[must_use]
    pub fn face_neighbors(&self, face: [u8; 3], p: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.face_edges[&face]
            .iter()
            .filter_map(|&[a, b]| {
                if a == p {
                    Some(b)
                } else if b == p {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Apexes of the triangles of `face` containing the edge `{a, b}`.
    #[must_use]
    pub fn apexes(&self, face: [u8; 3], a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for tri in &self.face_triangles[&face] {
            if tri.contains(&a) && tri.contains(&b) {
                out.extend(tri.iter().copied().filter(|&p| p != a && p != b));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Builds the staircase triangulation of `∂P` for the given variant.
///
/// # Panics
/// Panics if construction produces a non-unimodular cell or inconsistent
/// face restrictions; both would be construction bugs, not data errors.
#[must_use]
pub fn standard_triangulation(points: &PointSet, variant: TriangulationVariant) -> Triangulation {
    let mut cells: Vec<([usize; 4], u8)> = Vec::with_capacity(625);
    for omit in 0..5u8 {
        let mut order: Vec<u8> = (0..5u8).filter(|&v| v != omit).collect();
        if variant == TriangulationVariant::Alternate {
            order.swap(2, 3);
        }
        let facet_cells = staircase_facet_cells(points, &order);
        assert_eq!(
            facet_cells.len(),
            125,
            "facet opposite V{omit}: expected 125 cells"
        );
        for cell in facet_cells {
            cells.push((cell, omit));
        }
    }
    cells.sort_unstable();
    assert_eq!(cells.len(), 625, "total cell count");

    for (cell, _) in &cells {
        assert!(
            cell_is_unimodular(points, cell),
            "non-unimodular cell {:?}",
            cell.map(|p| points.id(p))
        );
    }

    // Induced triangles per 2-face, tracked per contributing facet so the
    // restriction-compatibility invariant can be checked.
    let mut per_facet: BTreeMap<([u8; 3], u8), BTreeSet<[usize; 3]>> = BTreeMap::new();
    let mut edge_segments: BTreeMap<[u8; 2], BTreeSet<[usize; 2]>> = BTreeMap::new();
    for (cell, facet) in &cells {
        for skip in 0..4 {
            let tri: Vec<usize> = (0..4).filter(|&t| t != skip).map(|t| cell[t]).collect();
            let union = tri.iter().fold(Carrier::empty(), |acc, &p| {
                acc.union(points.points[p].carrier)
            });
            if union.len() == 3 {
                let face: [u8; 3] = union.indices().try_into().unwrap();
                per_facet
                    .entry((face, *facet))
                    .or_default()
                    .insert([tri[0], tri[1], tri[2]]);
            }
        }
        for a in 0..4 {
            for b in a + 1..4 {
                let union = points.points[cell[a]]
                    .carrier
                    .union(points.points[cell[b]].carrier);
                if union.len() == 2 {
                    let edge: [u8; 2] = union.indices().try_into().unwrap();
                    edge_segments
                        .entry(edge)
                        .or_default()
                        .insert([cell[a], cell[b]]);
                }
            }
        }
    }

    let mut face_triangles: BTreeMap<[u8; 3], Vec<[usize; 3]>> = BTreeMap::new();
    for face in two_faces() {
        let contributing: Vec<&BTreeSet<[usize; 3]>> = per_facet
            .iter()
            .filter(|((f, _), _)| *f == face)
            .map(|(_, set)| set)
            .collect();
        assert_eq!(contributing.len(), 2, "2-face lies in exactly two facets");
        assert_eq!(
            contributing[0], contributing[1],
            "facet triangulations disagree on 2-face {face:?}"
        );
        let triangles: Vec<[usize; 3]> = contributing[0].iter().copied().collect();
        assert_eq!(
            triangles.len(),
            25,
            "2-face {face:?}: expected 25 triangles"
        );
        face_triangles.insert(face, triangles);
    }

    let mut face_edges: BTreeMap<[u8; 3], BTreeSet<[usize; 2]>> = BTreeMap::new();
    for (face, triangles) in &face_triangles {
        let mut edges = BTreeSet::new();
        for tri in triangles {
            edges.insert([tri[0], tri[1]]);
            edges.insert([tri[0], tri[2]]);
            edges.insert([tri[1], tri[2]]);
        }
        face_edges.insert(*face, edges);
    }

    let edge_segments: BTreeMap<[u8; 2], Vec<[usize; 2]>> = edge_segments
        .into_iter()
        .map(|(edge, set)| {
            let segs: Vec<[usize; 2]> = set.into_iter().collect();
            assert_eq!(segs.len(), 5, "edge {edge:?}: expected 5 segments");
            (edge, segs)
        })
        .collect();
    assert_eq!(edge_segments.len(), 10, "edge count");

    let (cells, facet_of_cell) = cells.into_iter().unzip();
    Triangulation {
        variant,
        cells,
        facet_of_cell,
        face_triangles,
        face_edges,
        edge_segments,
    }
}

/// Staircase cells of one facet, in the facet's barycentric lattice with
/// vertex order `order`. Writing `y1 ≥ y2 ≥ y3` for the shifted partial
/// sums of the barycentric coordinates, the cells are the lattice translates
/// of the permutation chains `a, a+e_{σ1}, a+e_{σ1}+e_{σ2}, a+(1,1,1)`
/// contained in `5 ≥ y1 ≥ y2 ≥ y3 ≥ 0`.
fn staircase_facet_cells(points: &PointSet, order: &[u8]) -> Vec<[usize; 4]> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut cells = Vec::new();
    let lookup = |y: [i64; 3]| -> Option<usize> {
        if !(0 <= y[2] && y[2] <= y[1] && y[1] <= y[0] && y[0] <= SIDE) {
            return None;
        }
        let mut bary = [0u8; 5];
        bary[order[0] as usize] = (SIDE - y[0]) as u8;
        bary[order[1] as usize] = (y[0] - y[1]) as u8;
        bary[order[2] as usize] = (y[1] - y[2]) as u8;
        bary[order[3] as usize] = y[2] as u8;
        points.index_of_bary(&bary)
    };
    for a0 in 0..SIDE {
        for a1 in 0..=a0 {
            for a2 in 0..=a1 {
                for perm in PERMS {
                    let mut y = [a0, a1, a2];
                    let mut vertex_indices = Vec::with_capacity(4);
                    let mut ok = lookup(y).map(|i| vertex_indices.push(i)).is_some();
                    for &axis in &perm {
                        if !ok {
                            break;
                        }
                        y[axis] += 1;
                        ok = lookup(y).map(|i| vertex_indices.push(i)).is_some();
                    }
                    if ok {
                        let mut cell: [usize; 4] = vertex_indices.try_into().unwrap();
                        cell.sort_unstable();
                        cells.push(cell);
                    }
                }
            }
        }
    }
    cells
}

/// A cell is unimodular when its three difference vectors form a basis of
/// the facet's affine lattice; projecting the barycentric coordinates to any
/// three of the facet's four active vertices is a lattice isomorphism, so a
/// 3×3 determinant of ±1 certifies it.
fn cell_is_unimodular(points: &PointSet, cell: &[usize; 4]) -> bool {
    let support = cell.iter().fold(Carrier::empty(), |acc, &p| {
        acc.union(points.points[p].carrier)
    });
    if support.len() > 4 {
        return false;
    }
    let active = support.indices();
    // Use the first three active vertices as projection coordinates; with
    // fewer than four active vertices the cell is degenerate anyway.
    if active.len() < 2 {
        return false;
    }
    let proj: Vec<u8> = active.iter().copied().take(3).collect();
    let b = |p: usize, v: u8| i64::from(points.points[p].bary[v as usize]);
    let mut m = [[0i64; 3]; 3];
    for (r, &p) in cell[1..].iter().enumerate() {
        for (c, &v) in proj.iter().enumerate() {
            m[r][c] = b(p, v) - b(cell[0], v);
        }
    }
    det3(&m).abs() == 1
}

pub(crate) fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The full geometric stack for one triangulation variant.
pub struct Geometry {
    pub points: PointSet,
    pub triangulation: Triangulation,
    pub fan: SimplicialFan,
}

impl Geometry {
    /// Stable fingerprint of the fan (rays, cells, variant), recorded as
    /// table provenance.
    #[must_use]
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64; // FNV-1a offset basis
        let mut eat = |v: u64| {
            h ^= v;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        for p in &self.points.points {
            for &c in &p.ambient {
                eat(c as u64);
            }
        }
        for cell in &self.triangulation.cells {
            for &p in cell {
                eat(p as u64);
            }
        }
        eat(match self.triangulation.variant {
            TriangulationVariant::Default => 1,
            TriangulationVariant::Alternate => 2,
        });
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    /// Independent enumeration straight from the ambient description
    /// `P = { x : x_i ≥ -1, Σx ≤ 1 }`: iterate the coordinate box and count
    /// tight constraints. Used as the oracle for the classified counts.
    fn oracle_boundary_counts() -> (usize, [usize; 4]) {
        let mut total = 0;
        let mut by_carrier_size = [0usize; 4]; // sizes 1..=4
        for x0 in -1..=4i64 {
            for x1 in -1..=4i64 {
                for x2 in -1..=4i64 {
                    for x3 in -1..=4i64 {
                        let x = [x0, x1, x2, x3];
                        let slack0 = 1 - x.iter().sum::<i64>();
                        if slack0 < 0 || x.iter().any(|&c| c < -1) {
                            continue;
                        }
                        let tight =
                            usize::from(slack0 == 0) + x.iter().filter(|&&c| c == -1).count();
                        if tight == 0 {
                            continue; // interior
                        }
                        total += 1;
                        by_carrier_size[4 - tight] += 1; // carrier size = 5 - tight
                    }
                }
            }
        }
        (total, by_carrier_size)
    }

    #[test]
    fn boundary_point_counts_match_oracle() {
        let (total, by_size) = oracle_boundary_counts();
        assert_eq!(total, 125);
        assert_eq!(by_size, [5, 40, 60, 20]);

        let ps = enumerate_boundary_points();
        assert_eq!(ps.len(), 125);
        let count = |n: usize| ps.points.iter().filter(|p| p.carrier.len() == n).count();
        assert_eq!([count(1), count(2), count(3), count(4)], [5, 40, 60, 20]);
    }

    #[test]
    fn vertex_and_edge_point_coordinates() {
        let ps = enumerate_boundary_points();
        let v0 = ps.index_of_id("V0".parse().unwrap()).unwrap();
        assert_eq!(ps.points[v0].ambient, [-1, -1, -1, -1]);
        let v1 = ps.index_of_id("V1".parse().unwrap()).unwrap();
        assert_eq!(ps.points[v1].ambient, [4, -1, -1, -1]);
        // E01:1 = V0 + (V1 - V0)/5
        let e = ps.index_of_id("E01:1".parse().unwrap()).unwrap();
        assert_eq!(ps.points[e].ambient, [0, -1, -1, -1]);
        assert_eq!(ps.points[e].bary, [4, 1, 0, 0, 0]);
    }

    #[test]
    fn canonical_order_blocks() {
        let ps = enumerate_boundary_points();
        assert_eq!(ps.id(0).to_string(), "V0");
        assert_eq!(ps.id(4).to_string(), "V4");
        assert_eq!(ps.id(5).to_string(), "E01:1");
        assert_eq!(ps.id(44).to_string(), "E34:4");
        assert_eq!(ps.id(45).to_string(), "F012:1");
        assert_eq!(ps.id(104).to_string(), "F234:6");
        assert_eq!(ps.id(105).to_string(), "G0:1");
        assert_eq!(ps.id(124).to_string(), "G4:4");
        // Everything before the G block is the hypersurface basis.
        for i in 0..DIVISOR_COUNT {
            assert!(ps.id(i).in_hypersurface_basis());
        }
        for i in DIVISOR_COUNT..RAY_COUNT {
            assert!(!ps.id(i).in_hypersurface_basis());
        }
    }

    #[test]
    fn boundary_points_are_primitive() {
        let ps = enumerate_boundary_points();
        for p in &ps.points {
            let g = p.ambient.iter().fold(0i64, |acc, &c| gcd(acc, c));
            assert_eq!(g, 1, "point {} not primitive", p.id);
        }
    }

    #[test]
    fn invariants_bary_sum_carrier_ambient() {
        let ps = enumerate_boundary_points();
        for p in &ps.points {
            assert_eq!(p.bary.iter().map(|&b| u32::from(b)).sum::<u32>(), 5);
            for i in 0..5u8 {
                assert_eq!(p.carrier.contains(i), p.bary[i as usize] > 0);
            }
            // ambient = Σ bary[i]·V[i] / 5, exactly
            for (m, &coord) in p.ambient.iter().enumerate() {
                let num: i64 = (0..5).map(|i| i64::from(p.bary[i]) * VERTICES[i][m]).sum();
                assert_eq!(num % 5, 0);
                assert_eq!(num / 5, coord);
            }
        }
    }

    #[test]
    fn face_interior_numbering_is_lex_decreasing() {
        let ps = enumerate_boundary_points();
        // F012 block: barycentric triples on (0,1,2) in lex-decreasing order.
        let expect = [
            [3, 1, 1],
            [2, 2, 1],
            [2, 1, 2],
            [1, 3, 1],
            [1, 2, 2],
            [1, 1, 3],
        ];
        for (l, trip) in expect.iter().enumerate() {
            let id = DivisorId::Face {
                i: 0,
                j: 1,
                k: 2,
                l: (l + 1) as u8,
            };
            let p = &ps.points[ps.index_of_id(id).unwrap()];
            assert_eq!([p.bary[0], p.bary[1], p.bary[2]], *trip);
        }
    }

    #[test]
    fn staircase_triangulation_counts_and_restrictions() {
        let ps = enumerate_boundary_points();
        for variant in [
            TriangulationVariant::Default,
            TriangulationVariant::Alternate,
        ] {
            let t = standard_triangulation(&ps, variant);
            assert_eq!(t.cells.len(), 625);
            for face in two_faces() {
                assert_eq!(t.triangles_of_face(face).len(), 25);
            }
            for edge in p_edges() {
                assert_eq!(t.segments_of_edge(edge).len(), 5);
            }
        }
    }

    #[test]
    fn alternate_triangulation_differs_only_in_facet_interiors() {
        let ps = enumerate_boundary_points();
        let a = standard_triangulation(&ps, TriangulationVariant::Default);
        let b = standard_triangulation(&ps, TriangulationVariant::Alternate);
        assert_ne!(a.cells, b.cells, "variants must differ somewhere");
        for face in two_faces() {
            assert_eq!(
                a.triangles_of_face(face),
                b.triangles_of_face(face),
                "2-face restriction must not depend on the variant"
            );
        }
    }

    #[test]
    fn face_interior_points_have_six_neighbors() {
        let ps = enumerate_boundary_points();
        let t = standard_triangulation(&ps, TriangulationVariant::Default);
        for face in two_faces() {
            let carrier = Carrier::from_indices(face);
            for (i, p) in ps.points.iter().enumerate() {
                if p.carrier == carrier {
                    assert_eq!(
                        t.face_neighbors(face, i).len(),
                        6,
                        "interior point {} of face {face:?}",
                        p.id
                    );
                }
            }
        }
    }

    #[test]
    fn s5_action_permutes_points_and_preserves_triangulation_validity() {
        let ps = enumerate_boundary_points();
        let t = standard_triangulation(&ps, TriangulationVariant::Default);
        // A transposition and a 5-cycle generate S5.
        for sigma in [[1u8, 0, 2, 3, 4], [1u8, 2, 3, 4, 0]] {
            // Permuting maps the point set bijectively onto itself and
            // preserves the classification counts.
            let mut seen = vec![false; ps.len()];
            for i in 0..ps.len() {
                let j = ps.permute(i, &sigma);
                assert_eq!(ps.points[i].carrier.len(), ps.points[j].carrier.len());
                assert!(!seen[j]);
                seen[j] = true;
            }
            // The image of the triangulation is again unimodular with the
            // right cell count (generally a different triangulation).
            let mapped: Vec<[usize; 4]> = t
                .cells
                .iter()
                .map(|cell| {
                    let mut c = cell.map(|p| ps.permute(p, &sigma));
                    c.sort_unstable();
                    c
                })
                .collect();
            assert_eq!(mapped.len(), 625);
            for cell in &mapped {
                assert!(cell_is_unimodular(&ps, cell));
            }
        }
    }
}
