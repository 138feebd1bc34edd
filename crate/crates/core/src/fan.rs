//! The complete simplicial fan over the triangulated boundary of `P`.
//!
//! Rays are the 125 primitive boundary lattice points; maximal cones are the
//! cones over the 625 triangulation cells. Because `P` is reflexive and every
//! cell is unimodular, each maximal cone's four generators form a basis of
//! `ℤ⁴`: the fan is smooth. Completeness is certified combinatorially — every
//! wall (3-subset of a maximal cone) must lie in exactly two maximal cones —
//! and can be spot-checked by exact cone-membership queries on sample
//! vectors.

use crate::lattice::{PointSet, Triangulation};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Certification failures when assembling the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanError {
    /// A maximal cone whose generators do not form a lattice basis.
    Smoothness { cone: [usize; 4], det: i64 },
    /// A wall contained in a number of maximal cones other than two.
    Completeness { wall: [usize; 3], count: usize },
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::Smoothness { cone, det } => {
                write!(f, "cone {cone:?} is not smooth (determinant {det})")
            }
            FanError::Completeness { wall, count } => {
                write!(f, "wall {wall:?} lies in {count} maximal cones, expected 2")
            }
        }
    }
}

impl std::error::Error for FanError {}

/// Out-of-range ray index in a query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayIndexError {
    pub index: usize,
    pub ray_count: usize,
}

impl fmt::Display for RayIndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ray index {} out of range (fan has {} rays)",
            self.index, self.ray_count
        )
    }
}

impl std::error::Error for RayIndexError {}

/// A smooth complete simplicial fan in `ℤ⁴`.
pub struct SimplicialFan {
    /// Primitive ray generators, in the canonical point order.
    pub rays: Vec<[i64; 4]>,
    /// Sorted 4-sets of ray indices; the list itself is sorted.
    pub max_cones: Vec<[usize; 4]>,
    /// All nonempty subsets of maximal cones, padded with `SENTINEL`.
    subset_index: HashSet<[u8; 4]>,
    /// For each ray, the ascending list of maximal cones containing it.
    stars: Vec<Vec<u32>>,
}

const SENTINEL: u8 = u8::MAX;

impl SimplicialFan {
    #[must_use]
    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Whether a set of at most four rays spans a cone of the fan, i.e. is a
    /// subset of some maximal cone.
    pub fn cone_query(&self, rays: &[usize]) -> Result<bool, RayIndexError> {
        assert!(rays.len() <= 4, "cone_query takes at most 4 rays");
        let mut key = [SENTINEL; 4];
        for (slot, &r) in key.iter_mut().zip(rays) {
            if r >= self.rays.len() {
                return Err(RayIndexError {
                    index: r,
                    ray_count: self.rays.len(),
                });
            }
            *slot = r as u8;
        }
        key[..rays.len()].sort_unstable();
        Ok(self.subset_index.contains(&key))
    }

    /// Fast path for internal callers: `support` must be sorted, in-range
    /// and at most 4 long.
    pub(crate) fn spans_cone(&self, support: &[u8]) -> bool {
        let mut key = [SENTINEL; 4];
        key[..support.len()].copy_from_slice(support);
        self.subset_index.contains(&key)
    }

    /// Smallest-index maximal cone containing all the given rays, if any.
    #[must_use]
    pub fn containing_max_cone(&self, support: &[u8]) -> Option<usize> {
        let first = *support.first()?;
        self.stars[first as usize]
            .iter()
            .copied()
            .find(|&c| {
                let cone = &self.max_cones[c as usize];
                support.iter().all(|&r| cone.contains(&(r as usize)))
            })
            .map(|c| c as usize)
    }

    /// Largest-index maximal cone containing all the given rays, if any.
    /// Exists to cross-check that divisor relations do not depend on which
    /// containing cone supplies the dual vector.
    #[must_use]
    pub fn containing_max_cone_last(&self, support: &[u8]) -> Option<usize> {
        let first = *support.first()?;
        self.stars[first as usize]
            .iter()
            .rev()
            .copied()
            .find(|&c| {
                let cone = &self.max_cones[c as usize];
                support.iter().all(|&r| cone.contains(&(r as usize)))
            })
            .map(|c| c as usize)
    }

    /// The dual vector `m` of generator `ray` inside maximal cone `cone`:
    /// `⟨m, ray⟩ = 1` and `⟨m, w⟩ = 0` for the cone's other generators.
    /// Exists because the cone's generator matrix is unimodular.
    #[must_use]
    pub fn dual_vector(&self, cone: usize, ray: usize) -> [i64; 4] {
        let gens = self.max_cones[cone];
        let pos = gens
            .iter()
            .position(|&g| g == ray)
            .expect("ray must generate the cone");
        // Columns of `m` are the generators; row `pos` of the inverse is the
        // dual vector. The inverse is integral: |det| = 1.
        let mut m = [[0i64; 4]; 4];
        for (c, &g) in gens.iter().enumerate() {
            for (r, row) in m.iter_mut().enumerate() {
                row[c] = self.rays[g][r];
            }
        }
        let det = det4(&m);
        debug_assert_eq!(det.abs(), 1);
        let mut row = [0i64; 4];
        for (j, slot) in row.iter_mut().enumerate() {
            // adj(M)[pos][j] = (-1)^{pos+j} · minor(M; j, pos)
            let minor = minor3(&m, j, pos);
            let sign = if (pos + j) % 2 == 0 { 1 } else { -1 };
            *slot = sign * minor * det; // divide by det = multiply, det = ±1
        }
        row
    }

    /// Whether `v` lies in the support of the fan, decided exactly: some
    /// maximal cone expresses `v` with non-negative (integer) coordinates in
    /// its generator basis.
    #[must_use]
    pub fn covers(&self, v: [i64; 4]) -> bool {
        self.max_cones
            .iter()
            .enumerate()
            .any(|(c, _)| self.coordinates_in_cone(c, v).iter().all(|&x| x >= 0))
    }

    /// Coordinates of `v` in the generator basis of maximal cone `cone`.
    #[must_use]
    pub fn coordinates_in_cone(&self, cone: usize, v: [i64; 4]) -> [i64; 4] {
        let gens = self.max_cones[cone];
        let mut out = [0i64; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            let m = self.dual_vector(cone, gens[i]);
            *slot = dot(m, v);
        }
        out
    }
}

pub(crate) fn dot(a: [i64; 4], b: [i64; 4]) -> i64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

#[allow(clippy::needless_range_loop)]
fn minor3(m: &[[i64; 4]; 4], skip_row: usize, skip_col: usize) -> i64 {
    let mut sub = [[0i64; 3]; 3];
    let mut rr = 0;
    for r in 0..4 {
        if r == skip_row {
            continue;
        }
        let mut cc = 0;
        for c in 0..4 {
            if c == skip_col {
                continue;
            }
            sub[rr][cc] = m[r][c];
            cc += 1;
        }
        rr += 1;
    }
    crate::lattice::det3(&sub)
}

pub(crate) fn det4(m: &[[i64; 4]; 4]) -> i64 {
    let mut det = 0;
    for c in 0..4 {
        let sign = if c % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][c] * minor3(m, 0, c);
    }
    det
}

/// Builds the fan over a triangulation, certifying smoothness and
/// completeness.
pub fn build_fan(points: &PointSet, t: &Triangulation) -> Result<SimplicialFan, FanError> {
    let rays: Vec<[i64; 4]> = points.points.iter().map(|p| p.ambient).collect();
    let max_cones = t.cells.clone();

    // Smoothness: each cone's generators form a lattice basis.
    for cone in &max_cones {
        let mut m = [[0i64; 4]; 4];
        for (c, &g) in cone.iter().enumerate() {
            for (r, row) in m.iter_mut().enumerate() {
                row[c] = rays[g][r];
            }
        }
        let det = det4(&m);
        if det.abs() != 1 {
            return Err(FanError::Smoothness { cone: *cone, det });
        }
    }

    // Completeness: every wall lies in exactly two maximal cones.
    let mut wall_count: HashMap<[usize; 3], usize> = HashMap::new();
    for cone in &max_cones {
        for skip in 0..4 {
            let mut wall = [0usize; 3];
            let mut w = 0;
            for (i, &g) in cone.iter().enumerate() {
                if i != skip {
                    wall[w] = g;
                    w += 1;
                }
            }
            *wall_count.entry(wall).or_insert(0) += 1;
        }
    }
    for (wall, count) in &wall_count {
        if *count != 2 {
            return Err(FanError::Completeness {
                wall: *wall,
                count: *count,
            });
        }
    }

    let mut subset_index = HashSet::with_capacity(max_cones.len() * 15);
    for cone in &max_cones {
        for mask in 1u32..16 {
            let mut key = [SENTINEL; 4];
            let mut n = 0;
            for (i, &g) in cone.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    key[n] = g as u8;
                    n += 1;
                }
            }
            subset_index.insert(key);
        }
    }

    let mut stars = vec![Vec::new(); rays.len()];
    for (c, cone) in max_cones.iter().enumerate() {
        for &g in cone {
            stars[g].push(c as u32);
        }
    }

    Ok(SimplicialFan {
        rays,
        max_cones,
        subset_index,
        stars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_boundary_points, standard_triangulation, TriangulationVariant};
    use crate::rng::SplitMix64;

    fn fan() -> (crate::lattice::PointSet, SimplicialFan) {
        let ps = enumerate_boundary_points();
        let t = standard_triangulation(&ps, TriangulationVariant::Default);
        let fan = build_fan(&ps, &t).expect("certified fan");
        (ps, fan)
    }

    #[test]
    fn fan_has_125_rays_and_625_cones() {
        let (_, fan) = fan();
        assert_eq!(fan.ray_count(), 125);
        assert_eq!(fan.max_cones.len(), 625);
    }

    #[test]
    fn corner_cell_cone_is_unimodular() {
        let (ps, fan) = fan();
        let ids = ["V0", "E01:1", "E02:1", "E03:1"];
        let cone: Vec<usize> = ids
            .iter()
            .map(|s| ps.index_of_id(s.parse().unwrap()).unwrap())
            .collect();
        assert!(fan.cone_query(&cone).unwrap(), "corner cell must be a cone");
        let mut m = [[0i64; 4]; 4];
        for (c, &g) in cone.iter().enumerate() {
            for (r, row) in m.iter_mut().enumerate() {
                row[c] = fan.rays[g][r];
            }
        }
        assert_eq!(det4(&m).abs(), 1);
    }

    #[test]
    fn single_rays_and_listed_cells_span_cones() {
        let (_, fan) = fan();
        for r in 0..fan.ray_count() {
            assert!(fan.cone_query(&[r]).unwrap());
        }
        for cone in fan.max_cones.iter().take(50) {
            assert!(fan.cone_query(&cone[..]).unwrap());
        }
    }

    #[test]
    fn opposite_vertices_span_no_cone() {
        let (ps, fan) = fan();
        let v0 = ps.index_of_id("V0".parse().unwrap()).unwrap();
        let v4 = ps.index_of_id("V4".parse().unwrap()).unwrap();
        // Oracle: scan the cell list directly.
        let in_some_cell = fan
            .max_cones
            .iter()
            .any(|c| c.contains(&v0) && c.contains(&v4));
        assert!(!in_some_cell);
        assert!(!fan.cone_query(&[v0, v4]).unwrap());
    }

    #[test]
    fn out_of_range_query_is_an_error() {
        let (_, fan) = fan();
        assert!(fan.cone_query(&[125]).is_err());
    }

    #[test]
    fn dual_vectors_are_dual() {
        let (_, fan) = fan();
        for cone in [0usize, 100, 311, 624] {
            let gens = fan.max_cones[cone];
            for &g in &gens {
                let m = fan.dual_vector(cone, g);
                for &h in &gens {
                    let expected = i64::from(h == g);
                    assert_eq!(dot(m, fan.rays[h]), expected);
                }
            }
        }
    }

    #[test]
    fn monte_carlo_support_coverage() {
        let (_, fan) = fan();
        let mut rng = SplitMix64::new(2024);
        for _ in 0..200 {
            let v = [
                rng.next_signed(50),
                rng.next_signed(50),
                rng.next_signed(50),
                rng.next_signed(50),
            ];
            assert!(fan.covers(v), "support must cover {v:?}");
        }
    }
}
