//! Acceptance suite: every headline claim, exact, one test per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see one
//! PASS line per criterion.

use realcy::betti::{betti_report, HodgeInput, ReportKind};
use realcy::finite;
use realcy::gf2::{BitMatrix, BitVec};
use realcy::intersection::{build_triple_table, verify_prop42, TripleTable};
use realcy::lattice::{Geometry, TriangulationVariant, DIVISOR_COUNT};
use realcy::rng::SplitMix64;
use realcy::twist::{
    batch_twisted_ranks, build_pairings, local_validate, solve_m2_twists, twisted_matrix,
    twisted_rank, PairingMatrices, TwistClass, TwistCoset,
};
use realcy::{Classification, DivisorId};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

struct Fixture {
    geometry: Geometry,
    table: TripleTable,
    pairings: PairingMatrices,
    coset: TwistCoset,
    table_build_time: Duration,
}

fn fixture() -> &'static Fixture {
    static FIX: OnceLock<Fixture> = OnceLock::new();
    FIX.get_or_init(|| {
        let geometry = realcy::build_geometry(TriangulationVariant::Default)
            .expect("fan certifies smooth and complete");
        let started = Instant::now();
        let table = build_triple_table(&geometry).expect("table builds");
        let table_build_time = started.elapsed();
        let pairings = build_pairings(&table);
        let coset = solve_m2_twists(&table, &pairings).expect("twist system solvable");
        Fixture {
            geometry,
            table,
            pairings,
            coset,
            table_build_time,
        }
    })
}

#[test]
fn criterion_1_triple_table_structure() {
    let f = fixture();
    let report = verify_prop42(&f.table, &f.geometry);

    // Cubes: 45 V/E ones and 60 F zeros, checked individually.
    assert!(report.cubes.passed(), "{:?}", report.cubes.witnesses);
    assert_eq!(report.cubes.checked, 105);
    let ve_cubes = (0..DIVISOR_COUNT)
        .filter(|&d| {
            matches!(
                f.geometry.points.id(d),
                DivisorId::Vertex { .. } | DivisorId::Edge { .. }
            ) && f.table.t2(d, d, d)
        })
        .count();
    assert_eq!(ve_cubes, 45);
    let f_cubes_zero = (0..DIVISOR_COUNT)
        .filter(|&d| {
            matches!(f.geometry.points.id(d), DivisorId::Face { .. }) && !f.table.t2(d, d, d)
        })
        .count();
    assert_eq!(f_cubes_zero, 60);

    // Triangle criterion covers every small triangle (= 1) and every other
    // distinct same-face triple (= 0); cross-face triples vanish by the
    // locality the builder verified.
    assert!(
        report.triangles.passed(),
        "{:?}",
        report.triangles.witnesses
    );

    // Squaring partner counts: 5 vertices with |S| = 5, 40 edge points with
    // |S| = 8.
    assert!(report.squaring_sets.passed());
    assert_eq!(report.squaring_sets.checked, 45);

    // Numbering spot checks hold on all ten edges under one orientation.
    assert!(report.numbering.passed());
    assert!(report.orientation.is_some());

    // Full table build stays well under the time budget.
    assert!(
        f.table_build_time < Duration::from_secs(60),
        "table took {:?}",
        f.table_build_time
    );
    println!(
        "PASS criterion 1: triple-table structure (orientation {:?}, build {:?})",
        report.orientation, f.table_build_time
    );
}

#[test]
fn criterion_2_rank_73_and_untwisted_betti() {
    let f = fixture();
    let rank = f.pairings.q.rank();
    assert_eq!(rank, 73);
    assert_eq!(twisted_rank(&f.pairings, &TwistClass::zero()), 73);
    let report = betti_report(ReportKind::Untwisted, &HodgeInput::quintic(), rank).unwrap();
    assert_eq!(report.b, vec![2, 29, 29, 2]);
    assert_eq!(report.components, 2);
    println!("PASS criterion 2: rank Q = 73, untwisted b = (2, 29, 29, 2)");
}

#[test]
fn criterion_3_m_minus_2_twist() {
    let f = fixture();
    let l = &f.coset.particular;

    // Q_L = 0 on all 105² pairs.
    let ql = twisted_matrix(&f.pairings, l);
    for d1 in 0..DIVISOR_COUNT {
        for d2 in 0..DIVISOR_COUNT {
            assert!(!ql.get(d1, d2), "Q_L[{d1}][{d2}] nonzero");
        }
    }

    // Nonzero in cohomology, certified by a pairing witness.
    assert!(l.nonzero_witness(&f.table).is_some());

    // The local configurations all hold.
    let local = local_validate(&f.table, &f.geometry, l).unwrap();
    assert!(local.pass_all(), "{:?}", local.entries());

    // The twisted Betti numbers: connected, (1, 101, 101, 1), an (M-2) locus
    // with total 204 = ambient - 4.
    let report = betti_report(ReportKind::Twisted, &HodgeInput::quintic(), 0).unwrap();
    assert_eq!(report.b, vec![1, 101, 101, 1]);
    assert_eq!(report.components, 1);
    assert_eq!(report.classification, Classification::MMinus2);
    assert_eq!(report.betti_sum, 204);
    assert_eq!(report.ambient_betti_sum - report.betti_sum, 4);
    println!(
        "PASS criterion 3: twist of support {} gives b = (1, 101, 101, 1), M-2",
        l.eps.count_ones()
    );
}

#[test]
fn criterion_4_local_global_equivalence() {
    let f = fixture();
    let mut rng = SplitMix64::new(40);
    let mut twists: Vec<TwistClass> = (0..100).map(|_| TwistClass::random(&mut rng)).collect();
    // Make sure the rank-zero side of the equivalence is populated too.
    for _ in 0..8 {
        twists.push(f.coset.sample(&mut rng));
    }
    let ranks = batch_twisted_ranks(&f.pairings, &twists);
    assert!(ranks.contains(&0));
    assert!(ranks.iter().any(|&r| r != 0));
    for (l, &rank) in twists.iter().zip(&ranks) {
        let local = local_validate(&f.table, &f.geometry, l).unwrap();
        assert_eq!(
            local.pass_all(),
            rank == 0,
            "local/global mismatch at rank {rank}"
        );
        let report = betti_report(ReportKind::Twisted, &HodgeInput::quintic(), rank).unwrap();
        assert_eq!(report.b[1] as usize, 1 + 101 - 1 - rank);
    }
    println!(
        "PASS criterion 4: local ⇔ global on {} seeded twists",
        twists.len()
    );
}

#[test]
fn criterion_5_flop_invariance() {
    let f = fixture();
    let alternate = realcy::build_geometry(TriangulationVariant::Alternate).unwrap();
    assert_ne!(
        f.geometry.triangulation.cells, alternate.triangulation.cells,
        "variants must be genuinely different triangulations"
    );
    let alt_table = build_triple_table(&alternate).unwrap();
    let a: Vec<[u8; 3]> = f.table.nonzero_triples().collect();
    let b: Vec<[u8; 3]> = alt_table.nonzero_triples().collect();
    assert_eq!(a, b);
    println!("PASS criterion 5: mod-2 table identical across triangulation variants");
}

#[test]
fn criterion_6_finite_model_suites() {
    let started = Instant::now();

    let beta = finite::beta_identity_check();
    assert_eq!(beta.total, 4096);
    assert!(beta.all_pass());
    for check in &beta.report.checks {
        assert_eq!(check.checked, 4096);
        assert_eq!(check.failed, 0);
    }

    let l2 = finite::check_l2_structure();
    assert!(l2.all_pass(), "{:?}", l2.checks);

    for n in 2..=4 {
        let rep = finite::filtration_check(n);
        assert!(rep.all_pass(), "filtration n = {n}: {rep:?}");
    }
    // Cumulative dims (1, 4, 7, 8) and quotients (1, 3, 3, 1) at n = 3 are
    // asserted inside filtration_check; pin them here independently.
    let dims: Vec<usize> = (0..=3)
        .map(|p| (0..=p).map(|i| binomial(3, i)).sum())
        .collect();
    assert_eq!(dims, vec![1, 4, 7, 8]);
    let quotients: Vec<usize> = (0..=3).map(|p| binomial(3, p)).collect();
    assert_eq!(quotients, vec![1, 3, 3, 1]);

    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "finite suites took {elapsed:?}"
    );
    println!("PASS criterion 6: finite model suites (4096/4096, L², filtration) in {elapsed:?}");
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_7_twisted_k3() {
    let report = betti_report(ReportKind::K3Twisted, &HodgeInput::k3(), 0).unwrap();
    assert_eq!(report.components, 1);
    assert_eq!(report.genus, Some(9));
    assert_eq!(report.b, vec![1, 18, 1]);
    println!("PASS criterion 7: twisted K3 is connected of genus 9, b = (1, 18, 1)");
}

#[test]
fn criterion_8_mirror_quintic_open_discrepancy() {
    let report = betti_report(ReportKind::Twisted, &HodgeInput::mirror_quintic(), 0).unwrap();
    assert_eq!(report.b[1], 101, "mechanical evaluation gives 101");
    assert_eq!(
        report.open_flags.len(),
        1,
        "exactly one mandatory OPEN flag"
    );
    let flag = &report.open_flags[0];
    assert!(flag.contains("OPEN"));
    assert!(flag.contains("101") && flag.contains("100"));
    // The derivation trace is complete: inputs, quotient, rank transport,
    // b₁, duality, totals, discrepancy.
    assert!(report.trace.len() >= 7, "trace: {:?}", report.trace);
    assert!(report.trace.iter().any(|s| s.step == "discrepancy"));
    println!("PASS criterion 8: mirror-quintic report carries the OPEN 101-vs-100 flag");
}

/// Textbook elimination over `Vec<Vec<u8>>`, written here independently of
/// the packed implementation, as the oracle for criterion 9.
#[allow(clippy::needless_range_loop)]
mod naive {
    pub fn rank(rows: &[Vec<u8>]) -> usize {
        let mut a = rows.to_vec();
        let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        for col in 0..nc {
            let Some(p) = (rank..nr).find(|&r| a[r][col] == 1) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..nr {
                if r != rank && a[r][col] == 1 {
                    for c in col..nc {
                        a[r][c] ^= a[rank][c];
                    }
                }
            }
            rank += 1;
            if rank == nr {
                break;
            }
        }
        rank
    }

    pub fn solvable(rows: &[Vec<u8>], rhs: &[u8]) -> bool {
        let augmented: Vec<Vec<u8>> = rows
            .iter()
            .zip(rhs)
            .map(|(row, &b)| {
                let mut r = row.clone();
                r.push(b);
                r
            })
            .collect();
        rank(&augmented) == rank(rows)
    }

    pub fn mul(rows: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
        rows.iter()
            .map(|row| row.iter().zip(x).fold(0, |acc, (&a, &b)| acc ^ (a & b)))
            .collect()
    }
}

#[test]
fn criterion_9_gf2_against_naive_oracle() {
    let mut rng = SplitMix64::new(90);
    for instance in 0..1000 {
        let rows = 1 + rng.next_below(200) as usize;
        let cols = 1 + rng.next_below(200) as usize;
        let byte_rows: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..cols).map(|_| u8::from(rng.next_bool())).collect())
            .collect();
        let m = BitMatrix::from_fn(rows, cols, |r, c| byte_rows[r][c] == 1);

        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, naive::rank(&byte_rows), "instance {instance}");
        assert_eq!(rank + kernel.len(), cols, "instance {instance}");
        for k in &kernel {
            let kx: Vec<u8> = (0..cols).map(|c| u8::from(k.get(c))).collect();
            assert!(
                naive::mul(&byte_rows, &kx).iter().all(|&b| b == 0),
                "instance {instance}: kernel vector fails the oracle"
            );
        }

        let rhs_bytes: Vec<u8> = (0..rows).map(|_| u8::from(rng.next_bool())).collect();
        let rhs = BitVec::from_indices(
            rows,
            rhs_bytes
                .iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| i),
        );
        let ours = m.solve_affine(&rhs).unwrap();
        assert_eq!(
            ours.is_some(),
            naive::solvable(&byte_rows, &rhs_bytes),
            "instance {instance}: solvability disagrees"
        );
        if let Some(sol) = ours {
            let x: Vec<u8> = (0..cols).map(|c| u8::from(sol.particular.get(c))).collect();
            assert_eq!(naive::mul(&byte_rows, &x), rhs_bytes, "instance {instance}");
        }
    }
    println!("PASS criterion 9: GF(2) kernel agrees with the naive oracle on 1000 instances");
}
