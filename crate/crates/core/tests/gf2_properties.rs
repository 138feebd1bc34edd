//! Property-based tests of the GF(2) kernel: the elimination invariants
//! hold for arbitrary shapes and contents, not just the seeded samples.

use proptest::prelude::*;
use realcy::gf2::{BitMatrix, BitVec};

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = (usize, usize, Vec<bool>)> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(any::<bool>(), rows * cols)
            .prop_map(move |bits| (rows, cols, bits))
    })
}

fn build(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    BitMatrix::from_fn(rows, cols, |r, c| bits[r * cols + c])
}

proptest! {
    /// Rank–nullity, kernel correctness, and idempotence of the rank.
    #[test]
    fn rank_nullity_and_kernel_annihilation((rows, cols, bits) in matrix_strategy(48)) {
        let m = build(rows, cols, &bits);
        let (rank, kernel) = m.rank_and_kernel();
        prop_assert!(rank <= rows.min(cols));
        prop_assert_eq!(rank + kernel.len(), cols);
        for k in &kernel {
            prop_assert!(m.mul_vec(k).unwrap().is_zero());
        }
        // Kernel vectors are linearly independent: stacked rank equals count.
        if !kernel.is_empty() {
            let stacked = BitMatrix::from_rows(cols, &kernel);
            prop_assert_eq!(stacked.rank(), kernel.len());
        }
        prop_assert_eq!(m.rank(), rank);
    }

    /// Systems built from a known solution stay solvable, and the returned
    /// coset reproduces the right-hand side under any kernel combination.
    #[test]
    fn solve_round_trip(
        (rows, cols, bits) in matrix_strategy(32),
        x_bits in prop::collection::vec(any::<bool>(), 32),
        combo in prop::collection::vec(any::<bool>(), 32),
    ) {
        let m = build(rows, cols, &bits);
        let x0 = BitVec::from_indices(
            cols,
            (0..cols).filter(|&i| x_bits[i % x_bits.len()]),
        );
        let rhs = m.mul_vec(&x0).unwrap();
        let sol = m.solve_affine(&rhs).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), rhs.clone());
        let mut x = sol.particular.clone();
        for (i, k) in sol.kernel.iter().enumerate() {
            if combo[i % combo.len()] {
                x.xor_assign(k);
            }
        }
        prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs);
    }

    /// XOR is addition: multiplication distributes over it.
    #[test]
    fn mul_is_linear(
        (rows, cols, bits) in matrix_strategy(32),
        a_bits in prop::collection::vec(any::<bool>(), 32),
        b_bits in prop::collection::vec(any::<bool>(), 32),
    ) {
        let m = build(rows, cols, &bits);
        let a = BitVec::from_indices(cols, (0..cols).filter(|&i| a_bits[i % a_bits.len()]));
        let b = BitVec::from_indices(cols, (0..cols).filter(|&i| b_bits[i % b_bits.len()]));
        let lhs = m.mul_vec(&a.xor(&b)).unwrap();
        let rhs = m.mul_vec(&a).unwrap().xor(&m.mul_vec(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
