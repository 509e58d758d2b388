use hochschild::f2linalg::{reduce_pairs, subquotient_dim, BitMatrix, BitVector, SparseColumns, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> BitMatrix {
    let bits: Vec<bool> = (0..r * c).map(|_| rng.gen_bool(density)).collect();
    BitMatrix::from_fn(r, c, |i, j| bits[i * c + j])
}

proptest! {
    #[test]
    fn rank_nullity_and_transpose(seed in any::<u64>(), r in 1usize..120, c in 1usize..120, density in 0.01f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, r, c, density);
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), c);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(SparseColumns::from_dense(&m).rank(), m.rank());
    }

    #[test]
    fn subquotient_identity(seed in any::<u64>(), n in 1usize..60, a in 0usize..30, b in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gen = |rng: &mut ChaCha8Rng, k: usize| -> Vec<BitVector> {
            (0..k).map(|_| BitVector::from_bools(&(0..n).map(|_| rng.gen_bool(0.3)).collect::<Vec<_>>())).collect()
        };
        let u = Subspace::span(n, &gen(&mut rng, a));
        let w = Subspace::span(n, &gen(&mut rng, b));
        let s = u.sum(&w).unwrap();
        // subquotient_dim(U + W, W) + dim W = dim(U + W)
        prop_assert_eq!(subquotient_dim(&s, &w).unwrap() + w.dim(), s.dim());
    }

    #[test]
    fn clearing_does_not_change_pairs(seed in any::<u64>(), a in 1usize..30, b in 1usize..30, c in 1usize..30) {
        // a random complex C0 → C1 → C2 built as δ1 = X·K with K spanning ker(δ0-side)
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d0 = random_matrix(&mut rng, b, a, 0.3);
        // rows of δ1 must kill the image of δ0: δ1 = Y · (basis of left kernel of δ0)
        let left_kernel = d0.transpose().kernel_basis().basis();
        let y = random_matrix(&mut rng, c, left_kernel.len().max(1), 0.4);
        let d1 = if left_kernel.is_empty() {
            BitMatrix::zeros(c, b)
        } else {
            y.mul(&BitMatrix::from_rows(b, &left_kernel)).unwrap()
        };
        prop_assert!(d1.mul(&d0).unwrap().is_zero());
        let s0 = SparseColumns::from_dense(&d0);
        let s1 = SparseColumns::from_dense(&d1);
        let order_b: Vec<u32> = (0..b as u32).collect();
        let rank_b: Vec<u32> = (0..b as u32).rev().collect();
        let order_a: Vec<u32> = (0..a as u32).collect();
        let rank_c: Vec<u32> = (0..c as u32).rev().collect();
        let p0 = reduce_pairs(&s0, &order_a, &rank_b, &[]);
        let cleared: Vec<u32> = p0.iter().map(|p| p.1).collect();
        let with = reduce_pairs(&s1, &order_b, &rank_c, &cleared);
        let without = reduce_pairs(&s1, &order_b, &rank_c, &[]);
        prop_assert_eq!(with, without);
    }
}
