use arfkit_core::enhanced::BrownValue;
use arfkit_core::f2::{kernel_basis, rank, solve, symplectic_basis};
use arfkit_core::lattice::{char_vector_mod2, CharVector};
use arfkit_core::random::{self, Block};
use arfkit_core::rochlin::{build_surgery_scenario, mu_from_surgery, verify_closed, verify_relative};
use arfkit_core::seifert::arf_beta_relation_check;
use arfkit_core::{ArfValue, EnhancedSpace, EvenPresentation, F2Matrix, F2Vector, IntLattice, RelativeScenario};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> F2Matrix {
    let entries: Vec<F2Vector> = (0..rows)
        .map(|_| F2Vector::from_bits((0..cols).map(|_| rng.gen_bool(0.5))))
        .collect();
    F2Matrix::from_row_vectors(entries, cols).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_is_a_basis_of_the_null_space(seed: u64, rows in 0usize..8, cols in 1usize..10) {
        let m = random_matrix(&mut rng(seed), rows, cols);
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len() + rank(&m), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        let stacked = F2Matrix::from_row_vectors(ker.clone(), cols).unwrap();
        prop_assert_eq!(rank(&stacked), ker.len());
    }

    #[test]
    fn solve_matches_enumeration(seed: u64, rows in 1usize..6, cols in 1usize..9) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, rows, cols);
        let b = F2Vector::from_bits((0..rows).map(|_| r.gen_bool(0.5)));
        match solve(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            None => {
                let any = (0..1u64 << cols)
                    .any(|mask| m.mul_vec(&F2Vector::from_mask(cols, mask)).unwrap() == b);
                prop_assert!(!any);
            }
        }
    }

    #[test]
    fn symplectic_pairs_are_hyperbolic(seed: u64, half in 0usize..6) {
        let gram = random::alternating_gram(&mut rng(seed), 2 * half);
        prop_assume!(rank(&gram) == 2 * half);
        let pairs = symplectic_basis(&gram).unwrap();
        prop_assert_eq!(pairs.len(), half);
        for (i, (ai, bi)) in pairs.iter().enumerate() {
            for (j, (aj, bj)) in pairs.iter().enumerate() {
                prop_assert!(!gram.pair(ai, aj));
                prop_assert!(!gram.pair(bi, bj));
                prop_assert_eq!(gram.pair(ai, bj), i == j);
            }
        }
    }

    #[test]
    fn arf_algorithms_agree(seed: u64, dim in 0usize..=12) {
        let s = random::quadratic_space(&mut rng(seed), dim);
        prop_assert_eq!(s.arf_symplectic(), s.arf_democratic().unwrap());
    }

    #[test]
    fn arf_is_additive(seed: u64, da in 0usize..=8, db in 0usize..=8) {
        let mut r = rng(seed);
        let a = random::quadratic_space(&mut r, da);
        let b = random::quadratic_space(&mut r, db);
        prop_assert_eq!(a.direct_sum(&b).arf_symplectic(), a.arf_symplectic() + b.arf_symplectic());
    }

    #[test]
    fn quadratic_polarization(seed: u64, dim in 0usize..=6) {
        let s = random::quadratic_space(&mut rng(seed), dim);
        let n = 1u64 << dim;
        for xm in 0..n {
            for ym in 0..n {
                let x = F2Vector::from_mask(dim, xm);
                let y = F2Vector::from_mask(dim, ym);
                let lhs = s.evaluate_q(&x.add(&y)).unwrap();
                let rhs = s.evaluate_q(&x).unwrap() ^ s.evaluate_q(&y).unwrap() ^ s.gram().pair(&x, &y);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn q_is_linear_on_the_radical(seed: u64, dim in 0usize..=10) {
        let s = random::quadratic_space(&mut rng(seed), dim);
        let rad = s.radical();
        for r in &rad {
            for t in &rad {
                let sum = s.evaluate_q(&r.add(t)).unwrap();
                prop_assert_eq!(sum, s.evaluate_q(r).unwrap() ^ s.evaluate_q(t).unwrap());
            }
        }
    }

    #[test]
    fn brown_algorithms_agree(seed: u64, dim in 0usize..=10) {
        let s = random::enhanced_space(&mut rng(seed), dim);
        prop_assert_eq!(s.brown_compass().unwrap(), s.brown_gauss().unwrap());
    }

    #[test]
    fn gauss_sum_norm(seed: u64, dim in 0usize..=6) {
        let s = random::enhanced_space(&mut rng(seed), dim);
        let g = s.gauss_sum(24).unwrap();
        if s.is_proper() {
            prop_assert_eq!(g.norm_sq(), 1i128 << (dim + s.radical().len()));
        } else {
            prop_assert!(g.is_zero());
        }
    }

    #[test]
    fn brown_is_additive(seed: u64, da in 0usize..=6, db in 0usize..=6) {
        let mut r = rng(seed);
        let a = random::enhanced_space(&mut r, da);
        let b = random::enhanced_space(&mut r, db);
        let sum = a.direct_sum(&b);
        prop_assert_eq!(sum.brown_gauss().unwrap(), a.brown_gauss().unwrap() + b.brown_gauss().unwrap());
        prop_assert!(EnhancedSpace::new(sum.gram().clone(), sum.evals().to_vec()).is_ok());
    }

    #[test]
    fn brown_of_doubled_quadratic_is_four_arf(seed: u64, dim in 0usize..=10) {
        let q = random::quadratic_space(&mut rng(seed), dim);
        let e = EnhancedSpace::from_quadratic(&q);
        prop_assert_eq!(e.brown_gauss().unwrap(), BrownValue::from_arf(q.arf_symplectic()));
    }

    #[test]
    fn van_der_blij_on_random_unimodular(seed: u64) {
        let (l, _) = random::unimodular_lattice(&mut rng(seed), 12);
        let xi = l.characteristic_vector().unwrap();
        prop_assert!(l.check_van_der_blij(&xi).unwrap());
    }

    #[test]
    fn signature_is_a_congruence_invariant(seed: u64) {
        let mut r = rng(seed);
        let (l, blocks) = random::unimodular_lattice(&mut r, 12);
        let expected: i64 = blocks.iter().map(|b| b.signature()).sum();
        prop_assert_eq!(l.signature().unwrap(), expected);
        let b = random::unimodular(&mut r, l.rank(), 2 * l.rank());
        prop_assert_eq!(l.congruent(&b).unwrap().signature().unwrap(), expected);
    }

    #[test]
    fn characteristic_shift(seed: u64) {
        let mut r = rng(seed);
        let (l, _) = random::unimodular_lattice(&mut r, 10);
        let xi = l.characteristic_vector().unwrap();
        let shifted = CharVector {
            xi: xi.xi.iter().map(|x| x + 2 * BigInt::from(r.gen_range(-3i64..=3))).collect(),
        };
        prop_assert_eq!(l.characteristic_failure(&shifted).unwrap(), None);
        prop_assert_eq!(char_vector_mod2(&shifted), char_vector_mod2(&xi));
        let d = l.pair(&shifted.xi, &shifted.xi).unwrap() - l.pair(&xi.xi, &xi.xi).unwrap();
        prop_assert_eq!(d % 8, BigInt::from(0));
    }

    #[test]
    fn stabilization_preserves_arf(seed: u64) {
        let mut r = rng(seed);
        let genus = r.gen_range(0..=3);
        let components = r.gen_range(1..=3);
        let sd = random::seifert(&mut r, genus, components, 3);
        prop_assume!(sd.size() <= 8);
        prop_assert_eq!(sd.stabilize().arf(), sd.arf());
    }

    #[test]
    fn orientable_pathway_satisfies_relation(seed: u64) {
        let mut r = rng(seed);
        let genus = r.gen_range(0..=3);
        let components = r.gen_range(1..=3);
        let sd = random::seifert(&mut r, genus, components, 4);
        let surf = sd.orientable_surface().unwrap();
        prop_assert_eq!(surf.beta_surface(24).unwrap(), BrownValue::from_arf(sd.arf()));
        prop_assert_eq!(-surf.phi(), sd.lk_total().unwrap());
        prop_assert!(arf_beta_relation_check(&sd, &surf).unwrap());
    }

    #[test]
    fn surgery_paths_agree(seed: u64, positive: bool) {
        let k = random::knot(&mut rng(seed), 8, 4);
        let alpha = if positive { 1 } else { -1 };
        let s = build_surgery_scenario(&k, alpha).unwrap();
        prop_assert_eq!(s.mu_boundary, mu_from_surgery(&k, &BigInt::from(alpha)).unwrap());
        prop_assert!(verify_relative(&s).unwrap().holds);
        prop_assert!(verify_relative(&s.to_brown()).unwrap().holds);
    }

    #[test]
    fn rochlin_is_additive(seed: u64) {
        let mut r = rng(seed);
        let pool = [Block::E8, Block::MinusE8, Block::Hyperbolic];
        let a = random::block_sum(&random::blocks(&mut r, &pool, 24));
        let b = random::block_sum(&random::blocks(&mut r, &pool, 24));
        let mu = |l: &IntLattice| EvenPresentation::new(l.clone()).unwrap().mu().unwrap();
        prop_assert_eq!(mu(&a.direct_sum(&b)), mu(&a) ^ mu(&b));
    }

    #[test]
    fn relative_with_trivial_boundary_is_closed(sigma in -40i64..40, k in -5i64..5, arf: bool, ks in 0u8..2) {
        let f_square = sigma - 8 * k;
        let arf = ArfValue::from_bit(arf);
        let rel = RelativeScenario::orientable(sigma, f_square, arf, ArfValue::Zero, 0, ks).unwrap();
        let closed = verify_closed(&BigInt::from(sigma), &BigInt::from(f_square), arf, ks).unwrap();
        prop_assert_eq!(verify_relative(&rel).unwrap(), closed);
    }

    #[test]
    fn brown_and_arf_verdicts_agree(sigma in -40i64..40, k in -5i64..5, af: bool, ab: bool, mu in 0u8..2, ks in 0u8..2) {
        let f_square = sigma - 8 * k;
        let s = RelativeScenario::orientable(sigma, f_square, ArfValue::from_bit(af), ArfValue::from_bit(ab), mu, ks).unwrap();
        prop_assert_eq!(verify_relative(&s).unwrap().holds, verify_relative(&s.to_brown()).unwrap().holds);
    }
}

#[test]
fn stabilization_invariance_of_rochlin() {
    let e8 = EvenPresentation::new(IntLattice::e8()).unwrap();
    let stabilized = EvenPresentation::new(IntLattice::e8().direct_sum(&IntLattice::hyperbolic())).unwrap();
    assert_eq!(e8.mu().unwrap(), stabilized.mu().unwrap());
}
