mod common;

use lrcmat::construct::{dmax_decide, general_construction, ThmParams};
use lrcmat::field::FieldMatrix;
use lrcmat::gammoid::build_graph;
use lrcmat::io::{lattice_from_json, lattice_to_json};
use lrcmat::lrc::{self, aux_bounds_ok, singleton_bound};
use lrcmat::matroid::validate_rank_axioms;
use lrcmat::zlattice::matroid_from_lattice;
use lrcmat::{GroundSubset, Matroid};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix_strategy() -> impl Strategy<Value = FieldMatrix> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=4, 2usize..=8).prop_flat_map(|(p, k, n)| {
        prop::collection::vec(prop::collection::vec(0..p, n), k).prop_map(move |rows| FieldMatrix::new(p, rows).unwrap())
    })
}

/// Rank as the size of a largest independent subset, from an independence
/// oracle alone.
fn rank_from_independence(n: usize, x: u128, indep: impl Fn(u128) -> bool) -> usize {
    GroundSubset::from_bits(n, x).unwrap().subsets().filter(|s| indep(s.bits())).map(|s| s.len()).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_matroids_satisfy_rank_axioms(a in matrix_strategy()) {
        let m = Matroid::from_matrix(a).unwrap();
        prop_assert!(validate_rank_axioms(&m).unwrap().is_valid());
    }

    #[test]
    fn cyclic_flats_reconstruct_the_rank_function(a in matrix_strategy()) {
        let m = Matroid::from_matrix(a).unwrap();
        let z = m.cyclic_flats_exhaustive().unwrap();
        let rep = z.validate();
        prop_assert!(rep.is_valid(), "{}", rep);
        let back = matroid_from_lattice(z.clone()).unwrap();
        prop_assert_eq!(m.first_rank_mismatch(&back).unwrap(), None);
        prop_assert_eq!(lattice_from_json(&lattice_to_json(&z)).unwrap(), z);
    }

    #[test]
    fn coatom_distance_matches_definition(a in matrix_strategy()) {
        let m = Matroid::from_matrix(a).unwrap();
        if m.full_rank() > 0 && m.is_coloop_free() {
            prop_assert_eq!(lrc::min_distance(&m).unwrap(), lrc::min_distance_definitional(&m).unwrap());
        } else {
            prop_assert!(lrc::min_distance(&m).is_err());
        }
    }

    #[test]
    fn closure_is_idempotent_and_keeps_rank(a in matrix_strategy(), bits in any::<u16>()) {
        let m = Matroid::from_matrix(a).unwrap();
        let x = GroundSubset::from_bits(m.n(), bits as u128 & ((1u128 << m.n()) - 1)).unwrap();
        let c = m.closure(&x).unwrap();
        prop_assert!(x.is_subset_of(&c));
        prop_assert_eq!(m.closure(&c).unwrap(), c);
        prop_assert_eq!(m.rank(&c).unwrap(), m.rank(&x).unwrap());
    }

    #[test]
    fn restriction_keeps_circuits_inside(a in matrix_strategy(), bits in any::<u16>()) {
        let m = Matroid::from_matrix(a).unwrap();
        let x = GroundSubset::from_bits(m.n(), bits as u128 & ((1u128 << m.n()) - 1)).unwrap();
        let r = m.restrict(&x).unwrap();
        let carrier = x.elements();
        let mut lifted: Vec<GroundSubset> = r
            .circuits()
            .unwrap()
            .into_iter()
            .map(|c| GroundSubset::from_elements(m.n(), c.iter().map(|i| carrier[i])).unwrap())
            .collect();
        lifted.sort();
        let mut inside: Vec<GroundSubset> = m.circuits().unwrap().into_iter().filter(|c| c.is_subset_of(&x)).collect();
        inside.sort();
        prop_assert_eq!(lifted, inside);
    }

    #[test]
    fn locality_respects_the_bound(a in matrix_strategy(), delta in 2usize..=4) {
        let m = Matroid::from_matrix(a).unwrap();
        let k = m.full_rank();
        prop_assume!(k > 0 && m.is_coloop_free());
        let d = lrc::min_distance(&m).unwrap();
        if let Some(r) = lrc::minimal_r(&m, delta).unwrap() {
            let asg = lrc::has_locality(&m, r, delta).unwrap().unwrap();
            prop_assert!(lrc::verify_assignment(&m, &asg, r, delta).unwrap());
            prop_assert!(d as i64 <= singleton_bound(m.n(), k, r, delta));
            prop_assert!(delta <= d);
            prop_assert!(aux_bounds_ok(m.n(), k, r, delta).0);
        }
    }

    #[test]
    fn general_construction_matches_its_definition(seed in any::<u64>(), n in 3usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(sys) = common::random_set_system(&mut rng, n) else { return Ok(()) };
        let m = general_construction(&sys).unwrap();
        prop_assert!(validate_rank_axioms(&m).unwrap().is_valid());
        let z = sys.construction_lattice().unwrap();
        prop_assert!(z.validate().is_valid());
        prop_assert_eq!(m.cyclic_flats_exhaustive().unwrap(), z);
        for x in 0u128..(1u128 << n) {
            let by_def = rank_from_independence(n, x, |y| sys.is_independent_by_unions(y).unwrap());
            prop_assert_eq!(m.rank_bits(x), by_def, "subset {:b}", x);
        }
        let g = Matroid::from_gammoid(build_graph(&sys).unwrap());
        prop_assert_eq!(g.first_rank_mismatch(&m).unwrap(), None);
        let p = sys.predicted_parameters().unwrap();
        if m.is_coloop_free() {
            prop_assert_eq!(p.d, lrc::min_distance_definitional(&m).unwrap());
        }
    }

    #[test]
    fn decisions_are_internally_consistent(n in 2usize..=24, k in 1usize..=20, r in 1usize..=20, delta in 2usize..=4) {
        prop_assume!(r <= k && k <= n);
        let Ok(p) = ThmParams::new(n, k, r, delta) else {
            prop_assert!(!aux_bounds_ok(n, k, r, delta).0 || k + k.div_ceil(r) * (delta - 1) > n);
            return Ok(());
        };
        let v = dmax_decide(n, k, r, delta).unwrap();
        prop_assert_eq!(v.bound as i64, singleton_bound(n, k, r, delta));
        prop_assert!(v.d_lower <= v.d_upper && v.d_upper <= v.bound);
        prop_assert_eq!(v.witness.n(), n);
        prop_assert_eq!(v.witness.full_rank(), k);
        if v.perfect() == Some(true) {
            prop_assert_eq!(v.witness_d, v.bound);
        }
        prop_assert!(p.a < r);
        prop_assert!(p.b < p.block_size());
    }
}
