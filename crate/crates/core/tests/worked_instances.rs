use lrcmat::construct::{
    dmax_decide, graph_parameters, graph_set_system, paths_graph_case_iii, theta_graph, CaseTag, LowerBoundSource,
};
use lrcmat::fixtures;
use lrcmat::gammoid::{build_graph, equivalence_check};
use lrcmat::lrc::{self, singleton_bound};
use lrcmat::zlattice::{matroid_from_lattice, LatticeAxiom};
use lrcmat::{GroundSubset, Matroid};

fn set(n: usize, v: &[usize]) -> GroundSubset {
    GroundSubset::from_elements(n, v.iter().copied()).unwrap()
}

#[test]
fn overlapping_triple_parameters() {
    let m = Matroid::from_matrix(fixtures::overlapping_triple_matrix()).unwrap();
    assert_eq!((m.n(), m.full_rank()), (12, 6));
    assert_eq!(lrc::min_distance(&m).unwrap(), 3);
    assert_eq!(lrc::min_distance_definitional(&m).unwrap(), 3);

    let a = lrc::has_locality(&m, 3, 3).unwrap().expect("(3,3)-locality");
    assert!(lrc::verify_assignment(&m, &a, 3, 3).unwrap());
    let atoms = vec![set(12, &[0, 1, 2, 6, 9]), set(12, &[2, 3, 4, 7, 10]), set(12, &[0, 4, 5, 8, 11])];
    let mut distinct = a.distinct_sets();
    distinct.sort();
    let mut want = atoms.clone();
    want.sort();
    assert_eq!(distinct, want);

    assert!(lrc::has_locality(&m, 2, 3).unwrap().is_none());
    assert_eq!(lrc::minimal_r(&m, 3).unwrap(), Some(3));
    assert_eq!(singleton_bound(12, 6, 3, 3), 5);
    assert!(!lrc::is_perfect(&m, 3, 3).unwrap());
}

/// The printed GF(5) matrix carries seven extra six-element circuits of rank
/// five on top of the lattice built from its three atoms.
fn matrix_extra_circuits() -> Vec<GroundSubset> {
    [
        [1, 3, 5, 6, 10, 11],
        [1, 3, 5, 7, 9, 11],
        [1, 3, 5, 8, 9, 10],
        [1, 3, 6, 7, 8, 11],
        [1, 5, 6, 7, 8, 10],
        [3, 5, 6, 7, 8, 9],
        [6, 7, 8, 9, 10, 11],
    ]
    .iter()
    .map(|v| set(12, v))
    .collect()
}

#[test]
fn overlapping_triple_backings_agree() {
    let by_lattice = matroid_from_lattice(fixtures::overlapping_triple_lattice()).unwrap();
    let sys = fixtures::overlapping_triple_system();
    let by_system = lrcmat::construct::general_construction(&sys).unwrap();
    let by_gammoid = Matroid::from_gammoid(build_graph(&sys).unwrap());
    assert_eq!(by_lattice.first_rank_mismatch(&by_system).unwrap(), None);
    assert_eq!(by_lattice.first_rank_mismatch(&by_gammoid).unwrap(), None);
    assert_eq!(by_lattice.cyclic_flats_exhaustive().unwrap(), fixtures::overlapping_triple_lattice());
}

#[test]
fn overlapping_triple_matrix_has_extra_circuit_hyperplanes() {
    let by_matrix = Matroid::from_matrix(fixtures::overlapping_triple_matrix()).unwrap();
    let z = by_matrix.cyclic_flats_exhaustive().unwrap();
    let extra = matrix_extra_circuits();
    assert_eq!(z.len(), 8 + extra.len());
    for m in fixtures::overlapping_triple_lattice().members() {
        assert_eq!(z.rank_of(&m.set), Some(m.rank));
    }
    for c in &extra {
        assert_eq!(z.rank_of(c), Some(5));
        assert!(by_matrix.circuits().unwrap().contains(c));
    }
    // lattice ranks from the matrix's own cyclic flats match the matrix
    let again = matroid_from_lattice(z).unwrap();
    assert_eq!(by_matrix.first_rank_mismatch(&again).unwrap(), None);
    let by_lattice = matroid_from_lattice(fixtures::overlapping_triple_lattice()).unwrap();
    assert!(by_matrix.first_rank_mismatch(&by_lattice).unwrap().is_some());
}

#[test]
fn overlapping_triple_lattice_shape() {
    let z = fixtures::overlapping_triple_lattice();
    assert_eq!(z.len(), 8);
    assert!(z.validate().is_valid());
    let atoms = z.atoms();
    assert_eq!(atoms.len(), 3);
    for a in &atoms {
        assert_eq!(z.rank_of(a), Some(3));
    }
    let coatoms = z.coatoms();
    assert_eq!(coatoms.len(), 3);
    for c in &coatoms {
        assert_eq!(z.rank_of(c), Some(5));
        assert!(atoms.iter().filter(|a| a.is_subset_of(c)).count() == 2);
    }
}

#[test]
fn raising_one_atom_rank_breaks_submodularity() {
    let z = fixtures::overlapping_triple_lattice();
    let atom = z.atoms()[0];
    let members = z.members().iter().map(|m| (m.set, if m.set == atom { 4 } else { m.rank })).collect();
    let bad = lrcmat::zlattice::CyclicFlatLattice::new(12, members).unwrap();
    let report = bad.validate();
    assert!(!report.is_valid());
    assert!(report.violations.iter().all(|v| v.axiom == LatticeAxiom::Z3));
    // only the two coatoms above the raised atom clash
    assert_eq!(report.violations.len(), 1);
    let above: Vec<GroundSubset> = z.coatoms().into_iter().filter(|c| atom.is_subset_of(c)).collect();
    for c in &above {
        assert!(report.violations[0].witnesses.contains(c));
    }
    assert!(matroid_from_lattice(bad).is_err());
}

#[test]
fn two_paths_graph_construction() {
    let g = fixtures::two_paths_graph();
    let (k, r, delta) = fixtures::TWO_PATHS_KRD;
    let sys = graph_set_system(&g, k, r, delta).unwrap();
    assert_eq!(sys, fixtures::two_paths_system());
    let p = graph_parameters(&g, k, r, delta).unwrap();
    assert_eq!((p.n, p.k, p.d, p.r, p.delta), (27, 14, 11, 4, 2));
    assert_eq!(singleton_bound(27, 14, 4, 2), 11);

    let m = lrcmat::construct::graph_construction(&g, k, r, delta).unwrap();
    assert_eq!(lrc::min_distance(&m).unwrap(), 11);
    let a = lrc::has_locality(&m, 4, 2).unwrap().expect("(4,2)-locality");
    assert!(lrc::is_perfect(&m, 4, 2).unwrap());
    let report = lrc::check_structure(&m, &a, 4, 2).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures());
}

#[test]
fn theta_graph_construction() {
    let g = fixtures::theta_graph();
    let (k, r, delta) = fixtures::THETA_KRD;
    let p = graph_parameters(&g, k, r, delta).unwrap();
    assert_eq!((p.n, p.k, p.d, p.r, p.delta), (122, 19, 96, 9, 5));
    assert_eq!(singleton_bound(122, 19, 9, 5), 96);
    let m = lrcmat::construct::graph_construction(&g, k, r, delta).unwrap();
    assert_eq!(m.n(), 122);
    assert_eq!(lrc::min_distance(&m).unwrap(), 96);
    assert_eq!(lrc::minimal_r(&m, 5).unwrap(), Some(9));
    let a = lrc::has_locality(&m, 9, 5).unwrap().unwrap();
    let report = lrc::check_structure(&m, &a, 9, 5).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures());
}

#[test]
fn generators_reproduce_fixture_graphs() {
    assert_eq!(paths_graph_case_iii(27, 14, 4, 2).unwrap(), fixtures::two_paths_graph());
    let g = theta_graph(19, 9, 5, 21, 11).unwrap();
    assert_eq!(g, fixtures::theta_graph());
}

#[test]
fn decisions_on_known_parameters() {
    let v = dmax_decide(27, 14, 4, 2).unwrap();
    assert_eq!(v.case, CaseTag::IiiYes);
    assert_eq!((v.d_upper, v.d_lower), (11, 11));

    let v = dmax_decide(122, 19, 9, 5).unwrap();
    assert_eq!((v.params.a, v.params.b), (8, 8));
    assert_eq!(v.case, CaseTag::I);
    assert_eq!(v.witness_d, 96);

    let v = dmax_decide(12, 6, 3, 3).unwrap();
    assert_eq!(v.case, CaseTag::NonexistI);
    assert_eq!((v.bound, v.d_upper, v.d_lower), (5, 4, 3));
    assert_ne!(v.lower_source, LowerBoundSource::Perfect);

    let v = dmax_decide(15, 8, 3, 2).unwrap();
    assert_eq!(v.case, CaseTag::I);
    assert_eq!(v.witness_d, 6);

    let v = dmax_decide(22, 7, 4, 2).unwrap();
    assert_eq!(v.case, CaseTag::VYes);
    assert_eq!(v.witness_d, 15);
    assert_eq!(v.witness_d, v.bound);
}

#[test]
fn gammoid_matches_fixture_systems() {
    for sys in [fixtures::overlapping_triple_system(), fixtures::disjoint_blocks_system()] {
        let rep = equivalence_check(&sys, 0, 1).unwrap();
        assert!(rep.exhaustive && rep.agrees(), "{rep:?}");
    }
    let rep = equivalence_check(&fixtures::two_paths_system(), 4000, 7).unwrap();
    assert!(!rep.exhaustive && rep.agrees(), "{rep:?}");
}

#[test]
fn disjoint_blocks_parameters() {
    let sys = fixtures::disjoint_blocks_system();
    let m = lrcmat::construct::general_construction(&sys).unwrap();
    assert_eq!(lrc::min_distance(&m).unwrap(), lrc::min_distance_definitional(&m).unwrap());
    assert_eq!(lrc::min_distance(&m).unwrap(), 3);
    assert_eq!(lrc::minimal_r(&m, 2).unwrap(), Some(3));
}
