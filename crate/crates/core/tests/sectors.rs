use proptest::prelude::*;
use twowell::fock::{hopping_operator, number_operator, sector_chain};
use twowell::{dimension, enumerate_sector, ModeId, RealOperator};

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

#[test]
fn dimension_matches_enumeration() {
    for n in 1..=4 {
        for atoms in 0..=6 {
            let sector = enumerate_sector(n, atoms).unwrap();
            assert_eq!(dimension(n, atoms).unwrap(), sector.dim(), "n={n} N={atoms}");
            assert_eq!(
                sector.dim() as u64,
                binomial((2 * n + atoms - 1) as u64, atoms as u64)
            );
        }
    }
}

#[test]
fn closed_forms_for_one_and_two_levels() {
    for atoms in 0..=12usize {
        assert_eq!(dimension(1, atoms).unwrap(), atoms + 1);
        assert_eq!(
            dimension(2, atoms).unwrap(),
            (atoms + 3) * (atoms + 2) * (atoms + 1) / 6
        );
    }
}

#[test]
fn basis_is_strictly_descending_and_complete() {
    let sector = enumerate_sector(3, 4).unwrap();
    for pair in sector.basis().windows(2) {
        assert!(pair[0] > pair[1]);
    }
    for (i, state) in sector.basis().iter().enumerate() {
        assert_eq!(state.total(), 4);
        assert_eq!(sector.index_of(state), Some(i));
    }
}

#[test]
fn chain_has_consecutive_atom_numbers() {
    let chain = sector_chain(2, 3).unwrap();
    assert_eq!(chain.iter().map(|s| s.n_atoms()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
}

fn all_modes(n: usize) -> Vec<ModeId> {
    (1..=n).flat_map(|j| [ModeId::a(j), ModeId::b(j)]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hopping_conserves_total_number(n in 1usize..=3, atoms in 0usize..=4, pick in any::<(usize, usize)>()) {
        let sector = enumerate_sector(n, atoms).unwrap();
        let modes = all_modes(n);
        let create = modes[pick.0 % modes.len()];
        let annihilate = modes[pick.1 % modes.len()];
        prop_assume!(create != annihilate);
        let hop = hopping_operator(&sector, create, annihilate).unwrap();
        let mut total = RealOperator::zeros(sector.dim(), sector.dim());
        for &m in &modes {
            total = total.add(&number_operator(&sector, m).unwrap());
        }
        prop_assert_eq!(hop.commutator(&total).max_abs(), 0.0);
        // x†y shifts N_x by one and N_y by minus one
        let nx = number_operator(&sector, create).unwrap();
        prop_assert!(nx.commutator(&hop).max_abs_diff(&hop) < 1e-13);
    }

    #[test]
    fn hopping_adjoint_is_reverse_hop(n in 1usize..=3, atoms in 0usize..=4) {
        let sector = enumerate_sector(n, atoms).unwrap();
        let fwd = hopping_operator(&sector, ModeId::a(1), ModeId::b(n)).unwrap();
        let back = hopping_operator(&sector, ModeId::b(n), ModeId::a(1)).unwrap();
        prop_assert_eq!(fwd.transpose(), back);
    }
}
