mod common;

use common::{c, random_ip, random_point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twowell::fock::{hopping_operator, truncated_ladder};
use twowell::yangbaxter::{
    abcd_residuals, conserved_charges, hamiltonian_from_transfer, identify_parameters, lax_operator,
    monodromy_trace, rll_residual, rll_residual_of, transfer_commutator_residual, transfer_matrix,
    validate_model, ybe_residual,
};
use twowell::{build_hamiltonian, enumerate_sector, ComplexOperator, Complex64, ModeId};

#[test]
fn yang_baxter_holds_for_random_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut checked = 0;
    while checked < 100 {
        let (u, v) = (random_point(&mut rng, 5.0), random_point(&mut rng, 5.0));
        let eta = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let Ok(r) = ybe_residual(u, v, eta) else { continue };
        assert!(r <= 1e-12, "u={u} v={v} eta={eta}: {r:e}");
        checked += 1;
    }
}

#[test]
fn rll_holds_for_one_two_three_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=3 {
        for _ in 0..5 {
            let ip = random_ip(&mut rng, n, false);
            let (u, v) = (random_point(&mut rng, 2.0), random_point(&mut rng, 2.0));
            let r = rll_residual(u, v, &ip, 4).unwrap();
            assert!(r <= 1e-12, "n={n}: {r:e}");
        }
    }
}

#[test]
fn broken_zeta_constraint_breaks_rll() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=3 {
        let ip = random_ip(&mut rng, n, false);
        let ladders = truncated_ladder(n, 4);
        let (u, v) = (c(0.9, 0.0), c(-0.4, 0.0));
        let bad = |z: Complex64| {
            let mut l = lax_operator(z, &ip, &ladders).unwrap();
            let dim = ladders.dim();
            l.d = ComplexOperator::identity(dim).scale(((ip.zeta() + 0.1) / ip.eta).into());
            l
        };
        let r = rll_residual_of(u, v, ip.eta, &bad(u), &bad(v), &ladders).unwrap();
        assert!(r >= 1e-3, "n={n}: {r:e}");
    }
}

#[test]
fn abcd_relations_below_cutoff() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=3 {
        let ip = random_ip(&mut rng, n, false);
        let ladders = truncated_ladder(n, 4);
        let res = abcd_residuals(c(0.3, 0.2), c(-1.1, 0.5), &ip, &ladders).unwrap();
        assert!(res.max() <= 1e-12, "n={n}: {res:?}");
    }
}

#[test]
fn transfer_matrices_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ip = random_ip(&mut rng, 2, false);
    for atoms in 1..=4 {
        let sector = enumerate_sector(2, atoms).unwrap();
        for _ in 0..5 {
            let (u, v) = (random_point(&mut rng, 3.0), random_point(&mut rng, 3.0));
            let r = transfer_commutator_residual(u, v, &ip, &sector).unwrap();
            assert!(r <= 1e-10, "N={atoms}: {r:e}");
        }
    }
}

/// `t(u)` is `u² + uηN + C0` and `N` is a scalar on a sector, so any
/// N-conserving change of `C0` still gives a commuting family. Breaking the
/// rank-one hopping structure is therefore invisible to `[t(u), t(v)]`.
#[test]
fn hopping_perturbation_keeps_family_commuting() {
    let ip = twowell::IntegrableParams::default_for(2);
    let sector = enumerate_sector(2, 3).unwrap();
    let hop = hopping_operator(&sector, ModeId::a(1), ModeId::b(2)).unwrap();
    let kick = hop.add(&hop.transpose()).to_complex().scale((0.1 * ip.s[0] * ip.t[1]).into());
    let (u, v) = (c(0.7, 0.2), c(-1.3, 0.4));
    let tu = transfer_matrix(u, &ip, &sector).unwrap().add(&kick);
    let tv = transfer_matrix(v, &ip, &sector).unwrap().add(&kick);
    let r = tu.commutator(&tv).max_abs() / (tu.max_abs() * tv.max_abs()).max(1.0);
    assert!(r <= 1e-12, "{r:e}");
    // the perturbation is still detected by the Hamiltonian relation
    let h = hamiltonian_from_transfer(&ip, &sector).unwrap().to_complex().sub(&kick);
    let mp = identify_parameters(&ip).unwrap();
    let oracle = build_hamiltonian(&mp, &sector).unwrap().to_complex();
    assert!(h.max_abs_diff(&oracle) > 1e-2);
}

#[test]
fn charges_reconstruct_transfer_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 1..=3 {
        let ip = random_ip(&mut rng, n, false);
        let sector = enumerate_sector(n, 3).unwrap();
        let ch = conserved_charges(&ip, &sector).unwrap();
        assert!(ch.reconstruction <= 1e-12);
        assert!(ch.commutators <= 1e-12);
        let dim = sector.dim();
        assert_eq!(ch.c2, ComplexOperator::identity(dim));
        assert_eq!(ch.c1, ComplexOperator::identity(dim).scale((3.0 * ip.eta).into()));
    }
}

#[test]
fn hamiltonian_relation_matches_identified_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        for parallel in [true, false] {
            let mut ip = random_ip(&mut rng, n, parallel);
            ip.u = random_point(&mut rng, 1.0);
            let mp = identify_parameters(&ip).unwrap();
            for atoms in 0..=4 {
                let sector = enumerate_sector(n, atoms).unwrap();
                let h = hamiltonian_from_transfer(&ip, &sector).unwrap();
                let oracle = build_hamiltonian(&mp, &sector).unwrap();
                let d = h.max_abs_diff(&oracle);
                assert!(d <= 1e-12, "n={n} N={atoms}: {d:e}");
            }
        }
    }
}

#[test]
fn identification_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=3 {
        let ip = random_ip(&mut rng, n, false);
        let mp = identify_parameters(&ip).unwrap();
        let rep = validate_model(&mp);
        assert!(rep.integrable, "{:?}", rep.violations);
        let d = rep.derived.unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0);
        assert!(close(d.alpha, ip.alpha));
        assert!(close(d.eta * d.eta, ip.eta * ip.eta));
        assert!(close(d.eta * d.w_sum(), ip.eta * ip.w_sum()));
        assert!(close(d.zeta(), ip.zeta()));
        for j in 0..n {
            for k in 0..n {
                assert!(close(d.s[j] * d.t[k], ip.s[j] * ip.t[k]));
            }
        }
        // the recovered data generates the same Hamiltonian
        let sector = enumerate_sector(n, 3).unwrap();
        let h1 = build_hamiltonian(&mp, &sector).unwrap();
        let h2 = build_hamiltonian(&identify_parameters(&d).unwrap(), &sector).unwrap();
        assert!(h1.max_abs_diff(&h2) <= 1e-10);
    }
}

#[test]
fn printed_transfer_matrix_is_the_monodromy_trace_iff_parallel() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let sector = enumerate_sector(2, 2).unwrap();
    let u = c(0.4, -0.3);
    let par = random_ip(&mut rng, 2, true);
    let d = transfer_matrix(u, &par, &sector)
        .unwrap()
        .max_abs_diff(&monodromy_trace(u, &par, &sector).unwrap());
    assert!(d <= 1e-12);
    let gen = random_ip(&mut rng, 2, false);
    let d = transfer_matrix(u, &gen, &sector)
        .unwrap()
        .max_abs_diff(&monodromy_trace(u, &gen, &sector).unwrap());
    assert!(d > 1e-3);
}

#[test]
fn monodromy_traces_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let ip = random_ip(&mut rng, 3, false);
    let sector = enumerate_sector(3, 3).unwrap();
    let tu = monodromy_trace(c(0.3, 0.8), &ip, &sector).unwrap();
    let tv = monodromy_trace(c(-1.7, 0.1), &ip, &sector).unwrap();
    assert!(tu.commutator(&tv).max_abs() <= 1e-10 * tu.max_abs() * tv.max_abs());
}
