use num_complex::Complex64;

use super::BetheRoots;
use crate::error::{Error, Result};
use crate::fock::{creation_operator, FockSector, ModeId, Well};
use crate::sparse::{max_norm, ComplexOperator};
use crate::yangbaxter::IntegrableParams;

/// The creation entry `C(v)` of the two-well monodromy, mapping `source`
/// (k atoms) into `target` (k + 1 atoms):
///
/// `C(v) = (Σ_j s_j a_j†) [(v − W) + η Σ_j N_bj] + (ζ/η) Σ_j s_j b_j†`.
///
/// The second term is `D_a C_b` of the Lax product, so it carries the `s`
/// coefficients of the b-well Lax operator.
pub fn pi_c_operator(
    v: Complex64,
    ip: &IntegrableParams,
    source: &FockSector,
    target: &FockSector,
) -> Result<ComplexOperator> {
    ip.validate()?;
    if source.n_levels() != ip.n_levels {
        return Err(Error::LevelMismatch {
            params: ip.n_levels,
            sector: source.n_levels(),
        });
    }
    let w = ip.w_sum();
    let shift: Vec<Complex64> = source
        .basis()
        .iter()
        .map(|st| {
            let nb: u32 = st.well(Well::B).iter().sum();
            v - w + ip.eta * f64::from(nb)
        })
        .collect();
    let shift = ComplexOperator::from_diagonal(&shift);
    let mut a_part = ComplexOperator::zeros(target.dim(), source.dim());
    let mut b_part = ComplexOperator::zeros(target.dim(), source.dim());
    for j in 0..ip.n_levels {
        let s = Complex64::from(ip.s[j]);
        a_part = a_part.add_scaled(&creation_operator(source, target, ModeId::a(j + 1))?.to_complex(), s);
        b_part = b_part.add_scaled(&creation_operator(source, target, ModeId::b(j + 1))?.to_complex(), s);
    }
    Ok(a_part
        .matmul(&shift)
        .add_scaled(&b_part, Complex64::from(ip.zeta() / ip.eta)))
}

/// Unnormalized Bethe state `Π_i C(v_i) |0⟩` in the last sector of `sectors`,
/// which must hold `0, 1, ..., N` atoms in order with `N` the number of roots.
pub fn bethe_vector(roots: &BetheRoots, ip: &IntegrableParams, sectors: &[FockSector]) -> Result<Vec<Complex64>> {
    if sectors.len() != roots.len() + 1 {
        return Err(Error::Internal(format!(
            "{} roots need a chain of {} sectors, got {}",
            roots.len(),
            roots.len() + 1,
            sectors.len()
        )));
    }
    for (k, s) in sectors.iter().enumerate() {
        if s.n_atoms() != k || s.n_levels() != ip.n_levels {
            return Err(Error::Internal(format!(
                "sector chain entry {k} holds N = {} with {} levels",
                s.n_atoms(),
                s.n_levels()
            )));
        }
    }
    let mut state = vec![Complex64::new(1.0, 0.0)];
    for (k, &v) in roots.as_slice().iter().enumerate() {
        state = pi_c_operator(v, ip, &sectors[k], &sectors[k + 1])?.apply(&state);
    }
    let amp = max_norm(&state);
    if amp < 1e-14 {
        return Err(Error::VanishingBetheVector(amp));
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{enumerate_sector, sector_chain};
    use crate::sparse::eigen_residual;
    use crate::yangbaxter::{hamiltonian_from_transfer, transfer_matrix};

    #[test]
    fn single_root_vector_by_hand() {
        let ip = IntegrableParams::default_for(2);
        let r5 = 5f64.sqrt();
        let roots = BetheRoots::new(vec![Complex64::new(r5, 0.0)]).unwrap();
        let chain = sector_chain(2, 1).unwrap();
        let x = bethe_vector(&roots, &ip, &chain).unwrap();
        let s1 = &chain[1];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // (√5 − 2)|a_sym> + |b_sym>
        let expect = [(r5 - 2.0) * h, (r5 - 2.0) * h, h, h];
        for (occ, e) in [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]].iter().zip(expect) {
            let i = s1.index_of_occupations(occ).unwrap();
            assert!((x[i] - Complex64::new(e, 0.0)).norm() < 1e-14);
        }
        let ham = hamiltonian_from_transfer(&ip, s1).unwrap().to_complex();
        assert!(eigen_residual(&ham, &x, Complex64::new(1.0 - r5, 0.0)) < 1e-13);
        let t = transfer_matrix(Complex64::new(0.0, 0.0), &ip, s1).unwrap();
        assert!(eigen_residual(&t, &x, Complex64::new(r5 - 3.0, 0.0)) < 1e-13);
    }

    #[test]
    fn empty_roots_give_vacuum() {
        let ip = IntegrableParams::default_for(3);
        let chain = sector_chain(3, 0).unwrap();
        let x = bethe_vector(&BetheRoots::new(vec![]).unwrap(), &ip, &chain).unwrap();
        assert_eq!(x, vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn creation_entries_commute() {
        let mut ip = IntegrableParams::default_for(2);
        ip.s = vec![0.4, 1.1];
        ip.t = vec![0.9, -0.2];
        let chain: Vec<_> = (1..=3).map(|k| enumerate_sector(2, k).unwrap()).collect();
        let (u, v) = (Complex64::new(0.3, 0.2), Complex64::new(-1.1, 0.5));
        let cu_first = pi_c_operator(u, &ip, &chain[1], &chain[2])
            .unwrap()
            .matmul(&pi_c_operator(v, &ip, &chain[0], &chain[1]).unwrap());
        let cv_first = pi_c_operator(v, &ip, &chain[1], &chain[2])
            .unwrap()
            .matmul(&pi_c_operator(u, &ip, &chain[0], &chain[1]).unwrap());
        assert!(cu_first.max_abs_diff(&cv_first) < 1e-13);
    }

    #[test]
    fn chain_shape_is_checked() {
        let ip = IntegrableParams::default_for(2);
        let roots = BetheRoots::new(vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!(bethe_vector(&roots, &ip, &sector_chain(2, 2).unwrap()).is_err());
    }
}
