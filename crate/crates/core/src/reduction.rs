//! Isospectral reductions over index sets, sequential reductions, and the
//! spectral bookkeeping that relates a reduction to the original matrix.

use crate::error::{Error, Result};
use crate::field::{check_degree, DEFAULT_DEGREE_CAP};
use crate::wmatrix::{
    inverse, inverse_elimination, inverse_spectrum, spectral_inverse_capped, spectrum, IndexSet, RatMatrix,
    RootMultiset, WMatrix,
};

fn check_partition(n: usize, b: &IndexSet) -> Result<IndexSet> {
    b.check_bounds(n)?;
    if b.is_empty() {
        return Err(Error::Domain("cannot reduce over the empty set".into()));
    }
    if b.len() == n {
        return Err(Error::Domain(format!("{b} is all of {{1,…,{n}}}; nothing to reduce")));
    }
    Ok(b.complement(n))
}

fn check_matrix_degree(m: &RatMatrix, cap: usize) -> Result<()> {
    m.entries().iter().try_for_each(|w| check_degree(w, cap))
}

/// `M_BB − M_BI (M_II − λI)^{-1} M_IB`, the reduction of `M` over `B`.
pub fn isospectral_reduce(m: &WMatrix, b: &IndexSet) -> Result<WMatrix> {
    isospectral_reduce_capped(m, b, DEFAULT_DEGREE_CAP)
}

pub fn isospectral_reduce_capped(m: &WMatrix, b: &IndexSet, cap: usize) -> Result<WMatrix> {
    let i = check_partition(m.dim(), b)?;
    let m_ii = m.submatrix(&i, &i)?.minus_lambda();
    let inv = inverse(&m_ii, cap).map_err(|e| match e {
        Error::Singular(_) => {
            Error::Singular(format!("M_II − λI is singular for I = {i}; the reduction over {b} does not exist"))
        }
        other => other,
    })?;
    let coupling = &(&m.submatrix(b, &i)? * &inv) * &m.submatrix(&i, b)?;
    let r = &m.submatrix(b, b)? - &coupling;
    check_matrix_degree(&r, cap)?;
    WMatrix::from_rat_matrix(r)
}

/// Reduces over each set of `chain` in turn. Every set is given in the
/// original 1-based labelling and must be strictly contained in its
/// predecessor.
pub fn sequential_reduce(m: &WMatrix, chain: &[IndexSet]) -> Result<WMatrix> {
    sequential_reduce_capped(m, chain, DEFAULT_DEGREE_CAP)
}

pub fn sequential_reduce_capped(m: &WMatrix, chain: &[IndexSet], cap: usize) -> Result<WMatrix> {
    if chain.is_empty() {
        return Err(Error::Domain("empty reduction chain".into()));
    }
    let mut current = m.clone();
    let mut labels = IndexSet::full(m.dim());
    for b in chain {
        if b.is_empty() || !b.is_subset_of(&labels) || b.len() == labels.len() {
            return Err(Error::Domain(format!(
                "chain is not strictly nested: {b} is not a proper nonempty subset of {labels}"
            )));
        }
        // Positions of the surviving labels within the current matrix.
        let local =
            IndexSet::new(labels.as_slice().iter().enumerate().filter(|(_, l)| b.contains(**l)).map(|(k, _)| k + 1))?;
        current = isospectral_reduce_capped(&current, &local, cap)?;
        labels = b.clone();
    }
    Ok(current)
}

/// Right-hand sides of the spectral relations for a reduction over `B`:
/// `(σ(M) ∪ σ⁻¹(M_II)) − (σ(M_II) ∪ σ⁻¹(M))` for the spectrum and the
/// mirrored expression for the inverse spectrum.
pub fn predicted_reduced_spectra(m: &WMatrix, b: &IndexSet) -> Result<(RootMultiset, RootMultiset)> {
    let i = check_partition(m.dim(), b)?;
    let m_ii = m.principal(&i)?;
    let (s_m, si_m) = (spectrum(m)?, inverse_spectrum(m)?);
    let (s_ii, si_ii) = (spectrum(&m_ii)?, inverse_spectrum(&m_ii)?);
    let gained = s_m.union(&si_ii);
    let lost = s_ii.union(&si_m);
    Ok((gained.difference(&lost), lost.difference(&gained)))
}

/// Reduction of the spectral inverse `S(M)` over `B`.
///
/// Computed twice: by reducing `S(M)` directly, and as the Schur complement
/// `G/G_II + λI` of the resolvent `G = (M − λI)^{-1}`. The two must agree
/// exactly.
pub fn reduce_spectral_inverse(m: &WMatrix, b: &IndexSet) -> Result<WMatrix> {
    reduce_spectral_inverse_capped(m, b, DEFAULT_DEGREE_CAP)
}

pub fn reduce_spectral_inverse_capped(m: &WMatrix, b: &IndexSet, cap: usize) -> Result<WMatrix> {
    let i = check_partition(m.dim(), b)?;
    let direct = isospectral_reduce_capped(&spectral_inverse_capped(m, cap)?, b, cap)?;

    let (bz, iz) = (b.to_zero_based(), i.to_zero_based());
    let g = inverse_elimination(&m.as_rat_matrix().minus_lambda(), cap)?;
    let g_ii_inv = inverse_elimination(&g.block(&iz, &iz), cap)?;
    let schur = &g.block(&bz, &bz) - &(&(&g.block(&bz, &iz) * &g_ii_inv) * &g.block(&iz, &bz));
    let via_schur = WMatrix::from_rat_matrix(schur.plus_lambda())?;

    if direct != via_schur {
        return Err(Error::Consistency(format!(
            "reduction of S(M) over {b} differs between direct and Schur-complement routes"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Poly, RatFunc};
    use crate::wmatrix::ROOT_MATCH_TOL;
    use num_complex::Complex64;
    use num_traits::{One, Zero};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::reduce(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.iter().copied()).unwrap()
    }

    fn six() -> WMatrix {
        WMatrix::from_int_rows(&[
            &[0, 0, 1, 1, 0, 0],
            &[0, 1, 0, 0, 1, 1],
            &[1, 0, 1, 0, 0, 0],
            &[0, 1, 0, 1, 0, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
        ])
        .unwrap()
    }

    fn four() -> WMatrix {
        WMatrix::from_int_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 1, 1, 1], &[1, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn six_by_six_reduction() {
        let r = isospectral_reduce(&six(), &set(&[1, 2])).unwrap();
        let want = WMatrix::from_rows(vec![
            vec![rf(&[1], &[-1, 1]), rf(&[1], &[-1, 1])],
            vec![rf(&[1], &[0, 1]), rf(&[1, 1], &[0, 1])],
        ])
        .unwrap();
        assert_eq!(r, want);
        let (s, si) = predicted_reduced_spectra(&six(), &set(&[1, 2])).unwrap();
        let expect = RootMultiset::from_roots([Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!(s.approx_eq(&expect, ROOT_MATCH_TOL));
        assert!(si.is_empty());
    }

    #[test]
    fn trivial_reductions() {
        let d = WMatrix::from_int_rows(&[&[1, 0], &[0, 2]]).unwrap();
        assert_eq!(isospectral_reduce(&d, &set(&[1])).unwrap(), WMatrix::from_int_rows(&[&[1]]).unwrap());
        let m = WMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        let r = isospectral_reduce(&m, &set(&[1])).unwrap();
        assert_eq!(r.get(0, 0), &rf(&[1], &[0, 1]));
        assert!(matches!(isospectral_reduce(&d, &set(&[1, 2])), Err(Error::Domain(_))));
        assert!(matches!(isospectral_reduce(&d, &set(&[])), Err(Error::Domain(_))));
    }

    #[test]
    fn singular_interior_is_rejected() {
        let m = WMatrix::from_rows(vec![vec![RatFunc::one(), RatFunc::one()], vec![RatFunc::one(), RatFunc::lambda()]])
            .unwrap();
        assert!(matches!(isospectral_reduce(&m, &set(&[1])), Err(Error::Singular(_))));
    }

    #[test]
    fn chains_agree() {
        let want_entry = |n: &[i64]| rf(n, &[0, -2, 1]);
        let want = WMatrix::from_rows(vec![
            vec![want_entry(&[1, -2, 1]), want_entry(&[-1, 1])],
            vec![want_entry(&[-1, 1]), want_entry(&[1, -2, 1])],
        ])
        .unwrap();
        let a = sequential_reduce(&four(), &[set(&[1, 2, 3]), set(&[1, 2])]).unwrap();
        let b = sequential_reduce(&four(), &[set(&[1, 2, 4]), set(&[1, 2])]).unwrap();
        assert_eq!(a, want);
        assert_eq!(b, want);
        assert_eq!(isospectral_reduce(&four(), &set(&[1, 2])).unwrap(), want);
        assert!(sequential_reduce(&four(), &[set(&[1, 2]), set(&[1, 3])]).is_err());
        assert!(sequential_reduce(&four(), &[set(&[1, 2]), set(&[1, 2])]).is_err());
    }

    #[test]
    fn intermediate_three_by_three() {
        let r = isospectral_reduce(&four(), &set(&[1, 2, 3])).unwrap();
        let p = rf(&[1], &[-1, 1]);
        let want = WMatrix::from_rows(vec![
            vec![RatFunc::one(), RatFunc::zero(), RatFunc::one()],
            vec![p.clone(), RatFunc::one(), p.clone()],
            vec![p, RatFunc::one(), rf(&[0, 1], &[-1, 1])],
        ])
        .unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn spectral_inverse_reduction_decoupled() {
        let m = WMatrix::from_int_rows(&[&[3, 0], &[0, 5]]).unwrap();
        let r = reduce_spectral_inverse(&m, &set(&[1])).unwrap();
        // 1/(3 − λ) + λ
        assert_eq!(r.get(0, 0), &(&rf(&[1], &[3, -1]) + &RatFunc::lambda()));
    }
}
