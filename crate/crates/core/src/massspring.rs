//! Mass–spring networks on a line. The spectral parameter is `λ = ω²`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{GaussianRational, RatFunc};
use crate::reduction::isospectral_reduce;
use crate::wmatrix::{shifted_matvec, IndexSet, WMatrix};

#[derive(Clone, PartialEq, Debug)]
pub struct Spring {
    /// 1-based endpoints with `i < j`.
    pub i: usize,
    pub j: usize,
    pub stiffness: BigRational,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpringNetwork {
    n: usize,
    springs: Vec<Spring>,
    masses: Vec<BigRational>,
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl SpringNetwork {
    /// `n` unit masses and no springs.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a network needs at least one node".into()));
        }
        Ok(Self { n, springs: Vec::new(), masses: vec![BigRational::one(); n] })
    }

    /// Path `1 – 2 – … – n` with unit springs.
    pub fn unit_path(n: usize) -> Result<Self> {
        Self::path(&vec![BigRational::one(); n.saturating_sub(1)])
    }

    /// Path whose `k`-th spring joins nodes `k` and `k+1`.
    pub fn path(stiffnesses: &[BigRational]) -> Result<Self> {
        let mut net = Self::new(stiffnesses.len() + 1)?;
        for (k, s) in stiffnesses.iter().enumerate() {
            net.add_spring(k + 1, k + 2, s.clone())?;
        }
        Ok(net)
    }

    pub fn path_from_ints(stiffnesses: &[i64]) -> Result<Self> {
        Self::path(&stiffnesses.iter().map(|&k| int(k)).collect::<Vec<_>>())
    }

    pub fn add_spring(&mut self, i: usize, j: usize, stiffness: BigRational) -> Result<()> {
        let (i, j) = (i.min(j), i.max(j));
        if i == 0 || j > self.n || i == j {
            return Err(Error::Domain(format!("invalid spring ({i}, {j}) in a {}-node network", self.n)));
        }
        if !stiffness.is_positive() {
            return Err(Error::Domain(format!("spring ({i}, {j}) has non-positive stiffness {stiffness}")));
        }
        self.springs.push(Spring { i, j, stiffness });
        Ok(())
    }

    pub fn set_mass(&mut self, node: usize, mass: BigRational) -> Result<()> {
        if node == 0 || node > self.n {
            return Err(Error::Domain(format!("node {node} out of range")));
        }
        if !mass.is_positive() {
            return Err(Error::Domain(format!("node {node} has non-positive mass {mass}")));
        }
        self.masses[node - 1] = mass;
        Ok(())
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn springs(&self) -> &[Spring] {
        &self.springs
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.masses
    }

    pub fn has_unit_masses(&self) -> bool {
        self.masses.iter().all(One::is_one)
    }
}

/// `K_ii` is the total stiffness at node `i`; `K_ij = −k` for each spring.
pub fn stiffness_matrix(net: &SpringNetwork) -> WMatrix {
    let n = net.n;
    let mut k = vec![vec![BigRational::zero(); n]; n];
    for s in &net.springs {
        let (a, b) = (s.i - 1, s.j - 1);
        k[a][a] += &s.stiffness;
        k[b][b] += &s.stiffness;
        k[a][b] -= &s.stiffness;
        k[b][a] -= &s.stiffness;
    }
    WMatrix::from_fn(n, |i, j| RatFunc::constant(GaussianRational::real(k[i][j].clone())))
}

/// Reduced stiffness `R_λ(K; B)` with `λ = ω²`, mapping boundary
/// displacements to boundary forces. `B` equal to every node returns `K`.
pub fn frequency_response(net: &SpringNetwork, b: &IndexSet) -> Result<WMatrix> {
    if !net.has_unit_masses() {
        return Err(Error::Domain(
            "non-unit masses are not supported: the reduction assumes the identity mass matrix".into(),
        ));
    }
    b.check_bounds(net.n)?;
    let k = stiffness_matrix(net);
    if b.len() == net.n {
        return Ok(k);
    }
    isospectral_reduce(&k, b)
}

/// Boundary forces `(R_{ω²}(K;B) − ω²I) u_B`. A resonance frequency gives an
/// unbounded force and is reported as an error.
pub fn boundary_force(net: &SpringNetwork, b: &IndexSet, omega: f64, u_b: &[Complex64]) -> Result<Vec<Complex64>> {
    let r = frequency_response(net, b)?;
    let lambda = Complex64::new(omega * omega, 0.0);
    shifted_matvec(&r, u_b, lambda).map_err(|e| match e {
        Error::Pole { at, .. } => Error::Resonance { at },
        other => other,
    })
}
