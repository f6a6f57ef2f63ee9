//! Dense univariate polynomials in λ over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Coefficients indexed by power of λ. The highest stored coefficient is
/// nonzero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial λ.
    pub fn lambda() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c λ^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `λ - r`.
    pub fn linear_root(r: GaussianRational) -> Self {
        Self::new(vec![-r, GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &GaussianRational::from_int(k as i64)).collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lc_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Consistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Exact evaluation at a Gaussian rational point (Horner).
    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussianRational::to_complex64).collect()
    }

    /// Formats with the given variable symbol, in the matrix-file grammar.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

/// Horner evaluation of float coefficients (lowest power first).
pub fn eval_complex(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c)
}

/// Monic greatest common divisor by the Euclidean remainder sequence, each
/// remainder normalized to monic.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("gcd of two zero polynomials".into()));
    }
    let (mut x, mut y) = if a.deg0() >= b.deg0() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = y;
        y = r.monic();
    }
    Ok(x)
}

/// Square-free decomposition (Yun). Returns monic, square-free, pairwise
/// coprime factors with multiplicities; their product equals `p` up to the
/// leading coefficient. Constant input yields an empty list.
pub fn poly_squarefree_factor(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::Domain("square-free factorization of zero".into()));
    }
    let f = p.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        let b_next = b.exact_div(&a)?;
        let c_next = d.exact_div(&a)?;
        d = &c_next - &b_next.derivative();
        if !a.is_constant() {
            out.push((a, mult));
        }
        b = b_next;
        mult += 1;
    }
    Ok(out)
}

impl Zero for Poly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative_real = c.is_real() && c.re < num_rational::BigRational::zero();
            let pure_neg_imag = c.re.is_zero() && c.im < num_rational::BigRational::zero();
            let (sign, mag) = if negative_real || pure_neg_imag { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let var_part = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var_part)?;
            } else {
                write!(f, "{mag}*{var_part}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("l").fmt(f)
    }
}
