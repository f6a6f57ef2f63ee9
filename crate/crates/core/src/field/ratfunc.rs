//! Reduced rational functions `p(λ)/q(λ)`.
//!
//! A `RatFunc` always has a monic denominator sharing no common factor with
//! its numerator, and zero is stored as `0/1`. Structural equality is
//! therefore mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{poly_gcd, GaussianRational, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Cancels the gcd and normalizes the denominator to monic.
    pub fn reduce(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den)?;
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g)?, den.exact_div(&g)?)
            }
        };
        let lc_inv = den.leading().unwrap().inv().unwrap();
        if lc_inv.is_one() {
            Ok(Self { num, den })
        } else {
            Ok(Self { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
        }
    }

    /// Internal constructor for operands whose reduction cannot fail.
    fn reduced(num: Poly, den: Poly) -> Self {
        Self::reduce(num, den).expect("nonzero denominator")
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// The rational function λ.
    pub fn lambda() -> Self {
        Self::from_poly(Poly::lambda())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// True for λ-free values.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `π(w) = deg(num) − deg(den)`, with `π(0) = 0`.
    pub fn pi_degree(&self) -> i64 {
        if self.num.is_zero() {
            return 0;
        }
        self.num.deg0() as i64 - self.den.deg0() as i64
    }

    /// Membership in the subset with `π(w) ≤ 0`.
    pub fn is_w_pi(&self) -> bool {
        self.pi_degree() <= 0
    }

    /// Largest of the numerator and denominator degrees.
    pub fn max_degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self { num: self.num.pow(exp), den: self.den.pow(exp) }
    }

    /// Exact evaluation. `None` when the denominator vanishes.
    pub fn eval(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    /// Floating-point evaluation; may produce non-finite values at poles.
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        super::eval_complex(&self.num.to_complex(), x) / super::eval_complex(&self.den.to_complex(), x)
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        RatFuncDisplay { w: self, var }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Henrici's sum: only the common part of the denominators can share a
    /// factor with the new numerator.
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den).expect("nonzero denominators");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&self.den * &rhs.num);
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc { num, den: &self.den * &rhs.den };
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&b * &rhs.num);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = poly_gcd(&num, &g).expect("nonzero");
        if h.is_one() {
            return RatFunc { num, den: &self.den * &d };
        }
        RatFunc {
            num: num.exact_div(&h).expect("gcd divides"),
            den: &self.den.exact_div(&h).expect("gcd divides") * &d,
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Cross-cancels each numerator against the other denominator.
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = poly_gcd(n, d).expect("nonzero");
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).expect("gcd divides"), d.exact_div(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFunc { num: &a * &c, den: &b * &d }
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by the zero function.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

struct RatFuncDisplay<'a> {
    w: &'a RatFunc,
    var: &'a str,
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.den.is_one() {
            write!(f, "{}", self.w.num.display_with(self.var))
        } else {
            write!(f, "({})/({})", self.w.num.display_with(self.var), self.w.den.display_with(self.var))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("l").fmt(f)
    }
}
