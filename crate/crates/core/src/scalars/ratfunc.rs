//! The coefficient field: rational functions in `q` over the rationals,
//! kept in canonical form (gcd-reduced, monic denominator).

use super::poly::{Poly, Rational};
use crate::error::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Canonicalizes `n / d`: reduce by the gcd and make the denominator monic.
    pub fn normalize(n: Poly, d: Poly) -> Result<RatFunc> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if n.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = n.gcd(&d);
        let (n, _) = n.div_rem(&g);
        let (d, _) = d.div_rem(&g);
        let lc = d.leading_coeff();
        let n = n.scale(&(Rational::one() / &lc));
        let d = d.monic();
        Ok(RatFunc { num: n, den: d })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc {
            num: Poly::from_int(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        RatFunc {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    /// `q^n` for any integer `n`; negative powers land in the denominator.
    pub fn q_pow(n: i64) -> Self {
        if n >= 0 {
            RatFunc::from_poly(Poly::monomial(Rational::one(), n as usize))
        } else {
            RatFunc {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-n) as usize),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(q0) / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let d = &self.den * &rhs.den;
        RatFunc::normalize(n, d).expect("denominators are nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let n = &self.num * &rhs.num;
        let d = &self.den * &rhs.den;
        RatFunc::normalize(n, d).expect("denominators are nonzero")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
