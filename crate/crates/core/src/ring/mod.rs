//! Exact commutative rings.
//!
//! A [`Ring`] is a runtime descriptor (integers, rationals, integers modulo
//! `m`, products and polynomial rings over any of these) and an [`Elem`] is a
//! value tagged with enough of its descriptor to check that two operands
//! live in the same ring. Everything is kept in canonical form, so derived
//! equality is ring equality.
//!
//! The arithmetic operators on `&Elem` panic when the operands come from
//! different rings; use the `checked_*` methods at trust boundaries. All
//! higher-level constructors validate descriptors up front, so internal
//! arithmetic never hits that panic.

mod json;
mod poly;

pub use poly::{Poly, PolyRing};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative ring descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
    IntegersMod(Arc<BigUint>),
    Product(Arc<Ring>, Arc<Ring>),
    Polynomial(Arc<PolyRing>),
}

impl Ring {
    pub fn integers_mod(modulus: impl Into<BigUint>) -> Result<Ring> {
        let modulus = modulus.into();
        if modulus < BigUint::from(2u32) {
            return Err(Error::InvalidRing(format!("modulus {modulus} must be at least 2")));
        }
        Ok(Ring::IntegersMod(Arc::new(modulus)))
    }

    pub fn product(left: Ring, right: Ring) -> Ring {
        Ring::Product(Arc::new(left), Arc::new(right))
    }

    /// Polynomial ring `base[vars...]`. Variable names must be nonempty and
    /// distinct, and there must be at least one.
    pub fn polynomial<S: Into<String>>(
        base: Ring,
        vars: impl IntoIterator<Item = S>,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing("polynomial ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        Ok(Ring::Polynomial(Arc::new(PolyRing::new(base, vars))))
    }

    /// Re-checks the descriptor invariants, for descriptors built by hand.
    pub fn validate(&self) -> Result<()> {
        match self {
            Ring::Integer | Ring::Rational => Ok(()),
            Ring::IntegersMod(m) => {
                if **m < BigUint::from(2u32) {
                    Err(Error::InvalidRing(format!("modulus {m} must be at least 2")))
                } else {
                    Ok(())
                }
            }
            Ring::Product(l, r) => {
                l.validate()?;
                r.validate()
            }
            Ring::Polynomial(p) => {
                Ring::polynomial(p.base().clone(), p.vars().iter().cloned())?;
                p.base().validate()
            }
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    /// The image of an integer under the unique map `Z -> R`.
    pub fn from_int(&self, n: &BigInt) -> Elem {
        match self {
            Ring::Integer => Elem::Int(n.clone()),
            Ring::Rational => Elem::Rat(BigRational::from_integer(n.clone())),
            Ring::IntegersMod(m) => Elem::Mod(ModInt::reduce(n, m)),
            Ring::Product(l, r) => Elem::pair(l.from_int(n), r.from_int(n)),
            Ring::Polynomial(p) => Elem::Poly(Poly::constant(p, p.base().from_int(n))),
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_int(&BigInt::from(n))
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Integer, Elem::Int(_)) | (Ring::Rational, Elem::Rat(_)) => true,
            (Ring::IntegersMod(m), Elem::Mod(v)) => Arc::ptr_eq(m, &v.modulus) || **m == *v.modulus,
            (Ring::Product(l, r), Elem::Pair(p)) => l.contains(&p.0) && r.contains(&p.1),
            (Ring::Polynomial(a), Elem::Poly(p)) => Arc::ptr_eq(a, p.ring()) || **a == **p.ring(),
            _ => false,
        }
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::RingMismatch { expected: self.to_string(), found: x.ring().to_string() })
        }
    }

    /// Returns the inverse of 2, if 2 is a unit.
    pub fn half(&self) -> Option<Elem> {
        self.from_i64(2).try_invert()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => write!(f, "Integer"),
            Ring::Rational => write!(f, "Rational"),
            Ring::IntegersMod(m) => write!(f, "IntegersMod({m})"),
            Ring::Product(l, r) => write!(f, "Product({l}, {r})"),
            Ring::Polynomial(p) => write!(f, "Polynomial({}; {})", p.base(), p.vars().join(", ")),
        }
    }
}

/// Canonical residue in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModInt {
    value: BigUint,
    modulus: Arc<BigUint>,
}

impl ModInt {
    fn reduce(n: &BigInt, m: &Arc<BigUint>) -> ModInt {
        let mi = BigInt::from_biguint(Sign::Plus, (**m).clone());
        let r = n.mod_floor(&mi);
        ModInt { value: r.to_biguint().expect("mod_floor is nonnegative"), modulus: m.clone() }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    fn same_modulus(&self, other: &ModInt) -> bool {
        Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus
    }

    fn with(&self, value: BigUint) -> ModInt {
        ModInt { value, modulus: self.modulus.clone() }
    }

    fn add(&self, o: &ModInt) -> ModInt {
        let mut v = &self.value + &o.value;
        if v >= *self.modulus {
            v -= &*self.modulus;
        }
        self.with(v)
    }

    fn sub(&self, o: &ModInt) -> ModInt {
        if self.value >= o.value {
            self.with(&self.value - &o.value)
        } else {
            self.with(&*self.modulus - &o.value + &self.value)
        }
    }

    fn mul(&self, o: &ModInt) -> ModInt {
        self.with((&self.value * &o.value) % &*self.modulus)
    }

    fn neg(&self) -> ModInt {
        if self.value.is_zero() {
            self.clone()
        } else {
            self.with(&*self.modulus - &self.value)
        }
    }

    fn invert(&self) -> Option<ModInt> {
        let a = BigInt::from(self.value.clone());
        let m = BigInt::from((*self.modulus).clone());
        let eg = a.extended_gcd(&m);
        if !eg.gcd.is_one() {
            return None;
        }
        Some(ModInt::reduce(&eg.x, &self.modulus))
    }

    fn is_nilpotent(&self) -> bool {
        // every prime power dividing m has exponent <= bits(m)
        let e = self.modulus.bits();
        self.value.modpow(&BigUint::from(e), &self.modulus).is_zero()
    }
}

/// An element of a [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Mod(ModInt),
    Pair(Box<(Elem, Elem)>),
    Poly(Poly),
}

impl Elem {
    pub fn int(n: i64) -> Elem {
        Elem::Int(BigInt::from(n))
    }

    /// `num/den` as a reduced rational. Panics if `den` is zero.
    pub fn rational(num: i64, den: i64) -> Elem {
        Elem::Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn pair(left: Elem, right: Elem) -> Elem {
        Elem::Pair(Box::new((left, right)))
    }

    pub fn ring(&self) -> Ring {
        match self {
            Elem::Int(_) => Ring::Integer,
            Elem::Rat(_) => Ring::Rational,
            Elem::Mod(v) => Ring::IntegersMod(v.modulus.clone()),
            Elem::Pair(p) => Ring::product(p.0.ring(), p.1.ring()),
            Elem::Poly(p) => Ring::Polynomial(p.ring().clone()),
        }
    }

    pub fn same_ring(&self, other: &Elem) -> bool {
        match (self, other) {
            (Elem::Int(_), Elem::Int(_)) | (Elem::Rat(_), Elem::Rat(_)) => true,
            (Elem::Mod(a), Elem::Mod(b)) => a.same_modulus(b),
            (Elem::Pair(a), Elem::Pair(b)) => a.0.same_ring(&b.0) && a.1.same_ring(&b.1),
            (Elem::Poly(a), Elem::Poly(b)) => a.same_ring(b),
            _ => false,
        }
    }

    fn mismatch(&self, other: &Elem) -> Error {
        Error::RingMismatch { expected: self.ring().to_string(), found: other.ring().to_string() }
    }

    pub fn checked_add(&self, other: &Elem) -> Result<Elem> {
        Ok(match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Mod(a), Elem::Mod(b)) if a.same_modulus(b) => Elem::Mod(a.add(b)),
            (Elem::Pair(a), Elem::Pair(b)) => {
                Elem::pair(a.0.checked_add(&b.0)?, a.1.checked_add(&b.1)?)
            }
            (Elem::Poly(a), Elem::Poly(b)) if a.same_ring(b) => Elem::Poly(a.add(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_sub(&self, other: &Elem) -> Result<Elem> {
        Ok(match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a - b),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a - b),
            (Elem::Mod(a), Elem::Mod(b)) if a.same_modulus(b) => Elem::Mod(a.sub(b)),
            (Elem::Pair(a), Elem::Pair(b)) => {
                Elem::pair(a.0.checked_sub(&b.0)?, a.1.checked_sub(&b.1)?)
            }
            (Elem::Poly(a), Elem::Poly(b)) if a.same_ring(b) => Elem::Poly(a.sub(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_mul(&self, other: &Elem) -> Result<Elem> {
        Ok(match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Mod(a), Elem::Mod(b)) if a.same_modulus(b) => Elem::Mod(a.mul(b)),
            (Elem::Pair(a), Elem::Pair(b)) => {
                Elem::pair(a.0.checked_mul(&b.0)?, a.1.checked_mul(&b.1)?)
            }
            (Elem::Poly(a), Elem::Poly(b)) if a.same_ring(b) => Elem::Poly(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Int(a) => a.is_zero(),
            Elem::Rat(a) => a.is_zero(),
            Elem::Mod(a) => a.value.is_zero(),
            Elem::Pair(p) => p.0.is_zero() && p.1.is_zero(),
            Elem::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Int(a) => a.is_one(),
            Elem::Rat(a) => a.is_one(),
            Elem::Mod(a) => a.value.is_one(),
            Elem::Pair(p) => p.0.is_one() && p.1.is_one(),
            Elem::Poly(p) => p.is_one(),
        }
    }

    /// Strictly negative, for ordered rings (integers and rationals).
    pub fn is_negative(&self) -> bool {
        match self {
            Elem::Int(a) => a.is_negative(),
            Elem::Rat(a) => a.is_negative(),
            _ => false,
        }
    }

    /// Multiplicative inverse, or `None` when the element is not a unit.
    pub fn try_invert(&self) -> Option<Elem> {
        match self {
            Elem::Int(a) => (a.abs().is_one()).then(|| self.clone()),
            Elem::Rat(a) => (!a.is_zero()).then(|| Elem::Rat(a.recip())),
            Elem::Mod(a) => a.invert().map(Elem::Mod),
            Elem::Pair(p) => Some(Elem::pair(p.0.try_invert()?, p.1.try_invert()?)),
            Elem::Poly(p) => p.try_invert().map(Elem::Poly),
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        match self {
            Elem::Int(_) | Elem::Rat(_) => self.is_zero(),
            Elem::Mod(a) => a.is_nilpotent(),
            Elem::Pair(p) => p.0.is_nilpotent() && p.1.is_nilpotent(),
            Elem::Poly(p) => p.terms().all(|(_, c)| c.is_nilpotent()),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Elem {
        let mut acc = self.ring().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^exp` for any integer exponent; negative powers need a unit.
    pub fn pow_signed(&self, exp: i64) -> Option<Elem> {
        if exp >= 0 {
            Some(self.pow(exp as u64))
        } else {
            Some(self.try_invert()?.pow(exp.unsigned_abs()))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Elem> for &Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Int(a) => Elem::Int(-a),
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Mod(a) => Elem::Mod(a.neg()),
            Elem::Pair(p) => Elem::pair(-&p.0, -&p.1),
            Elem::Poly(p) => Elem::Poly(p.neg()),
        }
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(a) => write!(f, "{a}"),
            Elem::Rat(a) => write!(f, "{a}"),
            Elem::Mod(a) => write!(f, "{}", a.value),
            Elem::Pair(p) => write!(f, "({}, {})", p.0, p.1),
            Elem::Poly(p) => write!(f, "{p}"),
        }
    }
}
