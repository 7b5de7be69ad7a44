//! Sparse multivariate polynomials over an arbitrary base [`Ring`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Elem, Ring};
use crate::error::{Error, Result};

/// Descriptor data of a polynomial ring: base ring plus ordered variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    base: Ring,
    vars: Vec<String>,
}

impl PolyRing {
    pub(crate) fn new(base: Ring, vars: Vec<String>) -> PolyRing {
        PolyRing { base, vars }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// A polynomial as a map from exponent vectors to nonzero coefficients.
///
/// Exponent vectors follow the variable order of the ring and the map is
/// sorted lexicographically on them, which makes the representation
/// canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Elem) -> Poly {
        Poly::monomial(ring, vec![0; ring.nvars()], c)
    }

    /// The `i`-th variable. Panics if `i` is out of range.
    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        let mut exps = vec![0; ring.nvars()];
        exps[i] = 1;
        Poly::monomial(ring, exps, ring.base.one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: Vec<u32>, c: Elem) -> Poly {
        debug_assert_eq!(exps.len(), ring.nvars());
        debug_assert!(ring.base.contains(&c));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing
    /// repeated exponents and validating every coefficient.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Vec<u32>, Elem)>,
    ) -> Result<Poly> {
        let mut p = Poly::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(Error::WrongVariableCount { expected: ring.nvars(), found: exps.len() });
            }
            ring.base.check(&c)?;
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Elem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub(crate) fn same_ring(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Elem {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.ring.base.zero())
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Highest power of variable `var` present.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies every coefficient by a base-ring scalar.
    pub fn scale(&self, c: &Elem) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Substitutes one base-ring value per variable.
    pub fn eval(&self, values: &[Elem]) -> Result<Elem> {
        if values.len() != self.ring.nvars() {
            return Err(Error::WrongVariableCount {
                expected: self.ring.nvars(),
                found: values.len(),
            });
        }
        for v in values {
            self.ring.base.check(v)?;
        }
        let mut acc = self.ring.base.zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(exps) {
                if e > 0 {
                    t = &t * &v.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// A polynomial is a unit iff its constant term is a unit and all other
    /// coefficients are nilpotent; then `u = c(1 + n)` with `n` nilpotent and
    /// the geometric series for `(1 + n)^-1` terminates.
    pub(crate) fn try_invert(&self) -> Option<Poly> {
        let c = self.constant_term();
        let c_inv = c.try_invert()?;
        let mut rest = self.clone();
        rest.terms.remove(&vec![0; self.ring.nvars()]);
        if !rest.terms.values().all(Elem::is_nilpotent) {
            return None;
        }
        let step = rest.scale(&c_inv).neg();
        let mut inv = Poly::constant(&self.ring, self.ring.base.one());
        let mut power = inv.clone();
        loop {
            power = power.mul(&step);
            if power.is_zero() {
                break;
            }
            inv = inv.add(&power);
        }
        Some(inv.scale(&c_inv))
    }

    /// Terms in display order: ascending total degree, then descending
    /// exponent vector, so `1 - s + t*s` and `1 - t - t^2`.
    pub fn display_order(&self) -> Vec<(&Vec<u32>, &Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }
}

fn monomial_string(vars: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

/// Splits a coefficient into (negative?, magnitude text, needs parens when
/// juxtaposed with a monomial).
fn coefficient_parts(c: &Elem) -> (bool, String, bool) {
    match c {
        Elem::Int(_) | Elem::Rat(_) => {
            let neg = c.is_negative();
            let mag = if neg { (-c).to_string() } else { c.to_string() };
            let paren = mag.contains('/');
            (neg, mag, paren)
        }
        Elem::Mod(_) => (false, c.to_string(), false),
        Elem::Pair(_) => (false, c.to_string(), false),
        Elem::Poly(_) => {
            let s = c.to_string();
            let paren = s.contains(' ') || s.starts_with('-');
            (false, s, paren)
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.display_order().into_iter().enumerate() {
            let mono = monomial_string(&self.ring.vars, exps);
            let (neg, mag, paren) = coefficient_parts(c);
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else if paren {
                format!("({mag}){mono}")
            } else {
                format!("{mag}{mono}")
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
