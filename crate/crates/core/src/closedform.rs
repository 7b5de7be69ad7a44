//! Closed forms for recurrences of type `(r1 + r2, -r1 r2)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::genfun::{gf_variables, numerator_from_block, RationalGF};
use crate::hypercube::multi_indices;
use crate::module::ModuleElem;
use crate::multiseq::MultiSequence;
use crate::recurrence::RecurrenceType;
use crate::ring::{Elem, Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    r1: Elem,
    r2: Elem,
}

impl RootPair {
    pub fn new(r1: Elem, r2: Elem) -> Result<RootPair> {
        if !r1.same_ring(&r2) {
            return Err(Error::RingMismatch { expected: r1.ring().to_string(), found: r2.ring().to_string() });
        }
        Ok(RootPair { r1, r2 })
    }

    pub fn from_i64(ring: &Ring, r1: i64, r2: i64) -> RootPair {
        RootPair { r1: ring.from_i64(r1), r2: ring.from_i64(r2) }
    }

    pub fn r1(&self) -> &Elem {
        &self.r1
    }

    pub fn r2(&self) -> &Elem {
        &self.r2
    }

    pub fn ring(&self) -> Ring {
        self.r1.ring()
    }

    /// `a = r1 + r2`.
    pub fn a(&self) -> Elem {
        &self.r1 + &self.r2
    }

    /// `b = -r1 r2`.
    pub fn b(&self) -> Elem {
        -(&self.r1 * &self.r2)
    }

    /// `Δ = r2 - r1`.
    pub fn delta(&self) -> Elem {
        &self.r2 - &self.r1
    }

    pub fn recurrence(&self) -> RecurrenceType {
        RecurrenceType::new(self.ring(), vec![self.a(), self.b()]).expect("same ring")
    }

    /// Whether `rec` is exactly `(r1 + r2, -r1 r2)`.
    pub fn matches(&self, rec: &RecurrenceType) -> bool {
        rec.order() == 2 && rec.ring() == &self.ring() && rec.coeffs() == [self.a(), self.b()]
    }

    fn delta_inverse(&self) -> Result<Elem> {
        self.delta()
            .try_invert()
            .ok_or_else(|| Error::NotInvertible(format!("delta = {} is not a unit", self.delta())))
    }

    fn root_pow(&self, r: &Elem, n: i64) -> Result<Elem> {
        r.pow_signed(n)
            .ok_or_else(|| Error::NotInvertible(format!("root {r} is not a unit")))
    }
}

impl fmt::Display for RootPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}

fn check_basis_index(i: usize) -> Result<()> {
    if i > 1 {
        return Err(Error::IndexOutOfRange { index: i, bound: 2 });
    }
    Ok(())
}

/// `R_i^[n]` from the division-free sums
/// `R_0^[n] = -Σ_{u+v=n, u,v≥1} r1^u r2^v`, `R_1^[n] = Σ_{u+v=n-1} r1^u r2^v`.
/// At `n = 0` the initial conditions `R_0 = 1`, `R_1 = 0` apply.
pub fn r_poly(i: usize, n: u64, roots: &RootPair) -> Result<Elem> {
    check_basis_index(i)?;
    let ring = roots.ring();
    if n == 0 {
        return Ok(if i == 0 { ring.one() } else { ring.zero() });
    }
    let (lo, hi) = if i == 0 { (1, n - 1) } else { (0, n - 1) };
    let top = if i == 0 { n } else { n - 1 };
    let mut acc = ring.zero();
    for u in lo..=hi {
        acc = acc + roots.r1.pow(u) * roots.r2.pow(top - u);
    }
    Ok(if i == 0 { -acc } else { acc })
}

/// `S_0^[n] = r1^n r2 - r1 r2^n`, `S_1^[n] = r2^n - r1^n`; negative `n`
/// needs unit roots.
pub fn s_value(j: usize, n: i64, roots: &RootPair) -> Result<Elem> {
    check_basis_index(j)?;
    let p1 = roots.root_pow(&roots.r1, n)?;
    let p2 = roots.root_pow(&roots.r2, n)?;
    Ok(if j == 0 { p1 * &roots.r2 - &roots.r1 * &p2 } else { p2 - p1 })
}

/// `R_i^[n] = S_i^[n] / Δ`, valid for every integer `n`.
pub fn r_rational(i: usize, n: i64, roots: &RootPair) -> Result<Elem> {
    let inv = roots.delta_inverse()?;
    Ok(s_value(i, n, roots)? * inv)
}

fn check_spec(mseq: &MultiSequence, roots: &RootPair) -> Result<()> {
    for (k, rec) in mseq.spec().axes().iter().enumerate() {
        if !roots.matches(rec) {
            return Err(Error::SpecMismatch(format!(
                "axis {} has coefficients ({}) but roots {roots} give ({}, {})",
                k + 1,
                rec.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
                roots.a(),
                roots.b()
            )));
        }
    }
    Ok(())
}

/// `Σ_j Π_i S_{j_i}^[n_i] x_j`, divided by `Δ^p` unless `division_free`.
pub fn term_via_roots(
    mseq: &MultiSequence,
    roots: &RootPair,
    index: &[i64],
    division_free: bool,
) -> Result<ModuleElem> {
    check_spec(mseq, roots)?;
    let p = mseq.dims();
    if index.len() != p {
        return Err(Error::LengthMismatch { expected: p, found: index.len() });
    }
    let s: Vec<[Elem; 2]> = index
        .iter()
        .map(|&n| Ok([s_value(0, n, roots)?, s_value(1, n, roots)?]))
        .collect::<Result<_>>()?;
    let mut acc = ModuleElem::zero(mseq.ring(), mseq.rank());
    for (j, x) in mseq.initial().iter() {
        let c = j.iter().enumerate().fold(mseq.ring().one(), |c, (axis, &ji)| c * &s[axis][ji]);
        acc = acc.add_scaled(&c, x);
    }
    if division_free {
        Ok(acc)
    } else {
        let inv = roots.delta_inverse()?;
        Ok(acc.scale(&inv.pow(p as u64)))
    }
}

/// Generating function whose denominators are kept as `(1 - r1 t)(1 - r2 t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFormGF {
    gf: RationalGF,
    factors: Vec<[Poly; 2]>,
}

impl RootFormGF {
    /// The same function with each denominator multiplied out.
    pub fn expanded(&self) -> &RationalGF {
        &self.gf
    }

    /// Per-axis linear factors `1 - r1 t_i`, `1 - r2 t_i`.
    pub fn factors(&self) -> &[[Poly; 2]] {
        &self.factors
    }

    pub fn denominator_string(&self) -> String {
        self.factors.iter().flatten().map(|f| format!("({f})")).collect()
    }
}

impl fmt::Display for RootFormGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.gf.numerator();
        let num = if num.len() > 1 { format!("({num})") } else { num.to_string() };
        write!(f, "{num} / ({})", self.denominator_string())
    }
}

/// Generating function of coordinate `coord`, with `Q_0 = 1 - (r1 + r2) t`,
/// `Q_1 = t` and `q = (1 - r1 t)(1 - r2 t)`.
pub fn gf_via_roots_coordinate(mseq: &MultiSequence, roots: &RootPair, coord: usize) -> Result<RootFormGF> {
    check_spec(mseq, roots)?;
    if coord >= mseq.rank() {
        return Err(Error::IndexOutOfRange { index: coord, bound: mseq.rank() });
    }
    let ring = mseq.ring().clone();
    let vars = gf_variables(mseq.dims());
    let pring = match Ring::polynomial(ring.clone(), vars.iter().cloned())? {
        Ring::Polynomial(p) => p,
        _ => unreachable!(),
    };
    let q_basis = vec![vec![ring.one(), -roots.a()], vec![ring.zero(), ring.one()]];
    let basis = vec![q_basis; mseq.dims()];
    let block = mseq.initial().map(|x| x.coord(coord).clone());
    let numerator = numerator_from_block(&basis, &pring, &block);

    let mut factors = Vec::new();
    let mut denominators = Vec::new();
    for v in &vars {
        let uring = match Ring::polynomial(ring.clone(), [v.clone()])? {
            Ring::Polynomial(p) => p,
            _ => unreachable!(),
        };
        let lin = |r: &Elem| {
            Poly::from_terms(&uring, [(vec![0], ring.one()), (vec![1], -r)]).expect("base ring")
        };
        let pair = [lin(&roots.r1), lin(&roots.r2)];
        denominators.push(pair[0].mul(&pair[1]));
        factors.push(pair);
    }
    Ok(RootFormGF { gf: RationalGF::new(numerator, denominators)?, factors })
}

pub fn gf_via_roots(mseq: &MultiSequence, roots: &RootPair) -> Result<RootFormGF> {
    if mseq.rank() != 1 {
        return Err(Error::RankMismatch(1, mseq.rank()));
    }
    gf_via_roots_coordinate(mseq, roots, 0)
}

/// Checks `Δ^p x_n = Σ_j Π S x_j` at every index of the box `0..=bound`.
pub fn check_division_free(mseq: &MultiSequence, roots: &RootPair, bound: usize) -> Result<bool> {
    let delta_p = roots.delta().pow(mseq.dims() as u64);
    for idx in multi_indices(&vec![bound + 1; mseq.dims()]) {
        let signed: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
        let lhs = mseq.term(&idx).scale(&delta_p);
        if lhs != term_via_roots(mseq, roots, &signed, true)? {
            return Ok(false);
        }
    }
    Ok(true)
}
