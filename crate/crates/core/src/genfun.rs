//! Rational generating functions `G = N(t_1..t_p) / (q_1(t_1) ... q_p(t_p))`
//! and their truncated power-series expansion.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercube::{multi_indices, Hypercube};
use crate::multiseq::MultiSequence;
use crate::recurrence::RecurrenceType;
use crate::ring::{Elem, Poly, PolyRing, Ring};

/// Variable names: `t` for one axis, `t, s` for two, `t1..tp` beyond.
pub fn gf_variables(p: usize) -> Vec<String> {
    match p {
        1 => vec!["t".into()],
        2 => vec!["t".into(), "s".into()],
        _ => (1..=p).map(|i| format!("t{i}")).collect(),
    }
}

fn poly_ring(base: &Ring, vars: &[String]) -> Arc<PolyRing> {
    match Ring::polynomial(base.clone(), vars.iter().cloned()) {
        Ok(Ring::Polynomial(p)) => p,
        _ => unreachable!("generated variable names are valid"),
    }
}

fn univariate(base: &Ring, var: &str, coeffs: &[Elem]) -> Poly {
    let ring = poly_ring(base, &[var.to_string()]);
    Poly::from_terms(&ring, coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
        .expect("coefficients come from the base ring")
}

/// Dense coefficients of `q(t) = 1 - a_1 t - ... - a_d t^d`.
fn q_coeffs(rec: &RecurrenceType) -> Vec<Elem> {
    std::iter::once(rec.ring().one()).chain(rec.coeffs().iter().map(|a| -a)).collect()
}

/// Dense coefficients of `Q_i(t) = t^i (1 - a_1 t - ... - a_{d-i-1} t^{d-i-1})`.
fn q_basis_coeffs(rec: &RecurrenceType) -> Vec<Vec<Elem>> {
    let d = rec.order();
    (0..d)
        .map(|i| {
            let mut c = vec![rec.ring().zero(); d];
            c[i] = rec.ring().one();
            for j in 1..d - i {
                c[i + j] = -rec.coeff(j);
            }
            c
        })
        .collect()
}

/// `q(t) = 1 - a_1 t - ... - a_d t^d` as a polynomial in `var`.
pub fn q_poly(rec: &RecurrenceType, var: &str) -> Poly {
    univariate(rec.ring(), var, &q_coeffs(rec))
}

/// `Q_0, ..., Q_{d-1}` as polynomials in `var`.
pub fn numerator_basis_polys(rec: &RecurrenceType, var: &str) -> Vec<Poly> {
    q_basis_coeffs(rec).iter().map(|c| univariate(rec.ring(), var, c)).collect()
}

/// A rational function with a product of univariate denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: Poly,
    denominators: Vec<Poly>,
}

impl RationalGF {
    /// `denominators[i]` must be univariate in the `i`-th variable of the
    /// numerator's ring.
    pub fn new(numerator: Poly, denominators: Vec<Poly>) -> Result<RationalGF> {
        let vars = numerator.ring().vars();
        if denominators.len() != vars.len() {
            return Err(Error::WrongVariableCount { expected: vars.len(), found: denominators.len() });
        }
        for (q, v) in denominators.iter().zip(vars) {
            if q.ring().vars() != std::slice::from_ref(v) || q.ring().base() != numerator.ring().base() {
                return Err(Error::SpecMismatch(format!("denominator must be a polynomial in {v}")));
            }
        }
        Ok(RationalGF { numerator, denominators })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominators(&self) -> &[Poly] {
        &self.denominators
    }

    pub fn vars(&self) -> &[String] {
        self.numerator.ring().vars()
    }

    pub fn numerator_string(&self) -> String {
        self.numerator.to_string()
    }

    pub fn denominator_string(&self) -> String {
        self.denominators.iter().map(|q| format!("({q})")).collect()
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.numerator.len() > 1 {
            format!("({})", self.numerator)
        } else {
            self.numerator.to_string()
        };
        if self.denominators.len() == 1 {
            write!(f, "{num} / {}", self.denominator_string())
        } else {
            write!(f, "{num} / ({})", self.denominator_string())
        }
    }
}

/// `sum_j prod_i Q^{(i)}_{j_i}(t_i) * c_j` for a block of scalars `c`.
pub(crate) fn numerator_from_block(
    basis: &[Vec<Vec<Elem>>],
    ring: &Arc<PolyRing>,
    block: &Hypercube<Elem>,
) -> Poly {
    let mut terms = Vec::new();
    for (j, c) in block.iter() {
        if c.is_zero() {
            continue;
        }
        let factors: Vec<&Vec<Elem>> = j.iter().enumerate().map(|(i, &ji)| &basis[i][ji]).collect();
        let shape: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        for e in multi_indices(&shape) {
            let mut coef = c.clone();
            for (f, &ei) in factors.iter().zip(&e) {
                if coef.is_zero() {
                    break;
                }
                coef = &coef * &f[ei];
            }
            if !coef.is_zero() {
                terms.push((e.iter().map(|&x| x as u32).collect(), coef));
            }
        }
    }
    Poly::from_terms(ring, terms).expect("terms built in the numerator ring")
}

fn gf_of_coordinate(mseq: &MultiSequence, coord: usize) -> RationalGF {
    let spec = mseq.spec();
    let vars = gf_variables(spec.dims());
    let ring = poly_ring(spec.ring(), &vars);
    let basis: Vec<_> = spec.axes().iter().map(q_basis_coeffs).collect();
    let block = mseq.initial().map(|x| x.coord(coord).clone());
    let numerator = numerator_from_block(&basis, &ring, &block);
    let denominators = spec.axes().iter().zip(&vars).map(|(rec, v)| q_poly(rec, v)).collect();
    RationalGF { numerator, denominators }
}

/// Generating function of a rank-one sequence.
pub fn gf(mseq: &MultiSequence) -> Result<RationalGF> {
    if mseq.rank() != 1 {
        return Err(Error::RankMismatch(1, mseq.rank()));
    }
    Ok(gf_of_coordinate(mseq, 0))
}

/// One scalar generating function per module coordinate.
pub fn gf_per_coordinate(mseq: &MultiSequence) -> Vec<RationalGF> {
    (0..mseq.rank()).map(|c| gf_of_coordinate(mseq, c)).collect()
}

/// Coefficients of a power series in `p` variables, exponent `i` of
/// variable `k` ranging over `0..=orders[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    coeffs: Hypercube<Elem>,
}

impl TruncatedSeries {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Per-variable inclusive exponent bounds.
    pub fn orders(&self) -> Vec<usize> {
        self.coeffs.shape().iter().map(|s| s - 1).collect()
    }

    pub fn coeffs(&self) -> &Hypercube<Elem> {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[usize]) -> &Elem {
        self.coeffs.get(exps)
    }

    /// Multiplies by the denominators and truncates, recovering the
    /// numerator's coefficients inside the box.
    pub fn times_denominators(&self, gf: &RationalGF) -> TruncatedSeries {
        let mut data = self.coeffs.clone();
        for (axis, q) in gf.denominators().iter().enumerate() {
            data = along_axis(&data, axis, |line| {
                (0..line.len())
                    .map(|n| {
                        let mut acc = q.coeff(&[0]) * &line[n];
                        for j in 1..=n {
                            let qj = q.coeff(&[j as u32]);
                            if !qj.is_zero() {
                                acc = acc + &qj * &line[n - j];
                            }
                        }
                        acc
                    })
                    .collect()
            });
        }
        TruncatedSeries { vars: self.vars.clone(), coeffs: data }
    }
}

/// Applies `f` to every line of `cube` parallel to `axis`.
fn along_axis(cube: &Hypercube<Elem>, axis: usize, mut f: impl FnMut(&[Elem]) -> Vec<Elem>) -> Hypercube<Elem> {
    let shape = cube.shape().to_vec();
    let mut out = cube.data().to_vec();
    let mut base_shape = shape.clone();
    base_shape[axis] = 1;
    for base in multi_indices(&base_shape) {
        let mut idx = base.clone();
        let offsets: Vec<usize> = (0..shape[axis])
            .map(|n| {
                idx[axis] = n;
                cube.offset(&idx)
            })
            .collect();
        let line: Vec<Elem> = offsets.iter().map(|&o| cube.data()[o].clone()).collect();
        for (o, v) in offsets.into_iter().zip(f(&line)) {
            out[o] = v;
        }
    }
    Hypercube::new(shape, out).expect("shape preserved")
}

/// Expands `gf` up to exponent `orders[k]` in each variable.
///
/// Division by each `q_i` is done in place along its axis by the recurrence
/// `c_n = u^{-1} (b_n - sum_{j>=1} q_j c_{n-j})`, `u` the constant term.
pub fn expand(gf: &RationalGF, orders: &[usize]) -> Result<TruncatedSeries> {
    let vars = gf.vars().to_vec();
    if orders.len() != vars.len() {
        return Err(Error::WrongVariableCount { expected: vars.len(), found: orders.len() });
    }
    let shape: Vec<usize> = orders.iter().map(|o| o + 1).collect();
    let base = gf.numerator().ring().base().clone();
    let mut data = Hypercube::from_fn(shape.clone(), |_| base.zero());
    let mut flat = data.data().to_vec();
    for (e, c) in gf.numerator().terms() {
        let idx: Vec<usize> = e.iter().map(|&x| x as usize).collect();
        if idx.iter().zip(&shape).all(|(i, s)| i < s) {
            flat[data.offset(&idx)] = c.clone();
        }
    }
    data = Hypercube::new(shape, flat)?;
    for (axis, q) in gf.denominators().iter().enumerate() {
        let u_inv = q.coeff(&[0]).try_invert().ok_or(Error::NonUnitConstantTerm)?;
        let deg = q.degree_in(0).unwrap_or(0) as usize;
        let qs: Vec<Elem> = (0..=deg).map(|j| q.coeff(&[j as u32])).collect();
        data = along_axis(&data, axis, |line| {
            let mut out: Vec<Elem> = Vec::with_capacity(line.len());
            for n in 0..line.len() {
                let mut acc = line[n].clone();
                for j in 1..=deg.min(n) {
                    if !qs[j].is_zero() {
                        acc = acc - &qs[j] * &out[n - j];
                    }
                }
                out.push(&u_inv * &acc);
            }
            out
        });
    }
    Ok(TruncatedSeries { vars, coeffs: data })
}

/// Whether every series coefficient inside `orders` equals the
/// corresponding term, for every module coordinate.
pub fn verify_gf(mseq: &MultiSequence, orders: &[usize]) -> Result<bool> {
    for (c, g) in gf_per_coordinate(mseq).iter().enumerate() {
        let series = expand(g, orders)?;
        for (idx, v) in series.coeffs().iter() {
            if mseq.term(&idx).coord(c) != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
