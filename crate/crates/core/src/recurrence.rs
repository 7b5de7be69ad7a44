//! One-dimensional order-`d` linear recurrences
//! `x_{n+d} = a_1 x_{n+d-1} + ... + a_d x_n` with values in a free module.

use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{combine, ModuleElem};
use crate::ring::{Elem, Ring};

/// Terms beyond this index are recomputed from a rolling window instead of
/// being cached.
const MEMO_CAP: usize = 1 << 12;

/// The coefficient vector `(a_1, ..., a_d)` of one axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceType {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl RecurrenceType {
    pub fn new(ring: Ring, coeffs: Vec<Elem>) -> Result<RecurrenceType> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, found: 0 });
        }
        for c in &coeffs {
            ring.check(c)?;
        }
        Ok(RecurrenceType { ring, coeffs })
    }

    /// Integer coefficients mapped into `ring`.
    pub fn from_i64(ring: &Ring, coeffs: &[i64]) -> RecurrenceType {
        RecurrenceType::new(ring.clone(), coeffs.iter().map(|&c| ring.from_i64(c)).collect())
            .expect("integer coefficients always lie in the ring")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `a_j`, 1-based like the recurrence itself.
    pub fn coeff(&self, j: usize) -> &Elem {
        &self.coeffs[j - 1]
    }

    pub fn companion(&self) -> CompanionMatrix {
        CompanionMatrix::new(self)
    }

    /// Next term after a window `(x_n, ..., x_{n+d-1})`.
    pub fn next_term(&self, window: &[ModuleElem]) -> ModuleElem {
        let d = self.order();
        debug_assert_eq!(window.len(), d);
        let mut acc = window[d - 1].scale(&self.coeffs[0]);
        for j in 2..=d {
            acc = acc.add_scaled(&self.coeffs[j - 1], &window[d - j]);
        }
        acc
    }

    /// `P_i^[n]`: term `n` of the sequence with initial values `delta_ij`.
    pub fn basis_value(&self, i: usize, n: u64) -> Result<Elem> {
        if i >= self.order() {
            return Err(Error::IndexOutOfRange { index: i, bound: self.order() });
        }
        Ok(self.basis_values(n).swap_remove(i))
    }

    /// `(P_0^[n], ..., P_{d-1}^[n])` from one companion-matrix power.
    pub fn basis_values(&self, n: u64) -> Vec<Elem> {
        let d = self.order();
        if n < d as u64 {
            return (0..d)
                .map(|i| if i as u64 == n { self.ring.one() } else { self.ring.zero() })
                .collect();
        }
        let p = self.companion().power(n);
        (0..d).map(|i| p.get(d - 1, d - 1 - i).clone()).collect()
    }

    /// The canonical basis sequence `(P_i^[n])_n` as a rank-one sequence.
    pub fn basis_sequence(&self, i: usize) -> Result<Sequence1D> {
        if i >= self.order() {
            return Err(Error::IndexOutOfRange { index: i, bound: self.order() });
        }
        let initial = (0..self.order())
            .map(|j| ModuleElem::scalar(if i == j { self.ring.one() } else { self.ring.zero() }))
            .collect();
        Sequence1D::new(self.clone(), initial)
    }
}

/// `d x d` matrix advancing the state `(x_{n+d-1}, ..., x_n)` by one step:
/// top row `(a_1, ..., a_d)`, ones on the subdiagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    ring: Ring,
    matrix: Matrix,
}

impl CompanionMatrix {
    pub fn new(rec: &RecurrenceType) -> CompanionMatrix {
        let d = rec.order();
        let ring = rec.ring().clone();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == 0 {
                            rec.coeffs()[j].clone()
                        } else if j + 1 == i {
                            ring.one()
                        } else {
                            ring.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        CompanionMatrix { ring, matrix: Matrix::from_rows(rows) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn power(&self, n: u64) -> Matrix {
        self.matrix.pow(&self.ring, n)
    }
}

/// A sequence in `F_M(a)`, determined by its first `d` terms.
#[derive(Debug)]
pub struct Sequence1D {
    rec: RecurrenceType,
    initial: Vec<ModuleElem>,
    memo: Mutex<Vec<ModuleElem>>,
}

impl Clone for Sequence1D {
    fn clone(&self) -> Self {
        Sequence1D::new_unchecked(self.rec.clone(), self.initial.clone())
    }
}

impl PartialEq for Sequence1D {
    fn eq(&self, other: &Self) -> bool {
        self.rec == other.rec && self.initial == other.initial
    }
}

impl Eq for Sequence1D {}

impl Sequence1D {
    pub fn new(rec: RecurrenceType, initial: Vec<ModuleElem>) -> Result<Sequence1D> {
        if initial.len() != rec.order() {
            return Err(Error::LengthMismatch { expected: rec.order(), found: initial.len() });
        }
        let first = &initial[0];
        for x in &initial {
            if x.rank() != first.rank() {
                return Err(Error::RankMismatch(first.rank(), x.rank()));
            }
            for c in x.coords() {
                rec.ring().check(c)?;
            }
        }
        Ok(Sequence1D::new_unchecked(rec, initial))
    }

    fn new_unchecked(rec: RecurrenceType, initial: Vec<ModuleElem>) -> Sequence1D {
        let memo = Mutex::new(initial.clone());
        Sequence1D { rec, initial, memo }
    }

    /// Rank-one sequence from scalar initial values.
    pub fn scalar(rec: RecurrenceType, initial: Vec<Elem>) -> Result<Sequence1D> {
        Sequence1D::new(rec, initial.into_iter().map(ModuleElem::scalar).collect())
    }

    /// Integer recurrence and initial values, mapped into `ring`.
    pub fn from_i64(ring: &Ring, coeffs: &[i64], initial: &[i64]) -> Result<Sequence1D> {
        let rec = RecurrenceType::from_i64(ring, coeffs);
        Sequence1D::scalar(rec, initial.iter().map(|&x| ring.from_i64(x)).collect())
    }

    pub fn recurrence(&self) -> &RecurrenceType {
        &self.rec
    }

    pub fn ring(&self) -> &Ring {
        self.rec.ring()
    }

    pub fn order(&self) -> usize {
        self.rec.order()
    }

    pub fn rank(&self) -> usize {
        self.initial[0].rank()
    }

    pub fn initial(&self) -> &[ModuleElem] {
        &self.initial
    }

    /// `x_n` by iterating the recurrence.
    pub fn term(&self, n: usize) -> ModuleElem {
        let d = self.order();
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if n < memo.len() {
            return memo[n].clone();
        }
        let target = n.min(MEMO_CAP - 1);
        while memo.len() <= target {
            let next = self.rec.next_term(&memo[memo.len() - d..]);
            memo.push(next);
        }
        if n < memo.len() {
            return memo[n].clone();
        }
        let mut window: Vec<ModuleElem> = memo[memo.len() - d..].to_vec();
        drop(memo);
        let mut idx = MEMO_CAP - 1;
        while idx < n {
            let next = self.rec.next_term(&window);
            window.remove(0);
            window.push(next);
            idx += 1;
        }
        window.pop().expect("window is nonempty")
    }

    /// `x_n = sum_i P_i^[n] x_i`, with the basis values taken from a
    /// companion-matrix power; `O(d^3 log n)` ring operations.
    pub fn term_fast(&self, n: u64) -> ModuleElem {
        if n < self.order() as u64 {
            return self.initial[n as usize].clone();
        }
        combine(&self.rec.basis_values(n), &self.initial)
    }

    /// Terms `start .. start + len`.
    pub fn terms(&self, start: usize, len: usize) -> Vec<ModuleElem> {
        (start..start + len).map(|n| self.term(n)).collect()
    }

    /// `phi`: the coordinates `(x_0, ..., x_{d-1})`.
    pub fn decompose(&self) -> Vec<ModuleElem> {
        self.initial.clone()
    }

    /// `psi`: the sequence `sum_i (P_i^[n])_n (x) coords[i]`.
    pub fn reconstruct(rec: &RecurrenceType, coords: Vec<ModuleElem>) -> Result<Sequence1D> {
        Sequence1D::new(rec.clone(), coords)
    }

    /// The shift `T^count`.
    pub fn shift(&self, count: usize) -> Sequence1D {
        Sequence1D::new_unchecked(self.rec.clone(), self.terms(count, self.order()))
    }

    /// Entrywise sum of two sequences of the same type.
    pub fn add(&self, other: &Sequence1D) -> Result<Sequence1D> {
        if self.rec != other.rec {
            return Err(Error::SpecMismatch("sequences have different recurrences".into()));
        }
        let initial = self
            .initial
            .iter()
            .zip(&other.initial)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(Sequence1D::new_unchecked(self.rec.clone(), initial))
    }

    /// `(x_{-1}, ..., x_{-k})`; needs `a_d` to be a unit.
    pub fn extend_backward(&self, k: usize) -> Result<Vec<ModuleElem>> {
        let d = self.order();
        let ad_inv = self.rec.coeff(d).try_invert().ok_or(Error::NotInvertibleCoefficient)?;
        // window holds (x_m, ..., x_{m+d-1})
        let mut window = self.initial.clone();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let mut rest = window[d - 1].clone();
            for j in 1..d {
                rest = rest.sub(&window[d - 1 - j].scale(self.rec.coeff(j)));
            }
            let prev = rest.scale(&ad_inv);
            window.pop();
            window.insert(0, prev.clone());
            out.push(prev);
        }
        Ok(out)
    }
}

/// Whether every `d + 1` consecutive entries of `window` satisfy `rec`.
pub fn check_membership(window: &[ModuleElem], rec: &RecurrenceType) -> Result<bool> {
    let d = rec.order();
    if window.len() < d + 1 {
        return Err(Error::WindowTooSmall(format!(
            "need at least {} terms, got {}",
            d + 1,
            window.len()
        )));
    }
    Ok(window.windows(d + 1).all(|w| rec.next_term(&w[..d]) == w[d]))
}
