//! Multiple Fibonacci sequences: `p`-indexed arrays with an independent
//! linear recurrence along each axis, and the module operations on them.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::hypercube::{multi_indices, Hypercube};
use crate::module::ModuleElem;
use crate::recurrence::{RecurrenceType, Sequence1D};
use crate::ring::{Elem, Ring};

const MEMO_CAP: usize = 1 << 16;

/// The per-axis recurrence types `(a^(1), ..., a^(p))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibSpec {
    axes: Vec<RecurrenceType>,
}

impl FibSpec {
    pub fn new(axes: Vec<RecurrenceType>) -> Result<FibSpec> {
        let Some(first) = axes.first() else {
            return Err(Error::SpecMismatch("a spec needs at least one axis".into()));
        };
        for a in &axes[1..] {
            if a.ring() != first.ring() {
                return Err(Error::RingMismatch {
                    expected: first.ring().to_string(),
                    found: a.ring().to_string(),
                });
            }
        }
        Ok(FibSpec { axes })
    }

    /// `p` copies of the same recurrence.
    pub fn uniform(rec: RecurrenceType, p: usize) -> FibSpec {
        FibSpec::new(vec![rec; p]).expect("p must be positive")
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[RecurrenceType] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &RecurrenceType {
        &self.axes[i]
    }

    pub fn ring(&self) -> &Ring {
        self.axes[0].ring()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.axes.iter().map(RecurrenceType::order).collect()
    }

    /// Rank of the free module of sequences: `d_1 * ... * d_p`.
    pub fn free_rank(&self) -> usize {
        self.orders().iter().product()
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dims() {
            Err(Error::AxisOutOfRange { axis, dims: self.dims() })
        } else {
            Ok(())
        }
    }
}

/// The `d_1 x ... x d_p` block of initial values.
pub type InitialBlock = Hypercube<ModuleElem>;

/// A multiple Fibonacci sequence, determined by its initial block.
#[derive(Debug)]
pub struct MultiSequence {
    spec: FibSpec,
    initial: InitialBlock,
    memo: Mutex<HashMap<Vec<usize>, ModuleElem>>,
}

impl Clone for MultiSequence {
    fn clone(&self) -> Self {
        MultiSequence::new_unchecked(self.spec.clone(), self.initial.clone())
    }
}

impl PartialEq for MultiSequence {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.initial == other.initial
    }
}

impl Eq for MultiSequence {}

impl MultiSequence {
    pub fn new(spec: FibSpec, initial: InitialBlock) -> Result<MultiSequence> {
        if initial.shape() != spec.orders().as_slice() {
            return Err(Error::SpecMismatch(format!(
                "initial block shape {:?} does not match axis orders {:?}",
                initial.shape(),
                spec.orders()
            )));
        }
        let rank = initial.data()[0].rank();
        for x in initial.data() {
            if x.rank() != rank {
                return Err(Error::RankMismatch(rank, x.rank()));
            }
            for c in x.coords() {
                spec.ring().check(c)?;
            }
        }
        Ok(MultiSequence::new_unchecked(spec, initial))
    }

    fn new_unchecked(spec: FibSpec, initial: InitialBlock) -> MultiSequence {
        MultiSequence { spec, initial, memo: Mutex::new(HashMap::new()) }
    }

    /// Rank-one sequence from scalar initial values in axis-1-fastest order.
    pub fn from_scalars(spec: FibSpec, data: Vec<Elem>) -> Result<MultiSequence> {
        let block = Hypercube::new(spec.orders(), data.into_iter().map(ModuleElem::scalar).collect())?;
        MultiSequence::new(spec, block)
    }

    /// Integer data mapped into the spec's ring.
    pub fn from_i64(spec: FibSpec, data: &[i64]) -> Result<MultiSequence> {
        let ring = spec.ring().clone();
        MultiSequence::from_scalars(spec, data.iter().map(|&x| ring.from_i64(x)).collect())
    }

    /// A one-axis multiple sequence viewing a 1D sequence.
    pub fn from_sequence(seq: &Sequence1D) -> MultiSequence {
        let spec = FibSpec::new(vec![seq.recurrence().clone()]).expect("one axis");
        let block = Hypercube::new(vec![seq.order()], seq.initial().to_vec()).expect("length d");
        MultiSequence::new_unchecked(spec, block)
    }

    pub fn spec(&self) -> &FibSpec {
        &self.spec
    }

    pub fn initial(&self) -> &InitialBlock {
        &self.initial
    }

    pub fn ring(&self) -> &Ring {
        self.spec.ring()
    }

    pub fn dims(&self) -> usize {
        self.spec.dims()
    }

    pub fn rank(&self) -> usize {
        self.initial.data()[0].rank()
    }

    /// `x_index`, reducing the highest axis first. Panics if `index` does not
    /// have one coordinate per axis.
    pub fn term(&self, index: &[usize]) -> ModuleElem {
        assert_eq!(index.len(), self.dims(), "index dimension mismatch");
        if self.initial.contains(index) {
            return self.initial.get(index).clone();
        }
        if let Some(v) = self.cached(index) {
            return v;
        }
        let axis = (0..self.dims())
            .rev()
            .find(|&a| index[a] >= self.spec.axis(a).order())
            .expect("index outside the initial block");
        let rec = self.spec.axis(axis);
        let d = rec.order();
        let n = index[axis];
        let mut idx = index.to_vec();

        // Neighbours already known: one step of the recurrence.
        let prev: Option<Vec<ModuleElem>> = (1..=d)
            .rev()
            .map(|j| {
                idx[axis] = n - j;
                self.known(&idx)
            })
            .collect();
        if let Some(window) = prev {
            let v = rec.next_term(&window);
            self.store(index, &v);
            return v;
        }

        // Otherwise walk the whole line along `axis`, caching as we go.
        let mut window: Vec<ModuleElem> = (0..d)
            .map(|m| {
                idx[axis] = m;
                self.term(&idx)
            })
            .collect();
        for m in d..=n {
            let next = rec.next_term(&window);
            idx[axis] = m;
            self.store(&idx, &next);
            window.remove(0);
            window.push(next);
        }
        window.pop().expect("window is nonempty")
    }

    fn cached(&self, index: &[usize]) -> Option<ModuleElem> {
        self.memo.lock().unwrap_or_else(|e| e.into_inner()).get(index).cloned()
    }

    fn known(&self, index: &[usize]) -> Option<ModuleElem> {
        if self.initial.contains(index) {
            Some(self.initial.get(index).clone())
        } else {
            self.cached(index)
        }
    }

    fn store(&self, index: &[usize], v: &ModuleElem) {
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if memo.len() < MEMO_CAP {
            memo.insert(index.to_vec(), v.clone());
        }
    }

    /// `x_index` with the axes reduced in the given order: `order[0]` is
    /// brought back into its initial range first, then `order[1]`, and so
    /// on. Every permutation gives the same value.
    pub fn term_in_order(&self, index: &[usize], order: &[usize]) -> ModuleElem {
        assert_eq!(index.len(), self.dims(), "index dimension mismatch");
        let mut seen = vec![false; self.dims()];
        for &a in order {
            assert!(a < self.dims() && !seen[a], "order must be a permutation of the axes");
            seen[a] = true;
        }
        assert_eq!(order.len(), self.dims(), "order must be a permutation of the axes");
        let mut idx = index.to_vec();
        self.reduce(&mut idx, order)
    }

    fn reduce(&self, idx: &mut [usize], order: &[usize]) -> ModuleElem {
        let Some((&axis, rest)) = order.split_first() else {
            return self.initial.get(idx).clone();
        };
        let rec = self.spec.axis(axis);
        let d = rec.order();
        let n = idx[axis];
        if n < d {
            return self.reduce(idx, rest);
        }
        let mut window = Vec::with_capacity(d);
        for m in 0..d {
            idx[axis] = m;
            window.push(self.reduce(idx, rest));
        }
        idx[axis] = n;
        for _ in d..=n {
            let next = rec.next_term(&window);
            window.remove(0);
            window.push(next);
        }
        window.pop().expect("window is nonempty")
    }

    /// `x_index = sum_j prod_i P_{j_i}^[n_i](a^(i)) x_j`, contracting the
    /// initial block against per-axis basis values.
    pub fn term_fast(&self, index: &[u64]) -> ModuleElem {
        assert_eq!(index.len(), self.dims(), "index dimension mismatch");
        let basis: Vec<Vec<Elem>> = self
            .spec
            .axes()
            .iter()
            .zip(index)
            .map(|(rec, &n)| rec.basis_values(n))
            .collect();
        let mut acc: Option<ModuleElem> = None;
        for (j, x) in self.initial.iter() {
            let mut c = basis[0][j[0]].clone();
            for i in 1..j.len() {
                if c.is_zero() {
                    break;
                }
                c = &c * &basis[i][j[i]];
            }
            acc = Some(match acc {
                None => x.scale(&c),
                Some(a) if c.is_zero() => a,
                Some(a) => a.add_scaled(&c, x),
            });
        }
        acc.expect("initial block is nonempty")
    }

    /// Values at `origin + o` for every offset `o` in a box of `shape`.
    pub fn window(&self, origin: &[usize], shape: &[usize]) -> Hypercube<ModuleElem> {
        assert_eq!(origin.len(), self.dims(), "origin dimension mismatch");
        Hypercube::from_fn(shape.to_vec(), |o| {
            let idx: Vec<usize> = origin.iter().zip(o).map(|(a, b)| a + b).collect();
            self.term(&idx)
        })
    }

    /// Shift along `axis` (0-based): `result[idx] = self[idx + count * e_axis]`.
    pub fn shift_axis(&self, axis: usize, count: usize) -> Result<MultiSequence> {
        self.spec.check_axis(axis)?;
        let mut origin = vec![0; self.dims()];
        origin[axis] = count;
        let block = self.window(&origin, &self.spec.orders());
        Ok(MultiSequence::new_unchecked(self.spec.clone(), block))
    }

    /// `Phi`: `(x_n) (x) (y_k) (x) ... -> (x_n (x) y_k (x) ...)`. Entry ranks
    /// multiply (Kronecker order, first factor outermost).
    pub fn tensor_product(factors: &[Sequence1D]) -> Result<MultiSequence> {
        let spec = FibSpec::new(factors.iter().map(|f| f.recurrence().clone()).collect())?;
        let block = Hypercube::from_fn(spec.orders(), |j| {
            let mut acc = factors[0].initial()[j[0]].clone();
            for (f, &ji) in factors.iter().zip(j).skip(1) {
                acc = acc.tensor(&f.initial()[ji]);
            }
            acc
        });
        Ok(MultiSequence::new_unchecked(spec, block))
    }

    /// `Psi`: coordinates in the product basis `prod_i P_{j_i}^[n_i]`. Since
    /// `P_i^[j] = delta_ij`, these are the initial values.
    pub fn decompose_tensor(&self) -> InitialBlock {
        self.window(&vec![0; self.dims()], &self.spec.orders())
    }

    /// The sequence with product-basis coordinates `block`.
    pub fn reconstruct_tensor(spec: &FibSpec, block: InitialBlock) -> Result<MultiSequence> {
        MultiSequence::new(spec.clone(), block)
    }

    /// Entrywise direct sum; entry ranks add.
    pub fn direct_sum(&self, other: &MultiSequence) -> Result<MultiSequence> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch("direct sum needs identical specs".into()));
        }
        let data = self
            .initial
            .data()
            .iter()
            .zip(other.initial.data())
            .map(|(a, b)| a.concat(b))
            .collect();
        let block = Hypercube::new(self.spec.orders(), data)?;
        Ok(MultiSequence::new_unchecked(self.spec.clone(), block))
    }

    /// Coordinates `range` of every entry.
    pub fn project(&self, range: std::ops::Range<usize>) -> Result<MultiSequence> {
        if range.is_empty() || range.end > self.rank() {
            return Err(Error::IndexOutOfRange { index: range.end, bound: self.rank() + 1 });
        }
        let block = self.initial.map(|x| x.project(range.clone()));
        Ok(MultiSequence::new_unchecked(self.spec.clone(), block))
    }

    pub fn add(&self, other: &MultiSequence) -> Result<MultiSequence> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch("sum needs identical specs".into()));
        }
        let data = self
            .initial
            .data()
            .iter()
            .zip(other.initial.data())
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        let block = Hypercube::new(self.spec.orders(), data)?;
        Ok(MultiSequence::new_unchecked(self.spec.clone(), block))
    }

    pub fn scale(&self, c: &Elem) -> Result<MultiSequence> {
        self.ring().check(c)?;
        let block = self.initial.map(|x| x.scale(c));
        Ok(MultiSequence::new_unchecked(self.spec.clone(), block))
    }

    fn check_square(&self) -> Result<()> {
        if self.dims() != 2 {
            return Err(Error::SpecMismatch(format!("expected 2 axes, found {}", self.dims())));
        }
        if self.spec.axis(0) != self.spec.axis(1) {
            return Err(Error::SpecMismatch("both axes must have the same type".into()));
        }
        Ok(())
    }

    /// `x_{n,k} = x_{k,n}` for all `n, k <= bound`.
    pub fn is_symmetric(&self, bound: usize) -> Result<bool> {
        self.check_square()?;
        Ok(pairs(bound).all(|(n, k)| n >= k || self.term(&[n, k]) == self.term(&[k, n])))
    }

    /// `x_{n,k} = -x_{k,n}` for all `n, k <= bound`.
    pub fn is_antisymmetric(&self, bound: usize) -> Result<bool> {
        self.check_square()?;
        Ok(pairs(bound).all(|(n, k)| n > k || self.term(&[n, k]) == self.term(&[k, n]).neg()))
    }

    fn two_axis_params(&self) -> Result<[Elem; 4]> {
        if self.dims() != 2 || self.spec.orders() != [2, 2] {
            return Err(Error::SpecMismatch("expected two axes of order 2".into()));
        }
        let (ab, cd) = (self.spec.axis(0).coeffs(), self.spec.axis(1).coeffs());
        Ok([ab[0].clone(), ab[1].clone(), cd[0].clone(), cd[1].clone()])
    }

    /// The four-term anti-diagonal relation
    /// `ab x_{n,k+3} + (a^2+b)c x_{n+1,k+2} = a(c^2+d) x_{n+2,k+1} + cd x_{n+3,k}`
    /// for type `(a,b) (x) (c,d)`. Only defined when `a^2 d = b c^2`.
    pub fn diagonal_check(&self, n: usize, k: usize) -> Result<bool> {
        let [a, b, c, d] = self.two_axis_params()?;
        if &(&a * &a) * &d != &b * &(&c * &c) {
            return Err(Error::HypothesisViolated(format!(
                "a^2 d = b c^2 fails for (a,b,c,d) = ({a}, {b}, {c}, {d})"
            )));
        }
        let lhs = self
            .term(&[n, k + 3])
            .scale(&(&a * &b))
            .add(&self.term(&[n + 1, k + 2]).scale(&(&(&(&a * &a) + &b) * &c)));
        let rhs = self
            .term(&[n + 2, k + 1])
            .scale(&(&a * &(&(&c * &c) + &d)))
            .add(&self.term(&[n + 3, k]).scale(&(&c * &d)));
        Ok(lhs == rhs)
    }

    /// `x_{n,k+3} - x_{n+3,k} = 2 (x_{n+2,k+1} - x_{n+1,k+2})` for type
    /// `(1,1) (x) (1,1)`.
    pub fn diagonal_identity_fib(&self, n: usize, k: usize) -> Result<bool> {
        let fib = RecurrenceType::from_i64(self.ring(), &[1, 1]);
        if self.dims() != 2 || self.spec.axis(0) != &fib || self.spec.axis(1) != &fib {
            return Err(Error::SpecMismatch("expected type (1,1) (x) (1,1)".into()));
        }
        let two = self.ring().from_i64(2);
        let lhs = self.term(&[n, k + 3]).sub(&self.term(&[n + 3, k]));
        let rhs = self.term(&[n + 2, k + 1]).sub(&self.term(&[n + 1, k + 2])).scale(&two);
        Ok(lhs == rhs)
    }
}

fn pairs(bound: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=bound).flat_map(move |n| (0..=bound).map(move |k| (n, k)))
}

/// `Psi` of the mixed direct sum: sequences of types `(a_1..a_d)` and
/// `(c_1..c_d)` over `R` become one sequence over `R x R` of type
/// `((a_1,c_1), ..., (a_d,c_d))`.
pub fn direct_sum_mixed(x: &Sequence1D, y: &Sequence1D) -> Result<Sequence1D> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch { expected: x.ring().to_string(), found: y.ring().to_string() });
    }
    if x.order() != y.order() {
        return Err(Error::SpecMismatch(format!("orders {} and {} differ", x.order(), y.order())));
    }
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    let ring = Ring::product(x.ring().clone(), y.ring().clone());
    let coeffs = x
        .recurrence()
        .coeffs()
        .iter()
        .zip(y.recurrence().coeffs())
        .map(|(a, c)| Elem::pair(a.clone(), c.clone()))
        .collect();
    let rec = RecurrenceType::new(ring, coeffs)?;
    let initial = x
        .initial()
        .iter()
        .zip(y.initial())
        .map(|(u, v)| pair_coords(u, v))
        .collect();
    Sequence1D::new(rec, initial)
}

/// Coordinatewise pairing of two module elements of equal rank.
pub fn pair_coords(u: &ModuleElem, v: &ModuleElem) -> ModuleElem {
    let coords = u.coords().iter().zip(v.coords()).map(|(a, b)| Elem::pair(a.clone(), b.clone())).collect();
    ModuleElem::new(coords).expect("pairs of one ring share a ring")
}

/// Projection of a product-ring sequence onto component `side` (0 or 1).
pub fn project_component(seq: &Sequence1D, side: usize) -> Result<Sequence1D> {
    let Ring::Product(l, r) = seq.ring() else {
        return Err(Error::UnsupportedRing(format!("{} is not a product ring", seq.ring())));
    };
    let ring = if side == 0 { (**l).clone() } else { (**r).clone() };
    let pick = |e: &Elem| -> Elem {
        match e {
            Elem::Pair(p) => if side == 0 { p.0.clone() } else { p.1.clone() },
            _ => unreachable!("elements of a product ring are pairs"),
        }
    };
    let rec = RecurrenceType::new(ring, seq.recurrence().coeffs().iter().map(pick).collect())?;
    let initial = seq
        .initial()
        .iter()
        .map(|x| ModuleElem::new(x.coords().iter().map(pick).collect()))
        .collect::<Result<_>>()?;
    Sequence1D::new(rec, initial)
}

fn sym_part(x: &Sequence1D, y: &Sequence1D, sign: i64) -> Result<MultiSequence> {
    if x.recurrence() != y.recurrence() {
        return Err(Error::SpecMismatch("both factors must have the same type".into()));
    }
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    let half = x.ring().half().ok_or(Error::TwoNotInvertible)?;
    let s = x.ring().from_i64(sign);
    let spec = FibSpec::uniform(x.recurrence().clone(), 2);
    let block = Hypercube::from_fn(spec.orders(), |j| {
        let a = x.initial()[j[0]].tensor(&y.initial()[j[1]]);
        let b = x.initial()[j[1]].tensor(&y.initial()[j[0]]);
        a.add_scaled(&s, &b).scale(&half)
    });
    Ok(MultiSequence::new_unchecked(spec, block))
}

/// `x_{n,k} = (x_n (x) y_k + x_k (x) y_n) / 2`.
pub fn symmetrize(x: &Sequence1D, y: &Sequence1D) -> Result<MultiSequence> {
    sym_part(x, y, 1)
}

/// `x_{n,k} = (x_n (x) y_k - x_k (x) y_n) / 2`.
pub fn antisymmetrize(x: &Sequence1D, y: &Sequence1D) -> Result<MultiSequence> {
    sym_part(x, y, -1)
}

/// Whether every axis recurrence holds at every interior position of
/// `block`.
pub fn check_membership(block: &Hypercube<ModuleElem>, spec: &FibSpec) -> Result<bool> {
    if block.dims() != spec.dims() {
        return Err(Error::SpecMismatch(format!(
            "block has {} axes, spec has {}",
            block.dims(),
            spec.dims()
        )));
    }
    for (i, (&s, d)) in block.shape().iter().zip(spec.orders()).enumerate() {
        if s < d + 1 {
            return Err(Error::WindowTooSmall(format!("axis {} has extent {s}, need {}", i + 1, d + 1)));
        }
    }
    for (axis, rec) in spec.axes().iter().enumerate() {
        let d = rec.order();
        let mut inner = block.shape().to_vec();
        inner[axis] -= d;
        for base in multi_indices(&inner) {
            let window: Vec<ModuleElem> = (0..d)
                .map(|m| {
                    let mut idx = base.clone();
                    idx[axis] += m;
                    block.get(&idx).clone()
                })
                .collect();
            let mut last = base.clone();
            last[axis] += d;
            if rec.next_term(&window) != *block.get(&last) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
