//! Shift orbits of 2x2 binary initial blocks for the `(1,1) x (1,1)` double
//! Fibonacci sequences, and which position sets determine a sequence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::multi_indices;
use crate::multiseq::{FibSpec, MultiSequence};
use crate::recurrence::RecurrenceType;
use crate::ring::{Elem, Ring};

/// Entries `(x00, x10, x01, x11)`, first index along the horizontal axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BinaryBlock(pub [u8; 4]);

impl BinaryBlock {
    pub fn entries(&self) -> [u8; 4] {
        self.0
    }

    /// Position in [`enumerate_blocks`]: `x00` is the most significant bit.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| acc * 2 + b as usize)
    }

    pub fn from_index(i: usize) -> BinaryBlock {
        assert!(i < 16);
        BinaryBlock([(i >> 3 & 1) as u8, (i >> 2 & 1) as u8, (i >> 1 & 1) as u8, (i & 1) as u8])
    }

    /// The double sequence with this block as its initial values.
    pub fn sequence(&self) -> MultiSequence {
        let data: Vec<i64> = self.0.iter().map(|&b| b as i64).collect();
        MultiSequence::from_i64(fibonacci_square(), &data).expect("2x2 block")
    }

    /// `B_0`..`B_4` for the five primitive blocks.
    pub fn label(&self) -> Option<&'static str> {
        match self.0 {
            [0, 0, 0, 0] => Some("B_0"),
            [1, 0, 0, 0] => Some("B_1"),
            [0, 1, 1, 0] => Some("B_2"),
            [1, 0, 0, 1] => Some("B_3"),
            [1, 1, 1, 0] => Some("B_4"),
            _ => None,
        }
    }
}

/// Two rows, `k = 1` above `k = 0`.
impl fmt::Display for BinaryBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x00, x10, x01, x11] = self.0;
        write!(f, "{x01} {x11}\n{x00} {x10}")
    }
}

/// `(1,1) x (1,1)` over the integers.
pub fn fibonacci_square() -> FibSpec {
    FibSpec::uniform(RecurrenceType::from_i64(&Ring::Integer, &[1, 1]), 2)
}

/// All 16 blocks in binary counting order.
pub fn enumerate_blocks() -> Vec<BinaryBlock> {
    (0..16).map(BinaryBlock::from_index).collect()
}

fn window_block(seq: &MultiSequence, i: usize, j: usize) -> Option<BinaryBlock> {
    let w = seq.window(&[i, j], &[2, 2]);
    let mut out = [0u8; 4];
    for (slot, x) in out.iter_mut().zip(w.data()) {
        *slot = match x.coord(0) {
            e if e.is_zero() => 0,
            e if e.is_one() => 1,
            _ => return None,
        };
    }
    Some(BinaryBlock(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMember {
    pub block: BinaryBlock,
    /// Smallest `(i, j)` (by `i + j`, then lexicographically) at which the
    /// primitive's sequence shows this block.
    pub shift: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub primitive: BinaryBlock,
    /// Starts with the primitive itself at shift `(0, 0)`.
    pub members: Vec<OrbitMember>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, block: &BinaryBlock) -> bool {
        self.members.iter().any(|m| &m.block == block)
    }

    pub fn shift_of(&self, block: &BinaryBlock) -> Option<(usize, usize)> {
        self.members.iter().find(|m| &m.block == block).map(|m| m.shift)
    }
}

/// For every block, the blocks its sequence shows at nonzero shifts up to
/// `bound`, each with its first such shift.
fn reachability(bound: usize) -> Vec<BTreeMap<BinaryBlock, (usize, usize)>> {
    let mut shifts: Vec<(usize, usize)> =
        (0..=bound).flat_map(|i| (0..=bound).map(move |j| (i, j))).filter(|&s| s != (0, 0)).collect();
    shifts.sort_by_key(|&(i, j)| (i + j, i, j));
    enumerate_blocks()
        .iter()
        .map(|b| {
            let seq = b.sequence();
            let mut seen = BTreeMap::new();
            for &(i, j) in &shifts {
                if let Some(w) = window_block(&seq, i, j) {
                    seen.entry(w).or_insert((i, j));
                }
            }
            seen
        })
        .collect()
}

fn classify_at(bound: usize) -> Result<Vec<Orbit>> {
    let blocks = enumerate_blocks();
    let reach = reachability(bound);
    let reached_by_other =
        |b: &BinaryBlock| blocks.iter().zip(&reach).any(|(c, r)| c != b && r.contains_key(b));
    let primitives: Vec<BinaryBlock> = blocks.iter().filter(|b| !reached_by_other(b)).copied().collect();

    let mut orbits: Vec<Orbit> = primitives
        .iter()
        .map(|&p| Orbit { primitive: p, members: vec![OrbitMember { block: p, shift: (0, 0) }] })
        .collect();
    for b in blocks.iter().filter(|b| !primitives.contains(b)) {
        let owners: Vec<usize> =
            (0..orbits.len()).filter(|&k| reach[orbits[k].primitive.index()].contains_key(b)).collect();
        let [k] = owners[..] else {
            return Err(Error::AmbiguousAtBound(bound, bound));
        };
        let shift = reach[orbits[k].primitive.index()][b];
        orbits[k].members.push(OrbitMember { block: *b, shift });
    }
    for o in &mut orbits {
        o.members[1..].sort_by_key(|m| (m.shift.0 + m.shift.1, m.shift, m.block));
    }
    Ok(orbits)
}

fn partition(orbits: &[Orbit]) -> BTreeSet<(BinaryBlock, BTreeSet<BinaryBlock>)> {
    orbits.iter().map(|o| (o.primitive, o.members.iter().map(|m| m.block).collect())).collect()
}

/// Partitions the 16 blocks into shift orbits, sorted by the primitive's
/// enumeration index. A primitive is a block that no other block's sequence
/// shows at a nonzero shift within `bound`; the result is re-derived at
/// `bound + 2` and must not change.
pub fn classify_orbits(bound: usize) -> Result<Vec<Orbit>> {
    if bound < 2 {
        return Err(Error::InvalidArgument(format!("shift bound must be at least 2, got {bound}")));
    }
    let orbits = classify_at(bound)?;
    let wider = classify_at(bound + 2)?;
    if partition(&orbits) != partition(&wider) {
        return Err(Error::AmbiguousAtBound(bound, bound + 2));
    }
    Ok(orbits)
}

/// Windows of `B_1`'s sequence at `(0,0), (1,0), (0,1), (1,1)`, flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub rows: Vec<Vec<BigInt>>,
    pub determinant: BigInt,
}

impl Certificate {
    /// Determinant `±1`: integer combinations of the rows reach every block.
    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }

    /// Integer `c` with `Σ c_k rows[k] = block`, if one exists.
    pub fn express(&self, block: &BinaryBlock) -> Option<Vec<BigInt>> {
        let n = self.rows.len();
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|col| (0..n).map(|k| BigRational::from_integer(self.rows[k][col].clone())).collect())
            .collect();
        let rhs: Vec<BigRational> = block.0.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let sol = solve(a, rhs)?;
        sol.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }
}

pub fn generation_certificate() -> Certificate {
    let seq = BinaryBlock([1, 0, 0, 0]).sequence();
    let rows: Vec<Vec<BigInt>> = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(i, j)| {
            seq.window(&[i, j], &[2, 2])
                .data()
                .iter()
                .map(|x| match x.coord(0) {
                    Elem::Int(v) => v.clone(),
                    _ => unreachable!("integer spec"),
                })
                .collect()
        })
        .collect();
    let m = rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let determinant = determinant(m).to_integer();
    Certificate { rows, determinant }
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        b.swap(piv, col);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn to_rational(x: &Elem) -> Result<BigRational> {
    match x {
        Elem::Int(v) => Ok(BigRational::from_integer(v.clone())),
        Elem::Rat(v) => Ok(v.clone()),
        other => Err(Error::UnsupportedRing(format!("{} (integers or rationals required)", other.ring()))),
    }
}

/// Matrix whose row `t` holds `Π_i P_{j_i}^[n_{t,i}]` over the product basis
/// indexed by `j`; `positions` determine every sequence of `spec` iff it is
/// invertible over the rationals.
pub fn position_matrix(spec: &FibSpec, positions: &[Vec<usize>]) -> Result<Vec<Vec<BigRational>>> {
    if !matches!(spec.ring(), Ring::Integer | Ring::Rational) {
        return Err(Error::UnsupportedRing(format!("{} (integers or rationals required)", spec.ring())));
    }
    let rank = spec.free_rank();
    if positions.len() != rank {
        return Err(Error::LengthMismatch { expected: rank, found: positions.len() });
    }
    let mut seen = BTreeSet::new();
    for p in positions {
        if p.len() != spec.dims() {
            return Err(Error::LengthMismatch { expected: spec.dims(), found: p.len() });
        }
        if !seen.insert(p.clone()) {
            return Err(Error::DuplicatePositions(p.clone()));
        }
    }
    let basis: Vec<_> = multi_indices(&spec.orders()).collect();
    positions
        .iter()
        .map(|pos| {
            let per_axis: Vec<Vec<Elem>> =
                spec.axes().iter().zip(pos).map(|(rec, &n)| rec.basis_values(n as u64)).collect();
            basis
                .iter()
                .map(|j| {
                    let v = j.iter().enumerate().fold(spec.ring().one(), |acc, (i, &ji)| acc * &per_axis[i][ji]);
                    to_rational(&v)
                })
                .collect()
        })
        .collect()
}

/// Whether the values at `positions` pin down the whole sequence.
pub fn positions_determine(spec: &FibSpec, positions: &[Vec<usize>]) -> Result<bool> {
    Ok(!determinant(position_matrix(spec, positions)?).is_zero())
}
