#![allow(dead_code)]

use fibmod::multiseq::FibSpec;
use fibmod::{Elem, ModuleElem, MultiSequence, RecurrenceType, Ring, Sequence1D};
use rand::Rng;

pub fn ints(ring: &Ring, xs: &[i64]) -> Vec<Elem> {
    xs.iter().map(|&x| ring.from_i64(x)).collect()
}

pub fn random_rec(rng: &mut impl Rng, ring: &Ring, max_order: usize, coeff: i64) -> RecurrenceType {
    let d = rng.random_range(1..=max_order);
    let coeffs: Vec<i64> = (0..d).map(|_| rng.random_range(-coeff..=coeff)).collect();
    RecurrenceType::from_i64(ring, &coeffs)
}

pub fn random_elem(rng: &mut impl Rng, ring: &Ring, bound: i64) -> Elem {
    ring.from_i64(rng.random_range(-bound..=bound))
}

pub fn random_module_elem(rng: &mut impl Rng, ring: &Ring, rank: usize, bound: i64) -> ModuleElem {
    ModuleElem::new((0..rank).map(|_| random_elem(rng, ring, bound)).collect()).unwrap()
}

pub fn random_seq1d(rng: &mut impl Rng, rec: RecurrenceType, rank: usize, bound: i64) -> Sequence1D {
    let ring = rec.ring().clone();
    let initial = (0..rec.order()).map(|_| random_module_elem(rng, &ring, rank, bound)).collect();
    Sequence1D::new(rec, initial).unwrap()
}

pub fn random_multiseq(rng: &mut impl Rng, spec: FibSpec, bound: i64) -> MultiSequence {
    let ring = spec.ring().clone();
    let data = (0..spec.free_rank()).map(|_| random_elem(rng, &ring, bound)).collect();
    MultiSequence::from_scalars(spec, data).unwrap()
}

pub fn random_spec(rng: &mut impl Rng, ring: &Ring, p: usize, max_order: usize, coeff: i64) -> FibSpec {
    FibSpec::new((0..p).map(|_| random_rec(rng, ring, max_order, coeff)).collect()).unwrap()
}
