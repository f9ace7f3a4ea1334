//! Seeded samplers for property suites.
//!
//! Words are uniform over a uniformly chosen degree below the bound. Coefficients
//! are Gaussian rationals `a/b + (c/d)i` with `|a|, |c| ≤ 3` and `1 ≤ b, d ≤ 3`.
//! Elements carry one to three terms.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{permutation_unitary, Element, GenTerm};
use crate::scalar::{ExactScalar, Gaussian, Rational};
use crate::semigroup::{Degree, Letter, Permutation2D, Word};

pub const MAX_TERMS: usize = 3;

#[derive(Clone, Debug)]
pub struct Sampler {
    theta: Arc<Permutation2D>,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(theta: Arc<Permutation2D>, seed: u64) -> Self {
        Sampler {
            theta,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn theta(&self) -> &Arc<Permutation2D> {
        &self.theta
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn letters(&mut self, len: usize) -> Vec<Letter> {
        let (m, n) = (self.theta.m(), self.theta.n());
        (0..len)
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    Letter::E(self.rng.gen_range(1..=m))
                } else {
                    Letter::F(self.rng.gen_range(1..=n))
                }
            })
            .collect()
    }

    pub fn degree(&mut self, bound: Degree) -> Degree {
        Degree::new(self.rng.gen_range(0..=bound.e), self.rng.gen_range(0..=bound.f))
    }

    pub fn word_of_degree(&mut self, d: Degree) -> Word {
        let (m, n) = (self.theta.m(), self.theta.n());
        let e = (0..d.e).map(|_| self.rng.gen_range(1..=m)).collect();
        let f = (0..d.f).map(|_| self.rng.gen_range(1..=n)).collect();
        Word::from_blocks(e, f)
    }

    pub fn word(&mut self, bound: Degree) -> Word {
        let d = self.degree(bound);
        self.word_of_degree(d)
    }

    pub fn gaussian(&mut self) -> Gaussian {
        let part = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let re = part(&mut self.rng);
        let im = if self.rng.gen_bool(0.5) {
            part(&mut self.rng)
        } else {
            ratio(0, 1)
        };
        Gaussian::new(re, im)
    }

    pub fn nonzero_gaussian(&mut self) -> Gaussian {
        loop {
            let g = self.gaussian();
            if !g.is_zero() {
                return g;
            }
        }
    }

    pub fn term(&mut self, level: Degree) -> GenTerm {
        GenTerm::new(self.word(level), self.word(level))
    }

    /// `c·S[u;v]` with `u, v` below `level`.
    pub fn generator(&mut self, level: Degree) -> Element {
        let t = self.term(level);
        let c = self.nonzero_gaussian();
        Element::from_terms(&self.theta, [(t, ExactScalar::from_gaussian(c))])
    }

    pub fn element(&mut self, level: Degree) -> Element {
        let count = self.rng.gen_range(1..=MAX_TERMS);
        let terms: Vec<_> = (0..count)
            .map(|_| (self.term(level), ExactScalar::from_gaussian(self.nonzero_gaussian())))
            .collect();
        Element::from_terms(&self.theta, terms)
    }

    /// An element of the core with both words of a common degree `≤ (k, k)`.
    pub fn core_element(&mut self, k: i64) -> Element {
        let count = self.rng.gen_range(1..=MAX_TERMS);
        let terms: Vec<_> = (0..count)
            .map(|_| {
                let d = self.degree(Degree::new(k, k));
                let t = GenTerm::new(self.word_of_degree(d), self.word_of_degree(d));
                (t, ExactScalar::from_gaussian(self.nonzero_gaussian()))
            })
            .collect();
        Element::from_terms(&self.theta, terms)
    }

    /// One of `±1, ±i, (±3 ± 4i)/5`.
    pub fn unit_phase(&mut self) -> Gaussian {
        let choices = [
            (1, 0, 1),
            (-1, 0, 1),
            (0, 1, 1),
            (0, -1, 1),
            (3, 4, 5),
            (3, -4, 5),
            (-3, 4, 5),
            (-3, -4, 5),
        ];
        let &(a, b, d) = choices.choose(&mut self.rng).expect("nonempty");
        Gaussian::new(ratio(a, d), ratio(b, d))
    }

    /// `Σ_k phase_k S[w_π(k); w_k]` over the words of a random degree `≤ level`.
    pub fn permutation_unitary(&mut self, level: Degree) -> Element {
        let d = self.degree(level);
        let size = self.theta.count_words(d);
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(&mut self.rng);
        let phases: Vec<Gaussian> = (0..size).map(|_| self.unit_phase()).collect();
        permutation_unitary(&self.theta, d, &perm, &phases).expect("valid permutation")
    }

    /// Up to `size` generators with one common v-degree per degree difference,
    /// hence linearly independent.
    pub fn independent_basis(&mut self, level: Degree, size: usize) -> Vec<Element> {
        let mut levels: BTreeMap<Degree, Degree> = BTreeMap::new();
        let mut seen: BTreeSet<GenTerm> = BTreeSet::new();
        let mut out = Vec::new();
        for _ in 0..size * 20 {
            if out.len() == size {
                break;
            }
            let (du, dv) = (self.degree(level), self.degree(level));
            let delta = du - dv;
            let dv = *levels.entry(delta).or_insert(dv);
            let du = dv + delta;
            if !du.is_nonnegative() || !du.le(level) {
                continue;
            }
            let t = GenTerm::new(self.word_of_degree(du), self.word_of_degree(dv));
            if seen.insert(t.clone()) {
                out.push(Element::generator(&self.theta, t.u, t.v));
            }
        }
        out
    }
}

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_runs_repeat() {
        let t = Arc::new(Permutation2D::identity(2, 3).unwrap());
        let mut a = Sampler::new(t.clone(), 7);
        let mut b = Sampler::new(t, 7);
        for _ in 0..20 {
            assert_eq!(
                a.element(Degree::new(2, 2)).to_string(),
                b.element(Degree::new(2, 2)).to_string()
            );
        }
    }

    #[test]
    fn samples_respect_bounds() {
        let t = Arc::new(Permutation2D::flip(2, 2).unwrap());
        let mut s = Sampler::new(t, 1);
        for _ in 0..50 {
            assert!(s.word(Degree::new(2, 1)).degree().le(Degree::new(2, 1)));
            let x = s.core_element(2);
            assert!(x.support().iter().all(|d| d.is_zero()));
            assert!(s.permutation_unitary(Degree::new(1, 1)).is_unitary());
            assert!(s.unit_phase().is_unit());
        }
        let basis = s.independent_basis(Degree::new(1, 1), 25);
        assert!(!basis.is_empty() && basis.len() <= 25);
    }
}
