//! A brute-force graded action used to cross-check the symbolic kernel.
//!
//! `S[u;v]` acts on the words of a fixed degree by stripping the prefix `v`
//! and prepending `u`. On strata of strictly positive degree the defect-free
//! sums act as the identity, so equal elements give equal actions there.
//! Nothing in this module multiplies or canonicalizes elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Element, GenTerm};
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rational};
use crate::semigroup::{Degree, Permutation2D, Word};

/// A sparse vector over the word basis.
pub type Vector = BTreeMap<Word, ExactScalar>;

#[derive(Clone, Debug)]
pub struct GradedActionModel {
    theta: Arc<Permutation2D>,
    window: i64,
}

impl GradedActionModel {
    /// Admits basis words of every degree `≤ (window, window)`.
    pub fn new(theta: Arc<Permutation2D>, window: i64) -> Self {
        GradedActionModel { theta, window }
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    fn bound(&self) -> Degree {
        Degree::new(self.window, self.window)
    }

    /// The basis of the degree-`d` stratum.
    pub fn stratum(&self, d: Degree) -> Result<Vec<Word>> {
        if !d.is_nonnegative() || !d.le(self.bound()) {
            return Err(Error::OutOfWindow(format!(
                "stratum {d} outside window {}",
                self.bound()
            )));
        }
        Ok(self.theta.enumerate_words(d))
    }

    /// `S[u;v]·z`, or `None` when `v` is not the prefix of `z`.
    pub fn act(&self, t: &GenTerm, z: &Word) -> Result<Option<Word>> {
        let dz = z.degree();
        let dv = t.v.degree();
        let target = dz + t.u.degree() - dv;
        if !dv.le(dz) || !target.le(self.bound()) || !dz.le(self.bound()) {
            return Err(Error::OutOfWindow(format!("{t} on a word of degree {dz}")));
        }
        let (prefix, rest) = self.theta.factor_at(z, dv)?;
        Ok((prefix == t.v).then(|| self.theta.concat(&t.u, &rest)))
    }

    /// Linear extension of [`act`](Self::act) to a sparse vector.
    pub fn act_vector(&self, a: &Element, x: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (z, cz) in x {
            for (t, c) in a.terms() {
                if let Some(y) = self.act(t, z)? {
                    out.entry(y).or_insert_with(ExactScalar::zero).add_assign_ref(&(c * cz));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Applies `factors` right to left, i.e. `(F_1 ⋯ F_r)·x`.
    pub fn act_chain(&self, factors: &[&Element], x: &Vector) -> Result<Vector> {
        let mut v = x.clone();
        for f in factors.iter().rev() {
            v = self.act_vector(f, &v)?;
        }
        Ok(v)
    }

    /// Compares `left_factors` and `right_factors` (each a product, applied
    /// right to left) on every basis word of `stratum`.
    pub fn chains_agree(&self, left: &[&Element], right: &[&Element], stratum: Degree) -> Result<bool> {
        for z in self.stratum(stratum)? {
            let x = Vector::from([(z, ExactScalar::one())]);
            if !vectors_equal(&self.act_chain(left, &x)?, &self.act_chain(right, &x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `A = B` as actions on the default evaluation stratum
    /// `(join of all v-degrees) + (1,1)`.
    pub fn oracle_equal(&self, a: &Element, b: &Element) -> Result<bool> {
        self.chains_agree(&[a], &[b], default_stratum([a, b]))
    }

    /// `P = A·B` as actions, evaluated where both sides have headroom.
    pub fn oracle_product(&self, a: &Element, b: &Element, p: &Element) -> Result<bool> {
        let mut d = default_stratum([b, p]);
        // after `b` acts, the image must still cover every v-degree of `a`
        let shift = b
            .terms()
            .map(|(t, _)| t.u.degree() - t.v.degree())
            .fold(Degree::new(i64::MAX, i64::MAX), Degree::meet);
        if shift.e != i64::MAX {
            let need = default_stratum([a]) - shift;
            d = d.join(need);
        }
        self.chains_agree(&[p], &[a, b], d)
    }

    /// Normalized matrix trace of `x ∈ 𝔉` on the degree-`(K, K)` stratum with
    /// `K = max(k, level of x)`.
    pub fn oracle_trace(&self, x: &Element, k: i64) -> Result<ExactScalar> {
        let mut level = k;
        for (t, _) in x.terms() {
            if !t.degree().is_zero() {
                return Err(Error::OutOfWindow(format!("{t} is not in the core")));
            }
            level = level.max(t.v.degree().e).max(t.v.degree().f);
        }
        let d = Degree::new(level, level);
        let mut sum = ExactScalar::zero();
        let basis = self.stratum(d)?;
        for z in &basis {
            for (t, c) in x.terms() {
                if self.act(t, z)?.as_ref() == Some(z) {
                    sum.add_assign_ref(c);
                }
            }
        }
        Ok(sum.scale_rational(&Rational::new(1.into(), (basis.len() as i64).into())))
    }
}

/// `(join of all v-degrees) + (1,1)`.
pub fn default_stratum<'a>(elements: impl IntoIterator<Item = &'a Element>) -> Degree {
    elements
        .into_iter()
        .flat_map(|a| a.terms().map(|(t, _)| t.v.degree()))
        .fold(Degree::ZERO, Degree::join)
        + Degree::new(1, 1)
}

/// Smallest window that covers [`GradedActionModel::oracle_product`] for the
/// given factors.
pub fn window_for<'a>(elements: impl IntoIterator<Item = &'a Element>) -> i64 {
    let (mut u, mut v) = (Degree::ZERO, Degree::ZERO);
    for a in elements {
        for (t, _) in a.terms() {
            u = u.join(t.u.degree());
            v = v.join(t.v.degree());
        }
    }
    let top = u.join(v) + u + v + Degree::new(1, 1);
    top.e.max(top.f)
}

fn vectors_equal(x: &Vector, y: &Vector) -> bool {
    let zero = ExactScalar::zero();
    x.keys()
        .chain(y.keys())
        .all(|w| (x.get(w).unwrap_or(&zero) - y.get(w).unwrap_or(&zero)).is_zero())
}
