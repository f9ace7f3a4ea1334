//! The dense *-algebra spanned by standard generators `S[u;v] = s_u s_v*`.
//!
//! Elements are kept in canonical form: terms are grouped by degree
//! difference `d(u) - d(v)`, and within a group every term is raised through
//! the defect-free sums to the componentwise-maximal v-degree of the group.
//! Generators sharing a degree difference and a v-degree behave like matrix
//! units, so two elements are equal iff the canonical form of their
//! difference is empty.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Gaussian};
use crate::semigroup::{Degree, Permutation2D, Word};

/// A standard generator `s_u s_v*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenTerm {
    pub u: Word,
    pub v: Word,
}

impl GenTerm {
    pub fn new(u: Word, v: Word) -> Self {
        GenTerm { u, v }
    }

    pub fn identity() -> Self {
        GenTerm::new(Word::empty(), Word::empty())
    }

    /// `d(u) - d(v)`.
    pub fn degree(&self) -> Degree {
        self.u.degree() - self.v.degree()
    }

    pub fn adjoint(&self) -> GenTerm {
        GenTerm::new(self.v.clone(), self.u.clone())
    }
}

// Ordered by (degree difference, v, u).
impl Ord for GenTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.v.cmp(&other.v))
            .then_with(|| self.u.cmp(&other.u))
    }
}

impl PartialOrd for GenTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{};{}]", self.u, self.v)
    }
}

/// Which subalgebra a membership test targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    /// The gauge-fixed core.
    Core,
    /// The diagonal masa.
    Diagonal,
}

/// A finite linear combination of standard generators.
#[derive(Clone, Debug)]
pub struct Element {
    theta: Arc<Permutation2D>,
    terms: BTreeMap<GenTerm, ExactScalar>,
}

impl Element {
    pub fn zero(theta: &Arc<Permutation2D>) -> Self {
        Element {
            theta: theta.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `I = S[∅;∅]`.
    pub fn identity(theta: &Arc<Permutation2D>) -> Self {
        Element::generator(theta, Word::empty(), Word::empty())
    }

    pub fn generator(theta: &Arc<Permutation2D>, u: Word, v: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(GenTerm::new(u, v), ExactScalar::one());
        Element {
            theta: theta.clone(),
            terms,
        }
    }

    /// `s_w`.
    pub fn isometry(theta: &Arc<Permutation2D>, w: Word) -> Self {
        Element::generator(theta, w, Word::empty())
    }

    pub fn scalar(theta: &Arc<Permutation2D>, c: ExactScalar) -> Self {
        Element::from_terms(theta, [(GenTerm::identity(), c)])
    }

    /// Sums the given terms and canonicalizes.
    pub fn from_terms(theta: &Arc<Permutation2D>, terms: impl IntoIterator<Item = (GenTerm, ExactScalar)>) -> Self {
        Element {
            theta: theta.clone(),
            terms: canonical_terms(theta, terms),
        }
    }

    pub fn theta(&self) -> &Arc<Permutation2D> {
        &self.theta
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenTerm, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &GenTerm) -> ExactScalar {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    fn same_theta(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.theta, &other.theta) || self.theta == other.theta {
            Ok(())
        } else {
            Err(Error::ThetaMismatch)
        }
    }

    /// Re-runs canonicalization. Elements are canonical on construction, so
    /// this is the identity up to representation.
    pub fn canonicalize(&self) -> Element {
        Element::from_terms(&self.theta, self.terms.clone())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.same_theta(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(t, c)| (t.clone(), c.clone()));
        Ok(Element::from_terms(&self.theta, terms))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &ExactScalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.theta);
        }
        let terms = self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect();
        Element {
            theta: self.theta.clone(),
            terms,
        }
    }

    /// Product via the common-extension kernel:
    /// `S[u1;v1]·S[u2;v2] = Σ S[u1·w1; v2·w2]` over `v1·w1 = u2·w2`.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.same_theta(other)?;
        let theta = &*self.theta;
        let mut cache: HashMap<(&Word, &Word), Vec<(Word, Word)>> = HashMap::new();
        let mut out = Vec::new();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let ext = cache
                    .entry((&t2.u, &t1.v))
                    .or_insert_with(|| theta.common_extensions(&t2.u, &t1.v));
                if ext.is_empty() {
                    continue;
                }
                let c = c1 * c2;
                for (w1, w2) in ext.iter() {
                    out.push((
                        GenTerm::new(theta.concat(&t1.u, w1), theta.concat(&t2.v, w2)),
                        c.clone(),
                    ));
                }
            }
        }
        Ok(Element::from_terms(&self.theta, out))
    }

    /// `S[u;v]* = S[v;u]`, coefficients conjugated.
    pub fn adjoint(&self) -> Element {
        let terms = self.terms.iter().map(|(t, c)| (t.adjoint(), c.conj()));
        Element::from_terms(&self.theta, terms)
    }

    /// Keeps the terms of degree difference `delta`.
    pub fn phi_n(&self, delta: Degree) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(t, _)| t.degree() == delta)
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        Element {
            theta: self.theta.clone(),
            terms,
        }
    }

    /// The expectation onto the core, `phi_n(·, (0,0))`.
    pub fn phi(&self) -> Element {
        self.phi_n(Degree::ZERO)
    }

    /// Degree differences present in the canonical form.
    pub fn support(&self) -> Vec<Degree> {
        let mut out: Vec<Degree> = self.terms.keys().map(GenTerm::degree).collect();
        out.dedup();
        out
    }

    /// Common v-degree of the group with degree difference `delta`.
    pub fn group_level(&self, delta: Degree) -> Option<Degree> {
        self.terms.keys().find(|t| t.degree() == delta).map(|t| t.v.degree())
    }

    /// Gauge action with exact torus point `t = (t1, t2)`, `|t1| = |t2| = 1`.
    pub fn gauge_apply(&self, t1: &Gaussian, t2: &Gaussian) -> Result<Element> {
        for t in [t1, t2] {
            if !t.is_unit() {
                return Err(Error::NotUnitModulus(t.to_string()));
            }
        }
        let mut cache: HashMap<Degree, ExactScalar> = HashMap::new();
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let d = t.degree();
                let factor = cache.entry(d).or_insert_with(|| {
                    let a = t1.powi(d.e).expect("unit");
                    let b = t2.powi(d.f).expect("unit");
                    ExactScalar::from_gaussian(&a * &b)
                });
                (t.clone(), c * factor)
            })
            .collect();
        Ok(Element {
            theta: self.theta.clone(),
            terms,
        })
    }

    /// Gauge action at a floating-point torus point.
    pub fn gauge_apply_float(&self, t1: Complex64, t2: Complex64, tol: f64) -> Result<FloatElement> {
        for t in [t1, t2] {
            if (t.norm() - 1.0).abs() > tol {
                return Err(Error::NotUnitModulus(t.to_string()));
            }
        }
        Ok(FloatElement::from(self).map_terms(|t, c| c * t1.powi(t.degree().e as i32) * t2.powi(t.degree().f as i32)))
    }

    /// `A·A* = I` and `A*·A = I`.
    pub fn is_unitary(&self) -> bool {
        let one = Element::identity(&self.theta);
        let adj = self.adjoint();
        self * &adj == one && &adj * self == one
    }

    /// Membership in the core or diagonal at level `k`, i.e. in the span of
    /// `S[u;v]` (resp. `S[w;w]`) with words of degree `(k, k)`.
    pub fn membership(&self, which: Subalgebra, k: i64) -> bool {
        let level = Degree::new(k, k);
        if self.terms.keys().any(|t| !t.degree().is_zero()) {
            return false;
        }
        let Some(lowered) = self.lower_group(Degree::ZERO, level) else {
            return false;
        };
        match which {
            Subalgebra::Core => true,
            Subalgebra::Diagonal => lowered.iter().all(|(t, _)| t.u == t.v),
        }
    }

    /// Tries to express the group of degree difference `delta` with common
    /// v-degree `level`; returns the terms at that level if possible.
    pub fn lower_group(&self, delta: Degree, level: Degree) -> Option<Vec<(GenTerm, ExactScalar)>> {
        let theta = &*self.theta;
        let group: Vec<(&GenTerm, &ExactScalar)> = self.terms.iter().filter(|(t, _)| t.degree() == delta).collect();
        if group.is_empty() {
            return Some(Vec::new());
        }
        if !(level + delta).is_nonnegative() || !level.is_nonnegative() {
            return None;
        }
        let current = group[0].0.v.degree();
        let top = current.join(level);
        let raised: BTreeMap<GenTerm, ExactScalar> = if top == current {
            group.iter().map(|(t, c)| ((*t).clone(), (*c).clone())).collect()
        } else {
            canonical_terms(
                &self.theta,
                group.iter().flat_map(|(t, c)| raise_terms(theta, t, top - current, c)),
            )
        };
        let step = top - level;
        let fiber = theta.count_words(step);
        let mut lowered: BTreeMap<GenTerm, (ExactScalar, std::collections::BTreeSet<Word>)> = BTreeMap::new();
        for (t, c) in &raised {
            let (u0, wu) = theta.factor_at(&t.u, level + delta).ok()?;
            let (v0, wv) = theta.factor_at(&t.v, level).ok()?;
            if wu != wv {
                return None;
            }
            let entry = lowered
                .entry(GenTerm::new(u0, v0))
                .or_insert_with(|| (c.clone(), std::collections::BTreeSet::new()));
            if &entry.0 != c {
                return None;
            }
            entry.1.insert(wu);
        }
        if lowered.values().any(|(_, ws)| ws.len() != fiber) {
            return None;
        }
        Some(lowered.into_iter().map(|(t, (c, _))| (t, c)).collect())
    }

    /// Sum over all words `w` of degree `delta` of `s_w · self · s_w*`.
    pub fn conjugate_sum(&self, delta: Degree) -> Element {
        let theta = &*self.theta;
        let words = theta.enumerate_words(delta);
        let terms = self.terms.iter().flat_map(|(t, c)| {
            words
                .iter()
                .map(move |w| (GenTerm::new(theta.concat(w, &t.u), theta.concat(w, &t.v)), c.clone()))
        });
        Element::from_terms(&self.theta, terms.collect::<Vec<_>>())
    }
}

/// `S[u;v] = Σ_{d(w)=delta} S[u·w; v·w]` as an Element.
pub fn raise_level(theta: &Arc<Permutation2D>, t: &GenTerm, delta: Degree) -> Element {
    Element::from_terms(theta, raise_terms(theta, t, delta, &ExactScalar::one()))
}

fn raise_terms(theta: &Permutation2D, t: &GenTerm, delta: Degree, c: &ExactScalar) -> Vec<(GenTerm, ExactScalar)> {
    if delta.is_zero() {
        return vec![(t.clone(), c.clone())];
    }
    theta
        .enumerate_words(delta)
        .into_iter()
        .map(|w| (GenTerm::new(theta.concat(&t.u, &w), theta.concat(&t.v, &w)), c.clone()))
        .collect()
}

fn canonical_terms(
    theta: &Permutation2D,
    terms: impl IntoIterator<Item = (GenTerm, ExactScalar)>,
) -> BTreeMap<GenTerm, ExactScalar> {
    let mut groups: BTreeMap<Degree, Vec<(GenTerm, ExactScalar)>> = BTreeMap::new();
    for (t, c) in terms {
        if !c.is_zero() {
            groups.entry(t.degree()).or_default().push((t, c));
        }
    }
    let mut out = BTreeMap::new();
    for (_, group) in groups {
        let top = group.iter().map(|(t, _)| t.v.degree()).fold(Degree::ZERO, Degree::join);
        for (t, c) in group {
            let lift = top - t.v.degree();
            for (rt, rc) in raise_terms(theta, &t, lift, &c) {
                accumulate(&mut out, rt, rc);
            }
        }
    }
    out
}

fn accumulate(out: &mut BTreeMap<GenTerm, ExactScalar>, t: GenTerm, c: ExactScalar) {
    use std::collections::btree_map::Entry;
    match out.entry(t) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(&c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl PartialEq for Element {
    /// Exact equality in the algebra.
    fn eq(&self, other: &Element) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("theta mismatch")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("theta mismatch")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("theta mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let terms = self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect();
        Element {
            theta: self.theta.clone(),
            terms,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $f(self, rhs: Element) -> Element {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{t}")?;
            } else if c.terms().count() == 1 {
                write!(f, "{c}*{t}")?;
            } else {
                write!(f, "({c})*{t}")?;
            }
        }
        Ok(())
    }
}

/// `Σ_k phase_k · S[w_perm(k); w_k]` over the words of degree `delta`.
pub fn permutation_unitary(
    theta: &Arc<Permutation2D>,
    delta: Degree,
    perm: &[usize],
    phases: &[Gaussian],
) -> Result<Element> {
    let words = theta.enumerate_words(delta);
    if perm.len() != words.len() || phases.len() != words.len() {
        return Err(Error::NotAPermutation(format!(
            "need {} entries, got perm {} and phases {}",
            words.len(),
            perm.len(),
            phases.len()
        )));
    }
    let mut seen = vec![false; words.len()];
    for &p in perm {
        if p >= words.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotAPermutation(format!("{perm:?}")));
        }
    }
    if let Some(bad) = phases.iter().find(|p| !p.is_unit()) {
        return Err(Error::NotUnitModulus(bad.to_string()));
    }
    let terms = words.iter().enumerate().map(|(k, w)| {
        (
            GenTerm::new(words[perm[k]].clone(), w.clone()),
            ExactScalar::from_gaussian(phases[k].clone()),
        )
    });
    Ok(Element::from_terms(theta, terms.collect::<Vec<_>>()))
}

/// Coefficients evaluated in floating point; used for the modular group at
/// real times and for gauge actions at irrational torus points.
#[derive(Clone, Debug, Default)]
pub struct FloatElement {
    pub terms: BTreeMap<GenTerm, Complex64>,
}

impl FloatElement {
    pub fn map_terms(self, f: impl Fn(&GenTerm, Complex64) -> Complex64) -> FloatElement {
        FloatElement {
            terms: self
                .terms
                .into_iter()
                .map(|(t, c)| {
                    let v = f(&t, c);
                    (t, v)
                })
                .collect(),
        }
    }

    /// Largest coefficientwise distance to `other` over the union of supports.
    pub fn max_residual(&self, other: &FloatElement) -> f64 {
        let zero = Complex64::new(0.0, 0.0);
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|t| {
                let a = self.terms.get(t).copied().unwrap_or(zero);
                let b = other.terms.get(t).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

impl From<&Element> for FloatElement {
    fn from(e: &Element) -> Self {
        FloatElement {
            terms: e.terms.iter().map(|(t, c)| (t.clone(), c.to_float())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::parse_word;

    fn flip() -> Arc<Permutation2D> {
        Arc::new(Permutation2D::flip(2, 2).unwrap())
    }

    fn ident() -> Arc<Permutation2D> {
        Arc::new(Permutation2D::identity(2, 3).unwrap())
    }

    fn s(theta: &Arc<Permutation2D>, u: &str, v: &str) -> Element {
        Element::generator(theta, parse_word(theta, u).unwrap(), parse_word(theta, v).unwrap())
    }

    #[test]
    fn product_examples() {
        let t = ident();
        assert_eq!(&s(&t, "e1", "id") * &s(&t, "id", "e1"), s(&t, "e1", "e1"));
        assert!((&s(&t, "id", "e2") * &s(&t, "e1", "id")).is_zero());
        let f = flip();
        let lhs = &s(&f, "id", "f1") * &s(&f, "e1", "id");
        assert_eq!(lhs, &s(&f, "e1", "f1") + &s(&f, "e2", "f2"));
    }

    #[test]
    fn adjoint_examples() {
        let t = ident();
        assert_eq!(s(&t, "e1", "f2").adjoint(), s(&t, "f2", "e1"));
        let c = Element::scalar(&t, ExactScalar::from_gaussian(Gaussian::from_ints(1, 1)));
        assert_eq!(
            c.adjoint(),
            Element::scalar(&t, ExactScalar::from_gaussian(Gaussian::from_ints(1, -1)))
        );
    }

    #[test]
    fn raise_level_examples() {
        let t = ident();
        let r = raise_level(&t, &GenTerm::new(Word::e(1), Word::e(1)), Degree::new(0, 1));
        assert_eq!(r.num_terms(), 3);
        let f = flip();
        let r = raise_level(&f, &GenTerm::new(Word::e(1), Word::e(1)), Degree::new(0, 1));
        assert_eq!(r.to_string(), "S[e1.f1;e1.f1] + S[e1.f2;e1.f2]");
        let r = raise_level(&f, &GenTerm::identity(), Degree::new(1, 0));
        assert_eq!(r.to_string(), "S[e1;e1] + S[e2;e2]");
        assert_eq!(r, Element::identity(&f));
        let g = GenTerm::new(Word::e(1), Word::f(2));
        assert_eq!(raise_level(&f, &g, Degree::ZERO).to_string(), "S[e1;f2]");
    }

    #[test]
    fn canonicalize_examples() {
        let f = flip();
        let x = &(&s(&f, "e1", "e1") + &s(&f, "e2", "e2")) - &Element::identity(&f);
        assert!(x.is_zero());
        let y = &(&s(&f, "id", "f1") * &s(&f, "e1", "id")) - &(&s(&f, "e1", "f1") + &s(&f, "e2", "f2"));
        assert!(y.is_zero());
        // flip relates e- and f-matrix units
        assert_eq!(s(&f, "e1", "e2"), s(&f, "f1", "f2"));
    }

    #[test]
    fn grading() {
        let t = ident();
        let x = &s(&t, "e1", "id") + &s(&t, "e1", "f1");
        assert_eq!(x.phi_n(Degree::new(1, 0)), s(&t, "e1", "id"));
        assert!(s(&t, "e1", "id").phi().is_zero());
        let core = s(&t, "e1.f1", "e2.f3");
        assert_eq!(core.phi(), core);
    }

    #[test]
    fn gauge() {
        let t = ident();
        let x = s(&t, "e1", "f1");
        let i = Gaussian::i();
        assert_eq!(x.gauge_apply(&i, &Gaussian::one()).unwrap(), x.scale(&ExactScalar::i()));
        let core = s(&t, "e1.f1", "e2.f2");
        assert_eq!(core.gauge_apply(&i, &i).unwrap(), core);
        let m1 = Gaussian::from_ints(-1, 0);
        let y = &x + &s(&t, "e1.e2", "f1");
        let twice = y
            .gauge_apply(&m1, &Gaussian::one())
            .unwrap()
            .gauge_apply(&m1, &Gaussian::one())
            .unwrap();
        assert_eq!(twice, y);
        assert!(matches!(
            x.gauge_apply(&Gaussian::from_ints(1, 1), &i),
            Err(Error::NotUnitModulus(_))
        ));
    }

    #[test]
    fn unitarity() {
        let t = ident();
        assert!(Element::identity(&t).is_unitary());
        assert!((&s(&t, "e1", "e2") + &s(&t, "e2", "e1")).is_unitary());
        assert!(!s(&t, "e1", "e1").is_unitary());
    }

    #[test]
    fn membership_examples() {
        let f = flip();
        let x = s(&f, "e1.f1", "e1.f1");
        assert!(x.membership(Subalgebra::Diagonal, 1));
        assert!(x.membership(Subalgebra::Core, 1));
        let y = s(&f, "e1.f1", "e2.f1");
        assert!(y.membership(Subalgebra::Core, 1));
        assert!(!y.membership(Subalgebra::Diagonal, 1));
        let z = s(&f, "e1", "id");
        assert!(!z.membership(Subalgebra::Core, 1));
        assert!(!z.membership(Subalgebra::Diagonal, 1));
        // level-2 generator is not in the level-1 core
        let w = s(&f, "e1.e1.f1.f1", "e1.e2.f1.f1");
        assert!(!w.membership(Subalgebra::Core, 1));
        assert!(w.membership(Subalgebra::Core, 2));
        // written at a high level but actually lower
        let t = ident();
        let hi = &s(&t, "e1.e1", "e1.e1") + &s(&t, "e1.e2", "e1.e2");
        assert!(hi.membership(Subalgebra::Diagonal, 1));
    }

    #[test]
    fn permutation_unitaries() {
        let f = flip();
        let u = permutation_unitary(&f, Degree::new(1, 0), &[1, 0], &[Gaussian::one(), Gaussian::one()]).unwrap();
        assert_eq!(u, &s(&f, "e1", "e2") + &s(&f, "e2", "e1"));
        let one = permutation_unitary(&f, Degree::ZERO, &[0], &[Gaussian::one()]).unwrap();
        assert_eq!(one, Element::identity(&f));
        let phases = [Gaussian::i(), Gaussian::one(), Gaussian::one(), Gaussian::one()];
        let d = permutation_unitary(&f, Degree::new(1, 1), &[0, 1, 2, 3], &phases).unwrap();
        assert!(d.is_unitary());
        assert!(permutation_unitary(&f, Degree::new(1, 0), &[0, 0], &[Gaussian::one(), Gaussian::one()]).is_err());
        assert!(permutation_unitary(
            &f,
            Degree::new(1, 0),
            &[0, 1],
            &[Gaussian::from_ints(2, 0), Gaussian::one()]
        )
        .is_err());
    }

    #[test]
    fn theta_mismatch() {
        let a = Element::identity(&flip());
        let b = Element::identity(&ident());
        assert!(matches!(a.try_mul(&b), Err(Error::ThetaMismatch)));
    }
}
