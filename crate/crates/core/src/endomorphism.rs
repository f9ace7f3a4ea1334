//! Unital endomorphisms through twisted unitary pairs.
//!
//! A pair of unitaries `(U, V)` with `U·λ_ε1(V) = V·λ_ε2(U)` determines the
//! endomorphism `s_ei ↦ U s_ei`, `s_fj ↦ V s_fj`, and every unital
//! endomorphism arises this way from `(Σ λ(s_ei) s_ei*, Σ λ(s_fj) s_fj*)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Element, GenTerm, Subalgebra};
use crate::error::{Error, Result};
use crate::semigroup::{Degree, Index, Permutation2D, Word};

/// `λ_(p,q)(X) = Σ_{d(w)=(p,q)} s_w X s_w*`.
pub fn canonical_endo_apply(p: i64, q: i64, x: &Element) -> Element {
    x.conjugate_sum(Degree::new(p, q))
}

pub fn lambda_e1(x: &Element) -> Element {
    canonical_endo_apply(1, 0, x)
}

pub fn lambda_e2(x: &Element) -> Element {
    canonical_endo_apply(0, 1, x)
}

/// Outcome of [`twisted_check`].
#[derive(Clone, Debug)]
pub struct TwistedReport {
    pub u_unitary: bool,
    pub v_unitary: bool,
    /// `U·λ_ε1(V) - V·λ_ε2(U)`.
    pub residual: Element,
}

impl TwistedReport {
    pub fn holds(&self) -> bool {
        self.u_unitary && self.v_unitary && self.residual.is_zero()
    }
}

pub fn twisted_check(u: &Element, v: &Element) -> Result<TwistedReport> {
    let left = u.try_mul(&lambda_e1(v))?;
    let right = v.try_mul(&lambda_e2(u))?;
    Ok(TwistedReport {
        u_unitary: u.is_unitary(),
        v_unitary: v.is_unitary(),
        residual: left.try_sub(&right)?,
    })
}

/// A twisted pair together with `W = U·λ_ε1(V) = V·λ_ε2(U)`.
#[derive(Clone, Debug)]
pub struct UnitaryPair {
    u: Element,
    v: Element,
    w: Element,
}

impl UnitaryPair {
    pub fn new(u: Element, v: Element) -> Result<Self> {
        let report = twisted_check(&u, &v)?;
        if !report.u_unitary {
            return Err(Error::NotUnitary(format!("U = {u}")));
        }
        if !report.v_unitary {
            return Err(Error::NotUnitary(format!("V = {v}")));
        }
        if !report.residual.is_zero() {
            return Err(Error::NotTwisted(format!("residual {}", report.residual)));
        }
        let w = &u * &lambda_e1(&v);
        Ok(UnitaryPair { u, v, w })
    }

    pub fn identity(theta: &Arc<Permutation2D>) -> Self {
        let one = Element::identity(theta);
        UnitaryPair {
            u: one.clone(),
            v: one.clone(),
            w: one,
        }
    }

    pub fn u(&self) -> &Element {
        &self.u
    }

    pub fn v(&self) -> &Element {
        &self.v
    }

    pub fn w(&self) -> &Element {
        &self.w
    }

    pub fn theta(&self) -> &Arc<Permutation2D> {
        self.u.theta()
    }

    /// Canonical equality of both components.
    pub fn same_as(&self, other: &UnitaryPair) -> bool {
        self.u == other.u && self.v == other.v
    }
}

/// `λ_(p,q)` as a pair:
/// `U = Σ_i Σ_{d(w)=(p,q)} S[w·e_i; e_i·w]`, `V = Σ_j Σ_w S[w·f_j; f_j·w]`.
pub fn canonical_pair(theta: &Arc<Permutation2D>, p: i64, q: i64) -> Result<UnitaryPair> {
    let words = theta.enumerate_words(Degree::new(p, q));
    let build = |letters: Vec<Word>| {
        let terms = letters.iter().flat_map(|l| {
            words.iter().map(move |w| {
                (
                    GenTerm::new(theta.concat(w, l), theta.concat(l, w)),
                    crate::ExactScalar::one(),
                )
            })
        });
        Element::from_terms(theta, terms.collect::<Vec<_>>())
    };
    let u = build((1..=theta.m()).map(Word::e).collect());
    let v = build((1..=theta.n()).map(Word::f).collect());
    UnitaryPair::new(u, v)
}

/// The endomorphism `λ_(U,V)`.
#[derive(Debug)]
pub struct Endomorphism {
    pair: UnitaryPair,
    e_images: Vec<Element>,
    f_images: Vec<Element>,
    word_images: Mutex<HashMap<Word, Element>>,
}

impl Clone for Endomorphism {
    fn clone(&self) -> Self {
        Endomorphism {
            pair: self.pair.clone(),
            e_images: self.e_images.clone(),
            f_images: self.f_images.clone(),
            word_images: Mutex::new(HashMap::new()),
        }
    }
}

impl Endomorphism {
    /// Builds `λ_(U,V)` from a twisted pair and asserts the commutation
    /// relations on the generator images.
    pub fn from_pair(pair: UnitaryPair) -> Result<Self> {
        let theta = pair.theta().clone();
        let e_images = (1..=theta.m())
            .map(|i| &pair.u * &Element::isometry(&theta, Word::e(i)))
            .collect();
        let f_images = (1..=theta.n())
            .map(|j| &pair.v * &Element::isometry(&theta, Word::f(j)))
            .collect();
        let endo = Endomorphism {
            pair,
            e_images,
            f_images,
            word_images: Mutex::new(HashMap::new()),
        };
        // one mixed word: e-first image vs f-first image
        let (ip, jp) = theta.apply(1, 1);
        let lhs = &endo.e_images[0] * &endo.f_images[0];
        let rhs = &endo.f_images[jp as usize - 1] * &endo.e_images[ip as usize - 1];
        if lhs != rhs {
            return Err(Error::RelationsViolated(format!("e1 f1 = f{jp} e{ip}")));
        }
        Ok(endo)
    }

    pub fn identity(theta: &Arc<Permutation2D>) -> Self {
        Endomorphism::from_pair(UnitaryPair::identity(theta)).expect("identity pair")
    }

    pub fn pair(&self) -> &UnitaryPair {
        &self.pair
    }

    pub fn theta(&self) -> &Arc<Permutation2D> {
        self.pair.theta()
    }

    /// `(λ(s_e1), …, λ(s_em))` and `(λ(s_f1), …, λ(s_fn))`.
    pub fn generator_images(&self) -> (&[Element], &[Element]) {
        (&self.e_images, &self.f_images)
    }

    /// `λ(s_w)`, multiplying letter images along the e-first factorization.
    pub fn image_of_word(&self, w: &Word) -> Element {
        if let Some(x) = self.word_images.lock().expect("cache").get(w) {
            return x.clone();
        }
        let theta = self.theta();
        let mut acc = Element::identity(theta);
        for &i in w.e_block() {
            acc = &acc * &self.e_images[i as usize - 1];
        }
        for &j in w.f_block() {
            acc = &acc * &self.f_images[j as usize - 1];
        }
        self.word_images.lock().expect("cache").insert(w.clone(), acc.clone());
        acc
    }

    /// Multiplicative *-extension: `λ(S[u;v]) = λ(s_u)·λ(s_v)*`.
    pub fn apply(&self, x: &Element) -> Element {
        let theta = self.theta();
        let mut acc = Element::zero(theta);
        for (t, c) in x.terms() {
            let img = &self.image_of_word(&t.u) * &self.image_of_word(&t.v).adjoint();
            acc = &acc + &img.scale(c);
        }
        acc
    }

    /// Lemma-style automorphism witness: `λ(U0) = U*` and `λ(V0) = V*`.
    pub fn automorphism_witness_check(&self, u0: &Element, v0: &Element) -> bool {
        self.apply(u0) == self.pair.u.adjoint() && self.apply(v0) == self.pair.v.adjoint()
    }
}

/// Recovers the pair `(Σ λ(s_ei) s_ei*, Σ λ(s_fj) s_fj*)` from generator images.
pub fn pair_from_generator_map(
    theta: &Arc<Permutation2D>,
    e_images: &[Element],
    f_images: &[Element],
) -> Result<UnitaryPair> {
    if e_images.len() != theta.m() as usize || f_images.len() != theta.n() as usize {
        return Err(Error::RelationsViolated(format!(
            "expected {} e-images and {} f-images",
            theta.m(),
            theta.n()
        )));
    }
    for i in 1..=theta.m() {
        for j in 1..=theta.n() {
            let (ip, jp) = theta.apply(i, j);
            let lhs = &e_images[i as usize - 1] * &f_images[j as usize - 1];
            let rhs = &f_images[jp as usize - 1] * &e_images[ip as usize - 1];
            if lhs != rhs {
                return Err(Error::RelationsViolated(format!("e{i} f{j} = f{jp} e{ip}")));
            }
        }
    }
    let collect = |imgs: &[Element], letter: fn(Index) -> Word| {
        let mut acc = Element::zero(theta);
        for (k, img) in imgs.iter().enumerate() {
            acc = &acc + &(img * &Element::generator(theta, Word::empty(), letter(k as Index + 1)));
        }
        acc
    };
    let u = collect(e_images, Word::e);
    let v = collect(f_images, Word::f);
    for (k, img) in e_images.iter().enumerate() {
        if &(&u * &Element::isometry(theta, Word::e(k as Index + 1))) != img {
            return Err(Error::RelationsViolated(format!(
                "image of e{} is not U·s_e{}",
                k + 1,
                k + 1
            )));
        }
    }
    for (k, img) in f_images.iter().enumerate() {
        if &(&v * &Element::isometry(theta, Word::f(k as Index + 1))) != img {
            return Err(Error::RelationsViolated(format!(
                "image of f{} is not V·s_f{}",
                k + 1,
                k + 1
            )));
        }
    }
    UnitaryPair::new(u, v)
}

/// Pair of the composite `λ2 ∘ λ1`: `(λ2(U1)·U2, λ2(V1)·V2)`.
pub fn compose(l2: &Endomorphism, l1: &Endomorphism) -> Result<UnitaryPair> {
    let u = l2.apply(l1.pair.u()).try_mul(l2.pair.u())?;
    let v = l2.apply(l1.pair.v()).try_mul(l2.pair.v())?;
    UnitaryPair::new(u, v)
}

/// Semigroup product of pairs, `(U2,V2)·(U1,V1)`.
pub fn pair_product(p2: &UnitaryPair, p1: &UnitaryPair) -> Result<UnitaryPair> {
    compose(
        &Endomorphism::from_pair(p2.clone())?,
        &Endomorphism::from_pair(p1.clone())?,
    )
}

/// `(W·λ_ε1(W)*, W·λ_ε2(W)*)`, the pair of `Ad(W)`.
pub fn inner_pair(w: &Element) -> Result<UnitaryPair> {
    if !w.is_unitary() {
        return Err(Error::NotUnitary(format!("W = {w}")));
    }
    let u = w * &lambda_e1(w).adjoint();
    let v = w * &lambda_e2(w).adjoint();
    UnitaryPair::new(u, v)
}

/// Outcome of [`ad_product_check`].
#[derive(Clone, Debug)]
pub struct AdProductReport {
    pub holds: bool,
    pub checked: usize,
    pub first_failure: Option<GenTerm>,
}

/// `W_k = W·λ_(1,1)(W)⋯λ_(1,1)^(k-1)(W)`.
pub fn ad_product_unitary(pair: &UnitaryPair, k: i64) -> Element {
    let mut acc = pair.w().clone();
    let mut layer = pair.w().clone();
    for _ in 1..k {
        layer = canonical_endo_apply(1, 1, &layer);
        acc = &acc * &layer;
    }
    acc
}

/// Checks `λ(X) = Ad(W_k)(X)` on every generator `S[u;v]` with
/// `d(u) = d(v) = (k, k)`.
pub fn ad_product_check(endo: &Endomorphism, k: i64) -> AdProductReport {
    let theta = endo.theta();
    let wk = ad_product_unitary(endo.pair(), k);
    let words = theta.enumerate_words(Degree::new(k, k));
    let lam: Vec<Element> = words.iter().map(|u| endo.image_of_word(u)).collect();
    let ad: Vec<Element> = words
        .iter()
        .map(|u| &wk * &Element::isometry(theta, u.clone()))
        .collect();
    let lam_adj: Vec<Element> = lam.iter().map(Element::adjoint).collect();
    let ad_adj: Vec<Element> = ad.iter().map(Element::adjoint).collect();
    let mut checked = 0;
    for (a, u) in words.iter().enumerate() {
        for (b, v) in words.iter().enumerate() {
            checked += 1;
            if &lam[a] * &lam_adj[b] != &ad[a] * &ad_adj[b] {
                return AdProductReport {
                    holds: false,
                    checked,
                    first_failure: Some(GenTerm::new(u.clone(), v.clone())),
                };
            }
        }
    }
    AdProductReport {
        holds: true,
        checked,
        first_failure: None,
    }
}

/// Membership of an element in the core (resp. diagonal) at any level.
pub fn in_subalgebra(x: &Element, which: Subalgebra) -> bool {
    match x.group_level(Degree::ZERO) {
        None => x.is_zero(),
        Some(level) => x.membership(which, level.e.max(level.f)),
    }
}

/// Level-`k` necessary condition for `λ(𝔉) ⊆ 𝔉` (resp. `λ(𝔇) ⊆ 𝔇`): every
/// basis generator of the level-`k` core (resp. diagonal) is mapped into it.
pub fn preserves_subalgebra_level(endo: &Endomorphism, which: Subalgebra, k: i64) -> bool {
    let theta = endo.theta();
    let words = theta.enumerate_words(Degree::new(k, k));
    let basis: Vec<GenTerm> = match which {
        Subalgebra::Core => words
            .iter()
            .flat_map(|u| words.iter().map(move |v| GenTerm::new(u.clone(), v.clone())))
            .collect(),
        Subalgebra::Diagonal => words.iter().map(|w| GenTerm::new(w.clone(), w.clone())).collect(),
    };
    basis
        .into_iter()
        .all(|t| in_subalgebra(&endo.apply(&Element::generator(theta, t.u, t.v)), which))
}

/// Named pairs from the example gallery.
#[derive(Clone, Debug)]
pub enum Gallery {
    /// Flip relation: `(U, U)` for any unitary `U`.
    Ex39(Element),
    /// `(U, V)` with `UV = VU`, `U` commuting with every `s_fj`, `V` with every `s_ei`.
    Ex310(Element, Element),
    /// Identity relation: `U` built from e-generators only, `V` from f-generators only.
    Ex311(Element, Element),
    /// Flip relation, `m = n`: `(Σ S[f_j;e_j], Σ S[e_j;f_j])`.
    Ex312,
    /// Identity relation, `m = n`: `(U, U*)` with `U = Σ S[f_j;e_j]`.
    Ex313,
    Canonical(i64, i64),
    Inner(Element),
}

pub fn is_flip(theta: &Permutation2D) -> bool {
    Permutation2D::flip(theta.m(), theta.n()).is_ok_and(|f| &f == theta)
}

pub fn is_identity(theta: &Permutation2D) -> bool {
    Permutation2D::identity(theta.m(), theta.n()).is_ok_and(|f| &f == theta)
}

/// `Σ_j S[f_j; e_j]` (requires `m = n`).
pub fn mixing_unitary(theta: &Arc<Permutation2D>) -> Element {
    let terms = (1..=theta.m()).map(|j| (GenTerm::new(Word::f(j), Word::e(j)), crate::ExactScalar::one()));
    Element::from_terms(theta, terms.collect::<Vec<_>>())
}

pub fn gallery(theta: &Arc<Permutation2D>, which: &Gallery) -> Result<UnitaryPair> {
    match which {
        Gallery::Ex39(u) => {
            if !is_flip(theta) {
                return Err(Error::WrongTheta("ex39 needs the flip relation".into()));
            }
            UnitaryPair::new(u.clone(), u.clone())
        }
        Gallery::Ex310(u, v) => {
            let commute = |a: &Element, b: &Element| a * b == b * a;
            if !commute(u, v) {
                return Err(Error::NotTwisted("ex310 needs UV = VU".into()));
            }
            for j in 1..=theta.n() {
                if !commute(u, &Element::isometry(theta, Word::f(j))) {
                    return Err(Error::NotTwisted(format!("ex310 needs U to commute with s_f{j}")));
                }
            }
            for i in 1..=theta.m() {
                if !commute(v, &Element::isometry(theta, Word::e(i))) {
                    return Err(Error::NotTwisted(format!("ex310 needs V to commute with s_e{i}")));
                }
            }
            UnitaryPair::new(u.clone(), v.clone())
        }
        Gallery::Ex311(u, v) => {
            if !is_identity(theta) {
                return Err(Error::WrongTheta("ex311 needs the identity relation".into()));
            }
            let only = |x: &Element, e_side: bool| {
                x.terms().all(|(t, _)| {
                    [&t.u, &t.v].iter().all(|w| {
                        if e_side {
                            w.f_block().is_empty()
                        } else {
                            w.e_block().is_empty()
                        }
                    })
                })
            };
            if !only(u, true) || !only(v, false) {
                return Err(Error::WrongTheta("ex311 needs U in C*(s_e) and V in C*(s_f)".into()));
            }
            UnitaryPair::new(u.clone(), v.clone())
        }
        Gallery::Ex312 => {
            if !is_flip(theta) {
                return Err(Error::WrongTheta("ex312 needs the flip relation with m = n".into()));
            }
            let u = mixing_unitary(theta);
            let v = u.adjoint();
            UnitaryPair::new(u, v)
        }
        Gallery::Ex313 => {
            if !is_identity(theta) || theta.m() != theta.n() {
                return Err(Error::WrongTheta("ex313 needs the identity relation with m = n".into()));
            }
            let u = mixing_unitary(theta);
            let v = u.adjoint();
            UnitaryPair::new(u, v)
        }
        Gallery::Canonical(p, q) => canonical_pair(theta, *p, *q),
        Gallery::Inner(w) => inner_pair(w),
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

    fn flip_flop(theta: &Arc<Permutation2D>) -> Element {
        &s(theta, "e1", "e2") + &s(theta, "e2", "e1")
    }

    #[test]
    fn canonical_endomorphisms() {
        let t = ident();
        let x = &s(&t, "e1", "f2") + &s(&t, "e2.f1", "id");
        assert_eq!(canonical_endo_apply(0, 0, &x), x);
        let one = Element::identity(&t);
        assert_eq!(lambda_e1(&one), one);
        let a = lambda_e1(&lambda_e2(&x));
        let b = lambda_e2(&lambda_e1(&x));
        assert_eq!(a, b);
        assert_eq!(a, canonical_endo_apply(1, 1, &x));
    }

    #[test]
    fn canonical_pairs() {
        let f = flip();
        let p = canonical_pair(&f, 0, 0).unwrap();
        assert_eq!(p.u(), &Element::identity(&f));
        let p = canonical_pair(&f, 1, 0).unwrap();
        let endo = Endomorphism::from_pair(p).unwrap();
        let e1 = Element::isometry(&f, Word::e(1));
        assert_eq!(endo.apply(&e1), lambda_e1(&e1));
    }

    #[test]
    fn twisted_examples() {
        let f = flip();
        let one = Element::identity(&f);
        assert!(twisted_check(&one, &one).unwrap().holds());
        let ff = flip_flop(&f);
        assert!(twisted_check(&ff, &ff).unwrap().holds());
        let r = twisted_check(&ff, &one).unwrap();
        assert!(!r.holds());
        assert!(!r.residual.is_zero());
    }

    #[test]
    fn ex312_pair() {
        let f = flip();
        let pair = gallery(&f, &Gallery::Ex312).unwrap();
        let endo = Endomorphism::from_pair(pair).unwrap();
        assert_eq!(endo.apply(&s(&f, "e1", "id")), s(&f, "f1", "id"));
        // involution on generators
        for x in [
            s(&f, "e1", "id"),
            s(&f, "e2", "id"),
            s(&f, "f1", "id"),
            s(&f, "f2", "id"),
        ] {
            assert_eq!(endo.apply(&endo.apply(&x)), x);
        }
        assert!(gallery(&ident(), &Gallery::Ex312).is_err());
    }

    #[test]
    fn ex313_pair() {
        let t = Arc::new(Permutation2D::identity(2, 2).unwrap());
        let pair = gallery(&t, &Gallery::Ex313).unwrap();
        assert!(twisted_check(pair.u(), pair.v()).unwrap().holds());
    }

    #[test]
    fn round_trip() {
        let f = flip();
        let pair = canonical_pair(&f, 1, 1).unwrap();
        let endo = Endomorphism::from_pair(pair.clone()).unwrap();
        let (e, fi) = endo.generator_images();
        let back = pair_from_generator_map(&f, e, fi).unwrap();
        assert!(back.same_as(&pair));
        let id = Endomorphism::identity(&f);
        let x = &s(&f, "e1.f2", "f1") + &s(&f, "id", "e2");
        assert_eq!(id.apply(&x), x);
    }

    #[test]
    fn relations_violated() {
        let t = ident();
        // e-images swapped, f-images untouched: not of the form U s_ei unless U is the flip-flop
        let bad_e = vec![s(&t, "e1", "id"), s(&t, "e1", "id")];
        let f_imgs: Vec<Element> = (1..=3).map(|j| Element::isometry(&t, Word::f(j))).collect();
        assert!(matches!(
            pair_from_generator_map(&t, &bad_e, &f_imgs),
            Err(Error::RelationsViolated(_)) | Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn composition() {
        let f = flip();
        let a = Endomorphism::from_pair(canonical_pair(&f, 1, 0).unwrap()).unwrap();
        let b = Endomorphism::from_pair(canonical_pair(&f, 0, 1).unwrap()).unwrap();
        let c = compose(&a, &b).unwrap();
        assert!(c.same_as(&canonical_pair(&f, 1, 1).unwrap()));
        let id = Endomorphism::identity(&f);
        assert!(compose(&id, &a).unwrap().same_as(a.pair()));
    }

    #[test]
    fn inner_pairs() {
        let t = ident();
        let c = Element::scalar(&t, crate::ExactScalar::i());
        let p = inner_pair(&c).unwrap();
        assert!(p.same_as(&UnitaryPair::identity(&t)));
        let w = flip_flop(&t);
        let endo = Endomorphism::from_pair(inner_pair(&w).unwrap()).unwrap();
        let e1 = s(&t, "e1", "id");
        assert_eq!(endo.apply(&e1), &(&w * &e1) * &w.adjoint());
        assert!(matches!(inner_pair(&s(&t, "e1", "e1")), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn ad_products() {
        let f = flip();
        let id = Endomorphism::identity(&f);
        assert!(ad_product_check(&id, 1).holds);
        let ex = Endomorphism::from_pair(gallery(&f, &Gallery::Ex312).unwrap()).unwrap();
        assert!(ad_product_check(&ex, 1).holds);
        assert!(ad_product_check(&ex, 2).holds);
    }

    #[test]
    fn subalgebra_levels() {
        let f = flip();
        let c11 = Endomorphism::from_pair(canonical_pair(&f, 1, 1).unwrap()).unwrap();
        assert!(preserves_subalgebra_level(&c11, Subalgebra::Core, 1));
        let id = Endomorphism::identity(&f);
        assert!(preserves_subalgebra_level(&id, Subalgebra::Diagonal, 1));
        assert!(preserves_subalgebra_level(&id, Subalgebra::Diagonal, 2));
    }
}
