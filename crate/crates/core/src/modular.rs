//! The state `ω = τΦ` and the Tomita–Takesaki objects on the dense algebra.
//!
//! With `𝐧 = (m, n)` and `𝐧^(a,b) = m^a n^b`, all modular operators act
//! diagonally on standard generators:
//!
//! | operator | `S[u;v]` maps to                          | linearity   |
//! |----------|-------------------------------------------|-------------|
//! | `S`      | `S[v;u]`                                  | anti-linear |
//! | `F`      | `𝐧^(d(u)-d(v)) S[v;u]`                    | anti-linear |
//! | `J`      | `𝐧^((d(u)-d(v))/2) S[v;u]`                | anti-linear |
//! | `Δ^z`    | `𝐧^(z(d(v)-d(u))) S[u;v]`                 | linear      |
//! | `σ_i`    | `𝐧^(d(u)-d(v)) S[u;v]`                    | linear      |
//! | `σ_t`    | `𝐧^(it(d(v)-d(u))) S[u;v]` (float only)   | linear      |

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{Element, FloatElement, GenTerm};
use crate::error::{Error, Result};
use crate::scalar::{power_of_base, ExactScalar, Exponent};
use crate::semigroup::{Degree, Permutation2D};

/// Default tolerance for float-mode comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ModularContext {
    theta: Arc<Permutation2D>,
    float_tolerance: f64,
}

/// Both sides of the KMS identity `ω(AB) = ω(σ_i(B)A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KmsWitness {
    pub holds: bool,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

impl ModularContext {
    pub fn new(theta: Arc<Permutation2D>, float_tolerance: f64) -> Result<Self> {
        if float_tolerance.is_nan() || float_tolerance < 0.0 {
            return Err(Error::Parse(format!(
                "tolerance must be nonnegative, got {float_tolerance}"
            )));
        }
        Ok(ModularContext { theta, float_tolerance })
    }

    pub fn with_default_tolerance(theta: Arc<Permutation2D>) -> Self {
        ModularContext {
            theta,
            float_tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn theta(&self) -> &Arc<Permutation2D> {
        &self.theta
    }

    pub fn tolerance(&self) -> f64 {
        self.float_tolerance
    }

    fn m(&self) -> u64 {
        self.theta.m() as u64
    }

    fn n(&self) -> u64 {
        self.theta.n() as u64
    }

    /// `𝐧^(z·δ)`.
    pub fn base_power(&self, delta: Degree, z: Exponent) -> ExactScalar {
        power_of_base(self.m(), self.n(), delta, z)
    }

    /// `ω(S[u;v]) = δ_{u,v} 𝐧^(-d(u))`, extended linearly.
    pub fn omega(&self, a: &Element) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (t, c) in a.terms() {
            if t.u == t.v {
                acc.add_assign_ref(&(c * &self.base_power(-t.u.degree(), Exponent::from_integer(1))));
            }
        }
        acc
    }

    /// `⟨A|B⟩ = ω(A*B)`, linear in the second slot.
    pub fn inner(&self, a: &Element, b: &Element) -> Result<ExactScalar> {
        Ok(self.omega(&a.adjoint().try_mul(b)?))
    }

    /// Tomita operator `S(A) = A*`.
    pub fn tomita_s(&self, a: &Element) -> Element {
        a.adjoint()
    }

    pub fn op_f(&self, a: &Element) -> Element {
        self.map_generators(a, true, |d| self.base_power(d, Exponent::from_integer(1)))
    }

    /// Modular conjugation.
    pub fn op_j(&self, a: &Element) -> Element {
        self.map_generators(a, true, |d| self.base_power(d, Exponent::new(1, 2)))
    }

    /// `Δ^z` for rational `z`.
    pub fn delta_pow(&self, z: Exponent, a: &Element) -> Element {
        self.map_generators(a, false, |d| self.base_power(-d, z))
    }

    /// Analytic continuation of the modular group at `t = i`, i.e. `Δ^(-1)`.
    pub fn sigma_i(&self, a: &Element) -> Element {
        self.map_generators(a, false, |d| self.base_power(d, Exponent::from_integer(1)))
    }

    /// Modular group at real `t`; coefficients become unit-modulus complex
    /// multiples `m^(it·a) n^(it·b)` with `(a, b) = d(v) - d(u)`.
    pub fn sigma_t(&self, t: f64, a: &Element) -> FloatElement {
        let (lm, ln) = ((self.m() as f64).ln(), (self.n() as f64).ln());
        FloatElement::from(a).map_terms(|g, c| {
            let d = -g.degree();
            let phase = t * (d.e as f64 * lm + d.f as f64 * ln);
            c * Complex64::from_polar(1.0, phase)
        })
    }

    /// The torus point `(m^(-it), n^(-it))` that realizes `σ_t` as a gauge
    /// automorphism.
    pub fn sigma_gauge_point(&self, t: f64) -> (Complex64, Complex64) {
        let (lm, ln) = ((self.m() as f64).ln(), (self.n() as f64).ln());
        (Complex64::from_polar(1.0, -t * lm), Complex64::from_polar(1.0, -t * ln))
    }

    /// Checks `ω(AB) = ω(σ_i(B)A)` exactly.
    pub fn kms_check(&self, a: &Element, b: &Element) -> Result<KmsWitness> {
        let lhs = self.omega(&a.try_mul(b)?);
        let rhs = self.omega(&self.sigma_i(b).try_mul(a)?);
        Ok(KmsWitness {
            holds: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// `G[a][b] = ⟨basis_a|basis_b⟩`.
    pub fn gram_matrix(&self, basis: &[Element]) -> Result<Vec<Vec<ExactScalar>>> {
        let adjoints: Vec<Element> = basis.iter().map(Element::adjoint).collect();
        let mut g = vec![vec![ExactScalar::zero(); basis.len()]; basis.len()];
        for a in 0..basis.len() {
            for b in a..basis.len() {
                let x = self.omega(&adjoints[a].try_mul(&basis[b])?);
                g[b][a] = x.conj();
                g[a][b] = x;
            }
        }
        Ok(g)
    }

    /// Distinct values `m^a n^b` with `|a|, |b| <= window`, sorted ascending.
    pub fn delta_spectrum(&self, window: i64) -> Vec<ExactScalar> {
        let mut seen: Vec<ExactScalar> = Vec::new();
        for a in -window..=window {
            for b in -window..=window {
                let x = self.base_power(Degree::new(a, b), Exponent::from_integer(1));
                if !seen.contains(&x) {
                    seen.push(x);
                }
            }
        }
        seen.sort_by(|x, y| x.to_float().re.total_cmp(&y.to_float().re));
        seen
    }

    /// Whether generators of degree difference `delta` are fixed by the
    /// modular group, i.e. `m^a n^b = 1`.
    pub fn sigma_fixed_degree(&self, delta: Degree) -> bool {
        self.base_power(delta, Exponent::from_integer(1)).is_one()
    }

    fn map_generators(&self, a: &Element, antilinear: bool, factor: impl Fn(Degree) -> ExactScalar) -> Element {
        let mut cache: BTreeMap<Degree, ExactScalar> = BTreeMap::new();
        let terms: Vec<(GenTerm, ExactScalar)> = a
            .terms()
            .map(|(t, c)| {
                let k = cache.entry(t.degree()).or_insert_with(|| factor(t.degree()));
                // anti-linear maps also swap u and v
                if antilinear {
                    (t.adjoint(), &c.conj() * k)
                } else {
                    (t.clone(), c * k)
                }
            })
            .collect();
        Element::from_terms(a.theta(), terms)
    }
}

/// Float view of an exact Hermitian matrix.
pub fn to_complex_matrix(g: &[Vec<ExactScalar>]) -> DMatrix<Complex64> {
    let n = g.len();
    DMatrix::from_fn(n, n, |i, j| g[i][j].to_float())
}

/// Smallest eigenvalue of an exact Hermitian matrix, evaluated in floating
/// point. Returns `None` for an empty matrix.
pub fn min_eigenvalue(g: &[Vec<ExactScalar>]) -> Option<f64> {
    if g.is_empty() {
        return None;
    }
    let eig = to_complex_matrix(g).symmetric_eigenvalues();
    eig.iter().copied().reduce(f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::parse_word;

    fn ctx(m: u16, n: u16) -> ModularContext {
        let theta = if m == n {
            Permutation2D::flip(m, n)
        } else {
            Permutation2D::identity(m, n)
        };
        ModularContext::with_default_tolerance(Arc::new(theta.unwrap()))
    }

    fn s(c: &ModularContext, u: &str, v: &str) -> Element {
        let t = c.theta();
        Element::generator(t, parse_word(t, u).unwrap(), parse_word(t, v).unwrap())
    }

    #[test]
    fn omega_values() {
        let c = ctx(2, 2);
        assert_eq!(c.omega(&s(&c, "e1", "e1")), ExactScalar::ratio(1, 2));
        assert!(c.omega(&s(&c, "e1", "id")).is_zero());
        assert!(c.omega(&Element::identity(c.theta())).is_one());
        let c = ctx(2, 3);
        assert_eq!(c.omega(&s(&c, "e1.f2", "e1.f2")), ExactScalar::ratio(1, 6));
    }

    #[test]
    fn inner_products() {
        let c = ctx(2, 3);
        let one = Element::identity(c.theta());
        assert!(c.inner(&one, &one).unwrap().is_one());
        let a = s(&c, "e1", "id");
        assert!(c.inner(&a, &a).unwrap().is_one());
        assert!(c.inner(&a, &s(&c, "e2", "id")).unwrap().is_zero());
    }

    #[test]
    fn f_and_j() {
        let c = ctx(2, 2);
        assert_eq!(
            c.op_f(&s(&c, "e1", "id")),
            s(&c, "id", "e1").scale(&ExactScalar::from_int(2))
        );
        assert_eq!(
            c.op_f(&s(&c, "id", "f1")),
            s(&c, "f1", "id").scale(&ExactScalar::ratio(1, 2))
        );
        let one = Element::identity(c.theta());
        assert_eq!(c.op_f(&one), one);
        assert_eq!(c.tomita_s(&one), one);
        let sqrt2 = ExactScalar::radical(2, Exponent::new(1, 2));
        assert_eq!(c.op_j(&s(&c, "e1", "id")), s(&c, "id", "e1").scale(&sqrt2));
        assert_eq!(
            c.delta_pow(Exponent::from_integer(1), &s(&c, "e1", "id")),
            s(&c, "e1", "id").scale(&ExactScalar::ratio(1, 2))
        );
        let x = &s(&c, "e1.f1", "e2").scale(&ExactScalar::i()) + &s(&c, "f2", "id");
        assert_eq!(c.op_j(&c.op_j(&x)), x);
    }

    #[test]
    fn sigma() {
        let c = ctx(2, 3);
        assert_eq!(
            c.sigma_i(&s(&c, "id", "e1")),
            s(&c, "id", "e1").scale(&ExactScalar::ratio(1, 2))
        );
        let core = s(&c, "e1.f1", "e2.f3");
        assert_eq!(c.sigma_i(&core), core);
        let x = c.sigma_t(0.37, &s(&c, "e1", "id"));
        let coeff = x.terms.values().next().copied().unwrap();
        assert!((coeff.norm() - 1.0).abs() < 1e-12);
        let expected = Complex64::from_polar(1.0, -0.37 * 2f64.ln());
        assert!((coeff - expected).norm() < 1e-12);
    }

    #[test]
    fn kms_examples() {
        let c = ctx(2, 3);
        let w = c.kms_check(&s(&c, "e1", "id"), &s(&c, "id", "e1")).unwrap();
        assert!(w.holds);
        assert_eq!(w.lhs, ExactScalar::ratio(1, 2));
        let one = Element::identity(c.theta());
        let w = c.kms_check(&one, &one).unwrap();
        assert!(w.holds && w.lhs.is_one());
    }

    #[test]
    fn gram_examples() {
        let c = ctx(2, 2);
        let g = c
            .gram_matrix(&[Element::identity(c.theta()), s(&c, "e1", "id")])
            .unwrap();
        assert!(g[0][0].is_one() && g[1][1].is_one() && g[0][1].is_zero() && g[1][0].is_zero());
        assert!(c.gram_matrix(&[]).unwrap().is_empty());
        let words = c.theta().enumerate_words(Degree::new(1, 1));
        let basis: Vec<Element> = words
            .iter()
            .flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone())))
            .map(|(u, v)| Element::generator(c.theta(), u, v))
            .collect();
        let g = c.gram_matrix(&basis).unwrap();
        assert_eq!(g.len(), 16);
        for (a, row) in g.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                let want = if a == b {
                    ExactScalar::ratio(1, 4)
                } else {
                    ExactScalar::zero()
                };
                assert_eq!(x, &want);
            }
        }
        assert!((min_eigenvalue(&g).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn spectrum() {
        let c = ctx(2, 3);
        let sp: Vec<ExactScalar> = c.delta_spectrum(1);
        let want = [(1, 6), (1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1), (6, 1)];
        assert_eq!(
            sp,
            want.iter().map(|&(a, b)| ExactScalar::ratio(a, b)).collect::<Vec<_>>()
        );
        assert_eq!(c.delta_spectrum(0), vec![ExactScalar::one()]);
        let c4 = ModularContext::with_default_tolerance(Arc::new(Permutation2D::identity(4, 2).unwrap()));
        let want = [(1, 8), (1, 4), (1, 2), (1, 1), (2, 1), (4, 1), (8, 1)];
        assert_eq!(
            c4.delta_spectrum(1),
            want.iter().map(|&(a, b)| ExactScalar::ratio(a, b)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn fixed_degrees() {
        let c4 = ModularContext::with_default_tolerance(Arc::new(Permutation2D::identity(4, 2).unwrap()));
        assert!(c4.sigma_fixed_degree(Degree::new(1, -2)));
        assert!(c4.sigma_fixed_degree(Degree::ZERO));
        assert!(!ctx(2, 3).sigma_fixed_degree(Degree::new(1, -1)));
    }

    #[test]
    fn negative_tolerance_rejected() {
        let theta = Arc::new(Permutation2D::identity(2, 3).unwrap());
        assert!(ModularContext::new(theta, -1.0).is_err());
    }
}
