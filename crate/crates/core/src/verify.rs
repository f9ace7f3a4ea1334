//! Named property suites with seeded sampling and deterministic reports.
//!
//! Every check draws from its own seeded sampler, so a report depends only on
//! the configuration and not on which other checks ran before it.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{raise_level, Element};
use crate::endomorphism::{
    ad_product_check, canonical_endo_apply, canonical_pair, compose, gallery, inner_pair, is_flip, is_identity,
    mixing_unitary, pair_from_generator_map, pair_product, preserves_subalgebra_level, twisted_check, Endomorphism,
    Gallery, UnitaryPair,
};
use crate::error::{Error, Result};
use crate::expr::parse_expression;
use crate::modular::{min_eigenvalue, ModularContext};
use crate::oracle::{window_for, GradedActionModel};
use crate::random::Sampler;
use crate::scalar::{ExactScalar, Exponent, Gaussian, Rational};
use crate::semigroup::{Degree, Permutation2D, RewriteOrder, Word};
use crate::Subalgebra;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub theta: Arc<Permutation2D>,
    pub seed: u64,
    pub level: Degree,
    pub samples: usize,
    pub float_tol: f64,
}

impl SuiteConfig {
    pub fn new(theta: Arc<Permutation2D>) -> Self {
        SuiteConfig {
            theta,
            seed: 0,
            level: Degree::new(2, 2),
            samples: 100,
            float_tol: 1e-9,
        }
    }

    fn sampler(&self, salt: u64) -> Sampler {
        Sampler::new(self.theta.clone(), self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn modular(&self) -> ModularContext {
        ModularContext::new(self.theta.clone(), self.float_tol)
            .unwrap_or_else(|_| ModularContext::with_default_tolerance(self.theta.clone()))
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub exact: bool,
    pub max_residual: Option<f64>,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            failures: 0,
            exact: true,
            max_residual: None,
            witness: None,
        }
    }

    fn float(name: &'static str) -> Self {
        Check {
            exact: false,
            max_residual: Some(0.0),
            ..Check::new(name)
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn residual(&mut self, r: f64, tol: f64, witness: impl FnOnce() -> String) {
        let worst = self.max_residual.unwrap_or(0.0).max(r);
        self.max_residual = Some(worst);
        self.case(r < tol, witness);
    }

    fn error(&mut self, e: Error) {
        self.case(false, || format!("error: {e}"));
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mode = if self.exact {
            "exact".to_string()
        } else {
            format!("max residual {:.3e}", self.max_residual.unwrap_or(0.0))
        };
        write!(
            f,
            "{verdict} {}: {}/{} {mode}",
            self.name,
            self.cases - self.failures,
            self.cases
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Semigroup,
    Algebra,
    Modular,
    Kms,
    Endo,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "semigroup" => Suite::Semigroup,
            "algebra" => Suite::Algebra,
            "modular" => Suite::Modular,
            "kms" => Suite::Kms,
            "endo" => Suite::Endo,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite `{other}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Semigroup => "semigroup",
            Suite::Algebra => "algebra",
            Suite::Modular => "modular",
            Suite::Kms => "kms",
            Suite::Endo => "endo",
            Suite::All => "all",
        })
    }
}

pub type CheckFn = fn(&SuiteConfig) -> Check;

pub fn checks_for(suite: Suite) -> Vec<CheckFn> {
    match suite {
        Suite::Semigroup => vec![
            confluence,
            degree_conservation,
            factor_round_trip,
            cancellativity,
            common_extension_completeness,
        ],
        Suite::Algebra => vec![
            associativity,
            unit_law,
            involution,
            raising_invariance,
            grading_leibniz,
            gauge_automorphism,
            oracle_products,
            oracle_traces,
            print_parse_round_trip,
        ],
        Suite::Modular => vec![
            trace_sandwich,
            omega_spot_values,
            tomita_adjointness,
            polar_relations,
            delta_multiplicative,
            spectrum_window,
            gram_identity,
            gram_positivity,
        ],
        Suite::Kms => vec![kms_exact, sigma_gauge],
        Suite::Endo => vec![
            canonical_pairs_twisted,
            bijection_round_trips,
            canonical_intertwining,
            canonical_composition,
            inner_pairs,
            pair_product_associativity,
            gallery_examples,
            homomorphism_laws,
            ad_products,
            subalgebra_levels,
        ],
        Suite::All => [
            Suite::Semigroup,
            Suite::Algebra,
            Suite::Modular,
            Suite::Kms,
            Suite::Endo,
        ]
        .into_iter()
        .flat_map(checks_for)
        .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    /// `key<TAB>value` lines.
    pub fn to_records(&self, cfg: &SuiteConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite\t{}", self.suite);
        let _ = writeln!(out, "theta\tm={} n={}", cfg.theta.m(), cfg.theta.n());
        let _ = writeln!(out, "seed\t{}", cfg.seed);
        let _ = writeln!(out, "level\t{},{}", cfg.level.e, cfg.level.f);
        let _ = writeln!(out, "samples\t{}", cfg.samples);
        for c in &self.checks {
            let _ = writeln!(out, "check\t{}", c.name);
            let _ = writeln!(out, "status\t{}", if c.passed() { "pass" } else { "fail" });
            let _ = writeln!(out, "cases\t{}", c.cases);
            let _ = writeln!(out, "failures\t{}", c.failures);
            if let Some(r) = c.max_residual {
                let _ = writeln!(out, "max_residual\t{r:.3e}");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "witness\t{}", w.replace(['\t', '\n'], " "));
            }
        }
        let _ = writeln!(out, "result\t{}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let total: usize = self.checks.iter().map(|c| c.cases).sum();
        let failed: usize = self.checks.iter().map(|c| c.failures).sum();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} suite {}: {}/{} cases", self.suite, total - failed, total)
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Report {
    Report {
        suite,
        checks: checks_for(suite).into_iter().map(|c| c(cfg)).collect(),
    }
}

fn two(a: &Element, b: &Element) -> String {
    format!("A = {a}; B = {b}")
}

fn sides(inputs: String, lhs: &impl fmt::Display, rhs: &impl fmt::Display) -> String {
    format!("{inputs}; lhs = {lhs}; rhs = {rhs}")
}

fn sides_with_residual(inputs: String, lhs: &Element, rhs: &Element) -> String {
    let residual = lhs
        .try_sub(rhs)
        .map(|r| r.to_string())
        .unwrap_or_else(|e| e.to_string());
    format!("{inputs}; lhs = {lhs}; rhs = {rhs}; residual = {residual}")
}

macro_rules! tri {
    ($check:ident, $e:expr) => {
        tri!($check, $e, continue)
    };
    ($check:ident, $e:expr, $bail:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $check.error(err);
                #[allow(unreachable_code)]
                $bail
            }
        }
    };
}

// semigroup

pub fn confluence(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("confluence");
    let mut s = cfg.sampler(1);
    let max_len = (cfg.level.e + cfg.level.f).max(1) as usize * 2;
    for k in 0..cfg.samples * 5 {
        let len = s.rng_len(max_len);
        let letters = s.letters(len);
        let theta = &cfg.theta;
        let results: Vec<_> = [
            RewriteOrder::LeftToRight,
            RewriteOrder::RightToLeft,
            RewriteOrder::Random(cfg.seed ^ k as u64),
        ]
        .into_iter()
        .map(|o| theta.normal_form_with(&letters, o))
        .chain([theta.normal_form(&letters)])
        .collect();
        let ok = results
            .windows(2)
            .all(|w| matches!((&w[0], &w[1]), (Ok(a), Ok(b)) if a == b));
        c.case(ok, || format!("letters {letters:?}: {results:?}"));
    }
    c
}

pub fn degree_conservation(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("degree-conservation");
    let mut s = cfg.sampler(2);
    let max_len = (cfg.level.e + cfg.level.f).max(1) as usize * 2;
    for _ in 0..cfg.samples * 5 {
        let len = s.rng_len(max_len);
        let letters = s.letters(len);
        let e = letters.iter().filter(|l| matches!(l, crate::Letter::E(_))).count() as i64;
        let expected = Degree::new(e, letters.len() as i64 - e);
        let w = tri!(c, cfg.theta.normal_form(&letters));
        c.case(w.degree() == expected, || {
            format!("letters {letters:?}: {w} has degree {}", w.degree())
        });
    }
    c
}

pub fn factor_round_trip(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("factor-round-trip");
    let theta = &cfg.theta;
    for w in theta.enumerate_up_to(cfg.level) {
        let d = w.degree();
        for a in 0..=d.e {
            for b in 0..=d.f {
                let (x, y) = tri!(c, theta.factor_at(&w, Degree::new(a, b)));
                let back = theta.concat(&x, &y);
                c.case(back == w && x.degree() == Degree::new(a, b), || {
                    format!("{w} at ({a},{b}) -> {x} | {y}")
                });
            }
        }
    }
    c
}

pub fn cancellativity(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("cancellativity");
    let theta = &cfg.theta;
    let words = theta.enumerate_up_to(cfg.level);
    for w in &words {
        let left: BTreeSet<Word> = words.iter().map(|u| theta.concat(w, u)).collect();
        let right: BTreeSet<Word> = words.iter().map(|u| theta.concat(u, w)).collect();
        c.case(left.len() == words.len(), || {
            format!("left multiplication by {w} is not injective")
        });
        c.case(right.len() == words.len(), || {
            format!("right multiplication by {w} is not injective")
        });
    }
    c
}

/// `common_extensions(u, v)` against a brute-force scan of all words of the
/// joined degree.
pub fn common_extension_completeness(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("common-extensions");
    let theta = &cfg.theta;
    let mut s = cfg.sampler(3);
    for _ in 0..cfg.samples {
        let (u, v) = (s.word(cfg.level), s.word(cfg.level));
        let top = u.degree().join(v.degree());
        let mut brute: Vec<(Word, Word)> = theta
            .enumerate_words(top)
            .into_iter()
            .filter_map(|z| {
                let (pu, ru) = theta.factor_at(&z, u.degree()).ok()?;
                let (pv, rv) = theta.factor_at(&z, v.degree()).ok()?;
                (pu == u && pv == v).then_some((rv, ru))
            })
            .collect();
        let mut fast = theta.common_extensions(&u, &v);
        brute.sort();
        fast.sort();
        c.case(brute == fast, || {
            format!("u = {u}, v = {v}: fast {fast:?} vs scan {brute:?}")
        });
    }
    c
}

// algebra

pub fn associativity(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("associativity");
    let mut s = cfg.sampler(10);
    for _ in 0..cfg.samples {
        let (a, b, d) = (s.element(cfg.level), s.element(cfg.level), s.element(cfg.level));
        let lhs = &(&a * &b) * &d;
        let rhs = &a * &(&b * &d);
        c.case(lhs == rhs, || {
            sides_with_residual(format!("{}; C = {d}", two(&a, &b)), &lhs, &rhs)
        });
    }
    c
}

pub fn unit_law(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("unit");
    let mut s = cfg.sampler(11);
    let one = Element::identity(&cfg.theta);
    for _ in 0..cfg.samples {
        let a = s.element(cfg.level);
        c.case(&one * &a == a && &a * &one == a, || format!("A = {a}"));
    }
    c
}

pub fn involution(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("involution");
    let mut s = cfg.sampler(12);
    for _ in 0..cfg.samples {
        let (a, b) = (s.element(cfg.level), s.element(cfg.level));
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        c.case(lhs == rhs && a.adjoint().adjoint() == a, || {
            sides_with_residual(two(&a, &b), &lhs, &rhs)
        });
    }
    c
}

pub fn raising_invariance(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("raising-invariance");
    let mut s = cfg.sampler(13);
    for _ in 0..cfg.samples {
        let t = s.term(cfg.level);
        let delta = s.degree(Degree::new(1, 1));
        let raised = raise_level(&cfg.theta, &t, delta);
        let plain = Element::generator(&cfg.theta, t.u.clone(), t.v.clone());
        c.case(raised == plain, || {
            sides_with_residual(format!("{t} raised by {delta}"), &raised, &plain)
        });
    }
    c
}

pub fn grading_leibniz(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("grading");
    let mut s = cfg.sampler(14);
    let theta = &cfg.theta;
    for _ in 0..cfg.samples {
        let (a, b) = (s.element(cfg.level), s.element(cfg.level));
        let ab = &a * &b;
        let mut deltas: BTreeSet<Degree> = BTreeSet::new();
        for da in a.support() {
            for db in b.support() {
                deltas.insert(da + db);
            }
        }
        deltas.insert(s.degree(Degree::new(1, 1)));
        for delta in deltas {
            let lhs = ab.phi_n(delta);
            let mut rhs = Element::zero(theta);
            for da in a.support() {
                rhs = &rhs + &(&a.phi_n(da) * &b.phi_n(delta - da));
            }
            c.case(lhs == rhs, || {
                sides_with_residual(format!("{}; delta = {delta}", two(&a, &b)), &lhs, &rhs)
            });
        }
    }
    c
}

pub fn gauge_automorphism(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("gauge");
    let mut s = cfg.sampler(15);
    for _ in 0..cfg.samples {
        let (a, b) = (s.element(cfg.level), s.element(cfg.level));
        let (t1, t2, r1, r2) = (s.unit_phase(), s.unit_phase(), s.unit_phase(), s.unit_phase());
        let g = |x: &Element, p: &Gaussian, q: &Gaussian| x.gauge_apply(p, q);
        let lhs = tri!(c, g(&(&a * &b), &t1, &t2));
        let rhs = &tri!(c, g(&a, &t1, &t2)) * &tri!(c, g(&b, &t1, &t2));
        c.case(lhs == rhs, || {
            sides_with_residual(format!("{}; t = ({t1}, {t2})", two(&a, &b)), &lhs, &rhs)
        });
        let star = tri!(c, g(&a.adjoint(), &t1, &t2));
        c.case(star == tri!(c, g(&a, &t1, &t2)).adjoint(), || {
            format!("A = {a}; t = ({t1}, {t2})")
        });
        let composed = tri!(c, g(&tri!(c, g(&a, &r1, &r2)), &t1, &t2));
        let product = tri!(c, g(&a, &(&t1 * &r1), &(&t2 * &r2)));
        c.case(composed == product, || {
            sides_with_residual(format!("A = {a}"), &composed, &product)
        });
    }
    c
}

/// Symbolic products against the graded action.
pub fn oracle_products(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("oracle-products");
    let mut s = cfg.sampler(16);
    for _ in 0..cfg.samples {
        let (a, b) = (s.generator(cfg.level), s.generator(cfg.level));
        let p = &a * &b;
        let model = GradedActionModel::new(cfg.theta.clone(), window_for([&a, &b, &p]));
        let ok = tri!(c, model.oracle_product(&a, &b, &p));
        c.case(ok, || format!("{}; symbolic = {p}", two(&a, &b)));
    }
    c
}

pub fn oracle_traces(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("oracle-traces");
    let mut s = cfg.sampler(17);
    let ctx = cfg.modular();
    let k = cfg.level.e.min(cfg.level.f);
    let model = GradedActionModel::new(cfg.theta.clone(), k);
    for _ in 0..cfg.samples {
        let x = s.core_element(k);
        let lhs = ctx.omega(&x);
        let rhs = tri!(c, model.oracle_trace(&x, k));
        c.case(lhs == rhs, || sides(format!("X = {x}"), &lhs, &rhs));
    }
    c
}

pub fn print_parse_round_trip(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("print-parse");
    let mut s = cfg.sampler(18);
    for _ in 0..cfg.samples * 2 {
        let a = s.element(cfg.level);
        let printed = a.to_string();
        let back = tri!(c, parse_expression(&printed, &cfg.theta));
        c.case(back == a, || format!("{printed} parsed as {back}"));
    }
    c
}

// modular

/// `ω(s_u X s_v*) = δ_{u,v} 𝐧^(-d(u)) ω(X)` for all words below the level.
pub fn trace_sandwich(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("trace-sandwich");
    let mut s = cfg.sampler(20);
    let ctx = cfg.modular();
    let theta = &cfg.theta;
    let words = theta.enumerate_up_to(cfg.level);
    let k = cfg.level.e.min(cfg.level.f);
    let xs: Vec<Element> = (0..(cfg.samples / 5).max(1)).map(|_| s.core_element(k)).collect();
    for x in &xs {
        let tau = ctx.omega(x);
        let left: Vec<Element> = words.iter().map(|u| &Element::isometry(theta, u.clone()) * x).collect();
        for (u, ux) in words.iter().zip(&left) {
            for v in &words {
                let lhs = ctx.omega(&(ux * &Element::generator(theta, Word::empty(), v.clone())));
                let rhs = if u == v {
                    &tau * &ctx.base_power(-u.degree(), Exponent::from_integer(1))
                } else {
                    ExactScalar::zero()
                };
                c.case(lhs == rhs, || sides(format!("u = {u}; v = {v}; X = {x}"), &lhs, &rhs));
            }
        }
    }
    c
}

pub fn omega_spot_values(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("omega-values");
    let theta = &cfg.theta;
    let ctx = cfg.modular();
    let (m, n) = (theta.m() as i64, theta.n() as i64);
    let cases = [
        (Element::identity(theta), ExactScalar::one()),
        (
            Element::generator(theta, Word::e(1), Word::e(1)),
            ExactScalar::ratio(1, m),
        ),
        (
            Element::generator(theta, Word::f(1), Word::f(1)),
            ExactScalar::ratio(1, n),
        ),
        (
            Element::generator(
                theta,
                Word::from_blocks(vec![1], vec![1]),
                Word::from_blocks(vec![1], vec![1]),
            ),
            ExactScalar::ratio(1, m * n),
        ),
        (
            Element::generator(theta, Word::e(1), Word::empty()),
            ExactScalar::zero(),
        ),
    ];
    for (x, want) in cases {
        let got = ctx.omega(&x);
        c.case(got == want, || sides(format!("X = {x}"), &got, &want));
    }
    c
}

/// `⟨S(A)|B⟩ = ⟨F(B)|A⟩`.
pub fn tomita_adjointness(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("tomita-adjoint");
    let mut s = cfg.sampler(21);
    let ctx = cfg.modular();
    for _ in 0..cfg.samples {
        let (a, b) = (s.element(cfg.level), s.element(cfg.level));
        let lhs = tri!(c, ctx.inner(&ctx.tomita_s(&a), &b));
        let rhs = tri!(c, ctx.inner(&ctx.op_f(&b), &a));
        c.case(lhs == rhs, || sides(two(&a, &b), &lhs, &rhs));
    }
    c
}

/// `S = J Δ^(1/2)`, `F = J Δ^(-1/2)`, `Δ = F S` on every generator below the level.
pub fn polar_relations(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("polar");
    let ctx = cfg.modular();
    let theta = &cfg.theta;
    let words = theta.enumerate_up_to(cfg.level);
    let half = Exponent::new(1, 2);
    for u in &words {
        for v in &words {
            let g = Element::generator(theta, u.clone(), v.clone());
            let checks = [
                (ctx.tomita_s(&g), ctx.op_j(&ctx.delta_pow(half, &g))),
                (ctx.op_f(&g), ctx.op_j(&ctx.delta_pow(-half, &g))),
                (
                    ctx.delta_pow(Exponent::from_integer(1), &g),
                    ctx.op_f(&ctx.tomita_s(&g)),
                ),
            ];
            for (lhs, rhs) in checks {
                c.case(lhs == rhs, || sides_with_residual(format!("X = {g}"), &lhs, &rhs));
            }
        }
    }
    c
}

pub fn delta_multiplicative(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("delta-multiplicative");
    let mut s = cfg.sampler(22);
    let ctx = cfg.modular();
    let zs = [
        Exponent::from_integer(1),
        Exponent::from_integer(-1),
        Exponent::new(1, 2),
        Exponent::from_integer(2),
    ];
    for _ in 0..cfg.samples {
        let (a, b) = (s.element(cfg.level), s.element(cfg.level));
        let ab = &a * &b;
        for z in zs {
            let lhs = ctx.delta_pow(z, &ab);
            let rhs = &ctx.delta_pow(z, &a) * &ctx.delta_pow(z, &b);
            c.case(lhs == rhs, || {
                sides_with_residual(format!("{}; z = {z}", two(&a, &b)), &lhs, &rhs)
            });
        }
    }
    c
}

/// `delta_spectrum(1)` against the distinct rationals `m^a n^b`.
pub fn spectrum_window(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("spectrum");
    let ctx = cfg.modular();
    let (m, n) = (cfg.theta.m() as i64, cfg.theta.n() as i64);
    let mut expected: Vec<Rational> = Vec::new();
    for a in -1..=1i32 {
        for b in -1..=1i32 {
            let x = Rational::from_integer(m.into()).pow(a) * Rational::from_integer(n.into()).pow(b);
            if !expected.contains(&x) {
                expected.push(x);
            }
        }
    }
    expected.sort();
    let got: Vec<Option<Rational>> = ctx.delta_spectrum(1).iter().map(ExactScalar::as_rational).collect();
    let want: Vec<Option<Rational>> = expected.into_iter().map(Some).collect();
    c.case(got == want, || format!("got {got:?}, want {want:?}"));
    c
}

/// The Gram matrix of the level-`(1,1)` matrix units is `(1/mn)·I`.
pub fn gram_identity(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("gram-identity");
    let ctx = cfg.modular();
    let theta = &cfg.theta;
    let words = theta.enumerate_words(Degree::new(1, 1));
    let basis: Vec<Element> = words
        .iter()
        .flat_map(|u| {
            words
                .iter()
                .map(move |v| Element::generator(theta, u.clone(), v.clone()))
        })
        .collect();
    let g = match ctx.gram_matrix(&basis) {
        Ok(g) => g,
        Err(e) => {
            c.error(e);
            return c;
        }
    };
    let diag = ExactScalar::ratio(1, theta.m() as i64 * theta.n() as i64);
    for (a, row) in g.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            let want = if a == b { diag.clone() } else { ExactScalar::zero() };
            c.case(x == &want, || {
                sides(format!("entry ({a}, {b}): {} vs {}", basis[a], basis[b]), x, &want)
            });
        }
    }
    c
}

pub fn gram_positivity(cfg: &SuiteConfig) -> Check {
    let mut c = Check::float("gram-positivity");
    let ctx = cfg.modular();
    let mut s = cfg.sampler(23);
    for _ in 0..cfg.samples {
        let basis = s.independent_basis(cfg.level, 25);
        let g = tri!(c, ctx.gram_matrix(&basis));
        let min = min_eigenvalue(&g).unwrap_or(f64::NAN);
        c.case(min > 1e-9, || {
            format!("minimum eigenvalue {min:e} on basis of size {}", basis.len())
        });
    }
    c.max_residual = None;
    c.exact = false;
    c
}

// kms

pub fn kms_exact(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("kms");
    let mut s = cfg.sampler(30);
    let ctx = cfg.modular();
    for _ in 0..cfg.samples {
        let (a, b) = (s.element(cfg.level), s.element(cfg.level));
        let w = tri!(c, ctx.kms_check(&a, &b));
        c.case(w.holds, || sides(two(&a, &b), &w.lhs, &w.rhs));
    }
    c
}

/// `σ_t = γ_(m^(-it), n^(-it))` coefficientwise on every generator below the level.
pub fn sigma_gauge(cfg: &SuiteConfig) -> Check {
    let mut c = Check::float("sigma-gauge");
    let ctx = cfg.modular();
    let theta = &cfg.theta;
    let words = theta.enumerate_up_to(cfg.level);
    // the sample times are fixed values, not an approximation of π
    #[allow(clippy::approx_constant)]
    let times = [0.37, 1.0, 3.14159];
    for t in times {
        let (z1, z2) = ctx.sigma_gauge_point(t);
        for u in &words {
            for v in &words {
                let g = Element::generator(theta, u.clone(), v.clone());
                let lhs = ctx.sigma_t(t, &g);
                let rhs = tri!(c, g.gauge_apply_float(z1, z2, cfg.float_tol));
                let r = lhs.max_residual(&rhs);
                c.residual(r, 1e-12, || format!("t = {t}; X = {g}; residual {r:e}"));
            }
        }
    }
    c
}

// endo

const CANONICAL: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (2, 1)];

pub fn canonical_pairs_twisted(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("canonical-twisted");
    for (p, q) in CANONICAL {
        let pair = tri!(c, canonical_pair(&cfg.theta, p, q));
        let r = tri!(c, twisted_check(pair.u(), pair.v()));
        c.case(r.holds(), || format!("({p},{q}): residual {}", r.residual));
    }
    c
}

fn gallery_pairs(theta: &Arc<Permutation2D>, s: &mut Sampler) -> Vec<(String, UnitaryPair)> {
    let mut out = vec![("identity".to_string(), UnitaryPair::identity(theta))];
    for (p, q) in CANONICAL {
        if let Ok(pair) = canonical_pair(theta, p, q) {
            out.push((format!("canonical({p},{q})"), pair));
        }
    }
    if is_flip(theta) {
        if let Ok(pair) = gallery(theta, &Gallery::Ex312) {
            out.push(("ex312".into(), pair));
        }
        let u = s.permutation_unitary(Degree::new(1, 1));
        if let Ok(pair) = gallery(theta, &Gallery::Ex39(u)) {
            out.push(("ex39".into(), pair));
        }
    }
    if is_identity(theta) {
        if theta.m() == theta.n() {
            if let Ok(pair) = gallery(theta, &Gallery::Ex313) {
                out.push(("ex313".into(), pair));
            }
        }
        let (u, v) = (one_sided_unitary(theta, s, true), one_sided_unitary(theta, s, false));
        if let Ok(pair) = gallery(theta, &Gallery::Ex311(u, v)) {
            out.push(("ex311".into(), pair));
        }
    }
    let w = s.permutation_unitary(Degree::new(1, 1));
    if let Ok(pair) = inner_pair(&w) {
        out.push((format!("inner({w})"), pair));
    }
    out
}

/// A permutation unitary built from e-words only (or f-words only).
pub fn one_sided_unitary(theta: &Arc<Permutation2D>, s: &mut Sampler, e_side: bool) -> Element {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let len = s.rng().gen_range(1..=2i64);
    let d = if e_side {
        Degree::new(len, 0)
    } else {
        Degree::new(0, len)
    };
    let size = theta.count_words(d);
    let mut perm: Vec<usize> = (0..size).collect();
    perm.shuffle(s.rng());
    let phases: Vec<Gaussian> = (0..size).map(|_| s.unit_phase()).collect();
    crate::algebra::permutation_unitary(theta, d, &perm, &phases).expect("valid permutation")
}

fn generators(theta: &Arc<Permutation2D>) -> Vec<Element> {
    let e = (1..=theta.m()).map(|i| Element::isometry(theta, Word::e(i)));
    let f = (1..=theta.n()).map(|j| Element::isometry(theta, Word::f(j)));
    e.chain(f).collect()
}

pub fn bijection_round_trips(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("bijection");
    let mut s = cfg.sampler(40);
    for (name, pair) in gallery_pairs(&cfg.theta, &mut s) {
        let endo = tri!(c, Endomorphism::from_pair(pair.clone()));
        let (e, f) = endo.generator_images();
        let back = tri!(c, pair_from_generator_map(&cfg.theta, e, f));
        c.case(back.same_as(&pair), || {
            format!("{name}: recovered U = {}, V = {}", back.u(), back.v())
        });
        let again = tri!(c, Endomorphism::from_pair(back));
        let (e2, f2) = again.generator_images();
        c.case(e == e2 && f == f2, || {
            format!("{name}: generator images differ after the round trip")
        });
    }
    c
}

/// `λ_(p,q)(X)·s_w = s_w·X` for `d(w) = (p,q)`, with `λ_(p,q)` built from its pair.
pub fn canonical_intertwining(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("canonical-intertwining");
    let mut s = cfg.sampler(41);
    let theta = &cfg.theta;
    let count = (cfg.samples / 2).max(1);
    for (p, q) in CANONICAL {
        let endo = tri!(c, canonical_pair(theta, p, q).and_then(Endomorphism::from_pair));
        let words = theta.enumerate_words(Degree::new(p, q));
        for _ in 0..count {
            let x = s.element(cfg.level);
            let lx = endo.apply(&x);
            let direct = canonical_endo_apply(p, q, &x);
            c.case(lx == direct, || {
                sides_with_residual(format!("({p},{q}); X = {x}"), &lx, &direct)
            });
            for w in &words {
                let sw = Element::isometry(theta, w.clone());
                let lhs = &lx * &sw;
                let rhs = &sw * &x;
                c.case(lhs == rhs, || {
                    sides_with_residual(format!("({p},{q}); w = {w}; X = {x}"), &lhs, &rhs)
                });
            }
        }
    }
    c
}

pub fn canonical_composition(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("canonical-composition");
    let theta = &cfg.theta;
    let endo = |p, q| canonical_pair(theta, p, q).and_then(Endomorphism::from_pair);
    let (a, b) = match (endo(1, 0), endo(0, 1)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            c.error(e);
            return c;
        }
    };
    let target = match canonical_pair(theta, 1, 1) {
        Ok(t) => t,
        Err(e) => {
            c.error(e);
            return c;
        }
    };
    for (l2, l1) in [(&a, &b), (&b, &a)] {
        match compose(l2, l1) {
            Ok(p) => c.case(p.same_as(&target), || {
                format!("composite pair U = {}, V = {}", p.u(), p.v())
            }),
            Err(e) => c.error(e),
        }
    }
    let id = Endomorphism::identity(theta);
    match compose(&id, &a) {
        Ok(p) => c.case(p.same_as(a.pair()), || "compose(id, canonical(1,0)) differs".into()),
        Err(e) => c.error(e),
    }
    c
}

/// `inner_pair(W)` realizes `Ad(W)` on the generators.
pub fn inner_pairs(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("inner-pairs");
    let mut s = cfg.sampler(42);
    let theta = &cfg.theta;
    let gens = generators(theta);
    for _ in 0..(cfg.samples / 5).max(1) {
        let w = s.permutation_unitary(cfg.level.meet(Degree::new(1, 1)));
        let endo = tri!(c, inner_pair(&w).and_then(Endomorphism::from_pair));
        let w_adj = w.adjoint();
        for g in &gens {
            let lhs = endo.apply(g);
            let rhs = &(&w * g) * &w_adj;
            c.case(lhs == rhs, || {
                sides_with_residual(format!("W = {w}; X = {g}"), &lhs, &rhs)
            });
        }
    }
    c
}

/// `(P3·P2)·P1 = P3·(P2·P1)` over triples from the gallery, and `Ψ` is
/// multiplicative on generators.
pub fn pair_product_associativity(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("pair-product");
    let mut s = cfg.sampler(43);
    let theta = &cfg.theta;
    let pairs: Vec<(String, UnitaryPair)> = gallery_pairs(theta, &mut s)
        .into_iter()
        .filter(|(name, _)| name != "canonical(2,1)")
        .collect();
    let gens = generators(theta);
    let picks = (cfg.samples / 10).max(3);
    use rand::Rng;
    for _ in 0..picks {
        let mut pick = || pairs[s.rng().gen_range(0..pairs.len())].clone();
        let ((n1, p1), (n2, p2), (n3, p3)) = (pick(), pick(), pick());
        let left = tri!(c, pair_product(&p3, &p2).and_then(|p32| pair_product(&p32, &p1)));
        let right = tri!(c, pair_product(&p2, &p1).and_then(|p21| pair_product(&p3, &p21)));
        c.case(left.same_as(&right), || {
            format!("({n3}·{n2})·{n1} differs from {n3}·({n2}·{n1})")
        });
        let l1 = tri!(c, Endomorphism::from_pair(p1));
        let l2 = tri!(c, Endomorphism::from_pair(p2));
        let l21 = tri!(c, pair_product(l2.pair(), l1.pair()).and_then(Endomorphism::from_pair));
        for g in &gens {
            let lhs = l21.apply(g);
            let rhs = l2.apply(&l1.apply(g));
            c.case(lhs == rhs, || {
                sides_with_residual(format!("{n2} after {n1} on {g}"), &lhs, &rhs)
            });
        }
    }
    c
}

/// Gallery examples applicable to the configured relation.
pub fn gallery_examples(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("gallery");
    let mut s = cfg.sampler(44);
    let theta = &cfg.theta;
    let gens = generators(theta);
    if is_flip(theta) {
        let m = theta.m();
        // s_fj* s_ei = δ_ij Σ_k S[e_k; f_k]
        let mixing_adj = mixing_unitary(theta).adjoint();
        let mut products = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                let p = &Element::generator(theta, Word::empty(), Word::f(j)) * &Element::isometry(theta, Word::e(i));
                let want = if i == j {
                    mixing_adj.clone()
                } else {
                    Element::zero(theta)
                };
                c.case(p == want, || sides_with_residual(format!("s_f{j}* s_e{i}"), &p, &want));
                products.push(p);
            }
        }
        for _ in 0..(cfg.samples / 5).max(1) {
            let u = s.permutation_unitary(cfg.level.meet(Degree::new(1, 1)));
            let twisted = tri!(c, twisted_check(&u, &u)).holds();
            let commutes = products.iter().all(|p| &u * p == p * &u);
            c.case(twisted && commutes, || {
                format!("U = {u}: twisted {twisted}, commutes {commutes}")
            });
        }
        // ex312: U central, λ² = id
        let u = mixing_unitary(theta);
        for g in &gens {
            c.case(&u * g == g * &u, || format!("U = {u} does not commute with {g}"));
        }
        let endo = tri!(
            c,
            gallery(theta, &Gallery::Ex312).and_then(Endomorphism::from_pair),
            return c
        );
        for g in &gens {
            let twice = endo.apply(&endo.apply(g));
            c.case(&twice == g, || sides_with_residual(format!("λ² on {g}"), &twice, g));
        }
        let e1 = endo.apply(&Element::isometry(theta, Word::e(1)));
        let f1 = Element::isometry(theta, Word::f(1));
        c.case(e1 == f1, || sides_with_residual("λ(s_e1)".into(), &e1, &f1));
        c.case(
            endo.automorphism_witness_check(endo.pair().u(), endo.pair().v()),
            || "ex312 automorphism witness".into(),
        );
    }
    if is_identity(theta) {
        if theta.m() == theta.n() {
            let pair = tri!(c, gallery(theta, &Gallery::Ex313), return c);
            let r = tri!(c, twisted_check(pair.u(), pair.v()), return c);
            c.case(r.holds(), || format!("ex313 residual {}", r.residual));
        }
        for _ in 0..(cfg.samples / 5).max(1) {
            let (u, v) = (
                one_sided_unitary(theta, &mut s, true),
                one_sided_unitary(theta, &mut s, false),
            );
            let pair = gallery(theta, &Gallery::Ex311(u.clone(), v.clone()));
            c.case(pair.is_ok(), || {
                format!("ex311 rejected U = {u}, V = {v}: {:?}", pair.err())
            });
            let via310 = gallery(theta, &Gallery::Ex310(u.clone(), v.clone()));
            c.case(via310.is_ok(), || format!("ex310 rejected U = {u}, V = {v}"));
        }
    }
    let wrong = if is_flip(theta) { Gallery::Ex313 } else { Gallery::Ex312 };
    c.case(matches!(gallery(theta, &wrong), Err(Error::WrongTheta(_))), || {
        "gallery accepted the wrong relation".into()
    });
    c
}

pub fn homomorphism_laws(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("homomorphism");
    let mut s = cfg.sampler(45);
    let theta = &cfg.theta;
    let one = Element::identity(theta);
    let pairs = gallery_pairs(theta, &mut s);
    let level = cfg.level.meet(Degree::new(1, 1));
    for (name, pair) in pairs {
        let endo = tri!(c, Endomorphism::from_pair(pair));
        c.case(endo.apply(&one) == one, || format!("{name}: λ(I) ≠ I"));
        for _ in 0..(cfg.samples / 10).max(1) {
            let (x, y) = (s.element(level), s.element(level));
            let lhs = endo.apply(&(&x * &y));
            let rhs = &endo.apply(&x) * &endo.apply(&y);
            c.case(lhs == rhs, || {
                sides_with_residual(format!("{name}; X = {x}; Y = {y}"), &lhs, &rhs)
            });
            let lhs = endo.apply(&x.adjoint());
            let rhs = endo.apply(&x).adjoint();
            c.case(lhs == rhs, || {
                sides_with_residual(format!("{name}; X* with X = {x}"), &lhs, &rhs)
            });
        }
    }
    c
}

pub fn ad_products(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("ad-product");
    let theta = &cfg.theta;
    let mut endos = vec![("identity", Ok(Endomorphism::identity(theta)))];
    endos.push((
        "canonical(1,1)",
        canonical_pair(theta, 1, 1).and_then(Endomorphism::from_pair),
    ));
    if is_flip(theta) {
        endos.push((
            "ex312",
            gallery(theta, &Gallery::Ex312).and_then(Endomorphism::from_pair),
        ));
    }
    for (name, endo) in endos {
        let endo = tri!(c, endo);
        for k in 1..=2 {
            let r = ad_product_check(&endo, k);
            c.case(r.holds, || {
                format!(
                    "{name} at k = {k}: first failure {:?}",
                    r.first_failure.map(|t| t.to_string())
                )
            });
        }
    }
    c
}

/// Level-k necessary conditions for preserving the core and the diagonal.
pub fn subalgebra_levels(cfg: &SuiteConfig) -> Check {
    let mut c = Check::new("subalgebra-levels");
    let theta = &cfg.theta;
    let id = Endomorphism::identity(theta);
    for k in 1..=2 {
        c.case(preserves_subalgebra_level(&id, Subalgebra::Diagonal, k), || {
            format!("identity leaves the diagonal at k = {k}")
        });
        c.case(preserves_subalgebra_level(&id, Subalgebra::Core, k), || {
            format!("identity leaves the core at k = {k}")
        });
    }
    let endo = tri_once(&mut c, canonical_pair(theta, 1, 1).and_then(Endomorphism::from_pair));
    if let Some(endo) = endo {
        c.case(endo.pair().w().membership(Subalgebra::Core, 2), || {
            "canonical(1,1) has W outside the core".into()
        });
        c.case(preserves_subalgebra_level(&endo, Subalgebra::Core, 1), || {
            "canonical(1,1) leaves the core at k = 1".into()
        });
    }
    c
}

fn tri_once<T>(c: &mut Check, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            c.error(e);
            None
        }
    }
}

impl Sampler {
    fn rng_len(&mut self, max: usize) -> usize {
        use rand::Rng;
        self.rng().gen_range(0..=max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(theta: Permutation2D) -> SuiteConfig {
        SuiteConfig {
            samples: 10,
            level: Degree::new(1, 1),
            ..SuiteConfig::new(Arc::new(theta))
        }
    }

    #[test]
    fn suites_pass_at_small_scale() {
        for theta in [
            Permutation2D::flip(2, 2).unwrap(),
            Permutation2D::identity(2, 3).unwrap(),
        ] {
            let cfg = small(theta);
            let report = run_suite(Suite::All, &cfg);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = small(Permutation2D::identity(2, 3).unwrap());
        let a = run_suite(Suite::Kms, &cfg);
        let b = run_suite(Suite::Kms, &cfg);
        assert_eq!(a.to_records(&cfg), b.to_records(&cfg));
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn suite_names() {
        for s in ["semigroup", "algebra", "modular", "kms", "endo", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_keep_first_witness() {
        let mut c = Check::new("x");
        c.case(true, || unreachable!());
        c.case(false, || "first".into());
        c.case(false, || "second".into());
        assert!(!c.passed());
        assert_eq!(c.witness.as_deref(), Some("first"));
        assert_eq!(c.failures, 2);
    }
}
