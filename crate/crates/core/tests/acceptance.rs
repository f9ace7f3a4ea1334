//! Acceptance run: thirteen criteria, one PASS/FAIL line each.
//!
//! Property criteria run at level (2,2) with 100 samples for both the flip
//! relation on 2×2 and the identity relation on 2×3.

use std::sync::Arc;
use std::time::{Duration, Instant};

use otheta::endomorphism::{gallery, Gallery};
use otheta::modular::min_eigenvalue;
use otheta::verify::{self, Check, CheckFn, SuiteConfig};
use otheta::{Degree, Element, ExactScalar, ModularContext, Permutation2D, Rational, Word};

const SEED: u64 = 20_240_611;
const BUDGET: Duration = Duration::from_secs(60);

fn configs() -> Vec<(&'static str, SuiteConfig)> {
    let make = |theta: Permutation2D| SuiteConfig {
        seed: SEED,
        ..SuiteConfig::new(Arc::new(theta))
    };
    vec![
        ("flip(2,2)", make(Permutation2D::flip(2, 2).unwrap())),
        ("identity(2,3)", make(Permutation2D::identity(2, 3).unwrap())),
    ]
}

struct Outcome {
    passed: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            detail: Vec::new(),
        }
    }

    fn record(&mut self, label: &str, ok: bool, note: String) {
        self.passed &= ok;
        if !ok {
            self.detail.push(format!("{label}: {note}"));
        }
    }

    fn checks(&mut self, fns: &[CheckFn]) {
        for (name, cfg) in configs() {
            self.checks_with(name, &cfg, fns);
        }
    }

    fn checks_with(&mut self, name: &str, cfg: &SuiteConfig, fns: &[CheckFn]) {
        let start = Instant::now();
        let results: Vec<Check> = fns.iter().map(|f| f(cfg)).collect();
        let elapsed = start.elapsed();
        for c in results {
            self.record(&format!("{name} {}", c.name), c.passed(), c.to_string());
        }
        self.record(&format!("{name} time"), elapsed < BUDGET, format!("{elapsed:?}"));
    }
}

fn report(n: usize, title: &str, run: impl FnOnce(&mut Outcome)) -> bool {
    let mut o = Outcome::new();
    run(&mut o);
    println!("{} criterion {n}: {title}", if o.passed { "PASS" } else { "FAIL" });
    for d in &o.detail {
        println!("    {d}");
    }
    o.passed
}

fn generator(theta: &Arc<Permutation2D>, u: Word, v: Word) -> Element {
    Element::generator(theta, u, v)
}

fn rational(x: &ExactScalar) -> Option<Rational> {
    x.as_rational()
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn criterion_1() -> bool {
    report(1, "semigroup confluence, degrees, factorization, cancellativity", |o| {
        o.checks(&[
            verify::confluence,
            verify::degree_conservation,
            verify::factor_round_trip,
            verify::cancellativity,
            verify::common_extension_completeness,
        ])
    })
}

fn criterion_2() -> bool {
    report(2, "algebra associativity, unit, involution, raising, grading", |o| {
        o.checks(&[
            verify::associativity,
            verify::unit_law,
            verify::involution,
            verify::raising_invariance,
            verify::grading_leibniz,
        ])
    })
}

fn criterion_3() -> bool {
    report(3, "symbolic products and omega against the graded action", |o| {
        o.checks(&[verify::oracle_products, verify::oracle_traces])
    })
}

fn criterion_4() -> bool {
    report(4, "trace of s_u X s_v* and spot values of omega", |o| {
        o.checks(&[verify::trace_sandwich, verify::omega_spot_values]);
        let flip = Arc::new(Permutation2D::flip(2, 2).unwrap());
        let ident = Arc::new(Permutation2D::identity(2, 3).unwrap());
        let w = Word::from_blocks(vec![1], vec![1]);
        for theta in [&flip, &ident] {
            let v =
                ModularContext::with_default_tolerance(theta.clone()).omega(&generator(theta, Word::e(1), Word::e(1)));
            o.record(
                "omega(S[e1;e1]) with m = 2",
                rational(&v) == Some(r(1, 2)),
                v.to_string(),
            );
        }
        let v = ModularContext::with_default_tolerance(ident.clone()).omega(&generator(&ident, w.clone(), w));
        o.record(
            "omega(S[e1.f1;e1.f1]) with m = 2, n = 3",
            rational(&v) == Some(r(1, 6)),
            v.to_string(),
        );
    })
}

fn criterion_5() -> bool {
    report(5, "Tomita adjointness and polar relations", |o| {
        o.checks(&[verify::tomita_adjointness, verify::polar_relations])
    })
}

fn criterion_6() -> bool {
    report(6, "Delta^z is multiplicative for z in {1, -1, 1/2, 2}", |o| {
        o.checks(&[verify::delta_multiplicative])
    })
}

fn criterion_7() -> bool {
    report(7, "KMS identity exact, modular group equals gauge action", |o| {
        o.checks(&[verify::kms_exact, verify::sigma_gauge])
    })
}

fn criterion_8() -> bool {
    report(8, "canonical pairs twisted, bijection round trips, intertwining", |o| {
        o.checks(&[
            verify::canonical_pairs_twisted,
            verify::bijection_round_trips,
            verify::canonical_intertwining,
        ])
    })
}

fn criterion_9() -> bool {
    report(
        9,
        "composition of canonical pairs, inner pairs, pair-product associativity",
        |o| {
            o.checks(&[
                verify::canonical_composition,
                verify::inner_pairs,
                verify::pair_product_associativity,
            ])
        },
    )
}

fn criterion_10() -> bool {
    report(10, "example gallery", |o| {
        o.checks(&[verify::gallery_examples]);
        // the square identity relation is the only home of the (U, U*) example
        let square = SuiteConfig {
            seed: SEED,
            ..SuiteConfig::new(Arc::new(Permutation2D::identity(2, 2).unwrap()))
        };
        o.checks_with("identity(2,2)", &square, &[verify::gallery_examples]);
        let theta = square.theta.clone();
        let pair = gallery(&theta, &Gallery::Ex313);
        o.record("ex313 on identity(2,2)", pair.is_ok(), format!("{:?}", pair.err()));
    })
}

fn criterion_11() -> bool {
    report(11, "finite Ad-product form at k = 1, 2", |o| {
        o.checks(&[verify::ad_products])
    })
}

fn criterion_12() -> bool {
    report(12, "Delta spectrum windows and sigma-fixed degrees", |o| {
        let ctx = |m, n| ModularContext::with_default_tolerance(Arc::new(Permutation2D::identity(m, n).unwrap()));
        let got: Vec<Option<Rational>> = ctx(2, 3).delta_spectrum(1).iter().map(rational).collect();
        let want: Vec<Option<Rational>> = [
            r(1, 6),
            r(1, 3),
            r(1, 2),
            r(2, 3),
            r(1, 1),
            r(3, 2),
            r(2, 1),
            r(3, 1),
            r(6, 1),
        ]
        .into_iter()
        .map(Some)
        .collect();
        o.record("spectrum m = 2, n = 3", got == want, format!("{got:?}"));

        // 4^a 2^b = 2^(2a+b): the nine exponent pairs give seven values
        let got: Vec<Option<Rational>> = ctx(4, 2).delta_spectrum(1).iter().map(rational).collect();
        let want: Vec<Option<Rational>> = (-3..=3)
            .map(|k: i32| Some(Rational::from_integer(2.into()).pow(k)))
            .collect();
        o.record("spectrum m = 4, n = 2", got == want, format!("{got:?}"));

        o.record(
            "fixed (1,-2) at m = 4, n = 2",
            ctx(4, 2).sigma_fixed_degree(Degree::new(1, -2)),
            String::new(),
        );
        o.record(
            "not fixed (1,-1) at m = 2, n = 3",
            !ctx(2, 3).sigma_fixed_degree(Degree::new(1, -1)),
            String::new(),
        );
        o.checks(&[verify::spectrum_window]);
    })
}

fn criterion_13() -> bool {
    report(
        13,
        "Gram matrices: scalar identity at level (1,1), positive on random bases",
        |o| {
            o.checks(&[verify::gram_identity, verify::gram_positivity]);
            // direct restatement for m = 2, n = 3
            let theta = Arc::new(Permutation2D::identity(2, 3).unwrap());
            let ctx = ModularContext::with_default_tolerance(theta.clone());
            let words = theta.enumerate_words(Degree::new(1, 1));
            let basis: Vec<Element> = words
                .iter()
                .flat_map(|u| words.iter().map(|v| generator(&theta, u.clone(), v.clone())))
                .collect();
            let g = ctx.gram_matrix(&basis).expect("same theta");
            let sixth = ExactScalar::ratio(1, 6);
            let ok = g.iter().enumerate().all(|(a, row)| {
                row.iter()
                    .enumerate()
                    .all(|(b, x)| if a == b { x == &sixth } else { x.is_zero() })
            });
            o.record("36x36 Gram equals I/6", ok, String::new());
            let min = min_eigenvalue(&g).unwrap_or(f64::NAN);
            o.record(
                "minimum eigenvalue 1/6",
                (min - 1.0 / 6.0).abs() < 1e-12,
                format!("{min}"),
            );
        },
    )
}

#[test]
fn acceptance() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
        criterion_12(),
        criterion_13(),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len());
}
