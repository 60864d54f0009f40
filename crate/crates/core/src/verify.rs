//! Property suites over the catalog, shared by the `verify` subcommand.

use serde::Serialize;

use crate::diagram::Diagram;
use crate::laurent::LaurentPoly;
use crate::moves;
use crate::pdparse::CATALOG;
use crate::skein::SkeinEngine;
use crate::splitting;

/// Catalog diagrams up to this many crossings enter the lassoing grids.
pub const GRID_MAX_CROSSINGS: usize = 9;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, ..Self::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn grid() -> impl Iterator<Item = (&'static str, Diagram)> {
    CATALOG
        .iter()
        .map(|e| (e.name, e.diagram()))
        .filter(|(_, d)| d.crossing_count() <= GRID_MAX_CROSSINGS)
}

pub fn catalog_self_test() -> SuiteResult {
    let mut r = SuiteResult::new("catalog");
    for e in CATALOG {
        let res = e.check();
        r.record(res.is_ok(), || res.unwrap_err().to_string());
    }
    r
}

/// `∇(lasso(d, c)) = ±z³·∇(d)` and the Alexander shadow
/// `Δ(lasso(d, c)) ≐ (t−1)³·Δ(d)` on every catalog crossing.
pub fn lasso_multiplier() -> (SuiteResult, SuiteResult) {
    let mut conway_suite = SuiteResult::new("lasso-z3");
    let mut alex_suite = SuiteResult::new("lasso-alexander");
    let mut engine = SkeinEngine::new();
    let t_minus_1_cubed = LaurentPoly::from_terms([(0, -1), (1, 1)]).pow(3);
    for (name, d) in grid() {
        let base = engine.conway(&d);
        let base_alex = base.conway_to_alexander().expect("link polynomial");
        for c in 0..d.crossing_count() {
            let (l, _) = moves::lasso(&d, c).expect("valid crossing");
            let got = engine.conway(&l);
            let want = base.scale_by_monomial(1, 3).expect("nonzero");
            conway_suite.record(got.eq_up_to_sign(&want), || format!("{name} crossing {c}: got {}", got.render("z")));
            let alex = got.conway_to_alexander().expect("link polynomial");
            alex_suite.record(alex.eq_up_to_units(&(&t_minus_1_cubed * &base_alex)), || {
                format!("{name} crossing {c}: got {}", alex.render("t"))
            });
        }
    }
    (conway_suite, alex_suite)
}

/// The lasso component links every other component zero times.
pub fn linking_neutrality() -> SuiteResult {
    let mut r = SuiteResult::new("linking-neutrality");
    for (name, d) in grid() {
        for c in 0..d.crossing_count() {
            let (l, created) = moves::lasso(&d, c).expect("valid crossing");
            let lk = splitting::linking_matrix(&l);
            let ok = (0..lk.size()).all(|j| lk.entry(created, j) == 0);
            r.record(ok, || format!("{name} crossing {c}: {lk}"));
        }
    }
    r
}

/// `split_lower(d) ≤ split_diagram_upper(d, 3) ≤ ld(d)` on multi-component
/// fixtures.
pub fn sandwich() -> SuiteResult {
    let mut r = SuiteResult::new("sandwich");
    for e in CATALOG {
        let d = e.diagram();
        if d.component_count() < 2 {
            continue;
        }
        let lower = splitting::split_lower(&d).value;
        let upper = splitting::split_diagram_upper(&d, 3).map(|w| w.bound.value);
        let ld = splitting::warp_linking_degree(&d);
        let ok = matches!((upper.as_ref(), ld.as_ref()), (Ok(&u), Ok(&l)) if lower <= u && u <= l);
        r.record(ok, || format!("{}: lower {lower}, upper {upper:?}, ld {ld:?}", e.name));
    }
    r
}

/// `∇(D₊) − ∇(D₋) = z·∇(D₀)` at every catalog crossing.
pub fn skein_identity() -> SuiteResult {
    let mut r = SuiteResult::new("skein-identity");
    let mut engine = SkeinEngine::new();
    let z = LaurentPoly::monomial(1, 1);
    for (name, d) in grid() {
        for c in 0..d.crossing_count() {
            let here = d.crossings()[c].sign();
            let other = d.crossing_change(c).expect("valid crossing");
            let (pos, neg) = match here {
                crate::Sign::Positive => (d.clone(), other),
                crate::Sign::Negative => (other, d.clone()),
            };
            let lhs = &engine.conway(&pos) - &engine.conway(&neg);
            let rhs = &z * &engine.conway(&d.smooth(c).expect("valid crossing"));
            r.record(lhs == rhs, || format!("{name} crossing {c}"));
        }
    }
    r
}

pub fn run_all() -> Vec<SuiteResult> {
    let (z3, alex) = lasso_multiplier();
    vec![catalog_self_test(), skein_identity(), z3, alex, linking_neutrality(), sandwich()]
}
