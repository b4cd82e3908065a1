//! Acceptance suites: each checks one headline property against an
//! independent oracle or invariant and reports pass or fail with details.
//!
//! Count runs are cached in a [`Harness`] so the structural suite can audit
//! every curve the counting suites produced.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::count::{count_random, kontsevich_oracle, small, CountOptions, CountResult};
use crate::curve::{corner_locus, Element, TropicalPolynomial};
use crate::error::{Error, Result};
use crate::lattice::{CellClass, LatticePolygon, QuadParameters};
use crate::net_oracle::{cuspidal_cubics_in_nets, NetOracleOptions};
use crate::quadcusp::{
    binomial_oracle, count_adjacent, count_opposite, nonexistence_certificate, EdgePair,
    NormalQuadrilateral, ObstructionShape,
};
use crate::subdivision::{
    admissible, admissible_tilings, enumerate_with, is_regular, rank_report, AdmissibilityMode,
    EnumerationOptions, Subdivision,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    NodalOracle,
    CuspInvariance,
    CuspLiterature,
    QuadOracle,
    RankAudit,
    Structural,
    Obstruction,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::NodalOracle,
        Suite::CuspInvariance,
        Suite::CuspLiterature,
        Suite::QuadOracle,
        Suite::RankAudit,
        Suite::Structural,
        Suite::Obstruction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NodalOracle => "nodal-oracle",
            Suite::CuspInvariance => "cusp-invariance",
            Suite::CuspLiterature => "cusp-literature",
            Suite::QuadOracle => "quad-oracle",
            Suite::RankAudit => "rank-audit",
            Suite::Structural => "structural",
            Suite::Obstruction => "obstruction",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.detail,
            self.seconds
        )
    }
}

/// `d` times the standard triangle.
pub fn degree(d: i64) -> LatticePolygon {
    LatticePolygon::new([(0, 0), (d, 0), (0, d)].map(Into::into)).expect("nondegenerate")
}

/// The quadrilateral `conv{(0,0),(2,0),(2,1),(0,2)}`.
pub fn small_quadrilateral() -> LatticePolygon {
    LatticePolygon::new([(0, 0), (2, 0), (2, 1), (0, 2)].map(Into::into)).expect("nondegenerate")
}

/// Polygons audited by the rank and obstruction suites.
pub fn audit_polygons() -> Vec<(LatticePolygon, AdmissibilityMode)> {
    let quad = NormalQuadrilateral::new(3, 1, 1, 2, 1).expect("valid").polygon();
    let rect = LatticePolygon::new([(0, 0), (2, 0), (2, 2), (0, 2)].map(Into::into)).expect("valid");
    vec![
        (degree(1), AdmissibilityMode::Nodal),
        (degree(2), AdmissibilityMode::Nodal),
        (degree(3), AdmissibilityMode::Nodal),
        (small_quadrilateral(), AdmissibilityMode::Nodal),
        (rect.clone(), AdmissibilityMode::Nodal),
        (degree(3), AdmissibilityMode::OneCusp),
        (small_quadrilateral(), AdmissibilityMode::OneCusp),
        (rect, AdmissibilityMode::OneCusp),
        (quad, AdmissibilityMode::OneCusp),
    ]
}

/// Number of accepted random configurations per cusp polygon.
pub const CUSP_CONFIGURATIONS: u64 = 5;
const RETRY_BUDGET: u32 = 32;

type CuspRuns = Vec<(String, Vec<Result<CountResult>>, f64)>;

/// Runs the suites, sharing count results between them.
#[derive(Default)]
pub struct Harness {
    nodal: Option<(Vec<Result<CountResult>>, Vec<f64>)>,
    cusp: Option<CuspRuns>,
}

impl Harness {
    pub fn new() -> Self {
        Self::default()
    }

    fn nodal_runs(&mut self) -> &(Vec<Result<CountResult>>, Vec<f64>) {
        self.nodal.get_or_insert_with(|| {
            let mut results = Vec::new();
            let mut times = Vec::new();
            for d in 1..=3 {
                let t = Instant::now();
                results.push(count_random(
                    &degree(d),
                    AdmissibilityMode::Nodal,
                    1,
                    RETRY_BUDGET,
                    CountOptions::default(),
                ));
                times.push(t.elapsed().as_secs_f64());
            }
            (results, times)
        })
    }

    fn cusp_runs(&mut self) -> &CuspRuns {
        self.cusp.get_or_insert_with(|| {
            [("degree 3", degree(3)), ("small quadrilateral", small_quadrilateral())]
                .into_iter()
                .map(|(name, delta)| {
                    let t = Instant::now();
                    let runs = (1..=CUSP_CONFIGURATIONS)
                        .map(|k| {
                            count_random(
                                &delta,
                                AdmissibilityMode::OneCusp,
                                1000 * k,
                                RETRY_BUDGET,
                                CountOptions::default(),
                            )
                        })
                        .collect();
                    (name.to_string(), runs, t.elapsed().as_secs_f64())
                })
                .collect()
        })
    }

    pub fn run(&mut self, suite: Suite) -> CriterionReport {
        let t = Instant::now();
        let (passed, detail) = match suite {
            Suite::NodalOracle => self.nodal_oracle(),
            Suite::CuspInvariance => self.cusp_invariance(),
            Suite::CuspLiterature => self.cusp_literature(),
            Suite::QuadOracle => quad_oracle(50, 12, 7),
            Suite::RankAudit => rank_audit(&audit_polygons()),
            Suite::Structural => self.structural(),
            Suite::Obstruction => obstruction(&audit_polygons()),
        };
        CriterionReport {
            criterion: suite.name().to_string(),
            passed,
            detail,
            seconds: t.elapsed().as_secs_f64(),
        }
    }

    pub fn run_all(&mut self) -> Vec<CriterionReport> {
        Suite::ALL.into_iter().map(|s| self.run(s)).collect()
    }

    fn nodal_oracle(&mut self) -> (bool, String) {
        let (results, times) = self.nodal_runs();
        let mut ok = true;
        let mut parts = Vec::new();
        for (i, (r, secs)) in results.iter().zip(times).enumerate() {
            let d = i as u32 + 1;
            let want = small(&kontsevich_oracle(d)).expect("small");
            match r {
                Ok(r) => {
                    ok &= r.total == want;
                    parts.push(format!("d={d}: {} vs {want} in {secs:.1}s", r.total));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("d={d}: error {e}"));
                }
            }
        }
        ok &= times[2] <= 300.0;
        (ok, parts.join("; "))
    }

    fn cusp_invariance(&mut self) -> (bool, String) {
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, runs, secs) in self.cusp_runs() {
            let totals: Vec<String> = runs
                .iter()
                .map(|r| match r {
                    Ok(r) => r.total.to_string(),
                    Err(e) => format!("error({e})"),
                })
                .collect();
            let first = runs.first().and_then(|r| r.as_ref().ok()).map(|r| r.total);
            let same = runs
                .iter()
                .all(|r| r.as_ref().ok().map(|r| r.total) == first && first.is_some());
            ok &= same && *secs <= 1800.0;
            parts.push(format!("{name}: totals [{}]", totals.join(", ")));
        }
        (ok, parts.join("; "))
    }

    fn cusp_literature(&mut self) -> (bool, String) {
        let report = cuspidal_cubics_in_nets(NetOracleOptions::default());
        let tropical: Vec<u64> = self.cusp_runs()[0]
            .1
            .iter()
            .filter_map(|r| r.as_ref().ok().map(|r| r.total))
            .collect();
        let oracle = report.count();
        let ok = match oracle {
            Some(n) => !tropical.is_empty() && tropical.iter().all(|&t| t == n as u64),
            None => false,
        };
        (
            ok,
            format!(
                "net oracle counts {:?} (agreed: {:?}); tropical degree 3 totals {:?}",
                report.counts, oracle, tropical
            ),
        )
    }

    fn structural(&mut self) -> (bool, String) {
        self.nodal_runs();
        self.cusp_runs();
        let nodal = &self.nodal.as_ref().expect("cached").0;
        let cusp = self.cusp.as_ref().expect("cached");
        let all: Vec<&CountResult> = nodal
            .iter()
            .chain(cusp.iter().flat_map(|(_, runs, _)| runs))
            .filter_map(|r| r.as_ref().ok())
            .collect();
        let mut failures = BTreeMap::<&str, usize>::new();
        let mut curves = 0;
        for r in &all {
            for c in &r.curves {
                curves += 1;
                for (check, ok) in structural_checks(r, c) {
                    if !ok {
                        *failures.entry(check).or_default() += 1;
                    }
                }
            }
        }
        if failures.is_empty() {
            (true, format!("{curves} curves, all checks hold"))
        } else {
            (false, format!("{curves} curves, failures {failures:?}"))
        }
    }
}

/// Named structural checks of one solved curve.
pub fn structural_checks(
    r: &CountResult,
    c: &crate::count::SolvedCurve,
) -> Vec<(&'static str, bool)> {
    let curve = &c.curve;
    let balanced = curve.is_balanced();
    let duality = corner_locus(&TropicalPolynomial::from_lifting(curve.lifting()))
        .map(|d| d.subdivision() == curve.subdivision())
        .unwrap_or(false);
    let orientation = match curve.orient(&r.points, r.mode) {
        Ok(f) => f.sigma == c.sigma,
        Err(_) => false,
    };
    let incidence = r.points.iter().zip(&c.assignment).all(|(p, &e)| {
        curve.incidence(p).is_some_and(|inc| {
            inc.interior
                && !matches!(inc.element, Element::Vertex(_))
                && curve.dual_edge(inc.element) == Some(e)
        })
    });
    vec![
        ("balancing", balanced),
        ("duality", duality),
        ("orientation", orientation),
        ("incidence", incidence),
        ("weight", c.weight > 0),
    ]
}

/// Random normal quadrilaterals with parameters at most `max`.
pub fn random_quadrilaterals(count: usize, max: i64, seed: u64) -> Vec<NormalQuadrilateral> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let params = QuadParameters {
            m: rng.gen_range(1..=max),
            p: rng.gen_range(1..=max),
            q: rng.gen_range(1..=max),
            r: rng.gen_range(1..=max),
            s: rng.gen_range(1..=max),
        };
        if let Ok(q) = NormalQuadrilateral::from_params(params) {
            out.push(q);
        }
    }
    out
}

pub fn quad_oracle(count: usize, max: i64, seed: u64) -> (bool, String) {
    let mut bad = Vec::new();
    let quads = random_quadrilaterals(count, max, seed);
    for q in &quads {
        let adj = binomial_oracle(q, EdgePair::Adjacent).map(|o| o == count_adjacent(q));
        let opp = binomial_oracle(q, EdgePair::Opposite).map(|o| o == count_opposite(q));
        if !matches!((adj, opp), (Ok(true), Ok(true))) {
            bad.push(q.params());
        }
    }
    (
        bad.is_empty(),
        format!("{}/{} instances matched", quads.len() - bad.len(), quads.len()),
    )
}

/// Every regular admissible subdivision of each polygon satisfies the rank
/// bounds.
pub fn rank_audit(polys: &[(LatticePolygon, AdmissibilityMode)]) -> (bool, String) {
    let mut checked = 0;
    let mut defective = 0;
    let mut problems = Vec::new();
    for (delta, mode) in polys {
        let tilings = match admissible_tilings(delta, *mode, 64) {
            Ok(t) => t,
            Err(e) => {
                problems.push(format!("{delta} {mode}: {e}"));
                continue;
            }
        };
        for cells in tilings {
            let Ok(sub) = Subdivision::new(delta.clone(), cells) else {
                problems.push(format!("{delta} {mode}: invalid tiling"));
                continue;
            };
            if admissible(&sub, *mode).is_err() || is_regular(&sub).is_none() {
                continue;
            }
            checked += 1;
            match rank_report(&sub) {
                Ok(rep) => defective += usize::from(rep.d != 0),
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    (
        problems.is_empty() && checked > 0,
        if problems.is_empty() {
            format!("{checked} subdivisions within bounds ({defective} with positive defect)")
        } else {
            format!("{checked} subdivisions, violations: {}", problems.join("; "))
        },
    )
}

/// Certificates for all trapezoids with parallel sides up to 20, and no
/// trapezoid cell in any enumerated 1-cuspidal subdivision.
pub fn obstruction(polys: &[(LatticePolygon, AdmissibilityMode)]) -> (bool, String) {
    let mut bad_certs = 0;
    for p in 1..=20 {
        for q in 1..=20 {
            match nonexistence_certificate(ObstructionShape::Trapezoid { p, q }) {
                Ok(c) if c.lower - c.upper == 1 && c.forbidden => {}
                _ => bad_certs += 1,
            }
        }
    }
    let mut subs = 0;
    let mut trapezoids = 0;
    for (delta, mode) in polys.iter().filter(|(_, m)| *m == AdmissibilityMode::OneCusp) {
        match enumerate_with(delta, *mode, EnumerationOptions::default()) {
            Ok(list) => {
                subs += list.len();
                trapezoids += list
                    .iter()
                    .filter(|s| s.classes().contains(&CellClass::Trapezoid))
                    .count();
            }
            Err(_) => trapezoids += 1,
        }
    }
    (
        bad_certs == 0 && trapezoids == 0,
        format!(
            "400 certificates, {bad_certs} without margin 1; {subs} cusp subdivisions, {trapezoids} with a trapezoid"
        ),
    )
}
