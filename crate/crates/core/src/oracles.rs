//! Non-private baselines and brute-force verifiers.
//!
//! Everything here evaluates predicates pointwise or enumerates directly and
//! avoids the mask/count shortcuts used by the selectors.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::arrangement::{self, ArrangementOptions};
use crate::concepts::{
    AnyHalfplane, Domain, ExampleRef, GridPoint, GridSpec, Halfplane, HypothesisExpr, LabeledSample, Literal, Predicate,
};
use crate::dp::{self, QualityTable};
use crate::error::{Error, Result};
use crate::rng::SeedPath;
use crate::selectors::{self, GeometricQuality, Mode};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl OracleReport {
    pub fn new(name: &str, instance: impl Into<String>, expected: impl fmt::Display, observed: impl fmt::Display, pass: bool) -> Self {
        OracleReport {
            name: name.to_string(),
            instance: instance.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        }
    }
}

fn candidate_hits(p: &Predicate, mode: Mode, s: &LabeledSample, alive: &[usize]) -> Result<(usize, usize)> {
    let (mut covered, mut other) = (0, 0);
    for &i in alive {
        if p.eval(s.example(i))? == mode.deleting_value() {
            if s.labels()[i] == mode.covered_label() {
                covered += 1;
            } else {
                other += 1;
            }
        }
    }
    Ok((covered, other))
}

/// Candidate set used by the non-private greedy: all literals, or one
/// halfplane per arrangement face and orientation.
pub fn candidate_predicates(s: &LabeledSample) -> Result<Vec<Predicate>> {
    let grid = match s.domain() {
        Domain::Bool { vars } => return Ok(Literal::all(vars).into_iter().map(Predicate::Literal).collect()),
        Domain::Grid(g) => g,
    };
    let arr = arrangement::build_arrangement(s, grid)?;
    let mut out = Vec::with_capacity(2 * arr.face_count());
    for f in arr.faces() {
        let rep = f.representative();
        for side in [crate::concepts::Side::Above, crate::concepts::Side::Below] {
            out.push(Predicate::Halfplane(Halfplane::from_decoded(grid, rep.a.clone(), rep.b.clone(), side)?));
        }
    }
    Ok(out)
}

/// Classical greedy cover: repeatedly take the candidate that removes the
/// most uncovered examples while removing none of the other class.
pub fn greedy_setcover_nonprivate(s: &LabeledSample, k: usize, mode: Mode) -> Result<HypothesisExpr> {
    let candidates = candidate_predicates(s)?;
    let log_n = (s.len().max(2) as f64).ln().ceil() as usize;
    let max_picks = k.max(1) * log_n.max(1);
    let mut alive: Vec<usize> = (0..s.len()).collect();
    let mut picks = Vec::new();
    while picks.len() < max_picks && alive.iter().any(|&i| s.labels()[i] == mode.covered_label()) {
        let mut best: Option<(usize, usize)> = None;
        for (c, p) in candidates.iter().enumerate() {
            let (covered, other) = candidate_hits(p, mode, s, &alive)?;
            if other == 0 && covered > 0 && best.is_none_or(|(_, b)| covered > b) {
                best = Some((c, covered));
            }
        }
        let Some((c, _)) = best else {
            return Err(Error::Unsatisfiable("no candidate covers an example without touching the other class".into()));
        };
        let p = candidates[c].clone();
        let mut keep = Vec::with_capacity(alive.len());
        for &i in &alive {
            if p.eval(s.example(i))? != mode.deleting_value() {
                keep.push(i);
            }
        }
        alive = keep;
        picks.push(HypothesisExpr::Leaf(p));
    }
    Ok(match mode {
        Mode::And => HypothesisExpr::And(picks),
        Mode::Or => HypothesisExpr::Or(picks),
    })
}

pub const EXHAUSTIVE_CANDIDATE_CAP: usize = 10_000;

/// Scores by evaluating each candidate on every example.
pub fn exhaustive_hypothesis_scores(
    s: &LabeledSample,
    candidates: &[Predicate],
    gq: &GeometricQuality,
) -> Result<QualityTable<Predicate>> {
    if candidates.len() > EXHAUSTIVE_CANDIDATE_CAP {
        return Err(Error::Resource(format!(
            "{} candidates exceed the exhaustive cap of {EXHAUSTIVE_CANDIDATE_CAP}",
            candidates.len()
        )));
    }
    let all: Vec<usize> = (0..s.len()).collect();
    let scores = candidates
        .iter()
        .map(|p| {
            let (c, o) = candidate_hits(p, gq.mode, s, &all)?;
            Ok(gq.from_hits(c as u64, o as u64))
        })
        .collect::<Result<Vec<f64>>>()?;
    QualityTable::new(candidates.to_vec(), scores)
}

pub const EQUIVALENCE_MAX_D: u32 = 64;

/// First grid point where the two halfplanes disagree, if any.
pub fn grid_equivalence_check(f: &AnyHalfplane, f_hat: &Halfplane, grid: GridSpec) -> Result<Option<GridPoint>> {
    if grid.d() > EQUIVALENCE_MAX_D {
        return Err(Error::param(format!("exhaustive check limited to d <= {EQUIVALENCE_MAX_D}")));
    }
    Ok(grid.points().find(|&p| f.contains(p) != f_hat.contains(p)))
}

/// Parameters of one engine iteration for [`neighbor_ratio_check`].
#[derive(Debug, Clone, Copy)]
pub struct StepParams {
    pub mode: Mode,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub step_epsilon: f64,
}

fn literal_log_pmf(s: &LabeledSample, vars: usize, step: &StepParams, noise: i64) -> Result<Vec<f64>> {
    let covered = s.labels().iter().filter(|&&y| y == step.mode.covered_label()).count();
    let b = selectors::threshold_from_noise(covered, noise, step.k, step.alpha, step.beta, step.epsilon);
    let gq = GeometricQuality { mode: step.mode, threshold: b, k: step.k };
    let lits = Literal::all(vars);
    let all: Vec<usize> = (0..s.len()).collect();
    let scores = lits
        .iter()
        .map(|l| {
            let (c, o) = candidate_hits(&Predicate::Literal(*l), step.mode, s, &all)?;
            Ok(gq.from_hits(c as u64, o as u64))
        })
        .collect::<Result<Vec<f64>>>()?;
    dp::log_selection_pmf(&QualityTable::new(lits, scores)?, step.step_epsilon)
}

/// Largest `|ln p_S(h) - ln p_S'(h)|` over literals, with `S' = S + extra`
/// and the threshold noise coupled as in the privacy argument: unchanged when
/// the extra example is not in the covered class, shifted by -1 when it is.
pub fn neighbor_ratio_check(s: &LabeledSample, extra: (&[bool], bool), step: &StepParams, noise: i64) -> Result<f64> {
    let vars = match s.domain() {
        Domain::Bool { vars } => vars,
        _ => return Err(Error::Kind("neighbor ratio check runs on literal instances".into())),
    };
    let bigger = s.with_example(ExampleRef::Bool(extra.0), extra.1)?;
    let shifted = if extra.1 == step.mode.covered_label() { noise - 1 } else { noise };
    let p = literal_log_pmf(s, vars, step, noise)?;
    let q = literal_log_pmf(&bigger, vars, step, shifted)?;
    Ok(p.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Pearson chi-square p-value, pooling cells with expected count below 5.
pub fn chi_square_p_value(observed: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    let n = total as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut pool_o, mut pool_e) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * n;
        if e < 5.0 {
            pool_o += o as f64;
            pool_e += e;
        } else {
            cells.push((o as f64, e));
        }
    }
    if pool_e > 0.0 {
        cells.push((pool_o, pool_e));
    }
    if cells.len() < 2 {
        return 1.0;
    }
    let stat: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let df = (cells.len() - 1) as f64;
    1.0 - ChiSquared::new(df).expect("positive df").cdf(stat)
}

/// Fault injected into the verification suites to check that they can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    #[default]
    None,
    /// Reads face mask bit `i + 1` in place of bit `i`.
    MaskOffByOne,
}

pub const SUITES: [&str; 4] = ["arrangement", "selectors", "privacy-ratio", "em-pmf"];

fn random_grid_sample(seed: u64, d: u32, n: usize) -> LabeledSample {
    use rand::Rng;
    let grid = GridSpec::new(d).expect("valid d");
    let mut rng = SeedPath::root(seed).rng();
    let pts: Vec<GridPoint> = (0..n).map(|_| GridPoint::new(rng.random_range(0..=d), rng.random_range(0..=d))).collect();
    let labels = (0..n).map(|_| rng.random_bool(0.5)).collect();
    LabeledSample::grid(grid, pts, labels).expect("points in grid")
}

fn random_bool_sample(seed: u64, vars: usize, n: usize) -> LabeledSample {
    use rand::Rng;
    let mut rng = SeedPath::root(seed).rng();
    let rows = (0..n).map(|_| (0..vars).map(|_| rng.random_bool(0.5)).collect()).collect();
    let labels = (0..n).map(|_| rng.random_bool(0.5)).collect();
    LabeledSample::boolean(vars, rows, labels).expect("valid rows")
}

fn arrangement_suite(fault: Fault) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    let mut area_ok = 0;
    let mut sign_ok = 0;
    let instances = 20;
    for seed in 0..instances {
        let s = random_grid_sample(seed, 8, 9);
        let grid = s.domain().grid().expect("grid");
        let arr = arrangement::build_arrangement_with(&s, grid, ArrangementOptions { with_masks: true })?;
        if arr.total_area() == arr.box_area() {
            area_ok += 1;
        }
        let n = s.len();
        let mut ours: Vec<Vec<bool>> = arr
            .faces()
            .map(|f| {
                let m = f.below_mask().expect("masks");
                match fault {
                    Fault::None => m,
                    Fault::MaskOffByOne => (0..n).map(|i| m[(i + 1) % n]).collect(),
                }
            })
            .collect();
        ours.sort();
        let oracle: Vec<Vec<bool>> = arrangement::face_sign_oracle(&s, grid)?.into_iter().map(|p| p.0).collect();
        if ours == oracle {
            sign_ok += 1;
        }
    }
    out.push(OracleReport::new("area-conservation", format!("{instances} random instances, n=9, d=8"), instances, area_ok, area_ok == instances));
    out.push(OracleReport::new("sign-vector-oracle", format!("{instances} random instances, n=9, d=8"), instances, sign_ok, sign_ok == instances));
    Ok(out)
}

fn selectors_suite() -> Result<Vec<OracleReport>> {
    let mut mismatches = 0;
    let mut checked = 0;
    for seed in 0..10 {
        let s = random_grid_sample(100 + seed, 8, 6);
        let grid = s.domain().grid().expect("grid");
        let arr = arrangement::build_arrangement_with(&s, grid, ArrangementOptions { with_masks: true })?;
        for mode in [Mode::And, Mode::Or] {
            let gq = GeometricQuality { mode, threshold: 2.5, k: 2 };
            let scorer = selectors::TripleScorer::new(&arr, &s, mode)?;
            let c_total = scorer.candidates();
            let preds: Vec<Predicate> = (0..2 * arr.face_count())
                .map(|c| selectors::face_halfplane(arr.face(c / 2), selectors::candidate_side(c), &arr).map(Predicate::Halfplane))
                .collect::<Result<_>>()?;
            let exhaustive = exhaustive_hypothesis_scores(&s, &preds, &gq)?;
            for c in 0..preds.len() {
                checked += 1;
                let (cov, oth) = selectors::halfplane_candidate_hits(&arr, mode, c);
                if gq.from_hits(cov, oth) != exhaustive.scores()[c] {
                    mismatches += 1;
                }
                if c_total == preds.len() && scorer.triple_hits(c, c, c) != (cov, oth) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(vec![OracleReport::new("face-scores-vs-pointwise", format!("{checked} candidates"), 0, mismatches, mismatches == 0)])
}

fn privacy_suite() -> Result<Vec<OracleReport>> {
    use rand::Rng;
    let mut worst: f64 = 0.0;
    let mut bound = 0.0;
    let mut rng = SeedPath::root(77).rng();
    let mut violations = 0;
    for t in 0..40u64 {
        let s = random_bool_sample(200 + t, 4, 10);
        let eps = 1.0;
        let budget = dp::PrivacyBudget::for_set_cover(eps, 1e-6, 2, 0.25)?;
        bound = budget.step_epsilon;
        let extra: Vec<bool> = (0..4).map(|_| rng.random_bool(0.5)).collect();
        for mode in [Mode::And, Mode::Or] {
            for label in [false, true] {
                let step = StepParams { mode, k: 2, alpha: 0.25, beta: 0.1, epsilon: eps, step_epsilon: budget.step_epsilon };
                let noise = rng.random_range(-20..20);
                let r = neighbor_ratio_check(&s, (&extra, label), &step, noise)?;
                worst = worst.max(r);
                if r > budget.step_epsilon + 1e-12 {
                    violations += 1;
                }
            }
        }
    }
    Ok(vec![OracleReport::new(
        "neighbor-log-ratio",
        "40 random literal states x 2 modes x 2 labels",
        format!("<= {bound:.6}"),
        format!("{worst:.6} ({violations} violations)"),
        violations == 0,
    )])
}

fn em_pmf_suite() -> Result<Vec<OracleReport>> {
    let table = QualityTable::indexed(vec![0.0, 1.0, 2.0, -1.0])?;
    let probs = dp::exact_selection_pmf(&table, 1.0)?;
    let mut counts = vec![0u64; 4];
    let mut rng = SeedPath::root(5).rng();
    let draws = 100_000;
    for _ in 0..draws {
        counts[dp::exp_mech_finite(&table, 1.0, &mut rng)?.0] += 1;
    }
    let p = chi_square_p_value(&counts, &probs);
    Ok(vec![OracleReport::new("exp-mech-chi-square", format!("4 candidates, {draws} draws"), "p > 0.001", format!("p = {p:.4}"), p > 0.001)])
}

/// Runs the named suites (all when `names` is empty).
pub fn run_suites(names: &[String], fault: Fault) -> Result<Vec<OracleReport>> {
    for n in names {
        if !SUITES.contains(&n.as_str()) {
            return Err(Error::param(format!("unknown suite `{n}`; known: {}", SUITES.join(", "))));
        }
    }
    let wanted = |s: &str| names.is_empty() || names.iter().any(|n| n == s);
    let mut out = Vec::new();
    if wanted("arrangement") {
        out.extend(arrangement_suite(fault)?);
    }
    if wanted("selectors") {
        out.extend(selectors_suite()?);
    }
    if wanted("privacy-ratio") {
        out.extend(privacy_suite()?);
    }
    if wanted("em-pmf") {
        out.extend(em_pmf_suite()?);
    }
    Ok(out)
}
