//! Private selection of one predicate per greedy iteration.
//!
//! AND-mode scores a predicate by the negatives it labels 0 against the
//! positives it labels 0; OR-mode is the mirror image on the value 1. The
//! geometric selectors score every face of the dual arrangement in both
//! orientations from per-face counts (halfplanes) or masks (triangles).

use serde::{Deserialize, Serialize};

use crate::arrangement::{self, Arrangement, ArrangementOptions, FaceRef};
use crate::concepts::{ExampleRef, Halfplane, LabeledSample, Literal, Predicate, Side, Triangle};
use crate::dp::{self, QualityTable};
use crate::error::{Error, Result};
use crate::geom::RatPoint;
use crate::rng::{label, DetRng, SeedPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Cover negatives with predicates that label them 0.
    And,
    /// Cover positives with predicates that label them 1.
    Or,
}

impl Mode {
    /// The predicate value that removes an example from the sample.
    pub fn deleting_value(self) -> bool {
        match self {
            Mode::And => false,
            Mode::Or => true,
        }
    }

    /// The label being covered.
    pub fn covered_label(self) -> bool {
        match self {
            Mode::And => false,
            Mode::Or => true,
        }
    }
}

/// Scoring rule for one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricQuality {
    pub mode: Mode,
    /// Noisy threshold `b_j`.
    pub threshold: f64,
    pub k: usize,
}

impl GeometricQuality {
    /// `min(covered_hits - b_j / k, -other_hits)`, where a hit is an example
    /// the predicate maps to the deleting value.
    pub fn from_hits(&self, covered_hits: u64, other_hits: u64) -> f64 {
        (covered_hits as f64 - self.threshold / self.k as f64).min(-(other_hits as f64))
    }
}

/// Counts hits by direct evaluation on every example.
pub fn quality_score(h: &Predicate, gq: &GeometricQuality, s: &LabeledSample) -> Result<f64> {
    let (covered, other) = hit_counts(h, gq.mode, s)?;
    Ok(gq.from_hits(covered, other))
}

fn hit_counts(h: &Predicate, mode: Mode, s: &LabeledSample) -> Result<(u64, u64)> {
    let (mut covered, mut other) = (0, 0);
    for (x, label) in s.iter() {
        if h.eval(x)? == mode.deleting_value() {
            if label == mode.covered_label() {
                covered += 1;
            } else {
                other += 1;
            }
        }
    }
    Ok((covered, other))
}

/// Noisy threshold `b_j` and the floored Laplace draw `w_j` behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisyThreshold {
    pub b: f64,
    pub w: i64,
}

/// `b_j = |covered| + w_j - (2k / eps) ln(2 / alpha) ln((2k / beta) ln(2 / alpha))`
/// with `w_j = floor(Lap(2k / eps * ln(2 / alpha)))`.
pub fn noisy_threshold(
    covered: usize,
    k: usize,
    alpha: f64,
    beta: f64,
    epsilon: f64,
    rng: &mut DetRng,
) -> Result<NoisyThreshold> {
    let w = dp::floored_laplace(dp::threshold_noise_scale(epsilon, k, alpha), rng)?;
    Ok(NoisyThreshold { b: threshold_from_noise(covered, w, k, alpha, beta, epsilon), w })
}

/// The deterministic part of [`noisy_threshold`] for a given draw.
pub fn threshold_from_noise(covered: usize, w: i64, k: usize, alpha: f64, beta: f64, epsilon: f64) -> f64 {
    let l = (2.0 / alpha).ln();
    let kf = k as f64;
    covered as f64 + w as f64 - (2.0 * kf / epsilon) * l * ((2.0 * kf / beta) * l).ln()
}

/// Scores of every literal on the current sample, in the given order.
pub fn literal_table(s: &LabeledSample, gq: &GeometricQuality, literals: &[Literal]) -> Result<QualityTable<Literal>> {
    if literals.is_empty() {
        return Err(Error::param("empty literal set"));
    }
    let rows = match s.bool_rows() {
        Some(r) => r,
        None if s.is_empty() => &[],
        None => return Err(Error::Kind("literal selection on a geometric sample".into())),
    };
    let scores = literals
        .iter()
        .map(|l| {
            let (mut covered, mut other) = (0, 0);
            for (row, &y) in rows.iter().zip(s.labels()) {
                if l.var >= row.len() {
                    return Err(Error::param(format!("literal on v{} beyond the domain", l.var)));
                }
                if l.eval(row) == gq.mode.deleting_value() {
                    if y == gq.mode.covered_label() {
                        covered += 1;
                    } else {
                        other += 1;
                    }
                }
            }
            Ok(gq.from_hits(covered, other))
        })
        .collect::<Result<Vec<f64>>>()?;
    QualityTable::new(literals.to_vec(), scores)
}

/// Exponential mechanism over literals.
pub fn select_literal(
    s: &LabeledSample,
    gq: &GeometricQuality,
    literals: &[Literal],
    step_epsilon: f64,
    rng: &mut DetRng,
) -> Result<Literal> {
    let table = literal_table(s, gq, literals)?;
    let (_, l) = dp::exp_mech_finite(&table, step_epsilon, rng)?;
    Ok(*l)
}

/// Covered and other hits of candidate `2 f + z` (`z = 0` for the upper
/// halfplane `y >= a x + b`, `z = 1` for the lower one) read from face counts.
pub fn halfplane_candidate_hits(arr: &Arrangement, mode: Mode, candidate: usize) -> (u64, u64) {
    let f = candidate / 2;
    let upper = candidate.is_multiple_of(2);
    let nb = arr.negatives_below()[f] as u64;
    let pb = arr.positives_below()[f] as u64;
    let (nt, pt) = (arr.total_negatives() as u64, arr.total_positives() as u64);
    // The upper halfplane labels an example 0 exactly when its below bit is set.
    let (neg_zero, pos_zero) = if upper { (nb, pb) } else { (nt - nb, pt - pb) };
    match mode {
        Mode::And => (neg_zero, pos_zero),
        Mode::Or => (pt - pos_zero, nt - neg_zero),
    }
}

pub fn candidate_side(candidate: usize) -> Side {
    if candidate.is_multiple_of(2) {
        Side::Above
    } else {
        Side::Below
    }
}

/// `ln(area_f) + eps * q` for every candidate `2 f + z`.
pub fn halfplane_log_weights(arr: &Arrangement, gq: &GeometricQuality, epsilon_sel: f64) -> Vec<f64> {
    let la = arr.log_areas();
    (0..2 * arr.face_count())
        .map(|c| {
            let (cov, oth) = halfplane_candidate_hits(arr, gq.mode, c);
            la[c / 2] + epsilon_sel * gq.from_hits(cov, oth)
        })
        .collect()
}

/// Halfplane with dual point `p` and the given orientation.
pub fn halfplane_at(arr: &Arrangement, p: RatPoint, side: Side) -> Result<Halfplane> {
    Halfplane::from_decoded(arr.grid(), p.a, p.b, side)
}

/// Halfplane at the face representative.
pub fn face_halfplane(face: FaceRef<'_>, side: Side, arr: &Arrangement) -> Result<Halfplane> {
    halfplane_at(arr, face.representative(), side)
}

fn check_epsilon(e: f64) -> Result<()> {
    if e.is_finite() && e > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("selection epsilon must be positive and finite, got {e}")))
    }
}

fn check_geometric(s: &LabeledSample) -> Result<crate::concepts::GridSpec> {
    s.domain().grid().ok_or_else(|| Error::Kind("geometric selection on a Boolean sample".into()))
}

/// Chosen face candidate plus the emitted halfplane.
#[derive(Debug, Clone)]
pub struct HalfplaneChoice {
    pub candidate: usize,
    pub halfplane: Halfplane,
}

/// Samples `(face, orientation)` with weight `area * exp(eps * q)` and then a
/// uniform dual point inside the face. Face and point draws use separate
/// streams derived from `seed`.
pub fn select_halfplane_in(
    arr: &Arrangement,
    gq: &GeometricQuality,
    epsilon_sel: f64,
    seed: SeedPath,
) -> Result<HalfplaneChoice> {
    check_epsilon(epsilon_sel)?;
    let lw = halfplane_log_weights(arr, gq, epsilon_sel);
    let candidate = dp::sample_log_weights(&lw, &mut seed.child(label::FACE, 0).rng())?;
    let face = arr.face(candidate / 2);
    let p = arrangement::uniform_point_in_face(face, &mut seed.child(label::POINT, 0).rng())?;
    Ok(HalfplaneChoice { candidate, halfplane: halfplane_at(arr, p, candidate_side(candidate))? })
}

pub fn select_halfplane(
    s: &LabeledSample,
    gq: &GeometricQuality,
    epsilon_sel: f64,
    seed: SeedPath,
) -> Result<Halfplane> {
    let grid = check_geometric(s)?;
    let arr = arrangement::build_arrangement(s, grid)?;
    Ok(select_halfplane_in(&arr, gq, epsilon_sel, seed)?.halfplane)
}

/// Default cap on ordered-triple evaluations.
pub const DEFAULT_TRIPLE_CAP: u64 = 100_000_000;

/// Zero-masks of every halfplane candidate, with the class masks used to
/// turn a union of zero-sets into hit counts.
pub struct TripleScorer {
    words: usize,
    candidates: usize,
    masks: Vec<u64>,
    negatives: Vec<u64>,
    positives: Vec<u64>,
    mode: Mode,
}

impl TripleScorer {
    pub fn new(arr: &Arrangement, s: &LabeledSample, mode: Mode) -> Result<Self> {
        if !arr.has_masks() {
            return Err(Error::Internal("triangle scoring needs an arrangement with masks".into()));
        }
        let words = arr.mask_words();
        let n = s.len();
        let mut valid = vec![0u64; words];
        for i in 0..n {
            valid[i / 64] |= 1 << (i % 64);
        }
        let mut negatives = vec![0u64; words];
        let mut positives = vec![0u64; words];
        for (i, &y) in s.labels().iter().enumerate() {
            let target = if y { &mut positives } else { &mut negatives };
            target[i / 64] |= 1 << (i % 64);
        }
        let candidates = 2 * arr.face_count();
        let mut masks = Vec::with_capacity(candidates * words);
        for f in arr.faces() {
            let below = f.mask_words().expect("masks present");
            // upper halfplane: zero on the below set; lower: zero on the rest
            masks.extend_from_slice(below);
            masks.extend(below.iter().zip(&valid).map(|(b, v)| !b & v));
        }
        Ok(TripleScorer { words, candidates, masks, negatives, positives, mode })
    }

    pub fn candidates(&self) -> usize {
        self.candidates
    }

    fn mask(&self, c: usize) -> &[u64] {
        &self.masks[c * self.words..(c + 1) * self.words]
    }

    /// Hits `(covered, other)` of the triangle whose zero-set is `zero`.
    fn hits_of_zero_set(&self, zero: &[u64]) -> (u64, u64) {
        let (mut neg_zero, mut pos_zero) = (0u64, 0u64);
        for w in 0..self.words {
            neg_zero += (zero[w] & self.negatives[w]).count_ones() as u64;
            pos_zero += (zero[w] & self.positives[w]).count_ones() as u64;
        }
        match self.mode {
            Mode::And => (neg_zero, pos_zero),
            Mode::Or => (self.total(&self.positives) - pos_zero, self.total(&self.negatives) - neg_zero),
        }
    }

    fn total(&self, m: &[u64]) -> u64 {
        m.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Hits of the conjunction of candidates `i`, `j`, `l`.
    pub fn triple_hits(&self, i: usize, j: usize, l: usize) -> (u64, u64) {
        let zero: Vec<u64> = (0..self.words).map(|w| self.mask(i)[w] | self.mask(j)[w] | self.mask(l)[w]).collect();
        self.hits_of_zero_set(&zero)
    }

    fn class_totals(&self) -> (u64, u64) {
        match self.mode {
            Mode::And => (self.total(&self.negatives), self.total(&self.positives)),
            Mode::Or => (self.total(&self.positives), self.total(&self.negatives)),
        }
    }
}

/// Exact log-weight of every ordered triple, `c^3` entries in
/// `(i * c + j) * c + l` order.
pub fn triangle_triple_log_weights(
    arr: &Arrangement,
    scorer: &TripleScorer,
    gq: &GeometricQuality,
    epsilon_sel: f64,
) -> Vec<f64> {
    let c = scorer.candidates();
    let la = arr.log_areas();
    let mut out = Vec::with_capacity(c * c * c);
    for i in 0..c {
        for j in 0..c {
            for l in 0..c {
                let (cov, oth) = scorer.triple_hits(i, j, l);
                out.push(la[i / 2] + la[j / 2] + la[l / 2] + epsilon_sel * gq.from_hits(cov, oth));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct TriangleChoice {
    pub candidates: [usize; 3],
    pub triangle: Triangle,
}

/// Samples an ordered triple of candidates with weight
/// `w_i w_j w_l exp(eps * q(triangle))`, one coordinate at a time from exact
/// marginals, then a uniform dual point inside each chosen face.
pub fn select_triangle_in(
    arr: &Arrangement,
    scorer: &TripleScorer,
    gq: &GeometricQuality,
    epsilon_sel: f64,
    cap: u64,
    seed: SeedPath,
) -> Result<TriangleChoice> {
    check_epsilon(epsilon_sel)?;
    let c = scorer.candidates();
    let evaluations = (c as u64).checked_pow(3).unwrap_or(u64::MAX);
    if evaluations > cap {
        return Err(Error::Resource(format!(
            "triangle selection needs {evaluations} triple evaluations, above the cap of {cap}; reduce n or k"
        )));
    }
    let la = arr.log_areas();
    let top = la.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let wt: Vec<f64> = (0..c).map(|i| (la[i / 2] - top).exp()).collect();
    // exp(eps * (q - q_max)) for every reachable hit pair.
    let (cov_total, oth_total) = scorer.class_totals();
    let q_max = gq.from_hits(cov_total, 0);
    let stride = oth_total as usize + 1;
    let table: Vec<f64> = (0..=cov_total)
        .flat_map(|cv| (0..=oth_total).map(move |ot| (cv, ot)))
        .map(|(cv, ot)| (epsilon_sel * (gq.from_hits(cv, ot) - q_max)).exp())
        .collect();
    let term = |zero: &[u64]| {
        let (cv, ot) = scorer.hits_of_zero_set(zero);
        table[cv as usize * stride + ot as usize]
    };
    let words = scorer.words;
    let mut zero_ij = vec![0u64; words];
    let mut zero_ijl = vec![0u64; words];

    let mut face_rng = seed.child(label::FACE, 0).rng();
    // first coordinate
    let mut m1 = vec![0.0; c];
    for i in 0..c {
        let mut acc = 0.0;
        for j in 0..c {
            for w in 0..words {
                zero_ij[w] = scorer.mask(i)[w] | scorer.mask(j)[w];
            }
            let mut inner = 0.0;
            for l in 0..c {
                for w in 0..words {
                    zero_ijl[w] = zero_ij[w] | scorer.mask(l)[w];
                }
                inner += wt[l] * term(&zero_ijl);
            }
            acc += wt[j] * inner;
        }
        m1[i] = wt[i] * acc;
    }
    let i = sample_weights(&m1, &mut face_rng)?;
    // second coordinate given the first
    let mut m2 = vec![0.0; c];
    for j in 0..c {
        for w in 0..words {
            zero_ij[w] = scorer.mask(i)[w] | scorer.mask(j)[w];
        }
        let mut inner = 0.0;
        for l in 0..c {
            for w in 0..words {
                zero_ijl[w] = zero_ij[w] | scorer.mask(l)[w];
            }
            inner += wt[l] * term(&zero_ijl);
        }
        m2[j] = wt[j] * inner;
    }
    let j = sample_weights(&m2, &mut face_rng)?;
    for w in 0..words {
        zero_ij[w] = scorer.mask(i)[w] | scorer.mask(j)[w];
    }
    let m3: Vec<f64> = (0..c)
        .map(|l| {
            let z: Vec<u64> = (0..words).map(|w| zero_ij[w] | scorer.mask(l)[w]).collect();
            wt[l] * term(&z)
        })
        .collect();
    let l = sample_weights(&m3, &mut face_rng)?;

    let mut sides = Vec::with_capacity(3);
    for (slot, cand) in [i, j, l].into_iter().enumerate() {
        let face = arr.face(cand / 2);
        let p = arrangement::uniform_point_in_face(face, &mut seed.child(label::POINT, slot as u64).rng())?;
        sides.push(halfplane_at(arr, p, candidate_side(cand))?);
    }
    let sides: [Halfplane; 3] = sides.try_into().expect("three sides");
    Ok(TriangleChoice { candidates: [i, j, l], triangle: Triangle { sides } })
}

fn sample_weights(w: &[f64], rng: &mut DetRng) -> Result<usize> {
    let lw: Vec<f64> = w.iter().map(|x| x.ln()).collect();
    dp::sample_log_weights(&lw, rng)
}

pub fn select_triangle(
    s: &LabeledSample,
    gq: &GeometricQuality,
    epsilon_sel: f64,
    cap: u64,
    seed: SeedPath,
) -> Result<Triangle> {
    let grid = check_geometric(s)?;
    let arr = arrangement::build_arrangement_with(s, grid, ArrangementOptions { with_masks: true })?;
    let scorer = TripleScorer::new(&arr, s, gq.mode)?;
    Ok(select_triangle_in(&arr, &scorer, gq, epsilon_sel, cap, seed)?.triangle)
}

/// Whether `p` deletes the example under `mode`.
pub fn deletes(p: &Predicate, mode: Mode, x: ExampleRef<'_>) -> Result<bool> {
    Ok(p.eval(x)? == mode.deleting_value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{GridPoint, GridSpec};
    use crate::geom::rat;
    use num_traits::Signed;

    fn gq(mode: Mode, threshold: f64, k: usize) -> GeometricQuality {
        GeometricQuality { mode, threshold, k }
    }

    #[test]
    fn score_substitution() {
        let and = gq(Mode::And, 10.0, 2);
        // min(6 - 5, 0): the positive-side term caps the score at 0
        assert_eq!(and.from_hits(6, 0), 0.0);
        assert_eq!(gq(Mode::And, 10.0, 5).from_hits(6, 0), 0.0);
        assert_eq!(gq(Mode::And, 10.0, 2).from_hits(4, 0), -1.0);
        assert_eq!(and.from_hits(0, 0), -5.0);
        assert_eq!(and.from_hits(9, 1), -1.0);
        let negative_b = gq(Mode::And, -4.0, 2);
        assert_eq!(negative_b.from_hits(0, 0), 0.0);
    }

    #[test]
    fn quality_score_on_boolean_sample() {
        let rows = vec![vec![true, false], vec![false, false], vec![true, true]];
        let s = LabeledSample::boolean(2, rows, vec![true, false, false]).unwrap();
        let g = gq(Mode::And, 2.0, 1);
        // !v1 zeroes row 2 only (a negative)
        let h = Predicate::Literal(Literal::new(1, true));
        assert_eq!(quality_score(&h, &g, &s).unwrap(), (1.0f64 - 2.0).min(0.0));
        // v0 zeroes row 1 (negative); OR-mode v0 hits rows 0 and 2
        let v0 = Predicate::Literal(Literal::new(0, false));
        assert_eq!(quality_score(&v0, &g, &s).unwrap(), -1.0);
        let or = gq(Mode::Or, 1.0, 1);
        assert_eq!(quality_score(&v0, &or, &s).unwrap(), (1.0f64 - 1.0).min(-1.0));
    }

    #[test]
    fn threshold_substitution() {
        let mut rng = SeedPath::root(0).rng();
        let t = noisy_threshold(100, 2, 0.5, 0.1, 1.0, &mut rng).unwrap();
        let l4 = 4f64.ln();
        let expected = 100.0 + t.w as f64 - 4.0 * l4 * (40.0 * l4).ln();
        assert!((t.b - expected).abs() < 1e-9);
        let t = noisy_threshold(7, 2, 0.5, 0.1, 1e12, &mut rng).unwrap();
        assert!(t.w == 0 || t.w == -1);
        assert!((t.b - 7.0 - t.w as f64).abs() < 1e-6);
    }

    #[test]
    fn literal_argmax_at_huge_epsilon() {
        let rows: Vec<Vec<bool>> = (0..8u32).map(|i| (0..3).map(|b| i >> b & 1 == 1).collect()).collect();
        let labels: Vec<bool> = rows.iter().map(|r| r[2]).collect();
        let s = LabeledSample::boolean(3, rows, labels).unwrap();
        let g = gq(Mode::And, 4.0, 1);
        let lits = Literal::all(3);
        for seed in 0..200 {
            let l = select_literal(&s, &g, &lits, 1e6, &mut SeedPath::root(seed).rng()).unwrap();
            assert_eq!(l, Literal::new(2, false));
        }
        assert!(select_literal(&s, &g, &[], 1.0, &mut SeedPath::root(0).rng()).is_err());
    }

    fn sample(d: u32, pts: &[(u32, u32, bool)]) -> LabeledSample {
        let grid = GridSpec::new(d).unwrap();
        LabeledSample::grid(
            grid,
            pts.iter().map(|p| GridPoint::new(p.0, p.1)).collect(),
            pts.iter().map(|p| p.2).collect(),
        )
        .unwrap()
    }

    #[test]
    fn face_counts_match_pointwise_scores() {
        let s = sample(8, &[(1, 2, true), (4, 4, false), (7, 1, false), (3, 6, true), (0, 5, false)]);
        let grid = s.domain().grid().unwrap();
        let arr = arrangement::build_arrangement(&s, grid).unwrap();
        for mode in [Mode::And, Mode::Or] {
            let g = gq(mode, 1.5, 2);
            for c in 0..2 * arr.face_count() {
                let h = face_halfplane(arr.face(c / 2), candidate_side(c), &arr).unwrap();
                let (cov, oth) = halfplane_candidate_hits(&arr, mode, c);
                let direct = quality_score(&Predicate::Halfplane(h), &g, &s).unwrap();
                assert_eq!(g.from_hits(cov, oth), direct);
            }
        }
    }

    #[test]
    fn center_negative_is_zeroed_at_high_epsilon() {
        let s = sample(16, &[(8, 8, false)]);
        let g = gq(Mode::And, 1.0, 1);
        let mut hits = 0;
        for seed in 0..500 {
            let h = select_halfplane(&s, &g, 100.0, SeedPath::root(seed)).unwrap();
            if !h.contains(GridPoint::new(8, 8)) {
                hits += 1;
            }
        }
        assert!(hits >= 495, "{hits}");
    }

    #[test]
    fn empty_sample_triangle_is_valid() {
        let s = sample(4, &[]);
        let g = gq(Mode::Or, 0.0, 1);
        let t = select_triangle(&s, &g, 1.0, DEFAULT_TRIPLE_CAP, SeedPath::root(1)).unwrap();
        for h in &t.sides {
            let (a, b, _) = h.decode();
            assert!(a.abs() < rat(32) && b.abs() < rat(32));
        }
    }

    #[test]
    fn triple_scores_match_pointwise_conjunctions() {
        let s = sample(6, &[(1, 1, true), (2, 4, false), (5, 2, true), (3, 3, false)]);
        let grid = s.domain().grid().unwrap();
        let arr = arrangement::build_arrangement_with(&s, grid, ArrangementOptions { with_masks: true }).unwrap();
        for mode in [Mode::And, Mode::Or] {
            let scorer = TripleScorer::new(&arr, &s, mode).unwrap();
            let c = scorer.candidates();
            let halves: Vec<Halfplane> =
                (0..c).map(|i| face_halfplane(arr.face(i / 2), candidate_side(i), &arr).unwrap()).collect();
            for i in 0..c {
                for j in 0..c {
                    for l in (0..c).step_by(3) {
                        let t = Predicate::Triangle(Triangle { sides: [halves[i].clone(), halves[j].clone(), halves[l].clone()] });
                        assert_eq!(scorer.triple_hits(i, j, l), hit_counts(&t, mode, &s).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn triple_cap_is_enforced() {
        let s = sample(6, &[(1, 1, true), (2, 4, false), (5, 2, true)]);
        let g = gq(Mode::Or, 0.0, 1);
        assert!(matches!(select_triangle(&s, &g, 1.0, 10, SeedPath::root(0)), Err(Error::Resource(_))));
    }
}
