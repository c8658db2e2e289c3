//! The private greedy set-cover engine.
//!
//! Each of the fixed `ceil(2k log2(2/alpha))` iterations draws a noisy
//! threshold from the size of the still-uncovered class, privately selects a
//! predicate, and deletes every remaining example the predicate maps to the
//! deleting value. The result is the conjunction (AND-mode) or disjunction
//! (OR-mode) of every selected predicate.

use serde::{Deserialize, Serialize};

use crate::concepts::{HypothesisExpr, LabeledSample, Literal, Predicate};
use crate::dp::{self, PrivacyBudget};
use crate::error::{Error, Result};
use crate::formats;
use crate::rng::{label, SeedPath};
use crate::selectors::{self, GeometricQuality, Mode};

/// Which selection procedure the engine calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectorKind {
    Literals,
    Halfplane,
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerConfig {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub budget: PrivacyBudget,
    pub mode: Mode,
    pub iterations: usize,
    pub selection: SelectorKind,
}

impl LearnerConfig {
    pub fn new(k: usize, alpha: f64, beta: f64, budget: PrivacyBudget, mode: Mode, selection: SelectorKind) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("k must be at least 1"));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::param(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::param(format!("beta must lie in (0, 1), got {beta}")));
        }
        Ok(LearnerConfig { k, alpha, beta, budget, mode, iterations: dp::iteration_count(k, alpha), selection })
    }
}

/// One engine iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub threshold: f64,
    pub noise: i64,
    pub predicate: serde_json::Value,
    pub deleted: usize,
    /// Remaining negatives after deletion.
    pub remaining_negatives: usize,
    /// Remaining positives after deletion.
    pub remaining_positives: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub mode: Mode,
    pub initial_size: usize,
    pub iterations: Vec<IterationRecord>,
    pub hypothesis: serde_json::Value,
}

impl RunTrace {
    pub fn total_deleted(&self) -> usize {
        self.iterations.iter().map(|r| r.deleted).sum()
    }

    pub fn final_size(&self) -> usize {
        self.iterations.last().map_or(self.initial_size, |r| r.remaining_negatives + r.remaining_positives)
    }
}

/// A private selection procedure.
pub trait Selector {
    fn select(&mut self, state: &LabeledSample, gq: &GeometricQuality, step_epsilon: f64, seed: SeedPath) -> Result<Predicate>;
}

/// Exponential mechanism over a fixed literal list.
pub struct LiteralSelector {
    pub literals: Vec<Literal>,
}

impl LiteralSelector {
    /// `v0, !v0, v1, !v1, ...` for AND-mode, each complemented for OR-mode.
    pub fn for_mode(vars: usize, mode: Mode) -> Self {
        let base = Literal::all(vars);
        let literals = match mode {
            Mode::And => base,
            Mode::Or => base.iter().map(Literal::complement).collect(),
        };
        LiteralSelector { literals }
    }
}

impl Selector for LiteralSelector {
    fn select(&mut self, state: &LabeledSample, gq: &GeometricQuality, step_epsilon: f64, seed: SeedPath) -> Result<Predicate> {
        let l = selectors::select_literal(state, gq, &self.literals, step_epsilon, &mut seed.rng())?;
        Ok(Predicate::Literal(l))
    }
}

pub struct HalfplaneSelector;

impl Selector for HalfplaneSelector {
    fn select(&mut self, state: &LabeledSample, gq: &GeometricQuality, step_epsilon: f64, seed: SeedPath) -> Result<Predicate> {
        Ok(Predicate::Halfplane(selectors::select_halfplane(state, gq, step_epsilon, seed)?))
    }
}

pub struct TriangleSelector {
    pub cap: u64,
}

impl Selector for TriangleSelector {
    fn select(&mut self, state: &LabeledSample, gq: &GeometricQuality, step_epsilon: f64, seed: SeedPath) -> Result<Predicate> {
        Ok(Predicate::Triangle(selectors::select_triangle(state, gq, step_epsilon, self.cap, seed)?))
    }
}

/// Runs the engine for exactly `cfg.iterations` rounds.
pub fn run_setcover(
    s: &LabeledSample,
    cfg: &LearnerConfig,
    selector: &mut dyn Selector,
    seed: SeedPath,
) -> Result<(HypothesisExpr, RunTrace)> {
    let mode = cfg.mode;
    let mut alive: Vec<usize> = (0..s.len()).collect();
    let mut chosen = Vec::with_capacity(cfg.iterations);
    let mut records = Vec::with_capacity(cfg.iterations);
    for j in 0..cfg.iterations {
        let it = seed.child(label::ITERATION, j as u64);
        let state = s.subset(&alive);
        let covered = state.labels().iter().filter(|&&y| y == mode.covered_label()).count();
        let t = selectors::noisy_threshold(
            covered,
            cfg.k,
            cfg.alpha,
            cfg.beta,
            cfg.budget.epsilon,
            &mut it.child(label::THRESHOLD_NOISE, 0).rng(),
        )?;
        let gq = GeometricQuality { mode, threshold: t.b, k: cfg.k };
        let p = selector.select(&state, &gq, cfg.budget.step_epsilon, it.child(label::SELECT, 0))?;
        let before = alive.len();
        let mut keep = Vec::with_capacity(before);
        for &i in &alive {
            if p.eval(s.example(i))? != mode.deleting_value() {
                keep.push(i);
            }
        }
        alive = keep;
        let positives = alive.iter().filter(|&&i| s.labels()[i]).count();
        records.push(IterationRecord {
            threshold: t.b,
            noise: t.w,
            predicate: formats::predicate_to_json(&p),
            deleted: before - alive.len(),
            remaining_negatives: alive.len() - positives,
            remaining_positives: positives,
        });
        chosen.push(HypothesisExpr::Leaf(p));
    }
    let h = match mode {
        Mode::And => HypothesisExpr::And(chosen),
        Mode::Or => HypothesisExpr::Or(chosen),
    };
    let trace =
        RunTrace { mode, initial_size: s.len(), iterations: records, hypothesis: formats::hypothesis_to_json(&h) };
    Ok((h, trace))
}

/// Bound on the number of training mistakes of the engine's output:
/// `max(alpha n / 2, (8k / eps) ln(2/alpha) ln((2k / beta) ln(2/alpha))) + 4 k lambda log2(2/alpha)`.
pub fn empirical_error_bound(cfg: &LearnerConfig, n: usize, lambda: f64) -> f64 {
    let k = cfg.k as f64;
    let l = (2.0 / cfg.alpha).ln();
    let noise = (8.0 * k / cfg.budget.epsilon) * l * ((2.0 * k / cfg.beta) * l).ln();
    (cfg.alpha * n as f64 / 2.0).max(noise) + 4.0 * k * lambda * (2.0 / cfg.alpha).log2()
}
