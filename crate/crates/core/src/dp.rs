//! Differential-privacy primitives: Laplace noise, the finite exponential
//! mechanism and the per-iteration budget used by the set-cover learner.
//!
//! Every weight of the form `exp(eps * q)` is handled in the log domain with
//! the maximum subtracted first. Scores in this crate are routinely large and
//! negative (minus a count of misclassified examples), where naive
//! exponentiation underflows to zero.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the total budget is split across the learner's iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetRule {
    /// `eps_hat = eps / (2 ln(e / delta))` for every iteration, independent of
    /// the number of iterations.
    #[default]
    SetCover,
    /// Split via the advanced composition theorem over all iterations. Only
    /// provided for comparison; it pays a `sqrt(iterations)` factor.
    AdvancedComposition,
}

/// `(epsilon, delta)` together with the derived per-step privacy parameter and
/// the scale of the threshold noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyBudget {
    pub epsilon: f64,
    pub delta: f64,
    /// Privacy parameter handed to each selection step.
    pub step_epsilon: f64,
    /// Laplace scale of the noisy threshold, `(2k / eps) ln(2 / alpha)`.
    pub noise_scale: f64,
}

impl PrivacyBudget {
    /// Budget for a set-cover run with clause budget `k` and accuracy `alpha`.
    pub fn for_set_cover(epsilon: f64, delta: f64, k: usize, alpha: f64) -> Result<Self> {
        Self::with_rule(epsilon, delta, k, alpha, BudgetRule::SetCover)
    }

    pub fn with_rule(epsilon: f64, delta: f64, k: usize, alpha: f64, rule: BudgetRule) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::param(format!("epsilon must be positive and finite, got {epsilon}")));
        }
        if !(delta > 0.0 && delta < (-1.0f64).exp()) {
            return Err(Error::param(format!("delta must lie in (0, 1/e), got {delta}")));
        }
        if k == 0 {
            return Err(Error::param("clause budget k must be at least 1"));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::param(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        let step_epsilon = match rule {
            BudgetRule::SetCover => set_cover_step_epsilon(epsilon, delta),
            BudgetRule::AdvancedComposition => {
                advanced_composition_step_epsilon(epsilon, delta, iteration_count(k, alpha))
            }
        };
        Ok(PrivacyBudget {
            epsilon,
            delta,
            step_epsilon,
            noise_scale: threshold_noise_scale(epsilon, k, alpha),
        })
    }
}

/// `eps / (2 ln(e / delta))`.
pub fn set_cover_step_epsilon(epsilon: f64, delta: f64) -> f64 {
    epsilon / (2.0 * (1.0 - delta.ln()))
}

/// Largest per-step `e0` with `sqrt(2m ln(1/delta)) e0 + 2m e0^2 <= eps`.
pub fn advanced_composition_step_epsilon(epsilon: f64, delta: f64, m: usize) -> f64 {
    let m = m as f64;
    let c = (2.0 * m * (1.0 / delta).ln()).sqrt();
    (-c + (c * c + 8.0 * m * epsilon).sqrt()) / (4.0 * m)
}

/// `(2k / eps) ln(2 / alpha)`.
pub fn threshold_noise_scale(epsilon: f64, k: usize, alpha: f64) -> f64 {
    2.0 * k as f64 / epsilon * (2.0 / alpha).ln()
}

/// Number of greedy iterations, `ceil(2k log2(2 / alpha))`.
pub fn iteration_count(k: usize, alpha: f64) -> usize {
    let t = (2.0 * k as f64 * (2.0 / alpha).log2()).ceil();
    (t as usize).max(1)
}

/// Scores for a finite candidate list.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityTable<C = usize> {
    candidates: Vec<C>,
    scores: Vec<f64>,
}

impl<C> QualityTable<C> {
    pub fn new(candidates: Vec<C>, scores: Vec<f64>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::param("quality table has no candidates"));
        }
        if candidates.len() != scores.len() {
            return Err(Error::param(format!(
                "{} candidates but {} scores",
                candidates.len(),
                scores.len()
            )));
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::param(format!("score {i} is not finite: {}", scores[i])));
        }
        Ok(QualityTable { candidates, scores })
    }

    pub fn candidates(&self) -> &[C] {
        &self.candidates
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

impl QualityTable<usize> {
    /// Table whose candidates are simply `0..scores.len()`.
    pub fn indexed(scores: Vec<f64>) -> Result<Self> {
        QualityTable::new((0..scores.len()).collect(), scores)
    }
}

fn check_scale(scale: f64) -> Result<()> {
    if scale.is_finite() && scale > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("Laplace scale must be positive and finite, got {scale}")))
    }
}

/// One draw from `Lap(scale)`, density `exp(-|x| / scale) / (2 scale)`.
pub fn sample_laplace<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> Result<f64> {
    check_scale(scale)?;
    // Inverse CDF on an open uniform.
    let u = loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            break u;
        }
    };
    Ok(if u < 0.5 { scale * (2.0 * u).ln() } else { -scale * (2.0 * (1.0 - u)).ln() })
}

/// `floor(Lap(scale))`.
pub fn floored_laplace<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> Result<i64> {
    Ok(sample_laplace(scale, rng)?.floor() as i64)
}

/// `ln sum exp(x_i)`, stabilised by the maximum.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Index drawn with probability proportional to `exp(log_weights[i])`.
///
/// Entries equal to `-inf` are never drawn. Fails if every entry is `-inf`
/// or any entry is NaN.
pub fn sample_log_weights<R: Rng + ?Sized>(log_weights: &[f64], rng: &mut R) -> Result<usize> {
    if log_weights.iter().any(|w| w.is_nan()) {
        return Err(Error::param("NaN log-weight"));
    }
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::param("no candidate has positive weight"));
    }
    let total: f64 = log_weights.iter().map(|w| (w - max).exp()).sum();
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, w) in log_weights.iter().enumerate() {
        let p = (w - max).exp();
        if p > 0.0 {
            last = i;
            acc += p;
            if target < acc {
                return Ok(i);
            }
        }
    }
    // Rounding can leave `target` a hair above the running sum.
    Ok(last)
}

fn check_step_epsilon(step_epsilon: f64) -> Result<()> {
    if step_epsilon.is_finite() && step_epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("step epsilon must be positive and finite, got {step_epsilon}")))
    }
}

fn mechanism_log_weights<C>(table: &QualityTable<C>, step_epsilon: f64) -> Vec<f64> {
    // Shift by the best score first so large magnitudes do not cancel.
    let top = table.scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    table.scores.iter().map(|q| step_epsilon * (q - top) / 2.0).collect()
}

/// Exponential mechanism over a finite table: candidate `i` is returned with
/// probability proportional to `exp(step_epsilon * q_i / 2)`.
pub fn exp_mech_finite<'t, C, R: Rng + ?Sized>(
    table: &'t QualityTable<C>,
    step_epsilon: f64,
    rng: &mut R,
) -> Result<(usize, &'t C)> {
    check_step_epsilon(step_epsilon)?;
    let i = sample_log_weights(&mechanism_log_weights(table, step_epsilon), rng)?;
    Ok((i, &table.candidates[i]))
}

/// The selection probabilities of [`exp_mech_finite`] in closed form.
pub fn exact_selection_pmf<C>(table: &QualityTable<C>, step_epsilon: f64) -> Result<Vec<f64>> {
    check_step_epsilon(step_epsilon)?;
    Ok(log_selection_pmf(table, step_epsilon)?.into_iter().map(f64::exp).collect())
}

/// Natural log of [`exact_selection_pmf`]; keeps precision for tiny entries.
pub fn log_selection_pmf<C>(table: &QualityTable<C>, step_epsilon: f64) -> Result<Vec<f64>> {
    check_step_epsilon(step_epsilon)?;
    let lw = mechanism_log_weights(table, step_epsilon);
    let z = log_sum_exp(&lw);
    Ok(lw.into_iter().map(|w| w - z).collect())
}
