//! End-to-end private learners and the sample-size calculator.

use serde::{Deserialize, Serialize};

use crate::concepts::{Domain, ExampleRef, HypothesisExpr, LabeledSample};
use crate::datagen::{self, Distribution, TargetConcept};
use crate::dp::PrivacyBudget;
use crate::error::{Error, Result};
use crate::rng::{DetRng, SeedPath};
use crate::selectors::{Mode, DEFAULT_TRIPLE_CAP};
use crate::setcover::{
    run_setcover, HalfplaneSelector, LearnerConfig, LiteralSelector, RunTrace, SelectorKind, TriangleSelector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConceptClass {
    Conj,
    Disj,
    ConvexKgon,
    KUnionGon,
}

impl ConceptClass {
    pub fn is_geometric(self) -> bool {
        matches!(self, ConceptClass::ConvexKgon | ConceptClass::KUnionGon)
    }

    pub fn mode(self) -> Mode {
        match self {
            ConceptClass::Conj | ConceptClass::ConvexKgon => Mode::And,
            ConceptClass::Disj | ConceptClass::KUnionGon => Mode::Or,
        }
    }

    pub fn selector(self) -> SelectorKind {
        match self {
            ConceptClass::Conj | ConceptClass::Disj => SelectorKind::Literals,
            ConceptClass::ConvexKgon => SelectorKind::Halfplane,
            ConceptClass::KUnionGon => SelectorKind::Triangle,
        }
    }
}

/// A learning task. `d` is the grid resolution for geometric classes and the
/// number of variables for Boolean ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskSpec {
    pub class: ConceptClass,
    pub k: usize,
    pub d: u32,
    pub alpha: f64,
    pub beta: f64,
    pub budget: PrivacyBudget,
}

impl TaskSpec {
    pub fn new(class: ConceptClass, k: usize, d: u32, alpha: f64, beta: f64, epsilon: f64, delta: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::param("d must be at least 1"));
        }
        let budget = PrivacyBudget::for_set_cover(epsilon, delta, k, alpha)?;
        let spec = TaskSpec { class, k, d, alpha, beta, budget };
        spec.learner_config()?;
        Ok(spec)
    }

    pub fn learner_config(&self) -> Result<LearnerConfig> {
        LearnerConfig::new(self.k, self.alpha, self.beta, self.budget, self.class.mode(), self.class.selector())
    }

    pub fn iterations(&self) -> usize {
        crate::dp::iteration_count(self.k, self.alpha)
    }

    /// VC-dimension figure of the base class.
    pub fn base_vc(&self) -> f64 {
        match self.class {
            // log2 |H| for the 2d literals
            ConceptClass::Conj | ConceptClass::Disj => (2.0 * self.d as f64).log2(),
            ConceptClass::ConvexKgon => 3.0,
            ConceptClass::KUnionGon => 9.0 * 3f64.ln(),
        }
    }

    /// Selection slack with which the per-iteration utility bound holds with
    /// the failure probability shared across iterations.
    pub fn auto_lambda(&self) -> f64 {
        let e = self.budget.step_epsilon;
        let beta = self.beta;
        match self.class {
            ConceptClass::Conj | ConceptClass::Disj => {
                let h = 2.0 * self.d as f64;
                (2.0 / e) * (h * 4.0 * self.k as f64 * (2.0 / self.alpha).log2() / beta).ln()
            }
            ConceptClass::ConvexKgon => (8.0 / e) * (2.0 * self.d as f64 / beta).ln(),
            ConceptClass::KUnionGon => 3.0 * (8.0 / e) * (2.0 * self.d as f64 / beta).ln(),
        }
    }
}

/// `c (k ln(1/alpha) / alpha) (VC max(ln k, 1) + lambda + (1/eps) ln((k / beta) ln(1/alpha)))`,
/// rounded up.
pub fn required_sample_size(spec: &TaskSpec, lambda: f64, vc_constant: f64) -> Result<usize> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda must be finite and non-negative"));
    }
    if !(vc_constant > 0.0 && vc_constant.is_finite()) {
        return Err(Error::param("vc_constant must be positive"));
    }
    let k = spec.k as f64;
    let la = (1.0 / spec.alpha).ln();
    let inner = spec.base_vc() * k.ln().max(1.0)
        + lambda
        + (1.0 / spec.budget.epsilon) * ((k / spec.beta) * la).ln().max(0.0);
    let n = vc_constant * (k * la / spec.alpha) * inner;
    Ok(n.ceil().max(1.0) as usize)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnOptions {
    pub triple_cap: u64,
}

impl Default for LearnOptions {
    fn default() -> Self {
        LearnOptions { triple_cap: DEFAULT_TRIPLE_CAP }
    }
}

pub fn learn(spec: &TaskSpec, s: &LabeledSample, seed: SeedPath) -> Result<(HypothesisExpr, RunTrace)> {
    learn_with(spec, s, seed, LearnOptions::default())
}

pub fn learn_with(
    spec: &TaskSpec,
    s: &LabeledSample,
    seed: SeedPath,
    opts: LearnOptions,
) -> Result<(HypothesisExpr, RunTrace)> {
    let cfg = spec.learner_config()?;
    match (spec.class, s.domain()) {
        (ConceptClass::Conj | ConceptClass::Disj, Domain::Bool { vars }) => {
            if vars != spec.d as usize {
                return Err(Error::param(format!("task has d = {} variables, sample has {vars}", spec.d)));
            }
            let mut sel = LiteralSelector::for_mode(vars, cfg.mode);
            run_setcover(s, &cfg, &mut sel, seed)
        }
        (ConceptClass::ConvexKgon, Domain::Grid(g)) if g.d() == spec.d => run_setcover(s, &cfg, &mut HalfplaneSelector, seed),
        (ConceptClass::KUnionGon, Domain::Grid(g)) if g.d() == spec.d => {
            let mut sel = TriangleSelector { cap: opts.triple_cap };
            run_setcover(s, &cfg, &mut sel, seed).map_err(|e| match e {
                Error::Resource(m) => Error::Resource(format!("{m} (use a smaller sample or raise the triple cap)")),
                other => other,
            })
        }
        (c, Domain::Grid(g)) if c.is_geometric() => {
            Err(Error::param(format!("task has d = {}, sample grid has d = {}", spec.d, g.d())))
        }
        (c, _) => Err(Error::Kind(format!("{c:?} cannot be learned from this sample kind"))),
    }
}

/// Error of `h` against `target` on `m` fresh draws from `dist` (uniform
/// rows for Boolean targets). Grid labels are classified once and looked up.
pub fn holdout_error(
    h: &HypothesisExpr,
    target: &TargetConcept,
    dist: Distribution,
    m: usize,
    rng: &mut DetRng,
) -> Result<f64> {
    if m == 0 {
        return Err(Error::param("hold-out size must be positive"));
    }
    let wrong = match target {
        TargetConcept::Conj { vars, .. } | TargetConcept::Disj { vars, .. } => {
            let mut wrong = 0usize;
            for row in datagen::sample_bool_rows(m, *vars, rng) {
                if h.eval(ExampleRef::Bool(&row))? != target.eval_row(&row)? {
                    wrong += 1;
                }
            }
            wrong
        }
        TargetConcept::Polygons { .. } => {
            let grid = target.grid().expect("polygon target has a grid");
            let truth = target.classify_grid()?;
            let guess = h.classify_grid(grid)?;
            let pts = datagen::sample_distribution(dist, m, grid, Some(target), rng)?;
            pts.iter().filter(|&&p| truth[grid.index_of(p)] != guess[grid.index_of(p)]).count()
        }
    };
    Ok(wrong as f64 / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{empirical_error, ExampleRef, Literal};
    use crate::datagen;
    use num_rational::Ratio;

    #[test]
    fn sample_size_substitution() {
        let spec = TaskSpec::new(ConceptClass::ConvexKgon, 3, 16, 0.25, 0.1, 1.0, 1e-6).unwrap();
        let la = 4f64.ln();
        let expected = (3.0 * la / 0.25) * (3.0 * 3f64.ln() + (30.0 * la).ln());
        assert_eq!(required_sample_size(&spec, 0.0, 1.0).unwrap(), expected.ceil() as usize);
    }

    #[test]
    fn sample_size_shape() {
        let at = |alpha: f64, k: usize, eps: f64| {
            let spec = TaskSpec::new(ConceptClass::Conj, k, 8, alpha, 0.1, eps, 1e-6).unwrap();
            required_sample_size(&spec, 2.0, 1.0).unwrap()
        };
        let (n1, n2) = (at(0.2, 2, 1.0), at(0.1, 2, 1.0));
        assert!(n2 as f64 > 2.0 * n1 as f64);
        assert!(at(0.1, 3, 1.0) >= at(0.1, 2, 1.0));
        assert!(at(0.1, 2, 0.5) >= at(0.1, 2, 1.0));
        let spec = TaskSpec::new(ConceptClass::Conj, 2, 8, 0.1, 0.1, 1.0, 1e-6).unwrap();
        assert!(required_sample_size(&spec, -1.0, 1.0).is_err());
    }

    #[test]
    fn holdout_error_of_exact_hypothesis_is_zero() {
        let target = datagen::TargetConcept::Conj { vars: 4, literals: vec![Literal::new(2, true)] };
        let h = HypothesisExpr::And(vec![HypothesisExpr::leaf(crate::concepts::Predicate::Literal(Literal::new(2, true)))]);
        let mut rng = SeedPath::root(1).rng();
        assert_eq!(holdout_error(&h, &target, Distribution::UniformGrid, 500, &mut rng).unwrap(), 0.0);
        let wrong = HypothesisExpr::And(vec![HypothesisExpr::leaf(crate::concepts::Predicate::Literal(Literal::new(2, false)))]);
        assert_eq!(holdout_error(&wrong, &target, Distribution::UniformGrid, 500, &mut rng).unwrap(), 1.0);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let spec = TaskSpec::new(ConceptClass::ConvexKgon, 3, 8, 0.25, 0.1, 1.0, 1e-6).unwrap();
        let s = LabeledSample::boolean(2, vec![vec![true, false]], vec![true]).unwrap();
        assert!(matches!(learn(&spec, &s, SeedPath::root(0)), Err(Error::Kind(_))));
    }

    #[test]
    fn conjunction_at_huge_epsilon() {
        let target = datagen::TargetConcept::Conj { vars: 8, literals: vec![Literal::new(1, false), Literal::new(3, true)] };
        let spec = TaskSpec::new(ConceptClass::Conj, 2, 8, 0.1, 0.1, 1e6, 1e-6).unwrap();
        let mut zero = 0;
        for seed in 0..10 {
            let rows = datagen::sample_bool_rows(400, 8, &mut SeedPath::root(seed).rng());
            let s = datagen::label_rows(rows, &target).unwrap();
            let (h, _) = learn(&spec, &s, SeedPath::root(1000 + seed)).unwrap();
            if empirical_error(&h, &s).unwrap() == Ratio::new(0, 1) {
                zero += 1;
            }
        }
        assert!(zero >= 9, "{zero}");
    }

    #[test]
    fn disjunction_is_negated_conjunction_of_flipped_labels() {
        let target = datagen::TargetConcept::Disj { vars: 5, literals: vec![Literal::new(0, true), Literal::new(4, false)] };
        let disj = TaskSpec::new(ConceptClass::Disj, 2, 5, 0.2, 0.1, 3.0, 1e-6).unwrap();
        let conj = TaskSpec { class: ConceptClass::Conj, ..disj };
        let rows = datagen::sample_bool_rows(80, 5, &mut SeedPath::root(3).rng());
        let s = datagen::label_rows(rows, &target).unwrap();
        let (hd, _) = learn(&disj, &s, SeedPath::root(8)).unwrap();
        let (hc, _) = learn(&conj, &s.flipped(), SeedPath::root(8)).unwrap();
        for bits in 0..32u32 {
            let row: Vec<bool> = (0..5).map(|i| bits >> i & 1 == 1).collect();
            assert_eq!(hd.eval(ExampleRef::Bool(&row)).unwrap(), !hc.eval(ExampleRef::Bool(&row)).unwrap());
        }
    }
}
