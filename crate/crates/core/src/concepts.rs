//! Domains, labeled samples and hypotheses.
//!
//! Geometric examples live on the grid `{0..=d}^2`. Halfplanes use the
//! two-parameter `(a_hat, b)` encoding: `a_hat` in `[-2d^2, 6d^2]`,
//! `b` in `[-2d^2, 2d^2]`, where `a_hat > 2d^2` means the orientation is
//! flipped and the slope is `a_hat - 4d^2`. Halfplane parameters are exact
//! rationals, so classification of points never depends on rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, rat, Constraint, RatPoint, Rational};

/// Largest supported grid resolution. Dual-plane predicates are evaluated in
/// `i128`, which stays exact up to this size.
pub const MAX_GRID_D: u32 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    d: u32,
}

impl GridSpec {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::param("grid resolution d must be at least 1"));
        }
        if d > MAX_GRID_D {
            return Err(Error::param(format!("grid resolution d = {d} exceeds the supported maximum {MAX_GRID_D}")));
        }
        Ok(GridSpec { d })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `2 d^2`, the half-width of the dual box.
    pub fn box_half_width(&self) -> i128 {
        2 * (self.d as i128) * (self.d as i128)
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        p.x <= self.d && p.y <= self.d
    }

    /// Number of grid points, `(d + 1)^2`.
    pub fn point_count(&self) -> usize {
        (self.d as usize + 1).pow(2)
    }

    /// Every grid point in row-major order (`index = y * (d + 1) + x`).
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        let side = self.d + 1;
        (0..side).flat_map(move |y| (0..side).map(move |x| GridPoint::new(x, y)))
    }

    pub fn index_of(&self, p: GridPoint) -> usize {
        p.y as usize * (self.d as usize + 1) + p.x as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: u32,
    pub y: u32,
}

impl GridPoint {
    pub fn new(x: u32, y: u32) -> Self {
        GridPoint { x, y }
    }
}

/// Where examples come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    Grid(GridSpec),
    Bool { vars: usize },
}

impl Domain {
    pub fn grid(&self) -> Option<GridSpec> {
        match self {
            Domain::Grid(g) => Some(*g),
            Domain::Bool { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Examples {
    Grid(Vec<GridPoint>),
    Bool(Vec<Vec<bool>>),
}

/// A borrowed example of either kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleRef<'a> {
    Grid(GridPoint),
    Bool(&'a [bool]),
}

/// An immutable labeled sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSample {
    domain: Domain,
    examples: Examples,
    labels: Vec<bool>,
}

impl LabeledSample {
    pub fn grid(grid: GridSpec, points: Vec<GridPoint>, labels: Vec<bool>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::param(format!("{} points but {} labels", points.len(), labels.len())));
        }
        if let Some(p) = points.iter().find(|p| !grid.contains(**p)) {
            return Err(Error::param(format!("point ({}, {}) outside the grid [0, {}]^2", p.x, p.y, grid.d())));
        }
        Ok(LabeledSample { domain: Domain::Grid(grid), examples: Examples::Grid(points), labels })
    }

    pub fn boolean(vars: usize, rows: Vec<Vec<bool>>, labels: Vec<bool>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::param(format!("{} rows but {} labels", rows.len(), labels.len())));
        }
        if vars == 0 {
            return Err(Error::param("Boolean domain needs at least one variable"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != vars) {
            return Err(Error::param(format!("row of length {} in a {vars}-variable domain", r.len())));
        }
        Ok(LabeledSample { domain: Domain::Bool { vars }, examples: Examples::Bool(rows), labels })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn examples(&self) -> &Examples {
        &self.examples
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn example(&self, i: usize) -> ExampleRef<'_> {
        match &self.examples {
            Examples::Grid(p) => ExampleRef::Grid(p[i]),
            Examples::Bool(r) => ExampleRef::Bool(&r[i]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (ExampleRef<'_>, bool)> + '_ {
        (0..self.len()).map(move |i| (self.example(i), self.labels[i]))
    }

    pub fn grid_points(&self) -> Option<&[GridPoint]> {
        match &self.examples {
            Examples::Grid(p) => Some(p),
            Examples::Bool(_) => None,
        }
    }

    pub fn bool_rows(&self) -> Option<&[Vec<bool>]> {
        match &self.examples {
            Examples::Bool(r) => Some(r),
            Examples::Grid(_) => None,
        }
    }

    /// Number of positive examples (`|S^1|`).
    pub fn positive_count(&self) -> usize {
        self.labels.iter().filter(|l| **l).count()
    }

    /// Number of negative examples (`|S^0|`).
    pub fn negative_count(&self) -> usize {
        self.len() - self.positive_count()
    }

    /// The examples at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> LabeledSample {
        let examples = match &self.examples {
            Examples::Grid(p) => Examples::Grid(indices.iter().map(|&i| p[i]).collect()),
            Examples::Bool(r) => Examples::Bool(indices.iter().map(|&i| r[i].clone()).collect()),
        };
        LabeledSample { domain: self.domain, examples, labels: indices.iter().map(|&i| self.labels[i]).collect() }
    }

    /// Same examples with every label complemented.
    pub fn flipped(&self) -> LabeledSample {
        LabeledSample {
            domain: self.domain,
            examples: self.examples.clone(),
            labels: self.labels.iter().map(|l| !l).collect(),
        }
    }

    /// Appends one example, returning a new sample.
    pub fn with_example(&self, example: ExampleRef<'_>, label: bool) -> Result<LabeledSample> {
        let mut out = self.clone();
        match (&mut out.examples, example) {
            (Examples::Grid(p), ExampleRef::Grid(q)) => {
                let grid = self.domain.grid().expect("grid sample has a grid domain");
                if !grid.contains(q) {
                    return Err(Error::param("appended point outside the grid"));
                }
                p.push(q)
            }
            (Examples::Bool(r), ExampleRef::Bool(row)) => {
                if row.len() != r.first().map_or(row.len(), Vec::len) {
                    return Err(Error::param("appended row has the wrong length"));
                }
                r.push(row.to_vec())
            }
            _ => return Err(Error::Kind("appended example has the wrong kind".into())),
        }
        out.labels.push(label);
        Ok(out)
    }
}

/// A Boolean literal `v_i` or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        Literal { var, negated }
    }

    pub fn eval(&self, row: &[bool]) -> bool {
        row[self.var] != self.negated
    }

    pub fn complement(&self) -> Literal {
        Literal { var: self.var, negated: !self.negated }
    }

    /// All `2 * vars` literals: `v0, !v0, v1, !v1, ...`.
    pub fn all(vars: usize) -> Vec<Literal> {
        (0..vars).flat_map(|v| [Literal::new(v, false), Literal::new(v, true)]).collect()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!v{}", self.var)
        } else {
            write!(f, "v{}", self.var)
        }
    }
}

/// Orientation bit of a decoded halfplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `y >= a x + b`
    Above,
    /// `y <= a x + b`
    Below,
}

impl Side {
    pub fn sign(self) -> i32 {
        match self {
            Side::Above => 1,
            Side::Below => -1,
        }
    }
}

/// A member of the grid halfplane class in `(a_hat, b)` encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfplane {
    grid: GridSpec,
    a_hat: Rational,
    b: Rational,
}

impl Halfplane {
    pub fn new(grid: GridSpec, a_hat: Rational, b: Rational) -> Result<Self> {
        let m = rat(grid.box_half_width());
        let top = rat(3 * grid.box_half_width());
        if a_hat < -m.clone() || a_hat > top {
            return Err(Error::param(format!("a_hat = {a_hat} outside [-2d^2, 6d^2]")));
        }
        if b < -m.clone() || b > m {
            return Err(Error::param(format!("b = {b} outside [-2d^2, 2d^2]")));
        }
        Ok(Halfplane { grid, a_hat, b })
    }

    /// Encodes slope `a`, intercept `b` and orientation.
    pub fn from_decoded(grid: GridSpec, a: Rational, b: Rational, side: Side) -> Result<Self> {
        let m = rat(grid.box_half_width());
        if a < -m.clone() || a > m {
            return Err(Error::param(format!("slope {a} outside [-2d^2, 2d^2]")));
        }
        if side == Side::Below && a == -m {
            return Err(Error::param("slope -2d^2 has no flipped-orientation encoding"));
        }
        let a_hat = match side {
            Side::Above => a,
            Side::Below => a + rat(2 * grid.box_half_width()),
        };
        Halfplane::new(grid, a_hat, b)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn a_hat(&self) -> &Rational {
        &self.a_hat
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `(a, b, side)` with `a = a_hat - 4d^2 [a_hat > 2d^2]`.
    pub fn decode(&self) -> (Rational, Rational, Side) {
        let m = rat(self.grid.box_half_width());
        if self.a_hat > m {
            (&self.a_hat - rat(2 * self.grid.box_half_width()), self.b.clone(), Side::Below)
        } else {
            (self.a_hat.clone(), self.b.clone(), Side::Above)
        }
    }

    pub fn side(&self) -> Side {
        if self.a_hat > rat(self.grid.box_half_width()) {
            Side::Below
        } else {
            Side::Above
        }
    }

    /// Evaluates without checking that `p` lies on the grid.
    pub fn contains(&self, p: GridPoint) -> bool {
        let (a, b, side) = self.decode();
        let rhs = a * rat(p.x as i128) + b;
        let y = rat(p.y as i128);
        match side {
            Side::Above => y >= rhs,
            Side::Below => y <= rhs,
        }
    }

    /// Precomputed evaluator for repeated use on many points.
    pub fn evaluator(&self) -> HalfplaneEval {
        let (a, b, side) = self.decode();
        // a = an / ad, b = bn / bd with positive denominators; compare
        // y * ad * bd against an * bd * x + bn * ad.
        HalfplaneEval {
            a_num: a.numer().clone() * b.denom(),
            b_num: b.numer().clone() * a.denom(),
            den: a.denom() * b.denom(),
            side,
        }
    }
}

/// Integer-only form of a halfplane test.
#[derive(Debug, Clone)]
pub struct HalfplaneEval {
    a_num: BigInt,
    b_num: BigInt,
    den: BigInt,
    side: Side,
}

impl HalfplaneEval {
    pub fn contains(&self, p: GridPoint) -> bool {
        let lhs = &self.den * BigInt::from(p.y);
        let rhs = &self.a_num * BigInt::from(p.x) + &self.b_num;
        match self.side {
            Side::Above => lhs >= rhs,
            Side::Below => lhs <= rhs,
        }
    }
}

/// Checked evaluation: fails for points outside the halfplane's grid.
pub fn eval_halfplane(h: &Halfplane, p: GridPoint) -> Result<bool> {
    if !h.grid.contains(p) {
        return Err(Error::param(format!("point ({}, {}) outside the grid", p.x, p.y)));
    }
    Ok(h.contains(p))
}

/// Intersection of exactly three halfplanes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub sides: [Halfplane; 3],
}

impl Triangle {
    pub fn contains(&self, p: GridPoint) -> bool {
        self.sides.iter().all(|h| h.contains(p))
    }
}

/// A base predicate of a hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    Literal(Literal),
    Halfplane(Halfplane),
    Triangle(Triangle),
}

impl Predicate {
    pub fn eval(&self, x: ExampleRef<'_>) -> Result<bool> {
        match (self, x) {
            (Predicate::Literal(l), ExampleRef::Bool(row)) => {
                if l.var >= row.len() {
                    return Err(Error::param(format!("literal on v{} but example has {} variables", l.var, row.len())));
                }
                Ok(l.eval(row))
            }
            (Predicate::Halfplane(h), ExampleRef::Grid(p)) => eval_halfplane(h, p),
            (Predicate::Triangle(t), ExampleRef::Grid(p)) => {
                for h in &t.sides {
                    if !eval_halfplane(h, p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (Predicate::Literal(_), ExampleRef::Grid(_)) => {
                Err(Error::Kind("Boolean literal evaluated on a grid example".into()))
            }
            (_, ExampleRef::Bool(_)) => Err(Error::Kind("geometric predicate evaluated on a Boolean example".into())),
        }
    }
}

/// AND/OR tree over base predicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HypothesisExpr {
    And(Vec<HypothesisExpr>),
    Or(Vec<HypothesisExpr>),
    Leaf(Predicate),
}

impl HypothesisExpr {
    pub fn leaf(p: Predicate) -> Self {
        HypothesisExpr::Leaf(p)
    }

    pub fn eval(&self, x: ExampleRef<'_>) -> Result<bool> {
        match self {
            HypothesisExpr::And(children) => {
                for c in children {
                    if !c.eval(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            HypothesisExpr::Or(children) => {
                for c in children {
                    if c.eval(x)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            HypothesisExpr::Leaf(p) => p.eval(x),
        }
    }

    /// Base predicates in left-to-right order.
    pub fn leaves(&self) -> Vec<&Predicate> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Predicate>) {
        match self {
            HypothesisExpr::And(c) | HypothesisExpr::Or(c) => c.iter().for_each(|e| e.collect_leaves(out)),
            HypothesisExpr::Leaf(p) => out.push(p),
        }
    }

    /// Classification of every point of `grid`, indexed by
    /// [`GridSpec::index_of`].
    pub fn classify_grid(&self, grid: GridSpec) -> Result<Vec<bool>> {
        let compiled = CompiledExpr::compile(self)?;
        Ok(grid.points().map(|p| compiled.eval(p)).collect())
    }
}

/// Hypothesis with halfplanes pre-converted to integer evaluators.
enum CompiledExpr {
    And(Vec<CompiledExpr>),
    Or(Vec<CompiledExpr>),
    Half(HalfplaneEval),
}

impl CompiledExpr {
    fn compile(e: &HypothesisExpr) -> Result<Self> {
        Ok(match e {
            HypothesisExpr::And(c) => CompiledExpr::And(c.iter().map(Self::compile).collect::<Result<_>>()?),
            HypothesisExpr::Or(c) => CompiledExpr::Or(c.iter().map(Self::compile).collect::<Result<_>>()?),
            HypothesisExpr::Leaf(Predicate::Halfplane(h)) => CompiledExpr::Half(h.evaluator()),
            HypothesisExpr::Leaf(Predicate::Triangle(t)) => {
                CompiledExpr::And(t.sides.iter().map(|h| CompiledExpr::Half(h.evaluator())).collect())
            }
            HypothesisExpr::Leaf(Predicate::Literal(_)) => {
                return Err(Error::Kind("Boolean literal in a grid classification".into()))
            }
        })
    }

    fn eval(&self, p: GridPoint) -> bool {
        match self {
            CompiledExpr::And(c) => c.iter().all(|e| e.eval(p)),
            CompiledExpr::Or(c) => c.iter().any(|e| e.eval(p)),
            CompiledExpr::Half(h) => h.contains(p),
        }
    }
}

/// Fraction of examples on which `h` disagrees with the label.
pub fn empirical_error(h: &HypothesisExpr, s: &LabeledSample) -> Result<Ratio<u64>> {
    if s.is_empty() {
        return Err(Error::param("empirical error of an empty sample"));
    }
    let wrong = misclassified(h, s)?;
    Ok(Ratio::new(wrong as u64, s.len() as u64))
}

/// Number of examples on which `h` disagrees with the label.
pub fn misclassified(h: &HypothesisExpr, s: &LabeledSample) -> Result<usize> {
    let mut wrong = 0;
    for (x, label) in s.iter() {
        if h.eval(x)? != label {
            wrong += 1;
        }
    }
    Ok(wrong)
}

/// A halfplane of the plane in any representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyHalfplane {
    /// `c y >= a x + b`.
    Line { a: Rational, b: Rational, c: Rational },
    /// `x >= x1` for `Side::Above`, `x <= x1` for `Side::Below`.
    Vertical { x1: Rational, side: Side },
}

impl AnyHalfplane {
    pub fn contains(&self, p: GridPoint) -> bool {
        let x = rat(p.x as i128);
        let y = rat(p.y as i128);
        match self {
            AnyHalfplane::Line { a, b, c } => c * y >= a * x + b,
            AnyHalfplane::Vertical { x1, side } => match side {
                Side::Above => x >= *x1,
                Side::Below => x <= *x1,
            },
        }
    }
}

/// Per-column shape of a halfplane restricted to one grid column.
#[derive(Debug, Clone, Copy)]
enum Column {
    /// Points with `y >= t` are inside; `t` in `0..=d+1`.
    UpFrom(i64),
    /// Points with `y <= t` are inside; `t` in `-1..=d`.
    DownTo(i64),
    All,
    Nothing,
}

fn floor_rat(r: &Rational) -> i64 {
    let f = r.floor().to_integer();
    f.clamp(BigInt::from(i64::MIN / 4), BigInt::from(i64::MAX / 4)).try_into().expect("clamped")
}

fn ceil_rat(r: &Rational) -> i64 {
    let c = r.ceil().to_integer();
    c.clamp(BigInt::from(i64::MIN / 4), BigInt::from(i64::MAX / 4)).try_into().expect("clamped")
}

fn columns(h: &AnyHalfplane, d: i64) -> Result<Vec<Column>> {
    let mut out = Vec::with_capacity(d as usize + 1);
    for x in 0..=d {
        let xr = rat(x as i128);
        let col = match h {
            AnyHalfplane::Line { a, b, c } => {
                if c.is_zero() {
                    if a.is_zero() && b.is_zero() {
                        return Err(Error::param("degenerate halfplane with a = b = c = 0"));
                    }
                    if (a * &xr + b) <= Rational::zero() {
                        Column::All
                    } else {
                        Column::Nothing
                    }
                } else {
                    let t = (a * &xr + b) / c;
                    if c.is_positive() {
                        Column::UpFrom(ceil_rat(&t).clamp(0, d + 1))
                    } else {
                        Column::DownTo(floor_rat(&t).clamp(-1, d))
                    }
                }
            }
            AnyHalfplane::Vertical { x1, side } => {
                let inside = match side {
                    Side::Above => xr >= *x1,
                    Side::Below => xr <= *x1,
                };
                if inside {
                    Column::All
                } else {
                    Column::Nothing
                }
            }
        };
        out.push(col);
    }
    Ok(out)
}

/// Constraints on `(a, b)` (closed versions) plus the strict ones to verify.
fn column_constraints(cols: &[Column], d: i64, side: Side) -> Option<Vec<(Constraint, bool)>> {
    // Every constraint is expressed as `ca * a + cb * b + c0 >= 0` on the
    // dual point, i.e. on `a x + b`. The flag marks strict inequalities.
    let mut out = Vec::new();
    for (x, col) in cols.iter().enumerate() {
        let xr = rat(x as i128);
        // ge(t): a x + b >= t ; le(t): a x + b <= t
        let ge = |t: i64| Constraint { ca: xr.clone(), cb: rat(1), c0: rat(-(t as i128)) };
        let le = |t: i64| Constraint { ca: -xr.clone(), cb: rat(-1), c0: rat(t as i128) };
        let (up, down) = match (side, *col) {
            (Side::Above, Column::UpFrom(t)) => (Some(t), None),
            (Side::Above, Column::All) => (Some(0), None),
            (Side::Above, Column::Nothing) => (Some(d + 1), None),
            (Side::Below, Column::DownTo(t)) => (None, Some(t)),
            (Side::Below, Column::All) => (None, Some(d)),
            (Side::Below, Column::Nothing) => (None, Some(-1)),
            _ => return None,
        };
        if let Some(t) = up {
            // inside iff y >= a x + b, so the first inside row is t:
            // t - 1 < a x + b <= t  (clipped at the grid edges)
            if t <= d {
                out.push((le(t), false));
            }
            if t >= 1 {
                out.push((ge(t - 1), true));
            }
        }
        if let Some(t) = down {
            // inside iff y <= a x + b: t <= a x + b < t + 1
            if t >= 0 {
                out.push((ge(t), false));
            }
            if t < d {
                out.push((le(t + 1), true));
            }
        }
    }
    Some(out)
}

/// Returns a grid halfplane agreeing with `h` on every point of the grid.
pub fn canonicalize_halfplane(h: &AnyHalfplane, grid: GridSpec) -> Result<Halfplane> {
    let m = rat(grid.box_half_width());
    if let AnyHalfplane::Line { a, b, c } = h {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::param("degenerate halfplane with a = b = c = 0"));
        }
        if !c.is_zero() {
            let slope = a / c;
            let icpt = b / c;
            let side = if c.is_positive() { Side::Above } else { Side::Below };
            let low_ok = if side == Side::Above { slope >= -m.clone() } else { slope > -m.clone() };
            if low_ok && slope <= m && icpt >= -m.clone() && icpt <= m {
                return Halfplane::from_decoded(grid, slope, icpt, side);
            }
        }
    }
    let d = grid.d() as i64;
    let cols = columns(h, d)?;
    for side in [Side::Above, Side::Below] {
        let Some(cons) = column_constraints(&cols, d, side) else { continue };
        let mut poly = geom::square(&m);
        for (c, _) in &cons {
            poly = geom::clip(&poly, c);
            if poly.len() < 3 {
                break;
            }
        }
        if poly.len() < 3 || geom::area2(&poly).is_zero() {
            continue;
        }
        let p: RatPoint = geom::vertex_centroid(&poly);
        let strict_ok = cons.iter().all(|(c, strict)| {
            let v = c.value(&p);
            if *strict {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        });
        if !strict_ok {
            return Err(Error::Internal("canonical halfplane centroid violates a strict column constraint".into()));
        }
        return Halfplane::from_decoded(grid, p.a, p.b, side);
    }
    Err(Error::Internal("no equivalent grid halfplane found".into()))
}
