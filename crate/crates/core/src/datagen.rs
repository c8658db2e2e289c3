//! Synthetic targets, example distributions and labeling.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::concepts::{GridPoint, GridSpec, LabeledSample, Literal};
use crate::error::{Error, Result};
use crate::rng::DetRng;

/// A target concept to label examples with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetConcept {
    Conj { vars: usize, literals: Vec<Literal> },
    Disj { vars: usize, literals: Vec<Literal> },
    /// Union of simple polygons, each a closed vertex chain.
    Polygons { d: u32, polygons: Vec<Vec<GridPoint>> },
}

fn cross(o: GridPoint, a: GridPoint, b: GridPoint) -> i64 {
    let (ox, oy) = (o.x as i64, o.y as i64);
    (a.x as i64 - ox) * (b.y as i64 - oy) - (a.y as i64 - oy) * (b.x as i64 - ox)
}

fn on_segment(p: GridPoint, a: GridPoint, b: GridPoint) -> bool {
    cross(a, b, p) == 0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_intersect(a: GridPoint, b: GridPoint, c: GridPoint, d: GridPoint) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(a, c, d))
        || (d2 == 0 && on_segment(b, c, d))
        || (d3 == 0 && on_segment(c, a, b))
        || (d4 == 0 && on_segment(d, a, b))
}

/// Twice the signed area.
fn polygon_area2(poly: &[GridPoint]) -> i64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.x as i64 * q.y as i64 - q.x as i64 * p.y as i64
        })
        .sum()
}

/// Checks for a non-degenerate simple closed chain.
pub fn validate_simple_polygon(poly: &[GridPoint], grid: GridSpec) -> Result<()> {
    let n = poly.len();
    if n < 3 {
        return Err(Error::param("a polygon needs at least three vertices"));
    }
    if let Some(p) = poly.iter().find(|p| !grid.contains(**p)) {
        return Err(Error::param(format!("polygon vertex ({}, {}) outside the grid", p.x, p.y)));
    }
    if polygon_area2(poly) == 0 {
        return Err(Error::param("polygon has zero area"));
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if a == b {
            return Err(Error::param("polygon has a repeated vertex"));
        }
        for j in (i + 1)..n {
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // neighbours share one endpoint and must not fold back
                let shared = if j == i + 1 { b } else { a };
                let (u, v) = if j == i + 1 { (a, d) } else { (b, c) };
                if cross(shared, u, v) == 0 && (on_segment(u, shared, v) || on_segment(v, shared, u)) {
                    return Err(Error::param("polygon edges overlap"));
                }
            } else if segments_intersect(a, b, c, d) {
                return Err(Error::param("polygon is self-intersecting"));
            }
        }
    }
    Ok(())
}

/// Checks for a strictly convex polygon (any orientation).
pub fn validate_convex_polygon(poly: &[GridPoint], grid: GridSpec) -> Result<()> {
    validate_simple_polygon(poly, grid)?;
    let n = poly.len();
    let sign = polygon_area2(poly).signum();
    for i in 0..n {
        if cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]).signum() != sign {
            return Err(Error::param("polygon is not strictly convex"));
        }
    }
    Ok(())
}

/// Boundary-inclusive point-in-polygon by crossing number.
pub fn point_in_polygon(p: GridPoint, poly: &[GridPoint]) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if on_segment(p, a, b) {
            return true;
        }
        let (ay, by, py) = (a.y as i64, b.y as i64, p.y as i64);
        if (ay > py) != (by > py) {
            // x-coordinate of the crossing compared exactly
            let lhs = (p.x as i64 - a.x as i64) * (by - ay);
            let rhs = (b.x as i64 - a.x as i64) * (py - ay);
            if (by > ay && lhs < rhs) || (by < ay && lhs > rhs) {
                inside = !inside;
            }
        }
    }
    inside
}

impl TargetConcept {
    pub fn polygons(grid: GridSpec, polygons: Vec<Vec<GridPoint>>) -> Result<Self> {
        if polygons.is_empty() {
            return Err(Error::param("empty polygon list"));
        }
        for p in &polygons {
            validate_simple_polygon(p, grid)?;
        }
        Ok(TargetConcept::Polygons { d: grid.d(), polygons })
    }

    pub fn convex(grid: GridSpec, polygon: Vec<GridPoint>) -> Result<Self> {
        validate_convex_polygon(&polygon, grid)?;
        Ok(TargetConcept::Polygons { d: grid.d(), polygons: vec![polygon] })
    }

    pub fn grid(&self) -> Option<GridSpec> {
        match self {
            TargetConcept::Polygons { d, .. } => GridSpec::new(*d).ok(),
            _ => None,
        }
    }

    pub fn contains_point(&self, p: GridPoint) -> Result<bool> {
        match self {
            TargetConcept::Polygons { polygons, .. } => Ok(polygons.iter().any(|poly| point_in_polygon(p, poly))),
            _ => Err(Error::Kind("Boolean target evaluated on a grid point".into())),
        }
    }

    pub fn eval_row(&self, row: &[bool]) -> Result<bool> {
        match self {
            TargetConcept::Conj { literals, .. } => Ok(literals.iter().all(|l| l.eval(row))),
            TargetConcept::Disj { literals, .. } => Ok(literals.iter().any(|l| l.eval(row))),
            TargetConcept::Polygons { .. } => Err(Error::Kind("geometric target evaluated on a Boolean row".into())),
        }
    }

    /// Labels of every grid point, indexed by [`GridSpec::index_of`].
    pub fn classify_grid(&self) -> Result<Vec<bool>> {
        let grid = self.grid().ok_or_else(|| Error::Kind("not a geometric target".into()))?;
        grid.points().map(|p| self.contains_point(p)).collect()
    }
}

pub fn label_points(points: Vec<GridPoint>, target: &TargetConcept) -> Result<LabeledSample> {
    let grid = target.grid().ok_or_else(|| Error::Kind("grid points need a geometric target".into()))?;
    let labels = points.iter().map(|&p| target.contains_point(p)).collect::<Result<Vec<_>>>()?;
    LabeledSample::grid(grid, points, labels)
}

pub fn label_rows(rows: Vec<Vec<bool>>, target: &TargetConcept) -> Result<LabeledSample> {
    let vars = match target {
        TargetConcept::Conj { vars, .. } | TargetConcept::Disj { vars, .. } => *vars,
        TargetConcept::Polygons { .. } => return Err(Error::Kind("Boolean rows need a Boolean target".into())),
    };
    let labels = rows.iter().map(|r| target.eval_row(r)).collect::<Result<Vec<_>>>()?;
    LabeledSample::boolean(vars, rows, labels)
}

/// Example distribution over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Distribution {
    UniformGrid,
    /// Half the mass uniform, half within L-infinity distance `sigma * d` of
    /// the target boundary.
    BoundaryMixture { sigma: f64 },
}

pub fn sample_uniform_grid(n: usize, grid: GridSpec, rng: &mut DetRng) -> Vec<GridPoint> {
    (0..n).map(|_| GridPoint::new(rng.random_range(0..=grid.d()), rng.random_range(0..=grid.d()))).collect()
}

fn boundary_point(polygons: &[Vec<GridPoint>], sigma: f64, d: u32, rng: &mut DetRng) -> GridPoint {
    let edges: Vec<(GridPoint, GridPoint)> =
        polygons.iter().flat_map(|p| (0..p.len()).map(move |i| (p[i], p[(i + 1) % p.len()]))).collect();
    let lengths: Vec<f64> = edges
        .iter()
        .map(|(a, b)| ((a.x as f64 - b.x as f64).powi(2) + (a.y as f64 - b.y as f64).powi(2)).sqrt())
        .collect();
    let total: f64 = lengths.iter().sum();
    let mut t = rng.random::<f64>() * total;
    let mut e = edges.len() - 1;
    for (i, l) in lengths.iter().enumerate() {
        if t < *l {
            e = i;
            break;
        }
        t -= l;
    }
    let (a, b) = edges[e];
    let u = rng.random::<f64>();
    let r = sigma * d as f64;
    let (ox, oy) = if r > 0.0 { (rng.random_range(-r..=r), rng.random_range(-r..=r)) } else { (0.0, 0.0) };
    let x = a.x as f64 + u * (b.x as f64 - a.x as f64) + ox;
    let y = a.y as f64 + u * (b.y as f64 - a.y as f64) + oy;
    let clamp = |v: f64| v.round().clamp(0.0, d as f64) as u32;
    GridPoint::new(clamp(x), clamp(y))
}

/// I.i.d. points from `dist`; the boundary mixture needs a polygon target.
pub fn sample_distribution(
    dist: Distribution,
    n: usize,
    grid: GridSpec,
    target: Option<&TargetConcept>,
    rng: &mut DetRng,
) -> Result<Vec<GridPoint>> {
    match dist {
        Distribution::UniformGrid => Ok(sample_uniform_grid(n, grid, rng)),
        Distribution::BoundaryMixture { sigma } => {
            if !(sigma >= 0.0 && sigma.is_finite()) {
                return Err(Error::param("boundary-mixture sigma must be non-negative"));
            }
            let polygons = match target {
                Some(TargetConcept::Polygons { polygons, .. }) => polygons,
                _ => return Err(Error::param("boundary mixture needs a polygon target")),
            };
            Ok((0..n)
                .map(|_| {
                    if rng.random_bool(0.5) {
                        boundary_point(polygons, sigma, grid.d(), rng)
                    } else {
                        GridPoint::new(rng.random_range(0..=grid.d()), rng.random_range(0..=grid.d()))
                    }
                })
                .collect())
        }
    }
}

pub fn sample_bool_rows(n: usize, vars: usize, rng: &mut DetRng) -> Vec<Vec<bool>> {
    (0..n).map(|_| (0..vars).map(|_| rng.random_bool(0.5)).collect()).collect()
}

/// Conjunction of `k` literals on distinct random variables.
pub fn random_conjunction(vars: usize, k: usize, rng: &mut DetRng) -> Result<TargetConcept> {
    let literals = random_literals(vars, k, rng)?;
    Ok(TargetConcept::Conj { vars, literals })
}

pub fn random_disjunction(vars: usize, k: usize, rng: &mut DetRng) -> Result<TargetConcept> {
    let literals = random_literals(vars, k, rng)?;
    Ok(TargetConcept::Disj { vars, literals })
}

fn random_literals(vars: usize, k: usize, rng: &mut DetRng) -> Result<Vec<Literal>> {
    if k == 0 || k > vars {
        return Err(Error::param(format!("need 1 <= k <= vars, got k = {k}, vars = {vars}")));
    }
    let mut pool: Vec<usize> = (0..vars).collect();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let j = rng.random_range(i..vars);
        pool.swap(i, j);
        out.push(Literal::new(pool[i], rng.random_bool(0.5)));
    }
    out.sort();
    Ok(out)
}

/// Fraction of grid points inside a polygon target.
pub fn grid_coverage(target: &TargetConcept) -> Result<f64> {
    let labels = target.classify_grid()?;
    Ok(labels.iter().filter(|&&b| b).count() as f64 / labels.len() as f64)
}

/// A random grid triangle whose grid coverage lies in `[lo, hi]`.
pub fn random_triangle(grid: GridSpec, lo: f64, hi: f64, rng: &mut DetRng) -> Result<TargetConcept> {
    for _ in 0..10_000 {
        let mut pts: Vec<GridPoint> = sample_uniform_grid(3, grid, rng);
        if polygon_area2(&pts) < 0 {
            pts.swap(1, 2);
        }
        let Ok(t) = TargetConcept::convex(grid, pts) else { continue };
        let c = grid_coverage(&t)?;
        if c >= lo && c <= hi {
            return Ok(t);
        }
    }
    Err(Error::param(format!("no triangle with coverage in [{lo}, {hi}] found")))
}

/// Convex hull of `k` random points, retried until it has at least three
/// vertices and coverage in `[lo, hi]`.
pub fn random_convex_polygon(grid: GridSpec, k: usize, lo: f64, hi: f64, rng: &mut DetRng) -> Result<TargetConcept> {
    if k < 3 {
        return Err(Error::param("a convex k-gon needs k >= 3"));
    }
    for _ in 0..10_000 {
        let hull = convex_hull(sample_uniform_grid(k, grid, rng));
        if hull.len() < 3 {
            continue;
        }
        let Ok(t) = TargetConcept::convex(grid, hull) else { continue };
        let c = grid_coverage(&t)?;
        if c >= lo && c <= hi {
            return Ok(t);
        }
    }
    Err(Error::param(format!("no convex {k}-gon with coverage in [{lo}, {hi}] found")))
}

/// Counterclockwise hull without collinear points (monotone chain).
pub fn convex_hull(mut pts: Vec<GridPoint>) -> Vec<GridPoint> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<GridPoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<GridPoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
