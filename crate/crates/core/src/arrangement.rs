//! Arrangement of dual lines inside the box `[-2d^2, 2d^2]^2`.
//!
//! Grid point `(x, y)` maps to the line `b = y - x a` of the `(a, b)` plane.
//! No dual line is vertical, every pairwise crossing lies strictly inside the
//! box, and every vertex has the form `(A / D, B / D)` with `1 <= D <= d`, so
//! all predicates are evaluated exactly in 128-bit integers.
//!
//! The arrangement is assembled as a planar graph (one half-edge pair per
//! segment) and faces are traced from the rotation system at each vertex.
//! Per-face example counts are then propagated from the bottom-left face,
//! which lies below every line, flipping one line's examples per crossing.

use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::concepts::{GridSpec, LabeledSample};
use crate::error::{Error, Result};
use crate::geom::{RatPoint, Rational};

/// A distinct dual line with the sample examples that induce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualLine {
    pub x: u32,
    pub y: u32,
    pub examples: Vec<usize>,
    negatives: u32,
    positives: u32,
}

impl DualLine {
    pub fn negatives(&self) -> u32 {
        self.negatives
    }

    pub fn positives(&self) -> u32 {
        self.positives
    }

    /// Strict side test: `true` iff `(a, b)` lies above the line.
    pub fn is_below_point(&self, p: &RatPoint) -> bool {
        // b > y - x a  <=>  y < a x + b
        let rhs = &p.a * Rational::from_integer(BigInt::from(self.x)) + &p.b;
        Rational::from_integer(BigInt::from(self.y)) < rhs
    }
}

/// Exact vertex `(a, b) = (an / den, bn / den)` with `den > 0` and reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub an: i64,
    pub bn: i64,
    pub den: i64,
}

impl Vertex {
    fn new(an: i128, bn: i128, den: i128) -> Vertex {
        // Coordinates are bounded by 2 d^2 * d <= 2^46 in magnitude.
        let (mut an, mut bn, mut den) = (an as i64, bn as i64, den as i64);
        if den < 0 {
            an = -an;
            bn = -bn;
            den = -den;
        }
        let g = an.gcd(&bn).gcd(&den);
        Vertex { an: an / g, bn: bn / g, den: den / g }
    }

    pub fn to_point(self) -> RatPoint {
        RatPoint::new(
            Rational::new(BigInt::from(self.an), BigInt::from(self.den)),
            Rational::new(BigInt::from(self.bn), BigInt::from(self.den)),
        )
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.an as f64 / self.den as f64, self.bn as f64 / self.den as f64)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ArrangementOptions {
    /// Store the full per-face `below_mask` (one bit per sample example).
    pub with_masks: bool,
}

/// Faces of the dual arrangement of a sample.
#[derive(Debug, Clone)]
pub struct Arrangement {
    grid: GridSpec,
    sample_len: usize,
    total_negatives: u32,
    total_positives: u32,
    lines: Vec<DualLine>,
    vertices: Vec<Vertex>,
    interior_vertices: usize,
    face_start: Vec<u32>,
    face_vertices: Vec<u32>,
    log_area: Vec<f64>,
    neg_below: Vec<u32>,
    pos_below: Vec<u32>,
    mask_words: usize,
    masks: Option<Vec<u64>>,
}

/// A borrowed face.
#[derive(Debug, Clone, Copy)]
pub struct FaceRef<'a> {
    arr: &'a Arrangement,
    index: usize,
}

impl<'a> FaceRef<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn vertex_ids(&self) -> &'a [u32] {
        let s = self.arr.face_start[self.index] as usize;
        let e = self.arr.face_start[self.index + 1] as usize;
        &self.arr.face_vertices[s..e]
    }

    /// Vertices in counterclockwise order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + 'a {
        let arr = self.arr;
        self.vertex_ids().iter().map(move |&v| arr.vertices[v as usize])
    }

    pub fn points(&self) -> Vec<RatPoint> {
        self.vertices().map(Vertex::to_point).collect()
    }

    /// Exact area.
    pub fn area(&self) -> Rational {
        let ids = self.vertex_ids();
        let vs = &self.arr.vertices;
        let mut acc = Rational::zero();
        let v0 = vs[ids[0] as usize];
        for w in ids[1..].windows(2) {
            let (num, den) = fan_area2(v0, vs[w[0] as usize], vs[w[1] as usize]);
            acc += Rational::new(BigInt::from(num), BigInt::from(den) * BigInt::from(2));
        }
        acc
    }

    pub fn log_area(&self) -> f64 {
        self.arr.log_area[self.index]
    }

    /// Vertex centroid; strictly interior.
    pub fn representative(&self) -> RatPoint {
        let n = self.vertex_ids().len() as i64;
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for v in self.vertices() {
            a += Rational::new(BigInt::from(v.an), BigInt::from(v.den));
            b += Rational::new(BigInt::from(v.bn), BigInt::from(v.den));
        }
        let n = Rational::from_integer(BigInt::from(n));
        RatPoint::new(a / &n, b / n)
    }

    /// Negatives whose dual line passes strictly below the face.
    pub fn negatives_below(&self) -> u32 {
        self.arr.neg_below[self.index]
    }

    pub fn positives_below(&self) -> u32 {
        self.arr.pos_below[self.index]
    }

    /// Bit `i` is set iff example `i` satisfies `y_i < a x_i + b` on the face.
    pub fn mask_words(&self) -> Option<&'a [u64]> {
        let w = self.arr.mask_words;
        self.arr.masks.as_ref().map(|m| &m[self.index * w..(self.index + 1) * w])
    }

    pub fn below_mask(&self) -> Option<Vec<bool>> {
        let words = self.mask_words()?;
        Some((0..self.arr.sample_len).map(|i| words[i / 64] >> (i % 64) & 1 == 1).collect())
    }
}

/// Twice the area of triangle `(p, q, r)` as `num / den`, `den > 0`.
fn fan_area2(p: Vertex, q: Vertex, r: Vertex) -> (i128, i128) {
    let (pa, pb, pd) = (p.an as i128, p.bn as i128, p.den as i128);
    let (qa, qb, qd) = (q.an as i128, q.bn as i128, q.den as i128);
    let (ra, rb, rd) = (r.an as i128, r.bn as i128, r.den as i128);
    // (q - p) = (qa pd - pa qd, qb pd - pb qd) / (pd qd), same for r.
    let ua = qa * pd - pa * qd;
    let ub = qb * pd - pb * qd;
    let va = ra * pd - pa * rd;
    let vb = rb * pd - pb * rd;
    let num = ua * vb - va * ub;
    // num / (pd^2 qd rd); one factor of pd divides out.
    let num = num / pd;
    (num, pd * qd * rd)
}

/// Direction codes. Line `l` forward is `(1, -x_l)`; box sides run
/// counterclockwise: bottom `(1, 0)`, right `(0, 1)`, top `(-1, 0)`,
/// left `(0, -1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    Line { line: u32, forward: bool },
    Box { side: u8, forward: bool },
}

impl EdgeKind {
    fn direction(self, lines: &[DualLine]) -> (i64, i64) {
        match self {
            EdgeKind::Line { line, forward } => {
                let x = lines[line as usize].x as i64;
                if forward {
                    (1, -x)
                } else {
                    (-1, x)
                }
            }
            EdgeKind::Box { side, forward } => {
                let d = [(1, 0), (0, 1), (-1, 0), (0, -1)][side as usize];
                if forward {
                    d
                } else {
                    (-d.0, -d.1)
                }
            }
        }
    }

    fn is_outer(self) -> bool {
        matches!(self, EdgeKind::Box { forward: false, .. })
    }
}

fn angle_cmp(u: (i64, i64), v: (i64, i64)) -> std::cmp::Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| {
        let cross = u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128;
        0.cmp(&cross)
    })
}

struct VertexTable {
    ids: FxHashMap<Vertex, u32>,
    list: Vec<Vertex>,
}

impl VertexTable {
    fn intern(&mut self, v: Vertex) -> u32 {
        let next = self.list.len() as u32;
        *self.ids.entry(v).or_insert_with(|| {
            self.list.push(v);
            next
        })
    }
}

/// Groups sample examples by grid point; one line per distinct point.
pub fn dual_lines(s: &LabeledSample) -> Result<Vec<DualLine>> {
    let points = s
        .grid_points()
        .ok_or_else(|| Error::Kind("dual arrangement needs a geometric sample".into()))?;
    let mut by_point: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut lines: Vec<DualLine> = Vec::new();
    for (i, (p, &label)) in points.iter().zip(s.labels()).enumerate() {
        let id = *by_point.entry((p.x, p.y)).or_insert_with(|| {
            lines.push(DualLine { x: p.x, y: p.y, examples: Vec::new(), negatives: 0, positives: 0 });
            lines.len() - 1
        });
        let l = &mut lines[id];
        l.examples.push(i);
        if label {
            l.positives += 1;
        } else {
            l.negatives += 1;
        }
    }
    Ok(lines)
}

pub fn build_arrangement(s: &LabeledSample, grid: GridSpec) -> Result<Arrangement> {
    build_arrangement_with(s, grid, ArrangementOptions::default())
}

pub fn build_arrangement_with(s: &LabeledSample, grid: GridSpec, opts: ArrangementOptions) -> Result<Arrangement> {
    if s.domain().grid() != Some(grid) {
        return Err(Error::param("sample grid does not match the arrangement grid"));
    }
    let lines = dual_lines(s)?;
    let m = grid.box_half_width();
    let nl = lines.len();

    let mut vt = VertexTable { ids: FxHashMap::with_capacity_and_hasher(nl * nl / 2 + 8, Default::default()), list: Vec::new() };
    // Per line: (a numerator, a denominator, vertex id), filled with crossings.
    let mut on_line: Vec<Vec<(i64, i64, u32)>> = vec![Vec::with_capacity(nl + 2); nl];
    for i in 0..nl {
        for j in (i + 1)..nl {
            let (li, lj) = (&lines[i], &lines[j]);
            if li.x == lj.x {
                continue;
            }
            let (xi, yi, xj, yj) = (li.x as i128, li.y as i128, lj.x as i128, lj.y as i128);
            let v = Vertex::new(yi - yj, xi * yj - xj * yi, xi - xj);
            let id = vt.intern(v);
            on_line[i].push((v.an, v.den, id));
            on_line[j].push((v.an, v.den, id));
        }
    }
    let interior_vertices = vt.list.len();

    // Box corners, counterclockwise from bottom-left.
    let corners = [
        vt.intern(Vertex::new(-m, -m, 1)),
        vt.intern(Vertex::new(m, -m, 1)),
        vt.intern(Vertex::new(m, m, 1)),
        vt.intern(Vertex::new(-m, m, 1)),
    ];
    // Points on each side keyed by the coordinate along the side's forward
    // direction (numerator, denominator).
    let mut sides: [Vec<(i128, i128, u32)>; 4] = Default::default();
    for (s, side) in sides.iter_mut().enumerate() {
        let (c0, c1) = (corners[s], corners[(s + 1) % 4]);
        let key = |v: Vertex| side_key(s, v);
        let (k0, k1) = (key(vt.list[c0 as usize]), key(vt.list[c1 as usize]));
        side.push((k0.0, k0.1, c0));
        side.push((k1.0, k1.1, c1));
    }
    for (i, l) in lines.iter().enumerate() {
        let (x, y) = (l.x as i128, l.y as i128);
        let (entry, exit) = if x == 0 {
            (Vertex::new(-m, y, 1), Vertex::new(m, y, 1))
        } else if x == 1 && y > 0 {
            (Vertex::new(y - m, m, 1), Vertex::new(m, y - m, 1))
        } else {
            (Vertex::new(y - m, m * x, x), Vertex::new(y + m, -m * x, x))
        };
        for v in [entry, exit] {
            let id = vt.intern(v);
            on_line[i].push((v.an, v.den, id));
            for (s, side) in sides.iter_mut().enumerate() {
                if on_side(s, v, m) {
                    let k = side_key(s, v);
                    side.push((k.0, k.1, id));
                }
            }
        }
    }

    // Half-edges come in pairs: `2e` runs along the forward direction.
    let mut origin: Vec<u32> = Vec::new();
    let mut kind: Vec<EdgeKind> = Vec::new();
    let mut push_segment = |u: u32, v: u32, fwd: EdgeKind, rev: EdgeKind| {
        origin.push(u);
        kind.push(fwd);
        origin.push(v);
        kind.push(rev);
    };
    for (i, pts) in on_line.iter_mut().enumerate() {
        pts.sort_unstable_by(|p, q| (p.0 as i128 * q.1 as i128).cmp(&(q.0 as i128 * p.1 as i128)));
        pts.dedup_by_key(|p| p.2);
        for w in pts.windows(2) {
            push_segment(
                w[0].2,
                w[1].2,
                EdgeKind::Line { line: i as u32, forward: true },
                EdgeKind::Line { line: i as u32, forward: false },
            );
        }
    }
    drop(on_line);
    for (s, pts) in sides.iter_mut().enumerate() {
        pts.sort_unstable_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)));
        pts.dedup_by_key(|p| p.2);
        for w in pts.windows(2) {
            push_segment(
                w[0].2,
                w[1].2,
                EdgeKind::Box { side: s as u8, forward: true },
                EdgeKind::Box { side: s as u8, forward: false },
            );
        }
    }
    let vertices = vt.list;
    drop(vt.ids);
    let ne = origin.len();
    let nv = vertices.len();

    // Rotation system: outgoing half-edges per vertex, counterclockwise.
    let mut start = vec![0u32; nv + 1];
    for &o in &origin {
        start[o as usize + 1] += 1;
    }
    for v in 0..nv {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut around = vec![0u32; ne];
    for (e, &o) in origin.iter().enumerate() {
        around[fill[o as usize] as usize] = e as u32;
        fill[o as usize] += 1;
    }
    drop(fill);
    // next(e) is the outgoing edge just clockwise of twin(e) at e's head.
    let mut next_edge = vec![0u32; ne];
    for v in 0..nv {
        let ring = &mut around[start[v] as usize..start[v + 1] as usize];
        ring.sort_unstable_by(|&e, &f| angle_cmp(kind[e as usize].direction(&lines), kind[f as usize].direction(&lines)));
        let deg = ring.len();
        for p in 0..deg {
            next_edge[ring[p] as usize ^ 1] = ring[(p + deg - 1) % deg];
        }
    }
    drop(around);
    drop(start);
    let next = |e: usize| next_edge[e] as usize;

    // Trace bounded faces.
    const NO_FACE: u32 = u32::MAX;
    let mut face_of = vec![NO_FACE; ne];
    let mut face_first_edge: Vec<u32> = Vec::new();
    let mut face_start: Vec<u32> = vec![0];
    let mut face_vertices: Vec<u32> = Vec::new();
    let mut log_area: Vec<f64> = Vec::new();
    for e0 in 0..ne {
        if face_of[e0] != NO_FACE || kind[e0].is_outer() {
            continue;
        }
        let f = face_first_edge.len() as u32;
        face_first_edge.push(e0 as u32);
        let mut e = e0;
        let first_vertex = face_vertices.len();
        loop {
            face_of[e] = f;
            let n = next(e);
            // Keep the origin of `n` only where the boundary turns.
            if kind[e] != kind[n] {
                face_vertices.push(origin[n]);
            }
            e = n;
            if e == e0 {
                break;
            }
            if face_of[e] != NO_FACE || kind[e].is_outer() {
                return Err(Error::Internal("face boundary did not close".into()));
            }
        }
        let ids = &face_vertices[first_vertex..];
        if ids.len() < 3 {
            return Err(Error::Internal("degenerate face".into()));
        }
        let v0 = vertices[ids[0] as usize];
        let mut area2 = 0.0;
        for w in ids[1..].windows(2) {
            let (num, den) = fan_area2(v0, vertices[w[0] as usize], vertices[w[1] as usize]);
            if num <= 0 {
                return Err(Error::Internal("non-convex or clockwise face".into()));
            }
            area2 += num as f64 / den as f64;
        }
        log_area.push((area2 / 2.0).ln());
        face_start.push(face_vertices.len() as u32);
    }
    let nf = face_first_edge.len();

    // Propagate counts (and optionally masks) from the bottom-left face.
    let root_edge = (0..ne)
        .find(|&e| origin[e] == corners[0] && kind[e] == EdgeKind::Box { side: 0, forward: true })
        .ok_or_else(|| Error::Internal("missing bottom-left box edge".into()))?;
    let root = face_of[root_edge] as usize;
    let words = s.len().div_ceil(64).max(1);
    let mut masks = opts.with_masks.then(|| vec![0u64; nf * words]);
    let mut neg_below = vec![0u32; nf];
    let mut pos_below = vec![0u32; nf];
    let mut seen = vec![false; nf];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let e0 = face_first_edge[f] as usize;
        let mut e = e0;
        loop {
            if let EdgeKind::Line { line, forward } = kind[e] {
                let g = face_of[e ^ 1] as usize;
                if !seen[g] {
                    seen[g] = true;
                    let l = &lines[line as usize];
                    // Forward edges have their face above the line.
                    if forward {
                        neg_below[g] = neg_below[f] - l.negatives;
                        pos_below[g] = pos_below[f] - l.positives;
                    } else {
                        neg_below[g] = neg_below[f] + l.negatives;
                        pos_below[g] = pos_below[f] + l.positives;
                    }
                    if let Some(m) = masks.as_mut() {
                        m.copy_within(f * words..(f + 1) * words, g * words);
                        for &i in &l.examples {
                            m[g * words + i / 64] ^= 1 << (i % 64);
                        }
                    }
                    queue.push_back(g);
                }
            }
            e = next(e);
            if e == e0 {
                break;
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Internal("face adjacency graph is disconnected".into()));
    }

    let total_negatives = lines.iter().map(|l| l.negatives).sum();
    let total_positives = lines.iter().map(|l| l.positives).sum();
    Ok(Arrangement {
        grid,
        sample_len: s.len(),
        total_negatives,
        total_positives,
        lines,
        vertices,
        interior_vertices,
        face_start,
        face_vertices,
        log_area,
        neg_below,
        pos_below,
        mask_words: words,
        masks,
    })
}

fn on_side(s: usize, v: Vertex, m: i128) -> bool {
    let (a, b, d) = (v.an as i128, v.bn as i128, v.den as i128);
    match s {
        0 => b == -m * d,
        1 => a == m * d,
        2 => b == m * d,
        _ => a == -m * d,
    }
}

/// Position along side `s` in its forward direction, as a fraction.
fn side_key(s: usize, v: Vertex) -> (i128, i128) {
    let (a, b, d) = (v.an as i128, v.bn as i128, v.den as i128);
    match s {
        0 => (a, d),
        1 => (b, d),
        2 => (-a, d),
        _ => (-b, d),
    }
}

impl Arrangement {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn lines(&self) -> &[DualLine] {
        &self.lines
    }

    pub fn sample_len(&self) -> usize {
        self.sample_len
    }

    pub fn total_negatives(&self) -> u32 {
        self.total_negatives
    }

    pub fn total_positives(&self) -> u32 {
        self.total_positives
    }

    pub fn face_count(&self) -> usize {
        self.log_area.len()
    }

    pub fn face(&self, index: usize) -> FaceRef<'_> {
        assert!(index < self.face_count(), "face index out of range");
        FaceRef { arr: self, index }
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceRef<'_>> + '_ {
        (0..self.face_count()).map(move |i| FaceRef { arr: self, index: i })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Pairwise line crossings (each distinct point once).
    pub fn interior_vertices(&self) -> &[Vertex] {
        &self.vertices[..self.interior_vertices]
    }

    pub fn has_masks(&self) -> bool {
        self.masks.is_some()
    }

    pub fn mask_words(&self) -> usize {
        self.mask_words
    }

    pub fn log_areas(&self) -> &[f64] {
        &self.log_area
    }

    pub fn negatives_below(&self) -> &[u32] {
        &self.neg_below
    }

    pub fn positives_below(&self) -> &[u32] {
        &self.pos_below
    }

    /// Exact area of the box, `16 d^4`.
    pub fn box_area(&self) -> Rational {
        let m = BigInt::from(self.grid.box_half_width());
        Rational::from_integer(&m * &m * BigInt::from(4))
    }

    pub fn total_area(&self) -> Rational {
        self.faces().map(|f| f.area()).fold(Rational::zero(), |acc, a| acc + a)
    }
}

/// Uniform draw in the face, strictly interior.
///
/// A fan triangle is chosen with probability proportional to its area, and
/// barycentric coordinates `(u, v) = (U, V) / 2^32` with `U, V >= 1` are
/// reflected across the diagonal when `u + v > 1`; draws on the diagonal are
/// repeated.
pub fn uniform_point_in_face<R: Rng + ?Sized>(face: FaceRef<'_>, rng: &mut R) -> Result<RatPoint> {
    let ids = face.vertex_ids();
    if ids.len() < 3 {
        return Err(Error::Internal("degenerate face".into()));
    }
    let vs = &face.arr.vertices;
    let v0 = vs[ids[0] as usize];
    let weights: Vec<f64> = ids[1..]
        .windows(2)
        .map(|w| {
            let (num, den) = fan_area2(v0, vs[w[0] as usize], vs[w[1] as usize]);
            num as f64 / den as f64
        })
        .collect();
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Internal("face with non-positive area".into()));
    }
    let mut t = rng.random::<f64>() * total;
    let mut tri = weights.len() - 1;
    for (i, w) in weights.iter().enumerate() {
        if t < *w {
            tri = i;
            break;
        }
        t -= w;
    }
    const SCALE: u64 = 1 << 32;
    let (u, v) = loop {
        let u = rng.random_range(1..SCALE);
        let v = rng.random_range(1..SCALE);
        match (u + v).cmp(&SCALE) {
            std::cmp::Ordering::Less => break (u, v),
            std::cmp::Ordering::Greater => break (SCALE - u, SCALE - v),
            std::cmp::Ordering::Equal => continue,
        }
    };
    let p0 = v0.to_point();
    let p1 = vs[ids[tri + 1] as usize].to_point();
    let p2 = vs[ids[tri + 2] as usize].to_point();
    let scale = BigInt::from(SCALE);
    let u = Rational::new(BigInt::from(u), scale.clone());
    let v = Rational::new(BigInt::from(v), scale);
    let a = &p0.a + (&p1.a - &p0.a) * &u + (&p2.a - &p0.a) * &v;
    let b = &p0.b + (&p1.b - &p0.b) * &u + (&p2.b - &p0.b) * &v;
    Ok(RatPoint::new(a, b))
}

/// Result of [`min_vertex_separation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// Squared Euclidean distance between the two closest distinct vertices.
    SquaredDistance(Rational),
    Infinite,
}

/// Closest pair among the distinct pairwise crossings of the dual lines.
///
/// Distances are reported squared so that the result stays rational.
pub fn min_vertex_separation(arr: &Arrangement) -> Separation {
    let pts: Vec<RatPoint> = arr.interior_vertices().iter().map(|v| v.to_point()).collect();
    let mut best: Option<Rational> = None;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = pts[i].dist_sq(&pts[j]);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.map_or(Separation::Infinite, Separation::SquaredDistance)
}

/// Largest instance accepted by [`face_sign_oracle`].
pub const ORACLE_MAX_LINES: usize = 12;

/// Brute-force enumeration of the strict sign vectors realised inside the
/// box, independent of the planar-graph construction.
///
/// The box is cut into vertical slabs at every crossing and at every box
/// crossing; on the middle of each slab the lines are totally ordered and each
/// gap between consecutive lines yields one sign vector. Each vector is
/// reported over sample indices (bit `i` set iff example `i` is below) with a
/// witness point.
pub fn face_sign_oracle(s: &LabeledSample, grid: GridSpec) -> Result<Vec<(Vec<bool>, RatPoint)>> {
    let lines = dual_lines(s)?;
    if lines.len() > ORACLE_MAX_LINES {
        return Err(Error::Resource(format!(
            "sign-vector oracle accepts at most {ORACLE_MAX_LINES} dual lines, got {}",
            lines.len()
        )));
    }
    let m = Rational::from_integer(BigInt::from(grid.box_half_width()));
    let int = |v: u32| Rational::from_integer(BigInt::from(v));
    let mut cuts: Vec<Rational> = vec![-m.clone(), m.clone()];
    for (i, li) in lines.iter().enumerate() {
        for lj in &lines[i + 1..] {
            if li.x != lj.x {
                cuts.push((int(li.y) - int(lj.y)) / (int(li.x) - int(lj.x)));
            }
        }
        if li.x > 0 {
            for edge in [-m.clone(), m.clone()] {
                let a = (int(li.y) - edge) / int(li.x);
                if a > -m.clone() && a < m {
                    cuts.push(a);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let two = Rational::from_integer(BigInt::from(2));
    let mut found: BTreeMap<Vec<bool>, RatPoint> = BTreeMap::new();
    for w in cuts.windows(2) {
        let a = (&w[0] + &w[1]) / &two;
        let mut levels: Vec<Rational> = lines
            .iter()
            .map(|l| int(l.y) - int(l.x) * &a)
            .filter(|b| *b > -m.clone() && *b < m)
            .collect();
        levels.push(-m.clone());
        levels.push(m.clone());
        levels.sort();
        levels.dedup();
        for g in levels.windows(2) {
            let p = RatPoint::new(a.clone(), (&g[0] + &g[1]) / &two);
            let mut bits = vec![false; s.len()];
            for l in &lines {
                if l.is_below_point(&p) {
                    for &i in &l.examples {
                        bits[i] = true;
                    }
                }
            }
            found.entry(bits).or_insert(p);
        }
    }
    Ok(found.into_iter().collect())
}
