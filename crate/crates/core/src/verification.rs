//! Exact checkers for the constructions.
//!
//! [`is_double_circle`] decides the double-circle conditions with integer
//! orientation tests only:
//!
//! 1. the convex hull has exactly `n` of the `2n` points as vertices,
//! 2. no three points are collinear,
//! 3. each remaining point `p'_i` is matched to a hull edge `p_i p_{i+1}`,
//! 4. the line through `p_i, p'_i` has `p_{i+1}` strictly on one side and
//!    every other point strictly on the other, and likewise the line
//!    through `p'_i, p_{i+1}` isolates `p_i`.
//!
//! Separation is checked in `O(n)` once both hulls are known: a linear
//! function that vanishes at a hull vertex is positive on one connected arc
//! of the hull boundary, so only the two hull vertices bracketing that arc
//! need testing, and the inner points lie in the cone spanned by the two
//! inner-hull neighbours of `p'_i`. When the inner points are not in convex
//! position the check falls back to testing every point, which is also what
//! [`is_double_circle_exhaustive`] does unconditionally.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::constructions::{PointSet, Role};
use crate::error::{Error, Result};
use crate::lattice::{segment_lattice_points, turn2, turn3, LatticeVector};
use crate::sequences::{angular_cmp, VectorSequence};

/// Largest `n` for which general position is checked over every triple.
pub const GENERAL_POSITION_EXACT_LIMIT: usize = 200;
/// Random triples tested for general position above that limit.
pub const GENERAL_POSITION_SAMPLES: usize = 100_000;
const SAMPLE_SEED: u64 = 0x5eed_d0b1_e0c1_2c1e;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    HullCount,
    GeneralPosition,
    Proximity,
    Separation3,
    Separation4,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        match self {
            Condition::HullCount => "hull-count",
            Condition::GeneralPosition => "general-position",
            Condition::Proximity => "cond-2-proximity",
            Condition::Separation3 => "cond-3-separation",
            Condition::Separation4 => "cond-4-separation",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Indices of a verified double circle: `hull[i]` is `p_i` in
/// counterclockwise order and `inner[i]` is `p'_i`, next to edge `p_i p_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub hull: Vec<usize>,
    pub inner: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub failed_condition: Option<Condition>,
    /// Point indices exhibiting the failure.
    pub witness: Vec<usize>,
    pub labeling: Option<Labeling>,
}

impl VerificationReport {
    fn pass(labeling: Labeling) -> Self {
        VerificationReport { passed: true, failed_condition: None, witness: Vec::new(), labeling: Some(labeling) }
    }

    fn fail(condition: Condition, witness: Vec<usize>) -> Self {
        VerificationReport { passed: false, failed_condition: Some(condition), witness, labeling: None }
    }
}

/// Lattice points of a triangle and its doubled area.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PickCounts {
    pub interior: u64,
    pub boundary: u64,
    pub doubled_area: u64,
}

/// Indices of the strict convex hull, counterclockwise from the
/// lexicographically smallest point.
pub fn hull_indices(points: &[LatticeVector]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].x, points[i].y));
    order.dedup_by_key(|i| points[*i]);
    if order.len() < 3 {
        return Err(Error::Degenerate);
    }
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    let chain = |iter: &mut dyn Iterator<Item = usize>, hull: &mut Vec<usize>, floor: usize| -> Result<()> {
        for i in iter {
            while hull.len() >= floor + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if turn3(points[a], points[b], points[i])?.is_ccw() {
                    break;
                }
                hull.pop();
            }
            hull.push(i);
        }
        Ok(())
    };
    chain(&mut order.iter().copied(), &mut hull, 0)?;
    let lower = hull.len() - 1;
    chain(&mut order.iter().rev().skip(1).copied(), &mut hull, lower)?;
    hull.pop();
    if hull.len() < 3 {
        return Err(Error::Degenerate);
    }
    Ok(hull)
}

/// Vertices of the convex hull in counterclockwise order, without collinear
/// boundary points.
pub fn convex_hull(set: &PointSet) -> Result<PointSet> {
    if set.len() < 3 {
        return Err(Error::Domain(format!("convex hull needs at least 3 points, got {}", set.len())));
    }
    let idx = hull_indices(set.points())?;
    let points = idx.iter().map(|&i| set.points()[i]).collect::<Vec<_>>();
    let labels = vec![Role::HullVertex; points.len()];
    PointSet::with_labels(points, labels)
}

/// Labels every point as a hull vertex or an inner point.
pub fn label_roles(set: &PointSet) -> Result<PointSet> {
    let mut labels = vec![Role::InnerPoint; set.len()];
    for i in hull_indices(set.points())? {
        labels[i] = Role::HullVertex;
    }
    // repeated copies of a hull vertex are hull vertices too
    let hull_pts: std::collections::HashSet<LatticeVector> =
        set.points().iter().zip(&labels).filter(|(_, r)| **r == Role::HullVertex).map(|(p, _)| *p).collect();
    for (p, r) in set.points().iter().zip(labels.iter_mut()) {
        if hull_pts.contains(p) {
            *r = Role::HullVertex;
        }
    }
    PointSet::with_labels(set.points().to_vec(), labels)
}

/// Smallest `N` such that a translate of the set fits in `[0, N]^2`.
pub fn grid_size(set: &PointSet) -> u64 {
    let pts = set.points();
    if pts.is_empty() {
        return 0;
    }
    let extent = |coord: fn(&LatticeVector) -> i64| {
        let lo = pts.iter().map(coord).min().unwrap();
        let hi = pts.iter().map(coord).max().unwrap();
        (hi as i128 - lo as i128) as u64
    };
    extent(|p| p.x).max(extent(|p| p.y))
}

fn find_duplicate(points: &[LatticeVector]) -> Option<[usize; 2]> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i], i));
    order.windows(2).find(|w| points[w[0]] == points[w[1]]).map(|w| [w[0], w[1]])
}

/// Every-triple collinearity search, `O(n^3)`.
pub fn find_collinear_triple_brute(points: &[LatticeVector]) -> Result<Option<[usize; 3]>> {
    let len = points.len();
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                if turn3(points[i], points[j], points[k])?.is_collinear() {
                    return Ok(Some([i, j, k]));
                }
            }
        }
    }
    Ok(None)
}

/// Exact collinearity search in `O(n^2 log n)`: around each point, two
/// others are collinear with it iff their difference vectors span the same
/// line, which shows up as neighbours after an angular sort of the vectors
/// folded into the upper half-plane.
pub fn find_collinear_triple(points: &[LatticeVector]) -> Result<Option<[usize; 3]>> {
    if let Some([a, b]) = find_duplicate(points) {
        let c = (0..points.len()).find(|&c| c != a && c != b).unwrap_or(b);
        return Ok(Some([a, b, c]));
    }
    let mut dirs: Vec<(LatticeVector, usize)> = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        dirs.clear();
        for (j, &q) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = q.checked_sub(p)?;
            let d = if d.y < 0 || (d.y == 0 && d.x < 0) { d.checked_neg()? } else { d };
            dirs.push((d, j));
        }
        dirs.sort_by(|a, b| angular_cmp(a.0, b.0));
        if let Some(w) = dirs.windows(2).find(|w| turn2(w[0].0, w[1].0).map(|t| t.is_collinear()).unwrap_or(false)) {
            let mut triple = [i, w[0].1, w[1].1];
            triple.sort_unstable();
            return Ok(Some(triple));
        }
    }
    Ok(None)
}

fn sample_collinear_triple(points: &[LatticeVector], samples: usize) -> Result<Option<[usize; 3]>> {
    let len = points.len();
    let mut rng = StdRng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..samples {
        let i = rng.gen_range(0..len);
        let j = rng.gen_range(0..len);
        let k = rng.gen_range(0..len);
        if i == j || j == k || i == k {
            continue;
        }
        if turn3(points[i], points[j], points[k])?.is_collinear() {
            return Ok(Some([i, j, k]));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Fast,
    Exhaustive,
}

/// Decides whether the set is a double circle; see the module docs.
pub fn is_double_circle(set: &PointSet) -> Result<VerificationReport> {
    verify(set.points(), Mode::Fast)
}

/// Same decision as [`is_double_circle`], testing every triple for general
/// position and every point against every separating line.
pub fn is_double_circle_exhaustive(set: &PointSet) -> Result<VerificationReport> {
    verify(set.points(), Mode::Exhaustive)
}

fn verify(points: &[LatticeVector], mode: Mode) -> Result<VerificationReport> {
    let total = points.len();
    if total % 2 != 0 {
        return Err(Error::Domain(format!("a double circle has an even number of points, got {total}")));
    }
    if total < 6 {
        return Err(Error::Domain(format!("a double circle has at least 6 points, got {total}")));
    }
    let n = total / 2;

    if let Some(pair) = find_duplicate(points) {
        return Ok(VerificationReport::fail(Condition::GeneralPosition, pair.to_vec()));
    }
    let hull = match hull_indices(points) {
        Ok(h) => h,
        Err(Error::Degenerate) => return Ok(VerificationReport::fail(Condition::GeneralPosition, vec![0, 1, 2])),
        Err(e) => return Err(e),
    };
    if hull.len() != n {
        return Ok(VerificationReport::fail(Condition::HullCount, hull));
    }

    let collinear = match mode {
        Mode::Exhaustive => find_collinear_triple_brute(points)?,
        Mode::Fast if n <= GENERAL_POSITION_EXACT_LIMIT => find_collinear_triple(points)?,
        Mode::Fast => sample_collinear_triple(points, GENERAL_POSITION_SAMPLES)?,
    };
    if let Some(triple) = collinear {
        return Ok(VerificationReport::fail(Condition::GeneralPosition, triple.to_vec()));
    }

    let mut is_hull = vec![false; total];
    for &h in &hull {
        is_hull[h] = true;
    }
    let inner: Vec<usize> = (0..total).filter(|&i| !is_hull[i]).collect();

    let by_order = order_assignment(&hull, &is_hull);
    let assignment = match &by_order {
        Some(a) => a.clone(),
        None => match angular_assignment(points, &hull, &inner)? {
            Ok(a) => a,
            Err(witness) => return Ok(VerificationReport::fail(Condition::Proximity, witness)),
        },
    };
    let mut outcome = check_separation(points, &hull, &assignment, &inner, mode)?;
    if outcome.is_some() && by_order.is_some() {
        // the construction order may have matched the wrong inner points
        if let Ok(angular) = angular_assignment(points, &hull, &inner)? {
            if angular != assignment {
                outcome = check_separation(points, &hull, &angular, &inner, mode)?;
                if outcome.is_none() {
                    return Ok(VerificationReport::pass(Labeling { hull, inner: angular }));
                }
            }
        }
    }
    Ok(match outcome {
        None => VerificationReport::pass(Labeling { hull, inner: assignment }),
        Some((cond, witness)) => VerificationReport::fail(cond, witness),
    })
}

/// Matching read off the input order, when hull vertices occupy every
/// other position in counterclockwise order: the point between two
/// consecutive hull vertices belongs to their edge.
fn order_assignment(hull: &[usize], is_hull: &[bool]) -> Option<Vec<usize>> {
    let total = is_hull.len();
    let n = hull.len();
    let parity = hull[0] % 2;
    if hull.iter().any(|&h| h % 2 != parity) {
        return None;
    }
    let mut rank = vec![usize::MAX; total];
    for (r, &h) in hull.iter().enumerate() {
        rank[h] = r;
    }
    let start = rank[parity];
    for k in 0..n {
        if rank[parity + 2 * k] != (start + k) % n {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for j in (0..total).filter(|&j| !is_hull[j]) {
        let prev = (j + total - 1) % total;
        assignment[rank[prev]] = j;
    }
    Some(assignment)
}

/// For each edge `p_i p_{i+1}`, the inner point making the smallest angle
/// with the edge at `p_i`: the only candidate that the line through `p_i`
/// can separate `p_{i+1}` with. Fails when two edges pick the same point.
fn angular_assignment(
    points: &[LatticeVector],
    hull: &[usize],
    inner: &[usize],
) -> Result<std::result::Result<Vec<usize>, Vec<usize>>> {
    let n = hull.len();
    let mut owner = vec![usize::MAX; points.len()];
    let mut assignment = Vec::with_capacity(n);
    for i in 0..n {
        let p = points[hull[i]];
        let mut best = inner[0];
        for &x in &inner[1..] {
            if turn3(p, points[x], points[best])?.is_ccw() {
                best = x;
            }
        }
        if owner[best] != usize::MAX {
            let other = owner[best];
            return Ok(Err(vec![best, hull[other], hull[(other + 1) % n], hull[i], hull[(i + 1) % n]]));
        }
        owner[best] = i;
        assignment.push(best);
    }
    Ok(Ok(assignment))
}

type Failure = (Condition, Vec<usize>);

fn check_separation(
    points: &[LatticeVector],
    hull: &[usize],
    assignment: &[usize],
    inner: &[usize],
    mode: Mode,
) -> Result<Option<Failure>> {
    if mode == Mode::Fast {
        let inner_pts: Vec<LatticeVector> = inner.iter().map(|&i| points[i]).collect();
        if let Ok(ring) = hull_indices(&inner_pts) {
            if ring.len() == inner.len() {
                let ring: Vec<usize> = ring.into_iter().map(|r| inner[r]).collect();
                return separation_local(points, hull, assignment, &ring);
            }
        }
    }
    separation_all(points, hull, assignment)
}

/// Sign of `turn3(a, b, x)` required to be `-side` for every `x` in `others`.
fn opposite_side(
    points: &[LatticeVector],
    a: usize,
    b: usize,
    side: i64,
    others: impl IntoIterator<Item = usize>,
) -> Result<Option<usize>> {
    for x in others {
        if turn3(points[a], points[b], points[x])?.signum() != -side {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn separation_local(
    points: &[LatticeVector],
    hull: &[usize],
    assignment: &[usize],
    ring: &[usize],
) -> Result<Option<Failure>> {
    let n = hull.len();
    let mut ring_pos = std::collections::HashMap::with_capacity(ring.len());
    for (k, &r) in ring.iter().enumerate() {
        ring_pos.insert(r, k);
    }
    let m = ring.len();
    for i in 0..n {
        let (p, next) = (hull[i], hull[(i + 1) % n]);
        let before = hull[(i + n - 1) % n];
        let after = hull[(i + 2) % n];
        let q = assignment[i];
        let k = ring_pos[&q];
        let neighbours = [ring[(k + m - 1) % m], ring[(k + 1) % m]];

        let side = turn3(points[p], points[q], points[next])?.signum();
        if side == 0 {
            return Ok(Some((Condition::Separation3, vec![p, q, next])));
        }
        let others = [before, after].into_iter().chain(neighbours);
        if let Some(x) = opposite_side(points, p, q, side, others)? {
            return Ok(Some((Condition::Separation3, vec![p, q, next, x])));
        }

        let side = turn3(points[q], points[next], points[p])?.signum();
        if side == 0 {
            return Ok(Some((Condition::Separation4, vec![q, next, p])));
        }
        let others = [before, after].into_iter().chain(neighbours);
        if let Some(x) = opposite_side(points, q, next, side, others)? {
            return Ok(Some((Condition::Separation4, vec![q, next, p, x])));
        }
    }
    Ok(None)
}

fn separation_all(points: &[LatticeVector], hull: &[usize], assignment: &[usize]) -> Result<Option<Failure>> {
    let n = hull.len();
    for i in 0..n {
        let (p, next, q) = (hull[i], hull[(i + 1) % n], assignment[i]);
        let rest = || (0..points.len()).filter(move |&x| x != p && x != next && x != q);

        let side = turn3(points[p], points[q], points[next])?.signum();
        if side == 0 {
            return Ok(Some((Condition::Separation3, vec![p, q, next])));
        }
        if let Some(x) = opposite_side(points, p, q, side, rest())? {
            return Ok(Some((Condition::Separation3, vec![p, q, next, x])));
        }

        let side = turn3(points[q], points[next], points[p])?.signum();
        if side == 0 {
            return Ok(Some((Condition::Separation4, vec![q, next, p])));
        }
        if let Some(x) = opposite_side(points, q, next, side, rest())? {
            return Ok(Some((Condition::Separation4, vec![q, next, p, x])));
        }
    }
    Ok(None)
}

/// Boundary points from the edge gcds, interior points from Pick's identity
/// `2A = 2i + b - 2`.
pub fn pick_counts(p: LatticeVector, q: LatticeVector, r: LatticeVector) -> Result<PickCounts> {
    let doubled_area = turn3(p, q, r)?.doubled_area();
    if doubled_area == 0 {
        return Err(Error::Domain(format!("degenerate triangle {p}, {q}, {r}")));
    }
    let boundary = 3 + segment_lattice_points(p, q)? + segment_lattice_points(q, r)? + segment_lattice_points(r, p)?;
    let interior = (doubled_area + 2 - boundary) / 2;
    Ok(PickCounts { interior, boundary, doubled_area })
}

/// Counts `(interior, boundary)` lattice points of a triangle by testing
/// every point of its bounding box. Meant for small triangles.
pub fn enumerate_triangle_points(p: LatticeVector, q: LatticeVector, r: LatticeVector) -> Result<(u64, u64)> {
    let orientation = turn3(p, q, r)?.signum();
    if orientation == 0 {
        return Err(Error::Domain(format!("degenerate triangle {p}, {q}, {r}")));
    }
    let (x0, x1) = (p.x.min(q.x).min(r.x), p.x.max(q.x).max(r.x));
    let (y0, y1) = (p.y.min(q.y).min(r.y), p.y.max(q.y).max(r.y));
    let (mut interior, mut boundary) = (0, 0);
    for x in x0..=x1 {
        for y in y0..=y1 {
            let s = LatticeVector::new(x, y);
            let signs = [turn3(p, q, s)?, turn3(q, r, s)?, turn3(r, p, s)?].map(|t| t.signum() * orientation);
            if signs.iter().any(|&d| d < 0) {
                continue;
            }
            if signs.contains(&0) {
                boundary += 1;
            } else {
                interior += 1;
            }
        }
    }
    Ok((interior, boundary))
}

/// The five turn values behind the local double-circle argument, computed on
/// points scaled by 3 so that they stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma4Turns {
    /// `turn(3q1, 3q2)`, must be negative.
    pub q1_q2: i64,
    /// `turn(3q1, 3q3)`, must be positive.
    pub q1_q3: i64,
    /// `turn(3q1, 3q4)`, must be positive.
    pub q1_q4: i64,
    /// `turn(3q4, 3q3, 3q1)`, must be negative.
    pub q4_q3_q1: i64,
    /// `turn(3q4, 3q3, o)`, must be negative.
    pub q4_q3_o: i64,
}

impl Lemma4Turns {
    pub fn holds(&self) -> bool {
        self.q1_q2 < 0 && self.q1_q3 > 0 && self.q1_q4 > 0 && self.q4_q3_q1 < 0 && self.q4_q3_o < 0
    }
}

pub fn lemma4_turns(a1: LatticeVector, a2: LatticeVector, a3: LatticeVector, a4: LatticeVector) -> Result<Lemma4Turns> {
    let blend = |heavy: LatticeVector, light: LatticeVector| heavy.checked_scale(2)?.checked_add(light);
    let q1 = blend(a2, a1)?;
    let q2 = q1.checked_add(blend(a1, a2)?)?;
    let q3 = q2.checked_add(blend(a4, a3)?)?;
    let q4 = q3.checked_add(blend(a3, a4)?)?;
    Ok(Lemma4Turns {
        q1_q2: turn2(q1, q2)?.value(),
        q1_q3: turn2(q1, q3)?.value(),
        q1_q4: turn2(q1, q4)?.value(),
        q4_q3_q1: turn3(q4, q3, q1)?.value(),
        q4_q3_o: turn3(q4, q3, LatticeVector::ORIGIN)?.value(),
    })
}

/// Whether `q2` lies right of `l(o, q1)`, `q3` and `q4` left of it, and
/// both `q1` and `o` right of `l(q4, q3)`.
pub fn check_lemma4(a1: LatticeVector, a2: LatticeVector, a3: LatticeVector, a4: LatticeVector) -> Result<bool> {
    Ok(lemma4_turns(a1, a2, a3, a4)?.holds())
}

/// First even index `i` whose window `v[i], v[i+1], v[i+2], v[i+3]`
/// (cyclic) fails [`check_lemma4`].
pub fn lemma4_violation(seq: &VectorSequence) -> Result<Option<usize>> {
    let v = seq.as_slice();
    let len = v.len();
    if len < 4 || len % 2 != 0 {
        return Err(Error::Domain(format!("windows need an even sequence of length >= 4, got {len}")));
    }
    for i in (0..len).step_by(2) {
        if !check_lemma4(v[i], v[(i + 1) % len], v[(i + 2) % len], v[(i + 3) % len])? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// First index `i` with `|turn(v[i], v[i+1])| != 1` (cyclic), i.e. whose
/// triangle with the origin has area other than 1/2.
pub fn unit_area_violation(seq: &VectorSequence) -> Result<Option<usize>> {
    let v = seq.as_slice();
    let len = v.len();
    for i in 0..len {
        if turn2(v[i], v[(i + 1) % len])?.doubled_area() != 1 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
